//! Coxeter systems and their line-oriented text format.
//!
//! ```text
//! # affine (3,3,3) triangle group
//! rank 3
//! m 1 2 3
//! m 1 3 3
//! m 2 3 3
//! ```
//!
//! `default <m|inf>` fills every pair not given by an `m i j <m|inf>` line,
//! and an optional `names a b c` line renames the generators. Indices are
//! 1-based in the file and 0-based everywhere in the API.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported rank; generators are stored as `u8` letters.
/// Serializes a 0-based generator index the way it is written in input files.
pub(crate) fn serialize_one_based<S: Serializer>(
    i: &usize,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.serialize_u64(*i as u64 + 1)
}

pub const MAX_RANK: usize = 255;

/// Order of the product `s_i s_j` for `i != j`.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Label::Infinite
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "inf" | "INF" | "Inf" | "oo" => Ok(Label::Infinite),
            _ => {
                let m: u32 = s.parse().map_err(|_| format!("bad label {s:?}"))?;
                if m < 2 {
                    return Err(format!("label {m} is below 2"));
                }
                Ok(Label::Finite(m))
            }
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A Coxeter presentation: `rank` involutions with pairwise product orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterSystem {
    rank: usize,
    /// Row-major `rank x rank`; the diagonal is never read.
    labels: Vec<Label>,
    names: Vec<String>,
}

fn default_names(rank: usize) -> Vec<String> {
    (1..=rank).map(|i| format!("s{i}")).collect()
}

impl CoxeterSystem {
    /// A system of the given rank with every pair carrying `default`.
    pub fn new(rank: usize, default: Label) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidSystem("rank must be at least 1".into()));
        }
        if rank > MAX_RANK {
            return Err(Error::InvalidSystem(format!("rank {rank} exceeds {MAX_RANK}")));
        }
        check_label(default)?;
        Ok(Self {
            rank,
            labels: vec![default; rank * rank],
            names: default_names(rank),
        })
    }

    /// Builds a system from an explicit label function on pairs `i < j`.
    pub fn from_fn(rank: usize, mut label: impl FnMut(usize, usize) -> Label) -> Result<Self> {
        let mut sys = Self::new(rank, Label::Infinite)?;
        for i in 0..rank {
            for j in i + 1..rank {
                sys.set_label(i, j, label(i, j))?;
            }
        }
        Ok(sys)
    }

    pub fn set_label(&mut self, i: usize, j: usize, label: Label) -> Result<()> {
        self.check_gen(i)?;
        self.check_gen(j)?;
        if i == j {
            return Err(Error::InvalidSystem(format!("pair ({}, {}) is diagonal", i + 1, j + 1)));
        }
        check_label(label)?;
        self.labels[i * self.rank + j] = label;
        self.labels[j * self.rank + i] = label;
        Ok(())
    }

    pub fn with_label(mut self, i: usize, j: usize, label: Label) -> Result<Self> {
        self.set_label(i, j, label)?;
        Ok(self)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.rank {
            return Err(Error::InvalidSystem(format!(
                "{} names given for rank {}",
                names.len(),
                self.rank
            )));
        }
        self.names = names;
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Label of the pair `{i, j}`. Panics if `i == j` or an index is out of range.
    pub fn label(&self, i: usize, j: usize) -> Label {
        assert!(i != j, "no label on the diagonal");
        self.labels[i * self.rank + j]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Unordered pairs `i < j` with their labels, in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), Label)> + '_ {
        (0..self.rank)
            .flat_map(move |i| (i + 1..self.rank).map(move |j| (i, j)))
            .map(move |(i, j)| ((i, j), self.label(i, j)))
    }

    pub fn commutes(&self, i: usize, j: usize) -> bool {
        i == j || self.label(i, j) == Label::Finite(2)
    }

    pub fn check_gen(&self, i: usize) -> Result<()> {
        if i < self.rank {
            Ok(())
        } else {
            Err(Error::GeneratorOutOfRange { index: i, rank: self.rank })
        }
    }

    /// Parses the `.cox` text format.
    pub fn parse(text: &str) -> Result<Self> {
        parse_system(text)
    }

    /// Renders every pair explicitly; `parse(render(sys)) == sys`.
    pub fn render(&self) -> String {
        let mut out = format!("rank {}\n", self.rank);
        if self.names != default_names(self.rank) {
            out.push_str("names");
            for name in &self.names {
                out.push(' ');
                out.push_str(name);
            }
            out.push('\n');
        }
        for ((i, j), label) in self.pairs() {
            out.push_str(&format!("m {} {} {}\n", i + 1, j + 1, label));
        }
        out
    }
}

fn check_label(label: Label) -> Result<()> {
    match label {
        Label::Finite(m) if m < 2 => Err(Error::InvalidSystem(format!("label {m} is below 2"))),
        _ => Ok(()),
    }
}

/// Parses the `.cox` format, applying the optional default label.
pub fn parse_system(text: &str) -> Result<CoxeterSystem> {
    parse_system_with_default(text, None)
}

/// Like [`parse_system`], but `default_override` replaces the file's
/// `default` line (or supplies one when the file has none).
pub fn parse_system_with_default(text: &str, default_override: Option<Label>) -> Result<CoxeterSystem> {
    let err = |line: usize, message: String| Error::Parse { line, message };

    let mut rank: Option<usize> = None;
    let mut default: Option<Label> = None;
    let mut names: Option<Vec<String>> = None;
    let mut explicit: Vec<Option<Label>> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "rank" => {
                if rank.is_some() {
                    return Err(err(line_no, "duplicate rank declaration".into()));
                }
                if tokens.len() != 2 {
                    return Err(err(line_no, "expected `rank N`".into()));
                }
                let n: usize = tokens[1]
                    .parse()
                    .map_err(|_| err(line_no, format!("bad rank {:?}", tokens[1])))?;
                if n < 1 {
                    return Err(err(line_no, "rank must be at least 1".into()));
                }
                if n > MAX_RANK {
                    return Err(err(line_no, format!("rank {n} exceeds {MAX_RANK}")));
                }
                rank = Some(n);
                explicit = vec![None; n * n];
            }
            "default" => {
                if rank.is_none() {
                    return Err(err(line_no, "`default` before `rank`".into()));
                }
                if default.is_some() {
                    return Err(err(line_no, "duplicate default declaration".into()));
                }
                if tokens.len() != 2 {
                    return Err(err(line_no, "expected `default <m|inf>`".into()));
                }
                default = Some(tokens[1].parse().map_err(|e| err(line_no, e))?);
            }
            "names" => {
                let Some(n) = rank else {
                    return Err(err(line_no, "`names` before `rank`".into()));
                };
                if names.is_some() {
                    return Err(err(line_no, "duplicate names declaration".into()));
                }
                if tokens.len() != n + 1 {
                    return Err(err(line_no, format!("expected {n} generator names")));
                }
                names = Some(tokens[1..].iter().map(|s| s.to_string()).collect());
            }
            "m" => {
                let Some(n) = rank else {
                    return Err(err(line_no, "`m` before `rank`".into()));
                };
                if tokens.len() != 4 {
                    return Err(err(line_no, "expected `m i j <m|inf>`".into()));
                }
                let parse_index = |tok: &str| -> Result<usize> {
                    let v: usize = tok
                        .parse()
                        .map_err(|_| err(line_no, format!("bad generator index {tok:?}")))?;
                    if v < 1 || v > n {
                        return Err(err(line_no, format!("generator index {v} outside 1..={n}")));
                    }
                    Ok(v - 1)
                };
                let i = parse_index(tokens[1])?;
                let j = parse_index(tokens[2])?;
                if i >= j {
                    return Err(err(line_no, format!("expected i < j, got {} {}", i + 1, j + 1)));
                }
                let label: Label = tokens[3].parse().map_err(|e| err(line_no, e))?;
                let slot = &mut explicit[i * n + j];
                if slot.is_some() {
                    return Err(err(line_no, format!("duplicate pair ({}, {})", i + 1, j + 1)));
                }
                *slot = Some(label);
            }
            other => return Err(err(line_no, format!("unknown directive {other:?}"))),
        }
    }

    let Some(n) = rank else {
        return Err(err(last_line.max(1), "missing `rank` declaration".into()));
    };
    let default = default_override.or(default);
    let mut sys = CoxeterSystem::new(n, Label::Infinite)?;
    for i in 0..n {
        for j in i + 1..n {
            let label = match (explicit[i * n + j], default) {
                (Some(l), _) | (None, Some(l)) => l,
                (None, None) => {
                    return Err(err(
                        last_line,
                        format!("pair ({}, {}) unspecified and no default given", i + 1, j + 1),
                    ))
                }
            };
            sys.set_label(i, j, label)?;
        }
    }
    if let Some(names) = names {
        sys = sys.with_names(names)?;
    }
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_override() {
        let text = "rank 3\ndefault 4\nm 1 2 inf\n";
        let sys = parse_system_with_default(text, Some(Label::Finite(51))).unwrap();
        assert_eq!(sys.label(0, 2), Label::Finite(51));
        assert_eq!(sys.label(0, 1), Label::Infinite);
        assert!(parse_system("rank 2\n").is_err());
        assert!(parse_system_with_default("rank 2\n", Some(Label::Infinite)).is_ok());
    }

    #[test]
    fn parses_infinite_dihedral() {
        let sys = parse_system("rank 2\nm 1 2 inf\n").unwrap();
        assert_eq!(sys.rank(), 2);
        assert_eq!(sys.label(0, 1), Label::Infinite);
        assert_eq!(sys.names(), ["s1", "s2"]);
    }

    #[test]
    fn parses_affine_triangle() {
        let sys = parse_system("rank 3\nm 1 2 3\nm 1 3 3\nm 2 3 3\n").unwrap();
        assert!(sys.pairs().all(|(_, l)| l == Label::Finite(3)));
    }

    #[test]
    fn default_fills_unspecified_pairs() {
        let text = "\
rank 8
default 2601
m 1 4 2
m 1 5 2
m 1 6 2
m 1 2 inf
m 1 3 inf
m 1 7 inf
m 1 8 inf
m 4 5 3
m 4 6 3
m 5 6 3
";
        let sys = parse_system(text).unwrap();
        let at_default = sys.pairs().filter(|(_, l)| *l == Label::Finite(2601)).count();
        assert_eq!(at_default, 18);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let sys = parse_system("# header\n\nrank 1 # trailing\n").unwrap();
        assert_eq!(sys.rank(), 1);
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse_system("rank 2\n\nm 1 2 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_system("rank 2\nm 1 2 3\nm 1 2 4\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_system("rank 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }), "{e}");
        let e = parse_system("rank 2\nm 1 2 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e = parse_system("rank 2\nfoo\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e = parse_system("m 1 2 3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }), "{e}");
    }

    #[test]
    fn missing_default_is_an_error() {
        assert!(parse_system("rank 3\nm 1 2 3\n").is_err());
        assert!(parse_system("").is_err());
    }

    #[test]
    fn rejects_bad_indices() {
        assert!(parse_system("rank 2\nm 2 1 3\n").is_err());
        assert!(parse_system("rank 2\nm 1 3 3\n").is_err());
        assert!(parse_system("rank 2\nm 1 1 3\n").is_err());
    }

    #[test]
    fn names_round_trip() {
        let sys = parse_system("rank 2\nnames a b\ndefault 5\n").unwrap();
        assert_eq!(sys.name(1), "b");
        assert_eq!(parse_system(&sys.render()).unwrap(), sys);
    }
}
