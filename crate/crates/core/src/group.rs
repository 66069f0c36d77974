//! Words, ShortLex normal forms and the word problem.
//!
//! Multiplication is done one letter at a time on the right. For a reduced
//! word `v` and a generator `s`, `vs` is shorter than `v` exactly when some
//! reduced word for `v` ends in `s` (exchange condition), and the reduced
//! words of a fixed element are connected by braid moves (Tits). Each element
//! therefore carries its full braid closure once, taken up to commutation:
//! the closure yields its
//! ShortLex normal form, its right descents together with the normal forms of
//! the corresponding shorter neighbours, and the normal form of its inverse.
//! The per-element results are memoized.

use std::cmp::Ordering;
use rustc_hash::FxHashMap as HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::heap::{self, Orders};
use crate::system::{CoxeterSystem, Label};

/// Default cap on the number of commutation classes in one braid closure.
pub const DEFAULT_CLOSURE_BUDGET: usize = 2_000_000;

/// Memo entries kept before the memo is flushed.
pub const DEFAULT_CACHE_CAPACITY: usize = 1_000_000;

/// A finite sequence of 0-based generator indices; not necessarily reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    /// Builds a word from 1-based indices as written in the text formats.
    pub fn from_one_based(letters: &[usize]) -> Result<Self> {
        letters
            .iter()
            .map(|&l| {
                if l == 0 || l > u8::MAX as usize + 1 {
                    Err(Error::InvalidArgument(format!("generator index {l} is not 1-based")))
                } else {
                    Ok((l - 1) as u8)
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Parses `"1,2,1"`, `"s1 s2 s1"`, generator names, or `e` for the empty word.
    pub fn parse(sys: &CoxeterSystem, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "e" {
            return Ok(Word::default());
        }
        let mut letters = Vec::new();
        for tok in text.split(|c: char| c == ',' || c == '.' || c == '*' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let index = if let Some(pos) = sys.names().iter().position(|n| n == tok) {
                pos
            } else {
                let digits = tok.strip_prefix('s').unwrap_or(tok);
                let v: usize = digits
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad generator {tok:?}")))?;
                if v == 0 {
                    return Err(Error::InvalidArgument(format!("generator {tok:?} is not 1-based")));
                }
                v - 1
            };
            sys.check_gen(index)?;
            letters.push(index as u8);
        }
        Ok(Word(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

/// A group element, stored as its ShortLex normal form.
///
/// Only [`CoxeterGroup`] constructs elements, so the stored word is always the
/// lexicographically least reduced word of the element it names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element(Arc<[u8]>);

impl Element {
    pub(crate) fn from_normal_form(nf: Vec<u8>) -> Self {
        Element(nf.into())
    }

    pub fn normal_form(&self) -> &[u8] {
        &self.0
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_word(&self) -> Word {
        Word(self.0.to_vec())
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&l| l as usize + 1).collect()
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

/// `e` for the identity, otherwise 1-based letters joined by commas.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", *l as usize + 1)?;
        }
        Ok(())
    }
}

/// ShortLex: shorter first, then lexicographic in generator order.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(|&l| l as usize + 1))
    }
}

struct ElementInfo {
    /// Normal form of `v * s` per generator; descents are filled on creation.
    right: Box<[OnceLock<Element>]>,
    inverse: Element,
}

/// A Coxeter system together with a memoized word-problem solver.
///
/// The memo is an internal cache: results never depend on what it holds, and
/// the type is safe to share between threads.
pub struct CoxeterGroup {
    system: CoxeterSystem,
    /// Flattened label matrix, 0 for infinity.
    orders: Vec<u32>,
    closure_budget: usize,
    cache_capacity: usize,
    cache: RwLock<HashMap<Element, Arc<ElementInfo>>>,
}

impl fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterGroup")
            .field("system", &self.system)
            .field("closure_budget", &self.closure_budget)
            .finish_non_exhaustive()
    }
}

impl CoxeterGroup {
    pub fn new(system: CoxeterSystem) -> Self {
        Self::with_closure_budget(system, DEFAULT_CLOSURE_BUDGET)
    }

    pub fn with_closure_budget(system: CoxeterSystem, closure_budget: usize) -> Self {
        let n = system.rank();
        let mut orders = vec![1u32; n * n];
        for ((i, j), label) in system.pairs() {
            let m = match label {
                Label::Finite(m) => m,
                Label::Infinite => 0,
            };
            orders[i * n + j] = m;
            orders[j * n + i] = m;
        }
        Self {
            system,
            orders,
            closure_budget: closure_budget.max(1),
            cache_capacity: DEFAULT_CACHE_CAPACITY,
            cache: RwLock::new(HashMap::default()),
        }
    }

    /// Bounds the memo. When full it is cleared, which only costs recomputation.
    pub fn with_cache_capacity(mut self, capacity: usize) -> Self {
        self.cache_capacity = capacity.max(1);
        self
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn closure_budget(&self) -> usize {
        self.closure_budget
    }

    /// Number of memoized elements.
    pub fn cached_elements(&self) -> usize {
        self.cache.read().unwrap().len()
    }

    pub fn identity(&self) -> Element {
        Element::from_normal_form(Vec::new())
    }

    pub fn generator(&self, i: usize) -> Result<Element> {
        self.system.check_gen(i)?;
        Ok(Element::from_normal_form(vec![i as u8]))
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.rank()).map(|i| Element::from_normal_form(vec![i as u8])).collect()
    }

    fn check_word(&self, w: &[u8]) -> Result<()> {
        w.iter().try_for_each(|&l| self.system.check_gen(l as usize))
    }

    fn orders(&self) -> Orders<'_> {
        Orders { rank: self.rank(), table: &self.orders }
    }

    /// Heaps of all reduced words of the element spelled by the reduced
    /// word `word`, as lex-least representatives.
    fn braid_closure(&self, word: &[u8]) -> Result<Vec<Vec<u8>>> {
        heap::closure(&self.orders(), word, self.closure_budget)
            .map_err(|_| Error::ClosureBudget { limit: self.closure_budget, length: word.len() })
    }

    /// Computes normal form and descent data of the element spelled by the
    /// reduced word `word`, and memoizes it.
    fn analyze_reduced(&self, word: &[u8]) -> Result<(Element, Arc<ElementInfo>)> {
        let closure = self.braid_closure(word)?;
        let nf = closure.iter().min().expect("closure contains the input").clone();
        let nf = Element::from_normal_form(nf);
        if let Some(info) = self.cache.read().unwrap().get(&nf) {
            return Ok((nf, Arc::clone(info)));
        }

        let orders = self.orders();
        let n = self.rank();
        let mut descents: Vec<Option<Vec<u8>>> = vec![None; n];
        let mut inverse: Option<Vec<u8>> = None;
        for w in &closure {
            for i in heap::maximal(&orders, w) {
                let mut rest = w.clone();
                let last = rest.remove(i);
                let prefix = heap::lex_min(&orders, &rest);
                let slot = &mut descents[last as usize];
                if slot.as_ref().is_none_or(|cur| prefix < *cur) {
                    *slot = Some(prefix);
                }
            }
            let rev: Vec<u8> = w.iter().rev().copied().collect();
            let rev = heap::lex_min(&orders, &rev);
            if inverse.as_ref().is_none_or(|cur| rev < *cur) {
                inverse = Some(rev);
            }
        }
        let right: Box<[OnceLock<Element>]> = descents
            .into_iter()
            .map(|d| match d {
                Some(prefix) => OnceLock::from(Element::from_normal_form(prefix)),
                None => OnceLock::new(),
            })
            .collect();
        let info = Arc::new(ElementInfo {
            right,
            inverse: Element::from_normal_form(inverse.unwrap_or_default()),
        });
        let mut cache = self.cache.write().unwrap();
        if cache.len() >= self.cache_capacity {
            cache.clear();
        }
        let info = Arc::clone(cache.entry(nf.clone()).or_insert(info));
        Ok((nf, info))
    }

    fn info(&self, v: &Element) -> Result<Arc<ElementInfo>> {
        if let Some(info) = self.cache.read().unwrap().get(v) {
            return Ok(Arc::clone(info));
        }
        Ok(self.analyze_reduced(v.normal_form())?.1)
    }

    /// `v * s_i`.
    pub fn right_mul(&self, v: &Element, s: usize) -> Result<Element> {
        self.system.check_gen(s)?;
        let info = self.info(v)?;
        if let Some(next) = info.right[s].get() {
            return Ok(next.clone());
        }
        // `s` is not a right descent, so `nf(v) s` is reduced.
        let mut word = v.normal_form().to_vec();
        word.push(s as u8);
        let (next, _) = self.analyze_reduced(&word)?;
        Ok(info.right[s].get_or_init(|| next).clone())
    }

    /// `s_i * v`.
    pub fn left_mul(&self, s: usize, v: &Element) -> Result<Element> {
        let inv = self.inverse(v)?;
        let prod = self.right_mul(&inv, s)?;
        self.inverse(&prod)
    }

    /// Normal form of the element spelled by `w`.
    pub fn reduce(&self, w: &[u8]) -> Result<Element> {
        self.check_word(w)?;
        self.apply_word(self.identity(), w)
    }

    pub fn reduce_word(&self, w: &Word) -> Result<Element> {
        self.reduce(w.letters())
    }

    fn apply_word(&self, start: Element, w: &[u8]) -> Result<Element> {
        w.iter().try_fold(start, |acc, &s| self.right_mul(&acc, s as usize))
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.apply_word(a.clone(), b.normal_form())
    }

    pub fn inverse(&self, a: &Element) -> Result<Element> {
        Ok(self.info(a)?.inverse.clone())
    }

    /// `g s_i g^-1`.
    pub fn conjugate_reflection(&self, g: &Element, i: usize) -> Result<Element> {
        let gs = self.right_mul(g, i)?;
        let g_inv = self.inverse(g)?;
        self.multiply(&gs, &g_inv)
    }

    /// `h^-1 x h`, used for conjugating subgroup members.
    pub fn conjugate_by(&self, x: &Element, h: &Element) -> Result<Element> {
        let h_inv = self.inverse(h)?;
        let y = self.multiply(&h_inv, x)?;
        self.multiply(&y, h)
    }

    pub fn is_in_centralizer(&self, g: &Element, i: usize) -> Result<bool> {
        let c = self.conjugate_reflection(g, i)?;
        Ok(c.normal_form() == [i as u8])
    }

    /// Whether `w` is a reduced word.
    pub fn is_reduced(&self, w: &[u8]) -> Result<bool> {
        Ok(self.reduce(w)?.length() == w.len())
    }

    /// Whether `l(s_i v) < l(v)`.
    pub fn is_left_descent(&self, i: usize, v: &Element) -> Result<bool> {
        self.system.check_gen(i)?;
        let inv = self.inverse(v)?;
        Ok(self.info(&inv)?.right[i].get().is_some_and(|w| w.length() < inv.length()))
    }

    /// Generators `s` with `l(v s) < l(v)`.
    pub fn right_descents(&self, v: &Element) -> Result<Vec<usize>> {
        let info = self.info(v)?;
        Ok((0..self.rank())
            .filter(|&s| info.right[s].get().is_some_and(|w| w.length() < v.length()))
            .collect())
    }

    /// Every reduced word spelling `v`, sorted lexicographically.
    pub fn reduced_words(&self, v: &Element) -> Result<Vec<Vec<u8>>> {
        let orders = self.orders();
        let mut words = Vec::new();
        for h in self.braid_closure(v.normal_form())? {
            let room = self.closure_budget.saturating_sub(words.len());
            let budget_error =
                |_| Error::ClosureBudget { limit: self.closure_budget, length: v.length() };
            words.extend(heap::linear_extensions(&orders, &h, room).map_err(budget_error)?);
        }
        words.sort();
        Ok(words)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::Label::{Finite, Infinite};

    fn dihedral(m: Label) -> CoxeterGroup {
        CoxeterGroup::new(CoxeterSystem::new(2, m).unwrap())
    }

    fn w(one_based: &[usize]) -> Vec<u8> {
        Word::from_one_based(one_based).unwrap().0
    }

    #[test]
    fn a2_examples() {
        let g = dihedral(Finite(3));
        assert_eq!(g.reduce(&w(&[1, 2, 1, 2])).unwrap().normal_form(), w(&[2, 1]));
        assert_eq!(g.reduce(&w(&[2, 1, 2])).unwrap().normal_form(), w(&[1, 2, 1]));
        assert!(g.reduce(&w(&[1, 1])).unwrap().is_identity());
    }

    #[test]
    fn d_infinity_products() {
        let g = dihedral(Infinite);
        let a = g.reduce(&w(&[1, 2])).unwrap();
        let p = g.multiply(&a, &a).unwrap();
        assert_eq!(p.normal_form(), w(&[1, 2, 1, 2]));
        assert_eq!(g.inverse(&a).unwrap().normal_form(), w(&[2, 1]));
    }

    #[test]
    fn inverse_of_palindrome_and_identity() {
        let g = dihedral(Finite(5));
        let a = g.reduce(&w(&[1, 2, 1])).unwrap();
        assert_eq!(g.inverse(&a).unwrap(), a);
        assert!(g.inverse(&g.identity()).unwrap().is_identity());
    }

    #[test]
    fn conjugation_in_a2() {
        let g = dihedral(Finite(3));
        let s2 = g.generator(1).unwrap();
        let c = g.conjugate_reflection(&s2, 0).unwrap();
        // s2 s1 s2 = s1 s2 s1, whose ShortLex form starts with s1.
        assert_eq!(c.normal_form(), w(&[1, 2, 1]));
        assert_eq!(g.conjugate_reflection(&g.identity(), 0).unwrap(), g.generator(0).unwrap());
        let s1 = g.generator(0).unwrap();
        assert_eq!(g.conjugate_reflection(&s1, 0).unwrap(), s1);
    }

    #[test]
    fn left_and_right_multiplication_agree_with_reduce() {
        let g = dihedral(Finite(4));
        let v = g.reduce(&w(&[1, 2, 1])).unwrap();
        assert_eq!(g.left_mul(1, &v).unwrap(), g.reduce(&w(&[2, 1, 2, 1])).unwrap());
        assert_eq!(g.right_mul(&v, 0).unwrap(), g.reduce(&w(&[1, 2])).unwrap());
    }

    #[test]
    fn descents_and_reduced_words() {
        let g = dihedral(Finite(3));
        let longest = g.reduce(&w(&[1, 2, 1])).unwrap();
        assert_eq!(g.right_descents(&longest).unwrap(), vec![0, 1]);
        assert_eq!(g.reduced_words(&longest).unwrap(), vec![w(&[1, 2, 1]), w(&[2, 1, 2])]);
    }

    #[test]
    fn closure_budget_is_enforced() {
        // The longest element of A3 has 16 reduced words in 8 commutation classes.
        let sys = CoxeterSystem::new(3, Finite(3)).unwrap().with_label(0, 2, Finite(2)).unwrap();
        let g = CoxeterGroup::with_closure_budget(sys.clone(), 4);
        let err = g.reduce(&w(&[1, 2, 1, 3, 2, 1])).unwrap_err();
        assert!(err.is_resource_limit(), "{err}");
        let g = CoxeterGroup::new(sys);
        let longest = g.reduce(&w(&[1, 2, 1, 3, 2, 1])).unwrap();
        assert_eq!(g.reduced_words(&longest).unwrap().len(), 16);

        // Commuting letters no longer cost anything.
        let g = CoxeterGroup::with_closure_budget(CoxeterSystem::new(12, Finite(2)).unwrap(), 1);
        let all: Vec<usize> = (1..=12).rev().collect();
        assert_eq!(g.reduce(&w(&all)).unwrap().length(), 12);
    }

    #[test]
    fn word_parsing() {
        let sys = CoxeterSystem::new(3, Infinite).unwrap();
        assert_eq!(Word::parse(&sys, "1,2,3").unwrap().0, vec![0, 1, 2]);
        assert_eq!(Word::parse(&sys, "s3 s1").unwrap().0, vec![2, 0]);
        assert!(Word::parse(&sys, "e").unwrap().is_empty());
        assert!(Word::parse(&sys, "4").is_err());
        assert!(Word::parse(&sys, "0").is_err());
    }

    #[test]
    fn rejects_out_of_range_letters() {
        let g = dihedral(Infinite);
        assert!(g.reduce(&[2]).is_err());
    }
}
