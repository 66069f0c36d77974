//! Reduced words up to commutation.
//!
//! Two reduced words related by commutation moves (`m = 2`) are the same
//! heap: the partial order on letter occurrences generated by "earlier and
//! not commuting". Braid closures are taken over heaps, each represented by
//! its lexicographically least word, so right-angled pieces cost nothing.

use std::collections::HashSet;

/// Label lookup: `order(a, b)` is `m_ab`, 0 for infinity, 1 on the diagonal.
pub(crate) struct Orders<'a> {
    pub rank: usize,
    pub table: &'a [u32],
}

impl Orders<'_> {
    pub fn get(&self, a: u8, b: u8) -> u32 {
        self.table[a as usize * self.rank + b as usize]
    }

    fn commute(&self, a: u8, b: u8) -> bool {
        self.get(a, b) == 2
    }
}

fn distinct_letters(w: &[u8]) -> Vec<u8> {
    let mut letters = w.to_vec();
    letters.sort_unstable();
    letters.dedup();
    letters
}

/// Whether some two letters of `w` satisfy `pred`.
fn any_pair(orders: &Orders<'_>, w: &[u8], pred: impl Fn(u32) -> bool) -> bool {
    let letters = distinct_letters(w);
    letters
        .iter()
        .enumerate()
        .any(|(i, &a)| letters[i + 1..].iter().any(|&b| pred(orders.get(a, b))))
}

/// Least word in the commutation class of `w`.
pub(crate) fn lex_min(orders: &Orders<'_>, w: &[u8]) -> Vec<u8> {
    if !any_pair(orders, w, |m| m == 2) {
        return w.to_vec();
    }
    let n = w.len();
    let mut blockers: Vec<usize> = (0..n)
        .map(|i| (0..i).filter(|&j| !orders.commute(w[j], w[i])).count())
        .collect();
    let mut used = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let pick = (0..n)
            .filter(|&i| !used[i] && blockers[i] == 0)
            .min_by_key(|&i| (w[i], i))
            .expect("a heap always has a minimal occurrence");
        used[pick] = true;
        out.push(w[pick]);
        for k in pick + 1..n {
            if !used[k] && !orders.commute(w[pick], w[k]) {
                blockers[k] -= 1;
            }
        }
    }
    out
}

/// Bitset of strict predecessors in the heap order, one per position.
fn predecessors(orders: &Orders<'_>, w: &[u8]) -> Vec<Vec<u64>> {
    let blocks = w.len().div_ceil(64).max(1);
    let mut below: Vec<Vec<u64>> = Vec::with_capacity(w.len());
    for i in 0..w.len() {
        let mut set = vec![0u64; blocks];
        for j in 0..i {
            if !orders.commute(w[j], w[i]) {
                set[j / 64] |= 1 << (j % 64);
                for (s, b) in set.iter_mut().zip(&below[j]) {
                    *s |= b;
                }
            }
        }
        below.push(set);
    }
    below
}

fn has(set: &[u64], j: usize) -> bool {
    set[j / 64] >> (j % 64) & 1 == 1
}

/// Heaps reachable from `w` by braid moves with `m >= 3`, as lex-least words.
/// `w` must be reduced. Fails with the heap count once it exceeds `budget`.
pub(crate) fn closure(orders: &Orders<'_>, w: &[u8], budget: usize) -> Result<Vec<Vec<u8>>, usize> {
    let start = lex_min(orders, w);
    if !any_pair(orders, w, |m| m >= 3) {
        return Ok(vec![start]);
    }
    let mut seen: HashSet<Vec<u8>> = HashSet::from([start.clone()]);
    let mut queue = vec![start];
    while let Some(w) = queue.pop() {
        for next in braid_neighbours(orders, &w) {
            let next = lex_min(orders, &next);
            if seen.insert(next.clone()) {
                if seen.len() > budget {
                    return Err(seen.len());
                }
                queue.push(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn braid_neighbours(orders: &Orders<'_>, w: &[u8]) -> Vec<Vec<u8>> {
    let below = predecessors(orders, w);
    let mut out = Vec::new();
    let letters = distinct_letters(w);
    for (ai, &a) in letters.iter().enumerate() {
        for &b in &letters[ai + 1..] {
            let m = orders.get(a, b) as usize;
            if m < 3 {
                continue;
            }
            let positions: Vec<usize> = (0..w.len()).filter(|&i| w[i] == a || w[i] == b).collect();
            for window in positions.windows(m) {
                if !window.windows(2).all(|p| w[p[0]] != w[p[1]]) {
                    continue;
                }
                let (first, last) = (window[0], window[m - 1]);
                // The window must be convex in the heap order.
                let inside = |x: usize| has(&below[x], first) && has(&below[last], x);
                if (first + 1..last).any(|x| !window.contains(&x) && inside(x)) {
                    continue;
                }
                let mut next = Vec::with_capacity(w.len());
                next.extend_from_slice(&w[..first]);
                let middle = (first + 1..last).filter(|x| !window.contains(x));
                next.extend(middle.clone().filter(|&x| !has(&below[x], first)).map(|x| w[x]));
                let (x, y) = (w[window[1]], w[first]);
                next.extend((0..m).map(|k| if k % 2 == 0 { x } else { y }));
                next.extend(middle.filter(|&x| has(&below[x], first)).map(|x| w[x]));
                next.extend_from_slice(&w[last + 1..]);
                out.push(next);
            }
        }
    }
    out
}

/// Positions of the occurrences that are maximal in the heap.
pub(crate) fn maximal(orders: &Orders<'_>, w: &[u8]) -> Vec<usize> {
    (0..w.len())
        .filter(|&i| (i + 1..w.len()).all(|k| orders.commute(w[i], w[k])))
        .collect()
}

/// Every word of the heap of `w`, stopping after `budget` words.
pub(crate) fn linear_extensions(orders: &Orders<'_>, w: &[u8], budget: usize) -> Result<Vec<Vec<u8>>, usize> {
    fn go(
        orders: &Orders<'_>,
        w: &[u8],
        used: &mut Vec<bool>,
        prefix: &mut Vec<u8>,
        out: &mut Vec<Vec<u8>>,
        budget: usize,
    ) -> Result<(), usize> {
        if prefix.len() == w.len() {
            out.push(prefix.clone());
            return if out.len() > budget { Err(out.len()) } else { Ok(()) };
        }
        for i in 0..w.len() {
            if used[i] || (0..i).any(|j| !used[j] && !orders.commute(w[j], w[i])) {
                continue;
            }
            used[i] = true;
            prefix.push(w[i]);
            go(orders, w, used, prefix, out, budget)?;
            prefix.pop();
            used[i] = false;
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(orders, w, &mut vec![false; w.len()], &mut Vec::new(), &mut out, budget)?;
    Ok(out)
}
