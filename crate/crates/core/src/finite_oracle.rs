//! Permutation models of small finite Coxeter groups.
//!
//! These are independent of the word-problem solver: elements are
//! permutations, products are compositions, and ShortLex normal forms come
//! from enumerating words length by length in lexicographic order.

use std::collections::HashMap;

use crate::presets;
use crate::system::CoxeterSystem;

pub type Perm = Vec<usize>;

/// `(a ∘ b)(x) = a(b(x))`.
pub fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

pub fn identity_perm(points: usize) -> Perm {
    (0..points).collect()
}

/// A finite Coxeter group with one permutation per generator.
#[derive(Debug, Clone)]
pub struct PermutationModel {
    pub name: &'static str,
    pub system: CoxeterSystem,
    pub generators: Vec<Perm>,
    pub order: usize,
}

impl PermutationModel {
    /// Permutation of the word `w`, read as `p(w_1) ∘ ... ∘ p(w_k)`.
    pub fn eval(&self, w: &[u8]) -> Perm {
        let points = self.generators[0].len();
        w.iter().fold(identity_perm(points), |acc, &l| compose(&acc, &self.generators[l as usize]))
    }

    /// ShortLex-least word for every group element, by breadth-first
    /// enumeration of words in lexicographic order.
    pub fn shortlex_words(&self) -> HashMap<Perm, Vec<u8>> {
        let points = self.generators[0].len();
        let mut best: HashMap<Perm, Vec<u8>> = HashMap::from([(identity_perm(points), Vec::new())]);
        let mut layer: Vec<(Vec<u8>, Perm)> = vec![(Vec::new(), identity_perm(points))];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for (w, p) in &layer {
                for (s, g) in self.generators.iter().enumerate() {
                    let q = compose(p, g);
                    if !best.contains_key(&q) {
                        let mut v = w.clone();
                        v.push(s as u8);
                        best.insert(q.clone(), v.clone());
                        next.push((v, q));
                    }
                }
            }
            // Lexicographic order within a length keeps first hits ShortLex-least.
            next.sort();
            layer = next;
        }
        best
    }
}

fn dihedral_perms(m: usize) -> Vec<Perm> {
    let s1 = (0..m).map(|i| (m - i) % m).collect();
    let s2 = (0..m).map(|i| (m + 1 - i) % m).collect();
    vec![s1, s2]
}

fn transposition(points: usize, a: usize, b: usize) -> Perm {
    let mut p = identity_perm(points);
    p.swap(a, b);
    p
}

/// Models for A2, B2, H2, A3 and A1^3 (orders 6, 8, 10, 24, 8).
pub fn calibration_models() -> Vec<PermutationModel> {
    vec![
        PermutationModel { name: "A2", system: presets::a2(), generators: dihedral_perms(3), order: 6 },
        PermutationModel { name: "B2", system: presets::b2(), generators: dihedral_perms(4), order: 8 },
        PermutationModel { name: "H2", system: presets::h2(), generators: dihedral_perms(5), order: 10 },
        PermutationModel {
            name: "A3",
            system: presets::a3(),
            generators: (0..3).map(|i| transposition(4, i, i + 1)).collect(),
            order: 24,
        },
        PermutationModel {
            name: "A1^3",
            system: presets::a1_cubed(),
            generators: (0..3).map(|i| transposition(6, 2 * i, 2 * i + 1)).collect(),
            order: 8,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn models_satisfy_the_relations() {
        for model in calibration_models() {
            let n = model.system.rank();
            let id = identity_perm(model.generators[0].len());
            for i in 0..n {
                assert_eq!(model.eval(&[i as u8, i as u8]), id);
                for j in i + 1..n {
                    let m = model.system.label(i, j).finite().unwrap() as usize;
                    let word: Vec<u8> = (0..2 * m).map(|k| if k % 2 == 0 { i as u8 } else { j as u8 }).collect();
                    assert_eq!(model.eval(&word), id, "{} ({i},{j})", model.name);
                    // The relation has exactly order m.
                    let shorter = &word[..2 * m - 2];
                    assert_ne!(model.eval(shorter), id, "{} ({i},{j})", model.name);
                }
            }
            assert_eq!(model.shortlex_words().len(), model.order, "{}", model.name);
        }
    }
}
