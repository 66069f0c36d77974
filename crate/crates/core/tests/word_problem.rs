use std::collections::{HashMap, HashSet};

use coxsplit::finite_oracle::calibration_models;
use coxsplit::{presets, CoxeterGroup, CoxeterSystem, Label};
use proptest::prelude::*;

/// Reduced words by plain braid and commutation moves, no heaps involved.
fn word_closure(sys: &CoxeterSystem, word: &[u8]) -> HashSet<Vec<u8>> {
    let mut seen = HashSet::from([word.to_vec()]);
    let mut stack = vec![word.to_vec()];
    while let Some(w) = stack.pop() {
        for p in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[p], w[p + 1]);
            if a == b {
                continue;
            }
            let Label::Finite(m) = sys.label(a as usize, b as usize) else { continue };
            let m = m as usize;
            if p + m > w.len() || !(2..m).all(|k| w[p + k] == w[p + k - 2]) {
                continue;
            }
            let mut next = w.clone();
            for k in 0..m {
                next[p + k] = if k % 2 == 0 { b } else { a };
            }
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    seen
}

fn systems() -> Vec<CoxeterSystem> {
    vec![
        presets::a3(),
        presets::affine_333(),
        presets::racg_pentagon(),
        presets::d_infinity(),
        CoxeterSystem::parse("rank 4\ndefault 2\nm 1 2 3\nm 2 3 4\nm 3 4 inf\nm 1 4 5\n").unwrap(),
    ]
}

fn system_and_word() -> impl Strategy<Value = (usize, Vec<u8>)> {
    (0..systems().len()).prop_flat_map(|k| {
        let rank = systems()[k].rank() as u8;
        (Just(k), prop::collection::vec(0..rank, 0..14))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduced_words_match_plain_braid_closure((k, w) in system_and_word()) {
        let sys = &systems()[k];
        let g = CoxeterGroup::new(sys.clone());
        let el = g.reduce(&w).unwrap();
        let words: HashSet<Vec<u8>> = g.reduced_words(&el).unwrap().into_iter().collect();
        prop_assert_eq!(&words, &word_closure(sys, el.normal_form()));
        prop_assert_eq!(words.iter().min().unwrap().as_slice(), el.normal_form());
    }

    #[test]
    fn reduce_is_idempotent_and_respects_relations((k, w) in system_and_word(), pos in 0usize..14, a in 0u8..4, b in 0u8..4) {
        let sys = &systems()[k];
        let g = CoxeterGroup::new(sys.clone());
        let el = g.reduce(&w).unwrap();
        prop_assert_eq!(&g.reduce(el.normal_form()).unwrap(), &el);

        let rank = sys.rank() as u8;
        let (a, b) = (a % rank, b % rank);
        let pos = pos.min(w.len());
        let mut inserted = w.clone();
        if a == b {
            inserted.splice(pos..pos, [a, a]);
        } else if let Label::Finite(m) = sys.label(a as usize, b as usize) {
            let rel: Vec<u8> = (0..2 * m).map(|i| if i % 2 == 0 { a } else { b }).collect();
            inserted.splice(pos..pos, rel);
        }
        prop_assert_eq!(g.reduce(&inserted).unwrap(), el);
    }

    #[test]
    fn lengths_and_inverses((k, u) in system_and_word(), v in prop::collection::vec(0u8..2, 0..8)) {
        let g = CoxeterGroup::new(systems()[k].clone());
        let a = g.reduce(&u).unwrap();
        let b = g.reduce(&v).unwrap();
        let ab = g.multiply(&a, &b).unwrap();
        prop_assert!(ab.length() <= a.length() + b.length());
        let a_inv = g.inverse(&a).unwrap();
        prop_assert!(g.multiply(&a, &a_inv).unwrap().is_identity());
        prop_assert_eq!(a_inv.length(), a.length());
        let rev: Vec<u8> = u.iter().rev().copied().collect();
        prop_assert_eq!(g.reduce(&rev).unwrap(), a_inv);
    }

    #[test]
    fn conjugates_of_generators_are_reflections((k, w) in system_and_word(), i in 0usize..4) {
        let g = CoxeterGroup::new(systems()[k].clone());
        let i = i % g.rank();
        let x = g.reduce(&w).unwrap();
        let t = g.conjugate_reflection(&x, i).unwrap();
        prop_assert_eq!(t.length() % 2, 1);
        prop_assert!(coxsplit::walls::is_reflection(&g, &t).unwrap());
        prop_assert!(g.multiply(&t, &t).unwrap().is_identity());
        let y = g.multiply(&t, &x).unwrap();
        prop_assert!(!coxsplit::walls::is_reflection(&g, &g.multiply(&y, &y).unwrap()).unwrap());
    }
}

#[test]
fn finite_groups_agree_with_permutation_models() {
    for model in calibration_models() {
        let g = CoxeterGroup::new(model.system.clone());
        let words = model.shortlex_words();
        assert_eq!(words.len(), model.order, "{}", model.name);
        let elements: HashMap<_, _> = words
            .iter()
            .map(|(perm, w)| (perm.clone(), g.reduce(w).unwrap()))
            .collect();
        for (perm, w) in &words {
            assert_eq!(elements[perm].normal_form(), w.as_slice(), "{}", model.name);
        }
        for (pa, a) in &elements {
            for (pb, b) in &elements {
                let product = coxsplit::finite_oracle::compose(pa, pb);
                assert_eq!(&g.multiply(a, b).unwrap(), &elements[&product], "{}", model.name);
            }
        }
    }
}

#[test]
fn left_descents_match_left_multiplication() {
    let g = CoxeterGroup::new(presets::affine_333());
    let ball = coxsplit::Ball::build(&g, 6, 1000).unwrap();
    for v in ball.vertices() {
        for i in 0..3 {
            let shorter = g.left_mul(i, v).unwrap().length() < v.length();
            assert_eq!(g.is_left_descent(i, v).unwrap(), shorter);
        }
    }
}

#[test]
fn right_angled_words_do_not_blow_up() {
    // Length-24 elements of D_inf x D_inf have 2.7 million reduced words.
    let g = CoxeterGroup::with_closure_budget(presets::racg_square(), 10);
    let w: Vec<u8> = (0..12).flat_map(|k| [if k % 2 == 0 { 0 } else { 2 }, if k % 2 == 0 { 1 } else { 3 }]).collect();
    let el = g.reduce(&w).unwrap();
    assert_eq!(el.length(), 24);
    // s2 commutes with s1 and moves to the front; s4 is blocked by s3.
    assert_eq!(el.normal_form()[..4], [0, 1, 2, 0]);
    assert_eq!(g.inverse(&el).unwrap().length(), 24);
}
