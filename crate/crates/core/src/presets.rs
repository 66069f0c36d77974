//! Named Coxeter systems used for calibration and in the worked examples.

use crate::system::{CoxeterSystem, Label};
use crate::system::Label::{Finite, Infinite};

fn dihedral(m: Label) -> CoxeterSystem {
    CoxeterSystem::new(2, m).expect("rank 2 is valid")
}

/// Linear diagram `s1 - s2 - ... - sn` with the given consecutive labels and
/// commuting non-neighbours.
fn linear(labels: &[u32]) -> CoxeterSystem {
    let n = labels.len() + 1;
    CoxeterSystem::from_fn(n, |i, j| if j == i + 1 { Finite(labels[i]) } else { Finite(2) })
        .expect("linear diagram is valid")
}

/// Cycle on `n` vertices: consecutive generators commute, all other pairs are free.
fn right_angled_cycle(n: usize) -> CoxeterSystem {
    CoxeterSystem::from_fn(n, |i, j| {
        if j == i + 1 || (i == 0 && j == n - 1) {
            Finite(2)
        } else {
            Infinite
        }
    })
    .expect("cycle is valid")
}

/// Symmetric group S3.
pub fn a2() -> CoxeterSystem {
    dihedral(Finite(3))
}

/// Dihedral group of order 8.
pub fn b2() -> CoxeterSystem {
    dihedral(Finite(4))
}

/// Dihedral group of order 10.
pub fn h2() -> CoxeterSystem {
    dihedral(Finite(5))
}

/// Symmetric group S4.
pub fn a3() -> CoxeterSystem {
    linear(&[3, 3])
}

/// `(Z/2)^3`.
pub fn a1_cubed() -> CoxeterSystem {
    CoxeterSystem::new(3, Finite(2)).expect("valid")
}

/// Infinite dihedral group.
pub fn d_infinity() -> CoxeterSystem {
    dihedral(Infinite)
}

/// `Z/2 * Z/2 * Z/2`.
pub fn free_product_3() -> CoxeterSystem {
    CoxeterSystem::new(3, Infinite).expect("valid")
}

/// Affine `(3,3,3)` triangle group.
pub fn affine_333() -> CoxeterSystem {
    CoxeterSystem::new(3, Finite(3)).expect("valid")
}

/// Right-angled group on the 4-cycle, `D_inf x D_inf`.
pub fn racg_square() -> CoxeterSystem {
    right_angled_cycle(4)
}

/// Right-angled group on the 5-cycle (the right-angled hyperbolic pentagon).
pub fn racg_pentagon() -> CoxeterSystem {
    right_angled_cycle(5)
}

/// The eight-generator example: `s1` commutes with `s4, s5, s6`, is free
/// against `s2, s3, s7, s8`; `s4, s5, s6` pairwise have order 3; every other
/// pair gets `other_label` (meant to exceed 50).
pub fn eight_generator_example(other_label: u32) -> CoxeterSystem {
    CoxeterSystem::from_fn(8, |i, j| {
        let (a, b) = (i + 1, j + 1);
        match (a, b) {
            (1, 4..=6) => Finite(2),
            (1, 2 | 3 | 7 | 8) => Infinite,
            (4, 5) | (4, 6) | (5, 6) => Finite(3),
            _ => Finite(other_label),
        }
    })
    .expect("valid")
}

/// Label used for pairs only known to be "greater than 50".
pub const ABOVE_FIFTY: u32 = 51;

/// The four systems on which the ends estimator is calibrated, with their
/// expected numbers of ends.
pub fn ends_calibration() -> Vec<(&'static str, CoxeterSystem, crate::ends::Verdict)> {
    use crate::ends::Verdict;
    vec![
        ("A2", a2(), Verdict::Zero),
        ("D_inf", d_infinity(), Verdict::Two),
        ("free-product-3", free_product_3(), Verdict::Many),
        ("affine-333", affine_333(), Verdict::One),
    ]
}

/// Finite systems with their orders.
pub fn finite_calibration() -> Vec<(&'static str, CoxeterSystem, usize)> {
    vec![
        ("A2", a2(), 6),
        ("B2", b2(), 8),
        ("H2", h2(), 10),
        ("A3", a3(), 24),
        ("A1^3", a1_cubed(), 8),
    ]
}
