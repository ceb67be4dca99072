//! The interpolation module of a sequence prefix and the discrepancy functional.
//!
//! For `S_1, ..., S_k` write `S(x) = S_1 x + ... + S_k x^k`. The module `M` is
//! the row space of `[x^{k+1}, 0]` and `[-S(x), 1]`, so `[g1 g2]` lies in `M`
//! exactly when `g1 + g2 S` vanishes modulo `x^{k+1}`. The reciprocal module
//! uses the reversed sequence.

use crate::poly::Poly;
use crate::ring::{Modulus, Residue};
use crate::vector::PolyRowVec;

/// The module determined by a sequence prefix, or by its reversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub modulus: Modulus,
    pub sequence: Vec<Residue>,
    pub reciprocal: bool,
}

impl ModuleSpec {
    pub fn new(modulus: Modulus, sequence: &[Residue]) -> Self {
        ModuleSpec {
            modulus,
            sequence: sequence.to_vec(),
            reciprocal: false,
        }
    }

    pub fn reciprocal(modulus: Modulus, sequence: &[Residue]) -> Self {
        ModuleSpec {
            reciprocal: true,
            ..Self::new(modulus, sequence)
        }
    }

    /// `S(x)`, built from the reversed sequence when `reciprocal` is set.
    pub fn sequence_poly(&self) -> Poly {
        let mut coeffs = vec![0];
        if self.reciprocal {
            coeffs.extend(self.sequence.iter().rev().map(|s| s.value()));
        } else {
            coeffs.extend(self.sequence.iter().map(|s| s.value()));
        }
        Poly::new(self.modulus, coeffs)
    }

    /// The two defining rows `[x^{k+1}, 0]` and `[-S(x), 1]`.
    pub fn generators(&self) -> [PolyRowVec; 2] {
        let m = self.modulus;
        let k = self.sequence.len();
        [
            PolyRowVec::new(Poly::monomial(m.one(), k + 1), Poly::zero(m)),
            PolyRowVec::new(-&self.sequence_poly(), Poly::one(m)),
        ]
    }

    pub fn contains(&self, g: &PolyRowVec) -> bool {
        membership(g, self)
    }
}

/// Coefficient of `x^k` in `g1 + g2 S`, the step-`k` discrepancy of `g`.
///
/// Only `S_1..S_k` influence the result; `sequence` must hold at least `k`
/// entries and `k >= 1`.
pub fn discrepancy(g: &PolyRowVec, sequence: &[Residue], k: usize) -> Residue {
    assert!(
        k >= 1 && k <= sequence.len(),
        "discrepancy index {k} outside 1..={}",
        sequence.len()
    );
    let mut acc = g.g1.coeff(k);
    for (i, &c) in g.g2.coeffs().iter().enumerate().take(k) {
        if c != 0 {
            acc += g.g2.modulus().residue(c) * sequence[k - i - 1];
        }
    }
    acc
}

/// Whether `g` lies in the module described by `spec`.
pub fn membership(g: &PolyRowVec, spec: &ModuleSpec) -> bool {
    let k = spec.sequence.len();
    let residual = (&g.g1 + &(&g.g2 * &spec.sequence_poly())).truncated(k + 1);
    residual.is_zero()
}
