//! Polynomial row vectors `[g1 g2]` and the `top` / `pot` monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{Modulus, Residue};

/// Component index of a monomial `x^a e_i`; `First < Second`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Position {
    First,
    Second,
}

impl Position {
    /// 1 or 2.
    pub fn number(self) -> usize {
        match self {
            Position::First => 1,
            Position::Second => 2,
        }
    }
}

/// The monomial `x^exp e_pos`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exp: usize,
    pub pos: Position,
}

impl Monomial {
    pub fn new(exp: usize, pos: Position) -> Self {
        Monomial { exp, pos }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{} e{}", self.exp, self.pos.number())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Term over position: exponent first, ties broken by position.
    #[default]
    Top,
    /// Position over term: position first, ties broken by exponent.
    Pot,
}

pub fn compare_monomials(a: Monomial, b: Monomial, order: MonomialOrder) -> Ordering {
    match order {
        MonomialOrder::Top => a.exp.cmp(&b.exp).then(a.pos.cmp(&b.pos)),
        MonomialOrder::Pot => a.pos.cmp(&b.pos).then(a.exp.cmp(&b.exp)),
    }
}

/// Leading monomial, coefficient, position, degree and order of a nonzero vector.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct LeadingData {
    pub lm: Monomial,
    pub lc: Residue,
    pub lpos: Position,
    pub deg: usize,
    pub ord: u32,
}

/// A row vector `[g1 g2]` in `Z_{p^r}[x]^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRowVec {
    pub g1: Poly,
    pub g2: Poly,
}

impl PolyRowVec {
    pub fn new(g1: Poly, g2: Poly) -> Self {
        debug_assert_eq!(g1.modulus(), g2.modulus());
        PolyRowVec { g1, g2 }
    }

    pub fn zero(modulus: Modulus) -> Self {
        Self::new(Poly::zero(modulus), Poly::zero(modulus))
    }

    pub fn from_i64(modulus: Modulus, g1: &[i64], g2: &[i64]) -> Self {
        Self::new(Poly::from_i64(modulus, g1), Poly::from_i64(modulus, g2))
    }

    pub fn modulus(&self) -> Modulus {
        self.g1.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.g1.is_zero() && self.g2.is_zero()
    }

    pub fn component(&self, pos: Position) -> &Poly {
        match pos {
            Position::First => &self.g1,
            Position::Second => &self.g2,
        }
    }

    /// Leading monomial under `order`; `None` for the zero vector.
    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<Monomial> {
        let candidates = [
            self.g1.degree().map(|d| Monomial::new(d, Position::First)),
            self.g2.degree().map(|d| Monomial::new(d, Position::Second)),
        ];
        candidates
            .into_iter()
            .flatten()
            .max_by(|a, b| compare_monomials(*a, *b, order))
    }

    pub fn leading_data(&self, order: MonomialOrder) -> Result<LeadingData> {
        let lm = self.leading_monomial(order).ok_or(Error::ZeroVector)?;
        let lc = self.component(lm.pos).coeff(lm.exp);
        Ok(LeadingData {
            lm,
            lc,
            lpos: lm.pos,
            deg: lm.exp,
            ord: lc.order(),
        })
    }

    /// Degree under `top`, i.e. the larger component degree.
    pub fn top_degree(&self) -> Option<usize> {
        self.g1.degree().max(self.g2.degree())
    }

    pub fn scale(&self, c: Residue) -> PolyRowVec {
        PolyRowVec::new(self.g1.scale(c), self.g2.scale(c))
    }

    pub fn shift(&self, e: usize) -> PolyRowVec {
        PolyRowVec::new(self.g1.shift(e), self.g2.shift(e))
    }

    /// Multiplies both components by the polynomial `a`.
    pub fn mul_poly(&self, a: &Poly) -> PolyRowVec {
        PolyRowVec::new(a * &self.g1, a * &self.g2)
    }

    /// Value at `x = 0`.
    pub fn at_zero(&self) -> (Residue, Residue) {
        (self.g1.constant_term(), self.g2.constant_term())
    }
}

impl fmt::Display for PolyRowVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.g1, self.g2)
    }
}

impl Add for &PolyRowVec {
    type Output = PolyRowVec;
    fn add(self, rhs: &PolyRowVec) -> PolyRowVec {
        PolyRowVec::new(&self.g1 + &rhs.g1, &self.g2 + &rhs.g2)
    }
}

impl Sub for &PolyRowVec {
    type Output = PolyRowVec;
    fn sub(self, rhs: &PolyRowVec) -> PolyRowVec {
        PolyRowVec::new(&self.g1 - &rhs.g1, &self.g2 - &rhs.g2)
    }
}

/// Compares two nonzero vectors by leading monomial.
pub(crate) fn cmp_lm(a: &PolyRowVec, b: &PolyRowVec, order: MonomialOrder) -> Ordering {
    match (a.leading_monomial(order), b.leading_monomial(order)) {
        (Some(x), Some(y)) => compare_monomials(x, y, order),
        (x, y) => x.is_some().cmp(&y.is_some()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use MonomialOrder::{Pot, Top};
    use Position::{First, Second};

    fn all_monomials() -> Vec<Monomial> {
        (0..=6)
            .flat_map(|e| [Monomial::new(e, First), Monomial::new(e, Second)])
            .collect()
    }

    #[test]
    fn monomial_examples() {
        let m = Monomial::new;
        assert_eq!(compare_monomials(m(1, Second), m(2, First), Top), Ordering::Less);
        assert_eq!(compare_monomials(m(5, First), m(0, Second), Pot), Ordering::Less);
        assert_eq!(compare_monomials(m(2, First), m(2, Second), Top), Ordering::Less);
        assert_eq!(compare_monomials(m(3, First), m(3, First), Pot), Ordering::Equal);
    }

    #[test]
    fn monomial_orders_are_total_orders() {
        let ms = all_monomials();
        for order in [Top, Pot] {
            for &a in &ms {
                for &b in &ms {
                    let ab = compare_monomials(a, b, order);
                    assert_eq!(ab, compare_monomials(b, a, order).reverse());
                    assert_eq!(ab == Ordering::Equal, a == b);
                    for &c in &ms {
                        if ab != Ordering::Greater
                            && compare_monomials(b, c, order) != Ordering::Greater
                        {
                            assert_ne!(compare_monomials(a, c, order), Ordering::Greater);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn leading_data_examples() {
        let z5 = Modulus::prime(5).unwrap();
        let f = PolyRowVec::from_i64(z5, &[0, 1, 4, 4], &[1, 4, 3]);
        let d = f.leading_data(Top).unwrap();
        assert_eq!((d.deg, d.lpos, d.lc.value()), (3, First, 4));

        let z9 = Modulus::new(3, 2).unwrap();
        let f = PolyRowVec::from_i64(z9, &[], &[0, 3, 0, 1]);
        let d = f.leading_data(Top).unwrap();
        assert_eq!((d.deg, d.lpos, d.lc.value(), d.ord), (3, Second, 1, 2));

        let f = PolyRowVec::from_i64(z9, &[], &[0, 0, 0, 3]);
        let d = f.leading_data(Top).unwrap();
        assert_eq!((d.lc.value(), d.ord), (3, 1));

        assert_eq!(
            PolyRowVec::zero(z9).leading_data(Top),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn pot_prefers_second_component() {
        let z5 = Modulus::prime(5).unwrap();
        let f = PolyRowVec::from_i64(z5, &[0, 0, 0, 1], &[2]);
        let d = f.leading_data(Pot).unwrap();
        assert_eq!((d.lpos, d.deg, d.lc.value()), (Second, 0, 2));
    }

    proptest! {
        #[test]
        fn top_leading_monomial_rule(a in proptest::collection::vec(0u64..9, 0..5),
                                     b in proptest::collection::vec(0u64..9, 0..5)) {
            let z9 = Modulus::new(3, 2).unwrap();
            let f = PolyRowVec::new(Poly::new(z9, a), Poly::new(z9, b));
            if let Some(lm) = f.leading_monomial(Top) {
                prop_assert_eq!(Some(lm.exp), f.top_degree());
                let tie = f.g1.degree() == f.g2.degree();
                if tie {
                    prop_assert_eq!(lm.pos, Second);
                }
                // lm dominates every monomial with a nonzero coefficient
                for (pos, comp) in [(First, &f.g1), (Second, &f.g2)] {
                    for (e, &c) in comp.coeffs().iter().enumerate() {
                        if c != 0 {
                            prop_assert_ne!(
                                compare_monomials(Monomial::new(e, pos), lm, Top),
                                Ordering::Greater
                            );
                        }
                    }
                }
            } else {
                prop_assert!(f.is_zero());
            }
        }
    }
}
