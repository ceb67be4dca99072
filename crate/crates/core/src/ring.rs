//! Exact arithmetic in the residue ring `Z_{p^r}`.
//!
//! The field `Z_p` is the special case `r = 1`. All values are stored as
//! canonical representatives in `[0, p^r)`; moduli are capped below `2^31`
//! so that every product of two representatives fits a `u64`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// Largest supported `p^r` (exclusive).
pub const MODULUS_BOUND: u64 = 1 << 31;

/// A prime-power modulus `q = p^r`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus {
    p: u64,
    r: u32,
    q: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Modulus {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::ZeroExponent);
        }
        let mut q: u64 = 1;
        for _ in 0..r {
            q = q
                .checked_mul(p)
                .filter(|&q| q < MODULUS_BOUND)
                .ok_or(Error::ModulusTooLarge { p, r })?;
        }
        Ok(Modulus { p, r, q })
    }

    /// The prime field `Z_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `p^r`, the number of residues.
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_field(&self) -> bool {
        self.r == 1
    }

    /// Order of the unit group, `p^{r-1}(p-1)`.
    pub fn unit_count(&self) -> u64 {
        self.q / self.p * (self.p - 1)
    }

    pub fn residue(&self, value: u64) -> Residue {
        Residue {
            value: value % self.q,
            modulus: *self,
        }
    }

    /// Reduces a signed integer to its canonical representative.
    pub fn residue_i64(&self, value: i64) -> Residue {
        Residue {
            value: value.rem_euclid(self.q as i64) as u64,
            modulus: *self,
        }
    }

    pub fn zero(&self) -> Residue {
        self.residue(0)
    }

    pub fn one(&self) -> Residue {
        self.residue(1)
    }

    /// `p^k` as a residue (zero once `k >= r`).
    pub fn p_power(&self, k: u32) -> Residue {
        self.residue(self.p).pow(k as u64)
    }

    /// All residues `0, 1, ..., q-1`.
    pub fn elements(&self) -> impl Iterator<Item = Residue> + '_ {
        (0..self.q).map(move |v| self.residue(v))
    }

    /// All units in increasing order.
    pub fn units(&self) -> impl Iterator<Item = Residue> + '_ {
        self.elements().filter(|a| a.is_unit())
    }

    /// The digit set `{0, 1, ..., p-1}` embedded in the ring.
    pub fn digits(&self) -> impl Iterator<Item = Residue> + '_ {
        (0..self.p).map(move |v| self.residue(v))
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 1 {
            write!(f, "Z_{}", self.p)
        } else {
            write!(f, "Z_{}^{}", self.p, self.r)
        }
    }
}

/// An element of the digit set `A_p = {0, ..., p-1}`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digit(pub u64);

/// An element of `Z_{p^r}` in canonical form.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    /// p-adic valuation of the representative; `r` for zero.
    pub fn valuation(&self) -> u32 {
        if self.value == 0 {
            return self.modulus.r;
        }
        let mut v = 0;
        let mut x = self.value;
        while x.is_multiple_of(self.modulus.p) {
            x /= self.modulus.p;
            v += 1;
        }
        v
    }

    /// The additive subgroup generated by `self` has `p^order` elements.
    pub fn order(&self) -> u32 {
        self.modulus.r - self.valuation()
    }

    pub fn is_unit(&self) -> bool {
        !self.value.is_multiple_of(self.modulus.p)
    }

    pub fn pow(self, mut exp: u64) -> Residue {
        let q = self.modulus.q;
        let mut base = self.value;
        let mut acc = 1 % q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % q;
            }
            base = base * base % q;
            exp >>= 1;
        }
        Residue {
            value: acc,
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse via the unit group order.
    pub fn inverse(&self) -> Result<Residue> {
        if !self.is_unit() {
            return Err(Error::NotInvertible {
                value: self.value,
                modulus: self.modulus.q,
            });
        }
        Ok(self.pow(self.modulus.unit_count() - 1))
    }

    /// Digits `(t_0, ..., t_{r-1})` with `self = t_0 + p t_1 + ... + p^{r-1} t_{r-1}`.
    pub fn p_adic_expansion(&self) -> Vec<Digit> {
        let p = self.modulus.p;
        let mut x = self.value;
        (0..self.modulus.r)
            .map(|_| {
                let d = x % p;
                x /= p;
                Digit(d)
            })
            .collect()
    }

    /// Writes a nonzero `a` as `theta * p^(level - 1)` with `theta` a unit and
    /// `level` in `1..=r`. `theta` is the representative divided by the largest
    /// power of `p` dividing it.
    pub fn unit_decompose(&self) -> Result<(Residue, u32)> {
        if self.is_zero() {
            return Err(Error::ZeroDecomposition);
        }
        let v = self.valuation();
        let theta = self.value / self.modulus.p.pow(v);
        Ok((self.modulus.residue(theta), v + 1))
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let q = self.modulus.q;
        let s = self.value + rhs.value;
        Residue {
            value: if s >= q { s - q } else { s },
            modulus: self.modulus,
        }
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self + (-rhs)
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue {
            value: if self.value == 0 {
                0
            } else {
                self.modulus.q - self.value
            },
            modulus: self.modulus,
        }
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Residue {
            value: self.value * rhs.value % self.modulus.q,
            modulus: self.modulus,
        }
    }
}

impl AddAssign for Residue {
    fn add_assign(&mut self, rhs: Residue) {
        *self = *self + rhs;
    }
}

impl SubAssign for Residue {
    fn sub_assign(&mut self, rhs: Residue) {
        *self = *self - rhs;
    }
}

impl MulAssign for Residue {
    fn mul_assign(&mut self, rhs: Residue) {
        *self = *self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u64, r: u32) -> Modulus {
        Modulus::new(p, r).unwrap()
    }

    #[test]
    fn construction_rejects_bad_moduli() {
        assert_eq!(Modulus::new(9, 1), Err(Error::NotPrime(9)));
        assert_eq!(Modulus::new(1, 1), Err(Error::NotPrime(1)));
        assert_eq!(Modulus::new(3, 0), Err(Error::ZeroExponent));
        assert!(matches!(
            Modulus::new(2, 31),
            Err(Error::ModulusTooLarge { .. })
        ));
        assert_eq!(Modulus::new(2, 30).unwrap().q(), 1 << 30);
        assert_eq!(z(3, 2).q(), 9);
    }

    #[test]
    fn orders() {
        let m = z(3, 2);
        assert_eq!(m.residue(1).order(), 2);
        assert_eq!(m.residue(3).order(), 1);
        assert_eq!(m.residue(0).order(), 0);
        assert_eq!(z(2, 3).residue(6).order(), 2);
    }

    #[test]
    fn order_matches_subgroup_size() {
        for m in [z(2, 2), z(2, 3), z(3, 2), z(5, 2), z(3, 3)] {
            for a in m.elements() {
                let mut seen = std::collections::BTreeSet::new();
                let mut x = m.zero();
                loop {
                    if !seen.insert(x.value()) {
                        break;
                    }
                    x += a;
                }
                assert_eq!(seen.len() as u64, m.p().pow(a.order()), "{m} {a}");
            }
        }
    }

    #[test]
    fn p_adic_examples() {
        let digits = |m: Modulus, v| -> Vec<u64> {
            m.residue(v).p_adic_expansion().iter().map(|d| d.0).collect()
        };
        assert_eq!(digits(z(3, 2), 7), vec![1, 2]);
        assert_eq!(digits(z(3, 2), 0), vec![0, 0]);
        assert_eq!(digits(z(2, 3), 5), vec![1, 0, 1]);
    }

    #[test]
    fn p_adic_roundtrip_exhaustive() {
        for m in [z(2, 2), z(2, 3), z(3, 2), z(5, 2), z(3, 3), z(7, 1)] {
            for a in m.elements() {
                let rebuilt = a
                    .p_adic_expansion()
                    .iter()
                    .rev()
                    .fold(0, |acc, d| acc * m.p() + d.0);
                assert_eq!(rebuilt, a.value());
                assert!(a.p_adic_expansion().iter().all(|d| d.0 < m.p()));
            }
        }
    }

    #[test]
    fn inverses() {
        let m = z(3, 2);
        assert_eq!(m.residue(2).inverse().unwrap().value(), 5);
        assert_eq!(m.residue(4).inverse().unwrap().value(), 7);
        assert!(!m.residue(3).is_unit());
        assert_eq!(
            m.residue(3).inverse(),
            Err(Error::NotInvertible { value: 3, modulus: 9 })
        );
    }

    #[test]
    fn inverse_exhaustive_small() {
        for p in [2u64, 3, 5, 7, 11] {
            for r in 1..=7 {
                let Ok(m) = Modulus::new(p, r) else { continue };
                if m.q() > 128 {
                    continue;
                }
                for a in m.elements() {
                    assert_eq!(a.is_unit(), a.order() == m.r());
                    if a.is_unit() {
                        assert!((a.inverse().unwrap() * a).is_one());
                    }
                }
            }
        }
    }

    #[test]
    fn unit_decompose_examples() {
        let m = z(3, 2);
        let dec = |v| {
            let (t, l) = m.residue(v).unit_decompose().unwrap();
            (t.value(), l)
        };
        assert_eq!(dec(6), (2, 2));
        assert_eq!(dec(3), (1, 2));
        assert_eq!(dec(1), (1, 1));
        assert_eq!(m.zero().unit_decompose(), Err(Error::ZeroDecomposition));
    }

    #[test]
    fn unit_decompose_reconstructs_exhaustive() {
        for m in [z(2, 2), z(2, 3), z(3, 2), z(5, 2), z(3, 3)] {
            for a in m.elements().filter(|a| !a.is_zero()) {
                let (theta, level) = a.unit_decompose().unwrap();
                assert!(theta.is_unit());
                assert!((1..=m.r()).contains(&level));
                assert_eq!(level, m.r() + 1 - a.order());
                assert_eq!(theta * m.p_power(level - 1), a);
            }
        }
    }

    #[test]
    fn field_case_orders() {
        for p in [2, 3, 5, 7] {
            let m = z(p, 1);
            for a in m.elements() {
                assert!(a.order() <= 1);
                assert_eq!(a.is_unit(), !a.is_zero());
            }
        }
    }
}
