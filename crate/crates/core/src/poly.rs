//! Dense univariate polynomials over `Z_{p^r}`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ring::{Modulus, Residue};

/// A polynomial stored densely, `coeffs[i]` being the coefficient of `x^i`.
///
/// The highest stored coefficient is always nonzero; the zero polynomial has
/// no coefficients and degree `None`, which orders below every `Some(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<u64>,
    modulus: Modulus,
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, reducing each one.
    pub fn new(modulus: Modulus, coeffs: impl IntoIterator<Item = u64>) -> Self {
        let mut p = Poly {
            coeffs: coeffs.into_iter().map(|c| c % modulus.q()).collect(),
            modulus,
        };
        p.trim();
        p
    }

    pub fn from_i64(modulus: Modulus, coeffs: &[i64]) -> Self {
        Self::new(
            modulus,
            coeffs.iter().map(|&c| modulus.residue_i64(c).value()),
        )
    }

    pub fn from_residues(modulus: Modulus, coeffs: impl IntoIterator<Item = Residue>) -> Self {
        Self::new(modulus, coeffs.into_iter().map(|c| c.value()))
    }

    pub fn zero(modulus: Modulus) -> Self {
        Poly {
            coeffs: Vec::new(),
            modulus,
        }
    }

    pub fn constant(c: Residue) -> Self {
        Self::monomial(c, 0)
    }

    pub fn one(modulus: Modulus) -> Self {
        Self::constant(modulus.one())
    }

    /// `c * x^exp`.
    pub fn monomial(c: Residue, exp: usize) -> Self {
        let mut coeffs = vec![0; exp + 1];
        coeffs[exp] = c.value();
        Self::new(c.modulus(), coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficient representatives, without trailing zeros.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Residue {
        self.modulus.residue(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn leading_coeff(&self) -> Option<Residue> {
        self.coeffs.last().map(|&c| self.modulus.residue(c))
    }

    pub fn constant_term(&self) -> Residue {
        self.coeff(0)
    }

    pub fn scale(&self, c: Residue) -> Poly {
        Poly::new(
            self.modulus,
            self.coeffs
                .iter()
                .map(|&a| (self.modulus.residue(a) * c).value()),
        )
    }

    /// Multiplies by `x^e`.
    pub fn shift(&self, e: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; e];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            coeffs,
            modulus: self.modulus,
        }
    }

    /// Reduction modulo `x^n`.
    pub fn truncated(&self, n: usize) -> Poly {
        Poly::new(self.modulus, self.coeffs.iter().take(n).copied())
    }

    /// Rescales so that the constant term is 1. `None` unless it is a unit.
    pub fn normalized_constant(&self) -> Option<Poly> {
        let inv = self.constant_term().inverse().ok()?;
        Some(self.scale(inv))
    }

    /// Rescales so that the leading coefficient is 1. `None` unless it is a unit.
    pub fn monic(&self) -> Option<Poly> {
        let inv = self.leading_coeff()?.inverse().ok()?;
        Some(self.scale(inv))
    }

    /// Parses the rendered form, e.g. `7x^2+x+1`. Also accepts `-`, spaces,
    /// `*` between coefficient and `x`, and repeated exponents (summed).
    pub fn parse(input: &str, modulus: Modulus) -> Result<Poly> {
        let err = |reason: &str| Error::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty input"));
        }
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut negative = false;
        let bytes = s.as_bytes();
        for i in 0..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && i > 0) {
                let term = &s[start..i];
                if term.is_empty() {
                    return Err(err("empty term"));
                }
                terms.push((negative, term));
                if i < bytes.len() {
                    negative = bytes[i] == b'-';
                    start = i + 1;
                }
            } else if i == 0 && (bytes[0] == b'-' || bytes[0] == b'+') {
                negative = bytes[0] == b'-';
                start = 1;
            }
        }
        let mut coeffs: Vec<u64> = Vec::new();
        for (negative, term) in terms {
            let (coeff_str, exp) = match term.find('x') {
                None => (term, 0usize),
                Some(pos) => {
                    let rest = &term[pos + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else if let Some(e) = rest.strip_prefix('^') {
                        e.parse::<usize>().map_err(|_| err("bad exponent"))?
                    } else {
                        return Err(err("unexpected text after x"));
                    };
                    let c = term[..pos].strip_suffix('*').unwrap_or(&term[..pos]);
                    (c, exp)
                }
            };
            let c = if coeff_str.is_empty() {
                if exp == 0 {
                    return Err(err("missing coefficient"));
                }
                1
            } else {
                coeff_str
                    .parse::<u64>()
                    .map_err(|_| err("bad coefficient"))?
                    % modulus.q()
            };
            let c = if negative {
                (-modulus.residue(c)).value()
            } else {
                c
            };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, 0);
            }
            coeffs[exp] = (modulus.residue(coeffs[exp]) + modulus.residue(c)).value();
        }
        Ok(Poly::new(modulus, coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (e, 1) => write!(f, "x^{e}")?,
                (e, c) => write!(f, "{c}x^{e}")?,
            }
        }
        Ok(())
    }
}

/// Canonical order: degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
            .then_with(|| self.modulus.cmp(&other.modulus))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let m = self.modulus;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            m,
            (0..n).map(|i| (self.coeff(i) + rhs.coeff(i)).value()),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| (-self.modulus.residue(c)).value())
                .collect(),
            modulus: self.modulus,
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.modulus, rhs.modulus);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.modulus);
        }
        let q = self.modulus.q();
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b % q) % q;
            }
        }
        Poly::new(self.modulus, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
