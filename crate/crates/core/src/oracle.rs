//! Brute-force reference searches straight from the definitions.
//!
//! A feedback polynomial of length `L` is `λ(x) = λ_0 + λ_1 x + ... + λ_L x^L`
//! with `λ_0` a unit and
//!
//! ```text
//! λ_0 S_{L+j} + λ_1 S_{L+j-1} + ... + λ_L S_j = 0,   j = 1..N-L.
//! ```
//!
//! A characteristic polynomial of degree `D` has a unit leading coefficient
//! and satisfies the mirrored recursion. Nothing here depends on the
//! synthesis engine.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{Modulus, Residue};

/// Default bound on the number of candidate polynomials examined.
pub const DEFAULT_LIMIT: u128 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub complexity: usize,
    /// All solutions of minimal length, in canonical order.
    pub solutions: Vec<Poly>,
}

/// Which end of the polynomial carries the unit.
#[derive(Copy, Clone, PartialEq, Eq)]
enum Kind {
    Feedback,
    Characteristic,
}

/// Runs the level-by-level search. `first_only` stops at the first solution.
fn search(
    seq: &[Residue],
    m: Modulus,
    kind: Kind,
    normalize: bool,
    first_only: bool,
    limit: u128,
) -> Result<OracleResult> {
    let n = seq.len();
    let q = m.q();
    let s: Vec<u64> = seq.iter().map(|x| x.value()).collect();
    let units: Vec<u64> = if normalize {
        vec![1]
    } else {
        m.units().map(|u| u.value()).collect()
    };
    let mut spent: u128 = 0;
    for len in 0..=n {
        let level = (units.len() as u128).saturating_mul((q as u128).saturating_pow(len as u32));
        spent = spent.saturating_add(level);
        if spent > limit {
            return Err(Error::Infeasible { cost: spent, limit });
        }
        // c[t] multiplies S_{t+j} in the recursion, t = 0..len
        // feedback: c[t] = λ_{len-t}, unit at c[len]
        // characteristic: c[t] = d_t, unit at c[len]
        let mut free = vec![0u64; len];
        let mut solutions = Vec::new();
        for &u in &units {
            free.iter_mut().for_each(|f| *f = 0);
            loop {
                let holds = (0..n - len).all(|j| {
                    let mut acc = u * s[len + j] % q;
                    for t in 0..len {
                        acc = (acc + free[t] * s[t + j]) % q;
                    }
                    acc == 0
                });
                if holds {
                    let mut c = free.clone();
                    c.push(u);
                    if kind == Kind::Feedback {
                        c.reverse();
                    }
                    solutions.push(Poly::new(m, c));
                    if first_only {
                        return Ok(OracleResult {
                            complexity: len,
                            solutions,
                        });
                    }
                }
                let mut i = 0;
                while i < len {
                    free[i] += 1;
                    if free[i] < q {
                        break;
                    }
                    free[i] = 0;
                    i += 1;
                }
                if i == len {
                    break;
                }
            }
        }
        if !solutions.is_empty() {
            solutions.sort();
            solutions.dedup();
            return Ok(OracleResult {
                complexity: len,
                solutions,
            });
        }
    }
    unreachable!("length N always admits a solution")
}

/// All shortest feedback polynomials, optionally normalized to `λ(0) = 1`.
///
/// Examines at most `phi(q) * (1 + q + ... + q^L)` candidates (only the
/// normalized ones when `normalized`); fails with [`Error::Infeasible`] beyond
/// [`DEFAULT_LIMIT`].
pub fn oracle_shortest_feedback(seq: &[Residue], m: Modulus, normalized: bool) -> Result<OracleResult> {
    oracle_shortest_feedback_with_limit(seq, m, normalized, DEFAULT_LIMIT)
}

pub fn oracle_shortest_feedback_with_limit(
    seq: &[Residue],
    m: Modulus,
    normalized: bool,
    limit: u128,
) -> Result<OracleResult> {
    search(seq, m, Kind::Feedback, normalized, false, limit)
}

/// All minimal-degree characteristic polynomials, optionally monic.
pub fn oracle_min_char(seq: &[Residue], m: Modulus, monic: bool) -> Result<OracleResult> {
    oracle_min_char_with_limit(seq, m, monic, DEFAULT_LIMIT)
}

pub fn oracle_min_char_with_limit(
    seq: &[Residue],
    m: Modulus,
    monic: bool,
    limit: u128,
) -> Result<OracleResult> {
    search(seq, m, Kind::Characteristic, monic, false, limit)
}

/// Linear complexity by search, stopping at the first solution.
pub fn oracle_complexity(seq: &[Residue], m: Modulus) -> Result<usize> {
    Ok(search(seq, m, Kind::Feedback, true, true, DEFAULT_LIMIT)?.complexity)
}

/// Complexity of every prefix `S_1..S_k`, `k = 1..N`.
pub fn oracle_complexity_profile(seq: &[Residue], m: Modulus) -> Result<Vec<usize>> {
    (1..=seq.len()).map(|k| oracle_complexity(&seq[..k], m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(m: Modulus, v: &[u64]) -> Vec<Residue> {
        v.iter().map(|&x| m.residue(x)).collect()
    }

    fn z9() -> Modulus {
        Modulus::new(3, 2).unwrap()
    }

    fn family(m: Modulus, base: &str, dir: &str) -> Vec<Poly> {
        let base = Poly::parse(base, m).unwrap();
        let dir = Poly::parse(dir, m).unwrap();
        let mut out: Vec<Poly> = m.elements().map(|b| &base + &dir.scale(b)).collect();
        out.sort();
        out
    }

    #[test]
    fn z9_feedback() {
        let m = z9();
        let res = oracle_shortest_feedback(&seq(m, &[6, 3, 1, 5, 6]), m, true).unwrap();
        assert_eq!(res.complexity, 3);
        assert_eq!(res.solutions, family(m, "7x^2+x+1", "x^3+3x"));
        let raw = oracle_shortest_feedback(&seq(m, &[6, 3, 1, 5, 6]), m, false).unwrap();
        assert_eq!(raw.solutions.len(), 54);
    }

    #[test]
    fn z5_feedback() {
        let z5 = Modulus::prime(5).unwrap();
        let res = oracle_shortest_feedback(&seq(z5, &[4, 0, 4, 4, 2]), z5, true).unwrap();
        assert_eq!(res.complexity, 3);
        assert!(res.solutions.contains(&Poly::parse("3x^2+4x+1", z5).unwrap()));
    }

    #[test]
    fn zero_sequence() {
        let m = z9();
        let res = oracle_shortest_feedback(&seq(m, &[0, 0, 0]), m, false).unwrap();
        assert_eq!(res.complexity, 0);
        assert_eq!(res.solutions.len(), 6);
        let res = oracle_shortest_feedback(&seq(m, &[0, 0, 0]), m, true).unwrap();
        assert_eq!(res.solutions, vec![Poly::one(m)]);
        assert_eq!(oracle_complexity_profile(&seq(m, &[0, 0, 0]), m).unwrap(), [0, 0, 0]);
    }

    #[test]
    fn min_char_examples() {
        let m = z9();
        let res = oracle_min_char(&seq(m, &[6, 5, 1, 3, 6]), m, true).unwrap();
        assert_eq!(res.complexity, 3);
        assert_eq!(res.solutions, family(m, "x^3+3x", "4x^2+7x+7"));

        let res = oracle_min_char(&seq(m, &[1, 3, 6]), m, true).unwrap();
        assert_eq!(res.complexity, 2);
        assert_eq!(res.solutions, family(m, "x^2+7x", "8x+3"));

        let res = oracle_min_char(&seq(m, &[2]), m, true).unwrap();
        assert_eq!(res.complexity, 1);
        assert_eq!(res.solutions.len(), 9);
    }

    #[test]
    fn profiles() {
        let m = z9();
        let prof = oracle_complexity_profile(&seq(m, &[6, 3, 1, 5, 6]), m).unwrap();
        assert_eq!(prof[2], 3);
        assert_eq!(prof[4], 3);
        let z5 = Modulus::prime(5).unwrap();
        let prof = oracle_complexity_profile(&seq(z5, &[4, 0, 4, 4, 2]), z5).unwrap();
        assert_eq!(*prof.last().unwrap(), 3);
        assert!(prof.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn guard() {
        let m = Modulus::prime(7).unwrap();
        let s: Vec<Residue> = (1..=12).map(|x| m.residue(x * x)).collect();
        assert!(matches!(
            oracle_shortest_feedback_with_limit(&s, m, false, 1000),
            Err(Error::Infeasible { .. })
        ));
    }
}
