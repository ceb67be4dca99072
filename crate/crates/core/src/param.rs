//! Reading complexities, feedback polynomials and their parametrizations off
//! a finished synthesis.
//!
//! Let `L` be the degree of the forward pivot row (row 2 in the field modes,
//! row `r+1` in ring mode). Every shortest feedback polynomial is the second
//! component of
//!
//! ```text
//! a * pivot + sum_j a_j(x) * row_j,   a a nonzero digit, deg a_j <= L - deg row_j
//! ```
//!
//! and every minimal characteristic polynomial of the reversed sequence is
//! obtained the same way from the reciprocal pivot, the unique row with
//! leading position 2 and a unit leading coefficient.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{Modulus, Residue};
use crate::synth::{synthesize, Mode, SynthState};
use crate::vector::{MonomialOrder, PolyRowVec, Position};

/// Default limit on the number of enumerated parameter tuples.
pub const DEFAULT_CAP: u128 = 1_000_000;

/// Range of the coefficients attached to a free term.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientDomain {
    /// All of `Z_p` (field modes).
    FullField,
    /// The digits `0..p` (ring mode).
    Digits,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeTerm {
    /// 0-based row index in the final matrix.
    pub row: usize,
    pub poly: Poly,
    /// Maximal degree of the coefficient polynomial; `-1` means the term is absent.
    pub degree_bound: i64,
    pub domain: CoefficientDomain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamDescriptor {
    pub modulus: Modulus,
    pub pivot_row: usize,
    pub pivot_poly: Poly,
    pub free_terms: Vec<FreeTerm>,
    /// Domain of the pivot multiplier, with zero excluded.
    pub scalar_domain: CoefficientDomain,
}

impl ParamDescriptor {
    fn from_rows(
        modulus: Modulus,
        rows: &[PolyRowVec],
        pivot_row: usize,
        domain: CoefficientDomain,
    ) -> Result<Self> {
        let target = row_degree(&rows[pivot_row])? as i64;
        let free_terms = rows
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != pivot_row)
            .map(|(j, row)| {
                Ok(FreeTerm {
                    row: j,
                    poly: row.g2.clone(),
                    degree_bound: (target - row_degree(row)? as i64).max(-1),
                    domain,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ParamDescriptor {
            modulus,
            pivot_row,
            pivot_poly: rows[pivot_row].g2.clone(),
            free_terms,
            scalar_domain: domain,
        })
    }

    /// Number of free coefficients across all terms.
    pub fn free_coefficients(&self) -> u32 {
        self.free_terms
            .iter()
            .map(|t| (t.degree_bound + 1).max(0) as u32)
            .sum()
    }
}

fn row_degree(row: &PolyRowVec) -> Result<usize> {
    row.top_degree()
        .ok_or_else(|| Error::InternalInvariant("zero row in final matrix".into()))
}

/// Number of admissible parameter tuples of a descriptor (saturating).
pub fn count_parametrization(desc: &ParamDescriptor) -> u128 {
    let p = desc.modulus.p() as u128;
    (0..desc.free_coefficients()).fold(p - 1, |acc, _| acc.saturating_mul(p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisReport {
    pub modulus: Modulus,
    pub mode: Mode,
    pub complexity: usize,
    /// Second component of the forward pivot row, not normalized.
    pub feedback_poly: Poly,
    pub param_forward: ParamDescriptor,
    pub reciprocal_complexity: usize,
    /// Second component of the reciprocal pivot row, not normalized.
    pub min_char_poly: Poly,
    pub param_reciprocal: ParamDescriptor,
    /// 0-based index of the reciprocal pivot row.
    pub reciprocal_pivot: usize,
    /// Whether the forward and reciprocal pivots coincide, in which case the
    /// pivot feedback polynomial is bidirectional.
    pub bidirectional_pivot: bool,
    pub count_forward: u128,
    pub count_reciprocal: u128,
}

/// Degree of the forward pivot row of the current matrix, i.e. the complexity
/// of the prefix consumed so far.
pub fn current_complexity(state: &SynthState) -> usize {
    state.rows()[state.levels()]
        .top_degree()
        .expect("forward pivot row is never zero")
}

pub fn analyze(state: &SynthState) -> Result<SynthesisReport> {
    let domain = match state.mode() {
        Mode::GrobnerField => CoefficientDomain::FullField,
        Mode::GrobnerRing => CoefficientDomain::Digits,
        Mode::BmCompatField => return Err(Error::UnsupportedMode("bm-compat")),
    };
    let modulus = state.modulus();
    let rows = state.rows();
    let forward = state.levels();
    let r = modulus.r();

    let mut reciprocal = None;
    for (j, row) in rows.iter().enumerate() {
        let lead = row.leading_data(MonomialOrder::Top)?;
        if lead.lpos == Position::Second && lead.ord == r {
            if reciprocal.is_some() {
                return Err(Error::InternalInvariant(
                    "two rows with leading position 2 and unit leading coefficient".into(),
                ));
            }
            reciprocal = Some(j);
        }
    }
    let reciprocal = reciprocal.ok_or_else(|| {
        Error::InternalInvariant("no row with leading position 2 and unit leading coefficient".into())
    })?;

    let param_forward = ParamDescriptor::from_rows(modulus, rows, forward, domain)?;
    let param_reciprocal = ParamDescriptor::from_rows(modulus, rows, reciprocal, domain)?;
    Ok(SynthesisReport {
        modulus,
        mode: state.mode(),
        complexity: row_degree(&rows[forward])?,
        feedback_poly: rows[forward].g2.clone(),
        reciprocal_complexity: row_degree(&rows[reciprocal])?,
        min_char_poly: rows[reciprocal].g2.clone(),
        count_forward: count_parametrization(&param_forward),
        count_reciprocal: count_parametrization(&param_reciprocal),
        param_forward,
        param_reciprocal,
        reciprocal_pivot: reciprocal,
        bidirectional_pivot: reciprocal == forward,
    })
}

/// Result of expanding a parametrization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    /// Distinct polynomials in canonical order.
    pub polys: Vec<Poly>,
    /// Parameter tuples visited.
    pub visited: u128,
    /// Parameter tuples admitted by the descriptor.
    pub total: u128,
    /// Set when `total` exceeded the cap and only the first `cap` tuples were visited.
    pub truncated: bool,
}

/// Expands a descriptor in lexicographic order of the parameter tuple
/// `(a, coefficients of a_1, coefficients of a_2, ...)`, applies `normalize`
/// and deduplicates.
pub fn enumerate_descriptor(
    desc: &ParamDescriptor,
    normalize: impl Fn(&Poly) -> Option<Poly>,
    cap: u128,
) -> Result<Enumeration> {
    let m = desc.modulus;
    let p = m.p();
    let q = m.q();
    let total = count_parametrization(desc);
    let budget = total.min(cap);

    // one entry per free coefficient: x^e * poly_j
    let shifted: Vec<Poly> = desc
        .free_terms
        .iter()
        .flat_map(|t| (0..=t.degree_bound).map(move |e| t.poly.shift(e as usize)))
        .collect();
    let width = shifted
        .iter()
        .chain(std::iter::once(&desc.pivot_poly))
        .map(|f| f.coeffs().len())
        .max()
        .unwrap_or(0);

    let mut digits = vec![0u64; shifted.len()];
    let mut base = vec![0u64; width];
    let mut set = BTreeSet::new();
    let mut visited: u128 = 0;
    'outer: for a in 1..p {
        digits.iter_mut().for_each(|d| *d = 0);
        for (slot, &c) in base.iter_mut().zip(desc.pivot_poly.coeffs()) {
            *slot = a * c % q;
        }
        base[desc.pivot_poly.coeffs().len()..].iter_mut().for_each(|s| *s = 0);
        loop {
            if visited == budget {
                break 'outer;
            }
            visited += 1;
            let f = Poly::new(m, base.iter().copied());
            let f = normalize(&f).ok_or_else(|| {
                Error::InternalInvariant(format!("cannot normalize enumerated polynomial {f}"))
            })?;
            set.insert(f);

            // odometer step, last coefficient fastest
            let mut idx = shifted.len();
            loop {
                if idx == 0 {
                    continue 'outer;
                }
                idx -= 1;
                let g = shifted[idx].coeffs();
                if digits[idx] + 1 < p {
                    digits[idx] += 1;
                    for (slot, &c) in base.iter_mut().zip(g) {
                        *slot = (*slot + c) % q;
                    }
                    break;
                }
                // wrap p-1 -> 0
                let back = (p - 1) * (q - 1) % q;
                for (slot, &c) in base.iter_mut().zip(g) {
                    *slot = (*slot + back * c) % q;
                }
                digits[idx] = 0;
            }
        }
    }
    Ok(Enumeration {
        polys: set.into_iter().collect(),
        visited,
        total,
        truncated: visited < total,
    })
}

/// All shortest feedback polynomials; `normalized` rescales to constant term 1.
pub fn enumerate_shortest_feedback(
    report: &SynthesisReport,
    normalized: bool,
    cap: u128,
) -> Result<Enumeration> {
    enumerate_descriptor(
        &report.param_forward,
        |f| {
            if !f.constant_term().is_unit() {
                None
            } else if normalized {
                f.normalized_constant()
            } else {
                Some(f.clone())
            }
        },
        cap,
    )
}

/// All minimal characteristic polynomials of the reversed sequence; `monic`
/// rescales to leading coefficient 1.
pub fn enumerate_min_char_reciprocal(
    report: &SynthesisReport,
    monic: bool,
    cap: u128,
) -> Result<Enumeration> {
    let degree = report.reciprocal_complexity;
    enumerate_descriptor(
        &report.param_reciprocal,
        |f| {
            let lc = f.leading_coeff()?;
            if f.degree() != Some(degree) || !lc.is_unit() {
                None
            } else if monic {
                f.monic()
            } else {
                Some(f.clone())
            }
        },
        cap,
    )
}

/// Keeps the polynomials whose constant term is a unit, i.e. the
/// characteristic polynomials whose reversal is a feedback polynomial of the
/// same length.
pub fn bidirectional_filter(polys: &[Poly]) -> Vec<Poly> {
    polys
        .iter()
        .filter(|f| f.constant_term().is_unit())
        .cloned()
        .collect()
}

/// Bidirectional polynomials that are normalized at both ends: constant term
/// exactly 1. Applied to a monic family this yields the polynomials that are
/// monic and have value 1 at zero.
pub fn bidirectional_normalized(polys: &[Poly]) -> Vec<Poly> {
    polys
        .iter()
        .filter(|f| f.constant_term().is_one())
        .cloned()
        .collect()
}

/// Complexity of every prefix `S_1..S_k`, `k = 1..N`.
pub fn complexity_profile(sequence: &[Residue], modulus: Modulus, mode: Mode) -> Result<Vec<usize>> {
    let mut state = SynthState::new(modulus, mode)?;
    sequence
        .iter()
        .map(|&s| {
            state.step(s)?;
            Ok(current_complexity(&state))
        })
        .collect()
}

/// Synthesizes and analyzes in one call.
pub fn analyze_sequence(sequence: &[Residue], modulus: Modulus, mode: Mode) -> Result<SynthesisReport> {
    let (state, _) = synthesize(sequence, modulus, mode)?;
    analyze(&state)
}
