//! Iterative register synthesis.
//!
//! Each step consumes one sequence element, measures the discrepancy of every
//! row of the current basis matrix and multiplies the matrix on the left by a
//! polynomial update matrix. Three update rules are provided:
//!
//! * [`Mode::GrobnerField`]: two rows over `Z_p`, pivot = row of minimal
//!   leading monomial among rows with nonzero discrepancy. The rows form a
//!   minimal Gröbner basis of the prefix module after every step.
//! * [`Mode::GrobnerRing`]: `2r` rows over `Z_{p^r}`, rows grouped by the
//!   p-adic level of their discrepancy, one pivot per level. The rows form a
//!   p-basis with the p-PLM property after every step.
//! * [`Mode::BmCompatField`]: the field update with the Berlekamp–Massey pivot
//!   (largest index among rows of minimal degree). Kept for comparison; its
//!   rows need not form a Gröbner basis.

use std::fmt;

use crate::error::{Error, Result};
use crate::module::discrepancy;
use crate::poly::Poly;
use crate::ring::{Modulus, Residue};
use crate::vector::{cmp_lm, MonomialOrder, PolyRowVec};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    GrobnerField,
    GrobnerRing,
    BmCompatField,
}

impl Mode {
    /// Field mode over `Z_p`, ring mode otherwise.
    pub fn auto(modulus: Modulus) -> Mode {
        if modulus.is_field() {
            Mode::GrobnerField
        } else {
            Mode::GrobnerRing
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::GrobnerField => "field",
            Mode::GrobnerRing => "ring",
            Mode::BmCompatField => "bm-compat",
        }
    }

    pub fn is_field_mode(self) -> bool {
        !matches!(self, Mode::GrobnerRing)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A square matrix of polynomials acting on the rows of the basis matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpdateMatrix {
    entries: Vec<Vec<Poly>>,
}

impl UpdateMatrix {
    fn identity_on(modulus: Modulus, n: usize, keep: &[usize]) -> Self {
        let mut entries = vec![vec![Poly::zero(modulus); n]; n];
        for &i in keep {
            entries[i][i] = Poly::one(modulus);
        }
        UpdateMatrix { entries }
    }

    fn add_to(&mut self, row: usize, col: usize, value: &Poly) {
        self.entries[row][col] = &self.entries[row][col] + value;
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// The product `E * R` for a matrix `R` given by its rows.
    pub fn apply(&self, rows: &[PolyRowVec]) -> Vec<PolyRowVec> {
        let modulus = rows[0].modulus();
        self.entries
            .iter()
            .map(|e_row| {
                e_row
                    .iter()
                    .zip(rows)
                    .filter(|(e, _)| !e.is_zero())
                    .fold(PolyRowVec::zero(modulus), |acc, (e, v)| {
                        &acc + &v.mul_poly(e)
                    })
            })
            .collect()
    }
}

/// Diagnostics of a single step.
///
/// Row indices are 0-based. `partitions[0]` holds the rows with zero
/// discrepancy and `partitions[j]` (for `j >= 1`) the rows whose discrepancy
/// is a unit times `p^{j-1}`; in the field modes `partitions[1]` is simply the
/// set of rows with nonzero discrepancy. `pivots[j-1]` is the pivot of
/// `partitions[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepTrace {
    pub k: usize,
    pub delta: Vec<Residue>,
    pub partitions: Vec<Vec<usize>>,
    pub pivots: Vec<usize>,
    pub update: UpdateMatrix,
}

/// The basis matrix after `k` steps together with the prefix consumed so far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthState {
    k: usize,
    rows: Vec<PolyRowVec>,
    modulus: Modulus,
    mode: Mode,
    prefix: Vec<Residue>,
}

impl SynthState {
    /// Initial matrix: `[x,0],[0,1]` in the field modes; in ring mode the
    /// `2r` rows `[p^i x, 0]` followed by `[0, p^i]` for `i = 0..r`.
    pub fn new(modulus: Modulus, mode: Mode) -> Result<Self> {
        if mode.is_field_mode() && !modulus.is_field() {
            return Err(Error::ModeMismatch {
                mode: mode.name(),
                r: modulus.r(),
            });
        }
        let levels = if mode.is_field_mode() { 1 } else { modulus.r() };
        let mut rows = Vec::with_capacity(2 * levels as usize);
        for i in 0..levels {
            rows.push(PolyRowVec::new(
                Poly::monomial(modulus.p_power(i), 1),
                Poly::zero(modulus),
            ));
        }
        for i in 0..levels {
            rows.push(PolyRowVec::new(
                Poly::zero(modulus),
                Poly::constant(modulus.p_power(i)),
            ));
        }
        Ok(SynthState {
            k: 0,
            rows,
            modulus,
            mode,
            prefix: Vec::new(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> &[PolyRowVec] {
        &self.rows
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// `S_1, ..., S_k`.
    pub fn prefix(&self) -> &[Residue] {
        &self.prefix
    }

    /// Number of p-adic levels handled by the update (`r` in ring mode, 1 otherwise).
    pub fn levels(&self) -> usize {
        self.rows.len() / 2
    }

    /// Consumes `S_{k+1}` and returns the diagnostics of the step.
    pub fn step(&mut self, s: Residue) -> Result<StepTrace> {
        debug_assert_eq!(s.modulus(), self.modulus);
        self.prefix.push(s);
        self.k += 1;
        let k = self.k;
        let delta: Vec<Residue> = self
            .rows
            .iter()
            .map(|row| discrepancy(row, &self.prefix, k))
            .collect();
        let (new_rows, trace) = match self.mode {
            Mode::GrobnerField | Mode::BmCompatField => self.field_update(delta)?,
            Mode::GrobnerRing => self.ring_update(delta)?,
        };
        debug_assert_eq!(trace.update.apply(&self.rows), new_rows);
        self.rows = new_rows;
        Ok(trace)
    }

    fn field_update(&self, delta: Vec<Residue>) -> Result<(Vec<PolyRowVec>, StepTrace)> {
        let m = self.modulus;
        if !delta[0].is_one() {
            return Err(Error::InternalInvariant(format!(
                "step {}: first discrepancy is {}, expected 1",
                self.k, delta[0]
            )));
        }
        let nonzero: Vec<usize> = (0..2).filter(|&i| !delta[i].is_zero()).collect();
        let zero: Vec<usize> = (0..2).filter(|&i| delta[i].is_zero()).collect();
        let pivot = match self.mode {
            Mode::GrobnerField => {
                let best = *nonzero
                    .iter()
                    .min_by(|&&a, &&b| cmp_lm(&self.rows[a], &self.rows[b], MonomialOrder::Top))
                    .expect("row 1 always has nonzero discrepancy");
                let ties = nonzero
                    .iter()
                    .filter(|&&i| {
                        cmp_lm(&self.rows[i], &self.rows[best], MonomialOrder::Top).is_eq()
                    })
                    .count();
                if ties > 1 {
                    return Err(Error::InternalInvariant(format!(
                        "step {}: rows share a leading monomial",
                        self.k
                    )));
                }
                best
            }
            _ => {
                let min_deg = nonzero
                    .iter()
                    .map(|&i| self.rows[i].top_degree())
                    .min()
                    .expect("row 1 always has nonzero discrepancy");
                *nonzero
                    .iter()
                    .rev()
                    .find(|&&i| self.rows[i].top_degree() == min_deg)
                    .expect("minimum is attained")
            }
        };
        let inv = delta[pivot].inverse()?;
        let g = &self.rows;
        let row0 = g[pivot].scale(inv).shift(1);
        let row1 = &g[1].scale(delta[0]) - &g[0].scale(delta[1]);

        let mut update = UpdateMatrix::identity_on(m, 2, &[]);
        update.add_to(0, pivot, &Poly::monomial(inv, 1));
        update.add_to(1, 0, &Poly::constant(-delta[1]));
        update.add_to(1, 1, &Poly::constant(delta[0]));

        let trace = StepTrace {
            k: self.k,
            delta,
            partitions: vec![zero, nonzero],
            pivots: vec![pivot],
            update,
        };
        Ok((vec![row0, row1], trace))
    }

    fn ring_update(&self, delta: Vec<Residue>) -> Result<(Vec<PolyRowVec>, StepTrace)> {
        let m = self.modulus;
        let r = self.levels();
        let n = 2 * r;
        let mut theta = vec![m.zero(); n];
        let mut partitions: Vec<Vec<usize>> = vec![Vec::new(); r + 1];
        for (i, d) in delta.iter().enumerate() {
            if d.is_zero() {
                partitions[0].push(i);
            } else {
                let (t, level) = d.unit_decompose()?;
                theta[i] = t;
                partitions[level as usize].push(i);
            }
        }
        for (j, d) in delta.iter().enumerate().take(r) {
            if *d != m.p_power(j as u32) {
                return Err(Error::InternalInvariant(format!(
                    "step {}: discrepancy of row {} is {}, expected p^{}",
                    self.k,
                    j + 1,
                    d,
                    j
                )));
            }
        }

        let mut pivots = Vec::with_capacity(r);
        for part in &partitions[1..] {
            let best = part
                .iter()
                .copied()
                .reduce(|best, i| {
                    if cmp_lm(&self.rows[i], &self.rows[best], MonomialOrder::Top).is_le() {
                        i
                    } else {
                        best
                    }
                })
                .ok_or_else(|| {
                    Error::InternalInvariant(format!("step {}: empty partition", self.k))
                })?;
            pivots.push(best);
        }

        let v = &self.rows;
        let mut new_rows = v.clone();
        let mut update = UpdateMatrix::identity_on(m, n, &partitions[0]);
        for (j, &piv) in pivots.iter().enumerate() {
            let inv = theta[piv].inverse()?;
            new_rows[j] = v[piv].scale(inv).shift(1);
            update.add_to(j, piv, &Poly::monomial(inv, 1));
            if piv != j {
                new_rows[piv] = &v[piv].scale(theta[j]) - &v[j].scale(theta[piv]);
            }
            update.add_to(piv, j, &Poly::constant(-theta[piv]));
            update.add_to(piv, piv, &Poly::constant(theta[j]));
            for &i in &partitions[j + 1] {
                if i == j || i == piv {
                    continue;
                }
                new_rows[i] = &v[i].scale(theta[piv]) - &v[piv].scale(theta[i]);
                update.add_to(i, piv, &Poly::constant(-theta[i]));
                update.add_to(i, i, &Poly::constant(theta[piv]));
            }
        }

        let trace = StepTrace {
            k: self.k,
            delta,
            partitions,
            pivots,
            update,
        };
        Ok((new_rows, trace))
    }
}

/// Runs the synthesis over the whole sequence, keeping every step trace.
pub fn synthesize(
    sequence: &[Residue],
    modulus: Modulus,
    mode: Mode,
) -> Result<(SynthState, Vec<StepTrace>)> {
    let mut state = SynthState::new(modulus, mode)?;
    let traces = sequence
        .iter()
        .map(|&s| state.step(s))
        .collect::<Result<Vec<_>>>()?;
    Ok((state, traces))
}

/// Like [`synthesize`] but drops the traces as it goes.
pub fn synthesize_final(sequence: &[Residue], modulus: Modulus, mode: Mode) -> Result<SynthState> {
    let mut state = SynthState::new(modulus, mode)?;
    for &s in sequence {
        state.step(s)?;
    }
    Ok(state)
}
