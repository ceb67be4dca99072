//! Shortest feedback shift register synthesis over `Z_p` and `Z_{p^r}`.
//!
//! The synthesis engine ([`synth`]) processes a sequence `S_1, ..., S_N`
//! element by element and maintains, after each step, a minimal Gröbner basis
//! (field case) or a p-basis with the p-PLM property (ring case) of the
//! module of annihilating vectors. From the final basis, [`param`] reads off
//! the linear complexity, a shortest feedback polynomial, a parametrization of
//! all shortest feedback polynomials, and the same data for the reversed
//! sequence. [`verify`] and [`oracle`] hold independent checks used by the
//! test suites and the `oracle-check` command.

pub mod error;
pub mod module;
pub mod oracle;
pub mod param;
pub mod poly;
pub mod ring;
pub mod synth;
pub mod vector;
pub mod verify;

pub use error::{Error, Result};
pub use module::{discrepancy, membership, ModuleSpec};
pub use param::{
    analyze, bidirectional_filter, complexity_profile, count_parametrization,
    enumerate_min_char_reciprocal, enumerate_shortest_feedback, CoefficientDomain, Enumeration,
    FreeTerm, ParamDescriptor, SynthesisReport, DEFAULT_CAP,
};
pub use poly::Poly;
pub use ring::{Digit, Modulus, Residue};
pub use synth::{synthesize, synthesize_final, Mode, StepTrace, SynthState, UpdateMatrix};
pub use vector::{compare_monomials, LeadingData, Monomial, MonomialOrder, PolyRowVec, Position};
