//! Entanglement classification of three- and four-qubit pure states under
//! SLOCC (stochastic local operations and classical communication).
//!
//! Two pure states are SLOCC-equivalent when one maps to the other under an
//! invertible local operation `F¹ ⊗ … ⊗ Fⁿ` with each `Fᵏ` a non-singular
//! 2×2 matrix. For three qubits there are six equivalence classes; for four
//! qubits there are 34 structural classes (18 degenerate, 16 genuine), which
//! collapse to 8 genuine families once qubit permutations are factored out.
//!
//! The decision procedure is inductive. A state is reshaped into the 2×2ⁿ⁻¹
//! coefficient matrix that separates qubit 1 from the rest; the span of that
//! matrix's rows (the right singular subspace, a line or a plane of
//! (n−1)-qubit states) is then analyzed in terms of the classes one level
//! down:
//!
//! * [`tripartite::classify3`] decides the six 3-qubit classes from the
//!   partition ranks and from the spectrum degeneracy of the two 2×2 blocks
//!   of the qubit-1 coefficient matrix.
//! * [`pencil`] locates the special points of the projective line
//!   `v(α,β) = α·w₁ + β·w₂` of 3-qubit states spanned by a 4-qubit state's
//!   singular subspace: parameters where `v` degenerates to a product or to
//!   a `0ₖΨ` state.
//! * [`quad::classify4`] combines a bipartition-rank pre-filter (the 18
//!   degenerate classes) with the pencil structure (the 16 genuine classes).
//!
//! # Quick start
//!
//! ```
//! use slocc::{classify4, StateVector, Tolerances, C64};
//!
//! // |0000> + |1111>, unnormalized amplitudes are fine.
//! let mut amps = vec![C64::new(0.0, 0.0); 16];
//! amps[0] = C64::new(1.0, 0.0);
//! amps[15] = C64::new(1.0, 0.0);
//! let ghz = StateVector::new(4, amps).unwrap();
//!
//! let report = classify4(&ghz, &Tolerances::default()).unwrap();
//! assert_eq!(report.label.to_string(), "GHZ");
//! ```
//!
//! The `examples/` directory walks through every major capability; the
//! `slocc` binary exposes the same operations as a small command-line tool.

pub mod cli;
pub mod labels;
pub mod linalg;
pub mod orbits;
pub mod pencil;
pub mod poly;
pub mod quad;
pub mod report;
pub mod state;
pub mod tripartite;

pub use labels::{DegenerateClass, Family, GenuineFamily, GenuineStructural, StructuralClass};
pub use orbits::{canonical_state, haar_random_state, random_local_op, LocalOperation};
pub use pencil::{build_pencil, Pencil, PencilStructure, RightSubspace};
pub use quad::{classify4, extract_canonical, prefilter_degenerate, QuadReport};
pub use state::{CoefficientMatrix, Permutation, StateVector};
pub use tripartite::{classify3, hyperdeterminant, TriClass, TriReport};

use thiserror::Error;

/// Complex amplitude type used throughout the crate.
pub type C64 = num_complex::Complex64;

/// Errors produced by state construction, classification, and extraction.
#[derive(Debug, Error)]
pub enum Error {
    /// The amplitude vector is numerically zero.
    #[error("state vector is numerically zero")]
    ZeroState,

    /// An amplitude was NaN or infinite.
    #[error("amplitudes must be finite (no NaN or infinity)")]
    NonFiniteAmplitude,

    /// Only 3- and 4-qubit states are supported.
    #[error("qubit count must be 3 or 4, got {0}")]
    UnsupportedQubitCount(usize),

    /// The amplitude list has the wrong length for the declared qubit count.
    #[error("expected {expected} amplitudes for {n_qubits} qubits, found {found}")]
    AmplitudeCount {
        n_qubits: usize,
        expected: usize,
        found: usize,
    },

    /// Partition index outside `1..=n_qubits`.
    #[error("partition qubit {0} out of range 1..={1}")]
    BadPartition(usize, usize),

    /// The supplied index list is not a bijection of `1..=n`.
    #[error("not a permutation of 1..={0}")]
    BadPermutation(usize),

    /// A singular decomposition was requested for the zero matrix.
    #[error("zero matrix has no singular value decomposition")]
    ZeroMatrix,

    /// The pivot block passed to the spectrum-degeneracy test is singular.
    #[error("pivot block is numerically singular")]
    SingularPivot,

    /// The pencil analysis produced an inconsistent picture at the working
    /// tolerances (non-unanimous generic samples, too many special points).
    #[error("pencil analysis did not resolve: {0}")]
    UnresolvedPencil(String),

    /// A local operation was applied to a state of different arity.
    #[error("operation arity {op} does not match state qubit count {state}")]
    ArityMismatch { op: usize, state: usize },

    /// Canonical-parameter extraction was requested for a degenerate label.
    #[error("label is not a genuine class")]
    NotGenuine,

    /// The extracted λ pair collapsed; signals a misclassification upstream.
    #[error("extracted parameters are degenerate (lambda1 ~ lambda2)")]
    DegenerateParams,

    /// Canonical-state construction rejected the supplied parameters.
    #[error("invalid canonical parameters: {0}")]
    BadParams(String),

    /// A class label string did not parse.
    #[error("unknown class label `{0}`")]
    UnknownLabel(String),

    /// A state file failed to parse.
    #[error("state file: {0}")]
    StateFile(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Relative tolerances for every numerical decision the classifier makes.
///
/// All thresholds are relative to an explicit scale (a largest singular
/// value, a matrix norm, a polynomial coefficient bound); SLOCC inputs are
/// only defined up to scale, so no decision may depend on absolute size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Numerical-rank cutoff: a singular value counts as zero below
    /// `rank_rel · σ₁`.
    pub rank_rel: f64,
    /// Spectrum-degeneracy cutoff for the characteristic-polynomial
    /// discriminant, relative to the fourth power of the block scale.
    pub disc_rel: f64,
    /// Chordal distance below which projective roots merge into one point.
    pub root_cluster: f64,
    /// Condition-number bound used by the random local-operation sampler.
    pub cond_max: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank_rel: 1e-9,
            disc_rel: 1e-8,
            root_cluster: 1e-7,
            cond_max: 1e2,
        }
    }
}

impl Tolerances {
    /// Validates that every tolerance is strictly positive and that the
    /// rank cutoff is meaningfully below one.
    pub fn validate(&self) -> Result<()> {
        let ok = self.rank_rel > 0.0
            && self.rank_rel < 1.0
            && self.disc_rel > 0.0
            && self.root_cluster > 0.0
            && self.cond_max > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::BadParams(
                "tolerances must be strictly positive with rank_rel < 1".into(),
            ))
        }
    }
}

/// Classification confidence: `Boundary` marks any decision that fell
/// within a factor of ten of its tolerance threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Confidence {
    Firm,
    Boundary,
}

impl Confidence {
    pub fn is_boundary(self) -> bool {
        matches!(self, Confidence::Boundary)
    }

    pub(crate) fn merge(self, other: Confidence) -> Confidence {
        if self.is_boundary() || other.is_boundary() {
            Confidence::Boundary
        } else {
            Confidence::Firm
        }
    }
}
