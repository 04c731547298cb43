use thiserror::Error;

use crate::complex::Simplex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus in [2, 65536)")]
    NotPrime(u32),

    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u32, right: u32 },

    #[error("shape mismatch in {context}: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        context: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("invalid simplex {0:?}: vertex ids must be strictly increasing and nonempty")]
    InvalidSimplex(Vec<u32>),

    #[error("facet index {index} out of range for {simplex}")]
    FacetOutOfRange { simplex: Simplex, index: usize },

    #[error("simplex {0} is not in the complex")]
    NotInComplex(Simplex),

    #[error("{face} is not a face of {simplex}")]
    NotAFace { simplex: Simplex, face: Simplex },

    #[error("not a subcomplex: {0} is missing from the ambient complex")]
    NotSubcomplex(Simplex),

    #[error("cosheaves live on different base complexes")]
    BaseMismatch,

    #[error("missing extension map {coface} -> {facet}")]
    MissingMap { coface: Simplex, facet: Simplex },

    #[error("invalid cosheaf: {0}")]
    InvalidCosheaf(String),

    #[error("not a cosheaf morphism: naturality fails at {coface} -> {facet}")]
    NotNatural { coface: Simplex, facet: Simplex },

    #[error("vertex map is not simplicial: {0}")]
    NotSimplicial(String),

    #[error("invalid partial matching: {0}")]
    InvalidMatching(String),

    #[error("partial matching is not acyclic")]
    CyclicMatching,

    #[error("matched extension map {coface} -> {facet} is not an isomorphism")]
    IncompatibleMatching { facet: Simplex, coface: Simplex },

    #[error("matched pair {facet} < {coface} straddles the subcomplex")]
    StraddlingPair { facet: Simplex, coface: Simplex },

    #[error("not a chain map: {0}")]
    NotAChainMap(String),

    #[error("not a chain complex: boundary[{degree}] * boundary[{}] != 0", degree + 1)]
    NotAComplex { degree: usize },

    #[error("Morse boundary does not square to zero on the block {alpha} -> {omega}")]
    MorseBoundaryNonzero { alpha: Simplex, omega: Simplex },

    #[error("short exact sequence fails in degree {degree}: {reason}")]
    NotExact { degree: usize, reason: String },

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
}
