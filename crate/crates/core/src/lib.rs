//! Cosheaf homology on finite simplicial complexes.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: exact arithmetic over a prime field and dense matrices.
//! * [`complex`]: simplices, simplicial complexes, incidence symbols.
//! * [`cosheaf`]: costalks and extension maps, plus the standard constructions.
//! * [`chain`]: cellular chain complexes, homology, chain maps, short and long
//!   exact sequences.
//! * [`morse`]: acyclic partial matchings and the Morse chain complex.
//! * [`mv`]: the Mayer-Vietoris sequence and its Morse counterpart.
//!
//! [`fixtures`] and [`random`] provide named example spaces and seeded random
//! generators used by tests and by the command line tool's self-checks.

pub mod chain;
pub mod complex;
pub mod cosheaf;
mod error;
pub mod fixtures;
pub mod linalg;
pub mod morse;
pub mod mv;
pub mod random;

pub use chain::{ChainComplex, ChainMap, HomologyGroup, LesReport, ShortExactSequence};
pub use complex::{incidence, Simplex, SimplicialComplex};
pub use cosheaf::{Cosheaf, CosheafMorphism, SimplicialMap};
pub use error::{Error, Result};
pub use linalg::{Field, Matrix};
pub use morse::{MorseComplex, PartialMatching};
pub use mv::{Decomposition, MorseMvSes, MvSes};
