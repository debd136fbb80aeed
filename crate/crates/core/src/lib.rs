//! Exact graded picture invariants of mixed tensor spaces over Lie color algebras.

pub mod config;
pub mod cyclo;
pub mod error;
pub mod group;
pub mod lambda;
pub mod linalg;
pub mod operator;
pub mod perm;
pub mod picture;
pub mod restitution;
pub mod sym;
pub mod tensor;
pub mod trace;
pub mod verify;

pub use config::Config;
pub use cyclo::{CycloRational, RootOfUnity};
pub use error::{Error, Result};
pub use group::{Bicharacter, FiniteAbelianGroup, GroupElement, Parity};
pub use lambda::{EpsAlgebra, EpsElement, EpsWord, Homogeneity};
pub use operator::GradedOperator;
pub use perm::Permutation;
pub use picture::{Bounds, PictureInvariant, PictureShape};
pub use restitution::{restitute, Certificate, ProbeOutcome, W0Point};
pub use sym::{MixedShape, SymMonomial, SymPolynomial, SymTensor, SymVariable};
pub use tensor::{GradedSpace, GradedTensor, Letter, Variance};
pub use trace::U11Element;
