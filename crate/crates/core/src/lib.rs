//! Symbolic engine for 2-local loop-space splittings: group-ring
//! combinatorics of the Dynkin-Specht-Wever elements, free-module tensor
//! algebra over F_2 and the 2-local integers, the homology-level splitting
//! verifiers, and the integer degree calculators built on top of them.

pub mod dsw;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod moore;
pub mod perm;
pub mod scalar;
pub mod splitting;
pub mod tensor;

pub use dsw::{beta, idempotent_pair, image_model, verify_square, ImageModel, ProjectorPair};
pub use error::{Error, Result};
pub use perm::{GroupRingElement, Permutation};
pub use scalar::{LocalRational, Ring};
pub use splitting::{verify_eq2, verify_prop3, TwoCell, VerifierReport};
pub use tensor::{FreeVector, Generator, TensorTerm};
