//! Normed Ω-groups, their completion by Cauchy sequences, and representations.
//!
//! All arithmetic is exact over `ℚ`. A point of a completion is a lazy Cauchy
//! sequence with an explicit modulus of convergence; approximations to any
//! requested precision `2⁻ᵏ` are computed on demand.

pub mod completion;
pub mod error;
pub mod group;
pub mod instances;
pub mod representation;
pub mod scalar;
pub mod sequences;
pub mod syntax;

pub use completion::{completion_uniqueness_suite, diagonal_limit, is_within, Completed, Verdict};
pub use error::{OmegaError, Result};
pub use group::{
    bound_op_difference, full_suite, invert_epsilon_bound, AxiomReport, Ball, BallKind, CheckOutcome, OmegaGroup,
    OperationDescriptor, SampleRng,
};
pub use instances::InstanceSpec;
pub use representation::{complete_representation, CompletedRepresentation, Representation, Transport};
pub use scalar::Scalar;
pub use sequences::{CauchySequence, Modulus};
pub use syntax::ElementSyntax;
