//! Exact separating-degree computations for modular representations of
//! finite groups.
//!
//! The pipeline: describe a module ([`ModuleDescriptor`]), build its
//! matrices over a finite field ([`reps::build`]), compute graded
//! invariants and separating degrees ([`InvariantEngine`]), and compare
//! against closed-form predictions ([`oracle::verify`]).

pub mod gf;
pub mod invariants;
pub mod linalg;
pub mod mpoly;
pub mod oracle;
pub mod reps;

pub use gf::{Code, FieldSpec, FqElement, GfError};
pub use invariants::{GradedInvariantBasis, InvariantEngine, InvariantsError, SeparationResult, SupremumResult};
pub use linalg::{LinalgError, MatrixFq};
pub use mpoly::{Monomial, MpolyError, Polynomial};
pub use oracle::{OracleError, Prediction, PredictionKind, Target, Verdict, VerificationReport, VerifyOptions};
pub use reps::{GroupClosure, MatrixGroupRep, ModuleDescriptor, RepError};

/// Any error the library can report.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Mpoly(#[from] MpolyError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl Error {
    /// Whether the error is a resource limit (group, point or degree cap)
    /// rather than malformed input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::Rep(RepError::CapExceeded(_))
                | Error::Invariants(InvariantsError::PointBudgetExceeded { .. })
                | Error::Invariants(InvariantsError::NotSeparated(_))
                | Error::Invariants(InvariantsError::Rep(RepError::CapExceeded(_)))
                | Error::Oracle(OracleError::Engine(InvariantsError::PointBudgetExceeded { .. }))
                | Error::Oracle(OracleError::Engine(InvariantsError::NotSeparated(_)))
                | Error::Oracle(OracleError::Engine(InvariantsError::Rep(RepError::CapExceeded(_))))
                | Error::Oracle(OracleError::Rep(RepError::CapExceeded(_)))
        )
    }
}
