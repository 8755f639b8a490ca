use alloc::boxed::Box;
use alloc::string::String;

use crate::algebra::Term;

pub type Result<T> = core::result::Result<T, Error>;

/// Pipeline stage labels attached to propagated failures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    CocycleCheck,
    AntisymmetricForm,
    ChiExtract,
    ExtractOmega,
    Fit,
}

impl core::fmt::Display for Stage {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Stage::CocycleCheck => "cocycle-check",
            Stage::AntisymmetricForm => "antisymmetric-form",
            Stage::ChiExtract => "chi-extract",
            Stage::ExtractOmega => "extract-omega",
            Stage::Fit => "fit",
        })
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("variable spaces differ: {left} vs {right}")]
    SpaceMismatch { left: String, right: String },
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("total degree {degree} exceeds the configured bound {limit}")]
    DegreeBound { degree: u32, limit: u32 },
    #[error("generator has a nonzero constant term; factor the scalar exponential out first")]
    ConstantTerm,
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("matrix must be {expected}x{expected}, found {rows}x{cols}")]
    MatrixShape { expected: usize, rows: usize, cols: usize },
    #[error("pole at mu = 0 in term {0}")]
    Pole(Term),
    #[error("exponent is not normalized: b(0,0) = {0}")]
    NonzeroOffset(String),
    #[error("cocycle identity fails; defect term {0}")]
    CocycleViolation(Term),
    #[error("normalization b(0,s) = b(s,0) = 0 fails; offending term {0}")]
    Unnormalized(Term),
    #[error("antisymmetric part is not bilinear; offending term {0}")]
    NotBilinear(Term),
    #[error("input is not symmetric under slot swap; offending term {0}")]
    NotSymmetric(Term),
    #[error("symmetric part is not a coboundary; residual term {0}")]
    NotCoboundary(Term),
    #[error("constants do not annihilate the bracket: A(0,s) has term {0}")]
    ConstantsNotAnnihilated(Term),
    #[error("first-slot derivative at zero is not linear; offending term {0}")]
    Nonlinear(Term),
    #[error("fit residual at degree {degree}; offending term {witness}")]
    FitResidual { degree: u32, witness: Term },
    #[error("empty coefficient series")]
    EmptySeries,
    #[error("operation requires n = 1, found n = {0}")]
    RequiresOneDimension(usize),
    #[error("{stage}: {source}")]
    Stage { stage: Stage, source: Box<Error> },
}

impl Error {
    pub(crate) fn at(self, stage: Stage) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// The innermost error, with stage labels removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }
}
