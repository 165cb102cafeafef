use std::fmt;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Rational function with a zero denominator.
    ZeroDenominator,
    /// Taylor expansion requested at a pole (denominator vanishes at t = 0).
    PoleAtZero,
    /// Operation undefined on the zero rational function.
    ZeroFunction,
    /// Determinant or related operation on a non-square matrix.
    NotSquare,
    /// Zero input where a nonzero rational is required.
    ZeroInput,
    /// Rational string failed to parse.
    InvalidRational(String),
    /// A straightening multiplier was not a single-term (invertible) scalar.
    NonInvertibleCoefficient,
    /// Koszul dual requested for a non-quadratic algebra (some generator degree != 1).
    NotQuadratic,
    /// Zero parameter in a genericity check.
    ZeroParameter,
    /// Genericity check over a mix of formal and numeric parameters.
    MixedParameters,
    /// Candidate map dimensions do not match the generator space.
    DimensionMismatch { expected: usize, got: usize },
    /// Candidate matrix is singular.
    NotInvertible,
    /// Candidate does not preserve the defining relations.
    RelationViolation(String),
    /// Certified automorphism of a p-distinct skew polynomial ring is not
    /// diagonal; signals broken certification, not a user error.
    NotDiagonalizableShape,
    /// p-table entries are not pairwise distinct where the classification requires it.
    NotPDistinct,
    /// Group closure exceeded the configured cap.
    ClosureExceedsCap(usize),
    /// Transposed map fails the dual algebra's relations.
    DualRelationViolation,
    /// Affine candidate does not map F1 = k + V into itself.
    DoesNotPreserveF1,
    /// Trace has no closed form for this descriptor/automorphism combination.
    UnsupportedCombination(String),
    /// Descriptor outside the supported catalogue for this operation.
    UnsupportedAlgebra(String),
    /// Leading exponent of the trace disagrees with the Gorenstein data.
    LeadingExponentMismatch { expected: i64, got: i64 },
    /// Composition tree contains a leaf without a determinant rule.
    UnsupportedLeaf(String),
    /// Trace coefficient is not a plain rational (formal parameters survive).
    NonRationalCoefficient,
    /// Symmetry check on the zero series.
    ZeroSeries,
    /// Linear part of a Weyl candidate does not preserve the bracket form.
    NotBracketMap,
    /// A bracket map with determinant != 1; internal inconsistency.
    DeterminantNotOne,
    /// Quantum Weyl automorphism violates the certified triangular shape;
    /// internal inconsistency under the classification hypotheses.
    ShapeViolation(String),
    /// Classification hypotheses on (q, p) fail.
    HypothesesNotMet(String),
    /// Unknown (type, rank) combination for a root system.
    InvalidTypeRank(String),
    /// Permutation does not preserve the Cartan matrix.
    NotDiagramSymmetry,
    /// Serre-generator assignment does not extend to a bracket-preserving map.
    ExtensionInconsistent,
    /// Element with non-nilpotent adjoint action passed to exp.
    NotNilpotent,
    /// Linear part of a U(L) candidate is not a Lie algebra automorphism.
    NotLieAutomorphism,
    /// Constant part of a U(L) candidate does not vanish on [L, L].
    EpsilonNotVanishingOnDerived,
    /// Operation needs numeric parameters but the descriptor carries formal ones.
    FormalParameterUnsupported,
    /// Two independent computation routes disagree; always a bug, never user input.
    InternalInconsistency(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDenominator => write!(f, "zero denominator"),
            Error::PoleAtZero => write!(f, "series expansion at a pole of the denominator"),
            Error::ZeroFunction => write!(f, "operation undefined on the zero function"),
            Error::NotSquare => write!(f, "matrix is not square"),
            Error::ZeroInput => write!(f, "zero input where a nonzero value is required"),
            Error::InvalidRational(s) => write!(f, "invalid rational: {s}"),
            Error::NonInvertibleCoefficient => {
                write!(f, "straightening multiplier is not invertible")
            }
            Error::NotQuadratic => write!(f, "algebra has a generator of degree != 1"),
            Error::ZeroParameter => write!(f, "zero parameter in genericity check"),
            Error::MixedParameters => {
                write!(f, "genericity check over mixed formal/numeric parameters")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotInvertible => write!(f, "matrix is singular"),
            Error::RelationViolation(s) => write!(f, "defining relation violated: {s}"),
            Error::NotDiagonalizableShape => {
                write!(f, "certified automorphism is not diagonal on a p-distinct algebra")
            }
            Error::NotPDistinct => write!(f, "p-table entries are not pairwise distinct"),
            Error::ClosureExceedsCap(cap) => write!(f, "group closure exceeds cap {cap}"),
            Error::DualRelationViolation => {
                write!(f, "transpose does not respect the dual relations")
            }
            Error::DoesNotPreserveF1 => write!(f, "map does not preserve F1 = k + V"),
            Error::UnsupportedCombination(s) => write!(f, "no closed form: {s}"),
            Error::UnsupportedAlgebra(s) => write!(f, "unsupported algebra: {s}"),
            Error::LeadingExponentMismatch { expected, got } => write!(
                f,
                "leading exponent {got} of the trace disagrees with -l = {expected}"
            ),
            Error::UnsupportedLeaf(s) => write!(f, "no determinant rule for leaf: {s}"),
            Error::NonRationalCoefficient => {
                write!(f, "coefficient involves a formal parameter where a rational is required")
            }
            Error::ZeroSeries => write!(f, "symmetry check on the zero series"),
            Error::NotBracketMap => write!(f, "linear part does not preserve the bracket form"),
            Error::DeterminantNotOne => {
                write!(f, "bracket map with determinant != 1 (internal inconsistency)")
            }
            Error::ShapeViolation(s) => write!(f, "triangular shape violated: {s}"),
            Error::HypothesesNotMet(s) => write!(f, "classification hypotheses fail: {s}"),
            Error::InvalidTypeRank(s) => write!(f, "invalid root system: {s}"),
            Error::NotDiagramSymmetry => {
                write!(f, "permutation does not preserve the Cartan matrix")
            }
            Error::ExtensionInconsistent => {
                write!(f, "generator assignment does not extend to an automorphism")
            }
            Error::NotNilpotent => write!(f, "adjoint action is not nilpotent"),
            Error::NotLieAutomorphism => {
                write!(f, "linear part is not a Lie algebra automorphism")
            }
            Error::EpsilonNotVanishingOnDerived => {
                write!(f, "constant part does not vanish on the derived subalgebra")
            }
            Error::FormalParameterUnsupported => {
                write!(f, "operation requires numeric parameters")
            }
            Error::InternalInconsistency(s) => write!(f, "internal inconsistency: {s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
