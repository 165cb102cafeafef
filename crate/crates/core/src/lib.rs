//! Exact-arithmetic toolkit deciding, via known sufficient conditions,
//! whether invariant subrings of quantum algebras under finite automorphism
//! groups are (Auslander-)Gorenstein. Computes trace series and homological
//! determinants of graded and filtered automorphisms, Molien series of
//! invariant rings, Hilbert-series symmetry tests, symplectic and quantum
//! Weyl automorphism classification, and determinants of Lie-algebra diagram
//! automorphisms, all cross-checked by degree-truncated brute-force oracles.

pub mod algebra;
pub mod auto;
pub mod error;
pub mod exact;
pub mod invariants;
pub mod lie;
pub mod qweyl;
pub mod weyl;

pub use algebra::{Algebra, PTable, QuantExterior, QuantumWeyl, Quotient, SkewPoly, Weyl};
pub use auto::{AutGroup, Automorphism};
pub use invariants::{
    hdet, molien, reynolds_dims, stanley_check, trace_bruteforce, trace_closed, verdict,
    HdetResult, Outcome, StanleyResult, TraceSeries, Verdict,
};
pub use error::{Error, Result};
pub use exact::{Matrix, ParamScalar, Poly, Rat, RatFun};
