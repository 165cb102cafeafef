//! The analytical core: trace series (closed-form and brute-force),
//! homological determinants, Molien series, the Hilbert-series symmetry
//! test and the verdict engine.

pub mod hdet;
pub mod molien;
pub mod trace;
pub mod verdict;

pub use hdet::{hdet, hdet_rules, rules_tree, HdetNode, HdetResult};
pub use molien::{molien, reynolds_dims, stanley_check, StanleyResult};
pub use trace::{trace_bruteforce, trace_closed, TraceMethod, TraceSeries};
pub use verdict::{verdict, Outcome, Verdict, CITE_HDET_ONE, CITE_INCONCLUSIVE, CITE_STANLEY_FAIL, CITE_STANLEY_OK};
