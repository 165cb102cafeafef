//! Simple Lie algebras from Cartan matrices via Chevalley bases, diagram
//! automorphisms with their determinants, nilpotent exponentials and the
//! enveloping-algebra invariant verdict.

pub mod chevalley;
pub mod diagram;
pub mod roots;

pub use chevalley::{chevalley_constants, ChevalleyLieAlgebra};
pub use diagram::{
    certify_lie_automorphism, diagram_auto_matrix, inner_exp, lie_det, u_verdict, DiagramAuto,
    LieAuto,
};
pub use roots::{build_root_system, LieType, RootSystem};
