use num_traits::One;

use super::trace::{trace_closed, TraceSeries};
use crate::algebra::{p_distinct, Algebra, SkewPoly};
use crate::auto::Automorphism;
use crate::error::{Error, Result};
use crate::exact::{Matrix, Rat};

/// Homological determinant extracted from the Laurent leading term of the
/// trace series: Tr(g, t) = (-1)^d (hdet g)^-1 t^-l + lower order terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HdetResult {
    pub value: Rat,
    pub d: i64,
    pub l: i64,
    /// Leading behaviour (c, e) of the trace at t -> infinity.
    pub leading: (Rat, i64),
    pub trace: TraceSeries,
}

/// Composition tree for the determinant rules that bypass trace
/// computation: commutative polynomial rings and diagonal automorphisms of
/// p-distinct skew rings contribute det g|_V, exterior algebras contribute
/// its inverse, quotients by an eigen-scalar lambda divide by lambda, and
/// tensor factors multiply.
#[derive(Debug, Clone)]
pub enum HdetNode {
    CommutativePoly { mat: Matrix },
    SkewDistinct { algebra: SkewPoly, mat: Matrix },
    Exterior { mat: Matrix },
    Tensor(Box<HdetNode>, Box<HdetNode>),
    Quotient { lambda: Rat, base: Box<HdetNode> },
}

/// Evaluates a composition tree of determinant rules.
pub fn hdet_rules(node: &HdetNode) -> Result<Rat> {
    match node {
        HdetNode::CommutativePoly { mat } => mat.det(),
        HdetNode::SkewDistinct { algebra, mat } => {
            if !p_distinct(algebra) {
                return Err(Error::UnsupportedLeaf(
                    "skew leaf without pairwise distinct parameters".into(),
                ));
            }
            mat.det()
        }
        HdetNode::Exterior { mat } => {
            let d = mat.det()?;
            if num_traits::Zero::is_zero(&d) {
                return Err(Error::NotInvertible);
            }
            Ok(Rat::one() / d)
        }
        HdetNode::Tensor(l, r) => Ok(hdet_rules(l)? * hdet_rules(r)?),
        HdetNode::Quotient { lambda, base } => Ok(hdet_rules(base)? / lambda),
    }
}

/// Builds the rule tree for descriptors covered by the compositional rules,
/// or None when only the trace route applies.
pub fn rules_tree(alg: &Algebra, mat: &Matrix, lambdas: &[Rat]) -> Option<HdetNode> {
    match alg {
        Algebra::Skew(a) => {
            if a.p.is_commutative() {
                Some(HdetNode::CommutativePoly { mat: mat.clone() })
            } else if p_distinct(a) && mat.is_diagonal() {
                Some(HdetNode::SkewDistinct {
                    algebra: a.clone(),
                    mat: mat.clone(),
                })
            } else {
                None
            }
        }
        Algebra::QuantExterior(e) => {
            if e.p.is_commutative() {
                Some(HdetNode::Exterior { mat: mat.clone() })
            } else {
                None
            }
        }
        Algebra::Weyl(_) => Some(HdetNode::CommutativePoly { mat: mat.clone() }),
        Algebra::Tensor(l, r) => {
            let nl = l.num_generators();
            let n = alg.num_generators();
            let li: Vec<usize> = (0..nl).collect();
            let ri: Vec<usize> = (nl..n).collect();
            let lq = count_quotients(l);
            let left = rules_tree(l, &mat.submatrix(&li, &li), &lambdas[..lq])?;
            let right = rules_tree(r, &mat.submatrix(&ri, &ri), &lambdas[lq..])?;
            Some(HdetNode::Tensor(Box::new(left), Box::new(right)))
        }
        Algebra::Quotient(q) => {
            let lambda = lambdas.first()?.clone();
            let base = rules_tree(&Algebra::Skew(q.base.clone()), mat, &[])?;
            Some(HdetNode::Quotient {
                lambda,
                base: Box::new(base),
            })
        }
        Algebra::QuantumWeyl(_) => None,
    }
}

fn count_quotients(alg: &Algebra) -> usize {
    match alg {
        Algebra::Quotient(_) => 1,
        Algebra::Tensor(l, r) => count_quotients(l) + count_quotients(r),
        _ => 0,
    }
}

/// Homological determinant via the trace leading term, cross-checked
/// against the compositional determinant rules whenever those apply.
/// Disagreement between the two routes is an internal inconsistency, never
/// a user error.
pub fn hdet(alg: &Algebra, g: &Automorphism) -> Result<HdetResult> {
    let trace = trace_closed(alg, g)?;
    let (c, e) = trace.value.leading_at_infinity()?;
    let (d, l) = alg.gorenstein_data()?;
    if e != -l {
        return Err(Error::LeadingExponentMismatch { expected: -l, got: e });
    }
    let signed = if d % 2 == 0 { c.clone() } else { -&c };
    let value = Rat::one() / signed;

    if let Some(tree) = rules_tree(alg, &g.mat, &g.lambdas) {
        let by_rules = hdet_rules(&tree)?;
        if by_rules != value {
            return Err(Error::InternalInconsistency(format!(
                "hdet disagreement: leading-term route {value}, rule route {by_rules}"
            )));
        }
    }
    Ok(HdetResult {
        value,
        d,
        l,
        leading: (c, e),
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PTable, QuantExterior, Quotient};
    use crate::exact::{rat_int, ParamScalar};

    #[test]
    fn minus_identity_has_hdet_minus_one() {
        let a = Algebra::Skew(
            SkewPoly::new(
                vec![1, 1, 1],
                PTable::new(
                    3,
                    vec![
                        ParamScalar::symbol("p12"),
                        ParamScalar::symbol("p13"),
                        ParamScalar::symbol("p23"),
                    ],
                )
                .unwrap(),
            )
            .unwrap(),
        );
        let g = Automorphism::graded(
            a.clone(),
            Matrix::diagonal(&[rat_int(-1), rat_int(-1), rat_int(-1)]),
        )
        .unwrap();
        let h = hdet(&a, &g).unwrap();
        assert_eq!(h.value, rat_int(-1));
        assert_eq!((h.d, h.l), (3, 3));
        assert_eq!(h.leading, (rat_int(1), -3));
    }

    #[test]
    fn quotient_hdet_matches_both_routes() {
        // k[x1,x2]/(x1^3) with g = -id: hdet = -1 by the quotient rule and
        // by the leading term of (1 + t^3)/(1 + t)^2
        let q = Algebra::Quotient(Quotient::new(SkewPoly::commutative(2), 0, 3).unwrap());
        let g = Automorphism::graded(
            q.clone(),
            Matrix::diagonal(&[rat_int(-1), rat_int(-1)]),
        )
        .unwrap();
        let h = hdet(&q, &g).unwrap();
        assert_eq!(h.value, rat_int(-1));
        assert_eq!((h.d, h.l), (1, -1));

        // the rule tree gives the same value explicitly
        let tree = rules_tree(&q, &g.mat, &g.lambdas).unwrap();
        assert_eq!(hdet_rules(&tree).unwrap(), rat_int(-1));

        // det g|_V = 1 here, so hdet is neither det nor its inverse
        assert_eq!(g.mat.det().unwrap(), rat_int(1));
    }

    #[test]
    fn identity_has_hdet_one_everywhere() {
        let algebras = vec![
            Algebra::Skew(SkewPoly::commutative(3)),
            Algebra::QuantExterior(QuantExterior::exterior(2)),
            Algebra::Quotient(Quotient::new(SkewPoly::commutative(2), 0, 3).unwrap()),
            Algebra::Weyl(crate::algebra::Weyl::new(1)),
        ];
        for alg in algebras {
            let id = Automorphism::identity(alg.clone());
            let h = hdet(&alg, &id).unwrap();
            assert_eq!(h.value, rat_int(1), "identity hdet on {alg:?}");
        }
    }

    #[test]
    fn koszul_route_hdet_differs_from_det() {
        // the non-diagonal order-2 automorphism with trace 1/(1+t+t^2+t^3):
        // computed hdet is -1 while det g|_V is +1
        let a = Algebra::Skew(
            SkewPoly::new(
                vec![1, 1, 1],
                PTable::new(
                    3,
                    vec![
                        ParamScalar::from_i64(-1),
                        ParamScalar::from_i64(1),
                        ParamScalar::from_i64(1),
                    ],
                )
                .unwrap(),
            )
            .unwrap(),
        );
        let g = Automorphism::graded(
            a.clone(),
            Matrix::from_i64_rows(&[&[0, -1, 0], &[-1, 0, 0], &[0, 0, -1]]),
        )
        .unwrap();
        let h = hdet(&a, &g).unwrap();
        assert_eq!(h.value, rat_int(-1));
        assert_eq!(g.mat.det().unwrap(), rat_int(1));
    }

    #[test]
    fn exterior_hdet_is_inverse_determinant() {
        let e = Algebra::QuantExterior(QuantExterior::exterior(2));
        let g = Automorphism::graded(
            e.clone(),
            Matrix::diagonal(&[rat_int(2), rat_int(3)]),
        )
        .unwrap();
        let h = hdet(&e, &g).unwrap();
        assert_eq!(h.value, crate::exact::rat(1, 6));
    }

    #[test]
    fn tensor_rule_cancellation() {
        // g (x) Lambda(g): hdet = det * det^-1 = 1
        let a = SkewPoly::new(
            vec![1, 1],
            PTable::new(2, vec![ParamScalar::from_i64(2)]).unwrap(),
        )
        .unwrap();
        let t = Algebra::tensor(
            Algebra::Skew(a),
            Algebra::QuantExterior(QuantExterior::exterior(2)),
        )
        .unwrap();
        let m = Matrix::diagonal(&[rat_int(2), rat_int(5), rat_int(2), rat_int(5)]);
        let g = Automorphism::graded(t.clone(), m).unwrap();
        let h = hdet(&t, &g).unwrap();
        assert_eq!(h.value, rat_int(1));
    }
}
