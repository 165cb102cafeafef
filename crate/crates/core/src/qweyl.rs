//! Quantum Weyl algebras: relation-preserving certification of affine
//! candidates, the triangular-shape classification of filtered
//! automorphisms under the genericity hypotheses, and the invariant-ring
//! verdict.

use num_traits::{One, Zero};

use crate::algebra::{q_generic, Algebra, QuantumWeyl};
use crate::auto::{check_auto, group_closure, Automorphism};
use crate::error::{Error, Result};
use crate::exact::{Matrix, ParamScalar, Rat};
use crate::invariants::{Outcome, Verdict};

/// Triangular shape of a filtered quantum Weyl automorphism:
/// g(x_i) = alpha_i x_i + sum_{j>i} a_ij x_j + sum_{j>i} b_ij y_j,
/// g(y_i) = alpha_i^-1 y_i + sum_{j>i} c_ij x_j + sum_{j>i} d_ij y_j,
/// with no constant part. The assembled matrix has determinant 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QWeylShape {
    pub alphas: Vec<Rat>,
    /// (i, j, coefficient) entries with j > i, per block.
    pub a: Vec<(usize, usize, Rat)>,
    pub b: Vec<(usize, usize, Rat)>,
    pub c: Vec<(usize, usize, Rat)>,
    pub d: Vec<(usize, usize, Rat)>,
}

/// Whether the affine candidate preserves the defining relations of
/// A_n(q, p), decided by applying it to each relation and straightening.
pub fn check_qweyl_auto(a: &QuantumWeyl, sigma: &Matrix, eps: &[Rat]) -> Result<bool> {
    check_auto(&Algebra::QuantumWeyl(a.clone()), sigma, eps)
}

/// The hypotheses q^4 != 1, q p_ij != 1, q^3 p_ij != 1 (i != j) under which
/// the triangular classification holds, checked by exact scalar comparison.
pub fn classification_hypotheses(a: &QuantumWeyl) -> Result<()> {
    let q = &a.q;
    let q2 = q * q;
    let q4 = &q2 * &q2;
    if q4.is_one() {
        return Err(Error::HypothesesNotMet("q^4 = 1".into()));
    }
    let q3 = &q2 * q;
    for i in 0..a.n {
        for j in 0..a.n {
            if i == j {
                continue;
            }
            let p = a.p.get(i, j);
            if (q * &p).is_one() {
                return Err(Error::HypothesesNotMet(format!("q p_{}{} = 1", i + 1, j + 1)));
            }
            if (&q3 * &p).is_one() {
                return Err(Error::HypothesesNotMet(format!(
                    "q^3 p_{}{} = 1",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// Certifies the triangular shape of a filtered automorphism under the
/// classification hypotheses and returns it; the determinant-1 claim is
/// asserted on the assembled matrix.
pub fn classify_qweyl_auto(a: &QuantumWeyl, g: &Automorphism) -> Result<QWeylShape> {
    classification_hypotheses(a)?;
    if g.algebra != Algebra::QuantumWeyl(a.clone()) {
        return Err(Error::UnsupportedAlgebra(
            "automorphism belongs to another algebra".into(),
        ));
    }
    let n = a.n;
    if g.eps.iter().any(|e| !e.is_zero()) {
        return Err(Error::ShapeViolation("nonzero constant part".into()));
    }
    let m = &g.mat;
    let mut alphas = Vec::with_capacity(n);
    let (mut ba, mut bb, mut bc, mut bd) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for i in 0..n {
        // image of x_i lives in span(x_i, x_{>i}, y_{>i})
        for r in 0..2 * n {
            let v = m.at(r, i);
            if v.is_zero() {
                continue;
            }
            if r == i {
                continue;
            } else if r < n && r > i {
                ba.push((i, r, v.clone()));
            } else if r >= n && r - n > i {
                bb.push((i, r - n, v.clone()));
            } else {
                return Err(Error::ShapeViolation(format!(
                    "x_{} image has a forbidden component at row {r}",
                    i + 1
                )));
            }
        }
        // image of y_i lives in span(y_i, x_{>i}, y_{>i})
        for r in 0..2 * n {
            let v = m.at(r, n + i);
            if v.is_zero() {
                continue;
            }
            if r == n + i {
                continue;
            } else if r < n && r > i {
                bc.push((i, r, v.clone()));
            } else if r >= n && r - n > i {
                bd.push((i, r - n, v.clone()));
            } else {
                return Err(Error::ShapeViolation(format!(
                    "y_{} image has a forbidden component at row {r}",
                    i + 1
                )));
            }
        }
        let alpha = m.at(i, i).clone();
        if alpha.is_zero() {
            return Err(Error::ShapeViolation(format!("alpha_{} = 0", i + 1)));
        }
        let inv = m.at(n + i, n + i).clone();
        if &alpha * &inv != Rat::one() {
            return Err(Error::ShapeViolation(format!(
                "diagonal pair of index {} is not (alpha, alpha^-1)",
                i + 1
            )));
        }
        alphas.push(alpha);
    }
    let det = m.det()?;
    if !det.is_one() {
        return Err(Error::InternalInconsistency(
            "triangular quantum Weyl automorphism with determinant != 1".into(),
        ));
    }
    Ok(QWeylShape {
        alphas,
        a: ba,
        b: bb,
        c: bc,
        d: bd,
    })
}

/// Verdict for invariants of A_n(q, p) under the group generated by the
/// given automorphisms. Requires q generic with respect to the p-table;
/// when genericity fails the verdict is Inconclusive with an explanation.
pub fn qweyl_verdict(a: &QuantumWeyl, gens: &[Automorphism], cap: usize) -> Result<Verdict> {
    let ps: Vec<ParamScalar> = upper_ps(a);
    let generic = q_generic(&a.q, &ps)?;
    if !generic {
        return Ok(Verdict {
            outcome: Outcome::Inconclusive,
            justification: "q is not generic with respect to the multiplicative subgroup \
generated by the p parameters; the determinant-1 classification of filtered automorphisms \
is not available"
                .into(),
            hdet_table: vec![],
            det_table: vec![],
            molien: None,
            stanley: None,
            notes: vec!["genericity gate failed".into()],
        });
    }
    let mut notes = vec!["q is generic with respect to the p parameters".into()];
    let mut hdet_table = Vec::new();
    let mut det_table = Vec::new();
    if gens.is_empty() {
        notes.push("empty generator list: trivial group".into());
        hdet_table.push(Rat::one());
        det_table.push(Rat::one());
    } else {
        let group = group_closure(gens, cap)?;
        notes.push(format!("group order {}", group.order()));
        for g in &group.elements {
            let shape = classify_qweyl_auto(a, g)?;
            let det = g.mat.det()?;
            debug_assert!(det.is_one());
            let _ = shape;
            hdet_table.push(det.clone());
            det_table.push(det);
        }
    }
    Ok(Verdict {
        outcome: Outcome::AuslanderGorensteinAndMacaulay,
        justification: "q is generic, so every filtered automorphism is triangular with \
determinant 1 and hdet 1; invariants of the quantum Weyl algebra under a finite group of \
filtered automorphisms are Auslander-Gorenstein and GKdim-Macaulay"
            .into(),
        hdet_table,
        det_table,
        molien: None,
        stanley: None,
        notes,
    })
}

fn upper_ps(a: &QuantumWeyl) -> Vec<ParamScalar> {
    a.p.upper_entries().to_vec()
}

/// Builds the diagonal scaling g(x_i) = alpha_i x_i, g(y_i) = alpha_i^-1 y_i.
pub fn diagonal_scaling(a: &QuantumWeyl, alphas: &[Rat]) -> Result<Automorphism> {
    if alphas.len() != a.n {
        return Err(Error::DimensionMismatch {
            expected: a.n,
            got: alphas.len(),
        });
    }
    let mut d = Vec::with_capacity(2 * a.n);
    d.extend(alphas.iter().cloned());
    for al in alphas {
        if al.is_zero() {
            return Err(Error::NotInvertible);
        }
        d.push(Rat::one() / al);
    }
    Automorphism::graded(Algebra::QuantumWeyl(a.clone()), Matrix::diagonal(&d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PTable;
    use crate::exact::rat_int;

    fn qw2() -> QuantumWeyl {
        QuantumWeyl::new(
            2,
            ParamScalar::from_i64(2),
            PTable::new(2, vec![ParamScalar::from_i64(3)]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn diagonal_scalings_pass() {
        let a = qw2();
        let g = diagonal_scaling(&a, &[rat_int(2), rat_int(3)]).unwrap();
        assert!(check_qweyl_auto(&a, &g.mat, &g.eps).unwrap());
        let shape = classify_qweyl_auto(&a, &g).unwrap();
        assert_eq!(shape.alphas, vec![rat_int(2), rat_int(3)]);
        assert!(shape.a.is_empty() && shape.b.is_empty() && shape.c.is_empty() && shape.d.is_empty());
        assert_eq!(g.mat.det().unwrap(), rat_int(1));
    }

    #[test]
    fn constant_shift_fails_for_nontrivial_q() {
        let a = qw2();
        let mut eps = vec![rat_int(0); 4];
        eps[0] = rat_int(1); // x1 -> x1 + 1
        assert!(!check_qweyl_auto(&a, &Matrix::identity(4), &eps).unwrap());
    }

    #[test]
    fn identity_passes() {
        let a = qw2();
        assert!(check_qweyl_auto(&a, &Matrix::identity(4), &vec![rat_int(0); 4]).unwrap());
    }

    #[test]
    fn hypotheses_gate() {
        // q = 1 has q^4 = 1
        let a = QuantumWeyl::new(
            2,
            ParamScalar::one(),
            PTable::new(2, vec![ParamScalar::from_i64(3)]).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            classification_hypotheses(&a),
            Err(Error::HypothesesNotMet(_))
        ));

        // q p_21 = 1 for q = 3, p12 = 3 (p21 = 1/3)
        let a = QuantumWeyl::new(
            2,
            ParamScalar::from_i64(3),
            PTable::new(2, vec![ParamScalar::from_i64(3)]).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            classification_hypotheses(&a),
            Err(Error::HypothesesNotMet(_))
        ));

        assert!(classification_hypotheses(&qw2()).is_ok());
    }

    #[test]
    fn off_shape_perturbations_fail() {
        let a = qw2();
        // x1 <-> y1 coupling
        let mut m = Matrix::identity(4);
        m.set(2, 0, rat_int(1)); // y1 component in g(x1)
        assert!(!check_qweyl_auto(&a, &m, &vec![rat_int(0); 4]).unwrap());
        // lower-index coupling: g(x2) gains x1
        let mut m = Matrix::identity(4);
        m.set(0, 1, rat_int(1));
        assert!(!check_qweyl_auto(&a, &m, &vec![rat_int(0); 4]).unwrap());
    }

    #[test]
    fn verdict_examples() {
        let a = qw2();
        // order-2 diagonal scaling with alpha_i = -1
        let g = diagonal_scaling(&a, &[rat_int(-1), rat_int(-1)]).unwrap();
        let v = qweyl_verdict(&a, &[g], 100).unwrap();
        assert_eq!(v.outcome, Outcome::AuslanderGorensteinAndMacaulay);
        assert!(v.hdet_table.iter().all(|h| h.is_one()));

        // q = 9, p = 3: genericity fails (9 = 3^2)
        let bad = QuantumWeyl::new(
            2,
            ParamScalar::from_i64(9),
            PTable::new(2, vec![ParamScalar::from_i64(3)]).unwrap(),
        )
        .unwrap();
        let v = qweyl_verdict(&bad, &[], 100).unwrap();
        assert_eq!(v.outcome, Outcome::Inconclusive);

        // trivial group
        let v = qweyl_verdict(&a, &[], 100).unwrap();
        assert_eq!(v.outcome, Outcome::AuslanderGorensteinAndMacaulay);
    }

    #[test]
    fn formal_parameters_are_generic_when_symbols_are_free() {
        let a = QuantumWeyl::new(
            2,
            ParamScalar::symbol("q"),
            PTable::new(2, vec![ParamScalar::symbol("p")]).unwrap(),
        )
        .unwrap();
        let g = diagonal_scaling(&a, &[rat_int(-1), rat_int(-1)]).unwrap();
        let v = qweyl_verdict(&a, &[g], 100).unwrap();
        assert_eq!(v.outcome, Outcome::AuslanderGorensteinAndMacaulay);
    }
}
