use num_traits::One;

use super::hdet::hdet;
use super::molien::{molien, stanley_check, StanleyResult};
use crate::algebra::Algebra;
use crate::auto::AutGroup;
use crate::error::{Error, Result};
use crate::exact::{rat_to_string, Rat, RatFun};

/// Outcome of the decision pipeline for an invariant subring A^G.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    AuslanderGorensteinAndMacaulay,
    GorensteinByStanley,
    NotGorenstein,
    Inconclusive,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Outcome::AuslanderGorensteinAndMacaulay => "AuslanderGorensteinAndMacaulay",
            Outcome::GorensteinByStanley => "GorensteinByStanley",
            Outcome::NotGorenstein => "NotGorenstein",
            Outcome::Inconclusive => "Inconclusive",
        };
        write!(f, "{s}")
    }
}

/// Verdict with its full evidence chain: the per-element hdet table, the
/// ordinary determinants for comparison, the Molien series, the symmetry
/// test and any discrepancy notes.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub outcome: Outcome,
    pub justification: String,
    pub hdet_table: Vec<Rat>,
    pub det_table: Vec<Rat>,
    pub molien: Option<RatFun>,
    pub stanley: Option<StanleyResult>,
    pub notes: Vec<String>,
}

pub const CITE_HDET_ONE: &str = "every homological determinant is 1, so the invariant subring \
inherits the Auslander-Gorenstein and GKdim-Macaulay properties (invariant transfer for \
hdet-trivial actions, Jorgensen-Zhang)";
pub const CITE_STANLEY_FAIL: &str = "the Molien series violates the Hilbert-series symmetry \
H(1/t) = +-t^m H(t), which obstructs the Gorenstein property (Stanley's criterion; Eisenbud, \
Ex. 21.17(c))";
pub const CITE_STANLEY_OK: &str = "hdet is not identically 1, but the Molien series is \
symmetric and the ambient ring is Auslander-regular in characteristic 0, so the invariant \
subring is Auslander-Gorenstein (Jorgensen-Zhang 6.2 and 6.4)";
pub const CITE_INCONCLUSIVE: &str = "hdet is not identically 1 and the Hilbert-series symmetry \
test is not decisive for this catalogue entry";

/// Whether the catalogue knows the descriptor to be eligible for the
/// hdet-transfer route: the ambient ring is (filtered) Auslander-Gorenstein
/// and GKdim-Macaulay with Kdim = GKdim on graded modules.
fn eligibility_note(alg: &Algebra) -> String {
    match alg {
        Algebra::Skew(_) => "skew polynomial ambient ring: Auslander-regular, GKdim-Macaulay, \
and Kdim = GKdim holds for graded modules (enough normal elements)"
            .into(),
        Algebra::QuantExterior(_) => {
            "quantized exterior ambient ring: finite dimensional AS-Gorenstein of injective \
dimension 0"
                .into()
        }
        Algebra::QuantumWeyl(_) => "quantum Weyl ambient ring: Auslander-regular and \
GKdim-Macaulay; the associated graded ring has enough normal elements"
            .into(),
        Algebra::Weyl(_) => "Weyl algebra ambient ring: filtered Auslander-regular and \
GKdim-Macaulay with commutative polynomial associated graded ring"
            .into(),
        Algebra::Tensor(..) => "tensor product of catalogue entries".into(),
        Algebra::Quotient(_) => {
            "quotient of a skew polynomial ring by a regular normal element".into()
        }
    }
}

/// Stanley's positive direction needs the associated graded ring to be
/// Auslander-regular in characteristic 0; the catalogue grants that to skew
/// polynomial rings, the Weyl families, and skew-by-exterior tensors.
fn stanley_eligible(alg: &Algebra) -> bool {
    fn factor_ok(alg: &Algebra) -> (bool, bool) {
        // (acceptable factor, counts as a regular factor)
        match alg {
            Algebra::Skew(_) => (true, true),
            Algebra::QuantExterior(_) => (true, false),
            Algebra::Tensor(l, r) => {
                let (la, lr) = factor_ok(l);
                let (ra, rr) = factor_ok(r);
                (la && ra, lr || rr)
            }
            _ => (false, false),
        }
    }
    match alg {
        Algebra::Skew(_) | Algebra::Weyl(_) | Algebra::QuantumWeyl(_) => true,
        Algebra::Tensor(..) => {
            let (acceptable, has_regular) = factor_ok(alg);
            acceptable && has_regular
        }
        Algebra::QuantExterior(_) | Algebra::Quotient(_) => false,
    }
}

/// The decision pipeline: compute hdet for every group element; if all are
/// 1 the invariant subring inherits Auslander-Gorenstein and GKdim-Macaulay;
/// otherwise test the Molien series for Hilbert-series symmetry, concluding
/// NotGorenstein on failure, GorensteinByStanley on success over a regular
/// catalogue entry, and Inconclusive otherwise.
pub fn verdict(alg: &Algebra, group: &AutGroup) -> Result<Verdict> {
    if group.algebra != *alg {
        return Err(Error::UnsupportedAlgebra(
            "group acts on another algebra".into(),
        ));
    }
    let mut notes = vec![eligibility_note(alg)];
    let mut hdet_table = Vec::with_capacity(group.order());
    let mut det_table = Vec::with_capacity(group.order());
    for (i, g) in group.elements.iter().enumerate() {
        let h = hdet(alg, g)?;
        let d = g.mat.det()?;
        if h.value != d {
            notes.push(format!(
                "element #{i}: hdet = {} differs from det g|V = {}",
                rat_to_string(&h.value),
                rat_to_string(&d)
            ));
        }
        hdet_table.push(h.value);
        det_table.push(d);
    }

    if hdet_table.iter().all(|h| h.is_one()) {
        return Ok(Verdict {
            outcome: Outcome::AuslanderGorensteinAndMacaulay,
            justification: CITE_HDET_ONE.into(),
            hdet_table,
            det_table,
            molien: None,
            stanley: None,
            notes,
        });
    }

    let m = molien(alg, group)?;
    let s = stanley_check(&m)?;
    let (outcome, justification) = if !s.symmetric {
        (Outcome::NotGorenstein, CITE_STANLEY_FAIL.to_string())
    } else if stanley_eligible(alg) {
        (Outcome::GorensteinByStanley, CITE_STANLEY_OK.to_string())
    } else {
        (Outcome::Inconclusive, CITE_INCONCLUSIVE.to_string())
    };
    Ok(Verdict {
        outcome,
        justification,
        hdet_table,
        det_table,
        molien: Some(m),
        stanley: Some(s),
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PTable, Quotient, SkewPoly};
    use crate::auto::{group_closure, Automorphism, DEFAULT_GROUP_CAP};
    use crate::exact::{rat_int, Matrix, ParamScalar};

    #[test]
    fn sign_action_on_three_variables_is_not_gorenstein() {
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
        let group = group_closure(&[g], DEFAULT_GROUP_CAP).unwrap();
        let v = verdict(&a, &group).unwrap();
        assert_eq!(v.outcome, Outcome::NotGorenstein);
        assert!(v.hdet_table.contains(&rat_int(-1)));
        assert!(!v.stanley.unwrap().symmetric);
    }

    #[test]
    fn determinant_one_sign_action_is_positive() {
        let a = Algebra::Skew(SkewPoly::commutative(2));
        let g = Automorphism::graded(
            a.clone(),
            Matrix::diagonal(&[rat_int(-1), rat_int(-1)]),
        )
        .unwrap();
        let group = group_closure(&[g], DEFAULT_GROUP_CAP).unwrap();
        let v = verdict(&a, &group).unwrap();
        assert_eq!(v.outcome, Outcome::AuslanderGorensteinAndMacaulay);
        assert!(v.hdet_table.iter().all(|h| h.is_one()));
    }

    #[test]
    fn koszul_example_is_not_gorenstein_and_flags_hdet_vs_det() {
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
        let group = group_closure(&[g], DEFAULT_GROUP_CAP).unwrap();
        let v = verdict(&a, &group).unwrap();
        assert_eq!(v.outcome, Outcome::NotGorenstein);
        // hdet -1 versus det +1 is flagged
        assert!(v.notes.iter().any(|n| n.contains("differs from det")));
    }

    #[test]
    fn symmetric_molien_on_the_line_is_gorenstein_by_stanley() {
        // {id, -id} on k[x]: molien 1/(1 - t^2), symmetric; invariants k[x^2]
        let a = Algebra::Skew(SkewPoly::commutative(1));
        let g = Automorphism::graded(a.clone(), Matrix::diagonal(&[rat_int(-1)])).unwrap();
        let group = group_closure(&[g], DEFAULT_GROUP_CAP).unwrap();
        let v = verdict(&a, &group).unwrap();
        assert_eq!(v.outcome, Outcome::GorensteinByStanley);
        let s = v.stanley.unwrap();
        assert_eq!((s.symmetric, s.sign, s.m), (true, Some(-1), Some(2)));
    }

    #[test]
    fn quotient_sign_action_flags_and_fails() {
        // k[x1,x2]/(x1^3) with -id: hdet = -1, Stanley fails, not Gorenstein
        let q = Algebra::Quotient(Quotient::new(SkewPoly::commutative(2), 0, 3).unwrap());
        let g = Automorphism::graded(
            q.clone(),
            Matrix::diagonal(&[rat_int(-1), rat_int(-1)]),
        )
        .unwrap();
        let group = group_closure(&[g], DEFAULT_GROUP_CAP).unwrap();
        let v = verdict(&q, &group).unwrap();
        assert_eq!(v.outcome, Outcome::NotGorenstein);
        assert!(v.hdet_table.contains(&rat_int(-1)));
    }
}
