//! Classical Weyl algebra machinery: the bracket form on the generator
//! space, bracket-map verification, the determinant-one certificate and the
//! invariant-ring verdict for groups of filtered automorphisms.

use num_traits::{One, Zero};

use crate::algebra::{Algebra, Weyl};
use crate::auto::{group_closure, Automorphism};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Rat};
use crate::invariants::{Outcome, Verdict};

/// Generator space V_n of the n-th Weyl algebra with its bracket form in
/// the fixed basis (x_1..x_n, y_1..y_n): [y_i, x_j] = delta_ij and all
/// other generator brackets vanish, encoded by the antisymmetric matrix J
/// with J[a][b] = [g_a, g_b].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticSpace {
    pub n: usize,
    pub j: Matrix,
}

impl SymplecticSpace {
    pub fn new(n: usize) -> Self {
        let mut j = Matrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            j.set(i, n + i, -Rat::one());
            j.set(n + i, i, Rat::one());
        }
        SymplecticSpace { n, j }
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }
}

/// Whether sigma preserves the bracket form: sigma^T J sigma = J exactly.
pub fn is_bracket_map(space: &SymplecticSpace, sigma: &Matrix) -> Result<bool> {
    let d = space.dim();
    if sigma.rows() != d || sigma.cols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: sigma.rows().max(sigma.cols()),
        });
    }
    let lhs = &(&sigma.transpose() * &space.j) * sigma;
    Ok(lhs == space.j)
}

/// Determinant of a bracket map. Bracket maps always have determinant 1;
/// any other value signals an internal inconsistency, not a property of
/// the input.
pub fn symplectic_det(space: &SymplecticSpace, sigma: &Matrix) -> Result<Rat> {
    if !is_bracket_map(space, sigma)? {
        return Err(Error::NotBracketMap);
    }
    let det = sigma.det()?;
    if !det.is_one() {
        return Err(Error::DeterminantNotOne);
    }
    Ok(det)
}

/// Symplectic transvection 1 + c v (Jv)^T; preserves J identically for
/// every vector v and scalar c, which makes it a sound generator of test
/// instances.
pub fn transvection(space: &SymplecticSpace, v: &[Rat], c: &Rat) -> Matrix {
    let d = space.dim();
    assert_eq!(v.len(), d);
    let jv = space.j.mul_vec(v);
    Matrix::from_fn(d, d, |i, k| {
        let mut e = if i == k { Rat::one() } else { Rat::zero() };
        e += c * &v[i] * &jv[k];
        e
    })
}

/// Affine candidate on the Weyl generator space: linear part + constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineCandidate {
    pub sigma: Matrix,
    pub eps: Vec<Rat>,
}

/// Verdict for invariants of the n-th Weyl algebra under the group
/// generated by the given affine candidates. Each linear part must
/// preserve the bracket form; every such map has determinant 1, hence
/// hdet 1, and the positive verdict follows. The closure is attempted up
/// to `cap` to report the group order; candidate sets generating a group
/// beyond the cap are still individually certified, with a note.
pub fn weyl_verdict(n: usize, candidates: &[AffineCandidate], cap: usize) -> Result<Verdict> {
    let space = SymplecticSpace::new(n);
    let algebra = Algebra::Weyl(Weyl::new(n));
    let mut notes = Vec::new();
    let mut autos = Vec::with_capacity(candidates.len());
    for cand in candidates {
        if !is_bracket_map(&space, &cand.sigma)? {
            return Err(Error::NotBracketMap);
        }
        symplectic_det(&space, &cand.sigma)?;
        autos.push(Automorphism::filtered(
            algebra.clone(),
            cand.sigma.clone(),
            cand.eps.clone(),
        )?);
    }
    let mut hdet_table = Vec::new();
    let mut det_table = Vec::new();
    if autos.is_empty() {
        notes.push("empty candidate list: trivial group".into());
        hdet_table.push(Rat::one());
        det_table.push(Rat::one());
    } else {
        match group_closure(&autos, cap) {
            Ok(group) => {
                notes.push(format!(
                    "group closure verified finite: order {}",
                    group.order()
                ));
                for g in &group.elements {
                    // hdet = det sigma for filtered Weyl automorphisms
                    let d = symplectic_det(&space, &g.mat)?;
                    hdet_table.push(d.clone());
                    det_table.push(d);
                }
            }
            Err(Error::ClosureExceedsCap(c)) => {
                notes.push(format!(
                    "group closure exceeds cap {c}; finiteness not verified, the conclusion \
applies to any finite group containing the candidates"
                ));
                for g in &autos {
                    let d = symplectic_det(&space, &g.mat)?;
                    hdet_table.push(d.clone());
                    det_table.push(d);
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Verdict {
        outcome: Outcome::AuslanderGorensteinAndMacaulay,
        justification: "every linear part preserves the bracket form, hence has determinant 1 \
and hdet 1; invariants of the Weyl algebra under a finite group of filtered automorphisms \
are Auslander-Gorenstein and GKdim-Macaulay"
            .into(),
        hdet_table,
        det_table,
        molien: None,
        stanley: None,
        notes,
    })
}
