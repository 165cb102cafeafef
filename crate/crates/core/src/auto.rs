//! Graded and filtered automorphisms: relation certification, diagonal
//! classification on p-distinct skew polynomial rings, finite group closure,
//! Koszul transposes and exterior-power extensions.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{nf_mul, Algebra, NormalForm, SkewPoly};
use crate::error::{Error, Result};
use crate::exact::{rat_to_string, Matrix, ParamScalar, Rat};

pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// Automorphism of an algebra descriptor, acting on the generator space by
/// the matrix `mat` (columns are generator images) plus, on filtered
/// algebras, the constant part `eps`. Values are only constructed through
/// certification, so holding one is proof that the defining relations hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    pub algebra: Algebra,
    pub mat: Matrix,
    pub eps: Vec<Rat>,
    /// Eigen-scalar of the quotient normal element, one per quotient node
    /// of the descriptor tree in preorder.
    pub lambdas: Vec<Rat>,
}

impl Automorphism {
    /// Certifies a graded automorphism (no constant part).
    pub fn graded(algebra: Algebra, mat: Matrix) -> Result<Self> {
        let eps = vec![Rat::zero(); algebra.num_generators()];
        Automorphism::filtered(algebra, mat, eps)
    }

    /// Certifies a filtered automorphism given as linear part + constants.
    pub fn filtered(algebra: Algebra, mat: Matrix, eps: Vec<Rat>) -> Result<Self> {
        let n = algebra.num_generators();
        if mat.rows() != n || mat.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: mat.rows().max(mat.cols()),
            });
        }
        if eps.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: eps.len() });
        }
        if !algebra.is_filtered() && eps.iter().any(|e| !e.is_zero()) {
            return Err(Error::RelationViolation(
                "constant part on a graded algebra".into(),
            ));
        }
        if mat.inverse().is_none() {
            return Err(Error::NotInvertible);
        }
        // Degree-preserving: no blocks between distinct generator degrees.
        let degrees = algebra.generator_degrees();
        for i in 0..n {
            for j in 0..n {
                if degrees[i] != degrees[j] && !mat.at(i, j).is_zero() {
                    return Err(Error::RelationViolation(format!(
                        "entry ({i},{j}) mixes generator degrees {} and {}",
                        degrees[i], degrees[j]
                    )));
                }
            }
        }
        check_relations(&algebra, &mat, &eps)?;
        let lambdas = quotient_lambdas(&algebra, &mat)?;
        Ok(Automorphism { algebra, mat, eps, lambdas })
    }

    pub fn identity(algebra: Algebra) -> Self {
        let n = algebra.num_generators();
        Automorphism {
            mat: Matrix::identity(n),
            eps: vec![Rat::zero(); n],
            lambdas: vec![Rat::one(); count_quotients(&algebra)],
            algebra,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity() && self.eps.iter().all(|e| e.is_zero())
    }

    pub fn is_graded(&self) -> bool {
        self.eps.iter().all(|e| e.is_zero())
    }

    /// g(x_idx) as a normal form (linear combination of generators + constant).
    pub fn image_of(&self, idx: usize) -> NormalForm {
        let n = self.algebra.num_generators();
        let mut nf = NormalForm::zero(n);
        for j in 0..n {
            let c = self.mat.at(j, idx);
            if !c.is_zero() {
                let mut mono = vec![0u32; n];
                mono[j] = 1;
                nf.add_term(mono, ParamScalar::from_rat(c.clone()));
            }
        }
        if !self.eps[idx].is_zero() {
            nf.add_term(vec![0; n], ParamScalar::from_rat(self.eps[idx].clone()));
        }
        nf
    }

    /// Applies the automorphism to a word in the generators.
    pub fn apply_word(&self, word: &[usize]) -> Result<NormalForm> {
        let n = self.algebra.num_generators();
        let mut acc = NormalForm::one(n);
        for &g in word {
            acc = nf_mul(&self.algebra, &acc, &self.image_of(g))?;
        }
        Ok(acc)
    }

    /// Composition self after other: (self . other)(x) = self(other(x)).
    /// Certified automorphisms are closed under composition, so the result
    /// is assembled directly; the quotient eigen-scalars multiply.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        debug_assert_eq!(self.algebra, other.algebra);
        let mat = &self.mat * &other.mat;
        // the constant part is a functional on V: eps = eps_g . sigma_h + eps_h
        let eps_part = Matrix::vec_mul(&self.eps, &other.mat);
        let eps = eps_part
            .iter()
            .zip(&other.eps)
            .map(|(a, b)| a + b)
            .collect();
        let lambdas = self
            .lambdas
            .iter()
            .zip(&other.lambdas)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Automorphism {
            algebra: self.algebra.clone(),
            mat,
            eps,
            lambdas,
        })
    }

    pub fn inverse(&self) -> Result<Automorphism> {
        let inv = self.mat.inverse().ok_or(Error::NotInvertible)?;
        let eps_part = Matrix::vec_mul(&self.eps, &inv);
        let eps = eps_part.iter().map(|e| -e).collect();
        let lambdas = self
            .lambdas
            .iter()
            .map(|l| Rat::one() / l)
            .collect();
        Ok(Automorphism {
            algebra: self.algebra.clone(),
            mat: inv,
            eps,
            lambdas,
        })
    }

    pub(crate) fn key(&self) -> String {
        let mut s = String::new();
        for i in 0..self.mat.rows() {
            for j in 0..self.mat.cols() {
                s.push_str(&rat_to_string(self.mat.at(i, j)));
                s.push(',');
            }
        }
        s.push('|');
        for e in &self.eps {
            s.push_str(&rat_to_string(e));
            s.push(',');
        }
        s
    }
}

fn count_quotients(alg: &Algebra) -> usize {
    match alg {
        Algebra::Quotient(_) => 1,
        Algebra::Tensor(l, r) => count_quotients(l) + count_quotients(r),
        _ => 0,
    }
}

/// Defining relations as linear combinations of words; a candidate is an
/// endomorphism exactly when every relation maps to zero.
fn relations(alg: &Algebra) -> Vec<Vec<(Vec<usize>, ParamScalar)>> {
    match alg {
        Algebra::Skew(a) => {
            let mut rels = Vec::new();
            for i in 0..a.n() {
                for j in i + 1..a.n() {
                    // x_i x_j - p_ij x_j x_i
                    rels.push(vec![
                        (vec![i, j], ParamScalar::one()),
                        (vec![j, i], -&a.p.get(i, j)),
                    ]);
                }
            }
            rels
        }
        Algebra::QuantExterior(a) => {
            let mut rels = Vec::new();
            for i in 0..a.n() {
                rels.push(vec![(vec![i, i], ParamScalar::one())]);
                for j in i + 1..a.n() {
                    // x_i x_j + p_ij^-1 x_j x_i
                    rels.push(vec![
                        (vec![i, j], ParamScalar::one()),
                        (vec![j, i], a.p.get(i, j).inverse().expect("invertible")),
                    ]);
                }
            }
            rels
        }
        Algebra::QuantumWeyl(a) => {
            let n = a.n;
            let q = &a.q;
            let q_inv = q.inverse().expect("invertible");
            let q2 = q * q;
            let mut rels = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    // x_i x_j = p_ij q x_j x_i
                    rels.push(vec![
                        (vec![i, j], ParamScalar::one()),
                        (vec![j, i], -&(&a.p.get(i, j) * q)),
                    ]);
                    // y_i y_j = p_ij q^-1 y_j y_i
                    rels.push(vec![
                        (vec![n + i, n + j], ParamScalar::one()),
                        (vec![n + j, n + i], -&(&a.p.get(i, j) * &q_inv)),
                    ]);
                }
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    // y_i x_j = p_ij^-1 q x_j y_i
                    rels.push(vec![
                        (vec![n + i, j], ParamScalar::one()),
                        (
                            vec![j, n + i],
                            -&(&a.p.get(i, j).inverse().expect("invertible") * q),
                        ),
                    ]);
                }
                // y_i x_i = 1 + q^2 x_i y_i + (q^2 - 1) sum_{j>i} x_j y_j
                let mut rel = vec![
                    (vec![n + i, i], ParamScalar::one()),
                    (vec![], -&ParamScalar::one()),
                    (vec![i, n + i], -&q2),
                ];
                let q2m1 = &q2 - &ParamScalar::one();
                if !q2m1.is_zero() {
                    for j in i + 1..n {
                        rel.push((vec![j, n + j], -&q2m1));
                    }
                }
                rels.push(rel);
            }
            rels
        }
        Algebra::Weyl(a) => relations(&Algebra::QuantumWeyl(a.as_quantum())),
        Algebra::Tensor(..) => Vec::new(), // handled structurally in check_relations
        Algebra::Quotient(q) => relations(&Algebra::Skew(q.base.clone())),
    }
}

fn generator_images(alg: &Algebra, mat: &Matrix, eps: &[Rat]) -> Vec<NormalForm> {
    let n = alg.num_generators();
    (0..n)
        .map(|g| {
            let mut nf = NormalForm::zero(n);
            for j in 0..n {
                let c = mat.at(j, g);
                if !c.is_zero() {
                    let mut mono = vec![0u32; n];
                    mono[j] = 1;
                    nf.add_term(mono, ParamScalar::from_rat(c.clone()));
                }
            }
            if !eps[g].is_zero() {
                nf.add_term(vec![0; n], ParamScalar::from_rat(eps[g].clone()));
            }
            nf
        })
        .collect()
}

/// Certifies that the candidate preserves every defining relation of the
/// algebra. Tensor descriptors additionally require the matrix to be block
/// diagonal with respect to the factor split (the g (x) h form); quotients
/// require the normal element to map to a scalar multiple of itself.
fn check_relations(alg: &Algebra, mat: &Matrix, eps: &[Rat]) -> Result<()> {
    match alg {
        Algebra::Tensor(l, r) => {
            let nl = l.num_generators();
            let n = alg.num_generators();
            for i in 0..n {
                for j in 0..n {
                    if (i < nl) != (j < nl) && !mat.at(i, j).is_zero() {
                        return Err(Error::RelationViolation(
                            "tensor automorphism must be block diagonal (g (x) h)".into(),
                        ));
                    }
                }
            }
            let li: Vec<usize> = (0..nl).collect();
            let ri: Vec<usize> = (nl..n).collect();
            check_relations(l, &mat.submatrix(&li, &li), &eps[..nl])?;
            check_relations(r, &mat.submatrix(&ri, &ri), &eps[nl..])?;
            Ok(())
        }
        _ => {
            let images = generator_images(alg, mat, eps);
            let n = alg.num_generators();
            for rel in relations(alg) {
                let mut acc = NormalForm::zero(n);
                for (word, coeff) in &rel {
                    let mut term = NormalForm::one(n);
                    for &g in word {
                        term = nf_mul(alg, &term, &images[g])?;
                    }
                    acc.add(&term.scale(coeff));
                }
                if !acc.is_zero() {
                    return Err(Error::RelationViolation(
                        "image of a defining relation is nonzero".into(),
                    ));
                }
            }
            Ok(())
        }
    }
}

/// Eigen-scalars of the quotient normal elements x_var^power, preorder.
fn quotient_lambdas(alg: &Algebra, mat: &Matrix) -> Result<Vec<Rat>> {
    match alg {
        Algebra::Quotient(q) => {
            let base = Algebra::Skew(q.base.clone());
            let n = base.num_generators();
            let mut img = NormalForm::zero(n);
            for j in 0..n {
                let c = mat.at(j, q.var);
                if !c.is_zero() {
                    let mut mono = vec![0u32; n];
                    mono[j] = 1;
                    img.add_term(mono, ParamScalar::from_rat(c.clone()));
                }
            }
            let mut acc = NormalForm::one(n);
            for _ in 0..q.power {
                acc = nf_mul(&base, &acc, &img)?;
            }
            let mut target = vec![0u32; n];
            target[q.var] = q.power;
            let lambda = acc
                .coeff_of(&target)
                .as_rat()
                .ok_or(Error::NonRationalCoefficient)?;
            for (mono, _) in acc.terms() {
                if mono != &target {
                    return Err(Error::RelationViolation(format!(
                        "normal element x{}^{} is not mapped to a scalar multiple of itself",
                        q.var + 1,
                        q.power
                    )));
                }
            }
            if lambda.is_zero() {
                return Err(Error::NotInvertible);
            }
            Ok(vec![lambda])
        }
        Algebra::Tensor(l, r) => {
            let nl = l.num_generators();
            let n = alg.num_generators();
            let li: Vec<usize> = (0..nl).collect();
            let ri: Vec<usize> = (nl..n).collect();
            let mut out = quotient_lambdas(l, &mat.submatrix(&li, &li))?;
            out.extend(quotient_lambdas(r, &mat.submatrix(&ri, &ri))?);
            Ok(out)
        }
        _ => Ok(vec![]),
    }
}

/// True when the candidate respects the defining relations. Dimension
/// mismatches are errors; relation failures give Ok(false).
pub fn check_auto(algebra: &Algebra, mat: &Matrix, eps: &[Rat]) -> Result<bool> {
    let n = algebra.num_generators();
    if mat.rows() != n || mat.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: mat.rows().max(mat.cols()),
        });
    }
    if eps.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: eps.len() });
    }
    Ok(Automorphism::filtered(algebra.clone(), mat.clone(), eps.to_vec()).is_ok())
}

/// Certifies that a graded automorphism of a p-distinct skew polynomial
/// ring is diagonal and returns the diagonal scalars.
pub fn classify_skew_auto(a: &SkewPoly, g: &Automorphism) -> Result<Vec<Rat>> {
    if !crate::algebra::p_distinct(a) {
        return Err(Error::NotPDistinct);
    }
    if g.algebra != Algebra::Skew(a.clone()) {
        return Err(Error::UnsupportedAlgebra(
            "automorphism belongs to another algebra".into(),
        ));
    }
    if !g.mat.is_diagonal() {
        return Err(Error::NotDiagonalizableShape);
    }
    Ok(g.mat.diagonal_entries())
}

/// Finite, closure-verified automorphism group.
#[derive(Debug, Clone)]
pub struct AutGroup {
    pub algebra: Algebra,
    pub elements: Vec<Automorphism>,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn trivial(algebra: Algebra) -> Self {
        AutGroup {
            elements: vec![Automorphism::identity(algebra.clone())],
            algebra,
        }
    }
}

/// Closes a generating set under composition (and hence inversion, the
/// closure being finite), erroring out beyond `cap` elements.
pub fn group_closure(gens: &[Automorphism], cap: usize) -> Result<AutGroup> {
    let algebra = gens
        .first()
        .map(|g| g.algebra.clone())
        .ok_or_else(|| Error::UnsupportedAlgebra("empty generator list".into()))?;
    for g in gens {
        if g.algebra != algebra {
            return Err(Error::UnsupportedAlgebra(
                "generators live on different algebras".into(),
            ));
        }
    }
    let id = Automorphism::identity(algebra.clone());
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut elements: Vec<Automorphism> = Vec::new();
    let mut queue: Vec<Automorphism> = Vec::new();
    for e in std::iter::once(id).chain(gens.iter().cloned()) {
        if seen.insert(e.key(), elements.len()).is_none() {
            elements.push(e.clone());
            queue.push(e);
        }
    }
    while let Some(g) = queue.pop() {
        for h in gens {
            let gh = g.compose(h)?;
            if seen.insert(gh.key(), elements.len()).is_none() {
                if elements.len() >= cap {
                    return Err(Error::ClosureExceedsCap(cap));
                }
                elements.push(gh.clone());
                queue.push(gh);
            }
        }
    }
    Ok(AutGroup { algebra, elements })
}

/// Whether G equals its commutator subgroup.
pub fn is_perfect(group: &AutGroup) -> Result<bool> {
    let mut commutators = Vec::new();
    for g in &group.elements {
        for h in &group.elements {
            let c = g
                .compose(h)?
                .compose(&g.inverse()?)?
                .compose(&h.inverse()?)?;
            commutators.push(c);
        }
    }
    let derived = group_closure(&commutators, group.order().max(1))?;
    Ok(derived.order() == group.order())
}

/// Induced automorphism of the Koszul dual: the plain transpose on the dual
/// generator basis, certified against the dual relations.
pub fn koszul_transpose(g: &Automorphism) -> Result<Automorphism> {
    let Algebra::Skew(a) = &g.algebra else {
        return Err(Error::UnsupportedAlgebra(
            "Koszul transpose needs a skew polynomial ring".into(),
        ));
    };
    let dual = crate::algebra::koszul_dual(a)?;
    Automorphism::graded(Algebra::QuantExterior(dual), g.mat.transpose())
        .map_err(|_| Error::DualRelationViolation)
}

/// Ordered k-subsets of 0..n in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Matrix of the induced action on the k-th wedge power: entries are the
/// k x k minors indexed by ordered k-subsets.
pub fn exterior_extend(mat: &Matrix, k: usize) -> Result<Matrix> {
    if !mat.is_square() {
        return Err(Error::NotSquare);
    }
    let n = mat.rows();
    let subsets = k_subsets(n, k);
    let dim = subsets.len();
    let mut out = Matrix::zeros(dim, dim);
    for (col, t) in subsets.iter().enumerate() {
        for (row, s) in subsets.iter().enumerate() {
            out.set(row, col, mat.submatrix(s, t).det()?);
        }
    }
    Ok(out)
}

/// Splits a map on F1 = k + V, given as an (n+1) x (n+1) matrix in the
/// basis (1, x_1..x_n), into linear part and constant part. The map must
/// fix 1 and send F1 into F1.
pub fn filtered_decompose(f1_matrix: &Matrix) -> Result<(Matrix, Vec<Rat>)> {
    if !f1_matrix.is_square() || f1_matrix.rows() == 0 {
        return Err(Error::NotSquare);
    }
    let n = f1_matrix.rows() - 1;
    if !f1_matrix.at(0, 0).is_one() {
        return Err(Error::DoesNotPreserveF1);
    }
    for i in 1..=n {
        if !f1_matrix.at(i, 0).is_zero() {
            return Err(Error::DoesNotPreserveF1);
        }
    }
    let idx: Vec<usize> = (1..=n).collect();
    let sigma = f1_matrix.submatrix(&idx, &idx);
    let eps: Vec<Rat> = (1..=n).map(|j| f1_matrix.at(0, j).clone()).collect();
    Ok((sigma, eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PTable, QuantExterior, Quotient, Weyl};
    use crate::exact::rat_int;

    fn skew3_ex29() -> Algebra {
        // xy = -yx, xz = zx, yz = zy
        Algebra::Skew(
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
        )
    }

    fn mat_ex29() -> Matrix {
        // x -> -y, y -> -x, z -> -z
        Matrix::from_i64_rows(&[&[0, -1, 0], &[-1, 0, 0], &[0, 0, -1]])
    }

    #[test]
    fn check_auto_examples() {
        let a = skew3_ex29();
        assert!(check_auto(&a, &mat_ex29(), &[rat_int(0), rat_int(0), rat_int(0)]).unwrap());

        // swap on p12 = 2 would force p12 = p21, impossible
        let b = Algebra::Skew(
            SkewPoly::new(vec![1, 1], PTable::new(2, vec![ParamScalar::from_i64(2)]).unwrap())
                .unwrap(),
        );
        let swap = Matrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert!(!check_auto(&b, &swap, &[rat_int(0), rat_int(0)]).unwrap());

        // identity passes on every descriptor
        for alg in [a, b, Algebra::Weyl(Weyl::new(2))] {
            let n = alg.num_generators();
            assert!(check_auto(&alg, &Matrix::identity(n), &vec![rat_int(0); n]).unwrap());
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = skew3_ex29();
        let bad = Matrix::identity(2);
        assert!(matches!(
            check_auto(&a, &bad, &[rat_int(0), rat_int(0)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn quotient_certification_records_lambda() {
        // g = -id on k[x1,x2]/(x1^3): g(x1^3) = -x1^3
        let q = Algebra::Quotient(Quotient::new(SkewPoly::commutative(2), 0, 3).unwrap());
        let g = Automorphism::graded(q, Matrix::diagonal(&[rat_int(-1), rat_int(-1)])).unwrap();
        assert_eq!(g.lambdas, vec![rat_int(-1)]);

        // a map not fixing the ideal is rejected
        let q2 = Algebra::Quotient(Quotient::new(SkewPoly::commutative(2), 0, 2).unwrap());
        let shear = Matrix::from_i64_rows(&[&[1, 0], &[1, 1]]); // x1 -> x1 + x2
        assert!(Automorphism::graded(q2, shear).is_err());
    }

    #[test]
    fn classify_skew_examples() {
        let a = SkewPoly::new(
            vec![1, 1, 1],
            PTable::new(
                3,
                vec![
                    ParamScalar::from_i64(2),
                    ParamScalar::from_i64(3),
                    ParamScalar::from_i64(5),
                ],
            )
            .unwrap(),
        )
        .unwrap();
        let alg = Algebra::Skew(a.clone());
        let g = Automorphism::graded(
            alg.clone(),
            Matrix::diagonal(&[rat_int(2), rat_int(3), rat_int(5)]),
        )
        .unwrap();
        assert_eq!(
            classify_skew_auto(&a, &g).unwrap(),
            vec![rat_int(2), rat_int(3), rat_int(5)]
        );

        // non-diagonal candidates already fail certification
        let shear = Matrix::from_i64_rows(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(!check_auto(&alg, &shear, &vec![rat_int(0); 3]).unwrap());

        // diag(-1,-1,-1) on a formal-parameter table
        let b = SkewPoly::new(
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
        .unwrap();
        let g = Automorphism::graded(
            Algebra::Skew(b.clone()),
            Matrix::diagonal(&[rat_int(-1), rat_int(-1), rat_int(-1)]),
        )
        .unwrap();
        assert_eq!(classify_skew_auto(&b, &g).unwrap(), vec![rat_int(-1); 3]);
    }

    #[test]
    fn closure_examples() {
        // order 2
        let a = skew3_ex29();
        let g = Automorphism::graded(a.clone(), mat_ex29()).unwrap();
        let group = group_closure(&[g], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(group.order(), 2);

        // trivial
        let id = Automorphism::identity(a.clone());
        assert_eq!(group_closure(&[id], 10).unwrap().order(), 1);

        // rotation by 90 degrees on k[x,y] has order 4
        let c = Algebra::Skew(SkewPoly::commutative(2));
        let rot = Automorphism::graded(c, Matrix::from_i64_rows(&[&[0, -1], &[1, 0]])).unwrap();
        assert_eq!(group_closure(&[rot], 10).unwrap().order(), 4);

        // the cap errors out on infinite groups
        let c = Algebra::Skew(SkewPoly::commutative(1));
        let scale = Automorphism::graded(c, Matrix::diagonal(&[rat_int(2)])).unwrap();
        assert!(matches!(
            group_closure(&[scale], 50),
            Err(Error::ClosureExceedsCap(50))
        ));
    }

    #[test]
    fn closure_is_closed_under_product_and_inverse() {
        let c = Algebra::Skew(SkewPoly::commutative(2));
        let rot =
            Automorphism::graded(c.clone(), Matrix::from_i64_rows(&[&[0, -1], &[1, 0]])).unwrap();
        let flip = Automorphism::graded(c, Matrix::from_i64_rows(&[&[1, 0], &[0, -1]])).unwrap();
        let group = group_closure(&[rot, flip], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(group.order(), 8); // dihedral
        let keys: std::collections::BTreeSet<String> =
            group.elements.iter().map(|e| e.key()).collect();
        for g in &group.elements {
            assert!(keys.contains(&g.inverse().unwrap().key()));
            for h in &group.elements {
                assert!(keys.contains(&g.compose(h).unwrap().key()));
            }
        }
    }

    #[test]
    fn perfect_group_examples() {
        let c = Algebra::Skew(SkewPoly::commutative(2));
        let g = Automorphism::graded(c.clone(), Matrix::diagonal(&[rat_int(-1), rat_int(-1)]))
            .unwrap();
        let order2 = group_closure(&[g], 10).unwrap();
        assert!(!is_perfect(&order2).unwrap());

        let trivial = AutGroup::trivial(c);
        assert!(is_perfect(&trivial).unwrap());
    }

    #[test]
    fn a5_is_perfect() {
        // the 60-element icosahedral rotation group, realized by its
        // permutation representation on 5 letters
        let c5 = Algebra::Skew(SkewPoly::commutative(5));
        let perm = |img: [usize; 5]| {
            let mut m = Matrix::zeros(5, 5);
            for (i, &j) in img.iter().enumerate() {
                m.set(j, i, Rat::one());
            }
            m
        };
        let three_cycle = Automorphism::graded(c5.clone(), perm([1, 2, 0, 3, 4])).unwrap();
        let five_cycle = Automorphism::graded(c5, perm([1, 2, 3, 4, 0])).unwrap();
        let a5 = group_closure(&[three_cycle, five_cycle], 100).unwrap();
        assert_eq!(a5.order(), 60);
        assert!(is_perfect(&a5).unwrap());
    }

    #[test]
    fn koszul_transpose_examples() {
        let a = skew3_ex29();
        let g = Automorphism::graded(a, mat_ex29()).unwrap();
        let gt = koszul_transpose(&g).unwrap();
        assert_eq!(gt.mat, mat_ex29()); // symmetric matrix
        assert!(matches!(gt.algebra, Algebra::QuantExterior(_)));

        // diagonal stays diagonal
        let d = Algebra::Skew(SkewPoly::commutative(2));
        let g = Automorphism::graded(d, Matrix::diagonal(&[rat_int(2), rat_int(3)])).unwrap();
        assert_eq!(
            koszul_transpose(&g).unwrap().mat,
            Matrix::diagonal(&[rat_int(2), rat_int(3)])
        );

        // permutation matrix transposes to its inverse on the exterior dual
        let c = Algebra::Skew(SkewPoly::commutative(3));
        let perm = Matrix::from_i64_rows(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let g = Automorphism::graded(c, perm.clone()).unwrap();
        assert_eq!(koszul_transpose(&g).unwrap().mat, perm.inverse().unwrap());
    }

    #[test]
    fn koszul_transpose_is_an_involution() {
        let a = skew3_ex29();
        let Algebra::Skew(skew) = &a else { unreachable!() };
        let g = Automorphism::graded(a.clone(), mat_ex29()).unwrap();
        let gt = koszul_transpose(&g).unwrap();
        // dual of dual: transpose back onto the original ring
        let back = Automorphism::graded(Algebra::Skew(skew.clone()), gt.mat.transpose()).unwrap();
        assert_eq!(back.mat, g.mat);
    }

    #[test]
    fn exterior_extend_examples() {
        let m = Matrix::from_i64_rows(&[&[0, -1], &[-1, 0]]);
        let top = exterior_extend(&m, 2).unwrap();
        assert_eq!(top, Matrix::from_i64_rows(&[&[-1]]));

        let id = Matrix::identity(4);
        assert!(exterior_extend(&id, 2).unwrap().is_identity());
        assert_eq!(exterior_extend(&id, 2).unwrap().rows(), 6);

        // top wedge is the determinant
        let m = Matrix::from_i64_rows(&[&[1, 2, 0], &[0, 1, 5], &[1, 0, 3]]);
        assert_eq!(exterior_extend(&m, 3).unwrap().at(0, 0), &m.det().unwrap());
    }

    #[test]
    fn exterior_extend_is_a_homomorphism() {
        let a = Matrix::from_i64_rows(&[&[1, 2, 0], &[0, 1, 5], &[1, 0, 3]]);
        let b = Matrix::from_i64_rows(&[&[2, 0, 1], &[1, 1, 0], &[0, 3, 1]]);
        for k in 0..=3 {
            let lhs = &exterior_extend(&a, k).unwrap() * &exterior_extend(&b, k).unwrap();
            let rhs = exterior_extend(&(&a * &b), k).unwrap();
            assert_eq!(lhs, rhs, "wedge power {k}");
        }
    }

    #[test]
    fn filtered_decompose_examples() {
        // g(x) = x + 1 on k[x]: matrix on (1, x)
        let m = Matrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let (sigma, eps) = filtered_decompose(&m).unwrap();
        assert_eq!(sigma, Matrix::identity(1));
        assert_eq!(eps, vec![rat_int(1)]);

        // graded maps decompose with zero constant part
        let m = Matrix::from_i64_rows(&[&[1, 0, 0], &[0, 0, -1], &[0, 1, 0]]);
        let (sigma, eps) = filtered_decompose(&m).unwrap();
        assert_eq!(sigma, Matrix::from_i64_rows(&[&[0, -1], &[1, 0]]));
        assert!(eps.iter().all(|e| e.is_zero()));

        // shifts decompose as sigma = id, eps = (c_i)
        let m = Matrix::from_i64_rows(&[&[1, 5, 7], &[0, 1, 0], &[0, 0, 1]]);
        let (sigma, eps) = filtered_decompose(&m).unwrap();
        assert!(sigma.is_identity());
        assert_eq!(eps, vec![rat_int(5), rat_int(7)]);

        // not fixing 1, or not preserving F1
        let bad = Matrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert_eq!(filtered_decompose(&bad), Err(Error::DoesNotPreserveF1));
        let bad = Matrix::from_i64_rows(&[&[1, 0], &[3, 1]]);
        assert_eq!(filtered_decompose(&bad), Err(Error::DoesNotPreserveF1));
    }

    #[test]
    fn affine_composition_and_inverse() {
        let w = Algebra::Weyl(Weyl::new(1));
        let shift =
            Automorphism::filtered(w.clone(), Matrix::identity(2), vec![rat_int(1), rat_int(0)])
                .unwrap();
        let rot = Automorphism::graded(w, Matrix::from_i64_rows(&[&[0, -1], &[1, 0]])).unwrap();
        let c = shift.compose(&rot).unwrap();
        // (shift . rot)(x) = shift(y) = y; (shift . rot)(y) = shift(-x) = -x - 1
        assert_eq!(c.mat, Matrix::from_i64_rows(&[&[0, -1], &[1, 0]]));
        assert_eq!(c.eps, vec![rat_int(0), rat_int(-1)]);

        let inv = c.inverse().unwrap();
        assert!(c.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&c).unwrap().is_identity());
    }

    #[test]
    fn weyl_candidates() {
        let w = Algebra::Weyl(Weyl::new(1));
        // x -> x + 1 is an automorphism
        assert!(check_auto(&w, &Matrix::identity(2), &[rat_int(1), rat_int(0)]).unwrap());
        // scaling x alone is not
        assert!(!check_auto(
            &w,
            &Matrix::diagonal(&[rat_int(2), rat_int(1)]),
            &[rat_int(0), rat_int(0)]
        )
        .unwrap());
        // x -> 2x, y -> y/2 is
        assert!(check_auto(
            &w,
            &Matrix::diagonal(&[rat_int(2), crate::exact::rat(1, 2)]),
            &[rat_int(0), rat_int(0)]
        )
        .unwrap());
    }

    #[test]
    fn graded_algebra_rejects_constant_part() {
        let a = Algebra::Skew(SkewPoly::commutative(1));
        assert!(Automorphism::filtered(a, Matrix::identity(1), vec![rat_int(1)]).is_err());
    }

    #[test]
    fn exterior_auto_certification() {
        let e = Algebra::QuantExterior(QuantExterior::exterior(2));
        // any invertible matrix is an automorphism of the plain exterior algebra
        let m = Matrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        assert!(check_auto(&e, &m, &[rat_int(0), rat_int(0)]).unwrap());
        // singular matrices are rejected
        let s = Matrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(!check_auto(&e, &s, &[rat_int(0), rat_int(0)]).unwrap());
    }

    #[test]
    fn tensor_block_structure_enforced() {
        let t = Algebra::tensor(
            Algebra::Skew(SkewPoly::commutative(2)),
            Algebra::QuantExterior(QuantExterior::exterior(2)),
        )
        .unwrap();
        let mut m = Matrix::identity(4);
        m.set(0, 2, rat_int(1)); // cross-block entry
        assert!(!check_auto(&t, &m, &vec![rat_int(0); 4]).unwrap());
        // block diagonal passes
        let g = Matrix::from_i64_rows(&[
            &[0, -1, 0, 0],
            &[1, 0, 0, 0],
            &[0, 0, 0, -1],
            &[0, 0, 1, 0],
        ]);
        assert!(check_auto(&t, &g, &vec![rat_int(0); 4]).unwrap());
    }
}
