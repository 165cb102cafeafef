use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    factor_rational, lattice_min_multiple, Matrix, ParamScalar, Poly, Rat, RatFun,
};

/// Table of the structure constants p_ij of a skew relation set, stored for
/// i < j only; p_ii = 1 and p_ji = p_ij^-1 are derived. Every entry must be
/// an invertible (single-term) scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PTable {
    n: usize,
    upper: Vec<ParamScalar>,
}

impl PTable {
    /// `upper` lists p_ij for i < j in row-major order:
    /// (0,1), (0,2), ..., (0,n-1), (1,2), ...
    pub fn new(n: usize, upper: Vec<ParamScalar>) -> Result<Self> {
        if upper.len() != n * (n - 1) / 2 {
            return Err(Error::DimensionMismatch {
                expected: n * (n - 1) / 2,
                got: upper.len(),
            });
        }
        for p in &upper {
            if !p.is_single_term() {
                return Err(Error::NonInvertibleCoefficient);
            }
        }
        Ok(PTable { n, upper })
    }

    pub fn ones(n: usize) -> Self {
        PTable {
            n,
            upper: vec![ParamScalar::one(); n * (n - 1) / 2],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn upper_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        // offset of row i plus the position of j within the row
        i * self.n - i * (i + 1) / 2 + (j - i - 1)
    }

    /// p_ij for arbitrary i, j.
    pub fn get(&self, i: usize, j: usize) -> ParamScalar {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => ParamScalar::one(),
            Ordering::Less => self.upper[self.upper_index(i, j)].clone(),
            Ordering::Greater => self.upper[self.upper_index(j, i)]
                .inverse()
                .expect("entries are validated invertible"),
        }
    }

    pub fn upper_entries(&self) -> &[ParamScalar] {
        &self.upper
    }

    pub fn is_commutative(&self) -> bool {
        self.upper.iter().all(|p| p.is_one())
    }

    pub fn is_numeric(&self) -> bool {
        self.upper.iter().all(|p| p.is_numeric())
    }
}

/// Skew polynomial ring k_p[x_1..x_n] with relations x_i x_j = p_ij x_j x_i,
/// graded by the (weighted) generator degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewPoly {
    pub degrees: Vec<u32>,
    pub p: PTable,
}

impl SkewPoly {
    pub fn new(degrees: Vec<u32>, p: PTable) -> Result<Self> {
        if p.n() != degrees.len() {
            return Err(Error::DimensionMismatch {
                expected: degrees.len(),
                got: p.n(),
            });
        }
        if degrees.iter().any(|&d| d == 0) {
            return Err(Error::UnsupportedAlgebra("generator of degree 0".into()));
        }
        Ok(SkewPoly { degrees, p })
    }

    /// Commutative polynomial ring on n degree-1 generators.
    pub fn commutative(n: usize) -> Self {
        SkewPoly {
            degrees: vec![1; n],
            p: PTable::ones(n),
        }
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }
}

/// Quantized exterior algebra: x_i^2 = 0, x_i x_j = -p_ij^-1 x_j x_i.
/// The classical exterior algebra is the all-ones table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantExterior {
    pub p: PTable,
}

impl QuantExterior {
    pub fn new(p: PTable) -> Self {
        QuantExterior { p }
    }

    pub fn exterior(n: usize) -> Self {
        QuantExterior { p: PTable::ones(n) }
    }

    pub fn n(&self) -> usize {
        self.p.n()
    }
}

/// Quantum Weyl algebra A_n(q, p_ij) on x_1..x_n, y_1..y_n with
///   x_i x_j = p_ij q x_j x_i            (i < j)
///   y_i y_j = p_ij q^-1 y_j y_i         (i < j)
///   y_i x_j = p_ij^-1 q x_j y_i         (i != j)
///   y_i x_i = 1 + q^2 x_i y_i + (q^2 - 1) sum_{j>i} x_j y_j.
/// Filtered, with every generator in degree 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumWeyl {
    pub n: usize,
    pub q: ParamScalar,
    pub p: PTable,
}

impl QuantumWeyl {
    pub fn new(n: usize, q: ParamScalar, p: PTable) -> Result<Self> {
        if p.n() != n {
            return Err(Error::DimensionMismatch { expected: n, got: p.n() });
        }
        if !q.is_single_term() {
            return Err(Error::NonInvertibleCoefficient);
        }
        Ok(QuantumWeyl { n, q, p })
    }

    /// Skew polynomial ring on the 2n generators carrying the top-degree
    /// parts of the relations. This models the associated graded ring only
    /// when q^2 = 1: for q^2 != 1 the homogenized relation
    /// y_i x_i = q^2 x_i y_i + (q^2 - 1) sum_{j>i} x_j y_j keeps its mixing
    /// sum, and Gr A_n(q, p) is an iterated Ore extension that is not a
    /// skew polynomial ring on these generators.
    pub fn associated_graded(&self) -> Result<SkewPoly> {
        let q2 = &self.q * &self.q;
        if !q2.is_one() {
            return Err(Error::UnsupportedCombination(
                "associated graded skew model needs q^2 = 1".into(),
            ));
        }
        Ok(self.associated_graded_unchecked())
    }

    fn associated_graded_unchecked(&self) -> SkewPoly {
        let n = self.n;
        let q = &self.q;
        let q_inv = q.inverse().expect("validated invertible");
        let mut upper = Vec::new();
        // generator order x_1..x_n, y_1..y_n
        for a in 0..2 * n {
            for b in a + 1..2 * n {
                let entry = if a < n && b < n {
                    // x_i x_j = p_ij q x_j x_i
                    &self.p.get(a, b) * q
                } else if a < n && b >= n {
                    let (i, j) = (a, b - n);
                    if i == j {
                        // y_i x_i -> q^2 x_i y_i at the top degree
                        &q_inv * &q_inv
                    } else {
                        // from y_j x_i = p_ji^-1 q x_i y_j
                        &self.p.get(j, i) * &q_inv
                    }
                } else {
                    let (i, j) = (a - n, b - n);
                    &self.p.get(i, j) * &q_inv
                };
                upper.push(entry);
            }
        }
        SkewPoly {
            degrees: vec![1; 2 * n],
            p: PTable { n: 2 * n, upper },
        }
    }
}

/// Classical Weyl algebra A_n: [x_i, x_j] = [y_i, y_j] = 0, [y_i, x_j] = delta_ij.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weyl {
    pub n: usize,
}

impl Weyl {
    pub fn new(n: usize) -> Self {
        Weyl { n }
    }

    /// The same relation set as A_n(q, p) at q = 1, p = 1.
    pub fn as_quantum(&self) -> QuantumWeyl {
        QuantumWeyl {
            n: self.n,
            q: ParamScalar::one(),
            p: PTable::ones(self.n),
        }
    }

    /// Gr A_n is the commutative polynomial ring on 2n generators.
    pub fn associated_graded(&self) -> SkewPoly {
        SkewPoly::commutative(2 * self.n)
    }
}

/// Quotient of a skew polynomial ring by the normal element x_var^power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub base: SkewPoly,
    pub var: usize,
    pub power: u32,
}

impl Quotient {
    pub fn new(base: SkewPoly, var: usize, power: u32) -> Result<Self> {
        if var >= base.n() {
            return Err(Error::DimensionMismatch {
                expected: base.n(),
                got: var,
            });
        }
        if power == 0 {
            return Err(Error::UnsupportedAlgebra("quotient by x^0".into()));
        }
        Ok(Quotient { base, var, power })
    }

    /// Degree of the normal element x_var^power.
    pub fn element_degree(&self) -> u32 {
        self.power * self.base.degrees[self.var]
    }
}

/// Descriptor of every algebra class the toolkit knows how to handle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algebra {
    Skew(SkewPoly),
    QuantExterior(QuantExterior),
    QuantumWeyl(QuantumWeyl),
    Weyl(Weyl),
    Tensor(Box<Algebra>, Box<Algebra>),
    Quotient(Quotient),
}

impl Algebra {
    pub fn tensor(left: Algebra, right: Algebra) -> Result<Algebra> {
        if left.is_filtered() || right.is_filtered() {
            return Err(Error::UnsupportedAlgebra(
                "tensor factors must be graded".into(),
            ));
        }
        Ok(Algebra::Tensor(Box::new(left), Box::new(right)))
    }

    pub fn num_generators(&self) -> usize {
        match self {
            Algebra::Skew(a) => a.n(),
            Algebra::QuantExterior(a) => a.n(),
            Algebra::QuantumWeyl(a) => 2 * a.n,
            Algebra::Weyl(a) => 2 * a.n,
            Algebra::Tensor(l, r) => l.num_generators() + r.num_generators(),
            Algebra::Quotient(q) => q.base.n(),
        }
    }

    pub fn generator_degrees(&self) -> Vec<u32> {
        match self {
            Algebra::Skew(a) => a.degrees.clone(),
            Algebra::QuantExterior(a) => vec![1; a.n()],
            Algebra::QuantumWeyl(a) => vec![1; 2 * a.n],
            Algebra::Weyl(a) => vec![1; 2 * a.n],
            Algebra::Tensor(l, r) => {
                let mut d = l.generator_degrees();
                d.extend(r.generator_degrees());
                d
            }
            Algebra::Quotient(q) => q.base.degrees.clone(),
        }
    }

    pub fn generator_names(&self) -> Vec<String> {
        match self {
            Algebra::Skew(a) => (1..=a.n()).map(|i| format!("x{i}")).collect(),
            Algebra::QuantExterior(a) => (1..=a.n()).map(|i| format!("x{i}")).collect(),
            Algebra::QuantumWeyl(a) => (1..=a.n)
                .map(|i| format!("x{i}"))
                .chain((1..=a.n).map(|i| format!("y{i}")))
                .collect(),
            Algebra::Weyl(a) => (1..=a.n)
                .map(|i| format!("x{i}"))
                .chain((1..=a.n).map(|i| format!("y{i}")))
                .collect(),
            Algebra::Tensor(l, r) => {
                let mut names: Vec<String> =
                    l.generator_names().iter().map(|s| format!("l.{s}")).collect();
                names.extend(r.generator_names().iter().map(|s| format!("r.{s}")));
                names
            }
            Algebra::Quotient(q) => (1..=q.base.n()).map(|i| format!("x{i}")).collect(),
        }
    }

    /// Filtered algebras carry affine automorphisms; graded ones do not.
    pub fn is_filtered(&self) -> bool {
        matches!(self, Algebra::QuantumWeyl(_) | Algebra::Weyl(_))
    }

    /// Upper bound on the exponent of generator `idx` in a monomial,
    /// or None when unbounded.
    pub(crate) fn exponent_bound(&self, idx: usize) -> Option<u32> {
        match self {
            Algebra::Skew(_) | Algebra::QuantumWeyl(_) | Algebra::Weyl(_) => None,
            Algebra::QuantExterior(_) => Some(1),
            Algebra::Tensor(l, r) => {
                let nl = l.num_generators();
                if idx < nl {
                    l.exponent_bound(idx)
                } else {
                    r.exponent_bound(idx - nl)
                }
            }
            Algebra::Quotient(q) => {
                if idx == q.var {
                    Some(q.power - 1)
                } else {
                    None
                }
            }
        }
    }

    /// Hilbert series of the underlying graded vector space (the associated
    /// graded ring for the filtered classes).
    pub fn hilbert_series(&self) -> RatFun {
        match self {
            Algebra::Skew(a) => skew_hilbert(&a.degrees),
            Algebra::QuantExterior(a) => {
                RatFun::from_poly(Poly::from_i64(&[1, 1]).pow(a.n() as u32))
            }
            Algebra::QuantumWeyl(a) => skew_hilbert(&vec![1; 2 * a.n]),
            Algebra::Weyl(a) => skew_hilbert(&vec![1; 2 * a.n]),
            Algebra::Tensor(l, r) => &l.hilbert_series() * &r.hilbert_series(),
            Algebra::Quotient(q) => {
                let s = q.element_degree() as usize;
                let factor = RatFun::from_poly(
                    &Poly::one() - &Poly::monomial(Rat::one(), s),
                );
                &factor * &skew_hilbert(&q.base.degrees)
            }
        }
    }

    /// Gorenstein data (d, l): injective dimension and degree shift of the
    /// catalogue entry.
    pub fn gorenstein_data(&self) -> Result<(i64, i64)> {
        match self {
            Algebra::Skew(a) => Ok((
                a.n() as i64,
                a.degrees.iter().map(|&d| d as i64).sum(),
            )),
            Algebra::QuantExterior(a) => Ok((0, -(a.n() as i64))),
            Algebra::QuantumWeyl(a) => Ok((2 * a.n as i64, 2 * a.n as i64)),
            Algebra::Weyl(a) => Ok((2 * a.n as i64, 2 * a.n as i64)),
            Algebra::Tensor(l, r) => {
                let (d1, l1) = l.gorenstein_data()?;
                let (d2, l2) = r.gorenstein_data()?;
                Ok((d1 + d2, l1 + l2))
            }
            Algebra::Quotient(q) => {
                let base = Algebra::Skew(q.base.clone());
                let (d, l) = base.gorenstein_data()?;
                Ok((d - 1, l - q.element_degree() as i64))
            }
        }
    }

    /// All ordered monomials of weighted degree `deg`, as exponent vectors.
    /// For the filtered classes this is a basis of F_deg/F_(deg-1).
    pub fn graded_basis(&self, deg: u32) -> Vec<Vec<u32>> {
        let degrees = self.generator_degrees();
        let bounds: Vec<Option<u32>> =
            (0..degrees.len()).map(|i| self.exponent_bound(i)).collect();
        let mut out = Vec::new();
        let mut current = vec![0u32; degrees.len()];
        enumerate_rec(&degrees, &bounds, 0, deg, &mut current, &mut out);
        out
    }
}

fn skew_hilbert(degrees: &[u32]) -> RatFun {
    let mut den = Poly::one();
    for &d in degrees {
        den = &den * &(&Poly::one() - &Poly::monomial(Rat::one(), d as usize));
    }
    RatFun::new(Poly::one(), den).expect("nonzero denominator")
}

fn enumerate_rec(
    degrees: &[u32],
    bounds: &[Option<u32>],
    idx: usize,
    remaining: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if idx == degrees.len() {
        if remaining == 0 {
            out.push(current.clone());
        }
        return;
    }
    let max_e = remaining / degrees[idx];
    let max_e = match bounds[idx] {
        Some(b) => max_e.min(b),
        None => max_e,
    };
    for e in 0..=max_e {
        current[idx] = e;
        enumerate_rec(degrees, bounds, idx + 1, remaining - e * degrees[idx], current, out);
    }
    current[idx] = 0;
}

/// Koszul dual of a quadratic skew polynomial ring: the quantized exterior
/// algebra on the same p-table.
pub fn koszul_dual(a: &SkewPoly) -> Result<QuantExterior> {
    if a.degrees.iter().any(|&d| d != 1) {
        return Err(Error::NotQuadratic);
    }
    Ok(QuantExterior { p: a.p.clone() })
}

/// Pairwise distinctness of the entries {p_ij : i < j}.
pub fn p_distinct(a: &SkewPoly) -> bool {
    let ps = a.p.upper_entries();
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            if ps[i] == ps[j] {
                return false;
            }
        }
    }
    true
}

/// Strict variant: additionally no entry equals 1 and no entry equals the
/// inverse of another (or of itself).
pub fn p_distinct_strict(a: &SkewPoly) -> bool {
    if !p_distinct(a) {
        return false;
    }
    let ps = a.p.upper_entries();
    for (i, p) in ps.iter().enumerate() {
        if p.is_one() {
            return false;
        }
        let inv = p.inverse().expect("validated invertible");
        for q in &ps[i..] {
            if *q == inv {
                return false;
            }
        }
    }
    true
}

/// Whether q is generic with respect to the multiplicative subgroup
/// generated by the parameters: no positive power of q lies in it.
/// Numeric parameters decide by integer-lattice membership; formal
/// parameters are multiplicatively free, so genericity reduces to symbol
/// disjointness. Mixed sets are rejected.
pub fn q_generic(q: &ParamScalar, ps: &[ParamScalar]) -> Result<bool> {
    if q.is_zero() || ps.iter().any(|p| p.is_zero()) {
        return Err(Error::ZeroParameter);
    }
    let q_numeric = q.is_numeric();
    let all_numeric = ps.iter().all(|p| p.is_numeric());
    let none_numeric_formal = ps.iter().all(|p| !p.is_numeric());
    if q_numeric && all_numeric {
        let v = factor_rational(&q.as_rat().unwrap())?;
        let basis: Vec<_> = ps
            .iter()
            .map(|p| factor_rational(&p.as_rat().unwrap()))
            .collect::<Result<_>>()?;
        return Ok(lattice_min_multiple(&v, &basis).is_none());
    }
    if !q_numeric && (ps.is_empty() || none_numeric_formal) {
        let qsyms = q.symbols();
        let shared = ps.iter().any(|p| p.symbols().intersection(&qsyms).next().is_some());
        return Ok(!shared);
    }
    Err(Error::MixedParameters)
}

/// Whether the degree-1 element with coefficient vector `v` is normal in `a`:
/// for every generator x_j there is a degree-1 element w_j with
/// x_j.v = v.w_j, decided by exact linear solves in the degree-2 component.
/// Requires a numeric p-table.
pub fn is_normal_degree1(v: &[Rat], a: &SkewPoly) -> Result<bool> {
    let n = a.n();
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: v.len() });
    }
    if a.degrees.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::UnsupportedAlgebra(
            "normality test needs equal generator degrees".into(),
        ));
    }
    if !a.p.is_numeric() {
        return Err(Error::FormalParameterUnsupported);
    }
    if v.iter().all(|c| c.is_zero()) {
        return Ok(true);
    }
    let alg = Algebra::Skew(a.clone());
    let d = a.degrees[0];
    let basis2 = alg.graded_basis(2 * d);
    let index_of = |m: &Vec<u32>| basis2.iter().position(|b| b == m).unwrap();

    // Column m of the system: coordinates of v * x_m in the degree-2 basis.
    let mut cols = Vec::with_capacity(n);
    for m in 0..n {
        let mut col = vec![Rat::zero(); basis2.len()];
        for (i, ci) in v.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let nf = super::straighten::straighten_word(
                &alg,
                &[i, m],
                ParamScalar::from_rat(ci.clone()),
            )?;
            for (mono, c) in nf.terms() {
                let r = c.as_rat().ok_or(Error::NonRationalCoefficient)?;
                col[index_of(mono)] += r;
            }
        }
        cols.push(col);
    }
    let sys = Matrix::from_fn(basis2.len(), n, |r, c| cols[c][r].clone());

    for j in 0..n {
        let mut rhs = vec![Rat::zero(); basis2.len()];
        for (i, ci) in v.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let nf = super::straighten::straighten_word(
                &alg,
                &[j, i],
                ParamScalar::from_rat(ci.clone()),
            )?;
            for (mono, c) in nf.terms() {
                let r = c.as_rat().ok_or(Error::NonRationalCoefficient)?;
                rhs[index_of(mono)] += r;
            }
        }
        if sys.solve(&rhs).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
