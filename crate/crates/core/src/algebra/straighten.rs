use std::collections::BTreeMap;

use super::descriptor::Algebra;
use crate::error::Result;
use crate::exact::ParamScalar;

/// Element written in the PBW basis: ordered monomials (as exponent vectors
/// over the fixed generator order) with scalar coefficients. No zero
/// coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    n_gens: usize,
    terms: BTreeMap<Vec<u32>, ParamScalar>,
}

impl NormalForm {
    pub fn zero(n_gens: usize) -> Self {
        NormalForm {
            n_gens,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n_gens: usize) -> Self {
        let mut nf = NormalForm::zero(n_gens);
        nf.add_term(vec![0; n_gens], ParamScalar::one());
        nf
    }

    pub fn monomial(n_gens: usize, mono: Vec<u32>, coeff: ParamScalar) -> Self {
        let mut nf = NormalForm::zero(n_gens);
        nf.add_term(mono, coeff);
        nf
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, mono: &[u32]) -> ParamScalar {
        self.terms.get(mono).cloned().unwrap_or_else(ParamScalar::zero)
    }

    pub fn add_term(&mut self, mono: Vec<u32>, coeff: ParamScalar) {
        debug_assert_eq!(mono.len(), self.n_gens);
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(c) => {
                let s = &*c + &coeff;
                if s.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(mono, coeff);
            }
        }
    }

    pub fn add(&mut self, other: &NormalForm) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &ParamScalar) -> NormalForm {
        let mut out = NormalForm::zero(self.n_gens);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Maximal total weighted degree among the monomials, or None for zero.
    pub fn max_degree(&self, degrees: &[u32]) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.iter().zip(degrees).map(|(&e, &d)| e * d).sum())
            .max()
    }

    /// Terms of exactly the given weighted degree.
    pub fn degree_part(&self, degrees: &[u32], deg: u32) -> NormalForm {
        let mut out = NormalForm::zero(self.n_gens);
        for (m, c) in &self.terms {
            let d: u32 = m.iter().zip(degrees).map(|(&e, &d)| e * d).sum();
            if d == deg {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }
}

/// Exponent vector of an ordered word.
pub fn exponents_of(n_gens: usize, word: &[usize]) -> Vec<u32> {
    let mut e = vec![0u32; n_gens];
    for &g in word {
        e[g] += 1;
    }
    e
}

/// Ordered word realizing an exponent vector.
pub fn word_of(mono: &[u32]) -> Vec<usize> {
    let mut w = Vec::new();
    for (g, &e) in mono.iter().enumerate() {
        for _ in 0..e {
            w.push(g);
        }
    }
    w
}

/// Which adjacent pair to rewrite first. Both strategies must produce the
/// same normal form; the choice exists so that confluence can be tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    LeftmostDescent,
    RightmostDescent,
}

enum PairAction {
    /// The pair stands in the output order.
    InOrder,
    /// The word vanishes (a square in an exterior-type factor).
    Zero,
    /// Replacement words with multipliers.
    Rewrite(Vec<(Vec<usize>, ParamScalar)>),
}

fn square_is_zero(alg: &Algebra, idx: usize) -> bool {
    match alg {
        Algebra::QuantExterior(_) => true,
        Algebra::Tensor(l, r) => {
            let nl = l.num_generators();
            if idx < nl {
                square_is_zero(l, idx)
            } else {
                square_is_zero(r, idx - nl)
            }
        }
        _ => false,
    }
}

fn is_descent(alg: &Algebra, a: usize, b: usize) -> bool {
    a > b || (a == b && square_is_zero(alg, a))
}

/// Action on an adjacent pair (a, b) appearing in that order in a word.
fn pair_action(alg: &Algebra, a: usize, b: usize) -> Result<PairAction> {
    if a < b {
        return Ok(PairAction::InOrder);
    }
    if a == b && !square_is_zero(alg, a) {
        return Ok(PairAction::InOrder);
    }
    match alg {
        Algebra::Skew(s) => Ok(PairAction::Rewrite(vec![(vec![b, a], s.p.get(a, b))])),
        Algebra::QuantExterior(e) => {
            if a == b {
                return Ok(PairAction::Zero);
            }
            let c = -&e.p.get(a, b).inverse()?;
            Ok(PairAction::Rewrite(vec![(vec![b, a], c)]))
        }
        Algebra::QuantumWeyl(w) => {
            let n = w.n;
            let q = &w.q;
            let q_inv = q.inverse()?;
            if a < n && b < n {
                // x_a x_b = p_ab q^-1 x_b x_a
                Ok(PairAction::Rewrite(vec![(
                    vec![b, a],
                    &w.p.get(a, b) * &q_inv,
                )]))
            } else if a >= n && b >= n {
                let (i, j) = (a - n, b - n);
                // y_i y_j = p_ij q y_j y_i
                Ok(PairAction::Rewrite(vec![(vec![b, a], &w.p.get(i, j) * q)]))
            } else {
                // a is y_i, b is x_j
                let (i, j) = (a - n, b);
                if i != j {
                    // y_i x_j = p_ij^-1 q x_j y_i
                    Ok(PairAction::Rewrite(vec![(
                        vec![b, a],
                        &w.p.get(i, j).inverse()? * q,
                    )]))
                } else {
                    // y_i x_i = 1 + q^2 x_i y_i + (q^2 - 1) sum_{l>i} x_l y_l
                    let q2 = q * q;
                    let q2m1 = &q2 - &ParamScalar::one();
                    let mut terms = vec![
                        (vec![], ParamScalar::one()),
                        (vec![j, a], q2),
                    ];
                    if !q2m1.is_zero() {
                        for l in i + 1..n {
                            terms.push((vec![l, n + l], q2m1.clone()));
                        }
                    }
                    Ok(PairAction::Rewrite(terms))
                }
            }
        }
        Algebra::Weyl(w) => {
            let n = w.n;
            if a >= n && b < n && a - n == b {
                // y_i x_i = 1 + x_i y_i
                Ok(PairAction::Rewrite(vec![
                    (vec![], ParamScalar::one()),
                    (vec![b, a], ParamScalar::one()),
                ]))
            } else {
                Ok(PairAction::Rewrite(vec![(vec![b, a], ParamScalar::one())]))
            }
        }
        Algebra::Tensor(l, r) => {
            let nl = l.num_generators();
            if a < nl && b < nl {
                pair_action(l, a, b)
            } else if a >= nl && b >= nl {
                match pair_action(r, a - nl, b - nl)? {
                    PairAction::InOrder => Ok(PairAction::InOrder),
                    PairAction::Zero => Ok(PairAction::Zero),
                    PairAction::Rewrite(terms) => Ok(PairAction::Rewrite(
                        terms
                            .into_iter()
                            .map(|(w, c)| (w.into_iter().map(|g| g + nl).collect(), c))
                            .collect(),
                    )),
                }
            } else {
                // factors commute inside the tensor product
                Ok(PairAction::Rewrite(vec![(vec![b, a], ParamScalar::one())]))
            }
        }
        Algebra::Quotient(q) => pair_action(&Algebra::Skew(q.base.clone()), a, b),
    }
}

/// Drops monomials that exceed a per-generator exponent bound (the quotient
/// ideal of x_var^power is spanned by exactly those monomials).
fn reduce_bounds(alg: &Algebra, nf: &mut NormalForm) {
    let n = nf.n_gens;
    let bounds: Vec<Option<u32>> = (0..n).map(|i| alg.exponent_bound(i)).collect();
    if bounds.iter().all(|b| b.is_none()) {
        return;
    }
    nf.terms.retain(|m, _| {
        m.iter()
            .zip(&bounds)
            .all(|(&e, b)| b.map_or(true, |bound| e <= bound))
    });
}

pub fn straighten_word_with(
    alg: &Algebra,
    word: &[usize],
    coeff: ParamScalar,
    strategy: Strategy,
) -> Result<NormalForm> {
    let n = alg.num_generators();
    let mut out = NormalForm::zero(n);
    let mut stack: Vec<(Vec<usize>, ParamScalar)> = vec![(word.to_vec(), coeff)];
    while let Some((w, c)) = stack.pop() {
        if c.is_zero() {
            continue;
        }
        let descent = {
            let positions = 0..w.len().saturating_sub(1);
            match strategy {
                Strategy::LeftmostDescent => {
                    positions.into_iter().find(|&i| is_descent(alg, w[i], w[i + 1]))
                }
                Strategy::RightmostDescent => positions
                    .into_iter()
                    .rev()
                    .find(|&i| is_descent(alg, w[i], w[i + 1])),
            }
        };
        match descent {
            None => out.add_term(exponents_of(n, &w), c),
            Some(i) => match pair_action(alg, w[i], w[i + 1])? {
                PairAction::InOrder => unreachable!("descent positions get an action"),
                PairAction::Zero => {}
                PairAction::Rewrite(terms) => {
                    for (rep, f) in terms {
                        let mut nw = Vec::with_capacity(w.len() - 2 + rep.len());
                        nw.extend_from_slice(&w[..i]);
                        nw.extend_from_slice(&rep);
                        nw.extend_from_slice(&w[i + 2..]);
                        stack.push((nw, &c * &f));
                    }
                }
            },
        }
    }
    reduce_bounds(alg, &mut out);
    Ok(out)
}

/// Exact normal form of a scalar multiple of a word in the generators.
pub fn straighten_word(alg: &Algebra, word: &[usize], coeff: ParamScalar) -> Result<NormalForm> {
    straighten_word_with(alg, word, coeff, Strategy::LeftmostDescent)
}

/// Product of two normal forms.
pub fn nf_mul(alg: &Algebra, a: &NormalForm, b: &NormalForm) -> Result<NormalForm> {
    let n = alg.num_generators();
    let mut out = NormalForm::zero(n);
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let mut w = word_of(ma);
            w.extend(word_of(mb));
            let nf = straighten_word(alg, &w, ca * cb)?;
            out.add(&nf);
        }
    }
    Ok(out)
}
