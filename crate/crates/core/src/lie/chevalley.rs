use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::roots::RootSystem;
use crate::error::{Error, Result};
use crate::exact::{rat_int, Matrix, Rat};

/// Simple Lie algebra in a Chevalley basis: h_1..h_rank followed by the
/// positive root vectors in root order, then the negative ones. The full
/// bracket table carries integer structure constants with
/// N(alpha, beta) = +-(p+1); signs are fixed by the deterministic
/// extraspecial-pair convention under the (height, lex) root order.
#[derive(Debug, Clone)]
pub struct ChevalleyLieAlgebra {
    pub rs: RootSystem,
    pub dim: usize,
    table: Vec<Vec<(usize, i64)>>,
}

/// Basis index helpers.
impl ChevalleyLieAlgebra {
    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn h_index(&self, i: usize) -> usize {
        i
    }

    pub fn e_index(&self, pos_root: usize) -> usize {
        self.rs.rank + pos_root
    }

    pub fn f_index(&self, pos_root: usize) -> usize {
        self.rs.rank + self.rs.num_positive() + pos_root
    }

    pub fn basis_label(&self, idx: usize) -> String {
        let r = self.rs.rank;
        let np = self.rs.num_positive();
        if idx < r {
            format!("h{}", idx + 1)
        } else if idx < r + np {
            format!("e{}", idx - r + 1)
        } else {
            format!("f{}", idx - r - np + 1)
        }
    }

    /// Bracket of two basis elements as a sparse integer vector.
    pub fn bracket_basis(&self, u: usize, v: usize) -> &[(usize, i64)] {
        &self.table[u * self.dim + v]
    }

    /// Bracket of two dense rational vectors.
    pub fn bracket_vec(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (u, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (v, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                for &(w, c) in self.bracket_basis(u, v) {
                    out[w] += ca * cb * rat_int(c);
                }
            }
        }
        out
    }

    /// Matrix of ad(x) on the basis: column j holds [x, b_j].
    pub fn ad_matrix(&self, x: &[Rat]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for (u, cx) in x.iter().enumerate() {
                if cx.is_zero() {
                    continue;
                }
                for &(w, c) in self.bracket_basis(u, j) {
                    let v = m.at(w, j) + cx * rat_int(c);
                    m.set(w, j, v);
                }
            }
        }
        m
    }

    /// Dimension of the span of all brackets [b_u, b_v]; equals dim for a
    /// simple algebra. Returns an echelonized basis of the derived
    /// subalgebra.
    pub fn derived_subalgebra_basis(&self) -> Vec<Vec<Rat>> {
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        'outer: for u in 0..self.dim {
            for v in u + 1..self.dim {
                let entry = self.bracket_basis(u, v);
                if entry.is_empty() {
                    continue;
                }
                let mut vec = vec![Rat::zero(); self.dim];
                for &(w, c) in entry {
                    vec[w] = rat_int(c);
                }
                reduce_against(&mut vec, &rows);
                if let Some(p) = vec.iter().position(|c| !c.is_zero()) {
                    let inv = Rat::one() / &vec[p];
                    for c in vec.iter_mut() {
                        *c = &*c * &inv;
                    }
                    rows.push(vec);
                    rows.sort_by_key(|r| r.iter().position(|c| !c.is_zero()).unwrap());
                    if rows.len() == self.dim {
                        break 'outer;
                    }
                }
            }
        }
        rows
    }
}

fn reduce_against(vec: &mut [Rat], rows: &[Vec<Rat>]) {
    for row in rows {
        let p = row.iter().position(|c| !c.is_zero()).unwrap();
        if !vec[p].is_zero() {
            let f = vec[p].clone();
            for (a, b) in vec.iter_mut().zip(row) {
                *a = &*a - &(&f * b);
            }
        }
    }
}

/// Tiny deterministic PRNG for sampled verification (xorshift64*).
pub(crate) struct SmallRng(u64);

impl SmallRng {
    pub fn new(seed: u64) -> Self {
        SmallRng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

struct Builder {
    rs: RootSystem,
    /// N(alpha, beta) for positive root indices with alpha + beta positive.
    n_pos: BTreeMap<(usize, usize), i64>,
}

impl Builder {
    /// N for a pair of positive roots, by table lookup.
    fn n_pp(&self, a: usize, b: usize) -> Option<i64> {
        self.n_pos.get(&(a, b)).copied()
    }

    /// N(x, -y) for positive indices x != y with x - y a root; None when
    /// x - y is not a root (constant 0) and undefined for x = y.
    fn n_mixed(&self, x: usize, y: usize) -> Option<Rat> {
        let cx = &self.rs.positive[x];
        let cy = &self.rs.positive[y];
        let d: Vec<i64> = cx.iter().zip(cy).map(|(a, b)| a - b).collect();
        if d.iter().all(|&c| c == 0) {
            return None;
        }
        match self.rs.signed_index(&d) {
            None => None,
            Some((false, di)) => {
                // x = y + delta: N(x, -y) = -(delta,delta)/(x,x) N(y, delta)
                let n = self.n_pp(y, di)?;
                let ratio = self.rs.norm2_of(&d) / self.rs.norm2_of(cx);
                Some(-(ratio * rat_int(n)))
            }
            Some((true, di)) => {
                // y = x + delta': N(x, -y) = (delta',delta')/(y,y) N(delta', x)
                let n = self.n_pp(di, x)?;
                let dp: Vec<i64> = d.iter().map(|c| -c).collect();
                let ratio = self.rs.norm2_of(&dp) / self.rs.norm2_of(cy);
                Some(ratio * rat_int(n))
            }
        }
    }

    /// Fills n_pos by height induction with the extraspecial-pair choice.
    fn fill(&mut self) -> Result<()> {
        let np = self.rs.num_positive();
        for gi in 0..np {
            let gamma = self.rs.positive[gi].clone();
            if RootSystem::height(&gamma) < 2 {
                continue;
            }
            // special pairs (a, b), a < b in the root order, a + b = gamma
            let mut special: Vec<(usize, usize)> = Vec::new();
            for ai in 0..gi {
                let alpha = &self.rs.positive[ai];
                let beta: Vec<i64> = gamma.iter().zip(alpha).map(|(g, a)| g - a).collect();
                if let Some(bi) = self.rs.pos_index(&beta) {
                    if ai < bi {
                        special.push((ai, bi));
                    }
                }
            }
            if special.is_empty() {
                return Err(Error::InternalInconsistency(format!(
                    "no special pair for positive root {gamma:?}"
                )));
            }
            let (e_i, z_i) = special[0]; // minimal alpha: the extraspecial pair
            let p = self
                .rs
                .string_down(&self.rs.positive[e_i].clone(), &self.rs.positive[z_i].clone());
            self.insert_pair(e_i, z_i, p + 1);

            for &(ai, bi) in special.iter().skip(1) {
                let gg = self.rs.norm2_of(&gamma);
                // terms of the four-root identity on (eps, zeta, -alpha, -beta)
                let mut total = Rat::zero();
                if let Some(n1) = self.n_mixed(z_i, ai) {
                    let n2 = self
                        .n_mixed(e_i, bi)
                        .ok_or_else(|| Error::InternalInconsistency("broken pairing".into()))?;
                    let dz: Vec<i64> = self.rs.positive[z_i]
                        .iter()
                        .zip(&self.rs.positive[ai])
                        .map(|(a, b)| a - b)
                        .collect();
                    total += n1 * n2 / self.rs.norm2_of(&dz);
                }
                if let Some(n1) = self.n_mixed(e_i, ai) {
                    // N(-alpha, eps) = -N(eps, -alpha)
                    let n2 = self
                        .n_mixed(z_i, bi)
                        .ok_or_else(|| Error::InternalInconsistency("broken pairing".into()))?;
                    let de: Vec<i64> = self.rs.positive[e_i]
                        .iter()
                        .zip(&self.rs.positive[ai])
                        .map(|(a, b)| a - b)
                        .collect();
                    total += -(n1 * n2) / self.rs.norm2_of(&de);
                }
                let n_ez = rat_int(self.n_pp(e_i, z_i).expect("extraspecial filled"));
                let value = gg * total / n_ez;
                if !value.is_integer() {
                    return Err(Error::InternalInconsistency(format!(
                        "non-integer structure constant for {gamma:?}"
                    )));
                }
                let v = i64::try_from(value.to_integer())
                    .map_err(|_| Error::InternalInconsistency("constant overflow".into()))?;
                if v == 0 {
                    return Err(Error::InternalInconsistency(format!(
                        "vanishing structure constant for a root sum {gamma:?}"
                    )));
                }
                self.insert_pair(ai, bi, v);
            }
        }
        Ok(())
    }

    fn insert_pair(&mut self, a: usize, b: usize, n: i64) {
        self.n_pos.insert((a, b), n);
        self.n_pos.insert((b, a), -n);
    }
}

/// Builds the Lie algebra with its full bracket table and verifies the
/// defining identities: antisymmetry by construction, |N| = p + 1 for every
/// root pair, and the Jacobi identity (exhaustive up to dimension 100,
/// sampled on at least 10^5 triples above).
pub fn chevalley_constants(rs: RootSystem) -> Result<ChevalleyLieAlgebra> {
    let mut b = Builder {
        rs,
        n_pos: BTreeMap::new(),
    };
    b.fill()?;
    let rs = &b.rs;
    let rank = rs.rank;
    let np = rs.num_positive();
    let dim = rank + 2 * np;

    // signed root list: (coords, sign) aligned with basis indices rank..dim
    let signed_coords = |idx: usize| -> (Vec<i64>, bool) {
        if idx < rank + np {
            (rs.positive[idx - rank].clone(), false)
        } else {
            (
                rs.positive[idx - rank - np].iter().map(|c| -c).collect(),
                true,
            )
        }
    };

    let n_any = |ai: usize, a_neg: bool, bi: usize, b_neg: bool| -> Option<Rat> {
        match (a_neg, b_neg) {
            (false, false) => b.n_pp(ai, bi).map(rat_int),
            (true, true) => b.n_pp(ai, bi).map(|n| rat_int(-n)),
            (false, true) => b.n_mixed(ai, bi),
            (true, false) => b.n_mixed(bi, ai).map(|n| -n),
        }
    };

    let mut table: Vec<Vec<(usize, i64)>> = vec![Vec::new(); dim * dim];
    let set = |table: &mut Vec<Vec<(usize, i64)>>, u: usize, v: usize, val: Vec<(usize, i64)>| {
        table[v * dim + u] = val.iter().map(|&(w, c)| (w, -c)).collect();
        table[u * dim + v] = val;
    };

    // [h_i, e_beta] = <beta, alpha_i^vee> e_beta
    for i in 0..rank {
        for idx in rank..dim {
            let (coords, _) = signed_coords(idx);
            let pairing = rs.pairing_with_simple_coroot(&coords, i);
            if pairing != 0 {
                set(&mut table, i, idx, vec![(idx, pairing)]);
            }
        }
    }

    // [e_alpha, e_beta]
    for u in rank..dim {
        for v in u + 1..dim {
            let (ca, a_neg) = signed_coords(u);
            let (cb, b_neg) = signed_coords(v);
            let sum: Vec<i64> = ca.iter().zip(&cb).map(|(a, b)| a + b).collect();
            if sum.iter().all(|&c| c == 0) {
                // [e_alpha, e_-alpha] = h_alpha with integer coroot coords
                let pos = if a_neg { &cb } else { &ca };
                let mut entry = Vec::new();
                let na = rs.norm2_of(pos);
                for (j, &m) in pos.iter().enumerate() {
                    if m == 0 {
                        continue;
                    }
                    let c = rat_int(m * rs.norms2[j]) / &na;
                    if !c.is_integer() {
                        return Err(Error::InternalInconsistency(
                            "non-integer coroot coordinate".into(),
                        ));
                    }
                    entry.push((j, i64::try_from(c.to_integer()).expect("small")));
                }
                let entry: Vec<(usize, i64)> = if a_neg {
                    entry.into_iter().map(|(w, c)| (w, -c)).collect()
                } else {
                    entry
                };
                set(&mut table, u, v, entry);
                continue;
            }
            if let Some((s_neg, si)) = rs.signed_index(&sum) {
                let ai = if a_neg { u - rank - np } else { u - rank };
                let bi = if b_neg { v - rank - np } else { v - rank };
                let n = n_any(ai, a_neg, bi, b_neg).ok_or_else(|| {
                    Error::InternalInconsistency("missing structure constant".into())
                })?;
                if !n.is_integer() {
                    return Err(Error::InternalInconsistency(
                        "non-integer mixed structure constant".into(),
                    ));
                }
                let c = i64::try_from(n.to_integer())
                    .map_err(|_| Error::InternalInconsistency("constant overflow".into()))?;
                let w = if s_neg {
                    rank + np + si
                } else {
                    rank + si
                };
                set(&mut table, u, v, vec![(w, c)]);
            }
        }
    }

    let alg = ChevalleyLieAlgebra {
        rs: b.rs.clone(),
        dim,
        table,
    };
    verify(&alg)?;
    Ok(alg)
}

fn verify(alg: &ChevalleyLieAlgebra) -> Result<()> {
    let rs = &alg.rs;
    let rank = rs.rank;
    let np = rs.num_positive();

    // |N(alpha, beta)| = p + 1 for every pair of roots with root sum
    let coords_of = |idx: usize| -> Vec<i64> {
        if idx < np {
            rs.positive[idx].clone()
        } else {
            rs.positive[idx - np].iter().map(|c| -c).collect()
        }
    };
    for a in 0..2 * np {
        for bb in 0..2 * np {
            let ca = coords_of(a);
            let cb = coords_of(bb);
            let sum: Vec<i64> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
            if sum.iter().all(|&c| c == 0) || !rs.is_root(&sum) {
                continue;
            }
            let entry = alg.bracket_basis(rank + a, rank + bb);
            if entry.len() != 1 {
                return Err(Error::InternalInconsistency(
                    "root-sum bracket is not a single root vector".into(),
                ));
            }
            let p = rs.string_down(&ca, &cb);
            if entry[0].1.abs() != p + 1 {
                return Err(Error::InternalInconsistency(format!(
                    "|N| = {} differs from p + 1 = {} at roots {ca:?}, {cb:?}",
                    entry[0].1.abs(),
                    p + 1
                )));
            }
        }
    }

    // Jacobi identity
    let jacobi = |x: usize, y: usize, z: usize| -> bool {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        let add = |outer: usize, inner: &[(usize, i64)], acc: &mut BTreeMap<usize, i64>| {
            for &(w, c) in inner {
                for &(w2, c2) in alg.bracket_basis(outer, w) {
                    let v = acc.entry(w2).or_insert(0);
                    *v += c * c2;
                    if *v == 0 {
                        acc.remove(&w2);
                    }
                }
            }
        };
        let yz = alg.bracket_basis(y, z).to_vec();
        let zx = alg.bracket_basis(z, x).to_vec();
        let xy = alg.bracket_basis(x, y).to_vec();
        add(x, &yz, &mut acc);
        add(y, &zx, &mut acc);
        add(z, &xy, &mut acc);
        acc.is_empty()
    };
    if alg.dim <= 100 {
        for x in 0..alg.dim {
            for y in x + 1..alg.dim {
                for z in y + 1..alg.dim {
                    if !jacobi(x, y, z) {
                        return Err(Error::InternalInconsistency(format!(
                            "Jacobi fails on basis triple ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
    } else {
        let mut rng = SmallRng::new(0x9E3779B97F4A7C15);
        for _ in 0..100_000 {
            let x = rng.below(alg.dim);
            let y = rng.below(alg.dim);
            let z = rng.below(alg.dim);
            if !jacobi(x, y, z) {
                return Err(Error::InternalInconsistency(format!(
                    "Jacobi fails on sampled triple ({x},{y},{z})"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::roots::{build_root_system, LieType};

    #[test]
    fn a1_is_sl2() {
        let alg = chevalley_constants(build_root_system(LieType::A, 1).unwrap()).unwrap();
        assert_eq!(alg.dim, 3);
        // [h, e] = 2e, [h, f] = -2f, [e, f] = h
        assert_eq!(alg.bracket_basis(0, 1), &[(1, 2)]);
        assert_eq!(alg.bracket_basis(0, 2), &[(2, -2)]);
        assert_eq!(alg.bracket_basis(1, 2), &[(0, 1)]);
    }

    #[test]
    fn a2_dimension_and_signs() {
        let alg = chevalley_constants(build_root_system(LieType::A, 2).unwrap()).unwrap();
        assert_eq!(alg.dim, 8);
        // the extraspecial pair of the highest root is the lex-smaller
        // simple root first, and carries the positive sign
        let i1 = alg.e_index(alg.rs.pos_index(&[1, 0]).unwrap());
        let i2 = alg.e_index(alg.rs.pos_index(&[0, 1]).unwrap());
        let i12 = alg.e_index(alg.rs.pos_index(&[1, 1]).unwrap());
        assert_eq!(alg.bracket_basis(i2, i1), &[(i12, 1)]);
        assert_eq!(alg.bracket_basis(i1, i2), &[(i12, -1)]);
    }

    #[test]
    fn small_types_verify() {
        // construction includes |N| = p+1 and exhaustive Jacobi
        for (t, n) in [
            (LieType::B, 2),
            (LieType::C, 3),
            (LieType::D, 4),
            (LieType::G, 2),
            (LieType::F, 4),
        ] {
            let alg = chevalley_constants(build_root_system(t, n).unwrap()).unwrap();
            assert_eq!(alg.dim, alg.rs.rank + alg.rs.num_roots());
        }
    }

    #[test]
    fn g2_has_constant_of_magnitude_three() {
        // G2 root strings reach length 4, so some |N| = 3 occurs
        let alg = chevalley_constants(build_root_system(LieType::G, 2).unwrap()).unwrap();
        let mut best = 0;
        for u in alg.rank()..alg.dim {
            for v in alg.rank()..alg.dim {
                for &(_, c) in alg.bracket_basis(u, v) {
                    best = best.max(c.abs());
                }
            }
        }
        assert_eq!(best, 3);
    }

    #[test]
    fn derived_subalgebra_is_everything() {
        let alg = chevalley_constants(build_root_system(LieType::A, 2).unwrap()).unwrap();
        assert_eq!(alg.derived_subalgebra_basis().len(), alg.dim);
    }
}
