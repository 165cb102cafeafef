use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{rat, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl LieType {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_uppercase().as_str() {
            "A" => Ok(LieType::A),
            "B" => Ok(LieType::B),
            "C" => Ok(LieType::C),
            "D" => Ok(LieType::D),
            "E" => Ok(LieType::E),
            "F" => Ok(LieType::F),
            "G" => Ok(LieType::G),
            other => Err(Error::InvalidTypeRank(format!("unknown type {other}"))),
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            LieType::A => 'A',
            LieType::B => 'B',
            LieType::C => 'C',
            LieType::D => 'D',
            LieType::E => 'E',
            LieType::F => 'F',
            LieType::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// Root system in simple-root coordinates. `positive` is sorted by
/// (height, lexicographic), which is also the total order used for the
/// structure-constant sign convention. The full root set is the positive
/// roots and their negatives.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub lie_type: LieType,
    pub rank: usize,
    /// cartan[i][j] = <alpha_i, alpha_j^vee> = 2 (alpha_i, alpha_j)/(alpha_j, alpha_j)
    pub cartan: Vec<Vec<i64>>,
    /// (alpha_i, alpha_i)
    pub norms2: Vec<i64>,
    pub positive: Vec<Vec<i64>>,
    index: BTreeMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive.len()
    }

    /// Index of a positive root given by coordinates.
    pub fn pos_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Splits arbitrary root coordinates into (negative?, positive index).
    pub fn signed_index(&self, coords: &[i64]) -> Option<(bool, usize)> {
        if let Some(i) = self.index.get(coords) {
            return Some((false, *i));
        }
        let neg: Vec<i64> = coords.iter().map(|c| -c).collect();
        self.index.get(&neg).map(|&i| (true, i))
    }

    pub fn is_root(&self, coords: &[i64]) -> bool {
        self.signed_index(coords).is_some()
    }

    /// Inner product of two coordinate vectors.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> Rat {
        let mut acc = Rat::new(0.into(), 1.into());
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] == 0 {
                    continue;
                }
                // (alpha_i, alpha_j) = cartan[i][j] * norms2[j] / 2
                acc += rat(a[i] * b[j] * self.cartan[i][j] * self.norms2[j], 2);
            }
        }
        acc
    }

    pub fn norm2_of(&self, coords: &[i64]) -> Rat {
        self.inner(coords, coords)
    }

    /// <beta, alpha_i^vee>, an integer.
    pub fn pairing_with_simple_coroot(&self, beta: &[i64], i: usize) -> i64 {
        (0..self.rank).map(|j| beta[j] * self.cartan[j][i]).sum()
    }

    /// Largest k with beta - k*alpha a root (the "p" of the alpha-string
    /// through beta).
    pub fn string_down(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        let mut k = 0;
        loop {
            let cand: Vec<i64> = beta
                .iter()
                .zip(alpha)
                .map(|(b, a)| b - (k + 1) * a)
                .collect();
            if cand.iter().all(|&c| c == 0) || !self.is_root(&cand) {
                return k;
            }
            k += 1;
        }
    }

    pub fn height(coords: &[i64]) -> i64 {
        coords.iter().sum()
    }
}

fn cartan_matrix(t: LieType, rank: usize) -> Result<(Vec<Vec<i64>>, Vec<i64>)> {
    let bad = |msg: &str| Error::InvalidTypeRank(format!("{t}{rank}: {msg}"));
    let n = rank;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut norms2 = vec![2i64; n];
    match t {
        LieType::A => {
            if n < 1 {
                return Err(bad("rank must be at least 1"));
            }
            edges.extend((0..n.saturating_sub(1)).map(|i| (i, i + 1)));
        }
        LieType::B => {
            if n < 2 {
                return Err(bad("rank must be at least 2"));
            }
            edges.extend((0..n - 1).map(|i| (i, i + 1)));
            norms2[n - 1] = 1; // last simple root short
        }
        LieType::C => {
            if n < 2 {
                return Err(bad("rank must be at least 2"));
            }
            edges.extend((0..n - 1).map(|i| (i, i + 1)));
            norms2[n - 1] = 4; // last simple root long
        }
        LieType::D => {
            if n < 4 {
                return Err(bad("rank must be at least 4"));
            }
            edges.extend((0..n - 2).map(|i| (i, i + 1)));
            edges.push((n - 3, n - 1));
        }
        LieType::E => {
            if !(6..=8).contains(&n) {
                return Err(bad("rank must be 6, 7 or 8"));
            }
            edges.push((0, 2));
            edges.push((1, 3));
            for i in 2..n - 1 {
                edges.push((i, i + 1));
            }
        }
        LieType::F => {
            if n != 4 {
                return Err(bad("rank must be 4"));
            }
            edges.extend([(0, 1), (1, 2), (2, 3)]);
            norms2[2] = 1;
            norms2[3] = 1;
        }
        LieType::G => {
            if n != 2 {
                return Err(bad("rank must be 2"));
            }
            edges.push((0, 1));
            norms2[1] = 6;
        }
    }
    // (alpha_i, alpha_j) for adjacent nodes is -max over the bond; encode via
    // the standard rule (alpha_i, alpha_j) = -gcd-free value making both
    // Cartan entries integers: for unequal norms it is -(larger norm)/2,
    // for equal norms -(norm)/2.
    let mut inner = vec![vec![rat(0, 1); n]; n];
    for i in 0..n {
        inner[i][i] = rat(norms2[i], 1);
    }
    for &(i, j) in &edges {
        let v = rat(-norms2[i].max(norms2[j]), 2);
        inner[i][j] = v.clone();
        inner[j][i] = v;
    }
    let mut cartan = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = &inner[i][j] * rat(2, norms2[j]);
            if !c.is_integer() {
                return Err(Error::InternalInconsistency(format!(
                    "non-integer Cartan entry at ({i},{j})"
                )));
            }
            cartan[i][j] = i64::try_from(c.to_integer()).expect("small");
        }
    }
    Ok((cartan, norms2))
}

/// Builds the root system by closing the simple roots under root-string
/// addition, processing by height.
pub fn build_root_system(t: LieType, rank: usize) -> Result<RootSystem> {
    let (cartan, norms2) = cartan_matrix(t, rank)?;
    let mut known: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut level: Vec<Vec<i64>> = Vec::new();
    for i in 0..rank {
        let mut c = vec![0i64; rank];
        c[i] = 1;
        known.insert(c.clone());
        level.push(c);
    }
    let in_known = |known: &BTreeSet<Vec<i64>>, c: &[i64]| known.contains(c);
    while !level.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &level {
            for i in 0..rank {
                // p = steps down the alpha_i string from beta
                let mut p = 0i64;
                loop {
                    let mut cand = beta.clone();
                    cand[i] -= p + 1;
                    if cand.iter().all(|&c| c == 0) || !in_known(&known, &cand) {
                        break;
                    }
                    p += 1;
                }
                let pairing: i64 = (0..rank).map(|j| beta[j] * cartan[j][i]).sum();
                if p - pairing > 0 {
                    let mut cand = beta.clone();
                    cand[i] += 1;
                    if known.insert(cand.clone()) {
                        next.push(cand);
                    }
                }
            }
        }
        level = next;
    }
    let mut positive: Vec<Vec<i64>> = known.into_iter().collect();
    positive.sort_by_key(|c| (RootSystem::height(c), c.clone()));
    let index = positive
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    Ok(RootSystem {
        lie_type: t,
        rank,
        cartan,
        norms2,
        positive,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_root_counts() {
        // A_n: n(n+1); B_n, C_n: 2n^2; D_n: 2n(n-1)
        for n in 1..=5 {
            let rs = build_root_system(LieType::A, n).unwrap();
            assert_eq!(rs.num_roots(), n * (n + 1), "A{n}");
        }
        for n in 2..=4 {
            let rs = build_root_system(LieType::B, n).unwrap();
            assert_eq!(rs.num_roots(), 2 * n * n, "B{n}");
            let rs = build_root_system(LieType::C, n).unwrap();
            assert_eq!(rs.num_roots(), 2 * n * n, "C{n}");
        }
        for n in 4..=6 {
            let rs = build_root_system(LieType::D, n).unwrap();
            assert_eq!(rs.num_roots(), 2 * n * (n - 1), "D{n}");
        }
    }

    #[test]
    fn exceptional_root_counts() {
        assert_eq!(build_root_system(LieType::G, 2).unwrap().num_roots(), 12);
        assert_eq!(build_root_system(LieType::F, 4).unwrap().num_roots(), 48);
        assert_eq!(build_root_system(LieType::E, 6).unwrap().num_roots(), 72);
        assert_eq!(build_root_system(LieType::E, 7).unwrap().num_roots(), 126);
        assert_eq!(build_root_system(LieType::E, 8).unwrap().num_roots(), 240);
    }

    #[test]
    fn invalid_type_rank() {
        assert!(matches!(
            build_root_system(LieType::F, 3),
            Err(Error::InvalidTypeRank(_))
        ));
        assert!(matches!(
            build_root_system(LieType::E, 9),
            Err(Error::InvalidTypeRank(_))
        ));
        assert!(matches!(
            build_root_system(LieType::D, 3),
            Err(Error::InvalidTypeRank(_))
        ));
    }

    #[test]
    fn a2_roots_and_strings() {
        let rs = build_root_system(LieType::A, 2).unwrap();
        assert_eq!(rs.positive, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        // the alpha_1-string through alpha_2 has p = 0
        assert_eq!(rs.string_down(&[1, 0], &[0, 1]), 0);
        // and through alpha_1 + alpha_2 has p = 1
        assert_eq!(rs.string_down(&[1, 0], &[1, 1]), 1);
    }

    #[test]
    fn g2_highest_root() {
        let rs = build_root_system(LieType::G, 2).unwrap();
        // highest root of G2 is 3 alpha_1 + 2 alpha_2 in our ordering of
        // (short, long) simple roots
        let heights: Vec<i64> = rs.positive.iter().map(|c| RootSystem::height(c)).collect();
        assert_eq!(*heights.last().unwrap(), 5);
        assert!(rs.is_root(&[3, 1]));
        assert!(rs.is_root(&[3, 2]) || rs.is_root(&[2, 3]));
    }

    #[test]
    fn cartan_symmetry_relation() {
        for (t, n) in [
            (LieType::B, 3),
            (LieType::C, 3),
            (LieType::F, 4),
            (LieType::G, 2),
            (LieType::E, 6),
        ] {
            let rs = build_root_system(t, n).unwrap();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(
                        rs.cartan[i][j] * rs.norms2[j],
                        rs.cartan[j][i] * rs.norms2[i],
                        "symmetry at ({i},{j}) for {t}{n}"
                    );
                }
            }
        }
    }
}
