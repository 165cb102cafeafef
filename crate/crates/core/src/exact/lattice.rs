use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::Rat;
use crate::error::{Error, Result};

/// Sign-and-prime-factorization of a nonzero rational: the element of
/// {+-1} x (free abelian group on the primes) it represents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentVector {
    pub negative: bool,
    /// prime -> exponent, increasing primes, no zero exponents.
    pub primes: BTreeMap<u64, i64>,
}

impl ExponentVector {
    pub fn one() -> Self {
        ExponentVector {
            negative: false,
            primes: BTreeMap::new(),
        }
    }

    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        let mut primes = self.primes.clone();
        for (&p, &e) in &other.primes {
            let v = primes.entry(p).or_insert(0);
            *v += e;
            if *v == 0 {
                primes.remove(&p);
            }
        }
        ExponentVector {
            negative: self.negative ^ other.negative,
            primes,
        }
    }

    pub fn pow(&self, n: i64) -> ExponentVector {
        ExponentVector {
            negative: self.negative && n % 2 != 0,
            primes: self
                .primes
                .iter()
                .filter(|(_, &e)| e * n != 0)
                .map(|(&p, &e)| (p, e * n))
                .collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.primes.is_empty()
    }
}

fn factor_uint(mut n: BigInt, out: &mut BTreeMap<u64, i64>, sign: i64) {
    debug_assert!(n.is_positive());
    let mut d = BigInt::from(2u32);
    while &d * &d <= n {
        while (&n % &d).is_zero() {
            n /= &d;
            let key = u64::try_from(&d).expect("trial divisor fits u64");
            let v = out.entry(key).or_insert(0);
            *v += sign;
            if *v == 0 {
                out.remove(&key);
            }
        }
        d += 1;
    }
    if !n.is_one() {
        let key = u64::try_from(&n).unwrap_or_else(|_| {
            panic!("prime factor too large for the genericity lattice: {n}")
        });
        let v = out.entry(key).or_insert(0);
        *v += sign;
        if *v == 0 {
            out.remove(&key);
        }
    }
}

/// Sign and prime factorization of numerator and denominator.
pub fn factor_rational(x: &Rat) -> Result<ExponentVector> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut primes = BTreeMap::new();
    factor_uint(x.numer().abs(), &mut primes, 1);
    factor_uint(x.denom().clone(), &mut primes, -1);
    Ok(ExponentVector {
        negative: x.is_negative(),
        primes,
    })
}

/// Integer matrix diagonalization by unimodular row and column operations
/// (Smith-normal-form style, without enforcing the divisibility chain).
/// Returns (diag, p, q) with diag = p * m * q.
struct Diagonalized {
    diag: Vec<BigInt>,
    rank: usize,
    /// Row-operation matrix, rows x rows.
    p: Vec<Vec<BigInt>>,
    /// Column-operation matrix, cols x cols.
    q: Vec<Vec<BigInt>>,
}

fn diagonalize(mut m: Vec<Vec<BigInt>>, rows: usize, cols: usize) -> Diagonalized {
    let mut p: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut q: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| (0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();

    let swap_rows = |m: &mut Vec<Vec<BigInt>>, p: &mut Vec<Vec<BigInt>>, a: usize, b: usize| {
        m.swap(a, b);
        p.swap(a, b);
    };
    let swap_cols = |m: &mut Vec<Vec<BigInt>>, q: &mut Vec<Vec<BigInt>>, a: usize, b: usize| {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
        for row in q.iter_mut() {
            row.swap(a, b);
        }
    };

    let mut t = 0;
    while t < rows.min(cols) {
        // Find the entry of least absolute value in the working submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && pivot.map_or(true, |(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut m, &mut p, t, pi);
        swap_cols(&mut m, &mut q, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let f = &m[i][t] / &m[t][t];
                if !f.is_zero() {
                    for j in t..cols {
                        let v = &m[t][j] * &f;
                        m[i][j] -= v;
                    }
                    for j in 0..rows {
                        let v = &p[t][j] * &f;
                        p[i][j] -= v;
                    }
                }
                if !m[i][t].is_zero() {
                    // Remainder smaller than the pivot: promote it and restart.
                    swap_rows(&mut m, &mut p, t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let f = &m[t][j] / &m[t][t];
                if !f.is_zero() {
                    for i in t..rows {
                        let v = &m[i][t] * &f;
                        m[i][j] -= v;
                    }
                    for i in 0..cols {
                        let v = &q[i][t] * &f;
                        q[i][j] -= v;
                    }
                }
                if !m[t][j].is_zero() {
                    swap_cols(&mut m, &mut q, t, j);
                    dirty = true;
                }
            }
            let col_clear = (t + 1..rows).all(|i| m[i][t].is_zero());
            let row_clear = (t + 1..cols).all(|j| m[t][j].is_zero());
            if !dirty && col_clear && row_clear {
                break;
            }
        }
        t += 1;
    }
    let rank = t;
    let diag = (0..rows.min(cols)).map(|i| m[i][i].clone()).collect();
    Diagonalized { diag, rank, p, q }
}

/// Smallest n > 0 such that n.v lies in the subgroup of
/// {+-1} x Z^(primes) generated by `basis`, or None when no such n exists.
pub fn lattice_min_multiple(v: &ExponentVector, basis: &[ExponentVector]) -> Option<u64> {
    // Index the primes occurring anywhere.
    let mut primes: Vec<u64> = v.primes.keys().cloned().collect();
    for b in basis {
        primes.extend(b.primes.keys().cloned());
    }
    primes.sort_unstable();
    primes.dedup();
    let k = primes.len();
    let mcols = basis.len();

    let b_mat: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            basis
                .iter()
                .map(|b| BigInt::from(b.primes.get(&primes[i]).copied().unwrap_or(0)))
                .collect()
        })
        .collect();
    let v_vec: Vec<BigInt> = primes
        .iter()
        .map(|p| BigInt::from(v.primes.get(p).copied().unwrap_or(0)))
        .collect();

    let d = diagonalize(b_mat, k, mcols);

    // w = P v; solvability needs w_i = 0 beyond the rank.
    let w: Vec<BigInt> = (0..k)
        .map(|i| {
            let mut acc = BigInt::zero();
            for j in 0..k {
                acc += &d.p[i][j] * &v_vec[j];
            }
            acc
        })
        .collect();
    for item in w.iter().take(k).skip(d.rank) {
        if !item.is_zero() {
            return None;
        }
    }

    // Least n with s_i | n w_i for every pivot row.
    let mut n = BigInt::one();
    for i in 0..d.rank {
        if w[i].is_zero() {
            continue;
        }
        let s = d.diag[i].abs();
        let need = &s / s.gcd(&w[i]);
        n = n.lcm(&need);
    }

    // Sign component: a combination hitting n.v must also match the sign bit.
    let sigma: Vec<i64> = basis.iter().map(|b| b.negative as i64).collect();
    // Kernel columns of the diagonalized system can flip parity freely.
    for col in d.rank..mcols {
        let parity: i64 = (0..mcols)
            .map(|i| {
                let e = &d.q[i][col] % BigInt::from(2);
                if e.is_zero() {
                    0
                } else {
                    sigma[i]
                }
            })
            .sum();
        if parity % 2 != 0 {
            let n64 = u64::try_from(&n).expect("minimal multiple fits u64");
            return Some(n64);
        }
    }
    // Particular solution c = Q c' for the target n.v.
    let mut c_prime = vec![BigInt::zero(); mcols];
    for i in 0..d.rank {
        if !w[i].is_zero() {
            c_prime[i] = &n * &w[i] / &d.diag[i];
        }
    }
    let two = BigInt::from(2);
    let mut parity = BigInt::zero();
    for i in 0..mcols {
        let mut ci = BigInt::zero();
        for j in 0..mcols {
            ci += &d.q[i][j] * &c_prime[j];
        }
        parity += ci * BigInt::from(sigma[i]);
    }
    let reached = parity.mod_floor(&two);
    let target = if v.negative {
        n.mod_floor(&two)
    } else {
        BigInt::zero()
    };
    let n = if reached == target { n } else { n * two };
    Some(u64::try_from(&n).expect("minimal multiple fits u64"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{rat, rat_int};

    #[test]
    fn factor_examples() {
        let f = factor_rational(&rat_int(12)).unwrap();
        assert!(!f.negative);
        assert_eq!(f.primes, BTreeMap::from([(2, 2), (3, 1)]));

        let f = factor_rational(&rat(-9, 2)).unwrap();
        assert!(f.negative);
        assert_eq!(f.primes, BTreeMap::from([(2, -1), (3, 2)]));

        let f = factor_rational(&rat_int(1)).unwrap();
        assert_eq!(f, ExponentVector::one());

        assert_eq!(factor_rational(&rat_int(0)), Err(Error::ZeroInput));
    }

    #[test]
    fn min_multiple_examples() {
        let f2 = factor_rational(&rat_int(2)).unwrap();
        let f3 = factor_rational(&rat_int(3)).unwrap();
        let f9 = factor_rational(&rat_int(9)).unwrap();
        let f1 = factor_rational(&rat_int(1)).unwrap();

        // 2^n is never a power of 3
        assert_eq!(lattice_min_multiple(&f2, &[f3.clone()]), None);
        // 9 = 3^2
        assert_eq!(lattice_min_multiple(&f9, &[f3.clone()]), Some(1));
        // identity is in the trivial subgroup
        assert_eq!(lattice_min_multiple(&f1, &[]), Some(1));
    }

    #[test]
    fn min_multiple_sign_handling() {
        let fm1 = factor_rational(&rat_int(-1)).unwrap();
        // (-1)^2 = 1 is the first power landing in the trivial subgroup
        assert_eq!(lattice_min_multiple(&fm1, &[]), Some(2));
        // -1 itself lies in <-1>
        assert_eq!(lattice_min_multiple(&fm1, &[fm1.clone()]), Some(1));

        let fm2 = factor_rational(&rat_int(-2)).unwrap();
        let f4 = factor_rational(&rat_int(4)).unwrap();
        // (-2)^2 = 4: even powers of -2 lie in <4>
        assert_eq!(lattice_min_multiple(&fm2, &[f4]), Some(2));
    }

    #[test]
    fn min_multiple_mixed_lattice() {
        let f6 = factor_rational(&rat_int(6)).unwrap();
        let f2 = factor_rational(&rat_int(2)).unwrap();
        let f3 = factor_rational(&rat_int(3)).unwrap();
        // 6 = 2 * 3
        assert_eq!(lattice_min_multiple(&f6, &[f2.clone(), f3.clone()]), Some(1));
        // 6^n in <12=2^2*3, 18=2*3^2>: exponents n(1,1) = a(2,1)+b(1,2) -> a=b=n/3
        let f12 = factor_rational(&rat_int(12)).unwrap();
        let f18 = factor_rational(&rat_int(18)).unwrap();
        assert_eq!(lattice_min_multiple(&f6, &[f12, f18]), Some(3));
        // 2^n in <6> is impossible
        assert_eq!(lattice_min_multiple(&f2, &[f6.clone()]), None);
    }

    /// Reconstruction check: when a minimal multiple n is reported, n.v is
    /// verifiably an integer combination of the basis.
    #[test]
    fn min_multiple_reconstruction() {
        let cases: Vec<(Rat, Vec<Rat>)> = vec![
            (rat_int(9), vec![rat_int(3)]),
            (rat_int(6), vec![rat_int(12), rat_int(18)]),
            (rat(-4, 9), vec![rat(2, 3), rat_int(-1)]),
            (rat_int(-8), vec![rat_int(2)]),
            (rat(5, 7), vec![rat(25, 49), rat(7, 5)]),
        ];
        for (q, ps) in cases {
            let v = factor_rational(&q).unwrap();
            let basis: Vec<ExponentVector> =
                ps.iter().map(|p| factor_rational(p).unwrap()).collect();
            if let Some(n) = lattice_min_multiple(&v, &basis) {
                let target = v.pow(n as i64);
                assert!(
                    in_span(&target, &basis),
                    "reported n={n} for {q} over {ps:?} fails reconstruction"
                );
            }
        }
    }

    /// Brute-force membership check over small coefficient boxes.
    fn in_span(target: &ExponentVector, basis: &[ExponentVector]) -> bool {
        let bound = 12i64;
        let m = basis.len();
        if m == 0 {
            return target.is_one();
        }
        let mut coeffs = vec![-bound; m];
        loop {
            let mut acc = ExponentVector::one();
            for (c, b) in coeffs.iter().zip(basis) {
                acc = acc.mul(&b.pow(*c));
            }
            if &acc == target {
                return true;
            }
            let mut i = 0;
            loop {
                if i == m {
                    return false;
                }
                coeffs[i] += 1;
                if coeffs[i] <= bound {
                    break;
                }
                coeffs[i] = -bound;
                i += 1;
            }
        }
    }
}
