//! Shared random generators for the integration suites. Everything is
//! seeded, so failures reproduce.

use hdet_core::algebra::{PTable, QuantExterior, Quotient, SkewPoly};
use hdet_core::exact::{rat, rat_int, Matrix, ParamScalar, Rat};
use hdet_core::{Algebra, Automorphism};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const PRIMES: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

pub fn nonzero_rat(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let num = rng.gen_range(-4i64..=4);
        if num == 0 {
            continue;
        }
        let den = rng.gen_range(1i64..=3);
        return rat(num, den);
    }
}

/// Skew polynomial ring with pairwise distinct prime parameters (distinct
/// primes are also closed against reciprocal coincidences).
pub fn random_p_distinct_skew(rng: &mut ChaCha8Rng, n: usize) -> SkewPoly {
    let mut pool: Vec<i64> = PRIMES.to_vec();
    let mut upper = Vec::new();
    for _ in 0..n * (n - 1) / 2 {
        let idx = rng.gen_range(0..pool.len());
        upper.push(ParamScalar::from_i64(pool.remove(idx)));
    }
    SkewPoly::new(vec![1; n], PTable::new(n, upper).unwrap()).unwrap()
}

pub fn random_diag_auto(rng: &mut ChaCha8Rng, alg: Algebra) -> Automorphism {
    let n = alg.num_generators();
    let d: Vec<Rat> = (0..n).map(|_| nonzero_rat(rng)).collect();
    Automorphism::graded(alg, Matrix::diagonal(&d)).unwrap()
}

pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| rat_int(rng.gen_range(-2i64..=2)));
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// Permutation together with a p-table compatible with it, so that the
/// monomial map x_i -> b_i x_{perm(i)} is an automorphism.
pub fn random_monomial_auto_data(rng: &mut ChaCha8Rng, n: usize) -> (Vec<usize>, PTable) {
    // random permutation
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    // orbits of the induced action on ordered pairs i < j, tracking
    // orientation flips; flipped orbits force self-inverse values
    let mut upper = vec![None::<ParamScalar>; n * (n - 1) / 2];
    let index = |i: usize, j: usize| i * n - i * (i + 1) / 2 + (j - i - 1);
    let mut pool: Vec<i64> = PRIMES.to_vec();
    for si in 0..n {
        for sj in si + 1..n {
            if upper[index(si, sj)].is_some() {
                continue;
            }
            // walk the orbit of (si, sj)
            let mut orbit = Vec::new();
            let (mut i, mut j, mut flip) = (si, sj, false);
            let mut self_inverse_needed = false;
            loop {
                orbit.push((i, j, flip));
                let (mut ni, mut nj) = (perm[i], perm[j]);
                let mut nflip = flip;
                if ni > nj {
                    std::mem::swap(&mut ni, &mut nj);
                    nflip = !nflip;
                }
                if (ni, nj) == (si, sj) {
                    if nflip {
                        self_inverse_needed = true;
                    }
                    break;
                }
                (i, j, flip) = (ni, nj, nflip);
            }
            let value = if self_inverse_needed {
                ParamScalar::from_i64(if rng.gen_bool(0.5) { 1 } else { -1 })
            } else {
                let idx = rng.gen_range(0..pool.len());
                let p = if pool.len() > 1 { pool.remove(idx) } else { pool[0] };
                ParamScalar::from_i64(p)
            };
            for (i, j, flip) in orbit {
                upper[index(i, j)] = Some(if flip {
                    value.inverse().unwrap()
                } else {
                    value.clone()
                });
            }
        }
    }
    let upper: Vec<ParamScalar> = upper.into_iter().map(Option::unwrap).collect();
    (perm, PTable::new(n, upper).unwrap())
}

pub fn monomial_matrix(rng: &mut ChaCha8Rng, perm: &[usize]) -> Matrix {
    let n = perm.len();
    let mut m = Matrix::zeros(n, n);
    for (i, &target) in perm.iter().enumerate() {
        let mut b = rat_int(rng.gen_range(1i64..=3));
        if rng.gen_bool(0.5) {
            b = -b;
        }
        m.set(target, i, b);
    }
    m
}

pub fn random_quotient(rng: &mut ChaCha8Rng, n: usize) -> Quotient {
    let var = rng.gen_range(0..n);
    let power = rng.gen_range(2..=4u32);
    Quotient::new(SkewPoly::commutative(n), var, power).unwrap()
}

pub fn exterior(n: usize) -> QuantExterior {
    QuantExterior::exterior(n)
}
