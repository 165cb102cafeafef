use num_traits::{One, Signed, Zero};

use super::trace::trace_closed;
use crate::algebra::{word_of, Algebra};
use crate::auto::AutGroup;
use crate::error::{Error, Result};
use crate::exact::{rat, Matrix, Poly, RatFun};

/// Molien series of the invariant ring: the group average of the trace
/// series, equal to the Hilbert series of A^G.
pub fn molien(alg: &Algebra, group: &AutGroup) -> Result<RatFun> {
    if group.algebra != *alg {
        return Err(Error::UnsupportedAlgebra(
            "group acts on another algebra".into(),
        ));
    }
    let mut sum = RatFun::zero();
    for g in &group.elements {
        sum = &sum + &trace_closed(alg, g)?.value;
    }
    let avg = RatFun::constant(rat(1, group.order() as i64));
    Ok(&avg * &sum)
}

/// Invariant dimensions degree by degree, computed independently of any
/// trace series: the rank of the averaging projection (1/|G|) sum_g g on
/// each graded component.
pub fn reynolds_dims(alg: &Algebra, group: &AutGroup, maxdeg: u32) -> Result<Vec<usize>> {
    if group.algebra != *alg {
        return Err(Error::UnsupportedAlgebra(
            "group acts on another algebra".into(),
        ));
    }
    let degrees = alg.generator_degrees();
    let mut out = Vec::with_capacity(maxdeg as usize + 1);
    for deg in 0..=maxdeg {
        let basis = alg.graded_basis(deg);
        let dim = basis.len();
        let mut avg = Matrix::zeros(dim, dim);
        for g in &group.elements {
            for (col, mono) in basis.iter().enumerate() {
                let image = g.apply_word(&word_of(mono))?.degree_part(&degrees, deg);
                for (m, c) in image.terms() {
                    let row = basis
                        .iter()
                        .position(|b| b == m)
                        .ok_or_else(|| Error::InternalInconsistency("image outside basis".into()))?;
                    let r = c.as_rat().ok_or(Error::NonRationalCoefficient)?;
                    let v = avg.at(row, col) + r;
                    avg.set(row, col, v);
                }
            }
        }
        let scale = rat(1, group.order() as i64);
        let proj = Matrix::from_fn(dim, dim, |i, j| avg.at(i, j) * &scale);
        out.push(proj.rank());
    }
    Ok(out)
}

/// Outcome of the Hilbert-series symmetry test H(1/t) = +-t^m H(t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StanleyResult {
    pub symmetric: bool,
    pub sign: Option<i8>,
    pub m: Option<i64>,
}

/// Decides whether H(1/t) = +-t^m H(t) for some integer m, by checking that
/// the canonical form of H(1/t)/H(t) is +-t^m.
pub fn stanley_check(h: &RatFun) -> Result<StanleyResult> {
    if h.is_zero() {
        return Err(Error::ZeroSeries);
    }
    let ratio = &h.invert_t()? / h;
    let num = ratio.num();
    let den = ratio.den();
    let is_monomial =
        |p: &Poly| p.degree().map_or(false, |d| p.coeffs().iter().take(d).all(|c| c.is_zero()));
    if is_monomial(num) && is_monomial(den) {
        let c = num.leading_coeff().unwrap();
        if c.abs().is_one() {
            let sign = if c.is_negative() { -1 } else { 1 };
            let m = num.degree().unwrap() as i64 - den.degree().unwrap() as i64;
            return Ok(StanleyResult {
                symmetric: true,
                sign: Some(sign),
                m: Some(m),
            });
        }
    }
    Ok(StanleyResult {
        symmetric: false,
        sign: None,
        m: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PTable, SkewPoly};
    use crate::auto::{group_closure, Automorphism, DEFAULT_GROUP_CAP};
    use crate::exact::{rat_int, ParamScalar, Rat};

    fn order2_group(alg: Algebra, entries: &[i64]) -> AutGroup {
        let d: Vec<Rat> = entries.iter().map(|&e| rat_int(e)).collect();
        let g = Automorphism::graded(alg, Matrix::diagonal(&d)).unwrap();
        group_closure(&[g], DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn molien_of_sign_action_on_three_variables() {
        // (1/2)(1/(1-t)^3 + 1/(1+t)^3) = (1 + 3t^2)/(1 - t^2)^3
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
        let group = order2_group(a.clone(), &[-1, -1, -1]);
        assert_eq!(group.order(), 2);
        let m = molien(&a, &group).unwrap();
        let expect = RatFun::new(
            Poly::from_i64(&[1, 0, 3]),
            Poly::from_i64(&[1, 0, -1]).pow(3),
        )
        .unwrap();
        assert_eq!(m, expect);
    }

    #[test]
    fn molien_of_sign_action_on_plane() {
        // (1/2)(1/(1-t)^2 + 1/(1+t)^2) = (1 + t^2)/(1 - t^2)^2
        let a = Algebra::Skew(SkewPoly::commutative(2));
        let group = order2_group(a.clone(), &[-1, -1]);
        let m = molien(&a, &group).unwrap();
        let expect = RatFun::new(
            Poly::from_i64(&[1, 0, 1]),
            Poly::from_i64(&[1, 0, -1]).pow(2),
        )
        .unwrap();
        assert_eq!(m, expect);

        // Reynolds oracle: even-degree monomial counts 1, 0, 3, 0, 5
        let dims = reynolds_dims(&a, &group, 4).unwrap();
        assert_eq!(dims, vec![1, 0, 3, 0, 5]);
        let coeffs = m.series_coeffs(4).unwrap();
        for (d, c) in dims.iter().zip(&coeffs) {
            assert_eq!(rat_int(*d as i64), *c);
        }
    }

    #[test]
    fn molien_of_trivial_group_is_hilbert_series() {
        let a = Algebra::Skew(SkewPoly::commutative(2));
        let group = AutGroup::trivial(a.clone());
        assert_eq!(molien(&a, &group).unwrap(), a.hilbert_series());
        assert_eq!(
            reynolds_dims(&a, &group, 3).unwrap(),
            vec![1, 2, 3, 4]
        );
    }

    #[test]
    fn reynolds_matches_molien_for_sign_action_on_three_variables() {
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
        let group = order2_group(a.clone(), &[-1, -1, -1]);
        let dims = reynolds_dims(&a, &group, 3).unwrap();
        assert_eq!(dims, vec![1, 0, 6, 0]);
    }

    #[test]
    fn stanley_examples() {
        // (1 + 3t^2)/(1 - t^2)^3 is not symmetric
        let h = RatFun::new(
            Poly::from_i64(&[1, 0, 3]),
            Poly::from_i64(&[1, 0, -1]).pow(3),
        )
        .unwrap();
        let s = stanley_check(&h).unwrap();
        assert!(!s.symmetric);

        // 1/(1-t)^3: symmetric with sign -1, m = 3
        let h = RatFun::new(Poly::one(), Poly::from_i64(&[1, -1]).pow(3)).unwrap();
        let s = stanley_check(&h).unwrap();
        assert_eq!((s.symmetric, s.sign, s.m), (true, Some(-1), Some(3)));

        // (1 + t^2)/(1 - t^2)^2: symmetric with sign +1, m = 2
        let h = RatFun::new(
            Poly::from_i64(&[1, 0, 1]),
            Poly::from_i64(&[1, 0, -1]).pow(2),
        )
        .unwrap();
        let s = stanley_check(&h).unwrap();
        assert_eq!((s.symmetric, s.sign, s.m), (true, Some(1), Some(2)));

        assert_eq!(stanley_check(&RatFun::zero()), Err(Error::ZeroSeries));
    }

    /// Reconstruction: symmetric means invert_t(H) = sign * t^m * H exactly.
    #[test]
    fn stanley_reconstruction() {
        let cases = vec![
            RatFun::new(Poly::one(), Poly::from_i64(&[1, -1]).pow(3)).unwrap(),
            RatFun::new(
                Poly::from_i64(&[1, 0, 1]),
                Poly::from_i64(&[1, 0, -1]).pow(2),
            )
            .unwrap(),
            RatFun::new(Poly::one(), Poly::from_i64(&[1, 0, -1])).unwrap(),
        ];
        for h in cases {
            let s = stanley_check(&h).unwrap();
            assert!(s.symmetric);
            let sign = Rat::from_integer(s.sign.unwrap().into());
            let m = s.m.unwrap();
            let mono = if m >= 0 {
                RatFun::from_poly(Poly::monomial(sign, m as usize))
            } else {
                RatFun::new(Poly::constant(sign), Poly::monomial(Rat::one(), (-m) as usize))
                    .unwrap()
            };
            assert_eq!(h.invert_t().unwrap(), &mono * &h);
        }
    }
}
