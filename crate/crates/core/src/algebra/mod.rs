//! Algebra descriptors, Hilbert series, Gorenstein data, PBW straightening,
//! Koszul duals and the parameter predicates feeding the verdict engine.

pub mod descriptor;
pub mod straighten;

pub use descriptor::{
    is_normal_degree1, koszul_dual, p_distinct, p_distinct_strict, q_generic, Algebra, PTable,
    QuantExterior, QuantumWeyl, Quotient, SkewPoly, Weyl,
};
pub use straighten::{
    exponents_of, nf_mul, straighten_word, straighten_word_with, word_of, NormalForm, Strategy,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_int, ParamScalar, Poly, Rat, RatFun};
    use num_traits::One;

    fn skew(degrees: Vec<u32>, ps: Vec<i64>) -> SkewPoly {
        let n = degrees.len();
        let table = PTable::new(n, ps.into_iter().map(ParamScalar::from_i64).collect()).unwrap();
        SkewPoly::new(degrees, table).unwrap()
    }

    #[test]
    fn graded_basis_examples() {
        let a = Algebra::Skew(SkewPoly::commutative(2));
        let b = a.graded_basis(2);
        assert_eq!(b, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);

        let e = Algebra::QuantExterior(QuantExterior::exterior(3));
        let b = e.graded_basis(2);
        assert_eq!(b.len(), 3);
        assert!(b.iter().all(|m| m.iter().all(|&x| x <= 1)));

        // weighted: single generator of degree 3
        let w = Algebra::Skew(skew(vec![3], vec![]));
        assert_eq!(w.graded_basis(3), vec![vec![1]]);
        assert!(w.graded_basis(2).is_empty());
    }

    #[test]
    fn hilbert_series_examples() {
        let a = Algebra::Skew(skew(vec![1, 1, 1], vec![1, 1, 1]));
        let expect = RatFun::new(Poly::one(), Poly::from_i64(&[1, -1]).pow(3)).unwrap();
        assert_eq!(a.hilbert_series(), expect);

        // k[x1,x2]/(x1^3) -> (1 - t^3)/(1 - t)^2
        let q = Algebra::Quotient(Quotient::new(SkewPoly::commutative(2), 0, 3).unwrap());
        let expect = RatFun::new(
            Poly::from_i64(&[1, 0, 0, -1]),
            Poly::from_i64(&[1, -1]).pow(2),
        )
        .unwrap();
        assert_eq!(q.hilbert_series(), expect);

        let e = Algebra::QuantExterior(QuantExterior::exterior(3));
        assert_eq!(
            e.hilbert_series(),
            RatFun::from_poly(Poly::from_i64(&[1, 3, 3, 1]))
        );
    }

    /// Dimension count oracle: basis enumeration must match the series.
    #[test]
    fn basis_dims_match_hilbert_series() {
        let algebras = vec![
            Algebra::Skew(skew(vec![1, 1, 1], vec![2, 3, 5])),
            Algebra::Skew(skew(vec![2, 1], vec![7])),
            Algebra::QuantExterior(QuantExterior::exterior(4)),
            Algebra::Quotient(Quotient::new(skew(vec![1, 1], vec![1]), 0, 3).unwrap()),
            Algebra::QuantumWeyl(
                QuantumWeyl::new(
                    2,
                    ParamScalar::from_i64(2),
                    PTable::new(2, vec![ParamScalar::from_i64(3)]).unwrap(),
                )
                .unwrap(),
            ),
            Algebra::Weyl(Weyl::new(1)),
            Algebra::tensor(
                Algebra::Skew(skew(vec![1, 1], vec![2])),
                Algebra::QuantExterior(QuantExterior::exterior(2)),
            )
            .unwrap(),
        ];
        for alg in algebras {
            let coeffs = alg.hilbert_series().series_coeffs(8).unwrap();
            for deg in 0..=8u32 {
                assert_eq!(
                    rat_int(alg.graded_basis(deg).len() as i64),
                    coeffs[deg as usize],
                    "dimension mismatch at degree {deg} for {alg:?}"
                );
            }
        }
    }

    #[test]
    fn gorenstein_data_examples() {
        assert_eq!(
            Algebra::Skew(skew(vec![1, 1, 1], vec![1, 1, 1]))
                .gorenstein_data()
                .unwrap(),
            (3, 3)
        );
        assert_eq!(
            Algebra::QuantExterior(QuantExterior::exterior(3))
                .gorenstein_data()
                .unwrap(),
            (0, -3)
        );
        let q = Algebra::Quotient(Quotient::new(SkewPoly::commutative(2), 0, 3).unwrap());
        assert_eq!(q.gorenstein_data().unwrap(), (1, -1));
    }

    #[test]
    fn koszul_dual_relations() {
        // xy = -yx, xz = zx, yz = zy
        let a = skew(vec![1, 1, 1], vec![-1, 1, 1]);
        let dual = koszul_dual(&a).unwrap();
        // dual relations: xy = yx, xz = -zx, yz = -zy; squares vanish
        let alg = Algebra::QuantExterior(dual.clone());
        let check = |w: &[usize], target: &[u32], c: i64| {
            let nf = straighten_word(&alg, w, ParamScalar::one()).unwrap();
            assert_eq!(nf.coeff_of(target), ParamScalar::from_i64(c));
        };
        check(&[1, 0], &[1, 1, 0], 1); // yx -> xy
        check(&[2, 0], &[1, 0, 1], -1); // zx -> -xz
        check(&[2, 1], &[0, 1, 1], -1); // zy -> -yz
        assert!(straighten_word(&alg, &[0, 0], ParamScalar::one())
            .unwrap()
            .is_zero());

        // double dual recovers the original table
        assert_eq!(dual.p, a.p);

        // commutative case gives the exterior algebra, n = 1 gives k[x]/(x^2)
        let c = koszul_dual(&SkewPoly::commutative(3)).unwrap();
        assert_eq!(c, QuantExterior::exterior(3));
        let one = koszul_dual(&SkewPoly::commutative(1)).unwrap();
        assert!(straighten_word(
            &Algebra::QuantExterior(one),
            &[0, 0],
            ParamScalar::one()
        )
        .unwrap()
        .is_zero());

        assert_eq!(koszul_dual(&skew(vec![2, 1], vec![1])), Err(crate::Error::NotQuadratic));
    }

    #[test]
    fn p_distinct_examples() {
        assert!(p_distinct(&skew(vec![1, 1, 1], vec![2, 3, 5])));
        assert!(!p_distinct(&skew(vec![1, 1, 1], vec![-1, 1, 1])));
        assert!(p_distinct(&skew(vec![1], vec![])));

        assert!(p_distinct_strict(&skew(vec![1, 1, 1], vec![2, 3, 5])));
        // contains 1
        assert!(!p_distinct_strict(&skew(vec![1, 1], vec![1])));
        // contains a reciprocal pair
        let recip = PTable::new(
            3,
            vec![
                ParamScalar::from_rat(crate::exact::rat(1, 2)),
                ParamScalar::from_i64(2),
                ParamScalar::from_i64(3),
            ],
        )
        .unwrap();
        assert!(!p_distinct_strict(&SkewPoly::new(vec![1, 1, 1], recip).unwrap()));
        // -1 is its own reciprocal
        assert!(!p_distinct_strict(&skew(vec![1, 1], vec![-1])));
    }

    #[test]
    fn q_generic_examples() {
        let n = |v: i64| ParamScalar::from_i64(v);
        assert!(q_generic(&n(2), &[n(3)]).unwrap());
        assert!(!q_generic(&n(9), &[n(3)]).unwrap());
        assert!(!q_generic(&n(1), &[]).unwrap());

        let q = ParamScalar::symbol("q");
        let p = ParamScalar::symbol("p");
        assert!(q_generic(&q, &[p.clone()]).unwrap());
        assert!(!q_generic(&q, &[q.clone()]).unwrap());
        assert!(q_generic(&q, &[]).unwrap());
        assert_eq!(q_generic(&q, &[n(2)]), Err(crate::Error::MixedParameters));
        assert_eq!(
            q_generic(&ParamScalar::zero(), &[]),
            Err(crate::Error::ZeroParameter)
        );
    }

    #[test]
    fn normal_degree1_examples() {
        // single variables are always normal
        let a = skew(vec![1, 1], vec![2]);
        assert!(is_normal_degree1(&[Rat::one(), rat_int(0)], &a).unwrap());
        // x1 + x2 fails when p12 = 2
        assert!(!is_normal_degree1(&[Rat::one(), Rat::one()], &a).unwrap());
        // everything is normal in the commutative ring
        let c = SkewPoly::commutative(2);
        assert!(is_normal_degree1(&[Rat::one(), Rat::one()], &c).unwrap());
    }
}
