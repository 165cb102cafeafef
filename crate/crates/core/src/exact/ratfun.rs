use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::rat::{rat_to_string, Rat};
use crate::error::{Error, Result};

/// Rational function in one variable over the rationals, kept in canonical
/// form: numerator and denominator coprime, denominator monic. Equality is
/// structural equality of the canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFun {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, num_r) = num.divrem(&g);
        debug_assert!(num_r.is_zero());
        let (den, den_r) = den.divrem(&g);
        debug_assert!(den_r.is_zero());
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        let inv = Rat::one() / lc;
        RatFun {
            num: num.scale(&inv),
            den: den.monic(),
        }
    }

    pub fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFun {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inverse(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i32) -> Result<RatFun> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = RatFun::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Evaluates at a rational point; the point must not be a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// First n+1 Taylor coefficients at t = 0, by exact long division.
    pub fn series_coeffs(&self, n: usize) -> Result<Vec<Rat>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleAtZero);
        }
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.num.coeff(k);
            for i in 1..=k {
                let di = self.den.coeff(i);
                if di.is_zero() {
                    continue;
                }
                acc -= di * &out[k - i];
            }
            out.push(acc / &d0);
        }
        Ok(out)
    }

    /// Leading behaviour as t -> infinity: f = c * t^e + lower order terms,
    /// with c = lc(num)/lc(den) and e = deg(num) - deg(den).
    pub fn leading_at_infinity(&self) -> Result<(Rat, i64)> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let dn = self.num.degree().unwrap() as i64;
        let dd = self.den.degree().unwrap() as i64;
        let c = self.num.leading_coeff().unwrap() / self.den.leading_coeff().unwrap();
        Ok((c, dn - dd))
    }

    /// Canonical form of f(1/t), clearing powers of t.
    pub fn invert_t(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        // f(1/t) = t^(dd-dn) * rev(num)/rev(den)
        let mut num = self.num.reversed();
        let mut den = self.den.reversed();
        if dd >= dn {
            num = num.shift(dd - dn);
        } else {
            den = den.shift(dn - dd);
        }
        RatFun::new(num, den)
    }

    /// f(-t)
    pub fn compose_neg_t(&self) -> RatFun {
        Self::canonical(self.num.compose_neg_t(), self.den.compose_neg_t())
    }

    /// Numerator and denominator with signs flipped so the lowest nonzero
    /// denominator coefficient is positive; nicer to read, same value.
    pub fn display_pair(&self) -> (Poly, Poly) {
        let flip = self
            .den
            .coeffs()
            .iter()
            .find(|c| !c.is_zero())
            .map_or(false, |c| c.is_negative());
        if flip {
            (-&self.num, -&self.den)
        } else {
            (self.num.clone(), self.den.clone())
        }
    }

    /// Factors this function as constant * rem(t) * prod (1 -+ t^k)^e with
    /// integer exponents, requiring the denominator to factor completely
    /// into such factors; the numerator may leave a polynomial remainder.
    pub fn pm_factorization(&self) -> Option<PmFactored> {
        if self.is_zero() {
            return None;
        }
        let (num, den) = self.display_pair();
        let (c_den, den_f) = pm_factor_poly(&den)?;
        let (num_rem, num_f) = pm_factor_partial(&num);
        let (c_num, num_poly) = if num_rem.degree() == Some(0) {
            (num_rem.coeff(0), None)
        } else {
            (Rat::one(), Some(num_rem))
        };
        let mut factors: Vec<(bool, usize, i32)> = Vec::new();
        for (minus, k, e) in num_f {
            factors.push((minus, k, e as i32));
        }
        for (minus, k, e) in den_f {
            match factors.iter_mut().find(|(m, kk, _)| *m == minus && *kk == k) {
                Some(entry) => entry.2 -= e as i32,
                None => factors.push((minus, k, -(e as i32))),
            }
        }
        factors.retain(|f| f.2 != 0);
        factors.sort_by_key(|&(minus, k, _)| (k, !minus));
        Some(PmFactored {
            constant: c_num / c_den,
            num_poly,
            factors,
        })
    }
}

/// Constant * polynomial remainder * product of (1 -+ t^k)^e factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmFactored {
    pub constant: Rat,
    /// Unfactored part of the numerator, when any.
    pub num_poly: Option<Poly>,
    /// (is_minus, k, exponent); exponent may be negative (denominator factor).
    pub factors: Vec<(bool, usize, i32)>,
}

impl fmt::Display for PmFactored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fac = |minus: bool, k: usize| {
            let sign = if minus { "-" } else { "+" };
            if k == 1 {
                format!("(1 {sign} t)")
            } else {
                format!("(1 {sign} t^{k})")
            }
        };
        let num: Vec<String> = self
            .factors
            .iter()
            .filter(|(_, _, e)| *e > 0)
            .map(|&(m, k, e)| {
                if e == 1 {
                    fac(m, k)
                } else {
                    format!("{}^{e}", fac(m, k))
                }
            })
            .collect();
        let den: Vec<String> = self
            .factors
            .iter()
            .filter(|(_, _, e)| *e < 0)
            .map(|&(m, k, e)| {
                if e == -1 {
                    fac(m, k)
                } else {
                    format!("{}^{}", fac(m, k), -e)
                }
            })
            .collect();
        let mut pieces: Vec<String> = Vec::new();
        if !self.constant.is_one() {
            pieces.push(rat_to_string(&self.constant));
        }
        if let Some(p) = &self.num_poly {
            pieces.push(format!("({p})"));
        }
        pieces.extend(num);
        if pieces.is_empty() {
            pieces.push("1".into());
        }
        let top = pieces.join(" ");
        if den.is_empty() {
            write!(f, "{top}")
        } else {
            write!(f, "{top} / {}", den.join(" "))
        }
    }
}

/// Greedily peels (1 -+ t^k) factors off p, largest k first; returns the
/// remainder and the factors found.
fn pm_factor_partial(p: &Poly) -> (Poly, Vec<(bool, usize, u32)>) {
    let mut rem = p.clone();
    let mut factors = Vec::new();
    let max_k = rem.degree().unwrap_or(0);
    for k in (1..=max_k).rev() {
        for minus in [true, false] {
            let sign = if minus { -Rat::one() } else { Rat::one() };
            let f = &Poly::one() + &Poly::monomial(sign, k);
            let mut count = 0u32;
            loop {
                if rem.degree().map_or(true, |d| d < k) {
                    break;
                }
                let (q, r) = rem.divrem(&f);
                if r.is_zero() {
                    rem = q;
                    count += 1;
                } else {
                    break;
                }
            }
            if count > 0 {
                factors.push((minus, k, count));
            }
        }
    }
    (rem, factors)
}

/// Writes p as c * prod (1 -+ t^k)^e if possible.
fn pm_factor_poly(p: &Poly) -> Option<(Rat, Vec<(bool, usize, u32)>)> {
    if p.is_zero() {
        return None;
    }
    let (rem, factors) = pm_factor_partial(p);
    if rem.degree() == Some(0) {
        Some((rem.coeff(0), factors))
    } else {
        None
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        RatFun::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        RatFun::canonical(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    fn div(self, rhs: &RatFun) -> RatFun {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RatFun::canonical(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            return write!(f, "{}", self.num);
        }
        let (num, den) = self.display_pair();
        write!(f, "({num})/({den})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{rat_int, Rat};

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    /// Independent long-division oracle for Taylor coefficients.
    fn series_oracle(num: &Poly, den: &Poly, n: usize) -> Vec<Rat> {
        let mut rem: Vec<Rat> = (0..=n).map(|i| num.coeff(i)).collect();
        let d0 = den.coeff(0);
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let c = &rem[k] / &d0;
            for i in 0..=(n - k) {
                let v = den.coeff(i) * &c;
                rem[k + i] = &rem[k + i] - v;
            }
            out.push(c);
        }
        out
    }

    #[test]
    fn make_reduces_to_canonical_form() {
        // (1 + t^3)/(1 + t)^2 -> (1 - t + t^2)/(1 + t), by Euclid
        let f = RatFun::new(p(&[1, 0, 0, 1]), &p(&[1, 1]) * &p(&[1, 1])).unwrap();
        assert_eq!(f.num(), &p(&[1, -1, 1]));
        assert_eq!(f.den(), &p(&[1, 1]));

        let z = RatFun::new(Poly::zero(), p(&[1, -1])).unwrap();
        assert_eq!(z, RatFun::zero());
        assert_eq!(z.den(), &Poly::one());

        let g = RatFun::new(p(&[1, 0, 0, 0, -1]), p(&[1, -1])).unwrap();
        assert_eq!(g.num(), &p(&[1, 1, 1, 1]));
        assert_eq!(g.den(), &Poly::one());

        assert!(RatFun::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let f = RatFun::new(p(&[1]), p(&[2, 4])).unwrap();
        assert_eq!(f.den(), &p(&[1, 2]).scale(&crate::exact::rat::rat(1, 2)));
        assert_eq!(f.den().leading_coeff().unwrap(), &Rat::one());
    }

    #[test]
    fn series_binomial() {
        let f = RatFun::new(Poly::one(), &p(&[1, -1]) * &p(&[1, -1])).unwrap();
        let cs = f.series_coeffs(4).unwrap();
        assert_eq!(cs, vec![rat_int(1), rat_int(2), rat_int(3), rat_int(4), rat_int(5)]);
    }

    #[test]
    fn series_matches_long_division_oracle() {
        // 1/(1 + t + t^2 + t^3)
        let f = RatFun::new(Poly::one(), p(&[1, 1, 1, 1])).unwrap();
        let cs = f.series_coeffs(5).unwrap();
        let expect: Vec<Rat> = [1, -1, 0, 0, 1, -1].iter().map(|&c| rat_int(c)).collect();
        assert_eq!(cs, expect);
        assert_eq!(cs, series_oracle(f.num(), f.den(), 5));

        // (1 + 3t^2)/(1 - t^2)^3 = (1 + 3t^2)(1 + 3t^2 + 6t^4 + ...)
        let den = p(&[1, 0, -1]).pow(3);
        let f = RatFun::new(p(&[1, 0, 3]), den).unwrap();
        let cs = f.series_coeffs(4).unwrap();
        let expect: Vec<Rat> = [1, 0, 6, 0, 15].iter().map(|&c| rat_int(c)).collect();
        assert_eq!(cs, expect);
        assert_eq!(cs, series_oracle(f.num(), f.den(), 4));
    }

    #[test]
    fn series_pole_at_zero() {
        let f = RatFun::new(Poly::one(), p(&[0, 1])).unwrap();
        assert_eq!(f.series_coeffs(3), Err(Error::PoleAtZero));
    }

    #[test]
    fn leading_at_infinity_cases() {
        let f = RatFun::new(Poly::one(), p(&[1, 1]).pow(3)).unwrap();
        assert_eq!(f.leading_at_infinity().unwrap(), (Rat::one(), -3));

        let f = RatFun::new(p(&[1, 0, 0, 1]), p(&[1, 1]).pow(2)).unwrap();
        assert_eq!(f.leading_at_infinity().unwrap(), (Rat::one(), 1));

        // det(1 + t I_3) = (1 + t)^3
        let f = RatFun::from_poly(p(&[1, 1]).pow(3));
        assert_eq!(f.leading_at_infinity().unwrap(), (Rat::one(), 3));

        assert_eq!(RatFun::zero().leading_at_infinity(), Err(Error::ZeroFunction));
    }

    /// Substitution oracle: f(1/s) must equal invert_t(f)(s) at sample points.
    fn check_invert_t(f: &RatFun) {
        let g = f.invert_t().unwrap();
        for k in [2i64, 3, 5, -2, 7] {
            let x = rat_int(k);
            let inv = Rat::one() / &x;
            match (f.eval(&inv), g.eval(&x)) {
                (Some(a), Some(b)) => assert_eq!(a, b),
                _ => {}
            }
        }
    }

    #[test]
    fn invert_t_cases() {
        // 1/(1 - t)^n -> (-1)^n t^n/(1 - t)^n
        for n in 1..=4u32 {
            let f = RatFun::new(Poly::one(), p(&[1, -1]).pow(n)).unwrap();
            let g = f.invert_t().unwrap();
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let expect = RatFun::new(
                Poly::monomial(rat_int(sign), n as usize),
                p(&[1, -1]).pow(n),
            )
            .unwrap();
            assert_eq!(g, expect);
            check_invert_t(&f);
        }

        // (1 + 3t^2)/(1 - t^2)^3 -> -t^4 (3 + t^2)/(1 - t^2)^3
        let f = RatFun::new(p(&[1, 0, 3]), p(&[1, 0, -1]).pow(3)).unwrap();
        let g = f.invert_t().unwrap();
        let expect = RatFun::new(
            -&p(&[0, 0, 0, 0, 3, 0, 1]),
            p(&[1, 0, -1]).pow(3),
        )
        .unwrap();
        assert_eq!(g, expect);
        check_invert_t(&f);

        // t -> 1/t
        let f = RatFun::from_poly(p(&[0, 1]));
        assert_eq!(f.invert_t().unwrap(), RatFun::new(Poly::one(), p(&[0, 1])).unwrap());
    }

    #[test]
    fn pm_factorization_display() {
        // (1 - t^4)/(1 - t)^3 = (1 - t^4) / (1 - t)^3
        let f = RatFun::new(p(&[1, 0, 0, 0, -1]), p(&[1, -1]).pow(3)).unwrap();
        let fac = f.pm_factorization().unwrap();
        assert_eq!(fac.to_string(), "(1 + t) (1 + t^2) / (1 - t)^2");

        // 1 + t + t^2 + t^3 = (1 + t)(1 + t^2)
        let g = RatFun::from_poly(p(&[1, 1, 1, 1]));
        assert_eq!(g.pm_factorization().unwrap().to_string(), "(1 + t) (1 + t^2)");

        // 1 + 3t^2 stays as an unfactored remainder
        let h = RatFun::new(p(&[1, 0, 3]), p(&[1, 0, -1]).pow(3)).unwrap();
        assert_eq!(
            h.pm_factorization().unwrap().to_string(),
            "(1 + 3*t^2) / (1 - t^2)^3"
        );

        // a denominator that does not factor yields nothing
        assert!(RatFun::new(Poly::one(), p(&[1, 1, 3]))
            .unwrap()
            .pm_factorization()
            .is_none());
    }
}
