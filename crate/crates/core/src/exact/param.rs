use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rat::{rat_to_string, Rat};
use crate::error::{Error, Result};

/// Laurent monomial in the declared parameter symbols: symbol name -> exponent.
/// No zero exponents are stored; the empty map is the constant monomial.
pub type ParamExp = BTreeMap<String, i64>;

/// Exact scalar in the Laurent-polynomial ring over the rationals generated
/// by formal parameter symbols. Plain rationals are the special case with no
/// symbols. A value is invertible exactly when it has a single term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ParamScalar {
    terms: BTreeMap<ParamExp, Rat>,
}

impl ParamScalar {
    pub fn zero() -> Self {
        ParamScalar {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        ParamScalar::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(ParamExp::new(), r);
        }
        ParamScalar { terms }
    }

    pub fn from_i64(n: i64) -> Self {
        ParamScalar::from_rat(super::rat::rat_int(n))
    }

    pub fn symbol(name: &str) -> Self {
        let mut exp = ParamExp::new();
        exp.insert(name.to_string(), 1);
        let mut terms = BTreeMap::new();
        terms.insert(exp, Rat::one());
        ParamScalar { terms }
    }

    pub fn monomial(coeff: Rat, exp: ParamExp) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            let exp: ParamExp = exp.into_iter().filter(|(_, e)| *e != 0).collect();
            terms.insert(exp, coeff);
        }
        ParamScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rat().map_or(false, |r| r.is_one())
    }

    pub fn is_single_term(&self) -> bool {
        self.terms.len() == 1
    }

    /// The rational value, when no symbol occurs.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (exp, c) = self.terms.iter().next().unwrap();
            if exp.is_empty() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn is_numeric(&self) -> bool {
        self.as_rat().is_some()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamExp, &Rat)> {
        self.terms.iter()
    }

    /// The single (coefficient, exponent) pair of an invertible scalar.
    pub fn single_term(&self) -> Option<(&Rat, &ParamExp)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c, e))
        } else {
            None
        }
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|e| e.keys().cloned())
            .collect()
    }

    /// Multiplicative inverse; defined only for single-term scalars.
    pub fn inverse(&self) -> Result<ParamScalar> {
        let (c, e) = self.single_term().ok_or(Error::NonInvertibleCoefficient)?;
        let exp: ParamExp = e.iter().map(|(s, k)| (s.clone(), -k)).collect();
        Ok(ParamScalar::monomial(Rat::one() / c, exp))
    }

    pub fn pow(&self, e: u32) -> ParamScalar {
        let mut acc = ParamScalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn insert_term(&mut self, exp: ParamExp, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }
}

impl Add for &ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = ParamScalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut exp = e1.clone();
                for (s, k) in e2 {
                    let v = exp.entry(s.clone()).or_insert(0);
                    *v += k;
                    if *v == 0 {
                        exp.remove(s);
                    }
                }
                out.insert_term(exp, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, c) in &self.terms {
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = exp.is_empty() || !abs.is_one();
            if show_coeff {
                write!(f, "{}", rat_to_string(&abs))?;
            }
            let mut first_sym = !show_coeff;
            for (s, k) in exp {
                if !first_sym {
                    write!(f, "*")?;
                }
                first_sym = false;
                if *k == 1 {
                    write!(f, "{s}")?;
                } else {
                    write!(f, "{s}^{k}")?;
                }
            }
        }
        Ok(())
    }
}
