use std::collections::BTreeMap;
use std::fmt;


use super::gcd::gcd;
use super::mpoly::MPoly;
use super::ring::{ExactDiv, Field, Rational, Ring};
use crate::error::{Error, Result};

/// Normalized quotient of Laurent polynomials.
///
/// Canonical form: `den` is a polynomial with no monomial factor, its
/// lexicographically leading coefficient is 1, and it shares no
/// non-unit factor with `num`. Monomial denominators are absorbed into
/// `num` as negative exponents.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFun {
    num: MPoly,
    den: MPoly,
}

impl RatFun {
    pub fn new(num: MPoly, den: MPoly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let (num, den) = MPoly::align(&num, &den);
        let md = den.min_exponents();
        let neg: Vec<i32> = md.iter().map(|x| -x).collect();
        let den = den.shift(&neg);
        let num = num.shift(&neg);
        if let Some(c) = den.constant_value() {
            return Ok(RatFun { num: num.scale(&c.recip()).trim(), den: MPoly::one() });
        }
        let mn = num.min_exponents();
        let negn: Vec<i32> = mn.iter().map(|x| -x).collect();
        let mut pn = num.shift(&negn);
        let mut den = den;
        let g = gcd(&pn, &den);
        if !g.is_one() {
            pn = pn.exact_div(&g)?;
            den = den.exact_div(&g)?;
        }
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            den = den.scale(&inv);
            pn = pn.scale(&inv);
        }
        let num = MPoly::align(&pn, &den).0.shift(&mn);
        if let Some(c) = den.constant_value() {
            return Ok(RatFun { num: num.scale(&c.recip()).trim(), den: MPoly::one() });
        }
        Ok(RatFun { num: num.trim(), den: den.trim() })
    }

    pub fn from_poly(p: MPoly) -> RatFun {
        RatFun { num: p.trim(), den: MPoly::one() }
    }

    pub fn constant(c: Rational) -> RatFun {
        RatFun::from_poly(MPoly::constant(c))
    }

    pub fn var(name: &str) -> RatFun {
        RatFun::from_poly(MPoly::var(name))
    }

    pub fn zero() -> RatFun {
        RatFun { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> RatFun {
        RatFun::from_poly(MPoly::one())
    }

    pub fn from_int(n: i64) -> RatFun {
        RatFun::from_poly(MPoly::from_int(n))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&MPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFun::from_poly(self.num.add(&rhs.num));
        }
        if self.den == rhs.den {
            return RatFun::new(self.num.add(&rhs.num), self.den.clone()).expect("nonzero den");
        }
        let g = gcd(&self.den, &rhs.den);
        let d1 = self.den.exact_div(&g).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g).expect("gcd divides");
        let num = self.num.mul(&d2).add(&rhs.num.mul(&d1));
        RatFun::new(num, d1.mul(&rhs.den)).expect("nonzero den")
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, rhs: &RatFun) -> RatFun {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFun::from_poly(self.num.mul(&rhs.num));
        }
        if let Some(c) = rhs.constant_value() {
            return RatFun { num: self.num.scale(&c), den: self.den.clone() };
        }
        if let Some(c) = self.constant_value() {
            return RatFun { num: rhs.num.scale(&c), den: rhs.den.clone() };
        }
        RatFun::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).expect("nonzero den")
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RatFun) -> Result<RatFun> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(RatFun::zero());
        }
        RatFun::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i32) -> Result<RatFun> {
        let p = <RatFun as Ring>::pow(self, e.unsigned_abs());
        if e < 0 {
            p.inv()
        } else {
            Ok(p)
        }
    }

    /// Substitute rational functions for variables; unbound variables stay.
    pub fn substitute(&self, bindings: &BTreeMap<String, RatFun>) -> Result<RatFun> {
        let n = subst_poly(&self.num, bindings)?;
        let d = subst_poly(&self.den, bindings)?;
        if d.is_zero() {
            return Err(Error::PoleHit(format!("denominator {} vanishes", self.den)));
        }
        n.div(&d)
    }

    /// Evaluate with every variable bound to a rational.
    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::PoleHit(format!("denominator {} vanishes", self.den)));
        }
        Ok(self.num.eval(point)? / d)
    }

    pub fn degree_in(&self, var: &str) -> i32 {
        self.num.degree_in(var).unwrap_or(0) - self.den.degree_in(var).unwrap_or(0)
    }

    pub fn vars(&self) -> Vec<String> {
        let mut v: Vec<String> = self.num.vars().to_vec();
        v.extend(self.den.vars().iter().cloned());
        v.sort();
        v.dedup();
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        if self.is_polynomial() {
            self.num.to_json()
        } else {
            serde_json::json!({"num": self.num.to_json(), "den": self.den.to_json()})
        }
    }
}

/// Substitute into a Laurent polynomial.
pub fn subst_poly(p: &MPoly, bindings: &BTreeMap<String, RatFun>) -> Result<RatFun> {
    let vars = p.vars().to_vec();
    let vals: Vec<RatFun> = vars
        .iter()
        .map(|v| bindings.get(v).cloned().unwrap_or_else(|| RatFun::var(v)))
        .collect();
    // Cache powers per variable.
    let mut cache: Vec<BTreeMap<i32, RatFun>> = vec![BTreeMap::new(); vars.len()];
    let mut num = RatFun::zero();
    for (e, c) in p.terms() {
        let mut t = RatFun::constant(c.clone());
        for (k, &x) in e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let pk = match cache[k].get(&x) {
                Some(v) => v.clone(),
                None => {
                    if x < 0 && vals[k].is_zero() {
                        return Err(Error::PoleHit(format!("{} = 0", vars[k])));
                    }
                    let v = vals[k].powi(x)?;
                    cache[k].insert(x, v.clone());
                    v
                }
            };
            t = t.mul(&pk);
        }
        num = num.add(&t);
    }
    Ok(num)
}

impl MPoly {
    pub fn substitute(&self, bindings: &BTreeMap<String, RatFun>) -> Result<RatFun> {
        subst_poly(self, bindings)
    }
}

/// Convenience for building binding maps.
pub fn bindings<I, S>(items: I) -> BTreeMap<String, RatFun>
where
    I: IntoIterator<Item = (S, RatFun)>,
    S: Into<String>,
{
    items.into_iter().map(|(k, v)| (k.into(), v)).collect()
}

impl From<MPoly> for RatFun {
    fn from(p: MPoly) -> Self {
        RatFun::from_poly(p)
    }
}

impl From<Rational> for RatFun {
    fn from(c: Rational) -> Self {
        RatFun::constant(c)
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Ring for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn one() -> Self {
        RatFun::one()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.is_polynomial() && self.num.is_one()
    }
    fn from_int(n: i64) -> Self {
        RatFun::from_int(n)
    }
    fn add(&self, rhs: &Self) -> Self {
        RatFun::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        RatFun::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        RatFun::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        RatFun::neg(self)
    }
}

impl ExactDiv for RatFun {
    fn exact_div(&self, rhs: &Self) -> Result<Self> {
        self.div(rhs)
    }
}

impl Field for RatFun {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ring::{rat, ratio};

    fn x() -> RatFun {
        RatFun::var("x")
    }
    fn y() -> RatFun {
        RatFun::var("y")
    }

    #[test]
    fn cancels_common_factor() {
        let n = x().mul(&x()).sub(&y().mul(&y()));
        let d = x().sub(&y());
        let r = n.div(&d).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r, x().add(&y()));
    }

    #[test]
    fn canonical_denominator() {
        let a = RatFun::one().div(&x().scale(&rat(2)).add(&RatFun::from_int(4))).unwrap();
        assert_eq!(a.den().to_string(), "2 + x");
        assert_eq!(a.num().to_string(), "1/2");
        let b = RatFun::one().div(&x()).unwrap();
        assert!(b.is_polynomial());
        assert_eq!(b.to_string(), "x^-1");
        let c = RatFun::one().div(&RatFun::one().sub(&x())).unwrap();
        assert_eq!(c.to_string(), "(-1)/(-1 + x)");
    }

    #[test]
    fn sum_of_fractions() {
        let a = RatFun::one().div(&RatFun::one().sub(&x())).unwrap();
        let b = RatFun::one().div(&RatFun::one().add(&x())).unwrap();
        let s = a.add(&b);
        let expect = RatFun::from_int(2).div(&RatFun::one().sub(&x().mul(&x()))).unwrap();
        assert_eq!(s, expect);
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn substitute_and_poles() {
        let f = x().add(&y()).div(&x().sub(&y())).unwrap();
        let b = bindings([("x", RatFun::constant(rat(3))), ("y", RatFun::constant(rat(1)))]);
        assert_eq!(f.substitute(&b).unwrap(), RatFun::constant(rat(2)));
        let b = bindings([("x", y())]);
        assert!(matches!(f.substitute(&b), Err(Error::PoleHit(_))));
        let lam = RatFun::var("l");
        let p = RatFun::one().add(&lam).powi(3).unwrap();
        assert!(p.substitute(&bindings([("l", RatFun::from_int(-1))])).unwrap().is_zero());
        let half = ratio(1, 2);
        assert_eq!(RatFun::constant(half.clone()).inv().unwrap(), RatFun::from_int(2));
    }
}
