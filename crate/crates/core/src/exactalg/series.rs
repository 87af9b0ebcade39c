use std::fmt;

use super::mpoly::MPoly;
use super::ratfun::RatFun;
use super::ring::{ExactDiv, Rational, Ring};
use crate::error::{Error, Result};

/// Truncated formal power series `sum_{k<=order} c_k gvar^k`.
///
/// Results of binary operations carry the smaller of the two orders.
#[derive(Clone, PartialEq)]
pub struct GradedSeries<C> {
    gvar: String,
    order: usize,
    coeffs: Vec<C>,
}

impl<C: Ring> GradedSeries<C> {
    pub fn new(gvar: &str, order: usize, mut coeffs: Vec<C>) -> Self {
        coeffs.resize(order + 1, C::zero());
        GradedSeries { gvar: gvar.to_string(), order, coeffs }
    }

    pub fn zero(gvar: &str, order: usize) -> Self {
        Self::new(gvar, order, Vec::new())
    }

    pub fn constant(c: C, gvar: &str, order: usize) -> Self {
        Self::new(gvar, order, vec![c])
    }

    pub fn one(gvar: &str, order: usize) -> Self {
        Self::constant(C::one(), gvar, order)
    }

    /// The grading variable itself.
    pub fn gen(gvar: &str, order: usize) -> Self {
        Self::new(gvar, order, vec![C::zero(), C::one()])
    }

    pub fn gvar(&self) -> &str {
        &self.gvar
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self::new(&self.gvar, order, self.coeffs[..=order].to_vec())
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.gvar, rhs.gvar, "series in different grading variables");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let n = self.order.min(rhs.order);
        let c = (0..=n).map(|k| self.coeffs[k].add(&rhs.coeffs[k])).collect();
        Self::new(&self.gvar, n, c)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.gvar, self.order, self.coeffs.iter().map(Ring::neg).collect())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(&self.gvar, self.order, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let n = self.order.min(rhs.order);
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(&self.gvar, n, out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.gvar, self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by `gvar^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut c = vec![C::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        c.truncate(self.order + 1);
        Self::new(&self.gvar, self.order, c)
    }

    pub fn map<D: Ring, F: Fn(&C) -> D>(&self, f: F) -> GradedSeries<D> {
        GradedSeries::new(&self.gvar, self.order, self.coeffs.iter().map(f).collect())
    }
}

impl<C: ExactDiv> GradedSeries<C> {
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeffs[0].try_inv().map_err(|_| Error::NotExpandable(self.gvar.clone()))?;
        let mut out: Vec<C> = vec![c0.clone()];
        for k in 1..=self.order {
            let mut s = C::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    s = s.add(&self.coeffs[i].mul(&out[k - i]));
                }
            }
            out.push(s.mul(&c0).neg());
        }
        Ok(Self::new(&self.gvar, self.order, out))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }
}

impl GradedSeries<RatFun> {
    /// Taylor coefficients `0..=order` of `f` in `gvar`.
    pub fn from_ratfun(f: &RatFun, gvar: &str, order: usize) -> Result<Self> {
        let num = f.num().coefficients_in(gvar);
        let den = f.den().coefficients_in(gvar);
        if num.keys().next().is_some_and(|&d| d < 0) || den.keys().next().is_some_and(|&d| d < 0) {
            return Err(Error::NotExpandable(gvar.to_string()));
        }
        let d0 = den.get(&0).ok_or_else(|| Error::NotExpandable(gvar.to_string()))?;
        let d0inv = RatFun::from_poly(d0.clone()).inv()?;
        let mut out: Vec<RatFun> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut s = num.get(&(k as i32)).cloned().map(RatFun::from_poly).unwrap_or_else(RatFun::zero);
            for (&d, c) in den.range(1..(k as i32 + 1)) {
                let prev = &out[k - d as usize];
                if !prev.is_zero() {
                    s = s.sub(&RatFun::from_poly(c.clone()).mul(prev));
                }
            }
            out.push(s.mul(&d0inv));
        }
        Ok(Self::new(gvar, order, out))
    }

    /// The truncated polynomial `sum c_k gvar^k`.
    pub fn to_ratfun(&self) -> RatFun {
        let mut acc = RatFun::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&RatFun::from_poly(MPoly::monomial(&self.gvar, k as i32))));
            }
        }
        acc
    }

    /// `f` with the series `s` substituted for `var`; other variables stay
    /// in the coefficients. Negative powers of `var` need `s` invertible.
    pub fn substitute(f: &RatFun, var: &str, s: &Self) -> Result<Self> {
        let horner = |p: &MPoly| -> Result<Self> {
            let parts = p.coefficients_in(var);
            let mut acc = Self::zero(&s.gvar, s.order);
            let inv = match parts.keys().next() {
                Some(&d) if d < 0 => Some(s.inv()?),
                _ => None,
            };
            for (&d, c) in &parts {
                let c = Self::from_ratfun(&RatFun::from_poly(c.clone()), &s.gvar, s.order)?;
                let pw = if d >= 0 { s.pow(d as u32) } else { inv.as_ref().expect("inverse").pow(d.unsigned_abs()) };
                acc = acc.add(&c.mul(&pw));
            }
            Ok(acc)
        };
        let num = horner(f.num())?;
        if f.is_polynomial() {
            return Ok(num);
        }
        num.div(&horner(f.den())?)
    }

    /// `exp(self)` for a series without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotExpandable(format!("exp of a series with constant term in {}", self.gvar)));
        }
        let mut acc = Self::one(&self.gvar, self.order);
        let mut term = Self::one(&self.gvar, self.order);
        for k in 1..=self.order {
            term = term.mul(self).scale(&RatFun::constant(Rational::new(1.into(), (k as i64).into())));
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

impl<C: Ring> fmt::Debug for GradedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Ring> fmt::Display for GradedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.gvar)?,
                _ => write!(f, "({c})*{}^{k}", self.gvar)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.gvar, self.order + 1)
    }
}
