use std::fmt;
use std::sync::OnceLock;

use super::ratfun::RatFun;
use super::ring::{ExactDiv, Field, Rational, Ring};
use crate::error::{Error, Result};

/// Element `a0 + a1*nu` of `RatFun[nu] / (x*nu^2 - (x+y-1)*nu + y)`.
///
/// `nu` is any root of `x*nu*(1-nu) = nu + y*(1-nu)`; products are reduced
/// eagerly with `nu^2 = s*nu + p`, `s = (x+y-1)/x`, `p = -y/x`.
#[derive(Clone, PartialEq, Eq)]
pub struct NuElem {
    pub a0: RatFun,
    pub a1: RatFun,
}

struct Relation {
    s: RatFun,
    p: RatFun,
}

fn relation() -> &'static Relation {
    static REL: OnceLock<Relation> = OnceLock::new();
    REL.get_or_init(|| {
        let x = RatFun::var("x");
        let y = RatFun::var("y");
        let s = x.add(&y).sub(&RatFun::one()).div(&x).expect("x nonzero");
        let p = y.neg().div(&x).expect("x nonzero");
        Relation { s, p }
    })
}

impl NuElem {
    pub fn new(a0: RatFun, a1: RatFun) -> NuElem {
        NuElem { a0, a1 }
    }

    pub fn nu() -> NuElem {
        NuElem { a0: RatFun::zero(), a1: RatFun::one() }
    }

    pub fn scalar(a0: RatFun) -> NuElem {
        NuElem { a0, a1: RatFun::zero() }
    }

    /// True when the `nu` component vanishes.
    pub fn is_nu_free(&self) -> bool {
        self.a1.is_zero()
    }

    pub fn conj(&self) -> NuElem {
        let r = relation();
        NuElem { a0: self.a0.add(&self.a1.mul(&r.s)), a1: self.a1.neg() }
    }

    /// `self * conj(self)`, which is free of `nu`.
    pub fn norm(&self) -> RatFun {
        let r = relation();
        let a0 = &self.a0;
        let a1 = &self.a1;
        a0.mul(a0).add(&a0.mul(a1).mul(&r.s)).sub(&a1.mul(a1).mul(&r.p))
    }

    pub fn inv(&self) -> Result<NuElem> {
        if self.a1.is_zero() {
            return Ok(NuElem::scalar(self.a0.inv()?));
        }
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ni = n.inv()?;
        let c = self.conj();
        Ok(NuElem { a0: c.a0.mul(&ni), a1: c.a1.mul(&ni) })
    }

    pub fn scale(&self, c: &RatFun) -> NuElem {
        NuElem { a0: self.a0.mul(c), a1: self.a1.mul(c) }
    }

    /// Specialize at a rational point `(x0, y0, ...)` and a rational root `nu0`.
    pub fn eval_at(&self, point: &std::collections::BTreeMap<String, Rational>, nu0: &Rational) -> Result<Rational> {
        Ok(self.a0.eval(point)? + self.a1.eval(point)? * nu0)
    }

    pub fn substitute(&self, b: &std::collections::BTreeMap<String, RatFun>) -> Result<NuElem> {
        Ok(NuElem { a0: self.a0.substitute(b)?, a1: self.a1.substitute(b)? })
    }
}

impl fmt::Debug for NuElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NuElem({self})")
    }
}

impl fmt::Display for NuElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a1.is_zero() {
            write!(f, "{}", self.a0)
        } else if self.a0.is_zero() {
            write!(f, "({})*nu", self.a1)
        } else {
            write!(f, "{} + ({})*nu", self.a0, self.a1)
        }
    }
}

impl Ring for NuElem {
    fn zero() -> Self {
        NuElem::scalar(RatFun::zero())
    }
    fn one() -> Self {
        NuElem::scalar(RatFun::one())
    }
    fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero()
    }
    fn from_int(n: i64) -> Self {
        NuElem::scalar(RatFun::from_int(n))
    }
    fn add(&self, rhs: &Self) -> Self {
        NuElem { a0: self.a0.add(&rhs.a0), a1: self.a1.add(&rhs.a1) }
    }
    fn sub(&self, rhs: &Self) -> Self {
        NuElem { a0: self.a0.sub(&rhs.a0), a1: self.a1.sub(&rhs.a1) }
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.a1.is_zero() {
            return rhs.scale(&self.a0);
        }
        if rhs.a1.is_zero() {
            return self.scale(&rhs.a0);
        }
        let r = relation();
        let hh = self.a1.mul(&rhs.a1);
        NuElem {
            a0: self.a0.mul(&rhs.a0).add(&hh.mul(&r.p)),
            a1: self.a0.mul(&rhs.a1).add(&self.a1.mul(&rhs.a0)).add(&hh.mul(&r.s)),
        }
    }
    fn neg(&self) -> Self {
        NuElem { a0: self.a0.neg(), a1: self.a1.neg() }
    }
}

impl ExactDiv for NuElem {
    fn exact_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }
}

impl Field for NuElem {}

impl From<RatFun> for NuElem {
    fn from(a: RatFun) -> Self {
        NuElem::scalar(a)
    }
}
