//! Bivariate series and polynomials in the two generating-function
//! variables `u` (rows) and `v` (columns).

use std::collections::BTreeMap;

use super::mpoly::MPoly;
use super::ratfun::RatFun;
use super::ring::{ExactDiv, Rational, Ring};
use crate::error::{Error, Result};

pub const U: &str = "u";
pub const V: &str = "v";

/// Coefficients of `u^i v^j` for `i < rows`, `j < cols`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Ring> BiSeries<C> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        BiSeries { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> C {
        if i < self.rows && j < self.cols {
            self.data[i * self.cols + j].clone()
        } else {
            C::zero()
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &C {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        if i < self.rows && j < self.cols {
            self.data[i * self.cols + j] = c;
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (r, c) = (self.rows.min(rhs.rows), self.cols.min(rhs.cols));
        let mut out = Self::zero(r, c);
        for i in 0..r {
            for j in 0..c {
                out.set(i, j, self.at(i, j).add(rhs.at(i, j)));
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let (r, c) = (self.rows.min(rhs.rows), self.cols.min(rhs.cols));
        let mut out = Self::zero(r, c);
        for a in 0..r {
            for b in 0..c {
                let x = self.at(a, b);
                if x.is_zero() {
                    continue;
                }
                for i in a..r {
                    for j in b..c {
                        let y = rhs.at(i - a, j - b);
                        if !y.is_zero() {
                            let k = i * c + j;
                            out.data[k] = out.data[k].add(&x.mul(y));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn map<D: Ring, F: Fn(&C) -> D>(&self, f: F) -> BiSeries<D> {
        BiSeries { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl BiSeries<RatFun> {
    /// Coefficients of a rational function of `u`, `v` (other variables are
    /// parameters); the denominator must have a nonzero constant term in `(u, v)`.
    pub fn from_ratfun(f: &RatFun, rows: usize, cols: usize) -> Result<Self> {
        Self::from_quotient(f.num(), f.den(), rows, cols)
    }

    /// As [`BiSeries::from_ratfun`] for the unreduced quotient `num/den`.
    pub fn from_quotient(num: &MPoly, den: &MPoly, rows: usize, cols: usize) -> Result<Self> {
        let num = split_uv(num)?;
        let den = split_uv(den)?;
        let d0 = den
            .get(&(0, 0))
            .ok_or_else(|| Error::NotExpandable("u, v jointly".into()))?;
        if let Some(c) = d0.constant_value() {
            return Ok(Self::from_poly_quotient(&num, &den, &c, rows, cols));
        }
        let d0inv = RatFun::from_poly(d0.clone()).inv()?;
        let den: Vec<((usize, usize), RatFun)> = den
            .iter()
            .filter(|(k, _)| **k != (0, 0))
            .map(|(&k, p)| (k, RatFun::from_poly(p.clone())))
            .collect();
        let mut out = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let mut s = num.get(&(i, j)).cloned().map(RatFun::from_poly).unwrap_or_else(RatFun::zero);
                for ((a, b), d) in &den {
                    if *a <= i && *b <= j {
                        let prev = out.at(i - a, j - b);
                        if !prev.is_zero() {
                            s = s.sub(&d.mul(prev));
                        }
                    }
                }
                out.set(i, j, s.mul(&d0inv));
            }
        }
        Ok(out)
    }
}

impl BiSeries<RatFun> {
    /// The recurrence of [`BiSeries::from_ratfun`] in polynomial arithmetic,
    /// for a denominator whose constant term is the nonzero number `d0`.
    fn from_poly_quotient(
        num: &BTreeMap<(usize, usize), MPoly>,
        den: &BTreeMap<(usize, usize), MPoly>,
        d0: &Rational,
        rows: usize,
        cols: usize,
    ) -> Self {
        let d0inv = Rational::one() / d0;
        let den: Vec<(&(usize, usize), &MPoly)> = den.iter().filter(|(k, _)| **k != (0, 0)).collect();
        let mut polys: Vec<MPoly> = vec![MPoly::zero(); rows * cols];
        for i in 0..rows {
            for j in 0..cols {
                let mut s = num.get(&(i, j)).cloned().unwrap_or_else(MPoly::zero);
                for (&(a, b), d) in &den {
                    if a <= i && b <= j {
                        let prev = &polys[(i - a) * cols + (j - b)];
                        if !prev.is_zero() {
                            s = s.sub(&d.mul(prev));
                        }
                    }
                }
                polys[i * cols + j] = s.scale(&d0inv);
            }
        }
        let mut out = Self::zero(rows, cols);
        for (k, p) in polys.into_iter().enumerate() {
            out.set(k / cols, k % cols, RatFun::from_poly(p));
        }
        out
    }
}

/// Split a polynomial by its `(u, v)` exponents.
pub fn split_uv(p: &MPoly) -> Result<BTreeMap<(usize, usize), MPoly>> {
    let mut out = BTreeMap::new();
    for (du, pu) in p.coefficients_in(U) {
        for (dv, puv) in pu.coefficients_in(V) {
            if du < 0 || dv < 0 {
                return Err(Error::NotExpandable("u, v (negative exponent)".into()));
            }
            out.insert((du as usize, dv as usize), puv);
        }
    }
    Ok(out)
}

/// Sparse polynomial in `u`, `v` with coefficients in `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct UvPoly<C> {
    terms: BTreeMap<(u32, u32), C>,
}

impl<C: Ring> UvPoly<C> {
    pub fn zero() -> Self {
        UvPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn monomial(c: C, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        UvPoly { terms }
    }

    pub fn u() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    pub fn v() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: (u32, u32), c: C) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.get(&k) {
            Some(x) => x.add(&c),
            None => c,
        };
        if s.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, s);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        UvPoly { terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.terms {
            out.add_term(*k, x.mul(c));
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &rhs.terms {
                out.add_term((a + c, b + d), x.mul(y));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn coeff(&self, i: u32, j: u32) -> C {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(C::zero)
    }

    pub fn to_biseries(&self, rows: usize, cols: usize) -> BiSeries<C> {
        let mut out = BiSeries::zero(rows, cols);
        for (&(i, j), c) in &self.terms {
            out.set(i as usize, j as usize, c.clone());
        }
        out
    }

    pub fn map<D: Ring, F: Fn(&C) -> D>(&self, f: F) -> UvPoly<D> {
        let mut out = UvPoly::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, f(c));
        }
        out
    }
}

/// Quotient of two [`UvPoly`]s, kept unreduced.
#[derive(Clone, Debug)]
pub struct UvFrac<C> {
    pub num: UvPoly<C>,
    pub den: UvPoly<C>,
}

impl<C: Ring> UvFrac<C> {
    pub fn new(num: UvPoly<C>, den: UvPoly<C>) -> Self {
        UvFrac { num, den }
    }

    pub fn poly(p: UvPoly<C>) -> Self {
        UvFrac { num: p, den: UvPoly::one() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return UvFrac { num: self.num.add(&rhs.num), den: self.den.clone() };
        }
        UvFrac {
            num: self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            den: self.den.mul(&rhs.den),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&UvFrac { num: rhs.num.neg(), den: rhs.den.clone() })
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        UvFrac { num: self.num.mul(&rhs.num), den: self.den.mul(&rhs.den) }
    }

    pub fn mul_poly(&self, p: &UvPoly<C>) -> Self {
        UvFrac { num: self.num.mul(p), den: self.den.clone() }
    }

    /// Equality by cross-multiplication.
    pub fn equals(&self, rhs: &Self) -> bool {
        self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)).is_zero()
    }
}

impl<C: ExactDiv> UvFrac<C> {
    /// Coefficients `u^i v^j`, `i < rows`, `j < cols`.
    pub fn to_biseries(&self, rows: usize, cols: usize) -> Result<BiSeries<C>> {
        let c00 = self.den.coeff(0, 0);
        let inv = c00.try_inv().map_err(|_| Error::NotExpandable("u, v jointly".into()))?;
        let den: Vec<((usize, usize), C)> = self
            .den
            .terms()
            .iter()
            .filter(|(k, _)| **k != (0, 0))
            .map(|(&(a, b), c)| ((a as usize, b as usize), c.clone()))
            .collect();
        let mut out: BiSeries<C> = BiSeries::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let mut s = self.num.coeff(i as u32, j as u32);
                for ((a, b), d) in &den {
                    if *a <= i && *b <= j {
                        let prev = out.at(i - a, j - b);
                        if !prev.is_zero() {
                            s = s.sub(&d.mul(prev));
                        }
                    }
                }
                out.set(i, j, s.mul(&inv));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ring::{rat, Rational};

    fn u() -> RatFun {
        RatFun::var(U)
    }
    fn v() -> RatFun {
        RatFun::var(V)
    }

    #[test]
    fn binomial_coefficients() {
        let f = RatFun::one().div(&RatFun::one().sub(&u()).sub(&v())).unwrap();
        let s = BiSeries::from_ratfun(&f, 4, 4).unwrap();
        assert_eq!(s.get(2, 2), RatFun::from_int(6));
        assert_eq!(s.get(3, 1), RatFun::from_int(4));
    }

    #[test]
    fn shift_matrix_entries() {
        let f = u().div(&RatFun::one().sub(&u().mul(&v()))).unwrap();
        let s = BiSeries::from_ratfun(&f, 5, 5).unwrap();
        assert_eq!(s.get(3, 2), RatFun::one());
        assert!(s.get(2, 3).is_zero());
    }

    #[test]
    fn uvfrac_expansion_matches_ratfun_expansion() {
        let num = UvPoly::<Rational>::one().add(&UvPoly::u().scale(&rat(2)));
        let den = UvPoly::<Rational>::one().sub(&UvPoly::u()).sub(&UvPoly::v().mul(&UvPoly::u()));
        let a = UvFrac::new(num, den).to_biseries(5, 5).unwrap();
        let f = RatFun::one()
            .add(&u().scale(&rat(2)))
            .div(&RatFun::one().sub(&u()).sub(&u().mul(&v())))
            .unwrap();
        let b = BiSeries::from_ratfun(&f, 5, 5).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(RatFun::constant(a.get(i, j)), b.get(i, j));
            }
        }
    }

    #[test]
    fn series_product() {
        let a = UvPoly::<Rational>::one().sub(&UvPoly::u()).to_biseries(4, 4);
        let f = RatFun::one().div(&RatFun::one().sub(&u())).unwrap();
        let b = BiSeries::from_ratfun(&f, 4, 4).unwrap().map(|c| c.constant_value().unwrap());
        let p = a.mul(&b);
        assert_eq!(p.get(0, 0), rat(1));
        assert!((1..4).all(|i| p.get(i, 0) == rat(0)));
    }
}
