//! The families `L(α,β)`, `U(α,β)`, `S`, `T(α,β,γ)` and `I`, their
//! generating functions, entry rules and closed-form products.
//!
//! ```text
//! f_L = 1/(1 - βu(1+αv))        L_{i,k} = β^i α^k C(i,k)
//! f_U = 1/(1 - βv(1+αu))        U = L^t
//! f_S = u/(1 - uv)              S_{i,j} = [i = j+1]
//! f_T = 1/(1 - αu - βv - γuv)
//! ```

use num_bigint::BigInt;
use num_traits::One;

use super::InfMatrix;
use crate::error::{Error, Result};
use crate::exactalg::{binomial, parse_ratfun, RatFun, Rational, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    L,
    U,
    S,
    T,
    I,
}

/// `prefactor * family(alpha, beta, gamma)`; unused parameters are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct StructParams {
    pub family: Family,
    pub alpha: RatFun,
    pub beta: RatFun,
    pub gamma: RatFun,
    pub prefactor: RatFun,
}

fn multinomial(i: usize, j: usize, c: usize) -> BigInt {
    // (i + j - c)! / (c! (i - c)! (j - c)!)
    binomial((i + j - c) as i64, c as i64) * binomial((i + j - 2 * c) as i64, (i - c) as i64)
}

fn int(n: BigInt) -> RatFun {
    RatFun::constant(Rational::from_integer(n))
}

fn nonzero(x: &RatFun, what: &str) -> Result<()> {
    if x.is_zero() {
        Err(Error::DegenerateParameters(format!("{what} vanishes identically")))
    } else {
        Ok(())
    }
}

impl StructParams {
    fn new(family: Family, alpha: RatFun, beta: RatFun, gamma: RatFun) -> Self {
        StructParams { family, alpha, beta, gamma, prefactor: RatFun::one() }
    }

    pub fn l(alpha: RatFun, beta: RatFun) -> Self {
        Self::new(Family::L, alpha, beta, RatFun::zero())
    }

    pub fn u(alpha: RatFun, beta: RatFun) -> Self {
        Self::new(Family::U, alpha, beta, RatFun::zero())
    }

    pub fn t(alpha: RatFun, beta: RatFun, gamma: RatFun) -> Self {
        Self::new(Family::T, alpha, beta, gamma)
    }

    pub fn s() -> Self {
        Self::new(Family::S, RatFun::zero(), RatFun::zero(), RatFun::zero())
    }

    pub fn identity() -> Self {
        Self::new(Family::I, RatFun::zero(), RatFun::zero(), RatFun::zero())
    }

    /// `T_{s,t}(α) = T(α, sα, 1 - tα)`.
    pub fn t_st(s: &RatFun, t: &RatFun, alpha: &RatFun) -> Self {
        Self::t(alpha.clone(), s.mul(alpha), RatFun::one().sub(&t.mul(alpha)))
    }

    pub fn with_prefactor(mut self, c: RatFun) -> Self {
        self.prefactor = self.prefactor.mul(&c);
        self
    }

    /// Rewrite `L`, `U`, `I` as members of the `T` family.
    pub fn as_t(&self) -> Option<StructParams> {
        let (a, b, g) = match self.family {
            Family::T => return Some(self.clone()),
            Family::L => (self.beta.clone(), RatFun::zero(), self.alpha.mul(&self.beta)),
            Family::U => (RatFun::zero(), self.beta.clone(), self.alpha.mul(&self.beta)),
            Family::I => (RatFun::zero(), RatFun::zero(), RatFun::one()),
            Family::S => return None,
        };
        Some(StructParams::t(a, b, g).with_prefactor(self.prefactor.clone()))
    }

    pub fn gf(&self) -> RatFun {
        let u = RatFun::var("u");
        let v = RatFun::var("v");
        let one = RatFun::one();
        let (num, den) = match self.family {
            Family::L => (one.clone(), one.sub(&self.beta.mul(&u).mul(&one.add(&self.alpha.mul(&v))))),
            Family::U => (one.clone(), one.sub(&self.beta.mul(&v).mul(&one.add(&self.alpha.mul(&u))))),
            Family::S => (u.clone(), one.sub(&u.mul(&v))),
            Family::I => (one.clone(), one.sub(&u.mul(&v))),
            Family::T => (
                one.clone(),
                one.sub(&self.alpha.mul(&u)).sub(&self.beta.mul(&v)).sub(&self.gamma.mul(&u).mul(&v)),
            ),
        };
        num.mul(&self.prefactor).div(&den).expect("generating function denominator has constant term 1")
    }

    /// Entry `(i, j)` from the explicit rule.
    pub fn entry(&self, i: usize, j: usize) -> RatFun {
        let e = match self.family {
            Family::I => {
                if i == j {
                    RatFun::one()
                } else {
                    RatFun::zero()
                }
            }
            Family::S => {
                if i == j + 1 {
                    RatFun::one()
                } else {
                    RatFun::zero()
                }
            }
            Family::L => {
                if j > i {
                    RatFun::zero()
                } else {
                    int(binomial(i as i64, j as i64))
                        .mul(&self.beta.pow(i as u32))
                        .mul(&self.alpha.pow(j as u32))
                }
            }
            Family::U => {
                if i > j {
                    RatFun::zero()
                } else {
                    int(binomial(j as i64, i as i64))
                        .mul(&self.beta.pow(j as u32))
                        .mul(&self.alpha.pow(i as u32))
                }
            }
            Family::T => {
                let mut acc = RatFun::zero();
                for c in 0..=i.min(j) {
                    let m = multinomial(i, j, c);
                    if m.is_one() && c == 0 && i == 0 && j == 0 {
                        acc = RatFun::one();
                        continue;
                    }
                    let t = int(m)
                        .mul(&self.alpha.pow((i - c) as u32))
                        .mul(&self.beta.pow((j - c) as u32))
                        .mul(&self.gamma.pow(c as u32));
                    acc = acc.add(&t);
                }
                acc
            }
        };
        e.mul(&self.prefactor)
    }

    /// Rule-backed presentation.
    pub fn matrix(&self) -> InfMatrix<RatFun> {
        let me = self.clone();
        InfMatrix::from_rule(move |i, j| Ok(me.entry(i, j)))
    }

    /// Generating-function-backed presentation.
    pub fn gf_matrix(&self) -> InfMatrix<RatFun> {
        InfMatrix::from_gf(self.gf())
    }

    /// Substitute into every parameter.
    pub fn substitute(&self, b: &std::collections::BTreeMap<String, RatFun>) -> Result<StructParams> {
        Ok(StructParams {
            family: self.family,
            alpha: self.alpha.substitute(b)?,
            beta: self.beta.substitute(b)?,
            gamma: self.gamma.substitute(b)?,
            prefactor: self.prefactor.substitute(b)?,
        })
    }
}

/// Closed form of `p q` within the families.
pub fn structured_product(p: &StructParams, q: &StructParams) -> Result<StructParams> {
    use Family::*;
    let one = RatFun::one();
    let pre = p.prefactor.mul(&q.prefactor);
    let (a, b) = (&p.alpha, &p.beta);
    let (a2, b2) = (&q.alpha, &q.beta);
    let out = match (p.family, q.family) {
        (I, _) => return Ok(q.clone().with_prefactor(p.prefactor.clone())),
        (_, I) => return Ok(p.clone().with_prefactor(q.prefactor.clone())),
        (S, _) | (_, S) => {
            return Err(Error::InvalidObject("no closed form for products with the shift".into()));
        }
        (L, L) => {
            let d = one.add(&a.mul(b2));
            nonzero(&d, "1 + αβ'")?;
            StructParams::l(a.mul(b2).mul(a2).div(&d)?, b.mul(&d))
        }
        (U, U) => {
            let d = one.add(&a2.mul(b));
            nonzero(&d, "1 + α'β")?;
            // The transpose of L(α',β') L(α,β); the second parameter is β'(1 + α'β).
            StructParams::u(a.mul(b).mul(a2).div(&d)?, b2.mul(&d))
        }
        (L, U) => StructParams::t(b.clone(), b2.clone(), b.mul(b2).mul(&a.mul(a2).sub(&one))),
        (U, L) => {
            // p = U(α', β'), q = L(α, β)
            let (ap, bp, al, bl) = (a, b, a2, b2);
            let d = one.sub(&bl.mul(bp));
            nonzero(&d, "1 - ββ'")?;
            let bb = bl.mul(bp);
            StructParams::t(ap.mul(&bb).div(&d)?, al.mul(&bb).div(&d)?, al.mul(ap).mul(&bb).div(&d)?)
                .with_prefactor(d.inv()?)
        }
        _ => {
            let x = p.as_t().expect("T-representable");
            let y = q.as_t().expect("T-representable");
            let (al, be, ga) = (&x.alpha, &x.beta, &x.gamma);
            let (al2, be2, ga2) = (&y.alpha, &y.beta, &y.gamma);
            let d = one.sub(&be.mul(al2));
            nonzero(&d, "1 - βα'")?;
            StructParams::t(
                al.add(&ga.mul(al2)).div(&d)?,
                be2.add(&ga2.mul(be)).div(&d)?,
                ga.mul(ga2).sub(&al.mul(be2)).div(&d)?,
            )
            .with_prefactor(d.inv()?)
            .with_prefactor(x.prefactor.mul(&y.prefactor))
            .with_prefactor(pre.inv()?)
        }
    };
    Ok(out.with_prefactor(pre))
}

/// Closed-form inverse.
///
/// For `T` the scalar is `(αβ + γ)/γ`: the leading entry of
/// `T(α,β,γ) T(-α/γ, -β/γ, 1/γ)` is `γ/(αβ + γ)`.
pub fn inverse(p: &StructParams) -> Result<StructParams> {
    nonzero(&p.prefactor, "prefactor")?;
    let pre = p.prefactor.inv()?;
    let out = match p.family {
        Family::I => StructParams::identity(),
        Family::S => return Err(Error::InvalidObject("the shift is not invertible".into())),
        Family::L | Family::U => {
            nonzero(&p.alpha, "α")?;
            nonzero(&p.beta, "β")?;
            let (a, b) = (p.beta.inv()?.neg(), p.alpha.inv()?.neg());
            if p.family == Family::L {
                StructParams::l(a, b)
            } else {
                StructParams::u(a, b)
            }
        }
        Family::T => {
            nonzero(&p.gamma, "γ")?;
            let d = p.alpha.mul(&p.beta).add(&p.gamma);
            nonzero(&d, "αβ + γ")?;
            let gi = p.gamma.inv()?;
            StructParams::t(p.alpha.mul(&gi).neg(), p.beta.mul(&gi).neg(), gi.clone()).with_prefactor(d.mul(&gi))
        }
    };
    Ok(out.with_prefactor(pre))
}

/// Parse `family(α, β[, γ])`, e.g. `L(1/2, x)` or `T(a, b, c)`.
pub fn parse_struct(s: &str) -> Result<StructParams> {
    let s = s.trim();
    let bad = || Error::Parse(format!("structured matrix: {s:?}"));
    let open = s.find('(').ok_or_else(bad)?;
    if !s.ends_with(')') {
        return Err(bad());
    }
    let args: Vec<RatFun> = split_top(&s[open + 1..s.len() - 1])
        .iter()
        .map(|a| parse_ratfun(a))
        .collect::<Result<_>>()?;
    match (&s[..open], args.as_slice()) {
        ("L", [a, b]) => Ok(StructParams::l(a.clone(), b.clone())),
        ("U", [a, b]) => Ok(StructParams::u(a.clone(), b.clone())),
        ("T", [a, b, c]) => Ok(StructParams::t(a.clone(), b.clone(), c.clone())),
        _ => Err(bad()),
    }
}

fn split_top(s: &str) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut depth = 0;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(String::new());
                continue;
            }
            _ => {}
        }
        out.last_mut().expect("nonempty").push(ch);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::first_difference;

    fn r(s: &str) -> RatFun {
        parse_ratfun(s).unwrap()
    }

    #[test]
    fn rules_match_generating_functions() {
        for p in [
            StructParams::l(r("a"), r("b")),
            StructParams::u(r("a"), r("b")),
            StructParams::t(r("a"), r("b"), r("c")),
            StructParams::s(),
            StructParams::identity(),
        ] {
            assert_eq!(first_difference(&p.matrix(), &p.gf_matrix(), 6).unwrap(), None, "{p:?}");
        }
    }

    #[test]
    fn identity_laws() {
        let l = StructParams::l(r("a"), r("b"));
        assert_eq!(first_difference(&l.matrix(), &l.as_t().unwrap().matrix(), 6).unwrap(), None);
        let u = StructParams::u(r("a"), r("b"));
        assert_eq!(first_difference(&u.matrix(), &u.as_t().unwrap().matrix(), 6).unwrap(), None);
        assert_eq!(first_difference(&u.matrix(), &l.matrix().transpose(), 6).unwrap(), None);
        let i = StructParams::t(r("0"), r("0"), r("1"));
        assert_eq!(first_difference(&i.matrix(), &StructParams::identity().matrix(), 6).unwrap(), None);
    }

    #[test]
    fn l_squared() {
        let l = StructParams::l(r("1"), r("1"));
        let p = structured_product(&l, &l).unwrap();
        assert_eq!(p, StructParams::l(r("1/2"), r("2")));
        let m = l.matrix().truncate(6).unwrap();
        assert_eq!(m.mul(&m), p.matrix().truncate(6).unwrap());
    }

    #[test]
    fn inverses() {
        let u = StructParams::u(r("a"), r("b"));
        assert_eq!(inverse(&u).unwrap(), StructParams::u(r("-1/b"), r("-1/a")));
        let l = StructParams::l(r("a"), r("b"));
        let m = l.matrix().truncate(5).unwrap().mul(&inverse(&l).unwrap().matrix().truncate(5).unwrap());
        assert_eq!(m, crate::linalg::Matrix::identity(5));
        assert!(matches!(inverse(&StructParams::l(r("0"), r("b"))), Err(Error::DegenerateParameters(_))));
    }

    #[test]
    fn parse_struct_forms() {
        assert_eq!(parse_struct("L(1/2, x)").unwrap(), StructParams::l(r("1/2"), r("x")));
        assert_eq!(parse_struct("T(a,(b+1),c)").unwrap(), StructParams::t(r("a"), r("b+1"), r("c")));
        assert!(parse_struct("Q(1)").is_err());
    }
}
