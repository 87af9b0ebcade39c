//! Executable checks of the structured-family algebra: closed-form products
//! and inverses against truncated or graded products, and the determinant
//! formulas for truncations.
//!
//! Triangular pairs (`L` then `U`, or two factors of the same triangular
//! kind) are compared through exact truncated products. Other orders are
//! compared as formal series in a grading variable `e`: either
//! `u -> eu, v -> ev` (entry `(i,j)` gets `e^{i+j}`) or, for the `T` family,
//! `α -> eα, β -> eβ` (entry `(i,j)` has valuation at least `|i-j|`).

use super::{graded_product, inverse, structured_product, truncate_entries, Family, Grading, InfMatrix, StructParams};
use crate::check::Check;
use crate::error::Result;
use crate::exactalg::{bindings, RatFun, Ring};
use crate::linalg::{sandwich_truncate, Matrix};

const EPS: &str = "e";

fn var(s: &str) -> RatFun {
    RatFun::var(s)
}

/// `u -> eu, v -> ev`.
fn scale_sum(p: &StructParams) -> StructParams {
    let e = var(EPS);
    let mut q = p.clone();
    match p.family {
        Family::L | Family::U => {
            q.alpha = p.alpha.mul(&e);
            q.beta = p.beta.mul(&e);
        }
        Family::T => {
            q.alpha = p.alpha.mul(&e);
            q.beta = p.beta.mul(&e);
            q.gamma = p.gamma.mul(&e).mul(&e);
        }
        Family::S | Family::I => {}
    }
    q
}

/// `α -> eα, β -> eβ` on a `T`-family member.
fn scale_band(p: &StructParams) -> StructParams {
    let e = var(EPS);
    let mut q = p.clone();
    q.alpha = p.alpha.mul(&e);
    q.beta = p.beta.mul(&e);
    q
}

fn graded_agrees(a: &StructParams, b: &StructParams, closed: &StructParams, grading: Grading, size: usize, order: usize) -> Result<bool> {
    let prod = graded_product(&a.matrix(), grading, &b.matrix(), grading, EPS, order);
    let want = truncate_entries(&closed.matrix(), EPS, order);
    Ok(prod.truncate(size)? == want.truncate(size)?)
}

fn truncated_agrees(a: &StructParams, b: &StructParams, closed: &StructParams, size: usize) -> Result<bool> {
    let lhs = a.matrix().truncate(size)?.mul(&b.matrix().truncate(size)?);
    Ok(lhs == closed.matrix().truncate(size)?)
}

fn triangle(k: usize) -> u32 {
    (k * (k + 1) / 2) as u32
}

/// `U(α,β) U(α',β')` as printed, with second parameter `β(1 + α'β)`.
pub fn printed_uu(p: &StructParams, q: &StructParams) -> Result<StructParams> {
    let d = RatFun::one().add(&q.alpha.mul(&p.beta));
    Ok(StructParams::u(p.alpha.mul(&p.beta).mul(&q.alpha).div(&d)?, p.beta.mul(&d)))
}

/// The `T(α,β,γ)^{-1}` prefactor as printed, `γ/(αβ+γ)`.
pub fn printed_t_inverse(p: &StructParams) -> Result<StructParams> {
    let d = p.alpha.mul(&p.beta).add(&p.gamma);
    let gi = p.gamma.inv()?;
    Ok(StructParams::t(p.alpha.mul(&gi).neg(), p.beta.mul(&gi).neg(), gi).with_prefactor(p.gamma.div(&d)?))
}

/// Closed forms of the seven product/inverse rules against truncated or
/// graded products, at `size x size` and grading order `order`.
pub fn product_rules_check(size: usize, order: usize) -> Result<Vec<Check>> {
    let (a, b, g) = (var("a"), var("b"), var("c"));
    let (a2, b2, g2) = (var("a2"), var("b2"), var("c2"));
    let l = StructParams::l(a.clone(), b.clone());
    let l2 = StructParams::l(a2.clone(), b2.clone());
    let u = StructParams::u(a.clone(), b.clone());
    let u2 = StructParams::u(a2.clone(), b2.clone());
    let t = StructParams::t(a.clone(), b.clone(), g.clone());
    let t2 = StructParams::t(a2.clone(), b2.clone(), g2.clone());
    let id = Matrix::<RatFun>::identity(size);
    let mut out = Vec::new();

    out.push(Check::flag("L L closed form", truncated_agrees(&l, &l2, &structured_product(&l, &l2)?, size)?));
    out.push(Check::flag("U U closed form", truncated_agrees(&u, &u2, &structured_product(&u, &u2)?, size)?));
    out.push(Check::flag("U U closed form as printed", truncated_agrees(&u, &u2, &printed_uu(&u, &u2)?, size)?));
    let li = inverse(&l)?;
    let ui = inverse(&u)?;
    let inv_ok = l.matrix().truncate(size)?.mul(&li.matrix().truncate(size)?) == id
        && ui.matrix().truncate(size)?.mul(&u.matrix().truncate(size)?) == id;
    out.push(Check::flag("L and U inverses", inv_ok));
    out.push(Check::flag("L U closed form", truncated_agrees(&l, &u2, &structured_product(&l, &u2)?, size)?));

    let (us, ls) = (scale_sum(&u2), scale_sum(&l));
    out.push(Check::flag(
        "U L closed form (graded)",
        graded_agrees(&us, &ls, &structured_product(&us, &ls)?, Grading::SUM, size, order)?,
    ));
    let (ts, ts2) = (scale_band(&t), scale_band(&t2));
    out.push(Check::flag(
        "T T closed form (graded)",
        graded_agrees(&ts, &ts2, &structured_product(&ts, &ts2)?, Grading::BAND, size, order)?,
    ));
    let one = StructParams::identity().matrix();
    let one = truncate_entries(&one, EPS, order).truncate(size)?;
    let inv_prod = |q: &StructParams| -> Result<bool> {
        let p = graded_product(&ts.matrix(), Grading::BAND, &q.matrix(), Grading::BAND, EPS, order);
        Ok(p.truncate(size)? == one)
    };
    out.push(Check::flag("T inverse, prefactor (ab+c)/c", inv_prod(&inverse(&ts)?)?));
    out.push(Check::flag("T inverse, prefactor c/(ab+c) as printed", inv_prod(&printed_t_inverse(&ts)?)?));
    Ok(out)
}

/// `det L^{[0,k]}(α,β)`, `det T^{[0,k]}(α,β,γ)`, the truncated `U L`
/// determinant and sandwich invariance, for `k < size`.
pub fn determinant_rules_check(size: usize) -> Result<Vec<Check>> {
    let (a, b, g) = (var("a"), var("b"), var("c"));
    let (a2, b2) = (var("a2"), var("b2"));
    let mut out = Vec::new();
    for k in 0..size {
        let n = k + 1;
        let l = StructParams::l(a.clone(), b.clone()).matrix().truncate(n)?;
        out.push(Check::eq(format!("det L[0,{k}]"), &a.mul(&b).pow(triangle(k)), &l.det()));
        let t = StructParams::t(a.clone(), b.clone(), g.clone()).matrix().truncate(n)?;
        out.push(Check::eq(format!("det T[0,{k}]"), &a.mul(&b).add(&g).pow(triangle(k)), &t.det()));
    }
    for k in 0..size {
        let got = ul_truncated_det(k)?;
        let num = a.mul(&b).mul(&a2).mul(&b2).pow(triangle(k));
        let d = RatFun::one().sub(&b.mul(&b2));
        let printed = num.div(&d.pow((k + 1) as u32))?;
        let corrected = num.div(&d.pow(((k + 1) * (k + 1)) as u32))?;
        out.push(Check::eq(format!("det (UL)[0,{k}] as printed"), &printed, &got));
        out.push(Check::eq(format!("det (UL)[0,{k}] with (1-bb2)^(k+1)^2"), &corrected, &got));
    }
    let (x, y) = (var("x"), var("y"));
    let f = StructParams::t(a.clone(), b.clone(), g.clone()).gf_matrix();
    for n in 1..=size.min(6) {
        let s = sandwich_truncate(&x, &f, &y, n)?;
        out.push(Check::eq(format!("sandwich det, n={n}"), &f.truncate(n)?.det(), &s.det()));
    }
    let n = size.max(2);
    let law = StructParams::t(a.clone(), b.clone(), g.clone()).gf().mul(&RatFun::one().sub(&x.mul(&var("u")))).mul(&RatFun::one().sub(&y.mul(&var("v"))));
    let s = sandwich_truncate(&x, &f, &y, n)?;
    out.push(Check::flag("sandwich generating function", InfMatrix::from_gf(law).truncate(n)? == s));
    Ok(out)
}

/// `det((U(α',β') L(α,β))^{[0,k]})` from the closed form.
///
/// Every closed-form parameter is `p/(1 - ββ')` with `p` polynomial, so the
/// truncation is built with a symbol `δ` for `1/(1 - ββ')`, its determinant
/// taken over polynomials, and `δ` substituted at the end.
pub fn ul_truncated_det(k: usize) -> Result<RatFun> {
    let (a, b, a2, b2) = (var("a"), var("b"), var("a2"), var("b2"));
    let d = RatFun::one().sub(&b.mul(&b2));
    let closed = structured_product(&StructParams::u(a2, b2), &StructParams::l(a, b))?;
    let delta = var("delta");
    let lift = |p: &RatFun| -> Result<RatFun> { Ok(p.mul(&d).mul(&delta)) };
    let lifted = StructParams::t(lift(&closed.alpha)?, lift(&closed.beta)?, lift(&closed.gamma)?).with_prefactor(lift(&closed.prefactor)?);
    let det = lifted.matrix().truncate(k + 1)?.det();
    det.substitute(&bindings([("delta", d.inv()?)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rules_small() {
        let checks = product_rules_check(4, 6).unwrap();
        for c in &checks {
            let printed = c.name.contains("as printed");
            assert_eq!(c.holds, !printed, "{c}");
        }
    }

    #[test]
    fn ul_determinant_discrepancy() {
        let d = parse("1 - b*b2");
        assert_eq!(ul_truncated_det(0).unwrap(), d.inv().unwrap());
        let want = parse("a*b*a2*b2").div(&d.pow(4)).unwrap();
        assert_eq!(ul_truncated_det(1).unwrap(), want);
        // The product of the two truncations has no denominator at all.
        let u = StructParams::u(var("a2"), var("b2")).matrix().truncate(2).unwrap();
        let l = StructParams::l(var("a"), var("b")).matrix().truncate(2).unwrap();
        assert_eq!(u.mul(&l).det(), parse("a*b*a2*b2"));
    }

    #[test]
    fn determinant_rules_small() {
        for c in determinant_rules_check(4).unwrap() {
            let printed = c.name.contains("as printed") && !c.name.ends_with("[0,0] as printed");
            assert_eq!(c.holds, !printed, "{c}");
        }
    }

    fn parse(s: &str) -> RatFun {
        crate::exactalg::parse_ratfun(s).unwrap()
    }
}
