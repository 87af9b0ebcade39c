//! Commuting families and their addition formulas.

use super::t_entry_series;
use crate::check::Check;
use crate::error::Result;
use crate::exactalg::{rat, GradedSeries, RatFun, Rational};
use crate::genfun::{graded_product, structured_product, Grading, InfMatrix, StructParams};
use crate::linalg::Matrix;
use crate::par;

fn var(s: &str) -> RatFun {
    RatFun::var(s)
}

fn int(n: i64) -> RatFun {
    RatFun::from_int(n)
}

/// Outcome of a graded commutator test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommuteReport {
    pub order: usize,
    /// Lowest grading order with a nonzero commutator entry, and that entry.
    pub first_failure: Option<(usize, usize, usize)>,
}

impl CommuteReport {
    pub fn commutes(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Lowest order at which `AB - BA` has a nonzero coefficient, over entries
/// `(i,j)` with `i, j < size`.
pub fn commutator_failure(
    a: &InfMatrix<RatFun>,
    b: &InfMatrix<RatFun>,
    grading: Grading,
    gvar: &str,
    order: usize,
    size: usize,
) -> Result<CommuteReport> {
    let ab = graded_product(a, grading, b, grading, gvar, order);
    let ba = graded_product(b, grading, a, grading, gvar, order);
    let cells: Vec<(usize, usize)> = (0..size).flat_map(|i| (0..size).map(move |j| (i, j))).filter(|&(i, j)| grading.bound(i, j) <= order).collect();
    let found = par::map(&cells, |&(i, j)| -> Result<Option<(usize, usize, usize)>> {
        let d = ab.coeff(i, j)?.sub(&ba.coeff(i, j)?);
        let s = GradedSeries::from_ratfun(&d, gvar, order)?;
        Ok(s.valuation().map(|v| (v, i, j)))
    });
    let mut first: Option<(usize, usize, usize)> = None;
    for f in found {
        if let Some(f) = f? {
            first = Some(first.map_or(f, |g| g.min(f)));
        }
    }
    Ok(CommuteReport { order, first_failure: first })
}

/// `T_{s,t}(eα)` and `T_{s,t}(eα')` commute to `e`-order `order`, and the
/// closed-form products agree in both orders.
pub fn commute_family_check(s: &RatFun, t: &RatFun, order: usize, size: usize) -> Result<Vec<Check>> {
    let e = var("e");
    let p = StructParams::t_st(s, t, &var("alpha").mul(&e));
    let q = StructParams::t_st(s, t, &var("alpha2").mul(&e));
    let report = commutator_failure(&p.matrix(), &q.matrix(), Grading::BAND, "e", order, size)?;
    let pq = structured_product(&p, &q)?;
    let qp = structured_product(&q, &p)?;
    Ok(vec![
        Check::new(format!("[T_st(alpha), T_st(alpha2)] to order {order}"), "0", fmt_failure(&report), report.commutes()),
        Check::flag("closed-form products agree in both orders", pq == qp),
    ])
}

fn fmt_failure(r: &CommuteReport) -> String {
    match r.first_failure {
        None => "0".into(),
        Some((v, i, j)) => format!("nonzero at order {v}, entry ({i},{j})"),
    }
}

/// `a'(g)` with `φ(κg, a') = φ(g, a)` and `a'(0) = a/κ`, to `g`-order `order`.
///
/// The variety equation is `aκ²g²a'² - κ(1 - g² + g²a²)a' + a(1 - κ²g²) = 0`;
/// it is solved by iterating `a' = a(1 - κ²g² + κ²g²a'²) / (κ(1 - g² + g²a²))`,
/// which gains two orders per step.
pub fn a_prime_series(a: &RatFun, kappa: &RatFun, order: usize) -> Result<GradedSeries<RatFun>> {
    let g = GradedSeries::<RatFun>::gen("g", order);
    let g2 = g.mul(&g);
    let k2g2 = g2.scale(&kappa.mul(kappa));
    let one = GradedSeries::one("g", order);
    let den = one.sub(&g2).add(&g2.scale(&a.mul(a))).scale(kappa).inv()?;
    let mut ap = GradedSeries::constant(a.div(kappa)?, "g", order);
    for _ in 0..order / 2 + 1 {
        let next = one.sub(&k2g2).add(&k2g2.mul(&ap).mul(&ap)).scale(a).mul(&den);
        if next == ap {
            break;
        }
        ap = next;
    }
    Ok(ap)
}

fn lorentz_series_matrix(g: GradedSeries<RatFun>, a: GradedSeries<RatFun>) -> InfMatrix<RatFun> {
    InfMatrix::from_rule(move |i, j| Ok(t_entry_series(&g, &a, i, j)?.to_ratfun()))
}

/// `T(g,a)` against `T(κg, a'(g))` on the variety `φ = const`, as series in `g`.
pub fn commute_on_variety(a: &RatFun, kappa: &RatFun, order: usize) -> Result<CommuteReport> {
    let ap = a_prime_series(a, kappa, order)?;
    commute_pair(a, kappa, ap, order)
}

/// `T(g,a)` against `T(κg, a/κ)`: off the variety unless `κ = 1`.
pub fn commute_off_variety(a: &RatFun, kappa: &RatFun, order: usize) -> Result<CommuteReport> {
    let ap = GradedSeries::constant(a.div(kappa)?, "g", order);
    commute_pair(a, kappa, ap, order)
}

fn commute_pair(a: &RatFun, kappa: &RatFun, ap: GradedSeries<RatFun>, order: usize) -> Result<CommuteReport> {
    let g = GradedSeries::<RatFun>::gen("g", order);
    let t1 = lorentz_series_matrix(g.clone(), GradedSeries::constant(a.clone(), "g", order));
    let t2 = lorentz_series_matrix(g.scale(kappa), ap);
    commutator_failure(&t1, &t2, Grading::SUM, "g", order, order + 1)
}

/// `T_{s,t}(α) T_{s,t}(α') = T_{s,t}((α+α'-tαα')/(1-sαα')) / (1-sαα')`.
pub fn t_st_addition_check() -> Result<Check> {
    let (s, t, a, b) = (var("s"), var("t"), var("alpha"), var("alpha2"));
    let lhs = structured_product(&StructParams::t_st(&s, &t, &a), &StructParams::t_st(&s, &t, &b))?;
    let d = RatFun::one().sub(&s.mul(&a).mul(&b));
    let sum = a.add(&b).sub(&t.mul(&a).mul(&b)).div(&d)?;
    let rhs = StructParams::t_st(&s, &t, &sum).with_prefactor(d.inv()?);
    Ok(Check::flag("T_st addition formula", lhs == rhs))
}

/// `L_t(α) = L(1/α - t, α) = T_{0,t}(α)` and `L_t(α)L_t(α') = L_t(α+α'-tαα')`.
pub fn l_t_addition_check() -> Result<Vec<Check>> {
    let (t, a, b) = (var("t"), var("alpha"), var("alpha2"));
    let lt = |x: &RatFun| StructParams::l(x.inv().expect("nonzero").sub(&t), x.clone());
    let same = lt(&a).as_t() == Some(StructParams::t_st(&RatFun::zero(), &t, &a));
    let prod = structured_product(&lt(&a), &lt(&b))?;
    let want = lt(&a.add(&b).sub(&t.mul(&a).mul(&b)));
    Ok(vec![Check::flag("L_t = T_{0,t}", same), Check::flag("L_t addition formula", prod == want)])
}

/// `α(a) = (1 - e^{-ta})/t` as a series in `a` with `t` symbolic.
fn ell_alpha(t: &RatFun, order: usize) -> Result<GradedSeries<RatFun>> {
    let minus_ta = GradedSeries::<RatFun>::gen("a", order).scale(&t.neg());
    let e = minus_ta.exp()?;
    let one = GradedSeries::one("a", order);
    Ok(one.sub(&e).scale(&t.inv()?))
}

/// With `a' = c a`: `α(a) + α(a') - tα(a)α(a') = α(a + a')` as `a`-series.
pub fn ell_t_parameter_check(order: usize) -> Result<Check> {
    let (t, c) = (var("t"), var("c"));
    let al = ell_alpha(&t, order)?;
    let scaled = |f: &GradedSeries<RatFun>, k: &RatFun| -> GradedSeries<RatFun> {
        let mut pw = RatFun::one();
        let mut out = Vec::new();
        for i in 0..=order {
            out.push(f.coeff(i).mul(&pw));
            pw = pw.mul(k);
        }
        GradedSeries::new("a", order, out)
    };
    let al2 = scaled(&al, &c);
    let sum = scaled(&al, &RatFun::one().add(&c));
    let lhs = al.add(&al2).sub(&al.mul(&al2).scale(&t));
    Ok(Check::flag(format!("l_t parameter addition to a-order {order}"), lhs == sum))
}

/// `M_t`: diagonal `i t`, subdiagonal `-i`.
pub fn m_t_matrix(t: &RatFun) -> InfMatrix<RatFun> {
    let t = t.clone();
    InfMatrix::from_rule(move |i, j| {
        Ok(if i == j {
            t.mul(&int(i as i64))
        } else if i == j + 1 {
            int(-(i as i64))
        } else {
            RatFun::zero()
        })
    })
}

/// `ℓ_t(a) = exp(-a M_t)` on `k x k` truncations to `a`-order `order`.
pub fn ell_t_exp_check(k: usize, order: usize) -> Result<Vec<Check>> {
    let t = var("t");
    let m = m_t_matrix(&t);
    let (u, v) = (var("u"), var("v"));
    let one = RatFun::one();
    let uv = one.sub(&u.mul(&v));
    let f = t.mul(&v).sub(&one).mul(&u).div(&uv.mul(&uv))?;
    let gf_ok = InfMatrix::from_gf(f).truncate(k)? == m.truncate(k)?;

    // exp(-aM) = sum_n (-a)^n M^n / n!
    let mk = m.truncate(k)?;
    let mut pw = Matrix::<RatFun>::identity(k);
    let mut expm = vec![vec![vec![RatFun::zero(); order + 1]; k]; k];
    let mut fact = rat(1);
    for n in 0..=order {
        if n > 0 {
            pw = pw.mul(&mk);
            fact *= Rational::from_integer(n.into());
        }
        let c = RatFun::constant(Rational::from_integer((if n % 2 == 0 { 1 } else { -1 }).into()) / &fact);
        for (i, row) in expm.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                cell[n] = pw.get(i, j).mul(&c);
            }
        }
    }

    // ℓ_t(a)_{i,j} = C(i,j) α^{i-j} (1-tα)^j from L(1/α - t, α), α = (1-e^{-ta})/t.
    let al = ell_alpha(&t, order)?;
    let entry_poly = StructParams::l(var("al").inv()?.sub(&t), var("al"));
    let mut ok = true;
    for (i, row) in expm.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let s = GradedSeries::substitute(&entry_poly.entry(i, j), "al", &al)?;
            ok &= GradedSeries::new("a", order, cell.clone()) == s;
        }
    }
    Ok(vec![
        Check::flag("M_t generating function (tv-1)u/(1-uv)^2", gf_ok),
        Check::flag(format!("l_t(a) = exp(-a M_t), k={k}, a-order {order}"), ok),
    ])
}

/// `α(E) = 2(E-1)/(t(E(r+1)+r-1))` with `E = e^{rta}`.
pub fn tau_alpha(e: &RatFun, r: &RatFun, t: &RatFun) -> Result<RatFun> {
    let one = RatFun::one();
    let num = int(2).mul(&e.sub(&one));
    let den = t.mul(&e.mul(&r.add(&one)).add(r).sub(&one));
    num.div(&den)
}

/// The printed parameter `2(E-1)/(t(tE(r+1)+r-1))`.
pub fn tau_alpha_printed(e: &RatFun, r: &RatFun, t: &RatFun) -> Result<RatFun> {
    let one = RatFun::one();
    let num = int(2).mul(&e.sub(&one));
    let den = t.mul(&t.mul(e).mul(&r.add(&one)).add(r).sub(&one));
    num.div(&den)
}

/// `τ_{r,t}(a)τ_{r,t}(a') = τ_{r,t}(a+a')/(1 - ...)` with `s = t²(1-r²)/4`,
/// in the variables `E = e^{rta}`, `E' = e^{rta'}` (so `e^{rt(a+a')} = EE'`).
///
/// Reports the formula with the corrected parameter and prefactor, the
/// printed version, and the reduction at `r = 1`.
pub fn tau_addition_check() -> Result<Vec<Check>> {
    let (r, t, e1, e2) = (var("r"), var("t"), var("E"), var("E2"));
    let one = RatFun::one();
    let s = t.mul(&t).mul(&one.sub(&r.mul(&r))).div(&int(4))?;
    let mut out = Vec::new();
    for (name, alpha, pre_t) in [("corrected", tau_alpha as fn(&RatFun, &RatFun, &RatFun) -> Result<RatFun>, one.clone()), ("as printed", tau_alpha_printed, t.clone())] {
        let (a1, a2, a12) = (alpha(&e1, &r, &t)?, alpha(&e2, &r, &t)?, alpha(&e1.mul(&e2), &r, &t)?);
        let lhs = structured_product(&StructParams::t_st(&s, &t, &a1), &StructParams::t_st(&s, &t, &a2))?;
        let w = |e: &RatFun| pre_t.mul(e).mul(&r.add(&one)).add(&r).sub(&one);
        let inner = one.sub(&r.mul(&r)).mul(&e1.sub(&one)).mul(&e2.sub(&one)).div(&w(&e1).mul(&w(&e2)))?;
        let rhs = StructParams::t_st(&s, &t, &a12).with_prefactor(one.sub(&inner).inv()?);
        out.push(Check::flag(format!("tau_rt addition formula, {name}"), lhs == rhs));
        // r = 1, E = e^{ta}: the parameter should be (1 - 1/E)/t.
        let at1 = alpha(&e1, &one, &t)?;
        let want = one.sub(&e1.inv()?).div(&t)?;
        out.push(Check::eq(format!("tau_rt parameter at r=1, {name}"), &want, &at1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatFun {
        crate::exactalg::parse_ratfun(s).unwrap()
    }

    #[test]
    fn family_commutes() {
        for c in commute_family_check(&r("1"), &r("3"), 6, 5).unwrap() {
            assert!(c.holds, "{c}");
        }
    }

    #[test]
    fn a_prime_solves_the_variety() {
        let (a, k) = (r("2/3"), r("3/2"));
        let ap = a_prime_series(&a, &k, 10).unwrap();
        assert_eq!(ap.coeff(0), r("4/9"));
        let g = GradedSeries::<RatFun>::gen("g", 10);
        let g2 = g.mul(&g);
        let one = GradedSeries::one("g", 10);
        let lhs = g2.mul(&ap).mul(&ap).scale(&a.mul(&k).mul(&k));
        let mid = one.sub(&g2).add(&g2.scale(&a.mul(&a))).mul(&ap).scale(&k);
        let rest = one.sub(&g2.scale(&k.mul(&k))).scale(&a);
        assert!(lhs.sub(&mid).add(&rest).is_zero());
    }

    #[test]
    fn on_and_off_variety() {
        let on = commute_on_variety(&r("2/3"), &r("3/2"), 8).unwrap();
        assert!(on.commutes(), "{on:?}");
        let off = commute_off_variety(&r("2/3"), &r("3/2"), 8).unwrap();
        assert!(!off.commutes());
        assert!(commute_off_variety(&r("2/3"), &r("1"), 6).unwrap().commutes());
    }

    #[test]
    fn addition_formulas() {
        assert!(t_st_addition_check().unwrap().holds);
        for c in l_t_addition_check().unwrap() {
            assert!(c.holds, "{c}");
        }
        assert!(ell_t_parameter_check(6).unwrap().holds);
        for c in ell_t_exp_check(4, 6).unwrap() {
            assert!(c.holds, "{c}");
        }
    }

    #[test]
    fn tau_formula() {
        let checks = tau_addition_check().unwrap();
        for c in &checks {
            assert_eq!(c.holds, c.name.contains("corrected"), "{c}");
        }
    }
}
