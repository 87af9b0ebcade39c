//! Spectral decomposition of `T(g,a)`.
//!
//! With `φ(g,a) = q + 1/q` and `λ = (1 - ga/q)/(1 - qga)`,
//!
//! ```text
//! f_T = (1 - λq²)/((1-qu)(1-qv) - λ(u-q)(v-q))
//!     = sum_m (1-q²) ṽ^(m)(u) Λ^(m) ṽ^(m)(v),
//! ṽ^(m)(u) = (q-u)^m/(1-qu)^{m+1},   Λ^(m) = (1-λq²)/(1-q²) λ^m.
//! ```
//!
//! The eigenvectors are kept unnormalized so everything stays rational.

use super::t_entry_series;
use crate::check::Check;
use crate::error::{Error, Result};
use crate::exactalg::{binomial, GradedSeries, MPoly, RatFun, Rational, Ring};
use crate::genfun::StructParams;

fn var(s: &str) -> RatFun {
    RatFun::var(s)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData {
    pub q: RatFun,
    pub lambda: RatFun,
}

impl SpectralData {
    pub fn new(q: RatFun, lambda: RatFun) -> Result<Self> {
        if RatFun::one().sub(&q.mul(&q)).is_zero() {
            return Err(Error::DegenerateParameters("1 - q^2 = 0".into()));
        }
        Ok(SpectralData { q, lambda })
    }

    /// Symbols `q`, `lambda`.
    pub fn symbolic() -> Self {
        SpectralData { q: var("q"), lambda: var("lambda") }
    }

    /// `Λ^(m) = (1-λq²)/(1-q²) λ^m`.
    pub fn eigenvalue(&self, m: usize) -> RatFun {
        let q2 = self.q.mul(&self.q);
        let one = RatFun::one();
        one.sub(&self.lambda.mul(&q2)).div(&one.sub(&q2)).expect("1 - q^2 is nonzero").mul(&self.lambda.pow(m as u32))
    }

    /// `ṽ^(m)(w) = (q-w)^m/(1-qw)^{m+1}` in the variable `w`.
    pub fn eigenvector_gf(&self, m: usize, w: &str) -> RatFun {
        let w = var(w);
        let num = self.q.sub(&w).pow(m as u32);
        num.div(&RatFun::one().sub(&self.q.mul(&w)).pow(m as u32 + 1)).expect("constant term 1")
    }

    /// `(1-λq²)/((1-qu)(1-qv) - λ(u-q)(v-q))`.
    pub fn gf(&self) -> RatFun {
        let (u, v) = (var("u"), var("v"));
        let one = RatFun::one();
        let q = &self.q;
        let den = one.sub(&q.mul(&u)).mul(&one.sub(&q.mul(&v))).sub(&self.lambda.mul(&u.sub(q)).mul(&v.sub(q)));
        one.sub(&self.lambda.mul(q).mul(q)).div(&den).expect("nonzero denominator")
    }
}

/// `ṽ^(m)_i = sum_j C(m,j) (-1)^j C(m+i-j, m) q^{m+i-2j}`.
pub fn eigenvector_coeff(q: &RatFun, m: usize, i: usize) -> RatFun {
    let mut acc = RatFun::zero();
    for j in 0..=m.min(i) {
        let c = binomial(m as i64, j as i64) * binomial((m + i - j) as i64, m as i64);
        let c = if j % 2 == 0 { c } else { -c };
        acc = acc.add(&RatFun::constant(Rational::from_integer(c)).mul(&q.pow((m + i - 2 * j) as u32)));
    }
    acc
}

/// The `λ^p` coefficient of the left side equals the `m = p` and `m = p-1`
/// terms of the eigen-expansion, for `p <= pmax`.
///
/// Writing the left side as `N/D` with `N, D` linear in `λ`, its `λ^p`
/// coefficient is `P_p / D_0^{p+1}` where `P_p = N_p D_0^p - D_1 P_{p-1}`;
/// the comparison is made by cross-multiplying polynomials.
pub fn lambda_series_check(pmax: usize) -> Result<Vec<Check>> {
    let sd = SpectralData::symbolic();
    let f = sd.gf();
    let part = |p: &MPoly, k: i32| p.coeff_in("lambda", k);
    let (n0, n1) = (part(f.num(), 0), part(f.num(), 1));
    let (d0, d1) = (part(f.den(), 0), part(f.den(), 1));
    if f.num().degree_in("lambda").unwrap_or(0) > 1 || f.den().degree_in("lambda").unwrap_or(0) > 1 {
        return Err(Error::InvalidObject("expected a generating function linear in lambda".into()));
    }
    let q2 = sd.q.mul(&sd.q);
    if !q2.den().is_one() {
        return Err(Error::InvalidObject("expected a polynomial q".into()));
    }
    let q2 = q2.num().clone();
    // ṽ^(m)(u) ṽ^(m)(v) as an unreduced numerator/denominator pair.
    let term = |m: usize| {
        let (fu, fv) = (sd.eigenvector_gf(m, "u"), sd.eigenvector_gf(m, "v"));
        (fu.num().mul(fv.num()), fu.den().mul(fv.den()))
    };
    let mut out = Vec::new();
    let mut prev = MPoly::zero();
    for p in 0..=pmax {
        let np = match p {
            0 => n0.clone(),
            1 => n1.clone(),
            _ => MPoly::zero(),
        };
        let cur = np.mul(&d0.pow(p as u32)).sub(&d1.mul(&prev));
        let (mut rn, mut rd) = term(p);
        if p > 0 {
            let (sn, sd_) = term(p - 1);
            rn = rn.mul(&sd_).sub(&q2.mul(&sn).mul(&rd));
            rd = rd.mul(&sd_);
        }
        let holds = cur.mul(&rd) == rn.mul(&d0.pow(p as u32 + 1));
        out.push(Check::new(format!("lambda^{p} coefficient"), format!("({rn})/({rd})"), format!("({cur})/({d0})^{}", p + 1), holds));
        prev = cur;
    }
    Ok(out)
}

/// `(1-q²) sum_i ṽ^(m)_i ṽ^(m')_i = δ_{m,m'}` as `q`-series to `order`,
/// for `m, m' <= mmax`. Each `ṽ^(m)_i` must have `q`-valuation `>= |i-m|`.
pub fn orthonormality_check(mmax: usize, order: usize) -> Result<Vec<Check>> {
    let q = var("q");
    let coeff = |m: usize, i: usize| -> Result<GradedSeries<RatFun>> {
        let s = GradedSeries::from_ratfun(&eigenvector_coeff(&q, m, i), "q", order)?;
        if let Some(v) = s.valuation() {
            if v < i.abs_diff(m) {
                return Err(Error::GradingViolation(format!("v^({m})_{i} has q-valuation {v} < {}", i.abs_diff(m))));
            }
        }
        Ok(s)
    };
    let one_minus = GradedSeries::from_ratfun(&RatFun::one().sub(&q.mul(&q)), "q", order)?;
    let mut out = Vec::new();
    for m in 0..=mmax {
        for m2 in m..=mmax {
            // |i-m| + |i-m'| >= 2i - m - m'
            let imax = (order + m + m2) / 2 + 1;
            let mut acc = GradedSeries::zero("q", order);
            for i in 0..=imax {
                acc = acc.add(&coeff(m, i)?.mul(&coeff(m2, i)?));
            }
            let got = acc.mul(&one_minus);
            let want = if m == m2 { GradedSeries::one("q", order) } else { GradedSeries::zero("q", order) };
            out.push(Check::new(format!("<v^({m}), v^({m2})>"), &want, &got, got == want));
        }
    }
    Ok(out)
}

/// On the variety, `T(g,a) = T(α, α, 1 - α(q+1/q))` with `α = ga`, and its
/// generating function equals the spectral form at `λ = (1-α/q)/(1-qα)`.
pub fn spectral_gf_check() -> Result<Check> {
    let (al, q) = (var("alpha"), var("q"));
    let one = RatFun::one();
    let phi = q.add(&q.inv()?);
    let t = StructParams::t(al.clone(), al.clone(), one.sub(&al.mul(&phi)));
    let lambda = one.sub(&al.div(&q)?).div(&one.sub(&q.mul(&al)))?;
    let sd = SpectralData::new(q, lambda)?;
    Ok(Check::eq("f_T in spectral form", &t.gf(), &sd.gf()))
}

/// `q̃ = q/g` as a `g`-series for the root `q ~ ag` of `q + 1/q = φ(g,a)`:
/// `q̃ = a(1 + g²q̃²)/(1 - g²(1-a²))`.
pub fn q_tilde_series(a: &RatFun, order: usize) -> Result<GradedSeries<RatFun>> {
    let g = GradedSeries::<RatFun>::gen("g", order);
    let g2 = g.mul(&g);
    let one = GradedSeries::one("g", order);
    let den = one.sub(&g2.scale(&RatFun::one().sub(&a.mul(a)))).inv()?;
    let mut qt = GradedSeries::constant(a.clone(), "g", order);
    for _ in 0..order / 2 + 1 {
        let next = one.add(&g2.mul(&qt).mul(&qt)).scale(a).mul(&den);
        if next == qt {
            break;
        }
        qt = next;
    }
    Ok(qt)
}

struct GSpectral {
    q: GradedSeries<RatFun>,
    lambda: GradedSeries<RatFun>,
}

fn g_spectral(a: &RatFun, order: usize) -> Result<GSpectral> {
    let qt = q_tilde_series(a, order)?;
    let g = GradedSeries::<RatFun>::gen("g", order);
    let one = GradedSeries::one("g", order);
    let q = qt.mul(&g);
    // λ = (1 - ga/q)/(1 - qga) = (1 - a/q̃)/(1 - g²aq̃)
    let num = one.sub(&qt.inv()?.scale(a));
    let den = one.sub(&g.mul(&g).mul(&qt).scale(a));
    Ok(GSpectral { q, lambda: num.div(&den)? })
}

fn eigenvalue_series(s: &GSpectral, m: usize) -> Result<GradedSeries<RatFun>> {
    let one = GradedSeries::one(s.q.gvar(), s.q.order());
    let q2 = s.q.mul(&s.q);
    Ok(one.sub(&s.lambda.mul(&q2)).div(&one.sub(&q2))?.mul(&s.lambda.pow(m as u32)))
}

/// `Λ^(m) = g^{2m}(1 + O(g²))` for `m <= mmax`, after expressing `q` and `λ`
/// as `g`-series at fixed `a`.
pub fn eigenvalue_leading_check(a: &RatFun, mmax: usize, order: usize) -> Result<Vec<Check>> {
    let s = g_spectral(a, order)?;
    let mut out = Vec::new();
    for m in 0..=mmax {
        let ev = eigenvalue_series(&s, m)?;
        let lead = ev.valuation();
        let ok = lead == Some(2 * m) && ev.coeff(2 * m) == RatFun::one() && ev.coeff(2 * m + 1).is_zero();
        out.push(Check::new(format!("Lambda^({m}) = g^{}(1 + O(g^2))", 2 * m), format!("g^{}", 2 * m), &ev, ok));
    }
    Ok(out)
}

/// `T(g,a) v^(m) = Λ^(m) v^(m)` on rows `i < rows`, as `g`-series.
pub fn eigen_equation_check(a: &RatFun, mmax: usize, rows: usize, order: usize) -> Result<Vec<Check>> {
    let s = g_spectral(a, order)?;
    let g = GradedSeries::<RatFun>::gen("g", order);
    let ac = GradedSeries::constant(a.clone(), "g", order);
    let q = var("q");
    let mut out = Vec::new();
    for m in 0..=mmax {
        let ev = eigenvalue_series(&s, m)?;
        let v = |j: usize| GradedSeries::substitute(&eigenvector_coeff(&q, m, j), "q", &s.q);
        let mut ok = true;
        for i in 0..rows {
            let mut acc = GradedSeries::zero("g", order);
            // T_{i,j} v_j has valuation >= i + j + |j-m|.
            let mut j = 0;
            while i + j + j.abs_diff(m) <= order || j < m {
                acc = acc.add(&t_entry_series(&g, &ac, i, j)?.mul(&v(j)?));
                j += 1;
            }
            ok &= acc == ev.mul(&v(i)?);
        }
        out.push(Check::flag(format!("T v^({m}) = Lambda^({m}) v^({m}), {rows} rows, g-order {order}"), ok));
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
    fn coefficients_match_generating_function() {
        let sd = SpectralData::symbolic();
        for m in 0..4 {
            let s = GradedSeries::from_ratfun(&sd.eigenvector_gf(m, "u"), "u", 6).unwrap();
            for i in 0..=6 {
                assert_eq!(s.coeff(i), eigenvector_coeff(&sd.q, m, i), "m={m} i={i}");
            }
        }
    }

    #[test]
    fn lambda_slices() {
        let checks = lambda_series_check(5).unwrap();
        assert!(checks.iter().all(|c| c.holds));
        let sd = SpectralData::symbolic();
        let s = GradedSeries::from_ratfun(&sd.gf(), "lambda", 0).unwrap();
        let want = sd.eigenvector_gf(0, "u").mul(&sd.eigenvector_gf(0, "v"));
        assert_eq!(s.coeff(0), want);
        let sd = SpectralData::symbolic();
        let p0 = GradedSeries::from_ratfun(&sd.gf(), "lambda", 0).unwrap().coeff(0);
        assert_eq!(p0, r("1/((1-q*u)*(1-q*v))"));
    }

    #[test]
    fn orthonormal() {
        for c in orthonormality_check(3, 10).unwrap() {
            assert!(c.holds, "{c}");
        }
    }

    #[test]
    fn spectral_rewrite() {
        assert!(spectral_gf_check().unwrap().holds);
        assert!(SpectralData::new(r("1"), r("lambda")).is_err());
    }

    #[test]
    fn eigenvalues_and_vectors() {
        for c in eigenvalue_leading_check(&r("2/3"), 3, 10).unwrap() {
            assert!(c.holds, "{c}");
        }
        for c in eigenvalue_leading_check(&r("a"), 2, 6).unwrap() {
            assert!(c.holds, "{c}");
        }
        for c in eigen_equation_check(&r("3/5"), 2, 4, 8).unwrap() {
            assert!(c.holds, "{c}");
        }
    }
}
