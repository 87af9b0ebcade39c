//! The transfer matrix `T(g,a)` of 1+1D Lorentzian triangulations.
//!
//! ```text
//! T(g,a)_{i,j} = (ag)^{i+j} sum_{k <= min(i,j)} C(i,k) C(j,k) a^{-2k}
//! f_T(u,v)     = 1/(1 - ga(u+v) - g^2(1-a^2)uv) = f_{T(ga, ga, g^2(1-a^2))}
//! ```
//!
//! Matrices with the same `φ(g,a) = (1 - g^2(1-a^2))/(ag)` commute; they
//! form the family `T_{1,φ}(α)` at `α = ga`.

mod commute;
mod spectral;

pub use commute::{
    a_prime_series, commutator_failure, commute_family_check, commute_off_variety, commute_on_variety, ell_t_exp_check,
    ell_t_parameter_check, l_t_addition_check, m_t_matrix, t_st_addition_check, tau_addition_check, tau_alpha,
    tau_alpha_printed, CommuteReport,
};
pub use spectral::{
    eigen_equation_check, eigenvalue_leading_check, eigenvector_coeff, lambda_series_check, orthonormality_check,
    q_tilde_series, spectral_gf_check, SpectralData,
};

use crate::check::Check;
use crate::error::{Error, Result};
use crate::exactalg::{binomial, bindings, rat, ExactDiv, GradedSeries, RatFun, Rational, Ring};
use crate::genfun::{InfMatrix, StructParams};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq)]
pub struct LorentzParams {
    pub g: RatFun,
    pub a: RatFun,
}

impl LorentzParams {
    pub fn new(g: RatFun, a: RatFun) -> Result<Self> {
        if g.mul(&a).is_zero() {
            return Err(Error::DegenerateParameters("ag = 0".into()));
        }
        Ok(LorentzParams { g, a })
    }

    /// Symbols `g`, `a`.
    pub fn symbolic() -> Self {
        LorentzParams { g: RatFun::var("g"), a: RatFun::var("a") }
    }

    pub fn phi(&self) -> RatFun {
        phi(&self.g, &self.a).expect("ag is nonzero")
    }

    /// `T(ga, ga, g^2(1-a^2))`.
    pub fn structured(&self) -> StructParams {
        let ga = self.g.mul(&self.a);
        let g2 = self.g.mul(&self.g);
        StructParams::t(ga.clone(), ga, g2.mul(&RatFun::one().sub(&self.a.mul(&self.a))))
    }

    pub fn gf(&self) -> RatFun {
        self.structured().gf()
    }

    /// Rule-backed, from the entry formula.
    pub fn matrix(&self) -> InfMatrix<RatFun> {
        let me = self.clone();
        InfMatrix::from_rule(move |i, j| t_entry(&me.g, &me.a, i, j))
    }

    /// `V(g,a) = L(1/a, ga)`, with `V_{i,k} = g^i a^{i-k} C(i,k)`.
    pub fn v_factor(&self) -> StructParams {
        StructParams::l(self.a.inv().expect("a is nonzero"), self.g.mul(&self.a))
    }
}

/// `φ(g,a) = (1 - g^2(1-a^2))/(ag)`.
pub fn phi(g: &RatFun, a: &RatFun) -> Result<RatFun> {
    let g2 = g.mul(g);
    RatFun::one().sub(&g2.mul(&RatFun::one().sub(&a.mul(a)))).div(&a.mul(g))
}

fn int(n: num_bigint::BigInt) -> Rational {
    Rational::from_integer(n)
}

fn entry_sum<C: ExactDiv>(g: &C, a: &C, i: usize, j: usize, embed: impl Fn(Rational) -> C) -> Result<C> {
    let a2inv = a.mul(a).try_inv()?;
    let mut sum = C::zero();
    let mut apow = C::one();
    for k in 0..=i.min(j) {
        let c = binomial(i as i64, k as i64) * binomial(j as i64, k as i64);
        sum = sum.add(&embed(int(c)).mul(&apow));
        apow = apow.mul(&a2inv);
    }
    Ok(a.mul(g).pow((i + j) as u32).mul(&sum))
}

/// `T(g,a)_{i,j}`.
pub fn t_entry(g: &RatFun, a: &RatFun, i: usize, j: usize) -> Result<RatFun> {
    entry_sum(g, a, i, j, RatFun::constant)
}

/// `T(g,a)_{i,j}` for series `g`, `a` in a common grading variable; `a`
/// must be invertible.
pub fn t_entry_series(g: &GradedSeries<RatFun>, a: &GradedSeries<RatFun>, i: usize, j: usize) -> Result<GradedSeries<RatFun>> {
    let a2inv = a.mul(a).inv()?;
    let mut sum = GradedSeries::zero(g.gvar(), g.order());
    let mut apow = GradedSeries::one(g.gvar(), g.order());
    for k in 0..=i.min(j) {
        let c = RatFun::constant(int(binomial(i as i64, k as i64) * binomial(j as i64, k as i64)));
        sum = sum.add(&apow.scale(&c));
        apow = apow.mul(&a2inv);
    }
    Ok(a.mul(g).pow((i + j) as u32).mul(&sum))
}

/// Lattice paths from `(i,0)` to `(0,j)` with unit steps left or up. A step
/// leaving a point strictly below the diagonal (`y < x`) weighs `ga` if
/// horizontal and `g` if vertical; elsewhere the weights are swapped.
pub fn path_entry(g: &RatFun, a: &RatFun, i: usize, j: usize) -> RatFun {
    let ga = g.mul(a);
    // w[x][y]: weight of paths from (i,0) to (x,y).
    let mut w = vec![vec![RatFun::zero(); j + 1]; i + 1];
    w[i][0] = RatFun::one();
    for y in 0..=j {
        for x in (0..=i).rev() {
            if x == i && y == 0 {
                continue;
            }
            let mut acc = RatFun::zero();
            if x < i {
                // horizontal step from (x+1, y)
                let wt = if y < x + 1 { &ga } else { g };
                acc = acc.add(&w[x + 1][y].mul(wt));
            }
            if y > 0 {
                // vertical step from (x, y-1)
                let wt = if y - 1 < x { g } else { &ga };
                acc = acc.add(&w[x][y - 1].mul(wt));
            }
            w[x][y] = acc;
        }
    }
    w[0][j].clone()
}

/// Entry formula, generating function and path count agree on `[0,n)^2`.
pub fn entry_agreement(p: &LorentzParams, n: usize) -> Result<Vec<Check>> {
    let rule = p.matrix().truncate(n)?;
    let gf = InfMatrix::from_gf(p.gf()).truncate(n)?;
    let paths = Matrix::from_fn(n, n, |i, j| path_entry(&p.g, &p.a, i, j));
    let structured = p.structured().matrix().truncate(n)?;
    Ok(vec![
        Check::flag(format!("entry rule = generating function, {n}x{n}"), rule == gf),
        Check::flag(format!("entry rule = path count, {n}x{n}"), rule == paths),
        Check::flag(format!("entry rule = T(ga, ga, g^2(1-a^2)), {n}x{n}"), rule == structured),
    ])
}

/// `T^{[0,k]} = V^{[0,k]} (V^{[0,k]})^t` and `det T^{[0,k]} = g^{k(k+1)}`.
pub fn vvt_factorization_check(p: &LorentzParams, k: usize) -> Result<Vec<Check>> {
    let n = k + 1;
    let t = p.matrix().truncate(n)?;
    let v = p.v_factor().matrix().truncate(n)?;
    let v_gf = InfMatrix::from_gf(v_gf(p)).truncate(n)?;
    let v_rule = Matrix::try_from_fn(n, n, |i, c| {
        if c > i {
            return Ok(RatFun::zero());
        }
        Ok(p.g.powi(i as i32)?.mul(&p.a.powi((i - c) as i32)?).mul(&RatFun::constant(int(binomial(i as i64, c as i64)))))
    })?;
    let want_det = p.g.pow((k * (k + 1)) as u32);
    Ok(vec![
        Check::flag(format!("V = L(1/a, ga) rule and generating function, k={k}"), v == v_gf && v == v_rule),
        Check::flag(format!("T = V V^t, k={k}"), t == v.mul(&v.transpose())),
        Check::eq(format!("det T[0,{k}]"), &want_det, &t.det()),
    ])
}

/// `1/(1 - agu - guv)`.
pub fn v_gf(p: &LorentzParams) -> RatFun {
    let (u, v) = (RatFun::var("u"), RatFun::var("v"));
    let den = RatFun::one().sub(&p.a.mul(&p.g).mul(&u)).sub(&p.g.mul(&u).mul(&v));
    den.inv().expect("constant term 1")
}

/// `det T^{[0,k]}(α,β,γ) = (αβ+γ)^{k(k+1)/2}` for symbolic parameters.
pub fn structured_det_check(k: usize) -> Result<Check> {
    let (a, b, c) = (RatFun::var("alpha"), RatFun::var("beta"), RatFun::var("gamma"));
    let t = StructParams::t(a.clone(), b.clone(), c.clone()).matrix().truncate(k + 1)?;
    let want = a.mul(&b).add(&c).pow((k * (k + 1) / 2) as u32);
    Ok(Check::eq(format!("det T(alpha,beta,gamma)[0,{k}]"), &want, &t.det()))
}

/// `G_{i,j} (ga)^{j-i} = T(g,a)_{i,j}` at `x = g^2a^2`, `y = g^2`, where
/// `f_G = 1/(1 - xu - v - (y-x)uv)`.
pub fn g_bridge_check(n: usize) -> Result<Check> {
    let p = LorentzParams::symbolic();
    let g = crate::asm::g_matrix().truncate(n)?;
    let ga = p.g.mul(&p.a);
    let b = bindings([("x", ga.mul(&ga)), ("y", p.g.mul(&p.g))]);
    let t = p.matrix().truncate(n)?;
    let mut ok = true;
    for i in 0..n {
        for j in 0..n {
            let lhs = g.get(i, j).substitute(&b)?.mul(&ga.powi(j as i32 - i as i32)?);
            ok &= lhs == *t.get(i, j);
        }
    }
    Ok(Check::flag(format!("G matches T(g,a) under rescaling, {n}x{n}"), ok))
}

/// A point on both the Lorentzian variety `(1+x-y)/√x = q + 1/q` and the
/// six-vertex variety `(1+y-x)/√y = p + 1/p`.
#[derive(Clone, Debug, PartialEq)]
pub struct VarietyPoint {
    pub p: Rational,
    pub q: Rational,
    pub sqrt_x: Rational,
    pub sqrt_y: Rational,
    pub x: Rational,
    pub y: Rational,
}

impl VarietyPoint {
    /// `(1+x-y)/√x`.
    pub fn phi(&self) -> Rational {
        (rat(1) + &self.x - &self.y) / &self.sqrt_x
    }

    /// `(1+y-x)/√y`.
    pub fn psi(&self) -> Rational {
        (rat(1) + &self.y - &self.x) / &self.sqrt_y
    }

    pub fn certificates(&self) -> Vec<Check> {
        let q = &self.q + self.q.recip();
        let p = &self.p + self.p.recip();
        vec![
            Check::new("sqrt(x)^2 = x", &self.x, &self.sqrt_x * &self.sqrt_x, &self.sqrt_x * &self.sqrt_x == self.x),
            Check::new("sqrt(y)^2 = y", &self.y, &self.sqrt_y * &self.sqrt_y, &self.sqrt_y * &self.sqrt_y == self.y),
            Check::new("phi(x,y) = q + 1/q", &q, self.phi(), self.phi() == q),
            Check::new("psi(x,y) = p + 1/p", &p, self.psi(), self.psi() == p),
        ]
    }
}

/// `√x = q(p^2-1)/(p^2q^2-1)`, `√y = p(q^2-1)/(p^2q^2-1)`.
pub fn variety_intersection(p: &Rational, q: &Rational) -> Result<VarietyPoint> {
    let one = rat(1);
    if *p <= one || *q <= one {
        return Err(Error::DegenerateParameters(format!("need p, q > 1, got p = {p}, q = {q}")));
    }
    let (p2, q2) = (p * p, q * q);
    let d = &p2 * &q2 - &one;
    let sqrt_x = q * (&p2 - &one) / &d;
    let sqrt_y = p * (&q2 - &one) / &d;
    Ok(VarietyPoint {
        p: p.clone(),
        q: q.clone(),
        x: &sqrt_x * &sqrt_x,
        y: &sqrt_y * &sqrt_y,
        sqrt_x,
        sqrt_y,
    })
}

/// The point with the roles of `p` and `q` exchanged in the square roots.
pub fn variety_intersection_swapped(p: &Rational, q: &Rational) -> Result<VarietyPoint> {
    let v = variety_intersection(q, p)?;
    Ok(VarietyPoint { p: p.clone(), q: q.clone(), ..v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_ratfun, ratio};

    fn r(s: &str) -> RatFun {
        parse_ratfun(s).unwrap()
    }

    #[test]
    fn small_entries() {
        let p = LorentzParams::symbolic();
        assert_eq!(t_entry(&p.g, &p.a, 0, 0).unwrap(), RatFun::one());
        assert_eq!(t_entry(&p.g, &p.a, 1, 1).unwrap(), r("g^2 + a^2*g^2"));
        assert_eq!(t_entry(&p.g, &RatFun::one(), 2, 2).unwrap(), r("6*g^4"));
        assert_eq!(path_entry(&p.g, &p.a, 2, 1), r("a^3*g^3 + 2*a*g^3"));
        let t = InfMatrix::from_gf(p.gf()).truncate(2).unwrap();
        assert_eq!(*t.get(0, 1), r("a*g"));
        assert_eq!(*t.get(1, 1), r("g^2 + a^2*g^2"));
    }

    #[test]
    fn three_presentations_agree() {
        for c in entry_agreement(&LorentzParams::symbolic(), 8).unwrap() {
            assert!(c.holds, "{c}");
        }
        let at = LorentzParams::new(r("2/3"), r("-5/7")).unwrap();
        for c in entry_agreement(&at, 11).unwrap() {
            assert!(c.holds, "{c}");
        }
    }

    #[test]
    fn vvt() {
        for k in 0..5 {
            for c in vvt_factorization_check(&LorentzParams::symbolic(), k).unwrap() {
                assert!(c.holds, "{c}");
            }
        }
        assert!(LorentzParams::new(RatFun::zero(), r("a")).is_err());
    }

    #[test]
    fn phi_is_the_commuting_t_parameter() {
        let p = LorentzParams::symbolic();
        let ga = p.g.mul(&p.a);
        let fam = StructParams::t_st(&RatFun::one(), &p.phi(), &ga);
        assert_eq!(fam, p.structured());
    }

    #[test]
    fn structured_det_small() {
        for k in 0..4 {
            assert!(structured_det_check(k).unwrap().holds);
        }
    }

    #[test]
    fn g_bridge() {
        assert!(g_bridge_check(7).unwrap().holds);
    }

    #[test]
    fn variety_examples() {
        let v = variety_intersection(&ratio(2, 1), &ratio(2, 1)).unwrap();
        assert_eq!(v.x, ratio(4, 25));
        assert_eq!(v.y, ratio(4, 25));
        assert_eq!(v.psi(), ratio(5, 2));
        let v = variety_intersection(&ratio(3, 1), &ratio(5, 4)).unwrap();
        assert!(v.certificates().iter().all(|c| c.holds));
        let w = variety_intersection(&ratio(5, 4), &ratio(3, 1)).unwrap();
        assert_eq!((w.x.clone(), w.y.clone()), (v.y.clone(), v.x.clone()));
        assert_eq!(w.phi(), v.psi());
        // The other assignment of the square roots puts p on the Lorentzian side.
        let s = variety_intersection_swapped(&ratio(3, 1), &ratio(5, 4)).unwrap();
        assert_eq!(s.phi(), ratio(10, 3));
        assert!(matches!(variety_intersection(&ratio(1, 2), &ratio(3, 1)), Err(Error::DegenerateParameters(_))));
    }
}
