//! The matrices `M_ASM = (1-ν)I + νG`, its `z`-refined version `M'_ASM`,
//! and the triangular factorization of the homogeneous Taylor matrices `A±`.

use super::z_asm_bruteforce;
use crate::error::{Error, Result};
use crate::exactalg::{bindings, BiSeries, ExactDiv, MPoly, NuElem, RatFun, Ring, UvFrac, UvPoly};
use crate::genfun::{memo_column, InfMatrix, StructParams};
use crate::linalg::Matrix;

fn var(name: &str) -> RatFun {
    RatFun::var(name)
}

fn nu_c(f: RatFun) -> NuElem {
    NuElem::scalar(f)
}

fn uv(c: RatFun, i: u32, j: u32) -> UvPoly<NuElem> {
    UvPoly::monomial(nu_c(c), i, j)
}

/// `1 - xu - v - (y-x)uv` over `RatFun`.
fn g_den() -> UvPoly<RatFun> {
    let (x, y) = (var("x"), var("y"));
    UvPoly::one()
        .sub(&UvPoly::monomial(x.clone(), 1, 0))
        .sub(&UvPoly::v())
        .sub(&UvPoly::monomial(y.sub(&x), 1, 1))
}

/// `f_G = 1/(1 - xu - v - (y-x)uv)`.
pub fn g_matrix() -> InfMatrix<RatFun> {
    InfMatrix::from_uvfrac(UvFrac::new(UvPoly::one(), g_den()))
}

/// `(1-ν)/(1-uv) + ν/(1 - xu - v - (y-x)uv)`.
pub fn m_asm_gf() -> UvFrac<NuElem> {
    let nu = NuElem::nu();
    let one_minus = NuElem::one().sub(&nu);
    let first = UvFrac::new(UvPoly::constant(one_minus), UvPoly::one().sub(&UvPoly::monomial(NuElem::one(), 1, 1)));
    let second = UvFrac::new(UvPoly::constant(nu), g_den().map(|c| nu_c(c.clone())));
    first.add(&second)
}

/// `M_ASM` with entries `(1-ν)δ_{i,j} + ν G_{i,j}`.
pub fn m_asm_matrix() -> InfMatrix<NuElem> {
    let g = g_matrix();
    let nu = NuElem::nu();
    let one_minus = NuElem::one().sub(&nu);
    InfMatrix::from_rule(move |i, j| {
        let e = nu.mul(&nu_c(g.coeff(i, j)?));
        Ok(if i == j { e.add(&one_minus) } else { e })
    })
}

pub fn m_asm(n: usize) -> Result<Matrix<NuElem>> {
    m_asm_matrix().truncate(n)
}

/// `det M_ASM^{[0,n-1]}`; its `ν` component vanishes.
pub fn z_asm_det(n: usize) -> Result<NuElem> {
    Ok(m_asm(n)?.det())
}

/// `(1 + yu/(1-xu))^n = (1-(x-y)u)^n / (1-xu)^n`, as numerator and denominator.
fn refined_power(n: usize) -> (UvPoly<NuElem>, UvPoly<NuElem>) {
    let (x, y) = (var("x"), var("y"));
    let num = UvPoly::one().sub(&uv(x.sub(&y), 1, 0)).pow(n as u32);
    let den = UvPoly::one().sub(&uv(x, 1, 0)).pow(n as u32);
    (num, den)
}

/// `1 - (y(z-1) + x)u`.
fn refined_pole() -> UvPoly<NuElem> {
    let (x, y, z) = (var("x"), var("y"), var("z"));
    UvPoly::one().sub(&uv(y.mul(&z.sub(&RatFun::one())).add(&x), 1, 0))
}

/// Full generating function of `M'_ASM` for size `n`, third term included:
///
/// ```text
/// ν(z-1)/(1-(y(z-1)+x)u) · (1 + yu/(1-xu))^n · v^{n-1}
///     · (1 + (v/x)(y(ν-1) + ν(xu-1))/(ν + (y-νx)u))
/// ```
pub fn m_asm_refined_gf(n: usize) -> UvFrac<NuElem> {
    assert!(n >= 1, "size must be positive");
    let (x, y, z) = (var("x"), var("y"), var("z"));
    let nu = NuElem::nu();
    let (pnum, pden) = refined_power(n);
    // ν + (y - νx)u and y(ν-1) + ν(xu-1)
    let d = UvPoly::constant(nu.clone()).add(&UvPoly::monomial(nu_c(y.clone()).sub(&nu.scale(&x)), 1, 0));
    let e = UvPoly::constant(nu_c(y.clone()).mul(&nu.sub(&NuElem::one())).sub(&nu))
        .add(&UvPoly::monomial(nu.scale(&x), 1, 0));
    let bracket_num = d.scale(&nu_c(x.clone())).add(&e.mul(&UvPoly::v()));
    let coeff = nu.mul(&nu_c(z.sub(&RatFun::one())));
    let num = pnum.mul(&bracket_num).mul(&UvPoly::monomial(coeff, 0, (n - 1) as u32));
    let den = refined_pole().mul(&pden).mul(&d).scale(&nu_c(x));
    m_asm_gf().add(&UvFrac::new(num, den))
}

/// `ν(z-1)(1 + yu/(1-xu))^n/(1-(y(z-1)+x)u)`: the `v^{n-1}` coefficient of
/// the third term, as a series in `u` with `RatFun` coefficients times `ν`.
fn refined_column(n: usize, rows: usize) -> Result<Vec<RatFun>> {
    let (x, y, z, u) = (MPoly::var("x"), MPoly::var("y"), MPoly::var("z"), MPoly::var("u"));
    let one = MPoly::one();
    let zm1 = z.sub(&one);
    let num = zm1.mul(&one.sub(&x.sub(&y).mul(&u)).pow(n as u32));
    let den = one.sub(&y.mul(&zm1).add(&x).mul(&u)).mul(&one.sub(&x.mul(&u)).pow(n as u32));
    let s = BiSeries::from_quotient(&num, &den, rows, 1)?;
    Ok((0..rows).map(|i| s.get(i, 0)).collect())
}

/// `M'_ASM`: `M_ASM` with column `n-1` patched by the third term.
pub fn m_asm_refined_matrix(n: usize) -> InfMatrix<NuElem> {
    assert!(n >= 1, "size must be positive");
    let base = m_asm_matrix();
    let b = base.clone();
    let column = memo_column(move |rows| refined_column(n, rows));
    base.patch_column(n - 1, move |i| Ok(b.coeff(i, n - 1)?.add(&NuElem::nu().scale(&column(i)?))))
}

pub fn m_asm_refined(n: usize) -> Result<Matrix<NuElem>> {
    m_asm_refined_matrix(n).truncate(n)
}

/// `det M'_ASM^{[0,n-1]} = (1 + ν(z-1)) Z_ASM^(n)(x, y, z)`.
pub fn z_asm_refined_det(n: usize) -> Result<NuElem> {
    Ok(m_asm_refined(n)?.det())
}

/// The refined prefactor `1 + ν(z-1)`.
pub fn refined_prefactor() -> NuElem {
    NuElem::one().add(&NuElem::nu().scale(&var("z").sub(&RatFun::one())))
}

/// `Z_ASM^(n)(x, y, z)` from brute force, as a `RatFun`.
pub fn z_asm_xyz(n: usize) -> Result<RatFun> {
    Ok(RatFun::from_poly(z_asm_bruteforce(n)).substitute(&bindings([("w", RatFun::one())]))?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// Parameters of `A± = (r^{-2} - q^{±2})^{-1} (U(α,β)^t)^{-1} U(α',β')`.
#[derive(Clone, Debug, PartialEq)]
pub struct ApmParams {
    pub alpha: RatFun,
    pub beta: RatFun,
    pub alpha_p: RatFun,
    pub beta_p: RatFun,
    pub prefactor: RatFun,
}

fn degenerate(what: &str) -> Error {
    Error::DegenerateParameters(format!("{what} vanishes"))
}

/// `α₊ = (1 - q²r²)/r`, `β₊ = (q² - q^{-2})/(r² - q²)`, `α'₊ = -q²r²β₊`,
/// `β'₊ = -1/α₊`; the minus branch replaces `q` by `1/q`.
pub fn apm_params(q: &RatFun, r: &RatFun, branch: Branch) -> Result<ApmParams> {
    let q = match branch {
        Branch::Plus => q.clone(),
        Branch::Minus => q.inv().map_err(|_| degenerate("q"))?,
    };
    let q2 = q.mul(&q);
    let r2 = r.mul(r);
    let one = RatFun::one();
    let alpha = one.sub(&q2.mul(&r2)).div(r).map_err(|_| degenerate("r"))?;
    let beta = q2
        .sub(&q2.inv().map_err(|_| degenerate("q"))?)
        .div(&r2.sub(&q2))
        .map_err(|_| degenerate("r² - q²"))?;
    let alpha_p = q2.mul(&r2).mul(&beta).neg();
    let beta_p = alpha.inv().map_err(|_| degenerate("α"))?.neg();
    let prefactor = r2.inv()?.sub(&q2).inv().map_err(|_| degenerate("r^-2 - q^±2"))?;
    if beta.is_zero() || alpha_p.is_zero() {
        return Err(degenerate("β"));
    }
    Ok(ApmParams { alpha, beta, alpha_p, beta_p, prefactor })
}

/// `f_{A±} = 1/((r^{-1} + u)(r^{-1} + v) - q^{±2})`.
pub fn apm_matrix(q: &RatFun, r: &RatFun, branch: Branch) -> Result<InfMatrix<RatFun>> {
    let q2 = match branch {
        Branch::Plus => q.mul(q),
        Branch::Minus => q.mul(q).inv().map_err(|_| degenerate("q"))?,
    };
    let ri = r.inv().map_err(|_| degenerate("r"))?;
    let den = UvPoly::constant(ri.clone())
        .add(&UvPoly::u())
        .mul(&UvPoly::constant(ri).add(&UvPoly::v()))
        .sub(&UvPoly::constant(q2));
    if den.coeff(0, 0).is_zero() {
        return Err(degenerate("r^-2 - q^±2"));
    }
    Ok(InfMatrix::from_uvfrac(UvFrac::new(UvPoly::one(), den)))
}

/// Inverse of a lower triangular matrix by forward substitution.
fn inverse_lower<C: ExactDiv>(m: &Matrix<C>) -> Result<Matrix<C>> {
    let n = m.rows();
    let mut inv = Matrix::zeros(n, n);
    for j in 0..n {
        for i in j..n {
            let mut s = if i == j { C::one() } else { C::zero() };
            for k in j..i {
                s = s.sub(&m.get(i, k).mul(inv.get(k, j)));
            }
            inv.set(i, j, s.exact_div(m.get(i, i))?);
        }
    }
    Ok(inv)
}

/// `A±^{[0,n-1]} = (r^{-2} - q^{±2})^{-1} (U(α,β)^{t [0,n-1]})^{-1} U(α',β')^{[0,n-1]}`.
pub fn apm_factorization_check(q: &RatFun, r: &RatFun, n: usize, branch: Branch) -> Result<bool> {
    let p = apm_params(q, r, branch)?;
    let a = apm_matrix(q, r, branch)?.truncate(n)?;
    let ut = StructParams::u(p.alpha.clone(), p.beta.clone()).matrix().truncate(n)?.transpose();
    let up = StructParams::u(p.alpha_p.clone(), p.beta_p.clone()).matrix().truncate(n)?;
    let rhs = inverse_lower(&ut)?.mul(&up).scale(&p.prefactor);
    Ok(a == rhs)
}
