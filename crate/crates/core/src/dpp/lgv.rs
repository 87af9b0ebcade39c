//! LGV matrices `D`, `D'` and the infinite matrices `M_DPP`, `M'_DPP`.
//!
//! `D_{i,j}` counts single paths from `(i, 0)` to `(0, j + 2)`:
//!
//! ```text
//! D_{i,j} = sum_{k<=i} sum_{l<=min(k,j+1)} C(k,l) x^{k-l} C(j+1,l) y^{l+1}
//! ```
//!
//! DPPs of order `n` use starts `0..=n-2`, so `Z_DPP^(n)(x,y,1) = det(I + D)`
//! with `D` of size `n-1`. The infinite matrix `H` of `f_{M_DPP} - 1/(1-uv)`
//! is `D` shifted by one row and column (`H_{i+1,j+1} = D_{i,j}`), with a
//! zero top row, so `det(I + H^{[0,n-1]})` is the same determinant.

use crate::error::Result;
use crate::exactalg::{binomial, BiSeries, MPoly, NuElem, RatFun, Rational, Ring, UvFrac, UvPoly};
use crate::genfun::{memo_column, InfMatrix};
use crate::linalg::Matrix;

fn int(n: num_bigint::BigInt) -> MPoly {
    MPoly::constant(Rational::from_integer(n))
}

fn xy(i: u32, j: u32) -> MPoly {
    MPoly::var("x").pow(i).mul(&MPoly::var("y").pow(j))
}

pub fn d_entry(i: usize, j: usize) -> MPoly {
    let mut out = MPoly::zero();
    for k in 0..=i as i64 {
        for l in 0..=k.min(j as i64 + 1) {
            let c = binomial(k, l) * binomial(j as i64 + 1, l);
            out = out.add(&int(c).mul(&xy((k - l) as u32, (l + 1) as u32)));
        }
    }
    out
}

/// Last column (`j = n - 2`) of `D'`: the segment above the diagonal is split
/// at its first visit `(m, n)` to the line `y = n`, and each of the `m + 1`
/// steps along that line carries `yz`:
///
/// ```text
/// D'_{i,n-2} = sum_{k<=i} sum_{l<=min(k,n-1)} C(k,l) x^{k-l}
///              sum_{m<=l} N(l,m) y^{l+1} z^{m+1}
/// N(l,m) = C(n-m-2, l-m)   (l < n-1),   N(n-1,m) = [m = n-1]
/// ```
pub fn d_prime_entry(i: usize, n: usize) -> MPoly {
    assert!(n >= 2, "D' needs order at least 2");
    let n = n as i64;
    let z = MPoly::var("z");
    let mut out = MPoly::zero();
    for k in 0..=i as i64 {
        for l in 0..=k.min(n - 1) {
            let c = binomial(k, l);
            for m in 0..=l {
                let nlm = if l == n - 1 { ((m == l) as i64).into() } else { binomial(n - m - 2, l - m) };
                if nlm == 0.into() {
                    continue;
                }
                let term = int(&c * nlm).mul(&xy((k - l) as u32, (l + 1) as u32)).mul(&z.pow((m + 1) as u32));
                out = out.add(&term);
            }
        }
    }
    out
}

/// `D^{[0,n-2]}`, the `(n-1) x (n-1)` LGV matrix for order `n`.
pub fn lgv_matrix(n: usize) -> Matrix<MPoly> {
    let k = n.saturating_sub(1);
    Matrix::from_fn(k, k, d_entry)
}

/// `D` with its last column replaced by `D'`.
pub fn d_prime_matrix(n: usize) -> Matrix<MPoly> {
    let k = n.saturating_sub(1);
    Matrix::from_fn(k, k, |i, j| if j + 1 == k { d_prime_entry(i, n) } else { d_entry(i, j) })
}

fn i_plus(m: &Matrix<MPoly>) -> Matrix<MPoly> {
    Matrix::identity(m.rows()).add(m)
}

/// `det(I + D)` = `Z_DPP^(n)(x, y, 1)`.
pub fn z_dpp_det(n: usize) -> MPoly {
    i_plus(&lgv_matrix(n)).det()
}

/// `det(I + D')` = `Z_DPP^(n)(x, y, z)`.
pub fn z_dpp_prime_det(n: usize) -> MPoly {
    i_plus(&d_prime_matrix(n)).det()
}

fn uvr(c: RatFun, i: u32, j: u32) -> UvPoly<RatFun> {
    UvPoly::monomial(c, i, j)
}

fn g_den() -> UvPoly<RatFun> {
    let (x, y) = (RatFun::var("x"), RatFun::var("y"));
    UvPoly::one().sub(&uvr(x.clone(), 1, 0)).sub(&UvPoly::v()).sub(&uvr(y.sub(&x), 1, 1))
}

/// `H` with `f_H = yu/((1-u)(1 - xu - v - (y-x)uv))`.
pub fn h_matrix() -> InfMatrix<RatFun> {
    let y = RatFun::var("y");
    let den = UvPoly::one().sub(&UvPoly::u()).mul(&g_den());
    InfMatrix::from_uvfrac(UvFrac::new(uvr(y, 1, 0), den))
}

/// `det(I + H^{[0,n-1]})`.
pub fn z_dpp_det_h(n: usize) -> Result<RatFun> {
    let h = h_matrix().truncate(n)?;
    Ok(Matrix::identity(n).add(&h).det())
}

fn lift(p: &UvPoly<RatFun>) -> UvPoly<NuElem> {
    p.map(|c| NuElem::scalar(c.clone()))
}

/// `1/(1-uv) + yu/((1-u)(1 - xu - v - (y-x)uv))` over `NuElem`.
pub fn m_dpp_gf() -> UvFrac<NuElem> {
    let y = RatFun::var("y");
    let first = UvFrac::new(UvPoly::one(), UvPoly::one().sub(&UvPoly::monomial(NuElem::one(), 1, 1)));
    let second = UvFrac::new(lift(&uvr(y, 1, 0)), lift(&UvPoly::one().sub(&UvPoly::u()).mul(&g_den())));
    first.add(&second)
}

/// `M_DPP = I + H` over `NuElem`.
pub fn m_dpp_matrix() -> InfMatrix<NuElem> {
    let h = h_matrix();
    InfMatrix::from_rule(move |i, j| {
        let e = NuElem::scalar(h.coeff(i, j)?);
        Ok(if i == j { e.add(&NuElem::one()) } else { e })
    })
}

/// `(1 - (x-y)u)^n / ((1-xu)^n (1 - (y(z-1)+x)u))`, numerator and denominator.
fn refined_factor(n: usize) -> (UvPoly<RatFun>, UvPoly<RatFun>) {
    let (x, y, z) = (RatFun::var("x"), RatFun::var("y"), RatFun::var("z"));
    let one = RatFun::one();
    let num = UvPoly::one().sub(&uvr(x.sub(&y), 1, 0)).pow(n as u32);
    let den = UvPoly::one()
        .sub(&uvr(x.clone(), 1, 0))
        .pow(n as u32)
        .mul(&UvPoly::one().sub(&uvr(y.mul(&z.sub(&one)).add(&x), 1, 0)));
    (num, den)
}

/// Full generating function of `M'_DPP` for order `n`:
///
/// ```text
/// f_{M_DPP} + (z-1) (1-v)/(1-u) · (yu + ν(1-xu))/(1-(y(z-1)+x)u)
///            · (1 + yu/(1-xu))^n v^{n-1}
/// ```
pub fn m_dpp_refined_gf(n: usize) -> UvFrac<NuElem> {
    assert!(n >= 1, "order must be positive");
    let (x, y, z) = (RatFun::var("x"), RatFun::var("y"), RatFun::var("z"));
    let (rnum, rden) = refined_factor(n);
    let nu = NuElem::nu();
    let inner = UvPoly::monomial(NuElem::scalar(y), 1, 0)
        .add(&UvPoly::constant(nu.clone()))
        .sub(&UvPoly::monomial(nu.scale(&x), 1, 0));
    let zm1 = NuElem::scalar(z.sub(&RatFun::one()));
    let num = lift(&rnum)
        .mul(&inner)
        .mul(&UvPoly::one().sub(&UvPoly::v()))
        .mul(&UvPoly::monomial(zm1, 0, (n - 1) as u32));
    let den = lift(&rden).mul(&UvPoly::one().sub(&UvPoly::u()));
    m_dpp_gf().add(&UvFrac::new(num, den))
}

/// `u`-coefficients `(p_i, q_i)` of the `v^{n-1}` part of the third term,
/// which equals `sum (p_i + ν q_i) u^i`.
fn refined_column(n: usize, rows: usize) -> Result<(Vec<RatFun>, Vec<RatFun>)> {
    let (x, y, z, u) = (MPoly::var("x"), MPoly::var("y"), MPoly::var("z"), MPoly::var("u"));
    let one = MPoly::one();
    let zm1 = z.sub(&one);
    let num = zm1.mul(&one.sub(&x.sub(&y).mul(&u)).pow(n as u32));
    let den = one
        .sub(&u)
        .mul(&one.sub(&x.mul(&u)).pow(n as u32))
        .mul(&one.sub(&y.mul(&zm1).add(&x).mul(&u)));
    let p = BiSeries::from_quotient(&num.mul(&y).mul(&u), &den, rows, 1)?;
    let q = BiSeries::from_quotient(&num.mul(&one.sub(&x.mul(&u))), &den, rows, 1)?;
    Ok(((0..rows).map(|i| p.get(i, 0)).collect(), (0..rows).map(|i| q.get(i, 0)).collect()))
}

/// `M'_DPP`: `I + H` with column `n-1` patched by the third term.
pub fn m_dpp_refined_matrix(n: usize) -> InfMatrix<NuElem> {
    assert!(n >= 1, "order must be positive");
    let base = m_dpp_matrix();
    let b = base.clone();
    let column = memo_column(move |rows| {
        let (p, q) = refined_column(n, rows)?;
        Ok(p.into_iter().zip(q).map(|(p, q)| NuElem::new(p, q)).collect::<Vec<_>>())
    });
    base.patch_column(n - 1, move |i| Ok(b.coeff(i, n - 1)?.add(&column(i)?)))
}

pub fn m_dpp_refined(n: usize) -> Result<Matrix<NuElem>> {
    m_dpp_refined_matrix(n).truncate(n)
}

/// `det M'_DPP^{[0,n-1]} = (1 + ν(z-1)) Z_DPP^(n)(x, y, z)`.
pub fn z_dpp_refined_det(n: usize) -> Result<NuElem> {
    Ok(m_dpp_refined(n)?.det())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::refined_prefactor;
    use crate::dpp::{family_bruteforce, single_path_pf, z_dpp_bruteforce, PathWeights};
    use crate::exactalg::{bindings, parse_mpoly};
    use crate::genfun::StructParams;

    fn at_w1(n: u32) -> MPoly {
        RatFun::from_poly(z_dpp_bruteforce(n))
            .substitute(&bindings([("w", RatFun::one())]))
            .unwrap()
            .as_poly()
            .unwrap()
            .clone()
    }

    fn at_z1(p: &MPoly) -> MPoly {
        RatFun::from_poly(p.clone()).substitute(&bindings([("z", RatFun::one())])).unwrap().as_poly().unwrap().clone()
    }

    #[test]
    fn entries_match_single_paths() {
        assert_eq!(d_entry(0, 0), parse_mpoly("y").unwrap());
        assert_eq!(d_entry(1, 0), parse_mpoly("y+x*y+y^2").unwrap());
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(d_entry(i, j), single_path_pf(i as u32, j as u32, PathWeights::default()), "({i},{j})");
            }
        }
        for n in 2..=6usize {
            for i in 0..n {
                let w = PathWeights { z_level: Some(n as u32) };
                assert_eq!(d_prime_entry(i, n), single_path_pf(i as u32, n as u32 - 2, w), "i={i} n={n}");
            }
        }
    }

    #[test]
    fn lgv_determinants() {
        assert_eq!(z_dpp_det(1), MPoly::one());
        assert_eq!(z_dpp_det(2), parse_mpoly("1+y").unwrap());
        assert_eq!(z_dpp_det(3), parse_mpoly("1+2*y+x*y+2*y^2+y^3").unwrap());
        for n in 1..=5u32 {
            let z = at_w1(n);
            assert_eq!(z_dpp_det(n as usize), at_z1(&z));
            assert_eq!(z_dpp_prime_det(n as usize), z);
            assert_eq!(family_bruteforce(n), z);
        }
    }

    #[test]
    fn h_is_shifted_d() {
        let h = h_matrix();
        for i in 0..8 {
            assert!(h.coeff(0, i).unwrap().is_zero());
            for j in 0..8 {
                assert_eq!(h.coeff(i + 1, j + 1).unwrap(), RatFun::from_poly(d_entry(i, j)));
            }
        }
        for n in 1..=4 {
            assert_eq!(z_dpp_det_h(n).unwrap(), RatFun::from_poly(z_dpp_det(n)));
        }
    }

    #[test]
    fn h_structured_form() {
        // H = y S (I-S)^{-1} T(x, 1, y-x); the left factor is lower triangular.
        let (x, y) = (RatFun::var("x"), RatFun::var("y"));
        let k = 8;
        let left = Matrix::from_fn(k, k, |i, j| if i > j { y.clone() } else { RatFun::zero() });
        let t = StructParams::t(x.clone(), RatFun::one(), y.sub(&x)).matrix().truncate(k).unwrap();
        assert_eq!(left.mul(&t), h_matrix().truncate(k).unwrap());
    }

    #[test]
    fn refined_dpp_small() {
        for n in 1..=3usize {
            let full = InfMatrix::from_uvfrac(m_dpp_refined_gf(n)).truncate(n).unwrap();
            assert_eq!(full, m_dpp_refined(n).unwrap(), "n = {n}");
            let want = NuElem::scalar(RatFun::from_poly(at_w1(n as u32))).mul(&refined_prefactor());
            assert_eq!(z_dpp_refined_det(n).unwrap(), want, "n = {n}");
        }
    }
}
