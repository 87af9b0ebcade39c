//! The unitriangular sandwich relating `M_ASM` and `M_DPP`.
//!
//! If `f_M = (1 - au)(1 - bv) f_A` then `M = (I - aS) A (I - bS^t)`, and the
//! same holds for leading truncations because the outer factors are
//! triangular with unit diagonal. Two matrices whose sandwiches agree
//! therefore have equal leading principal minors.

use crate::asm::{m_asm_gf, m_asm_matrix, m_asm_refined_gf, m_asm_refined_matrix};
use crate::error::Result;
use crate::exactalg::{bindings, MPoly, NuElem, RatFun, Ring, UvPoly};
use crate::linalg::{sandwich, Matrix};

use super::lgv::{m_dpp_gf, m_dpp_matrix, m_dpp_refined_gf, m_dpp_refined_matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `(1 - u/(1-ν))(1-v) f_{M_ASM} = (1-u)(1-(1-ν)v) f_{M_DPP}`.
    Plain,
    /// `(1 + (y - xν - 1)u)(1-v) f_{M'_ASM} = (1-u)(1 + (ν-1)v) f_{M'_DPP}`.
    Refined,
}

#[derive(Clone, Debug)]
pub struct SandwichReport {
    pub variant: Variant,
    pub n: usize,
    /// Generating-function identity, denominators cleared in `NuElem`.
    pub gf_identity: bool,
    /// Truncated sandwiches agree entry by entry.
    pub entrywise: bool,
    pub det_asm: NuElem,
    pub det_dpp: NuElem,
}

impl SandwichReport {
    pub fn holds(&self) -> bool {
        self.gf_identity && self.entrywise && self.det_asm == self.det_dpp
    }
}

fn linear(c0: NuElem, cu: NuElem, cv: NuElem) -> UvPoly<NuElem> {
    UvPoly::constant(c0).add(&UvPoly::monomial(cu, 1, 0)).add(&UvPoly::monomial(cv, 0, 1))
}

/// `(a_asm, a_dpp, b_dpp)`; `b_asm = 1` in both variants.
fn coefficients(variant: Variant) -> Result<(NuElem, NuElem, NuElem)> {
    let nu = NuElem::nu();
    let one = NuElem::one();
    let a_asm = match variant {
        Variant::Plain => one.sub(&nu).inv()?,
        Variant::Refined => {
            let (x, y) = (RatFun::var("x"), RatFun::var("y"));
            one.add(&nu.scale(&x)).sub(&NuElem::scalar(y))
        }
    };
    Ok((a_asm, one.clone(), one.sub(&nu)))
}

pub fn asm_dpp_sandwich_check(n: usize, variant: Variant) -> Result<SandwichReport> {
    let (a_asm, a_dpp, b_dpp) = coefficients(variant)?;
    let one = NuElem::one();
    let (f_asm, f_dpp, m_asm, m_dpp) = match variant {
        Variant::Plain => (m_asm_gf(), m_dpp_gf(), m_asm_matrix(), m_dpp_matrix()),
        Variant::Refined => (m_asm_refined_gf(n), m_dpp_refined_gf(n), m_asm_refined_matrix(n), m_dpp_refined_matrix(n)),
    };
    // (1 - a u)(1 - b v) = 1 - a u - b v + a b uv
    let left = linear(one.clone(), a_asm.neg(), one.neg()).add(&UvPoly::monomial(a_asm.clone(), 1, 1));
    let right = linear(one.clone(), a_dpp.neg(), b_dpp.neg()).add(&UvPoly::monomial(a_dpp.mul(&b_dpp), 1, 1));
    let gf_identity = f_asm.mul_poly(&left).equals(&f_dpp.mul_poly(&right));
    let ta = m_asm.truncate(n)?;
    let td = m_dpp.truncate(n)?;
    let sa = sandwich(&a_asm, &ta, &one);
    let sd = sandwich(&a_dpp, &td, &b_dpp);
    Ok(SandwichReport { variant, n, gf_identity, entrywise: sa == sd, det_asm: ta.det(), det_dpp: td.det() })
}

/// `(z-w) Z_n(z,w) Z_{n-1}(1,1) = (z-1) w Z_n(z,1) Z_{n-1}(1,w) - (w-1) z Z_{n-1}(z,1) Z_n(1,w)`.
pub fn quadratic_relation_check(zn: &MPoly, zn1: &MPoly) -> Result<bool> {
    let f = |p: &MPoly, z: RatFun, w: RatFun| RatFun::from_poly(p.clone()).substitute(&bindings([("z", z), ("w", w)]));
    let (z, w, one) = (RatFun::var("z"), RatFun::var("w"), RatFun::one());
    let lhs = z.sub(&w).mul(&f(zn, z.clone(), w.clone())?).mul(&f(zn1, one.clone(), one.clone())?);
    let r1 = z.sub(&one).mul(&w).mul(&f(zn, z.clone(), one.clone())?).mul(&f(zn1, one.clone(), w.clone())?);
    let r2 = w.sub(&one).mul(&z).mul(&f(zn1, z.clone(), one.clone())?).mul(&f(zn, one.clone(), w.clone())?);
    Ok(lhs == r1.sub(&r2))
}

/// Entry-wise difference of two sandwiches, for diagnostics.
pub fn sandwich_difference(a: &Matrix<NuElem>, b: &Matrix<NuElem>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a.get(i, j) != b.get(i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::{z_asm_bruteforce, z_asm_xyz};
    use crate::dpp::z_dpp_bruteforce;

    #[test]
    fn plain_sandwich() {
        for n in 1..=4 {
            let r = asm_dpp_sandwich_check(n, Variant::Plain).unwrap();
            assert!(r.gf_identity && r.entrywise, "n = {n}");
            assert_eq!(r.det_asm, r.det_dpp);
            assert!(r.det_asm.is_nu_free());
        }
    }

    #[test]
    fn refined_sandwich() {
        for n in 1..=3 {
            let r = asm_dpp_sandwich_check(n, Variant::Refined).unwrap();
            assert!(r.entrywise, "n = {n}");
            assert!(r.gf_identity, "n = {n}");
            let z = NuElem::scalar(z_asm_xyz(n).unwrap()).mul(&crate::asm::refined_prefactor());
            assert_eq!(r.det_asm, z);
        }
    }

    #[test]
    fn quadratic_relation() {
        for n in 2..=4u32 {
            let (a, a1) = (z_asm_bruteforce(n as usize), z_asm_bruteforce(n as usize - 1));
            assert!(quadratic_relation_check(&a, &a1).unwrap());
            let (d, d1) = (z_dpp_bruteforce(n), z_dpp_bruteforce(n - 1));
            assert!(quadratic_relation_check(&d, &d1).unwrap());
        }
    }
}
