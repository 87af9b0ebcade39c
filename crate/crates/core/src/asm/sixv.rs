//! Six-vertex model with domain-wall boundary conditions and the
//! Izergin–Korepin determinant.
//!
//! Edge encoding: `h[i][j]` is the horizontal edge of row `i` entering column
//! `j` from the left (`j = n` is the right boundary), `true` meaning it points
//! east. `v[i][j]` is the vertical edge of column `j` above row `i` (`i = n`
//! is the bottom boundary), `true` meaning it points north.

use std::collections::BTreeMap;

use super::Asm;
use crate::error::{Error, Result};
use crate::exactalg::{bindings, ExactDiv, Field, MPoly, RatFun, Rational, Ring};
use crate::linalg::{Determinant, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexType {
    /// Horizontal east, vertical north.
    A1,
    /// Horizontal west, vertical south.
    A2,
    /// Horizontal east, vertical south.
    B1,
    /// Horizontal west, vertical north.
    B2,
    /// Flow reflected; ASM entry `1`.
    C1,
    /// Flow reflected; ASM entry `-1`.
    C2,
}

impl VertexType {
    pub fn is_a(self) -> bool {
        matches!(self, VertexType::A1 | VertexType::A2)
    }

    pub fn is_b(self) -> bool {
        matches!(self, VertexType::B1 | VertexType::B2)
    }

    pub fn is_c(self) -> bool {
        matches!(self, VertexType::C1 | VertexType::C2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SixVConfig {
    n: usize,
    h: Vec<Vec<bool>>,
    v: Vec<Vec<bool>>,
}

impl SixVConfig {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether the horizontal edge left of vertex `(i, j)` points east.
    pub fn h(&self, i: usize, j: usize) -> bool {
        self.h[i][j]
    }

    /// Whether the vertical edge above vertex `(i, j)` points north.
    pub fn v(&self, i: usize, j: usize) -> bool {
        self.v[i][j]
    }

    pub fn vertex(&self, i: usize, j: usize) -> Result<VertexType> {
        classify(self.h[i][j], self.h[i][j + 1], self.v[i][j], self.v[i + 1][j])
            .ok_or_else(|| Error::InvalidObject(format!("ice rule fails at ({i}, {j})")))
    }

    /// Ice rule at every vertex and domain-wall boundary.
    pub fn is_valid(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| self.h[i][0] && !self.h[i][n])
            && (0..n).all(|j| self.v[0][j] && !self.v[n][j])
            && (0..n).all(|i| (0..n).all(|j| self.vertex(i, j).is_ok()))
    }

    pub fn counts(&self) -> BTreeMap<VertexType, usize> {
        let mut out = BTreeMap::new();
        for i in 0..self.n {
            for j in 0..self.n {
                *out.entry(self.vertex(i, j).expect("valid configuration")).or_insert(0) += 1;
            }
        }
        out
    }
}

/// Vertex type from left, right, top and bottom edges, or `None` if the
/// ice rule fails.
fn classify(left: bool, right: bool, top: bool, bottom: bool) -> Option<VertexType> {
    let incoming = left as u8 + (!right) as u8 + (!top) as u8 + bottom as u8;
    if incoming != 2 {
        return None;
    }
    Some(match (left == right, left, top) {
        (true, true, true) => VertexType::A1,
        (true, false, false) => VertexType::A2,
        (true, true, false) => VertexType::B1,
        (true, false, true) => VertexType::B2,
        (false, true, _) => VertexType::C1,
        (false, false, _) => VertexType::C2,
    })
}

/// Edges point west (resp. south) after a partial row (resp. column) sum of 1.
pub fn asm_to_6v(b: &Asm) -> SixVConfig {
    let n = b.n();
    let mut h = vec![vec![true; n + 1]; n];
    let mut v = vec![vec![true; n]; n + 1];
    for i in 0..n {
        let mut s = 0;
        for j in 0..n {
            s += b.get(i, j);
            h[i][j + 1] = s == 0;
        }
    }
    for j in 0..n {
        let mut s = 0;
        for i in 0..n {
            s += b.get(i, j);
            v[i + 1][j] = s == 0;
        }
    }
    SixVConfig { n, h, v }
}

pub fn sixv_to_asm(c: &SixVConfig) -> Result<Asm> {
    if !c.is_valid() {
        return Err(Error::InvalidAsm("configuration violates the ice rule or boundary".into()));
    }
    let n = c.n;
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match c.vertex(i, j).expect("valid") {
                    VertexType::C1 => 1,
                    VertexType::C2 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    Asm::new(rows)
}

/// All domain-wall ice configurations, found edge by edge without
/// reference to ASMs.
pub fn sixv_configurations(n: usize) -> Vec<SixVConfig> {
    let mut h = vec![vec![false; n + 1]; n];
    let mut v = vec![vec![false; n]; n + 1];
    for row in h.iter_mut() {
        row[0] = true;
    }
    for top in v[0].iter_mut() {
        *top = true;
    }
    let mut out = Vec::new();
    place(n, 0, &mut h, &mut v, &mut out);
    out
}

fn place(n: usize, cell: usize, h: &mut Vec<Vec<bool>>, v: &mut Vec<Vec<bool>>, out: &mut Vec<SixVConfig>) {
    if cell == n * n {
        out.push(SixVConfig { n, h: h.clone(), v: v.clone() });
        return;
    }
    let (i, j) = (cell / n, cell % n);
    for right in [true, false] {
        if j == n - 1 && right {
            continue;
        }
        for bottom in [true, false] {
            if i == n - 1 && bottom {
                continue;
            }
            if classify(h[i][j], right, v[i][j], bottom).is_some() {
                h[i][j + 1] = right;
                v[i + 1][j] = bottom;
                place(n, cell + 1, h, v, out);
            }
        }
    }
}

/// `Σ_configs Π weight(type, i, j)`.
pub fn sixv_sum<C: Ring, F: Fn(VertexType, usize, usize) -> C>(n: usize, weight: F) -> C {
    sixv_configurations(n).iter().fold(C::zero(), |acc, c| {
        let mut w = C::one();
        for i in 0..n {
            for j in 0..n {
                w = w.mul(&weight(c.vertex(i, j).expect("valid"), i, j));
            }
        }
        acc.add(&w)
    })
}

fn weight_a<C: Field>(q: &C, z: &C, w: &C) -> C {
    q.mul(z).sub(&w.exact_div(q).expect("q nonzero"))
}

fn weight_b<C: Field>(q: &C, z: &C, w: &C) -> C {
    z.exact_div(q).expect("q nonzero").sub(&q.mul(w))
}

fn weight_c<C: Field>(q: &C, zeta: &C, omega: &C) -> C {
    let q2 = q.mul(q);
    q2.sub(&q2.try_inv().expect("q nonzero")).mul(zeta).mul(omega)
}

fn check_q<C: Field>(q: &C) -> Result<()> {
    let q4 = q.pow(4);
    if q.is_zero() || q4.is_one() {
        return Err(Error::DegenerateSpectralParameters("q must be nonzero with q^4 != 1".into()));
    }
    Ok(())
}

/// Normalized partition function `Σ Π weights / Π_i c(z_i, w_i)` with
/// `z_i = ζ_i²`, `w_j = ω_j²`.
pub fn sixv_bruteforce<C: Field>(q: &C, zeta: &[C], omega: &[C]) -> Result<C> {
    let n = zeta.len();
    if omega.len() != n || n == 0 {
        return Err(Error::InvalidObject("need n row and n column parameters".into()));
    }
    check_q(q)?;
    let z: Vec<C> = zeta.iter().map(|s| s.mul(s)).collect();
    let w: Vec<C> = omega.iter().map(|s| s.mul(s)).collect();
    let total = sixv_sum(n, |t, i, j| {
        if t.is_a() {
            weight_a(q, &z[i], &w[j])
        } else if t.is_b() {
            weight_b(q, &z[i], &w[j])
        } else {
            weight_c(q, &zeta[i], &omega[j])
        }
    });
    let norm = (0..n).fold(C::one(), |acc, i| acc.mul(&weight_c(q, &zeta[i], &omega[i])));
    total.exact_div(&norm).map_err(|_| Error::DegenerateSpectralParameters("vanishing c-weight".into()))
}

/// `Π a b / (Δ(z) Δ'(w)) · det(1/(a b))` in the squared parameters, with
/// `Δ(z) = Π_{i<j} (z_i - z_j)` and `Δ'(w) = Π_{i<j} (w_j - w_i)`.
pub fn ik_formula<C: Field + Determinant>(q: &C, z: &[C], w: &[C]) -> Result<C> {
    let n = z.len();
    if w.len() != n || n == 0 {
        return Err(Error::InvalidObject("need n row and n column parameters".into()));
    }
    check_q(q)?;
    let mut vdm = C::one();
    for i in 0..n {
        for j in i + 1..n {
            vdm = vdm.mul(&z[i].sub(&z[j])).mul(&w[j].sub(&w[i]));
        }
    }
    if vdm.is_zero() {
        return Err(Error::DegenerateSpectralParameters("coincident spectral parameters".into()));
    }
    let mut prod = C::one();
    let mut entries = Vec::with_capacity(n * n);
    for zi in z {
        for wj in w {
            let ab = weight_a(q, zi, wj).mul(&weight_b(q, zi, wj));
            let inv = ab
                .try_inv()
                .map_err(|_| Error::DegenerateSpectralParameters("vanishing a or b weight".into()))?;
            prod = prod.mul(&ab);
            entries.push(inv);
        }
    }
    let m = Matrix::from_fn(n, n, |i, j| entries[i * n + j].clone());
    prod.mul(&m.det()).exact_div(&vdm)
}

/// The Izergin–Korepin determinant at `z_i = ζ_i²`, `w_j = ω_j²`.
pub fn ik_determinant<C: Field + Determinant>(q: &C, zeta: &[C], omega: &[C]) -> Result<C> {
    let z: Vec<C> = zeta.iter().map(|s| s.mul(s)).collect();
    let w: Vec<C> = omega.iter().map(|s| s.mul(s)).collect();
    ik_formula(q, &z, &w)
}

/// Homogeneous limit `z_i -> r`, `w_j -> 1/r` of the IK determinant, taken
/// along `z_i = r + iε`, `w_j = 1/r + jε`.
pub fn ik_homogeneous(q: &Rational, r: &Rational, n: usize) -> Result<Rational> {
    if r.is_zero() {
        return Err(Error::DegenerateSpectralParameters("r must be nonzero".into()));
    }
    let eps = RatFun::var("eps");
    let rr = RatFun::constant(r.clone());
    let rinv = RatFun::constant(r.try_inv()?);
    let z: Vec<RatFun> = (0..n).map(|i| rr.add(&eps.mul(&RatFun::from_int(i as i64)))).collect();
    let w: Vec<RatFun> = (0..n).map(|j| rinv.add(&eps.mul(&RatFun::from_int(j as i64)))).collect();
    let val = ik_formula(&RatFun::constant(q.clone()), &z, &w)?;
    let at0 = val
        .substitute(&bindings([("eps", RatFun::zero())]))
        .map_err(|_| Error::DegenerateSpectralParameters("homogeneous limit is singular".into()))?;
    Ok(at0.constant_value().expect("constant after substitution"))
}

/// `b^{-n(n-1)} Z_hom = Z_ASM(x, y, 1)` at `x = (c/b)²`, `y = (a/b)²`, with
/// `a = qr - 1/(qr)`, `b = r/q - q/r`, `c = q² - q^{-2}`.
pub fn homogeneous_bridge_check(q: &Rational, r: &Rational, n: usize, z_asm: &MPoly) -> Result<bool> {
    let (qi, ri) = (q.try_inv()?, r.try_inv()?);
    let a = q * r - &qi * &ri;
    let b = r * &qi - q * &ri;
    let c = q * q - &qi * &qi;
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(Error::DegenerateSpectralParameters("vanishing homogeneous weight".into()));
    }
    let hom = ik_homogeneous(q, r, n)?;
    let lhs = hom / Ring::pow(&b, (n * (n - 1)) as u32);
    let x = Ring::pow(&(&c / &b), 2);
    let y = Ring::pow(&(&a / &b), 2);
    let mut point = BTreeMap::new();
    point.insert("x".to_string(), x);
    point.insert("y".to_string(), y);
    point.insert("z".to_string(), Rational::from_integer(1.into()));
    point.insert("w".to_string(), Rational::from_integer(1.into()));
    Ok(z_asm.eval(&point)? == lhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::{enumerate_asm, z_asm_bruteforce};
    use crate::exactalg::ratio;

    #[test]
    fn bijection_and_counts() {
        for n in 1..=4 {
            let asms = enumerate_asm(n);
            let configs = sixv_configurations(n);
            assert_eq!(asms.len(), configs.len());
            let mut images = std::collections::HashSet::new();
            for b in &asms {
                let c = asm_to_6v(b);
                assert!(c.is_valid());
                assert_eq!(&sixv_to_asm(&c).unwrap(), b);
                assert!(images.insert(c));
            }
        }
    }

    #[test]
    fn vertex_count_identities() {
        for n in 1..=4 {
            for b in enumerate_asm(n) {
                let s = b.stats();
                let counts = asm_to_6v(&b).counts();
                let get = |t| counts.get(&t).copied().unwrap_or(0) as u32;
                let nc = get(VertexType::C1) + get(VertexType::C2);
                let na = get(VertexType::A1) + get(VertexType::A2);
                assert_eq!(s.nminus, (nc - n as u32) / 2);
                assert_eq!(s.nminus, get(VertexType::C2));
                assert_eq!(s.inv - s.nminus, na / 2);
                assert_eq!(get(VertexType::A1), get(VertexType::A2));
            }
        }
    }

    #[test]
    fn ik_matches_bruteforce() {
        let q = ratio(3, 2);
        let zeta = [ratio(2, 1), ratio(-1, 3), ratio(5, 7)];
        let omega = [ratio(3, 4), ratio(5, 3), ratio(-3, 5)];
        for n in 1..=3 {
            let bf = sixv_bruteforce(&q, &zeta[..n], &omega[..n]).unwrap();
            let ik = ik_determinant(&q, &zeta[..n], &omega[..n]).unwrap();
            assert_eq!(bf, ik, "n = {n}");
        }
        assert!(sixv_bruteforce(&q, &zeta[..1], &omega[..1]).unwrap().is_one());
    }

    #[test]
    fn degenerate_parameters() {
        let q = ratio(3, 2);
        let zeta = [ratio(2, 1), ratio(-2, 1)];
        let omega = [ratio(1, 2), ratio(5, 3)];
        assert!(matches!(ik_determinant(&q, &zeta, &omega), Err(Error::DegenerateSpectralParameters(_))));
        assert!(ik_determinant(&ratio(1, 1), &omega, &omega).is_err());
    }

    #[test]
    fn homogeneous_bridge() {
        for n in 1..=3 {
            let z = z_asm_bruteforce(n);
            assert!(homogeneous_bridge_check(&ratio(2, 1), &ratio(3, 5), n, &z).unwrap(), "n = {n}");
        }
    }
}
