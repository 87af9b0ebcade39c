//! Dense exact matrices over a commutative ring.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{ExactDiv, MPoly, NuElem, RatFun, Rational, Ring};
use crate::genfun::InfMatrix;
use crate::par;

#[derive(Clone, PartialEq)]
pub struct Matrix<C> {
    n: usize,
    m: usize,
    data: Vec<C>,
}

impl<C: Ring> Matrix<C> {
    pub fn zeros(n: usize, m: usize) -> Self {
        Matrix { n, m, data: vec![C::zero(); n * m] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { C::one() } else { C::zero() })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> C>(n: usize, m: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                data.push(f(i, j));
            }
        }
        Matrix { n, m, data }
    }

    pub fn try_from_fn<F: FnMut(usize, usize) -> Result<C>>(n: usize, m: usize, mut f: F) -> Result<Self> {
        let mut data = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                data.push(f(i, j)?);
            }
        }
        Ok(Matrix { n, m, data })
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidObject("ragged matrix rows".into()));
        }
        Ok(Matrix { n, m, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.m
    }

    pub fn is_square(&self) -> bool {
        self.n == self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.data[i * self.m + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        self.data[i * self.m + j] = c;
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.m..(i + 1) * self.m]
    }

    pub fn map<D: Ring, F: Fn(&C) -> D>(&self, f: F) -> Matrix<D> {
        Matrix { n: self.n, m: self.m, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<D: Ring, F: Fn(&C) -> Result<D>>(&self, f: F) -> Result<Matrix<D>> {
        Ok(Matrix { n: self.n, m: self.m, data: self.data.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.m, self.n, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.n, self.m), (rhs.n, rhs.m));
        Self::from_fn(self.n, self.m, |i, j| self.get(i, j).add(rhs.get(i, j)))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.n, self.m), (rhs.n, rhs.m));
        Self::from_fn(self.n, self.m, |i, j| self.get(i, j).sub(rhs.get(i, j)))
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.m, rhs.n);
        let rows = par::map_range(self.n, |i| {
            (0..rhs.m)
                .map(|j| {
                    let mut s = C::zero();
                    for k in 0..self.m {
                        let a = self.get(i, k);
                        let b = rhs.get(k, j);
                        if !a.is_zero() && !b.is_zero() {
                            s = s.add(&a.mul(b));
                        }
                    }
                    s
                })
                .collect::<Vec<_>>()
        });
        Matrix { n: self.n, m: rhs.m, data: rows.into_iter().flatten().collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.m).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i.min(self.m)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_unitriangular(&self) -> bool {
        (self.is_lower_triangular() || self.is_upper_triangular()) && (0..self.n).all(|i| self.get(i, i).is_one())
    }

    /// Leading principal `k x k` block.
    pub fn leading(&self, k: usize) -> Self {
        Self::from_fn(k, k, |i, j| self.get(i, j).clone())
    }

    /// Remove the listed rows and columns (0-based).
    pub fn minor(&self, del_rows: &[usize], del_cols: &[usize]) -> Result<Self> {
        if del_rows.len() != del_cols.len() && self.is_square() {
            return Err(Error::InvalidObject("minor must delete as many rows as columns".into()));
        }
        for &r in del_rows {
            if r >= self.n {
                return Err(Error::IndexOutOfRange { index: r, size: self.n });
            }
        }
        for &c in del_cols {
            if c >= self.m {
                return Err(Error::IndexOutOfRange { index: c, size: self.m });
            }
        }
        let rows: Vec<usize> = (0..self.n).filter(|r| !del_rows.contains(r)).collect();
        let cols: Vec<usize> = (0..self.m).filter(|c| !del_cols.contains(c)).collect();
        Ok(Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone()))
    }

    /// Row-major array of canonical entry strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.n)
                .map(|i| serde_json::Value::Array(self.row(i).iter().map(|c| c.to_string().into()).collect()))
                .collect(),
        )
    }
}

impl<C: Ring> fmt::Debug for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.n, self.m)?;
        for i in 0..self.n {
            let r: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Determinant strategy per coefficient ring.
pub trait Determinant: Ring {
    fn det(m: &Matrix<Self>) -> Self;
}

impl Determinant for Rational {
    fn det(m: &Matrix<Self>) -> Self {
        det_bareiss(m)
    }
}

impl Determinant for MPoly {
    fn det(m: &Matrix<Self>) -> Self {
        det_bareiss(m)
    }
}

impl Determinant for RatFun {
    fn det(m: &Matrix<Self>) -> Self {
        if m.data.iter().all(RatFun::is_polynomial) {
            let p = m.map(|c| c.num().clone());
            return RatFun::from_poly(det_bareiss(&p));
        }
        det_bareiss(m)
    }
}

impl Determinant for NuElem {
    fn det(m: &Matrix<Self>) -> Self {
        det_expand(m)
    }
}

impl<C: Determinant> Matrix<C> {
    pub fn det(&self) -> C {
        assert!(self.is_square(), "determinant of a non-square matrix");
        C::det(self)
    }
}

/// Fraction-free elimination; every division is exact in an integral domain.
pub fn det_bareiss<C: ExactDiv>(m: &Matrix<C>) -> C {
    let n = m.n;
    if n == 0 {
        return C::one();
    }
    let mut a: Vec<Vec<C>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut prev = C::one();
    let mut sign_flip = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return C::zero(),
            }
        }
        let pivot = a[k][k].clone();
        let (top, bottom) = a.split_at_mut(k + 1);
        let rk = &top[k];
        let update = |row: &mut Vec<C>| {
            let aik = row[k].clone();
            for j in k + 1..n {
                let t = pivot.mul(&row[j]).sub(&aik.mul(&rk[j]));
                row[j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
            row[k] = C::zero();
        };
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            bottom.par_iter_mut().for_each(update);
        }
        #[cfg(not(feature = "parallel"))]
        bottom.iter_mut().for_each(update);
        prev = pivot;
    }
    let d = a[n - 1][n - 1].clone();
    if sign_flip {
        d.neg()
    } else {
        d
    }
}

/// Minor expansion memoized over column subsets; needs only ring operations.
///
/// Row `r` is expanded against every subset of `r + 1` columns; each level
/// is computed in parallel.
pub fn det_expand<C: Ring>(m: &Matrix<C>) -> C {
    let n = m.n;
    assert!(n <= 24, "minor expansion limited to n <= 24");
    if n == 0 {
        return C::one();
    }
    let mut level: HashMap<u32, C> = HashMap::new();
    level.insert(0, C::one());
    for r in 0..n {
        let masks: Vec<u32> = (0u32..(1 << n)).filter(|s| s.count_ones() as usize == r + 1).collect();
        let vals = par::map(&masks, |&mask| {
            let mut acc = C::zero();
            for c in 0..n {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let a = m.get(r, c);
                if a.is_zero() {
                    continue;
                }
                let rest = mask & !(1 << c);
                let Some(sub) = level.get(&rest) else { continue };
                if sub.is_zero() {
                    continue;
                }
                let above = (rest >> c).count_ones();
                let t = a.mul(sub);
                acc = if above % 2 == 1 { acc.sub(&t) } else { acc.add(&t) };
            }
            acc
        });
        level = masks.into_iter().zip(vals).filter(|(_, v)| !v.is_zero()).collect();
    }
    level.remove(&((1u32 << n) - 1)).unwrap_or_else(C::zero)
}

/// Check `|M| |M_{1,n}^{1,n}| = |M_n^n| |M_1^1| - |M_1^n| |M_n^1|`.
pub fn desnanot_jacobi_check<C: Determinant>(m: &Matrix<C>) -> Result<bool> {
    let n = m.rows();
    if n < 2 || !m.is_square() {
        return Err(Error::SizeTooSmall { min: 2, got: n });
    }
    let l = n - 1;
    let d = |r: &[usize], c: &[usize]| -> Result<C> { Ok(m.minor(r, c)?.det()) };
    let lhs = m.det().mul(&d(&[0, l], &[0, l])?);
    let rhs = d(&[l], &[l])?.mul(&d(&[0], &[0])?).sub(&d(&[0], &[l])?.mul(&d(&[l], &[0])?));
    Ok(lhs == rhs)
}

/// `(I - a S)^{[0,n-1]} A^{[0,n-1]} (I - b S^t)^{[0,n-1]}` with `S` the shift
/// `S_{i,j} = [i = j + 1]`.
pub fn sandwich<C: Ring>(a: &C, m: &Matrix<C>, b: &C) -> Matrix<C> {
    let n = m.rows();
    let lower = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            C::one()
        } else if i == j + 1 {
            a.neg()
        } else {
            C::zero()
        }
    });
    let upper = lower.transpose().map(|c| if c.is_one() { C::one() } else if c.is_zero() { C::zero() } else { b.neg() });
    lower.mul(m).mul(&upper)
}

/// Truncate `A` to `n x n` and sandwich it between the unitriangular factors.
pub fn sandwich_truncate<C: Ring + 'static>(a: &C, m: &InfMatrix<C>, b: &C, n: usize) -> Result<Matrix<C>> {
    Ok(sandwich(a, &m.truncate(n)?, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_mpoly, rat};

    fn p(s: &str) -> MPoly {
        parse_mpoly(s).unwrap()
    }

    #[test]
    fn symbolic_2x2() {
        let m = Matrix::from_rows(vec![vec![p("a11"), p("a12")], vec![p("a21"), p("a22")]]).unwrap();
        assert_eq!(m.det(), p("a11*a22 - a12*a21"));
        assert_eq!(det_expand(&m), m.det());
    }

    #[test]
    fn bareiss_pivoting() {
        let m = Matrix::from_rows(vec![
            vec![rat(0), rat(2), rat(1)],
            vec![rat(1), rat(0), rat(0)],
            vec![rat(3), rat(1), rat(4)],
        ])
        .unwrap();
        assert_eq!(m.det(), rat(-7));
        assert_eq!(det_expand(&m), rat(-7));
        let z = Matrix::from_rows(vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]]).unwrap();
        assert_eq!(z.det(), rat(0));
    }

    #[test]
    fn minors() {
        let i3 = Matrix::<Rational>::identity(3);
        assert_eq!(i3.minor(&[0], &[0]).unwrap(), Matrix::identity(2));
        assert_eq!(i3.minor(&[], &[]).unwrap(), i3);
        assert!(matches!(i3.minor(&[3], &[0]), Err(Error::IndexOutOfRange { index: 3, size: 3 })));
        assert!(desnanot_jacobi_check(&i3).unwrap());
        assert!(matches!(
            desnanot_jacobi_check(&Matrix::<Rational>::identity(1)),
            Err(Error::SizeTooSmall { .. })
        ));
    }

    #[test]
    fn desnanot_symbolic() {
        let m = Matrix::from_fn(3, 3, |i, j| p(&format!("m{i}{j}")));
        assert!(desnanot_jacobi_check(&m).unwrap());
    }

    #[test]
    fn sandwich_keeps_determinant() {
        let m = Matrix::from_fn(4, 4, |i, j| rat((i * 3 + j * j + 1) as i64 % 7));
        let s = sandwich(&rat(3), &m, &rat(-2));
        assert_eq!(s.det(), m.det());
        assert_eq!(sandwich(&rat(0), &m, &rat(0)), m);
    }
}
