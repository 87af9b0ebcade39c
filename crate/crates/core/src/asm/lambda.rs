//! The lambda-determinant, by the deformed T-system and by its ASM expansion.

use std::collections::HashMap;

use super::enumerate_asm;
use crate::error::{Error, Result};
use crate::exactalg::ExactDiv;
use crate::linalg::Matrix;
use crate::par;

/// Solve `T_{i,j,k+1} T_{i,j,k-1} = T_{i,j+1,k} T_{i,j-1,k} + λ T_{i+1,j,k} T_{i-1,j,k}`
/// with `T_{·,·,0} = 1` and the entries of `a` at level 1, returning `T_{0,0,n}`.
///
/// Level `k` lives on the sites `i + j ≡ n + k (mod 2)`, `|i| + |j| <= n - k`.
/// Level-1 site `(i, j)` holds `a[(j - i + n - 1)/2][(i + j + n - 1)/2]`.
pub fn lambda_det_tsystem<C: ExactDiv>(a: &Matrix<C>, lam: &C) -> Result<C> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::InvalidObject("lambda-determinant needs a square matrix".into()));
    }
    if n == 0 {
        return Ok(C::one());
    }
    let sites = |k: usize| -> Vec<(i64, i64)> {
        let r = (n - k) as i64;
        let mut out = Vec::new();
        for i in -r..=r {
            for j in -r..=r {
                if i.abs() + j.abs() <= r && (i + j - (n + k) as i64).rem_euclid(2) == 0 {
                    out.push((i, j));
                }
            }
        }
        out
    };
    let mut prev: HashMap<(i64, i64), C> = sites(0).into_iter().map(|s| (s, C::one())).collect();
    let mut cur: HashMap<(i64, i64), C> = sites(1)
        .into_iter()
        .map(|(i, j)| {
            let r = ((j - i + n as i64 - 1) / 2) as usize;
            let c = ((i + j + n as i64 - 1) / 2) as usize;
            ((i, j), a.get(r, c).clone())
        })
        .collect();
    for k in 1..n {
        let next_sites = sites(k + 1);
        let vals = par::map(&next_sites, |&(i, j)| -> Result<C> {
            let den = &prev[&(i, j)];
            if den.is_zero() {
                return Err(Error::ZeroDivision { i, j, k: k - 1 });
            }
            let num = cur[&(i, j + 1)].mul(&cur[&(i, j - 1)]).add(&lam.mul(&cur[&(i + 1, j)].mul(&cur[&(i - 1, j)])));
            num.exact_div(den)
        });
        let mut next = HashMap::with_capacity(next_sites.len());
        for (s, v) in next_sites.into_iter().zip(vals) {
            next.insert(s, v?);
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur.remove(&(0, 0)).expect("apex site"))
}

/// `sum_B λ^{Inv-N} (1+λ)^N prod a_{i,j}^{b_{i,j}}` over all ASMs `B`.
pub fn lambda_det_expansion<C: ExactDiv>(a: &Matrix<C>, lam: &C) -> Result<C> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::InvalidObject("lambda-determinant needs a square matrix".into()));
    }
    if n == 0 {
        return Ok(C::one());
    }
    let one_plus = C::one().add(lam);
    let terms = par::map(&enumerate_asm(n), |b| -> Result<C> {
        let s = b.stats();
        let w = lam.pow(s.inv - s.nminus).mul(&one_plus.pow(s.nminus));
        // A vanishing weight must not divide by a zero entry.
        if w.is_zero() {
            return Ok(C::zero());
        }
        let (mut num, mut den) = (C::one(), C::one());
        for i in 0..n {
            for j in 0..n {
                match b.get(i, j) {
                    1 => num = num.mul(a.get(i, j)),
                    -1 => den = den.mul(a.get(i, j)),
                    _ => {}
                }
            }
        }
        w.mul(&num).exact_div(&den)
    });
    terms.into_iter().try_fold(C::zero(), |acc, t| Ok(acc.add(&t?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_mpoly, MPoly, Rational};

    fn generic(n: usize) -> Matrix<MPoly> {
        Matrix::from_fn(n, n, |i, j| MPoly::var(&format!("a{}{}", i + 1, j + 1)))
    }

    #[test]
    fn two_by_two() {
        let lam = MPoly::var("l");
        let want = parse_mpoly("a11*a22 + l*a12*a21").unwrap();
        assert_eq!(lambda_det_tsystem(&generic(2), &lam).unwrap(), want);
        assert_eq!(lambda_det_expansion(&generic(2), &lam).unwrap(), want);
    }

    #[test]
    fn all_ones() {
        let ones = Matrix::from_fn(3, 3, |_, _| MPoly::one());
        let lam = MPoly::var("l");
        let want = parse_mpoly("(1+l)^3").unwrap();
        assert_eq!(lambda_det_tsystem(&ones, &lam).unwrap(), want);
        assert_eq!(lambda_det_expansion(&ones, &lam).unwrap(), want);
    }

    #[test]
    fn generic_three_by_three_agree() {
        let lam = MPoly::var("l");
        let a = generic(3);
        assert_eq!(lambda_det_tsystem(&a, &lam).unwrap(), lambda_det_expansion(&a, &lam).unwrap());
    }

    #[test]
    fn minus_one_is_determinant() {
        let rows = [[2, -1, 3, 5], [1, 4, -2, 7], [3, 3, 1, -1], [6, -5, 2, 2]];
        let m = Matrix::from_fn(4, 4, |i, j| Rational::from_integer(rows[i][j].into()));
        let lam = Rational::from_integer((-1).into());
        assert_eq!(lambda_det_tsystem(&m, &lam).unwrap(), m.det());
        assert_eq!(lambda_det_expansion(&m, &lam).unwrap(), m.det());
        // A zero where an ASM has its -1.
        let hole = Matrix::from_fn(3, 3, |i, j| Rational::from_integer(((i, j) != (1, 1)).then_some(2).unwrap_or(0).into()));
        assert_eq!(lambda_det_expansion(&hole, &lam).unwrap(), hole.det());
    }

    #[test]
    fn reports_zero_site() {
        let m = Matrix::from_fn(3, 3, |i, j| Rational::from_integer(((i, j) != (1, 1)).then_some(1).unwrap_or(0).into()));
        let err = lambda_det_tsystem(&m, &Rational::from_integer(1.into())).unwrap_err();
        // The central entry sits at level 1, site (0, 0); it divides at level 3.
        assert_eq!(err, Error::ZeroDivision { i: 0, j: 0, k: 1 });
    }
}
