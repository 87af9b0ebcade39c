//! Alternating sign matrices.
//!
//! An ASM is a square `{-1, 0, 1}` matrix whose rows and columns sum to 1
//! and whose partial row and column sums lie in `{0, 1}`, so that nonzero
//! entries alternate in sign. Statistics:
//!
//! - `Inv(B) = sum_{i<j, k<l} b_{i,l} b_{j,k}`
//! - `N(B)` = number of `-1` entries
//! - `t(B)` = zeros left of the 1 in the top row
//! - `b(B)` = zeros right of the 1 in the bottom row
//!
//! with weight `x^N y^{Inv-N} z^t w^b`.

mod lambda;
mod matrices;
mod sixv;

use std::collections::BTreeMap;
use std::fmt;

pub use lambda::{lambda_det_expansion, lambda_det_tsystem};
pub use matrices::{
    apm_factorization_check, apm_matrix, apm_params, g_matrix, m_asm, m_asm_gf, m_asm_matrix, m_asm_refined,
    m_asm_refined_gf, m_asm_refined_matrix, refined_prefactor, z_asm_det, z_asm_refined_det, z_asm_xyz, ApmParams,
    Branch,
};
pub use sixv::{
    asm_to_6v, homogeneous_bridge_check, ik_determinant, ik_formula, ik_homogeneous, sixv_bruteforce,
    sixv_configurations, sixv_sum, sixv_to_asm, SixVConfig, VertexType,
};

use crate::error::{Error, Result};
use crate::exactalg::{MPoly, Rational};
use crate::par;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Asm {
    n: usize,
    entries: Vec<i8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AsmStats {
    pub inv: u32,
    pub nminus: u32,
    pub t: u32,
    pub b: u32,
}

impl Asm {
    /// Validate and build from rows.
    pub fn new(rows: Vec<Vec<i8>>) -> Result<Asm> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidAsm("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidAsm("not square".into()));
        }
        let entries: Vec<i8> = rows.into_iter().flatten().collect();
        if entries.iter().any(|&e| !(-1..=1).contains(&e)) {
            return Err(Error::InvalidAsm("entries must be -1, 0 or 1".into()));
        }
        let a = Asm { n, entries };
        for i in 0..n {
            let (mut rs, mut cs) = (0i32, 0i32);
            for k in 0..n {
                rs += a.get(i, k) as i32;
                cs += a.get(k, i) as i32;
                if !(0..=1).contains(&rs) || !(0..=1).contains(&cs) {
                    return Err(Error::InvalidAsm(format!("partial sum outside {{0, 1}} in line {i}")));
                }
            }
            if rs != 1 || cs != 1 {
                return Err(Error::InvalidAsm(format!("line {i} does not sum to 1")));
            }
        }
        Ok(a)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        self.entries.chunks(self.n).map(<[i8]>::to_vec).collect()
    }

    pub fn stats(&self) -> AsmStats {
        asm_stats(self)
    }
}

impl fmt::Debug for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Asm{:?}", self.rows())
    }
}

impl fmt::Display for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|e| format!("{e:>2}")).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", rows.join("\n"))
    }
}

/// All `n x n` ASMs, built row by row from column partial sums.
pub fn enumerate_asm(n: usize) -> Vec<Asm> {
    assert!(n >= 1, "size must be positive");
    let mut out = Vec::new();
    let mut rows: Vec<Vec<i8>> = Vec::with_capacity(n);
    extend(n, &vec![0u8; n], &mut rows, &mut out);
    out
}

fn extend(n: usize, colsum: &[u8], rows: &mut Vec<Vec<i8>>, out: &mut Vec<Asm>) {
    if rows.len() == n {
        out.push(Asm { n, entries: rows.iter().flatten().copied().collect() });
        return;
    }
    // Choose the next row column by column: entry e with colsum + e in {0,1}
    // and running row sum in {0,1}, ending at 1.
    let mut row = vec![0i8; n];
    fill_row(n, 0, 0, colsum, &mut row, rows, out);
}

fn fill_row(n: usize, j: usize, rs: i8, colsum: &[u8], row: &mut Vec<i8>, rows: &mut Vec<Vec<i8>>, out: &mut Vec<Asm>) {
    if j == n {
        if rs != 1 {
            return;
        }
        let next: Vec<u8> = colsum.iter().zip(row.iter()).map(|(&c, &e)| (c as i8 + e) as u8).collect();
        // Remaining rows must be able to complete every column.
        let missing = next.iter().filter(|&&c| c == 0).count();
        if missing != n - rows.len() - 1 {
            return;
        }
        rows.push(row.clone());
        extend(n, &next, rows, out);
        rows.pop();
        return;
    }
    for e in [-1i8, 0, 1] {
        let c = colsum[j] as i8 + e;
        let r = rs + e;
        if !(0..=1).contains(&c) || !(0..=1).contains(&r) {
            continue;
        }
        row[j] = e;
        fill_row(n, j + 1, r, colsum, row, rows, out);
    }
    row[j] = 0;
}

pub fn asm_stats(b: &Asm) -> AsmStats {
    let n = b.n;
    // Inv = sum over i<j, k<l of b[i][l] b[j][k]: for each (j, k), pair with
    // the sum of b[i][l] over rows above and columns to the right.
    let mut inv: i64 = 0;
    let mut above_right = vec![0i64; n + 1];
    for j in 0..n {
        // above_right[k] = sum_{i<j, l>k} b[i][l]
        for k in 0..n {
            let e = b.get(j, k) as i64;
            if e != 0 {
                inv += e * above_right[k];
            }
        }
        let mut suffix = 0i64;
        let mut add = vec![0i64; n];
        for k in (0..n).rev() {
            add[k] = suffix;
            suffix += b.get(j, k) as i64;
        }
        for k in 0..n {
            above_right[k] += add[k];
        }
    }
    let nminus = b.entries.iter().filter(|&&e| e == -1).count() as u32;
    let t = (0..n).position(|k| b.get(0, k) == 1).expect("top row has a 1") as u32;
    let last = (0..n).position(|k| b.get(n - 1, k) == 1).expect("bottom row has a 1");
    AsmStats { inv: inv as u32, nminus, t, b: (n - 1 - last) as u32 }
}

impl AsmStats {
    /// `x^N y^{Inv-N} z^t w^b`.
    pub fn weight(&self) -> MPoly {
        monomial_xyzw(self.nminus, self.inv - self.nminus, self.t, self.b)
    }
}

pub(crate) fn monomial_xyzw(x: u32, y: u32, z: u32, w: u32) -> MPoly {
    MPoly::from_terms(
        &["x", "y", "z", "w"],
        [(vec![x as i32, y as i32, z as i32, w as i32], Rational::from_integer(1.into()))],
    )
    .expect("valid monomial")
    .trim()
}

/// Tally exponent tuples into a polynomial in `x, y, z, w`.
pub(crate) fn tally_to_poly(tally: BTreeMap<[u32; 4], u64>) -> MPoly {
    MPoly::from_terms(
        &["x", "y", "z", "w"],
        tally
            .into_iter()
            .map(|(e, c)| (e.iter().map(|&v| v as i32).collect(), Rational::from_integer(c.into()))),
    )
    .expect("valid terms")
    .trim()
}

pub(crate) fn merge_tally(mut a: BTreeMap<[u32; 4], u64>, b: BTreeMap<[u32; 4], u64>) -> BTreeMap<[u32; 4], u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// `Z_ASM^(n)(x,y,z,w) = sum_B x^N y^{Inv-N} z^t w^b`.
pub fn z_asm_bruteforce(n: usize) -> MPoly {
    let all = enumerate_asm(n);
    let tally = par::fold_merge(
        &all,
        BTreeMap::new,
        |mut acc, b| {
            let s = asm_stats(b);
            *acc.entry([s.nminus, s.inv - s.nminus, s.t, s.b]).or_insert(0) += 1;
            acc
        },
        merge_tally,
    );
    tally_to_poly(tally)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_mpoly;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_asm(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 42, 429]);
        assert_eq!(enumerate_asm(1)[0].rows(), vec![vec![1]]);
    }

    #[test]
    fn enumeration_matches_direct_filter() {
        // Rows whose partial sums stay in {0, 1} and end at 1, combined in
        // every way and validated column-wise.
        for n in 1..=5usize {
            let mut rows: Vec<Vec<i8>> = vec![vec![]];
            for _ in 0..n {
                rows = rows
                    .into_iter()
                    .flat_map(|r| [-1i8, 0, 1].map(|e| [r.clone(), vec![e]].concat()))
                    .filter(|r| {
                        let mut s = 0;
                        r.iter().all(|&e| {
                            s += e;
                            (0..=1).contains(&s)
                        })
                    })
                    .collect();
            }
            rows.retain(|r| r.iter().sum::<i8>() == 1);
            let mut found = std::collections::BTreeSet::new();
            let mut idx = vec![0usize; n];
            'outer: loop {
                let m: Vec<Vec<i8>> = idx.iter().map(|&k| rows[k].clone()).collect();
                if let Ok(a) = Asm::new(m) {
                    found.insert(a);
                }
                for d in 0..n {
                    idx[d] += 1;
                    if idx[d] < rows.len() {
                        continue 'outer;
                    }
                    idx[d] = 0;
                }
                break;
            }
            let enumerated: std::collections::BTreeSet<Asm> = enumerate_asm(n).into_iter().collect();
            assert_eq!(found, enumerated, "n = {n}");
        }
    }

    #[test]
    fn stats_of_small_matrices() {
        let id = Asm::new(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(id.stats(), AsmStats { inv: 0, nminus: 0, t: 0, b: 0 });
        let mid = Asm::new(vec![vec![0, 1, 0], vec![1, -1, 1], vec![0, 1, 0]]).unwrap();
        assert_eq!(mid.stats().weight(), parse_mpoly("z*x*y*w").unwrap());
        let anti = Asm::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let s = anti.stats();
        assert_eq!((s.inv, s.nminus, s.t), (1, 0, 1));
    }

    #[test]
    fn rejects_invalid() {
        assert!(Asm::new(vec![vec![1, 0], vec![1, 0]]).is_err());
        assert!(Asm::new(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 1, 0]]).is_err());
        assert!(Asm::new(vec![vec![-1, 1, 1], vec![1, 0, 0], vec![1, 0, 0]]).is_err());
    }

    #[test]
    fn partition_function_n3() {
        let z = z_asm_bruteforce(3);
        let w1 = z.substitute(&crate::exactalg::bindings([("w", crate::exactalg::RatFun::one())])).unwrap();
        let want = parse_mpoly("1+z*y+z*x*y+y+z*y^2+z^2*y^2+z^2*y^3").unwrap();
        assert_eq!(w1.as_poly().unwrap(), &want);
        assert_eq!(z_asm_bruteforce(2), parse_mpoly("1 + z*y*w").unwrap());
    }
}
