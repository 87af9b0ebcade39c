//! Descending plane partitions.
//!
//! Row `i` (0-based) starts in column `i` and holds `λ_i` parts. Parts weakly
//! decrease along rows, strictly decrease down columns, and
//! `λ_i < a_{i,i} <= λ_{i-1}` with `λ_{-1} = ∞`. A part `a_{i,j}` is special
//! when `a_{i,j} <= j - i`. For order `n` the weight is
//! `x^S y^NS z^M w^P`, with `M` the number of parts equal to `n` and `P` the
//! number of parts equal to `n-1` plus the number of rows of length `n-1`.

mod lgv;
mod paths;
mod sandwich;

use std::collections::BTreeMap;
use std::fmt;

pub use lgv::{
    d_entry, d_prime_entry, d_prime_matrix, h_matrix, lgv_matrix, m_dpp_gf, m_dpp_matrix, m_dpp_refined,
    m_dpp_refined_gf, m_dpp_refined_matrix, z_dpp_det, z_dpp_det_h, z_dpp_prime_det, z_dpp_refined_det,
};
pub use paths::{
    dpp_to_paths, family_bruteforce, paths_to_dpp, single_path_pf, single_paths, Path, PathFamily, PathWeights,
};
pub use sandwich::{asm_dpp_sandwich_check, quadratic_relation_check, sandwich_difference, SandwichReport, Variant};

use crate::asm::{merge_tally, tally_to_poly};
use crate::error::{Error, Result};
use crate::exactalg::MPoly;
use crate::par;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Dpp {
    rows: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DppStats {
    pub special: u32,
    pub nonspecial: u32,
    pub mcount: u32,
    pub pcount: u32,
}

impl Dpp {
    pub fn empty() -> Dpp {
        Dpp::default()
    }

    pub fn new(rows: Vec<Vec<u32>>) -> Result<Dpp> {
        for (i, row) in rows.iter().enumerate() {
            if row.is_empty() {
                return Err(Error::InvalidObject(format!("row {i} is empty")));
            }
            if row.iter().any(|&a| a == 0) {
                return Err(Error::InvalidObject("parts must be positive".into()));
            }
            if row.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidObject(format!("row {i} increases")));
            }
            let len = row.len() as u32;
            if row[0] <= len {
                return Err(Error::InvalidObject(format!("row {i}: diagonal part must exceed the row length")));
            }
            if i > 0 {
                let prev = &rows[i - 1];
                if row[0] > prev.len() as u32 {
                    return Err(Error::InvalidObject(format!("row {i}: diagonal part exceeds the previous row length")));
                }
                // Entry at offset k sits below offset k+1 of the previous row.
                for (k, &a) in row.iter().enumerate() {
                    match prev.get(k + 1) {
                        Some(&above) if a < above => {}
                        _ => return Err(Error::InvalidObject(format!("column strictness fails in row {i}"))),
                    }
                }
            }
        }
        Ok(Dpp { rows })
    }

    /// Parse `"3 3 / 2"`; rows separated by `/`, empty string for `∅`.
    pub fn parse(s: &str) -> Result<Dpp> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Dpp::empty());
        }
        let rows = s
            .split('/')
            .map(|r| {
                r.split_whitespace()
                    .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad part {t:?}"))))
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Dpp::new(rows)
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn max_part(&self) -> u32 {
        self.rows.first().map_or(0, |r| r[0])
    }

    pub fn nparts(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn stats(&self, n: u32) -> DppStats {
        dpp_stats(self, n)
    }
}

impl fmt::Debug for Dpp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dpp({self})")
    }
}

impl fmt::Display for Dpp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "∅");
        }
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", rows.join(" / "))
    }
}

/// All DPPs with parts at most `n`, the empty one included.
pub fn enumerate_dpp(n: u32) -> Vec<Dpp> {
    let mut out = Vec::new();
    let mut rows = Vec::new();
    grow(n, &mut rows, &mut out);
    out
}

fn grow(n: u32, rows: &mut Vec<Vec<u32>>, out: &mut Vec<Dpp>) {
    out.push(Dpp { rows: rows.clone() });
    let prev = rows.last().cloned();
    let diag_max = match &prev {
        None => n,
        Some(p) => (p.len() as u32).min(p.get(1).map_or(0, |&a| a.saturating_sub(1))),
    };
    for diag in 2..=diag_max {
        // Row length L < diag; entries after the diagonal are bounded by the
        // diagonal and by the row above.
        for len in 1..diag {
            let caps: Vec<u32> = (1..len as usize)
                .map(|k| match &prev {
                    None => diag,
                    Some(p) => p.get(k + 1).map_or(0, |&a| a.saturating_sub(1)).min(diag),
                })
                .collect();
            if caps.iter().any(|&c| c == 0) {
                continue;
            }
            let mut row = vec![diag];
            tails(&caps, diag, &mut row, &mut |r| {
                rows.push(r.to_vec());
                grow(n, rows, out);
                rows.pop();
            });
        }
    }
}

/// Weakly decreasing tails under per-position caps.
fn tails(caps: &[u32], bound: u32, row: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    let k = row.len() - 1;
    if k == caps.len() {
        f(row);
        return;
    }
    for a in 1..=bound.min(caps[k]) {
        row.push(a);
        tails(caps, a, row, f);
        row.pop();
    }
}

pub fn dpp_stats(a: &Dpp, n: u32) -> DppStats {
    let mut s = DppStats { special: 0, nonspecial: 0, mcount: 0, pcount: 0 };
    for row in &a.rows {
        for (k, &part) in row.iter().enumerate() {
            if part <= k as u32 {
                s.special += 1;
            } else {
                s.nonspecial += 1;
            }
            if part == n {
                s.mcount += 1;
            }
            if n >= 1 && part == n - 1 {
                s.pcount += 1;
            }
        }
        if n >= 1 && row.len() as u32 == n - 1 {
            s.pcount += 1;
        }
    }
    s
}

impl DppStats {
    pub fn weight(&self) -> MPoly {
        crate::asm::monomial_xyzw(self.special, self.nonspecial, self.mcount, self.pcount)
    }
}

/// `Z_DPP^(n)(x,y,z,w) = sum_A x^S y^NS z^M w^P`.
pub fn z_dpp_bruteforce(n: u32) -> MPoly {
    let all = enumerate_dpp(n);
    let tally = par::fold_merge(
        &all,
        BTreeMap::new,
        |mut acc, a| {
            let s = dpp_stats(a, n);
            *acc.entry([s.special, s.nonspecial, s.mcount, s.pcount]).or_insert(0) += 1;
            acc
        },
        merge_tally,
    );
    tally_to_poly(tally)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{bindings, parse_mpoly, RatFun};

    #[test]
    fn small_orders() {
        assert_eq!(enumerate_dpp(1), vec![Dpp::empty()]);
        let two: Vec<String> = enumerate_dpp(2).iter().map(|d| d.to_string()).collect();
        assert_eq!(two, vec!["∅", "2"]);
        let mut three: Vec<String> = enumerate_dpp(3).iter().map(|d| d.to_string()).collect();
        three.sort();
        assert_eq!(three, vec!["2", "3", "3 1", "3 2", "3 3", "3 3 / 2", "∅"]);
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_dpp(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 42, 429, 7436]);
    }

    #[test]
    fn enumeration_matches_filter() {
        // Every array of at most 3 rows of parts <= 4 that validates; a DPP
        // of order 4 has rows of lengths at most 3, 2, 1.
        let n = 4u32;
        let mut rowset: Vec<Vec<u32>> = Vec::new();
        for len in 1..=3usize {
            let mut idx = vec![1u32; len];
            loop {
                rowset.push(idx.clone());
                let mut d = 0;
                while d < len {
                    idx[d] += 1;
                    if idx[d] <= n {
                        break;
                    }
                    idx[d] = 1;
                    d += 1;
                }
                if d == len {
                    break;
                }
            }
        }
        let mut found = std::collections::BTreeSet::new();
        found.insert(Dpp::empty());
        for a in &rowset {
            if let Ok(d) = Dpp::new(vec![a.clone()]) {
                found.insert(d);
            }
            for b in rowset.iter().filter(|b| b.len() <= 2) {
                if let Ok(d) = Dpp::new(vec![a.clone(), b.clone()]) {
                    found.insert(d);
                }
                for c in rowset.iter().filter(|c| c.len() == 1) {
                    if let Ok(d) = Dpp::new(vec![a.clone(), b.clone(), c.clone()]) {
                        found.insert(d);
                    }
                }
            }
        }
        let all: std::collections::BTreeSet<Dpp> = enumerate_dpp(n).into_iter().collect();
        assert_eq!(found, all);
    }

    #[test]
    fn stats_examples() {
        let d = Dpp::parse("3 1").unwrap();
        // One row of length n-1 = 2, so P = 1.
        assert_eq!(d.stats(3).weight(), parse_mpoly("z*x*y*w").unwrap());
        let d = Dpp::parse("3 3 / 2").unwrap();
        let s = d.stats(3);
        assert_eq!((s.mcount, s.pcount), (2, 2));
        assert_eq!(s.weight(), parse_mpoly("z^2*y^3*w^2").unwrap());
    }

    #[test]
    fn rejects_invalid() {
        assert!(Dpp::parse("2 2").is_err());
        assert!(Dpp::parse("3 3 / 3").is_err());
        assert!(Dpp::parse("1").is_err());
        assert!(Dpp::parse("3 x").is_err());
    }

    #[test]
    fn partition_function_n3() {
        let z = RatFun::from_poly(z_dpp_bruteforce(3)).substitute(&bindings([("w", RatFun::one())])).unwrap();
        let want = parse_mpoly("1+y+z*y+z*x*y+z*y^2+z^2*y^2+z^2*y^3").unwrap();
        assert_eq!(z.as_poly().unwrap(), &want);
    }
}
