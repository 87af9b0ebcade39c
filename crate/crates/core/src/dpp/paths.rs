//! Non-intersecting lattice paths for DPPs.
//!
//! Path `i` starts at `(s_i, 0)` with `s_i = a_{i,i} - 2`, moves by steps
//! `(-1, 0)` and `(0, 1)` to `(0, s_i + 2)`, and takes one final step left.
//! The horizontal step from `x = c` to `x = c - 1` at height `h` records the
//! part `h` at offset `c` of the row (the final step is offset 0); steps at
//! height 0 are not recorded. A recorded step is special when `h <= c`, i.e.
//! on or below the line `y = x + 1` through its left end.

use std::collections::HashSet;

use super::Dpp;
use crate::error::{Error, Result};
use crate::exactalg::MPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    /// Start `(start, 0)`.
    pub start: u32,
    /// End `(0, top)`, followed by the final step at height `top`.
    pub top: u32,
    /// `heights[c - 1]` is the height of the step leaving `x = c`.
    pub heights: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PathFamily {
    pub paths: Vec<Path>,
}

/// Weights: `x` per special step, `y` per other recorded step, and an extra
/// `z` per step at height `z_level` if given.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct PathWeights {
    pub z_level: Option<u32>,
}

impl Path {
    /// Lattice points visited, the point after the final step included.
    pub fn vertices(&self) -> Vec<(i64, u32)> {
        let s = self.start as usize;
        let h = |c: usize| -> u32 {
            if c == 0 {
                self.top
            } else if c > s {
                0
            } else {
                self.heights[c - 1]
            }
        };
        let mut out = Vec::new();
        for c in (0..=s).rev() {
            for y in h(c + 1)..=h(c) {
                out.push((c as i64, y));
            }
        }
        out.push((-1, self.top));
        out
    }

    pub fn weight(&self, w: PathWeights) -> MPoly {
        let (mut sx, mut sy, mut sz) = (0i32, 0i32, 0i32);
        let steps = std::iter::once((0u32, self.top)).chain(self.heights.iter().enumerate().map(|(k, &h)| (k as u32 + 1, h)));
        for (c, h) in steps {
            if h == 0 {
                continue;
            }
            if h <= c {
                sx += 1;
            } else {
                sy += 1;
            }
            if w.z_level == Some(h) {
                sz += 1;
            }
        }
        MPoly::var("x").pow(sx as u32).mul(&MPoly::var("y").pow(sy as u32)).mul(&MPoly::var("z").pow(sz as u32))
    }

    fn is_valid(&self) -> bool {
        self.heights.len() == self.start as usize
            && self.heights.windows(2).all(|w| w[0] >= w[1])
            && self.heights.first().map_or(true, |&h| h <= self.top)
    }
}

/// All paths from `(start, 0)` to `(0, top)`.
pub fn single_paths(start: u32, top: u32) -> Vec<Path> {
    let mut out = Vec::new();
    let mut hs = Vec::with_capacity(start as usize);
    fn rec(start: u32, top: u32, bound: u32, hs: &mut Vec<u32>, out: &mut Vec<Path>) {
        if hs.len() == start as usize {
            out.push(Path { start, top, heights: hs.clone() });
            return;
        }
        for h in 0..=bound {
            hs.push(h);
            rec(start, top, h, hs, out);
            hs.pop();
        }
    }
    rec(start, top, top, &mut hs, &mut out);
    out
}

/// Partition function of single paths from `(i, 0)` to `(0, j + 2)`.
pub fn single_path_pf(i: u32, j: u32, w: PathWeights) -> MPoly {
    single_paths(i, j + 2).iter().fold(MPoly::zero(), |acc, p| acc.add(&p.weight(w)))
}

pub fn dpp_to_paths(a: &Dpp) -> PathFamily {
    let paths = a
        .rows()
        .iter()
        .map(|row| {
            let s = row[0] - 2;
            let heights = (1..=s as usize).map(|c| row.get(c).copied().unwrap_or(0)).collect();
            Path { start: s, top: row[0], heights }
        })
        .collect();
    PathFamily { paths }
}

pub fn paths_to_dpp(f: &PathFamily) -> Result<Dpp> {
    let mut seen = HashSet::new();
    for p in &f.paths {
        if !p.is_valid() || p.top != p.start + 2 {
            return Err(Error::InvalidObject("path does not run from (s, 0) to (0, s + 2)".into()));
        }
        for v in p.vertices() {
            if !seen.insert(v) {
                return Err(Error::InvalidObject(format!("paths intersect at {v:?}")));
            }
        }
    }
    let mut paths = f.paths.clone();
    paths.sort_by(|a, b| b.start.cmp(&a.start));
    let rows = paths
        .iter()
        .map(|p| std::iter::once(p.top).chain(p.heights.iter().copied().filter(|&h| h > 0)).collect())
        .collect();
    Dpp::new(rows)
}

/// Sum over vertex-disjoint families with distinct starts in `0..=n-2` of
/// the product of path weights (with `z` per step at height `n`).
pub fn family_bruteforce(n: u32) -> MPoly {
    let w = PathWeights { z_level: Some(n) };
    let per_start: Vec<Vec<(Path, MPoly, Vec<(i64, u32)>)>> = (0..n.saturating_sub(1))
        .map(|s| {
            single_paths(s, s + 2)
                .into_iter()
                .map(|p| {
                    let wt = p.weight(w);
                    let vs = p.vertices();
                    (p, wt, vs)
                })
                .collect()
        })
        .collect();
    let mut total = MPoly::zero();
    let mut used: HashSet<(i64, u32)> = HashSet::new();
    fn rec(
        s: usize,
        per_start: &[Vec<(Path, MPoly, Vec<(i64, u32)>)>],
        used: &mut HashSet<(i64, u32)>,
        acc: &MPoly,
        total: &mut MPoly,
    ) {
        if s == per_start.len() {
            *total = total.add(acc);
            return;
        }
        rec(s + 1, per_start, used, acc, total);
        for (_, wt, vs) in &per_start[s] {
            if vs.iter().any(|v| used.contains(v)) {
                continue;
            }
            vs.iter().for_each(|v| {
                used.insert(*v);
            });
            rec(s + 1, per_start, used, &acc.mul(wt), total);
            vs.iter().for_each(|v| {
                used.remove(v);
            });
        }
    }
    rec(0, &per_start, &mut used, &MPoly::one(), &mut total);
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpp::enumerate_dpp;
    use crate::exactalg::parse_mpoly;

    #[test]
    fn single_path_examples() {
        let w = PathWeights::default();
        assert_eq!(single_path_pf(0, 0, w), parse_mpoly("y").unwrap());
        assert_eq!(single_path_pf(1, 0, w), parse_mpoly("y + x*y + y^2").unwrap());
    }

    #[test]
    fn round_trip() {
        for n in 1..=6 {
            for a in enumerate_dpp(n) {
                let f = dpp_to_paths(&a);
                assert_eq!(paths_to_dpp(&f).unwrap(), a);
                let w = PathWeights { z_level: Some(n) };
                let s = a.stats(n);
                let wt = f.paths.iter().fold(MPoly::one(), |acc, p| acc.mul(&p.weight(w)));
                let want = MPoly::var("x")
                    .pow(s.special)
                    .mul(&MPoly::var("y").pow(s.nonspecial))
                    .mul(&MPoly::var("z").pow(s.mcount));
                assert_eq!(wt, want, "{a}");
            }
        }
    }

    #[test]
    fn empty_family() {
        assert_eq!(dpp_to_paths(&Dpp::empty()), PathFamily::default());
        assert_eq!(paths_to_dpp(&PathFamily::default()).unwrap(), Dpp::empty());
    }

    #[test]
    fn intersecting_family_rejected() {
        let p = Path { start: 1, top: 3, heights: vec![1] };
        let q = Path { start: 0, top: 2, heights: vec![] };
        assert!(paths_to_dpp(&PathFamily { paths: vec![p, q] }).is_err());
    }
}
