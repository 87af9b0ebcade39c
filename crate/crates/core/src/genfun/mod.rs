//! Infinite matrices given by generating functions or entry rules.
//!
//! A matrix `A = (a_{i,j})_{i,j >= 0}` has generating function
//! `f_A(u,v) = sum a_{i,j} u^i v^j`. Products of infinite matrices are
//! formed either through the closed forms of [`structured_product`] or
//! order by order in a grading variable with [`graded_product`].

mod appendix;
mod structured;

use std::sync::{Arc, Mutex};

pub use appendix::{determinant_rules_check, printed_t_inverse, printed_uu, product_rules_check, ul_truncated_det};
pub use structured::{inverse, parse_struct, structured_product, Family, StructParams};

use crate::error::{Error, Result};
use crate::exactalg::{BiSeries, ExactDiv, GradedSeries, RatFun, Ring, UvFrac};
use crate::linalg::Matrix;

type Rule<C> = Arc<dyn Fn(usize, usize) -> Result<C> + Send + Sync>;
type ColRule<C> = Arc<dyn Fn(usize) -> Result<C> + Send + Sync>;
type SeriesFn<C> = Arc<dyn Fn(usize, usize) -> Result<BiSeries<C>> + Send + Sync>;

enum Source<C> {
    Series { expand: SeriesFn<C>, cache: Mutex<Option<Arc<BiSeries<C>>>> },
    Rule(Rule<C>),
    Patched { base: InfMatrix<C>, cols: Vec<(usize, ColRule<C>)> },
}

/// Infinite matrix over `C`; cheap to clone.
#[derive(Clone)]
pub struct InfMatrix<C> {
    src: Arc<Source<C>>,
}

impl<C: Ring + 'static> InfMatrix<C> {
    /// Entries from a rule `(i, j) -> a_{i,j}`.
    pub fn from_rule<F>(f: F) -> Self
    where
        F: Fn(usize, usize) -> Result<C> + Send + Sync + 'static,
    {
        InfMatrix { src: Arc::new(Source::Rule(Arc::new(f))) }
    }

    fn from_series_fn(expand: SeriesFn<C>) -> Self {
        InfMatrix { src: Arc::new(Source::Series { expand, cache: Mutex::new(None) }) }
    }

    /// Replace column `j` by the rule `i -> entry`.
    pub fn patch_column<F>(&self, j: usize, f: F) -> Self
    where
        F: Fn(usize) -> Result<C> + Send + Sync + 'static,
    {
        let (base, mut cols) = match &*self.src {
            Source::Patched { base, cols } => (base.clone(), cols.clone()),
            _ => (self.clone(), Vec::new()),
        };
        cols.retain(|(c, _)| *c != j);
        cols.push((j, Arc::new(f)));
        InfMatrix { src: Arc::new(Source::Patched { base, cols }) }
    }

    fn series(&self, rows: usize, cols: usize) -> Result<Option<Arc<BiSeries<C>>>> {
        let Source::Series { expand, cache } = &*self.src else { return Ok(None) };
        let mut guard = cache.lock().expect("series cache");
        if let Some(s) = guard.as_ref() {
            if s.rows() >= rows && s.cols() >= cols {
                return Ok(Some(s.clone()));
            }
        }
        // Grow geometrically so entry-by-entry access does not re-expand at
        // every step.
        let (r, c) = match guard.as_ref() {
            Some(s) => (rows.max(s.rows()).max(grow(s.rows(), rows)), cols.max(s.cols()).max(grow(s.cols(), cols))),
            None => (rows, cols),
        };
        let s = Arc::new(expand(r, c)?);
        *guard = Some(s.clone());
        Ok(Some(s))
    }

    pub fn coeff(&self, i: usize, j: usize) -> Result<C> {
        match &*self.src {
            Source::Series { .. } => Ok(self.series(i + 1, j + 1)?.expect("series").get(i, j)),
            Source::Rule(f) => f(i, j),
            Source::Patched { base, cols } => match cols.iter().find(|(c, _)| *c == j) {
                Some((_, f)) => f(i),
                None => base.coeff(i, j),
            },
        }
    }

    /// The leading `n x n` block.
    pub fn truncate(&self, n: usize) -> Result<Matrix<C>> {
        self.block(n, n)
    }

    pub fn block(&self, rows: usize, cols: usize) -> Result<Matrix<C>> {
        if let Source::Series { .. } = &*self.src {
            let s = self.series(rows, cols)?.expect("series");
            return Ok(Matrix::from_fn(rows, cols, |i, j| s.get(i, j)));
        }
        if let Source::Patched { base, cols: patches } = &*self.src {
            let mut m = base.block(rows, cols)?;
            for (j, f) in patches {
                if *j < cols {
                    for i in 0..rows {
                        m.set(i, *j, f(i)?);
                    }
                }
            }
            return Ok(m);
        }
        Matrix::try_from_fn(rows, cols, |i, j| self.coeff(i, j))
    }

    pub fn transpose(&self) -> Self {
        let me = self.clone();
        InfMatrix::from_rule(move |i, j| me.coeff(j, i))
    }

    pub fn map<D: Ring + 'static, F>(&self, f: F) -> InfMatrix<D>
    where
        F: Fn(&C) -> D + Send + Sync + 'static,
    {
        let me = self.clone();
        InfMatrix::from_rule(move |i, j| Ok(f(&me.coeff(i, j)?)))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (a, b) = (self.clone(), rhs.clone());
        InfMatrix::from_rule(move |i, j| Ok(a.coeff(i, j)?.add(&b.coeff(i, j)?)))
    }

    pub fn scale(&self, c: C) -> Self {
        let a = self.clone();
        InfMatrix::from_rule(move |i, j| Ok(a.coeff(i, j)?.mul(&c)))
    }

    pub fn identity() -> Self {
        InfMatrix::from_rule(|i, j| Ok(if i == j { C::one() } else { C::zero() }))
    }

    /// The shift `S_{i,j} = [i = j + 1]`, generating function `u/(1-uv)`.
    pub fn shift() -> Self {
        InfMatrix::from_rule(|i, j| Ok(if i == j + 1 { C::one() } else { C::zero() }))
    }
}

impl<C: ExactDiv + 'static> InfMatrix<C> {
    /// Entries from an unreduced quotient of `(u, v)`-polynomials.
    pub fn from_uvfrac(f: UvFrac<C>) -> Self {
        InfMatrix::from_series_fn(Arc::new(move |r, c| f.to_biseries(r, c)))
    }
}

impl InfMatrix<RatFun> {
    /// Entries are the `u^i v^j` coefficients of `f`.
    pub fn from_gf(f: RatFun) -> Self {
        InfMatrix::from_series_fn(Arc::new(move |r, c| BiSeries::from_ratfun(&f, r, c)))
    }
}

/// Entry rule `i -> c_i` from a function computing `c_0..c_{rows-1}` at
/// once, recomputing with geometric growth when a later entry is asked for.
pub(crate) fn memo_column<C, F>(f: F) -> impl Fn(usize) -> Result<C> + Send + Sync + 'static
where
    C: Clone + Send + 'static,
    F: Fn(usize) -> Result<Vec<C>> + Send + Sync + 'static,
{
    let cache: Mutex<Vec<C>> = Mutex::new(Vec::new());
    move |i| {
        let mut guard = cache.lock().expect("column cache");
        if i >= guard.len() {
            *guard = f(grow(guard.len(), i + 1))?;
        }
        Ok(guard[i].clone())
    }
}

fn grow(have: usize, want: usize) -> usize {
    if want > have {
        want.max(2 * have)
    } else {
        have
    }
}

/// Caller-declared lower bound on the valuation of entry `(i, j)` in the
/// grading variable: `floor(num * (i + j) / den)` or `floor(num * |i - j| / den)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Sum { num: usize, den: usize },
    Band { num: usize, den: usize },
}

impl Grading {
    pub const SUM: Grading = Grading::Sum { num: 1, den: 1 };
    pub const BAND: Grading = Grading::Band { num: 1, den: 1 };

    pub fn zero_slope(self) -> Grading {
        match self {
            Grading::Sum { den, .. } => Grading::Sum { num: 0, den },
            Grading::Band { den, .. } => Grading::Band { num: 0, den },
        }
    }

    pub fn bound(&self, i: usize, j: usize) -> usize {
        match *self {
            Grading::Sum { num, den } => num * (i + j) / den,
            Grading::Band { num, den } => num * i.abs_diff(j) / den,
        }
    }
}

fn checked_series(m: &InfMatrix<RatFun>, grading: Grading, gvar: &str, order: usize, i: usize, j: usize) -> Result<GradedSeries<RatFun>> {
    let s = GradedSeries::from_ratfun(&m.coeff(i, j)?, gvar, order)?;
    if let Some(v) = s.valuation() {
        if v < grading.bound(i, j) {
            return Err(Error::GradingViolation(format!(
                "entry ({i},{j}) has {gvar}-valuation {v} below declared {}",
                grading.bound(i, j)
            )));
        }
    }
    Ok(s)
}

/// `A B` to order `order` in `gvar`, entries returned as truncated series
/// in `gvar` (polynomials of degree at most `order`).
///
/// The inner index `k` runs only while the declared valuation bounds allow
/// a contribution below `order + 1`; entries violating their declared bound
/// are reported as [`Error::GradingViolation`].
pub fn graded_product(
    a: &InfMatrix<RatFun>,
    ga: Grading,
    b: &InfMatrix<RatFun>,
    gb: Grading,
    gvar: &str,
    order: usize,
) -> InfMatrix<RatFun> {
    let (a, b) = (a.clone(), b.clone());
    let gvar = gvar.to_string();
    let unbounded = matches!(ga, Grading::Sum { num: 0, .. } | Grading::Band { num: 0, .. })
        && matches!(gb, Grading::Sum { num: 0, .. } | Grading::Band { num: 0, .. });
    InfMatrix::from_rule(move |i, j| {
        if unbounded {
            return Err(Error::GradingViolation("zero-slope gradings do not bound the inner sum".into()));
        }
        let mut acc = GradedSeries::<RatFun>::zero(&gvar, order);
        let mut k = 0usize;
        loop {
            if ga.bound(i, k) + gb.bound(k, j) > order {
                // Past max(i, j) both bounds are non-decreasing in k.
                if k >= i && k >= j {
                    break;
                }
                k += 1;
                continue;
            }
            let x = checked_series(&a, ga, &gvar, order, i, k)?;
            let y = checked_series(&b, gb, &gvar, order, k, j)?;
            acc = acc.add(&x.mul(&y));
            k += 1;
        }
        Ok(acc.to_ratfun())
    })
}

/// The matrix `(gvar^{i+j} a_{i,j})`, which has [`Grading::SUM`].
pub fn epsilon_scale(m: &InfMatrix<RatFun>, gvar: &str) -> InfMatrix<RatFun> {
    let me = m.clone();
    let g = RatFun::var(gvar);
    InfMatrix::from_rule(move |i, j| Ok(me.coeff(i, j)?.mul(&g.powi((i + j) as i32)?)))
}

/// Truncated series of a rational function, as a polynomial in `gvar`.
pub fn truncate_in(f: &RatFun, gvar: &str, order: usize) -> Result<RatFun> {
    Ok(GradedSeries::from_ratfun(f, gvar, order)?.to_ratfun())
}

/// Entry-wise truncation of an infinite matrix of rational functions.
pub fn truncate_entries(m: &InfMatrix<RatFun>, gvar: &str, order: usize) -> InfMatrix<RatFun> {
    let me = m.clone();
    let gvar = gvar.to_string();
    InfMatrix::from_rule(move |i, j| truncate_in(&me.coeff(i, j)?, &gvar, order))
}

/// First `(i, j)` (row-major over `n x n`) where two matrices differ.
pub fn first_difference<C: Ring + 'static>(a: &InfMatrix<C>, b: &InfMatrix<C>, n: usize) -> Result<Option<(usize, usize)>> {
    let (ma, mb) = (a.truncate(n)?, b.truncate(n)?);
    for i in 0..n {
        for j in 0..n {
            if ma.get(i, j) != mb.get(i, j) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_ratfun;

    fn r(s: &str) -> RatFun {
        parse_ratfun(s).unwrap()
    }

    #[test]
    fn gf_coefficients() {
        let t = InfMatrix::from_gf(r("1/(1-u-v)"));
        assert_eq!(t.coeff(2, 2).unwrap(), RatFun::from_int(6));
        let s = InfMatrix::from_gf(r("u/(1-u*v)"));
        assert_eq!(s.coeff(3, 2).unwrap(), RatFun::one());
        assert!(s.coeff(2, 3).unwrap().is_zero());
        let id = InfMatrix::from_gf(r("1/(1-u*v)"));
        assert_eq!(id.truncate(3).unwrap(), Matrix::identity(3));
        assert_eq!(first_difference(&s, &InfMatrix::shift(), 8).unwrap(), None);
    }

    #[test]
    fn transpose_swaps_gf_variables() {
        let f = r("1/(1-2*u-v-3*u*v)");
        let g = r("1/(1-u-2*v-3*u*v)");
        let a = InfMatrix::from_gf(f).transpose();
        let b = InfMatrix::from_gf(g);
        assert_eq!(first_difference(&a, &b, 6).unwrap(), None);
    }

    #[test]
    fn patched_column() {
        let id = InfMatrix::<RatFun>::identity();
        let p = id.patch_column(2, |i| Ok(RatFun::from_int(i as i64 + 10)));
        let m = p.truncate(3).unwrap();
        assert_eq!(*m.get(0, 2), RatFun::from_int(10));
        assert_eq!(*m.get(2, 2), RatFun::from_int(12));
        assert_eq!(*m.get(1, 1), RatFun::one());
    }

    #[test]
    fn shift_times_transpose() {
        let s = epsilon_scale(&InfMatrix::from_gf(r("u/(1-u*v)")), "e");
        let st = s.transpose();
        let p = graded_product(&s, Grading::SUM, &st, Grading::SUM, "e", 20);
        let m = p.truncate(4).unwrap();
        let want = Matrix::from_fn(4, 4, |i, j| {
            if i == j && i > 0 {
                r(&format!("e^{}", 4 * i - 2))
            } else {
                RatFun::zero()
            }
        });
        assert_eq!(m, want);
        let flat = graded_product(&s, Grading::BAND.zero_slope(), &st, Grading::BAND.zero_slope(), "e", 1);
        assert!(matches!(flat.coeff(0, 0), Err(Error::GradingViolation(_))));
    }

    #[test]
    fn lorentzian_square_leading_entry() {
        let t = InfMatrix::from_gf(r("1/(1-g*a*(u+v)-g^2*(1-a^2)*u*v)"));
        let p = graded_product(&t, Grading::SUM, &t, Grading::SUM, "g", 3);
        assert_eq!(p.coeff(0, 0).unwrap(), r("1 + a^2*g^2"));
    }

    #[test]
    fn grading_violation_detected() {
        let bad = InfMatrix::from_rule(|_, _| Ok(RatFun::one()));
        let p = graded_product(&bad, Grading::SUM, &bad, Grading::SUM, "g", 2);
        assert!(matches!(p.coeff(1, 0), Err(Error::GradingViolation(_))));
    }
}
