use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use super::ring::{format_rational, ExactDiv, Rational, Ring};
use crate::error::{Error, Result};

pub type Exps = Vec<i32>;

/// Sparse multivariate Laurent polynomial over the rationals.
///
/// Variables are name-keyed and kept sorted; binary operations take the
/// union of both variable lists. Equality is semantic: two polynomials that
/// differ only in unused variables compare equal.
#[derive(Clone)]
pub struct MPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Exps, Rational>,
}

fn empty_vars() -> Arc<[String]> {
    Arc::from(Vec::<String>::new())
}

fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { vars: empty_vars(), terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MPoly { vars: empty_vars(), terms }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(<Rational as Ring>::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(name, 1)
    }

    /// `name^e`, with `e` possibly negative.
    pub fn monomial(name: &str, e: i32) -> Self {
        if e == 0 {
            return Self::one();
        }
        let mut terms = BTreeMap::new();
        terms.insert(vec![e], Rational::one());
        MPoly { vars: Arc::from(vec![name.to_string()]), terms }
    }

    /// Build from explicit variables (any order, no duplicates) and terms.
    pub fn from_terms<I>(vars: &[&str], terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exps, Rational)>,
    {
        let mut order: Vec<usize> = (0..vars.len()).collect();
        order.sort_by(|&a, &b| vars[a].cmp(vars[b]));
        for w in order.windows(2) {
            if vars[w[0]] == vars[w[1]] {
                return Err(Error::Parse(format!("duplicate variable {}", vars[w[0]])));
            }
        }
        let sorted: Vec<String> = order.iter().map(|&i| vars[i].to_string()).collect();
        let mut out = MPoly { vars: Arc::from(sorted), terms: BTreeMap::new() };
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::Parse("exponent vector length mismatch".into()));
            }
            let e2: Exps = order.iter().map(|&i| e[i]).collect();
            out.add_term(e2, c);
        }
        Ok(out)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rational)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    fn add_term(&mut self, e: Exps, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    /// Re-express over a superset of variables.
    fn remap(&self, vars: &Arc<[String]>) -> MPoly {
        if Arc::ptr_eq(&self.vars, vars) || *self.vars == **vars {
            return MPoly { vars: vars.clone(), terms: self.terms.clone() };
        }
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.binary_search(v).expect("superset"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0; vars.len()];
                for (k, &p) in pos.iter().enumerate() {
                    ne[p] = e[k];
                }
                (ne, c.clone())
            })
            .collect();
        MPoly { vars: vars.clone(), terms }
    }

    /// Bring two polynomials onto a shared variable list.
    pub(crate) fn align(a: &MPoly, b: &MPoly) -> (MPoly, MPoly) {
        if *a.vars == *b.vars {
            let v = a.vars.clone();
            return (a.clone(), MPoly { vars: v, terms: b.terms.clone() });
        }
        let vars: Arc<[String]> = Arc::from(union_vars(&a.vars, &b.vars));
        (a.remap(&vars), b.remap(&vars))
    }

    fn shared_vars(a: &MPoly, b: &MPoly) -> Option<Arc<[String]>> {
        if *a.vars == *b.vars {
            Some(a.vars.clone())
        } else {
            None
        }
    }

    /// Drop variables that occur with exponent zero in every term.
    pub fn trim(&self) -> MPoly {
        let keep: Vec<usize> = (0..self.vars.len())
            .filter(|&k| self.terms.keys().any(|e| e[k] != 0))
            .collect();
        if keep.len() == self.vars.len() {
            return self.clone();
        }
        let vars: Vec<String> = keep.iter().map(|&k| self.vars[k].clone()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (keep.iter().map(|&k| e[k]).collect(), c.clone()))
            .collect();
        MPoly { vars: Arc::from(vars), terms }
    }

    pub fn add(&self, rhs: &MPoly) -> MPoly {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let (mut a, b) = match Self::shared_vars(self, rhs) {
            Some(_) => (self.clone(), rhs.clone()),
            None => Self::align(self, rhs),
        };
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &MPoly) -> MPoly {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        let (a, b) = Self::align(self, rhs);
        let mut out = MPoly { vars: a.vars.clone(), terms: BTreeMap::new() };
        let mut e = vec![0; a.vars.len()];
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                for k in 0..e.len() {
                    e[k] = ea[k] + eb[k];
                }
                out.add_term(e.clone(), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        <MPoly as Ring>::pow(self, e)
    }

    /// Multiply by the monomial with exponent vector `shift` (over `self.vars`).
    pub(crate) fn shift(&self, shift: &[i32]) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponent over all terms (zeros for the zero polynomial).
    pub(crate) fn min_exponents(&self) -> Exps {
        let mut m: Option<Exps> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(mut m) => {
                    for (a, b) in m.iter_mut().zip(e) {
                        *a = (*a).min(*b);
                    }
                    m
                }
            });
        }
        m.unwrap_or_else(|| vec![0; self.vars.len()])
    }

    /// Leading term in lexicographic exponent order.
    pub fn leading(&self) -> Option<(&Exps, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, var: &str) -> Option<i32> {
        let k = self.var_index(var);
        self.terms.keys().map(|e| k.map_or(0, |k| e[k])).max()
    }

    pub fn min_degree_in(&self, var: &str) -> Option<i32> {
        let k = self.var_index(var);
        self.terms.keys().map(|e| k.map_or(0, |k| e[k])).min()
    }

    pub(crate) fn degree_at(&self, k: usize) -> i32 {
        self.terms.keys().map(|e| e[k]).max().unwrap_or(i32::MIN)
    }

    /// Split by powers of the variable at index `k`; coefficients keep the
    /// same variable list with exponent zero at `k`.
    pub(crate) fn split_at(&self, k: usize) -> BTreeMap<i32, MPoly> {
        let mut out: BTreeMap<i32, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[k] = 0;
            out.entry(e[k])
                .or_insert_with(|| MPoly { vars: self.vars.clone(), terms: BTreeMap::new() })
                .terms
                .insert(e2, c.clone());
        }
        out
    }

    /// Coefficients by powers of `var`, each free of `var`.
    pub fn coefficients_in(&self, var: &str) -> BTreeMap<i32, MPoly> {
        match self.var_index(var) {
            None => {
                let mut m = BTreeMap::new();
                if !self.is_zero() {
                    m.insert(0, self.clone());
                }
                m
            }
            Some(k) => self.split_at(k).into_iter().map(|(d, p)| (d, p.trim())).collect(),
        }
    }

    pub fn coeff_in(&self, var: &str, d: i32) -> MPoly {
        self.coefficients_in(var).remove(&d).unwrap_or_else(MPoly::zero)
    }

    /// Rational content (gcd-free: the leading coefficient) used for numeric normalization.
    pub fn leading_coeff(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    /// Scale so the lexicographically leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Exact quotient; fails if `rhs` does not divide `self` in the Laurent ring.
    pub fn exact_div(&self, rhs: &MPoly) -> Result<MPoly> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(MPoly::zero());
        }
        if let Some(c) = rhs.constant_value() {
            return Ok(self.scale(&c.recip()));
        }
        let (a, b) = Self::align(self, rhs);
        // Clear monomial content of the divisor so it is a polynomial with a
        // nonzero part free of every variable's minimum.
        let mb = b.min_exponents();
        let neg: Vec<i32> = mb.iter().map(|x| -x).collect();
        let b = b.shift(&neg);
        let a = a.shift(&neg);
        let ma = a.min_exponents();
        let negma: Vec<i32> = ma.iter().map(|x| -x).collect();
        let mut r = a.shift(&negma);
        let (lb_e, lb_c) = {
            let (e, c) = b.leading().expect("nonzero");
            (e.clone(), c.clone())
        };
        let mut q = MPoly { vars: r.vars.clone(), terms: BTreeMap::new() };
        let inexact = || Error::InexactDivision(format!("({self}) / ({rhs})"));
        while let Some((re, rc)) = r.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Exps = re.iter().zip(&lb_e).map(|(x, y)| x - y).collect();
            if qe.iter().any(|&x| x < 0) {
                return Err(inexact());
            }
            let qc = rc / &lb_c;
            let mut t = MPoly { vars: r.vars.clone(), terms: BTreeMap::new() };
            t.terms.insert(qe.clone(), qc.clone());
            r = r.sub(&b.mul(&t));
            q.add_term(qe, qc);
        }
        Ok(q.shift(&ma))
    }

    /// Substitute rationals for every variable.
    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        let vals: Vec<&Rational> = self
            .vars
            .iter()
            .map(|v| point.get(v).ok_or_else(|| Error::InvalidObject(format!("unbound variable {v}"))))
            .collect::<Result<_>>()?;
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if vals[k].is_zero() && x < 0 {
                    return Err(Error::PoleHit(format!("{} = 0", self.vars[k])));
                }
                let p = num_traits::pow(vals[k].clone(), x.unsigned_abs() as usize);
                t = if x > 0 { t * p } else { t / p };
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Rename variables; the map must be injective on the used variables.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> MPoly {
        let names: Vec<String> = self.vars.iter().map(|v| map.get(v).cloned().unwrap_or_else(|| v.clone())).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let terms: Vec<(Exps, Rational)> = self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        MPoly::from_terms(&refs, terms).expect("injective rename")
    }

    /// Terms in canonical order over the trimmed variable list.
    pub fn canonical_terms(&self) -> (Vec<String>, Vec<(Exps, Rational)>) {
        let t = self.trim();
        let terms = t.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        (t.vars.to_vec(), terms)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (vars, terms) = self.canonical_terms();
        serde_json::json!({
            "vars": vars,
            "terms": terms.iter().map(|(e, c)| serde_json::json!({
                "coeff": format_rational(c),
                "exps": e,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<MPoly> {
        let bad = |m: &str| Error::Parse(format!("polynomial json: {m}"));
        let vars: Vec<String> = v
            .get("vars")
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad("missing vars"))?
            .iter()
            .map(|s| s.as_str().map(str::to_string).ok_or_else(|| bad("var not a string")))
            .collect::<Result<_>>()?;
        let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
        let mut terms = Vec::new();
        for t in v.get("terms").and_then(|x| x.as_array()).ok_or_else(|| bad("missing terms"))? {
            let c = t.get("coeff").ok_or_else(|| bad("missing coeff"))?;
            let c = match c {
                serde_json::Value::String(s) => super::ring::parse_rational(s)?,
                serde_json::Value::Number(n) => super::ring::parse_rational(&n.to_string())?,
                _ => return Err(bad("coeff")),
            };
            let e: Exps = t
                .get("exps")
                .and_then(|x| x.as_array())
                .ok_or_else(|| bad("missing exps"))?
                .iter()
                .map(|x| x.as_i64().map(|x| x as i32).ok_or_else(|| bad("exponent")))
                .collect::<Result<_>>()?;
            terms.push((e, c));
        }
        MPoly::from_terms(&refs, terms)
    }
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        if *self.vars == *other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = (self.trim(), other.trim());
        a.vars == b.vars && a.terms == b.terms
    }
}

impl Eq for MPoly {}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl fmt::Display for MPoly {
    /// Terms in ascending lexicographic exponent order, e.g. `1 + y - 3/2*x^2*y^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (vars, terms) = self.canonical_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut parts: Vec<String> = Vec::new();
            let mono = e.iter().any(|&x| x != 0);
            if !a.is_one() || !mono {
                parts.push(format_rational(&a));
            }
            for (k, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => parts.push(vars[k].clone()),
                    _ => parts.push(format!("{}^{}", vars[k], x)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Ring for MPoly {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn one() -> Self {
        MPoly::one()
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn is_one(&self) -> bool {
        MPoly::is_one(self)
    }
    fn from_int(n: i64) -> Self {
        MPoly::from_int(n)
    }
    fn add(&self, rhs: &Self) -> Self {
        MPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        MPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        MPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        MPoly::neg(self)
    }
}

impl ExactDiv for MPoly {
    fn exact_div(&self, rhs: &Self) -> Result<Self> {
        MPoly::exact_div(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ring::{rat, ratio};

    fn x() -> MPoly {
        MPoly::var("x")
    }
    fn y() -> MPoly {
        MPoly::var("y")
    }

    #[test]
    fn difference_of_squares() {
        let p = x().add(&y()).mul(&x().sub(&y()));
        assert_eq!(p, x().pow(2).sub(&y().pow(2)));
        assert_eq!(p.to_string(), "-y^2 + x^2");
    }

    #[test]
    fn display_orders_terms_lexicographically() {
        let p = MPoly::one().add(&y()).add(&x().mul(&y()).scale(&ratio(-3, 2)));
        assert_eq!(p.to_string(), "1 + y - 3/2*x*y");
        assert_eq!(MPoly::monomial("x", -2).to_string(), "x^-2");
        assert_eq!(MPoly::zero().to_string(), "0");
    }

    #[test]
    fn semantic_equality_ignores_unused_vars() {
        let a = x().add(&y()).sub(&y());
        assert_eq!(a, x());
        assert_eq!(a.trim().vars(), &["x".to_string()]);
    }

    #[test]
    fn exact_division() {
        let p = x().pow(3).sub(&y().pow(3));
        let q = p.exact_div(&x().sub(&y())).unwrap();
        assert_eq!(q, x().pow(2).add(&x().mul(&y())).add(&y().pow(2)));
        assert!(matches!(x().add(&MPoly::one()).exact_div(&y().add(&MPoly::one())), Err(Error::InexactDivision(_))));
        assert_eq!(x().exact_div(&y()).unwrap().to_string(), "x*y^-1");
        assert!(matches!(x().exact_div(&MPoly::zero()), Err(Error::DivisionByZero)));
        let l = MPoly::monomial("x", -1).mul(&x().add(&y()));
        assert_eq!(l.exact_div(&x().add(&y())).unwrap(), MPoly::monomial("x", -1));
    }

    #[test]
    fn json_round_trip() {
        let p = x().pow(2).scale(&ratio(7, 3)).sub(&MPoly::monomial("z", -1)).add(&MPoly::from_int(4));
        let j = p.to_json();
        assert_eq!(MPoly::from_json(&j).unwrap(), p);
        assert_eq!(j["vars"], serde_json::json!(["x", "z"]));
        assert_eq!(j["terms"][0]["exps"], serde_json::json!([0, -1]));
    }

    #[test]
    fn eval_and_poles() {
        let p = x().mul(&y()).add(&MPoly::monomial("x", -1));
        let mut pt = BTreeMap::new();
        pt.insert("x".to_string(), rat(2));
        pt.insert("y".to_string(), rat(3));
        assert_eq!(p.eval(&pt).unwrap(), ratio(13, 2));
        pt.insert("x".to_string(), rat(0));
        assert!(matches!(p.eval(&pt), Err(Error::PoleHit(_))));
    }
}
