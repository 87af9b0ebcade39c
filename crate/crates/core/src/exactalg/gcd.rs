//! Multivariate polynomial gcd over the rationals by recursive primitive
//! pseudo-remainder sequences.

use super::mpoly::MPoly;

/// Monic (lexicographic leading coefficient 1) greatest common divisor.
///
/// Laurent inputs are accepted; the monomial part of the result is the
/// componentwise minimum of the inputs' minimum exponents.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (a, b) = MPoly::align(a, b);
    let ma = a.min_exponents();
    let mb = b.min_exponents();
    let mono: Vec<i32> = ma.iter().zip(&mb).map(|(x, y)| (*x).min(*y)).collect();
    let pa = a.shift(&ma.iter().map(|x| -x).collect::<Vec<_>>());
    let pb = b.shift(&mb.iter().map(|x| -x).collect::<Vec<_>>());
    let g = gcd_poly(&pa, &pb);
    MPoly::align(&g, &pa).0.shift(&mono).monic()
}

/// Gcd of polynomials with no monomial factor in common structure assumed;
/// exponents are non-negative.
fn gcd_poly(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    if a.nterms() >= b.nterms() {
        if divides(b, a) {
            return b.monic();
        }
    } else if divides(a, b) {
        return a.monic();
    }
    let nv = a.vars().len();
    let k = match (0..nv).find(|&k| a.degree_at(k) > 0 || b.degree_at(k) > 0) {
        Some(k) => k,
        None => return MPoly::one(),
    };
    if a.degree_at(k) == 0 {
        return gcd_poly(a, &content(b, k));
    }
    if b.degree_at(k) == 0 {
        return gcd_poly(&content(a, k), b);
    }
    let ca = content(a, k);
    let cb = content(b, k);
    let c = gcd_poly(&ca, &cb);
    let mut p = a.exact_div(&ca).expect("content divides");
    let mut q = b.exact_div(&cb).expect("content divides");
    if p.degree_at(k) < q.degree_at(k) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = prem(&p, &q, k);
        if r.is_zero() {
            break;
        }
        if r.degree_at(k) == 0 {
            return c.monic();
        }
        p = q;
        q = primitive(&r, k);
    }
    c.mul(&primitive(&q, k)).monic()
}

/// Divisibility among ordinary polynomials. `exact_div` works in the
/// Laurent ring, where every monomial is a unit.
fn divides(d: &MPoly, p: &MPoly) -> bool {
    p.exact_div(d).is_ok_and(|q| q.min_exponents().iter().all(|&e| e >= 0))
}

/// Gcd of the coefficients with respect to the variable at index `k`.
fn content(p: &MPoly, k: usize) -> MPoly {
    let mut g = MPoly::zero();
    for (_, c) in p.split_at(k) {
        g = if g.is_zero() { c.monic() } else { gcd_poly(&g, &c) };
        if g.is_constant() {
            return MPoly::one();
        }
    }
    g
}

fn primitive(p: &MPoly, k: usize) -> MPoly {
    let c = content(p, k);
    p.exact_div(&c).expect("content divides").monic()
}

/// Sparse pseudo-remainder of `p` by `q` in the variable at index `k`.
fn prem(p: &MPoly, q: &MPoly, k: usize) -> MPoly {
    let dq = q.degree_at(k);
    let split = q.split_at(k);
    let lq = split.get(&dq).cloned().expect("leading coefficient");
    let mut r = p.clone();
    while !r.is_zero() && r.degree_at(k) >= dq {
        let dr = r.degree_at(k);
        let lr = r.split_at(k).remove(&dr).expect("leading coefficient");
        let mut sh = vec![0; r.vars().len()];
        sh[k] = dr - dq;
        r = lq.mul(&r).sub(&lr.mul(&q.shift(&sh)));
        r = r.monic();
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> MPoly {
        MPoly::var(n)
    }

    #[test]
    fn gcd_of_products() {
        let (x, y, z) = (v("x"), v("y"), v("z"));
        let f = x.add(&y).add(&MPoly::one());
        let g1 = x.mul(&z).sub(&y.pow(2));
        let g2 = z.add(&x.pow(2));
        let a = f.mul(&g1).mul(&x);
        let b = f.mul(&g2).mul(&x.pow(2));
        let g = gcd(&a, &b);
        assert_eq!(g, f.mul(&x).monic());
    }

    #[test]
    fn coprime_and_trivial() {
        let (x, y) = (v("x"), v("y"));
        assert!(gcd(&x.add(&y), &x.sub(&y)).is_one());
        assert_eq!(gcd(&MPoly::zero(), &x.scale(&crate::exactalg::ring::rat(3))), x);
        assert!(gcd(&x, &MPoly::from_int(5)).is_one());
    }

    #[test]
    fn monomials_are_not_common_factors() {
        let a = MPoly::var("c").sub(&v("e").pow(2).mul(&v("b")));
        let b = MPoly::one().sub(&v("e").pow(2).mul(&v("a")));
        assert!(gcd(&a, &b).is_one());
        assert!(gcd(&v("c"), &v("e").pow(2)).is_one());
    }

    #[test]
    fn gcd_with_laurent_inputs() {
        let x = v("x");
        let a = MPoly::monomial("x", -2).mul(&x.add(&MPoly::one()));
        let b = MPoly::monomial("x", -1).mul(&x.add(&MPoly::one()));
        assert_eq!(gcd(&a, &b), MPoly::monomial("x", -2).mul(&x.add(&MPoly::one())));
    }
}
