//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines are always printed. The
//! process fails if any criterion outside `KNOWN_RED` fails, or if a
//! criterion in `KNOWN_RED` unexpectedly passes.

use std::collections::BTreeMap;
use std::time::Instant;

use asmdpp::asm::{
    enumerate_asm, g_matrix, homogeneous_bridge_check, ik_determinant, lambda_det_expansion, lambda_det_tsystem,
    refined_prefactor, sixv_bruteforce, z_asm_bruteforce, z_asm_refined_det,
};
use asmdpp::check::Check;
use asmdpp::dpp::{
    asm_dpp_sandwich_check, d_entry, enumerate_dpp, h_matrix, lgv_matrix, quadratic_relation_check, z_dpp_bruteforce,
    z_dpp_det, z_dpp_det_h, z_dpp_prime_det, z_dpp_refined_det, Variant,
};
use asmdpp::exactalg::{bindings, parse_mpoly, ratio};
use asmdpp::genfun::{determinant_rules_check, product_rules_check};
use asmdpp::lorentzian::{
    commute_family_check, commute_off_variety, commute_on_variety, ell_t_exp_check, entry_agreement, l_t_addition_check,
    lambda_series_check, orthonormality_check, t_st_addition_check, tau_addition_check, variety_intersection,
    vvt_factorization_check, LorentzParams,
};
use asmdpp::{Error, MPoly, Matrix, NuElem, RatFun, Rational, Result, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria expected to fail; see the notes printed under each.
const KNOWN_RED: &[usize] = &[9];

const SEED: u64 = 0x5eed_a5d0;

struct Outcome {
    pass: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { pass: true, notes: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.notes.push(format!("failed: {}", what.into()));
        }
    }

    fn checks(&mut self, checks: &[Check]) {
        for c in checks {
            if !c.holds {
                self.pass = false;
                if c.expected.len() + c.got.len() < 160 {
                    self.notes.push(format!("failed: {c}"));
                } else {
                    self.notes.push(format!("failed: {} (expressions too long to print)", c.name));
                }
            }
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn specialize(p: &MPoly, vals: &[(&str, i64)]) -> MPoly {
    let b = bindings(vals.iter().map(|&(v, c)| (v, RatFun::from_int(c))));
    RatFun::from_poly(p.clone()).substitute(&b).unwrap().as_poly().unwrap().clone()
}

fn z_asm_xy(n: usize) -> MPoly {
    specialize(&z_asm_bruteforce(n), &[("z", 1), ("w", 1)])
}

fn z_dpp_xy(n: u32) -> MPoly {
    specialize(&z_dpp_bruteforce(n), &[("z", 1), ("w", 1)])
}

fn rand_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = loop {
        let k: i64 = rng.gen_range(-9..=9);
        if k != 0 {
            break k;
        }
    };
    ratio(num, rng.gen_range(1..=9))
}

fn c1() -> Result<Outcome> {
    let mut o = Outcome::new();
    let asm_golden = parse_mpoly("1+z*y+z*x*y+y+z*y^2+z^2*y^2+z^2*y^3")?;
    let dpp_golden = parse_mpoly("1+y+z*y+z*x*y+z*y^2+z^2*y^2+z^2*y^3")?;
    let asm = specialize(&z_asm_bruteforce(3), &[("w", 1)]);
    let dpp = specialize(&z_dpp_bruteforce(3), &[("w", 1)]);
    o.require(asm.to_string() == asm_golden.to_string(), format!("Z_ASM(3) = {asm}"));
    o.require(dpp.to_string() == dpp_golden.to_string(), format!("Z_DPP(3) = {dpp}"));
    o.note(format!("Z_ASM(3)(x,y,z) = {asm}"));
    Ok(o)
}

fn c2() -> Result<Outcome> {
    let mut o = Outcome::new();
    let mut counts = Vec::new();
    for n in 1..=6usize {
        let (a, d) = (enumerate_asm(n).len(), enumerate_dpp(n as u32).len());
        o.require(a == d, format!("counts at n={n}: {a} ASMs, {d} DPPs"));
        o.require(z_asm_bruteforce(n) == z_dpp_bruteforce(n as u32), format!("Z_ASM = Z_DPP at n={n}"));
        counts.push(a.to_string());
    }
    o.note(format!("counts n=1..6: {}", counts.join(", ")));
    Ok(o)
}

fn c3() -> Result<Outcome> {
    let mut o = Outcome::new();
    let g = g_matrix();
    let nu = NuElem::nu();
    let one_minus_nu = NuElem::one().sub(&nu);
    for n in 1..=6 {
        let gt = g.truncate(n)?;
        let m = Matrix::from_fn(n, n, |i, j| {
            let e = nu.scale(gt.get(i, j));
            if i == j {
                e.add(&one_minus_nu)
            } else {
                e
            }
        });
        let d = m.det();
        o.require(d.is_nu_free(), format!("nu component vanishes at n={n}"));
        o.require(d.a0 == RatFun::from_poly(z_asm_xy(n)), format!("det = Z_ASM(x,y,1) at n={n}"));
    }
    Ok(o)
}

fn c4() -> Result<Outcome> {
    let mut o = Outcome::new();
    for n in 1..=7usize {
        let want = z_dpp_xy(n as u32);
        o.require(z_dpp_det(n) == want, format!("det(I + D) at n={n}"));
        o.require(z_dpp_det_h(n)? == RatFun::from_poly(want.clone()), format!("det(I + H^[0,n-1]) at n={n}"));
        let literal = Matrix::from_fn(n, n, d_entry);
        let literal = Matrix::identity(n).add(&literal).det();
        if n <= 3 {
            o.note(format!("literal n x n reading det(I + D^[0,{}]) at n={n}: {}", n - 1, literal == want));
        }
    }
    let h = h_matrix();
    for i in 0..=8 {
        for j in 0..=8 {
            o.require(h.coeff(i + 1, j + 1)? == RatFun::from_poly(d_entry(i, j)), format!("H[{}][{}] = D[{i}][{j}]", i + 1, j + 1));
        }
    }
    o.note(format!("D for order n is (n-1) x (n-1); e.g. order 3 uses {} x {}", lgv_matrix(3).rows(), lgv_matrix(3).cols()));
    Ok(o)
}

fn c5() -> Result<Outcome> {
    let mut o = Outcome::new();
    let pre = refined_prefactor();
    for n in 1..=5usize {
        let z = RatFun::from_poly(specialize(&z_asm_bruteforce(n), &[("w", 1)]));
        let want = NuElem::scalar(z).mul(&pre);
        o.require(z_asm_refined_det(n)? == want, format!("ASM refined det at n={n}"));
        o.require(z_dpp_refined_det(n)? == want, format!("DPP refined det at n={n}"));
    }
    for n in 1..=4usize {
        let z = specialize(&z_dpp_bruteforce(n as u32), &[("w", 1)]);
        o.require(z_dpp_prime_det(n) == z, format!("det(I + D') at n={n}"));
    }
    Ok(o)
}

fn c6() -> Result<Outcome> {
    let mut o = Outcome::new();
    for variant in [Variant::Plain, Variant::Refined] {
        for n in 1..=6 {
            let r = asm_dpp_sandwich_check(n, variant)?;
            o.require(r.gf_identity, format!("{variant:?} generating-function identity at n={n}"));
            o.require(r.entrywise, format!("{variant:?} entry-wise sandwich at n={n}"));
            o.require(r.det_asm == r.det_dpp, format!("{variant:?} determinants at n={n}"));
        }
    }
    Ok(o)
}

fn c7() -> Result<Outcome> {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut rejected = 0;
    for n in 1..=4usize {
        let mut done = 0;
        while done < 20 {
            let q = rand_rational(&mut rng);
            let zeta: Vec<Rational> = (0..n).map(|_| rand_rational(&mut rng)).collect();
            let omega: Vec<Rational> = (0..n).map(|_| rand_rational(&mut rng)).collect();
            match (sixv_bruteforce(&q, &zeta, &omega), ik_determinant(&q, &zeta, &omega)) {
                (Ok(bf), Ok(ik)) => {
                    o.require(bf == ik, format!("IK at n={n}, q={q}, zeta={zeta:?}, omega={omega:?}"));
                    done += 1;
                }
                (Err(Error::DegenerateSpectralParameters(_)), _) | (_, Err(Error::DegenerateSpectralParameters(_))) => {
                    rejected += 1
                }
                (Err(e), _) | (_, Err(e)) => return Err(e),
            }
        }
        let z = z_asm_xy(n);
        let mut done = 0;
        while done < 5 {
            let (q, r) = (rand_rational(&mut rng), rand_rational(&mut rng));
            match homogeneous_bridge_check(&q, &r, n, &z) {
                Ok(ok) => {
                    o.require(ok, format!("homogeneous bridge at n={n}, q={q}, r={r}"));
                    done += 1;
                }
                Err(Error::DegenerateSpectralParameters(_)) => rejected += 1,
                Err(e) => return Err(e),
            }
        }
    }
    o.note(format!("seed {SEED:#x}; {rejected} degenerate samples resampled"));
    Ok(o)
}

fn c8() -> Result<Outcome> {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let lam = MPoly::var("lambda");
    let mut rejected = 0;
    for n in 2..=5usize {
        let mut done = 0;
        while done < 20 {
            let m = Matrix::from_fn(n, n, |_, _| MPoly::from_int(rng.gen_range(-5..=5)));
            match lambda_det_tsystem(&m, &lam) {
                Ok(t) => {
                    o.require(t == lambda_det_expansion(&m, &lam)?, format!("T-system = expansion, n={n}"));
                    let mr = m.map(|e| e.constant_value().unwrap());
                    let minus = Rational::from_integer((-1).into());
                    o.require(lambda_det_expansion(&mr, &minus)? == mr.det(), format!("lambda = -1 gives det, n={n}"));
                    done += 1;
                }
                Err(Error::ZeroDivision { .. }) => rejected += 1,
                Err(e) => return Err(e),
            }
        }
    }
    let ones = Matrix::from_fn(3, 3, |_, _| MPoly::one());
    let want = parse_mpoly("(1+lambda)^3")?;
    o.require(lambda_det_tsystem(&ones, &lam)? == want, "all-ones 3 x 3 gives (1+lambda)^3");
    o.note(format!("{rejected} samples with a vanishing T-system divisor resampled"));
    Ok(o)
}

fn c9() -> Result<Outcome> {
    let mut o = Outcome::new();
    o.checks(&product_rules_check(8, 14)?);
    let dets = determinant_rules_check(8)?;
    o.checks(&dets);
    let corrected = dets.iter().filter(|c| c.name.contains("(k+1)^2")).all(|c| c.holds);
    o.note(format!("UL truncation with denominator (1-bb2)^((k+1)^2), k <= 7: {corrected}"));
    Ok(o)
}

fn c10() -> Result<Outcome> {
    let mut o = Outcome::new();
    o.checks(&entry_agreement(&LorentzParams::symbolic(), 11)?);
    for k in 0..=8 {
        o.checks(&vvt_factorization_check(&LorentzParams::symbolic(), k)?);
    }
    let (a, kappa) = (RatFun::constant(ratio(2, 3)), RatFun::constant(ratio(3, 2)));
    let on = commute_on_variety(&a, &kappa, 12)?;
    o.require(on.commutes(), format!("on-variety commutator: {on:?}"));
    let off = commute_off_variety(&a, &kappa, 12)?;
    o.require(!off.commutes(), "off-variety commutator is nonzero");
    o.note(format!("off-variety first failure (order, i, j): {:?}", off.first_failure));
    o.checks(&commute_family_check(&RatFun::one(), &RatFun::from_int(3), 10, 6)?);
    o.checks(&lambda_series_check(8)?);
    o.checks(&orthonormality_check(4, 10)?);
    o.checks(&ell_t_exp_check(4, 6)?);
    o.checks(&[t_st_addition_check()?]);
    o.checks(&l_t_addition_check()?);
    for c in tau_addition_check()? {
        if c.name.contains("as printed") {
            o.note(format!("{}: {}", c.name, c.holds));
        } else {
            o.checks(&[c]);
        }
    }
    for (p, q) in [(ratio(2, 1), ratio(2, 1)), (ratio(3, 1), ratio(5, 4)), (ratio(7, 2), ratio(9, 5))] {
        o.checks(&variety_intersection(&p, &q)?.certificates());
    }
    Ok(o)
}

fn c11() -> Result<Outcome> {
    let mut o = Outcome::new();
    let zs: BTreeMap<usize, MPoly> = (1..=5).map(|n| (n, z_asm_bruteforce(n))).collect();
    for n in 2..=5 {
        o.require(quadratic_relation_check(&zs[&n], &zs[&(n - 1)])?, format!("quadratic relation at n={n}"));
    }
    Ok(o)
}

type Criterion = (usize, &'static str, fn() -> Result<Outcome>);

const CRITERIA: &[Criterion] = &[
    (1, "golden Z_ASM(3), Z_DPP(3)", c1),
    (2, "Z_ASM = Z_DPP in x, y, z, w for n = 1..6", c2),
    (3, "det((1-nu)I + nu G) = Z_ASM(x,y,1), n = 1..6", c3),
    (4, "det(I + D) = Z_DPP(x,y,1), n = 1..7; H reproduces D", c4),
    (5, "refined determinants", c5),
    (6, "sandwich identities, n = 1..6", c6),
    (7, "Izergin-Korepin vs six-vertex brute force", c7),
    (8, "lambda-determinant", c8),
    (9, "structured-family algebra and determinants", c9),
    (10, "Lorentzian suite", c10),
    (11, "quadratic relation, n = 2..5", c11),
];

fn main() {
    // `cargo test --test acceptance -- 3 10` runs a subset.
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let selected: Vec<&Criterion> = CRITERIA.iter().filter(|c| only.is_empty() || only.contains(&c.0)).collect();
    let start = Instant::now();
    let results: Vec<(Result<Outcome>, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&&(k, _, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let r = f();
                    let secs = t.elapsed().as_secs_f64();
                    eprintln!("criterion {k} finished in {secs:.1}s");
                    (r, secs)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    let mut unexpected = Vec::new();
    for (&&(k, desc, _), (res, secs)) in selected.iter().zip(results) {
        let (pass, notes) = match res {
            Ok(o) => (o.pass, o.notes),
            Err(e) => (false, vec![format!("error: {e}")]),
        };
        let known = KNOWN_RED.contains(&k);
        let tag = match (pass, known) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
            (true, true) => "PASS (expected FAIL)",
        };
        println!("criterion {k:>2}: {tag}  {desc}  [{secs:.1}s]");
        for n in notes {
            println!("    {n}");
        }
        if pass == known {
            unexpected.push(k);
        }
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if !unexpected.is_empty() {
        println!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
