//! Seeded property suites and random system generators.

use crate::bezoutian::{
    bezoutian_form, euler_number_ph, local_form_from_global, simple_zero_index, BezoutianError, PolynomialSystem,
};
use crate::charnum::{complex_euler_number, complex_euler_number_pieri, real_witt_euler_number};
use crate::counts::{count_d_planes, lies_in_minus_one_span, CountError, PlaneCountQuery};
use crate::field::{FieldDescriptor, Scalar};
use crate::gw::{complex_gw_class, homology_gw_class, random_symmetric_complex, trace_form, GwClass};
use crate::matrix::Matrix;
use crate::oracle::{eigen_signed_count, real_signed_count, OracleError};
use crate::poly::{Monomial, PolyRing, Polynomial, UniPoly};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::sync::Arc;

pub const SUITES: &[&str] = &[
    "ekl",
    "local-global",
    "bezoutian-core",
    "cross-pillar",
    "complexes",
    "trace",
    "paper-numbers",
];

/// Largest Bézout number produced by the random generators.
pub const MAX_BEZOUT: u32 = 24;

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub name: String,
    pub passed: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> SuiteReport {
        SuiteReport { name: name.to_string(), ..Default::default() }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.passed > 0
    }

    fn check(&mut self, cond: bool, what: impl FnOnce() -> String) {
        if cond {
            self.passed += 1;
        } else {
            self.failures.push(what());
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} passed, {} failed, {} skipped",
            if self.ok() { "PASS" } else { "FAIL" },
            self.name,
            self.passed,
            self.failures.len(),
            self.skipped
        )?;
        for msg in self.failures.iter().take(5) {
            write!(f, "\n  {msg}")?;
        }
        Ok(())
    }
}

pub fn run_suite(name: &str, seed: u64) -> Option<SuiteReport> {
    Some(match name {
        "ekl" => verify_ekl(seed, 100),
        "local-global" => verify_local_global(seed, 50),
        "bezoutian-core" => verify_bezoutian_core(seed, 200),
        "cross-pillar" => verify_cross_pillar(seed),
        "complexes" => verify_complexes(seed, 50),
        "trace" => verify_trace(),
        "paper-numbers" => verify_paper_numbers(),
        _ => return None,
    })
}

fn ring(field: FieldDescriptor, n: usize) -> Arc<PolyRing> {
    let names = ["x", "y", "z"];
    if n <= names.len() {
        PolyRing::new(field, &names[..n]).expect("distinct names")
    } else {
        PolyRing::with_n_vars(field, n)
    }
}

fn small_nonzero<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        for a in 0..=left {
            cur[i] = a;
            rec(i + 1, left - a, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut vec![0; n], &mut out);
    out
}

fn random_degrees<R: Rng>(rng: &mut R, n: usize, max_deg: u32) -> Vec<u32> {
    loop {
        let d: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=max_deg)).collect();
        if d.iter().product::<u32>() <= MAX_BEZOUT {
            return d;
        }
    }
}

/// A system whose `i`-th equation has top-degree part dominated by
/// `x_i^{d_i}`, so the quotient has dimension `∏ d_i` generically.
pub fn random_bezout_system<R: Rng>(rng: &mut R, field: FieldDescriptor, n: usize, max_deg: u32) -> PolynomialSystem {
    let r = ring(field, n);
    let degrees = random_degrees(rng, n, max_deg);
    loop {
        let mut eqs = Vec::with_capacity(n);
        for (i, &d) in degrees.iter().enumerate() {
            let mut exps = vec![0; n];
            exps[i] = d;
            let mut f = Polynomial::monomial(&r, Monomial::from_exponents(exps), field.from_i64(small_nonzero(rng, 5)));
            f.add_term(Monomial::one(n), field.from_i64(small_nonzero(rng, 9)));
            let lower = monomials_up_to(n, d - 1);
            for _ in 0..rng.gen_range(1..=4) {
                let m = lower.choose(rng).expect("constant monomial").clone();
                f.add_term(m, field.from_i64(rng.gen_range(-9..=9)));
            }
            if n > 1 && d > 1 && rng.gen_bool(0.3) {
                // a mixed top-degree term
                let top: Vec<Monomial> = monomials_up_to(n, d)
                    .into_iter()
                    .filter(|m| m.degree() == d as u64 && m.exponents()[i] < d && m.exponents()[i] > 0)
                    .collect();
                if let Some(m) = top.choose(rng) {
                    f.add_term(m.clone(), field.from_i64(rng.gen_range(-2..=2)));
                }
            }
            eqs.push(f);
        }
        let Ok(sys) = PolynomialSystem::new(eqs) else { continue };
        if sys.quotient_algebra().is_ok() {
            return sys;
        }
    }
}

/// A dense system with the given degrees: every monomial up to `d_i`.
pub fn random_dense_system<R: Rng>(rng: &mut R, field: FieldDescriptor, degrees: &[u32]) -> PolynomialSystem {
    let n = degrees.len();
    let r = ring(field, n);
    loop {
        let eqs: Vec<Polynomial> = degrees
            .iter()
            .map(|&d| {
                Polynomial::from_terms(
                    &r,
                    monomials_up_to(n, d)
                        .into_iter()
                        .map(|m| (m, field.from_i64(rng.gen_range(-9..=9))))
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        if eqs.iter().zip(degrees).any(|(f, &d)| f.total_degree() != Some(d as u64)) {
            continue;
        }
        let Ok(sys) = PolynomialSystem::new(eqs) else { continue };
        let bezout: u32 = degrees.iter().product();
        if sys.quotient_algebra().is_ok_and(|a| a.dim() == bezout as usize) {
            return sys;
        }
    }
}

/// A system with known rational zeros, possibly with multiplicity.
pub struct PlantedSystem {
    pub system: PolynomialSystem,
    /// Distinct zeros.
    pub zeros: Vec<Vec<Scalar>>,
    /// Degrees of the unmixed factors; the quotient has dimension `∏ d_i`.
    pub degrees: Vec<u32>,
}

fn unimodular<R: Rng>(rng: &mut R, field: FieldDescriptor, n: usize) -> Matrix {
    let mut m = Matrix::identity(field, n);
    for _ in 0..2 * n {
        if n < 2 {
            break;
        }
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = field.from_i64(rng.gen_range(-2..=2));
        let mut e = Matrix::identity(field, n);
        e[(i, j)] = c;
        m = m.mul(&e);
    }
    m
}

/// `g_i = ∏_j (x_i - a_ij)` pulled back along an affine unimodular change of
/// coordinates and mixed by an invertible matrix.
pub fn random_planted_system<R: Rng>(rng: &mut R, n: usize, max_deg: u32) -> PlantedSystem {
    let field = FieldDescriptor::rationals();
    let r = ring(field, n);
    let degrees = random_degrees(rng, n, max_deg);
    let roots: Vec<Vec<i64>> = degrees
        .iter()
        .map(|&d| {
            let mut v: Vec<i64> = Vec::new();
            for _ in 0..d {
                if !v.is_empty() && rng.gen_bool(0.2) {
                    let again = *v.choose(rng).expect("nonempty");
                    v.push(again);
                } else {
                    v.push(rng.gen_range(-4..=4));
                }
            }
            v
        })
        .collect();
    let a = unimodular(rng, field, n);
    let b: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
    // x = A u + b
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            let mut p = Polynomial::constant(&r, field.from_i64(b[i]));
            for j in 0..n {
                p.add_term(Monomial::var(n, j), a[(i, j)].clone());
            }
            p
        })
        .collect();
    let g: Vec<Polynomial> = roots
        .iter()
        .enumerate()
        .map(|(i, rs)| {
            rs.iter().fold(Polynomial::one(&r), |acc, &c| {
                &acc * &(&images[i] - &Polynomial::constant(&r, field.from_i64(c)))
            })
        })
        .collect();
    let mix = unimodular(rng, field, n);
    let eqs: Vec<Polynomial> = (0..n)
        .map(|i| {
            (0..n).fold(Polynomial::zero(&r), |acc, j| &acc + &g[j].scale(&mix[(i, j)]))
        })
        .collect();
    let ainv = a.inverse().expect("unimodular");
    let mut grid: Vec<Vec<i64>> = vec![Vec::new()];
    for rs in &roots {
        let mut distinct = rs.clone();
        distinct.sort_unstable();
        distinct.dedup();
        grid = grid
            .into_iter()
            .flat_map(|p| distinct.iter().map(move |&c| [p.clone(), vec![c]].concat()))
            .collect();
    }
    let zeros = grid
        .into_iter()
        .map(|p| {
            let shifted: Vec<Scalar> = p.iter().zip(&b).map(|(x, y)| field.from_i64(x - y)).collect();
            ainv.mul_vec(&shifted)
        })
        .collect();
    PlantedSystem { system: PolynomialSystem::new(eqs).expect("square system"), zeros, degrees }
}

/// Signature of the global form equals the signed real zero count.
pub fn verify_ekl(seed: u64, count: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("ekl");
    let field = FieldDescriptor::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    while rep.passed + rep.failures.len() < count && attempts < 4 * count {
        attempts += 1;
        let n = rng.gen_range(1..=3);
        let sys = random_bezout_system(&mut rng, field, n, 4);
        let form = match bezoutian_form(&sys) {
            Ok(f) => f,
            Err(e) => {
                rep.failures.push(format!("{}: {e}", describe(&sys)));
                continue;
            }
        };
        let inv = match form.invariants() {
            Ok(i) => i,
            Err(e) => {
                rep.failures.push(format!("{}: {e}", describe(&sys)));
                continue;
            }
        };
        match eigen_signed_count(&sys, seed.wrapping_add(attempts as u64)) {
            Ok(s) => {
                let dim_ok = inv.rank == BigInt::from(form.algebra().dim());
                let sig_ok = inv.signature == Some(BigInt::from(s));
                let exact_ok = n > 1 || real_signed_count(&sys, 0).is_ok_and(|t| t == s);
                rep.check(dim_ok && sig_ok && exact_ok, || {
                    format!("{}: signature {:?}, oracle {s}", describe(&sys), inv.signature)
                });
            }
            Err(OracleError::IllConditioned(_)) => rep.skipped += 1,
            Err(e) => rep.failures.push(format!("{}: {e}", describe(&sys))),
        }
    }
    rep
}

/// Sum of local forms over all rational zeros equals the global form.
pub fn verify_local_global(seed: u64, count: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("local-global");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let n = rng.gen_range(1..=3);
        let planted = random_planted_system(&mut rng, n, 3);
        let sys = &planted.system;
        let result = (|| -> Result<(bool, bool), BezoutianError> {
            let global = bezoutian_form(sys)?;
            let mut sum = GwClass::zero(sys.field());
            let mut simple_ok = true;
            let mut total_dim = 0;
            for z in &planted.zeros {
                let local = local_form_from_global(sys, &global, z)?;
                total_dim += local.local_dim;
                let class = local.gw_class()?;
                if local.local_dim == 1 {
                    simple_ok &= simple_zero_index(sys, z)?.same_invariants(&class);
                }
                sum = sum.add(&class);
            }
            let g = global.gw_class()?;
            Ok((total_dim == global.dim() && sum.same_invariants(&g), simple_ok))
        })();
        match result {
            Ok((sum_ok, simple_ok)) => rep.check(sum_ok && simple_ok, || {
                format!("{}: sum {sum_ok}, simple {simple_ok}", describe(sys))
            }),
            Err(e) => rep.failures.push(format!("{}: {e}", describe(sys))),
        }
    }
    rep
}

/// Gram symmetry, nondegeneracy and the diagonal identity over `Q` and `F_7`.
pub fn verify_bezoutian_core(seed: u64, count: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("bezoutian-core");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields = [FieldDescriptor::rationals(), FieldDescriptor::prime(7).expect("prime")];
    for k in 0..count {
        let field = fields[k % 2];
        let n = rng.gen_range(1..=3);
        let sys = random_bezout_system(&mut rng, field, n, 4);
        match bezoutian_form(&sys) {
            Ok(form) => {
                let sym = form.gram().is_symmetric();
                let nondeg = !form.gram().determinant().is_zero();
                let jac = form.algebra().reduce_to_coords(&sys.jacobian());
                let diag = form.diagonal_image() == jac;
                rep.check(sym && nondeg && diag, || {
                    format!("{} over {field}: symmetric {sym}, nondegenerate {nondeg}, diagonal {diag}", describe(&sys))
                });
            }
            Err(e) => rep.failures.push(format!("{} over {field}: {e}", describe(&sys))),
        }
    }
    rep
}

/// Degree lists for the `d = 0` comparison.
pub const CROSS_PILLAR_DEGREES: &[&[u32]] = &[&[2], &[2, 2], &[3], &[1, 2], &[2, 3], &[4], &[2, 2, 2]];

/// For `d = 0` the topological count matches the Bezoutian class of dense
/// systems. Non-orientable degree lists are reported as skipped.
pub fn verify_cross_pillar(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("cross-pillar");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = FieldDescriptor::rationals();
    for &degs in CROSS_PILLAR_DEGREES {
        let n = degs.len() as u32;
        let q = PlaneCountQuery::over_rationals(0, n, degs.to_vec()).expect("valid query");
        match count_d_planes(&q) {
            Ok(report) => {
                for _ in 0..3 {
                    let sys = random_dense_system(&mut rng, field, degs);
                    match euler_number_ph(&sys) {
                        Ok(c) => rep.check(c.same_invariants(&report.gw_class), || {
                            format!("{degs:?}: count {} but {} gives {c}", report.gw_class, describe(&sys))
                        }),
                        Err(e) => rep.failures.push(format!("{}: {e}", describe(&sys))),
                    }
                }
            }
            Err(CountError::NotOrientable(_)) => rep.skipped += 1,
            Err(e) => rep.failures.push(format!("{degs:?}: {e}")),
        }
    }
    rep
}

/// Complex class equals homology class on random symmetric complexes.
pub fn verify_complexes(seed: u64, count: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("complexes");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields = [FieldDescriptor::rationals(), FieldDescriptor::prime(7).expect("prime")];
    for k in 0..count {
        let field = fields[k % 2];
        let m = rng.gen_range(0..=3);
        let c = random_symmetric_complex(&mut rng, field, m);
        match (complex_gw_class(&c), homology_gw_class(&c)) {
            (Ok(a), Ok(b)) => rep.check(a.same_invariants(&b), || format!("complex {a} vs homology {b} over {field}")),
            (Err(e), _) | (_, Err(e)) => rep.failures.push(format!("over {field}: {e}")),
        }
    }
    rep
}

pub fn verify_trace() -> SuiteReport {
    let mut rep = SuiteReport::new("trace");
    let q = FieldDescriptor::rationals();
    let one = UniPoly::one(q);
    let expect = GwClass::from_diagonal(q, &[q.from_i64(1), q.from_i64(2)]).expect("units");
    match trace_form(&UniPoly::from_i64s(q, &[-2, 0, 1]), &one).and_then(|t| GwClass::from_form(&t.form)) {
        Ok(c) => rep.check(c == expect, || format!("x^2-2 gave {c}")),
        Err(e) => rep.failures.push(format!("x^2-2: {e}")),
    }
    match trace_form(&UniPoly::from_i64s(q, &[1, 0, 1]), &one).and_then(|t| GwClass::from_form(&t.form)) {
        Ok(c) => rep.check(c.simplify(true) == GwClass::hyperbolic(q).simplify(true), || format!("x^2+1 gave {c}")),
        Err(e) => rep.failures.push(format!("x^2+1: {e}")),
    }
    rep
}

/// The published integers.
pub fn verify_paper_numbers() -> SuiteReport {
    let mut rep = SuiteReport::new("paper-numbers");
    let cases: &[(u32, u32, &[u32], &str)] = &[
        (3, 8, &[3], "160839⟨1⟩ + 160650⟨−1⟩"),
        (
            3,
            17,
            &[5],
            "32063862647475902965720976420325⟨1⟩ + 32063862647475902965683320692800⟨−1⟩",
        ),
    ];
    for &(d, n, degs, expected) in cases {
        let q = PlaneCountQuery::over_rationals(d, n, degs.to_vec()).expect("valid query");
        match count_d_planes(&q) {
            Ok(r) => rep.check(r.gw_class.to_string() == expected && lies_in_minus_one_span(&r.gw_class), || {
                format!("{q}: got {}", r.gw_class)
            }),
            Err(e) => rep.failures.push(format!("{q}: {e}")),
        }
    }
    let lines: &[(u32, u32, &[u32], u64, u64)] = &[(1, 3, &[3], 27, 3), (1, 4, &[5], 2875, 15)];
    for &(d, n, degs, nc, nr) in lines {
        let c = complex_euler_number(d, n, degs);
        let p = complex_euler_number_pieri(d, n, degs);
        let r = real_witt_euler_number(d, n, degs);
        rep.check(
            c == Ok(nc.into()) && p == Ok(nc.into()) && r == Ok(nr.into()),
            || format!("({d},{n},{degs:?}): n_C {c:?} / {p:?}, n_R {r:?}"),
        );
    }
    rep
}

fn describe(sys: &PolynomialSystem) -> String {
    let eqs: Vec<String> = sys.equations().iter().map(|f| f.to_string()).collect();
    format!("[{}]", eqs.join("; "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_zeros_are_zeros() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let n = rng.gen_range(1..=3);
            let p = random_planted_system(&mut rng, n, 3);
            for z in &p.zeros {
                assert!(p.system.is_zero_at(z).unwrap());
            }
            let dim = p.system.quotient_algebra().unwrap().dim();
            assert_eq!(dim as u32, p.degrees.iter().product::<u32>());
        }
    }

    #[test]
    fn small_suites_pass() {
        for rep in [
            verify_ekl(0, 10),
            verify_local_global(0, 5),
            verify_bezoutian_core(0, 10),
            verify_complexes(0, 10),
            verify_trace(),
        ] {
            assert!(rep.ok(), "{rep}");
        }
        assert!(run_suite("nope", 0).is_none());
    }
}
