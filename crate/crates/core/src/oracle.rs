//! Independent zero counting: eigenvalues of multiplication matrices and
//! exact Sturm sequences.

use crate::bezoutian::{BezoutianError, PolynomialSystem};
use crate::field::Scalar;
use crate::poly::{Polynomial, UniPoly};
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use thiserror::Error;

/// Imaginary parts below this (relative) count as real.
pub const REAL_TOL: f64 = 1e-8;
/// Relative residual accepted for a polished zero.
pub const RESIDUAL_TOL: f64 = 1e-6;
/// Relative separation required between distinct zeros.
pub const SEPARATION_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Bezoutian(#[from] BezoutianError),
    #[error("real zero counting needs the rationals")]
    NotRationals,
    #[error("ill-conditioned: {0}")]
    IllConditioned(String),
}

/// Number of complex zeros with multiplicity: `dim k[T]/(F)`.
pub fn complex_zero_count(sys: &PolynomialSystem) -> Result<usize, OracleError> {
    Ok(sys.quotient_algebra()?.dim())
}

#[derive(Debug, Clone)]
pub struct ApproxZero {
    pub coords: Vec<Complex64>,
    pub multiplicity: usize,
    pub real: bool,
    /// Sign of the Jacobian at a real zero.
    pub jacobian_sign: Option<i32>,
}

#[derive(Debug, Clone)]
pub struct ZeroSet {
    pub zeros: Vec<ApproxZero>,
    /// All zeros separated, polished and classified within tolerance.
    pub certified: bool,
}

impl ZeroSet {
    pub fn total_multiplicity(&self) -> usize {
        self.zeros.iter().map(|z| z.multiplicity).sum()
    }

    pub fn real_count(&self) -> usize {
        self.zeros.iter().filter(|z| z.real).count()
    }

    pub fn signed_real_count(&self) -> i64 {
        self.zeros.iter().filter_map(|z| z.jacobian_sign).map(i64::from).sum()
    }
}

/// Floating-point copy of a polynomial: `(exponents, coefficient)`.
#[derive(Debug, Clone)]
struct FloatPoly(Vec<(Vec<u32>, f64)>);

impl FloatPoly {
    fn new(p: &Polynomial) -> FloatPoly {
        FloatPoly(p.terms().map(|(m, c)| (m.exponents().to_vec(), c.to_f64())).collect())
    }

    fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.0
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(z)
                    .fold(Complex64::new(*c, 0.0), |acc, (&k, x)| acc * x.powu(k))
            })
            .sum()
    }

    /// `Σ |c| · max(1,|z|)^deg`, the scale for relative residuals.
    fn scale(&self, z: &[Complex64]) -> f64 {
        let r = z.iter().map(|x| x.norm()).fold(1.0, f64::max);
        self.0
            .iter()
            .map(|(e, c)| c.abs() * r.powi(e.iter().sum::<u32>() as i32))
            .sum::<f64>()
            .max(f64::MIN_POSITIVE)
    }
}

struct FloatSystem {
    eqs: Vec<FloatPoly>,
    jac: Vec<Vec<FloatPoly>>,
}

impl FloatSystem {
    fn new(sys: &PolynomialSystem) -> FloatSystem {
        let n = sys.nvars();
        FloatSystem {
            eqs: sys.equations().iter().map(FloatPoly::new).collect(),
            jac: sys
                .equations()
                .iter()
                .map(|f| (0..n).map(|j| FloatPoly::new(&f.partial_derivative(j))).collect())
                .collect(),
        }
    }

    fn jacobian(&self, z: &[Complex64]) -> DMatrix<Complex64> {
        let n = z.len();
        DMatrix::from_fn(n, n, |i, j| self.jac[i][j].eval(z))
    }

    fn residual(&self, z: &[Complex64]) -> f64 {
        self.eqs
            .iter()
            .map(|f| f.eval(z).norm() / f.scale(z))
            .fold(0.0, f64::max)
    }

    fn newton(&self, z: &mut [Complex64]) {
        for _ in 0..30 {
            let rhs = DMatrix::from_fn(z.len(), 1, |i, _| self.eqs[i].eval(z));
            let Some(step) = self.jacobian(z).lu().solve(&rhs) else {
                return;
            };
            let mut size = 0.0f64;
            for (i, x) in z.iter_mut().enumerate() {
                *x -= step[(i, 0)];
                size = size.max(step[(i, 0)].norm() / (1.0 + x.norm()));
            }
            if size < 1e-15 {
                return;
            }
        }
    }
}

fn to_f64_matrix(m: &crate::matrix::Matrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].to_f64())
}

fn random_rational<R: Rng>(rng: &mut R) -> f64 {
    let num: i64 = rng.gen_range(-97..=97);
    let den: i64 = rng.gen_range(1..=31);
    num as f64 / den as f64
}

/// Eigenvalues by a bounded Schur iteration, retried with random shifts
/// when the iteration stalls.
fn eigenvalues<R: Rng>(m: &DMatrix<f64>, rng: &mut R) -> Result<Vec<Complex64>, OracleError> {
    let n = m.nrows();
    let norm = m.norm().max(1.0);
    for attempt in 0..6 {
        let shift = if attempt == 0 { 0.0 } else { norm * rng.gen_range(-1.0..1.0) };
        let shifted = m + DMatrix::<f64>::identity(n, n) * shift;
        if let Some(schur) = nalgebra::Schur::try_new(shifted, f64::EPSILON, 10_000) {
            return Ok(schur.complex_eigenvalues().iter().map(|l| l - shift).collect());
        }
    }
    Err(OracleError::IllConditioned("eigenvalue iteration did not converge".into()))
}

/// Approximates all zeros from a seeded random combination of the
/// multiplication matrices.
pub fn solve(sys: &PolynomialSystem, seed: u64) -> Result<ZeroSet, OracleError> {
    if !sys.field().is_rationals() {
        return Err(OracleError::NotRationals);
    }
    let alg = sys.quotient_algebra()?;
    let dim = alg.dim();
    let n = sys.nvars();
    if dim == 0 {
        return Ok(ZeroSet { zeros: Vec::new(), certified: true });
    }
    let mats: Vec<DMatrix<f64>> = alg.mult_matrices().iter().map(to_f64_matrix).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut comb = DMatrix::<f64>::zeros(dim, dim);
    for m in &mats {
        comb += m * random_rational(&mut rng);
    }
    let eig = eigenvalues(&comb, &mut rng)?;
    let scale = eig.iter().map(|l| l.norm()).fold(1.0, f64::max);
    for a in 0..dim {
        for b in a + 1..dim {
            if (eig[a] - eig[b]).norm() < SEPARATION_TOL * scale {
                return Err(OracleError::IllConditioned(format!(
                    "eigenvalues {} and {} are not separated",
                    eig[a], eig[b]
                )));
            }
        }
    }
    let comb_t: DMatrix<Complex64> = comb.transpose().map(|x| Complex64::new(x, 0.0));
    let mats_t: Vec<DMatrix<Complex64>> = mats.iter().map(|m| m.transpose().map(|x| Complex64::new(x, 0.0))).collect();
    let fsys = FloatSystem::new(sys);
    let mut zeros: Vec<ApproxZero> = Vec::with_capacity(dim);
    for &lambda in &eig {
        let shift = lambda + Complex64::new(1e-10 * scale, 1e-10 * scale);
        let shifted = &comb_t - DMatrix::<Complex64>::identity(dim, dim) * shift;
        let lu = shifted.lu();
        let mut w = DMatrix::from_fn(dim, 1, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        for _ in 0..3 {
            let Some(next) = lu.solve(&w) else { break };
            let norm = next.norm();
            if norm == 0.0 || !norm.is_finite() {
                break;
            }
            w = next / Complex64::new(norm, 0.0);
        }
        let ww = w.dotc(&w);
        let mut z: Vec<Complex64> = mats_t.iter().map(|mt| w.dotc(&(mt * &w)) / ww).collect();
        fsys.newton(&mut z);
        let res = fsys.residual(&z);
        if !(res <= RESIDUAL_TOL) {
            return Err(OracleError::IllConditioned(format!("residual {res:e} after polishing")));
        }
        let size = z.iter().map(|x| x.norm()).fold(1.0, f64::max);
        let im = z.iter().map(|x| x.im.abs()).fold(0.0, f64::max);
        let real = im < REAL_TOL * size;
        let jacobian_sign = if real {
            let zr: Vec<Complex64> = z.iter().map(|x| Complex64::new(x.re, 0.0)).collect();
            let det = fsys.jacobian(&zr).determinant().re;
            let jscale: f64 = (0..n)
                .map(|i| (0..n).map(|j| fsys.jac[i][j].scale(&zr)).fold(0.0, f64::max))
                .product();
            if det.abs() <= 1e-10 * jscale.max(f64::MIN_POSITIVE) {
                return Err(OracleError::IllConditioned("singular Jacobian at a real zero".into()));
            }
            Some(if det > 0.0 { 1 } else { -1 })
        } else {
            None
        };
        zeros.push(ApproxZero { coords: z, multiplicity: 1, real, jacobian_sign });
    }
    for a in 0..zeros.len() {
        for b in a + 1..zeros.len() {
            let d = zeros[a]
                .coords
                .iter()
                .zip(&zeros[b].coords)
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            let s = zeros[a].coords.iter().map(|x| x.norm()).fold(1.0, f64::max);
            if d < SEPARATION_TOL * s {
                return Err(OracleError::IllConditioned("two eigenvalues polished to the same zero".into()));
            }
        }
    }
    Ok(ZeroSet { zeros, certified: true })
}

/// `Σ sign Jac F(z)` over real zeros from the eigenvalue route.
pub fn eigen_signed_count(sys: &PolynomialSystem, seed: u64) -> Result<i64, OracleError> {
    Ok(solve(sys, seed)?.signed_real_count())
}

/// Sum of local degrees over the real zeros. One variable uses exact
/// Sturm sequences, more variables use [`eigen_signed_count`].
pub fn real_signed_count(sys: &PolynomialSystem, seed: u64) -> Result<i64, OracleError> {
    if !sys.field().is_rationals() {
        return Err(OracleError::NotRationals);
    }
    if sys.nvars() == 1 {
        let f = sys.equations()[0].to_univariate().expect("one variable");
        sys.quotient_algebra()?;
        return Ok(univariate_signed_count(&f));
    }
    eigen_signed_count(sys, seed)
}

/// Sum of local degrees of `f: R → R` over its real roots.
pub fn univariate_signed_count(f: &UniPoly) -> i64 {
    let mut total = 0;
    for (g, m) in f.squarefree_decomposition() {
        if m % 2 == 0 {
            continue;
        }
        // near a root of g: f ≈ g'(a)^m (x-a)^m · h(a)
        let h = f.exact_div(&pow(&g, m));
        total += tarski_query(&g.derivative().mul(&h), &g);
    }
    total
}

fn pow(g: &UniPoly, m: usize) -> UniPoly {
    (0..m).fold(UniPoly::one(g.field()), |acc, _| acc.mul(g))
}

/// Endpoint of a real interval.
#[derive(Debug, Clone, PartialEq)]
pub enum Bound {
    NegInfinity,
    Finite(BigRational),
    PosInfinity,
}

/// The half-open interval `(lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
}

impl Interval {
    pub fn real_line() -> Interval {
        Interval { lo: Bound::NegInfinity, hi: Bound::PosInfinity }
    }
}

fn sign_at(p: &UniPoly, x: &Bound) -> i32 {
    let Some(deg) = p.degree() else { return 0 };
    let lead = p.leading().and_then(Scalar::signum).unwrap_or(0);
    match x {
        Bound::PosInfinity => lead,
        Bound::NegInfinity => {
            if deg % 2 == 0 {
                lead
            } else {
                -lead
            }
        }
        Bound::Finite(v) => p.eval(&Scalar::Rational(v.clone())).signum().unwrap_or(0),
    }
}

fn variations(seq: &[UniPoly], x: &Bound) -> i64 {
    let signs: Vec<i32> = seq.iter().map(|p| sign_at(p, x)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count() as i64
}

/// Signed remainder sequence of `(p, q)`.
pub fn signed_remainder_sequence(p: &UniPoly, q: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone()];
    let mut a = p.clone();
    let mut b = q.clone();
    while !b.is_zero() {
        seq.push(b.clone());
        let r = a.rem(&b).neg();
        a = b;
        b = r;
    }
    seq
}

/// `Σ_{p(x)=0} sign q(x)` over distinct real roots of `p ≠ 0`.
pub fn tarski_query(q: &UniPoly, p: &UniPoly) -> i64 {
    let seq = signed_remainder_sequence(p, &p.derivative().mul(q));
    variations(&seq, &Bound::NegInfinity) - variations(&seq, &Bound::PosInfinity)
}

/// Number of distinct real roots of `f` in `(lo, hi]`.
pub fn sturm_count(f: &UniPoly, interval: &Interval) -> usize {
    if f.degree().is_none_or(|d| d == 0) {
        return 0;
    }
    let sf = f.exact_div(&f.gcd(&f.derivative()));
    let seq = signed_remainder_sequence(&sf, &sf.derivative());
    if bound_cmp(&interval.lo, &interval.hi) != Ordering::Less {
        return 0;
    }
    (variations(&seq, &interval.lo) - variations(&seq, &interval.hi)).max(0) as usize
}

fn bound_cmp(a: &Bound, b: &Bound) -> Ordering {
    use Bound::*;
    match (a, b) {
        (Finite(x), Finite(y)) => x.cmp(y),
        (NegInfinity, NegInfinity) | (PosInfinity, PosInfinity) => Ordering::Equal,
        (NegInfinity, _) | (_, PosInfinity) => Ordering::Less,
        _ => Ordering::Greater,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bezoutian::bezoutian_form;
    use crate::field::FieldDescriptor;
    use num_bigint::BigInt;

    fn sys(vars: &[&str], text: &str) -> PolynomialSystem {
        PolynomialSystem::parse(FieldDescriptor::rationals(), vars, text).unwrap()
    }

    fn uni(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(FieldDescriptor::rationals(), c)
    }

    #[test]
    fn complex_counts() {
        assert_eq!(complex_zero_count(&sys(&["x"], "x^2 - 1")).unwrap(), 2);
        assert_eq!(complex_zero_count(&sys(&["x", "y"], "x^2 + y^2 - 1; x - y")).unwrap(), 2);
        assert_eq!(complex_zero_count(&sys(&["x", "y"], "x^3; y^2")).unwrap(), 6);
    }

    #[test]
    fn signed_counts() {
        assert_eq!(real_signed_count(&sys(&["x"], "x^2 - 1"), 0).unwrap(), 0);
        assert_eq!(real_signed_count(&sys(&["x"], "x^3 - x"), 0).unwrap(), 1);
        assert_eq!(real_signed_count(&sys(&["x"], "x^2 + 1"), 0).unwrap(), 0);
        assert_eq!(eigen_signed_count(&sys(&["x"], "x^3 - x"), 0).unwrap(), 1);
        // fat roots: x^2 (x - 1) has degree +1 at 1 and 0 at 0
        assert_eq!(real_signed_count(&sys(&["x"], "x^3 - x^2"), 0).unwrap(), 1);
        assert_eq!(real_signed_count(&sys(&["x"], "-x^3"), 0).unwrap(), -1);
    }

    #[test]
    fn eigen_route_in_two_variables() {
        let s = sys(&["x", "y"], "x^2 + y^2 - 5; x*y - 2");
        let zs = solve(&s, 3).unwrap();
        assert_eq!(zs.total_multiplicity(), 4);
        assert_eq!(zs.real_count(), 4);
        let sig = bezoutian_form(&s).unwrap().invariants().unwrap().signature.unwrap();
        assert_eq!(BigInt::from(zs.signed_real_count()), sig);
        assert!(matches!(solve(&sys(&["x", "y"], "x^2; y"), 0), Err(OracleError::IllConditioned(_))));
    }

    #[test]
    fn sturm() {
        let all = Interval::real_line();
        assert_eq!(sturm_count(&uni(&[-2, 0, 1]), &all), 2);
        assert_eq!(sturm_count(&uni(&[1, 0, 1]), &all), 0);
        let pos = Interval { lo: Bound::Finite(BigRational::from_integer(0.into())), hi: Bound::PosInfinity };
        assert_eq!(sturm_count(&uni(&[0, -1, 0, 1]), &pos), 1);
        // non-squarefree input
        assert_eq!(sturm_count(&uni(&[1, -2, 1]), &all), 1);
    }

    #[test]
    fn tarski() {
        let p = uni(&[0, -1, 0, 1]);
        assert_eq!(tarski_query(&uni(&[1]), &p), 3);
        assert_eq!(tarski_query(&p.derivative(), &p), 1);
    }
}
