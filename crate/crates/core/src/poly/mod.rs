//! Sparse multivariate polynomials over a [`FieldDescriptor`].
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector, which gives a
//! canonical form (no zero coefficients, deterministic iteration). Term orders
//! used for Gröbner computations live in [`crate::groebner`]; the map order
//! here is only a storage order.

mod parse;
mod univariate;

pub use parse::{parse, parse_system, ParseError};
pub use univariate::UniPoly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::field::{FieldDescriptor, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
    #[error("invalid variable name {0:?}")]
    InvalidVariable(String),
    #[error("system has {equations} equations in {variables} variables")]
    NonSquareSystem { equations: usize, variables: usize },
    #[error("index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
}

/// Largest exponent allowed for a single variable.
pub const MAX_EXPONENT: u64 = (1 << 31) - 1;

/// Coefficient field plus an ordered list of variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: FieldDescriptor,
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(field: FieldDescriptor, vars: &[S]) -> Result<Arc<PolyRing>, PolyError> {
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref().trim();
            let ok = v
                .chars()
                .next()
                .is_some_and(|c| c.is_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !ok {
                return Err(PolyError::InvalidVariable(v.to_string()));
            }
            if names.iter().any(|n| n == v) {
                return Err(PolyError::DuplicateVariable(v.to_string()));
            }
            names.push(v.to_string());
        }
        Ok(Arc::new(PolyRing { field, vars: names }))
    }

    /// Ring with `n` variables named `x1..xn`.
    pub fn with_n_vars(field: FieldDescriptor, n: usize) -> Arc<PolyRing> {
        let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        PolyRing::new(field, &vars).expect("generated names are valid")
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The ring `k[X_1..X_n, Y_1..Y_n]` carrying two copies of the variables,
    /// X block first.
    pub fn doubled(&self) -> Arc<PolyRing> {
        let vars: Vec<String> = self
            .vars
            .iter()
            .map(|v| format!("X_{v}"))
            .chain(self.vars.iter().map(|v| format!("Y_{v}")))
            .collect();
        Arc::new(PolyRing {
            field: self.field,
            vars,
        })
    }

    /// Same field, variables listed in reverse.
    pub fn reversed(&self) -> Arc<PolyRing> {
        let mut vars = self.vars.clone();
        vars.reverse();
        Arc::new(PolyRing {
            field: self.field,
            vars,
        })
    }
}

/// Exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Monomial {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.0.len(), other.0.len());
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            let s = *a as u64 + *b as u64;
            if s > MAX_EXPONENT {
                return None;
            }
            out.push(s as u32);
        }
        Some(Monomial(out))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("exponent overflow")
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some(i)` when this is a pure power `T_i^k` with `k ≥ 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        p.add_term(Monomial::one(ring.nvars()), c);
        p
    }

    pub fn one(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Polynomial {
        Polynomial::monomial(ring, Monomial::var(ring.nvars(), i), ring.field().one())
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Scalar) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(ring: &Arc<PolyRing>, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> FieldDescriptor {
        self.ring.field()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field().zero())
    }

    /// Constant term value.
    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.nvars(), self.ring.nvars());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.ring.nvars(), "point dimension");
        let field = self.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &x.pow(e as u64);
                }
            }
            acc += &t;
        }
        acc
    }

    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        let field = self.field();
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial(exps), c * &field.from_i64(e as i64));
        }
        out
    }

    /// Re-indexes variables into `target`: variable `i` of `self` becomes
    /// variable `map[i]` of `target`.
    pub fn rename_into(&self, target: &Arc<PolyRing>, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.ring.nvars());
        let n = target.nvars();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; n];
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[map[i]] += e;
            }
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Substitutes variable `i` by `images[i]`; all images share one ring.
    pub fn compose(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(&target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// `f(z + T)`: moves the point `z` to the origin.
    pub fn translate(&self, z: &[Scalar]) -> Polynomial {
        let images: Vec<Polynomial> = (0..self.ring.nvars())
            .map(|i| {
                let mut p = Polynomial::var(&self.ring, i);
                p.add_term(Monomial::one(self.ring.nvars()), z[i].clone());
                p
            })
            .collect();
        self.compose(&images)
    }

    pub fn to_univariate(&self) -> Option<UniPoly> {
        if self.ring.nvars() != 1 {
            return None;
        }
        let field = self.field();
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![field.zero(); deg + 1];
        for (m, c) in &self.terms {
            coeffs[m.exponents()[0] as usize] = c.clone();
        }
        Some(UniPoly::new(field, coeffs))
    }

    fn assert_same_ring(&self, other: &Polynomial) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "polynomials from different rings"
        );
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest total degree first reads more naturally
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(b.0.cmp(a.0)));
        for (m, c) in terms {
            let (neg, abs) = match c.signum() {
                Some(-1) => (true, -c),
                _ => (false, c.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Determinant of a square matrix of polynomials by expansion over column
/// subsets (no division, so it is exact over any coefficient ring).
pub fn determinant(rows: &[Vec<Polynomial>], ring: &Arc<PolyRing>) -> Polynomial {
    let n = rows.len();
    if n == 0 {
        return Polynomial::one(ring);
    }
    assert!(n <= 20, "determinant size");
    // minors[mask] = det of the first popcount(mask) rows on the columns in mask
    let mut minors: BTreeMap<u32, Polynomial> = BTreeMap::new();
    minors.insert(0, Polynomial::one(ring));
    for (r, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), n, "square matrix");
        let mut next: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (mask, minor) in &minors {
            if minor.is_zero() {
                continue;
            }
            for (c, entry) in row.iter().enumerate() {
                if mask & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                // sign from the number of used columns to the right of c
                let after = (mask >> (c + 1)).count_ones();
                let term = minor * entry;
                let term = if after % 2 == 1 { -&term } else { term };
                let slot = next
                    .entry(mask | (1 << c))
                    .or_insert_with(|| Polynomial::zero(ring));
                *slot = &*slot + &term;
            }
        }
        minors = next;
        let _ = r;
    }
    minors
        .remove(&((1u32 << n) - 1))
        .unwrap_or_else(|| Polynomial::zero(ring))
}

/// Jacobian determinant `det(∂f_i/∂T_j)` of a square system.
pub fn jacobian_determinant(system: &[Polynomial]) -> Result<Polynomial, PolyError> {
    let ring = system
        .first()
        .map(|p| p.ring.clone())
        .ok_or(PolyError::NonSquareSystem {
            equations: 0,
            variables: 0,
        })?;
    let n = ring.nvars();
    if system.len() != n {
        return Err(PolyError::NonSquareSystem {
            equations: system.len(),
            variables: n,
        });
    }
    let rows: Vec<Vec<Polynomial>> = system
        .iter()
        .map(|f| (0..n).map(|j| f.partial_derivative(j)).collect())
        .collect();
    Ok(determinant(&rows, &ring))
}

/// The canonical `a_{ij}` for column `j` (0-based): the exact quotient
/// `(f(Y_<j, X_≥j) - f(Y_≤j, X_>j)) / (X_j - Y_j)` in the doubled ring.
pub fn divided_difference(f: &Polynomial, j: usize) -> Result<Polynomial, PolyError> {
    let order: Vec<usize> = (0..f.ring.nvars()).collect();
    divided_difference_in_order(f, j, &order)
}

/// Divided difference where variables are switched from the X copy to the Y
/// copy in the sequence given by `order` (a permutation of `0..n`).
///
/// Column `j` still refers to variable `T_j`; only the telescoping path
/// changes, so summing over `j` still gives `f(X) - f(Y)`.
pub fn divided_difference_in_order(
    f: &Polynomial,
    j: usize,
    order: &[usize],
) -> Result<Polynomial, PolyError> {
    let n = f.ring.nvars();
    if j >= n {
        return Err(PolyError::IndexOutOfRange { index: j, nvars: n });
    }
    assert_eq!(order.len(), n, "order must be a permutation");
    let mut position = vec![usize::MAX; n];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    assert!(position.iter().all(|&p| p < n), "order must be a permutation");
    let doubled = f.ring.doubled();
    let mut out = Polynomial::zero(&doubled);
    for (m, c) in &f.terms {
        let a = m.exponents()[j];
        if a == 0 {
            continue;
        }
        let mut base = vec![0u32; 2 * n];
        for (i, &e) in m.exponents().iter().enumerate() {
            if i == j {
                continue;
            }
            if position[i] < position[j] {
                base[n + i] = e;
            } else {
                base[i] = e;
            }
        }
        // (X^a - Y^a) / (X - Y) = sum_t X^t Y^(a-1-t)
        for t in 0..a {
            let mut exps = base.clone();
            exps[j] = t;
            exps[n + j] = a - 1 - t;
            out.add_term(Monomial(exps), c.clone());
        }
    }
    Ok(out)
}

/// Embeds `f(T)` into the doubled ring as `f(X)` or `f(Y)`.
pub fn embed_in_doubled(f: &Polynomial, doubled: &Arc<PolyRing>, second_copy: bool) -> Polynomial {
    let n = f.ring.nvars();
    let map: Vec<usize> = (0..n).map(|i| if second_copy { n + i } else { i }).collect();
    f.rename_into(doubled, &map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(FieldDescriptor::rationals(), vars).unwrap()
    }

    #[test]
    fn ring_validation() {
        let q = FieldDescriptor::rationals();
        assert!(matches!(
            PolyRing::new(q, &["x", "x"]),
            Err(PolyError::DuplicateVariable(_))
        ));
        assert!(PolyRing::new(q, &["1x"]).is_err());
        assert_eq!(ring(&["x", "y"]).doubled().nvars(), 4);
    }

    #[test]
    fn divided_difference_examples() {
        let r = ring(&["x"]);
        let d = r.doubled();
        let f = parse("x^2", &r).unwrap();
        assert_eq!(divided_difference(&f, 0).unwrap(), parse("X_x + Y_x", &d).unwrap());
        let f = parse("x", &r).unwrap();
        assert_eq!(divided_difference(&f, 0).unwrap(), Polynomial::one(&d));

        let r = ring(&["a", "b"]);
        let d = r.doubled();
        let f = parse("a*b", &r).unwrap();
        assert_eq!(divided_difference(&f, 0).unwrap(), parse("X_b", &d).unwrap());
        assert_eq!(divided_difference(&f, 1).unwrap(), parse("Y_a", &d).unwrap());
        assert!(divided_difference(&f, 2).is_err());
    }

    #[test]
    fn divided_difference_is_exact_quotient() {
        let r = ring(&["x", "y", "z"]);
        let d = r.doubled();
        let f = parse("x^3*y - 2*y^2*z + 5*x*z^2 - 7 + z", &r).unwrap();
        let n = 3;
        for j in 0..n {
            let q = divided_difference(&f, j).unwrap();
            // numerator: f(Y_<j, X_>=j) - f(Y_<=j, X_>j)
            let left: Vec<Polynomial> = (0..n)
                .map(|i| Polynomial::var(&d, if i < j { n + i } else { i }))
                .collect();
            let right: Vec<Polynomial> = (0..n)
                .map(|i| Polynomial::var(&d, if i <= j { n + i } else { i }))
                .collect();
            let num = &f.compose(&left) - &f.compose(&right);
            let lin = &Polynomial::var(&d, j) - &Polynomial::var(&d, n + j);
            assert_eq!(&q * &lin, num);
        }
    }

    #[test]
    fn jacobian_examples() {
        let r = ring(&["x"]);
        let f = parse("x^2", &r).unwrap();
        assert_eq!(jacobian_determinant(&[f]).unwrap(), parse("2*x", &r).unwrap());
        let f = parse("5*x", &r).unwrap();
        assert_eq!(jacobian_determinant(&[f]).unwrap(), parse("5", &r).unwrap());
        let r = ring(&["x", "y"]);
        let sys = parse_system("x + y; x*y", &r).unwrap();
        assert_eq!(jacobian_determinant(&sys).unwrap(), parse("x - y", &r).unwrap());
        assert!(matches!(
            jacobian_determinant(&sys[..1]),
            Err(PolyError::NonSquareSystem { .. })
        ));
    }

    #[test]
    fn determinant_of_permutation_like_matrix() {
        let r = ring(&["x"]);
        let c = |v: i64| Polynomial::constant(&r, r.field().from_i64(v));
        // det [[0,1,0],[0,0,1],[1,0,0]] = 1 (cyclic permutation, even)
        let m = vec![vec![c(0), c(1), c(0)], vec![c(0), c(0), c(1)], vec![c(1), c(0), c(0)]];
        assert_eq!(determinant(&m, &r), c(1));
        let m = vec![vec![c(0), c(1)], vec![c(1), c(0)]];
        assert_eq!(determinant(&m, &r), c(-1));
        let m = vec![vec![c(2), c(3)], vec![c(5), c(7)]];
        assert_eq!(determinant(&m, &r), c(-1));
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
        prop::collection::vec((prop::collection::vec(0u32..4, nvars), -9i64..10), 0..6)
    }

    fn build(r: &Arc<PolyRing>, t: &[(Vec<u32>, i64)]) -> Polynomial {
        Polynomial::from_terms(
            r,
            t.iter()
                .map(|(e, c)| (Monomial::from_exponents(e.clone()), r.field().from_i64(*c))),
        )
    }

    proptest! {
        #[test]
        fn telescoping_and_diagonal(t in arb_poly(3), pt in prop::collection::vec(-5i64..6, 6)) {
            let r = ring(&["x", "y", "z"]);
            let d = r.doubled();
            let f = build(&r, &t);
            let n = 3;
            let mut total = Polynomial::zero(&d);
            for j in 0..n {
                let q = divided_difference(&f, j).unwrap();
                let lin = &Polynomial::var(&d, j) - &Polynomial::var(&d, n + j);
                total = &total + &(&q * &lin);
                // Y := X turns the divided difference into the partial derivative
                let diag: Vec<Polynomial> =
                    (0..2 * n).map(|i| Polynomial::var(&r, i % n)).collect();
                prop_assert_eq!(q.compose(&diag), f.partial_derivative(j));
            }
            let point: Vec<Scalar> = pt.iter().map(|&v| r.field().from_i64(v)).collect();
            let fx = embed_in_doubled(&f, &d, false);
            let fy = embed_in_doubled(&f, &d, true);
            prop_assert_eq!(total.eval(&point), &fx.eval(&point) - &fy.eval(&point));
        }

        #[test]
        fn ring_axioms(a in arb_poly(2), b in arb_poly(2), c in arb_poly(2), pt in prop::collection::vec(-4i64..5, 2)) {
            let r = ring(&["x", "y"]);
            let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            let point: Vec<Scalar> = pt.iter().map(|&v| r.field().from_i64(v)).collect();
            prop_assert_eq!((&a * &b).eval(&point), &a.eval(&point) * &b.eval(&point));
            prop_assert_eq!((&a + &b).eval(&point), &a.eval(&point) + &b.eval(&point));
        }
    }
}
