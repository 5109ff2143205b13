//! Buchberger's algorithm, normal forms and finite-dimensional quotient
//! algebras `k[T]/I` with standard-monomial bases.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::poly::{Monomial, PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("quotient algebra is infinite-dimensional (no pure power of {variable} among leading terms)")]
    InfiniteDimensional { variable: String },
    #[error("empty generator list")]
    NoGenerators,
    #[error("polynomials from different rings")]
    RingMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TermOrder {
    #[default]
    GrevLex,
    Lex,
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self {
            TermOrder::Lex => {
                for (x, y) in ea.iter().zip(eb) {
                    if x != y {
                        return x.cmp(y);
                    }
                }
                Ordering::Equal
            }
            TermOrder::GrevLex => {
                let d = a.degree().cmp(&b.degree());
                if d != Ordering::Equal {
                    return d;
                }
                for (x, y) in ea.iter().zip(eb).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Terms sorted by decreasing monomial in the working order.
type Terms = Vec<(Monomial, Scalar)>;

fn sorted_terms(p: &Polynomial, order: TermOrder) -> Terms {
    let mut t: Terms = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

/// `a·p − c·m·g` with both inputs sorted decreasingly.
fn combine(p: &[(Monomial, Scalar)], a: &Scalar, c: &Scalar, m: &Monomial, g: &[(Monomial, Scalar)], order: TermOrder) -> Terms {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let scaled_p = |s: &Scalar| if a.is_one() { s.clone() } else { s * a };
    let mut i = 0;
    let mut j = 0;
    let mut gm: Option<(Monomial, Scalar)> = g.first().map(|(mm, s)| (mm.mul(m), -(s * c)));
    while i < p.len() || gm.is_some() {
        let take = match (&p.get(i), &gm) {
            (Some(pt), Some(gt)) => order.cmp(&pt.0, &gt.0),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => unreachable!(),
        };
        match take {
            Ordering::Greater => {
                out.push((p[i].0.clone(), scaled_p(&p[i].1)));
                i += 1;
            }
            Ordering::Less => {
                out.push(gm.take().unwrap());
                j += 1;
                gm = g.get(j).map(|(mm, s)| (mm.mul(m), -(s * c)));
            }
            Ordering::Equal => {
                let (mon, gs) = gm.take().unwrap();
                let s = &scaled_p(&p[i].1) + &gs;
                if !s.is_zero() {
                    out.push((mon, s));
                }
                i += 1;
                j += 1;
                gm = g.get(j).map(|(mm, s)| (mm.mul(m), -(s * c)));
            }
        }
    }
    out
}

/// Scales to a primitive integer polynomial with positive leading
/// coefficient (over `Q`) or to a monic polynomial (over `F_p`).
fn normalize(t: &mut Terms) {
    let Some(lead) = t.first().map(|x| x.1.clone()) else {
        return;
    };
    match lead {
        Scalar::Residue { .. } => {
            let inv = lead.inv().expect("nonzero");
            for x in t.iter_mut() {
                x.1 = &x.1 * &inv;
            }
        }
        Scalar::Rational(_) => {
            let mut den = BigInt::one();
            let mut num = BigInt::zero();
            for (_, c) in t.iter() {
                let r = c.as_rational().unwrap();
                den = den.lcm(r.denom());
                num = num.gcd(r.numer());
            }
            let mut f = BigRational::new(den, num);
            if lead.signum() == Some(-1) {
                f = -f;
            }
            if !f.is_one() {
                let s = Scalar::Rational(f);
                for x in t.iter_mut() {
                    x.1 = &x.1 * &s;
                }
            }
        }
    }
}

fn make_monic(t: &mut Terms) {
    if let Some(inv) = t.first().map(|x| x.1.inv().expect("nonzero")) {
        for x in t.iter_mut() {
            x.1 = &x.1 * &inv;
        }
    }
}

/// Multipliers `(a, c)` with `a·p_t − c·(t/lm g)·g` cancelling `p_t`,
/// chosen without fractions over `Q`.
fn cancel_multipliers(pc: &Scalar, gc: &Scalar) -> (Scalar, Scalar) {
    match (pc, gc) {
        (Scalar::Rational(p), Scalar::Rational(g)) if p.is_integer() && g.is_integer() => {
            let d = p.numer().gcd(g.numer());
            let mut a = g.numer() / &d;
            let mut c = p.numer() / &d;
            if a.is_negative() {
                a = -a;
                c = -c;
            }
            (
                Scalar::Rational(BigRational::from_integer(a)),
                Scalar::Rational(BigRational::from_integer(c)),
            )
        }
        _ => (pc.one_like(), pc.checked_div(gc).expect("nonzero leading coefficient")),
    }
}

/// Full reduction of `p` modulo `basis`. With `fraction_free` the result is a
/// nonzero scalar multiple of the true remainder.
fn reduce(mut p: Terms, basis: &[Terms], order: TermOrder, fraction_free: bool) -> Terms {
    let mut done: Terms = Vec::new();
    // `done` holds irreducible terms already split off; p holds the rest
    while let Some((m, c)) = p.first().cloned() {
        let divisor = basis
            .iter()
            .find(|g| g.first().is_some_and(|(gm, _)| gm.divides(&m)));
        match divisor {
            Some(g) => {
                let q = g[0].0.quotient_of(&m);
                let (a, mult) = if fraction_free {
                    cancel_multipliers(&c, &g[0].1)
                } else {
                    (c.one_like(), c.checked_div(&g[0].1).expect("nonzero"))
                };
                p = combine(&p, &a, &mult, &q, g, order);
                if !a.is_one() {
                    for x in done.iter_mut() {
                        x.1 = &x.1 * &a;
                    }
                }
            }
            None => {
                done.push(p.remove(0));
            }
        }
        if fraction_free && done.len() + p.len() > 0 && (done.len() + p.len()) % 64 == 0 {
            // keep coefficient size in check on long reductions
            let mut all: Terms = done.iter().cloned().chain(p.iter().cloned()).collect();
            normalize(&mut all);
            p = all.split_off(done.len());
            done = all;
        }
    }
    if fraction_free {
        normalize(&mut done);
    }
    done
}

fn s_polynomial(f: &Terms, g: &Terms, order: TermOrder, fraction_free: bool) -> Terms {
    let (fm, fc) = &f[0];
    let (gm, gc) = &g[0];
    let l = fm.lcm(gm);
    let uf = fm.quotient_of(&l);
    let ug = gm.quotient_of(&l);
    let (a, c) = if fraction_free {
        cancel_multipliers(fc, gc)
    } else {
        (gc.clone(), fc.clone())
    };
    // a·uf·f − c·ug·g
    let fs: Terms = f.iter().map(|(m, s)| (m.mul(&uf), s.clone())).collect();
    combine(&fs, &a, &c, &ug, g, order)
}

/// A reduced Gröbner basis. Generators are monic and sorted by increasing
/// leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    order: TermOrder,
    generators: Vec<Terms>,
}

/// Runs Buchberger's algorithm with the normal selection strategy and both
/// of Buchberger's criteria, then reduces the result.
pub fn buchberger(gens: &[Polynomial], order: TermOrder) -> Result<GroebnerBasis, GroebnerError> {
    let ring = gens.first().ok_or(GroebnerError::NoGenerators)?.ring().clone();
    if gens.iter().any(|g| **g.ring() != *ring) {
        return Err(GroebnerError::RingMismatch);
    }
    let fraction_free = ring.field().is_rationals();
    let mut basis: Vec<Terms> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();

    let add = |mut t: Terms, basis: &mut Vec<Terms>, pending: &mut BTreeSet<(usize, usize)>| {
        normalize(&mut t);
        let k = basis.len();
        basis.push(t);
        for i in 0..k {
            pending.insert((i, k));
        }
    };

    for g in gens {
        let t = reduce(sorted_terms(g, order), &basis, order, fraction_free);
        if !t.is_empty() {
            add(t, &mut basis, &mut pending);
        }
    }

    while !pending.is_empty() {
        // normal strategy: smallest lcm, degree first
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = basis[a.0][0].0.lcm(&basis[a.1][0].0);
                let lb = basis[b.0][0].0.lcm(&basis[b.1][0].0);
                la.degree()
                    .cmp(&lb.degree())
                    .then_with(|| order.cmp(&la, &lb))
                    .then_with(|| a.cmp(b))
            })
            .unwrap();
        pending.remove(&(i, j));
        let (mi, mj) = (&basis[i][0].0, &basis[j][0].0);
        if mi.is_coprime(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].0.divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order, fraction_free);
        let r = reduce(s, &basis, order, fraction_free);
        if !r.is_empty() {
            add(r, &mut basis, &mut pending);
        }
    }

    Ok(GroebnerBasis::reduce_basis(ring, order, basis))
}

impl GroebnerBasis {
    fn reduce_basis(ring: Arc<PolyRing>, order: TermOrder, basis: Vec<Terms>) -> GroebnerBasis {
        // drop elements whose leading monomial is divisible by another's
        let mut keep: Vec<Terms> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let redundant = basis.iter().enumerate().any(|(k, h)| {
                k != i
                    && h[0].0.divides(&g[0].0)
                    && (h[0].0 != g[0].0 || k < i)
            });
            if !redundant {
                keep.push(g.clone());
            }
        }
        for t in keep.iter_mut() {
            make_monic(t);
        }
        let mut reduced = Vec::with_capacity(keep.len());
        for i in 0..keep.len() {
            let others: Vec<Terms> = keep
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, t)| t.clone())
                .collect();
            let head = keep[i][0].clone();
            let tail = reduce(keep[i][1..].to_vec(), &others, order, false);
            let mut t = vec![head];
            t.extend(tail);
            reduced.push(t);
        }
        reduced.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
        GroebnerBasis {
            ring,
            order,
            generators: reduced,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn generators(&self) -> Vec<Polynomial> {
        self.generators
            .iter()
            .map(|t| Polynomial::from_terms(&self.ring, t.iter().cloned()))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators.iter().map(|t| t[0].0.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(|t| t[0].0.is_one())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let t = reduce(sorted_terms(f, self.order), &self.generators, self.order, false);
        Polynomial::from_terms(&self.ring, t)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Whether a monomial lies outside the leading-term ideal.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.generators.iter().any(|t| t[0].0.divides(m))
    }

    /// Checks Buchberger's criterion directly: every S-polynomial of the
    /// given generators reduces to zero. Works for any generator list.
    pub fn is_groebner_basis(gens: &[Polynomial], order: TermOrder) -> bool {
        let ts: Vec<Terms> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| sorted_terms(g, order))
            .collect();
        for i in 0..ts.len() {
            for j in i + 1..ts.len() {
                let s = s_polynomial(&ts[i], &ts[j], order, false);
                if !reduce(s, &ts, order, false).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// `B = k[T]/I` for a zero-dimensional ideal, with basis `e_1 = 1 < e_2 < …`
/// of standard monomials and one multiplication matrix per variable.
#[derive(Debug, Clone)]
pub struct QuotientAlgebra {
    gb: GroebnerBasis,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    mult: Vec<Matrix>,
}

pub fn quotient_algebra(gb: &GroebnerBasis) -> Result<QuotientAlgebra, GroebnerError> {
    QuotientAlgebra::new(gb.clone())
}

impl QuotientAlgebra {
    pub fn new(gb: GroebnerBasis) -> Result<QuotientAlgebra, GroebnerError> {
        let ring = gb.ring.clone();
        let n = ring.nvars();
        let lms = gb.leading_monomials();
        let mut bounds = vec![0u32; n];
        if !gb.is_unit_ideal() {
            for (i, b) in bounds.iter_mut().enumerate() {
                let pure = lms
                    .iter()
                    .filter(|m| m.pure_power_var() == Some(i))
                    .map(|m| m.exponents()[i])
                    .min();
                match pure {
                    Some(e) => *b = e,
                    None => {
                        return Err(GroebnerError::InfiniteDimensional {
                            variable: ring.var_names()[i].clone(),
                        })
                    }
                }
            }
        }
        let mut basis = Vec::new();
        if !gb.is_unit_ideal() {
            let mut exps = vec![0u32; n];
            loop {
                let m = Monomial::from_exponents(exps.clone());
                if gb.is_standard(&m) {
                    basis.push(m);
                }
                // odometer over the box
                let mut k = 0;
                while k < n {
                    exps[k] += 1;
                    if exps[k] < bounds[k] {
                        break;
                    }
                    exps[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }
        basis.sort_by(|a, b| gb.order.cmp(a, b));
        let index: HashMap<Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut alg = QuotientAlgebra {
            gb,
            basis,
            index,
            mult: Vec::new(),
        };
        let field = ring.field();
        let dim = alg.basis.len();
        let mut mult = Vec::with_capacity(n);
        for i in 0..n {
            let mut m = Matrix::zeros(field, dim, dim);
            for k in 0..dim {
                let prod = alg.basis[k].mul(&Monomial::var(n, i));
                let col = alg.monomial_coords_direct(&prod);
                for (r, v) in col.into_iter().enumerate() {
                    m[(r, k)] = v;
                }
            }
            mult.push(m);
        }
        alg.mult = mult;
        Ok(alg)
    }

    /// Groebner basis of `gens`, then the quotient.
    pub fn from_generators(gens: &[Polynomial], order: TermOrder) -> Result<QuotientAlgebra, GroebnerError> {
        QuotientAlgebra::new(buchberger(gens, order)?)
    }

    fn monomial_coords_direct(&self, m: &Monomial) -> Vec<Scalar> {
        if let Some(&i) = self.index.get(m) {
            let mut v = vec![self.field().zero(); self.dim()];
            v[i] = self.field().one();
            return v;
        }
        let p = Polynomial::monomial(&self.gb.ring, m.clone(), self.field().one());
        self.coords(&self.gb.normal_form(&p))
    }

    pub fn field(&self) -> crate::field::FieldDescriptor {
        self.gb.ring.field()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.gb.ring
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn mult_matrices(&self) -> &[Matrix] {
        &self.mult
    }

    /// Coordinates of an already reduced polynomial in the standard basis.
    pub fn coords(&self, reduced: &Polynomial) -> Vec<Scalar> {
        let mut v = vec![self.field().zero(); self.dim()];
        for (m, c) in reduced.terms() {
            let i = *self
                .index
                .get(m)
                .expect("polynomial is not in normal form");
            v[i] = c.clone();
        }
        v
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.gb.normal_form(f)
    }

    /// Coordinates of the class of `f` in `B`.
    pub fn reduce_to_coords(&self, f: &Polynomial) -> Vec<Scalar> {
        self.coords(&self.gb.normal_form(f))
    }

    pub fn from_coords(&self, v: &[Scalar]) -> Polynomial {
        Polynomial::from_terms(
            &self.gb.ring,
            self.basis.iter().cloned().zip(v.iter().cloned()),
        )
    }

    /// Matrix of `b ↦ g·b` on the standard basis.
    pub fn multiplication_matrix(&self, g: &Polynomial) -> Matrix {
        let dim = self.dim();
        let mut m = Matrix::zeros(self.field(), dim, dim);
        for k in 0..dim {
            let prod = g.mul_monomial(&self.basis[k]);
            for (r, v) in self.reduce_to_coords(&prod).into_iter().enumerate() {
                m[(r, k)] = v;
            }
        }
        m
    }
}

/// Coordinates of monomial normal forms in a quotient algebra, computed by
/// applying multiplication matrices and memoized.
pub struct MonomialReducer<'a> {
    alg: &'a QuotientAlgebra,
    memo: HashMap<Vec<u32>, Vec<Scalar>>,
}

impl<'a> MonomialReducer<'a> {
    pub fn new(alg: &'a QuotientAlgebra) -> MonomialReducer<'a> {
        MonomialReducer {
            alg,
            memo: HashMap::new(),
        }
    }

    pub fn coords(&mut self, exps: &[u32]) -> Vec<Scalar> {
        if let Some(v) = self.memo.get(exps) {
            return v.clone();
        }
        let v = match self.alg.basis_index(&Monomial::from_exponents(exps.to_vec())) {
            Some(i) => {
                let mut v = vec![self.alg.field().zero(); self.alg.dim()];
                v[i] = self.alg.field().one();
                v
            }
            None => {
                let i = exps.iter().position(|&e| e > 0).expect("1 is always standard");
                let mut prev = exps.to_vec();
                prev[i] -= 1;
                let pv = self.coords(&prev);
                self.alg.mult[i].mul_vec(&pv)
            }
        };
        self.memo.insert(exps.to_vec(), v.clone());
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;
    use crate::poly::{parse, parse_system};
    use proptest::prelude::*;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(FieldDescriptor::rationals(), vars).unwrap()
    }

    fn gb_of(text: &str, r: &Arc<PolyRing>) -> Vec<Polynomial> {
        buchberger(&parse_system(text, r).unwrap(), TermOrder::GrevLex)
            .unwrap()
            .generators()
    }

    #[test]
    fn orders() {
        let a = Monomial::from_exponents(vec![1, 0, 2]);
        let b = Monomial::from_exponents(vec![0, 3, 0]);
        assert_eq!(TermOrder::GrevLex.cmp(&a, &b), Ordering::Less);
        assert_eq!(TermOrder::Lex.cmp(&a, &b), Ordering::Greater);
        // x*z < y^2 in grevlex on x > y > z
        let xz = Monomial::from_exponents(vec![1, 0, 1]);
        let yy = Monomial::from_exponents(vec![0, 2, 0]);
        assert_eq!(TermOrder::GrevLex.cmp(&xz, &yy), Ordering::Less);
    }

    #[test]
    fn buchberger_examples() {
        let r = ring(&["x", "y"]);
        assert_eq!(gb_of("x^2; y", &r), parse_system("y; x^2", &r).unwrap());
        assert_eq!(gb_of("x - y; y^2", &r), parse_system("x - y; y^2", &r).unwrap());
        assert_eq!(gb_of("x^2 - 1; x + 1", &r), parse_system("x + 1", &r).unwrap());
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["x", "y"]);
        let g = buchberger(&parse_system("x^2", &r).unwrap(), TermOrder::GrevLex).unwrap();
        assert!(g.normal_form(&parse("x^3", &r).unwrap()).is_zero());
        let g = buchberger(&parse_system("x^2 - 2", &r).unwrap(), TermOrder::GrevLex).unwrap();
        assert_eq!(g.normal_form(&parse("x^2", &r).unwrap()), parse("2", &r).unwrap());
        let g = buchberger(&parse_system("x^2 - y; y^2", &r).unwrap(), TermOrder::GrevLex).unwrap();
        assert!(g.normal_form(&parse("x^2*y", &r).unwrap()).is_zero());
    }

    #[test]
    fn quotient_examples() {
        let r = ring(&["x"]);
        let a = QuotientAlgebra::from_generators(&parse_system("x^2", &r).unwrap(), TermOrder::GrevLex).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.basis()[0].is_one());
        let q = FieldDescriptor::rationals();
        assert_eq!(a.mult_matrices()[0], Matrix::from_i64(q, &[&[0, 0], &[1, 0]]));

        let a = QuotientAlgebra::from_generators(&parse_system("x^2 - 2", &r).unwrap(), TermOrder::GrevLex).unwrap();
        let x = parse("x", &r).unwrap();
        assert_eq!(a.multiplication_matrix(&x), Matrix::from_i64(q, &[&[0, 2], &[1, 0]]));
        assert_eq!(
            a.multiplication_matrix(&Polynomial::one(&r)),
            Matrix::identity(q, 2)
        );

        let r2 = ring(&["x", "y"]);
        let a = QuotientAlgebra::from_generators(
            &parse_system("x^2 + y^2 - 1; x - y", &r2).unwrap(),
            TermOrder::GrevLex,
        )
        .unwrap();
        assert_eq!(a.dim(), 2);
        assert!(matches!(
            QuotientAlgebra::from_generators(&parse_system("x*y", &r2).unwrap(), TermOrder::GrevLex),
            Err(GroebnerError::InfiniteDimensional { .. })
        ));
        let a = QuotientAlgebra::from_generators(&parse_system("x^3; y^2", &r2).unwrap(), TermOrder::Lex).unwrap();
        assert_eq!(a.dim(), 6);
        let a = QuotientAlgebra::from_generators(&parse_system("1; x", &r2).unwrap(), TermOrder::GrevLex).unwrap();
        assert_eq!(a.dim(), 0);
    }

    #[test]
    fn lex_triangular() {
        let r = ring(&["x", "y"]);
        let g = buchberger(&parse_system("x^2 + y^2 - 1; x - y", &r).unwrap(), TermOrder::Lex).unwrap();
        let gens = g.generators();
        assert_eq!(gens, parse_system("y^2 - 1/2; x - y", &r).unwrap());
    }

    #[test]
    fn monomial_reducer_agrees() {
        let r = ring(&["x", "y"]);
        let a = QuotientAlgebra::from_generators(
            &parse_system("x^2 - x*y + 3; y^3 - x + 1/2", &r).unwrap(),
            TermOrder::GrevLex,
        )
        .unwrap();
        let mut red = MonomialReducer::new(&a);
        for e in [[3u32, 0], [2, 2], [0, 5], [4, 4]] {
            let p = Polynomial::monomial(&r, Monomial::from_exponents(e.to_vec()), r.field().one());
            assert_eq!(red.coords(&e), a.reduce_to_coords(&p));
        }
    }

    fn random_system(r: &Arc<PolyRing>, seed: &[(usize, usize, i64)], degs: &[u32]) -> Vec<Polynomial> {
        let n = r.nvars();
        let field = r.field();
        (0..n)
            .map(|i| {
                let mut p = Polynomial::monomial(r, {
                    let mut e = vec![0; n];
                    e[i] = degs[i];
                    Monomial::from_exponents(e)
                }, field.one());
                for &(k, v, c) in seed {
                    if k % n != i {
                        continue;
                    }
                    // monomial of degree below degs[i] from v
                    let mut e = vec![0u32; n];
                    let mut rem = v as u32 % degs[i];
                    let mut j = 0;
                    while rem > 0 {
                        e[j % n] += 1;
                        rem -= 1;
                        j += v + 1;
                    }
                    p.add_term(Monomial::from_exponents(e), field.from_i64(c));
                }
                p
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn quotient_properties(
            seed in prop::collection::vec((0usize..6, 0usize..9, -4i64..5), 0..10),
            degs in prop::collection::vec(1u32..4, 2),
            mix in -3i64..4,
            prime in prop::bool::ANY,
        ) {
            let field = if prime { FieldDescriptor::prime(7).unwrap() } else { FieldDescriptor::rationals() };
            let r = PolyRing::new(field, &["x", "y"]).unwrap();
            let mut sys = random_system(&r, &seed, &degs);
            // mix in a top-degree cross term
            let top = &sys[1] + &sys[0].scale(&field.from_i64(mix));
            if degs[0] <= degs[1] {
                sys[1] = top;
            }
            let a = QuotientAlgebra::from_generators(&sys, TermOrder::GrevLex).unwrap();
            prop_assert_eq!(a.dim() as u32, degs[0] * degs[1]);
            let ms = a.mult_matrices();
            prop_assert_eq!(ms[0].mul(&ms[1]), ms[1].mul(&ms[0]));
            let gb = a.groebner_basis();
            prop_assert!(GroebnerBasis::is_groebner_basis(&gb.generators(), TermOrder::GrevLex));
            for f in &sys {
                prop_assert!(gb.contains(f));
            }
            let f = &sys[0] * &parse("x*y + 2", &r).unwrap();
            let g = &parse("x^3 - y", &r).unwrap() + &sys[1];
            let nf = gb.normal_form(&f);
            prop_assert_eq!(gb.normal_form(&nf), nf.clone());
            prop_assert_eq!(
                gb.normal_form(&(&f * &g)),
                gb.normal_form(&(&nf * &gb.normal_form(&g)))
            );
        }
    }
}
