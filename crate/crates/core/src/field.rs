//! Exact scalars over the rationals and odd prime fields, and square classes.
//!
//! A [`Scalar`] carries enough information to do arithmetic on its own: a
//! rational is a reduced `BigRational`, a residue remembers its modulus.
//! Mixing scalars from different fields is a programming error and panics.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default trial-division bound used when extracting squarefree parts.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("modulus {0} is too large (must be below 2^32)")]
    ModulusTooLarge(u64),
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("malformed field specification {0:?} (expected \"Q\" or \"Fp:<prime>\")")]
    BadSpec(String),
    #[error("square class of zero is undefined")]
    ZeroInput,
    #[error("cofactor {0} survived trial division and could not be certified squarefree")]
    CompositeResidual(BigInt),
    #[error("denominator not invertible modulo {0}")]
    NotInvertible(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Rationals,
    PrimeField(u64),
}

/// The base field `k`: either the rationals or `F_p` with `p` an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    kind: FieldKind,
}

impl FieldDescriptor {
    pub const fn rationals() -> Self {
        FieldDescriptor {
            kind: FieldKind::Rationals,
        }
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if p >= 1 << 32 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotOddPrime(p));
        }
        Ok(FieldDescriptor {
            kind: FieldKind::PrimeField(p),
        })
    }

    /// Parses the CLI spelling: `Q` or `Fp:<prime>`.
    pub fn parse(spec: &str) -> Result<Self, FieldError> {
        let s = spec.trim();
        if s == "Q" || s == "QQ" {
            return Ok(Self::rationals());
        }
        let rest = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("F:"))
            .ok_or_else(|| FieldError::BadSpec(spec.to_string()))?;
        let p: u64 = rest
            .trim()
            .parse()
            .map_err(|_| FieldError::BadSpec(spec.to_string()))?;
        Self::prime(p)
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn is_rationals(&self) -> bool {
        self.kind == FieldKind::Rationals
    }

    /// Zero for the rationals, `p` otherwise.
    pub fn characteristic(&self) -> u64 {
        match self.kind {
            FieldKind::Rationals => 0,
            FieldKind::PrimeField(p) => p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldKind::PrimeField(p) => Scalar::Residue {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldKind::PrimeField(p) => Scalar::Residue {
                value: reduce_bigint(v, p),
                modulus: p,
            },
        }
    }

    pub fn from_rational(&self, v: &BigRational) -> Result<Scalar, FieldError> {
        match self.kind {
            FieldKind::Rationals => Ok(Scalar::Rational(v.clone())),
            FieldKind::PrimeField(p) => {
                let num = reduce_bigint(v.numer(), p);
                let den = reduce_bigint(v.denom(), p);
                if den == 0 {
                    return Err(FieldError::NotInvertible(p));
                }
                Ok(Scalar::Residue {
                    value: mul_mod(num, inv_mod(den, p), p),
                    modulus: p,
                })
            }
        }
    }

    /// True when `a` lives in this field.
    pub fn contains(&self, a: &Scalar) -> bool {
        match (self.kind, a) {
            (FieldKind::Rationals, Scalar::Rational(_)) => true,
            (FieldKind::PrimeField(p), Scalar::Residue { modulus, .. }) => p == *modulus,
            _ => false,
        }
    }

    /// Least quadratic nonresidue modulo `p`; `None` over the rationals.
    pub fn least_nonresidue(&self) -> Option<u64> {
        match self.kind {
            FieldKind::Rationals => None,
            FieldKind::PrimeField(p) => (2..p).find(|&q| pow_mod(q, (p - 1) / 2, p) != 1),
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldDescriptor {
        match self {
            Scalar::Rational(_) => FieldDescriptor::rationals(),
            Scalar::Residue { modulus, .. } => FieldDescriptor {
                kind: FieldKind::PrimeField(*modulus),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.field().one()
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Exact division; `None` when dividing by zero.
    pub fn checked_div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self * &i)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Sign of a rational (`-1`, `0`, `1`); `None` for residues.
    pub fn signum(&self) -> Option<i32> {
        match self {
            Scalar::Rational(r) => Some(if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            }),
            Scalar::Residue { .. } => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Residue { .. } => None,
        }
    }

    /// Floating-point image; residues map to their representative in `[0, p)`.
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => rational_to_f64(r),
            Scalar::Residue { value, .. } => *value as f64,
        }
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Scale both parts down to a common magnitude before dividing.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 900).max(0) as usize;
    let shift_d = (db - 900).max(0) as usize;
    let n = (r.numer() >> shift_n).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift_d).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift_n as i64 - shift_d as i64) as i32)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!(
        "arithmetic between scalars of different fields ({} and {})",
        a.field(),
        b.field()
    )
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Residue { value: a, modulus },
                Scalar::Residue {
                    value: b,
                    modulus: m2,
                },
            ) if modulus == m2 => Scalar::Residue {
                value: (a + b) % modulus,
                modulus: *modulus,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (
                Scalar::Residue { value: a, modulus },
                Scalar::Residue {
                    value: b,
                    modulus: m2,
                },
            ) if modulus == m2 => Scalar::Residue {
                value: (a + modulus - b) % modulus,
                modulus: *modulus,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Residue { value: a, modulus },
                Scalar::Residue {
                    value: b,
                    modulus: m2,
                },
            ) if modulus == m2 => Scalar::Residue {
                value: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// Canonical representative of `a·(k*)²`.
///
/// Over the rationals this is a signed squarefree integer; over `F_p` it is
/// either `1` or the least quadratic nonresidue.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SquareClass {
    Rational(BigInt),
    Residue { rep: u64, modulus: u64 },
}

impl SquareClass {
    pub fn one(field: FieldDescriptor) -> SquareClass {
        match field.kind {
            FieldKind::Rationals => SquareClass::Rational(BigInt::one()),
            FieldKind::PrimeField(p) => SquareClass::Residue { rep: 1, modulus: p },
        }
    }

    /// The class of `-1`.
    pub fn minus_one(field: FieldDescriptor) -> SquareClass {
        square_class(&field.from_i64(-1)).expect("-1 is a unit")
    }

    pub fn field(&self) -> FieldDescriptor {
        match self {
            SquareClass::Rational(_) => FieldDescriptor::rationals(),
            SquareClass::Residue { modulus, .. } => FieldDescriptor {
                kind: FieldKind::PrimeField(*modulus),
            },
        }
    }

    pub fn representative(&self) -> Scalar {
        match self {
            SquareClass::Rational(n) => Scalar::Rational(BigRational::from_integer(n.clone())),
            SquareClass::Residue { rep, modulus } => Scalar::Residue {
                value: *rep,
                modulus: *modulus,
            },
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            SquareClass::Rational(n) => n.is_one(),
            SquareClass::Residue { rep, .. } => *rep == 1,
        }
    }

    /// Class of the product of representatives.
    pub fn mul(&self, other: &SquareClass) -> Result<SquareClass, FieldError> {
        square_class(&(self.representative() * other.representative()))
    }

    /// Label used in JSON: the integer for the rationals, `"1"` or `"q"` for `F_p`.
    pub fn label(&self) -> String {
        match self {
            SquareClass::Rational(n) => n.to_string(),
            SquareClass::Residue { rep, .. } => {
                if *rep == 1 {
                    "1".to_string()
                } else {
                    "q".to_string()
                }
            }
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquareClass::Rational(n) => write!(f, "{n}"),
            SquareClass::Residue { rep, .. } => write!(f, "{rep}"),
        }
    }
}

/// Square class of a nonzero scalar, using the default trial bound.
pub fn square_class(a: &Scalar) -> Result<SquareClass, FieldError> {
    square_class_with_bound(a, DEFAULT_TRIAL_BOUND)
}

pub fn square_class_with_bound(a: &Scalar, bound: u64) -> Result<SquareClass, FieldError> {
    if a.is_zero() {
        return Err(FieldError::ZeroInput);
    }
    match a {
        Scalar::Rational(r) => {
            let n = r.numer() * r.denom();
            let sign = n.sign();
            let part = squarefree_part(&n.abs(), bound)?;
            Ok(SquareClass::Rational(if sign == Sign::Minus {
                -part
            } else {
                part
            }))
        }
        Scalar::Residue { value, modulus } => {
            let rep = if pow_mod(*value, (modulus - 1) / 2, *modulus) == 1 {
                1
            } else {
                a.field().least_nonresidue().expect("odd prime has a nonresidue")
            };
            Ok(SquareClass::Residue {
                rep,
                modulus: *modulus,
            })
        }
    }
}

/// Square class that never fails on large cofactors. Returns the class and
/// whether its representative is certified squarefree; an uncertified
/// representative still lies in the correct class but may carry a square
/// factor, so comparisons should go through [`same_square_class`].
pub fn square_class_partial(a: &Scalar) -> Result<(SquareClass, bool), FieldError> {
    match a {
        Scalar::Rational(r) if !r.is_zero() => {
            let n = r.numer() * r.denom();
            let (part, rest) = squarefree_split(&n.abs(), DEFAULT_TRIAL_BOUND);
            let certified = rest.is_none();
            let mut v = part * rest.unwrap_or_else(BigInt::one);
            if n.is_negative() {
                v = -v;
            }
            Ok((SquareClass::Rational(v), certified))
        }
        _ => square_class(a).map(|c| (c, true)),
    }
}

/// True iff `a` is zero or a nonzero square in its field.
pub fn is_square(a: &Scalar) -> bool {
    match a {
        Scalar::Rational(r) => {
            if r.is_negative() {
                return false;
            }
            is_perfect_square(r.numer()) && is_perfect_square(r.denom())
        }
        Scalar::Residue { value, modulus } => {
            *value == 0 || pow_mod(*value, (modulus - 1) / 2, *modulus) == 1
        }
    }
}

/// True iff `a` and `b` are nonzero and lie in the same square class.
/// Needs no factorization.
pub fn same_square_class(a: &Scalar, b: &Scalar) -> bool {
    !a.is_zero() && !b.is_zero() && is_square(&(a * b))
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

fn primes_up_to(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

fn default_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(DEFAULT_TRIAL_BOUND))
}

/// Squarefree part of a positive integer via trial division to `bound`.
///
/// After trial division the cofactor has only prime factors above `bound`. A
/// cofactor below `bound^3` that is not a perfect square is `p` or `p·q`
/// and hence squarefree; anything larger is reported as a residual.
fn squarefree_part(n: &BigInt, bound: u64) -> Result<BigInt, FieldError> {
    match squarefree_split(n, bound) {
        (part, None) => Ok(part),
        (_, Some(rest)) => Err(FieldError::CompositeResidual(rest)),
    }
}

/// Squarefree part with any uncertified cofactor returned separately.
fn squarefree_split(n: &BigInt, bound: u64) -> (BigInt, Option<BigInt>) {
    let owned;
    let primes: &[u64] = if bound == DEFAULT_TRIAL_BOUND {
        default_primes()
    } else {
        owned = primes_up_to(bound);
        &owned
    };
    let mut rest = n.clone();
    let mut part = BigInt::one();
    for &p in primes {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut odd = false;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            odd = !odd;
        }
        if odd {
            part *= &pb;
        }
    }
    if rest.is_one() {
        return (part, None);
    }
    let b = BigInt::from(bound);
    if &b * &b >= rest {
        // every prime up to sqrt(rest) was tried, so rest is prime
        return (part * rest, None);
    }
    if is_perfect_square(&rest) {
        return (part, None);
    }
    if rest < &b * &b * &b {
        return (part * rest, None);
    }
    (part, Some(rest))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn rational_square_classes() {
        assert_eq!(square_class(&q(8, 1)).unwrap(), SquareClass::Rational(2.into()));
        assert_eq!(square_class(&q(-4, 9)).unwrap(), SquareClass::Rational((-1).into()));
        assert_eq!(square_class(&q(18, 5)).unwrap(), SquareClass::Rational(10.into()));
        assert_eq!(square_class(&q(0, 1)), Err(FieldError::ZeroInput));
    }

    #[test]
    fn prime_field_square_classes() {
        // squares mod 7 by brute force
        let squares: Vec<u64> = (1..7u64).map(|x| x * x % 7).collect();
        assert!(!squares.contains(&3));
        let f7 = FieldDescriptor::prime(7).unwrap();
        assert_eq!(f7.least_nonresidue(), Some(3));
        assert_eq!(
            square_class(&f7.from_i64(3)).unwrap(),
            SquareClass::Residue { rep: 3, modulus: 7 }
        );
        assert_eq!(
            square_class(&f7.from_i64(2)).unwrap(),
            SquareClass::Residue { rep: 1, modulus: 7 }
        );
    }

    #[test]
    fn squares() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        assert!(is_square(&f5.from_i64(4)));
        assert!(!is_square(&f5.from_i64(2)));
        assert!(is_square(&q(49, 81)));
        assert!(!is_square(&q(-1, 1)));
        assert!(is_square(&q(0, 1)));
    }

    #[test]
    fn field_specs() {
        assert_eq!(FieldDescriptor::parse("Q").unwrap(), FieldDescriptor::rationals());
        assert_eq!(FieldDescriptor::parse("Fp:7").unwrap().characteristic(), 7);
        assert_eq!(FieldDescriptor::parse("Fp:2"), Err(FieldError::CharacteristicTwo));
        assert_eq!(FieldDescriptor::parse("Fp:9"), Err(FieldError::NotOddPrime(9)));
        assert!(FieldDescriptor::parse("R").is_err());
    }

    #[test]
    fn large_prime_cofactors() {
        // 1000003 is prime and above the trial bound.
        let p = 1_000_003i64;
        assert_eq!(
            square_class(&q(p * 4, 1)).unwrap(),
            SquareClass::Rational(p.into())
        );
        let big = BigInt::from(p) * BigInt::from(p) * BigInt::from(1_000_033i64);
        let s = Scalar::Rational(BigRational::from_integer(big));
        assert!(matches!(square_class(&s), Err(FieldError::CompositeResidual(_))));
        let small = square_class_with_bound(&q(p * p, 1), 100).unwrap();
        assert!(small.is_trivial());
    }

    #[test]
    fn residue_from_rational() {
        let f7 = FieldDescriptor::prime(7).unwrap();
        let half = f7.from_rational(&BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(half, f7.from_i64(4));
        assert!(f7.from_rational(&BigRational::new(1.into(), 7.into())).is_err());
    }

    fn arb_rational() -> impl Strategy<Value = Scalar> {
        (-10_000i64..10_000, 1i64..5_000).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn class_ignores_square_factors(a in arb_rational(), b in arb_rational()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let ab2 = &a * &(&b * &b);
            prop_assert_eq!(square_class(&ab2).unwrap(), square_class(&a).unwrap());
        }

        #[test]
        fn class_is_multiplicative(a in arb_rational(), b in arb_rational()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let ca = square_class(&a).unwrap();
            let cb = square_class(&b).unwrap();
            prop_assert_eq!(ca.mul(&cb).unwrap(), square_class(&(&a * &b)).unwrap());
        }

        #[test]
        fn residue_class_is_multiplicative(a in 1u64..101, b in 1u64..101) {
            let f = FieldDescriptor::prime(101).unwrap();
            let (x, y) = (f.from_i64(a as i64), f.from_i64(b as i64));
            let lhs = square_class(&x).unwrap().mul(&square_class(&y).unwrap()).unwrap();
            prop_assert_eq!(lhs, square_class(&(&x * &y)).unwrap());
        }

        #[test]
        fn exact_arithmetic(a in any::<i64>(), b in any::<i64>(), c in 1i64..i64::MAX) {
            let a = Scalar::Rational(BigRational::new(a.into(), c.into()));
            let b = Scalar::Rational(BigRational::from_integer(b.into()));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
            }
        }
    }
}
