//! Dense univariate polynomials over a [`FieldDescriptor`].

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::field::{FieldDescriptor, Scalar};

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly {
    field: FieldDescriptor,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: FieldDescriptor, mut coeffs: Vec<Scalar>) -> UniPoly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn from_i64s(field: FieldDescriptor, coeffs: &[i64]) -> UniPoly {
        UniPoly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: FieldDescriptor) -> UniPoly {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldDescriptor) -> UniPoly {
        UniPoly::new(field, vec![field.one()])
    }

    /// The polynomial `x`.
    pub fn x(field: FieldDescriptor) -> UniPoly {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_i64(i as i64))
            .collect();
        UniPoly::new(self.field, coeffs)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            self.field,
            (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect(),
        )
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            self.field,
            (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect(),
        )
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::new(self.field, out)
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|a| -a).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.leading().unwrap().inv().expect("nonzero leading");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &(&c * b);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(self.field, quot), UniPoly::new(self.field, rem))
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("nonzero leading")),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact quotient; panics when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Yun's squarefree decomposition: monic `g_m` with `self ~ ∏ g_m^m`,
    /// listed as `(g_m, m)` for the nonconstant factors. Characteristic-zero
    /// algorithm; over `F_p` it is valid when the degree is below `p`.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().is_none_or(|d| d == 0) {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0);
        let mut c = df.exact_div(&a0);
        let mut d = c.sub(&b.derivative());
        let mut m = 1;
        while b.degree().is_some_and(|deg| deg > 0) {
            let a = b.gcd(&d);
            if a.degree().is_some_and(|deg| deg > 0) {
                out.push((a.clone(), m));
            }
            b = b.exact_div(&a);
            c = d.exact_div(&a);
            d = c.sub(&b.derivative());
            m += 1;
        }
        out
    }

    /// `self · other mod modulus`.
    pub fn mul_mod(&self, other: &UniPoly, modulus: &UniPoly) -> UniPoly {
        self.mul(other).rem(modulus)
    }

    /// `x^e mod modulus` by square-and-multiply.
    pub fn x_pow_mod(e: &BigUint, modulus: &UniPoly) -> UniPoly {
        let field = modulus.field;
        let mut result = UniPoly::one(field).rem(modulus);
        let base = UniPoly::x(field).rem(modulus);
        for i in (0..e.bits()).rev() {
            result = result.mul_mod(&result, modulus);
            if e.bit(i) {
                result = result.mul_mod(&base, modulus);
            }
        }
        result
    }

    /// Rabin's irreducibility test over `F_p`; `None` over `Q`.
    pub fn is_irreducible_mod_p(&self) -> Option<bool> {
        let p = match self.field.characteristic() {
            0 => return None,
            p => p,
        };
        let n = match self.degree() {
            None | Some(0) => return Some(false),
            Some(1) => return Some(true),
            Some(n) => n,
        };
        let f = self.monic();
        let x = UniPoly::x(self.field);
        let pn = BigUint::from(p).pow(n as u32);
        if !UniPoly::x_pow_mod(&pn, &f).sub(&x.rem(&f)).is_zero() {
            return Some(false);
        }
        for q in prime_divisors(n) {
            let e = BigUint::from(p).pow((n / q) as u32);
            let h = UniPoly::x_pow_mod(&e, &f).sub(&x.rem(&f));
            if f.gcd(&h).degree() != Some(0) {
                return Some(false);
            }
        }
        Some(true)
    }

    /// Whether the polynomial has a root in the base field. Over `F_p` this is
    /// `gcd(f, x^p - x) ≠ 1`; over `Q` the rational root theorem is applied
    /// after clearing denominators.
    pub fn has_root_in_field(&self) -> bool {
        let n = match self.degree() {
            None => return true,
            Some(0) => return false,
            Some(n) => n,
        };
        let p = self.field.characteristic();
        if p != 0 {
            let f = self.monic();
            let h = UniPoly::x_pow_mod(&BigUint::from(p), &f).sub(&UniPoly::x(self.field).rem(&f));
            return f.gcd(&h).degree().is_some_and(|d| d > 0);
        }
        // integer coefficients
        let mut den = num_bigint::BigInt::one();
        for c in &self.coeffs {
            let r = c.as_rational().expect("rational field");
            den = num_integer::lcm(den, r.denom().clone());
        }
        let ints: Vec<num_bigint::BigInt> = self
            .coeffs
            .iter()
            .map(|c| {
                let r = c.as_rational().unwrap();
                r.numer() * (&den / r.denom())
            })
            .collect();
        if ints[0].is_zero() {
            return true;
        }
        let lead = ints[n].clone();
        let cons = ints[0].clone();
        let candidates_p = small_divisors(&cons);
        let candidates_q = small_divisors(&lead);
        let (Some(ps), Some(qs)) = (candidates_p, candidates_q) else {
            return false;
        };
        for a in &ps {
            for b in &qs {
                for sign in [1i64, -1] {
                    let r = num_rational::BigRational::new(
                        num_bigint::BigInt::from(sign) * a,
                        b.clone(),
                    );
                    let s = Scalar::Rational(r);
                    if self.eval(&s).is_zero() {
                        return true;
                    }
                }
            }
        }
        false
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Positive divisors of `|n|` when `|n|` fits comfortably for enumeration.
fn small_divisors(n: &num_bigint::BigInt) -> Option<Vec<num_bigint::BigInt>> {
    use num_traits::ToPrimitive;
    let v = n.magnitude().to_u64()?;
    if v > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(num_bigint::BigInt::from(d));
            if d * d != v {
                out.push(num_bigint::BigInt::from(v / d));
            }
        }
        d += 1;
    }
    Some(out)
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
