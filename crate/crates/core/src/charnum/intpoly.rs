//! Sparse integer polynomials in a fixed number of variables.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> IntPoly {
        IntPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> IntPoly {
        IntPoly::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> IntPoly {
        let mut p = IntPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> IntPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = IntPoly::zero(nvars);
        p.add_term(e, BigInt::one());
        p
    }

    /// `Σ c_i x_i`.
    pub fn linear(coeffs: &[i64]) -> IntPoly {
        let n = coeffs.len();
        let mut p = IntPoly::zero(n);
        for (i, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        assert_eq!(exps.len(), self.nvars, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Largest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u64).sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().map(|&x| x as u64).sum::<u64>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = IntPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> IntPoly {
        let mut out = IntPoly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Renames variable `i` to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; self.nvars];
            for (i, &x) in e.iter().enumerate() {
                f[perm[i]] = x;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Invariance under all adjacent transpositions.
    pub fn is_symmetric(&self) -> bool {
        (0..self.nvars.saturating_sub(1)).all(|i| {
            let mut perm: Vec<usize> = (0..self.nvars).collect();
            perm.swap(i, i + 1);
            &self.permute(&perm) == self
        })
    }

    /// Every exponent of variable `i` has parity `p`.
    pub fn parity_in(&self, i: usize) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e[i] % 2);
        let first = it.next()?;
        it.all(|x| x == first).then_some(first)
    }

    /// Rewrites a symmetric polynomial as a polynomial in the elementary
    /// symmetric functions; the result's variable `i` stands for `e_{i+1}`.
    /// Returns `None` if the input is not symmetric.
    pub fn to_elementary(&self) -> Option<IntPoly> {
        let k = self.nvars;
        let elem: Vec<IntPoly> = (1..=k).map(|i| elementary(k, i)).collect();
        let mut rest = self.clone();
        let mut out = IntPoly::zero(k);
        while let Some((lead, c)) = rest.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if lead.windows(2).any(|w| w[0] < w[1]) {
                return None;
            }
            let b: Vec<u32> = (0..k)
                .map(|i| lead[i] - if i + 1 < k { lead[i + 1] } else { 0 })
                .collect();
            let mut prod = IntPoly::constant(k, c.clone());
            for (i, &bi) in b.iter().enumerate() {
                if bi > 0 {
                    prod = prod.mul(&elem[i].pow(bi));
                }
            }
            rest = rest.sub(&prod);
            out.add_term(b, c);
        }
        Some(out)
    }
}

/// `e_i(x_1, …, x_k)`.
pub fn elementary(k: usize, i: usize) -> IntPoly {
    let mut p = IntPoly::zero(k);
    if i > k {
        return p;
    }
    fn rec(k: usize, start: usize, left: usize, cur: &mut Vec<u32>, p: &mut IntPoly) {
        if left == 0 {
            p.add_term(cur.clone(), BigInt::one());
            return;
        }
        for j in start..k {
            if k - j < left {
                break;
            }
            cur[j] = 1;
            rec(k, j + 1, left - 1, cur, p);
            cur[j] = 0;
        }
    }
    rec(k, 0, i, &mut vec![0; k], &mut p);
    p
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, x) })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_symmetry() {
        let x = IntPoly::var(2, 0);
        let y = IntPoly::var(2, 1);
        let s = x.add(&y);
        let sq = s.pow(2);
        assert_eq!(sq.coefficient(&[1, 1]), BigInt::from(2));
        assert!(sq.is_symmetric());
        assert!(!x.is_symmetric());
        assert!(sq.is_homogeneous());
        assert_eq!(sq.to_string(), "x1^2 + 2*x1*x2 + x2^2");
    }

    #[test]
    fn elementary_conversion() {
        // x^2 + y^2 = e1^2 - 2 e2
        let x = IntPoly::var(2, 0);
        let y = IntPoly::var(2, 1);
        let p = x.pow(2).add(&y.pow(2));
        let e = p.to_elementary().unwrap();
        assert_eq!(e.coefficient(&[2, 0]), BigInt::from(1));
        assert_eq!(e.coefficient(&[0, 1]), BigInt::from(-2));
        assert_eq!(e.num_terms(), 2);
        assert!(x.to_elementary().is_none());
        assert_eq!(elementary(3, 2).num_terms(), 3);
    }
}
