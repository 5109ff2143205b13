//! Schubert calculus on `Gr(k, k+s)` by the Pieri rule.

use super::intpoly::IntPoly;
use super::partition::Partition;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A class in `H*(Gr(k, k+s))` in the Schur basis, truncated to the box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurExpansion {
    rows: usize,
    cols: u32,
    coeffs: BTreeMap<Partition, BigInt>,
}

impl SchurExpansion {
    pub fn one(rows: usize, cols: u32) -> SchurExpansion {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Partition::empty(), BigInt::one());
        SchurExpansion { rows, cols, coeffs }
    }

    pub fn coefficient(&self, p: &Partition) -> BigInt {
        self.coeffs.get(p).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigInt> {
        &self.coeffs
    }

    /// Multiplies by `e_r = s_{1^r}`.
    pub fn mul_elementary(&mut self, r: usize) {
        if r == 0 {
            return;
        }
        let mut out: BTreeMap<Partition, BigInt> = BTreeMap::new();
        for (lam, c) in &self.coeffs {
            for mu in lam.add_vertical_strip(r, self.rows, self.cols) {
                *out.entry(mu).or_default() += c;
            }
        }
        out.retain(|_, v| !v.is_zero());
        self.coeffs = out;
    }

    /// Degree of the point class.
    pub fn top_degree(&self) -> u64 {
        self.rows as u64 * self.cols as u64
    }

    /// Coefficient of the point class.
    pub fn integral(&self) -> BigInt {
        self.coefficient(&Partition::rectangle(self.rows, self.cols))
    }
}

/// `∫_{Gr(k, k+s)} ∏ c_i^{a_i}` where `c_i` are the Chern classes of the
/// dual tautological bundle and `a[i-1]` is the exponent of `c_i`.
pub fn integrate_chern_monomial(k: usize, s: u32, a: &[u32]) -> BigInt {
    let deg: u64 = a.iter().enumerate().map(|(i, &x)| (i as u64 + 1) * x as u64).sum();
    if deg != k as u64 * s as u64 || a.len() > k && a[k..].iter().any(|&x| x > 0) {
        return BigInt::zero();
    }
    let mut cls = SchurExpansion::one(k, s);
    // large strips first keeps intermediate expansions small
    for (i, &x) in a.iter().enumerate().rev() {
        for _ in 0..x {
            cls.mul_elementary(i + 1);
            if cls.coeffs.is_empty() {
                return BigInt::zero();
            }
        }
    }
    cls.integral()
}

/// Integrates a polynomial in `e_1, …, e_k` (variable `i` is `e_{i+1}`).
pub fn integrate_elementary_poly(k: usize, s: u32, p: &IntPoly) -> BigInt {
    p.terms()
        .iter()
        .map(|(e, c)| c * integrate_chern_monomial(k, s, e))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_space() {
        // ∫_{P^4} h^4 = 1
        assert_eq!(integrate_chern_monomial(1, 4, &[4]), BigInt::one());
        assert_eq!(integrate_chern_monomial(1, 4, &[3]), BigInt::zero());
    }

    #[test]
    fn gr24() {
        // σ_1^4 = 2 on Gr(2,4); σ_1^2 σ_11 = 1; σ_11^2 = 1
        assert_eq!(integrate_chern_monomial(2, 2, &[4]), BigInt::from(2));
        assert_eq!(integrate_chern_monomial(2, 2, &[2, 1]), BigInt::one());
        assert_eq!(integrate_chern_monomial(2, 2, &[0, 2]), BigInt::one());
        // degree of Gr(2,5) in Plücker embedding is 5
        assert_eq!(integrate_chern_monomial(2, 3, &[6]), BigInt::from(5));
        // Gr(3,6): 42
        assert_eq!(integrate_chern_monomial(3, 3, &[9]), BigInt::from(42));
    }
}
