//! Homogeneous polynomials in Chern roots and Schur coefficient extraction.

use super::partition::Partition;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;

use super::intpoly::IntPoly;

/// Dense storage is used up to this many slots.
const DENSE_LIMIT: usize = 8_000_000;
const DENSE_MAX_VARS: usize = 6;

#[derive(Debug, Clone)]
enum Repr {
    /// Indexed by the first `nvars - 1` exponents in radix `degree + 1`;
    /// the last exponent is implied by homogeneity.
    Dense(Vec<BigInt>),
    Sparse(HashMap<Vec<u32>, BigInt>),
}

/// A homogeneous integer polynomial in `nvars` Chern roots.
#[derive(Debug, Clone)]
pub struct ChernRootPoly {
    nvars: usize,
    degree: u32,
    repr: Repr,
}

fn dense_len(nvars: usize, degree: u32) -> Option<usize> {
    let base = degree as usize + 1;
    let mut n: usize = 1;
    for _ in 1..nvars {
        n = n.checked_mul(base)?;
    }
    Some(n)
}

impl ChernRootPoly {
    /// The constant 1; `final_degree` selects the storage.
    pub fn one(nvars: usize, final_degree: u32) -> ChernRootPoly {
        assert!(nvars >= 1, "need at least one root");
        let dense = nvars <= DENSE_MAX_VARS
            && dense_len(nvars, final_degree).is_some_and(|n| n <= DENSE_LIMIT);
        let repr = if dense {
            Repr::Dense(vec![BigInt::one()])
        } else {
            let mut m = HashMap::new();
            m.insert(vec![0; nvars], BigInt::one());
            Repr::Sparse(m)
        };
        ChernRootPoly { nvars, degree: 0, repr }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.repr, Repr::Dense(_))
    }

    fn decode(&self, mut idx: usize, degree: u32, out: &mut [u32]) {
        let base = degree as usize + 1;
        let k = self.nvars;
        let mut sum = 0u32;
        for slot in out.iter_mut().take(k - 1) {
            *slot = (idx % base) as u32;
            idx /= base;
            sum += *slot;
        }
        out[k - 1] = degree.wrapping_sub(sum);
    }

    fn encode(nvars: usize, degree: u32, exps: &[u32]) -> usize {
        let base = degree as usize + 1;
        let mut idx = 0usize;
        for i in (0..nvars - 1).rev() {
            idx = idx * base + exps[i] as usize;
        }
        idx
    }

    /// Multiplies by `Σ c_j x_j`.
    pub fn mul_linear(&mut self, coeffs: &[i64]) {
        assert_eq!(coeffs.len(), self.nvars, "linear form length mismatch");
        let k = self.nvars;
        let new_deg = self.degree + 1;
        match &self.repr {
            Repr::Dense(old) => {
                let mut out = vec![BigInt::zero(); dense_len(k, new_deg).expect("dense size")];
                let mut exps = vec![0u32; k];
                for (idx, c) in old.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    self.decode(idx, self.degree, &mut exps);
                    for (j, &a) in coeffs.iter().enumerate() {
                        if a == 0 {
                            continue;
                        }
                        exps[j] += 1;
                        let t = Self::encode(k, new_deg, &exps);
                        out[t] += c * a;
                        exps[j] -= 1;
                    }
                }
                self.repr = Repr::Dense(out);
            }
            Repr::Sparse(old) => {
                let mut out: HashMap<Vec<u32>, BigInt> = HashMap::with_capacity(old.len() * 2);
                for (e, c) in old {
                    for (j, &a) in coeffs.iter().enumerate() {
                        if a == 0 {
                            continue;
                        }
                        let mut f = e.clone();
                        f[j] += 1;
                        *out.entry(f).or_default() += c * a;
                    }
                }
                out.retain(|_, v| !v.is_zero());
                self.repr = Repr::Sparse(out);
            }
        }
        self.degree = new_deg;
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        assert_eq!(exps.len(), self.nvars, "exponent length mismatch");
        if exps.iter().map(|&e| e as u64).sum::<u64>() != self.degree as u64 {
            return BigInt::zero();
        }
        match &self.repr {
            Repr::Dense(v) => v[Self::encode(self.nvars, self.degree, exps)].clone(),
            Repr::Sparse(m) => m.get(exps).cloned().unwrap_or_default(),
        }
    }

    pub fn to_int_poly(&self) -> IntPoly {
        let mut p = IntPoly::zero(self.nvars);
        match &self.repr {
            Repr::Dense(v) => {
                let mut exps = vec![0u32; self.nvars];
                for (idx, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    self.decode(idx, self.degree, &mut exps);
                    p.add_term(exps.clone(), c.clone());
                }
            }
            Repr::Sparse(m) => {
                for (e, c) in m {
                    p.add_term(e.clone(), c.clone());
                }
            }
        }
        p
    }

    /// Coefficient of the Schur polynomial `s_λ` when this polynomial is
    /// symmetric: the coefficient of `x^{λ+δ}` in `P · ∏_{i<j}(x_i - x_j)`.
    pub fn schur_coefficient(&self, lambda: &Partition) -> BigInt {
        let k = self.nvars;
        if lambda.len() > k || lambda.size() != self.degree as u64 {
            return BigInt::zero();
        }
        let target: Vec<i64> = (0..k).map(|i| lambda.part(i) as i64 + (k - 1 - i) as i64).collect();
        let mut total = BigInt::zero();
        let mut exps = vec![0u32; k];
        for_each_permutation(k, |perm, sign| {
            // Vandermonde term: x_i^{δ_{perm(i)}}, δ_j = k-1-j
            for i in 0..k {
                let e = target[i] - (k - 1 - perm[i]) as i64;
                if e < 0 {
                    return;
                }
                exps[i] = e as u32;
            }
            let c = self.coefficient(&exps);
            if sign > 0 {
                total += c;
            } else {
                total -= c;
            }
        });
        total
    }
}

/// Heap's algorithm, passing each permutation with its sign.
pub(crate) fn for_each_permutation<F: FnMut(&[usize], i32)>(k: usize, mut f: F) {
    let mut a: Vec<usize> = (0..k).collect();
    let mut c = vec![0usize; k];
    let mut sign = 1;
    f(&a, sign);
    let mut i = 1;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            sign = -sign;
            f(&a, sign);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// All exponent vectors of length `k` summing to `total`.
pub fn compositions(total: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn rec(left: u32, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a;
            rec(left - a, i + 1, cur, out);
        }
    }
    if k == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, 0, &mut vec![0; k], &mut out);
    out
}

/// `∏_{|m| = a} (Σ m_j x_j)` over all multisets of size `a` from `k` roots:
/// the top Chern class of `Sym^a` of a rank-`k` bundle with roots `x_j`.
pub fn sym_power_top_chern(k: usize, degrees: &[u32]) -> ChernRootPoly {
    let forms: Vec<Vec<u32>> = degrees.iter().flat_map(|&a| compositions(a, k)).collect();
    let mut p = ChernRootPoly::one(k, forms.len() as u32);
    for m in &forms {
        let c: Vec<i64> = m.iter().map(|&x| x as i64).collect();
        p.mul_linear(&c);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_signs() {
        let mut count = 0;
        let mut total = 0;
        for_each_permutation(4, |_, s| {
            count += 1;
            total += s;
        });
        assert_eq!(count, 24);
        assert_eq!(total, 0);
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 2).len(), 4);
        assert_eq!(compositions(5, 4).len(), 56);
    }

    #[test]
    fn dense_and_sparse_agree() {
        let forms = [[1i64, 2, 0], [0, 1, 1], [3, 0, 1], [1, 1, 1]];
        let mut d = ChernRootPoly::one(3, 4);
        let mut s = ChernRootPoly { nvars: 3, degree: 0, repr: Repr::Sparse([(vec![0, 0, 0], BigInt::one())].into()) };
        for f in &forms {
            d.mul_linear(f);
            s.mul_linear(f);
        }
        assert!(d.is_dense() && !s.is_dense());
        assert_eq!(d.to_int_poly(), s.to_int_poly());
    }

    #[test]
    fn schur_of_known_products() {
        // (x+y)^2 = s_2 + s_11
        let mut p = ChernRootPoly::one(2, 2);
        p.mul_linear(&[1, 1]);
        p.mul_linear(&[1, 1]);
        assert_eq!(p.schur_coefficient(&Partition::new(vec![2])), BigInt::one());
        assert_eq!(p.schur_coefficient(&Partition::new(vec![1, 1])), BigInt::one());
        // x y = s_11
        let mut q = ChernRootPoly::one(2, 2);
        q.mul_linear(&[1, 0]);
        q.mul_linear(&[0, 1]);
        assert_eq!(q.schur_coefficient(&Partition::new(vec![2])), BigInt::zero());
        assert_eq!(q.schur_coefficient(&Partition::new(vec![1, 1])), BigInt::one());
    }
}
