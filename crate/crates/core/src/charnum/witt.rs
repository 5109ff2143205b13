//! Witt-valued Euler numbers through rank-2 splitting.
//!
//! The dual tautological bundle of an odd-dimensional plane `d = 2r+1`
//! is modelled by `r+1` rank-2 blocks with Euler classes `e_1, …, e_{r+1}`.

use super::chern::compositions;
use super::intpoly::IntPoly;
use super::schubert::integrate_chern_monomial;
use super::CharNumError;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Splitting of `Sym^a` of a rank-2 block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymSplitting {
    /// Weights of the rank-2 pieces, descending.
    pub rank_two_weights: Vec<u32>,
    pub has_rank_one: bool,
}

pub fn witt_sym_euler_class(a: u32) -> SymSplitting {
    SymSplitting {
        rank_two_weights: (0..a.div_ceil(2)).map(|l| a - 2 * l).collect(),
        has_rank_one: a % 2 == 0,
    }
}

/// Euler class of a tensor product of rank-2 pieces `(weight, position)`
/// in `nvars` block variables.
pub fn box_euler(pieces: &[(u32, usize)], nvars: usize) -> Result<IntPoly, CharNumError> {
    let Some(&(c1, j1)) = pieces.first() else {
        return Err(CharNumError::EmptyBox);
    };
    if pieces.len() == 1 {
        if c1 % 2 == 0 {
            return Err(CharNumError::EvenSingleWeight(c1));
        }
        return Ok(IntPoly::var(nvars, j1).scale(&BigInt::from(c1)));
    }
    let rest = &pieces[1..];
    let mut out = IntPoly::one(nvars);
    for signs in 0u64..(1u64 << rest.len()) {
        let mut coeffs = vec![0i64; nvars];
        coeffs[j1] += c1 as i64;
        for (t, &(c, j)) in rest.iter().enumerate() {
            let s = if signs >> t & 1 == 1 { -1 } else { 1 };
            coeffs[j] += s * c as i64;
        }
        out = out.mul(&IntPoly::linear(&coeffs));
    }
    Ok(out)
}

/// Total split Euler class of `Sym^a` of the sum of `nvars` rank-2 blocks.
/// Zero when the bundle has an odd-rank summand.
pub fn sym_split_euler(a: u32, nvars: usize) -> Result<IntPoly, CharNumError> {
    let mut total = IntPoly::one(nvars);
    for comp in compositions(a, nvars) {
        let splits: Vec<SymSplitting> = comp.iter().map(|&x| witt_sym_euler_class(x)).collect();
        // each position offers its rank-2 weights, or the rank-1 piece (None)
        let options: Vec<Vec<Option<u32>>> = splits
            .iter()
            .map(|s| {
                let mut o: Vec<Option<u32>> = s.rank_two_weights.iter().map(|&w| Some(w)).collect();
                if s.has_rank_one {
                    o.push(None);
                }
                o
            })
            .collect();
        let mut idx = vec![0usize; nvars];
        loop {
            let mut pieces: Vec<(u32, usize)> = idx
                .iter()
                .enumerate()
                .filter_map(|(j, &i)| options[j][i].map(|w| (w, j)))
                .collect();
            // largest weight first fixes the orientation of each box
            pieces.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            if pieces.is_empty() {
                return Ok(IntPoly::zero(nvars));
            }
            match box_euler(&pieces, nvars) {
                Ok(p) => total = total.mul(&p),
                Err(CharNumError::EvenSingleWeight(_)) => return Ok(IntPoly::zero(nvars)),
                Err(e) => return Err(e),
            }
            // odometer
            let mut j = 0;
            while j < nvars {
                idx[j] += 1;
                if idx[j] < options[j].len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == nvars {
                break;
            }
        }
    }
    Ok(total)
}

/// A polynomial in `p_1, …, p_r` and `e`, keyed by `(b, [a_1..a_r])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PontryaginEulerPoly {
    r: usize,
    terms: BTreeMap<(u32, Vec<u32>), BigInt>,
}

impl PontryaginEulerPoly {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn terms(&self) -> &BTreeMap<(u32, Vec<u32>), BigInt> {
        &self.terms
    }

    /// Weighted degree with `deg p_i = 4i`, `deg e = 2(r+1)`.
    pub fn weighted_degrees(&self) -> Vec<u64> {
        let de = 2 * (self.r as u64 + 1);
        self.terms
            .keys()
            .map(|(b, a)| {
                *b as u64 * de + a.iter().enumerate().map(|(i, &x)| 4 * (i as u64 + 1) * x as u64).sum::<u64>()
            })
            .collect()
    }

    /// Rewrites a split Euler polynomial in `e_1..e_{r+1}` using
    /// `p_i = σ_i(e²)` and `e = e_1⋯e_{r+1}`.
    pub fn from_split(split: &IntPoly) -> Result<PontryaginEulerPoly, CharNumError> {
        let k = split.nvars();
        let r = k - 1;
        let mut eps = None;
        for e in split.terms().keys() {
            let p = e[0] % 2;
            if e.iter().any(|x| x % 2 != p) || eps.is_some_and(|q| q != p) {
                return Err(CharNumError::ParityResidue(e.clone()));
            }
            eps = Some(p);
        }
        let eps = eps.unwrap_or(0);
        let mut squares = IntPoly::zero(k);
        for (e, c) in split.terms() {
            squares.add_term(e.iter().map(|x| (x - eps) / 2).collect(), c.clone());
        }
        let elem = squares.to_elementary().ok_or(CharNumError::NotSymmetric)?;
        let mut terms = BTreeMap::new();
        for (a, c) in elem.terms() {
            terms.insert((2 * a[r] + eps, a[..r].to_vec()), c.clone());
        }
        Ok(PontryaginEulerPoly { r, terms })
    }
}

impl fmt::Display for PontryaginEulerPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((b, a), c)| {
                let mut m = vec![c.to_string()];
                for (i, &x) in a.iter().enumerate() {
                    if x > 0 {
                        m.push(format!("p{}^{}", i + 1, x));
                    }
                }
                if *b > 0 {
                    m.push(format!("e^{b}"));
                }
                m.join("*")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The integer `c` with `e^b ∏ p_i^{a_i} = c·e^{t}` in top degree, where
/// `t = n - d` is the fibre codimension and `a` has length `r`.
pub fn grassmannian_integral(b: u32, a: &[u32], r: usize, t: u32) -> Result<BigInt, CharNumError> {
    if b % 2 != t % 2 {
        return Err(CharNumError::ParityMismatch { b, t });
    }
    let k = r + 1;
    let s = t / 2;
    let bp = b / 2;
    let deg: u64 = bp as u64 * k as u64 + a.iter().enumerate().map(|(i, &x)| (i as u64 + 1) * x as u64).sum::<u64>();
    if a.len() > r || deg != k as u64 * s as u64 {
        return Err(CharNumError::DegreeMismatch { got: deg, expected: k as u64 * s as u64 });
    }
    let mut exps = a.to_vec();
    exps.resize(k, 0);
    exps[r] = bp;
    Ok(integrate_chern_monomial(k, s, &exps))
}

/// Real Witt-valued Euler number of `⊕ Sym^{n_i} S*` on the Grassmannian
/// of `d`-planes in `P^n`.
pub fn real_witt_euler_number(d: u32, n: u32, degrees: &[u32]) -> Result<BigInt, CharNumError> {
    super::check_rank(d, n, degrees)?;
    if d % 2 == 0 || degrees.iter().any(|&x| x % 2 == 0) {
        return Ok(BigInt::zero());
    }
    let k = (d as usize).div_ceil(2);
    let mut split = IntPoly::one(k);
    for &a in degrees {
        let factor = sym_split_euler(a, k)?;
        if !factor.is_symmetric() {
            return Err(CharNumError::NotSymmetric);
        }
        split = split.mul(&factor);
    }
    let pont = PontryaginEulerPoly::from_split(&split)?;
    let t = n - d;
    let mut total = BigInt::zero();
    for ((b, a), c) in pont.terms() {
        total += c * grassmannian_integral(*b, a, k - 1, t)?;
    }
    Ok(total)
}

/// `(2b+1)!!`.
pub fn double_factorial_odd(b: u32) -> BigInt {
    (0..=b).fold(BigInt::one(), |acc, i| acc * BigInt::from(2 * i + 1))
}
