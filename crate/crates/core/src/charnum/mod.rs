//! Characteristic numbers of `⊕ Sym^{n_i} S*` on Grassmannians.

pub mod chern;
pub mod intpoly;
pub mod partition;
pub mod schubert;
pub mod witt;

use num_bigint::BigInt;
use num_integer::binomial;
use thiserror::Error;

pub use chern::{sym_power_top_chern, ChernRootPoly};
pub use intpoly::IntPoly;
pub use partition::Partition;
pub use schubert::{integrate_chern_monomial, SchurExpansion};
pub use witt::{
    box_euler, grassmannian_integral, real_witt_euler_number, witt_sym_euler_class, PontryaginEulerPoly,
    SymSplitting,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharNumError {
    #[error("rank mismatch: bundle rank {bundle} but Grassmannian dimension {dimension}")]
    RankMismatch { bundle: u64, dimension: u64 },
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("single rank-2 piece of even weight {0}")]
    EvenSingleWeight(u32),
    #[error("box product with no rank-2 pieces")]
    EmptyBox,
    #[error("split Euler polynomial is not symmetric")]
    NotSymmetric,
    #[error("monomial {0:?} breaks the uniform parity pattern")]
    ParityResidue(Vec<u32>),
    #[error("degree mismatch: monomial has degree {got}, top degree is {expected}")]
    DegreeMismatch { got: u64, expected: u64 },
    #[error("parity mismatch: e-exponent {b} against codimension {t}")]
    ParityMismatch { b: u32, t: u32 },
}

/// Rank of `⊕ Sym^{n_i}` of a rank `d+1` bundle.
pub fn bundle_rank(d: u32, degrees: &[u32]) -> u64 {
    degrees
        .iter()
        .map(|&a| binomial(a as u64 + d as u64, d as u64))
        .sum()
}

/// Dimension of the Grassmannian of `d`-planes in `P^n`.
pub fn grassmannian_dim(d: u32, n: u32) -> u64 {
    (d as u64 + 1) * (n as u64 - d as u64)
}

pub(crate) fn check_rank(d: u32, n: u32, degrees: &[u32]) -> Result<(), CharNumError> {
    if d >= n {
        return Err(CharNumError::InvalidQuery(format!("need d < n, got d = {d}, n = {n}")));
    }
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(CharNumError::InvalidQuery("degrees must be positive and nonempty".into()));
    }
    let bundle = bundle_rank(d, degrees);
    let dimension = grassmannian_dim(d, n);
    if bundle != dimension {
        return Err(CharNumError::RankMismatch { bundle, dimension });
    }
    Ok(())
}

/// Number of `d`-planes on a general complete intersection of the given
/// degrees in complex `P^n`, by the bialternant method.
pub fn complex_euler_number(d: u32, n: u32, degrees: &[u32]) -> Result<BigInt, CharNumError> {
    check_rank(d, n, degrees)?;
    let k = d as usize + 1;
    let p = sym_power_top_chern(k, degrees);
    Ok(p.schur_coefficient(&Partition::rectangle(k, n - d)))
}

/// The same number through elementary symmetric functions and Pieri.
pub fn complex_euler_number_pieri(d: u32, n: u32, degrees: &[u32]) -> Result<BigInt, CharNumError> {
    check_rank(d, n, degrees)?;
    let k = d as usize + 1;
    let mut p = IntPoly::one(k);
    for &a in degrees {
        for m in chern::compositions(a, k) {
            let c: Vec<i64> = m.iter().map(|&x| x as i64).collect();
            p = p.mul(&IntPoly::linear(&c));
        }
    }
    let elem = p.to_elementary().ok_or(CharNumError::NotSymmetric)?;
    Ok(schubert::integrate_elementary_poly(k, n - d, &elem))
}
