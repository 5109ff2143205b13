//! Grothendieck–Witt valued counts of `d`-planes on complete intersections.

use crate::charnum::{self, bundle_rank, grassmannian_dim, CharNumError};
use crate::field::{FieldDescriptor, SquareClass};
use crate::gw::{GwClass, GwInvariants};
use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt;
use thiserror::Error;

/// `d`-planes in a general complete intersection of the given degrees in `P^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneCountQuery {
    pub d: u32,
    pub n: u32,
    pub degrees: Vec<u32>,
    pub field: FieldDescriptor,
}

impl PlaneCountQuery {
    pub fn new(d: u32, n: u32, degrees: Vec<u32>, field: FieldDescriptor) -> Result<PlaneCountQuery, CountError> {
        if d >= n {
            return Err(CountError::InvalidQuery(format!("need d < n, got d = {d}, n = {n}")));
        }
        if degrees.is_empty() || degrees.contains(&0) {
            return Err(CountError::InvalidQuery("degrees must be a nonempty list of positive integers".into()));
        }
        Ok(PlaneCountQuery { d, n, degrees, field })
    }

    pub fn over_rationals(d: u32, n: u32, degrees: Vec<u32>) -> Result<PlaneCountQuery, CountError> {
        PlaneCountQuery::new(d, n, degrees, FieldDescriptor::rationals())
    }
}

impl fmt::Display for PlaneCountQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degs: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        write!(f, "d = {}, n = {}, degrees = ({}) over {}", self.d, self.n, degs.join(","), self.field)
    }
}

/// Both orientability conditions, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientabilityReport {
    /// `Σ C(n_i + d, d)`.
    pub bundle_rank: u64,
    /// `(d+1)(n-d)`.
    pub grassmannian_dim: u64,
    /// `Σ n_i C(n_i + d, d)/(d+1) + n + 1`.
    pub parity_sum: BigRational,
    pub rank_ok: bool,
    pub parity_ok: bool,
}

impl OrientabilityReport {
    pub fn orientable(&self) -> bool {
        self.rank_ok && self.parity_ok
    }

    pub fn reasons(&self) -> Vec<String> {
        vec![
            format!(
                "rank condition: {} {} {}",
                self.bundle_rank,
                if self.rank_ok { "=" } else { "!=" },
                self.grassmannian_dim
            ),
            format!(
                "parity condition: {} is {}",
                self.parity_sum,
                if self.parity_ok { "an even integer" } else { "not an even integer" }
            ),
        ]
    }
}

impl fmt::Display for OrientabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.reasons().join("; "))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CountError {
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("bundle is not relatively orientable: {0}")]
    NotOrientable(OrientabilityReport),
    #[error("n_C = {n_c} and n_R = {n_r} have different parity")]
    ParityMismatch { n_r: BigInt, n_c: BigInt },
    #[error("|n_R| = |{n_r}| exceeds n_C = {n_c}")]
    SignatureBound { n_r: BigInt, n_c: BigInt },
    #[error(transparent)]
    CharNum(#[from] CharNumError),
}

pub fn check_orientable(q: &PlaneCountQuery) -> OrientabilityReport {
    let d = q.d as u64;
    let rank = bundle_rank(q.d, &q.degrees);
    let dim = grassmannian_dim(q.d, q.n);
    let mut sum = BigRational::from_integer(BigInt::from(q.n as u64 + 1));
    for &a in &q.degrees {
        let c = binomial(a as u64 + d, d);
        sum += BigRational::new(BigInt::from(a as u64) * BigInt::from(c), BigInt::from(d + 1));
    }
    let parity_ok = sum.is_integer() && sum.to_integer().is_even();
    OrientabilityReport {
        bundle_rank: rank,
        grassmannian_dim: dim,
        parity_sum: sum,
        rank_ok: rank == dim,
        parity_ok,
    }
}

/// `(n_C + n_R)/2 ⟨1⟩ + (n_C − n_R)/2 ⟨−1⟩`.
pub fn gw_count_from_topology(n_r: &BigInt, n_c: &BigInt, field: FieldDescriptor) -> Result<GwClass, CountError> {
    if (n_c - n_r).is_odd() {
        return Err(CountError::ParityMismatch { n_r: n_r.clone(), n_c: n_c.clone() });
    }
    if n_r.abs() > *n_c {
        return Err(CountError::SignatureBound { n_r: n_r.clone(), n_c: n_c.clone() });
    }
    let two = BigInt::from(2);
    let mut class = GwClass::zero(field);
    class.add_class(SquareClass::one(field), (n_c + n_r) / &two);
    class.add_class(SquareClass::minus_one(field), (n_c - n_r) / &two);
    Ok(class)
}

#[derive(Debug, Clone)]
pub struct CountReport {
    pub query: PlaneCountQuery,
    pub orientability: OrientabilityReport,
    pub n_r: BigInt,
    pub n_c: BigInt,
    pub gw_class: GwClass,
    pub invariants: GwInvariants,
    pub caveats: Vec<String>,
}

impl CountReport {
    pub fn orientable(&self) -> bool {
        self.orientability.orientable()
    }
}

fn caveats(q: &PlaneCountQuery) -> Vec<String> {
    let mut out = vec![
        "applies to a general complete intersection of these degrees".to_string(),
        "requires 2 to be invertible in the base field".to_string(),
    ];
    let p = q.field.characteristic();
    if p != 0 {
        let max = q.degrees.iter().copied().max().unwrap_or(0) as u64;
        if p <= max {
            out.push(format!(
                "characteristic {p} does not exceed the largest degree {max}; the splitting argument assumes it does not divide 2·n_i!"
            ));
        }
        if p % 4 == 1 {
            out.push(format!("-1 is a square in F_{p}, so the two classes coincide"));
        }
    }
    out
}

/// Enriched count of `d`-planes.
pub fn count_d_planes(q: &PlaneCountQuery) -> Result<CountReport, CountError> {
    let orientability = check_orientable(q);
    if !orientability.orientable() {
        return Err(CountError::NotOrientable(orientability));
    }
    let n_c = charnum::complex_euler_number(q.d, q.n, &q.degrees)?;
    let n_r = charnum::real_witt_euler_number(q.d, q.n, &q.degrees)?;
    let gw_class = gw_count_from_topology(&n_r, &n_c, q.field)?;
    debug_assert!(gw_class.rank() == n_c);
    let invariants = gw_class.invariants();
    Ok(CountReport {
        query: q.clone(),
        orientability,
        n_r,
        n_c,
        gw_class,
        invariants,
        caveats: caveats(q),
    })
}

/// True when every coefficient sits on `⟨1⟩` or `⟨−1⟩`.
pub fn lies_in_minus_one_span(class: &GwClass) -> bool {
    let f = class.field();
    class
        .terms()
        .all(|(c, m)| m.is_zero() || c == &SquareClass::one(f) || c == &SquareClass::minus_one(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(d: u32, n: u32, degs: &[u32]) -> PlaneCountQuery {
        PlaneCountQuery::over_rationals(d, n, degs.to_vec()).unwrap()
    }

    #[test]
    fn orientability() {
        let r = check_orientable(&q(1, 3, &[3]));
        assert!(r.orientable());
        assert_eq!(r.parity_sum, BigRational::from_integer(10.into()));
        let r = check_orientable(&q(3, 8, &[3]));
        assert!(r.orientable());
        assert_eq!(r.parity_sum, BigRational::from_integer(24.into()));
        let r = check_orientable(&q(1, 4, &[4]));
        assert!(!r.rank_ok);
        assert!(!r.orientable());
        assert!(!check_orientable(&q(2, 5, &[1, 1, 1])).orientable());
    }

    #[test]
    fn topology_combinator() {
        let f = FieldDescriptor::rationals();
        let c = gw_count_from_topology(&189.into(), &321489.into(), f).unwrap();
        assert_eq!(c.to_string(), "160839⟨1⟩ + 160650⟨−1⟩");
        assert_eq!(gw_count_from_topology(&1.into(), &1.into(), f).unwrap(), GwClass::one(f));
        let c = gw_count_from_topology(&3.into(), &27.into(), f).unwrap();
        assert_eq!(c.rank(), 27.into());
        assert_eq!(c.signature(), Some(3.into()));
        assert!(matches!(
            gw_count_from_topology(&2.into(), &27.into(), f),
            Err(CountError::ParityMismatch { .. })
        ));
        assert!(matches!(
            gw_count_from_topology(&(-29).into(), &27.into(), f),
            Err(CountError::SignatureBound { .. })
        ));
    }

    #[test]
    fn plane_counts() {
        let r = count_d_planes(&q(1, 3, &[3])).unwrap();
        assert_eq!(r.gw_class.to_string(), "15⟨1⟩ + 12⟨−1⟩");
        assert!(lies_in_minus_one_span(&r.gw_class));
        let r = count_d_planes(&q(1, 5, &[1, 1, 1, 1])).unwrap();
        assert_eq!(r.gw_class, GwClass::one(FieldDescriptor::rationals()));
        let r = count_d_planes(&q(0, 1, &[2])).unwrap();
        assert_eq!(r.gw_class.simplify(true), GwClass::hyperbolic(FieldDescriptor::rationals()).simplify(true));
        assert!(matches!(count_d_planes(&q(1, 4, &[4])), Err(CountError::NotOrientable(_))));
    }

    #[test]
    fn prime_field_merges_classes() {
        let f = FieldDescriptor::prime(5).unwrap();
        let r = count_d_planes(&PlaneCountQuery::new(1, 3, vec![3], f).unwrap()).unwrap();
        assert_eq!(r.gw_class.rank(), 27.into());
        assert_eq!(r.gw_class.terms().count(), 1);
        assert!(r.caveats.iter().any(|c| c.contains("coincide")));
    }
}
