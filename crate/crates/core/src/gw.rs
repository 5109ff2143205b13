//! Symmetric bilinear forms, Grothendieck–Witt classes, trace forms and
//! symmetric complexes.
//!
//! Equality in `GW(k)` is decided here by the triple (rank, signature,
//! discriminant), with the signature only over `Q`. This is not a complete
//! invariant over `Q` (Hasse–Witt data is not computed), so comparisons are
//! "equal up to implemented invariants". Over `F_2` rank alone would be
//! complete, but characteristic 2 is rejected at field construction.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::field::{same_square_class, square_class_partial, FieldDescriptor, FieldError, Scalar, SquareClass};
use crate::matrix::Matrix;
use crate::poly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GwError {
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("form is degenerate")]
    DegenerateForm,
    #[error("element is zero in the extension")]
    ZeroElement,
    #[error("minimal polynomial is not squarefree (inseparable extension)")]
    NotSeparable,
    #[error("minimal polynomial must have positive degree")]
    ConstantModulus,
    #[error("incompatible pairing: {0}")]
    IncompatiblePairing(String),
    #[error("malformed complex: {0}")]
    MalformedComplex(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A symmetric bilinear form given by its Gram matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricForm {
    gram: Matrix,
}

impl SymmetricForm {
    pub fn new(gram: Matrix) -> Result<SymmetricForm, GwError> {
        if !gram.is_symmetric() {
            return Err(GwError::NotSymmetric);
        }
        Ok(SymmetricForm { gram })
    }

    pub fn diagonal(field: FieldDescriptor, entries: &[Scalar]) -> SymmetricForm {
        SymmetricForm {
            gram: Matrix::diagonal(field, entries),
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.gram.field()
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn determinant(&self) -> Scalar {
        self.gram.determinant()
    }

    pub fn is_degenerate(&self) -> bool {
        self.determinant().is_zero()
    }

    pub fn orthogonal_sum(&self, other: &SymmetricForm) -> SymmetricForm {
        let (a, b) = (self.dim(), other.dim());
        let mut g = Matrix::zeros(self.field(), a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                g[(i, j)] = self.gram[(i, j)].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                g[(a + i, a + j)] = other.gram[(i, j)].clone();
            }
        }
        SymmetricForm { gram: g }
    }

    /// The form `Pᵀ·G·P`.
    pub fn congruent(&self, p: &Matrix) -> SymmetricForm {
        SymmetricForm {
            gram: self.gram.congruent(p),
        }
    }
}

/// Result of [`diagonalize`]: `transformᵀ · gram · transform = diag(diagonal)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagonalization {
    pub diagonal: Vec<Scalar>,
    pub transform: Matrix,
}

/// Orthogonal basis by symmetric Gaussian elimination. When every remaining
/// diagonal entry vanishes, `u + v` with `⟨u, v⟩ ≠ 0` has self-pairing
/// `2⟨u, v⟩ ≠ 0` since the characteristic is odd.
pub fn diagonalize(form: &SymmetricForm) -> Result<Diagonalization, GwError> {
    let n = form.dim();
    let field = form.field();
    let mut a = form.gram.clone();
    let mut p = Matrix::identity(field, n);

    fn swap(a: &mut Matrix, p: &mut Matrix, i: usize, j: usize) {
        if i == j {
            return;
        }
        a.swap_rows(i, j);
        for r in 0..a.rows() {
            let t = a[(r, i)].clone();
            a[(r, i)] = a[(r, j)].clone();
            a[(r, j)] = t;
        }
        for r in 0..p.rows() {
            let t = p[(r, i)].clone();
            p[(r, i)] = p[(r, j)].clone();
            p[(r, j)] = t;
        }
    }

    // v_target += f·v_source
    fn add_multiple(a: &mut Matrix, p: &mut Matrix, target: usize, source: usize, f: &Scalar) {
        let n = a.rows();
        for r in 0..n {
            let t = &a[(r, source)] * f;
            a[(r, target)] += &t;
        }
        for c in 0..n {
            let t = &a[(source, c)] * f;
            a[(target, c)] += &t;
        }
        for r in 0..p.rows() {
            let t = &p[(r, source)] * f;
            p[(r, target)] += &t;
        }
    }

    for k in 0..n {
        if let Some(i) = (k..n).find(|&i| !a[(i, i)].is_zero()) {
            swap(&mut a, &mut p, k, i);
        } else {
            let pair = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_zero());
            let Some((i, j)) = pair else {
                return Err(GwError::DegenerateForm);
            };
            add_multiple(&mut a, &mut p, i, j, &field.one());
            swap(&mut a, &mut p, k, i);
        }
        let inv = a[(k, k)].inv().expect("nonzero pivot");
        for j in k + 1..n {
            if a[(k, j)].is_zero() {
                continue;
            }
            let f = -(&a[(k, j)] * &inv);
            add_multiple(&mut a, &mut p, j, k, &f);
        }
    }
    Ok(Diagonalization {
        diagonal: (0..n).map(|i| a[(i, i)].clone()).collect(),
        transform: p,
    })
}

/// Rank, signature (over `Q` only) and discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GwInvariants {
    pub rank: BigInt,
    pub signature: Option<BigInt>,
    /// Class of the determinant of a Gram matrix. Its representative may
    /// carry an undetected square factor when it is huge, so compare with
    /// [`GwInvariants::matches`].
    pub disc: SquareClass,
}

impl GwInvariants {
    /// Equality of all three invariants; discriminants are compared by
    /// testing whether their product is a square.
    pub fn matches(&self, other: &GwInvariants) -> bool {
        self.rank == other.rank
            && self.signature == other.signature
            && same_square_class(&self.disc.representative(), &other.disc.representative())
    }
}

impl fmt::Display for GwInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {}", self.rank)?;
        if let Some(s) = &self.signature {
            write!(f, ", signature {s}")?;
        }
        write!(f, ", disc {}", self.disc)
    }
}

pub fn form_invariants(form: &SymmetricForm) -> Result<GwInvariants, GwError> {
    let det = form.determinant();
    if det.is_zero() {
        return Err(GwError::DegenerateForm);
    }
    let signature = if form.field().is_rationals() {
        let d = diagonalize(form)?;
        Some(BigInt::from(
            d.diagonal
                .iter()
                .map(|x| x.signum().unwrap_or(0) as i64)
                .sum::<i64>(),
        ))
    } else {
        None
    };
    Ok(GwInvariants {
        rank: BigInt::from(form.dim()),
        signature,
        disc: square_class_partial(&det)?.0,
    })
}

/// A formal sum `Σ n_a⟨a⟩` over square classes.
///
/// Hyperbolic pairs `⟨a⟩ + ⟨-a⟩` are kept as they are unless
/// [`GwClass::simplify`] is asked to rewrite them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GwClass {
    field: FieldDescriptor,
    coeffs: BTreeMap<SquareClass, BigInt>,
}

impl GwClass {
    pub fn zero(field: FieldDescriptor) -> GwClass {
        GwClass {
            field,
            coeffs: BTreeMap::new(),
        }
    }

    /// `⟨1⟩`.
    pub fn one(field: FieldDescriptor) -> GwClass {
        GwClass::from_class(SquareClass::one(field), BigInt::one())
    }

    /// `h = ⟨1⟩ + ⟨-1⟩`.
    pub fn hyperbolic(field: FieldDescriptor) -> GwClass {
        let mut c = GwClass::one(field);
        c.add_class(SquareClass::minus_one(field), BigInt::one());
        c
    }

    pub fn from_class(class: SquareClass, mult: BigInt) -> GwClass {
        let mut c = GwClass::zero(class.field());
        c.add_class(class, mult);
        c
    }

    /// `⟨a⟩` for a nonzero scalar.
    pub fn from_scalar(a: &Scalar) -> Result<GwClass, GwError> {
        Ok(GwClass::from_class(square_class_partial(a)?.0, BigInt::one()))
    }

    pub fn from_diagonal(field: FieldDescriptor, entries: &[Scalar]) -> Result<GwClass, GwError> {
        let mut c = GwClass::zero(field);
        for e in entries {
            if e.is_zero() {
                return Err(GwError::DegenerateForm);
            }
            c.add_class(square_class_partial(e)?.0, BigInt::one());
        }
        Ok(c)
    }

    pub fn from_form(form: &SymmetricForm) -> Result<GwClass, GwError> {
        let d = diagonalize(form)?;
        GwClass::from_diagonal(form.field(), &d.diagonal)
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    /// Adds `mult·⟨class⟩`, merging with an existing key of the same class.
    pub fn add_class(&mut self, class: SquareClass, mult: BigInt) {
        if mult.is_zero() {
            return;
        }
        let key = if self.coeffs.contains_key(&class) {
            class
        } else {
            let rep = class.representative();
            self.coeffs
                .keys()
                .find(|k| same_square_class(&k.representative(), &rep))
                .cloned()
                .unwrap_or(class)
        };
        let entry = self.coeffs.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += mult;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn add(&self, other: &GwClass) -> GwClass {
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_class(k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, n: &BigInt) -> GwClass {
        let mut out = GwClass::zero(self.field);
        for (k, v) in &self.coeffs {
            out.add_class(k.clone(), v * n);
        }
        out
    }

    pub fn neg(&self) -> GwClass {
        self.scale(&BigInt::from(-1))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SquareClass, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, class: &SquareClass) -> BigInt {
        self.coeffs.get(class).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn rank(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn signature(&self) -> Option<BigInt> {
        if !self.field.is_rationals() {
            return None;
        }
        Some(
            self.coeffs
                .iter()
                .map(|(k, v)| match k {
                    SquareClass::Rational(r) if r.is_negative() => -v,
                    _ => v.clone(),
                })
                .sum(),
        )
    }

    /// Product of the representatives with odd multiplicity.
    pub fn discriminant(&self) -> SquareClass {
        let mut det = self.field.one();
        for (k, v) in &self.coeffs {
            if v.is_odd() {
                det = &det * &k.representative();
            }
        }
        square_class_partial(&det)
            .expect("product of units is a unit")
            .0
    }

    pub fn invariants(&self) -> GwInvariants {
        GwInvariants {
            rank: self.rank(),
            signature: self.signature(),
            disc: self.discriminant(),
        }
    }

    pub fn same_invariants(&self, other: &GwClass) -> bool {
        self.invariants().matches(&other.invariants())
    }

    /// Square-class normalization is maintained on insertion; with
    /// `rewrite_hyperbolic`, each pair `⟨a⟩ + ⟨-a⟩` with `a ≠ ±1` becomes
    /// `⟨1⟩ + ⟨-1⟩`. Rank and discriminant are unchanged, and so is the
    /// signature over `Q`.
    pub fn simplify(&self, rewrite_hyperbolic: bool) -> GwClass {
        let mut out = GwClass::zero(self.field);
        for (k, v) in &self.coeffs {
            out.add_class(k.clone(), v.clone());
        }
        if !rewrite_hyperbolic {
            return out;
        }
        let one = SquareClass::one(self.field);
        let minus_one = SquareClass::minus_one(self.field);
        let keys: Vec<SquareClass> = out.coeffs.keys().cloned().collect();
        for a in keys {
            if a == one || a == minus_one {
                continue;
            }
            let neg = -a.representative();
            let Some(b) = out
                .coeffs
                .keys()
                .find(|k| same_square_class(&k.representative(), &neg))
                .cloned()
            else {
                continue;
            };
            let (na, nb) = (out.coefficient(&a), out.coefficient(&b));
            if na.is_zero() || nb.is_zero() || na.is_positive() != nb.is_positive() {
                continue;
            }
            let m = if na.is_positive() { na.min(nb) } else { na.max(nb) };
            out.add_class(a.clone(), -m.clone());
            out.add_class(b, -m.clone());
            out.add_class(one.clone(), m.clone());
            out.add_class(minus_one.clone(), m);
        }
        out
    }
}

impl fmt::Display for GwClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&SquareClass, &BigInt)> = self.coeffs.iter().collect();
        terms.sort_by_key(|(k, _)| display_key(k));
        for (i, (k, v)) in terms.into_iter().enumerate() {
            let mag = v.abs();
            match (i, v.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "−")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " − ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "⟨{}⟩", k.to_string().replace('-', "−"))?;
        }
        Ok(())
    }
}

/// Display order: by absolute value of the representative, positive first.
fn display_key(k: &SquareClass) -> (BigInt, bool) {
    match k {
        SquareClass::Rational(n) => (n.abs(), n.is_negative()),
        SquareClass::Residue { rep, .. } => (BigInt::from(*rep), false),
    }
}

/// Warnings attached to a trace form that was computed anyway.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceFormWarning {
    /// The modulus factors, so `L` is a product of fields and the result is
    /// the orthogonal sum of their trace forms.
    Reducible,
    /// Irreducibility over `Q` was not decided (degree ≥ 4 without a linear factor).
    IrreducibilityUnchecked,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceForm {
    pub form: SymmetricForm,
    pub warnings: Vec<TraceFormWarning>,
}

/// `(x, y) ↦ Tr_{L/k}(a·x·y)` on `L = k[x]/(min_poly)` in the power basis.
pub fn trace_form(min_poly: &UniPoly, a: &UniPoly) -> Result<TraceForm, GwError> {
    let field = min_poly.field();
    let n = match min_poly.degree() {
        None | Some(0) => return Err(GwError::ConstantModulus),
        Some(n) => n,
    };
    if !min_poly.is_squarefree() {
        return Err(GwError::NotSeparable);
    }
    let a = a.rem(min_poly);
    if a.is_zero() {
        return Err(GwError::ZeroElement);
    }
    let mut warnings = Vec::new();
    match min_poly.is_irreducible_mod_p() {
        Some(false) => warnings.push(TraceFormWarning::Reducible),
        Some(true) => {}
        None => {
            if n >= 2 && min_poly.has_root_in_field() {
                warnings.push(TraceFormWarning::Reducible);
            } else if n >= 4 {
                warnings.push(TraceFormWarning::IrreducibilityUnchecked);
            }
        }
    }
    // traces of a·x^k for k < 2n-1, via the multiplication matrix of x
    let lead_inv = min_poly.leading().unwrap().inv().expect("nonzero");
    let mut mx = Matrix::zeros(field, n, n);
    for k in 0..n {
        if k + 1 < n {
            mx[(k + 1, k)] = field.one();
        } else {
            for r in 0..n {
                mx[(r, k)] = -(&min_poly.coeff(r) * &lead_inv);
            }
        }
    }
    let mut ma = Matrix::zeros(field, n, n);
    let mut pow = Matrix::identity(field, n);
    for k in 0..n {
        let c = a.coeff(k);
        if !c.is_zero() {
            ma = ma.add(&pow.scale(&c));
        }
        pow = mx.mul(&pow);
    }
    let mut traces = Vec::with_capacity(2 * n - 1);
    let mut cur = ma;
    for _ in 0..2 * n - 1 {
        traces.push(cur.trace());
        cur = mx.mul(&cur);
    }
    let mut g = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = traces[i + j].clone();
        }
    }
    Ok(TraceForm {
        form: SymmetricForm { gram: g },
        warnings,
    })
}

/// A bounded complex `E^{-m} → … → E^m` with pairings `B_i: E^i × E^{-i} → k`.
///
/// Conventions: `⟨x, y⟩ = xᵀ B_i y`; symmetry `B_{-i} = (-1)^i B_iᵀ`;
/// compatibility `⟨dx, y⟩ + (-1)^{|x|}⟨x, dy⟩ = 0`, i.e.
/// `D_iᵀ B_{i+1} + (-1)^i B_i D_{-i-1} = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricComplex {
    field: FieldDescriptor,
    m: i32,
    dims: Vec<usize>,
    /// `diffs[k]` is `D_{k-m}: E^{k-m} → E^{k-m+1}`.
    diffs: Vec<Matrix>,
    pairings: Vec<Matrix>,
}

impl SymmetricComplex {
    /// `dims`, `pairings` are indexed by degree `-m..=m`; `diffs` by `-m..m`.
    pub fn new(
        field: FieldDescriptor,
        m: i32,
        dims: Vec<usize>,
        diffs: Vec<Matrix>,
        pairings: Vec<Matrix>,
    ) -> Result<SymmetricComplex, GwError> {
        let len = (2 * m + 1) as usize;
        if m < 0 || dims.len() != len || pairings.len() != len || diffs.len() != len - 1 {
            return Err(GwError::MalformedComplex("wrong number of pieces".into()));
        }
        let c = SymmetricComplex {
            field,
            m,
            dims,
            diffs,
            pairings,
        };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), GwError> {
        for i in -self.m..self.m {
            let d = self.d(i);
            if d.rows() != self.dim(i + 1) || d.cols() != self.dim(i) {
                return Err(GwError::MalformedComplex(format!("differential {i} has wrong shape")));
            }
        }
        for i in -self.m..self.m - 1 {
            if !self.d(i + 1).mul(&self.d(i)).is_zero() {
                return Err(GwError::MalformedComplex(format!("d∘d ≠ 0 at degree {i}")));
            }
        }
        for i in -self.m..=self.m {
            let b = self.b(i);
            if b.rows() != self.dim(i) || b.cols() != self.dim(-i) {
                return Err(GwError::MalformedComplex(format!("pairing {i} has wrong shape")));
            }
            if !b.is_square() || b.determinant().is_zero() {
                return Err(GwError::IncompatiblePairing(format!("pairing {i} is degenerate")));
            }
            let sign = if i.rem_euclid(2) == 0 { self.field.one() } else { self.field.from_i64(-1) };
            if self.b(-i) != b.transpose().scale(&sign) {
                return Err(GwError::IncompatiblePairing(format!("pairing {i} is not graded-symmetric")));
            }
        }
        for i in -self.m..self.m {
            // D_i^T B_{i+1} + (-1)^i B_i D_{-i-1}
            let lhs = self.d(i).transpose().mul(&self.b(i + 1));
            let rhs = self.b(i).mul(&self.d(-i - 1));
            let total = if i.rem_euclid(2) == 0 { lhs.add(&rhs) } else { lhs.sub(&rhs) };
            if !total.is_zero() {
                return Err(GwError::IncompatiblePairing(format!(
                    "differential and pairing disagree at degree {i}"
                )));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn max_degree(&self) -> i32 {
        self.m
    }

    pub fn dim(&self, i: i32) -> usize {
        if i.abs() > self.m {
            0
        } else {
            self.dims[(i + self.m) as usize]
        }
    }

    /// `D_i`; the zero map outside the stored range.
    pub fn d(&self, i: i32) -> Matrix {
        if i < -self.m || i >= self.m {
            Matrix::zeros(self.field, self.dim(i + 1), self.dim(i))
        } else {
            self.diffs[(i + self.m) as usize].clone()
        }
    }

    pub fn b(&self, i: i32) -> Matrix {
        if i.abs() > self.m {
            Matrix::zeros(self.field, 0, 0)
        } else {
            self.pairings[(i + self.m) as usize].clone()
        }
    }

    pub fn homology_dim(&self, i: i32) -> usize {
        self.dim(i) - self.d(i).rank() - self.d(i - 1).rank()
    }

    /// The form induced by `B_0` on `H^0 = ker D_0 / im D_{-1}`, on a
    /// complement of the image inside the kernel.
    pub fn homology_form(&self) -> Result<SymmetricForm, GwError> {
        let n = self.dim(0);
        let kernel = self.d(0).kernel();
        let image = self.d(-1);
        let mut cols: Vec<Vec<Scalar>> = (0..image.cols()).map(|j| image.column(j)).collect();
        let n_img = cols.len();
        cols.extend(kernel);
        let mut stacked = Matrix::zeros(self.field, n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                stacked[(i, j)] = v.clone();
            }
        }
        let (_, pivots) = stacked.rref();
        let chosen: Vec<usize> = pivots.into_iter().filter(|&j| j >= n_img).collect();
        let mut basis = Matrix::zeros(self.field, n, chosen.len());
        for (k, &j) in chosen.iter().enumerate() {
            for i in 0..n {
                basis[(i, k)] = cols[j][i].clone();
            }
        }
        SymmetricForm::new(self.b(0).congruent(&basis))
    }
}

fn alternating_hyperbolic(field: FieldDescriptor, dims: impl Iterator<Item = (i32, usize)>) -> GwClass {
    let mut total = BigInt::zero();
    for (i, d) in dims {
        let d = BigInt::from(d);
        if i % 2 == 0 {
            total += d;
        } else {
            total -= d;
        }
    }
    GwClass::hyperbolic(field).scale(&total)
}

/// `[B_0] + Σ_{i>0} (-1)^i dim(E^i)·h`.
pub fn complex_gw_class(c: &SymmetricComplex) -> Result<GwClass, GwError> {
    let b0 = SymmetricForm::new(c.b(0))?;
    let base = GwClass::from_form(&b0)?;
    Ok(base.add(&alternating_hyperbolic(
        c.field,
        (1..=c.m).map(|i| (i, c.dim(i))),
    )))
}

/// The same recipe on cohomology: the induced form on `H^0` plus
/// `Σ_{i>0} (-1)^i dim(H^i)·h`.
pub fn homology_gw_class(c: &SymmetricComplex) -> Result<GwClass, GwError> {
    let h0 = c.homology_form()?;
    let base = GwClass::from_form(&h0)?;
    Ok(base.add(&alternating_hyperbolic(
        c.field,
        (1..=c.m).map(|i| (i, c.homology_dim(i))),
    )))
}

fn random_unit<R: Rng>(rng: &mut R, field: FieldDescriptor) -> Scalar {
    loop {
        let v = rng.gen_range(-6i64..=6);
        let s = if rng.gen_bool(0.3) {
            field
                .from_rational(&num_rational::BigRational::new(v.into(), rng.gen_range(1i64..=4).into()))
                .unwrap_or_else(|_| field.from_i64(v))
        } else {
            field.from_i64(v)
        };
        if !s.is_zero() {
            return s;
        }
    }
}

/// Random invertible matrix: a product of unipotent triangular factors and a
/// diagonal of units.
pub fn random_invertible<R: Rng>(rng: &mut R, field: FieldDescriptor, n: usize) -> Matrix {
    let mut lower = Matrix::identity(field, n);
    let mut upper = Matrix::identity(field, n);
    for i in 0..n {
        for j in 0..i {
            lower[(i, j)] = field.from_i64(rng.gen_range(-2i64..=2));
            upper[(j, i)] = field.from_i64(rng.gen_range(-2i64..=2));
        }
    }
    let diag: Vec<Scalar> = (0..n).map(|_| random_unit(rng, field)).collect();
    lower.mul(&Matrix::diagonal(field, &diag)).mul(&upper)
}

/// A random symmetric complex concentrated in degrees `-m..=m`: a direct sum
/// of a nondegenerate degree-0 form, homology-carrying pairs `E^i ⊕ E^{-i}`,
/// and acyclic pieces, followed by random changes of basis in each degree.
pub fn random_symmetric_complex<R: Rng>(rng: &mut R, field: FieldDescriptor, m: i32) -> SymmetricComplex {
    assert!(m >= 0);
    let len = (2 * m + 1) as usize;
    let idx = |i: i32| (i + m) as usize;
    let mut dims = vec![0usize; len];
    // entries as (degree, row, col, value)
    let mut d_entries: Vec<(i32, usize, usize, Scalar)> = Vec::new();
    let mut b_entries: Vec<(i32, usize, usize, Scalar)> = Vec::new();
    let sign = |i: i32| if i.rem_euclid(2) == 0 { field.one() } else { field.from_i64(-1) };
    let fresh = |dims: &mut Vec<usize>, i: i32| {
        let k = dims[idx(i)];
        dims[idx(i)] += 1;
        k
    };

    let pieces = rng.gen_range(1..=4);
    for _ in 0..pieces {
        match rng.gen_range(0..3) {
            0 => {
                let k = fresh(&mut dims, 0);
                let c = random_unit(rng, field);
                b_entries.push((0, k, k, c));
            }
            1 if m >= 1 => {
                let i = rng.gen_range(1..=m);
                let x = fresh(&mut dims, i);
                let y = fresh(&mut dims, -i);
                let b = random_unit(rng, field);
                b_entries.push((i, x, y, b.clone()));
                b_entries.push((-i, y, x, &sign(i) * &b));
            }
            2 if m >= 1 => {
                let i = rng.gen_range(0..m);
                if i == 0 {
                    let u = fresh(&mut dims, -1);
                    let a = fresh(&mut dims, 0);
                    let bb = fresh(&mut dims, 0);
                    let w = fresh(&mut dims, 1);
                    let beta = random_unit(rng, field);
                    let c = field.from_i64(rng.gen_range(-3i64..=3));
                    d_entries.push((-1, a, u, field.one()));
                    d_entries.push((0, w, bb, field.one()));
                    b_entries.push((1, w, u, beta.clone()));
                    b_entries.push((-1, u, w, -&beta));
                    b_entries.push((0, a, bb, -&beta));
                    b_entries.push((0, bb, a, -&beta));
                    b_entries.push((0, bb, bb, c));
                } else {
                    let x = fresh(&mut dims, i);
                    let y = fresh(&mut dims, i + 1);
                    let u = fresh(&mut dims, -i - 1);
                    let v = fresh(&mut dims, -i);
                    let b = random_unit(rng, field);
                    let b2 = random_unit(rng, field);
                    // t = (-1)^{i+1} b2 / b keeps the pairing compatible
                    let t = &sign(i + 1) * &b2.checked_div(&b).unwrap();
                    d_entries.push((i, y, x, field.one()));
                    d_entries.push((-i - 1, v, u, t));
                    b_entries.push((i, x, v, b.clone()));
                    b_entries.push((-i, v, x, &sign(i) * &b));
                    b_entries.push((i + 1, y, u, b2.clone()));
                    b_entries.push((-i - 1, u, y, &sign(i + 1) * &b2));
                }
            }
            _ => {
                let k = fresh(&mut dims, 0);
                let c = random_unit(rng, field);
                b_entries.push((0, k, k, c));
            }
        }
    }

    let mut diffs: Vec<Matrix> = (-m..m)
        .map(|i| Matrix::zeros(field, dims[idx(i + 1)], dims[idx(i)]))
        .collect();
    for (i, r, c, v) in d_entries {
        diffs[idx(i)][(r, c)] = v;
    }
    let mut pairings: Vec<Matrix> = (-m..=m)
        .map(|i| Matrix::zeros(field, dims[idx(i)], dims[idx(-i)]))
        .collect();
    for (i, r, c, v) in b_entries {
        pairings[idx(i)][(r, c)] = v;
    }

    // x = g·x' in each degree
    let g: Vec<Matrix> = dims.iter().map(|&n| random_invertible(rng, field, n)).collect();
    let g_inv: Vec<Matrix> = g.iter().map(|x| x.inverse().expect("invertible")).collect();
    for i in -m..m {
        diffs[idx(i)] = g_inv[idx(i + 1)].mul(&diffs[idx(i)]).mul(&g[idx(i)]);
    }
    for i in -m..=m {
        pairings[idx(i)] = g[idx(i)].transpose().mul(&pairings[idx(i)]).mul(&g[idx(-i)]);
    }
    SymmetricComplex::new(field, m, dims, diffs, pairings).expect("generated complex is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    fn cls(v: i64) -> SquareClass {
        SquareClass::Rational(BigInt::from(v))
    }

    #[test]
    fn diagonalize_examples() {
        let h = SymmetricForm::new(Matrix::from_i64(q(), &[&[0, 1], &[1, 0]])).unwrap();
        let d = diagonalize(&h).unwrap();
        assert_eq!(d.diagonal, vec![q().from_i64(2), q().from_i64(-1).checked_div(&q().from_i64(2)).unwrap()]);
        assert_eq!(
            h.gram().congruent(&d.transform),
            Matrix::diagonal(q(), &d.diagonal)
        );
        let c = GwClass::from_form(&h).unwrap();
        assert_eq!(c.coefficient(&cls(2)), BigInt::one());
        assert_eq!(c.coefficient(&cls(-2)), BigInt::one());

        let id = SymmetricForm::new(Matrix::identity(q(), 3)).unwrap();
        assert_eq!(diagonalize(&id).unwrap().diagonal, vec![q().one(); 3]);

        let f = SymmetricForm::new(Matrix::from_i64(q(), &[&[2, 0], &[0, 4]])).unwrap();
        let c = GwClass::from_form(&f).unwrap();
        assert_eq!(c.to_string(), "⟨1⟩ + ⟨2⟩");

        let z = SymmetricForm::new(Matrix::from_i64(q(), &[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!(diagonalize(&z), Err(GwError::DegenerateForm));
        assert_eq!(
            SymmetricForm::new(Matrix::from_i64(q(), &[&[1, 2], &[3, 1]])),
            Err(GwError::NotSymmetric)
        );
    }

    #[test]
    fn invariants_examples() {
        let h = GwClass::hyperbolic(q());
        let inv = h.invariants();
        assert_eq!((inv.rank, inv.signature, inv.disc), (BigInt::from(2), Some(BigInt::zero()), cls(-1)));

        let mut big = GwClass::zero(q());
        big.add_class(cls(1), BigInt::from(160839));
        big.add_class(cls(-1), BigInt::from(160650));
        let inv = big.invariants();
        assert_eq!(inv.rank, BigInt::from(321489));
        assert_eq!(inv.signature, Some(BigInt::from(189)));
        assert_eq!(inv.disc, cls(1));
        assert_eq!(big.to_string(), "160839⟨1⟩ + 160650⟨−1⟩");

        let one = GwClass::one(q()).invariants();
        assert_eq!((one.rank, one.signature, one.disc), (BigInt::one(), Some(BigInt::one()), cls(1)));
    }

    #[test]
    fn simplify_examples() {
        let mut c = GwClass::zero(q());
        c.add_class(cls(2), BigInt::one());
        c.add_class(cls(-2), BigInt::one());
        assert_eq!(c.simplify(true), GwClass::hyperbolic(q()));
        assert_eq!(c.simplify(false), c);
        let eight = GwClass::from_scalar(&q().from_i64(8)).unwrap();
        assert_eq!(eight, GwClass::from_class(cls(2), BigInt::one()));
        assert!(GwClass::zero(q()).add(&GwClass::zero(q())).is_zero());
        let diff = GwClass::one(q()).add(&GwClass::from_class(cls(-3), BigInt::from(-2)));
        assert_eq!(diff.to_string(), "⟨1⟩ − 2⟨−3⟩");
    }

    #[test]
    fn prime_field_classes() {
        let f7 = FieldDescriptor::prime(7).unwrap();
        let c = GwClass::from_diagonal(f7, &[f7.from_i64(3), f7.from_i64(2), f7.from_i64(5)]).unwrap();
        // 3 and 5 are nonresidues mod 7, 2 = 3^2
        assert_eq!(c.to_string(), "⟨1⟩ + 2⟨3⟩");
        assert_eq!(c.signature(), None);
        assert!(c.discriminant().is_trivial());
        assert_eq!(GwClass::hyperbolic(f7).invariants().disc.label(), "q");
    }

    #[test]
    fn trace_form_examples() {
        let t = trace_form(&UniPoly::from_i64s(q(), &[-5, 1]), &UniPoly::from_i64s(q(), &[3])).unwrap();
        assert_eq!(GwClass::from_form(&t.form).unwrap(), GwClass::from_class(cls(3), BigInt::one()));

        let t = trace_form(&UniPoly::from_i64s(q(), &[-2, 0, 1]), &UniPoly::one(q())).unwrap();
        assert_eq!(t.form.gram(), &Matrix::from_i64(q(), &[&[2, 0], &[0, 4]]));
        let mut expect = GwClass::one(q());
        expect.add_class(cls(2), BigInt::one());
        assert_eq!(GwClass::from_form(&t.form).unwrap(), expect);
        assert!(t.warnings.is_empty());

        let t = trace_form(&UniPoly::from_i64s(q(), &[1, 0, 1]), &UniPoly::one(q())).unwrap();
        assert_eq!(t.form.gram(), &Matrix::from_i64(q(), &[&[2, 0], &[0, -2]]));
        assert!(GwClass::from_form(&t.form).unwrap().same_invariants(&GwClass::hyperbolic(q())));

        let t = trace_form(&UniPoly::from_i64s(q(), &[-1, 0, 1]), &UniPoly::one(q())).unwrap();
        assert_eq!(t.warnings, vec![TraceFormWarning::Reducible]);
        assert_eq!(
            trace_form(&UniPoly::from_i64s(q(), &[1, 2, 1]), &UniPoly::one(q())),
            Err(GwError::NotSeparable)
        );
        assert_eq!(
            trace_form(&UniPoly::from_i64s(q(), &[-2, 0, 1]), &UniPoly::from_i64s(q(), &[-2, 0, 1])),
            Err(GwError::ZeroElement)
        );
    }

    fn concentrated(field: FieldDescriptor, gram: Matrix) -> SymmetricComplex {
        let n = gram.rows();
        SymmetricComplex::new(field, 0, vec![n], vec![], vec![gram]).unwrap()
    }

    #[test]
    fn complex_examples() {
        let g = Matrix::from_i64(q(), &[&[3, 1], &[1, -2]]);
        let c = concentrated(q(), g.clone());
        let expect = GwClass::from_form(&SymmetricForm::new(g).unwrap()).unwrap();
        assert_eq!(complex_gw_class(&c).unwrap(), expect);
        assert_eq!(homology_gw_class(&c).unwrap(), expect);

        // E^-1 = k -> E^0 = k^2 -> E^1 = k, hyperbolic in degree 0
        let f = q();
        let dims = vec![1, 2, 1];
        let diffs = vec![Matrix::from_i64(f, &[&[1], &[0]]), Matrix::from_i64(f, &[&[0, 1]])];
        let pairings = vec![
            Matrix::from_i64(f, &[&[1]]),
            Matrix::from_i64(f, &[&[0, 1], &[1, 0]]),
            Matrix::from_i64(f, &[&[-1]]),
        ];
        let c = SymmetricComplex::new(f, 1, dims, diffs, pairings).unwrap();
        assert!(complex_gw_class(&c).unwrap().simplify(true).is_zero());
        assert!(homology_gw_class(&c).unwrap().is_zero());

        // zero differential k -> k in degrees -1, 1
        let c = SymmetricComplex::new(
            f,
            1,
            vec![1, 0, 1],
            vec![Matrix::zeros(f, 0, 1), Matrix::zeros(f, 1, 0)],
            vec![Matrix::from_i64(f, &[&[-1]]), Matrix::zeros(f, 0, 0), Matrix::from_i64(f, &[&[1]])],
        )
        .unwrap();
        assert_eq!(complex_gw_class(&c).unwrap(), GwClass::hyperbolic(f).neg());
        assert_eq!(homology_gw_class(&c).unwrap(), GwClass::hyperbolic(f).neg());

        // wrong sign on B_1 breaks compatibility
        let bad = SymmetricComplex::new(
            f,
            1,
            vec![1, 2, 1],
            vec![Matrix::from_i64(f, &[&[1], &[0]]), Matrix::from_i64(f, &[&[0, 1]])],
            vec![
                Matrix::from_i64(f, &[&[-1]]),
                Matrix::from_i64(f, &[&[0, 1], &[1, 0]]),
                Matrix::from_i64(f, &[&[1]]),
            ],
        );
        assert!(matches!(bad, Err(GwError::IncompatiblePairing(_))));
    }

    #[test]
    fn metabolic_forms_are_hyperbolic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in 1..4 {
            let a = random_invertible(&mut rng, q(), m);
            let mut g = Matrix::zeros(q(), 2 * m, 2 * m);
            for i in 0..m {
                for j in 0..m {
                    g[(i, m + j)] = a[(i, j)].clone();
                    g[(m + j, i)] = a[(i, j)].clone();
                }
                for j in 0..=i {
                    let v = q().from_i64(rng.gen_range(-3i64..=3));
                    g[(m + i, m + j)] = v.clone();
                    g[(m + j, m + i)] = v;
                }
            }
            let c = GwClass::from_form(&SymmetricForm::new(g).unwrap()).unwrap();
            let h = GwClass::hyperbolic(q()).scale(&BigInt::from(m));
            assert!(c.same_invariants(&h));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn diagonalization_is_a_congruence(entries in prop::collection::vec(-5i64..6, 10), seed in 0u64..1000) {
            let f = q();
            let mut g = Matrix::zeros(f, 4, 4);
            let mut k = 0;
            for i in 0..4 {
                for j in i..4 {
                    g[(i, j)] = f.from_i64(entries[k]);
                    g[(j, i)] = f.from_i64(entries[k]);
                    k += 1;
                }
            }
            let form = SymmetricForm::new(g.clone()).unwrap();
            if form.is_degenerate() {
                prop_assert_eq!(diagonalize(&form), Err(GwError::DegenerateForm));
                return Ok(());
            }
            let d = diagonalize(&form).unwrap();
            prop_assert_eq!(g.congruent(&d.transform), Matrix::diagonal(f, &d.diagonal));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_invertible(&mut rng, f, 4);
            let moved = form.congruent(&p);
            let (a, b) = (form_invariants(&form).unwrap(), form_invariants(&moved).unwrap());
            prop_assert!(a.matches(&b));
            let c = GwClass::from_form(&form).unwrap();
            prop_assert!(c.invariants().matches(&a));
            let s = c.simplify(true);
            prop_assert!(s.invariants().matches(&a));
        }

        #[test]
        fn complexes_agree(seed in 0u64..10_000, m in 0i32..3, prime in prop::bool::ANY) {
            let field = if prime { FieldDescriptor::prime(7).unwrap() } else { q() };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = random_symmetric_complex(&mut rng, field, m);
            let a = complex_gw_class(&c).unwrap();
            let b = homology_gw_class(&c).unwrap();
            prop_assert!(a.same_invariants(&b));
        }
    }
}
