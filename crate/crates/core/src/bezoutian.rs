//! Scheja–Storch (Bezoutian) forms of square polynomial systems, their
//! localizations at rational zeros, and Poincaré–Hopf indices.
//!
//! For `F = (f_1, …, f_n)` with `B = k[T]/(F)` finite, let
//! `a_ij = divided_difference(f_i, j)` and `Δ = det(a_ij) ∈ k[X, Y]`. The
//! image of `Δ` in `B ⊗ B` is `Σ c_kl e_k ⊗ e_l` in the standard basis, and
//! the Gram matrix is `(c_kl)`. Strictly, `Δ` defines a map `B* → B`; the
//! form on `B*` with Gram `(c_kl)` is congruent to its inverse form on `B`, so
//! the Grothendieck–Witt class does not depend on which side is meant.
//!
//! The main path reads `Δ` in `B ⊗ B` by mapping each monomial `X^α Y^β` to
//! `v(α) ⊗ v(β)`, where `v(α)` is the normal form of `T^α` obtained from the
//! multiplication matrices. [`bezoutian_form_union_gb`] instead reduces `Δ`
//! against the union of the Gröbner bases of `F(X)` and `F(Y)`.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{FieldDescriptor, Scalar};
use crate::groebner::{buchberger, GroebnerError, MonomialReducer, QuotientAlgebra, TermOrder};
use crate::gw::{form_invariants, GwClass, GwError, GwInvariants, SymmetricForm};
use crate::matrix::Matrix;
use crate::poly::{
    determinant, divided_difference_in_order, embed_in_doubled, jacobian_determinant, parse_system,
    Monomial, ParseError, PolyError, PolyRing, Polynomial,
};

/// Largest `N` tried when localizing with `(F) + m^N`.
pub const LOCALIZATION_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BezoutianError {
    #[error("zero locus is not finite: {0}")]
    InfiniteDimensional(String),
    #[error("a monomial of the reduced Bezoutian lies outside the tensor basis")]
    NotReducedToBasis,
    #[error("the point is not a zero of the system")]
    NotAZero,
    #[error("the Jacobian vanishes at the zero")]
    DegenerateZero,
    #[error("local algebra did not stabilize below N = {0}")]
    LocalizationDiverged(u32),
    #[error("point has {got} coordinates, expected {expected}")]
    PointDimension { got: usize, expected: usize },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Form(#[from] GwError),
}

impl From<GroebnerError> for BezoutianError {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::InfiniteDimensional { .. } => BezoutianError::InfiniteDimensional(e.to_string()),
            other => BezoutianError::Inconsistent(other.to_string()),
        }
    }
}

/// A square system `F = (f_1, …, f_n)` in `n` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialSystem {
    ring: Arc<PolyRing>,
    equations: Vec<Polynomial>,
}

impl PolynomialSystem {
    pub fn new(equations: Vec<Polynomial>) -> Result<PolynomialSystem, BezoutianError> {
        let ring = match equations.first() {
            Some(f) => f.ring().clone(),
            None => {
                return Err(PolyError::NonSquareSystem {
                    equations: 0,
                    variables: 0,
                }
                .into())
            }
        };
        if equations.len() != ring.nvars() {
            return Err(PolyError::NonSquareSystem {
                equations: equations.len(),
                variables: ring.nvars(),
            }
            .into());
        }
        Ok(PolynomialSystem { ring, equations })
    }

    /// Parses `;`-separated equations over the given variables.
    pub fn parse<S: AsRef<str>>(field: FieldDescriptor, vars: &[S], text: &str) -> Result<PolynomialSystem, BezoutianError> {
        let ring = PolyRing::new(field, vars)?;
        PolynomialSystem::new(parse_system(text, &ring)?)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> FieldDescriptor {
        self.ring.field()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    pub fn jacobian(&self) -> Polynomial {
        jacobian_determinant(&self.equations).expect("system is square")
    }

    pub fn quotient_algebra(&self) -> Result<QuotientAlgebra, BezoutianError> {
        Ok(QuotientAlgebra::from_generators(&self.equations, TermOrder::GrevLex)?)
    }

    pub fn is_zero_at(&self, z: &[Scalar]) -> Result<bool, BezoutianError> {
        self.check_point(z)?;
        Ok(self.equations.iter().all(|f| f.eval(z).is_zero()))
    }

    fn check_point(&self, z: &[Scalar]) -> Result<(), BezoutianError> {
        if z.len() != self.nvars() {
            return Err(BezoutianError::PointDimension {
                got: z.len(),
                expected: self.nvars(),
            });
        }
        Ok(())
    }

    /// `Δ = det(a_ij)` with the divided differences taken along `order`.
    pub fn bezoutian_polynomial(&self, order: &[usize]) -> Polynomial {
        let doubled = self.ring.doubled();
        let n = self.nvars();
        let rows: Vec<Vec<Polynomial>> = self
            .equations
            .iter()
            .map(|f| {
                (0..n)
                    .map(|j| divided_difference_in_order(f, j, order).expect("column index in range"))
                    .collect()
            })
            .collect();
        determinant(&rows, &doubled)
    }
}

/// The Scheja–Storch form of a system together with its algebra.
#[derive(Debug, Clone)]
pub struct BezoutianForm {
    algebra: QuotientAlgebra,
    gram: Matrix,
}

impl BezoutianForm {
    pub fn algebra(&self) -> &QuotientAlgebra {
        &self.algebra
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn form(&self) -> SymmetricForm {
        SymmetricForm::new(self.gram.clone()).expect("gram is symmetric")
    }

    pub fn gw_class(&self) -> Result<GwClass, GwError> {
        GwClass::from_form(&self.form())
    }

    pub fn invariants(&self) -> Result<GwInvariants, GwError> {
        form_invariants(&self.form())
    }

    /// `Σ c_kl e_k e_l` reduced in `B`; equals the class of `Jac F`.
    pub fn diagonal_image(&self) -> Vec<Scalar> {
        let alg = &self.algebra;
        let m = alg.dim();
        let mut acc = vec![alg.field().zero(); m];
        for k in 0..m {
            for l in 0..m {
                let c = &self.gram[(k, l)];
                if c.is_zero() {
                    continue;
                }
                let prod = alg.basis()[k].mul(&alg.basis()[l]);
                let p = Polynomial::monomial(alg.ring(), prod, c.clone());
                for (a, b) in acc.iter_mut().zip(alg.reduce_to_coords(&p)) {
                    *a += &b;
                }
            }
        }
        acc
    }

    /// Whether `(b ⊗ 1)Δ = (1 ⊗ b)Δ`, i.e. `M_b·G = G·M_bᵀ`.
    pub fn is_balanced_for(&self, b: &Polynomial) -> bool {
        let mb = self.algebra.multiplication_matrix(b);
        mb.mul(&self.gram) == self.gram.mul(&mb.transpose())
    }
}

fn identity_order(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// The global Scheja–Storch form with the canonical divided differences.
pub fn bezoutian_form(sys: &PolynomialSystem) -> Result<BezoutianForm, BezoutianError> {
    bezoutian_form_in_order(sys, &identity_order(sys.nvars()))
}

/// Same construction with the divided-difference path switching variables in
/// the sequence `order`; any order gives the same element of `B ⊗ B`.
pub fn bezoutian_form_in_order(sys: &PolynomialSystem, order: &[usize]) -> Result<BezoutianForm, BezoutianError> {
    let algebra = sys.quotient_algebra()?;
    let delta = sys.bezoutian_polynomial(order);
    let gram = tensor_coefficients(&algebra, &delta);
    finish(algebra, gram)
}

fn tensor_coefficients(algebra: &QuotientAlgebra, delta: &Polynomial) -> Matrix {
    let n = algebra.ring().nvars();
    let m = algebra.dim();
    let field = algebra.field();
    let mut reducer = MonomialReducer::new(algebra);
    // group by the X exponent: Δ = Σ_α X^α · (Σ_β c_αβ Y^β)
    let mut by_alpha: HashMap<Vec<u32>, Vec<Scalar>> = HashMap::new();
    for (mono, c) in delta.terms() {
        let (alpha, beta) = mono.exponents().split_at(n);
        let v = reducer.coords(beta);
        let w = by_alpha
            .entry(alpha.to_vec())
            .or_insert_with(|| vec![field.zero(); m]);
        for (wi, vi) in w.iter_mut().zip(&v) {
            if !vi.is_zero() {
                *wi += &(c * vi);
            }
        }
    }
    let mut gram = Matrix::zeros(field, m, m);
    let mut alphas: Vec<_> = by_alpha.into_iter().collect();
    alphas.sort_by(|a, b| a.0.cmp(&b.0));
    for (alpha, w) in alphas {
        let u = reducer.coords(&alpha);
        for (k, uk) in u.iter().enumerate() {
            if uk.is_zero() {
                continue;
            }
            for (l, wl) in w.iter().enumerate() {
                if !wl.is_zero() {
                    gram[(k, l)] += &(uk * wl);
                }
            }
        }
    }
    gram
}

fn finish(algebra: QuotientAlgebra, gram: Matrix) -> Result<BezoutianForm, BezoutianError> {
    if !gram.is_symmetric() {
        return Err(BezoutianError::Inconsistent("Bezoutian Gram matrix is not symmetric".into()));
    }
    if gram.determinant().is_zero() {
        return Err(BezoutianError::Inconsistent("Bezoutian Gram matrix is singular".into()));
    }
    Ok(BezoutianForm { algebra, gram })
}

/// The global form computed by reducing `Δ` against the union of the
/// Gröbner bases of `F(X)` and `F(Y)` in the doubled ring. Independent of
/// [`bezoutian_form`]'s multiplication-matrix route; used as a cross-check.
pub fn bezoutian_form_union_gb(sys: &PolynomialSystem) -> Result<BezoutianForm, BezoutianError> {
    let algebra = sys.quotient_algebra()?;
    let doubled = sys.ring.doubled();
    let n = sys.nvars();
    let gb = algebra.groebner_basis().generators();
    let mut union: Vec<Polynomial> = gb.iter().map(|g| embed_in_doubled(g, &doubled, false)).collect();
    union.extend(gb.iter().map(|g| embed_in_doubled(g, &doubled, true)));
    let union_gb = buchberger(&union, TermOrder::GrevLex)?;
    let delta = sys.bezoutian_polynomial(&identity_order(n));
    let reduced = union_gb.normal_form(&delta);
    let m = algebra.dim();
    let mut gram = Matrix::zeros(sys.field(), m, m);
    for (mono, c) in reduced.terms() {
        let (alpha, beta) = mono.exponents().split_at(n);
        let k = algebra.basis_index(&Monomial::from_exponents(alpha.to_vec()));
        let l = algebra.basis_index(&Monomial::from_exponents(beta.to_vec()));
        match (k, l) {
            (Some(k), Some(l)) => gram[(k, l)] = c.clone(),
            _ => return Err(BezoutianError::NotReducedToBasis),
        }
    }
    finish(algebra, gram)
}

/// The GW class of the global form: the Poincaré–Hopf Euler number of the
/// system on affine space.
pub fn euler_number_ph(sys: &PolynomialSystem) -> Result<GwClass, BezoutianError> {
    Ok(bezoutian_form(sys)?.gw_class()?)
}

/// Local index at a rational zero.
#[derive(Debug, Clone)]
pub struct LocalIndexReport {
    pub point: Vec<Scalar>,
    /// Dimension of the local algebra `B_z`.
    pub local_dim: usize,
    /// The `N` at which `(F) + m^N` stabilized.
    pub stabilized_at: u32,
    pub form: SymmetricForm,
}

impl LocalIndexReport {
    pub fn gw_class(&self) -> Result<GwClass, GwError> {
        GwClass::from_form(&self.form)
    }

    pub fn invariants(&self) -> Result<GwInvariants, GwError> {
        form_invariants(&self.form)
    }
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(Monomial::from_exponents(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

fn truncated_algebra(shifted: &[Polynomial], nn: u32) -> Result<QuotientAlgebra, BezoutianError> {
    let ring = shifted[0].ring().clone();
    let mut gens = shifted.to_vec();
    for m in monomials_of_degree(ring.nvars(), nn) {
        gens.push(Polynomial::monomial(&ring, m, ring.field().one()));
    }
    Ok(QuotientAlgebra::from_generators(&gens, TermOrder::GrevLex)?)
}

/// The local algebra at `z` (in coordinates `U = T - z`) and the `N` at which
/// `k[U]/((F) + m^N)` stabilized.
fn local_algebra(sys: &PolynomialSystem, z: &[Scalar]) -> Result<(QuotientAlgebra, u32), BezoutianError> {
    let shifted: Vec<Polynomial> = sys.equations.iter().map(|f| f.translate(z)).collect();
    let mut nn = 2;
    while nn <= LOCALIZATION_CAP {
        let a = truncated_algebra(&shifted, nn)?;
        let b = truncated_algebra(&shifted, nn + 1)?;
        if a.dim() == b.dim() {
            return Ok((a, nn));
        }
        nn *= 2;
    }
    Err(BezoutianError::LocalizationDiverged(LOCALIZATION_CAP))
}

/// Local Scheja–Storch form at a rational zero: the image of the global `Δ`
/// in `B_z ⊗ B_z`, where `B_z = k[T]/((F) + m_z^N)` for stable `N`.
pub fn local_form_at(sys: &PolynomialSystem, z: &[Scalar]) -> Result<LocalIndexReport, BezoutianError> {
    if !sys.is_zero_at(z)? {
        return Err(BezoutianError::NotAZero);
    }
    let global = bezoutian_form(sys)?;
    local_form_from_global(sys, &global, z)
}

/// As [`local_form_at`], reusing an already computed global form.
pub fn local_form_from_global(
    sys: &PolynomialSystem,
    global: &BezoutianForm,
    z: &[Scalar],
) -> Result<LocalIndexReport, BezoutianError> {
    if !sys.is_zero_at(z)? {
        return Err(BezoutianError::NotAZero);
    }
    let (local, nn) = local_algebra(sys, z)?;
    let ring = sys.ring();
    let n = ring.nvars();
    // q(e_k) for each global basis monomial, via T = z + U
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            let mut p = Polynomial::var(local.ring(), i);
            p.add_term(Monomial::one(n), z[i].clone());
            p
        })
        .collect();
    let field = sys.field();
    let (mz, m) = (local.dim(), global.dim());
    let mut q = Matrix::zeros(field, mz, m);
    for (k, e) in global.algebra.basis().iter().enumerate() {
        let mono = Polynomial::monomial(ring, e.clone(), field.one());
        let image = mono.compose(&images);
        for (r, v) in local.reduce_to_coords(&image).into_iter().enumerate() {
            q[(r, k)] = v;
        }
    }
    let gram = q.mul(&global.gram).mul(&q.transpose());
    if !gram.is_symmetric() {
        return Err(BezoutianError::Inconsistent("local Gram matrix is not symmetric".into()));
    }
    if gram.determinant().is_zero() {
        return Err(BezoutianError::Inconsistent("local Gram matrix is singular".into()));
    }
    Ok(LocalIndexReport {
        point: z.to_vec(),
        local_dim: mz,
        stabilized_at: nn,
        form: SymmetricForm::new(gram)?,
    })
}

/// `⟨Jac F(z)⟩` at a simple zero.
pub fn simple_zero_index(sys: &PolynomialSystem, z: &[Scalar]) -> Result<GwClass, BezoutianError> {
    if !sys.is_zero_at(z)? {
        return Err(BezoutianError::NotAZero);
    }
    let j = sys.jacobian().eval(z);
    if j.is_zero() {
        return Err(BezoutianError::DegenerateZero);
    }
    Ok(GwClass::from_scalar(&j)?)
}
