//! Finitely supported coefficient maps on Z^n with the deformed product.
//!
//! An element is a trigonometric polynomial Σ_p c_p U_p stored on the
//! Fourier side as a finite map p ↦ c_p. The operations are
//!
//!   (a ∗_ℏ b)(p) = Σ_q a(q) b(p−q) σ_ℏ(q, p−q)     deformed convolution
//!   a*(p)        = conj(a(−p))                      involution
//!   a^γ(p)       = a(−p)                            coordinate flip (linear)
//!   {a, b}(p)    = −4π² Σ_q a(q) b(p−q) γ(q, p−q)   Poisson bracket
//!
//! At ℏ = 0 the product is plain convolution, i.e. pointwise
//! multiplication on the torus side. The span of finitely supported maps
//! contains every monomial U_p and is closed under all of the above, so
//! nothing here ever needs infinite supports.
//!
//! After every arithmetic operation coefficients below `PRUNE_REL_TOL`
//! times the element's largest modulus are dropped; elements never store
//! explicit zeros.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::theta::{gamma, sigma, LatticePoint, ThetaMatrix};

/// Relative pruning threshold applied after every arithmetic operation.
pub const PRUNE_REL_TOL: f64 = 1e-15;

const FOUR_PI_SQUARED: f64 = 4.0 * std::f64::consts::PI * std::f64::consts::PI;

/// Planck-type parameter. Finite; zero is allowed and selects the
/// classical (untwisted) structure.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hbar(f64);

impl Hbar {
    pub const ZERO: Hbar = Hbar(0.0);
    pub const ONE: Hbar = Hbar(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::InvalidInput(format!("hbar must be finite, got {value}")));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }
}

/// Finitely supported complex coefficient map on Z^n.
///
/// JSON schema:
/// `{"n": <int>, "terms": [{"p": [<ints>], "re": <real>, "im": <real>}, ...]}`;
/// duplicate `p` entries are rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr", into = "ElementRepr")]
pub struct LatticeElement {
    n: usize,
    terms: BTreeMap<LatticePoint, Complex64>,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    n: usize,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    p: Vec<i64>,
    re: f64,
    im: f64,
}

impl LatticeElement {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative identity 1 = U_0.
    pub fn one(n: usize) -> Self {
        Self::monomial(LatticePoint::zero(n))
    }

    /// The monomial U_p with unit coefficient.
    pub fn monomial(p: LatticePoint) -> Self {
        let n = p.dim();
        let mut terms = BTreeMap::new();
        terms.insert(p, Complex64::new(1.0, 0.0));
        Self { n, terms }
    }

    pub fn from_terms<I>(n: usize, iter: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LatticePoint, Complex64)>,
    {
        if n == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        let mut terms: BTreeMap<LatticePoint, Complex64> = BTreeMap::new();
        for (p, c) in iter {
            if p.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: p.dim(),
                });
            }
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::InvalidInput(format!("non-finite coefficient at {p}")));
            }
            *terms.entry(p).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        Ok(Self { n, terms }.pruned())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate over (mode, coefficient) pairs in lexicographic mode order.
    pub fn terms(&self) -> impl Iterator<Item = (&LatticePoint, Complex64)> {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    /// Coefficient at `p` (zero when absent).
    pub fn coefficient(&self, p: &LatticePoint) -> Complex64 {
        self.terms
            .get(p)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn max_coeff_modulus(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Σ_p |c_p|.
    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// Largest coordinate magnitude over the support (0 for the zero element).
    pub fn support_radius(&self) -> i64 {
        self.terms.keys().map(|p| p.sup_norm()).max().unwrap_or(0)
    }

    fn pruned(mut self) -> Self {
        let max = self.max_coeff_modulus();
        if max == 0.0 {
            self.terms.clear();
            return self;
        }
        let threshold = max * PRUNE_REL_TOL;
        self.terms.retain(|_, c| c.norm() >= threshold);
        self
    }

    fn check_same_n(&self, rhs: &Self) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: rhs.n,
            });
        }
        Ok(())
    }

    fn check_theta(&self, theta: &ThetaMatrix) -> Result<()> {
        if theta.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: theta.n(),
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_n(rhs)?;
        let mut terms = self.terms.clone();
        for (p, &c) in &rhs.terms {
            *terms.entry(p.clone()).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        Ok(Self { n: self.n, terms }.pruned())
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_n(rhs)?;
        let mut terms = self.terms.clone();
        for (p, &c) in &rhs.terms {
            *terms.entry(p.clone()).or_insert(Complex64::new(0.0, 0.0)) -= c;
        }
        Ok(Self { n: self.n, terms }.pruned())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let terms = self.terms.iter().map(|(p, &v)| (p.clone(), c * v)).collect();
        Self { n: self.n, terms }.pruned()
    }

    pub fn neg(&self) -> Self {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    /// Deformed convolution a ∗_ℏ b.
    ///
    /// Support of the result is contained in support(a) + support(b);
    /// at ℏ = 0 this is plain convolution.
    pub fn deformed_product(&self, rhs: &Self, theta: &ThetaMatrix, hbar: Hbar) -> Result<Self> {
        self.check_same_n(rhs)?;
        self.check_theta(theta)?;
        let mut terms: BTreeMap<LatticePoint, Complex64> = BTreeMap::new();
        for (p, &cp) in &self.terms {
            for (q, &cq) in &rhs.terms {
                let phase = sigma(theta, hbar.value(), p, q)?;
                *terms
                    .entry(p + q)
                    .or_insert(Complex64::new(0.0, 0.0)) += cp * cq * phase;
            }
        }
        Ok(Self { n: self.n, terms }.pruned())
    }

    /// a*(p) = conj(a(−p)). Conjugate-linear, involutive, and
    /// anti-multiplicative for every ∗_ℏ.
    pub fn involution(&self) -> Self {
        let terms = self.terms.iter().map(|(p, c)| (-p, c.conj())).collect();
        Self { n: self.n, terms }
    }

    /// a^γ(p) = a(−p). Linear (no conjugation), order two, and a
    /// ∗_ℏ-automorphism: (a ∗_ℏ b)^γ = a^γ ∗_ℏ b^γ.
    pub fn gamma_flip(&self) -> Self {
        let terms = self.terms.iter().map(|(p, &c)| (-p, c)).collect();
        Self { n: self.n, terms }
    }

    /// Fourier-side Poisson bracket
    /// {a, b}(p) = −4π² Σ_q a(q) b(p−q) γ(q, p−q).
    ///
    /// On exponentials this agrees with Σ_jk θ_jk ∂_j a ∂_k b.
    pub fn poisson_bracket(&self, rhs: &Self, theta: &ThetaMatrix) -> Result<Self> {
        self.check_same_n(rhs)?;
        self.check_theta(theta)?;
        let mut terms: BTreeMap<LatticePoint, Complex64> = BTreeMap::new();
        for (p, &cp) in &self.terms {
            for (q, &cq) in &rhs.terms {
                let g = gamma(theta, p, q)?;
                *terms
                    .entry(p + q)
                    .or_insert(Complex64::new(0.0, 0.0)) += cp * cq * (-FOUR_PI_SQUARED * g);
            }
        }
        Ok(Self { n: self.n, terms }.pruned())
    }

    /// The averaging projection (a + a^γ) / 2 onto even elements.
    pub fn symmetrize(&self) -> Self {
        self.add(&self.gamma_flip())
            .expect("flip preserves dimension")
            .scale(Complex64::new(0.5, 0.0))
    }

    /// Sup over the support of |a(p) − a(−p)|.
    pub fn evenness_deviation(&self) -> f64 {
        self.terms
            .keys()
            .map(|p| (self.coefficient(p) - self.coefficient(&-p)).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_even(&self, tol: f64) -> bool {
        self.evenness_deviation() <= tol
    }

    /// (a ∗_ℏ b − b ∗_ℏ a) / (iℏ). Errors on ℏ = 0.
    pub fn commutator_quotient(&self, rhs: &Self, theta: &ThetaMatrix, hbar: Hbar) -> Result<Self> {
        if hbar.is_zero() {
            return Err(Error::ZeroHbar);
        }
        let forward = self.deformed_product(rhs, theta, hbar)?;
        let backward = rhs.deformed_product(self, theta, hbar)?;
        // 1/(iℏ) = −i/ℏ, applied as one exact complex scalar.
        Ok(forward
            .sub(&backward)?
            .scale(Complex64::new(0.0, -1.0 / hbar.value())))
    }

    /// Sup over the union of supports of |a(p) − b(p)|. This is the
    /// coefficient-wise distance used by every residual in the crate.
    pub fn sup_distance(&self, rhs: &Self) -> f64 {
        let mut worst = 0.0f64;
        for (p, c) in &self.terms {
            worst = worst.max((c - rhs.coefficient(p)).norm());
        }
        for (p, c) in &rhs.terms {
            if !self.terms.contains_key(p) {
                worst = worst.max(c.norm());
            }
        }
        worst
    }
}

impl TryFrom<ElementRepr> for LatticeElement {
    type Error = Error;
    fn try_from(r: ElementRepr) -> Result<Self> {
        if r.n == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        let mut terms: BTreeMap<LatticePoint, Complex64> = BTreeMap::new();
        for t in r.terms {
            if t.p.len() != r.n {
                return Err(Error::DimensionMismatch {
                    expected: r.n,
                    got: t.p.len(),
                });
            }
            if !t.re.is_finite() || !t.im.is_finite() {
                return Err(Error::InvalidInput("non-finite coefficient".into()));
            }
            let p = LatticePoint::new(t.p);
            if terms.contains_key(&p) {
                return Err(Error::InvalidInput(format!("duplicate mode {p}")));
            }
            terms.insert(p, Complex64::new(t.re, t.im));
        }
        Ok(Self { n: r.n, terms }.pruned())
    }
}

impl From<LatticeElement> for ElementRepr {
    fn from(e: LatticeElement) -> Self {
        ElementRepr {
            n: e.n,
            terms: e
                .terms
                .iter()
                .map(|(p, c)| TermRepr {
                    p: p.coords().to_vec(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }
}
