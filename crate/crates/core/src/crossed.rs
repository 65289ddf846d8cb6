//! The order-two crossed product: pairs of algebra elements indexed by
//! the group {e, γ}, multiplied through the flip automorphism.
//!
//!   (L·P)(e) = L(e) ∗_ℏ P(e) + L(γ) ∗_ℏ P(γ)^γ
//!   (L·P)(γ) = L(e) ∗_ℏ P(γ) + L(γ) ∗_ℏ P(e)^γ
//!
//! The identity is Φ₀ = (1, 0) and it is exact: products against a
//! single unit term only pick up σ(0,·) = 1 phases. The involution is
//! the covariant one, L*(e) = L(e)*, L*(γ) = (L(γ)*)^γ; its
//! anti-multiplicativity is verified numerically in the tests.

use serde::{Deserialize, Serialize};

use crate::algebra::{Hbar, LatticeElement};
use crate::error::{Error, Result};
use crate::theta::ThetaMatrix;

/// Fixed (Θ, ℏ) pair an algebra instance lives over. Elements of
/// different contexts never mix. ℏ defaults to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraContext {
    theta: ThetaMatrix,
    hbar: Hbar,
}

impl AlgebraContext {
    pub fn new(theta: ThetaMatrix, hbar: Hbar) -> Self {
        Self { theta, hbar }
    }

    /// The default algebra at ℏ = 1; rescaling ℏ is the same as scaling Θ.
    pub fn with_unit_hbar(theta: ThetaMatrix) -> Self {
        Self::new(theta, Hbar::ONE)
    }

    pub fn theta(&self) -> &ThetaMatrix {
        &self.theta
    }

    pub fn hbar(&self) -> Hbar {
        self.hbar
    }

    pub fn n(&self) -> usize {
        self.theta.n()
    }
}

/// Element of the crossed product: the values at the identity and at the
/// flip.
///
/// JSON carries only the two components
/// (`{"at_e": <element>, "at_g": <element>}`); the context is supplied
/// separately.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossedElement {
    ctx: AlgebraContext,
    at_e: LatticeElement,
    at_g: LatticeElement,
}

/// Context-free serialization of a [`CrossedElement`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrossedParts {
    pub at_e: LatticeElement,
    pub at_g: LatticeElement,
}

impl CrossedElement {
    pub fn new(ctx: AlgebraContext, at_e: LatticeElement, at_g: LatticeElement) -> Result<Self> {
        if at_e.n() != ctx.n() {
            return Err(Error::DimensionMismatch {
                expected: ctx.n(),
                got: at_e.n(),
            });
        }
        if at_g.n() != ctx.n() {
            return Err(Error::DimensionMismatch {
                expected: ctx.n(),
                got: at_g.n(),
            });
        }
        Ok(Self { ctx, at_e, at_g })
    }

    /// The identity Φ₀ = (1, 0).
    pub fn identity(ctx: AlgebraContext) -> Self {
        let n = ctx.n();
        Self {
            ctx,
            at_e: LatticeElement::one(n),
            at_g: LatticeElement::zero(n),
        }
    }

    pub fn zero(ctx: AlgebraContext) -> Self {
        let n = ctx.n();
        Self {
            ctx,
            at_e: LatticeElement::zero(n),
            at_g: LatticeElement::zero(n),
        }
    }

    pub fn from_parts(ctx: AlgebraContext, parts: CrossedParts) -> Result<Self> {
        Self::new(ctx, parts.at_e, parts.at_g)
    }

    pub fn to_parts(&self) -> CrossedParts {
        CrossedParts {
            at_e: self.at_e.clone(),
            at_g: self.at_g.clone(),
        }
    }

    pub fn context(&self) -> &AlgebraContext {
        &self.ctx
    }

    pub fn at_e(&self) -> &LatticeElement {
        &self.at_e
    }

    pub fn at_g(&self) -> &LatticeElement {
        &self.at_g
    }

    fn check_context(&self, rhs: &Self) -> Result<()> {
        if self.ctx != rhs.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn multiply(&self, rhs: &Self) -> Result<Self> {
        self.check_context(rhs)?;
        let th = &self.ctx.theta;
        let h = self.ctx.hbar;
        let at_e = self
            .at_e
            .deformed_product(&rhs.at_e, th, h)?
            .add(&self.at_g.deformed_product(&rhs.at_g.gamma_flip(), th, h)?)?;
        let at_g = self
            .at_e
            .deformed_product(&rhs.at_g, th, h)?
            .add(&self.at_g.deformed_product(&rhs.at_e.gamma_flip(), th, h)?)?;
        Ok(Self {
            ctx: self.ctx.clone(),
            at_e,
            at_g,
        })
    }

    pub fn involution(&self) -> Self {
        Self {
            ctx: self.ctx.clone(),
            at_e: self.at_e.involution(),
            at_g: self.at_g.involution().gamma_flip(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_context(rhs)?;
        Ok(Self {
            ctx: self.ctx.clone(),
            at_e: self.at_e.add(&rhs.at_e)?,
            at_g: self.at_g.add(&rhs.at_g)?,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_context(rhs)?;
        Ok(Self {
            ctx: self.ctx.clone(),
            at_e: self.at_e.sub(&rhs.at_e)?,
            at_g: self.at_g.sub(&rhs.at_g)?,
        })
    }

    pub fn scale(&self, c: num_complex::Complex64) -> Self {
        Self {
            ctx: self.ctx.clone(),
            at_e: self.at_e.scale(c),
            at_g: self.at_g.scale(c),
        }
    }

    /// Max of the component-wise sup distances.
    pub fn sup_distance(&self, rhs: &Self) -> f64 {
        self.at_e
            .sup_distance(&rhs.at_e)
            .max(self.at_g.sup_distance(&rhs.at_g))
    }
}
