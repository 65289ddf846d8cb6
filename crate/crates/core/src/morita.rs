//! The bimodule connecting the crossed product to the even subalgebra.
//!
//! The module space is the algebra itself. The crossed product acts on
//! the left through P·U = P(e) ∗_ℏ U + P(γ) ∗_ℏ U^γ, the even subalgebra
//! acts on the right by multiplication, and the two algebra-valued inner
//! products are
//!
//!   ⟨U, V⟩_C = (U ∗ V*,  U ∗ (V*)^γ)          crossed-product valued
//!   ⟨U, V⟩_D = U* ∗ V + (U* ∗ V)^γ            even-subalgebra valued
//!
//! The second ⟨·,·⟩_D summand is written as the flip of the first: the
//! flip commutes with ∗_ℏ term by term, so this evaluation order makes
//! the output even to the last bit. The two products satisfy the
//! compatibility law ⟨U,V⟩_C · W = U · ⟨V,W⟩_D.
//!
//! `morita_certificate` evaluates the explicit invertibility witness: for
//! an axis pair (j, k), the combination
//! Λ·(⟨U_j,U_j⁻¹⟩_C − ⟨U_k,U_k⁻¹⟩_C + ⟨U_k²,1⟩_C) with Λ = (U_j⁻²,
//! −U_j⁻²U_k²U_j²) collapses to (1 − e^{8πiℏθ_jk})·Φ₀, a nonzero multiple
//! of the identity exactly when 4ℏθ_jk is not an integer.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::LatticeElement;
use crate::crossed::{AlgebraContext, CrossedElement};
use crate::error::{Error, Result};
use crate::theta::{reduce_mod_one, LatticePoint};

/// Coefficient moduli below this flag the certificate as degenerate
/// (4ℏθ_jk at an integer).
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Element of the bimodule, tied to a fixed context.
#[derive(Clone, Debug, PartialEq)]
pub struct BimoduleVector {
    ctx: AlgebraContext,
    elem: LatticeElement,
}

impl BimoduleVector {
    pub fn new(ctx: AlgebraContext, elem: LatticeElement) -> Result<Self> {
        if elem.n() != ctx.n() {
            return Err(Error::DimensionMismatch {
                expected: ctx.n(),
                got: elem.n(),
            });
        }
        Ok(Self { ctx, elem })
    }

    pub fn monomial(ctx: AlgebraContext, p: LatticePoint) -> Result<Self> {
        Self::new(ctx, LatticeElement::monomial(p))
    }

    pub fn element(&self) -> &LatticeElement {
        &self.elem
    }

    pub fn context(&self) -> &AlgebraContext {
        &self.ctx
    }

    fn check_context(&self, other: &AlgebraContext) -> Result<()> {
        if &self.ctx != other {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }
}

/// Right action U·d by an even element d.
pub fn right_action(u: &BimoduleVector, d: &LatticeElement) -> Result<BimoduleVector> {
    let tol = DEGENERACY_TOL * d.max_coeff_modulus().max(1.0);
    if !d.is_even(tol) {
        return Err(Error::NotEven {
            deviation: d.evenness_deviation(),
        });
    }
    let prod = u
        .elem
        .deformed_product(d, u.ctx.theta(), u.ctx.hbar())?;
    BimoduleVector::new(u.ctx.clone(), prod)
}

/// Left action P·U = P(e) ∗_ℏ U + P(γ) ∗_ℏ U^γ.
pub fn left_action(p: &CrossedElement, u: &BimoduleVector) -> Result<BimoduleVector> {
    u.check_context(p.context())?;
    let th = u.ctx.theta();
    let h = u.ctx.hbar();
    let out = p
        .at_e()
        .deformed_product(&u.elem, th, h)?
        .add(&p.at_g().deformed_product(&u.elem.gamma_flip(), th, h)?)?;
    BimoduleVector::new(u.ctx.clone(), out)
}

/// Even-subalgebra-valued inner product ⟨U, V⟩_D = U*V + (U*V)^γ.
pub fn inner_d(u: &BimoduleVector, v: &BimoduleVector) -> Result<LatticeElement> {
    u.check_context(&v.ctx)?;
    let half = u
        .elem
        .involution()
        .deformed_product(&v.elem, u.ctx.theta(), u.ctx.hbar())?;
    half.add(&half.gamma_flip())
}

/// Crossed-product-valued inner product ⟨U, V⟩_C = (UV*, U(V*)^γ).
pub fn inner_c(u: &BimoduleVector, v: &BimoduleVector) -> Result<CrossedElement> {
    u.check_context(&v.ctx)?;
    let th = u.ctx.theta();
    let h = u.ctx.hbar();
    let vstar = v.elem.involution();
    let at_e = u.elem.deformed_product(&vstar, th, h)?;
    let at_g = u.elem.deformed_product(&vstar.gamma_flip(), th, h)?;
    CrossedElement::new(u.ctx.clone(), at_e, at_g)
}

/// Sup-coefficient distance between ⟨U,V⟩_C · W and U · ⟨V,W⟩_D.
pub fn compatibility_check(
    u: &BimoduleVector,
    v: &BimoduleVector,
    w: &BimoduleVector,
) -> Result<f64> {
    let lhs = left_action(&inner_c(u, v)?, w)?;
    let rhs = right_action(u, &inner_d(v, w)?)?;
    Ok(lhs.elem.sup_distance(&rhs.elem))
}

/// Invertibility witness for one axis pair.
///
/// JSON schema: `{"j":…, "k":…, "theta_jk":…, "coefficient_re":…,
/// "coefficient_im":…, "residual":…, "degenerate":…}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoritaCertificate {
    /// 1-based axis indices.
    pub j: usize,
    pub k: usize,
    pub theta_jk: f64,
    pub coefficient_re: f64,
    pub coefficient_im: f64,
    /// Sup-coefficient distance between the computed combination and
    /// coefficient·Φ₀.
    pub residual: f64,
    pub degenerate: bool,
}

impl MoritaCertificate {
    pub fn coefficient(&self) -> Complex64 {
        Complex64::new(self.coefficient_re, self.coefficient_im)
    }
}

/// Evaluate the certificate for the (1-based) axis pair (j, k).
///
/// Monomial words are multiplied left to right; U_k² denotes the single
/// monomial at 2e_k. The combination must equal coefficient·Φ₀ whether or
/// not the coefficient vanishes; `degenerate` only records that the
/// coefficient is numerically zero.
pub fn morita_certificate(ctx: &AlgebraContext, j: usize, k: usize) -> Result<MoritaCertificate> {
    let n = ctx.n();
    if j == k || j < 1 || k < 1 || j > n || k > n {
        return Err(Error::InvalidAxisPair { j, k, n });
    }
    let (ja, ka) = (j - 1, k - 1);
    let th = ctx.theta();
    let h = ctx.hbar();

    let mono = |p: LatticePoint| LatticeElement::monomial(p);
    let uj = |m: i64| mono(LatticePoint::axis(n, ja).scaled(m));
    let uk = |m: i64| mono(LatticePoint::axis(n, ka).scaled(m));

    // Λ = (U_j⁻², −U_j⁻² U_k² U_j²), words multiplied left to right.
    let lambda_e = uj(-2);
    let lambda_g = uj(-2)
        .deformed_product(&uk(2), th, h)?
        .deformed_product(&uj(2), th, h)?
        .neg();
    let lambda = CrossedElement::new(ctx.clone(), lambda_e, lambda_g)?;

    let vec = |e: LatticeElement| BimoduleVector::new(ctx.clone(), e);
    let term_j = inner_c(&vec(uj(1))?, &vec(uj(-1))?)?;
    let term_k = inner_c(&vec(uk(1))?, &vec(uk(-1))?)?;
    let term_k2 = inner_c(&vec(uk(2))?, &vec(LatticeElement::one(n))?)?;
    let combination = lambda.multiply(&term_j.sub(&term_k)?.add(&term_k2)?)?;

    // coefficient = 1 − e^{8πiℏθ_jk}, evaluated from the reduced phase so
    // dyadic degeneracies come out exactly zero.
    let theta_jk = th.entry(ja, ka);
    let reduced = reduce_mod_one(4.0 * h.value() * theta_jk);
    let coefficient = Complex64::new(1.0, 0.0)
        - Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * reduced);

    let expected = CrossedElement::identity(ctx.clone()).scale(coefficient);
    let residual = combination.sup_distance(&expected);

    Ok(MoritaCertificate {
        j,
        k,
        theta_jk,
        coefficient_re: coefficient.re,
        coefficient_im: coefficient.im,
        residual,
        degenerate: coefficient.norm() < DEGENERACY_TOL,
    })
}
