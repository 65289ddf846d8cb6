//! Randomized law suites, the semiclassical-limit sweep, and the batch
//! certificate runner. Everything is driven by [`SplitMix64`], so a seed
//! pins the whole report.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{Hbar, LatticeElement};
use crate::crossed::{AlgebraContext, CrossedElement};
use crate::error::{Error, Result};
use crate::morita::morita_certificate;
use crate::norm::{norm_lower, Window};
use crate::rng::SplitMix64;
use crate::theta::{LatticePoint, ThetaMatrix};

/// Configuration of a randomized suite run. Identical configurations
/// produce bit-identical reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub n: usize,
    /// Element modes are sampled from [−max_modes, max_modes]^n; cocycle
    /// points use twice that box.
    pub max_modes: i64,
    pub max_terms: usize,
    pub tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            trials: 200,
            n: 2,
            max_modes: 10,
            max_terms: 5,
            tol: 1e-10,
        }
    }
}

/// One verified law: its name, worst observed residual, and verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawResult {
    pub name: String,
    pub max_residual: f64,
    pub pass: bool,
}

/// Machine-readable outcome of a suite run.
///
/// JSON schema: `{"suite":…, "seed":…, "laws":[{"name":…,
/// "max_residual":…, "pass":…}], "pass": bool}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub laws: Vec<LawResult>,
    pub pass: bool,
}

impl Report {
    fn from_laws(suite: &str, seed: u64, laws: Vec<LawResult>) -> Self {
        let pass = laws.iter().all(|l| l.pass);
        Self {
            suite: suite.to_string(),
            seed,
            laws,
            pass,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Any,
    Even,
}

/// Random element with at most `cfg.max_terms` modes in the mode box and
/// coefficients in the unit disc; `Parity::Even` symmetrizes the draw.
pub fn random_element(cfg: &SuiteConfig, rng: &mut SplitMix64, parity: Parity) -> LatticeElement {
    let count = rng.next_usize_in(1, cfg.max_terms.max(1));
    let e = LatticeElement::from_terms(
        cfg.n,
        (0..count).map(|_| {
            let p = LatticePoint::new(
                (0..cfg.n)
                    .map(|_| rng.next_i64_in(-cfg.max_modes, cfg.max_modes))
                    .collect(),
            );
            (p, rng.next_unit_disc())
        }),
    )
    .expect("sampled terms are well-formed");
    match parity {
        Parity::Any => e,
        Parity::Even => e.symmetrize(),
    }
}

/// Random skew-symmetric Θ with upper-triangle entries uniform in
/// [−half_range, half_range].
pub fn random_theta(rng: &mut SplitMix64, n: usize, half_range: f64) -> ThetaMatrix {
    let mut rows = vec![vec![0.0; n]; n];
    for j in 0..n {
        for k in (j + 1)..n {
            let v = half_range * rng.next_symmetric();
            rows[j][k] = v;
            rows[k][j] = -v;
        }
    }
    ThetaMatrix::from_rows(rows).expect("construction is skew by definition")
}

fn random_point(rng: &mut SplitMix64, n: usize, bound: i64) -> LatticePoint {
    LatticePoint::new((0..n).map(|_| rng.next_i64_in(-bound, bound)).collect())
}

/// Run the algebraic-law suite against one (Θ, ℏ).
///
/// Laws: the σ cocycle identity, associativity of ∗_ℏ, the three
/// involution laws, flip equivariance, closure of the even subalgebra,
/// and associativity/anti-multiplicativity in the crossed product. Each
/// law reports its worst residual over `cfg.trials` trials and passes iff
/// that residual is within `cfg.tol`.
pub fn run_axiom_suite(theta: &ThetaMatrix, hbar: Hbar, cfg: &SuiteConfig) -> Result<Report> {
    if cfg.n != theta.n() {
        return Err(Error::DimensionMismatch {
            expected: theta.n(),
            got: cfg.n,
        });
    }
    if cfg.tol < 0.0 || !cfg.tol.is_finite() {
        return Err(Error::InvalidInput(format!("tolerance must be >= 0, got {}", cfg.tol)));
    }
    let mut rng = SplitMix64::new(cfg.seed);
    let mut laws = Vec::new();
    let push = |name: &str, residual: f64, laws: &mut Vec<LawResult>| {
        laws.push(LawResult {
            name: name.to_string(),
            max_residual: residual,
            pass: residual <= cfg.tol,
        });
    };

    let cocycle_bound = 2 * cfg.max_modes;
    let mut worst = 0.0f64;
    for _ in 0..cfg.trials {
        let p = random_point(&mut rng, cfg.n, cocycle_bound);
        let q = random_point(&mut rng, cfg.n, cocycle_bound);
        let r = random_point(&mut rng, cfg.n, cocycle_bound);
        let h = hbar.value();
        let lhs = crate::theta::sigma(theta, h, &p, &q)?
            * crate::theta::sigma(theta, h, &(&p + &q), &r)?;
        let rhs = crate::theta::sigma(theta, h, &p, &(&q + &r))?
            * crate::theta::sigma(theta, h, &q, &r)?;
        worst = worst.max((lhs - rhs).norm());
    }
    push("sigma_cocycle", worst, &mut laws);

    let mut worst = 0.0f64;
    for _ in 0..cfg.trials {
        let a = random_element(cfg, &mut rng, Parity::Any);
        let b = random_element(cfg, &mut rng, Parity::Any);
        let c = random_element(cfg, &mut rng, Parity::Any);
        let lhs = a
            .deformed_product(&b, theta, hbar)?
            .deformed_product(&c, theta, hbar)?;
        let rhs = a.deformed_product(&b.deformed_product(&c, theta, hbar)?, theta, hbar)?;
        worst = worst.max(lhs.sup_distance(&rhs));
    }
    push("product_associativity", worst, &mut laws);

    let mut worst = 0.0f64;
    for _ in 0..cfg.trials {
        let a = random_element(cfg, &mut rng, Parity::Any);
        worst = worst.max(a.involution().involution().sup_distance(&a));
    }
    push("involution_involutive", worst, &mut laws);

    let mut worst = 0.0f64;
    for _ in 0..cfg.trials {
        let a = random_element(cfg, &mut rng, Parity::Any);
        let b = random_element(cfg, &mut rng, Parity::Any);
        let c = rng.next_unit_disc();
        let lhs = a.scale(c).add(&b)?.involution();
        let rhs = a.involution().scale(c.conj()).add(&b.involution())?;
        worst = worst.max(lhs.sup_distance(&rhs));
    }
    push("involution_conjugate_linear", worst, &mut laws);

    let mut worst = 0.0f64;
    for _ in 0..cfg.trials {
        let a = random_element(cfg, &mut rng, Parity::Any);
        let b = random_element(cfg, &mut rng, Parity::Any);
        let lhs = a.deformed_product(&b, theta, hbar)?.involution();
        let rhs = b
            .involution()
            .deformed_product(&a.involution(), theta, hbar)?;
        worst = worst.max(lhs.sup_distance(&rhs));
    }
    push("involution_anti_multiplicative", worst, &mut laws);

    let mut worst = 0.0f64;
    for _ in 0..cfg.trials {
        let a = random_element(cfg, &mut rng, Parity::Any);
        let b = random_element(cfg, &mut rng, Parity::Any);
        let lhs = a.deformed_product(&b, theta, hbar)?.gamma_flip();
        let rhs = a
            .gamma_flip()
            .deformed_product(&b.gamma_flip(), theta, hbar)?;
        worst = worst.max(lhs.sup_distance(&rhs));
    }
    push("flip_equivariance", worst, &mut laws);

    let mut worst = 0.0f64;
    for _ in 0..cfg.trials {
        let a = random_element(cfg, &mut rng, Parity::Even);
        let b = random_element(cfg, &mut rng, Parity::Even);
        let prod = a.deformed_product(&b, theta, hbar)?;
        worst = worst.max(prod.evenness_deviation());
    }
    push("even_product_closure", worst, &mut laws);

    let ctx = AlgebraContext::new(theta.clone(), hbar);
    let random_crossed = |rng: &mut SplitMix64| -> CrossedElement {
        let at_e = random_element(cfg, rng, Parity::Any);
        let at_g = random_element(cfg, rng, Parity::Any);
        CrossedElement::new(ctx.clone(), at_e, at_g).expect("dimensions match by construction")
    };
    let mut worst = 0.0f64;
    for _ in 0..cfg.trials {
        let a = random_crossed(&mut rng);
        let b = random_crossed(&mut rng);
        let c = random_crossed(&mut rng);
        let lhs = a.multiply(&b)?.multiply(&c)?;
        let rhs = a.multiply(&b.multiply(&c)?)?;
        worst = worst.max(lhs.sup_distance(&rhs));
    }
    push("crossed_associativity", worst, &mut laws);

    let mut worst = 0.0f64;
    for _ in 0..cfg.trials {
        let a = random_crossed(&mut rng);
        let b = random_crossed(&mut rng);
        let lhs = a.multiply(&b)?.involution();
        let rhs = b.involution().multiply(&a.involution())?;
        worst = worst.max(lhs.sup_distance(&rhs));
    }
    push("crossed_involution_anti_multiplicative", worst, &mut laws);

    Ok(Report::from_laws("axioms", cfg.seed, laws))
}

/// How the commutator quotient is compared to the Poisson bracket.
///
/// `PaperLiteral` keeps the cocycle exponent −πiℏγ and compares against
/// the bracket scaled by 1/(2π). `Rescaled` widens the exponent to
/// −2π²iℏγ (ℏ ↦ 2πℏ inside σ only) so the quotient converges to the
/// bracket with scale 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScaleMode {
    PaperLiteral,
    Rescaled,
}

impl ScaleMode {
    pub fn sigma_hbar(self, hbar: f64) -> f64 {
        match self {
            ScaleMode::PaperLiteral => hbar,
            ScaleMode::Rescaled => 2.0 * std::f64::consts::PI * hbar,
        }
    }

    pub fn bracket_scale(self) -> f64 {
        match self {
            ScaleMode::PaperLiteral => 1.0 / (2.0 * std::f64::consts::PI),
            ScaleMode::Rescaled => 1.0,
        }
    }
}

impl std::str::FromStr for ScaleMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-literal" => Ok(ScaleMode::PaperLiteral),
            "rescaled" => Ok(ScaleMode::Rescaled),
            other => Err(Error::InvalidInput(format!(
                "unknown scale mode '{other}' (expected 'paper-literal' or 'rescaled')"
            ))),
        }
    }
}

impl std::fmt::Display for ScaleMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScaleMode::PaperLiteral => write!(f, "paper-literal"),
            ScaleMode::Rescaled => write!(f, "rescaled"),
        }
    }
}

/// One point of a semiclassical sweep: the windowed norm of
/// (f ∗_ℏ g − g ∗_ℏ f)/(iℏ) − s·{f, g} at the given ℏ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemiclassicalPoint {
    pub hbar: f64,
    pub residual: f64,
    pub scale: f64,
}

/// Window sized so every product mode of f and g sits in the interior:
/// radius = support(f) + support(g) + 2.
pub fn semiclassical_window(f: &LatticeElement, g: &LatticeElement, cap: usize) -> Result<Window> {
    let radius = (f.support_radius() + g.support_radius() + 2).max(1);
    Window::with_cap(f.n(), radius, cap)
}

/// Residuals of the commutator-quotient-versus-bracket comparison over a
/// grid of nonzero ℏ values. Residuals decay quadratically in ℏ once the
/// phases are in the small-angle regime.
pub fn semiclassical_sweep(
    f: &LatticeElement,
    g: &LatticeElement,
    theta: &ThetaMatrix,
    hbars: &[f64],
    window: &Window,
    mode: ScaleMode,
) -> Result<Vec<SemiclassicalPoint>> {
    let scale = mode.bracket_scale();
    let bracket = f.poisson_bracket(g, theta)?.scale(Complex64::new(scale, 0.0));
    let mut out = Vec::with_capacity(hbars.len());
    for &h in hbars {
        if h == 0.0 || !h.is_finite() {
            return Err(Error::InvalidInput(format!(
                "semiclassical grid requires nonzero finite hbar, got {h}"
            )));
        }
        let h_eff = mode.sigma_hbar(h);
        let hbar_eff = Hbar::new(h_eff)?;
        // (f ∗ g − g ∗ f)/(iℏ) with the mode's σ exponent: the quotient
        // by iℏ_eff is rescaled back to a quotient by iℏ.
        let quotient = f
            .commutator_quotient(g, theta, hbar_eff)?
            .scale(Complex64::new(h_eff / h, 0.0));
        let diff = quotient.sub(&bracket)?;
        let residual = norm_lower(&diff, theta, hbar_eff, window, 1e-10)?;
        out.push(SemiclassicalPoint {
            hbar: h,
            residual,
            scale,
        });
    }
    Ok(out)
}

/// Batch Morita certificates over a list of Θ (at ℏ = 1) and axis pairs.
/// A row passes iff its residual is within `tol`; degeneracy is recorded
/// in the law name.
pub fn run_morita_suite(
    thetas: &[ThetaMatrix],
    pairs: &[(usize, usize)],
    tol: f64,
) -> Result<Report> {
    let mut laws = Vec::new();
    for (i, theta) in thetas.iter().enumerate() {
        let ctx = AlgebraContext::with_unit_hbar(theta.clone());
        for &(j, k) in pairs {
            let cert = morita_certificate(&ctx, j, k)?;
            let name = format!(
                "theta{i}_j{j}k{k}{}",
                if cert.degenerate { "_degenerate" } else { "" }
            );
            laws.push(LawResult {
                name,
                max_residual: cert.residual,
                pass: cert.residual <= tol,
            });
        }
    }
    Ok(Report::from_laws("morita", 0, laws))
}
