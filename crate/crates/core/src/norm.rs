//! Truncated regular representation and operator-norm bounds.
//!
//! Left ∗_ℏ-multiplication by an element acts on ℓ²(Z^n); compressing the
//! action to a centered cube window {q : |q_i| ≤ R} gives a dense complex
//! matrix whose largest singular value is a certified lower bound for the
//! operator norm ‖·‖_ℏ (compressions never increase it, and the bound is
//! non-decreasing in R). The ℓ¹ coefficient norm is the matching upper
//! bound, since every monomial acts unitarily.
//!
//! The singular value is extracted by power iteration on M†M with a
//! deterministic start vector; any Rayleigh quotient along the way is
//! already a valid lower bound.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::algebra::{Hbar, LatticeElement};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::theta::{sigma, LatticePoint, ThetaMatrix};

/// Default cap on the number of window basis vectors.
pub const DEFAULT_WINDOW_CAP: usize = 20_000;

/// Relative Rayleigh-quotient tolerance used when callers do not choose one.
pub const DEFAULT_POWER_TOL: f64 = 1e-10;

/// Iteration cap for the power method.
pub const POWER_ITER_CAP: usize = 10_000;

const POWER_SEED: u64 = 0x9A3F_51C2_7D08_4B6E;

/// Centered cube {q ∈ Z^n : |q_i| ≤ R}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    n: usize,
    radius: i64,
    len: usize,
}

impl Window {
    pub fn new(n: usize, radius: i64) -> Result<Self> {
        Self::with_cap(n, radius, DEFAULT_WINDOW_CAP)
    }

    pub fn with_cap(n: usize, radius: i64, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("window dimension must be at least 1".into()));
        }
        if radius < 1 {
            return Err(Error::InvalidInput(format!(
                "window radius must be at least 1, got {radius}"
            )));
        }
        let side = 2usize
            .checked_mul(radius as usize)
            .and_then(|s| s.checked_add(1))
            .ok_or(Error::WindowTooLarge { size: usize::MAX, cap })?;
        let mut len = 1usize;
        for _ in 0..n {
            len = len
                .checked_mul(side)
                .ok_or(Error::WindowTooLarge { size: usize::MAX, cap })?;
        }
        if len > cap {
            return Err(Error::WindowTooLarge { size: len, cap });
        }
        Ok(Self { n, radius, len })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    /// Number of basis vectors, (2R+1)^n.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        p.dim() == self.n && p.coords().iter().all(|c| c.abs() <= self.radius)
    }

    /// Mixed-radix index of a window point; first coordinate is the most
    /// significant digit, so indices follow lexicographic order.
    pub fn index_of(&self, p: &LatticePoint) -> Option<usize> {
        if !self.contains(p) {
            return None;
        }
        let side = (2 * self.radius + 1) as usize;
        let mut idx = 0usize;
        for &c in p.coords() {
            idx = idx * side + (c + self.radius) as usize;
        }
        Some(idx)
    }

    /// All window points in index order.
    pub fn points(&self) -> Vec<LatticePoint> {
        let side = (2 * self.radius + 1) as i64;
        let mut out = Vec::with_capacity(self.len);
        let mut digits = vec![0i64; self.n];
        loop {
            out.push(LatticePoint::new(
                digits.iter().map(|d| d - self.radius).collect(),
            ));
            let mut axis = self.n;
            loop {
                if axis == 0 {
                    return out;
                }
                axis -= 1;
                digits[axis] += 1;
                if digits[axis] < side {
                    break;
                }
                digits[axis] = 0;
            }
        }
    }
}

/// Compression of left ∗_ℏ-multiplication to a window.
///
/// Entry at (row p, column r) is a(p−r)·σ_ℏ(p−r, r); zero when p−r is
/// outside the support of the element.
#[derive(Clone, Debug)]
pub struct TruncatedRep {
    pub matrix: Array2<Complex64>,
    pub basis: Vec<LatticePoint>,
    pub window: Window,
}

pub fn build_rep(
    a: &LatticeElement,
    theta: &ThetaMatrix,
    hbar: Hbar,
    window: &Window,
) -> Result<TruncatedRep> {
    if a.n() != window.n() {
        return Err(Error::DimensionMismatch {
            expected: window.n(),
            got: a.n(),
        });
    }
    if theta.n() != window.n() {
        return Err(Error::DimensionMismatch {
            expected: window.n(),
            got: theta.n(),
        });
    }
    let basis = window.points();
    let mut matrix = Array2::from_elem((window.len(), window.len()), Complex64::new(0.0, 0.0));
    for (col, r) in basis.iter().enumerate() {
        for (s, c) in a.terms() {
            if let Some(row) = window.index_of(&(r + s)) {
                matrix[[row, col]] = c * sigma(theta, hbar.value(), s, r)?;
            }
        }
    }
    Ok(TruncatedRep {
        matrix,
        basis,
        window: *window,
    })
}

/// Result of a norm estimation run.
#[derive(Clone, Copy, Debug)]
pub struct NormEstimate {
    pub value: f64,
    pub iterations: usize,
}

fn l2_norm(v: &Array1<Complex64>) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn random_vector(len: usize, rng: &mut SplitMix64) -> Array1<Complex64> {
    Array1::from_iter((0..len).map(|_| Complex64::new(rng.next_symmetric(), rng.next_symmetric())))
}

struct PowerOutcome {
    value: f64,
    iterations: usize,
    vector: Array1<Complex64>,
    converged: bool,
}

/// Power iteration on M†M. Returns the square root of the final Rayleigh
/// quotient, which is a lower bound for the largest singular value.
fn power_singular(
    m: &Array2<Complex64>,
    tol: f64,
    cap: usize,
    v0: Array1<Complex64>,
) -> PowerOutcome {
    let adjoint = m.t().mapv(|z| z.conj());
    let mut v = v0;
    let nv = l2_norm(&v);
    if nv == 0.0 {
        let mut e0 = Array1::from_elem(v.len(), Complex64::new(0.0, 0.0));
        e0[0] = Complex64::new(1.0, 0.0);
        v = e0;
    } else {
        v.mapv_inplace(|z| z / nv);
    }
    let mut prev = f64::NAN;
    let mut iterations = 0;
    for it in 1..=cap {
        iterations = it;
        let mv = m.dot(&v);
        let rho: f64 = mv.iter().map(|z| z.norm_sqr()).sum();
        if rho == 0.0 {
            return PowerOutcome {
                value: 0.0,
                iterations,
                vector: v,
                converged: true,
            };
        }
        if !prev.is_nan() && (rho - prev).abs() <= tol * rho {
            return PowerOutcome {
                value: rho.sqrt(),
                iterations,
                vector: v,
                converged: true,
            };
        }
        prev = rho;
        let mut w = adjoint.dot(&mv);
        let wn = l2_norm(&w);
        if wn == 0.0 {
            return PowerOutcome {
                value: rho.sqrt(),
                iterations,
                vector: v,
                converged: true,
            };
        }
        w.mapv_inplace(|z| z / wn);
        v = w;
    }
    PowerOutcome {
        value: if prev.is_nan() { 0.0 } else { prev.sqrt() },
        iterations,
        vector: v,
        converged: false,
    }
}

/// Lower bound for ‖a‖_ℏ from the window compression.
pub fn norm_lower(
    a: &LatticeElement,
    theta: &ThetaMatrix,
    hbar: Hbar,
    window: &Window,
    tol: f64,
) -> Result<f64> {
    norm_lower_detailed(a, theta, hbar, window, tol).map(|e| e.value)
}

pub fn norm_lower_detailed(
    a: &LatticeElement,
    theta: &ThetaMatrix,
    hbar: Hbar,
    window: &Window,
    tol: f64,
) -> Result<NormEstimate> {
    if tol <= 0.0 {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let rep = build_rep(a, theta, hbar, window)?;
    if a.is_zero() {
        return Ok(NormEstimate {
            value: 0.0,
            iterations: 0,
        });
    }
    let mut rng = SplitMix64::new(POWER_SEED);
    let v0 = random_vector(window.len(), &mut rng);
    let out = power_singular(&rep.matrix, tol, POWER_ITER_CAP, v0);
    if !out.converged {
        return Err(Error::NormNonConvergence {
            best: out.value,
            iterations: out.iterations,
        });
    }
    Ok(NormEstimate {
        value: out.value,
        iterations: out.iterations,
    })
}

/// Upper bound ‖a‖_ℏ ≤ Σ_p |a(p)|: each monomial acts unitarily.
pub fn norm_upper_l1(a: &LatticeElement) -> f64 {
    a.l1_norm()
}

/// Max of |Σ_p a(p) e^{2πi p·x}| over the uniform grid
/// (k_1/g, …, k_n/g), 0 ≤ k_i < g. A lower bound of the sup-norm; use
/// g ≥ 2·(max mode) + 1 for a faithful reading.
pub fn sup_norm_grid(a: &LatticeElement, grid_points_per_axis: usize) -> f64 {
    let g = grid_points_per_axis.max(1);
    let n = a.n();
    let mut k = vec![0usize; n];
    let mut best = 0.0f64;
    loop {
        let mut val = Complex64::new(0.0, 0.0);
        for (p, c) in a.terms() {
            let dot: i64 = p
                .coords()
                .iter()
                .zip(&k)
                .map(|(pc, ki)| pc * *ki as i64)
                .sum();
            let frac = dot.rem_euclid(g as i64) as f64 / g as f64;
            val += c * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * frac);
        }
        best = best.max(val.norm());
        let mut axis = n;
        loop {
            if axis == 0 {
                return best;
            }
            axis -= 1;
            k[axis] += 1;
            if k[axis] < g {
                break;
            }
            k[axis] = 0;
        }
    }
}

/// Window indices r with r ± s inside the window for every mode s in the
/// supports, i.e. the rows/columns free of truncation artifacts.
pub fn interior_indices(window: &Window, supports: &[&LatticeElement]) -> Vec<usize> {
    let n = window.n();
    let mut per_axis = vec![0i64; n];
    for e in supports {
        for (p, _) in e.terms() {
            for (axis, &c) in p.coords().iter().enumerate() {
                per_axis[axis] = per_axis[axis].max(c.abs());
            }
        }
    }
    let mut out = Vec::new();
    for (idx, p) in window.points().iter().enumerate() {
        let inside = p
            .coords()
            .iter()
            .zip(&per_axis)
            .all(|(&c, &m)| c.abs() <= window.radius() - m);
        if inside {
            out.push(idx);
        }
    }
    out
}

/// Smallest eigenvalue of the Hermitian part of the interior block,
/// estimated with a shifted power iteration on s·I − H.
pub fn interior_min_eigenvalue(rep: &TruncatedRep, interior: &[usize]) -> Result<f64> {
    if interior.is_empty() {
        return Err(Error::InvalidInput("interior of the window is empty".into()));
    }
    let k = interior.len();
    let mut h = Array2::from_elem((k, k), Complex64::new(0.0, 0.0));
    for (a, &ia) in interior.iter().enumerate() {
        for (b, &ib) in interior.iter().enumerate() {
            let z = rep.matrix[[ia, ib]];
            let zt = rep.matrix[[ib, ia]].conj();
            h[[a, b]] = 0.5 * (z + zt);
        }
    }
    // ∞-norm bound on the spectral radius.
    let mut shift = 0.0f64;
    for a in 0..k {
        let row: f64 = (0..k).map(|b| h[[a, b]].norm()).sum();
        shift = shift.max(row);
    }
    if shift == 0.0 {
        return Ok(0.0);
    }
    let mut km = Array2::from_elem((k, k), Complex64::new(0.0, 0.0));
    for a in 0..k {
        for b in 0..k {
            km[[a, b]] = -h[[a, b]];
        }
        km[[a, a]] += Complex64::new(shift, 0.0);
    }
    let mut rng = SplitMix64::new(POWER_SEED ^ 0x55aa);
    let mut v = random_vector(k, &mut rng);
    let nv = l2_norm(&v);
    v.mapv_inplace(|z| z / nv);
    let mut prev = f64::NAN;
    for _ in 0..POWER_ITER_CAP {
        let kv = km.dot(&v);
        let rho: f64 = v
            .iter()
            .zip(kv.iter())
            .map(|(a, b)| (a.conj() * b).re)
            .sum();
        if !prev.is_nan() && (rho - prev).abs() <= 1e-12 * rho.abs().max(1e-300) {
            return Ok(shift - rho);
        }
        prev = rho;
        let kn = l2_norm(&kv);
        if kn == 0.0 {
            return Ok(shift);
        }
        v = kv.mapv(|z| z / kn);
    }
    Ok(shift - prev)
}

/// One row of a norm sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormSweepRow {
    pub hbar: f64,
    pub radius: i64,
    pub norm_lower: f64,
    pub norm_upper: f64,
    pub iterations: usize,
}

/// Lower/upper norm bounds over a grid of (ℏ, R). Within each ℏ the power
/// iteration is warm-started from the previous radius's top vector, which
/// makes the reported lower bounds non-decreasing in R by construction.
pub fn norm_sweep(
    a: &LatticeElement,
    theta: &ThetaMatrix,
    hbars: &[f64],
    radii: &[i64],
    tol: f64,
    cap: usize,
) -> Result<Vec<NormSweepRow>> {
    if tol <= 0.0 {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let upper = norm_upper_l1(a);
    let mut rows = Vec::with_capacity(hbars.len() * radii.len());
    for &h in hbars {
        let hbar = Hbar::new(h)?;
        let mut warm: Option<(Vec<LatticePoint>, Array1<Complex64>)> = None;
        for &radius in radii {
            let window = Window::with_cap(a.n(), radius, cap)?;
            if a.is_zero() {
                rows.push(NormSweepRow {
                    hbar: h,
                    radius,
                    norm_lower: 0.0,
                    norm_upper: upper,
                    iterations: 0,
                });
                continue;
            }
            let rep = build_rep(a, theta, hbar, &window)?;
            let v0 = match &warm {
                Some((basis, v)) => {
                    let mut embedded =
                        Array1::from_elem(window.len(), Complex64::new(0.0, 0.0));
                    for (i, p) in basis.iter().enumerate() {
                        if let Some(idx) = window.index_of(p) {
                            embedded[idx] = v[i];
                        }
                    }
                    if l2_norm(&embedded) == 0.0 {
                        let mut rng = SplitMix64::new(POWER_SEED);
                        random_vector(window.len(), &mut rng)
                    } else {
                        embedded
                    }
                }
                None => {
                    let mut rng = SplitMix64::new(POWER_SEED);
                    random_vector(window.len(), &mut rng)
                }
            };
            let out = power_singular(&rep.matrix, tol, POWER_ITER_CAP, v0);
            if !out.converged {
                return Err(Error::NormNonConvergence {
                    best: out.value,
                    iterations: out.iterations,
                });
            }
            rows.push(NormSweepRow {
                hbar: h,
                radius,
                norm_lower: out.value,
                norm_upper: upper,
                iterations: out.iterations,
            });
            warm = Some((rep.basis, out.vector));
        }
    }
    Ok(rows)
}
