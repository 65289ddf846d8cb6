//! Deformation parameter and the scalar phases built from it.
//!
//! A real skew-symmetric n×n matrix Θ = (θ_jk) determines, on integer
//! lattice points p, q ∈ Z^n,
//!
//!   γ(p, q)   = Σ_jk θ_jk p_j q_k            (bilinear, antisymmetric)
//!   σ_ℏ(p, q) = exp(−π i ℏ γ(p, q))          (unimodular 2-cocycle)
//!
//! Every product in this crate reduces to these two functions. γ is
//! contracted as Σ_{j<k} θ_jk (p_j q_k − p_k q_j): the integer minors are
//! exact in i64/f64, which makes antisymmetry bit-exact and halves the
//! rounding of the naive double sum. The phase ℏγ is reduced to [−1, 1]
//! (period 2 of exp(−πix)) before exponentiation, so unit modulus
//! survives large modes and the reduction is exact for dyadic θ.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fourier mode index p ∈ Z^n.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        assert!(!coords.is_empty(), "lattice point needs at least one coordinate");
        Self(coords)
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    /// Unit vector along axis `j` (0-based).
    pub fn axis(n: usize, j: usize) -> Self {
        assert!(j < n, "axis {j} out of range for dimension {n}");
        let mut c = vec![0; n];
        c[j] = 1;
        Self(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self(self.0.iter().map(|c| c * k).collect())
    }

    /// Max-norm |p|_∞.
    pub fn sup_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(coords: Vec<i64>) -> Self {
        Self::new(coords)
    }
}

impl From<&[i64]> for LatticePoint {
    fn from(coords: &[i64]) -> Self {
        Self::new(coords.to_vec())
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        assert_eq!(self.dim(), rhs.dim(), "lattice point dimensions differ");
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: &LatticePoint) -> LatticePoint {
        assert_eq!(self.dim(), rhs.dim(), "lattice point dimensions differ");
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Real skew-symmetric deformation parameter Θ.
///
/// Skew-symmetry is validated at construction against exact equality of
/// the stored values; non-skew input is rejected rather than repaired.
///
/// JSON schema: `{"n": <int>, "entries": [[row-major reals]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ThetaRepr", into = "ThetaRepr")]
pub struct ThetaMatrix {
    n: usize,
    entries: Vec<f64>, // row-major n×n
}

#[derive(Serialize, Deserialize)]
struct ThetaRepr {
    n: usize,
    entries: Vec<Vec<f64>>,
}

impl ThetaMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidInput("theta must have n >= 1".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            let _ = i;
            entries.extend_from_slice(row);
        }
        Self::validate(n, &entries)?;
        Ok(Self { n, entries })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::from_rows(vec![vec![0.0; n]; n])
    }

    /// Θ with θ_jk = value, θ_kj = −value (0-based axes) and zeros elsewhere.
    pub fn elementary(n: usize, j: usize, k: usize, value: f64) -> Result<Self> {
        if j >= n || k >= n || j == k {
            return Err(Error::InvalidAxisPair { j: j + 1, k: k + 1, n });
        }
        let mut rows = vec![vec![0.0; n]; n];
        rows[j][k] = value;
        rows[k][j] = -value;
        Self::from_rows(rows)
    }

    fn validate(n: usize, entries: &[f64]) -> Result<()> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        for j in 0..n {
            for k in j..n {
                let a = entries[j * n + k];
                let b = entries[k * n + j];
                if !a.is_finite() || !b.is_finite() || a != -b {
                    return Err(Error::NotSkewSymmetric {
                        row: j,
                        col: k,
                        value: a,
                        transposed: b,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// θ_jk with 0-based indices.
    pub fn entry(&self, j: usize, k: usize) -> f64 {
        self.entries[j * self.n + k]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|j| self.entries[j * self.n..(j + 1) * self.n].to_vec())
            .collect()
    }

    fn check_point(&self, p: &LatticePoint) -> Result<()> {
        if p.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: p.dim(),
            });
        }
        Ok(())
    }
}

impl TryFrom<ThetaRepr> for ThetaMatrix {
    type Error = Error;
    fn try_from(r: ThetaRepr) -> Result<Self> {
        if r.entries.len() != r.n {
            return Err(Error::DimensionMismatch {
                expected: r.n,
                got: r.entries.len(),
            });
        }
        let m = Self::from_rows(r.entries)?;
        if m.n != r.n {
            return Err(Error::DimensionMismatch {
                expected: r.n,
                got: m.n,
            });
        }
        Ok(m)
    }
}

impl From<ThetaMatrix> for ThetaRepr {
    fn from(m: ThetaMatrix) -> Self {
        ThetaRepr {
            n: m.n,
            entries: m.rows(),
        }
    }
}

/// Reduce `x` to `[-1, 1]` modulo 2, exactly when `x` is a dyadic
/// rational times an integer. `(x/2).round()` is an exact integer and
/// the final subtraction is exact by Sterbenz's lemma.
pub(crate) fn reduce_mod_two(x: f64) -> f64 {
    x - 2.0 * (x / 2.0).round()
}

/// Reduce `x` to `[-1/2, 1/2]` modulo 1.
pub(crate) fn reduce_mod_one(x: f64) -> f64 {
    x - x.round()
}

/// The bilinear pairing γ(p, q) = Σ_jk θ_jk p_j q_k.
///
/// Contracted over the upper triangle against the exact integer minors
/// p_j q_k − p_k q_j, so γ(q, p) == −γ(p, q) holds bitwise and γ(p, p)
/// is exactly zero.
pub fn gamma(theta: &ThetaMatrix, p: &LatticePoint, q: &LatticePoint) -> Result<f64> {
    theta.check_point(p)?;
    theta.check_point(q)?;
    let pc = p.coords();
    let qc = q.coords();
    let n = theta.n();
    let mut acc = 0.0;
    for j in 0..n {
        for k in (j + 1)..n {
            let minor = pc[j] * qc[k] - pc[k] * qc[j];
            acc += theta.entry(j, k) * minor as f64;
        }
    }
    Ok(acc)
}

/// The 2-cocycle σ_ℏ(p, q) = exp(−π i ℏ γ(p, q)).
///
/// |σ| = 1 up to one rounding of sin/cos; σ_0 ≡ 1 exactly, and
/// σ(p, −p) = σ(p, 0) = σ(0, p) = 1 exactly since γ vanishes there.
pub fn sigma(theta: &ThetaMatrix, hbar: f64, p: &LatticePoint, q: &LatticePoint) -> Result<Complex64> {
    let g = gamma(theta, p, q)?;
    let x = reduce_mod_two(hbar * g);
    Ok(Complex64::from_polar(1.0, -std::f64::consts::PI * x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use proptest::prelude::*;

    fn theta_2d(t: f64) -> ThetaMatrix {
        ThetaMatrix::elementary(2, 0, 1, t).unwrap()
    }

    fn random_theta(rng: &mut SplitMix64, n: usize) -> ThetaMatrix {
        let mut rows = vec![vec![0.0; n]; n];
        for j in 0..n {
            for k in (j + 1)..n {
                let v = 0.5 * rng.next_symmetric();
                rows[j][k] = v;
                rows[k][j] = -v;
            }
        }
        ThetaMatrix::from_rows(rows).unwrap()
    }

    fn random_point(rng: &mut SplitMix64, n: usize, bound: i64) -> LatticePoint {
        LatticePoint::new((0..n).map(|_| rng.next_i64_in(-bound, bound)).collect())
    }

    #[test]
    fn gamma_on_equal_points_is_zero() {
        let mut rng = SplitMix64::new(1);
        for n in 2..=4 {
            let th = random_theta(&mut rng, n);
            for _ in 0..50 {
                let p = random_point(&mut rng, n, 20);
                assert_eq!(gamma(&th, &p, &p).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn gamma_basic_value() {
        let th = theta_2d(0.5);
        let p = LatticePoint::new(vec![1, 0]);
        let q = LatticePoint::new(vec![0, 1]);
        assert_eq!(gamma(&th, &p, &q).unwrap(), 0.5);
        assert_eq!(gamma(&th, &q, &p).unwrap(), -0.5);
    }

    #[test]
    fn gamma_antisymmetric_bitwise() {
        let mut rng = SplitMix64::new(2);
        for n in 2..=4 {
            let th = random_theta(&mut rng, n);
            for _ in 0..100 {
                let p = random_point(&mut rng, n, 20);
                let q = random_point(&mut rng, n, 20);
                let g = gamma(&th, &p, &q).unwrap();
                assert_eq!(gamma(&th, &q, &p).unwrap(), -g);
            }
        }
    }

    #[test]
    fn gamma_bilinear_exact_for_dyadic_theta() {
        // Entries k/1024 keep every product and sum exactly representable.
        let mut rng = SplitMix64::new(3);
        for _ in 0..50 {
            let n = 3;
            let mut rows = vec![vec![0.0; n]; n];
            for j in 0..n {
                for k in (j + 1)..n {
                    let v = rng.next_i64_in(-512, 512) as f64 / 1024.0;
                    rows[j][k] = v;
                    rows[k][j] = -v;
                }
            }
            let th = ThetaMatrix::from_rows(rows).unwrap();
            let p = random_point(&mut rng, n, 100);
            let p2 = random_point(&mut rng, n, 100);
            let q = random_point(&mut rng, n, 100);
            let lhs = gamma(&th, &(&p + &p2), &q).unwrap();
            let rhs = gamma(&th, &p, &q).unwrap() + gamma(&th, &p2, &q).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn sigma_at_zero_hbar_is_one() {
        let mut rng = SplitMix64::new(4);
        let th = random_theta(&mut rng, 3);
        for _ in 0..20 {
            let p = random_point(&mut rng, 3, 20);
            let q = random_point(&mut rng, 3, 20);
            assert_eq!(sigma(&th, 0.0, &p, &q).unwrap(), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn sigma_basic_value_is_minus_i() {
        let th = theta_2d(0.5);
        let p = LatticePoint::new(vec![1, 0]);
        let q = LatticePoint::new(vec![0, 1]);
        let s = sigma(&th, 1.0, &p, &q).unwrap();
        assert!((s - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn sigma_unit_modulus_and_degenerate_pairs() {
        let mut rng = SplitMix64::new(5);
        let th = random_theta(&mut rng, 4);
        let one = Complex64::new(1.0, 0.0);
        for _ in 0..100 {
            let p = random_point(&mut rng, 4, 1 << 20);
            let q = random_point(&mut rng, 4, 1 << 20);
            let s = sigma(&th, 1.0, &p, &q).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-15);
            assert_eq!(sigma(&th, 1.0, &p, &(-&p)).unwrap(), one);
            assert_eq!(sigma(&th, 1.0, &p, &LatticePoint::zero(4)).unwrap(), one);
            assert_eq!(sigma(&th, 1.0, &LatticePoint::zero(4), &q).unwrap(), one);
        }
    }

    #[test]
    fn sigma_conjugate_swaps_arguments() {
        let mut rng = SplitMix64::new(6);
        for n in 2..=4 {
            let th = random_theta(&mut rng, n);
            for _ in 0..100 {
                let p = random_point(&mut rng, n, 20);
                let q = random_point(&mut rng, n, 20);
                let lhs = sigma(&th, 1.0, &p, &q).unwrap().conj();
                let rhs = sigma(&th, 1.0, &q, &p).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn sigma_cocycle_identity() {
        let mut rng = SplitMix64::new(7);
        let mut worst: f64 = 0.0;
        for n in 2..=4 {
            let th = random_theta(&mut rng, n);
            for _ in 0..500 {
                let p = random_point(&mut rng, n, 20);
                let q = random_point(&mut rng, n, 20);
                let r = random_point(&mut rng, n, 20);
                let lhs = sigma(&th, 1.0, &p, &q).unwrap() * sigma(&th, 1.0, &(&p + &q), &r).unwrap();
                let rhs = sigma(&th, 1.0, &p, &(&q + &r)).unwrap() * sigma(&th, 1.0, &q, &r).unwrap();
                worst = worst.max((lhs - rhs).norm());
            }
        }
        assert!(worst <= 1e-12, "cocycle residual {worst:e}");
    }

    #[test]
    fn rejects_non_skew_matrices() {
        assert!(ThetaMatrix::from_rows(vec![vec![0.0, 0.5], vec![0.5, 0.0]]).is_err());
        assert!(ThetaMatrix::from_rows(vec![vec![0.1, 0.5], vec![-0.5, 0.0]]).is_err());
        assert!(ThetaMatrix::from_rows(vec![]).is_err());
        assert!(ThetaMatrix::from_rows(vec![vec![0.0, f64::NAN], vec![f64::NAN, 0.0]]).is_err());
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let th = theta_2d(0.5);
        let p = LatticePoint::new(vec![1, 0, 0]);
        let q = LatticePoint::new(vec![0, 1]);
        assert!(matches!(
            gamma(&th, &p, &q),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let th = ThetaMatrix::elementary(3, 0, 2, 0.25).unwrap();
        let s = serde_json::to_string(&th).unwrap();
        let back: ThetaMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(th, back);

        let bad = r#"{"n": 2, "entries": [[0.0, 0.5], [0.5, 0.0]]}"#;
        assert!(serde_json::from_str::<ThetaMatrix>(bad).is_err());
        let short = r#"{"n": 3, "entries": [[0.0, 0.5], [-0.5, 0.0]]}"#;
        assert!(serde_json::from_str::<ThetaMatrix>(short).is_err());
    }

    proptest! {
        #[test]
        fn prop_gamma_antisymmetric(
            t01 in -0.5f64..0.5,
            t02 in -0.5f64..0.5,
            t12 in -0.5f64..0.5,
            p in proptest::array::uniform3(-20i64..=20),
            q in proptest::array::uniform3(-20i64..=20),
        ) {
            let th = ThetaMatrix::from_rows(vec![
                vec![0.0, t01, t02],
                vec![-t01, 0.0, t12],
                vec![-t02, -t12, 0.0],
            ]).unwrap();
            let p = LatticePoint::new(p.to_vec());
            let q = LatticePoint::new(q.to_vec());
            let g = gamma(&th, &p, &q).unwrap();
            prop_assert_eq!(gamma(&th, &q, &p).unwrap(), -g);
        }

        #[test]
        fn prop_sigma_cocycle(
            t in -0.5f64..0.5,
            hbar in -2.0f64..2.0,
            p in proptest::array::uniform2(-20i64..=20),
            q in proptest::array::uniform2(-20i64..=20),
            r in proptest::array::uniform2(-20i64..=20),
        ) {
            let th = ThetaMatrix::elementary(2, 0, 1, t).unwrap();
            let p = LatticePoint::new(p.to_vec());
            let q = LatticePoint::new(q.to_vec());
            let r = LatticePoint::new(r.to_vec());
            let lhs = sigma(&th, hbar, &p, &q).unwrap() * sigma(&th, hbar, &(&p + &q), &r).unwrap();
            let rhs = sigma(&th, hbar, &p, &(&q + &r)).unwrap() * sigma(&th, hbar, &q, &r).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-12);
        }
    }
}
