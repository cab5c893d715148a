//! The discrete forward operator `A` and the back-transformed observation
//! `z = (AᵀA)⁻¹Aᵀy`.
//!
//! `A` is an n×m matrix (n ≥ m) of full column rank. All products with
//! (AᵀA)⁻¹ go through a cached QR factorization of `A`: with A = QR one has
//! AᵀA = RᵀR, so a Gram solve is two triangular solves. The inverse is
//! never formed explicitly; squaring the condition number by factoring AᵀA
//! itself is avoided as well.

use crate::error::{Error, Result};
use crate::io;
use nalgebra::{DMatrix, DVector};
use std::path::Path;

/// Relative pivot threshold below which AᵀA is declared singular.
const SINGULARITY_TOL: f64 = 1e-12;

/// A forward operator with a cached factorization of its Gram matrix.
///
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone)]
pub struct ForwardOperator {
    a: DMatrix<f64>,
    /// Upper-triangular R from the thin QR of A (m×m), so AᵀA = RᵀR.
    r: DMatrix<f64>,
    cond_estimate: f64,
}

impl ForwardOperator {
    /// Number of observation samples (rows of A).
    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    /// Dimension of the object space (columns of A).
    pub fn m(&self) -> usize {
        self.a.ncols()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    /// Estimate of cond(AᵀA) from the extreme diagonal entries of R.
    pub fn cond_estimate(&self) -> f64 {
        self.cond_estimate
    }

    /// Apply the forward map: returns `A·f`.
    pub fn apply_forward(&self, f: &DVector<f64>) -> Result<DVector<f64>> {
        if f.len() != self.m() {
            return Err(Error::DimensionMismatch {
                what: "apply_forward input",
                expected: self.m(),
                actual: f.len(),
            });
        }
        Ok(&self.a * f)
    }

    /// Solve AᵀA·x = b through the cached factorization.
    pub fn solve_gram(&self, b: &DVector<f64>) -> DVector<f64> {
        let y = self
            .r
            .tr_solve_upper_triangular(b)
            .expect("factor validated at construction");
        self.r
            .solve_upper_triangular(&y)
            .expect("factor validated at construction")
    }

    /// Columnwise Gram solve: returns (AᵀA)⁻¹·B.
    pub fn solve_gram_matrix(&self, b: &DMatrix<f64>) -> DMatrix<f64> {
        let y = self
            .r
            .tr_solve_upper_triangular(b)
            .expect("factor validated at construction");
        self.r
            .solve_upper_triangular(&y)
            .expect("factor validated at construction")
    }
}

/// One observation `y = Af + σε` together with its back-transformed data
/// `z = (AᵀA)⁻¹Aᵀy` and the provenance of synthetic draws.
#[derive(Debug, Clone)]
pub struct Observation {
    /// Raw observation, length n.
    pub y: DVector<f64>,
    /// Noise level σ ≥ 0.
    pub sigma: f64,
    /// Back-transformed data, length m.
    pub z: DVector<f64>,
    pub meta: ObservationMeta,
}

/// Provenance of a synthetic observation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ObservationMeta {
    pub seed: Option<u64>,
    pub truth_id: Option<String>,
}

/// Build the convolution-type operator A_ij = e^{−(i−j)/n}·I(j ≤ i) on an
/// n-point regular grid. Lower triangular with unit diagonal, hence always
/// invertible.
pub fn build_exponential_operator(n: usize) -> ForwardOperator {
    assert!(n >= 2, "exponential operator needs n >= 2");
    let a = DMatrix::from_fn(n, n, |i, j| {
        if j <= i {
            (-((i - j) as f64) / n as f64).exp()
        } else {
            0.0
        }
    });
    build_from_matrix(a).expect("triangular with unit diagonal, never singular")
}

/// Wrap an arbitrary dense matrix as a forward operator.
///
/// Fails with `SingularOperator` when the factorization of AᵀA has a pivot
/// below 1e-12 relative to the largest.
pub fn build_from_matrix(a: DMatrix<f64>) -> Result<ForwardOperator> {
    let (n, m) = (a.nrows(), a.ncols());
    if m == 0 || n < m {
        return Err(Error::DimensionMismatch {
            what: "operator shape (need n >= m >= 1)",
            expected: m.max(1),
            actual: n,
        });
    }
    let qr = a.clone().qr();
    let r = qr.r();
    let mut max_piv: f64 = 0.0;
    let mut min_piv = f64::INFINITY;
    for i in 0..m {
        let piv = r[(i, i)].abs();
        max_piv = max_piv.max(piv);
        min_piv = min_piv.min(piv);
    }
    if !(max_piv.is_finite() && min_piv.is_finite()) || min_piv < SINGULARITY_TOL * max_piv {
        let relative_pivot = if max_piv > 0.0 { min_piv / max_piv } else { 0.0 };
        return Err(Error::SingularOperator { relative_pivot });
    }
    let ratio = max_piv / min_piv;
    Ok(ForwardOperator {
        a,
        r,
        cond_estimate: ratio * ratio,
    })
}

/// Load an operator from a dense-matrix text file.
pub fn load_operator(path: &Path) -> Result<ForwardOperator> {
    build_from_matrix(io::read_dense_matrix(path)?)
}

/// Back-transform an observation: z solves AᵀA·z = Aᵀy via the cached
/// factorization.
pub fn back_transform(op: &ForwardOperator, y: &DVector<f64>, sigma: f64) -> Result<Observation> {
    if y.len() != op.n() {
        return Err(Error::DimensionMismatch {
            what: "observation length",
            expected: op.n(),
            actual: y.len(),
        });
    }
    assert!(sigma >= 0.0, "noise level must be nonnegative");
    let aty = op.a.tr_mul(y);
    let z = op.solve_gram(&aty);
    Ok(Observation {
        y: y.clone(),
        sigma,
        z,
        meta: ObservationMeta::default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_vector(len: usize, rng: &mut impl Rng) -> DVector<f64> {
        DVector::from_fn(len, |_, _| rng.random::<f64>() * 2.0 - 1.0)
    }

    #[test]
    fn exponential_entries_match_formula() {
        let op = build_exponential_operator(128);
        let a = op.matrix();
        assert_eq!(a[(0, 0)], 1.0);
        assert!((a[(1, 0)] - (-1.0f64 / 128.0).exp()).abs() < 1e-15);
        assert_eq!(a[(0, 1)], 0.0);
    }

    #[test]
    fn exponential_unit_diagonal_lower_triangular() {
        for n in [2, 5, 32] {
            let op = build_exponential_operator(n);
            let a = op.matrix();
            for i in 0..n {
                assert_eq!(a[(i, i)], 1.0);
                for j in i + 1..n {
                    assert_eq!(a[(i, j)], 0.0);
                }
            }
        }
    }

    #[test]
    fn exponential_corner_entry() {
        let op = build_exponential_operator(4);
        assert!((op.matrix()[(3, 0)] - (-0.75f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn identity_operator_is_well_conditioned() {
        let op = build_from_matrix(DMatrix::identity(6, 6)).unwrap();
        assert!((op.cond_estimate() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_matrix_is_singular() {
        let err = build_from_matrix(DMatrix::zeros(5, 5)).unwrap_err();
        assert!(matches!(err, Error::SingularOperator { .. }));
    }

    #[test]
    fn gram_solve_recovers_random_unit_vectors() {
        // Random well-conditioned 16×8 operator: applying the factorization
        // to AᵀA·x must recover x.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = DMatrix::from_fn(16, 8, |_, _| rng.random::<f64>() - 0.5)
            + DMatrix::identity(16, 8) * 2.0;
        let op = build_from_matrix(a.clone()).unwrap();
        let gram = a.tr_mul(&a);
        for _ in 0..20 {
            let x = random_vector(8, &mut rng).normalize();
            let rec = op.solve_gram(&(&gram * &x));
            assert!((&rec - &x).norm() / x.norm() <= 1e-10);
        }
    }

    #[test]
    fn back_transform_identity_returns_y() {
        let op = build_from_matrix(DMatrix::identity(5, 5)).unwrap();
        let y = DVector::from_vec(vec![1.0, -2.0, 3.0, 0.5, 0.0]);
        let obs = back_transform(&op, &y, 0.0).unwrap();
        assert!((&obs.z - &y).norm() < 1e-12);
    }

    #[test]
    fn noiseless_back_transform_recovers_truth() {
        let op = build_exponential_operator(24);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_vector(24, &mut rng);
        let y = op.apply_forward(&f).unwrap();
        let obs = back_transform(&op, &y, 0.0).unwrap();
        assert!((&obs.z - &f).norm() / f.norm() <= 1e-8);
    }

    #[test]
    fn back_transform_residual_is_small() {
        let op = build_exponential_operator(32);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let y = random_vector(32, &mut rng);
        let obs = back_transform(&op, &y, 1.0).unwrap();
        let a = op.matrix();
        let aty = a.tr_mul(&y);
        let resid = a.tr_mul(&(a * &obs.z)) - &aty;
        assert!(resid.norm() / aty.norm() <= 1e-8);
    }

    #[test]
    fn back_transform_is_linear() {
        let op = build_exponential_operator(16);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let y1 = random_vector(16, &mut rng);
        let y2 = random_vector(16, &mut rng);
        let z1 = back_transform(&op, &y1, 0.0).unwrap().z;
        let z2 = back_transform(&op, &y2, 0.0).unwrap().z;
        let z12 = back_transform(&op, &(&y1 + &y2), 0.0).unwrap().z;
        assert!((&z12 - (&z1 + &z2)).norm() <= 1e-10 * (1.0 + z12.norm()));
    }

    #[test]
    fn apply_forward_basis_vector_extracts_column() {
        let op = build_exponential_operator(8);
        let e1 = DVector::from_fn(8, |i, _| if i == 0 { 1.0 } else { 0.0 });
        let col = op.apply_forward(&e1).unwrap();
        assert_eq!(col, DVector::from_column_slice(op.matrix().column(0).as_slice()));
        let zero = op.apply_forward(&DVector::zeros(8)).unwrap();
        assert_eq!(zero, DVector::zeros(8));
    }

    #[test]
    fn dimension_mismatch_reported() {
        let op = build_exponential_operator(8);
        assert!(matches!(
            op.apply_forward(&DVector::zeros(7)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            back_transform(&op, &DVector::zeros(9), 0.1),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
