//! Dense complex linear algebra and the [`UnitaryGate`] carrier type.
//!
//! Generic matrices are plain `ndarray` arrays; every operation returns a new
//! value and leaves its inputs untouched. Heavy kernels (products, SVD,
//! eigendecompositions, QR) go through LAPACK/BLAS.

use ndarray::{linalg::kron, Array2};
use ndarray_linalg::{Eig, EigVals, QR, SVD};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub type ComplexMatrix = Array2<C64>;

/// Unitarity tolerance applied when a gate is constructed.
pub const UNITARY_TOL: f64 = 1e-10;
/// Unitarity tolerance applied to gates produced by long iteration.
pub const ITERATED_UNITARY_TOL: f64 = 1e-8;

pub fn identity(d: usize) -> ComplexMatrix {
    Array2::eye(d)
}

/// Conjugate transpose.
pub fn dagger(a: &ComplexMatrix) -> ComplexMatrix {
    a.t().mapv(|z| z.conj())
}

/// Kronecker product; entry `((i1,i2),(j1,j2))` is `a[i1,j1]·b[i2,j2]`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    kron(a, b)
}

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.ncols() != b.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {:?} by {:?}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(a.dot(b))
}

fn same_shape(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{:?} vs {:?}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(())
}

/// Hilbert–Schmidt inner product `Tr a† b`.
pub fn trace_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    same_shape(a, b)?;
    Ok(a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum())
}

pub fn frobenius_norm(a: &ComplexMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn trace(a: &ComplexMatrix) -> C64 {
    a.diag().sum()
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.dim(), b.dim(), "max_abs_diff on mismatched shapes");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `max |(a†a - 1)_ij|`, or infinity for non-square input.
pub fn unitarity_defect(a: &ComplexMatrix) -> f64 {
    if !a.is_square() {
        return f64::INFINITY;
    }
    let p = dagger(a).dot(a);
    p.indexed_iter()
        .map(|((i, j), z)| {
            if i == j {
                (z - C64::new(1.0, 0.0)).norm()
            } else {
                z.norm()
            }
        })
        .fold(0.0, f64::max)
}

pub fn is_finite(a: &ComplexMatrix) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Singular values in descending order.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let (_, s, _) = m.svd(false, false)?;
    let mut s = s.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

/// Eigenvalues of a unitary matrix, each projected onto the unit circle.
///
/// The order is unspecified.
pub fn eigenvalues_unitary(u: &ComplexMatrix) -> Result<Vec<C64>> {
    check_unitary(u, UNITARY_TOL)?;
    Ok(u.eigvals()?.iter().map(|z| z / z.norm()).collect())
}

fn check_unitary(u: &ComplexMatrix, tolerance: f64) -> Result<()> {
    if !is_finite(u) {
        return Err(Error::NonFinite);
    }
    let defect = unitarity_defect(u);
    if defect > tolerance {
        return Err(Error::NotUnitary { defect, tolerance });
    }
    Ok(())
}

/// Integer `n` with `n² = d`, if any.
pub fn exact_sqrt(d: usize) -> Option<usize> {
    let n = (d as f64).sqrt().round() as usize;
    (n * n == d).then_some(n)
}

/// A unitary operator on `C^N ⊗ C^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryGate {
    matrix: ComplexMatrix,
    subsystem_dim: usize,
}

impl UnitaryGate {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, UNITARY_TOL)
    }

    pub fn with_tolerance(matrix: ComplexMatrix, tolerance: f64) -> Result<Self> {
        let d = matrix.nrows();
        if !matrix.is_square() || d == 0 {
            return Err(Error::NotBipartite { size: d });
        }
        let n = exact_sqrt(d).ok_or(Error::NotBipartite { size: d })?;
        check_unitary(&matrix, tolerance)?;
        Ok(Self {
            matrix,
            subsystem_dim: n,
        })
    }

    /// Wraps a matrix that is unitary by construction.
    pub(crate) fn from_unitary(matrix: ComplexMatrix) -> Self {
        let d = matrix.nrows();
        let subsystem_dim = exact_sqrt(d).expect("gate dimension must be a perfect square");
        debug_assert!(unitarity_defect(&matrix) < ITERATED_UNITARY_TOL);
        Self {
            matrix,
            subsystem_dim,
        }
    }

    pub fn identity(subsystem_dim: usize) -> Self {
        Self {
            matrix: identity(subsystem_dim * subsystem_dim),
            subsystem_dim,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Total dimension `d = N²`.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn subsystem_dim(&self) -> usize {
        self.subsystem_dim
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: dagger(&self.matrix),
            subsystem_dim: self.subsystem_dim,
        }
    }

    /// `self · other`.
    pub fn compose(&self, other: &UnitaryGate) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "gates of dimension {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(Self::from_unitary(self.matrix.dot(&other.matrix)))
    }

    pub fn spectrum(&self) -> Result<UnitarySpectrum> {
        UnitarySpectrum::new(&self.matrix)
    }
}

/// `u^t`, computed through a single eigendecomposition.
pub fn matrix_power(u: &UnitaryGate, t: u64) -> Result<UnitaryGate> {
    match t {
        0 => Ok(UnitaryGate::identity(u.subsystem_dim())),
        1 => Ok(u.clone()),
        _ => Ok(UnitaryGate::from_unitary(u.spectrum()?.power(t as f64))),
    }
}

/// Spectral form `U = P diag(e^{iφ}) P†` of a unitary matrix with orthonormal `P`.
///
/// Powers are formed by scaling the phases, so the roundoff of `U^t` does not
/// grow with `t` beyond the phase error `t·δφ`.
#[derive(Clone, Debug)]
pub struct UnitarySpectrum {
    vectors: ComplexMatrix,
    phases: Vec<f64>,
    subsystem_dim: Option<usize>,
}

impl UnitarySpectrum {
    pub fn new(u: &ComplexMatrix) -> Result<Self> {
        check_unitary(u, ITERATED_UNITARY_TOL)?;
        let (_, vecs) = u.eig()?;
        // Eigenvectors of a normal matrix are orthogonal except inside
        // (near-)degenerate clusters; QR restores orthonormality there.
        let (p, _) = vecs.qr()?;
        let rotated = dagger(&p).dot(u).dot(&p);
        let phases: Vec<f64> = rotated.diag().iter().map(|z| z.arg()).collect();
        let spectrum = Self {
            vectors: p,
            phases,
            subsystem_dim: exact_sqrt(u.nrows()),
        };
        let residual = max_abs_diff(&spectrum.power(1.0), u);
        if residual > ITERATED_UNITARY_TOL {
            return Err(Error::Eigendecomposition(residual));
        }
        Ok(spectrum)
    }

    /// Eigenphases in `(-π, π]`.
    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn vectors(&self) -> &ComplexMatrix {
        &self.vectors
    }

    pub fn eigenvalues(&self) -> Vec<C64> {
        self.phases
            .iter()
            .map(|&p| C64::from_polar(1.0, p))
            .collect()
    }

    /// `P diag(e^{i t φ}) P†` for real `t`; non-integer `t` uses the principal branch.
    pub fn power(&self, t: f64) -> ComplexMatrix {
        let mut scaled = self.vectors.clone();
        for (mut col, &phi) in scaled.columns_mut().into_iter().zip(&self.phases) {
            let w = C64::from_polar(1.0, t * phi);
            col.mapv_inplace(|z| z * w);
        }
        scaled.dot(&dagger(&self.vectors))
    }

    /// Integer power wrapped as a gate. Panics if the dimension is not a square.
    pub fn gate_power(&self, t: u64) -> UnitaryGate {
        let n = self
            .subsystem_dim
            .expect("spectrum of a non-bipartite matrix has no gate power");
        if t == 0 {
            return UnitaryGate::identity(n);
        }
        UnitaryGate::from_unitary(self.power(t as f64))
    }
}
