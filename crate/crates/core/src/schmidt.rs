//! Operator Schmidt machinery for bipartite gates.
//!
//! For `U` on `C^N ⊗ C^N` the Schmidt vector is `λ_i = (σ_i(U^R)/N)²`, the
//! squared singular values of the reshuffled matrix. Equivalently `λ` is the
//! spectrum of the induced state `ρ = U^R (U^R)† / N²`.

use ndarray::Array2;
use ndarray_linalg::{EigValsh, UPLO};
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gates::InfoContent;
use crate::matrix::{dagger, singular_values, ComplexMatrix, UnitaryGate};
use crate::weyl::{chamber_class, fold, ChamberClass, DEFAULT_ZERO_TOL};

/// Coefficients below this are treated as exact zeros.
pub const CLAMP: f64 = 1e-15;
/// Allowed deviation of `Σλ` from one.
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// Which of the two entanglement measures of a Schmidt vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EntropyKind {
    /// `S = -Σ λ ln λ`
    Shannon,
    /// `S_L = 1 - Σ λ²`
    Linear,
}

impl EntropyKind {
    pub const BOTH: [EntropyKind; 2] = [EntropyKind::Shannon, EntropyKind::Linear];

    pub fn label(&self) -> &'static str {
        match self {
            EntropyKind::Shannon => "S",
            EntropyKind::Linear => "S_L",
        }
    }
}

/// Realignment `X^R[(a,c),(b,d)] = X[(a,b),(c,d)]` of an `N² × N²` matrix.
pub fn reshuffle(x: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
    let d = n * n;
    if x.dim() != (d, d) {
        return Err(Error::DimensionMismatch(format!(
            "reshuffle with N = {n} needs a {d}×{d} matrix, got {:?}",
            x.dim()
        )));
    }
    let four = x
        .view()
        .into_shape_with_order((n, n, n, n))
        .expect("contiguous standard layout")
        .permuted_axes([0, 2, 1, 3]);
    Ok(four
        .as_standard_layout()
        .into_owned()
        .into_shape_with_order((d, d))
        .expect("standard layout after copy"))
}

fn reshuffle_gate(u: &UnitaryGate) -> ComplexMatrix {
    let m = u.matrix().as_standard_layout().into_owned();
    reshuffle(&m, u.subsystem_dim()).expect("gate dimension is N²")
}

/// Normalized vector of `N²` operator-Schmidt coefficients, descending.
#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtVector {
    pub lambda: Vec<f64>,
}

impl SchmidtVector {
    /// Validates nonnegativity and normalization; sorts and clamps roundoff.
    pub fn new(mut lambda: Vec<f64>) -> Result<Self> {
        if lambda.iter().any(|&l| !l.is_finite() || l < -CLAMP) {
            return Err(Error::InvalidArgument(
                "Schmidt coefficients must be finite and nonnegative".into(),
            ));
        }
        let sum: f64 = lambda.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidArgument(format!(
                "Schmidt coefficients sum to {sum}, not 1"
            )));
        }
        for l in lambda.iter_mut() {
            if *l < CLAMP {
                *l = 0.0;
            }
        }
        lambda.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { lambda })
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    pub fn entropy(&self, kind: EntropyKind) -> f64 {
        match kind {
            EntropyKind::Shannon => shannon_entropy(self),
            EntropyKind::Linear => linear_entropy(self),
        }
    }
}

/// Schmidt vector of an arbitrary `N² × N²` matrix scaled like a unitary.
///
/// A matrix that is not unitary generally fails the normalization check,
/// which surfaces as [`Error::NotUnitary`].
pub fn schmidt_vector_of_matrix(x: &ComplexMatrix, n: usize) -> Result<SchmidtVector> {
    let m = x.as_standard_layout().into_owned();
    let sv = singular_values(&reshuffle(&m, n)?)?;
    let nf = n as f64;
    let lambda: Vec<f64> = sv.iter().map(|s| (s / nf).powi(2)).collect();
    let sum: f64 = lambda.iter().sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotUnitary {
            defect: (sum - 1.0).abs(),
            tolerance: NORMALIZATION_TOL,
        });
    }
    SchmidtVector::new(lambda)
}

pub fn schmidt_vector(u: &UnitaryGate) -> Result<SchmidtVector> {
    schmidt_vector_of_matrix(u.matrix(), u.subsystem_dim())
}

fn plogp(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * p.ln()
    }
}

/// `S = -Σ λ ln λ` with `0 ln 0 = 0`.
pub fn shannon_entropy(lambda: &SchmidtVector) -> f64 {
    -lambda.lambda.iter().map(|&l| plogp(l)).sum::<f64>()
}

/// `S_L = 1 - Σ λ²`.
pub fn linear_entropy(lambda: &SchmidtVector) -> f64 {
    1.0 - lambda.lambda.iter().map(|l| l * l).sum::<f64>()
}

/// Closed-form Schmidt vector of the canonical gate `V(α₀)^t`, descending.
///
/// In the Pauli basis `V = Σ_k c_k σ_k⊗σ_k` and `λ_k = |c_k|²`, where with
/// `c_j = cos f(tα_j)` and `s_j = sin f(tα_j)`:
///
/// ```text
/// λ₀ = c₁²c₂²c₃² + s₁²s₂²s₃²     λ₁ = c₁²s₂²s₃² + s₁²c₂²c₃²
/// λ₂ = s₁²c₂²s₃² + c₁²s₂²c₃²     λ₃ = s₁²s₂²c₃² + c₁²c₂²s₃²
/// ```
pub fn analytic_schmidt_vector(alpha0: InfoContent, t: f64) -> [f64; 4] {
    let [(s1, c1), (s2, c2), (s3, c3)] = alpha0.alpha.map(|a| {
        let (s, c) = fold(t * a).sin_cos();
        (s * s, c * c)
    });
    let mut lambda = [
        c1 * c2 * c3 + s1 * s2 * s3,
        c1 * s2 * s3 + s1 * c2 * c3,
        s1 * c2 * s3 + c1 * s2 * c3,
        s1 * s2 * c3 + c1 * c2 * s3,
    ];
    for l in lambda.iter_mut() {
        if *l < CLAMP {
            *l = 0.0;
        }
    }
    lambda.sort_by(|a, b| b.total_cmp(a));
    lambda
}

/// `(S, S_L)` of `V(α₀)^t` in closed form.
///
/// The Shannon entropy uses the one- and two-phase formulas on the edge and
/// face of the chamber and the full analytic Schmidt vector in the interior;
/// the linear entropy uses the cosine expansions for each class.
pub fn analytic_entropies(alpha0: InfoContent, t: f64) -> (f64, f64) {
    let f = alpha0.alpha.map(|a| fold(t * a));
    let a = f.map(|x| x.cos().powi(2));
    let b = f.map(|x| x.sin().powi(2));
    let c = f.map(|x| (4.0 * x).cos());
    match chamber_class(alpha0, DEFAULT_ZERO_TOL) {
        ChamberClass::GammaI => {
            let s = -plogp(a[0]) - plogp(b[0]);
            let sl = 0.25 * (1.0 - c[0]);
            (s, sl)
        }
        ChamberClass::GammaII => {
            let s =
                -plogp(a[0] * a[1]) - plogp(a[0] * b[1]) - plogp(b[0] * b[1]) - plogp(b[0] * a[1]);
            let sl = 1.0 - (3.0 + c[0]) * (3.0 + c[1]) / 16.0;
            (s, sl)
        }
        ChamberClass::GammaIII => {
            let s = -analytic_schmidt_vector(alpha0, t)
                .iter()
                .map(|&l| plogp(l))
                .sum::<f64>();
            let minus = (4.0 * f[0] - 4.0 * f[1]).cos();
            let plus = (4.0 * f[0] + 4.0 * f[1]).cos();
            let sl = 9.0 / 16.0
                - (4.0 * (c[0] + c[1] + c[2]) + minus + plus + 2.0 * c[2] * (c[1] + c[0])) / 32.0;
            (s, sl)
        }
    }
}

pub fn analytic_entropy(alpha0: InfoContent, t: f64, kind: EntropyKind) -> f64 {
    let (s, sl) = analytic_entropies(alpha0, t);
    match kind {
        EntropyKind::Shannon => s,
        EntropyKind::Linear => sl,
    }
}

/// Rescaled eigenvalues `x = dλ` of a density-like matrix of dimension `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralSample {
    pub x: Vec<f64>,
}

impl SpectralSample {
    /// Spectrum of the positive matrix `w / Tr w`, rescaled by its dimension.
    pub fn from_positive(w: &ComplexMatrix) -> Result<Self> {
        let d = w.nrows();
        let tr: f64 = w.diag().iter().map(|z| z.re).sum();
        let mut x: Vec<f64> = w
            .eigvalsh(UPLO::Lower)?
            .iter()
            .map(|&l| (d as f64 * l / tr).max(0.0))
            .collect();
        x.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { x })
    }

    pub fn mean(&self) -> f64 {
        self.x.iter().sum::<f64>() / self.x.len() as f64
    }
}

/// Spectrum of `ρ = U^R (U^R)† / N²`, rescaled to `x = N²λ`.
pub fn induced_state_spectrum(u: &UnitaryGate) -> Result<SpectralSample> {
    let r = reshuffle_gate(u);
    SpectralSample::from_positive(&r.dot(&dagger(&r)))
}

/// Spectrum of the induced state of an arbitrary `N² × N²` matrix.
pub fn induced_spectrum_of_matrix(x: &ComplexMatrix, n: usize) -> Result<SpectralSample> {
    let m = x.as_standard_layout().into_owned();
    let r = reshuffle(&m, n)?;
    SpectralSample::from_positive(&r.dot(&dagger(&r)))
}

/// `S_L` via `Σλ² = ‖R R†‖_F² / N⁴`, without any decomposition.
pub fn linear_entropy_fast(u: &UnitaryGate) -> f64 {
    let r = reshuffle_gate(u);
    let g = r.dot(&dagger(&r));
    let n4 = (u.dim() * u.dim()) as f64;
    1.0 - g.iter().map(|z| z.norm_sqr()).sum::<f64>() / n4
}

fn diagonal_phases(u: &ComplexMatrix) -> Option<Vec<C64>> {
    let is_diag = u
        .indexed_iter()
        .all(|((i, j), z)| i == j || *z == C64::new(0.0, 0.0));
    is_diag.then(|| u.diag().to_vec())
}

/// Schmidt vector of a diagonal gate `diag(e^{iφ_(a,b)})`: its reshuffle is the
/// `N × N` phase matrix `P[a,b]` padded with zeros.
fn diagonal_schmidt_vector(diag: &[C64], n: usize) -> Result<SchmidtVector> {
    let p = Array2::from_shape_vec((n, n), diag.to_vec()).expect("N² phases");
    let sv = singular_values(&p)?;
    let nf = n as f64;
    let mut lambda: Vec<f64> = sv.iter().map(|s| (s / nf).powi(2)).collect();
    lambda.resize(n * n, 0.0);
    SchmidtVector::new(lambda)
}

/// Entropies `(S_t, S_L,t)` of `U^t` for `t = 1..=steps`.
///
/// Diagonal gates stay diagonal and take a reduced `N × N` path; all others
/// are powered through one eigendecomposition.
pub fn power_trajectory_entropies(
    u: &UnitaryGate,
    steps: usize,
    kinds: &[EntropyKind],
) -> Result<Vec<Vec<f64>>> {
    let n = u.subsystem_dim();
    let mut out = vec![Vec::with_capacity(steps); kinds.len()];
    if let Some(phases) = diagonal_phases(u.matrix()) {
        for t in 1..=steps {
            let powered: Vec<C64> = phases
                .iter()
                .map(|z| C64::from_polar(1.0, t as f64 * z.arg()))
                .collect();
            let lambda = diagonal_schmidt_vector(&powered, n)?;
            for (col, kind) in out.iter_mut().zip(kinds) {
                col.push(lambda.entropy(*kind));
            }
        }
        return Ok(out);
    }
    let spectrum = u.spectrum()?;
    let linear_only = kinds.iter().all(|k| *k == EntropyKind::Linear);
    let rows: Vec<Vec<f64>> = (1..=steps as u64)
        .into_par_iter()
        .map(|t| {
            let power = spectrum.gate_power(t);
            if linear_only {
                Ok(vec![linear_entropy_fast(&power); kinds.len()])
            } else {
                let lambda = schmidt_vector(&power)?;
                Ok(kinds.iter().map(|k| lambda.entropy(*k)).collect())
            }
        })
        .collect::<Result<_>>()?;
    for row in rows {
        for (col, v) in out.iter_mut().zip(row) {
            col.push(v);
        }
    }
    Ok(out)
}

/// Induced-state spectra of `U^t` for `t = 1..=steps`.
pub fn power_trajectory_spectra(u: &UnitaryGate, steps: usize) -> Result<Vec<SpectralSample>> {
    let spectrum = u.spectrum()?;
    (1..=steps as u64)
        .into_par_iter()
        .map(|t| induced_state_spectrum(&spectrum.gate_power(t)))
        .collect()
}

/// Reshuffle of a gate, exposed for moment statistics on `U^R`.
pub fn reshuffled(u: &UnitaryGate) -> ComplexMatrix {
    reshuffle_gate(u)
}

/// Number of Schmidt coefficients above `tol`.
pub fn schmidt_rank(lambda: &SchmidtVector, tol: f64) -> usize {
    lambda.lambda.iter().filter(|&&l| l > tol).count()
}
