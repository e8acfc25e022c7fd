//! Seeded samplers for the random ensembles: CUE (Haar), CPE, Ginibre,
//! Wishart, random local gates, and flat points of `Γ_m`.
//!
//! Every sampler takes an explicit [`RandomStream`]; there is no global
//! generator. Parallel work draws from indexed substreams.

use std::f64::consts::{FRAC_PI_4, TAU};

use ndarray::Array2;
use ndarray_linalg::QR;
use num_complex::Complex64 as C64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::gates::InfoContent;
use crate::matrix::{dagger, exact_sqrt, tensor, ComplexMatrix, UnitaryGate};
use crate::weyl::{descending, is_generic, ChamberClass};

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic, platform-independent random stream (ChaCha8).
#[derive(Clone, Debug)]
pub struct RandomStream {
    rng: ChaCha8Rng,
    key: u64,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            key: seed,
        }
    }

    /// Independent stream number `index`, derived from this stream's seed only
    /// (not from how much of it has been consumed).
    pub fn substream(&self, index: u64) -> Self {
        Self::new(splitmix64(self.key ^ splitmix64(index.wrapping_add(1))))
    }

    pub fn key(&self) -> u64 {
        self.key
    }
}

impl RngCore for RandomStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// Which ensemble a sample comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnsembleKind {
    Cue(usize),
    Cpe(usize),
    Ginibre(usize),
    Wishart(usize),
    Local2x2,
    Gamma(ChamberClass),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, seed: u64) -> Result<Self> {
        let spec = Self { kind, seed };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            EnsembleKind::Cue(d) | EnsembleKind::Cpe(d) => {
                if d == 0 || exact_sqrt(d).is_none() {
                    return Err(Error::NotBipartite { size: d });
                }
            }
            EnsembleKind::Ginibre(d) | EnsembleKind::Wishart(d) if d == 0 => {
                return Err(Error::InvalidArgument("dimension must be positive".into()));
            }
            _ => {}
        }
        Ok(())
    }

    pub fn stream(&self) -> RandomStream {
        RandomStream::new(self.seed)
    }

    /// Draws a gate from a gate-valued ensemble.
    pub fn sample_gate(&self, rng: &mut RandomStream) -> Result<UnitaryGate> {
        match self.kind {
            EnsembleKind::Cue(d) => Ok(haar_unitary(d, rng)),
            EnsembleKind::Cpe(d) => Ok(cpe_diagonal(d, rng)),
            EnsembleKind::Local2x2 => Ok(random_local(rng)),
            EnsembleKind::Gamma(class) => Ok(crate::gates::cartan_gate(sample_gamma(class, rng))),
            EnsembleKind::Ginibre(_) | EnsembleKind::Wishart(_) => Err(Error::InvalidArgument(
                "Ginibre and Wishart samples are not unitary gates".into(),
            )),
        }
    }
}

fn complex_normal(rng: &mut RandomStream) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// `d × d` matrix of i.i.d. complex Gaussians with `E|z|² = 1`.
pub fn ginibre(d: usize, rng: &mut RandomStream) -> ComplexMatrix {
    Array2::from_shape_simple_fn((d, d), || complex_normal(rng))
}

/// Haar-distributed `d × d` unitary as a plain matrix.
///
/// QR of a Ginibre matrix, with the columns of `Q` rephased by the phases of
/// `diag(R)` so that the result does not depend on the QR sign convention.
pub fn haar_matrix(d: usize, rng: &mut RandomStream) -> ComplexMatrix {
    let g = ginibre(d, rng);
    let (mut q, r) = g.qr().expect("QR of a Ginibre matrix");
    for (j, mut col) in q.columns_mut().into_iter().enumerate() {
        let rjj = r[[j, j]];
        let phase = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        col.mapv_inplace(|z| z * phase);
    }
    q
}

/// Haar-random gate on `C^N ⊗ C^N`.
///
/// # Panics
///
/// If `d` is not a perfect square.
pub fn haar_unitary(d: usize, rng: &mut RandomStream) -> UnitaryGate {
    assert!(exact_sqrt(d).is_some(), "gate dimension {d} is not N²");
    UnitaryGate::from_unitary(haar_matrix(d, rng))
}

/// Diagonal gate with i.i.d. uniform phases (circular Poissonian ensemble).
///
/// # Panics
///
/// If `d` is not a perfect square.
pub fn cpe_diagonal(d: usize, rng: &mut RandomStream) -> UnitaryGate {
    assert!(exact_sqrt(d).is_some(), "gate dimension {d} is not N²");
    let phases: Vec<C64> = (0..d)
        .map(|_| C64::from_polar(1.0, rng.random_range(0.0..TAU)))
        .collect();
    UnitaryGate::from_unitary(Array2::from_diag(&ndarray::Array1::from(phases)))
}

/// `W = X X†` for Ginibre `X`, optionally normalized to unit trace.
pub fn wishart(d: usize, rng: &mut RandomStream, unit_trace: bool) -> ComplexMatrix {
    let x = ginibre(d, rng);
    let w = x.dot(&dagger(&x));
    // exact hermiticity
    let mut w = (&w + &dagger(&w)).mapv(|z| z * 0.5);
    if unit_trace {
        let tr: f64 = w.diag().iter().map(|z| z.re).sum();
        w.mapv_inplace(|z| z / tr);
    }
    w
}

/// `W_A ⊗ W_B` with independent Haar `2 × 2` factors.
pub fn random_local(rng: &mut RandomStream) -> UnitaryGate {
    let a = haar_matrix(2, rng);
    let b = haar_matrix(2, rng);
    UnitaryGate::from_unitary(tensor(&a, &b))
}

/// Flat sample of `Γ_m`: `m` uniforms on `[0, π/4]`, sorted, zero-padded.
pub fn sample_gamma(class: ChamberClass, rng: &mut RandomStream) -> InfoContent {
    let mut a = [0.0; 3];
    for x in a.iter_mut().take(class.dimension()) {
        *x = rng.random_range(0.0..=FRAC_PI_4);
    }
    InfoContent::from_array(descending(a))
}

/// A flat sample of `Γ_m` whose trajectory is ergodic (see [`is_generic`]).
pub fn generic_alpha(class: ChamberClass, rng: &mut RandomStream) -> InfoContent {
    loop {
        let a = sample_gamma(class, rng);
        if is_generic(a, class.dimension()) {
            return a;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::unitarity_defect;
    use crate::schmidt::{linear_entropy, schmidt_vector};
    use crate::weyl::{extract_content, DEFAULT_ZERO_TOL};
    use ndarray_linalg::{EigValsh, UPLO};

    fn pearson(a: &[f64], b: &[f64]) -> f64 {
        let n = a.len() as f64;
        let ma = a.iter().sum::<f64>() / n;
        let mb = b.iter().sum::<f64>() / n;
        let cov: f64 = a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum();
        let va: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
        let vb: f64 = b.iter().map(|y| (y - mb).powi(2)).sum();
        cov / (va * vb).sqrt()
    }

    #[test]
    fn same_seed_same_matrix() {
        let a = ginibre(7, &mut RandomStream::new(123));
        let b = ginibre(7, &mut RandomStream::new(123));
        assert_eq!(a, b);
        let c = ginibre(7, &mut RandomStream::new(124));
        assert_ne!(a, c);
    }

    #[test]
    fn substreams_ignore_consumption() {
        let root = RandomStream::new(9);
        let mut used = root.clone();
        let _ = used.next_u64();
        assert_eq!(root.substream(3).next_u64(), used.substream(3).next_u64());
        assert_ne!(root.substream(3).next_u64(), root.substream(4).next_u64());
    }

    #[test]
    fn ginibre_second_moment() {
        let g = ginibre(100, &mut RandomStream::new(1));
        let m = g.iter().map(|z| z.norm_sqr()).sum::<f64>() / 1e4;
        assert!((m - 1.0).abs() < 0.02, "{m}");
    }

    #[test]
    fn substream_matrices_uncorrelated() {
        let root = RandomStream::new(77);
        let a = ginibre(100, &mut root.substream(0));
        let b = ginibre(100, &mut root.substream(1));
        let ra: Vec<f64> = a.iter().map(|z| z.re).collect();
        let rb: Vec<f64> = b.iter().map(|z| z.re).collect();
        assert!(pearson(&ra, &rb).abs() < 0.03);
    }

    #[test]
    fn haar_is_unitary() {
        let mut rng = RandomStream::new(2);
        for d in [1, 4, 9, 64, 256] {
            let u = haar_unitary(d, &mut rng);
            assert!(unitarity_defect(u.matrix()) < 1e-10, "d={d}");
        }
    }

    #[test]
    fn haar_trace_moment() {
        let mut rng = RandomStream::new(3);
        let m = 20_000;
        let mean: f64 = (0..m)
            .map(|_| crate::matrix::trace(haar_unitary(4, &mut rng).matrix()).norm_sqr())
            .sum::<f64>()
            / m as f64;
        // E|Tr U|² = 1; sampling std of the estimate ≈ 1/√m
        assert!((mean - 1.0).abs() < 0.03, "{mean}");
    }

    #[test]
    fn cpe_is_diagonal_and_powers_stay_diagonal() {
        let mut rng = RandomStream::new(4);
        let u = cpe_diagonal(9, &mut rng);
        let p = crate::matrix::matrix_power(&u, 7).unwrap();
        for ((i, j), z) in p.matrix().indexed_iter() {
            if i != j {
                assert!(z.norm() < 1e-12);
            }
        }
        assert!(u
            .matrix()
            .diag()
            .iter()
            .all(|z| (z.norm() - 1.0).abs() < 1e-14));
    }

    #[test]
    fn wishart_is_positive() {
        let mut rng = RandomStream::new(5);
        let w = wishart(20, &mut rng, true);
        let ev = w.eigvalsh(UPLO::Lower).unwrap();
        assert!(ev.iter().all(|&l| l >= -1e-12));
        let tr: f64 = w.diag().iter().map(|z| z.re).sum();
        assert!((tr - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_local_is_product() {
        let mut rng = RandomStream::new(6);
        for _ in 0..20 {
            let y = random_local(&mut rng);
            let lam = schmidt_vector(&y).unwrap();
            assert!(lam.lambda[1] < 1e-10);
            assert!(linear_entropy(&lam).abs() < 1e-10);
        }
    }

    #[test]
    fn dressed_cartan_gate_keeps_content() {
        let mut rng = RandomStream::new(7);
        let a = InfoContent::new(0.66, 0.35, 0.08);
        let v = crate::gates::cartan_gate(a);
        let u = random_local(&mut rng)
            .compose(&v)
            .unwrap()
            .compose(&random_local(&mut rng))
            .unwrap();
        assert!(extract_content(&u).unwrap().max_abs_diff(&a) < 1e-8);
    }

    #[test]
    fn gamma_samples_are_canonical() {
        let mut rng = RandomStream::new(8);
        for class in ChamberClass::ALL {
            for _ in 0..1000 {
                let a = sample_gamma(class, &mut rng);
                assert!(a.is_canonical(0.0));
                assert_eq!(
                    crate::weyl::chamber_class(a, DEFAULT_ZERO_TOL).dimension(),
                    class.dimension()
                );
            }
        }
    }

    #[test]
    fn gamma_one_mean() {
        let mut rng = RandomStream::new(9);
        let m = 100_000;
        let mean: f64 = (0..m)
            .map(|_| sample_gamma(ChamberClass::GammaI, &mut rng).alpha[0])
            .sum::<f64>()
            / m as f64;
        assert!((mean - std::f64::consts::FRAC_PI_8).abs() < 0.001);
    }

    #[test]
    fn gamma_three_volume_fraction() {
        // Fraction of Γ below the plane α₁ = c·π/4 is c³ (the simplex scales).
        let mut rng = RandomStream::new(10);
        let m = 100_000;
        for c in [0.5, 0.8] {
            let below = (0..m)
                .filter(|_| sample_gamma(ChamberClass::GammaIII, &mut rng).alpha[0] < c * FRAC_PI_4)
                .count() as f64
                / m as f64;
            assert!((below - c * c * c).abs() < 0.01, "{c}: {below}");
        }
    }

    #[test]
    fn spec_validation() {
        assert!(EnsembleSpec::new(EnsembleKind::Cue(5), 1).is_err());
        assert!(EnsembleSpec::new(EnsembleKind::Cpe(16), 1).is_ok());
        let spec = EnsembleSpec::new(EnsembleKind::Wishart(3), 1).unwrap();
        assert!(spec.sample_gate(&mut spec.stream()).is_err());
    }
}
