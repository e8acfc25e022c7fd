//! Estimators, reference laws and the Monte Carlo drivers built on them.
//!
//! Histograms and moment summaries are mergeable, so parallel workers can
//! accumulate partial results over indexed substreams and combine them in
//! index order.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_4, PI};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gates::InfoContent;
use crate::matrix::{dagger, trace_inner, ComplexMatrix};
use crate::random::{haar_unitary, sample_gamma, wishart, EnsembleSpec, RandomStream};
use crate::schmidt::{
    analytic_entropy, induced_spectrum_of_matrix, induced_state_spectrum, reshuffled,
    schmidt_vector, EntropyKind, SpectralSample,
};
use crate::weyl::ChamberClass;

/// Work unit for the parallel samplers. Fixed so that results do not depend
/// on the number of threads.
pub const CHUNK: usize = 1024;

#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    edges: Vec<f64>,
    counts: Vec<u64>,
    total: u64,
    underflow: u64,
    overflow: u64,
}

impl Histogram {
    pub fn with_edges(edges: Vec<f64>) -> Result<Self> {
        if edges.len() < 2
            || edges
                .windows(2)
                .any(|w| w[0].partial_cmp(&w[1]) != Some(Ordering::Less))
        {
            return Err(Error::InvalidArgument(
                "histogram edges must be strictly increasing".into(),
            ));
        }
        let bins = edges.len() - 1;
        Ok(Self {
            edges,
            counts: vec![0; bins],
            total: 0,
            underflow: 0,
            overflow: 0,
        })
    }

    pub fn uniform(lo: f64, hi: f64, bins: usize) -> Result<Self> {
        if bins == 0 || lo.partial_cmp(&hi) != Some(Ordering::Less) {
            return Err(Error::InvalidArgument(format!(
                "bad histogram range [{lo}, {hi}] with {bins} bins"
            )));
        }
        let w = (hi - lo) / bins as f64;
        let mut edges: Vec<f64> = (0..=bins).map(|i| lo + w * i as f64).collect();
        edges[bins] = hi;
        Self::with_edges(edges)
    }

    /// Adds one value. The last bin is closed on the right.
    pub fn add(&mut self, x: f64) {
        let lo = self.edges[0];
        let hi = *self.edges.last().unwrap();
        if x < lo || x.is_nan() {
            self.underflow += 1;
            return;
        }
        if x > hi {
            self.overflow += 1;
            return;
        }
        let k = self.edges.partition_point(|&e| e <= x);
        let bin = k.saturating_sub(1).min(self.counts.len() - 1);
        self.counts[bin] += 1;
        self.total += 1;
    }

    pub fn extend<I: IntoIterator<Item = f64>>(&mut self, values: I) {
        for x in values {
            self.add(x);
        }
    }

    pub fn merge(&mut self, other: &Histogram) -> Result<()> {
        if self.edges != other.edges {
            return Err(Error::DimensionMismatch(
                "histograms with different edges".into(),
            ));
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.total += other.total;
        self.underflow += other.underflow;
        self.overflow += other.overflow;
        Ok(())
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// In-range count, equal to the sum of `counts`.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn underflow(&self) -> u64 {
        self.underflow
    }

    pub fn overflow(&self) -> u64 {
        self.overflow
    }

    pub fn centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    /// Counts normalized so that `Σ density · width = 1` over the in-range mass.
    pub fn density(&self) -> Vec<f64> {
        let n = self.total.max(1) as f64;
        self.counts
            .iter()
            .zip(self.edges.windows(2))
            .map(|(&c, w)| c as f64 / (n * (w[1] - w[0])))
            .collect()
    }
}

pub fn accumulate(values: &[f64], edges: Vec<f64>) -> Result<Histogram> {
    let mut h = Histogram::with_edges(edges)?;
    h.extend(values.iter().copied());
    Ok(h)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentSummary {
    pub n: u64,
    pub mean: f64,
    pub second_moment: f64,
    pub variance: f64,
    pub stderr_mean: f64,
}

impl MomentSummary {
    fn from_raw(n: u64, mean: f64, second_moment: f64) -> Self {
        let variance = second_moment - mean * mean;
        let stderr_mean = if n == 0 {
            0.0
        } else {
            (variance.max(0.0) / n as f64).sqrt()
        };
        Self {
            n,
            mean,
            second_moment,
            variance,
            stderr_mean,
        }
    }

    /// Count-weighted combination of two summaries.
    pub fn merge(&self, other: &MomentSummary) -> MomentSummary {
        let n = self.n + other.n;
        if n == 0 {
            return *self;
        }
        let (wa, wb) = (self.n as f64 / n as f64, other.n as f64 / n as f64);
        Self::from_raw(
            n,
            wa * self.mean + wb * other.mean,
            wa * self.second_moment + wb * other.second_moment,
        )
    }
}

pub fn moments(values: &[f64]) -> MomentSummary {
    let n = values.len();
    if n == 0 {
        return MomentSummary::from_raw(0, 0.0, 0.0);
    }
    let nf = n as f64;
    let mean = values.iter().sum::<f64>() / nf;
    let second = values.iter().map(|x| x * x).sum::<f64>() / nf;
    let mut s = MomentSummary::from_raw(n as u64, mean, second);
    // the two-pass variance is more accurate than second − mean²
    let var = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / nf;
    s.variance = var;
    s.stderr_mean = (var / nf).sqrt();
    s
}

/// Delete-one-block jackknife standard error of `⟨y^power⟩`.
pub fn jackknife_moment_stderr(values: &[f64], power: i32, blocks: usize) -> f64 {
    let n = values.len();
    let blocks = blocks.min(n);
    if blocks < 2 {
        return f64::NAN;
    }
    let block_sums: Vec<(f64, usize)> = (0..blocks)
        .map(|b| {
            let lo = b * n / blocks;
            let hi = (b + 1) * n / blocks;
            (values[lo..hi].iter().map(|x| x.powi(power)).sum(), hi - lo)
        })
        .collect();
    let total: f64 = block_sums.iter().map(|b| b.0).sum();
    let estimates: Vec<f64> = block_sums
        .iter()
        .map(|&(s, len)| (total - s) / (n - len) as f64)
        .collect();
    let mean = estimates.iter().sum::<f64>() / blocks as f64;
    let spread: f64 = estimates.iter().map(|e| (e - mean).powi(2)).sum();
    ((blocks - 1) as f64 / blocks as f64 * spread).sqrt()
}

/// Analytic entropies along the Cartan trajectory, `t = 1..=steps`.
pub fn trajectory_entropy_values(alpha0: InfoContent, steps: usize, kind: EntropyKind) -> Vec<f64> {
    (1..=steps)
        .map(|t| analytic_entropy(alpha0, t as f64, kind))
        .collect()
}

pub fn time_average_entropy(alpha0: InfoContent, steps: usize, kind: EntropyKind) -> MomentSummary {
    moments(&trajectory_entropy_values(alpha0, steps, kind))
}

/// Analytic entropies of `samples` flat draws from `Γ_m`.
pub fn gamma_entropy_values(
    class: ChamberClass,
    samples: usize,
    rng: &mut RandomStream,
    kind: EntropyKind,
) -> Vec<f64> {
    (0..samples)
        .map(|_| analytic_entropy(sample_gamma(class, rng), 1.0, kind))
        .collect()
}

pub fn space_average_entropy(
    class: ChamberClass,
    samples: usize,
    rng: &mut RandomStream,
    kind: EntropyKind,
) -> MomentSummary {
    moments(&gamma_entropy_values(class, samples, rng, kind))
}

/// Arcsine density of the Γ_I linear entropy on `(0, 1/2)`.
pub fn arcsine_pdf(s: f64) -> f64 {
    if s <= 0.0 || s >= 0.5 {
        return 0.0;
    }
    1.0 / (PI * (s * (0.5 - s)).sqrt())
}

pub fn arcsine_cdf(s: f64) -> f64 {
    if s <= 0.0 {
        0.0
    } else if s >= 0.5 {
        1.0
    } else {
        2.0 / PI * (2.0 * s).sqrt().asin()
    }
}

/// Marchenko–Pastur density for square Wishart matrices, support `(0, 4]`.
pub fn mp_pdf(x: f64) -> f64 {
    if x <= 0.0 || x > 4.0 {
        return 0.0;
    }
    (1.0 - x / 4.0).max(0.0).sqrt() / (PI * x.sqrt())
}

pub fn mp_cdf(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 4.0 {
        1.0
    } else {
        let th = (x.sqrt() / 2.0).asin();
        2.0 / PI * (th + th.sin() * th.cos())
    }
}

/// Asymptotic CUE averages `(⟨S⟩, ⟨S_L⟩) = (ln N² − 1/2, (N²−1)/(N²+1))`.
pub fn cue_means(n: usize) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("N = {n} < 2")));
    }
    let d = (n * n) as f64;
    Ok((d.ln() - 0.5, (d - 1.0) / (d + 1.0)))
}

/// CPE averages for diagonal gates.
pub fn cpe_means(n: usize) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("N = {n} < 2")));
    }
    let nf = n as f64;
    let m = nf - 1.0;
    let s = 1.0 - nf + m * m * (nf * (nf / m)).ln();
    Ok((s, m * m / (nf * nf)))
}

/// How `|Tr A B†|` is normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreenessConvention {
    /// Positive matrices, each scaled to unit trace; raw `|Tr A B†|`.
    Positive,
    /// Unitaries or reshuffled unitaries; `|Tr A B†| / d`.
    Reshuffled,
}

pub fn freeness_moment(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    convention: FreenessConvention,
) -> Result<f64> {
    let inner = trace_inner(b, a)?.norm();
    Ok(match convention {
        FreenessConvention::Positive => {
            let ta: f64 = a.diag().iter().map(|z| z.re).sum();
            let tb: f64 = b.diag().iter().map(|z| z.re).sum();
            inner / (ta * tb)
        }
        FreenessConvention::Reshuffled => inner / a.nrows() as f64,
    })
}

/// One-sample Kolmogorov–Smirnov distance to a reference CDF.
pub fn ks_distance<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::InvalidArgument(
            "KS distance needs two samples".into(),
        ));
    }
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < xs.len() {
        // step over ties so the empirical CDF is evaluated once per value
        let mut j = i;
        while j + 1 < xs.len() && xs[j + 1] == xs[i] {
            j += 1;
        }
        let f = cdf(xs[i]);
        d = d.max(f - i as f64 / n).max((j + 1) as f64 / n - f);
        i = j + 1;
    }
    Ok(d)
}

/// Two-sample Kolmogorov–Smirnov distance.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidArgument("empty sample".into()));
    }
    let mut xa = a.to_vec();
    let mut xb = b.to_vec();
    xa.sort_by(f64::total_cmp);
    xb.sort_by(f64::total_cmp);
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < xa.len() && j < xb.len() {
        let x = xa[i].min(xb[j]);
        while i < xa.len() && xa[i] <= x {
            i += 1;
        }
        while j < xb.len() && xb[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            dp = n as f64 * (x * p - p0) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite Gauss–Legendre rule on `[lo, hi]`.
fn composite_rule(lo: f64, hi: f64, panels: usize, order: usize) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(order);
    let h = (hi - lo) / panels as f64;
    let mut rule = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let a = lo + h * p as f64;
        for (xi, wi) in x.iter().zip(&w) {
            rule.push((a + 0.5 * h * (xi + 1.0), 0.5 * h * wi));
        }
    }
    rule
}

/// Flat average of `f` over `Γ_m` by nested composite Gauss–Legendre
/// quadrature, with `α₂ = u·α₁`, `α₃ = v·α₂` mapping the ordered simplex onto
/// a cube.
pub fn gamma_quadrature<F: Fn(InfoContent) -> f64>(
    class: ChamberClass,
    panels: usize,
    order: usize,
    f: F,
) -> f64 {
    let outer = composite_rule(0.0, FRAC_PI_4, panels, order);
    let unit = composite_rule(0.0, 1.0, panels, order);
    let m = class.dimension();
    let volume = FRAC_PI_4.powi(m as i32) / (1..=m).product::<usize>() as f64;
    let mut acc = 0.0;
    for &(a1, w1) in &outer {
        match m {
            1 => acc += w1 * f(InfoContent::new(a1, 0.0, 0.0)),
            _ => {
                for &(u, wu) in &unit {
                    let a2 = a1 * u;
                    if m == 2 {
                        acc += w1 * wu * a1 * f(InfoContent::new(a1, a2, 0.0));
                    } else {
                        for &(v, wv) in &unit {
                            let a3 = a2 * v;
                            acc += w1 * wu * wv * a1 * a2 * f(InfoContent::new(a1, a2, a3));
                        }
                    }
                }
            }
        }
    }
    acc / volume
}

/// Runs `f` on `samples` items split into [`CHUNK`]-sized pieces, piece `c`
/// drawing from substream `c` of `root`. Output order is sample order.
pub fn chunked<T, F>(root: &RandomStream, samples: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut RandomStream, usize) -> Vec<T> + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<Vec<T>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = root.substream(c as u64);
            let len = CHUNK.min(samples - c * CHUNK);
            f(&mut rng, len)
        })
        .collect();
    parts.into_iter().flatten().collect()
}

/// Fallible variant of [`chunked`].
pub fn try_chunked<T, F>(root: &RandomStream, samples: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut RandomStream, usize) -> Result<Vec<T>> + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let parts: Result<Vec<Vec<T>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = root.substream(c as u64);
            let len = CHUNK.min(samples - c * CHUNK);
            f(&mut rng, len)
        })
        .collect();
    Ok(parts?.into_iter().flatten().collect())
}

/// Per-sample `(S, S_L)` over a gate ensemble.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EntropySamples {
    pub shannon: Vec<f64>,
    pub linear: Vec<f64>,
}

impl EntropySamples {
    pub fn get(&self, kind: EntropyKind) -> &[f64] {
        match kind {
            EntropyKind::Shannon => &self.shannon,
            EntropyKind::Linear => &self.linear,
        }
    }
}

/// Schmidt entropies of `samples` gates from a gate-valued ensemble.
pub fn ensemble_entropies(spec: &EnsembleSpec, samples: usize) -> Result<EntropySamples> {
    spec.validate()?;
    let pairs = try_chunked(&spec.stream(), samples, |rng, len| {
        (0..len)
            .map(|_| {
                let lam = schmidt_vector(&spec.sample_gate(rng)?)?;
                Ok((
                    lam.entropy(EntropyKind::Shannon),
                    lam.entropy(EntropyKind::Linear),
                ))
            })
            .collect()
    })?;
    let (shannon, linear) = pairs.into_iter().unzip();
    Ok(EntropySamples { shannon, linear })
}

/// Analytic entropies of flat draws from `Γ_m`, in parallel.
pub fn gamma_entropies(class: ChamberClass, samples: usize, seed: u64) -> EntropySamples {
    let pairs = chunked(&RandomStream::new(seed), samples, |rng, len| {
        (0..len)
            .map(|_| {
                let a = sample_gamma(class, rng);
                (
                    analytic_entropy(a, 1.0, EntropyKind::Shannon),
                    analytic_entropy(a, 1.0, EntropyKind::Linear),
                )
            })
            .collect()
    });
    let (shannon, linear) = pairs.into_iter().unzip();
    EntropySamples { shannon, linear }
}

/// Kind of rescaled-eigenvalue sample compared with Marchenko–Pastur.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectralMode {
    /// `W = XX†` with Ginibre `X`.
    Wishart,
    /// Induced states of independent Haar gates.
    HaarReshuffled,
    /// Induced states of `U₀^t`, `t = 1, 2, …` for one Haar `U₀`.
    TrajectoryReshuffled,
}

impl SpectralMode {
    pub const ALL: [SpectralMode; 3] = [
        SpectralMode::Wishart,
        SpectralMode::HaarReshuffled,
        SpectralMode::TrajectoryReshuffled,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SpectralMode::Wishart => "wishart",
            SpectralMode::HaarReshuffled => "haar_reshuffled",
            SpectralMode::TrajectoryReshuffled => "trajectory_reshuffled",
        }
    }
}

impl std::str::FromStr for SpectralMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase().replace('-', "_");
        SpectralMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown spectral mode '{s}'")))
    }
}

/// Pooled rescaled eigenvalues `x = dλ` of `samples` matrices of size `d`.
pub fn spectral_samples(
    mode: SpectralMode,
    d: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    let root = RandomStream::new(seed);
    let spectra: Vec<SpectralSample> = match mode {
        SpectralMode::Wishart => try_chunked(&root, samples, |rng, len| {
            (0..len)
                .map(|_| SpectralSample::from_positive(&wishart(d, rng, false)))
                .collect()
        })?,
        SpectralMode::HaarReshuffled => {
            check_square(d)?;
            try_chunked(&root, samples, |rng, len| {
                (0..len)
                    .map(|_| induced_state_spectrum(&haar_unitary(d, rng)))
                    .collect()
            })?
        }
        SpectralMode::TrajectoryReshuffled => {
            check_square(d)?;
            let u0 = haar_unitary(d, &mut root.substream(u64::MAX));
            let spectrum = u0.spectrum()?;
            let chunks = samples.div_ceil(CHUNK);
            let parts: Result<Vec<Vec<SpectralSample>>> = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let lo = c * CHUNK + 1;
                    let hi = ((c + 1) * CHUNK).min(samples);
                    (lo..=hi)
                        .map(|t| induced_state_spectrum(&spectrum.gate_power(t as u64)))
                        .collect()
                })
                .collect();
            parts?.into_iter().flatten().collect()
        }
    };
    Ok(spectra.into_iter().flat_map(|s| s.x).collect())
}

fn check_square(d: usize) -> Result<()> {
    crate::matrix::exact_sqrt(d)
        .map(|_| ())
        .ok_or(Error::NotBipartite { size: d })
}

/// Pair types compared by `⟨|Tr A B†|⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreenessPair {
    /// Two independent trace-normalized Wishart matrices.
    Wishart,
    /// Induced states of two independent Haar gates.
    InducedStates,
    /// `U₀^R` and `(U₀^k)^R` for one Haar `U₀`.
    ReshuffledPower(u32),
    /// A Haar unitary and its transpose.
    Transpose,
}

impl FreenessPair {
    pub const TABLE: [FreenessPair; 5] = [
        FreenessPair::Wishart,
        FreenessPair::InducedStates,
        FreenessPair::ReshuffledPower(2),
        FreenessPair::ReshuffledPower(3),
        FreenessPair::Transpose,
    ];

    pub fn labels(&self) -> (String, String) {
        match self {
            FreenessPair::Wishart => ("W1".into(), "W2".into()),
            FreenessPair::InducedStates => ("rho1".into(), "rho2".into()),
            FreenessPair::ReshuffledPower(k) => ("U0^R".into(), format!("(U0^{k})^R")),
            FreenessPair::Transpose => ("U".into(), "U^T".into()),
        }
    }

    fn sample(&self, d: usize, rng: &mut RandomStream) -> Result<f64> {
        match *self {
            FreenessPair::Wishart => freeness_moment(
                &wishart(d, rng, true),
                &wishart(d, rng, true),
                FreenessConvention::Positive,
            ),
            FreenessPair::InducedStates => {
                let r1 = reshuffled(&haar_unitary(d, rng));
                let r2 = reshuffled(&haar_unitary(d, rng));
                freeness_moment(
                    &r1.dot(&dagger(&r1)),
                    &r2.dot(&dagger(&r2)),
                    FreenessConvention::Positive,
                )
            }
            FreenessPair::ReshuffledPower(k) => {
                let u = haar_unitary(d, rng);
                let mut p = u.clone();
                for _ in 1..k {
                    p = p.compose(&u)?;
                }
                freeness_moment(
                    &reshuffled(&u),
                    &reshuffled(&p),
                    FreenessConvention::Reshuffled,
                )
            }
            FreenessPair::Transpose => {
                let u = haar_unitary(d, rng);
                let ut = u.matrix().t().to_owned();
                freeness_moment(u.matrix(), &ut, FreenessConvention::Reshuffled)
            }
        }
    }
}

/// `|Tr A B†|` over `pairs` independent draws of the given pair type.
pub fn freeness_samples(pair: FreenessPair, d: usize, pairs: usize, seed: u64) -> Result<Vec<f64>> {
    if !matches!(pair, FreenessPair::Wishart) {
        check_square(d)?;
    }
    try_chunked(&RandomStream::new(seed), pairs, |rng, len| {
        (0..len).map(|_| pair.sample(d, rng)).collect()
    })
}

/// Induced-state spectrum of an arbitrary square input (no unitarity check).
pub fn spectrum_of_input(x: &ComplexMatrix) -> Result<SpectralSample> {
    let n = crate::matrix::exact_sqrt(x.nrows()).ok_or(Error::NotBipartite { size: x.nrows() })?;
    induced_spectrum_of_matrix(x, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::EnsembleKind;
    use rand::Rng;
    use std::f64::consts::LN_2;

    /// Adaptive Simpson, used as an oracle independent of Gauss–Legendre.
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let c = 0.5 * (a + b);
        let whole = (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
        fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
            let c = 0.5 * (a + b);
            let (l, r) = (0.5 * (a + c), 0.5 * (c + b));
            let left = (c - a) / 6.0 * (f(a) + 4.0 * f(l) + f(c));
            let right = (b - c) / 6.0 * (f(c) + 4.0 * f(r) + f(b));
            if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
                left + right + (left + right - whole) / 15.0
            } else {
                rec(f, a, c, left, tol / 2.0, depth - 1) + rec(f, c, b, right, tol / 2.0, depth - 1)
            }
        }
        rec(f, a, b, whole, tol, depth)
    }

    #[test]
    fn constant_values() {
        let m = moments(&[2.5, 2.5, 2.5]);
        assert_eq!(m.mean, 2.5);
        assert!(m.variance.abs() < 1e-15);
        assert_eq!(m.stderr_mean, 0.0);
    }

    #[test]
    fn uniform_mean() {
        let mut rng = RandomStream::new(1);
        let v: Vec<f64> = (0..1_000_000).map(|_| rng.random::<f64>()).collect();
        let m = moments(&v);
        assert!((m.mean - 0.5).abs() < 0.002);
        assert!((m.variance - 1.0 / 12.0).abs() < 1e-3);
        assert!((m.variance - (m.second_moment - m.mean * m.mean)).abs() < 1e-12);
    }

    #[test]
    fn moment_merge_matches_concatenation() {
        let a = [0.1, 0.7, 0.2, 0.9];
        let b = [0.3, 0.4, 1.5];
        let all: Vec<f64> = a.iter().chain(&b).copied().collect();
        let merged = moments(&a).merge(&moments(&b));
        let direct = moments(&all);
        assert_eq!(merged.n, direct.n);
        assert!((merged.mean - direct.mean).abs() < 1e-15);
        assert!((merged.second_moment - direct.second_moment).abs() < 1e-15);
        assert!((merged.variance - direct.variance).abs() < 1e-14);
    }

    #[test]
    fn histogram_merge() {
        let a = [0.05, 0.5, 0.99, 1.0, -0.1];
        let b = [0.25, 0.26, 1.5];
        let edges = Histogram::uniform(0.0, 1.0, 4).unwrap().edges().to_vec();
        let mut ha = accumulate(&a, edges.clone()).unwrap();
        let hb = accumulate(&b, edges.clone()).unwrap();
        let all: Vec<f64> = a.iter().chain(&b).copied().collect();
        let hab = accumulate(&all, edges.clone()).unwrap();
        let mut hba = hb.clone();
        hba.merge(&ha).unwrap();
        ha.merge(&hb).unwrap();
        assert_eq!(ha, hab);
        assert_eq!(hba, hab);
        assert_eq!(hab.counts(), &[1, 2, 1, 2]);
        assert_eq!(hab.total(), hab.counts().iter().sum::<u64>());
        assert_eq!((hab.underflow(), hab.overflow()), (1, 1));
    }

    #[test]
    fn histogram_merge_rejects_other_edges() {
        let mut a = Histogram::uniform(0.0, 1.0, 4).unwrap();
        let b = Histogram::uniform(0.0, 1.0, 5).unwrap();
        assert!(a.merge(&b).is_err());
        assert!(Histogram::with_edges(vec![0.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn density_normalized() {
        let mut rng = RandomStream::new(2);
        let mut h = Histogram::with_edges(vec![0.0, 0.1, 0.5, 0.6, 1.0]).unwrap();
        h.extend((0..1000).map(|_| rng.random::<f64>()));
        let mass: f64 = h
            .density()
            .iter()
            .zip(h.edges().windows(2))
            .map(|(d, w)| d * (w[1] - w[0]))
            .sum();
        assert!((mass - 1.0).abs() < 1e-12);
    }

    #[test]
    fn jackknife_matches_iid_error() {
        let mut rng = RandomStream::new(3);
        let v: Vec<f64> = (0..100_000).map(|_| rng.random::<f64>()).collect();
        // Var(U²) = 1/5 − 1/9
        let expected = ((1.0 / 5.0 - 1.0 / 9.0) / 1e5_f64).sqrt();
        let jk = jackknife_moment_stderr(&v, 2, 100);
        assert!((jk / expected - 1.0).abs() < 0.3, "{jk} vs {expected}");
    }

    #[test]
    fn reference_densities() {
        assert!((arcsine_pdf(0.25) - 4.0 / PI).abs() < 1e-14);
        assert!((mp_pdf(1.0) - 0.75_f64.sqrt() / PI).abs() < 1e-14);
        assert_eq!(mp_pdf(4.0), 0.0);
        assert_eq!(arcsine_pdf(0.6), 0.0);
        assert_eq!(mp_pdf(-1.0), 0.0);
    }

    #[test]
    fn densities_integrate_to_one() {
        // substitutions s = sin²θ/2 and x = 4 sin²θ remove the endpoint
        // singularities before the Simpson oracle
        let arc = |th: f64| arcsine_pdf(th.sin().powi(2) / 2.0) * th.sin() * th.cos();
        let i = simpson(&arc, 1e-12, PI / 2.0 - 1e-12, 1e-12, 40);
        assert!((i - 1.0).abs() < 1e-6, "{i}");
        let mp = |th: f64| mp_pdf(4.0 * th.sin().powi(2)) * 8.0 * th.sin() * th.cos();
        let i = simpson(&mp, 1e-12, PI / 2.0, 1e-12, 40);
        assert!((i - 1.0).abs() < 1e-6, "{i}");
    }

    #[test]
    fn cdfs_match_integrated_densities() {
        for s in [0.05_f64, 0.2, 0.25, 0.4, 0.49] {
            let th_max = (2.0 * s).sqrt().asin();
            let arc = |th: f64| arcsine_pdf(th.sin().powi(2) / 2.0) * th.sin() * th.cos();
            let i = simpson(&arc, 1e-12, th_max, 1e-12, 40);
            assert!((i - arcsine_cdf(s)).abs() < 1e-8);
        }
        for x in [0.1_f64, 1.0, 2.0, 3.9] {
            let th_max = (x.sqrt() / 2.0).asin();
            let mp = |th: f64| mp_pdf(4.0 * th.sin().powi(2)) * 8.0 * th.sin() * th.cos();
            let i = simpson(&mp, 1e-12, th_max, 1e-12, 40);
            assert!((i - mp_cdf(x)).abs() < 1e-8);
        }
    }

    #[test]
    fn closed_form_means() {
        let (s, sl) = cue_means(2).unwrap();
        assert!((s - (4f64.ln() - 0.5)).abs() < 1e-15);
        assert!((sl - 0.6).abs() < 1e-15);
        let (s, sl) = cpe_means(2).unwrap();
        assert!((s - (2.0 * LN_2 - 1.0)).abs() < 1e-15);
        assert!((sl - 0.25).abs() < 1e-15);
        assert!((cue_means(10).unwrap().1 - 99.0 / 101.0).abs() < 1e-15);
        assert!((cpe_means(10).unwrap().1 - 0.81).abs() < 1e-15);
        assert!(cue_means(1).is_err());
        assert!(cpe_means(0).is_err());
    }

    #[test]
    fn ks_examples() {
        let c = vec![0.5; 10];
        assert!(ks_distance(&c, |x| x.clamp(0.0, 1.0)).unwrap() >= 0.5);
        assert!(ks_distance(&[0.3], |x| x).is_err());
        let mut rng = RandomStream::new(4);
        let u: Vec<f64> = (0..100_000).map(|_| rng.random::<f64>()).collect();
        assert!(ks_distance(&u, |x| x.clamp(0.0, 1.0)).unwrap() < 0.006);
        let v: Vec<f64> = (0..100_000).map(|_| rng.random::<f64>()).collect();
        assert!(ks_two_sample(&u, &v).unwrap() < 0.01);
        let shifted: Vec<f64> = v.iter().map(|x| x + 0.1).collect();
        assert!((ks_two_sample(&u, &shifted).unwrap() - 0.1).abs() < 0.01);
    }

    #[test]
    fn ks_on_finite_support_edges() {
        // all mass in the top bin of a bounded law
        let s = vec![0.4999; 5];
        let d = ks_distance(&s, arcsine_cdf).unwrap();
        assert!(d > 0.9 && d <= 1.0);
    }

    #[test]
    fn gauss_legendre_exact_for_polynomials() {
        let (x, w) = gauss_legendre(10);
        for k in 0..20 {
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
            let exact = if k % 2 == 1 {
                0.0
            } else {
                2.0 / (k as f64 + 1.0)
            };
            assert!((q - exact).abs() < 1e-13, "k={k}");
        }
    }

    #[test]
    fn quadrature_volume_and_centroid() {
        for class in ChamberClass::ALL {
            let one = gamma_quadrature(class, 2, 8, |_| 1.0);
            assert!((one - 1.0).abs() < 1e-13);
        }
        // centroid of the ordered simplex: α_k = (π/4)·(m+1−k)/(m+1)
        let c = gamma_quadrature(ChamberClass::GammaIII, 2, 8, |a| a.alpha[2]);
        assert!((c - FRAC_PI_4 / 4.0).abs() < 1e-13);
    }

    #[test]
    fn gamma_one_shannon_quadrature() {
        let q = gamma_quadrature(ChamberClass::GammaI, 64, 20, |a| {
            analytic_entropy(a, 1.0, EntropyKind::Shannon)
        });
        assert!((q - (4f64.ln() - 1.0)).abs() < 1e-8, "{q}");
        let q = gamma_quadrature(ChamberClass::GammaI, 8, 20, |a| {
            analytic_entropy(a, 1.0, EntropyKind::Linear)
        });
        assert!((q - 0.25).abs() < 1e-12);
    }

    #[test]
    fn time_average_of_periodic_orbit() {
        let a = InfoContent::new(std::f64::consts::FRAC_PI_8, 0.0, 0.0);
        let sl = |t: f64| analytic_entropy(a, t, EntropyKind::Linear);
        let cycle = (sl(1.0) + sl(2.0) + sl(3.0) + sl(4.0)) / 4.0;
        let avg = time_average_entropy(a, 400, EntropyKind::Linear);
        assert!((avg.mean - cycle).abs() < 1e-14);
        assert!((cycle - (0.25 + 0.5 + 0.25) / 4.0).abs() < 1e-14);
    }

    #[test]
    fn space_average_gamma_two() {
        let mut rng = RandomStream::new(5);
        let s = space_average_entropy(
            ChamberClass::GammaII,
            100_000,
            &mut rng,
            EntropyKind::Linear,
        );
        assert!((s.second_moment - 233.0 / 1024.0).abs() < 0.003);
    }

    #[test]
    fn chunking_is_thread_independent() {
        let root = RandomStream::new(6);
        let f =
            |rng: &mut RandomStream, len: usize| (0..len).map(|_| rng.random::<u32>()).collect();
        let par = chunked(&root, 3000, f);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let seq = pool.install(|| chunked(&root, 3000, f));
        assert_eq!(par, seq);
        assert_eq!(par.len(), 3000);
    }

    #[test]
    fn cpe_ensemble_small() {
        let spec = EnsembleSpec::new(EnsembleKind::Cpe(4), 7).unwrap();
        let e = ensemble_entropies(&spec, 20_000).unwrap();
        let m = moments(&e.linear);
        assert!((m.mean - 0.25).abs() < 4.0 * m.stderr_mean + 1e-3);
    }

    #[test]
    fn identity_input_point_mass() {
        let x = crate::matrix::identity(4);
        let s = spectrum_of_input(&x).unwrap();
        assert!((s.x[0] - 4.0).abs() < 1e-12);
        assert!(s.x[1..].iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn freeness_conventions() {
        let a = crate::matrix::identity(4);
        assert!(
            (freeness_moment(&a, &a, FreenessConvention::Reshuffled).unwrap() - 1.0).abs() < 1e-15
        );
        // maximally mixed states: Tr ρ² = 1/d
        assert!(
            (freeness_moment(&a, &a, FreenessConvention::Positive).unwrap() - 0.25).abs() < 1e-15
        );
        assert!(freeness_moment(
            &a,
            &crate::matrix::identity(9),
            FreenessConvention::Positive
        )
        .is_err());
    }
}
