//! Weyl-chamber geometry and the billiard dynamics of information content.
//!
//! The power `V^t` of a canonical gate has content `D(f(tα₁), f(tα₂), f(tα₃))`
//! where `f` is the triangle wave [`fold`] and `D` sorts in decreasing order:
//! a free particle reflecting off the faces of the tetrahedron `Γ`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::sync::LazyLock;

use ndarray::{array, Array2};
use ndarray_linalg::{Determinant, EigVals};
use num_complex::Complex64 as C64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::gates::{cartan_gate, fidelity, InfoContent};
use crate::matrix::{dagger, ComplexMatrix, UnitaryGate};
use crate::random::RandomStream;
use crate::schmidt::{analytic_entropies, linear_entropy, schmidt_vector, shannon_entropy};

/// Default threshold below which an information-content component counts as zero.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

/// Triangle wave `f(x) = (π/2)·|2x/π − ⌊2x/π + 1/2⌋|`, mapping ℝ onto `[0, π/4]`.
///
/// Even, `π/2`-periodic and the identity on `[0, π/4]`.
pub fn fold(x: f64) -> f64 {
    let y = 2.0 * x / PI;
    FRAC_PI_2 * (y - (y + 0.5).floor()).abs()
}

/// The components of `v` sorted in decreasing order.
pub fn descending(mut v: [f64; 3]) -> [f64; 3] {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Information content of `V^t` for a gate with content `alpha0`.
///
/// `t` may be any nonnegative real; `t = 1/2` gives the square root of the gate.
pub fn trajectory_content(alpha0: InfoContent, t: f64) -> InfoContent {
    InfoContent::from_array(descending(alpha0.alpha.map(|a| fold(t * a))))
}

/// Subsets of `Γ` distinguished by the number of nonzero components of `α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChamberClass {
    /// Edge `(α₁, 0, 0)`.
    GammaI,
    /// Lower face `(α₁, α₂, 0)`.
    GammaII,
    /// Interior.
    GammaIII,
}

impl ChamberClass {
    pub const ALL: [ChamberClass; 3] = [
        ChamberClass::GammaI,
        ChamberClass::GammaII,
        ChamberClass::GammaIII,
    ];

    pub fn dimension(&self) -> usize {
        match self {
            ChamberClass::GammaI => 1,
            ChamberClass::GammaII => 2,
            ChamberClass::GammaIII => 3,
        }
    }

    pub fn from_dimension(m: usize) -> Result<Self> {
        match m {
            1 => Ok(ChamberClass::GammaI),
            2 => Ok(ChamberClass::GammaII),
            3 => Ok(ChamberClass::GammaIII),
            _ => Err(Error::InvalidArgument(format!(
                "chamber dimension {m} not in 1..=3"
            ))),
        }
    }

    pub fn roman(&self) -> &'static str {
        match self {
            ChamberClass::GammaI => "I",
            ChamberClass::GammaII => "II",
            ChamberClass::GammaIII => "III",
        }
    }
}

impl std::str::FromStr for ChamberClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(ChamberClass::GammaI),
            "II" | "2" => Ok(ChamberClass::GammaII),
            "III" | "3" => Ok(ChamberClass::GammaIII),
            _ => Err(Error::InvalidArgument(format!(
                "unknown chamber class {s:?}"
            ))),
        }
    }
}

/// Class of a canonical content: the count of components above `zero_tol`.
///
/// The zero vector (local gates) sits at the end of the closed edge and is
/// reported as `GammaI`.
pub fn chamber_class(alpha: InfoContent, zero_tol: f64) -> ChamberClass {
    match alpha.alpha.iter().filter(|&&a| a > zero_tol).count() {
        0 | 1 => ChamberClass::GammaI,
        2 => ChamberClass::GammaII,
        _ => ChamberClass::GammaIII,
    }
}

/// Columns are the magic (phase-adjusted Bell) basis. In this basis local
/// `SU(2)⊗SU(2)` gates are real orthogonal and canonical gates are diagonal.
static MAGIC_BASIS: LazyLock<ComplexMatrix> = LazyLock::new(|| {
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let i = C64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
    let o = C64::new(0.0, 0.0);
    array![[h, o, o, i], [o, i, h, o], [o, i, -h, o], [h, o, o, -i]]
});

/// Canonical information content of an arbitrary two-qubit gate.
///
/// After removing the global phase (`det U = 1`), the gate is written in the
/// magic basis as `U_B` and the eigenvalues of `U_Bᵀ U_B` are `e^{2iλ_j}`,
/// where `λ_j` are the four Bell-state eigenphases `±α₁ ± α₂ ± α₃` of the
/// canonical representative. Which eigenvalue goes to which Bell state, the
/// branch of each `λ_j` (mod π) and the fourth root of the determinant only
/// change `α` by permutations, sign flips and shifts by `π/2`, all of which
/// [`InfoContent::canonical`] removes.
pub fn extract_content(u: &UnitaryGate) -> Result<InfoContent> {
    if u.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "information content needs a 4×4 gate, got {}×{}",
            u.dim(),
            u.dim()
        )));
    }
    let m = u.matrix();
    let det = m.det()?;
    let unit = C64::from_polar(1.0, -det.arg() / 4.0);
    let q = &*MAGIC_BASIS;
    let ub = dagger(q).dot(m).dot(q).mapv(|z| z * unit);
    let gram: Array2<C64> = ub.t().dot(&ub);
    let lambda: Vec<f64> = gram.eigvals()?.iter().map(|z| z.arg() / 2.0).collect();
    let raw = InfoContent::new(
        (lambda[0] + lambda[2]) / 2.0,
        (lambda[1] + lambda[2]) / 2.0,
        (lambda[0] + lambda[1]) / 2.0,
    );
    Ok(raw.canonical())
}

/// A sequence of canonical contents with the entropies of the matching gates.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub alpha0: InfoContent,
    pub times: Vec<f64>,
    pub points: Vec<InfoContent>,
    pub entropy: Vec<f64>,
    pub linear_entropy: Vec<f64>,
}

impl Trajectory {
    /// Exact billiard trajectory of a canonical gate sampled on `times`.
    pub fn cartan(alpha0: InfoContent, times: &[f64]) -> Self {
        let mut traj = Trajectory {
            alpha0,
            times: times.to_vec(),
            points: Vec::with_capacity(times.len()),
            entropy: Vec::with_capacity(times.len()),
            linear_entropy: Vec::with_capacity(times.len()),
        };
        for &t in times {
            let (s, sl) = analytic_entropies(alpha0, t);
            traj.points.push(trajectory_content(alpha0, t));
            traj.entropy.push(s);
            traj.linear_entropy.push(sl);
        }
        traj
    }

    /// Integer steps `t = 1..=steps`.
    pub fn cartan_steps(alpha0: InfoContent, steps: usize) -> Self {
        let times: Vec<f64> = (1..=steps).map(|t| t as f64).collect();
        Self::cartan(alpha0, &times)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Errors with [`Error::NotLocal`] unless `y` has Schmidt rank one.
pub fn check_local(y: &UnitaryGate) -> Result<()> {
    let lambda = schmidt_vector(y)?;
    let second = lambda.lambda.get(1).copied().unwrap_or(0.0);
    if second > DEFAULT_ZERO_TOL {
        return Err(Error::NotLocal(second));
    }
    Ok(())
}

/// Contents `α((V·Y_loc)^t)` at the requested integer times.
pub fn interlaced_contents(
    v: &UnitaryGate,
    y_loc: &UnitaryGate,
    times: &[u64],
) -> Result<Vec<InfoContent>> {
    if v.dim() != 4 || y_loc.dim() != 4 {
        return Err(Error::DimensionMismatch(
            "interlaced dynamics needs 4×4 gates".into(),
        ));
    }
    check_local(y_loc)?;
    let spectrum = v.compose(y_loc)?.spectrum()?;
    times
        .iter()
        .map(|&t| extract_content(&spectrum.gate_power(t)))
        .collect()
}

/// Trajectory of `U = V·Y_loc` for `t = 1..=steps`, with entropies taken from
/// the numerical Schmidt vector of each power.
pub fn interlaced_trajectory(
    v: &UnitaryGate,
    y_loc: &UnitaryGate,
    steps: usize,
) -> Result<Trajectory> {
    if v.dim() != 4 || y_loc.dim() != 4 {
        return Err(Error::DimensionMismatch(
            "interlaced dynamics needs 4×4 gates".into(),
        ));
    }
    check_local(y_loc)?;
    let spectrum = v.compose(y_loc)?.spectrum()?;
    let mut traj = Trajectory {
        alpha0: extract_content(v)?,
        times: Vec::with_capacity(steps),
        points: Vec::with_capacity(steps),
        entropy: Vec::with_capacity(steps),
        linear_entropy: Vec::with_capacity(steps),
    };
    for t in 1..=steps as u64 {
        let power = spectrum.gate_power(t);
        let lambda = schmidt_vector(&power)?;
        traj.times.push(t as f64);
        traj.points.push(extract_content(&power)?);
        traj.entropy.push(shannon_entropy(&lambda));
        traj.linear_entropy.push(linear_entropy(&lambda));
    }
    Ok(traj)
}

/// Whether `x` lies within `tol` of a rational with denominator at most `max_den`.
fn near_rational(x: f64, max_den: u32, tol: f64) -> bool {
    (1..=max_den).any(|q| {
        let y = x * q as f64;
        (y - y.round()).abs() < tol
    })
}

/// Whether the first `m` components of `alpha` generate an ergodic orbit to
/// double precision: each phase is far from a low-denominator rational
/// multiple of `π/2`, and so is every small integer combination of them.
pub fn is_generic(alpha: InfoContent, m: usize) -> bool {
    const RANGE: i32 = 3;
    const MAX_DEN: u32 = 64;
    const TOL: f64 = 1e-9;
    let x: Vec<f64> = alpha.alpha[..m].iter().map(|a| a / FRAC_PI_2).collect();
    if x.iter().any(|&v| v.abs() < 1e-6) {
        return false;
    }
    let mut coeffs = vec![-RANGE; m];
    loop {
        if coeffs.iter().any(|&c| c != 0) {
            let combo: f64 = coeffs.iter().zip(&x).map(|(&c, v)| c as f64 * v).sum();
            if near_rational(combo, MAX_DEN, TOL) {
                return false;
            }
        }
        // odometer over [-RANGE, RANGE]^m
        let mut k = 0;
        loop {
            if k == m {
                return true;
            }
            coeffs[k] += 1;
            if coeffs[k] > RANGE {
                coeffs[k] = -RANGE;
                k += 1;
            } else {
                break;
            }
        }
    }
}

/// Number of congruent cells in the four-fold subdivision of `Γ`.
pub const SUBCELLS: usize = 64;

type CellKey = ([usize; 3], [usize; 3]);

fn cell_key(x: [f64; 3]) -> CellKey {
    let k = x.map(|v| (v.floor().max(0.0) as usize).min(3));
    let f = [0, 1, 2].map(|i| x[i] - k[i] as f64);
    let mut order = [0, 1, 2];
    order.sort_by(|&i, &j| f[j].total_cmp(&f[i]).then(i.cmp(&j)));
    (k, order)
}

static CELL_KEYS: LazyLock<Vec<CellKey>> = LazyLock::new(|| {
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut keys = Vec::new();
    for k1 in 0..4 {
        for k2 in 0..=k1 {
            for k3 in 0..=k2 {
                let k = [k1, k2, k3];
                for p in perms {
                    let pos = |i: usize| p.iter().position(|&v| v == i).unwrap();
                    let consistent =
                        (0..3).all(|i| (i + 1..3).all(|j| k[i] != k[j] || pos(i) < pos(j)));
                    if consistent {
                        keys.push((k, p));
                    }
                }
            }
        }
    }
    keys.sort();
    keys
});

/// Index in `0..SUBCELLS` of the cell of `Γ` containing the canonical `alpha`.
///
/// With `x = 16α/π`, `Γ` is the ordered simplex `4 ≥ x₁ ≥ x₂ ≥ x₃ ≥ 0`. Its
/// Freudenthal subdivision into 64 congruent simplices labels a cell by the
/// integer parts of `x` and the ordering of the fractional parts.
pub fn subcell(alpha: InfoContent) -> usize {
    let key = cell_key(alpha.alpha.map(|a| a * 16.0 / PI));
    CELL_KEYS
        .binary_search(&key)
        .expect("canonical content maps to a cell")
}

/// Result of [`approximate_gate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Approximation {
    pub alpha: InfoContent,
    pub fidelity: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct ApproximationOptions {
    /// Number of nonzero components of the result; the remaining ones are zero.
    pub class: ChamberClass,
    /// Random directions tried before giving up.
    pub budget: usize,
}

impl Default for ApproximationOptions {
    fn default() -> Self {
        Self {
            class: ChamberClass::GammaIII,
            budget: 64,
        }
    }
}

/// A generic canonical gate close to `target`.
///
/// The target's canonical content is shifted along a random direction (inward
/// at the chamber boundary) by the largest step that keeps
/// `F(V(α), V(α_target)) ≥ min_fidelity`, found by bisection. Directions
/// producing a non-generic point are discarded. `min_fidelity ≥ 1` returns the
/// target's own content.
pub fn approximate_gate(
    target: &UnitaryGate,
    min_fidelity: f64,
    rng: &mut RandomStream,
    options: ApproximationOptions,
) -> Result<Approximation> {
    if !(min_fidelity > 0.0 && min_fidelity <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "fidelity threshold {min_fidelity} not in (0, 1]"
        )));
    }
    let alpha0 = extract_content(target)?;
    let reference = cartan_gate(alpha0);
    if min_fidelity >= 1.0 {
        return Ok(Approximation {
            alpha: alpha0,
            fidelity: 1.0,
        });
    }
    let m = options.class.dimension();
    let edge = 1e-12;
    let at = |direction: &[f64; 3], step: f64| -> Result<(InfoContent, f64)> {
        let mut a = [0.0; 3];
        for k in 0..m {
            a[k] = alpha0.alpha[k] + step * direction[k];
        }
        let alpha = InfoContent::from_array(a).canonical();
        Ok((alpha, fidelity(&cartan_gate(alpha), &reference)?))
    };
    for _ in 0..options.budget {
        let mut direction = [0.0; 3];
        for (k, d) in direction.iter_mut().enumerate().take(m) {
            let magnitude = rng.random_range(0.5..1.0);
            let a = alpha0.alpha[k];
            let sign = if a < edge {
                1.0
            } else if a > FRAC_PI_4 - edge {
                -1.0
            } else if rng.random_bool(0.5) {
                1.0
            } else {
                -1.0
            };
            *d = sign * magnitude;
        }
        let (mut lo, mut hi) = (0.0_f64, FRAC_PI_4 / 2.0);
        if at(&direction, hi)?.1 >= min_fidelity {
            lo = hi;
        } else {
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if at(&direction, mid)?.1 >= min_fidelity {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
        }
        let (alpha, f) = at(&direction, lo)?;
        if f >= min_fidelity && is_generic(alpha, m) {
            return Ok(Approximation { alpha, fidelity: f });
        }
    }
    Err(Error::SearchExhausted {
        attempts: options.budget,
        reason: format!(
            "no generic class-{} gate within fidelity {min_fidelity}",
            options.class.roman()
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{named_gate, NamedGate};
    use crate::matrix::{matrix_power, tensor};
    use crate::random::{haar_unitary, random_local};
    use std::f64::consts::FRAC_PI_8;

    fn close(a: InfoContent, b: InfoContent, tol: f64) -> bool {
        a.max_abs_diff(&b) < tol
    }

    #[test]
    fn fold_examples() {
        assert!((fold(FRAC_PI_8) - FRAC_PI_8).abs() < 1e-15);
        assert!((fold(3.0 * FRAC_PI_8) - FRAC_PI_8).abs() < 1e-15);
        assert!(fold(FRAC_PI_2).abs() < 1e-15);
        assert!((fold(-0.3) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn descending_examples() {
        assert_eq!(descending([0.1, 0.3, 0.2]), [0.3, 0.2, 0.1]);
        assert_eq!(descending([0.5; 3]), [0.5; 3]);
        assert_eq!(
            descending([0.0, FRAC_PI_4, FRAC_PI_8]),
            [FRAC_PI_4, FRAC_PI_8, 0.0]
        );
    }

    #[test]
    fn trajectory_examples() {
        let a = InfoContent::new(FRAC_PI_8, 0.0, 0.0);
        assert!(close(trajectory_content(a, 4.0), InfoContent::ZERO, 1e-15));
        assert!(close(
            trajectory_content(a, 2.0),
            InfoContent::new(FRAC_PI_4, 0.0, 0.0),
            1e-15
        ));
        let b = InfoContent::new(0.7, 0.4, 0.1);
        assert!(close(trajectory_content(b, 0.5), b.scaled(0.5), 1e-15));
    }

    #[test]
    fn class_examples() {
        let tol = DEFAULT_ZERO_TOL;
        assert_eq!(
            chamber_class(InfoContent::new(FRAC_PI_8, 0.0, 0.0), tol),
            ChamberClass::GammaI
        );
        assert_eq!(
            chamber_class(InfoContent::new(FRAC_PI_8, PI / 16.0, 0.0), tol),
            ChamberClass::GammaII
        );
        assert_eq!(
            chamber_class(InfoContent::new(FRAC_PI_8, PI / 16.0, PI / 32.0), tol),
            ChamberClass::GammaIII
        );
    }

    #[test]
    fn extract_named_gates() {
        let cases = [
            (NamedGate::Identity, [0.0, 0.0, 0.0]),
            (NamedGate::Cnot, [FRAC_PI_4, 0.0, 0.0]),
            (NamedGate::SqrtCnot, [FRAC_PI_8, 0.0, 0.0]),
            (NamedGate::Swap, [FRAC_PI_4; 3]),
            (NamedGate::SqrtSwap, [FRAC_PI_8; 3]),
        ];
        for (g, expected) in cases {
            let a = extract_content(&named_gate(g)).unwrap();
            assert!(
                close(a, InfoContent::from_array(expected), 1e-10),
                "{g:?}: {a}"
            );
        }
    }

    #[test]
    fn extract_is_local_invariant_for_cnot() {
        let mut rng = RandomStream::new(41);
        let cnot = named_gate(NamedGate::Cnot);
        for _ in 0..50 {
            let left = random_local(&mut rng);
            let right = random_local(&mut rng);
            let u = left.compose(&cnot).unwrap().compose(&right).unwrap();
            let a = extract_content(&u).unwrap();
            assert!(close(a, InfoContent::new(FRAC_PI_4, 0.0, 0.0), 1e-8), "{a}");
        }
    }

    #[test]
    fn extract_ignores_global_phase() {
        let v = cartan_gate(InfoContent::new(0.61, 0.33, 0.12));
        for phi in [0.4, 1.3, -2.2, PI] {
            let w = C64::from_polar(1.0, phi);
            let u = UnitaryGate::new(v.matrix().mapv(|z| z * w)).unwrap();
            assert!(close(
                extract_content(&u).unwrap(),
                InfoContent::new(0.61, 0.33, 0.12),
                1e-10
            ));
        }
    }

    #[test]
    fn extract_rejects_wrong_dimension() {
        assert!(extract_content(&UnitaryGate::identity(3)).is_err());
    }

    #[test]
    fn powers_of_haar_gates_match_extraction_of_power() {
        // Content of U^t from the matrix power, and the matrix power of a
        // locally dressed canonical gate, agree after canonicalization.
        let mut rng = RandomStream::new(8);
        let u = haar_unitary(4, &mut rng);
        let a = extract_content(&u).unwrap();
        let v = cartan_gate(a);
        let f = fidelity(&v, &cartan_gate(extract_content(&u).unwrap())).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
        for t in 1..6 {
            let p = matrix_power(&v, t).unwrap();
            let b = extract_content(&p).unwrap();
            assert!(close(b, trajectory_content(a, t as f64), 1e-8));
        }
    }

    #[test]
    fn interlacing_with_identity_reduces_to_billiard() {
        let a = InfoContent::new(PI * 0.137, 0.0, 0.0);
        let v = cartan_gate(a);
        let traj = interlaced_trajectory(&v, &UnitaryGate::identity(2), 12).unwrap();
        let exact = Trajectory::cartan_steps(a, 12);
        for (p, q) in traj.points.iter().zip(&exact.points) {
            assert!(close(*p, *q, 1e-8));
        }
        for (s, q) in traj.linear_entropy.iter().zip(&exact.linear_entropy) {
            assert!((s - q).abs() < 1e-9);
        }
    }

    #[test]
    fn interlacing_first_step_keeps_class() {
        let a = InfoContent::new(PI * 0.137, 0.0, 0.0);
        let v = cartan_gate(a);
        let mut rng = RandomStream::new(99);
        let y = random_local(&mut rng);
        let traj = interlaced_trajectory(&v, &y, 3).unwrap();
        assert!(close(traj.points[0], a, 1e-9));
        assert_eq!(
            chamber_class(traj.points[0], DEFAULT_ZERO_TOL),
            ChamberClass::GammaI
        );
        assert!(traj.points[2].alpha.iter().all(|&x| x > DEFAULT_ZERO_TOL));
    }

    #[test]
    fn interlacing_rejects_nonlocal_dressing() {
        let v = cartan_gate(InfoContent::new(0.3, 0.0, 0.0));
        let err = interlaced_trajectory(&v, &named_gate(NamedGate::Cnot), 3).unwrap_err();
        assert!(matches!(err, Error::NotLocal(_)));
    }

    #[test]
    fn local_product_is_accepted() {
        let x = crate::gates::pauli(1).unwrap();
        let h = tensor(&x, &crate::matrix::identity(2));
        check_local(&UnitaryGate::new(h).unwrap()).unwrap();
    }

    #[test]
    fn approximate_cnot_on_the_edge() {
        let mut rng = RandomStream::new(5);
        let opts = ApproximationOptions {
            class: ChamberClass::GammaI,
            budget: 16,
        };
        let r = approximate_gate(&named_gate(NamedGate::Cnot), 0.998, &mut rng, opts).unwrap();
        assert!(r.fidelity >= 0.998 && r.fidelity < 0.9981);
        assert_eq!(r.alpha.alpha[1], 0.0);
        assert_eq!(r.alpha.alpha[2], 0.0);
        assert!(r.alpha.alpha[0] < FRAC_PI_4);
    }

    #[test]
    fn approximate_cnot_generic() {
        let mut rng = RandomStream::new(6);
        let r = approximate_gate(
            &named_gate(NamedGate::Cnot),
            0.998,
            &mut rng,
            ApproximationOptions::default(),
        )
        .unwrap();
        assert!(r.fidelity >= 0.998);
        assert!(r.alpha.alpha.iter().all(|&a| a > DEFAULT_ZERO_TOL));
        assert!(r.alpha.max_abs_diff(&InfoContent::new(FRAC_PI_4, 0.0, 0.0)) < 0.1);
        assert!(is_generic(r.alpha, 3));
    }

    #[test]
    fn approximate_canonical_target_perturbation_is_small() {
        let a0 = InfoContent::new(0.55, 0.31, 0.17);
        let mut rng = RandomStream::new(7);
        let r = approximate_gate(
            &cartan_gate(a0),
            0.998,
            &mut rng,
            ApproximationOptions::default(),
        )
        .unwrap();
        assert!(r.fidelity >= 0.998);
        assert!(r.alpha.max_abs_diff(&a0) < 0.1);
    }

    #[test]
    fn approximate_with_unit_threshold_is_exact() {
        let mut rng = RandomStream::new(7);
        let target = named_gate(NamedGate::SqrtSwap);
        let r = approximate_gate(&target, 1.0, &mut rng, ApproximationOptions::default()).unwrap();
        assert_eq!(r.alpha, extract_content(&target).unwrap());
        assert_eq!(r.fidelity, 1.0);
    }

    #[test]
    fn approximate_reports_exhausted_budget() {
        // A class-I gate cannot come close to SWAP.
        let mut rng = RandomStream::new(7);
        let opts = ApproximationOptions {
            class: ChamberClass::GammaI,
            budget: 4,
        };
        let err =
            approximate_gate(&named_gate(NamedGate::Swap), 0.998, &mut rng, opts).unwrap_err();
        assert!(matches!(err, Error::SearchExhausted { attempts: 4, .. }));
    }

    #[test]
    fn genericity_rejects_rational_phases() {
        assert!(!is_generic(InfoContent::new(FRAC_PI_8, 0.0, 0.0), 1));
        assert!(!is_generic(InfoContent::new(PI * 0.125, 0.0, 0.0), 1));
        assert!(!is_generic(InfoContent::new(PI / 7.0, 0.0, 0.0), 1));
        assert!(is_generic(
            InfoContent::new(PI * 0.1370123456789, 0.0, 0.0),
            1
        ));
        // commensurate pair: α₁ = 2α₂
        assert!(!is_generic(InfoContent::new(0.6, 0.3, 0.0), 2));
        assert!(is_generic(InfoContent::new(0.6, 0.3117, 0.0), 2));
    }

    #[test]
    fn subdivision_has_equal_cells() {
        assert_eq!(CELL_KEYS.len(), SUBCELLS);
        let mut rng = RandomStream::new(31);
        let m = 200_000;
        let mut counts = [0usize; SUBCELLS];
        for _ in 0..m {
            counts[subcell(crate::random::sample_gamma(
                ChamberClass::GammaIII,
                &mut rng,
            ))] += 1;
        }
        for c in counts {
            assert!((c as f64 / m as f64 - 1.0 / 64.0).abs() < 0.003);
        }
        // vertices of Γ
        for a in [
            [0.0; 3],
            [FRAC_PI_4, 0.0, 0.0],
            [FRAC_PI_4, FRAC_PI_4, 0.0],
            [FRAC_PI_4; 3],
        ] {
            assert!(subcell(InfoContent::from_array(a)) < SUBCELLS);
        }
    }
}
