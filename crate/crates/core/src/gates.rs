//! Two-qubit gate construction: Pauli operators, the Cartan canonical form,
//! a few named reference gates, and gate fidelity.

use std::f64::consts::FRAC_PI_4;
use std::fmt;

use ndarray::{array, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::matrix::{identity, tensor, trace_inner, ComplexMatrix, UnitaryGate};
use crate::weyl;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Information content `α = (α₁, α₂, α₃)` of a two-qubit gate, in radians.
///
/// Any finite triple is accepted; [`InfoContent::canonical`] maps it to the
/// representative inside the tetrahedron `π/4 ≥ α₁ ≥ α₂ ≥ α₃ ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InfoContent {
    pub alpha: [f64; 3],
}

impl InfoContent {
    pub const ZERO: InfoContent = InfoContent { alpha: [0.0; 3] };

    pub fn new(a1: f64, a2: f64, a3: f64) -> Self {
        Self {
            alpha: [a1, a2, a3],
        }
    }

    pub fn from_array(alpha: [f64; 3]) -> Self {
        Self { alpha }
    }

    /// Componentwise fold into `[0, π/4]`, then descending order.
    pub fn canonical(&self) -> Self {
        let folded = self.alpha.map(weyl::fold);
        Self {
            alpha: weyl::descending(folded),
        }
    }

    /// Membership in the tetrahedron `Γ`, with slack `tol` on each inequality.
    pub fn is_canonical(&self, tol: f64) -> bool {
        let [a1, a2, a3] = self.alpha;
        a1 <= FRAC_PI_4 + tol && a1 + tol >= a2 && a2 + tol >= a3 && a3 >= -tol
    }

    /// Membership in the raw box `[0, π/2)³`.
    pub fn is_raw(&self) -> bool {
        self.alpha
            .iter()
            .all(|&a| (0.0..std::f64::consts::FRAC_PI_2).contains(&a))
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self {
            alpha: self.alpha.map(|a| a * t),
        }
    }

    pub fn max_abs_diff(&self, other: &InfoContent) -> f64 {
        self.alpha
            .iter()
            .zip(other.alpha.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Add for InfoContent {
    type Output = InfoContent;

    fn add(self, rhs: InfoContent) -> InfoContent {
        InfoContent {
            alpha: [
                self.alpha[0] + rhs.alpha[0],
                self.alpha[1] + rhs.alpha[1],
                self.alpha[2] + rhs.alpha[2],
            ],
        }
    }
}

impl fmt::Display for InfoContent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.alpha;
        write!(f, "({a}, {b}, {c})")
    }
}

/// Pauli matrix `σ_k`, `k ∈ {1, 2, 3}`.
pub fn pauli(k: usize) -> Result<ComplexMatrix> {
    match k {
        1 => Ok(array![[ZERO, ONE], [ONE, ZERO]]),
        2 => Ok(array![[ZERO, -I], [I, ZERO]]),
        3 => Ok(array![[ONE, ZERO], [ZERO, -ONE]]),
        _ => Err(Error::PauliIndex(k)),
    }
}

fn pauli_pair(k: usize) -> ComplexMatrix {
    let s = pauli(k).expect("index in range");
    tensor(&s, &s)
}

/// `exp(i a σ_k⊗σ_k) = cos(a)·1 + i sin(a)·σ_k⊗σ_k`.
fn cartan_factor(k: usize, a: f64) -> ComplexMatrix {
    let (s, c) = a.sin_cos();
    identity(4).mapv(|z| z * c) + pauli_pair(k).mapv(|z| z * I * s)
}

/// The canonical gate `V = exp(i Σ_k α_k σ_k⊗σ_k)` as the product of its three
/// commuting factors.
pub fn cartan_gate(alpha: InfoContent) -> UnitaryGate {
    let [a1, a2, a3] = alpha.alpha;
    let m = cartan_factor(1, a1)
        .dot(&cartan_factor(2, a2))
        .dot(&cartan_factor(3, a3));
    UnitaryGate::from_unitary(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedGate {
    Identity,
    Cnot,
    Swap,
    SqrtCnot,
    SqrtSwap,
}

impl NamedGate {
    pub const ALL: [NamedGate; 5] = [
        NamedGate::Identity,
        NamedGate::Cnot,
        NamedGate::Swap,
        NamedGate::SqrtCnot,
        NamedGate::SqrtSwap,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            NamedGate::Identity => "identity",
            NamedGate::Cnot => "cnot",
            NamedGate::Swap => "swap",
            NamedGate::SqrtCnot => "sqrt-cnot",
            NamedGate::SqrtSwap => "sqrt-swap",
        }
    }
}

impl std::str::FromStr for NamedGate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase().replace('_', "-");
        NamedGate::ALL
            .into_iter()
            .find(|g| g.name() == lower || (lower == "local" && *g == NamedGate::Identity))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown gate {s:?}")))
    }
}

/// Computational-basis matrix of a named gate (`|00⟩, |01⟩, |10⟩, |11⟩`, first
/// qubit most significant).
pub fn named_gate(g: NamedGate) -> UnitaryGate {
    let p = C64::new(0.5, 0.5);
    let m = C64::new(0.5, -0.5);
    let matrix: Array2<C64> = match g {
        NamedGate::Identity => identity(4),
        NamedGate::Cnot => array![
            [ONE, ZERO, ZERO, ZERO],
            [ZERO, ONE, ZERO, ZERO],
            [ZERO, ZERO, ZERO, ONE],
            [ZERO, ZERO, ONE, ZERO],
        ],
        NamedGate::Swap => array![
            [ONE, ZERO, ZERO, ZERO],
            [ZERO, ZERO, ONE, ZERO],
            [ZERO, ONE, ZERO, ZERO],
            [ZERO, ZERO, ZERO, ONE],
        ],
        NamedGate::SqrtCnot => array![
            [ONE, ZERO, ZERO, ZERO],
            [ZERO, ONE, ZERO, ZERO],
            [ZERO, ZERO, p, m],
            [ZERO, ZERO, m, p],
        ],
        NamedGate::SqrtSwap => array![
            [ONE, ZERO, ZERO, ZERO],
            [ZERO, p, m, ZERO],
            [ZERO, m, p, ZERO],
            [ZERO, ZERO, ZERO, ONE],
        ],
    };
    UnitaryGate::from_unitary(matrix)
}

/// `F(V₁, V₂) = |Tr V₁†V₂| / N²`.
pub fn fidelity(v1: &UnitaryGate, v2: &UnitaryGate) -> Result<f64> {
    let d = v1.dim();
    Ok(trace_inner(v1.matrix(), v2.matrix())?.norm() / d as f64)
}
