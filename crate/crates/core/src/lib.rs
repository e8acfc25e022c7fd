//! Long-time dynamics of bipartite unitary gates.
//!
//! Two-qubit gates are tracked through their information content, the three
//! Cartan phases `α = (α₁, α₂, α₃)`, which move like a free particle bouncing
//! inside the tetrahedron `Γ: π/4 ≥ α₁ ≥ α₂ ≥ α₃ ≥ 0`. Larger `N × N` gates
//! are characterized by the operator Schmidt vector of their reshuffled matrix.
//!
//! Module map:
//!
//! - [`matrix`]: dense complex primitives and the [`UnitaryGate`] carrier;
//! - [`gates`]: Pauli operators, the Cartan canonical form, named gates, fidelity;
//! - [`weyl`]: folding map, trajectories, class identification, extraction of α;
//! - [`schmidt`]: reshuffling, Schmidt vectors, entropies, induced-state spectra;
//! - [`random`]: seeded samplers for CUE, CPE, Ginibre, Wishart, local gates, `Γ_m`;
//! - [`stats`]: histograms, moments, reference laws, time/space averages, freeness.

pub mod error;
pub mod gates;
pub mod matrix;
pub mod random;
pub mod schmidt;
pub mod stats;
pub mod weyl;

pub use error::{Error, Result};
pub use gates::{cartan_gate, fidelity, named_gate, pauli, InfoContent, NamedGate};
pub use matrix::{ComplexMatrix, UnitaryGate, UnitarySpectrum};
pub use random::{EnsembleKind, EnsembleSpec, RandomStream};
pub use schmidt::{SchmidtVector, SpectralSample};
pub use stats::{Histogram, MomentSummary};
pub use weyl::{ChamberClass, Trajectory};

pub use num_complex::Complex64 as C64;
