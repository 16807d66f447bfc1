//! Three equivalent representations of Feynman amplitudes for graphs with
//! `n` loops and `N = 2n + 2` propagators: the momentum-space integral over
//! `ℝ^{4n}`, the parametric integral of `1 / S₂²` over the simplex, and the
//! simplex integral of `1 / Pf(Σ a_e Q_e)²` built from twistor forms.
//!
//! The crate checks the exact identity `Pf(Σ a_e Q_e)² = λ² S₂²` with
//! Gaussian-rational arithmetic and estimates all three integrals by seeded,
//! reproducible Monte Carlo.

pub mod algebra;
pub mod error;
pub mod graph;
pub mod integrate;
pub mod spec_file;
pub mod symanzik;
pub mod twistor;

pub use error::{Error, Result};
pub use graph::{cycle_basis, route_momenta, CycleBasis, FourVector, Graph, MomentumRouting};
pub use integrate::{integrate, IntegrationConfig, IntegrationResult, Method, MomentumDensity};
pub use spec_file::{parse_graph, GraphSpecFile};
pub use symanzik::{second_symanzik, SymanzikPair};
