//! Spectra of atom arrays built by nested Minkowski sums and coupled to a
//! one-dimensional waveguide.
//!
//! The pipeline is: build seed position sets and nest them
//! ([`geometry`]), assemble the dense single-excitation effective
//! Hamiltonian ([`hamiltonian`]), diagonalize it ([`spectral`]), and run
//! sweeps, disorder ensembles and resonance searches over it
//! ([`experiments`]). [`config`], [`output`] and [`run`] back the `mwqed` CLI.

pub mod config;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod hamiltonian;
pub mod output;
pub mod run;
pub mod spectral;

pub use error::{Error, Result};
pub use geometry::{apply_disorder, dimer_seed, minkowski_sum, nest, periodic_seed, DisorderSpec, NestedArray, PositionSet, Units};
pub use hamiltonian::{build_dense, decompose_blocks, dimer_analytic_eigs, dimer_cross_block, eigenbasis_elements, BlockDecomposition, EffectiveHamiltonian, PhysicalParams};
pub use spectral::{darkest_mode, eigendecompose, intensity_profile, ModeMetrics, SpectralDecomposition};

/// Version string embedded in every output manifest.
pub const VERSION: &str = concat!("mwqed ", env!("CARGO_PKG_VERSION"));
