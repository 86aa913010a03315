//! Microwave circuit analysis and power-amplifier design toolkit.
//!
//! The crate is organized around a small set of layers:
//!
//! - [`grid`], [`network`], [`units`] — frequency grids, N-port scattering
//!   networks, parameter conversions, cascading, stability and passivity
//!   checks.
//! - [`elements`] — passive element models: transmission lines, stubs,
//!   lumped RLC, quarter-wave transformers, microstrip closed forms, and
//!   the Wilkinson 2-way divider/combiner.
//! - [`device`] — a generic large-signal pHEMT model (tanh I-V), width
//!   scaling, DC-IV sweeps, bias-class selection, and small-signal
//!   linearization.
//! - [`netlist`], [`circuit`] — the text netlist format and its elaborated
//!   form (node graph plus element stamps).
//! - [`mna`], [`ac`] — complex modified nodal analysis and linear
//!   S-parameter extraction.
//! - [`hb`], [`transient`] — single-tone harmonic balance with a Newton
//!   solver, and a trapezoidal time-stepping solver that serves as an
//!   independent oracle.
//! - [`matching`] — Q-constrained TL/stub matching-network synthesis.
//! - [`pa`] — amplifier stage builders, the assembled demo PA, power
//!   sweeps, compression metrics, load-pull, and Monte-Carlo yield.
//! - [`touchstone`], [`report`] — Touchstone and CSV interchange.

pub mod ac;
pub mod circuit;
pub mod device;
pub mod elements;
pub mod error;
pub mod grid;
pub mod hb;
pub mod matching;
pub mod mna;
pub mod netlist;
pub mod network;
pub mod pa;
pub mod report;
pub mod touchstone;
pub mod transient;
pub mod units;

pub use error::{Error, Result};
pub use grid::FrequencyGrid;
pub use network::{NPortNetwork, Representation, StabilityReport};

/// Default system reference impedance in ohms.
pub const DEFAULT_Z0: f64 = 50.0;

/// Speed of light in vacuum, m/s.
pub const C0: f64 = 299_792_458.0;
