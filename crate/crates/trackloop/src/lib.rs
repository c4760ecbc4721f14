//! Closed-loop multistatic radar tracking at an urban intersection.
//!
//! The crate simulates the full sensing chain: a planar urban scene with
//! buildings and clutter scatterers ([`geometry`]), Gaussian-windowed chirp
//! waveforms and their Fisher-information measurement covariance
//! ([`waveform`]), received-signal synthesis and matched-filter detection
//! ([`sensing`]), UKF-based variable-structure IMM filtering ([`filtering`]),
//! LMIPDA multi-target data association ([`association`]), one-step-lookahead
//! waveform scheduling ([`scheduler`]), and a Monte Carlo experiment driver
//! ([`harness`]) that compares the closed loop against a round-robin,
//! single-model baseline.
//!
//! See the `examples/` directory for runnable entry points into each
//! subsystem, and `scenarios/intersection.json` for the reference scene.

pub mod association;
pub mod error;
pub mod filtering;
pub mod geometry;
pub mod harness;
pub mod motion;
pub mod rng;
pub mod scenario;
pub mod scheduler;
pub mod sensing;
pub mod tracker;
pub mod waveform;

pub use error::{Error, Result};

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
