//! Heavy-tailed stopped random walks.
//!
//! This crate provides the building blocks for studying rare-event tails of
//! randomly stopped and conditioned random walks with regularly varying
//! increments:
//!
//! * [`sampling`] — exact variate generation and closed-form functionals
//!   (survival, Laplace transform, tail scale) for the increment laws,
//! * [`process`] — streaming simulators for the coupled control/cost walk:
//!   first passage, stopped cost, leapover, counting-process cost, and walks
//!   conditioned to stay positive,
//! * [`renewal`] — a deterministic Volterra solver for the transform-domain
//!   renewal equation of the stopped cost, used as an oracle for Monte Carlo,
//! * [`asymptotics`] — special functions and the precise large-deviation
//!   prediction formulas with validity-region metadata,
//! * [`transform`] — closed-form double transforms and numerical checks of
//!   the uniform Tauberian hypotheses on shrinking windows,
//! * [`stats`] — Wilson intervals, ratio-convergence reports, and the Hill
//!   tail-index diagnostic.
//!
//! The crate is `no_std`-compatible (with `alloc`); disable the default
//! `std` feature for embedded or kernel-adjacent use. All randomness flows
//! through [`rng::RngStream`], a counter-derived ChaCha stream, so every
//! computation is bit-reproducible for a fixed `(seed, stream_id)` pair and
//! trivially parallelizable by stream splitting.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod asymptotics;
pub mod process;
pub mod quad;
pub mod renewal;
pub mod rng;
pub mod sampling;
pub mod special;
pub mod stats;
pub mod transform;

pub use asymptotics::LDPrediction;
pub use process::{CouplingModel, StoppedSample, TailEstimate};
pub use rng::RngStream;
pub use sampling::TailLaw;
