//! Derivatives for maps between metric groups, done with slope functions.
//!
//! A map `f` between groups carrying compatible metrics is differentiable at
//! a point `a` when the difference `f(x) * f(a)^-1` factors through a
//! homomorphism-valued slope that is continuous at `a`; the derivative is the
//! slope's value there. This crate provides:
//!
//! - [`group`]: the group-description value ([`group::MetricGroupSpec`]) that
//!   bundles operations, metric, capability flags, and a sampler;
//! - [`groups`]: the shipped instances (reals, positive reals, nonzero
//!   complex numbers, the circle, square matrices) and their name registry;
//! - [`axioms`]: sampled checks of the laws a description claims;
//! - [`hom`]: the homomorphism space between two groups, its pointwise group
//!   structure, and the bounded sup metric on it;
//! - [`derivative`]: slope functions, the differentiability check, the
//!   sum/scale/chain combinators, and a finite-difference cross-check;
//! - [`cases`]: worked functions and slopes (matrix squaring, circle cubing,
//!   constants, identities) used by the checks and the companion CLI.
//!
//! Everything is deterministic given a seed: checks derive child seeds from
//! `(root seed, check label)` via [`sample::derive_seed`]. The crate is
//! `no_std` (with `alloc`); IO and serialization of reports live in the
//! companion CLI crate (JSON via the optional `serde` feature here).

#![cfg_attr(not(test), no_std)]
#![deny(missing_docs)]

extern crate alloc;

pub mod axioms;
pub mod cases;
pub mod derivative;
pub mod element;
pub mod error;
pub mod group;
pub mod groups;
pub mod hom;
mod math;
pub mod report;
pub mod sample;

pub use derivative::{DifferentiabilityReport, GroupFunction, SlopeFunction};
pub use element::{GroupElement, GroupId, Payload};
pub use error::{Error, Result};
pub use group::{MetricGroupSpec, TranslationConstant};
pub use hom::{hom_metric, Homomorphism, ProbeSet};
pub use report::{ProfilePoint, Tolerances, VerificationReport, Witness};
