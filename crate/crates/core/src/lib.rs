//! Exact disclosure-minimal multi-party classification.
//!
//! This crate implements the machinery needed to answer one question
//! precisely: *when several parties must jointly classify a shared point set
//! with linear (or kernelized) threshold functions, what is the smallest set
//! of points that has to be revealed?*
//!
//! The building blocks:
//!
//! - [`dataset`]: exact rational points, labeled datasets, and index sets.
//! - [`separability`]: strict linear separability with certificates, leak
//!   sets, critical points, and safe regions — all in exact arithmetic.
//! - [`svm`]: hard-margin support vector machines whose output depends only
//!   on the positives and the critical negatives (independence of
//!   irrelevant alternatives).
//! - [`kernel`]: the same notions lifted to kernel feature spaces with a
//!   float tolerance contract.
//! - [`protocol`]: a three-party disclosure protocol (reporter, referee,
//!   labeler), truthfulness audits, and a revelation-style wrapper that
//!   makes any deterministic base protocol truthful.
//! - [`mlpipeline`]: single-party vs. multi-party classification pipelines
//!   and their equivalence harness.
//!
//! Exact computations use arbitrary-precision rationals throughout; nothing
//! in the separability layer depends on floating point. The SVM and kernel
//! layers are floating point with explicit tolerances, but they are always
//! gated by the exact layer.

pub mod dataset;
pub mod hull2d;
pub mod kernel;
mod linalg;
pub mod lp;
pub mod mlpipeline;
pub mod protocol;
pub mod rational;
pub mod rng;
pub mod separability;
pub mod svm;

pub use dataset::{IndexSet, Label, LabeledDataset, Point};
pub use separability::{LinearClassifier, SeparabilityResult};
