//! Core numerics for multi-resolution energy forecasting.
//!
//! The crate is built around a band-partitioned Fourier-series inverse
//! Laplace transform: a forecast model emits complex Laplace-domain
//! coefficients on a grid of contour points, partitioned into frequency
//! bands anchored to the sampling resolutions of interest. Evaluating the
//! inversion over a prefix of bands yields a forecast whose spectral
//! content is cut off exactly at the resolution's Nyquist frequency.
//!
//! Modules:
//! - [`laplace`]: contour grids, band partitions, inversion, and a
//!   trapezoid forward transform used as a numerical cross-check.
//! - [`net`]: dense feed-forward networks with reverse-mode gradients and
//!   an adaptive-moment optimizer, all in `f64`.
//! - [`model`]: the hierarchical Laplace forecaster, its single-decoder
//!   degenerate form, a direct per-resolution network, and persistence.
//! - [`reconcile`]: bottom-up and least-squares coordination of
//!   multi-resolution forecast bundles.
//! - [`metrics`]: time/frequency RMSE, consistency errors, and the shared
//!   block downsampler.
//! - [`dispatch`]: day-ahead / intra-day / real-time scheduling problems
//!   over a bounded-variable simplex core.
//!
//! The crate is `no_std` compatible (with `alloc`); disable the default
//! `std` feature for embedded use. All floating point work is `f64`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod dispatch;
pub mod laplace;
pub mod metrics;
pub mod model;
pub mod net;
pub mod reconcile;
