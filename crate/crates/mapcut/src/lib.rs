//! Exact generating functions and uniform random sampling for the
//! cut-vertex and block structure of rooted planar maps.
//!
//! Two engines cross-validate each other:
//!
//! - an exact engine ([`qseries`], [`mapgf`]) that computes truncated power
//!   series with arbitrary-precision rational coefficients for rooted planar
//!   maps, their 2-connected cores, cut-vertex and block statistics, and the
//!   asymptotic constants those series imply;
//! - a sampling engine ([`mapstruct`], [`sampler`]) that draws uniform rooted
//!   planar maps with n edges in O(n) time through labeled plane trees and
//!   quadrangulations, plus an exhaustive small-n enumerator used as ground
//!   truth for both engines.
//!
//! [`subcrit`] covers subcritical map families (outerplanar, bipartite
//! outerplanar, series-parallel) where cut-vertex counts obey central limit
//! theorems, including conditioned Galton-Watson simulation. [`harness`]
//! ties everything into reproducible, seedable experiments with
//! machine-readable reports.
//!
//! See the `examples/` directory for one runnable program per capability,
//! and the `mapcut` binary for the same functionality behind a CLI.

pub mod harness;
pub mod jet;
pub mod mapgf;
pub mod mapstruct;
pub mod qseries;
pub mod ratio;
pub mod sampler;
pub mod subcrit;

pub use qseries::catalytic::CatalyticSeries;
pub use qseries::{PowerSeries, SeriesError};
