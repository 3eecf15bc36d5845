//! Knots given by finite Fourier series.
//!
//! A [`FourierKnot`] is sampled into a closed polyline, certified embedded,
//! projected to a knot diagram, and reduced to invariants (linking numbers
//! of smoothings, the Conway coefficient `a(K)`, Arf, Alexander polynomial
//! and determinant) which are matched against a small catalog.
//!
//! ```
//! use fourier_knots::{fourier_trefoil, full_report};
//!
//! let report = full_report(&fourier_trefoil()).unwrap();
//! assert_eq!(report.arf, 1);
//! assert_eq!(report.determinant, 3.into());
//! ```

pub use nalgebra;

pub mod approx;
pub mod claims;
pub mod diagram;
pub mod error;
pub mod geometry;
pub mod invariants;
pub mod knot;
pub mod pipeline;
pub mod rational;
pub mod render;
pub mod series;
pub mod specfile;

pub use approx::{fourier_approximate, Approximation};
pub use error::{Error, Result};
pub use knot::{
    fibonacci_knot, fourier_figure_eight, fourier_trefoil, lissajous, torus_knot_fourier, torus_knot_point,
    FourierKnot,
};
pub use pipeline::{analyze, full_report, Analysis, PipelineOptions};
pub use rational::RationalFreq;
pub use series::{CosTerm, FourierSeries};
