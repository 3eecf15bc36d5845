//! Sampling, embedding certificates and projection frames.

mod csv_io;
mod embed;
mod frame;
mod sample;

pub use csv_io::{read_curve_csv, write_curve_csv};
#[doc(hidden)]
pub use embed::check_embedded_exhaustive;
pub use embed::{check_embedded, segment_distance, EmbeddingReport, SegmentDistance};
pub use frame::{default_frames, find_generic_projection, golden_frames, ProjectionFrame, FALLBACK_ATTEMPTS};
pub use sample::{sample, speed_bound, SampledCurve};
