//! Intrinsic mode decomposition through the sawtooth transform.
//!
//! A series is mapped onto the piecewise-linear "sawtooth" joining its
//! extrema. There the upper and lower envelopes are straight-line rails, so
//! one envelope construction per mode yields an exact residue and IMF, which
//! are mapped back to the original samples.

pub mod boundary;
pub mod compare;
pub mod decompose;
pub mod emd;
pub mod error;
pub mod expansion;
mod instrument;
pub mod metrics;
pub mod mode;
pub mod pwl;
pub mod series;
pub mod signals;
pub mod spline;
pub mod stream;
pub mod transform;

pub use boundary::{CyclicOffset, ExtensionPolicy};
pub use decompose::{decompose, Decomposition, Method, StopReason, DEFAULT_MAX_MODES};
pub use emd::{emd_decompose, EnvelopeKind, SiftConfig, StopRule};
pub use error::{Error, Result};
pub use expansion::{expand, expansion_decompose, SawtoothExpansion};
pub use instrument::envelope_passes;
pub use mode::{extract_mode, Admissibility, ModeResult, ResidueStrategy};
pub use pwl::PiecewiseLinear;
pub use series::{find_extrema, Extremum, ExtremumKind, TimeSeries};
pub use stream::{stream_decompose, StreamDecomposer, StreamPoint};
