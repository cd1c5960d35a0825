//! Turn time series into networks.
//!
//! Two workflows are covered:
//!
//! 1. **Many series, one network.** Compute a pairwise distance matrix with
//!    one of the kernels in [`dist`] — correlation, cross-correlation, time
//!    warping, symbol-based information measures, and event-timing measures —
//!    then threshold it into a proximity network with the constructors in
//!    [`net`]. The matrix step parallelizes across worker threads and can be
//!    partitioned into independent slices for job arrays, with a merge step
//!    that reassembles and verifies the full matrix.
//! 2. **One series, one network.** Map a single series directly to a graph:
//!    visibility graphs, symbol transition graphs, recurrence networks of
//!    delay embeddings, and proximity networks of sliding windows.
//!
//! Determinism is a design goal throughout: identical inputs, seeds and
//! parameters give bit-identical outputs regardless of worker count, and all
//! file formats round-trip floats exactly.

pub mod analysis;
pub mod dist;
pub mod error;
pub mod generate;
pub mod graphio;
pub mod io;
pub mod matrix;
pub mod net;
mod par;
pub mod series;
pub mod single;
pub mod stats;

pub use error::{Error, Result};
pub use matrix::{
    dist_parts_merge, event_dist, ts_dist, ts_dist_part, ts_dist_part_file, DistanceMatrix,
    DistancePart,
};
pub use series::{
    discretize, events_from_ts, ts_to_windows, BinRule, Discretized, EventDirection, EventSeries,
    TimeSeries, WindowSet,
};
