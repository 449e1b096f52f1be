//! A priori quantities along a trajectory and the trajectory-level bound
//! patterns they are expected to satisfy.
//!
//! [`record`] turns a [`State`](crate::solver::State) into a
//! [`DiagnosticsRecord`], advancing the time integrals by the trapezoidal
//! rule from the previous record. The `bounds` functions post-process a
//! finished series; [`blowup_indicator`] summarises signs of
//! under-resolution or singular growth.

mod blowup;
mod bounds;
mod csv;
mod record;

pub use blowup::{blowup_indicator, shell_spectrum, tail_slope, BlowupReport, TAIL_SLOPE_LIMIT};
pub use bounds::{
    constants_stable, exponential_bound_fit, theta_transport_bound, BoundsEntry, BoundsReport,
    Quantity, MIN_FIT_SAMPLES, TRANSPORT_TOLERANCE,
};
pub use csv::{csv_header, csv_row, write_csv, COLUMNS};
pub use record::{record, sobolev_norm, DiagnosticsConfig, DiagnosticsRecord};
