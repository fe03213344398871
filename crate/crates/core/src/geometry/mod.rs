//! Exact counts behind shell correlations, the spherical coarse median
//! inequality, intervals and medians.

mod correlation;
mod interval;
mod median;
mod report;

pub use correlation::{correlation_count, correlation_rd_ratio, random_subset};
pub use interval::{interval, interval_sphere_count, interval_sphere_scan, median_candidates, IntervalScan};
pub use median::{coarse_median_count, coarse_median_scan, minsum_bound_check, MedianScan, SubsetFamily};
pub use report::{InequalityReport, InputDigest, Lhs};
