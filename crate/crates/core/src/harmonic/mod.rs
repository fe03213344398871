//! Finitely supported functions, convolution, radial averages and truncated
//! operator norms.

mod function;
mod measure;
mod norm;

pub use function::{convolve, FiniteFunction, Scalar, Weight};
pub use measure::{sphere_average, sphere_average_direct, sphere_sum_direct, MeasureKind, RadialMeasure};
pub(crate) use norm::least_squares;
pub use norm::{
    ball_rd_exponent_probe, cohen_pytlik, operator_norm_on_ball, operator_norm_truncated, radial_tree_norm, BallProbe,
    NormEstimate, NormMethod, NormOptions, ProbeRow,
};
