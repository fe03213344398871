//! Exact and numerical experiments on Cayley graphs of finitely generated
//! groups: sphere growth, radial convolution operators, coarse geometry of
//! intervals and medians, and spherical maximal functions.

pub mod cayley;
pub mod error;
pub mod geometry;
pub mod group;
pub mod harmonic;
pub mod maximal;
pub mod output;
pub mod rng;
pub mod run;

pub use error::{Error, Result};
pub use group::{parse_spec, Element, GroupModel};
