//! Spheres and balls of Cayley graphs, and growth-sequence analysis.

mod ball;
mod growth;
mod poly;

pub use ball::{enumerate, enumerate_with_budget, translate_set, LayeredBall, Translator, DEFAULT_BUDGET, OUTSIDE};
pub use growth::{fit_growth, product_sphere_identity, product_sphere_size, GrowthFit, Recurrence};
