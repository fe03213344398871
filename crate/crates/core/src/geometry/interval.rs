use std::collections::BTreeSet;

use serde::Serialize;

use crate::cayley::{LayeredBall, OUTSIDE};
use crate::error::{Error, Result};
use crate::group::Element;
use crate::harmonic::least_squares;
use crate::rng::Lcg;

/// Layers of `C(e, g)` as ball indices, `layers[n]` on `S_n`. Every point of
/// the interval at length `n - 1` is adjacent to one at length `n`, so the
/// interval is swept downward from `g`.
fn interval_layers(ball: &LayeredBall, g: u32) -> Vec<Vec<u32>> {
    let top = ball.layer_of(g);
    let mut layers = vec![Vec::new(); top + 1];
    layers[top].push(g);
    let mut seen = vec![false; ball.ball_size(top)];
    for n in (1..=top).rev() {
        let mut next = Vec::new();
        for &w in &layers[n] {
            for s in 0..ball.generators().len() {
                let z = ball.neighbor(w, s);
                if z != OUTSIDE && ball.layer_of(z) == n - 1 && !seen[z as usize] {
                    seen[z as usize] = true;
                    next.push(z);
                }
            }
        }
        next.sort_unstable();
        layers[n - 1] = next;
    }
    layers
}

/// `x^-1 y` as a ball index.
fn relative_index(ball: &LayeredBall, x: &Element, y: &Element) -> Result<u32> {
    let model = ball.model();
    let g = model.multiply(&model.invert(x), y);
    let d = g.length();
    ball.index_of(&g).ok_or_else(|| {
        Error::resource(
            d,
            format!(
                "interval needs a ball of radius {d}, enumerated radius is {}",
                ball.radius()
            ),
        )
    })
}

/// `C(x, y) = {z : d(x, z) + d(z, y) = d(x, y)}`, obtained by translating
/// `C(e, x^-1 y)` by `x`. Needs `ball.radius() >= d(x, y)`.
pub fn interval(ball: &LayeredBall, x: &Element, y: &Element) -> Result<BTreeSet<Element>> {
    let g = relative_index(ball, x, y)?;
    let model = ball.model();
    Ok(interval_layers(ball, g)
        .into_iter()
        .flatten()
        .map(|z| model.multiply(x, ball.element(z)))
        .collect())
}

/// `C(x, y) ∩ C(x, z) ∩ C(y, z)`. A median space has exactly one candidate
/// for every triple; any other size is reported, not rejected.
pub fn median_candidates(ball: &LayeredBall, x: &Element, y: &Element, z: &Element) -> Result<BTreeSet<Element>> {
    let xy = interval(ball, x, y)?;
    let xz = interval(ball, x, z)?;
    let yz = interval(ball, y, z)?;
    Ok(xy.into_iter().filter(|p| xz.contains(p) && yz.contains(p)).collect())
}

/// `|C(x, y) ∩ S(x, r)|` for `r <= d(x, y)`.
pub fn interval_sphere_count(ball: &LayeredBall, x: &Element, y: &Element, r: usize) -> Result<usize> {
    let g = relative_index(ball, x, y)?;
    let layers = interval_layers(ball, g);
    layers
        .get(r)
        .map(Vec::len)
        .ok_or_else(|| Error::precondition(format!("radius {r} exceeds d(x, y) = {}", layers.len() - 1)))
}

#[derive(Debug, Clone, Serialize)]
pub struct IntervalScan {
    /// `max_counts[r]` is the largest `|C(x, y) ∩ S(x, r)|` seen with
    /// `d(x, y) >= r`.
    pub max_counts: Vec<usize>,
    /// Log-log slope of `max_counts` over `1 <= r <= radius / 2`. Beyond that
    /// no pair in the ball has `d(x, y) >= 2r`, so counts shrink with the
    /// ball rather than with the group.
    pub slope: f64,
    pub pairs: usize,
    pub exhaustive: bool,
}

/// Interval-sphere counts over pairs `(e, y)`; translation invariance makes
/// `x = e` general. Every `y` in the ball is used when there are at most
/// `max_pairs` of them, otherwise a seeded sample.
pub fn interval_sphere_scan(ball: &LayeredBall, max_pairs: usize, seed: u64) -> IntervalScan {
    let total = ball.len();
    let exhaustive = total <= max_pairs;
    let targets: Vec<u32> = if exhaustive {
        (0..total as u32).collect()
    } else {
        let mut picks = Lcg::new(seed).sample_indices(total, max_pairs);
        picks.sort_unstable();
        picks.into_iter().map(|i| i as u32).collect()
    };
    let mut max_counts = vec![0usize; ball.radius() + 1];
    for &g in &targets {
        for (r, layer) in interval_layers(ball, g).iter().enumerate() {
            max_counts[r] = max_counts[r].max(layer.len());
        }
    }
    let pts: Vec<(f64, f64)> = max_counts
        .iter()
        .enumerate()
        .take(ball.radius() / 2 + 1)
        .skip(1)
        .filter(|(_, &c)| c > 0)
        .map(|(r, &c)| ((r as f64).ln(), (c as f64).ln()))
        .collect();
    let slope = if pts.len() >= 2 { least_squares(&pts).0 } else { 0.0 };
    IntervalScan {
        max_counts,
        slope,
        pairs: targets.len(),
        exhaustive,
    }
}
