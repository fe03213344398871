use std::collections::BTreeSet;

use super::report::{InequalityReport, InputDigest, Lhs};
use crate::cayley::LayeredBall;
use crate::error::{Error, Result};
use crate::group::Element;
use crate::harmonic::{convolve, FiniteFunction};
use crate::rng::Lcg;

fn shell_layers(r: usize, width: usize) -> std::ops::Range<usize> {
    r..r + width
}

/// `|{(u, v) in A x B : r <= d(u, v) < r + width}|`, counted by a double
/// loop and again as `<1_A, 1_B * 1_SS>` where `SS` is the shell around the
/// identity. A disagreement is an invariant breach.
pub fn correlation_count(ball: &LayeredBall, a: &[Element], b: &[Element], r: usize, width: usize) -> Result<u64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::precondition("correlation sets must be nonempty"));
    }
    if width == 0 {
        return Err(Error::precondition("shell width must be at least 1"));
    }
    ball.require_radius(r + width - 1, "correlation shell")?;
    let model = ball.model();
    let a: BTreeSet<&Element> = a.iter().collect();
    let b: BTreeSet<&Element> = b.iter().collect();
    let layers = shell_layers(r, width);

    let mut direct = 0u64;
    for u in &a {
        for v in &b {
            if layers.contains(&model.distance(u, v)) {
                direct += 1;
            }
        }
    }

    let ind_b = FiniteFunction::new(b.iter().map(|&x| (x.clone(), 1i64)));
    let shell = FiniteFunction::new(
        layers
            .clone()
            .flat_map(|n| ball.sphere(n).iter())
            .map(|x| (x.clone(), 1i64)),
    );
    let conv = convolve(model, &ind_b, &shell);
    let pairing: i64 = a.iter().map(|&w| conv.get(w)).sum();

    if pairing < 0 || pairing as u64 != direct {
        return Err(Error::Invariant(format!(
            "correlation count at r={r}: double loop gives {direct}, convolution gives {pairing}"
        )));
    }
    Ok(direct)
}

/// Correlation count against `r^b (|A| |B| |SS_r|)^(1/2)`.
pub fn correlation_rd_ratio(
    ball: &LayeredBall,
    a: &[Element],
    b: &[Element],
    r: usize,
    exponent: f64,
    width: usize,
) -> Result<InequalityReport> {
    let lhs = correlation_count(ball, a, b, r, width)?;
    let size_a = a.iter().collect::<BTreeSet<_>>().len();
    let size_b = b.iter().collect::<BTreeSet<_>>().len();
    let shell: usize = shell_layers(r, width).map(|n| ball.sphere_size(n)).sum();
    let rhs = (r as f64).powf(exponent) * ((size_a * size_b * shell) as f64).sqrt();
    Ok(InequalityReport::new(
        "shell_correlation",
        [("r", r as f64), ("L", width as f64), ("b", exponent)],
        Lhs::Count(lhs),
        rhs,
        InputDigest {
            size_a,
            size_b,
            ..InputDigest::default()
        },
    ))
}

/// A seeded subset of the ball with between 1 and `max_size` elements, in
/// canonical order.
pub fn random_subset(ball: &LayeredBall, rng: &mut Lcg, max_size: usize) -> Vec<Element> {
    let n = ball.len();
    let size = 1 + rng.below(max_size.clamp(1, n));
    let mut picks = rng.sample_indices(n, size);
    picks.sort_unstable();
    picks.into_iter().map(|i| ball.element(i as u32).clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::enumerate;
    use crate::group::GroupModel;

    #[test]
    fn generator_pairs_at_distance_two() {
        let ball = enumerate(&GroupModel::free(2), 3).unwrap();
        let s1 = ball.sphere(1).to_vec();
        assert_eq!(correlation_count(&ball, &s1, &s1, 2, 1).unwrap(), 12);
        let report = correlation_rd_ratio(&ball, &s1, &s1, 2, 0.0, 1).unwrap();
        assert!((report.rhs - 4.0 * 12f64.sqrt()).abs() < 1e-12);
        assert!((report.ratio - 12.0 / (4.0 * 12f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn single_point_and_full_sphere() {
        let model = GroupModel::free(2);
        let ball = enumerate(&model, 3).unwrap();
        let e = vec![model.identity()];
        assert_eq!(correlation_count(&ball, &e, &e, 1, 1).unwrap(), 0);
        let report = correlation_rd_ratio(&ball, &e, &e, 2, 0.0, 1).unwrap();
        assert_eq!(report.ratio, 0.0);
        assert_eq!(correlation_count(&ball, &e, ball.sphere(3), 3, 1).unwrap(), 36);
    }

    #[test]
    fn rejects_empty_sets() {
        let ball = enumerate(&GroupModel::free(2), 2).unwrap();
        assert!(correlation_count(&ball, &[], ball.sphere(1), 1, 1).is_err());
    }
}
