use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::function::FiniteFunction;
use super::measure::{MeasureKind, RadialMeasure};
use crate::cayley::{enumerate, enumerate_with_budget, LayeredBall, Translator, DEFAULT_BUDGET, OUTSIDE};
use crate::error::{Error, Result};
use crate::group::GroupModel;

/// How the compressed operator is represented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormMethod {
    /// Radial reduction for free groups, the ball matrix otherwise.
    Auto,
    /// Sparse matrix on the enumerated ball.
    Ball,
    /// Free groups only: the compression restricted to radial functions,
    /// which carries its top eigenvector.
    RadialTree,
}

#[derive(Debug, Clone)]
pub struct NormOptions {
    pub tol: f64,
    pub max_iters: usize,
    pub method: NormMethod,
    /// Element budget for the ball enumeration.
    pub budget: usize,
    /// Cap on stored matrix entries.
    pub entry_budget: usize,
}

impl Default for NormOptions {
    fn default() -> Self {
        NormOptions {
            tol: 1e-10,
            max_iters: 10_000,
            method: NormMethod::Auto,
            budget: DEFAULT_BUDGET,
            entry_budget: 300_000_000,
        }
    }
}

/// Norm of the compression to the closed ball of radius `truncation`. A lower
/// bound for the norm on the whole group.
#[derive(Debug, Clone, Serialize)]
pub struct NormEstimate {
    pub norm: f64,
    pub converged: bool,
    pub iterations: usize,
    #[serde(serialize_with = "crate::output::real")]
    pub last_relative_change: f64,
    pub truncation: usize,
    pub method: NormMethod,
}

const START_EPSILON: f64 = 1e-3;

/// `(1 + r (k-1)/k) (2k-1)^(-r/2)`, the norm of the sphere average of radius
/// `r` on the free group of rank `k`.
pub fn cohen_pytlik(k: usize, r: usize) -> f64 {
    let k = k as f64;
    (1.0 + r as f64 * (k - 1.0) / k) * (2.0 * k - 1.0).powf(-(r as f64) / 2.0)
}

/// Power iteration on `T^2` for the compression of right convolution by a
/// radial measure.
pub fn operator_norm_truncated(
    model: &GroupModel,
    measure: &RadialMeasure<f64>,
    truncation: usize,
    opts: &NormOptions,
) -> Result<NormEstimate> {
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::precondition("tolerance must be positive"));
    }
    let free_rank = match model {
        GroupModel::Free { rank } => Some(*rank),
        _ => None,
    };
    match (opts.method, free_rank) {
        (NormMethod::Auto | NormMethod::RadialTree, Some(rank)) => {
            Ok(radial_tree_norm(rank, measure.layer_weights(), truncation, opts))
        }
        (NormMethod::RadialTree, None) => Err(Error::precondition("radial tree reduction applies to free groups only")),
        _ => {
            let ball = enumerate_with_budget(model, truncation.max(measure.kind().reach()), opts.budget)?;
            operator_norm_on_ball(&ball, measure.function(), truncation, opts)
        }
    }
}

/// Compression of `h -> h * mu` to `l2` of the closed ball of radius
/// `truncation` inside `ball`, for any symmetric finitely supported `mu`.
pub fn operator_norm_on_ball(
    ball: &LayeredBall,
    mu: &FiniteFunction<f64>,
    truncation: usize,
    opts: &NormOptions,
) -> Result<NormEstimate> {
    let model = ball.model();
    if !mu.reflect(model).agrees(mu) {
        return Err(Error::precondition("measure is not invariant under inversion"));
    }
    ball.require_radius(truncation, "truncated operator norm")?;
    let reach = mu.support().map(|x| x.length()).max().unwrap_or(0);
    ball.require_radius(reach, "measure support")?;

    let mut slot_of: FxHashMap<u64, u16> = FxHashMap::default();
    let mut weights: Vec<f64> = Vec::new();
    let mut support: Vec<(usize, u16)> = Vec::new();
    for (x, &w) in mu.iter() {
        let slot = match slot_of.get(&w.to_bits()) {
            Some(&s) => s,
            None => {
                if weights.len() > u16::MAX as usize {
                    return Err(Error::precondition("measure takes too many distinct values"));
                }
                let s = weights.len() as u16;
                slot_of.insert(w.to_bits(), s);
                weights.push(w);
                s
            }
        };
        let v = ball.index_of(x).expect("support lies in the ball") as usize;
        support.push((v, slot));
    }

    let n = ball.ball_size(truncation);
    if n.saturating_mul(support.len()) > opts.entry_budget {
        return Err(Error::resource(
            truncation,
            format!(
                "compressed operator would store up to {} entries, above the budget of {}",
                n.saturating_mul(support.len()),
                opts.entry_budget
            ),
        ));
    }

    // row w holds mu(v) at column w v
    let mut row_start = Vec::with_capacity(n + 1);
    let mut cols: Vec<u32> = Vec::new();
    let mut slots: Vec<u16> = Vec::new();
    row_start.push(0usize);
    let mut walker = Translator::new(ball);
    for w in 0..n as u32 {
        let images = walker.translate_index(w, reach);
        for &(v, slot) in &support {
            let c = images[v];
            if c != OUTSIDE && (c as usize) < n {
                cols.push(c);
                slots.push(slot);
            }
        }
        row_start.push(cols.len());
    }

    let apply = |x: &[f64], y: &mut [f64]| {
        for (i, out) in y.iter_mut().enumerate() {
            let mut acc = 0.0;
            for e in row_start[i]..row_start[i + 1] {
                acc += weights[slots[e] as usize] * x[cols[e] as usize];
            }
            *out = acc;
        }
    };
    let mut start = vec![0.0; n];
    for v in start.iter_mut().take(ball.ball_size(2.min(truncation))) {
        *v = START_EPSILON;
    }
    start[0] += 1.0;
    let run = power_iteration(start, apply, opts);
    Ok(run.into_estimate(truncation, NormMethod::Ball))
}

/// Number of `v` in `S_r` with `|w v| = m` for a fixed `w` in `S_n` of the
/// free group of rank `k`; indexed by `m`.
fn tree_transitions(k: usize, n: usize, r: usize) -> Vec<(usize, f64)> {
    let q = (2 * k - 1) as f64;
    if n == 0 {
        let size = if r == 0 {
            1.0
        } else {
            2.0 * k as f64 * q.powi(r as i32 - 1)
        };
        return vec![(r, size)];
    }
    if r == 0 {
        return vec![(n, 1.0)];
    }
    (0..=n.min(r))
        .map(|t| {
            let count = if t == 0 {
                q.powi(r as i32)
            } else if t == r {
                1.0
            } else if t < n {
                (q - 1.0) * q.powi((r - t - 1) as i32)
            } else {
                q.powi((r - t) as i32)
            };
            (n + r - 2 * t, count)
        })
        .collect()
}

/// Radial reduction on the free group of rank `rank`: the operator acts on
/// the orthonormal basis `1_{S_n} / |S_n|^(1/2)`, `n <= truncation`.
pub fn radial_tree_norm(
    rank: usize,
    layer_weights: &[(usize, f64)],
    truncation: usize,
    opts: &NormOptions,
) -> NormEstimate {
    assert!(rank >= 1, "free group of rank zero");
    let q = (2 * rank - 1) as f64;
    let sphere = |n: usize| {
        if n == 0 {
            1.0
        } else {
            2.0 * rank as f64 * q.powi(n as i32 - 1)
        }
    };
    let dim = truncation + 1;
    let mut matrix = vec![vec![0.0; dim]; dim];
    for (n, row) in matrix.iter_mut().enumerate() {
        for &(r, w) in layer_weights {
            for (m, count) in tree_transitions(rank, n, r) {
                if m < dim {
                    row[m] += w * count * (sphere(n) / sphere(m)).sqrt();
                }
            }
        }
    }
    let apply = |x: &[f64], y: &mut [f64]| {
        for (out, row) in y.iter_mut().zip(&matrix) {
            *out = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
    };
    let mut start: Vec<f64> = (0..dim)
        .map(|n| if n <= 2 { START_EPSILON * sphere(n).sqrt() } else { 0.0 })
        .collect();
    start[0] += 1.0;
    power_iteration(start, apply, opts).into_estimate(truncation, NormMethod::RadialTree)
}

struct PowerRun {
    lambda: f64,
    converged: bool,
    iterations: usize,
    change: f64,
}

impl PowerRun {
    fn into_estimate(self, truncation: usize, method: NormMethod) -> NormEstimate {
        NormEstimate {
            norm: self.lambda.max(0.0).sqrt(),
            converged: self.converged,
            iterations: self.iterations,
            last_relative_change: self.change,
            truncation,
            method,
        }
    }
}

/// Rayleigh quotient `<T^2 x, x> = |T x|^2` on unit vectors, stopping once
/// its relative change drops below `tol`.
fn power_iteration(mut x: Vec<f64>, apply: impl Fn(&[f64], &mut [f64]), opts: &NormOptions) -> PowerRun {
    let norm = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>().sqrt();
    let s = norm(&x);
    x.iter_mut().for_each(|a| *a /= s);
    let mut y = vec![0.0; x.len()];
    let mut lambda = f64::NAN;
    let mut change = f64::INFINITY;
    for it in 1..=opts.max_iters {
        apply(&x, &mut y);
        let next = y.iter().map(|a| a * a).sum::<f64>();
        apply(&y, &mut x);
        if next == 0.0 {
            return PowerRun {
                lambda: 0.0,
                converged: true,
                iterations: it,
                change: 0.0,
            };
        }
        if it > 1 {
            change = (next - lambda).abs() / next;
        }
        lambda = next;
        let s = norm(&x);
        x.iter_mut().for_each(|a| *a /= s);
        if change < opts.tol {
            return PowerRun {
                lambda,
                converged: true,
                iterations: it,
                change,
            };
        }
    }
    PowerRun {
        lambda,
        converged: false,
        iterations: opts.max_iters,
        change,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeRow {
    pub r: usize,
    pub ball_size: usize,
    pub norm: f64,
    /// `norm * |B_r|^(1/2)`
    pub scaled: f64,
    pub converged: bool,
}

/// Measured ball-average norms and the least-squares fit
/// `norm ~ constant * r^exponent * |B_r|^(-1/2)`.
#[derive(Debug, Clone, Serialize)]
pub struct BallProbe {
    pub truncation: usize,
    pub rows: Vec<ProbeRow>,
    pub exponent: f64,
    pub constant: f64,
}

pub fn ball_rd_exponent_probe(
    model: &GroupModel,
    radii: &[usize],
    truncation: usize,
    opts: &NormOptions,
) -> Result<BallProbe> {
    let mut radii = radii.to_vec();
    radii.sort_unstable();
    radii.dedup();
    if radii.len() < 3 {
        return Err(Error::precondition(
            "ball exponent fit needs at least three distinct radii",
        ));
    }
    if radii[0] == 0 || *radii.last().unwrap() > truncation {
        return Err(Error::precondition("probe radii must lie in [1, truncation]"));
    }
    let small = enumerate(model, *radii.last().unwrap())?;
    let mut rows = Vec::new();
    for &r in &radii {
        let measure = RadialMeasure::on_ball(&small, MeasureKind::Ball { radius: r })?;
        let est = operator_norm_truncated(model, &measure, truncation, opts)?;
        let ball_size = small.ball_size(r);
        rows.push(ProbeRow {
            r,
            ball_size,
            norm: est.norm,
            scaled: est.norm * (ball_size as f64).sqrt(),
            converged: est.converged,
        });
    }
    let pts: Vec<(f64, f64)> = rows.iter().map(|row| ((row.r as f64).ln(), row.scaled.ln())).collect();
    let (slope, intercept) = least_squares(&pts);
    Ok(BallProbe {
        truncation,
        rows,
        exponent: slope,
        constant: intercept.exp(),
    })
}

/// Slope and intercept of the least-squares line.
pub(crate) fn least_squares(pts: &[(f64, f64)]) -> (f64, f64) {
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transitions_count_the_sphere() {
        for k in 1..=3 {
            for n in 0..6 {
                for r in 0..5 {
                    let total: f64 = tree_transitions(k, n, r).iter().map(|t| t.1).sum();
                    let size = if r == 0 {
                        1.0
                    } else {
                        (2 * k) as f64 * ((2 * k - 1) as f64).powi(r as i32 - 1)
                    };
                    assert_eq!(total, size, "k={k} n={n} r={r}");
                }
            }
        }
    }

    #[test]
    fn identity_measure_has_norm_one() {
        for model in [GroupModel::free(2), GroupModel::z_power(2)] {
            let sigma0 = RadialMeasure::sphere(&model, 0).unwrap();
            let est = operator_norm_truncated(&model, &sigma0, 3, &NormOptions::default()).unwrap();
            assert!((est.norm - 1.0).abs() < 1e-12);
            assert!(est.converged);
        }
    }

    #[test]
    fn radial_reduction_matches_ball_matrix() {
        let f2 = GroupModel::free(2);
        let ball = enumerate(&f2, 6).unwrap();
        let ball_opts = NormOptions {
            method: NormMethod::Ball,
            ..NormOptions::default()
        };
        for kind in [
            MeasureKind::Sphere { radius: 1 },
            MeasureKind::Sphere { radius: 2 },
            MeasureKind::Ball { radius: 2 },
            MeasureKind::Shell { radius: 1, width: 2 },
        ] {
            let m = RadialMeasure::<f64>::on_ball(&ball, kind).unwrap();
            let a = operator_norm_on_ball(&ball, m.function(), 6, &ball_opts).unwrap();
            let b = radial_tree_norm(2, m.layer_weights(), 6, &NormOptions::default());
            assert!((a.norm - b.norm).abs() < 1e-8, "{kind:?}: {} vs {}", a.norm, b.norm);
        }
    }

    #[test]
    fn rejects_asymmetric_measure() {
        let f2 = GroupModel::free(2);
        let ball = enumerate(&f2, 2).unwrap();
        let mu = FiniteFunction::delta(f2.parse_element("a").unwrap(), 1.0);
        assert!(matches!(
            operator_norm_on_ball(&ball, &mu, 2, &NormOptions::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn probe_refuses_degenerate_fit() {
        let f2 = GroupModel::free(2);
        assert!(ball_rd_exponent_probe(&f2, &[1], 4, &NormOptions::default()).is_err());
    }

    #[test]
    fn cohen_pytlik_values() {
        assert!((cohen_pytlik(2, 1) - 1.5 / 3f64.sqrt()).abs() < 1e-15);
        assert!((cohen_pytlik(2, 2) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(cohen_pytlik(3, 0), 1.0);
    }
}
