use std::collections::BTreeMap;

use serde::Serialize;

use super::report::{InequalityReport, InputDigest, Lhs};
use crate::cayley::{LayeredBall, Translator, OUTSIDE};
use crate::error::{Error, Result};
use crate::group::{Element, GrowthClass};
use crate::rng::Lcg;

/// Ball indices of `set`, checking that every element lies on `S_layer`.
fn layer_indices(ball: &LayeredBall, set: &[Element], layer: usize, name: &str) -> Result<Vec<u32>> {
    let mut out = Vec::with_capacity(set.len());
    for x in set {
        if x.length() != layer {
            return Err(Error::precondition(format!(
                "{name} is tagged with layer {layer} but contains an element of length {}",
                x.length()
            )));
        }
        let i = ball
            .index_of(x)
            .ok_or_else(|| Error::resource(layer, format!("{name} leaves the enumerated ball")))?;
        out.push(i);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `hist[t] = |{(x, y) in E x F : d(x, y) = t}|` for `t <= depth`.
fn distance_histogram(ball: &LayeredBall, e: &[u32], in_f: &[bool], depth: usize) -> Vec<u64> {
    let mut hist = vec![0u64; depth + 1];
    let mut walker = Translator::new(ball);
    for &x in e {
        let images = walker.translate_index(x, depth);
        for (v, &y) in images.iter().enumerate() {
            if y != OUTSIDE && in_f[y as usize] {
                hist[ball.layer_of(v as u32)] += 1;
            }
        }
    }
    hist
}

/// `m = (j + r - i) / 2`, rounded down on odd parity.
fn split_point(j: usize, i: usize, r: usize) -> usize {
    (j + r - i) / 2
}

fn median_report(
    ball: &LayeredBall,
    (j, size_e): (usize, usize),
    (i, size_f): (usize, usize),
    r: usize,
    lhs: u64,
    d2: f64,
    digest: InputDigest,
) -> InequalityReport {
    let m = split_point(j, i, r);
    let base = (ball.sphere_size(r - m) * size_e).min(ball.sphere_size(m) * size_f) as f64;
    // r^d2 read as max(r, 1)^d2 so that r = 0 cells stay finite
    let rhs = (r.max(1) as f64).powf(d2) * base;
    InequalityReport::new(
        "coarse_median",
        [
            ("j", j as f64),
            ("i", i as f64),
            ("r", r as f64),
            ("m", m as f64),
            ("d2", d2),
        ],
        Lhs::Count(lhs),
        rhs,
        digest,
    )
}

fn check_admissible(ball: &LayeredBall, j: usize, i: usize, r: usize) -> Result<()> {
    if r < j.abs_diff(i) || r > j + i {
        return Err(Error::precondition(format!(
            "radius {r} outside [|j - i|, j + i] for layers j={j}, i={i}"
        )));
    }
    ball.require_radius(j.max(i).max(r), "coarse median count")
}

/// `|{(x, y) in E_j x F_i : d(x, y) = r}|` against
/// `min(|S_{r-m}| |E_j|, |S_m| |F_i|)`.
pub fn coarse_median_count(
    ball: &LayeredBall,
    e: &[Element],
    j: usize,
    f: &[Element],
    i: usize,
    r: usize,
) -> Result<InequalityReport> {
    check_admissible(ball, j, i, r)?;
    let e_idx = layer_indices(ball, e, j, "E")?;
    let f_idx = layer_indices(ball, f, i, "F")?;
    let mut in_f = vec![false; ball.len()];
    f_idx.iter().for_each(|&y| in_f[y as usize] = true);
    let lhs = distance_histogram(ball, &e_idx, &in_f, r)[r];
    Ok(median_report(
        ball,
        (j, e_idx.len()),
        (i, f_idx.len()),
        r,
        lhs,
        0.0,
        InputDigest {
            size_a: e_idx.len(),
            size_b: f_idx.len(),
            ..InputDigest::default()
        },
    ))
}

/// Subset families drawn from every sphere by [`coarse_median_scan`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetFamily {
    Full,
    PrefixHalf,
    RandomSingle,
    RandomQuarter,
    RandomHalf,
}

impl SubsetFamily {
    pub const ALL: [SubsetFamily; 5] = [
        SubsetFamily::Full,
        SubsetFamily::PrefixHalf,
        SubsetFamily::RandomSingle,
        SubsetFamily::RandomQuarter,
        SubsetFamily::RandomHalf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SubsetFamily::Full => "full",
            SubsetFamily::PrefixHalf => "prefix_half",
            SubsetFamily::RandomSingle => "random_1",
            SubsetFamily::RandomQuarter => "random_quarter",
            SubsetFamily::RandomHalf => "random_half",
        }
    }

    /// Positions within a sphere of size `n`, in canonical order.
    fn positions(self, n: usize, rng: &mut Lcg) -> Vec<usize> {
        let mut out = match self {
            SubsetFamily::Full => (0..n).collect(),
            SubsetFamily::PrefixHalf => (0..n.div_ceil(2)).collect(),
            SubsetFamily::RandomSingle => rng.sample_indices(n, 1.min(n)),
            SubsetFamily::RandomQuarter => rng.sample_indices(n, n.div_ceil(4)),
            SubsetFamily::RandomHalf => rng.sample_indices(n, n.div_ceil(2)),
        };
        out.sort_unstable();
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MedianScan {
    pub reports: Vec<InequalityReport>,
    /// Largest ratio over all cells, the measured `C_0` for the given `d2`.
    pub c0: f64,
    pub argmax: Option<usize>,
}

/// Every admissible cell `(j, i, r)` with `j, i <= ball.radius()` and
/// `r <= r_max`, for each subset family. Random families are drawn from one
/// generator seeded with `seed`, family by family and layer by layer, so
/// `E_j` and `F_j` coincide when `j = i`.
pub fn coarse_median_scan(ball: &LayeredBall, r_max: usize, seed: u64, d2: f64) -> Result<MedianScan> {
    if ball.model().growth_class() == GrowthClass::Polynomial {
        return Err(Error::precondition(format!(
            "coarse median scan needs exponential growth, {} grows polynomially",
            ball.model()
        )));
    }
    ball.require_radius(r_max, "coarse median scan")?;
    let radius = ball.radius();
    let mut rng = Lcg::new(seed);
    let mut reports = Vec::new();
    for family in SubsetFamily::ALL {
        let subsets: Vec<Vec<u32>> = (0..=radius)
            .map(|n| {
                let start = ball.sphere_range(n).start;
                family
                    .positions(ball.sphere_size(n), &mut rng)
                    .into_iter()
                    .map(|p| (start + p) as u32)
                    .collect()
            })
            .collect();
        for j in 0..=radius {
            for i in 0..=radius {
                let mut in_f = vec![false; ball.len()];
                subsets[i].iter().for_each(|&y| in_f[y as usize] = true);
                let depth = r_max.min(j + i);
                if depth < j.abs_diff(i) {
                    continue;
                }
                let hist = distance_histogram(ball, &subsets[j], &in_f, depth);
                for r in j.abs_diff(i)..=depth {
                    reports.push(median_report(
                        ball,
                        (j, subsets[j].len()),
                        (i, subsets[i].len()),
                        r,
                        hist[r],
                        d2,
                        InputDigest {
                            seed: Some(seed),
                            family: Some(family.name().to_string()),
                            size_a: subsets[j].len(),
                            size_b: subsets[i].len(),
                        },
                    ));
                }
            }
        }
    }
    let argmax = reports
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.ratio.total_cmp(&b.1.ratio))
        .map(|(k, _)| k);
    let c0 = argmax.map_or(0.0, |k| reports[k].ratio);
    Ok(MedianScan { reports, c0, argmax })
}

/// `sum over j, m of min(q^(r-m) |E_j|, q^m |F_(j+r-2m)|)` against
/// `2 (|E| |F|)^(1/2) q^(r/2)`.
pub fn minsum_bound_check(
    q: f64,
    levels_e: &BTreeMap<usize, u64>,
    levels_f: &BTreeMap<usize, u64>,
    r: usize,
) -> Result<InequalityReport> {
    if q.is_nan() || q <= 1.0 {
        return Err(Error::precondition("min-sum bound needs q > 1"));
    }
    let mut lhs = 0.0;
    for (&j, &e) in levels_e {
        for m in 0..=r {
            let Some(i) = (j + r).checked_sub(2 * m) else {
                continue;
            };
            if let Some(&f) = levels_f.get(&i) {
                lhs += (q.powi((r - m) as i32) * e as f64).min(q.powi(m as i32) * f as f64);
            }
        }
    }
    let size_e: u64 = levels_e.values().sum();
    let size_f: u64 = levels_f.values().sum();
    let rhs = 2.0 * ((size_e * size_f) as f64).sqrt() * q.powf(r as f64 / 2.0);
    Ok(InequalityReport::new(
        "minsum",
        [("q", q), ("r", r as f64)],
        Lhs::Real(lhs),
        rhs,
        InputDigest {
            size_a: size_e as usize,
            size_b: size_f as usize,
            ..InputDigest::default()
        },
    ))
}
