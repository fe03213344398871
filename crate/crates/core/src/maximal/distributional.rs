use serde::Serialize;

use crate::cayley::LayeredBall;
use crate::error::{Error, Result};
use crate::geometry::{InequalityReport, InputDigest, Lhs};
use crate::harmonic::{convolve, sphere_sum_direct, FiniteFunction, Weight};
use crate::rng::Lcg;

/// `f * 1_{S_r}`, by convolution and by neighbor summation.
fn sphere_sums<T: Weight>(ball: &LayeredBall, f: &FiniteFunction<T>, r: usize) -> Result<FiniteFunction<T>> {
    if r == 0 {
        return Err(Error::precondition("distributional check needs r >= 1"));
    }
    if f.iter().any(|(_, v)| *v < T::zero()) {
        return Err(Error::precondition("distributional check needs f >= 0"));
    }
    ball.require_radius(r, "distributional check")?;
    let ones = FiniteFunction::new(ball.sphere(r).iter().map(|x| (x.clone(), T::ratio(1, 1))));
    let by_convolution = convolve(ball.model(), f, &ones);
    let direct = sphere_sum_direct(ball, f, r)?;
    if !by_convolution.agrees(&direct) {
        return Err(Error::Invariant(format!(
            "sphere sums at radius {r}: convolution and neighbor summation disagree"
        )));
    }
    Ok(by_convolution)
}

/// Values of `f` in decreasing order, so each level set is a prefix.
fn sorted_values<T: Weight>(f: &FiniteFunction<T>) -> Vec<T> {
    let mut values: Vec<T> = f.iter().map(|(_, v)| v.clone()).collect();
    values.sort_by(|a, b| b.partial_cmp(a).expect("totally ordered values"));
    values
}

/// `sum over 1 <= 2^n <= 2|S_r| of (2^n/|S_r|)^(1/2) 2^n |{f >= 2^(n-1) eta}|`
/// with `eta = level / |S_r|`; comparisons are exact in `T`.
fn dyadic_rhs<T: Weight>(values: &[T], sphere: u64, level: &T, r: usize, b: f64) -> f64 {
    let scale = T::ratio(2 * sphere, 1);
    let mut sum = 0.0;
    let mut n = 0u32;
    while (1u64 << n) <= 2 * sphere {
        // f >= 2^(n-1) level / |S_r|  iff  2 |S_r| f >= 2^n level
        let threshold = level.mul_ref(&T::ratio(1u64 << n, 1));
        let count = values.partition_point(|v| v.mul_ref(&scale) >= threshold);
        let p = (1u64 << n) as f64;
        sum += (p / sphere as f64).sqrt() * p * count as f64;
        n += 1;
    }
    (r as f64).powf(2.0 * b) * sum
}

fn report(lhs: usize, rhs: f64, r: usize, eta: f64, b: f64, size: usize) -> InequalityReport {
    InequalityReport::new(
        "distributional",
        [("r", r as f64), ("eta", eta), ("b", b)],
        Lhs::Count(lhs as u64),
        rhs,
        InputDigest {
            size_a: size,
            ..InputDigest::default()
        },
    )
}

/// `|{sigma_r * f >= eta}|` against the dyadic sum over level sets of `f`.
pub fn distributional_check<T: Weight>(
    ball: &LayeredBall,
    f: &FiniteFunction<T>,
    r: usize,
    eta: &T,
    b: f64,
) -> Result<InequalityReport> {
    if *eta <= T::zero() {
        return Err(Error::precondition("eta must be positive"));
    }
    let sums = sphere_sums(ball, f, r)?;
    let sphere = ball.sphere_size(r) as u64;
    let level = eta.mul_ref(&T::ratio(sphere, 1));
    let lhs = sums.iter().filter(|(_, v)| **v >= level).count();
    let rhs = dyadic_rhs(&sorted_values(f), sphere, &level, r, b);
    Ok(report(lhs, rhs, r, eta.to_f64(), b, f.len()))
}

/// Largest ratio over every attained value `eta` of `sigma_r * f`.
pub fn distributional_sweep<T: Weight>(
    ball: &LayeredBall,
    f: &FiniteFunction<T>,
    r: usize,
    b: f64,
) -> Result<Option<InequalityReport>> {
    let sums = sphere_sums(ball, f, r)?;
    let sphere = ball.sphere_size(r) as u64;
    let mut levels: Vec<&T> = sums.iter().map(|(_, v)| v).collect();
    levels.sort_by(|a, b| b.partial_cmp(a).expect("totally ordered values"));
    let values = sorted_values(f);
    let mut best: Option<InequalityReport> = None;
    for (k, level) in levels.iter().enumerate() {
        if levels.get(k + 1) == Some(level) {
            continue;
        }
        let rhs = dyadic_rhs(&values, sphere, level, r, b);
        let rep = report(k + 1, rhs, r, level.to_f64() / sphere as f64, b, f.len());
        if best.as_ref().is_none_or(|x| rep.ratio > x.ratio) {
            best = Some(rep);
        }
    }
    Ok(best)
}

/// Seeded functions on the closed ball of radius `radius`, each with a
/// random support and values `2^k`, `0 <= k <= max_exponent`.
pub fn dyadic_corpus(
    ball: &LayeredBall,
    radius: usize,
    count: usize,
    max_exponent: u32,
    seed: u64,
) -> Vec<FiniteFunction<f64>> {
    let n = ball.ball_size(radius);
    let mut rng = Lcg::new(seed);
    (0..count)
        .map(|_| {
            let size = 1 + rng.below(n);
            let mut picks = rng.sample_indices(n, size);
            picks.sort_unstable();
            FiniteFunction::new(picks.into_iter().map(|i| {
                let k = rng.below(max_exponent as usize + 1) as i32;
                (ball.element(i as u32).clone(), 2f64.powi(k))
            }))
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusSweep {
    /// `max_ratio[r - 1]` is the largest ratio at radius `r` over the corpus.
    pub max_ratio: Vec<f64>,
    pub reports: Vec<InequalityReport>,
}

impl CorpusSweep {
    /// Largest ratio over radii `1..=r`.
    pub fn running_max(&self, r: usize) -> f64 {
        self.max_ratio[..r].iter().copied().fold(0.0, f64::max)
    }
}

/// Sweeps every corpus function at radii `1..=r_max`. Integer-valued `f64`
/// inputs keep every sum and comparison exact.
pub fn corpus_sweep(ball: &LayeredBall, corpus: &[FiniteFunction<f64>], r_max: usize, b: f64) -> Result<CorpusSweep> {
    let mut max_ratio = vec![0.0; r_max];
    let mut reports = Vec::new();
    for (index, f) in corpus.iter().enumerate() {
        for r in 1..=r_max {
            if let Some(mut rep) = distributional_sweep(ball, f, r, b)? {
                rep.digest.family = Some(format!("corpus_{index}"));
                max_ratio[r - 1] = f64::max(max_ratio[r - 1], rep.ratio);
                reports.push(rep);
            }
        }
    }
    Ok(CorpusSweep { max_ratio, reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::enumerate;
    use crate::group::GroupModel;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::One;

    #[test]
    fn point_mass_at_radius_two() {
        let f2 = GroupModel::free(2);
        let ball = enumerate(&f2, 2).unwrap();
        let f = FiniteFunction::delta(f2.identity(), BigRational::one());
        let eta = BigRational::new(BigInt::from(1), BigInt::from(12));
        let rep = distributional_check(&ball, &f, 2, &eta, 0.0).unwrap();
        assert_eq!(rep.lhs, Lhs::Count(12));
        let expected: f64 = (0..=4).map(|n| 2f64.powf(1.5 * n as f64)).sum::<f64>() / 12f64.sqrt();
        assert!((rep.rhs - expected).abs() < 1e-12);
        assert!((rep.ratio - 0.4222).abs() < 1e-3);
    }

    #[test]
    fn zero_function() {
        let f2 = GroupModel::free(2);
        let ball = enumerate(&f2, 2).unwrap();
        let rep = distributional_check(&ball, &FiniteFunction::<f64>::default(), 1, &0.5, 0.0).unwrap();
        assert_eq!(rep.lhs, Lhs::Count(0));
        assert!(distributional_sweep(&ball, &FiniteFunction::<f64>::default(), 1, 0.0)
            .unwrap()
            .is_none());
    }

    #[test]
    fn corpus_is_deterministic_and_dyadic() {
        let ball = enumerate(&GroupModel::free(2), 4).unwrap();
        let a = dyadic_corpus(&ball, 4, 5, 6, 11);
        let b = dyadic_corpus(&ball, 4, 5, 6, 11);
        assert_eq!(a, b);
        for f in &a {
            assert!(f.iter().all(|(x, v)| x.length() <= 4 && v.log2().fract() == 0.0));
        }
    }
}
