use serde::Serialize;

use crate::cayley::LayeredBall;
use crate::error::{Error, Result};
use crate::harmonic::{convolve, FiniteFunction, MeasureKind, RadialMeasure};

#[derive(Debug, Clone, Serialize)]
pub struct LpRow {
    pub n: usize,
    /// `|beta_n * |f||_p / |f|_p`
    pub ratio_p: f64,
    /// `|beta_n * |f||_2 / |f|_2`
    pub ratio_2: f64,
    /// `sum over probed radii up to n of q^(k/8) ratio_2(k)`
    pub partial_sum: f64,
}

fn lp_norm(f: &FiniteFunction<f64>, p: f64) -> f64 {
    if p.is_infinite() {
        f.linf()
    } else {
        f.iter().map(|(_, v)| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// Ball averages of `|f|` in `l^p`, `1 < p <= inf`, with the weighted
/// `l^2` partial sums at growth rate `q`.
pub fn strong_lp_probe(
    ball: &LayeredBall,
    f: &FiniteFunction<f64>,
    p: f64,
    radii: &[usize],
    q: f64,
) -> Result<Vec<LpRow>> {
    if p.is_nan() || p <= 1.0 {
        return Err(Error::precondition("strong maximal probe needs p > 1"));
    }
    if f.is_empty() {
        return Err(Error::precondition("strong maximal probe needs a nonzero function"));
    }
    let abs = FiniteFunction::new(f.iter().map(|(x, v)| (x.clone(), v.abs())));
    let mut radii = radii.to_vec();
    radii.sort_unstable();
    radii.dedup();
    let mut partial = 0.0;
    let mut rows = Vec::new();
    for n in radii {
        let beta = RadialMeasure::<f64>::on_ball(ball, MeasureKind::Ball { radius: n })?;
        let avg = convolve(ball.model(), &abs, beta.function());
        let ratio_2 = avg.l2() / abs.l2();
        partial += q.powf(n as f64 / 8.0) * ratio_2;
        rows.push(LpRow {
            n,
            ratio_p: lp_norm(&avg, p) / lp_norm(&abs, p),
            ratio_2,
            partial_sum: partial,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::enumerate;
    use crate::group::GroupModel;

    #[test]
    fn point_mass_norms() {
        let f2 = GroupModel::free(2);
        let ball = enumerate(&f2, 4).unwrap();
        let f = FiniteFunction::delta(f2.identity(), 1.0);
        let rows = strong_lp_probe(&ball, &f, f64::INFINITY, &[1, 2, 3, 4], 3.0).unwrap();
        for row in &rows {
            let size = ball.ball_size(row.n) as f64;
            assert!((row.ratio_p - 1.0 / size).abs() < 1e-15);
            assert!((row.ratio_2 - size.powf(-0.5)).abs() < 1e-14);
        }
        assert!(strong_lp_probe(&ball, &f, 1.0, &[1], 3.0).is_err());
    }
}
