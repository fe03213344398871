//! Truncated norms of sphere averages on the free group against the closed
//! form, and the ball-average decay exponent.
//!
//! cargo run --release --example operator_norm

use shellmax::harmonic::{
    ball_rd_exponent_probe, cohen_pytlik, operator_norm_truncated, MeasureKind, NormOptions, RadialMeasure,
};
use shellmax::{GroupModel, Result};

fn main() -> Result<()> {
    let f2 = GroupModel::free(2);
    let opts = NormOptions::default();
    for r in 1..=3 {
        let sigma = RadialMeasure::<f64>::new(&f2, MeasureKind::Sphere { radius: r })?;
        let exact = cohen_pytlik(2, r);
        for truncation in [8, 10, 12] {
            let est = operator_norm_truncated(&f2, &sigma, truncation, &opts)?;
            println!(
                "r = {r}, R = {truncation:2}: {:.8} of {exact:.8} ({:+.3}%), {} iterations",
                est.norm,
                100.0 * (est.norm / exact - 1.0),
                est.iterations
            );
        }
    }
    let probe = ball_rd_exponent_probe(&f2, &[2, 4, 6], 12, &opts)?;
    for row in &probe.rows {
        println!(
            "ball r = {}: norm {:.8}, |B_r|^(1/2) r^(-b) scaled {:.6}",
            row.r, row.norm, row.scaled
        );
    }
    println!("fitted exponent {:.4}", probe.exponent);
    Ok(())
}
