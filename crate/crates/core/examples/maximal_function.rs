//! Exact maximal functions of ball indicators on the free group and their
//! weak-type ratios, with an Orlicz comparison.
//!
//! cargo run --release --example maximal_function

use shellmax::cayley::enumerate;
use shellmax::harmonic::FiniteFunction;
use shellmax::maximal::{auto_floor, maximal_function, orlicz_weak_ratio, weak_type_ratio};
use shellmax::{GroupModel, Result};

fn main() -> Result<()> {
    let f2 = GroupModel::free(2);
    let ball = enumerate(&f2, 8)?;
    for k in 0..=4 {
        let f = FiniteFunction::new(ball.elements()[..ball.ball_size(k)].iter().map(|x| (x.clone(), 1.0)));
        let floor = auto_floor(&ball, &f, k + 3);
        let profile = maximal_function(&ball, &f, &floor)?;
        let w = weak_type_ratio(&profile);
        let eta = w.argmax_eta.unwrap_or(floor);
        println!(
            "1 on B_{k}: window {}, {} points, weak ratio {:.6} at eta {:.6}, Orlicz c=1 ratio {:.6}",
            profile.window(),
            profile.values().len(),
            w.ratio,
            eta,
            orlicz_weak_ratio(&profile, &eta, 1.0)?
        );
    }
    Ok(())
}
