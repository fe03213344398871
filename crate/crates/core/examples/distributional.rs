//! The distributional inequality for sphere sums over a seeded dyadic corpus,
//! and a strong-type probe for ball averages.
//!
//! cargo run --release --example distributional

use shellmax::cayley::enumerate;
use shellmax::maximal::{corpus_sweep, dyadic_corpus, strong_lp_probe};
use shellmax::{GroupModel, Result};

fn main() -> Result<()> {
    let f2 = GroupModel::free(2);
    let ball = enumerate(&f2, 6)?;
    let corpus = dyadic_corpus(&ball, 4, 30, 6, 42);
    let sweep = corpus_sweep(&ball, &corpus, 6, 0.0)?;
    for r in 1..=6 {
        println!(
            "r = {r}: max ratio {:.6}, running max {:.6}",
            sweep.max_ratio[r - 1],
            sweep.running_max(r)
        );
    }
    for row in strong_lp_probe(&ball, &corpus[0], 2.0, &[1, 2, 3, 4, 5, 6], 3.0)? {
        println!(
            "ball average n = {}: l2 ratio {:.6}, partial sum {:.6}",
            row.n, row.ratio_2, row.partial_sum
        );
    }
    Ok(())
}
