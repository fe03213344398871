//! Shell correlation counts of seeded subset pairs, each checked by a double
//! loop and by convolution.
//!
//! cargo run --release --example correlation

use shellmax::cayley::enumerate;
use shellmax::geometry::{correlation_rd_ratio, random_subset};
use shellmax::rng::Lcg;
use shellmax::{parse_spec, Result};

fn main() -> Result<()> {
    for spec in [
        "free rank=2",
        "raag vertices=a,b,c edges=a-b,b-c",
        "product (free rank=2) (free rank=2)",
    ] {
        let model = parse_spec(spec)?;
        let ball = enumerate(&model, 4)?;
        let mut rng = Lcg::new(1);
        let mut worst = 0.0f64;
        for _ in 0..50 {
            let a = random_subset(&ball, &mut rng, 40);
            let b = random_subset(&ball, &mut rng, 40);
            for r in 1..=4 {
                worst = worst.max(correlation_rd_ratio(&ball, &a, &b, r, 0.0, 1)?.ratio);
            }
        }
        println!("{model}: largest ratio against (|A| |B| |S_r|)^(1/2) is {worst:.6}");
    }
    Ok(())
}
