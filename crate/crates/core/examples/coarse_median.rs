//! The spherical coarse median inequality over seeded subset families, and
//! the min-sum bound behind it.
//!
//! cargo run --release --example coarse_median

use std::collections::BTreeMap;

use shellmax::cayley::enumerate;
use shellmax::geometry::{coarse_median_scan, minsum_bound_check};
use shellmax::{parse_spec, Result};

fn main() -> Result<()> {
    for (spec, r_max, d2) in [("free rank=2", 6, 0.0), ("raag vertices=a,b,c edges=a-b,b-c", 5, 2.0)] {
        let model = parse_spec(spec)?;
        let ball = enumerate(&model, r_max)?;
        let scan = coarse_median_scan(&ball, r_max, 7, d2)?;
        let worst = scan.argmax.map(|k| &scan.reports[k]);
        println!(
            "{model}: {} cells, C0 = {:.6} for d2 = {d2}",
            scan.reports.len(),
            scan.c0
        );
        if let Some(rep) = worst {
            println!("  worst cell {:?} family {:?}", rep.params, rep.digest.family);
        }
    }
    let levels: BTreeMap<usize, u64> = [(1, 4)].into();
    let rep = minsum_bound_check(3.0, &levels, &levels, 2)?;
    println!(
        "min-sum bound, |E_1| = |F_1| = 4, r = 2: {} / {} = {}",
        rep.lhs.value(),
        rep.rhs,
        rep.ratio
    );
    Ok(())
}
