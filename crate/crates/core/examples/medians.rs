//! Intervals and median candidates, and interval-sphere growth in a
//! right-angled Artin group.
//!
//! cargo run --release --example medians

use shellmax::cayley::enumerate;
use shellmax::geometry::{interval_sphere_scan, median_candidates};
use shellmax::{parse_spec, Result};

fn main() -> Result<()> {
    for (spec, x, y, z) in [
        ("free rank=2", "e", "a.b", "a.b^-1"),
        ("zd dim=2", "e", "a^3", "b^2"),
        ("cyclicfreeproduct orders=2,3", "e", "b", "b^-1"),
    ] {
        let model = parse_spec(spec)?;
        let ball = enumerate(&model, 5)?;
        let [x, y, z] = [x, y, z].map(|w| model.parse_element(w));
        let m = median_candidates(&ball, &x?, &y?, &z?)?;
        let words: Vec<String> = m.iter().map(|w| model.format_element(w)).collect();
        println!("{model}: median candidates {words:?}");
    }
    let raag = parse_spec("raag vertices=a,b,c edges=a-b,b-c")?;
    let scan = interval_sphere_scan(&enumerate(&raag, 8)?, 4000, 3);
    println!(
        "{raag}: max |C(e, y) ∩ S_r| = {:?}, slope {:.4}",
        scan.max_counts, scan.slope
    );
    Ok(())
}
