//! Sphere sizes, the exact growth fit, and the product convolution identity.
//!
//! cargo run --release --example growth

use shellmax::cayley::{enumerate, fit_growth, product_sphere_identity};
use shellmax::{parse_spec, Result};

fn main() -> Result<()> {
    for (spec, radius) in [
        ("free rank=2", 10),
        ("raag vertices=a,b,c edges=a-b,b-c", 10),
        ("cyclicfreeproduct orders=2,3", 16),
        ("zd dim=2", 10),
        ("product (free rank=2) (free rank=2)", 8),
    ] {
        let model = parse_spec(spec)?;
        let ball = enumerate(&model, radius)?;
        let sizes = ball.sphere_sizes();
        let fit = fit_growth(&sizes)?;
        println!("{model}");
        println!("  |S_n| = {sizes:?}");
        println!(
            "  d = {}, q = {:.12}, C_gr = {:.6}, recurrence = {:?}",
            fit.d,
            fit.q,
            fit.c_gr,
            fit.recurrence.as_ref().map(|r| (&r.coefficients, r.start))
        );
    }

    let f2 = parse_spec("free rank=2")?;
    let left = enumerate(&f2, 5)?;
    let right = enumerate(&f2, 5)?;
    for n in 0..=5 {
        println!(
            "F2 x F2 sphere identity at n = {n}: {}",
            product_sphere_identity(&left, &right, n)?
        );
    }
    Ok(())
}
