//! Derive the per-component weight bound from a balance ratio: splitting
//! a total weight P into k parts where no part exceeds r times another
//! forces every part to weigh at least P / (r(k−1)+1).
//!
//! Run with `cargo run --example ratio_bound`.

use partition_dd::pipeline::{lower_bound_from_ratio, parse_ratio};

fn main() -> partition_dd::Result<()> {
    // Perfectly balanced halves: r = 1, k = 2.
    let (exact, floor) = lower_bound_from_ratio(100, 2, &parse_ratio("1")?)?;
    println!("P=100, k=2, r=1     -> exact {} floor {}", exact, floor);

    // Allow 10% imbalance across four parts.
    let (exact, floor) = lower_bound_from_ratio(1_973_472, 4, &parse_ratio("1.1")?)?;
    println!("P=1973472, k=4, r=1.1 -> exact {} floor {}", exact, floor);

    // One part: the bound is the whole weight.
    let (exact, floor) = lower_bound_from_ratio(42, 1, &parse_ratio("7.5")?)?;
    println!("P=42, k=1, any r    -> exact {} floor {}", exact, floor);

    // The arithmetic is exact rational, so ratios like 1.1 do not pick up
    // floating-point error: 1973472 / 4.3 is 19734720/43 on the nose.
    let (exact, _) = lower_bound_from_ratio(1_973_472, 4, &parse_ratio("1.1")?)?;
    assert_eq!(exact.to_string(), "19734720/43");
    Ok(())
}
