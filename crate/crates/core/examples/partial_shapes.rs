//! Partially identical and completely distinct pairs.

use sfcurve::curve::CurveEncoding;
use sfcurve::structure::geometric::{completely_distinct_geometric, ends_only_difference};
use sfcurve::structure::{completely_distinct, partial_tag, partially_identical};

fn main() -> sfcurve::Result<()> {
    let pairs = [
        ("I^270|2221", "U|1112"),
        ("R|2112", "R|1122"),
        ("I|2212", "U|1121"),
    ];
    for (a, b) in pairs {
        let (a, b) = (CurveEncoding::parse(a)?, CurveEncoding::parse(b)?);
        let tag = partially_identical(&a, &b)?;
        println!(
            "{a} / {b}: partial {}, differing end units {:?}, distinct {} (walks: {})",
            tag.map_or("none".to_string(), |t| t.to_string()),
            ends_only_difference(&a, &b)?,
            completely_distinct(&a, &b)?,
            completely_distinct_geometric(&a, &b)?,
        );
    }
    for s in ["I|2211", "I|2212", "U|1121"] {
        let e = CurveEncoding::parse(s)?;
        println!("tag of {e}: {:?}", partial_tag(&e).map(|t| t.to_string()));
    }
    Ok(())
}
