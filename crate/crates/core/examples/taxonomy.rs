//! Classifies named curves and prints their structural flags.

use sfcurve::curve::CurveEncoding;
use sfcurve::structure::classify;

fn main() -> sfcurve::Result<()> {
    let names = [
        "I|2222",
        "P|1111",
        "C|1111",
        "B|2111",
        "I|2111",
        "C|1222",
        "I^270|2121",
        "R|2121",
        "P|2121",
        "I|1121",
        "R|2212",
        "P|1121",
        "U|1121",
        "Q|1121",
        "C|1121",
        "U|1212",
        "Q|1212",
        "C|1212",
    ];
    println!("{:<11} {:<30} flags", "curve", "taxonomy");
    for s in names {
        let c = classify(&CurveEncoding::parse(s)?)?;
        println!(
            "{:<11} {:<30} {}",
            s,
            c.taxonomy.to_string(),
            c.flags.names().join(", ")
        );
    }
    Ok(())
}
