//! Recovers encodings from bare point walks.

use sfcurve::curve::CurveEncoding;
use sfcurve::geometry::{curve_path, Coord};
use sfcurve::transform::{infer_encoding, Port};

fn main() -> sfcurve::Result<()> {
    for s in ["R^90|12212", "C|121", "IRU|21"] {
        let e = CurveEncoding::parse(s)?;
        let walk = curve_path(&e, Coord::new(3, -2))?;

        let known = infer_encoding(
            &walk,
            Port::from_option(walk.entry_dir),
            Port::from_option(walk.exit_dir),
        )?;
        println!(
            "{s:<12} -> {} (ambiguous: {})",
            known.encoding, known.ambiguous
        );

        let free = infer_encoding(&walk, Port::Unknown, Port::Unknown)?;
        let names: Vec<String> = free.candidates.iter().map(|c| c.to_string()).collect();
        println!("{:<12}    free ends: {}", "", names.join(", "));
    }
    Ok(())
}
