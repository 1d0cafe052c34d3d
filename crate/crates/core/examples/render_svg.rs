//! Writes SVG drawings of a few curves.
//!
//! Usage: `cargo run --example render_svg -- [output-dir]`

use std::path::PathBuf;

use sfcurve::curve::CurveEncoding;
use sfcurve::geometry::{curve_path, Coord};
use sfcurve::render::{to_ascii, to_svg};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("sfc-svg"));
    std::fs::create_dir_all(&dir)?;
    for s in ["R|1111", "C|1111", "I^270|2121", "B^270|1221", "IRU|21"] {
        let e = CurveEncoding::parse(s)?;
        let p = curve_path(&e, Coord::new(0, 0))?;
        let name: String = s
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        let file = dir.join(format!("{name}.svg"));
        std::fs::write(&file, to_svg(&p))?;
        println!("{}", file.display());
    }
    let small = curve_path(&CurveEncoding::parse("C|11")?, Coord::new(0, 0))?;
    print!("{}", to_ascii(&small));
    Ok(())
}
