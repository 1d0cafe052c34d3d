//! Encoding-level transforms checked against the same transforms on coordinates.

use sfcurve::curve::CurveEncoding;
use sfcurve::geometry::{curve_path, Coord};
use sfcurve::transform::{reduce, Transform};

fn main() -> sfcurve::Result<()> {
    let e = CurveEncoding::parse("R|112")?;
    let p = curve_path(&e, Coord::new(0, 0))?;
    println!("original  {e}");
    for op in [
        "rot90", "rot180", "h", "v", "d1", "d-1", "reverse", "reduce:1",
    ] {
        let t: Transform = op.parse()?;
        let out = t.apply(&e)?;
        println!("{op:<9} {out}");
    }

    let rev = Transform::Reverse.apply(&e)?;
    let q = curve_path(&rev, *p.points.last().unwrap())?;
    println!("reversal matches the reversed walk: {}", q == p.reversed());

    let h = Transform::ReflectH.apply(&e)?;
    let m = p.mirrored();
    println!(
        "reflection matches the mirrored walk: {}",
        curve_path(&h, m.points[0])? == m
    );

    let a = reduce(&Transform::ReflectH.apply(&e)?, 1)?;
    let b = Transform::ReflectH.apply(&reduce(&e, 1)?)?;
    println!("reduce commutes with h: {}", a == b);
    Ok(())
}
