//! Point location and indexing on `B^270|1221`, plus recovering a curve
//! from its endpoints.

use sfcurve::curve::CurveEncoding;
use sfcurve::geometry::{
    bounding_box, determine_from_endpoints, index_with_digits, locate_point_sum, locate_trace,
    Coord, ExitSide, Side,
};
use sfcurve::grammar::{expand_base, Base, Code, Direction, OrientedBase, Rotation};

fn main() -> sfcurve::Result<()> {
    let e = CurveEncoding::parse("B^270|1221")?;
    let entry = Coord::new(0, 0);

    let t = locate_trace(&e, 158, entry)?;
    let digits: String = t.digits.iter().map(|d| d.to_string()).collect();
    println!("point 158 of {e}: {} (digits {digits})", t.point);
    for (a, s) in t.anchors.iter().zip(&t.subunits) {
        println!("  anchor {a:<8} {s}");
    }
    println!(
        "summed offsets agree: {}",
        locate_point_sum(&e, 158, entry)? == t.point
    );

    let bbox = bounding_box(&e, entry)?;
    let (n, d) = index_with_digits(&e, Coord::new(5, -12), bbox)?;
    println!(
        "bbox {} .. {}, index of (5,-12) = {n} via {d:?}",
        bbox.0, bbox.1
    );

    let p180 = OrientedBase::new(Base::P, Rotation::R180);
    let u4 = expand_base(p180, Code::One).cells[3];
    let found = determine_from_endpoints(
        4,
        Coord::new(14, 16),
        Direction::DOWN,
        ExitSide {
            quadrant: u4,
            side: Side::Top,
        },
        Direction::UP,
    )?;
    println!("curve entered at (14,16) heading down, leaving up through the top: {found}");
    Ok(())
}
