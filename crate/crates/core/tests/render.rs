mod common;

use sfcurve::curve::all_single_base;
use sfcurve::geometry::{curve_path, Coord, PointPath};
use sfcurve::render::*;

use common::enc;

const O: Coord = Coord { x: 0, y: 0 };

#[test]
fn svg_vertices_are_the_path() {
    for e in all_single_base(2) {
        let p = curve_path(&e, Coord::new(-3, 5)).unwrap();
        assert_eq!(svg_vertices(&to_svg(&p)).unwrap(), p.points, "{e}");
    }
}

#[test]
fn worked_example_vertex() {
    let p = curve_path(&enc("B^270|1221"), O).unwrap();
    let v = svg_vertices(&to_svg(&p)).unwrap();
    assert_eq!(v.len(), 256);
    assert_eq!(v[157], Coord::new(5, -12));
}

#[test]
fn svg_marks_open_and_closed_ends() {
    let open = to_svg(&curve_path(&enc("R|11"), O).unwrap());
    assert_eq!(open.matches("<polygon").count(), 2);
    assert!(!open.contains("<circle"));
    let closed = to_svg(&curve_path(&enc("C|11"), O).unwrap());
    assert_eq!(closed.matches("<circle").count(), 2);
    assert!(closed.starts_with("<?xml") && closed.trim_end().ends_with("</svg>"));
}

#[test]
fn ascii_grid() {
    let p = curve_path(&enc("R|1"), O).unwrap();
    let art = to_ascii(&p);
    assert_eq!(art.lines().count(), 3);
    assert_eq!(art.matches('o').count(), 4);
    assert_eq!(art.matches(['-', '|']).count(), 3);
}

#[test]
fn csv_rows() {
    let p = curve_path(&enc("I|12"), O).unwrap();
    let csv = to_csv(&p);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,x,y"));
    assert_eq!(lines.count(), 16);
    assert!(csv.contains(&format!("1,{},{}", p.points[0].x, p.points[0].y)));
}

#[test]
fn json_round_trips() {
    let p = curve_path(&enc("P^90|212"), O).unwrap();
    let back: PointPath = serde_json::from_str(&to_json(&p)).unwrap();
    assert_eq!(back, p);
}

#[test]
fn empty_paths() {
    let p = PointPath {
        points: vec![],
        entry_dir: None,
        exit_dir: None,
    };
    assert_eq!(to_ascii(&p), "");
    assert_eq!(svg_vertices(&to_svg(&p)).unwrap(), vec![]);
}
