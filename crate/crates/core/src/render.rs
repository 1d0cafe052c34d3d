//! Output formats for point paths: SVG, ASCII, CSV and JSON.

use std::fmt::Write;

use crate::geometry::{Coord, PointPath};
use crate::grammar::Direction;

/// User units per grid cell in SVG output.
pub const SVG_CELL: i64 = 10;
const MARGIN: i64 = 10;

fn svg_xy(c: Coord) -> (i64, i64) {
    (c.x * SVG_CELL, -c.y * SVG_CELL)
}

fn triangle(tip: (i64, i64), d: Direction) -> String {
    let (dx, dy) = d.step();
    let (dx, dy) = (dx, -dy);
    let back = (tip.0 - 5 * dx, tip.1 - 5 * dy);
    let (px, py) = (-dy * 3, dx * 3);
    format!(
        "{},{} {},{} {},{}",
        tip.0,
        tip.1,
        back.0 + px,
        back.1 + py,
        back.0 - px,
        back.1 - py
    )
}

/// SVG 1.1 drawing with the y axis pointing up on screen.
///
/// Polyline vertices are the path points scaled by [`SVG_CELL`]. Open ends
/// get an arrow along their heading, closed ends a small circle.
pub fn to_svg(path: &PointPath) -> String {
    let (lo, hi) = path.bounds().unwrap_or_default();
    let (x0, y0) = (lo.x * SVG_CELL - MARGIN, -hi.y * SVG_CELL - MARGIN);
    let w = (hi.x - lo.x) * SVG_CELL + 2 * MARGIN;
    let h = (hi.y - lo.y) * SVG_CELL + 2 * MARGIN;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="{x0} {y0} {w} {h}">"#
    );
    let pts: Vec<String> = path
        .points
        .iter()
        .map(|&p| {
            let (x, y) = svg_xy(p);
            format!("{x},{y}")
        })
        .collect();
    let _ = writeln!(
        s,
        r#"<polyline fill="none" stroke="black" stroke-width="1.5" stroke-linejoin="round" points="{}"/>"#,
        pts.join(" ")
    );
    if let (Some(&first), Some(&last)) = (path.points.first(), path.points.last()) {
        let ends = [(first, path.entry_dir, true), (last, path.exit_dir, false)];
        for (p, dir, is_entry) in ends {
            let (x, y) = svg_xy(p);
            let color = if is_entry { "green" } else { "red" };
            match dir {
                Some(d) => {
                    let (dx, dy) = d.step();
                    let tip = if is_entry {
                        (x - 2 * dx, y + 2 * dy)
                    } else {
                        (x + 8 * dx, y - 8 * dy)
                    };
                    let _ = writeln!(
                        s,
                        r#"<polygon fill="{color}" points="{}"/>"#,
                        triangle(tip, d)
                    );
                }
                None => {
                    let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="2.5" fill="{color}"/>"#);
                }
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Character grid with `o` at points and `-`/`|` between consecutive points.
pub fn to_ascii(path: &PointPath) -> String {
    let Some((lo, hi)) = path.bounds() else {
        return String::new();
    };
    let w = (2 * (hi.x - lo.x) + 1) as usize;
    let h = (2 * (hi.y - lo.y) + 1) as usize;
    let mut grid = vec![vec![' '; w]; h];
    let at = |c: Coord| ((2 * (c.x - lo.x)) as usize, (2 * (hi.y - c.y)) as usize);
    for win in path.points.windows(2) {
        let (a, b) = (at(win[0]), at(win[1]));
        let (mx, my) = ((a.0 + b.0) / 2, (a.1 + b.1) / 2);
        grid[my][mx] = if a.1 == b.1 { '-' } else { '|' };
    }
    for &p in &path.points {
        let (x, y) = at(p);
        grid[y][x] = 'o';
    }
    let mut s = String::new();
    for row in grid {
        s.push_str(row.iter().collect::<String>().trim_end());
        s.push('\n');
    }
    s
}

/// `n,x,y` rows with 1-based indices.
pub fn to_csv(path: &PointPath) -> String {
    let mut s = String::from("n,x,y\n");
    for (i, p) in path.points.iter().enumerate() {
        let _ = writeln!(s, "{},{},{}", i + 1, p.x, p.y);
    }
    s
}

pub fn to_json(path: &PointPath) -> String {
    serde_json::to_string(path).expect("point paths always serialize")
}

/// Vertices of the first polyline in an SVG document, converted back to grid units.
pub fn svg_vertices(svg: &str) -> Option<Vec<Coord>> {
    let start = svg.find("points=\"")? + 8;
    let end = start + svg[start..].find('"')?;
    svg[start..end]
        .split_whitespace()
        .map(|pair| {
            let (x, y) = pair.split_once(',')?;
            let x: i64 = x.parse().ok()?;
            let y: i64 = y.parse().ok()?;
            Some(Coord::new(x / SVG_CELL, -y / SVG_CELL))
        })
        .collect()
}
