//! Point-path oracles for the structural predicates.
//!
//! Everything here works on expanded coordinates only, so it can check the
//! symbolic rules in the parent module independently.

use crate::curve::{subunit, CurveEncoding};
use crate::error::Result;
use crate::geometry::{curve_path, Coord, PointPath};
use crate::grammar::expand_base;
use crate::transform::reduce;

/// Canonical step sequence of a path, minimal over rotations, mirrors and reversal.
pub type Signature = Vec<u8>;

/// Step directions as `0 = right, 1 = up, 2 = left, 3 = down`.
pub fn step_codes(points: &[Coord]) -> Vec<u8> {
    points
        .windows(2)
        .map(|w| match (w[1].x - w[0].x, w[1].y - w[0].y) {
            (1, 0) => 0,
            (0, 1) => 1,
            (-1, 0) => 2,
            (0, -1) => 3,
            d => panic!("non-unit step {d:?}"),
        })
        .collect()
}

pub fn signature(points: &[Coord]) -> Signature {
    let steps = step_codes(points);
    let rev: Vec<u8> = steps.iter().rev().map(|d| (d + 2) % 4).collect();
    let mut best: Option<Signature> = None;
    for base in [&steps, &rev] {
        for mirror in [false, true] {
            for r in 0..4u8 {
                let v: Vec<u8> = base
                    .iter()
                    .map(|&d| {
                        let d = if mirror { (6 - d) % 4 } else { d };
                        (d + r) % 4
                    })
                    .collect();
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
        }
    }
    best.unwrap_or_default()
}

pub fn shape_signature(e: &CurveEncoding) -> Result<Signature> {
    Ok(signature(&curve_path(e, Coord::default())?.points))
}

/// Signatures of the consecutive level-`d` units of the expanded path.
pub fn unit_signatures(e: &CurveEncoding, d: usize) -> Result<Vec<Signature>> {
    let p = curve_path(e, Coord::default())?;
    Ok(p.points.chunks(1 << (2 * d)).map(signature).collect())
}

pub fn same_shape_geometric(a: &CurveEncoding, b: &CurveEncoding) -> Result<bool> {
    Ok(a.level() == b.level() && shape_signature(a)? == shape_signature(b)?)
}

pub fn is_closed_path(p: &PointPath) -> bool {
    match (p.points.first(), p.points.last()) {
        (Some(&a), Some(&b)) => a.manhattan(b) == 1,
        _ => false,
    }
}

pub fn closed_geometric(e: &CurveEncoding) -> Result<bool> {
    Ok(is_closed_path(&curve_path(e, Coord::default())?))
}

fn local_points(e: &CurveEncoding) -> Result<(Vec<Coord>, i64)> {
    let p = curve_path(e, Coord::default())?;
    let (lo, hi) = p.bounds().unwrap_or_default();
    let pts = p.points.iter().map(|&c| c - lo).collect();
    Ok((pts, hi.x - lo.x + 1))
}

/// The axis mirror that swaps the quadrants of subunits `a` and `b`.
fn quadrant_mirror(e: &CurveEncoding, a: usize, b: usize, side: i64) -> impl Fn(Coord) -> Coord {
    let cells = expand_base(e.seed.first(), e.codes[0]).cells;
    let horizontal = cells[a].1 == cells[b].1;
    move |c: Coord| {
        if horizontal {
            Coord::new(side - 1 - c.x, c.y)
        } else {
            Coord::new(c.x, side - 1 - c.y)
        }
    }
}

/// The reversed path mirrored across the seam between subunits 1 and 4 equals the path.
pub fn symmetric_a_geometric(e: &CurveEncoding) -> Result<bool> {
    if e.level() == 0 || !e.is_single_base() {
        return Ok(false);
    }
    let (pts, side) = local_points(e)?;
    let m = quadrant_mirror(e, 0, 3, side);
    let n = pts.len();
    Ok((0..n).all(|i| m(pts[n - 1 - i]) == pts[i]))
}

/// Subunit 2 reversed and mirrored onto subunit 1, and subunit 3 onto subunit 4.
pub fn symmetric_b_geometric(e: &CurveEncoding) -> Result<bool> {
    if e.level() == 0 || !e.is_single_base() {
        return Ok(false);
    }
    let (pts, side) = local_points(e)?;
    let m = quadrant_mirror(e, 0, 1, side);
    let q = pts.len() / 4;
    let u = |j: usize, i: usize| pts[j * q + i];
    Ok((0..q).all(|i| m(u(1, q - 1 - i)) == u(0, i) && m(u(2, q - 1 - i)) == u(3, i)))
}

pub fn symmetric_ab_geometric(e: &CurveEncoding) -> Result<bool> {
    Ok(symmetric_a_geometric(e)? && symmetric_b_geometric(e)?)
}

/// Shapes of the reduced curve and of its four subunits at every level `i >= 3`.
fn level_shapes(e: &CurveEncoding) -> Result<Vec<(Signature, [Signature; 4])>> {
    let k = e.level();
    let mut out = Vec::new();
    for i in 3..=k {
        let p = reduce(e, k - i)?;
        let prev = shape_signature(&reduce(e, k - i + 1)?)?;
        let units = [1, 2, 3, 4].map(|q| subunit(&p, q).and_then(|u| shape_signature(&u)));
        let [a, b, c, d] = units;
        out.push((prev, [a?, b?, c?, d?]));
    }
    Ok(out)
}

pub fn recursive_geometric(e: &CurveEncoding) -> Result<bool> {
    Ok(level_shapes(e)?
        .iter()
        .all(|(p, u)| u.iter().all(|s| s == p)))
}

pub fn subunit_identical_geometric(e: &CurveEncoding) -> Result<bool> {
    Ok(level_shapes(e)?
        .iter()
        .all(|(_, u)| u.iter().all(|s| *s == u[0])))
}

pub fn subunit_different_geometric(e: &CurveEncoding) -> Result<bool> {
    Ok(level_shapes(e)?
        .iter()
        .all(|(_, u)| u.iter().any(|s| *s != u[0])))
}

pub fn completely_non_recursive_geometric(e: &CurveEncoding) -> Result<bool> {
    Ok(level_shapes(e)?
        .iter()
        .all(|(p, u)| u.iter().any(|s| *s != u[0]) && u.iter().all(|s| s != p)))
}

/// Positional level-2 units differ in shape at every reduction down to level 2.
pub fn completely_distinct_geometric(a: &CurveEncoding, b: &CurveEncoding) -> Result<bool> {
    let k = a.level();
    if k < 2 || b.level() != k {
        return Ok(false);
    }
    for i in 2..=k {
        let ua = unit_signatures(&reduce(a, k - i)?, 2)?;
        let ub = unit_signatures(&reduce(b, k - i)?, 2)?;
        if ua.iter().zip(&ub).any(|(x, y)| x == y) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The eight square symmetries of a `side`-wide grid.
fn square_maps(side: i64) -> impl Iterator<Item = impl Fn(Coord) -> Coord> {
    (0..8).map(move |t| {
        move |c: Coord| {
            let (x, y) = if t >= 4 {
                (side - 1 - c.x, c.y)
            } else {
                (c.x, c.y)
            };
            match t % 4 {
                0 => Coord::new(x, y),
                1 => Coord::new(side - 1 - y, x),
                2 => Coord::new(side - 1 - x, side - 1 - y),
                _ => Coord::new(y, side - 1 - x),
            }
        }
    })
}

/// Smallest `d >= 1` such that some symmetry of `b` agrees with `a` everywhere
/// except inside the first and last level-`d` units, which still cover the
/// same blocks. Only `d = 1` is tried at level 2 and `d <= k - 2` above it.
/// `None` when nothing matches or the shapes are equal.
pub fn ends_only_difference(a: &CurveEncoding, b: &CurveEncoding) -> Result<Option<usize>> {
    let k = a.level();
    if k < 2 || b.level() != k || same_shape_geometric(a, b)? {
        return Ok(None);
    }
    let (pa, side) = local_points(a)?;
    let (pb, _) = local_points(b)?;
    let n = pa.len();
    let block = |pts: &[Coord]| {
        let mut v: Vec<(i64, i64)> = pts.iter().map(|c| (c.x, c.y)).collect();
        v.sort_unstable();
        v
    };
    let mut best: Option<usize> = None;
    for m in square_maps(side) {
        for rev in [false, true] {
            let mut q: Vec<Coord> = pb.iter().map(|&c| m(c)).collect();
            if rev {
                q.reverse();
            }
            for d in 1..(k - 1).max(2) {
                let u = 1usize << (2 * d);
                if best.is_some_and(|b| b <= d) {
                    break;
                }
                if pa[u..n - u] == q[u..n - u]
                    && block(&pa[..u]) == block(&q[..u])
                    && block(&pa[n - u..]) == block(&q[n - u..])
                {
                    best = Some(d);
                    break;
                }
            }
        }
    }
    Ok(best)
}

/// Entry and exit corners of a curve after mapping its subunits to
/// lower-left, upper-left, upper-right, lower-right. Each corner is given
/// as `(x, y)` bits within the subunit square.
pub fn facing_corners(e: &CurveEncoding) -> Result<((u8, u8), (u8, u8))> {
    let (pts, side) = local_points(e)?;
    let half = (side / 2).max(1);
    let cells = expand_base(e.seed.first(), e.codes[0]).cells;
    let want = [(0, 0), (0, 1), (1, 1), (1, 0)];
    let maps: Vec<_> = square_maps(side).collect();
    let f = maps
        .iter()
        .find(|f| {
            cells.iter().zip(want).all(|(&(x, y), w)| {
                let c = f(Coord::new(x as i64 * half, y as i64 * half));
                (c.x / half, c.y / half) == w
            })
        })
        .expect("level-1 cells form a square path");
    let corner = |p: Coord| {
        let p = f(p);
        ((p.x % half > 0) as u8, (p.y % half > 0) as u8)
    };
    Ok((corner(pts[0]), corner(pts[pts.len() - 1])))
}
