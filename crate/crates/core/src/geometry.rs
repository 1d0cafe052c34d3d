//! Coordinates of the traversal and O(k) point location.
//!
//! Two frames are in use. [`entry_point`] and [`determine_from_endpoints`]
//! work in the square-local frame whose lower-left cell is `(1, 1)`; every
//! other function takes the coordinate of the entry cell explicitly.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Sub};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::curve::{
    code_sequence_for_base, codes_from_integer, expand, integer_rep, s, CodeSequence,
    CurveEncoding, IntegerRep,
};
use crate::error::{Error, Result};
use crate::grammar::{expand_base, Base, Cell, Code, Direction, OrientedBase, Rotation};

/// An integer grid point.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Coord {
    pub x: i64,
    pub y: i64,
}

impl Coord {
    pub const fn new(x: i64, y: i64) -> Coord {
        Coord { x, y }
    }

    pub fn rotated(self, r: Rotation) -> Coord {
        let (x, y) = r.apply(self.x, self.y);
        Coord { x, y }
    }

    pub fn step(self, d: Direction) -> Coord {
        let (dx, dy) = d.step();
        Coord::new(self.x + dx, self.y + dy)
    }

    pub fn scaled(self, f: i64) -> Coord {
        Coord::new(self.x * f, self.y * f)
    }

    pub fn manhattan(self, o: Coord) -> i64 {
        (self.x - o.x).abs() + (self.y - o.y).abs()
    }
}

impl From<[i64; 2]> for Coord {
    fn from([x, y]: [i64; 2]) -> Coord {
        Coord { x, y }
    }
}

impl From<Coord> for [i64; 2] {
    fn from(c: Coord) -> [i64; 2] {
        [c.x, c.y]
    }
}

impl From<(i64, i64)> for Coord {
    fn from((x, y): (i64, i64)) -> Coord {
        Coord { x, y }
    }
}

impl Add for Coord {
    type Output = Coord;
    fn add(self, o: Coord) -> Coord {
        Coord::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Coord {
    fn add_assign(&mut self, o: Coord) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Coord {
    type Output = Coord;
    fn sub(self, o: Coord) -> Coord {
        Coord::new(self.x - o.x, self.y - o.y)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

/// Ordered traversal points plus the headings at both ends.
///
/// A `None` heading marks a closed end.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointPath {
    pub points: Vec<Coord>,
    pub entry_dir: Option<Direction>,
    pub exit_dir: Option<Direction>,
}

impl PointPath {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Unit-step headings between consecutive points, `None` if any step is not a unit step.
    pub fn steps(&self) -> Option<Vec<Direction>> {
        self.points
            .windows(2)
            .map(|w| Direction::from_step(w[1].x - w[0].x, w[1].y - w[0].y))
            .collect()
    }

    pub fn translated(&self, by: Coord) -> PointPath {
        PointPath {
            points: self.points.iter().map(|&p| p + by).collect(),
            ..self.clone()
        }
    }

    /// The path rotated about the origin.
    pub fn rotated(&self, r: Rotation) -> PointPath {
        PointPath {
            points: self.points.iter().map(|p| p.rotated(r)).collect(),
            entry_dir: self.entry_dir.map(|d| d.rotated(r)),
            exit_dir: self.exit_dir.map(|d| d.rotated(r)),
        }
    }

    /// The path mirrored across the vertical axis `x = 0`.
    pub fn mirrored(&self) -> PointPath {
        let flip = |d: Direction| Direction::new(Rotation::R180 - d.angle());
        PointPath {
            points: self.points.iter().map(|p| Coord::new(-p.x, p.y)).collect(),
            entry_dir: self.entry_dir.map(flip),
            exit_dir: self.exit_dir.map(flip),
        }
    }

    /// The path traversed backwards.
    pub fn reversed(&self) -> PointPath {
        PointPath {
            points: self.points.iter().rev().copied().collect(),
            entry_dir: self.exit_dir.map(Direction::reversed),
            exit_dir: self.entry_dir.map(Direction::reversed),
        }
    }

    /// Lower-left and upper-right corners of the bounding box.
    pub fn bounds(&self) -> Option<(Coord, Coord)> {
        let first = *self.points.first()?;
        Some(self.points.iter().fold((first, first), |(lo, hi), p| {
            (
                Coord::new(lo.x.min(p.x), lo.y.min(p.y)),
                Coord::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        }))
    }
}

/// Offset from one base to the next, `None` for a closed exit.
pub fn base_offset(b: OrientedBase) -> Option<Coord> {
    static TABLE: OnceLock<HashMap<OrientedBase, Coord>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut m = HashMap::new();
        for base in Base::PRIMARY {
            for r in Rotation::ALL {
                let ob = OrientedBase::new(base, r);
                let (dx, dy) = ob.exit_dir().expect("primary").step();
                m.insert(ob, Coord::new(dx, dy));
            }
        }
        m
    });
    match table.get(&b) {
        Some(&c) => Some(c),
        None => b.exit_dir().map(|d| Coord::new(d.step().0, d.step().1)),
    }
}

/// Sequential coordinates of a base sequence.
pub fn coordinates(seq: &[OrientedBase], entry: Coord) -> PointPath {
    let mut points = Vec::with_capacity(seq.len());
    let mut v = entry;
    for (i, b) in seq.iter().enumerate() {
        points.push(v);
        if i + 1 < seq.len() {
            v += base_offset(*b).expect("only the last base may have a closed exit");
        }
    }
    PointPath {
        points,
        entry_dir: seq.first().and_then(|b| b.entry_dir()),
        exit_dir: seq.last().and_then(|b| b.exit_dir()),
    }
}

/// Expands `e` and traverses it from `entry`; end headings follow the seed.
pub fn curve_path(e: &CurveEncoding, entry: Coord) -> Result<PointPath> {
    let seq = expand(e)?;
    let mut p = coordinates(&seq, entry);
    p.entry_dir = e.seed.first().entry_dir();
    p.exit_dir = e.seed.last().exit_dir();
    Ok(p)
}

fn cell_coord((x, y): Cell, half: i64) -> Coord {
    Coord::new(x as i64 * half, y as i64 * half)
}

/// Entry cell of the square curve `b|codes`, relative to its lower-left cell.
pub fn entry_local(b: OrientedBase, codes: &CodeSequence) -> Coord {
    let m = codes.len();
    let mut pos = Coord::default();
    let mut cur = b;
    for (level, &c) in codes.iter().enumerate() {
        let unit = expand_base(cur, c);
        pos += cell_coord(unit.cells[0], 1 << (m - level - 1));
        cur = unit.bases[0];
    }
    pos
}

/// Exit cell of the square curve `b|codes`, relative to its lower-left cell.
pub fn exit_local(b: OrientedBase, codes: &CodeSequence) -> Coord {
    exit_descent(b, codes).0
}

fn exit_descent(b: OrientedBase, codes: &CodeSequence) -> (Coord, OrientedBase) {
    let m = codes.len();
    let mut pos = Coord::default();
    let mut cur = b;
    let mut rest = codes.clone();
    for level in 0..m {
        let unit = expand_base(cur, rest[0]);
        pos += cell_coord(unit.cells[3], 1 << (m - level - 1));
        rest = s(
            &rest.tail(1),
            unit.bases[3].rotation - unit.bases[0].rotation,
        );
        cur = unit.bases[3];
    }
    (pos, cur)
}

/// Offset from the entry of `b|codes` to the entry of whatever follows it.
pub fn square_offset(b: OrientedBase, codes: &CodeSequence) -> Option<Coord> {
    let (exit, last) = exit_descent(b, codes);
    let d = last.exit_dir()?;
    Some(exit.step(d) - entry_local(b, codes))
}

/// Entry point of a single-base curve in the frame with lower-left `(1, 1)`.
pub fn entry_point(e: &CurveEncoding) -> Result<Coord> {
    if !e.is_single_base() {
        return Err(Error::NotSingleBase);
    }
    Ok(entry_local(e.seed.first(), &e.codes) + Coord::new(1, 1))
}

/// Exit point of a single-base curve in the frame with lower-left `(1, 1)`.
pub fn exit_point(e: &CurveEncoding) -> Result<Coord> {
    if !e.is_single_base() {
        return Err(Error::NotSingleBase);
    }
    Ok(exit_local(e.seed.first(), &e.codes) + Coord::new(1, 1))
}

/// Offset between the entry of a primary square curve `z^θ` at level `m`
/// with integer representation `delta` and the entry of the next one.
pub fn unit_offset(z: Base, theta: Rotation, delta: u64, m: usize) -> Result<Coord> {
    let side = 1i64 << m;
    let d = delta as i64;
    let v = match z {
        Base::I => Coord::new(0, side),
        Base::R => Coord::new(side - d + 1, d - 1),
        Base::L => Coord::new(-d, side - d),
        other => {
            return Err(Error::Mismatch(format!(
                "unit offsets are defined for primary bases, got {other}"
            )))
        }
    };
    Ok(v.rotated(theta))
}

/// Quaternary digits `q_1..q_k` (each 1..=4) of a 1-based index.
pub fn quaternary_digits(n: u64, k: usize) -> Vec<u8> {
    let m = n - 1;
    (0..k)
        .map(|i| ((m >> (2 * (k - 1 - i))) & 3) as u8 + 1)
        .collect()
}

/// Inverse of [`quaternary_digits`].
pub fn index_from_digits(q: &[u8]) -> u64 {
    let k = q.len();
    1 + q
        .iter()
        .enumerate()
        .map(|(i, &d)| ((d - 1) as u64) << (2 * (k - 1 - i)))
        .sum::<u64>()
}

/// Intermediate state of a point-location query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocateTrace {
    /// Index of the seed square holding the point (1-based).
    pub square: usize,
    /// Entry point of that seed square.
    pub square_entry: Coord,
    pub digits: Vec<u8>,
    /// Entry point of the selected subunit after each digit; the last one is the point.
    pub anchors: Vec<Coord>,
    /// Subunit chosen after each digit.
    pub subunits: Vec<String>,
    pub point: Coord,
}

fn check_index(e: &CurveEncoding, n: u64) -> Result<()> {
    let total = e.point_count();
    if n < 1 || n > total {
        return Err(Error::OutOfRange {
            what: "index",
            value: n as i64,
            min: 1,
            max: total as i64,
        });
    }
    Ok(())
}

/// Seed square holding index `n`, its entry point and its codes.
fn seed_square(
    e: &CurveEncoding,
    n: u64,
    entry: Coord,
) -> Result<(usize, Coord, CodeSequence, u64)> {
    check_index(e, n)?;
    let per = 1u64 << (2 * e.level());
    let c = ((n - 1) / per) as usize;
    let mut v = entry;
    for i in 0..c {
        let codes = code_sequence_for_base(e, i + 1)?;
        v += square_offset(e.seed.bases()[i], &codes).expect("inner seed bases have open exits");
    }
    let codes = code_sequence_for_base(e, c + 1)?;
    Ok((c, v, codes, n - c as u64 * per))
}

/// Coordinate of the `n`-th point (1-based) in O(k) steps.
pub fn locate_point(e: &CurveEncoding, n: u64, entry: Coord) -> Result<Coord> {
    Ok(locate_trace(e, n, entry)?.point)
}

/// [`locate_point`] with every intermediate anchor exposed.
pub fn locate_trace(e: &CurveEncoding, n: u64, entry: Coord) -> Result<LocateTrace> {
    let (c, v_c, codes, local) = seed_square(e, n, entry)?;
    let k = codes.len();
    let digits = quaternary_digits(local, k);
    let mut cur = e.seed.bases()[c];
    let mut rest = codes;
    let mut v = v_c;
    let mut anchors = Vec::with_capacity(k);
    let mut subunits = Vec::with_capacity(k);
    for (level, &q) in digits.iter().enumerate() {
        let m = k - level - 1;
        let unit = expand_base(cur, rest[0]);
        let tail = rest.tail(1);
        let theta1 = unit.bases[0].rotation;
        for z in &unit.bases[..q as usize - 1] {
            let sub = s(&tail, z.rotation - theta1);
            v += unit_offset(z.base, z.rotation, integer_rep(&sub).delta, m)?;
        }
        cur = unit.bases[q as usize - 1];
        rest = s(&tail, cur.rotation - theta1);
        anchors.push(v);
        subunits.push(format!("{cur}|{rest}"));
    }
    Ok(LocateTrace {
        square: c + 1,
        square_entry: v_c,
        digits,
        anchors,
        subunits,
        point: v,
    })
}

/// Point location by summing all subunit offsets of every level at once.
pub fn locate_point_sum(e: &CurveEncoding, n: u64, entry: Coord) -> Result<Coord> {
    let (c, v_c, codes, local) = seed_square(e, n, entry)?;
    let k = codes.len();
    let digits = quaternary_digits(local, k);
    let mut forms: Vec<Vec<(OrientedBase, CodeSequence)>> = Vec::with_capacity(k);
    let mut cur = (e.seed.bases()[c], codes);
    for &q in &digits {
        let unit = expand_base(cur.0, cur.1[0]);
        let tail = cur.1.tail(1);
        let theta1 = unit.bases[0].rotation;
        let subs: Vec<_> = unit
            .bases
            .iter()
            .map(|z| (*z, s(&tail, z.rotation - theta1)))
            .collect();
        cur = subs[q as usize - 1].clone();
        forms.push(subs);
    }
    let mut v = v_c;
    for (level, (subs, &q)) in forms.iter().zip(&digits).enumerate() {
        for (z, sub) in &subs[..q as usize - 1] {
            v += unit_offset(z.base, z.rotation, integer_rep(sub).delta, k - level - 1)?;
        }
    }
    Ok(v)
}

/// Quaternary index of each quadrant for every level-1 unit.
#[derive(Debug, Clone)]
pub struct QuadrantTable {
    map: HashMap<(OrientedBase, Code), [[u8; 2]; 2]>,
}

impl QuadrantTable {
    pub fn build() -> QuadrantTable {
        let mut map = HashMap::with_capacity(72);
        for b in OrientedBase::all() {
            for c in Code::ALL {
                let unit = expand_base(b, c);
                let mut m = [[0u8; 2]; 2];
                for (i, &(x, y)) in unit.cells.iter().enumerate() {
                    m[x as usize][y as usize] = i as u8 + 1;
                }
                map.insert((b, c), m);
            }
        }
        QuadrantTable { map }
    }

    /// Quaternary index of quadrant column `i` and row `j`, both 1-based
    /// from the left and from the bottom.
    pub fn get(&self, b: OrientedBase, c: Code, i: u8, j: u8) -> u8 {
        self.map[&(b, c)][i as usize - 1][j as usize - 1]
    }

    /// The 2x2 matrix as printed: first row is the upper half.
    pub fn matrix(&self, b: OrientedBase, c: Code) -> [[u8; 2]; 2] {
        let m = self.map[&(b, c)];
        [[m[0][1], m[1][1]], [m[0][0], m[1][0]]]
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

pub fn quadrant_table() -> &'static QuadrantTable {
    static TABLE: OnceLock<QuadrantTable> = OnceLock::new();
    TABLE.get_or_init(QuadrantTable::build)
}

/// Bounding box of a single-base curve entered at `entry`.
pub fn bounding_box(e: &CurveEncoding, entry: Coord) -> Result<(Coord, Coord)> {
    if !e.is_single_base() {
        return Err(Error::NotSingleBase);
    }
    let lo = entry - entry_local(e.seed.first(), &e.codes);
    let side = (1i64 << e.level()) - 1;
    Ok((lo, lo + Coord::new(side, side)))
}

fn index_in_square(
    b: OrientedBase,
    codes: &CodeSequence,
    target: Coord,
    lo: Coord,
) -> Result<(u64, Vec<u8>)> {
    let k = codes.len();
    let side = 1i64 << k;
    let rel = target - lo;
    if rel.x < 0 || rel.y < 0 || rel.x >= side || rel.y >= side {
        return Err(Error::OutOfRange {
            what: "target outside bounding box at x",
            value: target.x,
            min: lo.x,
            max: lo.x + side - 1,
        });
    }
    let table = quadrant_table();
    let mut digits = Vec::with_capacity(k);
    let mut cur = b;
    let mut rest = codes.clone();
    let mut corner = lo;
    let mut half = side;
    for _ in 0..k {
        half /= 2;
        let i = if target.x - corner.x < half { 1 } else { 2 };
        let j = if target.y - corner.y < half { 1 } else { 2 };
        let q = table.get(cur, rest[0], i, j);
        digits.push(q);
        corner += Coord::new((i as i64 - 1) * half, (j as i64 - 1) * half);
        let unit = expand_base(cur, rest[0]);
        let next = unit.bases[q as usize - 1];
        rest = s(&rest.tail(1), next.rotation - unit.bases[0].rotation);
        cur = next;
    }
    Ok((index_from_digits(&digits), digits))
}

/// Sequential index of `target` on a single-base curve whose bounding box is `bbox`.
pub fn index_of(e: &CurveEncoding, target: Coord, bbox: (Coord, Coord)) -> Result<u64> {
    Ok(index_with_digits(e, target, bbox)?.0)
}

/// [`index_of`] together with the quaternary digits.
pub fn index_with_digits(
    e: &CurveEncoding,
    target: Coord,
    bbox: (Coord, Coord),
) -> Result<(u64, Vec<u8>)> {
    if !e.is_single_base() {
        return Err(Error::NotSingleBase);
    }
    let side = 1i64 << e.level();
    let (lo, hi) = bbox;
    if hi.x - lo.x + 1 != side || hi.y - lo.y + 1 != side {
        return Err(Error::Mismatch(format!(
            "bounding box must be {side}x{side} at level {}",
            e.level()
        )));
    }
    index_in_square(e.seed.first(), &e.codes, target, lo)
}

/// Sequential index of `target` on any curve entered at `entry`.
pub fn index_at(e: &CurveEncoding, target: Coord, entry: Coord) -> Result<u64> {
    let per = 1u64 << (2 * e.level());
    let mut v = entry;
    for (i, &b) in e.seed.bases().iter().enumerate() {
        let codes = code_sequence_for_base(e, i + 1)?;
        let lo = v - entry_local(b, &codes);
        if let Ok((n, _)) = index_in_square(b, &codes, target, lo) {
            return Ok(i as u64 * per + n);
        }
        if let Some(off) = square_offset(b, &codes) {
            v += off;
        }
    }
    Err(Error::OutOfRange {
        what: "target not on curve, x",
        value: target.x,
        min: i64::MIN,
        max: i64::MAX,
    })
}

/// A side of a square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

impl Side {
    /// The side crossed when leaving a square along `d`.
    pub fn facing(d: Direction) -> Side {
        match d {
            Direction::RIGHT => Side::Right,
            Direction::UP => Side::Top,
            Direction::LEFT => Side::Left,
            _ => Side::Bottom,
        }
    }
}

/// Where the exit lies: a side of one of the four quadrants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExitSide {
    /// Quadrant column and row, 0 or 1, from the lower left.
    pub quadrant: Cell,
    pub side: Side,
}

fn on_side(p: Coord, quadrant: Cell, side: Side, half: i64) -> bool {
    let x0 = 1 + quadrant.0 as i64 * half;
    let y0 = 1 + quadrant.1 as i64 * half;
    let (x1, y1) = (x0 + half - 1, y0 + half - 1);
    let inside = (x0..=x1).contains(&p.x) && (y0..=y1).contains(&p.y);
    inside
        && match side {
            Side::Left => p.x == x0,
            Side::Right => p.x == x1,
            Side::Bottom => p.y == y0,
            Side::Top => p.y == y1,
        }
}

/// Recovers a single-base curve from its entry point, entry heading, the
/// side of subunit 4 holding the exit, and the exit heading.
///
/// Coordinates use the frame whose lower-left cell is `(1, 1)`.
pub fn determine_from_endpoints(
    k: usize,
    entry: Coord,
    entry_dir: Direction,
    exit_side: ExitSide,
    exit_dir: Direction,
) -> Result<CurveEncoding> {
    if k == 0 {
        return Err(Error::LevelTooSmall { level: 0, min: 1 });
    }
    let side = 1i64 << k;
    if entry.x < 1 || entry.y < 1 || entry.x > side || entry.y > side {
        return Err(Error::InconsistentEndpoints(format!(
            "entry {entry} outside the {side}x{side} grid"
        )));
    }
    let half = side / 2;
    let q1 = (((entry.x - 1) / half) as u8, ((entry.y - 1) / half) as u8);
    let mut found = Vec::new();
    for b in OrientedBase::all() {
        for c in Code::ALL {
            let unit = expand_base(b, c);
            if unit.cells[0] != q1
                || unit.cells[3] != exit_side.quadrant
                || unit.entry_dir() != Some(entry_dir)
                || unit.exit_dir() != Some(exit_dir)
            {
                continue;
            }
            let mut corner_codes = vec![c];
            corner_codes.extend(std::iter::repeat_n(Code::One, k - 1));
            let p = entry_local(b, &CodeSequence(corner_codes)) + Coord::new(1, 1);
            if p.x != entry.x && p.y != entry.y {
                continue;
            }
            let delta = p.manhattan(entry) as u64 + 1;
            let Ok(rest) = codes_from_integer(IntegerRep {
                delta,
                level: k - 1,
            }) else {
                continue;
            };
            let mut codes = vec![c];
            codes.extend(rest.iter().copied());
            let cand = CurveEncoding::single(b, CodeSequence(codes));
            if entry_point(&cand)? == entry
                && on_side(exit_point(&cand)?, exit_side.quadrant, exit_side.side, half)
            {
                found.push(cand);
            }
        }
    }
    found.sort();
    found
        .into_iter()
        .next()
        .ok_or_else(|| Error::InconsistentEndpoints("no curve has these endpoints".into()))
}
