//! Base patterns, rotations and the level 0 to level 1 expansion rules.
//!
//! Headings are absolute angles: 0 points right, 90 points up. Every base
//! pattern in its base state is entered heading up from below, except where
//! the entry is closed.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The nine level-0 patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Base {
    I,
    R,
    L,
    U,
    B,
    D,
    P,
    Q,
    C,
}

impl Base {
    pub const ALL: [Base; 9] = [
        Base::I,
        Base::R,
        Base::L,
        Base::U,
        Base::B,
        Base::D,
        Base::P,
        Base::Q,
        Base::C,
    ];

    pub const PRIMARY: [Base; 3] = [Base::I, Base::R, Base::L];

    pub fn is_primary(self) -> bool {
        matches!(self, Base::I | Base::R | Base::L)
    }

    pub fn symbol(self) -> char {
        match self {
            Base::I => 'I',
            Base::R => 'R',
            Base::L => 'L',
            Base::U => 'U',
            Base::B => 'B',
            Base::D => 'D',
            Base::P => 'P',
            Base::Q => 'Q',
            Base::C => 'C',
        }
    }

    pub fn from_symbol(c: char) -> Option<Base> {
        Some(match c {
            'I' => Base::I,
            'R' => Base::R,
            'L' => Base::L,
            'U' => Base::U,
            'B' => Base::B,
            'D' => Base::D,
            'P' => Base::P,
            'Q' => Base::Q,
            'C' => Base::C,
            _ => return None,
        })
    }

    fn index(self) -> usize {
        self as usize
    }

    /// Entry heading in the base state, `None` when the entry is closed.
    pub fn entry_heading(self) -> Option<Direction> {
        match self {
            Base::B | Base::D | Base::C => None,
            _ => Some(Direction::UP),
        }
    }

    /// Exit heading in the base state, `None` when the exit is closed.
    pub fn exit_heading(self) -> Option<Direction> {
        match self {
            Base::I | Base::B | Base::D => Some(Direction::UP),
            Base::R => Some(Direction::RIGHT),
            Base::L => Some(Direction::LEFT),
            Base::U => Some(Direction::DOWN),
            Base::P | Base::Q | Base::C => None,
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A counterclockwise rotation, always one of 0, 90, 180 or 270 degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rotation(u16);

impl Rotation {
    pub const R0: Rotation = Rotation(0);
    pub const R90: Rotation = Rotation(90);
    pub const R180: Rotation = Rotation(180);
    pub const R270: Rotation = Rotation(270);
    pub const ALL: [Rotation; 4] = [Self::R0, Self::R90, Self::R180, Self::R270];

    /// Normalizes any multiple of 90 into `0..360`.
    ///
    /// # Panics
    ///
    /// Panics if `degrees` is not a multiple of 90.
    pub fn new(degrees: i64) -> Rotation {
        Self::checked(degrees).expect("rotation must be a multiple of 90 degrees")
    }

    pub fn checked(degrees: i64) -> Option<Rotation> {
        if degrees % 90 != 0 {
            return None;
        }
        Some(Rotation(degrees.rem_euclid(360) as u16))
    }

    pub fn degrees(self) -> u16 {
        self.0
    }

    pub fn quarter_turns(self) -> u8 {
        (self.0 / 90) as u8
    }

    pub fn from_quarter_turns(q: i64) -> Rotation {
        Rotation::new(q * 90)
    }

    /// True for 90 and 270, the rotations that swap the two diagonals.
    pub fn is_odd(self) -> bool {
        self.0 % 180 == 90
    }

    /// Applies the rotation to an integer vector.
    pub fn apply(self, x: i64, y: i64) -> (i64, i64) {
        match self.0 {
            0 => (x, y),
            90 => (-y, x),
            180 => (-x, -y),
            _ => (y, -x),
        }
    }
}

impl Add for Rotation {
    type Output = Rotation;
    fn add(self, rhs: Rotation) -> Rotation {
        Rotation((self.0 + rhs.0) % 360)
    }
}

impl Sub for Rotation {
    type Output = Rotation;
    fn sub(self, rhs: Rotation) -> Rotation {
        Rotation((self.0 + 360 - rhs.0) % 360)
    }
}

impl Neg for Rotation {
    type Output = Rotation;
    fn neg(self) -> Rotation {
        Rotation((360 - self.0) % 360)
    }
}

impl fmt::Display for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An absolute heading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u16", try_from = "u16")]
pub struct Direction(Rotation);

impl Direction {
    pub const RIGHT: Direction = Direction(Rotation::R0);
    pub const UP: Direction = Direction(Rotation::R90);
    pub const LEFT: Direction = Direction(Rotation::R180);
    pub const DOWN: Direction = Direction(Rotation::R270);
    pub const ALL: [Direction; 4] = [Self::RIGHT, Self::UP, Self::LEFT, Self::DOWN];

    pub fn new(angle: Rotation) -> Direction {
        Direction(angle)
    }

    pub fn angle(self) -> Rotation {
        self.0
    }

    pub fn degrees(self) -> u16 {
        self.0.degrees()
    }

    pub fn rotated(self, r: Rotation) -> Direction {
        Direction(self.0 + r)
    }

    pub fn reversed(self) -> Direction {
        self.rotated(Rotation::R180)
    }

    /// Unit grid step taken when moving along this heading.
    pub fn step(self) -> (i64, i64) {
        self.0.apply(1, 0)
    }

    pub fn from_step(dx: i64, dy: i64) -> Option<Direction> {
        match (dx, dy) {
            (1, 0) => Some(Self::RIGHT),
            (0, 1) => Some(Self::UP),
            (-1, 0) => Some(Self::LEFT),
            (0, -1) => Some(Self::DOWN),
            _ => None,
        }
    }
}

impl From<Direction> for u16 {
    fn from(d: Direction) -> u16 {
        d.degrees()
    }
}

impl TryFrom<u16> for Direction {
    type Error = String;
    fn try_from(v: u16) -> std::result::Result<Self, Self::Error> {
        match Rotation::checked(v as i64) {
            Some(r) if v < 360 => Ok(Direction(r)),
            _ => Err(format!("invalid heading {v}")),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The expansion code, 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Code {
    One,
    Two,
}

impl Code {
    pub const ALL: [Code; 2] = [Code::One, Code::Two];

    pub fn complement(self) -> Code {
        match self {
            Code::One => Code::Two,
            Code::Two => Code::One,
        }
    }

    pub fn value(self) -> u8 {
        match self {
            Code::One => 1,
            Code::Two => 2,
        }
    }

    pub fn from_value(v: u8) -> Option<Code> {
        match v {
            1 => Some(Code::One),
            2 => Some(Code::Two),
            _ => None,
        }
    }

    pub fn from_digit(c: char) -> Option<Code> {
        match c {
            '1' => Some(Code::One),
            '2' => Some(Code::Two),
            _ => None,
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// A base pattern together with its rotation, written `X^θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedBase {
    pub base: Base,
    pub rotation: Rotation,
}

impl OrientedBase {
    pub const fn new(base: Base, rotation: Rotation) -> OrientedBase {
        OrientedBase { base, rotation }
    }

    pub fn entry_dir(self) -> Option<Direction> {
        self.base.entry_heading().map(|d| d.rotated(self.rotation))
    }

    pub fn exit_dir(self) -> Option<Direction> {
        self.base.exit_heading().map(|d| d.rotated(self.rotation))
    }

    pub fn rotated(self, t: Rotation) -> OrientedBase {
        rotate_base(self, t)
    }

    pub fn reflected(self) -> OrientedBase {
        reflect_base(self)
    }

    pub fn reversed(self) -> OrientedBase {
        reverse_base(self)
    }

    /// All 36 oriented bases, grouped by base.
    pub fn all() -> impl Iterator<Item = OrientedBase> {
        Base::ALL.into_iter().flat_map(|b| {
            Rotation::ALL
                .into_iter()
                .map(move |r| OrientedBase::new(b, r))
        })
    }
}

impl From<Base> for OrientedBase {
    fn from(base: Base) -> Self {
        OrientedBase::new(base, Rotation::R0)
    }
}

impl fmt::Display for OrientedBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rotation == Rotation::R0 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{}^{}", self.base, self.rotation)
        }
    }
}

/// A cell of the 2x2 grid, lower-left is `(0, 0)`.
pub type Cell = (u8, u8);

fn rotate_cell((x, y): Cell, r: Rotation) -> Cell {
    let mut c = (x, y);
    for _ in 0..r.quarter_turns() {
        c = (1 - c.1, c.0);
    }
    c
}

/// The expansion of one oriented base under one code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Level1Unit {
    pub source: OrientedBase,
    pub code: Code,
    pub bases: [OrientedBase; 4],
    /// Grid cell of each base within the unit.
    pub cells: [Cell; 4],
}

impl Level1Unit {
    pub fn entry_dir(&self) -> Option<Direction> {
        self.bases[0].entry_dir()
    }

    pub fn exit_dir(&self) -> Option<Direction> {
        self.bases[3].exit_dir()
    }
}

/// Corner values of the entry and exit cells. Lower-left and upper-right
/// corners carry 1, lower-right and upper-left carry 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CornerTuple {
    pub entry: u8,
    pub exit: u8,
}

pub fn corner_value((x, y): Cell) -> u8 {
    if x == y {
        1
    } else {
        2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct RuleEntry {
    bases: [OrientedBase; 4],
    cells: [Cell; 4],
}

/// The 18 base-state level-1 units, indexed by base and code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleTable {
    entries: [[RuleEntry; 2]; 9],
}

impl RuleTable {
    /// Base-state expansion of `base` under `code`.
    pub fn get(&self, base: Base, code: Code) -> [OrientedBase; 4] {
        self.entries[base.index()][code.value() as usize - 1].bases
    }

    pub fn cells(&self, base: Base, code: Code) -> [Cell; 4] {
        self.entries[base.index()][code.value() as usize - 1].cells
    }

    /// All 18 base-state units.
    pub fn units(&self) -> Vec<Level1Unit> {
        Base::ALL
            .into_iter()
            .flat_map(|b| Code::ALL.into_iter().map(move |c| (b, c)))
            .map(|(b, c)| Level1Unit {
                source: b.into(),
                code: c,
                bases: self.get(b, c),
                cells: self.cells(b, c),
            })
            .collect()
    }
}

const PATHS_FROM: fn(Cell) -> [[Cell; 4]; 2] = |s| {
    let (x, y) = s;
    let h = (1 - x, y);
    let v = (x, 1 - y);
    let d = (1 - x, 1 - y);
    [[s, h, d, v], [s, v, d, h]]
};

fn heading_between(a: Cell, b: Cell) -> Direction {
    Direction::from_step(b.0 as i64 - a.0 as i64, b.1 as i64 - a.1 as i64)
        .expect("cells are adjacent")
}

fn inside((x, y): (i64, i64)) -> bool {
    (0..2).contains(&x) && (0..2).contains(&y)
}

fn primary_from_turn(entry: Direction, exit: Direction) -> Option<OrientedBase> {
    let base = match (exit.angle() - entry.angle()).degrees() {
        0 => Base::I,
        270 => Base::R,
        90 => Base::L,
        _ => return None,
    };
    Some(OrientedBase::new(base, entry.angle() - Rotation::R90))
}

fn start_cell(base: Base, code: Code) -> Cell {
    match (base, code) {
        (Base::D, Code::One) => (1, 1),
        (Base::D, Code::Two) => (0, 1),
        (_, Code::One) => (0, 0),
        (_, Code::Two) => (1, 0),
    }
}

/// All traversals of the 2x2 grid that realize `base` under `code`.
pub fn rule_candidates(base: Base, code: Code) -> Vec<[OrientedBase; 4]> {
    let mut out = Vec::new();
    for cells in PATHS_FROM(start_cell(base, code)) {
        let closure = heading_between(cells[3], cells[0]);
        let entry = base.entry_heading().unwrap_or(closure);
        let exit = base.exit_heading().unwrap_or(closure);
        if base.entry_heading().is_some() {
            let (dx, dy) = entry.step();
            if inside((cells[0].0 as i64 - dx, cells[0].1 as i64 - dy)) {
                continue;
            }
        }
        if base.exit_heading().is_some() {
            let (dx, dy) = exit.step();
            if inside((cells[3].0 as i64 + dx, cells[3].1 as i64 + dy)) {
                continue;
            }
        }
        let mut headings = [entry; 5];
        for i in 0..3 {
            headings[i + 1] = heading_between(cells[i], cells[i + 1]);
        }
        headings[4] = exit;
        let bases: Option<Vec<_>> = (0..4)
            .map(|i| primary_from_turn(headings[i], headings[i + 1]))
            .collect();
        if let Some(b) = bases {
            out.push([b[0], b[1], b[2], b[3]]);
        }
    }
    out
}

fn cells_of(base: Base, code: Code, bases: &[OrientedBase; 4]) -> [Cell; 4] {
    let mut cells = [start_cell(base, code); 4];
    for i in 1..4 {
        let (dx, dy) = bases[i - 1].exit_dir().expect("primary").step();
        cells[i] = (
            (cells[i - 1].0 as i64 + dx) as u8,
            (cells[i - 1].1 as i64 + dy) as u8,
        );
    }
    cells
}

/// Derives the rule table by searching the 2x2 traversals.
///
/// Bases with a closed slot admit two traversals; P keeps the one that
/// turns first, Q the one that starts straight, and C the one that leaves
/// its first cell upward.
pub fn build_rule_table() -> Result<RuleTable> {
    let blank = RuleEntry {
        bases: [OrientedBase::new(Base::I, Rotation::R0); 4],
        cells: [(0, 0); 4],
    };
    let mut entries = [[blank; 2]; 9];
    for base in Base::ALL {
        for code in Code::ALL {
            let mut found = rule_candidates(base, code);
            if found.len() == 2 {
                found.retain(|c| match base {
                    Base::P => c[0].base != Base::I,
                    Base::Q => c[0].base == Base::I,
                    Base::C => cells_of(base, code, c)[1].1 == 1,
                    _ => true,
                });
            }
            if found.len() != 1 {
                return Err(Error::RuleDerivation {
                    base,
                    code: code.value(),
                    candidates: found.len(),
                });
            }
            let bases = found[0];
            entries[base.index()][code.value() as usize - 1] = RuleEntry {
                bases,
                cells: cells_of(base, code, &bases),
            };
        }
    }
    Ok(RuleTable { entries })
}

/// The frozen rule table shared by the whole crate.
pub fn rule_table() -> &'static RuleTable {
    static TABLE: OnceLock<RuleTable> = OnceLock::new();
    TABLE.get_or_init(|| build_rule_table().expect("rule table derivation"))
}

pub fn rotate_base(b: OrientedBase, t: Rotation) -> OrientedBase {
    OrientedBase::new(b.base, b.rotation + t)
}

/// Looks up the expansion of `b` under `c`, rotated into place.
pub fn expand_base(b: OrientedBase, c: Code) -> Level1Unit {
    let table = rule_table();
    let mut bases = table.get(b.base, c);
    let mut cells = table.cells(b.base, c);
    for i in 0..4 {
        bases[i] = bases[i].rotated(b.rotation);
        cells[i] = rotate_cell(cells[i], b.rotation);
    }
    Level1Unit {
        source: b,
        code: c,
        bases,
        cells,
    }
}

/// Code of the next base in a sequence.
pub fn next_code(prev_base: Base, prev_code: Code) -> Result<Code> {
    match prev_base {
        Base::I | Base::U | Base::B | Base::D => Ok(prev_code),
        Base::R | Base::L => Ok(prev_code.complement()),
        Base::C => Err(Error::SingletonC { index: 0 }),
        Base::P | Base::Q => Err(Error::NoSuccessor(prev_base)),
    }
}

/// Rotation of the next base in a sequence.
pub fn next_rotation(prev: OrientedBase) -> Result<Rotation> {
    let t = prev.rotation;
    match prev.base {
        Base::I | Base::B | Base::D => Ok(t),
        Base::R => Ok(t - Rotation::R90),
        Base::L => Ok(t + Rotation::R90),
        Base::U => Ok(t + Rotation::R180),
        b => Err(Error::NoSuccessor(b)),
    }
}

pub fn corner_tuple(u: &Level1Unit) -> CornerTuple {
    let (a, b) = match u.code {
        Code::One => (1, 2),
        Code::Two => (2, 1),
    };
    if u.source.rotation.is_odd() {
        CornerTuple { entry: b, exit: a }
    } else {
        CornerTuple { entry: a, exit: b }
    }
}

/// Horizontal reflection of a single base.
pub fn reflect_base(b: OrientedBase) -> OrientedBase {
    let base = match b.base {
        Base::R => Base::L,
        Base::L => Base::R,
        other => other,
    };
    let alpha = if b.rotation.is_odd() {
        Rotation::R180
    } else {
        Rotation::R0
    };
    OrientedBase::new(base, b.rotation + alpha)
}

/// Reversal of a single base: swaps its entry and exit.
pub fn reverse_base(b: OrientedBase) -> OrientedBase {
    let (base, r) = match b.base {
        Base::I => (Base::I, Rotation::R180),
        Base::R => (Base::L, Rotation::R90),
        Base::L => (Base::R, Rotation::R270),
        Base::U => (Base::U, Rotation::R0),
        Base::B => (Base::P, Rotation::R180),
        Base::D => (Base::Q, Rotation::R180),
        Base::P => (Base::B, Rotation::R180),
        Base::Q => (Base::D, Rotation::R180),
        Base::C => (Base::C, Rotation::R0),
    };
    OrientedBase::new(base, r + b.rotation)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ob(b: Base, r: i64) -> OrientedBase {
        OrientedBase::new(b, Rotation::new(r))
    }

    #[test]
    fn rotation_wraps() {
        assert_eq!(rotate_base(ob(Base::L, 270), Rotation::R90), ob(Base::L, 0));
        assert_eq!(Rotation::new(-90), Rotation::R270);
        assert_eq!(Rotation::checked(45), None);
    }

    #[test]
    fn i_code_one() {
        let u = expand_base(ob(Base::I, 0), Code::One);
        assert_eq!(
            u.bases,
            [
                ob(Base::R, 0),
                ob(Base::L, 270),
                ob(Base::L, 0),
                ob(Base::R, 90)
            ]
        );
    }

    #[test]
    fn cells_follow_bases() {
        for b in OrientedBase::all() {
            for c in Code::ALL {
                let u = expand_base(b, c);
                for i in 0..3 {
                    let (dx, dy) = u.bases[i].exit_dir().unwrap().step();
                    assert_eq!(
                        (u.cells[i].0 as i64 + dx, u.cells[i].1 as i64 + dy),
                        (u.cells[i + 1].0 as i64, u.cells[i + 1].1 as i64)
                    );
                }
            }
        }
    }

    #[test]
    fn closed_slots_have_two_traversals() {
        for b in [Base::P, Base::Q, Base::C] {
            assert_eq!(rule_candidates(b, Code::One).len(), 2);
        }
        for b in [Base::I, Base::R, Base::L, Base::U, Base::B, Base::D] {
            assert_eq!(rule_candidates(b, Code::Two).len(), 1);
        }
    }
}
