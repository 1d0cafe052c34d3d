//! Rotation, reflection, reversal and reduction of curves, plus recovery of
//! an encoding from a bare walk.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::curve::{expand, CodeSequence, CurveEncoding, Seed};
use crate::error::{Error, Result};
use crate::geometry::{coordinates, curve_path, Coord, PointPath};
use crate::grammar::{reflect_base, reverse_base, Base, Code, Direction, OrientedBase, Rotation};

pub fn rotate_curve(e: &CurveEncoding, t: Rotation) -> CurveEncoding {
    let bases = e.seed.bases().iter().map(|b| b.rotated(t)).collect();
    CurveEncoding::new(
        Seed::from_bases(bases).expect("rotation preserves seed validity"),
        e.codes.clone(),
    )
}

/// Horizontal reflection.
pub fn reflect_h_curve(e: &CurveEncoding) -> CurveEncoding {
    let bases = e.seed.bases().iter().map(|&b| reflect_base(b)).collect();
    CurveEncoding::new(
        Seed::from_bases(bases).expect("reflection preserves seed validity"),
        e.codes.complement(),
    )
}

/// Vertical reflection.
pub fn reflect_v_curve(e: &CurveEncoding) -> CurveEncoding {
    reflect_h_curve(&rotate_curve(e, Rotation::R180))
}

/// Reflection across the main diagonal.
pub fn reflect_d1_curve(e: &CurveEncoding) -> CurveEncoding {
    reflect_h_curve(&rotate_curve(e, Rotation::R90))
}

/// Reflection across the anti-diagonal.
pub fn reflect_dm1_curve(e: &CurveEncoding) -> CurveEncoding {
    reflect_h_curve(&rotate_curve(e, Rotation::R270))
}

fn keeps_tail(xn: Base, odd: bool) -> bool {
    match xn {
        Base::R | Base::L | Base::Q => !odd,
        Base::C => false,
        _ => odd,
    }
}

fn reversed_codes(seed: &Seed, codes: &CodeSequence) -> CodeSequence {
    let (x1, xn) = (seed.first(), seed.last());
    let odd = (xn.rotation - x1.rotation).is_odd();
    let turning = matches!(xn.base, Base::R | Base::L);
    let keep_first = turning != odd;
    let keep_rest = match x1.base {
        Base::C => false,
        Base::D => keeps_tail(xn.base, !odd),
        _ => keeps_tail(xn.base, odd),
    };
    CodeSequence(
        codes
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let keep = if i == 0 { keep_first } else { keep_rest };
                if keep {
                    c
                } else {
                    c.complement()
                }
            })
            .collect(),
    )
}

/// The same curve traversed from its exit to its entry.
pub fn reverse_curve(e: &CurveEncoding) -> CurveEncoding {
    let bases = e
        .seed
        .bases()
        .iter()
        .rev()
        .map(|&b| reverse_base(b))
        .collect();
    CurveEncoding::new(
        Seed::from_bases(bases).expect("reversal preserves seed validity"),
        reversed_codes(&e.seed, &e.codes),
    )
}

/// Drops the last `depth` expansion codes.
pub fn reduce(e: &CurveEncoding, depth: usize) -> Result<CurveEncoding> {
    if depth > e.level() {
        return Err(Error::OutOfRange {
            what: "reduction depth",
            value: depth as i64,
            min: 0,
            max: e.level() as i64,
        });
    }
    Ok(CurveEncoding::new(
        e.seed.clone(),
        e.codes.truncated(e.level() - depth),
    ))
}

/// A transformation that the command line can name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    Rotate(Rotation),
    ReflectH,
    ReflectV,
    ReflectD1,
    ReflectDm1,
    Reverse,
    Reduce(usize),
}

impl Transform {
    pub fn apply(self, e: &CurveEncoding) -> Result<CurveEncoding> {
        Ok(match self {
            Transform::Rotate(r) => rotate_curve(e, r),
            Transform::ReflectH => reflect_h_curve(e),
            Transform::ReflectV => reflect_v_curve(e),
            Transform::ReflectD1 => reflect_d1_curve(e),
            Transform::ReflectDm1 => reflect_dm1_curve(e),
            Transform::Reverse => reverse_curve(e),
            Transform::Reduce(i) => return reduce(e, i),
        })
    }
}

impl FromStr for Transform {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rot0" => Transform::Rotate(Rotation::R0),
            "rot90" => Transform::Rotate(Rotation::R90),
            "rot180" => Transform::Rotate(Rotation::R180),
            "rot270" => Transform::Rotate(Rotation::R270),
            "h" => Transform::ReflectH,
            "v" => Transform::ReflectV,
            "d1" => Transform::ReflectD1,
            "d-1" => Transform::ReflectDm1,
            "reverse" => Transform::Reverse,
            _ => match s.strip_prefix("reduce:") {
                Some(n) => Transform::Reduce(n.parse().map_err(|_| Error::Parse {
                    pos: 7,
                    msg: format!("invalid depth {n:?}"),
                })?),
                None => {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!("unknown transform {s:?}"),
                    })
                }
            },
        })
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::Rotate(r) => write!(f, "rot{r}"),
            Transform::ReflectH => write!(f, "h"),
            Transform::ReflectV => write!(f, "v"),
            Transform::ReflectD1 => write!(f, "d1"),
            Transform::ReflectDm1 => write!(f, "d-1"),
            Transform::Reverse => write!(f, "reverse"),
            Transform::Reduce(i) => write!(f, "reduce:{i}"),
        }
    }
}

/// Collapses every block of four points into one point.
///
/// Each block must fill a 2x2 square, and all squares must share one
/// alignment. The reduced point is the block's lower-left cell halved.
pub fn reduce_walk(path: &PointPath) -> Result<PointPath> {
    let pts = &path.points;
    if pts.is_empty() || !pts.len().is_multiple_of(4) {
        return Err(Error::NotAWalk(format!(
            "{} points is not a multiple of 4",
            pts.len()
        )));
    }
    if path.steps().is_none() {
        return Err(Error::NotAWalk("steps must have unit length".into()));
    }
    let mut parity = None;
    let mut out = Vec::with_capacity(pts.len() / 4);
    for (b, block) in pts.chunks(4).enumerate() {
        let lo = Coord::new(
            block.iter().map(|p| p.x).min().unwrap(),
            block.iter().map(|p| p.y).min().unwrap(),
        );
        let set: HashSet<Coord> = block.iter().copied().collect();
        let square = [(0, 0), (1, 0), (0, 1), (1, 1)]
            .iter()
            .all(|&(dx, dy)| set.contains(&(lo + Coord::new(dx, dy))));
        if !square {
            return Err(Error::NotAWalk(format!("block {b} is not a 2x2 square")));
        }
        let p = (lo.x.rem_euclid(2), lo.y.rem_euclid(2));
        if *parity.get_or_insert(p) != p {
            return Err(Error::NotAWalk(format!("block {b} is misaligned")));
        }
        out.push(Coord::new(lo.x.div_euclid(2), lo.y.div_euclid(2)));
    }
    let reduced = PointPath {
        points: out,
        entry_dir: path.entry_dir,
        exit_dir: path.exit_dir,
    };
    if reduced.steps().is_none() {
        return Err(Error::NotAWalk("reduced steps are not unit steps".into()));
    }
    Ok(reduced)
}

/// What is known about one end of a walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Port {
    Dir(Direction),
    Closed,
    Unknown,
}

impl Port {
    /// `None` is read as a closed end.
    pub fn from_option(d: Option<Direction>) -> Port {
        d.map_or(Port::Closed, Port::Dir)
    }

    fn options(self) -> Vec<Option<Direction>> {
        match self {
            Port::Dir(d) => vec![Some(d)],
            Port::Closed => vec![None],
            Port::Unknown => {
                let mut v: Vec<_> = Direction::ALL.iter().map(|&d| Some(d)).collect();
                v.push(None);
                v
            }
        }
    }
}

/// Result of [`infer_encoding`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inference {
    #[serde(serialize_with = "as_string")]
    pub encoding: CurveEncoding,
    /// Set when several encodings fit and the lexicographically smallest was chosen.
    pub ambiguous: bool,
    #[serde(serialize_with = "all_as_string")]
    pub candidates: Vec<CurveEncoding>,
    /// Smaller levels at which the walk also factors; each is a re-association of the result.
    pub alternative_levels: Vec<usize>,
}

fn as_string<S: serde::Serializer>(
    e: &CurveEncoding,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

fn all_as_string<S: serde::Serializer>(
    v: &[CurveEncoding],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|e| e.to_string()))
}

fn bases_for(inp: Option<Direction>, out: Option<Direction>) -> Vec<OrientedBase> {
    let up = Rotation::R90;
    match (inp, out) {
        (Some(i), Some(o)) => {
            let base = match (o.angle() - i.angle()).degrees() {
                0 => Base::I,
                90 => Base::L,
                180 => Base::U,
                _ => Base::R,
            };
            vec![OrientedBase::new(base, i.angle() - up)]
        }
        (None, Some(o)) => [Base::B, Base::D]
            .iter()
            .map(|&b| OrientedBase::new(b, o.angle() - up))
            .collect(),
        (Some(i), None) => [Base::P, Base::Q]
            .iter()
            .map(|&b| OrientedBase::new(b, i.angle() - up))
            .collect(),
        (None, None) => Rotation::ALL
            .iter()
            .map(|&r| OrientedBase::new(Base::C, r))
            .collect(),
    }
}

fn seed_candidates(walk: &PointPath, entry: Port, exit: Port) -> Vec<Seed> {
    let steps = walk.steps().unwrap_or_default();
    let n = walk.points.len();
    let mut out = Vec::new();
    for inp in entry.options() {
        for outp in exit.options() {
            let mut choices: Vec<Vec<OrientedBase>> = Vec::with_capacity(n);
            for i in 0..n {
                let a = if i == 0 { inp } else { Some(steps[i - 1]) };
                let b = if i + 1 == n { outp } else { Some(steps[i]) };
                choices.push(bases_for(a, b));
            }
            let mut seeds: Vec<Vec<OrientedBase>> = vec![Vec::with_capacity(n)];
            for c in &choices {
                seeds = seeds
                    .into_iter()
                    .flat_map(|s| {
                        c.iter().map(move |&b| {
                            let mut t = s.clone();
                            t.push(b);
                            t
                        })
                    })
                    .collect();
            }
            out.extend(seeds.into_iter().filter_map(|s| Seed::from_bases(s).ok()));
        }
    }
    out
}

fn matches_walk(e: &CurveEncoding, walk: &[Coord]) -> bool {
    match expand(e) {
        Ok(seq) => seq.len() == walk.len() && coordinates(&seq, walk[0]).points == walk,
        Err(_) => false,
    }
}

fn infer_at_level(walks: &[PointPath], k: usize, entry: Port, exit: Port) -> Vec<CurveEncoding> {
    let seeds = seed_candidates(&walks[k], entry, exit);
    let mut partial: Vec<CurveEncoding> = Vec::new();
    if k == 0 {
        partial = seeds
            .into_iter()
            .map(|s| CurveEncoding::new(s, CodeSequence::default()))
            .collect();
    } else {
        for seed in seeds {
            for c in Code::ALL {
                let e = CurveEncoding::new(seed.clone(), CodeSequence(vec![c]));
                if matches_walk(&e, &walks[k - 1].points) {
                    partial.push(e);
                }
            }
        }
        for i in 2..=k {
            let walk = &walks[k - i].points;
            let span = 1usize << (2 * i);
            let mut next = Vec::new();
            for e in &partial {
                for c in Code::ALL {
                    let mut codes = e.codes.clone();
                    codes.0.push(c);
                    let head = CurveEncoding::single(e.seed.first(), codes.clone());
                    if matches_walk(&head, &walk[..span]) {
                        next.push(CurveEncoding::new(e.seed.clone(), codes));
                    }
                }
            }
            partial = next;
        }
    }
    let origin = walks[0].points[0];
    let mut done: Vec<CurveEncoding> = partial
        .into_iter()
        .filter(|e| curve_path(e, origin).is_ok_and(|p| p.points == walks[0].points))
        .collect();
    done.sort_by_key(|e| e.to_string());
    done.dedup();
    done
}

/// Recovers the encoding of a walk, reducing as far as the walk allows.
pub fn infer_encoding(path: &PointPath, entry: Port, exit: Port) -> Result<Inference> {
    if path.points.is_empty() {
        return Err(Error::NotAWalk("empty walk".into()));
    }
    if path.steps().is_none() {
        return Err(Error::NotAWalk("steps must have unit length".into()));
    }
    let mut walks = vec![path.clone()];
    while walks.last().unwrap().points.len() % 4 == 0 {
        match reduce_walk(walks.last().unwrap()) {
            Ok(w) => walks.push(w),
            Err(_) => break,
        }
    }
    for k in (0..walks.len()).rev() {
        let found = infer_at_level(&walks, k, entry, exit);
        if let Some(first) = found.first() {
            return Ok(Inference {
                encoding: first.clone(),
                ambiguous: found.len() > 1,
                candidates: found.clone(),
                alternative_levels: (0..k).collect(),
            });
        }
    }
    Err(Error::NoMatch(format!(
        "no seed and code sequence reproduce the {}-point walk",
        path.points.len()
    )))
}
