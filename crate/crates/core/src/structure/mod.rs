//! Shape equivalence and structural classification of single-base curves.
//!
//! Shapes are compared up to rotation, reflection and reversal. The symbolic
//! rules here read only the encoding; [`geometric`] holds point-path oracles
//! for the same predicates.

pub mod geometric;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::curve::{expand, integer_rep, CodeSequence, CurveEncoding, IntegerRep};
use crate::error::{Error, Result};
use crate::grammar::{Base, Code};
use crate::transform::reduce;

/// How a curve's shape is induced from its level-1 structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Induced {
    Corner,
    Side,
}

/// Shape class of a curve: the group and, for side-induced curves, the
/// normalized tail `ω` as an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ShapeGroup {
    pub induced: Induced,
    pub group: u8,
    pub delta: Option<IntegerRep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BetaOmegaKind {
    O,
    B1,
    B2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Taxonomy {
    Hilbert,
    /// Order-1 variants carry a subtype `1..=5`.
    HilbertVariant {
        order: usize,
        variant: Option<u8>,
    },
    BetaOmega(BetaOmegaKind),
    /// Order-1 variants carry a subtype `1..=9`.
    BetaOmegaVariant {
        order: usize,
        variant: Option<u8>,
    },
}

impl Taxonomy {
    pub fn family(self) -> &'static str {
        match self {
            Taxonomy::Hilbert => "hilbert",
            Taxonomy::HilbertVariant { .. } => "hilbert-variant",
            Taxonomy::BetaOmega(_) => "beta-omega",
            Taxonomy::BetaOmegaVariant { .. } => "beta-omega-variant",
        }
    }
}

impl fmt::Display for Taxonomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Taxonomy::Hilbert => write!(f, "Hilbert"),
            Taxonomy::HilbertVariant { order, variant } => {
                write!(f, "Hilbert variant order {order}")?;
                match variant {
                    Some(2) => write!(f, " V2 (Moore)"),
                    Some(v) => write!(f, " V{v}"),
                    None => Ok(()),
                }
            }
            Taxonomy::BetaOmega(k) => write!(f, "betaOmega {k:?}"),
            Taxonomy::BetaOmegaVariant { order, variant } => {
                write!(f, "betaOmega variant order {order}")?;
                match variant {
                    Some(v) => write!(f, " V{v}"),
                    None => Ok(()),
                }
            }
        }
    }
}

impl Serialize for Taxonomy {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Flags {
    pub recursive: bool,
    pub subunit_identical: bool,
    pub subunit_different: bool,
    pub completely_non_recursive: bool,
    pub symmetric_a: bool,
    pub symmetric_ab: bool,
    pub closed: bool,
}

impl Flags {
    pub fn names(&self) -> Vec<&'static str> {
        [
            (self.recursive, "recursive"),
            (self.subunit_identical, "subunit-identical"),
            (self.subunit_different, "subunit-different"),
            (self.completely_non_recursive, "completely-non-recursive"),
            (self.symmetric_a, "symmetric-A"),
            (self.symmetric_ab, "symmetric-AB"),
            (self.closed, "closed"),
        ]
        .into_iter()
        .filter_map(|(on, n)| on.then_some(n))
        .collect()
    }
}

/// Full classification report for one curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeClass {
    #[serde(serialize_with = "as_display")]
    pub encoding: CurveEncoding,
    pub induced: Induced,
    pub group: u8,
    pub delta: Option<IntegerRep>,
    pub taxonomy: Taxonomy,
    pub family: Option<u8>,
    pub flags: Flags,
}

fn as_display<S: Serializer, T: fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Tag shared by curves with partially identical shapes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupTag {
    /// Level-2 sets: groups {1, 2, 6} are set 1, groups {3, 4, 5} set 2.
    Level2(u8),
    /// `G(g, codes)` for levels from 3.
    Group { group: u8, codes: CodeSequence },
}

impl GroupTag {
    /// Level of the units that differ.
    pub fn unit_level(&self) -> usize {
        match self {
            GroupTag::Level2(_) => 1,
            GroupTag::Group { codes, .. } => codes.len(),
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTag::Level2(n) => write!(f, "L2({n})"),
            GroupTag::Group { group, codes } => write!(f, "G({group}, {codes})"),
        }
    }
}

fn check_single(e: &CurveEncoding, min: usize) -> Result<()> {
    if !e.is_single_base() {
        return Err(Error::NotSingleBase);
    }
    if e.level() < min {
        return Err(Error::LevelTooSmall {
            level: e.level(),
            min,
        });
    }
    Ok(())
}

fn is_constant(c: &[Code]) -> bool {
    c.windows(2).all(|w| w[0] == w[1])
}

fn is_alternating(c: &[Code]) -> bool {
    c.windows(2).all(|w| w[0] != w[1])
}

/// 1-based start of the longest suffix satisfying `pred`.
fn tail_start(c: &[Code], pred: fn(&[Code]) -> bool) -> usize {
    (0..c.len()).find(|&i| pred(&c[i..])).unwrap_or(c.len()) + 1
}

/// Corner-induced group of `X|π1(a)…` from the base and whether `π1 = a`.
pub fn corner_group(x: Base, first_matches: bool) -> u8 {
    use Base::*;
    match (x, first_matches) {
        (I | R | L | U, true) => 1,
        (B | P | Q, true) | (D, false) => 2,
        (U | Q, false) | (D | C, true) => 3,
        (R | L | B | P, false) => 4,
        (I, false) => 5,
        (C, false) => 6,
    }
}

/// Side-induced group of a base.
pub fn side_group(x: Base) -> u8 {
    use Base::*;
    match x {
        I => 1,
        R | L => 2,
        B | P => 3,
        U => 4,
        D | Q => 5,
        C => 6,
    }
}

pub fn is_corner_induced(e: &CurveEncoding) -> bool {
    e.level() < 2 || is_constant(&e.codes[1..])
}

pub fn shape_group(e: &CurveEncoding) -> Result<ShapeGroup> {
    check_single(e, 2)?;
    let x = e.seed.first().base;
    let c = &e.codes;
    if is_corner_induced(e) {
        return Ok(ShapeGroup {
            induced: Induced::Corner,
            group: corner_group(x, c[0] == c[1]),
            delta: None,
        });
    }
    let high_on_eq = matches!(x, Base::I | Base::R | Base::L | Base::B | Base::P);
    let omega: Vec<Code> = c[1..]
        .iter()
        .map(|&p| {
            let eq = (p == c[0]) != (x == Base::D);
            if eq == high_on_eq {
                Code::Two
            } else {
                Code::One
            }
        })
        .collect();
    Ok(ShapeGroup {
        induced: Induced::Side,
        group: side_group(x),
        delta: Some(integer_rep(&CodeSequence(omega))),
    })
}

/// Shape equality; symbolic for single-base curves from level 2, geometric otherwise.
pub fn same_shape(a: &CurveEncoding, b: &CurveEncoding) -> Result<bool> {
    if a.level() != b.level() {
        return Ok(false);
    }
    if a.level() < 2 && a.is_single_base() && b.is_single_base() {
        return Ok(true);
    }
    if a.is_single_base() && b.is_single_base() {
        return Ok(shape_group(a)? == shape_group(b)?);
    }
    geometric::same_shape_geometric(a, b)
}

/// Number of distinct shapes among single-base curves at level `k`.
pub fn count_shapes(k: usize) -> u64 {
    if k <= 1 {
        1
    } else {
        6 + 6 * ((1u64 << (k - 1)) - 2)
    }
}

/// Number of side-induced forms per level-2 shape group.
pub const H_G: [u64; 6] = [3, 2, 3, 2, 1, 1];

/// Shape and generation-path counts for one level-2 shape group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupCounts {
    pub group: u8,
    pub h_g: u64,
    pub shapes: u64,
    /// Hilbert-side path counts for `i = 1..`.
    pub hilbert_paths: Vec<u64>,
    /// βΩ-side path counts for `i = 1..`.
    pub beta_omega_paths: Vec<u64>,
}

impl GroupCounts {
    pub fn path_total(&self) -> u64 {
        self.hilbert_paths.iter().sum::<u64>() + self.beta_omega_paths.iter().sum::<u64>()
    }
}

pub fn hierarchical_shape_counts(k: usize) -> Result<Vec<GroupCounts>> {
    if k < 2 {
        return Err(Error::LevelTooSmall { level: k, min: 2 });
    }
    Ok(H_G
        .iter()
        .enumerate()
        .map(|(g, &h)| {
            let mut hilbert_paths = vec![1];
            let mut beta_omega_paths = Vec::new();
            if k >= 3 {
                beta_omega_paths.push(h);
            }
            for i in 2..=k.saturating_sub(2) {
                hilbert_paths.push(h << (i - 2));
                beta_omega_paths.push(h << (i - 2));
            }
            GroupCounts {
                group: g as u8 + 1,
                h_g: h,
                shapes: 1 + h * ((1u64 << (k - 2)) - 1),
                hilbert_paths,
                beta_omega_paths,
            }
        })
        .collect())
}

/// Same interior base sequence, ignoring the first and last base.
pub fn is_homogeneous(a: &CurveEncoding, b: &CurveEncoding) -> Result<bool> {
    let sa = expand(a)?;
    let sb = expand(b)?;
    if sa.len() != sb.len() {
        return Err(Error::Mismatch(format!(
            "{} bases vs {} bases",
            sa.len(),
            sb.len()
        )));
    }
    let n = sa.len();
    Ok(n <= 2 || sa[1..n - 1] == sb[1..n - 1])
}

/// Homogeneous family `1..=8` of a corner-induced curve.
pub fn homogeneous_family(e: &CurveEncoding) -> Option<u8> {
    if !e.is_single_base() || e.level() < 2 || !is_corner_induced(e) {
        return None;
    }
    use Base::*;
    let (p1, a) = (e.codes[0], e.codes[1]);
    let two = a == Code::Two;
    Some(match (e.seed.first().base, p1 == a) {
        (I | R | L | U, true) => 1,
        (P | Q, true) => 2,
        (C | D, true) => 3,
        (Q | U, false) => 3,
        (B, false) => 4,
        (R, false) => {
            if two {
                4
            } else {
                5
            }
        }
        (L, false) => {
            if two {
                5
            } else {
                4
            }
        }
        (P, false) => 5,
        (I, false) => 6,
        (B, true) | (D, false) => 7,
        (C, false) => 8,
    })
}

const KAPPA: [Code; 4] = [Code::Two, Code::Two, Code::One, Code::One];

/// Group tag of a side-induced curve whose leading constant run sits on a
/// corner-induced curve of groups 1 to 4.
pub fn partial_tag(e: &CurveEncoding) -> Option<GroupTag> {
    if !e.is_single_base() || e.level() < 2 {
        return None;
    }
    if e.level() == 2 {
        let g = shape_group(e).ok()?.group;
        return Some(GroupTag::Level2(if matches!(g, 1 | 2 | 6) { 1 } else { 2 }));
    }
    let c = &e.codes;
    let k = c.len();
    let a = c[1];
    let m = (1..k).take_while(|&i| c[i] == a).count() + 1;
    if m >= k {
        return None;
    }
    let g = corner_group(e.seed.first().base, c[0] == a);
    if g > 4 {
        return None;
    }
    let kappa = KAPPA[g as usize - 1];
    let tail = c.tail(m + 1);
    let tail = if a == kappa { tail } else { tail.complement() };
    let mut codes = vec![kappa.complement()];
    codes.extend(tail.iter());
    Some(GroupTag::Group {
        group: g,
        codes: CodeSequence(codes),
    })
}

/// Tag shared by two curves whose shapes differ only in their first and/or
/// last units.
pub fn partially_identical(a: &CurveEncoding, b: &CurveEncoding) -> Result<Option<GroupTag>> {
    if a.level() != b.level() {
        return Ok(None);
    }
    let (ta, tb) = (partial_tag(a), partial_tag(b));
    if ta.is_some() && ta == tb && !same_shape(a, b)? {
        return Ok(ta);
    }
    Ok(None)
}

/// Level-2 shapes differ and the tails switch between Hilbert and β/Ω units
/// in opposite places.
pub fn completely_distinct(a: &CurveEncoding, b: &CurveEncoding) -> Result<bool> {
    check_single(a, 2)?;
    check_single(b, 2)?;
    let k = a.level();
    if b.level() != k {
        return Ok(false);
    }
    if shape_group(&reduce(a, k - 2)?)? == shape_group(&reduce(b, k - 2)?)? {
        return Ok(false);
    }
    let (p, s) = (&a.codes, &b.codes);
    Ok((2..k).all(|i| (p[i] == p[i - 1]) != (s[i] == s[i - 1])))
}

pub fn classify_taxonomy(e: &CurveEncoding) -> Result<Taxonomy> {
    check_single(e, 2)?;
    let x = e.seed.first().base;
    let c = &e.codes;
    let k = c.len();
    use Base::*;
    if k == 2 {
        let g = shape_group(e)?.group;
        return Ok(match g {
            1 => Taxonomy::Hilbert,
            2 => Taxonomy::HilbertVariant {
                order: 1,
                variant: Some(1),
            },
            3 => Taxonomy::HilbertVariant {
                order: 1,
                variant: Some(2),
            },
            6 => Taxonomy::HilbertVariant {
                order: 1,
                variant: Some(5),
            },
            5 => Taxonomy::BetaOmega(BetaOmegaKind::O),
            _ if matches!(x, R | L) => Taxonomy::BetaOmega(BetaOmegaKind::B1),
            _ => Taxonomy::BetaOmega(BetaOmegaKind::B2),
        });
    }
    if c[k - 2] == c[k - 1] {
        let t = tail_start(c, is_constant);
        if t == 1 && matches!(x, I | R | L | U) {
            return Ok(Taxonomy::Hilbert);
        }
        let order = t.saturating_sub(1).max(1);
        let variant =
            (order == 1).then(|| match shape_group(&reduce(e, k - 2).ok()?).ok()?.group {
                2 => Some(1),
                3 => Some(2),
                4 => Some(3),
                5 => Some(4),
                6 => Some(5),
                _ => None,
            });
        return Ok(Taxonomy::HilbertVariant {
            order,
            variant: variant.flatten(),
        });
    }
    let t = tail_start(c, is_alternating);
    if t >= 2 || matches!(x, U | D | Q | C) {
        let order = t.saturating_sub(1).max(1);
        let variant = (order == 1).then(|| {
            let eq2 = (c[1] == c[0]) != (x == D);
            match x {
                I => 1,
                R | L => 2,
                B | P => 3,
                U => {
                    if eq2 {
                        4
                    } else {
                        7
                    }
                }
                Q | D => {
                    if eq2 {
                        5
                    } else {
                        8
                    }
                }
                C => {
                    if eq2 {
                        6
                    } else {
                        9
                    }
                }
            }
        });
        return Ok(Taxonomy::BetaOmegaVariant { order, variant });
    }
    Ok(Taxonomy::BetaOmega(match x {
        I => BetaOmegaKind::O,
        R | L => BetaOmegaKind::B1,
        _ => BetaOmegaKind::B2,
    }))
}

pub fn structural_flags(e: &CurveEncoding) -> Result<Flags> {
    check_single(e, 2)?;
    let x = e.seed.first().base;
    let c = &e.codes;
    let k = c.len();
    use Base::*;
    let all_same = is_constant(c);
    let head_then_flip = is_constant(&c[1..]) && c[0] != c[1];
    let code_str = c.to_string();
    let recursive = classify_taxonomy(e)? == Taxonomy::Hilbert
        || (matches!(x, B | P) && (code_str == "121" || code_str == "212"));
    let side = !is_corner_induced(e);
    let (subunit_identical, subunit_different) = if k >= 3 {
        (
            !side || matches!(x, I | B | P | C),
            c[1] != c[2] && matches!(x, R | L | U | D | Q),
        )
    } else {
        (false, false)
    };
    let completely_non_recursive = k >= 3
        && match x {
            U | D | Q => c[1] != c[2],
            R | L => non_recursive_rl(c),
            _ => false,
        };
    let symmetric_a = match x {
        I | U | C => true,
        R | L | D => all_same,
        Q => head_then_flip,
        B | P => false,
    };
    let symmetric_ab = match x {
        C => true,
        D => all_same,
        U | Q => head_then_flip,
        _ => false,
    };
    let closed = symmetric_ab;
    Ok(Flags {
        recursive,
        subunit_identical,
        subunit_different,
        completely_non_recursive,
        symmetric_a,
        symmetric_ab,
        closed,
    })
}

fn non_recursive_rl(c: &[Code]) -> bool {
    c[0] == c[1] && c[1] != c[2]
}

pub fn classify(e: &CurveEncoding) -> Result<ShapeClass> {
    let g = shape_group(e)?;
    Ok(ShapeClass {
        encoding: e.clone(),
        induced: g.induced,
        group: g.group,
        delta: g.delta,
        taxonomy: classify_taxonomy(e)?,
        family: homogeneous_family(e),
        flags: structural_flags(e)?,
    })
}
