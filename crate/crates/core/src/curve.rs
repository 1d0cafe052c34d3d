//! Seeds, code sequences and the `seed|codes` encoding of a curve.

use std::collections::HashSet;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grammar::{expand_base, next_code, next_rotation, Base, Code, OrientedBase, Rotation};

/// Default cap on the expansion level for materialized sequences.
pub const DEFAULT_MAX_LEVEL: usize = 12;

/// A validated seed sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seed {
    bases: Vec<OrientedBase>,
}

impl Seed {
    /// Single-base seeds are always valid.
    pub fn single(b: OrientedBase) -> Seed {
        Seed { bases: vec![b] }
    }

    /// Validates an explicit list of oriented bases, including the rotation chain.
    pub fn from_bases(bases: Vec<OrientedBase>) -> Result<Seed> {
        if bases.is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "empty seed".into(),
            });
        }
        let tokens: Vec<Base> = bases.iter().map(|b| b.base).collect();
        let seed = validate_seed(&tokens, bases[0].rotation)?;
        for (i, (a, b)) in seed.bases.iter().zip(&bases).enumerate() {
            if a != b {
                return Err(Error::Disconnected { index: i });
            }
        }
        Ok(seed)
    }

    pub fn bases(&self) -> &[OrientedBase] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn first(&self) -> OrientedBase {
        self.bases[0]
    }

    pub fn last(&self) -> OrientedBase {
        self.bases[self.bases.len() - 1]
    }

    pub fn rotation(&self) -> Rotation {
        self.bases[0].rotation
    }

    /// Unit-grid cells of the seed path, starting at the origin.
    pub fn cells(&self) -> Vec<(i64, i64)> {
        seed_cells(&self.bases)
    }
}

fn seed_cells(bases: &[OrientedBase]) -> Vec<(i64, i64)> {
    let mut out = Vec::with_capacity(bases.len());
    let mut p = (0i64, 0i64);
    for b in bases {
        out.push(p);
        if let Some(d) = b.exit_dir() {
            let (dx, dy) = d.step();
            p = (p.0 + dx, p.1 + dy);
        }
    }
    out
}

/// Builds a seed from base symbols and the rotation of the first one.
pub fn validate_seed(tokens: &[Base], first_rotation: Rotation) -> Result<Seed> {
    let n = tokens.len();
    if n == 0 {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty seed".into(),
        });
    }
    if n > 1 {
        if let Some(i) = tokens.iter().position(|&b| b == Base::C) {
            return Err(Error::SingletonC { index: i });
        }
        for (i, &b) in tokens.iter().enumerate() {
            let (first, last) = (i == 0, i == n - 1);
            let reason = match b {
                Base::U if !first && !last => Some("U must be first or last"),
                Base::B | Base::D if !first => Some("B and D must be first"),
                Base::P | Base::Q if !last => Some("P and Q must be last"),
                _ => None,
            };
            if let Some(reason) = reason {
                return Err(Error::Position {
                    index: i,
                    base: b,
                    reason,
                });
            }
        }
    }
    let mut bases = Vec::with_capacity(n);
    bases.push(OrientedBase::new(tokens[0], first_rotation));
    for &b in &tokens[1..] {
        let r = next_rotation(*bases.last().unwrap())?;
        bases.push(OrientedBase::new(b, r));
    }
    let mut seen = HashSet::with_capacity(n);
    for (i, c) in seed_cells(&bases).into_iter().enumerate() {
        if !seen.insert(c) {
            return Err(Error::SelfIntersection { index: i });
        }
    }
    Ok(Seed { bases })
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.bases.iter().enumerate() {
            if i == 0 {
                write!(f, "{b}")?;
            } else {
                write!(f, "{}", b.base)?;
            }
        }
        Ok(())
    }
}

/// Expansion codes, outermost level first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CodeSequence(pub Vec<Code>);

impl CodeSequence {
    pub fn new(codes: Vec<Code>) -> Self {
        CodeSequence(codes)
    }

    /// `k` copies of one code.
    pub fn constant(code: Code, k: usize) -> Self {
        CodeSequence(vec![code; k])
    }

    pub fn complement(&self) -> Self {
        CodeSequence(self.0.iter().map(|c| c.complement()).collect())
    }

    pub fn tail(&self, from: usize) -> Self {
        CodeSequence(self.0[from.min(self.0.len())..].to_vec())
    }

    pub fn truncated(&self, len: usize) -> Self {
        CodeSequence(self.0[..len.min(self.0.len())].to_vec())
    }

    pub fn integer(&self) -> u64 {
        integer_rep(self).delta
    }

    /// Every sequence of length `k`, in increasing integer order.
    pub fn all(k: usize) -> impl Iterator<Item = CodeSequence> {
        (1..=(1u64 << k))
            .map(move |d| codes_from_integer(IntegerRep { delta: d, level: k }).expect("in range"))
    }
}

impl Deref for CodeSequence {
    type Target = [Code];
    fn deref(&self) -> &[Code] {
        &self.0
    }
}

impl fmt::Display for CodeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for CodeSequence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, c)| {
                Code::from_digit(c).ok_or_else(|| Error::Parse {
                    pos: i,
                    msg: format!("expected 1 or 2, found {c:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(CodeSequence)
    }
}

/// A curve: seed plus expansion codes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveEncoding {
    pub seed: Seed,
    pub codes: CodeSequence,
}

impl CurveEncoding {
    pub fn new(seed: Seed, codes: CodeSequence) -> Self {
        CurveEncoding { seed, codes }
    }

    pub fn single(base: OrientedBase, codes: CodeSequence) -> Self {
        CurveEncoding::new(Seed::single(base), codes)
    }

    pub fn level(&self) -> usize {
        self.codes.len()
    }

    pub fn is_single_base(&self) -> bool {
        self.seed.len() == 1
    }

    /// Number of points of the expanded curve.
    pub fn point_count(&self) -> u64 {
        (self.seed.len() as u64) << (2 * self.level())
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.parse()
    }
}

impl fmt::Display for CurveEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.seed, self.codes)
    }
}

impl FromStr for CurveEncoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (seed_part, code_part, bar) = match s.find('|') {
            Some(i) => (&s[..i], &s[i + 1..], i + 1),
            None => (s, "", s.len()),
        };
        let chars: Vec<char> = seed_part.chars().collect();
        let mut tokens = Vec::new();
        let mut rotation = Rotation::R0;
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let base = Base::from_symbol(c).ok_or_else(|| Error::Parse {
                pos: i,
                msg: format!("unknown base {c:?}"),
            })?;
            tokens.push(base);
            i += 1;
            if i < chars.len() && chars[i] == '^' {
                if tokens.len() > 1 {
                    return Err(Error::Parse {
                        pos: i,
                        msg: "rotation is only allowed on the first base".into(),
                    });
                }
                let start = i + 1;
                let mut end = start;
                while end < chars.len() && (chars[end].is_ascii_digit() || chars[end] == '-') {
                    end += 1;
                }
                let text: String = chars[start..end].iter().collect();
                let deg: i64 = text.parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: format!("invalid rotation {text:?}"),
                })?;
                if !matches!(deg, 0 | 90 | 180 | 270) {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("rotation must be 0, 90, 180 or 270, got {deg}"),
                    });
                }
                rotation = Rotation::new(deg);
                i = end;
            }
        }
        if tokens.is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "empty seed".into(),
            });
        }
        let codes: CodeSequence = code_part.parse().map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse {
                pos: pos + bar,
                msg,
            },
            e => e,
        })?;
        Ok(CurveEncoding::new(validate_seed(&tokens, rotation)?, codes))
    }
}

/// A fully expanded curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseSequence {
    pub bases: Vec<OrientedBase>,
}

impl BaseSequence {
    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, OrientedBase> {
        self.bases.iter()
    }

    /// Compact text form, e.g. `R^90LLRI`.
    pub fn symbols(&self) -> String {
        let mut s = String::with_capacity(self.bases.len());
        for (i, b) in self.bases.iter().enumerate() {
            if i == 0 {
                s.push_str(&b.to_string());
            } else {
                s.push(b.base.symbol());
            }
        }
        s
    }
}

impl Deref for BaseSequence {
    type Target = [OrientedBase];
    fn deref(&self) -> &[OrientedBase] {
        &self.bases
    }
}

/// Per-base codes for one expansion step.
pub fn expansion_path(bases: &[OrientedBase], first_code: Code) -> Result<Vec<Code>> {
    let mut out = Vec::with_capacity(bases.len());
    let mut c = first_code;
    for (i, b) in bases.iter().enumerate() {
        out.push(c);
        if i + 1 < bases.len() {
            c = next_code(b.base, c)?;
        }
    }
    Ok(out)
}

/// Expands every base of `bases` once, starting with `first_code`.
pub fn expand_once(bases: &[OrientedBase], first_code: Code) -> Result<Vec<OrientedBase>> {
    let path = expansion_path(bases, first_code)?;
    let mut out = Vec::with_capacity(bases.len() * 4);
    for (b, c) in bases.iter().zip(path) {
        out.extend_from_slice(&expand_base(*b, c).bases);
    }
    Ok(out)
}

pub fn expand(e: &CurveEncoding) -> Result<BaseSequence> {
    expand_with_limit(e, DEFAULT_MAX_LEVEL)
}

pub fn expand_with_limit(e: &CurveEncoding, max_level: usize) -> Result<BaseSequence> {
    if e.level() > max_level {
        return Err(Error::LevelTooLarge {
            level: e.level(),
            max: max_level,
        });
    }
    let mut bases = e.seed.bases().to_vec();
    for &c in e.codes.iter() {
        bases = expand_once(&bases, c)?;
    }
    Ok(BaseSequence { bases })
}

/// Complements `codes` when the rotation difference is 90 or 270.
pub fn s(codes: &CodeSequence, delta: Rotation) -> CodeSequence {
    if delta.is_odd() {
        codes.complement()
    } else {
        codes.clone()
    }
}

fn successor_codes(prev: Base, codes: &CodeSequence) -> CodeSequence {
    match prev {
        Base::R | Base::L => codes.complement(),
        Base::D => {
            let mut out = codes.complement();
            if let Some(first) = out.0.first_mut() {
                *first = first.complement();
            }
            out
        }
        _ => codes.clone(),
    }
}

/// Full code sequence of seed base `i` (1-based) without expanding.
pub fn code_sequence_for_base(e: &CurveEncoding, i: usize) -> Result<CodeSequence> {
    let n = e.seed.len();
    if i < 1 || i > n {
        return Err(Error::OutOfRange {
            what: "seed index",
            value: i as i64,
            min: 1,
            max: n as i64,
        });
    }
    let mut codes = e.codes.clone();
    for b in &e.seed.bases()[..i - 1] {
        codes = successor_codes(b.base, &codes);
    }
    Ok(codes)
}

/// The integer form of a code sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct IntegerRep {
    pub delta: u64,
    pub level: usize,
}

pub fn integer_rep(c: &CodeSequence) -> IntegerRep {
    let k = c.len();
    let delta = 1 + c
        .iter()
        .enumerate()
        .map(|(i, p)| ((p.value() - 1) as u64) << (k - 1 - i))
        .sum::<u64>();
    IntegerRep { delta, level: k }
}

pub fn codes_from_integer(r: IntegerRep) -> Result<CodeSequence> {
    let max = 1u64 << r.level;
    if r.delta < 1 || r.delta > max {
        return Err(Error::OutOfRange {
            what: "integer representation",
            value: r.delta as i64,
            min: 1,
            max: max as i64,
        });
    }
    let m = r.delta - 1;
    Ok(CodeSequence(
        (0..r.level)
            .map(|i| {
                if (m >> (r.level - 1 - i)) & 1 == 1 {
                    Code::Two
                } else {
                    Code::One
                }
            })
            .collect(),
    ))
}

/// Merges the first `i` expansions into the seed.
pub fn reassociate(e: &CurveEncoding, i: usize) -> Result<CurveEncoding> {
    if i > e.level() {
        return Err(Error::OutOfRange {
            what: "level",
            value: i as i64,
            min: 0,
            max: e.level() as i64,
        });
    }
    if i == 0 {
        return Ok(e.clone());
    }
    let head = CurveEncoding::new(e.seed.clone(), e.codes.truncated(i));
    let bases = expand(&head)?.bases;
    Ok(CurveEncoding::new(
        Seed::from_bases(bases)?,
        e.codes.tail(i),
    ))
}

/// The `q`-th subunit (1-based) of a single-base curve, one level down.
pub fn subunit(e: &CurveEncoding, q: usize) -> Result<CurveEncoding> {
    if !e.is_single_base() {
        return Err(Error::NotSingleBase);
    }
    if e.level() == 0 {
        return Err(Error::LevelTooSmall { level: 0, min: 1 });
    }
    if !(1..=4).contains(&q) {
        return Err(Error::OutOfRange {
            what: "quaternary digit",
            value: q as i64,
            min: 1,
            max: 4,
        });
    }
    let unit = expand_base(e.seed.first(), e.codes[0]);
    let z = unit.bases[q - 1];
    let codes = s(&e.codes.tail(1), z.rotation - unit.bases[0].rotation);
    Ok(CurveEncoding::single(z, codes))
}

/// Descends a quaternary path of subunits.
pub fn subunit_encoding(e: &CurveEncoding, path: &[usize]) -> Result<CurveEncoding> {
    if path.len() > e.level() {
        return Err(Error::OutOfRange {
            what: "path length",
            value: path.len() as i64,
            min: 0,
            max: e.level() as i64,
        });
    }
    let mut cur = e.clone();
    for &q in path {
        cur = subunit(&cur, q)?;
    }
    Ok(cur)
}

/// All `36 * 2^k` single-base encodings at level `k`.
pub fn all_single_base(k: usize) -> Vec<CurveEncoding> {
    let mut out = Vec::with_capacity(36 << k);
    for b in OrientedBase::all() {
        for codes in CodeSequence::all(k) {
            out.push(CurveEncoding::single(b, codes));
        }
    }
    out
}
