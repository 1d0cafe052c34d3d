#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use sfcurve::curve::{validate_seed, CodeSequence, CurveEncoding, Seed};
use sfcurve::grammar::{Base, Code, OrientedBase, Rotation};

/// Parses a run of oriented bases such as `R^90LL^90R^180`.
pub fn bases(s: &str) -> Vec<OrientedBase> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        let base = Base::from_symbol(c).unwrap_or_else(|| panic!("bad base {c}"));
        let mut deg = 0;
        if chars.peek() == Some(&'^') {
            chars.next();
            let mut d = String::new();
            while let Some(&n) = chars.peek().filter(|n| n.is_ascii_digit()) {
                d.push(n);
                chars.next();
            }
            deg = d.parse().unwrap();
        }
        out.push(OrientedBase::new(base, Rotation::new(deg)));
    }
    out
}

pub fn enc(s: &str) -> CurveEncoding {
    CurveEncoding::parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn random_codes(rng: &mut StdRng, k: usize) -> CodeSequence {
    CodeSequence((0..k).map(|_| Code::ALL[rng.gen_range(0..2)]).collect())
}

pub fn random_single(rng: &mut StdRng, k: usize) -> CurveEncoding {
    let b = OrientedBase::new(
        Base::ALL[rng.gen_range(0..9)],
        Rotation::ALL[rng.gen_range(0..4)],
    );
    CurveEncoding::single(b, random_codes(rng, k))
}

/// A valid seed of up to `max_len` bases, drawn by rejection.
pub fn random_seed(rng: &mut StdRng, max_len: usize) -> Seed {
    loop {
        let n = rng.gen_range(1..=max_len);
        let toks: Vec<Base> = (0..n).map(|_| Base::ALL[rng.gen_range(0..9)]).collect();
        if let Ok(s) = validate_seed(&toks, Rotation::ALL[rng.gen_range(0..4)]) {
            return s;
        }
    }
}

/// Half single-base, half multi-base encodings.
pub fn random_encoding(rng: &mut StdRng, k: usize) -> CurveEncoding {
    if rng.gen_bool(0.5) {
        random_single(rng, k)
    } else {
        CurveEncoding::new(random_seed(rng, 6), random_codes(rng, k))
    }
}
