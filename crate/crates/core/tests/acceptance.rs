mod common;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::SeedableRng;
use sfcurve::cli::{execute, Cli};
use sfcurve::curve::{all_single_base, expand, validate_seed, CurveEncoding};
use sfcurve::geometry::{
    bounding_box, coordinates, curve_path, index_at, index_of, locate_point, quadrant_table, Coord,
};
use sfcurve::grammar::{build_rule_table, rule_table, Base, Code, Direction, Rotation};
use sfcurve::structure::geometric::{
    closed_geometric, recursive_geometric, shape_signature, symmetric_a_geometric,
    symmetric_ab_geometric,
};
use sfcurve::structure::{classify_taxonomy, count_shapes, structural_flags, Taxonomy};
use sfcurve::transform::{infer_encoding, reduce, Port, Transform};

use clap::Parser;
use common::{bases, enc, random_encoding, random_single};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn within(t: Duration, limit: Duration) -> String {
    format!("{:.3?} (limit {:?})", t, limit)
}

fn cli(args: &[&str]) -> String {
    let mut argv = vec!["sfc"];
    argv.extend_from_slice(args);
    execute(&Cli::parse_from(argv)).unwrap_or_else(|f| panic!("{}", f.message))
}

fn worked_example() -> Outcome {
    let e = enc("B^270|1221");
    let _ = (rule_table(), quadrant_table());
    let t0 = Instant::now();
    let p = locate_point(&e, 158, Coord::new(0, 0)).unwrap();
    let t_locate = t0.elapsed();
    let bbox = (Coord::new(-7, -14), Coord::new(8, 1));
    let t1 = Instant::now();
    let n = index_of(&e, Coord::new(5, -12), bbox).unwrap();
    let t_index = t1.elapsed();

    let verbose = cli(&["locate", "B^270|1221", "158", "--entry", "0,0", "--verbose"]);
    let anchors: Vec<&str> = verbose
        .lines()
        .filter_map(|l| l.strip_prefix("anchor: "))
        .map(|l| l.split(' ').next().unwrap())
        .collect();
    let index_out = cli(&[
        "index",
        "B^270|1221",
        "5,-12",
        "--bbox",
        "-7,-14,8,1",
        "--verbose",
    ]);
    let ok = p == Coord::new(5, -12)
        && anchors[..3] == ["1,-13", "5,-13", "6,-12"]
        && verbose.trim_end().ends_with("5,-12")
        && n == 158
        && index_out.contains("digits: 3242")
        && index_out.trim_end().ends_with("158")
        && bounding_box(&e, Coord::new(0, 0)).unwrap() == bbox
        && t_locate < Duration::from_millis(1)
        && t_index < Duration::from_millis(1);
    outcome(
        ok,
        format!(
            "point {p}, anchors {anchors:?}, index {n}; locate {:?}, index {:?}",
            t_locate, t_index
        ),
    )
}

fn uniqueness() -> Outcome {
    let t = Instant::now();
    let mut ok = true;
    let mut detail = Vec::new();
    for (k, want) in [(3, 288), (4, 576)] {
        let all = all_single_base(k);
        let seqs: HashSet<_> = all.iter().map(|e| expand(e).unwrap().bases).collect();
        let paths: HashSet<_> = all
            .iter()
            .map(|e| curve_path(e, Coord::new(0, 0)).unwrap())
            .collect();
        ok &= all.len() == want && seqs.len() == want && paths.len() == want;
        detail.push(format!(
            "k={k}: {} encodings, {} sequences, {} paths",
            all.len(),
            seqs.len(),
            paths.len()
        ));
    }
    let el = t.elapsed();
    ok &= el < Duration::from_secs(5);
    outcome(
        ok,
        format!(
            "{}; {}",
            detail.join("; "),
            within(el, Duration::from_secs(5))
        ),
    )
}

/// Expected class sizes: corner groups, then per side-induced tail.
fn expected_sizes(k: usize) -> Vec<usize> {
    let mut v = vec![32, 32, 32, 32, 8, 8];
    let tails = (1usize << (k - 1)) - 2;
    for n in [8, 16, 16, 8, 16, 8] {
        v.extend(std::iter::repeat_n(n, tails));
    }
    v.sort_unstable();
    v
}

fn census() -> Outcome {
    let t = Instant::now();
    let mut ok = true;
    let mut detail = Vec::new();
    for k in 2..=4 {
        let mut classes: HashMap<Vec<u8>, usize> = HashMap::new();
        for e in all_single_base(k) {
            *classes.entry(shape_signature(&e).unwrap()).or_default() += 1;
        }
        let mut sizes: Vec<usize> = classes.values().copied().collect();
        sizes.sort_unstable();
        ok &= classes.len() as u64 == count_shapes(k) && sizes == expected_sizes(k);
        detail.push(format!("k={k}: {} classes", classes.len()));
    }
    let el = t.elapsed();
    ok &= el < Duration::from_secs(60);
    outcome(
        ok,
        format!(
            "{}; {}",
            detail.join(", "),
            within(el, Duration::from_secs(60))
        ),
    )
}

fn location_oracle() -> Outcome {
    let t = Instant::now();
    let mut rng = StdRng::seed_from_u64(4);
    let mut checked = 0u64;
    let mut bad = 0u64;
    for k in 1..=7 {
        for _ in 0..50 {
            let e = random_encoding(&mut rng, k);
            let entry = Coord::new(0, 0);
            let oracle = coordinates(&expand(&e).unwrap(), entry);
            for (i, &want) in oracle.points.iter().enumerate() {
                let n = i as u64 + 1;
                let got = locate_point(&e, n, entry).unwrap();
                checked += 1;
                if got != want || index_at(&e, got, entry).ok() != Some(n) {
                    bad += 1;
                }
            }
        }
    }
    let el = t.elapsed();
    let limit = Duration::from_secs(120);
    outcome(
        bad == 0 && el < limit,
        format!("{checked} indices, {bad} mismatches; {}", within(el, limit)),
    )
}

fn transform_consistency() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut bad = Vec::new();
    for i in 0..200 {
        let e = random_single(&mut rng, 1 + i % 5);
        let p = curve_path(&e, Coord::new(0, 0)).unwrap();
        for r in [Rotation::R90, Rotation::R180, Rotation::R270] {
            let q = p.rotated(r);
            let t = Transform::Rotate(r).apply(&e).unwrap();
            if curve_path(&t, q.points[0]).unwrap() != q {
                bad.push(format!("{e} {r}"));
            }
        }
        let m = p.mirrored();
        let h = Transform::ReflectH.apply(&e).unwrap();
        if curve_path(&h, m.points[0]).unwrap() != m {
            bad.push(format!("{e} h"));
        }
        let rv = p.reversed();
        let r = Transform::Reverse.apply(&e).unwrap();
        if curve_path(&r, rv.points[0]).unwrap() != rv {
            bad.push(format!("{e} reverse"));
        }
        for depth in 1..=e.level() {
            for t in [
                Transform::Rotate(Rotation::R90),
                Transform::ReflectH,
                Transform::Reverse,
            ] {
                let a = reduce(&t.apply(&e).unwrap(), depth).unwrap();
                let b = t.apply(&reduce(&e, depth).unwrap()).unwrap();
                if a != b {
                    bad.push(format!("{e} reduce {depth} {t}"));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("200 curves, failures {:?}", bad))
}

fn inference() -> Outcome {
    let mut bad = Vec::new();
    let all = all_single_base(4);
    for e in &all {
        let p = curve_path(e, Coord::new(0, 0)).unwrap();
        let inf = infer_encoding(
            &p,
            Port::from_option(p.entry_dir),
            Port::from_option(p.exit_dir),
        );
        match inf {
            Ok(i) if i.encoding == *e && !i.ambiguous => {}
            other => bad.push(format!("{e}: {:?}", other.map(|i| i.encoding.to_string()))),
        }
    }
    let sample = enc("R^90|12212");
    let p = curve_path(&sample, Coord::new(0, 0)).unwrap();
    let got = infer_encoding(
        &p,
        Port::from_option(p.entry_dir),
        Port::from_option(p.exit_dir),
    )
    .map(|i| i.encoding.to_string());
    let sample_ok = got.as_deref() == Ok("R^90|12212");
    outcome(
        bad.is_empty() && sample_ok,
        format!(
            "{} curves, {} failures, R^90|12212 -> {:?}",
            all.len(),
            bad.len(),
            got
        ),
    )
}

/// Expansions printed in the source material.
const GOLDEN: [(&str, &str); 11] = [
    ("R^90|1", "I^90R^90RL^270"),
    (
        "R^90|11",
        "R^90LL^90R^180I^90R^90RL^270LR^90RI^270R^270L^180L^270I",
    ),
    ("R|1", "IRR^270L^180"),
    ("I|1", "RL^270LR^90"),
    ("R|2", "LR^90RI^270"),
    ("L|1", "RL^270LI^90"),
    ("B^270|1", "L^90L^180L^270R"),
    ("L^270|2", "I^270L^270LR^90"),
    ("I^270|2", "L^270RR^270L^180"),
    ("I^90|1", "R^90LL^90R^180"),
    ("L^270|1", "R^270L^180L^270I"),
];

/// First bases of level-1 units listed with the homogeneous families.
const FIRST_BASES: [(&str, &str); 9] = [
    ("I^270|2", "L^270"),
    ("R^270|2", "L^270"),
    ("R|1", "I"),
    ("U|1", "I"),
    ("P^270|2", "L^270"),
    ("Q|1", "I"),
    ("C|1", "R^90"),
    ("D^180|1", "R^90"),
    ("B^270|2", "R^90"),
];

fn grammar() -> Outcome {
    let table = match build_rule_table() {
        Ok(t) => t,
        Err(e) => return outcome(false, format!("derivation failed: {e}")),
    };
    let units = table.units();
    let distinct: HashSet<_> = units.iter().map(|u| (u.bases, u.cells)).collect();
    let mut problems = Vec::new();
    for u in &units {
        let cells: HashSet<_> = u.cells.iter().collect();
        if cells.len() != 4 {
            problems.push(format!("{}{} repeats a cell", u.source, u.code));
        }
        for i in 0..3 {
            let (a, b) = (u.cells[i], u.cells[i + 1]);
            let step = Direction::from_step(b.0 as i64 - a.0 as i64, b.1 as i64 - a.1 as i64);
            if step.is_none() || u.bases[i].exit_dir() != step || u.bases[i + 1].entry_dir() != step
            {
                problems.push(format!("{}{} breaks at slot {}", u.source, u.code, i + 1));
            }
        }
        if let Some(d) = u.source.entry_dir() {
            if u.entry_dir() != Some(d) {
                problems.push(format!("{}{} entry", u.source, u.code));
            }
        }
        if let Some(d) = u.source.exit_dir() {
            if u.exit_dir() != Some(d) {
                problems.push(format!("{}{} exit", u.source, u.code));
            }
        }
    }
    let mut golden_bad = Vec::new();
    for (e, want) in GOLDEN {
        if expand(&enc(e)).unwrap().bases != bases(want) {
            golden_bad.push(e);
        }
    }
    for (e, first) in FIRST_BASES {
        if expand(&enc(e)).unwrap().bases[0] != bases(first)[0] {
            golden_bad.push(e);
        }
    }
    let spiral: Vec<Base> = "LLLILILIILIILIIILIIILIIII"
        .chars()
        .map(|c| Base::from_symbol(c).unwrap())
        .collect();
    let want = bases(
        "LL^90L^180I^270L^270ILI^90I^90L^90I^180I^180L^180I^270I^270I^270L^270IIILI^90I^90I^90I^90",
    );
    let spiral_ok = validate_seed(&spiral, Rotation::R0)
        .map(|s| s.bases() == want)
        .unwrap_or(false);
    let rows = GOLDEN.len() + FIRST_BASES.len() + 1;
    outcome(
        distinct.len() == 18 && problems.is_empty() && golden_bad.is_empty() && spiral_ok,
        format!(
            "{} distinct units, {} rule violations, {rows} golden rows, mismatches {:?}, spiral seed {}",
            distinct.len(),
            problems.len(),
            golden_bad,
            spiral_ok
        ),
    )
}

fn is_constant(c: &[Code]) -> bool {
    c.windows(2).all(|w| w[0] == w[1])
}

fn is_alternating(c: &[Code]) -> bool {
    c.windows(2).all(|w| w[0] != w[1])
}

/// Every reading of the four characterizations that applies to `e`.
fn readings(e: &CurveEncoding) -> Vec<Taxonomy> {
    let x = e.seed.first().base;
    let c = &e.codes[..];
    let k = c.len();
    let mut out = Vec::new();
    if is_constant(c) && matches!(x, Base::I | Base::R | Base::L | Base::U) {
        out.push(Taxonomy::Hilbert);
    }
    if is_alternating(c) && matches!(x, Base::I | Base::R | Base::L | Base::B | Base::P) {
        out.push(Taxonomy::BetaOmega(match x {
            Base::I => sfcurve::structure::BetaOmegaKind::O,
            Base::R | Base::L => sfcurve::structure::BetaOmegaKind::B1,
            _ => sfcurve::structure::BetaOmegaKind::B2,
        }));
    }
    for l in 1..=k.saturating_sub(2) {
        let tail = &c[l..];
        if is_constant(tail) {
            let a = tail[0];
            let fits = if l >= 2 {
                c[l - 1] != a
            } else {
                c[0] != a || matches!(x, Base::B | Base::D | Base::P | Base::Q | Base::C)
            };
            if fits {
                out.push(Taxonomy::HilbertVariant {
                    order: l,
                    variant: None,
                });
            }
        }
        if is_alternating(tail) {
            let a = tail[0];
            let fits = if l >= 2 {
                c[l - 1] == a
            } else {
                c[0] == a || matches!(x, Base::U | Base::D | Base::Q | Base::C)
            };
            if fits {
                out.push(Taxonomy::BetaOmegaVariant {
                    order: l,
                    variant: None,
                });
            }
        }
    }
    out
}

fn strip(t: Taxonomy) -> Taxonomy {
    match t {
        Taxonomy::HilbertVariant { order, .. } => Taxonomy::HilbertVariant {
            order,
            variant: None,
        },
        Taxonomy::BetaOmegaVariant { order, .. } => Taxonomy::BetaOmegaVariant {
            order,
            variant: None,
        },
        t => t,
    }
}

fn taxonomy() -> Outcome {
    let mut bad = Vec::new();
    let mut census: BTreeMap<&str, usize> = BTreeMap::new();
    for k in 3..=5 {
        for e in all_single_base(k) {
            let r = readings(&e);
            let t = classify_taxonomy(&e).unwrap();
            *census.entry(t.family()).or_default() += 1;
            if r.len() != 1 || r[0] != strip(t) {
                bad.push(format!("{e}: {r:?} vs {t}"));
            }
        }
    }
    let named = [
        ("R|111", Taxonomy::Hilbert),
        ("R|11111", Taxonomy::Hilbert),
        (
            "C|1111",
            Taxonomy::HilbertVariant {
                order: 1,
                variant: Some(2),
            },
        ),
        (
            "I^270|2121",
            Taxonomy::BetaOmega(sfcurve::structure::BetaOmegaKind::O),
        ),
        (
            "I^270|21212",
            Taxonomy::BetaOmega(sfcurve::structure::BetaOmegaKind::O),
        ),
        (
            "C|1121",
            Taxonomy::BetaOmegaVariant {
                order: 1,
                variant: Some(6),
            },
        ),
        (
            "C|11212",
            Taxonomy::BetaOmegaVariant {
                order: 1,
                variant: Some(6),
            },
        ),
    ];
    for (s, want) in named {
        let got = classify_taxonomy(&enc(s)).unwrap();
        if got != want {
            bad.push(format!("{s}: {got}"));
        }
    }
    outcome(
        bad.is_empty(),
        format!("k=3..5 {census:?}; failures {:?}", bad),
    )
}

fn flags() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut recursive = BTreeMap::new();
    for k in 2..=5 {
        for e in all_single_base(k) {
            let f = structural_flags(&e).unwrap();
            if f.closed != closed_geometric(&e).unwrap() {
                bad.push(format!("{e} closed"));
            }
            if f.symmetric_a != symmetric_a_geometric(&e).unwrap() {
                bad.push(format!("{e} A"));
            }
            if f.symmetric_ab != symmetric_ab_geometric(&e).unwrap() {
                bad.push(format!("{e} AB"));
            }
            if k >= 3 {
                let geo = recursive_geometric(&e).unwrap();
                let c = e.codes.to_string();
                let expected = (is_constant(&e.codes)
                    && matches!(e.seed.first().base, Base::I | Base::R | Base::L | Base::U))
                    || (k == 3
                        && matches!(e.seed.first().base, Base::B | Base::P)
                        && (c == "121" || c == "212"));
                if geo != expected || f.recursive != geo {
                    bad.push(format!("{e} recursive"));
                }
                *recursive.entry(k).or_insert(0) += geo as usize;
            }
        }
    }
    let el = t.elapsed();
    let limit = Duration::from_secs(60);
    outcome(
        bad.is_empty() && el < limit,
        format!(
            "recursive per level {recursive:?}; failures {:?}; {}",
            bad,
            within(el, limit)
        ),
    )
}

fn space_filling() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let mut curves: Vec<CurveEncoding> = (0..=4).flat_map(all_single_base).collect();
    curves.extend((0..200).map(|i| random_single(&mut rng, 5 + i % 2)));
    let mut bad = Vec::new();
    for e in &curves {
        let p = curve_path(e, Coord::new(0, 0)).unwrap();
        let cells: HashSet<_> = p.points.iter().collect();
        let unit = p.steps().is_some();
        let mut dirs = true;
        for depth in 0..=e.level() {
            let r = reduce(e, depth).unwrap();
            let seq = expand(&r).unwrap();
            let (entry, exit) = (e.seed.first().entry_dir(), e.seed.last().exit_dir());
            dirs &= entry.is_none() || seq.bases[0].entry_dir() == entry;
            dirs &= exit.is_none() || seq.bases[seq.len() - 1].exit_dir() == exit;
        }
        if cells.len() as u64 != e.point_count() || !unit || !dirs {
            bad.push(e.to_string());
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} curves, failures {:?}", curves.len(), bad),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("worked example", worked_example),
        ("encoding uniqueness", uniqueness),
        ("shape census", census),
        ("point location oracle", location_oracle),
        ("transform consistency", transform_consistency),
        ("inference round trip", inference),
        ("grammar self-validation", grammar),
        ("taxonomy totality", taxonomy),
        ("structural flags", flags),
        ("space-filling property", space_filling),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<24} {}  {}",
            i + 1,
            name,
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
