mod common;

use proptest::prelude::*;
use sfcurve::curve::*;
use sfcurve::error::Error;
use sfcurve::grammar::{Base, Code, OrientedBase, Rotation};

use common::{bases, enc};

#[test]
fn parse_and_display() {
    let e = enc("R^90LL|12");
    assert_eq!(e.seed.bases(), bases("R^90LL^90").as_slice());
    assert_eq!(e.codes.0, vec![Code::One, Code::Two]);
    assert_eq!(e.to_string(), "R^90LL|12");
    assert!(CurveEncoding::parse("R^90LL^90|12").is_err());
    assert_eq!(enc("R^0|11").to_string(), "R|11");
    assert_eq!(enc("I").level(), 0);
}

#[test]
fn parse_errors_carry_positions() {
    for (s, pos) in [("R|13", 3), ("X|1", 0), ("R^45|1", 2)] {
        match CurveEncoding::parse(s) {
            Err(Error::Parse { pos: p, .. }) => assert_eq!(p, pos, "{s}"),
            other => panic!("{s}: {other:?}"),
        }
    }
}

#[test]
fn seed_validation() {
    assert!(validate_seed(&[Base::R, Base::L], Rotation::R0).is_ok());
    assert!(matches!(
        validate_seed(&[Base::C, Base::I], Rotation::R0),
        Err(Error::SingletonC { .. })
    ));
    assert!(validate_seed(&[Base::P, Base::I], Rotation::R0).is_err());
    assert!(validate_seed(&[Base::I, Base::B], Rotation::R0).is_err());
    assert!(matches!(
        validate_seed(&[Base::L, Base::L, Base::L, Base::L, Base::L], Rotation::R0),
        Err(Error::SelfIntersection { .. })
    ));
}

#[test]
fn expansion_sizes() {
    let e = enc("R|11");
    assert_eq!(e.point_count(), 16);
    assert_eq!(expand(&e).unwrap().len(), 16);
    let m = enc("RL|121");
    assert_eq!(expand(&m).unwrap().len(), 2 * 64);
}

#[test]
fn expansion_limit() {
    let e = CurveEncoding::single(
        OrientedBase::new(Base::I, Rotation::R0),
        CodeSequence::constant(Code::One, 5),
    );
    assert!(matches!(
        expand_with_limit(&e, 4),
        Err(Error::LevelTooLarge { level: 5, max: 4 })
    ));
}

#[test]
fn enumeration_size() {
    for k in 0..=4 {
        assert_eq!(all_single_base(k).len(), 36 << k);
    }
}

#[test]
fn code_sequences_per_base_match_expansion() {
    for s in ["RL|12", "R^90LL|21", "IRU|21", "DI|2"] {
        let e = enc(s);
        let direct = expand(&e).unwrap();
        let per = 1usize << (2 * e.level());
        for i in 1..=e.seed.len() {
            let codes = code_sequence_for_base(&e, i).unwrap();
            let single = CurveEncoding::single(e.seed.bases()[i - 1], codes);
            assert_eq!(
                expand(&single).unwrap().bases,
                direct.bases[(i - 1) * per..i * per],
                "{s} base {i}"
            );
        }
    }
}

#[test]
fn reassociation_keeps_the_expansion() {
    let e = enc("R^90|12212");
    for i in 0..=e.level() {
        let r = reassociate(&e, i).unwrap();
        assert_eq!(r.level(), e.level() - i);
        assert_eq!(expand(&r).unwrap(), expand(&e).unwrap());
    }
}

#[test]
fn subunits_tile_the_expansion() {
    let e = enc("B^270|1221");
    let whole = expand(&e).unwrap().bases;
    let q = whole.len() / 4;
    for i in 1..=4 {
        let u = subunit(&e, i).unwrap();
        assert_eq!(expand(&u).unwrap().bases, whole[(i - 1) * q..i * q]);
    }
    assert!(subunit(&e, 5).is_err());
    assert_eq!(
        subunit_encoding(&e, &[2, 3]).unwrap(),
        subunit(&subunit(&e, 2).unwrap(), 3).unwrap()
    );
}

#[test]
fn integer_representation() {
    let c: CodeSequence = "1221".parse().unwrap();
    assert_eq!(integer_rep(&c), IntegerRep { delta: 7, level: 4 });
    assert!(codes_from_integer(IntegerRep { delta: 0, level: 3 }).is_err());
    assert!(codes_from_integer(IntegerRep { delta: 9, level: 3 }).is_err());
}

fn codes(max: usize) -> impl Strategy<Value = CodeSequence> {
    prop::collection::vec(prop::bool::ANY, 0..=max).prop_map(|v| {
        CodeSequence(
            v.into_iter()
                .map(|b| if b { Code::Two } else { Code::One })
                .collect(),
        )
    })
}

proptest! {
    #[test]
    fn integer_rep_round_trips(c in codes(20)) {
        prop_assert_eq!(codes_from_integer(integer_rep(&c)).unwrap(), c);
    }

    #[test]
    fn parse_round_trips(b in 0..9usize, r in 0..4usize, c in codes(8)) {
        let e = CurveEncoding::single(OrientedBase::new(Base::ALL[b], Rotation::ALL[r]), c);
        prop_assert_eq!(CurveEncoding::parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn multi_base_parse_round_trips(seed in 0u64..10_000, k in 0..4usize) {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let e = common::random_encoding(&mut rng, k);
        prop_assert_eq!(CurveEncoding::parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn complement_is_an_involution(c in codes(16)) {
        prop_assert_eq!(c.complement().complement(), c);
    }
}
