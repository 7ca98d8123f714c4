//! Frozen tables from exhaustive enumeration, and cross-method agreement on
//! random boards.

use mosaic_tilings::board::{build_board, BoardSpec, Variant};
use mosaic_tilings::oracle::{frontier, Oracle};
use mosaic_tilings::recurrence::{closed_r_table, system_tables, unbreakable_system_tables};
use mosaic_tilings::BiPoly;
use num_bigint::BigInt;
use proptest::prelude::*;

fn text(p: &BiPoly) -> String {
    p.to_text()
}

#[test]
fn frozen_full_boards() {
    let cases: [(u32, &[&str]); 2] = [
        (5, &[
            "1",
            "a^3 + 2*a*b",
            "a^6 + 6*a^4*b + 8*a^2*b^2 + b^3",
            "a^9 + 10*a^7*b + 31*a^5*b^2 + 32*a^3*b^3 + 6*a*b^4",
        ]),
        (6, &[
            "1",
            "a^4 + 3*a^2*b + b^2",
            "a^8 + 8*a^6*b + 19*a^4*b^2 + 14*a^2*b^3 + 2*b^4",
            "a^12 + 13*a^10*b + 61*a^8*b^2 + 127*a^6*b^3 + 116*a^4*b^4 + 40*a^2*b^5 + 3*b^6",
        ]),
    ];
    for (q, want) in cases {
        let system = system_tables(q, 3).unwrap().r;
        let closed = closed_r_table(q, 3).unwrap();
        for (n, w) in want.iter().enumerate() {
            assert_eq!(text(&system.values()[n]), *w, "system q={q} n={n}");
            assert_eq!(text(&closed.values()[n]), *w, "closed q={q} n={n}");
        }
    }
}

#[test]
fn frozen_unbreakable_boards() {
    let cases: [(u32, &[&str]); 2] = [
        (5, &["a^3 + 2*a*b", "2*a^4*b + 4*a^2*b^2 + b^3", "3*a^5*b^2 + 6*a^3*b^3 + 2*a*b^4"]),
        (6, &["a^4 + 3*a^2*b + b^2", "2*a^6*b + 8*a^4*b^2 + 8*a^2*b^3 + b^4", "3*a^8*b^2 + 14*a^6*b^3 + 20*a^4*b^4 + 9*a^2*b^5"]),
    ];
    for (q, want) in cases {
        let t = unbreakable_system_tables(q, 3).unwrap().r;
        for (i, w) in want.iter().enumerate() {
            assert_eq!(text(&t.values()[i + 1]), *w, "q={q} n={}", i + 1);
        }
    }
}

#[test]
fn frozen_subboards() {
    let t = system_tables(5, 3).unwrap();
    assert_eq!(text(&t.a.values()[1]), "a^2 + b");
    assert_eq!(text(&t.a.values()[2]), "a^5 + 5*a^3*b + 5*a*b^2");
    assert_eq!(text(&t.a.values()[3]), "a^8 + 9*a^6*b + 24*a^4*b^2 + 20*a^2*b^3 + 2*b^4");
    let c = system_tables(6, 2).unwrap().c;
    assert_eq!(text(&c.values()[2]), "a^6 + 5*a^4*b + 6*a^2*b^2 + b^3");
}

#[test]
fn frozen_evaluations() {
    let want = [
        1u64, 61, 6202, 595435, 57865561, 5607668584, 543789311773, 52724435940097, 5112212861950138,
        495680955760985359,
    ];
    let got = system_tables(6, 9).unwrap().r.eval_i64(2, 3);
    assert_eq!(got, want.map(BigInt::from));
    let board = build_board(BoardSpec::full(6, 6)).unwrap();
    assert_eq!(frontier::weighted_count(&board).unwrap().eval_i64(2, 3), BigInt::from(want[6]));
}

fn variant() -> impl Strategy<Value = Variant> {
    prop_oneof![Just(Variant::Full), Just(Variant::A), Just(Variant::B), Just(Variant::C)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn methods_agree(q in 4u32..=9, n in 1usize..=4, v in variant()) {
        let spec = BoardSpec::new(q, n, v);
        let g = build_board(spec).unwrap();
        prop_assume!(g.cell_count() <= 20);
        let oracle = Oracle::new().weighted_count(&g).unwrap();
        let t = system_tables(q, n).unwrap();
        let table = match v {
            Variant::A => &t.a,
            Variant::B => &t.b,
            Variant::C => &t.c,
            _ => &t.r,
        };
        prop_assert_eq!(&oracle, &table.values()[n]);
        prop_assert_eq!(&oracle, &frontier::weighted_count(&g).unwrap());
    }

    #[test]
    fn frontier_extends_the_system(q in 4u32..=12, n in 0usize..=10, a in -3i64..=3, b in -3i64..=3) {
        let g = build_board(BoardSpec::full(q, n)).unwrap();
        let dp = frontier::weighted_count(&g).unwrap();
        let sys = system_tables(q, n).unwrap().r;
        prop_assert_eq!(dp.eval_i64(a, b), sys.values()[n].eval_i64(a, b));
    }
}
