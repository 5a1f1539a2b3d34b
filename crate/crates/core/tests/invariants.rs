mod common;

use common::*;
use cubik::invariants::{
    fingerprint_id, identify, jones, jones_of_mirror, kauffman_bracket, legendrian_data, max_tb_rotation_set,
    standard_diagram, KnotTable, LaurentPolynomial, StandardDiagramParams,
};
use proptest::prelude::*;

#[test]
fn bracket_matches_state_sum_up_to_4() {
    for n in 2..=4 {
        for g in all_grids(n) {
            assert_eq!(kauffman_bracket(&g), bracket_state_sum(&g), "{g:?}");
        }
    }
}

#[test]
fn jones_of_known_knots() {
    let t = |terms: &[(i32, i64)]| LaurentPolynomial::from_terms(terms.iter().copied());
    assert_eq!(jones(&unknot()).unwrap(), LaurentPolynomial::one());
    // Left trefoil: -t^-4 + t^-3 + t^-1.
    assert_eq!(jones(&left_trefoil()).unwrap(), t(&[(-4, -1), (-3, 1), (-1, 1)]));
    assert_eq!(jones_state_sum(&left_trefoil()), t(&[(-4, -1), (-3, 1), (-1, 1)]));
    let fig8 = grid(&[0, 1, 3, 2, 5, 4], &[2, 5, 0, 4, 3, 1]);
    assert_eq!(jones(&fig8).unwrap(), t(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]));
}

#[test]
fn identification() {
    let table = KnotTable::bundled();
    assert_eq!(identify(&left_trefoil(), table).unwrap().unwrap().name, "3_1L");
    assert_eq!(identify(&left_trefoil().mirror(), table).unwrap().unwrap().name, "3_1R");
    let link = grid(&[0, 1, 2, 3], &[1, 0, 3, 2]);
    assert!(identify(&link, table).is_err());
    for rec in table.records() {
        assert_eq!(rec.fingerprint_id(), fingerprint_id(&rec.jones));
        assert_eq!(rec.fingerprint_id().len(), 12);
    }
}

#[test]
fn table_round_trip() {
    let table = KnotTable::bundled();
    let again = KnotTable::parse(&table.to_text()).unwrap();
    assert_eq!(again.records(), table.records());
    assert!(KnotTable::parse("3_1L; 5; -4:-1,-3:1,-1:1\n3_1X; 5; -4:-1,-3:1,-1:1\n").is_err());
    assert!(KnotTable::parse("broken line\n").is_err());
}

#[test]
fn standard_diagram_rotation_numbers() {
    for p in [3, 5, 7] {
        let set = max_tb_rotation_set(p);
        for params in StandardDiagramParams::all(p).unwrap() {
            let g = standard_diagram(params).unwrap();
            let l = legendrian_data(&g);
            assert_eq!(l.r, params.k as i32 - params.j as i32);
            assert!(set.contains(&l.r));
            assert_eq!(l.tb, -2 * p as i32);
            // Every standard diagram is the same knot.
            assert_eq!(
                jones(&g).unwrap(),
                jones(&standard_diagram(StandardDiagramParams::new(p, 1, p - 1).unwrap()).unwrap()).unwrap()
            );
        }
    }
    assert_eq!(max_tb_rotation_set(5), vec![-3, -1, 1, 3]);
}

#[test]
fn legendrian_counts() {
    let l = legendrian_data(&unknot());
    assert_eq!((l.tb, l.r), (-1, 0));
    for g in all_grids(4).into_iter().filter(|g| g.is_knot()) {
        let l = legendrian_data(&g);
        assert_eq!(l.writhe, g.writhe());
        assert_eq!(l.tb, l.writhe - l.right_cusps as i32);
        assert_eq!(2 * l.r, l.down_cusps as i32 - l.up_cusps as i32);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mirror_relation(seed in any::<u64>(), n in 2usize..=8) {
        let g = random_knot(&mut rng(seed), n);
        prop_assert_eq!(jones(&g.mirror()).unwrap(), jones_of_mirror(&jones(&g).unwrap()));
    }

    #[test]
    fn bracket_matches_state_sum(seed in any::<u64>(), n in 5usize..=6) {
        let g = random_grid(&mut rng(seed), n);
        prop_assert_eq!(kauffman_bracket(&g), bracket_state_sum(&g));
    }
}
