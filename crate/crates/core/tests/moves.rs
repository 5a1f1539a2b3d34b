mod common;

use common::*;
use cubik::grid::GridDiagram;
use cubik::invariants::{jones, legendrian_data, max_tb_rotation_set, standard_diagram, StandardDiagramParams};
use cubik::moves::{
    apply_move, closure, cyclic_orbit, left_torus_fingerprint, legendrian_census, neighbours, reachability_class, Move,
    MoveError, MoveSet,
};
use cubik::search::Exec;
use proptest::prelude::*;

fn all_moves(n: usize) -> Vec<Move> {
    MoveSet::All.moves(n)
}

#[test]
fn moves_preserve_knot_data_up_to_4() {
    for n in 2..=4 {
        for g in all_grids(n) {
            for m in all_moves(n) {
                let Ok(h) = apply_move(&g, m) else { continue };
                assert!(GridDiagram::new(n, h.x_cols(), h.o_cols()).is_ok());
                assert_eq!(components(&h), components(&g));
                if g.is_knot() {
                    assert_eq!(jones(&h).unwrap(), jones(&g).unwrap(), "{g:?} {m}");
                    let (a, b) = (legendrian_data(&g), legendrian_data(&h));
                    assert_eq!((a.tb, a.r), (b.tb, b.r), "{g:?} {m}");
                }
            }
        }
    }
}

#[test]
fn commutation_is_an_involution() {
    for g in all_grids(4) {
        for i in 0..4 {
            for m in [Move::CommuteRows(i), Move::CommuteCols(i)] {
                if let Ok(h) = apply_move(&g, m) {
                    assert_eq!(apply_move(&h, m).unwrap(), g);
                }
            }
        }
    }
}

#[test]
fn cyclic_moves_commute_with_commutations() {
    let n = 5;
    for g in all_grids(n).into_iter().step_by(7) {
        for i in 0..n {
            // Moving every row up by one shifts commutation indices by one.
            let a = apply_move(&g, Move::CommuteRows(i)).and_then(|h| apply_move(&h, Move::CyclicUp));
            let b = apply_move(&g, Move::CyclicUp).and_then(|h| apply_move(&h, Move::CommuteRows((i + 1) % n)));
            assert_eq!(a.ok(), b.ok());
            let a = apply_move(&g, Move::CommuteCols(i)).and_then(|h| apply_move(&h, Move::CyclicRight));
            let b = apply_move(&g, Move::CyclicRight).and_then(|h| apply_move(&h, Move::CommuteCols((i + 1) % n)));
            assert_eq!(a.ok(), b.ok());
        }
    }
}

#[test]
fn interleaved_rows_are_rejected() {
    let g = left_trefoil();
    let err = (0..5)
        .filter_map(|i| apply_move(&g, Move::CommuteRows(i)).err())
        .collect::<Vec<_>>();
    assert!(err.iter().all(|e| matches!(e, MoveError::InterleavedPair { .. })));
    assert_eq!(err.len(), 5);
}

#[test]
fn orbit_size_is_n_squared_over_stabiliser() {
    for g in all_grids(4).into_iter().step_by(3).chain([left_trefoil()]) {
        let n = g.size();
        let stab = (0..n)
            .flat_map(|dr| (0..n).map(move |dc| (dr, dc)))
            .filter(|&(dr, dc)| g.translate(dr, dc) == g)
            .count();
        assert_eq!(cyclic_orbit(&g).len() * stab, n * n);
        let class = closure(&g, MoveSet::All);
        assert!(cyclic_orbit(&g).iter().all(|h| class.binary_search(h).is_ok()));
        // Closed under moves.
        for h in &class {
            for (_, k) in neighbours(h, MoveSet::All) {
                assert!(class.binary_search(&k).is_ok());
            }
        }
    }
    assert_eq!(cyclic_orbit(&unknot()).len(), 2);
}

#[test]
fn k_min_admits_no_commutation() {
    let g = standard_diagram(StandardDiagramParams::new(5, 4, 1).unwrap()).unwrap();
    let orbit = cyclic_orbit(&g);
    for h in &orbit {
        assert!(neighbours(h, MoveSet::All).iter().all(|(m, _)| matches!(
            m,
            Move::CyclicUp | Move::CyclicDown | Move::CyclicLeft | Move::CyclicRight
        )));
    }
    let class = reachability_class(&g);
    assert_eq!(class.members, orbit.into_iter().collect::<Vec<_>>());
    assert_eq!(class.classes.len(), 1);
}

#[test]
fn trefoil_census() {
    let c = legendrian_census(3, Exec::Sequential).unwrap();
    let v = left_torus_fingerprint(3).unwrap();
    let top = c.max_tb_buckets(&v);
    assert_eq!(top.len(), 2);
    for (&(_, tb, r), b) in top {
        assert_eq!(tb, -6);
        assert!(max_tb_rotation_set(3).contains(&r));
        assert_eq!(b.count, 5);
        assert_eq!(b.classes.len(), 1);
    }
    assert!(c.findings.is_empty());
    let csv = c.to_csv();
    assert!(csv.starts_with("fingerprint_id,tb,r,count,num_classes,lifts_found\n"));
    assert_eq!(csv.lines().count(), c.buckets.len() + 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn random_moves_preserve_invariants(seed in any::<u64>(), n in 3usize..=8, steps in 1usize..20) {
        let mut r = rng(seed);
        let g = random_knot(&mut r, n);
        let (v, l) = (jones(&g).unwrap(), legendrian_data(&g));
        let mut h = g;
        for _ in 0..steps {
            let opts = neighbours(&h, MoveSet::All);
            h = opts[rand::Rng::gen_range(&mut r, 0..opts.len())].1;
        }
        prop_assert_eq!(jones(&h).unwrap(), v);
        let l2 = legendrian_data(&h);
        prop_assert_eq!((l2.tb, l2.r), (l.tb, l.r));
        if n <= 5 {
            prop_assert!(closure(&g, MoveSet::All).binary_search(&h).is_ok());
        }
    }
}
