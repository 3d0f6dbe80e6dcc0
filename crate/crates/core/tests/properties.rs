use std::sync::Arc;

use proptest::prelude::*;
use rack_homology::cubical::{
    boundary_of_chain, collapse_to_point, cubes, face, is_cycle, permute_chain,
    reverse_orientation_3, Chain, Cube, SpaceKind,
};
use rack_homology::diagram::{
    enumerate_colorings, enumerate_extended_colorings, extended_canonical_cycle, Crossing,
    LinkDiagram,
};
use rack_homology::fixtures;
use rack_homology::homology::{class_of_cycle, homology};
use rack_homology::rack::{
    automorphisms, dihedral_rack, inverse_operate, parse_rack, three_colour_rack, trivial_rack,
    FiniteRack, OperationTable,
};
use rack_homology::surface::{surface_invariant, twist_spun_trefoil_cycle, TriplePointChain};

fn small_racks() -> Vec<Arc<FiniteRack>> {
    let flip = FiniteRack::from_table(OperationTable::new(2, vec![1, 1, 0, 0]).unwrap()).unwrap();
    vec![
        Arc::new(trivial_rack(1).unwrap()),
        Arc::new(trivial_rack(2).unwrap()),
        Arc::new(dihedral_rack(3).unwrap()),
        Arc::new(dihedral_rack(4).unwrap()),
        Arc::new(flip),
    ]
}

fn t() -> Arc<FiniteRack> {
    Arc::new(three_colour_rack())
}

fn chain_strategy(
    rack: Arc<FiniteRack>,
    kind: SpaceKind,
    dim: usize,
) -> impl Strategy<Value = Chain> {
    let k = rack.size();
    let len = kind.tuple_len(dim);
    proptest::collection::vec((-3i64..4, proptest::collection::vec(0..k, len)), 0..8).prop_map(
        move |terms| {
            Chain::from_terms(
                rack.clone(),
                kind,
                dim,
                terms.into_iter().map(|(c, v)| (c, Cube::new(v))),
            )
            .unwrap()
        },
    )
}

proptest! {
    #[test]
    fn accepted_tables_satisfy_the_axioms(n in 1usize..4, entries in proptest::collection::vec(0usize..3, 9)) {
        let entries: Vec<usize> = entries[..n * n].iter().map(|&e| e % n).collect();
        let mut text = format!("{n}\n");
        for row in entries.chunks(n) {
            text.push_str(&row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
            text.push('\n');
        }
        if let Ok(r) = parse_rack(&text) {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        prop_assert_eq!(r.op(r.op(a, b), c), r.op(r.op(a, c), r.op(b, c)));
                    }
                }
            }
            for b in 0..n {
                let mut col: Vec<usize> = (0..n).map(|a| r.op(a, b)).collect();
                col.sort_unstable();
                prop_assert_eq!(col, (0..n).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn inverse_operation_round_trips(which in 0usize..5, a in 0usize..4, b in 0usize..4) {
        let r = &small_racks()[which];
        let (a, b) = (a % r.size(), b % r.size());
        prop_assert_eq!(inverse_operate(r, r.op(a, b), b), a);
        prop_assert_eq!(r.op(inverse_operate(r, a, b), b), a);
        if r.axioms().is_involutory {
            prop_assert_eq!(inverse_operate(r, a, b), r.op(a, b));
        }
    }

    #[test]
    fn boundary_commutes_with_automorphisms(z in chain_strategy(t(), SpaceKind::ExtendedRackSpace, 3), s in 0usize..6) {
        let sigma = &automorphisms(&t()).unwrap()[s];
        let lhs = boundary_of_chain(&permute_chain(sigma, &z).unwrap()).unwrap();
        let rhs = permute_chain(sigma, &boundary_of_chain(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn collapse_kills_boundaries(which in 0usize..5, z in chain_strategy(Arc::new(dihedral_rack(4).unwrap()), SpaceKind::RackSpace, 3)) {
        prop_assert_eq!(collapse_to_point(&boundary_of_chain(&z).unwrap()), 0);
        let rack = small_racks()[which].clone();
        let w = Chain::from_terms(rack.clone(), SpaceKind::ExtendedRackSpace, 2, [(2, Cube::new(vec![0, 0, 0]))]).unwrap();
        prop_assert_eq!(collapse_to_point(&boundary_of_chain(&w).unwrap()), 0);
    }

    #[test]
    fn extended_faces_restrict_to_rack_space_faces(x in proptest::collection::vec(0usize..3, 4), i in 1usize..4, eps: bool) {
        let t = t();
        let ext = face(&t, &Cube::new(x.clone()), i, eps, SpaceKind::ExtendedRackSpace).unwrap();
        let plain = face(&t, &Cube::new(x[1..].to_vec()), i, eps, SpaceKind::RackSpace).unwrap();
        prop_assert_eq!(&ext.entries()[1..], plain.entries());
    }

    #[test]
    fn reversal_maps_cycles_to_cycles(w in chain_strategy(t(), SpaceKind::RackSpace, 4), k in -2i64..3) {
        let c = twist_spun_trefoil_cycle();
        let z = c.chain().scaled(k).try_add(&boundary_of_chain(&w).unwrap()).unwrap();
        prop_assert!(is_cycle(&z));
        prop_assert!(is_cycle(&reverse_orientation_3(&z).unwrap()));
    }

    #[test]
    fn surface_invariant_is_additive(w1 in chain_strategy(t(), SpaceKind::RackSpace, 4), w2 in chain_strategy(t(), SpaceKind::RackSpace, 4)) {
        let c = twist_spun_trefoil_cycle();
        let z1 = TriplePointChain::new(c.chain().try_add(&boundary_of_chain(&w1).unwrap()).unwrap(), "z1").unwrap();
        let z2 = TriplePointChain::new(boundary_of_chain(&w2).unwrap().try_add(c.chain()).unwrap(), "z2").unwrap();
        let sum = TriplePointChain::new(z1.chain().try_add(z2.chain()).unwrap(), "z1 + z2").unwrap();
        let lhs = surface_invariant(&sum).unwrap();
        let rhs = surface_invariant(&z1).unwrap().add(&surface_invariant(&z2).unwrap()).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap());
    }

    #[test]
    fn colouring_count_ignores_arc_names(shift in 0usize..6) {
        let (d, _) = fixtures::trefoil_right();
        let n = d.arc_count();
        let rename = |a: usize| (a + shift) % n;
        let crossings = d
            .crossings()
            .iter()
            .map(|c| Crossing {
                sign: c.sign,
                under_in: rename(c.under_in),
                over: rename(c.over),
                under_out: rename(c.under_out),
                quadrants: c.quadrants,
            })
            .collect();
        let renamed = LinkDiagram::new(n, d.region_count(), crossings).unwrap();
        let t = t();
        prop_assert_eq!(enumerate_colorings(&renamed, &t).len(), enumerate_colorings(&d, &t).len());
        prop_assert_eq!(
            enumerate_extended_colorings(&renamed, &t).unwrap().len(),
            enumerate_extended_colorings(&d, &t).unwrap().len()
        );
    }
}

#[test]
fn automorphisms_form_a_group() {
    for r in small_racks() {
        let auts = automorphisms(&r).unwrap();
        for a in &auts {
            assert!(a.is_automorphism_of(&r));
            assert!(auts.contains(&a.inverse()));
            for b in &auts {
                assert!(auts.contains(&a.compose(b)));
            }
        }
    }
}

#[test]
fn dd_vanishes_on_every_cube() {
    for r in small_racks() {
        for kind in [SpaceKind::RackSpace, SpaceKind::ExtendedRackSpace] {
            for n in 2..=4 {
                for cube in cubes(r.size(), n, kind) {
                    let z = Chain::from_terms(r.clone(), kind, n, [(1, cube)]).unwrap();
                    let dd = boundary_of_chain(&boundary_of_chain(&z).unwrap()).unwrap();
                    assert!(dd.is_zero());
                }
            }
        }
    }
}

#[test]
fn extended_classes_are_fixed_by_automorphisms() {
    let t = t();
    let h = Arc::new(homology(&t, 2, SpaceKind::ExtendedRackSpace).unwrap());
    let auts = automorphisms(&t).unwrap();
    for (d, _) in [fixtures::trefoil_right(), fixtures::trefoil_left()] {
        for l in enumerate_extended_colorings(&d, &t).unwrap() {
            let base = class_of_cycle(&h, &extended_canonical_cycle(&d, &l, &t).unwrap()).unwrap();
            for s in &auts {
                let z = extended_canonical_cycle(&d, &l.permuted(s), &t).unwrap();
                assert!(class_of_cycle(&h, &z).unwrap().equals(&base).unwrap());
            }
        }
    }
}

#[test]
fn shift_isomorphism_on_small_racks() {
    for r in small_racks().into_iter().filter(|r| r.size() <= 3) {
        for n in 0..=2 {
            let ext = homology(&r, n, SpaceKind::ExtendedRackSpace).unwrap();
            let up = homology(&r, n + 1, SpaceKind::RackSpace).unwrap();
            assert!(ext.same_group(&up), "{ext} vs {up}");
        }
    }
}

#[test]
fn homology_is_deterministic() {
    let t = t();
    let a = Arc::new(homology(&t, 3, SpaceKind::RackSpace).unwrap());
    let b = Arc::new(homology(&t, 3, SpaceKind::RackSpace).unwrap());
    let c = twist_spun_trefoil_cycle();
    let ca = class_of_cycle(&a, c.chain()).unwrap();
    let cb = class_of_cycle(&b, c.chain()).unwrap();
    assert_eq!(ca.torsion_coords(), cb.torsion_coords());
    assert_eq!(ca.free_coords(), cb.free_coords());
}
