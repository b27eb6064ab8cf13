use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use trackrate::document::MapDocument;
use trackrate::families::{converging_family, periodic_family, pv_family, FamilyMember};
use trackrate::graphmap::Direction;
use trackrate::spectral::{perron_root, signed_transition_matrix, transition_matrix, IntMatrix};
use trackrate::words::{apply_morphism, cyclic_reduce};

fn member() -> impl Strategy<Value = FamilyMember> {
    prop_oneof![
        (1usize..=6).prop_map(|k| converging_family(k).unwrap()),
        (1usize..=6).prop_map(|g| periodic_family(g).unwrap()),
        (2usize..=6).prop_map(|n| pv_family(n).unwrap()),
    ]
}

fn square_matrix(max_dim: usize, max_entry: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::collection::vec(0..=max_entry, n), n)
            .prop_map(|rows| IntMatrix::from_rows(&rows))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn column_sums_are_image_lengths(m in member()) {
        let t = transition_matrix(&m.map);
        let sums = t.matrix().column_sums();
        for (j, img) in m.map.images().iter().enumerate() {
            prop_assert_eq!(&sums[j], &BigInt::from(img.len()));
        }
    }

    #[test]
    fn signed_entries_are_bounded(m in member()) {
        let t = transition_matrix(&m.map);
        let s = signed_transition_matrix(&m.map);
        let n = t.dim();
        for i in 0..n {
            for j in 0..n {
                prop_assert!(num_traits::Signed::abs(s.matrix().get(i, j)) <= *t.matrix().get(i, j));
            }
        }
    }

    #[test]
    fn euler_characteristic(m in member()) {
        let g = m.map.graph();
        prop_assert!(g.is_connected());
        prop_assert_eq!(g.vertex_count() as isize - g.edge_count() as isize, 1 - g.rank());
    }

    #[test]
    fn gates_partition_and_map_into_gates(m in member()) {
        let map = &m.map;
        let g = map.graph();
        let d = map.derivative_map().unwrap();
        let images = map.vertex_images();
        for v in g.vertices() {
            let gates = d.gates_at(g, v);
            let mut all: Vec<Direction> = gates.iter().flatten().copied().collect();
            all.sort();
            let mut expected = g.directions_at(v);
            expected.sort();
            prop_assert_eq!(&all, &expected);
            let w = images[v.0].expect("every vertex bounds an edge");
            let target_gates = d.gates_at(g, w);
            for gate in &gates {
                let hit: Vec<usize> = gate
                    .iter()
                    .map(|x| target_gates.iter().position(|t| t.contains(&d.apply(*x))).expect("direction at image vertex"))
                    .collect();
                prop_assert!(hit.windows(2).all(|p| p[0] == p[1]));
            }
        }
    }

    #[test]
    fn iterate_agrees_with_repeated_substitution(m in member(), n in 1usize..=3) {
        let map = &m.map;
        let al = map.alphabet();
        let images = map.word_images();
        let power = map.iterate(n).unwrap();
        for e in al.edges() {
            let mut w = trackrate::words::Word::from_letters([trackrate::words::Letter::forward(e)]);
            for _ in 0..n {
                w = apply_morphism(al, &images, &w).unwrap();
            }
            prop_assert_eq!(power.image(e).tighten(), w);
        }
    }

    #[test]
    fn generators_are_deterministic(m in member()) {
        let again = m.spec.build().unwrap();
        prop_assert_eq!(MapDocument::from_member(&m).to_json(), MapDocument::from_member(&again).to_json());
    }

    #[test]
    fn boundary_loops_are_cyclically_reduced(m in member()) {
        if let Some(sigma) = &m.boundary {
            let (core, conjugator) = cyclic_reduce(&sigma.to_word());
            prop_assert!(conjugator.is_empty());
            prop_assert_eq!(core.len(), sigma.len());
        }
    }

    #[test]
    fn constant_term_is_signed_determinant(a in square_matrix(6, 3)) {
        let chi = a.char_poly();
        let sign = if a.dim() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        prop_assert_eq!(chi.coeff(0), sign * a.determinant());
        prop_assert!(chi.is_monic());
        prop_assert_eq!(chi.degree(), Some(a.dim()));
    }

    #[test]
    fn primitivity_agrees_with_wielandt(a in square_matrix(12, 1)) {
        prop_assert_eq!(a.is_primitive(), a.is_primitive_by_wielandt());
    }
}

#[test]
fn perron_root_inside_column_sum_bounds() {
    let tol = BigRational::new(BigInt::one(), BigInt::from(1_000_000));
    for k in 1..=12 {
        let t = transition_matrix(&converging_family(k).unwrap().map);
        let (min, max) = t.pf_bounds().unwrap();
        let root = perron_root(&t.char_poly(), &BigRational::one(), &tol).unwrap();
        assert!(root.is_within(&BigRational::from_integer(min), &BigRational::from_integer(max)), "k = {k}: {root}");
    }
}
