use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::Rational64;
use trackrate::analysis::{genus_and_puncture, singularity_indices, verify_sigma_invariance};
use trackrate::families::{converging_family, periodic_family, pv_family};
use trackrate::graphmap::{Direction, VertexId};
use trackrate::spectral::transition_matrix;
use trackrate::words::{apply_morphism, Word};

fn valences(k: usize) -> Vec<usize> {
    let m = converging_family(k).unwrap();
    let g = m.map.graph();
    let mut v: Vec<usize> = g.vertices().map(|v| g.valence(v)).collect();
    v.sort_unstable();
    v
}

#[test]
fn converging_graph_shape() {
    assert_eq!(valences(1), vec![3, 3, 3, 3, 4]);
    for k in 2..=6 {
        assert_eq!(valences(k), vec![4, 2 * k + 1, 2 * k + 1, 2 * k + 1, 2 * k + 1], "k = {k}");
    }
}

#[test]
fn sigma_crosses_every_edge_twice() {
    for k in 1..=8 {
        let m = converging_family(k).unwrap();
        let sigma = m.boundary.unwrap();
        assert_eq!(sigma.len(), 8 * k + 8);
        let mut count = BTreeMap::new();
        for l in sigma.letters().iter() {
            *count.entry(l.edge).or_insert(0) += 1;
        }
        assert_eq!(count.len(), 4 * k + 4);
        assert!(count.values().all(|&c| c == 2));
    }
}

#[test]
fn sigma_invariant_for_small_k() {
    for k in 1..=6 {
        let m = converging_family(k).unwrap();
        let sigma = m.boundary.unwrap();
        let w = verify_sigma_invariance(&m.map, sigma.letters()).unwrap();
        assert!(w.invariant(), "k = {k}");
    }
}

#[test]
fn train_track_and_gates() {
    for k in 1..=4 {
        let m = converging_family(k).unwrap();
        assert!(m.map.is_train_track().unwrap(), "k = {k}");
    }
    let m = converging_family(1).unwrap();
    let g = m.map.graph();
    let mut gates: Vec<(usize, usize)> = g.vertices().map(|v| (g.valence(v), m.map.gates(v).unwrap().len())).collect();
    gates.sort_unstable();
    // the central vertex: D fixes a and b and sends c to d
    assert_eq!(gates, vec![(3, 3), (3, 3), (3, 3), (3, 3), (4, 3)]);
}

#[test]
fn indices_and_genus() {
    for k in 1..=4 {
        let m = converging_family(k).unwrap();
        let t = singularity_indices(&m.map).unwrap();
        let half_minus_k = Rational64::new(1, 2) - Rational64::from_integer(k as i64);
        assert_eq!(t.rows.iter().filter(|r| r.index == half_minus_k).count(), 4);
        assert_eq!(t.rows.iter().filter(|r| r.index == Rational64::from_integer(0)).count(), 1);
        assert_eq!(t.sum(), Rational64::from_integer(2 - 4 * k as i64));
        assert_eq!(genus_and_puncture(m.map.graph()).unwrap().genus, Some(2 * k));
    }
    for g in 1..=4 {
        let h = periodic_family(g).unwrap();
        assert_eq!(genus_and_puncture(h.map.graph()).unwrap().genus, Some(g));
    }
}

#[test]
fn transition_matrix_columns() {
    let m = converging_family(1).unwrap();
    let t = transition_matrix(&m.map);
    let sums = t.matrix().column_sums();
    for (j, img) in m.map.images().iter().enumerate() {
        assert_eq!(sums[j], BigInt::from(img.len()));
    }
    let one = BigInt::from(1);
    assert_eq!(t.entry("a", "a"), Some(&one));
    assert_eq!(t.entry("x0", "a"), Some(&one));
    assert_eq!(t.entry("y0", "a"), Some(&one));
    assert_eq!(t.entry("d", "c"), Some(&one));
    assert_eq!(t.entry("c", "c"), Some(&BigInt::from(0)));
    assert_eq!(t.pf_bounds().unwrap(), (one.clone(), BigInt::from(3)));
    for n in 2..=6 {
        let p = transition_matrix(&pv_family(n).unwrap().map);
        assert_eq!(p.pf_bounds().unwrap(), (one.clone(), BigInt::from(2)));
    }
}

#[test]
fn second_iterate_of_c() {
    let m = converging_family(1).unwrap();
    let al = m.alphabet();
    let f2 = m.map.iterate(2).unwrap();
    assert_eq!(al.render(f2.image(al.edge("c").unwrap())), "d y1 x0");
    let c = al.parse_word("c").unwrap();
    let twice = apply_morphism(al, &m.map.word_images(), &apply_morphism(al, &m.map.word_images(), &c).unwrap()).unwrap();
    assert_eq!(al.render(&twice), "d y1 x0");
}

#[test]
fn periodic_map_has_period_4g_plus_2() {
    for g in 1..=4 {
        let h = periodic_family(g).unwrap();
        let n = 4 * g + 2;
        for j in 1..n {
            assert_ne!(h.map.iterate(j).unwrap().word_images(), identity_images(&h.map), "g = {g}, j = {j}");
        }
        assert_eq!(h.map.iterate(n).unwrap().word_images(), identity_images(&h.map));
    }
}

fn identity_images(map: &trackrate::graphmap::GraphMap) -> Vec<Word> {
    map.alphabet().edges().map(|e| Word::from_letters([trackrate::words::Letter::forward(e)])).collect()
}

#[test]
fn derivative_commutes_with_iteration() {
    for k in 1..=3 {
        let f = converging_family(k).unwrap().map;
        let d = f.derivative_map().unwrap();
        let dirs = 2 * f.graph().edge_count();
        for n in 1..=4 {
            let dn = f.iterate(n).unwrap().derivative_map().unwrap();
            for i in 0..dirs {
                let x = Direction::from_index(i);
                assert_eq!(dn.apply(x), d.power(x, n), "k = {k}, n = {n}");
            }
        }
    }
}

#[test]
fn train_track_survives_powers() {
    for k in 1..=3 {
        let f = converging_family(k).unwrap().map;
        for n in 1..=3 {
            assert!(f.iterate(n).unwrap().is_train_track().unwrap(), "k = {k}, n = {n}");
        }
    }
}

#[test]
fn theta_has_two_vertices() {
    let h = periodic_family(2).unwrap();
    assert_eq!(h.map.graph().vertex_count(), 2);
    assert_eq!(h.map.vertex_images(), vec![Some(VertexId(1)), Some(VertexId(0))]);
}
