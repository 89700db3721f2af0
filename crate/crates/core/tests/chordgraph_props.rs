use bookcross::chordgraph::{
    assemble_block_adjacency, build_chord_graph, chords_overlap, orbit_valency, Chord,
};
use proptest::prelude::*;

fn binom(n: usize, r: usize) -> usize {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn vertex_and_edge_counts() {
    for n in 5..=40 {
        let g = build_chord_graph(n).unwrap();
        assert_eq!(g.num_vertices(), binom(n, 2) - n, "n={n}");
        assert_eq!(g.num_edges(), binom(n, 4), "n={n}");
        assert_eq!(g.num_orbits(), n / 2 - 1);
    }
}

#[test]
fn brute_force_edge_count_matches() {
    // independent enumeration over 4-subsets of the cycle: each 4-set yields exactly one crossing pair
    for n in 5..=14 {
        let g = build_chord_graph(n).unwrap();
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        // chords {a,c} and {b,d}
                        if let (Ok(x), Ok(y)) = (Chord::new(a, c, n), Chord::new(b, d, n)) {
                            let (u, v) = (g.index_of(&x), g.index_of(&y));
                            if let (Some(u), Some(v)) = (u, v) {
                                assert!(g.is_adjacent(u, v));
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(count, g.num_edges(), "n={n}");
    }
}

#[test]
fn block_circulant_reconstruction() {
    for n in (7..=25).step_by(2) {
        let g = build_chord_graph(n).unwrap();
        let a = g.adjacency_matrix();
        let b = assemble_block_adjacency(n).unwrap();
        assert_eq!(a, b, "block reconstruction failed for n={n}");
    }
}

#[test]
fn odd_orbit_sizes_and_valency() {
    for n in (5..=41).step_by(2) {
        let g = build_chord_graph(n).unwrap();
        for i in 2..=g.d() {
            let r = g.orbit_range(i);
            assert_eq!(r.len(), n);
            for v in r {
                assert_eq!(g.orbit_of(v), i);
                assert_eq!(g.degree(v), orbit_valency(i, g.d()), "n={n} i={i}");
            }
        }
    }
}

#[test]
fn even_n_diameter_orbit_has_half_size() {
    for n in (6..=20).step_by(2) {
        let g = build_chord_graph(n).unwrap();
        assert_eq!(g.orbit_range(n / 2).len(), n / 2);
    }
}

fn chord_strategy() -> impl Strategy<Value = (usize, usize, usize, usize, usize)> {
    (5usize..30).prop_flat_map(|n| (Just(n), 0..n, 2..=n / 2, 0..n, 2..=n / 2))
}

proptest! {
    #[test]
    fn overlap_symmetric_and_dihedral((n, a, da, b, db) in chord_strategy(), shift in 0usize..40) {
        let c1 = Chord::new(a, (a + da) % n, n).unwrap();
        let c2 = Chord::new(b, (b + db) % n, n).unwrap();
        let base = chords_overlap(c1, c2, n).unwrap();
        prop_assert_eq!(base, chords_overlap(c2, c1, n).unwrap());
        let rot = |c: Chord| Chord::new((c.a() + shift) % n, (c.b() + shift) % n, n).unwrap();
        prop_assert_eq!(base, chords_overlap(rot(c1), rot(c2), n).unwrap());
        let refl = |c: Chord| Chord::new((n - c.a()) % n, (n - c.b()) % n, n).unwrap();
        prop_assert_eq!(base, chords_overlap(refl(c1), refl(c2), n).unwrap());
    }
}
