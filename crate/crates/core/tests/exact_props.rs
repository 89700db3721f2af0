use bookcross::chordgraph::build_chord_graph;
use bookcross::drawings::count_crossings;
use bookcross::exact::wcnf::{encode_wcnf, parse_wcnf_model, wcnf_string, WcnfInstance, WcnfMode};
use bookcross::exact::{
    brute_force_nu, cut_value, dds_cut, drawing_from_cut, max_k_cut_bnb, nu_exact, Budget, CutAssignment,
};
use bookcross::formulas::{binom4, z_k};
use proptest::prelude::*;

#[test]
fn bnb_matches_brute_force() {
    for n in 5..=7 {
        let g = build_chord_graph(n).unwrap();
        for k in 1..=4 {
            let r = max_k_cut_bnb(&g, k, Budget::unlimited()).unwrap();
            assert!(r.proved_optimal);
            assert_eq!(r.nu, brute_force_nu(n, k).unwrap(), "n={n} k={k}");
            assert_eq!(r.cut_size, cut_value(&g, &r.assignment).unwrap());
            assert_eq!(r.nu + r.cut_size, binom4(n as u64));
        }
    }
}

/// Parses the clause lines of emitted WCNF text into (weight, literals).
fn parse_clauses(text: &str) -> (Vec<u64>, Vec<(u64, Vec<i64>)>) {
    let mut header = Vec::new();
    let mut clauses = Vec::new();
    for line in text.lines() {
        if line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p wcnf ") {
            header = rest.split_whitespace().map(|t| t.parse().unwrap()).collect();
            continue;
        }
        let nums: Vec<i64> = line.split_whitespace().map(|t| t.parse().unwrap()).collect();
        assert_eq!(*nums.last().unwrap(), 0);
        clauses.push((nums[0] as u64, nums[1..nums.len() - 1].to_vec()));
    }
    (header, clauses)
}

fn falsified_weight(clauses: &[(u64, Vec<i64>)], model: &[bool]) -> u64 {
    clauses
        .iter()
        .filter(|(_, lits)| {
            !lits.iter().any(|&l| {
                let v = model[(l.unsigned_abs() - 1) as usize];
                if l > 0 {
                    v
                } else {
                    !v
                }
            })
        })
        .map(|(w, _)| *w)
        .sum()
}

/// Minimum falsified weight over all one-hot models, by odometer enumeration.
fn min_unsat_one_hot(w: &WcnfInstance, clauses: &[(u64, Vec<i64>)]) -> u64 {
    let (p, k) = (w.num_vertices, w.k);
    let mut colors = vec![0usize; p];
    let mut best = u64::MAX;
    loop {
        let mut model = vec![false; w.num_vars];
        for (v, &c) in colors.iter().enumerate() {
            model[v * k + c] = true;
        }
        best = best.min(falsified_weight(clauses, &model));
        // vertex 0 stays at color 0 (colors are interchangeable)
        let mut v = 1;
        while v < p && colors[v] + 1 == k {
            colors[v] = 0;
            v += 1;
        }
        if v == p {
            break;
        }
        colors[v] += 1;
    }
    best
}

#[test]
fn wcnf_minimum_unsat_weight_is_nu() {
    for n in 5..=7 {
        let g = build_chord_graph(n).unwrap();
        for k in 1..=3 {
            let w = encode_wcnf(&g, k).unwrap();
            let text = wcnf_string(&w, WcnfMode::AllSoft);
            let (header, clauses) = parse_clauses(&text);
            assert_eq!(header, vec![w.num_vars as u64, w.num_clauses() as u64, w.top(WcnfMode::AllSoft)]);
            let expect = nu_exact(n, k, Budget::unlimited()).unwrap().nu;
            assert_eq!(min_unsat_one_hot(&w, &clauses), expect, "n={n} k={k}");
        }
    }
}

#[test]
fn hard_mode_marks_vertex_clauses_with_top() {
    let g = build_chord_graph(8).unwrap();
    let w = encode_wcnf(&g, 4).unwrap();
    let (header, clauses) = parse_clauses(&wcnf_string(&w, WcnfMode::Hard));
    let top = header[2];
    assert_eq!(top, 4 * 70 + 1);
    let hard: Vec<_> = clauses.iter().filter(|(wt, _)| *wt == top).collect();
    assert_eq!(hard.len(), w.num_vertices);
    assert!(clauses[..w.num_vertices].iter().all(|(wt, _)| *wt == top));
    // nu_4(K_8) = 0: the DDS coloring falsifies nothing
    let model = w.model_of(&dds_cut(&g, 4).unwrap()).unwrap();
    assert_eq!(falsified_weight(&clauses, &model), 0);
}

#[test]
fn optimal_cut_gives_optimal_drawing() {
    let g = build_chord_graph(7).unwrap();
    let r = nu_exact(7, 3, Budget::unlimited()).unwrap();
    let dr = drawing_from_cut(&g, &r.assignment).unwrap();
    assert_eq!(count_crossings(&dr), 2);
}

#[test]
fn determinism() {
    for (n, k) in [(9, 3), (10, 4)] {
        let a = nu_exact(n, k, Budget::unlimited()).unwrap();
        let b = nu_exact(n, k, Budget::unlimited()).unwrap();
        assert_eq!(a.assignment, b.assignment);
        assert_eq!(a.nodes_explored, b.nodes_explored);
    }
}

#[test]
fn exact_values_never_exceed_construction() {
    for n in 5..=10 {
        for k in 1..=5 {
            let r = nu_exact(n, k, Budget::unlimited()).unwrap();
            assert!(r.nu <= z_k(n as u64, k as u64).unwrap(), "n={n} k={k}");
        }
    }
}

proptest! {
    #[test]
    fn cut_plus_crossings_is_c4(n in 5usize..=12, k in 1usize..=5, seed in proptest::collection::vec(0usize..5, 54)) {
        let g = build_chord_graph(n).unwrap();
        let colors: Vec<usize> = seed[..g.num_vertices()].iter().map(|c| c % k).collect();
        let a = CutAssignment::new(n, k, colors).unwrap();
        let cut = cut_value(&g, &a).unwrap();
        prop_assert!(cut <= g.num_edges() as u64);
        let dr = drawing_from_cut(&g, &a).unwrap();
        prop_assert_eq!(cut + count_crossings(&dr), binom4(n as u64));
    }

    #[test]
    fn arbitrary_models_cost_at_least_nu(bits in proptest::collection::vec(any::<bool>(), 42)) {
        // n=7, k=3: any truth assignment falsifies weight >= nu_3(K_7) = 2
        let g = build_chord_graph(7).unwrap();
        let w = encode_wcnf(&g, 3).unwrap();
        prop_assert!(w.unsat_weight(&bits).unwrap() >= 2);
        if let Ok(a) = parse_wcnf_model(&format!("v {}", bits.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>()), &w) {
            // the decoded coloring is never worse than the model it came from
            let decoded = w.model_of(&a).unwrap();
            prop_assert!(w.unsat_weight(&decoded).unwrap() <= w.unsat_weight(&bits).unwrap());
        }
    }
}
