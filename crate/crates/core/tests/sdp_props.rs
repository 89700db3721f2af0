use bookcross::chordgraph::build_chord_graph;
use bookcross::exact::{nu_exact, Budget};
use bookcross::formulas::{binom4, z_k};
use bookcross::sdp::{
    alpha_upper_bound, assemble_reduced, certify_bound, certify_bound_with_margin, fj_dense, fj_for,
    fj_laplacian_problem, fj_reduced, solve_conic, ReducedFJ, SolveStatus, SolverOptions,
};
use nalgebra::DMatrix;

const TOL: f64 = 1e-8;

#[test]
fn complete_graph_k3_sanity() {
    // K_3 with k = 3: every edge can be cut, and X = -1/2 off the diagonal attains 3
    let lap = DMatrix::from_row_slice(3, 3, &[2.0, -1.0, -1.0, -1.0, 2.0, -1.0, -1.0, -1.0, 2.0]);
    let p = fj_laplacian_problem(&lap, 3).unwrap();
    let sol = solve_conic(&p, &SolverOptions::default()).unwrap();
    assert_eq!(sol.status, SolveStatus::Optimal);
    assert!((sol.objective_value - 3.0).abs() < 1e-6, "{}", sol.objective_value);
    // k = 2 on K_3 is the Goemans-Williamson value 9/4
    let p = fj_laplacian_problem(&lap, 2).unwrap();
    let sol = solve_conic(&p, &SolverOptions::default()).unwrap();
    assert!((sol.objective_value - 2.25).abs() < 1e-6, "{}", sol.objective_value);
}

#[test]
fn dense_and_reduced_agree_small() {
    for n in [7, 9] {
        let g = build_chord_graph(n).unwrap();
        for k in 2..=4 {
            let dense = fj_dense(&g, k, TOL).unwrap().solution.objective_value;
            let reduced = fj_reduced(n, k, TOL).unwrap().solution.objective_value;
            assert!((dense - reduced).abs() <= 1e-5 * (1.0 + dense), "n={n} k={k}: {dense} vs {reduced}");
        }
    }
}

#[test]
fn relaxation_dominates_exact_cut_and_sandwich_holds() {
    for n in 7..=11 {
        for k in 2..=5 {
            let exact = nu_exact(n, k, Budget::unlimited()).unwrap();
            let run = fj_for(n, k, TOL).unwrap();
            let cert = certify_bound(&run).unwrap();
            assert!(cert.fj_value + 1e-9 >= exact.cut_size as f64, "n={n} k={k}");
            assert!(cert.fj_value <= binom4(n as u64) as f64 + 1e-6, "n={n} k={k}");
            assert!(cert.nu_lower <= exact.nu, "n={n} k={k}");
            assert!(exact.nu <= z_k(n as u64, k as u64).unwrap());
            if k >= 3 {
                let ub = alpha_upper_bound(n, k, cert.fj_value).unwrap();
                assert!(ub >= exact.nu as f64, "n={n} k={k}: alpha bound {ub} < {}", exact.nu);
            }
        }
    }
}

#[test]
fn certification_is_monotone_in_margin() {
    let run = fj_reduced(11, 3, TOL).unwrap();
    let base = certify_bound(&run).unwrap();
    let mut last = base.fj_value;
    for extra in [1e-6, 1e-3, 1e-1, 1.0] {
        let c = certify_bound_with_margin(&run, extra).unwrap();
        assert!(c.fj_value >= last);
        assert!(c.nu_lower <= base.nu_lower);
        last = c.fj_value;
    }
    assert!(certify_bound_with_margin(&run, -1.0).is_err());
}

#[test]
fn certification_refuses_bad_points() {
    let mut run = fj_reduced(9, 3, TOL).unwrap();
    // wreck the diagonal variables: far from feasible
    for v in run.solution.y.iter_mut().take(3) {
        *v -= 50.0;
    }
    assert!(certify_bound(&run).is_err());
    let mut failed = fj_reduced(9, 3, TOL).unwrap();
    failed.solution.status = SolveStatus::Failed;
    assert!(certify_bound(&failed).is_err());
}

#[test]
fn reduced_solution_structure() {
    let run = fj_reduced(13, 3, TOL).unwrap();
    let r = ReducedFJ::from_run(&run).unwrap();
    assert_eq!(r.d, 6);
    assert_eq!(r.y.len(), 5);
    assert_eq!(r.x_blocks.len(), 7);
    assert_eq!(r.lambda_blocks.len(), 7);
    for (i, v) in r.val.iter().enumerate() {
        let i = i + 2;
        assert_eq!(*v as usize, i * (i - 1) + 2 * (i - 1) * (6 - i));
    }
    for x in &r.x_blocks {
        assert!((x - x.transpose()).amax() < 1e-15);
        assert!(x.min() > -1e-9);
    }
    for z in r.lmi_blocks() {
        assert!((&z - z.transpose()).amax() < 1e-12);
        assert!(z.symmetric_eigen().eigenvalues.min() > -1e-6);
    }
    let p = assemble_reduced(13, 3).unwrap();
    assert_eq!(p.psd_blocks.len(), 7);
    assert!(p.psd_blocks.iter().all(|b| b.dim == 5));
}

#[test]
fn primal_and_dual_objectives_close() {
    for (n, k) in [(8, 3), (10, 2), (9, 4)] {
        let run = fj_for(n, k, TOL).unwrap();
        let s = &run.solution;
        assert_eq!(s.status, SolveStatus::Optimal);
        assert!((s.objective_value - s.primal_objective).abs() <= 1e-6 * (1.0 + s.objective_value.abs()));
        assert!(s.relative_gap <= TOL);
    }
}
