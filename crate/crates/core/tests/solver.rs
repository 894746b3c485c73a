use std::collections::BTreeSet;

use gama::graver::{build_basis, BasisOptions, ConstraintKind, GraverBasis};
use gama::oracle::{brute_force_solve, enumerate_feasible};
use gama::problems::{generate_instance, Curvature, GeneratorConfig, ProblemClass, QuadraticInstance};
use gama::solver::{
    augment, is_locally_optimal, solve, solve_from_seeds, AugmentOptions, LandscapeClass, MovePolicy, NumericMode,
    ResultsFile, SolverConfig,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn exact() -> SolverConfig {
    SolverConfig {
        mode: NumericMode::Exact,
        ..Default::default()
    }
}

fn basis_for(inst: &QuadraticInstance) -> GraverBasis {
    build_basis(inst.kind(), &BasisOptions::default()).unwrap()
}

fn cbqp(n: usize, b: i64, c: Vec<i64>, q: Vec<i64>) -> QuadraticInstance {
    QuadraticInstance::binary("t", ConstraintKind::Cardinality { n }, c, q, vec![b]).unwrap()
}

#[test]
fn convex_cardinality_reaches_the_optimum_from_every_seed() {
    let inst = cbqp(
        4,
        2,
        vec![3, -1, 4, -5],
        vec![2, 0, 0, 0, 0, 1, 0, 0, 0, 0, 3, 0, 0, 0, 0, 7],
    );
    let basis = basis_for(&inst);
    let brute = brute_force_solve(&inst).unwrap();
    assert_eq!(brute.feasible.len(), 6);
    for (x0, _) in &brute.feasible {
        for policy in [MovePolicy::FirstImprovement, MovePolicy::BestImprovement] {
            let options = AugmentOptions {
                policy,
                sampler_budget: None,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            let r = augment(&inst, &basis, x0, &options, NumericMode::Exact, &mut rng).unwrap();
            assert_eq!(r.terminal_f, brute.best_f);
        }
    }
}

#[test]
fn unique_feasible_point_does_not_move() {
    let inst = cbqp(3, 3, vec![1, 2, 3], vec![0; 9]);
    let r = augment(
        &inst,
        &basis_for(&inst),
        &[1, 1, 1],
        &AugmentOptions::default(),
        NumericMode::Exact,
        &mut ChaCha8Rng::seed_from_u64(0),
    )
    .unwrap();
    assert_eq!((r.terminal_x, r.steps), (vec![1, 1, 1], 0));
    let report = solve(&inst, &exact()).unwrap();
    assert_eq!(report.distinct_terminal_values.len(), 1);
}

#[test]
fn ties_are_never_taken() {
    // Q = -I, b = 1: every feasible point has f = -1, so no move is strict
    let q = vec![-1, 0, 0, 0, -1, 0, 0, 0, -1];
    let inst = cbqp(3, 1, vec![0; 3], q);
    for x0 in enumerate_feasible(&inst).unwrap() {
        let r = augment(
            &inst,
            &basis_for(&inst),
            &x0,
            &AugmentOptions::default(),
            NumericMode::Double,
            &mut ChaCha8Rng::seed_from_u64(0),
        )
        .unwrap();
        assert_eq!(r.steps, 0);
        assert_eq!(r.terminal_x, x0);
    }
}

#[test]
fn infeasible_seed_is_rejected() {
    let inst = cbqp(3, 1, vec![0; 3], vec![0; 9]);
    let basis = basis_for(&inst);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    assert!(augment(
        &inst,
        &basis,
        &[1, 1, 0],
        &AugmentOptions::default(),
        NumericMode::Exact,
        &mut rng
    )
    .is_err());
}

/// Two separated minima on the b = 2 slice: {0, 1} with f = -20 and
/// {2, 3} with f = -18. Every single swap leaves both at f ≥ 0.
fn two_wells(shift: i64) -> QuadraticInstance {
    let mut q = vec![0; 16];
    q[1] = -10;
    q[4] = -10;
    q[11] = -9;
    q[14] = -9;
    for i in 0..4 {
        q[i * 4 + i] = shift;
    }
    cbqp(4, 2, vec![0; 4], q)
}

#[test]
fn separated_minima_are_not_convex_like() {
    let inst = two_wells(0);
    let seeds = enumerate_feasible(&inst).unwrap();
    let report = solve_from_seeds(&inst, &basis_for(&inst), &seeds, &exact()).unwrap();
    assert!(report.distinct_terminal_values.len() >= 2);
    assert_ne!(report.landscape_class, LandscapeClass::ConvexLike);
    assert_eq!(report.best_solutions, vec![vec![1, 1, 0, 0]]);
}

#[test]
fn positive_semidefinite_alone_does_not_give_exactness() {
    // Adding 10·I makes Q diagonally dominant, hence PSD, and shifts every
    // point of the slice by the same 20. The well at {2, 3} stays a strict
    // local minimum above the global one.
    let inst = two_wells(10);
    let x = [0, 0, 1, 1];
    let basis = basis_for(&inst);
    assert!(is_locally_optimal(&inst, &basis, &x).unwrap());
    let r = augment(
        &inst,
        &basis,
        &x,
        &AugmentOptions::default(),
        NumericMode::Exact,
        &mut ChaCha8Rng::seed_from_u64(0),
    )
    .unwrap();
    let brute = brute_force_solve(&inst).unwrap();
    assert!(r.terminal_f > brute.best_f);
}

#[test]
fn exhaustive_seeding_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..5 {
        let inst = generate_instance(&mut rng, ProblemClass::Cbqp, 10, 1, &GeneratorConfig::default()).unwrap();
        let seeds = enumerate_feasible(&inst).unwrap();
        let basis = basis_for(&inst);
        let report = solve_from_seeds(&inst, &basis, &seeds, &exact()).unwrap();
        let brute = brute_force_solve(&inst).unwrap();
        assert_eq!(report.best.terminal_f, brute.best_f);
        let found: BTreeSet<_> = report.best_solutions.iter().cloned().collect();
        assert_eq!(found, brute.optima.iter().cloned().collect());
        for r in &report.all_terminals {
            assert!(is_locally_optimal(&inst, &basis, &r.terminal_x).unwrap());
        }
    }
}

#[test]
fn thread_count_and_numeric_mode_do_not_change_results() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for class in ProblemClass::STRUCTURED {
        let inst = generate_instance(&mut rng, class, 6, 4, &GeneratorConfig::default()).unwrap();
        let base = SolverConfig {
            rng_seed: 5,
            ..Default::default()
        };
        let one = solve(&inst, &base).unwrap();
        let many = solve(
            &inst,
            &SolverConfig {
                threads: 4,
                ..base.clone()
            },
        )
        .unwrap();
        let rational = solve(
            &inst,
            &SolverConfig {
                mode: NumericMode::Exact,
                ..base.clone()
            },
        )
        .unwrap();
        assert_eq!(one.all_terminals, many.all_terminals);
        assert_eq!(one.all_terminals, rational.all_terminals);
        assert_eq!(one.seed_count(), if class == ProblemClass::Cbqp { 50 } else { 24 });
    }
}

#[test]
fn best_improvement_terminals_are_local_optima() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let inst = generate_instance(&mut rng, ProblemClass::Qap, 5, 5, &GeneratorConfig::default()).unwrap();
    let config = SolverConfig {
        augment: AugmentOptions {
            policy: MovePolicy::BestImprovement,
            sampler_budget: None,
        },
        ..Default::default()
    };
    let report = solve(&inst, &config).unwrap();
    let basis = basis_for(&inst);
    for r in &report.all_terminals {
        assert!(is_locally_optimal(&inst, &basis, &r.terminal_x).unwrap());
    }
}

#[test]
fn truncated_basis_still_yields_feasible_local_optima() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let inst = generate_instance(&mut rng, ProblemClass::Qap, 6, 6, &GeneratorConfig::default()).unwrap();
    let mut config = SolverConfig::default();
    config.basis.max_cycle_len = Some(2);
    config.augment.sampler_budget = Some(50);
    let basis = build_basis(inst.kind(), &config.basis).unwrap();
    assert!(basis.is_truncated());
    let report = solve(&inst, &config).unwrap();
    assert!(report.basis_truncated);
    for r in &report.all_terminals {
        assert!(gama::problems::check_feasible(&inst, &r.terminal_x));
        assert!(is_locally_optimal(&inst, &basis, &r.terminal_x).unwrap());
    }
}

#[test]
fn results_file_round_trips() {
    let inst = generate_instance(
        &mut ChaCha8Rng::seed_from_u64(14),
        ProblemClass::Qsap2,
        4,
        3,
        &GeneratorConfig {
            curvature: Curvature::Gram,
            value_range: (-3, 3),
            ..Default::default()
        },
    )
    .unwrap();
    let report = solve(&inst, &SolverConfig::default()).unwrap();
    let file = ResultsFile::from_report(&report, 1.5, Some(vec![report.best.terminal_x.clone()]));
    let text = serde_json::to_string(&file).unwrap();
    assert_eq!(serde_json::from_str::<ResultsFile>(&text).unwrap(), file);
    assert_eq!(file.seed_count, 12);
    assert_eq!(file.path_lengths.len(), 12);
}
