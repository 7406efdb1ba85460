use proptest::prelude::*;

use stacklayout::extensions::linear_extensions;
use stacklayout::generators::{gen_twist_gadget, random_dag};
use stacklayout::layout::validate_layout;
use stacklayout::pages::{greedy_first_fit, min_pages_for_order};
use stacklayout::sat::{
    brute_force_stack_number, encode, export_dimacs, parse_dimacs, solve_cnf, stack_number, stack_number_fixed_order,
    verify_at_least, SatOutcome, SolverConfig, StackNumber, Verdict,
};
use stacklayout::search::{face_consistent_3trees, search_witness, ClassFilter, SearchConfig};
use stacklayout::{max_twist, Dag};

fn exact(r: StackNumber) -> usize {
    match r {
        StackNumber::Exact { k, .. } => k,
        StackNumber::Exceeds(k) => panic!("exceeds {k}"),
    }
}

fn small_dag() -> impl Strategy<Value = Dag> {
    (1usize..=6, 0.0f64..0.9, any::<u64>()).prop_map(|(n, p, seed)| random_dag(n, p, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn fixed_order_sat_matches_coloring(g in small_dag()) {
        let cfg = SolverConfig::default();
        for o in linear_extensions(&g).into_iter().take(6) {
            let col = min_pages_for_order(&g, &o, 8).unwrap().unwrap();
            validate_layout(&g, &col).unwrap();
            let sat = stack_number_fixed_order(&g, &o, 8, &cfg).unwrap();
            prop_assert_eq!(exact(sat), col.k);
            let greedy = greedy_first_fit(&g, &o).unwrap();
            validate_layout(&g, &greedy).unwrap();
            prop_assert!(max_twist(&g, &o).unwrap().k() <= col.k);
            prop_assert!(col.k <= greedy.k);
        }
    }

    #[test]
    fn symmetry_breaking_keeps_optimum(g in small_dag()) {
        let on = SolverConfig::default();
        let off = SolverConfig { symmetry_breaking: false, ..SolverConfig::default() };
        let a = exact(stack_number(&g, 8, &on).unwrap());
        prop_assert_eq!(a, exact(stack_number(&g, 8, &off).unwrap()));
        prop_assert_eq!(a, brute_force_stack_number(&g));
    }

    #[test]
    fn dimacs_round_trip_keeps_verdict(g in small_dag(), k in 1usize..4) {
        let f = encode(&g, k).unwrap();
        let mut buf = Vec::new();
        export_dimacs(f.num_vars, &f.clauses, &mut buf).unwrap();
        let (n, clauses) = parse_dimacs(&buf[..]).unwrap();
        prop_assert_eq!(&clauses, &f.clauses);
        let a = matches!(solve_cnf(f.num_vars, &f.clauses, None), SatOutcome::Sat(_));
        let b = matches!(solve_cnf(n, &clauses, None), SatOutcome::Sat(_));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn verify_agrees_with_brute_force(g in small_dag(), k in 0usize..5) {
        let s = brute_force_stack_number(&g);
        match verify_at_least(&g, k, &SolverConfig::default()).unwrap() {
            Verdict::AtLeast { witness } => {
                prop_assert!(s >= k);
                if let Some(l) = witness {
                    validate_layout(&g, &l).unwrap();
                    prop_assert!(l.k <= k);
                }
            }
            Verdict::Refuted(l) => {
                prop_assert!(s < k);
                validate_layout(&g, &l).unwrap();
                prop_assert!(l.k < k);
            }
        }
    }
}

#[test]
fn gadget_lower_bounds() {
    let cfg = SolverConfig::default();
    for k in 2..=4 {
        let g = gen_twist_gadget(k).unwrap();
        assert!(matches!(verify_at_least(&g, k, &cfg).unwrap(), Verdict::AtLeast { witness: Some(_) }));
        assert!(matches!(verify_at_least(&g, k + 1, &cfg).unwrap(), Verdict::Refuted(_)));
        assert_eq!(
            stack_number(&g, k - 1, &cfg).unwrap(),
            StackNumber::Exceeds(k - 1)
        );
    }
}

#[test]
fn search_witnesses_reverify() {
    for filter in ClassFilter::ALL {
        for target in 1..=3 {
            let out = search_witness(&SearchConfig::new(filter, 6, target)).unwrap();
            let w = out.witness.unwrap_or_else(|| panic!("{filter} target {target}: no witness"));
            assert!(filter.accepts(&w.graph).unwrap());
            assert!(brute_force_stack_number(&w.graph) >= target);
            if let Some(l) = w.layout {
                validate_layout(&w.graph, &l).unwrap();
            }
        }
    }
}

#[test]
fn upward_odags_up_to_seven_vertices_fit_three_stacks() {
    let out = search_witness(&SearchConfig::new(ClassFilter::UpwardOdag, 7, 4)).unwrap();
    assert!(out.witness.is_none());
    assert!(!out.budget_exhausted);
    assert!(out.examined > 1000);
}

#[test]
fn small_face_consistent_3trees_agree_with_brute_force() {
    let cfg = SolverConfig::default();
    for g in face_consistent_3trees(6) {
        assert_eq!(exact(stack_number(&g, 6, &cfg).unwrap()), brute_force_stack_number(&g));
    }
}

#[test]
fn sampled_search_above_exhaustive_limit() {
    let mut cfg = SearchConfig::new(ClassFilter::SsSinkUpwardOdag, 8, 2);
    cfg.samples_per_size = 50;
    let a = search_witness(&cfg).unwrap();
    let b = search_witness(&cfg).unwrap();
    assert_eq!(
        a.witness.map(|w| w.graph.to_text()),
        b.witness.map(|w| w.graph.to_text())
    );
}
