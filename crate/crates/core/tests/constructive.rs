use stacklayout::constructive::{
    order_monotone, order_outerpath, order_single_source, order_up3tree, stacks_single_source_for,
    ConstructOptions,
};
use stacklayout::constructive::{monotone, outerpath, single_source, up3tree};
use stacklayout::generators::{
    gen_monotone_odag, gen_outerpath, gen_single_source_odag, gen_transitive_odag, gen_up3tree,
};
use stacklayout::layout::validate_layout;
use stacklayout::order::is_linear_extension;
use stacklayout::recognition::{classify, peel_3tree, peel_outerplanar, ConstructionSequence};
use stacklayout::twist::{max_twist, max_twist_bruteforce};
use stacklayout::{Dag, Edge};

fn sorted(mut e: Vec<Edge>) -> Vec<Edge> {
    e.sort();
    e
}

fn peel(g: &Dag) -> ConstructionSequence {
    let seq = peel_outerplanar(g, Edge::new(0, 1)).unwrap();
    assert_eq!(sorted(seq.replay_edges()), sorted(g.edges().to_vec()));
    assert_eq!(seq.nodes.len(), g.n() - 2);
    seq
}

#[test]
fn single_source_frames_and_stacks() {
    for seed in 0..60 {
        for n in [2, 3, 5, 12, 40] {
            let g = gen_single_source_odag(n, seed).unwrap();
            let seq = peel(&g);
            let a = single_source::order_single_source_with(&seq, &ConstructOptions::checked())
                .unwrap_or_else(|e| panic!("n={n} seed={seed}: {e}"));
            assert!(is_linear_extension(&g, a.order.order()).unwrap());
            assert!(max_twist(&g, a.order.order()).unwrap().k() <= 3);
            let l = stacks_single_source_for(&g, &seq).unwrap_or_else(|e| panic!("n={n} seed={seed}: {e}"));
            assert!(l.k <= 4);
            assert_eq!(&l.order, a.order.order());
            validate_layout(&g, &l).unwrap();
        }
    }
}

#[test]
fn single_source_stacks_large() {
    for seed in 0..20 {
        let g = gen_single_source_odag(500, seed).unwrap();
        let l = stacks_single_source_for(&g, &peel(&g)).unwrap();
        validate_layout(&g, &l).unwrap();
        assert!(l.k <= 4);
    }
}

#[test]
fn transitive_orders_have_twist_one() {
    for seed in 0..30 {
        let g = gen_transitive_odag(30, seed).unwrap();
        let a = order_single_source(&peel(&g)).unwrap();
        assert_eq!(a.twist.k(), 1);
    }
}

#[test]
fn monotone_frames() {
    for seed in 0..60 {
        for n in [2, 3, 6, 15, 40] {
            let g = gen_monotone_odag(n, seed).unwrap();
            let a = monotone::order_monotone_with(&peel(&g), &ConstructOptions::checked())
                .unwrap_or_else(|e| panic!("n={n} seed={seed}: {e}"));
            assert!(is_linear_extension(&g, a.order.order()).unwrap());
            assert!(a.twist.k() <= 4);
        }
    }
}

#[test]
fn monotone_reversal_symmetry() {
    for seed in 0..30 {
        let g = gen_monotone_odag(40, seed).unwrap();
        let r = g.reverse();
        let seq = peel_outerplanar(&r, Edge::new(1, 0)).unwrap();
        let a = order_monotone(&seq).unwrap();
        let back = a.order.order().reversed();
        assert!(is_linear_extension(&g, &back).unwrap());
        assert!(max_twist(&g, &back).unwrap().k() <= 4);
    }
}

#[test]
fn outerpath_frames() {
    for seed in 0..80 {
        for n in [2, 3, 4, 8, 20, 60] {
            let g = gen_outerpath(n, seed).unwrap();
            let a = outerpath::order_outerpath_with(&peel(&g), &ConstructOptions::checked())
                .unwrap_or_else(|e| panic!("n={n} seed={seed}: {e}"));
            assert!(is_linear_extension(&g, a.order.order()).unwrap());
            assert!(a.twist.k() <= 4);
        }
    }
}

#[test]
fn up3tree_frames() {
    for seed in 0..60 {
        for n in [3, 4, 7, 15, 40] {
            let g = gen_up3tree(n, seed).unwrap();
            let dec = peel_3tree(&g).unwrap();
            assert!(dec.face_consistent, "n={n} seed={seed}");
            assert_eq!(sorted(dec.replay_edges()), sorted(g.edges().to_vec()));
            let a = up3tree::order_up3tree_with(&dec, &ConstructOptions::checked())
                .unwrap_or_else(|e| panic!("n={n} seed={seed}: {e}"));
            assert!(is_linear_extension(&g, a.order.order()).unwrap());
            assert!(a.twist.k() <= 5);
        }
    }
}

#[test]
fn small_orders_match_brute_force_twist() {
    for seed in 0..40 {
        let g = gen_outerpath(9, seed).unwrap();
        let a = order_outerpath(&peel(&g)).unwrap();
        assert_eq!(a.twist.k(), max_twist_bruteforce(&g, a.order.order()).unwrap().k());
        let g = gen_up3tree(7, seed).unwrap();
        let a = order_up3tree(&peel_3tree(&g).unwrap()).unwrap();
        assert_eq!(a.twist.k(), max_twist_bruteforce(&g, a.order.order()).unwrap().k());
    }
}

#[test]
fn generator_classifier_agreement() {
    for seed in 0..15 {
        for n in [3, 9, 30] {
            let t = classify(&gen_transitive_odag(n, seed).unwrap());
            assert!(t.transitive_only && t.single_source && t.single_sink);
            let s = classify(&gen_single_source_odag(n, seed).unwrap());
            assert!(s.maximal_outerplanar && s.single_source);
            assert!(classify(&gen_monotone_odag(n, seed).unwrap()).monotone);
            assert!(classify(&gen_outerpath(n, seed).unwrap()).outerpath);
            let u = classify(&gen_up3tree(n, seed).unwrap());
            assert!(u.three_tree && u.face_consistent_3tree);
        }
    }
}

#[test]
fn orders_are_deterministic() {
    for seed in 0..10 {
        let g = gen_up3tree(50, seed).unwrap();
        let a = order_up3tree(&peel_3tree(&g).unwrap()).unwrap();
        let b = order_up3tree(&peel_3tree(&g).unwrap()).unwrap();
        assert_eq!(a, b);
        let g = gen_outerpath(50, seed).unwrap();
        assert_eq!(order_outerpath(&peel(&g)).unwrap(), order_outerpath(&peel(&g)).unwrap());
    }
}
