//! Randomized invariants: classification order, witness symmetry, identity
//! checks, and composition arithmetic.

use proptest::prelude::*;

use magicchains::{
    difference_identities, disjoint_union, find_t1, parallel, rooted_product, series, solve,
    verify_labeling, verify_t1, Graph, MagicResult, NbhFamily, TwoTerminalGraph, VertexSet,
};

fn arb_graph(max_order: usize) -> impl Strategy<Value = Graph> {
    (2..=max_order).prop_flat_map(|n| {
        let slots = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), slots).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut at = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[at] {
                        edges.push((u, v));
                    }
                    at += 1;
                }
            }
            Graph::from_edge_list(n, &edges).expect("generated pairs are simple")
        })
    })
}

fn arb_family() -> impl Strategy<Value = NbhFamily> {
    (1usize..=9, 2usize..=6).prop_flat_map(|(universe, k)| {
        proptest::collection::vec(
            proptest::collection::btree_set(0..universe, 1..=universe),
            k,
        )
        .prop_map(move |terms| {
            NbhFamily::from_sets(
                universe,
                terms.into_iter().map(VertexSet::from_iter).collect(),
            )
            .expect("elements drawn from the universe")
        })
    })
}

proptest! {
    /// cycle implies chain implies trail implies walk, and classify sits at
    /// the strongest satisfied class.
    #[test]
    fn classification_is_monotone(f in arb_family()) {
        if f.is_cycle() {
            prop_assert!(f.is_chain());
        }
        if f.is_chain() {
            prop_assert!(f.is_trail());
        }
        if f.is_trail() {
            prop_assert!(f.is_walk());
        }
        let class = f.classify();
        let expected = if !f.is_walk() {
            0
        } else if !f.is_trail() {
            1
        } else if !f.is_chain() {
            2
        } else if !f.is_cycle() {
            3
        } else {
            4
        };
        prop_assert_eq!(class.rank(), expected);
    }

    /// Renaming universe elements changes witnesses, never the class.
    #[test]
    fn classification_ignores_element_names(
        f in arb_family(),
        salt in any::<u64>(),
    ) {
        let u = f.universe();
        let mut perm: Vec<usize> = (0..u).collect();
        // cheap seeded shuffle
        for i in (1..u).rev() {
            let j = (salt as usize).wrapping_mul(i + 7) % (i + 1);
            perm.swap(i, j);
        }
        let renamed = NbhFamily::from_sets(
            u,
            f.terms()
                .iter()
                .map(|t| VertexSet::from_iter(t.iter().map(|v| perm[v])))
                .collect(),
        )
        .expect("permutation stays in the universe");
        prop_assert_eq!(renamed.classify().name(), f.classify().name());
    }

    /// Dropping a trailing repeat of an earlier term is the only change
    /// normalization may make.
    #[test]
    fn normalization_only_trims_a_closing_repeat(f in arb_family()) {
        prop_assume!(f.len() >= 3);
        let closed = f.normalize_closed();
        if f.terms()[..f.len() - 1].contains(f.term(f.len() - 1)) {
            prop_assert_eq!(closed.len(), f.len() - 1);
            prop_assert_eq!(closed.terms(), &f.terms()[..f.len() - 1]);
        } else {
            prop_assert_eq!(closed.terms(), f.terms());
        }
    }

    /// A connectivity path witness, read as a subfamily, is itself a chain.
    #[test]
    fn intersection_paths_are_chains(f in arb_family(), i in 0usize..6, j in 0usize..6) {
        prop_assume!(i < f.len() && j < f.len() && i != j);
        if let Some(path) = f.chain_between(i, j) {
            prop_assert_eq!(*path.first().expect("nonempty"), i);
            prop_assert_eq!(*path.last().expect("nonempty"), j);
            let sub = f.subfamily(&path).expect("indices from chain_between");
            if sub.len() >= 2 {
                prop_assert!(sub.is_chain());
            }
        }
    }

    /// Every found chain survives reversal with its ends swapped, and its
    /// difference identities hold.
    #[test]
    fn found_chains_reverse_and_satisfy_identities(g in arb_graph(8)) {
        for length in [2usize, 3] {
            let found = find_t1(&g, length, 20_000, Some(4));
            for chain in &found.chains {
                let identities = difference_identities(chain);
                prop_assert!(identities.is_some());

                let backwards: Vec<usize> = chain.centers.iter().rev().copied().collect();
                let rev = verify_t1(&g, &backwards);
                prop_assert!(rev.is_ok(), "reversal rejected: {:?}", rev.err());
                let rev = rev.expect("checked");
                prop_assert_eq!(rev.v_first, chain.v_last);
                prop_assert_eq!(rev.v_last, chain.v_first);
            }
        }
    }

    /// Whenever the solver says magic, the labeling re-checks at the claimed
    /// constant.
    #[test]
    fn magic_verdicts_carry_checkable_labelings(g in arb_graph(7)) {
        let (result, _) = solve(&g);
        if let MagicResult::Magic { constant, labeling } = result {
            prop_assert_eq!(verify_labeling(&g, &labeling), Some(constant));
        }
    }

    /// Order and size arithmetic of the composition operators.
    #[test]
    fn composition_counts_add_up(g in arb_graph(6), h in arb_graph(6)) {
        let u = disjoint_union(&g, &h);
        prop_assert_eq!(u.graph.order(), g.order() + h.order());
        prop_assert_eq!(u.graph.size(), g.size() + h.size());
        for v in 0..g.order() {
            prop_assert_eq!(u.graph.degree(u.left.apply(v)), g.degree(v));
        }
        for v in 0..h.order() {
            prop_assert_eq!(u.graph.degree(u.right.apply(v)), h.degree(v));
        }

        let x = TwoTerminalGraph::new(g.clone(), 0, g.order() - 1).expect("distinct terminals");
        let y = TwoTerminalGraph::new(h.clone(), 0, h.order() - 1).expect("distinct terminals");
        let s = series(&x, &y).expect("series");
        prop_assert_eq!(s.graph.graph.order(), g.order() + h.order() - 1);
        prop_assert_eq!(s.graph.graph.size(), g.size() + h.size());

        let p = parallel(&x, &y).expect("parallel");
        prop_assert_eq!(p.graph.graph.order(), g.order() + h.order() - 2);
        prop_assert_eq!(
            p.graph.graph.size() + p.collapsed_edges.len(),
            g.size() + h.size()
        );

        let r = rooted_product(&g, &h, 0).expect("rooted product");
        prop_assert_eq!(r.graph.order(), g.order() * h.order());
        prop_assert_eq!(r.graph.size(), g.size() + g.order() * h.size());
    }
}
