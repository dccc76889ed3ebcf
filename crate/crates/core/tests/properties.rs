use closedrees::catalog::{identity_closed_graphs, Isolated};
use closedrees::graph::{build_h, find_closed_labeling, Graph, Labeling};
use closedrees::hilbert::hilbert_function_bruteforce;
use closedrees::poly::{GbConfig, Monomial, MonomialIdeal, TermOrder};
use closedrees::rees::{
    binomial_edge_ideal, edge_t_names, fiber_presentation, rees_presentation, x_var, y_var, OracleBundle, PresentedAlgebra,
};
use closedrees::report::{analyze, closed_invariant_report, crosscheck, Analysis, CrossCheck, InvariantReport};
use closedrees::RunConfig;
use proptest::prelude::*;

fn catalog(n: usize) -> Vec<Graph> {
    identity_closed_graphs(n, Isolated::Excluded).unwrap()
}

/// Some identity-closed graph on 3..=5 vertices.
fn closed_graph() -> impl Strategy<Value = Graph> {
    (3usize..=5).prop_flat_map(|n| {
        let gs = catalog(n);
        (0..gs.len()).prop_map(move |i| gs[i].clone())
    })
}

fn h_degrees(g: &Graph) -> (usize, usize) {
    let gb = GbConfig::default();
    let ideal = binomial_edge_ideal(g);
    let names = edge_t_names(g);
    let r = rees_presentation(&ideal, &names, &gb).unwrap().hilbert_data().unwrap();
    let f = fiber_presentation(&ideal, &names, &gb).unwrap().hilbert_data().unwrap();
    (r.h_degree(), f.h_degree())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // Induced subgraphs of an identity-closed graph are closed in the inherited order.
    #[test]
    fn h_degree_monotone_on_induced_subgraphs(g in closed_graph(), mask in 1u32..32) {
        let keep: Vec<usize> = (1..=g.n()).filter(|v| mask & (1 << (v - 1)) != 0).collect();
        let (h, _) = g.induced(&keep);
        prop_assume!(h.num_edges() > 0);
        let (rg, fg) = h_degrees(&g);
        let (rh, fh) = h_degrees(&h);
        prop_assert!(rh <= rg, "Rees: induced {} > {}", rh, rg);
        prop_assert!(fh <= fg, "fiber: induced {} > {}", fh, fg);
    }

    #[test]
    fn rees_initial_dimension(g in closed_graph()) {
        let b = OracleBundle::new(&g, &Labeling::identity(g.n()), &GbConfig::default()).unwrap();
        prop_assert_eq!(b.rees_initial.hilbert_data().unwrap().dim, 2 * g.n() + 1);
        prop_assert_eq!(b.rees.hilbert_data().unwrap().dim, 2 * g.n() + 1);
    }

    // X_i - Y_j edges of H are exactly the leading terms x_i y_j of the Gröbner basis.
    #[test]
    fn h_edges_are_initial_terms(g in closed_graph()) {
        let id = Labeling::identity(g.n());
        let h = build_h(&g, &id).unwrap();
        let n = g.n();
        let from_h = MonomialIdeal::new(
            2 * n,
            h.edges.iter().map(|&(i, j)| Monomial::var(x_var(i)).mul(&Monomial::var(y_var(n, j)))),
        );
        let b = OracleBundle::new(&g, &id, &GbConfig::default()).unwrap();
        prop_assert_eq!(from_h, b.initial);
    }

    #[test]
    fn relabeled_graph_gives_same_report(g in closed_graph(), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (1..=n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let shuffled = g.relabel(&Labeling::new(perm).unwrap()).unwrap();
        prop_assert!(find_closed_labeling(&shuffled).unwrap().is_some());
        let cfg = RunConfig::default();
        let a = closed_invariant_report(&g, &cfg).unwrap();
        let b = closed_invariant_report(&shuffled, &cfg).unwrap();
        prop_assert_eq!(a.reg_rees, b.reg_rees);
        prop_assert_eq!(a.analytic_spread, b.analytic_spread);
        prop_assert_eq!(a.fiber_reg_upper, b.fiber_reg_upper);
        prop_assert_eq!(a.mat_h, b.mat_h);
        prop_assert_eq!(h_degrees(&g), h_degrees(&b.graph.relabel(&b.labeling).unwrap()));
    }

    #[test]
    fn report_json_round_trip(g in closed_graph()) {
        let r = closed_invariant_report(&g, &RunConfig::default()).unwrap();
        let back: InvariantReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        prop_assert_eq!(back, r);
    }
}

#[test]
fn oracle_values_agree_on_four_vertex_catalog() {
    let cfg = RunConfig::default();
    for g in catalog(4) {
        let x = crosscheck(&g, &cfg).unwrap();
        let names: Vec<&str> = x.discrepancies.iter().map(|d| d.invariant.as_str()).collect();
        // K_4's fiber has regularity 1, below omega - 2
        let expected: Vec<&str> = if g == Graph::complete(4) { vec!["fiber_reg_lower"] } else { vec![] };
        assert_eq!(names, expected, "{:?}", g.edges());
        assert!(x.incomplete.is_empty());
        assert_eq!(x.oracle.labeling_invariant, Some(true));
    }
}

#[test]
fn bruteforce_hilbert_function_of_path_ideal() {
    // S/J_{P_3}: 6 variables, complete intersection of two quadrics
    let ideal = binomial_edge_ideal(&Graph::path(3));
    let counts: Vec<u64> =
        (0..=4).map(|d| hilbert_function_bruteforce(&ideal, &TermOrder::lex(), d, &GbConfig::default()).unwrap()).collect();
    // coefficients of (1 - t^2)^2 / (1 - t)^6
    assert_eq!(counts, vec![1, 6, 19, 44, 85]);
}

#[test]
fn json_round_trips() {
    let g = Graph::new(4, [(1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
    let back: Graph = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
    assert_eq!(back, g);

    let b = OracleBundle::new(&g, &Labeling::identity(4), &GbConfig::default()).unwrap();
    for p in [&b.rees, &b.fiber] {
        let back: PresentedAlgebra = serde_json::from_str(&serde_json::to_string(p).unwrap()).unwrap();
        assert_eq!(&back, p);
    }

    let x = crosscheck(&g, &RunConfig::default()).unwrap();
    let back: CrossCheck = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
    assert_eq!(back, x);

    let a = analyze(&Graph::cycle(5), &RunConfig::default()).unwrap();
    assert!(matches!(a, Analysis::NotClosed { .. }));
    let back: Analysis = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
    assert_eq!(back, a);

    let cfg = RunConfig { smax: 2, ..RunConfig::default() };
    let back: RunConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
    assert_eq!(back, cfg);
}
