mod common;

use std::sync::OnceLock;

use common::*;
use nilpair::linalg::Subspace;
use nilpair::matrix::{MatrixFormat, MatrixRepr};
use nilpair::rational::{format_rational, parse_rational, Rational};
use nilpair::skewgraph::{parse_graph_json, parse_graphs_text, to_json_string, to_text, Symmetry, Young};
use nilpair::{
    analyze, build_pair, classify_component, enumerate_admissible, enumerate_connected, validate, verify_relations,
    Matrix, OrbitSign, PairKind, Series, SkewGraph,
};
use proptest::prelude::*;

fn connected_up_to(n: usize) -> &'static [SkewGraph] {
    static CACHE: OnceLock<Vec<SkewGraph>> = OnceLock::new();
    CACHE.get_or_init(|| (1..=n).flat_map(|k| enumerate_connected(k).unwrap()).collect())
}

fn any_connected() -> impl Strategy<Value = SkewGraph> {
    let all = connected_up_to(9);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn admissible_pool() -> &'static [(Series, SkewGraph)] {
    static CACHE: OnceLock<Vec<(Series, SkewGraph)>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let mut out = Vec::new();
        for series in Series::ALL {
            for dimv in series.min_dimv()..=9 {
                if series.check_dimv(dimv).is_ok() {
                    for g in enumerate_admissible(series, dimv, PairKind::Distinguished).unwrap() {
                        out.push((series, g));
                    }
                }
            }
        }
        out
    })
}

fn any_admissible() -> impl Strategy<Value = (Series, SkewGraph)> {
    let all = admissible_pool();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn any_connected_d() -> impl Strategy<Value = SkewGraph> {
    let all: Vec<SkewGraph> = admissible_pool()
        .iter()
        .filter(|(s, g)| *s == Series::D && g.is_connected())
        .map(|(_, g)| g.clone())
        .collect();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-50i128..=50, 1i128..=12).prop_map(|(n, d)| Rational::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn enumerated_graphs_are_valid_and_canonical(g in any_connected()) {
        prop_assert!(validate(&g).is_valid());
        prop_assert!(g.is_canonical());
    }

    #[test]
    fn shape_class_invariants(g in any_connected()) {
        let class = classify_component(&g.components[0]).unwrap();
        let cells = cells_of_nodes(&g.components[0].nodes);
        let n = g.node_count();
        match class.symmetry {
            Symmetry::Integral => prop_assert_eq!(n % 2, 1),
            Symmetry::NotCs => {}
            _ => prop_assert_eq!(n % 2, 0),
        }
        if class.is_rectangle() {
            prop_assert!(class.symmetry.is_cs());
        }
        prop_assert_eq!(class.young == Young::Both, class.is_rectangle());
        prop_assert_eq!(class.is_young(), is_young(&cells));
        prop_assert_eq!(class.is_rectangle(), is_rectangle(&cells));
        if class.near_rectangular.is_some() {
            prop_assert_eq!(n % 4, 2);
            prop_assert_eq!(class.symmetry, Symmetry::NonIntegral);
        }
    }

    #[test]
    fn text_and_json_round_trip(g in any_connected()) {
        let text = to_text(&g);
        prop_assert_eq!(parse_graphs_text(&text).unwrap(), vec![g.clone()]);
        prop_assert_eq!(parse_graph_json(&to_json_string(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_translation(g in any_connected(), dx in -5i128..5, dy in -5i128..5) {
        let moved = SkewGraph::connected(g.components[0].nodes.iter().map(|n| n.offset(dx, dy)));
        prop_assert_eq!(moved.canonical(), g);
    }

    #[test]
    fn realizations_satisfy_relations((series, g) in any_admissible()) {
        let r = build_pair(series, &g, None).unwrap();
        prop_assert!(verify_relations(&r).all_passed());
        prop_assert!(r.h1.trace() == Rational::from_integer(0));
        prop_assert!(r.h2.trace() == Rational::from_integer(0));
        // Nilpotency order of e1 is the longest row when connected.
        if g.is_connected() {
            let cells = cells_of_nodes(&g.components[0].nodes);
            let longest = (0..=bbox(&cells).1).map(|y| cells.iter().filter(|c| c.1 == y).count()).max().unwrap() as u32;
            prop_assert!(r.e1.pow(longest).is_zero());
            prop_assert!(!r.e1.pow(longest - 1).is_zero() || longest == 1);
        }
    }

    #[test]
    fn orbit_representatives_agree(g in any_connected_d()) {
        let plus = build_pair(Series::D, &g, Some(OrbitSign::Plus)).unwrap();
        let minus = build_pair(Series::D, &g, Some(OrbitSign::Minus)).unwrap();
        prop_assert!(verify_relations(&minus).all_passed());
        prop_assert_eq!(analyze(&plus).unwrap().dimension, analyze(&minus).unwrap().dimension);
    }

    #[test]
    fn rational_text_round_trip(r in small_rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn matrix_encodings_round_trip(entries in proptest::collection::vec(small_rational(), 9)) {
        let m = Matrix::from_row_major(3, 3, entries);
        for format in [MatrixFormat::Dense, MatrixFormat::Sparse] {
            prop_assert_eq!(MatrixRepr::encode(&m, format).decode().unwrap(), m.clone());
        }
    }

    #[test]
    fn subspace_dimension_formula(
        a in proptest::collection::vec(proptest::collection::vec(small_rational(), 5), 0..4),
        b in proptest::collection::vec(proptest::collection::vec(small_rational(), 5), 0..4),
    ) {
        let u = Subspace::span_dense(5, &a);
        let w = Subspace::span_dense(5, &b);
        prop_assert_eq!(u.sum(&w).dim() + u.intersect(&w).dim(), u.dim() + w.dim());
        for v in u.intersect(&w).basis_dense() {
            prop_assert!(u.contains_dense(&v) && w.contains_dense(&v));
        }
    }
}
