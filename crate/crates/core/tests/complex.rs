use rgc_core::canonical_form;
use rgc_core::complex::{apply_differential, expand_graph, Chain, Splitting};
use rgc_core::enumerate::{enumerate, enumerate_all, Selector};
use rgc_core::format::{graph_to_json, graph_to_text, parse_graph};
use rgc_core::RibbonGraph;

#[test]
fn text_and_json_round_trip_every_small_graph() {
    for e in 1..=4 {
        for v in 1..=e + 1 {
            for g in enumerate_all(v, e).unwrap().iter() {
                let text = graph_to_text(g);
                assert_eq!(&parse_graph(&text).unwrap(), g, "{text}");
                assert_eq!(&parse_graph(&graph_to_json(g).to_string()).unwrap(), g);
                assert_eq!(graph_to_text(&parse_graph(&text).unwrap()), text);
            }
        }
    }
}

#[test]
fn bases_are_sorted_and_nonzero() {
    for d in 0..2 {
        let b = enumerate(Selector::shape(2, 4), d).unwrap();
        assert!(b.classes().windows(2).all(|w| w[0] < w[1]));
        assert!(b.classes().iter().all(|g| !canonical_form(g, d).is_zero));
    }
}

#[test]
fn differential_squares_to_zero_on_chains() {
    for d in 0..2 {
        for g in enumerate(Selector::shape(2, 3), d).unwrap().classes() {
            let once: Chain = expand_graph(g, d, Splitting::Proper);
            assert!(apply_differential(&once, d, Splitting::Proper).is_empty(), "{}", graph_to_text(g));
        }
    }
}

#[test]
fn tadpole_is_closed_and_has_parity_independent_class() {
    let t = RibbonGraph::tadpole();
    for d in 0..2 {
        let c = canonical_form(&t, d);
        assert!(!c.is_zero);
        assert!(expand_graph(&c.graph, d, Splitting::Proper).is_empty());
    }
    // With univalent splittings allowed the tadpole is no longer closed.
    assert!(!expand_graph(&canonical_form(&t, 1).graph, 1, Splitting::WithEmptyArcs).is_empty());
}
