use rgc_core::derivation::{es_trace, johnson_generators, necklace_to_derivation};
use rgc_core::format::{
    derivation_to_json, necklace_to_json, parse_derivation, parse_necklace, parse_tensor, tensor_to_json,
};
use rgc_core::linalg::rat;
use rgc_core::necklace::{goldman_bracket, turaev_cobracket, Necklace};
use rgc_core::state_sum::rho_eval;
use rgc_core::RibbonGraph;

fn necklace(g: usize, symbols: &[&str]) -> Necklace {
    Necklace::from_symbols(g, symbols).unwrap()
}

#[test]
fn necklace_json_is_stable() {
    let mut u = necklace(2, &["b2", "a1", "a1"]).scale(&rat(3));
    u = u.add(&necklace(2, &["a2"]).scale(&rat(-1))).unwrap();
    let v = necklace_to_json(&u);
    assert_eq!(
        v.to_string(),
        r#"{"g":2,"terms":[{"coeff":"3","word":["a1","a1","b2"]},{"coeff":"-1","word":["a2"]}]}"#
    );
    assert_eq!(parse_necklace(&v).unwrap(), u);
}

#[test]
fn state_sum_output_survives_json() {
    let u = necklace(2, &["a1", "a2", "b1", "b2"]);
    let t = rho_eval(&RibbonGraph::tadpole(), std::slice::from_ref(&u)).unwrap();
    assert_eq!(t, turaev_cobracket(&u));
    assert_eq!(parse_tensor(&tensor_to_json(&t)).unwrap(), t);
}

#[test]
fn bar_graph_is_antisymmetric_in_its_inputs() {
    let (u, v) = (necklace(1, &["a1", "a1", "b1"]), necklace(1, &["b1", "a1"]));
    let bar = RibbonGraph::bar();
    let uv = rho_eval(&bar, &[u.clone(), v.clone()]).unwrap();
    let vu = rho_eval(&bar, &[v.clone(), u.clone()]).unwrap();
    assert_eq!(uv, vu.scale(&rat(-1)));
    assert_eq!(uv, goldman_bracket(&u, &v).unwrap().into());
}

#[test]
fn derivations_round_trip_through_json_with_their_traces() {
    for d in johnson_generators(2) {
        let back = parse_derivation(&derivation_to_json(&d).to_string()).unwrap();
        assert_eq!(back, d);
        assert_eq!(es_trace(&back).unwrap(), es_trace(&d).unwrap());
    }
    let h = necklace_to_derivation(&necklace(2, &["a1", "b1", "a2", "b2"])).unwrap();
    assert!(h.is_symplectic());
    let back = parse_derivation(&derivation_to_json(&h).to_string()).unwrap();
    assert_eq!(back.to_tensor_flavor(), h.to_tensor_flavor());
}
