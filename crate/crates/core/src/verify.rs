//! Packaged verification suites.
//!
//! Every check has a stable ID; `ACC-n` IDs are the acceptance criteria.
//! Reports contain only deterministic data, so two runs with different
//! parallelism can be compared byte for byte.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::canon::{automorphism_sign, automorphisms, canonical_form, orientation_sign, standard_orientation};
use crate::complex::{
    cohomology, differential_matrix, expand_graph, one_vertex_cocycles, CohomologyRequest, Grading, Sector, Splitting,
};
use crate::derivation::{
    annihilator, cocycle_check, der_omega_basis, der_omega_dim, es_trace, johnson_generator, johnson_generators,
    johnson_pieces, necklace_to_derivation, trace_witness, Derivation, Flavor,
};
use crate::enumerate::{enumerate, enumerate_all, Selector};
use crate::error::{Error, Result};
use crate::lie::{lyndon_basis, witt_dimension};
use crate::linalg::rat;
use crate::necklace::{
    bracket_action, goldman_bracket, turaev_cobracket, Letter, Necklace, NecklaceTensor, SymplecticBasis, Word,
};
use crate::perm;
use crate::ribbon::RibbonGraph;
use crate::state_sum::rho_eval;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Ribbon,
    Complex,
    Bialgebra,
    Derivations,
    Acceptance,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ribbon" => Suite::Ribbon,
            "complex" => Suite::Complex,
            "bialgebra" => Suite::Bialgebra,
            "derivations" => Suite::Derivations,
            "acceptance" => Suite::Acceptance,
            "all" => Suite::All,
            _ => return Err(Error::InvalidSelector(format!("unknown suite `{s}`"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Ribbon => "ribbon",
            Suite::Complex => "complex",
            Suite::Bialgebra => "bialgebra",
            Suite::Derivations => "derivations",
            Suite::Acceptance => "acceptance",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub description: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

type CheckFn = fn() -> Result<(bool, Value)>;

struct Check {
    id: &'static str,
    description: &'static str,
    run: CheckFn,
}

const CHECKS: &[Check] = &[
    Check {
        id: "RIB-1",
        description: "valences, boundary partition and Euler formula for all graphs with E <= 5",
        run: ribbon_invariants,
    },
    Check { id: "RIB-2", description: "one-vertex graphs satisfy E = 2g + B - 1 for E <= 6", run: one_vertex_euler },
    Check {
        id: "RIB-3",
        description: "canonical form is constant and signs are consistent under 100 random relabellings",
        run: relabelling_invariance,
    },
    Check {
        id: "RIB-4",
        description: "automorphisms commute with sigma and iota and form a group, E <= 4",
        run: automorphism_groups,
    },
    Check {
        id: "RIB-5",
        description: "zero classes: figure-eight and crossed graph vanish, tadpole survives for both parities",
        run: zero_class_examples,
    },
    Check {
        id: "ACC-1",
        description: "one-vertex cocycles in parity 1: dimension 1 at E = 1, 0 for E = 2..7",
        run: acc_one_vertex_slice,
    },
    Check {
        id: "ACC-2",
        description: "consecutive differentials compose to zero on all bases with E <= 6, both parities",
        run: acc_d_squared,
    },
    Check {
        id: "ACC-3",
        description: "bivalent k-cycles, k <= 9: nonzero iff k = 1 mod 4, and closed when nonzero",
        run: acc_bivalent_cycles,
    },
    Check {
        id: "ACC-4",
        description: "sector (1,1), parity 0, E in 2..4: H^3 = 1 and H^2 = 0",
        run: acc_moduli_sector,
    },
    Check {
        id: "CPX-1",
        description: "vertex expansion preserves genus and boundary count, E <= 5",
        run: sector_preservation,
    },
    Check {
        id: "CPX-2",
        description: "parities 0 and 1 have the same nonzero classes and differential ranks, E <= 5",
        run: degree_shift,
    },
    Check {
        id: "ACC-5",
        description: "Lie bialgebra axioms on 120 random necklace triples, g <= 2, length <= 5",
        run: acc_bialgebra_axioms,
    },
    Check {
        id: "ACC-6",
        description:
            "state sum of the bar graph and tadpole equals bracket and cobracket, words of length <= 4, g <= 2",
        run: acc_generator_consistency,
    },
    Check { id: "NCK-1", description: "pairing table and bracket/cobracket reference values", run: necklace_examples },
    Check {
        id: "ACC-7",
        description: "trace of the Hamiltonian derivation equals the reduced cobracket, lengths 3..5, g <= 2",
        run: acc_reduction_identity,
    },
    Check {
        id: "ACC-8",
        description: "trace is a 1-cocycle on 120 random symplectic pairs, degrees <= 3, g <= 2",
        run: acc_cocycle,
    },
    Check {
        id: "ACC-9",
        description:
            "genus 3: Johnson brackets of degree 2 and 3 have zero trace; a nonzero trace exists in degree <= 4",
        run: acc_johnson_traces,
    },
    Check { id: "DER-1", description: "Lyndon bases match the Witt formula", run: lyndon_dimensions },
    Check {
        id: "DER-2",
        description: "degree-1 generators are symplectic and alternating, g <= 3",
        run: johnson_properties,
    },
    Check {
        id: "DER-3",
        description: "symplectic derivation dimensions in degree 1: g = 1 gives 0, g = 2 gives 4",
        run: annihilator_examples,
    },
];

fn suite_of(id: &str) -> Suite {
    match &id[..3] {
        "RIB" => Suite::Ribbon,
        "CPX" => Suite::Complex,
        "NCK" => Suite::Bialgebra,
        "DER" => Suite::Derivations,
        _ => match id {
            "ACC-1" | "ACC-2" | "ACC-3" | "ACC-4" => Suite::Complex,
            "ACC-5" | "ACC-6" => Suite::Bialgebra,
            _ => Suite::Derivations,
        },
    }
}

/// Check IDs making up a suite, in report order.
pub fn check_ids(suite: Suite) -> Vec<&'static str> {
    CHECKS
        .iter()
        .map(|c| c.id)
        .filter(|id| match suite {
            Suite::All => true,
            Suite::Acceptance => id.starts_with("ACC-"),
            s => suite_of(id) == s,
        })
        .collect()
}

pub fn run_check(id: &str) -> Result<CheckResult> {
    let check =
        CHECKS.iter().find(|c| c.id == id).ok_or_else(|| Error::InvalidSelector(format!("unknown check `{id}`")))?;
    let (passed, detail) = match (check.run)() {
        Ok(r) => r,
        Err(e) => (false, json!({ "error": e.to_string(), "code": e.code() })),
    };
    Ok(CheckResult { id: check.id.into(), description: check.description.into(), passed, detail })
}

/// Runs checks in order, reporting each duration to `on_timing`.
pub fn run_checks(ids: &[&str], on_timing: &mut dyn FnMut(&str, Duration)) -> Result<Vec<CheckResult>> {
    ids.iter()
        .map(|id| {
            let start = Instant::now();
            let r = run_check(id);
            on_timing(id, start.elapsed());
            r
        })
        .collect()
}

pub fn run_suite(suite: Suite, on_timing: &mut dyn FnMut(&str, Duration)) -> Result<SuiteReport> {
    let checks = run_checks(&check_ids(suite), on_timing)?;
    Ok(SuiteReport { suite: suite.to_string(), passed: checks.iter().all(|c| c.passed), checks })
}

// ---------------------------------------------------------------------------
// ribbon graphs

fn crossed() -> RibbonGraph {
    RibbonGraph::from_cycles(2, &[vec![0, 1, 2, 3]], &[vec![0, 2], vec![1, 3]]).expect("valid")
}

fn figure_eight() -> RibbonGraph {
    RibbonGraph::from_cycles(2, &[vec![0, 1, 2, 3]], &[vec![0, 1], vec![2, 3]]).expect("valid")
}

fn all_graphs(max_e: usize) -> Result<Vec<RibbonGraph>> {
    let mut out = Vec::new();
    for e in 1..=max_e {
        for v in 1..=e + 1 {
            out.extend(enumerate_all(v, e)?.iter().cloned());
        }
    }
    Ok(out)
}

fn ribbon_invariants() -> Result<(bool, Value)> {
    let graphs = all_graphs(5)?;
    let bad = graphs
        .par_iter()
        .filter(|g| {
            let n = g.num_half_edges();
            let valence_sum: usize = g.valences().iter().sum();
            let mut covered: Vec<u8> = g.boundary_cycles().concat();
            covered.sort_unstable();
            valence_sum != n || covered != (0..n as u8).collect::<Vec<_>>() || g.genus().is_err()
        })
        .count();
    Ok((bad == 0, json!({ "graphs": graphs.len(), "violations": bad })))
}

fn one_vertex_euler() -> Result<(bool, Value)> {
    let mut counts = Vec::new();
    let mut ok = true;
    for e in 1..=6 {
        let gs = enumerate_all(1, e)?;
        ok &= gs.iter().all(|g| {
            let (genus, b) = g.sector();
            e == 2 * genus + b - 1 && g.degree(0) as usize == e
        });
        counts.push(gs.len());
    }
    Ok((ok, json!({ "classes_per_E": counts })))
}

fn relabelling_invariance() -> Result<(bool, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let samples: Vec<RibbonGraph> = vec![RibbonGraph::tadpole(), crossed(), RibbonGraph::bivalent_cycle(5)]
        .into_iter()
        .chain(enumerate_all(2, 4)?.iter().step_by(7).cloned())
        .chain(enumerate_all(3, 5)?.iter().step_by(41).cloned())
        .collect();
    let mut failures = 0;
    for g in &samples {
        for d in 0..2u8 {
            let base = canonical_form(g, d);
            for _ in 0..100 {
                let mut label: Vec<u8> = (0..g.num_half_edges() as u8).collect();
                for i in (1..label.len()).rev() {
                    label.swap(i, rng.gen_range(0..=i));
                }
                let h = g.relabel(&label);
                let c = canonical_form(&h, d);
                let moved = standard_orientation(g).transport(&label);
                let consistent =
                    base.is_zero || base.sign_to_canonical == orientation_sign(&h, &moved, d) * c.sign_to_canonical;
                if c.graph != base.graph || c.is_zero != base.is_zero || !consistent {
                    failures += 1;
                }
            }
        }
    }
    Ok((
        failures == 0,
        json!({ "graphs": samples.len(), "relabellings_per_graph_and_parity": 100, "failures": failures }),
    ))
}

fn automorphism_groups() -> Result<(bool, Value)> {
    let graphs = all_graphs(4)?;
    let bad = graphs
        .par_iter()
        .filter(|g| {
            let auts = automorphisms(g);
            let commutes = |p: &Vec<u8>| {
                perm::compose(p, g.sigma()) == perm::compose(g.sigma(), p)
                    && perm::compose(p, g.iota()) == perm::compose(g.iota(), p)
            };
            let id: Vec<u8> = (0..g.num_half_edges() as u8).collect();
            auts[0] != id
                || !auts.iter().all(commutes)
                || !auts.iter().all(|a| auts.contains(&perm::inverse(a)))
                || !auts.iter().all(|a| auts.iter().all(|b| auts.contains(&perm::compose(a, b))))
        })
        .count();
    Ok((bad == 0, json!({ "graphs": graphs.len(), "violations": bad })))
}

fn zero_class_examples() -> Result<(bool, Value)> {
    let t = RibbonGraph::tadpole();
    let tadpole_signs: Vec<Vec<i8>> =
        (0..2u8).map(|d| automorphisms(&t).iter().map(|a| automorphism_sign(&t, a, d)).collect()).collect();
    let fig = canonical_form(&figure_eight(), 1).is_zero;
    let cross = canonical_form(&crossed(), 1).is_zero;
    let tad = [canonical_form(&t, 0).is_zero, canonical_form(&t, 1).is_zero];
    Ok((
        fig && cross && !tad[0] && !tad[1],
        json!({ "figure_eight_zero": fig, "crossed_zero": cross, "tadpole_zero": tad, "tadpole_automorphism_signs": tadpole_signs }),
    ))
}

// ---------------------------------------------------------------------------
// complex

fn acc_one_vertex_slice() -> Result<(bool, Value)> {
    let dims = (1..=7).map(|e| one_vertex_cocycles(1, e, Splitting::Proper)).collect::<Result<Vec<_>>>()?;
    let expected = [1, 0, 0, 0, 0, 0, 0];
    Ok((dims == expected, json!({ "E": (1..=7).collect::<Vec<_>>(), "dims": dims })))
}

fn acc_d_squared() -> Result<(bool, Value)> {
    let mut pairs = 0;
    let mut failures = Vec::new();
    for d in 0..2u8 {
        for e in 1..=4 {
            for v in 1..=e + 1 {
                let s0 = Selector::shape(v as i64, e as i64);
                let (b0, b1, b2) = (enumerate(s0, d)?, enumerate(s0.next(), d)?, enumerate(s0.next().next(), d)?);
                let m1 = differential_matrix(&b0, &b1, Splitting::Proper)?;
                let m2 = differential_matrix(&b1, &b2, Splitting::Proper)?;
                pairs += 1;
                if !m2.mul(&m1)?.is_zero() {
                    failures.push(format!("d={d} V={v} E={e}"));
                }
            }
        }
    }
    Ok((failures.is_empty(), json!({ "composable_pairs": pairs, "failures": failures })))
}

fn acc_bivalent_cycles() -> Result<(bool, Value)> {
    let mut ok = true;
    let mut rows = Vec::new();
    for k in 1..=9 {
        for d in 0..2u8 {
            let c = canonical_form(&RibbonGraph::bivalent_cycle(k), d);
            let closed = c.is_zero || expand_graph(&c.graph, d, Splitting::Proper).is_empty();
            ok &= c.is_zero == (k % 4 != 1) && closed;
            rows.push(json!({ "k": k, "d": d, "nonzero": !c.is_zero, "closed": closed }));
        }
    }
    Ok((ok, Value::Array(rows)))
}

fn acc_moduli_sector() -> Result<(bool, Value)> {
    let report = |degree| {
        cohomology(&CohomologyRequest {
            d: 0,
            sector: Sector::GenusBoundaries { g: 1, n: 1 },
            grading: Grading::Degree,
            degree,
            edge_range: (2, 4),
            allow_truncation: false,
            splitting: Splitting::Proper,
        })
    };
    let (h3, h2) = (report(3)?, report(2)?);
    let ok = h3.dim == 1 && h2.dim == 0 && h3.exact && h2.exact;
    Ok((ok, json!({ "H3": h3, "H2": h2 })))
}

fn sector_preservation() -> Result<(bool, Value)> {
    let graphs = all_graphs(5)?;
    let bad = graphs
        .par_iter()
        .filter(|g| {
            (0..2u8).any(|d| {
                let c = canonical_form(g, d);
                !c.is_zero
                    && expand_graph(&c.graph, d, Splitting::Proper)
                        .keys()
                        .any(|h| h.sector() != g.sector() || h.num_vertices() != g.num_vertices() + 1)
            })
        })
        .count();
    Ok((bad == 0, json!({ "graphs": graphs.len(), "violations": bad })))
}

fn degree_shift() -> Result<(bool, Value)> {
    let mut ok = true;
    let mut dims = Vec::new();
    for e in 1..=5 {
        for v in 1..=e + 1 {
            let s = Selector::shape(v as i64, e as i64);
            let (b0, b1) = (enumerate(s, 0)?, enumerate(s, 1)?);
            let r0 = crate::cache::image_rank(&b0, Splitting::Proper)?;
            let r1 = crate::cache::image_rank(&b1, Splitting::Proper)?;
            ok &= b0.classes() == b1.classes() && r0 == r1;
            dims.push(json!({ "V": v, "E": e, "classes": [b0.len(), b1.len()], "rank": [r0, r1] }));
        }
    }
    Ok((ok, Value::Array(dims)))
}

// ---------------------------------------------------------------------------
// necklaces

fn random_necklace(rng: &mut ChaCha8Rng, g: usize) -> Necklace {
    let mut u = Necklace::zero(g);
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(0..=5);
        let w: Word = (0..len).map(|_| rng.gen_range(0..2 * g as Letter)).collect();
        u.push(&w, rat(rng.gen_range(-3..=3)));
    }
    u
}

fn random_word(rng: &mut ChaCha8Rng, g: usize, lo: usize, hi: usize) -> Word {
    let len = rng.gen_range(lo..=hi);
    (0..len).map(|_| rng.gen_range(0..2 * g as Letter)).collect()
}

fn cyclic3(t: &NecklaceTensor) -> NecklaceTensor {
    t.add(&t.permute(&[2, 0, 1])).and_then(|s| s.add(&t.permute(&[1, 2, 0]))).expect("same shape")
}

fn acc_bialgebra_axioms() -> Result<(bool, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xb1a1);
    let mut fails = [0usize; 6];
    let trials = 120;
    for t in 0..trials {
        let g = 1 + t % 2;
        let (u, v, w) = (random_necklace(&mut rng, g), random_necklace(&mut rng, g), random_necklace(&mut rng, g));
        let uv = goldman_bracket(&u, &v)?;
        fails[0] += usize::from(!uv.add(&goldman_bracket(&v, &u)?)?.is_zero());
        let jac = goldman_bracket(&u, &goldman_bracket(&v, &w)?)?
            .add(&goldman_bracket(&v, &goldman_bracket(&w, &u)?)?)?
            .add(&goldman_bracket(&w, &uv)?)?;
        fails[1] += usize::from(!jac.is_zero());
        let du = turaev_cobracket(&u);
        fails[2] += usize::from(!du.add(&du.permute(&[1, 0]))?.is_zero());
        fails[3] += usize::from(!cyclic3(&du.map_factor(0, turaev_cobracket)).is_zero());
        let drinfeld = bracket_action(&u, &turaev_cobracket(&v))?.add(&bracket_action(&v, &du)?.scale(&rat(-1)))?;
        fails[4] += usize::from(turaev_cobracket(&uv) != drinfeld);
        // length grading on single words
        let (x, y) = (random_word(&mut rng, g, 0, 5), random_word(&mut rng, g, 0, 5));
        let bx = goldman_bracket(&Necklace::word(g, &x)?, &Necklace::word(g, &y)?)?;
        let dx = turaev_cobracket(&Necklace::word(g, &x)?);
        let graded = bx.terms().keys().all(|z| z.len() + 2 == x.len() + y.len())
            && dx.terms().keys().all(|p| p[0].len() + p[1].len() + 2 == x.len());
        fails[5] += usize::from(!graded);
    }
    let names = ["antisymmetry", "jacobi", "co_antisymmetry", "co_jacobi", "drinfeld_compatibility", "length_grading"];
    let detail: serde_json::Map<String, Value> =
        names.iter().zip(fails).map(|(n, f)| (n.to_string(), json!(f))).collect();
    Ok((fails.iter().all(|&f| f == 0), json!({ "trials": trials, "failures": detail })))
}

fn words_up_to(g: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|w| (0..2 * g as Letter).map(move |l| [w.as_slice(), &[l]].concat())).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn acc_generator_consistency() -> Result<(bool, Value)> {
    let (bar, tadpole) = (RibbonGraph::bar(), RibbonGraph::tadpole());
    let mut bracket_cases = 0;
    let mut cobracket_cases = 0;
    let mut failures = 0;
    for g in 1..=2 {
        let words = words_up_to(g, 4);
        let necklaces: Vec<Necklace> = words.iter().map(|w| Necklace::word(g, w)).collect::<Result<_>>()?;
        let bad: usize = necklaces
            .par_iter()
            .map(|u| {
                necklaces
                    .iter()
                    .filter(|v| {
                        let direct: NecklaceTensor = goldman_bracket(u, v).expect("same genus").into();
                        rho_eval(&bar, &[(*u).clone(), (*v).clone()]).expect("arity 2") != direct
                    })
                    .count()
            })
            .sum();
        failures += bad;
        bracket_cases += necklaces.len() * necklaces.len();
        for u in &necklaces {
            cobracket_cases += 1;
            failures += usize::from(rho_eval(&tadpole, std::slice::from_ref(u))? != turaev_cobracket(u));
        }
    }
    Ok((
        failures == 0,
        json!({ "bracket_cases": bracket_cases, "cobracket_cases": cobracket_cases, "failures": failures }),
    ))
}

fn necklace_examples() -> Result<(bool, Value)> {
    let b = SymplecticBasis::new(2)?;
    let pairings = [b.pairing_checked("a1", "b1")?, b.pairing_checked("a1", "a1")?, b.pairing_checked("a1", "b2")?];
    let n = |s: &[&str]| Necklace::from_symbols(1, s);
    let a = n(&["a1"])?;
    let bracket = goldman_bracket(&n(&["a1", "b1"])?, &a)?;
    let ok = pairings == [1, 0, 0]
        && goldman_bracket(&a, &a)?.is_zero()
        && goldman_bracket(&n(&["a1", "b1"])?, &Necklace::unit(1))?.is_zero()
        && bracket == a.scale(&rat(-1))
        && turaev_cobracket(&a).is_zero()
        && turaev_cobracket(&n(&["a1", "b1"])?).is_zero()
        && turaev_cobracket(&n(&["a1", "a1", "b1"])?).is_zero();
    Ok((
        ok,
        json!({
            "pairings": pairings,
            "bracket_ab_a": crate::format::necklace_to_json(&bracket),
            "cobracket_aab": crate::format::tensor_to_json(&turaev_cobracket(&n(&["a1", "a1", "b1"])?)),
        }),
    ))
}

// ---------------------------------------------------------------------------
// derivations

fn acc_reduction_identity() -> Result<(bool, Value)> {
    let mut cases = 0;
    let mut constants = std::collections::BTreeSet::new();
    let mut failures = 0;
    for g in 1..=2 {
        for w in words_up_to(g, 5).into_iter().filter(|w| w.len() >= 3) {
            let u = Necklace::word(g, &w)?;
            let lhs = es_trace(&necklace_to_derivation(&u)?)?;
            let rhs = turaev_cobracket(&u).counit_last();
            cases += 1;
            if lhs.is_zero() && rhs.is_zero() {
                continue;
            }
            match [1, -1].into_iter().find(|&c| lhs == rhs.scale(&rat(c))) {
                Some(c) => {
                    constants.insert(c);
                }
                None => failures += 1,
            }
        }
    }
    let ok = failures == 0 && constants.len() == 1;
    Ok((ok, json!({ "cases": cases, "constant": constants.into_iter().collect::<Vec<_>>(), "failures": failures })))
}

/// A random combination of at most three basis elements.
fn random_symplectic(rng: &mut ChaCha8Rng, basis: &[Derivation], g: usize, k: usize) -> Derivation {
    let mut d = Derivation::zero(g, k, Flavor::Lie);
    for _ in 0..rng.gen_range(1..=3) {
        let b = &basis[rng.gen_range(0..basis.len())];
        d = d.add(&b.scale(&rat(rng.gen_range(-2..=2)))).expect("same degree");
    }
    d.to_tensor_flavor()
}

fn acc_cocycle() -> Result<(bool, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0c1);
    let bases: Vec<(usize, usize, Vec<Derivation>)> = [(1, 2), (1, 3), (2, 1), (2, 2), (2, 3)]
        .into_iter()
        .map(|(g, k)| (g, k, der_omega_basis(g, k)))
        .filter(|(_, _, b)| !b.is_empty())
        .collect();
    let pairs = 120;
    let mut sampled = Vec::with_capacity(pairs);
    for _ in 0..pairs {
        let g = if rng.gen_bool(0.25) { 1 } else { 2 };
        let pick = |rng: &mut ChaCha8Rng| {
            let options: Vec<&(usize, usize, Vec<Derivation>)> = bases.iter().filter(|b| b.0 == g).collect();
            let (_, k, basis) = options[rng.gen_range(0..options.len())];
            random_symplectic(rng, basis, g, *k)
        };
        let d = pick(&mut rng);
        sampled.push((d, pick(&mut rng)));
    }
    let outcomes = sampled
        .par_iter()
        .map(|(d, e)| {
            if !d.is_symplectic() || !e.is_symplectic() {
                return Err(Error::Degree("sampled derivation is not symplectic".into()));
            }
            Ok((cocycle_check(d, e)?, !es_trace(&d.bracket(e)?)?.is_zero()))
        })
        .collect::<Result<Vec<_>>>()?;
    let failures = outcomes.iter().filter(|o| !o.0).count();
    let nonzero_sides = outcomes.iter().filter(|o| o.1).count();
    Ok((failures == 0, json!({ "pairs": pairs, "failures": failures, "pairs_with_nonzero_trace": nonzero_sides })))
}

fn acc_johnson_traces() -> Result<(bool, Value)> {
    let pieces = johnson_pieces(3, 3);
    let mut zero = true;
    let mut sizes = Vec::new();
    for piece in &pieces[1..] {
        let traces = piece.par_iter().map(es_trace).collect::<Result<Vec<_>>>()?;
        zero &= traces.iter().all(Necklace::is_zero);
        sizes.push(piece.len());
    }
    let witness = trace_witness(3, 2, 4);
    let detail = json!({
        "brackets_checked": { "degree2": sizes[0], "degree3": sizes[1] },
        "all_traces_zero": zero,
        "witness": witness.as_ref().map(|(k, d, t)| json!({
            "degree": k,
            "trace": crate::format::necklace_to_json(t),
            "symplectic": d.is_symplectic(),
        })),
    });
    Ok((zero && witness.is_some_and(|(_, d, _)| d.is_symplectic()), detail))
}

fn lyndon_dimensions() -> Result<(bool, Value)> {
    let mut ok = [lyndon_basis(1, 1).len(), lyndon_basis(1, 2).len(), lyndon_basis(1, 4).len()] == [2, 1, 3];
    for g in 1..=3 {
        for k in 1..=5 {
            ok &= lyndon_basis(g, k).len() == witt_dimension(2 * g, k);
        }
    }
    Ok((ok, json!({ "g1": [2, 1, witt_dimension(2, 3), 3] })))
}

fn johnson_properties() -> Result<(bool, Value)> {
    let mut ok = johnson_generators(1).is_empty();
    let mut count = Vec::new();
    for g in 2..=3 {
        let gens = johnson_generators(g);
        ok &= gens.iter().all(|d| d.is_symplectic() && d.degree() == 1);
        count.push(gens.len());
    }
    let d = johnson_generator(2, 0, 2, 3)?;
    ok &= johnson_generator(2, 2, 0, 3)? == d.scale(&rat(-1));
    ok &= es_trace(&d)? == Necklace::word(2, &[0])?.scale(&rat(2));
    Ok((ok, json!({ "generators": { "g2": count[0], "g3": count[1] } })))
}

fn annihilator_examples() -> Result<(bool, Value)> {
    let (d1, d2) = (der_omega_dim(1, 1), der_omega_dim(2, 1));
    let r = annihilator(2, 2)?;
    Ok((d1 == 0 && d2 == 4 && r.johnson_in_kernel, json!({ "g1_k1": d1, "g2_k1": d2, "g2_k2": r })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_partition_checks() {
        let mut all: Vec<&str> = [Suite::Ribbon, Suite::Complex, Suite::Bialgebra, Suite::Derivations]
            .iter()
            .flat_map(|s| check_ids(*s))
            .collect();
        all.sort_unstable();
        let mut every = check_ids(Suite::All);
        every.sort_unstable();
        assert_eq!(all, every);
        assert_eq!(check_ids(Suite::Acceptance).len(), 9);
    }

    #[test]
    fn fast_checks_pass() {
        for id in ["RIB-2", "RIB-5", "NCK-1", "DER-1", "DER-2"] {
            let r = run_check(id).unwrap();
            assert!(r.passed, "{id}: {}", r.detail);
        }
        assert!(run_check("XYZ-1").is_err());
    }
}
