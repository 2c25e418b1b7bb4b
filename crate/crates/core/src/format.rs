//! Text and JSON encodings of graphs, necklaces and derivations.
//!
//! Graph text: `rg E=2; sigma=(0 1 2 3); iota=(0 2)(1 3)`. Graph JSON:
//! `{"E":2,"sigma":[[0,1,2,3]],"iota":[[0,2],[1,3]]}`. Coefficients are
//! strings such as `"3/2"` or `"-1"`.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::derivation::{Derivation, Flavor};
use crate::error::{Error, Result};
use crate::lie::{standard_bracketing, BracketTree, LieElement, TensorElement};
use crate::linalg::Rational;
use crate::necklace::{symbol, Letter, Necklace, NecklaceTensor, SymplecticBasis, Word};
use crate::ribbon::RibbonGraph;

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let s = s.trim();
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| malformed(format!("expected `(` in `{s}`")))?;
        let close = body.find(')').ok_or_else(|| malformed(format!("unclosed cycle in `{s}`")))?;
        let cycle = body[..close]
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| malformed(format!("bad half-edge `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if cycle.is_empty() {
            return Err(malformed("empty cycle"));
        }
        out.push(cycle);
        rest = body[close + 1..].trim_start();
    }
    Ok(out)
}

fn format_cycles(cycles: &[Vec<u8>]) -> String {
    cycles.iter().map(|c| format!("({})", c.iter().map(u8::to_string).collect::<Vec<_>>().join(" "))).collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    #[serde(rename = "E")]
    e: usize,
    sigma: Vec<Vec<usize>>,
    iota: Vec<Vec<usize>>,
}

/// Parses either encoding of a graph.
pub fn parse_graph(text: &str) -> Result<RibbonGraph> {
    let t = text.trim();
    if t.starts_with('{') {
        let j: GraphJson = serde_json::from_str(t)?;
        return RibbonGraph::from_cycles(j.e, &j.sigma, &j.iota);
    }
    let body = t.strip_prefix("rg").ok_or_else(|| malformed("graph text must start with `rg`"))?;
    let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
    for part in body.split(';') {
        let (k, v) =
            part.split_once('=').ok_or_else(|| malformed(format!("expected key=value, got `{}`", part.trim())))?;
        if fields.insert(k.trim(), v.trim()).is_some() {
            return Err(malformed(format!("duplicate field `{}`", k.trim())));
        }
    }
    if fields.len() != 3 {
        return Err(malformed("need exactly the fields E, sigma and iota"));
    }
    let get = |k: &str| fields.get(k).copied().ok_or_else(|| malformed(format!("missing field `{k}`")));
    let e: usize = get("E")?.parse().map_err(|_| malformed("E must be a non-negative integer"))?;
    RibbonGraph::from_cycles(e, &parse_cycles(get("sigma")?)?, &parse_cycles(get("iota")?)?)
}

/// Text encoding; vertex cycles start at their smallest half-edge and are
/// sorted, so the output is canonical for a given labelling.
pub fn graph_to_text(g: &RibbonGraph) -> String {
    format!(
        "rg E={}; sigma={}; iota={}",
        g.num_edges(),
        format_cycles(&g.vertices()),
        format_cycles(&crate::perm::cycles(g.iota()))
    )
}

pub fn graph_to_json(g: &RibbonGraph) -> serde_json::Value {
    let to_usize = |cs: Vec<Vec<u8>>| cs.into_iter().map(|c| c.into_iter().map(usize::from).collect()).collect();
    serde_json::to_value(GraphJson {
        e: g.num_edges(),
        sigma: to_usize(g.vertices()),
        iota: to_usize(crate::perm::cycles(g.iota())),
    })
    .expect("plain data")
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || malformed(format!("bad coefficient `{s}`"));
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(BigInt::from_str(s.trim()).map_err(|_| bad())?),
    };
    Ok(r)
}

fn symbols(w: &[Letter]) -> Vec<String> {
    w.iter().map(|&l| symbol(l)).collect()
}

fn letters(basis: &SymplecticBasis, syms: &[String]) -> Result<Word> {
    syms.iter().map(|s| basis.parse(s)).collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WordTerm {
    coeff: String,
    word: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NecklaceJson {
    g: usize,
    terms: Vec<WordTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TupleTerm {
    coeff: String,
    words: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorJson {
    g: usize,
    arity: usize,
    terms: Vec<TupleTerm>,
}

pub fn necklace_to_json(u: &Necklace) -> serde_json::Value {
    let terms = u.terms().iter().map(|(w, c)| WordTerm { coeff: c.to_string(), word: symbols(w) }).collect();
    serde_json::to_value(NecklaceJson { g: u.genus(), terms }).expect("plain data")
}

fn necklace_from_json(j: NecklaceJson) -> Result<Necklace> {
    let basis = SymplecticBasis::new(j.g)?;
    let mut u = Necklace::zero(j.g);
    for t in j.terms {
        u.add_word(&letters(&basis, &t.word)?, parse_rational(&t.coeff)?)?;
    }
    Ok(u)
}

pub fn parse_necklace(v: &serde_json::Value) -> Result<Necklace> {
    necklace_from_json(serde_json::from_value(v.clone())?)
}

/// Inputs for graph evaluation: a JSON array of necklaces, or an object with
/// an `inputs` array.
pub fn parse_necklace_list(text: &str) -> Result<Vec<Necklace>> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    let list = match &v {
        serde_json::Value::Array(a) => a,
        serde_json::Value::Object(o) if o.len() == 1 && o.contains_key("inputs") => {
            o["inputs"].as_array().ok_or_else(|| malformed("`inputs` must be an array"))?
        }
        _ => return Err(malformed("expected an array of necklaces or {\"inputs\": [...]}")),
    };
    list.iter().map(parse_necklace).collect()
}

pub fn tensor_to_json(t: &NecklaceTensor) -> serde_json::Value {
    let terms = t
        .terms()
        .iter()
        .map(|(ws, c)| TupleTerm { coeff: c.to_string(), words: ws.iter().map(|w| symbols(w)).collect() })
        .collect();
    serde_json::to_value(TensorJson { g: t.genus(), arity: t.arity(), terms }).expect("plain data")
}

pub fn parse_tensor(v: &serde_json::Value) -> Result<NecklaceTensor> {
    let j: TensorJson = serde_json::from_value(v.clone())?;
    let basis = SymplecticBasis::new(j.g)?;
    let mut out = NecklaceTensor::zero(j.g, j.arity);
    for t in j.terms {
        if t.words.len() != j.arity {
            return Err(Error::Arity { expected: j.arity, got: t.words.len() });
        }
        let ws = t.words.iter().map(|w| letters(&basis, w)).collect::<Result<Vec<_>>>()?;
        let refs: Vec<&[Letter]> = ws.iter().map(Vec::as_slice).collect();
        out.push(&refs, parse_rational(&t.coeff)?);
    }
    Ok(out)
}

/// A bracket tree: a symbol or a two-element array of trees.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TreeJson {
    Leaf(String),
    Node(Box<TreeJson>, Box<TreeJson>),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ImageTerm {
    Tree { coeff: String, tree: TreeJson },
    Word { coeff: String, word: Vec<String> },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DerivationJson {
    g: usize,
    degree: usize,
    flavor: Flavor,
    images: BTreeMap<String, Vec<ImageTerm>>,
}

fn tree_to_json(t: &BracketTree) -> TreeJson {
    match t {
        BracketTree::Leaf(l) => TreeJson::Leaf(symbol(*l)),
        BracketTree::Node(x, y) => TreeJson::Node(Box::new(tree_to_json(x)), Box::new(tree_to_json(y))),
    }
}

fn tree_from_json(basis: &SymplecticBasis, t: &TreeJson) -> Result<BracketTree> {
    Ok(match t {
        TreeJson::Leaf(s) => BracketTree::Leaf(basis.parse(s)?),
        TreeJson::Node(x, y) => {
            BracketTree::Node(Box::new(tree_from_json(basis, x)?), Box::new(tree_from_json(basis, y)?))
        }
    })
}

/// Lie-flavoured images are written in Lyndon normal form as bracket trees;
/// tensor-flavoured images as words.
pub fn derivation_to_json(d: &Derivation) -> serde_json::Value {
    let mut images = BTreeMap::new();
    for (l, t) in d.images().iter().enumerate() {
        let terms = match d.flavor() {
            Flavor::Lie => LieElement::from_tensor(t)
                .expect("Lie flavour holds Lie images")
                .terms()
                .iter()
                .map(|(w, c)| ImageTerm::Tree { coeff: c.to_string(), tree: tree_to_json(&standard_bracketing(w)) })
                .collect(),
            Flavor::Tensor => {
                t.terms().iter().map(|(w, c)| ImageTerm::Word { coeff: c.to_string(), word: symbols(w) }).collect()
            }
        };
        images.insert(symbol(l as Letter), terms);
    }
    serde_json::to_value(DerivationJson { g: d.genus(), degree: d.degree(), flavor: d.flavor(), images })
        .expect("plain data")
}

pub fn parse_derivation(text: &str) -> Result<Derivation> {
    let j: DerivationJson = serde_json::from_str(text)?;
    let basis = SymplecticBasis::new(j.g)?;
    let mut images = vec![TensorElement::zero(); basis.dim()];
    for (sym, terms) in &j.images {
        let l = basis.parse(sym)?;
        for term in terms {
            let (coeff, t) = match term {
                ImageTerm::Tree { coeff, tree } => (coeff, tree_from_json(&basis, tree)?.expand()),
                ImageTerm::Word { coeff, word } => (coeff, TensorElement::word(&letters(&basis, word)?)),
            };
            images[l as usize].add_assign(&t.scale(&parse_rational(coeff)?));
        }
    }
    Derivation::new(j.g, j.degree, j.flavor, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::johnson_generator;
    use crate::linalg::rat;

    #[test]
    fn tadpole_text() {
        let g = parse_graph("rg E=1; sigma=(0 1); iota=(0 1)").unwrap();
        assert_eq!(g, RibbonGraph::tadpole());
        assert_eq!(graph_to_text(&g), "rg E=1; sigma=(0 1); iota=(0 1)");
    }

    #[test]
    fn graph_errors_have_distinct_codes() {
        let fixed = parse_graph("rg E=1; sigma=(0 1); iota=(0)(1)").unwrap_err();
        let disc = parse_graph("rg E=2; sigma=(0 1)(2 3); iota=(0 1)(2 3)").unwrap_err();
        let inv = parse_graph("rg E=2; sigma=(0 1 2 3); iota=(0 1 2 3)").unwrap_err();
        let syntax = parse_graph("rg E=1; sigma=(0 1; iota=(0 1)").unwrap_err();
        let codes = [fixed.code(), disc.code(), inv.code(), syntax.code()];
        assert_eq!(codes, ["E_IOTA_FIXED_POINTS", "E_DISCONNECTED", "E_NOT_INVOLUTION", "E_MALFORMED"]);
    }

    #[test]
    fn graph_round_trips() {
        for (v, e) in [(1, 3), (2, 3), (3, 2)] {
            for g in crate::enumerate::enumerate_all(v, e).unwrap().iter() {
                assert_eq!(&parse_graph(&graph_to_text(g)).unwrap(), g);
                assert_eq!(&parse_graph(&graph_to_json(g).to_string()).unwrap(), g);
            }
        }
    }

    #[test]
    fn necklace_json() {
        let text = r#"{"g":2,"terms":[{"coeff":"3/2","word":["a1","b2","a1"]}]}"#;
        let u = parse_necklace(&serde_json::from_str(text).unwrap()).unwrap();
        assert_eq!(u.coeff(&[0, 0, 3]), Rational::new(3.into(), 2.into()));
        assert_eq!(parse_necklace(&necklace_to_json(&u)).unwrap(), u);
        let bad = r#"{"g":1,"terms":[{"coeff":"1","word":["a2"]}]}"#;
        assert_eq!(parse_necklace(&serde_json::from_str(bad).unwrap()).unwrap_err().code(), "E_SYMBOL");
    }

    #[test]
    fn derivation_json_round_trips() {
        let d = johnson_generator(2, 0, 2, 3).unwrap();
        let text = derivation_to_json(&d).to_string();
        assert_eq!(parse_derivation(&text).unwrap(), d);
        let t = d.to_tensor_flavor().scale(&rat(3));
        assert_eq!(parse_derivation(&derivation_to_json(&t).to_string()).unwrap(), t);
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-4/6").unwrap(), Rational::new((-2).into(), 3.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
