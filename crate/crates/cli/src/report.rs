//! JSON views of library results. Rationals are always strings.

use cellfill::arith::fmt_q;
use cellfill::arith::Q;
use cellfill::chain::{Chain, ChainJson};
use cellfill::complex::{CellComplex2, SignedEdge};
use cellfill::filling::{AgreementReport, Certificate, ExpansionReport, FillResult};
use cellfill::homology::ChainComplex;
use cellfill::hyperbolic::{SystoleCertificate, TraceDecomposition, TracePath};
use serde_json::{json, Value};

pub fn q(x: &Q) -> Value {
    Value::String(fmt_q(x))
}

pub fn opt_q(x: &Option<Q>) -> Value {
    x.as_ref().map_or(Value::Null, q)
}

pub fn chain(x: &CellComplex2, c: &Chain) -> Value {
    serde_json::to_value(ChainJson::from_chain(c, |k| {
        x.cell_name(c.degree, k).to_string()
    }))
    .expect("plain data")
}

pub fn named_chain(c: &Chain, name: impl Fn(usize) -> String) -> Value {
    serde_json::to_value(ChainJson::from_chain(c, name)).expect("plain data")
}

pub fn fill(r: &FillResult, name: impl Fn(usize) -> String) -> Value {
    let certificate = match &r.certificate {
        Certificate::Lp { dual } => {
            json!({ "kind": "lp_dual", "dual": dual.iter().map(q).collect::<Vec<_>>() })
        }
        Certificate::BranchAndBound {
            nodes,
            root_lp_bound,
            exhausted,
        } => json!({
            "kind": "branch_and_bound",
            "nodes": nodes,
            "root_lp_bound": q(root_lp_bound),
            "exhausted": exhausted,
        }),
    };
    json!({
        "ring": r.ring,
        "value": q(&r.value),
        "optimal": r.optimal,
        "filler": named_chain(&r.filler, name),
        "certificate": certificate,
    })
}

pub fn homology_tables(c: &ChainComplex) -> Value {
    let top = c.ranks.len();
    json!({
        "homology": (0..top).map(|i| c.homology(i)).collect::<Vec<_>>(),
        "cohomology": (0..top).map(|i| c.cohomology(i)).collect::<Vec<_>>(),
    })
}

pub fn expansion(x: &CellComplex2, r: &ExpansionReport) -> Value {
    json!({
        "b1": r.b1,
        "convention_zero": r.convention_zero,
        "rho_real": opt_q(&r.rho_real),
        "real_exact": r.real_exact,
        "rho_integer": opt_q(&r.rho_integer),
        "integer_exact": r.integer_exact,
        "integer_method": r.integer_method,
        "witness": r.witness.as_ref().map(|c| chain(x, c)),
        "integer_witness": r.integer_witness.as_ref().map(|c| chain(x, c)),
        "circuits": r.circuits,
    })
}

pub fn agreement(x: &CellComplex2, r: &AgreementReport) -> Value {
    json!({
        "constant_real": q(&r.constant_real),
        "constant_integer": q(&r.constant_integer),
        "rho_real": opt_q(&r.rho_real),
        "rho_integer": opt_q(&r.rho_integer),
        "equal": r.equal,
        "pointwise_equal": r.pointwise_equal,
        "witness": r.witness.as_ref().map(|c| chain(x, c)),
        "candidates": r.candidates,
    })
}

pub fn word(x: &CellComplex2, w: &[SignedEdge]) -> String {
    x.word_to_string(w)
}

pub fn systole(x: &CellComplex2, s: &SystoleCertificate, verified: bool) -> Value {
    json!({
        "start": x.vertices()[s.start],
        "word": word(x, &s.word),
        "length": s.length,
        "certificate": s.certificate,
        "searched_below": s.searched_below,
        "verified": verified,
    })
}

fn path(x: &CellComplex2, p: &TracePath) -> Value {
    json!({ "start": x.vertices()[p.start], "word": word(x, &p.word), "length": p.word.len() })
}

pub fn trace(x: &CellComplex2, d: &TraceDecomposition) -> Value {
    json!({
        "tau": chain(x, &d.tau),
        "paths": d.paths.iter().map(|p| path(x, p)).collect::<Vec<_>>(),
        "loops": d.loops.iter().map(|p| path(x, p)).collect::<Vec<_>>(),
        "total_path_length": d.total_path_length,
    })
}
