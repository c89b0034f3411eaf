//! Geometric diagnostics: δ estimates, divergence checks, certified essential
//! loops, tubes, boundary-trace decomposition, the superlinear filling bound,
//! and tower experiments.

use crate::arith::{bigq, pow2_bracket, serde_opt_q, serde_q, Q};
use crate::chain::Chain;
use crate::complex::{CellComplex2, SignedEdge};
use crate::covers::{follow, CoverTower, PermRep};
use crate::error::{Error, Result};
use crate::filling::{fill, rho, FillProblem, RhoOptions, Ring};
use crate::snf::SmithForm;
use crate::subcomplex::{cellular_neighborhood, vertex_distances, Subcomplex};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Cellular ball with its vertex distances.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricBall {
    pub center: usize,
    pub radius: usize,
    pub distances: BTreeMap<usize, usize>,
    pub sub: Subcomplex,
}

impl MetricBall {
    pub fn new(x: &CellComplex2, center: usize, radius: usize) -> Self {
        let d = vertex_distances(x, &[center]);
        let sub = cellular_neighborhood(x, &[center], radius);
        let distances = sub.vertices.iter().map(|&v| (v, d[v].unwrap())).collect();
        MetricBall {
            center,
            radius,
            distances,
            sub,
        }
    }
}

fn all_pairs(x: &CellComplex2, sub: &Subcomplex) -> Result<(Vec<usize>, Vec<Vec<i64>>)> {
    let verts: Vec<usize> = sub.vertices.iter().copied().collect();
    let pos: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut d = Vec::with_capacity(verts.len());
    for &v in &verts {
        let row = sub.distances(x, &[v]);
        let mut out = vec![0i64; verts.len()];
        for (&w, &i) in &pos {
            out[i] = row[w]
                .ok_or_else(|| Error::PreconditionViolated("subcomplex is not connected".into()))?
                as i64;
        }
        d.push(out);
    }
    Ok((verts, d))
}

/// Largest four-point defect `(S₁ − S₂)/2` over vertex quadruples of the
/// subcomplex's 1-skeleton, where `S₁ ≥ S₂ ≥ S₃` are the three pair sums.
pub fn estimate_delta(x: &CellComplex2, sub: &Subcomplex) -> Result<Q> {
    let (verts, d) = all_pairs(x, sub)?;
    let n = verts.len();
    let mut best = 0i64;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for e in c + 1..n {
                    let mut s = [d[a][b] + d[c][e], d[a][c] + d[b][e], d[a][e] + d[b][c]];
                    s.sort_unstable();
                    best = best.max(s[2] - s[1]);
                }
            }
        }
    }
    Ok(Q::new(best.into(), 2.into()))
}

fn check_vertex_path(x: &CellComplex2, sub: &Subcomplex, path: &[usize]) -> Result<()> {
    if path.is_empty() {
        return Err(Error::InvalidInput("empty path".into()));
    }
    for w in path.windows(2) {
        let ok = sub.edges.iter().any(|&e| {
            let ed = &x.edges()[e];
            (ed.src == w[0] && ed.dst == w[1]) || (ed.src == w[1] && ed.dst == w[0])
        });
        if !ok {
            return Err(Error::InvalidInput(format!(
                "no edge between vertices {} and {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// Whether every vertex of the geodesic lies within `δ·log₂(len c) + 1` of the
/// path `c` (distances inside `ball`). Paths are vertex sequences. The
/// comparison is exact: for `δ = a/b` and excess `k = d − 1 > 0` it tests
/// `2^(k·b) ≤ len^a`.
pub fn check_divergence(
    x: &CellComplex2,
    ball: &Subcomplex,
    geodesic: &[usize],
    c: &[usize],
    delta: &Q,
) -> Result<bool> {
    check_vertex_path(x, ball, geodesic)?;
    check_vertex_path(x, ball, c)?;
    if geodesic.first() != c.first() || geodesic.last() != c.last() {
        return Err(Error::EndpointMismatch);
    }
    let from_start = ball.distances(x, &geodesic[..1]);
    let end = *geodesic.last().unwrap();
    if from_start[end] != Some(geodesic.len() - 1) {
        return Err(Error::PreconditionViolated(
            "geodesic is not a shortest path".into(),
        ));
    }
    let to_c = ball.distances(x, c);
    let len = (c.len() - 1).max(1);
    let (a, b) = (delta.numer().clone(), delta.denom().clone());
    for &v in geodesic {
        let d = to_c[v].expect("geodesic lies in the ball") as i64;
        let k = d - 1;
        if k <= 0 {
            continue;
        }
        if a.is_zero() || len == 1 {
            return Ok(false);
        }
        let e = (BigInt::from(k) * &b).to_u32().expect("exponent fits");
        let lhs = num_traits::pow(BigInt::from(2), e as usize);
        let rhs = num_traits::pow(
            BigInt::from(len),
            a.to_usize().expect("delta numerator fits"),
        );
        if lhs > rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Shortest path between two vertices inside a subcomplex, lowest edge first.
pub fn shortest_path(
    x: &CellComplex2,
    sub: &Subcomplex,
    from: usize,
    to: usize,
) -> Option<Vec<usize>> {
    let d = sub.distances(x, &[to]);
    d[from]?;
    let adj = x.adjacency();
    let mut path = vec![from];
    let mut at = from;
    while at != to {
        let next = adj[at]
            .iter()
            .filter(|(w, se)| sub.edges.contains(&se.edge) && d[*w] == Some(d[at].unwrap() - 1))
            .map(|(w, _)| *w)
            .next()?;
        path.push(next);
        at = next;
    }
    Some(path)
}

// ---- essential loops ----------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Essential {
    NonzeroH1Class,
    NontrivialInQuotient { rep: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystoleCertificate {
    pub start: usize,
    pub word: Vec<SignedEdge>,
    pub length: usize,
    pub certificate: Essential,
    /// No cyclically reduced closed loop shorter than this passed any certificate.
    pub searched_below: usize,
}

struct Certifier {
    snf: SmithForm,
    reps: Vec<(String, Vec<Vec<usize>>, Vec<Vec<usize>>, usize)>,
}

impl Certifier {
    fn new(x: &CellComplex2, reps: &[PermRep]) -> Result<Self> {
        let reps = reps
            .iter()
            .map(|r| r.tables(x).map(|(f, b)| (r.name.clone(), f, b, r.degree)))
            .collect::<Result<_>>()?;
        Ok(Certifier {
            snf: SmithForm::new(&x.boundary_matrix(2)),
            reps,
        })
    }

    fn certify(&self, x: &CellComplex2, word: &[SignedEdge]) -> Option<Essential> {
        for (name, f, b, n) in &self.reps {
            let m = follow(f, b, word, *n);
            if m.iter().enumerate().any(|(i, &y)| i != y) {
                return Some(Essential::NontrivialInQuotient { rep: name.clone() });
            }
        }
        let z: Vec<BigInt> = x.word_chain(word).into_iter().map(BigInt::from).collect();
        if self.snf.solve_integer(&z).is_none() {
            return Some(Essential::NonzeroH1Class);
        }
        None
    }
}

/// Independent recheck of a certificate.
pub fn verify_certificate(x: &CellComplex2, cert: &SystoleCertificate, reps: &[PermRep]) -> bool {
    if !x.is_path(cert.start, &cert.word)
        || !x.is_closed_path(&cert.word)
        || cert.word.len() != cert.length
    {
        return false;
    }
    match &cert.certificate {
        Essential::NonzeroH1Class => {
            let z: Vec<BigInt> = x
                .word_chain(&cert.word)
                .into_iter()
                .map(BigInt::from)
                .collect();
            SmithForm::new(&x.boundary_matrix(2))
                .solve_integer(&z)
                .is_none()
        }
        Essential::NontrivialInQuotient { rep } => reps.iter().any(|r| {
            &r.name == rep
                && r.monodromy(x, &cert.word)
                    .is_ok_and(|m| m.iter().enumerate().any(|(i, &y)| i != y))
        }),
    }
}

/// Enumerates cyclically reduced closed edge paths by increasing length and
/// returns the first one certified essential: non-identity monodromy under a
/// supplied rep (checked first, in order) or a nonzero integral H₁ class.
pub fn find_essential_loop(
    x: &CellComplex2,
    reps: &[PermRep],
    cap: usize,
) -> Result<SystoleCertificate> {
    let cert = Certifier::new(x, reps)?;
    let adj = x.adjacency();
    for len in 1..=cap {
        for start in 0..x.num_vertices() {
            let dist = vertex_distances(x, &[start]);
            let mut word = Vec::with_capacity(len);
            if let Some((w, c)) = dfs(x, &adj, &dist, &cert, start, start, len, &mut word) {
                return Ok(SystoleCertificate {
                    start,
                    word: w,
                    length: len,
                    certificate: c,
                    searched_below: len,
                });
            }
        }
    }
    Err(Error::NotFound(format!(
        "no certified essential loop of length <= {cap}"
    )))
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    x: &CellComplex2,
    adj: &[Vec<(usize, SignedEdge)>],
    dist: &[Option<usize>],
    cert: &Certifier,
    start: usize,
    at: usize,
    len: usize,
    word: &mut Vec<SignedEdge>,
) -> Option<(Vec<SignedEdge>, Essential)> {
    let left = len - word.len();
    if left == 0 {
        if at != start || word.first().map(|f| f.inverse()) == word.last().copied() {
            return None;
        }
        return cert.certify(x, word).map(|c| (word.clone(), c));
    }
    for &(w, se) in &adj[at] {
        if word.last().is_some_and(|l| l.inverse() == se) {
            continue;
        }
        if dist[w].is_none_or(|d| d > left - 1) {
            continue;
        }
        word.push(se);
        let found = dfs(x, adj, dist, cert, start, w, len, word);
        word.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

// ---- tubes and traces ---------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct Tube {
    pub start: usize,
    pub word: Vec<SignedEdge>,
    pub length: usize,
    pub radius: usize,
    pub sub: Subcomplex,
}

pub fn tube_radius(length: usize) -> usize {
    length.saturating_sub(1) / 4
}

/// Cellular `⌊(L−1)/4⌋`-neighborhood of a certified loop.
pub fn build_tube(x: &CellComplex2, g: &SystoleCertificate) -> Tube {
    let mut verts = vec![g.start];
    verts.extend(g.word.iter().map(|s| x.head(*s)));
    let radius = tube_radius(g.length);
    Tube {
        start: g.start,
        word: g.word.clone(),
        length: g.length,
        radius,
        sub: cellular_neighborhood(x, &verts, radius),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TracePath {
    pub start: usize,
    pub word: Vec<SignedEdge>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceDecomposition {
    /// `τ = ∂(A|_B) − m·g[u,v]`.
    pub tau: Chain,
    pub paths: Vec<TracePath>,
    pub loops: Vec<TracePath>,
    pub total_path_length: usize,
}

/// Splits `τ = ∂(A|_B) − m·g[u,v]` into `|m|` edge paths joining `u` and `v`
/// plus closed loops. `segment` is the part of `g` inside `B`, read from `u`
/// to `v`; `τ` must vanish on interior edges of `B` (both endpoints closer to
/// the center than the radius), otherwise the input is inconsistent. Walks always leave a vertex by the smallest edge id still carrying
/// flow in the right direction, and closed detours are split off as loops.
#[allow(clippy::too_many_arguments)]
pub fn boundary_trace_decomposition(
    x: &CellComplex2,
    ball: &MetricBall,
    a: &Chain,
    m: i64,
    segment: &[SignedEdge],
    u: usize,
    v: usize,
    step_cap: usize,
) -> Result<TraceDecomposition> {
    if !x.is_path(u, segment) || segment.last().map_or(u, |s| x.head(*s)) != v {
        return Err(Error::DecompositionMismatch(
            "segment does not run from u to v".into(),
        ));
    }
    let restricted = Chain::from_pairs(
        2,
        a.iter()
            .filter(|(c, _)| ball.sub.cells.contains(c))
            .map(|(c, k)| (c, k.clone())),
    );
    let d2 = x.boundary_matrix(2);
    let mut tau = restricted.apply(&d2, 1);
    for (e, k) in x.word_chain(segment).into_iter().enumerate() {
        tau.add(e, &Q::from_integer((-m * k).into()));
    }
    if !tau.is_integral() {
        return Err(Error::DecompositionMismatch(
            "2-chain is not integral".into(),
        ));
    }
    let near = |w: usize| ball.distances.get(&w).is_some_and(|&d| d < ball.radius);
    if let Some(e) = tau
        .support()
        .into_iter()
        .find(|&e| near(x.edges()[e].src) && near(x.edges()[e].dst))
    {
        return Err(Error::DecompositionMismatch(format!(
            "trace has weight on interior edge {}; the g-part of the boundary is not {m}·g",
            x.edges()[e].id
        )));
    }
    let boundary = tau.apply(&x.boundary_matrix(1), 0);
    let mut expect = Chain::zero(0);
    expect.add(u, &Q::from_integer(m.into()));
    expect.add(v, &Q::from_integer((-m).into()));
    if boundary != expect {
        return Err(Error::DecompositionMismatch(format!(
            "boundary of trace is not {m}(u - v)"
        )));
    }
    // remaining flow per edge: positive = along the edge
    let mut flow: BTreeMap<usize, i64> = tau
        .iter()
        .map(|(e, k)| (e, k.to_integer().to_i64().unwrap()))
        .collect();
    let adj = x.adjacency();
    let (src, dst) = if m > 0 { (v, u) } else { (u, v) };
    let mut steps = 0usize;
    let mut step = |at: usize, flow: &mut BTreeMap<usize, i64>| -> Result<Option<SignedEdge>> {
        steps += 1;
        if steps > step_cap {
            return Err(Error::DecompositionMismatch(format!(
                "step cap {step_cap} reached"
            )));
        }
        for &(_, se) in &adj[at] {
            let f = flow.get(&se.edge).copied().unwrap_or(0);
            if (se.forward && f > 0) || (!se.forward && f < 0) {
                let nf = f - se.sign();
                if nf == 0 {
                    flow.remove(&se.edge);
                } else {
                    flow.insert(se.edge, nf);
                }
                return Ok(Some(se));
            }
        }
        Ok(None)
    };
    let mut paths = Vec::new();
    let mut loops = Vec::new();
    for _ in 0..m.unsigned_abs() {
        let mut at = src;
        let mut word: Vec<SignedEdge> = Vec::new();
        let mut visits: Vec<usize> = vec![src];
        while at != dst {
            let se = step(at, &mut flow)?
                .ok_or_else(|| Error::DecompositionMismatch("flow walk stuck".into()))?;
            word.push(se);
            at = x.head(se);
            if let Some(p) = visits.iter().position(|&w| w == at) {
                let cyc: Vec<SignedEdge> = word.drain(p..).collect();
                visits.truncate(p + 1);
                loops.push(TracePath {
                    start: at,
                    word: cyc,
                });
            } else {
                visits.push(at);
            }
        }
        paths.push(TracePath { start: src, word });
    }
    // leftover circulation
    while let Some((&e, _)) = flow.iter().next() {
        let start = x.edges()[e].src;
        let mut at = start;
        let mut word = Vec::new();
        loop {
            let se = step(at, &mut flow)?
                .ok_or_else(|| Error::DecompositionMismatch("circulation walk stuck".into()))?;
            word.push(se);
            at = x.head(se);
            if at == start {
                break;
            }
        }
        loops.push(TracePath { start, word });
    }
    let total_path_length = paths.iter().map(|p| p.word.len()).sum();
    Ok(TraceDecomposition {
        tau,
        paths,
        loops,
        total_path_length,
    })
}

/// Sum of the chains of a set of paths, for checking a decomposition.
pub fn paths_chain(x: &CellComplex2, paths: &[TracePath]) -> Chain {
    let mut c = Chain::zero(1);
    for p in paths {
        for (e, k) in x.word_chain(&p.word).into_iter().enumerate() {
            c.add(e, &Q::from_integer(k.into()));
        }
    }
    c
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuperlinearReport {
    /// `|m|·2^((R−R₀−1)/δ)` bracketed from below and above.
    #[serde(with = "serde_q")]
    pub lhs_lo: Q,
    #[serde(with = "serde_q")]
    pub lhs_hi: Q,
    /// `C·‖A‖`.
    #[serde(with = "serde_q")]
    pub rhs: Q,
    /// Conservative: the upper end of the bracket is compared.
    pub holds: bool,
    pub path_length: usize,
    pub path_length_holds: bool,
}

/// Evaluates `|m|·2^((R−R₀−1)/δ) ≤ C·‖A‖` and `Σ len(c_k) ≤ C·‖A‖`.
pub fn superlinear_certificate(
    radius: usize,
    a: &Chain,
    m: i64,
    delta: &Q,
    r0: usize,
    c: usize,
    decomposition: Option<&TraceDecomposition>,
) -> Result<SuperlinearReport> {
    let rhs = Q::from_integer(c.into()) * a.l1_norm();
    let path_length = decomposition.map_or(0, |d| d.total_path_length);
    let path_length_holds = Q::from_integer(path_length.into()) <= rhs;
    if m == 0 {
        return Ok(SuperlinearReport {
            lhs_lo: Q::zero(),
            lhs_hi: Q::zero(),
            holds: true,
            rhs,
            path_length,
            path_length_holds,
        });
    }
    if !delta.is_positive() {
        return Err(Error::PreconditionViolated(
            "delta estimate must be positive".into(),
        ));
    }
    let exponent = (Q::from_integer(radius.into()) - Q::from_integer(r0.into()) - Q::one()) / delta;
    let (lo, hi) = pow2_bracket(&exponent);
    let mm = Q::from_integer(m.unsigned_abs().into());
    let lhs_lo = &mm * lo;
    let lhs_hi = mm * hi;
    Ok(SuperlinearReport {
        holds: lhs_hi <= rhs,
        lhs_lo,
        lhs_hi,
        rhs,
        path_length,
        path_length_holds,
    })
}

// ---- tower experiment -----------------------------------------------------------

pub const TOWER_SCHEMA: &str = "cellfill.tower/1";

#[derive(Debug, Clone, PartialEq)]
pub struct TowerConfig {
    /// Witness threshold for `‖z‖/Fill(z)`.
    pub eps: Q,
    pub loop_cap: usize,
    pub rho: RhoOptions,
    pub filling_ratio: bool,
}

impl Default for TowerConfig {
    fn default() -> Self {
        TowerConfig {
            eps: Q::new(1.into(), 10.into()),
            loop_cap: 6,
            rho: RhoOptions::default(),
            filling_ratio: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum LevelOutcome {
    B1Positive,
    Witness {
        #[serde(with = "serde_q")]
        ratio: Q,
        below_eps: bool,
    },
    CapsExhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum TowerVerdict {
    B1Positive { level: usize },
    WitnessBelowEps { level: usize },
    CapsExhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub degree: usize,
    pub cells: [usize; 3],
    pub chi: i64,
    pub b1: usize,
    pub outcome: LevelOutcome,
    pub convention_zero: bool,
    #[serde(serialize_with = "serde_opt_q::serialize")]
    pub rho_real: Option<Q>,
    #[serde(serialize_with = "serde_opt_q::serialize")]
    pub rho_integer: Option<Q>,
    pub rho_integer_exact: bool,
    pub systole: Option<usize>,
    pub systole_certificate: Option<Essential>,
    /// Order `d` of the systole class in H₁ and `‖A‖/(d·L)` for an optimal
    /// integral filling `A` of `d·g`.
    pub filling_multiple: Option<u64>,
    #[serde(serialize_with = "serde_opt_q::serialize")]
    pub filling_ratio: Option<Q>,
    pub cap_flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TowerReport {
    pub schema: &'static str,
    #[serde(with = "serde_q")]
    pub eps: Q,
    pub levels: Vec<LevelReport>,
    pub verdict: TowerVerdict,
}

fn analyze_level(t: &CoverTower, level: usize, cfg: &TowerConfig) -> Result<LevelReport> {
    let x = t.complex(level)?;
    let summary = t.summary(level)?;
    let mut flags = Vec::new();
    let reps: Vec<PermRep> = t
        .levels
        .get(level)
        .map(|l| vec![l.rep.clone()])
        .unwrap_or_default();
    let sys = match find_essential_loop(x, &reps, cfg.loop_cap) {
        Ok(s) => Some(s),
        Err(e) => {
            flags.push(format!("systole:{}", e.code()));
            None
        }
    };
    let (mut filling_multiple, mut filling_ratio) = (None, None);
    if let (true, Some(s)) = (cfg.filling_ratio, &sys) {
        let z: Vec<BigInt> = x
            .word_chain(&s.word)
            .into_iter()
            .map(BigInt::from)
            .collect();
        if let Some(k) = SmithForm::new(&x.boundary_matrix(2)).lattice_multiplier(&z) {
            let target = Chain::from_dense_big(1, &z.iter().map(|v| v * &k).collect::<Vec<_>>());
            let p = FillProblem::new(x, target, Ring::Integer).with_node_cap(cfg.rho.node_cap);
            match fill(&p) {
                Ok(r) => {
                    let denom = bigq(&k) * Q::from_integer(s.length.into());
                    filling_ratio = Some(r.value / denom);
                    filling_multiple = k.to_u64();
                }
                Err(e) => flags.push(format!("filling_ratio:{}", e.code())),
            }
        }
    }
    let base = LevelReport {
        level,
        degree: summary.degree,
        cells: summary.cells,
        chi: summary.chi,
        b1: summary.b1,
        outcome: LevelOutcome::CapsExhausted,
        convention_zero: false,
        rho_real: None,
        rho_integer: None,
        rho_integer_exact: false,
        systole: sys.as_ref().map(|s| s.length),
        systole_certificate: sys.map(|s| s.certificate),
        filling_multiple,
        filling_ratio,
        cap_flags: flags,
    };
    if summary.b1 > 0 {
        return Ok(LevelReport {
            outcome: LevelOutcome::B1Positive,
            convention_zero: true,
            rho_real: Some(Q::zero()),
            rho_integer: Some(Q::zero()),
            rho_integer_exact: true,
            ..base
        });
    }
    let mut report = base;
    match rho(x, &cfg.rho) {
        Ok(r) => {
            report.convention_zero = r.convention_zero;
            report.rho_integer_exact = r.integer_exact;
            let best = r.rho_integer.clone().or_else(|| r.rho_real.clone());
            report.rho_real = r.rho_real;
            report.rho_integer = r.rho_integer;
            report.outcome = match best {
                Some(ratio) => LevelOutcome::Witness {
                    below_eps: ratio < cfg.eps,
                    ratio,
                },
                None => {
                    report.cap_flags.push("rho:no_nonzero_boundary".into());
                    LevelOutcome::CapsExhausted
                }
            };
        }
        Err(e) => report.cap_flags.push(format!("rho:{}", e.code())),
    }
    Ok(report)
}

/// Per-level b₁, ρ, systole and filling-ratio data; levels run in parallel and
/// are reported in order.
pub fn tower_experiment(t: &CoverTower, cfg: &TowerConfig) -> Result<TowerReport> {
    let levels: Vec<LevelReport> = (0..=t.len())
        .into_par_iter()
        .map(|l| analyze_level(t, l, cfg))
        .collect::<Result<_>>()?;
    let verdict = levels
        .iter()
        .find_map(|l| match l.outcome {
            LevelOutcome::B1Positive => Some(TowerVerdict::B1Positive { level: l.level }),
            _ => None,
        })
        .or_else(|| {
            levels.iter().find_map(|l| match l.outcome {
                LevelOutcome::Witness {
                    below_eps: true, ..
                } => Some(TowerVerdict::WitnessBelowEps { level: l.level }),
                _ => None,
            })
        })
        .unwrap_or(TowerVerdict::CapsExhausted);
    Ok(TowerReport {
        schema: TOWER_SCHEMA,
        eps: cfg.eps.clone(),
        levels,
        verdict,
    })
}
