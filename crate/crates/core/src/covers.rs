//! Finite covers from permutation representations, towers of covers, and ball
//! embedding across levels.
//!
//! An edge `e: u → w` with permutation `σ_e` lifts to edges `(e, s): (u, s) →
//! (w, σ_e(s))`. Sheets are 1-based in names (`v.1`) and 0-based internally.
//! The lift of base cell index `i` on sheet `s` has index `i·n + s`.

use crate::complex::{CellComplex2, SignedEdge};
use crate::error::{Error, Result};
use crate::linalg::{kernel_mod, reduce_mod};
use crate::subcomplex::{cellular_neighborhood, Subcomplex};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};

pub const DEFAULT_DEGREE_CAP: u128 = 4096;

/// Permutation of sheets `0..degree` attached to each edge; edges not listed act
/// trivially.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermRep {
    pub name: String,
    pub degree: usize,
    pub images: BTreeMap<String, Vec<usize>>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

impl PermRep {
    pub fn identity(name: impl Into<String>, degree: usize) -> Self {
        PermRep {
            name: name.into(),
            degree,
            images: BTreeMap::new(),
        }
    }

    /// Images are given 1-based, as in the text format.
    pub fn from_one_based(
        name: impl Into<String>,
        degree: usize,
        gens: &[(&str, Vec<usize>)],
    ) -> Result<Self> {
        let mut rep = PermRep::identity(name, degree);
        for (g, img) in gens {
            rep.set(g, img.iter().map(|&x| x.wrapping_sub(1)).collect())?;
        }
        Ok(rep)
    }

    pub fn set(&mut self, edge: &str, perm: Vec<usize>) -> Result<()> {
        if perm.len() != self.degree || !is_permutation(&perm) {
            return Err(Error::InvalidInput(format!(
                "image of {edge} is not a permutation of 1..{}",
                self.degree
            )));
        }
        self.images.insert(edge.to_string(), perm);
        Ok(())
    }

    /// Image of a sheet under one edge, or identity.
    pub fn act(&self, edge: &str, s: usize) -> usize {
        self.images.get(edge).map_or(s, |p| p[s])
    }

    pub(crate) fn tables(&self, x: &CellComplex2) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
        for k in self.images.keys() {
            if x.edge_id(k).is_none() {
                return Err(Error::DanglingReference {
                    kind: "edge",
                    id: k.clone(),
                });
            }
        }
        let fwd: Vec<Vec<usize>> = x
            .edges()
            .iter()
            .map(|e| {
                self.images
                    .get(&e.id)
                    .cloned()
                    .unwrap_or_else(|| (0..self.degree).collect())
            })
            .collect();
        let bwd = fwd.iter().map(|p| inverse(p)).collect();
        Ok((fwd, bwd))
    }

    /// Permutation obtained by following `word` from every sheet.
    pub fn monodromy(&self, x: &CellComplex2, word: &[SignedEdge]) -> Result<Vec<usize>> {
        let (fwd, bwd) = self.tables(x)?;
        Ok(follow(&fwd, &bwd, word, self.degree))
    }

    pub fn check_monodromy(&self, x: &CellComplex2) -> Result<()> {
        let (fwd, bwd) = self.tables(x)?;
        for c in x.cells() {
            let m = follow(&fwd, &bwd, &c.word, self.degree);
            if m.iter().enumerate().any(|(i, &y)| i != y) {
                return Err(Error::MonodromyObstruction { cell: c.id.clone() });
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let bad = |line: usize, m: &str| Error::MalformedSyntax {
            line,
            message: m.to_string(),
        };
        let (ln, head) = lines
            .next()
            .ok_or_else(|| bad(1, "empty permrep document"))?;
        let name = head
            .strip_prefix("permrep")
            .map(str::trim)
            .filter(|n| !n.is_empty())
            .ok_or_else(|| bad(ln, "expected `permrep NAME`"))?;
        let (ln, deg) = lines.next().ok_or_else(|| bad(ln, "missing degree line"))?;
        let degree: usize = deg
            .strip_prefix("degree:")
            .and_then(|d| d.trim().parse().ok())
            .filter(|&d| d >= 1)
            .ok_or_else(|| bad(ln, "expected `degree: n` with n >= 1"))?;
        let mut rep = PermRep::identity(name, degree);
        for (ln, l) in lines {
            let rest = l
                .strip_prefix("gen ")
                .ok_or_else(|| bad(ln, "expected `gen ID: images`"))?;
            let (g, imgs) = rest.split_once(':').ok_or_else(|| bad(ln, "missing `:`"))?;
            let perm: Vec<usize> = imgs
                .split_whitespace()
                .map(|t| t.parse::<usize>().ok().filter(|&x| x >= 1).map(|x| x - 1))
                .collect::<Option<_>>()
                .ok_or_else(|| bad(ln, "images must be positive integers"))?;
            rep.set(g.trim(), perm)
                .map_err(|e| bad(ln, &e.to_string()))?;
        }
        Ok(rep)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("permrep {}\ndegree: {}\n", self.name, self.degree);
        for (g, p) in &self.images {
            let imgs: Vec<String> = p.iter().map(|x| (x + 1).to_string()).collect();
            s.push_str(&format!("gen {g}: {}\n", imgs.join(" ")));
        }
        s
    }

    /// Rep of `x` whose cover is the cover of `cover.complex` by `upper`.
    pub fn compose(&self, x: &CellComplex2, cover: &Cover, upper: &PermRep) -> Result<PermRep> {
        let (fwd, _) = self.tables(x)?;
        let (ufwd, _) = upper.tables(&cover.complex)?;
        let n = self.degree;
        let m = upper.degree;
        let mut out = PermRep::identity(format!("{}*{}", self.name, upper.name), n * m);
        for (e, edge) in x.edges().iter().enumerate() {
            let perm: Vec<usize> = (0..n * m)
                .map(|st| {
                    let (s, t) = (st / m, st % m);
                    let lifted = e * n + s;
                    fwd[e][s] * m + ufwd[lifted][t]
                })
                .collect();
            out.images.insert(edge.id.clone(), perm);
        }
        Ok(out)
    }
}

pub(crate) fn follow(
    fwd: &[Vec<usize>],
    bwd: &[Vec<usize>],
    word: &[SignedEdge],
    n: usize,
) -> Vec<usize> {
    (0..n)
        .map(|mut s| {
            for se in word {
                s = if se.forward {
                    fwd[se.edge][s]
                } else {
                    bwd[se.edge][s]
                };
            }
            s
        })
        .collect()
}

/// Cellular projection `cover → base`, per dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellMap {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub cells: Vec<usize>,
    /// Number of times each lifted cell wraps its image (1 for genuine covers).
    pub multiplicity: Vec<usize>,
}

impl CellMap {
    pub fn identity(x: &CellComplex2) -> Self {
        CellMap {
            vertices: (0..x.num_vertices()).collect(),
            edges: (0..x.num_edges()).collect(),
            cells: (0..x.num_cells()).collect(),
            multiplicity: vec![1; x.num_cells()],
        }
    }

    /// `other ∘ self` (first self, then other).
    pub fn then(&self, other: &CellMap) -> CellMap {
        CellMap {
            vertices: self.vertices.iter().map(|&v| other.vertices[v]).collect(),
            edges: self.edges.iter().map(|&e| other.edges[e]).collect(),
            cells: self.cells.iter().map(|&c| other.cells[c]).collect(),
            multiplicity: self
                .cells
                .iter()
                .zip(&self.multiplicity)
                .map(|(&c, &k)| k * other.multiplicity[c])
                .collect(),
        }
    }

    pub fn dim(&self, d: usize) -> &[usize] {
        match d {
            0 => &self.vertices,
            1 => &self.edges,
            _ => &self.cells,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cover {
    pub complex: CellComplex2,
    pub projection: CellMap,
    pub degree: usize,
}

/// Standard covering complex. Every base 2-cell lifts to one cell per sheet;
/// a non-identity boundary monodromy is an error.
pub fn build_cover(x: &CellComplex2, rep: &PermRep) -> Result<Cover> {
    rep.check_monodromy(x)?;
    lift(x, rep)
}

/// Like [`build_cover`], but a 2-cell with non-identity monodromy lifts to one
/// cell per monodromy cycle, wrapping it that many times (a branched cover).
pub fn build_branched_cover(x: &CellComplex2, rep: &PermRep) -> Result<Cover> {
    lift(x, rep)
}

fn lift(x: &CellComplex2, rep: &PermRep) -> Result<Cover> {
    let (fwd, bwd) = rep.tables(x)?;
    let n = rep.degree;
    let mut y = CellComplex2::empty(format!("{}~{}", x.name, rep.name));
    let mut map = CellMap {
        vertices: Vec::new(),
        edges: Vec::new(),
        cells: Vec::new(),
        multiplicity: Vec::new(),
    };
    for (v, name) in x.vertices().iter().enumerate() {
        for s in 0..n {
            y.add_vertex(format!("{name}.{}", s + 1))?;
            map.vertices.push(v);
        }
    }
    for (e, edge) in x.edges().iter().enumerate() {
        for s in 0..n {
            y.add_edge(
                format!("{}.{}", edge.id, s + 1),
                edge.src * n + s,
                edge.dst * n + fwd[e][s],
            )?;
            map.edges.push(e);
        }
    }
    for (c, cell) in x.cells().iter().enumerate() {
        let mono = follow(&fwd, &bwd, &cell.word, n);
        let mut done = vec![false; n];
        for s0 in 0..n {
            if done[s0] {
                continue;
            }
            let mut word = Vec::new();
            let mut s = s0;
            let mut wraps = 0;
            loop {
                done[s] = true;
                for se in &cell.word {
                    if se.forward {
                        word.push(SignedEdge::fwd(se.edge * n + s));
                        s = fwd[se.edge][s];
                    } else {
                        s = bwd[se.edge][s];
                        word.push(SignedEdge::rev(se.edge * n + s));
                    }
                }
                wraps += 1;
                if s == s0 {
                    break;
                }
            }
            debug_assert_eq!(mono[s0] == s0, wraps == 1);
            y.add_cell(format!("{}.{}", cell.id, s0 + 1), word)?;
            map.cells.push(c);
            map.multiplicity.push(wraps);
        }
    }
    Ok(Cover {
        complex: y,
        projection: map,
        degree: n,
    })
}

/// Regular permutation action of `H₁(X; F_p)` (as `F_p^k`, `k` its dimension).
///
/// The basis of `H¹(X; F_p)` consists of cocycles vanishing on a spanning
/// forest; edge `e` translates the sheet vector by `(ψ_1(e), …, ψ_k(e))`.
/// Sheet `(c_1, …, c_k)` has index `Σ c_i p^{i−1}`.
pub fn mod_p_homology_rep(x: &CellComplex2, p: u64, cap: u128) -> Result<PermRep> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let forest = spanning_forest(x);
    let e = x.num_edges();
    let mut rows = reduce_mod(&x.boundary_matrix(2).transpose(), p);
    for &f in &forest {
        let mut r = vec![0u64; e];
        r[f] = 1;
        rows.push(r);
    }
    let basis = kernel_mod(rows, e, p);
    let k = basis.len();
    if k == 0 {
        return Err(Error::TrivialQuotient { p });
    }
    let degree = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if degree > cap {
        return Err(Error::DegreeCapExceeded { degree, cap });
    }
    let n = degree as usize;
    let mut rep = PermRep::identity(format!("{}_h1_mod{p}", x.name), n);
    for (j, edge) in x.edges().iter().enumerate() {
        let shift: Vec<u64> = basis.iter().map(|psi| psi[j]).collect();
        if shift.iter().all(|&c| c == 0) {
            continue;
        }
        let perm = (0..n)
            .map(|s| {
                let mut rest = s as u64;
                let mut out = 0u64;
                let mut place = 1u64;
                for &c in &shift {
                    let digit = (rest % p + c) % p;
                    rest /= p;
                    out += digit * place;
                    place *= p;
                }
                out as usize
            })
            .collect();
        rep.images.insert(edge.id.clone(), perm);
    }
    Ok(rep)
}

/// Edges of a BFS spanning forest (lowest vertex roots, adjacency order).
pub fn spanning_forest(x: &CellComplex2) -> Vec<usize> {
    let adj = x.adjacency();
    let mut seen = vec![false; x.num_vertices()];
    let mut out = Vec::new();
    for root in 0..x.num_vertices() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(w, se) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    out.push(se.edge);
                    queue.push_back(w);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

// ---- towers ------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub rep: PermRep,
    pub complex: CellComplex2,
    /// Projection to the level below.
    pub projection: CellMap,
    /// Composite projection to the base.
    pub to_base: CellMap,
    /// Total degree over the base.
    pub degree: usize,
    /// Set by the caller; never verified.
    pub normality_claimed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverTower {
    pub base: CellComplex2,
    pub levels: Vec<Level>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSummary {
    pub level: usize,
    pub degree: usize,
    pub cells: [usize; 3],
    pub chi: i64,
    pub b1: usize,
}

impl CoverTower {
    pub fn new(base: CellComplex2) -> Self {
        CoverTower {
            base,
            levels: Vec::new(),
        }
    }

    /// Number of levels above the base.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Level 0 is the base.
    pub fn complex(&self, level: usize) -> Result<&CellComplex2> {
        match level {
            0 => Ok(&self.base),
            k if k <= self.levels.len() => Ok(&self.levels[k - 1].complex),
            k => Err(Error::LevelOutOfRange {
                level: k,
                levels: self.levels.len(),
            }),
        }
    }

    pub fn degree(&self, level: usize) -> Result<usize> {
        self.complex(level)?;
        Ok(if level == 0 {
            1
        } else {
            self.levels[level - 1].degree
        })
    }

    pub fn top(&self) -> &CellComplex2 {
        self.complex(self.levels.len()).expect("top level exists")
    }

    /// Adds a level from a rep on the current top complex.
    pub fn extend(&mut self, rep: PermRep, normality_claimed: bool) -> Result<()> {
        let cover = build_cover(self.top(), &rep)?;
        let below = self.levels.last();
        let to_base = match below {
            Some(l) => cover.projection.then(&l.to_base),
            None => cover.projection.clone(),
        };
        let degree = below.map_or(1, |l| l.degree) * rep.degree;
        self.levels.push(Level {
            rep,
            complex: cover.complex,
            projection: cover.projection,
            to_base,
            degree,
            normality_claimed,
        });
        Ok(())
    }

    /// Composite projection from level `from` down to level `to ≤ from`.
    pub fn projection(&self, from: usize, to: usize) -> Result<CellMap> {
        let levels = self.levels.len();
        if from > levels || to > from {
            return Err(Error::LevelOutOfRange {
                level: from.max(to),
                levels,
            });
        }
        let mut map = CellMap::identity(self.complex(from)?);
        for k in (to + 1..=from).rev() {
            map = map.then(&self.levels[k - 1].projection);
        }
        Ok(map)
    }

    pub fn summary(&self, level: usize) -> Result<LevelSummary> {
        let x = self.complex(level)?;
        Ok(LevelSummary {
            level,
            degree: self.degree(level)?,
            cells: x.counts(),
            chi: x.euler_characteristic(),
            b1: x.betti(1),
        })
    }

    /// Index at `level` of the sheet-1 lift of a base vertex.
    pub fn lift_vertex(&self, base_vertex: usize, level: usize) -> Result<usize> {
        self.complex(level)?;
        let mut v = base_vertex;
        for l in &self.levels[..level] {
            v *= l.rep.degree;
        }
        Ok(v)
    }
}

/// Extends `t` by a rep on its top level.
pub fn extend_tower(mut t: CoverTower, rep: PermRep) -> Result<CoverTower> {
    t.extend(rep, false)?;
    Ok(t)
}

/// Tower of iterated mod-`p` homology covers. Stops (returning the error) at the
/// first level whose rep cannot be built; the levels built so far are kept.
pub fn homology_tower(
    base: CellComplex2,
    p: u64,
    levels: usize,
    cap: u128,
) -> (CoverTower, Option<Error>) {
    let mut t = CoverTower::new(base);
    for _ in 0..levels {
        let rep = match mod_p_homology_rep(t.top(), p, cap) {
            Ok(r) => r,
            Err(e) => return (t, Some(e)),
        };
        if let Err(e) = t.extend(rep, false) {
            return (t, Some(e));
        }
    }
    (t, None)
}

fn injective_on(map: &[usize], cells: &BTreeSet<usize>) -> bool {
    let mut seen = BTreeSet::new();
    cells.iter().all(|&c| seen.insert(map[c]))
}

/// Whether the composite projection from `level` to `target` is injective on `y`.
pub fn check_injective_projection(
    t: &CoverTower,
    level: usize,
    y: &Subcomplex,
    target: usize,
) -> Result<bool> {
    if target >= level {
        return Err(Error::LevelOutOfRange {
            level: target,
            levels: t.len(),
        });
    }
    let map = t.projection(level, target)?;
    Ok(injective_on(&map.vertices, &y.vertices)
        && injective_on(&map.edges, &y.edges)
        && injective_on(&map.cells, &y.cells))
}

fn image(map: &[usize], cells: &BTreeSet<usize>) -> BTreeSet<usize> {
    cells.iter().map(|&c| map[c]).collect()
}

/// Lowest level `j` whose `r`-ball around the sheet-1 lift of `center` is
/// carried bijectively onto it by the `r`-ball one level up. None when no
/// consecutive pair of levels agrees.
pub fn embed_ball(t: &CoverTower, center: usize, r: usize) -> Result<Option<(usize, Subcomplex)>> {
    let mut balls = Vec::with_capacity(t.len() + 1);
    for j in 0..=t.len() {
        let x = t.complex(j)?;
        let c = t.lift_vertex(center, j)?;
        balls.push(cellular_neighborhood(x, &[c], r));
    }
    for j in 0..t.len() {
        let map = &t.levels[j].projection;
        let (lo, hi) = (&balls[j], &balls[j + 1]);
        let bijective = injective_on(&map.vertices, &hi.vertices)
            && injective_on(&map.edges, &hi.edges)
            && injective_on(&map.cells, &hi.cells)
            && image(&map.vertices, &hi.vertices) == lo.vertices
            && image(&map.edges, &hi.edges) == lo.edges
            && image(&map.cells, &hi.cells) == lo.cells;
        if bijective {
            return Ok(Some((j, balls.swap_remove(j))));
        }
    }
    Ok(None)
}

/// Checks that a map between complexes is a relabelling isomorphism: bijective
/// in each dimension, preserving endpoints and boundary words up to rotation.
pub fn is_isomorphism(a: &CellComplex2, b: &CellComplex2, vmap: &[usize], emap: &[usize]) -> bool {
    if a.counts() != b.counts() {
        return false;
    }
    let bij = |m: &[usize], n: usize| m.len() == n && m.iter().collect::<BTreeSet<_>>().len() == n;
    if !bij(vmap, a.num_vertices()) || !bij(emap, a.num_edges()) {
        return false;
    }
    for (e, edge) in a.edges().iter().enumerate() {
        let img = &b.edges()[emap[e]];
        if img.src != vmap[edge.src] || img.dst != vmap[edge.dst] {
            return false;
        }
    }
    let key = |w: &[SignedEdge]| -> Vec<SignedEdge> {
        (0..w.len())
            .map(|r| w[r..].iter().chain(&w[..r]).copied().collect::<Vec<_>>())
            .min()
            .unwrap_or_default()
    };
    let mut words: HashMap<Vec<SignedEdge>, usize> = HashMap::new();
    for c in b.cells() {
        *words.entry(key(&c.word)).or_default() += 1;
    }
    for c in a.cells() {
        let w: Vec<SignedEdge> = c
            .word
            .iter()
            .map(|s| SignedEdge {
                edge: emap[s.edge],
                forward: s.forward,
            })
            .collect();
        match words.get_mut(&key(&w)) {
            Some(k) if *k > 0 => *k -= 1,
            _ => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures::*;

    fn rp2_swap() -> PermRep {
        PermRep::from_one_based("swap", 2, &[("a", vec![2, 1])]).unwrap()
    }

    #[test]
    fn rp2_double_cover() {
        let c = build_cover(&rp2(), &rp2_swap()).unwrap();
        assert_eq!(c.complex.counts(), [2, 2, 2]);
        assert_eq!(c.complex.euler_characteristic(), 2);
        assert!(c.complex.homology(1).is_trivial());
        assert_eq!(
            c.complex.vertices(),
            &["v.1".to_string(), "v.2".to_string()]
        );
    }

    #[test]
    fn trivial_rep_is_identity() {
        let t = torus();
        let c = build_cover(&t, &PermRep::identity("id", 1)).unwrap();
        assert_eq!(c.complex.counts(), t.counts());
        assert_eq!(c.complex.boundary_matrix(2), t.boundary_matrix(2));
    }

    #[test]
    fn obstruction_and_branching() {
        let rep = PermRep::from_one_based("c3", 3, &[("a", vec![2, 3, 1])]).unwrap();
        assert!(matches!(
            build_cover(&rp2(), &rep),
            Err(Error::MonodromyObstruction { .. })
        ));
        let b = build_branched_cover(&rp2(), &rep).unwrap();
        assert_eq!(b.complex.counts(), [3, 3, 1]);
        assert_eq!(b.projection.multiplicity, vec![3]);
    }

    #[test]
    fn mod_p_reps() {
        let r = mod_p_homology_rep(&rp2(), 2, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(r.degree, 2);
        assert_eq!(r.images["a"], vec![1, 0]);
        assert_eq!(
            mod_p_homology_rep(&genus2(), 2, DEFAULT_DEGREE_CAP)
                .unwrap()
                .degree,
            16
        );
        assert_eq!(
            mod_p_homology_rep(&sphere(), 2, DEFAULT_DEGREE_CAP),
            Err(Error::TrivialQuotient { p: 2 })
        );
    }

    #[test]
    fn permrep_text_roundtrip() {
        let r = PermRep::parse("permrep swap\ndegree: 2\ngen a: 2 1\n").unwrap();
        assert_eq!(r, rp2_swap());
        assert_eq!(PermRep::parse(&r.to_text()).unwrap(), r);
        assert!(PermRep::parse("permrep x\ndegree: 2\ngen a: 1 1\n").is_err());
    }

    #[test]
    fn tower_levels_and_balls() {
        let mut t = CoverTower::new(rp2());
        t.extend(rp2_swap(), true).unwrap();
        t.extend(PermRep::identity("id", 1), false).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.top().counts(), [2, 2, 2]);
        let both = Subcomplex {
            vertices: [0, 1].into(),
            ..Default::default()
        };
        assert!(!check_injective_projection(&t, 1, &both, 0).unwrap());
        let one = Subcomplex {
            vertices: [0].into(),
            ..Default::default()
        };
        assert!(check_injective_projection(&t, 1, &one, 0).unwrap());
        assert!(matches!(
            check_injective_projection(&t, 5, &one, 0),
            Err(Error::LevelOutOfRange { .. })
        ));
        // the 1-ball in the double cover is carried isomorphically by the trivial level
        let (j, ball) = embed_ball(&t, 0, 1).unwrap().unwrap();
        assert_eq!(j, 1);
        assert_eq!(ball.counts(), [2, 2, 2]);
        let short = extend_tower(CoverTower::new(rp2()), rp2_swap()).unwrap();
        assert_eq!(embed_ball(&short, 0, 50).unwrap(), None);
    }
}
