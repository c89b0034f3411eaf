//! Dual cellulation of a triangulated 3-manifold and the Poincaré duality
//! chain map onto simplicial cochains.
//!
//! The dual cell `D(σ)` of a `p`-simplex is assembled from the barycentric
//! subdivision: it is the signed sum of flag simplices `[b(σ), …, b(t)]` over
//! all flags from `σ` up to a tetrahedron `t`, each oriented so that `σ`
//! followed by the piece reproduces the manifold orientation. Its boundary is
//! computed in the subdivision and decomposed back into dual cells, so the
//! incidence signs are geometric rather than copied from the primal complex.

use super::triangulation::Triangulation3;
use crate::error::{Error, Result};
use crate::homology::{ChainComplex, HomologySummary};
use crate::matrix::IntMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, VecDeque};

/// A flag simplex in the subdivision, as global simplex ids of increasing dimension.
type Flag = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCellulation {
    /// `counts[d]` dual `d`-cells; dual `d`-cell `i` is dual to `(3−d)`-simplex `i`.
    pub counts: [usize; 4],
    /// `boundaries[d−1] = ∂^∨_d`, rows indexed by `(4−d)`-simplices.
    pub boundaries: Vec<IntMatrix>,
}

impl DualCellulation {
    pub fn chain_complex(&self) -> ChainComplex {
        ChainComplex {
            ranks: self.counts.to_vec(),
            boundaries: self.boundaries.clone(),
        }
    }

    pub fn homology(&self, d: usize) -> HomologySummary {
        self.chain_complex().homology(d)
    }

    /// `∂^∨_d` for `d ∈ 1..=3`.
    pub fn boundary(&self, d: usize) -> &IntMatrix {
        &self.boundaries[d - 1]
    }
}

fn perm_sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

struct Flags<'a> {
    t: &'a Triangulation3,
    offset: [usize; 4],
}

impl Flags<'_> {
    fn gid(&self, verts: &[usize]) -> usize {
        let mut s = verts.to_vec();
        s.sort_unstable();
        let p = s.len() - 1;
        self.offset[p] + self.t.index_of(p, &s).expect("face of a simplex")
    }

    fn dim_of(&self, gid: usize) -> usize {
        (0..4).rev().find(|&p| gid >= self.offset[p]).unwrap()
    }

    /// Pieces of `D(σ)` with their orientation signs.
    fn pieces(&self, sigma: &[usize], cofaces: &[usize]) -> BTreeMap<Flag, i64> {
        let mut out = BTreeMap::new();
        for &ti in cofaces {
            let tet = &self.t.simplices[3][ti];
            let extra: Vec<usize> = tet.iter().copied().filter(|v| !sigma.contains(v)).collect();
            for order in permutations(&extra) {
                let mut verts = sigma.to_vec();
                let mut flag = vec![self.gid(&verts)];
                for &v in &order {
                    verts.push(v);
                    flag.push(self.gid(&verts));
                }
                let positions: Vec<usize> = verts
                    .iter()
                    .map(|v| tet.iter().position(|w| w == v).unwrap())
                    .collect();
                // dual vertices are points, oriented positively
                let sign = if extra.is_empty() {
                    1
                } else {
                    self.t.orientation[ti] * perm_sign(&positions)
                };
                out.insert(flag, sign);
            }
        }
        out
    }
}

/// Builds the dual cellulation with geometric incidence signs.
pub fn dualize(t: &Triangulation3) -> Result<DualCellulation> {
    let c = t.counts();
    let offset = [0, c[0], c[0] + c[1], c[0] + c[1] + c[2]];
    let flags = Flags { t, offset };
    let mut cofaces: [Vec<Vec<usize>>; 4] = std::array::from_fn(|p| vec![Vec::new(); c[p]]);
    for (ti, tet) in t.simplices[3].iter().enumerate() {
        for mask in 1u32..16 {
            let s: Vec<usize> = (0..4)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| tet[i])
                .collect();
            let p = s.len() - 1;
            cofaces[p][t.index_of(p, &s).unwrap()].push(ti);
        }
    }
    let pieces: [Vec<BTreeMap<Flag, i64>>; 4] = std::array::from_fn(|p| {
        (0..c[p])
            .map(|i| flags.pieces(&t.simplices[p][i], &cofaces[p][i]))
            .collect()
    });
    let mut boundaries = Vec::new();
    for d in 1..=3 {
        let p = 3 - d;
        let mut m = IntMatrix::zeros(c[p + 1], c[p]);
        for (si, cell) in pieces[p].iter().enumerate() {
            let mut acc: BTreeMap<Flag, i64> = BTreeMap::new();
            for (flag, &sign) in cell {
                for i in 0..flag.len() {
                    let mut f = flag.clone();
                    f.remove(i);
                    *acc.entry(f).or_insert(0) += if i % 2 == 0 { sign } else { -sign };
                }
            }
            acc.retain(|_, v| *v != 0);
            let mut by_tau: BTreeMap<usize, Vec<(Flag, i64)>> = BTreeMap::new();
            for (f, v) in acc {
                let lead = f[0];
                let conforming = flags.dim_of(lead) == p + 1
                    && flags.dim_of(*f.last().unwrap()) == 3
                    && f.len() == 3 - p;
                if !conforming {
                    return Err(Error::InvalidInput(format!(
                        "boundary of dual cell {} does not decompose into dual cells",
                        t.simplex_name(p, si)
                    )));
                }
                by_tau.entry(lead - offset[p + 1]).or_default().push((f, v));
            }
            for (tau, terms) in by_tau {
                let target = &pieces[p + 1][tau];
                let coef = terms[0].1 * target[&terms[0].0];
                let whole = terms.len() == target.len()
                    && terms
                        .iter()
                        .all(|(f, v)| target.get(f).map(|s| coef * s) == Some(*v));
                if !whole {
                    return Err(Error::InvalidInput(format!(
                        "boundary of dual cell {} covers dual cell {} only partially",
                        t.simplex_name(p, si),
                        t.simplex_name(p + 1, tau)
                    )));
                }
                m.set(tau, si, coef);
            }
        }
        boundaries.push(m);
    }
    Ok(DualCellulation {
        counts: [c[3], c[2], c[1], c[0]],
        boundaries,
    })
}

/// The duality chain map `D(σ) ↦ signs[p][σ]·σ*` for each `p`-simplex `σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdChainMap {
    pub signs: [Vec<i64>; 4],
}

impl PdChainMap {
    /// Signs propagated along primal incidences so that every square commutes:
    /// `s_τ·c_{τσ} = s_σ·[τ:σ]`.
    pub fn new(t: &Triangulation3, dual: &DualCellulation) -> Self {
        let c = t.counts();
        let mut signs: [Vec<i64>; 4] = std::array::from_fn(|p| vec![0; c[p]]);
        let prim: Vec<IntMatrix> = (1..=3).map(|p| t.boundary_matrix(p)).collect();
        // neighbours of (p, i): ((q, j), primal incidence, dual incidence)
        let mut adj: [Vec<Vec<((usize, usize), i64, i64)>>; 4] =
            std::array::from_fn(|p| vec![Vec::new(); c[p]]);
        for p in 0..3 {
            let dm = dual.boundary(3 - p);
            for tau in 0..c[p + 1] {
                for sigma in 0..c[p] {
                    let a = prim[p].get(sigma, tau);
                    if a != 0 {
                        let b = dm.get(tau, sigma);
                        adj[p][sigma].push(((p + 1, tau), a, b));
                        adj[p + 1][tau].push(((p, sigma), a, b));
                    }
                }
            }
        }
        for p0 in 0..4 {
            for i0 in 0..c[p0] {
                if signs[p0][i0] != 0 {
                    continue;
                }
                signs[p0][i0] = 1;
                let mut queue = VecDeque::from([(p0, i0)]);
                while let Some((p, i)) = queue.pop_front() {
                    for &((q, j), a, b) in &adj[p][i] {
                        if signs[q][j] != 0 || b == 0 {
                            continue;
                        }
                        // a, b are ±1; whichever of σ, τ is known fixes the other
                        signs[q][j] = signs[p][i] * a * b;
                        queue.push_back((q, j));
                    }
                }
            }
        }
        PdChainMap { signs }
    }

    /// Matrix of `φ_d: C^∨_d → C^{3−d}`.
    pub fn matrix(&self, d: usize) -> IntMatrix {
        let s = &self.signs[3 - d];
        let mut m = IntMatrix::zeros(s.len(), s.len());
        for (i, &v) in s.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Fault injection: negate one sign.
    pub fn flip(&mut self, p: usize, i: usize) {
        self.signs[p][i] = -self.signs[p][i];
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareFailure {
    pub degree: usize,
    pub dual_cell: String,
    pub simplex: String,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeMatch {
    pub degree: usize,
    pub dual_homology: HomologySummary,
    pub cohomology: HomologySummary,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PdReport {
    pub squares_commute: bool,
    pub first_failure: Option<SquareFailure>,
    pub signed_bijection: bool,
    pub isometry: bool,
    pub random_chains: usize,
    pub degrees: Vec<DegreeMatch>,
    pub betti_symmetric: bool,
    pub dual_is_complex: bool,
    pub ok: bool,
}

/// Checks the duality map square by square, its ℓ¹ isometry on `samples`
/// random chains per degree, and agreement of dual homology with cohomology.
pub fn verify_pd(
    t: &Triangulation3,
    dual: &DualCellulation,
    phi: &PdChainMap,
    samples: usize,
    seed: u64,
) -> PdReport {
    let mut first_failure = None;
    'outer: for d in 1..=3 {
        let lhs = phi.matrix(d - 1).mul(dual.boundary(d));
        let rhs = t.boundary_matrix(4 - d).transpose().mul(&phi.matrix(d));
        for j in 0..lhs.cols() {
            for i in 0..lhs.rows() {
                if lhs.get(i, j) != rhs.get(i, j) {
                    first_failure = Some(SquareFailure {
                        degree: d,
                        dual_cell: format!("*{}", t.simplex_name(3 - d, j)),
                        simplex: t.simplex_name(4 - d, i),
                        lhs: lhs.get(i, j),
                        rhs: rhs.get(i, j),
                    });
                    break 'outer;
                }
            }
        }
    }
    let signed_bijection = (0..4).all(|d| {
        let m = phi.matrix(d);
        (0..m.rows()).all(|i| {
            m.row(i).iter().filter(|v| **v != 0).count() == 1
                && m.row(i).iter().all(|v| v.abs() <= 1)
        }) && (0..m.cols()).all(|j| m.column(j).iter().filter(|v| **v != 0).count() == 1)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut isometry = true;
    for d in 0..4 {
        let m = phi.matrix(d);
        for _ in 0..samples {
            let c: Vec<i64> = (0..m.cols()).map(|_| rng.gen_range(-5..=5)).collect();
            let img = m.mul_vec(&c);
            let n = |v: &[i64]| v.iter().map(|x| x.abs()).sum::<i64>();
            isometry &= n(&img) == n(&c);
        }
    }
    let primal = t.chain_complex();
    let dcx = dual.chain_complex();
    let degrees: Vec<DegreeMatch> = (0..4)
        .map(|d| {
            let dual_homology = dcx.homology(d);
            let cohomology = primal.cohomology(3 - d);
            let matches = dual_homology.betti == cohomology.betti
                && dual_homology.torsion == cohomology.torsion;
            DegreeMatch {
                degree: d,
                dual_homology,
                cohomology,
                matches,
            }
        })
        .collect();
    let betti: Vec<usize> = (0..4).map(|i| primal.homology(i).betti).collect();
    let betti_symmetric = (0..4).all(|i| betti[i] == betti[3 - i]);
    let dual_is_complex = dcx.is_complex();
    let squares_commute = first_failure.is_none();
    let ok = squares_commute
        && signed_bijection
        && isometry
        && degrees.iter().all(|m| m.matches)
        && betti_symmetric
        && dual_is_complex;
    PdReport {
        squares_commute,
        first_failure,
        signed_bijection,
        isometry,
        random_chains: samples,
        degrees,
        betti_symmetric,
        dual_is_complex,
        ok,
    }
}

#[cfg(test)]
mod tests {
    use super::super::triangulation::generators::*;
    use super::*;

    #[test]
    fn sphere_dual_is_sound() {
        let t = boundary_of_simplex();
        let d = dualize(&t).unwrap();
        assert_eq!(d.counts, [5, 10, 10, 5]);
        let phi = PdChainMap::new(&t, &d);
        let r = verify_pd(&t, &d, &phi, 20, 1);
        assert!(r.ok, "{r:?}");
    }

    #[test]
    fn three_torus_duality() {
        let t = three_torus(3);
        let d = dualize(&t).unwrap();
        let r = verify_pd(&t, &d, &PdChainMap::new(&t, &d), 10, 2);
        assert!(r.ok);
        assert_eq!(
            r.degrees
                .iter()
                .map(|m| m.dual_homology.betti)
                .collect::<Vec<_>>(),
            vec![1, 3, 3, 1]
        );
    }

    #[test]
    fn flipped_sign_is_caught() {
        let t = sphere_times_circle(3);
        let d = dualize(&t).unwrap();
        let mut phi = PdChainMap::new(&t, &d);
        assert!(verify_pd(&t, &d, &phi, 5, 1).ok);
        phi.flip(1, 4);
        let r = verify_pd(&t, &d, &phi, 5, 1);
        assert!(!r.squares_commute);
        assert!(r.first_failure.is_some());
    }
}
