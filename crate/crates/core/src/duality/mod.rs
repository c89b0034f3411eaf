//! Triangulated closed 3-manifolds, their dual cellulations, duality checks,
//! and codimension-2 fillings.

mod dual;
mod triangulation;

pub use dual::{
    dualize, verify_pd, DegreeMatch, DualCellulation, PdChainMap, PdReport, SquareFailure,
};
pub use triangulation::{generators, Simplex, Triangulation3};

use crate::chain::Chain;
use crate::complex::{CellComplex2, SignedEdge};
use crate::covers::PermRep;
use crate::error::{Error, Result};
use crate::filling::{fill, FillProblem, FillResult, Ring};
use std::str::FromStr;

/// Which 2-skeleton carries a codimension-2 filling problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Skeleton {
    Primal,
    Dual,
}

impl FromStr for Skeleton {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "primal" => Ok(Skeleton::Primal),
            "dual" => Ok(Skeleton::Dual),
            _ => Err(Error::InvalidInput(format!("unknown skeleton {s:?}"))),
        }
    }
}

/// The dual 2-skeleton: vertices `*t` for tetrahedra, edges `*f` for
/// triangles, 2-cells `*e` for edges, with words read off the dual boundary.
pub fn dual_two_skeleton(t: &Triangulation3, dual: &DualCellulation) -> Result<CellComplex2> {
    let mut x = CellComplex2::empty(format!("{}_dual2", t.name));
    for i in 0..t.count(3) {
        x.add_vertex(format!("*{}", t.simplex_name(3, i)))?;
    }
    let d1 = dual.boundary(1);
    for f in 0..t.count(2) {
        let col = d1.column(f);
        let src = col.iter().position(|&v| v == -1);
        let dst = col.iter().position(|&v| v == 1);
        let (Some(src), Some(dst)) = (src, dst) else {
            return Err(Error::InvalidInput(format!(
                "dual edge *{} is not an arc",
                t.simplex_name(2, f)
            )));
        };
        x.add_edge(format!("*{}", t.simplex_name(2, f)), src, dst)?;
    }
    let d2 = dual.boundary(2);
    for e in 0..t.count(1) {
        let mut rest: Vec<SignedEdge> = d2
            .column(e)
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(f, &v)| {
                if v > 0 {
                    SignedEdge::fwd(f)
                } else {
                    SignedEdge::rev(f)
                }
            })
            .collect();
        let mut word = vec![rest.remove(0)];
        while !rest.is_empty() {
            let at = x.head(*word.last().unwrap());
            let Some(k) = rest.iter().position(|s| x.tail(*s) == at) else {
                return Err(Error::InvalidInput(format!(
                    "dual cell *{} is not a polygon",
                    t.simplex_name(1, e)
                )));
            };
            word.push(rest.remove(k));
        }
        x.add_cell(format!("*{}", t.simplex_name(1, e)), word)?;
    }
    Ok(x)
}

/// Fills a 1-cycle of the chosen 2-skeleton by 2-chains of that skeleton.
pub fn fill_codim2(
    t: &Triangulation3,
    skeleton: Skeleton,
    z: Chain,
    ring: Ring,
) -> Result<FillResult> {
    let x = match skeleton {
        Skeleton::Primal => t.two_skeleton(),
        Skeleton::Dual => dual_two_skeleton(t, &dualize(t)?)?,
    };
    fill(&FillProblem::new(&x, z, ring))
}

/// Pulls a triangulation back along a permutation rep on primal edges (ids
/// `a_b`). The rep must have trivial monodromy around every triangle. Lifted
/// vertices are named `label.sheet` with 1-based sheets.
pub fn lift_triangulation(t: &Triangulation3, rep: &PermRep) -> Result<Triangulation3> {
    let x = t.two_skeleton();
    rep.check_monodromy(&x)?;
    let n = rep.degree;
    let lift = |v: usize, s: usize| format!("{}.{}", t.labels[v], s + 1);
    let mut tets = Vec::with_capacity(t.count(3) * n);
    for tet in &t.simplices[3] {
        for s in 0..n {
            let mut out: [String; 4] = Default::default();
            out[0] = lift(tet[0], s);
            for k in 1..4 {
                let e = t.index_of(1, &[tet[0], tet[k]]).unwrap();
                out[k] = lift(tet[k], rep.act(&t.edge_id(e), s));
            }
            tets.push(out);
        }
    }
    Triangulation3::from_tets(format!("{}_{}", t.name, rep.name), &tets)
}

/// A `ℤ/k` rep of `S² × S¹` (from [`generators::sphere_times_circle`]) that
/// shifts sheets on edges crossing from the last layer back to the first.
pub fn circle_rep(t: &Triangulation3, layers: usize, k: usize) -> Result<PermRep> {
    let mut rep = PermRep::identity(format!("z{k}"), k);
    let per_layer = t.count(0) / layers;
    for (i, e) in t.simplices[1].iter().enumerate() {
        let layer = |v: usize| t.labels[v].parse::<usize>().map(|l| l / per_layer);
        if let (Ok(0), Ok(l)) = (layer(e[0]), layer(e[1])) {
            if l == layers - 1 {
                rep.set(&t.edge_id(i), (0..k).map(|s| (s + k - 1) % k).collect())?;
            }
        }
    }
    Ok(rep)
}
