//! Integral homology via Smith normal form.

use crate::complex::CellComplex2;
use crate::matrix::IntMatrix;
use crate::snf::invariant_factors;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

/// A free chain complex `C_n → … → C_0` given by its boundary matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    /// `ranks[i]` = rank of `C_i`.
    pub ranks: Vec<usize>,
    /// `boundaries[i]` = `∂_{i+1}: C_{i+1} → C_i`.
    pub boundaries: Vec<IntMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl HomologySummary {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Homology at a module of rank `dim` with incoming map `inc` and outgoing map `out`.
pub fn homology_at(
    degree: usize,
    dim: usize,
    inc: Option<&IntMatrix>,
    out: Option<&IntMatrix>,
) -> HomologySummary {
    let in_factors = inc.map(invariant_factors).unwrap_or_default();
    let out_rank = out.map(|m| invariant_factors(m).len()).unwrap_or(0);
    let torsion = in_factors
        .iter()
        .filter(|d| !d.is_one())
        .map(|d: &BigInt| d.to_u64().expect("torsion coefficient fits in u64"))
        .collect();
    HomologySummary {
        degree,
        betti: dim - out_rank - in_factors.len(),
        torsion,
    }
}

impl ChainComplex {
    pub fn top_degree(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn boundary(&self, i: usize) -> Option<&IntMatrix> {
        if i == 0 {
            None
        } else {
            self.boundaries.get(i - 1)
        }
    }

    pub fn homology(&self, i: usize) -> HomologySummary {
        let dim = self.ranks.get(i).copied().unwrap_or(0);
        homology_at(i, dim, self.boundary(i + 1), self.boundary(i))
    }

    pub fn all_homology(&self) -> Vec<HomologySummary> {
        (0..self.ranks.len()).map(|i| self.homology(i)).collect()
    }

    /// `H^i` computed from the coboundary maps `δ^i = ∂_{i+1}^T`.
    pub fn cohomology(&self, i: usize) -> HomologySummary {
        let dim = self.ranks.get(i).copied().unwrap_or(0);
        let inc = self.boundary(i).map(IntMatrix::transpose);
        let out = self.boundary(i + 1).map(IntMatrix::transpose);
        homology_at(i, dim, inc.as_ref(), out.as_ref())
    }

    /// Every composite `∂_i ∂_{i+1}` vanishes.
    pub fn is_complex(&self) -> bool {
        self.boundaries
            .windows(2)
            .all(|w| w[0].mul(&w[1]).is_zero())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

impl CellComplex2 {
    pub fn chain_complex(&self) -> ChainComplex {
        ChainComplex {
            ranks: vec![self.num_vertices(), self.num_edges(), self.num_cells()],
            boundaries: vec![self.boundary_matrix(1), self.boundary_matrix(2)],
        }
    }

    pub fn homology(&self, i: usize) -> HomologySummary {
        self.chain_complex().homology(i)
    }

    pub fn betti(&self, i: usize) -> usize {
        self.homology(i).betti
    }
}

#[cfg(test)]
mod tests {
    use crate::complex::fixtures::*;
    use crate::complex::SignedEdge;

    #[test]
    fn standard_surfaces() {
        let h = rp2().homology(1);
        assert_eq!((h.betti, h.torsion.clone()), (0, vec![2]));
        assert_eq!(
            serde_json::to_string(&h).unwrap(),
            r#"{"degree":1,"betti":0,"torsion":[2]}"#
        );
        let g = genus2().homology(1);
        assert_eq!((g.betti, g.torsion.len()), (4, 0));
        assert_eq!(torus().homology(1).betti, 2);
        assert_eq!(torus().homology(2).betti, 1);
        let s = sphere();
        assert!(s.homology(1).is_trivial());
        assert_eq!(s.homology(2).betti, 1);
        assert_eq!(s.homology(0).betti, 1);
    }

    #[test]
    fn attaching_kills_h1() {
        let t = torus();
        let x = t
            .attach_cells(&[vec![SignedEdge::fwd(0)], vec![SignedEdge::fwd(1)]])
            .unwrap();
        assert!(x.homology(1).is_trivial());
        let r = rp2().attach_cells(&[vec![SignedEdge::fwd(0)]]).unwrap();
        assert!(r.homology(1).is_trivial());
    }

    #[test]
    fn cohomology_shifts_torsion() {
        let c = rp2().chain_complex();
        assert_eq!(c.cohomology(1).betti, 0);
        assert!(c.cohomology(1).torsion.is_empty());
        assert_eq!(c.cohomology(2).torsion, vec![2]);
    }

    #[test]
    fn components_counted() {
        let x =
            crate::complex::parse_complex("complex two\nvertices: a b c\nedge e a b\n").unwrap();
        assert_eq!(x.homology(0).betti, 2);
        let empty = crate::complex::CellComplex2::empty("nothing");
        assert!(empty.homology(0).is_trivial());
    }
}
