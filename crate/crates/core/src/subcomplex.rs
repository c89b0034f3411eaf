//! Subcomplexes given by cell index sets, and cellular neighborhoods.

use crate::complex::CellComplex2;
use std::collections::{BTreeSet, VecDeque};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Subcomplex {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
    pub cells: BTreeSet<usize>,
}

impl Subcomplex {
    pub fn full(x: &CellComplex2) -> Self {
        Subcomplex {
            vertices: (0..x.num_vertices()).collect(),
            edges: (0..x.num_edges()).collect(),
            cells: (0..x.num_cells()).collect(),
        }
    }

    /// Full subcomplex spanned by a vertex set: every edge with both endpoints
    /// inside, every 2-cell with all boundary vertices inside.
    pub fn spanned(x: &CellComplex2, vertices: impl IntoIterator<Item = usize>) -> Self {
        let vertices: BTreeSet<usize> = vertices.into_iter().collect();
        let edges = (0..x.num_edges())
            .filter(|&e| {
                let ed = &x.edges()[e];
                vertices.contains(&ed.src) && vertices.contains(&ed.dst)
            })
            .collect();
        let cells = (0..x.num_cells())
            .filter(|&c| {
                x.cells()[c]
                    .word
                    .iter()
                    .all(|s| vertices.contains(&x.tail(*s)))
            })
            .collect();
        Subcomplex {
            vertices,
            edges,
            cells,
        }
    }

    pub fn counts(&self) -> [usize; 3] {
        [self.vertices.len(), self.edges.len(), self.cells.len()]
    }

    /// Closed under taking faces.
    pub fn is_closed(&self, x: &CellComplex2) -> bool {
        self.edges.iter().all(|&e| {
            let ed = &x.edges()[e];
            self.vertices.contains(&ed.src) && self.vertices.contains(&ed.dst)
        }) && self.cells.iter().all(|&c| {
            x.cells()[c]
                .word
                .iter()
                .all(|s| self.edges.contains(&s.edge))
        })
    }

    /// Graph distances from `from` inside this subcomplex's 1-skeleton.
    pub fn distances(&self, x: &CellComplex2, from: &[usize]) -> Vec<Option<usize>> {
        bfs(x, from, |e| self.edges.contains(&e))
    }

    pub fn is_connected(&self, x: &CellComplex2) -> bool {
        let Some(&v0) = self.vertices.iter().next() else {
            return true;
        };
        let d = self.distances(x, &[v0]);
        self.vertices.iter().all(|&v| d[v].is_some())
    }
}

fn bfs(x: &CellComplex2, from: &[usize], allowed: impl Fn(usize) -> bool) -> Vec<Option<usize>> {
    let adj = x.adjacency();
    let mut dist = vec![None; x.num_vertices()];
    let mut queue = VecDeque::new();
    for &s in from {
        if dist[s].is_none() {
            dist[s] = Some(0);
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &(w, se) in &adj[u] {
            if allowed(se.edge) && dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Unit-length graph distances in the whole 1-skeleton from a seed set.
pub fn vertex_distances(x: &CellComplex2, seeds: &[usize]) -> Vec<Option<usize>> {
    bfs(x, seeds, |_| true)
}

/// Cellular radius-`r` neighborhood of a vertex set.
pub fn cellular_neighborhood(x: &CellComplex2, seeds: &[usize], r: usize) -> Subcomplex {
    let d = vertex_distances(x, seeds);
    Subcomplex::spanned(
        x,
        (0..x.num_vertices()).filter(|&v| d[v].is_some_and(|k| k <= r)),
    )
}
