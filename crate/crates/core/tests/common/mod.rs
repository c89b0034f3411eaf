#![allow(dead_code)]

use cellfill::complex::{CellComplex2, SignedEdge};
use cellfill::matrix::IntMatrix;
use rand::Rng;

/// Random complex with at most `v` vertices, `e` edges, `c` 2-cells and words
/// of length at most `len`. Cell words are closed random walks.
pub fn random_complex(
    rng: &mut impl Rng,
    v: usize,
    e: usize,
    c: usize,
    len: usize,
) -> CellComplex2 {
    let nv = rng.gen_range(1..=v);
    let ne = rng.gen_range(1..=e);
    let mut x = CellComplex2::empty("random");
    for i in 0..nv {
        x.add_vertex(format!("v{i}")).unwrap();
    }
    for i in 0..ne {
        let (a, b) = (rng.gen_range(0..nv), rng.gen_range(0..nv));
        x.add_edge(format!("e{i}"), a, b).unwrap();
    }
    let adj = x.adjacency();
    let target = rng.gen_range(1..=c);
    let mut tries = 0;
    while x.num_cells() < target && tries < 200 {
        tries += 1;
        let start = rng.gen_range(0..nv);
        let l = rng.gen_range(1..=len);
        let mut at = start;
        let mut word: Vec<SignedEdge> = Vec::new();
        for _ in 0..l {
            if adj[at].is_empty() {
                break;
            }
            let (w, se) = adj[at][rng.gen_range(0..adj[at].len())];
            word.push(se);
            at = w;
        }
        if !word.is_empty() && at == start {
            let id = format!("c{}", x.num_cells());
            x.add_cell(id, word).unwrap();
        }
    }
    x
}

/// Minimum ℓ¹ norm of `A ∈ [−k, k]^n` with `M·A = z`, by enumeration.
pub fn brute_fill(m: &IntMatrix, z: &[i64], k: i64) -> Option<i64> {
    let n = m.cols();
    let mut a = vec![-k; n];
    let mut best: Option<i64> = None;
    loop {
        if m.mul_vec(&a) == z {
            let norm = a.iter().map(|x| x.abs()).sum();
            best = Some(best.map_or(norm, |b: i64| b.min(norm)));
        }
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            if a[i] < k {
                a[i] += 1;
                break;
            }
            a[i] = -k;
            i += 1;
        }
    }
}
