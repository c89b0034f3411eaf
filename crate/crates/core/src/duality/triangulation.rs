//! Simplicial closed 3-manifolds: parsing, validation, and simplicial chains.

use crate::complex::{CellComplex2, SignedEdge};
use crate::error::{Error, Result};
use crate::homology::{ChainComplex, HomologySummary};
use crate::matrix::IntMatrix;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Sorted vertex indices of a simplex.
pub type Simplex = Vec<usize>;

/// A simplicial 3-complex validated as a closed oriented 3-manifold. Simplices
/// of each dimension are sorted lexicographically; orientations are ascending
/// vertex order, and `orientation[t]` is the sign of tetrahedron `t` in the
/// global orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation3 {
    pub name: String,
    pub labels: Vec<String>,
    /// `simplices[p]` are the `p`-simplices.
    pub simplices: [Vec<Simplex>; 4],
    pub orientation: Vec<i64>,
    index: [BTreeMap<Simplex, usize>; 4],
}

fn faces(s: &[usize]) -> impl Iterator<Item = (usize, Simplex)> + '_ {
    (0..s.len()).map(move |i| {
        let mut f = s.to_vec();
        f.remove(i);
        (i, f)
    })
}

fn sort_labels(labels: &mut [String]) {
    if labels.iter().all(|l| l.parse::<i64>().is_ok()) {
        labels.sort_by_key(|l| l.parse::<i64>().unwrap());
    } else {
        labels.sort();
    }
}

impl Triangulation3 {
    /// Builds and validates from tetrahedra given by vertex labels.
    pub fn from_tets(name: impl Into<String>, tets: &[[String; 4]]) -> Result<Self> {
        let mut labels: Vec<String> = tets
            .iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        sort_labels(&mut labels);
        let pos: BTreeMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut top = BTreeSet::new();
        for t in tets {
            let mut s: Simplex = t.iter().map(|l| pos[l.as_str()]).collect();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!(
                    "tetrahedron {t:?} repeats a vertex"
                )));
            }
            if !top.insert(s) {
                return Err(Error::InvalidInput(format!(
                    "tetrahedron {t:?} listed twice"
                )));
            }
        }
        let mut sets: [BTreeSet<Simplex>; 4] = Default::default();
        sets[3] = top;
        for p in (1..4).rev() {
            let lower: Vec<Simplex> = sets[p]
                .iter()
                .flat_map(|s| faces(s).map(|(_, f)| f))
                .collect();
            sets[p - 1].extend(lower);
        }
        let simplices: [Vec<Simplex>; 4] = sets.map(|s| s.into_iter().collect());
        let index = std::array::from_fn(|p| {
            simplices[p]
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i))
                .collect()
        });
        let mut t = Triangulation3 {
            name: name.into(),
            labels,
            simplices,
            orientation: Vec::new(),
            index,
        };
        t.check_closed()?;
        t.orientation = t.orient()?;
        t.check_links()?;
        Ok(t)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut name = None;
        let mut tets = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = |m: &str| Error::MalformedSyntax {
                line: i + 1,
                message: m.to_string(),
            };
            match toks[0] {
                "tri" if name.is_none() && toks.len() == 2 => name = Some(toks[1].to_string()),
                "tet" if name.is_some() => {
                    if toks.len() != 5 {
                        return Err(bad("expected `tet v0 v1 v2 v3`"));
                    }
                    tets.push([toks[1], toks[2], toks[3], toks[4]].map(String::from));
                }
                _ => return Err(bad("expected `tri NAME` followed by `tet` lines")),
            }
        }
        let name = name.ok_or(Error::MalformedSyntax {
            line: 1,
            message: "missing `tri NAME`".into(),
        })?;
        Triangulation3::from_tets(name, &tets)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("tri {}\n", self.name);
        for t in &self.simplices[3] {
            let l: Vec<&str> = t.iter().map(|&v| self.labels[v].as_str()).collect();
            s.push_str(&format!("tet {}\n", l.join(" ")));
        }
        s
    }

    pub fn count(&self, p: usize) -> usize {
        self.simplices[p].len()
    }

    pub fn counts(&self) -> [usize; 4] {
        std::array::from_fn(|p| self.count(p))
    }

    pub fn index_of(&self, p: usize, s: &[usize]) -> Option<usize> {
        self.index[p].get(s).copied()
    }

    pub fn simplex_name(&self, p: usize, i: usize) -> String {
        self.simplices[p][i]
            .iter()
            .map(|&v| self.labels[v].as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.count(0) as i64 - self.count(1) as i64 + self.count(2) as i64 - self.count(3) as i64
    }

    /// Simplicial boundary `∂_p: C_p → C_{p−1}`, `∂[v0…vp] = Σ (−1)^i [… v̂i …]`.
    pub fn boundary_matrix(&self, p: usize) -> IntMatrix {
        assert!((1..=3).contains(&p));
        let mut m = IntMatrix::zeros(self.count(p - 1), self.count(p));
        for (j, s) in self.simplices[p].iter().enumerate() {
            for (i, f) in faces(s) {
                m.set(self.index[p - 1][&f], j, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }

    pub fn chain_complex(&self) -> ChainComplex {
        ChainComplex {
            ranks: self.counts().to_vec(),
            boundaries: (1..=3).map(|p| self.boundary_matrix(p)).collect(),
        }
    }

    pub fn homology(&self, i: usize) -> HomologySummary {
        self.chain_complex().homology(i)
    }

    fn check_closed(&self) -> Result<()> {
        let mut cofaces = vec![0usize; self.count(2)];
        for t in &self.simplices[3] {
            for (_, f) in faces(t) {
                cofaces[self.index[2][&f]] += 1;
            }
        }
        match cofaces.iter().position(|&c| c != 2) {
            Some(i) => Err(Error::NotClosed {
                face: self.simplices[2][i].clone(),
                count: cofaces[i],
            }),
            None => Ok(()),
        }
    }

    /// Signs `ε_t` with `ε_t[t:f] + ε_t'[t':f] = 0` across every shared triangle.
    fn orient(&self) -> Result<Vec<i64>> {
        let mut by_face: Vec<Vec<(usize, i64)>> = vec![Vec::new(); self.count(2)];
        for (t, s) in self.simplices[3].iter().enumerate() {
            for (i, f) in faces(s) {
                by_face[self.index[2][&f]].push((t, if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        let mut eps = vec![0i64; self.count(3)];
        let mut tet_faces: Vec<Vec<usize>> = vec![Vec::new(); self.count(3)];
        for (f, inc) in by_face.iter().enumerate() {
            for &(t, _) in inc {
                tet_faces[t].push(f);
            }
        }
        for root in 0..self.count(3) {
            if eps[root] != 0 {
                continue;
            }
            eps[root] = 1;
            let mut queue = VecDeque::from([root]);
            while let Some(t) = queue.pop_front() {
                for &f in &tet_faces[t] {
                    let inc = &by_face[f];
                    let (mine, other) = if inc[0].0 == t {
                        (inc[0], inc[1])
                    } else {
                        (inc[1], inc[0])
                    };
                    let want = -eps[t] * mine.1 * other.1;
                    if eps[other.0] == 0 {
                        eps[other.0] = want;
                        queue.push_back(other.0);
                    } else if eps[other.0] != want {
                        return Err(Error::NonOrientable);
                    }
                }
            }
        }
        Ok(eps)
    }

    fn check_links(&self) -> Result<()> {
        let n = self.count(0);
        let mut lv: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        let mut le: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        let mut lf = vec![0usize; n];
        for e in &self.simplices[1] {
            lv[e[0]].insert(e[1]);
            lv[e[1]].insert(e[0]);
        }
        for f in &self.simplices[2] {
            for (i, rest) in faces(f) {
                le[f[i]].push((rest[0], rest[1]));
            }
        }
        for t in &self.simplices[3] {
            for &v in t {
                lf[v] += 1;
            }
        }
        for v in 0..n {
            let chi = lv[v].len() as i64 - le[v].len() as i64 + lf[v] as i64;
            let bad = |reason: String| Error::BadVertexLink {
                vertex: self.labels[v].clone(),
                reason,
            };
            if chi != 2 {
                return Err(bad(format!("Euler characteristic {chi}")));
            }
            // connectivity by union-find over link edges
            let verts: Vec<usize> = lv[v].iter().copied().collect();
            let pos: BTreeMap<usize, usize> =
                verts.iter().enumerate().map(|(i, &w)| (w, i)).collect();
            let mut parent: Vec<usize> = (0..verts.len()).collect();
            fn root(p: &mut [usize], mut i: usize) -> usize {
                while p[i] != i {
                    p[i] = p[p[i]];
                    i = p[i];
                }
                i
            }
            for &(a, b) in &le[v] {
                let (ra, rb) = (root(&mut parent, pos[&a]), root(&mut parent, pos[&b]));
                parent[ra] = rb;
            }
            let comps = (0..verts.len())
                .filter(|&i| root(&mut parent, i) == i)
                .count();
            if comps != 1 {
                return Err(bad(format!("{comps} components")));
            }
        }
        Ok(())
    }

    /// Name of a primal edge as used by permutation reps: `a_b` with `a < b`.
    pub fn edge_id(&self, i: usize) -> String {
        let e = &self.simplices[1][i];
        format!("{}_{}", self.labels[e[0]], self.labels[e[1]])
    }

    /// The 2-skeleton as a cell complex. Edges run from the lower to the higher
    /// vertex; triangle `[a,b,c]` has word `ab, bc, -ac`.
    pub fn two_skeleton(&self) -> CellComplex2 {
        let mut x = CellComplex2::empty(format!("{}_2skel", self.name));
        for l in &self.labels {
            x.add_vertex(l.clone()).expect("distinct labels");
        }
        for (i, e) in self.simplices[1].iter().enumerate() {
            x.add_edge(self.edge_id(i), e[0], e[1])
                .expect("distinct edges");
        }
        for (i, f) in self.simplices[2].iter().enumerate() {
            let e = |a: usize, b: usize| self.index[1][&vec![f[a], f[b]]];
            let word = vec![
                SignedEdge::fwd(e(0, 1)),
                SignedEdge::fwd(e(1, 2)),
                SignedEdge::rev(e(0, 2)),
            ];
            x.add_cell(self.simplex_name(2, i), word)
                .expect("closed triangle");
        }
        x
    }
}

/// Standard generators of closed orientable triangulations.
pub mod generators {
    use super::*;

    fn build(name: &str, tets: Vec<[usize; 4]>) -> Triangulation3 {
        let tets: Vec<[String; 4]> = tets.into_iter().map(|t| t.map(|v| v.to_string())).collect();
        Triangulation3::from_tets(name, &tets)
            .expect("generator output is a closed oriented 3-manifold")
    }

    /// `∂Δ^{n}` for `n = 4`: the 3-sphere with 5 tetrahedra.
    pub fn boundary_of_simplex() -> Triangulation3 {
        let tets = (0..5)
            .map(|skip| {
                let v: Vec<usize> = (0..5).filter(|&i| i != skip).collect();
                [v[0], v[1], v[2], v[3]]
            })
            .collect();
        build("boundary_simplex4", tets)
    }

    /// `S² × S¹` as `∂Δ³ × C_n` (n ≥ 3 layers), each prism split by the
    /// staircase rule so that neighbouring prisms agree on shared faces.
    pub fn sphere_times_circle(n: usize) -> Triangulation3 {
        assert!(n >= 3);
        let v = |layer: usize, x: usize| (layer % n) * 4 + x;
        let mut tets = Vec::new();
        for j in 0..n {
            for skip in 0..4 {
                let tri: Vec<usize> = (0..4).filter(|&i| i != skip).collect();
                let (a, b, c) = (tri[0], tri[1], tri[2]);
                tets.push([v(j, a), v(j, b), v(j, c), v(j + 1, c)]);
                tets.push([v(j, a), v(j, b), v(j + 1, b), v(j + 1, c)]);
                tets.push([v(j, a), v(j + 1, a), v(j + 1, b), v(j + 1, c)]);
            }
        }
        build(&format!("s2xs1_{n}"), tets)
    }

    /// Three-torus: the `n³` cube grid (n ≥ 3) with each cube cut into six
    /// tetrahedra along its main diagonal.
    pub fn three_torus(n: usize) -> Triangulation3 {
        assert!(n >= 3);
        let v = |p: [usize; 3]| (p[0] % n) * n * n + (p[1] % n) * n + (p[2] % n);
        let perms = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let mut tets = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for p in perms {
                        let mut at = [i, j, k];
                        let mut t = [v(at), 0, 0, 0];
                        for (s, &axis) in p.iter().enumerate() {
                            at[axis] += 1;
                            t[s + 1] = v(at);
                        }
                        tets.push(t);
                    }
                }
            }
        }
        build(&format!("three_torus_{n}"), tets)
    }
}

#[cfg(test)]
mod tests {
    use super::generators::*;
    use super::*;

    #[test]
    fn sphere_counts_and_homology() {
        let t = boundary_of_simplex();
        assert_eq!(t.counts(), [5, 10, 10, 5]);
        assert_eq!(t.euler_characteristic(), 0);
        assert_eq!(t.homology(3).betti, 1);
        assert!(t.homology(1).is_trivial());
        assert!(t.chain_complex().is_complex());
    }

    #[test]
    fn product_and_torus() {
        let s = sphere_times_circle(3);
        assert_eq!(s.count(3), 36);
        assert_eq!(
            (0..4).map(|i| s.homology(i).betti).collect::<Vec<_>>(),
            vec![1, 1, 1, 1]
        );
        let t = three_torus(3);
        assert_eq!(t.counts(), [27, 189, 324, 162]);
        assert_eq!(
            (0..4).map(|i| t.homology(i).betti).collect::<Vec<_>>(),
            vec![1, 3, 3, 1]
        );
    }

    #[test]
    fn rejects_bad_inputs() {
        let text = boundary_of_simplex().to_text();
        let missing: String = text.lines().take(5).map(|l| format!("{l}\n")).collect();
        assert!(matches!(
            Triangulation3::parse(&missing),
            Err(Error::NotClosed { .. })
        ));
        assert!(matches!(
            Triangulation3::parse("tet 1 2 3 4\n"),
            Err(Error::MalformedSyntax { .. })
        ));
        // two spheres sharing a single vertex: closed, orientable, bad link
        let mut tets = Vec::new();
        for off in [0usize, 4] {
            for skip in 0..5 {
                let v: Vec<usize> = (0..5)
                    .filter(|&i| i != skip)
                    .map(|i| if i == 0 { 0 } else { i + off })
                    .collect();
                tets.push([v[0], v[1], v[2], v[3]].map(|x| x.to_string()));
            }
        }
        assert!(matches!(
            Triangulation3::from_tets("wedge", &tets),
            Err(Error::BadVertexLink { .. })
        ));
    }

    #[test]
    fn labels_sort_numerically() {
        let tets: Vec<[String; 4]> = (0..5)
            .map(|skip| {
                let v: Vec<String> = [1, 2, 10, 20, 3]
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, x)| x.to_string())
                    .collect();
                [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]
            })
            .collect();
        let t = Triangulation3::from_tets("s", &tets).unwrap();
        assert_eq!(t.labels, vec!["1", "2", "3", "10", "20"]);
    }
}
