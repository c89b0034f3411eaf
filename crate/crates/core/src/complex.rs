//! Finite CW 2-complexes with explicit vertices and edge-path attaching words.
//!
//! Basis order in every dimension is declaration order; all matrices and
//! norms in the crate are relative to it.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedEdge {
    pub edge: usize,
    pub forward: bool,
}

impl SignedEdge {
    pub fn fwd(edge: usize) -> Self {
        SignedEdge {
            edge,
            forward: true,
        }
    }

    pub fn rev(edge: usize) -> Self {
        SignedEdge {
            edge,
            forward: false,
        }
    }

    pub fn inverse(self) -> Self {
        SignedEdge {
            edge: self.edge,
            forward: !self.forward,
        }
    }

    pub fn sign(self) -> i64 {
        if self.forward {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCell {
    pub id: String,
    pub word: Vec<SignedEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplex2 {
    pub name: String,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    cells: Vec<TwoCell>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    cell_index: HashMap<String, usize>,
}

/// Letters of a word written as edge ids, `-id` for reversal.
pub fn parse_word(tokens: &[&str], edge_index: &HashMap<String, usize>) -> Result<Vec<SignedEdge>> {
    tokens
        .iter()
        .map(|t| {
            let (name, forward) = match t.strip_prefix('-') {
                Some(rest) => (rest, false),
                None => (*t, true),
            };
            edge_index
                .get(name)
                .map(|&edge| SignedEdge { edge, forward })
                .ok_or_else(|| Error::DanglingReference {
                    kind: "edge",
                    id: name.to_string(),
                })
        })
        .collect()
}

impl CellComplex2 {
    pub fn empty(name: impl Into<String>) -> Self {
        CellComplex2 {
            name: name.into(),
            vertices: Vec::new(),
            edges: Vec::new(),
            cells: Vec::new(),
            vertex_index: HashMap::new(),
            edge_index: HashMap::new(),
            cell_index: HashMap::new(),
        }
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> Result<usize> {
        let id = id.into();
        if self.vertex_index.contains_key(&id) {
            return Err(Error::InvalidInput(format!("duplicate vertex id {id:?}")));
        }
        let k = self.vertices.len();
        self.vertex_index.insert(id.clone(), k);
        self.vertices.push(id);
        Ok(k)
    }

    pub fn add_edge(&mut self, id: impl Into<String>, src: usize, dst: usize) -> Result<usize> {
        let id = id.into();
        if self.edge_index.contains_key(&id) {
            return Err(Error::InvalidInput(format!("duplicate edge id {id:?}")));
        }
        if src >= self.vertices.len() || dst >= self.vertices.len() {
            return Err(Error::DanglingReference {
                kind: "vertex",
                id: format!("#{}", src.max(dst)),
            });
        }
        let k = self.edges.len();
        self.edge_index.insert(id.clone(), k);
        self.edges.push(Edge { id, src, dst });
        Ok(k)
    }

    /// Appends a 2-cell after checking that its word is a closed edge path.
    pub fn add_cell(&mut self, id: impl Into<String>, word: Vec<SignedEdge>) -> Result<usize> {
        let id = id.into();
        if self.cell_index.contains_key(&id) {
            return Err(Error::InvalidInput(format!("duplicate cell id {id:?}")));
        }
        if word.iter().any(|s| s.edge >= self.edges.len()) {
            return Err(Error::DanglingReference {
                kind: "edge",
                id: format!("in cell {id}"),
            });
        }
        if !self.is_closed_path(&word) {
            return Err(Error::OpenBoundaryWord { cell: id });
        }
        let k = self.cells.len();
        self.cell_index.insert(id.clone(), k);
        self.cells.push(TwoCell { id, word });
        Ok(k)
    }

    pub fn tail(&self, s: SignedEdge) -> usize {
        let e = &self.edges[s.edge];
        if s.forward {
            e.src
        } else {
            e.dst
        }
    }

    pub fn head(&self, s: SignedEdge) -> usize {
        let e = &self.edges[s.edge];
        if s.forward {
            e.dst
        } else {
            e.src
        }
    }

    /// Nonempty, head-to-tail, and cyclically closed.
    pub fn is_closed_path(&self, word: &[SignedEdge]) -> bool {
        if word.is_empty() {
            return false;
        }
        (0..word.len()).all(|i| self.head(word[i]) == self.tail(word[(i + 1) % word.len()]))
    }

    pub fn is_path(&self, start: usize, word: &[SignedEdge]) -> bool {
        let mut at = start;
        for &s in word {
            if self.tail(s) != at {
                return false;
            }
            at = self.head(s);
        }
        true
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn counts(&self) -> [usize; 3] {
        [self.num_vertices(), self.num_edges(), self.num_cells()]
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn cells(&self) -> &[TwoCell] {
        &self.cells
    }

    pub fn vertex_id(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_id(&self, name: &str) -> Option<usize> {
        self.edge_index.get(name).copied()
    }

    pub fn cell_id(&self, name: &str) -> Option<usize> {
        self.cell_index.get(name).copied()
    }

    pub fn edge_index(&self) -> &HashMap<String, usize> {
        &self.edge_index
    }

    /// Cell id by (dimension, index).
    pub fn cell_name(&self, dim: usize, idx: usize) -> &str {
        match dim {
            0 => &self.vertices[idx],
            1 => &self.edges[idx].id,
            2 => &self.cells[idx].id,
            _ => panic!("2-complexes have no cells in dimension {dim}"),
        }
    }

    pub fn index_of(&self, dim: usize, name: &str) -> Option<usize> {
        match dim {
            0 => self.vertex_id(name),
            1 => self.edge_id(name),
            2 => self.cell_id(name),
            _ => None,
        }
    }

    pub fn num_cells_in(&self, dim: usize) -> usize {
        match dim {
            0 => self.num_vertices(),
            1 => self.num_edges(),
            2 => self.num_cells(),
            _ => 0,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_cells() as i64
    }

    /// Signed occurrence count of each edge in a word.
    pub fn word_chain(&self, word: &[SignedEdge]) -> Vec<i64> {
        let mut v = vec![0; self.num_edges()];
        for s in word {
            v[s.edge] += s.sign();
        }
        v
    }

    /// `∂_1` (vertices × edges) or `∂_2` (edges × 2-cells). Degree 0 and >2
    /// give the empty maps of the augmented-free complex.
    pub fn boundary_matrix(&self, degree: usize) -> IntMatrix {
        match degree {
            1 => {
                let mut m = IntMatrix::zeros(self.num_vertices(), self.num_edges());
                for (j, e) in self.edges.iter().enumerate() {
                    m.add_to(e.dst, j, 1);
                    m.add_to(e.src, j, -1);
                }
                m
            }
            2 => {
                let mut m = IntMatrix::zeros(self.num_edges(), self.num_cells());
                for (j, c) in self.cells.iter().enumerate() {
                    for s in &c.word {
                        m.add_to(s.edge, j, s.sign());
                    }
                }
                m
            }
            0 => IntMatrix::zeros(0, self.num_vertices()),
            _ => IntMatrix::zeros(self.num_cells_in(degree - 1), 0),
        }
    }

    /// New complex with the extra 2-cells appended to the basis.
    pub fn attach_cells(&self, words: &[Vec<SignedEdge>]) -> Result<CellComplex2> {
        let mut out = self.clone();
        let mut next = self.cells.len();
        for w in words {
            let mut id = format!("D{next}");
            while out.cell_index.contains_key(&id) {
                next += 1;
                id = format!("D{next}");
            }
            out.add_cell(id, w.clone())?;
            next += 1;
        }
        Ok(out)
    }

    /// Presentation 2-complex: one vertex, one loop per generator, one 2-cell
    /// per relator.
    pub fn from_presentation(
        name: &str,
        gens: &[&str],
        relators: &[Vec<&str>],
    ) -> Result<CellComplex2> {
        let mut x = CellComplex2::empty(name);
        x.add_vertex("v")?;
        for g in gens {
            x.add_edge(*g, 0, 0)?;
        }
        for (i, r) in relators.iter().enumerate() {
            let word = parse_word(r, &x.edge_index).map_err(|e| match e {
                Error::DanglingReference { id, .. } => Error::UnknownGenerator(id),
                other => other,
            })?;
            x.add_cell(format!("r{}", i + 1), word)?;
        }
        Ok(x)
    }

    /// Adjacency list of the 1-skeleton: (neighbour, signed edge leaving).
    pub fn adjacency(&self) -> Vec<Vec<(usize, SignedEdge)>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for (j, e) in self.edges.iter().enumerate() {
            adj[e.src].push((e.dst, SignedEdge::fwd(j)));
            adj[e.dst].push((e.src, SignedEdge::rev(j)));
        }
        for a in &mut adj {
            a.sort_by_key(|(_, s)| (s.edge, !s.forward));
        }
        adj
    }

    pub fn word_to_string(&self, word: &[SignedEdge]) -> String {
        word.iter()
            .map(|s| {
                let id = &self.edges[s.edge].id;
                if s.forward {
                    id.clone()
                } else {
                    format!("-{id}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Maximum boundary-word length over 2-cells (0 for a graph).
    pub fn max_word_length(&self) -> usize {
        self.cells.iter().map(|c| c.word.len()).max().unwrap_or(0)
    }
}

fn malformed(line: usize, message: impl Into<String>) -> Error {
    Error::MalformedSyntax {
        line,
        message: message.into(),
    }
}

/// Parse the `complex` text format, or a `presentation` document.
pub fn parse_complex(text: &str) -> Result<CellComplex2> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| malformed(1, "empty document"))?;
    let mut head = header.split_whitespace();
    let kind = head.next().unwrap_or("");
    let name = head
        .next()
        .ok_or_else(|| malformed(hl, "missing name"))?
        .to_string();
    if head.next().is_some() {
        return Err(malformed(hl, "trailing tokens in header"));
    }
    match kind {
        "complex" => parse_complex_body(name, lines),
        "presentation" => parse_presentation_body(name, lines),
        other => Err(malformed(hl, format!("unknown document kind {other:?}"))),
    }
}

fn parse_complex_body<'a>(
    name: String,
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<CellComplex2> {
    let mut x = CellComplex2::empty(name);
    let mut seen_vertices = false;
    for (ln, line) in lines {
        if let Some(rest) = line.strip_prefix("vertices:") {
            if seen_vertices {
                return Err(malformed(ln, "duplicate vertices line"));
            }
            seen_vertices = true;
            for v in rest.split_whitespace() {
                x.add_vertex(v).map_err(|e| malformed(ln, e.to_string()))?;
            }
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "edge" => {
                if toks.len() != 4 {
                    return Err(malformed(ln, "expected `edge ID SRC DST`"));
                }
                let s = x
                    .vertex_id(toks[2])
                    .ok_or_else(|| Error::DanglingReference {
                        kind: "vertex",
                        id: toks[2].into(),
                    })?;
                let d = x
                    .vertex_id(toks[3])
                    .ok_or_else(|| Error::DanglingReference {
                        kind: "vertex",
                        id: toks[3].into(),
                    })?;
                x.add_edge(toks[1], s, d)
                    .map_err(|e| malformed(ln, e.to_string()))?;
            }
            "cell" => {
                if toks.len() < 3 {
                    return Err(malformed(ln, "expected `cell ID W1 W2 ...`"));
                }
                let word = parse_word(&toks[2..], &x.edge_index)?;
                match x.add_cell(toks[1], word) {
                    Err(Error::InvalidInput(m)) => return Err(malformed(ln, m)),
                    other => {
                        other?;
                    }
                }
            }
            other => return Err(malformed(ln, format!("unknown directive {other:?}"))),
        }
    }
    Ok(x)
}

fn parse_presentation_body<'a>(
    name: String,
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<CellComplex2> {
    let mut gens: Option<Vec<String>> = None;
    let mut rels: Vec<Vec<String>> = Vec::new();
    for (ln, line) in lines {
        if let Some(rest) = line.strip_prefix("gens:") {
            if gens.is_some() {
                return Err(malformed(ln, "duplicate gens line"));
            }
            gens = Some(rest.split_whitespace().map(String::from).collect());
        } else if let Some(rest) = line.strip_prefix("rel:") {
            let r: Vec<String> = rest.split_whitespace().map(String::from).collect();
            if r.is_empty() {
                return Err(malformed(ln, "empty relator"));
            }
            rels.push(r);
        } else {
            return Err(malformed(ln, format!("unknown directive {line:?}")));
        }
    }
    let gens = gens.ok_or_else(|| malformed(0, "missing gens line"))?;
    let g: Vec<&str> = gens.iter().map(String::as_str).collect();
    let r: Vec<Vec<&str>> = rels
        .iter()
        .map(|r| r.iter().map(String::as_str).collect())
        .collect();
    CellComplex2::from_presentation(&name, &g, &r)
}

impl fmt::Display for CellComplex2 {
    /// Writes the `complex` text format; parsing the output gives back an equal complex.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "complex {}", self.name)?;
        writeln!(f, "vertices: {}", self.vertices.join(" "))?;
        for e in &self.edges {
            writeln!(
                f,
                "edge {} {} {}",
                e.id, self.vertices[e.src], self.vertices[e.dst]
            )?;
        }
        for c in &self.cells {
            writeln!(f, "cell {} {}", c.id, self.word_to_string(&c.word))?;
        }
        Ok(())
    }
}

/// Standard fixtures used across tests, examples and the CLI.
pub mod fixtures {
    use super::*;

    /// One vertex, loop `e`, cells `D1 = e` and `D2 = -e`.
    pub fn sphere() -> CellComplex2 {
        parse_complex("complex sphere\nvertices: v\nedge e v v\ncell D1 e\ncell D2 -e\n").unwrap()
    }

    pub fn rp2() -> CellComplex2 {
        parse_complex("complex rp2\nvertices: v\nedge a v v\ncell D a a\n").unwrap()
    }

    pub fn torus() -> CellComplex2 {
        parse_complex("complex torus\nvertices: v\nedge a v v\nedge b v v\ncell D a b -a -b\n")
            .unwrap()
    }

    pub fn genus2() -> CellComplex2 {
        CellComplex2::from_presentation(
            "genus2",
            &["a", "b", "c", "d"],
            &[vec!["a", "b", "-a", "-b", "c", "d", "-c", "-d"]],
        )
        .unwrap()
    }

    /// Square-grid torus with `n × n` vertices; horizontal edges `h_i_j`,
    /// vertical edges `u_i_j`, squares `s_i_j`.
    pub fn grid_torus(n: usize) -> CellComplex2 {
        assert!(n >= 1);
        let mut x = CellComplex2::empty(format!("grid_torus_{n}"));
        let v = |i: usize, j: usize| (i % n) * n + (j % n);
        for i in 0..n {
            for j in 0..n {
                x.add_vertex(format!("p_{i}_{j}")).unwrap();
            }
        }
        for i in 0..n {
            for j in 0..n {
                x.add_edge(format!("h_{i}_{j}"), v(i, j), v(i, j + 1))
                    .unwrap();
            }
        }
        for i in 0..n {
            for j in 0..n {
                x.add_edge(format!("u_{i}_{j}"), v(i, j), v(i + 1, j))
                    .unwrap();
            }
        }
        let h = |i: usize, j: usize| (i % n) * n + (j % n);
        let u = |i: usize, j: usize| n * n + (i % n) * n + (j % n);
        for i in 0..n {
            for j in 0..n {
                let word = vec![
                    SignedEdge::fwd(h(i, j)),
                    SignedEdge::fwd(u(i, j + 1)),
                    SignedEdge::rev(h(i + 1, j)),
                    SignedEdge::rev(u(i, j)),
                ];
                x.add_cell(format!("s_{i}_{j}"), word).unwrap();
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn parse_rp2_and_torus() {
        let x = rp2();
        assert_eq!(x.counts(), [1, 1, 1]);
        assert_eq!(x.euler_characteristic(), 1);
        assert_eq!(torus().counts(), [1, 2, 1]);
        assert_eq!(torus().euler_characteristic(), 0);
    }

    #[test]
    fn open_word_rejected() {
        let doc = "complex bad\nvertices: v w\nedge a v v\nedge b w w\ncell D a b\n";
        assert_eq!(
            parse_complex(doc),
            Err(Error::OpenBoundaryWord { cell: "D".into() })
        );
    }

    #[test]
    fn dangling_and_malformed() {
        let doc = "complex bad\nvertices: v\nedge a v w\n";
        assert!(matches!(
            parse_complex(doc),
            Err(Error::DanglingReference { kind: "vertex", .. })
        ));
        let doc = "complex bad\nvertices: v\nedge a v v\ncell D a z\n";
        assert!(matches!(
            parse_complex(doc),
            Err(Error::DanglingReference { kind: "edge", .. })
        ));
        assert!(matches!(
            parse_complex("complex\n"),
            Err(Error::MalformedSyntax { .. })
        ));
        assert!(matches!(
            parse_complex("complex x\nfoo bar\n"),
            Err(Error::MalformedSyntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_complex("complex x\nvertices: v v\n"),
            Err(Error::MalformedSyntax { line: 2, .. })
        ));
    }

    #[test]
    fn presentations() {
        let p = parse_complex("presentation rp2\ngens: a\nrel: a a\n").unwrap();
        assert_eq!(p.counts(), [1, 1, 1]);
        assert_eq!(p.boundary_matrix(2), rp2().boundary_matrix(2));
        let t = CellComplex2::from_presentation("t", &["a", "b"], &[vec!["a", "b", "-a", "-b"]])
            .unwrap();
        assert_eq!(t.boundary_matrix(2), torus().boundary_matrix(2));
        assert_eq!(genus2().euler_characteristic(), -2);
        assert_eq!(
            CellComplex2::from_presentation("x", &["a"], &[vec!["a", "q"]]),
            Err(Error::UnknownGenerator("q".into()))
        );
    }

    #[test]
    fn boundary_matrices() {
        assert!(torus().boundary_matrix(2).is_zero());
        assert_eq!(rp2().boundary_matrix(2), IntMatrix::from_rows(&[vec![2]]));
        assert_eq!(
            sphere().boundary_matrix(2),
            IntMatrix::from_rows(&[vec![1, -1]])
        );
        let g = grid_torus(3);
        assert!(g.boundary_matrix(1).mul(&g.boundary_matrix(2)).is_zero());
        assert_eq!(g.euler_characteristic(), 0);
    }

    #[test]
    fn attach_extends_basis() {
        let t = torus();
        let a = t.edge_id("a").unwrap();
        let b = t.edge_id("b").unwrap();
        let x = t
            .attach_cells(&[vec![SignedEdge::fwd(a)], vec![SignedEdge::fwd(b)]])
            .unwrap();
        assert_eq!(x.num_cells(), 3);
        assert_eq!(x.cells()[0], t.cells()[0]);
        assert_eq!(t.attach_cells(&[]).unwrap(), t);
    }

    #[test]
    fn display_round_trip() {
        for x in [rp2(), torus(), genus2(), grid_torus(2)] {
            assert_eq!(parse_complex(&x.to_string()).unwrap(), x);
        }
    }
}
