//! Cayley graphs and Cayley complexes of coset tables.
//!
//! The Cayley complex of `H\G` has one vertex per coset, one edge
//! `c -> c.g` per coset and generator, and one 2-cell per coset and
//! relator attached along the relator's walk. It is the covering of the
//! presentation complex with fibre `H\G`.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::enumerator::{Coset, CosetTable};
use crate::words::{Letter, Presentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("presentation has {0} relators; free subgroup rank needs a free group")]
    NotFree(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: Coset,
    pub target: Coset,
    pub generator: usize,
}

/// A 2-cell attached at `base` along relator `relator`. `walk` lists the
/// vertices visited, starting and ending at `base`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    pub base: Coset,
    pub relator: usize,
    pub walk: Vec<Coset>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyComplex {
    presentation: Arc<Presentation>,
    vertices: usize,
    edges: Vec<Edge>,
    faces: Vec<Face>,
}

/// The 1-skeleton: vertices `H\G`, an edge `(c, c.g, g)` for every coset
/// and generator.
pub fn cayley_graph(table: &CosetTable) -> CayleyComplex {
    let mut edges = Vec::with_capacity(table.num_cosets() * table.num_generators());
    for c in 0..table.num_cosets() {
        for g in 0..table.num_generators() {
            edges.push(Edge { source: c, target: table.entry(c, 2 * g), generator: g });
        }
    }
    CayleyComplex {
        presentation: table.shared_presentation().clone(),
        vertices: table.num_cosets(),
        edges,
        faces: Vec::new(),
    }
}

/// The Cayley graph with a 2-cell for every (coset, relator) pair.
pub fn cayley_complex(table: &CosetTable) -> CayleyComplex {
    let mut complex = cayley_graph(table);
    let relators = table.presentation().relators();
    for base in 0..table.num_cosets() {
        for (i, r) in relators.iter().enumerate() {
            let mut walk = vec![base];
            let mut c = base;
            for l in r.letters() {
                c = table.image(c, l);
                walk.push(c);
            }
            debug_assert_eq!(c, base, "relator closure");
            complex.faces.push(Face { base, relator: i, walk });
        }
    }
    complex
}

/// `V - E + F`.
pub fn euler_characteristic(complex: &CayleyComplex) -> i64 {
    complex.vertices as i64 - complex.edges.len() as i64 + complex.faces.len() as i64
}

/// Rank of the free subgroup `H` of a free group, `1 - chi(Cayley graph)`.
pub fn free_subgroup_rank(table: &CosetTable) -> Result<usize, ComplexError> {
    let relators = table.presentation().relators().len();
    if relators > 0 {
        return Err(ComplexError::NotFree(relators));
    }
    let chi = euler_characteristic(&cayley_graph(table));
    Ok((1 - chi) as usize)
}

impl CayleyComplex {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn euler_characteristic(&self) -> i64 {
        euler_characteristic(self)
    }

    /// Whether BFS over undirected edges from vertex 0 reaches everything.
    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertices];
        for e in &self.edges {
            adj[e.source].push(e.target);
            adj[e.target].push(e.source);
        }
        let mut seen = vec![false; self.vertices];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.vertices
    }

    /// Checks that every face walk follows the edges of its relator and closes.
    pub fn faces_close(&self) -> bool {
        let relators = self.presentation.relators();
        let lookup = |c: Coset, l: Letter| -> Option<Coset> {
            if l.inverted {
                self.edges.iter().find(|e| e.target == c && e.generator == l.generator).map(|e| e.source)
            } else {
                self.edges.iter().find(|e| e.source == c && e.generator == l.generator).map(|e| e.target)
            }
        };
        self.faces.iter().all(|f| {
            let letters: Vec<Letter> = relators[f.relator].letters().collect();
            f.walk.len() == letters.len() + 1
                && f.walk.first() == Some(&f.base)
                && f.walk.last() == Some(&f.base)
                && letters.iter().enumerate().all(|(i, &l)| lookup(f.walk[i], l) == Some(f.walk[i + 1]))
        })
    }

    /// Graphviz text: one statement per positively labelled edge, vertex 0
    /// marked as the basepoint.
    pub fn to_dot(&self) -> String {
        let names = self.presentation.generator_names();
        let mut out = String::from("digraph cayley {\n");
        for v in 0..self.vertices {
            if v == 0 {
                writeln!(out, "    0 [label=\"0\", shape=doublecircle, xlabel=\"basepoint\"];").unwrap();
            } else {
                writeln!(out, "    {v} [label=\"{v}\"];").unwrap();
            }
        }
        for e in &self.edges {
            writeln!(out, "    {} -> {} [label=\"{}\"];", e.source, e.target, names[e.generator]).unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        let names = self.presentation.generator_names();
        json!({
            "vertices": self.vertices,
            "edges": self
                .edges
                .iter()
                .map(|e| json!([e.source, e.target, names[e.generator]]))
                .collect::<Vec<_>>(),
            "faces": self
                .faces
                .iter()
                .map(|f| json!([f.base, f.relator, f.walk]))
                .collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::{coset_enumerate, EnumerationLimits};
    use crate::words::{parse_presentation, parse_word_list};

    fn table(pres: &str, subgroup: &str) -> CosetTable {
        let p = Arc::new(parse_presentation(pres).unwrap());
        let h = parse_word_list(subgroup, &p).unwrap();
        coset_enumerate(&p, &h, &EnumerationLimits::default()).unwrap()
    }

    #[test]
    fn magma_session_edges() {
        let g = cayley_graph(&table("<a,b|>", "a^2, b^2, a b a^-1, b a b^-1"));
        let rows: Vec<(usize, usize)> = (0..3).map(|c| (g.edges[2 * c].target, g.edges[2 * c + 1].target)).collect();
        // <Id, a, b>, <a, Id, a>, <b, b, Id> with Id = 0, a = 1, b = 2
        assert_eq!(rows, vec![(1, 2), (0, 1), (2, 0)]);
        assert_eq!(g.euler_characteristic(), -3);
        assert!(g.is_connected());
    }

    #[test]
    fn bouquet_and_index_two() {
        let g = cayley_graph(&table("<a,b|>", "a, b"));
        assert_eq!((g.num_vertices(), g.edges().len()), (1, 2));
        assert_eq!(g.euler_characteristic(), -1);
        let g = cayley_graph(&table("<a,b|>", "a^2, a b, b^2"));
        assert_eq!(g.euler_characteristic(), -2);
    }

    #[test]
    fn cyclic_complexes() {
        let x = cayley_complex(&table("<a|a^2>", ""));
        assert_eq!((x.num_vertices(), x.edges().len(), x.faces().len()), (2, 2, 2));
        assert_eq!(x.euler_characteristic(), 2);
        for m in 1..=9 {
            let x = cayley_complex(&table(&format!("<a|a^{m}>"), ""));
            assert_eq!((x.num_vertices(), x.edges().len(), x.faces().len()), (m, m, m));
            assert!(x.faces_close());
        }
        let x = cayley_complex(&table("<a,b|>", "a^2, a b, b^2"));
        assert!(x.faces().is_empty());
    }

    #[test]
    fn dihedral_six_graph() {
        let t = table("<a,b|a^2,b^2,(a b)^3>", "");
        let g = cayley_graph(&t);
        assert_eq!((g.num_vertices(), g.edges().len()), (6, 12));
        let x = cayley_complex(&t);
        assert_eq!(x.faces().len(), 18);
        assert_eq!(x.euler_characteristic(), 6 * (1 - 2 + 3));
        assert!(x.faces_close());
    }

    #[test]
    fn free_ranks() {
        assert_eq!(free_subgroup_rank(&table("<a,b|>", "a^2, a b, b^2")), Ok(3));
        assert_eq!(free_subgroup_rank(&table("<a,b|>", "a^2, b^2, a b a^-1, b a b^-1")), Ok(4));
        assert_eq!(free_subgroup_rank(&table("<a,b|>", "a, b")), Ok(2));
        assert_eq!(free_subgroup_rank(&table("<a|a^2>", "")), Err(ComplexError::NotFree(1)));
    }

    #[test]
    fn dot_and_json_exports() {
        let g = cayley_graph(&table("<a,b|>", "a^2, a b, b^2"));
        assert_eq!(
            g.to_dot(),
            "digraph cayley {\n    0 [label=\"0\", shape=doublecircle, xlabel=\"basepoint\"];\n    1 [label=\"1\"];\n    \
             0 -> 1 [label=\"a\"];\n    0 -> 1 [label=\"b\"];\n    1 -> 0 [label=\"a\"];\n    1 -> 0 [label=\"b\"];\n}\n"
        );
        let x = cayley_complex(&table("<a|a^2>", ""));
        assert_eq!(
            serde_json::to_string(&x.to_json()).unwrap(),
            r#"{"vertices":2,"edges":[[0,1,"a"],[1,0,"a"]],"faces":[[0,0,[0,1,0]],[1,0,[1,0,1]]]}"#
        );
    }
}
