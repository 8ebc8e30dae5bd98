//! The group-manifold graph of a calculus and its Graphviz export.

use std::fmt::Write;

use crate::calculus::Calculus;
use crate::group::Element;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: Element,
    pub to: Element,
    /// The generator `h` with `to = from·h⁻¹`.
    pub generator: Element,
    /// `h = h⁻¹`: the link runs both ways and is emitted once.
    pub undirected: bool,
}

/// Vertices are the group elements; `g → g·h⁻¹` for every generator `h`.
#[derive(Clone, Debug)]
pub struct ManifoldGraph {
    pub labels: Vec<String>,
    pub edges: Vec<Edge>,
    pub name: String,
}

impl ManifoldGraph {
    pub fn new(c: &Calculus) -> Self {
        let g = c.group();
        let mut edges = Vec::new();
        for from in 0..g.order() {
            for &h in c.gens() {
                let to = g.mul(from, g.inv(h));
                let undirected = g.inv(h) == h;
                if undirected && to < from {
                    continue;
                }
                edges.push(Edge { from, to, generator: h, undirected });
            }
        }
        ManifoldGraph { labels: g.labels().to_vec(), edges, name: c.describe() }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Links leaving `v`, counting an undirected edge at both ends.
    pub fn out_degree(&self, v: Element) -> usize {
        self.edges.iter().filter(|e| e.from == v || (e.undirected && e.to == v)).count()
    }

    /// Number of connected components of the underlying undirected graph.
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.labels.len()).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (root(&mut parent, e.from), root(&mut parent, e.to));
            parent[a] = b;
        }
        (0..self.labels.len()).filter(|&v| root(&mut parent, v) == v).count()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        writeln!(s, "digraph {} {{", quote(&self.name)).unwrap();
        writeln!(s, "  node [shape=circle];").unwrap();
        for (v, l) in self.labels.iter().enumerate() {
            writeln!(s, "  v{v} [label={}];", quote(&format!("x^{l}"))).unwrap();
        }
        for e in &self.edges {
            let label = quote(&self.labels[e.generator]);
            if e.undirected {
                writeln!(s, "  v{} -> v{} [label={label}, dir=none];", e.from, e.to).unwrap();
            } else {
                writeln!(s, "  v{} -> v{} [label={label}];", e.from, e.to).unwrap();
            }
        }
        s.push_str("}\n");
        s
    }
}

fn quote(text: &str) -> String {
    format!("\"{}\"", text.replace('\\', "\\\\").replace('"', "\\\""))
}
