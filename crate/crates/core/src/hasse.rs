//! Hasse diagrams: nodes, cover edges, display labels.
//!
//! The edge set is always the transitive reduction of the order restricted to
//! the node set, and edges are directed from the degenerating value down to
//! its degeneration.

use serde::Serialize;

/// A finite poset presented by its cover relation. `edges[(u, v)]` means node
/// `u` covers node `v` (u degenerates to v in one step).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HasseDiagram<T> {
    pub nodes: Vec<T>,
    pub edges: Vec<(usize, usize)>,
    pub labels: Vec<String>,
}

impl<T> HasseDiagram<T> {
    pub fn new(nodes: Vec<T>, mut edges: Vec<(usize, usize)>, labels: Vec<String>) -> Self {
        assert_eq!(nodes.len(), labels.len());
        edges.sort_unstable();
        edges.dedup();
        HasseDiagram { nodes, edges, labels }
    }

    /// Builds the diagram of an order given by `leq` on `nodes`: keeps exactly
    /// the cover pairs (transitive reduction).
    pub fn from_order(
        nodes: Vec<T>,
        labels: Vec<String>,
        mut leq: impl FnMut(&T, &T) -> bool,
    ) -> Self {
        let n = nodes.len();
        let mut rel = vec![vec![false; n]; n];
        for u in 0..n {
            for v in 0..n {
                if u != v && leq(&nodes[u], &nodes[v]) {
                    rel[u][v] = true;
                }
            }
        }
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if rel[u][v] && !(0..n).any(|w| rel[u][w] && rel[w][v]) {
                    edges.push((u, v));
                }
            }
        }
        HasseDiagram::new(nodes, edges, labels)
    }

    /// Connected components (ignoring edge direction), each sorted by node
    /// index; components ordered by their smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm; the diagram is a DAG iff all nodes get popped.
        let n = self.nodes.len();
        let mut indeg = vec![0usize; n];
        for &(_, v) in &self.edges {
            indeg[v] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&u| indeg[u] == 0).collect();
        let mut popped = 0;
        while let Some(u) = queue.pop() {
            popped += 1;
            for &(a, b) in &self.edges {
                if a == u {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        queue.push(b);
                    }
                }
            }
        }
        popped == n
    }

    /// Graphviz DOT output, one subgraph per connected component. Edges point
    /// from the degenerating node to its degeneration.
    pub fn to_dot(&self, name: &str) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(out, "digraph {name} {{").unwrap();
        for (k, comp) in self.components().iter().enumerate() {
            writeln!(out, "  subgraph cluster_{k} {{").unwrap();
            for &u in comp {
                writeln!(out, "    n{u} [label=\"{}\"];", escape(&self.labels[u])).unwrap();
            }
            for &(u, v) in &self.edges {
                if comp.contains(&u) {
                    writeln!(out, "    n{u} -> n{v};").unwrap();
                }
            }
            writeln!(out, "  }}").unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_removes_implied_edges() {
        let nodes = vec![3u64, 2, 1];
        let labels = nodes.iter().map(|n| n.to_string()).collect();
        let h = HasseDiagram::from_order(nodes, labels, |a, b| a > b);
        assert_eq!(h.edges, vec![(0, 1), (1, 2)]);
        assert!(h.is_acyclic());
    }

    #[test]
    fn components_and_dot() {
        let h = HasseDiagram::new(
            vec![0u8, 1, 2, 3],
            vec![(0, 1), (2, 3)],
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
        );
        assert_eq!(h.components(), vec![vec![0, 1], vec![2, 3]]);
        let dot = h.to_dot("g");
        assert!(dot.contains("subgraph cluster_0"));
        assert!(dot.contains("subgraph cluster_1"));
        assert!(dot.contains("n0 -> n1;"));
    }
}
