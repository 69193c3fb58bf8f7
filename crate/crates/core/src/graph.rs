//! Simple undirected graphs with dense vertex ids `0..n`.
//!
//! Graphs are immutable after construction; every composition in
//! [`crate::compose`] builds a new graph. Adjacency is kept as sorted sets so
//! all iteration orders, and therefore all derived output, are deterministic.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {id} out of range for graph of order {order}")]
    VertexOutOfRange { id: usize, order: usize },
    #[error("self-loop at vertex {0} not allowed in a simple graph")]
    SelfLoop(usize),
    #[error("cycle graph needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("path graph needs at least 1 vertex")]
    EmptyPath,
    #[error("cylindrical grid needs k >= 1 rows, got {0}")]
    GridTooFewRows(usize),
}

/// Sorted, duplicate-free set of vertex ids.
///
/// Small sets dominate this crate (open neighbourhoods, set differences), so
/// the representation is a sorted `Vec` with merge-based set operations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Sole element of a singleton set.
    pub fn single(&self) -> Option<usize> {
        match self.0.as_slice() {
            [v] => Some(*v),
            _ => None,
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(merge(&self.0, &other.0, true, false))
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(merge(&self.0, &other.0, false, true))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_iter(iter)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// `keep_common` selects the intersection, `keep_left_only` the difference.
fn merge(a: &[usize], b: &[usize], keep_common: bool, keep_left_only: bool) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() {
        if j >= b.len() {
            if keep_left_only {
                out.extend_from_slice(&a[i..]);
            }
            break;
        }
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                if keep_left_only {
                    out.push(a[i]);
                }
                i += 1;
            }
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if keep_common {
                    out.push(a[i]);
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Optional display name attached to a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexLabel {
    Name(String),
    /// Position `u_row^(col)` in a grid-like product, 1-based on both axes.
    GridCoord { row: usize, col: usize },
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Name(s) => write!(f, "{s}"),
            VertexLabel::GridCoord { row, col } => write!(f, "u_{row}^({col})"),
        }
    }
}

impl VertexLabel {
    /// Inverse of the `u_row^(col)` display form.
    pub fn parse_grid(s: &str) -> Option<(usize, usize)> {
        let rest = s.strip_prefix("u_")?;
        let (row, rest) = rest.split_once("^(")?;
        let col = rest.strip_suffix(')')?;
        Some((row.parse().ok()?, col.parse().ok()?))
    }
}

/// Simple undirected graph. No self-loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    labels: Vec<Option<VertexLabel>>,
}

impl Graph {
    /// Graph on `order` vertices with no edges.
    pub fn empty(order: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); order],
            labels: vec![None; order],
        }
    }

    pub fn from_edge_list(order: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(order);
        for &(u, v) in edges {
            g.add_edge_checked(u, v)?;
        }
        Ok(g)
    }

    fn add_edge_checked(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let order = self.order();
        for id in [u, v] {
            if id >= order {
                return Err(GraphError::VertexOutOfRange { id, order });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.order() && v < self.order());
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].contains(&v)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// Open neighbourhood `N(u)`.
    pub fn neighbors(&self, u: usize) -> VertexSet {
        VertexSet(self.adj[u].iter().copied().collect())
    }

    /// Closed neighbourhood `N[u] = N(u) ∪ {u}`.
    pub fn closed_neighborhood(&self, u: usize) -> VertexSet {
        let mut v: Vec<usize> = self.adj[u].iter().copied().collect();
        v.push(u);
        v.sort_unstable();
        VertexSet(v)
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs.iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.order()
    }

    pub fn label(&self, u: usize) -> Option<&VertexLabel> {
        self.labels.get(u).and_then(|l| l.as_ref())
    }

    pub fn set_label(&mut self, u: usize, label: VertexLabel) {
        self.labels[u] = Some(label);
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|s| s.is_empty())
    }

    /// Subgraph induced on `s`, with new dense ids; `original_ids[new] = old`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<InducedSubgraph, GraphError> {
        let order = self.order();
        for id in s.iter() {
            if id >= order {
                return Err(GraphError::VertexOutOfRange { id, order });
            }
        }
        let original_ids: Vec<usize> = s.iter().collect();
        let mut graph = Graph::empty(original_ids.len());
        for (new_u, &old_u) in original_ids.iter().enumerate() {
            graph.labels[new_u] = self.labels[old_u].clone();
            for (new_v, &old_v) in original_ids.iter().enumerate().skip(new_u + 1) {
                if self.has_edge(old_u, old_v) {
                    graph.add_edge(new_u, new_v);
                }
            }
        }
        Ok(InducedSubgraph {
            graph,
            original_ids,
        })
    }

    /// Path `P_n` on vertices `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyPath);
        }
        let mut g = Graph::empty(n);
        for u in 0..n - 1 {
            g.add_edge(u, u + 1);
        }
        Ok(g)
    }

    /// Cycle `C_n`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::CycleTooShort(n));
        }
        let mut g = Graph::empty(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        Ok(g)
    }

    /// Cartesian product; vertex `(a, b)` of `g x h` gets id `a * h.order() + b`.
    pub fn cartesian_product(g: &Graph, h: &Graph) -> Self {
        let (ng, nh) = (g.order(), h.order());
        let mut p = Graph::empty(ng * nh);
        for a in 0..ng {
            for b in 0..nh {
                let v = a * nh + b;
                for &a2 in g.adj[a].iter() {
                    if a2 > a {
                        p.add_edge(v, a2 * nh + b);
                    }
                }
                for &b2 in h.adj[b].iter() {
                    if b2 > b {
                        p.add_edge(v, a * nh + b2);
                    }
                }
            }
        }
        p
    }

    /// Cylindrical grid `P_k x C_n`: `k` path rows, `n` cycle columns.
    ///
    /// Vertex `u_i^(j)` (row `i` in `1..=k`, column `j` in `1..=n`) has id
    /// `(i-1)*n + (j-1)` and carries a [`VertexLabel::GridCoord`].
    pub fn cylindrical_grid(k: usize, n: usize) -> Result<Self, GraphError> {
        if k == 0 {
            return Err(GraphError::GridTooFewRows(k));
        }
        let mut g = Graph::cartesian_product(&Graph::path(k)?, &Graph::cycle(n)?);
        for i in 1..=k {
            for j in 1..=n {
                g.set_label(grid_vertex_id(n, i, j), VertexLabel::GridCoord { row: i, col: j });
            }
        }
        Ok(g)
    }

    /// Recover `(k, n)` from a graph whose vertices all carry grid coordinates
    /// in the canonical id layout.
    pub fn grid_dims(&self) -> Option<(usize, usize)> {
        let (mut k, mut n) = (0, 0);
        for u in self.vertices() {
            match self.label(u) {
                Some(VertexLabel::GridCoord { row, col }) => {
                    k = k.max(*row);
                    n = n.max(*col);
                }
                _ => return None,
            }
        }
        if k * n != self.order() {
            return None;
        }
        for u in self.vertices() {
            match self.label(u) {
                Some(VertexLabel::GridCoord { row, col }) if grid_vertex_id(n, *row, *col) == u => {}
                _ => return None,
            }
        }
        Some((k, n))
    }
}

/// Result of [`Graph::induced_subgraph`]: the subgraph plus the id mapping
/// back into the host graph.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub original_ids: Vec<usize>,
}

/// Canonical id of `u_row^(col)` in a `k x n` cylindrical grid (row/col 1-based).
pub fn grid_vertex_id(n: usize, row: usize, col: usize) -> usize {
    debug_assert!(row >= 1 && (1..=n).contains(&col));
    (row - 1) * n + (col - 1)
}

/// Wrap a (possibly shifted) 1-based column index into `1..=n`.
pub fn wrap_col(n: usize, col: i64) -> usize {
    (col - 1).rem_euclid(n as i64) as usize + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.size(), 4);
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn edge_list_rejects_bad_input() {
        assert_eq!(
            Graph::from_edge_list(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { id: 2, order: 2 })
        );
        assert_eq!(Graph::from_edge_list(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        // duplicate edges collapse silently
        let g = Graph::from_edge_list(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.size(), 1);
    }

    #[test]
    fn neighborhoods() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(c4.neighbors(0), VertexSet::from_iter([1, 3]));
        assert_eq!(c4.closed_neighborhood(0), VertexSet::from_iter([0, 1, 3]));
        let lone = Graph::empty(1);
        assert!(lone.neighbors(0).is_empty());
        assert_eq!(lone.closed_neighborhood(0), VertexSet::from_iter([0]));
    }

    #[test]
    fn grid_neighborhoods_match_structure() {
        // u_1^(1) in P_4 x C_3 sees both cycle neighbours and the row below.
        let g = Graph::cylindrical_grid(4, 3).unwrap();
        assert_eq!(g.neighbors(0), VertexSet::from_iter([1, 2, 3]));
        // u_2^(4) in P_3 x C_5: id 8, neighbours u_1^(4), u_2^(3), u_2^(5), u_3^(4).
        let g = Graph::cylindrical_grid(3, 5).unwrap();
        assert_eq!(g.neighbors(8), VertexSet::from_iter([3, 7, 9, 13]));
    }

    #[test]
    fn grid_degrees() {
        let g = Graph::cylindrical_grid(4, 3).unwrap();
        for u in g.vertices() {
            let row = u / 3 + 1;
            let expected = if row == 1 || row == 4 { 3 } else { 4 };
            assert_eq!(g.degree(u), expected, "vertex {u}");
        }
        // k = 2 grids are 3-regular
        let g = Graph::cylindrical_grid(2, 5).unwrap();
        assert!(g.vertices().all(|u| g.degree(u) == 3));
    }

    #[test]
    fn single_row_grid_is_cycle() {
        let g = Graph::cylindrical_grid(1, 5).unwrap();
        let c = Graph::cycle(5).unwrap();
        assert_eq!(g.edges(), c.edges());
    }

    #[test]
    fn grid_dims_round_trip() {
        let g = Graph::cylindrical_grid(3, 5).unwrap();
        assert_eq!(g.grid_dims(), Some((3, 5)));
        assert_eq!(Graph::cycle(4).unwrap().grid_dims(), None);
    }

    #[test]
    fn induced_subgraph_small() {
        let c4 = Graph::cycle(4).unwrap();
        let sub = c4.induced_subgraph(&VertexSet::from_iter([0, 1])).unwrap();
        assert_eq!(sub.graph.edges(), vec![(0, 1)]);
        assert_eq!(sub.original_ids, vec![0, 1]);
        let sub = c4.induced_subgraph(&VertexSet::from_iter([0, 2])).unwrap();
        assert!(sub.graph.is_edgeless());
    }

    #[test]
    fn induced_closed_neighborhood_in_grid() {
        // <N[u_2^(2)]> inside P_4 x C_3: a 4-star plus the cycle edge
        // u_2^(1) - u_2^(3), five edges total.
        let g = Graph::cylindrical_grid(4, 3).unwrap();
        let center = grid_vertex_id(3, 2, 2);
        let sub = g.induced_subgraph(&g.closed_neighborhood(center)).unwrap();
        assert_eq!(sub.graph.order(), 5);
        assert_eq!(sub.graph.size(), 5);
        let center_new = sub.original_ids.iter().position(|&v| v == center).unwrap();
        assert_eq!(sub.graph.degree(center_new), 4);
    }

    #[test]
    fn product_matches_known_shapes() {
        let p2c3 = Graph::cartesian_product(&Graph::path(2).unwrap(), &Graph::cycle(3).unwrap());
        assert_eq!(p2c3.order(), 6);
        assert_eq!(p2c3.size(), 9);
        assert!(p2c3.vertices().all(|u| p2c3.degree(u) == 3));

        // P_1 x H keeps H's adjacency under the identity id map.
        let h = Graph::cycle(5).unwrap();
        let p = Graph::cartesian_product(&Graph::path(1).unwrap(), &h);
        assert_eq!(p.edges(), h.edges());
    }

    #[test]
    fn product_edge_count_formula() {
        // |E(G x H)| = |V(G)| |E(H)| + |V(H)| |E(G)|
        for (g, h) in [
            (Graph::path(3).unwrap(), Graph::cycle(4).unwrap()),
            (Graph::path(5).unwrap(), Graph::path(4).unwrap()),
            (Graph::cycle(3).unwrap(), Graph::cycle(3).unwrap()),
        ] {
            let p = Graph::cartesian_product(&g, &h);
            assert_eq!(p.size(), g.order() * h.size() + h.order() * g.size());
        }
    }

    #[test]
    fn generators_validate_sizes() {
        assert!(Graph::path(0).is_err());
        assert!(Graph::cycle(2).is_err());
        assert!(Graph::cylindrical_grid(0, 3).is_err());
        assert!(Graph::cylindrical_grid(2, 2).is_err());
        assert_eq!(Graph::path(1).unwrap().order(), 1);
    }

    #[test]
    fn vertex_set_operations() {
        let a = VertexSet::from_iter([1, 3, 5, 7]);
        let b = VertexSet::from_iter([3, 4, 7, 9]);
        assert_eq!(a.intersection(&b), VertexSet::from_iter([3, 7]));
        assert_eq!(a.difference(&b), VertexSet::from_iter([1, 5]));
        assert_eq!(a.union(&b), VertexSet::from_iter([1, 3, 4, 5, 7, 9]));
        assert!(!a.is_disjoint(&b));
        assert!(a.is_disjoint(&VertexSet::from_iter([0, 2])));
        assert_eq!(VertexSet::from_iter([4]).single(), Some(4));
        assert_eq!(a.single(), None);
    }

    #[test]
    fn wrap_col_arithmetic() {
        assert_eq!(wrap_col(3, 0), 3);
        assert_eq!(wrap_col(3, 4), 1);
        assert_eq!(wrap_col(3, 3), 3);
        assert_eq!(wrap_col(5, -1), 4);
        assert_eq!(wrap_col(5, 6), 1);
    }

    #[test]
    fn grid_label_display_and_parse() {
        let l = VertexLabel::GridCoord { row: 2, col: 11 };
        assert_eq!(l.to_string(), "u_2^(11)");
        assert_eq!(VertexLabel::parse_grid("u_2^(11)"), Some((2, 11)));
        assert_eq!(VertexLabel::parse_grid("x_2^(11)"), None);
    }
}
