//! Graph compositions that preserve enough structure to transport chain
//! witnesses: every operation returns the composite together with id-remap
//! tables for each operand.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComposeError {
    #[error("amalgamation needs at least 2 parts, got {0}")]
    TooFewParts(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("designated vertex {id} out of range for part of order {order}")]
    BadDesignatedVertex { id: usize, order: usize },
    #[error("two-terminal graph needs distinct source and sink")]
    TerminalsCoincide,
}

/// Maps operand vertex ids into a composite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap(Vec<usize>);

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        VertexMap((0..n).collect())
    }

    pub fn shifted(n: usize, offset: usize) -> Self {
        VertexMap((offset..offset + n).collect())
    }

    pub fn from_table(table: Vec<usize>) -> Self {
        VertexMap(table)
    }

    pub fn apply(&self, old: usize) -> usize {
        self.0[old]
    }

    pub fn apply_all(&self, old: &[usize]) -> Vec<usize> {
        old.iter().map(|&v| self.apply(v)).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Undirected graph with two distinguished terminals, for series/parallel
/// composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoTerminalGraph {
    pub graph: Graph,
    pub source: usize,
    pub sink: usize,
}

impl TwoTerminalGraph {
    pub fn new(graph: Graph, source: usize, sink: usize) -> Result<Self, ComposeError> {
        let order = graph.order();
        for id in [source, sink] {
            if id >= order {
                return Err(ComposeError::BadDesignatedVertex { id, order });
            }
        }
        if source == sink {
            return Err(ComposeError::TerminalsCoincide);
        }
        Ok(TwoTerminalGraph {
            graph,
            source,
            sink,
        })
    }
}

#[derive(Debug, Clone)]
pub struct Union {
    pub graph: Graph,
    pub left: VertexMap,
    pub right: VertexMap,
}

/// Disjoint union; `h`'s ids are shifted past `g`'s.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Union {
    let (ng, nh) = (g.order(), h.order());
    let mut edges: Vec<(usize, usize)> = g.edges();
    edges.extend(h.edges().into_iter().map(|(u, v)| (u + ng, v + ng)));
    let mut graph = Graph::from_edge_list(ng + nh, &edges).expect("operands are simple graphs");
    for u in 0..ng {
        if let Some(l) = g.label(u) {
            graph.set_label(u, l.clone());
        }
    }
    for u in 0..nh {
        if let Some(l) = h.label(u) {
            graph.set_label(u + ng, l.clone());
        }
    }
    Union {
        graph,
        left: VertexMap::identity(ng),
        right: VertexMap::shifted(nh, ng),
    }
}

#[derive(Debug, Clone)]
pub struct Amalgamation {
    pub graph: Graph,
    /// Composite id of the vertex all parts were glued at.
    pub merged: usize,
    pub part_maps: Vec<VertexMap>,
}

/// Glue the parts at one shared vertex: the designated vertex of every part
/// is identified into a single composite vertex. Part 0 keeps its ids; later
/// parts are appended (minus their designated vertex).
pub fn amalgamation(parts: &[(&Graph, usize)]) -> Result<Amalgamation, ComposeError> {
    if parts.len() < 2 {
        return Err(ComposeError::TooFewParts(parts.len()));
    }
    for &(g, w) in parts {
        if w >= g.order() {
            return Err(ComposeError::BadDesignatedVertex {
                id: w,
                order: g.order(),
            });
        }
    }
    let merged = parts[0].1;
    let mut part_maps = vec![VertexMap::identity(parts[0].0.order())];
    let mut next_id = parts[0].0.order();
    for &(g, w) in &parts[1..] {
        let mut table = Vec::with_capacity(g.order());
        for u in 0..g.order() {
            if u == w {
                table.push(merged);
            } else {
                table.push(next_id);
                next_id += 1;
            }
        }
        part_maps.push(VertexMap::from_table(table));
    }
    let mut edges = Vec::new();
    for (idx, &(g, _)) in parts.iter().enumerate() {
        let map = &part_maps[idx];
        for (u, v) in g.edges() {
            edges.push((map.apply(u), map.apply(v)));
        }
    }
    let graph = Graph::from_edge_list(next_id, &edges)?;
    Ok(Amalgamation {
        graph,
        merged,
        part_maps,
    })
}

#[derive(Debug, Clone)]
pub struct Series {
    pub graph: TwoTerminalGraph,
    pub first: VertexMap,
    pub second: VertexMap,
}

/// Series composition: identify `sink(x)` with `source(y)`. The composite
/// runs from `source(x)` to `sink(y)`.
pub fn series(x: &TwoTerminalGraph, y: &TwoTerminalGraph) -> Result<Series, ComposeError> {
    let nx = x.graph.order();
    let first = VertexMap::identity(nx);
    let mut table = Vec::with_capacity(y.graph.order());
    let mut next_id = nx;
    for u in 0..y.graph.order() {
        if u == y.source {
            table.push(x.sink);
        } else {
            table.push(next_id);
            next_id += 1;
        }
    }
    let second = VertexMap::from_table(table);
    let mut edges = x.graph.edges();
    for (u, v) in y.graph.edges() {
        edges.push((second.apply(u), second.apply(v)));
    }
    let graph = Graph::from_edge_list(next_id, &edges)?;
    Ok(Series {
        graph: TwoTerminalGraph::new(graph, x.source, second.apply(y.sink))?,
        first,
        second,
    })
}

#[derive(Debug, Clone)]
pub struct Parallel {
    pub graph: TwoTerminalGraph,
    pub first: VertexMap,
    pub second: VertexMap,
    /// Edges of the second operand that landed on an existing edge and
    /// collapsed (simple-graph semantics), as composite id pairs.
    pub collapsed_edges: Vec<(usize, usize)>,
}

/// Parallel composition: identify the two sources and the two sinks.
pub fn parallel(x: &TwoTerminalGraph, y: &TwoTerminalGraph) -> Result<Parallel, ComposeError> {
    let nx = x.graph.order();
    let first = VertexMap::identity(nx);
    let mut table = Vec::with_capacity(y.graph.order());
    let mut next_id = nx;
    for u in 0..y.graph.order() {
        if u == y.source {
            table.push(x.source);
        } else if u == y.sink {
            table.push(x.sink);
        } else {
            table.push(next_id);
            next_id += 1;
        }
    }
    let second = VertexMap::from_table(table);
    let mut edges = x.graph.edges();
    let mut collapsed = Vec::new();
    let mut seen: std::collections::BTreeSet<(usize, usize)> = edges.iter().copied().collect();
    for (u, v) in y.graph.edges() {
        let (a, b) = ordered(second.apply(u), second.apply(v));
        if !seen.insert((a, b)) {
            collapsed.push((a, b));
        }
        edges.push((a, b));
    }
    let graph = Graph::from_edge_list(next_id, &edges)?;
    Ok(Parallel {
        graph: TwoTerminalGraph::new(graph, x.source, x.sink)?,
        first,
        second,
        collapsed_edges: collapsed,
    })
}

fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone)]
pub struct RootedProduct {
    pub graph: Graph,
    /// Ids of the base graph inside the composite (identity map).
    pub base: VertexMap,
    /// `copies[i]` maps the rooted factor's ids into copy `i`, whose root is
    /// identified with base vertex `i`.
    pub copies: Vec<VertexMap>,
}

/// Rooted product: attach one copy of `h` (rooted at `root`) to every vertex
/// of `g`, identifying the root of copy `i` with `g`'s vertex `i`.
pub fn rooted_product(g: &Graph, h: &Graph, root: usize) -> Result<RootedProduct, ComposeError> {
    if root >= h.order() {
        return Err(ComposeError::BadDesignatedVertex {
            id: root,
            order: h.order(),
        });
    }
    let ng = g.order();
    let mut copies = Vec::with_capacity(ng);
    let mut next_id = ng;
    for i in 0..ng {
        let mut table = Vec::with_capacity(h.order());
        for u in 0..h.order() {
            if u == root {
                table.push(i);
            } else {
                table.push(next_id);
                next_id += 1;
            }
        }
        copies.push(VertexMap::from_table(table));
    }
    let mut edges = g.edges();
    for map in &copies {
        for (u, v) in h.edges() {
            edges.push((map.apply(u), map.apply(v)));
        }
    }
    let graph = Graph::from_edge_list(next_id, &edges)?;
    Ok(RootedProduct {
        graph,
        base: VertexMap::identity(ng),
        copies,
    })
}
