//! Neighbourhood sequences and their walk / trail / chain / cycle taxonomy.
//!
//! A sequence of vertex sets `N_1 .. N_k` is classified by how its terms
//! overlap. Consecutive terms and the (first, last) pair are always exempt
//! from the overlap restrictions; every other pair is "interior".
//!
//! * walk: every pair of consecutive terms intersects;
//! * trail: walk, and every interior pair shares at most one vertex;
//! * chain: walk, and every interior pair is disjoint;
//! * cycle: chain whose end terms intersect (for two-term sequences the end
//!   terms must additionally differ as sets).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("a neighbourhood sequence needs at least 2 terms, got {0}")]
    TooShort(usize),
    #[error("term {index} is empty")]
    EmptyTerm { index: usize },
    #[error("term {index} mentions vertex {id} outside universe of size {universe}")]
    VertexOutsideUniverse {
        index: usize,
        id: usize,
        universe: usize,
    },
    #[error("center {0} has an empty neighbourhood")]
    IsolatedCenter(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A finite sequence of nonempty vertex sets over a universe `0..universe`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbhFamily {
    terms: Vec<VertexSet>,
    universe: usize,
    /// Center vertices when the terms are open neighbourhoods in some graph.
    centers: Option<Vec<usize>>,
}

impl NbhFamily {
    pub fn from_sets(universe: usize, terms: Vec<VertexSet>) -> Result<Self, FamilyError> {
        if terms.len() < 2 {
            return Err(FamilyError::TooShort(terms.len()));
        }
        for (index, t) in terms.iter().enumerate() {
            if t.is_empty() {
                return Err(FamilyError::EmptyTerm { index });
            }
            if let Some(id) = t.iter().find(|&v| v >= universe) {
                return Err(FamilyError::VertexOutsideUniverse {
                    index,
                    id,
                    universe,
                });
            }
        }
        Ok(NbhFamily {
            terms,
            universe,
            centers: None,
        })
    }

    /// Family of open neighbourhoods of `centers` in `g`, in order.
    pub fn from_centers(g: &Graph, centers: &[usize]) -> Result<Self, FamilyError> {
        if centers.len() < 2 {
            return Err(FamilyError::TooShort(centers.len()));
        }
        let mut terms = Vec::with_capacity(centers.len());
        for &c in centers {
            if c >= g.order() {
                return Err(GraphError::VertexOutOfRange {
                    id: c,
                    order: g.order(),
                }
                .into());
            }
            let t = g.neighbors(c);
            if t.is_empty() {
                return Err(FamilyError::IsolatedCenter(c));
            }
            terms.push(t);
        }
        Ok(NbhFamily {
            terms,
            universe: g.order(),
            centers: Some(centers.to_vec()),
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn term(&self, i: usize) -> &VertexSet {
        &self.terms[i]
    }

    pub fn terms(&self) -> &[VertexSet] {
        &self.terms
    }

    pub fn centers(&self) -> Option<&[usize]> {
        self.centers.as_deref()
    }

    /// Union of all terms.
    pub fn term_union(&self) -> VertexSet {
        let mut u = VertexSet::new();
        for t in &self.terms {
            u = u.union(t);
        }
        u
    }

    /// Interior index pairs `(i, j)`, 0-based: non-consecutive and not the
    /// (first, last) pair.
    fn interior_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.len();
        (0..k).flat_map(move |i| {
            (i + 2..k)
                .filter(move |&j| !(i == 0 && j == k - 1))
                .map(move |j| (i, j))
        })
    }

    pub fn is_walk(&self) -> bool {
        self.first_gap().is_none()
    }

    /// First consecutive pair with disjoint terms, 0-based indices.
    fn first_gap(&self) -> Option<(usize, usize)> {
        (0..self.len() - 1)
            .find(|&i| self.terms[i].is_disjoint(&self.terms[i + 1]))
            .map(|i| (i, i + 1))
    }

    pub fn is_trail(&self) -> bool {
        self.is_walk()
            && self
                .interior_pairs()
                .all(|(i, j)| self.terms[i].intersection(&self.terms[j]).len() <= 1)
    }

    pub fn is_chain(&self) -> bool {
        self.is_walk()
            && self
                .interior_pairs()
                .all(|(i, j)| self.terms[i].is_disjoint(&self.terms[j]))
    }

    pub fn is_cycle(&self) -> bool {
        if !self.is_chain() {
            return false;
        }
        let (first, last) = (&self.terms[0], &self.terms[self.len() - 1]);
        if self.len() == 2 {
            first != last
        } else {
            !first.is_disjoint(last)
        }
    }

    /// Strongest class in the walk < trail < chain < cycle order, with a
    /// witness for the condition that blocked the next promotion.
    pub fn classify(&self) -> SeqClass {
        if let Some((first, second)) = self.first_gap() {
            return SeqClass::NotWalk { first, second };
        }
        // first interior pair too fat for a trail
        for (i, j) in self.interior_pairs() {
            let shared = self.terms[i].intersection(&self.terms[j]);
            if shared.len() > 1 {
                return SeqClass::Walk {
                    pair: (i, j),
                    shared,
                };
            }
        }
        // first interior pair blocking a chain
        for (i, j) in self.interior_pairs() {
            let shared = self.terms[i].intersection(&self.terms[j]);
            if !shared.is_empty() {
                return SeqClass::Trail {
                    pair: (i, j),
                    shared,
                };
            }
        }
        if self.len() == 2 {
            if self.terms[0] == self.terms[1] {
                return SeqClass::OpenChain {
                    reason: OpenReason::EqualEndTerms,
                };
            }
        } else if self.terms[0].is_disjoint(&self.terms[self.len() - 1]) {
            return SeqClass::OpenChain {
                reason: OpenReason::DisjointEndTerms,
            };
        }
        SeqClass::Cycle
    }

    /// Drop the last term when it repeats an earlier term (closed-walk
    /// notation); at most one term is dropped. Requires `len >= 3`.
    pub fn normalize_closed(&self) -> NbhFamily {
        assert!(self.len() >= 3, "normalize_closed needs at least 3 terms");
        let last = &self.terms[self.len() - 1];
        if self.terms[..self.len() - 1].contains(last) {
            let mut out = self.clone();
            out.terms.pop();
            if let Some(c) = out.centers.as_mut() {
                c.pop();
            }
            out
        } else {
            self.clone()
        }
    }

    /// Connectivity of the term-intersection graph (terms are nodes, edges
    /// join intersecting terms).
    pub fn connectivity(&self) -> Connectivity {
        let k = self.len();
        let mut seen = vec![false; k];
        let mut queue = vec![0usize];
        seen[0] = true;
        while let Some(i) = queue.pop() {
            for j in 0..k {
                if !seen[j] && !self.terms[i].is_disjoint(&self.terms[j]) {
                    seen[j] = true;
                    queue.push(j);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Connectivity::Connected
        } else {
            Connectivity::Disconnected {
                component: (0..k).filter(|&i| seen[i]).collect(),
            }
        }
    }

    /// Shortest path from term `i` to term `j` in the term-intersection
    /// graph. The returned index sequence, read as a subfamily, is always a
    /// chain: consecutive path terms intersect, and any intersection between
    /// non-consecutive path terms would shortcut the path.
    pub fn chain_between(&self, i: usize, j: usize) -> Option<Vec<usize>> {
        let k = self.len();
        assert!(i < k && j < k);
        let mut prev = vec![usize::MAX; k];
        let mut queue = std::collections::VecDeque::new();
        prev[i] = i;
        queue.push_back(i);
        while let Some(cur) = queue.pop_front() {
            if cur == j {
                let mut path = vec![j];
                let mut v = j;
                while v != i {
                    v = prev[v];
                    path.push(v);
                }
                path.reverse();
                return Some(path);
            }
            for next in 0..k {
                if prev[next] == usize::MAX && !self.terms[cur].is_disjoint(&self.terms[next]) {
                    prev[next] = cur;
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// Subfamily selected by `indices` (term order preserved as given).
    pub fn subfamily(&self, indices: &[usize]) -> Result<NbhFamily, FamilyError> {
        let terms = indices.iter().map(|&i| self.terms[i].clone()).collect();
        NbhFamily::from_sets(self.universe, terms)
    }
}

/// Classification verdict with the witness blocking the next-stronger class.
/// Index pairs are 0-based term positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum SeqClass {
    /// Not even a walk: `first`/`second` are the first disjoint consecutive pair.
    NotWalk { first: usize, second: usize },
    /// Walk but not a trail: interior `pair` shares two or more vertices.
    Walk { pair: (usize, usize), shared: VertexSet },
    /// Trail but not a chain: interior `pair` shares exactly one vertex.
    Trail { pair: (usize, usize), shared: VertexSet },
    /// Chain whose ends do not close into a cycle.
    OpenChain { reason: OpenReason },
    Cycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OpenReason {
    /// Ends of a sequence with three or more terms are disjoint.
    DisjointEndTerms,
    /// A two-term chain closes only if its terms differ.
    EqualEndTerms,
}

impl SeqClass {
    pub fn name(&self) -> &'static str {
        match self {
            SeqClass::NotWalk { .. } => "not_walk",
            SeqClass::Walk { .. } => "walk",
            SeqClass::Trail { .. } => "trail",
            SeqClass::OpenChain { .. } => "open_chain",
            SeqClass::Cycle => "cycle",
        }
    }

    /// Rank in the walk < trail < chain < cycle promotion order; NotWalk is 0.
    pub fn rank(&self) -> u8 {
        match self {
            SeqClass::NotWalk { .. } => 0,
            SeqClass::Walk { .. } => 1,
            SeqClass::Trail { .. } => 2,
            SeqClass::OpenChain { .. } => 3,
            SeqClass::Cycle => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Connectivity {
    Connected,
    /// Term indices reachable from term 0; the complement is the other side
    /// of the split.
    Disconnected { component: Vec<usize> },
}

/// Union of induced closed-neighbourhood subgraphs of the centers.
///
/// The vertex set is the union of the closed neighbourhoods; the edge set is
/// the union over centers of the edges inside each single closed
/// neighbourhood. Edges of the host graph joining vertices of the union that
/// lie in no common closed neighbourhood are not included.
#[derive(Debug, Clone)]
pub struct NsgGraph {
    pub graph: Graph,
    /// `original_ids[new] = id in the host graph`.
    pub original_ids: Vec<usize>,
    /// Per center: (center id, its closed neighbourhood in the host graph).
    pub provenance: Vec<(usize, VertexSet)>,
}

impl NsgGraph {
    pub fn is_connected(&self) -> bool {
        let n = self.graph.order();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = vec![0usize];
        seen[0] = true;
        while let Some(u) = queue.pop() {
            for v in self.graph.neighbors(u).iter() {
                if !seen[v] {
                    seen[v] = true;
                    queue.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Build the neighbourhood-sequence graph of `centers` inside `g`.
pub fn nsg(g: &Graph, centers: &[usize]) -> Result<NsgGraph, FamilyError> {
    let mut provenance = Vec::with_capacity(centers.len());
    let mut vertex_union = VertexSet::new();
    for &c in centers {
        if c >= g.order() {
            return Err(GraphError::VertexOutOfRange {
                id: c,
                order: g.order(),
            }
            .into());
        }
        let closed = g.closed_neighborhood(c);
        vertex_union = vertex_union.union(&closed);
        provenance.push((c, closed));
    }
    let original_ids: Vec<usize> = vertex_union.iter().collect();
    let index_of = |old: usize| original_ids.binary_search(&old).expect("member of union");
    let mut edges = Vec::new();
    for (_, closed) in &provenance {
        for u in closed.iter() {
            for v in closed.iter() {
                if u < v && g.has_edge(u, v) {
                    edges.push((index_of(u), index_of(v)));
                }
            }
        }
    }
    let mut graph = Graph::from_edge_list(original_ids.len(), &edges)?;
    for (new_id, &old_id) in original_ids.iter().enumerate() {
        if let Some(l) = g.label(old_id) {
            graph.set_label(new_id, l.clone());
        }
    }
    Ok(NsgGraph {
        graph,
        original_ids,
        provenance,
    })
}
