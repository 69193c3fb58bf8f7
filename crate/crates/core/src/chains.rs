//! Type-1 and type-2 neighbourhood chains: verification and budgeted search.
//!
//! A type-1 chain is a list of centers whose open neighbourhoods form a
//! neighbourhood chain with tightly controlled consecutive differences; its
//! two end differences are singletons (`v_first`, `v_last`). A type-2 chain
//! is a pair of equal-length type-1 chains whose terms interlock.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::nbh::NbhFamily;

/// Verified type-1 chain witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainT1 {
    pub centers: Vec<usize>,
    /// Open neighbourhoods of the centers, in order.
    pub terms: Vec<VertexSet>,
    /// Unique element of `N_1 \ N_2`.
    pub v_first: usize,
    /// Unique element of `N_n \ N_{n-1}`.
    pub v_last: usize,
}

impl ChainT1 {
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn term_union(&self) -> VertexSet {
        let mut u = VertexSet::new();
        for t in &self.terms {
            u = u.union(t);
        }
        u
    }

    /// Vertices of the chain's neighbourhood-sequence graph: centers plus
    /// every term element.
    pub fn nsg_vertices(&self) -> VertexSet {
        self.term_union()
            .union(&VertexSet::from_iter(self.centers.iter().copied()))
    }

    pub fn family(&self) -> NbhFamily {
        NbhFamily::from_sets(
            self.terms
                .iter()
                .flat_map(|t| t.iter())
                .max()
                .map_or(0, |m| m + 1),
            self.terms.clone(),
        )
        .expect("verified chain terms are nonempty")
    }
}

/// Why a center list fails type-1 verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum T1Rejection {
    TooFewCenters {
        got: usize,
    },
    InvalidCenter {
        id: usize,
    },
    DuplicateCenter {
        id: usize,
    },
    IsolatedCenter {
        id: usize,
    },
    /// The term sequence is not a neighbourhood chain. `detail` is the
    /// classifier's name for what it is instead.
    NotChain {
        detail: String,
    },
    /// A center occurs inside some term (1-based term position).
    CenterInTerms {
        center: usize,
        term: usize,
    },
    /// `N_1 \ N_2` (side `first`) or `N_n \ N_{n-1}` (side `last`) is not a
    /// singleton.
    EndDifferenceNotSingleton {
        side: EndSide,
        difference: VertexSet,
    },
    EndpointsEqual {
        v: usize,
    },
    /// `N_{i+1} \ N_i` is not contained in `N_{i+2}` (1-based `i`).
    DifferenceNotNested {
        i: usize,
        missing: VertexSet,
    },
    /// `N_i \ N_{i+1}` or `N_{i+1} \ N_i` is empty (1-based `i`).
    EmptyDifference {
        i: usize,
        side: EndSide,
    },
    /// The term union has fewer than `needed` vertices.
    UniverseTooSmall {
        size: usize,
        needed: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndSide {
    First,
    Last,
}

/// Check the type-1 chain conditions for `centers` in `g`.
pub fn verify_t1(g: &Graph, centers: &[usize]) -> Result<ChainT1, T1Rejection> {
    let n = centers.len();
    if n < 2 {
        return Err(T1Rejection::TooFewCenters { got: n });
    }
    let mut seen = std::collections::BTreeSet::new();
    for &c in centers {
        if c >= g.order() {
            return Err(T1Rejection::InvalidCenter { id: c });
        }
        if !seen.insert(c) {
            return Err(T1Rejection::DuplicateCenter { id: c });
        }
        if g.degree(c) == 0 {
            return Err(T1Rejection::IsolatedCenter { id: c });
        }
    }
    let terms: Vec<VertexSet> = centers.iter().map(|&c| g.neighbors(c)).collect();

    let family = NbhFamily::from_sets(g.order(), terms.clone())
        .expect("terms of non-isolated centers are nonempty");
    if !family.is_chain() {
        return Err(T1Rejection::NotChain {
            detail: family.classify().name().to_string(),
        });
    }

    for (idx, t) in terms.iter().enumerate() {
        if let Some(&c) = centers.iter().find(|&&c| t.contains(c)) {
            return Err(T1Rejection::CenterInTerms {
                center: c,
                term: idx + 1,
            });
        }
    }

    let first_diff = terms[0].difference(&terms[1]);
    let v_first = first_diff.single().ok_or(T1Rejection::EndDifferenceNotSingleton {
        side: EndSide::First,
        difference: first_diff.clone(),
    })?;
    let last_diff = terms[n - 1].difference(&terms[n - 2]);
    let v_last = last_diff.single().ok_or(T1Rejection::EndDifferenceNotSingleton {
        side: EndSide::Last,
        difference: last_diff.clone(),
    })?;
    if v_first == v_last {
        return Err(T1Rejection::EndpointsEqual { v: v_first });
    }

    for i in 0..n - 1 {
        if terms[i].difference(&terms[i + 1]).is_empty() {
            return Err(T1Rejection::EmptyDifference {
                i: i + 1,
                side: EndSide::First,
            });
        }
        if terms[i + 1].difference(&terms[i]).is_empty() {
            return Err(T1Rejection::EmptyDifference {
                i: i + 1,
                side: EndSide::Last,
            });
        }
    }

    for i in 0..n.saturating_sub(2) {
        let forward = terms[i + 1].difference(&terms[i]);
        if !forward.is_subset(&terms[i + 2]) {
            return Err(T1Rejection::DifferenceNotNested {
                i: i + 1,
                missing: forward.difference(&terms[i + 2]),
            });
        }
    }

    let union = family.term_union();
    if union.len() < n + 1 {
        return Err(T1Rejection::UniverseTooSmall {
            size: union.len(),
            needed: n + 1,
        });
    }

    Ok(ChainT1 {
        centers: centers.to_vec(),
        terms,
        v_first,
        v_last,
    })
}

/// Verified type-2 chain witness: two interlocking type-1 chains of equal
/// length plus the nonempty intersection sets tying them together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T2Pair {
    pub first: ChainT1,
    pub second: ChainT1,
    /// `A_1 ∩ A_2 ∩ B_1`, which must equal `B_1 \ B_2`.
    pub start_witness: VertexSet,
    /// `A_n ∩ B_n ∩ B_{n-1}`, which must equal `A_n \ A_{n-1}`.
    pub end_witness: VertexSet,
    /// `A_i ∩ A_{i+1} ∩ B_i ∩ B_{i-1}` for `i = 2..=n-1` (1-based).
    pub middle_witnesses: Vec<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum T2Rejection {
    FirstChain { rejection: T1Rejection },
    SecondChain { rejection: T1Rejection },
    LengthMismatch { first: usize, second: usize },
    /// The start condition `A_1 ∩ A_2 ∩ B_1 = B_1 \ B_2 ≠ ∅` failed.
    StartCondition { lhs: VertexSet, rhs: VertexSet },
    /// The end condition `A_n ∩ B_n ∩ B_{n-1} = A_n \ A_{n-1} ≠ ∅` failed.
    EndCondition { lhs: VertexSet, rhs: VertexSet },
    /// `A_i ∩ A_{i+1} ∩ B_i ∩ B_{i-1}` is empty (1-based `i`).
    MiddleCondition { i: usize },
}

/// Check the type-2 conditions for two center lists in `g`.
pub fn verify_t2(
    g: &Graph,
    first_centers: &[usize],
    second_centers: &[usize],
) -> Result<T2Pair, T2Rejection> {
    let first = verify_t1(g, first_centers).map_err(|rejection| T2Rejection::FirstChain { rejection })?;
    let second =
        verify_t1(g, second_centers).map_err(|rejection| T2Rejection::SecondChain { rejection })?;
    if first.len() != second.len() {
        return Err(T2Rejection::LengthMismatch {
            first: first.len(),
            second: second.len(),
        });
    }
    let n = first.len();
    let a = &first.terms;
    let b = &second.terms;

    let start_lhs = a[0].intersection(&a[1]).intersection(&b[0]);
    let start_rhs = b[0].difference(&b[1]);
    if start_lhs.is_empty() || start_lhs != start_rhs {
        return Err(T2Rejection::StartCondition {
            lhs: start_lhs,
            rhs: start_rhs,
        });
    }

    let end_lhs = a[n - 1].intersection(&b[n - 1]).intersection(&b[n - 2]);
    let end_rhs = a[n - 1].difference(&a[n - 2]);
    if end_lhs.is_empty() || end_lhs != end_rhs {
        return Err(T2Rejection::EndCondition {
            lhs: end_lhs,
            rhs: end_rhs,
        });
    }

    let mut middle_witnesses = Vec::new();
    for i in 2..n {
        // 1-based i in 2..=n-1; 0-based: a[i-1] ∩ a[i] ∩ b[i-1] ∩ b[i-2]
        let w = a[i - 1]
            .intersection(&a[i])
            .intersection(&b[i - 1])
            .intersection(&b[i - 2]);
        if w.is_empty() {
            return Err(T2Rejection::MiddleCondition { i });
        }
        middle_witnesses.push(w);
    }

    Ok(T2Pair {
        first,
        second,
        start_witness: start_lhs,
        end_witness: end_lhs,
        middle_witnesses,
    })
}

/// Result of a budgeted chain search.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Chains found, canonical orientation only (a chain and its reversal
    /// count once), in lexicographic center order.
    pub chains: Vec<ChainT1>,
    /// True when the search space was fully explored within budget.
    pub complete: bool,
    /// Extension attempts spent.
    pub expansions: u64,
}

/// Find type-1 chains with `length` centers by depth-first search over center
/// tuples with prefix pruning. `budget` caps extension attempts; `limit`
/// stops after that many chains (`None` collects all).
pub fn find_t1(g: &Graph, length: usize, budget: u64, limit: Option<usize>) -> SearchOutcome {
    let mut state = Search {
        g,
        length,
        budget,
        limit,
        expansions: 0,
        chains: Vec::new(),
        prefix: Vec::new(),
        terms: Vec::new(),
        truncated: false,
    };
    if length >= 2 {
        state.descend();
    }
    SearchOutcome {
        chains: state.chains,
        complete: !state.truncated,
        expansions: state.expansions,
    }
}

struct Search<'a> {
    g: &'a Graph,
    length: usize,
    budget: u64,
    limit: Option<usize>,
    expansions: u64,
    chains: Vec<ChainT1>,
    prefix: Vec<usize>,
    terms: Vec<VertexSet>,
    truncated: bool,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.truncated || self.limit.is_some_and(|l| self.chains.len() >= l)
    }

    fn descend(&mut self) {
        if self.done() {
            return;
        }
        for c in 0..self.g.order() {
            if self.done() {
                return;
            }
            if self.expansions >= self.budget {
                self.truncated = true;
                return;
            }
            self.expansions += 1;
            if !self.admissible(c) {
                continue;
            }
            self.prefix.push(c);
            self.terms.push(self.g.neighbors(c));
            if self.prefix.len() == self.length {
                self.emit();
            } else {
                self.descend();
            }
            self.prefix.pop();
            self.terms.pop();
        }
    }

    /// Prefix-closed admissibility of `c` as the next center. Conditions only
    /// expressible on the full tuple (last end difference, universe size,
    /// distinct endpoints) are left to final verification.
    fn admissible(&self, c: usize) -> bool {
        let m = self.prefix.len(); // index the new center would take
        if self.prefix.contains(&c) || self.g.degree(c) == 0 {
            return false;
        }
        let term = self.g.neighbors(c);
        if m == 0 {
            return true;
        }
        // walk on the new consecutive pair
        if term.is_disjoint(&self.terms[m - 1]) {
            return false;
        }
        // interior disjointness: pair (i, m) is interior in the final tuple
        // unless i = 0 and m is the final index
        for i in 0..m.saturating_sub(1) {
            if i == 0 && m == self.length - 1 {
                continue;
            }
            if !term.is_disjoint(&self.terms[i]) {
                return false;
            }
        }
        // centers never inside terms
        if self.terms.iter().any(|t| t.contains(c)) {
            return false;
        }
        if term.contains(c) {
            return false; // unreachable in simple graphs; keep the guard cheap
        }
        if self.prefix.iter().any(|&p| term.contains(p)) {
            return false;
        }
        // nonempty one-sided differences on the new consecutive pair
        if self.terms[m - 1].difference(&term).is_empty() || term.difference(&self.terms[m - 1]).is_empty()
        {
            return false;
        }
        // singleton first difference, checkable once two terms exist
        if m == 1 && self.terms[0].difference(&term).len() != 1 {
            return false;
        }
        // nesting N_{m-1} \ N_{m-2} ⊆ N_m (0-based terms m-2, m-1, new)
        if m >= 2 && !self.terms[m - 1].difference(&self.terms[m - 2]).is_subset(&term) {
            return false;
        }
        true
    }

    fn emit(&mut self) {
        // canonical orientation: skip tuples lexicographically above their reversal
        let rev: Vec<usize> = self.prefix.iter().rev().copied().collect();
        if self.prefix.as_slice() > rev.as_slice() {
            return;
        }
        if let Ok(chain) = verify_t1(self.g, &self.prefix) {
            self.chains.push(chain);
        }
    }
}

/// Outcome of searching for an even-length type-1 chain.
#[derive(Debug, Clone)]
pub enum EvenSearch {
    Found(ChainT1),
    /// No even-length chain exists; every admissible length was exhausted.
    NoneExhausted { expansions: u64 },
    /// Budget ran out before exhaustion.
    BudgetExhausted { expansions: u64 },
}

impl EvenSearch {
    pub fn found(&self) -> Option<&ChainT1> {
        match self {
            EvenSearch::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Search even lengths in increasing order. A chain with `n` centers needs
/// `n` centers plus at least `n + 1` term vertices, all distinct, so lengths
/// beyond `(|V| - 1) / 2` cannot exist and the search is a complete decision
/// procedure when the budget suffices.
pub fn find_even_t1(g: &Graph, budget: u64) -> EvenSearch {
    let mut spent = 0u64;
    let mut length = 2usize;
    while 2 * length + 1 <= g.order() {
        let outcome = find_t1(g, length, budget - spent, Some(1));
        spent += outcome.expansions;
        if let Some(chain) = outcome.chains.into_iter().next() {
            return EvenSearch::Found(chain);
        }
        if !outcome.complete {
            return EvenSearch::BudgetExhausted { expansions: spent };
        }
        length += 2;
    }
    EvenSearch::NoneExhausted { expansions: spent }
}

/// Difference identities satisfied by a verified type-1 chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceIdentities {
    /// For each 1-based `i` with `N_i ∩ N_{i+2} = ∅`: the common value of
    /// `N_{i+1} \ N_i` and `N_{i+1} ∩ N_{i+2}`.
    pub forward: Vec<(usize, VertexSet)>,
    /// Indices `i` where `N_i ∩ N_{i+2} ≠ ∅` (possible only for the exempt
    /// end pair of a three-term chain), skipped by `forward`.
    pub skipped: Vec<usize>,
}

/// Check, for a verified chain, that each consecutive difference is the next
/// consecutive intersection: `N_{i+1} \ N_i = N_{i+1} ∩ N_{i+2}` whenever
/// `N_i` and `N_{i+2}` are disjoint, and that each term splits as
/// `(N_i \ N_{i+1}) ⊔ (N_i ∩ N_{i+1})`.
///
/// Returns `None` if some identity fails (impossible for verified chains).
pub fn difference_identities(chain: &ChainT1) -> Option<DifferenceIdentities> {
    let terms = &chain.terms;
    let n = terms.len();
    let mut forward = Vec::new();
    let mut skipped = Vec::new();
    for i in 0..n.saturating_sub(2) {
        if !terms[i].is_disjoint(&terms[i + 2]) {
            skipped.push(i + 1);
            continue;
        }
        let diff = terms[i + 1].difference(&terms[i]);
        let inter = terms[i + 1].intersection(&terms[i + 2]);
        if diff != inter {
            return None;
        }
        forward.push((i + 1, diff));
    }
    for i in 0..n.saturating_sub(1) {
        let split = terms[i]
            .difference(&terms[i + 1])
            .union(&terms[i].intersection(&terms[i + 1]));
        if split != terms[i] {
            return None;
        }
    }
    Some(DifferenceIdentities { forward, skipped })
}
