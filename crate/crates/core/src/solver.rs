//! Distance magic labelings: candidate constants, a pruned backtracking
//! solver, a brute-force oracle, and machine-checkable certificates of
//! non-magicness.
//!
//! A labeling assigns `1..=n` bijectively to the vertices; it is magic when
//! every open neighborhood sums to the same constant. Certificates come in
//! three kinds: a forbidden pair (two vertices sharing all but one
//! neighbor), an even-length type-1 chain (its telescoping label sums force
//! two distinct vertices to share a label), and exhaustion of all labelings.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chains::{find_even_t1, verify_t1, EvenSearch};
use crate::graph::Graph;

/// Default expansion budget for the chain stage of certification.
pub const DEFAULT_CHAIN_BUDGET: u64 = 1_000_000;
/// Default order cap for the exhaustive stage of certification.
pub const DEFAULT_ORACLE_CAP: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelingError {
    #[error("labels must be a permutation of 1..={n}")]
    NotPermutation { n: usize },
}

/// Bijective vertex labeling: position `v` holds `f(v)`, a permutation of
/// `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Labeling(Vec<usize>);

impl Labeling {
    pub fn new(labels: Vec<usize>) -> Result<Self, LabelingError> {
        let n = labels.len();
        let mut seen = vec![false; n + 1];
        for &l in &labels {
            if l == 0 || l > n || seen[l] {
                return Err(LabelingError::NotPermutation { n });
            }
            seen[l] = true;
        }
        Ok(Labeling(labels))
    }

    pub fn get(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl TryFrom<Vec<usize>> for Labeling {
    type Error = LabelingError;

    fn try_from(labels: Vec<usize>) -> Result<Self, LabelingError> {
        Labeling::new(labels)
    }
}

impl From<Labeling> for Vec<usize> {
    fn from(l: Labeling) -> Vec<usize> {
        l.0
    }
}

/// Verdict of a labeling search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MagicResult {
    Magic { constant: usize, labeling: Labeling },
    NotMagic,
}

impl MagicResult {
    pub fn is_magic(&self) -> bool {
        matches!(self, MagicResult::Magic { .. })
    }
}

/// Work counters from `solve`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Label choices tried across all branches.
    pub nodes: u64,
    /// Assignments made by unit propagation rather than branching.
    pub forced: u64,
    /// Candidate constants examined.
    pub constants_tried: usize,
}

/// The common open-neighborhood sum of `f` in `g`, or `None` when the sums
/// disagree or `f` has the wrong length.
pub fn verify_labeling(g: &Graph, f: &Labeling) -> Option<usize> {
    if f.len() != g.order() {
        return None;
    }
    let mut constant = None;
    for v in g.vertices() {
        let sum: usize = g.neighbors(v).iter().map(|u| f.get(u)).sum();
        match constant {
            None => constant = Some(sum),
            Some(c) if c != sum => return None,
            _ => {}
        }
    }
    constant.or(Some(0))
}

/// Lexicographically first pair `(u, v)` with `u < v` whose members share
/// all but one neighbor: `|N(u) ∩ N(v)| = deg(u) - 1 = deg(v) - 1`. Such a
/// pair rules out any magic labeling.
pub fn forbidden_pair(g: &Graph) -> Option<(usize, usize)> {
    for u in g.vertices() {
        let du = g.degree(u);
        if du == 0 {
            continue;
        }
        let nu = g.neighbors(u);
        for v in u + 1..g.order() {
            if g.degree(v) == du && nu.intersection(&g.neighbors(v)).len() == du - 1 {
                return Some((u, v));
            }
        }
    }
    None
}

/// Feasible magic constants, ascending. Combines per-vertex interval bounds
/// (a degree-`d` neighborhood sums to at least `1 + .. + d` and at most the
/// top `d` labels) with rearrangement bounds on `n * S = sum deg(v) * f(v)`.
/// For `r`-regular graphs this pins `S = r(n + 1) / 2` or proves emptiness.
pub fn candidate_constants(g: &Graph) -> Vec<usize> {
    let n = g.order();
    if n == 0 {
        return vec![0];
    }
    let mut lo = 0usize;
    let mut hi = usize::MAX;
    for v in g.vertices() {
        let d = g.degree(v);
        lo = lo.max(d * (d + 1) / 2);
        hi = hi.min(d * (2 * n - d + 1) / 2);
    }
    if lo > hi {
        return Vec::new();
    }
    let mut degs: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    degs.sort_unstable();
    let min_total: usize = degs.iter().rev().zip(1..=n).map(|(d, l)| d * l).sum();
    let max_total: usize = degs.iter().zip(1..=n).map(|(d, l)| d * l).sum();
    let s_lo = lo.max(min_total.div_ceil(n));
    let s_hi = hi.min(max_total / n);
    (s_lo..=s_hi).collect()
}

/// Decide magicness by brute force over all `n!` labelings in lexicographic
/// order, so a magic verdict carries the lexicographically least labeling.
/// Returns `None` when `g` has more than `cap` vertices.
pub fn solve_exhaustive(g: &Graph, cap: usize) -> Option<MagicResult> {
    let n = g.order();
    if n > cap {
        return None;
    }
    let adj = adjacency(g);
    let mut perm: Vec<usize> = (1..=n).collect();
    loop {
        if let Some(constant) = constant_sum(&adj, &perm) {
            let labeling = Labeling::new(perm).expect("permutations are labelings");
            return Some(MagicResult::Magic { constant, labeling });
        }
        if !next_permutation(&mut perm) {
            return Some(MagicResult::NotMagic);
        }
    }
}

fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    g.vertices()
        .map(|v| g.neighbors(v).as_slice().to_vec())
        .collect()
}

fn constant_sum(adj: &[Vec<usize>], f: &[usize]) -> Option<usize> {
    let mut constant = None;
    for nbrs in adj {
        let sum: usize = nbrs.iter().map(|&u| f[u]).sum();
        match constant {
            None => constant = Some(sum),
            Some(c) if c != sum => return None,
            _ => {}
        }
    }
    constant.or(Some(0))
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Decide magicness by backtracking over each candidate constant. On a magic
/// verdict the labeling is the lexicographically least one for the smallest
/// feasible constant. Honors `MAGICCHAINS_THREADS` by splitting candidate
/// constants across threads.
pub fn solve(g: &Graph) -> (MagicResult, SearchStats) {
    let n = g.order();
    let adj = adjacency(g);
    let candidates = candidate_constants(g);
    let mut stats = SearchStats::default();

    let threads = std::env::var("MAGICCHAINS_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .unwrap_or(1)
        .clamp(1, candidates.len().max(1));

    let magic_s = if threads >= 2 {
        let results: Vec<std::sync::Mutex<Option<(bool, u64, u64)>>> =
            candidates.iter().map(|_| std::sync::Mutex::new(None)).collect();
        std::thread::scope(|scope| {
            for t in 0..threads {
                let adj = &adj;
                let candidates = &candidates;
                let results = &results;
                scope.spawn(move || {
                    let mut i = t;
                    while i < candidates.len() {
                        let mut state = State::new(adj, n, candidates[i]);
                        let found = state.feasible() && state.search(Order::Adaptive);
                        *results[i].lock().unwrap() = Some((found, state.nodes, state.forced));
                        i += threads;
                    }
                });
            }
        });
        let mut magic = None;
        for (i, cell) in results.iter().enumerate() {
            let (found, nodes, forced) = cell.lock().unwrap().expect("every candidate was run");
            stats.nodes += nodes;
            stats.forced += forced;
            stats.constants_tried += 1;
            if found && magic.is_none() {
                magic = Some(candidates[i]);
            }
        }
        magic
    } else {
        let mut magic = None;
        for &s in &candidates {
            stats.constants_tried += 1;
            let mut state = State::new(&adj, n, s);
            let found = state.feasible() && state.search(Order::Adaptive);
            stats.nodes += state.nodes;
            stats.forced += state.forced;
            if found {
                magic = Some(s);
                break;
            }
        }
        magic
    };

    match magic_s {
        Some(s) => {
            // rerun in static vertex order for the lexicographically least labeling
            let mut state = State::new(&adj, n, s);
            let ok = state.feasible() && state.search(Order::Static);
            assert!(ok, "constant {s} was feasible in the first pass");
            stats.nodes += state.nodes;
            stats.forced += state.forced;
            let labeling = Labeling::new(state.label_of).expect("search assigns a permutation");
            (MagicResult::Magic { constant: s, labeling }, stats)
        }
        None => (MagicResult::NotMagic, stats),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Order {
    /// Most-constrained vertex first: fastest for the verdict.
    Adaptive,
    /// Vertex ids ascending: first solution found is lexicographically least.
    Static,
}

struct State<'a> {
    adj: &'a [Vec<usize>],
    n: usize,
    s: usize,
    /// Vertex to label; 0 means unassigned.
    label_of: Vec<usize>,
    used: Vec<bool>,
    /// Sum of assigned neighbor labels per vertex.
    partial: Vec<usize>,
    /// Unassigned neighbor count per vertex.
    remaining: Vec<usize>,
    assigned: usize,
    trail: Vec<usize>,
    nodes: u64,
    forced: u64,
}

impl<'a> State<'a> {
    fn new(adj: &'a [Vec<usize>], n: usize, s: usize) -> Self {
        State {
            adj,
            n,
            s,
            label_of: vec![0; n],
            used: vec![false; n + 1],
            partial: vec![0; n],
            remaining: (0..n).map(|v| adj[v].len()).collect(),
            assigned: 0,
            trail: Vec::with_capacity(n),
            nodes: 0,
            forced: 0,
        }
    }

    fn min_unused_sum(&self, k: usize) -> usize {
        let mut sum = 0;
        let mut taken = 0;
        for l in 1..=self.n {
            if taken == k {
                break;
            }
            if !self.used[l] {
                sum += l;
                taken += 1;
            }
        }
        sum
    }

    fn max_unused_sum(&self, k: usize) -> usize {
        let mut sum = 0;
        let mut taken = 0;
        for l in (1..=self.n).rev() {
            if taken == k {
                break;
            }
            if !self.used[l] {
                sum += l;
                taken += 1;
            }
        }
        sum
    }

    /// Scan every neighborhood constraint; returns false on a violation and
    /// otherwise queues unit-forced assignments.
    fn scan(&self, queue: &mut Vec<(usize, usize)>) -> bool {
        for u in 0..self.n {
            if self.partial[u] > self.s {
                return false;
            }
            let needed = self.s - self.partial[u];
            match self.remaining[u] {
                0 => {
                    if needed != 0 {
                        return false;
                    }
                }
                1 => {
                    if needed == 0 || needed > self.n || self.used[needed] {
                        return false;
                    }
                    let w = self.adj[u]
                        .iter()
                        .copied()
                        .find(|&w| self.label_of[w] == 0)
                        .expect("remaining count says one neighbor is unassigned");
                    queue.push((w, needed));
                }
                k => {
                    if needed < self.min_unused_sum(k) || needed > self.max_unused_sum(k) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn feasible(&self) -> bool {
        let mut queue = Vec::new();
        // vertex count never exceeds the label pool at the root
        self.scan(&mut queue)
    }

    /// Assign `f(v) = l`, run unit propagation to a fixed point, and report
    /// consistency. Forced assignments land on the trail for undo.
    fn assign(&mut self, v: usize, l: usize) -> bool {
        let mut queue = vec![(v, l)];
        let mut first = true;
        while let Some((v, l)) = queue.pop() {
            if self.label_of[v] != 0 {
                if self.label_of[v] == l {
                    continue;
                }
                return false;
            }
            if self.used[l] {
                return false;
            }
            if !first {
                self.forced += 1;
            }
            first = false;
            self.label_of[v] = l;
            self.used[l] = true;
            self.assigned += 1;
            self.trail.push(v);
            for &u in &self.adj[v] {
                self.partial[u] += l;
                self.remaining[u] -= 1;
            }
            queue.clear();
            if !self.scan(&mut queue) {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail length checked");
            let l = self.label_of[v];
            self.label_of[v] = 0;
            self.used[l] = false;
            self.assigned -= 1;
            for &u in &self.adj[v] {
                self.partial[u] -= l;
                self.remaining[u] += 1;
            }
        }
    }

    fn pick(&self, order: Order) -> usize {
        match order {
            Order::Static => (0..self.n)
                .find(|&v| self.label_of[v] == 0)
                .expect("called with unassigned vertices left"),
            Order::Adaptive => {
                let mut best = usize::MAX;
                let mut best_key = (0usize, 0usize);
                for v in 0..self.n {
                    if self.label_of[v] != 0 {
                        continue;
                    }
                    let labeled_nbrs = self.adj[v]
                        .iter()
                        .filter(|&&u| self.label_of[u] != 0)
                        .count();
                    let key = (labeled_nbrs, self.adj[v].len());
                    if best == usize::MAX || key > best_key {
                        best = v;
                        best_key = key;
                    }
                }
                best
            }
        }
    }

    fn search(&mut self, order: Order) -> bool {
        if self.assigned == self.n {
            return true;
        }
        let v = self.pick(order);
        for l in 1..=self.n {
            if self.used[l] {
                continue;
            }
            self.nodes += 1;
            let mark = self.trail.len();
            if self.assign(v, l) && self.search(order) {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// A reason no magic labeling exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Two vertices of equal degree sharing all but one neighbor.
    ForbiddenPair { u: usize, v: usize },
    /// Even-length type-1 chain; telescoping its neighborhood sums under any
    /// magic labeling forces `f(v_first) = f(v_last)`.
    EvenChain {
        centers: Vec<usize>,
        v_first: usize,
        v_last: usize,
    },
    /// All labelings of a graph of this order were enumerated.
    Exhausted { order: usize },
}

/// Re-derive a certificate from the graph alone.
pub fn check_certificate(g: &Graph, cert: &Certificate) -> bool {
    match cert {
        Certificate::ForbiddenPair { u, v } => {
            let (u, v) = (*u, *v);
            u != v
                && u < g.order()
                && v < g.order()
                && g.degree(u) >= 1
                && g.degree(u) == g.degree(v)
                && g.neighbors(u).intersection(&g.neighbors(v)).len() == g.degree(u) - 1
        }
        Certificate::EvenChain {
            centers,
            v_first,
            v_last,
        } => {
            centers.len() % 2 == 0
                && verify_t1(g, centers)
                    .is_ok_and(|c| c.v_first == *v_first && c.v_last == *v_last)
        }
        Certificate::Exhausted { order } => {
            *order == g.order()
                && matches!(solve_exhaustive(g, *order), Some(MagicResult::NotMagic))
        }
    }
}

/// Outcome of certification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CertifyOutcome {
    /// No magic labeling exists; the certificate says why.
    NotMagic { certificate: Certificate },
    /// A magic labeling was found, so no certificate can exist.
    Magic { constant: usize, labeling: Labeling },
    /// Every enabled method came up empty within its budget.
    Inconclusive,
}

/// One certification method, tried in the order given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertifyMethod {
    ForbiddenPair,
    EvenChain,
    Exhaustive,
}

impl CertifyMethod {
    pub const ALL: [CertifyMethod; 3] = [
        CertifyMethod::ForbiddenPair,
        CertifyMethod::EvenChain,
        CertifyMethod::Exhaustive,
    ];
}

/// Try forbidden pairs, then even chains, then exhaustion (graphs of order
/// at most `oracle_cap` only).
pub fn certify_ndm(g: &Graph, oracle_cap: usize) -> CertifyOutcome {
    certify_ndm_with(g, &CertifyMethod::ALL, DEFAULT_CHAIN_BUDGET, oracle_cap)
}

/// `certify_ndm` restricted to the given methods.
pub fn certify_ndm_with(
    g: &Graph,
    methods: &[CertifyMethod],
    chain_budget: u64,
    oracle_cap: usize,
) -> CertifyOutcome {
    for method in methods {
        match method {
            CertifyMethod::ForbiddenPair => {
                if let Some((u, v)) = forbidden_pair(g) {
                    return CertifyOutcome::NotMagic {
                        certificate: Certificate::ForbiddenPair { u, v },
                    };
                }
            }
            CertifyMethod::EvenChain => {
                if let EvenSearch::Found(chain) = find_even_t1(g, chain_budget) {
                    return CertifyOutcome::NotMagic {
                        certificate: Certificate::EvenChain {
                            centers: chain.centers,
                            v_first: chain.v_first,
                            v_last: chain.v_last,
                        },
                    };
                }
            }
            CertifyMethod::Exhaustive => {
                if let Some(result) = solve_exhaustive(g, oracle_cap) {
                    return match result {
                        MagicResult::Magic { constant, labeling } => {
                            CertifyOutcome::Magic { constant, labeling }
                        }
                        MagicResult::NotMagic => CertifyOutcome::NotMagic {
                            certificate: Certificate::Exhausted { order: g.order() },
                        },
                    };
                }
            }
        }
    }
    CertifyOutcome::Inconclusive
}
