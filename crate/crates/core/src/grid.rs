//! Diagonal chain constructions in cylindrical grids.
//!
//! In the `k x n` cylindrical grid a diagonal of centers, one per row with
//! the column advancing by one step per row, always carries a type-1 chain.
//! Two such diagonals two columns apart interlock into a type-2 pair. These
//! constructions work for every `k >= 2` and `n >= 3`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chains::{verify_t1, verify_t2, ChainT1, T2Pair};
use crate::graph::{grid_vertex_id, wrap_col, Graph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("diagonal constructions need at least two rows, got {0}")]
    TooFewRows(usize),
    #[error("cylindrical grids need at least three columns, got {0}")]
    TooFewCols(usize),
    #[error("start column {start_col} outside 1..={n}")]
    StartColOutOfRange { start_col: usize, n: usize },
    #[error("graph is not the {k} x {n} cylindrical grid")]
    WrongGraph { k: usize, n: usize },
}

/// One diagonal in the `k x n` cylindrical grid: the center for row `i`
/// sits in column `start_col + i - 1` (mod `n`, columns `1..=n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridChainSpec {
    pub k: usize,
    pub n: usize,
    pub start_col: usize,
}

impl GridChainSpec {
    pub fn new(k: usize, n: usize, start_col: usize) -> Result<Self, GridError> {
        if k < 2 {
            return Err(GridError::TooFewRows(k));
        }
        if n < 3 {
            return Err(GridError::TooFewCols(n));
        }
        if start_col == 0 || start_col > n {
            return Err(GridError::StartColOutOfRange { start_col, n });
        }
        Ok(GridChainSpec { k, n, start_col })
    }

    /// Center ids in row order.
    pub fn centers(&self) -> Vec<usize> {
        (1..=self.k)
            .map(|i| {
                let col = wrap_col(self.n, (self.start_col + i - 1) as i64);
                grid_vertex_id(self.n, i, col)
            })
            .collect()
    }

    fn require_grid(&self, g: &Graph) -> Result<(), GridError> {
        if g.grid_dims() != Some((self.k, self.n)) {
            return Err(GridError::WrongGraph { k: self.k, n: self.n });
        }
        Ok(())
    }
}

/// The chain's end sets: `N_1 \ N_2` lies in row 1 one column before the
/// diagonal, `N_k \ N_{k-1}` in row `k` one column past it.
pub fn chain_end_sets(spec: &GridChainSpec) -> (VertexSet, VertexSet) {
    let first_col = wrap_col(spec.n, spec.start_col as i64 - 1);
    let last_col = wrap_col(spec.n, (spec.start_col + spec.k) as i64);
    (
        VertexSet::from_iter([grid_vertex_id(spec.n, 1, first_col)]),
        VertexSet::from_iter([grid_vertex_id(spec.n, spec.k, last_col)]),
    )
}

/// Verify the diagonal of `spec` as a type-1 chain in `g`, which must be the
/// matching cylindrical grid.
pub fn diagonal_chain(g: &Graph, spec: &GridChainSpec) -> Result<ChainT1, GridError> {
    spec.require_grid(g)?;
    // sound for every k >= 2, n >= 3: each consecutive difference lands in
    // the next neighborhood and both end differences are singletons
    Ok(verify_t1(g, &spec.centers()).expect("grid diagonals always verify"))
}

/// Build the `k x n` cylindrical grid together with its verified type-2
/// pair: the diagonals starting in columns 1 and 3.
pub fn construct_t2(k: usize, n: usize) -> Result<(Graph, T2Pair), GridError> {
    let first = GridChainSpec::new(k, n, 1)?;
    let second = GridChainSpec::new(k, n, 3)?;
    let g = Graph::cylindrical_grid(k, n).expect("dimensions validated above");
    let pair = verify_t2(&g, &first.centers(), &second.centers())
        .expect("diagonals two columns apart always interlock");
    Ok((g, pair))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_centers_walk_the_diagonal() {
        let spec = GridChainSpec::new(4, 3, 1).unwrap();
        assert_eq!(spec.centers(), vec![0, 4, 8, 9]);
        let spec = GridChainSpec::new(3, 5, 3).unwrap();
        assert_eq!(spec.centers(), vec![2, 8, 14]);
    }

    #[test]
    fn spec_rejects_bad_dimensions() {
        assert_eq!(GridChainSpec::new(1, 5, 1), Err(GridError::TooFewRows(1)));
        assert_eq!(GridChainSpec::new(3, 2, 1), Err(GridError::TooFewCols(2)));
        assert_eq!(
            GridChainSpec::new(3, 5, 6),
            Err(GridError::StartColOutOfRange { start_col: 6, n: 5 })
        );
        assert_eq!(
            GridChainSpec::new(3, 5, 0),
            Err(GridError::StartColOutOfRange { start_col: 0, n: 5 })
        );
    }

    #[test]
    fn diagonal_matches_end_sets() {
        let spec = GridChainSpec::new(4, 3, 1).unwrap();
        let g = Graph::cylindrical_grid(4, 3).unwrap();
        let chain = diagonal_chain(&g, &spec).unwrap();
        let (first, last) = chain_end_sets(&spec);
        assert_eq!(first, VertexSet::from_iter([chain.v_first]));
        assert_eq!(last, VertexSet::from_iter([chain.v_last]));
        assert_eq!(chain.v_first, grid_vertex_id(3, 1, 3));
        assert_eq!(chain.v_last, grid_vertex_id(3, 4, 2));
    }

    #[test]
    fn end_sets_for_the_3_by_5_second_diagonal() {
        let spec = GridChainSpec::new(3, 5, 3).unwrap();
        let (first, last) = chain_end_sets(&spec);
        assert_eq!(first, VertexSet::from_iter([grid_vertex_id(5, 1, 2)]));
        assert_eq!(last, VertexSet::from_iter([grid_vertex_id(5, 3, 1)]));
    }

    #[test]
    fn diagonal_rejects_foreign_graphs() {
        let spec = GridChainSpec::new(3, 5, 1).unwrap();
        let c6 = Graph::cycle(6).unwrap();
        assert_eq!(
            diagonal_chain(&c6, &spec),
            Err(GridError::WrongGraph { k: 3, n: 5 })
        );
        let other = Graph::cylindrical_grid(3, 4).unwrap();
        assert_eq!(
            diagonal_chain(&other, &spec),
            Err(GridError::WrongGraph { k: 3, n: 5 })
        );
    }

    #[test]
    fn rotation_shifts_the_endpoints() {
        let g = Graph::cylindrical_grid(3, 5).unwrap();
        for s in 1..=5 {
            let spec = GridChainSpec::new(3, 5, s).unwrap();
            let chain = diagonal_chain(&g, &spec).unwrap();
            assert_eq!(
                chain.v_first,
                grid_vertex_id(5, 1, wrap_col(5, s as i64 - 1))
            );
            assert_eq!(
                chain.v_last,
                grid_vertex_id(5, 3, wrap_col(5, s as i64 + 3))
            );
        }
    }

    #[test]
    fn t2_construction_in_the_smallest_grid() {
        let (g, pair) = construct_t2(2, 3).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(pair.first.centers, vec![0, 4]);
        assert_eq!(pair.second.centers, vec![2, 3]);
        assert_eq!(pair.start_witness, VertexSet::from_iter([1]));
        assert_eq!(pair.end_witness, VertexSet::from_iter([5]));
        assert!(pair.middle_witnesses.is_empty());
    }

    #[test]
    fn t2_construction_sweep() {
        for k in 2..=5 {
            for n in 3..=7 {
                let (g, pair) = construct_t2(k, n).unwrap();
                assert_eq!(g.order(), k * n, "k={k} n={n}");
                assert_eq!(pair.first.len(), k);
                assert_eq!(pair.middle_witnesses.len(), k.saturating_sub(2));
            }
        }
    }
}
