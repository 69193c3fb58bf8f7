//! Rational weightings with equal term sums.
//!
//! Relaxing labels to rationals turns "every term sums to the same value"
//! into a homogeneous linear system over the term union. Sampling its
//! solution space shows which label equalities a chain forces: even-length
//! chains always tie their two endpoint vertices together, odd-length ones
//! do not.

use num::rational::BigRational;
use num::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::VertexSet;

/// Rational weights on a fixed sorted vertex set. Vertices outside the set
/// weigh zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weighting {
    vertices: Vec<usize>,
    values: Vec<BigRational>,
}

impl Weighting {
    fn new(vertices: Vec<usize>, values: Vec<BigRational>) -> Self {
        assert_eq!(vertices.len(), values.len());
        Weighting { vertices, values }
    }

    /// Weight one on every vertex of `support`.
    pub fn ones(support: &VertexSet) -> Self {
        Weighting::new(
            support.iter().collect(),
            support.iter().map(|_| BigRational::one()).collect(),
        )
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn value(&self, v: usize) -> Option<&BigRational> {
        self.vertices
            .binary_search(&v)
            .ok()
            .map(|i| &self.values[i])
    }

    pub fn sum_over(&self, set: &VertexSet) -> BigRational {
        set.iter()
            .filter_map(|v| self.value(v))
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    /// Do all terms sum to the same value under this weighting?
    pub fn equal_sums(&self, terms: &[VertexSet]) -> bool {
        let mut sums = terms.iter().map(|t| self.sum_over(t));
        match sums.next() {
            None => true,
            Some(first) => sums.all(|s| s == first),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|x| x.is_zero())
    }
}

fn union(terms: &[VertexSet]) -> VertexSet {
    terms
        .iter()
        .fold(VertexSet::new(), |acc, t| acc.union(t))
}

/// Coefficient rows of the consecutive-difference system: row `i` encodes
/// `sum(N_i) - sum(N_{i+1}) = 0` over the union's variables.
fn difference_rows(terms: &[VertexSet], vars: &[usize]) -> Vec<Vec<BigRational>> {
    let mut rows = Vec::new();
    for pair in terms.windows(2) {
        let row = vars
            .iter()
            .map(|&v| {
                let a = i64::from(pair[0].contains(v));
                let b = i64::from(pair[1].contains(v));
                BigRational::from_integer((a - b).into())
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Basis of the nullspace of `rows` (Gauss-Jordan over the rationals), one
/// vector per free column.
fn nullspace(mut rows: Vec<Vec<BigRational>>, cols: usize) -> Vec<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].clone();
        for x in &mut rows[r] {
            *x = &*x / &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..cols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] = &rows[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut vec = vec![BigRational::zero(); cols];
        vec[free] = BigRational::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            vec[pc] = -rows[ri][free].clone();
        }
        basis.push(vec);
    }
    basis
}

/// Draw `count` weightings with equal term sums by combining nullspace basis
/// vectors with small random integer coefficients. Deterministic in `seed`.
pub fn sample_equal_sum_weightings(terms: &[VertexSet], count: usize, seed: u64) -> Vec<Weighting> {
    let vars: Vec<usize> = union(terms).iter().collect();
    let basis = nullspace(difference_rows(terms, &vars), vars.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut values = vec![BigRational::zero(); vars.len()];
            for b in &basis {
                let c = BigRational::from_integer(rng.gen_range(-9i64..=9).into());
                for (acc, x) in values.iter_mut().zip(b) {
                    *acc = &*acc + &(&c * x);
                }
            }
            Weighting::new(vars.clone(), values)
        })
        .collect()
}

/// Dimension of the equal-sum solution space.
pub fn equal_sum_nullity(terms: &[VertexSet]) -> usize {
    let vars: Vec<usize> = union(terms).iter().collect();
    nullspace(difference_rows(terms, &vars), vars.len()).len()
}
