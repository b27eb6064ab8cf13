//! Transition matrices of graph maps and their exact spectral data.

mod matrix;
mod poly;
mod roots;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::graphmap::GraphMap;

pub use matrix::IntMatrix;
pub use poly::{IntPolynomial, PolyParseError};
pub use roots::{cauchy_bound, perron_root, to_decimal, RationalInterval, RootError, Rounding, SturmChain};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("matrix is reducible")]
    Reducible,
}

/// Unsigned crossing counts: entry `(i, j)` is the number of times the image
/// of edge `j` crosses edge `i`, in either direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    labels: Vec<String>,
    matrix: IntMatrix,
}

/// Crossing counts weighted by orientation: the abelianised map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedTransitionMatrix {
    labels: Vec<String>,
    matrix: IntMatrix,
}

fn crossing_matrix(map: &GraphMap, signed: bool) -> IntMatrix {
    let m = map.graph().edge_count();
    let mut matrix = IntMatrix::zeros(m);
    for (j, image) in map.images().iter().enumerate() {
        for l in image.iter() {
            let w = if signed { i64::from(l.sign()) } else { 1 };
            *matrix.get_mut(l.edge.index(), j) += w;
        }
    }
    matrix
}

pub fn transition_matrix(map: &GraphMap) -> TransitionMatrix {
    TransitionMatrix { labels: map.alphabet().names().to_vec(), matrix: crossing_matrix(map, false) }
}

pub fn signed_transition_matrix(map: &GraphMap) -> SignedTransitionMatrix {
    SignedTransitionMatrix { labels: map.alphabet().names().to_vec(), matrix: crossing_matrix(map, true) }
}

impl TransitionMatrix {
    /// Panics if `matrix` has a negative entry or the label count is off.
    pub fn new(labels: Vec<String>, matrix: IntMatrix) -> Self {
        assert!(matrix.is_nonnegative(), "transition matrices are nonnegative");
        assert_eq!(labels.len(), matrix.dim());
        TransitionMatrix { labels, matrix }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Entry at (row edge, column edge) by name.
    pub fn entry(&self, row: &str, col: &str) -> Option<&BigInt> {
        let i = self.labels.iter().position(|l| l == row)?;
        let j = self.labels.iter().position(|l| l == col)?;
        Some(self.matrix.get(i, j))
    }

    pub fn is_irreducible(&self) -> bool {
        self.matrix.is_irreducible()
    }

    pub fn is_primitive(&self) -> bool {
        self.matrix.is_primitive()
    }

    pub fn char_poly(&self) -> IntPolynomial {
        self.matrix.char_poly()
    }

    /// Column-sum bracket `min ≤ λ ≤ max` on the Perron root.
    pub fn pf_bounds(&self) -> Result<(BigInt, BigInt), SpectralError> {
        if !self.is_irreducible() {
            return Err(SpectralError::Reducible);
        }
        let sums = self.matrix.column_sums();
        let min = sums.iter().min().cloned().unwrap_or_else(BigInt::zero);
        let max = sums.iter().max().cloned().unwrap_or_else(BigInt::zero);
        Ok((min, max))
    }

    pub fn is_permutation(&self) -> bool {
        let n = self.dim();
        let one = |i: usize, j: usize| self.matrix.get(i, j) == &BigInt::from(1);
        let zero_or_one = (0..n).all(|i| (0..n).all(|j| self.matrix.get(i, j).is_zero() || one(i, j)));
        zero_or_one
            && (0..n).all(|i| (0..n).filter(|&j| one(i, j)).count() == 1)
            && (0..n).all(|j| (0..n).filter(|&i| one(i, j)).count() == 1)
    }
}

impl SignedTransitionMatrix {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn determinant(&self) -> BigInt {
        self.matrix.determinant()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphmap::{Graph, VertexId};
    use crate::words::Alphabet;

    fn rose_map(names: &[&str], images: &[&str]) -> GraphMap {
        let al = Alphabet::new(names.iter().copied()).unwrap();
        let g = Graph::new(al, vec!["v".into()], vec![(VertexId(0), VertexId(0)); names.len()]).unwrap();
        let paths = images.iter().map(|s| g.alphabet().parse_path(s).unwrap()).collect();
        GraphMap::new(g, paths).unwrap()
    }

    #[test]
    fn identity_map_matrices() {
        let id = rose_map(&["a", "b", "c"], &["a", "b", "c"]);
        let m = transition_matrix(&id);
        assert_eq!(m.matrix(), &IntMatrix::identity(3));
        assert!(m.is_permutation());
        assert_eq!(signed_transition_matrix(&id).determinant(), BigInt::from(1));
        assert_eq!(m.pf_bounds(), Err(SpectralError::Reducible));
    }

    #[test]
    fn signed_entries_cancel() {
        let f = rose_map(&["a", "b"], &["a b a^-1", "a"]);
        let m = transition_matrix(&f);
        let s = signed_transition_matrix(&f);
        assert_eq!(m.entry("a", "a"), Some(&BigInt::from(2)));
        assert_eq!(s.matrix().get(0, 0), &BigInt::from(0));
        assert_eq!(m.pf_bounds().unwrap(), (BigInt::from(1), BigInt::from(3)));
        for i in 0..2 {
            for j in 0..2 {
                let (u, v) = (m.matrix().get(i, j).clone(), s.matrix().get(i, j).clone());
                assert!(num_traits::Signed::abs(&v) <= u);
            }
        }
    }
}
