//! Square integer matrices: exact determinants, division-free characteristic
//! polynomials and the combinatorics of their support digraphs.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::IntPolynomial;

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntMatrix { dim, entries: vec![BigInt::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = IntMatrix::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = BigInt::one();
        }
        m
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        IntMatrix { dim, entries: rows.iter().flatten().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.dim + j]
    }

    pub fn column_sums(&self) -> Vec<BigInt> {
        (0..self.dim).map(|j| (0..self.dim).map(|i| self.get(i, j)).sum()).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|x| !x.is_negative())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    pub fn determinant(&self) -> BigInt {
        let n = self.dim;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.entries[i * n..(i + 1) * n].to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else { return BigInt::zero() };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v.div_floor(&prev);
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// `det(xI − M)` by Berkowitz's algorithm: only ring operations, no division.
    pub fn char_poly(&self) -> IntPolynomial {
        let n = self.dim;
        // coefficients, highest degree first
        let mut v: Vec<BigInt> = vec![BigInt::one()];
        for r in 0..n {
            // Toeplitz column: 1, −a_rr, −R·C, −R·A·C, …, −R·A^(r−1)·C
            let mut t: Vec<BigInt> = Vec::with_capacity(r + 2);
            t.push(BigInt::one());
            t.push(-self.get(r, r).clone());
            let mut x: Vec<BigInt> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let rx: BigInt = (0..r).map(|j| self.get(r, j) * &x[j]).sum();
                t.push(-rx);
                x = (0..r).map(|i| (0..r).map(|j| self.get(i, j) * &x[j]).sum()).collect();
            }
            let mut next = vec![BigInt::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, vj) in v.iter().enumerate().take(i + 1) {
                    *slot += &t[i - j] * vj;
                }
            }
            v = next;
        }
        v.reverse();
        IntPolynomial::new(v)
    }

    /// Support digraph: arc `j → i` whenever entry `(i, j)` is nonzero.
    fn successors(&self) -> Vec<Vec<usize>> {
        let n = self.dim;
        (0..n).map(|j| (0..n).filter(|&i| !self.get(i, j).is_zero()).collect()).collect()
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let n = self.dim;
        (0..n).map(|i| (0..n).filter(|&j| !self.get(i, j).is_zero()).collect()).collect()
    }

    /// Every `(i, j)` is positive in some positive power: the support digraph
    /// is strongly connected (and, for `1×1`, has its loop).
    pub fn is_irreducible(&self) -> bool {
        let n = self.dim;
        if n == 0 {
            return false;
        }
        if n == 1 {
            return !self.get(0, 0).is_zero();
        }
        let all = |adj: &[Vec<usize>]| bfs_levels(adj, 0).iter().all(Option::is_some);
        all(&self.successors()) && all(&self.predecessors())
    }

    /// Gcd of cycle lengths of the support digraph, for irreducible matrices.
    pub fn period(&self) -> Option<usize> {
        if !self.is_irreducible() {
            return None;
        }
        let succ = self.successors();
        let level = bfs_levels(&succ, 0);
        let mut g = 0usize;
        for (u, targets) in succ.iter().enumerate() {
            for &v in targets {
                let (lu, lv) = (level[u].unwrap(), level[v].unwrap());
                g = g.gcd(&(lu + 1).abs_diff(lv));
            }
        }
        Some(g)
    }

    /// Irreducible and aperiodic, i.e. every positive power is irreducible.
    pub fn is_primitive(&self) -> bool {
        self.period() == Some(1)
    }

    /// Independent primitivity test: `M^(m²−2m+2)` entrywise positive
    /// (Wielandt's bound), computed on the boolean support.
    pub fn is_primitive_by_wielandt(&self) -> bool {
        let n = self.dim;
        if n == 0 {
            return false;
        }
        let support: Vec<Vec<bool>> =
            (0..n).map(|i| (0..n).map(|j| !self.get(i, j).is_zero()).collect()).collect();
        let exponent = n * n + 2 - 2 * n;
        let mut result: Option<Vec<Vec<bool>>> = None;
        let mut base = support;
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => bool_mul(&r, &base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = bool_mul(&base, &base);
            }
        }
        result.is_some_and(|r| r.iter().flatten().all(|&x| x))
    }

    /// Perron root estimate by normalised power iteration in `f64`, from the
    /// all-ones vector. Ratio of successive 1-norms.
    pub fn power_iteration(&self, iterations: usize) -> f64 {
        let n = self.dim;
        let a: Vec<f64> = self.entries.iter().map(|x| x.to_f64().expect("finite entry")).collect();
        let mut x = vec![1.0 / n as f64; n];
        let mut ratio = 0.0;
        for _ in 0..iterations {
            let y: Vec<f64> = (0..n).map(|i| (0..n).map(|j| a[i * n + j] * x[j]).sum()).collect();
            let norm: f64 = y.iter().map(|v| v.abs()).sum();
            let prev: f64 = x.iter().map(|v| v.abs()).sum();
            ratio = norm / prev;
            x = y.into_iter().map(|v| v / norm).collect();
        }
        ratio
    }
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).any(|k| a[i][k] && b[k][j])).collect())
        .collect()
}

fn bfs_levels(adj: &[Vec<usize>], root: usize) -> Vec<Option<usize>> {
    let mut level = vec![None; adj.len()];
    level[root] = Some(0);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let next = level[u].unwrap() + 1;
        for &v in &adj[u] {
            if level[v].is_none() {
                level[v] = Some(next);
                queue.push_back(v);
            }
        }
    }
    level
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
