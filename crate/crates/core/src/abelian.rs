//! Abelianization of a presentation via integer Smith normal form.
//!
//! The exponent-sum matrix of the relators presents `G_ab`; its invariant
//! factors give `G_ab = Z^r x Z/d1 x ... x Z/dk` with `d1 | d2 | ... | dk`.
//!
//! Matrix code is generic over the integer scalar. Fixed-width types
//! (`i64`, `i128`) are fine for small inputs; abelianization itself uses
//! [`BigInt`] because entries can grow during reduction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::words::Presentation;

/// Integer types the matrix code runs over.
pub trait IntegerScalar: Integer + Signed + Clone + fmt::Debug + fmt::Display {}

impl<T: Integer + Signed + Clone + fmt::Debug + fmt::Display> IntegerScalar for T {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {found}")]
    Shape { rows: usize, cols: usize, expected: usize, found: usize },
    #[error("row {0} has a different length from row 0")]
    Ragged(usize),
}

/// A dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: IntegerScalar> IntegerMatrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::Shape { rows, cols, expected: rows * cols, found: entries.len() });
        }
        Ok(IntegerMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = T::one();
        }
        m
    }

    /// Builds a matrix from rows. An empty list gives a 0x0 matrix.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(i) = rows.iter().position(|r| r.len() != cols) {
            return Err(MatrixError::Ragged(i));
        }
        let n = rows.len();
        Ok(IntegerMatrix { rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[target] += factor * row[source]`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &T) {
        for j in 0..self.cols {
            let v = self.get(source, j).clone() * factor.clone();
            let t = &mut self.entries[target * self.cols + j];
            *t = t.clone() + v;
        }
    }

    /// `col[target] += factor * col[source]`.
    pub fn add_col_multiple(&mut self, target: usize, source: usize, factor: &T) {
        for i in 0..self.rows {
            let v = self.get(i, source).clone() * factor.clone();
            let t = &mut self.entries[i * self.cols + target];
            *t = t.clone() + v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let t = &mut self.entries[i * self.cols + j];
            *t = -t.clone();
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let t = &mut self.entries[i * self.cols + j];
            *t = -t.clone();
        }
    }

    pub fn mul(&self, other: &IntegerMatrix<T>) -> Option<IntegerMatrix<T>> {
        if self.cols != other.rows {
            return None;
        }
        let mut out: IntegerMatrix<T> = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        Some(out)
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> IntegerMatrix<U> {
        IntegerMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

/// Result of Smith normal form: the nonzero diagonal entries, positive and
/// forming a divisibility chain, and their count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub invariant_factors: Vec<T>,
    pub rank: usize,
}

/// Diagonalizes `m` by unimodular row and column operations.
///
/// The pivot at each step is the entry of smallest absolute value, which
/// keeps intermediate entries small.
pub fn smith_normal_form<T: IntegerScalar>(m: &IntegerMatrix<T>) -> SmithForm<T> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut factors = Vec::new();
    for k in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, (k..rows).flat_map(|i| (k..cols).map(move |j| (i, j)))) else {
            break;
        };
        a.swap_rows(k, pi);
        a.swap_cols(k, pj);
        loop {
            let cross = (k..rows).map(|i| (i, k)).chain((k + 1..cols).map(|j| (k, j)));
            let (pi, pj) = smallest_nonzero(&a, cross).expect("pivot is nonzero");
            a.swap_rows(k, pi);
            a.swap_cols(k, pj);
            let pivot = a.get(k, k).clone();

            let mut clean = true;
            for i in k + 1..rows {
                let q = a.get(i, k).div_floor(&pivot);
                if !q.is_zero() {
                    a.add_row_multiple(i, k, &-q);
                }
                clean &= a.get(i, k).is_zero();
            }
            for j in k + 1..cols {
                let q = a.get(k, j).div_floor(&pivot);
                if !q.is_zero() {
                    a.add_col_multiple(j, k, &-q);
                }
                clean &= a.get(k, j).is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match bad {
                Some(i) => a.add_row_multiple(k, i, &T::one()),
                None => break,
            }
        }
        factors.push(a.get(k, k).abs());
    }
    SmithForm { rank: factors.len(), invariant_factors: factors }
}

fn smallest_nonzero<T: IntegerScalar>(
    a: &IntegerMatrix<T>,
    cells: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), T)> = None;
    for (i, j) in cells {
        let v = a.get(i, j).abs();
        if v.is_zero() {
            continue;
        }
        if best.as_ref().is_none_or(|(_, b)| v < *b) {
            best = Some(((i, j), v));
        }
    }
    best.map(|(pos, _)| pos)
}

/// `G_ab = Z^free_rank x Z/d1 x ... x Z/dk`, with `d1 | ... | dk` and every
/// `di >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    /// Invariants of `Z^cols / (row space of m)`.
    pub fn from_relation_matrix(m: &IntegerMatrix<BigInt>) -> Self {
        let snf = smith_normal_form(m);
        AbelianInvariants {
            free_rank: m.cols() - snf.rank,
            torsion: snf.invariant_factors.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    /// `A + B`, renormalized into a divisibility chain.
    pub fn direct_sum(&self, other: &AbelianInvariants) -> AbelianInvariants {
        let diag: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        let n = diag.len();
        let mut m = IntegerMatrix::zeros(n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        let t = AbelianInvariants::from_relation_matrix(&m);
        AbelianInvariants { free_rank: self.free_rank + other.free_rank, torsion: t.torsion }
    }

    /// `|G_ab|`, or `None` when it is infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn to_json(&self) -> Value {
        let torsion: Vec<Value> = self
            .torsion
            .iter()
            .map(|d| d.to_u64().map_or_else(|| Value::String(d.to_string()), |v| json!(v)))
            .collect();
        json!({ "free_rank": self.free_rank, "torsion": torsion })
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{}", self.free_rank)?;
        for d in &self.torsion {
            write!(f, " x Z/{d}")?;
        }
        Ok(())
    }
}

/// `entry[i][j]` = exponent sum of generator `j` in relator `i`.
pub fn exponent_matrix(presentation: &Presentation) -> IntegerMatrix<BigInt> {
    let cols = presentation.num_generators();
    let rows = presentation.relators();
    let mut m = IntegerMatrix::zeros(rows.len(), cols);
    for (i, r) in rows.iter().enumerate() {
        for j in 0..cols {
            m.set(i, j, BigInt::from(r.exponent_sum(j)));
        }
    }
    m
}

pub fn abelianization(presentation: &Presentation) -> AbelianInvariants {
    AbelianInvariants::from_relation_matrix(&exponent_matrix(presentation))
}
