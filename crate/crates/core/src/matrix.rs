//! Small square integer matrices indexed by Hodge bidegree.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Square integer matrix `(n+1) x (n+1)`, row-major.
///
/// Reads through [`IntMatrix::at`] outside `0..=n` return zero, which is the
/// convention every formula in this crate relies on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn zeros(size: usize) -> Self {
        IntMatrix {
            rows: vec![vec![0; size]; size],
        }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, String> {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(format!(
                "matrix is not square: row {bad} has {} entries, expected {n}",
                rows[bad].len()
            ));
        }
        Ok(IntMatrix { rows })
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        IntMatrix {
            rows: (0..size)
                .map(|i| (0..size).map(|j| f(i, j)).collect())
                .collect(),
        }
    }

    /// Number of rows (`n + 1` for an `n`-dimensional variety).
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Entry at `(i, j)`, zero when either index is out of range.
    pub fn at(&self, i: i64, j: i64) -> i64 {
        if i < 0 || j < 0 {
            return 0;
        }
        self.rows
            .get(i as usize)
            .and_then(|r| r.get(j as usize))
            .copied()
            .unwrap_or(0)
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.rows[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.size(), |i, j| self.rows[j][i])
    }

    /// Entries `(i, j, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, v)))
    }

    /// `sum_{i+j=k}` of the entries.
    pub fn antidiagonal_sum(&self, k: usize) -> i64 {
        self.entries()
            .filter(|(i, j, _)| i + j == k)
            .map(|(_, _, v)| v)
            .sum()
    }
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = String;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, String> {
        IntMatrix::from_rows(rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.rows
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries()
            .map(|(_, _, v)| v.to_string().len())
            .max()
            .unwrap_or(1);
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v:>width$}")?;
            }
        }
        Ok(())
    }
}
