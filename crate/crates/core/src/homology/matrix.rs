use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Wire format with decimal-string entries.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("ragged matrix rows"));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flat_map(|row| row.iter().cloned().map(Into::into)).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Dimension {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(if n == 0 { sign } else { sign * &a[n - 1][n - 1] })
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &MatrixJson) -> Result<Self> {
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::invalid("matrix entries do not match the declared shape"));
        }
        let mut data = Vec::with_capacity(j.rows * j.cols);
        for row in &j.entries {
            for e in row {
                let v: BigInt = e
                    .trim()
                    .parse()
                    .map_err(|_| Error::invalid(format!("not an integer: {e:?}")))?;
                data.push(v);
            }
        }
        Ok(IntMatrix {
            rows: j.rows,
            cols: j.cols,
            data,
        })
    }

    /// Largest absolute entry, or `None` if it does not fit in an `i64`.
    pub fn max_abs_i64(&self) -> Option<i64> {
        self.data.iter().map(|x| x.abs().to_i64()).try_fold(0i64, |m, v| v.map(|v| m.max(v)))
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Sparse integer matrix, one sorted `(column, value)` list per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub cols: usize,
    pub rows: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        SparseMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    /// Appends a row given as unsorted `(column, value)` terms; like terms are combined.
    pub fn push_terms(&mut self, terms: &[(usize, i64)]) {
        let mut row: Vec<(u32, i64)> = terms.iter().map(|&(c, v)| (c as u32, v)).collect();
        row.sort_unstable_by_key(|&(c, _)| c);
        let mut merged: Vec<(u32, i64)> = Vec::with_capacity(row.len());
        for (c, v) in row {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|&(_, v)| v != 0);
        self.rows.push(merged);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows.len(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                m.set(i, c as usize, BigInt::from(v));
            }
        }
        m
    }

    /// `self · other`, both sparse, row convention.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = SparseMatrix::new(other.cols);
        for row in &self.rows {
            let mut terms = Vec::new();
            for &(k, a) in row {
                for &(j, b) in &other.rows[k as usize] {
                    terms.push((j as usize, a * b));
                }
            }
            out.push_terms(&terms);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]).unwrap();
        assert_eq!(a.det().unwrap(), BigInt::from(-8));
        let b = IntMatrix::from_rows(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]).unwrap();
        assert_eq!(b.det().unwrap(), BigInt::from(-2));
        assert_eq!(IntMatrix::identity(0).det().unwrap(), BigInt::one());
    }

    #[test]
    fn json_roundtrip() {
        let a = IntMatrix::from_rows(&[vec![BigInt::from(10).pow(30u32), BigInt::from(-3)]]).unwrap();
        let j = serde_json::to_string(&a.to_json()).unwrap();
        let back: MatrixJson = serde_json::from_str(&j).unwrap();
        assert_eq!(IntMatrix::from_json(&back).unwrap(), a);
    }

    #[test]
    fn sparse_terms_merge() {
        let mut s = SparseMatrix::new(3);
        s.push_terms(&[(2, 1), (0, -1), (2, 1), (0, 1)]);
        assert_eq!(s.rows[0], vec![(2, 2)]);
    }
}
