use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense square matrix of arbitrary-precision integers, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(n: usize, entries: Vec<BigInt>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatrix("dimension must be at least 1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        Ok(IntMatrix { n, entries })
    }

    pub fn from_rows<T>(rows: &[Vec<T>]) -> Result<Self>
    where
        T: Clone + Into<BigInt>,
    {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!(
                    "matrix is not square: row of length {} in a {n}-row matrix",
                    row.len()
                )));
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Self::new(n, entries)
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "dimension must be at least 1");
        IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn diagonal<T: Clone + Into<BigInt>>(diag: &[T]) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidMatrix("dimension must be at least 1".into()));
        }
        let mut m = Self::zeros(diag.len());
        for (i, v) in diag.iter().enumerate() {
            m.entries[i * diag.len() + i] = v.clone().into();
        }
        Ok(m)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diag(&self) -> Vec<BigInt> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.entries[j * n + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `M v` for a vector of machine integers.
    pub fn apply<T: Copy + Into<BigInt>>(&self, v: &[T]) -> Result<Vec<BigInt>> {
        let v: Vec<BigInt> = v.iter().map(|&x| x.into()).collect();
        self.mul_vec(&v)
    }

    pub fn annihilates<T: Copy + Into<BigInt>>(&self, v: &[T]) -> bool {
        matches!(self.apply(v), Ok(w) if w.iter().all(Zero::is_zero))
    }

    /// Principal submatrix on the given (sorted, distinct) index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        let k = idx.len();
        assert!(k > 0, "empty principal submatrix");
        let mut entries = Vec::with_capacity(k * k);
        for &i in idx {
            for &j in idx {
                entries.push(self.get(i, j).clone());
            }
        }
        IntMatrix { n: k, entries }
    }

    /// `P M P^T` where `perm[i]` is the source index of row/column `i`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = self.get(perm[i], perm[j]).clone();
            }
        }
        out
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i).is_zero())
    }

    /// Entries as `i64`, if every entry fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|e| e.to_i64()).collect())
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn zip_with(a: &IntMatrix, b: &IntMatrix, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> IntMatrix {
    assert_eq!(a.n, b.n, "dimension mismatch");
    IntMatrix {
        n: a.n,
        entries: a.entries.iter().zip(&b.entries).map(|(x, y)| op(x, y)).collect(),
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// Matrix JSON wire format: `{"n": k, "rows": [[int, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub rows: Vec<Vec<serde_json::Number>>,
}

impl TryFrom<&MatrixJson> for IntMatrix {
    type Error = Error;

    fn try_from(json: &MatrixJson) -> Result<Self> {
        if json.rows.len() != json.n {
            return Err(Error::InvalidMatrix(format!(
                "\"n\" is {} but {} rows were given",
                json.n,
                json.rows.len()
            )));
        }
        let rows = json
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        x.to_string()
                            .parse::<BigInt>()
                            .map_err(|_| Error::InvalidMatrix(format!("entry {x} is not an integer")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        IntMatrix::from_rows(&rows)
    }
}

impl From<&IntMatrix> for MatrixJson {
    fn from(m: &IntMatrix) -> Self {
        let rows = (0..m.n)
            .map(|i| {
                m.row(i)
                    .iter()
                    .map(|e| e.to_string().parse().expect("integer literal is a JSON number"))
                    .collect()
            })
            .collect();
        MatrixJson { n: m.n, rows }
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = MatrixJson::deserialize(d)?;
        IntMatrix::try_from(&json).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_ragged_and_empty() {
        assert!(IntMatrix::from_rows(&[vec![1, 2], vec![3]]).is_err());
        assert!(IntMatrix::from_rows::<i64>(&[]).is_err());
    }

    #[test]
    fn json_round_trip_keeps_big_entries() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let m = IntMatrix::from_rows(&[vec![big.clone(), BigInt::from(-1)], vec![BigInt::zero(), big]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.starts_with("{\"n\":2,\"rows\":[[123456789012345678901234567890,-1]"));
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn json_rejects_inconsistent_n() {
        let err = serde_json::from_str::<IntMatrix>(r#"{"n": 3, "rows": [[0,1],[1,0]]}"#);
        assert!(err.is_err());
        let err = serde_json::from_str::<IntMatrix>(r#"{"n": 2, "rows": [[0,1.5],[1,0]]}"#);
        assert!(err.is_err());
    }

    #[test]
    fn product_and_permutation() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(&a * &b, IntMatrix::from_rows(&[vec![2, 1], vec![4, 3]]).unwrap());
        assert_eq!(a.permuted(&[1, 0]), IntMatrix::from_rows(&[vec![4, 3], vec![2, 1]]).unwrap());
    }
}
