//! Critical group `K(G, d, r) = Ker(r^T) / Im(diag(d) - A)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::laplacian_like;
use crate::linalg::lattice::HyperplaneLattice;
use crate::linalg::snf::snf_rows;
use crate::linalg::IntMatrix;
use crate::structure::is_arithmetical;
use crate::transforms::blowup_mq;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CriticalGroup {
    /// Invariant factors greater than 1, each dividing the next. Empty for the trivial group.
    #[serde(rename = "factors", serialize_with = "crate::io::ser_bigint_vec")]
    pub invariant_factors: Vec<BigInt>,
    #[serde(serialize_with = "crate::io::ser_bigint")]
    pub order: BigInt,
}

impl CriticalGroup {
    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Factors as `u64`, if they all fit.
    pub fn factors_u64(&self) -> Option<Vec<u64>> {
        self.invariant_factors.iter().map(|f| f.to_u64()).collect()
    }
}

/// Critical group of a structure `(d, r)` on the graph with adjacency `a`.
pub fn critical_group(a: &IntMatrix, d: &[u64], r: &[u64]) -> Result<CriticalGroup> {
    if !is_arithmetical(a, d, r)? {
        return Err(Error::NotAStructure(format!("d = {d:?}, r = {r:?}")));
    }
    critical_group_of_matrix(&laplacian_like(a, d)?, r)
}

/// `Ker(r^T) / Im(M)` for a matrix whose columns all lie in `Ker(r^T)`.
///
/// Each column of `M` is written in a basis of the hyperplane lattice; the Smith form of the
/// resulting `(n - 1) x n` coordinate matrix gives the quotient.
pub fn critical_group_of_matrix<T: Copy + Into<BigInt>>(m: &IntMatrix, r: &[T]) -> Result<CriticalGroup> {
    let n = m.dim();
    if r.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: r.len(),
        });
    }
    let r: Vec<BigInt> = r.iter().map(|&x| x.into()).collect();
    quotient(m, &r)
}

fn quotient(m: &IntMatrix, r: &[BigInt]) -> Result<CriticalGroup> {
    let n = m.dim();
    if r.iter().all(Zero::is_zero) {
        return Err(Error::PreconditionViolation("r must be non-zero".into()));
    }
    if n == 1 {
        return Ok(CriticalGroup {
            invariant_factors: Vec::new(),
            order: BigInt::one(),
        });
    }
    let lattice = HyperplaneLattice::new(r);
    let mt = m.transpose();
    // coords[k][j]: coordinate k of column j
    let mut coords = vec![Vec::with_capacity(n); n - 1];
    for j in 0..n {
        let c = lattice.coordinates(mt.row(j)).ok_or_else(|| {
            Error::BasisExpressionFailure(format!("column {j} of the matrix is not orthogonal to r"))
        })?;
        for (k, x) in c.into_iter().enumerate() {
            coords[k].push(x);
        }
    }
    let (diag, _, _) = snf_rows(coords, n);
    if diag.iter().any(Zero::is_zero) {
        return Err(Error::PreconditionViolation(
            "image of the matrix has rank below n - 1, so the quotient is infinite".into(),
        ));
    }
    let invariant_factors: Vec<BigInt> = diag.into_iter().filter(|s| s.abs() > BigInt::one()).collect();
    let order = invariant_factors.iter().product();
    Ok(CriticalGroup {
        invariant_factors,
        order,
    })
}

/// Whether `M` (with kernel vector `r`) and its blowup `M_q` (with kernel vector `(r, x)`) have
/// the same critical group.
pub fn blowup_preserves_critical_group(m: &IntMatrix, r: &[u64], q: &[i64]) -> Result<bool> {
    let b = blowup_mq(m, q, r)?;
    let before = critical_group_of_matrix(m, r)?;
    let after = quotient(&b.mq, &b.kernel)?;
    Ok(before == after)
}
