use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Exact determinant by Bareiss fraction-free elimination.
pub fn det(m: &IntMatrix) -> BigInt {
    bareiss(m.rows())
}

pub(crate) fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            for j in k + 1..n {
                // exact division: each entry is a (k+1)-minor of the original matrix
                let v = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Which principal minors a positivity test inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MinorScope {
    /// Every proper non-empty index subset.
    #[default]
    All,
    /// Leading minors `{0..k}` for `k < n` only. Screening aid; never a final verdict.
    Leading,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorTest {
    pub positive: bool,
    /// A proper index subset whose principal minor is not positive.
    pub witness: Option<Vec<usize>>,
}

/// True iff every proper principal minor is positive. Dimension 1 is vacuously true.
pub fn proper_principal_minors_positive(m: &IntMatrix) -> MinorTest {
    proper_principal_minors_positive_in(m, MinorScope::All)
}

pub fn proper_principal_minors_positive_in(m: &IntMatrix, scope: MinorScope) -> MinorTest {
    let n = m.dim();
    let failing = match scope {
        MinorScope::All => (1..n).flat_map(|k| Combinations::new(n, k)).find(|s| {
            !det(&m.principal_submatrix(s)).is_positive()
        }),
        MinorScope::Leading => (1..n)
            .map(|k| (0..k).collect::<Vec<_>>())
            .find(|s| !det(&m.principal_submatrix(s)).is_positive()),
    };
    MinorTest {
        positive: failing.is_none(),
        witness: failing,
    }
}

/// Every non-empty principal minor (the full determinant last), subsets ordered by size then
/// lexicographically.
pub fn principal_minors(m: &IntMatrix) -> Vec<(Vec<usize>, BigInt)> {
    let n = m.dim();
    (1..=n)
        .flat_map(|k| Combinations::new(n, k))
        .map(|s| {
            let d = det(&m.principal_submatrix(&s));
            (s, d)
        })
        .collect()
}

/// k-subsets of `0..n` in lexicographic order.
pub(crate) struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}
