//! Arithmetical structures `(d, r)`: verification, completion in both directions, and
//! canonically ordered structure sets.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{laplacian_like, Graph};
use crate::linalg::{integer_kernel, IntMatrix};

/// A pair of positive vectors with `r` primitive and `(diag(d) - A) r = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArithStructure {
    pub d: Vec<u64>,
    pub r: Vec<u64>,
}

impl ArithStructure {
    pub fn new(d: Vec<u64>, r: Vec<u64>) -> Self {
        ArithStructure { d, r }
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    /// Number of unit entries in `r`.
    pub fn unit_count(&self) -> usize {
        self.r.iter().filter(|&&x| x == 1).count()
    }

    pub fn is_valid_for(&self, a: &IntMatrix) -> bool {
        matches!(is_arithmetical(a, &self.d, &self.r), Ok(true))
    }

    /// Simultaneous coordinate permutation: entry `i` of the result is entry `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        ArithStructure {
            d: perm.iter().map(|&i| self.d[i]).collect(),
            r: perm.iter().map(|&i| self.r[i]).collect(),
        }
    }
}

/// Canonical order: lexicographic by `(r, d)`.
impl Ord for ArithStructure {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.r, &self.d).cmp(&(&other.r, &other.d))
    }
}

impl PartialOrd for ArithStructure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn gcd_all(v: &[u64]) -> u64 {
    v.iter().fold(0u64, |g, &x| g.gcd(&x))
}

fn check_dim(a: &IntMatrix, len: usize) -> Result<()> {
    if a.dim() != len {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: len,
        });
    }
    Ok(())
}

pub fn is_arithmetical(a: &IntMatrix, d: &[u64], r: &[u64]) -> Result<bool> {
    check_dim(a, d.len())?;
    check_dim(a, r.len())?;
    if d.iter().chain(r).any(|&x| x == 0) || gcd_all(r) != 1 {
        return Ok(false);
    }
    Ok(laplacian_like(a, d)?.annihilates(r))
}

/// `d_i = (A r)_i / r_i` when every quotient is an exact positive integer.
pub fn d_from_r(a: &IntMatrix, r: &[u64]) -> Option<Vec<u64>> {
    if a.dim() != r.len() || r.contains(&0) || gcd_all(r) != 1 {
        return None;
    }
    let ar = a.apply(r).ok()?;
    ar.iter()
        .zip(r)
        .map(|(s, &ri)| {
            let (q, rem) = s.div_rem(&BigInt::from(ri));
            if rem.is_zero() && q.is_positive() {
                q.to_u64()
            } else {
                None
            }
        })
        .collect()
}

/// The positive primitive generator of `ker(diag(d) - A)`, when the kernel is one-dimensional
/// and has one.
pub fn r_from_d(a: &IntMatrix, d: &[u64]) -> Option<Vec<u64>> {
    if a.dim() != d.len() || d.contains(&0) {
        return None;
    }
    let l = laplacian_like(a, d).ok()?;
    let mut kernel = integer_kernel(&l);
    if kernel.len() != 1 {
        return None;
    }
    let mut v = kernel.pop()?;
    if v.iter().all(|x| x.is_negative()) {
        v.iter_mut().for_each(|x| *x = -std::mem::take(x));
    }
    if !v.iter().all(|x| x.is_positive()) {
        return None;
    }
    v.iter().map(|x| x.to_u64()).collect()
}

/// A canonically sorted, duplicate-free set of structures on one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureSet {
    pub graph_spec: String,
    pub adjacency: IntMatrix,
    pub structures: Vec<ArithStructure>,
    /// True only for certified-complete enumerations.
    pub complete: bool,
    pub r_cap: Option<u64>,
}

impl StructureSet {
    pub fn new(
        graph_spec: String,
        adjacency: IntMatrix,
        mut structures: Vec<ArithStructure>,
        complete: bool,
        r_cap: Option<u64>,
    ) -> Self {
        structures.sort_unstable();
        structures.dedup();
        StructureSet {
            graph_spec,
            adjacency,
            structures,
            complete,
            r_cap,
        }
    }

    pub fn for_graph(graph: &Graph, structures: Vec<ArithStructure>, complete: bool, r_cap: Option<u64>) -> Self {
        Self::new(graph.spec(), graph.adjacency().clone(), structures, complete, r_cap)
    }

    pub fn len(&self) -> usize {
        self.structures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.structures.is_empty()
    }

    pub fn contains(&self, s: &ArithStructure) -> bool {
        self.structures.binary_search(s).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ArithStructure> {
        self.structures.iter()
    }
}

/// Counts structures by the number of unit entries in `r`.
pub fn r1_histogram(set: &StructureSet) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for s in &set.structures {
        *h.entry(s.unit_count()).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_graph, Family};

    fn adj(f: Family, n: usize) -> IntMatrix {
        make_graph(f, n).unwrap().adjacency().clone()
    }

    #[test]
    fn verification_examples() {
        let w3 = adj(Family::Wheel, 3);
        assert!(is_arithmetical(&w3, &[3, 3, 3, 3], &[1, 1, 1, 1]).unwrap());
        assert!(is_arithmetical(&w3, &[11, 2, 2, 3], &[1, 4, 4, 3]).unwrap());
        assert!(!is_arithmetical(&w3, &[3, 3, 3, 3], &[2, 2, 2, 2]).unwrap());
        assert!(!is_arithmetical(&w3, &[0, 3, 3, 3], &[1, 1, 1, 1]).unwrap());
        assert!(is_arithmetical(&w3, &[3, 3, 3], &[1, 1, 1]).is_err());
    }

    #[test]
    fn completion_examples() {
        let w3 = adj(Family::Wheel, 3);
        assert_eq!(d_from_r(&w3, &[1, 6, 2, 3]), Some(vec![11, 1, 5, 3]));
        assert_eq!(d_from_r(&adj(Family::Cycle, 4), &[1, 2, 3, 4]), Some(vec![6, 2, 2, 1]));
        assert_eq!(d_from_r(&adj(Family::Wheel, 4), &[1, 1, 1, 2, 1]), None);
        assert_eq!(d_from_r(&w3, &[2, 2, 2, 2]), None);

        assert_eq!(r_from_d(&w3, &[5, 5, 2, 2]), Some(vec![1, 1, 2, 2]));
        assert_eq!(r_from_d(&adj(Family::Cycle, 3), &[2, 2, 2]), Some(vec![1, 1, 1]));
        assert_eq!(r_from_d(&adj(Family::Cycle, 3), &[9, 9, 9]), None);
        // singular, but the kernel vector changes sign
        assert_eq!(r_from_d(&adj(Family::Path, 2), &[1, 1]), Some(vec![1, 1]));
    }

    #[test]
    fn canonical_order_is_r_then_d() {
        let a = ArithStructure::new(vec![9], vec![1]);
        let b = ArithStructure::new(vec![1], vec![2]);
        assert!(a < b);
        let set = StructureSet::new("custom".into(), IntMatrix::identity(1), vec![b.clone(), a.clone(), b.clone()], false, None);
        assert_eq!(set.structures, vec![a, b]);
    }
}
