//! Enumeration of arithmetical structures.
//!
//! Certified enumerators (complete by construction):
//! - stars: ordered Egyptian-fraction recursion over nondecreasing leaf degrees, then all
//!   distinct leaf permutations;
//! - paths and cycles: closure of all-ones structures under edge subdivision;
//! - `W_3`: pull-back of star structures through the full-clique clique-star map.
//!
//! The bounded enumerator handles any irreducible matrix by depth-first search over
//! `r_v <= r_cap` with divisibility pruning.

use std::collections::HashSet;

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{is_irreducible, make_graph, Family, Graph};
use crate::linalg::IntMatrix;
use crate::structure::{d_from_r, gcd_all, ArithStructure, StructureSet};

pub const DEFAULT_R_CAP: u64 = 64;
pub const MAX_STAR_LEAVES: usize = 6;
pub const MAX_PATH_CYCLE: usize = 10;

/// Complete set of labeled structures for `path`, `cycle`, `star` (size bounds
/// [`MAX_PATH_CYCLE`], [`MAX_STAR_LEAVES`]) and the wheel `W_3`.
pub fn enumerate_certified(family: Family, n: usize) -> Result<StructureSet> {
    let graph = make_graph(family, n)?;
    let structures = match family {
        Family::Star => {
            check_bound(family, n, MAX_STAR_LEAVES)?;
            star_structures(n)
        }
        Family::Path => {
            check_bound(family, n, MAX_PATH_CYCLE)?;
            with_d(&graph, subdivision_closure(n, false))
        }
        Family::Cycle => {
            check_bound(family, n, MAX_PATH_CYCLE)?;
            with_d(&graph, subdivision_closure(n, true))
        }
        Family::Wheel if n == 3 => wheel3_structures(),
        _ => {
            return Err(Error::UnsupportedFamily(format!(
                "{}; use bounded enumeration",
                graph.spec()
            )))
        }
    };
    Ok(StructureSet::for_graph(&graph, structures, true, None))
}

fn check_bound(family: Family, n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::OutOfRange(format!(
            "certified {family} enumeration supports n <= {max}, got {n}"
        )));
    }
    Ok(())
}

fn with_d(graph: &Graph, rs: Vec<Vec<u64>>) -> Vec<ArithStructure> {
    rs.into_iter()
        .map(|r| {
            let d = d_from_r(graph.adjacency(), &r).expect("subdivision preserves the relations");
            ArithStructure::new(d, r)
        })
        .collect()
}

/// Nondecreasing `d_1 <= ... <= d_k` with `sum 1/d_i` a positive integer.
pub(crate) fn egyptian_multisets(k: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(k);
    egyptian_rec(&mut prefix, 0, 1, k, &mut out);
    out
}

/// Current partial sum is `num / den` in lowest terms.
fn egyptian_rec(prefix: &mut Vec<u64>, num: u128, den: u128, left: usize, out: &mut Vec<Vec<u64>>) {
    if left == 0 {
        if num > 0 && num.is_multiple_of(den) {
            out.push(prefix.clone());
        }
        return;
    }
    let lo = prefix.last().copied().unwrap_or(1) as u128;
    // every remaining term is positive, so the sum must reach the next integer t > num/den
    let t = num / den + 1;
    let gap = t * den - num;
    if left == 1 {
        // 1/d <= 1 rules out any integer beyond t
        if den.is_multiple_of(gap) && den / gap >= lo {
            prefix.push((den / gap) as u64);
            out.push(prefix.clone());
            prefix.pop();
        }
        return;
    }
    let hi = (left as u128 * den) / gap;
    for d in lo..=hi {
        let n2 = num * d + den;
        let d2 = den.checked_mul(d).expect("denominator overflow");
        let g = n2.gcd(&d2);
        prefix.push(d as u64);
        egyptian_rec(prefix, n2 / g, d2 / g, left - 1, out);
        prefix.pop();
    }
}

/// Rearranges to the next lexicographic permutation; false once the last one is reached.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All structures on the star with `n` leaves (centre at index 0).
///
/// A leaf satisfies `d_i r_i = r_0`, so `d_0 = sum 1/d_i` and the primitive choice is
/// `r_0 = lcm(d_i)`, `r_i = r_0 / d_i`: for every prime, the leaf with the largest valuation
/// in its `d_i` has `r_i` coprime to that prime, so `gcd(r) = 1` automatically.
fn star_structures(n: usize) -> Vec<ArithStructure> {
    let mut out = Vec::new();
    for mut leaves in egyptian_multisets(n) {
        loop {
            let lcm = leaves.iter().fold(1u64, |l, &x| l.lcm(&x));
            let hub = leaves.iter().map(|&x| lcm / x).sum::<u64>() / lcm;
            let mut d = Vec::with_capacity(n + 1);
            let mut r = Vec::with_capacity(n + 1);
            d.push(hub);
            r.push(lcm);
            d.extend_from_slice(&leaves);
            r.extend(leaves.iter().map(|&x| lcm / x));
            out.push(ArithStructure::new(d, r));
            if !next_permutation(&mut leaves) {
                break;
            }
        }
    }
    out
}

/// `r`-vectors of all structures on `P_n` (`cyclic = false`) or `C_n`.
///
/// Start from all-ones vectors of every length up to `n` and insert, between two consecutive
/// entries, their sum. On a cycle, lengths 1 and 2 are the loop and the doubled edge, and the
/// wrap-around slot can be filled at either end of the vector.
fn subdivision_closure(n: usize, cyclic: bool) -> Vec<Vec<u64>> {
    let start = if cyclic { 1 } else { 2 };
    if n < start {
        return Vec::new();
    }
    let mut layer: HashSet<Vec<u64>> = HashSet::from([vec![1; start]]);
    for len in start..n {
        let mut next: HashSet<Vec<u64>> = HashSet::from([vec![1; len + 1]]);
        for r in &layer {
            let slots: Box<dyn Iterator<Item = usize>> = if cyclic {
                Box::new(0..=len)
            } else {
                Box::new(1..len)
            };
            for j in slots {
                let left = r[(j + len - 1) % len];
                let right = r[j % len];
                let mut s = r.clone();
                s.insert(j, left + right);
                next.insert(s);
            }
        }
        layer = next;
    }
    let mut out: Vec<Vec<u64>> = layer.into_iter().collect();
    out.sort_unstable();
    out
}

/// `W_3 = K_4`; its structures are the star structures on four leaves with centre `d = 1` and
/// every leaf `d >= 2`, read back with leaf `d` lowered by one.
fn wheel3_structures() -> Vec<ArithStructure> {
    star_structures(4)
        .into_iter()
        .filter(|s| s.d[0] == 1 && s.d[1..].iter().all(|&x| x >= 2))
        .map(|s| ArithStructure::new(s.d[1..].iter().map(|x| x - 1).collect(), s.r[1..].to_vec()))
        .collect()
}

/// All structures with every `r_v <= r_cap`. Not certified complete.
///
/// Vertices are assigned in index order; a vertex's relation `r_v | (A r)_v` is checked as soon
/// as its closed neighbourhood is assigned, and when that vertex is adjacent by a single edge
/// to the vertex being assigned the candidates are stepped through the one admissible residue
/// class. For a wheel this assigns `r_0`, then the rim, and checks the hub relation last.
pub fn enumerate_bounded(a: &IntMatrix, r_cap: u64) -> Result<StructureSet> {
    enumerate_bounded_with_spec(a, r_cap, "custom".to_string())
}

pub fn enumerate_bounded_graph(graph: &Graph, r_cap: u64) -> Result<StructureSet> {
    enumerate_bounded_with_spec(graph.adjacency(), r_cap, graph.spec())
}

fn enumerate_bounded_with_spec(a: &IntMatrix, r_cap: u64, spec: String) -> Result<StructureSet> {
    if !a.has_zero_diagonal() || !a.is_nonnegative() {
        return Err(Error::InvalidGeneralizedGraph(
            "matrix must be non-negative with zero diagonal".into(),
        ));
    }
    if !is_irreducible(a) {
        return Err(Error::ReducibleMatrix);
    }
    if a.dim() < 2 {
        return Err(Error::PreconditionViolation(
            "bounded enumeration needs at least two vertices".into(),
        ));
    }
    if r_cap == 0 {
        return Err(Error::PreconditionViolation("r_cap must be positive".into()));
    }
    let weights: Vec<Vec<u64>> = a
        .rows()
        .iter()
        .map(|row| row.iter().map(|x| x.to_u64()).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Overflow("adjacency entries must fit in u64".into()))?;
    let search = Search::new(weights, r_cap);
    let rs: Vec<Vec<u64>> = (1..=r_cap)
        .into_par_iter()
        .flat_map_iter(|r0| {
            let mut r = vec![0u64; search.n];
            r[0] = r0;
            let mut found = Vec::new();
            if search.closers[0].iter().all(|&w| search.relation_holds(w, &r)) {
                search.dfs(&mut r, 1, &mut found);
            }
            found
        })
        .collect();
    let structures = rs
        .into_iter()
        .map(|r| {
            let d = (0..search.n).map(|v| search.weighted_sum(v, &r) / r[v]).collect();
            ArithStructure::new(d, r)
        })
        .collect();
    Ok(StructureSet::new(spec, a.clone(), structures, false, Some(r_cap)))
}

struct Search {
    n: usize,
    weights: Vec<Vec<u64>>,
    cap: u64,
    /// Vertices whose closed neighbourhood is complete once position `k` is assigned.
    closers: Vec<Vec<usize>>,
    /// A closer joined to `k` by a single edge, used to step through one residue class.
    stepper: Vec<Option<usize>>,
}

impl Search {
    fn new(weights: Vec<Vec<u64>>, cap: u64) -> Self {
        let n = weights.len();
        let mut closers = vec![Vec::new(); n];
        for w in 0..n {
            let last = (0..n).filter(|&u| u == w || weights[w][u] > 0).max().unwrap_or(w);
            closers[last].push(w);
        }
        let stepper = (0..n)
            .map(|k| closers[k].iter().copied().find(|&w| w != k && weights[w][k] == 1))
            .collect();
        Search {
            n,
            weights,
            cap,
            closers,
            stepper,
        }
    }

    fn weighted_sum(&self, v: usize, r: &[u64]) -> u64 {
        self.weights[v].iter().zip(r).map(|(w, x)| w * x).sum()
    }

    fn relation_holds(&self, w: usize, r: &[u64]) -> bool {
        let s = self.weighted_sum(w, r);
        s > 0 && s.is_multiple_of(r[w])
    }

    fn dfs(&self, r: &mut Vec<u64>, k: usize, out: &mut Vec<Vec<u64>>) {
        if k == self.n {
            if gcd_all(r) == 1 {
                out.push(r.clone());
            }
            return;
        }
        let (start, step) = match self.stepper[k] {
            Some(w) => {
                // unassigned entries are zero, so this is the partial sum without r_k
                let partial = self.weighted_sum(w, r);
                let m = r[w];
                let res = (m - partial % m) % m;
                (if res == 0 { m } else { res }, m)
            }
            None => (1, 1),
        };
        let mut v = start;
        while v <= self.cap {
            r[k] = v;
            if self.closers[k].iter().all(|&w| self.relation_holds(w, r)) {
                self.dfs(r, k + 1, out);
            }
            v += step;
        }
        r[k] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn egyptian_small() {
        assert_eq!(egyptian_multisets(1), vec![vec![1]]);
        assert_eq!(egyptian_multisets(2), vec![vec![1, 1], vec![2, 2]]);
        let three = egyptian_multisets(3);
        assert!(three.contains(&vec![2, 3, 6]));
        assert!(three.contains(&vec![1, 2, 2]));
        assert!(three.contains(&vec![3, 3, 3]));
        assert!(three.contains(&vec![2, 4, 4]));
        assert!(three.contains(&vec![1, 1, 1]));
    }

    #[test]
    fn permutations_are_distinct() {
        let mut v = vec![1, 1, 2];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen, vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]);
    }

    #[test]
    fn star_counts() {
        for (n, count) in [(1, 1), (2, 2), (3, 14), (4, 263)] {
            assert_eq!(enumerate_certified(Family::Star, n).unwrap().len(), count, "star {n}");
        }
    }

    #[test]
    fn subdivision_small() {
        assert_eq!(subdivision_closure(3, false), vec![vec![1, 1, 1], vec![1, 2, 1]]);
        assert_eq!(subdivision_closure(3, true).len(), 10);
        assert!(subdivision_closure(1, false).is_empty());
    }

    #[test]
    fn unsupported_and_out_of_range() {
        assert!(matches!(
            enumerate_certified(Family::Wheel, 4),
            Err(Error::UnsupportedFamily(_))
        ));
        assert!(matches!(
            enumerate_certified(Family::Complete, 3),
            Err(Error::UnsupportedFamily(_))
        ));
        assert!(matches!(
            enumerate_certified(Family::Star, MAX_STAR_LEAVES + 1),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn bounded_rejects_reducible_and_bad_input() {
        let block = IntMatrix::from_rows(&[
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
        ])
        .unwrap();
        assert_eq!(enumerate_bounded(&block, 8), Err(Error::ReducibleMatrix));
        let bad = IntMatrix::from_rows(&[vec![1, 1], vec![1, 0]]).unwrap();
        assert!(matches!(enumerate_bounded(&bad, 8), Err(Error::InvalidGeneralizedGraph(_))));
    }

    #[test]
    fn bounded_cycle_four() {
        let c4 = make_graph(Family::Cycle, 4).unwrap();
        let set = enumerate_bounded_graph(&c4, 8).unwrap();
        assert_eq!(set.len(), 35);
        assert!(!set.complete);
        assert_eq!(set.r_cap, Some(8));
    }

    #[test]
    fn bounded_handles_multigraphs() {
        // doubled edge: 2 r_2 = d_1 r_1 and 2 r_1 = d_2 r_2
        let a = IntMatrix::from_rows(&[vec![0, 2], vec![2, 0]]).unwrap();
        let set = enumerate_bounded(&a, 10).unwrap();
        let rs: Vec<_> = set.iter().map(|s| s.r.clone()).collect();
        assert_eq!(rs, vec![vec![1, 1], vec![1, 2], vec![2, 1]]);
    }
}
