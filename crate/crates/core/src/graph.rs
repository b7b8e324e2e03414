//! Graph families, generalized Laplacians `diag(d) - A`, irreducibility and the class of
//! generalized graphs.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Path,
    Cycle,
    Star,
    Complete,
    Wheel,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Star => "star",
            Family::Complete => "complete",
            Family::Wheel => "wheel",
        }
    }

    /// Smallest admissible size parameter.
    pub fn min_size(self) -> usize {
        match self {
            Family::Cycle | Family::Wheel => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(Family::Path),
            "cycle" => Ok(Family::Cycle),
            "star" => Ok(Family::Star),
            "complete" => Ok(Family::Complete),
            "wheel" => Ok(Family::Wheel),
            other => Err(Error::Parse(format!("unknown graph family '{other}'"))),
        }
    }
}

/// A labeled graph given by a symmetric non-negative adjacency matrix with zero diagonal.
/// Entries above 1 are parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: IntMatrix,
    family: Option<(Family, usize)>,
    labels: Vec<String>,
}

impl Graph {
    /// A custom graph. The adjacency must be symmetric, non-negative, with zero diagonal.
    pub fn from_adjacency(adjacency: IntMatrix) -> Result<Self> {
        validate_adjacency(&adjacency)?;
        if !adjacency.is_symmetric() {
            return Err(Error::InvalidGraph("adjacency matrix is not symmetric".into()));
        }
        let labels = (1..=adjacency.dim()).map(|i| format!("v{i}")).collect();
        Ok(Graph {
            adjacency,
            family: None,
            labels,
        })
    }

    pub fn adjacency(&self) -> &IntMatrix {
        &self.adjacency
    }

    pub fn family(&self) -> Option<(Family, usize)> {
        self.family
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.adjacency.dim()
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.order())
            .map(|i| {
                let s: BigInt = self.adjacency.row(i).iter().sum();
                s.to_u64().expect("degree fits in u64")
            })
            .collect()
    }

    pub fn edge_count(&self) -> u64 {
        self.degrees().iter().sum::<u64>() / 2
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&u| !self.adjacency.get(v, u).is_zero())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        is_irreducible(&self.adjacency)
    }

    /// Spec string as accepted by the CLI (`wheel:6`), or `custom` for custom graphs.
    pub fn spec(&self) -> String {
        match self.family {
            Some((f, n)) => format!("{f}:{n}"),
            None => "custom".to_string(),
        }
    }
}

fn validate_adjacency(a: &IntMatrix) -> Result<()> {
    if !a.has_zero_diagonal() {
        return Err(Error::InvalidGraph("adjacency has a non-zero diagonal entry".into()));
    }
    if !a.is_nonnegative() {
        return Err(Error::InvalidGraph("adjacency has a negative entry".into()));
    }
    Ok(())
}

/// Build one of the named families.
///
/// Vertex layout: `star(n)` has centre `v0` and leaves `v1..vn`; `wheel(n)` has hub `v0` and
/// rim `v1..vn` in cyclic order; path, cycle and complete graphs use `v1..vn` in order.
pub fn make_graph(family: Family, n: usize) -> Result<Graph> {
    if n < family.min_size() {
        return Err(Error::InvalidGraph(format!(
            "{family} graph needs n >= {}, got {n}",
            family.min_size()
        )));
    }
    let order = match family {
        Family::Star | Family::Wheel => n + 1,
        _ => n,
    };
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match family {
        Family::Path => edges.extend((1..n).map(|i| (i - 1, i))),
        Family::Cycle => edges.extend((0..n).map(|i| (i, (i + 1) % n))),
        Family::Star => edges.extend((1..=n).map(|i| (0, i))),
        Family::Complete => {
            for i in 0..n {
                edges.extend((i + 1..n).map(|j| (i, j)));
            }
        }
        Family::Wheel => {
            edges.extend((1..=n).map(|i| (0, i)));
            edges.extend((1..=n).map(|i| (i, i % n + 1)));
        }
    }
    let mut adjacency = IntMatrix::zeros(order);
    for (u, v) in edges {
        adjacency.set(u, v, BigInt::from(1));
        adjacency.set(v, u, BigInt::from(1));
    }
    let labels = match family {
        Family::Star | Family::Wheel => (0..order).map(|i| format!("v{i}")).collect(),
        _ => (1..=order).map(|i| format!("v{i}")).collect(),
    };
    Ok(Graph {
        adjacency,
        family: Some((family, n)),
        labels,
    })
}

/// `diag(d) - A`.
pub fn laplacian_like<T: Copy + Into<BigInt>>(a: &IntMatrix, d: &[T]) -> Result<IntMatrix> {
    if a.dim() != d.len() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: d.len(),
        });
    }
    let mut m = IntMatrix::zeros(a.dim());
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let mut v = -a.get(i, j);
            if i == j {
                v += d[i].into();
            }
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// True iff the directed support graph of the off-diagonal entries is strongly connected
/// (equivalently, no index bipartition `N1, N2` has `M[N1][N2] = 0`). Dimension 1 is
/// irreducible.
pub fn is_irreducible(m: &IntMatrix) -> bool {
    let n = m.dim();
    let reach_all = |forward: bool| {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                let e = if forward { m.get(u, v) } else { m.get(v, u) };
                if u != v && !e.is_zero() && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach_all(true) && reach_all(false)
}

/// Membership in the class of generalized graphs: non-negative, zero diagonal, and some
/// positive `d` makes `diag(d) - A` an almost non-singular M-matrix with determinant 0.
///
/// Decided as "irreducible and n >= 2": row sums give such a `d` with the all-ones kernel
/// vector, and a reducible matrix admits none. A single vertex is excluded.
pub fn in_generalized_class(a: &IntMatrix) -> Result<bool> {
    validate_generalized(a)?;
    Ok(a.dim() >= 2 && is_irreducible(a))
}

fn validate_generalized(a: &IntMatrix) -> Result<()> {
    if !a.has_zero_diagonal() {
        return Err(Error::InvalidGeneralizedGraph("diagonal entries must be zero".into()));
    }
    if !a.is_nonnegative() {
        return Err(Error::InvalidGeneralizedGraph("entries must be non-negative".into()));
    }
    Ok(())
}

/// A non-negative integer matrix with zero diagonal (possibly non-symmetric).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedGraph {
    matrix: IntMatrix,
}

impl GeneralizedGraph {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        validate_generalized(&matrix)?;
        Ok(GeneralizedGraph { matrix })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_member(&self) -> bool {
        self.matrix.dim() >= 2 && is_irreducible(&self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn wheel_three_is_k4() {
        let w3 = make_graph(Family::Wheel, 3).unwrap();
        let k4 = make_graph(Family::Complete, 4).unwrap();
        assert_eq!(w3.adjacency(), k4.adjacency());
        assert_eq!(w3.labels()[0], "v0");
    }

    #[test]
    fn family_shapes() {
        let c3 = make_graph(Family::Cycle, 3).unwrap();
        assert_eq!(c3.adjacency(), &mat(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]));
        let w6 = make_graph(Family::Wheel, 6).unwrap();
        assert_eq!(w6.order(), 7);
        assert_eq!(w6.degrees(), vec![6, 3, 3, 3, 3, 3, 3]);
        assert_eq!(w6.edge_count(), 12);
        let s4 = make_graph(Family::Star, 4).unwrap();
        assert_eq!(s4.degrees(), vec![4, 1, 1, 1, 1]);
        let p1 = make_graph(Family::Path, 1).unwrap();
        assert_eq!(p1.order(), 1);
        assert_eq!(w6.spec(), "wheel:6");
    }

    #[test]
    fn small_cycles_and_wheels_rejected() {
        assert!(make_graph(Family::Cycle, 2).is_err());
        assert!(make_graph(Family::Wheel, 2).is_err());
        assert!(make_graph(Family::Star, 0).is_err());
    }

    #[test]
    fn laplacian_like_examples() {
        let c3 = make_graph(Family::Cycle, 3).unwrap();
        let l = laplacian_like(c3.adjacency(), &[2u64, 2, 2]).unwrap();
        assert_eq!(l, mat(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]));
        let l = laplacian_like(c3.adjacency(), &[5u64, 2, 1]).unwrap();
        assert!(l.annihilates(&[1i64, 2, 3]));
        let w3 = make_graph(Family::Wheel, 3).unwrap();
        let l = laplacian_like(w3.adjacency(), &[3u64; 4]).unwrap();
        assert!(det(&l).is_zero());
        assert!(matches!(
            laplacian_like(w3.adjacency(), &[1u64, 2]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(make_graph(Family::Wheel, 6).unwrap().adjacency()));
        let two_triangles = mat(&[
            &[0, 1, 1, 0, 0, 0],
            &[1, 0, 1, 0, 0, 0],
            &[1, 1, 0, 0, 0, 0],
            &[0, 0, 0, 0, 1, 1],
            &[0, 0, 0, 1, 0, 1],
            &[0, 0, 0, 1, 1, 0],
        ]);
        assert!(!is_irreducible(&two_triangles));
        assert!(!is_irreducible(&mat(&[&[0, 1], &[0, 0]])));
        assert!(is_irreducible(&mat(&[&[0]])));
    }

    #[test]
    fn generalized_class() {
        assert!(in_generalized_class(make_graph(Family::Wheel, 3).unwrap().adjacency()).unwrap());
        let block = mat(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        assert!(!in_generalized_class(&block).unwrap());
        assert!(!in_generalized_class(&mat(&[&[0]])).unwrap());
        assert!(matches!(
            in_generalized_class(&mat(&[&[1, 1], &[1, 0]])),
            Err(Error::InvalidGeneralizedGraph(_))
        ));
        assert!(in_generalized_class(&mat(&[&[0, -1], &[1, 0]])).is_err());
        // non-symmetric but strongly connected
        assert!(in_generalized_class(&mat(&[&[0, 2, 0], &[0, 0, 1], &[3, 0, 0]])).unwrap());
    }

    #[test]
    fn custom_graph_validation() {
        assert!(Graph::from_adjacency(mat(&[&[0, 1], &[0, 0]])).is_err());
        assert!(Graph::from_adjacency(mat(&[&[0, 2], &[2, 0]])).is_ok());
    }
}
