use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use arithgraph::critical::{blowup_preserves_critical_group, critical_group, critical_group_of_matrix};
use arithgraph::enumerate::{enumerate_bounded_graph, enumerate_certified};
use arithgraph::graph::laplacian_like;
use arithgraph::linalg::{det, integer_kernel, kernel_complement_basis, proper_principal_minors_positive, smith_normal_form};
use arithgraph::mclass::classify;
use arithgraph::structure::{d_from_r, r_from_d};
use arithgraph::transforms::{clique_star, mq_matrix, pq_conjugation_check, rho, zn_orbit};
use arithgraph::{make_graph, ArithStructure, Family, IntMatrix};

/// Determinant by cofactor expansion along the first row.
fn cofactor_det(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    if n == 1 {
        return BigInt::from(rows[0][0]);
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if rows[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
            .collect();
        let term = BigInt::from(rows[0][j]) * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn square(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_n).prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(lo..=hi, n), n))
}

fn z_matrix(max_n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_n).prop_flat_map(|n| {
        (prop::collection::vec(0i64..=6, n), prop::collection::vec(0i64..=2, n * n)).prop_map(move |(d, off)| {
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { d[i] } else { -off[i * n + j] }).collect())
                .collect()
        })
    })
}

fn mat(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn smith_form_identity(rows in square(5, -6, 6)) {
        let m = mat(&rows);
        let snf = smith_normal_form(&m);
        let n = m.dim();
        let mut s = IntMatrix::zeros(n);
        for (i, x) in snf.diag.iter().enumerate() {
            s.set(i, i, x.clone());
        }
        prop_assert_eq!(&(&snf.left * &m) * &snf.right, s);
        prop_assert!(det(&snf.left).abs().is_one());
        prop_assert!(det(&snf.right).abs().is_one());
        for w in snf.diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
        let product: BigInt = snf.diag.iter().product();
        prop_assert_eq!(det(&m).abs(), product);
        prop_assert_eq!(det(&m), cofactor_det(&rows));
    }

    #[test]
    fn kernel_basis_is_exact(rows in square(5, -3, 3)) {
        let m = mat(&rows);
        let kernel = integer_kernel(&m);
        let rank = smith_normal_form(&m).rank();
        prop_assert_eq!(kernel.len() + rank, m.dim());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            prop_assert!(v.iter().any(|x| !x.is_zero()));
        }
    }

    #[test]
    fn hyperplane_basis_spans_kernel_of_r(r in prop::collection::vec(1u64..=12, 2..=6)) {
        let basis = kernel_complement_basis(&r);
        prop_assert_eq!(basis.len(), r.len() - 1);
        for v in &basis {
            let dot: BigInt = v.iter().zip(&r).map(|(x, &y)| x * y).sum();
            prop_assert!(dot.is_zero());
        }
    }

    #[test]
    fn proper_minors_match_cofactor_oracle(rows in square(6, -4, 4)) {
        let n = rows.len();
        let mut expected_ok = true;
        for mask in 1u32..(1 << n) - 1 {
            let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let sub: Vec<Vec<i64>> = idx.iter().map(|&i| idx.iter().map(|&j| rows[i][j]).collect()).collect();
            if !cofactor_det(&sub).is_positive() {
                expected_ok = false;
            }
        }
        let got = proper_principal_minors_positive(&mat(&rows));
        prop_assert_eq!(got.positive, expected_ok);
        prop_assert_eq!(got.witness.is_none(), expected_ok);
    }

    #[test]
    fn classification_is_permutation_invariant(rows in z_matrix(6), seed in any::<u64>()) {
        let m = mat(&rows);
        let n = m.dim();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let a = classify(&m);
        let b = classify(&m.permuted(&perm));
        prop_assert_eq!(a.is_z, b.is_z);
        prop_assert_eq!(a.is_m, b.is_m);
        prop_assert_eq!(a.is_almost_nonsingular_m, b.is_almost_nonsingular_m);
        prop_assert_eq!(a.is_irreducible, b.is_irreducible);
        prop_assert_eq!(a.det, b.det);
        prop_assert!(!a.is_almost_nonsingular_m || a.is_m);
        prop_assert!(!a.is_m || a.is_z);
    }

    #[test]
    fn pq_conjugation_holds(rows in square(6, -5, 5), q in prop::collection::vec(-3i64..=3, 6)) {
        let m = mat(&rows);
        let q = &q[..m.dim()];
        prop_assert!(pq_conjugation_check(&m, q).unwrap());
        prop_assert_eq!(det(&mq_matrix(&m, q).unwrap()), det(&m));
    }

    #[test]
    fn blowup_keeps_critical_group_on_cycles(idx in 0usize..126, q in prop::collection::vec(-2i64..=3, 5)) {
        let set = enumerate_certified(Family::Cycle, 5).unwrap();
        let s = &set.structures[idx];
        let m = laplacian_like(&set.adjacency, &s.d).unwrap();
        let x: i64 = q.iter().zip(&s.r).map(|(&a, &b)| a * b as i64).sum();
        prop_assume!(x != 0);
        prop_assert!(blowup_preserves_critical_group(&m, &s.r, &q).unwrap());
    }
}

#[test]
fn completion_round_trips_on_every_set() {
    let sets = [
        enumerate_certified(Family::Cycle, 5).unwrap(),
        enumerate_certified(Family::Path, 6).unwrap(),
        enumerate_certified(Family::Star, 3).unwrap(),
        enumerate_certified(Family::Wheel, 3).unwrap(),
    ];
    for set in &sets {
        for s in set.iter() {
            assert_eq!(d_from_r(&set.adjacency, &s.r).as_ref(), Some(&s.d), "{}", set.graph_spec);
            assert_eq!(r_from_d(&set.adjacency, &s.d).as_ref(), Some(&s.r), "{}", set.graph_spec);
        }
        assert!(set.structures.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn clique_star_is_injective_on_w3() {
    let w3 = make_graph(Family::Wheel, 3).unwrap();
    let set = enumerate_certified(Family::Wheel, 3).unwrap();
    let star = enumerate_certified(Family::Star, 4).unwrap();
    let mut images = BTreeSet::new();
    for s in set.iter() {
        let (_, img) = clique_star(&w3, &[0, 1, 2, 3], Some(s)).unwrap();
        let img = img.unwrap();
        // move the new centre to the front to compare with the star layout
        let centred = img.permuted(&[4, 0, 1, 2, 3]);
        assert!(star.contains(&centred));
        images.insert(centred);
    }
    assert_eq!(images.len(), set.len());
}

#[test]
fn w3_is_closed_under_permutations_and_rotation() {
    let set = enumerate_certified(Family::Wheel, 3).unwrap();
    let perms = [[1, 0, 2, 3], [0, 2, 3, 1], [3, 2, 1, 0]];
    let mut orbits: Vec<BTreeSet<Vec<u64>>> = Vec::new();
    for s in set.iter() {
        for p in perms {
            assert!(set.contains(&s.permuted(&p)));
        }
        let r1 = rho(1, &s.r);
        assert!(set.iter().any(|t| t.r == r1));
        let orbit: BTreeSet<Vec<u64>> = zn_orbit(3, &s.r).unwrap().into_iter().collect();
        assert_eq!(3 % orbit.len(), 0);
        for o in &orbits {
            assert!(o == &orbit || o.is_disjoint(&orbit));
        }
        if !orbits.contains(&orbit) {
            orbits.push(orbit);
        }
    }
    let covered: usize = orbits.iter().map(BTreeSet::len).sum();
    assert_eq!(covered, set.len());
}

#[test]
fn critical_group_is_basis_independent() {
    let set = enumerate_bounded_graph(&make_graph(Family::Wheel, 4).unwrap(), 12).unwrap();
    let perm = [3, 1, 4, 0, 2];
    for s in set.iter().step_by(7) {
        let cg = critical_group(&set.adjacency, &s.d, &s.r).unwrap();
        let p = s.permuted(&perm);
        let other = critical_group(&set.adjacency.permuted(&perm), &p.d, &p.r).unwrap();
        assert_eq!(cg, other);
        let direct = critical_group_of_matrix(&laplacian_like(&set.adjacency, &s.d).unwrap(), &s.r).unwrap();
        assert_eq!(cg, direct);
    }
}

#[test]
fn structures_are_primitive() {
    let set = enumerate_certified(Family::Star, 4).unwrap();
    let gcd = |v: &ArithStructure| v.r.iter().fold(0u64, |g, &x| num_integer::gcd(g, x));
    assert!(set.iter().all(|s| gcd(s) == 1));
}
