//! Unimodular row reduction and the integer lattices built on it.
//!
//! Everything here reduces to one routine: row-echelon form of a rectangular integer matrix under
//! unimodular row operations, with the transform `T` (so `T A = E`) and its inverse tracked
//! alongside. Pivots are the smallest non-zero absolute value in the column, ties broken by the
//! lowest row index.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

pub(crate) type Rows = Vec<Vec<BigInt>>;

pub(crate) fn identity_rows(n: usize) -> Rows {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub(crate) struct Echelon {
    pub form: Rows,
    /// Unimodular `T` with `T A = form`.
    pub transform: Rows,
    /// `T^{-1}`.
    pub inverse: Rows,
    pub rank: usize,
}

struct Reducer {
    form: Rows,
    transform: Rows,
    inverse: Rows,
}

impl Reducer {
    fn swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.form.swap(i, j);
        self.transform.swap(i, j);
        for row in &mut self.inverse {
            row.swap(i, j);
        }
    }

    /// row_i += k * row_j
    fn add(&mut self, i: usize, j: usize, k: &BigInt) {
        add_row(&mut self.form, i, j, k);
        add_row(&mut self.transform, i, j, k);
        // T^{-1} <- T^{-1} (I - k e_i e_j^T): col_j -= k * col_i
        for row in &mut self.inverse {
            let v = &row[i] * k;
            row[j] -= v;
        }
    }

    fn negate(&mut self, i: usize) {
        for v in self.form[i].iter_mut().chain(self.transform[i].iter_mut()) {
            *v = -std::mem::take(v);
        }
        for row in &mut self.inverse {
            row[i] = -std::mem::take(&mut row[i]);
        }
    }
}

fn add_row(rows: &mut Rows, i: usize, j: usize, k: &BigInt) {
    let src = rows[j].clone();
    for (dst, s) in rows[i].iter_mut().zip(&src) {
        if !s.is_zero() {
            *dst += s * k;
        }
    }
}

fn smallest_pivot(rows: &Rows, from: usize, col: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, row) in rows.iter().enumerate().skip(from) {
        let v = &row[col];
        if v.is_zero() {
            continue;
        }
        match best {
            Some(b) if rows[b][col].abs() <= v.abs() => {}
            _ => best = Some(i),
        }
    }
    best
}

pub(crate) fn row_echelon(a: Rows) -> Echelon {
    let m = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = Reducer {
        form: a,
        transform: identity_rows(m),
        inverse: identity_rows(m),
    };
    let mut k = 0;
    for c in 0..cols {
        if k == m {
            break;
        }
        loop {
            let Some(p) = smallest_pivot(&r.form, k, c) else {
                break;
            };
            r.swap(k, p);
            let mut clean = true;
            for i in k + 1..m {
                if r.form[i][c].is_zero() {
                    continue;
                }
                let q = r.form[i][c].div_floor(&r.form[k][c]);
                r.add(i, k, &-q);
                if !r.form[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                if r.form[k][c].is_negative() {
                    r.negate(k);
                }
                k += 1;
                break;
            }
        }
    }
    Echelon {
        form: r.form,
        transform: r.transform,
        inverse: r.inverse,
        rank: k,
    }
}

/// Hermite normal form of the lattice spanned by `rows` (non-zero rows only, pivots positive,
/// entries above each pivot reduced into `[0, pivot)`).
pub(crate) fn hermite_rows(rows: Rows) -> Rows {
    if rows.is_empty() {
        return rows;
    }
    let ech = row_echelon(rows);
    let mut h: Rows = ech.form.into_iter().take(ech.rank).collect();
    for k in 0..h.len() {
        let c = h[k].iter().position(|v| !v.is_zero()).expect("echelon row is non-zero");
        let pivot = h[k][c].clone();
        for i in 0..k {
            let q = h[i][c].div_floor(&pivot);
            if !q.is_zero() {
                let neg = -q;
                add_row(&mut h, i, k, &neg);
            }
        }
    }
    h
}

fn transpose_rows(a: &Rows, cols: usize) -> Rows {
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Basis of the integer null lattice `{v : A v = 0}` of a rectangular matrix, in Hermite form.
pub(crate) fn kernel_rows(a: &Rows, cols: usize) -> Rows {
    let ech = row_echelon(transpose_rows(a, cols));
    let basis: Rows = ech.transform.into_iter().skip(ech.rank).collect();
    hermite_rows(basis)
}

/// Basis of the integer null lattice of `M`, each vector primitive; empty iff `M` is non-singular.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    kernel_rows(&m.rows(), m.dim())
}

/// Basis of `{x in Z^n : r.x = 0}` together with the map that writes any integer vector in the
/// basis `(t_0, basis...)` of `Z^n`.
pub(crate) struct HyperplaneLattice {
    /// Rows `t_1 .. t_{n-1}` spanning the lattice.
    pub basis: Rows,
    /// `T^{-1}`: the coordinates of `v` are `v^T T^{-1}`; coordinate 0 is the component
    /// outside the lattice.
    coords: Rows,
}

impl HyperplaneLattice {
    pub(crate) fn new(r: &[BigInt]) -> Self {
        let column: Rows = r.iter().map(|x| vec![x.clone()]).collect();
        let ech = row_echelon(column);
        let mut transform = ech.transform;
        let basis = transform.split_off(1);
        HyperplaneLattice {
            basis,
            coords: ech.inverse,
        }
    }

    /// Coordinates of `v` in the lattice basis, or `None` if `v` is not in the lattice.
    pub(crate) fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let n = v.len();
        let c: Vec<BigInt> = (0..n)
            .map(|j| v.iter().zip(&self.coords).map(|(x, row)| x * &row[j]).sum())
            .collect();
        if !c[0].is_zero() {
            return None;
        }
        Some(c[1..].to_vec())
    }
}

/// Lattice basis (n - 1 vectors) of `{x in Z^n : r.x = 0}` for a non-zero `r`, in Hermite form.
pub fn kernel_complement_basis<T: Clone + Into<BigInt>>(r: &[T]) -> Vec<Vec<BigInt>> {
    let r: Vec<BigInt> = r.iter().cloned().map(Into::into).collect();
    hermite_rows(HyperplaneLattice::new(&r).basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Membership of `v` in the integer span of `basis`, decided independently of the
    /// reduction code by brute force over small coefficients.
    fn in_span_small(basis: &[Vec<BigInt>], v: &[BigInt], bound: i64) -> bool {
        fn rec(basis: &[Vec<BigInt>], acc: Vec<BigInt>, v: &[BigInt], k: usize, bound: i64) -> bool {
            if k == basis.len() {
                return acc == v;
            }
            (-bound..=bound).any(|c| {
                let next: Vec<BigInt> = acc.iter().zip(&basis[k]).map(|(a, b)| a + b * c).collect();
                rec(basis, next, v, k + 1, bound)
            })
        }
        rec(basis, vec![BigInt::zero(); v.len()], v, 0, bound)
    }

    #[test]
    fn kernel_examples() {
        let c4 = mat(&[&[6, -1, 0, -1], &[-1, 2, -1, 0], &[0, -1, 2, -1], &[-1, 0, -1, 1]]);
        assert_eq!(integer_kernel(&c4), vec![bi(&[1, 2, 3, 4])]);
        let k4 = mat(&[&[3, -1, -1, -1], &[-1, 3, -1, -1], &[-1, -1, 3, -1], &[-1, -1, -1, 3]]);
        assert_eq!(integer_kernel(&k4), vec![bi(&[1, 1, 1, 1])]);
        assert!(integer_kernel(&IntMatrix::identity(3)).is_empty());
        assert_eq!(integer_kernel(&IntMatrix::zeros(2)).len(), 2);
    }

    #[test]
    fn kernel_vectors_are_primitive_when_lattice_is_saturated() {
        // kernel of [[2, 4]] over Q is spanned by (2, -1); over Z the lattice is saturated
        let m = mat(&[&[2, 4], &[2, 4]]);
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], bi(&[2, -1]));
    }

    #[test]
    fn hyperplane_examples() {
        let b = kernel_complement_basis(&[1u64, 2]);
        assert_eq!(b, vec![bi(&[2, -1])]);

        let b = kernel_complement_basis(&[1u64, 1, 1, 1]);
        assert_eq!(b.len(), 3);
        for v in &b {
            assert!(v.iter().sum::<BigInt>().is_zero());
        }
        for e in [[1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1]] {
            assert!(in_span_small(&b, &bi(&e), 2));
        }

        let b = kernel_complement_basis(&[1u64, 2, 3]);
        assert_eq!(b.len(), 2);
        for v in &b {
            let s: BigInt = &v[0] + &v[1] * 2 + &v[2] * 3;
            assert!(s.is_zero());
        }
        assert!(in_span_small(&b, &bi(&[-2, 1, 0]), 4));
        assert!(in_span_small(&b, &bi(&[-3, 0, 1]), 4));
    }

    #[test]
    fn hyperplane_coordinates_round_trip() {
        let r = bi(&[3, 5, 7, 2]);
        let lat = HyperplaneLattice::new(&r);
        let v = bi(&[5, -3, 0, 0]);
        let c = lat.coordinates(&v).expect("v is in the hyperplane");
        let mut back = vec![BigInt::zero(); 4];
        for (ci, row) in c.iter().zip(&lat.basis) {
            for (b, x) in back.iter_mut().zip(row) {
                *b += ci * x;
            }
        }
        assert_eq!(back, v);
        assert!(lat.coordinates(&bi(&[1, 0, 0, 0])).is_none());
    }
}
