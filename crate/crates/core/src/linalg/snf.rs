use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::lattice::{identity_rows, Rows};
use super::IntMatrix;

/// Smith normal form `U M V = diag(s_1, ..., s_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// Non-negative, `s_i | s_{i+1}`, zeros last.
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|s| !s.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let n = m.dim();
    let (diag, u, v) = snf_rows(m.rows(), n);
    let to_matrix = |rows: Rows| IntMatrix::from_rows(&rows).expect("transform is square");
    SnfResult {
        diag,
        left: to_matrix(u),
        right: to_matrix(v),
    }
}

/// SNF of a rectangular `rows x cols` matrix. Returns the `min(rows, cols)` diagonal entries
/// with `U` (rows x rows) and `V` (cols x cols).
pub(crate) fn snf_rows(mut a: Rows, cols: usize) -> (Vec<BigInt>, Rows, Rows) {
    let m = a.len();
    let mut u = identity_rows(m);
    let mut v = identity_rows(cols);
    let steps = m.min(cols);
    let mut diag = Vec::with_capacity(steps);

    for t in 0..steps {
        loop {
            let Some((pi, pj)) = smallest_entry(&a, t, cols) else {
                break;
            };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = -a[i][t].div_floor(&a[t][t]);
                add_row(&mut a, i, t, &q);
                add_row(&mut u, i, t, &q);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = -a[t][j].div_floor(&a[t][t]);
                add_col(&mut a, j, t, &q);
                add_col(&mut v, j, t, &q);
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the remaining block
            let offender = (t + 1..m).find(|&i| {
                (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t]))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    add_row(&mut a, t, i, &one);
                    add_row(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut().chain(u[t].iter_mut()) {
                *x = -std::mem::take(x);
            }
        }
        diag.push(a[t][t].clone());
    }
    (diag, u, v)
}

fn smallest_entry(a: &Rows, t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().take(cols).skip(t) {
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[bi][bj].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn swap_cols(a: &mut Rows, i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// row_i += k * row_j
fn add_row(a: &mut Rows, i: usize, j: usize, k: &BigInt) {
    let src = a[j].clone();
    for (dst, s) in a[i].iter_mut().zip(&src) {
        if !s.is_zero() {
            *dst += s * k;
        }
    }
}

/// col_i += k * col_j
fn add_col(a: &mut Rows, i: usize, j: usize, k: &BigInt) {
    for row in a.iter_mut() {
        if !row[j].is_zero() {
            let s = &row[j] * k;
            row[i] += s;
        }
    }
}
