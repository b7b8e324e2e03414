//! Structure-producing maps: clique-star, blowups, cycle-to-wheel constructions, wheel
//! extension and the rotation action on wheel rims.
//!
//! Every operation verifies its output exactly before returning it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{laplacian_like, make_graph, Family, Graph};
use crate::linalg::IntMatrix;
use crate::structure::{d_from_r, gcd_all, is_arithmetical, ArithStructure};

fn overflow(what: &str) -> Error {
    Error::Overflow(format!("{what} exceeds u64"))
}

fn checked_sum(v: &[u64]) -> Result<u64> {
    v.iter()
        .try_fold(0u64, |s, &x| s.checked_add(x))
        .ok_or_else(|| overflow("sum of r"))
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

fn ensure_structure(a: &IntMatrix, d: &[u64], r: &[u64], on: &str) -> Result<()> {
    if !is_arithmetical(a, d, r)? {
        return Err(Error::NotAStructure(format!("d = {d:?}, r = {r:?} on {on}")));
    }
    Ok(())
}

fn verified(a: &IntMatrix, s: ArithStructure, on: &str) -> Result<ArithStructure> {
    ensure_structure(a, &s.d, &s.r, on)?;
    Ok(s)
}

/// Removes the edges inside the clique `c` and joins a new vertex (placed last) to every
/// vertex of `c`. A structure maps to `d + 1` on `c`, `d = 1` and `r = sum_{u in c} r_u` on the
/// new vertex.
pub fn clique_star(
    graph: &Graph,
    c: &[usize],
    s: Option<&ArithStructure>,
) -> Result<(Graph, Option<ArithStructure>)> {
    let n = graph.order();
    let mut members = c.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.is_empty() || members.len() != c.len() || members[members.len() - 1] >= n {
        return Err(Error::NotAClique(format!(
            "{c:?} must be distinct vertex indices below {n}"
        )));
    }
    let a = graph.adjacency();
    for (k, &u) in members.iter().enumerate() {
        for &v in &members[k + 1..] {
            if a.get(u, v).is_zero() {
                return Err(Error::NotAClique(format!("vertices {u} and {v} are not adjacent")));
            }
        }
    }
    let mut out = IntMatrix::zeros(n + 1);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, a.get(i, j).clone());
        }
    }
    for (k, &u) in members.iter().enumerate() {
        for &v in &members[k + 1..] {
            let e: BigInt = a.get(u, v) - 1;
            out.set(u, v, e.clone());
            out.set(v, u, e);
        }
        out.set(u, n, BigInt::one());
        out.set(n, u, BigInt::one());
    }
    let new_graph = Graph::from_adjacency(out)?;
    let image = match s {
        None => None,
        Some(s) => {
            ensure_structure(a, &s.d, &s.r, &graph.spec())?;
            let mut d = s.d.clone();
            let mut r = s.r.clone();
            let mut hub = 0u64;
            for &u in &members {
                d[u] = d[u].checked_add(1).ok_or_else(|| overflow("d"))?;
                hub = hub.checked_add(r[u]).ok_or_else(|| overflow("r"))?;
            }
            d.push(1);
            r.push(hub);
            Some(verified(new_graph.adjacency(), ArithStructure::new(d, r), "clique-star image")?)
        }
    };
    Ok((new_graph, image))
}

/// `M_q = [[M + q q^T, -q], [-q^T, 1]]`.
pub fn mq_matrix(m: &IntMatrix, q: &[i64]) -> Result<IntMatrix> {
    check_len(m.dim(), q.len())?;
    Ok(bordered(m, q, false))
}

/// `[[M + s q q^T, s q], [s q^T, 1]]` with `s = -1` (plus form) or `s = +1` (minus form).
fn bordered(m: &IntMatrix, q: &[i64], minus: bool) -> IntMatrix {
    let n = m.dim();
    let sign: i64 = if minus { 1 } else { -1 };
    let mut out = IntMatrix::zeros(n + 1);
    for i in 0..n {
        for j in 0..n {
            let qq = BigInt::from(q[i]) * q[j];
            let v = if minus { m.get(i, j) - qq } else { m.get(i, j) + qq };
            out.set(i, j, v);
        }
        out.set(i, n, BigInt::from(sign * q[i]));
        out.set(n, i, BigInt::from(sign * q[i]));
    }
    out.set(n, n, BigInt::one());
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Blowup {
    pub mq: IntMatrix,
    pub mq_minus: IntMatrix,
    #[serde(serialize_with = "crate::io::ser_bigint")]
    pub x: BigInt,
    /// The extended kernel vector `(r, x)`.
    #[serde(serialize_with = "crate::io::ser_bigint_vec")]
    pub kernel: Vec<BigInt>,
    /// Whether `mq_minus` annihilates `(r, x)`. Its last row evaluates to `2x`, so this is
    /// false whenever `x != 0`.
    pub mq_minus_annihilates: bool,
}

/// Blowup of `M` along `q`, given a kernel vector `r` of `M` with `x = q . r != 0`.
pub fn blowup_mq(m: &IntMatrix, q: &[i64], r: &[u64]) -> Result<Blowup> {
    check_len(m.dim(), q.len())?;
    check_len(m.dim(), r.len())?;
    if !m.annihilates(r) {
        return Err(Error::KernelMismatch);
    }
    let x: BigInt = q.iter().zip(r).map(|(&qi, &ri)| BigInt::from(qi) * ri).sum();
    if x.is_zero() {
        return Err(Error::ZeroX);
    }
    let mut kernel: Vec<BigInt> = r.iter().map(|&v| BigInt::from(v)).collect();
    kernel.push(x.clone());
    let mq = bordered(m, q, false);
    if !mq.mul_vec(&kernel)?.iter().all(Zero::is_zero) {
        return Err(Error::KernelMismatch);
    }
    let mq_minus = bordered(m, q, true);
    let mq_minus_annihilates = mq_minus.mul_vec(&kernel)?.iter().all(Zero::is_zero);
    Ok(Blowup {
        mq,
        mq_minus,
        x,
        kernel,
        mq_minus_annihilates,
    })
}

/// Checks `P M_q Q = diag(M, 1)` for `P = [[I, q], [0, 1]]` and `Q = [[I, 0], [q^T, 1]]`.
pub fn pq_conjugation_check(m: &IntMatrix, q: &[i64]) -> Result<bool> {
    let mq = mq_matrix(m, q)?;
    let n = m.dim();
    let mut p = IntMatrix::identity(n + 1);
    let mut qm = IntMatrix::identity(n + 1);
    let mut target = IntMatrix::identity(n + 1);
    for i in 0..n {
        p.set(i, n, BigInt::from(q[i]));
        qm.set(n, i, BigInt::from(q[i]));
        for j in 0..n {
            target.set(i, j, m.get(i, j).clone());
        }
    }
    Ok(&(&p * &mq) * &qm == target)
}

fn check_pq(p: &[u64], q: &[u64], n: usize) -> Result<()> {
    check_len(n, p.len())?;
    check_len(n, q.len())?;
    if p.iter().chain(q).any(|&x| x == 0) {
        return Err(Error::NonPositivePQ);
    }
    Ok(())
}

fn weighted_sum(r: &[u64], q: &[u64]) -> Result<u64> {
    r.iter()
        .zip(q)
        .try_fold(0u64, |s, (&a, &b)| s.checked_add(a.checked_mul(b)?))
        .ok_or_else(|| overflow("sum r_j q_j"))
}

/// Generalized blowup `B_{p,q}(M) = [[1, -q^T], [-p, p q^T + M]]` of `M = diag(d) - A`, with
/// the new vertex first. The structure becomes `d = (1, d_i + p_i q_i)`,
/// `r = (sum r_j q_j, r)`.
pub fn generalized_blowup_m(
    m: &IntMatrix,
    d: &[u64],
    r: &[u64],
    p: &[u64],
    q: &[u64],
) -> Result<(IntMatrix, ArithStructure)> {
    let n = m.dim();
    check_len(n, d.len())?;
    check_len(n, r.len())?;
    check_pq(p, q, n)?;
    if m.diag().iter().zip(d).any(|(x, &y)| *x != BigInt::from(y)) {
        return Err(Error::PreconditionViolation("diagonal of M must equal d".into()));
    }
    if !m.annihilates(r) {
        return Err(Error::KernelMismatch);
    }
    let mut b = IntMatrix::zeros(n + 1);
    b.set(0, 0, BigInt::one());
    for i in 0..n {
        b.set(0, i + 1, -BigInt::from(q[i]));
        b.set(i + 1, 0, -BigInt::from(p[i]));
        for j in 0..n {
            b.set(i + 1, j + 1, m.get(i, j) + BigInt::from(p[i]) * q[j]);
        }
    }
    let mut dh = vec![1u64];
    for i in 0..n {
        let pq = p[i].checked_mul(q[i]).ok_or_else(|| overflow("p_i q_i"))?;
        dh.push(d[i].checked_add(pq).ok_or_else(|| overflow("d"))?);
    }
    let mut rh = vec![weighted_sum(r, q)?];
    rh.extend_from_slice(r);
    if !b.annihilates(&rh) {
        return Err(Error::KernelMismatch);
    }
    Ok((b, ArithStructure::new(dh, rh)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralizedBlowupA {
    /// `[[0, q^T], [p, A - (p q^T - diag(p_i q_i)) / g]]`, new vertex first.
    pub matrix: IntMatrix,
    pub structure: ArithStructure,
    pub g: u64,
    /// Set when some off-diagonal entry is negative, so the matrix is not a generalized graph.
    pub raw: bool,
}

/// Generalized blowup of an adjacency matrix, with `g = gcd(q)`. The structure becomes
/// `d = (g, d_i + p_i q_i / g)`, `r = (sum r_j q_j / g, r)`.
pub fn generalized_blowup_a(
    a: &IntMatrix,
    d: &[u64],
    r: &[u64],
    p: &[u64],
    q: &[u64],
) -> Result<GeneralizedBlowupA> {
    let n = a.dim();
    check_len(n, d.len())?;
    check_len(n, r.len())?;
    check_pq(p, q, n)?;
    if !laplacian_like(a, d)?.annihilates(r) {
        return Err(Error::KernelMismatch);
    }
    let g = gcd_all(q);
    let mut t = IntMatrix::zeros(n + 1);
    for i in 0..n {
        t.set(0, i + 1, BigInt::from(q[i]));
        t.set(i + 1, 0, BigInt::from(p[i]));
        for j in 0..n {
            if i == j {
                t.set(i + 1, j + 1, a.get(i, j).clone());
                continue;
            }
            let pq = BigInt::from(p[i]) * q[j];
            // g divides every q_j, so this never fires; kept as a guard on the formula
            if !(&pq % g).is_zero() {
                return Err(Error::IntegralityViolation(format!("g = {g} does not divide p_{i} q_{j}")));
            }
            t.set(i + 1, j + 1, a.get(i, j) - pq / g);
        }
    }
    let mut dh = vec![g];
    for i in 0..n {
        let pq = p[i].checked_mul(q[i]).ok_or_else(|| overflow("p_i q_i"))?;
        if pq % g != 0 {
            return Err(Error::IntegralityViolation(format!("g = {g} does not divide p_{i} q_{i}")));
        }
        dh.push(d[i].checked_add(pq / g).ok_or_else(|| overflow("d"))?);
    }
    let mut rh = vec![weighted_sum(r, q)? / g];
    rh.extend_from_slice(r);
    if !laplacian_like(&t, &dh)?.annihilates(&rh) {
        return Err(Error::KernelMismatch);
    }
    let raw = (0..=n).any(|i| (0..=n).any(|j| i != j && t.get(i, j).is_negative()));
    Ok(GeneralizedBlowupA {
        matrix: t,
        structure: ArithStructure::new(dh, rh),
        g,
        raw,
    })
}

fn cycle_structure_d(r: &[u64]) -> Result<Vec<u64>> {
    let cycle = make_graph(Family::Cycle, r.len())?;
    d_from_r(cycle.adjacency(), r)
        .ok_or_else(|| Error::NotAStructure(format!("r = {r:?} is not an r-structure on cycle:{}", r.len())))
}

/// From `(d, r)` on `C_n` with every `r_i | sum r`: the wheel structure
/// `d = (1, d_i + sum/r_i)`, `r = (sum, r)`.
pub fn cycle_to_wheel_divisor(dc: &[u64], rc: &[u64]) -> Result<ArithStructure> {
    check_len(rc.len(), dc.len())?;
    let n = rc.len();
    let cycle = make_graph(Family::Cycle, n)?;
    ensure_structure(cycle.adjacency(), dc, rc, &cycle.spec())?;
    let total = checked_sum(rc)?;
    let mut d = vec![1u64];
    for (i, (&di, &ri)) in dc.iter().zip(rc).enumerate() {
        if total % ri != 0 {
            return Err(Error::DivisibilityViolation(format!("r_{i} = {ri} does not divide {total}")));
        }
        d.push(di.checked_add(total / ri).ok_or_else(|| overflow("d"))?);
    }
    let mut r = vec![total];
    r.extend_from_slice(rc);
    let wheel = make_graph(Family::Wheel, n)?;
    verified(wheel.adjacency(), ArithStructure::new(d, r), &wheel.spec())
}

/// From an r-structure on `C_n` and a hub value `r0` with `lcm(r) | r0 | sum r`: the wheel
/// r-structure `(r0, r)` with `d = (sum/r0, r0/r_i + d_i)`. Rim order follows the input.
pub fn cycle_to_wheel_lcm(rc: &[u64], r0: u64) -> Result<ArithStructure> {
    let dc = cycle_structure_d(rc)?;
    if r0 == 0 {
        return Err(Error::PreconditionViolation("r0 must be positive".into()));
    }
    let l = rc.iter().try_fold(1u64, |l, &x| {
        let g = l.gcd(&x);
        (l / g).checked_mul(x)
    });
    let l = l.ok_or_else(|| overflow("lcm of r"))?;
    let total = checked_sum(rc)?;
    if !r0.is_multiple_of(l) {
        return Err(Error::PreconditionViolation(format!("lcm(r) = {l} does not divide r0 = {r0}")));
    }
    if total % r0 != 0 {
        return Err(Error::PreconditionViolation(format!("r0 = {r0} does not divide sum(r) = {total}")));
    }
    let mut d = vec![total / r0];
    for (&di, &ri) in dc.iter().zip(rc) {
        d.push(di.checked_add(r0 / ri).ok_or_else(|| overflow("d"))?);
    }
    let mut r = vec![r0];
    r.extend_from_slice(rc);
    let wheel = make_graph(Family::Wheel, rc.len())?;
    verified(wheel.adjacency(), ArithStructure::new(d, r), &wheel.spec())
}

/// From `L(C_n, d) r = a 1` with `a > 0` and `a | sum r`: the wheel structure
/// `d = (sum/a, d)`, `r = (a, r) / gcd(a, r)`.
pub fn cycle_to_wheel_affine(dc: &[u64], rc: &[u64], a: i64) -> Result<ArithStructure> {
    check_len(rc.len(), dc.len())?;
    let n = rc.len();
    if dc.iter().chain(rc).any(|&x| x == 0) {
        return Err(Error::PreconditionViolation("d and r must be positive".into()));
    }
    let cycle = make_graph(Family::Cycle, n)?;
    let residue = laplacian_like(cycle.adjacency(), dc)?.apply(rc)?;
    let expected = BigInt::from(a);
    if residue.iter().any(|x| *x != expected) {
        return Err(Error::AffineResidueNotConstant);
    }
    if a <= 0 {
        return Err(Error::PreconditionViolation(format!("a = {a} must be positive")));
    }
    let a = a as u64;
    let total = checked_sum(rc)?;
    if total % a != 0 {
        return Err(Error::DivisibilityViolation(format!("a = {a} does not divide sum(r) = {total}")));
    }
    let g = rc.iter().fold(a, |g, &x| g.gcd(&x));
    let mut d = vec![total / a];
    d.extend_from_slice(dc);
    let mut r = vec![a / g];
    r.extend(rc.iter().map(|&x| x / g));
    let wheel = make_graph(Family::Wheel, n)?;
    verified(wheel.adjacency(), ArithStructure::new(d, r), &wheel.spec())
}

/// `r = (n, 1, ..., 1)`, `d = (1, n + 2, ..., n + 2)` on `W_n`.
pub fn wheel_unit_structure(n: usize) -> Result<ArithStructure> {
    let wheel = make_graph(Family::Wheel, n)?;
    let n64 = n as u64;
    let mut d = vec![n64 + 2; n + 1];
    d[0] = 1;
    let mut r = vec![1; n + 1];
    r[0] = n64;
    verified(wheel.adjacency(), ArithStructure::new(d, r), &wheel.spec())
}

/// Extends a structure on `W_n` with `r_0 | r_1 + r_n`, `r_1 | r_0`, `r_n | r_0` to `W_{n+1}`.
///
/// The new rim vertex goes between `v_n` and `v_1` (index `n + 1`), adjacent to the hub, `v_1`
/// and `v_n`; the rim edge `v_1 v_n` is removed. Its `r` is `r_0 + r_1 + r_n` and its `d` is 1.
pub fn wheel_extend(dw: &[u64], rw: &[u64]) -> Result<ArithStructure> {
    check_len(rw.len(), dw.len())?;
    if rw.len() < 4 {
        return Err(Error::PreconditionViolation("need a structure on a wheel with n >= 3".into()));
    }
    let n = rw.len() - 1;
    let wheel = make_graph(Family::Wheel, n)?;
    ensure_structure(wheel.adjacency(), dw, rw, &wheel.spec())?;
    let (r0, r1, rn) = (rw[0], rw[1], rw[n]);
    let side = r1.checked_add(rn).ok_or_else(|| overflow("r_1 + r_n"))?;
    if side % r0 != 0 {
        return Err(Error::PreconditionViolation(format!("r_0 = {r0} does not divide r_1 + r_n = {side}")));
    }
    if r0 % r1 != 0 || r0 % rn != 0 {
        return Err(Error::PreconditionViolation(format!(
            "r_1 = {r1} and r_{n} = {rn} must both divide r_0 = {r0}"
        )));
    }
    let new_r = side.checked_add(r0).ok_or_else(|| overflow("new r"))?;
    let add = |x: u64, y: u64| x.checked_add(y).ok_or_else(|| overflow("d"));
    let mut d = dw.to_vec();
    d[0] = add(d[0], new_r / r0)?;
    d[1] = add(d[1], (r0 + r1) / r1)?;
    d[n] = add(d[n], (r0 + rn) / rn)?;
    d.push(1);
    let mut r = rw.to_vec();
    r.push(new_r);
    let bigger = make_graph(Family::Wheel, n + 1)?;
    verified(bigger.adjacency(), ArithStructure::new(d, r), &bigger.spec())
}

/// `rho(c)` fixes `r_0` and rotates the rim: `(r_0, r_{c+1}, ..., r_n, r_1, ..., r_c)`.
pub fn rho(c: usize, r: &[u64]) -> Vec<u64> {
    let mut out = r.to_vec();
    if r.len() > 1 {
        out[1..].rotate_left(c % (r.len() - 1));
    }
    out
}

/// Orbit of an r-structure on `W_n` under rim rotation, in the order `c = 0, 1, ...` with
/// repeats dropped.
pub fn zn_orbit(n: usize, r: &[u64]) -> Result<Vec<Vec<u64>>> {
    let wheel = make_graph(Family::Wheel, n)?;
    if d_from_r(wheel.adjacency(), r).is_none() {
        return Err(Error::NotAStructure(format!("r = {r:?} is not an r-structure on wheel:{n}")));
    }
    let mut orbit: Vec<Vec<u64>> = Vec::new();
    for c in 0..n {
        let v = rho(c, r);
        if !orbit.contains(&v) {
            orbit.push(v);
        }
    }
    Ok(orbit)
}
