use super::traits::VertexAlgebra;
use crate::error::{Error, Result};
use crate::exact_algebra::{factorial_inv, sign, Vector};

/// `a_m b`, bilinear in `a` and `b`.
pub fn mode_action<V: VertexAlgebra + ?Sized>(v: &V, a: &Vector, m: i64, b: &Vector) -> Result<Vector> {
    let mut out = Vector::zero();
    for (ka, ca) in a.iter() {
        for (kb, cb) in b.iter() {
            out.add_scaled(&*v.mode_basis(*ka, m, *kb)?, &(ca * cb));
        }
    }
    Ok(out)
}

/// `L(n) b = ω_{n+1} b`.
pub fn virasoro_mode<V: VertexAlgebra + ?Sized>(v: &V, n: i64, b: &Vector) -> Result<Vector> {
    mode_action(v, v.conformal_vector(), n + 1, b)
}

/// `L(n)^j b`.
pub fn virasoro_power<V: VertexAlgebra + ?Sized>(v: &V, n: i64, j: usize, b: &Vector) -> Result<Vector> {
    let mut out = b.clone();
    for _ in 0..j {
        if out.is_zero() {
            break;
        }
        out = virasoro_mode(v, n, &out)?;
    }
    Ok(out)
}

/// Weight of a nonzero homogeneous vector; `None` for zero.
pub fn weight(a: &Vector) -> Result<Option<i64>> {
    Ok(a.homogeneous_level()?.map(|l| l as i64))
}

/// `a'_m b = Σ_j (-1)^{wt a}/j! (L(1)^j a)_{2 wt a - m - j - 2} b`.
pub fn primed_mode<V: VertexAlgebra + ?Sized>(v: &V, a: &Vector, m: i64, b: &Vector) -> Result<Vector> {
    let Some(wt) = weight(a)? else { return Ok(Vector::zero()) };
    let mut out = Vector::zero();
    let mut lj = a.clone();
    for j in 0..=wt {
        if lj.is_zero() {
            break;
        }
        let term = mode_action(v, &lj, 2 * wt - m - j - 2, b)?;
        out.add_scaled(&term, &(sign(wt) * factorial_inv(j as usize)));
        lj = virasoro_mode(v, 1, &lj)?;
    }
    Ok(out)
}

/// `a'^op_m b = Σ_{i,j} (-1)^{wt a + m + i + 1}/(j! i!) (L(1)^j a)_{2 wt a - m - j - i - 2} L(1)^i b`.
pub fn primed_op_mode<V: VertexAlgebra + ?Sized>(v: &V, a: &Vector, m: i64, b: &Vector) -> Result<Vector> {
    let Some(wt) = weight(a)? else { return Ok(Vector::zero()) };
    let top = b.levels().last().copied().unwrap_or(0) as i64;
    let mut out = Vector::zero();
    let mut li = b.clone();
    for i in 0..=top {
        if li.is_zero() {
            break;
        }
        let mut lj = a.clone();
        for j in 0..=wt {
            if lj.is_zero() {
                break;
            }
            let term = mode_action(v, &lj, 2 * wt - m - j - i - 2, &li)?;
            let c = sign(wt + m + i + 1) * factorial_inv(j as usize) * factorial_inv(i as usize);
            out.add_scaled(&term, &c);
            lj = virasoro_mode(v, 1, &lj)?;
        }
        li = virasoro_mode(v, 1, &li)?;
    }
    Ok(out)
}

/// The three m-dot products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DotKind {
    /// `α ·_m β = β_m α`
    Plain,
    /// `α ·'_m β = α'_m β`
    Primed,
    /// `α ·'op_m β = β'op_m α`
    PrimedOp,
}

pub fn m_dot<V: VertexAlgebra + ?Sized>(v: &V, kind: DotKind, alpha: &Vector, m: i64, beta: &Vector) -> Result<Vector> {
    match kind {
        DotKind::Plain => mode_action(v, beta, m, alpha),
        DotKind::Primed => primed_mode(v, alpha, m, beta),
        DotKind::PrimedOp => primed_op_mode(v, beta, m, alpha),
    }
}

/// Requires an integer level `n` inside the window and returns it.
pub fn require_level<V: VertexAlgebra + ?Sized>(v: &V, n: i64) -> Result<usize> {
    if n < 0 || n as usize > v.max_degree() {
        return Err(Error::OutOfWindow { level: n, max: v.max_degree() });
    }
    Ok(n as usize)
}
