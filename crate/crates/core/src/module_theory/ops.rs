use super::traits::VoaModule;
use crate::error::{Error, Result};
use crate::exact_algebra::{factorial_inv, sign, Vector};
use crate::voa_core::{virasoro_mode, weight};

/// `a_m u` in the module, bilinear in `a` and `u`.
pub fn module_mode_action<M: VoaModule + ?Sized>(w: &M, a: &Vector, m: i64, u: &Vector) -> Result<Vector> {
    let mut out = Vector::zero();
    for (ka, ca) in a.iter() {
        for (ku, cu) in u.iter() {
            out.add_scaled(&*w.act_basis(*ka, m, *ku)?, &(ca * cu));
        }
    }
    Ok(out)
}

/// `L(n) u = ω_{n+1} u` in the module.
pub fn module_virasoro<M: VoaModule + ?Sized>(w: &M, n: i64, u: &Vector) -> Result<Vector> {
    let omega = w.algebra().conformal_vector().clone();
    module_mode_action(w, &omega, n + 1, u)
}

pub fn module_virasoro_power<M: VoaModule + ?Sized>(w: &M, n: i64, j: usize, u: &Vector) -> Result<Vector> {
    let mut out = u.clone();
    for _ in 0..j {
        if out.is_zero() {
            break;
        }
        out = module_virasoro(w, n, &out)?;
    }
    Ok(out)
}

/// `a'_m u = Σ_j (-1)^{wt a}/j! (L(1)^j a)_{2 wt a - m - j - 2} u` with `a` in
/// the algebra and `u` in the module.
pub fn module_primed_action<M: VoaModule + ?Sized>(w: &M, a: &Vector, m: i64, u: &Vector) -> Result<Vector> {
    let Some(wt) = weight(a)? else { return Ok(Vector::zero()) };
    let v = w.algebra();
    let mut out = Vector::zero();
    let mut lj = a.clone();
    for j in 0..=wt {
        if lj.is_zero() {
            break;
        }
        let term = module_mode_action(w, &lj, 2 * wt - m - j - 2, u)?;
        out.add_scaled(&term, &(sign(wt) * factorial_inv(j as usize)));
        lj = virasoro_mode(v.as_ref(), 1, &lj)?;
    }
    Ok(out)
}

/// `u(m) a = Σ_j (-1)^{m+j+1}/j! L(-1)^j (a_{m+j} u)`, the coefficient of
/// `z^{-m-1}` in `e^{zL(-1)} Y_W(a, -z) u`; valued in the module.
pub fn skew_mode_action<M: VoaModule + ?Sized>(w: &M, u: &Vector, m: i64, a: &Vector) -> Result<Vector> {
    let mut out = Vector::zero();
    for (ka, ca) in a.iter() {
        for (ku, cu) in u.iter() {
            let top = ka.level as i64 + ku.level as i64 - m - 1;
            let av = Vector::basis(*ka);
            let uv = Vector::basis(*ku);
            for j in 0..=top.max(-1) {
                let inner = module_mode_action(w, &av, m + j, &uv)?;
                if inner.is_zero() {
                    continue;
                }
                let term = module_virasoro_power(w, -1, j as usize, &inner)?;
                out.add_scaled(&term, &(sign(m + j + 1) * factorial_inv(j as usize) * ca * cu));
            }
        }
    }
    Ok(out)
}

/// Integer conformal weight, or an error naming `what`.
pub fn integer_weight<M: VoaModule + ?Sized>(w: &M, what: &str) -> Result<i64> {
    let l = w.conformal_weight();
    if !l.is_integer() {
        return Err(Error::Precondition(format!(
            "{what} needs an integer L(0) spectrum; conformal weight is {}",
            crate::exact_algebra::format_rational(&l)
        )));
    }
    l.to_integer().try_into().map_err(|_| Error::Precondition("conformal weight too large".into()))
}
