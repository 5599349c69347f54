use super::maps::LevelPreservingMap;
use super::tensor::DiagonalTensor;
use crate::error::{Error, Result};
use crate::exact_algebra::{BasisKey, Vector};
use crate::module_theory::{module_mode_action, skew_mode_action, Intertwiners, SemidirectVOA, VoaModule};
use crate::report::{CheckReport, Component, Outcome, Witness};
use crate::voa_core::{mode_action, GradedSpace};

fn require_shapes<M: VoaModule + ?Sized>(w: &M, t: &LevelPreservingMap) -> Result<()> {
    let v = w.algebra();
    t.matrix.check_shapes(|n| w.dim(n), |n| v.dim(n))
}

/// `T(u)_m T(v) - T(T(u)_m v) - T(u(m) T(v))` for basis vectors `u, v` of `W`.
pub fn rbo_residual<M: VoaModule + ?Sized>(
    w: &M,
    t: &LevelPreservingMap,
    m: i64,
    u: BasisKey,
    v: BasisKey,
) -> Result<Vector> {
    let (lhs, rhs) = rbo_sides(w, t, m, u, v)?;
    Ok(lhs.minus(&rhs))
}

fn rbo_sides<M: VoaModule + ?Sized>(
    w: &M,
    t: &LevelPreservingMap,
    m: i64,
    u: BasisKey,
    v: BasisKey,
) -> Result<(Vector, Vector)> {
    let alg = w.algebra();
    let n = w.max_degree();
    let (uv, vv) = (Vector::basis(u), Vector::basis(v));
    let tu = t.apply_windowed(&uv, n)?;
    let tv = t.apply_windowed(&vv, n)?;
    let lhs = mode_action(alg.as_ref(), &tu, m, &tv)?;
    let mut rhs = t.apply_windowed(&module_mode_action(w, &tu, m, &vv)?, n)?;
    rhs.add(&t.apply_windowed(&skew_mode_action(w, &uv, m, &tv)?, n)?);
    Ok((lhs, rhs))
}

/// Checks `T(u)_m T(v) = T(T(u)_m v) + T(u(m) T(v))` on every basis pair of
/// `W` whose result level lies in the window, for each `m` in `ms`.
pub fn check_relative_rbo<M: VoaModule + ?Sized>(w: &M, t: &LevelPreservingMap, ms: &[i64]) -> Result<CheckReport> {
    require_shapes(w, t)?;
    let alg = w.algebra();
    let n = w.max_degree() as i64;
    let d = t.degree_shift();
    let mut report = CheckReport::new(format!(
        "{}-relative Rota-Baxter identity for T: {} -> {} (degree {d}, N = {n})",
        ms.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","),
        w.tag(),
        alg.tag()
    ));
    let keys = w.all_keys();
    for &m in ms {
        let items: Vec<(BasisKey, BasisKey)> = keys
            .iter()
            .flat_map(|&u| keys.iter().map(move |&v| (u, v)))
            .filter(|(u, v)| (0..=n).contains(&(u.level as i64 + v.level as i64 + 2 * d - m - 1)))
            .collect();
        report.push(Component::evaluate(format!("m={m}"), &items, |&(u, v)| {
            let (lhs, rhs) = rbo_sides(w, t, m, u, v)?;
            Ok(if lhs == rhs {
                Outcome::Pass
            } else {
                Outcome::Fail(Witness {
                    instance: format!("u = {}, v = {}, m = {m}", w.label(u), w.label(v)),
                    lhs: alg.describe(&lhs),
                    rhs: alg.describe(&rhs),
                })
            })
        })?);
        report.coverage.push(format!("m={m}: {} basis pairs (u, v)", items.len()));
    }
    Ok(report)
}

/// First coadjoint compatibility for `u ∈ W`, `f ∈ V'`:
/// `T(u)_m T*f - T*(T(u)_m f) + T*(u[m] T*f)`, valued in `W'`.
pub fn coadjoint_left_residual(
    ints: &Intertwiners,
    t: &LevelPreservingMap,
    m: i64,
    u: BasisKey,
    f: BasisKey,
) -> Result<Vector> {
    let (wp, vp) = (ints.contragredient(), ints.coadjoint());
    let n = wp.max_degree();
    let ts = t.coadjoint();
    let uv = Vector::basis(u);
    let tu = t.apply_windowed(&uv, n)?;
    let tsf = ts.apply_windowed(&Vector::basis(f), n)?;
    let mut out = module_mode_action(wp.as_ref(), &tu, m, &tsf)?;
    out.sub(&ts.apply_windowed(&module_mode_action(vp.as_ref(), &tu, m, &Vector::basis(f))?, n)?);
    out.add(&ts.apply_windowed(&ints.wwp(&uv, m, &tsf)?, n)?);
    Ok(out)
}

/// Second coadjoint compatibility for `u ∈ W`, `f ∈ V'`:
/// `(T*f)(m) T(u) - T*(f(m) T(u)) + T*((T*f){m} u)`, valued in `W'`.
pub fn coadjoint_right_residual(
    ints: &Intertwiners,
    t: &LevelPreservingMap,
    m: i64,
    u: BasisKey,
    f: BasisKey,
) -> Result<Vector> {
    let (wp, vp) = (ints.contragredient(), ints.coadjoint());
    let n = wp.max_degree();
    let ts = t.coadjoint();
    let uv = Vector::basis(u);
    let tu = t.apply_windowed(&uv, n)?;
    let tsf = ts.apply_windowed(&Vector::basis(f), n)?;
    let mut out = skew_mode_action(wp.as_ref(), &tsf, m, &tu)?;
    out.sub(&ts.apply_windowed(&skew_mode_action(vp.as_ref(), &Vector::basis(f), m, &tu)?, n)?);
    out.add(&ts.apply_windowed(&ints.wpw(&tsf, m, &uv)?, n)?);
    Ok(out)
}

/// Checks the relative Rota-Baxter identity and both coadjoint
/// compatibilities, each evaluated directly.
pub fn check_strong_rbo(ints: &Intertwiners, t: &LevelPreservingMap, ms: &[i64]) -> Result<CheckReport> {
    if t.degree_shift() != 0 {
        return Err(Error::Precondition("strong relative Rota-Baxter operators are level-preserving".into()));
    }
    let w = ints.module();
    let v = w.algebra();
    let wp = ints.contragredient();
    let n = w.max_degree() as i64;
    let mut report = CheckReport::new(format!(
        "strong relative Rota-Baxter identities for T: {} -> {} (N = {n})",
        w.tag(),
        v.tag()
    ));
    report.absorb("rbo ", check_relative_rbo(w.as_ref(), t, ms)?);
    let wkeys = w.all_keys();
    let vkeys = v.all_keys();
    for &m in ms {
        let items: Vec<(BasisKey, BasisKey)> = wkeys
            .iter()
            .flat_map(|&u| vkeys.iter().map(move |&f| (u, f)))
            .filter(|(u, f)| (0..=n).contains(&(u.level as i64 + f.level as i64 - m - 1)))
            .collect();
        for (id, which) in [("coadjoint_left", 0), ("coadjoint_right", 1)] {
            report.push(Component::evaluate(format!("{id} m={m}"), &items, |&(u, f)| {
                let r = if which == 0 {
                    coadjoint_left_residual(ints, t, m, u, f)?
                } else {
                    coadjoint_right_residual(ints, t, m, u, f)?
                };
                Ok(if r.is_zero() {
                    Outcome::Pass
                } else {
                    Outcome::Fail(Witness {
                        instance: format!("u = {}, f = ({})*, m = {m}", w.label(u), v.label(f)),
                        lhs: wp.describe(&r),
                        rhs: "0".into(),
                    })
                })
            })?);
        }
        report.coverage.push(format!("m={m}: {} pairs (u, f) per compatibility", items.len()));
    }
    Ok(report)
}

/// `r_T = Σ_t Σ_i T(v_i) ⊗ v_i* - v_i* ⊗ T(v_i)` in `U = V ⋊ W'`.
pub fn build_r_from_t(t: &LevelPreservingMap, u: &SemidirectVOA) -> Result<DiagonalTensor> {
    if t.degree_shift() != 0 {
        return Err(Error::Precondition("r_T needs a level-preserving map".into()));
    }
    let (v, wp) = (u.base(), u.ideal());
    t.matrix.check_shapes(|n| wp.dim(n), |n| v.dim(n))?;
    let mut r = DiagonalTensor::zero(u.tag());
    for (&level, block) in t.matrix.blocks() {
        for k in 0..block.rows() {
            for i in 0..block.cols() {
                let c = block.get(k, i);
                let dual = u.embed_ideal_key(BasisKey::new(level, i)).index;
                r.add_entry(level, k, dual, c);
                r.add_entry(level, dual, k, &-c.clone());
            }
        }
    }
    Ok(r)
}
