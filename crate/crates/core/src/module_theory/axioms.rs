use num_traits::Zero;

use super::contragredient::ContragredientModule;
use super::ops::{module_mode_action, module_primed_action, module_virasoro};
use super::traits::VoaModule;
use crate::error::Result;
use crate::exact_algebra::{binomial, format_rational, q, sign, BasisKey, Vector};
use crate::report::{CheckReport, Component, Outcome, Witness};
use crate::voa_core::{virasoro_mode, GradedSpace};

fn compare<M: VoaModule + ?Sized>(w: &M, instance: impl FnOnce() -> String, lhs: &Vector, rhs: &Vector) -> Outcome {
    if lhs == rhs {
        Outcome::Pass
    } else {
        Outcome::Fail(Witness { instance: instance(), lhs: w.describe(lhs), rhs: w.describe(rhs) })
    }
}

fn act<M: VoaModule + ?Sized>(w: &M, a: BasisKey, m: i64, x: &Vector) -> Result<Vector> {
    module_mode_action(w, &Vector::basis(a), m, x)
}

/// Checks the module axioms of `w` over its algebra on the window: vacuum
/// action, commutator and iterate formulas, the `L(0)` grading and the
/// `L(-1)` derivative property.
pub fn verify_module_axioms<M: VoaModule + ?Sized>(w: &M) -> Result<CheckReport> {
    let v = w.algebra().clone();
    let n_max = w.max_degree() as i64;
    let vkeys = v.all_keys();
    let wkeys = w.all_keys();
    let vac = v.vacuum();
    let mut report = CheckReport::new(format!("module axioms on {} over {} (N = {n_max})", w.tag(), v.tag()));

    report.push(Component::evaluate("grading", &vkeys, |&a| {
        for &u in &wkeys {
            let top = (a.level + u.level) as i64;
            for n in top - 1 - n_max..=top + 1 {
                let r = w.act_basis(a, n, u)?;
                let expected = top - n - 1;
                let ok = if expected < 0 { r.is_zero() } else { r.keys().all(|k| k.level as i64 == expected) };
                if !ok {
                    return Ok(Outcome::Fail(Witness {
                        instance: format!("{}_({n}) {}", v.label(a), w.label(u)),
                        lhs: w.describe(&r),
                        rhs: format!("homogeneous of level {expected}"),
                    }));
                }
            }
        }
        Ok(Outcome::Pass)
    })?);

    report.push(Component::evaluate("vacuum", &wkeys, |&u| {
        for n in u.level as i64 - n_max - 1..=u.level as i64 + 1 {
            let lhs = w.act_basis(vac, n, u)?;
            let rhs = if n == -1 { Vector::basis(u) } else { Vector::zero() };
            if let f @ Outcome::Fail(_) = compare(w, || format!("1_({n}) {}", w.label(u)), &lhs, &rhs) {
                return Ok(f);
            }
        }
        Ok(Outcome::Pass)
    })?);

    let mut comm_items = Vec::new();
    for &a in &vkeys {
        for &b in &vkeys {
            let (wa, wb) = (a.level as i64, b.level as i64);
            if wa + wb - 1 > n_max {
                continue;
            }
            for &c in &wkeys {
                let wc = c.level as i64;
                for p in wa + wc - 1 - n_max..=wa + wc - 1 {
                    for qq in wb + wc - 1 - n_max..=wb + wc - 1 {
                        let l = wa + wb + wc - p - qq - 2;
                        if (0..=n_max).contains(&l) {
                            comm_items.push((a, b, c, p, qq));
                        }
                    }
                }
            }
        }
    }
    report.push(Component::evaluate("commutator", &comm_items, |&(a, b, c, p, qq)| {
        let cv = Vector::basis(c);
        let mut lhs = act(w, a, p, &act(w, b, qq, &cv)?)?;
        lhs.sub(&act(w, b, qq, &act(w, a, p, &cv)?)?);
        let mut rhs = Vector::zero();
        for i in 0..=(a.level + b.level) as i64 {
            let c_pi = binomial(p, i as usize);
            if c_pi.is_zero() {
                continue;
            }
            let ab = v.mode_basis(a, i, b)?;
            rhs.add_scaled(&module_mode_action(w, &ab, p + qq - i, &cv)?, &c_pi);
        }
        Ok(compare(w, || format!("[{}_({p}), {}_({qq})] {}", v.label(a), v.label(b), w.label(c)), &lhs, &rhs))
    })?);

    let mut iter_items = Vec::new();
    for &a in &vkeys {
        for &b in &vkeys {
            let (wa, wb) = (a.level as i64, b.level as i64);
            for p in wa + wb - 1 - n_max..=wa + wb - 1 {
                for &c in &wkeys {
                    let wc = c.level as i64;
                    if wa + wc - 1 > n_max {
                        continue;
                    }
                    let ab = wa + wb - p - 1;
                    for qq in ab + wc - 1 - n_max..=ab + wc - 1 {
                        if wb + wc - qq - 1 > n_max {
                            continue;
                        }
                        iter_items.push((a, b, c, p, qq));
                    }
                }
            }
        }
    }
    report.push(Component::evaluate("iterate", &iter_items, |&(a, b, c, p, qq)| {
        let cv = Vector::basis(c);
        let ab = v.mode_basis(a, p, b)?;
        let lhs = module_mode_action(w, &ab, qq, &cv)?;
        let mut rhs = Vector::zero();
        let bound = (b.level as i64 + c.level as i64 - qq).max(a.level as i64 + c.level as i64);
        for i in 0..=bound.max(0) {
            let coeff = sign(i) * binomial(p, i as usize);
            if coeff.is_zero() {
                continue;
            }
            let first = act(w, a, p - i, &act(w, b, qq + i, &cv)?)?;
            let second = act(w, b, p + qq - i, &act(w, a, i, &cv)?)?;
            rhs.add_scaled(&first, &coeff);
            rhs.add_scaled(&second, &(-(coeff * sign(p))));
        }
        Ok(compare(w, || format!("({}_({p}) {})_({qq}) {}", v.label(a), v.label(b), w.label(c)), &lhs, &rhs))
    })?);

    let weight = w.conformal_weight();
    report.push(Component::evaluate("l_zero_grading", &wkeys, |&u| {
        let uv = Vector::basis(u);
        let lhs = module_virasoro(w, 0, &uv)?;
        let rhs = uv.scaled(&(&weight + q(u.level as i64)));
        Ok(compare(w, || format!("L(0) {}", w.label(u)), &lhs, &rhs))
    })?);

    let pairs: Vec<(BasisKey, BasisKey)> = vkeys.iter().flat_map(|a| wkeys.iter().map(move |u| (*a, *u))).collect();
    report.push(Component::evaluate("l_minus_one_derivative", &pairs, |&(a, u)| {
        let da = virasoro_mode(v.as_ref(), -1, &Vector::basis(a))?;
        let uv = Vector::basis(u);
        let top = (a.level + u.level) as i64;
        for n in top - n_max..=top + 1 {
            let lhs = module_mode_action(w, &da, n, &uv)?;
            let rhs = act(w, a, n - 1, &uv)?.scaled(&q(-n));
            if let f @ Outcome::Fail(_) =
                compare(w, || format!("(L(-1) {})_({n}) {}", v.label(a), w.label(u)), &lhs, &rhs)
            {
                return Ok(f);
            }
        }
        Ok(Outcome::Pass)
    })?);

    report.coverage.push(format!("algebra basis: {} vectors, module basis: {} vectors", vkeys.len(), wkeys.len()));
    report.coverage.push(format!("commutator instances (a, b, u, p, q): {}", comm_items.len()));
    report.coverage.push(format!("iterate instances (a, b, u, p, q): {}", iter_items.len()));
    Ok(report)
}

/// Checks `<a_n f, u> = <f, a'_n u>` and `<L(-1) f, u> = <f, L(1) u>` for the
/// contragredient module, recomputing the right-hand sides in the source.
pub fn verify_contragredient(wp: &ContragredientModule) -> Result<CheckReport> {
    let w = wp.source().clone();
    let v = w.algebra().clone();
    let n_max = w.max_degree() as i64;
    let mut report = CheckReport::new(format!("contragredient pairing on {}", wp.tag()));
    let fkeys = wp.all_keys();
    let vkeys = v.all_keys();

    let mut items = Vec::new();
    for &a in &vkeys {
        for &f in &fkeys {
            let (wa, wf) = (a.level as i64, f.level as i64);
            for n in wa + wf - 1 - n_max..=wa + wf - 1 {
                items.push((a, f, n));
            }
        }
    }
    report.push(Component::evaluate("adjoint_pairing", &items, |&(a, f, n)| {
        let image = wp.act_basis(a, n, f)?;
        let Some(level) = wp.window(a.level as i64 + f.level as i64 - n - 1)? else {
            return Ok(Outcome::Pass);
        };
        let av = Vector::basis(a);
        for u in w.basis_keys(level) {
            let lhs = image.get(&u);
            let primed = module_primed_action(w.as_ref(), &av, n, &Vector::basis(u))?;
            let rhs = primed.get(&f);
            if lhs != rhs {
                return Ok(Outcome::Fail(Witness {
                    instance: format!("<{}_({n}) {}, {}>", v.label(a), wp.label(f), w.label(u)),
                    lhs: format_rational(&lhs),
                    rhs: format_rational(&rhs),
                }));
            }
        }
        Ok(Outcome::Pass)
    })?);

    report.push(Component::evaluate("virasoro_adjoint", &fkeys, |&f| {
        let fv = Vector::basis(f);
        let lf = module_virasoro(wp, -1, &fv)?;
        for u in w.basis_keys(f.level + 1) {
            let lu = module_virasoro(w.as_ref(), 1, &Vector::basis(u))?;
            let (lhs, rhs) = (lf.get(&u), lu.get(&f));
            if lhs != rhs {
                return Ok(Outcome::Fail(Witness {
                    instance: format!("<L(-1) {}, {}>", wp.label(f), w.label(u)),
                    lhs: format_rational(&lhs),
                    rhs: format_rational(&rhs),
                }));
            }
        }
        Ok(Outcome::Pass)
    })?);
    report.coverage.push(format!("pairing instances (a, f, n): {}", items.len()));
    Ok(report)
}
