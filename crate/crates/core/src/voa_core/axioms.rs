use num_traits::Zero;

use super::ops::{mode_action, virasoro_mode, virasoro_power};
use super::traits::VertexAlgebra;
use crate::error::Result;
use crate::exact_algebra::{binomial, factorial_inv, format_rational, q, qf, sign, BasisKey, Vector};
use crate::report::{CheckReport, Component, Outcome, Witness};

fn compare<V: VertexAlgebra + ?Sized>(v: &V, instance: impl FnOnce() -> String, lhs: &Vector, rhs: &Vector) -> Outcome {
    if lhs == rhs {
        Outcome::Pass
    } else {
        Outcome::Fail(Witness { instance: instance(), lhs: v.describe(lhs), rhs: v.describe(rhs) })
    }
}

fn act<V: VertexAlgebra + ?Sized>(v: &V, a: BasisKey, m: i64, x: &Vector) -> Result<Vector> {
    mode_action(v, &Vector::basis(a), m, x)
}

fn lbl<V: VertexAlgebra + ?Sized>(v: &V, k: BasisKey) -> String {
    v.label(k)
}

/// Checks the vertex operator algebra axioms on every basis pair or triple
/// of the window, skipping instances whose terms leave the window.
pub fn verify_voa_axioms<V: VertexAlgebra + ?Sized>(v: &V) -> Result<CheckReport> {
    let n_max = v.max_degree() as i64;
    let keys = v.all_keys();
    let vac = v.vacuum();
    let mut report = CheckReport::new(format!("vertex operator algebra axioms on {} (N = {n_max})", v.tag()));

    let mut grading = Component::new("conformal_vector");
    let omega = v.conformal_vector();
    grading.record(if vac.level == 0 && omega.homogeneous_level()? == Some(2) {
        Outcome::Pass
    } else {
        Outcome::Fail(Witness {
            instance: "vacuum in V_0 and omega in V_2".into(),
            lhs: lbl(v, vac),
            rhs: v.describe(omega),
        })
    });
    report.push(grading);
    let cft_type = v.dim(0) == 1;

    let pairs: Vec<(BasisKey, BasisKey)> =
        keys.iter().flat_map(|a| keys.iter().map(move |b| (*a, *b))).collect();

    report.push(Component::evaluate("truncation", &pairs, |&(a, b)| {
        // a_n b vanishes once n reaches wt a + wt b; below that it is homogeneous.
        let top = (a.level + b.level) as i64;
        for n in top - 1 - n_max..=top + 1 {
            let r = v.mode_basis(a, n, b)?;
            let expected = top - n - 1;
            let ok = if expected < 0 { r.is_zero() } else { r.keys().all(|k| k.level as i64 == expected) };
            if !ok {
                return Ok(Outcome::Fail(Witness {
                    instance: format!("{}_({n}) {}", lbl(v, a), lbl(v, b)),
                    lhs: v.describe(&r),
                    rhs: format!("homogeneous of level {expected}"),
                }));
            }
        }
        Ok(Outcome::Pass)
    })?);

    report.push(Component::evaluate("vacuum", &keys, |&b| {
        for n in b.level as i64 - n_max - 1..=b.level as i64 + 1 {
            let lhs = v.mode_basis(vac, n, b)?;
            let rhs = if n == -1 { Vector::basis(b) } else { Vector::zero() };
            if let f @ Outcome::Fail(_) = compare(v, || format!("1_({n}) {}", lbl(v, b)), &lhs, &rhs) {
                return Ok(f);
            }
        }
        Ok(Outcome::Pass)
    })?);

    report.push(Component::evaluate("creation", &keys, |&a| {
        let lhs = v.mode_basis(a, -1, vac)?;
        if let f @ Outcome::Fail(_) = compare(v, || format!("{}_(-1) 1", lbl(v, a)), &lhs, &Vector::basis(a)) {
            return Ok(f);
        }
        for n in 0..=a.level as i64 {
            let lhs = v.mode_basis(a, n, vac)?;
            if let f @ Outcome::Fail(_) = compare(v, || format!("{}_({n}) 1", lbl(v, a)), &lhs, &Vector::zero()) {
                return Ok(f);
            }
        }
        Ok(Outcome::Pass)
    })?);

    // (a, b, c, p, q) with a_p c, b_q c and the result inside the window.
    let mut comm_items = Vec::new();
    for &a in &keys {
        for &b in &keys {
            for &c in &keys {
                let (wa, wb, wc) = (a.level as i64, b.level as i64, c.level as i64);
                // a_0 b is always needed on the right-hand side.
                if wa + wb - 1 > n_max {
                    continue;
                }
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
        let mut lhs = act(v, a, p, &act(v, b, qq, &cv)?)?;
        lhs.sub(&act(v, b, qq, &act(v, a, p, &cv)?)?);
        let mut rhs = Vector::zero();
        for i in 0..=(a.level + b.level) as i64 {
            let c_pi = binomial(p, i as usize);
            if c_pi.is_zero() {
                continue;
            }
            let ab = v.mode_basis(a, i, b)?;
            rhs.add_scaled(&mode_action(v, &ab, p + qq - i, &cv)?, &c_pi);
        }
        Ok(compare(
            v,
            || format!("[{}_({p}), {}_({qq})] {}", lbl(v, a), lbl(v, b), lbl(v, c)),
            &lhs,
            &rhs,
        ))
    })?);

    // (a, b, c, p, q) with a_p b and the result inside the window.
    let mut iter_items = Vec::new();
    for &a in &keys {
        for &b in &keys {
            let (wa, wb) = (a.level as i64, b.level as i64);
            for p in wa + wb - 1 - n_max..=wa + wb - 1 {
                for &c in &keys {
                    let wc = c.level as i64;
                    // a_0 c is always needed on the right-hand side.
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
        let lhs = mode_action(v, &ab, qq, &cv)?;
        let mut rhs = Vector::zero();
        let bound = (b.level as i64 + c.level as i64 - qq).max(a.level as i64 + c.level as i64);
        for i in 0..=bound.max(0) {
            let coeff = sign(i) * binomial(p, i as usize);
            if coeff.is_zero() {
                continue;
            }
            let first = act(v, a, p - i, &act(v, b, qq + i, &cv)?)?;
            let second = act(v, b, p + qq - i, &act(v, a, i, &cv)?)?;
            rhs.add_scaled(&first, &coeff);
            rhs.add_scaled(&second, &(-(coeff * sign(p))));
        }
        Ok(compare(v, || format!("({}_({p}) {})_({qq}) {}", lbl(v, a), lbl(v, b), lbl(v, c)), &lhs, &rhs))
    })?);

    let cc = v.central_charge().clone();
    let mut vir_items = Vec::new();
    for &c in &keys {
        let wc = c.level as i64;
        for n in wc - n_max..=wc {
            for m in wc - n - n_max..=wc - n {
                vir_items.push((c, m, n));
            }
        }
    }
    report.push(Component::evaluate("virasoro", &vir_items, |&(c, m, n)| {
        let cv = Vector::basis(c);
        let mut lhs = virasoro_mode(v, m, &virasoro_mode(v, n, &cv)?)?;
        lhs.sub(&virasoro_mode(v, n, &virasoro_mode(v, m, &cv)?)?);
        let mut rhs = virasoro_mode(v, m + n, &cv)?.scaled(&q(m - n));
        if m + n == 0 {
            rhs.add_scaled(&cv, &(qf(m * m * m - m, 12) * &cc));
        }
        Ok(compare(v, || format!("[L({m}), L({n})] {} with c = {}", lbl(v, c), format_rational(&cc)), &lhs, &rhs))
    })?);

    report.push(Component::evaluate("l_zero_grading", &keys, |&c| {
        let cv = Vector::basis(c);
        let lhs = virasoro_mode(v, 0, &cv)?;
        Ok(compare(v, || format!("L(0) {}", lbl(v, c)), &lhs, &cv.scaled(&q(c.level as i64))))
    })?);

    report.push(Component::evaluate("l_minus_one_derivative", &pairs, |&(a, b)| {
        let av = Vector::basis(a);
        let da = virasoro_mode(v, -1, &av)?;
        let created = v.mode_basis(a, -2, vac)?;
        if let f @ Outcome::Fail(_) = compare(v, || format!("L(-1) {} vs {}_(-2) 1", lbl(v, a), lbl(v, a)), &da, &created) {
            return Ok(f);
        }
        let bv = Vector::basis(b);
        let top = (a.level + b.level) as i64;
        for n in top - n_max..=top + 1 {
            let lhs = mode_action(v, &da, n, &bv)?;
            let rhs = act(v, a, n - 1, &bv)?.scaled(&q(-n));
            if let f @ Outcome::Fail(_) =
                compare(v, || format!("(L(-1) {})_({n}) {}", lbl(v, a), lbl(v, b)), &lhs, &rhs)
            {
                return Ok(f);
            }
        }
        Ok(Outcome::Pass)
    })?);

    report.push(Component::evaluate("skew_symmetry", &pairs, |&(a, b)| {
        let top = (a.level + b.level) as i64;
        for n in top - 1 - n_max..=top {
            let lhs = v.mode_basis(a, n, b)?;
            let mut rhs = Vector::zero();
            let av = Vector::basis(a);
            for j in 0..=(top - n - 1).max(0) {
                let inner = act(v, b, n + j, &av)?;
                if inner.is_zero() {
                    continue;
                }
                let term = virasoro_power(v, -1, j as usize, &inner)?;
                rhs.add_scaled(&term, &(sign(n + j + 1) * factorial_inv(j as usize)));
            }
            if let f @ Outcome::Fail(_) = compare(v, || format!("{}_({n}) {}", lbl(v, a), lbl(v, b)), &lhs, &rhs) {
                return Ok(f);
            }
        }
        Ok(Outcome::Pass)
    })?);

    report.coverage.push(format!("basis of levels 0..={n_max}: {} vectors", keys.len()));
    report.coverage.push(format!("pairs: {}", pairs.len()));
    report.coverage.push(format!("commutator instances (a, b, c, p, q): {}", comm_items.len()));
    report.coverage.push(format!("iterate instances (a, b, c, p, q): {}", iter_items.len()));
    report.coverage.push(format!("virasoro instances (c, m, n): {}", vir_items.len()));
    report.notes.push(format!("central charge c = {}", format_rational(&cc)));
    report.notes.push(format!("CFT type (dim V_0 = 1): {}", if cft_type { "yes" } else { "no" }));
    Ok(report)
}
