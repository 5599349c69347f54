use std::sync::Arc;

use super::cybe::{check_cybe, check_lie_o_operator, cybe_brackets, skew_tensor_of_operator, CybeBrackets, LieTensor};
use super::lie::{level1_lie, level1_module, LieLevelOne, LieModuleOne};
use crate::error::{Error, Result};
use crate::exact_algebra::{BasisKey, Matrix, Rational, SpaceTag, Vector};
use crate::module_theory::{AdjointModule, ContragredientModule, Intertwiners, SemidirectVOA, VoaModule};
use crate::report::{CheckReport, Component, Outcome, Witness};
use crate::voa_core::{m_dot, mode_action, primed_mode, primed_op_mode, DotKind, GradedSpace, VertexAlgebra};
use crate::yang_baxter::{
    build_r_from_t, check_relative_rbo, check_strong_rbo, check_voybe, tensor_to_map, triple_products, DiagonalTensor,
    LevelPreservingMap, TripleComponent,
};

/// Degree-one component `r^1` as a tensor over `U(1)`.
pub fn reduce_tensor(r: &DiagonalTensor, dim: usize, carrier: SpaceTag) -> Result<LieTensor> {
    LieTensor::new(carrier, r.level_matrix(1, dim)?)
}

/// Restriction of a level-preserving map to degree one, as a
/// `target_dim × source_dim` matrix.
pub fn reduce_map(t: &LevelPreservingMap, source_dim: usize, target_dim: usize) -> Result<Matrix> {
    if t.degree_shift() != 0 {
        return Err(Error::Precondition("level-one restriction needs a level-preserving map".into()));
    }
    match t.matrix.block(1) {
        None => Ok(Matrix::zeros(target_dim, source_dim)),
        Some(b) if b.rows() == target_dim && b.cols() == source_dim => Ok(b.clone()),
        Some(b) => Err(Error::Shape(format!(
            "degree-one block is {}x{}, expected {target_dim}x{source_dim}",
            b.rows(),
            b.cols()
        ))),
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

fn implication(id: &str, premise: (&str, bool), conclusion: (&str, bool)) -> Component {
    let mut c = Component::new(id);
    c.record(if premise.1 && !conclusion.1 {
        Outcome::Fail(Witness {
            instance: format!("{} holds", premise.0),
            lhs: format!("{}: fail", conclusion.0),
            rhs: format!("{}: pass", conclusion.0),
        })
    } else {
        Outcome::Pass
    });
    c
}

fn equivalence(id: &str, a: (&str, bool), b: (&str, bool)) -> Component {
    let mut c = Component::new(id);
    c.record(if a.1 == b.1 {
        Outcome::Pass
    } else {
        Outcome::Fail(Witness {
            instance: "outcomes differ".into(),
            lhs: format!("{}: {}", a.0, verdict(a.1)),
            rhs: format!("{}: {}", b.0, verdict(b.1)),
        })
    });
    c
}

fn equality_component<S: GradedSpace + ?Sized>(id: &str, s: &S, items: Vec<(String, Vector, Vector)>) -> Result<Component> {
    Component::evaluate(id, &items, |(instance, lhs, rhs)| {
        Ok(if lhs == rhs {
            Outcome::Pass
        } else {
            Outcome::Fail(Witness { instance: instance.clone(), lhs: s.describe(lhs), rhs: s.describe(rhs) })
        })
    })
}

fn level_one_vector(x: &[Rational], offset: usize) -> Vector {
    Vector::from_terms(x.iter().enumerate().map(|(i, c)| (BasisKey::new(1, offset + i), c.clone())))
}

fn neg(x: &[Rational]) -> Vec<Rational> {
    x.iter().map(|c| -c.clone()).collect()
}

fn projection_components(
    report: &mut CheckReport,
    products: &[TripleComponent; 3],
    brackets: &CybeBrackets,
) {
    let minus = Rational::from_integer((-1).into());
    let mut neg_second = TripleComponent::zero((1, 1, 1));
    neg_second.add_scaled(&products[1], &minus);
    let cases = [
        ("projection r12.r13 = -[R12,R13]", &products[0], &brackets.r12_r13),
        ("projection -r23.'r12 = -[R12,R23]", &neg_second, &brackets.r12_r23),
        ("projection r13.'op r23 = -[R13,R23]", &products[2], &brackets.r13_r23),
    ];
    for (id, lhs, bracket) in cases {
        let mut rhs = TripleComponent::zero((1, 1, 1));
        rhs.add_scaled(bracket, &minus);
        let mut c = Component::new(id);
        c.record(if *lhs == rhs {
            Outcome::Pass
        } else {
            let mut diff = lhs.clone();
            diff.add_scaled(&rhs, &minus);
            let (idx, x) = diff.entries().next().map(|(i, x)| (*i, x.clone())).unwrap_or_default();
            Outcome::Fail(Witness {
                instance: format!("coefficient at basis triple {idx:?}"),
                lhs: crate::exact_algebra::format_rational(&(lhs.get(idx))),
                rhs: crate::exact_algebra::format_rational(&(&lhs.get(idx) - x)),
            })
        });
        report.push(c);
    }
}

fn require_quasi_primary(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} is not spanned by quasi-primary vectors")))
    }
}

/// Degree-one reduction of a skewsymmetric tensor on a VOA `U`: the
/// 0-VOYBE and the 0-relative RBO property of `T_r` pass down to the CYBE
/// and the Lie relative RBO property of `T_R`.
pub fn verify_tensor_reduction(u: Arc<dyn VertexAlgebra>, r: &DiagonalTensor) -> Result<CheckReport> {
    r.require_skew()?;
    let g = level1_lie(u.as_ref())?;
    require_quasi_primary(g.quasi_primary(), "U(1)")?;
    let d = g.dim();
    let adjoint: Arc<dyn VoaModule> = Arc::new(AdjointModule::new(u.clone()));
    let coadjoint = ContragredientModule::new(adjoint.clone())?;
    let dual = level1_module(&coadjoint)?;
    require_quasi_primary(dual.quasi_primary(), "U(1)*")?;

    let mut report = CheckReport::new(format!("degree-one reduction of a tensor on {} (dim U(1) = {d})", u.tag()));

    let expected_dual = level1_module(adjoint.as_ref())?.dual();
    report.push(same_action("coadjoint action is the dual action", &g, &dual, &expected_dual));

    let big_r = reduce_tensor(r, d, SpaceTag::new("lie"))?;
    let brackets = cybe_brackets(&g, &big_r)?;
    let cybe = check_cybe(&g, &big_r)?.passed();
    let voybe = check_voybe(u.as_ref(), r, &[0])?.passed();
    let t_r = tensor_to_map(r, |n| u.dim(n))?;
    let rbo = check_relative_rbo(&coadjoint, &t_r, &[0])?.passed();
    let t_big_r = reduce_map(&t_r, d, d)?;
    let o_op = check_lie_o_operator(&g, &dual, &t_big_r)?.passed();

    let mut nat = Component::new("restriction of T_r is T_R");
    nat.record(if t_big_r == big_r.matrix {
        Outcome::Pass
    } else {
        Outcome::Fail(Witness {
            instance: "degree-one block".into(),
            lhs: format!("{t_big_r:?}"),
            rhs: format!("{:?}", big_r.matrix),
        })
    });
    report.push(nat);

    let keys = u.basis_keys(1);
    let mut items = Vec::new();
    for &a in &keys {
        for &b in &keys {
            let (av, bv) = (Vector::basis(a), Vector::basis(b));
            let ba = level_one_vector(g.bracket_basis(b.index, a.index), 0);
            for (name, kind) in [(".0", DotKind::Plain), (".'0", DotKind::Primed), (".'op0", DotKind::PrimedOp)] {
                items.push((
                    format!("{} {name} {} = [{}, {}]", u.label(a), u.label(b), u.label(b), u.label(a)),
                    m_dot(u.as_ref(), kind, &av, 0, &bv)?,
                    ba.clone(),
                ));
            }
        }
    }
    report.push(equality_component("degree-one dot products", u.as_ref(), items)?);

    if u.max_degree() >= 1 {
        let products = triple_products(u.as_ref(), r, 0, 1, 1)?;
        projection_components(&mut report, &products, &brackets);
    }

    report.push(implication("0-VOYBE implies CYBE", ("0-VOYBE", voybe), ("CYBE", cybe)));
    report.push(implication("0-relative RBO implies Lie relative RBO", ("0-relative RBO of T_r", rbo), ("Lie relative RBO of T_R", o_op)));
    report.push(equivalence("0-VOYBE iff 0-relative RBO", ("0-VOYBE", voybe), ("0-relative RBO of T_r", rbo)));
    report.push(equivalence("CYBE iff Lie relative RBO", ("CYBE", cybe), ("Lie relative RBO of T_R", o_op)));

    report.notes.push(format!("0-VOYBE: {}", verdict(voybe)));
    report.notes.push(format!("0-relative RBO of T_r: {}", verdict(rbo)));
    report.notes.push(format!("CYBE for R: {}", verdict(cybe)));
    report.notes.push(format!("Lie relative RBO of T_R: {}", verdict(o_op)));
    report.coverage.push(format!("{} degree-one basis pairs, m = 0", d * d));
    Ok(report)
}

fn same_action(id: &str, g: &LieLevelOne, m: &LieModuleOne, expected: &LieModuleOne) -> Component {
    let mut c = Component::new(id);
    for a in 0..g.dim() {
        c.record(if m.rho(a) == expected.rho(a) {
            Outcome::Pass
        } else {
            Outcome::Fail(Witness {
                instance: format!("a = {}", g.labels()[a]),
                lhs: format!("{:?}", m.rho(a)),
                rhs: format!("{:?}", expected.rho(a)),
            })
        });
    }
    c
}

/// Degree-one reduction of a level-preserving map `T: W -> V` for a module
/// `W` of conformal weight 0: the 0-strong relative RBO property and the
/// 0-VOYBE for `r_T` on `V ⋊ W'` pass down to the Lie relative RBO property
/// of `T|W(1)` and the CYBE for `T - T^21` on `V_1 ⋉ W(1)*`.
pub fn verify_map_reduction(ints: &Intertwiners, t: &LevelPreservingMap) -> Result<CheckReport> {
    let w = ints.module();
    let v = w.algebra().clone();
    let g = level1_lie(v.as_ref())?;
    require_quasi_primary(g.quasi_primary(), "V_1")?;
    let rho = level1_module(w.as_ref())?;
    require_quasi_primary(rho.quasi_primary(), "W(1)")?;
    let rho_star_direct = level1_module(ints.contragredient().as_ref())?;
    require_quasi_primary(rho_star_direct.quasi_primary(), "W(1)*")?;
    let rho_star = rho.dual();
    let (dg, dw) = (g.dim(), rho.dim());

    let wp: Arc<dyn VoaModule> = ints.contragredient().clone();
    let u = SemidirectVOA::new(v.clone(), wp)?;
    let mut report = CheckReport::new(format!(
        "degree-one reduction of T: {} -> {} (dim V_1 = {dg}, dim W(1) = {dw})",
        w.tag(),
        v.tag()
    ));
    report.push(same_action("contragredient action is the dual action", &g, &rho_star_direct, &rho_star));

    let semidirect = LieLevelOne::semidirect(&g, &rho_star, SpaceTag::new("lie_semidirect"))?;
    let g_u = level1_lie(&u)?;
    let mut sd = Component::new("degree-one bracket of V ⋊ W' is the semidirect bracket");
    for i in 0..dg + dw {
        for j in 0..dg + dw {
            sd.record(g_u.outcome(
                format!("[{}, {}]", g_u.labels()[i], g_u.labels()[j]),
                g_u.bracket_basis(i, j),
                semidirect.bracket_basis(i, j),
            ));
        }
    }
    report.push(sd);

    // Nine sign identities for the degree-one products.
    let a_keys = v.basis_keys(1);
    let star_keys: Vec<BasisKey> = (0..dw).map(|i| u.embed_ideal_key(BasisKey::new(1, i))).collect();
    let mut lie_items = Vec::new();
    let mut act_items = Vec::new();
    let mut skew_items = Vec::new();
    for &a in &a_keys {
        let av = Vector::basis(a);
        for &b in &a_keys {
            let bv = Vector::basis(b);
            let ab = g.bracket_basis(a.index, b.index).to_vec();
            let inst = |op: &str| format!("{} {op} {}", u.label(a), u.label(b));
            lie_items.push((inst("_0"), mode_action(&u, &av, 0, &bv)?, level_one_vector(&ab, 0)));
            lie_items.push((inst("'_0"), primed_mode(&u, &av, 0, &bv)?, level_one_vector(&neg(&ab), 0)));
            lie_items.push((inst("'op_0"), primed_op_mode(&u, &av, 0, &bv)?, level_one_vector(&ab, 0)));
        }
        for (i, &s) in star_keys.iter().enumerate() {
            let sv = Vector::basis(s);
            let mut e = vec![Rational::default(); dw];
            e[i] = Rational::from_integer(1.into());
            let rs = rho_star.act(&super::lie::unit(dg, a.index), &e);
            let inst = |op: &str, x: BasisKey, y: BasisKey| format!("{} {op} {}", u.label(x), u.label(y));
            act_items.push((inst("_0", a, s), mode_action(&u, &av, 0, &sv)?, level_one_vector(&rs, dg)));
            act_items.push((inst("'_0", a, s), primed_mode(&u, &av, 0, &sv)?, level_one_vector(&neg(&rs), dg)));
            act_items.push((inst("'op_0", a, s), primed_op_mode(&u, &av, 0, &sv)?, level_one_vector(&rs, dg)));
            skew_items.push((inst("_0", s, a), mode_action(&u, &sv, 0, &av)?, level_one_vector(&neg(&rs), dg)));
            skew_items.push((inst("'_0", s, a), primed_mode(&u, &sv, 0, &av)?, level_one_vector(&rs, dg)));
            skew_items.push((inst("'op_0", s, a), primed_op_mode(&u, &sv, 0, &av)?, level_one_vector(&neg(&rs), dg)));
        }
    }
    report.push(equality_component("degree-one products on V_1 x V_1", &u, lie_items)?);
    report.push(equality_component("degree-one products on V_1 x W(1)*", &u, act_items)?);
    report.push(equality_component("degree-one products on W(1)* x V_1", &u, skew_items)?);

    let r_t = build_r_from_t(t, &u)?;
    let strong_report = check_strong_rbo(ints, t, &[0])?;
    let part = |id: &str| strong_report.component(id).map(|c| c.passed).unwrap_or(false);
    let (rbo, left, right) = (part("rbo m=0"), part("coadjoint_left m=0"), part("coadjoint_right m=0"));
    let strong = strong_report.passed();
    let voybe = check_voybe(&u, &r_t, &[0])?.passed();

    let t1 = reduce_map(t, dw, dg)?;
    let o_op = check_lie_o_operator(&g, &rho, &t1)?.passed();
    let big_r = reduce_tensor(&r_t, dg + dw, SpaceTag::new("lie_semidirect"))?;
    let expected = skew_tensor_of_operator(&t1, SpaceTag::new("lie_semidirect"))?;
    let mut eq = Component::new("degree-one part of r_T is T - T^21");
    eq.record(if big_r == expected {
        Outcome::Pass
    } else {
        Outcome::Fail(Witness {
            instance: "degree-one block".into(),
            lhs: format!("{:?}", big_r.matrix),
            rhs: format!("{:?}", expected.matrix),
        })
    });
    report.push(eq);
    let brackets = cybe_brackets(&g_u, &big_r)?;
    let cybe = check_cybe(&g_u, &big_r)?.passed();
    let products = triple_products(&u, &r_t, 0, 1, 1)?;
    projection_components(&mut report, &products, &brackets);

    let lie_rbo = ("Lie relative RBO of T|W(1)", o_op);
    report.push(implication("0-strong relative RBO implies Lie relative RBO", ("0-strong relative RBO", strong), lie_rbo));
    report.push(implication("0-relative RBO implies Lie relative RBO", ("0-relative RBO", rbo), lie_rbo));
    report.push(implication("first coadjoint identity implies Lie relative RBO", ("first coadjoint identity", left), lie_rbo));
    report.push(implication("second coadjoint identity implies Lie relative RBO", ("second coadjoint identity", right), lie_rbo));
    report.push(implication("0-VOYBE implies CYBE", ("0-VOYBE for r_T", voybe), ("CYBE for T - T^21", cybe)));
    report.push(equivalence("0-strong relative RBO iff 0-VOYBE", ("0-strong relative RBO", strong), ("0-VOYBE for r_T", voybe)));
    report.push(equivalence("Lie relative RBO iff CYBE", lie_rbo, ("CYBE for T - T^21", cybe)));

    for (name, ok) in [
        ("0-relative RBO", rbo),
        ("first coadjoint identity", left),
        ("second coadjoint identity", right),
        ("0-VOYBE for r_T", voybe),
        ("Lie relative RBO of T|W(1)", o_op),
        ("CYBE for T - T^21", cybe),
    ] {
        report.notes.push(format!("{name}: {}", verdict(ok)));
    }
    report.coverage.push(format!("{} degree-one basis pairs of V_1 ⋉ W(1)*, m = 0", (dg + dw) * (dg + dw)));
    Ok(report)
}
