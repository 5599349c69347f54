use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vybe_core::exact_algebra::{q, qf, BasisKey, LevelwiseMatrix, Matrix, Rational, SpaceTag, Vector};
use vybe_core::module_theory::{AdjointModule, ContragredientModule, FockModule, Intertwiners, SemidirectVOA, VoaModule};
use vybe_core::voa_core::{m_dot, CurrentVOA, DotKind, GradedSpace, VertexAlgebra};
use vybe_core::yang_baxter::*;

fn heis(n: usize) -> Arc<CurrentVOA> {
    Arc::new(CurrentVOA::heisenberg(1, n).unwrap())
}

fn adjoint(v: &Arc<CurrentVOA>) -> Arc<dyn VoaModule> {
    let dynv: Arc<dyn VertexAlgebra> = v.clone();
    Arc::new(AdjointModule::new(dynv))
}

fn small(rng: &mut ChaCha8Rng) -> Rational {
    q(rng.gen_range(-3..=3))
}

fn random_vector(rng: &mut ChaCha8Rng, level: usize, dim: usize) -> Vector {
    Vector::from_terms((0..dim).map(|i| (BasisKey::new(level, i), small(rng))))
}

/// Random skewsymmetric tensor built from pairs, returned with the pairs.
fn random_skew(rng: &mut ChaCha8Rng, u: &dyn VertexAlgebra, levels: &[usize]) -> (DiagonalTensor, Vec<(Vector, Vector)>) {
    let mut r = DiagonalTensor::zero(u.tag());
    let mut pairs = Vec::new();
    for &t in levels {
        for _ in 0..2 {
            let a = random_vector(rng, t, u.dim(t));
            let b = random_vector(rng, t, u.dim(t));
            let mut g = DiagonalTensor::zero(u.tag());
            g.add_pair(&a, &b, &q(1)).unwrap();
            r = r.plus(&g.skewsymmetrize());
            pairs.push((a, b));
        }
    }
    (r, pairs)
}

fn map_with(shift: i64, blocks: Vec<(usize, Matrix)>, src: &str, dst: &str) -> LevelPreservingMap {
    let mut m = LevelwiseMatrix::new(shift);
    for (l, b) in blocks {
        m.set_block(l, b);
    }
    LevelPreservingMap::new(SpaceTag::new(src), SpaceTag::new(dst), m)
}

fn scalar_extension(v: &CurrentVOA, mu: Rational, p: Rational) -> LevelPreservingMap {
    let _ = v;
    map_with(0, vec![(0, Matrix::from_rows(vec![vec![mu]]).unwrap()), (1, Matrix::from_rows(vec![vec![p]]).unwrap())], "V", "V")
}

fn level_two_map(v: &CurrentVOA) -> LevelPreservingMap {
    let aa = v.monomial_vector(&[(0, -1), (0, -1)]).unwrap();
    let a2 = v.monomial_vector(&[(0, -2)]).unwrap();
    let sum = aa.plus_vec(&a2);
    let mut block = Matrix::zeros(2, 2);
    for (src, img) in [(&aa, sum.clone()), (&a2, sum.scaled(&q(-1)))] {
        let col = src.keys().next().unwrap().index;
        for (k, c) in img.iter() {
            block.set(k.index, col, c.clone());
        }
    }
    map_with(0, vec![(2, block)], "V", "V")
}

trait PlusVec {
    fn plus_vec(&self, o: &Vector) -> Vector;
}
impl PlusVec for Vector {
    fn plus_vec(&self, o: &Vector) -> Vector {
        let mut x = self.clone();
        x.add(o);
        x
    }
}

#[test]
fn extension_of_a_lie_rbo_is_a_zero_rbo() {
    let v = heis(4);
    let w = adjoint(&v);
    let t = scalar_extension(&v, qf(3, 2), q(-2));
    let r = check_relative_rbo(w.as_ref(), &t, &[0]).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn level_two_map_is_a_one_rbo() {
    let v = heis(4);
    let w = adjoint(&v);
    let t = level_two_map(&v);
    let r = check_relative_rbo(w.as_ref(), &t, &[1]).unwrap();
    assert!(r.passed(), "{r}");
    let mut bad = t.matrix.clone();
    let mut block = bad.block(2).unwrap().clone();
    block.add_to(0, 0, &q(1));
    bad.set_block(2, block);
    let bad = LevelPreservingMap::new(t.source.clone(), t.target.clone(), bad);
    let r = check_relative_rbo(w.as_ref(), &bad, &[1]).unwrap();
    assert!(!r.passed());
    assert!(r.components[0].witness.is_some());
}

#[test]
fn degree_minus_one_fock_map_is_a_zero_rbo() {
    let v = heis(4);
    for lambda in [q(1), q(2), qf(1, 2)] {
        let w = FockModule::new(v.clone(), lambda).unwrap();
        let t = map_with(-1, vec![(1, Matrix::from_rows(vec![vec![q(1)]]).unwrap())], "M", "V");
        let r = check_relative_rbo(&w, &t, &[0]).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn identity_is_not_a_one_rbo() {
    let v = heis(3);
    let w = adjoint(&v);
    let blocks = (0..=3).map(|l| (l, Matrix::identity(v.dim(l)))).collect();
    let t = map_with(0, blocks, "V", "V");
    let r = check_relative_rbo(w.as_ref(), &t, &[1]).unwrap();
    assert!(!r.passed());
    let a = v.label(v.generator(0));
    let wit = r.components[0].witness.clone().unwrap();
    // The first failing pair in canonical order is (a, a).
    assert_eq!(wit.instance, format!("u = {a}, v = {a}, m = 1"));
    assert_eq!(wit.lhs, format!("1*{}", v.label(v.vacuum())));
    assert_eq!(wit.rhs, format!("2*{}", v.label(v.vacuum())));
}

#[test]
fn phi_of_an_elementary_tensor() {
    let v = heis(3);
    let mut g = DiagonalTensor::zero(v.tag());
    let (a, b) = (BasisKey::new(2, 0), BasisKey::new(2, 1));
    g.add_pair(&Vector::basis(a), &Vector::basis(b), &q(1)).unwrap();
    let r = g.skewsymmetrize();
    let t = tensor_to_map(&r, |n| v.dim(n)).unwrap();
    // T_r(f) = a <f, b> - b <f, a>
    assert_eq!(t.apply(&Vector::basis(b)), Vector::basis(a));
    assert_eq!(t.apply(&Vector::basis(a)), Vector::term(b, q(-1)));
    t.require_skew().unwrap();
    assert_eq!(map_to_tensor(&t).unwrap(), r);
}

#[test]
fn conversions_reject_non_skew_inputs() {
    let v = heis(3);
    let mut g = DiagonalTensor::zero(v.tag());
    g.add_pair(&Vector::basis(BasisKey::new(1, 0)), &Vector::basis(BasisKey::new(1, 0)), &q(1)).unwrap();
    assert!(tensor_to_map(&g, |n| v.dim(n)).is_err());
    assert!(check_voybe(v.as_ref(), &g, &[0]).is_err());
    let t = map_with(0, vec![(2, Matrix::identity(2))], "V'", "V");
    assert!(map_to_tensor(&t).is_err());
}

#[test]
fn zero_tensor_has_zero_residual() {
    let v = heis(3);
    let r = DiagonalTensor::zero(v.tag());
    let rep = check_voybe(v.as_ref(), &r, &[-1, 0, 1, 2]).unwrap();
    assert!(rep.passed(), "{rep}");
}

#[test]
fn triple_products_scale_quadratically() {
    let v = heis(3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (r, _) = random_skew(&mut rng, v.as_ref(), &[1, 2]);
    let r2 = r.scaled(&q(2));
    for (s, t) in coverage_pairs(3, 0) {
        let a = triple_products(v.as_ref(), &r, 0, s, t).unwrap();
        let b = triple_products(v.as_ref(), &r2, 0, s, t).unwrap();
        for k in 0..3 {
            let mut x = a[k].clone();
            x.add_scaled(&a[k], &q(3));
            assert_eq!(x, b[k]);
        }
    }
}

fn outer(acc: &mut TripleComponent, x: &Vector, y: &Vector, z: &Vector, c: &Rational) {
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            for (d, cd) in z.iter() {
                acc.add_entry((a.index, b.index, d.index), &(c * ca * cb * cd));
            }
        }
    }
}

/// Term-by-term expansion of the three products from the pair form
/// `r^t = Σ α ⊗ β - β ⊗ α`.
fn brute_force_residual(
    u: &dyn VertexAlgebra,
    pairs: &[(Vector, Vector)],
    m: i64,
    s: usize,
    t: usize,
) -> TripleComponent {
    let p = s + t - (m + 1) as usize;
    let at = |lvl: usize| -> Vec<(Vector, Vector)> {
        pairs.iter().filter(|(a, _)| a.homogeneous_level().unwrap() == Some(lvl)).cloned().collect()
    };
    let dot = |k: DotKind, x: &Vector, y: &Vector| m_dot(u, k, x, m, y).unwrap();
    let one = q(1);
    let neg = q(-1);
    let mut out = TripleComponent::zero((p, s, t));
    // r^s_12 ·_m r^t_13
    for (a, b) in at(s) {
        for (a2, b2) in at(t) {
            outer(&mut out, &dot(DotKind::Plain, &a, &a2), &b, &b2, &one);
            outer(&mut out, &dot(DotKind::Plain, &a, &b2), &b, &a2, &neg);
            outer(&mut out, &dot(DotKind::Plain, &b, &a2), &a, &b2, &neg);
            outer(&mut out, &dot(DotKind::Plain, &b, &b2), &a, &a2, &one);
        }
    }
    // - r^t_23 ·'_m r^p_12
    for (al, bl) in at(t) {
        for (a, b) in at(p) {
            outer(&mut out, &a, &dot(DotKind::Primed, &al, &b), &bl, &neg);
            outer(&mut out, &b, &dot(DotKind::Primed, &al, &a), &bl, &one);
            outer(&mut out, &a, &dot(DotKind::Primed, &bl, &b), &al, &one);
            outer(&mut out, &b, &dot(DotKind::Primed, &bl, &a), &al, &neg);
        }
    }
    // + r^p_13 ·'op_m r^s_23
    for (ak, bk) in at(p) {
        for (al, bl) in at(s) {
            outer(&mut out, &ak, &al, &dot(DotKind::PrimedOp, &bk, &bl), &one);
            outer(&mut out, &ak, &bl, &dot(DotKind::PrimedOp, &bk, &al), &neg);
            outer(&mut out, &bk, &al, &dot(DotKind::PrimedOp, &ak, &bl), &neg);
            outer(&mut out, &bk, &bl, &dot(DotKind::PrimedOp, &ak, &al), &one);
        }
    }
    out
}

#[test]
fn residual_matches_term_by_term_expansion() {
    let v = heis(4);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut nonzero = false;
    for _ in 0..3 {
        let (r, pairs) = random_skew(&mut rng, v.as_ref(), &[1, 2, 3]);
        for m in [-1, 0, 1] {
            let res = voybe_residual(v.as_ref(), &r, m).unwrap();
            for ((s, t), c) in &res.components {
                assert_eq!(*c, brute_force_residual(v.as_ref(), &pairs, m, *s, *t), "(s,t,m) = ({s},{t},{m})");
                nonzero |= !c.is_zero();
            }
        }
    }
    assert!(nonzero);
}

#[test]
fn residual_of_a_level_two_pair_is_nonzero() {
    let v = heis(4);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = random_vector(&mut rng, 2, 2);
    let b = random_vector(&mut rng, 2, 2);
    let mut g = DiagonalTensor::zero(v.tag());
    g.add_pair(&a, &b, &q(1)).unwrap();
    let r = g.skewsymmetrize();
    let rep = check_voybe(v.as_ref(), &r, &[0]).unwrap();
    assert!(!rep.passed());
}

#[test]
fn componentwise_identity_on_small_window() {
    let v = heis(3);
    let coadjoint = ContragredientModule::new(adjoint(&v)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..3 {
        let (r, _) = random_skew(&mut rng, v.as_ref(), &[1, 2, 3]);
        let t = tensor_to_map(&r, |n| v.dim(n)).unwrap();
        for m in [-1, 0, 1] {
            let res = voybe_residual(v.as_ref(), &r, m).unwrap();
            for ((s, tt), c) in &res.components {
                for f in coadjoint.basis_keys(*tt) {
                    for g in coadjoint.basis_keys(*s) {
                        let lhs = rbo_residual(&coadjoint, &t, m, f, g).unwrap();
                        assert_eq!(lhs, c.contract(&Vector::basis(g), &Vector::basis(f)));
                    }
                }
            }
        }
    }
}

#[test]
fn r_from_a_rank_one_map() {
    let v = heis(3);
    let dynv: Arc<dyn VertexAlgebra> = v.clone();
    let w = adjoint(&v);
    let wp: Arc<dyn VoaModule> = Arc::new(ContragredientModule::new(w).unwrap());
    let u = SemidirectVOA::new(dynv, wp).unwrap();
    let t = map_with(0, vec![(1, Matrix::from_rows(vec![vec![q(1)]]).unwrap())], "V", "V");
    let r = build_r_from_t(&t, &u).unwrap();
    let a = BasisKey::new(1, 0);
    let astar = u.embed_ideal_key(a);
    let mut expected = DiagonalTensor::zero(u.tag());
    expected.add_pair(&Vector::basis(a), &Vector::basis(astar), &q(1)).unwrap();
    assert_eq!(r, expected.skewsymmetrize());
    let zero = map_with(0, vec![], "V", "V");
    assert!(build_r_from_t(&zero, &u).unwrap().is_zero());
}

#[test]
fn strong_rbo_and_semidirect_voybe_agree() {
    let v = heis(3);
    let dynv: Arc<dyn VertexAlgebra> = v.clone();
    let w = adjoint(&v);
    let ints = Intertwiners::new(w.clone()).unwrap();
    let wp: Arc<dyn VoaModule> = ints.contragredient().clone();
    let u = SemidirectVOA::new(dynv, wp).unwrap();
    let good = scalar_extension(&v, q(2), q(5));
    let rep = check_strong_rbo(&ints, &good, &[0]).unwrap();
    assert!(rep.passed(), "{rep}");
    let r = build_r_from_t(&good, &u).unwrap();
    let rep = check_voybe(&u, &r, &[0]).unwrap();
    assert!(rep.passed(), "{rep}");

    let blocks = (0..=3).map(|l| (l, Matrix::identity(v.dim(l)))).collect();
    let bad = map_with(0, blocks, "V", "V");
    let strong = check_strong_rbo(&ints, &bad, &[1]).unwrap();
    assert!(!strong.passed());
    let r = build_r_from_t(&bad, &u).unwrap();
    let blocks = check_voybe_blocks(&u, &r, &[1]).unwrap();
    assert!(!blocks.passed());
    assert!(blocks.component("block_other m=1").unwrap().passed);
    assert_eq!(
        blocks.component("block_a m=1").unwrap().passed,
        strong.component("rbo m=1").unwrap().passed
    );
    assert_eq!(
        blocks.component("block_b m=1").unwrap().passed,
        strong.component("coadjoint_left m=1").unwrap().passed
    );
    assert_eq!(
        blocks.component("block_c m=1").unwrap().passed,
        strong.component("coadjoint_right m=1").unwrap().passed
    );
}

#[test]
fn form_transport_of_zero_and_solution() {
    let v = heis(3);
    let dynv: Arc<dyn VertexAlgebra> = v.clone();
    let form = InvariantForm::from_vacuum_dual(dynv).unwrap();
    assert_eq!(form.gram(0), &Matrix::identity(1));
    let zero = DiagonalTensor::zero(v.tag());
    assert!(form_transport(v.as_ref(), &zero, &form).unwrap().matrix.is_zero());
}

#[test]
fn degenerate_form_is_rejected() {
    let v: Arc<dyn VertexAlgebra> =
        Arc::new(CurrentVOA::new(vybe_core::LieAlgebraData::sl2(), q(1), 2).unwrap());
    assert!(InvariantForm::from_vacuum_dual(v).is_err());
}
