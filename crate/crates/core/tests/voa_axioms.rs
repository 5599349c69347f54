use std::time::Instant;

use vybe_core::exact_algebra::q;
use vybe_core::voa_core::verify_voa_axioms;
use vybe_core::{CurrentVOA, LieAlgebraData};

#[test]
fn heisenberg_axioms() {
    for n in [3, 4, 5, 6] {
        let v = CurrentVOA::heisenberg(1, n).unwrap();
        let t = Instant::now();
        let r = verify_voa_axioms(&v).unwrap();
        println!("N={n} {:?}\n{r}", t.elapsed());
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn sl2_axioms() {
    for n in [2, 3] {
        let v = CurrentVOA::new(LieAlgebraData::sl2(), q(1), n).unwrap();
        let t = Instant::now();
        let r = verify_voa_axioms(&v).unwrap();
        println!("N={n} {:?}\n{r}", t.elapsed());
        assert!(r.passed(), "{r}");
    }
}
