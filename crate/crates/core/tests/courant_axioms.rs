use std::time::Instant;

use parahol::cartan::Patch;
use parahol::courant::{axiom_check, CourantPatchModel, SectionFamily};

#[test]
fn standard_r3_full_family() {
    let m = CourantPatchModel::standard(Patch::standard(3));
    let fam = SectionFamily::generate(&m, 2, 25, 2024);
    assert_eq!(fam.sections.len(), 85);
    let t = Instant::now();
    let r = axiom_check(&m, &fam);
    eprintln!("std-R3 axioms: {:?}", t.elapsed());
    assert!(r.holds(), "{:?}", r.failing());
    assert_eq!(r.outcome(1).cases, 85 * 84 * 83 / 6);
}

#[test]
fn broken_axiom5_on_r3() {
    let m = CourantPatchModel::no_exact_term(Patch::standard(3));
    let fam = SectionFamily::generate(&m, 2, 25, 2024);
    let r = axiom_check(&m, &fam);
    assert_eq!(r.failing(), vec![1, 3, 5]);
    let w = r.outcome(5).witness.clone().unwrap();
    assert_eq!(w.sections.len(), 3);
}
