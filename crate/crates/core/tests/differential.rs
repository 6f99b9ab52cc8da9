use std::sync::Arc;

use bfwalsh_core::constructions::ConstructionKind::{self, *};
use bfwalsh_core::gf2n::Field;
use bfwalsh_core::sweep::{run_sweep, SweepConfig, SweepMode, SweepSummary};

fn sweep(n: u32, kind: ConstructionKind, mode: SweepMode, k: Option<u32>, s: Option<u32>) -> SweepSummary {
    let f = Arc::new(Field::standard(n).unwrap());
    let mut cfg = SweepConfig::new(kind, mode);
    cfg.base.k = k;
    cfg.base.s = s;
    cfg.seed = 0x5eed;
    let out = run_sweep(&f, &cfg).unwrap();
    assert_eq!(out.mismatches, 0, "{kind} n={n}: {:?}", out.mismatch_examples.first());
    assert!(out.samples > 0);
    out
}

#[test]
fn kasami_triple_smallest_and_next() {
    let s = sweep(4, KasamiTriple, SweepMode::Exhaustive, None, None);
    assert_eq!(s.samples, 420);
    sweep(6, KasamiTriple, SweepMode::Random(150), None, None);
}

#[test]
fn kasami_double_smallest_and_next() {
    let s = sweep(4, KasamiDouble, SweepMode::Exhaustive, None, None);
    assert_eq!(s.semibent, 8 * 15);
    sweep(6, KasamiDouble, SweepMode::Random(150), None, None);
}

#[test]
fn gold_double_exhaustive() {
    let s = sweep(8, GoldDouble, SweepMode::Exhaustive, None, None);
    assert_eq!(s.samples, 255 * 254);
}

#[test]
fn gold_triple_sampled() {
    let s = sweep(8, GoldTriple, SweepMode::Random(1500), None, None);
    assert_eq!(s.by_pattern.len(), 8);
    sweep(12, GoldTriple, SweepMode::Random(100), None, None);
}

#[test]
#[ignore = "about a minute single-threaded"]
fn gold_triple_exhaustive() {
    let s = sweep(8, GoldTriple, SweepMode::Exhaustive, None, None);
    assert_eq!(s.samples, 2_720_340);
}

#[test]
fn niho_smallest_and_next() {
    let s = sweep(6, NihoTriple, SweepMode::Exhaustive, Some(2), None);
    assert_eq!(s.by_class.get("Bent"), Some(&s.samples));
    let s = sweep(8, NihoTriple, SweepMode::Random(100), Some(3), None);
    assert_eq!(s.by_class.get("Bent"), Some(&s.samples));
}

#[test]
fn mm_linearized_smallest_and_next() {
    for j in 0..2 {
        sweep(2, MmLinearizedTriple, SweepMode::Exhaustive, Some(j), None);
        sweep(2, MmLinearizedDouble, SweepMode::Exhaustive, Some(j), None);
    }
    for j in 0..3 {
        sweep(3, MmLinearizedTriple, SweepMode::Random(100), Some(j), None);
        sweep(3, MmLinearizedDouble, SweepMode::Random(100), Some(j), None);
    }
    let s = sweep(4, MmLinearizedTriple, SweepMode::Random(400), Some(1), None);
    assert_eq!(s.by_pattern.len(), 8);
}

#[test]
fn mm_niho_power_smallest_and_next() {
    sweep(3, MmNihoPower, SweepMode::Exhaustive, None, Some(3));
    let out = sweep(5, MmNihoPower, SweepMode::Random(100), None, Some(5));
    assert!(out.by_class.contains_key("Bent") && out.by_class.contains_key("SemiBent"));
}
