use std::sync::Arc;

use intensity_core::analysis::{
    center_is_last_term, consecutive_width_bound, cubing_identity, cyclic_jumps_same_parity, is_extraspecial,
    is_framed, is_kappa_group, is_obelisk, is_regular, line_checks, lines_criterion, minimal_generators,
    normal_iff_squeezed, obelisk_power_law, power_abelian_report, power_congruence, PairPolicy, SeriesData,
};
use intensity_core::constructions::{build, BuildConfig, ExponentFlag, GroupSpec};
use intensity_core::group::{GroupTable, LatticeConfig, SubgroupLattice};
use intensity_core::{Error, ExecMode};

fn group(spec: GroupSpec) -> Arc<GroupTable> {
    build(&spec, &BuildConfig::default()).unwrap().group
}

fn series(g: &GroupTable) -> SeriesData {
    SeriesData::compute(g).unwrap()
}

fn yo_quotient(k: usize) -> Arc<GroupTable> {
    let g = group(GroupSpec::yo());
    let s = series(&g);
    g.quotient(s.term(k)).unwrap().group().clone()
}

#[test]
fn yo_series() {
    let g = group(GroupSpec::yo());
    let s = series(&g);
    assert_eq!(s.class(), 4);
    assert_eq!(s.widths, [2, 1, 2, 1]);
    assert_eq!(s.frattini.members(), s.term(2).members());
    assert_eq!(s.rank(&g), 2);
    assert_eq!(minimal_generators(&g, &s).len(), 2);
    assert_eq!(g.center().members(), s.term(4).members());
    assert!(center_is_last_term(&g, &s));
}

#[test]
fn series_of_abelian_groups() {
    let g = group(GroupSpec::abelian(3, &[2, 1]));
    let s = series(&g);
    assert_eq!(s.class(), 1);
    assert_eq!(s.widths, [3]);
    assert_eq!(s.frattini.order(), 3);
    let t = group(GroupSpec::trivial(5));
    let s = series(&t);
    assert_eq!(s.class(), 0);
    assert!(s.widths.is_empty());
}

#[test]
fn extraspecial_cases() {
    for (spec, expected) in [
        (GroupSpec::extraspecial(3, 1, ExponentFlag::P), true),
        (GroupSpec::extraspecial(5, 1, ExponentFlag::P2), true),
        (GroupSpec::extraspecial(3, 2, ExponentFlag::P), true),
        (GroupSpec::abelian(3, &[1, 1]), false),
        // Read literally, the definition admits the cyclic group of order p.
        (GroupSpec::abelian(3, &[1]), true),
        (GroupSpec::semidirect_cyclic(4, 2, 3), true),
        (GroupSpec::yo(), false),
    ] {
        let g = group(spec.clone());
        assert_eq!(is_extraspecial(&g, &series(&g)), expected, "{spec:?}");
    }
    let q = yo_quotient(3);
    assert!(is_extraspecial(&q, &series(&q)));
}

#[test]
fn kappa_groups() {
    let g = group(GroupSpec::yo());
    assert!(is_kappa_group(&g, &series(&g)));
    let q = yo_quotient(4);
    assert!(is_kappa_group(&q, &series(&q)));
    let h = group(GroupSpec::extraspecial(3, 1, ExponentFlag::P));
    assert!(!is_kappa_group(&h, &series(&h)));
}

#[test]
fn sn_quotients_are_framed_obelisks() {
    for (m, k, class) in [(2, Some(3), 2), (2, None, 3), (3, Some(5), 4)] {
        let g = group(GroupSpec::sn_delta(5, m, k));
        let s = series(&g);
        assert_eq!(s.class(), class);
        assert!(is_obelisk(&g, &s).unwrap());
        assert!(is_framed(&g, &s).unwrap());
        assert!(consecutive_width_bound(&s));
        let lines = line_checks(&g, &s).unwrap();
        assert_eq!(lines.len(), 6);
        assert!(lines.iter().all(|l| l.lines_condition && l.frattini_condition));
        match lines_criterion(&g, &s) {
            Ok(c) => assert!(class >= 3 && c),
            Err(Error::Precondition(_)) => assert_eq!(class, 2),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn sl2_triangle_quotients_are_not_framed() {
    for k in [Some(4), Some(5)] {
        let g = group(GroupSpec::sl2_triangle(5, 3, k));
        let s = series(&g);
        assert!(is_obelisk(&g, &s).unwrap());
        assert!(!is_framed(&g, &s).unwrap());
        assert!(!lines_criterion(&g, &s).unwrap());
        let lines = line_checks(&g, &s).unwrap();
        assert_eq!(lines.iter().filter(|l| !l.frattini_condition).count(), 2);
        assert!(lines.iter().all(|l| l.lines_condition == l.frattini_condition));
    }
}

#[test]
fn obelisk_predicate_rejects_non_obelisks() {
    let abelian = group(GroupSpec::abelian(5, &[1, 1]));
    assert!(!is_obelisk(&abelian, &series(&abelian)).unwrap_or(false));
    let es = group(GroupSpec::extraspecial(5, 1, ExponentFlag::P2));
    assert!(!is_obelisk(&es, &series(&es)).unwrap());
    // |G:G_3| = p^3 and G^p = 1 = G_3.
    let heis = group(GroupSpec::extraspecial(5, 1, ExponentFlag::P));
    assert!(is_obelisk(&heis, &series(&heis)).unwrap());
    let small = group(GroupSpec::extraspecial(3, 1, ExponentFlag::P));
    assert!(matches!(is_obelisk(&small, &series(&small)), Err(Error::Precondition(_))));
}

#[test]
fn obelisk_structure_laws() {
    let g = group(GroupSpec::sn_delta(5, 3, Some(5)));
    let s = series(&g);
    assert!(obelisk_power_law(&g, &s));
    assert!(cyclic_jumps_same_parity(&g, &s));
    assert!(power_abelian_report(&g, &s).holds);
}

#[test]
fn regularity() {
    let g = group(GroupSpec::yo());
    let r = is_regular(&g, &series(&g), &PairPolicy::default(), ExecMode::Parallel);
    assert!(!r.regular && r.exhaustive);
    assert!(r.counterexample.is_some());
    let a = group(GroupSpec::abelian(3, &[2, 1]));
    assert!(is_regular(&a, &series(&a), &PairPolicy::default(), ExecMode::Sequential).regular);
    let h = group(GroupSpec::extraspecial(3, 1, ExponentFlag::P));
    assert!(is_regular(&h, &series(&h), &PairPolicy::default(), ExecMode::Parallel).regular);
}

#[test]
fn regularity_is_mode_independent() {
    let g = group(GroupSpec::sn_delta(5, 2, None));
    let s = series(&g);
    let seq = is_regular(&g, &s, &PairPolicy::default(), ExecMode::Sequential);
    let par = is_regular(&g, &s, &PairPolicy::default(), ExecMode::Parallel);
    assert_eq!((seq.regular, seq.exhaustive, seq.pairs_checked), (par.regular, par.exhaustive, par.pairs_checked));
}

#[test]
fn power_identities() {
    let q = yo_quotient(4);
    let s = series(&q);
    assert!(cubing_identity(&q, &s, ExecMode::Parallel).unwrap());
    assert_eq!(power_congruence(&q, &s, &PairPolicy::default(), ExecMode::Parallel), (true, true));
    let g = group(GroupSpec::yo());
    assert!(!power_abelian_report(&g, &series(&g)).holds);
}

#[test]
fn normal_subgroups_of_yo_are_squeezed() {
    let g = group(GroupSpec::yo());
    let s = series(&g);
    let lat = SubgroupLattice::build(&g, &LatticeConfig::default()).unwrap();
    assert!(normal_iff_squeezed(&g, &s, lat.subgroups()));
    assert_eq!(lat.normal_subgroups().len(), 13);
}

#[test]
fn jump_profiles() {
    let g = group(GroupSpec::yo());
    let s = series(&g);
    let whole = s.jump_profile(&g.whole());
    assert_eq!(whole.indices(), [1, 2, 3, 4]);
    assert_eq!(whole.total_width(), 6);
    let z = s.jump_profile(&g.center());
    assert_eq!(z.indices(), [4]);
}
