use std::sync::Arc;

use intensity_core::analysis::SeriesData;
use intensity_core::constructions::{build, BuildConfig, ExponentFlag, GroupSpec};
use intensity_core::group::{Elem, GroupTable, LatticeConfig, SubgroupLattice};
use intensity_core::intensity::{
    brute_force_scalars, fixes_normal_subgroups, frattini_scalar, intensity, is_intense, minus_one_powers_check,
    Automorphism, FrattiniScalar, IntensityConfig, IntensitySearch,
};
use intensity_core::{Error, ExecMode};

fn group(spec: GroupSpec) -> Arc<GroupTable> {
    build(&spec, &BuildConfig::default()).unwrap().group
}

fn inte(spec: GroupSpec) -> u32 {
    intensity(&group(spec), &IntensityConfig::default()).unwrap().intensity
}

#[test]
fn abelian_groups_have_intensity_p_minus_one() {
    assert_eq!(inte(GroupSpec::abelian(3, &[2, 1])), 2);
    assert_eq!(inte(GroupSpec::abelian(5, &[2])), 4);
    assert_eq!(inte(GroupSpec::abelian(5, &[1, 1])), 4);
    assert_eq!(inte(GroupSpec::abelian(7, &[1])), 6);
    assert_eq!(inte(GroupSpec::trivial(5)), 1);
}

#[test]
fn two_groups_have_intensity_one() {
    assert_eq!(inte(GroupSpec::semidirect_cyclic(4, 2, 3)), 1);
    assert_eq!(inte(GroupSpec::abelian(2, &[2, 1])), 1);
}

#[test]
fn class_two_needs_exponent_p() {
    assert_eq!(inte(GroupSpec::extraspecial(3, 1, ExponentFlag::P)), 2);
    assert_eq!(inte(GroupSpec::extraspecial(5, 1, ExponentFlag::P)), 4);
    assert_eq!(inte(GroupSpec::extraspecial(3, 1, ExponentFlag::P2)), 1);
    assert_eq!(inte(GroupSpec::extraspecial(5, 1, ExponentFlag::P2)), 1);
}

#[test]
fn yo_and_its_quotients() {
    let g = group(GroupSpec::yo());
    let r = intensity(&g, &IntensityConfig::default()).unwrap();
    assert_eq!(r.intensity, 2);
    assert_eq!(r.realized_scalars, [1, 2]);
    assert_eq!((r.subgroup_count, r.subgroup_classes), (373, 53));
    let s = SeriesData::compute(&g).unwrap();
    for k in [3, 4] {
        let q = g.quotient(s.term(k)).unwrap();
        assert_eq!(intensity(q.group(), &IntensityConfig::default()).unwrap().intensity, 2);
    }
}

#[test]
fn yo_involution_is_intense_and_acts_by_minus_one() {
    let g = group(GroupSpec::yo());
    let s = SeriesData::compute(&g).unwrap();
    let lat = SubgroupLattice::build(&g, &LatticeConfig::default()).unwrap();
    let images: Vec<Elem> = g.gens().iter().map(|&x| g.inv(x)).collect();
    let alpha = Automorphism::from_generator_images(&g, &images).unwrap();
    assert_eq!(alpha.order(), 2);
    assert!(is_intense(&lat, &alpha));
    assert_eq!(frattini_scalar(&g, &s, &alpha), FrattiniScalar::Scalar(2));
    assert!(minus_one_powers_check(&g, &s, &lat, &alpha).unwrap());
}

#[test]
fn search_is_deterministic_across_modes() {
    let g = group(GroupSpec::extraspecial(5, 1, ExponentFlag::P));
    let seq = IntensityConfig { mode: ExecMode::Sequential, ..IntensityConfig::default() };
    let par = IntensityConfig { mode: ExecMode::Parallel, ..IntensityConfig::default() };
    let a = intensity(&g, &seq).unwrap();
    let b = intensity(&g, &par).unwrap();
    assert_eq!(a.witnesses, b.witnesses);
    assert_eq!(a.realized_scalars, b.realized_scalars);
}

#[test]
fn witnesses_are_intense_with_their_scalar() {
    for spec in [GroupSpec::yo(), GroupSpec::extraspecial(5, 1, ExponentFlag::P), GroupSpec::abelian(3, &[2, 1])] {
        let g = group(spec);
        let cfg = IntensityConfig::default();
        let search = IntensitySearch::new(&g, &cfg).unwrap();
        let r = search.run(&cfg).unwrap();
        assert_eq!(r.witnesses.len(), r.realized_scalars.len());
        for w in &r.witnesses {
            let alpha = search.witness_automorphism(w).unwrap();
            assert!(is_intense(search.lattice(), &alpha));
            assert!(fixes_normal_subgroups(search.lattice(), &alpha));
            assert_eq!(frattini_scalar(&g, search.series(), &alpha), FrattiniScalar::Scalar(w.scalar));
        }
    }
}

#[test]
fn coset_search_agrees_with_brute_force() {
    for spec in [
        GroupSpec::abelian(3, &[1, 1]),
        GroupSpec::abelian(3, &[2, 1]),
        GroupSpec::abelian(5, &[2]),
        GroupSpec::semidirect_cyclic(4, 2, 3),
        GroupSpec::semidirect_cyclic(9, 9, 4),
        GroupSpec::extraspecial(3, 1, ExponentFlag::P),
        GroupSpec::extraspecial(3, 1, ExponentFlag::P2),
    ] {
        let g = group(spec.clone());
        let s = SeriesData::compute(&g).unwrap();
        let lat = SubgroupLattice::build(&g, &LatticeConfig::default()).unwrap();
        let brute = brute_force_scalars(&g, &lat, &s).unwrap();
        let r = intensity(&g, &IntensityConfig::default()).unwrap();
        assert_eq!(brute, r.realized_scalars, "{spec:?}");
    }
}

#[test]
fn inner_automorphisms_are_intense_and_swaps_are_not() {
    let g = group(GroupSpec::extraspecial(3, 1, ExponentFlag::P));
    let lat = SubgroupLattice::build(&g, &LatticeConfig::default()).unwrap();
    assert!(g.elements().all(|h| is_intense(&lat, &Automorphism::inner(&g, h))));
    let v = group(GroupSpec::abelian(3, &[1, 1]));
    let vl = SubgroupLattice::build(&v, &LatticeConfig::default()).unwrap();
    let swap = Automorphism::from_generator_images(&v, &[v.gens()[1], v.gens()[0]]).unwrap();
    assert!(!is_intense(&vl, &swap));
}

#[test]
fn non_homomorphisms_are_rejected() {
    let g = group(GroupSpec::extraspecial(3, 1, ExponentFlag::P));
    let x = g.gens()[0];
    let err = Automorphism::from_generator_images(&g, &[x, x]).unwrap_err();
    assert!(matches!(err, Error::NotAHomomorphism | Error::NotBijective));
}

#[test]
fn candidate_budget_is_enforced() {
    let g = group(GroupSpec::yo());
    let cfg = IntensityConfig { budget_candidates: 10, ..IntensityConfig::default() };
    assert!(matches!(intensity(&g, &cfg), Err(Error::CapacityExceeded { .. })));
}
