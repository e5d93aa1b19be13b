use std::sync::Arc;

use intensity_core::analysis::SeriesData;
use intensity_core::constructions::{build, BuildConfig, ExponentFlag, GroupSpec};
use intensity_core::group::{subgroups_by_join_closure, Elem, GroupTable, LatticeConfig, SubgroupLattice};
use intensity_core::{Error, ExecMode};

fn group(spec: GroupSpec) -> Arc<GroupTable> {
    build(&spec, &BuildConfig::default()).unwrap().group
}

fn count(spec: GroupSpec) -> usize {
    SubgroupLattice::build(&group(spec), &LatticeConfig::default()).unwrap().len()
}

#[test]
fn known_subgroup_counts() {
    // Cyclic of order p^n: n + 1 subgroups.
    assert_eq!(count(GroupSpec::abelian(5, &[3])), 4);
    // (Z/p)^2: p + 3.
    assert_eq!(count(GroupSpec::abelian(5, &[1, 1])), 8);
    // (Z/3)^3: 1 + 13 + 13 + 1.
    assert_eq!(count(GroupSpec::abelian(3, &[1, 1, 1])), 28);
    // Dihedral of order 8.
    assert_eq!(count(GroupSpec::semidirect_cyclic(4, 2, 3)), 10);
    // Heisenberg of order 27: 1 + 13 + 4 + 1.
    assert_eq!(count(GroupSpec::extraspecial(3, 1, ExponentFlag::P)), 19);
    assert_eq!(count(GroupSpec::yo()), 373);
}

#[test]
fn agrees_with_join_closure_oracle() {
    let yo = group(GroupSpec::yo());
    let s = SeriesData::compute(&yo).unwrap();
    let quotients = [yo.quotient(s.term(3)).unwrap().group().clone(), yo.quotient(s.term(4)).unwrap().group().clone()];
    let others = [
        group(GroupSpec::extraspecial(3, 1, ExponentFlag::P2)),
        group(GroupSpec::semidirect_cyclic(9, 9, 4)),
        group(GroupSpec::abelian(3, &[2, 1])),
    ];
    for g in quotients.iter().chain(&others) {
        let lat = SubgroupLattice::build(g, &LatticeConfig::default()).unwrap();
        let mut mine: Vec<Vec<Elem>> = lat.subgroups().iter().map(|h| h.members().to_vec()).collect();
        mine.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        assert_eq!(mine, subgroups_by_join_closure(g));
    }
}

#[test]
fn classes_are_conjugacy_orbits() {
    let g = group(GroupSpec::yo());
    let lat = SubgroupLattice::build(&g, &LatticeConfig::default()).unwrap();
    for class in lat.classes() {
        let h = lat.get(class[0]);
        assert_eq!(class.len(), g.order() / g.normalizer(h).order());
        for x in g.gens() {
            let c = g.conjugate(h, *x);
            let id = lat.find(c.members()).unwrap();
            assert_eq!(lat.class_of(id), lat.class_of(class[0]));
        }
    }
    let sizes: Vec<usize> = lat.class_size_histogram().keys().copied().collect();
    assert_eq!(sizes, [1, 3, 9, 27]);
    assert_eq!(lat.count_by_order().values().sum::<usize>(), 373);
}

#[test]
fn sequential_and_parallel_agree() {
    let g = group(GroupSpec::yo());
    let a = SubgroupLattice::build(&g, &LatticeConfig { mode: ExecMode::Sequential, ..Default::default() }).unwrap();
    let b = SubgroupLattice::build(&g, &LatticeConfig { mode: ExecMode::Parallel, ..Default::default() }).unwrap();
    assert_eq!(a.subgroups(), b.subgroups());
    assert_eq!(a.classes(), b.classes());
}

#[test]
fn subgroup_bound_is_enforced() {
    let g = group(GroupSpec::yo());
    let cfg = LatticeConfig { max_subgroups: 50, ..Default::default() };
    assert!(matches!(SubgroupLattice::build(&g, &cfg), Err(Error::CapacityExceeded { .. })));
}
