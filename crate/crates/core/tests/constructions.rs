use std::sync::Arc;

use intensity_core::analysis::{commutator_subgroup_all_pairs, SeriesData};
use intensity_core::constructions::{
    build, build_abelian, build_extraspecial, build_semidirect_cyclic, build_sl2_triangle, build_yo, in_sl2_triangle,
    yo_generators, BuildConfig, ExponentFlag, GroupSpec,
};
use intensity_core::group::GroupTable;
use intensity_core::ring::{Mat2, Quaternion, QuaternionAlgebra};

fn cfg() -> BuildConfig {
    BuildConfig::default()
}

fn validate(g: &GroupTable) {
    assert!(g.check_generator_consistency());
    assert!(g.check_associativity_sampled(100_000, 11));
    for x in g.elements() {
        let mut cur = x;
        let mut steps = 0;
        while let Some((p, _)) = g.parent(cur) {
            cur = p;
            steps += 1;
            assert!(steps <= g.order());
        }
        assert_eq!(cur, 0);
    }
}

#[test]
fn abelian_examples() {
    let g = build_abelian(3, &[2, 1], &cfg()).unwrap();
    assert_eq!((g.order(), g.exponent()), (27, 9));
    let g = build_abelian(5, &[2], &cfg()).unwrap();
    assert_eq!((g.order(), g.exponent()), (25, 25));
    let g = build_abelian(3, &[1, 1], &cfg()).unwrap();
    assert_eq!((g.order(), g.exponent()), (9, 3));
    let t = build_abelian(3, &[], &cfg()).unwrap();
    assert_eq!((t.order(), t.prime()), (1, Some(3)));
    validate(&g);
}

#[test]
fn extraspecial_examples() {
    let g = build_extraspecial(3, 1, ExponentFlag::P, &cfg()).unwrap();
    assert_eq!((g.order(), g.exponent()), (27, 3));
    validate(&g);
    let g = build_extraspecial(5, 1, ExponentFlag::P2, &cfg()).unwrap();
    assert_eq!((g.order(), g.exponent(), g.center().order()), (125, 25, 5));
    let g = build_extraspecial(3, 2, ExponentFlag::P, &cfg()).unwrap();
    let whole = g.whole();
    assert_eq!(g.order(), 243);
    assert_eq!(g.commutator_subgroup(&whole, &whole).order(), 3);
    assert_eq!(g.center().order(), 3);
    validate(&g);
    assert!(build_extraspecial(3, 2, ExponentFlag::P2, &cfg()).is_err());
}

#[test]
fn semidirect_examples() {
    let d8 = build_semidirect_cyclic(4, 2, 3, &cfg()).unwrap();
    assert_eq!(d8.order(), 8);
    assert!(!d8.is_abelian());
    assert_eq!(d8.elements().filter(|&x| d8.element_order(x) == 2).count(), 5);
    let e = build_semidirect_cyclic(25, 5, 6, &cfg()).unwrap();
    let whole = e.whole();
    let z = e.center();
    assert_eq!((e.order(), z.order(), e.exponent()), (125, 5, 25));
    assert_eq!(e.commutator_subgroup(&whole, &whole).members(), z.members());
    let c = build_semidirect_cyclic(7, 1, 1, &cfg()).unwrap();
    assert_eq!((c.order(), c.exponent()), (7, 7));
    assert!(build_semidirect_cyclic(25, 5, 2, &cfg()).is_err());
}

#[test]
fn yo_group() {
    let g = build_yo(&cfg()).unwrap();
    assert_eq!(g.order(), 729);
    validate(&g);
    let s = SeriesData::compute(&g).unwrap();
    assert_eq!(s.class(), 4);
    assert_eq!(s.widths, vec![2, 1, 2, 1]);
    // bar coincides with inversion on every element
    let alg = QuaternionAlgebra::yo();
    for x in g.elements() {
        let bar = alg.bar(Quaternion::unpack(g.key(x)));
        assert_eq!(g.index_of(bar.pack()), Some(g.inv(x)));
    }
    let [a, b] = yo_generators(&alg);
    let (ia, ib) = (g.index_of(a.pack()).unwrap(), g.index_of(b.pack()).unwrap());
    assert_eq!(g.generated(&[ia]).order(), 9);
    let c = g.commutator(ia, ib);
    let one_minus_k = Quaternion([1, 0, 0, alg.ring.neg(1)]);
    let target = g.index_of(one_minus_k.pack()).expect("1 - k has norm one");
    let d = g.mul(g.inv(target), c);
    assert!(s.in_term(d, 3));
    let g2 = s.term(2);
    assert_eq!(g2.order(), 81);
    assert!(g2.members().iter().all(|&x| g.pow(x, 3) == 0));
    assert!(g.is_abelian_subgroup(g2));
    assert_eq!(g.center().members(), s.term(4).members());
}

#[test]
fn lcs_generator_method_matches_all_pairs() {
    for g in [build_yo(&cfg()).unwrap(), build_extraspecial(3, 2, ExponentFlag::P, &cfg()).unwrap()] {
        let s = SeriesData::compute(&g).unwrap();
        for i in 1..=s.class() {
            assert_eq!(commutator_subgroup_all_pairs(&g, s.term(i)).members(), s.term(i + 1).members());
        }
    }
}

#[test]
fn sn_delta_precision_two() {
    let c = build(&GroupSpec::sn_delta(5, 2, None), &cfg()).unwrap();
    assert_eq!(c.group.order(), 3125);
    let s = SeriesData::compute(&c.group).unwrap();
    assert_eq!(s.widths, vec![2, 1, 2]);
    validate(&c.group);
}

#[test]
fn sn_delta_invariants_do_not_depend_on_t() {
    let a = build(&GroupSpec::sn_delta(5, 2, None).with_t(2), &cfg()).unwrap();
    let b = build(&GroupSpec::sn_delta(5, 2, None).with_t(3), &cfg()).unwrap();
    let (sa, sb) = (SeriesData::compute(&a.group).unwrap(), SeriesData::compute(&b.group).unwrap());
    assert_eq!(a.group.order(), b.group.order());
    assert_eq!(sa.widths, sb.widths);
}

#[test]
fn sn_delta_precision_three_quotient() {
    let c = build(&GroupSpec::sn_delta(5, 3, Some(5)), &cfg()).unwrap();
    assert_eq!(c.group.order(), 5usize.pow(6));
    let s = SeriesData::compute(&c.group).unwrap();
    assert_eq!(s.class(), 4);
    assert_eq!(s.widths, vec![2, 1, 2, 1]);
    let parent = c.quotient.as_ref().unwrap().parent();
    assert_eq!(parent.order(), 5usize.pow(8));
    let ps = SeriesData::compute(parent).unwrap();
    assert_eq!(ps.widths, vec![2, 1, 2, 1, 2]);
}

#[test]
fn sl2_triangle_orders() {
    let g = build_sl2_triangle(5, 2, &cfg()).unwrap();
    assert_eq!(g.order(), 625);
    validate(&g);
    // Oracle: filter all of SL_2(Z/25).
    let q = 25;
    let mut sl2 = 0;
    let mut tri = 0;
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let m = Mat2([a, b, c, d]);
                    if m.det(q) == 1 {
                        sl2 += 1;
                        if in_sl2_triangle(&m, 5, q) {
                            tri += 1;
                        }
                    }
                }
            }
        }
    }
    assert_eq!(sl2, 15000);
    assert_eq!(tri, 625);
    let g3 = build_sl2_triangle(5, 3, &cfg()).unwrap();
    assert_eq!(g3.order(), 5usize.pow(7));
}

#[test]
fn direct_product_of_cyclics() {
    let spec = GroupSpec::direct_product(vec![GroupSpec::abelian(3, &[2]), GroupSpec::abelian(3, &[1])]);
    let g = build(&spec, &cfg()).unwrap().group;
    assert_eq!((g.order(), g.exponent(), g.prime()), (27, 9, Some(3)));
    assert!(g.is_abelian());
}

#[test]
fn quotient_by_trivial_is_isomorphic() {
    let g = Arc::new(build_extraspecial(3, 1, ExponentFlag::P, &cfg()).unwrap());
    let q = g.quotient(&intensity_core::group::Subgroup::trivial()).unwrap();
    assert_eq!(q.group().order(), 27);
    for x in g.elements() {
        for y in g.elements() {
            assert_eq!(q.project(g.mul(x, y)), q.group().mul(q.project(x), q.project(y)));
        }
    }
}
