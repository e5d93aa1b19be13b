use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use intensity_core::analysis::SeriesData;
use intensity_core::constructions::{build, BuildConfig, ExponentFlag, GroupSpec};
use intensity_core::group::{Elem, GroupTable, LatticeConfig, QuotientTable, SubgroupLattice};
use intensity_core::intensity::{Automorphism, GeneratorTree};
use intensity_core::kappa::{self, Table};
use intensity_core::ring::{Quaternion, QuaternionAlgebra};

struct Fixture {
    g: Arc<GroupTable>,
    lattice: SubgroupLattice,
    derived_quotient: QuotientTable,
    tree: GeneratorTree,
}

fn battery() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        [
            GroupSpec::yo(),
            GroupSpec::extraspecial(5, 1, ExponentFlag::P),
            GroupSpec::extraspecial(3, 1, ExponentFlag::P2),
            GroupSpec::semidirect_cyclic(9, 9, 4),
            GroupSpec::abelian(3, &[2, 1]),
            GroupSpec::sn_delta(5, 2, Some(3)),
        ]
        .into_iter()
        .map(|spec| {
            let g = build(&spec, &BuildConfig::default()).unwrap().group;
            let s = SeriesData::compute(&g).unwrap();
            let lattice = SubgroupLattice::build(&g, &LatticeConfig::default()).unwrap();
            let derived_quotient = g.quotient(s.term(2)).unwrap();
            let tree = GeneratorTree::new(&g, g.gens()).unwrap();
            Fixture { g, lattice, derived_quotient, tree }
        })
        .collect()
    })
}

/// A battery group with a few element indices drawn from it.
fn group_and_elems() -> impl Strategy<Value = (usize, Vec<Elem>)> {
    (0..6usize, prop::collection::vec(any::<u32>(), 6)).prop_map(|(i, raw)| {
        let n = battery()[i].g.order() as u32;
        (i, raw.into_iter().map(|r| r % n).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn group_laws((i, xs) in group_and_elems(), a in -20i64..20, b in -20i64..20) {
        let g = &battery()[i].g;
        let (x, y, z) = (xs[0], xs[1], xs[2]);
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        prop_assert_eq!(g.mul(x, g.inv(x)), g.identity());
        prop_assert_eq!(g.inv(g.mul(x, y)), g.mul(g.inv(y), g.inv(x)));
        prop_assert_eq!(g.pow(x, a + b), g.mul(g.pow(x, a), g.pow(x, b)));
        prop_assert_eq!(g.generated(&[x]).order(), g.element_order(x) as usize);
        prop_assert_eq!(g.inv(g.commutator(x, y)), g.commutator(y, x));
        prop_assert_eq!(g.commutator(x, y) == g.identity(), g.mul(x, y) == g.mul(y, x));
    }

    #[test]
    fn projection_is_a_homomorphism((i, xs) in group_and_elems()) {
        let f = &battery()[i];
        let q = &f.derived_quotient;
        let (x, y) = (xs[0], xs[1]);
        prop_assert_eq!(q.project(f.g.mul(x, y)), q.group().mul(q.project(x), q.project(y)));
        prop_assert_eq!(q.project(q.lift(q.project(x))), q.project(x));
        prop_assert!(q.group().is_abelian());
    }

    #[test]
    fn lattice_is_closed_under_conjugation((i, xs) in group_and_elems()) {
        let f = &battery()[i];
        let h = f.g.generated(&xs[..2]);
        let id = f.lattice.find(h.members());
        prop_assert!(id.is_some());
        let c = f.g.conjugate(&h, xs[2]);
        let cid = f.lattice.find(c.members());
        prop_assert!(cid.is_some());
        prop_assert_eq!(f.lattice.class_of(id.unwrap()), f.lattice.class_of(cid.unwrap()));
    }

    #[test]
    fn extended_maps_are_automorphisms((i, xs) in group_and_elems()) {
        let f = &battery()[i];
        let d = f.tree.gens().len();
        if let Ok(alpha) = Automorphism::from_images_on(&f.g, &f.tree, &xs[..d]) {
            let (x, y) = (xs[4], xs[5]);
            prop_assert_eq!(alpha.apply(f.g.mul(x, y)), f.g.mul(alpha.apply(x), alpha.apply(y)));
            let h = f.g.generated(&[x, y]);
            let image = alpha.image_of(&h);
            prop_assert_eq!(image.order(), h.order());
            prop_assert!(f.lattice.find(image.members()).is_some());
            let order = alpha.order();
            let mut cur = Automorphism::identity(&f.g);
            for _ in 0..order {
                cur = alpha.compose(&cur);
            }
            prop_assert!(cur.is_identity());
        }
    }
}

fn quaternion(alg: &QuaternionAlgebra) -> impl Strategy<Value = Quaternion> {
    let s = alg.ring.size();
    prop::array::uniform4(0..s).prop_map(Quaternion)
}

proptest! {
    #[test]
    fn quaternion_algebra_laws(
        (x, y, z) in (quaternion(&QuaternionAlgebra::yo()), quaternion(&QuaternionAlgebra::yo()), quaternion(&QuaternionAlgebra::yo())),
        (u, v, w) in {
            let d = QuaternionAlgebra::delta(5, 2, 2).unwrap();
            (quaternion(&d), quaternion(&d), quaternion(&d))
        },
    ) {
        let yo = QuaternionAlgebra::yo();
        let delta = QuaternionAlgebra::delta(5, 2, 2).unwrap();
        for (alg, a, b, c) in [(&yo, x, y, z), (&delta, u, v, w)] {
            prop_assert_eq!(alg.mul(alg.mul(a, b), c), alg.mul(a, alg.mul(b, c)));
            prop_assert_eq!(alg.mul(a, alg.add(b, c)), alg.add(alg.mul(a, b), alg.mul(a, c)));
            prop_assert_eq!(alg.bar(alg.mul(a, b)), alg.mul(alg.bar(b), alg.bar(a)));
            prop_assert_eq!(alg.norm(alg.mul(a, b)), alg.ring.mul(alg.norm(a), alg.norm(b)));
            prop_assert_eq!(Quaternion::unpack(a.pack()), a);
        }
    }

    #[test]
    fn kappa_axioms_on_arbitrary_pairs(s in 0..3usize, x in 0..9usize, y in 0..9usize) {
        let kappas: Vec<Table> = kappa::enumerate_kappa_structures().unwrap();
        let k = &kappas[s];
        let (vx, vy) = (kappa::vector(x), kappa::vector(y));
        // κ(x + y) = κ(x) + κ(y) + (x − y)·(x ∧ y)
        let correction = kappa::scale(kappa::wedge(vx, vy), kappa::sub(vx, vy));
        prop_assert_eq!(k[kappa::index(kappa::add(vx, vy))], kappa::add(kappa::add(k[x], k[y]), correction));
        prop_assert_eq!(k[kappa::index(kappa::neg(vx))], kappa::neg(k[x]));
        // l_V(κ) = i·κ satisfies the second axiom.
        let l = kappa::l_v(k);
        let w = kappa::sub(kappa::f9_mul(vx, kappa::f9_pow(vy, 3)), kappa::f9_mul(kappa::f9_pow(vx, 3), vy));
        let correction = kappa::f9_mul(kappa::sub(vx, vy), w);
        prop_assert_eq!(l[kappa::index(kappa::add(vx, vy))], kappa::add(kappa::add(l[x], l[y]), correction));
        prop_assert!(kappa::is_kappa_structure(&kappa::s_v(&kappa::enumerate_subfields()[s])));
    }
}
