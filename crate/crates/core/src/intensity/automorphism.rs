use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable, QuotientTable, Subgroup};

/// A spanning tree of the Cayley graph of `G` for a chosen generating list.
///
/// Used to extend generator images to a full map: `φ(x·s) = φ(x)·φ(s)` along
/// tree edges, after which every edge (not only tree edges) is checked.
#[derive(Clone, Debug)]
pub struct GeneratorTree {
    gens: Vec<Elem>,
    order: Vec<Elem>,
    parent: Vec<(Elem, u32)>,
}

impl GeneratorTree {
    pub fn new(g: &GroupTable, gens: &[Elem]) -> Result<Self> {
        let n = g.order();
        let mut parent = vec![(0, u32::MAX); n];
        let mut seen = FixedBitSet::with_capacity(n);
        seen.insert(0);
        let mut order = vec![0];
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            for (s, &a) in gens.iter().enumerate() {
                let y = g.mul(x, a);
                if !seen.put(y as usize) {
                    parent[y as usize] = (x, s as u32);
                    order.push(y);
                }
            }
            head += 1;
        }
        if order.len() != n {
            return Err(Error::Precondition("elements do not generate the group".into()));
        }
        Ok(Self { gens: gens.to_vec(), order, parent })
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    /// Extend `images` into `perm`, checking the homomorphism and bijection
    /// conditions. `seen` is scratch space of length `|G|`.
    pub fn extend_into(
        &self,
        g: &GroupTable,
        images: &[Elem],
        perm: &mut Vec<Elem>,
        seen: &mut FixedBitSet,
    ) -> Result<()> {
        let n = g.order();
        perm.clear();
        perm.resize(n, 0);
        for &x in &self.order[1..] {
            let (pred, s) = self.parent[x as usize];
            perm[x as usize] = g.mul(perm[pred as usize], images[s as usize]);
        }
        for x in 0..n as Elem {
            for (s, &a) in self.gens.iter().enumerate() {
                if perm[g.mul(x, a) as usize] != g.mul(perm[x as usize], images[s]) {
                    return Err(Error::NotAHomomorphism);
                }
            }
        }
        seen.clear();
        seen.grow(n);
        for &y in perm.iter() {
            if seen.put(y as usize) {
                return Err(Error::NotBijective);
            }
        }
        Ok(())
    }
}

/// A certified automorphism: a permutation of element indices that is a homomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Automorphism {
    gens: Vec<Elem>,
    images: Vec<Elem>,
    #[serde(skip)]
    perm: Vec<Elem>,
}

impl Automorphism {
    /// Extend images of the group's own generators.
    pub fn from_generator_images(g: &GroupTable, images: &[Elem]) -> Result<Self> {
        let tree = GeneratorTree::new(g, g.gens())?;
        Self::from_images_on(g, &tree, images)
    }

    /// Extend images of the generators of `tree`.
    pub fn from_images_on(g: &GroupTable, tree: &GeneratorTree, images: &[Elem]) -> Result<Self> {
        if images.len() != tree.gens().len() {
            return Err(Error::InvalidParameter("one image per generator is required".into()));
        }
        if images.iter().any(|&y| y as usize >= g.order()) {
            return Err(Error::InvalidParameter("image index out of range".into()));
        }
        let mut perm = Vec::new();
        let mut seen = FixedBitSet::new();
        tree.extend_into(g, images, &mut perm, &mut seen)?;
        Ok(Self { gens: tree.gens().to_vec(), images: images.to_vec(), perm })
    }

    pub(crate) fn from_parts(gens: Vec<Elem>, images: Vec<Elem>, perm: Vec<Elem>) -> Self {
        Self { gens, images, perm }
    }

    pub fn identity(g: &GroupTable) -> Self {
        Self { gens: g.gens().to_vec(), images: g.gens().to_vec(), perm: g.elements().collect() }
    }

    /// Conjugation `x ↦ h x h⁻¹`.
    pub fn inner(g: &GroupTable, h: Elem) -> Self {
        let perm: Vec<Elem> = g.elements().map(|x| g.conj(h, x)).collect();
        let images = g.gens().iter().map(|&x| perm[x as usize]).collect();
        Self { gens: g.gens().to_vec(), images, perm }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.perm[x as usize]
    }

    pub fn perm(&self) -> &[Elem] {
        &self.perm
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &y)| i as Elem == y)
    }

    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let perm: Vec<Elem> = other.perm.iter().map(|&y| self.perm[y as usize]).collect();
        let images = self.gens.iter().map(|&x| perm[x as usize]).collect();
        Automorphism { gens: self.gens.clone(), images, perm }
    }

    /// Order as an element of `Aut(G)`.
    pub fn order(&self) -> u32 {
        let mut cur = self.clone();
        let mut k = 1;
        while !cur.is_identity() {
            cur = self.compose(&cur);
            k += 1;
        }
        k
    }

    pub fn image_of(&self, h: &Subgroup) -> Subgroup {
        let members = h.members().iter().map(|&x| self.apply(x)).collect();
        let gens = h.gens().iter().map(|&x| self.apply(x)).collect();
        Subgroup::from_parts(members, gens)
    }

    pub fn stabilizes(&self, h: &Subgroup) -> bool {
        h.gens().iter().all(|&x| h.contains(self.apply(x)))
    }

    /// The automorphism induced on `G/N`; requires `α(N) = N`.
    pub fn induced_on_quotient(&self, q: &QuotientTable) -> Result<Automorphism> {
        if !self.stabilizes(q.kernel()) {
            return Err(Error::Precondition("kernel is not stable under the automorphism".into()));
        }
        let qg = q.group();
        let parent = q.parent();
        let images: Vec<Elem> = parent.gens().iter().map(|&x| q.project(self.apply(x))).collect();
        Automorphism::from_generator_images(qg, &images)
    }
}
