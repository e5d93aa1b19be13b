use std::sync::Arc;

use super::{Ambient, ClosureConfig, Elem, GroupTable, Subgroup};
use crate::error::{Error, Result};

/// Cosets of a normal subgroup, keyed by their smallest member.
#[derive(Debug)]
pub struct QuotientAmbient {
    parent: Arc<GroupTable>,
    rep: Arc<Vec<Elem>>,
}

impl Ambient for QuotientAmbient {
    fn identity(&self) -> u64 {
        0
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        self.rep[self.parent.mul(a as Elem, b as Elem) as usize] as u64
    }

    fn inv(&self, a: u64) -> u64 {
        self.rep[self.parent.inv(a as Elem) as usize] as u64
    }

    fn format(&self, key: u64) -> String {
        format!("{}·N", self.parent.format_element(key as Elem))
    }
}

/// `G/N` together with the projection `G → G/N`.
#[derive(Debug)]
pub struct QuotientTable {
    parent: Arc<GroupTable>,
    kernel: Subgroup,
    coset_rep: Arc<Vec<Elem>>,
    projection: Vec<Elem>,
    group: Arc<GroupTable>,
}

impl QuotientTable {
    pub fn new(parent: &Arc<GroupTable>, kernel: &Subgroup, cfg: &ClosureConfig) -> Result<Self> {
        if !parent.is_normal(kernel) {
            return Err(Error::NotNormal);
        }
        let n = parent.order();
        let coset_rep = Arc::new(parent.coset_reps(kernel));
        let ambient = Arc::new(QuotientAmbient { parent: parent.clone(), rep: coset_rep.clone() });
        let seeds: Vec<u64> = parent.gens().iter().map(|&g| coset_rep[g as usize] as u64).collect();
        let mut group = GroupTable::closure(ambient, &seeds, cfg)?;
        if let Some(p) = parent.prime() {
            group = group.with_prime(p);
        }
        if group.order() * kernel.order() != n {
            return Err(Error::Consistency("quotient order mismatch".into()));
        }
        let projection =
            coset_rep.iter().map(|&r| group.index_of(r as u64).expect("coset representative in quotient")).collect();
        let label = if parent.label().is_empty() { String::new() } else { format!("{}/N", parent.label()) };
        Ok(Self {
            parent: parent.clone(),
            kernel: kernel.clone(),
            coset_rep,
            projection,
            group: Arc::new(group.with_label(label)),
        })
    }

    pub fn parent(&self) -> &Arc<GroupTable> {
        &self.parent
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    /// Image of a parent element.
    pub fn project(&self, x: Elem) -> Elem {
        self.projection[x as usize]
    }

    /// A parent element in the coset `q`.
    pub fn lift(&self, q: Elem) -> Elem {
        self.group.key(q) as Elem
    }

    /// Smallest parent element of the coset of `x`.
    pub fn coset_rep(&self, x: Elem) -> Elem {
        self.coset_rep[x as usize]
    }

    /// Image of a subgroup of the parent.
    pub fn project_subgroup(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<Elem> = h.gens().iter().map(|&x| self.project(x)).collect();
        self.group.generated(&gens)
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, h: &Subgroup) -> Subgroup {
        let members: Vec<Elem> = self.parent.elements().filter(|&x| h.contains(self.project(x))).collect();
        let mut gens: Vec<Elem> = h.gens().iter().map(|&q| self.lift(q)).collect();
        gens.extend_from_slice(self.kernel.gens());
        Subgroup::from_parts(members, gens)
    }
}

impl GroupTable {
    /// Smallest member of each left coset `xH`, indexed by `x`.
    pub fn coset_reps(&self, h: &Subgroup) -> Vec<Elem> {
        let mut rep = vec![Elem::MAX; self.order()];
        for x in self.elements() {
            if rep[x as usize] != Elem::MAX {
                continue;
            }
            for &k in h.members() {
                rep[self.mul(x, k) as usize] = x;
            }
        }
        rep
    }

    /// `G/N` for a normal subgroup `N`.
    pub fn quotient(self: &Arc<Self>, kernel: &Subgroup) -> Result<QuotientTable> {
        QuotientTable::new(self, kernel, &ClosureConfig::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug)]
    struct Z2Z4;

    impl Ambient for Z2Z4 {
        fn identity(&self) -> u64 {
            0
        }
        fn mul(&self, a: u64, b: u64) -> u64 {
            (((a & 3) + (b & 3)) % 4) | (((a >> 2) ^ (b >> 2)) << 2)
        }
        fn inv(&self, a: u64) -> u64 {
            ((4 - (a & 3)) % 4) | (a & 4)
        }
    }

    #[test]
    fn quotient_by_squares() {
        let g = Arc::new(GroupTable::closure(Arc::new(Z2Z4), &[1, 4], &ClosureConfig::default()).unwrap());
        let sq = g.power_subgroup(&g.whole(), 2);
        assert_eq!(sq.order(), 2);
        let q = g.quotient(&sq).unwrap();
        assert_eq!(q.group().order(), 4);
        assert_eq!(q.group().exponent(), 2);
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(q.project(g.mul(x, y)), q.group().mul(q.project(x), q.project(y)));
            }
            assert_eq!(q.project(q.lift(q.project(x))), q.project(x));
        }
        let whole = q.group().whole();
        assert_eq!(q.preimage(&whole).order(), 8);
        assert_eq!(q.preimage(&Subgroup::trivial()).members(), sq.members());
    }
}
