use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;

use super::{Elem, GroupTable, Subgroup};
use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};

#[derive(Clone, Copy, Debug)]
pub struct LatticeConfig {
    pub max_subgroups: usize,
    pub mode: ExecMode,
}

impl Default for LatticeConfig {
    fn default() -> Self {
        Self { max_subgroups: 500_000, mode: ExecMode::default() }
    }
}

/// Subgroups of index `p` over `S` found by adjoining one element of `N_G(S)`.
fn cyclic_extensions(g: &GroupTable, s: &Subgroup, p: u32) -> Vec<Subgroup> {
    let n = g.order();
    let inside = s.bitset(n);
    let mut covered = inside.clone();
    let mut out = Vec::new();
    for x in 0..n as Elem {
        if covered.contains(x as usize) || !inside.contains(g.pow(x, p as i64) as usize) {
            continue;
        }
        if !s.gens().iter().all(|&h| inside.contains(g.conj(x, h) as usize)) {
            continue;
        }
        let mut members = Vec::with_capacity(s.order() * p as usize);
        let mut t = 0;
        for _ in 0..p {
            members.extend(s.members().iter().map(|&m| g.mul(t, m)));
            t = g.mul(t, x);
        }
        for &m in &members {
            covered.insert(m as usize);
        }
        let mut gens = s.gens().to_vec();
        gens.push(x);
        out.push(Subgroup::from_parts(members, gens));
    }
    out
}

/// Every subgroup of a finite `p`-group, sorted by `(order, members)`.
///
/// Each subgroup of order `p^(j+1)` contains a normal subgroup of index `p`,
/// so layer `j+1` is obtained from layer `j` by cyclic extensions.
pub fn all_subgroups(g: &GroupTable, cfg: &LatticeConfig) -> Result<Vec<Subgroup>> {
    let Some(p) = g.prime() else {
        return if g.order() == 1 {
            Ok(vec![Subgroup::trivial()])
        } else {
            Err(Error::Precondition("subgroup enumeration requires a p-group".into()))
        };
    };
    let mut all = vec![Subgroup::trivial()];
    let mut layer = vec![Subgroup::trivial()];
    while layer[0].order() < g.order() {
        let found = exec::map_collect(cfg.mode, &layer, |s| cyclic_extensions(g, s, p));
        let mut seen: FxHashMap<Vec<Elem>, ()> = FxHashMap::default();
        let mut next = Vec::new();
        for t in found.into_iter().flatten() {
            if seen.insert(t.members().to_vec(), ()).is_none() {
                next.push(t);
                if all.len() + next.len() > cfg.max_subgroups {
                    return Err(Error::CapacityExceeded {
                        what: "subgroup count".into(),
                        bound: cfg.max_subgroups as u64,
                    });
                }
            }
        }
        next.sort_by(|a, b| a.members().cmp(b.members()));
        all.extend(next.iter().cloned());
        layer = next;
    }
    Ok(all)
}

/// All subgroups together with their conjugacy classes.
#[derive(Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    index: FxHashMap<Box<[Elem]>, u32>,
    class_of: Vec<u32>,
    classes: Vec<Vec<u32>>,
}

impl SubgroupLattice {
    pub fn build(g: &GroupTable, cfg: &LatticeConfig) -> Result<Self> {
        let subgroups = all_subgroups(g, cfg)?;
        let index: FxHashMap<Box<[Elem]>, u32> =
            subgroups.iter().enumerate().map(|(i, h)| (h.members().into(), i as u32)).collect();
        let mut class_of = vec![u32::MAX; subgroups.len()];
        let mut classes = Vec::new();
        for start in 0..subgroups.len() {
            if class_of[start] != u32::MAX {
                continue;
            }
            let c = classes.len() as u32;
            class_of[start] = c;
            let mut orbit = vec![start as u32];
            let mut head = 0;
            while head < orbit.len() {
                let h = &subgroups[orbit[head] as usize];
                for &x in g.gens() {
                    let conj = g.conjugate(h, x);
                    let id = *index
                        .get(conj.members())
                        .ok_or_else(|| Error::Consistency("conjugate subgroup missing".into()))?;
                    if class_of[id as usize] == u32::MAX {
                        class_of[id as usize] = c;
                        orbit.push(id);
                    }
                }
                head += 1;
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        Ok(Self { subgroups, index, class_of, classes })
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, id: u32) -> &Subgroup {
        &self.subgroups[id as usize]
    }

    /// Id of the subgroup with exactly these (sorted) members.
    pub fn find(&self, members: &[Elem]) -> Option<u32> {
        self.index.get(members).copied()
    }

    pub fn class_of(&self, id: u32) -> u32 {
        self.class_of[id as usize]
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    /// Smallest subgroup id in each conjugacy class.
    pub fn class_representatives(&self) -> Vec<u32> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn normal_subgroups(&self) -> Vec<u32> {
        self.classes.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect()
    }

    /// Number of subgroups of each order.
    pub fn count_by_order(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for h in &self.subgroups {
            *m.entry(h.order()).or_insert(0) += 1;
        }
        m
    }

    /// Multiset of conjugacy class sizes, as `size -> count`.
    pub fn class_size_histogram(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for c in &self.classes {
            *m.entry(c.len()).or_insert(0) += 1;
        }
        m
    }
}

/// Independent enumeration: close the set of cyclic subgroups under joins.
/// Quadratic in the number of subgroups, so only for small groups.
pub fn subgroups_by_join_closure(g: &GroupTable) -> Vec<Vec<Elem>> {
    let n = g.order();
    let mut found: FxHashMap<Vec<Elem>, Subgroup> = FxHashMap::default();
    for x in g.elements() {
        let h = g.generated(&[x]);
        found.entry(h.members().to_vec()).or_insert(h);
    }
    let mut frontier: Vec<Subgroup> = found.values().cloned().collect();
    while !frontier.is_empty() {
        let current: Vec<Subgroup> = found.values().cloned().collect();
        let mut next = Vec::new();
        for a in &frontier {
            let abits: FixedBitSet = a.bitset(n);
            for b in &current {
                if b.members().iter().all(|&x| abits.contains(x as usize)) {
                    continue;
                }
                let j = g.join(a, b);
                if !found.contains_key(j.members()) {
                    found.insert(j.members().to_vec(), j.clone());
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Vec<Elem>> = found.into_keys().collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}
