use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{exact_log, Elem, GroupTable, Subgroup};

/// Lower central series `G = G_1 ⊇ G_2 ⊇ …`, ending with the trivial group.
///
/// Fails with a precondition error when the series stabilizes above the
/// trivial group (the group is not nilpotent).
pub fn lower_central_series(g: &GroupTable) -> Result<Vec<Subgroup>> {
    let whole = g.whole();
    let mut lcs = vec![whole.clone()];
    while !lcs.last().unwrap().is_trivial() {
        let next = g.commutator_subgroup(&whole, lcs.last().unwrap());
        if next.order() == lcs.last().unwrap().order() {
            return Err(Error::Precondition("group is not nilpotent".into()));
        }
        lcs.push(next);
    }
    Ok(lcs)
}

/// `[G, H]` from all pairs of elements; quadratic, used to cross-check the
/// generator-based computation.
pub fn commutator_subgroup_all_pairs(g: &GroupTable, h: &Subgroup) -> Subgroup {
    let mut comms: Vec<Elem> = Vec::new();
    let mut seen = fixedbitset::FixedBitSet::with_capacity(g.order());
    for x in g.elements() {
        for &y in h.members() {
            let c = g.commutator(x, y);
            if !seen.put(c as usize) {
                comms.push(c);
            }
        }
    }
    let mut cur = Subgroup::trivial();
    for c in comms {
        if !cur.contains(c) {
            cur = g.join_elements(&cur, &[c]);
        }
    }
    cur
}

#[derive(Clone, Debug)]
pub struct SeriesData {
    pub p: u32,
    /// `G_1, …, G_{c+1}` with `G_{c+1}` trivial.
    pub lcs: Vec<Subgroup>,
    /// p-central series `P_1 = G`, `P_{i+1} = [G, P_i] P_i^p`, ending trivial.
    pub pcs: Vec<Subgroup>,
    /// Derived series, ending trivial.
    pub derived: Vec<Subgroup>,
    pub frattini: Subgroup,
    /// Depth of every element; the identity gets `class + 1`.
    pub depth: Vec<u32>,
    /// `w_1, …, w_c`.
    pub widths: Vec<u32>,
}

impl SeriesData {
    pub fn compute(g: &GroupTable) -> Result<Self> {
        let p = match (g.prime(), g.order()) {
            (Some(p), _) => p,
            (None, 1) => 0,
            _ => return Err(Error::Precondition("series require a group of prime-power order".into())),
        };
        let lcs = lower_central_series(g)?;
        let class = lcs.len() - 1;
        let mut depth = vec![0u32; g.order()];
        for (i, term) in lcs.iter().enumerate() {
            for &x in term.members() {
                depth[x as usize] = i as u32 + 1;
            }
        }
        let widths = lcs
            .windows(2)
            .map(|w| {
                exact_log(w[0].order() / w[1].order(), p)
                    .filter(|_| w[0].order() % w[1].order() == 0)
                    .ok_or_else(|| Error::Consistency("non-integral width".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        debug_assert_eq!(widths.len(), class);
        let whole = g.whole();
        let mut pcs = vec![whole.clone()];
        while !pcs.last().unwrap().is_trivial() {
            let last = pcs.last().unwrap();
            let mut s: Vec<Elem> = Vec::new();
            for &a in g.gens() {
                for &b in last.gens() {
                    s.push(g.commutator(a, b));
                }
            }
            s.extend(last.gens().iter().map(|&b| g.pow(b, p as i64)));
            let next = g.normal_closure(&s);
            if next.order() == last.order() {
                return Err(Error::Consistency("p-central series stalled".into()));
            }
            pcs.push(next);
        }
        let mut derived = vec![whole.clone()];
        while !derived.last().unwrap().is_trivial() {
            let last = derived.last().unwrap();
            let next = g.commutator_subgroup(last, last);
            if next.order() == last.order() {
                return Err(Error::Consistency("derived series stalled".into()));
            }
            derived.push(next);
        }
        let frattini = if class == 0 {
            Subgroup::trivial()
        } else {
            let powers: Vec<Elem> = g.gens().iter().map(|&x| g.pow(x, p as i64)).collect();
            g.join_elements(&lcs[1], &powers)
        };
        Ok(Self { p, lcs, pcs, derived, frattini, depth, widths })
    }

    pub fn class(&self) -> usize {
        self.lcs.len() - 1
    }

    /// `G_i` for `i ≥ 1`; trivial beyond the class.
    pub fn term(&self, i: usize) -> &Subgroup {
        assert!(i >= 1);
        &self.lcs[(i - 1).min(self.lcs.len() - 1)]
    }

    pub fn depth(&self, x: Elem) -> u32 {
        self.depth[x as usize]
    }

    pub fn in_term(&self, x: Elem, i: usize) -> bool {
        self.depth[x as usize] as usize >= i
    }

    /// `d = dim G/Φ(G)`.
    pub fn rank(&self, g: &GroupTable) -> u32 {
        exact_log(g.order() / self.frattini.order(), self.p.max(2)).unwrap_or(0)
    }

    pub fn jump_profile(&self, h: &Subgroup) -> JumpProfile {
        let c = self.class();
        let mut counts = vec![0usize; c + 2];
        for &x in h.members() {
            counts[self.depth[x as usize] as usize] += 1;
        }
        // |H ∩ G_j| = number of members of depth ≥ j
        let mut at_least = vec![0usize; c + 3];
        for j in (1..=c + 1).rev() {
            at_least[j] = at_least[j + 1] + counts[j];
        }
        let jumps = (1..=c)
            .filter_map(|j| {
                let ratio = at_least[j] / at_least[j + 1];
                (ratio > 1).then(|| Jump { index: j as u32, width: exact_log(ratio, self.p).unwrap_or(0) })
            })
            .collect();
        JumpProfile { order: h.order(), jumps }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Jump {
    pub index: u32,
    pub width: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JumpProfile {
    pub order: usize,
    pub jumps: Vec<Jump>,
}

impl JumpProfile {
    pub fn indices(&self) -> Vec<u32> {
        self.jumps.iter().map(|j| j.index).collect()
    }

    pub fn total_width(&self) -> u32 {
        self.jumps.iter().map(|j| j.width).sum()
    }
}

/// A minimal generating set: generators of `G` whose images form a basis of `G/Φ(G)`.
pub fn minimal_generators(g: &GroupTable, s: &SeriesData) -> Vec<Elem> {
    let mut cur = s.frattini.clone();
    let mut out = Vec::new();
    for &x in g.gens() {
        if !cur.contains(x) {
            out.push(x);
            cur = g.join_elements(&cur, &[x]);
        }
    }
    out
}
