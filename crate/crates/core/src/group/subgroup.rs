use fixedbitset::FixedBitSet;

use super::{Elem, GroupTable};

/// A subgroup stored as its sorted member list plus a generating set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<Elem>,
    gens: Vec<Elem>,
}

impl Subgroup {
    pub(crate) fn from_parts(mut members: Vec<Elem>, gens: Vec<Elem>) -> Self {
        members.sort_unstable();
        Self { members, gens }
    }

    pub fn trivial() -> Self {
        Self { members: vec![0], gens: Vec::new() }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.len() <= other.members.len() && self.members.iter().all(|&x| other.contains(x))
    }

    pub fn bitset(&self, n: usize) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(n);
        for &x in &self.members {
            b.insert(x as usize);
        }
        b
    }

    /// Same subgroup, generators replaced.
    pub fn with_gens(mut self, gens: Vec<Elem>) -> Self {
        self.gens = gens;
        self
    }
}

impl GroupTable {
    pub fn whole(&self) -> Subgroup {
        Subgroup { members: self.elements().collect(), gens: self.gens().to_vec() }
    }

    /// `⟨gens⟩`.
    pub fn generated(&self, gens: &[Elem]) -> Subgroup {
        self.extend_closure(vec![0], gens)
    }

    /// `⟨H, extra⟩`.
    pub fn join_elements(&self, h: &Subgroup, extra: &[Elem]) -> Subgroup {
        let extra: Vec<Elem> = extra.iter().copied().filter(|&x| !h.contains(x)).collect();
        if extra.is_empty() {
            return h.clone();
        }
        let mut gens = h.gens.clone();
        gens.extend_from_slice(&extra);
        self.extend_closure_from(h.members.clone(), &gens, h.gens.len())
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        if a.order() >= b.order() {
            self.join_elements(a, &b.gens)
        } else {
            self.join_elements(b, &a.gens)
        }
    }

    /// Close `start` (already closed under `gens[..old]`, when `old > 0`) under all of `gens`.
    fn extend_closure(&self, start: Vec<Elem>, gens: &[Elem]) -> Subgroup {
        self.extend_closure_from(start, gens, 0)
    }

    fn extend_closure_from(&self, start: Vec<Elem>, gens: &[Elem], old: usize) -> Subgroup {
        let mut uniq: Vec<Elem> = Vec::new();
        for &g in gens {
            if g != 0 && !uniq.contains(&g) {
                uniq.push(g);
            }
        }
        let old = uniq.iter().take_while(|g| gens[..old].contains(g)).count();
        let mut mark = FixedBitSet::with_capacity(self.order());
        for &x in &start {
            mark.insert(x as usize);
        }
        let initial = start.len();
        let mut members = start;
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            // Old members are already closed under the old generators.
            let from = if head < initial { old } else { 0 };
            for &g in &uniq[from..] {
                let y = self.mul(x, g);
                if !mark.put(y as usize) {
                    members.push(y);
                }
            }
            head += 1;
        }
        Subgroup::from_parts(members, uniq)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let members: Vec<Elem> = a.members.iter().copied().filter(|&x| b.contains(x)).collect();
        let gens = self.small_generating_set(&members);
        Subgroup { members, gens }
    }

    /// Generators chosen greedily from a member list that is known to be a subgroup.
    pub fn small_generating_set(&self, members: &[Elem]) -> Vec<Elem> {
        let mut cur = Subgroup::trivial();
        let mut gens = Vec::new();
        for &x in members.iter().rev() {
            if cur.order() == members.len() {
                break;
            }
            if !cur.contains(x) {
                gens.push(x);
                cur = self.join_elements(&cur, &[x]);
            }
        }
        cur.gens = gens;
        cur.gens
    }

    pub fn conjugate(&self, h: &Subgroup, g: Elem) -> Subgroup {
        let members = h.members.iter().map(|&x| self.conj(g, x)).collect();
        let gens = h.gens.iter().map(|&x| self.conj(g, x)).collect();
        Subgroup::from_parts(members, gens)
    }

    pub fn is_normalized_by(&self, h: &Subgroup, g: Elem) -> bool {
        h.gens.iter().all(|&x| h.contains(self.conj(g, x)))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.gens().iter().all(|&g| self.is_normalized_by(h, g))
    }

    /// Smallest normal subgroup containing `s`.
    pub fn normal_closure(&self, s: &[Elem]) -> Subgroup {
        let mut cur = self.generated(s);
        loop {
            let mut extra = Vec::new();
            for &g in self.gens() {
                for &x in cur.gens.iter() {
                    let y = self.conj(g, x);
                    if !cur.contains(y) && !extra.contains(&y) {
                        extra.push(y);
                    }
                }
            }
            if extra.is_empty() {
                return cur;
            }
            cur = self.join_elements(&cur, &extra);
        }
    }

    /// `[H, K] = ⟨[h, k]⟩` for `H`, `K` normal in the group.
    pub fn commutator_subgroup(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let mut comms = Vec::new();
        for &a in &h.gens {
            for &b in &k.gens {
                let c = self.commutator(a, b);
                if c != 0 && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// `⟨x^e : x ∈ H⟩`.
    pub fn power_subgroup(&self, h: &Subgroup, e: i64) -> Subgroup {
        let mut powers: Vec<Elem> = h.members.iter().map(|&x| self.pow(x, e)).collect();
        powers.sort_unstable();
        powers.dedup();
        let mut cur = Subgroup::trivial();
        for &y in &powers {
            if !cur.contains(y) {
                cur = self.join_elements(&cur, &[y]);
            }
        }
        cur
    }

    /// Set of `e`-th powers of elements of `H` (not necessarily a subgroup).
    pub fn power_set(&self, h: &Subgroup, e: i64) -> Vec<Elem> {
        let mut powers: Vec<Elem> = h.members.iter().map(|&x| self.pow(x, e)).collect();
        powers.sort_unstable();
        powers.dedup();
        powers
    }

    pub fn centralizer_of(&self, s: &[Elem]) -> Subgroup {
        let members: Vec<Elem> =
            self.elements().filter(|&x| s.iter().all(|&y| self.mul(x, y) == self.mul(y, x))).collect();
        let gens = self.small_generating_set(&members);
        Subgroup { members, gens }
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer_of(self.gens())
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let members: Vec<Elem> = self.elements().filter(|&g| self.is_normalized_by(h, g)).collect();
        let gens = self.small_generating_set(&members);
        Subgroup { members, gens }
    }

    pub fn is_abelian_subgroup(&self, h: &Subgroup) -> bool {
        h.gens.iter().enumerate().all(|(i, &a)| h.gens[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Whether every element of `H` is central in the group.
    pub fn is_central(&self, h: &Subgroup) -> bool {
        h.gens.iter().all(|&x| self.gens().iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
    }
}
