use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rustc_hash::FxHashMap;
use serde::Serialize;

use super::series::SeriesData;
use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::group::{Elem, GroupTable, Subgroup};

/// Groups up to this order are tested on all pairs.
pub const EXHAUSTIVE_PAIR_LIMIT: usize = 729;
pub const SAMPLED_PAIRS: usize = 10_000;

#[derive(Clone, Copy, Debug)]
pub struct PairPolicy {
    pub exhaustive_limit: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for PairPolicy {
    fn default() -> Self {
        Self { exhaustive_limit: EXHAUSTIVE_PAIR_LIMIT, samples: SAMPLED_PAIRS, seed: 0x5eed }
    }
}

/// The pairs a property check runs over: all pairs for small groups, otherwise
/// all generator pairs followed by a seeded sample.
pub fn pair_list(g: &GroupTable, policy: &PairPolicy) -> (Vec<(Elem, Elem)>, bool) {
    let n = g.order();
    if n <= policy.exhaustive_limit {
        let all = (0..n as Elem).flat_map(|x| (0..n as Elem).map(move |y| (x, y))).collect();
        return (all, true);
    }
    let mut pairs: Vec<(Elem, Elem)> = g.gens().iter().flat_map(|&x| g.gens().iter().map(move |&y| (x, y))).collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(policy.seed);
    for _ in 0..policy.samples {
        pairs.push((rng.random_range(0..n as Elem), rng.random_range(0..n as Elem)));
    }
    (pairs, false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub regular: bool,
    pub exhaustive: bool,
    pub pairs_checked: u64,
    pub counterexample: Option<(Elem, Elem)>,
}

/// `[H, H]^p` for `H = ⟨x, y⟩`, memoized per worker by the members of `H`.
fn derived_power(
    g: &GroupTable,
    p: u32,
    x: Elem,
    y: Elem,
    memo: &mut FxHashMap<Vec<Elem>, FixedBitSet>,
) -> FixedBitSet {
    let h = g.generated(&[x, y]);
    if let Some(b) = memo.get(h.members()) {
        return b.clone();
    }
    let d = normal_closure_in(g, &h, &[g.commutator(x, y)]);
    let dp = g.power_subgroup(&d, p as i64);
    let bits = dp.bitset(g.order());
    memo.insert(h.members().to_vec(), bits.clone());
    bits
}

fn normal_closure_in(g: &GroupTable, h: &Subgroup, s: &[Elem]) -> Subgroup {
    super::predicates::normal_closure_within(g, h, s)
}

/// `(xy)^p = x^p y^p γ` with `γ ∈ [⟨x,y⟩, ⟨x,y⟩]^p` for the pairs in `pair_list`.
pub fn is_regular(g: &GroupTable, s: &SeriesData, policy: &PairPolicy, mode: ExecMode) -> RegularityReport {
    let p = s.p;
    let (pairs, exhaustive) = pair_list(g, policy);
    // Pairs spanning G/Φ(G) generate G; their γ lies in the precomputed [G, G]^p.
    let whole_bits = g.power_subgroup(s.term(2), p as i64).bitset(g.order());
    let frattini_rep = g.coset_reps(&s.frattini);
    let top = g.order() / s.frattini.order();
    let spans_top = |x: Elem, y: Elem| {
        if top > (p as usize).pow(2) {
            return false;
        }
        let mut reps: Vec<Elem> = Vec::with_capacity(top);
        let mut xi = 0;
        for _ in 0..p {
            let mut cur = xi;
            for _ in 0..p {
                reps.push(frattini_rep[cur as usize]);
                cur = g.mul(cur, y);
            }
            xi = g.mul(xi, x);
        }
        reps.sort_unstable();
        reps.dedup();
        reps.len() == top
    };
    let fail = exec::find_map_first(mode, pairs.len() as u64, FxHashMap::default, |memo, i| {
        let (x, y) = pairs[i as usize];
        let lhs = g.pow(g.mul(x, y), p as i64);
        let rhs = g.mul(g.pow(x, p as i64), g.pow(y, p as i64));
        if lhs == rhs {
            return None;
        }
        let gamma = g.mul(g.inv(rhs), lhs) as usize;
        let ok =
            if spans_top(x, y) { whole_bits.contains(gamma) } else { derived_power(g, p, x, y, memo).contains(gamma) };
        (!ok).then_some((x, y))
    });
    RegularityReport { regular: fail.is_none(), exhaustive, pairs_checked: pairs.len() as u64, counterexample: fail }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerLevel {
    pub k: u32,
    /// `G^{p^k}` equals the set of `p^k`-th powers.
    pub powers_form_subgroup: bool,
    /// `|{x : x^{p^k} = 1}| = |G : G^{p^k}|`.
    pub omega_matches_index: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerAbelianReport {
    pub levels: Vec<PowerLevel>,
    pub holds: bool,
}

pub fn power_abelian_report(g: &GroupTable, s: &SeriesData) -> PowerAbelianReport {
    let whole = g.whole();
    let exponent = g.exponent() as i64;
    let mut levels = Vec::new();
    let mut e = 1i64;
    let mut k = 0;
    while e < exponent {
        e *= s.p as i64;
        k += 1;
        let set = g.power_set(&whole, e);
        let sub = g.power_subgroup(&whole, e);
        let omega = g.elements().filter(|&x| g.pow(x, e) == 0).count();
        levels.push(PowerLevel {
            k,
            powers_form_subgroup: set.as_slice() == sub.members(),
            omega_matches_index: omega * sub.order() == g.order(),
        });
    }
    let holds = levels.iter().all(|l| l.powers_form_subgroup && l.omega_matches_index);
    PowerAbelianReport { levels, holds }
}

/// `(xy)³ = x³ y³ [xy⁻¹, [x, y]]` on all pairs; requires class ≤ 3 and `G_2` of exponent 3.
pub fn cubing_identity(g: &GroupTable, s: &SeriesData, mode: ExecMode) -> Result<bool> {
    if s.p != 3 || s.class() > 3 {
        return Err(Error::Precondition("cubing identity needs a 3-group of class at most 3".into()));
    }
    if s.term(2).members().iter().any(|&x| g.pow(x, 3) != 0) {
        return Err(Error::Precondition("G_2 must have exponent 3".into()));
    }
    let n = g.order() as u64;
    Ok(exec::all_range(mode, n * n, |i| {
        let (x, y) = ((i / n) as Elem, (i % n) as Elem);
        let lhs = g.pow(g.mul(x, y), 3);
        let c = g.commutator(g.mul(x, g.inv(y)), g.commutator(x, y));
        let rhs = g.mul(g.mul(g.pow(x, 3), g.pow(y, 3)), c);
        lhs == rhs
    }))
}

/// `(xy)^p ≡ x^p y^p` modulo `G_2^p G_p`.
pub fn power_congruence(g: &GroupTable, s: &SeriesData, policy: &PairPolicy, mode: ExecMode) -> (bool, bool) {
    let p = s.p as i64;
    let g2p = g.power_subgroup(s.term(2), p);
    let modulus = g.join(&g2p, s.term(s.p as usize));
    let bits = modulus.bitset(g.order());
    let (pairs, exhaustive) = pair_list(g, policy);
    let ok = exec::all_range(mode, pairs.len() as u64, |i| {
        let (x, y) = pairs[i as usize];
        let lhs = g.pow(g.mul(x, y), p);
        let rhs = g.mul(g.pow(x, p), g.pow(y, p));
        bits.contains(g.mul(g.inv(rhs), lhs) as usize)
    });
    (ok, exhaustive)
}

/// `{x^{p^k} : x ∈ G_i} = G_{2k+i}` for all `i, k` with `2k + i ≤ class + 1`.
pub fn obelisk_power_law(g: &GroupTable, s: &SeriesData) -> bool {
    let c = s.class();
    (1..=c).all(|i| {
        let mut k = 1;
        let mut ok = true;
        while 2 * k + i <= c + 1 {
            let set = g.power_set(s.term(i), (s.p as i64).pow(k as u32));
            ok &= set.as_slice() == s.term(2 * k + i).members();
            k += 1;
        }
        ok
    })
}

/// Every cyclic subgroup has jumps of a single parity, each of width 1.
pub fn cyclic_jumps_same_parity(g: &GroupTable, s: &SeriesData) -> bool {
    let mut seen = FixedBitSet::with_capacity(g.order());
    g.elements().all(|x| {
        if seen.contains(x as usize) {
            return true;
        }
        let h = g.generated(&[x]);
        for &y in h.members() {
            if g.generated(&[y]).order() == h.order() {
                seen.insert(y as usize);
            }
        }
        let prof = s.jump_profile(&h);
        let parity_ok = prof.jumps.windows(2).all(|w| (w[1].index - w[0].index) % 2 == 0);
        parity_ok && prof.jumps.iter().all(|j| j.width == 1)
    })
}

/// `Z(G) = G_c`.
pub fn center_is_last_term(g: &GroupTable, s: &SeriesData) -> bool {
    s.class() >= 1 && g.center().members() == s.term(s.class()).members()
}
