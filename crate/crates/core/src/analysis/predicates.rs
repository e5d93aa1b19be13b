use serde::Serialize;

use super::series::{minimal_generators, SeriesData};
use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable, Subgroup};

/// `G_2 ⊆ Z(G)` and `Z(G)` cyclic of order `p`.
pub fn is_extraspecial(g: &GroupTable, s: &SeriesData) -> bool {
    if g.order() == 1 {
        return false;
    }
    let z = g.center();
    z.order() == s.p as usize && s.term(2).is_subgroup_of(&z)
}

/// Whether `|G : G_2| = 9` and cubing induces a bijection `G/G_2 → G_3/G_4`.
pub fn is_kappa_group(g: &GroupTable, s: &SeriesData) -> bool {
    if s.p != 3 || g.order() / s.term(2).order() != 9 {
        return false;
    }
    if s.term(3).order() / s.term(4).order() != 9 {
        return false;
    }
    let rep2 = g.coset_reps(s.term(2));
    let rep4 = g.coset_reps(s.term(4));
    let mut image_of: rustc_hash::FxHashMap<Elem, Elem> = Default::default();
    for x in g.elements() {
        let c = g.pow(x, 3);
        if !s.in_term(c, 3) {
            return false;
        }
        let img = rep4[c as usize];
        match image_of.insert(rep2[x as usize], img) {
            Some(prev) if prev != img => return false,
            _ => {}
        }
    }
    let mut images: Vec<Elem> = image_of.into_values().collect();
    images.sort_unstable();
    images.dedup();
    images.len() == 9
}

fn require_large_prime(s: &SeriesData) -> Result<()> {
    if s.p <= 3 {
        return Err(Error::Precondition(format!("obelisk predicates need p > 3, got p = {}", s.p)));
    }
    Ok(())
}

/// Non-abelian, `|G : G_3| = p³` and `G_3 = G^p`.
pub fn is_obelisk(g: &GroupTable, s: &SeriesData) -> Result<bool> {
    require_large_prime(s)?;
    if s.class() < 2 {
        return Ok(false);
    }
    let g3 = s.term(3);
    if g.order() / g3.order() != (s.p as usize).pow(3) {
        return Ok(false);
    }
    let gp = g.power_subgroup(&g.whole(), s.p as i64);
    Ok(gp.members() == g3.members())
}

/// `Φ(M) = M^p [M, M]` for a subgroup `M`.
pub fn frattini_of(g: &GroupTable, m: &Subgroup, p: u32) -> Subgroup {
    let gens = m.gens();
    let mut s: Vec<Elem> = gens.iter().map(|&x| g.pow(x, p as i64)).collect();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            s.push(g.commutator(a, b));
        }
    }
    normal_closure_within(g, m, &s)
}

/// Smallest subgroup containing `s` that is normalized by `m`.
pub fn normal_closure_within(g: &GroupTable, m: &Subgroup, s: &[Elem]) -> Subgroup {
    let mut cur = g.generated(s);
    loop {
        let mut extra = Vec::new();
        for &h in m.gens() {
            for &x in cur.gens() {
                let y = g.conj(h, x);
                if !cur.contains(y) && !extra.contains(&y) {
                    extra.push(y);
                }
            }
        }
        if extra.is_empty() {
            return cur;
        }
        cur = g.join_elements(&cur, &extra);
    }
}

/// Representatives of the `p + 1` lines of a 2-dimensional `G/Φ(G)`: `a`, then `a^s b`.
pub fn line_representatives(g: &GroupTable, s: &SeriesData) -> Result<Vec<Elem>> {
    let gens = minimal_generators(g, s);
    let [a, b] = gens[..] else {
        return Err(Error::Precondition("lines need a 2-generated group".into()));
    };
    let mut reps = vec![a];
    let mut x = b;
    for _ in 0..s.p {
        reps.push(x);
        x = g.mul(a, x);
    }
    Ok(reps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineCheck {
    /// Representative `x` of the line `⟨x G_2⟩`.
    pub representative: Elem,
    /// `⟨x^p, [x, G_2], G_4⟩ = G_3`.
    pub lines_condition: bool,
    /// `Φ(⟨x, G_2⟩) = G_3`.
    pub frattini_condition: bool,
}

/// Both per-line conditions on every line of `G/G_2`, without a class restriction.
pub fn line_checks(g: &GroupTable, s: &SeriesData) -> Result<Vec<LineCheck>> {
    if !is_obelisk(g, s)? {
        return Err(Error::NotAnObelisk);
    }
    let (g2, g3, g4) = (s.term(2), s.term(3), s.term(4));
    line_representatives(g, s)?
        .into_iter()
        .map(|x| {
            let mut extra = vec![g.pow(x, s.p as i64)];
            extra.extend(g2.gens().iter().map(|&y| g.commutator(x, y)));
            let lines = g.join_elements(g4, &extra);
            let m = g.join_elements(g2, &[x]);
            let phi = frattini_of(g, &m, s.p);
            Ok(LineCheck {
                representative: x,
                lines_condition: lines.members() == g3.members(),
                frattini_condition: phi.members() == g3.members(),
            })
        })
        .collect()
}

/// `Φ(M) = G_3` for each of the `p + 1` maximal subgroups.
pub fn is_framed(g: &GroupTable, s: &SeriesData) -> Result<bool> {
    Ok(line_checks(g, s)?.iter().all(|c| c.frattini_condition))
}

/// The lines criterion; only meaningful in class at least 3.
pub fn lines_criterion(g: &GroupTable, s: &SeriesData) -> Result<bool> {
    if !is_obelisk(g, s)? {
        return Err(Error::NotAnObelisk);
    }
    if s.class() < 3 {
        return Err(Error::Precondition("lines criterion needs class at least 3".into()));
    }
    Ok(line_checks(g, s)?.iter().all(|c| c.lines_condition))
}

/// Whether `w_i w_{i+1} ≤ 2` for all consecutive widths.
pub fn consecutive_width_bound(s: &SeriesData) -> bool {
    s.widths.windows(2).all(|w| w[0] * w[1] <= 2)
}

/// Whether normal subgroups are exactly those squeezed between consecutive series terms.
pub fn normal_iff_squeezed(g: &GroupTable, s: &SeriesData, subgroups: &[Subgroup]) -> bool {
    subgroups.iter().all(|h| {
        let squeezed = (1..=s.class()).any(|i| s.term(i + 1).is_subgroup_of(h) && h.is_subgroup_of(s.term(i)));
        g.is_normal(h) == squeezed
    })
}
