//! Intense automorphisms and the intensity of a finite p-group.
//!
//! An automorphism is intense when it maps every subgroup to a conjugate.
//! Intense automorphisms act on `G/Φ(G)` as scalars; the intensity is the
//! number of scalars `λ ∈ 𝔽_p^*` realized this way. The search fixes `λ` and
//! runs through every generator-image tuple `g_i ↦ g_i^λ φ_i` with `φ_i ∈ Φ(G)`.

mod automorphism;

use std::time::Instant;

use fixedbitset::FixedBitSet;
use serde::Serialize;

pub use automorphism::{Automorphism, GeneratorTree};

use crate::analysis::{minimal_generators, SeriesData};
use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::group::{Elem, GroupTable, LatticeConfig, SubgroupLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FrattiniScalar {
    Scalar(u32),
    NonScalar,
}

/// `λ` with `α(x) ≡ x^λ mod Φ(G)` for all `x`.
pub fn frattini_scalar(g: &GroupTable, s: &SeriesData, alpha: &Automorphism) -> FrattiniScalar {
    if s.frattini.order() == g.order() {
        return FrattiniScalar::Scalar(1);
    }
    let p = s.p;
    (1..p)
        .find(|&l| {
            g.gens().iter().all(|&x| {
                let d = g.mul(alpha.apply(x), g.pow(x, -(l as i64)));
                s.frattini.contains(d)
            })
        })
        .map_or(FrattiniScalar::NonScalar, FrattiniScalar::Scalar)
}

/// Whether `α(H)` is conjugate to `H` for every subgroup `H`.
pub fn is_intense(lattice: &SubgroupLattice, alpha: &Automorphism) -> bool {
    is_intense_perm(lattice, alpha.perm())
}

fn is_intense_perm(lattice: &SubgroupLattice, perm: &[Elem]) -> bool {
    let mut buf = Vec::new();
    lattice.classes().iter().all(|class| {
        let h = lattice.get(class[0]);
        buf.clear();
        buf.extend(h.members().iter().map(|&x| perm[x as usize]));
        buf.sort_unstable();
        lattice.find(&buf).is_some_and(|id| lattice.class_of(id) == lattice.class_of(class[0]))
    })
}

#[derive(Clone, Copy, Debug)]
pub struct IntensityConfig {
    /// Upper bound on `|Φ(G)|^d` per scalar.
    pub budget_candidates: u64,
    pub mode: ExecMode,
    pub lattice: LatticeConfig,
}

impl Default for IntensityConfig {
    fn default() -> Self {
        Self { budget_candidates: 100_000_000, mode: ExecMode::default(), lattice: LatticeConfig::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub scalar: u32,
    /// Position of the tuple in the lexicographic enumeration.
    pub candidate_index: u64,
    pub generators: Vec<Elem>,
    pub images: Vec<Elem>,
    /// Each generator and image as a word in the group's defining generators.
    pub generator_words: Vec<Vec<usize>>,
    pub image_words: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntensityReport {
    pub order: usize,
    pub p: u32,
    pub rank: u32,
    pub frattini_order: usize,
    pub subgroup_count: usize,
    pub subgroup_classes: usize,
    pub candidates_per_scalar: u64,
    pub realized_scalars: Vec<u32>,
    pub intensity: u32,
    pub witnesses: Vec<Witness>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

/// Everything the per-scalar search needs, computed once.
pub struct IntensitySearch<'a> {
    g: &'a GroupTable,
    series: SeriesData,
    lattice: SubgroupLattice,
    tree: GeneratorTree,
    frattini: Vec<Elem>,
}

impl<'a> IntensitySearch<'a> {
    pub fn new(g: &'a GroupTable, cfg: &IntensityConfig) -> Result<Self> {
        let series = SeriesData::compute(g)?;
        let lattice = SubgroupLattice::build(g, &cfg.lattice)?;
        let gens = minimal_generators(g, &series);
        let tree = GeneratorTree::new(g, &gens)?;
        let frattini = series.frattini.members().to_vec();
        Ok(Self { g, series, lattice, tree, frattini })
    }

    pub fn series(&self) -> &SeriesData {
        &self.series
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn tree(&self) -> &GeneratorTree {
        &self.tree
    }

    pub fn candidate_count(&self) -> u64 {
        (self.frattini.len() as u64).saturating_pow(self.tree.gens().len() as u32)
    }

    /// Lexicographically first intense automorphism acting as `λ` on `G/Φ(G)`.
    pub fn search_scalar(&self, lambda: u32, mode: ExecMode) -> Option<(u64, Automorphism)> {
        let g = self.g;
        let gens = self.tree.gens();
        let d = gens.len();
        let f = &self.frattini;
        // Prefilter: image orders must match generator orders.
        let allowed: Vec<Vec<Elem>> = gens
            .iter()
            .map(|&x| {
                let base = g.pow(x, lambda as i64);
                f.iter().map(|&phi| g.mul(base, phi)).filter(|&y| g.element_order(y) == g.element_order(x)).collect()
            })
            .collect();
        let total = allowed.iter().try_fold(1u64, |acc, v| acc.checked_mul(v.len() as u64))?;
        let found = exec::find_map_first(
            mode,
            total,
            || (Vec::with_capacity(d), Vec::new(), FixedBitSet::new()),
            |(images, perm, seen), idx| {
                images.clear();
                let mut rest = idx;
                let mut digits = vec![0usize; d];
                for i in (0..d).rev() {
                    let r = allowed[i].len() as u64;
                    digits[i] = (rest % r) as usize;
                    rest /= r;
                }
                images.extend(digits.iter().enumerate().map(|(i, &k)| allowed[i][k]));
                self.tree.extend_into(g, images, perm, seen).ok()?;
                is_intense_perm(&self.lattice, perm).then(|| (idx, images.clone(), perm.clone()))
            },
        );
        found.map(|(idx, images, perm)| (idx, Automorphism::from_parts(gens.to_vec(), images, perm)))
    }

    pub fn run(&self, cfg: &IntensityConfig) -> Result<IntensityReport> {
        let start = Instant::now();
        let g = self.g;
        let p = self.series.p;
        let candidates = self.candidate_count();
        if candidates > cfg.budget_candidates {
            return Err(Error::CapacityExceeded {
                what: "intensity candidates per scalar".into(),
                bound: cfg.budget_candidates,
            });
        }
        // With G = Φ(G) every automorphism acts on the trivial space as 1.
        let scalars: Vec<u32> = if p == 0 || self.tree.gens().is_empty() { vec![1] } else { (1..p).collect() };
        let mut realized = Vec::new();
        let mut witnesses = Vec::new();
        for &lambda in &scalars {
            if let Some((idx, alpha)) = self.search_scalar(lambda, cfg.mode) {
                realized.push(lambda);
                witnesses.push(Witness {
                    scalar: lambda,
                    candidate_index: idx,
                    generators: alpha.gens().to_vec(),
                    images: alpha.images().to_vec(),
                    generator_words: alpha.gens().iter().map(|&x| g.word(x)).collect(),
                    image_words: alpha.images().iter().map(|&x| g.word(x)).collect(),
                });
            }
        }
        if p > 0 && !is_multiplicative_subgroup(&realized, p) {
            return Err(Error::Consistency(format!("realized scalars {realized:?} are not a subgroup")));
        }
        Ok(IntensityReport {
            order: g.order(),
            p,
            rank: self.tree.gens().len() as u32,
            frattini_order: self.frattini.len(),
            subgroup_count: self.lattice.len(),
            subgroup_classes: self.lattice.classes().len(),
            candidates_per_scalar: candidates,
            intensity: realized.len() as u32,
            realized_scalars: realized,
            witnesses,
            elapsed_ms: start.elapsed().as_millis(),
        })
    }

    /// Rebuild the witness for a scalar as an [`Automorphism`].
    pub fn witness_automorphism(&self, w: &Witness) -> Result<Automorphism> {
        Automorphism::from_images_on(self.g, &self.tree, &w.images)
    }
}

/// Intensity of `G` with witnesses.
pub fn intensity(g: &GroupTable, cfg: &IntensityConfig) -> Result<IntensityReport> {
    IntensitySearch::new(g, cfg)?.run(cfg)
}

fn is_multiplicative_subgroup(set: &[u32], p: u32) -> bool {
    set.contains(&1)
        && set.iter().all(|&a| set.iter().all(|&b| set.contains(&((a as u64 * b as u64 % p as u64) as u32))))
}

/// Scalars of all intense automorphisms, from an unrestricted scan of every
/// generator-image tuple. Exponential in the rank; for small groups only.
pub fn brute_force_scalars(g: &GroupTable, lattice: &SubgroupLattice, s: &SeriesData) -> Result<Vec<u32>> {
    let gens = minimal_generators(g, s);
    let tree = GeneratorTree::new(g, &gens)?;
    let n = g.order() as u64;
    let total = n
        .checked_pow(gens.len() as u32)
        .filter(|&t| t <= 50_000_000)
        .ok_or_else(|| Error::CapacityExceeded { what: "brute-force tuples".into(), bound: 50_000_000 })?;
    let mut scalars = Vec::new();
    let mut perm = Vec::new();
    let mut seen = FixedBitSet::new();
    let mut images = vec![0; gens.len()];
    for idx in 0..total {
        let mut rest = idx;
        for slot in images.iter_mut().rev() {
            *slot = (rest % n) as Elem;
            rest /= n;
        }
        if tree.extend_into(g, &images, &mut perm, &mut seen).is_err() {
            continue;
        }
        if !is_intense_perm(lattice, &perm) {
            continue;
        }
        let alpha = Automorphism::from_parts(gens.clone(), images.clone(), perm.clone());
        match frattini_scalar(g, s, &alpha) {
            FrattiniScalar::Scalar(l) => {
                if !scalars.contains(&l) {
                    scalars.push(l);
                }
            }
            FrattiniScalar::NonScalar => {
                return Err(Error::Consistency("intense automorphism that is not scalar".into()));
            }
        }
    }
    scalars.sort_unstable();
    Ok(scalars)
}

/// `α` induces `x ↦ x^{(−1)^i}` on every `G_i/G_{i+1}`.
pub fn minus_one_powers_check(
    g: &GroupTable,
    s: &SeriesData,
    lattice: &SubgroupLattice,
    alpha: &Automorphism,
) -> Result<bool> {
    if alpha.order() != 2 {
        return Err(Error::Precondition("automorphism must have order 2".into()));
    }
    if s.class() < 3 {
        return Err(Error::Precondition("class must be at least 3".into()));
    }
    if !is_intense(lattice, alpha) {
        return Err(Error::Precondition("automorphism must be intense".into()));
    }
    Ok((1..=s.class()).all(|i| {
        let next = s.term(i + 1);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        s.term(i).members().iter().all(|&x| {
            let d = g.mul(alpha.apply(x), g.pow(x, -sign));
            next.contains(d)
        })
    }))
}

/// Whether `α` stabilizes every normal subgroup.
pub fn fixes_normal_subgroups(lattice: &SubgroupLattice, alpha: &Automorphism) -> bool {
    lattice.normal_subgroups().iter().all(|&id| alpha.stabilizes(lattice.get(id)))
}
