//! Finite groups interned from generators.
//!
//! A [`GroupTable`] is produced by breadth-first closure of a seed list inside
//! some ambient monoid (quaternions, matrices, tuples, cosets...). Elements
//! are then addressed by dense indices `0..n`, with `0` the identity.

mod lattice;
mod quotient;
pub mod snapshot;
mod subgroup;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

pub use lattice::{all_subgroups, subgroups_by_join_closure, LatticeConfig, SubgroupLattice};
pub use quotient::{QuotientAmbient, QuotientTable};
pub use subgroup::Subgroup;

/// A monoid whose elements are packed into `u64` keys.
pub trait Ambient: Send + Sync + fmt::Debug {
    fn identity(&self) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;
    fn inv(&self, a: u64) -> u64;

    fn format(&self, key: u64) -> String {
        format!("{key:#x}")
    }
}

/// Index of an element of a [`GroupTable`].
pub type Elem = u32;

const NO_GEN: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
pub struct ClosureConfig {
    /// Abort with `CapacityExceeded` past this many elements.
    pub max_order: u64,
    /// Materialize the full multiplication table up to this order.
    pub table_threshold: usize,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        Self { max_order: 2_000_000, table_threshold: 4096 }
    }
}

pub struct GroupTable {
    keys: Vec<u64>,
    lookup: FxHashMap<u64, Elem>,
    gens: Vec<Elem>,
    parent: Vec<(Elem, u32)>,
    inv: Vec<Elem>,
    right_gen: Vec<Elem>,
    table: Option<Vec<Elem>>,
    ambient: Arc<dyn Ambient>,
    prime: Option<u32>,
    orders: OnceLock<Vec<u32>>,
    label: String,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("label", &self.label)
            .field("order", &self.order())
            .field("gens", &self.gens)
            .finish()
    }
}

/// Smallest prime `p` with `n = p^k`, if any.
pub fn prime_of_power(n: usize) -> Option<u32> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p as u32)
}

/// `log_p(n)` when `n` is an exact power of `p`.
pub fn exact_log(n: usize, p: u32) -> Option<u32> {
    let mut m = n;
    let mut k = 0;
    while m > 1 {
        if !m.is_multiple_of(p as usize) {
            return None;
        }
        m /= p as usize;
        k += 1;
    }
    (m == 1).then_some(k)
}

impl GroupTable {
    /// Breadth-first closure of `seeds` inside `ambient`.
    ///
    /// Indexing is deterministic: the identity is `0`, then elements appear in
    /// the order they are reached by right-multiplying by the seeds in order.
    pub fn closure(ambient: Arc<dyn Ambient>, seeds: &[u64], cfg: &ClosureConfig) -> Result<Self> {
        let id = ambient.identity();
        let g = seeds.len();
        let mut keys = vec![id];
        let mut lookup = FxHashMap::default();
        lookup.insert(id, 0);
        let mut parent = vec![(0, NO_GEN)];
        let mut right_gen = Vec::new();
        let mut head = 0;
        while head < keys.len() {
            let x = keys[head];
            for (s, &seed) in seeds.iter().enumerate() {
                let y = ambient.mul(x, seed);
                let next = keys.len() as Elem;
                let idx = *lookup.entry(y).or_insert_with(|| {
                    keys.push(y);
                    parent.push((head as Elem, s as u32));
                    next
                });
                right_gen.push(idx);
            }
            if keys.len() as u64 > cfg.max_order {
                return Err(Error::CapacityExceeded { what: "group order".into(), bound: cfg.max_order });
            }
            head += 1;
        }
        let n = keys.len();
        let gens = seeds.iter().map(|k| lookup[k]).collect();
        let inv = keys
            .iter()
            .map(|&k| {
                lookup
                    .get(&ambient.inv(k))
                    .copied()
                    .ok_or_else(|| Error::Consistency("ambient inverse left the closure".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let table = (n <= cfg.table_threshold).then(|| {
            let mut t = vec![0 as Elem; n * n];
            for x in 0..n {
                let row = &mut t[x * n..(x + 1) * n];
                row[0] = x as Elem;
                for y in 1..n {
                    let (py, s) = parent[y];
                    row[y] = right_gen[row[py as usize] as usize * g + s as usize];
                }
            }
            t
        });
        Ok(Self {
            keys,
            lookup,
            gens,
            parent,
            inv,
            right_gen,
            table,
            ambient,
            prime: prime_of_power(n),
            orders: OnceLock::new(),
            label: String::new(),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Record the prime for groups whose order does not determine it (the trivial group).
    pub fn with_prime(mut self, p: u32) -> Self {
        if self.prime.is_none() || self.prime == Some(p) {
            self.prime = Some(p);
        }
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn prime(&self) -> Option<u32> {
        self.prime
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn ambient(&self) -> &Arc<dyn Ambient> {
        &self.ambient
    }

    pub fn key(&self, x: Elem) -> u64 {
        self.keys[x as usize]
    }

    pub fn index_of(&self, key: u64) -> Option<Elem> {
        self.lookup.get(&key).copied()
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    pub(crate) fn raw_table(&self) -> Option<&[Elem]> {
        self.table.as_deref()
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = Elem> {
        0..self.order() as Elem
    }

    /// `(predecessor, generator position)` recorded during closure.
    pub fn parent(&self, x: Elem) -> Option<(Elem, usize)> {
        let (p, s) = self.parent[x as usize];
        (s != NO_GEN).then_some((p, s as usize))
    }

    /// Generator positions whose product, left to right, equals `x`.
    pub fn word(&self, x: Elem) -> Vec<usize> {
        let mut w = Vec::new();
        let mut cur = x;
        while let Some((p, s)) = self.parent(cur) {
            w.push(s);
            cur = p;
        }
        w.reverse();
        w
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match &self.table {
            Some(t) => t[x as usize * self.order() + y as usize],
            None => self.lookup[&self.ambient.mul(self.keys[x as usize], self.keys[y as usize])],
        }
    }

    /// `x · gens[s]`, always a table lookup.
    #[inline]
    pub fn mul_gen(&self, x: Elem, s: usize) -> Elem {
        self.right_gen[x as usize * self.gens.len() + s]
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inv[x as usize]
    }

    pub fn pow(&self, x: Elem, e: i64) -> Elem {
        let mut base = if e < 0 { self.inv(x) } else { x };
        let mut e = e.unsigned_abs();
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`.
    #[inline]
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(xy, self.inv(yx))
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, x: Elem) -> u32 {
        self.orders()[x as usize]
    }

    /// Element orders, computed on first use.
    pub fn orders(&self) -> &[u32] {
        self.orders.get_or_init(|| match self.prime {
            Some(p) => {
                let n = self.order();
                let mut ord = vec![0u32; n];
                ord[0] = 1;
                for x in 0..n as Elem {
                    let mut chain = vec![x];
                    let mut cur = x;
                    while ord[cur as usize] == 0 {
                        cur = self.pow(cur, p as i64);
                        chain.push(cur);
                    }
                    let mut o = ord[cur as usize];
                    chain.pop();
                    while let Some(y) = chain.pop() {
                        o *= p;
                        ord[y as usize] = o;
                    }
                }
                ord
            }
            None => self
                .elements()
                .map(|x| {
                    let mut k = 1;
                    let mut cur = x;
                    while cur != 0 {
                        cur = self.mul(cur, x);
                        k += 1;
                    }
                    k
                })
                .collect(),
        })
    }

    pub fn exponent(&self) -> u32 {
        self.orders().iter().copied().fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, &a)| self.gens[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sound generator criterion: `(x·y)·s = x·(y·s)` for all `x, y` and generators `s`
    /// reduces to consistency of right-multiplication by generators with `mul`.
    pub fn check_generator_consistency(&self) -> bool {
        self.elements().all(|x| self.gens.iter().enumerate().all(|(s, &g)| self.mul(x, g) == self.mul_gen(x, s)))
            && self.elements().all(|x| self.mul(x, self.inv(x)) == 0 && self.mul(self.inv(x), x) == 0)
    }

    /// Associativity on `samples` random triples (deterministic seed).
    pub fn check_associativity_sampled(&self, samples: usize, seed: u64) -> bool {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = self.order() as Elem;
        (0..samples).all(|_| {
            let (x, y, z) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
            self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z))
        })
    }

    pub fn format_element(&self, x: Elem) -> String {
        self.ambient.format(self.key(x))
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

/// Ambient given by an explicit multiplication table, keys are indices.
#[derive(Debug)]
pub struct TableAmbient {
    n: usize,
    table: Vec<Elem>,
    inv: Vec<Elem>,
}

impl TableAmbient {
    pub fn new(n: usize, table: Vec<Elem>, inv: Vec<Elem>) -> Result<Self> {
        if table.len() != n * n || inv.len() != n || n == 0 {
            return Err(Error::Snapshot("table dimensions do not match order".into()));
        }
        if table.iter().chain(inv.iter()).any(|&x| x as usize >= n) {
            return Err(Error::Snapshot("table entry out of range".into()));
        }
        Ok(Self { n, table, inv })
    }
}

impl Ambient for TableAmbient {
    fn identity(&self) -> u64 {
        0
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        self.table[a as usize * self.n + b as usize] as u64
    }

    fn inv(&self, a: u64) -> u64 {
        self.inv[a as usize] as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug)]
    struct Cyclic(u64);

    impl Ambient for Cyclic {
        fn identity(&self) -> u64 {
            0
        }
        fn mul(&self, a: u64, b: u64) -> u64 {
            (a + b) % self.0
        }
        fn inv(&self, a: u64) -> u64 {
            (self.0 - a) % self.0
        }
    }

    #[test]
    fn empty_seed_gives_trivial_group() {
        let g = GroupTable::closure(Arc::new(Cyclic(7)), &[], &ClosureConfig::default()).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.prime(), None);
        assert_eq!(g.with_prime(3).prime(), Some(3));
    }

    #[test]
    fn cyclic_closure_and_words() {
        let g = GroupTable::closure(Arc::new(Cyclic(25)), &[1], &ClosureConfig::default()).unwrap();
        assert_eq!(g.order(), 25);
        assert_eq!(g.prime(), Some(5));
        assert_eq!(g.exponent(), 25);
        for x in g.elements() {
            assert_eq!(g.word(x).len() as u64, g.key(x));
            assert_eq!(g.pow(x, 25), 0);
            assert_eq!(g.commutator(x, x), 0);
        }
        assert!(g.check_generator_consistency());
        assert!(g.check_associativity_sampled(1000, 7));
    }

    #[test]
    fn capacity_is_enforced() {
        let cfg = ClosureConfig { max_order: 10, ..Default::default() };
        let err = GroupTable::closure(Arc::new(Cyclic(25)), &[1], &cfg).unwrap_err();
        assert!(matches!(err, Error::CapacityExceeded { .. }));
    }

    #[test]
    fn table_and_hash_paths_agree() {
        let a = GroupTable::closure(Arc::new(Cyclic(49)), &[3, 5], &ClosureConfig::default()).unwrap();
        let cfg = ClosureConfig { table_threshold: 0, ..Default::default() };
        let b = GroupTable::closure(Arc::new(Cyclic(49)), &[3, 5], &cfg).unwrap();
        assert!(a.has_table() && !b.has_table());
        for x in a.elements() {
            for y in a.elements() {
                assert_eq!(a.mul(x, y), b.mul(x, y));
            }
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_of_power(729), Some(3));
        assert_eq!(prime_of_power(12), None);
        assert_eq!(exact_log(3125, 5), Some(5));
        assert_eq!(exact_log(30, 5), None);
    }
}
