//! Constructors for the concrete group families.

pub mod ambients;
mod spec;

use std::sync::Arc;

pub use ambients::{AbelianAmbient, HeisenbergAmbient, Mat2Ambient, ProductAmbient, QuatAmbient, SemidirectAmbient};
pub use spec::{ExponentFlag, GroupKind, GroupSpec};

use crate::analysis::lower_central_series;
use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::group::{ClosureConfig, GroupTable, QuotientTable};
use crate::ring::{is_prime, smallest_nonresidue, CoefficientRing, Mat2, Quaternion, QuaternionAlgebra};

#[derive(Clone, Copy, Debug)]
pub struct BuildConfig {
    pub closure: ClosureConfig,
    /// Run the exhaustive membership filter when `|1 + 𝔪|` is at most this.
    pub filter_limit: u64,
    pub mode: ExecMode,
}

impl Default for BuildConfig {
    fn default() -> Self {
        Self { closure: ClosureConfig::default(), filter_limit: 20_000_000, mode: ExecMode::default() }
    }
}

/// A constructed group plus how it was obtained.
#[derive(Debug, Clone)]
pub struct Constructed {
    pub spec: GroupSpec,
    pub group: Arc<GroupTable>,
    /// Set when the group is a quotient by a lower central series term.
    pub quotient: Option<Arc<QuotientTable>>,
    pub notes: Vec<String>,
}

pub fn build(spec: &GroupSpec, cfg: &BuildConfig) -> Result<Constructed> {
    let spec = spec.canonical()?;
    let mut notes = Vec::new();
    let (group, quotient) = match spec.kind {
        GroupKind::Abelian => {
            (Arc::new(build_abelian(spec.p.unwrap(), spec.type_.as_deref().unwrap_or(&[]), cfg)?), None)
        }
        GroupKind::Extraspecial => {
            (Arc::new(build_extraspecial(spec.p.unwrap(), spec.n.unwrap(), spec.exponent.unwrap(), cfg)?), None)
        }
        GroupKind::SemidirectCyclic => {
            (Arc::new(build_semidirect_cyclic(spec.n.unwrap(), spec.m.unwrap(), spec.u.unwrap(), cfg)?), None)
        }
        GroupKind::DirectProduct => {
            let factors = spec
                .factors
                .as_deref()
                .unwrap_or(&[])
                .iter()
                .map(|f| build(f, cfg).map(|c| c.group))
                .collect::<Result<Vec<_>>>()?;
            (Arc::new(direct_product(&factors, cfg)?), None)
        }
        GroupKind::Yo => (Arc::new(build_yo(cfg)?), None),
        GroupKind::SnDelta => {
            let (p, t, m) = (spec.p.unwrap(), spec.t.unwrap(), spec.precision.unwrap());
            let g = build_sn_delta(p, t, m, cfg, &mut notes)?;
            notes.push(format!(
                "precision {m} realizes the quotient by the term of index {} of the lower central series",
                2 * m
            ));
            lcs_quotient(g, spec.k, cfg)?
        }
        GroupKind::Sl2Triangle => {
            let g = build_sl2_triangle(spec.p.unwrap(), spec.precision.unwrap(), cfg)?;
            lcs_quotient(g, spec.k, cfg)?
        }
    };
    Ok(Constructed { spec, group, quotient, notes })
}

fn lcs_quotient(
    g: GroupTable,
    k: Option<u32>,
    cfg: &BuildConfig,
) -> Result<(Arc<GroupTable>, Option<Arc<QuotientTable>>)> {
    let g = Arc::new(g);
    let Some(k) = k else {
        return Ok((g, None));
    };
    let lcs = lower_central_series(&g)?;
    let term = lcs.get(k as usize - 1).cloned().unwrap_or_else(|| lcs.last().unwrap().clone());
    let q = Arc::new(QuotientTable::new(&g, &term, &cfg.closure)?);
    Ok((q.group().clone(), Some(q)))
}

fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    Ok(())
}

/// `⊕ ℤ/p^{a_i}`.
pub fn build_abelian(p: u32, exponents: &[u32], cfg: &BuildConfig) -> Result<GroupTable> {
    check_prime(p)?;
    if exponents.contains(&0) {
        return Err(Error::InvalidParameter("abelian type entries must be at least 1".into()));
    }
    let moduli: Vec<u64> = exponents
        .iter()
        .map(|&a| (p as u64).checked_pow(a).filter(|&m| m < 1 << 32))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidParameter("abelian type too large".into()))?;
    let total = moduli.iter().try_fold(1u64, |acc, &m| acc.checked_mul(m));
    if total.is_none_or(|t| t > cfg.closure.max_order) {
        return Err(Error::CapacityExceeded { what: "group order".into(), bound: cfg.closure.max_order });
    }
    let amb = AbelianAmbient::new(moduli);
    let seeds: Vec<u64> = (0..exponents.len()).map(|i| amb.unit(i)).collect();
    let g = GroupTable::closure(Arc::new(amb), &seeds, &cfg.closure)?;
    Ok(g.with_prime(p).with_label(format!("abelian {p}^{exponents:?}")))
}

/// Extraspecial of order `p^{2n+1}`: the Heisenberg-type group for exponent
/// `p`, and `ℤ/p² ⋊ ℤ/p` for exponent `p²` (only `n = 1`).
pub fn build_extraspecial(p: u32, n: u32, exponent: ExponentFlag, cfg: &BuildConfig) -> Result<GroupTable> {
    check_prime(p)?;
    if n == 0 {
        return Err(Error::InvalidParameter("extraspecial groups need n ≥ 1".into()));
    }
    match exponent {
        ExponentFlag::P => {
            let size = (p as u64).checked_pow(2 * n + 1).filter(|&s| s <= cfg.closure.max_order);
            if size.is_none() {
                return Err(Error::CapacityExceeded { what: "group order".into(), bound: cfg.closure.max_order });
            }
            let amb = HeisenbergAmbient { p: p as u64, n: n as usize };
            let zero = vec![0u64; n as usize];
            let mut seeds = Vec::new();
            for i in 0..n as usize {
                let mut e = zero.clone();
                e[i] = 1;
                seeds.push(amb.pack(0, &zero, &e));
            }
            for i in 0..n as usize {
                let mut e = zero.clone();
                e[i] = 1;
                seeds.push(amb.pack(0, &e, &zero));
            }
            let g = GroupTable::closure(Arc::new(amb), &seeds, &cfg.closure)?;
            Ok(g.with_label(format!("extraspecial {p}^{} exponent p", 2 * n + 1)))
        }
        ExponentFlag::P2 => {
            if n != 1 {
                return Err(Error::InvalidParameter("exponent p² is only built for n = 1".into()));
            }
            let g = build_semidirect_cyclic(p * p, p, 1 + p, cfg)?;
            Ok(g.with_label(format!("extraspecial {p}^3 exponent p^2")))
        }
    }
}

/// `ℤ/n ⋊ ℤ/m`, the generator of `ℤ/m` acting as multiplication by `u`.
pub fn build_semidirect_cyclic(n: u32, m: u32, u: u32, cfg: &BuildConfig) -> Result<GroupTable> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter("n and m must be positive".into()));
    }
    if n as u64 * m as u64 > cfg.closure.max_order {
        return Err(Error::CapacityExceeded { what: "group order".into(), bound: cfg.closure.max_order });
    }
    let (n64, u64_) = (n as u64, u as u64 % n as u64);
    let upow = (0..m).fold(1 % n64, |acc, _| acc * u64_ % n64);
    if upow != 1 % n64 {
        return Err(Error::Precondition(format!("{u}^{m} is not 1 modulo {n}")));
    }
    let amb = SemidirectAmbient { n: n64, m: m as u64, u: u64_ };
    let seeds = [1 % n64, if m > 1 { n64 } else { 0 }];
    let g = GroupTable::closure(Arc::new(amb), &seeds, &cfg.closure)?;
    Ok(g.with_label(format!("Z/{n} x| Z/{m} by {u}")))
}

pub fn direct_product(factors: &[Arc<GroupTable>], cfg: &BuildConfig) -> Result<GroupTable> {
    let total = factors.iter().try_fold(1u64, |acc, f| acc.checked_mul(f.order() as u64));
    if total.is_none_or(|t| t > cfg.closure.max_order) {
        return Err(Error::CapacityExceeded { what: "group order".into(), bound: cfg.closure.max_order });
    }
    let amb = ProductAmbient { factors: factors.to_vec() };
    let mut seeds = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        for &x in f.gens() {
            let mut parts = vec![0u32; factors.len()];
            parts[i] = x;
            seeds.push(amb.join(&parts));
        }
    }
    let primes: Vec<u32> = factors.iter().filter_map(|f| f.prime()).collect();
    let label = factors.iter().map(|f| f.label().to_owned()).collect::<Vec<_>>().join(" x ");
    let mut g = GroupTable::closure(Arc::new(amb), &seeds, &cfg.closure)?.with_label(label);
    if let Some(&p) = primes.first() {
        if primes.iter().all(|&q| q == p) && factors.iter().all(|f| f.order() == 1 || f.prime() == Some(p)) {
            g = g.with_prime(p);
        }
    }
    Ok(g)
}

/// The generators `a = 1 − ε + i`, `b = 1 − ε + j` of the norm-one group over `𝔽_3[ε]`.
pub fn yo_generators(alg: &QuaternionAlgebra) -> [Quaternion; 2] {
    let r = alg.ring;
    let c = r.dual(1, -1);
    [Quaternion([c, 1, 0, 0]), Quaternion([c, 0, 1, 0])]
}

/// Norm-one elements of `1 + 𝔪`, by exhaustive scan of `1 + 𝔪`.
pub fn norm_one_filter(alg: &QuaternionAlgebra, mode: ExecMode) -> Vec<u64> {
    let r = alg.ring;
    // 𝔪 is spanned coordinate-wise, so each coordinate ranges independently.
    let coord_choices: Vec<Vec<u32>> = (0..4)
        .map(|t| {
            r.elements()
                .filter(|&c| {
                    let mut q = Quaternion([0; 4]);
                    q.0[t] = c;
                    alg.in_ideal_power(q, 1)
                })
                .collect()
        })
        .collect();
    let sizes: Vec<u64> = coord_choices.iter().map(|c| c.len() as u64).collect();
    let total: u64 = sizes.iter().product();
    let chunk = 1u64 << 16;
    let chunks = total.div_ceil(chunk) as usize;
    let found: Vec<Vec<u64>> = exec::map_range(mode, chunks, |ci| {
        let mut out = Vec::new();
        let start = ci as u64 * chunk;
        for idx in start..(start + chunk).min(total) {
            let mut rest = idx;
            let mut q = Quaternion([0; 4]);
            for t in (0..4).rev() {
                q.0[t] = coord_choices[t][(rest % sizes[t]) as usize];
                rest /= sizes[t];
            }
            q.0[0] = r.add(q.0[0], 1);
            if alg.norm(q) == 1 {
                out.push(q.pack());
            }
        }
        out
    });
    found.into_iter().flatten().collect()
}

/// Size of `1 + 𝔪`.
pub fn one_plus_ideal_size(alg: &QuaternionAlgebra) -> u64 {
    (0..4)
        .map(|t| {
            alg.ring
                .elements()
                .filter(|&c| {
                    let mut q = Quaternion([0; 4]);
                    q.0[t] = c;
                    alg.in_ideal_power(q, 1)
                })
                .count() as u64
        })
        .product()
}

fn compare_with_filter(g: &GroupTable, filtered: &[u64]) -> Result<()> {
    if filtered.len() != g.order() || filtered.iter().any(|&k| g.index_of(k).is_none()) {
        return Err(Error::Consistency(format!(
            "closure has {} elements but the membership filter finds {}",
            g.order(),
            filtered.len()
        )));
    }
    Ok(())
}

/// The norm-one group in `1 + 𝔪` over `𝔽_3[ε]` with `i² = j² = ε`, of order 729.
pub fn build_yo(cfg: &BuildConfig) -> Result<GroupTable> {
    let alg = QuaternionAlgebra::yo();
    let seeds = yo_generators(&alg).map(|q| q.pack());
    let g = GroupTable::closure(Arc::new(QuatAmbient { alg }), &seeds, &cfg.closure)?;
    compare_with_filter(&g, &norm_one_filter(&alg, cfg.mode))?;
    Ok(g.with_label("Y"))
}

/// `x0 + v` of norm one with `x0 ≡ 1 mod p`, for a fixed direction `v ∈ 𝔪`.
fn norm_one_lift(alg: &QuaternionAlgebra, v: Quaternion) -> Option<Quaternion> {
    let r = alg.ring;
    let p = r.p();
    (0..r.size() / p).map(|s| 1 + s * p).find_map(|x0| {
        let q = alg.add(alg.scalar(x0), v);
        (alg.norm(q) == 1).then_some(q)
    })
}

/// `{x ∈ 1 + 𝔪 : x x̄ = 1}` in `Δ_p` modulo `p^M`, of order `p^{3M−1}`.
///
/// Seeds are norm-one lifts of `1 + j`, `1 + k` and `1 + p i`; the result is
/// compared with an exhaustive filter of `1 + 𝔪` when that is affordable, and
/// filter elements missing from the closure are added as extra seeds.
pub fn build_sn_delta(
    p: u32,
    t: u32,
    precision: u32,
    cfg: &BuildConfig,
    notes: &mut Vec<String>,
) -> Result<GroupTable> {
    if precision < 2 {
        return Err(Error::InvalidParameter("precision must be at least 2".into()));
    }
    let alg = QuaternionAlgebra::delta(p, t, precision)?;
    let pi = alg.scale(alg.ring.uniformizer(), alg.i());
    let mut seeds: Vec<u64> = [alg.j(), alg.k(), pi]
        .into_iter()
        .map(|v| {
            norm_one_lift(&alg, v)
                .map(|q| q.pack())
                .ok_or_else(|| Error::Consistency("no norm-one lift of a seed direction".into()))
        })
        .collect::<Result<_>>()?;
    let amb: Arc<QuatAmbient> = Arc::new(QuatAmbient { alg });
    let mut g = GroupTable::closure(amb.clone(), &seeds, &cfg.closure)?;
    let expected = (p as u64).pow(3 * precision - 1);
    if one_plus_ideal_size(&alg) <= cfg.filter_limit {
        let filtered = norm_one_filter(&alg, cfg.mode);
        for &k in &filtered {
            if g.order() == filtered.len() {
                break;
            }
            if g.index_of(k).is_none() {
                seeds.push(k);
                g = GroupTable::closure(amb.clone(), &seeds, &cfg.closure)?;
                notes.push("closure seeds were extended from the membership filter".into());
            }
        }
        compare_with_filter(&g, &filtered)?;
        notes.push(format!("membership filter agrees: {} elements", filtered.len()));
    } else {
        notes.push("membership filter skipped (too large); checked the order formula only".into());
    }
    if g.order() as u64 != expected {
        return Err(Error::Consistency(format!("order {} differs from p^(3M-1) = {expected}", g.order())));
    }
    Ok(g.with_label(format!("Sn(Delta_{p}) mod {p}^{precision}")))
}

/// Whether a matrix lies in `SL_2` and is upper unitriangular modulo `p`.
pub fn in_sl2_triangle(m: &Mat2, p: u32, modulus: u32) -> bool {
    let [a, _, c, d] = m.0;
    m.det(modulus) == 1 && a % p == 1 && d % p == 1 && c % p == 0
}

/// Closure of `B(1)`, `C(p)`, `D(1 + p)` in `SL_2(ℤ/p^M)`, of order `p^{3M−2}`.
pub fn build_sl2_triangle(p: u32, precision: u32, cfg: &BuildConfig) -> Result<GroupTable> {
    check_prime(p)?;
    if p <= 3 {
        return Err(Error::InvalidParameter(format!("p = {p} must exceed 3")));
    }
    if precision < 2 {
        return Err(Error::InvalidParameter("precision must be at least 2".into()));
    }
    let ring = CoefficientRing::integers_mod(p, precision)?;
    let q = ring.size();
    let unit = 1 + p;
    let unit_inv = ring.inv(unit).expect("1 + p is a unit");
    let seeds = [
        Mat2::new(q, [1, 1, 0, 1]),
        Mat2::new(q, [1, 0, p as i64, 1]),
        Mat2::new(q, [unit_inv as i64, 0, 0, unit as i64]),
    ]
    .map(|m| m.pack());
    let g = GroupTable::closure(Arc::new(Mat2Ambient { modulus: q }), &seeds, &cfg.closure)?;
    if let Some(x) = g.elements().find(|&x| !in_sl2_triangle(&Mat2::unpack(g.key(x)), p, q)) {
        return Err(Error::Consistency(format!("element {x} violates the membership condition")));
    }
    let expected = (p as u64).pow(3 * precision - 2);
    if g.order() as u64 != expected {
        return Err(Error::Consistency(format!("order {} differs from p^(3M-2) = {expected}", g.order())));
    }
    Ok(g.with_label(format!("SL2-triangle mod {p}^{precision}")))
}

/// Default structure constant `t`.
pub fn default_t(p: u32) -> u32 {
    smallest_nonresidue(p)
}
