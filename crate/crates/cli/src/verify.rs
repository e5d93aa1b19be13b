//! The verification runner: every documented fact about the group families,
//! recomputed and compared against its expected value.
//!
//! Each check runs on its own thread with a wall-clock limit. A check that
//! runs out of time, or hits a configured capacity bound, is reported as
//! skipped rather than failed.

use std::sync::mpsc;
use std::sync::Arc;
use std::thread;
use std::time::{Duration, Instant};

use serde::Serialize;

use intensity_core::analysis::{
    center_is_last_term, consecutive_width_bound, cubing_identity, cyclic_jumps_same_parity, is_extraspecial,
    is_framed, is_kappa_group, is_obelisk, is_regular, line_checks, lines_criterion, normal_iff_squeezed,
    obelisk_power_law, plus_minus_decomposition, power_abelian_report, power_congruence, LineCheck, PairPolicy,
    SeriesData,
};
use intensity_core::constructions::{
    build, build_yo, in_sl2_triangle, yo_generators, BuildConfig, ExponentFlag, GroupSpec,
};
use intensity_core::group::snapshot::Snapshot;
use intensity_core::group::{subgroups_by_join_closure, Elem, GroupTable, LatticeConfig, SubgroupLattice};
use intensity_core::intensity::{
    brute_force_scalars, fixes_normal_subgroups, frattini_scalar, intensity, is_intense, minus_one_powers_check,
    Automorphism, FrattiniScalar, GeneratorTree, IntensityConfig, IntensityReport,
};
use intensity_core::kappa::KappaCertificate;
use intensity_core::ring::{Mat2, Quaternion, QuaternionAlgebra};
use intensity_core::{Error, ExecMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIPPED(budget)")]
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED(budget)",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckRow {
    pub id: &'static str,
    pub module: &'static str,
    pub criterion: Option<u8>,
    pub title: &'static str,
    pub expected: String,
    pub computed: String,
    pub reference: &'static str,
    pub status: Status,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub mode: ExecMode,
    /// Overall wall-clock budget; checks not started before it runs out are skipped.
    pub budget: Duration,
    /// Run only checks whose module name starts with this string.
    pub only: Option<String>,
    pub intensity_budget: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            mode: ExecMode::default(),
            budget: Duration::from_secs(60 * 60),
            only: None,
            intensity_budget: IntensityConfig::default().budget_candidates,
        }
    }
}

#[derive(Clone, Copy)]
struct Ctx {
    mode: ExecMode,
    intensity_budget: u64,
}

impl Ctx {
    fn build_cfg(&self) -> BuildConfig {
        BuildConfig { mode: self.mode, ..BuildConfig::default() }
    }

    fn intensity_cfg(&self) -> IntensityConfig {
        IntensityConfig {
            budget_candidates: self.intensity_budget,
            mode: self.mode,
            lattice: LatticeConfig { mode: self.mode, ..LatticeConfig::default() },
        }
    }
}

struct Outcome {
    pass: bool,
    computed: String,
}

fn outcome(pass: bool, computed: impl Into<String>) -> Outcome {
    Outcome { pass, computed: computed.into() }
}

type CheckFn = fn(&Ctx) -> intensity_core::Result<Outcome>;

struct Check {
    id: &'static str,
    module: &'static str,
    criterion: Option<u8>,
    title: &'static str,
    expected: &'static str,
    reference: &'static str,
    limit: Duration,
    run: CheckFn,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn checks() -> Vec<Check> {
    vec![
        Check {
            id: "ring-relations",
            module: "ring_algebra",
            criterion: None,
            title: "quaternion relations and sample products",
            expected: "ij = k, ji = -k; (1-e+i)^3 = 1+ei; j^2 = 5 mod 25; (1-e+i) bar(1-e+i) = 1",
            reference: "k = ij = -ji in both algebras; the cube of 1-e+i; j^2 = p in the 5-adic algebra",
            limit: secs(60),
            run: ring_relations,
        },
        Check {
            id: "ring-ideal-layers",
            module: "ring_algebra",
            criterion: None,
            title: "valuations and ideal layers in the 5-adic algebra mod 25",
            expected: "v(1)=0, v(j)=1, v(5)=2; |m^k/m^(k+1)| = 25 for k = 1..3",
            reference: "m^(2s) = p^s Delta and m^(2s+1) = p^s m; each layer is 2-dimensional over F_p",
            limit: secs(60),
            run: ring_ideal_layers,
        },
        Check {
            id: "yo-lattice",
            module: "group_core",
            criterion: None,
            title: "subgroup lattice of Y",
            expected: "373 subgroups; class sizes in {1,3,9,27}; class size = |G : N(H)|",
            reference: "subgroups of Y have 1, 3, 9 or 27 conjugates",
            limit: secs(60),
            run: yo_lattice,
        },
        Check {
            id: "lattice-oracle",
            module: "group_core",
            criterion: None,
            title: "layered enumeration against join closure of cyclic subgroups",
            expected: "identical subgroup sets on Heisenberg 27, Y/Y_3 and Y/Y_4",
            reference: "the subgroup list is complete",
            limit: secs(120),
            run: lattice_oracle,
        },
        Check {
            id: "yo-quotients",
            module: "group_core",
            criterion: None,
            title: "quotients of Y by Y_4 and Y_2",
            expected: "|Y/Y_4| = 243; Y/Y_2 elementary abelian of order 9",
            reference: "widths (2,1,2,1) of Y",
            limit: secs(60),
            run: yo_quotients,
        },
        Check {
            id: "snapshot-roundtrip",
            module: "group_core",
            criterion: None,
            title: "binary snapshot round trip of Y",
            expected: "decoded table reproduces every product",
            reference: "cache format",
            limit: secs(60),
            run: snapshot_roundtrip,
        },
        Check {
            id: "yo-bar-inverse",
            module: "constructions",
            criterion: None,
            title: "bar is inversion on Y",
            expected: "bar(x) = x^-1 for all 729 elements",
            reference: "Y consists of the x in 1+m with bar(x) = x^-1",
            limit: secs(60),
            run: yo_bar_inverse,
        },
        Check {
            id: "sl2-oracle",
            module: "constructions",
            criterion: None,
            title: "SL2 triangle group mod 25 against a filter of SL2(Z/25)",
            expected: "15000 elements in SL2(Z/25), 625 of them unitriangular mod 5, equal to the closure",
            reference: "order p^(3M-2) of the triangle group",
            limit: secs(60),
            run: sl2_oracle,
        },
        Check {
            id: "sn-t-independence",
            module: "constructions",
            criterion: None,
            title: "Sn(Delta_5) mod 25 with t = 2 and t = 3",
            expected: "same order, widths, obelisk and framed outcomes, and intensity",
            reference: "the isomorphism type does not depend on the non-residue t",
            limit: secs(300),
            run: sn_t_independence,
        },
        Check {
            id: "crit1-yo-invariants",
            module: "structure_analysis",
            criterion: Some(1),
            title: "invariants of Y",
            expected: "order 729, class 4, widths [2,1,2,1], Z = Y_4 of order 3, Y_2 elementary abelian of order 81, kappa-group, not regular",
            reference: "Y has order 729 and class 4, widths (2,1,2,1), centre Y_4, elementary abelian Y_2, cubing bijection, and is irregular",
            limit: secs(10),
            run: crit1,
        },
        Check {
            id: "extraspecial-predicate",
            module: "structure_analysis",
            criterion: None,
            title: "extraspecial predicate",
            expected: "Heisenberg 27 true; (Z/3)^2 false; Y/Y_3 true",
            reference: "G_2 central and Z(G) cyclic of order p; class-3 quotients G/G_3 with |G:G_2| = p^2 are extraspecial",
            limit: secs(60),
            run: extraspecial_predicate,
        },
        Check {
            id: "kappa-predicate",
            module: "structure_analysis",
            criterion: None,
            title: "kappa-group predicate",
            expected: "Y/Y_4 true; Heisenberg 27 false",
            reference: "cubing induces a bijection G/G_2 -> G_3/G_4 exactly for kappa-groups",
            limit: secs(60),
            run: kappa_predicate,
        },
        Check {
            id: "yo-cyclic-jumps",
            module: "structure_analysis",
            criterion: None,
            title: "jumps of <1-e+i> in Y",
            expected: "jumps {1,3}, each of width 1",
            reference: "a^3 = 1+ei lies in Y_3 but not Y_4",
            limit: secs(60),
            run: yo_cyclic_jumps,
        },
        Check {
            id: "obelisk-laws",
            module: "structure_analysis",
            criterion: None,
            title: "obelisk structure of Sn(Delta_5)/G_5",
            expected: "power law rho^k(G_i) = G_(2k+i); w_i w_(i+1) <= 2; Z = G_c; regular",
            reference: "power maps, widths, centre and regularity of p-obelisks",
            limit: secs(300),
            run: obelisk_laws,
        },
        Check {
            id: "crit2-yo-intensity",
            module: "intensity_engine",
            criterion: Some(2),
            title: "intensity of Y with the involution",
            expected: "intensity 2; bar-inversion intense, order 2, scalar -1, acts as (-1)^i on Y_i/Y_(i+1)",
            reference: "Y has intensity 2, witnessed by the intense involution induced by bar",
            limit: secs(300),
            run: crit2,
        },
        Check {
            id: "crit3-abelian-battery",
            module: "intensity_engine",
            criterion: Some(3),
            title: "intensity of abelian groups and 2-groups",
            expected: "Z/9 x Z/3: 2; Z/25: 4; dihedral 8: 1; trivial: 1",
            reference: "non-trivial abelian p-groups have intensity p-1; 2-groups have intensity 1",
            limit: secs(30),
            run: crit3,
        },
        Check {
            id: "crit4-extraspecial-battery",
            module: "intensity_engine",
            criterion: Some(4),
            title: "intensity of extraspecial groups",
            expected: "27 exponent 3: 2; 125 exponent 5: 4; 125 exponent 25: 1",
            reference: "in class 2, intensity > 1 exactly for extraspecial groups of exponent p",
            limit: secs(180),
            run: crit4,
        },
        Check {
            id: "crit5-class3",
            module: "intensity_engine",
            criterion: Some(5),
            title: "intensity of Y/Y_4",
            expected: "2",
            reference: "a class-3 group has intensity > 1 only if |G:G_2| = p^2, and then intensity 2",
            limit: secs(60),
            run: crit5,
        },
        Check {
            id: "quotient-monotonicity",
            module: "intensity_engine",
            criterion: None,
            title: "intensity of Y divides that of its quotients",
            expected: "inte(Y) | inte(Y/Y_4) and inte(Y) | inte(Y/Y_3)",
            reference: "intensity divides the intensity of every quotient",
            limit: secs(120),
            run: quotient_monotonicity,
        },
        Check {
            id: "witnesses-fix-normals",
            module: "intensity_engine",
            criterion: None,
            title: "witnesses stabilize normal subgroups",
            expected: "every witness on Y, Y/Y_4, Heisenberg 27 and extraspecial 125 fixes each normal subgroup",
            reference: "normal subgroups are stable under intense automorphisms",
            limit: secs(120),
            run: witnesses_fix_normals,
        },
        Check {
            id: "intense-basics",
            module: "intensity_engine",
            criterion: None,
            title: "identity, inner automorphisms, basis swap, scalar maps",
            expected: "identity and all 729 inner automorphisms of Y intense; swap on (Z/3)^2 not intense; x,y -> x^m,y^m on Heisenberg 125 intense with scalar m",
            reference: "inner automorphisms are intense; extraspecial groups of exponent p admit the scalar maps a_m",
            limit: secs(120),
            run: intense_basics,
        },
        Check {
            id: "elementary-abelian-scalars",
            module: "intensity_engine",
            criterion: None,
            title: "intense iff scalar on elementary abelian groups",
            expected: "holds for every automorphism of (Z/3)^2 and (Z/5)^2",
            reference: "on a vector space the intense automorphisms are the scalars",
            limit: secs(120),
            run: elementary_abelian_scalars,
        },
        Check {
            id: "crit6-kappa-certificate",
            module: "kappa_structures",
            criterion: Some(6),
            title: "kappa-structures, subfields and Lambda-maps of F_3^2",
            expected: "|I_V| = |K_V| = |Lambda| = 3; s_V, l_V bijective; l_V s_V = sigma_V; every lambda = x^5 + bx with b(1+b^2) = 0; x^5 present",
            reference: "three subfields, three kappa-structures and three Lambda-maps, matched by s_V and l_V",
            limit: secs(10),
            run: crit6,
        },
        Check {
            id: "crit7-sn-tower",
            module: "structure_analysis",
            criterion: Some(7),
            title: "Sn(Delta_5) quotients of class 2, 3, 4",
            expected: "order 3125 with widths [2,1,2] at M=2; all framed 5-obelisks; per line, lines condition = Phi(M) = G_3",
            reference: "finite quotients of Sn(Delta_p) are framed p-obelisks; the lines criterion characterizes framedness",
            limit: secs(300),
            run: crit7,
        },
        Check {
            id: "crit8a-sl2-order",
            module: "structure_analysis",
            criterion: Some(8),
            title: "SL2 triangle group mod 5^3",
            expected: "order 5^7; every element has det 1 and is unitriangular mod 5",
            reference: "order p^(3M-2) of the triangle group",
            limit: secs(300),
            run: crit8a,
        },
        Check {
            id: "crit8b-sl2-not-framed",
            module: "structure_analysis",
            criterion: Some(8),
            title: "class >= 3 quotients of the SL2 triangle group",
            expected: "5-obelisks, not framed, the line of B(1) failing",
            reference: "quotients of the triangle group are p-obelisks; the line of B(1) violates the lines condition",
            limit: secs(300),
            run: crit8b,
        },
        Check {
            id: "crit8c-sl2-failing-line-unique",
            module: "structure_analysis",
            criterion: Some(8),
            title: "the failing line is exactly the span of B(1)",
            expected: "failing lines = {<B(1)>}",
            reference: "direct computation of the failing lines",
            limit: secs(300),
            run: crit8c,
        },
        Check {
            id: "crit8d-sl2-line-swap",
            module: "structure_analysis",
            criterion: Some(8),
            title: "conjugation by [[0,1],[p,0]] swaps the lines of B(1) and C(p)",
            expected: "B -> C, C -> B, D -> D^-1 extends to an involution of the class 3 and 4 quotients, mapping <B(1)> to <C(p)>",
            reference: "the triangle group is normalized by [[0,1],[p,0]]",
            limit: secs(300),
            run: crit8d,
        },
        Check {
            id: "crit9a-cubing",
            module: "structure_analysis",
            criterion: Some(9),
            title: "cubing identity on Y/Y_4",
            expected: "(xy)^3 = x^3 y^3 [xy^-1,[x,y]] for all pairs",
            reference: "cubing formula in class 3 with G_2 of exponent 3",
            limit: secs(300),
            run: crit9a,
        },
        Check {
            id: "crit9b-power-congruence",
            module: "structure_analysis",
            criterion: Some(9),
            title: "p-th power congruence on groups of order <= 3^6",
            expected: "(xy)^p = x^p y^p mod G_2^p G_p on all pairs",
            reference: "p-th powers are multiplicative modulo G_2^p G_p",
            limit: secs(300),
            run: crit9b,
        },
        Check {
            id: "crit9c-power-abelian",
            module: "structure_analysis",
            criterion: Some(9),
            title: "power-abelian identities on Sn(Delta_5)/G_5",
            expected: "G^(p^k) is the set of p^k-th powers and |Omega_k| = |G : G^(p^k)| for all k",
            reference: "regular p-groups are power abelian",
            limit: secs(300),
            run: crit9c,
        },
        Check {
            id: "crit9d-normal-squeeze",
            module: "structure_analysis",
            criterion: Some(9),
            title: "normal subgroups of Y are squeezed",
            expected: "H normal iff G_(i+1) <= H <= G_i for some i, for all 373 subgroups",
            reference: "normal subgroups of Y lie between consecutive terms of the lower central series",
            limit: secs(300),
            run: crit9d,
        },
        Check {
            id: "crit9e-cyclic-jumps",
            module: "structure_analysis",
            criterion: Some(9),
            title: "jumps of cyclic subgroups of Sn(Delta_5)/G_5",
            expected: "every cyclic subgroup has jumps of one parity, each of width 1",
            reference: "cyclic subgroups of p-obelisks have 1-dimensional jumps of the same parity",
            limit: secs(300),
            run: crit9e,
        },
        Check {
            id: "crit9f-plus-minus",
            module: "structure_analysis",
            criterion: Some(9),
            title: "fixed and inverted points of the involution of Y",
            expected: "|G+| = 9, |G-| = 81, |G| = |G+||G-|, |G+| and |G-| equal the even and odd jump products",
            reference: "|G| = |G+||G-|, with the sizes given by the even and odd jumps",
            limit: secs(300),
            run: crit9f,
        },
        Check {
            id: "crit9g-brute-force-oracle",
            module: "intensity_engine",
            criterion: Some(9),
            title: "coset-restricted search against unrestricted brute force, |G| <= 81",
            expected: "same realized scalars on every battery group of order at most 81",
            reference: "intensity is the image of the intense character",
            limit: secs(300),
            run: crit9g,
        },
        Check {
            id: "crit10-sn-intensity",
            module: "intensity_engine",
            criterion: Some(10),
            title: "intensity of Sn(Delta_5)/G_4",
            expected: "2",
            reference: "a class-3 group with |G:G_2| = p^2 and intensity > 1 has intensity 2",
            limit: secs(30 * 60),
            run: crit10,
        },
    ]
}

/// Names accepted by `only`.
pub const MODULES: &[&str] =
    &["ring_algebra", "group_core", "constructions", "structure_analysis", "intensity_engine", "kappa_structures"];

pub fn run(cfg: &VerifyConfig) -> Vec<CheckRow> {
    let ctx = Ctx { mode: cfg.mode, intensity_budget: cfg.intensity_budget };
    let start = Instant::now();
    let mut rows = Vec::new();
    for check in checks() {
        if cfg.only.as_deref().is_some_and(|m| !check.module.starts_with(m)) {
            continue;
        }
        let remaining = cfg.budget.saturating_sub(start.elapsed());
        let limit = check.limit.min(remaining);
        rows.push(run_one(&check, ctx, limit));
    }
    rows
}

fn run_one(check: &Check, ctx: Ctx, limit: Duration) -> CheckRow {
    let mut row = CheckRow {
        id: check.id,
        module: check.module,
        criterion: check.criterion,
        title: check.title,
        expected: check.expected.to_string(),
        computed: String::new(),
        reference: check.reference,
        status: Status::Skipped,
        elapsed_ms: 0,
    };
    if limit.is_zero() {
        row.computed = "not started: budget exhausted".into();
        return row;
    }
    let (tx, rx) = mpsc::channel();
    let f = check.run;
    let start = Instant::now();
    // The worker is detached on timeout; it holds no shared state.
    let _ = thread::Builder::new().name(check.id.into()).spawn(move || {
        let _ = tx.send(f(&ctx));
    });
    let result = rx.recv_timeout(limit);
    row.elapsed_ms = start.elapsed().as_millis() as u64;
    match result {
        Ok(Ok(o)) => {
            row.status = if o.pass { Status::Pass } else { Status::Fail };
            row.computed = o.computed;
        }
        Ok(Err(Error::CapacityExceeded { what, bound })) => {
            row.computed = format!("{what} exceeds the bound {bound}");
        }
        Ok(Err(e)) => {
            row.status = Status::Fail;
            row.computed = format!("error: {e}");
        }
        Err(mpsc::RecvTimeoutError::Timeout) => {
            row.computed = format!("timed out after {} s", limit.as_secs());
        }
        Err(mpsc::RecvTimeoutError::Disconnected) => {
            row.status = Status::Fail;
            row.computed = "check panicked".into();
        }
    }
    row
}

/// Combined status per criterion: failed if any row failed, skipped if any was skipped.
pub fn criteria_summary(rows: &[CheckRow]) -> Vec<(u8, Status)> {
    let mut ids: Vec<u8> = rows.iter().filter_map(|r| r.criterion).collect();
    ids.sort_unstable();
    ids.dedup();
    ids.into_iter()
        .map(|c| {
            let statuses = rows.iter().filter(|r| r.criterion == Some(c)).map(|r| r.status);
            let status = statuses.fold(Status::Pass, |acc, s| match (acc, s) {
                (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
                (Status::Skipped, _) | (_, Status::Skipped) => Status::Skipped,
                _ => Status::Pass,
            });
            (c, status)
        })
        .collect()
}

/// Whether the run succeeded; skipped rows count as failures only in strict mode.
pub fn succeeded(rows: &[CheckRow], strict: bool) -> bool {
    rows.iter().all(|r| r.status == Status::Pass || (!strict && r.status == Status::Skipped))
}

// Shared constructions

fn group(ctx: &Ctx, spec: &GroupSpec) -> intensity_core::Result<Arc<GroupTable>> {
    Ok(build(spec, &ctx.build_cfg())?.group)
}

fn yo(ctx: &Ctx) -> intensity_core::Result<Arc<GroupTable>> {
    Ok(Arc::new(build_yo(&ctx.build_cfg())?))
}

/// `Y/Y_k` together with `Y`.
fn yo_quotient(ctx: &Ctx, k: usize) -> intensity_core::Result<(Arc<GroupTable>, Arc<GroupTable>)> {
    let g = yo(ctx)?;
    let s = SeriesData::compute(&g)?;
    let q = g.quotient(s.term(k))?;
    Ok((g.clone(), q.group().clone()))
}

/// The involution `x ↦ bar(x) = x⁻¹` on generators of `Y`.
fn yo_involution(g: &GroupTable) -> intensity_core::Result<Automorphism> {
    let images: Vec<Elem> = g.gens().iter().map(|&x| g.inv(x)).collect();
    Automorphism::from_generator_images(g, &images)
}

fn intensity_of(ctx: &Ctx, g: &GroupTable) -> intensity_core::Result<IntensityReport> {
    intensity(g, &ctx.intensity_cfg())
}

fn widths(s: &SeriesData) -> String {
    format!("{:?}", s.widths)
}

// ring_algebra

fn ring_relations(_: &Ctx) -> intensity_core::Result<Outcome> {
    let mut ok = true;
    let yo = QuaternionAlgebra::yo();
    let delta = QuaternionAlgebra::delta(5, 2, 2)?;
    for alg in [&yo, &delta] {
        let (i, j, k) = (alg.i(), alg.j(), alg.k());
        ok &= alg.mul(i, j) == k;
        ok &= alg.mul(j, i) == alg.sub(alg.scalar(0), k);
    }
    let r = &yo.ring;
    let a = Quaternion([r.dual(1, -1), r.one(), 0, 0]);
    let cube = yo.pow(a, 3);
    let expected = Quaternion([r.one(), r.dual(0, 1), 0, 0]);
    ok &= cube == expected;
    ok &= yo.mul(a, yo.bar(a)) == yo.one();
    let jj = delta.mul(delta.j(), delta.j());
    ok &= jj == delta.scalar(delta.ring.from_int(5));
    Ok(outcome(ok, format!("(1-e+i)^3 = {cube:?}, j^2 = {jj:?}")))
}

fn ring_ideal_layers(_: &Ctx) -> intensity_core::Result<Outcome> {
    let alg = QuaternionAlgebra::delta(5, 2, 2)?;
    let v1 = alg.ideal_valuation(alg.one());
    let vj = alg.ideal_valuation(alg.j());
    let v5 = alg.ideal_valuation(alg.scalar(alg.ring.from_int(5)));
    let mut counts = [0u64; 5];
    for x in alg.elements() {
        for (k, c) in counts.iter_mut().enumerate() {
            if alg.in_ideal_power(x, k as u32) {
                *c += 1;
            }
        }
    }
    let layers: Vec<u64> = (1..4).map(|k| counts[k] / counts[k + 1]).collect();
    let ok = v1 == Some(0) && vj == Some(1) && v5 == Some(2) && layers.iter().all(|&l| l == 25);
    Ok(outcome(ok, format!("v(1)={v1:?}, v(j)={vj:?}, v(5)={v5:?}; layers {layers:?}")))
}

// group_core

fn yo_lattice(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let g = yo(ctx)?;
    let lat = SubgroupLattice::build(&g, &ctx.intensity_cfg().lattice)?;
    let hist = lat.class_size_histogram();
    let sizes_ok = hist.keys().all(|s| [1, 3, 9, 27].contains(s));
    let orbit_ok = lat.classes().iter().all(|c| g.order() / g.normalizer(lat.get(c[0])).order() == c.len());
    let ok = lat.len() == 373 && sizes_ok && orbit_ok;
    Ok(outcome(
        ok,
        format!(
            "{} subgroups in {} classes; class sizes {hist:?}; orbit-stabilizer {orbit_ok}",
            lat.len(),
            lat.classes().len()
        ),
    ))
}

fn lattice_oracle(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let heis = group(ctx, &GroupSpec::extraspecial(3, 1, ExponentFlag::P))?;
    let (_, q3) = yo_quotient(ctx, 3)?;
    let (_, q4) = yo_quotient(ctx, 4)?;
    let mut ok = true;
    let mut counts = Vec::new();
    for g in [&heis, &q3, &q4] {
        let lat = SubgroupLattice::build(g, &ctx.intensity_cfg().lattice)?;
        let mut mine: Vec<Vec<Elem>> = lat.subgroups().iter().map(|h| h.members().to_vec()).collect();
        mine.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let oracle = subgroups_by_join_closure(g);
        ok &= mine == oracle;
        counts.push(lat.len());
    }
    Ok(outcome(ok, format!("subgroup counts {counts:?}, oracle agrees: {ok}")))
}

fn yo_quotients(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let (_, q4) = yo_quotient(ctx, 4)?;
    let (_, q2) = yo_quotient(ctx, 2)?;
    let ok = q4.order() == 243 && q2.order() == 9 && q2.is_abelian() && q2.exponent() == 3;
    Ok(outcome(ok, format!("|Y/Y_4| = {}, |Y/Y_2| = {} with exponent {}", q4.order(), q2.order(), q2.exponent())))
}

fn snapshot_roundtrip(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let g = yo(ctx)?;
    let bytes = Snapshot::from_table(&g)?.encode();
    let h = Snapshot::decode(&bytes)?.into_group()?;
    let ok = h.order() == g.order()
        && h.gens() == g.gens()
        && g.elements().all(|x| g.elements().all(|y| g.mul(x, y) == h.mul(x, y)));
    Ok(outcome(ok, format!("{} bytes, products agree: {ok}", bytes.len())))
}

// constructions

fn yo_bar_inverse(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let g = yo(ctx)?;
    let alg = QuaternionAlgebra::yo();
    let bad =
        g.elements().filter(|&x| g.index_of(alg.bar(Quaternion::unpack(g.key(x))).pack()) != Some(g.inv(x))).count();
    Ok(outcome(bad == 0, format!("{} elements, {bad} mismatches", g.order())))
}

fn sl2_oracle(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let q = 25;
    let mut sl2 = 0;
    let mut members = Vec::new();
    for code in 0..q * q * q * q {
        let m = Mat2([code % q, code / q % q, code / (q * q) % q, code / (q * q * q)]);
        if m.det(q) == 1 {
            sl2 += 1;
            if in_sl2_triangle(&m, 5, q) {
                members.push(m.pack());
            }
        }
    }
    let g = group(ctx, &GroupSpec::sl2_triangle(5, 2, None))?;
    let mut keys: Vec<u64> = g.elements().map(|x| g.key(x)).collect();
    keys.sort_unstable();
    members.sort_unstable();
    let ok = sl2 == 15000 && members.len() == 625 && keys == members;
    Ok(outcome(ok, format!("|SL2(Z/25)| = {sl2}, filter {} elements, closure {}", members.len(), keys.len())))
}

fn sn_t_independence(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let mut summaries = Vec::new();
    for t in [2, 3] {
        let g = group(ctx, &GroupSpec::sn_delta(5, 2, None).with_t(t))?;
        let s = SeriesData::compute(&g)?;
        let ob = is_obelisk(&g, &s)?;
        let fr = is_framed(&g, &s)?;
        let inte = intensity_of(ctx, &g)?.intensity;
        summaries.push(format!("order {} widths {:?} obelisk {ob} framed {fr} intensity {inte}", g.order(), s.widths));
    }
    Ok(outcome(summaries[0] == summaries[1], format!("t=2: {}; t=3: {}", summaries[0], summaries[1])))
}

// structure_analysis

fn crit1(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let g = yo(ctx)?;
    let s = SeriesData::compute(&g)?;
    let z = g.center();
    let g2 = s.term(2);
    let g2_elementary = g.is_abelian_subgroup(g2) && g2.members().iter().all(|&x| g.pow(x, 3) == 0);
    let kappa = is_kappa_group(&g, &s);
    let reg = is_regular(&g, &s, &PairPolicy::default(), ctx.mode);
    let ok = g.order() == 729
        && s.class() == 4
        && s.widths == [2, 1, 2, 1]
        && z.order() == 3
        && z.members() == s.term(4).members()
        && g2.order() == 81
        && g2_elementary
        && kappa
        && !reg.regular
        && reg.exhaustive;
    Ok(outcome(
        ok,
        format!(
            "order {}, class {}, widths {}, |Z| = {} (Z = Y_4: {}), |Y_2| = {} elementary abelian {g2_elementary}, kappa {kappa}, regular {} (exhaustive {})",
            g.order(),
            s.class(),
            widths(&s),
            z.order(),
            z.members() == s.term(4).members(),
            g2.order(),
            reg.regular,
            reg.exhaustive
        ),
    ))
}

fn extraspecial_predicate(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let heis = group(ctx, &GroupSpec::extraspecial(3, 1, ExponentFlag::P))?;
    let plane = group(ctx, &GroupSpec::abelian(3, &[1, 1]))?;
    let (_, q3) = yo_quotient(ctx, 3)?;
    let vals: Vec<bool> = [&heis, &plane, &q3]
        .iter()
        .map(|g| SeriesData::compute(g).map(|s| is_extraspecial(g, &s)))
        .collect::<intensity_core::Result<_>>()?;
    Ok(outcome(vals == [true, false, true], format!("Heisenberg {}, (Z/3)^2 {}, Y/Y_3 {}", vals[0], vals[1], vals[2])))
}

fn kappa_predicate(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let (_, q4) = yo_quotient(ctx, 4)?;
    let heis = group(ctx, &GroupSpec::extraspecial(3, 1, ExponentFlag::P))?;
    let a = is_kappa_group(&q4, &SeriesData::compute(&q4)?);
    let b = is_kappa_group(&heis, &SeriesData::compute(&heis)?);
    Ok(outcome(a && !b, format!("Y/Y_4 {a}, Heisenberg {b}")))
}

fn yo_cyclic_jumps(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let g = yo(ctx)?;
    let s = SeriesData::compute(&g)?;
    let [a, _] = yo_generators(&QuaternionAlgebra::yo());
    let ia = g.index_of(a.pack()).ok_or_else(|| Error::Consistency("1-e+i is not in Y".into()))?;
    let prof = s.jump_profile(&g.generated(&[ia]));
    let ok = prof.indices() == [1, 3] && prof.jumps.iter().all(|j| j.width == 1);
    Ok(outcome(ok, format!("jumps {:?}", prof.jumps.iter().map(|j| (j.index, j.width)).collect::<Vec<_>>())))
}

fn sn_g5(ctx: &Ctx) -> intensity_core::Result<Arc<GroupTable>> {
    group(ctx, &GroupSpec::sn_delta(5, 3, Some(5)))
}

fn obelisk_laws(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let g = sn_g5(ctx)?;
    let s = SeriesData::compute(&g)?;
    let power = obelisk_power_law(&g, &s);
    let bound = consecutive_width_bound(&s);
    let centre = center_is_last_term(&g, &s);
    let reg = is_regular(&g, &s, &PairPolicy::default(), ctx.mode);
    let ok = power && bound && centre && reg.regular;
    Ok(outcome(
        ok,
        format!(
            "order {}, widths {}, power law {power}, width bound {bound}, Z = G_c {centre}, regular {} ({} sampled pairs)",
            g.order(),
            widths(&s),
            reg.regular,
            reg.pairs_checked
        ),
    ))
}

fn line_summary(lines: &[LineCheck]) -> String {
    lines
        .iter()
        .map(|l| {
            format!("{}{}", if l.lines_condition { 'L' } else { 'l' }, if l.frattini_condition { 'F' } else { 'f' })
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn crit7(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let full = group(ctx, &GroupSpec::sn_delta(5, 2, None))?;
    let full_s = SeriesData::compute(&full)?;
    let mut ok = full.order() == 3125 && full_s.widths == [2, 1, 2];
    let mut parts = vec![format!("M=2: order {} widths {}", full.order(), widths(&full_s))];
    let specs =
        [GroupSpec::sn_delta(5, 2, Some(3)), GroupSpec::sn_delta(5, 2, Some(4)), GroupSpec::sn_delta(5, 3, Some(5))];
    for (spec, class) in specs.iter().zip(2..) {
        let g = group(ctx, spec)?;
        let s = SeriesData::compute(&g)?;
        let ob = is_obelisk(&g, &s)?;
        let fr = is_framed(&g, &s)?;
        let lines = line_checks(&g, &s)?;
        let agree = lines.len() == 6 && lines.iter().all(|l| l.lines_condition == l.frattini_condition);
        let criterion = if s.class() >= 3 { Some(lines_criterion(&g, &s)?) } else { None };
        ok &= s.class() == class && ob && fr && agree && criterion.is_none_or(|c| c == fr);
        parts.push(format!(
            "class {}: obelisk {ob} framed {fr} lines [{}] criterion {criterion:?}",
            s.class(),
            line_summary(&lines)
        ));
    }
    Ok(outcome(ok, parts.join("; ")))
}

fn crit8a(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let g = group(ctx, &GroupSpec::sl2_triangle(5, 3, None))?;
    let q = 125;
    let members = g.elements().all(|x| in_sl2_triangle(&Mat2::unpack(g.key(x)), 5, q));
    let ok = g.order() == 5usize.pow(7) && members;
    Ok(outcome(ok, format!("order {}, membership filter {members}", g.order())))
}

/// The class ≥ 3 quotients of the triangle group mod 5³, with the indices of
/// the lines of `B(1)` and `C(p)`, and the failing lines.
struct Sl2Quotient {
    g: Arc<GroupTable>,
    s: SeriesData,
    lines: Vec<LineCheck>,
    b_line: usize,
    c_line: usize,
}

fn line_of(g: &GroupTable, s: &SeriesData, lines: &[LineCheck], x: Elem) -> Option<usize> {
    let span = g.join_elements(s.term(2), &[x]);
    lines.iter().position(|l| span.contains(l.representative))
}

fn sl2_quotients(ctx: &Ctx) -> intensity_core::Result<Vec<Sl2Quotient>> {
    [Some(4), Some(5), None]
        .into_iter()
        .map(|k| {
            let g = group(ctx, &GroupSpec::sl2_triangle(5, 3, k))?;
            let s = SeriesData::compute(&g)?;
            let lines = line_checks(&g, &s)?;
            // Generators follow the seeds B(1), C(p), D(1+p).
            let missing = || Error::Consistency("generator line not found".into());
            let b_line = line_of(&g, &s, &lines, g.gens()[0]).ok_or_else(missing)?;
            let c_line = line_of(&g, &s, &lines, g.gens()[1]).ok_or_else(missing)?;
            Ok(Sl2Quotient { g, s, lines, b_line, c_line })
        })
        .collect()
}

fn failing(lines: &[LineCheck]) -> Vec<usize> {
    (0..lines.len()).filter(|&i| !lines[i].frattini_condition).collect()
}

fn crit8b(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for q in sl2_quotients(ctx)? {
        let ob = is_obelisk(&q.g, &q.s)?;
        let fr = is_framed(&q.g, &q.s)?;
        let b_fails = !q.lines[q.b_line].frattini_condition && !q.lines[q.b_line].lines_condition;
        ok &= q.s.class() >= 3 && ob && !fr && b_fails;
        parts.push(format!("class {}: obelisk {ob} framed {fr} B(1) line fails {b_fails}", q.s.class()));
    }
    Ok(outcome(ok, parts.join("; ")))
}

fn crit8c(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for q in sl2_quotients(ctx)? {
        let bad = failing(&q.lines);
        ok &= bad == [q.b_line];
        let names: Vec<String> = bad
            .iter()
            .map(|&i| match i {
                i if i == q.b_line => "<B(1)>".to_string(),
                i if i == q.c_line => "<C(p)>".to_string(),
                i => format!("line {i}"),
            })
            .collect();
        parts.push(format!("class {}: failing {{{}}}", q.s.class(), names.join(", ")));
    }
    Ok(outcome(ok, parts.join("; ")))
}

fn crit8d(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (q, k) in sl2_quotients(ctx)?.into_iter().zip([Some(4), Some(5), None]) {
        let g = &q.g;
        let [b, c, d] = [g.gens()[0], g.gens()[1], g.gens()[2]];
        let certified = match Automorphism::from_generator_images(g, &[c, b, g.inv(d)]) {
            Ok(alpha) => {
                let to_c = line_of(g, &q.s, &q.lines, alpha.apply(q.lines[q.b_line].representative));
                alpha.order() == 2 && to_c == Some(q.c_line)
            }
            Err(_) => false,
        };
        match k {
            Some(_) => {
                ok &= certified;
                parts.push(format!("class {}: swap certified {certified}", q.s.class()));
            }
            // The congruence kernel mod p^3 is not normalized by [[0,1],[p,0]],
            // so the swap need not descend to the full finite group.
            None => parts.push(format!("full group mod 5^3 (not a lower central quotient): swap descends {certified}")),
        }
    }
    Ok(outcome(ok, parts.join("; ")))
}

fn crit9a(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let (_, q4) = yo_quotient(ctx, 4)?;
    let s = SeriesData::compute(&q4)?;
    let ok = cubing_identity(&q4, &s, ctx.mode)?;
    Ok(outcome(ok, format!("{} pairs, identity holds {ok}", q4.order() * q4.order())))
}

fn crit9b(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let mut groups = vec![
        ("Z/9 x Z/3", group(ctx, &GroupSpec::abelian(3, &[2, 1]))?),
        ("Z/25", group(ctx, &GroupSpec::abelian(5, &[2]))?),
        ("dihedral 8", group(ctx, &GroupSpec::semidirect_cyclic(4, 2, 3))?),
        ("Heisenberg 27", group(ctx, &GroupSpec::extraspecial(3, 1, ExponentFlag::P))?),
        ("extraspecial 125 exp 5", group(ctx, &GroupSpec::extraspecial(5, 1, ExponentFlag::P))?),
        ("extraspecial 125 exp 25", group(ctx, &GroupSpec::extraspecial(5, 1, ExponentFlag::P2))?),
        ("extraspecial 243", group(ctx, &GroupSpec::extraspecial(3, 2, ExponentFlag::P))?),
        ("Sn/G_3", group(ctx, &GroupSpec::sn_delta(5, 2, Some(3)))?),
        ("Y", yo(ctx)?),
    ];
    groups.push(("Y/Y_4", yo_quotient(ctx, 4)?.1));
    groups.push(("Y/Y_3", yo_quotient(ctx, 3)?.1));
    let mut ok = true;
    let mut failed = Vec::new();
    for (name, g) in &groups {
        let s = SeriesData::compute(g)?;
        let (holds, exhaustive) = power_congruence(g, &s, &PairPolicy::default(), ctx.mode);
        ok &= holds && exhaustive;
        if !(holds && exhaustive) {
            failed.push(*name);
        }
    }
    Ok(outcome(ok, format!("{} groups checked on all pairs; failures {failed:?}", groups.len())))
}

fn crit9c(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let g = sn_g5(ctx)?;
    let s = SeriesData::compute(&g)?;
    let rep = power_abelian_report(&g, &s);
    let levels: Vec<String> =
        rep.levels.iter().map(|l| format!("k={}: {}/{}", l.k, l.powers_form_subgroup, l.omega_matches_index)).collect();
    Ok(outcome(rep.holds, format!("order {}; {}", g.order(), levels.join(", "))))
}

fn crit9d(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let g = yo(ctx)?;
    let s = SeriesData::compute(&g)?;
    let lat = SubgroupLattice::build(&g, &ctx.intensity_cfg().lattice)?;
    let ok = normal_iff_squeezed(&g, &s, lat.subgroups());
    let normal = lat.normal_subgroups().len();
    Ok(outcome(ok, format!("{} subgroups, {normal} normal, squeeze characterization {ok}", lat.len())))
}

fn crit9e(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let g = sn_g5(ctx)?;
    let s = SeriesData::compute(&g)?;
    let ok = cyclic_jumps_same_parity(&g, &s);
    Ok(outcome(ok, format!("order {}, all cyclic subgroups conform {ok}", g.order())))
}

fn crit9f(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let g = yo(ctx)?;
    let s = SeriesData::compute(&g)?;
    let alpha = yo_involution(&g)?;
    let pm = plus_minus_decomposition(&g, &s, &alpha)?;
    let ok = pm.plus_order == 9 && pm.minus_size == 81 && pm.product_matches(&g) && pm.jump_formulas_match();
    Ok(outcome(
        ok,
        format!(
            "|G+| = {}, |G-| = {}, even jumps {}, odd jumps {}",
            pm.plus_order, pm.minus_size, pm.even_jump_product, pm.odd_jump_product
        ),
    ))
}

fn oracle_battery(ctx: &Ctx) -> intensity_core::Result<Vec<(&'static str, Arc<GroupTable>)>> {
    Ok(vec![
        ("trivial", group(ctx, &GroupSpec::trivial(3))?),
        ("(Z/3)^2", group(ctx, &GroupSpec::abelian(3, &[1, 1]))?),
        ("(Z/5)^2", group(ctx, &GroupSpec::abelian(5, &[1, 1]))?),
        ("Z/25", group(ctx, &GroupSpec::abelian(5, &[2]))?),
        ("Z/9 x Z/3", group(ctx, &GroupSpec::abelian(3, &[2, 1]))?),
        ("Z/9 x Z/9", group(ctx, &GroupSpec::abelian(3, &[2, 2]))?),
        ("Z/27 x Z/3", group(ctx, &GroupSpec::abelian(3, &[3, 1]))?),
        ("dihedral 8", group(ctx, &GroupSpec::semidirect_cyclic(4, 2, 3))?),
        ("Z/8 x| Z/2 (u=5)", group(ctx, &GroupSpec::semidirect_cyclic(8, 2, 5))?),
        ("Heisenberg 27", group(ctx, &GroupSpec::extraspecial(3, 1, ExponentFlag::P))?),
        ("extraspecial 27 exp 9", group(ctx, &GroupSpec::extraspecial(3, 1, ExponentFlag::P2))?),
        ("Z/9 x| Z/9 (u=4)", group(ctx, &GroupSpec::semidirect_cyclic(9, 9, 4))?),
        ("Y/Y_3", yo_quotient(ctx, 3)?.1),
    ])
}

fn crit9g(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, g) in oracle_battery(ctx)? {
        let s = SeriesData::compute(&g)?;
        let lat = SubgroupLattice::build(&g, &ctx.intensity_cfg().lattice)?;
        let brute = brute_force_scalars(&g, &lat, &s)?;
        let fast = intensity_of(ctx, &g)?.realized_scalars;
        ok &= brute == fast;
        parts.push(format!("{name}: {}", fast.len()));
    }
    Ok(outcome(ok, parts.join(", ")))
}

// intensity_engine

fn crit2(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let g = yo(ctx)?;
    let s = SeriesData::compute(&g)?;
    let rep = intensity_of(ctx, &g)?;
    let lat = SubgroupLattice::build(&g, &ctx.intensity_cfg().lattice)?;
    let alpha = yo_involution(&g)?;
    let intense = is_intense(&lat, &alpha);
    let scalar = frattini_scalar(&g, &s, &alpha);
    let layers = minus_one_powers_check(&g, &s, &lat, &alpha)?;
    let ok = rep.intensity == 2 && intense && alpha.order() == 2 && scalar == FrattiniScalar::Scalar(2) && layers;
    Ok(outcome(
        ok,
        format!(
            "intensity {} (scalars {:?}); involution order {}, intense {intense}, scalar {scalar:?}, (-1)^i layers {layers}",
            rep.intensity,
            rep.realized_scalars,
            alpha.order()
        ),
    ))
}

fn battery(ctx: &Ctx, items: &[(&str, GroupSpec, u32)]) -> intensity_core::Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, spec, expected) in items {
        let g = group(ctx, spec)?;
        let r = intensity_of(ctx, &g)?;
        ok &= r.intensity == *expected;
        parts.push(format!("{name}: {}", r.intensity));
    }
    Ok(outcome(ok, parts.join(", ")))
}

fn crit3(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    battery(
        ctx,
        &[
            ("Z/9 x Z/3", GroupSpec::abelian(3, &[2, 1]), 2),
            ("Z/25", GroupSpec::abelian(5, &[2]), 4),
            ("dihedral 8", GroupSpec::semidirect_cyclic(4, 2, 3), 1),
            ("trivial", GroupSpec::trivial(3), 1),
        ],
    )
}

fn crit4(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    battery(
        ctx,
        &[
            ("27 exp 3", GroupSpec::extraspecial(3, 1, ExponentFlag::P), 2),
            ("125 exp 5", GroupSpec::extraspecial(5, 1, ExponentFlag::P), 4),
            ("125 exp 25", GroupSpec::extraspecial(5, 1, ExponentFlag::P2), 1),
        ],
    )
}

fn crit5(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let (_, q4) = yo_quotient(ctx, 4)?;
    let r = intensity_of(ctx, &q4)?;
    Ok(outcome(
        r.intensity == 2,
        format!("order {}, intensity {} (scalars {:?})", q4.order(), r.intensity, r.realized_scalars),
    ))
}

fn quotient_monotonicity(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let g = yo(ctx)?;
    let whole = intensity_of(ctx, &g)?.intensity;
    let mut ok = true;
    let mut parts = vec![format!("Y: {whole}")];
    for k in [3, 4] {
        let q = yo_quotient(ctx, k)?.1;
        let iq = intensity_of(ctx, &q)?.intensity;
        ok &= iq % whole == 0;
        parts.push(format!("Y/Y_{k}: {iq}"));
    }
    Ok(outcome(ok, parts.join(", ")))
}

fn witnesses_fix_normals(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let mut groups = vec![
        yo(ctx)?,
        yo_quotient(ctx, 4)?.1,
        group(ctx, &GroupSpec::extraspecial(3, 1, ExponentFlag::P))?,
        group(ctx, &GroupSpec::extraspecial(5, 1, ExponentFlag::P))?,
    ];
    let mut ok = true;
    let mut count = 0;
    for g in groups.drain(..) {
        let search = intensity_core::intensity::IntensitySearch::new(&g, &ctx.intensity_cfg())?;
        let rep = search.run(&ctx.intensity_cfg())?;
        for w in &rep.witnesses {
            let alpha = search.witness_automorphism(w)?;
            ok &= fixes_normal_subgroups(search.lattice(), &alpha);
            count += 1;
        }
    }
    Ok(outcome(ok, format!("{count} witnesses, all fix normal subgroups: {ok}")))
}

fn intense_basics(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let g = yo(ctx)?;
    let lat = SubgroupLattice::build(&g, &ctx.intensity_cfg().lattice)?;
    let identity = is_intense(&lat, &Automorphism::identity(&g));
    let inner = g.elements().all(|h| is_intense(&lat, &Automorphism::inner(&g, h)));
    let plane = group(ctx, &GroupSpec::abelian(3, &[1, 1]))?;
    let plane_lat = SubgroupLattice::build(&plane, &ctx.intensity_cfg().lattice)?;
    let gens = plane.gens();
    let swap = Automorphism::from_generator_images(&plane, &[gens[1], gens[0]])?;
    let swap_intense = is_intense(&plane_lat, &swap);
    let heis = group(ctx, &GroupSpec::extraspecial(5, 1, ExponentFlag::P))?;
    let hs = SeriesData::compute(&heis)?;
    let heis_lat = SubgroupLattice::build(&heis, &ctx.intensity_cfg().lattice)?;
    let mut scalars_ok = true;
    for m in 1..5u32 {
        let images: Vec<Elem> = heis.gens().iter().map(|&x| heis.pow(x, m as i64)).collect();
        let a = Automorphism::from_generator_images(&heis, &images)?;
        scalars_ok &= is_intense(&heis_lat, &a) && frattini_scalar(&heis, &hs, &a) == FrattiniScalar::Scalar(m);
    }
    let ok = identity && inner && !swap_intense && scalars_ok;
    Ok(outcome(
        ok,
        format!("identity {identity}, inner {inner}, swap intense {swap_intense}, scalar maps a_m {scalars_ok}"),
    ))
}

fn elementary_abelian_scalars(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [3, 5] {
        let g = group(ctx, &GroupSpec::abelian(p, &[1, 1]))?;
        let s = SeriesData::compute(&g)?;
        let lat = SubgroupLattice::build(&g, &ctx.intensity_cfg().lattice)?;
        let tree = GeneratorTree::new(&g, g.gens())?;
        let n = g.order() as Elem;
        let (mut autos, mut intense) = (0, 0);
        for x in 0..n {
            for y in 0..n {
                let Ok(a) = Automorphism::from_images_on(&g, &tree, &[x, y]) else {
                    continue;
                };
                autos += 1;
                let i = is_intense(&lat, &a);
                intense += i as u32;
                ok &= i == matches!(frattini_scalar(&g, &s, &a), FrattiniScalar::Scalar(_));
            }
        }
        parts.push(format!("(Z/{p})^2: {autos} automorphisms, {intense} intense"));
    }
    Ok(outcome(ok, parts.join(", ")))
}

fn crit10(ctx: &Ctx) -> intensity_core::Result<Outcome> {
    let g = group(ctx, &GroupSpec::sn_delta(5, 2, None))?;
    let s = SeriesData::compute(&g)?;
    let r = intensity_of(ctx, &g)?;
    let ok = s.class() == 3 && r.intensity == 2;
    Ok(outcome(
        ok,
        format!(
            "order {}, class {}, intensity {} (scalars {:?})",
            g.order(),
            s.class(),
            r.intensity,
            r.realized_scalars
        ),
    ))
}

// kappa_structures

fn crit6(_: &Ctx) -> intensity_core::Result<Outcome> {
    let c = KappaCertificate::compute()?;
    Ok(outcome(
        c.holds(),
        format!(
            "|I_V| = {}, |K_V| = {}, |Lambda| = {}; s_V bijective {}, l_V bijective {}, l_V s_V = sigma_V {}, shifts {:?}, x^5 present {}",
            c.subfields.len(),
            c.kappa_structures.len(),
            c.lambda_maps.len(),
            c.s_v_bijective,
            c.l_v_bijective,
            c.sigma_factors,
            c.quintic_shifts,
            c.quintic_present
        ),
    ))
}
