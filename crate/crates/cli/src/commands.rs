//! The subcommands, as functions from a run configuration to a report.

use std::sync::Arc;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

use intensity_core::analysis::{
    is_extraspecial, is_framed, is_kappa_group, is_obelisk, is_regular, line_checks, lines_criterion,
    power_abelian_report, PairPolicy, SeriesData,
};
use intensity_core::constructions::{BuildConfig, GroupSpec};
use intensity_core::group::{ClosureConfig, Elem, GroupTable, LatticeConfig, SubgroupLattice};
use intensity_core::intensity::{intensity, IntensityConfig};
use intensity_core::kappa::KappaCertificate;
use intensity_core::{Error, ExecMode};

use crate::cache::GroupCache;
use crate::report::Report;
use crate::verify::{self, CheckRow, Status, VerifyConfig};
use crate::{CliError, Result};

/// Budget knobs shared by every command.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub max_order: u64,
    pub max_subgroups: usize,
    pub budget_candidates: u64,
    pub seed: u64,
    pub mode: ExecMode,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            max_order: ClosureConfig::default().max_order,
            max_subgroups: LatticeConfig::default().max_subgroups,
            budget_candidates: IntensityConfig::default().budget_candidates,
            seed: PairPolicy::default().seed,
            mode: ExecMode::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_order == 0 || self.max_subgroups == 0 || self.budget_candidates == 0 {
            return Err(CliError::Usage("budgets must be positive".into()));
        }
        Ok(())
    }

    pub fn build(&self) -> BuildConfig {
        let closure = ClosureConfig { max_order: self.max_order, ..ClosureConfig::default() };
        BuildConfig { closure, mode: self.mode, ..BuildConfig::default() }
    }

    pub fn lattice(&self) -> LatticeConfig {
        LatticeConfig { max_subgroups: self.max_subgroups, mode: self.mode }
    }

    pub fn intensity(&self) -> IntensityConfig {
        IntensityConfig { budget_candidates: self.budget_candidates, mode: self.mode, lattice: self.lattice() }
    }

    pub fn pairs(&self) -> PairPolicy {
        PairPolicy { seed: self.seed, ..PairPolicy::default() }
    }
}

pub fn read_spec(path: &str) -> Result<GroupSpec> {
    let text = if path == "-" { std::io::read_to_string(std::io::stdin()) } else { std::fs::read_to_string(path) }
        .map_err(|source| CliError::Read { path: path.to_string(), source })?;
    Ok(GroupSpec::from_json(&text)?)
}

fn spec_value(spec: &GroupSpec) -> Result<Value> {
    Ok(serde_json::from_str(&spec.canonical_json()?).map_err(Error::from)?)
}

fn load(spec: &GroupSpec, cfg: &RunConfig, cache: &GroupCache) -> Result<Arc<GroupTable>> {
    Ok(cache.load_or_build(spec, &cfg.build())?.0)
}

/// An element as a word in the generators `g0, g1, ...`, runs collapsed.
pub fn format_word(g: &GroupTable, x: Elem) -> String {
    let word = g.word(x);
    if word.is_empty() {
        return "1".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let run = word[i..].iter().take_while(|&&s| s == word[i]).count();
        parts.push(if run == 1 { format!("g{}", word[i]) } else { format!("g{}^{run}", word[i]) });
        i += run;
    }
    parts.join("*")
}

fn optional(r: intensity_core::Result<bool>) -> Result<Option<bool>> {
    match r {
        Ok(b) => Ok(Some(b)),
        Err(Error::Precondition(_) | Error::NotAnObelisk) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AnalyzeResult {
    order: usize,
    p: u32,
    class: usize,
    widths: Vec<u32>,
    rank: u32,
    exponent: u32,
    frattini_order: usize,
    center_order: usize,
    derived_length: usize,
    lower_central_orders: Vec<usize>,
    power_central_orders: Vec<usize>,
    derived_orders: Vec<usize>,
    predicates: Predicates,
    lines: Option<Vec<LineRow>>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Predicates {
    abelian: bool,
    extraspecial: bool,
    /// Only defined for p = 3.
    kappa_group: Option<bool>,
    /// Only defined for p > 3.
    obelisk: Option<bool>,
    framed: Option<bool>,
    lines_criterion: Option<bool>,
    regular: bool,
    regular_exhaustive: bool,
    regular_pairs_checked: u64,
    power_abelian: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct LineRow {
    representative: String,
    lines_condition: bool,
    frattini_condition: bool,
}

pub fn analyze(spec: &GroupSpec, cfg: &RunConfig, cache: &GroupCache) -> Result<Report> {
    let g = load(spec, cfg, cache)?;
    let s = SeriesData::compute(&g)?;
    let p = s.p;
    let orders = |v: &[intensity_core::group::Subgroup]| v.iter().map(|h| h.order()).collect::<Vec<_>>();
    let obelisk = if p > 3 { optional(is_obelisk(&g, &s))? } else { None };
    let ob = obelisk == Some(true);
    let framed = if ob { optional(is_framed(&g, &s))? } else { None };
    let criterion = if ob && s.class() >= 3 { optional(lines_criterion(&g, &s))? } else { None };
    let lines = if ob {
        let rows = line_checks(&g, &s)?
            .into_iter()
            .map(|l| LineRow {
                representative: format_word(&g, l.representative),
                lines_condition: l.lines_condition,
                frattini_condition: l.frattini_condition,
            })
            .collect();
        Some(rows)
    } else {
        None
    };
    let reg = is_regular(&g, &s, &cfg.pairs(), cfg.mode);
    let result = AnalyzeResult {
        order: g.order(),
        p,
        class: s.class(),
        widths: s.widths.clone(),
        rank: s.rank(&g),
        exponent: g.exponent(),
        frattini_order: s.frattini.order(),
        center_order: g.center().order(),
        derived_length: s.derived.iter().filter(|h| !h.is_trivial()).count(),
        lower_central_orders: orders(&s.lcs),
        power_central_orders: orders(&s.pcs),
        derived_orders: orders(&s.derived),
        predicates: Predicates {
            abelian: g.is_abelian(),
            extraspecial: is_extraspecial(&g, &s),
            kappa_group: (p == 3).then(|| is_kappa_group(&g, &s)),
            obelisk,
            framed,
            lines_criterion: criterion,
            regular: reg.regular,
            regular_exhaustive: reg.exhaustive,
            regular_pairs_checked: reg.pairs_checked,
            power_abelian: power_abelian_report(&g, &s).holds,
        },
        lines,
    };
    Report::new("analyze", spec_value(spec)?, result)
}

pub fn intensity_report(spec: &GroupSpec, cfg: &RunConfig, cache: &GroupCache) -> Result<Report> {
    let g = load(spec, cfg, cache)?;
    let r = intensity(&g, &cfg.intensity())?;
    let mut value = serde_json::to_value(&r).map_err(Error::from)?;
    // Witness words are index lists; add readable forms alongside them.
    if let Some(ws) = value.get_mut("witnesses").and_then(Value::as_array_mut) {
        for (w, src) in ws.iter_mut().zip(&r.witnesses) {
            let fmt = |xs: &[Elem]| xs.iter().map(|&x| format_word(&g, x)).collect::<Vec<_>>();
            w["generatorsText"] = fmt(&src.generators).into();
            w["imagesText"] = fmt(&src.images).into();
        }
    }
    Report::new("intensity", spec_value(spec)?, value)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SubgroupRow {
    id: u32,
    order: usize,
    class: u32,
    normal: bool,
    generators: Vec<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ClassRow {
    class: u32,
    representative: u32,
    order: usize,
    size: usize,
    normal: bool,
    generators: Vec<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SubgroupsResult {
    order: usize,
    subgroup_count: usize,
    class_count: usize,
    normal_count: usize,
    count_by_order: std::collections::BTreeMap<usize, usize>,
    class_size_histogram: std::collections::BTreeMap<usize, usize>,
    classes: Vec<ClassRow>,
    subgroups: Option<Vec<SubgroupRow>>,
}

pub fn subgroups(spec: &GroupSpec, classes_only: bool, cfg: &RunConfig, cache: &GroupCache) -> Result<Report> {
    let g = load(spec, cfg, cache)?;
    let lat = SubgroupLattice::build(&g, &cfg.lattice())?;
    let words = |id: u32| lat.get(id).gens().iter().map(|&x| format_word(&g, x)).collect::<Vec<_>>();
    let mut normal: Vec<u32> = lat.normal_subgroups();
    normal.sort_unstable();
    let classes = lat
        .classes()
        .iter()
        .enumerate()
        .map(|(c, members)| ClassRow {
            class: c as u32,
            representative: members[0],
            order: lat.get(members[0]).order(),
            size: members.len(),
            normal: members.len() == 1,
            generators: words(members[0]),
        })
        .collect();
    let listing = (!classes_only).then(|| {
        (0..lat.len() as u32)
            .map(|id| SubgroupRow {
                id,
                order: lat.get(id).order(),
                class: lat.class_of(id),
                normal: normal.binary_search(&id).is_ok(),
                generators: words(id),
            })
            .collect()
    });
    let result = SubgroupsResult {
        order: g.order(),
        subgroup_count: lat.len(),
        class_count: lat.classes().len(),
        normal_count: normal.len(),
        count_by_order: lat.count_by_order(),
        class_size_histogram: lat.class_size_histogram(),
        classes,
        subgroups: listing,
    };
    Report::new("subgroups", spec_value(spec)?, result)
}

pub fn kappa_structures() -> Result<Report> {
    Report::new("kappa-structures", Value::Null, KappaCertificate::compute()?)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyResult {
    pub passed: bool,
    pub strict: bool,
    pub criteria: Vec<CriterionRow>,
    pub checks: Vec<CheckRow>,
}

#[derive(Serialize)]
pub struct CriterionRow {
    pub criterion: u8,
    pub status: Status,
}

pub struct VerifyOutcome {
    pub report: Report,
    pub table: String,
    pub exit_code: i32,
}

pub fn verify_thesis(cfg: &RunConfig, strict: bool, only: Option<String>, budget: Duration) -> Result<VerifyOutcome> {
    if let Some(m) = &only {
        if !verify::MODULES.iter().any(|name| name.starts_with(m.as_str())) {
            return Err(CliError::Usage(format!("no module matches {m:?}; known: {}", verify::MODULES.join(", "))));
        }
    }
    let vcfg = VerifyConfig { mode: cfg.mode, budget, only: only.clone(), intensity_budget: cfg.budget_candidates };
    let rows = verify::run(&vcfg);
    let passed = verify::succeeded(&rows, strict);
    let any_failed = rows.iter().any(|r| r.status == Status::Fail);
    let exit_code = match (passed, any_failed) {
        (true, _) => crate::exit::SUCCESS,
        (false, true) => crate::exit::CHECK_FAILED,
        (false, false) => crate::exit::CAPACITY,
    };
    let criteria: Vec<CriterionRow> = verify::criteria_summary(&rows)
        .into_iter()
        .map(|(criterion, status)| CriterionRow { criterion, status })
        .collect();
    let table = text_table(&rows, &criteria);
    let input = serde_json::json!({ "strict": strict, "only": only, "budgetSeconds": budget.as_secs() });
    let report = Report::new("verify-thesis", input, VerifyResult { passed, strict, criteria, checks: rows })?;
    Ok(VerifyOutcome { report, table, exit_code })
}

fn text_table(rows: &[CheckRow], criteria: &[CriterionRow]) -> String {
    let mut out = String::new();
    for r in rows {
        let crit = r.criterion.map(|c| format!("[{c}]")).unwrap_or_default();
        out.push_str(&format!(
            "{:<15} {:<34} {:<18} {:>8} ms {crit}\n    expected: {}\n    computed: {}\n    basis:    {}\n",
            r.status.label(),
            r.id,
            r.module,
            r.elapsed_ms,
            r.expected,
            r.computed,
            r.reference
        ));
    }
    if !criteria.is_empty() {
        out.push_str("\ncriteria:\n");
        for c in criteria {
            out.push_str(&format!("  criterion {}: {}\n", c.criterion, c.status.label()));
        }
    }
    let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
    out.push_str(&format!(
        "\n{} checks: {} passed, {} failed, {} skipped\n",
        rows.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skipped)
    ));
    out
}
