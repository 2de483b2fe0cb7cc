//! Bound-checking campaigns over generated instances.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::construct::{approx_multipacking, radius_bound, Branch};
use crate::error::Result;
use crate::families::{gen_gk, gk_optimal_broadcast, random_cactus, RandomCactusParams, SplitMix64};
use crate::graph::Graph;
use crate::oracles::broadcast::Broadcast;
use crate::oracles::lp::lp_fractional;
use crate::oracles::search::{exact_domination, exact_gamma_b_with_hints, exact_mp, DEFAULT_BUDGET};
use crate::rational::{self, Rational};

/// Fixed CSV column order.
pub const CSV_COLUMNS: [&str; 14] = [
    "id",
    "seed",
    "n",
    "radius",
    "mp_exact",
    "gamma_b_exact",
    "domination_exact",
    "mp_f",
    "approx_size",
    "approx_bound",
    "branch",
    "ratio",
    "gap",
    "partial",
];

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    /// Include `G_1..=G_gk_max`.
    pub gk_max: usize,
    pub random_count: usize,
    /// Random instances draw `n` uniformly from `2..=n_max`.
    pub n_max: usize,
    /// Draw trees instead of cacti.
    pub trees_only: bool,
    pub max_cycle_len: usize,
    pub seed: u64,
    pub budget: u64,
    /// Abort once more rows than this end partial.
    pub max_partial_rows: Option<usize>,
}

impl Default for CampaignConfig {
    fn default() -> CampaignConfig {
        CampaignConfig {
            gk_max: 0,
            random_count: 0,
            n_max: 30,
            trees_only: false,
            max_cycle_len: 8,
            seed: 0,
            budget: DEFAULT_BUDGET,
            max_partial_rows: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignRow {
    pub id: String,
    pub seed: Option<u64>,
    pub n: usize,
    pub radius: usize,
    pub mp_exact: Option<usize>,
    pub gamma_b_exact: Option<usize>,
    pub domination_exact: Option<usize>,
    #[serde(with = "crate::rational")]
    pub mp_f: Rational,
    pub approx_size: usize,
    pub approx_bound: usize,
    pub branch: Branch,
    /// `γ_b / MP` when both are known.
    #[serde(serialize_with = "opt_rational")]
    pub ratio: Option<Rational>,
    pub gap: Option<usize>,
    pub partial: bool,
}

fn opt_rational<S: serde::Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&rational::format(r)),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignViolation {
    pub id: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub rows: Vec<CampaignRow>,
    #[serde(serialize_with = "opt_rational")]
    pub max_ratio: Option<Rational>,
    pub max_gap: Option<usize>,
    pub partial_rows: usize,
    pub aborted: bool,
    pub violations: Vec<CampaignViolation>,
}

impl CampaignReport {
    pub fn to_csv(&self) -> String {
        let mut out = CSV_COLUMNS.join(",");
        out.push('\n');
        let opt = |v: Option<usize>| v.map_or(String::new(), |x| x.to_string());
        for r in &self.rows {
            let fields = [
                r.id.clone(),
                r.seed.map_or(String::new(), |s| s.to_string()),
                r.n.to_string(),
                r.radius.to_string(),
                opt(r.mp_exact),
                opt(r.gamma_b_exact),
                opt(r.domination_exact),
                rational::format(&r.mp_f),
                r.approx_size.to_string(),
                r.approx_bound.to_string(),
                r.branch.to_string(),
                r.ratio.as_ref().map_or(String::new(), rational::format),
                opt(r.gap),
                r.partial.to_string(),
            ];
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }
}

struct Instance {
    id: String,
    seed: Option<u64>,
    graph: Graph,
    hint: Option<Broadcast>,
}

fn instances(cfg: &CampaignConfig) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for k in 1..=cfg.gk_max {
        let inst = gen_gk(k)?;
        out.push(Instance { id: format!("G_{k}"), seed: None, hint: Some(gk_optimal_broadcast(&inst)), graph: inst.graph });
    }
    let prob = if cfg.trees_only { Ratio::new(0, 1) } else { Ratio::new(1, 2) };
    let n_max = cfg.n_max.max(2);
    for i in 0..cfg.random_count as u64 {
        let seed = cfg.seed.wrapping_add(i);
        let n = 2 + SplitMix64::new(seed).below((n_max - 1) as u64) as usize;
        let graph = random_cactus(&RandomCactusParams::new(n, prob, cfg.max_cycle_len.max(3), seed))?;
        out.push(Instance { id: format!("random-{seed}"), seed: Some(seed), graph, hint: None });
    }
    Ok(out)
}

fn run_row(inst: &Instance, budget: u64) -> Result<(CampaignRow, Vec<String>)> {
    let g = &inst.graph;
    let approx = approx_multipacking(g)?;
    let rad = approx.radius;
    let lp = lp_fractional(g)?;
    let mp = exact_mp(g, budget)?.value;
    let hints: Vec<Broadcast> = inst.hint.iter().cloned().collect();
    let gb = exact_gamma_b_with_hints(g, budget, &hints)?.value;
    let dom = exact_domination(g, budget)?.value;
    let size = approx.multipacking.size();
    let bound = radius_bound(rad);

    let mut bad = Vec::new();
    let int = |v: usize| rational::int(v as i64);
    if size < bound {
        bad.push(format!("approx size {size} below radius bound {bound}"));
    }
    if let Some(mp) = mp {
        if int(mp) > lp.value {
            bad.push(format!("MP {mp} exceeds MP_f {}", lp.value));
        }
        if 3 * size + 11 < 2 * mp {
            bad.push(format!("approx size {size} below 2/3 MP - 11/3 with MP {mp}"));
        }
    }
    if let Some(gb) = gb {
        if lp.value > int(gb) {
            bad.push(format!("MP_f {} exceeds gamma_b {gb}", lp.value));
        }
        if gb > rad {
            bad.push(format!("gamma_b {gb} exceeds radius {rad}"));
        }
        if let Some(dom) = dom {
            if gb > dom {
                bad.push(format!("gamma_b {gb} exceeds domination number {dom}"));
            }
        }
    }
    let (ratio, gap) = match (mp, gb) {
        (Some(mp), Some(gb)) => {
            if mp > gb {
                bad.push(format!("MP {mp} exceeds gamma_b {gb}"));
            }
            if 2 * gb > 3 * mp + 11 {
                bad.push(format!("gamma_b {gb} exceeds 3/2 MP + 11/2 with MP {mp}"));
            }
            (Some(rational::ratio(gb as i64, mp as i64)), Some(gb.saturating_sub(mp)))
        }
        _ => (None, None),
    };
    let row = CampaignRow {
        id: inst.id.clone(),
        seed: inst.seed,
        n: g.n(),
        radius: rad,
        mp_exact: mp,
        gamma_b_exact: gb,
        domination_exact: dom,
        mp_f: lp.value,
        approx_size: size,
        approx_bound: bound,
        branch: approx.trace.branch,
        ratio,
        gap,
        partial: mp.is_none() || gb.is_none() || dom.is_none(),
    };
    Ok((row, bad))
}

/// Runs every configured instance through the approximation, the LP and the
/// exact searches, checking the bound chain on each row. Rows are computed in
/// parallel and reported in instance order.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport> {
    let insts = instances(cfg)?;
    let results: Vec<Result<(CampaignRow, Vec<String>)>> =
        super::with_thread_cap(|| insts.par_iter().map(|inst| run_row(inst, cfg.budget)).collect());
    let mut report = CampaignReport {
        rows: Vec::new(),
        max_ratio: None,
        max_gap: None,
        partial_rows: 0,
        aborted: false,
        violations: Vec::new(),
    };
    for res in results {
        let (row, bad) = res?;
        if row.partial {
            report.partial_rows += 1;
        }
        if let Some(r) = &row.ratio {
            if report.max_ratio.as_ref().is_none_or(|m| r > m) {
                report.max_ratio = Some(r.clone());
            }
        }
        report.max_gap = report.max_gap.max(row.gap);
        report.violations.extend(bad.into_iter().map(|message| CampaignViolation { id: row.id.clone(), message }));
        report.rows.push(row);
        if cfg.max_partial_rows.is_some_and(|lim| report.partial_rows > lim) {
            report.aborted = true;
            break;
        }
    }
    Ok(report)
}
