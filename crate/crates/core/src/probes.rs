//! Searches for counterexamples to open statements, plus regression checks
//! for statements already known to fail.
//!
//! Nothing is labeled a counterexample until the brute-force oracle agrees
//! with the solvers on the numbers involved (for `n <= 20`). A disagreement
//! is reported under its own property id, since it means a solver bug.

use num_integer::Integer;
use rayon::prelude::*;
use serde_json::{json, Value as Json};

use crate::bounds::{Outcome, PropertyReport};
use crate::designs::{shipped_design, validate_bibd};
use crate::distribution::{
    compute_distribution, distribution_with, probe_points, Bound, Distribution, Kind, RationalInterval, Value,
};
use crate::error::Result;
use crate::hypergraph::{serialize_hypergraph, Hypergraph};
use crate::proportion::{classify_edge, Proportion};
use crate::random::{random_hypergraph, RandomParams};
use crate::solvers::oracle::{brute_force_burn, brute_force_lazy, ORACLE_MAX_VERTICES};
use crate::solvers::SearchConfig;

pub const CONTAINMENT: &str = "interval-containment";
pub const CEIL_PV: &str = "ceil-pv";
pub const ORACLE_MISMATCH: &str = "solver-matches-oracle";

/// Per-input reports in trial order, and their conjunction.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeRun {
    pub reports: Vec<PropertyReport>,
    pub summary: PropertyReport,
}

impl ProbeRun {
    fn new(property: &str, inputs: String, reports: Vec<PropertyReport>) -> Self {
        let violations: Vec<&PropertyReport> = reports.iter().filter(|r| r.is_violation()).collect();
        let checked = reports.iter().filter(|r| !r.is_skipped()).count();
        let outcome = match violations.first() {
            None => Outcome::Holds,
            Some(first) => Outcome::Violated {
                witness: json!({
                    "violations": violations.len(),
                    "first": serde_json::to_value(first).expect("report serializes"),
                }),
            },
        };
        let summary = PropertyReport {
            property: property.to_string(),
            inputs: format!("{inputs} checked={checked} total={}", reports.len()),
            outcome,
        };
        ProbeRun { reports, summary }
    }

    pub fn has_violation(&self) -> bool {
        self.summary.is_violation()
    }
}

fn report(property: &str, inputs: String, outcome: Outcome) -> PropertyReport {
    PropertyReport {
        property: property.to_string(),
        inputs,
        outcome,
    }
}

fn skipped(property: &str, inputs: String, reason: &str) -> PropertyReport {
    report(property, inputs, Outcome::Skipped { reason: reason.into() })
}

fn describe(h: &Hypergraph) -> String {
    format!("n={} m={}", h.vertex_count(), h.edge_count())
}

fn oracle_distribution(h: &Hypergraph, kind: Kind) -> Result<Distribution> {
    distribution_with(h, kind, |p| {
        Ok(Value::Exact(match kind {
            Kind::Lazy => brute_force_lazy(h, p),
            Kind::Burning => brute_force_burn(h, p),
        }))
    })
}

/// First lazy interval not inside any single burning interval.
fn uncontained(lazy: &Distribution, burning: &Distribution) -> Option<RationalInterval> {
    lazy.intervals
        .iter()
        .map(|&(iv, _)| iv)
        .find(|iv| !burning.intervals.iter().any(|(b, _)| iv.is_subset(b)))
}

/// Whether every interval of the lazy distribution lies inside one interval
/// of the burning distribution; equivalently, equal lazy numbers at `p` and
/// `q` force equal burning numbers.
pub fn interval_containment(h: &Hypergraph, cfg: &SearchConfig) -> Result<PropertyReport> {
    let inputs = describe(h);
    let lazy = compute_distribution(h, Kind::Lazy, cfg)?;
    let burning = compute_distribution(h, Kind::Burning, cfg)?;
    if !lazy.is_complete() || !burning.is_complete() {
        return Ok(skipped(CONTAINMENT, inputs, "solver budget exhausted"));
    }
    let Some(bad) = uncontained(&lazy, &burning) else {
        return Ok(report(CONTAINMENT, inputs, Outcome::Holds));
    };
    let mut witness = json!({
        "hypergraph": serialize_hypergraph(h),
        "interval": bad.to_string(),
        "lazy": serde_json::to_value(&lazy).expect("serializes"),
        "burning": serde_json::to_value(&burning).expect("serializes"),
        "confirmed_by": "solvers",
    });
    if h.vertex_count() <= ORACLE_MAX_VERTICES {
        let ol = oracle_distribution(h, Kind::Lazy)?;
        let ob = oracle_distribution(h, Kind::Burning)?;
        if ol != lazy || ob != burning {
            return Ok(report(ORACLE_MISMATCH, inputs, Outcome::Violated { witness }));
        }
        witness["confirmed_by"] = json!("brute force");
    }
    Ok(report(CONTAINMENT, inputs, Outcome::Violated { witness }))
}

fn trial_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_add(i as u64)
}

fn params_text(p: &RandomParams) -> String {
    format!(
        "n={} m={} sizes={}..={} dedup={} connected={}",
        p.n, p.m, p.size_lo, p.size_hi, p.dedup, p.connected
    )
}

/// Interval containment on `trials` random hypergraphs; trial `i` uses
/// seed `seed + i`.
pub fn probe_conjecture_interval_containment(
    params: &RandomParams,
    trials: usize,
    seed: u64,
    cfg: &SearchConfig,
) -> Result<ProbeRun> {
    let reports: Vec<PropertyReport> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = trial_seed(seed, i);
            match random_hypergraph(params, s) {
                Ok(h) => interval_containment(&h, cfg).map(|mut r| {
                    r.inputs = format!("seed={s} {}", r.inputs);
                    r
                }),
                Err(e) => Ok(skipped(CONTAINMENT, format!("seed={s}"), &e.to_string())),
            }
        })
        .collect::<Result<_>>()?;
    Ok(ProbeRun::new(
        CONTAINMENT,
        format!("{} trials={trials} seed={seed}", params_text(params)),
        reports,
    ))
}

/// `b_{L,p} <= ⌈p|V|⌉` at one `p` with the lazy number already known.
/// Applies to connected hypergraphs with no non-flammable edge (singletons
/// aside).
pub fn ceil_pv_check(h: &Hypergraph, p: Proportion, lazy: usize) -> PropertyReport {
    let n = h.vertex_count();
    let inputs = format!("{} p={p} lazy={lazy}", describe(h));
    if !h.is_connected() {
        return skipped(CEIL_PV, inputs, "not connected");
    }
    let flammable = h
        .edges()
        .iter()
        .filter(|e| e.len() >= 2)
        .all(|e| classify_edge(p, e.len()).is_flammable());
    if !flammable {
        return skipped(CEIL_PV, inputs, "non-flammable edge present");
    }
    let bound = (p.num() as u128 * n as u128).div_ceil(p.den() as u128) as usize;
    let outcome = if lazy <= bound {
        Outcome::Holds
    } else {
        Outcome::Violated {
            witness: json!({
                "hypergraph": serialize_hypergraph(h),
                "p": p.to_string(),
                "lazy": lazy,
                "bound": bound,
            }),
        }
    };
    report(CEIL_PV, inputs, outcome)
}

/// Relabel a solver-backed violation as an oracle mismatch when brute force
/// disagrees with the lazy value it claims.
fn confirm_ceil_pv(h: &Hypergraph, p: Proportion, mut r: PropertyReport) -> PropertyReport {
    if let Some(w) = r.witness() {
        if h.vertex_count() <= ORACLE_MAX_VERTICES {
            let truth = brute_force_lazy(h, p);
            if Some(truth as u64) != w["lazy"].as_u64() {
                r.property = ORACLE_MISMATCH.into();
            } else if let Outcome::Violated { witness } = &mut r.outcome {
                witness["confirmed_by"] = json!("brute force");
            }
        }
    }
    r
}

/// Smallest value of `⌈p|V|⌉` over `p` in a threshold interval, and a `p`
/// attaining it. On `(lo, hi]` it is `⌊lo·n⌋ + 1`, reached at
/// `min(hi, (⌊lo·n⌋ + 1)/n)`.
fn hardest_point(iv: &RationalInterval, probe: Proportion, n: usize) -> Proportion {
    let n64 = n as u64;
    let (lo_num, lo_den) = match iv.lo {
        Bound::Zero => (0, 1),
        Bound::At(q) => (q.num(), q.den()),
        Bound::One => unreachable!("intervals start below 1"),
    };
    let k = Integer::div_floor(&(lo_num * n64), &lo_den) + 1;
    if k >= n64 {
        // ⌈p n⌉ = n throughout; any point works
        return probe;
    }
    let cand = Proportion::new(k, n64).expect("0 < k < n");
    match iv.hi {
        Bound::At(hi) if hi < cand => hi,
        _ => cand,
    }
}

/// The bound at the hardest point of every threshold interval, so a pass
/// covers every `p ∈ (0, 1)`.
pub fn ceil_pv_everywhere(h: &Hypergraph, cfg: &SearchConfig) -> Result<Vec<PropertyReport>> {
    let lazy = compute_distribution(h, Kind::Lazy, cfg)?;
    let n = h.vertex_count();
    Ok(probe_points(h)
        .into_iter()
        .map(|(iv, probe)| {
            let p = hardest_point(&iv, probe, n);
            match lazy.value_at(probe) {
                Value::Exact(b) => confirm_ceil_pv(h, p, ceil_pv_check(h, p, b)),
                Value::Unknown { .. } => skipped(CEIL_PV, format!("{} p={p}", describe(h)), "solver budget exhausted"),
            }
        })
        .collect())
}

/// An edge of size 5 with two vertices shared with a triangle-shaped edge
/// (x = 2, y = 3) at 13/20, and two triples sharing one vertex (x = 1,
/// y = 2) at 2/5.
pub fn ceil_pv_fixed_cases() -> Vec<(&'static str, Hypergraph, Proportion)> {
    let a = Hypergraph::new(6, vec![vec![0, 1, 2, 3, 4], vec![0, 1, 5]]).expect("valid");
    let b = Hypergraph::new(5, vec![vec![0, 1, 2], vec![0, 3, 4]]).expect("valid");
    vec![
        ("x=2 y=3", a, Proportion::new(13, 20).expect("valid")),
        ("x=1 y=2", b, Proportion::new(2, 5).expect("valid")),
    ]
}

/// Fixed cases first, then `trials` random hypergraphs (seed `seed + i`),
/// each checked at `p` when given and at every interval's hardest point
/// otherwise.
pub fn probe_conjecture_ceil_pv(
    params: &RandomParams,
    p: Option<Proportion>,
    trials: usize,
    seed: u64,
    cfg: &SearchConfig,
) -> Result<ProbeRun> {
    let at = |h: &Hypergraph, p: Proportion| -> Result<PropertyReport> {
        let lazy = crate::distribution::evaluate(h, Kind::Lazy, p, cfg)?;
        Ok(match lazy {
            Value::Exact(b) => confirm_ceil_pv(h, p, ceil_pv_check(h, p, b)),
            Value::Unknown { .. } => skipped(CEIL_PV, format!("{} p={p}", describe(h)), "solver budget exhausted"),
        })
    };
    let mut reports = Vec::new();
    for (name, h, q) in ceil_pv_fixed_cases() {
        let mut r = at(&h, q)?;
        r.inputs = format!("fixed {name} {}", r.inputs);
        reports.push(r);
    }
    let random: Vec<Vec<PropertyReport>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = trial_seed(seed, i);
            let h = match random_hypergraph(params, s) {
                Ok(h) => h,
                Err(e) => return Ok(vec![skipped(CEIL_PV, format!("seed={s}"), &e.to_string())]),
            };
            let mut rs = match p {
                Some(q) => vec![at(&h, q)?],
                None => ceil_pv_everywhere(&h, cfg)?,
            };
            for r in &mut rs {
                r.inputs = format!("seed={s} {}", r.inputs);
            }
            Ok(rs)
        })
        .collect::<Result<_>>()?;
    reports.extend(random.into_iter().flatten());
    let p_text = p.map_or_else(|| "every interval".to_string(), |q| q.to_string());
    Ok(ProbeRun::new(
        CEIL_PV,
        format!("{} p={p_text} trials={trials} seed={seed}", params_text(params)),
        reports,
    ))
}

/// Lazy and burning numbers on each threshold interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GapPoint {
    pub interval: RationalInterval,
    pub lazy: Value,
    pub burn: Value,
}

impl GapPoint {
    pub fn gap(&self) -> Option<usize> {
        Some(self.burn.exact()? - self.lazy.exact()?)
    }
}

pub fn gap_profile(h: &Hypergraph, cfg: &SearchConfig) -> Result<Vec<GapPoint>> {
    let lazy = compute_distribution(h, Kind::Lazy, cfg)?;
    let burn = compute_distribution(h, Kind::Burning, cfg)?;
    Ok(probe_points(h)
        .into_iter()
        .map(|(interval, p)| GapPoint {
            interval,
            lazy: lazy.value_at(p),
            burn: burn.value_at(p),
        })
        .collect())
}

/// Intervals `i < j` with a larger gap at `j`, if any.
pub fn increasing_gap(profile: &[GapPoint]) -> Option<(usize, usize)> {
    let gaps: Vec<Option<usize>> = profile.iter().map(GapPoint::gap).collect();
    (0..gaps.len()).find_map(|i| {
        let gi = gaps[i]?;
        (i + 1..gaps.len()).find(|&j| gaps[j].is_some_and(|gj| gj > gi)).map(|j| (i, j))
    })
}

fn profile_json(profile: &[GapPoint]) -> Json {
    profile
        .iter()
        .map(|g| {
            json!({
                "interval": g.interval.to_string(),
                "lazy": g.lazy.to_string(),
                "burn": g.burn.to_string(),
                "gap": g.gap(),
            })
        })
        .collect()
}

/// The burning-minus-lazy gap of the projective plane of order 3 (the
/// shipped `pg23` block list, read through the corpus loader) is
/// `1, 1, 2, 0` across the quarter intervals, so it can grow with `p`.
pub fn check_difference_nonmonotone_example(cfg: &SearchConfig) -> Result<PropertyReport> {
    const ID: &str = "gap-grows-on-13-4-1";
    let design = shipped_design("pg23").expect("pg23 is shipped");
    let h = validate_bibd(&design.hypergraph, 13, 4, 1)?.hypergraph;
    let profile = gap_profile(&h, cfg)?;
    let inputs = format!("{} design=pg23", describe(&h));
    let gaps: Vec<Option<usize>> = profile.iter().map(GapPoint::gap).collect();
    if gaps.iter().any(Option::is_none) {
        return Ok(skipped(ID, inputs, "solver budget exhausted"));
    }
    let expected = [Some(1), Some(1), Some(2), Some(0)];
    let ok = gaps == expected && increasing_gap(&profile).is_some();
    let outcome = if ok {
        Outcome::Holds
    } else {
        Outcome::Violated {
            witness: json!({"hypergraph": serialize_hypergraph(&h), "profile": profile_json(&profile)}),
        }
    };
    Ok(report(ID, inputs, outcome))
}

/// A single edge of size `k` has gap 1 on every interval but the last,
/// where it is 0 (lazy `t`, burning `min(t + 1, k)` at threshold `t`), so
/// its gap never grows.
pub fn single_edge_gap_check(k: usize, cfg: &SearchConfig) -> Result<PropertyReport> {
    let h = crate::generators::gen_single_edge(k)?;
    let profile = gap_profile(&h, cfg)?;
    let expected: Vec<Option<usize>> = (1..=k).map(|t| Some(usize::from(t < k))).collect();
    let gaps: Vec<Option<usize>> = profile.iter().map(GapPoint::gap).collect();
    let ok = gaps == expected && increasing_gap(&profile).is_none();
    let outcome = if ok {
        Outcome::Holds
    } else {
        Outcome::Violated {
            witness: json!({"hypergraph": serialize_hypergraph(&h), "profile": profile_json(&profile)}),
        }
    };
    Ok(report("single-edge-gaps", format!("k={k}"), outcome))
}
