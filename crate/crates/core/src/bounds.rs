//! Proved bounds as executable predicates over solver outputs.
//!
//! Every check consumes values that were already computed, so a violation
//! points either at a solver bug or at a false statement. Singleton edges
//! are ignored throughout ("every edge is flammable" quantifies over edges
//! of size at least two) and parallel copies of an edge count once; both
//! only strengthen the checked inequalities, since neither changes any
//! burning number.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::bitset::VertexSet;
use crate::designs::validate_bibd;
use crate::distribution::probe_points;
use crate::error::{Error, Result};
use crate::hypergraph::{parse_hypergraph, serialize_hypergraph, Hypergraph};
use crate::propagation::{Engine, Rule};
use crate::proportion::{classify_edge, threshold, EdgeClass, Proportion};
use crate::solvers::oracle::{brute_force_burn, brute_force_lazy, ORACLE_MAX_VERTICES};
use crate::solvers::{burning_number, lazy_burning_number, SearchConfig};

/// Node cap for the exact smallest threshold cover.
pub const COVER_NODE_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Holds,
    /// Carries enough data to recompute and re-check the claim.
    Violated { witness: Json },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyReport {
    pub property: String,
    pub inputs: String,
    pub outcome: Outcome,
}

impl PropertyReport {
    fn new(property: &str, inputs: &str, outcome: Outcome) -> Self {
        PropertyReport {
            property: property.to_string(),
            inputs: inputs.to_string(),
            outcome,
        }
    }

    fn verdict(property: &str, inputs: &str, ok: bool, witness: impl FnOnce() -> Json) -> Self {
        let outcome = if ok {
            Outcome::Holds
        } else {
            Outcome::Violated { witness: witness() }
        };
        Self::new(property, inputs, outcome)
    }

    fn skipped(property: &str, inputs: &str, reason: impl Into<String>) -> Self {
        Self::new(property, inputs, Outcome::Skipped { reason: reason.into() })
    }

    pub fn holds(&self) -> bool {
        !self.is_violation()
    }

    pub fn is_violation(&self) -> bool {
        matches!(self.outcome, Outcome::Violated { .. })
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self.outcome, Outcome::Skipped { .. })
    }

    pub fn witness(&self) -> Option<&Json> {
        match &self.outcome {
            Outcome::Violated { witness } => Some(witness),
            _ => None,
        }
    }

    /// One JSON object, no trailing newline.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl Serialize for PropertyReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Line<'a> {
            property: &'a str,
            inputs: &'a str,
            status: &'static str,
            holds: bool,
            #[serde(skip_serializing_if = "Option::is_none")]
            reason: Option<&'a str>,
            #[serde(skip_serializing_if = "Option::is_none")]
            witness: Option<&'a Json>,
        }
        let (status, reason) = match &self.outcome {
            Outcome::Holds => ("holds", None),
            Outcome::Violated { .. } => ("violated", None),
            Outcome::Skipped { reason } => ("skipped", Some(reason.as_str())),
        };
        Line {
            property: &self.property,
            inputs: &self.inputs,
            status,
            holds: self.holds(),
            reason,
            witness: self.witness(),
        }
        .serialize(s)
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Holds => write!(f, "{} [{}]: holds", self.property, self.inputs),
            Outcome::Violated { witness } => {
                write!(f, "{} [{}]: VIOLATED {witness}", self.property, self.inputs)
            }
            Outcome::Skipped { reason } => {
                write!(f, "{} [{}]: skipped ({reason})", self.property, self.inputs)
            }
        }
    }
}

/// Exact numbers at one proportion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Observed {
    pub p: Proportion,
    pub lazy: usize,
    pub burn: usize,
}

/// Distinct edges of size at least two.
fn proper_edges(h: &Hypergraph) -> Vec<&Vec<usize>> {
    let set: BTreeSet<&Vec<usize>> = h.edges().iter().filter(|e| e.len() >= 2).collect();
    set.into_iter().collect()
}

fn all_flammable(edges: &[&Vec<usize>], p: Proportion) -> bool {
    edges.iter().all(|e| classify_edge(p, e.len()).is_flammable())
}

fn tau(p: Proportion, size: usize) -> usize {
    threshold(p, size).expect("edge sizes are below the vertex cap")
}

/// Exact minimum of `|S|` over sets meeting every edge `e` of size at least
/// two in at least `⌈p|e|⌉` vertices. `None` when the search exceeds
/// `budget` nodes.
pub fn min_threshold_cover(h: &Hypergraph, p: Proportion, budget: u64) -> Option<VertexSet> {
    let edges: Vec<(VertexSet, usize)> = proper_edges(h)
        .into_iter()
        .map(|e| (e.iter().collect(), tau(p, e.len())))
        .collect();
    struct Cover<'a> {
        edges: &'a [(VertexSet, usize)],
        nodes: u64,
        budget: u64,
    }
    impl Cover<'_> {
        /// Branch on the unmet edge with the fewest free vertices; the
        /// branches differ in which free vertex is the first one taken.
        fn dfs(&mut self, chosen: VertexSet, mut banned: VertexSet, left: usize) -> Option<Option<VertexSet>> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let mut pick: Option<(usize, VertexSet)> = None;
            for &(mask, t) in self.edges {
                let have = (mask & chosen).len();
                if have >= t {
                    continue;
                }
                let deficit = t - have;
                let free = mask - chosen - banned;
                if free.len() < deficit || deficit > left {
                    return Some(None);
                }
                if pick.map_or(true, |(_, f)| free.len() < f.len()) {
                    pick = Some((deficit, free));
                }
            }
            let Some((_, free)) = pick else {
                return Some(Some(chosen));
            };
            for u in free {
                if let Some(found) = self.dfs(chosen.with(u), banned, left - 1)? {
                    return Some(Some(found));
                }
                banned.insert(u);
            }
            Some(None)
        }
    }
    let lower = edges.iter().map(|&(_, t)| t).max().unwrap_or(0);
    let mut search = Cover {
        edges: &edges,
        nodes: 0,
        budget,
    };
    for size in lower..=h.vertex_count() {
        if let Some(found) = search.dfs(VertexSet::empty(), VertexSet::empty(), size)? {
            return Some(found);
        }
    }
    unreachable!("the full vertex set is a cover")
}

/// The single-`p` bounds, one report per statement. Inapplicable
/// hypotheses yield a skipped report with the reason.
pub fn check_theorems(h: &Hypergraph, p: Proportion, lazy: usize, burn: usize) -> Vec<PropertyReport> {
    let n = h.vertex_count();
    let edges = proper_edges(h);
    let inputs = format!("n={n} m={} p={p} lazy={lazy} burn={burn}", h.edge_count());
    let inp = inputs.as_str();
    let isolated = !h.isolated_vertices().is_empty();
    let flammable = all_flammable(&edges, p);
    let taus: Vec<usize> = edges.iter().map(|e| tau(p, e.len())).collect();
    let sum_tau: usize = taus.iter().sum();
    let base = || {
        json!({
            "hypergraph": serialize_hypergraph(h),
            "p": p.to_string(),
            "lazy": lazy,
            "burn": burn,
        })
    };
    let with = |extra: Json| {
        let mut w = base();
        if let (Json::Object(m), Json::Object(x)) = (&mut w, extra) {
            m.extend(x);
        }
        w
    };
    let mut out = Vec::new();

    out.push(PropertyReport::verdict("lazy-at-most-burn", inp, lazy <= burn, base));

    out.push(match taus.iter().min() {
        Some(&m) => PropertyReport::verdict("min-threshold-lower", inp, m <= lazy, || with(json!({"bound": m}))),
        None => PropertyReport::skipped("min-threshold-lower", inp, "no edge of size at least two"),
    });

    let no_isolated = "isolated vertex present";
    let nonflam = "non-flammable edge present";
    out.push(if isolated {
        PropertyReport::skipped("strict-gap-when-flammable", inp, no_isolated)
    } else if !flammable {
        PropertyReport::skipped("strict-gap-when-flammable", inp, nonflam)
    } else {
        PropertyReport::verdict("strict-gap-when-flammable", inp, lazy < burn, base)
    });

    out.push(if isolated {
        PropertyReport::skipped("threshold-cover-upper", inp, no_isolated)
    } else {
        match min_threshold_cover(h, p, COVER_NODE_BUDGET) {
            Some(cover) => {
                let c = cover.len();
                PropertyReport::verdict("threshold-cover-upper", inp, lazy <= c && burn <= c + 1, || {
                    with(json!({"cover": cover.to_vec()}))
                })
            }
            None => PropertyReport::skipped("threshold-cover-upper", inp, "cover search budget exhausted"),
        }
    });

    out.push(if isolated {
        PropertyReport::skipped("threshold-sum-upper", inp, no_isolated)
    } else {
        PropertyReport::verdict("threshold-sum-upper", inp, lazy <= sum_tau && burn <= sum_tau + 1, || {
            with(json!({"bound": sum_tau}))
        })
    });

    let largest = edges.iter().map(|e| e.len()).max().unwrap_or(0);
    let by_largest = if largest >= 2 { tau(p, largest) * edges.len() } else { 0 };
    out.push(if isolated {
        PropertyReport::skipped("largest-edge-upper", inp, no_isolated)
    } else {
        PropertyReport::verdict("largest-edge-upper", inp, lazy <= by_largest && burn <= by_largest + 1, || {
            with(json!({"bound": by_largest}))
        })
    });

    // Stated without the isolated-vertex hypothesis, which it needs: one
    // edge plus isolated vertices breaks it.
    out.push(if !h.uniformity().is_some_and(|k| k >= 2) {
        PropertyReport::skipped("uniform-upper", inp, "not uniform")
    } else if isolated {
        PropertyReport::skipped("uniform-upper", inp, no_isolated)
    } else {
        PropertyReport::verdict("uniform-upper", inp, lazy <= by_largest && burn <= by_largest + 1, || {
            with(json!({"bound": by_largest}))
        })
    });

    out.push(if isolated {
        PropertyReport::skipped("combined-chain", inp, no_isolated)
    } else if !flammable {
        PropertyReport::skipped("combined-chain", inp, nonflam)
    } else if let Some(&m) = taus.iter().min() {
        PropertyReport::verdict("combined-chain", inp, m <= lazy && lazy < burn && burn <= 1 + sum_tau, || {
            with(json!({"min_threshold": m, "threshold_sum": sum_tau}))
        })
    } else {
        PropertyReport::skipped("combined-chain", inp, "no edge of size at least two")
    });

    let connected = h.is_connected();
    out.push(match p.unit_fraction() {
        None => PropertyReport::skipped("unit-fraction-upper", inp, "p is not 1/n"),
        Some(_) if !connected => PropertyReport::skipped("unit-fraction-upper", inp, "not connected"),
        Some(d) => {
            let bound = n.div_ceil(d as usize);
            PropertyReport::verdict("unit-fraction-upper", inp, lazy <= bound, || with(json!({"bound": bound})))
        }
    });

    // Largest d >= 2 with p <= 1/d, i.e. floor(1/p).
    let d = p.den() / p.num();
    out.push(if d < 2 {
        PropertyReport::skipped("at-most-half-upper", inp, "p above 1/2")
    } else if !connected {
        PropertyReport::skipped("at-most-half-upper", inp, "not connected")
    } else {
        let bound = n.div_ceil(d as usize);
        PropertyReport::verdict("at-most-half-upper", inp, lazy <= bound, || with(json!({"bound": bound})))
    });

    out.push(if lazy != 1 {
        PropertyReport::skipped("single-source-rounds", inp, "lazy burning number is not 1")
    } else {
        let bound = edges.len() + 1;
        PropertyReport::verdict("single-source-rounds", inp, burn <= bound, || with(json!({"bound": bound})))
    });

    let none_flammable = edges.iter().all(|e| classify_edge(p, e.len()) == EdgeClass::NonFlammable);
    out.push(if !none_flammable {
        PropertyReport::skipped("non-flammable-equal", inp, "flammable edge present")
    } else {
        PropertyReport::verdict("non-flammable-equal", inp, lazy == n && burn == n, base)
    });

    out.push(match balanced_design_k(h) {
        None => PropertyReport::skipped("design-small-proportion", inp, "not a balanced design"),
        Some(k) if p.as_ratio() > Ratio::new(1, k as u64) => {
            PropertyReport::skipped("design-small-proportion", inp, "p above 1/k")
        }
        Some(_) => PropertyReport::verdict("design-small-proportion", inp, lazy == 1 && burn == 2, base),
    });

    out
}

/// Block size when `h` is a 2-design with at least one block.
fn balanced_design_k(h: &Hypergraph) -> Option<usize> {
    let k = h.uniformity()?;
    let n = h.vertex_count();
    if k < 2 || n < 2 {
        return None;
    }
    let lambda = h.edges().iter().filter(|e| e.contains(&0) && e.contains(&1)).count();
    validate_bibd(h, n, k, lambda).ok().map(|_| k)
}

/// Both burning numbers are non-decreasing in `p`.
pub fn check_monotonicity(h: &Hypergraph, observed: &[Observed]) -> Vec<PropertyReport> {
    let mut obs = observed.to_vec();
    obs.sort_by_key(|o| o.p);
    let inputs = format!("n={} m={} points={}", h.vertex_count(), h.edge_count(), obs.len());
    let pairs = || obs.windows(2).map(|w| (w[0], w[1]));
    let witness = |a: Observed, b: Observed| {
        json!({
            "hypergraph": serialize_hypergraph(h),
            "p": a.p.to_string(), "lazy_p": a.lazy, "burn_p": a.burn,
            "q": b.p.to_string(), "lazy_q": b.lazy, "burn_q": b.burn,
        })
    };
    let lazy_bad = pairs().find(|(a, b)| a.lazy > b.lazy);
    let burn_bad = pairs().find(|(a, b)| a.burn > b.burn);
    vec![
        PropertyReport::verdict("monotone-lazy", &inputs, lazy_bad.is_none(), || {
            let (a, b) = lazy_bad.unwrap();
            witness(a, b)
        }),
        PropertyReport::verdict("monotone-burn", &inputs, burn_bad.is_none(), || {
            let (a, b) = burn_bad.unwrap();
            witness(a, b)
        }),
    ]
}

/// When every edge is flammable at `p`, both numbers are at most their
/// values under the all-but-one rule.
pub fn check_original_comparison(h: &Hypergraph, at: Observed, orig_lazy: usize, orig_burn: usize) -> Vec<PropertyReport> {
    let inputs = format!(
        "n={} m={} p={} lazy={} burn={} original lazy={orig_lazy} burn={orig_burn}",
        h.vertex_count(),
        h.edge_count(),
        at.p,
        at.lazy,
        at.burn
    );
    if !all_flammable(&proper_edges(h), at.p) {
        return ["original-rule-lazy", "original-rule-burn"]
            .iter()
            .map(|id| PropertyReport::skipped(id, &inputs, "non-flammable edge present"))
            .collect();
    }
    let witness = || {
        json!({
            "hypergraph": serialize_hypergraph(h),
            "p": at.p.to_string(), "lazy": at.lazy, "burn": at.burn,
            "original_lazy": orig_lazy, "original_burn": orig_burn,
        })
    };
    vec![
        PropertyReport::verdict("original-rule-lazy", &inputs, at.lazy <= orig_lazy, witness),
        PropertyReport::verdict("original-rule-burn", &inputs, at.burn <= orig_burn, witness),
    ]
}

/// `⌈a⌉ + ⌊b⌋ <= ⌈a + b⌉`, exactly.
pub fn ceil_floor_lemma_check(a: Ratio<i64>, b: Ratio<i64>) -> bool {
    a.ceil() + b.floor() <= (a + b).ceil()
}

/// Exact lazy and burning numbers, from the brute-force oracle when it
/// applies and from the solvers otherwise. `None` if a solver ran out of
/// budget.
pub fn exact_values(h: &Hypergraph, rule: Rule, cfg: &SearchConfig) -> Result<Option<(usize, usize)>> {
    let lazy = lazy_burning_number(h, rule, cfg)?;
    let burn = burning_number(h, rule, cfg)?;
    Ok(lazy.value().zip(burn.value()))
}

/// Every check at one point inside each threshold interval, at `1/d` for
/// every `2 <= d <= |V|`, across points for monotonicity, and against the
/// all-but-one rule. Points whose values the solvers cannot certify are
/// reported as skipped.
pub fn theorem_suite(h: &Hypergraph, cfg: &SearchConfig) -> Result<Vec<PropertyReport>> {
    let probes = probe_points(h);
    let solved: Vec<Option<Observed>> = probes
        .par_iter()
        .map(|&(_, p)| {
            Ok(exact_values(h, p.into(), cfg)?.map(|(lazy, burn)| Observed { p, lazy, burn }))
        })
        .collect::<Result<_>>()?;

    let mut points: Vec<Proportion> = probes.iter().map(|&(_, p)| p).collect();
    for d in 2..=h.vertex_count() as u64 {
        points.push(Proportion::new(1, d)?);
    }
    points.sort();
    points.dedup();

    let mut out = Vec::new();
    for p in points {
        let slot = probes.iter().position(|(iv, _)| iv.contains(p)).expect("probe intervals cover (0,1)");
        match solved[slot] {
            Some(o) => out.extend(check_theorems(h, p, o.lazy, o.burn)),
            None => out.push(PropertyReport::skipped(
                "suite",
                &format!("n={} m={} p={p}", h.vertex_count(), h.edge_count()),
                "solver budget exhausted",
            )),
        }
    }
    let observed: Vec<Observed> = solved.iter().flatten().copied().collect();
    out.extend(check_monotonicity(h, &observed));
    if let Some((ol, ob)) = exact_values(h, Rule::Original, cfg)? {
        for &o in &observed {
            out.extend(check_original_comparison(h, o, ol, ob));
        }
    }
    Ok(out)
}

fn field<'a>(w: &'a Json, key: &str) -> Result<&'a Json> {
    w.get(key).ok_or_else(|| Error::InvalidParameters(format!("witness lacks `{key}`")))
}

fn field_usize(w: &Json, key: &str) -> Result<usize> {
    field(w, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::InvalidParameters(format!("witness `{key}` is not an integer")))
}

fn field_p(w: &Json, key: &str) -> Result<Proportion> {
    field(w, key)?
        .as_str()
        .ok_or_else(|| Error::InvalidParameters(format!("witness `{key}` is not a string")))?
        .parse()
}

/// Recompute the numbers behind a violation from scratch (brute force
/// when small enough) and report whether the same property still fails.
/// Non-violations revalidate trivially.
pub fn revalidate(report: &PropertyReport, cfg: &SearchConfig) -> Result<bool> {
    let Some(w) = report.witness() else {
        return Ok(true);
    };
    let h = parse_hypergraph(
        field(w, "hypergraph")?
            .as_str()
            .ok_or_else(|| Error::InvalidParameters("witness hypergraph is not text".into()))?,
    )?;
    let values = |p: Proportion| -> Result<Option<(usize, usize)>> {
        if h.vertex_count() <= ORACLE_MAX_VERTICES {
            Ok(Some((brute_force_lazy(&h, p), brute_force_burn(&h, p))))
        } else {
            exact_values(&h, p.into(), cfg)
        }
    };
    let again = |reports: Vec<PropertyReport>| {
        reports.iter().any(|r| r.property == report.property && r.is_violation())
    };
    let id = report.property.as_str();
    if id.starts_with("monotone-") {
        let mut obs = Vec::new();
        for key in ["p", "q"] {
            let p = field_p(w, key)?;
            let Some((lazy, burn)) = values(p)? else {
                return Ok(false);
            };
            obs.push(Observed { p, lazy, burn });
        }
        return Ok(again(check_monotonicity(&h, &obs)));
    }
    let p = field_p(w, "p")?;
    let Some((lazy, burn)) = values(p)? else {
        return Ok(false);
    };
    if id.starts_with("original-rule-") {
        let Some((ol, ob)) = exact_values(&h, Rule::Original, cfg)? else {
            return Ok(false);
        };
        return Ok(again(check_original_comparison(&h, Observed { p, lazy, burn }, ol, ob)));
    }
    if id == "ceil-pv" {
        return Ok(lazy > field_usize(w, "bound")?);
    }
    if let Some(cover) = w.get("cover").and_then(Json::as_array) {
        // A threshold cover is always a lazy burning set; a violation with
        // a valid cover means the reported value was wrong.
        let set: VertexSet = cover.iter().filter_map(|v| v.as_u64().map(|v| v as usize)).collect();
        if !Engine::new(&h, p)?.is_lazy_burning_set(set) {
            return Ok(false);
        }
    }
    Ok(again(check_theorems(&h, p, lazy, burn)))
}
