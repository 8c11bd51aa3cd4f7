//! Burning distributions over `p ∈ (0, 1)`.
//!
//! Every threshold `⌈p|e|⌉` is constant on each interval between
//! consecutive breakpoints `j/x` (`x` an edge size), so one exact solve per
//! interval determines the distribution. A breakpoint probes the interval
//! it closes on the right; the last interval `(y_m, 1)` is probed at its
//! midpoint.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::Result;
use crate::hypergraph::Hypergraph;
use crate::proportion::Proportion;
use crate::solvers::{burning_number, lazy_burning_number, SearchConfig, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Burning,
    Lazy,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Burning => "burning",
            Kind::Lazy => "lazy",
        })
    }
}

/// Interval endpoint: 0, an interior rational, or 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Zero,
    At(Proportion),
    One,
}

impl Bound {
    fn rank(self) -> u8 {
        match self {
            Bound::Zero => 0,
            Bound::At(_) => 1,
            Bound::One => 2,
        }
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Bound::At(a), Bound::At(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Zero => f.write_str("0"),
            Bound::At(p) => write!(f, "{p}"),
            Bound::One => f.write_str("1"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `(lo, hi]`, or `(lo, 1)` when `hi` is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RationalInterval {
    pub lo: Bound,
    pub hi: Bound,
}

impl RationalInterval {
    pub fn new(lo: Bound, hi: Bound) -> Self {
        debug_assert!(lo < hi && lo != Bound::One && hi != Bound::Zero);
        RationalInterval { lo, hi }
    }

    pub fn contains(&self, p: Proportion) -> bool {
        let x = Bound::At(p);
        self.lo < x && x <= self.hi
    }

    pub fn is_subset(&self, other: &RationalInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let close = if self.hi == Bound::One { ')' } else { ']' };
        write!(f, "({}, {}{close}", self.lo, self.hi)
    }
}

/// Value on an interval; `Unknown` when the solver ran out of budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Exact(usize),
    Unknown { lower: usize, upper: usize },
}

impl Value {
    pub fn exact(self) -> Option<usize> {
        match self {
            Value::Exact(v) => Some(v),
            Value::Unknown { .. } => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(v) => write!(f, "{v}"),
            Value::Unknown { lower, upper } => write!(f, "unknown [{lower},{upper}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    pub kind: Kind,
    pub intervals: Vec<(RationalInterval, Value)>,
}

/// Sorted, deduplicated `j/x` for every distinct edge size `x >= 2`.
pub fn breakpoints(h: &Hypergraph) -> Vec<Proportion> {
    let set: BTreeSet<Proportion> = h
        .edge_sizes()
        .into_iter()
        .filter(|&x| x >= 2)
        .flat_map(|x| (1..x).map(move |j| Proportion::new(j as u64, x as u64).expect("0 < j < x")))
        .collect();
    set.into_iter().collect()
}

/// One proportion inside each interval on which every threshold is
/// constant, with that interval.
pub fn probe_points(h: &Hypergraph) -> Vec<(RationalInterval, Proportion)> {
    let bps = breakpoints(h);
    let mut out = Vec::with_capacity(bps.len() + 1);
    let mut lo = Bound::Zero;
    for &y in &bps {
        out.push((RationalInterval::new(lo, Bound::At(y)), y));
        lo = Bound::At(y);
    }
    let last = match bps.last() {
        Some(y) => y.midpoint_to_one(),
        None => Proportion::new(1, 2).expect("1/2"),
    };
    out.push((RationalInterval::new(lo, Bound::One), last));
    out
}

pub fn evaluate(h: &Hypergraph, kind: Kind, p: Proportion, cfg: &SearchConfig) -> Result<Value> {
    let (lower, upper, status) = match kind {
        Kind::Lazy => {
            let r = lazy_burning_number(h, p, cfg)?;
            (r.lower, r.upper, r.status)
        }
        Kind::Burning => {
            let r = burning_number(h, p, cfg)?;
            (r.lower, r.upper, r.status)
        }
    };
    Ok(if status == Status::Exact {
        Value::Exact(upper)
    } else {
        Value::Unknown { lower, upper }
    })
}

/// Solve at every probe point (in parallel) and merge equal neighbours.
pub fn compute_distribution(h: &Hypergraph, kind: Kind, cfg: &SearchConfig) -> Result<Distribution> {
    distribution_with(h, kind, |p| evaluate(h, kind, p, cfg))
}

/// [`compute_distribution`] with a caller-supplied evaluator, e.g. a
/// brute-force oracle.
pub fn distribution_with<F>(h: &Hypergraph, kind: Kind, eval: F) -> Result<Distribution>
where
    F: Fn(Proportion) -> Result<Value> + Sync,
{
    let probes = probe_points(h);
    let values: Vec<Value> = probes.par_iter().map(|&(_, p)| eval(p)).collect::<Result<_>>()?;
    let mut intervals: Vec<(RationalInterval, Value)> = Vec::new();
    for ((iv, _), val) in probes.into_iter().zip(values) {
        match intervals.last_mut() {
            Some((prev, pv)) if matches!(val, Value::Exact(_)) && *pv == val => prev.hi = iv.hi,
            _ => intervals.push((iv, val)),
        }
    }
    Ok(Distribution { kind, intervals })
}

impl Distribution {
    pub fn value_at(&self, p: Proportion) -> Value {
        self.intervals
            .iter()
            .find(|(iv, _)| iv.contains(p))
            .map(|&(_, v)| v)
            .expect("intervals cover (0, 1)")
    }

    pub fn is_complete(&self) -> bool {
        self.intervals.iter().all(|(_, v)| v.exact().is_some())
    }

    /// `{"kind":…,"intervals":[{"lo":"0","hi":"1/3","value":2},…]}`; an
    /// unknown span has `"value":null` plus its `lower` and `upper` bounds.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

#[derive(Serialize)]
struct JsonInterval {
    lo: Bound,
    hi: Bound,
    value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lower: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    upper: Option<usize>,
}

impl Serialize for Distribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc {
            kind: Kind,
            intervals: Vec<JsonInterval>,
        }
        let intervals = self
            .intervals
            .iter()
            .map(|&(iv, v)| {
                let (value, lower, upper) = match v {
                    Value::Exact(x) => (Some(x), None, None),
                    Value::Unknown { lower, upper } => (None, Some(lower), Some(upper)),
                };
                JsonInterval {
                    lo: iv.lo,
                    hi: iv.hi,
                    value,
                    lower,
                    upper,
                }
            })
            .collect();
        Doc {
            kind: self.kind,
            intervals,
        }
        .serialize(s)
    }
}

/// `(lo, hi] -> value` lines.
impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (iv, v) in &self.intervals {
            writeln!(f, "{iv} {v}")?;
        }
        Ok(())
    }
}

/// The realized values left to right.
pub fn condensed(d: &Distribution) -> Vec<Value> {
    d.intervals.iter().map(|&(_, v)| v).collect()
}

/// `1, 3, 7` style text of [`condensed`].
pub fn condensed_text(d: &Distribution) -> String {
    condensed(d).iter().map(Value::to_string).collect::<Vec<_>>().join(", ")
}

/// `(0,1/k], (1/k,2/k], ..., ((k-1)/k, 1)`.
pub fn k_uniform_expected_intervals(k: usize) -> Vec<RationalInterval> {
    assert!(k >= 2, "uniformity must be at least 2");
    let at = |j: usize| Bound::At(Proportion::new(j as u64, k as u64).expect("0 < j < k"));
    (0..k)
        .map(|j| {
            let lo = if j == 0 { Bound::Zero } else { at(j) };
            let hi = if j + 1 == k { Bound::One } else { at(j + 1) };
            RationalInterval::new(lo, hi)
        })
        .collect()
}

/// `1 − ℓ + Σ x_i` over the `ℓ` distinct sizes given.
pub fn max_interval_count(sizes: &[usize]) -> usize {
    let distinct: BTreeSet<usize> = sizes.iter().copied().collect();
    1 + distinct.iter().sum::<usize>() - distinct.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_figure, gen_nested_chain, gen_single_edge};

    fn p(n: u64, d: u64) -> Proportion {
        Proportion::new(n, d).unwrap()
    }

    fn at(n: u64, d: u64) -> Bound {
        Bound::At(p(n, d))
    }

    #[test]
    fn breakpoint_examples() {
        let tri = gen_single_edge(3).unwrap();
        assert_eq!(breakpoints(&tri), vec![p(1, 3), p(2, 3)]);
        let mixed = Hypergraph::new(4, vec![vec![0, 1], vec![1, 2, 3]]).unwrap();
        assert_eq!(breakpoints(&mixed), vec![p(1, 3), p(1, 2), p(2, 3)]);
        assert!(breakpoints(&Hypergraph::edgeless(3).unwrap()).is_empty());
    }

    #[test]
    fn fig4_breakpoints_match_enumeration() {
        let bps = breakpoints(&gen_figure("fig4").unwrap());
        // independent: compare fractions by cross-multiplication over all j/5, j/8
        let mut raw: Vec<(u64, u64)> = (1..5).map(|j| (j, 5)).chain((1..8).map(|j| (j, 8))).collect();
        raw.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
        raw.dedup_by(|a, b| a.0 * b.1 == b.0 * a.1);
        // no fifth equals an eighth, so all 4 + 7 survive
        assert_eq!(raw.len(), 11);
        assert_eq!(bps.len(), 11);
        for (b, (n, d)) in bps.iter().zip(raw) {
            assert_eq!(*b, p(n, d));
        }
    }

    #[test]
    fn single_edge_lazy() {
        let h = gen_single_edge(4).unwrap();
        let d = compute_distribution(&h, Kind::Lazy, &SearchConfig::default()).unwrap();
        let want = vec![
            (RationalInterval::new(Bound::Zero, at(1, 4)), Value::Exact(1)),
            (RationalInterval::new(at(1, 4), at(1, 2)), Value::Exact(2)),
            (RationalInterval::new(at(1, 2), at(3, 4)), Value::Exact(3)),
            (RationalInterval::new(at(3, 4), Bound::One), Value::Exact(4)),
        ];
        assert_eq!(d.intervals, want);
        assert_eq!(condensed_text(&d), "1, 2, 3, 4");
    }

    #[test]
    fn nested_chain_lazy() {
        let h = gen_nested_chain(4).unwrap();
        let d = compute_distribution(&h, Kind::Lazy, &SearchConfig::default()).unwrap();
        let vals: Vec<usize> = condensed(&d).iter().map(|v| v.exact().unwrap()).collect();
        assert_eq!(vals, vec![1, 2, 3, 4]);
    }

    #[test]
    fn edgeless_is_one_interval() {
        let h = Hypergraph::edgeless(3).unwrap();
        let d = compute_distribution(&h, Kind::Burning, &SearchConfig::default()).unwrap();
        assert_eq!(d.intervals, vec![(RationalInterval::new(Bound::Zero, Bound::One), Value::Exact(3))]);
    }

    #[test]
    fn unknown_spans_stay_explicit() {
        let h = crate::designs::corpus::shipped_design("fano").unwrap().hypergraph;
        let cfg = SearchConfig::default().with_budget(0);
        let d = compute_distribution(&h, Kind::Burning, &cfg).unwrap();
        assert!(d.intervals.iter().any(|(_, v)| v.exact().is_none()));
        let js = d.to_json();
        assert!(js.contains("\"value\":null"), "{js}");
    }

    #[test]
    fn json_shape() {
        let h = gen_single_edge(2).unwrap();
        let d = compute_distribution(&h, Kind::Lazy, &SearchConfig::default()).unwrap();
        assert_eq!(
            d.to_json(),
            r#"{"kind":"lazy","intervals":[{"lo":"0","hi":"1/2","value":1},{"lo":"1/2","hi":"1","value":2}]}"#
        );
    }

    #[test]
    fn expected_intervals_and_counts() {
        assert_eq!(k_uniform_expected_intervals(3).len(), 3);
        assert_eq!(
            k_uniform_expected_intervals(2),
            vec![
                RationalInterval::new(Bound::Zero, at(1, 2)),
                RationalInterval::new(at(1, 2), Bound::One)
            ]
        );
        assert_eq!(k_uniform_expected_intervals(9).len(), 9);
        assert_eq!(max_interval_count(&[3]), 3);
        assert_eq!(max_interval_count(&[2, 3, 5]), 8);
        assert_eq!(max_interval_count(&[5, 8]), 12);
        assert_eq!(breakpoints(&gen_figure("fig4").unwrap()).len() + 1, 12);
        assert!(breakpoints(&gen_single_edge(6).unwrap()).len() + 1 <= max_interval_count(&[6]));
    }

    #[test]
    fn interval_membership() {
        let iv = RationalInterval::new(at(1, 3), at(1, 2));
        assert!(iv.contains(p(1, 2)));
        assert!(!iv.contains(p(1, 3)));
        let last = RationalInterval::new(at(1, 2), Bound::One);
        assert!(last.contains(p(99, 100)));
        assert_eq!(last.to_string(), "(1/2, 1)");
    }
}
