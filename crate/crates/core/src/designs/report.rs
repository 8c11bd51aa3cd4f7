//! Design tables: distributions per design, and automorphism order against
//! the lazy burning number under the all-but-one rule.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::distribution::{compute_distribution, condensed_text, evaluate, Distribution, Kind, Value};
use crate::error::Result;
use crate::proportion::Proportion;
use crate::solvers::SearchConfig;

use super::automorphism::{automorphism_order, REFINEMENT_MAX_POINTS};
use super::Design;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Row {
    pub name: String,
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub lazy: Distribution,
    /// Absent when the burning distribution was not requested.
    pub burning: Option<Distribution>,
}

pub fn table1_row(d: &Design, cfg: &SearchConfig, with_burning: bool) -> Result<Table1Row> {
    let lazy = compute_distribution(&d.hypergraph, Kind::Lazy, cfg)?;
    let burning = with_burning
        .then(|| compute_distribution(&d.hypergraph, Kind::Burning, cfg))
        .transpose()?;
    Ok(Table1Row {
        name: d.name.clone(),
        v: d.v,
        k: d.k,
        lambda: d.lambda,
        lazy,
        burning,
    })
}

impl Table1Row {
    pub const CSV_HEADER: &'static str = "name,v,k,lambda,lazy,burning";

    /// Condensed distributions as quoted lists, e.g. `"1, 3, 7"`.
    pub fn csv(&self) -> String {
        let burning = self.burning.as_ref().map(condensed_text).unwrap_or_default();
        format!(
            "{},{},{},{},\"{}\",\"{}\"",
            self.name,
            self.v,
            self.k,
            self.lambda,
            condensed_text(&self.lazy),
            burning
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelationRow {
    pub name: String,
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    /// Lazy burning number at `p = (k−1)/k`.
    pub b_l: Value,
    /// `None` when the design exceeds the automorphism engine's size cap.
    pub aut_order: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSummary {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub designs: usize,
    /// Some design has both the largest automorphism order and the largest
    /// lazy burning number of its class. `None` if a value is missing.
    pub agree: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelationReport {
    pub rows: Vec<CorrelationRow>,
    pub classes: Vec<ClassSummary>,
}

pub fn correlation_report(corpus: &[Design], cfg: &SearchConfig) -> Result<CorrelationReport> {
    let mut rows: Vec<CorrelationRow> = corpus
        .par_iter()
        .map(|d| {
            let p = Proportion::original_rule(d.k as u64)?;
            let b_l = evaluate(&d.hypergraph, Kind::Lazy, p, cfg)?;
            let aut_order = if d.v <= REFINEMENT_MAX_POINTS {
                Some(automorphism_order(&d.hypergraph)?.order)
            } else {
                None
            };
            Ok(CorrelationRow {
                name: d.name.clone(),
                v: d.v,
                k: d.k,
                lambda: d.lambda,
                b_l,
                aut_order,
            })
        })
        .collect::<Result<_>>()?;
    rows.sort_by(|a, b| (a.v, a.k, a.lambda, &a.name).cmp(&(b.v, b.k, b.lambda, &b.name)));

    let mut by_class: BTreeMap<(usize, usize, usize), Vec<&CorrelationRow>> = BTreeMap::new();
    for r in &rows {
        by_class.entry((r.v, r.k, r.lambda)).or_default().push(r);
    }
    let classes = by_class
        .into_iter()
        .map(|((v, k, lambda), members)| {
            let complete: Option<Vec<(u128, usize)>> = members
                .iter()
                .map(|r| Some((r.aut_order?, r.b_l.exact()?)))
                .collect();
            let agree = complete.map(|vals| {
                let max_aut = vals.iter().map(|x| x.0).max().unwrap_or(0);
                let max_lazy = vals.iter().map(|x| x.1).max().unwrap_or(0);
                vals.iter().any(|&(a, l)| a == max_aut && l == max_lazy)
            });
            ClassSummary {
                v,
                k,
                lambda,
                designs: members.len(),
                agree,
            }
        })
        .collect();
    Ok(CorrelationReport { rows, classes })
}

impl CorrelationReport {
    pub const CSV_HEADER: &'static str = "name,v,k,lambda,b_L,aut_order";

    /// The CSV table followed by `#`-prefixed class summaries.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", Self::CSV_HEADER);
        for r in &self.rows {
            let aut = r.aut_order.map(|a| a.to_string()).unwrap_or_else(|| "unknown".into());
            let b_l = match r.b_l {
                Value::Exact(x) => x.to_string(),
                Value::Unknown { lower, upper } => format!("[{lower};{upper}]"),
            };
            let _ = writeln!(out, "{},{},{},{},{},{}", r.name, r.v, r.k, r.lambda, b_l, aut);
        }
        for c in &self.classes {
            let verdict = match c.agree {
                Some(true) => "max aut order and max b_L coincide",
                Some(false) => "max aut order and max b_L differ",
                None => "incomplete",
            };
            let _ = writeln!(
                out,
                "# ({},{},{}) {} design(s): {verdict}",
                c.v, c.k, c.lambda, c.designs
            );
        }
        out
    }
}
