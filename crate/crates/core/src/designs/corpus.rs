//! Multi-design text files.
//!
//! Each design starts with a header line `BIBD v k lambda name` and is
//! followed by its `b = λv(v−1)/(k(k−1))` blocks, one per line. Blank lines
//! and `#` comments may appear anywhere.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

use super::{validate_bibd, Design};

const SHIPPED: &str = include_str!("../../data/corpus.bibd");

pub fn parse_design_corpus(text: &str) -> Result<Vec<Design>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let mut out = Vec::new();
    while let Some((line, header)) = lines.next() {
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.first() != Some(&"BIBD") || fields.len() < 4 {
            return Err(Error::parse(line, "expected `BIBD v k lambda name`"));
        }
        let num = |i: usize, what: &str| {
            fields[i]
                .parse::<usize>()
                .map_err(|_| Error::parse(line, format!("malformed {what} {:?}", fields[i])))
        };
        let (v, k, lambda) = (num(1, "v")?, num(2, "k")?, num(3, "lambda")?);
        let name = fields.get(4..).map(|f| f.join(" ")).unwrap_or_default();
        if !(v > k && k >= 2) || lambda == 0 {
            return Err(Error::parse(line, "parameters need v > k >= 2 and lambda >= 1"));
        }
        let b_num = lambda * v * (v - 1);
        if b_num % (k * (k - 1)) != 0 {
            return Err(Error::parse(line, "block count λv(v−1)/(k(k−1)) is not an integer"));
        }
        let b = b_num / (k * (k - 1));
        let mut blocks = Vec::with_capacity(b);
        for _ in 0..b {
            let (bl, text) = lines
                .next()
                .ok_or_else(|| Error::parse(line, format!("design {name:?} needs {b} blocks")))?;
            let block = text
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::parse(bl, format!("malformed block {text:?}")))?;
            blocks.push(block);
        }
        let h = Hypergraph::new(v, blocks).map_err(|e| Error::parse(line, e.to_string()))?;
        out.push(validate_bibd(&h, v, k, lambda)?.named(name));
    }
    Ok(out)
}

pub fn serialize_design_corpus(designs: &[Design]) -> String {
    let mut out = String::new();
    for d in designs {
        let _ = writeln!(out, "BIBD {} {} {} {}", d.v, d.k, d.lambda, d.name);
        for e in d.hypergraph.edges() {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
    }
    out
}

/// The constructible designs bundled with the crate.
pub fn shipped_corpus() -> Vec<Design> {
    parse_design_corpus(SHIPPED).expect("bundled corpus is valid")
}

pub fn shipped_design(name: &str) -> Option<Design> {
    shipped_corpus().into_iter().find(|d| d.name == name)
}
