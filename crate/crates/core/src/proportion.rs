//! Exact proportions in `(0, 1)` and the per-edge quantities derived from them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A rational `num/den` with `0 < num < den`, always in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Proportion {
    num: u64,
    den: u64,
}

impl Proportion {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || num >= den {
            return Err(Error::InvalidProportion { num, den });
        }
        let g = num.gcd(&den);
        Ok(Proportion {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    /// The proportion at which the rule coincides with the original
    /// all-but-one propagation rule on a `k`-uniform hypergraph.
    pub fn original_rule(k: u64) -> Result<Self> {
        Proportion::new(k.saturating_sub(1), k)
    }

    /// Midpoint of `self` and 1, i.e. `(num + den) / (2 den)`.
    pub fn midpoint_to_one(self) -> Self {
        let num = self.num as u128 + self.den as u128;
        let den = 2 * self.den as u128;
        let g = num.gcd(&den);
        // den fits: the reduced denominator divides 2*den and den < 2^63 in practice
        Proportion {
            num: u64::try_from(num / g).expect("midpoint numerator overflow"),
            den: u64::try_from(den / g).expect("midpoint denominator overflow"),
        }
    }

    pub fn as_ratio(self) -> Ratio<u64> {
        Ratio::new_raw(self.num, self.den)
    }

    pub fn from_ratio(r: Ratio<u64>) -> Result<Self> {
        Proportion::new(*r.numer(), *r.denom())
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Whether `self = 1/n` for some integer `n >= 2`.
    pub fn unit_fraction(self) -> Option<u64> {
        (self.num == 1).then_some(self.den)
    }
}

/// Propagation trigger count `⌈p·size⌉` of an edge.
pub fn threshold(p: Proportion, size: usize) -> Result<usize> {
    if size == 0 {
        return Err(Error::InvalidParameters("edge size must be positive".into()));
    }
    let size = size as u64;
    let scaled = p
        .num
        .checked_mul(size)
        .filter(|v| *v <= i64::MAX as u64)
        .ok_or(Error::Overflow("threshold"))?;
    Ok(scaled.div_ceil(p.den) as usize)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeClass {
    NonFlammable,
    Flammable,
    /// A single burning vertex ignites the whole edge.
    HighlyFlammable,
}

impl EdgeClass {
    pub fn is_flammable(self) -> bool {
        self != EdgeClass::NonFlammable
    }
}

/// Classify an edge of the given size. Singleton edges never propagate and
/// are reported as non-flammable.
pub fn classify_edge(p: Proportion, size: usize) -> EdgeClass {
    let s = size as u128;
    let (num, den) = (p.num as u128, p.den as u128);
    if size <= 1 || s * (den - num) < den {
        EdgeClass::NonFlammable
    } else if s * num <= den {
        EdgeClass::HighlyFlammable
    } else {
        EdgeClass::Flammable
    }
}

impl Ord for Proportion {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Proportion {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Proportion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Proportion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Accepts `num/den` or a terminating decimal such as `0.4`.
impl FromStr for Proportion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseProportion(s.to_string());
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let num = n.trim().parse::<u64>().map_err(|_| bad())?;
            let den = d.trim().parse::<u64>().map_err(|_| bad())?;
            return Proportion::new(num, den);
        }
        let (int, frac) = t.split_once('.').ok_or_else(bad)?;
        if !(int.is_empty() || int == "0") || frac.is_empty() || frac.len() > 18 {
            return Err(bad());
        }
        if !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let num = frac.parse::<u64>().map_err(|_| bad())?;
        Proportion::new(num, 10u64.pow(frac.len() as u32))
    }
}

impl Serialize for Proportion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Proportion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
