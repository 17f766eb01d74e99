//! Concatenated threshold estimate from per-qubit R coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::depth::BlockDepth;
use crate::error::{Error, Result};

/// Largest level `expand_levels` will materialize.
pub const MAX_MATERIALIZED_LEVEL: u32 = 8;
/// Largest level whose position counts fit the exact integer accumulators.
pub const MAX_LEVEL: u32 = 40;
pub const DEFAULT_X_MAX: u32 = 200;

/// Gate whose error-correction period sets the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateClass {
    Transversal,
    T,
    /// Toffoli, first control.
    Toffoli1,
    /// Toffoli, second control.
    Toffoli2,
    /// Toffoli, target.
    Toffoli3,
}

impl GateClass {
    pub const ALL: [GateClass; 5] = [GateClass::Transversal, GateClass::T, GateClass::Toffoli1, GateClass::Toffoli2, GateClass::Toffoli3];

    /// Extra measured depth of the gadget, if any.
    pub fn extra_depth(self) -> Option<u32> {
        match self {
            GateClass::Transversal => None,
            GateClass::T => Some(20),
            GateClass::Toffoli1 => Some(19),
            GateClass::Toffoli2 => Some(17),
            GateClass::Toffoli3 => Some(8),
        }
    }

    /// Depth `r0` replacing `r` in the denominator; `r` is the number of periods between recoveries.
    pub fn r0(self, r: f64) -> f64 {
        match self.extra_depth() {
            None => r,
            Some(e) => r - 1.0 + e as f64,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateClass::Transversal => "transversal",
            GateClass::T => "t",
            GateClass::Toffoli1 => "toffoli1",
            GateClass::Toffoli2 => "toffoli2",
            GateClass::Toffoli3 => "toffoli3",
        }
    }
}

impl FromStr for GateClass {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        GateClass::ALL.iter().copied().find(|g| g.name().eq_ignore_ascii_case(s)).ok_or_else(|| format!("unknown gate class '{s}'"))
    }
}

impl fmt::Display for GateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Materialized level sequence: each entry `e` of the previous level becomes
/// `e + R1` followed by the block's `R2..R7`.
pub fn expand_levels(base: &[u32; 7], k: u32) -> Result<Vec<u64>> {
    if k == 0 {
        return Err(Error::Domain("level must be at least 1".into()));
    }
    if k > MAX_MATERIALIZED_LEVEL {
        return Err(Error::Domain(format!("level {k} exceeds the materialization limit {MAX_MATERIALIZED_LEVEL}")));
    }
    let mut l: Vec<u64> = base.iter().map(|&v| v as u64).collect();
    for _ in 1..k {
        let head: Vec<u64> = l[1..7].to_vec();
        let mut next = Vec::with_capacity(l.len() * 7);
        for &e in &l {
            next.push(e + base[0] as u64);
            next.extend_from_slice(&head);
        }
        l = next;
    }
    Ok(l)
}

/// Value histogram of the level sequence at positions 0, 7, 14, ...
///
/// Those entries are the previous level's entries shifted by `R1`, so the
/// histogram is built without materializing 7^k values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcatenationProfile {
    pub base: [u32; 7],
    pub k: u32,
    pub sampled: BTreeMap<u64, u128>,
}

impl ConcatenationProfile {
    pub fn new(base: &[u32; 7], k: u32) -> Result<Self> {
        if k == 0 || k > MAX_LEVEL {
            return Err(Error::Domain(format!("level {k} out of range 1..={MAX_LEVEL}")));
        }
        let mut prev: BTreeMap<u64, u128> = BTreeMap::from([(0, 1)]);
        let mut first = true;
        for _ in 1..k {
            let total: u128 = prev.values().sum();
            let mut next: BTreeMap<u64, u128> = BTreeMap::new();
            for (&v, &n) in &prev {
                let shifted = if first { base[0] as u64 } else { v + base[0] as u64 };
                *next.entry(shifted).or_default() += n;
            }
            if first {
                next.clear();
                for &b in base.iter() {
                    *next.entry(b as u64).or_default() += 1;
                }
            } else {
                for &b in &base[1..] {
                    *next.entry(b as u64).or_default() += total;
                }
            }
            first = false;
            prev = next;
        }
        let sampled = if k == 1 {
            BTreeMap::from([(base[0] as u64, 1)])
        } else {
            prev.into_iter().map(|(v, n)| (v + base[0] as u64, n)).collect()
        };
        Ok(ConcatenationProfile { base: *base, k, sampled })
    }

    /// Largest entry of the full level sequence.
    pub fn max_value(&self) -> u64 {
        let rest = self.base[1..].iter().copied().max().unwrap_or(0) as u64;
        self.sampled.keys().copied().max().unwrap_or(0).max(rest)
    }
}

/// Exact pair-count numerator for redundancy `x`.
pub fn coefficient_c0(profile: &ConcatenationProfile, x: u32, gamma: u32) -> u128 {
    let g = (gamma as u128) * (x as u128);
    let b = &profile.base;
    let (bb, d, e, f) = (b[1] as u128 + g, b[3] as u128 + g, b[4] as u128 + g, b[5] as u128 + g);
    let linear = 2 * bb + d + e + 2 * f;
    let constant = bb * bb + 2 * bb * d + 2 * bb * e + d * e + 4 * bb * f + 2 * d * f + 2 * e * f + f * f;
    profile.sampled.iter().map(|(&v, &n)| n * ((v as u128 + g) * linear + constant)).sum()
}

/// `c = c0 / 7^(k-1)`.
pub fn coefficient_c(profile: &ConcatenationProfile, x: u32, gamma: u32) -> f64 {
    coefficient_c0(profile, x, gamma) as f64 / 7f64.powi(profile.k as i32 - 1)
}

/// One threshold evaluation point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdQuery {
    pub k: u32,
    /// Periods before measurement; `None` is the limit of infinitely many.
    pub r: Option<f64>,
    pub gate_class: GateClass,
    pub x: u32,
}

impl ThresholdQuery {
    /// `r * x / r0`, which tends to `x` as `r` grows.
    pub fn depth_ratio(&self) -> Result<f64> {
        if self.x == 0 {
            return Err(Error::Domain("x must be at least 1".into()));
        }
        match self.r {
            None => Ok(self.x as f64),
            Some(r) if r >= 1.0 => Ok(r * self.x as f64 / self.gate_class.r0(r)),
            Some(r) => Err(Error::Domain(format!("r must be at least 1, got {r}"))),
        }
    }
}

/// `p_th = (r x / r0)^(1/(2^k-1)) / c`.
pub fn evaluate_p_th(q: &ThresholdQuery, c: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::Domain(format!("coefficient must be positive, got {c}")));
    }
    if q.k == 0 || q.k > 63 {
        return Err(Error::Domain(format!("level {} out of range", q.k)));
    }
    let exponent = 1.0 / ((1u64 << q.k) - 1) as f64;
    Ok(q.depth_ratio()?.powf(exponent) / c)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub k: u32,
    pub r: Option<f64>,
    pub x_star: u32,
    pub c_at_x_star: f64,
    pub max_p_th: f64,
}

fn point(profile: &ConcatenationProfile, gamma: u32, q: &ThresholdQuery) -> Result<(f64, f64)> {
    let c = coefficient_c(profile, q.x, gamma);
    Ok((c, evaluate_p_th(q, c)?))
}

/// Best `x` in `1..=x_max`; ties go to the smallest `x`.
pub fn optimize_x(k: u32, r: Option<f64>, gate_class: GateClass, block: &BlockDepth, x_max: u32) -> Result<ThresholdResult> {
    if x_max == 0 {
        return Err(Error::Domain("x_max must be at least 1".into()));
    }
    let profile = ConcatenationProfile::new(&block.r, k)?;
    let mut best: Option<ThresholdResult> = None;
    for x in 1..=x_max {
        let (c, p) = point(&profile, block.gamma, &ThresholdQuery { k, r, gate_class, x })?;
        if best.map_or(true, |b| p > b.max_p_th) {
            best = Some(ThresholdResult { k, r, x_star: x, c_at_x_star: c, max_p_th: p });
        }
    }
    Ok(best.unwrap())
}

/// `(x, p_th)` for every `x` in `1..=x_max`.
pub fn curve(block: &BlockDepth, k: u32, r: Option<f64>, gate_class: GateClass, x_max: u32) -> Result<Vec<(u32, f64)>> {
    let profile = ConcatenationProfile::new(&block.r, k)?;
    (1..=x_max).map(|x| Ok((x, point(&profile, block.gamma, &ThresholdQuery { k, r, gate_class, x })?.1))).collect()
}

/// `k,x,p_th` rows for every level in `levels`.
pub fn curves_csv(block: &BlockDepth, levels: std::ops::RangeInclusive<u32>, r: Option<f64>, gate_class: GateClass, x_max: u32) -> Result<String> {
    let mut out = String::from("k,x,p_th\n");
    for k in levels {
        for (x, p) in curve(block, k, r, gate_class, x_max)? {
            out.push_str(&format!("{k},{x},{}\n", format_sci(p)));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableId {
    /// Data block, transversal gates.
    T1a,
    /// Auxiliary block, transversal gates.
    T1b,
    /// Auxiliary block, T gate, against r.
    T2a,
    /// Auxiliary block, Toffoli target, against r.
    T2b,
}

impl TableId {
    pub const ALL: [TableId; 4] = [TableId::T1a, TableId::T1b, TableId::T2a, TableId::T2b];

    pub fn name(self) -> &'static str {
        match self {
            TableId::T1a => "1a",
            TableId::T1b => "1b",
            TableId::T2a => "2a",
            TableId::T2b => "2b",
        }
    }
}

impl FromStr for TableId {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        TableId::ALL.iter().copied().find(|t| t.name().eq_ignore_ascii_case(s)).ok_or_else(|| format!("unknown table '{s}'"))
    }
}

pub const TABLE2_R: [Option<f64>; 6] = [Some(1.0), Some(10.0), Some(100.0), Some(1000.0), Some(10000.0), None];

/// Rows of one standard table given the data and auxiliary depths.
pub fn generate_table(id: TableId, data: &BlockDepth, aux: &BlockDepth, x_max: u32) -> Result<Vec<ThresholdResult>> {
    let mut rows = Vec::new();
    match id {
        TableId::T1a | TableId::T1b => {
            let d = if id == TableId::T1a { data } else { aux };
            for k in 1..=10 {
                rows.push(optimize_x(k, None, GateClass::Transversal, d, x_max)?);
            }
        }
        TableId::T2a | TableId::T2b => {
            let class = if id == TableId::T2a { GateClass::T } else { GateClass::Toffoli3 };
            for k in 1..=6 {
                for r in TABLE2_R {
                    rows.push(optimize_x(k, r, class, aux, x_max)?);
                }
            }
        }
    }
    Ok(rows)
}

/// Scientific notation with 15 digits after the point and a two-digit exponent.
pub fn format_sci(v: f64) -> String {
    let s = format!("{v:.15e}");
    match s.split_once('e') {
        Some((m, e)) => {
            let (sign, digits) = match e.strip_prefix('-') {
                Some(d) => ('-', d),
                None => ('+', e),
            };
            format!("{m}e{sign}{digits:0>2}")
        }
        None => s,
    }
}

pub fn table_csv(id: TableId, rows: &[ThresholdResult]) -> String {
    let two = matches!(id, TableId::T2a | TableId::T2b);
    let mut out = String::from(if two { "k,r,x_star,max_p_th\n" } else { "k,x_star,max_p_th\n" });
    for row in rows {
        if two {
            let r = row.r.map_or("inf".to_string(), |r| format!("{r}"));
            out.push_str(&format!("{},{},{},{}\n", row.k, r, row.x_star, format_sci(row.max_p_th)));
        } else {
            out.push_str(&format!("{},{},{}\n", row.k, row.x_star, format_sci(row.max_p_th)));
        }
    }
    out
}
