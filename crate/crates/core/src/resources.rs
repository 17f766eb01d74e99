//! CNOT budgets per error-correction period, runtime and permitted depth.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::{build_full_ec_circuit, build_gadget, Code, EcOptions, GadgetName, GadgetSpec};
use crate::depth::BlockDepth;
use crate::error::{Error, Result};
use crate::threshold::{ConcatenationProfile, MAX_LEVEL};

/// Lower bound on the duration of one physical CNOT, seconds.
pub const DEFAULT_CNOT_TIME: f64 = 2.85e-4;
pub const DEFAULT_DEPTH_LIMIT: u64 = 200;
pub const DEFAULT_GROWTH_FACTOR: u64 = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LogicalGate {
    Transversal,
    T,
    Toffoli,
}

impl LogicalGate {
    pub const ALL: [LogicalGate; 3] = [LogicalGate::Transversal, LogicalGate::T, LogicalGate::Toffoli];

    pub fn name(self) -> &'static str {
        match self {
            LogicalGate::Transversal => "transversal",
            LogicalGate::T => "t",
            LogicalGate::Toffoli => "toffoli",
        }
    }
}

impl FromStr for LogicalGate {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        LogicalGate::ALL.iter().copied().find(|g| g.name().eq_ignore_ascii_case(s)).ok_or_else(|| format!("unknown gate '{s}'"))
    }
}

impl fmt::Display for LogicalGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One line of a CNOT budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostItem {
    pub component: String,
    pub copies: u64,
    pub cnots_each: u64,
}

impl CostItem {
    pub fn total(&self) -> u64 {
        self.copies * self.cnots_each
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCost {
    pub gate: LogicalGate,
    pub breakdown: Vec<CostItem>,
    pub cnots_per_period_k1: u64,
    pub growth_factor_per_level: u64,
}

fn item(component: &str, copies: u64, cnots_each: usize) -> CostItem {
    CostItem { component: component.to_string(), copies, cnots_each: cnots_each as u64 }
}

/// Budget for one period of `gate` at the first level, counted from the built circuits.
pub fn gate_cost(gate: LogicalGate) -> GateCost {
    let data_ec = build_full_ec_circuit(EcOptions::data(true)).primary_cnot_count();
    let aux_ec = build_full_ec_circuit(EcOptions::auxiliary(true)).primary_cnot_count();
    let g = |n: GadgetName| build_gadget(GadgetSpec::new(n, Code::Steane)).primary_cnot_count();
    let breakdown = match gate {
        LogicalGate::Transversal => vec![item("data error correction", 1, data_ec)],
        LogicalGate::T => vec![
            item("cat state", 2, g(GadgetName::CatState)),
            item("theta preparation", 1, g(GadgetName::ThetaPrep)),
            item("t gadget", 1, g(GadgetName::TGadget)),
            item("data error correction", 1, data_ec),
            item("auxiliary error correction", 1, aux_ec),
        ],
        LogicalGate::Toffoli => vec![
            item("data error correction", 3, data_ec),
            item("cat state", 2, g(GadgetName::CatState)),
            item("toffoli gadget", 1, g(GadgetName::ToffoliGadget)),
            item("a-state preparation", 1, g(GadgetName::APrep)),
            item("auxiliary error correction", 3, aux_ec),
        ],
    };
    let cnots_per_period_k1 = breakdown.iter().map(CostItem::total).sum();
    GateCost { gate, breakdown, cnots_per_period_k1, growth_factor_per_level: DEFAULT_GROWTH_FACTOR }
}

/// CNOTs for one period at level `k` with the default growth factor.
pub fn cnot_count(gate: LogicalGate, k: u32) -> Result<u64> {
    cnot_count_with_growth(gate, k, DEFAULT_GROWTH_FACTOR)
}

pub fn cnot_count_with_growth(gate: LogicalGate, k: u32, growth: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::Domain("level must be at least 1".into()));
    }
    let scale = growth.checked_pow(k - 1).ok_or_else(|| Error::Domain(format!("growth {growth}^{} overflows", k - 1)))?;
    gate_cost(gate).cnots_per_period_k1.checked_mul(scale).ok_or_else(|| Error::Domain(format!("{gate} count at level {k} overflows")))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RuntimeEstimate {
    pub total_cnots: u128,
    pub seconds: f64,
    pub cnot_time: f64,
}

/// Runtime of `periods` error-correction periods per gate class at level `k`.
pub fn estimate_runtime(periods: &[(LogicalGate, u64)], k: u32, cnot_time: f64) -> Result<RuntimeEstimate> {
    if !(cnot_time >= 0.0) {
        return Err(Error::Domain(format!("cnot time must be non-negative, got {cnot_time}")));
    }
    let mut total: u128 = 0;
    for &(g, n) in periods {
        total += cnot_count(g, k)? as u128 * n as u128;
    }
    Ok(RuntimeEstimate { total_cnots: total, seconds: total as f64 * cnot_time, cnot_time })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthCheck {
    pub k: u32,
    pub x: u32,
    pub limit: u64,
    /// Largest per-qubit operation count in one period.
    pub worst_depth: u64,
    /// Physical qubits above the limit.
    pub offending_qubits: u128,
    pub passed: bool,
    /// Largest level that still passes at this `x`, capped at `MAX_LEVEL`.
    pub max_admissible_k: Option<u32>,
}

fn level_depth(block: &BlockDepth, k: u32, x: u32, limit: u64) -> Result<(u64, u128)> {
    let profile = ConcatenationProfile::new(&block.r, k)?;
    let extra = block.gamma as u64 * x as u64;
    let mut offending = 0u128;
    for (&v, &n) in &profile.sampled {
        if v + extra > limit {
            offending += n;
        }
    }
    let per_slot = 7u128.pow(k - 1);
    for &v in &block.r[1..] {
        if v as u64 + extra > limit {
            offending += per_slot;
        }
    }
    Ok((profile.max_value() + extra, offending))
}

/// Per-qubit period depth (expanded depth plus `gamma * x`) against `limit`.
pub fn check_permitted_depth(block: &BlockDepth, k: u32, x: u32, limit: u64) -> Result<DepthCheck> {
    if limit == 0 {
        return Err(Error::Domain("depth limit must be positive".into()));
    }
    if x == 0 {
        return Err(Error::Domain("x must be at least 1".into()));
    }
    let (worst_depth, offending_qubits) = level_depth(block, k, x, limit)?;
    // The worst line is the first one, which gains R1 per level.
    let top = block.r.iter().copied().max().unwrap_or(0) as u64 + block.gamma as u64 * x as u64;
    let step = block.r[0] as u64;
    let max_admissible_k = if top > limit {
        None
    } else if step == 0 {
        Some(MAX_LEVEL)
    } else {
        Some((((limit - top) / step + 1) as u32).min(MAX_LEVEL))
    };
    Ok(DepthCheck { k, x, limit, worst_depth, offending_qubits, passed: offending_qubits == 0, max_admissible_k })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_totals() {
        assert_eq!(cnot_count(LogicalGate::Transversal, 1).unwrap(), 52);
        assert_eq!(cnot_count(LogicalGate::T, 1).unwrap(), 175);
        assert_eq!(cnot_count(LogicalGate::Toffoli, 1).unwrap(), 436);
        assert_eq!(cnot_count(LogicalGate::T, 3).unwrap(), 175 * 49);
        assert!(cnot_count(LogicalGate::T, 0).is_err());
    }

    #[test]
    fn depth_limit_of_one_fails() {
        let b = BlockDepth { r: [6, 8, 8, 8, 7, 6, 6], gamma: 4 };
        let r = check_permitted_depth(&b, 1, 1, 1).unwrap();
        assert!(!r.passed);
        assert_eq!(r.offending_qubits, 7);
        assert_eq!(r.max_admissible_k, None);
    }

    #[test]
    fn admissible_level_matches_scan() {
        let b = BlockDepth { r: [7, 13, 13, 15, 14, 10, 10], gamma: 4 };
        let r = check_permitted_depth(&b, 6, 1, DEFAULT_DEPTH_LIMIT).unwrap();
        assert!(r.passed);
        let top = r.max_admissible_k.unwrap();
        assert!(check_permitted_depth(&b, top, 1, DEFAULT_DEPTH_LIMIT).unwrap().passed);
        assert!(!check_permitted_depth(&b, top + 1, 1, DEFAULT_DEPTH_LIMIT).unwrap().passed);
    }
}
