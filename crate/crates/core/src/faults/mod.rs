//! Single-fault injection, decoding tables, collision analysis and flag checks.

pub mod engine;
pub mod flags;
pub mod layout;
pub mod table;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::GateLabel;
use crate::pauli::{syndrome_string, Pauli};

pub use engine::{enumerate_single_faults, inject_and_propagate, FaultEngine, FaultRecord, InjectedFault};
pub use flags::{check_flag_conditions, ConditionResult, FlagReport, GadgetReport};
pub use layout::{EcLayout, FlagGadget, FlagKind, SyndromeRound};
pub use table::{classify_collisions, derive_perfect_assumptions, CollisionClass, DecodingTable, PerfectOpLedger, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Control,
    Target,
    Single,
}

/// A Pauli fault placed right after a gate, on one of its qubits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaultLocation {
    pub gate: GateLabel,
    pub side: Side,
    pub pauli: Pauli,
}

impl FaultLocation {
    pub fn new(gate: GateLabel, side: Side, pauli: Pauli) -> Self {
        FaultLocation { gate, side, pauli }
    }

    pub fn control(n: u32, pauli: Pauli) -> Self {
        Self::new(GateLabel::Numbered(n), Side::Control, pauli)
    }

    pub fn target(n: u32, pauli: Pauli) -> Self {
        Self::new(GateLabel::Numbered(n), Side::Target, pauli)
    }

    pub fn with_pauli(&self, pauli: Pauli) -> Self {
        FaultLocation { pauli, ..self.clone() }
    }

    /// Same gate and side, any Pauli.
    pub fn same_site(&self, other: &FaultLocation) -> bool {
        self.gate == other.gate && self.side == other.side
    }
}

impl fmt::Display for FaultLocation {
    /// `X12C`, `ZR19T`, `XCN7C`, `ZH4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Control => "C",
            Side::Target => "T",
            Side::Single => "",
        };
        write!(f, "{}{}{}", self.pauli, self.gate.short(), side)
    }
}

impl FromStr for FaultLocation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("bad fault location '{s}'");
        let mut chars = s.chars();
        let pauli = chars.next().and_then(Pauli::parse).filter(|p| *p != Pauli::I).ok_or_else(bad)?;
        let rest = chars.as_str();
        let parse_label = |t: &str| -> Option<GateLabel> {
            if !t.is_empty() && t.chars().all(|c| c.is_ascii_digit()) {
                t.parse::<u32>().ok().filter(|n| *n > 0).map(GateLabel::Numbered)
            } else {
                t.parse().ok()
            }
        };
        if let Some(l) = parse_label(rest) {
            if matches!(l, GateLabel::Hadamard(_)) {
                return Ok(FaultLocation::new(l, Side::Single, pauli));
            }
        }
        let (body, side) = match rest.chars().last() {
            Some('C') => (&rest[..rest.len() - 1], Side::Control),
            Some('T') => (&rest[..rest.len() - 1], Side::Target),
            _ => return Err(bad()),
        };
        let l = parse_label(body).ok_or_else(bad)?;
        Ok(FaultLocation::new(l, side, pauli))
    }
}

/// Classical record of one period: syndromes, data readout and flags.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MeasurementSignature {
    /// Z-stabilizer rounds in time order (detect X errors), g1 in the high bit.
    pub z_syn: Vec<u8>,
    /// X-stabilizer rounds in time order (detect Z errors).
    pub x_syn: Vec<u8>,
    /// Flipped data readouts as (qubit, bit), qubits 0-based.
    pub meas: Vec<(usize, bool)>,
    /// Parity of each X-flag pair.
    pub x_flags: Vec<bool>,
    /// Each Z-flag result.
    pub z_flags: Vec<bool>,
}

fn bits(v: impl IntoIterator<Item = bool>) -> String {
    v.into_iter().map(|b| if b { '1' } else { '0' }).collect()
}

impl MeasurementSignature {
    pub fn rounds_disagree(&self) -> bool {
        let differs = |v: &[u8]| v.windows(2).any(|w| w[0] != w[1]);
        differs(&self.z_syn) || differs(&self.x_syn)
    }

    pub fn is_trivial(&self) -> bool {
        self.z_syn.iter().chain(&self.x_syn).all(|s| *s == 0)
            && self.meas.iter().all(|m| !m.1)
            && self.x_flags.iter().chain(&self.z_flags).all(|b| !b)
    }

    /// True when syndromes and data readout are all zero (flags ignored).
    pub fn data_trivial(&self) -> bool {
        self.z_syn.iter().chain(&self.x_syn).all(|s| *s == 0) && self.meas.iter().all(|m| !m.1)
    }

    pub fn meas_bits(&self, qubits: &[usize]) -> String {
        bits(qubits.iter().map(|q| self.meas.iter().any(|(m, b)| m == q && *b)))
    }

    fn syn(v: &[u8]) -> String {
        v.iter().map(|s| syndrome_string(*s)).collect::<Vec<_>>().join("/")
    }

    fn flags_suffix(&self) -> String {
        let mut out = String::new();
        if !self.x_flags.is_empty() {
            out.push_str(&format!(" xflag={}", bits(self.x_flags.iter().copied())));
        }
        if !self.z_flags.is_empty() {
            out.push_str(&format!(" zflag={}", bits(self.z_flags.iter().copied())));
        }
        out
    }

    /// Readout indexed by physical qubit: `meas[q2..q7]=...`.
    pub fn render(&self) -> String {
        let qs: Vec<usize> = self.meas.iter().map(|m| m.0).collect();
        let range = match (qs.first(), qs.last()) {
            (Some(a), Some(b)) => format!("q{}..q{}", a + 1, b + 1),
            _ => "-".into(),
        };
        format!(
            "zsyn={} xsyn={} meas[{}]={}{}",
            Self::syn(&self.z_syn),
            Self::syn(&self.x_syn),
            range,
            self.meas_bits(&qs),
            self.flags_suffix()
        )
    }

    /// Readout indexed from the first measured ancilla-free qubit: qubit q as `Meas(q-1)`.
    pub fn render_offset(&self) -> String {
        let qs: Vec<usize> = self.meas.iter().map(|m| m.0).collect();
        let range = match (qs.first(), qs.last()) {
            (Some(a), Some(b)) => format!("Meas{}..Meas{}", a, b),
            _ => "-".into(),
        };
        format!(
            "zsyn={} xsyn={} {}={}{}",
            Self::syn(&self.z_syn),
            Self::syn(&self.x_syn),
            range,
            self.meas_bits(&qs),
            self.flags_suffix()
        )
    }
}

impl fmt::Display for MeasurementSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
