use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::CliffordOp;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    Z,
    X,
}

impl Basis {
    pub fn symbol(self) -> char {
        match self {
            Basis::Z => 'Z',
            Basis::X => 'X',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    Cnot,
    /// CNOT belonging to a flag gadget.
    FlagCnot,
    H,
    S,
    Sdg,
    T,
    Tdg,
    X,
    Z,
    Prep0,
    PrepPlus,
    MeasZ,
    MeasX,
}

impl GateKind {
    pub const ALL: [GateKind; 13] = [
        GateKind::Cnot,
        GateKind::FlagCnot,
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::X,
        GateKind::Z,
        GateKind::Prep0,
        GateKind::PrepPlus,
        GateKind::MeasZ,
        GateKind::MeasX,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Cnot => "CNOT",
            GateKind::FlagCnot => "FLAGCNOT",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdg => "SDG",
            GateKind::T => "T",
            GateKind::Tdg => "TDG",
            GateKind::X => "X",
            GateKind::Z => "Z",
            GateKind::Prep0 => "PREP0",
            GateKind::PrepPlus => "PREPPLUS",
            GateKind::MeasZ => "MEASZ",
            GateKind::MeasX => "MEASX",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot | GateKind::FlagCnot => 2,
            _ => 1,
        }
    }

    pub fn is_cnot(self) -> bool {
        matches!(self, GateKind::Cnot | GateKind::FlagCnot)
    }

    pub fn is_measurement(self) -> bool {
        matches!(self, GateKind::MeasZ | GateKind::MeasX)
    }

    pub fn is_prep(self) -> bool {
        matches!(self, GateKind::Prep0 | GateKind::PrepPlus)
    }

    pub fn is_t_like(self) -> bool {
        matches!(self, GateKind::T | GateKind::Tdg)
    }
}

impl FromStr for GateKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let up = s.to_ascii_uppercase();
        GateKind::ALL.iter().copied().find(|k| k.name() == up).ok_or_else(|| format!("unknown gate kind '{s}'"))
    }
}

/// Gate name within a circuit.
///
/// `C<n>` numbered CNOTs, `R<n>` first copy of a repeated syndrome CNOT,
/// `H<n>` numbered Hadamards, `CN<n>` flag CNOTs, `P<n>` ancilla and flag
/// preparation, `A<n>` other gadget gates, `M<q>:<basis>` measurements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateLabel {
    Numbered(u32),
    Repeat(u32),
    Hadamard(u32),
    Flag(u32),
    Prep(u32),
    Aux(u32),
    Meas { qubit: usize, basis: Basis },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Encoder,
    SyndromeRound,
    SyndromeRepeat,
    Decoder,
    Flag,
    AncillaPrep,
    Gadget,
    Measurement,
}

impl GateLabel {
    pub fn role(&self) -> Role {
        match *self {
            GateLabel::Numbered(n) if n <= 11 => Role::Encoder,
            GateLabel::Numbered(n) if n <= 25 => Role::SyndromeRound,
            GateLabel::Numbered(_) => Role::Decoder,
            GateLabel::Repeat(_) => Role::SyndromeRepeat,
            GateLabel::Hadamard(n) if n <= 3 => Role::Encoder,
            GateLabel::Hadamard(_) => Role::Decoder,
            GateLabel::Flag(_) => Role::Flag,
            GateLabel::Prep(_) => Role::AncillaPrep,
            GateLabel::Aux(_) => Role::Gadget,
            GateLabel::Meas { .. } => Role::Measurement,
        }
    }

    /// Number carried by C/R/H/CN/P/A labels.
    pub fn index(&self) -> Option<u32> {
        match *self {
            GateLabel::Numbered(n)
            | GateLabel::Repeat(n)
            | GateLabel::Hadamard(n)
            | GateLabel::Flag(n)
            | GateLabel::Prep(n)
            | GateLabel::Aux(n) => Some(n),
            GateLabel::Meas { .. } => None,
        }
    }

    /// Name used in fault tables: numbered CNOTs print bare (`12`).
    pub fn short(&self) -> String {
        match self {
            GateLabel::Numbered(n) => n.to_string(),
            other => other.to_string(),
        }
    }
}

impl fmt::Display for GateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateLabel::Numbered(n) => write!(f, "C{n}"),
            GateLabel::Repeat(n) => write!(f, "R{n}"),
            GateLabel::Hadamard(n) => write!(f, "H{n}"),
            GateLabel::Flag(n) => write!(f, "CN{n}"),
            GateLabel::Prep(n) => write!(f, "P{n}"),
            GateLabel::Aux(n) => write!(f, "A{n}"),
            GateLabel::Meas { qubit, basis } => write!(f, "M{}:{}", qubit + 1, basis.symbol()),
        }
    }
}

impl FromStr for GateLabel {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| -> std::result::Result<u32, String> {
            match t.parse::<u32>() {
                Ok(n) if n > 0 => Ok(n),
                _ => Err(format!("bad label '{s}'")),
            }
        };
        if let Some(rest) = s.strip_prefix("CN") {
            return Ok(GateLabel::Flag(num(rest)?));
        }
        if let Some(rest) = s.strip_prefix('M') {
            let (q, b) = rest.split_once(':').ok_or_else(|| format!("bad measurement label '{s}'"))?;
            let basis = match b {
                "Z" => Basis::Z,
                "X" => Basis::X,
                _ => return Err(format!("bad measurement basis in '{s}'")),
            };
            return Ok(GateLabel::Meas { qubit: num(q)? as usize - 1, basis });
        }
        let (head, rest) = s.split_at(s.chars().next().map(|c| c.len_utf8()).unwrap_or(0));
        match head {
            "C" => Ok(GateLabel::Numbered(num(rest)?)),
            "R" => Ok(GateLabel::Repeat(num(rest)?)),
            "H" => Ok(GateLabel::Hadamard(num(rest)?)),
            "P" => Ok(GateLabel::Prep(num(rest)?)),
            "A" => Ok(GateLabel::Aux(num(rest)?)),
            _ => Err(format!("bad label '{s}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub label: GateLabel,
    pub kind: GateKind,
    /// 0-based; CNOTs are `[control, target]`.
    pub qubits: Vec<usize>,
    /// Applied only when the measurement of this qubit returned 1.
    pub condition: Option<usize>,
}

impl Gate {
    pub fn new(label: GateLabel, kind: GateKind, qubits: &[usize]) -> Self {
        Gate { label, kind, qubits: qubits.to_vec(), condition: None }
    }

    pub fn conditioned_on(mut self, qubit: usize) -> Self {
        self.condition = Some(qubit);
        self
    }

    pub fn control(&self) -> usize {
        self.qubits[0]
    }

    pub fn target(&self) -> usize {
        self.qubits[self.qubits.len() - 1]
    }

    pub fn acts_on(&self, q: usize) -> bool {
        self.qubits.contains(&q)
    }

    /// Frame action; T-type gates and non-unitary steps have none.
    pub fn clifford(&self) -> Result<Option<CliffordOp>> {
        Ok(match self.kind {
            GateKind::Cnot | GateKind::FlagCnot => Some(CliffordOp::Cnot { control: self.qubits[0], target: self.qubits[1] }),
            GateKind::H => Some(CliffordOp::H(self.qubits[0])),
            GateKind::S | GateKind::Sdg => Some(CliffordOp::S(self.qubits[0])),
            GateKind::X | GateKind::Z => Some(CliffordOp::PauliGate(self.qubits[0])),
            GateKind::T | GateKind::Tdg => return Err(Error::NonClifford(self.label.to_string())),
            GateKind::Prep0 | GateKind::PrepPlus | GateKind::MeasZ | GateKind::MeasX => None,
        })
    }
}

/// Ordered gate list on `num_qubits` qubits, all starting in |0>.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    pub num_qubits: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit { num_qubits, gates: Vec::new() }
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn position(&self, label: &GateLabel) -> Option<usize> {
        self.gates.iter().position(|g| &g.label == label)
    }

    pub fn gate(&self, label: &GateLabel) -> Option<&Gate> {
        self.gates.iter().find(|g| &g.label == label)
    }

    /// Measurement basis per measured qubit.
    pub fn measured(&self) -> BTreeMap<usize, Basis> {
        self.gates
            .iter()
            .filter_map(|g| match g.kind {
                GateKind::MeasZ => Some((g.qubits[0], Basis::Z)),
                GateKind::MeasX => Some((g.qubits[0], Basis::X)),
                _ => None,
            })
            .collect()
    }

    pub fn count(&self, pred: impl Fn(&Gate) -> bool) -> usize {
        self.gates.iter().filter(|g| pred(g)).count()
    }

    pub fn cnot_count(&self) -> usize {
        self.count(|g| g.kind.is_cnot())
    }

    /// CNOTs excluding ancilla preparation and the first copy of repeated rounds.
    pub fn primary_cnot_count(&self) -> usize {
        self.count(|g| g.kind.is_cnot() && !matches!(g.label.role(), Role::AncillaPrep | Role::SyndromeRepeat))
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        let mut touched = vec![false; self.num_qubits];
        let mut measured = vec![false; self.num_qubits];
        for g in &self.gates {
            if !seen.insert(g.label.clone()) {
                return Err(Error::DuplicateLabel(g.label.to_string()));
            }
            if g.qubits.len() != g.kind.arity() {
                return Err(Error::InvalidCircuit(format!("{} expects {} operands", g.label, g.kind.arity())));
            }
            for &q in &g.qubits {
                if q >= self.num_qubits {
                    return Err(Error::QubitOutOfRange { qubit: q + 1, n: self.num_qubits });
                }
                if measured[q] {
                    return Err(Error::InvalidCircuit(format!("{} acts on measured qubit {}", g.label, q + 1)));
                }
            }
            if g.kind.is_cnot() && g.qubits[0] == g.qubits[1] {
                return Err(Error::InvalidCircuit(format!("{} has identical control and target", g.label)));
            }
            if let Some(c) = g.condition {
                if c >= self.num_qubits || !measured[c] {
                    return Err(Error::InvalidCircuit(format!("{} conditioned on unmeasured qubit {}", g.label, c + 1)));
                }
            }
            if let GateLabel::Meas { qubit, basis } = g.label {
                let ok = g.kind.is_measurement()
                    && qubit == g.qubits[0]
                    && (basis == Basis::Z) == (g.kind == GateKind::MeasZ);
                if !ok {
                    return Err(Error::InvalidCircuit(format!("label {} does not match its gate", g.label)));
                }
            } else if g.kind.is_measurement() {
                return Err(Error::InvalidCircuit(format!("measurement {} must be labeled M<q>:<basis>", g.label)));
            }
            if g.kind.is_prep() && touched[g.qubits[0]] {
                return Err(Error::InvalidCircuit(format!("{} prepares qubit {} after use", g.label, g.qubits[0] + 1)));
            }
            for &q in &g.qubits {
                touched[q] = true;
            }
            if g.kind.is_measurement() {
                measured[g.qubits[0]] = true;
            }
        }
        Ok(())
    }

    /// Line-oriented text form accepted by [`Circuit::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("QUBITS {}\n", self.num_qubits);
        for g in &self.gates {
            out.push_str(&format!("{} {}", g.label, g.kind.name()));
            for q in &g.qubits {
                out.push_str(&format!(" {}", q + 1));
            }
            if let Some(c) = g.condition {
                out.push_str(&format!(" IF {}", c + 1));
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Circuit> {
        let mut num_qubits: Option<usize> = None;
        let mut gates = Vec::new();
        let mut seen = HashSet::new();
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let body = raw.split('#').next().unwrap_or("");
            let toks = tokens(body);
            if toks.is_empty() {
                continue;
            }
            let err = |col: usize, msg: String| Error::Parse { line: line_no, column: col, message: msg };
            if toks[0].1.eq_ignore_ascii_case("QUBITS") {
                if num_qubits.is_some() || !gates.is_empty() {
                    return Err(err(toks[0].0, "QUBITS must appear once, before any gate".into()));
                }
                if toks.len() != 2 {
                    return Err(err(toks[0].0, "expected QUBITS <n>".into()));
                }
                let n = toks[1].1.parse::<usize>().map_err(|_| err(toks[1].0, format!("bad qubit count '{}'", toks[1].1)))?;
                num_qubits = Some(n);
                continue;
            }
            let n = num_qubits.ok_or_else(|| err(toks[0].0, "missing QUBITS header".into()))?;
            if toks.len() < 2 {
                return Err(err(toks[0].0, "expected LABEL KIND operands".into()));
            }
            let label: GateLabel = toks[0].1.parse().map_err(|m| err(toks[0].0, m))?;
            let kind: GateKind = toks[1].1.parse().map_err(|m| err(toks[1].0, m))?;
            let mut rest = &toks[2..];
            let mut condition = None;
            if rest.len() >= 2 && rest[rest.len() - 2].1.eq_ignore_ascii_case("IF") {
                let (col, t) = rest[rest.len() - 1];
                condition = Some(parse_qubit(t, n).map_err(|m| err(col, m))?);
                rest = &rest[..rest.len() - 2];
            }
            if rest.len() != kind.arity() {
                let col = rest.first().map(|t| t.0).unwrap_or(toks[1].0);
                return Err(err(col, format!("{} expects {} operand(s), found {}", kind.name(), kind.arity(), rest.len())));
            }
            let mut qubits = Vec::new();
            for &(col, t) in rest {
                qubits.push(parse_qubit(t, n).map_err(|m| err(col, m))?);
            }
            if kind.is_cnot() && qubits[0] == qubits[1] {
                return Err(err(rest[1].0, "control and target are the same qubit".into()));
            }
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateLabel(label.to_string()));
            }
            gates.push(Gate { label, kind, qubits, condition });
        }
        let c = Circuit { num_qubits: num_qubits.unwrap_or(0), gates };
        c.validate()?;
        Ok(c)
    }
}

fn parse_qubit(t: &str, n: usize) -> std::result::Result<usize, String> {
    match t.parse::<usize>() {
        Ok(q) if q >= 1 && q <= n => Ok(q - 1),
        Ok(q) => Err(format!("qubit {q} out of range 1..={n}")),
        Err(_) => Err(format!("bad qubit '{t}'")),
    }
}

/// Whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_round_trip() {
        for s in ["C1", "R12", "H4", "CN16", "P3", "A9", "M5:X"] {
            let l: GateLabel = s.parse().unwrap();
            assert_eq!(l.to_string(), s);
        }
        assert!("C0".parse::<GateLabel>().is_err());
        assert!("Q4".parse::<GateLabel>().is_err());
    }

    #[test]
    fn parse_errors() {
        let e = Circuit::parse("QUBITS 7\nC1 CNOT 5 5\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 11, .. }), "{e:?}");
        let e = Circuit::parse("QUBITS 7\nC1 CNOT 1 2\nC1 CNOT 1 3\n").unwrap_err();
        assert_eq!(e, Error::DuplicateLabel("C1".into()));
        let e = Circuit::parse("QUBITS 7\nC1 CNOT 1 9\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 11, .. }));
        let e = Circuit::parse("QUBITS 7\nC1 FOO 1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 4, .. }));
    }

    #[test]
    fn comments_and_conditions() {
        let c = Circuit::parse("# demo\nQUBITS 2\nM1:Z MEASZ 1 # readout\nA1 X 2 IF 1\n").unwrap();
        assert_eq!(c.gates[1].condition, Some(0));
        assert_eq!(Circuit::parse(&c.to_text()).unwrap(), c);
    }
}
