//! Fault-tolerant gadget circuits on the 7-qubit code or the trivial one-qubit code.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::builders::{build_full_ec_circuit, EcOptions, ENCODER_CNOTS, HADAMARD_QUBITS};
use super::ir::{Basis, Circuit, Gate, GateKind, GateLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GadgetName {
    CatState,
    ThetaPrep,
    TGadget,
    CzDecomp,
    CsDecomp,
    ToffoliDecomp,
    ToffoliGadget,
    APrep,
    SteaneState,
    SyndromeBlock,
}

impl GadgetName {
    pub const ALL: [GadgetName; 10] = [
        GadgetName::CatState,
        GadgetName::ThetaPrep,
        GadgetName::TGadget,
        GadgetName::CzDecomp,
        GadgetName::CsDecomp,
        GadgetName::ToffoliDecomp,
        GadgetName::ToffoliGadget,
        GadgetName::APrep,
        GadgetName::SteaneState,
        GadgetName::SyndromeBlock,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GadgetName::CatState => "catState",
            GadgetName::ThetaPrep => "thetaPrep",
            GadgetName::TGadget => "tGadget",
            GadgetName::CzDecomp => "czDecomp",
            GadgetName::CsDecomp => "csDecomp",
            GadgetName::ToffoliDecomp => "toffoliDecomp",
            GadgetName::ToffoliGadget => "toffoliGadget",
            GadgetName::APrep => "aPrep",
            GadgetName::SteaneState => "steaneState",
            GadgetName::SyndromeBlock => "syndromeBlock",
        }
    }
}

impl fmt::Display for GadgetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GadgetName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        GadgetName::ALL.iter().copied().find(|g| g.name().eq_ignore_ascii_case(s)).ok_or_else(|| format!("unknown gadget '{s}'"))
    }
}

/// Block encoding used by a gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Code {
    /// One physical qubit per logical block.
    Trivial,
    Steane,
}

impl Code {
    pub fn block_size(self) -> usize {
        match self {
            Code::Trivial => 1,
            Code::Steane => 7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetSpec {
    pub name: GadgetName,
    pub code: Code,
    /// Verification or measurement repetitions where the gadget has them.
    pub repetitions: u32,
}

impl GadgetSpec {
    pub fn new(name: GadgetName, code: Code) -> Self {
        GadgetSpec { name, code, repetitions: 2 }
    }

    pub fn with_repetitions(mut self, r: u32) -> Self {
        self.repetitions = r;
        self
    }
}

struct G {
    c: Circuit,
    next: u32,
    next_prep: u32,
    /// Emit resource-state preparation labels instead of gadget labels.
    prep: bool,
}

impl G {
    fn new() -> Self {
        G { c: Circuit::new(0), next: 1, next_prep: 1, prep: false }
    }

    fn label(&mut self) -> GateLabel {
        if self.prep {
            self.next_prep += 1;
            GateLabel::Prep(self.next_prep - 1)
        } else {
            self.next += 1;
            GateLabel::Aux(self.next - 1)
        }
    }

    fn block(&mut self, size: usize) -> Vec<usize> {
        let start = self.c.num_qubits;
        self.c.num_qubits += size;
        (start..start + size).collect()
    }

    fn gate(&mut self, kind: GateKind, qs: &[usize]) {
        let l = self.label();
        self.c.push(Gate::new(l, kind, qs));
    }

    fn cond(&mut self, kind: GateKind, qs: &[usize], on: usize) {
        let l = self.label();
        self.c.push(Gate::new(l, kind, qs).conditioned_on(on));
    }

    /// Cat state |0..0> + |1..1> on fresh qubits.
    fn cat(&mut self, cat: &[usize]) {
        self.gate(GateKind::H, &[cat[0]]);
        for w in cat.windows(2) {
            self.gate(GateKind::Cnot, &[w[0], w[1]]);
        }
    }

    fn measure(&mut self, q: usize, basis: Basis) {
        let kind = if basis == Basis::Z { GateKind::MeasZ } else { GateKind::MeasX };
        self.c.push(Gate::new(GateLabel::Meas { qubit: q, basis }, kind, &[q]));
    }

    fn cz(&mut self, a: usize, b: usize) {
        self.gate(GateKind::H, &[b]);
        self.gate(GateKind::Cnot, &[a, b]);
        self.gate(GateKind::H, &[b]);
    }

    fn cs(&mut self, ctl: usize, tgt: usize) {
        self.gate(GateKind::T, &[tgt]);
        self.gate(GateKind::Cnot, &[ctl, tgt]);
        self.gate(GateKind::Tdg, &[tgt]);
        self.gate(GateKind::Cnot, &[ctl, tgt]);
        self.gate(GateKind::T, &[ctl]);
    }

    fn toffoli(&mut self, a: usize, b: usize, t: usize) {
        use GateKind::*;
        self.gate(H, &[t]);
        self.gate(Cnot, &[b, t]);
        self.gate(Tdg, &[t]);
        self.gate(Cnot, &[a, t]);
        self.gate(T, &[t]);
        self.gate(Cnot, &[b, t]);
        self.gate(Tdg, &[t]);
        self.gate(Cnot, &[a, t]);
        self.gate(Tdg, &[b]);
        self.gate(T, &[t]);
        self.gate(H, &[t]);
        self.gate(Cnot, &[a, b]);
        self.gate(Tdg, &[b]);
        self.gate(Cnot, &[a, b]);
        self.gate(T, &[a]);
        self.gate(S, &[b]);
    }

    /// Logical |0> from fresh qubits (trivial code: nothing to do).
    fn zero_state(&mut self, b: &[usize]) {
        if b.len() == 1 {
            return;
        }
        for &q in &HADAMARD_QUBITS {
            self.gate(GateKind::H, &[b[q - 1]]);
        }
        for &(_, c, t) in ENCODER_CNOTS.iter().filter(|e| e.0 >= 3) {
            self.gate(GateKind::Cnot, &[b[c - 1], b[t - 1]]);
        }
    }

    fn transversal(&mut self, kind: GateKind, b: &[usize]) {
        for &q in b {
            self.gate(kind, &[q]);
        }
    }
}

/// Builds the circuit for a gadget. Classically controlled corrections carry
/// a condition on the measured qubit they depend on.
pub fn build_gadget(spec: GadgetSpec) -> Circuit {
    let n = spec.code.block_size();
    let reps = spec.repetitions;
    let mut g = G::new();
    match spec.name {
        GadgetName::CatState => {
            let cat = g.block(n);
            g.cat(&cat);
            if n > 1 {
                for _ in 0..reps {
                    let chk = g.block(1)[0];
                    g.gate(GateKind::Cnot, &[cat[0], chk]);
                    g.gate(GateKind::Cnot, &[cat[n - 1], chk]);
                    g.measure(chk, Basis::Z);
                }
            }
        }
        GadgetName::ThetaPrep => {
            // Logical |0> block, then repeated cat-controlled measurement of e^{-i pi/4} S X.
            let blk = g.block(n);
            g.prep = true;
            g.zero_state(&blk);
            g.prep = false;
            for _ in 0..reps.max(1) {
                let cat = g.block(n);
                g.prep = true;
                g.cat(&cat);
                g.prep = false;
                for i in 0..n {
                    g.gate(GateKind::Cnot, &[cat[i], blk[i]]);
                }
                for i in 0..n {
                    // Transversal Z.S realises logical S on the 7-qubit code.
                    if n > 1 {
                        g.cz(cat[i], blk[i]);
                    }
                    g.cs(cat[i], blk[i]);
                }
                g.gate(GateKind::Tdg, &[cat[0]]);
                g.transversal(GateKind::H, &cat);
                for &q in &cat {
                    g.measure(q, Basis::Z);
                }
            }
        }
        GadgetName::TGadget => {
            let theta = g.block(n);
            let data = g.block(n);
            for i in 0..n {
                g.gate(GateKind::Cnot, &[theta[i], data[i]]);
            }
            for &q in &data {
                g.measure(q, Basis::Z);
            }
            for &q in &theta {
                g.cond(GateKind::X, &[q], data[0]);
            }
            for &q in &theta {
                g.cond(if n > 1 { GateKind::Sdg } else { GateKind::S }, &[q], data[0]);
            }
        }
        GadgetName::CzDecomp => {
            let q = g.block(2);
            g.cz(q[0], q[1]);
        }
        GadgetName::CsDecomp => {
            let q = g.block(2);
            g.cs(q[0], q[1]);
        }
        GadgetName::ToffoliDecomp => {
            let q = g.block(3);
            g.toffoli(q[0], q[1], q[2]);
        }
        GadgetName::ToffoliGadget => {
            // Ancilla blocks a, b, c hold |A>; data blocks x, y, z are consumed.
            let (a, b, c) = (g.block(n), g.block(n), g.block(n));
            let (x, y, z) = (g.block(n), g.block(n), g.block(n));
            for i in 0..n {
                g.gate(GateKind::Cnot, &[a[i], x[i]]);
            }
            for i in 0..n {
                g.gate(GateKind::Cnot, &[b[i], y[i]]);
            }
            for i in 0..n {
                g.gate(GateKind::Cnot, &[z[i], c[i]]);
            }
            for &q in &x {
                g.measure(q, Basis::Z);
            }
            for &q in &y {
                g.measure(q, Basis::Z);
            }
            for &q in &z {
                g.measure(q, Basis::X);
            }
            for i in 0..n {
                g.cond(GateKind::X, &[a[i]], x[0]);
                g.cond(GateKind::Cnot, &[b[i], c[i]], x[0]);
            }
            for i in 0..n {
                g.cond(GateKind::X, &[b[i]], y[0]);
                g.cond(GateKind::Cnot, &[a[i], c[i]], y[0]);
            }
            for i in 0..n {
                g.cond(GateKind::Z, &[c[i]], z[0]);
                g.cond(GateKind::H, &[b[i]], z[0]);
                g.cond(GateKind::Cnot, &[a[i], b[i]], z[0]);
                g.cond(GateKind::H, &[b[i]], z[0]);
            }
        }
        GadgetName::APrep => {
            let (b1, b2, b3) = (g.block(n), g.block(n), g.block(n));
            g.prep = true;
            for blk in [&b1, &b2, &b3] {
                g.zero_state(blk);
            }
            g.prep = false;
            for blk in [&b1, &b2, &b3] {
                g.transversal(GateKind::H, blk);
            }
            for _ in 0..reps.max(1) {
                let cat = g.block(n);
                g.prep = true;
                g.cat(&cat);
                g.prep = false;
                for i in 0..n {
                    g.cz(b3[i], cat[i]);
                }
                g.transversal(GateKind::H, &cat);
                for i in 0..n {
                    g.toffoli(b1[i], b2[i], cat[i]);
                }
                for &q in &cat {
                    g.measure(q, Basis::Z);
                }
            }
        }
        GadgetName::SteaneState => {
            let blk = g.block(7);
            g.zero_state(&blk);
            g.transversal(GateKind::H, &blk);
            for _ in 0..reps {
                let chk = g.block(7);
                g.prep = true;
                g.zero_state(&chk);
                g.transversal(GateKind::H, &chk);
                g.prep = false;
                for i in 0..7 {
                    g.gate(GateKind::Cnot, &[blk[i], chk[i]]);
                }
                for &q in &chk {
                    g.measure(q, Basis::Z);
                }
            }
        }
        GadgetName::SyndromeBlock => {
            let full = build_full_ec_circuit(EcOptions::data(false));
            let mut c = Circuit::new(full.num_qubits);
            c.gates = full
                .gates
                .into_iter()
                .filter(|x| match x.label {
                    GateLabel::Numbered(k) | GateLabel::Repeat(k) => (12..=25).contains(&k),
                    GateLabel::Prep(_) => true,
                    GateLabel::Meas { qubit, .. } => qubit >= 7,
                    _ => false,
                })
                .collect();
            return c;
        }
    }
    g.c
}

/// CNOTs of the gadget itself, conditioned corrections included and
/// resource-state preparation excluded.
pub fn gadget_cnot_count(c: &Circuit) -> usize {
    c.primary_cnot_count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(c: &Circuit, k: GateKind) -> usize {
        c.count(|g| g.kind == k)
    }

    #[test]
    fn toffoli_decomposition_gate_counts() {
        let c = build_gadget(GadgetSpec::new(GadgetName::ToffoliDecomp, Code::Trivial));
        assert_eq!(count(&c, GateKind::T) + count(&c, GateKind::Tdg), 7);
        assert_eq!(count(&c, GateKind::Cnot), 6);
        assert_eq!(count(&c, GateKind::H), 2);
        assert_eq!(count(&c, GateKind::S), 1);
    }

    #[test]
    fn steane_code_cnot_tallies() {
        let s = |name| gadget_cnot_count(&build_gadget(GadgetSpec::new(name, Code::Steane)));
        assert_eq!(s(GadgetName::CatState), 10);
        assert_eq!(s(GadgetName::TGadget), 7);
        assert_eq!(s(GadgetName::ToffoliGadget), 42);
        assert_eq!(s(GadgetName::ThetaPrep), 56);
        assert_eq!(s(GadgetName::APrep), 98);
        let sb = build_gadget(GadgetSpec::new(GadgetName::SyndromeBlock, Code::Steane));
        assert_eq!(sb.count(|g| matches!(g.label, GateLabel::Numbered(_) | GateLabel::Repeat(_))), 28);
    }

    #[test]
    fn all_gadgets_validate() {
        for name in GadgetName::ALL {
            for code in [Code::Trivial, Code::Steane] {
                build_gadget(GadgetSpec::new(name, code)).validate().unwrap();
            }
        }
    }
}
