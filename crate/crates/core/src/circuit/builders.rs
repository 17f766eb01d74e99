//! Encoder and full error-correction period for one encoded block.

use serde::{Deserialize, Serialize};

use super::ir::{Basis, Circuit, Gate, GateKind, GateLabel};

/// Encoder CNOTs as (label, control, target), 1-based data qubits.
pub const ENCODER_CNOTS: [(u32, usize, usize); 11] = [
    (1, 1, 6),
    (2, 1, 7),
    (3, 2, 1),
    (4, 2, 5),
    (5, 2, 6),
    (6, 3, 1),
    (7, 3, 5),
    (8, 3, 7),
    (9, 4, 5),
    (10, 4, 6),
    (11, 4, 7),
];

/// Decoder CNOTs, the encoder reversed.
pub const DECODER_CNOTS: [(u32, usize, usize); 11] = [
    (26, 4, 7),
    (27, 4, 6),
    (28, 4, 5),
    (29, 3, 7),
    (30, 3, 5),
    (31, 3, 1),
    (32, 2, 6),
    (33, 2, 5),
    (34, 2, 1),
    (35, 1, 7),
    (36, 1, 6),
];

/// Data qubits (1-based) receiving the encoder and decoder Hadamards.
pub const HADAMARD_QUBITS: [usize; 3] = [2, 3, 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    /// Carries an unknown input on qubit 1.
    Data,
    /// Starts in |0>; phase errors are inert and all seven qubits are read.
    Auxiliary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RoundOrder {
    /// X, X, Z, Z.
    Grouped,
    /// X, Z, X, Z.
    Interleaved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EcOptions {
    pub block: BlockKind,
    pub flags: bool,
    pub order: RoundOrder,
}

impl Default for EcOptions {
    fn default() -> Self {
        EcOptions { block: BlockKind::Data, flags: true, order: RoundOrder::Grouped }
    }
}

impl EcOptions {
    pub fn data(flags: bool) -> Self {
        EcOptions { block: BlockKind::Data, flags, order: RoundOrder::Grouped }
    }

    pub fn auxiliary(flags: bool) -> Self {
        EcOptions { block: BlockKind::Auxiliary, flags, order: RoundOrder::Grouped }
    }
}

/// Where a flag CNOT sits relative to a numbered gate.
#[derive(Debug, Clone, Copy)]
enum Anchor {
    Before(u32),
    After(u32),
}

/// (flag index, data qubit 1-based, anchor). X gadgets have the data qubit as control.
const X_FLAGS: [(u32, usize, Anchor); 8] = [
    (1, 2, Anchor::Before(3)),
    (2, 2, Anchor::After(5)),
    (3, 3, Anchor::Before(6)),
    (4, 3, Anchor::After(8)),
    (5, 4, Anchor::Before(9)),
    (6, 4, Anchor::After(11)),
    (7, 4, Anchor::Before(22)),
    (8, 4, Anchor::After(28)),
];

/// Z gadgets have the flag as control and the data qubit as target.
const Z_FLAGS: [(u32, usize, Anchor); 8] = [
    (9, 5, Anchor::Before(4)),
    (10, 5, Anchor::After(16)),
    (11, 7, Anchor::Before(26)),
    (12, 7, Anchor::After(35)),
    (13, 6, Anchor::Before(27)),
    (14, 6, Anchor::After(36)),
    (15, 5, Anchor::Before(28)),
    (16, 5, Anchor::After(33)),
];

struct Builder {
    c: Circuit,
    next_prep: u32,
    /// Flag qubits of the open gadget with the given odd index.
    open: Vec<(u32, Vec<usize>)>,
    opts: EcOptions,
}

impl Builder {
    fn alloc(&mut self) -> usize {
        self.c.num_qubits += 1;
        self.c.num_qubits - 1
    }

    fn prep(&mut self, kind: GateKind, qubits: &[usize]) {
        let label = GateLabel::Prep(self.next_prep);
        self.next_prep += 1;
        self.c.push(Gate::new(label, kind, qubits));
    }

    fn measure(&mut self, q: usize, basis: Basis) {
        let kind = match basis {
            Basis::Z => GateKind::MeasZ,
            Basis::X => GateKind::MeasX,
        };
        self.c.push(Gate::new(GateLabel::Meas { qubit: q, basis }, kind, &[q]));
    }

    fn enabled(&self, index: u32) -> bool {
        self.opts.flags && (index <= 8 || self.opts.block == BlockKind::Data)
    }

    fn flags_at(&mut self, numbered: u32, after: bool) {
        for (list, x_type) in [(&X_FLAGS, true), (&Z_FLAGS, false)] {
            for &(idx, dq, anchor) in list.iter() {
                let hit = match anchor {
                    Anchor::Before(n) => !after && n == numbered,
                    Anchor::After(n) => after && n == numbered,
                };
                if hit && self.enabled(idx) {
                    self.flag_cnot(idx, dq - 1, x_type);
                }
            }
        }
    }

    fn flag_cnot(&mut self, idx: u32, dq: usize, x_type: bool) {
        let first = idx % 2 == 1;
        let key = if first { idx } else { idx - 1 };
        if first {
            let qs = if x_type {
                let (a, b) = (self.alloc(), self.alloc());
                self.prep(GateKind::PrepPlus, &[a]);
                self.prep(GateKind::Prep0, &[b]);
                self.prep(GateKind::Cnot, &[a, b]);
                vec![a, b]
            } else {
                let f = self.alloc();
                self.prep(GateKind::PrepPlus, &[f]);
                vec![f]
            };
            self.open.push((key, qs));
        }
        let pos = self.open.iter().position(|(k, _)| *k == key).expect("flag gadget opened");
        let qs = self.open[pos].1.clone();
        let fq = if x_type { qs[if first { 0 } else { 1 }] } else { qs[0] };
        let ops = if x_type { [dq, fq] } else { [fq, dq] };
        self.c.push(Gate::new(GateLabel::Flag(idx), GateKind::FlagCnot, &ops));
        if !first {
            self.open.remove(pos);
            let basis = if x_type { Basis::Z } else { Basis::X };
            for q in qs {
                self.measure(q, basis);
            }
        }
    }

    fn numbered_cnot(&mut self, label: GateLabel, control: usize, target: usize) {
        let n = match label {
            GateLabel::Numbered(n) => Some(n),
            _ => None,
        };
        if let Some(n) = n {
            self.flags_at(n, false);
        }
        self.c.push(Gate::new(label, GateKind::Cnot, &[control, target]));
        if let Some(n) = n {
            self.flags_at(n, true);
        }
    }

    /// Prepares a logical |0> (or |+> when `plus`) on seven fresh qubits.
    fn logical_ancilla(&mut self, plus: bool) -> Vec<usize> {
        let a: Vec<usize> = (0..7).map(|_| self.alloc()).collect();
        for (j, &q) in a.iter().enumerate() {
            let kind = if HADAMARD_QUBITS.contains(&(j + 1)) { GateKind::PrepPlus } else { GateKind::Prep0 };
            self.prep(kind, &[q]);
        }
        for &(n, c, t) in ENCODER_CNOTS.iter().filter(|e| e.0 >= 3) {
            let _ = n;
            self.prep(GateKind::Cnot, &[a[c - 1], a[t - 1]]);
        }
        if plus {
            for &q in &a {
                self.prep(GateKind::H, &[q]);
            }
        }
        a
    }

    /// X-type check round: ancilla controls, ancilla read in the X basis.
    fn x_round(&mut self, repeat: bool) {
        let a = self.logical_ancilla(false);
        for j in 0..7 {
            let n = 12 + j as u32;
            let label = if repeat { GateLabel::Repeat(n) } else { GateLabel::Numbered(n) };
            self.numbered_cnot(label, a[j], j);
        }
        for q in a {
            self.measure(q, Basis::X);
        }
    }

    /// Z-type check round: data controls, ancilla read in the Z basis.
    fn z_round(&mut self, repeat: bool) {
        let a = self.logical_ancilla(true);
        for j in 0..7 {
            let n = 19 + j as u32;
            let label = if repeat { GateLabel::Repeat(n) } else { GateLabel::Numbered(n) };
            self.numbered_cnot(label, j, a[j]);
        }
        for q in a {
            self.measure(q, Basis::Z);
        }
    }
}

/// Encoder on seven qubits: Hadamards then the eleven CNOTs.
pub fn build_encoder() -> Circuit {
    let mut c = Circuit::new(7);
    for (i, q) in HADAMARD_QUBITS.iter().enumerate() {
        c.push(Gate::new(GateLabel::Hadamard(i as u32 + 1), GateKind::H, &[q - 1]));
    }
    for &(n, ctl, tgt) in &ENCODER_CNOTS {
        c.push(Gate::new(GateLabel::Numbered(n), GateKind::Cnot, &[ctl - 1, tgt - 1]));
    }
    c
}

/// Decoder on seven qubits, the inverse of [`build_encoder`].
pub fn build_decoder() -> Circuit {
    let mut c = Circuit::new(7);
    for &(n, ctl, tgt) in &DECODER_CNOTS {
        c.push(Gate::new(GateLabel::Numbered(n), GateKind::Cnot, &[ctl - 1, tgt - 1]));
    }
    for (i, q) in HADAMARD_QUBITS.iter().enumerate() {
        c.push(Gate::new(GateLabel::Hadamard(i as u32 + 4), GateKind::H, &[q - 1]));
    }
    c
}

/// One error-correction period: encode, two X and two Z check rounds, decode, read out.
///
/// Data qubits are 0..7. Ancilla blocks and flag qubits are allocated in order
/// of first use. The auxiliary block drops CNOTs 1, 2, 35, 36 and the Z flags.
pub fn build_full_ec_circuit(opts: EcOptions) -> Circuit {
    let mut b = Builder { c: Circuit::new(7), next_prep: 1, open: Vec::new(), opts };
    let aux = opts.block == BlockKind::Auxiliary;
    let skipped = |n: u32| aux && matches!(n, 1 | 2 | 35 | 36);
    for (i, q) in HADAMARD_QUBITS.iter().enumerate() {
        b.c.push(Gate::new(GateLabel::Hadamard(i as u32 + 1), GateKind::H, &[q - 1]));
    }
    for &(n, ctl, tgt) in ENCODER_CNOTS.iter().filter(|e| !skipped(e.0)) {
        b.numbered_cnot(GateLabel::Numbered(n), ctl - 1, tgt - 1);
    }
    match opts.order {
        RoundOrder::Grouped => {
            b.x_round(true);
            b.x_round(false);
            b.z_round(true);
            b.z_round(false);
        }
        RoundOrder::Interleaved => {
            b.x_round(true);
            b.z_round(true);
            b.x_round(false);
            b.z_round(false);
        }
    }
    for &(n, ctl, tgt) in DECODER_CNOTS.iter().filter(|e| !skipped(e.0)) {
        b.numbered_cnot(GateLabel::Numbered(n), ctl - 1, tgt - 1);
    }
    for (i, q) in HADAMARD_QUBITS.iter().enumerate() {
        b.c.push(Gate::new(GateLabel::Hadamard(i as u32 + 4), GateKind::H, &[q - 1]));
    }
    let first = if aux { 0 } else { 1 };
    for q in first..7 {
        b.measure(q, Basis::Z);
    }
    debug_assert!(b.open.is_empty());
    b.c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::ir::Role;

    #[test]
    fn cnot_tallies() {
        let off = build_full_ec_circuit(EcOptions::data(false));
        off.validate().unwrap();
        assert_eq!(off.count(|g| matches!(g.label, GateLabel::Numbered(_))), 36);
        assert_eq!(off.primary_cnot_count(), 36);
        let on = build_full_ec_circuit(EcOptions::data(true));
        on.validate().unwrap();
        assert_eq!(on.count(|g| g.kind == GateKind::FlagCnot), 16);
        assert_eq!(on.primary_cnot_count(), 52);
        let aux = build_full_ec_circuit(EcOptions::auxiliary(true));
        aux.validate().unwrap();
        for n in [1, 2, 35, 36] {
            assert!(aux.gate(&GateLabel::Numbered(n)).is_none());
        }
        assert_eq!(aux.primary_cnot_count(), 40);
        assert_eq!(on.num_qubits, 47);
        assert_eq!(off.num_qubits, 35);
    }

    #[test]
    fn flag_order_matches_anchors() {
        let c = build_full_ec_circuit(EcOptions::data(true));
        let pos = |l: GateLabel| c.position(&l).unwrap();
        assert_eq!(pos(GateLabel::Flag(1)) + 1, pos(GateLabel::Numbered(3)));
        assert!(pos(GateLabel::Flag(7)) > pos(GateLabel::Repeat(25)));
        assert_eq!(pos(GateLabel::Flag(7)) + 1, pos(GateLabel::Numbered(22)));
        assert_eq!(pos(GateLabel::Numbered(16)) + 1, pos(GateLabel::Flag(10)));
        assert!(c.gates.iter().filter(|g| g.label.role() == Role::Flag).all(|g| g.kind == GateKind::FlagCnot));
    }
}
