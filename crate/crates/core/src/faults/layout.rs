//! Structure of an error-correction period recovered from gate labels.

use serde::{Deserialize, Serialize};

use crate::circuit::{Basis, BlockKind, Circuit, GateKind, GateLabel, Role};
use crate::error::{Error, Result};
use crate::pauli::StabilizerKind;

pub const DATA_QUBITS: usize = 7;

/// One syndrome-extraction round over a fresh 7-qubit ancilla block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyndromeRound {
    /// Stabilizer type being measured.
    pub kind: StabilizerKind,
    /// Ancilla paired with data qubit j.
    pub ancillas: [usize; 7],
    /// First copy (`R` labels) or second (`C` labels).
    pub repeat: bool,
    first_gate: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FlagKind {
    /// Data qubit controls the flag CNOTs; detects X errors.
    X,
    /// Flag qubit controls; detects Z errors.
    Z,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagGadget {
    /// Labels `CN<first>` and `CN<first + 1>`.
    pub first: u32,
    pub kind: FlagKind,
    pub data_qubit: usize,
    pub flag_qubits: Vec<usize>,
    pub gates: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EcLayout {
    pub block: BlockKind,
    pub rounds: Vec<SyndromeRound>,
    pub gadgets: Vec<FlagGadget>,
    /// Measured data qubits in ascending order with their basis.
    pub readout: Vec<(usize, Basis)>,
    /// Data qubits carrying a trailing decoder Hadamard.
    pub decode_layer: Vec<usize>,
    /// Gate index of the last encoder/round/decoder CNOT per data qubit.
    pub last_data_cnot: [Option<usize>; 7],
    /// Gate index of the first gate per data qubit.
    pub first_gate: [Option<usize>; 7],
}

impl EcLayout {
    pub fn infer(c: &Circuit) -> Result<EcLayout> {
        if c.num_qubits < DATA_QUBITS {
            return Err(Error::InvalidCircuit("an error-correction circuit needs at least 7 qubits".into()));
        }
        let mut rounds: Vec<SyndromeRound> = Vec::new();
        let mut flag_gates: Vec<(u32, usize)> = Vec::new();
        let mut decode_layer = Vec::new();
        let mut last_data_cnot = [None; 7];
        let mut first_gate = [None; 7];
        for (i, g) in c.gates.iter().enumerate() {
            for &q in &g.qubits {
                if q < DATA_QUBITS && first_gate[q].is_none() {
                    first_gate[q] = Some(i);
                }
            }
            let (n, repeat) = match g.label {
                GateLabel::Numbered(n) => (Some(n), false),
                GateLabel::Repeat(n) => (Some(n), true),
                _ => (None, false),
            };
            if g.kind == GateKind::Cnot && n.is_some() {
                for &q in &g.qubits {
                    if q < DATA_QUBITS {
                        last_data_cnot[q] = Some(i);
                    }
                }
            }
            match (n, g.label.role()) {
                (Some(n), Role::SyndromeRound | Role::SyndromeRepeat) => {
                    if !(12..=25).contains(&n) {
                        return Err(Error::InvalidCircuit(format!("{} is not a syndrome CNOT", g.label)));
                    }
                    let (kind, j) = if n <= 18 { (StabilizerKind::X, n - 12) } else { (StabilizerKind::Z, n - 19) };
                    let j = j as usize;
                    let (data, anc) = match kind {
                        StabilizerKind::X => (g.qubits[1], g.qubits[0]),
                        StabilizerKind::Z => (g.qubits[0], g.qubits[1]),
                    };
                    if data != j || anc < DATA_QUBITS {
                        return Err(Error::InvalidCircuit(format!("{} has unexpected operands", g.label)));
                    }
                    let r = match rounds.iter_mut().find(|r| r.kind == kind && r.repeat == repeat) {
                        Some(r) => r,
                        None => {
                            rounds.push(SyndromeRound { kind, ancillas: [usize::MAX; 7], repeat, first_gate: i });
                            rounds.last_mut().unwrap()
                        }
                    };
                    r.ancillas[j] = anc;
                }
                _ => {}
            }
            if let GateLabel::Flag(k) = g.label {
                flag_gates.push((k, i));
            }
            if let GateLabel::Hadamard(k) = g.label {
                if k >= 4 && g.qubits[0] < DATA_QUBITS {
                    decode_layer.push(g.qubits[0]);
                }
            }
        }
        for r in &rounds {
            if r.ancillas.contains(&usize::MAX) {
                return Err(Error::InvalidCircuit("incomplete syndrome round".into()));
            }
        }
        rounds.sort_by_key(|r| r.first_gate);

        let mut gadgets = Vec::new();
        flag_gates.sort();
        for &(k, i) in flag_gates.iter().filter(|(k, _)| k % 2 == 1) {
            let j = flag_gates
                .iter()
                .find(|(m, _)| *m == k + 1)
                .map(|x| x.1)
                .ok_or_else(|| Error::InvalidCircuit(format!("CN{k} has no partner CN{}", k + 1)))?;
            let (ga, gb) = (&c.gates[i], &c.gates[j]);
            let (kind, dq) = if ga.qubits[0] < DATA_QUBITS {
                (FlagKind::X, ga.qubits[0])
            } else if ga.qubits[1] < DATA_QUBITS {
                (FlagKind::Z, ga.qubits[1])
            } else {
                return Err(Error::InvalidCircuit(format!("CN{k} does not touch the data block")));
            };
            let flag_qubits = match kind {
                FlagKind::X => vec![ga.qubits[1], gb.qubits[1]],
                FlagKind::Z => vec![ga.qubits[0]],
            };
            let same_data = match kind {
                FlagKind::X => gb.qubits[0] == dq,
                FlagKind::Z => gb.qubits[1] == dq && gb.qubits[0] == ga.qubits[0],
            };
            if !same_data || j < i {
                return Err(Error::InvalidCircuit(format!("CN{k}/CN{} do not form a gadget", k + 1)));
            }
            gadgets.push(FlagGadget { first: k, kind, data_qubit: dq, flag_qubits, gates: [i, j] });
        }
        if flag_gates.iter().any(|(k, _)| k % 2 == 0 && !flag_gates.iter().any(|(m, _)| m + 1 == *k)) {
            return Err(Error::InvalidCircuit("unpaired flag CNOT".into()));
        }

        let measured = c.measured();
        let readout: Vec<(usize, Basis)> = measured.iter().filter(|(q, _)| **q < DATA_QUBITS).map(|(q, b)| (*q, *b)).collect();
        let block = if c.gate(&GateLabel::Numbered(1)).is_none() && readout.iter().any(|(q, _)| *q == 0) {
            BlockKind::Auxiliary
        } else {
            BlockKind::Data
        };
        for r in &rounds {
            for &a in &r.ancillas {
                let want = match r.kind {
                    StabilizerKind::X => Basis::X,
                    StabilizerKind::Z => Basis::Z,
                };
                if measured.get(&a) != Some(&want) {
                    return Err(Error::InvalidCircuit(format!("ancilla {} is not measured in the {:?} basis", a + 1, want)));
                }
            }
        }
        for gd in &gadgets {
            for &f in &gd.flag_qubits {
                if !measured.contains_key(&f) {
                    return Err(Error::InvalidCircuit(format!("flag qubit {} is never measured", f + 1)));
                }
            }
        }
        Ok(EcLayout { block, rounds, gadgets, readout, decode_layer, last_data_cnot, first_gate })
    }

    pub fn rounds_of(&self, kind: StabilizerKind) -> impl Iterator<Item = &SyndromeRound> {
        self.rounds.iter().filter(move |r| r.kind == kind)
    }

    /// Readout basis of data qubit `q` seen from before the decoder Hadamards.
    pub fn decoded_readout(&self, q: usize) -> Option<Basis> {
        let b = self.readout.iter().find(|(r, _)| *r == q)?.1;
        if self.decode_layer.contains(&q) {
            Some(match b {
                Basis::Z => Basis::X,
                Basis::X => Basis::Z,
            })
        } else {
            Some(b)
        }
    }

    /// Data qubits never measured; their residual is what a correction must fix.
    pub fn unmeasured_data(&self) -> Vec<usize> {
        (0..DATA_QUBITS).filter(|q| !self.readout.iter().any(|(r, _)| r == q)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{build_full_ec_circuit, EcOptions};

    #[test]
    fn infers_data_layout() {
        let c = build_full_ec_circuit(EcOptions::data(true));
        let l = EcLayout::infer(&c).unwrap();
        assert_eq!(l.block, BlockKind::Data);
        assert_eq!(l.rounds.len(), 4);
        assert_eq!(l.gadgets.len(), 8);
        assert_eq!(l.gadgets.iter().filter(|g| g.kind == FlagKind::X).count(), 4);
        assert_eq!(l.unmeasured_data(), vec![0]);
        assert_eq!(l.decoded_readout(1), Some(Basis::X));
        assert_eq!(l.decoded_readout(5), Some(Basis::Z));
    }

    #[test]
    fn infers_aux_layout() {
        let c = build_full_ec_circuit(EcOptions::auxiliary(true));
        let l = EcLayout::infer(&c).unwrap();
        assert_eq!(l.block, BlockKind::Auxiliary);
        assert_eq!(l.gadgets.len(), 4);
        assert!(l.unmeasured_data().is_empty());
    }
}
