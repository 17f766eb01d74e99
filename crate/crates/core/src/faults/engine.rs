//! Pauli-frame propagation of single faults through an error-correction period.

use serde::{Deserialize, Serialize};

use super::layout::{EcLayout, FlagKind, DATA_QUBITS};
use super::table::DecodingTable;
use super::{FaultLocation, MeasurementSignature, Side};
use crate::circuit::{Basis, BlockKind, Circuit, GateKind, Role};
use crate::error::{Error, Result};
use crate::pauli::{syndrome, CliffordOp, Pauli, PauliOperator, StabilizerKind};

/// A concrete fault: Pauli on `qubit` right after gate `gate_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectedFault {
    pub gate_index: usize,
    pub qubit: usize,
    pub pauli: Pauli,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaultRecord {
    pub location: FaultLocation,
    pub qubit: usize,
    pub gate_index: usize,
    /// Type of the fault seen at the decoded data block.
    pub effect: Pauli,
    pub signature: MeasurementSignature,
    /// Data-block Pauli left at the end, before the decoder Hadamards.
    pub residual: PauliOperator,
    /// No effect on any result the decoder acts on.
    pub neutral: bool,
    /// Fault sits on a data-block qubit.
    pub data_side: bool,
}

#[derive(Debug, Clone)]
enum Step {
    Frame(CliffordOp),
    Reset(usize),
    Measure(usize, Basis),
    Skip,
}

/// Reusable propagator for one circuit.
#[derive(Debug, Clone)]
pub struct FaultEngine {
    pub circuit: Circuit,
    pub layout: EcLayout,
    steps: Vec<Step>,
    clean: (MeasurementSignature, PauliOperator),
}

impl FaultEngine {
    pub fn new(circuit: &Circuit) -> Result<FaultEngine> {
        circuit.validate()?;
        let layout = EcLayout::infer(circuit)?;
        let mut steps = Vec::with_capacity(circuit.gates.len());
        for g in &circuit.gates {
            if g.condition.is_some() {
                return Err(Error::InvalidCircuit(format!("{} is classically controlled", g.label)));
            }
            steps.push(match g.kind {
                GateKind::Prep0 | GateKind::PrepPlus => Step::Reset(g.qubits[0]),
                GateKind::MeasZ => Step::Measure(g.qubits[0], Basis::Z),
                GateKind::MeasX => Step::Measure(g.qubits[0], Basis::X),
                _ => match g.clifford()? {
                    Some(op) => Step::Frame(op),
                    None => Step::Skip,
                },
            });
        }
        let mut e = FaultEngine {
            circuit: circuit.clone(),
            layout,
            steps,
            clean: (MeasurementSignature::default(), PauliOperator::identity(DATA_QUBITS)),
        };
        e.clean = e.propagate(None)?;
        Ok(e)
    }

    pub fn clean(&self) -> &(MeasurementSignature, PauliOperator) {
        &self.clean
    }

    /// Signature and decoded data residual for at most one fault.
    pub fn propagate(&self, fault: Option<InjectedFault>) -> Result<(MeasurementSignature, PauliOperator)> {
        let n = self.circuit.num_qubits;
        let mut frame = PauliOperator::identity(n);
        let mut flips = vec![false; n];
        for (i, step) in self.steps.iter().enumerate() {
            match *step {
                Step::Frame(op) => frame.conjugate(op)?,
                Step::Reset(q) => frame.set(q, Pauli::I)?,
                Step::Measure(q, b) => {
                    flips[q] = match b {
                        Basis::Z => frame.x_bit(q),
                        Basis::X => frame.z_bit(q),
                    }
                }
                Step::Skip => {}
            }
            if let Some(f) = fault {
                if f.gate_index == i {
                    frame = frame.multiply(&PauliOperator::single(n, f.qubit, f.pauli)?)?;
                }
            }
        }
        let mut sig = MeasurementSignature::default();
        for r in &self.layout.rounds {
            let mut pat = PauliOperator::identity(7);
            for (j, &a) in r.ancillas.iter().enumerate() {
                if flips[a] {
                    pat.set(j, if r.kind == StabilizerKind::X { Pauli::Z } else { Pauli::X })?;
                }
            }
            let s = syndrome(&pat, r.kind)?;
            match r.kind {
                StabilizerKind::Z => sig.z_syn.push(s),
                StabilizerKind::X => sig.x_syn.push(s),
            }
        }
        sig.meas = self.layout.readout.iter().map(|(q, _)| (*q, flips[*q])).collect();
        for g in &self.layout.gadgets {
            match g.kind {
                FlagKind::X => sig.x_flags.push(flips[g.flag_qubits[0]] ^ flips[g.flag_qubits[1]]),
                FlagKind::Z => sig.z_flags.push(flips[g.flag_qubits[0]]),
            }
        }
        let mut residual = frame.restrict(&(0..DATA_QUBITS).collect::<Vec<_>>())?;
        for &q in &self.layout.decode_layer {
            residual.conjugate(CliffordOp::H(q))?;
        }
        Ok((sig, residual))
    }

    /// Gate index and qubit addressed by a location.
    pub fn locate(&self, loc: &FaultLocation) -> Result<(usize, usize)> {
        let i = self.circuit.position(&loc.gate).ok_or_else(|| Error::UnknownLabel(loc.gate.to_string()))?;
        let g = &self.circuit.gates[i];
        let q = match (loc.side, g.kind.arity()) {
            (Side::Control, 2) => g.qubits[0],
            (Side::Target, 2) => g.qubits[1],
            (Side::Single, 1) => g.qubits[0],
            _ => return Err(Error::Invalid(format!("side {:?} does not fit {}", loc.side, g.label))),
        };
        Ok((i, q))
    }

    fn swaps_type(&self, gate_index: usize, q: usize) -> bool {
        let later = self.circuit.gates[gate_index + 1..].iter().filter(|g| g.kind == GateKind::H && g.qubits[0] == q).count();
        (later + self.layout.decode_layer.contains(&q) as usize) % 2 == 1
    }

    /// Fault type after the remaining Hadamards on its qubit and the decoder basis change.
    pub fn effect_type(&self, gate_index: usize, q: usize, p: Pauli) -> Pauli {
        if self.swaps_type(gate_index, q) {
            p.hadamard()
        } else {
            p
        }
    }

    pub fn analyse(&self, loc: &FaultLocation) -> Result<FaultRecord> {
        let (i, q) = self.locate(loc)?;
        let data_side = q < DATA_QUBITS;
        let effect = self.effect_type(i, q, loc.pauli);
        let swap = self.swaps_type(i, q);
        // The auxiliary block only carries bit-flip information.
        let (injected, seen) = if data_side && self.layout.block == BlockKind::Auxiliary {
            let kept = if effect.x_bit() { Pauli::X } else { Pauli::I };
            (if swap { kept.hadamard() } else { kept }, kept)
        } else {
            (loc.pauli, effect)
        };
        let neutral = data_side && self.is_neutral(i, q, injected, seen);
        let (signature, residual) = if injected == Pauli::I {
            self.clean.clone()
        } else {
            self.propagate(Some(InjectedFault { gate_index: i, qubit: q, pauli: injected }))?
        };
        Ok(FaultRecord { location: loc.clone(), qubit: q, gate_index: i, effect, signature, residual, neutral, data_side })
    }

    fn is_neutral(&self, i: usize, q: usize, injected: Pauli, seen: Pauli) -> bool {
        if injected == Pauli::I {
            return true;
        }
        let g = &self.circuit.gates[i];
        // X right after the Hadamard that opens a |0> line leaves |+> unchanged.
        if g.kind == GateKind::H && self.layout.first_gate[q] == Some(i) && injected == Pauli::X {
            return true;
        }
        // Past the last interaction of a line, a fault along its readout basis is harmless.
        let past = self.layout.last_data_cnot[q].map_or(true, |l| i >= l);
        if past {
            if let Some(b) = self.layout.decoded_readout(q) {
                let along = match b {
                    Basis::Z => Pauli::Z,
                    Basis::X => Pauli::X,
                };
                return seen == along;
            }
        }
        false
    }

    /// Locations the enumeration visits, in circuit order.
    pub fn sites(&self) -> Vec<(usize, FaultLocation)> {
        let mut out = Vec::new();
        for (i, g) in self.circuit.gates.iter().enumerate() {
            if matches!(g.label.role(), Role::AncillaPrep | Role::Gadget | Role::Measurement) {
                continue;
            }
            let sides: &[Side] = match g.kind {
                GateKind::Cnot | GateKind::FlagCnot => &[Side::Control, Side::Target],
                GateKind::H => &[Side::Single],
                _ => &[],
            };
            for &s in sides {
                for p in Pauli::NON_IDENTITY {
                    out.push((i, FaultLocation::new(g.label.clone(), s, p)));
                }
            }
        }
        out
    }
}

/// Signature and residual of a single named fault.
pub fn inject_and_propagate(c: &Circuit, f: &FaultLocation) -> Result<(MeasurementSignature, PauliOperator)> {
    let e = FaultEngine::new(c)?;
    let r = e.analyse(f)?;
    Ok((r.signature, r.residual))
}

/// Every single fault whose decoded type is in `types`.
pub fn enumerate_single_faults(c: &Circuit, types: &[Pauli]) -> Result<DecodingTable> {
    let e = FaultEngine::new(c)?;
    enumerate_with(&e, types)
}

pub fn enumerate_with(e: &FaultEngine, types: &[Pauli]) -> Result<DecodingTable> {
    let mut records = Vec::new();
    for (i, loc) in e.sites() {
        let (_, q) = e.locate(&loc)?;
        if types.contains(&e.effect_type(i, q, loc.pauli)) {
            records.push(e.analyse(&loc)?);
        }
    }
    Ok(DecodingTable {
        types: types.to_vec(),
        block: e.layout.block,
        unmeasured: e.layout.unmeasured_data(),
        clean: e.clean().0.clone(),
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{build_full_ec_circuit, EcOptions};

    #[test]
    fn clean_run_is_trivial() {
        let e = FaultEngine::new(&build_full_ec_circuit(EcOptions::data(true))).unwrap();
        assert!(e.clean().0.is_trivial());
        assert!(e.clean().1.is_identity());
    }

    #[test]
    fn x_on_control_of_25() {
        let c = build_full_ec_circuit(EcOptions::data(false));
        let (s, r) = inject_and_propagate(&c, &FaultLocation::control(25, Pauli::X)).unwrap();
        assert_eq!(s.z_syn, vec![0, 0]);
        assert_eq!(s.meas_bits(&[4, 5, 6]), "001");
        assert_eq!(r.to_sparse(), "X7");
    }

    #[test]
    fn z_on_target_of_9() {
        let c = build_full_ec_circuit(EcOptions::data(false));
        let (s, r) = inject_and_propagate(&c, &FaultLocation::target(9, Pauli::Z)).unwrap();
        assert_eq!(s.x_syn, vec![0b101, 0b101]);
        assert_eq!(s.meas_bits(&[1, 2, 3]), "111");
        // Z5 commutes with the Z readout of qubit 5 and is invisible.
        assert_eq!(r.to_sparse(), "Z2 Z3 Z4 Z5");
    }
}
