//! Dense-statevector checks of the circuit builders and of the Pauli-frame engine.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::statevector::{gate_matrix, pauli_matrix};
use crate::circuit::{
    build_decoder, build_encoder, build_full_ec_circuit, build_gadget, simulate, Basis, BlockKind, Circuit, Code, EcOptions, GadgetName,
    GadgetSpec, Gate, GateKind, StateVector,
};
use crate::error::{Error, Result};
use crate::faults::{EcLayout, FaultEngine, InjectedFault};
use crate::pauli::{Pauli, PauliOperator, StabilizerKind, GENERATOR_SUPPORTS};

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const DEFAULT_FAULT_SAMPLES: usize = 200;
pub const DEFAULT_PRODUCT_SAMPLES: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub max_error: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, max_error: f64, tolerance: f64, detail: String) -> Self {
        CheckResult { name: name.to_string(), passed: max_error <= tolerance, max_error, tolerance, detail }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Even-weight Hamming codewords as 7-bit patterns, bit j = qubit j.
pub fn even_codewords() -> Vec<usize> {
    (0..8usize)
        .map(|m| (0..3).filter(|i| m >> i & 1 == 1).fold(0usize, |w, i| w ^ GENERATOR_SUPPORTS[i] as usize))
        .collect()
}

fn uniform_over(words: &[usize]) -> StateVector {
    let mut amps = vec![c(0.0, 0.0); 128];
    let a = 1.0 / (words.len() as f64).sqrt();
    for &w in words {
        amps[w] = c(a, 0.0);
    }
    StateVector::from_amplitudes(amps).expect("128 amplitudes")
}

fn exact_distance(a: &StateVector, b: &StateVector) -> f64 {
    a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn random_qubit(rng: &mut ChaCha8Rng) -> [Complex64; 2] {
    let theta: f64 = rng.gen_range(0.0..PI);
    let phi: f64 = rng.gen_range(0.0..2.0 * PI);
    [c((theta / 2.0).cos(), 0.0), Complex64::from_polar((theta / 2.0).sin(), phi)]
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> Result<StateVector> {
    let mut amps: Vec<Complex64> = (0..1 << n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    StateVector::from_amplitudes(amps)
}

fn apply(s: &mut StateVector, kind: GateKind, q: usize) -> Result<()> {
    s.apply_matrix(q, &gate_matrix(kind).ok_or_else(|| Error::Invalid(format!("{} has no matrix", kind.name())))?)
}

/// Encoder on |0>^7 and |1>|0>^6 against the even and odd codeword superpositions.
pub fn check_encoder() -> Result<CheckResult> {
    let enc = build_encoder();
    let even = even_codewords();
    let odd: Vec<usize> = even.iter().map(|w| w ^ 0x7f).collect();
    let zero = simulate(&enc, &StateVector::zero(7)?, &BTreeMap::new())?;
    let mut one_in = StateVector::zero(7)?;
    one_in.apply_pauli(0, Pauli::X)?;
    let one = simulate(&enc, &one_in, &BTreeMap::new())?;
    let err = exact_distance(&zero, &uniform_over(&even)).max(exact_distance(&one, &uniform_over(&odd)));
    Ok(CheckResult::new("encoder codeword superpositions", err, 1e-12, "amplitude 1/sqrt(8), phase +1".into()))
}

/// Transversal Hadamard on the encoded |0> gives the uniform superposition of all 16 codewords.
pub fn check_steane_state() -> Result<CheckResult> {
    let mut s = simulate(&build_encoder(), &StateVector::zero(7)?, &BTreeMap::new())?;
    for q in 0..7 {
        apply(&mut s, GateKind::H, q)?;
    }
    let mut words = even_codewords();
    words.extend(even_codewords().iter().map(|w| w ^ 0x7f));
    let err = exact_distance(&s, &uniform_over(&words));
    Ok(CheckResult::new("transversal hadamard on encoded zero", err, 1e-12, "amplitude 1/4 over 16 codewords".into()))
}

/// Encoder then decoder is the identity on random product states.
pub fn check_decoder_inverts(samples: usize, seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut both = build_encoder();
    both.gates.extend(build_decoder().gates);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let qs: Vec<[Complex64; 2]> = (0..7).map(|_| random_qubit(&mut rng)).collect();
        let input = StateVector::product(&qs)?;
        let out = simulate(&both, &input, &BTreeMap::new())?;
        worst = worst.max(exact_distance(&out, &input));
    }
    Ok(CheckResult::new("decoder inverts encoder", worst, 1e-10, format!("{samples} random product states")))
}

/// Matrix of the gate sequence against its reference on every basis state.
fn unitary_distance(circuit: &Circuit, reference: impl Fn(&mut StateVector) -> Result<()>) -> Result<f64> {
    let n = circuit.num_qubits;
    let mut worst: f64 = 0.0;
    for b in 0..1usize << n {
        let mut amps = vec![c(0.0, 0.0); 1 << n];
        amps[b] = c(1.0, 0.0);
        let input = StateVector::from_amplitudes(amps)?;
        let got = simulate(circuit, &input, &BTreeMap::new())?;
        let mut want = input.clone();
        reference(&mut want)?;
        worst = worst.max(exact_distance(&got, &want));
    }
    Ok(worst)
}

/// CZ, CS and Toffoli decompositions reproduce their unitaries exactly.
pub fn check_decompositions() -> Result<CheckResult> {
    let cz = unitary_distance(&build_gadget(GadgetSpec::new(GadgetName::CzDecomp, Code::Trivial)), |s| {
        apply(s, GateKind::H, 1)?;
        s.apply_cnot(0, 1)?;
        apply(s, GateKind::H, 1)
    })?;
    let cs = unitary_distance(&build_gadget(GadgetSpec::new(GadgetName::CsDecomp, Code::Trivial)), |s| {
        let mut amps = s.amplitudes().to_vec();
        amps[3] *= c(0.0, 1.0);
        *s = StateVector::from_amplitudes(amps)?;
        Ok(())
    })?;
    let ccx = unitary_distance(&build_gadget(GadgetSpec::new(GadgetName::ToffoliDecomp, Code::Trivial)), |s| s.apply_toffoli(0, 1, 2))?;
    Ok(CheckResult::new("cz, cs and toffoli decompositions", cz.max(cs).max(ccx), 1e-12, format!("cz {cz:.1e}, cs {cs:.1e}, toffoli {ccx:.1e}")))
}

fn theta_state() -> [Complex64; 2] {
    [c(FRAC_1_SQRT_2, 0.0), Complex64::from_polar(FRAC_1_SQRT_2, PI / 4.0)]
}

/// Teleported T on the one-qubit code: both measurement branches apply T.
pub fn check_t_gadget(samples: usize, seed: u64) -> Result<CheckResult> {
    let circuit = build_gadget(GadgetSpec::new(GadgetName::TGadget, Code::Trivial));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let psi = random_qubit(&mut rng);
        let input = StateVector::product(&[theta_state(), psi])?;
        let mut want = StateVector::product(&[psi])?;
        apply(&mut want, GateKind::T, 0)?;
        for m in [false, true] {
            let out = simulate(&circuit, &input, &BTreeMap::from([(1, m)]))?;
            let got = out.remove_qubits(&[1], &[m])?;
            worst = worst.max(got.distance_up_to_phase(&want)?);
        }
    }
    Ok(CheckResult::new("t gadget on the one-qubit code", worst, 1e-10, format!("{samples} inputs, both branches")))
}

/// Resource-state preparation for the T gadget, all checks passing.
pub fn check_theta_prep() -> Result<CheckResult> {
    let circuit = build_gadget(GadgetSpec::new(GadgetName::ThetaPrep, Code::Trivial));
    let n = circuit.num_qubits;
    let checks: Vec<usize> = (1..n).collect();
    let outcomes: BTreeMap<usize, bool> = checks.iter().map(|&q| (q, false)).collect();
    let out = simulate(&circuit, &StateVector::zero(n)?, &outcomes)?;
    let got = out.remove_qubits(&checks, &vec![false; checks.len()])?;
    let err = got.distance_up_to_phase(&StateVector::product(&[theta_state()])?)?;
    Ok(CheckResult::new("theta preparation on the one-qubit code", err, 1e-10, "all checks read 0".into()))
}

fn a_state() -> Result<StateVector> {
    let mut amps = vec![c(0.0, 0.0); 8];
    for a in 0..2 {
        for b in 0..2 {
            amps[a | b << 1 | (a & b) << 2] = c(0.5, 0.0);
        }
    }
    StateVector::from_amplitudes(amps)
}

/// Toffoli by teleportation through |A> on the one-qubit code, every branch.
pub fn check_toffoli_gadget(samples: usize, seed: u64) -> Result<CheckResult> {
    let circuit = build_gadget(GadgetSpec::new(GadgetName::ToffoliGadget, Code::Trivial));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let phi = random_state(&mut rng, 3)?;
        let input = a_state()?.tensor(&phi)?;
        let mut want = phi.clone();
        want.apply_toffoli(0, 1, 2)?;
        for branch in 0..8usize {
            let bits: Vec<bool> = (0..3).map(|i| branch >> i & 1 == 1).collect();
            let outcomes: BTreeMap<usize, bool> = (3..6).zip(bits.iter().copied()).collect();
            let out = simulate(&circuit, &input, &outcomes)?;
            // X-basis readout of the last block leaves it in |+> or |->.
            let mut out = out;
            apply(&mut out, GateKind::H, 5)?;
            let got = out.remove_qubits(&[3, 4, 5], &bits)?;
            worst = worst.max(got.distance_up_to_phase(&want)?);
        }
    }
    Ok(CheckResult::new("toffoli gadget on the one-qubit code", worst, 1e-10, format!("{samples} inputs, all 8 branches")))
}

/// |A> preparation on the one-qubit code with passing checks.
pub fn check_a_prep() -> Result<CheckResult> {
    let circuit = build_gadget(GadgetSpec::new(GadgetName::APrep, Code::Trivial));
    let n = circuit.num_qubits;
    let checks: Vec<usize> = (3..n).collect();
    let outcomes: BTreeMap<usize, bool> = checks.iter().map(|&q| (q, false)).collect();
    let out = simulate(&circuit, &StateVector::zero(n)?, &outcomes)?;
    let got = out.remove_qubits(&checks, &vec![false; checks.len()])?;
    let err = got.distance_up_to_phase(&a_state()?)?;
    Ok(CheckResult::new("a-state preparation on the one-qubit code", err, 1e-10, "all checks read 0".into()))
}

/// Dense state over the qubits currently alive, in order of allocation.
struct Window {
    state: StateVector,
    slot: Vec<Option<usize>>,
    live: Vec<usize>,
}

impl Window {
    fn new(total: usize, carrier: [Complex64; 2]) -> Result<Window> {
        let mut qs = vec![carrier];
        qs.extend(std::iter::repeat([c(1.0, 0.0), c(0.0, 0.0)]).take(6));
        let mut slot = vec![None; total];
        for (q, s) in slot.iter_mut().enumerate().take(7) {
            *s = Some(q);
        }
        Ok(Window { state: StateVector::product(&qs)?, slot, live: (0..7).collect() })
    }

    fn at(&self, q: usize) -> Result<usize> {
        self.slot[q].ok_or_else(|| Error::Invalid(format!("qubit {} is not alive", q + 1)))
    }

    fn add(&mut self, q: usize, plus: bool) -> Result<()> {
        let amps = if plus { vec![c(FRAC_1_SQRT_2, 0.0); 2] } else { vec![c(1.0, 0.0), c(0.0, 0.0)] };
        self.state = self.state.tensor(&StateVector::from_amplitudes(amps)?)?;
        self.slot[q] = Some(self.live.len());
        self.live.push(q);
        Ok(())
    }

    fn apply(&mut self, g: &Gate) -> Result<()> {
        let mut h = g.clone();
        h.qubits = g.qubits.iter().map(|&q| self.at(q)).collect::<Result<_>>()?;
        self.state.apply_unitary(&h)
    }

    fn pauli(&mut self, q: usize, p: Pauli) -> Result<()> {
        let s = self.at(q)?;
        self.state.apply_matrix(s, &pauli_matrix(p))
    }

    /// Sign of a deterministic product of single-qubit readouts.
    fn parity(&self, ops: &[(usize, Basis)]) -> Result<bool> {
        let mut p = PauliOperator::identity(self.live.len());
        for &(q, b) in ops {
            p.set(self.at(q)?, if b == Basis::X { Pauli::X } else { Pauli::Z })?;
        }
        let e = self.state.expectation(&p)?;
        if (e.abs() - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!("readout parity has expectation {e}")));
        }
        Ok(e < 0.0)
    }

    /// Measures and drops qubits, keeping the likelier outcome of each.
    fn discard(&mut self, ops: &[(usize, Basis)]) -> Result<()> {
        let mut slots = Vec::new();
        let mut values = Vec::new();
        for &(q, b) in ops {
            let s = self.at(q)?;
            if b == Basis::X {
                apply(&mut self.state, GateKind::H, s)?;
            }
            let v = self.state.probability_one(s)? > 0.5;
            self.state.project_z(s, v)?;
            slots.push(s);
            values.push(v);
        }
        self.state = self.state.remove_qubits(&slots, &values)?;
        for &(q, _) in ops {
            self.slot[q] = None;
        }
        self.live.retain(|q| self.slot[*q].is_some());
        for (i, &q) in self.live.iter().enumerate() {
            self.slot[q] = Some(i);
        }
        Ok(())
    }
}

/// Readouts of one period computed densely.
#[derive(Debug, Clone)]
pub struct DenseOutcome {
    pub z_syn: Vec<u8>,
    pub x_syn: Vec<u8>,
    pub meas: Vec<(usize, bool)>,
    /// State left on the unmeasured data qubit, if one remains.
    pub carrier: Option<StateVector>,
    /// Largest number of simultaneously live qubits.
    pub peak_qubits: usize,
}

/// Runs a flag-free period densely, dropping each check block once it is read.
pub fn dense_period(c: &Circuit, layout: &EcLayout, carrier: [Complex64; 2], fault: Option<InjectedFault>) -> Result<DenseOutcome> {
    if !layout.gadgets.is_empty() {
        return Err(Error::Invalid("dense period oracle handles flag-free circuits only".into()));
    }
    let mut w = Window::new(c.num_qubits, carrier)?;
    let mut out = DenseOutcome { z_syn: Vec::new(), x_syn: Vec::new(), meas: Vec::new(), carrier: None, peak_qubits: 7 };
    let mut pending: BTreeMap<usize, Basis> = BTreeMap::new();
    let mut next_round = 0;
    for (i, g) in c.gates.iter().enumerate() {
        match g.kind {
            GateKind::MeasZ => {
                pending.insert(g.qubits[0], Basis::Z);
            }
            GateKind::MeasX => {
                pending.insert(g.qubits[0], Basis::X);
            }
            _ => {
                while let Some(r) = layout.rounds.get(next_round) {
                    if !r.ancillas.iter().all(|a| pending.contains_key(a)) {
                        break;
                    }
                    let ops: Vec<(usize, Basis)> = r.ancillas.iter().map(|a| (*a, pending[a])).collect();
                    let mut s = 0u8;
                    for m in GENERATOR_SUPPORTS {
                        let sel: Vec<(usize, Basis)> = (0..7).filter(|j| m >> j & 1 == 1).map(|j| ops[j]).collect();
                        s = (s << 1) | w.parity(&sel)? as u8;
                    }
                    match r.kind {
                        StabilizerKind::Z => out.z_syn.push(s),
                        StabilizerKind::X => out.x_syn.push(s),
                    }
                    w.discard(&ops)?;
                    for a in &r.ancillas {
                        pending.remove(a);
                    }
                    next_round += 1;
                }
                match g.kind {
                    GateKind::Prep0 => w.add(g.qubits[0], false)?,
                    GateKind::PrepPlus => w.add(g.qubits[0], true)?,
                    _ => w.apply(g)?,
                }
                out.peak_qubits = out.peak_qubits.max(w.live.len());
            }
        }
        if let Some(f) = fault {
            if f.gate_index == i {
                w.pauli(f.qubit, f.pauli)?;
            }
        }
    }
    if next_round != layout.rounds.len() {
        return Err(Error::InvalidCircuit("check rounds left unread".into()));
    }
    for &(q, b) in &layout.readout {
        out.meas.push((q, w.parity(&[(q, b)])?));
    }
    w.discard(&layout.readout)?;
    if w.live.len() == 1 {
        out.carrier = Some(w.state.clone());
    }
    Ok(out)
}

/// Pauli mapping the clean carrier to the faulty one, if any.
fn carrier_pauli(clean: &StateVector, faulty: &StateVector) -> Result<Option<Pauli>> {
    for p in [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z] {
        let mut t = clean.clone();
        t.apply_pauli(0, p)?;
        if t.distance_up_to_phase(faulty)? < 1e-9 {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub checked: usize,
    pub disagreements: Vec<String>,
    pub peak_qubits: usize,
}

/// Random single faults through the flag-free data period, frame engine against dense oracle.
pub fn propagation_oracle(samples: usize, seed: u64) -> Result<OracleReport> {
    let circuit = build_full_ec_circuit(EcOptions::data(false));
    let engine = FaultEngine::new(&circuit)?;
    let layout = &engine.layout;
    let carrier = [c(0.6, 0.0), Complex64::from_polar(0.8, 0.7)];
    let clean = dense_period(&circuit, layout, carrier, None)?;
    let clean_state = clean.carrier.clone().ok_or_else(|| Error::InvalidCircuit("no unmeasured data qubit".into()))?;
    let gates: Vec<usize> = (0..circuit.gates.len()).filter(|&i| !circuit.gates[i].kind.is_measurement() && !circuit.gates[i].kind.is_prep()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = OracleReport { checked: 0, disagreements: Vec::new(), peak_qubits: clean.peak_qubits };
    for _ in 0..samples {
        let gate_index = gates[rng.gen_range(0..gates.len())];
        let g = &circuit.gates[gate_index];
        let qubit = g.qubits[rng.gen_range(0..g.qubits.len())];
        let pauli = Pauli::NON_IDENTITY[rng.gen_range(0..3)];
        let f = InjectedFault { gate_index, qubit, pauli };
        let (sig, residual) = engine.propagate(Some(f))?;
        let dense = dense_period(&circuit, layout, carrier, Some(f))?;
        report.peak_qubits = report.peak_qubits.max(dense.peak_qubits);
        let seen = match &dense.carrier {
            Some(s) => carrier_pauli(&clean_state, s)?,
            None => None,
        };
        let mut diffs = Vec::new();
        if sig.z_syn != dense.z_syn || sig.x_syn != dense.x_syn {
            diffs.push(format!("syndromes {:?}/{:?} vs {:?}/{:?}", sig.z_syn, sig.x_syn, dense.z_syn, dense.x_syn));
        }
        if sig.meas != dense.meas {
            diffs.push(format!("readout {:?} vs {:?}", sig.meas, dense.meas));
        }
        if layout.block == BlockKind::Data && seen != Some(residual.get(0)) {
            diffs.push(format!("carrier {} vs {:?}", residual.get(0).symbol(), seen));
        }
        if !diffs.is_empty() {
            report.disagreements.push(format!("{} on qubit {} after {}: {}", pauli.symbol(), qubit + 1, g.label, diffs.join("; ")));
        }
        report.checked += 1;
    }
    Ok(report)
}

pub fn check_propagation_oracle(samples: usize, seed: u64) -> Result<CheckResult> {
    let r = propagation_oracle(samples, seed)?;
    let mut res = CheckResult::new(
        "frame engine against dense oracle",
        r.disagreements.len() as f64,
        0.0,
        format!("{} faults, peak {} live qubits", r.checked, r.peak_qubits),
    );
    if let Some(d) = r.disagreements.first() {
        res.detail = format!("{}; first: {d}", res.detail);
    }
    Ok(res)
}

/// Every statevector and oracle check with the default sizes.
pub fn run_all(seed: u64) -> Result<Vec<CheckResult>> {
    Ok(vec![
        check_encoder()?,
        check_steane_state()?,
        check_decoder_inverts(DEFAULT_PRODUCT_SAMPLES, seed)?,
        check_decompositions()?,
        check_t_gadget(DEFAULT_PRODUCT_SAMPLES, seed)?,
        check_theta_prep()?,
        check_toffoli_gadget(DEFAULT_PRODUCT_SAMPLES, seed)?,
        check_a_prep()?,
        check_propagation_oracle(DEFAULT_FAULT_SAMPLES, seed)?,
    ])
}
