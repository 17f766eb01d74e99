//! Dense state-vector simulation for small circuits.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::ir::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliOperator};

pub const MAX_QUBITS: usize = 20;

type Mat2 = [[Complex64; 2]; 2];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn gate_matrix(kind: GateKind) -> Option<Mat2> {
    let o = c(0.0, 0.0);
    let l = c(1.0, 0.0);
    let h = c(FRAC_1_SQRT_2, 0.0);
    let w = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    Some(match kind {
        GateKind::H => [[h, h], [h, -h]],
        GateKind::S => [[l, o], [o, c(0.0, 1.0)]],
        GateKind::Sdg => [[l, o], [o, c(0.0, -1.0)]],
        GateKind::T => [[l, o], [o, w]],
        GateKind::Tdg => [[l, o], [o, w.conj()]],
        GateKind::X => [[o, l], [l, o]],
        GateKind::Z => [[l, o], [o, -l]],
        _ => return None,
    })
}

pub fn pauli_matrix(p: Pauli) -> Mat2 {
    let o = c(0.0, 0.0);
    let l = c(1.0, 0.0);
    match p {
        Pauli::I => [[l, o], [o, l]],
        Pauli::X => [[o, l], [l, o]],
        Pauli::Y => [[o, c(0.0, -1.0)], [c(0.0, 1.0), o]],
        Pauli::Z => [[l, o], [o, -l]],
    }
}

/// Amplitudes indexed little-endian: bit q of the index is qubit q.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(n: usize) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::TooLarge(n));
        }
        let mut amps = vec![c(0.0, 0.0); 1 << n];
        amps[0] = c(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let n = amps.len().trailing_zeros() as usize;
        if amps.len() != 1 << n || n > MAX_QUBITS {
            return Err(Error::Invalid("amplitude count must be a power of two".into()));
        }
        Ok(StateVector { n, amps })
    }

    /// Tensor product of single-qubit states, qubit 0 first.
    pub fn product(qubits: &[[Complex64; 2]]) -> Result<Self> {
        let mut s = StateVector::from_amplitudes(vec![c(1.0, 0.0)])?;
        for q in qubits {
            s = s.tensor(&StateVector::from_amplitudes(q.to_vec())?)?;
        }
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// `self` on the low qubits, `other` on the new high qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<Self> {
        let n = self.n + other.n;
        if n > MAX_QUBITS {
            return Err(Error::TooLarge(n));
        }
        let mut amps = Vec::with_capacity(1 << n);
        for b in &other.amps {
            for a in &self.amps {
                amps.push(a * b);
            }
        }
        Ok(StateVector { n, amps })
    }

    fn check(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::QubitOutOfRange { qubit: q + 1, n: self.n });
        }
        Ok(())
    }

    pub fn apply_matrix(&mut self, q: usize, m: &Mat2) -> Result<()> {
        self.check(q)?;
        let bit = 1usize << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a, b) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = m[0][0] * a + m[0][1] * b;
                self.amps[i | bit] = m[1][0] * a + m[1][1] * b;
            }
        }
        Ok(())
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.check(control)?;
        self.check(target)?;
        if control == target {
            return Err(Error::Invalid("CNOT with identical control and target".into()));
        }
        let (cb, tb) = (1usize << control, 1usize << target);
        for i in 0..self.amps.len() {
            if i & cb != 0 && i & tb == 0 {
                self.amps.swap(i, i | tb);
            }
        }
        Ok(())
    }

    /// Controlled-controlled-X, used as a reference for decompositions.
    pub fn apply_toffoli(&mut self, a: usize, b: usize, target: usize) -> Result<()> {
        for q in [a, b, target] {
            self.check(q)?;
        }
        let (ab, bb, tb) = (1usize << a, 1usize << b, 1usize << target);
        for i in 0..self.amps.len() {
            if i & ab != 0 && i & bb != 0 && i & tb == 0 {
                self.amps.swap(i, i | tb);
            }
        }
        Ok(())
    }

    pub fn apply_pauli(&mut self, q: usize, p: Pauli) -> Result<()> {
        self.apply_matrix(q, &pauli_matrix(p))
    }

    pub fn apply_pauli_operator(&mut self, p: &PauliOperator) -> Result<()> {
        for q in p.support() {
            self.apply_pauli(q, p.get(q))?;
        }
        Ok(())
    }

    /// Unitary gates only; preparation and measurement are handled by [`simulate`].
    pub fn apply_unitary(&mut self, g: &Gate) -> Result<()> {
        match g.kind {
            GateKind::Cnot | GateKind::FlagCnot => self.apply_cnot(g.qubits[0], g.qubits[1]),
            k => match gate_matrix(k) {
                Some(m) => self.apply_matrix(g.qubits[0], &m),
                None => Err(Error::Invalid(format!("{} is not unitary", g.label))),
            },
        }
    }

    /// Projects qubit `q` onto `outcome` in the Z basis; returns the probability.
    pub fn project_z(&mut self, q: usize, outcome: bool) -> Result<f64> {
        self.check(q)?;
        let bit = 1usize << q;
        let mut p = 0.0;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if ((i & bit) != 0) != outcome {
                *a = c(0.0, 0.0);
            } else {
                p += a.norm_sqr();
            }
        }
        if p > 1e-300 {
            let s = 1.0 / p.sqrt();
            for a in &mut self.amps {
                *a *= s;
            }
        }
        Ok(p)
    }

    pub fn probability_one(&self, q: usize) -> Result<f64> {
        self.check(q)?;
        let bit = 1usize << q;
        Ok(self.amps.iter().enumerate().filter(|(i, _)| i & bit != 0).map(|(_, a)| a.norm_sqr()).sum())
    }

    /// Drops qubits already projected onto computational values.
    pub fn remove_qubits(&self, qubits: &[usize], values: &[bool]) -> Result<StateVector> {
        let mut fixed = 0usize;
        let mut mask = 0usize;
        for (&q, &v) in qubits.iter().zip(values) {
            self.check(q)?;
            mask |= 1 << q;
            if v {
                fixed |= 1 << q;
            }
        }
        let keep: Vec<usize> = (0..self.n).filter(|q| mask & (1 << q) == 0).collect();
        let mut amps = vec![c(0.0, 0.0); 1 << keep.len()];
        for (j, a) in amps.iter_mut().enumerate() {
            let mut i = fixed;
            for (k, &q) in keep.iter().enumerate() {
                if j & (1 << k) != 0 {
                    i |= 1 << q;
                }
            }
            *a = self.amps[i];
        }
        Ok(StateVector { n: keep.len(), amps })
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n, right: other.n });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// Max amplitude difference after aligning global phase.
    pub fn distance_up_to_phase(&self, other: &StateVector) -> Result<f64> {
        let ip = self.inner(other)?;
        let phase = if ip.norm() > 1e-300 { ip / ip.norm() } else { c(1.0, 0.0) };
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| (a * phase - b).norm()).fold(0.0, f64::max))
    }

    pub fn expectation(&self, p: &PauliOperator) -> Result<f64> {
        if p.num_qubits() != self.n {
            return Err(Error::SizeMismatch { left: p.num_qubits(), right: self.n });
        }
        let mut t = self.clone();
        t.apply_pauli_operator(p)?;
        Ok(self.inner(&t)?.re)
    }
}

/// Runs `circuit` from `input` on all qubits. Measurements are projected onto the
/// entries of `outcomes` (default 0); conditioned gates fire when their qubit read 1.
/// Preparation gates must act on qubits still in |0>.
pub fn simulate(circuit: &Circuit, input: &StateVector, outcomes: &BTreeMap<usize, bool>) -> Result<StateVector> {
    if input.num_qubits() != circuit.num_qubits {
        return Err(Error::SizeMismatch { left: input.num_qubits(), right: circuit.num_qubits });
    }
    let mut s = input.clone();
    let mut read: BTreeMap<usize, bool> = BTreeMap::new();
    for g in &circuit.gates {
        if let Some(cq) = g.condition {
            let v = *read.get(&cq).ok_or_else(|| Error::InvalidCircuit(format!("{} conditioned on unread qubit", g.label)))?;
            if !v {
                continue;
            }
        }
        let q = g.qubits[0];
        match g.kind {
            GateKind::Prep0 => {}
            GateKind::PrepPlus => s.apply_matrix(q, &gate_matrix(GateKind::H).unwrap())?,
            GateKind::MeasZ | GateKind::MeasX => {
                let v = outcomes.get(&q).copied().unwrap_or(false);
                if g.kind == GateKind::MeasX {
                    s.apply_matrix(q, &gate_matrix(GateKind::H).unwrap())?;
                }
                let p = s.project_z(q, v)?;
                if p < 1e-12 {
                    return Err(Error::Domain(format!("outcome {} at {} has zero probability", v as u8, g.label)));
                }
                if g.kind == GateKind::MeasX {
                    s.apply_matrix(q, &gate_matrix(GateKind::H).unwrap())?;
                }
                read.insert(q, v);
            }
            _ => s.apply_unitary(g)?,
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_pair() {
        let mut s = StateVector::zero(2).unwrap();
        s.apply_matrix(0, &gate_matrix(GateKind::H).unwrap()).unwrap();
        s.apply_cnot(0, 1).unwrap();
        let a = s.amplitudes();
        assert!((a[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((a[3].re - FRAC_1_SQRT_2).abs() < 1e-15);
        let zz = PauliOperator::from_dense("ZZ").unwrap();
        assert!((s.expectation(&zz).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn remove_after_projection() {
        let mut s = StateVector::zero(3).unwrap();
        s.apply_matrix(1, &gate_matrix(GateKind::H).unwrap()).unwrap();
        s.apply_cnot(1, 2).unwrap();
        s.project_z(1, true).unwrap();
        let r = s.remove_qubits(&[1], &[true]).unwrap();
        assert_eq!(r.num_qubits(), 2);
        assert!((r.amplitudes()[2].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn size_limit() {
        assert!(StateVector::zero(21).is_err());
    }
}
