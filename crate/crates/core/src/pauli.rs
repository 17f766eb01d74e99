//! Sign-free Pauli frames and the [[7,1,3]] stabilizer generators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Single-qubit Pauli, phase ignored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const NON_IDENTITY: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn x_bit(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    pub fn z_bit(self) -> bool {
        matches!(self, Pauli::Z | Pauli::Y)
    }

    /// Image under Hadamard conjugation.
    pub fn hadamard(self) -> Pauli {
        Pauli::from_bits(self.z_bit(), self.x_bit())
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn parse(c: char) -> Option<Pauli> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Clifford action used for frame propagation. Qubits are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliffordOp {
    Cnot { control: usize, target: usize },
    H(usize),
    /// S or S-dagger; identical on sign-free frames.
    S(usize),
    /// X, Y or Z gates leave a sign-free frame unchanged.
    PauliGate(usize),
}

/// n-qubit Pauli operator stored as x/z bit vectors, phase discarded.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PauliOperator {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
}

fn words(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator { n, x: vec![0; words(n)], z: vec![0; words(n)] }
    }

    pub fn single(n: usize, qubit: usize, p: Pauli) -> Result<Self> {
        let mut op = Self::identity(n);
        op.set(qubit, p)?;
        Ok(op)
    }

    /// Builds from a string such as `"XIZY"` (qubit 0 first).
    pub fn from_dense(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let mut op = Self::identity(chars.len());
        for (q, c) in chars.iter().enumerate() {
            let p = Pauli::parse(*c).ok_or_else(|| Error::Invalid(format!("bad Pauli symbol '{c}'")))?;
            op.set(q, p)?;
        }
        Ok(op)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    fn check(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::QubitOutOfRange { qubit: q + 1, n: self.n });
        }
        Ok(())
    }

    pub fn x_bit(&self, q: usize) -> bool {
        q < self.n && (self.x[q / 64] >> (q % 64)) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        q < self.n && (self.z[q / 64] >> (q % 64)) & 1 == 1
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x_bit(q), self.z_bit(q))
    }

    pub fn set(&mut self, q: usize, p: Pauli) -> Result<()> {
        self.check(q)?;
        self.set_bits(q, p.x_bit(), p.z_bit());
        Ok(())
    }

    fn set_bits(&mut self, q: usize, x: bool, z: bool) {
        let (w, b) = (q / 64, 1u64 << (q % 64));
        if x {
            self.x[w] |= b;
        } else {
            self.x[w] &= !b;
        }
        if z {
            self.z[w] |= b;
        } else {
            self.z[w] &= !b;
        }
    }

    fn flip_x(&mut self, q: usize) {
        self.x[q / 64] ^= 1u64 << (q % 64);
    }

    fn flip_z(&mut self, q: usize) {
        self.z[q / 64] ^= 1u64 << (q % 64);
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(self.z.iter()).all(|w| *w == 0)
    }

    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).map(|(a, b)| (a | b).count_ones() as usize).sum()
    }

    /// Qubits with a non-identity component.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.x_bit(q) || self.z_bit(q)).collect()
    }

    /// Product up to phase.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n, right: other.n });
        }
        let mut out = self.clone();
        for (a, b) in out.x.iter_mut().zip(&other.x) {
            *a ^= b;
        }
        for (a, b) in out.z.iter_mut().zip(&other.z) {
            *a ^= b;
        }
        Ok(out)
    }

    /// Symplectic inner product: true when the operators anticommute.
    pub fn anticommutes(&self, other: &PauliOperator) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n, right: other.n });
        }
        let mut acc = 0u32;
        for i in 0..self.x.len() {
            acc += (self.x[i] & other.z[i]).count_ones() + (self.z[i] & other.x[i]).count_ones();
        }
        Ok(acc % 2 == 1)
    }

    /// Sub-operator on the listed qubits, in that order.
    pub fn restrict(&self, qubits: &[usize]) -> Result<PauliOperator> {
        let mut out = PauliOperator::identity(qubits.len());
        for (i, &q) in qubits.iter().enumerate() {
            self.check(q)?;
            out.set_bits(i, self.x_bit(q), self.z_bit(q));
        }
        Ok(out)
    }

    /// Keeps only the X (or Z) components.
    pub fn x_part(&self) -> PauliOperator {
        PauliOperator { n: self.n, x: self.x.clone(), z: vec![0; self.z.len()] }
    }

    pub fn z_part(&self) -> PauliOperator {
        PauliOperator { n: self.n, x: vec![0; self.x.len()], z: self.z.clone() }
    }

    /// Sparse text form, 1-based: `X1 Z3 Y5`, or `I`.
    pub fn to_sparse(&self) -> String {
        let parts: Vec<String> = self.support().iter().map(|&q| format!("{}{}", self.get(q), q + 1)).collect();
        if parts.is_empty() {
            "I".into()
        } else {
            parts.join(" ")
        }
    }

    pub fn to_dense(&self) -> String {
        (0..self.n).map(|q| self.get(q).symbol()).collect()
    }

    /// Applies the Clifford action in place.
    pub fn conjugate(&mut self, op: CliffordOp) -> Result<()> {
        match op {
            CliffordOp::Cnot { control, target } => {
                self.check(control)?;
                self.check(target)?;
                if control == target {
                    return Err(Error::Invalid("CNOT with identical control and target".into()));
                }
                if self.x_bit(control) {
                    self.flip_x(target);
                }
                if self.z_bit(target) {
                    self.flip_z(control);
                }
            }
            CliffordOp::H(q) => {
                self.check(q)?;
                let (x, z) = (self.x_bit(q), self.z_bit(q));
                self.set_bits(q, z, x);
            }
            CliffordOp::S(q) => {
                self.check(q)?;
                if self.x_bit(q) {
                    self.flip_z(q);
                }
            }
            CliffordOp::PauliGate(q) => self.check(q)?,
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOperator({})", self.to_dense())
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sparse())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabilizerKind {
    X,
    Z,
}

/// One generator of the 7-qubit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StabilizerGenerator {
    pub kind: StabilizerKind,
    /// 1, 2 or 3.
    pub index: u8,
    /// Bit j set when data qubit j (0-based) is in the support.
    pub support: u8,
}

/// Supports {1,3,5,7}, {2,3,6,7}, {4,5,6,7} as 0-based bit masks.
pub const GENERATOR_SUPPORTS: [u8; 3] = [0b101_0101, 0b110_0110, 0b111_1000];

impl StabilizerGenerator {
    pub fn all() -> [StabilizerGenerator; 6] {
        let mk = |kind, i: usize| StabilizerGenerator { kind, index: i as u8 + 1, support: GENERATOR_SUPPORTS[i] };
        [
            mk(StabilizerKind::X, 0),
            mk(StabilizerKind::X, 1),
            mk(StabilizerKind::X, 2),
            mk(StabilizerKind::Z, 0),
            mk(StabilizerKind::Z, 1),
            mk(StabilizerKind::Z, 2),
        ]
    }

    pub fn contains(&self, q: usize) -> bool {
        q < 7 && (self.support >> q) & 1 == 1
    }

    pub fn operator(&self) -> PauliOperator {
        let p = match self.kind {
            StabilizerKind::X => Pauli::X,
            StabilizerKind::Z => Pauli::Z,
        };
        let mut op = PauliOperator::identity(7);
        for q in 0..7 {
            if self.contains(q) {
                op.set_bits(q, p.x_bit(), p.z_bit());
            }
        }
        op
    }
}

/// 1 when `err` anticommutes with the generator.
pub fn syndrome_bit(err: &PauliOperator, g: &StabilizerGenerator) -> Result<bool> {
    if err.num_qubits() != 7 {
        return Err(Error::SizeMismatch { left: err.num_qubits(), right: 7 });
    }
    let mut parity = false;
    for q in 0..7 {
        if g.contains(q) {
            parity ^= match g.kind {
                StabilizerKind::X => err.z_bit(q),
                StabilizerKind::Z => err.x_bit(q),
            };
        }
    }
    Ok(parity)
}

/// Three-bit syndrome against the generators of one kind, g1 in the high bit.
pub fn syndrome(err: &PauliOperator, kind: StabilizerKind) -> Result<u8> {
    let mut s = 0u8;
    for g in StabilizerGenerator::all().iter().filter(|g| g.kind == kind) {
        s = (s << 1) | syndrome_bit(err, g)? as u8;
    }
    Ok(s)
}

/// Syndrome of a 7-bit parity pattern (bit j = qubit j) against the generator supports.
pub fn pattern_syndrome(pattern: u8) -> u8 {
    GENERATOR_SUPPORTS.iter().fold(0u8, |s, m| (s << 1) | ((pattern & m).count_ones() % 2) as u8)
}

/// 6x14 binary check matrix, rows X1..X3 then Z1..Z3, columns x-part then z-part.
pub fn check_matrix() -> [[u8; 14]; 6] {
    let mut m = [[0u8; 14]; 6];
    for (r, g) in StabilizerGenerator::all().iter().enumerate() {
        for q in 0..7 {
            if g.contains(q) {
                let col = match g.kind {
                    StabilizerKind::X => q,
                    StabilizerKind::Z => 7 + q,
                };
                m[r][col] = 1;
            }
        }
    }
    m
}

/// Renders a 3-bit syndrome as `g1g2g3`.
pub fn syndrome_string(s: u8) -> String {
    format!("{:03b}", s & 7)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_syndromes_are_column_indices() {
        let cols = ["100", "010", "110", "001", "101", "011", "111"];
        for q in 0..7 {
            let e = PauliOperator::single(7, q, Pauli::X).unwrap();
            assert_eq!(syndrome_string(syndrome(&e, StabilizerKind::Z).unwrap()), cols[q]);
            assert_eq!(syndrome(&e, StabilizerKind::X).unwrap(), 0);
        }
    }

    #[test]
    fn generators_commute() {
        let gs = StabilizerGenerator::all();
        for a in &gs {
            for b in &gs {
                assert!(!a.operator().anticommutes(&b.operator()).unwrap());
            }
        }
    }

    #[test]
    fn cnot_rules() {
        let mut p = PauliOperator::from_dense("XI").unwrap();
        p.conjugate(CliffordOp::Cnot { control: 0, target: 1 }).unwrap();
        assert_eq!(p.to_dense(), "XX");
        let mut p = PauliOperator::from_dense("IZ").unwrap();
        p.conjugate(CliffordOp::Cnot { control: 0, target: 1 }).unwrap();
        assert_eq!(p.to_dense(), "ZZ");
        let mut p = PauliOperator::from_dense("X").unwrap();
        p.conjugate(CliffordOp::S(0)).unwrap();
        assert_eq!(p.to_dense(), "Y");
    }

    #[test]
    fn pattern_matches_operator_syndrome() {
        for pat in 0u8..128 {
            let mut e = PauliOperator::identity(7);
            for q in 0..7 {
                if (pat >> q) & 1 == 1 {
                    e.set(q, Pauli::X).unwrap();
                }
            }
            assert_eq!(pattern_syndrome(pat), syndrome(&e, StabilizerKind::Z).unwrap());
        }
    }

    #[test]
    fn sparse_format() {
        let p = PauliOperator::from_dense("XIZIIIY").unwrap();
        assert_eq!(p.to_sparse(), "X1 Z3 Y7");
        assert_eq!(PauliOperator::identity(3).to_sparse(), "I");
    }
}
