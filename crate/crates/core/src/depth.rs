//! Per-qubit fault-location counts and the R coefficients they feed.

use serde::{Deserialize, Serialize};

use crate::circuit::{build_full_ec_circuit, Circuit, EcOptions};
use crate::error::Result;
use crate::faults::engine::enumerate_with;
use crate::faults::{derive_perfect_assumptions, FaultEngine};
use crate::pauli::Pauli;

pub use crate::faults::PerfectOpLedger;

pub const DEFAULT_GAMMA: u32 = 4;

/// Assumed-perfect sites for each fault type.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockLedgers {
    pub x: PerfectOpLedger,
    pub z: PerfectOpLedger,
}

impl BlockLedgers {
    /// A Y fault is excluded wherever its X or Z part is assumed away.
    pub fn y(&self) -> PerfectOpLedger {
        self.x.retagged(Pauli::Y).union(&self.z.retagged(Pauli::Y))
    }

    pub fn for_type(&self, p: Pauli) -> PerfectOpLedger {
        match p {
            Pauli::X => self.x.clone(),
            Pauli::Z => self.z.clone(),
            _ => self.y(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthProfile {
    pub r_x: [u32; 7],
    pub r_y: [u32; 7],
    pub r_z: [u32; 7],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDepth {
    pub r: [u32; 7],
    pub gamma: u32,
}

/// Fault sites per data qubit whose decoded type is `kind`, skipping neutral and ledger sites.
pub fn count_fault_locations(c: &Circuit, ledger: &PerfectOpLedger, kind: Pauli) -> Result<[u32; 7]> {
    let e = FaultEngine::new(c)?;
    count_with(&e, ledger, kind)
}

fn count_with(e: &FaultEngine, ledger: &PerfectOpLedger, kind: Pauli) -> Result<[u32; 7]> {
    for l in &ledger.entries {
        e.locate(l)?;
    }
    let t = enumerate_with(e, &[kind])?;
    let mut out = [0u32; 7];
    for r in t.candidates(ledger) {
        out[r.qubit] += 1;
    }
    Ok(out)
}

/// Ledgers derived from the X and Z tables of `c`.
pub fn derive_ledgers(c: &Circuit) -> Result<BlockLedgers> {
    let e = FaultEngine::new(c)?;
    Ok(BlockLedgers {
        x: derive_perfect_assumptions(&enumerate_with(&e, &[Pauli::X])?),
        z: derive_perfect_assumptions(&enumerate_with(&e, &[Pauli::Z])?),
    })
}

pub fn depth_profile(c: &Circuit, ledgers: &BlockLedgers) -> Result<DepthProfile> {
    let e = FaultEngine::new(c)?;
    Ok(DepthProfile {
        r_x: count_with(&e, &ledgers.x, Pauli::X)?,
        r_y: count_with(&e, &ledgers.y(), Pauli::Y)?,
        r_z: count_with(&e, &ledgers.z, Pauli::Z)?,
    })
}

/// `R[q] = ceil((r_x + r_y + r_z) / 3)`.
pub fn effective_r(p: &DepthProfile, gamma: u32) -> BlockDepth {
    let mut r = [0u32; 7];
    for q in 0..7 {
        r[q] = (p.r_x[q] + p.r_y[q] + p.r_z[q]).div_ceil(3);
    }
    BlockDepth { r, gamma }
}

/// Circuit, ledgers, profile and R for one block configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockAnalysis {
    pub options: EcOptions,
    pub ledgers: BlockLedgers,
    pub profile: DepthProfile,
    pub depth: BlockDepth,
}

pub fn analyse_block(options: EcOptions, gamma: u32) -> Result<BlockAnalysis> {
    let c = build_full_ec_circuit(options);
    let ledgers = derive_ledgers(&c)?;
    let profile = depth_profile(&c, &ledgers)?;
    Ok(BlockAnalysis { options, ledgers, profile, depth: effective_r(&profile, gamma) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceiling_rule() {
        let p = DepthProfile { r_x: [9, 0, 0, 0, 0, 0, 1], r_y: [5, 0, 0, 0, 0, 0, 0], r_z: [5, 0, 0, 0, 0, 0, 0] };
        assert_eq!(effective_r(&p, 4).r, [7, 0, 0, 0, 0, 0, 1]);
        assert_eq!(effective_r(&DepthProfile::default(), 4).r, [0; 7]);
    }
}
