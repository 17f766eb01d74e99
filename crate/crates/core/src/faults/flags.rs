//! Placement audit for flag gadgets.

use serde::{Deserialize, Serialize};

use super::engine::{enumerate_with, FaultEngine, FaultRecord};
use super::layout::{FlagGadget, FlagKind};
use super::table::{classify_collisions, derive_perfect_assumptions, DecodingTable, Verdict};
use super::{FaultLocation, Side};
use crate::circuit::{Circuit, GateLabel};
use crate::error::Result;
use crate::pauli::Pauli;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetReport {
    pub first: u32,
    pub kind: FlagKind,
    /// 1-based.
    pub data_qubit: usize,
    /// Distinguishable first fault, harmless second fault, no disturbance of the other type.
    pub conditions: [ConditionResult; 3],
}

impl GadgetReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn name(&self) -> String {
        format!("CN{}/CN{}", self.first, self.first + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagReport {
    pub gadgets: Vec<GadgetReport>,
}

impl FlagReport {
    pub fn all_passed(&self) -> bool {
        self.gadgets.iter().all(|g| g.passed())
    }
}

fn sides(kind: FlagKind) -> (Side, Side) {
    match kind {
        FlagKind::X => (Side::Control, Side::Target),
        FlagKind::Z => (Side::Target, Side::Control),
    }
}

fn harmless(t: &DecodingTable, r: &FaultRecord) -> bool {
    r.signature.data_trivial() && t.relevant(&r.residual).chars().all(|c| c == 'I')
}

/// Added faults leave every class they land in non-ambiguous, given the
/// assumptions the rest of the table already needs.
fn no_new_ambiguity(t: &DecodingTable, added: &[FaultLocation]) -> (bool, Vec<String>) {
    let ledger = derive_perfect_assumptions(&t.without(added));
    let mut bad = Vec::new();
    for class in classify_collisions(t, &ledger) {
        for a in added {
            if class.verdict == Verdict::Ambiguous && class.contains(a) {
                bad.push(a.to_string());
            }
        }
    }
    (bad.is_empty(), bad)
}

fn audit(e: &FaultEngine, g: &FlagGadget, tx: &DecodingTable, tz: &DecodingTable) -> Result<GadgetReport> {
    let (guard, opposite, tg, to) = match g.kind {
        FlagKind::X => (Pauli::X, Pauli::Z, tx, tz),
        FlagKind::Z => (Pauli::Z, Pauli::X, tz, tx),
    };
    let (data_side, flag_side) = sides(g.kind);
    let (a, b) = (GateLabel::Flag(g.first), GateLabel::Flag(g.first + 1));

    let f1 = e.analyse(&FaultLocation::new(a.clone(), data_side, guard))?;
    let mut clashes = Vec::new();
    for lab in [&a, &b] {
        let o = e.analyse(&FaultLocation::new(lab.clone(), flag_side, guard))?;
        if o.signature == f1.signature && !(harmless(tg, &f1) && harmless(tg, &o)) {
            clashes.push(o.location.to_string());
        }
    }
    let c1 = ConditionResult {
        passed: clashes.is_empty(),
        detail: if clashes.is_empty() {
            format!("{} is distinguishable or harmless", f1.location)
        } else {
            format!("{} collides with {}", f1.location, clashes.join(", "))
        },
    };

    let f2 = FaultLocation::new(b.clone(), data_side, guard);
    let (ok2, bad2) = no_new_ambiguity(tg, std::slice::from_ref(&f2));
    let c2 = ConditionResult {
        passed: ok2,
        detail: if ok2 { format!("{f2} creates no ambiguity") } else { format!("{} becomes ambiguous", bad2.join(", ")) },
    };

    let opp = [FaultLocation::new(a, data_side, opposite), FaultLocation::new(b, data_side, opposite)];
    let (ok3, bad3) = no_new_ambiguity(to, &opp);
    let c3 = ConditionResult {
        passed: ok3,
        detail: if ok3 {
            format!("{} and {} leave the {opposite} table intact", opp[0], opp[1])
        } else {
            format!("{} becomes ambiguous", bad3.join(", "))
        },
    };
    Ok(GadgetReport { first: g.first, kind: g.kind, data_qubit: g.data_qubit + 1, conditions: [c1, c2, c3] })
}

/// Checks the three placement conditions for every flag gadget in `c`.
pub fn check_flag_conditions(c: &Circuit) -> Result<FlagReport> {
    let e = FaultEngine::new(c)?;
    let tx = enumerate_with(&e, &[Pauli::X])?;
    let tz = enumerate_with(&e, &[Pauli::Z])?;
    let gadgets = e.layout.gadgets.iter().map(|g| audit(&e, g, &tx, &tz)).collect::<Result<Vec<_>>>()?;
    Ok(FlagReport { gadgets })
}
