//! Decoding tables, collision classes and the assumed-perfect ledger.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::engine::FaultRecord;
use super::{FaultLocation, MeasurementSignature};
use crate::circuit::BlockKind;
use crate::pauli::{Pauli, PauliOperator};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodingTable {
    pub types: Vec<Pauli>,
    pub block: BlockKind,
    /// Data qubits left unmeasured (the logical carrier).
    pub unmeasured: Vec<usize>,
    pub clean: MeasurementSignature,
    pub records: Vec<FaultRecord>,
}

impl DecodingTable {
    /// Records grouped by signature, in signature order.
    pub fn entries(&self) -> BTreeMap<&MeasurementSignature, Vec<&FaultRecord>> {
        let mut m: BTreeMap<&MeasurementSignature, Vec<&FaultRecord>> = BTreeMap::new();
        for r in &self.records {
            m.entry(&r.signature).or_default().push(r);
        }
        m
    }

    pub fn find(&self, loc: &FaultLocation) -> Option<&FaultRecord> {
        self.records.iter().find(|r| &r.location == loc)
    }

    pub fn without(&self, drop: &[FaultLocation]) -> DecodingTable {
        let mut t = self.clone();
        t.records.retain(|r| !drop.contains(&r.location));
        t
    }

    /// The part of a residual that a correction on the carrier must undo.
    pub fn relevant(&self, residual: &PauliOperator) -> String {
        self.unmeasured.iter().map(|&q| residual.get(q).symbol()).collect()
    }

    /// Records that take part in classification.
    pub fn candidates<'a>(&'a self, ledger: &'a PerfectOpLedger) -> impl Iterator<Item = &'a FaultRecord> + 'a {
        self.records.iter().filter(move |r| r.data_side && !r.neutral && !ledger.contains(&r.location))
    }
}

/// Fault sites assumed error-free.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectOpLedger {
    pub entries: BTreeSet<FaultLocation>,
}

impl PerfectOpLedger {
    pub fn new(entries: impl IntoIterator<Item = FaultLocation>) -> Self {
        PerfectOpLedger { entries: entries.into_iter().collect() }
    }

    pub fn contains(&self, loc: &FaultLocation) -> bool {
        self.entries.contains(loc)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn union(&self, other: &PerfectOpLedger) -> PerfectOpLedger {
        PerfectOpLedger { entries: self.entries.union(&other.entries).cloned().collect() }
    }

    /// Every site in the ledger re-tagged with `pauli`.
    pub fn retagged(&self, pauli: Pauli) -> PerfectOpLedger {
        PerfectOpLedger { entries: self.entries.iter().map(|l| l.with_pauli(pauli)).collect() }
    }

    pub fn labels(&self) -> Vec<String> {
        self.entries.iter().map(|l| l.to_string()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Unique,
    Benign,
    Ambiguous,
}

/// Members sharing one signature, grouped by the correction they need.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionClass {
    pub signature: MeasurementSignature,
    pub verdict: Verdict,
    /// Correction key (carrier Pauli) to member locations; the clean run appears as `None`.
    pub groups: BTreeMap<String, Vec<Option<FaultLocation>>>,
}

impl CollisionClass {
    pub fn members(&self) -> impl Iterator<Item = &FaultLocation> {
        self.groups.values().flatten().flatten()
    }

    pub fn contains(&self, loc: &FaultLocation) -> bool {
        self.members().any(|m| m == loc)
    }

    pub fn has_clean(&self) -> bool {
        self.groups.values().flatten().any(|m| m.is_none())
    }
}

/// Classifies every signature reached by a candidate fault.
pub fn classify_collisions(t: &DecodingTable, perfect: &PerfectOpLedger) -> Vec<CollisionClass> {
    let mut by_sig: BTreeMap<&MeasurementSignature, BTreeMap<String, Vec<Option<FaultLocation>>>> = BTreeMap::new();
    for r in t.candidates(perfect) {
        by_sig.entry(&r.signature).or_default().entry(t.relevant(&r.residual)).or_default().push(Some(r.location.clone()));
    }
    let identity = t.relevant(&PauliOperator::identity(7));
    by_sig
        .into_iter()
        .map(|(sig, mut groups)| {
            if *sig == t.clean {
                groups.entry(identity.clone()).or_default().insert(0, None);
            }
            let size: usize = groups.values().map(|v| v.len()).sum();
            let verdict = if size <= 1 {
                Verdict::Unique
            } else if groups.len() == 1 {
                Verdict::Benign
            } else {
                Verdict::Ambiguous
            };
            CollisionClass { signature: sig.clone(), verdict, groups }
        })
        .collect()
}

/// Smallest set of sites whose removal leaves no ambiguous class.
///
/// Classes are disjoint, so the minimum is reached class by class: keep the
/// group containing the clean run if any, otherwise the largest group, and on
/// ties the group whose latest member comes earliest in the circuit.
pub fn derive_perfect_assumptions(t: &DecodingTable) -> PerfectOpLedger {
    let order: BTreeMap<&FaultLocation, usize> = t.records.iter().map(|r| (&r.location, r.gate_index)).collect();
    let mut out = PerfectOpLedger::default();
    for class in classify_collisions(t, &PerfectOpLedger::default()) {
        if class.verdict != Verdict::Ambiguous {
            continue;
        }
        let latest = |g: &Vec<Option<FaultLocation>>| g.iter().flatten().map(|l| order[l]).max().unwrap_or(0);
        let keep = class
            .groups
            .iter()
            .max_by(|a, b| {
                let ca = a.1.iter().any(|m| m.is_none());
                let cb = b.1.iter().any(|m| m.is_none());
                ca.cmp(&cb).then(a.1.len().cmp(&b.1.len())).then(latest(b.1).cmp(&latest(a.1)))
            })
            .map(|(k, _)| k.clone())
            .unwrap();
        for (k, g) in &class.groups {
            if *k != keep {
                out.entries.extend(g.iter().flatten().cloned());
            }
        }
    }
    out
}
