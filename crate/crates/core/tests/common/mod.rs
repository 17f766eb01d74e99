#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use steane_ft::circuit::{build_full_ec_circuit, Basis, Circuit, EcOptions, Gate, GateKind, GateLabel};
use steane_ft::faults::{enumerate_single_faults, FaultRecord};
use steane_ft::pauli::Pauli;

pub const DATA_R: [u32; 7] = [7, 13, 13, 15, 14, 10, 10];
pub const AUX_R: [u32; 7] = [6, 8, 8, 8, 7, 6, 6];

pub const TABLE1_DATA: [(u32, f64); 10] = [
    (3, 2.545392838961480e-04),
    (1, 1.581849407936365e-04),
    (1, 1.541452488659314e-04),
    (1, 1.535849320196374e-04),
    (1, 1.535052191135160e-04),
    (1, 1.534938383096437e-04),
    (1, 1.534922126182756e-04),
    (1, 1.534919803794627e-04),
    (1, 1.534919472025467e-04),
    (1, 1.534919424629885e-04),
];

pub const TABLE1_AUX: [(u32, f64); 10] = [
    (2, 4.235493434985176e-04),
    (1, 3.325573661456601e-04),
    (1, 3.253090435914119e-04),
    (1, 3.242992819087329e-04),
    (1, 3.241555417366799e-04),
    (1, 3.241350178274260e-04),
    (1, 3.241320860525464e-04),
    (1, 3.241316672318930e-04),
    (1, 3.241316074004594e-04),
    (1, 3.241315988531136e-04),
];

pub const TABLE2_FINITE_R: [f64; 5] = [1.0, 10.0, 100.0, 1000.0, 10000.0];

/// Rows k = 1..6, columns r = 1, 10, 100, 1000, 10000.
pub const TABLE2_T: [[f64; 5]; 6] = [
    [2.117746717492588e-05, 1.460514977581095e-04, 3.559238180659812e-04, 4.156519563282803e-04, 4.227461258593848e-04],
    [1.225151811985496e-04, 2.332028780560102e-04, 3.138226254720990e-04, 3.304774598767125e-04, 3.323470128717182e-04],
    [2.120482579274038e-04, 2.794082852232359e-04, 3.173245799080812e-04, 3.244355203675500e-04, 3.252208411591097e-04],
    [2.655893487303872e-04, 3.020782480236627e-04, 3.205601428289243e-04, 3.238926116780298e-04, 3.242582455709016e-04],
    [2.942962587328901e-04, 3.132112741262893e-04, 3.223416702370663e-04, 3.239587893449915e-04, 3.241356935969836e-04],
    [3.090826895278016e-04, 3.187031101529598e-04, 3.232412624832499e-04, 3.240381943606451e-04, 3.241252517489947e-04],
];

pub const TABLE2_TOFFOLI: [[f64; 5]; 6] = [
    [5.294366793731470e-05, 2.491466726461868e-04, 3.958405079425398e-04, 4.206051077443075e-04, 4.232530663520711e-04],
    [1.662786830728301e-04, 2.786443649940462e-04, 3.251411813479597e-04, 3.317850005371942e-04, 3.324798056189911e-04],
    [2.417036904907203e-04, 3.015607830486628e-04, 3.221799088505769e-04, 3.249850293133916e-04, 3.252765256929118e-04],
    [2.823189225421760e-04, 3.130276678412809e-04, 3.228397991964612e-04, 3.241485045352345e-04, 3.242841535895349e-04],
    [3.031248322460440e-04, 3.186541761167236e-04, 3.234488317485713e-04, 3.240826085281899e-04, 3.241482247386771e-04],
    [3.136109302804428e-04, 3.214164004069907e-04, 3.237871009174483e-04, 3.240991302796217e-04, 3.241314176071593e-04],
];

/// X-type decoding table: (Z syndrome, readout of q5..q7, members, visible residual).
pub const X_TABLE: &[(&str, &str, &str, &str)] = &[
    ("000", "000", "X36C", "X1"),
    ("000", "010", "X24C X27T X32T X36T", "X6"),
    ("000", "010", "X35C", "X1 X6"),
    ("000", "001", "X25C X26T X29T X35T", "X7"),
    ("000", "011", "X19C X30C X31T X33C X34T", "X1 X6 X7"),
    ("000", "100", "X23C X27C X28T X30T X33T", "X5"),
    ("000", "110", "X21C", "X1 X5 X6"),
    ("000", "110", "X26C", "X5 X6"),
    ("000", "101", "X20C", "X1 X5 X7"),
    ("000", "111", "X22C", "X5 X6 X7"),
    ("000", "111", "X29C X32C", "X1 X5 X6 X7"),
    ("100", "011", "X2C X3T X6T X3C X6C X12T", "X1 X6 X7"),
    ("010", "101", "X5C X13T", "X1 X5 X7"),
    ("110", "110", "X8C X14T", "X1 X5 X6"),
    ("110", "110", "X10C", "X5 X6"),
    ("001", "111", "X4C X7C", "X1 X5 X6 X7"),
    ("001", "111", "X11C X15T", "X5 X6 X7"),
    ("101", "100", "X4T X7T X9C X9T X16T", "X5"),
    ("011", "010", "X1C", "X1 X6"),
    ("011", "010", "X1T X5T X10T X17T", "X6"),
    ("111", "001", "X2T X8T X11T X18T", "X7"),
];

/// Z-type decoding table: (X syndrome, readout of q2..q4, members, visible residual).
pub const Z_TABLE: &[(&str, &str, &str, &str)] = &[
    ("000", "000", "Z1C Z2C Z1T Z2T Z29T Z32T Z34T Z35C Z36C", "Z1"),
    ("000", "010", "Z14T Z21C Z29C Z30C Z31C XH5", "Z3"),
    ("000", "010", "Z26T", "Z1 Z3"),
    ("000", "001", "Z15T Z22C Z26C Z27C Z28C XH6", "Z4"),
    ("000", "011", "Z18T Z25C", "Z1 Z3 Z4"),
    ("000", "100", "Z13T Z20C Z30T Z32C Z33C Z34C XH4", "Z2"),
    ("000", "100", "Z27T Z31T", "Z1 Z2"),
    ("000", "110", "Z12T Z19C", "Z1 Z2 Z3"),
    ("000", "110", "Z28T", "Z2 Z3"),
    ("000", "101", "Z17T Z24C", "Z1 Z2 Z4"),
    ("000", "111", "Z16T Z23C", "Z2 Z3 Z4"),
    ("100", "110", "Z6T", "Z1 Z2 Z3"),
    ("100", "110", "Z7T", "Z2 Z3"),
    ("010", "100", "Z3T Z5T", "Z1 Z2"),
    ("010", "100", "ZH1 Z3C Z4C Z5C Z4T", "Z2"),
    ("110", "010", "ZH2 Z6C Z7C Z8C", "Z3"),
    ("110", "010", "Z8T", "Z1 Z3"),
    // Listed elsewhere with readout 101; a lone Z4 can only flip the third bit.
    ("001", "001", "ZH3 Z9C Z10C Z11C", "Z4"),
    ("101", "111", "Z9T", "Z2 Z3 Z4"),
    ("011", "101", "Z10T", "Z1 Z2 Z4"),
    ("111", "011", "Z11T", "Z1 Z3 Z4"),
];

pub const X_LEDGER: [&str; 3] = ["X1C", "X35C", "X36C"];
pub const Z_LEDGER: [&str; 11] = ["Z1C", "Z1T", "Z2C", "Z2T", "Z3T", "Z5T", "Z8T", "Z31T", "Z34T", "Z35C", "Z36C"];

pub type TableKey = (String, String, String);

fn syndrome_bits(s: u8) -> String {
    format!("{s:03b}")
}

/// Visible residual and signature for one decoded fault type, keyed like the reference tables.
pub fn reference_view(kind: Pauli) -> BTreeMap<TableKey, BTreeSet<String>> {
    let c = build_full_ec_circuit(EcOptions::data(false));
    let t = enumerate_single_faults(&c, &[kind]).expect("enumeration");
    let (visible, readout): ([usize; 4], [usize; 3]) = match kind {
        Pauli::X => ([0, 4, 5, 6], [4, 5, 6]),
        _ => ([0, 1, 2, 3], [1, 2, 3]),
    };
    let mut out: BTreeMap<TableKey, BTreeSet<String>> = BTreeMap::new();
    for r in t.records.iter().filter(|r| r.data_side && !r.neutral) {
        if matches!(r.location.gate, GateLabel::Repeat(_)) {
            continue;
        }
        let key = key_of(r, kind, &visible, &readout);
        out.entry(key).or_default().insert(r.location.to_string());
    }
    out
}

fn key_of(r: &FaultRecord, kind: Pauli, visible: &[usize], readout: &[usize]) -> TableKey {
    let syn = match kind {
        Pauli::X => &r.signature.z_syn,
        _ => &r.signature.x_syn,
    };
    let g = syndrome_bits(*syn.last().unwrap_or(&0));
    let meas = r.signature.meas_bits(readout);
    let res: Vec<String> = visible
        .iter()
        .filter(|&&q| match kind {
            Pauli::X => r.residual.x_bit(q),
            _ => r.residual.z_bit(q),
        })
        .map(|q| format!("{}{}", kind.symbol(), q + 1))
        .collect();
    (g, meas, res.join(" "))
}

pub fn reference_table(rows: &[(&str, &str, &str, &str)]) -> BTreeMap<TableKey, BTreeSet<String>> {
    rows.iter()
        .map(|(g, m, members, res)| {
            ((g.to_string(), m.to_string(), res.to_string()), members.split_whitespace().map(str::to_string).collect())
        })
        .collect()
}

/// Data circuit with an extra X flag pair CN17/CN18 wrapped around C1 on qubit 1.
pub fn misplaced_flag_circuit() -> Circuit {
    let mut c = build_full_ec_circuit(EcOptions::data(true));
    let (a, b) = (c.num_qubits, c.num_qubits + 1);
    c.num_qubits += 2;
    let i = c.position(&GateLabel::Numbered(1)).expect("C1");
    let mut g = c.gates.clone();
    g.insert(i + 1, Gate::new(GateLabel::Flag(18), GateKind::FlagCnot, &[0, b]));
    g.insert(i, Gate::new(GateLabel::Flag(17), GateKind::FlagCnot, &[0, a]));
    let head = [
        Gate::new(GateLabel::Prep(900), GateKind::PrepPlus, &[a]),
        Gate::new(GateLabel::Prep(901), GateKind::Prep0, &[b]),
        Gate::new(GateLabel::Prep(902), GateKind::Cnot, &[a, b]),
    ];
    g.splice(0..0, head);
    for q in [a, b] {
        g.push(Gate::new(GateLabel::Meas { qubit: q, basis: Basis::Z }, GateKind::MeasZ, &[q]));
    }
    c.gates = g;
    c
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}
