use steane_ft::circuit::{build_full_ec_circuit, BlockKind, EcOptions, RoundOrder};
use steane_ft::depth::{analyse_block, DEFAULT_GAMMA};
use steane_ft::faults::{
    classify_collisions, enumerate_single_faults, inject_and_propagate, FaultEngine, FaultLocation, Verdict,
};
use steane_ft::pauli::Pauli;

fn loc(s: &str) -> FaultLocation {
    s.parse().unwrap()
}

#[test]
fn location_labels_round_trip() {
    for s in ["X25C", "Z33T", "YR19C", "XCN7C", "ZH4", "XH5"] {
        assert_eq!(loc(s).to_string(), s);
    }
    assert!("Q1C".parse::<FaultLocation>().is_err());
    assert!("X0C".parse::<FaultLocation>().is_err());
}

#[test]
fn single_fault_reaches_carrier_free_readout() {
    let c = build_full_ec_circuit(EcOptions::data(false));
    let (sig, residual) = inject_and_propagate(&c, &loc("X25C")).unwrap();
    assert_eq!(residual.to_string(), "X7");
    assert_eq!(sig.meas_bits(&[4, 5, 6]), "001");
    assert!(sig.z_syn.iter().all(|s| *s == 0));
    let (_, residual) = inject_and_propagate(&c, &loc("X36C")).unwrap();
    assert_eq!(residual.to_string(), "X1");
}

#[test]
fn faults_on_fresh_or_finished_lines_are_neutral() {
    let e = FaultEngine::new(&build_full_ec_circuit(EcOptions::data(false))).unwrap();
    for s in ["X28C", "X31C", "X34C", "Z33T", "Z35T", "Z36T"] {
        assert!(e.analyse(&loc(s)).unwrap().neutral, "{s}");
    }
    for s in ["X36C", "Z35C", "X25C"] {
        assert!(!e.analyse(&loc(s)).unwrap().neutral, "{s}");
    }
}

#[test]
fn flag_fires_for_guarded_fault() {
    let e = FaultEngine::new(&build_full_ec_circuit(EcOptions::data(true))).unwrap();
    let r = e.analyse(&loc("X4C")).unwrap();
    assert!(r.signature.x_flags.iter().any(|b| *b));
    let clean = e.analyse(&loc("X25C")).unwrap();
    assert!(clean.signature.x_flags.iter().all(|b| !*b));
}

#[test]
fn unflagged_period_has_ambiguous_classes() {
    let c = build_full_ec_circuit(EcOptions::data(false));
    let t = enumerate_single_faults(&c, &[Pauli::X]).unwrap();
    let ambiguous: Vec<_> = classify_collisions(&t, &Default::default()).into_iter().filter(|k| k.verdict == Verdict::Ambiguous).collect();
    assert!(!ambiguous.is_empty());
    assert!(ambiguous.iter().any(|k| k.contains(&loc("X21C")) && k.contains(&loc("X26C"))));
}

#[test]
fn y_faults_expose_flag_hits_from_neutral_sites() {
    let a = analyse_block(EcOptions::data(true), DEFAULT_GAMMA).unwrap();
    let c = build_full_ec_circuit(EcOptions::data(true));
    let t = enumerate_single_faults(&c, &[Pauli::Y]).unwrap();
    let mut pairs: Vec<Vec<String>> = classify_collisions(&t, &a.ledgers.y())
        .into_iter()
        .filter(|k| k.verdict == Verdict::Ambiguous)
        .map(|k| {
            let mut v: Vec<String> = k.members().map(|m| m.to_string()).collect();
            v.sort();
            v
        })
        .collect();
    pairs.sort();
    assert_eq!(pairs, [["Y29T", "Y35T"], ["Y32T", "Y36T"]]);
    for s in ["Y35T", "Y36T"] {
        let r = t.find(&loc(s)).unwrap();
        assert!(r.signature.z_flags.iter().any(|b| *b), "{s}");
    }
}

#[test]
fn interleaved_rounds_give_same_profile() {
    let grouped = analyse_block(EcOptions::data(true), DEFAULT_GAMMA).unwrap();
    let opts = EcOptions { block: BlockKind::Data, flags: true, order: RoundOrder::Interleaved };
    let inter = analyse_block(opts, DEFAULT_GAMMA).unwrap();
    assert_eq!(inter.ledgers, grouped.ledgers);
    assert_eq!(inter.profile, grouped.profile);
}

#[test]
fn auxiliary_period_shape() {
    let c = build_full_ec_circuit(EcOptions::auxiliary(true));
    assert_eq!(c.primary_cnot_count(), 40);
    assert!(c.gate(&"C1".parse().unwrap()).is_none());
    let e = FaultEngine::new(&c).unwrap();
    assert_eq!(e.layout.block, BlockKind::Auxiliary);
    assert_eq!(e.layout.gadgets.len(), 4);
}
