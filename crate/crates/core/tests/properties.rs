use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use proptest::prelude::*;

use steane_ft::circuit::{build_encoder, simulate, Circuit, Gate, GateKind, GateLabel, StateVector};
use steane_ft::cli::compare_csv;
use steane_ft::depth::BlockDepth;
use steane_ft::pauli::{syndrome, Pauli, PauliOperator, StabilizerGenerator, StabilizerKind};
use steane_ft::resources::{cnot_count, LogicalGate};
use steane_ft::threshold::{
    coefficient_c0, evaluate_p_th, expand_levels, optimize_x, ConcatenationProfile, GateClass, TableId, ThresholdQuery,
};

fn pauli() -> impl Strategy<Value = Pauli> {
    (any::<bool>(), any::<bool>()).prop_map(|(x, z)| Pauli::from_bits(x, z))
}

fn operator(n: usize) -> impl Strategy<Value = PauliOperator> {
    prop::collection::vec(pauli(), n).prop_map(|ps| {
        let s: String = ps.iter().map(|p| p.symbol()).collect();
        PauliOperator::from_dense(&s).unwrap()
    })
}

const CLIFFORD_KINDS: [GateKind; 6] = [GateKind::Cnot, GateKind::H, GateKind::S, GateKind::Sdg, GateKind::X, GateKind::Z];

fn gate(n: usize) -> impl Strategy<Value = (GateKind, usize, usize)> {
    (0..CLIFFORD_KINDS.len(), 0..n, 1..n).prop_map(move |(k, a, d)| (CLIFFORD_KINDS[k], a, (a + d) % n))
}

fn make_gate(i: usize, (kind, a, b): (GateKind, usize, usize)) -> Gate {
    let qs: Vec<usize> = if kind == GateKind::Cnot { vec![a, b] } else { vec![a] };
    Gate::new(GateLabel::Aux(i as u32 + 1), kind, &qs)
}

fn state(n: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n).prop_filter_map("non-zero", |v| {
        let norm = v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
        (norm > 1e-3).then(|| StateVector::from_amplitudes(v.iter().map(|(a, b)| Complex64::new(a / norm, b / norm)).collect()).unwrap())
    })
}

fn depth_list() -> impl Strategy<Value = [u32; 7]> {
    prop::array::uniform7(0u32..20)
}

proptest! {
    #[test]
    fn dense_string_round_trip(p in operator(9)) {
        prop_assert_eq!(PauliOperator::from_dense(&p.to_dense()).unwrap(), p);
    }

    #[test]
    fn product_is_sign_free_group(a in operator(6), b in operator(6)) {
        prop_assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
        prop_assert!(a.multiply(&a).unwrap().is_identity());
        prop_assert!(a.multiply(&b).unwrap().weight() <= a.weight() + b.weight());
        prop_assert_eq!(a.anticommutes(&b).unwrap(), b.anticommutes(&a).unwrap());
    }

    #[test]
    fn conjugation_preserves_commutation(a in operator(5), b in operator(5), gs in prop::collection::vec(gate(5), 0..12)) {
        let before = a.anticommutes(&b).unwrap();
        let (mut a2, mut b2) = (a.clone(), b.clone());
        for (i, g) in gs.into_iter().enumerate() {
            let op = make_gate(i, g).clifford().unwrap().unwrap();
            a2.conjugate(op).unwrap();
            b2.conjugate(op).unwrap();
        }
        prop_assert_eq!(a2.anticommutes(&b2).unwrap(), before);
        prop_assert_eq!(a2.weight() == 0, a.weight() == 0);
    }

    #[test]
    fn frame_update_matches_dense_unitary(p in operator(3), g in gate(3), psi in state(3)) {
        let gate = make_gate(0, g);
        let mut moved = p.clone();
        moved.conjugate(gate.clifford().unwrap().unwrap()).unwrap();
        let mut lhs = psi.clone();
        lhs.apply_pauli_operator(&p).unwrap();
        lhs.apply_unitary(&gate).unwrap();
        let mut rhs = psi;
        rhs.apply_unitary(&gate).unwrap();
        rhs.apply_pauli_operator(&moved).unwrap();
        prop_assert!(lhs.distance_up_to_phase(&rhs).unwrap() < 1e-10);
    }

    #[test]
    fn syndrome_matches_dense_expectation(e in operator(7)) {
        let enc = build_encoder();
        let mut s = simulate(&enc, &StateVector::zero(7).unwrap(), &BTreeMap::new()).unwrap();
        s.apply_pauli_operator(&e).unwrap();
        for kind in [StabilizerKind::X, StabilizerKind::Z] {
            let bits = syndrome(&e, kind).unwrap();
            for (j, g) in StabilizerGenerator::all().iter().filter(|g| g.kind == kind).enumerate() {
                let ev = s.expectation(&g.operator()).unwrap();
                let flipped = (bits >> (2 - j)) & 1 == 1;
                let want = if flipped { -1.0 } else { 1.0 };
                prop_assert!((ev - want).abs() < 1e-10, "generator {} gives {}", j + 1, ev);
            }
        }
    }

    #[test]
    fn circuit_text_round_trip(n in 2usize..9, gs in prop::collection::vec((0..8usize, 0..64usize, 1..64usize), 1..40)) {
        let kinds = [GateKind::Cnot, GateKind::H, GateKind::S, GateKind::Sdg, GateKind::T, GateKind::Tdg, GateKind::X, GateKind::Z];
        let mut c = Circuit::new(n);
        for (i, (k, a, d)) in gs.into_iter().enumerate() {
            let (a, b) = (a % n, (a + 1 + d % (n - 1)) % n);
            let kind = kinds[k];
            let qs: Vec<usize> = if kind == GateKind::Cnot { vec![a, b] } else { vec![a] };
            c.push(Gate::new(GateLabel::Aux(i as u32 + 1), kind, &qs));
        }
        let back = Circuit::parse(&c.to_text()).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn histogram_matches_expansion(base in depth_list(), k in 1u32..5) {
        let full = expand_levels(&base, k).unwrap();
        prop_assert_eq!(full.len(), 7usize.pow(k));
        let profile = ConcatenationProfile::new(&base, k).unwrap();
        let mut want: HashMap<u64, u128> = HashMap::new();
        for v in full.iter().step_by(7) {
            *want.entry(*v).or_default() += 1;
        }
        let got: HashMap<u64, u128> = profile.sampled.iter().map(|(k, v)| (*k, *v)).collect();
        prop_assert_eq!(got, want);
        prop_assert_eq!(profile.max_value(), *full.iter().max().unwrap());
    }

    #[test]
    fn pair_count_grows_with_period_depth(base in depth_list(), k in 1u32..6, x in 1u32..50, gamma in 1u32..6) {
        let profile = ConcatenationProfile::new(&base, k).unwrap();
        prop_assert!(coefficient_c0(&profile, x + 1, gamma) > coefficient_c0(&profile, x, gamma));
    }

    #[test]
    fn threshold_rises_with_periods(k in 1u32..6, x in 1u32..20, r in 1.0f64..1e5, class_i in 0usize..5) {
        let class = GateClass::ALL[class_i];
        let p = |r: Option<f64>| evaluate_p_th(&ThresholdQuery { k, r, gate_class: class, x }, 1000.0).unwrap();
        let (lo, hi, inf) = (p(Some(r)), p(Some(r * 2.0)), p(None));
        prop_assert!(lo <= hi * (1.0 + 1e-12));
        prop_assert!(hi <= inf * (1.0 + 1e-12));
    }

    #[test]
    fn optimum_is_never_below_any_sampled_point(base in prop::array::uniform7(1u32..20), k in 1u32..4, x in 1u32..30) {
        let block = BlockDepth { r: base, gamma: 4 };
        let best = optimize_x(k, None, GateClass::Transversal, &block, 30).unwrap();
        let profile = ConcatenationProfile::new(&base, k).unwrap();
        let c = coefficient_c0(&profile, x, 4) as f64 / 7f64.powi(k as i32 - 1);
        let p = evaluate_p_th(&ThresholdQuery { k, r: None, gate_class: GateClass::Transversal, x }, c).unwrap();
        prop_assert!(best.max_p_th >= p);
    }

    #[test]
    fn counts_scale_by_seven_per_level(k in 1u32..15, g in 0usize..3) {
        let gate = LogicalGate::ALL[g];
        prop_assert_eq!(cnot_count(gate, k + 1).unwrap(), 7 * cnot_count(gate, k).unwrap());
    }

    #[test]
    fn csv_compare_is_tolerant_only_within_bound(v in 1e-6f64..1e-3, rel in 1e-7f64..1e-2) {
        let a = format!("k,p\n1,{v:e}\n");
        prop_assert!(compare_csv(&a, &a, 1e-9).is_empty());
        let b = format!("k,p\n1,{:e}\n", v * (1.0 + rel));
        prop_assert_eq!(compare_csv(&a, &b, 1e-9).len(), 1);
    }
}

#[test]
fn table_ids_round_trip() {
    for id in TableId::ALL {
        assert_eq!(id.name().parse::<TableId>().unwrap(), id);
    }
}
