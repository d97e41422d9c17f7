//! Independent routes to the same quantity, checked on fixtures and on
//! seeded random codes.

mod common;

use common::{all_fixtures, random_codes, random_general, random_split};
use cpc::circuit::{circuits_equal, decode_circuit, encode_circuit, Circuit, Gate};
use cpc::code::AnyCode;
use cpc::decoding::{error_table, is_single_error_correcting, DecodeTable, Propagator};
use cpc::ising::{ising_decode, ml_decode_exhaustive};
use cpc::logical::{gate_then_encode, logical_cnot_circuit, logical_hadamard_circuit};
use cpc::propagation::{effective_codes, general_to_classical};
use cpc::stabilizers::{
    cpc_to_css, css_to_cpc, encoded_initial_stabilizers, stabilizers, symplectic_matrix,
};
use cpc::{Pauli, PauliString};

fn population() -> Vec<(String, AnyCode)> {
    let mut v = all_fixtures();
    v.extend(random_codes(100));
    v
}

#[test]
fn decoder_inverts_encoder() {
    for (name, code) in population() {
        let round = encode_circuit(&code)
            .unwrap()
            .then(&decode_circuit(&code).unwrap())
            .unwrap();
        assert!(
            circuits_equal(&round, &Circuit::new(code.num_qubits())).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn formula_stabilizers_match_circuit() {
    for (name, code) in population() {
        let circ = encoded_initial_stabilizers(&code).unwrap();
        let formula = stabilizers(&code).unwrap();
        assert_eq!(circ.len(), formula.len(), "{name}");
        for (a, b) in circ.iter().zip(&formula) {
            assert!(a.eq_up_to_phase(b), "{name}: {a} vs {b}");
        }
    }
}

#[test]
fn stabilizers_commute_symplectically() {
    for (name, code) in population() {
        if let AnyCode::Split(c) = &code {
            assert!(
                symplectic_matrix(c).unwrap().commutation().is_zero(),
                "{name}"
            );
        }
        let s = stabilizers(&code).unwrap();
        for a in &s {
            for b in &s {
                assert!(a.commutes_with(b), "{name}");
            }
        }
    }
}

// The effective classical codes predict the syndrome of every X and Z error
// they list; the circuit propagator computes it by conjugation.
#[test]
fn effective_codes_predict_propagated_syndromes() {
    for i in 0..100 {
        let c = random_split(i);
        let any = AnyCode::Split(c.clone());
        let prop = Propagator::new(&any).unwrap();
        let n = c.num_qubits();
        let (bit, phase) = effective_codes(&c);
        let low = (1u64 << c.n_b) - 1;
        let bit_qubits: Vec<usize> = (0..c.k).chain((0..c.n_p).map(|p| c.phase(p))).collect();
        for (idx, &q) in bit_qubits.iter().enumerate() {
            let s = prop
                .propagate(&PauliString::single(n, q, Pauli::X))
                .unwrap()
                .syndrome;
            assert_eq!(s.0 & low, bit.syndrome_of(1 << idx), "code {i} X on {q}");
        }
        let phase_qubits: Vec<usize> = (0..c.k).chain((0..c.n_b).map(|b| c.bit(b))).collect();
        for (idx, &q) in phase_qubits.iter().enumerate() {
            let s = prop
                .propagate(&PauliString::single(n, q, Pauli::Z))
                .unwrap()
                .syndrome;
            assert_eq!(
                s.0 >> c.n_b,
                phase.syndrome_of(1 << idx),
                "code {i} Z on {q}"
            );
        }
    }
}

#[test]
fn general_classical_code_predicts_propagated_syndromes() {
    for i in 0..100 {
        let g = random_general(i);
        let any = AnyCode::General(g.clone());
        let prop = Propagator::new(&any).unwrap();
        let n = g.num_qubits();
        let cc = general_to_classical(&g);
        let mut cases = Vec::new();
        for j in 0..g.k {
            cases.push((2 * j, PauliString::single(n, j, Pauli::X)));
            cases.push((2 * j + 1, PauliString::single(n, j, Pauli::Z)));
        }
        for c in 0..g.n_c {
            cases.push((2 * g.k + c, PauliString::single(n, g.check(c), Pauli::Z)));
        }
        for (bit, err) in cases {
            let s = prop.propagate(&err).unwrap().syndrome;
            assert_eq!(
                s.0,
                cc.syndrome_of(1 << bit),
                "code {i} {}",
                cc.bit_labels[bit]
            );
        }
    }
}

#[test]
fn decode_table_undoes_every_single_error() {
    let mut correcting = 0;
    for (name, code) in population() {
        if !is_single_error_correcting(&code).unwrap().ok() {
            continue;
        }
        correcting += 1;
        let table = DecodeTable::build(&code).unwrap();
        for e in error_table(&code).unwrap() {
            let fix = table.decode(e.syndrome).correction;
            assert!(
                (e.residual * fix).is_identity(),
                "{name}: {}",
                e.label(&code)
            );
        }
    }
    assert!(correcting >= 5);
}

#[test]
fn css_conversion_round_trips() {
    for i in 0..100 {
        let c = random_split(i);
        let (gz, gx) = cpc_to_css(&c).unwrap();
        let conv = css_to_cpc(&gz, &gx).unwrap();
        assert_eq!(conv.code.num_qubits(), c.num_qubits());
        let (gz2, gx2) = cpc_to_css(&conv.code).unwrap();
        assert!(
            conv.unpermute(&gz2).row_space_equal(&gz).unwrap(),
            "code {i}"
        );
        assert!(
            conv.unpermute(&gx2).row_space_equal(&gx).unwrap(),
            "code {i}"
        );
    }
}

#[test]
fn logical_gate_rewrites() {
    let mut codes = all_fixtures();
    codes.extend(random_codes(50));
    for (name, code) in codes {
        for d in 0..code.data_qubits() {
            let h = logical_hadamard_circuit(&code, d).unwrap();
            assert!(
                circuits_equal(&h, &gate_then_encode(&code, Gate::H(d)).unwrap()).unwrap(),
                "{name} H{d}"
            );
        }
        if matches!(code, AnyCode::Split(_)) && code.data_qubits() >= 2 {
            let (c, t) = (code.data_qubits() - 1, 0);
            let r = logical_cnot_circuit(&code, c, t).unwrap();
            assert!(
                circuits_equal(&r, &gate_then_encode(&code, Gate::cnot(c, t)).unwrap()).unwrap(),
                "{name} CNOT"
            );
        }
    }
}

#[test]
fn ising_matches_exhaustive_likelihood_on_random_effective_codes() {
    for i in 0..30 {
        let c = random_split(i);
        for cc in [effective_codes(&c).0, effective_codes(&c).1] {
            if cc.bit_count() > 10 || cc.check_count() == 0 {
                continue;
            }
            let bits = vec![0.07; cc.bit_count()];
            let checks = vec![0.03; cc.check_count()];
            for s in 0..1u64 << cc.check_count() {
                let s = cpc::decoding::Syndrome(s);
                assert_eq!(
                    ising_decode(&cc, &bits, &checks, s).unwrap(),
                    ml_decode_exhaustive(&cc, &bits, &checks, s).unwrap(),
                    "code {i} syndrome {s:?}"
                );
            }
        }
    }
}
