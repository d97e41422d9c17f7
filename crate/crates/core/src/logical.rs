//! Logical operations inside a code cycle: Pauli frames, and encoders
//! rewritten so that a Hadamard or CNOT on the data takes effect while the
//! data is encoded.

use crate::circuit::{commute_through, encode_circuit, Circuit, Gate};
use crate::code::AnyCode;
use crate::decoding::{Propagator, Syndrome};
use crate::error::{CpcError, Result};
use crate::pauli::{Pauli, PauliString};

/// Logical Pauli applied during the window, with the check outcomes that
/// must be read flipped afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliFrame {
    pub gates: Vec<Gate>,
    /// Checks whose outcomes are reinterpreted (0↔1 for bit checks, +↔− for
    /// phase checks).
    pub toggles: Syndrome,
}

impl PauliFrame {
    pub fn bit_toggles(&self, code: &AnyCode) -> Syndrome {
        match code {
            AnyCode::Split(c) => Syndrome(self.toggles.0 & ((1u64 << c.n_b) - 1)),
            AnyCode::General(_) => self.toggles,
        }
    }

    pub fn phase_toggles(&self, code: &AnyCode) -> Syndrome {
        match code {
            AnyCode::Split(c) => Syndrome(self.toggles.0 >> c.n_b << c.n_b),
            AnyCode::General(_) => Syndrome(0),
        }
    }
}

pub fn logical_pauli_frame(code: &AnyCode, paulis: &[Pauli]) -> Result<PauliFrame> {
    let k = code.data_qubits();
    if paulis.len() != k {
        return Err(CpcError::Dimension(format!(
            "{} Paulis for {k} data qubits",
            paulis.len()
        )));
    }
    let n = code.num_qubits();
    let mut p = PauliString::identity(n);
    let mut gates = Vec::new();
    for (q, &s) in paulis.iter().enumerate() {
        if s != Pauli::I {
            gates.push(Gate::Pauli(q, s));
            p = p * PauliString::single(n, q, s);
        }
    }
    let prop = Propagator::new(code)?;
    Ok(PauliFrame {
        gates,
        toggles: prop.propagate(&p)?.syndrome,
    })
}

fn data_index(code: &AnyCode, d: usize) -> Result<()> {
    if d >= code.data_qubits() {
        return Err(CpcError::OutOfRange(format!(
            "data qubit {d} of {}",
            code.data_qubits()
        )));
    }
    Ok(())
}

/// Encoder followed by a Hadamard on data `d`, equivalent to a Hadamard on
/// the unencoded qubit followed by the plain encoder. Gates touching `d` are
/// conjugated: CNOTs targeting `d` become CZ, CNOTs controlled by `d` become
/// conjugate CZs.
pub fn logical_hadamard_circuit(code: &AnyCode, d: usize) -> Result<Circuit> {
    data_index(code, d)?;
    commute_through(&encode_circuit(code)?, Gate::H(d))
}

/// Encoder followed by CNOT(c, t) on the data, equivalent to the CNOT on the
/// unencoded qubits followed by the plain encoder. Each encoder gate that
/// shares a qubit with the CNOT in the opposite role picks up its commutator.
pub fn logical_cnot_circuit(code: &AnyCode, c: usize, t: usize) -> Result<Circuit> {
    data_index(code, c)?;
    data_index(code, t)?;
    if c == t {
        return Err(CpcError::InvalidArgument(
            "control and target must differ".into(),
        ));
    }
    commute_through(&encode_circuit(code)?, Gate::cnot(c, t))
}

/// Target of the logical rewrites: `gate` on the raw data, then encoding.
pub fn gate_then_encode(code: &AnyCode, gate: Gate) -> Result<Circuit> {
    let mut c = Circuit::new(code.num_qubits());
    c.push(gate)?;
    c.then(&encode_circuit(code)?)
}
