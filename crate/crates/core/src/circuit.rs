//! Clifford circuits for encoding and decoding CPC codes, and Pauli
//! propagation through them.

use std::fmt;

use crate::code::{AnyCode, CpcCode, GeneralCpcCode};
use crate::error::{CpcError, Result};
use crate::pauli::{Pauli, PauliString, MAX_QUBITS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    Cnot {
        control: usize,
        target: usize,
    },
    Cz(usize, usize),
    /// Controlled-Z in the conjugate basis; symmetric in its qubits.
    Cczx(usize, usize),
    H(usize),
    /// Single-qubit Pauli, used for frame updates and error injection.
    Pauli(usize, Pauli),
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Cz(a, b) | Gate::Cczx(a, b) => vec![a, b],
            Gate::H(q) | Gate::Pauli(q, _) => vec![q],
        }
    }

    fn conjugate(&self, p: &mut PauliString) {
        match *self {
            Gate::Cnot { control, target } => p.conj_cnot(control, target),
            Gate::Cz(a, b) => p.conj_cz(a, b),
            Gate::Cczx(a, b) => p.conj_cczx(a, b),
            Gate::H(q) => p.conj_h(q),
            Gate::Pauli(q, s) => p.conj_pauli(q, s),
        }
    }

    pub fn is_self_inverse(&self) -> bool {
        true
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            Gate::Cz(a, b) => write!(f, "CZ {a} {b}"),
            Gate::Cczx(a, b) => write!(f, "CCZX {a} {b}"),
            Gate::H(q) => write!(f, "H {q}"),
            Gate::Pauli(q, p) => write!(f, "{} {q}", p.symbol()),
        }
    }
}

/// Ordered gate list; the first gate acts first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(qubits: usize) -> Self {
        Self {
            qubits,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Self::new(qubits);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let qs = gate.qubits();
        if let Some(&q) = qs.iter().find(|&&q| q >= self.qubits) {
            return Err(CpcError::OutOfRange(format!(
                "gate {gate} touches qubit {q} of {}",
                self.qubits
            )));
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(CpcError::InvalidArgument(format!(
                "gate {gate} repeats a qubit"
            )));
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Inverse circuit. All supported gates are self-inverse.
    pub fn inverse(&self) -> Circuit {
        let mut gates = self.gates.clone();
        gates.reverse();
        Circuit {
            qubits: self.qubits,
            gates,
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Circuit) -> Result<Circuit> {
        if self.qubits != other.qubits {
            return Err(CpcError::Dimension(format!(
                "circuits on {} and {} qubits",
                self.qubits, other.qubits
            )));
        }
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Ok(Circuit {
            qubits: self.qubits,
            gates,
        })
    }

    pub fn count_cnots(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::Cnot { .. }))
            .count()
    }

    pub fn count_cczx(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::Cczx(..)))
            .count()
    }

    /// One gate per line, e.g. `CNOT 0 4`.
    pub fn to_text(&self) -> String {
        self.gates.iter().map(|g| format!("{g}\n")).collect()
    }

    pub fn parse_text(qubits: usize, text: &str) -> Result<Circuit> {
        let mut c = Circuit::new(qubits);
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| CpcError::Parse {
                line: i + 1,
                column: 1,
                message: msg.to_string(),
            };
            let parts: Vec<&str> = line.split_whitespace().collect();
            let idx = |k: usize| -> Result<usize> {
                parts
                    .get(k)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err("bad qubit index"))
            };
            let gate = match parts[0] {
                "CNOT" => Gate::cnot(idx(1)?, idx(2)?),
                "CZ" => Gate::Cz(idx(1)?, idx(2)?),
                "CCZX" => Gate::Cczx(idx(1)?, idx(2)?),
                "H" => Gate::H(idx(1)?),
                "X" => Gate::Pauli(idx(1)?, Pauli::X),
                "Y" => Gate::Pauli(idx(1)?, Pauli::Y),
                "Z" => Gate::Pauli(idx(1)?, Pauli::Z),
                _ => return Err(err("unknown gate")),
            };
            c.push(gate)?;
        }
        Ok(c)
    }
}

fn ensure_small(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        return Err(CpcError::TooLarge(format!(
            "{n} qubits exceeds the {MAX_QUBITS}-qubit limit"
        )));
    }
    Ok(())
}

/// Encoder of a split code: B block, then P block, then C block. Within a
/// block, gates are ordered by check index and then by the other qubit.
pub fn encode_split(code: &CpcCode) -> Result<Circuit> {
    code.ensure_valid()?;
    ensure_small(code.num_qubits())?;
    let mut c = Circuit::new(code.num_qubits());
    for i in 0..code.n_b {
        for j in code.mb.ones_in_col(i) {
            c.push(Gate::cnot(code.data(j), code.bit(i)))?;
        }
    }
    for i in 0..code.n_p {
        for j in code.mp.ones_in_col(i) {
            c.push(Gate::cnot(code.phase(i), code.data(j)))?;
        }
    }
    for b in 0..code.n_b {
        for p in code.mc.ones_in_row(b) {
            c.push(Gate::cnot(code.phase(p), code.bit(b)))?;
        }
    }
    Ok(c)
}

/// Encoder of a generalized code: CNOTs for B*, conjugate CZs for P* and C*.
pub fn encode_general(code: &GeneralCpcCode) -> Result<Circuit> {
    code.ensure_valid()?;
    ensure_small(code.num_qubits())?;
    let mut c = Circuit::new(code.num_qubits());
    for i in 0..code.n_c {
        for j in code.mbs.ones_in_col(i) {
            c.push(Gate::cnot(j, code.check(i)))?;
        }
    }
    for i in 0..code.n_c {
        for j in code.mps.ones_in_col(i) {
            c.push(Gate::Cczx(j, code.check(i)))?;
        }
    }
    for a in 0..code.n_c {
        for b in code.mcs.ones_in_row(a) {
            c.push(Gate::Cczx(code.check(a), code.check(b)))?;
        }
    }
    Ok(c)
}

pub fn encode_circuit(code: &AnyCode) -> Result<Circuit> {
    match code {
        AnyCode::Split(c) => encode_split(c),
        AnyCode::General(g) => encode_general(g),
    }
}

/// The decoder is the encoder run backwards.
pub fn decode_circuit(code: &AnyCode) -> Result<Circuit> {
    Ok(encode_circuit(code)?.inverse())
}

/// Conjugates `p` through the circuit: returns `U p U†` where `U` is the
/// circuit unitary.
pub fn conjugate_pauli(circuit: &Circuit, p: &PauliString) -> Result<PauliString> {
    if p.num_qubits() != circuit.qubits {
        return Err(CpcError::Dimension(format!(
            "Pauli on {} qubits, circuit on {}",
            p.num_qubits(),
            circuit.qubits
        )));
    }
    let mut out = *p;
    for g in &circuit.gates {
        g.conjugate(&mut out);
    }
    Ok(out)
}

/// Images of every single-qubit generator, `[X_0, Z_0, X_1, Z_1, ...]`.
pub fn generator_images(circuit: &Circuit) -> Vec<PauliString> {
    let n = circuit.qubits;
    let mut out = Vec::with_capacity(2 * n);
    for q in 0..n {
        for p in [Pauli::X, Pauli::Z] {
            out.push(conjugate_pauli(circuit, &PauliString::single(n, q, p)).expect("sizes match"));
        }
    }
    out
}

/// Physical equivalence of two circuits: every generator maps to the same
/// Pauli string up to one global phase shared by all generators.
pub fn circuits_equal(a: &Circuit, b: &Circuit) -> Result<bool> {
    if a.qubits != b.qubits {
        return Err(CpcError::Dimension(format!(
            "circuits on {} and {} qubits",
            a.qubits, b.qubits
        )));
    }
    Ok(generator_images(a) == generator_images(b))
}

/// Operational commutator of two CNOTs, `[g1, g2] = g1 g2 g1† g2†`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Commutator {
    /// The gates commute.
    Trivial,
    /// The commutator is this single CNOT.
    Cnot(Gate),
    /// Both qubits shared with opposite roles; not a single CNOT.
    Opaque,
}

pub fn cnot_commutator(g1: &Gate, g2: &Gate) -> Result<Commutator> {
    let (
        &Gate::Cnot {
            control: i,
            target: j,
        },
        &Gate::Cnot {
            control: k,
            target: l,
        },
    ) = (g1, g2)
    else {
        return Err(CpcError::InvalidArgument(
            "commutator is only defined for CNOT pairs".into(),
        ));
    };
    Ok(match (j == k, i == l) {
        (true, true) => Commutator::Opaque,
        (true, false) => Commutator::Cnot(Gate::cnot(i, l)),
        (false, true) => Commutator::Cnot(Gate::cnot(k, j)),
        (false, false) => Commutator::Trivial,
    })
}

/// Rewrites `[gate] ++ circuit` as `circuit' ++ [gate]`, i.e. moves a gate
/// applied before the circuit to after it by conjugating every gate.
///
/// Hadamards can be moved through any circuit; a CNOT only through CNOT
/// circuits whose commutators with it are single CNOTs.
pub fn commute_through(circuit: &Circuit, gate: Gate) -> Result<Circuit> {
    let mut out = Circuit::new(circuit.qubits);
    for g in &circuit.gates {
        match gate {
            Gate::H(d) => out.push(conjugate_by_h(*g, d))?,
            Gate::Cnot { .. } => {
                // G g G = g · [g, G] for self-inverse gates.
                if !matches!(g, Gate::Cnot { .. }) {
                    return Err(CpcError::Unsupported(format!(
                        "cannot move a CNOT through {g}"
                    )));
                }
                out.push(*g)?;
                match cnot_commutator(g, &gate)? {
                    Commutator::Trivial => {}
                    Commutator::Cnot(c) => out.push(c)?,
                    Commutator::Opaque => {
                        return Err(CpcError::Unsupported(format!(
                            "{g} and {gate} share both qubits with opposite roles"
                        )))
                    }
                }
            }
            _ => {
                return Err(CpcError::Unsupported(format!(
                    "moving {gate} through a circuit"
                )))
            }
        }
    }
    out.push(gate)?;
    Ok(out)
}

/// `H_d · g · H_d` expressed as a single gate.
fn conjugate_by_h(g: Gate, d: usize) -> Gate {
    match g {
        Gate::Cnot { control, target } if target == d => Gate::Cz(control, target),
        Gate::Cnot { control, target } if control == d => Gate::Cczx(control, target),
        Gate::Cz(a, b) if a == d => Gate::cnot(b, a),
        Gate::Cz(a, b) if b == d => Gate::cnot(a, b),
        Gate::Cczx(a, b) if a == d => Gate::cnot(a, b),
        Gate::Cczx(a, b) if b == d => Gate::cnot(b, a),
        Gate::Pauli(q, Pauli::X) if q == d => Gate::Pauli(q, Pauli::Z),
        Gate::Pauli(q, Pauli::Z) if q == d => Gate::Pauli(q, Pauli::X),
        other => other,
    }
}
