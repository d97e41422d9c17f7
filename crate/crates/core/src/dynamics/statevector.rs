//! Dense statevector over at most [`MAX_QUBITS`] qubits. Qubit `q` is bit `q`
//! of the basis index.

use num_complex::Complex64;
use rand::Rng;

use crate::circuit::{Circuit, Gate};
use crate::error::{CpcError, Result};
use crate::pauli::{Pauli, PauliString};

pub const MAX_QUBITS: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct State {
    n: usize,
    amps: Vec<Complex64>,
}

fn bit(i: usize, q: usize) -> bool {
    i >> q & 1 == 1
}

impl State {
    /// |0…0⟩ on `n` qubits.
    pub fn zero(n: usize) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(CpcError::TooLarge(format!(
                "{n} qubits exceeds the statevector limit of {MAX_QUBITS}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let n = amps.len().trailing_zeros() as usize;
        if amps.len() != 1 << n || n > MAX_QUBITS {
            return Err(CpcError::Dimension(format!(
                "{} amplitudes is not a power of two within the limit",
                amps.len()
            )));
        }
        Ok(Self { n, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) {
        let n = self.norm_sqr().sqrt();
        if n > 0.0 {
            for a in &mut self.amps {
                *a /= n;
            }
        }
    }

    pub fn inner(&self, other: &State) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `self ⊗ other`, with `self` on the low qubits.
    pub fn tensor(&self, other: &State) -> Result<State> {
        let n = self.n + other.n;
        if n > MAX_QUBITS {
            return Err(CpcError::TooLarge(format!("{n} qubits")));
        }
        let mut amps = Vec::with_capacity(1 << n);
        for b in &other.amps {
            for a in &self.amps {
                amps.push(a * b);
            }
        }
        Ok(State { n, amps })
    }

    pub fn apply_h(&mut self, q: usize) {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..self.amps.len() {
            if !bit(i, q) {
                let j = i | 1 << q;
                let (a, b) = (self.amps[i], self.amps[j]);
                self.amps[i] = (a + b) * s;
                self.amps[j] = (a - b) * s;
            }
        }
    }

    pub fn apply_x(&mut self, q: usize) {
        for i in 0..self.amps.len() {
            if !bit(i, q) {
                self.amps.swap(i, i | 1 << q);
            }
        }
    }

    pub fn apply_z(&mut self, q: usize) {
        for (i, a) in self.amps.iter_mut().enumerate() {
            if bit(i, q) {
                *a = -*a;
            }
        }
    }

    pub fn apply_cnot(&mut self, c: usize, t: usize) {
        for i in 0..self.amps.len() {
            if bit(i, c) && !bit(i, t) {
                self.amps.swap(i, i | 1 << t);
            }
        }
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) {
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if bit(i, a) && bit(i, b) {
                *amp = -*amp;
            }
        }
    }

    pub fn apply_cczx(&mut self, a: usize, b: usize) {
        self.apply_h(a);
        self.apply_h(b);
        self.apply_cz(a, b);
        self.apply_h(a);
        self.apply_h(b);
    }

    /// `cos θ · I + i sin θ · X` on qubit `q`.
    pub fn apply_x_rotation(&mut self, q: usize, theta: f64) {
        let c = Complex64::new(theta.cos(), 0.0);
        let s = Complex64::new(0.0, theta.sin());
        for i in 0..self.amps.len() {
            if !bit(i, q) {
                let j = i | 1 << q;
                let (a, b) = (self.amps[i], self.amps[j]);
                self.amps[i] = c * a + s * b;
                self.amps[j] = s * a + c * b;
            }
        }
    }

    pub fn apply_gate(&mut self, g: &Gate) {
        match *g {
            Gate::Cnot { control, target } => self.apply_cnot(control, target),
            Gate::Cz(a, b) => self.apply_cz(a, b),
            Gate::Cczx(a, b) => self.apply_cczx(a, b),
            Gate::H(q) => self.apply_h(q),
            Gate::Pauli(q, p) => self.apply_pauli_factor(q, p),
        }
    }

    fn apply_pauli_factor(&mut self, q: usize, p: Pauli) {
        match p {
            Pauli::I => {}
            Pauli::X => self.apply_x(q),
            Pauli::Z => self.apply_z(q),
            Pauli::Y => {
                // Y = i X Z
                self.apply_z(q);
                self.apply_x(q);
                for a in &mut self.amps {
                    *a *= Complex64::new(0.0, 1.0);
                }
            }
        }
    }

    pub fn apply_circuit(&mut self, c: &Circuit) -> Result<()> {
        if c.qubit_count() != self.n {
            return Err(CpcError::Dimension(format!(
                "circuit on {} qubits, state on {}",
                c.qubit_count(),
                self.n
            )));
        }
        for g in c.gates() {
            self.apply_gate(g);
        }
        Ok(())
    }

    /// Applies the Pauli string, including its phase.
    pub fn apply_pauli(&mut self, p: &PauliString) -> Result<()> {
        if p.num_qubits() != self.n {
            return Err(CpcError::Dimension(format!(
                "Pauli on {} qubits, state on {}",
                p.num_qubits(),
                self.n
            )));
        }
        for q in 0..self.n {
            self.apply_pauli_factor(q, p.get(q));
        }
        let phase = Complex64::new(0.0, 1.0).powu(u32::from(p.phase().exponent()));
        for a in &mut self.amps {
            *a *= phase;
        }
        Ok(())
    }

    /// Probability that qubit `q` reads 0 in the computational basis.
    pub fn prob_zero(&self, q: usize) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| !bit(*i, q))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Projective Z measurement with Born-rule sampling; collapses the state.
    pub fn measure<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) -> bool {
        let p0 = self.prob_zero(q);
        let outcome = rng.gen::<f64>() >= p0;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if bit(i, q) != outcome {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        self.normalize();
        outcome
    }

    /// Probability of each value of the qubits `qs` (index bit `i` is `qs[i]`).
    pub fn marginal(&self, qs: &[usize]) -> Vec<f64> {
        let mut out = vec![0.0; 1 << qs.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let key = qs
                .iter()
                .enumerate()
                .fold(0, |acc, (k, &q)| acc | (usize::from(bit(i, q)) << k));
            out[key] += a.norm_sqr();
        }
        out
    }

    /// Unnormalized state of the low `k` qubits given that the remaining
    /// qubits are in the basis state `rest`.
    pub fn project_high(&self, k: usize, rest: usize) -> State {
        let base = rest << k;
        State {
            n: k,
            amps: self.amps[base..base + (1 << k)].to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{conjugate_pauli, Circuit};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_state(n: usize, seed: u64) -> State {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let amps = (0..1 << n)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let mut s = State::from_amplitudes(amps).unwrap();
        s.normalize();
        s
    }

    #[test]
    fn bell_state() {
        let mut s = State::zero(2).unwrap();
        s.apply_h(0);
        s.apply_cnot(0, 1);
        assert_abs_diff_eq!(
            s.amps[0].re,
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            s.amps[3].re,
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(s.prob_zero(1), 0.5, epsilon = 1e-12);
    }

    // U P |ψ⟩ == P' U |ψ⟩ with P' = U P U† from the tableau.
    #[test]
    fn conjugation_agrees_with_statevector() {
        let gates = vec![
            Gate::cnot(0, 1),
            Gate::Cczx(1, 2),
            Gate::H(0),
            Gate::Cz(0, 2),
            Gate::cnot(2, 0),
        ];
        let c = Circuit::from_gates(3, gates).unwrap();
        for p in ["XII", "IZI", "IIY", "YXZ", "ZZX"] {
            let p: PauliString = p.parse().unwrap();
            let psi = random_state(3, 7);
            let mut lhs = psi.clone();
            lhs.apply_pauli(&p).unwrap();
            lhs.apply_circuit(&c).unwrap();
            let mut rhs = psi.clone();
            rhs.apply_circuit(&c).unwrap();
            rhs.apply_pauli(&conjugate_pauli(&c, &p).unwrap()).unwrap();
            for (a, b) in lhs.amps.iter().zip(&rhs.amps) {
                assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn rotations_preserve_norm() {
        let mut s = random_state(4, 3);
        for q in 0..4 {
            s.apply_x_rotation(q, 0.3 * q as f64 + 0.1);
            s.apply_cczx(q, (q + 1) % 4);
        }
        assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn measurement_collapses() {
        let mut s = State::zero(2).unwrap();
        s.apply_h(0);
        s.apply_cnot(0, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = s.measure(0, &mut rng);
        assert_abs_diff_eq!(s.prob_zero(1), if a { 0.0 } else { 1.0 }, epsilon = 1e-12);
        assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn size_limit() {
        assert!(State::zero(MAX_QUBITS + 1).is_err());
    }
}
