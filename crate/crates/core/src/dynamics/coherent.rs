//! Exact response of the [[6,3,1]] code to a coherent X rotation on every
//! qubit.

use crate::circuit::{decode_circuit, encode_circuit};
use crate::code::AnyCode;
use crate::error::{CpcError, Result};
use crate::fixtures;

use super::statevector::State;

#[derive(Clone, Debug, PartialEq)]
pub struct CoherentResult {
    pub fidelity: f64,
    /// Indexed by syndrome; bit `i` is check `i`.
    pub syndrome_probs: [f64; 8],
}

impl CoherentResult {
    /// Syndrome label in check order, e.g. `011` for checks 2 and 3 fired.
    pub fn label(s: usize) -> String {
        (0..3)
            .map(|i| if s >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

/// Runs one window with the data in `|000⟩`.
pub fn coherent_fidelity_631(epsilon: f64) -> Result<CoherentResult> {
    coherent_fidelity_631_state(epsilon, &State::zero(3)?)
}

pub fn coherent_fidelity_631_state(epsilon: f64, data: &State) -> Result<CoherentResult> {
    if !(0.0..std::f64::consts::FRAC_PI_4).contains(&epsilon) {
        return Err(CpcError::InvalidArgument(format!(
            "amplitude {epsilon} outside [0, π/4)"
        )));
    }
    if data.num_qubits() != 3 {
        return Err(CpcError::Dimension("data state must have 3 qubits".into()));
    }
    let split = fixtures::code_6_3_1();
    let code = AnyCode::from(split.clone());
    let mut s = data.tensor(&State::zero(3)?)?;
    s.apply_circuit(&encode_circuit(&code)?)?;
    for q in 0..6 {
        s.apply_x_rotation(q, epsilon);
    }
    s.apply_circuit(&decode_circuit(&code)?)?;

    let mut probs = [0.0; 8];
    let mut fidelity = 0.0;
    for (syn, p) in probs.iter_mut().enumerate() {
        let mut branch = s.project_high(3, syn);
        *p = branch.norm_sqr();
        if syn.count_ones() == 2 {
            let fired: Vec<usize> = (0..3).filter(|i| syn >> i & 1 == 1).collect();
            let shared = (0..3)
                .find(|&j| split.mb.get(j, fired[0]) && split.mb.get(j, fired[1]))
                .expect("every pair of checks shares a data qubit");
            branch.apply_x(shared);
        }
        fidelity += data.inner(&branch).norm_sqr();
    }
    Ok(CoherentResult {
        fidelity,
        syndrome_probs: probs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn fourth_order_leading_terms() {
        let eps = 0.01f64;
        let r = coherent_fidelity_631(eps).unwrap();
        assert_relative_eq!((1.0 - r.fidelity) / eps.powi(4), 15.0, max_relative = 0.02);
        assert_relative_eq!(
            r.syndrome_probs[0],
            1.0 - 6.0 * eps.powi(2) + 17.0 * eps.powi(4),
            max_relative = 1e-8
        );
        assert_relative_eq!(r.syndrome_probs[7], 3.0 * eps.powi(4), max_relative = 0.02);
        assert_relative_eq!(r.syndrome_probs.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn zero_amplitude() {
        let r = coherent_fidelity_631(0.0).unwrap();
        assert_eq!(r.fidelity, 1.0);
        assert_eq!(r.syndrome_probs[0], 1.0);
    }

    #[test]
    fn labels_and_domain() {
        assert_eq!(CoherentResult::label(0b110), "011");
        assert!(coherent_fidelity_631(1.0).is_err());
        assert!(coherent_fidelity_631(-0.1).is_err());
    }
}
