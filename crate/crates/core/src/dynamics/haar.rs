//! Haar-random pure states.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::statevector::State;
use crate::error::Result;

/// Normalized vector of independent complex Gaussian amplitudes.
pub fn haar_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<State> {
    let amps = (0..1usize << n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let mut s = State::from_amplitudes(amps)?;
    s.normalize();
    Ok(s)
}

/// Purity of the reduced state of qubit `q`.
pub fn single_qubit_purity(s: &State, q: usize) -> f64 {
    // ρ = [[a, c], [c*, b]]; Tr ρ² = a² + b² + 2|c|²
    let (mut a, mut b, mut c) = (0.0, 0.0, Complex64::new(0.0, 0.0));
    let amps = s.amplitudes();
    for (i, amp) in amps.iter().enumerate() {
        if i >> q & 1 == 0 {
            let other = amps[i | 1 << q];
            a += amp.norm_sqr();
            b += other.norm_sqr();
            c += amp * other.conj();
        }
    }
    a * a + b * b + 2.0 * c.norm_sqr()
}

/// Mean purity of a `d_a`-dimensional subsystem of a Haar state on `d_a·d_b`.
pub fn expected_purity(d_a: f64, d_b: f64) -> f64 {
    (d_a + d_b) / (d_a * d_b + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unit_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..6 {
            assert_abs_diff_eq!(
                haar_state(n, &mut rng).unwrap().norm_sqr(),
                1.0,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn purity_matches_haar_average() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let samples: Vec<f64> = (0..2000)
            .map(|_| single_qubit_purity(&haar_state(3, &mut rng).unwrap(), 0))
            .collect();
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        let expected = expected_purity(2.0, 4.0);
        assert!(
            (mean - expected).abs() <= 3.0 * (var / n).sqrt(),
            "{mean} vs {expected}"
        );
    }

    #[test]
    fn product_state_is_pure() {
        let s = State::zero(3).unwrap();
        assert_abs_diff_eq!(single_qubit_purity(&s, 1), 1.0, epsilon = 1e-12);
    }
}
