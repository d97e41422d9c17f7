//! Maximum-likelihood decoding of a classical effective code, either as the
//! ground state of an Ising Hamiltonian or by direct enumeration of error
//! sets.
//!
//! Spins take the value `+1` (no error) or `-1` (error). With error priors
//! `p < 1/2` the Hamiltonian
//!
//! ```text
//! H = Σ_i log(p_i / (1 - p_i)) σ_i + Σ_c (-1)^{m_c} log(q_c / (1 - q_c)) Π_{i∈c} σ_i
//! ```
//!
//! is minimized by the most likely joint assignment of bit errors, where a
//! check whose parity disagrees with its measurement `m_c` counts as a check
//! error of prior `q_c`.

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::code::ClassicalCode;
use crate::decoding::Syndrome;
use crate::error::{CpcError, Result};

pub const MAX_SPINS: usize = 24;
const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckTerm {
    pub spins: Vec<usize>,
    pub coefficient: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsingProblem {
    pub fields: Vec<f64>,
    pub checks: Vec<CheckTerm>,
}

/// Most likely explanation of a syndrome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Explanation {
    /// Bits in error, ascending.
    pub errors: Vec<usize>,
    /// Checks whose outcome disagrees with `errors`, i.e. faulty checks.
    pub faulty_checks: Vec<usize>,
}

fn log_odds(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 0.5) {
        return Err(CpcError::InvalidArgument(format!(
            "error probability {p} outside (0, 0.5)"
        )));
    }
    Ok((p / (1.0 - p)).ln())
}

fn check_lengths(cc: &ClassicalCode, bit_priors: &[f64], check_priors: &[f64]) -> Result<()> {
    cc.validate()?;
    if bit_priors.len() != cc.bit_count() || check_priors.len() != cc.check_count() {
        return Err(CpcError::Dimension(format!(
            "{} bit and {} check priors for a code with {} bits and {} checks",
            bit_priors.len(),
            check_priors.len(),
            cc.bit_count(),
            cc.check_count()
        )));
    }
    Ok(())
}

pub fn ising_problem(
    cc: &ClassicalCode,
    bit_priors: &[f64],
    check_priors: &[f64],
    measured: Syndrome,
) -> Result<IsingProblem> {
    check_lengths(cc, bit_priors, check_priors)?;
    let fields = bit_priors
        .iter()
        .map(|&p| log_odds(p))
        .collect::<Result<_>>()?;
    let checks = cc
        .checks
        .iter()
        .zip(check_priors)
        .enumerate()
        .map(|(i, (c, &q))| {
            let sign = if measured.0 >> i & 1 == 1 { -1.0 } else { 1.0 };
            Ok(CheckTerm {
                spins: c.bits.iter().copied().collect(),
                coefficient: sign * log_odds(q)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(IsingProblem { fields, checks })
}

fn mask_to_list(m: u64) -> Vec<usize> {
    (0..64).filter(|i| m >> i & 1 == 1).collect()
}

/// Keeps the best candidate: lowest score, ties within tolerance broken by the
/// lexicographically smallest error list.
fn better(score: f64, mask: u64, best: Option<(f64, u64)>) -> bool {
    match best {
        None => true,
        Some((s, m)) => {
            if score < s - TIE_TOLERANCE {
                true
            } else if score > s + TIE_TOLERANCE {
                false
            } else {
                mask_to_list(mask).cmp(&mask_to_list(m)) == Ordering::Less
            }
        }
    }
}

fn faulty_checks(cc: &ClassicalCode, errors: u64, measured: Syndrome) -> Vec<usize> {
    mask_to_list(cc.syndrome_of(errors) ^ measured.0)
        .into_iter()
        .filter(|&c| c < cc.check_count())
        .collect()
}

impl IsingProblem {
    pub fn spin_count(&self) -> usize {
        self.fields.len()
    }

    /// Energy of a configuration given as a mask of `-1` spins.
    pub fn energy(&self, flipped: u64) -> f64 {
        let spin = |i: usize| if flipped >> i & 1 == 1 { -1.0 } else { 1.0 };
        let field: f64 = self
            .fields
            .iter()
            .enumerate()
            .map(|(i, h)| h * spin(i))
            .sum();
        let coupling: f64 = self
            .checks
            .iter()
            .map(|c| c.coefficient * c.spins.iter().map(|&i| spin(i)).product::<f64>())
            .sum();
        field + coupling
    }

    /// Exhaustive ground state over all spin configurations, walked in Gray
    /// code order so each step flips one spin. Returns the mask of `-1` spins.
    pub fn ground_state(&self) -> Result<u64> {
        let n = self.spin_count();
        if n > MAX_SPINS {
            return Err(CpcError::TooLarge(format!(
                "{n} spins exceeds the exhaustive limit of {MAX_SPINS}"
            )));
        }
        let mut member: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (c, term) in self.checks.iter().enumerate() {
            for &s in &term.spins {
                member[s].push(c);
            }
        }
        let mut products = vec![1.0f64; self.checks.len()];
        let mut state = 0u64;
        let mut energy = self.energy(0);
        let mut best = Some((energy, 0u64));
        for step in 1u64..(1u64 << n) {
            let i = step.trailing_zeros() as usize;
            let old = if state >> i & 1 == 1 { -1.0 } else { 1.0 };
            energy -= 2.0 * self.fields[i] * old;
            for &c in &member[i] {
                energy -= 2.0 * self.checks[c].coefficient * products[c];
                products[c] = -products[c];
            }
            state ^= 1 << i;
            if better(energy, state, best) {
                best = Some((energy, state));
            }
        }
        Ok(best.map(|(_, m)| m).unwrap_or(0))
    }

    /// Term list, one per line: `field <spin> <coeff>` and
    /// `check <spins...> <coeff>`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, h) in self.fields.iter().enumerate() {
            let _ = writeln!(s, "field {i} {h:.6}");
        }
        for c in &self.checks {
            let spins: Vec<String> = c.spins.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "check {} {:.6}", spins.join(" "), c.coefficient);
        }
        s
    }
}

/// Ground-state decoding: builds the Hamiltonian and reads off the error set.
pub fn ising_decode(
    cc: &ClassicalCode,
    bit_priors: &[f64],
    check_priors: &[f64],
    measured: Syndrome,
) -> Result<Explanation> {
    let problem = ising_problem(cc, bit_priors, check_priors, measured)?;
    let state = problem.ground_state()?;
    Ok(Explanation {
        errors: mask_to_list(state),
        faulty_checks: faulty_checks(cc, state, measured),
    })
}

/// Maximum-likelihood decoding by enumerating every error set and scoring
/// its probability directly, independent of the Ising mapping.
pub fn ml_decode_exhaustive(
    cc: &ClassicalCode,
    bit_priors: &[f64],
    check_priors: &[f64],
    measured: Syndrome,
) -> Result<Explanation> {
    check_lengths(cc, bit_priors, check_priors)?;
    for &p in bit_priors.iter().chain(check_priors) {
        log_odds(p)?;
    }
    let n = cc.bit_count();
    if n > MAX_SPINS {
        return Err(CpcError::TooLarge(format!(
            "{n} bits exceeds the exhaustive limit of {MAX_SPINS}"
        )));
    }
    let mut best: Option<(f64, u64)> = None;
    for errors in 0u64..(1u64 << n) {
        let mismatched = cc.syndrome_of(errors) ^ measured.0;
        let mut log_p = 0.0;
        for (i, &p) in bit_priors.iter().enumerate() {
            log_p += if errors >> i & 1 == 1 {
                p.ln()
            } else {
                (1.0 - p).ln()
            };
        }
        for (c, &q) in check_priors.iter().enumerate() {
            log_p += if mismatched >> c & 1 == 1 {
                q.ln()
            } else {
                (1.0 - q).ln()
            };
        }
        if better(-log_p, errors, best) {
            best = Some((-log_p, errors));
        }
    }
    let errors = best.map(|(_, m)| m).unwrap_or(0);
    Ok(Explanation {
        errors: mask_to_list(errors),
        faulty_checks: faulty_checks(cc, errors, measured),
    })
}
