//! Seeded random search over split codes of fixed dimensions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::code::{AnyCode, CpcCode};
use crate::decoding::{cnot_compatible, is_single_error_correcting};
use crate::error::{CpcError, Result};
use crate::gf2::Gf2Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dims {
    pub k: usize,
    pub n_b: usize,
    pub n_p: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    SingleErrorCorrecting,
    CnotCompatible { control: usize, target: usize },
}

impl Predicate {
    pub fn holds(&self, code: &CpcCode) -> Result<bool> {
        Ok(match *self {
            Predicate::SingleErrorCorrecting => {
                is_single_error_correcting(&AnyCode::Split(code.clone()))?.ok()
            }
            Predicate::CnotCompatible { control, target } => {
                cnot_compatible(code, control, target)?.ok()
            }
        })
    }
}

/// Parses `sec` or `cnot:c,t` with 0-based indices.
impl std::str::FromStr for Predicate {
    type Err = CpcError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "sec" || s == "single-error-correcting" {
            return Ok(Predicate::SingleErrorCorrecting);
        }
        let bad =
            || CpcError::InvalidArgument(format!("unknown predicate {s}; use sec or cnot:c,t"));
        let rest = s.strip_prefix("cnot:").ok_or_else(bad)?;
        let (c, t) = rest.split_once(',').ok_or_else(bad)?;
        Ok(Predicate::CnotCompatible {
            control: c.trim().parse().map_err(|_| bad())?,
            target: t.trim().parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub dims: Dims,
    pub predicate: Predicate,
    pub budget: u64,
    pub seed: u64,
    /// Draw `mb` and reuse it as `mp`.
    pub mirror_bp: bool,
    /// Largest number of codes kept.
    pub cap: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    /// Successful codes with their trial index, in trial order.
    pub found: Vec<(u64, CpcCode)>,
    pub trials: u64,
    pub successes: u64,
}

impl SearchResult {
    pub fn success_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }
}

fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Gf2Matrix {
    let mut m = Gf2Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rng.gen());
        }
    }
    m
}

/// Uniformly random matrices. With `mirror_bp` the phase matrix copies the
/// bit matrix, which requires `n_b == n_p`.
pub fn random_code<R: Rng + ?Sized>(dims: Dims, rng: &mut R, mirror_bp: bool) -> Result<CpcCode> {
    if mirror_bp && dims.n_b != dims.n_p {
        return Err(CpcError::InvalidArgument(
            "mirrored search needs as many bit checks as phase checks".into(),
        ));
    }
    let mb = random_matrix(dims.k, dims.n_b, rng);
    let mp = if mirror_bp {
        mb.clone()
    } else {
        random_matrix(dims.k, dims.n_p, rng)
    };
    let mc = random_matrix(dims.n_b, dims.n_p, rng);
    Ok(CpcCode {
        k: dims.k,
        n_b: dims.n_b,
        n_p: dims.n_p,
        mb,
        mp,
        mc,
    })
}

/// Generator for trial `trial`; the same pair always yields the same code.
pub fn trial_code(cfg: &SearchConfig, trial: u64) -> Result<CpcCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(trial);
    random_code(cfg.dims, &mut rng, cfg.mirror_bp)
}

pub fn search(cfg: &SearchConfig) -> Result<SearchResult> {
    if let Predicate::CnotCompatible { control, target } = cfg.predicate {
        if control >= cfg.dims.k || target >= cfg.dims.k || control == target {
            return Err(CpcError::InvalidArgument(format!(
                "CNOT {control}->{target} does not fit {} data qubits",
                cfg.dims.k
            )));
        }
    }
    if cfg.mirror_bp && cfg.dims.n_b != cfg.dims.n_p {
        return Err(CpcError::InvalidArgument(
            "mirrored search needs as many bit checks as phase checks".into(),
        ));
    }
    let hits: Vec<(u64, CpcCode)> = (0..cfg.budget)
        .into_par_iter()
        .map(|t| {
            let code = trial_code(cfg, t)?;
            Ok(cfg.predicate.holds(&code)?.then_some((t, code)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let successes = hits.len() as u64;
    Ok(SearchResult {
        found: hits.into_iter().take(cfg.cap).collect(),
        trials: cfg.budget,
        successes,
    })
}
