//! Repeated code cycles under stochastic Pauli noise, fidelity metrics and
//! half-life fits.
//!
//! Each cycle encodes, suffers independent X and Z errors, decodes, reads the
//! checks and applies the decode-table correction. Every step is Clifford or
//! Pauli, so the data register of a trajectory is always `P|ψ⟩` for a data
//! Pauli `P`. The default engine tracks that Pauli; the statevector engine
//! runs the same cycles on amplitudes and is kept for cross-checks. Both
//! engines skip cycles without errors, which act as the identity, and draw
//! the same errors for a given seed and trial.

pub mod coherent;
pub mod fit;
pub mod haar;
pub mod statevector;

use std::io::{Read, Write};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use rayon::prelude::*;

use crate::circuit::{decode_circuit, encode_circuit, Circuit};
use crate::code::AnyCode;
use crate::decoding::{Class, DecodeTable, Propagator, Syndrome};
use crate::error::{CpcError, Result};
use crate::pauli::{Pauli, PauliString, Phase};

pub use coherent::{coherent_fidelity_631, CoherentResult};
pub use fit::{fit_half_life, linear_fit, HalfLifeFit};
use statevector::State;

/// Largest total register for the statevector engine.
pub const STATEVECTOR_QUBITS: usize = 14;
/// Largest data register for which the Pauli-frame engine tabulates
/// Haar-state overlaps.
pub const FRAME_DATA_QUBITS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorModel {
    /// X-error rate in s⁻¹.
    pub eps_bit: f64,
    /// Z-error rate in s⁻¹.
    pub eps_phase: f64,
}

impl ErrorModel {
    pub fn new(eps_bit: f64, eps_phase: f64) -> Result<Self> {
        if !(eps_bit >= 0.0 && eps_phase >= 0.0 && eps_bit.is_finite() && eps_phase.is_finite()) {
            return Err(CpcError::InvalidArgument(format!(
                "error rates must be finite and non-negative, got {eps_bit}, {eps_phase}"
            )));
        }
        Ok(Self { eps_bit, eps_phase })
    }

    /// Per-cycle X and Z probabilities at cycle rate `rate`.
    pub fn per_cycle(&self, rate: f64) -> (f64, f64) {
        (
            -(-self.eps_bit / rate).exp_m1(),
            -(-self.eps_phase / rate).exp_m1(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    PauliFrame,
    Statevector,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    /// Cycles per second.
    pub rate: f64,
    pub t_max: f64,
    /// Number of equally spaced sample times in `[0, t_max]`.
    pub samples: usize,
    pub trials: usize,
    pub haar_states: usize,
    pub seed: u64,
    pub engine: Engine,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            rate: 100.0,
            t_max: 1000.0,
            samples: 51,
            trials: 1000,
            haar_states: 20,
            seed: 0,
            engine: Engine::PauliFrame,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rate > 0.0 && self.rate.is_finite()) {
            return Err(CpcError::InvalidArgument(
                "cycle rate must be positive".into(),
            ));
        }
        if !(self.t_max >= 0.0 && self.t_max.is_finite()) {
            return Err(CpcError::InvalidArgument(
                "t_max must be non-negative".into(),
            ));
        }
        if self.trials == 0 || self.samples == 0 {
            return Err(CpcError::InvalidArgument(
                "trials and samples must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub fn sample_times(&self) -> Vec<f64> {
        if self.samples == 1 {
            return vec![self.t_max];
        }
        (0..self.samples)
            .map(|i| self.t_max * i as f64 / (self.samples - 1) as f64)
            .collect()
    }

    /// Completed cycles at time `t`.
    pub fn cycles_at(&self, t: f64) -> u64 {
        (t * self.rate + 1e-9).floor() as u64
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    /// Standard error of the mean.
    pub err: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplePoint {
    pub time: f64,
    pub f0: Estimate,
    pub fplus: Estimate,
    pub frand: Estimate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    F0,
    Fplus,
    Frand,
}

impl std::str::FromStr for Metric {
    type Err = CpcError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f0" => Ok(Metric::F0),
            "fplus" | "f+" => Ok(Metric::Fplus),
            "frand" => Ok(Metric::Frand),
            _ => Err(CpcError::InvalidArgument(format!("unknown metric {s}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeries {
    pub points: Vec<SamplePoint>,
    /// Cycles whose syndrome had no table entry, summed over trials.
    pub uncorrectable: u64,
    /// Cycles with at least one error, summed over trials.
    pub error_cycles: u64,
}

const CSV_HEADER: [&str; 7] = [
    "time_s",
    "F0",
    "F0_err",
    "Fplus",
    "Fplus_err",
    "Frand",
    "Frand_err",
];

impl TimeSeries {
    pub fn times(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.time).collect()
    }

    pub fn metric(&self, m: Metric) -> Vec<f64> {
        self.points
            .iter()
            .map(|p| match m {
                Metric::F0 => p.f0.mean,
                Metric::Fplus => p.fplus.mean,
                Metric::Frand => p.frand.mean,
            })
            .collect()
    }

    pub fn fit(&self, m: Metric) -> Result<HalfLifeFit> {
        fit_half_life(&self.times(), &self.metric(m))
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| CpcError::InvalidArgument(format!("csv output: {e}"));
        out.write_record(CSV_HEADER).map_err(io)?;
        for p in &self.points {
            out.write_record(
                [
                    p.time,
                    p.f0.mean,
                    p.f0.err,
                    p.fplus.mean,
                    p.fplus.err,
                    p.frand.mean,
                    p.frand.err,
                ]
                .iter()
                .map(|v| format!("{v:.10}")),
            )
            .map_err(io)?;
        }
        out.flush()
            .map_err(|e| CpcError::InvalidArgument(format!("csv output: {e}")))
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is ascii")
    }

    /// Reads a series written by [`TimeSeries::write_csv`]; counters are zero.
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(r);
        let header = rdr
            .headers()
            .map_err(|e| CpcError::Parse {
                line: 1,
                column: 1,
                message: e.to_string(),
            })?
            .clone();
        if header.iter().collect::<Vec<_>>() != CSV_HEADER {
            return Err(CpcError::Parse {
                line: 1,
                column: 1,
                message: format!("expected header {}", CSV_HEADER.join(",")),
            });
        }
        let mut points = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let line = i + 2;
            let rec = rec.map_err(|e| CpcError::Parse {
                line,
                column: 1,
                message: e.to_string(),
            })?;
            let mut v = [0.0; 7];
            for (c, field) in rec.iter().enumerate().take(7) {
                v[c] = field.trim().parse().map_err(|_| CpcError::Parse {
                    line,
                    column: c + 1,
                    message: format!("not a number: {field}"),
                })?;
            }
            if rec.len() != 7 {
                return Err(CpcError::Parse {
                    line,
                    column: 1,
                    message: format!("expected 7 fields, found {}", rec.len()),
                });
            }
            points.push(SamplePoint {
                time: v[0],
                f0: Estimate {
                    mean: v[1],
                    err: v[2],
                },
                fplus: Estimate {
                    mean: v[3],
                    err: v[4],
                },
                frand: Estimate {
                    mean: v[5],
                    err: v[6],
                },
            });
        }
        Ok(Self {
            points,
            uncorrectable: 0,
            error_cycles: 0,
        })
    }
}

/// Per-cycle error sampler for one trajectory. Slot `2q` is an X error on
/// qubit `q`, slot `2q + 1` a Z error.
struct ErrorStream {
    probs: Vec<f64>,
    p_any: f64,
    gap: Option<Geometric>,
    rng: ChaCha8Rng,
}

impl ErrorStream {
    fn new(n: usize, model: &ErrorModel, rate: f64, rng: ChaCha8Rng) -> Result<Self> {
        let (px, pz) = model.per_cycle(rate);
        let probs: Vec<f64> = (0..n).flat_map(|_| [px, pz]).collect();
        let log_none: f64 = probs.iter().map(|p| (-p).ln_1p()).sum();
        let p_any = -log_none.exp_m1();
        let gap = if p_any > 0.0 {
            Some(Geometric::new(p_any).map_err(|e| CpcError::InvalidArgument(e.to_string()))?)
        } else {
            None
        };
        Ok(Self {
            probs,
            p_any,
            gap,
            rng,
        })
    }

    /// Index of the next cycle with an error after `cycle`.
    fn next_after(&mut self, cycle: u64) -> u64 {
        match &self.gap {
            Some(g) => cycle
                .saturating_add(g.sample(&mut self.rng))
                .saturating_add(1),
            None => u64::MAX,
        }
    }

    /// Error pattern of a cycle conditioned on at least one error.
    fn pattern(&mut self) -> (u64, u64) {
        let mut u = self.rng.gen::<f64>() * self.p_any;
        let mut none_before = 1.0;
        let last = self.probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);
        let mut first = last;
        for (j, &p) in self.probs.iter().enumerate() {
            let w = none_before * p;
            if u < w {
                first = j;
                break;
            }
            u -= w;
            none_before *= 1.0 - p;
        }
        let (mut x, mut z) = (0u64, 0u64);
        for j in first..self.probs.len() {
            if j == first || self.rng.gen::<f64>() < self.probs[j] {
                if j % 2 == 0 {
                    x |= 1 << (j / 2);
                } else {
                    z |= 1 << (j / 2);
                }
            }
        }
        (x, z)
    }
}

fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

const MEASUREMENT_KEY: u64 = 0x6d65_6173_7572_6531;

/// Haar states used for `Frand`, shared by all trials.
pub fn haar_set(k: usize, count: usize, seed: u64) -> Result<Vec<State>> {
    let mut rng = trial_rng(seed, u64::MAX);
    (0..count).map(|_| haar::haar_state(k, &mut rng)).collect()
}

/// `|⟨ψ|X^x Z^z|ψ⟩|²`.
fn pauli_overlap(psi: &State, x: usize, z: usize) -> f64 {
    let a = psi.amplitudes();
    let mut acc = Complex64::new(0.0, 0.0);
    for (b, amp) in a.iter().enumerate() {
        let sign = if (b & z).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        acc += a[b ^ x].conj() * amp * sign;
    }
    acc.norm_sqr()
}

/// Per-trial values at each sample time: `[F0, F+, Frand]`.
type Trajectory = Vec<[f64; 3]>;

struct Outcome {
    values: Trajectory,
    uncorrectable: u64,
    error_cycles: u64,
}

struct FrameEngine {
    k: usize,
    slot_images: Vec<(u64, u64, u64)>,
    table: DecodeTable,
    overlaps: Vec<f64>,
}

impl FrameEngine {
    fn new(code: &AnyCode, haar: &[State]) -> Result<Self> {
        let k = code.data_qubits();
        if k > FRAME_DATA_QUBITS {
            return Err(CpcError::TooLarge(format!(
                "{k} data qubits exceeds the limit of {FRAME_DATA_QUBITS}"
            )));
        }
        let n = code.num_qubits();
        let prop = Propagator::new(code)?;
        let mut slot_images = Vec::with_capacity(2 * n);
        for q in 0..n {
            for p in [Pauli::X, Pauli::Z] {
                let r = prop.propagate(&PauliString::single(n, q, p))?;
                slot_images.push((r.syndrome.0, r.residual.x_mask(), r.residual.z_mask()));
            }
        }
        let d = 1usize << k;
        let mut overlaps = vec![1.0; d * d];
        if !haar.is_empty() {
            for x in 0..d {
                for z in 0..d {
                    overlaps[x * d + z] = haar.iter().map(|s| pauli_overlap(s, x, z)).sum::<f64>()
                        / haar.len() as f64;
                }
            }
        }
        Ok(Self {
            k,
            slot_images,
            table: DecodeTable::build_lenient(code)?,
            overlaps,
        })
    }

    fn run(&self, stream: &mut ErrorStream, sample_cycles: &[u64]) -> Outcome {
        let (mut fx, mut fz) = (0u64, 0u64);
        let mut out = Outcome {
            values: Vec::with_capacity(sample_cycles.len()),
            uncorrectable: 0,
            error_cycles: 0,
        };
        let mut next = stream.next_after(0);
        for &c in sample_cycles {
            while next <= c {
                let (x, z) = stream.pattern();
                let (mut syn, mut rx, mut rz) = (0u64, 0u64, 0u64);
                for q in 0..64 {
                    for (bit, mask) in [(0, x), (1, z)] {
                        if mask >> q & 1 == 1 {
                            let (s, ix, iz) = self.slot_images[2 * q + bit];
                            syn ^= s;
                            rx ^= ix;
                            rz ^= iz;
                        }
                    }
                    if (x | z) >> q <= 1 {
                        break;
                    }
                }
                let d = self.table.decode(Syndrome(syn));
                if d.class == Class::Uncorrectable {
                    out.uncorrectable += 1;
                }
                fx ^= rx ^ d.correction.x_mask();
                fz ^= rz ^ d.correction.z_mask();
                out.error_cycles += 1;
                next = stream.next_after(next);
            }
            let k = self.k as f64;
            let f0 = 1.0 - f64::from(fx.count_ones()) / k;
            let fplus = 1.0 - f64::from(fz.count_ones()) / k;
            let frand = self.overlaps[(fx as usize) << self.k | fz as usize];
            out.values.push([f0, fplus, frand]);
        }
        out
    }
}

struct StatevectorEngine {
    code: AnyCode,
    k: usize,
    encode: Circuit,
    decode: Circuit,
    table: DecodeTable,
    reference: State,
    phase_checks: Vec<usize>,
}

impl StatevectorEngine {
    fn new(code: &AnyCode) -> Result<Self> {
        let n = code.num_qubits();
        if n > STATEVECTOR_QUBITS {
            return Err(CpcError::TooLarge(format!(
                "{n} qubits exceeds the statevector limit of {STATEVECTOR_QUBITS}"
            )));
        }
        let k = code.data_qubits();
        let phase_checks: Vec<usize> = match code {
            AnyCode::Split(c) => (0..c.n_p).map(|i| c.phase(i)).collect(),
            AnyCode::General(_) => Vec::new(),
        };
        let mut reference = State::zero(n - k)?;
        for &q in &phase_checks {
            reference.apply_h(q - k);
        }
        Ok(Self {
            code: code.clone(),
            k,
            encode: encode_circuit(code)?,
            decode: decode_circuit(code)?,
            table: DecodeTable::build_lenient(code)?,
            reference,
            phase_checks,
        })
    }

    /// One cycle with the given error masks; returns the new data state and
    /// whether the syndrome was uncorrectable.
    fn cycle(&self, data: &State, x: u64, z: u64, rng: &mut ChaCha8Rng) -> Result<(State, bool)> {
        let n = self.code.num_qubits();
        let mut s = data.tensor(&self.reference)?;
        s.apply_circuit(&self.encode)?;
        s.apply_pauli(&PauliString::from_masks(n, x, z, Phase::PlusOne))?;
        s.apply_circuit(&self.decode)?;
        for &q in &self.phase_checks {
            s.apply_h(q);
        }
        let mut syn = 0u64;
        for q in self.k..n {
            if s.measure(q, rng) {
                syn |= 1 << (q - self.k);
            }
        }
        let mut out = s.project_high(self.k, syn as usize);
        out.normalize();
        let d = self.table.decode(Syndrome(syn));
        out.apply_pauli(&d.correction)?;
        Ok((out, d.class == Class::Uncorrectable))
    }

    fn run(
        &self,
        stream: &mut ErrorStream,
        meas: &mut ChaCha8Rng,
        sample_cycles: &[u64],
        haar: &[State],
    ) -> Result<Outcome> {
        let k = self.k;
        let mut plus = State::zero(k)?;
        for q in 0..k {
            plus.apply_h(q);
        }
        let mut states = vec![State::zero(k)?, plus];
        states.extend(haar.iter().cloned());
        let mut out = Outcome {
            values: Vec::with_capacity(sample_cycles.len()),
            uncorrectable: 0,
            error_cycles: 0,
        };
        let mut next = stream.next_after(0);
        for &c in sample_cycles {
            while next <= c {
                let (x, z) = stream.pattern();
                let mut bad = false;
                for st in states.iter_mut() {
                    let (new, u) = self.cycle(st, x, z, meas)?;
                    *st = new;
                    bad |= u;
                }
                out.uncorrectable += u64::from(bad);
                out.error_cycles += 1;
                next = stream.next_after(next);
            }
            let f0 = (0..k).map(|q| states[0].prob_zero(q)).sum::<f64>() / k as f64;
            let mut p = states[1].clone();
            for q in 0..k {
                p.apply_h(q);
            }
            let fplus = (0..k).map(|q| p.prob_zero(q)).sum::<f64>() / k as f64;
            let frand = if haar.is_empty() {
                1.0
            } else {
                haar.iter()
                    .zip(&states[2..])
                    .map(|(a, b)| a.inner(b).norm_sqr())
                    .sum::<f64>()
                    / haar.len() as f64
            };
            out.values.push([f0, fplus, frand]);
        }
        Ok(out)
    }
}

/// Runs `cfg.trials` independent trajectories and averages the fidelities.
/// Results depend only on the inputs, not on the thread count.
pub fn simulate(code: &AnyCode, model: &ErrorModel, cfg: &SimConfig) -> Result<TimeSeries> {
    cfg.validate()?;
    ErrorModel::new(model.eps_bit, model.eps_phase)?;
    let k = code.data_qubits();
    if k == 0 {
        return Err(CpcError::InvalidArgument("code has no data qubits".into()));
    }
    let n = code.num_qubits();
    let times = cfg.sample_times();
    let cycles: Vec<u64> = times.iter().map(|&t| cfg.cycles_at(t)).collect();
    let haar = haar_set(k, cfg.haar_states, cfg.seed)?;
    let stream = |t: usize| ErrorStream::new(n, model, cfg.rate, trial_rng(cfg.seed, t as u64));
    let outcomes: Vec<Outcome> = match cfg.engine {
        Engine::PauliFrame => {
            let engine = FrameEngine::new(code, &haar)?;
            (0..cfg.trials)
                .into_par_iter()
                .map(|t| Ok(engine.run(&mut stream(t)?, &cycles)))
                .collect::<Result<_>>()?
        }
        Engine::Statevector => {
            let engine = StatevectorEngine::new(code)?;
            (0..cfg.trials)
                .into_par_iter()
                .map(|t| {
                    let mut meas = trial_rng(cfg.seed ^ MEASUREMENT_KEY, t as u64);
                    engine.run(&mut stream(t)?, &mut meas, &cycles, &haar)
                })
                .collect::<Result<_>>()?
        }
    };
    Ok(aggregate(&times, &outcomes))
}

fn aggregate(times: &[f64], outcomes: &[Outcome]) -> TimeSeries {
    let n = outcomes.len() as f64;
    let estimate = |i: usize, m: usize| {
        let mean = outcomes.iter().map(|o| o.values[i][m]).sum::<f64>() / n;
        let err = if outcomes.len() > 1 {
            let var = outcomes
                .iter()
                .map(|o| (o.values[i][m] - mean).powi(2))
                .sum::<f64>()
                / (n - 1.0);
            (var / n).sqrt()
        } else {
            0.0
        };
        Estimate { mean, err }
    };
    TimeSeries {
        points: times
            .iter()
            .enumerate()
            .map(|(i, &time)| SamplePoint {
                time,
                f0: estimate(i, 0),
                fplus: estimate(i, 1),
                frand: estimate(i, 2),
            })
            .collect(),
        uncorrectable: outcomes.iter().map(|o| o.uncorrectable).sum(),
        error_cycles: outcomes.iter().map(|o| o.error_cycles).sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::CpcCode;
    use crate::fixtures;
    use approx::assert_abs_diff_eq;

    fn small(engine: Engine) -> SimConfig {
        SimConfig {
            rate: 10.0,
            t_max: 20.0,
            samples: 5,
            trials: 16,
            haar_states: 3,
            seed: 9,
            engine,
        }
    }

    #[test]
    fn zero_rates_keep_everything() {
        let code: AnyCode = fixtures::code_11_3_3().into();
        let s = simulate(
            &code,
            &ErrorModel::new(0.0, 0.0).unwrap(),
            &small(Engine::PauliFrame),
        )
        .unwrap();
        for p in &s.points {
            assert_eq!((p.f0.mean, p.fplus.mean), (1.0, 1.0));
            assert_abs_diff_eq!(p.frand.mean, 1.0, epsilon = 1e-12);
        }
        assert_eq!(s.error_cycles, 0);
    }

    #[test]
    fn engines_agree() {
        let model = ErrorModel::new(0.05, 0.02).unwrap();
        for code in [
            AnyCode::from(fixtures::code_6_3_1()),
            AnyCode::from(fixtures::code_11_3_3()),
            AnyCode::from(fixtures::code_10_3_3()),
        ] {
            let a = simulate(&code, &model, &small(Engine::PauliFrame)).unwrap();
            let b = simulate(&code, &model, &small(Engine::Statevector)).unwrap();
            assert!(a.error_cycles > 0);
            assert_eq!(a.error_cycles, b.error_cycles);
            for (p, q) in a.points.iter().zip(&b.points) {
                assert_abs_diff_eq!(p.f0.mean, q.f0.mean, epsilon = 1e-9);
                assert_abs_diff_eq!(p.fplus.mean, q.fplus.mean, epsilon = 1e-9);
                assert_abs_diff_eq!(p.frand.mean, q.frand.mean, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let code: AnyCode = fixtures::code_11_3_3().into();
        let model = ErrorModel::new(0.1, 0.05).unwrap();
        let cfg = SimConfig {
            trials: 64,
            ..small(Engine::PauliFrame)
        };
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| simulate(&code, &model, &cfg).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn bit_flips_leave_plus_states_alone() {
        let code: AnyCode = fixtures::code_6_3_1().into();
        let model = ErrorModel::new(0.007, 0.0).unwrap();
        let cfg = SimConfig {
            rate: 100.0,
            t_max: 500.0,
            samples: 11,
            trials: 200,
            ..SimConfig::default()
        };
        let s = simulate(&code, &model, &cfg).unwrap();
        assert!(s.points.iter().all(|p| p.fplus.mean == 1.0));
    }

    #[test]
    fn unprotected_qubit_decays_at_twice_the_rate() {
        // F0 of a bare qubit is (1 + e^{-2εt})/2
        let code: AnyCode = CpcCode::empty(1, 0, 0).into();
        let eps = 0.007;
        let cfg = SimConfig {
            rate: 10.0,
            t_max: 400.0,
            samples: 41,
            trials: 4000,
            ..SimConfig::default()
        };
        let s = simulate(&code, &ErrorModel::new(eps, 0.0).unwrap(), &cfg).unwrap();
        for p in &s.points {
            let expected = 0.5 * (1.0 + (-2.0 * eps * p.time).exp());
            assert!((p.f0.mean - expected).abs() <= 4.0 * p.f0.err + 1e-12);
        }
        let fit = s.fit(Metric::F0).unwrap();
        assert!((fit.lambda - std::f64::consts::LN_2 / (2.0 * eps)).abs() < 5.0);
    }

    #[test]
    fn fidelities_in_unit_interval() {
        let code: AnyCode = fixtures::code_11_3_1().into();
        let s = simulate(
            &code,
            &ErrorModel::new(0.3, 0.3).unwrap(),
            &small(Engine::PauliFrame),
        )
        .unwrap();
        for p in &s.points {
            for v in [p.f0.mean, p.fplus.mean, p.frand.mean] {
                assert!((0.0..=1.0 + 1e-12).contains(&v));
            }
        }
    }

    #[test]
    fn csv_round_trip() {
        let code: AnyCode = fixtures::code_6_3_1().into();
        let s = simulate(
            &code,
            &ErrorModel::new(0.1, 0.1).unwrap(),
            &small(Engine::PauliFrame),
        )
        .unwrap();
        let text = s.to_csv();
        assert!(text.starts_with("time_s,F0,F0_err,Fplus,Fplus_err,Frand,Frand_err\n"));
        let back = TimeSeries::read_csv(text.as_bytes()).unwrap();
        for (a, b) in s.points.iter().zip(&back.points) {
            assert_abs_diff_eq!(a.frand.mean, b.frand.mean, epsilon = 1e-9);
        }
        assert!(TimeSeries::read_csv("a,b\n1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn statevector_size_limit() {
        let code: AnyCode = fixtures::code_13_3_3().into();
        let mut big = fixtures::code_13_3_3();
        big.k += 2;
        big.mb = big.mb.vstack(&crate::Gf2Matrix::zeros(2, big.n_b)).unwrap();
        big.mp = big.mp.vstack(&crate::Gf2Matrix::zeros(2, big.n_p)).unwrap();
        let err = simulate(
            &AnyCode::from(big),
            &ErrorModel::new(0.1, 0.1).unwrap(),
            &small(Engine::Statevector),
        );
        assert!(matches!(err, Err(CpcError::TooLarge(_))));
        assert!(simulate(
            &code,
            &ErrorModel::new(0.0, 0.0).unwrap(),
            &small(Engine::Statevector)
        )
        .is_ok());
    }

    #[test]
    fn overlap_table_matches_haar_average() {
        let haar = haar_set(2, 200, 3).unwrap();
        let mean: f64 = haar.iter().map(|s| pauli_overlap(s, 1, 2)).sum::<f64>() / 200.0;
        assert!((mean - 0.2).abs() < 0.05);
        assert_abs_diff_eq!(pauli_overlap(&haar[0], 0, 0), 1.0, epsilon = 1e-12);
    }
}
