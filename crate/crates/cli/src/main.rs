//! `cpc` command-line tool.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use cpc::circuit::{circuits_equal, decode_circuit, encode_circuit, Gate};
use cpc::code::{self, AnyCode, CssCode};
use cpc::decoding::{self, cnot_compatible, DecodeTable, Syndrome};
use cpc::dynamics::{self, Engine, ErrorModel, Metric, SimConfig, TimeSeries};
use cpc::ising;
use cpc::logical;
use cpc::propagation::{effective_codes, general_to_classical};
use cpc::search::{self, Dims, Predicate, SearchConfig};
use cpc::stabilizers::{self, Distance, DEFAULT_MAX_WEIGHT};
use cpc::CpcError;

#[derive(Parser)]
#[command(
    name = "cpc",
    version,
    about = "Build, check and simulate coherent parity check codes"
)]
#[command(arg_required_else_help = true)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output file (a directory for `search`); standard output otherwise.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Species {
    Bit,
    Phase,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Frame,
    Statevector,
}

#[derive(Subcommand)]
enum Command {
    /// Check single-error correction and report the distance.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_WEIGHT)]
        max_weight: usize,
    },
    /// Stabilizer generators of the encoded state.
    Stabilizers {
        file: PathBuf,
        /// Print the binary symplectic matrix instead.
        #[arg(long)]
        symplectic: bool,
    },
    /// Logical X and Z operators of each data qubit.
    Logicals { file: PathBuf },
    /// Distance of a .cpc or .css code, searched up to a weight bound.
    Distance {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_WEIGHT)]
        max_weight: usize,
    },
    /// Single-qubit error table as TSV.
    ErrorTable { file: PathBuf },
    /// Syndrome lookup table as TSV.
    DecodeTable {
        file: PathBuf,
        /// Build a table even when syndromes collide (first error wins).
        #[arg(long)]
        lenient: bool,
    },
    /// Convert a .css file to a split .cpc code.
    CssToCpc { file: PathBuf },
    /// Convert a split .cpc code to a .css file.
    CpcToCss { file: PathBuf },
    /// Ising Hamiltonian and ground-state decoding of a measured syndrome.
    Ising {
        file: PathBuf,
        /// Measured checks as 0/1 characters in check order.
        #[arg(long)]
        syndrome: String,
        /// Error probability of each bit.
        #[arg(long, default_value_t = 0.05)]
        p: f64,
        /// Error probability of each check (defaults to `p`).
        #[arg(long)]
        q: Option<f64>,
        /// Effective code of a split code to decode.
        #[arg(long, value_enum, default_value_t = Species::Bit)]
        species: Species,
        /// Also decode by exhaustive maximum likelihood and require agreement.
        #[arg(long)]
        compare_ml: bool,
    },
    /// Monte Carlo fidelities over time as CSV.
    Simulate {
        file: PathBuf,
        #[arg(long, default_value_t = 0.007)]
        eps_bit: f64,
        #[arg(long, default_value_t = 0.0007)]
        eps_phase: f64,
        /// Correction cycles per second.
        #[arg(long, default_value_t = 100.0)]
        rate: f64,
        #[arg(long, default_value_t = 1000.0)]
        t_max: f64,
        #[arg(long, default_value_t = 51)]
        samples: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 20)]
        haar_states: usize,
        #[arg(long, value_enum, default_value_t = EngineArg::Frame)]
        engine: EngineArg,
    },
    /// Half-life fit of a simulated CSV column.
    Fit {
        file: PathBuf,
        /// F0, Fplus or Frand.
        #[arg(long, default_value = "Frand")]
        metric: String,
    },
    /// Random search for codes meeting a predicate.
    Search {
        #[arg(long)]
        data: usize,
        #[arg(long)]
        bit: usize,
        #[arg(long)]
        phase: usize,
        #[arg(long)]
        budget: u64,
        /// Reuse the bit-check matrix as the phase-check matrix.
        #[arg(long)]
        mirror_bp: bool,
        /// `sec` (single-error correcting) or `cnot:c,t` with 0-based data indices.
        #[arg(long, default_value = "sec")]
        require: String,
        /// Largest number of codes written.
        #[arg(long, default_value_t = 100)]
        cap: usize,
    },
    /// Encoder with a Hadamard on one data qubit (0-based) folded in.
    LogicalH {
        file: PathBuf,
        #[arg(long)]
        qubit: usize,
    },
    /// Encoder with a CNOT between data qubits (0-based) folded in.
    LogicalCnot {
        file: PathBuf,
        #[arg(long)]
        control: usize,
        #[arg(long)]
        target: usize,
    },
    /// Encoding (or decoding) circuit, one gate per line.
    EmitCircuit {
        file: PathBuf,
        #[arg(long)]
        decode: bool,
    },
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    Failed,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_code(path: &Path) -> Result<AnyCode> {
    let code = code::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let violations = code.validate();
    if !violations.is_empty() {
        return Err(CpcError::InvalidCode(violations))
            .with_context(|| format!("invalid code in {}", path.display()));
    }
    Ok(code)
}

fn load_split(path: &Path) -> Result<cpc::CpcCode> {
    match load_code(path)? {
        AnyCode::Split(c) => Ok(c),
        AnyCode::General(_) => bail!(
            "{} holds a general code; this command needs a split code",
            path.display()
        ),
    }
}

struct Output {
    target: Option<PathBuf>,
    buf: String,
}

impl Output {
    fn line(&mut self, s: impl AsRef<str>) {
        self.buf.push_str(s.as_ref());
        self.buf.push('\n');
    }

    fn text(&mut self, s: impl AsRef<str>) {
        self.buf.push_str(s.as_ref());
    }

    fn finish(self) -> Result<()> {
        match self.target {
            Some(p) => fs::write(&p, self.buf).with_context(|| format!("writing {}", p.display())),
            None => {
                std::io::stdout().write_all(self.buf.as_bytes())?;
                Ok(())
            }
        }
    }
}

fn run(cli: Cli) -> Result<Status> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring threads")?;
    }
    let search_dir = matches!(cli.command, Command::Search { .. });
    let mut out = Output {
        target: if search_dir { None } else { cli.out.clone() },
        buf: String::new(),
    };
    let status = match cli.command {
        Command::Verify { file, max_weight } => {
            let code = load_code(&file)?;
            let verdict = decoding::is_single_error_correcting(&code)?;
            let distance = stabilizers::code_distance(&code, max_weight)?;
            if verdict.ok() {
                out.line(format!(
                    "single-error correcting: yes, distance: {distance}"
                ));
                Status::Ok
            } else {
                out.line(format!("single-error correcting: no, distance: {distance}"));
                for c in &verdict.collisions {
                    out.line(c.describe(&code));
                }
                Status::Failed
            }
        }
        Command::Stabilizers { file, symplectic } => {
            let code = load_code(&file)?;
            if symplectic {
                let split = code
                    .as_split()
                    .context("the symplectic form needs a split code")?;
                out.text(stabilizers::symplectic_matrix(split)?.full().to_text());
            } else {
                out.text(stabilizers::format_stabilizers(
                    &code,
                    &stabilizers::stabilizers(&code)?,
                ));
            }
            Status::Ok
        }
        Command::Logicals { file } => {
            let code = load_code(&file)?;
            let (lx, lz) = stabilizers::logical_operators(&code)?;
            for (j, (x, z)) in lx.iter().zip(&lz).enumerate() {
                out.line(format!(
                    "X_d{}: {}",
                    j + 1,
                    x.to_labelled(|q| code.label(q))
                ));
                out.line(format!(
                    "Z_d{}: {}",
                    j + 1,
                    z.to_labelled(|q| code.label(q))
                ));
            }
            Status::Ok
        }
        Command::Distance { file, max_weight } => {
            let text = read(&file)?;
            let d = if text.trim_start().starts_with("CSS") {
                let css = code::parse_css(&text)?;
                stabilizers::distance_of_group(
                    css.num_qubits(),
                    &stabilizers::css_generators(&css.g_z, &css.g_x),
                    max_weight,
                )?
            } else {
                stabilizers::code_distance(&load_code(&file)?, max_weight)?
            };
            out.line(format!("distance: {d}"));
            if let Distance::GreaterThan(_) = d {
                eprintln!("no logical operator up to weight {max_weight}; raise --max-weight");
            }
            Status::Ok
        }
        Command::ErrorTable { file } => {
            let code = load_code(&file)?;
            out.text(decoding::error_table_tsv(
                &code,
                &decoding::error_table(&code)?,
            ));
            Status::Ok
        }
        Command::DecodeTable { file, lenient } => {
            let code = load_code(&file)?;
            let table = if lenient {
                DecodeTable::build_lenient(&code)?
            } else {
                match DecodeTable::build(&code) {
                    Ok(t) => t,
                    Err(CpcError::NotCorrectable(msg)) => {
                        eprintln!("not single-error correcting: {msg}");
                        return Ok(Status::Failed);
                    }
                    Err(e) => return Err(e.into()),
                }
            };
            out.text(table.to_tsv());
            Status::Ok
        }
        Command::CssToCpc { file } => {
            let css = code::parse_css(&read(&file)?)
                .with_context(|| format!("parsing {}", file.display()))?;
            let conv = stabilizers::css_to_cpc(&css.g_z, &css.g_x)?;
            let order: Vec<String> = conv.permutation.iter().map(|c| c.to_string()).collect();
            out.line(format!(
                "# input columns in qubit order: {}",
                order.join(" ")
            ));
            out.text(code::serialize(&AnyCode::Split(conv.code)));
            Status::Ok
        }
        Command::CpcToCss { file } => {
            let (g_z, g_x) = stabilizers::cpc_to_css(&load_split(&file)?)?;
            out.text(code::serialize_css(&CssCode::new(g_z, g_x)?));
            Status::Ok
        }
        Command::Ising {
            file,
            syndrome,
            p,
            q,
            species,
            compare_ml,
        } => {
            let code = load_code(&file)?;
            let cc = match (&code, species) {
                (AnyCode::Split(c), Species::Bit) => effective_codes(c).0,
                (AnyCode::Split(c), Species::Phase) => effective_codes(c).1,
                (AnyCode::General(g), _) => general_to_classical(g),
            };
            let measured = Syndrome::parse_bits(&syndrome)?;
            if syndrome.len() != cc.check_count() {
                bail!(
                    "syndrome has {} entries but the code has {} checks",
                    syndrome.len(),
                    cc.check_count()
                );
            }
            let bit_priors = vec![p; cc.bit_count()];
            let check_priors = vec![q.unwrap_or(p); cc.check_count()];
            let problem = ising::ising_problem(&cc, &bit_priors, &check_priors, measured)?;
            out.text(problem.to_text());
            let ground = ising::ising_decode(&cc, &bit_priors, &check_priors, measured)?;
            let names = |bits: &[usize]| -> String {
                let v: Vec<&str> = bits.iter().map(|&b| cc.bit_labels[b].as_str()).collect();
                if v.is_empty() {
                    "none".into()
                } else {
                    v.join(" ")
                }
            };
            let checks = |c: &[usize]| -> String {
                let v: Vec<&str> = c.iter().map(|&i| cc.checks[i].label.as_str()).collect();
                if v.is_empty() {
                    "none".into()
                } else {
                    v.join(" ")
                }
            };
            out.line(format!("errors: {}", names(&ground.errors)));
            out.line(format!("faulty checks: {}", checks(&ground.faulty_checks)));
            if compare_ml {
                let ml = ising::ml_decode_exhaustive(&cc, &bit_priors, &check_priors, measured)?;
                let same = ml == ground;
                out.line(format!(
                    "maximum likelihood agrees: {}",
                    if same { "yes" } else { "no" }
                ));
                if !same {
                    out.line(format!("ml errors: {}", names(&ml.errors)));
                    out.finish()?;
                    return Ok(Status::Failed);
                }
            }
            Status::Ok
        }
        Command::Simulate {
            file,
            eps_bit,
            eps_phase,
            rate,
            t_max,
            samples,
            trials,
            haar_states,
            engine,
        } => {
            let code = load_code(&file)?;
            let model = ErrorModel::new(eps_bit, eps_phase)?;
            let cfg = SimConfig {
                rate,
                t_max,
                samples,
                trials,
                haar_states,
                seed: cli.seed,
                engine: match engine {
                    EngineArg::Frame => Engine::PauliFrame,
                    EngineArg::Statevector => Engine::Statevector,
                },
            };
            let series = dynamics::simulate(&code, &model, &cfg)?;
            eprintln!(
                "cycles with errors: {}, uncorrectable syndromes: {}",
                series.error_cycles, series.uncorrectable
            );
            out.text(series.to_csv());
            Status::Ok
        }
        Command::Fit { file, metric } => {
            let metric: Metric = metric.parse()?;
            let series = TimeSeries::read_csv(read(&file)?.as_bytes())
                .with_context(|| format!("parsing {}", file.display()))?;
            match series.fit(metric) {
                Ok(fit) => {
                    out.line(format!("lambda_half_s: {:.6}", fit.lambda));
                    out.line(format!("F_inf: {:.6}", fit.f_inf));
                    out.line(format!("residual: {:.3e}", fit.residual));
                    if fit.at_bound {
                        out.line("warning: half-life at the edge of the search range");
                    }
                    Status::Ok
                }
                Err(CpcError::Fit(msg)) => {
                    out.line(format!("fit flagged: {msg}"));
                    Status::Failed
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Search {
            data,
            bit,
            phase,
            budget,
            mirror_bp,
            require,
            cap,
        } => {
            let cfg = SearchConfig {
                dims: Dims {
                    k: data,
                    n_b: bit,
                    n_p: phase,
                },
                predicate: require.parse::<Predicate>()?,
                budget,
                seed: cli.seed,
                mirror_bp,
                cap,
            };
            let result = search::search(&cfg)?;
            let mut written = 0;
            if let Some(dir) = &cli.out {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                for (trial, code) in &result.found {
                    let name = format!("{}-{}-{}-trial{trial}.cpc", data, bit, phase);
                    fs::write(
                        dir.join(name),
                        code::serialize(&AnyCode::Split(code.clone())),
                    )?;
                    written += 1;
                }
            } else {
                for (trial, code) in &result.found {
                    out.line(format!("# trial {trial}"));
                    out.text(code::serialize(&AnyCode::Split(code.clone())));
                }
            }
            out.line(format!(
                "trials: {}, successes: {}, success rate: {:.3e}, written: {written}",
                result.trials,
                result.successes,
                result.success_rate()
            ));
            if result.successes > 0 {
                Status::Ok
            } else {
                Status::Failed
            }
        }
        Command::LogicalH { file, qubit } => {
            let code = load_code(&file)?;
            let c = logical::logical_hadamard_circuit(&code, qubit)?;
            let ok = circuits_equal(&c, &logical::gate_then_encode(&code, Gate::H(qubit))?)?;
            out.text(c.to_text());
            if ok {
                Status::Ok
            } else {
                Status::Failed
            }
        }
        Command::LogicalCnot {
            file,
            control,
            target,
        } => {
            let code = load_code(&file)?;
            let c = logical::logical_cnot_circuit(&code, control, target)?;
            let ok = circuits_equal(
                &c,
                &logical::gate_then_encode(&code, Gate::cnot(control, target))?,
            )?;
            if let AnyCode::Split(s) = &code {
                let v = cnot_compatible(s, control, target)?;
                if !v.ok() {
                    eprintln!("warning: the doubled errors of this CNOT are not identifiable:");
                    for col in &v.collisions {
                        eprintln!("  {}", col.describe(&code));
                    }
                }
            }
            out.text(c.to_text());
            if ok {
                Status::Ok
            } else {
                Status::Failed
            }
        }
        Command::EmitCircuit { file, decode } => {
            let code = load_code(&file)?;
            let c = if decode {
                decode_circuit(&code)?
            } else {
                encode_circuit(&code)?
            };
            out.line(format!("# qubits {}", c.qubit_count()));
            out.text(c.to_text());
            Status::Ok
        }
    };
    out.finish()?;
    Ok(status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
