//! Single-error tables, correctability verdicts, syndrome decoding and the
//! extra conditions for an encoded CNOT.

use std::collections::BTreeMap;
use std::fmt;

use crate::circuit::{conjugate_pauli, decode_circuit, Circuit};
use crate::code::{AnyCode, CpcCode};
use crate::error::{CpcError, Result};
use crate::pauli::{Pauli, PauliString};

/// Measured check outcomes after decoding, one bit per check qubit in global
/// order (bit checks first for split codes).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Syndrome(pub u64);

impl Syndrome {
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn fired(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |i| self.0 >> i & 1 == 1)
    }

    /// `0`/`1` string over `checks` entries.
    pub fn to_bits(self, checks: usize) -> String {
        (0..checks)
            .map(|i| if self.0 >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn parse_bits(s: &str) -> Result<Syndrome> {
        let mut v = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' if i < 64 => v |= 1 << i,
                _ => {
                    return Err(CpcError::Parse {
                        line: 1,
                        column: i + 1,
                        message: format!("invalid syndrome character {ch:?}"),
                    })
                }
            }
        }
        Ok(Syndrome(v))
    }

    /// Labels of the fired checks, e.g. `{b1,b3}`.
    pub fn labelled(self, code: &AnyCode) -> String {
        let k = code.data_qubits();
        let names: Vec<String> = self
            .fired()
            .map(|i| code.label(k + i).to_string())
            .collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Syndrome and data residual of an error after it has been pushed through
/// the decoder. The residual is the Pauli left on the data qubits, which is
/// also the correction to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Propagated {
    pub syndrome: Syndrome,
    pub residual: PauliString,
}

/// Reusable decoder image of a code.
pub struct Propagator {
    code: AnyCode,
    decode: Circuit,
}

impl Propagator {
    pub fn new(code: &AnyCode) -> Result<Self> {
        Ok(Self {
            code: code.clone(),
            decode: decode_circuit(code)?,
        })
    }

    pub fn code(&self) -> &AnyCode {
        &self.code
    }

    /// Propagates an error present between encoding and decoding.
    pub fn propagate(&self, error: &PauliString) -> Result<Propagated> {
        let out = conjugate_pauli(&self.decode, error)?;
        Ok(Propagated {
            syndrome: measured_syndrome(&self.code, &out),
            residual: out.truncate(self.code.data_qubits()),
        })
    }
}

/// Syndrome read from a Pauli at decoder output: bit checks (and generalized
/// checks) are measured in Z and see X components; phase checks are measured
/// in X and see Z components.
pub fn measured_syndrome(code: &AnyCode, p: &PauliString) -> Syndrome {
    let k = code.data_qubits();
    match code {
        AnyCode::Split(c) => {
            let bits = (p.x_mask() >> k) & low_mask(c.n_b);
            let phases = (p.z_mask() >> (k + c.n_b)) & low_mask(c.n_p);
            Syndrome(bits | phases << c.n_b)
        }
        AnyCode::General(g) => Syndrome((p.x_mask() >> k) & low_mask(g.n_c)),
    }
}

fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ErrorEntry {
    pub qubit: usize,
    pub pauli: Pauli,
    pub syndrome: Syndrome,
    pub residual: PauliString,
}

impl ErrorEntry {
    pub fn is_harmless(&self) -> bool {
        self.residual.is_identity()
    }

    pub fn label(&self, code: &AnyCode) -> String {
        format!("{}{}", self.pauli.symbol(), code.label(self.qubit))
    }
}

/// Every single-qubit X, Z and Y error, in qubit order.
pub fn error_table(code: &AnyCode) -> Result<Vec<ErrorEntry>> {
    let prop = Propagator::new(code)?;
    let n = code.num_qubits();
    let mut out = Vec::with_capacity(3 * n);
    for q in 0..n {
        for pauli in [Pauli::X, Pauli::Z, Pauli::Y] {
            let r = prop.propagate(&PauliString::single(n, q, pauli))?;
            out.push(ErrorEntry {
                qubit: q,
                pauli,
                syndrome: r.syndrome,
                residual: r.residual,
            });
        }
    }
    Ok(out)
}

/// Two errors that a syndrome decoder cannot tell apart although they need
/// different corrections. `second` is `None` when `first` is undetected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collision {
    pub first: String,
    pub second: Option<String>,
    pub syndrome: Syndrome,
}

impl Collision {
    pub fn describe(&self, code: &AnyCode) -> String {
        match &self.second {
            Some(s) => format!(
                "{} and {} share syndrome {} but need different corrections",
                self.first,
                s,
                self.syndrome.labelled(code)
            ),
            None => format!("{} damages the data without firing any check", self.first),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub collisions: Vec<Collision>,
}

impl Verdict {
    pub fn ok(&self) -> bool {
        self.collisions.is_empty()
    }
}

fn find_collisions(errors: &[(String, Propagated)]) -> Vec<Collision> {
    let mut out = Vec::new();
    let mut seen: BTreeMap<Syndrome, Vec<usize>> = BTreeMap::new();
    for (i, (name, e)) in errors.iter().enumerate() {
        if e.syndrome.is_zero() {
            if !e.residual.is_identity() {
                out.push(Collision {
                    first: name.clone(),
                    second: None,
                    syndrome: e.syndrome,
                });
            }
            continue;
        }
        let bucket = seen.entry(e.syndrome).or_default();
        if let Some(&j) = bucket
            .iter()
            .find(|&&j| !errors[j].1.residual.eq_up_to_phase(&e.residual))
        {
            out.push(Collision {
                first: errors[j].0.clone(),
                second: Some(name.clone()),
                syndrome: e.syndrome,
            });
        }
        bucket.push(i);
    }
    out
}

fn single_errors(code: &AnyCode) -> Result<Vec<(String, Propagated)>> {
    Ok(error_table(code)?
        .into_iter()
        .map(|e| {
            (
                e.label(code),
                Propagated {
                    syndrome: e.syndrome,
                    residual: e.residual,
                },
            )
        })
        .collect())
}

/// A code corrects every single-qubit error when no two single errors share
/// a syndrome while requiring different data corrections, and every error
/// that touches the data fires at least one check.
pub fn is_single_error_correcting(code: &AnyCode) -> Result<Verdict> {
    let errors = single_errors(code)?;
    Ok(Verdict {
        collisions: find_collisions(&errors),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Class {
    NoError,
    Harmless,
    Corrected,
    Uncorrectable,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::NoError => "no_error",
            Class::Harmless => "harmless",
            Class::Corrected => "corrected",
            Class::Uncorrectable => "uncorrectable",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decision {
    /// Pauli to apply on the data qubits.
    pub correction: PauliString,
    pub class: Class,
}

/// Syndrome lookup table built from the single-error table.
#[derive(Clone, Debug)]
pub struct DecodeTable {
    code: AnyCode,
    entries: BTreeMap<Syndrome, Decision>,
}

impl DecodeTable {
    pub fn build(code: &AnyCode) -> Result<Self> {
        let verdict = is_single_error_correcting(code)?;
        if let Some(c) = verdict.collisions.first() {
            return Err(CpcError::NotCorrectable(c.describe(code)));
        }
        Self::build_lenient(code)
    }

    /// Table for any code; on colliding syndromes the first listed error
    /// wins, and errors with an empty syndrome go uncorrected.
    pub fn build_lenient(code: &AnyCode) -> Result<Self> {
        let k = code.data_qubits();
        let mut entries = BTreeMap::new();
        entries.insert(
            Syndrome(0),
            Decision {
                correction: PauliString::identity(k),
                class: Class::NoError,
            },
        );
        for e in error_table(code)? {
            if e.syndrome.is_zero() {
                continue;
            }
            let class = if e.is_harmless() {
                Class::Harmless
            } else {
                Class::Corrected
            };
            entries.entry(e.syndrome).or_insert(Decision {
                correction: e.residual,
                class,
            });
        }
        Ok(Self {
            code: code.clone(),
            entries,
        })
    }

    pub fn code(&self) -> &AnyCode {
        &self.code
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Syndrome, &Decision)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Correction for a measured syndrome. Split codes whose full syndrome is
    /// not listed fall back to decoding the bit and phase halves separately,
    /// which handles one X-type and one Z-type fault at once.
    pub fn decode(&self, s: Syndrome) -> Decision {
        if let Some(d) = self.entries.get(&s) {
            return *d;
        }
        if let AnyCode::Split(c) = &self.code {
            let bit = Syndrome(s.0 & low_mask(c.n_b));
            let phase = Syndrome(s.0 & !low_mask(c.n_b));
            if let (Some(a), Some(b)) = (self.entries.get(&bit), self.entries.get(&phase)) {
                let correction = a.correction * b.correction;
                let class = if correction.is_identity() {
                    Class::Harmless
                } else {
                    Class::Corrected
                };
                return Decision { correction, class };
            }
        }
        Decision {
            correction: PauliString::identity(self.code.data_qubits()),
            class: Class::Uncorrectable,
        }
    }

    /// TSV listing: syndrome labels, bit vector, correction, class.
    pub fn to_tsv(&self) -> String {
        let checks = self.code.num_qubits() - self.code.data_qubits();
        let mut s = String::from("syndrome\tbits\tcorrection\tclass\n");
        for (syn, d) in &self.entries {
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                syn.labelled(&self.code),
                syn.to_bits(checks),
                d.correction.to_labelled(|q| self.code.label(q)),
                d.class
            ));
        }
        s
    }
}

/// TSV listing of the single-error table.
pub fn error_table_tsv(code: &AnyCode, table: &[ErrorEntry]) -> String {
    let checks = code.num_qubits() - code.data_qubits();
    let mut s = String::from("error\tsyndrome\tbits\tclass\n");
    for e in table {
        let class = if e.syndrome.is_zero() && e.is_harmless() {
            Class::NoError
        } else if e.syndrome.is_zero() {
            Class::Uncorrectable
        } else if e.is_harmless() {
            Class::Harmless
        } else {
            Class::Corrected
        };
        s.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            e.label(code),
            e.syndrome.labelled(code),
            e.syndrome.to_bits(checks),
            class
        ));
    }
    s
}

fn check_pair(code: &CpcCode, c: usize, t: usize) -> Result<()> {
    if c >= code.k || t >= code.k {
        return Err(CpcError::OutOfRange(format!(
            "data qubits {c}, {t} of {}",
            code.k
        )));
    }
    if c == t {
        return Err(CpcError::InvalidArgument(
            "control and target must differ".into(),
        ));
    }
    Ok(())
}

/// Whether an encoded CNOT from data `c` to data `t` keeps the code
/// correctable: on top of single-error correction, the doubled errors
/// `X_c X_t` and `Z_c Z_t` produced by the gate must be identifiable.
pub fn cnot_compatible(code: &CpcCode, c: usize, t: usize) -> Result<Verdict> {
    check_pair(code, c, t)?;
    let any = AnyCode::Split(code.clone());
    let mut errors = single_errors(&any)?;
    let base = find_collisions(&errors);
    if !base.is_empty() {
        return Ok(Verdict { collisions: base });
    }
    let prop = Propagator::new(&any)?;
    let n = code.num_qubits();
    for (name, pauli) in [
        ("X", PauliString::x_on(n, [c, t])),
        ("Z", PauliString::z_on(n, [c, t])),
    ] {
        let label = format!("{name}{}{name}{}", any.label(c), any.label(t));
        errors.push((label, prop.propagate(&pauli)?));
    }
    Ok(Verdict {
        collisions: find_collisions(&errors),
    })
}

/// Adds a bit check on `d_c` and a phase check on `d_t`, linked through the
/// first bit check and first phase check that touch no data qubit.
pub fn augment_for_cnot(code: &CpcCode, c: usize, t: usize) -> Result<CpcCode> {
    code.ensure_valid()?;
    check_pair(code, c, t)?;
    let b_cc = (0..code.n_b)
        .find(|&b| code.mb.col_mask(b) == 0)
        .ok_or_else(|| {
            CpcError::Unsupported("no bit check that only checks other checks".into())
        })?;
    let p_cc = (0..code.n_p)
        .find(|&p| code.mp.col_mask(p) == 0)
        .ok_or_else(|| {
            CpcError::Unsupported("no phase check that only checks other checks".into())
        })?;
    let (k, nb, np) = (code.k, code.n_b, code.n_p);
    let mut out = CpcCode::empty(k, nb + 1, np + 1);
    for j in 0..k {
        for b in code.mb.ones_in_row(j) {
            out.mb.set(j, b, true);
        }
        for p in code.mp.ones_in_row(j) {
            out.mp.set(j, p, true);
        }
    }
    for b in 0..nb {
        for p in code.mc.ones_in_row(b) {
            out.mc.set(b, p, true);
        }
    }
    out.mb.set(c, nb, true);
    out.mp.set(t, np, true);
    out.mc.set(b_cc, np, true);
    out.mc.set(nb, p_cc, true);
    out.mc.set(nb, np, true);
    Ok(out)
}
