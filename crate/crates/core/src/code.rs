//! Code definitions: split (tripartite) and generalized CPC codes, the
//! `.cpc` text format, and the effective classical codes they induce.
//!
//! Qubits are ordered globally as data qubits first, then bit checks, then
//! phase checks (generalized codes: data, then checks). Text output uses
//! one-based labels (`d1`, `b1`, `p1`, `c1`).

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{CpcError, Result};
use crate::gf2::Gf2Matrix;

/// Role of a qubit in the global ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Data,
    Bit,
    Phase,
    /// Check qubit of a generalized code.
    Check,
}

impl Role {
    fn prefix(self) -> char {
        match self {
            Role::Data => 'd',
            Role::Bit => 'b',
            Role::Phase => 'p',
            Role::Check => 'c',
        }
    }
}

/// A qubit identified by role and zero-based index within that role.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QubitLabel {
    pub role: Role,
    pub index: usize,
}

impl fmt::Display for QubitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.role.prefix(), self.index + 1)
    }
}

/// An invariant violation reported by `validate`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Dimension {
        matrix: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },
    NotStrictlyUpperTriangular {
        row: usize,
        col: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Dimension {
                matrix,
                expected,
                found,
            } => write!(
                f,
                "matrix {matrix} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            Violation::NotStrictlyUpperTriangular { row, col } => write!(
                f,
                "cross-check matrix not strictly upper triangular (entry {},{})",
                row + 1,
                col + 1
            ),
        }
    }
}

fn check_shape(
    out: &mut Vec<Violation>,
    matrix: &'static str,
    m: &Gf2Matrix,
    expected: (usize, usize),
) {
    let found = (m.rows(), m.cols());
    if found != expected {
        out.push(Violation::Dimension {
            matrix,
            expected,
            found,
        });
    }
}

/// Split CPC code: data qubits, bit-flip checks and phase checks.
///
/// `mb[j][i]` is a CNOT from data `j` to bit check `i`, `mp[j][i]` a CNOT from
/// phase check `i` to data `j`, and `mc[b][p]` a CNOT from phase check `p` to
/// bit check `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CpcCode {
    pub k: usize,
    pub n_b: usize,
    pub n_p: usize,
    pub mb: Gf2Matrix,
    pub mp: Gf2Matrix,
    pub mc: Gf2Matrix,
}

impl CpcCode {
    /// Builds a code from its three matrices, inferring the dimensions.
    pub fn new(mb: Gf2Matrix, mp: Gf2Matrix, mc: Gf2Matrix) -> Result<Self> {
        let code = Self {
            k: mb.rows(),
            n_b: mb.cols(),
            n_p: mp.cols(),
            mb,
            mp,
            mc,
        };
        code.ensure_valid()?;
        Ok(code)
    }

    pub fn empty(k: usize, n_b: usize, n_p: usize) -> Self {
        Self {
            k,
            n_b,
            n_p,
            mb: Gf2Matrix::zeros(k, n_b),
            mp: Gf2Matrix::zeros(k, n_p),
            mc: Gf2Matrix::zeros(n_b, n_p),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.k + self.n_b + self.n_p
    }

    pub fn num_checks(&self) -> usize {
        self.n_b + self.n_p
    }

    pub fn data(&self, j: usize) -> usize {
        j
    }

    pub fn bit(&self, i: usize) -> usize {
        self.k + i
    }

    pub fn phase(&self, i: usize) -> usize {
        self.k + self.n_b + i
    }

    pub fn label(&self, q: usize) -> QubitLabel {
        if q < self.k {
            QubitLabel {
                role: Role::Data,
                index: q,
            }
        } else if q < self.k + self.n_b {
            QubitLabel {
                role: Role::Bit,
                index: q - self.k,
            }
        } else {
            QubitLabel {
                role: Role::Phase,
                index: q - self.k - self.n_b,
            }
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        check_shape(&mut v, "B", &self.mb, (self.k, self.n_b));
        check_shape(&mut v, "P", &self.mp, (self.k, self.n_p));
        check_shape(&mut v, "C", &self.mc, (self.n_b, self.n_p));
        v
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(CpcError::InvalidCode(v))
        }
    }

    /// Embeds the split code into the generalized formalism: bit checks
    /// become checks `0..n_b`, phase checks become checks `n_b..n_b+n_p`.
    pub fn generalize(&self) -> GeneralCpcCode {
        let n_c = self.n_b + self.n_p;
        let mut g = GeneralCpcCode::empty(self.k, n_c);
        for j in 0..self.k {
            for i in self.mb.ones_in_row(j) {
                g.mbs.set(j, i, true);
            }
            for i in self.mp.ones_in_row(j) {
                g.mps.set(j, self.n_b + i, true);
            }
        }
        for b in 0..self.n_b {
            for p in self.mc.ones_in_row(b) {
                g.mcs.set(b, self.n_b + p, true);
            }
        }
        g
    }

    /// Data qubits touched by bit check `i` (column of `mb`).
    pub fn bit_check_support(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.mb.ones_in_col(i)
    }

    pub fn phase_check_support(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.mp.ones_in_col(i)
    }
}

/// Builds a split code from classical parity-check matrices for bit-flip and
/// phase errors plus a cross-check matrix.
pub fn from_classical(h_bit: &Gf2Matrix, h_phase: &Gf2Matrix, mc: &Gf2Matrix) -> Result<CpcCode> {
    if h_bit.rows() != h_phase.rows() {
        return Err(CpcError::Dimension(format!(
            "bit and phase matrices cover {} and {} data bits",
            h_bit.rows(),
            h_phase.rows()
        )));
    }
    if mc.rows() != h_bit.cols() || mc.cols() != h_phase.cols() {
        return Err(CpcError::Dimension(format!(
            "cross-check matrix is {}x{}, expected {}x{}",
            mc.rows(),
            mc.cols(),
            h_bit.cols(),
            h_phase.cols()
        )));
    }
    CpcCode::new(h_bit.clone(), h_phase.clone(), mc.clone())
}

/// Generalized CPC code with a single species of check qubit.
///
/// `mbs[j][i]`: CNOT from data `j` to check `i`. `mps[j][i]`: conjugate CZ
/// between data `j` and check `i`. `mcs[a][b]` (a < b): conjugate CZ between
/// checks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneralCpcCode {
    pub k: usize,
    pub n_c: usize,
    pub mbs: Gf2Matrix,
    pub mps: Gf2Matrix,
    pub mcs: Gf2Matrix,
}

impl GeneralCpcCode {
    pub fn new(mbs: Gf2Matrix, mps: Gf2Matrix, mcs: Gf2Matrix) -> Result<Self> {
        let code = Self {
            k: mbs.rows(),
            n_c: mbs.cols(),
            mbs,
            mps,
            mcs,
        };
        code.ensure_valid()?;
        Ok(code)
    }

    pub fn empty(k: usize, n_c: usize) -> Self {
        Self {
            k,
            n_c,
            mbs: Gf2Matrix::zeros(k, n_c),
            mps: Gf2Matrix::zeros(k, n_c),
            mcs: Gf2Matrix::zeros(n_c, n_c),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.k + self.n_c
    }

    pub fn check(&self, i: usize) -> usize {
        self.k + i
    }

    pub fn label(&self, q: usize) -> QubitLabel {
        if q < self.k {
            QubitLabel {
                role: Role::Data,
                index: q,
            }
        } else {
            QubitLabel {
                role: Role::Check,
                index: q - self.k,
            }
        }
    }

    /// Symmetric cross-check adjacency `mcs + mcs^T`.
    pub fn cross_symmetric(&self) -> Gf2Matrix {
        self.mcs
            .add(&self.mcs.transpose())
            .expect("validated square matrix")
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        check_shape(&mut v, "B*", &self.mbs, (self.k, self.n_c));
        check_shape(&mut v, "P*", &self.mps, (self.k, self.n_c));
        check_shape(&mut v, "C*", &self.mcs, (self.n_c, self.n_c));
        if self.mcs.rows() == self.n_c && self.mcs.cols() == self.n_c {
            for r in 0..self.n_c {
                for c in self.mcs.ones_in_row(r) {
                    if c <= r {
                        v.push(Violation::NotStrictlyUpperTriangular { row: r, col: c });
                    }
                }
            }
        }
        v
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(CpcError::InvalidCode(v))
        }
    }
}

/// Either flavour of code, as read from a `.cpc` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyCode {
    Split(CpcCode),
    General(GeneralCpcCode),
}

impl AnyCode {
    pub fn validate(&self) -> Vec<Violation> {
        match self {
            AnyCode::Split(c) => c.validate(),
            AnyCode::General(g) => g.validate(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        match self {
            AnyCode::Split(c) => c.num_qubits(),
            AnyCode::General(g) => g.num_qubits(),
        }
    }

    pub fn data_qubits(&self) -> usize {
        match self {
            AnyCode::Split(c) => c.k,
            AnyCode::General(g) => g.k,
        }
    }

    pub fn label(&self, q: usize) -> QubitLabel {
        match self {
            AnyCode::Split(c) => c.label(q),
            AnyCode::General(g) => g.label(q),
        }
    }

    pub fn as_split(&self) -> Option<&CpcCode> {
        match self {
            AnyCode::Split(c) => Some(c),
            AnyCode::General(_) => None,
        }
    }
}

impl From<CpcCode> for AnyCode {
    fn from(c: CpcCode) -> Self {
        AnyCode::Split(c)
    }
}

impl From<GeneralCpcCode> for AnyCode {
    fn from(g: GeneralCpcCode) -> Self {
        AnyCode::General(g)
    }
}

// ---------------------------------------------------------------------------
// .cpc text format

fn push_section(out: &mut String, name: &str, m: &Gf2Matrix) {
    out.push_str(name);
    out.push('\n');
    // Rows of a zero-width matrix are implicit.
    if m.cols() > 0 {
        out.push_str(&m.to_text());
    }
}

pub fn serialize(code: &AnyCode) -> String {
    let mut out = String::new();
    match code {
        AnyCode::Split(c) => {
            out.push_str("CPC split\n");
            out.push_str(&format!("data {}\nbit {}\nphase {}\n", c.k, c.n_b, c.n_p));
            push_section(&mut out, "B", &c.mb);
            push_section(&mut out, "P", &c.mp);
            push_section(&mut out, "C", &c.mc);
        }
        AnyCode::General(g) => {
            out.push_str("CPC general\n");
            out.push_str(&format!("data {}\nchecks {}\n", g.k, g.n_c));
            push_section(&mut out, "B", &g.mbs);
            push_section(&mut out, "P", &g.mps);
            push_section(&mut out, "C", &g.mcs);
        }
    }
    out
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> CpcError {
    CpcError::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_count(line: Option<&(usize, &str)>, key: &str) -> Result<usize> {
    let &(no, text) = line.ok_or_else(|| perr(0, 1, format!("missing '{key}' line")))?;
    let mut parts = text.split_whitespace();
    if parts.next() != Some(key) {
        return Err(perr(no, 1, format!("expected '{key} <count>'")));
    }
    let value = parts
        .next()
        .ok_or_else(|| perr(no, key.len() + 1, format!("missing count after '{key}'")))?;
    if parts.next().is_some() {
        return Err(perr(no, 1, "trailing tokens"));
    }
    value
        .parse()
        .map_err(|_| perr(no, key.len() + 2, format!("invalid count {value:?}")))
}

/// Reads a `.cpc` file. Blank lines and lines starting with '#' are ignored.
pub fn parse(text: &str) -> Result<AnyCode> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let mut it = lines.iter().peekable();
    let &(hno, header) = it.next().ok_or_else(|| perr(1, 1, "empty input"))?;
    let split = match header {
        "CPC split" => true,
        "CPC general" => false,
        _ => return Err(perr(hno, 1, format!("unknown header {header:?}"))),
    };
    let k = parse_count(it.next(), "data")?;
    let (n1, n2) = if split {
        let nb = parse_count(it.next(), "bit")?;
        let np = parse_count(it.next(), "phase")?;
        (nb, np)
    } else {
        let nc = parse_count(it.next(), "checks")?;
        (nc, nc)
    };
    let shapes = if split {
        [(k, n1), (k, n2), (n1, n2)]
    } else {
        [(k, n1), (k, n1), (n1, n1)]
    };

    let mut mats = Vec::with_capacity(3);
    for (name, (rows, cols)) in ["B", "P", "C"].iter().zip(shapes) {
        let &(sno, section) = it
            .next()
            .ok_or_else(|| perr(0, 1, format!("missing section {name}")))?;
        if section != *name {
            return Err(perr(
                sno,
                1,
                format!("expected section {name}, found {section:?}"),
            ));
        }
        let mut m = Gf2Matrix::zeros(rows, cols);
        let listed = if cols == 0 { 0 } else { rows };
        for r in 0..listed {
            let &(no, row) = it
                .next()
                .ok_or_else(|| perr(sno, 1, format!("section {name} needs {rows} rows")))?;
            if ["B", "P", "C"].contains(&row) {
                return Err(perr(
                    no,
                    1,
                    format!("section {name} needs {rows} rows, found {r}"),
                ));
            }
            for (c, ch) in row.chars().enumerate() {
                match ch {
                    '0' | '1' if c < cols => m.set(r, c, ch == '1'),
                    '0' | '1' => {
                        return Err(perr(no, c + 1, format!("row longer than {cols} entries")))
                    }
                    other => {
                        return Err(perr(no, c + 1, format!("non-binary character {other:?}")))
                    }
                }
            }
            let len = row.chars().count();
            if len != cols {
                return Err(perr(
                    no,
                    len + 1,
                    format!("row has {len} entries, expected {cols}"),
                ));
            }
        }
        mats.push(m);
    }
    if let Some(&(no, extra)) = it.next() {
        return Err(perr(
            no,
            1,
            format!("unexpected trailing content {extra:?}"),
        ));
    }
    let mc = mats.pop().unwrap();
    let mp = mats.pop().unwrap();
    let mb = mats.pop().unwrap();
    Ok(if split {
        AnyCode::Split(CpcCode {
            k,
            n_b: n1,
            n_p: n2,
            mb,
            mp,
            mc,
        })
    } else {
        AnyCode::General(GeneralCpcCode {
            k,
            n_c: n1,
            mbs: mb,
            mps: mp,
            mcs: mc,
        })
    })
}

// ---------------------------------------------------------------------------
// .css text format: a qubit count, then the Z-type and X-type check rows.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    pub g_z: Gf2Matrix,
    pub g_x: Gf2Matrix,
}

impl CssCode {
    pub fn new(g_z: Gf2Matrix, g_x: Gf2Matrix) -> Result<Self> {
        if g_z.cols() != g_x.cols() {
            return Err(CpcError::Dimension(format!(
                "Z checks on {} qubits, X checks on {}",
                g_z.cols(),
                g_x.cols()
            )));
        }
        Ok(Self { g_z, g_x })
    }

    pub fn num_qubits(&self) -> usize {
        self.g_z.cols()
    }
}

pub fn serialize_css(code: &CssCode) -> String {
    let mut out = format!("CSS\nqubits {}\nZ\n", code.num_qubits());
    out.push_str(&code.g_z.to_text());
    out.push_str("X\n");
    out.push_str(&code.g_x.to_text());
    out
}

pub fn parse_css(text: &str) -> Result<CssCode> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let mut it = lines.iter();
    match it.next() {
        Some(&(_, "CSS")) => {}
        Some(&(no, h)) => return Err(perr(no, 1, format!("unknown header {h:?}"))),
        None => return Err(perr(1, 1, "empty input")),
    }
    let n = parse_count(it.next(), "qubits")?;
    let rest: Vec<&(usize, &str)> = it.collect();
    let z_at = rest.iter().position(|(_, l)| *l == "Z");
    let x_at = rest.iter().position(|(_, l)| *l == "X");
    let (z_at, x_at) = match (z_at, x_at) {
        (Some(0), Some(x)) => (0, x),
        _ => return Err(perr(0, 1, "expected section Z followed by section X")),
    };
    let section = |rows: &[&(usize, &str)]| -> Result<Gf2Matrix> {
        let text: Vec<&str> = rows.iter().map(|(_, l)| *l).collect();
        Gf2Matrix::parse_rows(&text, n).map_err(|e| match e {
            CpcError::Parse {
                line,
                column,
                message,
            } => perr(rows[line - 1].0, column, message),
            other => other,
        })
    };
    CssCode::new(section(&rest[z_at + 1..x_at])?, section(&rest[x_at + 1..])?)
}

// ---------------------------------------------------------------------------
// Classical codes

/// A parity check of a classical code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub bits: BTreeSet<usize>,
}

/// Classical parity-check code over labelled bits. `harmless` bits are those
/// whose errors never reach the data.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ClassicalCode {
    pub bit_labels: Vec<String>,
    pub checks: Vec<Check>,
    pub harmless: BTreeSet<usize>,
}

impl ClassicalCode {
    pub fn bit_count(&self) -> usize {
        self.bit_labels.len()
    }

    pub fn check_count(&self) -> usize {
        self.checks.len()
    }

    /// Check outcomes flipped by an error on `bit`, as a mask over checks.
    pub fn bit_signature(&self, bit: usize) -> u64 {
        self.checks
            .iter()
            .enumerate()
            .filter(|(_, c)| c.bits.contains(&bit))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// Syndrome produced by a set of bit errors (mask over bits).
    pub fn syndrome_of(&self, errors: u64) -> u64 {
        self.checks.iter().enumerate().fold(0, |acc, (i, c)| {
            let parity = c.bits.iter().filter(|&&b| errors >> b & 1 == 1).count() & 1;
            acc | (parity as u64) << i
        })
    }

    pub fn validate(&self) -> Result<()> {
        for c in &self.checks {
            if let Some(&b) = c.bits.iter().find(|&&b| b >= self.bit_count()) {
                return Err(CpcError::OutOfRange(format!(
                    "check {} references bit {b} of {}",
                    c.label,
                    self.bit_count()
                )));
            }
        }
        Ok(())
    }

    /// Human-readable listing: one check per line, `label: bit bit ...`.
    pub fn to_listing(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let bits: Vec<&str> = c
                .bits
                .iter()
                .map(|&b| self.bit_labels[b].as_str())
                .collect();
            s.push_str(&format!("{}: {}\n", c.label, bits.join(" ")));
        }
        if !self.harmless.is_empty() {
            let h: Vec<&str> = self
                .harmless
                .iter()
                .map(|&b| self.bit_labels[b].as_str())
                .collect();
            s.push_str(&format!("harmless: {}\n", h.join(" ")));
        }
        s
    }
}
