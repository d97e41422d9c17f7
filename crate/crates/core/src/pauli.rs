//! Pauli strings in symplectic (bit-mask) form.

use std::fmt;
use std::ops::Mul;

use crate::error::{CpcError, Result};

/// Largest register a `PauliString` can describe.
pub const MAX_QUBITS: usize = 64;

/// Global phase `i^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    PlusOne,
    PlusI,
    MinusOne,
    MinusI,
}

impl Phase {
    pub fn from_exponent(k: u8) -> Self {
        match k & 3 {
            0 => Phase::PlusOne,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn exponent(self) -> u8 {
        self as u8
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::PlusOne => "+",
            Phase::PlusI => "+i",
            Phase::MinusOne => "-",
            Phase::MinusI => "-i",
        })
    }
}

/// Single-qubit Pauli.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A Pauli operator `phase · ⊗_q σ_q` on `n` qubits.
///
/// Internally the operator is kept as `i^e · X^x Z^z` (all X factors to the
/// left), which makes products and Clifford updates simple bit arithmetic.
/// [`PauliString::phase`] converts back to the Hermitian-friendly form where a
/// `Y` factor carries no phase.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: u64,
    z: u64,
    e: u8,
}

#[inline]
fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits");
        Self {
            n,
            x: 0,
            z: 0,
            e: 0,
        }
    }

    /// Builds `phase · ⊗σ` from X and Z support masks.
    pub fn from_masks(n: usize, x: u64, z: u64, phase: Phase) -> Self {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits");
        assert!(
            x & !mask(n) == 0 && z & !mask(n) == 0,
            "mask exceeds {n} qubits"
        );
        let e = (phase.exponent() + (x & z).count_ones() as u8) & 3;
        Self { n, x, z, e }
    }

    pub fn single(n: usize, q: usize, p: Pauli) -> Self {
        assert!(q < n, "qubit {q} out of range for {n} qubits");
        let (x, z) = p.bits();
        Self::from_masks(n, u64::from(x) << q, u64::from(z) << q, Phase::PlusOne)
    }

    pub fn x_on(n: usize, qubits: impl IntoIterator<Item = usize>) -> Self {
        let m = qubits.into_iter().fold(0u64, |acc, q| acc ^ (1 << q));
        Self::from_masks(n, m, 0, Phase::PlusOne)
    }

    pub fn z_on(n: usize, qubits: impl IntoIterator<Item = usize>) -> Self {
        let m = qubits.into_iter().fold(0u64, |acc, q| acc ^ (1 << q));
        Self::from_masks(n, 0, m, Phase::PlusOne)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    /// Phase relative to the tensor product of I/X/Y/Z factors.
    pub fn phase(&self) -> Phase {
        Phase::from_exponent(self.e.wrapping_sub((self.x & self.z).count_ones() as u8))
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.e = (phase.exponent() + (self.x & self.z).count_ones() as u8) & 3;
        self
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x >> q & 1 == 1, self.z >> q & 1 == 1)
    }

    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Equality ignoring the global phase.
    pub fn eq_up_to_phase(&self, other: &Self) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        ((self.x & other.z) ^ (self.z & other.x))
            .count_ones()
            .is_multiple_of(2)
    }

    /// Operator product `self · rhs`.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(CpcError::Dimension(format!(
                "Pauli strings on {} and {} qubits",
                self.n, rhs.n
            )));
        }
        // X^a Z^b X^c Z^d = (-1)^{|b&c|} X^{a^c} Z^{b^d}
        let sign = ((self.z & rhs.x).count_ones() as u8 & 1) * 2;
        Ok(Self {
            n: self.n,
            x: self.x ^ rhs.x,
            z: self.z ^ rhs.z,
            e: (self.e + rhs.e + sign) & 3,
        })
    }

    /// Restriction to the qubits `0..k`, dropping the phase.
    pub fn truncate(&self, k: usize) -> Self {
        let m = mask(k);
        Self::from_masks(k, self.x & m, self.z & m, Phase::PlusOne)
    }

    /// Restriction to the qubits selected by `keep` (in ascending order).
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let mut x = 0;
        let mut z = 0;
        for (i, &q) in keep.iter().enumerate() {
            x |= (self.x >> q & 1) << i;
            z |= (self.z >> q & 1) << i;
        }
        Self::from_masks(keep.len(), x, z, Phase::PlusOne)
    }

    /// Embeds into a larger register; qubit `i` goes to `positions[i]`.
    pub fn embed(&self, n: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.n);
        let mut x = 0;
        let mut z = 0;
        for (i, &q) in positions.iter().enumerate() {
            x |= (self.x >> i & 1) << q;
            z |= (self.z >> i & 1) << q;
        }
        Self::from_masks(n, x, z, self.phase())
    }

    // Clifford conjugation primitives, P -> U P U†.

    pub(crate) fn conj_h(&mut self, q: usize) {
        let xb = self.x >> q & 1;
        let zb = self.z >> q & 1;
        self.e = (self.e + 2 * (xb & zb) as u8) & 3;
        self.x = (self.x & !(1 << q)) | (zb << q);
        self.z = (self.z & !(1 << q)) | (xb << q);
    }

    pub(crate) fn conj_cnot(&mut self, c: usize, t: usize) {
        self.x ^= (self.x >> c & 1) << t;
        self.z ^= (self.z >> t & 1) << c;
    }

    pub(crate) fn conj_cz(&mut self, a: usize, b: usize) {
        let xa = self.x >> a & 1;
        let xb = self.x >> b & 1;
        self.e = (self.e + 2 * (xa & xb) as u8) & 3;
        self.z ^= (xb << a) | (xa << b);
    }

    /// Conjugation by CZ in the X basis (H⊗H · CZ · H⊗H).
    pub(crate) fn conj_cczx(&mut self, a: usize, b: usize) {
        let za = self.z >> a & 1;
        let zb = self.z >> b & 1;
        self.e = (self.e + 2 * (za & zb) as u8) & 3;
        self.x ^= (zb << a) | (za << b);
    }

    pub(crate) fn conj_pauli(&mut self, q: usize, p: Pauli) {
        let (px, pz) = p.bits();
        // P anticommutes with the local factor iff the symplectic product is odd.
        let anti = (u64::from(px) & (self.z >> q & 1)) ^ (u64::from(pz) & (self.x >> q & 1));
        self.e = (self.e + 2 * anti as u8) & 3;
    }

    /// Text form in the `X d1 d2 Z b1` style: qubits grouped by Pauli letter,
    /// each group in ascending qubit order.
    pub fn to_labelled<L: fmt::Display>(&self, label: impl Fn(usize) -> L) -> String {
        if self.is_identity() {
            return "I".to_string();
        }
        let mut groups = Vec::new();
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            let qs: Vec<String> = (0..self.n)
                .filter(|&q| self.get(q) == p)
                .map(|q| label(q).to_string())
                .collect();
            if !qs.is_empty() {
                groups.push(format!("{} {}", p.symbol(), qs.join(" ")));
            }
        }
        let sign = match self.phase() {
            Phase::PlusOne => "",
            Phase::PlusI => "i ",
            Phase::MinusOne => "- ",
            Phase::MinusI => "-i ",
        };
        format!("{sign}{}", groups.join(" "))
    }
}

impl Mul for PauliString {
    type Output = PauliString;

    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("qubit counts must match")
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.phase())?;
        for q in 0..self.n {
            write!(f, "{}", self.get(q).symbol())?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PauliString {
    type Err = CpcError;

    /// Parses dense notation such as `"XIZY"` or `"-iXZ"`.
    fn from_str(s: &str) -> Result<Self> {
        let (phase, body) = if let Some(rest) = s.strip_prefix("-i") {
            (Phase::MinusI, rest)
        } else if let Some(rest) = s.strip_prefix("+i") {
            (Phase::PlusI, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (Phase::PlusI, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (Phase::MinusOne, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (Phase::PlusOne, rest)
        } else {
            (Phase::PlusOne, s)
        };
        let n = body.chars().count();
        if n > MAX_QUBITS {
            return Err(CpcError::TooLarge(format!("{n} qubits")));
        }
        let mut x = 0;
        let mut z = 0;
        for (q, ch) in body.chars().enumerate() {
            let (xb, zb) = match ch {
                'I' | '_' => (false, false),
                'X' => (true, false),
                'Y' => (true, true),
                'Z' => (false, true),
                other => {
                    return Err(CpcError::Parse {
                        line: 1,
                        column: q + 1,
                        message: format!("unknown Pauli {other:?}"),
                    })
                }
            };
            x |= u64::from(xb) << q;
            z |= u64::from(zb) << q;
        }
        Ok(Self::from_masks(n, x, z, phase))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn single_qubit_products() {
        assert_eq!(p("X") * p("Z"), p("-iY"));
        assert_eq!(p("Z") * p("X"), p("iY"));
        assert_eq!(p("Y") * p("Y"), p("I"));
        assert_eq!(p("X") * p("Y"), p("iZ"));
        assert_eq!(p("XZ") * p("ZX"), p("YY"));
    }

    #[test]
    fn commutation() {
        assert!(!p("XI").commutes_with(&p("ZI")));
        assert!(p("XX").commutes_with(&p("ZZ")));
        assert!(p("YI").commutes_with(&p("YZ")));
        assert!(!p("YI").commutes_with(&p("ZZ")));
    }

    #[test]
    fn phase_display_round_trip() {
        for s in ["+XYZ", "-iYIY", "+iZ", "-XX"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("Y").phase(), Phase::PlusOne);
    }

    #[test]
    fn conjugation_rules() {
        let mut a = p("XI");
        a.conj_cnot(0, 1);
        assert_eq!(a, p("XX"));
        let mut a = p("IZ");
        a.conj_cnot(0, 1);
        assert_eq!(a, p("ZZ"));
        let mut a = p("YI");
        a.conj_cz(0, 1);
        assert_eq!(a, p("YZ"));
        let mut a = p("XX");
        a.conj_cz(0, 1);
        assert_eq!(a, p("YY"));
        let mut a = p("ZI");
        a.conj_cczx(0, 1);
        assert_eq!(a, p("ZX"));
        let mut a = p("ZZ");
        a.conj_cczx(0, 1);
        assert_eq!(a, p("YY"));
        let mut a = p("Y");
        a.conj_h(0);
        assert_eq!(a, p("-Y"));
        let mut a = p("X");
        a.conj_pauli(0, Pauli::Z);
        assert_eq!(a, p("-X"));
    }

    #[test]
    fn restrict_and_embed() {
        let a = p("XIZY");
        assert_eq!(a.restrict(&[0, 3]), p("XY"));
        assert_eq!(p("XY").embed(4, &[0, 3]), p("XIIY"));
        assert_eq!(a.truncate(2), p("XI"));
    }
}
