//! Reference codes used throughout the tests, the acceptance suite and the
//! shipped `.cpc` files.

use crate::code::{CpcCode, GeneralCpcCode};
use crate::gf2::Gf2Matrix;

fn m<const C: usize>(rows: &[[u8; C]]) -> Gf2Matrix {
    if rows.is_empty() {
        return Gf2Matrix::zeros(0, C);
    }
    Gf2Matrix::from_rows(rows)
}

fn split(mb: Gf2Matrix, mp: Gf2Matrix, mc: Gf2Matrix) -> CpcCode {
    CpcCode::new(mb, mp, mc).expect("fixture dimensions")
}

/// Three-bit parity matrix shared by the small codes (rows: data, cols: checks).
pub fn parity_3() -> Gf2Matrix {
    m(&[[1, 0, 1], [1, 1, 0], [0, 1, 1]])
}

/// Bit-flip-only code on three data qubits with three checks.
pub fn code_6_3_1() -> CpcCode {
    split(parity_3(), Gf2Matrix::zeros(3, 0), Gf2Matrix::zeros(3, 0))
}

/// The almost-working code whose phase effective code is degenerate.
pub fn code_11_3_1() -> CpcCode {
    let b = m(&[[1, 0, 1, 0], [1, 1, 0, 0], [0, 1, 1, 0]]);
    let c = m(&[[0, 0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 1], [1, 1, 1, 1]]);
    split(b.clone(), b, c)
}

pub fn code_11_3_3() -> CpcCode {
    let b = m(&[[1, 0, 1, 0], [1, 1, 0, 0], [0, 1, 1, 0]]);
    let c = m(&[[0, 0, 1, 1], [1, 0, 0, 1], [0, 1, 0, 1], [1, 1, 1, 1]]);
    split(b.clone(), b, c)
}

/// Hamming-based code with four data qubits.
pub fn code_12_4_3() -> CpcCode {
    let b = m(&[[1, 0, 1, 0], [1, 1, 0, 0], [1, 1, 1, 0], [0, 1, 1, 0]]);
    let c = m(&[[0, 0, 1, 1], [1, 0, 0, 1], [0, 1, 0, 1], [1, 1, 1, 1]]);
    split(b.clone(), b, c)
}

/// `code_11_3_3` augmented with one extra bit and phase check so that an
/// encoded CNOT from data 1 to data 2 stays correctable.
pub fn code_13_3_3() -> CpcCode {
    let b = m(&[[1, 0, 1, 0, 1], [1, 1, 0, 0, 0], [0, 1, 1, 0, 0]]);
    let p = m(&[[1, 0, 1, 0, 0], [1, 1, 0, 0, 1], [0, 1, 1, 0, 0]]);
    let c = m(&[
        [0, 0, 1, 1, 0],
        [1, 0, 0, 1, 0],
        [0, 1, 0, 1, 0],
        [1, 1, 1, 1, 1],
        [0, 0, 0, 1, 1],
    ]);
    split(b, p, c)
}

/// `code_11_3_3` written in the generalized formalism.
pub fn code_11_3_3_general() -> GeneralCpcCode {
    let b = m(&[
        [1, 0, 1, 0, 0, 0, 0, 0],
        [1, 1, 0, 0, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0, 0, 0],
    ]);
    let p = m(&[
        [0, 0, 0, 0, 1, 0, 1, 0],
        [0, 0, 0, 0, 1, 1, 0, 0],
        [0, 0, 0, 0, 0, 1, 1, 0],
    ]);
    let c = m(&[
        [0, 0, 0, 0, 0, 0, 1, 1],
        [0, 0, 0, 0, 1, 0, 0, 1],
        [0, 0, 0, 0, 0, 1, 0, 1],
        [0, 0, 0, 0, 1, 1, 1, 1],
        [0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0],
    ]);
    GeneralCpcCode::new(b, p, c).expect("fixture dimensions")
}

/// Generalized code where a single check collects the phase information of
/// all other checks.
pub fn code_10_3_3() -> GeneralCpcCode {
    let b = m(&[
        [1, 0, 1, 0, 0, 0, 0],
        [1, 1, 0, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0, 0],
    ]);
    let p = m(&[
        [0, 0, 0, 1, 0, 1, 0],
        [0, 0, 0, 1, 1, 0, 0],
        [0, 0, 0, 0, 1, 1, 0],
    ]);
    let c = m(&[
        [0, 0, 0, 0, 0, 1, 1],
        [0, 0, 0, 1, 0, 0, 1],
        [0, 0, 0, 0, 1, 0, 1],
        [0, 0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 0, 0, 0],
    ]);
    GeneralCpcCode::new(b, p, c).expect("fixture dimensions")
}

/// Search-found three-data-qubit code compatible with an encoded CNOT d1→d2.
pub fn cnot_found_3() -> CpcCode {
    let b = m(&[[0, 0, 1, 1], [1, 0, 0, 1], [1, 1, 0, 0]]);
    let c = m(&[[1, 0, 1, 1], [0, 1, 1, 1], [1, 1, 1, 0], [1, 1, 0, 1]]);
    split(b.clone(), b, c)
}

/// Search-found four-data-qubit code compatible with an encoded CNOT d1→d2.
pub fn cnot_found_4() -> CpcCode {
    let b = m(&[[0, 0, 1, 1], [0, 1, 0, 1], [1, 0, 0, 1], [1, 1, 0, 1]]);
    let c = m(&[[1, 0, 1, 0], [1, 0, 1, 1], [1, 1, 1, 0], [0, 1, 1, 1]]);
    split(b.clone(), b, c)
}

/// Parity-check matrix of the classical [7,4,3] Hamming code (column j is
/// the binary expansion of j+1).
pub fn hamming_7_4_check() -> Gf2Matrix {
    m(&[
        [0, 0, 0, 1, 1, 1, 1],
        [0, 1, 1, 0, 0, 1, 1],
        [1, 0, 1, 0, 1, 0, 1],
    ])
}

/// Named split fixtures, in the order they are shipped.
pub fn split_fixtures() -> Vec<(&'static str, CpcCode)> {
    vec![
        ("6-3-1", code_6_3_1()),
        ("11-3-1", code_11_3_1()),
        ("11-3-3", code_11_3_3()),
        ("12-4-3", code_12_4_3()),
        ("13-3-3", code_13_3_3()),
    ]
}

pub fn general_fixtures() -> Vec<(&'static str, GeneralCpcCode)> {
    vec![
        ("10-3-3", code_10_3_3()),
        ("11-3-3-general", code_11_3_3_general()),
    ]
}
