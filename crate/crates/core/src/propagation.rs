//! Error propagation through the encode/decode window and the effective
//! classical codes it induces.

use std::collections::BTreeSet;

use crate::code::{Check, ClassicalCode, CpcCode, GeneralCpcCode};
use crate::gf2::Gf2Matrix;

/// Bit-check × phase-check matrix of net X propagation: entry `(b, p)` is set
/// when an X error on phase qubit `p` flips bit check `b` after decoding.
pub fn cross_propagation(code: &CpcCode) -> Gf2Matrix {
    let via_data = code
        .mb
        .transpose()
        .mul(&code.mp)
        .expect("validated code dimensions");
    code.mc.add(&via_data).expect("validated code dimensions")
}

/// Effective classical codes for bit-flip and phase errors.
pub fn effective_codes(code: &CpcCode) -> (ClassicalCode, ClassicalCode) {
    let k = code.k;
    let cross = cross_propagation(code);

    let mut bit_labels: Vec<String> = (1..=k).map(|j| format!("d{j}")).collect();
    bit_labels.extend((1..=code.n_p).map(|p| format!("p{p}")));
    let bit_checks = (0..code.n_b)
        .map(|i| {
            let mut bits: BTreeSet<usize> = code.mb.ones_in_col(i).collect();
            bits.extend(cross.ones_in_row(i).map(|p| k + p));
            Check {
                label: format!("b{}", i + 1),
                bits,
            }
        })
        .collect();
    let bit_harmless = (0..code.n_p)
        .filter(|&p| code.mp.col_mask(p) == 0)
        .map(|p| k + p)
        .collect();

    let mut phase_labels: Vec<String> = (1..=k).map(|j| format!("d{j}")).collect();
    phase_labels.extend((1..=code.n_b).map(|b| format!("b{b}")));
    let phase_checks = (0..code.n_p)
        .map(|i| {
            let mut bits: BTreeSet<usize> = code.mp.ones_in_col(i).collect();
            bits.extend(code.mc.ones_in_col(i).map(|b| k + b));
            Check {
                label: format!("p{}", i + 1),
                bits,
            }
        })
        .collect();
    let phase_harmless = (0..code.n_b)
        .filter(|&b| code.mb.col_mask(b) == 0)
        .map(|b| k + b)
        .collect();

    (
        ClassicalCode {
            bit_labels,
            checks: bit_checks,
            harmless: bit_harmless,
        },
        ClassicalCode {
            bit_labels: phase_labels,
            checks: phase_checks,
            harmless: phase_harmless,
        },
    )
}

/// Propagation graph of a generalized code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralPropagation {
    /// `arrows[a][b]` set when a phase error on check `a` flips the measured
    /// outcome of check `b` (`a != b`).
    pub arrows: Gf2Matrix,
    /// `self_loops[c]` set when a phase error on check `c` flips its own
    /// outcome.
    pub self_loops: Vec<bool>,
}

/// Detection matrix `D[i][j]`: check `i` fires on a phase error on check `j`.
/// The diagonal holds the self loops.
fn detection(code: &GeneralCpcCode) -> Gf2Matrix {
    let via_data = code
        .mbs
        .transpose()
        .mul(&code.mps)
        .expect("validated code dimensions");
    code.cross_symmetric()
        .add(&via_data)
        .expect("validated code dimensions")
}

pub fn general_propagation(code: &GeneralCpcCode) -> GeneralPropagation {
    let d = detection(code);
    let n = code.n_c;
    let mut arrows = Gf2Matrix::zeros(n, n);
    let self_loops = (0..n).map(|i| d.get(i, i)).collect();
    for i in 0..n {
        for j in 0..n {
            if i != j && d.get(i, j) {
                arrows.set(j, i, true);
            }
        }
    }
    GeneralPropagation { arrows, self_loops }
}

/// Single classical code of a generalized CPC code.
///
/// Bits: for every data qubit a bit-flip bit `Xd` and a phase bit `Zd`, then
/// for every check qubit its phase bit `Zc`. Check `c_i` covers the data bits
/// it is wired to and the check bits whose phase errors propagate to it,
/// including itself through a self loop. A check bit is harmless when the
/// check shares no gate with a data qubit.
pub fn general_to_classical(code: &GeneralCpcCode) -> ClassicalCode {
    let k = code.k;
    let n = code.n_c;
    let prop = general_propagation(code);
    let mut bit_labels = Vec::with_capacity(2 * k + n);
    for j in 1..=k {
        bit_labels.push(format!("Xd{j}"));
        bit_labels.push(format!("Zd{j}"));
    }
    bit_labels.extend((1..=n).map(|c| format!("Zc{c}")));

    let checks = (0..n)
        .map(|i| {
            let mut bits = BTreeSet::new();
            bits.extend(code.mbs.ones_in_col(i).map(|j| 2 * j));
            bits.extend(code.mps.ones_in_col(i).map(|j| 2 * j + 1));
            bits.extend((0..n).filter(|&a| prop.arrows.get(a, i)).map(|a| 2 * k + a));
            if prop.self_loops[i] {
                bits.insert(2 * k + i);
            }
            Check {
                label: format!("c{}", i + 1),
                bits,
            }
        })
        .collect();
    let harmless = (0..n)
        .filter(|&c| code.mbs.col_mask(c) == 0 && code.mps.col_mask(c) == 0)
        .map(|c| 2 * k + c)
        .collect();
    ClassicalCode {
        bit_labels,
        checks,
        harmless,
    }
}
