//! Stabilizer generators, the symplectic (CSS) presentation, conversion from
//! CSS codes, logical operators and exhaustive distance search.

use itertools::Itertools;

use crate::circuit::{conjugate_pauli, encode_circuit};
use crate::code::{AnyCode, CpcCode, GeneralCpcCode};
use crate::error::{CpcError, Result};
use crate::gf2::Gf2Matrix;
use crate::pauli::{Pauli, PauliString, Phase, MAX_QUBITS};
use crate::propagation::cross_propagation;

fn ensure_small(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        return Err(CpcError::TooLarge(format!(
            "{n} qubits exceeds the {MAX_QUBITS}-qubit limit"
        )));
    }
    Ok(())
}

fn mask_of(bits: impl IntoIterator<Item = usize>) -> u64 {
    bits.into_iter().fold(0, |m, q| m ^ 1 << q)
}

/// Generators of a split code: one Z-type generator per bit check followed by
/// one X-type generator per phase check.
pub fn stabilizers_split(code: &CpcCode) -> Result<Vec<PauliString>> {
    code.ensure_valid()?;
    ensure_small(code.num_qubits())?;
    let n = code.num_qubits();
    let cross = cross_propagation(code);
    let mut out = Vec::with_capacity(code.num_checks());
    for i in 0..code.n_b {
        let z = mask_of(
            code.mb
                .ones_in_col(i)
                .map(|j| code.data(j))
                .chain([code.bit(i)])
                .chain(cross.ones_in_row(i).map(|p| code.phase(p))),
        );
        out.push(PauliString::from_masks(n, 0, z, Phase::PlusOne));
    }
    for i in 0..code.n_p {
        let x = mask_of(
            code.mp
                .ones_in_col(i)
                .map(|j| code.data(j))
                .chain(code.mc.ones_in_col(i).map(|b| code.bit(b)))
                .chain([code.phase(i)]),
        );
        out.push(PauliString::from_masks(n, x, 0, Phase::PlusOne));
    }
    Ok(out)
}

/// Generators of a generalized code, one per check. Each is returned as a
/// tensor product of I/X/Y/Z factors with a `+` sign.
pub fn stabilizers_general(code: &GeneralCpcCode) -> Result<Vec<PauliString>> {
    code.ensure_valid()?;
    ensure_small(code.num_qubits())?;
    let n = code.num_qubits();
    let cross = code.cross_symmetric();
    let via_data = code
        .mbs
        .transpose()
        .mul(&code.mps)
        .expect("validated code dimensions");
    let mut out = Vec::with_capacity(code.n_c);
    for i in 0..code.n_c {
        let z = mask_of(code.mbs.ones_in_col(i).chain([code.check(i)]));
        let x = mask_of(
            code.mps.ones_in_col(i).chain(
                (0..code.n_c)
                    .filter(|&j| cross.get(i, j) ^ via_data.get(i, j))
                    .map(|j| code.check(j)),
            ),
        );
        out.push(PauliString::from_masks(n, x, z, Phase::PlusOne));
    }
    Ok(out)
}

pub fn stabilizers(code: &AnyCode) -> Result<Vec<PauliString>> {
    match code {
        AnyCode::Split(c) => stabilizers_split(c),
        AnyCode::General(g) => stabilizers_general(g),
    }
}

/// Stabilizers as seen by the circuit: the initial check states conjugated
/// through the encoder. Bit checks (and generalized checks) start in |0⟩,
/// phase checks in |+⟩.
pub fn encoded_initial_stabilizers(code: &AnyCode) -> Result<Vec<PauliString>> {
    let enc = encode_circuit(code)?;
    let n = code.num_qubits();
    let initial: Vec<PauliString> = match code {
        AnyCode::Split(c) => (0..c.n_b)
            .map(|i| PauliString::single(n, c.bit(i), Pauli::Z))
            .chain((0..c.n_p).map(|i| PauliString::single(n, c.phase(i), Pauli::X)))
            .collect(),
        AnyCode::General(g) => (0..g.n_c)
            .map(|i| PauliString::single(n, g.check(i), Pauli::Z))
            .collect(),
    };
    initial.iter().map(|p| conjugate_pauli(&enc, p)).collect()
}

/// CSS presentation of a split code. `g_z` has one row per bit check,
/// `g_x` one row per phase check; columns follow the global qubit order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symplectic {
    pub g_z: Gf2Matrix,
    pub g_x: Gf2Matrix,
}

impl Symplectic {
    /// Full generator matrix `(G_Z | G_X)` with the Z-type rows first.
    pub fn full(&self) -> Gf2Matrix {
        let n = self.g_z.cols();
        let top = self.g_z.hstack(&Gf2Matrix::zeros(self.g_z.rows(), n));
        let bottom = Gf2Matrix::zeros(self.g_x.rows(), n).hstack(&self.g_x);
        top.and_then(|t| t.vstack(&bottom?))
            .expect("blocks share dimensions")
    }

    /// Symplectic form `G_Z G_X^T + G_X G_Z^T` of the full matrix; zero iff
    /// all generators commute.
    pub fn commutation(&self) -> Gf2Matrix {
        let f = self.full();
        let n = self.g_z.cols();
        let z = f.select_cols(&(0..n).collect::<Vec<_>>());
        let x = f.select_cols(&(n..2 * n).collect::<Vec<_>>());
        let a = z.mul(&x.transpose()).expect("square form");
        let b = x.mul(&z.transpose()).expect("square form");
        a.add(&b).expect("square form")
    }
}

/// Block layout: Z rows are `(mb^T | I | K)` and X rows `(mp^T | mc^T | I)`
/// over the columns (data | bit checks | phase checks), where `K` is the
/// cross-propagation matrix.
pub fn symplectic_matrix(code: &CpcCode) -> Result<Symplectic> {
    code.ensure_valid()?;
    let cross = cross_propagation(code);
    let g_z = code
        .mb
        .transpose()
        .hstack(&Gf2Matrix::identity(code.n_b))?
        .hstack(&cross)?;
    let g_x = code
        .mp
        .transpose()
        .hstack(&code.mc.transpose())?
        .hstack(&Gf2Matrix::identity(code.n_p))?;
    Ok(Symplectic { g_z, g_x })
}

pub fn cpc_to_css(code: &CpcCode) -> Result<(Gf2Matrix, Gf2Matrix)> {
    let s = symplectic_matrix(code)?;
    Ok((s.g_z, s.g_x))
}

/// Result of converting a CSS code. Qubit `q` of `code` is column
/// `permutation[q]` of the input matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssConversion {
    pub code: CpcCode,
    pub permutation: Vec<usize>,
}

impl CssConversion {
    /// Maps a matrix over the code's qubit order back to the input order.
    pub fn unpermute(&self, m: &Gf2Matrix) -> Gf2Matrix {
        let mut inv = vec![0; self.permutation.len()];
        for (q, &col) in self.permutation.iter().enumerate() {
            inv[col] = q;
        }
        m.select_cols(&inv)
    }
}

/// Converts a CSS code given by Z-type and X-type generator rows into a split
/// CPC code. Z pivots become bit checks, X pivots phase checks and the
/// remaining columns data qubits; both pivot sets are the lexicographically
/// first ones found by Gauss–Jordan elimination.
pub fn css_to_cpc(g_z: &Gf2Matrix, g_x: &Gf2Matrix) -> Result<CssConversion> {
    if g_z.cols() != g_x.cols() {
        return Err(CpcError::Dimension(format!(
            "G_Z has {} columns, G_X has {}",
            g_z.cols(),
            g_x.cols()
        )));
    }
    let n = g_z.cols();
    ensure_small(n)?;
    let overlap = g_z.mul(&g_x.transpose())?;
    for r in 0..overlap.rows() {
        if let Some(c) = overlap.ones_in_row(r).next() {
            return Err(CpcError::NonCommuting { z_row: r, x_row: c });
        }
    }

    let rz = g_z.rref();
    let z_rows = rz.reduced.select_rows(&(0..rz.rank).collect::<Vec<_>>());
    let z_piv = rz.pivots.clone();

    let free: Vec<usize> = (0..n).filter(|c| !z_piv.contains(c)).collect();
    let gx_free = g_x.select_cols(&free);
    let rx = gx_free.rref();
    if rx.rank != g_x.rank() {
        return Err(CpcError::PivotConflict);
    }
    let x_piv: Vec<usize> = rx.pivots.iter().map(|&i| free[i]).collect();
    // Identity on the X pivots: apply the same row operations to the full rows.
    let x_rows = rx
        .transform
        .mul(g_x)?
        .select_rows(&(0..rx.rank).collect::<Vec<_>>());

    let data: Vec<usize> = (0..n)
        .filter(|c| !z_piv.contains(c) && !x_piv.contains(c))
        .collect();
    let k = data.len();
    let mut permutation = data.clone();
    permutation.extend(&z_piv);
    permutation.extend(&x_piv);

    let mb = z_rows.select_cols(&data).transpose();
    let mp = x_rows.select_cols(&data).transpose();
    let mc = x_rows.select_cols(&z_piv).transpose();
    let code = CpcCode::new(mb, mp, mc)?;
    debug_assert_eq!(code.k, k);

    let conv = CssConversion { code, permutation };
    let s = symplectic_matrix(&conv.code)?;
    if !conv.unpermute(&s.g_z).row_space_equal(g_z)?
        || !conv.unpermute(&s.g_x).row_space_equal(g_x)?
    {
        return Err(CpcError::PivotConflict);
    }
    Ok(conv)
}

/// Logical X and Z operators: `X_{d_i}` and `Z_{d_i}` pushed through the
/// encoder.
pub fn logical_operators(code: &AnyCode) -> Result<(Vec<PauliString>, Vec<PauliString>)> {
    let enc = encode_circuit(code)?;
    let n = code.num_qubits();
    let k = code.data_qubits();
    let push = |p: Pauli| -> Result<Vec<PauliString>> {
        (0..k)
            .map(|j| conjugate_pauli(&enc, &PauliString::single(n, j, p)))
            .collect()
    };
    Ok((push(Pauli::X)?, push(Pauli::Z)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact(usize),
    /// No logical operator of weight up to the bound exists.
    GreaterThan(usize),
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::GreaterThan(w) => write!(f, ">{w}"),
        }
    }
}

pub const DEFAULT_MAX_WEIGHT: usize = 4;

/// Reduced basis of a stabilizer group over packed `(x | z << 64)` vectors.
struct GroupBasis {
    rows: Vec<(u32, u128)>,
}

fn pack(p: &PauliString) -> u128 {
    u128::from(p.x_mask()) | u128::from(p.z_mask()) << 64
}

impl GroupBasis {
    fn new(gens: &[PauliString]) -> Self {
        let mut rows: Vec<(u32, u128)> = Vec::new();
        for g in gens {
            let mut v = pack(g);
            for &(lead, r) in &rows {
                if v >> lead & 1 == 1 {
                    v ^= r;
                }
            }
            if v != 0 {
                let lead = 127 - v.leading_zeros();
                for row in rows.iter_mut() {
                    if row.1 >> lead & 1 == 1 {
                        row.1 ^= v;
                    }
                }
                rows.push((lead, v));
            }
        }
        Self { rows }
    }

    fn contains(&self, p: &PauliString) -> bool {
        let mut v = pack(p);
        for &(lead, r) in &self.rows {
            if v >> lead & 1 == 1 {
                v ^= r;
            }
        }
        v == 0
    }
}

/// Smallest weight of a Pauli string that commutes with every generator but
/// is not in the group they generate, searched exhaustively up to `w_max`.
pub fn distance_of_group(n: usize, gens: &[PauliString], w_max: usize) -> Result<Distance> {
    ensure_small(n)?;
    if gens.iter().any(|g| g.num_qubits() != n) {
        return Err(CpcError::Dimension(
            "generator length differs from n".into(),
        ));
    }
    let basis = GroupBasis::new(gens);
    let singles = [Pauli::X, Pauli::Y, Pauli::Z];
    for w in 1..=w_max.min(n) {
        for support in (0..n).combinations(w) {
            for letters in (0..w).map(|_| singles.iter()).multi_cartesian_product() {
                let (mut x, mut z) = (0u64, 0u64);
                for (&q, &&p) in support.iter().zip(&letters) {
                    let (px, pz) = p.bits();
                    x |= u64::from(px) << q;
                    z |= u64::from(pz) << q;
                }
                let cand = PauliString::from_masks(n, x, z, Phase::PlusOne);
                if gens.iter().all(|g| g.commutes_with(&cand)) && !basis.contains(&cand) {
                    return Ok(Distance::Exact(w));
                }
            }
        }
    }
    Ok(Distance::GreaterThan(w_max))
}

pub fn code_distance(code: &AnyCode, w_max: usize) -> Result<Distance> {
    distance_of_group(code.num_qubits(), &stabilizers(code)?, w_max)
}

/// Generators of a CSS code as Pauli strings.
pub fn css_generators(g_z: &Gf2Matrix, g_x: &Gf2Matrix) -> Vec<PauliString> {
    let n = g_z.cols();
    (0..g_z.rows())
        .map(|r| PauliString::from_masks(n, 0, g_z.row_mask(r), Phase::PlusOne))
        .chain(
            (0..g_x.rows()).map(|r| PauliString::from_masks(n, g_x.row_mask(r), 0, Phase::PlusOne)),
        )
        .collect()
}

/// One generator per line in `Z d1 d2 b1 p2 p4` notation.
pub fn format_stabilizers(code: &AnyCode, gens: &[PauliString]) -> String {
    gens.iter()
        .map(|g| format!("{}\n", g.to_labelled(|q| code.label(q))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn labelled(code: &CpcCode, gens: &[PauliString]) -> Vec<String> {
        let any = AnyCode::Split(code.clone());
        gens.iter()
            .map(|g| g.to_labelled(|q| any.label(q)))
            .collect()
    }

    #[test]
    fn working_code_table() {
        let code = fixtures::code_11_3_3();
        let s = stabilizers_split(&code).unwrap();
        assert_eq!(
            labelled(&code, &s),
            vec![
                "Z d1 d2 b1 p2 p4",
                "Z d2 d3 b2 p3 p4",
                "Z d1 d3 b3 p1 p4",
                "Z b4 p1 p2 p3 p4",
                "X d1 d2 b2 b4 p1",
                "X d2 d3 b3 b4 p2",
                "X d1 d3 b1 b4 p3",
                "X b1 b2 b3 b4 p4",
            ]
        );
    }

    #[test]
    fn bit_flip_code_generators() {
        let code = fixtures::code_6_3_1();
        let s = stabilizers_split(&code).unwrap();
        assert_eq!(
            labelled(&code, &s),
            vec!["Z d1 d2 b1", "Z d2 d3 b2", "Z d1 d3 b3"]
        );
    }

    fn all_commute(gens: &[PauliString]) -> bool {
        gens.iter()
            .tuple_combinations()
            .all(|(a, b)| a.commutes_with(b))
    }

    #[test]
    fn generators_commute_on_fixtures() {
        for (name, c) in fixtures::split_fixtures() {
            assert!(all_commute(&stabilizers_split(&c).unwrap()), "{name}");
        }
        for (name, g) in fixtures::general_fixtures() {
            let s = stabilizers_general(&g).unwrap();
            assert_eq!(s.len(), g.n_c);
            assert!(all_commute(&s), "{name}");
        }
    }

    #[test]
    fn formula_matches_circuit_on_fixtures() {
        for (name, c) in fixtures::split_fixtures() {
            let any = AnyCode::Split(c.clone());
            assert_eq!(
                encoded_initial_stabilizers(&any).unwrap(),
                stabilizers_split(&c).unwrap(),
                "{name}"
            );
        }
        for (name, g) in fixtures::general_fixtures() {
            let any = AnyCode::General(g.clone());
            let circ = encoded_initial_stabilizers(&any).unwrap();
            let formula = stabilizers_general(&g).unwrap();
            for (a, b) in circ.iter().zip(&formula) {
                assert!(a.eq_up_to_phase(b), "{name}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn general_single_pair() {
        let mut g = GeneralCpcCode::empty(1, 1);
        g.mbs.set(0, 0, true);
        let s = stabilizers_general(&g).unwrap();
        assert_eq!(s, vec!["ZZ".parse().unwrap()]);
    }

    // Hadamards on the phase checks turn the generalized generators of a
    // split code into the split generators.
    #[test]
    fn general_reduces_to_split() {
        let code = fixtures::code_11_3_3();
        let split = stabilizers_split(&code).unwrap();
        let general = stabilizers_general(&code.generalize()).unwrap();
        let mut h = crate::circuit::Circuit::new(code.num_qubits());
        for p in 0..code.n_p {
            h.push(crate::circuit::Gate::H(code.phase(p))).unwrap();
        }
        for (a, b) in general.iter().zip(&split) {
            assert!(conjugate_pauli(&h, a).unwrap().eq_up_to_phase(b));
        }
    }

    #[test]
    fn symplectic_blocks() {
        let code = fixtures::code_11_3_3();
        let s = symplectic_matrix(&code).unwrap();
        let cross = cross_propagation(&code);
        for b in 0..4 {
            for c in 0..4 {
                assert_eq!(s.g_z.get(b, 3 + c), b == c);
                assert_eq!(s.g_x.get(b, 7 + c), b == c);
                assert_eq!(s.g_z.get(b, 7 + c), cross.get(b, c));
            }
        }
        assert!(s.commutation().is_zero());
        let empty = symplectic_matrix(&CpcCode::empty(0, 2, 1)).unwrap();
        assert_eq!(
            empty.g_z,
            Gf2Matrix::identity(2)
                .hstack(&Gf2Matrix::zeros(2, 1))
                .unwrap()
        );
    }

    #[test]
    fn steane_conversion() {
        let h = fixtures::hamming_7_4_check();
        let conv = css_to_cpc(&h, &h).unwrap();
        assert_eq!((conv.code.k, conv.code.n_b, conv.code.n_p), (1, 3, 3));
        let (gz, gx) = cpc_to_css(&conv.code).unwrap();
        assert!(conv.unpermute(&gz).row_space_equal(&h).unwrap());
        assert!(conv.unpermute(&gx).row_space_equal(&h).unwrap());
        let d = code_distance(&AnyCode::Split(conv.code), 4).unwrap();
        assert_eq!(d, Distance::Exact(3));
    }

    #[test]
    fn css_round_trip() {
        let code = fixtures::code_12_4_3();
        let (gz, gx) = cpc_to_css(&code).unwrap();
        let conv = css_to_cpc(&gz, &gx).unwrap();
        let (gz2, gx2) = cpc_to_css(&conv.code).unwrap();
        assert!(conv.unpermute(&gz2).row_space_equal(&gz).unwrap());
        assert!(conv.unpermute(&gx2).row_space_equal(&gx).unwrap());
    }

    #[test]
    fn css_trivial_and_errors() {
        let conv = css_to_cpc(&Gf2Matrix::zeros(0, 1), &Gf2Matrix::zeros(0, 1)).unwrap();
        assert_eq!((conv.code.k, conv.code.n_b, conv.code.n_p), (1, 0, 0));
        let z = Gf2Matrix::from_rows(&[[1, 0]]);
        let x = Gf2Matrix::from_rows(&[[1, 1]]);
        assert!(matches!(
            css_to_cpc(&z, &x),
            Err(CpcError::NonCommuting { z_row: 0, x_row: 0 })
        ));
        let (gz, gx) = cpc_to_css(&CpcCode::empty(0, 0, 0)).unwrap();
        assert_eq!((gz.rows(), gx.rows()), (0, 0));
    }

    #[test]
    fn working_code_logicals() {
        let code = AnyCode::Split(fixtures::code_11_3_3());
        let (lx, lz) = logical_operators(&code).unwrap();
        let text: Vec<String> = lx
            .iter()
            .map(|p| p.to_labelled(|q| code.label(q)))
            .collect();
        assert_eq!(text, vec!["X d1 b1 b3", "X d2 b1 b2", "X d3 b2 b3"]);
        assert!(lx.iter().all(|p| p.weight() == 3));
        for b in 0..4 {
            let uses = lx.iter().filter(|p| p.x_mask() >> (3 + b) & 1 == 1).count();
            assert_eq!(uses, if b < 3 { 2 } else { 0 });
        }
        let gens = stabilizers(&code).unwrap();
        for l in lx.iter().chain(&lz) {
            assert!(gens.iter().all(|g| g.commutes_with(l)));
        }
        for (i, x) in lx.iter().enumerate() {
            for (j, z) in lz.iter().enumerate() {
                assert_eq!(x.commutes_with(z), i != j);
            }
        }
    }

    #[test]
    fn fixture_distances() {
        let d = |c: AnyCode| code_distance(&c, DEFAULT_MAX_WEIGHT).unwrap();
        assert_eq!(d(fixtures::code_11_3_3().into()), Distance::Exact(3));
        assert_eq!(d(fixtures::code_6_3_1().into()), Distance::Exact(1));
        assert_eq!(d(fixtures::code_12_4_3().into()), Distance::Exact(3));
        assert_eq!(d(fixtures::code_10_3_3().into()), Distance::Exact(3));
    }

    #[test]
    fn distance_bound_reported() {
        let code: AnyCode = fixtures::code_11_3_3().into();
        assert_eq!(code_distance(&code, 2).unwrap(), Distance::GreaterThan(2));
    }
}
