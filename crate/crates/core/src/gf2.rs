//! Dense linear algebra over GF(2).
//!
//! Rows are bit-packed into `u64` words. Every code handled by this crate is
//! small (a few dozen columns at most), so a dense layout is all we need.

use std::fmt;

use crate::error::{CpcError, Result};

const WORD: usize = 64;

#[inline]
fn words_for(cols: usize) -> usize {
    cols.div_ceil(WORD)
}

/// A dense binary matrix with row-major bit-packed storage.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Gf2Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
    /// Invertible row transform with `transform * input == reduced`.
    pub transform: Gf2Matrix,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from nested 0/1 rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, &v) in row.iter().enumerate() {
                assert!(v <= 1, "non-binary entry {v}");
                m.set(i, j, v == 1);
            }
        }
        m
    }

    /// Builds a matrix whose rows are the low `cols` bits of each mask.
    pub fn from_row_masks(masks: &[u64], cols: usize) -> Self {
        assert!(cols <= WORD);
        let mut m = Self::zeros(masks.len(), cols);
        for (i, &mask) in masks.iter().enumerate() {
            if cols > 0 {
                let keep = if cols == WORD {
                    u64::MAX
                } else {
                    (1u64 << cols) - 1
                };
                m.data[i * m.stride] = mask & keep;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of range"
        );
        let w = &mut self.data[r * self.stride + c / WORD];
        let bit = 1u64 << (c % WORD);
        if v {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        let v = self.get(r, c);
        self.set(r, c, !v);
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    /// Row `r` as a bit mask. Only valid for matrices with at most 64 columns.
    pub fn row_mask(&self, r: usize) -> u64 {
        assert!(self.cols <= WORD, "row_mask needs <= 64 columns");
        if self.stride == 0 {
            0
        } else {
            self.data[r * self.stride]
        }
    }

    /// Column `c` as a bit mask over rows. Only valid for at most 64 rows.
    pub fn col_mask(&self, c: usize) -> u64 {
        assert!(self.rows <= WORD, "col_mask needs <= 64 rows");
        (0..self.rows).fold(0, |acc, r| acc | (u64::from(self.get(r, c)) << r))
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row_words(r).iter().all(|&w| w == 0)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.data.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    /// `row[dst] ^= row[src]`
    pub fn add_row(&mut self, src: usize, dst: usize) {
        for k in 0..self.stride {
            let v = self.data[src * self.stride + k];
            self.data[dst * self.stride + k] ^= v;
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.ones_in_row(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Column indices of the ones in row `r`, ascending.
    pub fn ones_in_row(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(r).iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD + b)
            })
        })
    }

    pub fn ones_in_col(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rows).filter(move |&r| self.get(r, c))
    }

    /// Mod-2 product `self * rhs`.
    pub fn mul(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.cols != rhs.rows {
            return Err(CpcError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Gf2Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in self.ones_in_row(r) {
                for w in 0..out.stride {
                    out.data[r * out.stride + w] ^= rhs.data[k * rhs.stride + w];
                }
            }
        }
        Ok(out)
    }

    /// Elementwise mod-2 sum.
    pub fn add(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(CpcError::Dimension(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a ^= b;
        }
        Ok(out)
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.rows != rhs.rows {
            return Err(CpcError::Dimension(format!(
                "hstack row mismatch {} vs {}",
                self.rows, rhs.rows
            )));
        }
        let mut out = Gf2Matrix::zeros(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in self.ones_in_row(r) {
                out.set(r, c, true);
            }
            for c in rhs.ones_in_row(r) {
                out.set(r, self.cols + c, true);
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.cols != rhs.cols {
            return Err(CpcError::Dimension(format!(
                "vstack column mismatch {} vs {}",
                self.cols, rhs.cols
            )));
        }
        let mut out = self.clone();
        out.rows += rhs.rows;
        out.data.extend_from_slice(&rhs.data);
        Ok(out)
    }

    /// Sub-matrix made of the given columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> Gf2Matrix {
        let mut out = Gf2Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(r, j, true);
                }
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Gf2Matrix {
        let mut out = Gf2Matrix::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.data[i * out.stride..(i + 1) * out.stride].copy_from_slice(self.row_words(r));
        }
        out
    }

    /// Drops all-zero rows.
    pub fn nonzero_rows(&self) -> Gf2Matrix {
        let keep: Vec<usize> = (0..self.rows).filter(|&r| !self.row_is_zero(r)).collect();
        self.select_rows(&keep)
    }

    /// Gauss-Jordan elimination over GF(2).
    pub fn rref(&self) -> Rref {
        let mut reduced = self.clone();
        let mut transform = Gf2Matrix::identity(self.rows);
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| reduced.get(r, c)) else {
                continue;
            };
            reduced.swap_rows(p, next);
            transform.swap_rows(p, next);
            for r in 0..self.rows {
                if r != next && reduced.get(r, c) {
                    reduced.add_row(next, r);
                    transform.add_row(next, r);
                }
            }
            pivots.push(c);
            next += 1;
        }
        Rref {
            rank: pivots.len(),
            reduced,
            pivots,
            transform,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// True iff both matrices span the same row space.
    pub fn row_space_equal(&self, other: &Gf2Matrix) -> Result<bool> {
        if self.cols != other.cols {
            return Err(CpcError::Dimension(format!(
                "row space comparison needs equal column counts ({} vs {})",
                self.cols, other.cols
            )));
        }
        let a = self.rref().reduced.nonzero_rows();
        let b = other.rref().reduced.nonzero_rows();
        Ok(a == b)
    }

    /// Basis of the right null space `{v : self * v = 0}`, one vector per row.
    pub fn nullspace(&self) -> Gf2Matrix {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Gf2Matrix::zeros(free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            basis.set(i, f, true);
            for (r, &p) in pivots.iter().enumerate() {
                if reduced.get(r, f) {
                    basis.set(i, p, true);
                }
            }
        }
        basis
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Gf2Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let r = self.rref();
        (r.rank == self.rows).then_some(r.transform)
    }

    /// One line per row, '0'/'1' characters.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            for c in 0..self.cols {
                s.push(if self.get(r, c) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    /// Parses rows of '0'/'1' characters. `cols` fixes the width, which
    /// matters when there are no rows or rows are empty.
    pub fn parse_rows<S: AsRef<str>>(lines: &[S], cols: usize) -> Result<Gf2Matrix> {
        let mut m = Gf2Matrix::zeros(lines.len(), cols);
        for (r, line) in lines.iter().enumerate() {
            let line = line.as_ref();
            if line.chars().count() != cols {
                return Err(CpcError::Parse {
                    line: r + 1,
                    column: 1,
                    message: format!("expected {cols} entries, found {}", line.chars().count()),
                });
            }
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(r, c, true),
                    other => {
                        return Err(CpcError::Parse {
                            line: r + 1,
                            column: c + 1,
                            message: format!("non-binary character {other:?}"),
                        })
                    }
                }
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ",")?;
            }
            write!(f, " ")?;
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
        }
        write!(f, " ]")
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hamming_7_4() -> Gf2Matrix {
        Gf2Matrix::from_rows(&[
            [0u8, 0, 0, 1, 1, 1, 1],
            [0, 1, 1, 0, 0, 1, 1],
            [1, 0, 1, 0, 1, 0, 1],
        ])
    }

    // Rank by brute force: the number of distinct row combinations is 2^rank.
    fn brute_rank(m: &Gf2Matrix) -> usize {
        let mut seen = std::collections::HashSet::new();
        for sel in 0u32..(1 << m.rows()) {
            let mut acc = vec![false; m.cols()];
            for r in 0..m.rows() {
                if sel >> r & 1 == 1 {
                    for (c, a) in acc.iter_mut().enumerate() {
                        *a ^= m.get(r, c);
                    }
                }
            }
            seen.insert(acc);
        }
        seen.len().trailing_zeros() as usize
    }

    #[test]
    fn product_of_fixture_matrices() {
        let mb = Gf2Matrix::from_rows(&[[1u8, 0, 1, 0], [1, 1, 0, 0], [0, 1, 1, 0]]);
        let got = mb.transpose().mul(&mb).unwrap();
        let want =
            Gf2Matrix::from_rows(&[[0u8, 1, 1, 0], [1, 0, 1, 0], [1, 1, 0, 0], [0, 0, 0, 0]]);
        assert_eq!(got, want);
    }

    #[test]
    fn identity_and_zero_products() {
        let a = Gf2Matrix::from_rows(&[[1u8, 0, 1], [0, 1, 1], [1, 1, 1], [0, 0, 1]]);
        assert_eq!(a.mul(&Gf2Matrix::identity(3)).unwrap(), a);
        let z = Gf2Matrix::zeros(2, 4);
        assert!(z.mul(&a).unwrap().is_zero());
        assert!(matches!(a.mul(&a), Err(CpcError::Dimension(_))));
    }

    #[test]
    fn rref_examples() {
        let i = Gf2Matrix::identity(5);
        let r = i.rref();
        assert_eq!(r.reduced, i);
        assert_eq!(r.rank, 5);

        let h = hamming_7_4();
        assert_eq!(brute_rank(&h), 3);
        assert_eq!(h.rref().rank, 3);

        let z = Gf2Matrix::zeros(3, 4);
        let r = z.rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn row_space_examples() {
        let a = hamming_7_4();
        let permuted = a.select_rows(&[2, 0, 1]);
        assert!(a.row_space_equal(&permuted).unwrap());

        let mut replaced = a.clone();
        replaced.add_row(1, 0);
        assert!(a.row_space_equal(&replaced).unwrap());

        let i2 = Gf2Matrix::identity(2);
        let single = Gf2Matrix::from_rows(&[[1u8, 0]]);
        assert!(!i2.row_space_equal(&single).unwrap());
        assert!(i2.row_space_equal(&Gf2Matrix::zeros(1, 3)).is_err());
    }

    #[test]
    fn nullspace_annihilates() {
        let h = hamming_7_4();
        let ns = h.nullspace();
        assert_eq!(ns.rows(), 4);
        assert!(h.mul(&ns.transpose()).unwrap().is_zero());
    }

    #[test]
    fn text_round_trip_and_errors() {
        let h = hamming_7_4();
        let text = h.to_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(Gf2Matrix::parse_rows(&lines, 7).unwrap(), h);
        let err = Gf2Matrix::parse_rows(&["10a0"], 4).unwrap_err();
        assert!(matches!(
            err,
            CpcError::Parse {
                line: 1,
                column: 3,
                ..
            }
        ));
        let empty = Gf2Matrix::parse_rows::<&str>(&[], 4).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (0, 4));
    }

    #[test]
    fn wide_matrices_span_multiple_words() {
        let mut m = Gf2Matrix::zeros(3, 130);
        m.set(0, 0, true);
        m.set(0, 129, true);
        m.set(1, 64, true);
        m.set(2, 129, true);
        assert_eq!(m.rank(), 3);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.ones_in_row(0).collect::<Vec<_>>(), vec![0, 129]);
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Gf2Matrix> {
        proptest::collection::vec(proptest::bool::ANY, rows * cols).prop_map(move |bits| {
            let mut m = Gf2Matrix::zeros(rows, cols);
            for (i, b) in bits.into_iter().enumerate() {
                m.set(i / cols, i % cols, b);
            }
            m
        })
    }

    fn arb_triple() -> impl Strategy<Value = (Gf2Matrix, Gf2Matrix, Gf2Matrix)> {
        (1usize..7, 1usize..7, 1usize..7, 1usize..7)
            .prop_flat_map(|(a, b, c, d)| (arb_matrix(a, b), arb_matrix(b, c), arb_matrix(c, d)))
    }

    proptest! {
        #[test]
        fn multiply_is_associative((a, b, c) in arb_triple()) {
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn rref_is_idempotent_and_consistent(m in (1usize..9, 1usize..9).prop_flat_map(|(r, c)| arb_matrix(r, c))) {
            let r = m.rref();
            prop_assert_eq!(r.reduced.rref().reduced, r.reduced.clone());
            prop_assert_eq!(r.transform.mul(&m).unwrap(), r.reduced.clone());
            prop_assert_eq!(r.rank, r.pivots.len());
            prop_assert_eq!(r.rank, brute_rank(&m));
            // transform is invertible
            prop_assert_eq!(r.transform.rref().rank, m.rows());
        }
    }
}
