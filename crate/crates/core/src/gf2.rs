//! Dense linear algebra over the two-element field.
//!
//! Rows are packed 64 entries to a machine word, so adding two rows is a run
//! of XORs. A matrix of shape `rows × cols` represents a linear map
//! `F₂^cols → F₂^rows` acting on column vectors; the coboundary and connecting
//! maps elsewhere in the crate all follow that convention.
//!
//! Elimination is always leftmost-pivot, top-down, so identical inputs give
//! bit-identical outputs.

use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("composition of consecutive maps is not zero")]
    CompositionNotZero,
}

/// A packed vector over F₂.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut row = BitRow::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                row.set(i, true);
            }
        }
        row
    }

    /// Vector of length `len` with ones exactly at `positions`.
    pub fn from_positions(len: usize, positions: &[usize]) -> Self {
        let mut row = BitRow::zeros(len);
        for &p in positions {
            row.flip(p);
        }
        row
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    #[inline]
    pub fn and_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the AND of two vectors, i.e. their dot product over F₂.
    pub fn dot(&self, other: &BitRow) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones();
        }
        acc & 1 == 1
    }

    /// Index of the first set entry at or after `start`.
    pub fn first_one_from(&self, start: usize) -> Option<usize> {
        if start >= self.len {
            return None;
        }
        let mut w = start / WORD;
        let mut word = self.words[w] & (!0u64 << (start % WORD));
        loop {
            if word != 0 {
                let i = w * WORD + word.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
            w += 1;
            if w == self.words.len() {
                return None;
            }
            word = self.words[w];
        }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.first_one_from(0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let t = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(w * WORD + t)
                }
            })
        })
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// Keeps the entries at `positions`, in that order.
    pub fn select(&self, positions: &[usize]) -> BitRow {
        let mut out = BitRow::zeros(positions.len());
        for (j, &p) in positions.iter().enumerate() {
            if self.get(p) {
                out.set(j, true);
            }
        }
        out
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &BitRow) -> BitRow {
        let mut out = BitRow::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Dense matrix over F₂, stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitRow>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows,
            cols,
            data: vec![BitRow::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from packed rows; every row must have length `cols`.
    pub fn from_bit_rows(cols: usize, rows: Vec<BitRow>) -> Result<Self, Gf2Error> {
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Gf2Error::ShapeMismatch(format!(
                "row {bad} has length {}, expected {cols}",
                rows[bad].len()
            )));
        }
        Ok(Gf2Matrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Builds a matrix from 0/1 entries. Any nonzero value counts as 1.
    pub fn from_rows<R: AsRef<[u8]>>(cols: usize, rows: &[R]) -> Result<Self, Gf2Error> {
        let packed = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let r = r.as_ref();
                if r.len() != cols {
                    return Err(Gf2Error::ShapeMismatch(format!(
                        "row {i} has length {}, expected {cols}",
                        r.len()
                    )));
                }
                Ok(BitRow::from_bits(r.iter().map(|&x| x != 0)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Gf2Matrix::from_bit_rows(cols, packed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    pub fn row(&self, r: usize) -> &BitRow {
        &self.data[r]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &BitRow> {
        self.data.iter()
    }

    pub fn into_bit_rows(self) -> Vec<BitRow> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitRow::is_zero)
    }

    pub fn to_u8_rows(&self) -> Vec<Vec<u8>> {
        self.data
            .iter()
            .map(|r| r.to_bits().into_iter().map(u8::from).collect())
            .collect()
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Applies the map to a column vector.
    pub fn apply(&self, v: &BitRow) -> Result<BitRow, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::ShapeMismatch(format!(
                "vector of length {} against {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok(BitRow::from_bits(self.data.iter().map(|r| r.dot(v))))
    }

    /// Product `self · rhs` over F₂.
    pub fn multiply(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.cols != rhs.rows {
            return Err(Gf2Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = BitRow::zeros(rhs.cols);
                for k in row.ones() {
                    acc.xor_assign(&rhs.data[k]);
                }
                acc
            })
            .collect();
        Ok(Gf2Matrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn row_reduce(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.reduce_in_place(true);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.reduce_in_place(false).len()
    }

    /// Rows form a basis of `{v : self·v = 0}`.
    pub fn kernel_basis(&self) -> Gf2Matrix {
        let (reduced, pivots) = self.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let basis = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitRow::zeros(self.cols);
                v.set(free, true);
                for (i, &p) in pivots.iter().enumerate() {
                    if reduced.get(i, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        Gf2Matrix {
            rows: self.cols - pivots.len(),
            cols: self.cols,
            data: basis,
        }
    }

    /// Leftmost-pivot, top-down Gaussian elimination. With `full`, clears
    /// above pivots as well (reduced form); otherwise stops at echelon form.
    fn reduce_in_place(&mut self, full: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(found) = (next..self.rows).find(|&r| self.data[r].get(c)) else {
                continue;
            };
            self.data.swap(next, found);
            let pivot_row = self.data[next].clone();
            let start = if full { 0 } else { next + 1 };
            for r in start..self.rows {
                if r != next && self.data[r].get(c) {
                    self.data[r].xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.cols != other.cols {
            return Err(Gf2Error::ShapeMismatch(format!(
                "cannot stack {} columns on {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Gf2Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Submatrix on the given rows and columns, in the given orders.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Gf2Matrix {
        Gf2Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data: rows.iter().map(|&r| self.data[r].select(cols)).collect(),
        }
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

pub fn rank(m: &Gf2Matrix) -> usize {
    m.rank()
}

pub fn row_reduce(m: &Gf2Matrix) -> (Gf2Matrix, Vec<usize>) {
    m.row_reduce()
}

pub fn kernel_basis(m: &Gf2Matrix) -> Gf2Matrix {
    m.kernel_basis()
}

pub fn multiply(a: &Gf2Matrix, b: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
    a.multiply(b)
}

/// Dimension of `ker outgoing / im incoming` at the node where the two maps meet.
pub fn quotient_dim(incoming: &Gf2Matrix, outgoing: &Gf2Matrix) -> Result<usize, Gf2Error> {
    if incoming.rows() != outgoing.cols() {
        return Err(Gf2Error::ShapeMismatch(format!(
            "incoming map lands in dimension {}, outgoing map starts from dimension {}",
            incoming.rows(),
            outgoing.cols()
        )));
    }
    if !outgoing.multiply(incoming)?.is_zero() {
        return Err(Gf2Error::CompositionNotZero);
    }
    Ok(outgoing.cols() - outgoing.rank() - incoming.rank())
}

/// Incrementally grown echelon basis that remembers, for every stored row,
/// which tagged generators were combined to produce it.
///
/// Used to express a vector in terms of a chosen family of generators modulo
/// a subspace: untagged rows span the subspace, tagged rows are the family.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    width: usize,
    tag_len: usize,
    rows: Vec<BitRow>,
    tags: Vec<BitRow>,
    pivot_of: Vec<Option<usize>>,
}

impl EchelonBasis {
    pub fn new(width: usize, tag_len: usize) -> Self {
        EchelonBasis {
            width,
            tag_len,
            rows: Vec::new(),
            tags: Vec::new(),
            pivot_of: vec![None; width],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn tag_len(&self) -> usize {
        self.tag_len
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows. Returns the residue and the
    /// combination of tags that was subtracted.
    pub fn reduce(&self, v: &BitRow) -> (BitRow, BitRow) {
        let mut v = v.clone();
        let mut tag = BitRow::zeros(self.tag_len);
        let mut pos = 0;
        while let Some(i) = v.first_one_from(pos) {
            if let Some(r) = self.pivot_of[i] {
                v.xor_assign(&self.rows[r]);
                tag.xor_assign(&self.tags[r]);
            }
            pos = i + 1;
        }
        (v, tag)
    }

    /// Inserts `v` carrying `tag`; returns false when `v` was already in the span.
    pub fn insert(&mut self, v: &BitRow, tag: BitRow) -> bool {
        let (residue, sub) = self.reduce(v);
        let Some(pivot) = residue.first_one() else {
            return false;
        };
        let mut tag = tag;
        tag.xor_assign(&sub);
        self.pivot_of[pivot] = Some(self.rows.len());
        self.rows.push(residue);
        self.tags.push(tag);
        true
    }

    pub fn contains(&self, v: &BitRow) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Coordinates of `v` in the tagged family, or `None` when `v` is outside the span.
    pub fn solve(&self, v: &BitRow) -> Option<BitRow> {
        let (residue, tag) = self.reduce(v);
        residue.is_zero().then_some(tag)
    }

    /// Direct sum of bases over disjoint supports with disjoint tag ranges.
    /// Each part's tags are shifted to follow the previous parts.
    pub fn direct_sum(width: usize, parts: &[&EchelonBasis]) -> EchelonBasis {
        let tag_len = parts.iter().map(|p| p.tag_len).sum();
        let mut out = EchelonBasis::new(width, tag_len);
        let mut shift = 0;
        for part in parts {
            assert_eq!(part.width, width, "direct sum of bases of different widths");
            for (row, tag) in part.rows.iter().zip(&part.tags) {
                let pivot = row.first_one().expect("stored rows are nonzero");
                assert!(
                    out.pivot_of[pivot].is_none(),
                    "direct sum parts overlap at column {pivot}"
                );
                let mut shifted = BitRow::zeros(tag_len);
                for t in tag.ones() {
                    shifted.set(shift + t, true);
                }
                out.pivot_of[pivot] = Some(out.rows.len());
                out.rows.push(row.clone());
                out.tags.push(shifted);
            }
            shift += part.tag_len;
        }
        out
    }
}
