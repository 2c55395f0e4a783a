//! Dense linear algebra over the two-element field.
//!
//! Vectors hold at most [`MAX_DIM`] coordinates packed into a single `u64`;
//! coordinate `i` (generator `s_{i+1}`) lives at bit `i`. Matrices are stored
//! column-major, one word per column, so a matrix-vector product is an XOR of
//! the columns selected by the set bits of the vector.
//!
//! Text form of a vector is a bitstring whose leftmost character is the first
//! coordinate (`"100"` is the characteristic vector of `s_1` in dimension 3).
//! A matrix serializes as the list of its column bitstrings.

use std::fmt;
use std::ops::{BitXor, BitXorAssign, Mul};

use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported dimension: one column per machine word.
pub const MAX_DIM: usize = 64;

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::Range(format!("dimension {n} not in 1..={MAX_DIM}")));
    }
    Ok(())
}

/// A column vector in F₂ⁿ. A configuration of the puzzle is exactly one of these.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    n: u8,
    bits: u64,
}

impl Gf2Vector {
    pub fn zero(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self { n: n as u8, bits: 0 })
    }

    /// Builds a vector from its packed bits; bits at or above `n` must be clear.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        check_dim(n)?;
        if bits & !low_mask(n) != 0 {
            return Err(Error::Range(format!(
                "bit pattern {bits:#x} has bits beyond dimension {n}"
            )));
        }
        Ok(Self { n: n as u8, bits })
    }

    /// Characteristic vector of coordinate `index` (0-based).
    pub fn unit(n: usize, index: usize) -> Result<Self> {
        check_dim(n)?;
        if index >= n {
            return Err(Error::Range(format!("index {index} >= dimension {n}")));
        }
        Ok(Self {
            n: n as u8,
            bits: 1 << index,
        })
    }

    pub(crate) fn from_bits_unchecked(n: usize, bits: u64) -> Self {
        debug_assert!(n >= 1 && n <= MAX_DIM && bits & !low_mask(n) == 0);
        Self { n: n as u8, bits }
    }

    #[inline]
    pub fn dim(self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn get(self, index: usize) -> bool {
        index < self.dim() && (self.bits >> index) & 1 == 1
    }

    pub fn with_bit(self, index: usize, value: bool) -> Self {
        assert!(index < self.dim(), "index {index} out of range");
        let bits = if value {
            self.bits | (1 << index)
        } else {
            self.bits & !(1 << index)
        };
        Self { bits, ..self }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn popcount(self) -> u32 {
        self.bits.count_ones()
    }

    /// Indices of the set coordinates, ascending.
    pub fn support(self) -> impl Iterator<Item = usize> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_bitstring(self) -> String {
        (0..self.dim())
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    pub fn parse_bitstring(s: &str) -> Result<Self> {
        let s = s.trim();
        check_dim(s.len()).map_err(|_| {
            Error::Parse(format!(
                "bitstring length {} not in 1..={MAX_DIM}",
                s.len()
            ))
        })?;
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                other => return Err(Error::Parse(format!("invalid character {other:?} in bitstring"))),
            }
        }
        Ok(Self {
            n: s.len() as u8,
            bits,
        })
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self ^ other)
    }
}

impl BitXor for Gf2Vector {
    type Output = Gf2Vector;

    /// Vector addition. Panics on a dimension mismatch.
    fn bitxor(self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch in vector addition");
        Self {
            n: self.n,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl BitXorAssign for Gf2Vector {
    fn bitxor_assign(&mut self, rhs: Self) {
        *self = *self ^ rhs;
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({})", self.to_bitstring())
    }
}

impl std::str::FromStr for Gf2Vector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_bitstring(s)
    }
}

impl Serialize for Gf2Vector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_bitstring())
    }
}

impl<'de> Deserialize<'de> for Gf2Vector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Self::parse_bitstring(&s).map_err(de::Error::custom)
    }
}

/// Square matrix over F₂, column-major. `cols[j]` holds column `j` packed
/// exactly like a [`Gf2Vector`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Matrix {
    n: usize,
    cols: Vec<u64>,
}

impl Gf2Matrix {
    pub fn identity(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self::identity_unchecked(n))
    }

    pub(crate) fn identity_unchecked(n: usize) -> Self {
        Self {
            n,
            cols: (0..n).map(|j| 1u64 << j).collect(),
        }
    }

    pub fn zero(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self { n, cols: vec![0; n] })
    }

    pub fn from_columns(cols: &[Gf2Vector]) -> Result<Self> {
        let n = cols.len();
        check_dim(n)?;
        if let Some(bad) = cols.iter().find(|c| c.dim() != n) {
            return Err(Error::Dimension {
                expected: n,
                actual: bad.dim(),
            });
        }
        Ok(Self {
            n,
            cols: cols.iter().map(|c| c.bits()).collect(),
        })
    }

    /// Builds a matrix from packed columns; every column must fit in `n` bits.
    pub fn from_column_bits(cols: Vec<u64>) -> Result<Self> {
        let n = cols.len();
        check_dim(n)?;
        if cols.iter().any(|c| c & !low_mask(n) != 0) {
            return Err(Error::Range(format!("column has bits beyond dimension {n}")));
        }
        Ok(Self { n, cols })
    }

    /// Rows given as bitstrings, first row first. Mostly for fixtures.
    pub fn from_row_strings(rows: &[&str]) -> Result<Self> {
        let n = rows.len();
        check_dim(n)?;
        let mut cols = vec![0u64; n];
        for (i, row) in rows.iter().enumerate() {
            let v = Gf2Vector::parse_bitstring(row)?;
            if v.dim() != n {
                return Err(Error::Dimension {
                    expected: n,
                    actual: v.dim(),
                });
            }
            for j in v.support() {
                cols[j] |= 1 << i;
            }
        }
        Ok(Self { n, cols })
    }

    pub(crate) fn from_column_bits_unchecked(cols: Vec<u64>) -> Self {
        Self { n: cols.len(), cols }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn column_bits(&self) -> &[u64] {
        &self.cols
    }

    pub fn column(&self, j: usize) -> Gf2Vector {
        Gf2Vector::from_bits_unchecked(self.n, self.cols[j])
    }

    /// Entry in row `i`, column `j` (0-based).
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.cols[j] >> i) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.n && j < self.n, "entry ({i}, {j}) out of range");
        if value {
            self.cols[j] |= 1 << i;
        } else {
            self.cols[j] &= !(1 << i);
        }
    }

    pub fn is_identity(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, &c)| c == 1 << j)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|&c| c == 0)
    }

    /// Raw product with a packed vector. No dimension check.
    #[inline]
    pub fn apply_bits(&self, mut v: u64) -> u64 {
        let mut acc = 0u64;
        while v != 0 {
            let j = v.trailing_zeros() as usize;
            acc ^= self.cols[j];
            v &= v - 1;
        }
        acc
    }

    pub fn mat_vec(&self, v: Gf2Vector) -> Result<Gf2Vector> {
        if v.dim() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: v.dim(),
            });
        }
        Ok(Gf2Vector::from_bits_unchecked(self.n, self.apply_bits(v.bits())))
    }

    pub fn mat_mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if other.n != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: other.n,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &Gf2Matrix) -> Gf2Matrix {
        Gf2Matrix {
            n: self.n,
            cols: other.cols.iter().map(|&c| self.apply_bits(c)).collect(),
        }
    }

    /// Entrywise sum (XOR).
    pub fn add(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if other.n != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: other.n,
            });
        }
        Ok(Gf2Matrix {
            n: self.n,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a ^ b).collect(),
        })
    }

    pub fn pow(&self, mut e: u32) -> Gf2Matrix {
        let mut base = self.clone();
        let mut acc = Self::identity_unchecked(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut cols = vec![0u64; self.n];
        for (j, &c) in self.cols.iter().enumerate() {
            let mut bits = c;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                cols[i] |= 1 << j;
                bits &= bits - 1;
            }
        }
        Gf2Matrix { n: self.n, cols }
    }

    /// Gauss-Jordan by column operations: reduce `self` to the identity and
    /// replay the same operations on the identity, which yields a right
    /// inverse (and hence the inverse).
    pub fn inverse(&self) -> Result<Gf2Matrix> {
        let n = self.n;
        let mut work = self.cols.clone();
        let mut aug = Self::identity_unchecked(n).cols;
        for row in 0..n {
            let pivot = (row..n)
                .find(|&c| (work[c] >> row) & 1 == 1)
                .ok_or(Error::Singular)?;
            work.swap(row, pivot);
            aug.swap(row, pivot);
            let (pw, pa) = (work[row], aug[row]);
            for c in 0..n {
                if c != row && (work[c] >> row) & 1 == 1 {
                    work[c] ^= pw;
                    aug[c] ^= pa;
                }
            }
        }
        Ok(Gf2Matrix { n, cols: aug })
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.cols)
    }

    /// The submatrix `G[J]`: rows and columns restricted to `indices`
    /// (0-based, kept in the given order).
    pub fn submatrix(&self, indices: &[usize]) -> Result<Gf2Matrix> {
        check_dim(indices.len())?;
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.n) {
            return Err(Error::Range(format!("index {bad} >= dimension {}", self.n)));
        }
        let cols = indices
            .iter()
            .map(|&j| {
                indices
                    .iter()
                    .enumerate()
                    .filter(|&(_, &i)| self.get(i, j))
                    .fold(0u64, |acc, (k, _)| acc | 1 << k)
            })
            .collect();
        Ok(Gf2Matrix {
            n: indices.len(),
            cols,
        })
    }

    pub fn to_column_strings(&self) -> Vec<String> {
        (0..self.n).map(|j| self.column(j).to_bitstring()).collect()
    }
}

/// Rank of the span of a list of packed vectors.
pub fn rank_of(vectors: &[u64]) -> usize {
    let mut basis = XorBasis::default();
    vectors.iter().filter(|&&v| basis.insert(v)).count()
}

/// Incremental echelon basis keyed by the highest set bit.
#[derive(Clone, Debug)]
pub(crate) struct XorBasis {
    rows: [u64; 64],
}

impl Default for XorBasis {
    fn default() -> Self {
        Self { rows: [0; 64] }
    }
}

impl XorBasis {
    pub(crate) fn reduce(&self, mut v: u64) -> u64 {
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if self.rows[top] == 0 {
                break;
            }
            v ^= self.rows[top];
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub(crate) fn insert(&mut self, v: u64) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let top = 63 - r.leading_zeros() as usize;
        self.rows[top] = r;
        true
    }

    pub(crate) fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    pub(crate) fn vectors(&self) -> impl Iterator<Item = u64> + '_ {
        self.rows.iter().copied().filter(|&r| r != 0)
    }
}

impl Mul for &Gf2Matrix {
    type Output = Gf2Matrix;

    /// Panics on a dimension mismatch; use [`Gf2Matrix::mat_mul`] for a checked product.
    fn mul(self, rhs: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix product");
        self.mul_unchecked(rhs)
    }
}

impl Mul<Gf2Vector> for &Gf2Matrix {
    type Output = Gf2Vector;

    fn mul(self, rhs: Gf2Vector) -> Gf2Vector {
        assert_eq!(self.n, rhs.dim(), "dimension mismatch in matrix-vector product");
        Gf2Vector::from_bits_unchecked(self.n, self.apply_bits(rhs.bits()))
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..self.n {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Matrix{:?}", self.to_column_strings())
    }
}

impl Serialize for Gf2Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.n))?;
        for j in 0..self.n {
            seq.serialize_element(&self.column(j).to_bitstring())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Gf2Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let cols = Vec::<Gf2Vector>::deserialize(deserializer)?;
        Gf2Matrix::from_columns(&cols).map_err(de::Error::custom)
    }
}
