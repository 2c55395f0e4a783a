//! Breadth-first closure of a matrix group, storing each element as its
//! packed `n²`-bit image (column `j` occupies bits `j·n .. (j+1)·n`).
//!
//! The image fits a `u64` up to `n = 8` and a `u128` up to `n = 11`, which
//! keeps the E₇ and E₈-parabolic enumerations at 8 or 16 bytes per element.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gf2::{Gf2Matrix, MAX_DIM};

/// Default element cap for explicit enumeration.
pub const DEFAULT_ELEMENT_CAP: u64 = 1 << 25;

pub(crate) trait PackedKey: Clone + Eq + Hash + Ord + Send + Sync {
    fn pack(cols: &[u64], n: usize) -> Self;
    fn unpack(&self, n: usize, out: &mut [u64]);
}

impl PackedKey for u64 {
    #[inline]
    fn pack(cols: &[u64], n: usize) -> Self {
        cols.iter()
            .enumerate()
            .fold(0u64, |acc, (j, &c)| acc | c << (j * n))
    }

    #[inline]
    fn unpack(&self, n: usize, out: &mut [u64]) {
        let mask = (1u64 << n) - 1;
        for (j, o) in out.iter_mut().take(n).enumerate() {
            *o = (self >> (j * n)) & mask;
        }
    }
}

impl PackedKey for u128 {
    #[inline]
    fn pack(cols: &[u64], n: usize) -> Self {
        cols.iter()
            .enumerate()
            .fold(0u128, |acc, (j, &c)| acc | (c as u128) << (j * n))
    }

    #[inline]
    fn unpack(&self, n: usize, out: &mut [u64]) {
        let mask = (1u128 << n) - 1;
        for (j, o) in out.iter_mut().take(n).enumerate() {
            *o = ((self >> (j * n)) & mask) as u64;
        }
    }
}

/// Arbitrary-width image, ordered as a big-endian integer.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct WideKey(Box<[u64]>);

impl Ord for WideKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for WideKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PackedKey for WideKey {
    fn pack(cols: &[u64], n: usize) -> Self {
        let mut words = vec![0u64; (n * n).div_ceil(64)];
        for (j, &c) in cols.iter().enumerate() {
            for i in 0..n {
                if (c >> i) & 1 == 1 {
                    let bit = j * n + i;
                    words[bit / 64] |= 1 << (bit % 64);
                }
            }
        }
        WideKey(words.into_boxed_slice())
    }

    fn unpack(&self, n: usize, out: &mut [u64]) {
        for (j, o) in out.iter_mut().take(n).enumerate() {
            *o = (0..n).fold(0u64, |acc, i| {
                let bit = j * n + i;
                acc | ((self.0[bit / 64] >> (bit % 64)) & 1) << i
            });
        }
    }
}

#[derive(Clone, Debug)]
enum Store {
    Small(Vec<u64>),
    Medium(Vec<u128>),
    Wide(Vec<WideKey>),
}

/// Every element of a matrix group, sorted by packed bit image.
#[derive(Clone, Debug)]
pub struct ExplicitSet {
    n: usize,
    store: Store,
}

fn closure<K: PackedKey>(gens: &[Gf2Matrix], n: usize, cap: u64, exec: Exec) -> Result<Vec<K>> {
    let id: Vec<u64> = (0..n).map(|j| 1u64 << j).collect();
    let id = K::pack(&id, n);
    let mut seen: HashSet<K> = HashSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let candidates = exec.flat_map_collect(&frontier, |key| {
            let mut cols = [0u64; MAX_DIM];
            let mut prod = [0u64; MAX_DIM];
            key.unpack(n, &mut cols);
            gens.iter()
                .map(|g| {
                    for j in 0..n {
                        prod[j] = g.apply_bits(cols[j]);
                    }
                    K::pack(&prod[..n], n)
                })
                .collect::<Vec<K>>()
        });
        let mut next = Vec::new();
        for c in candidates {
            if !seen.contains(&c) {
                if seen.len() as u64 >= cap {
                    return Err(Error::Capacity {
                        what: "group enumeration",
                        needed: seen.len() as u64 + 1,
                        cap,
                    });
                }
                seen.insert(c.clone());
                next.push(c);
            }
        }
        frontier = next;
    }
    let mut all: Vec<K> = seen.into_iter().collect();
    all.sort_unstable();
    Ok(all)
}

impl ExplicitSet {
    /// Closure of the identity under left multiplication by `gens`
    /// (the generators must be invertible and `n × n`).
    pub fn enumerate(gens: &[Gf2Matrix], n: usize, cap: u64, exec: Exec) -> Result<Self> {
        let mut sorted = gens.to_vec();
        sorted.sort();
        let store = if n <= 8 {
            Store::Small(closure(&sorted, n, cap, exec)?)
        } else if n <= 11 {
            Store::Medium(closure(&sorted, n, cap, exec)?)
        } else {
            Store::Wide(closure(&sorted, n, cap, exec)?)
        };
        Ok(Self { n, store })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        match &self.store {
            Store::Small(v) => v.len(),
            Store::Medium(v) => v.len(),
            Store::Wide(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn decode<K: PackedKey>(&self, key: &K) -> Gf2Matrix {
        let mut cols = vec![0u64; self.n];
        key.unpack(self.n, &mut cols);
        Gf2Matrix::from_column_bits_unchecked(cols)
    }

    /// Element `i` in bit-image order.
    pub fn get(&self, i: usize) -> Gf2Matrix {
        match &self.store {
            Store::Small(v) => self.decode(&v[i]),
            Store::Medium(v) => self.decode(&v[i]),
            Store::Wide(v) => self.decode(&v[i]),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Gf2Matrix> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// Position of `m` in bit-image order, if it is an element.
    pub fn position(&self, m: &Gf2Matrix) -> Option<usize> {
        if m.dim() != self.n {
            return None;
        }
        let cols = m.column_bits();
        match &self.store {
            Store::Small(v) => v.binary_search(&u64::pack(cols, self.n)).ok(),
            Store::Medium(v) => v.binary_search(&u128::pack(cols, self.n)).ok(),
            Store::Wide(v) => v.binary_search(&WideKey::pack(cols, self.n)).ok(),
        }
    }

    pub fn contains(&self, m: &Gf2Matrix) -> bool {
        self.position(m).is_some()
    }

    /// Elements satisfying `pred`, in bit-image order.
    pub fn filter<F>(&self, exec: Exec, pred: F) -> Vec<Gf2Matrix>
    where
        F: Fn(&Gf2Matrix) -> bool + Sync + Send,
    {
        let idx: Vec<usize> = (0..self.len()).collect();
        exec.flat_map_collect(&idx, |&i| {
            let m = self.get(i);
            pred(&m).then_some(m)
        })
    }
}
