//! Closed-form orbit labels from the weight function.
//!
//! | family | orbit                                                        |
//! |--------|--------------------------------------------------------------|
//! | A      | `O_i`: `wt = i` or `n+1−i`, `0 ≤ i ≤ ⌊(n+1)/2⌋`               |
//! | D      | `O_i ⊆ Z`: `wt = i` or `n−i`; `Ω_o`, `Ω_e` split `F₂ⁿ − Z` by parity |
//! | E      | `O_0 = {0}`; `O_1..O_4` by `wt mod 4`                        |
//!
//! Where two names denote the same set (`Ω_o = Ω_e` for odd `n`, the E-type
//! coincidences) the smallest name is the canonical label.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::Gf2Vector;
use crate::graph::Family;
use crate::orbit::basis::SimpleBasis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrbitLabel {
    O(u32),
    OmegaOdd,
    OmegaEven,
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitLabel::O(i) => write!(f, "O{i}"),
            OrbitLabel::OmegaOdd => f.write_str("Omega_o"),
            OrbitLabel::OmegaEven => f.write_str("Omega_e"),
        }
    }
}

impl std::str::FromStr for OrbitLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Omega_o" => Ok(OrbitLabel::OmegaOdd),
            "Omega_e" => Ok(OrbitLabel::OmegaEven),
            _ => s
                .strip_prefix('O')
                .and_then(|i| i.parse().ok())
                .map(OrbitLabel::O)
                .ok_or_else(|| Error::Parse(format!("unknown orbit label {s:?}"))),
        }
    }
}

/// Residues mod 4 of the weights in `O_k` for E_n, `k = 1..=4`.
fn e_residues(n: usize, k: u32) -> [u32; 2] {
    let n = n as u32;
    // O_k holds wt ≡ k or n − c_k with c = (2, 3, 0, 1).
    let c = [2u32, 3, 0, 1][(k - 1) as usize];
    [k % 4, (n + 4 - c) % 4]
}

fn e_label(n: usize, weight: u32) -> OrbitLabel {
    let r = weight % 4;
    (1..=4)
        .find(|&k| e_residues(n, k).contains(&r))
        .map(OrbitLabel::O)
        .expect("the four E-type classes cover every residue")
}

/// Label of a nonzero-or-zero vector given its weight (and, for D,
/// whether it lies in `Z`).
pub(crate) fn label_from_weight(family: Family, n: usize, weight: u32, in_z: bool) -> OrbitLabel {
    let n32 = n as u32;
    match family {
        Family::A => OrbitLabel::O(weight.min(n32 + 1 - weight)),
        Family::D => {
            if in_z {
                OrbitLabel::O(weight.min(n32 - weight))
            } else if n % 2 == 1 || weight % 2 == 1 {
                OrbitLabel::OmegaOdd
            } else {
                OrbitLabel::OmegaEven
            }
        }
        Family::E => {
            if weight == 0 {
                OrbitLabel::O(0)
            } else {
                e_label(n, weight)
            }
        }
    }
}

pub fn classify_with(basis: &SimpleBasis, a: Gf2Vector) -> Result<OrbitLabel> {
    let weight = basis.weight(a)?;
    let in_z = basis.family() == Family::D && basis.in_subspace_z(a)?;
    Ok(label_from_weight(basis.family(), basis.n(), weight, in_z))
}

#[inline]
pub(crate) fn classify_bits(basis: &SimpleBasis, bits: u64) -> OrbitLabel {
    let weight = basis.weight_bits(bits);
    let in_z = basis.family() == Family::D && basis.in_subspace_z_bits(bits);
    label_from_weight(basis.family(), basis.n(), weight, in_z)
}

pub fn classify(family: Family, n: usize, a: Gf2Vector) -> Result<OrbitLabel> {
    classify_with(&SimpleBasis::new(family, n)?, a)
}

/// Canonical labels of all orbits, in label order.
pub fn orbit_labels(family: Family, n: usize) -> Result<Vec<OrbitLabel>> {
    if n < family.min_rank() {
        return Err(Error::Range(format!("{family}_{n}: rank too small")));
    }
    let mut labels: Vec<OrbitLabel> = match family {
        Family::A => (0..=((n + 1) / 2) as u32).map(OrbitLabel::O).collect(),
        Family::D => {
            let mut l: Vec<_> = (0..=(n / 2) as u32).map(OrbitLabel::O).collect();
            l.push(OrbitLabel::OmegaOdd);
            if n % 2 == 0 {
                l.push(OrbitLabel::OmegaEven);
            }
            l
        }
        Family::E => std::iter::once(OrbitLabel::O(0))
            .chain((0..4).map(|r| e_label(n, if r == 0 { 4 } else { r })))
            .collect(),
    };
    labels.sort();
    labels.dedup();
    Ok(labels)
}

/// Every name the closed forms give to the orbit carrying `label`.
pub fn label_aliases(family: Family, n: usize, label: OrbitLabel) -> Vec<OrbitLabel> {
    match (family, label) {
        (Family::D, OrbitLabel::OmegaOdd) if n % 2 == 1 => {
            vec![OrbitLabel::OmegaOdd, OrbitLabel::OmegaEven]
        }
        (Family::E, OrbitLabel::O(k)) if (1..=4).contains(&k) => {
            let mut own = e_residues(n, k);
            own.sort_unstable();
            (1..=4)
                .filter(|&j| {
                    let mut r = e_residues(n, j);
                    r.sort_unstable();
                    r == own
                })
                .map(OrbitLabel::O)
                .collect()
        }
        _ => vec![label],
    }
}

/// `|O_1|` for E_n:
/// - `2^{n−1} − (−1)^{n/4} 2^{(n−2)/2}` when `n ≡ 0 (mod 4)`
/// - `2^{n−1}` when `n ≡ 1`
/// - `2^{n−1} + (−1)^{(n−2)/4} 2^{(n−2)/2} − 1` when `n ≡ 2`
/// - `2^{n−2} + (−1)^{(n−3)/4} 2^{(n−3)/2}` when `n ≡ 3`
pub fn o1_size(n: usize) -> Result<u128> {
    if !(6..=64).contains(&n) {
        return Err(Error::Range(format!("o1_size needs 6 <= n <= 64, got {n}")));
    }
    let p = |e: usize| 1i128 << e;
    let sign = |e: usize| if e % 2 == 0 { 1i128 } else { -1 };
    let v = match n % 4 {
        0 => p(n - 1) - sign(n / 4) * p((n - 2) / 2),
        1 => p(n - 1),
        2 => p(n - 1) + sign((n - 2) / 4) * p((n - 2) / 2) - 1,
        _ => p(n - 2) + sign((n - 3) / 4) * p((n - 3) / 2),
    };
    Ok(v as u128)
}
