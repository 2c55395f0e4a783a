//! Permutations of `{1, …, d}`, written in cycle notation.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `images[j - 1] = σ(j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (1..=degree).collect(),
        }
    }

    /// From one-line notation (1-based images).
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d + 1];
        for &i in &images {
            if i == 0 || i > d || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Validation(format!("{images:?} is not a permutation of 1..={d}")));
            }
        }
        Ok(Self { images })
    }

    /// Parses products of cycles such as `(2 8 3)(4 5)`; `(a b c)` sends
    /// `a → b → c → a`. An empty string or `()` is the identity.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Self> {
        let mut images: Vec<usize> = (1..=degree).collect();
        let mut used = vec![false; degree + 1];
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::Parse(format!("bad cycle notation {s:?}")))?;
            let points = body
                .0
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad point {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            for (k, &p) in points.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(Error::Range(format!("point {p} not in 1..={degree}")));
                }
                if std::mem::replace(&mut used[p], true) {
                    return Err(Error::Parse(format!("point {p} repeated in {s:?}")));
                }
                images[p - 1] = points[(k + 1) % points.len()];
            }
            rest = body.1.trim_start();
        }
        Ok(Self { images })
    }

    pub fn random<R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (1..=degree).collect();
        images.shuffle(rng);
        Self { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(j)` for `1 ≤ j ≤ degree`.
    pub fn apply(&self, j: usize) -> usize {
        self.images[j - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i + 1 == j)
    }

    /// `self ∘ other`, i.e. `j ↦ self(other(j))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::Dimension {
                expected: self.degree(),
                actual: other.degree(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&j| self.apply(j)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree() + 1];
        let mut out = Vec::new();
        for start in 1..=self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.apply(start);
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.apply(j);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Self::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

/// Parses `"<degree>:<cycles>"`, e.g. `8:(2 8 3 7 4 6 5)`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (d, cycles) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected <degree>:<cycles>, got {s:?}")))?;
        let degree = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree {d:?}")))?;
        Self::parse_cycles(degree, cycles)
    }
}
