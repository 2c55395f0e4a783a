//! Orbits of F₂ⁿ under the flipping group.
//!
//! States are packed integers; BFS uses a visited bitmap (single orbit) or a
//! class-index array (full partition). Classes are numbered in order of their
//! minimal member, so two partitions of the same space are equal exactly
//! when their class-index arrays are equal.

pub mod basis;
pub mod classify;

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gf2::{Gf2Matrix, Gf2Vector, XorBasis};
use crate::graph::Family;

pub use basis::{in_subspace_z, weight, SimpleBasis};
pub use classify::{classify, classify_with, label_aliases, o1_size, orbit_labels, OrbitLabel};

/// Environment variable overriding [`DEFAULT_STATE_CAP`].
pub const STATE_CAP_ENV: &str = "COXFLIP_STATE_CAP";
/// Largest state space (2ⁿ) a whole-space scan will visit.
pub const DEFAULT_STATE_CAP: u64 = 1 << 24;

/// The configured state cap.
pub fn state_cap() -> u64 {
    std::env::var(STATE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_STATE_CAP)
}

pub(crate) fn check_state_space(n: usize, cap: u64) -> Result<()> {
    if n >= 64 || (1u64 << n) > cap {
        return Err(Error::Capacity {
            what: "state space",
            needed: if n >= 64 { u64::MAX } else { 1u64 << n },
            cap,
        });
    }
    Ok(())
}

fn check_gens(gens: &[Gf2Matrix], n: usize) -> Result<()> {
    match gens.iter().find(|g| g.dim() != n) {
        Some(g) => Err(Error::Dimension {
            expected: n,
            actual: g.dim(),
        }),
        None => Ok(()),
    }
}

struct Bitmap(Vec<u64>);

impl Bitmap {
    fn new(bits: u64) -> Self {
        Bitmap(vec![0; bits.div_ceil(64) as usize])
    }

    /// Sets the bit; returns whether it was previously clear.
    #[inline]
    fn insert(&mut self, i: u64) -> bool {
        let (w, b) = ((i / 64) as usize, i % 64);
        let fresh = (self.0[w] >> b) & 1 == 0;
        self.0[w] |= 1 << b;
        fresh
    }
}

/// Level-synchronous BFS from `start`; `visit` returns true for new states.
fn bfs(gens: &[Gf2Matrix], start: u64, exec: Exec, mut visit: impl FnMut(u64) -> bool) -> Vec<u64> {
    let mut members = vec![start];
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let images = exec.flat_map_collect(&frontier, |&x| {
            gens.iter().map(move |g| g.apply_bits(x))
        });
        frontier.clear();
        for y in images {
            if visit(y) {
                frontier.push(y);
                members.push(y);
            }
        }
    }
    members
}

/// The orbit of `a`, sorted.
pub fn orbit_of(gens: &[Gf2Matrix], a: Gf2Vector) -> Result<Vec<Gf2Vector>> {
    orbit_of_with(gens, a, Exec::default())
}

pub fn orbit_of_with(gens: &[Gf2Matrix], a: Gf2Vector, exec: Exec) -> Result<Vec<Gf2Vector>> {
    let n = a.dim();
    check_gens(gens, n)?;
    let mut members = if check_state_space(n, state_cap()).is_ok() {
        let mut seen = Bitmap::new(1u64 << n);
        seen.insert(a.bits());
        bfs(gens, a.bits(), exec, |y| seen.insert(y))
    } else {
        let mut seen = HashSet::from([a.bits()]);
        bfs(gens, a.bits(), exec, |y| seen.insert(y))
    };
    members.sort_unstable();
    Ok(members
        .into_iter()
        .map(|b| Gf2Vector::from_bits_unchecked(n, b))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitClass {
    pub label: String,
    /// Minimal member.
    pub representative: Gf2Vector,
    pub size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    n: usize,
    classes: Vec<OrbitClass>,
    class_of: Vec<u32>,
}

const UNASSIGNED: u32 = u32::MAX;

impl OrbitPartition {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[OrbitClass] {
        &self.classes
    }

    pub fn class_index(&self, a: Gf2Vector) -> usize {
        self.class_of[a.bits() as usize] as usize
    }

    pub fn members(&self, index: usize) -> impl Iterator<Item = Gf2Vector> + '_ {
        let n = self.n;
        self.class_of
            .iter()
            .enumerate()
            .filter(move |&(_, &c)| c as usize == index)
            .map(move |(b, _)| Gf2Vector::from_bits_unchecked(n, b as u64))
    }

    /// Same partition of F₂ⁿ, labels ignored.
    pub fn same_partition(&self, other: &OrbitPartition) -> bool {
        self.n == other.n && self.class_of == other.class_of
    }

    pub fn total_size(&self) -> u64 {
        self.classes.iter().map(|c| c.size).sum()
    }

    /// Whether every class is mapped into itself by every matrix in `gens`.
    pub fn is_invariant_under(&self, gens: &[Gf2Matrix]) -> bool {
        self.class_of.iter().enumerate().all(|(x, &c)| {
            gens.iter()
                .all(|g| self.class_of[g.apply_bits(x as u64) as usize] == c)
        })
    }

    /// Relabels every class with the closed-form label of its representative.
    pub fn with_family_labels(mut self, basis: &SimpleBasis) -> Result<Self> {
        for class in &mut self.classes {
            class.label = classify_with(basis, class.representative)?.to_string();
        }
        Ok(self)
    }

    /// Builds a partition from a class key per state; classes are ordered
    /// by minimal member regardless of key order.
    fn from_keys<K: Eq + std::hash::Hash + Clone>(
        n: usize,
        keys: &[K],
        label: impl Fn(&K, usize) -> String,
    ) -> Self {
        let mut index = std::collections::HashMap::new();
        let mut classes: Vec<OrbitClass> = Vec::new();
        let class_of = keys
            .iter()
            .enumerate()
            .map(|(bits, key)| {
                let next = classes.len() as u32;
                let c = *index.entry(key.clone()).or_insert(next);
                if c == next {
                    classes.push(OrbitClass {
                        label: label(key, next as usize),
                        representative: Gf2Vector::from_bits_unchecked(n, bits as u64),
                        size: 0,
                    });
                }
                classes[c as usize].size += 1;
                c
            })
            .collect();
        Self {
            n,
            classes,
            class_of,
        }
    }
}

/// Partition of F₂ⁿ into orbits by BFS. Classes are labelled `C0, C1, …`.
pub fn orbit_partition(gens: &[Gf2Matrix], n: usize) -> Result<OrbitPartition> {
    orbit_partition_with(gens, n, state_cap(), Exec::default())
}

pub fn orbit_partition_with(
    gens: &[Gf2Matrix],
    n: usize,
    cap: u64,
    exec: Exec,
) -> Result<OrbitPartition> {
    check_state_space(n, cap)?;
    check_gens(gens, n)?;
    let total = 1u64 << n;
    let mut class_of = vec![UNASSIGNED; total as usize];
    let mut classes = Vec::new();
    for start in 0..total {
        if class_of[start as usize] != UNASSIGNED {
            continue;
        }
        let c = classes.len() as u32;
        class_of[start as usize] = c;
        let members = bfs(gens, start, exec, |y| {
            let slot = &mut class_of[y as usize];
            if *slot == UNASSIGNED {
                *slot = c;
                true
            } else {
                false
            }
        });
        classes.push(OrbitClass {
            label: format!("C{c}"),
            representative: Gf2Vector::from_bits_unchecked(n, start),
            size: members.len() as u64,
        });
    }
    Ok(OrbitPartition {
        n,
        classes,
        class_of,
    })
}

/// The fibres of the closed-form classifier, as a partition.
pub fn closed_form_partition(family: Family, n: usize) -> Result<OrbitPartition> {
    closed_form_partition_with(&SimpleBasis::new(family, n)?, state_cap(), Exec::default())
}

pub fn closed_form_partition_with(basis: &SimpleBasis, cap: u64, exec: Exec) -> Result<OrbitPartition> {
    let n = basis.n();
    check_state_space(n, cap)?;
    let labels = exec.map_range(1u64 << n, |bits| classify::classify_bits(basis, bits));
    Ok(OrbitPartition::from_keys(n, &labels, |l, _| l.to_string()))
}

/// Smallest subspace containing `v` that every generator maps into itself.
pub fn stable_subspace(gens: &[Gf2Matrix], v: Gf2Vector) -> Vec<Gf2Vector> {
    let n = v.dim();
    let mut span = XorBasis::default();
    let mut queue = Vec::new();
    if span.insert(v.bits()) {
        queue.push(v.bits());
    }
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = g.apply_bits(x);
            if span.insert(y) {
                queue.push(y);
            }
        }
    }
    span.vectors()
        .map(|b| Gf2Vector::from_bits_unchecked(n, b))
        .collect()
}

/// A proper nonzero invariant subspace (as a basis), if one exists.
///
/// Every invariant subspace is a union of orbits and contains the stable
/// subspace of each of its members, so it suffices to try one
/// representative per orbit.
pub fn invariant_subspace(gens: &[Gf2Matrix], n: usize) -> Result<Option<Vec<Gf2Vector>>> {
    let partition = orbit_partition(gens, n)?;
    Ok(partition
        .classes()
        .iter()
        .filter(|c| !c.representative.is_zero())
        .map(|c| stable_subspace(gens, c.representative))
        .find(|basis| basis.len() < n))
}

pub fn is_irreducible(gens: &[Gf2Matrix], n: usize) -> Result<bool> {
    Ok(invariant_subspace(gens, n)?.is_none())
}

/// Whether the span of `basis` is mapped into itself by every generator.
pub fn is_invariant(gens: &[Gf2Matrix], basis: &[Gf2Vector]) -> bool {
    let mut span = XorBasis::default();
    for b in basis {
        span.insert(b.bits());
    }
    basis
        .iter()
        .all(|b| gens.iter().all(|g| span.contains(g.apply_bits(b.bits()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flipping::GeneratorSet;
    use crate::graph::CoxeterGraph;

    fn gens(f: Family, n: usize) -> Vec<Gf2Matrix> {
        GeneratorSet::new(&CoxeterGraph::build_family(f, n).unwrap())
            .matrices()
            .to_vec()
    }

    fn v(s: &str) -> Gf2Vector {
        s.parse().unwrap()
    }

    #[test]
    fn orbit_examples() {
        let a2 = gens(Family::A, 2);
        assert_eq!(orbit_of(&a2, v("00")).unwrap(), vec![v("00")]);
        // Hand BFS: 10 -> 11 (s1) -> 01 (s2).
        assert_eq!(orbit_of(&a2, v("10")).unwrap(), vec![v("10"), v("01"), v("11")]);
        let d4 = gens(Family::D, 4);
        let orbit = orbit_of(&d4, v("0001")).unwrap();
        assert_eq!(orbit.len(), 4);
        let basis = SimpleBasis::new(Family::D, 4).unwrap();
        assert!(orbit.iter().all(|&x| !basis.in_subspace_z(x).unwrap()));
        assert!(orbit_of(&d4, v("001")).is_err());
    }

    #[test]
    fn partition_examples() {
        let a3 = orbit_partition(&gens(Family::A, 3), 3).unwrap();
        let sizes: Vec<u64> = a3.classes().iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 4, 3]);
        let labelled = a3.with_family_labels(&SimpleBasis::new(Family::A, 3).unwrap()).unwrap();
        let labels: Vec<&str> = labelled.classes().iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, vec!["O0", "O1", "O2"]);

        let a1 = orbit_partition(&gens(Family::A, 1), 1).unwrap();
        assert_eq!(a1.classes().len(), 2);
        assert_eq!(a1.members(1).collect::<Vec<_>>(), vec![v("1")]);

        let e6 = orbit_partition(&gens(Family::E, 6), 6).unwrap();
        let sizes: Vec<u64> = e6.classes().iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 27, 36]);
    }

    #[test]
    fn partition_capacity() {
        assert!(matches!(
            orbit_partition_with(&gens(Family::A, 5), 5, 16, Exec::Sequential),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn closed_form_matches_bfs_small() {
        for (f, n) in [(Family::A, 4), (Family::D, 5), (Family::D, 6), (Family::E, 7)] {
            let bfs = orbit_partition(&gens(f, n), n).unwrap();
            let closed = closed_form_partition(f, n).unwrap();
            assert!(bfs.same_partition(&closed), "{f}{n}");
            assert_eq!(closed.total_size(), 1 << n);
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = gens(Family::E, 10);
        let a = orbit_partition_with(&g, 10, 1 << 20, Exec::Sequential).unwrap();
        let b = orbit_partition_with(&g, 10, 1 << 20, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&gens(Family::A, 2), 2).unwrap());
        assert!(!is_irreducible(&gens(Family::A, 3), 3).unwrap());
        assert!(!is_irreducible(&gens(Family::D, 4), 4).unwrap());
        assert!(is_irreducible(&gens(Family::E, 6), 6).unwrap());
        assert!(!is_irreducible(&gens(Family::E, 7), 7).unwrap());
        assert!(is_irreducible(&gens(Family::A, 1), 1).unwrap());
    }

    #[test]
    fn subspace_z_witnesses_d4_reducibility() {
        let basis = SimpleBasis::new(Family::D, 4).unwrap();
        let z: Vec<Gf2Vector> = (1..4).map(|j| basis.overline(j).unwrap()).collect();
        assert!(is_invariant(&gens(Family::D, 4), &z));
        let witness = invariant_subspace(&gens(Family::D, 4), 4).unwrap().unwrap();
        assert!(witness.len() < 4 && !witness.is_empty());
        assert!(is_invariant(&gens(Family::D, 4), &witness));
    }
}
