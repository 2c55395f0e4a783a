//! Deterministic Schreier-Sims for matrix groups acting on F₂ⁿ.
//!
//! Base points are vectors; a new level takes the first standard basis
//! vector its generator moves. Because a matrix is fixed by its action on
//! the standard basis, a residue fixing every base point and every unit
//! vector is the identity.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;

#[derive(Clone, Debug)]
struct Level {
    base: u64,
    /// Indices into `StabilizerChain::pool`.
    gens: Vec<usize>,
    orbit: Vec<u64>,
    position: HashMap<u64, usize>,
    /// `reps[i] · base = orbit[i]`.
    reps: Vec<Gf2Matrix>,
    inv_reps: Vec<Gf2Matrix>,
    /// How many of `gens` have been applied to each orbit point.
    processed: Vec<usize>,
}

impl Level {
    fn new(n: usize, base: u64) -> Self {
        let id = Gf2Matrix::identity_unchecked(n);
        Self {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            position: HashMap::from([(base, 0)]),
            reps: vec![id.clone()],
            inv_reps: vec![id],
            processed: vec![0],
        }
    }
}

/// Base and strong generating set with orbit transversals.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    n: usize,
    levels: Vec<Level>,
    /// Strong generators with their inverses.
    pool: Vec<(Gf2Matrix, Gf2Matrix)>,
}

impl StabilizerChain {
    /// Builds the chain and then re-sifts every Schreier generator as an
    /// independent check. Generators must be invertible `n × n` matrices.
    pub fn new(gens: &[Gf2Matrix], n: usize) -> Result<Self> {
        let mut chain = Self {
            n,
            levels: Vec::new(),
            pool: Vec::new(),
        };
        let mut sorted = gens.to_vec();
        sorted.sort();
        for g in sorted {
            if g.dim() != n {
                return Err(Error::Dimension {
                    expected: n,
                    actual: g.dim(),
                });
            }
            chain.insert(0, g)?;
        }
        chain.verify(gens)?;
        Ok(chain)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> impl Iterator<Item = &Gf2Matrix> {
        self.pool.iter().map(|(g, _)| g)
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Strips `g` through levels `from..`; returns the residue and the level
    /// at which the residue left the transversals (`levels.len()` if it
    /// passed them all).
    fn sift(&self, mut g: Gf2Matrix, from: usize) -> (Gf2Matrix, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let image = g.apply_bits(level.base);
            match level.position.get(&image) {
                Some(&pos) => g = level.inv_reps[pos].mul_unchecked(&g),
                None => return (g, j),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, m: &Gf2Matrix) -> bool {
        if m.dim() != self.n {
            return false;
        }
        let (residue, level) = self.sift(m.clone(), 0);
        level == self.levels.len() && residue.is_identity()
    }

    /// Adds `g`, which fixes the base points of levels `< start`.
    fn insert(&mut self, start: usize, g: Gf2Matrix) -> Result<()> {
        let (h, j) = self.sift(g, start);
        if j == self.levels.len() {
            if h.is_identity() {
                return Ok(());
            }
            let moved = (0..self.n)
                .map(|i| 1u64 << i)
                .find(|&e| h.apply_bits(e) != e)
                .expect("a non-identity matrix moves some unit vector");
            self.levels.push(Level::new(self.n, moved));
        }
        let inv = h.inverse()?;
        let id = self.pool.len();
        self.pool.push((h, inv));
        for l in start..=j {
            self.levels[l].gens.push(id);
        }
        for l in (start..=j).rev() {
            self.close_level(l)?;
        }
        Ok(())
    }

    /// Extends the orbit of level `l` and sifts every new Schreier generator
    /// into the levels below.
    fn close_level(&mut self, l: usize) -> Result<()> {
        let mut i = 0;
        while i < self.levels[l].orbit.len() {
            while self.levels[l].processed[i] < self.levels[l].gens.len() {
                let level = &mut self.levels[l];
                let gi = level.gens[level.processed[i]];
                level.processed[i] += 1;
                let (s, s_inv) = &self.pool[gi];
                let beta = level.orbit[i];
                let gamma = s.apply_bits(beta);
                match level.position.get(&gamma) {
                    None => {
                        let rep = s.mul_unchecked(&level.reps[i]);
                        let inv_rep = level.inv_reps[i].mul_unchecked(s_inv);
                        level.position.insert(gamma, level.orbit.len());
                        level.orbit.push(gamma);
                        level.reps.push(rep);
                        level.inv_reps.push(inv_rep);
                        level.processed.push(0);
                    }
                    Some(&pos) => {
                        let schreier = level.inv_reps[pos]
                            .mul_unchecked(s)
                            .mul_unchecked(&level.reps[i]);
                        if !schreier.is_identity() {
                            self.insert(l + 1, schreier)?;
                        }
                    }
                }
            }
            i += 1;
        }
        Ok(())
    }

    /// Every input generator and every Schreier generator of every level
    /// must sift to the identity.
    fn verify(&self, gens: &[Gf2Matrix]) -> Result<()> {
        for g in gens {
            if !self.contains(g) {
                return Err(Error::Inconsistent("input generator does not sift".into()));
            }
        }
        for (l, level) in self.levels.iter().enumerate() {
            for &gi in &level.gens {
                let (s, _) = &self.pool[gi];
                for (i, &beta) in level.orbit.iter().enumerate() {
                    let pos = *level.position.get(&s.apply_bits(beta)).ok_or_else(|| {
                        Error::Inconsistent(format!("orbit of level {l} not closed"))
                    })?;
                    let schreier = level.inv_reps[pos]
                        .mul_unchecked(s)
                        .mul_unchecked(&level.reps[i]);
                    let (residue, depth) = self.sift(schreier, l + 1);
                    if depth != self.levels.len() || !residue.is_identity() {
                        return Err(Error::Inconsistent(format!(
                            "Schreier generator at level {l} does not sift"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
