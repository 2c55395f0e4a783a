//! Simple bases of F₂ⁿ for the A, D and E families.
//!
//! The overline vectors are generated exactly as they are defined: `1̄ = s̃₁`
//! and `(i+1)‾ = 𝐬ᵢ · ī`, with `(n+1)‾ = s̃ₙ` for D and E. The basis is
//! `{1̄, …, n̄}` for A and E and `{1̄, …, (n−1)‾, (n+1)‾}` for D.

use crate::error::{Error, Result};
use crate::flipping::GeneratorSet;
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::graph::{CoxeterGraph, Family};

#[derive(Clone, Debug)]
pub struct SimpleBasis {
    family: Family,
    graph: CoxeterGraph,
    gens: GeneratorSet,
    /// `overline[j - 1]` is `j̄` for `j = 1..=n+1`.
    overline: Vec<Gf2Vector>,
    /// Overline index held by each basis column.
    column_labels: Vec<usize>,
    matrix: Gf2Matrix,
    inverse: Gf2Matrix,
}

impl SimpleBasis {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let graph = CoxeterGraph::build_family(family, n)?;
        let gens = GeneratorSet::new(&graph);
        let mut overline = vec![Gf2Vector::unit(n, 0)?];
        let chain_len = match family {
            Family::A => n,
            Family::D | Family::E => n - 1,
        };
        for i in 1..=chain_len {
            let prev = *overline.last().expect("nonempty");
            overline.push(gens.matrices()[i - 1].mat_vec(prev)?);
        }
        if family != Family::A {
            overline.push(Gf2Vector::unit(n, n - 1)?);
        }
        debug_assert_eq!(overline.len(), n + 1);

        let column_labels: Vec<usize> = match family {
            Family::A | Family::E => (1..=n).collect(),
            Family::D => (1..n).chain(std::iter::once(n + 1)).collect(),
        };
        let cols: Vec<Gf2Vector> = column_labels.iter().map(|&j| overline[j - 1]).collect();
        let matrix = Gf2Matrix::from_columns(&cols)?;
        let inverse = matrix.inverse()?;
        Ok(Self {
            family,
            graph,
            gens,
            overline,
            column_labels,
            matrix,
            inverse,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    /// Columns are the basis vectors.
    pub fn matrix(&self) -> &Gf2Matrix {
        &self.matrix
    }

    pub fn inverse(&self) -> &Gf2Matrix {
        &self.inverse
    }

    /// `j̄` for `1 ≤ j ≤ n + 1`.
    pub fn overline(&self, j: usize) -> Result<Gf2Vector> {
        if j == 0 || j > self.overline.len() {
            return Err(Error::Range(format!(
                "overline index {j} not in 1..={}",
                self.overline.len()
            )));
        }
        Ok(self.overline[j - 1])
    }

    /// Overline indices of the basis columns, in column order.
    pub fn column_labels(&self) -> &[usize] {
        &self.column_labels
    }

    /// The distinguished vector outside the basis: `(n+1)‾` for A and E, `n̄` for D.
    pub fn extra(&self) -> Gf2Vector {
        match self.family {
            Family::A | Family::E => self.overline[self.n()],
            Family::D => self.overline[self.n() - 1],
        }
    }

    fn check(&self, a: Gf2Vector) -> Result<()> {
        if a.dim() != self.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                actual: a.dim(),
            });
        }
        Ok(())
    }

    /// Coordinates of `a` in the simple basis (bit `k` is column `k`).
    pub fn coordinates(&self, a: Gf2Vector) -> Result<Gf2Vector> {
        self.check(a)?;
        self.inverse.mat_vec(a)
    }

    /// `Δ(a)` as overline indices.
    pub fn support(&self, a: Gf2Vector) -> Result<Vec<usize>> {
        Ok(self
            .coordinates(a)?
            .support()
            .map(|k| self.column_labels[k])
            .collect())
    }

    /// `wt(a) = |Δ(a)|`.
    pub fn weight(&self, a: Gf2Vector) -> Result<u32> {
        Ok(self.coordinates(a)?.popcount())
    }

    #[inline]
    pub(crate) fn weight_bits(&self, bits: u64) -> u32 {
        self.inverse.apply_bits(bits).count_ones()
    }

    /// D only: whether `a` lies in `Z = span{1̄, …, (n−1)‾}`, i.e. its
    /// `(n+1)‾`-coordinate vanishes.
    pub fn in_subspace_z(&self, a: Gf2Vector) -> Result<bool> {
        if self.family != Family::D {
            return Err(Error::UnsupportedFamily("D".into()));
        }
        Ok(!self.coordinates(a)?.get(self.n() - 1))
    }

    #[inline]
    pub(crate) fn in_subspace_z_bits(&self, bits: u64) -> bool {
        (self.inverse.apply_bits(bits) >> (self.n() - 1)) & 1 == 0
    }

    /// Number of overline vectors a matrix of the group permutes:
    /// `n + 1` for A, `n` for D and E.
    pub fn permuted_count(&self) -> usize {
        match self.family {
            Family::A => self.n() + 1,
            Family::D | Family::E => self.n(),
        }
    }

    /// The index `j ≤ permuted_count()` with `j̄ = v`, if any.
    pub fn overline_index(&self, v: Gf2Vector) -> Option<usize> {
        self.overline[..self.permuted_count()]
            .iter()
            .position(|&o| o == v)
            .map(|p| p + 1)
    }
}

pub fn weight(basis: &SimpleBasis, a: Gf2Vector) -> Result<u32> {
    basis.weight(a)
}

pub fn in_subspace_z(basis: &SimpleBasis, a: Gf2Vector) -> Result<bool> {
    basis.in_subspace_z(a)
}
