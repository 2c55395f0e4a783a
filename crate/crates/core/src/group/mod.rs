//! The flipping group `𝐖 ⊆ GL_n(F₂)` and its subgroups.
//!
//! Two backends answer order and membership queries: an explicit sorted
//! element set (practical up to a few million elements) and a stabilizer
//! chain for the action on F₂ⁿ (used for E₈ and beyond).

mod chain;
mod enumerate;

pub use chain::StabilizerChain;
pub use enumerate::{ExplicitSet, DEFAULT_ELEMENT_CAP};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::flipping::GeneratorSet;
use crate::gf2::Gf2Matrix;
use crate::graph::CoxeterGraph;

#[derive(Clone, Debug)]
pub enum Backend {
    Explicit(ExplicitSet),
    Chain(StabilizerChain),
}

#[derive(Clone, Debug)]
pub struct MatrixGroup {
    n: usize,
    generators: Vec<Gf2Matrix>,
    backend: Backend,
}

fn check_generators(gens: &[Gf2Matrix], n: usize) -> Result<()> {
    for g in gens {
        if g.dim() != n {
            return Err(Error::Dimension {
                expected: n,
                actual: g.dim(),
            });
        }
        if g.rank() != n {
            return Err(Error::Singular);
        }
    }
    Ok(())
}

/// Full element list of the group generated by `gens`.
pub fn enumerate(gens: &[Gf2Matrix], n: usize) -> Result<ExplicitSet> {
    check_generators(gens, n)?;
    ExplicitSet::enumerate(gens, n, DEFAULT_ELEMENT_CAP, Exec::default())
}

/// Exact group order from a stabilizer chain.
pub fn order_schreier_sims(gens: &[Gf2Matrix], n: usize) -> Result<BigUint> {
    check_generators(gens, n)?;
    Ok(StabilizerChain::new(gens, n)?.order())
}

impl MatrixGroup {
    pub fn explicit(gens: &[Gf2Matrix], n: usize, cap: u64, exec: Exec) -> Result<Self> {
        check_generators(gens, n)?;
        Ok(Self {
            n,
            generators: gens.to_vec(),
            backend: Backend::Explicit(ExplicitSet::enumerate(gens, n, cap, exec)?),
        })
    }

    pub fn chain(gens: &[Gf2Matrix], n: usize) -> Result<Self> {
        check_generators(gens, n)?;
        Ok(Self {
            n,
            generators: gens.to_vec(),
            backend: Backend::Chain(StabilizerChain::new(gens, n)?),
        })
    }

    /// Explicit set when the order is at most `cap`, chain otherwise.
    pub fn generate(gens: &[Gf2Matrix], n: usize, cap: u64) -> Result<Self> {
        let chained = Self::chain(gens, n)?;
        match chained.order().to_u64() {
            Some(order) if order <= cap => Self::explicit(gens, n, cap, Exec::default()),
            _ => Ok(chained),
        }
    }

    /// The flipping group of a graph, enumerated.
    pub fn flipping_group(graph: &CoxeterGraph) -> Result<Self> {
        let gens = GeneratorSet::new(graph);
        Self::explicit(gens.matrices(), graph.n(), DEFAULT_ELEMENT_CAP, Exec::default())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Gf2Matrix] {
        &self.generators
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn as_explicit(&self) -> Option<&ExplicitSet> {
        match &self.backend {
            Backend::Explicit(set) => Some(set),
            Backend::Chain(_) => None,
        }
    }

    pub fn order(&self) -> BigUint {
        match &self.backend {
            Backend::Explicit(set) => BigUint::from(set.len()),
            Backend::Chain(chain) => chain.order(),
        }
    }

    pub fn contains(&self, m: &Gf2Matrix) -> bool {
        match &self.backend {
            Backend::Explicit(set) => set.contains(m),
            Backend::Chain(chain) => chain.contains(m),
        }
    }

    /// Elements commuting with every generator. A chain-backed group is
    /// enumerated first if it fits under the default element cap.
    pub fn center(&self) -> Result<Vec<Gf2Matrix>> {
        let enumerated;
        let set = match &self.backend {
            Backend::Explicit(set) => set,
            Backend::Chain(chain) => {
                let order = chain.order();
                if order > BigUint::from(DEFAULT_ELEMENT_CAP) {
                    return Err(Error::Backend(format!(
                        "center needs an explicit element set; order {order} exceeds the cap"
                    )));
                }
                enumerated = ExplicitSet::enumerate(
                    &self.generators,
                    self.n,
                    DEFAULT_ELEMENT_CAP,
                    Exec::default(),
                )?;
                &enumerated
            }
        };
        let gens = &self.generators;
        Ok(set.filter(Exec::default(), |z| {
            gens.iter().all(|g| z.mul_unchecked(g) == g.mul_unchecked(z))
        }))
    }
}

pub fn center(group: &MatrixGroup) -> Result<Vec<Gf2Matrix>> {
    group.center()
}

pub fn membership(group: &MatrixGroup, m: &Gf2Matrix) -> bool {
    group.contains(m)
}

/// The parabolic subgroup `𝐖_J` (generated inside `GL_n`) paired with the
/// flipping group of the induced subgraph on `J`.
#[derive(Clone, Debug)]
pub struct RestrictionPair {
    /// Sorted vertex labels of `J`.
    pub subset: Vec<usize>,
    /// `𝐬` for `s ∈ J`, as `n × n` matrices.
    pub sub_generators: Vec<Gf2Matrix>,
    /// `𝐬[J]`, which are the move matrices of the induced subgraph.
    pub restricted_generators: Vec<Gf2Matrix>,
    pub induced: CoxeterGraph,
}

impl RestrictionPair {
    fn indices(&self) -> Vec<usize> {
        self.subset.iter().map(|s| s - 1).collect()
    }

    /// `ψ(G) = G[J]`.
    pub fn psi(&self, g: &Gf2Matrix) -> Result<Gf2Matrix> {
        g.submatrix(&self.indices())
    }

    /// Whether `G` has the block form with zero rows-in-`J`, columns-outside-`J`
    /// block.
    pub fn is_block_triangular(&self, g: &Gf2Matrix) -> bool {
        let inside: u64 = self.subset.iter().fold(0, |acc, s| acc | 1 << (s - 1));
        (0..g.dim())
            .filter(|j| (inside >> j) & 1 == 0)
            .all(|j| g.column_bits()[j] & inside == 0)
    }
}

pub fn restriction(g: &CoxeterGraph, subset: &[usize]) -> Result<RestrictionPair> {
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    subset.dedup();
    if subset.is_empty() {
        return Err(Error::Range("restriction needs a nonempty vertex subset".into()));
    }
    let gens = GeneratorSet::new(g);
    let sub_generators = gens.subset(&subset)?;
    let indices: Vec<usize> = subset.iter().map(|s| s - 1).collect();
    let restricted_generators = sub_generators
        .iter()
        .map(|m| m.submatrix(&indices))
        .collect::<Result<Vec<_>>>()?;
    let induced = g.induced_subgraph(&subset)?;
    Ok(RestrictionPair {
        subset,
        sub_generators,
        restricted_generators,
        induced,
    })
}
