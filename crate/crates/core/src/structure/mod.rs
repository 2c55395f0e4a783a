//! Permutation images of flipping-group elements and kernel-order accounting.
//!
//! Every matrix of the flipping group permutes a family of overline vectors:
//! `1̄, …, (n+1)‾` for A and `1̄, …, n̄` for D and E (for E only the subgroup
//! generated by `𝐬₁, …, 𝐬ₙ₋₁` does). The maps below read that permutation off
//! and lift permutations back to matrices.

mod perm;

pub use perm::Permutation;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flipping::GeneratorSet;
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::graph::{CoxeterGraph, Family};
use crate::group::StabilizerChain;
use crate::orbit::{o1_size, SimpleBasis};

fn require(basis: &SimpleBasis, family: Family) -> Result<()> {
    if basis.family() != family {
        return Err(Error::UnsupportedFamily(family.to_string()));
    }
    Ok(())
}

/// The permutation `j ↦ k` with `G j̄ = k̄` on the first `basis.permuted_count()`
/// overline vectors.
pub fn induced_permutation(basis: &SimpleBasis, g: &Gf2Matrix) -> Result<Permutation> {
    if g.dim() != basis.n() {
        return Err(Error::Dimension {
            expected: basis.n(),
            actual: g.dim(),
        });
    }
    let images = (1..=basis.permuted_count())
        .map(|j| {
            let image = g.mat_vec(basis.overline(j)?)?;
            basis.overline_index(image).ok_or_else(|| {
                Error::NotPermutation(format!("image of overline {j} is {image}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Permutation::from_images(images)
        .map_err(|_| Error::NotPermutation("overline images are not distinct".into()))
}

/// Type A: the permutation of `1̄, …, (n+1)‾` induced by `G`.
pub fn alpha_image(basis: &SimpleBasis, g: &Gf2Matrix) -> Result<Permutation> {
    require(basis, Family::A)?;
    induced_permutation(basis, g)
}

/// Type D: the permutation of `1̄, …, n̄` induced by `G`.
pub fn beta_image(basis: &SimpleBasis, g: &Gf2Matrix) -> Result<Permutation> {
    require(basis, Family::D)?;
    induced_permutation(basis, g)
}

/// Type E: the permutation of `1̄, …, n̄` induced by an element of the
/// subgroup generated by `𝐬₁, …, 𝐬ₙ₋₁`.
pub fn epsilon_image(basis: &SimpleBasis, g: &Gf2Matrix) -> Result<Permutation> {
    require(basis, Family::E)?;
    induced_permutation(basis, g)
}

/// The matrix sending basis column `k` to `images[k]`.
fn lift_columns(basis: &SimpleBasis, images: &[Gf2Vector]) -> Result<Gf2Matrix> {
    Gf2Matrix::from_columns(images)?.mat_mul(basis.inverse())
}

fn check_degree(sigma: &Permutation, degree: usize) -> Result<()> {
    if sigma.degree() != degree {
        return Err(Error::Dimension {
            expected: degree,
            actual: sigma.degree(),
        });
    }
    Ok(())
}

/// Type E: the matrix `B P_σ B⁻¹`, which sends `j̄` to `σ(j)‾`.
pub fn perm_lift(basis: &SimpleBasis, sigma: &Permutation) -> Result<Gf2Matrix> {
    require(basis, Family::E)?;
    check_degree(sigma, basis.n())?;
    let images = (1..=basis.n())
        .map(|j| basis.overline(sigma.apply(j)))
        .collect::<Result<Vec<_>>>()?;
    lift_columns(basis, &images)
}

/// Type D: the matrix fixing `(n+1)‾` and sending `j̄` to `σ(j)‾` for
/// `j < n`. On `Z` this is the automorphism `θ(σ)`.
pub fn theta_lift(basis: &SimpleBasis, sigma: &Permutation) -> Result<Gf2Matrix> {
    require(basis, Family::D)?;
    let n = basis.n();
    check_degree(sigma, n)?;
    let images = basis
        .column_labels()
        .iter()
        .map(|&j| basis.overline(if j <= n { sigma.apply(j) } else { j }))
        .collect::<Result<Vec<_>>>()?;
    lift_columns(basis, &images)
}

/// An element `(u, σ)` of `Z ⋊ S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SemidirectElement {
    pub translation: Gf2Vector,
    pub perm: Permutation,
}

impl SemidirectElement {
    pub fn new(basis: &SimpleBasis, translation: Gf2Vector, perm: Permutation) -> Result<Self> {
        require(basis, Family::D)?;
        check_degree(&perm, basis.n())?;
        if !basis.in_subspace_z(translation)? {
            return Err(Error::Validation(format!("translation {translation} is not in Z")));
        }
        Ok(Self { translation, perm })
    }

    /// `(u, σ)(v, τ) = (u + θ(σ)v, στ)`.
    pub fn mul(&self, other: &Self, basis: &SimpleBasis) -> Result<Self> {
        let moved = theta_lift(basis, &self.perm)?.mat_vec(other.translation)?;
        Ok(Self {
            translation: self.translation.checked_add(moved)?,
            perm: self.perm.compose(&other.perm)?,
        })
    }
}

/// Type D: `δ(G) = ((n+1)‾ + G(n+1)‾, β(G))`.
pub fn delta_image(basis: &SimpleBasis, g: &Gf2Matrix) -> Result<SemidirectElement> {
    let perm = beta_image(basis, g)?;
    let top = basis.overline(basis.n() + 1)?;
    let translation = top.checked_add(g.mat_vec(top)?)?;
    SemidirectElement::new(basis, translation, perm)
}

/// The five permutations of the E₈ word for `w₀`, each followed by `𝐬₈`.
pub const E8_W0_CYCLES: [&str; 5] = [
    "(2 8 3 7 4 6 5)",
    "(5 8)(4 7)(3 6)",
    "(4 8)(3 7)(2 6)",
    "(5 8)(4 7)",
    "(3 7)(2 6)",
];

/// `ε⁻¹(σ₁) 𝐬₈ ε⁻¹(σ₂) 𝐬₈ ⋯ ε⁻¹(σ₅) 𝐬₈`, the image of the longest element
/// of the E₇ parabolic subgroup on `{s₂, …, s₈}` of E₈.
pub fn build_e8_w0() -> Gf2Matrix {
    let basis = SimpleBasis::new(Family::E, 8).expect("E8 basis");
    let s8 = basis.generators().get(8).expect("vertex 8").clone();
    E8_W0_CYCLES
        .iter()
        .fold(Gf2Matrix::identity_unchecked(8), |acc, cycles| {
            let sigma = Permutation::parse_cycles(8, cycles).expect("literal cycles");
            let lift = perm_lift(&basis, &sigma).expect("E8 lift");
            acc.mul_unchecked(&lift).mul_unchecked(&s8)
        })
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k))
}

/// Order of the Weyl group `W` of the given type.
pub fn classical_order(family: Family, n: usize) -> Result<BigUint> {
    if n < family.min_rank() {
        return Err(Error::Range(format!("{family}_{n}: rank too small")));
    }
    match (family, n) {
        (Family::A, _) => Ok(factorial(n + 1)),
        (Family::D, _) => Ok((BigUint::from(1u32) << (n - 1)) * factorial(n)),
        (Family::E, 6) => Ok(BigUint::from(51_840u32)),
        (Family::E, 7) => Ok(BigUint::from(2_903_040u32)),
        (Family::E, 8) => Ok(BigUint::from(696_729_600u32)),
        (Family::E, _) => Err(Error::Range(format!("E_{n} is infinite for n >= 9"))),
    }
}

/// `|𝐖|` for a family graph, from a stabilizer chain.
pub fn flipping_group_order(family: Family, n: usize) -> Result<BigUint> {
    let graph = CoxeterGraph::build_family(family, n)?;
    let gens = GeneratorSet::new(&graph);
    Ok(StabilizerChain::new(gens.matrices(), n)?.order())
}

/// `|W| / |𝐖|`; the division must be exact.
pub fn kernel_order(family: Family, n: usize) -> Result<BigUint> {
    let classical = classical_order(family, n)?;
    let computed = flipping_group_order(family, n)?;
    if !(&classical % &computed).is_zero() {
        return Err(Error::Inconsistent(format!(
            "{family}_{n}: |W| = {classical} is not divisible by |𝐖| = {computed}"
        )));
    }
    Ok(classical / computed)
}

/// `|𝐖_J| · |O₁|` against `|𝐖|` for E_n, `J = {2, …, n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub n: usize,
    pub parabolic_order: String,
    pub o1_size: String,
    pub product: String,
    pub group_order: String,
    pub divides: bool,
    pub equal: bool,
}

pub fn verify_divisibility_e(n: usize) -> Result<DivisibilityReport> {
    if !(6..=8).contains(&n) {
        return Err(Error::Range(format!("divisibility check needs 6 <= n <= 8, got {n}")));
    }
    let graph = CoxeterGraph::build_family(Family::E, n)?;
    let gens = GeneratorSet::new(&graph);
    let j: Vec<usize> = (2..=n).collect();
    let parabolic = StabilizerChain::new(&gens.subset(&j)?, n)?.order();
    let group = StabilizerChain::new(gens.matrices(), n)?.order();
    let o1 = BigUint::from(o1_size(n)?);
    let product = &parabolic * &o1;
    Ok(DivisibilityReport {
        n,
        divides: (&group % &product).is_zero(),
        equal: product == group,
        parabolic_order: parabolic.to_string(),
        o1_size: o1.to_string(),
        product: product.to_string(),
        group_order: group.to_string(),
    })
}

/// `|Z ⋊ S_n| = 2^{n−1} n!`.
pub fn semidirect_order(n: usize) -> BigUint {
    (BigUint::from(1u32) << (n - 1)) * factorial(n)
}

/// Index of `δ(𝐖)` in `Z ⋊ S_n`, given `|𝐖|`.
pub fn delta_index(n: usize, group_order: &BigUint) -> Option<u64> {
    let total = semidirect_order(n);
    if (&total % group_order).is_zero() {
        (total / group_order).to_u64()
    } else {
        None
    }
}
