//! Move matrices of the flipping puzzle and the identities that make
//! `s ↦ 𝐬` a representation of the Coxeter group.
//!
//! The move matrix `𝐬` is the identity plus ones at `(u, s)` for every
//! neighbour `u` of `s`. Acting on a configuration `ℓ` it flips the
//! neighbours of `s` when `ℓ_s = 1` and does nothing when `ℓ_s = 0` (a
//! feigning move).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::graph::CoxeterGraph;

/// `E_s`: zero except column `s`, which is the sum of the neighbours of `s`.
pub fn e_matrix(g: &CoxeterGraph, s: usize) -> Result<Gf2Matrix> {
    let mask = g.neighbor_mask(s)?;
    let mut cols = vec![0u64; g.n()];
    cols[s - 1] = mask;
    Ok(Gf2Matrix::from_column_bits_unchecked(cols))
}

/// The move matrix `𝐬 = I + E_s`.
pub fn generator_matrix(g: &CoxeterGraph, s: usize) -> Result<Gf2Matrix> {
    let mask = g.neighbor_mask(s)?;
    let mut cols: Vec<u64> = (0..g.n()).map(|j| 1u64 << j).collect();
    cols[s - 1] |= mask;
    Ok(Gf2Matrix::from_column_bits_unchecked(cols))
}

fn check_config(g: &CoxeterGraph, config: Gf2Vector) -> Result<()> {
    if config.dim() != g.n() {
        return Err(Error::Dimension {
            expected: g.n(),
            actual: config.dim(),
        });
    }
    Ok(())
}

/// `𝐬ℓ`, computed as a full matrix-vector product.
pub fn apply_move(g: &CoxeterGraph, config: Gf2Vector, s: usize) -> Result<Gf2Vector> {
    check_config(g, config)?;
    generator_matrix(g, s)?.mat_vec(config)
}

/// Vertices currently black, i.e. the moves the puzzle allows.
pub fn legal_moves(g: &CoxeterGraph, config: Gf2Vector) -> Result<Vec<usize>> {
    check_config(g, config)?;
    Ok(config.support().map(|i| i + 1).collect())
}

/// The generators `𝐬_1, ..., 𝐬_n` of the flipping group of a graph.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    graph: CoxeterGraph,
    gens: Vec<Gf2Matrix>,
}

impl GeneratorSet {
    pub fn new(graph: &CoxeterGraph) -> Self {
        let gens = (1..=graph.n())
            .map(|s| generator_matrix(graph, s).expect("vertex in range"))
            .collect();
        Self {
            graph: graph.clone(),
            gens,
        }
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// All generators; `matrices()[i]` is `𝐬_{i+1}`.
    pub fn matrices(&self) -> &[Gf2Matrix] {
        &self.gens
    }

    pub fn get(&self, s: usize) -> Result<&Gf2Matrix> {
        self.graph.check_vertex(s)?;
        Ok(&self.gens[s - 1])
    }

    /// Generators `𝐬` for `s ∈ subset`, still as `n × n` matrices.
    pub fn subset(&self, subset: &[usize]) -> Result<Vec<Gf2Matrix>> {
        subset.iter().map(|&s| self.get(s).cloned()).collect()
    }
}

/// Outcome of checking the Coxeter relations and the `E_s` calculus.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RelationReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl RelationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }
}

/// Checks on `g`:
/// - `𝐬² = I` and `𝐬 = I + E_s` for every vertex;
/// - `(𝐬𝐬')² = I` for distinct non-adjacent pairs, `(𝐬𝐬')³ = I` for edges;
/// - `E_{s'}E_s = 0` whenever `s's` is not an edge;
/// - for every walk `s_0, ..., s_t` with `1 ≤ t ≤ 3`, the product
///   `E_{s_t}⋯E_{s_0}` equals `E_{s_0}` when `s_t = s_0` and
///   `E_{s_t}E_{s_0}` when `s_t s_0` is an edge.
pub fn verify_coxeter_relations(g: &CoxeterGraph) -> RelationReport {
    let n = g.n();
    let gens = GeneratorSet::new(g);
    let es: Vec<Gf2Matrix> = (1..=n).map(|s| e_matrix(g, s).expect("vertex in range")).collect();
    let id = Gf2Matrix::identity_unchecked(n);
    let mut report = RelationReport::default();

    for s in 1..=n {
        let m = &gens.matrices()[s - 1];
        report.record((m * m).is_identity(), || format!("s{s}^2 != I"));
        report.record(
            id.add(&es[s - 1]).ok().as_ref() == Some(m),
            || format!("s{s} != I + E_s{s}"),
        );
    }

    for s in 1..=n {
        for t in 1..=n {
            if s == t {
                continue;
            }
            let adjacent = g.has_edge(s, t);
            if s < t {
                let prod = &gens.matrices()[s - 1] * &gens.matrices()[t - 1];
                let m = if adjacent { 3 } else { 2 };
                report.record(prod.pow(m).is_identity(), || {
                    format!("(s{s} s{t})^{m} != I")
                });
            }
            if !adjacent {
                report.record((&es[t - 1] * &es[s - 1]).is_zero(), || {
                    format!("E_s{t} E_s{s} != 0 for non-edge")
                });
            }
        }
    }

    // Walks of length 1..=3 through the graph.
    let mut walk = Vec::with_capacity(4);
    for s0 in 1..=n {
        walk.clear();
        walk.push(s0);
        check_walks(g, &es, &mut walk, es[s0 - 1].clone(), &mut report);
    }
    report
}

fn check_walks(
    g: &CoxeterGraph,
    es: &[Gf2Matrix],
    walk: &mut Vec<usize>,
    product: Gf2Matrix,
    report: &mut RelationReport,
) {
    if walk.len() == 4 {
        return;
    }
    let last = *walk.last().expect("walk is nonempty");
    for next in g.neighbors(last).expect("vertex in range") {
        let prod = &es[next - 1] * &product;
        walk.push(next);
        let s0 = walk[0];
        if next == s0 {
            report.record(prod == es[s0 - 1], || format!("walk {walk:?}: product != E_s{s0}"));
        } else if g.has_edge(next, s0) {
            let expected = &es[next - 1] * &es[s0 - 1];
            report.record(prod == expected, || {
                format!("walk {walk:?}: product != E_s{next} E_s{s0}")
            });
        }
        check_walks(g, es, walk, prod, report);
        walk.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn fam(f: Family, n: usize) -> CoxeterGraph {
        CoxeterGraph::build_family(f, n).unwrap()
    }

    fn v(s: &str) -> Gf2Vector {
        s.parse().unwrap()
    }

    #[test]
    fn a2_generator_by_hand() {
        // One edge 1-2: column 1 of 𝐬_1 picks up row 2.
        let s1 = generator_matrix(&fam(Family::A, 2), 1).unwrap();
        assert_eq!(s1, Gf2Matrix::from_row_strings(&["10", "11"]).unwrap());
        assert_eq!(s1.to_column_strings(), vec!["11", "01"]);
    }

    #[test]
    fn d4_generator_by_hand() {
        let s2 = generator_matrix(&fam(Family::D, 4), 2).unwrap();
        assert_eq!(
            s2,
            Gf2Matrix::from_row_strings(&["1100", "0100", "0110", "0101"]).unwrap()
        );
    }

    #[test]
    fn isolated_vertex_gives_identity_and_zero_e() {
        let g = CoxeterGraph::build_custom(3, &[(1, 2)]).unwrap();
        assert!(generator_matrix(&g, 3).unwrap().is_identity());
        assert!(e_matrix(&g, 3).unwrap().is_zero());
    }

    #[test]
    fn e_matrix_examples() {
        let e1 = e_matrix(&fam(Family::A, 2), 1).unwrap();
        assert_eq!(e1, Gf2Matrix::from_row_strings(&["00", "10"]).unwrap());
        let e2 = e_matrix(&fam(Family::A, 3), 2).unwrap();
        assert_eq!(e2.to_column_strings(), vec!["000", "101", "000"]);
        assert!(e_matrix(&fam(Family::A, 3), 4).is_err());
    }

    #[test]
    fn move_examples() {
        let a2 = fam(Family::A, 2);
        assert_eq!(apply_move(&a2, v("10"), 1).unwrap(), v("11"));
        assert_eq!(apply_move(&a2, v("01"), 1).unwrap(), v("01"));
        assert_eq!(apply_move(&a2, v("11"), 2).unwrap(), v("01"));
        assert!(apply_move(&a2, v("110"), 1).is_err());
        assert!(apply_move(&a2, v("11"), 3).is_err());
    }

    #[test]
    fn legal_move_examples() {
        let a3 = fam(Family::A, 3);
        assert!(legal_moves(&a3, v("000")).unwrap().is_empty());
        assert_eq!(legal_moves(&a3, v("101")).unwrap(), vec![1, 3]);
        assert_eq!(legal_moves(&fam(Family::D, 4), v("1111")).unwrap(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn relations_hold_on_small_graphs() {
        let a2 = verify_coxeter_relations(&fam(Family::A, 2));
        assert!(a2.is_ok(), "{:?}", a2.violations);
        let s1 = generator_matrix(&fam(Family::A, 2), 1).unwrap();
        let s2 = generator_matrix(&fam(Family::A, 2), 2).unwrap();
        assert!((&s1 * &s2).pow(3).is_identity());
        assert!(!(&s1 * &s2).pow(2).is_identity());

        let empty = CoxeterGraph::build_custom(2, &[]).unwrap();
        assert!(verify_coxeter_relations(&empty).is_ok());

        let e6 = verify_coxeter_relations(&fam(Family::E, 6));
        assert!(e6.is_ok(), "{:?}", e6.violations);
    }

    #[test]
    fn relations_hold_on_affine_triangle() {
        let tri = CoxeterGraph::build_custom(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let r = verify_coxeter_relations(&tri);
        assert!(r.is_ok(), "{:?}", r.violations);
    }

    #[test]
    fn report_flags_a_wrong_identity() {
        let mut r = RelationReport::default();
        r.record(false, || "broken".into());
        assert!(!r.is_ok());
        assert_eq!(r.checked, 1);
    }
}
