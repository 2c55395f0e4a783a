//! Reachability and explicit move sequences for the puzzle.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::Gf2Vector;
use crate::graph::CoxeterGraph;
use crate::orbit::{check_state_space, classify, state_cap, OrbitLabel};

/// Vertices selected in order; each must be black when selected.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct MoveSequence(pub Vec<usize>);

impl MoveSequence {
    pub fn moves(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Plays the moves from `start`; every move must be legal.
    pub fn replay(&self, g: &CoxeterGraph, start: Gf2Vector) -> Result<Gf2Vector> {
        check_config(g, start)?;
        self.0.iter().try_fold(start, |config, &s| {
            g.check_vertex(s)?;
            if !config.get(s - 1) {
                return Err(Error::Validation(format!("move {s} is not legal from {config}")));
            }
            Ok(Gf2Vector::from_bits_unchecked(
                g.n(),
                config.bits() ^ g.neighbor_mask(s)?,
            ))
        })
    }
}

fn check_config(g: &CoxeterGraph, a: Gf2Vector) -> Result<()> {
    if a.dim() != g.n() {
        return Err(Error::Dimension {
            expected: g.n(),
            actual: a.dim(),
        });
    }
    Ok(())
}

/// Orbit labels of both endpoints, when the graph carries a family tag.
fn labels(g: &CoxeterGraph, a: Gf2Vector, b: Gf2Vector) -> Result<Option<(OrbitLabel, OrbitLabel)>> {
    match g.family() {
        Some(f) => Ok(Some((classify(f, g.n(), a)?, classify(f, g.n(), b)?))),
        None => Ok(None),
    }
}

#[inline]
fn step(masks: &[u64], config: u64, s: usize) -> u64 {
    config ^ masks[s]
}

/// Breadth-first search over legal moves, vertices tried in ascending order.
/// Returns the parent links up to the moment `target` is found.
fn bfs_path(g: &CoxeterGraph, a: Gf2Vector, b: Gf2Vector) -> Result<Option<Vec<usize>>> {
    check_state_space(g.n(), state_cap())?;
    if a == b {
        return Ok(Some(Vec::new()));
    }
    let masks = g.adjacency();
    let mut parent: HashMap<u64, (u64, usize)> = HashMap::from([(a.bits(), (a.bits(), 0))]);
    let mut frontier = vec![a.bits()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &x in &frontier {
            let mut black = x;
            while black != 0 {
                let s = black.trailing_zeros() as usize;
                black &= black - 1;
                let y = step(masks, x, s);
                if parent.contains_key(&y) {
                    continue;
                }
                parent.insert(y, (x, s + 1));
                if y == b.bits() {
                    let mut moves = Vec::new();
                    let mut cur = y;
                    while cur != a.bits() {
                        let (p, s) = parent[&cur];
                        moves.push(s);
                        cur = p;
                    }
                    moves.reverse();
                    return Ok(Some(moves));
                }
                next.push(y);
            }
        }
        frontier = next;
    }
    Ok(None)
}

/// Whether `b` is reachable from `a`. Family graphs use the orbit
/// classifier; custom graphs use BFS.
pub fn equivalent(g: &CoxeterGraph, a: Gf2Vector, b: Gf2Vector) -> Result<bool> {
    check_config(g, a)?;
    check_config(g, b)?;
    match labels(g, a, b)? {
        Some((la, lb)) => Ok(la == lb),
        None => Ok(bfs_path(g, a, b)?.is_some()),
    }
}

/// Same as [`equivalent`] but always by search.
pub fn equivalent_by_search(g: &CoxeterGraph, a: Gf2Vector, b: Gf2Vector) -> Result<bool> {
    check_config(g, a)?;
    check_config(g, b)?;
    Ok(bfs_path(g, a, b)?.is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub reachable: bool,
    pub moves: MoveSequence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub from_label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub to_label: Option<String>,
}

/// A legal move sequence from `a` to `b`, or an unreachable report carrying
/// both orbit labels for family graphs.
pub fn solve(g: &CoxeterGraph, a: Gf2Vector, b: Gf2Vector) -> Result<SolveReport> {
    check_config(g, a)?;
    check_config(g, b)?;
    check_state_space(g.n(), state_cap())?;
    let labels = labels(g, a, b)?;
    let (from_label, to_label) = match labels {
        Some((la, lb)) => (Some(la.to_string()), Some(lb.to_string())),
        None => (None, None),
    };
    let unreachable = SolveReport {
        reachable: false,
        moves: MoveSequence::default(),
        from_label: from_label.clone(),
        to_label: to_label.clone(),
    };
    if matches!(labels, Some((la, lb)) if la != lb) {
        return Ok(unreachable);
    }
    let Some(path) = bfs_path(g, a, b)? else {
        if labels.is_some() {
            return Err(Error::Inconsistent(format!(
                "classifier puts {a} and {b} in one orbit but search disagrees"
            )));
        }
        return Ok(unreachable);
    };
    let moves = MoveSequence(path);
    if moves.replay(g, a)? != b {
        return Err(Error::Inconsistent("solution does not replay to the target".into()));
    }
    Ok(SolveReport {
        reachable: true,
        moves,
        from_label,
        to_label,
    })
}

/// `k` uniformly random legal moves from `a`; turns with no black vertex
/// are skipped.
pub fn scramble(g: &CoxeterGraph, a: Gf2Vector, k: u64, seed: u64) -> Result<Gf2Vector> {
    check_config(g, a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut config = a.bits();
    for _ in 0..k {
        let black = config.count_ones();
        if black == 0 {
            break;
        }
        let pick = rng.random_range(0..black);
        let s = (0..g.n())
            .filter(|&i| (config >> i) & 1 == 1)
            .nth(pick as usize)
            .expect("pick < number of black vertices");
        config ^= g.neighbor_mask(s + 1)?;
    }
    Ok(Gf2Vector::from_bits_unchecked(g.n(), config))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn v(s: &str) -> Gf2Vector {
        s.parse().unwrap()
    }

    fn family(f: Family, n: usize) -> CoxeterGraph {
        CoxeterGraph::build_family(f, n).unwrap()
    }

    #[test]
    fn equivalence_examples() {
        let a2 = family(Family::A, 2);
        assert!(equivalent(&a2, v("10"), v("01")).unwrap());
        assert!(!equivalent(&a2, v("10"), v("00")).unwrap());
        let e6 = family(Family::E, 6);
        assert!(!equivalent(&e6, v("100000"), v("010000")).unwrap());
        assert!(equivalent(&a2, v("10"), v("011")).is_err());
    }

    #[test]
    fn solve_examples() {
        let a2 = family(Family::A, 2);
        let r = solve(&a2, v("10"), v("01")).unwrap();
        assert!(r.reachable);
        assert_eq!(r.moves.moves(), &[1, 2]);
        assert!(solve(&a2, v("11"), v("11")).unwrap().moves.is_empty());
        let r = solve(&family(Family::A, 3), v("100"), v("010")).unwrap();
        assert!(!r.reachable);
        assert_eq!(r.from_label.as_deref(), Some("O1"));
        assert_eq!(r.to_label.as_deref(), Some("O2"));
    }

    #[test]
    fn custom_graph_uses_search() {
        let tri = CoxeterGraph::build_custom(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let r = solve(&tri, v("100"), v("111")).unwrap();
        assert!(r.reachable && r.from_label.is_none());
        assert_eq!(equivalent(&tri, v("100"), v("010")).unwrap(), solve(&tri, v("100"), v("010")).unwrap().reachable);
    }

    #[test]
    fn replay_rejects_feigning() {
        let a2 = family(Family::A, 2);
        assert!(MoveSequence(vec![2]).replay(&a2, v("10")).is_err());
        assert_eq!(MoveSequence(vec![1]).replay(&a2, v("10")).unwrap(), v("11"));
    }

    #[test]
    fn scramble_examples() {
        let a2 = family(Family::A, 2);
        assert_eq!(scramble(&a2, v("00"), 10, 3).unwrap(), v("00"));
        assert_eq!(scramble(&a2, v("10"), 0, 3).unwrap(), v("10"));
        let out = scramble(&a2, v("10"), 5, 1).unwrap();
        assert!(equivalent(&a2, v("10"), out).unwrap());
        assert_eq!(out, scramble(&a2, v("10"), 5, 1).unwrap());
    }
}
