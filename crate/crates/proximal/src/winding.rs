//! Winding invariant for pc-maps into a reflexive cycle.
//!
//! A pc-map into a cycle moves by a signed unit displacement (or stays)
//! across every near pair of the domain. Along a closed walk those
//! displacements sum to a multiple of the cycle length. A one-step pair of
//! maps shifts each image by at most one slot, so for a codomain cycle of
//! length at least five the per-edge displacement difference is an exact
//! coboundary and walk sums are equal for homotopic maps. Unequal sums on
//! any closed walk therefore certify that no homotopy chain exists.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homotopy::FiniteMap;
use crate::space::ProximitySpace;

/// Shortest codomain cycle length for which the walk-sum argument is sound.
pub const MIN_OBSTRUCTION_CYCLE: usize = 5;

/// A closed domain walk on which two maps wind differently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindingEvidence {
    /// Closed walk by point name; first and last entries coincide.
    pub walk: Vec<String>,
    pub sum_first: i64,
    pub sum_second: i64,
    pub codomain_cycle: Vec<String>,
}

/// Cyclic slot positions for a space that is a reflexive cycle.
pub(crate) struct CyclePositions {
    pub order: Vec<usize>,
    pub position: Vec<usize>,
}

pub(crate) fn cycle_positions(space: &ProximitySpace) -> Option<CyclePositions> {
    let order = space.cycle_order()?;
    let mut position = vec![0usize; space.len()];
    for (slot, &p) in order.iter().enumerate() {
        position[p] = slot;
    }
    Some(CyclePositions { order, position })
}

/// Signed unit displacement between two near cycle points: 0, +1 or -1 slots.
fn signed_step(pos: &CyclePositions, n: usize, from: usize, to: usize) -> Option<i64> {
    let diff = (pos.position[to] + n - pos.position[from]) % n;
    match diff {
        0 => Some(0),
        1 => Some(1),
        d if d == n - 1 => Some(-1),
        _ => None,
    }
}

fn walk_sum(map: &[u32], pos: &CyclePositions, n: usize, walk: &[usize]) -> Option<i64> {
    let mut total = 0i64;
    for w in walk.windows(2) {
        total += signed_step(pos, n, map[w[0]] as usize, map[w[1]] as usize)?;
    }
    Some(total)
}

/// Whole-cycle winding numbers of two pc-maps between reflexive cycles.
/// `None` when the structural preconditions do not hold (domain not a
/// cycle, codomain not a cycle of length >= 5).
pub fn winding_obstruction(f: &FiniteMap, g: &FiniteMap) -> Result<Option<(i64, i64)>> {
    if !f.same_signature(g) {
        return Err(Error::SignatureMismatch);
    }
    f.require_pc()?;
    g.require_pc()?;
    let dom_order = match f.domain().cycle_order() {
        Some(o) => o,
        None => return Ok(None),
    };
    let pos = match cycle_positions(f.codomain()) {
        Some(p) if p.order.len() >= MIN_OBSTRUCTION_CYCLE => p,
        _ => return Ok(None),
    };
    let n = pos.order.len();
    let mut closed = dom_order.clone();
    closed.push(dom_order[0]);
    let sum_f = walk_sum(f.assign(), &pos, n, &closed)
        .expect("pc map steps by at most one slot");
    let sum_g = walk_sum(g.assign(), &pos, n, &closed)
        .expect("pc map steps by at most one slot");
    debug_assert_eq!(sum_f.rem_euclid(n as i64), 0);
    debug_assert_eq!(sum_g.rem_euclid(n as i64), 0);
    Ok(Some((sum_f / n as i64, sum_g / n as i64)))
}

/// Probes the fundamental cycles of the domain's nearness graph for a
/// closed walk on which the two maps wind differently. Applicable to any
/// domain; requires a codomain cycle of length >= 5 and both maps pc
/// (callers guarantee pc).
pub(crate) fn walk_mismatch(f: &FiniteMap, g: &FiniteMap) -> Option<WindingEvidence> {
    let pos = cycle_positions(f.codomain())?;
    let n = pos.order.len();
    if n < MIN_OBSTRUCTION_CYCLE {
        return None;
    }
    let dom = f.domain();
    let count = dom.len();
    let mut parent = vec![usize::MAX; count];
    let mut depth = vec![0usize; count];
    let mut visited = vec![false; count];
    let mut non_tree: Vec<(usize, usize)> = Vec::new();
    for root in 0..count {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        parent[root] = root;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in dom.neighbors(x) {
                let y = y as usize;
                if !visited[y] {
                    visited[y] = true;
                    parent[y] = x;
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                } else if x < y && parent[x] != y && parent[y] != x {
                    non_tree.push((x, y));
                }
            }
        }
    }
    for (u, v) in non_tree {
        // Closed walk: u up to the meeting point, down to v, edge back to u.
        let mut up = vec![u];
        let mut down = vec![v];
        let (mut a, mut b) = (u, v);
        while depth[a] > depth[b] {
            a = parent[a];
            up.push(a);
        }
        while depth[b] > depth[a] {
            b = parent[b];
            down.push(b);
        }
        while a != b {
            a = parent[a];
            up.push(a);
            b = parent[b];
            down.push(b);
        }
        let mut walk = up;
        walk.pop();
        walk.extend(down.into_iter().rev());
        walk.push(u);
        let sum_f = walk_sum(f.assign(), &pos, n, &walk)?;
        let sum_g = walk_sum(g.assign(), &pos, n, &walk)?;
        if sum_f != sum_g {
            return Some(WindingEvidence {
                walk: walk.iter().map(|&p| dom.name(p).to_string()).collect(),
                sum_first: sum_f,
                sum_second: sum_g,
                codomain_cycle: pos
                    .order
                    .iter()
                    .map(|&p| f.codomain().name(p).to_string())
                    .collect(),
            });
        }
    }
    None
}

/// Re-checks a winding evidence bundle against the maps it claims to
/// separate: the walk must be closed and near-connected in the domain, the
/// codomain cycle must match the space and be long enough, and the sums
/// must recompute to stated, unequal values.
pub fn verify_winding_evidence(
    f: &FiniteMap,
    g: &FiniteMap,
    evidence: &WindingEvidence,
) -> bool {
    if !f.same_signature(g) || !f.is_pc() || !g.is_pc() {
        return false;
    }
    let pos = match cycle_positions(f.codomain()) {
        Some(p) => p,
        None => return false,
    };
    let n = pos.order.len();
    if n < MIN_OBSTRUCTION_CYCLE || evidence.codomain_cycle.len() != n {
        return false;
    }
    let stated: Vec<usize> = match evidence
        .codomain_cycle
        .iter()
        .map(|name| f.codomain().index_of(name))
        .collect::<Result<Vec<_>>>()
    {
        Ok(v) => v,
        Err(_) => return false,
    };
    if stated != pos.order {
        return false;
    }
    let walk: Vec<usize> = match evidence
        .walk
        .iter()
        .map(|name| f.domain().index_of(name))
        .collect::<Result<Vec<_>>>()
    {
        Ok(v) => v,
        Err(_) => return false,
    };
    if walk.len() < 2 || walk.first() != walk.last() {
        return false;
    }
    if walk.windows(2).any(|w| !f.domain().near(w[0], w[1])) {
        return false;
    }
    let sum_f = walk_sum(f.assign(), &pos, n, &walk);
    let sum_g = walk_sum(g.assign(), &pos, n, &walk);
    sum_f == Some(evidence.sum_first)
        && sum_g == Some(evidence.sum_second)
        && evidence.sum_first != evidence.sum_second
}
