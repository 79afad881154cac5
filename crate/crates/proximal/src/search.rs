//! Homotopy decision procedure.
//!
//! Tiers, cheapest first:
//! 1. heuristic geodesic certificate: walk each image along a shortest
//!    codomain path toward its target through pc-preserving single-point
//!    moves, then verify the chain;
//! 2. winding obstruction probe on the fundamental cycles of the domain;
//! 3. exhaustive reachability over single-point moves within the state
//!    budget (exhaustion is a sound NOT verdict);
//! 4. bounded-depth layered constraint search for k = 1..k_max.
//!
//! Single-point moves generate exactly the one-step homotopy chains, so
//! reachability is the ground truth the other tiers approximate.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homotopy::{one_step_violation, verify_homotopy, FiniteMap, HomotopyCertificate};
use crate::space::ProximitySpace;
use crate::winding::{walk_mismatch, WindingEvidence};

/// Deterministic search budgets. All limits count states or nodes, never
/// wall time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Visited-state cap for reachability search.
    pub max_states: u64,
    /// Layer cap for the constraint search; defaults to 4 * |codomain|.
    pub max_layers: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_states: 5_000_000,
            max_layers: None,
        }
    }
}

impl Budget {
    pub fn layers_for(&self, codomain: &ProximitySpace) -> usize {
        self.max_layers.unwrap_or(4 * codomain.len())
    }
}

/// Search effort notes attached to an inconclusive verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetNote {
    pub states_visited: u64,
    pub max_layers_tried: usize,
}

/// Evidence that no homotopy chain exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonHomotopyProof {
    /// The full single-move component of the first map was enumerated and
    /// the second map is not in it.
    ExhaustedComponent { states_visited: u64 },
    /// A closed walk winds differently under the two maps.
    Obstruction(WindingEvidence),
}

/// Three-valued homotopy verdict with its supporting artifact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomotopyVerdict {
    Good(HomotopyCertificate),
    NotGood(NonHomotopyProof),
    Unknown(BudgetNote),
}

impl HomotopyVerdict {
    pub fn is_good(&self) -> bool {
        matches!(self, HomotopyVerdict::Good(_))
    }

    pub fn is_not_good(&self) -> bool {
        matches!(self, HomotopyVerdict::NotGood(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, HomotopyVerdict::Unknown(_))
    }
}

/// Would changing `point`'s image to `img` keep the map pc? Only edges at
/// `point` need rechecking.
fn move_keeps_pc(
    dom: &ProximitySpace,
    cod: &ProximitySpace,
    assign: &[u32],
    point: usize,
    img: u32,
) -> bool {
    dom.neighbors(point).iter().all(|&y| {
        let other = if y as usize == point {
            img
        } else {
            assign[y as usize]
        };
        cod.near(img as usize, other as usize)
    })
}

/// One geodesic image-walking attempt. Each pass moves every point one
/// shortest-path step toward its target when the move keeps the map pc.
/// The sweep direction and the tie order among equally short steps are
/// policy inputs; a wedge under one policy often resolves under another.
/// Every applied move strictly shrinks the total remaining distance, so
/// this terminates.
fn geodesic_attempt(
    f: &FiniteMap,
    g: &FiniteMap,
    dist: &[Vec<usize>],
    sweep_desc: bool,
    ties_desc: bool,
) -> Option<Vec<Vec<u32>>> {
    let dom = f.domain();
    let cod = f.codomain();
    let target = g.assign();
    let mut cur = f.assign().to_vec();
    let mut layers = vec![cur.clone()];
    let sweep: Vec<usize> = if sweep_desc {
        (0..dom.len()).rev().collect()
    } else {
        (0..dom.len()).collect()
    };
    loop {
        if cur == target {
            return Some(layers);
        }
        let mut moved = false;
        for &x in &sweep {
            let from = cur[x] as usize;
            let to = target[x] as usize;
            if from == to {
                continue;
            }
            let d = dist[from][to];
            if d == usize::MAX {
                return None;
            }
            let mut nbrs = cod.neighbors(from).to_vec();
            if ties_desc {
                nbrs.reverse();
            }
            for v in nbrs {
                if dist[v as usize][to] == d - 1 && move_keeps_pc(dom, cod, &cur, x, v) {
                    cur[x] = v;
                    layers.push(cur.clone());
                    moved = true;
                    break;
                }
            }
        }
        if !moved {
            return None;
        }
    }
}

/// Hop distances within the subgraph induced on `allowed`; pairs outside
/// or disconnected stay at `usize::MAX`.
fn induced_distance_table(cod: &ProximitySpace, allowed: &[bool]) -> Vec<Vec<usize>> {
    let n = cod.len();
    let mut table = vec![vec![usize::MAX; n]; n];
    for s in 0..n {
        if !allowed[s] {
            continue;
        }
        table[s][s] = 0;
        let mut frontier = vec![s];
        let mut hops = 0usize;
        while !frontier.is_empty() {
            hops += 1;
            let mut next = Vec::new();
            for &x in &frontier {
                for &y in cod.neighbors(x) {
                    let y = y as usize;
                    if allowed[y] && table[s][y] == usize::MAX {
                        table[s][y] = hops;
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
    }
    table
}

/// Tier 1: geodesic image walking across sweep policies and metrics.
/// The full codomain metric routes through points neither map touches,
/// which can wedge two neighbors into incompatible shortcut directions;
/// the metric induced on the two image sets forces detours along the
/// shapes the maps actually occupy, where level walking tends to stay
/// pc. Chains are verified by the caller before use.
fn geodesic_chain(f: &FiniteMap, g: &FiniteMap, dist: &[Vec<usize>]) -> Option<Vec<Vec<u32>>> {
    let cod = f.codomain();
    let mut allowed = vec![false; cod.len()];
    for &v in f.assign().iter().chain(g.assign()) {
        allowed[v as usize] = true;
    }
    let tables: Vec<&[Vec<usize>]> = vec![dist];
    let induced;
    let tables = if allowed.iter().all(|&a| a) {
        tables
    } else {
        induced = induced_distance_table(cod, &allowed);
        let mut t = tables;
        t.push(&induced);
        t
    };
    for table in tables {
        for sweep_desc in [false, true] {
            for ties_desc in [false, true] {
                if let Some(layers) = geodesic_attempt(f, g, table, sweep_desc, ties_desc) {
                    return Some(layers);
                }
            }
        }
    }
    None
}

/// Compact reachability state key.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum StateKey {
    Packed(u128),
    Wide(Box<[u32]>),
}

fn encode_state(assign: &[u32], bits: u32) -> StateKey {
    if (assign.len() as u32) * bits <= 128 {
        let mut key = 0u128;
        for &v in assign {
            key = (key << bits) | v as u128;
        }
        StateKey::Packed(key)
    } else {
        StateKey::Wide(assign.to_vec().into_boxed_slice())
    }
}

enum ReachOutcome {
    Found(Vec<Vec<u32>>),
    Exhausted { states: u64 },
    BudgetOut { states: u64 },
}

/// Tier 3: breadth-first search over pc maps connected to `f` by
/// single-point moves. Exhausting the component without meeting `g` is a
/// proof of non-homotopy.
fn reachability(f: &FiniteMap, g: &FiniteMap, max_states: u64) -> ReachOutcome {
    let dom = f.domain();
    let cod = f.codomain();
    let bits = (usize::BITS - (cod.len().max(2) - 1).leading_zeros()).max(1);
    let start = f.assign().to_vec();
    let goal = encode_state(g.assign(), bits);
    let start_key = encode_state(&start, bits);
    if start_key == goal {
        return ReachOutcome::Found(vec![start]);
    }
    // Key -> (parent key, moved point, new image); the start maps to itself.
    let mut seen: HashMap<StateKey, (StateKey, u32, u32)> = HashMap::new();
    seen.insert(start_key.clone(), (start_key.clone(), u32::MAX, 0));
    let mut frontier = VecDeque::from([start]);
    let mut states: u64 = 1;
    while let Some(cur) = frontier.pop_front() {
        let cur_key = encode_state(&cur, bits);
        for x in 0..dom.len() {
            let from = cur[x] as usize;
            for &v in cod.neighbors(from) {
                if !move_keeps_pc(dom, cod, &cur, x, v) {
                    continue;
                }
                let mut next = cur.clone();
                next[x] = v;
                let key = encode_state(&next, bits);
                if seen.contains_key(&key) {
                    continue;
                }
                seen.insert(key.clone(), (cur_key.clone(), x as u32, v));
                states += 1;
                if key == goal {
                    // Replay the move list forward from f.
                    let mut moves = Vec::new();
                    let mut walk = key;
                    while walk != start_key {
                        let (parent, point, img) = seen[&walk].clone();
                        moves.push((point, img));
                        walk = parent;
                    }
                    moves.reverse();
                    let mut layers = vec![f.assign().to_vec()];
                    let mut state = f.assign().to_vec();
                    for (point, img) in moves {
                        state[point as usize] = img;
                        layers.push(state.clone());
                    }
                    return ReachOutcome::Found(layers);
                }
                if states >= max_states {
                    return ReachOutcome::BudgetOut { states };
                }
                frontier.push_back(next);
            }
        }
    }
    ReachOutcome::Exhausted { states }
}

/// Tier 4: complete backtracking search for a chain with exactly k
/// transitions, for k = 1..=k_max. Layer assignments are chosen pointwise
/// in canonical order under pc and one-step consistency. Returns the node
/// count spent.
fn layered_search(
    f: &FiniteMap,
    g: &FiniteMap,
    k_max: usize,
    node_budget: u64,
) -> (Option<Vec<Vec<u32>>>, u64, usize) {
    let dom = f.domain();
    let cod = f.codomain();
    let n = dom.len();
    let mut nodes: u64 = 0;
    for k in 1..=k_max {
        if k == 1 {
            if one_step_violation(dom, cod, f.assign(), g.assign()).is_none() {
                return (
                    Some(vec![f.assign().to_vec(), g.assign().to_vec()]),
                    nodes,
                    1,
                );
            }
            continue;
        }
        // Free layers 1..k-1; layer 0 is f, layer k is g.
        let mut layers: Vec<Vec<u32>> = vec![vec![u32::MAX; n]; k + 1];
        layers[0] = f.assign().to_vec();
        layers[k] = g.assign().to_vec();
        fn feasible(
            dom: &ProximitySpace,
            cod: &ProximitySpace,
            layers: &[Vec<u32>],
            layer: usize,
            point: usize,
            v: u32,
            last_free: usize,
        ) -> bool {
            let prev = &layers[layer - 1];
            if !cod.near(prev[point] as usize, v as usize) {
                return false;
            }
            for &y in dom.neighbors(point) {
                let y = y as usize;
                if !cod.near(prev[y] as usize, v as usize) {
                    return false;
                }
                let cur = layers[layer][y];
                if cur != u32::MAX && !cod.near(v as usize, cur as usize) {
                    return false;
                }
            }
            if layer == last_free {
                let next = &layers[layer + 1];
                if !cod.near(v as usize, next[point] as usize) {
                    return false;
                }
                for &y in dom.neighbors(point) {
                    if !cod.near(v as usize, next[y as usize] as usize) {
                        return false;
                    }
                }
            }
            true
        }
        // Depth-first over (layer, point) slots.
        let total_slots = (k - 1) * n;
        let mut slot = 0usize;
        let mut choice: Vec<u32> = vec![0; total_slots];
        let mut overrun = false;
        'dfs: loop {
            if slot == total_slots {
                let solution = layers.clone();
                return (Some(solution), nodes, k);
            }
            let layer = 1 + slot / n;
            let point = slot % n;
            let start = choice[slot];
            let mut placed = false;
            for v in start..cod.len() as u32 {
                nodes += 1;
                if nodes >= node_budget {
                    overrun = true;
                    break 'dfs;
                }
                if feasible(dom, cod, &layers, layer, point, v, k - 1) {
                    layers[layer][point] = v;
                    choice[slot] = v + 1;
                    placed = true;
                    break;
                }
            }
            if placed {
                slot += 1;
                if slot < total_slots {
                    choice[slot] = 0;
                }
            } else {
                layers[layer][point] = u32::MAX;
                if slot == 0 {
                    break 'dfs;
                }
                choice[slot] = 0;
                slot -= 1;
                let l = 1 + slot / n;
                let p = slot % n;
                layers[l][p] = u32::MAX;
            }
        }
        if overrun {
            return (None, nodes, k);
        }
    }
    (None, nodes, k_max)
}

fn certificate(f: &FiniteMap, layers: Vec<Vec<u32>>) -> HomotopyCertificate {
    HomotopyCertificate {
        domain: f.domain().clone(),
        codomain: f.codomain().clone(),
        layers,
    }
}

/// Decides whether two pc-maps are homotopic.
pub fn homotopic(f: &FiniteMap, g: &FiniteMap, budget: &Budget) -> Result<HomotopyVerdict> {
    if !f.same_signature(g) {
        return Err(Error::SignatureMismatch);
    }
    f.require_pc()?;
    g.require_pc()?;
    if f.assign() == g.assign() {
        return Ok(HomotopyVerdict::Good(certificate(
            f,
            vec![f.assign().to_vec()],
        )));
    }
    let dist = f.codomain().distance_table();
    for (a, b, reverse) in [(f, g, false), (g, f, true)] {
        if let Some(mut layers) = geodesic_chain(a, b, &dist) {
            if reverse {
                layers.reverse();
            }
            let cert = certificate(f, layers);
            if verify_homotopy(&cert, f, g).is_ok() {
                return Ok(HomotopyVerdict::Good(cert));
            }
        }
    }
    if let Some(evidence) = walk_mismatch(f, g) {
        return Ok(HomotopyVerdict::NotGood(NonHomotopyProof::Obstruction(
            evidence,
        )));
    }
    let states = match reachability(f, g, budget.max_states) {
        ReachOutcome::Found(layers) => {
            let cert = certificate(f, layers);
            debug_assert!(verify_homotopy(&cert, f, g).is_ok());
            return Ok(HomotopyVerdict::Good(cert));
        }
        ReachOutcome::Exhausted { states } => {
            return Ok(HomotopyVerdict::NotGood(
                NonHomotopyProof::ExhaustedComponent {
                    states_visited: states,
                },
            ));
        }
        ReachOutcome::BudgetOut { states } => states,
    };
    let k_max = budget.layers_for(f.codomain());
    let (found, _nodes, deepest) = layered_search(f, g, k_max, budget.max_states);
    if let Some(layers) = found {
        let cert = certificate(f, layers);
        debug_assert!(verify_homotopy(&cert, f, g).is_ok());
        return Ok(HomotopyVerdict::Good(cert));
    }
    Ok(HomotopyVerdict::Unknown(BudgetNote {
        states_visited: states,
        max_layers_tried: deepest,
    }))
}

/// Contractibility: is the identity homotopic to a constant? Constants are
/// tried in canonical point order; the witness is the first constant with
/// a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contractibility {
    pub verdict: HomotopyVerdict,
    /// Index of the constant's target point when the verdict is good.
    pub witness: Option<usize>,
}

pub fn contractible(space: &Arc<ProximitySpace>, budget: &Budget) -> Result<Contractibility> {
    let id = FiniteMap::identity(space.clone());
    let dist = space.distance_table();
    for target in 0..space.len() {
        let constant = FiniteMap::constant(space.clone(), space.clone(), target)?;
        if let Some(layers) = geodesic_chain(&id, &constant, &dist) {
            let cert = certificate(&id, layers);
            if verify_homotopy(&cert, &id, &constant).is_ok() {
                return Ok(Contractibility {
                    verdict: HomotopyVerdict::Good(cert),
                    witness: Some(target),
                });
            }
        }
    }
    // All constants have the same walk sums (zero), so one probe decides.
    let const0 = FiniteMap::constant(space.clone(), space.clone(), 0)?;
    if let Some(evidence) = walk_mismatch(&id, &const0) {
        return Ok(Contractibility {
            verdict: HomotopyVerdict::NotGood(NonHomotopyProof::Obstruction(evidence)),
            witness: None,
        });
    }
    // Images can only move within their nearness component, so either the
    // space is connected and every constant shares the identity's
    // reachability class with every other, or it is disconnected and no
    // constant is reachable at all. One search against the first constant
    // decides both cases.
    match reachability(&id, &const0, budget.max_states) {
        ReachOutcome::Found(layers) => {
            let cert = certificate(&id, layers);
            debug_assert!(verify_homotopy(&cert, &id, &const0).is_ok());
            Ok(Contractibility {
                verdict: HomotopyVerdict::Good(cert),
                witness: Some(0),
            })
        }
        ReachOutcome::Exhausted { states } => Ok(Contractibility {
            verdict: HomotopyVerdict::NotGood(NonHomotopyProof::ExhaustedComponent {
                states_visited: states,
            }),
            witness: None,
        }),
        ReachOutcome::BudgetOut { states } => Ok(Contractibility {
            verdict: HomotopyVerdict::Unknown(BudgetNote {
                states_visited: states,
                max_layers_tried: 0,
            }),
            witness: None,
        }),
    }
}
