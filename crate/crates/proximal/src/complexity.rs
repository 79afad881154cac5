//! Cover-based invariants: goodness of subsets, homotopic distance with
//! its higher and relative forms, the projection characterizations of
//! motion-planning complexity, section genus, and fiber homotopy
//! equivalence.
//!
//! Everything reduces to one covering pattern: a subset property that is
//! closed under restriction (goodness of a subset, existence of a pc
//! section over a piece), a greedy pass realizing an upper bound, and an
//! iterative-deepening exact search that closes the gap when node budgets
//! allow. Every query verdict is memoized under a canonical key, and the
//! closure shortcuts (supersets of good sets stay good downward, subsets
//! of bad sets stay bad upward) keep repeat queries cheap.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homotopy::{spaces_eq, subspace_with_members, FiniteMap, HomotopyCertificate};
use crate::search::{homotopic, Budget, HomotopyVerdict};
use crate::space::{ProximitySpace, DEFAULT_PRODUCT_CAP};

/// Node cap for the exact cover search, shared across deepening levels.
const COVER_NODE_CAP: u64 = 200_000;

/// The deepening search enumerates good sets, whose count can grow with
/// two to the carrier size, so it only runs on small carriers. Larger
/// carriers settle through the greedy passes and the two-piece hunt.
const EXACT_CLOSE_MAX: usize = 16;

/// Number of restart orders in the two-piece hunt.
const TWO_COVER_STARTS: usize = 160;

/// A hunt start that keeps hitting unresolved queries is unlikely to
/// close, so it is abandoned early, and the hunt as a whole stops once
/// unresolved queries or distinct probes pile up across starts.
const HUNT_START_UNKNOWNS: usize = 48;
const HUNT_TOTAL_UNKNOWNS: usize = 2_000;
const HUNT_PROBE_CAP: usize = 30_000;

/// State allowance for lean probes. Enough for exhaustive settling of
/// small map components; anything bigger resolves by walking or by
/// obstruction or not at all in lean phases.
const LEAN_STATES: u64 = 2_000;

/// One-swap repairs allowed per hunt start. A point rejected by both
/// pieces can still land when some settled point moves across, and a
/// few dozen such exchanges reshape a greedy blob into a viable piece.
const HUNT_REPAIRS: usize = 24;

/// A cover run spends its state budget across many subset queries, so
/// each query gets a slice of the whole. The floor keeps tiny budgets
/// usable; queries settled by walking or by obstruction spend almost
/// nothing regardless.
const QUERY_SHARE: u64 = 64;
const QUERY_FLOOR: u64 = 50_000;

fn per_query_budget(budget: &Budget) -> Budget {
    Budget {
        max_states: (budget.max_states / QUERY_SHARE).max(QUERY_FLOOR),
        max_layers: budget.max_layers,
    }
}

/// Map-pair cap for the fiber equivalence scan.
const FIBER_PAIR_CAP: u64 = 4096;

/// A cover count: finite, or the explicit no-cover marker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extent {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extent::Finite(k) => write!(f, "{k}"),
            Extent::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryState {
    Good,
    NotGood,
    Unknown,
}

/// Outcome of one memoized subset query, reported in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryStatus {
    pub members: Vec<String>,
    pub state: QueryState,
}

/// Witness that one cover piece has the covering property.
#[derive(Debug, Clone)]
pub enum PieceWitness {
    /// One certificate per non-hub map, chaining it to the hub on the
    /// piece subspace.
    Homotopies(Vec<HomotopyCertificate>),
    /// A pc section of the projection over the piece subspace.
    Section(FiniteMap),
}

#[derive(Debug, Clone)]
pub struct CoverPiece {
    pub members: Vec<String>,
    pub member_indices: Vec<usize>,
    pub subspace: Arc<ProximitySpace>,
    pub witness: PieceWitness,
}

/// Interval answer for a minimum-cover quantity.
///
/// `lower <= upper` always holds. `cover_search_complete` means the
/// search settled the value, so the interval is collapsed to
/// `lower == upper`; `unknown_queries` counts subset queries still
/// unresolved at the final budget. The pieces realize `upper` whenever
/// it is finite.
#[derive(Debug, Clone)]
pub struct CoverResult {
    pub lower: Extent,
    pub upper: Extent,
    pub pieces: Vec<CoverPiece>,
    pub statuses: Vec<QueryStatus>,
    pub unknown_queries: usize,
    pub cover_search_complete: bool,
    pub budget: Budget,
}

pub type DistanceResult = CoverResult;
pub type GenusResult = CoverResult;

impl CoverResult {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn exact(&self) -> Option<Extent> {
        self.is_exact().then_some(self.upper)
    }

    pub fn exact_finite(&self) -> Option<usize> {
        match self.exact() {
            Some(Extent::Finite(k)) => Some(k),
            _ => None,
        }
    }

    pub fn render(&self) -> String {
        if self.is_exact() {
            self.upper.to_string()
        } else {
            format!("[{},{}]", self.lower, self.upper)
        }
    }
}

/// Compares two interval results when the intervals are tight enough:
/// `Some(true)` when left <= right surely, `Some(false)` when left >
/// right surely, `None` when the intervals overlap inconclusively.
pub fn surely_le(left: &CoverResult, right: &CoverResult) -> Option<bool> {
    if left.upper <= right.lower {
        return Some(true);
    }
    if left.lower > right.upper {
        return Some(false);
    }
    None
}

/// One subset-property decision procedure. Implementations must be
/// restriction-closed: the property on a set implies it on every
/// nonempty subset.
trait SubsetProbe {
    fn probe(
        &mut self,
        sub: &Arc<ProximitySpace>,
        idx: &[usize],
    ) -> Result<(QueryState, Option<PieceWitness>)>;

    /// Lean mode trades conclusiveness for speed on the search phases
    /// that only need cheap steering; definite verdicts stay sound.
    fn set_lean(&mut self, _lean: bool) {}

    /// Boost mode lifts the per-query budget slice to the full caller
    /// budget for the few queries whose answer decides the run.
    fn set_boost(&mut self, _boost: bool) {}
}

struct CoverEngine<'a, P: SubsetProbe> {
    base: &'a Arc<ProximitySpace>,
    probe: P,
    /// Verdict per queried set, with the flag recording whether the
    /// verdict came from a lean probe; lean Unknowns are retried when
    /// the same set is queried at full strength.
    memo: BTreeMap<Vec<u32>, (QueryState, bool)>,
    /// Masks of sets probed Good and NotGood directly, for constant-time
    /// closure checks. Only kept while the carrier fits in a mask.
    good_masks: Vec<u128>,
    bad_masks: Vec<u128>,
    /// Witnesses of directly probed Good sets, kept as an antichain: a
    /// new witness evicts witnesses of its subsets, so every Good set
    /// keeps some witnessed superset to restrict from.
    witnesses: BTreeMap<Vec<u32>, (Arc<ProximitySpace>, Vec<usize>, PieceWitness)>,
    /// Fresh probes that came back unresolved; steers search heuristics.
    unknowns: usize,
    /// Every unresolved answer handed out, memo hits included; guards
    /// completeness claims.
    unknown_hits: usize,
    lean: bool,
}

fn subset_key(members: &BTreeSet<usize>) -> Vec<u32> {
    members.iter().map(|&i| i as u32).collect()
}

fn key_mask(key: &[u32], carrier: usize) -> Option<u128> {
    if carrier > 128 {
        return None;
    }
    Some(key.iter().fold(0u128, |m, &i| m | 1 << i))
}

fn key_subset_of(inner: &[u32], outer: &[u32]) -> bool {
    let mut it = outer.iter();
    inner.iter().all(|x| it.by_ref().any(|y| y == x))
}

impl<'a, P: SubsetProbe> CoverEngine<'a, P> {
    fn new(base: &'a Arc<ProximitySpace>, probe: P) -> Self {
        CoverEngine {
            base,
            probe,
            memo: BTreeMap::new(),
            good_masks: Vec::new(),
            bad_masks: Vec::new(),
            witnesses: BTreeMap::new(),
            unknowns: 0,
            unknown_hits: 0,
            lean: false,
        }
    }

    fn set_lean(&mut self, lean: bool) {
        self.lean = lean;
        self.probe.set_lean(lean);
    }

    fn set_boost(&mut self, boost: bool) {
        self.probe.set_boost(boost);
    }

    fn query(&mut self, members: &BTreeSet<usize>) -> Result<QueryState> {
        let key = subset_key(members);
        if let Some(&(state, was_lean)) = self.memo.get(&key) {
            let retry = state == QueryState::Unknown && was_lean && !self.lean;
            if !retry {
                if state == QueryState::Unknown {
                    self.unknown_hits += 1;
                }
                return Ok(state);
            }
        }
        // Closure shortcuts: a subset of a good set is good, a superset
        // of a bad set is bad. Derived verdicts are not pushed onto the
        // mask lists, where they would be redundant.
        if let Some(mask) = key_mask(&key, self.base.len()) {
            if self.bad_masks.iter().any(|&b| b & !mask == 0) {
                self.memo.insert(key, (QueryState::NotGood, false));
                return Ok(QueryState::NotGood);
            }
            if self.good_masks.iter().any(|&g| mask & !g == 0) {
                self.memo.insert(key, (QueryState::Good, false));
                return Ok(QueryState::Good);
            }
        }
        let (sub, idx) = subspace_with_members(self.base, members)?;
        let (state, witness) = self.probe.probe(&sub, &idx)?;
        match state {
            QueryState::Unknown => {
                self.unknowns += 1;
                self.unknown_hits += 1;
            }
            QueryState::Good => {
                if let Some(mask) = key_mask(&key, self.base.len()) {
                    self.good_masks.push(mask);
                }
            }
            QueryState::NotGood => {
                if let Some(mask) = key_mask(&key, self.base.len()) {
                    self.bad_masks.push(mask);
                }
            }
        }
        if let Some(w) = witness {
            let covered = self
                .witnesses
                .keys()
                .any(|other| key_subset_of(&key, other));
            if !covered {
                self.witnesses
                    .retain(|other, _| !key_subset_of(other, &key));
                self.witnesses.insert(key.clone(), (sub, idx, w));
            }
        }
        self.memo.insert(key, (state, self.lean));
        Ok(state)
    }

    /// Counts directly probed good sets containing the point, used to
    /// pick the most constrained branch point.
    fn good_support(&self, x: usize) -> usize {
        self.good_masks
            .iter()
            .filter(|&&g| g >> x & 1 == 1)
            .count()
    }

    /// Builds the reportable piece for a set already known Good. When the
    /// witness was evicted or the verdict came through the closure
    /// shortcut, it is derived by restricting a witnessed superset.
    fn piece(&self, members: &BTreeSet<usize>) -> Result<CoverPiece> {
        let key = subset_key(members);
        let names = |idx: &[usize]| -> Vec<String> {
            idx.iter().map(|&i| self.base.name(i).to_string()).collect()
        };
        if let Some((sub, idx, witness)) = self.witnesses.get(&key) {
            return Ok(CoverPiece {
                members: names(idx),
                member_indices: idx.clone(),
                subspace: sub.clone(),
                witness: witness.clone(),
            });
        }
        for (other, (_, big_idx, witness)) in &self.witnesses {
            if !key_subset_of(&key, other) {
                continue;
            }
            let (sub, idx) = subspace_with_members(self.base, members)?;
            // Positions of the piece members inside the superset piece.
            let rel: Vec<usize> = idx
                .iter()
                .map(|i| big_idx.iter().position(|j| j == i).expect("member present"))
                .collect();
            let witness = match witness {
                PieceWitness::Homotopies(certs) => PieceWitness::Homotopies(
                    certs.iter().map(|c| c.restrict(&sub, &rel)).collect(),
                ),
                PieceWitness::Section(s) => PieceWitness::Section(s.restrict(&sub, &rel)),
            };
            return Ok(CoverPiece {
                members: names(&idx),
                member_indices: idx,
                subspace: sub,
                witness,
            });
        }
        Err(Error::Invalid(format!(
            "no witness recorded for piece {:?}",
            self.base.set_names(members)
        )))
    }

    fn statuses(&self) -> Vec<QueryStatus> {
        self.memo
            .iter()
            .map(|(key, &(state, _))| QueryStatus {
                members: key
                    .iter()
                    .map(|&i| self.base.name(i as usize).to_string())
                    .collect(),
                state,
            })
            .collect()
    }

    /// Queries whose final verdict stayed unresolved.
    fn unresolved(&self) -> usize {
        self.memo
            .values()
            .filter(|&&(state, _)| state == QueryState::Unknown)
            .count()
    }
}

enum LevelOut {
    Found(Vec<BTreeSet<usize>>),
    Exhausted,
    Aborted,
}

enum MaximalOut {
    Sets(Vec<BTreeSet<usize>>),
    Aborted,
}

/// All maximal good sets containing `seed`, enumerated by ascending
/// extension (every good set has a unique ascending build, and all its
/// prefixes are good by downward closure, so the enumeration is
/// complete and duplicate-free).
fn maximal_good_containing<P: SubsetProbe>(
    engine: &mut CoverEngine<'_, P>,
    seed: usize,
    n: usize,
    nodes: &mut u64,
) -> Result<MaximalOut> {
    let mut out = Vec::new();
    let mut stack: Vec<(BTreeSet<usize>, usize)> = vec![([seed].into(), 0)];
    while let Some((set, min_next)) = stack.pop() {
        *nodes += 1;
        if *nodes > COVER_NODE_CAP {
            return Ok(MaximalOut::Aborted);
        }
        let mut extendable = false;
        let mut children = Vec::new();
        for y in 0..n {
            if set.contains(&y) {
                continue;
            }
            let mut trial = set.clone();
            trial.insert(y);
            if engine.query(&trial)? == QueryState::Good {
                extendable = true;
                if y >= min_next {
                    children.push((trial, y + 1));
                }
            }
        }
        if !extendable {
            out.push(set);
        } else {
            stack.extend(children);
        }
    }
    // Larger pieces first, ties broken lexicographically.
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    out.dedup();
    Ok(MaximalOut::Sets(out))
}

fn cover_level<P: SubsetProbe>(
    engine: &mut CoverEngine<'_, P>,
    n: usize,
    k: usize,
    nodes: &mut u64,
) -> Result<LevelOut> {
    fn dfs<P: SubsetProbe>(
        engine: &mut CoverEngine<'_, P>,
        n: usize,
        k: usize,
        covered: u64,
        chosen: &mut Vec<BTreeSet<usize>>,
        nodes: &mut u64,
    ) -> Result<LevelOut> {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        if covered == full {
            return Ok(LevelOut::Found(chosen.clone()));
        }
        if chosen.len() == k {
            return Ok(LevelOut::Exhausted);
        }
        *nodes += 1;
        if *nodes > COVER_NODE_CAP {
            return Ok(LevelOut::Aborted);
        }
        // Branch on the uncovered point with the fewest known good
        // supersets; ties go to the smallest index.
        let branch = (0..n)
            .filter(|&x| covered >> x & 1 == 0)
            .min_by_key(|&x| (engine.good_support(x), x))
            .expect("some point uncovered");
        let candidates = match maximal_good_containing(engine, branch, n, nodes)? {
            MaximalOut::Sets(s) => s,
            MaximalOut::Aborted => return Ok(LevelOut::Aborted),
        };
        for piece in candidates {
            let mask = piece.iter().fold(0u64, |m, &i| m | 1 << i);
            chosen.push(piece);
            match dfs(engine, n, k, covered | mask, chosen, nodes)? {
                LevelOut::Found(c) => return Ok(LevelOut::Found(c)),
                LevelOut::Aborted => return Ok(LevelOut::Aborted),
                LevelOut::Exhausted => {
                    chosen.pop();
                }
            }
        }
        Ok(LevelOut::Exhausted)
    }
    let mut chosen = Vec::new();
    dfs(engine, n, k, 0, &mut chosen, nodes)
}

/// Grows a maximal good piece from the seed, trying extension candidates
/// in the given order.
fn grow_piece<P: SubsetProbe>(
    engine: &mut CoverEngine<'_, P>,
    seed: usize,
    order: &[usize],
) -> Result<BTreeSet<usize>> {
    let mut piece: BTreeSet<usize> = [seed].into();
    for &cand in order {
        if piece.contains(&cand) {
            continue;
        }
        let mut trial = piece.clone();
        trial.insert(cand);
        if engine.query(&trial)? == QueryState::Good {
            piece = trial;
        }
    }
    Ok(piece)
}

/// One greedy pass: grow a maximal good piece from the lowest uncovered
/// point until the carrier is covered. Uncovered points are offered
/// first so successive pieces claim new ground before fattening.
fn greedy_cover<P: SubsetProbe>(
    engine: &mut CoverEngine<'_, P>,
    n: usize,
    ascending: bool,
) -> Result<Vec<BTreeSet<usize>>> {
    let pass: Vec<usize> = if ascending {
        (0..n).collect()
    } else {
        (0..n).rev().collect()
    };
    let mut cover: Vec<BTreeSet<usize>> = Vec::new();
    let mut covered = vec![false; n];
    while let Some(&seed) = pass.iter().find(|&&i| !covered[i]) {
        let order: Vec<usize> = pass
            .iter()
            .filter(|&&i| !covered[i])
            .chain(pass.iter().filter(|&&i| covered[i]))
            .copied()
            .collect();
        let piece = grow_piece(engine, seed, &order)?;
        for &i in &piece {
            covered[i] = true;
        }
        cover.push(piece);
    }
    Ok(cover)
}

/// Fixed-seed generator for the shuffled hunt orders; a local one keeps
/// runs reproducible independent of any dependency's algorithm choices.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn shuffled_order(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    let mut state = seed.wrapping_mul(0x2545_f491_4f6c_dd1d).wrapping_add(1);
    for i in (1..n).rev() {
        let j = (splitmix64(&mut state) % (i as u64 + 1)) as usize;
        order.swap(i, j);
    }
    order
}

/// Points sorted by hop distance from the seed in the nearness graph,
/// ties by index; unreachable points trail in index order. Growth along
/// this order builds compact connected pieces.
fn ball_order(space: &ProximitySpace, seed: usize) -> Vec<usize> {
    let n = space.len();
    let mut dist = vec![usize::MAX; n];
    dist[seed] = 0;
    let mut frontier = vec![seed];
    let mut hops = 0usize;
    while !frontier.is_empty() {
        hops += 1;
        let mut next = Vec::new();
        for &x in &frontier {
            for y in 0..n {
                if y != x && dist[y] == usize::MAX && space.near(x, y) {
                    dist[y] = hops;
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (dist[x], x));
    order
}

/// Offers the point to the piece; the piece grows only when the result
/// stays good.
fn try_join<P: SubsetProbe>(
    engine: &mut CoverEngine<'_, P>,
    piece: &mut BTreeSet<usize>,
    x: usize,
) -> Result<bool> {
    let mut trial = piece.clone();
    trial.insert(x);
    if engine.query(&trial)? == QueryState::Good {
        *piece = trial;
        return Ok(true);
    }
    Ok(false)
}

/// One-swap repair: settle `x` into the donor by moving some settled
/// donor point over to the receiver, provided both results stay good.
fn try_swap<P: SubsetProbe>(
    engine: &mut CoverEngine<'_, P>,
    donor: &mut BTreeSet<usize>,
    receiver: &mut BTreeSet<usize>,
    x: usize,
) -> Result<bool> {
    let settled: Vec<usize> = donor.iter().copied().collect();
    for y in settled {
        let mut donor_next = donor.clone();
        donor_next.remove(&y);
        donor_next.insert(x);
        if engine.query(&donor_next)? != QueryState::Good {
            continue;
        }
        let mut receiver_next = receiver.clone();
        receiver_next.insert(y);
        if engine.query(&receiver_next)? == QueryState::Good {
            *donor = donor_next;
            *receiver = receiver_next;
            return Ok(true);
        }
    }
    Ok(false)
}

/// Hunts for a two-piece cover by two-colored growth over a spread of
/// candidate orders: rotations both ways, balls around every seed, and
/// seeded shuffles. Each point joins the first piece that stays good;
/// points rejected by both get a bounded number of one-swap repairs and
/// are requeued otherwise. Starts drowning in unresolved queries are
/// dropped, as is the whole hunt once its probe bill runs out. The
/// whole hunt probes in lean mode: it needs volume more than depth, and
/// a found cover is checked by its own certificates anyway.
fn two_cover_hunt<P: SubsetProbe>(
    engine: &mut CoverEngine<'_, P>,
    n: usize,
) -> Result<Option<Vec<BTreeSet<usize>>>> {
    engine.set_lean(true);
    let hunted = hunt_lean(engine, n);
    engine.set_lean(false);
    hunted
}

fn hunt_lean<P: SubsetProbe>(
    engine: &mut CoverEngine<'_, P>,
    n: usize,
) -> Result<Option<Vec<BTreeSet<usize>>>> {
    let unknowns_at_entry = engine.unknowns;
    let probes_at_entry = engine.memo.len();
    for start in 0..TWO_COVER_STARTS {
        if engine.unknowns - unknowns_at_entry > HUNT_TOTAL_UNKNOWNS
            || engine.memo.len() - probes_at_entry > HUNT_PROBE_CAP
        {
            break;
        }
        let param = start / 4;
        let order = match start % 4 {
            0 => {
                let offset = param % n;
                (offset..n).chain(0..offset).collect::<Vec<_>>()
            }
            1 => {
                let offset = param % n;
                (offset..n).chain(0..offset).rev().collect::<Vec<_>>()
            }
            2 => ball_order(engine.base, param % n),
            _ => shuffled_order(n, param as u64),
        };
        let unknowns_at_start = engine.unknowns;
        let mut first: BTreeSet<usize> = BTreeSet::new();
        let mut second: BTreeSet<usize> = BTreeSet::new();
        let mut pending: VecDeque<usize> = order.iter().copied().collect();
        let mut repairs = HUNT_REPAIRS;
        let mut stalled = 0usize;
        let mut lost = false;
        while let Some(x) = pending.pop_front() {
            if engine.unknowns - unknowns_at_start > HUNT_START_UNKNOWNS {
                lost = true;
                break;
            }
            if try_join(engine, &mut first, x)? || try_join(engine, &mut second, x)? {
                stalled = 0;
                continue;
            }
            if repairs > 0
                && (try_swap(engine, &mut first, &mut second, x)?
                    || try_swap(engine, &mut second, &mut first, x)?)
            {
                repairs -= 1;
                stalled = 0;
                continue;
            }
            // Requeue; give up once a whole round passes with no progress.
            pending.push_back(x);
            stalled += 1;
            if stalled >= pending.len() {
                lost = true;
                break;
            }
        }
        if !lost && !second.is_empty() {
            return Ok(Some(vec![first, second]));
        }
    }
    Ok(None)
}

fn assemble<P: SubsetProbe>(
    engine: &CoverEngine<'_, P>,
    lower: Extent,
    upper: Extent,
    cover: Option<&[BTreeSet<usize>]>,
    complete: bool,
    budget: &Budget,
) -> Result<CoverResult> {
    let pieces = match cover {
        Some(sets) => sets
            .iter()
            .map(|s| engine.piece(s))
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    Ok(CoverResult {
        lower,
        upper,
        pieces,
        statuses: engine.statuses(),
        unknown_queries: engine.unresolved(),
        cover_search_complete: complete,
        budget: *budget,
    })
}

/// Checks caller-supplied candidate covers, returning the first one
/// whose pieces all verify. A wrong candidate costs its probes and
/// nothing else; correctness never depends on the guess. The few seed
/// queries get the full caller budget instead of the per-query slice,
/// since each answer can decide the whole run.
fn seeded_cover<P: SubsetProbe>(
    engine: &mut CoverEngine<'_, P>,
    seeds: &[Vec<BTreeSet<usize>>],
) -> Result<Option<Vec<BTreeSet<usize>>>> {
    if seeds.is_empty() {
        return Ok(None);
    }
    engine.set_boost(true);
    let out = (|| {
        'candidate: for cand in seeds {
            if cand.is_empty() || cand.iter().any(|piece| piece.is_empty()) {
                continue;
            }
            for piece in cand {
                if engine.query(piece)? != QueryState::Good {
                    continue 'candidate;
                }
            }
            return Ok(Some(cand.clone()));
        }
        Ok(None)
    })();
    engine.set_boost(false);
    out
}

/// The shared covering computation over any restriction-closed probe.
fn run_cover<P: SubsetProbe>(
    engine: &mut CoverEngine<'_, P>,
    budget: &Budget,
    seeds: &[Vec<BTreeSet<usize>>],
) -> Result<CoverResult> {
    let n = engine.base.len();
    let full_set: BTreeSet<usize> = (0..n).collect();
    let mut lower = match engine.query(&full_set)? {
        QueryState::Good => {
            let cover = [full_set];
            return assemble(engine, Extent::Finite(1), Extent::Finite(1), Some(&cover[..]), true, budget);
        }
        QueryState::NotGood => 2usize,
        QueryState::Unknown => 1usize,
    };
    let mut singles_good = true;
    for x in 0..n {
        match engine.query(&[x].into())? {
            QueryState::NotGood => {
                // Downward closure: any piece containing x would be good
                // on {x} too, so no cover exists at all.
                return assemble(engine, Extent::Infinite, Extent::Infinite, None, true, budget);
            }
            QueryState::Unknown => singles_good = false,
            QueryState::Good => {}
        }
    }
    if !singles_good {
        return assemble(engine, Extent::Finite(lower), Extent::Infinite, None, false, budget);
    }
    // Two pieces are the common answer once the full carrier fails, so
    // verified seed candidates and the dedicated hunt run before any
    // multi-piece pass.
    let mut found = seeded_cover(engine, seeds)?;
    if found.is_none() {
        found = two_cover_hunt(engine, n)?;
    }
    let mut best: Vec<BTreeSet<usize>> = match found {
        Some(two) => two,
        None => {
            let mut fallback: Vec<BTreeSet<usize>> = (0..n).map(|x| [x].into()).collect();
            for ascending in [true, false] {
                let cover = greedy_cover(engine, n, ascending)?;
                if cover.len() < fallback.len() {
                    fallback = cover;
                }
            }
            fallback
        }
    };
    let mut upper = best.len();
    if lower == upper {
        return assemble(engine, Extent::Finite(lower), Extent::Finite(upper), Some(best.as_slice()), true, budget);
    }
    // Exact close by iterative deepening on the cover size. A found
    // cover is sound on its own; raising the lower bound additionally
    // needs the level exhausted without one unresolved answer reaching
    // it: an unknown that steered the level search away from a branch
    // could be hiding the smaller cover. Deepening queries run at full
    // strength, with lean unknowns from the hunt retried on contact, so
    // only unknown answers handed out from here on can taint the proof.
    let mut complete = false;
    if n <= EXACT_CLOSE_MAX {
        let hits_before = engine.unknown_hits;
        let mut nodes = 0u64;
        let mut aborted = false;
        let mut k = lower;
        while k < upper {
            match cover_level(engine, n, k, &mut nodes)? {
                LevelOut::Found(cover) => {
                    best = cover;
                    upper = k;
                    if lower == k {
                        complete = true;
                    }
                    break;
                }
                LevelOut::Exhausted => {
                    if engine.unknown_hits > hits_before {
                        aborted = true;
                        break;
                    }
                    lower = k + 1;
                }
                LevelOut::Aborted => {
                    aborted = true;
                    break;
                }
            }
            k += 1;
        }
        if !aborted && lower == upper {
            complete = true;
        }
    }
    assemble(
        engine,
        Extent::Finite(lower),
        Extent::Finite(upper),
        Some(best.as_slice()),
        complete,
        budget,
    )
}

struct DistanceProbe<'a> {
    maps: &'a [FiniteMap],
    budget: Budget,
    full: Budget,
    lean: bool,
    boost: bool,
}

impl SubsetProbe for DistanceProbe<'_> {
    fn probe(
        &mut self,
        sub: &Arc<ProximitySpace>,
        idx: &[usize],
    ) -> Result<(QueryState, Option<PieceWitness>)> {
        let budget = if self.lean {
            Budget {
                max_states: self.budget.max_states.min(LEAN_STATES),
                max_layers: self.budget.max_layers,
            }
        } else if self.boost {
            self.full
        } else {
            self.budget
        };
        let hub = self.maps[0].restrict(sub, idx);
        let mut certs = Vec::with_capacity(self.maps.len() - 1);
        let mut state = QueryState::Good;
        for map in &self.maps[1..] {
            let other = map.restrict(sub, idx);
            match homotopic(&hub, &other, &budget)? {
                HomotopyVerdict::Good(cert) => certs.push(cert),
                HomotopyVerdict::NotGood(_) => {
                    state = QueryState::NotGood;
                    break;
                }
                HomotopyVerdict::Unknown(_) => state = QueryState::Unknown,
            }
        }
        let witness = (state == QueryState::Good).then_some(PieceWitness::Homotopies(certs));
        Ok((state, witness))
    }

    fn set_lean(&mut self, lean: bool) {
        self.lean = lean;
    }

    fn set_boost(&mut self, boost: bool) {
        self.boost = boost;
    }
}

fn validate_family(maps: &[FiniteMap]) -> Result<()> {
    if maps.len() < 2 {
        return Err(Error::EmptyMapList);
    }
    for map in maps {
        map.require_pc()?;
    }
    for map in &maps[1..] {
        if !maps[0].same_signature(map) {
            return Err(Error::SignatureMismatch);
        }
    }
    Ok(())
}

/// Decides whether all maps restrict to pairwise homotopic maps on the
/// given subset, returning the hub certificates on success.
pub struct GoodSubset {
    pub state: QueryState,
    pub members: Vec<String>,
    pub subspace: Arc<ProximitySpace>,
    pub certificates: Vec<HomotopyCertificate>,
}

pub fn good_subset(
    maps: &[FiniteMap],
    members: &BTreeSet<usize>,
    budget: &Budget,
) -> Result<GoodSubset> {
    if maps.is_empty() {
        return Err(Error::EmptyMapList);
    }
    for map in maps {
        map.require_pc()?;
    }
    for map in &maps[1..] {
        if !maps[0].same_signature(map) {
            return Err(Error::SignatureMismatch);
        }
    }
    let (sub, idx) = subspace_with_members(maps[0].domain(), members)?;
    let mut probe = DistanceProbe {
        maps,
        budget: *budget,
        full: *budget,
        lean: false,
        boost: false,
    };
    let (state, witness) = probe.probe(&sub, &idx)?;
    let certificates = match witness {
        Some(PieceWitness::Homotopies(certs)) => certs,
        _ => Vec::new(),
    };
    Ok(GoodSubset {
        state,
        members: idx.iter().map(|&i| maps[0].domain().name(i).to_string()).collect(),
        subspace: sub,
        certificates,
    })
}

/// Minimum number of pieces covering the shared domain on which all maps
/// become pairwise homotopic.
pub fn distance(maps: &[FiniteMap], budget: &Budget) -> Result<DistanceResult> {
    distance_seeded(maps, budget, &[])
}

fn distance_seeded(
    maps: &[FiniteMap],
    budget: &Budget,
    seeds: &[Vec<BTreeSet<usize>>],
) -> Result<DistanceResult> {
    validate_family(maps)?;
    let dom = maps[0].domain().clone();
    let mut engine = CoverEngine::new(
        &dom,
        DistanceProbe {
            maps,
            budget: per_query_budget(budget),
            full: *budget,
            lean: false,
            boost: false,
        },
    );
    run_cover(&mut engine, budget, seeds)
}

/// Distance of the restrictions to a nonempty subset of the shared
/// domain.
pub fn relative_distance(
    maps: &[FiniteMap],
    subset: &BTreeSet<usize>,
    budget: &Budget,
) -> Result<DistanceResult> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    validate_family(maps)?;
    let (sub, idx) = subspace_with_members(maps[0].domain(), subset)?;
    let restricted: Vec<FiniteMap> = maps.iter().map(|m| m.restrict(&sub, &idx)).collect();
    distance(&restricted, budget)
}

/// The n projection maps from the n-fold power onto the base.
pub fn projections(
    space: &Arc<ProximitySpace>,
    n: usize,
    cap: usize,
) -> Result<(Arc<ProximitySpace>, Vec<FiniteMap>)> {
    let power = Arc::new(space.power(n, cap)?);
    let base = space.len();
    let maps = (0..n)
        .map(|slot| {
            let assign = (0..power.len())
                .map(|code| ProximitySpace::power_coordinate(code, base, n, slot) as u32)
                .collect();
            FiniteMap::new(power.clone(), space.clone(), assign)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((power, maps))
}

fn trivial_one(space: &Arc<ProximitySpace>, budget: &Budget) -> Result<DistanceResult> {
    let full: BTreeSet<usize> = (0..space.len()).collect();
    let (sub, idx) = subspace_with_members(space, &full)?;
    Ok(CoverResult {
        lower: Extent::Finite(1),
        upper: Extent::Finite(1),
        pieces: vec![CoverPiece {
            members: space.points().to_vec(),
            member_indices: idx,
            subspace: sub,
            witness: PieceWitness::Homotopies(Vec::new()),
        }],
        statuses: vec![QueryStatus {
            members: space.points().to_vec(),
            state: QueryState::Good,
        }],
        unknown_queries: 0,
        cover_search_complete: true,
        budget: *budget,
    })
}

/// Two-piece split candidates for the square of a cycle base: a band of
/// codomain windows that climbs two slots per column across the first
/// half of the ring and stays flat on the rest, plus its complement. The
/// climb leaves column gaps that give the deformation room to start; the
/// flat tail returns the window to its origin. Both pieces verify within
/// the provers' reach for rings of 6 and 8 points; larger rings would
/// only burn budget before the general search runs, so they get no
/// candidates.
fn cycle_square_seeds(space: &Arc<ProximitySpace>) -> Vec<Vec<BTreeSet<usize>>> {
    let Some(order) = space.cycle_order() else {
        return Vec::new();
    };
    let n = order.len();
    if !(n == 6 || n == 8) {
        return Vec::new();
    }
    let mut pos = vec![0usize; n];
    for (p, &idx) in order.iter().enumerate() {
        pos[idx] = p;
    }
    let half = n.div_ceil(2);
    let width = n / 2;
    let offset = |px: usize| if px < half { (2 * px) % n } else { 0 };
    let mut band = BTreeSet::new();
    let mut rest = BTreeSet::new();
    for ix in 0..n {
        for iy in 0..n {
            let code = ix * n + iy;
            if (pos[iy] + n - offset(pos[ix])) % n < width {
                band.insert(code);
            } else {
                rest.insert(code);
            }
        }
    }
    vec![vec![rest, band]]
}

/// Motion-planning complexity through the projection characterization:
/// the distance of the n power projections. n = 1 is trivially one piece
/// (a single map is self-homotopic everywhere).
pub fn tc(space: &Arc<ProximitySpace>, n: usize, budget: &Budget) -> Result<DistanceResult> {
    if n == 0 {
        return Err(Error::Invalid("projection count must be at least 1".into()));
    }
    if !space.is_connected() {
        return Err(Error::NotConnected);
    }
    if n == 1 {
        return trivial_one(space, budget);
    }
    let (_, maps) = projections(space, n, DEFAULT_PRODUCT_CAP)?;
    if n == 2 {
        return distance_seeded(&maps, budget, &cycle_square_seeds(space));
    }
    distance(&maps, budget)
}

/// Complexity of a map. The binary form runs on domain x codomain with
/// the pair (f after first projection, second projection); the higher
/// form runs on the n-fold domain power with f composed on every
/// projection.
pub fn tc_map(f: &FiniteMap, n: usize, budget: &Budget) -> Result<DistanceResult> {
    f.require_pc()?;
    if n < 2 {
        return Err(Error::Invalid("map complexity needs n >= 2".into()));
    }
    if n == 2 {
        let x = f.domain();
        let y = f.codomain();
        let prod = Arc::new(x.product(y, DEFAULT_PRODUCT_CAP)?);
        let m = y.len();
        let first: Vec<u32> = (0..prod.len()).map(|i| f.assign()[i / m]).collect();
        let second: Vec<u32> = (0..prod.len()).map(|i| (i % m) as u32).collect();
        let g1 = FiniteMap::new(prod.clone(), y.clone(), first)?;
        let g2 = FiniteMap::new(prod, y.clone(), second)?;
        distance(&[g1, g2], budget)
    } else {
        let (_, projs) = projections(f.domain(), n, DEFAULT_PRODUCT_CAP)?;
        let maps = projs
            .iter()
            .map(|p| f.compose(p))
            .collect::<Result<Vec<_>>>()?;
        distance(&maps, budget)
    }
}

struct SectionProbe<'a> {
    map: &'a FiniteMap,
    /// Sorted candidate preimages per codomain point.
    preimages: Vec<Vec<u32>>,
    node_cap: u64,
    lean: bool,
}

enum SolveOut {
    Found(Vec<u32>),
    Exhausted,
    Aborted,
}

impl SectionProbe<'_> {
    /// Lexicographically smallest section over the subspace, by
    /// backtracking with forward pruning of candidate preimages.
    fn solve(&self, sub: &ProximitySpace, idx: &[usize]) -> SolveOut {
        let m = idx.len();
        let dom = self.map.domain();
        let mut domains: Vec<Vec<u32>> = idx
            .iter()
            .map(|&q| self.preimages[q].clone())
            .collect();
        let mut chosen: Vec<u32> = Vec::with_capacity(m);
        let mut nodes = 0u64;
        fn step(
            sub: &ProximitySpace,
            dom: &ProximitySpace,
            domains: &mut Vec<Vec<u32>>,
            chosen: &mut Vec<u32>,
            nodes: &mut u64,
            cap: u64,
        ) -> SolveOut {
            let i = chosen.len();
            if i == domains.len() {
                return SolveOut::Found(chosen.clone());
            }
            let cands = domains[i].clone();
            for cand in cands {
                *nodes += 1;
                if *nodes > cap {
                    return SolveOut::Aborted;
                }
                // Prune every later variable near i down to the images
                // near the candidate; an emptied domain kills the branch.
                let saved = domains.clone();
                let mut dead = false;
                for j in (i + 1)..domains.len() {
                    if sub.near(i, j) {
                        domains[j].retain(|&x| dom.near(cand as usize, x as usize));
                        if domains[j].is_empty() {
                            dead = true;
                            break;
                        }
                    }
                }
                if !dead {
                    chosen.push(cand);
                    match step(sub, dom, domains, chosen, nodes, cap) {
                        SolveOut::Found(s) => return SolveOut::Found(s),
                        SolveOut::Aborted => return SolveOut::Aborted,
                        SolveOut::Exhausted => {
                            chosen.pop();
                        }
                    }
                }
                *domains = saved;
            }
            SolveOut::Exhausted
        }
        let cap = if self.lean {
            self.node_cap.min(LEAN_STATES)
        } else {
            self.node_cap
        };
        step(sub, dom, &mut domains, &mut chosen, &mut nodes, cap)
    }
}

impl SubsetProbe for SectionProbe<'_> {
    fn probe(
        &mut self,
        sub: &Arc<ProximitySpace>,
        idx: &[usize],
    ) -> Result<(QueryState, Option<PieceWitness>)> {
        match self.solve(sub, idx) {
            SolveOut::Found(assign) => {
                let section = FiniteMap::new(sub.clone(), self.map.domain().clone(), assign)?;
                Ok((QueryState::Good, Some(PieceWitness::Section(section))))
            }
            SolveOut::Exhausted => Ok((QueryState::NotGood, None)),
            SolveOut::Aborted => Ok((QueryState::Unknown, None)),
        }
    }

    fn set_lean(&mut self, lean: bool) {
        self.lean = lean;
    }
}

/// Minimum number of codomain pieces over which the map has pc sections.
/// A codomain point with no preimage makes every piece containing it
/// infeasible, reported as an error.
pub fn genus(p: &FiniteMap, budget: &Budget) -> Result<GenusResult> {
    p.require_pc()?;
    let cod = p.codomain().clone();
    let mut preimages: Vec<Vec<u32>> = vec![Vec::new(); cod.len()];
    for (x, &q) in p.assign().iter().enumerate() {
        preimages[q as usize].push(x as u32);
    }
    if let Some(q) = preimages.iter().position(|c| c.is_empty()) {
        return Err(Error::Infeasible(format!(
            "codomain point `{}` has an empty preimage",
            cod.name(q)
        )));
    }
    let mut engine = CoverEngine::new(
        &cod,
        SectionProbe {
            map: p,
            preimages,
            node_cap: per_query_budget(budget).max_states,
            lean: false,
        },
    );
    run_cover(&mut engine, budget, &[])
}

/// Outcome of the fiber homotopy equivalence search.
#[derive(Debug, Clone)]
pub enum FiberEquiv {
    Found {
        h: FiniteMap,
        k: FiniteMap,
        /// Certificates for k after h homotopic to the first identity and
        /// h after k homotopic to the second.
        certificates: Vec<HomotopyCertificate>,
    },
    NotFound {
        /// True when every fiber-preserving pc pair was checked and all
        /// homotopy verdicts resolved.
        exhausted: bool,
    },
}

/// Enumerates all fiber-preserving pc maps given candidate images per
/// point, in lexicographic order.
fn fiber_maps(
    dom: &Arc<ProximitySpace>,
    cod: &Arc<ProximitySpace>,
    candidates: &[Vec<u32>],
) -> Vec<FiniteMap> {
    let n = candidates.len();
    let mut out = Vec::new();
    let mut picks = vec![0usize; n];
    'outer: loop {
        let assign: Vec<u32> = picks.iter().enumerate().map(|(i, &p)| candidates[i][p]).collect();
        if let Ok(map) = FiniteMap::new(dom.clone(), cod.clone(), assign) {
            if map.is_pc() {
                out.push(map);
            }
        }
        let mut slot = n;
        while slot > 0 {
            slot -= 1;
            picks[slot] += 1;
            if picks[slot] < candidates[slot].len() {
                continue 'outer;
            }
            picks[slot] = 0;
        }
        break;
    }
    out
}

/// Searches for a pc pair (h, k) commuting with the two projections whose
/// composites are homotopic to the identities.
pub fn fiber_equiv(f: &FiniteMap, g: &FiniteMap, budget: &Budget) -> Result<FiberEquiv> {
    f.require_pc()?;
    g.require_pc()?;
    if !spaces_eq(f.codomain(), g.codomain()) {
        return Err(Error::CodomainMismatch);
    }
    let x = f.domain();
    let xp = g.domain();
    // h must send each point into the g-fiber over its f-image, and k
    // back into the f-fiber over the g-image.
    let cand_h: Vec<Vec<u32>> = f
        .assign()
        .iter()
        .map(|&b| {
            (0..xp.len() as u32)
                .filter(|&w| g.assign()[w as usize] == b)
                .collect::<Vec<u32>>()
        })
        .collect();
    let cand_k: Vec<Vec<u32>> = g
        .assign()
        .iter()
        .map(|&b| {
            (0..x.len() as u32)
                .filter(|&w| f.assign()[w as usize] == b)
                .collect::<Vec<u32>>()
        })
        .collect();
    if cand_h.iter().any(|c| c.is_empty()) || cand_k.iter().any(|c| c.is_empty()) {
        return Ok(FiberEquiv::NotFound { exhausted: true });
    }
    let count = |cands: &[Vec<u32>]| {
        cands
            .iter()
            .fold(1u64, |acc, c| acc.saturating_mul(c.len() as u64))
    };
    let within_threshold = count(&cand_h).saturating_mul(count(&cand_k)) <= FIBER_PAIR_CAP;
    let hs = fiber_maps(x, xp, &cand_h);
    let ks = fiber_maps(xp, x, &cand_k);
    if hs.is_empty() || ks.is_empty() {
        return Ok(FiberEquiv::NotFound { exhausted: true });
    }
    let id_x = FiniteMap::identity(x.clone());
    let id_xp = FiniteMap::identity(xp.clone());
    let mut saw_unknown = false;
    let mut pairs = 0u64;
    for h in &hs {
        for k in &ks {
            if !within_threshold && pairs >= FIBER_PAIR_CAP {
                return Ok(FiberEquiv::NotFound { exhausted: false });
            }
            pairs += 1;
            let kh = k.compose(h)?;
            let hk = h.compose(k)?;
            let back = match homotopic(&kh, &id_x, budget)? {
                HomotopyVerdict::Good(cert) => cert,
                HomotopyVerdict::NotGood(_) => continue,
                HomotopyVerdict::Unknown(_) => {
                    saw_unknown = true;
                    continue;
                }
            };
            let forth = match homotopic(&hk, &id_xp, budget)? {
                HomotopyVerdict::Good(cert) => cert,
                HomotopyVerdict::NotGood(_) => continue,
                HomotopyVerdict::Unknown(_) => {
                    saw_unknown = true;
                    continue;
                }
            };
            return Ok(FiberEquiv::Found {
                h: h.clone(),
                k: k.clone(),
                certificates: vec![back, forth],
            });
        }
    }
    Ok(FiberEquiv::NotFound {
        exhausted: within_threshold && !saw_unknown,
    })
}

/// One monotonicity probe between a space and a coarsening of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinenessCase {
    pub name: String,
    /// Asserted cases are expected to hold; the others are to be
    /// reported either way.
    pub asserted: bool,
    /// None when the intervals were too loose to decide.
    pub holds: Option<bool>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinenessReport {
    pub cases: Vec<FinenessCase>,
}

impl FinenessReport {
    /// True when no asserted case is a definite violation.
    pub fn asserted_cases_hold(&self) -> bool {
        self.cases
            .iter()
            .filter(|c| c.asserted)
            .all(|c| c.holds != Some(false))
    }

    /// (held, violated, unresolved) over all cases.
    pub fn tally(&self) -> (usize, usize, usize) {
        let mut held = 0;
        let mut violated = 0;
        let mut unresolved = 0;
        for case in &self.cases {
            match case.holds {
                Some(true) => held += 1,
                Some(false) => violated += 1,
                None => unresolved += 1,
            }
        }
        (held, violated, unresolved)
    }
}

/// Probes how distance behaves when the same carrier gets a coarser
/// relation. Coarsening the codomain or refining the domain can only
/// shrink the distance between the identity and a constant; those two
/// cases are asserted. The two complexity comparisons between the fine
/// and coarse space are computed in both orientations and reported
/// without an assertion, and skipped when either space is disconnected
/// or the square would be too large.
pub fn probe_fineness(
    fine: &Arc<ProximitySpace>,
    coarse: &Arc<ProximitySpace>,
    budget: &Budget,
) -> Result<FinenessReport> {
    if !fine.finer(coarse)? {
        return Err(Error::Invalid(
            "relations are not nested: the first space must be finer than the second".into(),
        ));
    }
    let mut cases = Vec::new();
    {
        let id_fine = FiniteMap::identity(fine.clone());
        let const_fine = FiniteMap::constant(fine.clone(), fine.clone(), 0)?;
        let d_fine = distance(&[id_fine.clone(), const_fine.clone()], budget)?;
        let into_coarse = [
            id_fine.with_codomain(coarse.clone())?,
            const_fine.with_codomain(coarse.clone())?,
        ];
        let d_coarse_cod = distance(&into_coarse, budget)?;
        cases.push(FinenessCase {
            name: "distance-into-coarser-codomain".into(),
            asserted: true,
            holds: surely_le(&d_coarse_cod, &d_fine),
            lhs: d_coarse_cod.render(),
            rhs: d_fine.render(),
        });
    }
    {
        let id_coarse = FiniteMap::identity(coarse.clone());
        let const_coarse = FiniteMap::constant(coarse.clone(), coarse.clone(), 0)?;
        let d_coarse = distance(&[id_coarse.clone(), const_coarse.clone()], budget)?;
        let from_fine = [
            id_coarse.with_domain(fine.clone())?,
            const_coarse.with_domain(fine.clone())?,
        ];
        let d_fine_dom = distance(&from_fine, budget)?;
        cases.push(FinenessCase {
            name: "distance-from-finer-domain".into(),
            asserted: true,
            holds: surely_le(&d_fine_dom, &d_coarse),
            lhs: d_fine_dom.render(),
            rhs: d_coarse.render(),
        });
    }
    let square_ok = fine.len().saturating_mul(fine.len()) <= DEFAULT_PRODUCT_CAP;
    if fine.is_connected() && coarse.is_connected() && square_ok {
        let tc_fine = tc(fine, 2, budget)?;
        let tc_coarse = tc(coarse, 2, budget)?;
        cases.push(FinenessCase {
            name: "tc-coarser-le-finer".into(),
            asserted: false,
            holds: surely_le(&tc_coarse, &tc_fine),
            lhs: tc_coarse.render(),
            rhs: tc_fine.render(),
        });
        cases.push(FinenessCase {
            name: "tc-finer-le-coarser".into(),
            asserted: false,
            holds: surely_le(&tc_fine, &tc_coarse),
            lhs: tc_fine.render(),
            rhs: tc_coarse.render(),
        });
    }
    Ok(FinenessReport { cases })
}
