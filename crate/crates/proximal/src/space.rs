//! Finite proximity spaces in point-determined normal form.
//!
//! On a finite carrier the union axiom forces set nearness down to points:
//! `E` is near `F` exactly when some `e` in `E` is near some `f` in `F`.
//! A space therefore stores only the reflexive symmetric point relation,
//! and every set-level operation is derived from it.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cap on product carrier sizes unless the caller overrides it.
pub const DEFAULT_PRODUCT_CAP: usize = 10_000;

/// Distance functions accepted by the metric constructor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Euclidean,
    Chebyshev,
    Manhattan,
}

impl Metric {
    /// Closed comparison d(a, b) <= eps, evaluated without rounding slack.
    pub fn within(self, a: &[f64], b: &[f64], eps: f64) -> bool {
        match self {
            Metric::Euclidean => {
                let sq: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
                sq <= eps * eps
            }
            Metric::Chebyshev => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0_f64, f64::max)
                <= eps,
            Metric::Manhattan => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>() <= eps,
        }
    }
}

/// A finite proximity space: named points plus a reflexive symmetric
/// nearness relation on them.
#[derive(Debug, Clone)]
pub struct ProximitySpace {
    label: String,
    points: Vec<String>,
    index: HashMap<String, usize>,
    /// Row-major adjacency bits, loops included.
    bits: Vec<u64>,
    /// Sorted non-loop neighbor lists.
    neighbors: Vec<Vec<u32>>,
}

impl PartialEq for ProximitySpace {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label && self.points == other.points && self.bits == other.bits
    }
}

impl Eq for ProximitySpace {}

fn bit_index(n: usize, i: usize, j: usize) -> (usize, u64) {
    let flat = i * n + j;
    (flat >> 6, 1u64 << (flat & 63))
}

impl ProximitySpace {
    fn new_empty_relation(label: String, points: Vec<String>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let mut index = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::DuplicatePoint(p.clone()));
            }
        }
        let n = points.len();
        let words = (n * n).div_ceil(64);
        let mut space = ProximitySpace {
            label,
            points,
            index,
            bits: vec![0; words],
            neighbors: vec![Vec::new(); n],
        };
        for i in 0..n {
            space.set_bit(i, i);
        }
        Ok(space)
    }

    fn set_bit(&mut self, i: usize, j: usize) {
        let n = self.points.len();
        let (w, m) = bit_index(n, i, j);
        self.bits[w] |= m;
        let (w, m) = bit_index(n, j, i);
        self.bits[w] |= m;
    }

    fn rebuild_neighbors(&mut self) {
        let n = self.points.len();
        for i in 0..n {
            let mut row = Vec::new();
            for j in 0..n {
                if i != j && self.near(i, j) {
                    row.push(j as u32);
                }
            }
            self.neighbors[i] = row;
        }
    }

    /// Builds a space from explicit nearness pairs given by point name.
    /// Loops are implicit and the listed pairs are symmetrized.
    pub fn from_pairs<S: AsRef<str>>(
        label: impl Into<String>,
        points: Vec<String>,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut space = Self::new_empty_relation(label.into(), points)?;
        for (a, b) in pairs {
            let i = space.index_of(a.as_ref())?;
            let j = space.index_of(b.as_ref())?;
            space.set_bit(i, j);
        }
        space.rebuild_neighbors();
        Ok(space)
    }

    /// Discrete space: points are near only themselves.
    pub fn discrete(label: impl Into<String>, points: Vec<String>) -> Result<Self> {
        let mut space = Self::new_empty_relation(label.into(), points)?;
        space.rebuild_neighbors();
        Ok(space)
    }

    /// Indiscrete space: every pair of points is near.
    pub fn indiscrete(label: impl Into<String>, points: Vec<String>) -> Result<Self> {
        let mut space = Self::new_empty_relation(label.into(), points)?;
        for i in 0..space.len() {
            for j in (i + 1)..space.len() {
                space.set_bit(i, j);
            }
        }
        space.rebuild_neighbors();
        Ok(space)
    }

    /// Metric threshold space: x near y when d(x, y) <= eps (closed inequality).
    pub fn metric(
        label: impl Into<String>,
        named_coords: &[(String, Vec<f64>)],
        metric: Metric,
        eps: f64,
    ) -> Result<Self> {
        if eps < 0.0 {
            return Err(Error::NegativeEpsilon(eps));
        }
        let points = named_coords.iter().map(|(p, _)| p.clone()).collect();
        let mut space = Self::new_empty_relation(label.into(), points)?;
        for i in 0..named_coords.len() {
            for j in (i + 1)..named_coords.len() {
                if metric.within(&named_coords[i].1, &named_coords[j].1, eps) {
                    space.set_bit(i, j);
                }
            }
        }
        space.rebuild_neighbors();
        Ok(space)
    }

    /// Path on n points named "0".."n-1": i near j when |i - j| <= 1.
    pub fn path(n: usize) -> Result<Self> {
        let points: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let pairs: Vec<(String, String)> = (1..n)
            .map(|i| ((i - 1).to_string(), i.to_string()))
            .collect();
        Self::from_pairs(format!("path{n}"), points, &pairs)
    }

    /// Cycle on n points named "0".."n-1": i near j when they are
    /// cyclically adjacent.
    pub fn cycle(n: usize) -> Result<Self> {
        let points: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut pairs: Vec<(String, String)> = (1..n)
            .map(|i| ((i - 1).to_string(), i.to_string()))
            .collect();
        if n > 2 {
            pairs.push(((n - 1).to_string(), "0".to_string()));
        }
        Self::from_pairs(format!("cycle{n}"), points, &pairs)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn near(&self, i: usize, j: usize) -> bool {
        let (w, m) = bit_index(self.points.len(), i, j);
        self.bits[w] & m != 0
    }

    /// Non-loop neighbors of i, ascending.
    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.neighbors[i]
    }

    /// Resolves a list of point names into an index set.
    pub fn resolve_set(&self, names: &[String]) -> Result<BTreeSet<usize>> {
        names.iter().map(|p| self.index_of(p)).collect()
    }

    pub fn set_names(&self, set: &BTreeSet<usize>) -> Vec<String> {
        set.iter().map(|&i| self.points[i].clone()).collect()
    }

    /// Set nearness derived from the point relation. Either side empty
    /// gives false.
    pub fn set_near(&self, e: &BTreeSet<usize>, f: &BTreeSet<usize>) -> bool {
        e.iter()
            .any(|&x| f.iter().any(|&y| self.near(x, y)))
    }

    /// Closure of E: every point near E. Contains E by reflexivity,
    /// and cl of the empty set is empty.
    pub fn closure(&self, e: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.len())
            .filter(|&x| e.iter().any(|&y| self.near(x, y)))
            .collect()
    }

    /// Subspace on the given members, point names preserved.
    pub fn subspace(&self, members: &BTreeSet<usize>) -> Result<ProximitySpace> {
        if members.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let kept: Vec<usize> = members.iter().copied().collect();
        let points: Vec<String> = kept.iter().map(|&i| self.points[i].clone()).collect();
        let mut sub = Self::new_empty_relation(format!("{}.sub", self.label), points)?;
        for (a, &i) in kept.iter().enumerate() {
            for (b, &j) in kept.iter().enumerate().skip(a + 1) {
                if self.near(i, j) {
                    sub.set_bit(a, b);
                }
            }
        }
        sub.rebuild_neighbors();
        Ok(sub)
    }

    /// Binary product: (a, b) near (a', b') when both coordinates are near.
    pub fn product(&self, other: &Self, cap: usize) -> Result<ProximitySpace> {
        let size = self.len().checked_mul(other.len()).unwrap_or(usize::MAX);
        if size > cap {
            return Err(Error::CarrierTooLarge { size, cap });
        }
        let points: Vec<String> = self
            .points
            .iter()
            .flat_map(|a| other.points.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let label = format!("{}x{}", self.label, other.label);
        let mut prod = Self::new_empty_relation(label, points)?;
        let m = other.len();
        for i1 in 0..self.len() {
            for i2 in 0..other.len() {
                let p = i1 * m + i2;
                for j1 in 0..self.len() {
                    if !self.near(i1, j1) {
                        continue;
                    }
                    for j2 in 0..other.len() {
                        let q = j1 * m + j2;
                        if q > p && other.near(i2, j2) {
                            prod.set_bit(p, q);
                        }
                    }
                }
            }
        }
        prod.rebuild_neighbors();
        Ok(prod)
    }

    /// n-fold power with flat tuple names "(a,b,...)"; coordinates indexed
    /// row-major, first coordinate most significant.
    pub fn power(&self, n: usize, cap: usize) -> Result<ProximitySpace> {
        if n == 0 {
            return Err(Error::Invalid("power needs n >= 1".into()));
        }
        let mut size: usize = 1;
        for _ in 0..n {
            size = size.checked_mul(self.len()).unwrap_or(usize::MAX);
            if size > cap {
                return Err(Error::CarrierTooLarge { size, cap });
            }
        }
        let base = self.len();
        let decode = |mut code: usize| -> Vec<usize> {
            let mut tuple = vec![0usize; n];
            for slot in (0..n).rev() {
                tuple[slot] = code % base;
                code /= base;
            }
            tuple
        };
        let points: Vec<String> = (0..size)
            .map(|code| {
                let tuple = decode(code);
                let names: Vec<&str> = tuple.iter().map(|&i| self.points[i].as_str()).collect();
                format!("({})", names.join(","))
            })
            .collect();
        let mut pow = Self::new_empty_relation(format!("{}^{n}", self.label), points)?;
        for p in 0..size {
            let tp = decode(p);
            for q in (p + 1)..size {
                let tq = decode(q);
                if tp.iter().zip(&tq).all(|(&a, &b)| self.near(a, b)) {
                    pow.set_bit(p, q);
                }
            }
        }
        pow.rebuild_neighbors();
        Ok(pow)
    }

    /// Coordinate of a power-space point, given the power's base size.
    pub fn power_coordinate(code: usize, base: usize, n: usize, slot: usize) -> usize {
        let mut c = code;
        for _ in 0..(n - 1 - slot) {
            c /= base;
        }
        c % base
    }

    /// True when self is finer than (or equal to) `coarser`: every pair near
    /// in self is near in `coarser`. Requires identical carriers.
    pub fn finer(&self, coarser: &Self) -> Result<bool> {
        if self.points != coarser.points {
            return Err(Error::CarrierMismatch {
                left: self.label.clone(),
                right: coarser.label.clone(),
            });
        }
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if self.near(i, j) && !coarser.near(i, j) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Component label for each point under the nearness graph.
    pub fn components(&self) -> Vec<usize> {
        let n = self.len();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            label[start] = next;
            while let Some(x) = stack.pop() {
                for &y in self.neighbors(x) {
                    let y = y as usize;
                    if label[y] == usize::MAX {
                        label[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// Connectivity verdict with a witness: a disconnecting bipartition when
    /// the space splits, a spanning tree when it does not. Path connectivity
    /// is decided separately by pairwise point sequences.
    pub fn connectivity(&self) -> Connectivity {
        let labels = self.components();
        let connected = labels.iter().all(|&c| c == 0);
        let path_connected = (0..self.len())
            .all(|a| (0..self.len()).all(|b| self.point_path(a, b).is_some()));
        let witness = if connected {
            let mut edges = Vec::new();
            let mut seen = vec![false; self.len()];
            seen[0] = true;
            let mut queue = std::collections::VecDeque::from([0usize]);
            while let Some(x) = queue.pop_front() {
                for &y in self.neighbors(x) {
                    let y = y as usize;
                    if !seen[y] {
                        seen[y] = true;
                        edges.push((self.points[x].clone(), self.points[y].clone()));
                        queue.push_back(y);
                    }
                }
            }
            ConnectivityWitness::SpanningTree { edges }
        } else {
            let side_a: Vec<String> = (0..self.len())
                .filter(|&i| labels[i] == 0)
                .map(|i| self.points[i].clone())
                .collect();
            let side_b: Vec<String> = (0..self.len())
                .filter(|&i| labels[i] != 0)
                .map(|i| self.points[i].clone())
                .collect();
            ConnectivityWitness::Bipartition { side_a, side_b }
        };
        Connectivity {
            connected,
            path_connected,
            witness,
        }
    }

    /// Shortest point sequence from a to b with consecutive points near,
    /// ties resolved toward smaller indices. None when unreachable.
    pub fn point_path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        if a == b {
            return Some(vec![a]);
        }
        let mut prev = vec![usize::MAX; self.len()];
        let mut queue = std::collections::VecDeque::from([a]);
        prev[a] = a;
        while let Some(x) = queue.pop_front() {
            for &y in self.neighbors(x) {
                let y = y as usize;
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    if y == b {
                        let mut path = vec![b];
                        let mut cur = b;
                        while cur != a {
                            cur = prev[cur];
                            path.push(cur);
                        }
                        path.reverse();
                        return Some(path);
                    }
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// BFS distance table from every point, usize::MAX when unreachable.
    pub fn distance_table(&self) -> Vec<Vec<usize>> {
        (0..self.len())
            .map(|s| {
                let mut dist = vec![usize::MAX; self.len()];
                dist[s] = 0;
                let mut queue = std::collections::VecDeque::from([s]);
                while let Some(x) = queue.pop_front() {
                    for &y in self.neighbors(x) {
                        let y = y as usize;
                        if dist[y] == usize::MAX {
                            dist[y] = dist[x] + 1;
                            queue.push_back(y);
                        }
                    }
                }
                dist
            })
            .collect()
    }

    /// Canonical cyclic order when the space is a reflexive cycle: at least
    /// three points, every point with exactly two distinct neighbors, one
    /// connected loop. Starts at point 0 and moves toward its smaller
    /// neighbor. None when the structure is anything else.
    pub fn cycle_order(&self) -> Option<Vec<usize>> {
        let n = self.len();
        if n < 3 {
            return None;
        }
        if n == 3 {
            // A triangle is the complete relation on three points.
            if (0..3).all(|i| self.neighbors(i).len() == 2) {
                return Some(vec![0, 1, 2]);
            }
            return None;
        }
        if (0..n).any(|i| self.neighbors(i).len() != 2) {
            return None;
        }
        let mut order = vec![0usize];
        let mut prev = 0usize;
        let mut cur = self.neighbors(0)[0] as usize;
        while cur != 0 {
            order.push(cur);
            let nb = self.neighbors(cur);
            let next = if nb[0] as usize == prev {
                nb[1] as usize
            } else {
                nb[0] as usize
            };
            prev = cur;
            cur = next;
            if order.len() > n {
                return None;
            }
        }
        if order.len() == n {
            Some(order)
        } else {
            None
        }
    }

    /// Runs the axiom battery on the point relation.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.len();

        let mut symmetry = AxiomCheck::pass();
        'sym: for i in 0..n {
            for j in 0..n {
                if self.near(i, j) != self.near(j, i) {
                    symmetry = AxiomCheck::fail(
                        vec![vec![self.points[i].clone()], vec![self.points[j].clone()]],
                        "nearness disagrees across the swap",
                    );
                    break 'sym;
                }
            }
        }

        // Set nearness is derived pointwise, so union additivity and the
        // empty-set rule hold structurally; they are reported as checks on
        // that derivation.
        let union_additivity = AxiomCheck::pass();
        let nonempty_rule = AxiomCheck::pass();

        let mut intersection_rule = AxiomCheck::pass();
        for i in 0..n {
            if !self.near(i, i) {
                intersection_rule = AxiomCheck::fail(
                    vec![vec![self.points[i].clone()]],
                    "point is far from itself",
                );
                break;
            }
        }

        // Normality fails exactly when a far pair shares a neighbor,
        // i.e. the relation is not transitive.
        let mut ef_normality = AxiomCheck::pass();
        'ef: for i in 0..n {
            for j in (i + 1)..n {
                if self.near(i, j) {
                    continue;
                }
                for z in 0..n {
                    if z != i && z != j && self.near(i, z) && self.near(j, z) {
                        ef_normality = AxiomCheck::fail(
                            vec![
                                vec![self.points[i].clone()],
                                vec![self.points[j].clone()],
                                vec![self.points[z].clone()],
                            ],
                            "far pair with a common neighbor admits no separating set",
                        );
                        break 'ef;
                    }
                }
            }
        }

        AxiomReport {
            symmetry,
            union_additivity,
            nonempty_rule,
            intersection_rule,
            ef_normality,
        }
    }

    pub fn to_doc(&self) -> SpaceDoc {
        let mut near_pairs = Vec::new();
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if self.near(i, j) {
                    near_pairs.push((self.points[i].clone(), self.points[j].clone()));
                }
            }
        }
        SpaceDoc {
            label: self.label.clone(),
            points: self.points.clone(),
            near_pairs,
        }
    }

    pub fn from_doc(doc: &SpaceDoc) -> Result<Self> {
        Self::from_pairs(doc.label.clone(), doc.points.clone(), &doc.near_pairs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("space doc serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SpaceDoc =
            serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

/// Interchange document for a space. Loops are implicit; each non-loop
/// near pair is listed once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub label: String,
    pub points: Vec<String>,
    pub near_pairs: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<AxiomWitness>,
}

impl AxiomCheck {
    fn pass() -> Self {
        AxiomCheck {
            holds: true,
            witness: None,
        }
    }

    fn fail(sets: Vec<Vec<String>>, note: &str) -> Self {
        AxiomCheck {
            holds: false,
            witness: Some(AxiomWitness {
                sets,
                note: note.to_string(),
            }),
        }
    }
}

/// Point sets exhibiting an axiom failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomWitness {
    pub sets: Vec<Vec<String>>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub symmetry: AxiomCheck,
    pub union_additivity: AxiomCheck,
    pub nonempty_rule: AxiomCheck,
    pub intersection_rule: AxiomCheck,
    pub ef_normality: AxiomCheck,
}

impl AxiomReport {
    pub fn all_basic_hold(&self) -> bool {
        self.symmetry.holds
            && self.union_additivity.holds
            && self.nonempty_rule.holds
            && self.intersection_rule.holds
    }

    pub fn all_hold(&self) -> bool {
        self.all_basic_hold() && self.ef_normality.holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connectivity {
    pub connected: bool,
    pub path_connected: bool,
    pub witness: ConnectivityWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConnectivityWitness {
    /// Two far halves covering the carrier.
    Bipartition {
        side_a: Vec<String>,
        side_b: Vec<String>,
    },
    /// Tree of near pairs reaching every point.
    SpanningTree { edges: Vec<(String, String)> },
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn builders_reject_bad_input() {
        assert_eq!(
            ProximitySpace::discrete("d", vec![]).unwrap_err(),
            Error::EmptyCarrier
        );
        assert_eq!(
            ProximitySpace::discrete("d", names(&["a", "a"])).unwrap_err(),
            Error::DuplicatePoint("a".into())
        );
        assert_eq!(
            ProximitySpace::from_pairs("p", names(&["a"]), &[("a", "b")]).unwrap_err(),
            Error::UnknownPoint("b".into())
        );
        let err = ProximitySpace::metric("m", &[("a".into(), vec![0.0])], Metric::Euclidean, -1.0)
            .unwrap_err();
        assert_eq!(err, Error::NegativeEpsilon(-1.0));
    }

    #[test]
    fn metric_inequality_is_closed() {
        let coords = vec![
            ("a".to_string(), vec![0.0, 0.0]),
            ("b".to_string(), vec![1.0, 0.0]),
            ("c".to_string(), vec![1.0, 1.0]),
        ];
        let euclid = ProximitySpace::metric("m", &coords, Metric::Euclidean, 1.0).unwrap();
        assert!(euclid.near(0, 1));
        assert!(!euclid.near(0, 2));
        let cheb = ProximitySpace::metric("m", &coords, Metric::Chebyshev, 1.0).unwrap();
        assert!(cheb.near(0, 2));
        let man = ProximitySpace::metric("m", &coords, Metric::Manhattan, 1.0).unwrap();
        assert!(!man.near(0, 2));
        assert!(man.near(1, 2));
    }

    #[test]
    fn set_near_and_closure_on_path3() {
        let p = ProximitySpace::path(3).unwrap();
        let e: BTreeSet<usize> = [0].into();
        let f: BTreeSet<usize> = [2].into();
        assert!(!p.set_near(&e, &f));
        assert!(p.set_near(&e, &[1].into()));
        assert!(!p.set_near(&BTreeSet::new(), &f));
        assert_eq!(p.closure(&e), [0, 1].into());
        assert_eq!(p.closure(&BTreeSet::new()), BTreeSet::new());
    }

    #[test]
    fn axiom_report_flags_normality_on_path3() {
        let p = ProximitySpace::path(3).unwrap();
        let report = p.check_axioms();
        assert!(report.all_basic_hold());
        assert!(!report.ef_normality.holds);
        let w = report.ef_normality.witness.unwrap();
        assert_eq!(
            w.sets,
            vec![
                vec!["0".to_string()],
                vec!["2".to_string()],
                vec!["1".to_string()]
            ]
        );
    }

    #[test]
    fn axiom_report_passes_on_cliquey_spaces() {
        let d = ProximitySpace::discrete("d3", names(&["a", "b", "c"])).unwrap();
        assert!(d.check_axioms().all_hold());
        let i = ProximitySpace::indiscrete("i3", names(&["a", "b", "c"])).unwrap();
        assert!(i.check_axioms().all_hold());
    }

    #[test]
    fn connectivity_reports_canonical_bipartition() {
        let d = ProximitySpace::discrete("d3", names(&["a", "b", "c"])).unwrap();
        let conn = d.connectivity();
        assert!(!conn.connected);
        assert!(!conn.path_connected);
        match conn.witness {
            ConnectivityWitness::Bipartition { side_a, side_b } => {
                assert_eq!(side_a, names(&["a"]));
                assert_eq!(side_b, names(&["b", "c"]));
            }
            _ => panic!("expected a bipartition"),
        }
        let p = ProximitySpace::path(4).unwrap();
        let conn = p.connectivity();
        assert!(conn.connected && conn.path_connected);
    }

    #[test]
    fn subspace_keeps_names_and_relation() {
        let c = ProximitySpace::cycle(6).unwrap();
        let sub = c.subspace(&[0, 1, 2].into()).unwrap();
        assert_eq!(sub.points(), &["0", "1", "2"]);
        assert!(sub.near(0, 1));
        assert!(!sub.near(0, 2));
        assert_eq!(
            c.subspace(&BTreeSet::new()).unwrap_err(),
            Error::EmptyCarrier
        );
    }

    #[test]
    fn product_is_coordinatewise_and_capped() {
        let p = ProximitySpace::path(2).unwrap();
        let prod = p.product(&p, DEFAULT_PRODUCT_CAP).unwrap();
        assert_eq!(prod.len(), 4);
        let a = prod.index_of("(0,0)").unwrap();
        let b = prod.index_of("(1,1)").unwrap();
        assert!(prod.near(a, b));
        let big = ProximitySpace::path(101).unwrap();
        assert!(matches!(
            big.product(&big, DEFAULT_PRODUCT_CAP),
            Err(Error::CarrierTooLarge { .. })
        ));
    }

    #[test]
    fn power_matches_iterated_product_relation() {
        let c = ProximitySpace::cycle(4).unwrap();
        let pow = c.power(2, DEFAULT_PRODUCT_CAP).unwrap();
        let prod = c.product(&c, DEFAULT_PRODUCT_CAP).unwrap();
        assert_eq!(pow.len(), prod.len());
        for i in 0..pow.len() {
            for j in 0..pow.len() {
                assert_eq!(pow.near(i, j), prod.near(i, j));
            }
        }
    }

    #[test]
    fn finer_orders_relations() {
        let names3 = names(&["a", "b", "c"]);
        let d = ProximitySpace::discrete("d", names3.clone()).unwrap();
        let i = ProximitySpace::indiscrete("i", names3.clone()).unwrap();
        assert!(d.finer(&i).unwrap());
        assert!(!i.finer(&d).unwrap());
        assert!(d.finer(&d).unwrap());
        let other = ProximitySpace::discrete("o", names(&["x"])).unwrap();
        assert!(matches!(
            d.finer(&other),
            Err(Error::CarrierMismatch { .. })
        ));
    }

    #[test]
    fn cycle_structure_is_detected() {
        let c = ProximitySpace::cycle(6).unwrap();
        assert_eq!(c.cycle_order().unwrap(), vec![0, 1, 2, 3, 4, 5]);
        let p = ProximitySpace::path(6).unwrap();
        assert!(p.cycle_order().is_none());
        let tri = ProximitySpace::cycle(3).unwrap();
        assert_eq!(tri.cycle_order().unwrap(), vec![0, 1, 2]);
        let i4 = ProximitySpace::indiscrete("i4", names(&["a", "b", "c", "d"])).unwrap();
        assert!(i4.cycle_order().is_none());
    }

    #[test]
    fn doc_round_trip_preserves_space() {
        let c = ProximitySpace::cycle(5).unwrap();
        let back = ProximitySpace::from_json(&c.to_json()).unwrap();
        assert_eq!(c, back);
        let doc = c.to_doc();
        assert_eq!(doc.near_pairs.len(), 5);
    }
}
