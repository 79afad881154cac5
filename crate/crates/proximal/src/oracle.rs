//! Exhaustive oracles for tiny instances.
//!
//! Everything here recomputes from first principles: nearness of sets by
//! scanning point pairs, homotopy by flooding the full map space over
//! single-image moves, covers by breadth-first search over bitmasks. None
//! of it shares logic with the main search tiers, so agreement between
//! the two routes is evidence rather than tautology.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homotopy::{spaces_eq, subspace_with_members, FiniteMap, HomotopyCertificate};
use crate::space::ProximitySpace;

/// Hard carrier limits for the map-space flood. Above these the subset
/// enumeration stops being instant and the oracle refuses to guess.
pub const ORACLE_MAX_DOMAIN: usize = 8;
pub const ORACLE_MAX_CODOMAIN: usize = 4;

/// Carrier cap for the whole-space contractibility flood (n^n states).
pub const ORACLE_MAX_SELF: usize = 7;

/// Carrier cap for the subset-level axiom sweep (4^n subset pairs).
pub const ORACLE_MAX_AXIOMS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleValue {
    Finite(usize),
    Infinite,
}

/// One piece of an oracle cover: the member names, the induced subspace,
/// and one certificate per non-hub map chaining it to the hub on that
/// subspace.
#[derive(Debug, Clone)]
pub struct OraclePiece {
    pub members: Vec<String>,
    pub subspace: Arc<ProximitySpace>,
    pub certificates: Vec<HomotopyCertificate>,
}

#[derive(Debug, Clone)]
pub struct OracleDistance {
    pub value: OracleValue,
    pub pieces: Vec<OraclePiece>,
}

/// Per-subset goodness data: flood the full pc map space of the subspace
/// from the hub restriction and record parents for certificate replay.
struct SubsetFlood {
    members: Vec<usize>,
    cod_len: usize,
    /// parent[code] = (parent code, changed slot, new image); usize::MAX
    /// parent marks the root, u32::MAX code marks unvisited.
    parent: Vec<(usize, u32, u32)>,
    root: usize,
}

impl SubsetFlood {
    fn run(dom: &ProximitySpace, cod: &ProximitySpace, hub: &FiniteMap, mask: u32) -> Self {
        let members: Vec<usize> = (0..dom.len()).filter(|i| mask >> i & 1 == 1).collect();
        let m = members.len();
        let c = cod.len();
        let total = c.pow(m as u32);
        let decode = |code: usize| {
            let mut a = [0usize; ORACLE_MAX_DOMAIN];
            let mut rest = code;
            for slot in 0..m {
                a[slot] = rest % c;
                rest /= c;
            }
            a
        };
        let encode_hub = {
            let mut code = 0usize;
            for &p in members.iter().rev() {
                code = code * c + hub.assign()[p] as usize;
            }
            code
        };
        let mut parent = vec![(usize::MAX, u32::MAX, 0u32); total];
        parent[encode_hub] = (usize::MAX, u32::MAX - 1, 0);
        let mut queue = VecDeque::from([encode_hub]);
        while let Some(code) = queue.pop_front() {
            let a = decode(code);
            for slot in 0..m {
                let old = a[slot];
                let stride = c.pow(slot as u32);
                for new in 0..c {
                    // A single move must land on a near image and keep
                    // the map pc at the moved slot.
                    if new == old || !cod.near(old, new) {
                        continue;
                    }
                    let mut ok = true;
                    for j in 0..m {
                        if j != slot && dom.near(members[slot], members[j]) && !cod.near(new, a[j])
                        {
                            ok = false;
                            break;
                        }
                    }
                    if !ok {
                        continue;
                    }
                    let next = code + new * stride - old * stride;
                    if parent[next].1 != u32::MAX {
                        continue;
                    }
                    parent[next] = (code, slot as u32, new as u32);
                    queue.push_back(next);
                }
            }
        }
        SubsetFlood {
            members,
            cod_len: c,
            parent,
            root: encode_hub,
        }
    }

    fn restriction_code(&self, map: &FiniteMap) -> usize {
        let mut code = 0usize;
        for &p in self.members.iter().rev() {
            code = code * self.cod_len + map.assign()[p] as usize;
        }
        code
    }

    fn reached(&self, code: usize) -> bool {
        self.parent[code].1 != u32::MAX
    }

    /// Layers of the flood path root -> code, as subspace assignments.
    fn layers_to(&self, code: usize) -> Vec<Vec<u32>> {
        let m = self.members.len();
        let decode = |code: usize| {
            let mut a = vec![0u32; m];
            let mut rest = code;
            for v in a.iter_mut() {
                *v = (rest % self.cod_len) as u32;
                rest /= self.cod_len;
            }
            a
        };
        let mut chain = vec![decode(code)];
        let mut walk = code;
        while walk != self.root {
            walk = self.parent[walk].0;
            chain.push(decode(walk));
        }
        chain.reverse();
        chain
    }
}

/// Exact distance of a map family by brute force: goodness of every
/// subset via a full map-space flood, then an exact minimum cover over
/// bitmasks. Limited to 8 domain points and 4 codomain points.
pub fn oracle_distance(maps: &[FiniteMap]) -> Result<OracleDistance> {
    if maps.len() < 2 {
        return Err(Error::EmptyMapList);
    }
    let dom = maps[0].domain();
    let cod = maps[0].codomain();
    for m in &maps[1..] {
        if !spaces_eq(dom, m.domain()) || !spaces_eq(cod, m.codomain()) {
            return Err(Error::SignatureMismatch);
        }
    }
    if dom.len() > ORACLE_MAX_DOMAIN || cod.len() > ORACLE_MAX_CODOMAIN {
        return Err(Error::LimitsExceeded {
            domain: dom.len(),
            max_domain: ORACLE_MAX_DOMAIN,
            codomain: cod.len(),
            max_codomain: ORACLE_MAX_CODOMAIN,
        });
    }
    for m in maps {
        m.require_pc()?;
    }
    let n = dom.len();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut good = vec![false; (full as usize) + 1];
    let mut floods: Vec<Option<SubsetFlood>> = (0..=full as usize).map(|_| None).collect();
    for mask in 1..=full {
        let flood = SubsetFlood::run(dom, cod, &maps[0], mask);
        good[mask as usize] = maps[1..]
            .iter()
            .all(|m| flood.reached(flood.restriction_code(m)));
        floods[mask as usize] = Some(flood);
    }
    // Exact cover: breadth-first over covered-set masks, adding one good
    // subset per step. Smaller piece masks are tried first, so the
    // reconstructed cover is canonical.
    let good_masks: Vec<u32> = (1..=full).filter(|&m| good[m as usize]).collect();
    let mut dist = vec![u32::MAX; (full as usize) + 1];
    let mut via: Vec<(u32, u32)> = vec![(0, 0); (full as usize) + 1];
    dist[0] = 0;
    let mut queue = VecDeque::from([0u32]);
    while let Some(cur) = queue.pop_front() {
        if cur == full {
            break;
        }
        for &g in &good_masks {
            let next = cur | g;
            if dist[next as usize] != u32::MAX {
                continue;
            }
            dist[next as usize] = dist[cur as usize] + 1;
            via[next as usize] = (cur, g);
            queue.push_back(next);
        }
    }
    if dist[full as usize] == u32::MAX {
        return Ok(OracleDistance {
            value: OracleValue::Infinite,
            pieces: Vec::new(),
        });
    }
    let mut piece_masks = Vec::new();
    let mut walk = full;
    while walk != 0 {
        let (prev, piece) = via[walk as usize];
        piece_masks.push(piece);
        walk = prev;
    }
    piece_masks.reverse();
    let mut pieces = Vec::with_capacity(piece_masks.len());
    for mask in piece_masks {
        let flood = floods[mask as usize].as_ref().expect("flood computed");
        let members: Vec<String> = flood
            .members
            .iter()
            .map(|&i| dom.name(i).to_string())
            .collect();
        let memberset: BTreeSet<usize> = flood.members.iter().copied().collect();
        let (subspace, _) = subspace_with_members(dom, &memberset)?;
        let certificates = maps[1..]
            .iter()
            .map(|m| HomotopyCertificate {
                domain: subspace.clone(),
                codomain: cod.clone(),
                layers: flood.layers_to(flood.restriction_code(m)),
            })
            .collect();
        pieces.push(OraclePiece {
            members,
            subspace,
            certificates,
        });
    }
    Ok(OracleDistance {
        value: OracleValue::Finite(dist[full as usize] as usize),
        pieces,
    })
}

/// Whole-space contractibility by brute force: flood the n^n map space
/// from the identity and ask whether any constant is reached.
pub fn oracle_contractible(space: &Arc<ProximitySpace>) -> Result<bool> {
    let n = space.len();
    if n > ORACLE_MAX_SELF {
        return Err(Error::CarrierTooLarge {
            size: n,
            cap: ORACLE_MAX_SELF,
        });
    }
    let total = n.pow(n as u32);
    let decode = |code: usize| {
        let mut a = vec![0usize; n];
        let mut rest = code;
        for v in a.iter_mut() {
            *v = rest % n;
            rest /= n;
        }
        a
    };
    let identity_code = {
        let mut code = 0usize;
        for p in (0..n).rev() {
            code = code * n + p;
        }
        code
    };
    let constants: Vec<usize> = (0..n)
        .map(|t| {
            let mut code = 0usize;
            for _ in 0..n {
                code = code * n + t;
            }
            code
        })
        .collect();
    let mut seen = vec![false; total];
    seen[identity_code] = true;
    let mut queue = VecDeque::from([identity_code]);
    while let Some(code) = queue.pop_front() {
        if constants.contains(&code) {
            return Ok(true);
        }
        let a = decode(code);
        for slot in 0..n {
            let old = a[slot];
            let stride = n.pow(slot as u32);
            for new in 0..n {
                if new == old || !space.near(old, new) {
                    continue;
                }
                let ok = (0..n).all(|j| j == slot || !space.near(slot, j) || space.near(new, a[j]));
                if !ok {
                    continue;
                }
                let next = code + (new * stride) - (old * stride);
                if !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(false)
}

/// Subset-level axiom sweep computed straight from the definitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleAxioms {
    pub symmetry: bool,
    pub union_additivity: bool,
    pub nonempty_rule: bool,
    pub intersection_rule: bool,
    pub ef_normality: bool,
}

impl OracleAxioms {
    pub fn all_basic_hold(&self) -> bool {
        self.symmetry && self.union_additivity && self.nonempty_rule && self.intersection_rule
    }

    pub fn all_hold(&self) -> bool {
        self.all_basic_hold() && self.ef_normality
    }
}

pub fn oracle_axioms(space: &ProximitySpace) -> Result<OracleAxioms> {
    let n = space.len();
    if n > ORACLE_MAX_AXIOMS {
        return Err(Error::CarrierTooLarge {
            size: n,
            cap: ORACLE_MAX_AXIOMS,
        });
    }
    let masks = 1usize << n;
    let full = (masks - 1) as u64;
    // adj[x] includes x itself, so delta doubles as the intersection rule
    // when E and F overlap.
    let adj: Vec<u64> = (0..n)
        .map(|x| {
            (0..n)
                .filter(|&y| space.near(x, y))
                .fold(1u64 << x, |m, y| m | 1 << y)
        })
        .collect();
    let delta = |e: u64, f: u64| (0..n).any(|x| e >> x & 1 == 1 && adj[x] & f != 0);
    let mut rows = vec![0u64; masks];
    for (e, row) in rows.iter_mut().enumerate() {
        for f in 0..masks {
            if delta(e as u64, f as u64) {
                *row |= 1 << f;
            }
        }
    }
    let d = |e: usize, f: usize| rows[e] >> f & 1 == 1;
    let mut symmetry = true;
    let mut union_additivity = true;
    let mut nonempty_rule = true;
    let mut intersection_rule = true;
    let mut ef_normality = true;
    for e in 0..masks {
        for f in 0..masks {
            if d(e, f) != d(f, e) {
                symmetry = false;
            }
            if d(e, f) && (e == 0 || f == 0) {
                nonempty_rule = false;
            }
            if e & f != 0 && !d(e, f) {
                intersection_rule = false;
            }
            for g in 0..masks {
                if d(e, f | g) != (d(e, f) || d(e, g)) {
                    union_additivity = false;
                }
            }
            if !d(e, f) {
                let separated = (0..masks)
                    .any(|g| !d(e, g) && !d((full as usize) & !g, f));
                if !separated {
                    ef_normality = false;
                }
            }
        }
    }
    Ok(OracleAxioms {
        symmetry,
        union_additivity,
        nonempty_rule,
        intersection_rule,
        ef_normality,
    })
}
