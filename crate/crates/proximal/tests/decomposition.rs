//! Exhaustive regression for the chain decomposition on tiny carriers.
//!
//! Three views of "deformable into each other" must coincide for pc maps
//! between spaces of at most three points each:
//!   1. reachability through chains of adjacent layer pairs,
//!   2. reachability through single-point moves,
//!   3. the search engine's verdict, certificate included.
//! A positive pair additionally yields an explicit layered interpolation
//! that the checker accepts.

use std::collections::VecDeque;
use std::sync::Arc;

use proximal::homotopy::{verify_homotopy, CertificateDoc, FiniteMap, HomotopyCertificate};
use proximal::search::{homotopic, Budget, HomotopyVerdict};
use proximal::space::ProximitySpace;

fn names(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("a{i}")).collect()
}

fn all_spaces(k: usize) -> Vec<Arc<ProximitySpace>> {
    let pts = names(k);
    let mut slots = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            slots.push((pts[i].clone(), pts[j].clone()));
        }
    }
    (0..1usize << slots.len())
        .map(|mask| {
            let pairs: Vec<(String, String)> = slots
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, p)| p.clone())
                .collect();
            Arc::new(
                ProximitySpace::from_pairs(format!("s{k}m{mask}"), pts.clone(), &pairs).unwrap(),
            )
        })
        .collect()
}

fn all_pc_maps(dom: &Arc<ProximitySpace>, cod: &Arc<ProximitySpace>) -> Vec<FiniteMap> {
    let n = dom.len();
    let m = cod.len();
    let mut out = Vec::new();
    for code in 0..m.pow(n as u32) {
        let mut c = code;
        let assign: Vec<u32> = (0..n)
            .map(|_| {
                let v = (c % m) as u32;
                c /= m;
                v
            })
            .collect();
        let map = FiniteMap::new(dom.clone(), cod.clone(), assign).unwrap();
        if map.is_pc() {
            out.push(map);
        }
    }
    out
}

/// True when the two maps form a valid adjacent layer pair.
fn one_step(f: &FiniteMap, g: &FiniteMap) -> bool {
    let dom = f.domain();
    let cod = f.codomain();
    let doc = CertificateDoc {
        layers: vec![
            (0..dom.len())
                .map(|i| (dom.name(i).to_string(), cod.name(f.apply(i)).to_string()))
                .collect(),
            (0..dom.len())
                .map(|i| (dom.name(i).to_string(), cod.name(g.apply(i)).to_string()))
                .collect(),
        ],
    };
    match HomotopyCertificate::from_doc(dom.clone(), cod.clone(), &doc) {
        Ok(cert) => verify_homotopy(&cert, f, g).is_ok(),
        Err(_) => false,
    }
}

fn hamming(f: &FiniteMap, g: &FiniteMap) -> usize {
    (0..f.domain().len()).filter(|&i| f.apply(i) != g.apply(i)).count()
}

/// Connected component labels under the given symmetric adjacency.
fn components(n: usize, adj: &[Vec<bool>]) -> Vec<usize> {
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        label[start] = next;
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if adj[i][j] && label[j] == usize::MAX {
                    label[j] = next;
                    queue.push_back(j);
                }
            }
        }
        next += 1;
    }
    label
}

/// Shortest path in the adjacency graph, as the visited node sequence.
fn bfs_path(n: usize, adj: &[Vec<bool>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(i) = queue.pop_front() {
        if i == to {
            break;
        }
        for j in 0..n {
            if adj[i][j] && !seen[j] {
                seen[j] = true;
                prev[j] = i;
                queue.push_back(j);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

#[test]
fn chains_moves_and_engine_verdicts_coincide_on_tiny_carriers() {
    let budget = Budget::default();
    let mut spaces = Vec::new();
    for k in 1..=3 {
        spaces.extend(all_spaces(k));
    }
    let mut pairs_checked = 0usize;
    let mut positives = 0usize;
    for dom in &spaces {
        for cod in &spaces {
            let maps = all_pc_maps(dom, cod);
            let n = maps.len();
            let mut step = vec![vec![false; n]; n];
            let mut mv = vec![vec![false; n]; n];
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    step[i][j] = one_step(&maps[i], &maps[j]);
                    mv[i][j] = step[i][j] && hamming(&maps[i], &maps[j]) == 1;
                }
            }
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(step[i][j], step[j][i], "layer adjacency must be symmetric");
                }
            }
            let by_step = components(n, &step);
            let by_move = components(n, &mv);
            for i in 0..n {
                for j in (i + 1)..n {
                    let expected = by_step[i] == by_step[j];
                    assert_eq!(
                        expected,
                        by_move[i] == by_move[j],
                        "chain and move reachability disagree between {} and {}",
                        dom.label(),
                        cod.label()
                    );
                    match homotopic(&maps[i], &maps[j], &budget).unwrap() {
                        HomotopyVerdict::Good(cert) => {
                            assert!(expected, "engine claims a deformation that reachability denies");
                            verify_homotopy(&cert, &maps[i], &maps[j]).unwrap();
                        }
                        HomotopyVerdict::NotGood(_) => {
                            assert!(!expected, "engine denies a deformation that reachability finds");
                        }
                        HomotopyVerdict::Unknown(_) => {
                            panic!("the default budget must resolve carriers this small")
                        }
                    }
                    if expected {
                        // The chain itself is the interpolating object:
                        // its layers restrict to the two maps at the ends.
                        let path = bfs_path(n, &step, i, j);
                        let doc = CertificateDoc {
                            layers: path
                                .iter()
                                .map(|&p| {
                                    (0..dom.len())
                                        .map(|x| {
                                            (
                                                dom.name(x).to_string(),
                                                cod.name(maps[p].apply(x)).to_string(),
                                            )
                                        })
                                        .collect()
                                })
                                .collect(),
                        };
                        let cert =
                            HomotopyCertificate::from_doc(dom.clone(), cod.clone(), &doc).unwrap();
                        verify_homotopy(&cert, &maps[i], &maps[j]).unwrap();
                        positives += 1;
                    }
                    pairs_checked += 1;
                }
            }
        }
    }
    println!("{pairs_checked} map pairs checked, {positives} with explicit interpolations");
    assert!(pairs_checked > 10_000, "the sweep must be genuinely exhaustive");
    assert!(positives > 1_000);
}
