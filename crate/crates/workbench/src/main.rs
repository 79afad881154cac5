//! Command line workbench over grid scenes and space/map documents.
//!
//! Every computed run prints one deterministic JSON report to standard
//! output and exits 0 (computed), 1 (negative verdict), or 3 (budget
//! exhausted before an answer). Bad flags and unreadable or malformed
//! inputs exit 2 before a report exists.

mod report;
mod scene;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use proximal::complexity::{
    distance, fiber_equiv, genus, probe_fineness, projections, relative_distance, tc, tc_map,
    CoverResult, FiberEquiv, QueryStatus,
};
use proximal::homotopy::{verify_homotopy, CertificateDoc, FiniteMap, HomotopyCertificate};
use proximal::oracle::{oracle_axioms, oracle_distance, OracleValue};
use proximal::search::{homotopic, Budget, HomotopyVerdict, NonHomotopyProof};
use proximal::space::{Metric, ProximitySpace, DEFAULT_PRODUCT_CAP};
use proximal::Error as SpaceError;
use serde_json::{json, Value};

use report::{BudgetRecord, InputRecord, RunReport, REPORT_VERSION};
use scene::{parse_grid, resolve_names, FeatureProbe, GridOptions, Mode};

#[derive(Parser)]
#[command(
    name = "proximal",
    version,
    about = "Proximity space workbench: scenes, homotopies, and motion planning complexity"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    Euclidean,
    Chebyshev,
    Manhattan,
}

impl From<MetricArg> for Metric {
    fn from(value: MetricArg) -> Metric {
        match value {
            MetricArg::Euclidean => Metric::Euclidean,
            MetricArg::Chebyshev => Metric::Chebyshev,
            MetricArg::Manhattan => Metric::Manhattan,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    FreeCells,
    BoundaryCycle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProbeArg {
    /// Each cell reports its own character.
    Chars,
    /// Every cell reports the same value.
    Const,
}

/// Where the space comes from: a grid scene or a space document.
#[derive(Args)]
struct SceneArgs {
    /// Grid scene file
    #[arg(long, value_name = "FILE")]
    grid: Option<PathBuf>,
    /// Space document file (JSON)
    #[arg(long, value_name = "FILE")]
    space: Option<PathBuf>,
    /// Nearness radius for grid ingestion
    #[arg(long, default_value_t = 1.0)]
    eps: f64,
    #[arg(long, value_enum, default_value_t = MetricArg::Chebyshev)]
    metric: MetricArg,
    #[arg(long, value_enum, default_value_t = ModeArg::FreeCells)]
    mode: ModeArg,
    /// Use cell features: plain flag reads characters, `const` always matches
    #[arg(long, value_enum, num_args = 0..=1, default_missing_value = "chars")]
    features: Option<ProbeArg>,
}

#[derive(Args)]
struct BudgetArgs {
    /// Visited-state cap for homotopy searches
    #[arg(long, value_name = "N")]
    budget_states: Option<u64>,
    /// Layer cap for the constraint search
    #[arg(long, value_name = "K")]
    budget_k: Option<usize>,
}

#[derive(Args)]
struct OutArgs {
    /// Also write the report to this file
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Re-check the emitted report before exiting
    #[arg(long)]
    verify: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the nearness axioms
    Axioms {
        #[command(flatten)]
        scene: SceneArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Connectivity with a witness
    Connect {
        #[command(flatten)]
        scene: SceneArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Are two point sets near?
    Near {
        #[command(flatten)]
        scene: SceneArgs,
        /// Comma separated point names
        #[arg(long)]
        set: String,
        #[arg(long)]
        set2: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// All points near a set
    Closure {
        #[command(flatten)]
        scene: SceneArgs,
        #[arg(long)]
        set: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Does a map preserve nearness?
    Pc {
        /// Map document file (JSON)
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Search for a homotopy chain between two maps
    Homotopic {
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
        #[arg(long, value_name = "FILE")]
        map2: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Is the identity homotopic to a constant?
    Contract {
        #[command(flatten)]
        scene: SceneArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Homotopic distance between two maps
    Distance {
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
        #[arg(long, value_name = "FILE")]
        map2: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Motion planning complexity of a space
    Tc {
        #[command(flatten)]
        scene: SceneArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Higher complexity: n-leg planning
    Tcn {
        #[command(flatten)]
        scene: SceneArgs,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Complexity of a map
    Tcmap {
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Complexity relative to a point subset
    Rtc {
        #[command(flatten)]
        scene: SceneArgs,
        /// Comma separated point names spanning the region
        #[arg(long)]
        set: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Minimum sectioned cover of a map's codomain
    Genus {
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Search for an equivalence over a shared codomain
    FiberEquiv {
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
        #[arg(long, value_name = "FILE")]
        map2: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compare distance and complexity across two nested relations
    ProbeFineness {
        #[command(flatten)]
        scene: SceneArgs,
        /// Second, larger radius for the coarser relation
        #[arg(long)]
        eps2: Option<f64>,
        /// Coarser space document (with --space)
        #[arg(long, value_name = "FILE")]
        space2: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Cross-check the engine against the exhaustive oracle
    OracleCompare {
        #[command(flatten)]
        scene: SceneArgs,
        /// With --map/--map2, compare distances instead of axioms
        #[arg(long, value_name = "FILE")]
        map: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        map2: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Re-run a report from its embedded inputs and compare
    Verify {
        /// Report file produced by an earlier run
        report: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
}

impl Cmd {
    fn out_args(&self) -> &OutArgs {
        match self {
            Cmd::Axioms { out, .. }
            | Cmd::Connect { out, .. }
            | Cmd::Near { out, .. }
            | Cmd::Closure { out, .. }
            | Cmd::Pc { out, .. }
            | Cmd::Homotopic { out, .. }
            | Cmd::Contract { out, .. }
            | Cmd::Distance { out, .. }
            | Cmd::Tc { out, .. }
            | Cmd::Tcn { out, .. }
            | Cmd::Tcmap { out, .. }
            | Cmd::Rtc { out, .. }
            | Cmd::Genus { out, .. }
            | Cmd::FiberEquiv { out, .. }
            | Cmd::ProbeFineness { out, .. }
            | Cmd::OracleCompare { out, .. }
            | Cmd::Verify { out, .. } => out,
        }
    }

    fn budget(&self) -> Budget {
        let args = match self {
            Cmd::Homotopic { budget, .. }
            | Cmd::Contract { budget, .. }
            | Cmd::Distance { budget, .. }
            | Cmd::Tc { budget, .. }
            | Cmd::Tcn { budget, .. }
            | Cmd::Tcmap { budget, .. }
            | Cmd::Rtc { budget, .. }
            | Cmd::Genus { budget, .. }
            | Cmd::FiberEquiv { budget, .. }
            | Cmd::ProbeFineness { budget, .. }
            | Cmd::OracleCompare { budget, .. } => Some(budget),
            _ => None,
        };
        let mut out = Budget::default();
        if let Some(args) = args {
            if let Some(states) = args.budget_states {
                out.max_states = states;
            }
            if args.budget_k.is_some() {
                out.max_layers = args.budget_k;
            }
        }
        out
    }
}

/// Reads command inputs, recording each one, or replays them from a
/// stored report during verification.
struct Loader {
    replay: Option<BTreeMap<String, String>>,
    records: Vec<InputRecord>,
}

impl Loader {
    fn from_disk() -> Self {
        Loader {
            replay: None,
            records: Vec::new(),
        }
    }

    fn replaying(texts: BTreeMap<String, String>) -> Self {
        Loader {
            replay: Some(texts),
            records: Vec::new(),
        }
    }

    fn load(&mut self, role: &str, path: &Path) -> Result<String> {
        let text = match &self.replay {
            Some(map) => map
                .get(role)
                .cloned()
                .ok_or_else(|| anyhow!("report does not embed a {role} input"))?,
            None => fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?,
        };
        self.records.push(InputRecord {
            role: role.to_string(),
            path: path.display().to_string(),
            sha256: report::sha256_hex(&text),
            text: text.clone(),
        });
        Ok(text)
    }
}

struct Outcome {
    result: Value,
    statuses: Vec<QueryStatus>,
    exit: i32,
}

impl Outcome {
    fn plain(result: Value, exit: i32) -> Self {
        Outcome {
            result,
            statuses: Vec::new(),
            exit,
        }
    }
}

fn grid_options(args: &SceneArgs) -> GridOptions {
    GridOptions {
        metric: args.metric.into(),
        eps: args.eps,
        mode: match args.mode {
            ModeArg::FreeCells => Mode::FreeCells,
            ModeArg::BoundaryCycle => Mode::BoundaryCycle,
        },
        probe: match args.features {
            None => FeatureProbe::Off,
            Some(ProbeArg::Chars) => FeatureProbe::Chars,
            Some(ProbeArg::Const) => FeatureProbe::Constant,
        },
    }
}

/// The working space of a scene command: the grid's spatial space, the
/// descriptive space induced by its features when a probe is on, or a
/// space document.
fn load_space(args: &SceneArgs, loader: &mut Loader) -> Result<Arc<ProximitySpace>> {
    match (&args.grid, &args.space) {
        (Some(_), Some(_)) => bail!("choose one of --grid and --space"),
        (None, None) => bail!("a space source is required: --grid or --space"),
        (Some(path), None) => {
            let text = loader.load("grid", path)?;
            let scene = parse_grid(&text, &grid_options(args))?;
            let space = match scene.features {
                Some(table) => {
                    table.induce_space(format!("{}-descriptive", scene.space.label()))?
                }
                None => scene.space,
            };
            Ok(Arc::new(space))
        }
        (None, Some(path)) => {
            let text = loader.load("space", path)?;
            Ok(Arc::new(ProximitySpace::from_json(&text)?))
        }
    }
}

fn load_map(role: &str, path: &Path, loader: &mut Loader) -> Result<FiniteMap> {
    let text = loader.load(role, path)?;
    let doc = serde_json::from_str(&text)
        .with_context(|| format!("parsing map document {}", path.display()))?;
    Ok(FiniteMap::from_doc(&doc)?)
}

fn space_summary(space: &ProximitySpace) -> Value {
    json!({ "label": space.label(), "points": space.len() })
}

fn cover_outcome(out: &CoverResult) -> Outcome {
    let pieces: Vec<Value> = out
        .pieces
        .iter()
        .map(|p| json!({ "members": p.members }))
        .collect();
    let exit = if out.is_exact() { 0 } else { 3 };
    Outcome {
        result: json!({
            "lower": out.lower.to_string(),
            "upper": out.upper.to_string(),
            "value": out.render(),
            "exact": out.is_exact(),
            "pieces": pieces,
            "unknown_queries": out.unknown_queries,
            "cover_search_complete": out.cover_search_complete,
        }),
        statuses: out.statuses.clone(),
        exit,
    }
}

/// Connectivity failures are computed negatives, not usage errors.
fn cover_or_disconnected(answer: proximal::Result<CoverResult>) -> Result<Outcome> {
    match answer {
        Ok(out) => Ok(cover_outcome(&out)),
        Err(SpaceError::NotConnected) => Ok(Outcome::plain(
            json!({
                "error": "not_connected",
                "note": "the space is not connected, so its complexity is undefined",
            }),
            1,
        )),
        Err(err) => Err(err.into()),
    }
}

fn verdict_outcome(verdict: HomotopyVerdict) -> Outcome {
    match verdict {
        HomotopyVerdict::Good(cert) => Outcome::plain(
            json!({
                "verdict": "good",
                "steps": cert.steps(),
                "certificate": cert.to_doc(),
            }),
            0,
        ),
        HomotopyVerdict::NotGood(proof) => {
            let proof_value = match proof {
                NonHomotopyProof::ExhaustedComponent { states_visited } => json!({
                    "kind": "exhausted_component",
                    "states_visited": states_visited,
                }),
                NonHomotopyProof::Obstruction(evidence) => json!({
                    "kind": "winding_mismatch",
                    "evidence": evidence,
                }),
            };
            Outcome::plain(json!({ "verdict": "not_good", "proof": proof_value }), 1)
        }
        HomotopyVerdict::Unknown(note) => Outcome::plain(
            json!({
                "verdict": "unknown",
                "states_visited": note.states_visited,
                "max_layers_tried": note.max_layers_tried,
            }),
            3,
        ),
    }
}

fn contract_outcome(space: &Arc<ProximitySpace>, budget: &Budget) -> Result<Outcome> {
    let id = FiniteMap::identity(space.clone());
    let mut any_unknown = false;
    for target in 0..space.len() {
        let constant = FiniteMap::constant(space.clone(), space.clone(), target)?;
        match homotopic(&id, &constant, budget)? {
            HomotopyVerdict::Good(cert) => {
                return Ok(Outcome::plain(
                    json!({
                        "contractible": true,
                        "witness_point": space.name(target),
                        "steps": cert.steps(),
                        "certificate": cert.to_doc(),
                    }),
                    0,
                ));
            }
            HomotopyVerdict::NotGood(_) => {}
            HomotopyVerdict::Unknown(_) => any_unknown = true,
        }
    }
    if any_unknown {
        Ok(Outcome::plain(json!({ "contractible": null }), 3))
    } else {
        Ok(Outcome::plain(json!({ "contractible": false }), 1))
    }
}

fn extent_matches(engine: &CoverResult, oracle: &OracleValue) -> Option<bool> {
    use proximal::complexity::Extent;
    let exact = engine.exact()?;
    Some(match (exact, oracle) {
        (Extent::Finite(a), OracleValue::Finite(b)) => a == *b,
        (Extent::Infinite, OracleValue::Infinite) => true,
        _ => false,
    })
}

fn dispatch(cmd: &Cmd, loader: &mut Loader) -> Result<Outcome> {
    let budget = cmd.budget();
    match cmd {
        Cmd::Axioms { scene, .. } => {
            let space = load_space(scene, loader)?;
            let report = space.check_axioms();
            let all_basic = report.all_basic_hold();
            let all = report.all_hold();
            Ok(Outcome::plain(
                json!({
                    "space": space_summary(&space),
                    "axioms": report,
                    "all_basic_hold": all_basic,
                    "all_hold": all,
                }),
                if all { 0 } else { 1 },
            ))
        }
        Cmd::Connect { scene, .. } => {
            let space = load_space(scene, loader)?;
            let conn = space.connectivity();
            let exit = if conn.connected { 0 } else { 1 };
            Ok(Outcome::plain(
                json!({
                    "space": space_summary(&space),
                    "connectivity": conn,
                }),
                exit,
            ))
        }
        Cmd::Near { scene, set, set2, .. } => {
            let space = load_space(scene, loader)?;
            let e = resolve_names(&space, set)?;
            let f = resolve_names(&space, set2)?;
            let near = space.set_near(&e, &f);
            Ok(Outcome::plain(
                json!({
                    "space": space_summary(&space),
                    "set": space.set_names(&e),
                    "set2": space.set_names(&f),
                    "near": near,
                }),
                if near { 0 } else { 1 },
            ))
        }
        Cmd::Closure { scene, set, .. } => {
            let space = load_space(scene, loader)?;
            let e = resolve_names(&space, set)?;
            let closure = space.closure(&e);
            Ok(Outcome::plain(
                json!({
                    "space": space_summary(&space),
                    "set": space.set_names(&e),
                    "closure": space.set_names(&closure),
                }),
                0,
            ))
        }
        Cmd::Pc { map, .. } => {
            let map = load_map("map", map, loader)?;
            let violations: Vec<Value> = map
                .pc_violations()
                .into_iter()
                .map(|(x, y)| {
                    json!({
                        "pair": [map.domain().name(x), map.domain().name(y)],
                        "images": [
                            map.codomain().name(map.apply(x)),
                            map.codomain().name(map.apply(y)),
                        ],
                    })
                })
                .collect();
            let is_pc = violations.is_empty();
            Ok(Outcome::plain(
                json!({ "is_pc": is_pc, "violations": violations }),
                if is_pc { 0 } else { 1 },
            ))
        }
        Cmd::Homotopic { map, map2, .. } => {
            let f = load_map("map", map, loader)?;
            let g = load_map("map2", map2, loader)?;
            Ok(verdict_outcome(homotopic(&f, &g, &budget)?))
        }
        Cmd::Contract { scene, .. } => {
            let space = load_space(scene, loader)?;
            contract_outcome(&space, &budget)
        }
        Cmd::Distance { map, map2, .. } => {
            let f = load_map("map", map, loader)?;
            let g = load_map("map2", map2, loader)?;
            Ok(cover_outcome(&distance(&[f, g], &budget)?))
        }
        Cmd::Tc { scene, .. } => {
            let space = load_space(scene, loader)?;
            cover_or_disconnected(tc(&space, 2, &budget))
        }
        Cmd::Tcn { scene, n, .. } => {
            let space = load_space(scene, loader)?;
            cover_or_disconnected(tc(&space, *n, &budget))
        }
        Cmd::Tcmap { map, n, .. } => {
            let f = load_map("map", map, loader)?;
            cover_or_disconnected(tc_map(&f, *n, &budget))
        }
        Cmd::Rtc { scene, set, .. } => {
            let space = load_space(scene, loader)?;
            let region = resolve_names(&space, set)?;
            if region.is_empty() {
                bail!("--set names no points");
            }
            let (power, maps) = projections(&space, 2, DEFAULT_PRODUCT_CAP)?;
            // The relative question restricts both projections to the
            // region's square.
            let m = space.len();
            let mut subset = BTreeSet::new();
            for &x in &region {
                for &y in &region {
                    subset.insert(x * m + y);
                }
            }
            debug_assert!(subset.iter().all(|&i| i < power.len()));
            cover_or_disconnected(relative_distance(&maps, &subset, &budget))
        }
        Cmd::Genus { map, .. } => {
            let p = load_map("map", map, loader)?;
            cover_or_disconnected(genus(&p, &budget))
        }
        Cmd::FiberEquiv { map, map2, .. } => {
            let f = load_map("map", map, loader)?;
            let g = load_map("map2", map2, loader)?;
            match fiber_equiv(&f, &g, &budget)? {
                FiberEquiv::Found { h, k, certificates } => Ok(Outcome::plain(
                    json!({
                        "equivalent": true,
                        "h": h.to_doc().assign,
                        "k": k.to_doc().assign,
                        "certificate_steps": certificates
                            .iter()
                            .map(HomotopyCertificate::steps)
                            .collect::<Vec<_>>(),
                    }),
                    0,
                )),
                FiberEquiv::NotFound { exhausted: true } => Ok(Outcome::plain(
                    json!({ "equivalent": false, "exhausted": true }),
                    1,
                )),
                FiberEquiv::NotFound { exhausted: false } => Ok(Outcome::plain(
                    json!({ "equivalent": null, "exhausted": false }),
                    3,
                )),
            }
        }
        Cmd::ProbeFineness { scene, eps2, space2, .. } => {
            let (fine, coarse) = match (&scene.grid, &scene.space, space2) {
                (Some(path), None, None) => {
                    let radius = eps2.ok_or_else(|| anyhow!("--eps2 is required with --grid"))?;
                    if radius <= scene.eps {
                        bail!("--eps2 must exceed --eps so the relations nest");
                    }
                    let text = loader.load("grid", path)?;
                    let fine = parse_grid(&text, &grid_options(scene))?.space;
                    let coarse_opts = GridOptions {
                        eps: radius,
                        ..grid_options(scene)
                    };
                    let coarse = parse_grid(&text, &coarse_opts)?.space;
                    (Arc::new(fine), Arc::new(coarse))
                }
                (None, Some(path), Some(path2)) => {
                    let fine_text = loader.load("space", path)?;
                    let coarse_text = loader.load("space2", path2)?;
                    (
                        Arc::new(ProximitySpace::from_json(&fine_text)?),
                        Arc::new(ProximitySpace::from_json(&coarse_text)?),
                    )
                }
                _ => bail!("needs --grid with --eps2, or --space with --space2"),
            };
            let report = probe_fineness(&fine, &coarse, &budget)?;
            let (held, violated, unresolved) = report.tally();
            let asserted_violated = report
                .cases
                .iter()
                .any(|c| c.asserted && c.holds == Some(false));
            let asserted_open = report.cases.iter().any(|c| c.asserted && c.holds.is_none());
            let asserted_hold = report.asserted_cases_hold();
            let exit = if asserted_violated {
                1
            } else if asserted_open {
                3
            } else {
                0
            };
            Ok(Outcome::plain(
                json!({
                    "fine": space_summary(&fine),
                    "coarse": space_summary(&coarse),
                    "cases": report,
                    "asserted_hold": asserted_hold,
                    "tally": { "held": held, "violated": violated, "unresolved": unresolved },
                }),
                exit,
            ))
        }
        Cmd::OracleCompare { scene, map, map2, .. } => match (map, map2) {
            (Some(map), Some(map2)) => {
                let f = load_map("map", map, loader)?;
                let g = load_map("map2", map2, loader)?;
                let engine = distance(&[f.clone(), g.clone()], &budget)?;
                let oracle = oracle_distance(&[f, g])?;
                let oracle_text = match oracle.value {
                    OracleValue::Finite(k) => k.to_string(),
                    OracleValue::Infinite => "inf".to_string(),
                };
                match extent_matches(&engine, &oracle.value) {
                    Some(matches) => Ok(Outcome {
                        result: json!({
                            "subject": "distance",
                            "engine": engine.render(),
                            "oracle": oracle_text,
                            "match": matches,
                        }),
                        statuses: engine.statuses.clone(),
                        exit: if matches { 0 } else { 1 },
                    }),
                    None => Ok(Outcome {
                        result: json!({
                            "subject": "distance",
                            "engine": engine.render(),
                            "oracle": oracle_text,
                            "match": null,
                        }),
                        statuses: engine.statuses.clone(),
                        exit: 3,
                    }),
                }
            }
            (None, None) => {
                let space = load_space(scene, loader)?;
                let engine = space.check_axioms();
                let oracle = oracle_axioms(&space)?;
                let oracle_value = json!({
                    "symmetry": oracle.symmetry,
                    "union_additivity": oracle.union_additivity,
                    "nonempty_rule": oracle.nonempty_rule,
                    "intersection_rule": oracle.intersection_rule,
                    "ef_normality": oracle.ef_normality,
                });
                let matches = engine.symmetry.holds == oracle.symmetry
                    && engine.union_additivity.holds == oracle.union_additivity
                    && engine.nonempty_rule.holds == oracle.nonempty_rule
                    && engine.intersection_rule.holds == oracle.intersection_rule
                    && engine.ef_normality.holds == oracle.ef_normality;
                Ok(Outcome::plain(
                    json!({
                        "subject": "axioms",
                        "space": space_summary(&space),
                        "engine": engine,
                        "oracle": oracle_value,
                        "match": matches,
                    }),
                    if matches { 0 } else { 1 },
                ))
            }
            _ => bail!("oracle comparison over maps needs both --map and --map2"),
        },
        Cmd::Verify { report: path, .. } => {
            let text = loader.load("report", path)?;
            let stored = RunReport::from_json(&text)
                .with_context(|| format!("parsing report {}", path.display()))?;
            Ok(verify_report(&stored))
        }
    }
}

/// Replays a report's command against its embedded inputs and compares
/// the result, statuses, and exit classification; homotopy certificates
/// in the payload are additionally re-checked against the maps.
fn verify_report(stored: &RunReport) -> Outcome {
    let fail = |reason: String| {
        Outcome::plain(json!({ "verified": false, "reason": reason }), 1)
    };
    if !stored.digests_consistent() {
        return fail("an embedded input does not match its digest".into());
    }
    let mut argv = vec!["proximal".to_string()];
    argv.extend(stored.command.iter().cloned());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(err) => return fail(format!("stored command does not parse: {err}")),
    };
    let mut loader = Loader::replaying(stored.input_texts());
    let outcome = match dispatch(&cli.command, &mut loader) {
        Ok(outcome) => outcome,
        Err(err) => return fail(format!("replay failed: {err:#}")),
    };
    if outcome.result != stored.result {
        return fail("replayed result differs from the stored payload".into());
    }
    if outcome.statuses != stored.statuses {
        return fail("replayed statuses differ from the stored ones".into());
    }
    if outcome.exit != stored.exit {
        return fail(format!(
            "replayed exit {} differs from stored exit {}",
            outcome.exit, stored.exit
        ));
    }
    if let Err(reason) = recheck_certificates(&cli.command, stored, &mut loader) {
        return fail(reason);
    }
    Outcome::plain(
        json!({
            "verified": true,
            "command": stored.command,
            "exit_checked": stored.exit,
        }),
        0,
    )
}

/// Direct certificate validation for payloads that embed one, so a
/// verified report does not lean solely on replay equality.
fn recheck_certificates(cmd: &Cmd, stored: &RunReport, loader: &mut Loader) -> Result<(), String> {
    let Some(doc_value) = stored.result.get("certificate") else {
        return Ok(());
    };
    let doc: CertificateDoc = serde_json::from_value(doc_value.clone())
        .map_err(|err| format!("certificate payload is malformed: {err}"))?;
    let (f, g) = match cmd {
        Cmd::Homotopic { map, map2, .. } => {
            let f = load_map("map", map, loader).map_err(|e| e.to_string())?;
            let g = load_map("map2", map2, loader).map_err(|e| e.to_string())?;
            (f, g)
        }
        Cmd::Contract { scene, .. } => {
            let space = load_space(scene, loader).map_err(|e| e.to_string())?;
            let name = stored
                .result
                .get("witness_point")
                .and_then(Value::as_str)
                .ok_or("certificate without a witness point")?;
            let target = space.index_of(name).map_err(|e| e.to_string())?;
            let id = FiniteMap::identity(space.clone());
            let constant = FiniteMap::constant(space.clone(), space, target)
                .map_err(|e| e.to_string())?;
            (id, constant)
        }
        _ => return Ok(()),
    };
    let cert =
        HomotopyCertificate::from_doc(f.domain().clone(), f.codomain().clone(), &doc)
            .map_err(|e| format!("certificate does not rebuild: {e}"))?;
    verify_homotopy(&cert, &f, &g)
        .map_err(|defect| format!("certificate fails verification: {defect:?}"))
}

fn run(cli: &Cli, argv: Vec<String>) -> Result<i32> {
    let mut loader = Loader::from_disk();
    let outcome = dispatch(&cli.command, &mut loader)?;
    let budget = cli.command.budget();
    let report = RunReport {
        command: argv,
        inputs: loader.records,
        result: outcome.result,
        statuses: outcome.statuses,
        budgets: BudgetRecord {
            max_states: budget.max_states,
            max_layers: budget.max_layers,
        },
        version: REPORT_VERSION.to_string(),
        exit: outcome.exit,
    };
    let rendered = report.to_json();
    print!("{rendered}");
    let out_args = cli.command.out_args();
    if let Some(path) = &out_args.out {
        fs::write(path, &rendered).with_context(|| format!("writing {}", path.display()))?;
    }
    if out_args.verify {
        let check = verify_report(&report);
        if check.exit != 0 {
            bail!("self-verification failed: {}", check.result);
        }
    }
    Ok(report.exit)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    match run(&cli, argv) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
