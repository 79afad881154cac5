//! Text floor plans turned into proximity spaces.
//!
//! A scene is a rectangular character grid: `#` is an obstacle, `@` an
//! obstacle that additionally flags its blob for boundary tracing, `.`
//! a plain free cell, and any other printable character a free cell
//! carrying that character as a one-slot feature.

use std::collections::BTreeSet;

use proximal::descriptive::FeatureTable;
use proximal::space::{Metric, ProximitySpace};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SceneError {
    #[error("grid is empty")]
    Empty,
    #[error("grid is not rectangular: line {line} has {got} columns, expected {expected}")]
    NonRectangular {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("unsupported character {ch:?} at line {line}, column {col}")]
    BadCell { line: usize, col: usize, ch: char },
    #[error("grid has no free cells")]
    NoFreeCells,
    #[error("boundary does not close into a cycle: {reason}")]
    BoundaryNotACycle { reason: String },
    #[error(transparent)]
    Space(#[from] proximal::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cell {
    Obstacle { marked: bool },
    Free { feature: char },
}

/// How the point set is carved out of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Every free cell is a point; nearness is metric proximity at eps.
    #[default]
    FreeCells,
    /// The free cells surrounding one obstacle blob, strung into a
    /// reflexive cycle by their angular order around the blob.
    BoundaryCycle,
}

/// Optional per-cell measurement attached to the points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FeatureProbe {
    /// No feature table.
    #[default]
    Off,
    /// Each free cell reports its own character.
    Chars,
    /// Every cell reports the same value, so all descriptions match.
    Constant,
}

#[derive(Debug, Clone, Copy)]
pub struct GridOptions {
    pub metric: Metric,
    pub eps: f64,
    pub mode: Mode,
    pub probe: FeatureProbe,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            metric: Metric::Chebyshev,
            eps: 1.0,
            mode: Mode::FreeCells,
            probe: FeatureProbe::Off,
        }
    }
}

/// A parsed scene: the spatial space over the selected cells plus the
/// feature table when a probe was requested. The table rows line up with
/// the space's points.
#[derive(Debug, Clone)]
pub struct Scene {
    pub space: ProximitySpace,
    pub features: Option<FeatureTable>,
}

#[derive(Debug, Clone)]
struct Grid {
    cells: Vec<Vec<Cell>>,
    rows: usize,
    cols: usize,
}

fn cell_name(row: usize, col: usize) -> String {
    format!("r{row}c{col}")
}

fn parse_cells(text: &str) -> Result<Grid, SceneError> {
    let mut cells: Vec<Vec<Cell>> = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let mut row = Vec::new();
        for (col, ch) in line.chars().enumerate() {
            let cell = match ch {
                '#' => Cell::Obstacle { marked: false },
                '@' => Cell::Obstacle { marked: true },
                '.' => Cell::Free { feature: '.' },
                c if c.is_control() || c.is_whitespace() => {
                    return Err(SceneError::BadCell {
                        line: line_no + 1,
                        col: col + 1,
                        ch: c,
                    });
                }
                c => Cell::Free { feature: c },
            };
            row.push(cell);
        }
        if let Some(first) = cells.first() {
            if row.len() != first.len() {
                return Err(SceneError::NonRectangular {
                    line: line_no + 1,
                    expected: first.len(),
                    got: row.len(),
                });
            }
        }
        cells.push(row);
    }
    if cells.is_empty() || cells[0].is_empty() {
        return Err(SceneError::Empty);
    }
    let rows = cells.len();
    let cols = cells[0].len();
    Ok(Grid { cells, rows, cols })
}

impl Grid {
    fn free_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                if matches!(self.cells[r][c], Cell::Free { .. }) {
                    out.push((r, c));
                }
            }
        }
        out
    }

    fn feature_of(&self, row: usize, col: usize) -> char {
        match self.cells[row][col] {
            Cell::Free { feature } => feature,
            Cell::Obstacle { .. } => '#',
        }
    }

    /// Obstacle blobs as 4-connected components, so diagonally touching
    /// obstacles stay separate and walls can clip a traced ring.
    fn obstacle_blobs(&self) -> Vec<Vec<(usize, usize)>> {
        let mut seen = vec![vec![false; self.cols]; self.rows];
        let mut blobs = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                if seen[r][c] || !matches!(self.cells[r][c], Cell::Obstacle { .. }) {
                    continue;
                }
                let mut blob = Vec::new();
                let mut stack = vec![(r, c)];
                seen[r][c] = true;
                while let Some((br, bc)) = stack.pop() {
                    blob.push((br, bc));
                    let mut push = |nr: usize, nc: usize, seen: &mut Vec<Vec<bool>>| {
                        if !seen[nr][nc] && matches!(self.cells[nr][nc], Cell::Obstacle { .. }) {
                            seen[nr][nc] = true;
                            stack.push((nr, nc));
                        }
                    };
                    if br > 0 {
                        push(br - 1, bc, &mut seen);
                    }
                    if br + 1 < self.rows {
                        push(br + 1, bc, &mut seen);
                    }
                    if bc > 0 {
                        push(br, bc - 1, &mut seen);
                    }
                    if bc + 1 < self.cols {
                        push(br, bc + 1, &mut seen);
                    }
                }
                blob.sort_unstable();
                blobs.push(blob);
            }
        }
        blobs
    }

    fn is_marked(&self, blob: &[(usize, usize)]) -> bool {
        blob.iter()
            .any(|&(r, c)| matches!(self.cells[r][c], Cell::Obstacle { marked: true }))
    }
}

/// The blob a boundary is traced around: the one holding a `@` marker,
/// otherwise the largest, with ties going to the earliest top-left cell.
fn choose_blob(grid: &Grid) -> Result<Vec<(usize, usize)>, SceneError> {
    let blobs = grid.obstacle_blobs();
    if blobs.is_empty() {
        return Err(SceneError::BoundaryNotACycle {
            reason: "no obstacle blob to trace".into(),
        });
    }
    if let Some(marked) = blobs.iter().find(|b| grid.is_marked(b)) {
        return Ok(marked.clone());
    }
    let best = blobs
        .iter()
        .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
        .expect("at least one blob");
    Ok(best.clone())
}

fn within(metric: Metric, eps: f64, a: (usize, usize), b: (usize, usize)) -> bool {
    let pa = [a.0 as f64, a.1 as f64];
    let pb = [b.0 as f64, b.1 as f64];
    metric.within(&pa, &pb, eps)
}

/// Free cells touching the blob, strung into a ring by angular order
/// around the blob's centroid. Consecutive cells must themselves be
/// near, otherwise the boundary is not a cycle.
fn boundary_ring(
    grid: &Grid,
    metric: Metric,
    eps: f64,
) -> Result<Vec<(usize, usize)>, SceneError> {
    let blob = choose_blob(grid)?;
    let mut ring: Vec<(usize, usize)> = grid
        .free_cells()
        .into_iter()
        .filter(|&cell| blob.iter().any(|&b| within(metric, eps, cell, b)))
        .collect();
    if ring.len() < 3 {
        return Err(SceneError::BoundaryNotACycle {
            reason: format!("only {} cells touch the blob", ring.len()),
        });
    }
    let crow = blob.iter().map(|&(r, _)| r as f64).sum::<f64>() / blob.len() as f64;
    let ccol = blob.iter().map(|&(_, c)| c as f64).sum::<f64>() / blob.len() as f64;
    // Row axis flipped so the order runs counterclockwise on screen; the
    // tuple keyed sort keeps equal angles deterministic.
    let angle_key = |&(r, c): &(usize, usize)| {
        let angle = f64::atan2(crow - r as f64, c as f64 - ccol);
        (angle, r, c)
    };
    ring.sort_by(|a, b| {
        let (ka, ra, ca) = angle_key(a);
        let (kb, rb, cb) = angle_key(b);
        ka.partial_cmp(&kb)
            .expect("grid angles are finite")
            .then(ra.cmp(&rb))
            .then(ca.cmp(&cb))
    });
    for i in 0..ring.len() {
        let a = ring[i];
        let b = ring[(i + 1) % ring.len()];
        if !within(metric, eps, a, b) {
            return Err(SceneError::BoundaryNotACycle {
                reason: format!(
                    "{} and {} are consecutive around the blob but not near",
                    cell_name(a.0, a.1),
                    cell_name(b.0, b.1)
                ),
            });
        }
    }
    Ok(ring)
}

fn feature_table(
    grid: &Grid,
    points: &[(usize, usize)],
    probe: FeatureProbe,
) -> Result<Option<FeatureTable>, SceneError> {
    let rows: Vec<(String, Vec<i64>)> = match probe {
        FeatureProbe::Off => return Ok(None),
        FeatureProbe::Chars => points
            .iter()
            .map(|&(r, c)| (cell_name(r, c), vec![grid.feature_of(r, c) as i64]))
            .collect(),
        FeatureProbe::Constant => points
            .iter()
            .map(|&(r, c)| (cell_name(r, c), vec![0]))
            .collect(),
    };
    Ok(Some(FeatureTable::build(1, rows)?))
}

/// Parses a grid scene into a space (plus feature table when a probe is
/// on). Free-cells mode takes every free cell with metric nearness at
/// eps; boundary-cycle mode takes the ring of free cells around one
/// obstacle blob with nearness exactly between ring neighbors.
pub fn parse_grid(text: &str, options: &GridOptions) -> Result<Scene, SceneError> {
    let grid = parse_cells(text)?;
    let points = match options.mode {
        Mode::FreeCells => {
            let free = grid.free_cells();
            if free.is_empty() {
                return Err(SceneError::NoFreeCells);
            }
            free
        }
        Mode::BoundaryCycle => boundary_ring(&grid, options.metric, options.eps)?,
    };
    let space = match options.mode {
        Mode::FreeCells => {
            let coords: Vec<(String, Vec<f64>)> = points
                .iter()
                .map(|&(r, c)| (cell_name(r, c), vec![r as f64, c as f64]))
                .collect();
            let label = format!("grid{}x{}", grid.rows, grid.cols);
            ProximitySpace::metric(label, &coords, options.metric, options.eps)?
        }
        Mode::BoundaryCycle => {
            let names: Vec<String> = points.iter().map(|&(r, c)| cell_name(r, c)).collect();
            let pairs: Vec<(String, String)> = (0..names.len())
                .map(|i| (names[i].clone(), names[(i + 1) % names.len()].clone()))
                .collect();
            let label = format!("boundary{}x{}", grid.rows, grid.cols);
            ProximitySpace::from_pairs(label, names, &pairs)?
        }
    };
    let features = feature_table(&grid, &points, options.probe)?;
    Ok(Scene { space, features })
}

/// Names resolved against a scene's space, for set-valued flags.
pub fn resolve_names(space: &ProximitySpace, spec: &str) -> Result<BTreeSet<usize>, SceneError> {
    let names: Vec<String> = spec
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    Ok(space.resolve_set(&names)?)
}
