//! Period-2 growth patterns.
//!
//! A growth stage on a `D × D` grid decomposes into four sides. Along each side the
//! gates repeat with period 2, so a stage for `D + 2` is the stage for `D` with one
//! more copy of a two-site strip spliced into every side. The strips are located by
//! per-side cut positions: for the left and right sides a cut is a row index, for the
//! top and bottom sides a column index. A gate whose anchor (minimum coordinate along
//! the axis) lies in `[cut-2, cut)` belongs to that side's repeat unit, anchors below
//! are head tiles that never move, and anchors at or beyond `cut` are tail tiles that
//! shift outward by 2 per extra copy.
//!
//! Which side a gate belongs to along an axis is decided by the mean of its other
//! coordinate relative to the grid midline.

use std::collections::BTreeSet;
use std::fmt;

use crate::circuit::{Circuit, Gate, Layer};
use crate::code::Coord;
use crate::error::SynthError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(d: usize) -> Self {
        if d % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Top,
    Right,
    Bottom,
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Head,
    Unit,
    Tail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TileOp {
    ResetZ,
    ResetX,
    Cx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SideCuts {
    pub left: usize,
    pub right: usize,
    pub top: usize,
    pub bottom: usize,
}

/// One gate of the reference instance together with how it moves when the stage grows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile {
    /// 0 for the reset layer, 1 and 2 for the two CX layers.
    pub step: usize,
    pub op: TileOp,
    /// One site for resets, `[control, target]` for CX, in reference coordinates.
    pub sites: Vec<Coord>,
    /// Role along the row axis (left/right sides).
    pub row_role: Role,
    /// Role along the column axis (top/bottom sides).
    pub col_role: Role,
    pub row_side: Side,
    pub col_side: Side,
}

impl Tile {
    /// The side whose repeat unit this tile belongs to, if any.
    pub fn unit_side(&self) -> Option<Side> {
        match (self.row_role, self.col_role) {
            (Role::Unit, _) => Some(self.row_side),
            (_, Role::Unit) => Some(self.col_side),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthPattern {
    parity: Parity,
    reference_size: usize,
    cuts: SideCuts,
    tiles: Vec<Tile>,
}

/// A stage as (step, op, sites) triples on a square grid.
type SiteGate = (usize, TileOp, Vec<Coord>);

fn site_gates(stage: &Circuit) -> Vec<SiteGate> {
    let mut out = Vec::new();
    let mut step = 0;
    for layer in stage.layers() {
        if layer.is_empty() {
            continue;
        }
        for g in layer.gates() {
            let (op, sites) = match *g {
                Gate::ResetZ(q) => (TileOp::ResetZ, vec![stage.coord(q)]),
                Gate::ResetX(q) => (TileOp::ResetX, vec![stage.coord(q)]),
                Gate::Cx { control, target } => {
                    (TileOp::Cx, vec![stage.coord(control), stage.coord(target)])
                }
                // Growth stages only reset and entangle.
                Gate::SDag(_) => continue,
            };
            out.push((step, op, sites));
        }
        step += 1;
    }
    out
}

fn stage_size(stage: &Circuit) -> Result<usize, SynthError> {
    let n = stage.n();
    let size = (n as f64).sqrt().round() as usize;
    if size * size != n || size < 4 {
        return Err(SynthError::Inconsistent(format!(
            "{n} qubits is not a square grid of side at least 4"
        )));
    }
    Ok(size)
}

fn role(anchor: usize, cut: usize) -> Role {
    if anchor + 2 < cut {
        Role::Head
    } else if anchor < cut {
        Role::Unit
    } else {
        Role::Tail
    }
}

fn classify(gates: &[SiteGate], size: usize, cuts: SideCuts) -> Option<Vec<Tile>> {
    let mid2 = size - 1;
    let mut tiles = Vec::with_capacity(gates.len());
    for (step, op, sites) in gates {
        let k = sites.len();
        let col_sum: usize = sites.iter().map(|c| c.col).sum();
        let row_sum: usize = sites.iter().map(|c| c.row).sum();
        let row_side = if 2 * col_sum < mid2 * k {
            Side::Left
        } else {
            Side::Right
        };
        let col_side = if 2 * row_sum < mid2 * k {
            Side::Top
        } else {
            Side::Bottom
        };
        let row_cut = if row_side == Side::Left {
            cuts.left
        } else {
            cuts.right
        };
        let col_cut = if col_side == Side::Top {
            cuts.top
        } else {
            cuts.bottom
        };
        let row_role = role(sites.iter().map(|c| c.row).min().unwrap(), row_cut);
        let col_role = role(sites.iter().map(|c| c.col).min().unwrap(), col_cut);
        if row_role == Role::Unit && col_role == Role::Unit {
            return None;
        }
        tiles.push(Tile {
            step: *step,
            op: *op,
            sites: sites.clone(),
            row_role,
            col_role,
            row_side,
            col_side,
        });
    }
    tiles.sort();
    Some(tiles)
}

fn shifts(role: Role, extra: i64) -> Vec<i64> {
    match role {
        Role::Head => vec![0],
        Role::Unit => (0..=extra).map(|j| 2 * j).collect(),
        Role::Tail => vec![2 * extra],
    }
}

fn instantiate_tiles(tiles: &[Tile], reference: usize, size: usize) -> Option<Vec<SiteGate>> {
    if size % 2 != reference % 2 || size + 2 < reference {
        return None;
    }
    let extra = (size as i64 - reference as i64) / 2;
    let mut out = Vec::new();
    for t in tiles {
        for dr in shifts(t.row_role, extra) {
            for dc in shifts(t.col_role, extra) {
                let mut sites = Vec::with_capacity(t.sites.len());
                for c in &t.sites {
                    let r = c.row as i64 + dr;
                    let cc = c.col as i64 + dc;
                    if r < 0 || cc < 0 || r >= size as i64 || cc >= size as i64 {
                        return None;
                    }
                    sites.push(Coord::new(r as usize, cc as usize));
                }
                out.push((t.step, t.op, sites));
            }
        }
    }
    Some(out)
}

fn to_circuit(gates: &[SiteGate], size: usize) -> Result<Circuit, SynthError> {
    let idx = |c: &Coord| c.row * size + c.col;
    let mut layers = vec![Vec::new(), Vec::new(), Vec::new()];
    for (step, op, sites) in gates {
        let g = match op {
            TileOp::ResetZ => Gate::ResetZ(idx(&sites[0])),
            TileOp::ResetX => Gate::ResetX(idx(&sites[0])),
            TileOp::Cx => Gate::cx(idx(&sites[0]), idx(&sites[1])),
        };
        layers[*step].push(g);
    }
    Ok(Circuit::new(
        Circuit::grid_coords(size, size),
        layers.into_iter().map(Layer::new).collect(),
        None,
    )?)
}

fn gate_set(gates: &[SiteGate]) -> BTreeSet<SiteGate> {
    gates.iter().cloned().collect()
}

fn describe_site(g: &SiteGate) -> String {
    let sites: Vec<String> = g.2.iter().map(|c| c.to_string()).collect();
    format!("step {} {:?} {}", g.0, g.1, sites.join("->"))
}

impl GrowthPattern {
    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Grid side of the instance the tiles are expressed in.
    pub fn reference_size(&self) -> usize {
        self.reference_size
    }

    pub fn cuts(&self) -> SideCuts {
        self.cuts
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    /// Tiles that repeat along `side`.
    pub fn unit(&self, side: Side) -> impl Iterator<Item = &Tile> {
        self.tiles
            .iter()
            .filter(move |t| t.unit_side() == Some(side))
    }

    /// Tiles that never repeat: corners and the fixed ends of every side.
    pub fn fixed(&self) -> impl Iterator<Item = &Tile> {
        self.tiles.iter().filter(|t| t.unit_side().is_none())
    }

    /// Smallest grid side this pattern can produce (zero copies of every unit).
    pub fn min_size(&self) -> usize {
        self.reference_size - 2
    }

    /// The stage on a `size × size` grid, growing distance `size-2` to `size`.
    pub fn instantiate(&self, size: usize) -> Result<Circuit, SynthError> {
        let err = SynthError::Size {
            reference: self.reference_size,
            size,
        };
        let gates = instantiate_tiles(&self.tiles, self.reference_size, size).ok_or(err)?;
        to_circuit(&gates, size)
    }
}

/// Extracts the period-2 pattern shared by stages of one parity.
///
/// The largest stage is the reference; every cut choice that reproduces all other
/// stages exactly is collected, and the choices must agree on the next two sizes.
pub fn pattern_from_instances(stages: &[Circuit]) -> Result<GrowthPattern, SynthError> {
    let mut sized: Vec<(usize, &Circuit)> = stages
        .iter()
        .map(|s| stage_size(s).map(|d| (d, s)))
        .collect::<Result<_, _>>()?;
    sized.sort_by_key(|(d, _)| *d);
    sized.dedup_by_key(|(d, _)| *d);
    if sized.len() < 2 {
        return Err(SynthError::Underdetermined);
    }
    let parity = Parity::of(sized[0].0);
    if sized.iter().any(|(d, _)| Parity::of(*d) != parity) {
        return Err(SynthError::Inconsistent("stages of both parities".into()));
    }
    let (reference, ref_stage) = *sized.last().unwrap();
    if sized[0].0 + 2 < reference {
        return Err(SynthError::Inconsistent(format!(
            "smallest stage ({}x{}) needs a negative number of repeat units",
            sized[0].0, sized[0].0
        )));
    }
    let ref_gates = site_gates(ref_stage);
    let others: Vec<(usize, BTreeSet<SiteGate>)> = sized[..sized.len() - 1]
        .iter()
        .map(|(d, s)| (*d, gate_set(&site_gates(s))))
        .collect();

    let range = 2..reference;
    let mut valid: Vec<(SideCuts, Vec<Tile>)> = Vec::new();
    let mut best: Option<(usize, String)> = None;
    for left in range.clone() {
        for right in range.clone() {
            for top in range.clone() {
                for bottom in range.clone() {
                    let cuts = SideCuts {
                        left,
                        right,
                        top,
                        bottom,
                    };
                    let Some(tiles) = classify(&ref_gates, reference, cuts) else {
                        continue;
                    };
                    let mut mismatch: Option<(usize, String)> = None;
                    for (d, expect) in &others {
                        let got = match instantiate_tiles(&tiles, reference, *d) {
                            Some(g) => gate_set(&g),
                            None => {
                                mismatch = Some((usize::MAX, format!("size {d}: out of grid")));
                                break;
                            }
                        };
                        if &got != expect {
                            let diff: Vec<&SiteGate> = got.symmetric_difference(expect).collect();
                            let first = diff[0];
                            let which = if expect.contains(first) {
                                "missing"
                            } else {
                                "unexpected"
                            };
                            mismatch = Some((
                                diff.len(),
                                format!("size {d}: {which} {}", describe_site(first)),
                            ));
                            break;
                        }
                    }
                    match mismatch {
                        None => valid.push((cuts, tiles)),
                        Some(m) => {
                            if best.as_ref().is_none_or(|b| m.0 < b.0) {
                                best = Some(m);
                            }
                        }
                    }
                }
            }
        }
    }
    let Some((cuts, tiles)) = valid.first().cloned() else {
        return Err(SynthError::NoTiling {
            site: best
                .map(|b| b.1)
                .unwrap_or_else(|| "no classifiable cut".into()),
        });
    };
    for size in [reference + 2, reference + 4] {
        let first = instantiate_tiles(&tiles, reference, size).map(|g| gate_set(&g));
        for (_, other) in &valid[1..] {
            if instantiate_tiles(other, reference, size).map(|g| gate_set(&g)) != first {
                return Err(SynthError::Ambiguous { size });
            }
        }
    }
    Ok(GrowthPattern {
        parity,
        reference_size: reference,
        cuts,
        tiles,
    })
}
