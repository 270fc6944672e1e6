//! The distance-d rotated surface code on a d×d grid.
//!
//! Plaquette `(r, c)` covers grid rows `r..=r+1` and columns `c..=c+1`, with `r, c`
//! ranging over `-1..d` so boundary plaquettes hang half off the grid. A plaquette
//! is X-type iff `r + c` is even. Bulk plaquettes have weight 4; weight-2 boundary
//! plaquettes are Z-type on the top and bottom edges and X-type on the left and
//! right edges. Logical X runs along row 0, logical Z along column 0.

use std::fmt;

use crate::error::{AlgebraError, CodeError};
use crate::pauli::{Axis, PauliOperator};
use crate::stabilizer::StabilizerSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coord {
    pub row: usize,
    pub col: usize,
}

impl Coord {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    pub fn manhattan(self, other: Coord) -> usize {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaquetteKind {
    X,
    Z,
}

impl PlaquetteKind {
    pub fn axis(self) -> Axis {
        match self {
            PlaquetteKind::X => Axis::X,
            PlaquetteKind::Z => Axis::Z,
        }
    }
}

/// One stabilizer generator: a plaquette and the grid qubits it acts on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Plaquette {
    pub kind: PlaquetteKind,
    /// Code-local plaquette anchor; may be −1 on the boundary.
    pub anchor: (i64, i64),
    pub qubits: Vec<usize>,
}

impl Plaquette {
    pub fn weight(&self) -> usize {
        self.qubits.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotatedSurfaceCode {
    d: usize,
    grid: usize,
    offset: Coord,
    stabilizers: Vec<Plaquette>,
    logical_x: Vec<usize>,
    logical_z: Vec<usize>,
}

impl RotatedSurfaceCode {
    pub fn build(d: usize) -> Result<Self, CodeError> {
        if d < 2 {
            return Err(CodeError::Distance(d));
        }
        Ok(Self::layout(d, d, Coord::new(0, 0)))
    }

    fn layout(d: usize, grid: usize, offset: Coord) -> Self {
        let index = |r: usize, c: usize| (r + offset.row) * grid + c + offset.col;
        let di = d as i64;
        let mut stabilizers = Vec::new();
        for r in -1..di {
            for c in -1..di {
                let kind = if (r + c).rem_euclid(2) == 0 {
                    PlaquetteKind::X
                } else {
                    PlaquetteKind::Z
                };
                let mut qubits = Vec::with_capacity(4);
                for rr in [r, r + 1] {
                    for cc in [c, c + 1] {
                        if (0..di).contains(&rr) && (0..di).contains(&cc) {
                            qubits.push(index(rr as usize, cc as usize));
                        }
                    }
                }
                let keep = match qubits.len() {
                    4 => true,
                    2 => match kind {
                        PlaquetteKind::Z => r == -1 || r == di - 1,
                        PlaquetteKind::X => c == -1 || c == di - 1,
                    },
                    _ => false,
                };
                if keep {
                    stabilizers.push(Plaquette {
                        kind,
                        anchor: (r, c),
                        qubits,
                    });
                }
            }
        }
        Self {
            d,
            grid,
            offset,
            stabilizers,
            logical_x: (0..d).map(|c| index(0, c)).collect(),
            logical_z: (0..d).map(|r| index(r, 0)).collect(),
        }
    }

    /// The same code re-indexed into a `grid_d × grid_d` grid with its local origin at
    /// `offset`.
    pub fn embed(&self, grid_d: usize, offset: Coord) -> Result<Self, CodeError> {
        let Coord { row, col } = offset;
        if row + self.d > grid_d || col + self.d > grid_d {
            return Err(CodeError::OutOfBounds {
                d: self.d,
                grid: grid_d,
                row,
                col,
            });
        }
        Ok(Self::layout(self.d, grid_d, Coord::new(row, col)))
    }

    pub fn distance(&self) -> usize {
        self.d
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn offset(&self) -> Coord {
        self.offset
    }

    /// Qubit count of the host grid.
    pub fn n(&self) -> usize {
        self.grid * self.grid
    }

    pub fn qubit_at(&self, local: Coord) -> Option<usize> {
        (local.row < self.d && local.col < self.d)
            .then(|| (local.row + self.offset.row) * self.grid + local.col + self.offset.col)
    }

    pub fn coord_of(&self, qubit: usize) -> Option<Coord> {
        let (r, c) = (qubit / self.grid, qubit % self.grid);
        let inside = qubit < self.n()
            && (self.offset.row..self.offset.row + self.d).contains(&r)
            && (self.offset.col..self.offset.col + self.d).contains(&c);
        inside.then(|| Coord::new(r - self.offset.row, c - self.offset.col))
    }

    pub fn data_qubits(&self) -> Vec<usize> {
        (0..self.d)
            .flat_map(|r| (0..self.d).map(move |c| Coord::new(r, c)))
            .filter_map(|c| self.qubit_at(c))
            .collect()
    }

    pub fn stabilizers(&self) -> &[Plaquette] {
        &self.stabilizers
    }

    pub fn x_stabilizers(&self) -> impl Iterator<Item = &Plaquette> {
        self.stabilizers
            .iter()
            .filter(|p| p.kind == PlaquetteKind::X)
    }

    pub fn z_stabilizers(&self) -> impl Iterator<Item = &Plaquette> {
        self.stabilizers
            .iter()
            .filter(|p| p.kind == PlaquetteKind::Z)
    }

    pub fn logical_x_support(&self) -> &[usize] {
        &self.logical_x
    }

    pub fn logical_z_support(&self) -> &[usize] {
        &self.logical_z
    }

    pub fn stabilizer_operators(&self) -> Vec<PauliOperator> {
        self.stabilizers
            .iter()
            .map(|p| PauliOperator::uniform(self.n(), p.qubits.iter().copied(), p.kind.axis()))
            .collect()
    }

    pub fn stabilizer_group(&self) -> Result<StabilizerSet, AlgebraError> {
        StabilizerSet::new(self.n(), self.stabilizer_operators())
    }

    pub fn logical_x(&self) -> PauliOperator {
        PauliOperator::uniform(self.n(), self.logical_x.iter().copied(), Axis::X)
    }

    pub fn logical_z(&self) -> PauliOperator {
        PauliOperator::uniform(self.n(), self.logical_z.iter().copied(), Axis::Z)
    }

    /// One line per generator (`X 0 1 3 4`), preceded by a header line.
    pub fn describe(&self) -> String {
        let mut out = format!(
            "# rotated-surface-code d={} grid={} offset={}\n",
            self.d, self.grid, self.offset
        );
        for p in &self.stabilizers {
            let kind = match p.kind {
                PlaquetteKind::X => 'X',
                PlaquetteKind::Z => 'Z',
            };
            out.push(kind);
            for q in &p.qubits {
                out.push_str(&format!(" {q}"));
            }
            out.push('\n');
        }
        let join = |v: &[usize]| {
            v.iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        out.push_str(&format!("LX {}\n", join(&self.logical_x)));
        out.push_str(&format!("LZ {}\n", join(&self.logical_z)));
        out
    }
}

pub fn build_code(d: usize) -> Result<RotatedSurfaceCode, CodeError> {
    RotatedSurfaceCode::build(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::rank;
    use std::collections::BTreeSet;

    fn sets(code: &RotatedSurfaceCode) -> BTreeSet<(PlaquetteKind, BTreeSet<usize>)> {
        code.stabilizers()
            .iter()
            .map(|p| (p.kind, p.qubits.iter().copied().collect()))
            .collect()
    }

    #[test]
    fn small_distance_rejected() {
        assert_eq!(build_code(1), Err(CodeError::Distance(1)));
        assert_eq!(build_code(0), Err(CodeError::Distance(0)));
    }

    #[test]
    fn d2_layout() {
        let code = build_code(2).unwrap();
        let expect: BTreeSet<_> = [
            (PlaquetteKind::X, BTreeSet::from([0, 1, 2, 3])),
            (PlaquetteKind::Z, BTreeSet::from([0, 1])),
            (PlaquetteKind::Z, BTreeSet::from([2, 3])),
        ]
        .into_iter()
        .collect();
        assert_eq!(sets(&code), expect);
    }

    #[test]
    fn d5_weight_census() {
        let code = build_code(5).unwrap();
        let w2 = code
            .stabilizers()
            .iter()
            .filter(|p| p.weight() == 2)
            .count();
        let w4 = code
            .stabilizers()
            .iter()
            .filter(|p| p.weight() == 4)
            .count();
        assert_eq!((w2, w4), (8, 16));
        assert_eq!(rank(&code.stabilizer_operators()).unwrap(), 24);
    }

    #[test]
    fn embed_identity_offset() {
        let code = build_code(4).unwrap();
        assert_eq!(code.embed(4, Coord::new(0, 0)).unwrap(), code);
        assert!(matches!(
            code.embed(5, Coord::new(1, 2)),
            Err(CodeError::OutOfBounds { .. })
        ));
    }

    #[test]
    fn coordinates_roundtrip() {
        let code = build_code(3).unwrap().embed(7, Coord::new(2, 2)).unwrap();
        assert_eq!(code.qubit_at(Coord::new(0, 0)), Some(16));
        assert_eq!(code.coord_of(24), Some(Coord::new(1, 1)));
        assert_eq!(code.coord_of(0), None);
        assert_eq!(code.data_qubits().len(), 9);
    }

    #[test]
    fn describe_lists_every_generator() {
        let text = build_code(3).unwrap().describe();
        assert_eq!(text.lines().count(), 1 + 8 + 2);
        assert!(text.contains("\nZ 0 1\n"));
        assert!(text.ends_with("LZ 0 3 6\n"));
    }
}
