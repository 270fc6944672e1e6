//! Layered circuits over coordinate-indexed qubits.

use std::cmp::Ordering;

use crate::code::Coord;
use crate::error::CircuitError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    ResetZ(usize),
    ResetX(usize),
    Cx { control: usize, target: usize },
    SDag(usize),
}

impl Gate {
    pub fn cx(control: usize, target: usize) -> Self {
        Gate::Cx { control, target }
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> {
        let (a, b) = match *self {
            Gate::ResetZ(q) | Gate::ResetX(q) | Gate::SDag(q) => (q, None),
            Gate::Cx { control, target } => (control, Some(target)),
        };
        std::iter::once(a).chain(b)
    }

    pub fn is_reset(&self) -> bool {
        matches!(self, Gate::ResetZ(_) | Gate::ResetX(_))
    }

    pub fn is_cx(&self) -> bool {
        matches!(self, Gate::Cx { .. })
    }

    /// Token used by the text dialect.
    pub fn token(&self) -> &'static str {
        match self {
            Gate::ResetZ(_) => "R",
            Gate::ResetX(_) => "RX",
            Gate::Cx { .. } => "CX",
            Gate::SDag(_) => "S_DAG",
        }
    }

    fn kind_rank(&self) -> u8 {
        match self {
            Gate::ResetZ(_) => 0,
            Gate::ResetX(_) => 1,
            Gate::SDag(_) => 2,
            Gate::Cx { .. } => 3,
        }
    }

    fn sort_key(&self) -> (u8, usize, usize, usize) {
        match *self {
            Gate::ResetZ(q) | Gate::ResetX(q) | Gate::SDag(q) => (self.kind_rank(), q, q, q),
            Gate::Cx { control, target } => (
                self.kind_rank(),
                control.min(target),
                control.max(target),
                control,
            ),
        }
    }

    /// Same gate with qubit indices rewritten through `map`.
    pub fn remap(&self, map: impl Fn(usize) -> usize) -> Gate {
        match *self {
            Gate::ResetZ(q) => Gate::ResetZ(map(q)),
            Gate::ResetX(q) => Gate::ResetX(map(q)),
            Gate::SDag(q) => Gate::SDag(map(q)),
            Gate::Cx { control, target } => Gate::Cx {
                control: map(control),
                target: map(target),
            },
        }
    }
}

impl PartialOrd for Gate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by kind (R, RX, S_DAG, CX), then by minimum qubit index.
impl Ord for Gate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MarkerBasis {
    X,
    Z,
}

/// A `MARKX(k)`/`MARKZ(k)` annotation. Carried through parse and emit, never executed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Marker {
    pub basis: MarkerBasis,
    pub index: usize,
    pub qubits: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Layer {
    gates: Vec<Gate>,
    markers: Vec<Marker>,
}

impl Layer {
    pub fn new(mut gates: Vec<Gate>) -> Self {
        gates.sort();
        Self {
            gates,
            markers: Vec::new(),
        }
    }

    pub fn with_markers(mut self, markers: Vec<Marker>) -> Self {
        self.markers = markers;
        self
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn markers(&self) -> &[Marker] {
        &self.markers
    }

    pub fn cx_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_cx()).count()
    }

    pub fn has_reset(&self) -> bool {
        self.gates.iter().any(Gate::is_reset)
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalityViolation {
    pub layer: usize,
    pub gate: Gate,
    pub from: Coord,
    pub to: Coord,
    pub distance: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    qubit_coords: Vec<Coord>,
    layers: Vec<Layer>,
    input_qubit: Option<usize>,
}

impl Circuit {
    /// Validates layer exclusivity, qubit ranges and the input-qubit invariant.
    pub fn new(
        qubit_coords: Vec<Coord>,
        layers: Vec<Layer>,
        input_qubit: Option<usize>,
    ) -> Result<Self, CircuitError> {
        let n = qubit_coords.len();
        let mut seen = vec![usize::MAX; n];
        for (li, layer) in layers.iter().enumerate() {
            for g in &layer.gates {
                if let Gate::Cx { control, target } = *g {
                    if control == target {
                        return Err(CircuitError::SelfCx {
                            layer: li,
                            qubit: control,
                        });
                    }
                }
                for q in g.qubits() {
                    if q >= n {
                        return Err(CircuitError::MissingCoordinate { qubit: q, n });
                    }
                    if seen[q] == li {
                        return Err(CircuitError::LayerConflict {
                            layer: li,
                            qubit: q,
                        });
                    }
                    seen[q] = li;
                    if g.is_reset() && Some(q) == input_qubit {
                        return Err(CircuitError::InputReset(q));
                    }
                }
            }
            for m in &layer.markers {
                if let Some(&q) = m.qubits.iter().find(|&&q| q >= n) {
                    return Err(CircuitError::MissingCoordinate { qubit: q, n });
                }
            }
        }
        if let Some(q) = input_qubit {
            if q >= n {
                return Err(CircuitError::MissingCoordinate { qubit: q, n });
            }
        }
        Ok(Self {
            qubit_coords,
            layers,
            input_qubit,
        })
    }

    /// Row-major coordinates for a `rows × cols` grid.
    pub fn grid_coords(rows: usize, cols: usize) -> Vec<Coord> {
        (0..rows)
            .flat_map(|r| (0..cols).map(move |c| Coord::new(r, c)))
            .collect()
    }

    pub fn n(&self) -> usize {
        self.qubit_coords.len()
    }

    pub fn qubit_coords(&self) -> &[Coord] {
        &self.qubit_coords
    }

    pub fn coord(&self, q: usize) -> Coord {
        self.qubit_coords[q]
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn input_qubit(&self) -> Option<usize> {
        self.input_qubit
    }

    pub fn gates(&self) -> impl Iterator<Item = (usize, &Gate)> {
        self.layers
            .iter()
            .enumerate()
            .flat_map(|(i, l)| l.gates.iter().map(move |g| (i, g)))
    }

    /// The unique never-reset qubit, if exactly one exists.
    pub fn infer_input_qubit(&self) -> Option<usize> {
        let mut reset = vec![false; self.n()];
        for (_, g) in self.gates() {
            if g.is_reset() {
                g.qubits().for_each(|q| reset[q] = true);
            }
        }
        let mut free = reset
            .iter()
            .enumerate()
            .filter(|(_, r)| !**r)
            .map(|(q, _)| q);
        match (free.next(), free.next()) {
            (Some(q), None) => Some(q),
            _ => None,
        }
    }

    pub fn with_input_qubit(self, input: Option<usize>) -> Result<Self, CircuitError> {
        Circuit::new(self.qubit_coords, self.layers, input)
    }

    /// Drops all marker annotations.
    pub fn without_markers(mut self) -> Self {
        for l in &mut self.layers {
            l.markers.clear();
        }
        self
    }

    /// Number of layers containing at least one CX.
    pub fn depth(&self) -> usize {
        self.layers.iter().filter(|l| l.cx_count() > 0).count()
    }

    pub fn two_qubit_count(&self) -> usize {
        self.layers.iter().map(Layer::cx_count).sum()
    }

    pub fn reset_count(&self) -> usize {
        self.gates().filter(|(_, g)| g.is_reset()).count()
    }

    pub fn check_locality(&self) -> Vec<LocalityViolation> {
        let mut out = Vec::new();
        for (li, g) in self.gates() {
            if let Gate::Cx { control, target } = *g {
                let (a, b) = (self.coord(control), self.coord(target));
                let distance = a.manhattan(b);
                if distance != 1 {
                    out.push(LocalityViolation {
                        layer: li,
                        gate: *g,
                        from: a,
                        to: b,
                        distance,
                    });
                }
            }
        }
        out
    }

    /// CX counts per stage, where a stage starts at every layer holding a reset.
    /// Layers before the first reset are attributed to the first stage.
    pub fn stage_cx_counts(&self) -> Vec<usize> {
        let mut counts: Vec<usize> = Vec::new();
        for layer in &self.layers {
            if layer.has_reset() || counts.is_empty() {
                counts.push(0);
            }
            *counts.last_mut().unwrap() += layer.cx_count();
        }
        counts
    }

    /// Layer-wise concatenation on the same qubit set.
    pub fn concat(&self, other: &Circuit) -> Result<Circuit, CircuitError> {
        if self.qubit_coords != other.qubit_coords {
            return Err(CircuitError::QubitSetMismatch);
        }
        let mut layers = self.layers.clone();
        layers.extend(other.layers.iter().cloned());
        Circuit::new(
            self.qubit_coords.clone(),
            layers,
            self.input_qubit.or(other.input_qubit),
        )
    }

    /// Re-indexes into a host circuit's qubit numbering.
    pub fn remap(
        &self,
        host_coords: Vec<Coord>,
        map: impl Fn(usize) -> usize,
    ) -> Result<Circuit, CircuitError> {
        let layers = self
            .layers
            .iter()
            .map(|l| {
                Layer::new(l.gates.iter().map(|g| g.remap(&map)).collect()).with_markers(
                    l.markers
                        .iter()
                        .map(|m| Marker {
                            basis: m.basis,
                            index: m.index,
                            qubits: m.qubits.iter().map(|&q| map(q)).collect(),
                        })
                        .collect(),
                )
            })
            .collect();
        Circuit::new(host_coords, layers, self.input_qubit.map(&map))
    }
}
