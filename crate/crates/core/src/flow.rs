//! Stabilizer-flow certification of encoding circuits.
//!
//! Resets inject `+Z_q` or `+X_q`; unitary gates conjugate every tracked operator.
//! At the end the tracked generators are compared, signs included, against the target
//! code, and the images of the input qubit's `X` and `Z` are resolved against the
//! target's logical cosets.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::circuit::{Circuit, Gate, Layer};
use crate::code::{build_code, Coord, RotatedSurfaceCode};
use crate::error::{AlgebraError, VerifyError};
use crate::pauli::{Axis, PauliOperator, Phase};
use crate::stabilizer::{Membership, StabilizerSet};
use crate::synth::{full_encoder, growth_stage};

/// Operators tracked through a circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowState {
    n: usize,
    stabilizers: Vec<PauliOperator>,
    logical_x: Option<PauliOperator>,
    logical_z: Option<PauliOperator>,
}

impl FlowState {
    /// No tracked operators.
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            stabilizers: Vec::new(),
            logical_x: None,
            logical_z: None,
        }
    }

    /// Tracks `X` and `Z` of the unencoded input qubit.
    pub fn for_input(n: usize, input: usize) -> Self {
        Self {
            n,
            stabilizers: Vec::new(),
            logical_x: Some(PauliOperator::single(n, input, Axis::X)),
            logical_z: Some(PauliOperator::single(n, input, Axis::Z)),
        }
    }

    /// The state of an already encoded patch: its generators and logical operators.
    pub fn from_code(code: &RotatedSurfaceCode) -> Self {
        Self {
            n: code.n(),
            stabilizers: code.stabilizer_operators(),
            logical_x: Some(code.logical_x()),
            logical_z: Some(code.logical_z()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stabilizers(&self) -> &[PauliOperator] {
        &self.stabilizers
    }

    pub fn logical_x(&self) -> Option<&PauliOperator> {
        self.logical_x.as_ref()
    }

    pub fn logical_z(&self) -> Option<&PauliOperator> {
        self.logical_z.as_ref()
    }

    fn tracked_mut(&mut self) -> impl Iterator<Item = &mut PauliOperator> {
        self.stabilizers
            .iter_mut()
            .chain(self.logical_x.iter_mut())
            .chain(self.logical_z.iter_mut())
    }

    fn supports(&self, q: usize) -> bool {
        self.stabilizers
            .iter()
            .chain(self.logical_x.iter())
            .chain(self.logical_z.iter())
            .any(|p| p.acts_on(q))
    }

    /// Applies one gate. `layer` is only used for error reporting.
    pub fn apply(&mut self, gate: &Gate, layer: usize) -> Result<(), VerifyError> {
        match *gate {
            Gate::ResetZ(q) | Gate::ResetX(q) => {
                if q >= self.n {
                    return Err(AlgebraError::QubitOutOfRange {
                        qubit: q,
                        n: self.n,
                    }
                    .into());
                }
                if self.supports(q) {
                    return Err(VerifyError::NonUnitarity { layer, qubit: q });
                }
                let axis = if matches!(gate, Gate::ResetZ(_)) {
                    Axis::Z
                } else {
                    Axis::X
                };
                self.stabilizers
                    .push(PauliOperator::single(self.n, q, axis));
            }
            Gate::Cx { .. } | Gate::SDag(_) => {
                for p in self.tracked_mut() {
                    p.conjugate_in_place(gate)?;
                }
            }
        }
        Ok(())
    }

    pub fn apply_layer(&mut self, layer: &Layer, index: usize) -> Result<(), VerifyError> {
        for g in layer.gates() {
            self.apply(g, index)?;
        }
        Ok(())
    }

    /// Commutation, independence and logical anticommutation of the tracked operators.
    pub fn check_invariants(&self, layer: usize) -> Result<(), VerifyError> {
        let invariant = |what: String| VerifyError::Invariant { layer, what };
        let group = StabilizerSet::new(self.n, self.stabilizers.clone())
            .map_err(|e| invariant(e.to_string()))?;
        if let (Some(x), Some(z)) = (&self.logical_x, &self.logical_z) {
            if x.commutes(z)? {
                return Err(invariant("logical X and Z commute".into()));
            }
            if !group.commutes_with_all(x) || !group.commutes_with_all(z) {
                return Err(invariant("a logical anticommutes with a stabilizer".into()));
            }
        }
        Ok(())
    }

    pub fn run(&mut self, circuit: &Circuit, strict: bool) -> Result<(), VerifyError> {
        if circuit.n() != self.n {
            return Err(VerifyError::Dimension {
                circuit: circuit.n(),
                code: self.n,
            });
        }
        for (i, layer) in circuit.layers().iter().enumerate() {
            self.apply_layer(layer, i)?;
            if strict {
                self.check_invariants(i)?;
            }
        }
        Ok(())
    }
}

/// `±X`, `±Y` or `±Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedAxis {
    pub negative: bool,
    pub axis: Axis,
}

impl SignedAxis {
    pub const fn plus(axis: Axis) -> Self {
        Self {
            negative: false,
            axis,
        }
    }

    pub const fn minus(axis: Axis) -> Self {
        Self {
            negative: true,
            axis,
        }
    }

    fn operator(self) -> PauliOperator {
        let p = PauliOperator::single(1, 0, self.axis);
        if self.negative {
            p.negated()
        } else {
            p
        }
    }

    fn from_operator(p: &PauliOperator) -> Self {
        Self {
            negative: p.phase().is_negative(),
            axis: p.axis(0),
        }
    }
}

impl fmt::Display for SignedAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { '-' } else { '+' };
        write!(f, "{sign}{}", self.axis.letter())
    }
}

/// A single-qubit Clifford up to global phase, given by where it sends `X` and `Z`
/// under conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LogicalFrame {
    pub x: SignedAxis,
    pub z: SignedAxis,
}

const NAMED: [(&str, SignedAxis, SignedAxis); 18] = {
    use Axis::{X, Y, Z};
    const fn p(a: Axis) -> SignedAxis {
        SignedAxis::plus(a)
    }
    const fn m(a: Axis) -> SignedAxis {
        SignedAxis::minus(a)
    }
    [
        ("I", p(X), p(Z)),
        ("X", p(X), m(Z)),
        ("Y", m(X), m(Z)),
        ("Z", m(X), p(Z)),
        ("H", p(Z), p(X)),
        ("S", p(Y), p(Z)),
        ("S_DAG", m(Y), p(Z)),
        ("SQRT_X", p(X), m(Y)),
        ("SQRT_X_DAG", p(X), p(Y)),
        ("SQRT_Y", m(Z), p(X)),
        ("SQRT_Y_DAG", p(Z), m(X)),
        ("H_XY", p(Y), m(Z)),
        ("H_YZ", m(X), p(Y)),
        ("H_NXY", m(Y), m(Z)),
        ("H_NXZ", m(Z), m(X)),
        ("H_NYZ", m(X), m(Y)),
        ("C_XYZ", p(Y), p(X)),
        ("C_ZYX", p(Z), p(Y)),
    ]
};

impl LogicalFrame {
    pub const IDENTITY: LogicalFrame = LogicalFrame {
        x: SignedAxis::plus(Axis::X),
        z: SignedAxis::plus(Axis::Z),
    };

    /// All 24 frames, in a fixed order.
    pub fn all() -> Vec<LogicalFrame> {
        let axes = [Axis::X, Axis::Y, Axis::Z];
        let mut out = Vec::with_capacity(24);
        for ax in axes {
            for az in axes {
                if ax == az {
                    continue;
                }
                for nx in [false, true] {
                    for nz in [false, true] {
                        out.push(LogicalFrame {
                            x: SignedAxis {
                                negative: nx,
                                axis: ax,
                            },
                            z: SignedAxis {
                                negative: nz,
                                axis: az,
                            },
                        });
                    }
                }
            }
        }
        out
    }

    /// Image of a signed Pauli under this frame.
    pub fn map(&self, s: SignedAxis) -> SignedAxis {
        let (x, z) = (self.x.operator(), self.z.operator());
        let image = match s.axis {
            Axis::X => x,
            Axis::Z => z,
            // Y = i·X·Z
            Axis::Y => times_i(x.mul_unchecked(&z)),
            Axis::I => unreachable!("frames act on non-identity Paulis"),
        };
        let image = if s.negative { image.negated() } else { image };
        SignedAxis::from_operator(&image)
    }

    /// `other` applied after `self`.
    pub fn then(&self, other: &LogicalFrame) -> LogicalFrame {
        LogicalFrame {
            x: other.map(self.x),
            z: other.map(self.z),
        }
    }

    pub fn inverse(&self) -> LogicalFrame {
        Self::all()
            .into_iter()
            .find(|f| self.then(f) == Self::IDENTITY)
            .expect("every frame is invertible")
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// Conventional gate name, where one exists.
    pub fn name(&self) -> Option<&'static str> {
        NAMED
            .iter()
            .find(|(_, x, z)| *x == self.x && *z == self.z)
            .map(|(n, _, _)| *n)
    }
}

impl fmt::Display for LogicalFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X->{},Z->{}", self.x, self.z)?;
        if let Some(name) = self.name() {
            write!(f, " ({name})")?;
        }
        Ok(())
    }
}

impl Serialize for LogicalFrame {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn times_i(p: PauliOperator) -> PauliOperator {
    let phase = p.phase() * Phase::I;
    p.with_phase(phase)
}

/// Finds `±L` with `L ∈ {X_L, Y_L, Z_L}` such that `image = ±L · g` for some `g` in the
/// group.
fn resolve_logical(
    image: &PauliOperator,
    group: &StabilizerSet,
    code: &RotatedSurfaceCode,
) -> Result<Option<SignedAxis>, VerifyError> {
    let lx = code.logical_x();
    let lz = code.logical_z();
    let ly = times_i(lx.multiply(&lz)?);
    for (axis, l) in [(Axis::X, lx), (Axis::Y, ly), (Axis::Z, lz)] {
        // image = s·L·g and L commutes with g, so image·L = s·g.
        let q = image.multiply(&l)?;
        if let Membership::Member { sign, .. } = group.member_with_sign(&q)? {
            let s = q.phase() * sign;
            if s.is_real() {
                return Ok(Some(SignedAxis {
                    negative: s.is_negative(),
                    axis,
                }));
            }
        }
    }
    Ok(None)
}

/// Result of certifying one circuit against one code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EncodingCertificate {
    pub distance: usize,
    pub qubits: usize,
    pub tracked_stabilizers: usize,
    pub row_space_match: bool,
    pub sign_match: bool,
    pub group_match: bool,
    pub logical_frame: Option<LogicalFrame>,
    pub logicals_ok: bool,
    pub logical_x_support: String,
    pub logical_z_support: String,
    pub depth: usize,
    pub expected_depth: usize,
    pub locality_ok: bool,
    pub locality_violations: usize,
    pub cx_count: usize,
    pub reset_count: usize,
    pub per_stage_counts: Vec<usize>,
}

impl EncodingCertificate {
    pub fn passes(&self) -> bool {
        self.group_match && self.sign_match && self.locality_ok && self.depth == self.expected_depth
    }

    /// Aligned `key = value` lines.
    pub fn to_text(&self) -> String {
        let frame = self
            .logical_frame
            .map_or_else(|| "unresolved".to_string(), |f| f.to_string());
        let stages: Vec<String> = self
            .per_stage_counts
            .iter()
            .map(|c| c.to_string())
            .collect();
        let rows: [(&str, String); 18] = [
            ("distance", self.distance.to_string()),
            ("qubits", self.qubits.to_string()),
            ("tracked_stabilizers", self.tracked_stabilizers.to_string()),
            ("row_space_match", self.row_space_match.to_string()),
            ("sign_match", self.sign_match.to_string()),
            ("group_match", self.group_match.to_string()),
            ("logical_frame", frame),
            ("logicals_ok", self.logicals_ok.to_string()),
            ("logical_x_support", self.logical_x_support.clone()),
            ("logical_z_support", self.logical_z_support.clone()),
            ("depth", self.depth.to_string()),
            ("expected_depth", self.expected_depth.to_string()),
            ("locality_ok", self.locality_ok.to_string()),
            ("locality_violations", self.locality_violations.to_string()),
            ("cx_count", self.cx_count.to_string()),
            ("reset_count", self.reset_count.to_string()),
            ("per_stage_counts", stages.join(",")),
            (
                "verdict",
                if self.passes() { "PASS" } else { "FAIL" }.to_string(),
            ),
        ];
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{k:<width$} = {v}\n"))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate fields are plain data")
    }
}

/// Compares a finished flow against `target`.
fn certify(
    state: &FlowState,
    circuit: &Circuit,
    target: &RotatedSurfaceCode,
) -> Result<EncodingCertificate, VerifyError> {
    let group = target.stabilizer_group()?;
    let tracked = StabilizerSet::new(state.n, state.stabilizers.clone())?;
    let cmp = tracked.compare(&group)?;
    let (lx, lz) = match (&state.logical_x, &state.logical_z) {
        (Some(x), Some(z)) => (x, z),
        _ => return Err(VerifyError::NoInput),
    };
    let logicals_ok = !lx.commutes(lz)?
        && [lx, lz]
            .iter()
            .all(|l| group.commutes_with_all(l) && !group.spans(l).unwrap_or(true));
    let logical_frame = if cmp.row_space {
        match (
            resolve_logical(lx, &group, target)?,
            resolve_logical(lz, &group, target)?,
        ) {
            (Some(x), Some(z)) => Some(LogicalFrame { x, z }),
            _ => None,
        }
    } else {
        None
    };
    let d = target.distance();
    let violations = circuit.check_locality().len();
    Ok(EncodingCertificate {
        distance: d,
        qubits: target.n(),
        tracked_stabilizers: state.stabilizers.len(),
        row_space_match: cmp.row_space,
        sign_match: cmp.signs,
        group_match: cmp.equal(),
        logical_frame,
        logicals_ok,
        logical_x_support: support_label(target.logical_x_support(), target),
        logical_z_support: support_label(target.logical_z_support(), target),
        depth: circuit.depth(),
        expected_depth: d + d % 2,
        locality_ok: violations == 0,
        locality_violations: violations,
        cx_count: circuit.two_qubit_count(),
        reset_count: circuit.reset_count(),
        per_stage_counts: circuit.stage_cx_counts(),
    })
}

fn support_label(support: &[usize], code: &RotatedSurfaceCode) -> String {
    let coords: Vec<Coord> = support.iter().filter_map(|&q| code.coord_of(q)).collect();
    if coords.iter().all(|c| c.row == 0) {
        "row 0".into()
    } else if coords.iter().all(|c| c.col == 0) {
        "col 0".into()
    } else {
        format!("{support:?}")
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Check commutation, independence and logical anticommutation after every layer.
    pub strict: bool,
}

pub fn verify_encoding(
    circuit: &Circuit,
    target: &RotatedSurfaceCode,
) -> Result<EncodingCertificate, VerifyError> {
    verify_encoding_with(circuit, target, VerifyOptions::default())
}

pub fn verify_encoding_with(
    circuit: &Circuit,
    target: &RotatedSurfaceCode,
    options: VerifyOptions,
) -> Result<EncodingCertificate, VerifyError> {
    if circuit.n() != target.n() {
        return Err(VerifyError::Dimension {
            circuit: circuit.n(),
            code: target.n(),
        });
    }
    let input = circuit.input_qubit().ok_or(VerifyError::NoInput)?;
    let mut state = FlowState::for_input(circuit.n(), input);
    state.run(circuit, options.strict)?;
    certify(&state, circuit, target)
}

/// Logical frame implemented by the full encoder at distance `d`.
pub fn logical_frame_of_chain(d: usize) -> Result<Option<LogicalFrame>, VerifyError> {
    let cert = verify_encoding(&full_encoder(d)?, &build_code(d)?)?;
    Ok(cert.logical_frame)
}

/// Stage-local certificate: a verified distance-`d` patch at offset (1,1) of the
/// `(d+2) × (d+2)` grid, pushed through `growth_stage(d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StageCertificate {
    pub d: usize,
    pub group_match: bool,
    pub frame: Option<LogicalFrame>,
    pub depth: usize,
    pub resets: usize,
    pub locality_ok: bool,
}

impl StageCertificate {
    pub fn passes(&self) -> bool {
        self.group_match && self.depth == 2 && self.resets == 4 * (self.d + 1) && self.locality_ok
    }
}

pub fn verify_growth_stage(d: usize, strict: bool) -> Result<StageCertificate, VerifyError> {
    let stage = growth_stage(d)?;
    let patch = build_code(d)?.embed(d + 2, Coord::new(1, 1))?;
    let mut state = FlowState::from_code(&patch);
    if strict {
        state.check_invariants(0)?;
    }
    state.run(&stage, strict)?;
    let cert = certify(&state, &stage, &build_code(d + 2)?)?;
    Ok(StageCertificate {
        d,
        group_match: cert.group_match,
        frame: cert.logical_frame,
        depth: cert.depth,
        resets: cert.reset_count,
        locality_ok: cert.locality_ok,
    })
}
