//! Pauli operators with exact phase tracking.
//!
//! An operator is stored as `i^phase * P_0 ⊗ P_1 ⊗ …` with each `P_q ∈ {I, X, Y, Z}`
//! encoded by the bit pair `(x_q, z_q)`: `(1,0) = X`, `(0,1) = Z`, `(1,1) = Y`.
//! Under this convention every Hermitian operator has phase `+1` or `−1`.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitRow;
use crate::circuit::Gate;
use crate::error::AlgebraError;

/// Power of `i`, kept modulo 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(e: i64) -> Self {
        Phase(e.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn is_negative(self) -> bool {
        self.0 == 2
    }

    pub fn negate(self) -> Self {
        Phase((self.0 + 2) % 4)
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        })
    }
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    I,
    X,
    Y,
    Z,
}

impl Axis {
    pub fn bits(self) -> (bool, bool) {
        match self {
            Axis::I => (false, false),
            Axis::X => (true, false),
            Axis::Y => (true, true),
            Axis::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Axis::I,
            (true, false) => Axis::X,
            (true, true) => Axis::Y,
            (false, true) => Axis::Z,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Axis::I => '_',
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitRow,
    z: BitRow,
    phase: Phase,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitRow::zeros(n),
            z: BitRow::zeros(n),
            phase: Phase::ONE,
        }
    }

    pub fn from_parts(x: BitRow, z: BitRow, phase: Phase) -> Result<Self, AlgebraError> {
        if x.len() != z.len() {
            return Err(AlgebraError::Dimension {
                left: x.len(),
                right: z.len(),
            });
        }
        Ok(Self { x, z, phase })
    }

    /// `+P_q` on a single qubit.
    pub fn single(n: usize, qubit: usize, axis: Axis) -> Self {
        let mut p = Self::identity(n);
        p.set_axis(qubit, axis);
        p
    }

    /// `+P^{⊗S}` of one letter over a qubit set.
    pub fn uniform(n: usize, qubits: impl IntoIterator<Item = usize>, axis: Axis) -> Self {
        let mut p = Self::identity(n);
        for q in qubits {
            p.set_axis(q, axis);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x_mask(&self) -> &BitRow {
        &self.x
    }

    pub fn z_mask(&self) -> &BitRow {
        &self.z
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn negated(mut self) -> Self {
        self.phase = self.phase.negate();
        self
    }

    pub fn axis(&self, q: usize) -> Axis {
        Axis::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set_axis(&mut self, q: usize, axis: Axis) {
        let (x, z) = axis.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn weight(&self) -> usize {
        self.x.or_count(&self.z)
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn acts_on(&self, q: usize) -> bool {
        self.x.get(q) || self.z.get(q)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(|&q| self.acts_on(q))
    }

    /// Symplectic vector `[x | z]` of length `2n`.
    pub fn symplectic(&self) -> BitRow {
        self.x.concat(&self.z)
    }

    /// Same masks, phase `+1`.
    pub fn unsigned(&self) -> Self {
        self.clone().with_phase(Phase::ONE)
    }

    fn check_dim(&self, other: &PauliOperator) -> Result<(), AlgebraError> {
        if self.n() != other.n() {
            return Err(AlgebraError::Dimension {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    /// The product `self · other` with exact phase.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator, AlgebraError> {
        self.check_dim(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &PauliOperator) -> PauliOperator {
        // Work in the X^x Z^z form where Y = i·XZ, then convert back.
        let y_self = self.x.and_count(&self.z) as i64;
        let y_other = other.x.and_count(&other.z) as i64;
        let swap = other.x.and_count(&self.z) as i64;
        let mut x = self.x.clone();
        x.xor_assign(&other.x);
        let mut z = self.z.clone();
        z.xor_assign(&other.z);
        let y_out = x.and_count(&z) as i64;
        let e = self.phase.exponent() as i64
            + other.phase.exponent() as i64
            + y_self
            + y_other
            + 2 * swap
            - y_out;
        PauliOperator {
            x,
            z,
            phase: Phase::from_exponent(e),
        }
    }

    /// In-place right multiplication, `self ← self · other`.
    pub(crate) fn mul_assign_unchecked(&mut self, other: &PauliOperator) {
        *self = self.mul_unchecked(other);
    }

    pub fn commutes(&self, other: &PauliOperator) -> Result<bool, AlgebraError> {
        self.check_dim(other)?;
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &PauliOperator) -> bool {
        !BitRow::cross_parity(&self.x, &other.z, &self.z, &other.x)
    }

    /// `U p U†` for a unitary gate `U`.
    pub fn conjugate(&self, gate: &Gate) -> Result<PauliOperator, AlgebraError> {
        let mut out = self.clone();
        out.conjugate_in_place(gate)?;
        Ok(out)
    }

    pub fn conjugate_in_place(&mut self, gate: &Gate) -> Result<(), AlgebraError> {
        let n = self.n();
        for q in gate.qubits() {
            if q >= n {
                return Err(AlgebraError::QubitOutOfRange { qubit: q, n });
            }
        }
        match *gate {
            Gate::Cx { control, target } => {
                self.apply_cx(control, target);
                Ok(())
            }
            Gate::SDag(q) => {
                self.apply_sdag(q);
                Ok(())
            }
            Gate::ResetZ(_) | Gate::ResetX(_) => Err(AlgebraError::NonUnitaryGate),
        }
    }

    #[inline]
    pub(crate) fn apply_cx(&mut self, c: usize, t: usize) {
        let xc = self.x.get(c);
        let zt = self.z.get(t);
        if xc && zt && (self.x.get(t) == self.z.get(c)) {
            self.phase = self.phase.negate();
        }
        if xc {
            self.x.flip(t);
        }
        if zt {
            self.z.flip(c);
        }
    }

    #[inline]
    pub(crate) fn apply_sdag(&mut self, q: usize) {
        // S† X S = −Y, S† Y S = X
        let xq = self.x.get(q);
        if xq {
            if !self.z.get(q) {
                self.phase = self.phase.negate();
            }
            self.z.flip(q);
        }
    }

    /// Rejects operators that cannot belong to a stabilizer group.
    pub fn require_real(&self) -> Result<(), AlgebraError> {
        if self.phase.is_real() {
            Ok(())
        } else {
            Err(AlgebraError::ImaginaryPhase(self.to_string()))
        }
    }
}

impl fmt::Display for PauliOperator {
    /// Sign, then one of `_XYZ` per qubit: `+XZ_Y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.phase)?;
        for q in 0..self.n() {
            write!(f, "{}", self.axis(q).letter())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = AlgebraError;

    /// Inverse of `Display`; the sign prefix is optional and `I` is accepted for identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (phase, body) = if let Some(rest) = s.strip_prefix("+i") {
            (Phase::I, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (Phase::MINUS_I, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (Phase::ONE, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (Phase::MINUS_ONE, rest)
        } else {
            (Phase::ONE, s)
        };
        let n = body.chars().count();
        let mut p = PauliOperator::identity(n);
        for (q, ch) in body.chars().enumerate() {
            let axis = match ch {
                '_' | 'I' => Axis::I,
                'X' => Axis::X,
                'Y' => Axis::Y,
                'Z' => Axis::Z,
                _ => return Err(AlgebraError::Syntax(s.to_string())),
            };
            p.set_axis(q, axis);
        }
        Ok(p.with_phase(phase))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn single_qubit_table() {
        let x = p("X");
        let z = p("Z");
        let y = p("Y");
        assert_eq!(x.multiply(&z).unwrap(), p("-iY"));
        assert_eq!(z.multiply(&x).unwrap(), p("+iY"));
        assert_eq!(x.multiply(&y).unwrap(), p("+iZ"));
        assert_eq!(y.multiply(&x).unwrap(), p("-iZ"));
        assert_eq!(y.multiply(&z).unwrap(), p("+iX"));
        assert_eq!(y.multiply(&y).unwrap(), p("+_"));
    }

    #[test]
    fn identity_and_involution() {
        let q = p("-XZ_Y");
        assert_eq!(q.multiply(&PauliOperator::identity(4)).unwrap(), q);
        let xx = p("XX");
        let sq = xx.multiply(&xx).unwrap();
        assert!(sq.is_identity());
        assert_eq!(sq.phase(), Phase::ONE);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(
            p("X").multiply(&p("XX")),
            Err(AlgebraError::Dimension { left: 1, right: 2 })
        ));
        assert!(p("X").commutes(&p("ZZ")).is_err());
    }

    #[test]
    fn commutation_examples() {
        assert!(!p("X_").commutes(&p("Z_")).unwrap());
        assert!(p("X_").commutes(&p("_Z")).unwrap());
        assert!(p("XX").commutes(&p("ZZ")).unwrap());
    }

    #[test]
    fn conjugation_examples() {
        let cx = Gate::Cx {
            control: 0,
            target: 1,
        };
        assert_eq!(p("X_").conjugate(&cx).unwrap(), p("XX"));
        assert_eq!(p("_Z").conjugate(&cx).unwrap(), p("ZZ"));
        assert_eq!(p("_X").conjugate(&cx).unwrap(), p("_X"));
        assert_eq!(p("Z_").conjugate(&cx).unwrap(), p("Z_"));
        assert_eq!(p("YY").conjugate(&cx).unwrap(), p("-XZ"));
        let s = Gate::SDag(0);
        assert_eq!(p("X").conjugate(&s).unwrap(), p("-Y"));
        assert_eq!(p("Y").conjugate(&s).unwrap(), p("X"));
        assert_eq!(p("Z").conjugate(&s).unwrap(), p("Z"));
    }

    #[test]
    fn reset_is_not_conjugable() {
        assert_eq!(
            p("X").conjugate(&Gate::ResetZ(0)),
            Err(AlgebraError::NonUnitaryGate)
        );
        assert!(p("X").conjugate(&Gate::SDag(3)).is_err());
    }

    #[test]
    fn render_roundtrip() {
        let q = p("-XZ_Y");
        assert_eq!(q.to_string(), "-XZ_Y");
        assert_eq!(q.weight(), 3);
        assert!(q.require_real().is_ok());
        assert!(p("+iX").require_real().is_err());
    }
}
