//! Stabilizer groups over GF(2) with exact sign bookkeeping.

use crate::bits::BitRow;
use crate::error::AlgebraError;
use crate::pauli::{PauliOperator, Phase};

/// Incremental row-echelon basis over symplectic vectors, recording for every
/// basis row which input rows were combined to produce it.
#[derive(Debug, Clone)]
struct Echelon {
    width: usize,
    inputs: usize,
    // (pivot, reduced row, combination over inputs)
    rows: Vec<(usize, BitRow, BitRow)>,
}

impl Echelon {
    fn new(width: usize, inputs: usize) -> Self {
        Self {
            width,
            inputs,
            rows: Vec::new(),
        }
    }

    /// Reduces `v` against the basis, returning the residue and the combination used.
    fn reduce(&self, mut v: BitRow) -> (BitRow, BitRow) {
        let mut combo = BitRow::zeros(self.inputs);
        for (pivot, row, c) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign(row);
                combo.xor_assign(c);
            }
        }
        (v, combo)
    }

    /// Inserts input row `index`; returns false if it was dependent.
    fn insert(&mut self, index: usize, v: BitRow) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let (residue, mut combo) = self.reduce(v);
        match residue.first_one() {
            None => false,
            Some(pivot) => {
                combo.flip(index);
                self.rows.push((pivot, residue, combo));
                true
            }
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// GF(2) rank of the stacked symplectic vectors; phases are ignored.
pub fn rank(ops: &[PauliOperator]) -> Result<usize, AlgebraError> {
    let Some(first) = ops.first() else {
        return Ok(0);
    };
    let n = first.n();
    let mut ech = Echelon::new(2 * n, ops.len());
    for (i, p) in ops.iter().enumerate() {
        if p.n() != n {
            return Err(AlgebraError::Dimension {
                left: n,
                right: p.n(),
            });
        }
        ech.insert(i, p.symplectic());
    }
    Ok(ech.rank())
}

/// Outcome of a group membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    NotMember,
    /// The group contains `sign · masks(p)`; `combination` lists the generators whose
    /// product gives it.
    Member {
        sign: Phase,
        combination: Vec<usize>,
    },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }

    pub fn sign(&self) -> Option<Phase> {
        match self {
            Membership::Member { sign, .. } => Some(*sign),
            Membership::NotMember => None,
        }
    }
}

/// Independent, mutually commuting generators with real phases.
///
/// The echelon form is built eagerly at construction, so the value is immutable and
/// `Sync` afterwards.
#[derive(Debug, Clone)]
pub struct StabilizerSet {
    n: usize,
    generators: Vec<PauliOperator>,
    echelon: Echelon,
}

impl StabilizerSet {
    pub fn new(n: usize, generators: Vec<PauliOperator>) -> Result<Self, AlgebraError> {
        for g in &generators {
            if g.n() != n {
                return Err(AlgebraError::Dimension {
                    left: n,
                    right: g.n(),
                });
            }
            g.require_real()?;
        }
        for i in 0..generators.len() {
            for j in (i + 1)..generators.len() {
                if !generators[i].commutes_unchecked(&generators[j]) {
                    return Err(AlgebraError::Anticommuting(i, j));
                }
            }
        }
        let mut echelon = Echelon::new(2 * n, generators.len());
        for (i, g) in generators.iter().enumerate() {
            if !echelon.insert(i, g.symplectic()) {
                return Err(AlgebraError::Dependent(i));
            }
        }
        Ok(Self {
            n,
            generators,
            echelon,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            generators: Vec::new(),
            echelon: Echelon::new(2 * n, 0),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Product of the listed generators, in index order.
    pub fn product(&self, combination: &[usize]) -> PauliOperator {
        let mut acc = PauliOperator::identity(self.n);
        for &i in combination {
            acc.mul_assign_unchecked(&self.generators[i]);
        }
        acc
    }

    pub fn member_with_sign(&self, p: &PauliOperator) -> Result<Membership, AlgebraError> {
        if p.n() != self.n {
            return Err(AlgebraError::Dimension {
                left: self.n,
                right: p.n(),
            });
        }
        let (residue, combo) = self.echelon.reduce(p.symplectic());
        if !residue.is_zero() {
            return Ok(Membership::NotMember);
        }
        let combination: Vec<usize> = combo.ones().collect();
        let sign = self.product(&combination).phase();
        Ok(Membership::Member { sign, combination })
    }

    /// True iff `p`, including its sign, is an element of the group.
    pub fn contains(&self, p: &PauliOperator) -> Result<bool, AlgebraError> {
        Ok(self.member_with_sign(p)?.sign() == Some(p.phase()))
    }

    /// True iff `p`'s masks lie in the row space, ignoring sign.
    pub fn spans(&self, p: &PauliOperator) -> Result<bool, AlgebraError> {
        if p.n() != self.n {
            return Err(AlgebraError::Dimension {
                left: self.n,
                right: p.n(),
            });
        }
        Ok(self.echelon.reduce(p.symplectic()).0.is_zero())
    }

    pub fn commutes_with_all(&self, p: &PauliOperator) -> bool {
        self.generators.iter().all(|g| g.commutes_unchecked(p))
    }

    /// Row-space equality and sign agreement, checked in both directions.
    pub fn compare(&self, other: &StabilizerSet) -> Result<GroupComparison, AlgebraError> {
        if self.n != other.n {
            return Err(AlgebraError::Dimension {
                left: self.n,
                right: other.n,
            });
        }
        let mut row_space = self.rank() == other.rank();
        let mut signs = true;
        for (a, b) in [(self, other), (other, self)] {
            for g in &a.generators {
                match b.member_with_sign(g)? {
                    Membership::NotMember => row_space = false,
                    Membership::Member { sign, .. } => {
                        if sign != g.phase() {
                            signs = false;
                        }
                    }
                }
            }
        }
        Ok(GroupComparison {
            row_space,
            signs: row_space && signs,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupComparison {
    pub row_space: bool,
    pub signs: bool,
}

impl GroupComparison {
    pub fn equal(&self) -> bool {
        self.row_space && self.signs
    }
}
