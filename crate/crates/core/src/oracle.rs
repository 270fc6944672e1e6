//! Exhaustive census of low-weight stabilizer-group elements and the depth-1
//! impossibility argument built on it.
//!
//! A depth-1 circuit maps each fresh single-qubit stabilizer to an operator of weight
//! at most 2, and those images stay independent. A `d → d+2` stage injects `4(d+1)`
//! fresh stabilizers, so it needs that many independent elements of weight ≤ 2 in the
//! distance-`(d+2)` code. The census counts what is actually available.

use std::fmt;

use rayon::prelude::*;

use crate::code::{build_code, RotatedSurfaceCode};
use crate::error::{AlgebraError, VerifyError};
use crate::pauli::{Axis, PauliOperator};
use crate::stabilizer::{rank, Membership, StabilizerSet};

/// Largest code distance the CLI enumerates by default.
pub const DEFAULT_CENSUS_CAP: usize = 12;

const AXES: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowWeightCensus {
    pub distance: usize,
    pub n: usize,
    pub max_weight: usize,
    pub weight1_count: usize,
    /// Signed group elements of weight exactly 2, in lexicographic qubit/axis order.
    pub weight2_elements: Vec<PauliOperator>,
    pub independent_weight2_rank: usize,
}

impl LowWeightCensus {
    /// The rank observed for every tested distance, `2(D-1)`.
    pub fn expected_rank(&self) -> usize {
        2 * (self.distance - 1)
    }
}

fn signed_member(
    group: &StabilizerSet,
    p: PauliOperator,
) -> Result<Option<PauliOperator>, AlgebraError> {
    Ok(match group.member_with_sign(&p)? {
        Membership::Member { sign, .. } => Some(p.with_phase(sign)),
        Membership::NotMember => None,
    })
}

/// Enumerates every Pauli of weight 1 (and weight 2 if `max_weight ≥ 2`) and keeps the
/// group members. Output order does not depend on the parallel split.
pub fn census_up_to(
    code: &RotatedSurfaceCode,
    max_weight: usize,
) -> Result<LowWeightCensus, AlgebraError> {
    let n = code.n();
    let group = code.stabilizer_group()?;
    let mut weight1_count = 0;
    if max_weight >= 1 {
        for q in 0..n {
            for a in AXES {
                if signed_member(&group, PauliOperator::single(n, q, a))?.is_some() {
                    weight1_count += 1;
                }
            }
        }
    }
    let weight2_elements: Vec<PauliOperator> = if max_weight >= 2 {
        let per_first: Vec<Vec<PauliOperator>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut found = Vec::new();
                for j in (i + 1)..n {
                    for a in AXES {
                        for b in AXES {
                            let mut p = PauliOperator::single(n, i, a);
                            p.set_axis(j, b);
                            if let Some(m) = signed_member(&group, p)? {
                                found.push(m);
                            }
                        }
                    }
                }
                Ok(found)
            })
            .collect::<Result<_, AlgebraError>>()?;
        per_first.into_iter().flatten().collect()
    } else {
        Vec::new()
    };
    let independent_weight2_rank = rank(&weight2_elements)?;
    Ok(LowWeightCensus {
        distance: code.distance(),
        n,
        max_weight,
        weight1_count,
        weight2_elements,
        independent_weight2_rank,
    })
}

pub fn low_weight_census(code: &RotatedSurfaceCode) -> Result<LowWeightCensus, AlgebraError> {
    census_up_to(code, 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// `available` comes from an exhaustive census.
    Census,
    /// The census was skipped; `available` is the bound `2(D-1)`.
    Arithmetic,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Census => "census",
            Basis::Arithmetic => "arithmetic",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImpossibilityRecord {
    /// Source distance of the stage.
    pub d: usize,
    /// Code distance after the stage, `d + 2`.
    pub code_distance: usize,
    pub required: usize,
    pub weight1_count: usize,
    pub weight2_rank: usize,
    pub available: usize,
    pub basis: Basis,
    pub impossible: bool,
}

/// Depth-1 verdict for `d → d+2`, using a census when `d+2 ≤ cap`.
pub fn depth1_growth_impossible_capped(
    d: usize,
    cap: usize,
) -> Result<ImpossibilityRecord, VerifyError> {
    let big = d + 2;
    let code = build_code(big)?;
    let required = 4 * (d + 1);
    let (w1, w2, basis) = if big <= cap {
        let c = low_weight_census(&code)?;
        (c.weight1_count, c.independent_weight2_rank, Basis::Census)
    } else {
        (0, 2 * (d + 1), Basis::Arithmetic)
    };
    let available = w1 + w2;
    Ok(ImpossibilityRecord {
        d,
        code_distance: big,
        required,
        weight1_count: w1,
        weight2_rank: w2,
        available,
        basis,
        impossible: available < required,
    })
}

pub fn depth1_growth_impossible(d: usize) -> Result<ImpossibilityRecord, VerifyError> {
    depth1_growth_impossible_capped(d, DEFAULT_CENSUS_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_census_values() {
        for (d, r) in [(2, 2), (3, 4), (5, 8)] {
            let c = low_weight_census(&build_code(d).unwrap()).unwrap();
            assert_eq!(c.weight1_count, 0);
            assert_eq!(c.independent_weight2_rank, r, "D={d}");
        }
    }

    #[test]
    fn rank_equals_two_d_minus_two() {
        for big in 2..=7 {
            let c = low_weight_census(&build_code(big).unwrap()).unwrap();
            assert_eq!(c.independent_weight2_rank, c.expected_rank(), "D={big}");
        }
    }

    #[test]
    fn elements_are_signed_members_of_weight_two() {
        let code = build_code(4).unwrap();
        let group = code.stabilizer_group().unwrap();
        let c = low_weight_census(&code).unwrap();
        assert!(!c.weight2_elements.is_empty());
        for p in &c.weight2_elements {
            assert_eq!(p.weight(), 2);
            assert!(group.contains(p).unwrap());
            assert!(p.commutes(&code.logical_x()).unwrap());
            assert!(p.commutes(&code.logical_z()).unwrap());
        }
    }

    #[test]
    fn weight_one_run_is_a_subset() {
        let code = build_code(4).unwrap();
        let one = census_up_to(&code, 1).unwrap();
        let two = census_up_to(&code, 2).unwrap();
        assert_eq!(one.weight1_count, two.weight1_count);
        assert!(one.weight2_elements.is_empty());
    }

    #[test]
    fn impossibility_records() {
        let r = depth1_growth_impossible(3).unwrap();
        assert_eq!((r.required, r.available, r.basis), (16, 8, Basis::Census));
        assert!(r.impossible);
        let r = depth1_growth_impossible(2).unwrap();
        assert_eq!((r.required, r.available), (12, 6));
        let r = depth1_growth_impossible_capped(18, 12).unwrap();
        assert_eq!(
            (r.basis, r.required, r.available),
            (Basis::Arithmetic, 76, 38)
        );
        assert!(r.impossible);
    }
}
