use std::sync::OnceLock;

use crate::circuit::Circuit;
use crate::error::SynthError;
use crate::synth::base::{base_encoder, canonical_stages};
use crate::synth::pattern::{pattern_from_instances, GrowthPattern, Parity};

/// The growth pattern for one parity, extracted once from the canonical stages.
pub fn stage_pattern(parity: Parity) -> Result<&'static GrowthPattern, SynthError> {
    static ODD: OnceLock<Result<GrowthPattern, SynthError>> = OnceLock::new();
    static EVEN: OnceLock<Result<GrowthPattern, SynthError>> = OnceLock::new();
    let cell = match parity {
        Parity::Odd => &ODD,
        Parity::Even => &EVEN,
    };
    cell.get_or_init(|| pattern_from_instances(&canonical_stages(parity)?))
        .as_ref()
        .map_err(Clone::clone)
}

/// The depth-2 stage from distance `d` to `d+2` on a `(d+2) × (d+2)` grid. The
/// distance-`d` patch it expects sits at offset (1,1).
pub fn growth_stage(d: usize) -> Result<Circuit, SynthError> {
    if d < 2 {
        return Err(SynthError::Distance(d));
    }
    stage_pattern(Parity::of(d))?.instantiate(d + 2)
}

/// Places a circuit defined on a `size × size` grid into a `host × host` grid with its
/// origin at `(offset, offset)`.
fn place(c: &Circuit, size: usize, host: usize, offset: usize) -> Result<Circuit, SynthError> {
    let map = |q: usize| (q / size + offset) * host + q % size + offset;
    Ok(c.remap(Circuit::grid_coords(host, host), map)?)
}

/// Distance of the base encoder used for `d`: 2 for even, 3 for odd.
pub fn base_distance(d: usize) -> usize {
    if d.is_multiple_of(2) {
        2
    } else {
        3
    }
}

/// Base encoder of matching parity, centred in the `d × d` grid, followed by every
/// growth stage up to distance `d`.
pub fn full_encoder(d: usize) -> Result<Circuit, SynthError> {
    if d < 2 {
        return Err(SynthError::Distance(d));
    }
    let b = base_distance(d);
    let base = base_encoder(b)?;
    if d == b {
        return Ok(base);
    }
    let mut out = place(&base.without_markers(), b, d, (d - b) / 2)?;
    for s in (b..d).step_by(2) {
        let stage = growth_stage(s)?;
        out = out.concat(&place(&stage, s + 2, d, (d - s - 2) / 2)?)?;
    }
    Ok(out)
}
