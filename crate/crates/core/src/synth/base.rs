//! The four hand-built circuits everything else is derived from, stored as the
//! original Crumble links.

use crate::circuit::{Circuit, Layer};
use crate::code::Coord;
use crate::crumble::parse_text;
use crate::error::SynthError;
use crate::synth::pattern::Parity;

/// Distance-2 encoder, 4 qubits, input at (0,0).
pub const BASE_D2: &str = include_str!("../../golden/source/base_d2.url");
/// Distance-3 encoder, 9 qubits, input at (1,1).
pub const BASE_D3: &str = include_str!("../../golden/source/base_d3.url");
/// Growth 3→5 followed by 5→7 on a 7×7 grid.
pub const GROWTH_ODD: &str = include_str!("../../golden/source/growth_odd_7x7.url");
/// Growth 2→4 followed by 4→6 on a 6×6 grid.
pub const GROWTH_EVEN: &str = include_str!("../../golden/source/growth_even_6x6.url");

pub fn base_encoder(d: usize) -> Result<Circuit, SynthError> {
    let text = match d {
        2 => BASE_D2,
        3 => BASE_D3,
        _ => return Err(SynthError::NoBase(d)),
    };
    Ok(parse_text(text)?)
}

/// Splits a multi-stage growth circuit into one circuit per stage, each re-indexed onto
/// the bounding square of the qubits it touches. A stage begins at every layer holding
/// a reset; empty layers and markers are dropped.
pub fn split_stages(circuit: &Circuit) -> Result<Vec<Circuit>, SynthError> {
    let mut groups: Vec<Vec<&Layer>> = Vec::new();
    for layer in circuit.layers() {
        if layer.has_reset() {
            groups.push(Vec::new());
        }
        if let Some(g) = groups.last_mut() {
            if !layer.is_empty() {
                g.push(layer);
            }
        }
    }
    groups
        .into_iter()
        .map(|layers| {
            let coords: Vec<Coord> = layers
                .iter()
                .flat_map(|l| l.gates().iter().flat_map(|g| g.qubits()))
                .map(|q| circuit.coord(q))
                .collect();
            let r0 = coords.iter().map(|c| c.row).min().unwrap_or(0);
            let c0 = coords.iter().map(|c| c.col).min().unwrap_or(0);
            let r1 = coords.iter().map(|c| c.row).max().unwrap_or(0);
            let c1 = coords.iter().map(|c| c.col).max().unwrap_or(0);
            let size = (r1 - r0).max(c1 - c0) + 1;
            if r1 - r0 != c1 - c0 {
                return Err(SynthError::Inconsistent(format!(
                    "stage footprint {}x{} is not square",
                    r1 - r0 + 1,
                    c1 - c0 + 1
                )));
            }
            let local = |q: usize| {
                let c = circuit.coord(q);
                (c.row - r0) * size + (c.col - c0)
            };
            let layers = layers
                .iter()
                .map(|l| Layer::new(l.gates().iter().map(|g| g.remap(local)).collect()))
                .collect();
            Ok(Circuit::new(
                Circuit::grid_coords(size, size),
                layers,
                None,
            )?)
        })
        .collect()
}

/// The two decoded stages of one parity, smaller first.
pub fn canonical_stages(parity: Parity) -> Result<Vec<Circuit>, SynthError> {
    let text = match parity {
        Parity::Odd => GROWTH_ODD,
        Parity::Even => GROWTH_EVEN,
    };
    split_stages(&parse_text(text)?)
}

/// The decoded stage growing distance `d` to `d+2`, for `d ∈ {2, 3, 4, 5}`.
pub fn canonical_stage(d: usize) -> Result<Circuit, SynthError> {
    let (parity, index) = match d {
        2 => (Parity::Even, 0),
        4 => (Parity::Even, 1),
        3 => (Parity::Odd, 0),
        5 => (Parity::Odd, 1),
        _ => return Err(SynthError::Distance(d)),
    };
    Ok(canonical_stages(parity)?.swap_remove(index))
}
