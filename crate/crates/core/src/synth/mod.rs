//! Encoder synthesis: base encoders, growth stages and their composition.

mod base;
mod encoder;
mod pattern;

pub use base::{
    base_encoder, canonical_stage, canonical_stages, split_stages, BASE_D2, BASE_D3, GROWTH_EVEN,
    GROWTH_ODD,
};
pub use encoder::{base_distance, full_encoder, growth_stage, stage_pattern};
pub use pattern::{
    pattern_from_instances, GrowthPattern, Parity, Role, Side, SideCuts, Tile, TileOp,
};
