//! Hammock stages `L_n(X,Y)`: zig-zags, ladders, the maps between stages and
//! their connected components.

pub mod maps;
pub mod pi0;
pub mod stage;
pub mod zigzag;

pub use maps::{
    apply_functor, arrow_zigzag, induced_postcompose, induced_precompose, stage_inclusion,
    weq_reverse, MapError, Position, RelFunctor, Slot, StageFunctor, StageStep,
};
pub use pi0::{pi0_stage, pi0_tower, TowerReport, TowerStage, TowerVerdict};
pub use stage::HammockStage;
pub use zigzag::{
    enumerate_zigzags, enumerate_zigzags_with, for_each_ladder_from, for_each_ladder_indexed,
    ladders_from, Ladder,
    LadderError, ZigZag, ZigZagError,
};
