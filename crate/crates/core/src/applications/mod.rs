//! Applied models: news-source choice and cultural transmission.

pub mod consistency;
pub mod culture;
pub mod media;

pub use consistency::{culture_rsc_consistency, ConsistencyReport, ConsistencyRow, CONSISTENCY_G_COUNT};
pub use culture::{
    culture_dynamics, culture_effort, culture_gbar, culture_gbar_with, culture_reactance_comparative, CultureOutcome,
    CultureParams, Side,
};
pub use media::{
    media_menu_choice, media_menu_choice_with, media_pstar, welfare_value, Action, MediaConfig, MediaMenu,
    MediaOutcome, MediaParams, Signal, Source, SourceValue,
};
