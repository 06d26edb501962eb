//! Welfare comparisons identified from choices and the freedom-of-choice
//! ranking of menus.

mod freedom;
mod welfare;

pub use freedom::{
    check_menu_axioms, check_r_composition, check_r_dominance, freedom_count, freedom_ranking, freedom_table,
    is_richer, replay_menu_violation, FreedomModel, MenuPreference, Richness, COMPOSITION_EXHAUSTIVE_MAX,
    COMPOSITION_SAMPLE,
};
pub use welfare::{
    bernheim_rangel_pstar, improving_from_structure, masatlioglu_p, masatlioglu_pr, welfare_improving,
    welfare_improving_with, Containment, NamedWelfareReport, WelfareReport,
};
