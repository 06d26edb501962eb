//! Small hand-built choice functions and structures with known properties.
//! Used by tests, the CLI `enumerate` command and the checked-in fixture
//! files.

use std::sync::Arc;

use crate::axioms::TsmSpec;
use crate::choice::{from_entries, ChoiceFunction, GroundSet, LinearOrder, TypePartition};
use crate::structure::RSStructure;

fn ground(names: &[&str]) -> Arc<GroundSet> {
    Arc::new(GroundSet::new(names.iter().copied()).expect("fixture ground set"))
}

/// All ordered pairs of a best-first chain.
fn chain<'a>(names: &[&'a str]) -> Vec<(&'a str, &'a str)> {
    let mut out = Vec::new();
    for (i, a) in names.iter().enumerate() {
        for b in &names[i + 1..] {
            out.push((*a, *b));
        }
    }
    out
}

/// The detergent pattern on `{x, y, z}`: `z` is chosen from the full menu,
/// `x` once `y` is removed.
pub fn detergent() -> ChoiceFunction {
    from_entries(
        ground(&["x", "y", "z"]),
        &[
            ("x", "x"),
            ("y", "y"),
            ("z", "z"),
            ("x,y", "y"),
            ("x,z", "x"),
            ("y,z", "z"),
            ("x,y,z", "z"),
        ],
    )
    .expect("detergent fixture")
}

/// Shortlist method on `{x,y,z,t,u}` whose pairwise choices cycle on
/// `{x,y,z}` inside one similarity class.
pub fn tsm_nrs_counterexample() -> TsmSpec {
    let mut first = chain(&["z", "x", "t"]);
    first.push(("y", "t"));
    TsmSpec::from_names(&["x", "y", "z", "t", "u"], &first, &chain(&["t", "u", "x", "y", "z"]))
        .expect("tsm fixture 1")
}

/// Shortlist method on `{x,y,z,a,t}` breaking single-peaked reaction.
pub fn tsm_spr_counterexample() -> TsmSpec {
    TsmSpec::from_names(
        &["x", "y", "z", "a", "t"],
        &chain(&["t", "z", "y", "x"]),
        &chain(&["z", "x", "a", "t", "y"]),
    )
    .expect("tsm fixture 2")
}

fn structure(options: &[&str], types: &[Vec<&str>], welfare: &[&str], reaction: &[&str]) -> RSStructure {
    let g = ground(options);
    let types = TypePartition::from_names(&g, types).expect("fixture types");
    let welfare = LinearOrder::from_names(&g, welfare).expect("fixture welfare");
    let reaction = LinearOrder::from_names(&g, reaction).expect("fixture reaction");
    RSStructure::new(g, types, welfare, reaction).expect("fixture structure")
}

/// Two types `{a1, a2}` and `{b1}`; `a2` reacts to the absence of `a1`.
pub fn worked_example() -> RSStructure {
    structure(
        &["a1", "a2", "b1"],
        &[vec!["a1", "a2"], vec!["b1"]],
        &["a1", "a2", "b1"],
        &["a2", "b1", "a1"],
    )
}

/// `z` is welfare improving on `x` although `x = c{x,z}`.
pub fn welfare_example_1() -> RSStructure {
    structure(
        &["x", "y", "z", "w", "v", "u"],
        &[vec!["x", "y", "w"], vec!["z", "v", "u"]],
        &["y", "w", "x", "z", "v", "u"],
        &["u", "x", "z", "y", "w", "v"],
    )
}

/// `x` is never rejected in favour of `z` yet `x` sits below its threshold.
pub fn welfare_example_2() -> RSStructure {
    structure(
        &["x", "y", "z", "t"],
        &[vec!["x", "y"], vec!["z"], vec!["t"]],
        &["y", "x", "z", "t"],
        &["x", "t", "y", "z"],
    )
}

/// Two types `{x, y}` and `{t, z}` with `y`, `z` above their thresholds,
/// `x`, `t` below, `t ≻₂ x` and `z ≻₁ y`.
pub fn welfare_example_3() -> RSStructure {
    structure(
        &["x", "y", "z", "t"],
        &[vec!["x", "y"], vec!["z", "t"]],
        &["z", "y", "x", "t"],
        &["t", "x", "z", "y"],
    )
}

/// Named choice-function fixtures, as written to the `fixtures/` directory.
pub fn named_choice_functions() -> Vec<(&'static str, ChoiceFunction)> {
    use crate::axioms::tsm_choice;
    vec![
        ("detergent", detergent()),
        ("tsm1", tsm_choice(&tsm_nrs_counterexample()).expect("tsm1")),
        ("tsm2", tsm_choice(&tsm_spr_counterexample()).expect("tsm2")),
        ("worked", worked_example().evaluate()),
        ("welfare1", welfare_example_1().evaluate()),
        ("welfare2", welfare_example_2().evaluate()),
        ("welfare3", welfare_example_3().evaluate()),
    ]
}

/// Named structure fixtures.
pub fn named_structures() -> Vec<(&'static str, RSStructure)> {
    vec![
        ("worked", worked_example()),
        ("welfare1", welfare_example_1()),
        ("welfare2", welfare_example_2()),
        ("welfare3", welfare_example_3()),
    ]
}
