//! Decision procedures for Expansion, No-Reaction Similarity, Independent
//! Reaction, Single-Peaked Reaction and IIA, with replayable violation
//! witnesses. Also evaluates two-rationale shortlist choice (TSM).
//!
//! Every check scans its quantifiers in ascending option/menu index and
//! stops after `cap` violations, so verdicts are deterministic and bounded.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use crate::choice::{ChoiceFunction, GroundSet, Menu, TypePartition};
use crate::error::{Error, Result};
use crate::revealed::{BinaryRelation, RevealedReport};

pub const DEFAULT_VIOLATION_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    #[serde(rename = "Exp")]
    Expansion,
    #[serde(rename = "NRS")]
    NoReactionSimilarity,
    #[serde(rename = "IR")]
    IndependentReaction,
    #[serde(rename = "SPR")]
    SinglePeakedReaction,
    #[serde(rename = "IIA")]
    Iia,
    #[serde(rename = "R-Dominance")]
    RDominance,
    #[serde(rename = "R-Composition")]
    RComposition,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Expansion => "Exp",
            Axiom::NoReactionSimilarity => "NRS",
            Axiom::IndependentReaction => "IR",
            Axiom::SinglePeakedReaction => "SPR",
            Axiom::Iia => "IIA",
            Axiom::RDominance => "R-Dominance",
            Axiom::RComposition => "R-Composition",
        })
    }
}

/// Which part of R-Dominance a witness breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DominanceClause {
    /// `A` richer than `B` but `B ≻ A`.
    Richer,
    /// `A` strictly richer than `B` but not `A ≻ B`.
    StrictlyRicher,
    /// `{x} ≻ {y}` without `{x}` strictly richer than `{y}`.
    Singletons,
}

/// A tuple instantiating an axiom's quantifiers for which its conclusion
/// fails.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    /// `x = c(A) = c(B)` but `c(A ∪ B) ≠ x`.
    Expansion {
        first: Menu,
        second: Menu,
        chosen: usize,
        union_choice: usize,
    },
    /// `x ≈ y ≈ z`, `x = c{x,y}`, `y = c{y,z}`, `z = c{x,z}`.
    NoReactionSimilarity { x: usize, y: usize, z: usize },
    /// `t ≉ x ≈ y ≉ z`, `x = c{x,z}`, `z = c{y,z}`, `y = c{y,t}`, `t = c{x,t}`.
    IndependentReaction { x: usize, y: usize, z: usize, t: usize },
    /// `x R t`, `x ≈ y ≈ z`, `x = c{x,y}`, `y = c{y,z}`, `z R y`, and
    /// `u ∉ T` with `x = c{x,u}` but `u = c{y,u}`.
    SinglePeakedReaction {
        x: usize,
        y: usize,
        z: usize,
        t: usize,
        u: usize,
    },
    /// `B ⊆ A`, `c(A) ∈ B`, `c(B) ≠ c(A)`.
    Iia { menu: Menu, submenu: Menu },
    RDominance {
        clause: DominanceClause,
        a: Menu,
        b: Menu,
    },
    /// Preconditions hold, `A ≿ B`, `C ≿ D`, but `B ∪ D ≻ A ∪ C`.
    RComposition { a: Menu, b: Menu, c: Menu, d: Menu },
}

impl Violation {
    /// Re-checks a choice-function witness against `cf`, using the
    /// partition/report the original check ran with. Menu-preference
    /// witnesses are replayed in [`crate::normative`].
    pub fn replays(&self, cf: &ChoiceFunction, report: &RevealedReport) -> bool {
        let sim = &report.similarity;
        match *self {
            Violation::Expansion {
                first,
                second,
                chosen,
                union_choice,
            } => {
                cf.choice(first) == chosen
                    && cf.choice(second) == chosen
                    && cf.choice(first.union(second)) == union_choice
                    && union_choice != chosen
            }
            Violation::NoReactionSimilarity { x, y, z } => {
                sim.same_block(x, y)
                    && sim.same_block(y, z)
                    && cf.pair(x, y) == x
                    && cf.pair(y, z) == y
                    && cf.pair(x, z) == z
            }
            Violation::IndependentReaction { x, y, z, t } => {
                sim.same_block(x, y)
                    && !sim.same_block(x, z)
                    && !sim.same_block(x, t)
                    && cf.pair(x, z) == x
                    && cf.pair(y, z) == z
                    && cf.pair(y, t) == y
                    && cf.pair(x, t) == t
            }
            Violation::SinglePeakedReaction { x, y, z, t, u } => {
                let r = &report.reaction;
                r.contains(x, t)
                    && sim.same_block(x, y)
                    && sim.same_block(y, z)
                    && cf.pair(x, y) == x
                    && cf.pair(y, z) == y
                    && r.contains(z, y)
                    && !sim.same_block(x, u)
                    && cf.pair(x, u) == x
                    && cf.pair(y, u) == u
            }
            Violation::Iia { menu, submenu } => {
                let chosen = cf.choice(menu);
                submenu.is_subset_of(menu)
                    && submenu.contains(chosen)
                    && cf.choice(submenu) != chosen
            }
            Violation::RDominance { .. } | Violation::RComposition { .. } => false,
        }
    }

    pub fn to_json(&self, ground: &GroundSet) -> serde_json::Value {
        let n = |x: usize| ground.name(x).to_string();
        let m = |menu: Menu| ground.menu_key(menu);
        match *self {
            Violation::Expansion {
                first,
                second,
                chosen,
                union_choice,
            } => json!({
                "A": m(first), "B": m(second), "chosen": n(chosen), "union_choice": n(union_choice)
            }),
            Violation::NoReactionSimilarity { x, y, z } => json!({"x": n(x), "y": n(y), "z": n(z)}),
            Violation::IndependentReaction { x, y, z, t } => {
                json!({"x": n(x), "y": n(y), "z": n(z), "t": n(t)})
            }
            Violation::SinglePeakedReaction { x, y, z, t, u } => {
                json!({"x": n(x), "y": n(y), "z": n(z), "t": n(t), "u": n(u)})
            }
            Violation::Iia { menu, submenu } => json!({"A": m(menu), "B": m(submenu)}),
            Violation::RDominance { clause, a, b } => {
                json!({"clause": clause, "A": m(a), "B": m(b)})
            }
            Violation::RComposition { a, b, c, d } => {
                json!({"A": m(a), "B": m(b), "C": m(c), "D": m(d)})
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub holds: bool,
    pub violations: Vec<Violation>,
    /// The scan stopped at the cap; more violations may exist.
    pub truncated: bool,
}

impl AxiomVerdict {
    pub fn to_named(&self, ground: &GroundSet) -> NamedVerdict {
        NamedVerdict {
            axiom: self.axiom,
            holds: self.holds,
            truncated: self.truncated,
            violations: self.violations.iter().map(|v| v.to_json(ground)).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedVerdict {
    pub axiom: Axiom,
    pub holds: bool,
    pub truncated: bool,
    pub violations: Vec<serde_json::Value>,
}

/// Accumulates violations up to a cap.
pub(crate) struct Collector {
    axiom: Axiom,
    cap: usize,
    violations: Vec<Violation>,
    truncated: bool,
}

impl Collector {
    pub(crate) fn new(axiom: Axiom, cap: usize) -> Collector {
        Collector {
            axiom,
            cap: cap.max(1),
            violations: Vec::new(),
            truncated: false,
        }
    }

    /// Records a violation; returns `true` when the scan should stop.
    pub(crate) fn push(&mut self, v: Violation) -> bool {
        self.violations.push(v);
        if self.violations.len() >= self.cap {
            self.truncated = true;
        }
        self.truncated
    }

    pub(crate) fn is_full(&self) -> bool {
        self.truncated
    }

    pub(crate) fn finish(self) -> AxiomVerdict {
        AxiomVerdict {
            axiom: self.axiom,
            holds: self.violations.is_empty(),
            violations: self.violations,
            truncated: self.truncated,
        }
    }
}

/// Axiom checks with a configurable violation cap.
#[derive(Clone, Copy, Debug)]
pub struct AxiomChecker {
    pub cap: usize,
}

impl Default for AxiomChecker {
    fn default() -> Self {
        AxiomChecker {
            cap: DEFAULT_VIOLATION_CAP,
        }
    }
}

impl AxiomChecker {
    pub fn new(cap: usize) -> AxiomChecker {
        AxiomChecker { cap }
    }

    pub fn exp(&self, cf: &ChoiceFunction) -> AxiomVerdict {
        let mut out = Collector::new(Axiom::Expansion, self.cap);
        let n = cf.len();
        let mut by_choice: Vec<Vec<Menu>> = vec![Vec::new(); n];
        for (menu, x) in cf.iter().filter(|(m, _)| m.len() > 1) {
            by_choice[x].push(menu);
        }
        'scan: for (x, menus) in by_choice.iter().enumerate() {
            for (i, &a) in menus.iter().enumerate() {
                for &b in &menus[i + 1..] {
                    let union = a.union(b);
                    if union == a || union == b {
                        continue;
                    }
                    let cu = cf.choice(union);
                    if cu != x
                        && out.push(Violation::Expansion {
                            first: a,
                            second: b,
                            chosen: x,
                            union_choice: cu,
                        })
                    {
                        break 'scan;
                    }
                }
            }
        }
        out.finish()
    }

    pub fn nrs(&self, cf: &ChoiceFunction, classes: &TypePartition) -> AxiomVerdict {
        let mut out = Collector::new(Axiom::NoReactionSimilarity, self.cap);
        'scan: for &block in classes.blocks().iter().filter(|b| b.len() >= 3) {
            for x in block.iter() {
                for y in block.iter().filter(|&y| y != x && cf.pair(x, y) == x) {
                    for z in block.iter().filter(|&z| z != x && z != y) {
                        if cf.pair(y, z) == y
                            && cf.pair(x, z) != x
                            && out.push(Violation::NoReactionSimilarity { x, y, z })
                        {
                            break 'scan;
                        }
                    }
                }
            }
        }
        out.finish()
    }

    pub fn ir(&self, cf: &ChoiceFunction, classes: &TypePartition) -> AxiomVerdict {
        let mut out = Collector::new(Axiom::IndependentReaction, self.cap);
        let n = cf.len();
        'scan: for x in 0..n {
            let class = classes.block_of(x);
            let outside = Menu::full(n).difference(class);
            for y in class.iter().filter(|&y| y != x) {
                for z in outside.iter() {
                    if cf.pair(x, z) != x || cf.pair(y, z) != z {
                        continue;
                    }
                    for t in outside.iter().filter(|&t| t != z) {
                        if cf.pair(y, t) == y
                            && cf.pair(x, t) != x
                            && out.push(Violation::IndependentReaction { x, y, z, t })
                        {
                            break 'scan;
                        }
                    }
                }
            }
        }
        out.finish()
    }

    pub fn spr(&self, cf: &ChoiceFunction, report: &RevealedReport) -> AxiomVerdict {
        let mut out = Collector::new(Axiom::SinglePeakedReaction, self.cap);
        let n = cf.len();
        let reaction = &report.reaction;
        'scan: for x in 0..n {
            let Some(t) = reaction.successors(x).first() else {
                continue;
            };
            let class = report.similarity.block_of(x);
            let outside = Menu::full(n).difference(class);
            for y in class.iter().filter(|&y| y != x && cf.pair(x, y) == x) {
                for z in class.iter().filter(|&z| z != x && z != y) {
                    if cf.pair(y, z) != y || !reaction.contains(z, y) {
                        continue;
                    }
                    for u in outside.iter() {
                        if cf.pair(x, u) == x
                            && cf.pair(y, u) != y
                            && out.push(Violation::SinglePeakedReaction { x, y, z, t, u })
                        {
                            break 'scan;
                        }
                    }
                }
            }
        }
        out.finish()
    }

    pub fn iia(&self, cf: &ChoiceFunction) -> AxiomVerdict {
        let mut out = Collector::new(Axiom::Iia, self.cap);
        'scan: for (menu, chosen) in cf.iter().filter(|(m, _)| m.len() > 1) {
            for sub in menu.submenus() {
                if sub != menu
                    && sub.contains(chosen)
                    && cf.choice(sub) != chosen
                    && out.push(Violation::Iia { menu, submenu: sub })
                {
                    break 'scan;
                }
            }
        }
        out.finish()
    }

    /// Exp, NRS and IR, in that order.
    pub fn rsc(&self, cf: &ChoiceFunction, report: &RevealedReport) -> [AxiomVerdict; 3] {
        [
            self.exp(cf),
            self.nrs(cf, &report.similarity),
            self.ir(cf, &report.similarity),
        ]
    }

    /// Exp, NRS, IR, SPR and IIA.
    pub fn all(&self, cf: &ChoiceFunction, report: &RevealedReport) -> Vec<AxiomVerdict> {
        let [exp, nrs, ir] = self.rsc(cf, report);
        vec![exp, nrs, ir, self.spr(cf, report), self.iia(cf)]
    }
}

pub fn check_exp(cf: &ChoiceFunction) -> AxiomVerdict {
    AxiomChecker::default().exp(cf)
}

pub fn check_nrs(cf: &ChoiceFunction, classes: &TypePartition) -> AxiomVerdict {
    AxiomChecker::default().nrs(cf, classes)
}

pub fn check_ir(cf: &ChoiceFunction, classes: &TypePartition) -> AxiomVerdict {
    AxiomChecker::default().ir(cf, classes)
}

pub fn check_spr(cf: &ChoiceFunction, report: &RevealedReport) -> AxiomVerdict {
    AxiomChecker::default().spr(cf, report)
}

pub fn check_iia(cf: &ChoiceFunction) -> AxiomVerdict {
    AxiomChecker::default().iia(cf)
}

/// A transitive shortlist method: two strict partial orders applied in
/// sequence, `c(A) = max(max(A; P1); P2)`.
#[derive(Clone, Debug)]
pub struct TsmSpec {
    pub ground: Arc<GroundSet>,
    pub first: BinaryRelation,
    pub second: BinaryRelation,
}

impl TsmSpec {
    pub fn new(ground: Arc<GroundSet>, first: BinaryRelation, second: BinaryRelation) -> Result<TsmSpec> {
        for (name, r) in [("P1", &first), ("P2", &second)] {
            if r.len() != ground.len() || !r.is_asymmetric() || !r.is_transitive() {
                return Err(Error::InvalidRationale(name.to_string()));
            }
        }
        Ok(TsmSpec { ground, first, second })
    }

    /// Builds a spec from named pairs `(better, worse)`.
    pub fn from_names(options: &[&str], first: &[(&str, &str)], second: &[(&str, &str)]) -> Result<TsmSpec> {
        let ground = Arc::new(GroundSet::new(options.iter().copied())?);
        let rel = |pairs: &[(&str, &str)]| -> Result<BinaryRelation> {
            let mut r = BinaryRelation::empty(ground.len());
            for (a, b) in pairs {
                r.insert(ground.lookup(a)?, ground.lookup(b)?);
            }
            Ok(r)
        };
        let (p1, p2) = (rel(first)?, rel(second)?);
        TsmSpec::new(ground.clone(), p1, p2)
    }
}

/// Undominated members of `menu` under `rel`.
fn undominated(rel: &BinaryRelation, menu: Menu) -> Menu {
    menu.iter()
        .filter(|&x| menu.iter().all(|y| !rel.contains(y, x)))
        .collect()
}

pub fn tsm_choice(spec: &TsmSpec) -> Result<ChoiceFunction> {
    let g = spec.ground.clone();
    for menu in g.menus() {
        let best = undominated(&spec.second, undominated(&spec.first, menu));
        if best.len() != 1 {
            return Err(Error::NotSingleValued(g.menu_key(menu)));
        }
    }
    ChoiceFunction::from_fn(g, |menu| {
        undominated(&spec.second, undominated(&spec.first, menu))
            .first()
            .expect("checked single-valued")
    })
}
