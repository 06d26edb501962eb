use rand::Rng;
use serde::Serialize;

use crate::axioms::{Axiom, AxiomVerdict, Collector, DominanceClause, Violation, DEFAULT_VIOLATION_CAP};
use crate::choice::{all_menus, ChoiceFunction, GroundSet, Menu};
use crate::error::{Error, Result};
use crate::random::seeded;
use crate::structure::{certify_single_peaked, minimal_structure, RSStructure, SinglePeakedCertificate};

/// Above this many options R-Composition is checked on a seeded sample of
/// qualifying tuples instead of all of them.
pub const COMPOSITION_EXHAUSTIVE_MAX: usize = 5;
pub const COMPOSITION_SAMPLE: usize = 200_000;

/// A certified structure together with each type's satisfied freedoms
/// `F^T`: the options strictly above the type's threshold.
#[derive(Clone, Debug)]
pub struct FreedomModel {
    pub structure: RSStructure,
    pub certificate: SinglePeakedCertificate,
    /// `F^T` per type, indexed like `structure.types().blocks()`.
    pub satisfied: Vec<Menu>,
}

impl FreedomModel {
    pub fn new(structure: RSStructure) -> Result<FreedomModel> {
        let certificate = certify_single_peaked(&structure);
        FreedomModel::with_certificate(structure, certificate)
    }

    /// Model of the minimal structure of a single-peaked choice function.
    pub fn from_choice(cf: &ChoiceFunction) -> Result<FreedomModel> {
        let (s, cert) = minimal_structure(cf).map_err(|e| match e {
            Error::AxiomViolation(_) => Error::NotSinglePeakedRsc,
            other => other,
        })?;
        FreedomModel::with_certificate(s, cert)
    }

    pub fn with_certificate(structure: RSStructure, certificate: SinglePeakedCertificate) -> Result<FreedomModel> {
        if !certificate.verified {
            return Err(Error::NotSinglePeakedRsc);
        }
        let w = structure.welfare();
        let satisfied = structure
            .types()
            .blocks()
            .iter()
            .enumerate()
            .map(|(b, &block)| {
                let star = certificate.threshold(b);
                block.iter().filter(|&x| w.prefers(x, star)).collect()
            })
            .collect();
        Ok(FreedomModel {
            structure,
            certificate,
            satisfied,
        })
    }

    pub fn ground_len(&self) -> usize {
        self.structure.ground().len()
    }

    /// Bit `T` set when `F^T` meets `menu`.
    pub fn satisfied_types(&self, menu: Menu) -> u32 {
        self.satisfied
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_disjoint(menu))
            .fold(0, |acc, (t, _)| acc | 1 << t)
    }
}

/// `n(A)`: the number of types whose satisfied freedoms meet `A`.
pub fn freedom_count(model: &FreedomModel, menu: Menu) -> usize {
    model.satisfied_types(menu).count_ones() as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Richness {
    StrictlyRicher,
    Richer,
    NotRicher,
}

fn mask_richness(a: u32, b: u32) -> Richness {
    if b & !a != 0 {
        Richness::NotRicher
    } else if a & !b != 0 {
        Richness::StrictlyRicher
    } else {
        Richness::Richer
    }
}

/// Whether `a` is (strictly) richer than `b`: every type whose freedoms
/// `a` misses is missed by `b` too.
pub fn is_richer(model: &FreedomModel, a: Menu, b: Menu) -> Richness {
    mask_richness(model.satisfied_types(a), model.satisfied_types(b))
}

/// A complete preorder over menus, encoded as an integer rank per menu
/// (higher is better).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MenuPreference {
    n: usize,
    ranks: Vec<i64>,
}

impl MenuPreference {
    pub fn from_fn<F: FnMut(Menu) -> i64>(n: usize, mut rank: F) -> MenuPreference {
        let mut ranks = vec![0; 1 << n];
        for m in all_menus(n) {
            ranks[m.bits() as usize] = rank(m);
        }
        MenuPreference { n, ranks }
    }

    pub fn ground_len(&self) -> usize {
        self.n
    }

    pub fn rank(&self, menu: Menu) -> i64 {
        self.ranks[menu.bits() as usize]
    }

    pub fn set_rank(&mut self, menu: Menu, rank: i64) {
        self.ranks[menu.bits() as usize] = rank;
    }

    /// `a ≿ b`.
    pub fn weakly_prefers(&self, a: Menu, b: Menu) -> bool {
        self.rank(a) >= self.rank(b)
    }

    pub fn strictly_prefers(&self, a: Menu, b: Menu) -> bool {
        self.rank(a) > self.rank(b)
    }

    /// Number of indifference classes.
    pub fn class_count(&self) -> usize {
        let mut r: Vec<i64> = all_menus(self.n).map(|m| self.rank(m)).collect();
        r.sort_unstable();
        r.dedup();
        r.len()
    }
}

/// Menus ranked by `n(·)`.
pub fn freedom_ranking(model: &FreedomModel) -> MenuPreference {
    MenuPreference::from_fn(model.ground_len(), |m| freedom_count(model, m) as i64)
}

pub fn check_r_dominance(model: &FreedomModel, pref: &MenuPreference, cap: usize) -> AxiomVerdict {
    let n = model.ground_len();
    let menus: Vec<(Menu, u32)> = all_menus(n).map(|m| (m, model.satisfied_types(m))).collect();
    let mut out = Collector::new(Axiom::RDominance, cap);
    'scan: for &(a, sa) in &menus {
        for &(b, sb) in &menus {
            let broken = match mask_richness(sa, sb) {
                Richness::NotRicher => None,
                Richness::Richer => (!pref.weakly_prefers(a, b)).then_some(DominanceClause::Richer),
                Richness::StrictlyRicher => (!pref.strictly_prefers(a, b)).then_some(DominanceClause::StrictlyRicher),
            };
            if let Some(clause) = broken {
                if out.push(Violation::RDominance { clause, a, b }) {
                    break 'scan;
                }
            }
        }
    }
    if !out.is_full() {
        'singles: for x in 0..n {
            for y in 0..n {
                let (a, b) = (Menu::singleton(x), Menu::singleton(y));
                if pref.strictly_prefers(a, b)
                    && is_richer(model, a, b) != Richness::StrictlyRicher
                    && out.push(Violation::RDominance {
                        clause: DominanceClause::Singletons,
                        a,
                        b,
                    })
                {
                    break 'singles;
                }
            }
        }
    }
    out.finish()
}

fn within_type(model: &FreedomModel, m: Menu) -> bool {
    m.first()
        .is_some_and(|x| m.is_subset_of(model.structure.types().block_of(x)))
}

/// R-Composition's conditions on the `(A, C)` side.
fn left_composable(model: &FreedomModel, a: Menu, c: Menu) -> bool {
    a.is_disjoint(c) && within_type(model, c) && is_richer(model, a, c) == Richness::NotRicher
}

/// Whether `(a, b, c, d)` meets R-Composition's preconditions.
fn composable(model: &FreedomModel, a: Menu, b: Menu, c: Menu, d: Menu) -> bool {
    left_composable(model, a, c) && b.is_disjoint(d) && within_type(model, d)
}

fn composition_broken(pref: &MenuPreference, a: Menu, b: Menu, c: Menu, d: Menu) -> bool {
    pref.weakly_prefers(a, b) && pref.weakly_prefers(c, d) && !pref.weakly_prefers(a.union(c), b.union(d))
}

pub fn check_r_composition(model: &FreedomModel, pref: &MenuPreference, cap: usize) -> AxiomVerdict {
    let n = model.ground_len();
    let types = model.structure.types();
    let mut out = Collector::new(Axiom::RComposition, cap);
    let inside: Vec<Menu> = types.blocks().iter().flat_map(|b| b.submenus()).collect();
    if n <= COMPOSITION_EXHAUSTIVE_MAX {
        let menus: Vec<Menu> = all_menus(n).collect();
        'scan: for &a in &menus {
            for &c in inside.iter().filter(|&&c| left_composable(model, a, c)) {
                for &d in &inside {
                    if !pref.weakly_prefers(c, d) {
                        continue;
                    }
                    for &b in menus.iter().filter(|&&b| b.is_disjoint(d)) {
                        if composition_broken(pref, a, b, c, d) && out.push(Violation::RComposition { a, b, c, d }) {
                            break 'scan;
                        }
                    }
                }
            }
        }
    } else {
        let mut rng = seeded(0);
        let full = Menu::full(n).bits();
        for _ in 0..COMPOSITION_SAMPLE {
            let pick = |rng: &mut crate::random::SeededRng| Menu::from_bits(rng.gen_range(1..=full));
            let a = pick(&mut rng);
            let b = pick(&mut rng);
            let c = inside[rng.gen_range(0..inside.len())];
            let d = inside[rng.gen_range(0..inside.len())];
            if composable(model, a, b, c, d)
                && composition_broken(pref, a, b, c, d)
                && out.push(Violation::RComposition { a, b, c, d })
            {
                break;
            }
        }
    }
    out.finish()
}

/// R-Dominance and R-Composition verdicts.
pub fn check_menu_axioms(model: &FreedomModel, pref: &MenuPreference) -> (AxiomVerdict, AxiomVerdict) {
    (
        check_r_dominance(model, pref, DEFAULT_VIOLATION_CAP),
        check_r_composition(model, pref, DEFAULT_VIOLATION_CAP),
    )
}

/// Re-checks a menu-axiom witness.
pub fn replay_menu_violation(model: &FreedomModel, pref: &MenuPreference, v: &Violation) -> bool {
    match *v {
        Violation::RDominance { clause, a, b } => match clause {
            DominanceClause::Richer => is_richer(model, a, b) == Richness::Richer && !pref.weakly_prefers(a, b),
            DominanceClause::StrictlyRicher => {
                is_richer(model, a, b) == Richness::StrictlyRicher && !pref.strictly_prefers(a, b)
            }
            DominanceClause::Singletons => {
                a.len() == 1
                    && b.len() == 1
                    && pref.strictly_prefers(a, b)
                    && is_richer(model, a, b) != Richness::StrictlyRicher
            }
        },
        Violation::RComposition { a, b, c, d } => composable(model, a, b, c, d) && composition_broken(pref, a, b, c, d),
        _ => false,
    }
}

/// `n(A)` for every menu, ascending bit order.
pub fn freedom_table(model: &FreedomModel, ground: &GroundSet) -> Vec<(String, usize)> {
    all_menus(ground.len())
        .map(|m| (ground.menu_key(m), freedom_count(model, m)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice::{LinearOrder, TypePartition};
    use crate::fixtures;
    use std::sync::Arc;

    fn two_type_model() -> FreedomModel {
        // types {0,1,2} and {3,4}; equal orders put thresholds at the bottom
        let g = Arc::new(GroundSet::numbered(5).unwrap());
        let o = LinearOrder::identity(5);
        let types = TypePartition::new(5, vec![Menu::triple(0, 1, 2), Menu::pair(3, 4)]).unwrap();
        FreedomModel::new(RSStructure::new(g, types, o.clone(), o).unwrap()).unwrap()
    }

    #[test]
    fn worked_example_has_no_freedom() {
        let m = FreedomModel::from_choice(&fixtures::worked_example().evaluate()).unwrap();
        assert!(m.satisfied.iter().all(|f| f.is_empty()));
        assert!(all_menus(3).all(|a| freedom_count(&m, a) == 0));
        assert_eq!(freedom_ranking(&m).class_count(), 1);
    }

    #[test]
    fn counts_and_richness() {
        let m = two_type_model();
        assert_eq!(m.satisfied, vec![Menu::pair(0, 1), Menu::singleton(3)]);
        assert_eq!(freedom_count(&m, Menu::singleton(2)), 0);
        assert_eq!(freedom_count(&m, Menu::pair(0, 3)), 2);
        assert_eq!(is_richer(&m, Menu::pair(0, 3), Menu::singleton(1)), Richness::StrictlyRicher);
        assert_eq!(is_richer(&m, Menu::pair(0, 4), Menu::pair(0, 4)), Richness::Richer);
        assert_eq!(is_richer(&m, Menu::singleton(0), Menu::singleton(3)), Richness::NotRicher);
        assert_eq!(freedom_ranking(&m).class_count(), 3);
    }

    #[test]
    fn freedom_ranking_passes_both_axioms() {
        let m = two_type_model();
        let (d, c) = check_menu_axioms(&m, &freedom_ranking(&m));
        assert!(d.holds, "{d:?}");
        assert!(c.holds, "{c:?}");
    }

    #[test]
    fn constant_preference_breaks_strict_dominance() {
        let m = two_type_model();
        let flat = MenuPreference::from_fn(5, |_| 0);
        let (d, _) = check_menu_axioms(&m, &flat);
        assert!(!d.holds);
        assert!(d.violations.iter().any(|v| matches!(v,
            Violation::RDominance { clause: DominanceClause::StrictlyRicher, .. })));
        assert!(d.violations.iter().all(|v| replay_menu_violation(&m, &flat, v)));
    }

    #[test]
    fn cardinality_ranking_breaks_dominance() {
        let m = two_type_model();
        let card = MenuPreference::from_fn(5, |a| a.len() as i64);
        let (d, _) = check_menu_axioms(&m, &card);
        assert!(!d.holds);
    }

    #[test]
    fn singleton_ranking_needs_strict_richness() {
        let m = two_type_model();
        // {2} over {4}: both outside every F^T
        let pref = MenuPreference::from_fn(5, |a| if a == Menu::singleton(2) { 5 } else { freedom_count(&m, a) as i64 });
        let d = check_r_dominance(&m, &pref, usize::MAX);
        assert!(d.violations.iter().any(|v| matches!(v,
            Violation::RDominance { clause: DominanceClause::Singletons, .. })));
    }

    #[test]
    fn favouring_one_pair_of_types_breaks_composition_only() {
        // three types of two options each, one satisfied freedom per type
        let g = Arc::new(GroundSet::numbered(6).unwrap());
        let o = LinearOrder::identity(6);
        let types = TypePartition::new(6, vec![Menu::pair(0, 1), Menu::pair(2, 3), Menu::pair(4, 5)]).unwrap();
        let m = FreedomModel::new(RSStructure::new(g, types, o.clone(), o).unwrap()).unwrap();
        // n(·) with a bonus for meeting types 0 and 2 but not 1
        let pref = MenuPreference::from_fn(6, |a| 2 * freedom_count(&m, a) as i64 + (m.satisfied_types(a) == 0b101) as i64);
        let (d, c) = check_menu_axioms(&m, &pref);
        assert!(d.holds, "{d:?}");
        assert!(!c.holds);
        assert!(c.violations.iter().all(|v| replay_menu_violation(&m, &pref, v)));
    }
}
