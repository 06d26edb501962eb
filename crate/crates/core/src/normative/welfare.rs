use serde::Serialize;

use crate::choice::{ChoiceFunction, GroundSet, Menu};
use crate::error::{Error, Result};
use crate::revealed::BinaryRelation;
use crate::structure::{minimal_structure, RSStructure, SinglePeakedCertificate};

/// `x ≫ y` read off a certified structure: same type and `x ≻₁ y`; or
/// different types, `x` above its threshold, and some `z` of `y`'s type
/// above that type's threshold with `x ≻₂ z` and `z ≻₁ y`.
pub fn improving_from_structure(s: &RSStructure, cert: &SinglePeakedCertificate, closure: bool) -> BinaryRelation {
    let n = s.ground().len();
    let (types, w, r) = (s.types(), s.welfare(), s.reaction());
    let star = |x: usize| cert.threshold(types.block_index(x));
    let mut out = BinaryRelation::empty(n);
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            let holds = if types.same_block(x, y) {
                w.prefers(x, y)
            } else {
                w.prefers(x, star(x))
                    && types
                        .block_of(y)
                        .iter()
                        .any(|z| w.prefers(z, star(y)) && r.prefers(x, z) && w.prefers(z, y))
            };
            if holds {
                out.insert(x, y);
            }
        }
    }
    if closure {
        out.transitive_closure()
    } else {
        out
    }
}

/// The welfare-improving relation of a single-peaked choice function.
pub fn welfare_improving(cf: &ChoiceFunction) -> Result<BinaryRelation> {
    welfare_improving_with(cf, false)
}

pub fn welfare_improving_with(cf: &ChoiceFunction, closure: bool) -> Result<BinaryRelation> {
    let (s, cert) = minimal_structure(cf).map_err(|e| match e {
        Error::AxiomViolation(_) => Error::NotSinglePeakedRsc,
        other => other,
    })?;
    Ok(improving_from_structure(&s, &cert, closure))
}

/// `x P* y`: `x` is chosen from some menu containing `y`, and `y` is never
/// chosen from a menu containing `x`.
pub fn bernheim_rangel_pstar(cf: &ChoiceFunction) -> BinaryRelation {
    let n = cf.len();
    let mut beside = vec![Menu::EMPTY; n];
    for (menu, x) in cf.iter() {
        beside[x] = beside[x].union(menu);
    }
    let mut out = BinaryRelation::empty(n);
    for x in 0..n {
        for y in beside[x].without(x).iter() {
            if !beside[y].contains(x) {
                out.insert(x, y);
            }
        }
    }
    out
}

/// `x P y` iff some menu has `x = c(A) ≠ c(A \ {y})`.
pub fn masatlioglu_p(cf: &ChoiceFunction) -> BinaryRelation {
    let mut out = BinaryRelation::empty(cf.len());
    for (menu, x) in cf.iter().filter(|(m, _)| m.len() > 1) {
        for y in menu.without(x).iter() {
            if cf.choice(menu.without(y)) != x {
                out.insert(x, y);
            }
        }
    }
    out
}

/// Transitive closure of [`masatlioglu_p`].
pub fn masatlioglu_pr(cf: &ChoiceFunction) -> BinaryRelation {
    masatlioglu_p(cf).transitive_closure()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Containment {
    pub improving_in_pstar: bool,
    pub pstar_in_improving: bool,
    pub improving_in_pr: bool,
    pub pr_in_improving: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WelfareReport {
    pub improving: BinaryRelation,
    pub pstar: BinaryRelation,
    pub pr: BinaryRelation,
    pub comparisons: Containment,
}

impl WelfareReport {
    pub fn new(cf: &ChoiceFunction, closure: bool) -> Result<WelfareReport> {
        let improving = welfare_improving_with(cf, closure)?;
        let pstar = bernheim_rangel_pstar(cf);
        let pr = masatlioglu_pr(cf);
        let comparisons = Containment {
            improving_in_pstar: improving.is_subset_of(&pstar),
            pstar_in_improving: pstar.is_subset_of(&improving),
            improving_in_pr: improving.is_subset_of(&pr),
            pr_in_improving: pr.is_subset_of(&improving),
        };
        Ok(WelfareReport {
            improving,
            pstar,
            pr,
            comparisons,
        })
    }

    pub fn to_named(&self, ground: &GroundSet) -> NamedWelfareReport {
        NamedWelfareReport {
            welfare_improving: self.improving.named_pairs(ground),
            pstar: self.pstar.named_pairs(ground),
            pr: self.pr.named_pairs(ground),
            containment: self.comparisons.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedWelfareReport {
    pub welfare_improving: Vec<[String; 2]>,
    pub pstar: Vec<[String; 2]>,
    pub pr: Vec<[String; 2]>,
    pub containment: Containment,
}
