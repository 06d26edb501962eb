//! Constructs a rationalizing structure from a choice function that passes
//! Exp, NRS and IR.
//!
//! Types are the similarity classes. Inside a type `T`, options are
//! compared by which outside options they beat (`x ⊵ y` when `x` beats
//! every outside option `y` beats); ties are broken by revealed preference
//! except inside the band between the lowest non-reacting option `x*_T`
//! and `x^T`, the best `⊵`-top option below it, where the order is
//! reversed. The reaction
//! order is that relation inside types and revealed preference across
//! them. The welfare order is a topological extension of revealed
//! preference restricted to each type.

use std::collections::BTreeSet;

use crate::axioms::{AxiomChecker, AxiomVerdict};
use crate::choice::{ChoiceFunction, LinearOrder, Menu, TypePartition};
use crate::error::{Error, Result};
use crate::revealed::{BinaryRelation, RevealedReport};

use super::RSStructure;

#[derive(Clone, Debug, Default)]
pub struct SynthesisOptions {
    /// Tie-break for the welfare extension: among options ready to be
    /// emitted, the one ranked highest here goes first. Ground-set index
    /// when absent.
    pub welfare_priority: Option<LinearOrder>,
    /// Skip the upfront axiom checks. Structural failures are still
    /// detected and reported.
    pub skip_axiom_check: bool,
}

/// Intermediate objects of the construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisTrace {
    pub types: TypePartition,
    /// Strict part of `⊵_T`, all types together.
    pub dominance: BinaryRelation,
    /// Symmetric part of `⊵_T` (unordered ties, stored both ways).
    pub ties: BinaryRelation,
    /// `x^T` per type, indexed like `types.blocks()`.
    pub peak_candidates: Vec<usize>,
    /// `x*_T` per type.
    pub thresholds: Vec<usize>,
    /// Options in the order the welfare extension emitted them.
    pub extension_log: Vec<usize>,
}

impl SynthesisTrace {
    /// Rebuilds both orders from the recorded relations and revealed
    /// preference.
    pub fn replay(&self, strict_pref: &BinaryRelation) -> Result<(LinearOrder, LinearOrder)> {
        let reaction = reaction_order(self, strict_pref)?;
        let welfare = LinearOrder::new(self.extension_log.clone())?;
        Ok((welfare, reaction))
    }
}

pub fn synthesize_rs(cf: &ChoiceFunction) -> Result<(RSStructure, SynthesisTrace)> {
    synthesize_rs_with(cf, &SynthesisOptions::default())
}

pub fn synthesize_rs_with(cf: &ChoiceFunction, opts: &SynthesisOptions) -> Result<(RSStructure, SynthesisTrace)> {
    let report = RevealedReport::new(cf);
    let checker = AxiomChecker::default();
    if !opts.skip_axiom_check {
        if let Some(v) = checker.rsc(cf, &report).into_iter().find(|v| !v.holds) {
            return Err(Error::AxiomViolation(Box::new(v)));
        }
    }
    let fail = |v: AxiomVerdict, what: &str| -> Error {
        if v.holds {
            Error::InternalInconsistency(what.to_string())
        } else {
            Error::AxiomViolation(Box::new(v))
        }
    };

    let n = cf.len();
    let pref = &report.strict_pref;
    let types = report.similarity.clone();

    // revealed preference must be a chain inside each type
    for &block in types.blocks() {
        if !chain_in(pref, block) {
            return Err(fail(checker.nrs(cf, &types), "revealed preference cycles inside a type"));
        }
    }

    let mut dominance = BinaryRelation::empty(n);
    let mut ties = BinaryRelation::empty(n);
    let mut peak_candidates = Vec::with_capacity(types.len());
    let mut thresholds = Vec::with_capacity(types.len());
    for &block in types.blocks() {
        let outside = Menu::full(n).difference(block);
        let below = |w: usize| pref.successors(w).intersection(outside);
        for x in block.iter() {
            for y in block.iter().filter(|&y| y != x) {
                let xy = below(y).is_subset_of(below(x));
                let yx = below(x).is_subset_of(below(y));
                match (xy, yx) {
                    (true, true) => ties.insert(x, y),
                    (true, false) => dominance.insert(x, y),
                    (false, false) => {
                        return Err(fail(checker.ir(cf, &types), "outside-dominance is incomplete inside a type"));
                    }
                    (false, true) => {}
                }
            }
        }
        let calm: Menu = block
            .iter()
            .filter(|&x| report.reaction.successors(x).is_empty())
            .collect();
        if calm.is_empty() {
            return Err(Error::InternalInconsistency(format!(
                "every option of type {} reacts to something",
                cf.ground().menu_key(block)
            )));
        }
        let star = pref_min(pref, calm);
        let top: Menu = block
            .iter()
            .filter(|&x| dominance.predecessors(x).intersection(block).is_empty())
            .collect();
        // the best top option at or below x*_T, so the peak is the best
        // option nobody reacts to
        let low_top: Menu = top.iter().filter(|&x| x == star || pref.contains(star, x)).collect();
        peak_candidates.push(if low_top.is_empty() {
            pref_min(pref, top)
        } else {
            pref_max(pref, low_top)
        });
        thresholds.push(star);
    }

    let extension_log = extend_welfare(pref, &types, opts.welfare_priority.as_ref());
    let mut trace = SynthesisTrace {
        types: types.clone(),
        dominance,
        ties,
        peak_candidates,
        thresholds,
        extension_log,
    };
    trace.ties = symmetric(&trace.ties);
    let (welfare, reaction) = trace.replay(pref)?;
    let structure = RSStructure::new(cf.ground().clone(), types, welfare, reaction)?;
    if structure.evaluate() != *cf {
        return Err(Error::InternalInconsistency(
            "synthesized structure does not regenerate the choice function".into(),
        ));
    }
    Ok((structure, trace))
}

fn symmetric(r: &BinaryRelation) -> BinaryRelation {
    let mut out = r.clone();
    for (x, y) in r.pairs() {
        out.insert(y, x);
    }
    out
}

fn chain_in(pref: &BinaryRelation, block: Menu) -> bool {
    let k = block.len();
    // a tournament is transitive iff its score sequence is 0..k
    let mut scores: Vec<usize> = block
        .iter()
        .map(|x| pref.successors(x).intersection(block).len())
        .collect();
    scores.sort_unstable();
    scores.into_iter().eq(0..k)
}

/// Revealed-preference minimum of a nonempty chain.
fn pref_min(pref: &BinaryRelation, set: Menu) -> usize {
    set.iter()
        .find(|&x| pref.successors(x).intersection(set).is_empty())
        .expect("nonempty chain")
}

/// Revealed-preference maximum of a nonempty chain.
fn pref_max(pref: &BinaryRelation, set: Menu) -> usize {
    set.iter()
        .find(|&x| pref.predecessors(x).intersection(set).is_empty())
        .expect("nonempty chain")
}

/// `≿₂`: the tie-broken outside-dominance inside types, revealed
/// preference across types.
fn reaction_order(trace: &SynthesisTrace, pref: &BinaryRelation) -> Result<LinearOrder> {
    let types = &trace.types;
    let n = types.ground_len();
    let beats = |x: usize, y: usize| -> bool {
        if !types.same_block(x, y) {
            return pref.contains(x, y);
        }
        if trace.dominance.contains(x, y) {
            return true;
        }
        if trace.dominance.contains(y, x) || !trace.ties.contains(x, y) {
            return false;
        }
        let b = types.block_index(x);
        let (star, peak) = (trace.thresholds[b], trace.peak_candidates[b]);
        let weak = |a: usize, c: usize| a == c || pref.contains(a, c);
        // for a tie with hi ≻ lo, lo goes first iff x*_T ≿ hi ≻ lo ≿ x^T
        let in_band = |hi: usize, lo: usize| weak(star, hi) && weak(lo, peak);
        if pref.contains(x, y) {
            !in_band(x, y)
        } else {
            in_band(y, x)
        }
    };
    let mut scored: Vec<(usize, usize)> = (0..n)
        .map(|x| ((0..n).filter(|&y| y != x && beats(x, y)).count(), x))
        .collect();
    scored.sort_unstable_by(|a, b| b.cmp(a));
    let ranking: Vec<usize> = scored.iter().map(|&(_, x)| x).collect();
    let consistent = scored.iter().enumerate().all(|(i, &(s, _))| s == n - 1 - i)
        && ranking
            .iter()
            .enumerate()
            .all(|(i, &x)| ranking[i + 1..].iter().all(|&y| beats(x, y) && !beats(y, x)));
    if !consistent {
        return Err(Error::InternalInconsistency("reaction relation is not a linear order".into()));
    }
    LinearOrder::new(ranking)
}

/// Kahn's algorithm over `∪_T ≻|_T`; among ready options the
/// highest-priority one is emitted first.
fn extend_welfare(pref: &BinaryRelation, types: &TypePartition, priority: Option<&LinearOrder>) -> Vec<usize> {
    let n = types.ground_len();
    let rank = |x: usize| priority.map_or(x, |p| p.position(x));
    let mut indegree: Vec<usize> = (0..n)
        .map(|x| pref.predecessors(x).intersection(types.block_of(x)).len())
        .collect();
    let mut ready: BTreeSet<(usize, usize)> = (0..n).filter(|&x| indegree[x] == 0).map(|x| (rank(x), x)).collect();
    let mut out = Vec::with_capacity(n);
    while let Some((r, x)) = ready.iter().next().copied() {
        ready.remove(&(r, x));
        out.push(x);
        for y in pref.successors(x).intersection(types.block_of(x)).iter() {
            indegree[y] -= 1;
            if indegree[y] == 0 {
                ready.insert((rank(y), y));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::Axiom;
    use crate::choice::{choice_from_order, ChoiceFunctionSpace, GroundSet};
    use crate::fixtures;
    use std::sync::Arc;

    #[test]
    fn detergent_synthesis() {
        let cf = fixtures::detergent();
        let (s, trace) = synthesize_rs(&cf).unwrap();
        let g = cf.ground();
        assert_eq!(s.types().names(g), vec![vec!["x", "y"], vec!["z"]]);
        assert_eq!(s.welfare().names(g), ["y", "x", "z"]);
        assert_eq!(s.reaction().names(g), ["x", "z", "y"]);
        assert_eq!(trace.extension_log, vec![1, 0, 2]);
        assert_eq!(trace.thresholds, vec![1, 2]);
        assert_eq!(trace.peak_candidates, vec![0, 2]);
    }

    #[test]
    fn order_gives_singletons() {
        let g = Arc::new(GroundSet::numbered(5).unwrap());
        let o = LinearOrder::new(vec![3, 1, 4, 0, 2]).unwrap();
        let cf = choice_from_order(g, &o);
        let (s, _) = synthesize_rs(&cf).unwrap();
        assert_eq!(s.types(), &TypePartition::singletons(5));
        assert_eq!(s.reaction(), &o);
    }

    #[test]
    fn exhaustive_three_options() {
        let space = ChoiceFunctionSpace::new(Arc::new(GroundSet::numbered(3).unwrap())).unwrap();
        let mut passing = 0;
        for cf in space.iter() {
            let rep = RevealedReport::new(&cf);
            let ok = AxiomChecker::default().rsc(&cf, &rep).iter().all(|v| v.holds);
            match synthesize_rs(&cf) {
                Ok((s, _)) => {
                    assert!(ok);
                    assert_eq!(s.evaluate(), cf);
                    passing += 1;
                }
                Err(Error::AxiomViolation(_)) => assert!(!ok),
                Err(e) => panic!("{e}"),
            }
        }
        assert!(passing > 0);
    }

    #[test]
    fn rejects_nrs_violation() {
        let cf = crate::axioms::tsm_choice(&fixtures::tsm_nrs_counterexample()).unwrap();
        match synthesize_rs(&cf) {
            Err(Error::AxiomViolation(v)) => assert_eq!(v.axiom, Axiom::NoReactionSimilarity),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn priority_changes_only_cross_type_welfare() {
        let cf = fixtures::welfare_example_1().evaluate();
        let (a, _) = synthesize_rs(&cf).unwrap();
        let reversed = LinearOrder::new((0..cf.len()).rev().collect()).unwrap();
        let opts = SynthesisOptions {
            welfare_priority: Some(reversed),
            ..Default::default()
        };
        let (b, _) = synthesize_rs_with(&cf, &opts).unwrap();
        assert_eq!(a.reaction(), b.reaction());
        assert_eq!(b.evaluate(), cf);
        for &block in a.types().blocks() {
            assert_eq!(a.welfare().sorted(block), b.welfare().sorted(block));
        }
    }

    #[test]
    fn trace_replays() {
        let cf = fixtures::welfare_example_3().evaluate();
        let (s, trace) = synthesize_rs(&cf).unwrap();
        let (w, r) = trace.replay(&RevealedReport::new(&cf).strict_pref).unwrap();
        assert_eq!((&w, &r), (s.welfare(), s.reaction()));
    }
}
