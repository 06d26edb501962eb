//! Relations revealed by a choice function: binary revealed preference,
//! the reaction relation and the similarity partition it induces.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::choice::{ChoiceFunction, GroundSet, Menu, TypePartition};

/// A binary relation over option positions, one bit row per option:
/// bit `y` of row `x` is set when `x` relates to `y`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryRelation {
    rows: Vec<Menu>,
}

impl BinaryRelation {
    pub fn empty(n: usize) -> BinaryRelation {
        BinaryRelation {
            rows: vec![Menu::EMPTY; n],
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> BinaryRelation {
        let mut r = BinaryRelation::empty(n);
        for (x, y) in pairs {
            r.insert(x, y);
        }
        r
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    #[inline]
    pub fn insert(&mut self, x: usize, y: usize) {
        self.rows[x] = self.rows[x].with(y);
    }

    /// Options `y` with `x R y`.
    #[inline]
    pub fn successors(&self, x: usize) -> Menu {
        self.rows[x]
    }

    /// Options `x` with `x R y`.
    pub fn predecessors(&self, y: usize) -> Menu {
        (0..self.len()).filter(|&x| self.contains(x, y)).collect()
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, r)| r.iter().map(move |y| (x, y)))
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.len()).all(|x| !self.contains(x, x))
    }

    pub fn is_asymmetric(&self) -> bool {
        self.pairs().all(|(x, y)| !self.contains(y, x))
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs()
            .all(|(x, y)| self.rows[y].is_subset_of(self.rows[x]))
    }

    pub fn is_subset_of(&self, other: &BinaryRelation) -> bool {
        self.rows
            .iter()
            .zip(&other.rows)
            .all(|(a, b)| a.is_subset_of(*b))
    }

    /// Warshall closure.
    pub fn transitive_closure(&self) -> BinaryRelation {
        let mut rows = self.rows.clone();
        let n = rows.len();
        for k in 0..n {
            for x in 0..n {
                if rows[x].contains(k) {
                    rows[x] = rows[x].union(rows[k]);
                }
            }
        }
        BinaryRelation { rows }
    }

    pub fn union(&self, other: &BinaryRelation) -> BinaryRelation {
        BinaryRelation {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.union(*b))
                .collect(),
        }
    }

    pub fn difference(&self, other: &BinaryRelation) -> BinaryRelation {
        BinaryRelation {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.difference(*b))
                .collect(),
        }
    }

    pub fn named_pairs(&self, ground: &GroundSet) -> Vec<[String; 2]> {
        self.pairs()
            .map(|(x, y)| [ground.name(x).to_string(), ground.name(y).to_string()])
            .collect()
    }
}

impl fmt::Debug for BinaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// Everything revealed by a choice function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RevealedReport {
    /// `x ≻ y` iff `x = c{x, y}`.
    pub strict_pref: BinaryRelation,
    /// `x R y`: `x` reacts to the absence of `y`.
    pub reaction: BinaryRelation,
    /// Lowest-index witness `z` for each reaction pair.
    pub witnesses: BTreeMap<(usize, usize), usize>,
    pub similarity: TypePartition,
}

impl RevealedReport {
    pub fn new(cf: &ChoiceFunction) -> RevealedReport {
        let strict_pref = reveal_binary(cf);
        let (reaction, witnesses) = reveal_reaction(cf);
        let similarity = similarity_classes(&reaction);
        RevealedReport {
            strict_pref,
            reaction,
            witnesses,
            similarity,
        }
    }

    /// Options that react to the absence of nothing.
    pub fn non_reacting(&self) -> Menu {
        (0..self.reaction.len())
            .filter(|&x| self.reaction.successors(x).is_empty())
            .collect()
    }

    /// Options whose absence triggers no reaction.
    pub fn never_reacted_to(&self) -> Menu {
        (0..self.reaction.len())
            .filter(|&y| self.reaction.predecessors(y).is_empty())
            .collect()
    }

    pub fn to_named(&self, ground: &GroundSet) -> NamedRevealedReport {
        NamedRevealedReport {
            strict_preference: self.strict_pref.named_pairs(ground),
            reaction: self.reaction.named_pairs(ground),
            witnesses: self
                .witnesses
                .iter()
                .map(|(&(x, y), &z)| NamedWitness {
                    reacting: ground.name(x).to_string(),
                    absent: ground.name(y).to_string(),
                    witness: ground.name(z).to_string(),
                })
                .collect(),
            similarity_classes: self.similarity.names(ground),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedWitness {
    pub reacting: String,
    pub absent: String,
    pub witness: String,
}

/// JSON view of a [`RevealedReport`].
#[derive(Clone, Debug, Serialize)]
pub struct NamedRevealedReport {
    pub strict_preference: Vec<[String; 2]>,
    pub reaction: Vec<[String; 2]>,
    pub witnesses: Vec<NamedWitness>,
    pub similarity_classes: Vec<Vec<String>>,
}

/// Binary revealed preference from pairwise choices.
pub fn reveal_binary(cf: &ChoiceFunction) -> BinaryRelation {
    let n = cf.len();
    let mut r = BinaryRelation::empty(n);
    for x in 0..n {
        for y in 0..n {
            if cf.beats(x, y) {
                r.insert(x, y);
            }
        }
    }
    r
}

/// Reaction relation from triples: `x R y` iff some `z` has
/// `z = c{x,y,z}` and `x = c{x,z}`. The witness kept is the lowest-index `z`.
pub fn reveal_reaction(cf: &ChoiceFunction) -> (BinaryRelation, BTreeMap<(usize, usize), usize>) {
    let n = cf.len();
    let mut r = BinaryRelation::empty(n);
    let mut witnesses = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let witness = (0..n)
                .filter(|&z| z != x && z != y)
                .find(|&z| cf.triple(x, y, z) == z && cf.pair(x, z) == x);
            if let Some(z) = witness {
                r.insert(x, y);
                witnesses.insert((x, y), z);
            }
        }
    }
    (r, witnesses)
}

/// Reaction relation over arbitrary menus: `x R y` iff some `A` has
/// `x = c(A \ {y}) ≠ c(A) ≠ y`. Scans every menu, so cost grows as `3^n`.
pub fn reveal_reaction_general(cf: &ChoiceFunction) -> BinaryRelation {
    let n = cf.len();
    let mut r = BinaryRelation::empty(n);
    for menu in cf.ground().menus().filter(|m| m.len() >= 2) {
        let chosen = cf.choice(menu);
        for y in menu.iter().filter(|&y| y != chosen) {
            let x = cf.choice(menu.without(y));
            if x != chosen {
                r.insert(x, y);
            }
        }
    }
    r
}

/// Discrepancy between the triple-based and the arbitrary-menu reaction
/// relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReactionCrossCheck {
    pub only_in_triples: BinaryRelation,
    pub only_in_general: BinaryRelation,
}

impl ReactionCrossCheck {
    pub fn agrees(&self) -> bool {
        self.only_in_triples.is_empty() && self.only_in_general.is_empty()
    }
}

pub fn cross_check_reaction(cf: &ChoiceFunction) -> ReactionCrossCheck {
    let (triples, _) = reveal_reaction(cf);
    let general = reveal_reaction_general(cf);
    ReactionCrossCheck {
        only_in_triples: triples.difference(&general),
        only_in_general: general.difference(&triples),
    }
}

/// Connected components of the undirected reaction graph; isolated options
/// are singleton blocks.
pub fn similarity_classes(reaction: &BinaryRelation) -> TypePartition {
    let n = reaction.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (x, y) in reaction.pairs() {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        if rx != ry {
            parent[rx.max(ry)] = rx.min(ry);
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    TypePartition::from_labels(&labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice::{choice_from_order, GroundSet, LinearOrder};
    use crate::fixtures;
    use std::sync::Arc;

    #[test]
    fn binary_from_order_is_its_strict_part() {
        let g = Arc::new(GroundSet::new(["x", "y", "z"]).unwrap());
        let cf = choice_from_order(g, &LinearOrder::identity(3));
        let r = reveal_binary(&cf);
        assert_eq!(r, BinaryRelation::from_pairs(3, [(0, 1), (0, 2), (1, 2)]));
        assert!(reveal_reaction(&cf).0.is_empty());
    }

    #[test]
    fn detergent_reaction_and_witness() {
        let cf = fixtures::detergent();
        let (r, w) = reveal_reaction(&cf);
        assert_eq!(r, BinaryRelation::from_pairs(3, [(0, 1)]));
        assert_eq!(w[&(0, 1)], 2);
    }

    #[test]
    fn pair_choice_reveals_one_direction() {
        let cf = fixtures::detergent();
        let b = reveal_binary(&cf);
        // c{x,y} = y
        assert!(b.contains(1, 0) && !b.contains(0, 1));
    }

    #[test]
    fn similarity_of_empty_relation() {
        let p = similarity_classes(&BinaryRelation::empty(3));
        assert_eq!(p, TypePartition::singletons(3));
    }

    #[test]
    fn similarity_joins_shared_neighbour() {
        let r = BinaryRelation::from_pairs(3, [(0, 1), (2, 1)]);
        assert_eq!(similarity_classes(&r), TypePartition::single_block(3));
    }

    #[test]
    fn similarity_ignores_symmetric_duplicates() {
        let r = BinaryRelation::from_pairs(5, [(0, 3), (4, 2)]);
        let mut sym = r.clone();
        for (x, y) in r.pairs() {
            sym.insert(y, x);
        }
        assert_eq!(similarity_classes(&r), similarity_classes(&sym));
    }

    #[test]
    fn closure_and_properties() {
        let r = BinaryRelation::from_pairs(4, [(0, 1), (1, 2), (2, 3)]);
        let c = r.transitive_closure();
        assert!(c.is_transitive() && c.is_asymmetric() && c.is_irreflexive());
        assert_eq!(c.pair_count(), 6);
        assert_eq!(c.transitive_closure(), c);
    }
}
