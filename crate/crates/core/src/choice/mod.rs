//! Ground sets, menus, linear orders, type partitions and total choice
//! functions. Everything downstream consumes these values.
//!
//! Options are addressed by their position in the [`GroundSet`]; a [`Menu`]
//! is a bit pattern over those positions. A [`ChoiceFunction`] stores one
//! byte per menu, indexed by the menu's bit pattern, so it is limited to
//! [`MAX_OPTIONS`] options.

mod enumerate;
mod format;
mod menu;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use enumerate::{enumerate_choice_functions, ChoiceFunctionSpace, ChoiceFunctions};
pub(crate) use format::from_entries;
pub use format::{
    parse_choice_function, serialize_choice_function, ChoiceFormat, CANONICAL_CSV_HEADER,
};
pub use menu::{all_menus, Menu, MenuIter};

/// Representation cap: choice functions store `2^n` entries.
pub const MAX_OPTIONS: usize = 24;
/// Cap for exhaustive enumeration of choice functions.
pub const MAX_ENUMERATION_OPTIONS: usize = 4;
/// Separator between option identifiers in canonical menu keys.
pub const MENU_KEY_SEPARATOR: char = ',';

/// The finite set of options, in a fixed order.
#[derive(Clone, PartialEq, Eq)]
pub struct GroundSet {
    options: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<I, S>(options: I) -> Result<GroundSet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let options: Vec<String> = options.into_iter().map(Into::into).collect();
        if options.len() < 2 {
            return Err(Error::InvalidGroundSet(format!(
                "need at least 2 options, got {}",
                options.len()
            )));
        }
        if options.len() > MAX_OPTIONS {
            return Err(Error::GroundSetTooLarge {
                size: options.len(),
                cap: MAX_OPTIONS,
            });
        }
        let mut index = HashMap::with_capacity(options.len());
        for (i, id) in options.iter().enumerate() {
            if id.is_empty() {
                return Err(Error::InvalidGroundSet("empty option identifier".into()));
            }
            if id.contains(MENU_KEY_SEPARATOR) {
                return Err(Error::InvalidGroundSet(format!(
                    "identifier `{id}` contains the menu separator `{MENU_KEY_SEPARATOR}`"
                )));
            }
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::InvalidGroundSet(format!("duplicate identifier `{id}`")));
            }
        }
        Ok(GroundSet { options, index })
    }

    /// Options named `x0, x1, ...`.
    pub fn numbered(n: usize) -> Result<GroundSet> {
        GroundSet::new((0..n).map(|i| format!("x{i}")))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.options.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.options.is_empty()
    }

    pub fn options(&self) -> &[String] {
        &self.options
    }

    #[inline]
    pub fn name(&self, x: usize) -> &str {
        &self.options[x]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn lookup(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownOption(id.to_string()))
    }

    pub fn full_menu(&self) -> Menu {
        Menu::full(self.len())
    }

    pub fn menus(&self) -> impl Iterator<Item = Menu> + Clone {
        all_menus(self.len())
    }

    pub fn menu_of(&self, ids: &[&str]) -> Result<Menu> {
        ids.iter().map(|id| self.lookup(id)).collect()
    }

    /// Canonical key: members sorted by ground position, comma-joined.
    pub fn menu_key(&self, menu: Menu) -> String {
        let mut key = String::new();
        for (k, x) in menu.iter().enumerate() {
            if k > 0 {
                key.push(MENU_KEY_SEPARATOR);
            }
            key.push_str(&self.options[x]);
        }
        key
    }

    /// Parses a menu key. Member order is free; repeats and empty
    /// components are rejected.
    pub fn parse_menu_key(&self, key: &str) -> Result<Menu> {
        let mut menu = Menu::EMPTY;
        for part in key.split(MENU_KEY_SEPARATOR) {
            if part.is_empty() {
                return Err(Error::MalformedKey(key.to_string()));
            }
            let x = self.lookup(part)?;
            if menu.contains(x) {
                return Err(Error::MalformedKey(key.to_string()));
            }
            menu = menu.with(x);
        }
        Ok(menu)
    }

    pub fn names(&self, menu: Menu) -> Vec<String> {
        menu.iter().map(|x| self.options[x].clone()).collect()
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.options).finish()
    }
}

/// A linear order stored as a best-first permutation of option positions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearOrder {
    ranking: Vec<usize>,
    position: Vec<usize>,
}

impl LinearOrder {
    pub fn new(ranking: Vec<usize>) -> Result<LinearOrder> {
        let n = ranking.len();
        let mut position = vec![usize::MAX; n];
        for (pos, &x) in ranking.iter().enumerate() {
            if x >= n || position[x] != usize::MAX {
                return Err(Error::Malformed(format!(
                    "ranking {ranking:?} is not a permutation of 0..{n}"
                )));
            }
            position[x] = pos;
        }
        Ok(LinearOrder { ranking, position })
    }

    /// Ground-set order: option 0 best.
    pub fn identity(n: usize) -> LinearOrder {
        LinearOrder {
            ranking: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    /// Order from names, best first.
    pub fn from_names(ground: &GroundSet, names: &[&str]) -> Result<LinearOrder> {
        if names.len() != ground.len() {
            return Err(Error::Malformed(format!(
                "order lists {} options, ground set has {}",
                names.len(),
                ground.len()
            )));
        }
        let ranking = names
            .iter()
            .map(|n| ground.lookup(n))
            .collect::<Result<Vec<_>>>()?;
        LinearOrder::new(ranking)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.ranking.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }

    /// Best-first permutation.
    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    /// Position of `x`, 0 = best.
    #[inline]
    pub fn position(&self, x: usize) -> usize {
        self.position[x]
    }

    /// Strict preference: `x` ranked above `y`.
    #[inline]
    pub fn prefers(&self, x: usize, y: usize) -> bool {
        self.position[x] < self.position[y]
    }

    /// Best member of a nonempty menu.
    #[inline]
    pub fn max_of(&self, menu: Menu) -> usize {
        debug_assert!(!menu.is_empty());
        menu.iter()
            .min_by_key(|&x| self.position[x])
            .expect("max of empty menu")
    }

    /// Worst member of a nonempty menu.
    #[inline]
    pub fn min_of(&self, menu: Menu) -> usize {
        debug_assert!(!menu.is_empty());
        menu.iter()
            .max_by_key(|&x| self.position[x])
            .expect("min of empty menu")
    }

    /// Members of `menu`, best first.
    pub fn sorted(&self, menu: Menu) -> Vec<usize> {
        self.ranking
            .iter()
            .copied()
            .filter(|&x| menu.contains(x))
            .collect()
    }

    /// Members `x` of `within` with `low ≾ x ≾ high`.
    pub fn interval(&self, within: Menu, low: usize, high: usize) -> Menu {
        let (lo, hi) = (self.position[low], self.position[high]);
        within
            .iter()
            .filter(|&x| self.position[x] >= hi && self.position[x] <= lo)
            .collect()
    }

    pub fn names(&self, ground: &GroundSet) -> Vec<String> {
        self.ranking.iter().map(|&x| ground.name(x).to_string()).collect()
    }
}

impl fmt::Debug for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearOrder{:?}", self.ranking)
    }
}

/// Partition of the ground set into nonempty blocks, in canonical order:
/// blocks sorted by their lowest member.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TypePartition {
    blocks: Vec<Menu>,
    block_of: Vec<usize>,
}

impl TypePartition {
    pub fn new(n: usize, blocks: Vec<Menu>) -> Result<TypePartition> {
        let mut block_of = vec![usize::MAX; n];
        let mut blocks = blocks;
        blocks.sort_by_key(|b| b.first());
        for (k, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::Malformed("empty block in partition".into()));
            }
            for x in b.iter() {
                if x >= n || block_of[x] != usize::MAX {
                    return Err(Error::Malformed(format!(
                        "option {x} is out of range or in several blocks"
                    )));
                }
                block_of[x] = k;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::Malformed("blocks do not cover the ground set".into()));
        }
        Ok(TypePartition { blocks, block_of })
    }

    /// Partition from a label per option; equal labels share a block.
    pub fn from_labels(labels: &[usize]) -> TypePartition {
        let mut by_label: Vec<(usize, Menu)> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            match by_label.iter_mut().find(|(k, _)| *k == l) {
                Some((_, m)) => *m = m.with(x),
                None => by_label.push((l, Menu::singleton(x))),
            }
        }
        TypePartition::new(labels.len(), by_label.into_iter().map(|(_, m)| m).collect())
            .expect("labels always induce a partition")
    }

    pub fn singletons(n: usize) -> TypePartition {
        TypePartition::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn single_block(n: usize) -> TypePartition {
        TypePartition::from_labels(&vec![0; n])
    }

    pub fn from_names(ground: &GroundSet, blocks: &[Vec<&str>]) -> Result<TypePartition> {
        let blocks = blocks
            .iter()
            .map(|b| b.iter().map(|id| ground.lookup(id)).collect::<Result<Menu>>())
            .collect::<Result<Vec<_>>>()?;
        TypePartition::new(ground.len(), blocks)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Number of options covered.
    #[inline]
    pub fn ground_len(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> &[Menu] {
        &self.blocks
    }

    #[inline]
    pub fn block_index(&self, x: usize) -> usize {
        self.block_of[x]
    }

    #[inline]
    pub fn block_of(&self, x: usize) -> Menu {
        self.blocks[self.block_of[x]]
    }

    #[inline]
    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    /// True when every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &TypePartition) -> bool {
        self.blocks.iter().all(|b| {
            let first = b.first().expect("nonempty block");
            b.is_subset_of(coarser.block_of(first))
        })
    }

    pub fn names(&self, ground: &GroundSet) -> Vec<Vec<String>> {
        self.blocks.iter().map(|&b| ground.names(b)).collect()
    }
}

impl fmt::Debug for TypePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.blocks).finish()
    }
}

/// A total choice function: one chosen member for every nonempty menu.
#[derive(Clone)]
pub struct ChoiceFunction {
    ground: Arc<GroundSet>,
    // indexed by menu bits; entry 0 unused
    choices: Vec<u8>,
}

impl ChoiceFunction {
    /// Builds a choice function by evaluating `rule` on every menu.
    ///
    /// Fails with [`Error::ChoiceOutsideMenu`] if the rule picks a
    /// non-member.
    pub fn from_fn<F>(ground: Arc<GroundSet>, mut rule: F) -> Result<ChoiceFunction>
    where
        F: FnMut(Menu) -> usize,
    {
        let n = ground.len();
        let mut choices = vec![u8::MAX; 1usize << n];
        for menu in all_menus(n) {
            let x = rule(menu);
            if x >= n || !menu.contains(x) {
                return Err(Error::ChoiceOutsideMenu {
                    menu: ground.menu_key(menu),
                    choice: if x < n {
                        ground.name(x).to_string()
                    } else {
                        format!("#{x}")
                    },
                });
            }
            choices[menu.bits() as usize] = x as u8;
        }
        Ok(ChoiceFunction { ground, choices })
    }

    /// Unchecked constructor for generators whose rule is correct by
    /// construction. Membership is still asserted in debug builds.
    pub(crate) fn from_fn_unchecked<F>(ground: Arc<GroundSet>, mut rule: F) -> ChoiceFunction
    where
        F: FnMut(Menu) -> usize,
    {
        let n = ground.len();
        let mut choices = vec![u8::MAX; 1usize << n];
        for menu in all_menus(n) {
            let x = rule(menu);
            debug_assert!(menu.contains(x));
            choices[menu.bits() as usize] = x as u8;
        }
        ChoiceFunction { ground, choices }
    }

    pub(crate) fn from_raw(ground: Arc<GroundSet>, choices: Vec<u8>) -> ChoiceFunction {
        debug_assert_eq!(choices.len(), 1usize << ground.len());
        ChoiceFunction { ground, choices }
    }

    /// Maximization of a linear order: `c(A) = max(A, order)`.
    pub fn from_order(ground: Arc<GroundSet>, order: &LinearOrder) -> ChoiceFunction {
        assert_eq!(order.len(), ground.len(), "order must cover the ground set");
        ChoiceFunction::from_fn_unchecked(ground, |m| order.max_of(m))
    }

    #[inline]
    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.ground.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn choice(&self, menu: Menu) -> usize {
        debug_assert!(!menu.is_empty());
        self.choices[menu.bits() as usize] as usize
    }

    #[inline]
    pub fn pair(&self, x: usize, y: usize) -> usize {
        self.choice(Menu::pair(x, y))
    }

    #[inline]
    pub fn triple(&self, x: usize, y: usize, z: usize) -> usize {
        self.choice(Menu::triple(x, y, z))
    }

    /// `x = c{x, y}` for distinct `x`, `y`.
    #[inline]
    pub fn beats(&self, x: usize, y: usize) -> bool {
        x != y && self.pair(x, y) == x
    }

    /// Choice by option names; panics on unknown names.
    pub fn choice_named(&self, names: &[&str]) -> &str {
        let menu = self.ground.menu_of(names).expect("known option names");
        self.ground.name(self.choice(menu))
    }

    /// `(menu, chosen)` for every menu in ascending bit order.
    pub fn iter(&self) -> impl Iterator<Item = (Menu, usize)> + '_ {
        all_menus(self.len()).map(move |m| (m, self.choice(m)))
    }

    pub fn raw_choices(&self) -> &[u8] {
        &self.choices
    }
}

impl PartialEq for ChoiceFunction {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ground, &other.ground) || self.ground == other.ground)
            && self.choices == other.choices
    }
}

impl Eq for ChoiceFunction {}

impl std::hash::Hash for ChoiceFunction {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.choices.hash(state);
    }
}

impl fmt::Debug for ChoiceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (menu, x) in self.iter().filter(|(m, _)| m.len() > 1) {
            m.entry(&self.ground.menu_key(menu), &self.ground.name(x));
        }
        m.finish()
    }
}

/// `c(A) = max(A, order)` for every menu.
pub fn choice_from_order(ground: Arc<GroundSet>, order: &LinearOrder) -> ChoiceFunction {
    ChoiceFunction::from_order(ground, order)
}

/// Every nonempty menu of `ground`, ascending bit pattern.
pub fn enumerate_menus(ground: &GroundSet) -> Vec<Menu> {
    ground.menus().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Arc<GroundSet> {
        Arc::new(GroundSet::new(["x", "y", "z"]).unwrap())
    }

    #[test]
    fn menu_counts() {
        assert_eq!(enumerate_menus(&xyz()).len(), 7);
        assert_eq!(enumerate_menus(&GroundSet::numbered(4).unwrap()).len(), 15);
    }

    #[test]
    fn two_option_menus_in_bit_order() {
        let g = GroundSet::new(["x", "y"]).unwrap();
        let keys: Vec<String> = enumerate_menus(&g).into_iter().map(|m| g.menu_key(m)).collect();
        assert_eq!(keys, ["x", "y", "x,y"]);
    }

    #[test]
    fn ground_set_validation() {
        assert!(matches!(GroundSet::new(["x"]), Err(Error::InvalidGroundSet(_))));
        assert!(matches!(GroundSet::new(["x", "x"]), Err(Error::InvalidGroundSet(_))));
        assert!(matches!(GroundSet::new(["x", "a,b"]), Err(Error::InvalidGroundSet(_))));
        assert!(matches!(GroundSet::new(["x", ""]), Err(Error::InvalidGroundSet(_))));
        assert!(matches!(
            GroundSet::numbered(25),
            Err(Error::GroundSetTooLarge { size: 25, cap: 24 })
        ));
        assert!(GroundSet::numbered(8).is_ok());
    }

    #[test]
    fn order_maximization() {
        let g = xyz();
        let order = LinearOrder::identity(3);
        let cf = choice_from_order(g.clone(), &order);
        assert_eq!(cf.choice_named(&["x", "y", "z"]), "x");
        assert_eq!(cf.choice_named(&["y", "z"]), "y");
        for x in 0..3 {
            assert_eq!(cf.choice(Menu::singleton(x)), x);
        }
    }

    #[test]
    fn rejects_choice_outside_menu() {
        let err = ChoiceFunction::from_fn(xyz(), |m| if m.len() == 2 { 2 } else { m.first().unwrap() });
        assert!(matches!(err, Err(Error::ChoiceOutsideMenu { .. })));
    }

    #[test]
    fn menu_keys_round_trip() {
        let g = xyz();
        let m = g.parse_menu_key("z,x").unwrap();
        assert_eq!(g.menu_key(m), "x,z");
        assert!(matches!(g.parse_menu_key("x,,y"), Err(Error::MalformedKey(_))));
        assert!(matches!(g.parse_menu_key("x,x"), Err(Error::MalformedKey(_))));
        assert!(matches!(g.parse_menu_key("w"), Err(Error::UnknownOption(_))));
    }

    #[test]
    fn interval_is_inclusive() {
        let order = LinearOrder::new(vec![3, 1, 0, 2]).unwrap();
        let all = Menu::full(4);
        assert_eq!(order.interval(all, 0, 1), Menu::from_indices([0, 1]));
        assert_eq!(order.interval(all, 2, 3), all);
        assert_eq!(order.interval(all, 1, 1), Menu::singleton(1));
    }

    #[test]
    fn partition_canonical_order() {
        let p = TypePartition::new(4, vec![Menu::from_indices([3, 1]), Menu::from_indices([0, 2])])
            .unwrap();
        assert_eq!(p.blocks()[0], Menu::from_indices([0, 2]));
        assert!(p.same_block(1, 3));
        assert!(TypePartition::new(3, vec![Menu::singleton(0)]).is_err());
        assert!(TypePartition::singletons(3).refines(&TypePartition::single_block(3)));
    }
}
