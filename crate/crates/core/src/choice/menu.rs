use std::fmt;

/// A nonempty subset of the ground set, bit `i` standing for the option at
/// ground-set position `i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Menu(u32);

impl Menu {
    pub const EMPTY: Menu = Menu(0);

    #[inline]
    pub const fn from_bits(bits: u32) -> Menu {
        Menu(bits)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn singleton(x: usize) -> Menu {
        Menu(1 << x)
    }

    #[inline]
    pub const fn pair(x: usize, y: usize) -> Menu {
        Menu((1 << x) | (1 << y))
    }

    #[inline]
    pub const fn triple(x: usize, y: usize, z: usize) -> Menu {
        Menu((1 << x) | (1 << y) | (1 << z))
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Menu {
        Menu(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    /// Menu holding every option of a ground set of size `n`.
    #[inline]
    pub const fn full(n: usize) -> Menu {
        Menu(((1u64 << n) - 1) as u32)
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn contains(self, x: usize) -> bool {
        self.0 & (1 << x) != 0
    }

    #[inline]
    pub const fn union(self, other: Menu) -> Menu {
        Menu(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Menu) -> Menu {
        Menu(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Menu) -> Menu {
        Menu(self.0 & !other.0)
    }

    #[inline]
    pub const fn with(self, x: usize) -> Menu {
        Menu(self.0 | (1 << x))
    }

    #[inline]
    pub const fn without(self, x: usize) -> Menu {
        Menu(self.0 & !(1 << x))
    }

    #[inline]
    pub const fn is_subset_of(self, other: Menu) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_disjoint(self, other: Menu) -> bool {
        self.0 & other.0 == 0
    }

    /// Lowest-index member.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending ground-set position.
    pub fn iter(self) -> MenuIter {
        MenuIter(self.0)
    }

    /// Nonempty subsets of this menu, ascending by bit pattern.
    pub fn submenus(self) -> impl Iterator<Item = Menu> {
        let full = self.0;
        let mut sub: u32 = 0;
        std::iter::from_fn(move || {
            // next submask in increasing order: ((sub | !full) + 1) & full
            sub = (sub | !full).wrapping_add(1) & full;
            (sub != 0).then_some(Menu(sub))
        })
    }
}

impl fmt::Debug for Menu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for Menu {
    type Item = usize;
    type IntoIter = MenuIter;

    fn into_iter(self) -> MenuIter {
        self.iter()
    }
}

impl FromIterator<usize> for Menu {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Menu::from_indices(iter)
    }
}

#[derive(Clone, Debug)]
pub struct MenuIter(u32);

impl Iterator for MenuIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for MenuIter {}

/// All nonempty menus over `n` options, ascending bit pattern.
pub fn all_menus(n: usize) -> impl Iterator<Item = Menu> + Clone {
    (1..=Menu::full(n).bits()).map(Menu::from_bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submenus_cover_powerset() {
        let m = Menu::from_indices([0, 2, 3]);
        let subs: Vec<Menu> = m.submenus().collect();
        assert_eq!(subs.len(), 7);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert!(subs.iter().all(|s| s.is_subset_of(m)));
    }

    #[test]
    fn iteration_is_ascending() {
        let m = Menu::from_indices([5, 1, 3]);
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![1, 3, 5]);
        assert_eq!(m.len(), 3);
        assert_eq!(m.first(), Some(1));
    }

    #[test]
    fn full_menu_at_cap() {
        assert_eq!(Menu::full(24).len(), 24);
        assert_eq!(all_menus(3).count(), 7);
    }
}
