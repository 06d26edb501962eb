use std::ops::Range;
use std::sync::Arc;

use super::{all_menus, ChoiceFunction, GroundSet, Menu, MAX_ENUMERATION_OPTIONS};
use crate::error::{Error, Result};

/// The set of all total choice functions on a small ground set, indexed by a
/// mixed-radix number whose least significant digit is the lowest
/// non-singleton menu.
///
/// Index ranges are independent, so parallel consumers can split `0..len()`.
#[derive(Clone, Debug)]
pub struct ChoiceFunctionSpace {
    ground: Arc<GroundSet>,
    digits: Vec<(Menu, Vec<u8>)>,
    len: u64,
}

impl ChoiceFunctionSpace {
    pub fn new(ground: Arc<GroundSet>) -> Result<ChoiceFunctionSpace> {
        if ground.len() > MAX_ENUMERATION_OPTIONS {
            return Err(Error::GroundSetTooLarge {
                size: ground.len(),
                cap: MAX_ENUMERATION_OPTIONS,
            });
        }
        let digits: Vec<(Menu, Vec<u8>)> = all_menus(ground.len())
            .filter(|m| m.len() > 1)
            .map(|m| (m, m.iter().map(|x| x as u8).collect()))
            .collect();
        let len = digits.iter().map(|(m, _)| m.len() as u64).product();
        Ok(ChoiceFunctionSpace { ground, digits, len })
    }

    /// Number of choice functions: the product of menu sizes.
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn get(&self, index: u64) -> Option<ChoiceFunction> {
        if index >= self.len {
            return None;
        }
        let mut choices = self.base_choices();
        let mut rest = index;
        for (menu, members) in &self.digits {
            let radix = members.len() as u64;
            choices[menu.bits() as usize] = members[(rest % radix) as usize];
            rest /= radix;
        }
        Some(ChoiceFunction::from_raw(self.ground.clone(), choices))
    }

    pub fn iter(&self) -> ChoiceFunctions<'_> {
        self.range(0..self.len)
    }

    pub fn range(&self, range: Range<u64>) -> ChoiceFunctions<'_> {
        let end = range.end.min(self.len);
        let start = range.start.min(end);
        let mut counter = vec![0usize; self.digits.len()];
        let mut rest = start;
        for (k, (_, members)) in self.digits.iter().enumerate() {
            counter[k] = (rest % members.len() as u64) as usize;
            rest /= members.len() as u64;
        }
        ChoiceFunctions {
            space: self,
            counter,
            next: start,
            end,
        }
    }

    fn base_choices(&self) -> Vec<u8> {
        let n = self.ground.len();
        let mut choices = vec![u8::MAX; 1 << n];
        for x in 0..n {
            choices[1 << x] = x as u8;
        }
        choices
    }
}

/// Stream over a [`ChoiceFunctionSpace`] index range.
pub struct ChoiceFunctions<'a> {
    space: &'a ChoiceFunctionSpace,
    counter: Vec<usize>,
    next: u64,
    end: u64,
}

impl Iterator for ChoiceFunctions<'_> {
    type Item = ChoiceFunction;

    fn next(&mut self) -> Option<ChoiceFunction> {
        if self.next >= self.end {
            return None;
        }
        let mut choices = self.space.base_choices();
        for (k, (menu, members)) in self.space.digits.iter().enumerate() {
            choices[menu.bits() as usize] = members[self.counter[k]];
        }
        // increment the mixed-radix counter
        for (k, (_, members)) in self.space.digits.iter().enumerate() {
            self.counter[k] += 1;
            if self.counter[k] < members.len() {
                break;
            }
            self.counter[k] = 0;
        }
        self.next += 1;
        Some(ChoiceFunction::from_raw(self.space.ground.clone(), choices))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

/// All total choice functions on `ground` (at most 4 options), collected.
pub fn enumerate_choice_functions(ground: Arc<GroundSet>) -> Result<Vec<ChoiceFunction>> {
    let space = ChoiceFunctionSpace::new(ground)?;
    Ok(space.iter().collect())
}
