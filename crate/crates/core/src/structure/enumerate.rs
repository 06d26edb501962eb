use std::sync::Arc;

use itertools::Itertools;

use crate::choice::{GroundSet, LinearOrder, TypePartition, MAX_ENUMERATION_OPTIONS};
use crate::error::{Error, Result};

use super::RSStructure;

/// Every partition of `n` options, via restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<TypePartition> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn go(i: usize, max: usize, labels: &mut [usize], out: &mut Vec<TypePartition>) {
        if i == labels.len() {
            out.push(TypePartition::from_labels(labels));
            return;
        }
        for l in 0..=max + 1 {
            labels[i] = l;
            go(i + 1, max.max(l), labels, out);
        }
    }
    if n > 0 {
        go(1, 0, &mut labels, &mut out);
    }
    out
}

/// Every linear order on `n` options.
pub fn all_orders(n: usize) -> Vec<LinearOrder> {
    (0..n)
        .permutations(n)
        .map(|p| LinearOrder::new(p).expect("permutation"))
        .collect()
}

/// Every RS-structure on a ground set of at most four options.
pub fn all_structures(ground: &Arc<GroundSet>) -> Result<Vec<RSStructure>> {
    let n = ground.len();
    if n > MAX_ENUMERATION_OPTIONS {
        return Err(Error::GroundSetTooLarge {
            size: n,
            cap: MAX_ENUMERATION_OPTIONS,
        });
    }
    let orders = all_orders(n);
    let mut out = Vec::new();
    for types in set_partitions(n) {
        for w in &orders {
            for r in &orders {
                out.push(RSStructure::new(ground.clone(), types.clone(), w.clone(), r.clone())?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=5).map(|n| set_partitions(n).len()).collect();
        assert_eq!(counts, [1, 2, 5, 15, 52]);
    }

    #[test]
    fn structure_count() {
        let g = Arc::new(GroundSet::numbered(3).unwrap());
        assert_eq!(all_structures(&g).unwrap().len(), 5 * 6 * 6);
        let g = Arc::new(GroundSet::numbered(5).unwrap());
        assert!(all_structures(&g).is_err());
    }
}
