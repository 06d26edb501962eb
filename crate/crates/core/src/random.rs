//! Seeded random structures for property sweeps.
//!
//! Partitions: shuffle the options, then cut between neighbours with
//! probability 1/2. Orders: uniform permutations. Single-peaked
//! structures: a threshold per type, the lower interval folded outward
//! from a random peak, merged with the upper chain so that the upper
//! options stay ahead of the threshold, and the per-type chains randomly
//! interleaved.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::choice::{GroundSet, LinearOrder, Menu, TypePartition};
use crate::structure::RSStructure;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_order<R: Rng + ?Sized>(rng: &mut R, n: usize) -> LinearOrder {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    LinearOrder::new(p).expect("permutation")
}

pub fn random_partition<R: Rng + ?Sized>(rng: &mut R, n: usize) -> TypePartition {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    let mut labels = vec![0; n];
    let mut label = 0;
    for (i, &x) in p.iter().enumerate() {
        if i > 0 && rng.gen_bool(0.5) {
            label += 1;
        }
        labels[x] = label;
    }
    TypePartition::from_labels(&labels)
}

pub fn random_structure<R: Rng + ?Sized>(rng: &mut R, ground: &Arc<GroundSet>) -> RSStructure {
    let n = ground.len();
    let types = random_partition(rng, n);
    let welfare = random_order(rng, n);
    let reaction = random_order(rng, n);
    RSStructure::new(ground.clone(), types, welfare, reaction).expect("sizes agree")
}

/// Random merge of several chains, each keeping its internal order.
fn interleave<R: Rng + ?Sized>(rng: &mut R, chains: Vec<Vec<usize>>) -> Vec<usize> {
    let total: usize = chains.iter().map(Vec::len).sum();
    let mut cursors = vec![0; chains.len()];
    let mut out = Vec::with_capacity(total);
    for remaining in (1..=total).rev() {
        // pick a chain with probability proportional to what it has left
        let mut k = rng.gen_range(0..remaining);
        for (c, chain) in chains.iter().enumerate() {
            let left = chain.len() - cursors[c];
            if k < left {
                out.push(chain[cursors[c]]);
                cursors[c] += 1;
                break;
            }
            k -= left;
        }
    }
    out
}

/// `≿₂` on one type, best-first, single-peaked with threshold
/// `chain[threshold]`; `chain` is the type in `≿₁` order, best-first.
fn single_peaked_chain<R: Rng + ?Sized>(rng: &mut R, chain: &[usize], threshold: usize) -> Vec<usize> {
    let lower = &chain[threshold..];
    let peak = rng.gen_range(0..lower.len());
    // fold outward from the peak
    let (mut up, mut down) = (peak, peak);
    let mut fold = vec![lower[peak]];
    while fold.len() < lower.len() {
        let go_up = if up == 0 {
            false
        } else if down + 1 == lower.len() {
            true
        } else {
            rng.gen_bool(0.5)
        };
        if go_up {
            up -= 1;
            fold.push(lower[up]);
        } else {
            down += 1;
            fold.push(lower[down]);
        }
    }
    let at = fold.iter().position(|&x| x == chain[threshold]).expect("threshold in fold");
    let mut merged = interleave(rng, vec![chain[..threshold].to_vec(), fold[..at].to_vec()]);
    merged.extend_from_slice(&fold[at..]);
    merged
}

pub fn random_single_peaked_structure<R: Rng + ?Sized>(rng: &mut R, ground: &Arc<GroundSet>) -> RSStructure {
    let n = ground.len();
    let types = random_partition(rng, n);
    let welfare = random_order(rng, n);
    let chains: Vec<Vec<usize>> = types
        .blocks()
        .iter()
        .map(|&b| {
            let chain = welfare.sorted(b);
            let t = rng.gen_range(0..chain.len());
            single_peaked_chain(rng, &chain, t)
        })
        .collect();
    let reaction = LinearOrder::new(interleave(rng, chains)).expect("permutation");
    RSStructure::new(ground.clone(), types, welfare, reaction).expect("sizes agree")
}

/// A random nonempty menu.
pub fn random_menu<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Menu {
    Menu::from_bits(rng.gen_range(1..(1u32 << n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::certify_single_peaked;

    #[test]
    fn single_peaked_generator_certifies() {
        let mut rng = seeded(7);
        let g = Arc::new(GroundSet::numbered(6).unwrap());
        for _ in 0..500 {
            let s = random_single_peaked_structure(&mut rng, &g);
            assert!(certify_single_peaked(&s).verified, "{s:?}");
        }
    }

    #[test]
    fn same_seed_same_draws() {
        let g = Arc::new(GroundSet::numbered(5).unwrap());
        let a: Vec<_> = {
            let mut r = seeded(3);
            (0..20).map(|_| random_structure(&mut r, &g)).collect()
        };
        let mut r = seeded(3);
        let b: Vec<_> = (0..20).map(|_| random_structure(&mut r, &g)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn partitions_cover_every_shape() {
        let mut rng = seeded(11);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..2000 {
            seen.insert(random_partition(&mut rng, 4));
        }
        assert_eq!(seen.len(), 15);
    }
}
