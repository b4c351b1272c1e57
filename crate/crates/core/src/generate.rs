//! Seeded random posets and exhaustive enumeration of small ones.
//!
//! The random generator picks `n` uniformly in `1..=n_max`, then an edge
//! percentage `p` uniformly in `0..=100`, then adds `i < j` (for `i < j`) with
//! probability `p/100` and closes transitively. All draws come from a ChaCha8
//! stream seeded with `seed_from_u64(seed)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{bit, ones};
use crate::poset::Poset;

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

pub fn random_poset(seed: u64, n_max: usize) -> Poset {
    random_poset_from(&mut ChaCha8Rng::seed_from_u64(seed), n_max)
}

pub fn random_poset_from<R: Rng>(rng: &mut R, n_max: usize) -> Poset {
    if n_max == 0 {
        return Poset::empty();
    }
    let n = rng.gen_range(1..=n_max);
    let percent = rng.gen_range(0..=100u32);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_range(0..100u32) < percent {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_relation(labels(n), &pairs).expect("pairs follow index order")
}

/// Every poset on the labels `p0..p{n-1}`, each exactly once.
///
/// A poset on `n + 1` points is a poset on `n` points plus the last point,
/// which sits above a down-set `D` and below an up-set `U` with `D < U`
/// entirely. Distinct `(D, U)` give distinct extensions.
pub fn labeled_posets(n: usize) -> Vec<Poset> {
    let mut level: Vec<Vec<u64>> = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for above in &level {
            let p = Poset::from_above(labels(k), above.clone());
            let ideals: Vec<u64> = p
                .filters()
                .expect("small")
                .into_iter()
                .map(|f| p.all() & !f.bits())
                .collect();
            let filters: Vec<u64> = p.filters().expect("small").into_iter().map(|f| f.bits()).collect();
            for &d in &ideals {
                for &u in &filters {
                    if d & u != 0 || ones(d).any(|z| u & !p.above(z) != 0) {
                        continue;
                    }
                    let mut ext = above.clone();
                    for z in ones(d) {
                        ext[z] |= bit(k);
                    }
                    ext.push(u);
                    next.push(ext);
                }
            }
        }
        level = next;
    }
    level
        .into_iter()
        .map(|above| Poset::from_above(labels(n), above))
        .collect()
}

/// One representative per isomorphism class among posets on `n` points.
pub fn unlabeled_posets(n: usize) -> Vec<Poset> {
    let mut reps: Vec<(Vec<(u32, u32)>, Poset)> = Vec::new();
    for p in labeled_posets(n) {
        let key = degree_profile(&p);
        if !reps.iter().any(|(k, q)| *k == key && q.is_isomorphic(&p)) {
            reps.push((key, p));
        }
    }
    reps.into_iter().map(|(_, p)| p).collect()
}

fn degree_profile(p: &Poset) -> Vec<(u32, u32)> {
    let mut v: Vec<(u32, u32)> = (0..p.len())
        .map(|i| (p.above(i).count_ones(), p.below(i).count_ones()))
        .collect();
    v.sort_unstable();
    v
}
