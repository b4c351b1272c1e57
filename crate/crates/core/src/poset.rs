//! Finite posets over at most 64 elements.
//!
//! Elements are indices `0..n` in declaration order and every subset is a `u64`
//! mask. The strict order is stored twice, as an up-set mask and a down-set
//! mask per element, which keeps closure tests to a couple of word operations.

use std::collections::HashMap;
use std::fmt;

use crate::bits::{self, bit, canonical_key, full, ones};
use crate::error::{Error, Result};
use crate::iso::{self, Relation};

pub const MAX_ELEMENTS: usize = 64;
pub const DEFAULT_FILTER_CAP: usize = 1 << 20;

/// An upward-closed subset of a fixed poset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FilterSet(pub u64);

/// A subset of pairwise incomparable elements of a fixed poset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Antichain(pub u64);

macro_rules! subset_methods {
    ($t:ty) => {
        impl $t {
            #[inline]
            pub fn bits(self) -> u64 {
                self.0
            }

            #[inline]
            pub fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            #[inline]
            pub fn is_empty(self) -> bool {
                self.0 == 0
            }

            #[inline]
            pub fn contains(self, i: usize) -> bool {
                self.0 & bit(i) != 0
            }

            pub fn elements(self) -> impl Iterator<Item = usize> {
                ones(self.0)
            }
        }
    };
}

subset_methods!(FilterSet);
subset_methods!(Antichain);

#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    above: Vec<u64>,
    below: Vec<u64>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.labels)
            .field("covers", &covers)
            .finish()
    }
}

fn check_labels(labels: &[String]) -> Result<HashMap<&str, usize>> {
    if labels.len() > MAX_ELEMENTS {
        return Err(Error::TooManyElements {
            got: labels.len(),
            max: MAX_ELEMENTS,
        });
    }
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

impl Poset {
    pub fn empty() -> Poset {
        Poset {
            labels: Vec::new(),
            above: Vec::new(),
            below: Vec::new(),
        }
    }

    /// Builds a poset from labelled cover pairs `(lower, upper)`, taking their transitive closure.
    pub fn from_covers<S: AsRef<str>>(labels: &[S], covers: &[(S, S)]) -> Result<Poset> {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let index = check_labels(&labels)?;
        let lookup = |l: &S| {
            index
                .get(l.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))
        };
        let mut pairs = Vec::with_capacity(covers.len());
        for (lo, hi) in covers {
            pairs.push((lookup(lo)?, lookup(hi)?));
        }
        drop(index);
        Poset::from_relation(labels, &pairs)
    }

    /// Builds a poset from index pairs `(i, j)` meaning `i < j`, taking their transitive closure.
    pub fn from_relation(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset> {
        check_labels(&labels)?;
        let n = labels.len();
        let mut above = vec![0u64; n];
        for &(i, j) in pairs {
            if i >= n {
                return Err(Error::IndexOutOfRange(i));
            }
            if j >= n {
                return Err(Error::IndexOutOfRange(j));
            }
            above[i] |= bit(j);
        }
        for k in 0..n {
            for i in 0..n {
                if above[i] & bit(k) != 0 {
                    above[i] |= above[k];
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| above[i] & bit(i) != 0) {
            return Err(Error::CycleDetected(labels[i].clone()));
        }
        Ok(Poset::from_above(labels, above))
    }

    /// `above` must already be a transitively closed, irreflexive relation.
    pub(crate) fn from_above(labels: Vec<String>, above: Vec<u64>) -> Poset {
        let n = labels.len();
        let mut below = vec![0u64; n];
        for (i, &up) in above.iter().enumerate() {
            for j in ones(up) {
                below[j] |= bit(i);
            }
        }
        Poset {
            labels,
            above,
            below,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Mask of every element.
    pub fn all(&self) -> u64 {
        full(self.len())
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.above[i] & bit(j) != 0
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le(i, j) || self.lt(j, i)
    }

    /// Elements strictly above `i`.
    #[inline]
    pub fn above(&self, i: usize) -> u64 {
        self.above[i]
    }

    /// Elements strictly below `i`.
    #[inline]
    pub fn below(&self, i: usize) -> u64 {
        self.below[i]
    }

    pub fn up_closure(&self, mask: u64) -> u64 {
        ones(mask).fold(mask, |acc, i| acc | self.above[i])
    }

    pub fn down_closure(&self, mask: u64) -> u64 {
        ones(mask).fold(mask, |acc, i| acc | self.below[i])
    }

    pub fn is_filter(&self, mask: u64) -> bool {
        ones(mask).all(|i| self.above[i] & !mask == 0)
    }

    pub fn is_ideal(&self, mask: u64) -> bool {
        ones(mask).all(|i| self.below[i] & !mask == 0)
    }

    pub fn is_antichain(&self, mask: u64) -> bool {
        ones(mask).all(|i| self.above[i] & mask == 0)
    }

    /// Minimal elements of `mask` in the induced order.
    pub fn minimal(&self, mask: u64) -> u64 {
        ones(mask)
            .filter(|&i| self.below[i] & mask == 0)
            .fold(0, |acc, i| acc | bit(i))
    }

    /// Maximal elements of `mask` in the induced order.
    pub fn maximal(&self, mask: u64) -> u64 {
        ones(mask)
            .filter(|&i| self.above[i] & mask == 0)
            .fold(0, |acc, i| acc | bit(i))
    }

    /// The cover relation as sorted `(lower, upper)` index pairs.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in ones(self.above[i]) {
                if self.above[i] & self.below[j] == 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// All strictly ordered pairs `(i, j)` with `i < j`.
    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| ones(self.above[i]).map(move |j| (i, j)))
            .collect()
    }

    pub fn comparable_pair_count(&self) -> usize {
        self.above.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Induced subposet on `mask`, keeping declaration order.
    pub fn induced(&self, mask: u64) -> Poset {
        let keep: Vec<usize> = ones(mask & self.all()).collect();
        let mut pos = [usize::MAX; MAX_ELEMENTS];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = new;
        }
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let above = keep
            .iter()
            .map(|&i| ones(self.above[i] & mask).fold(0, |acc, j| acc | bit(pos[j])))
            .collect();
        Poset::from_above(labels, above)
    }

    /// `P − x`: the induced subposet without `x`.
    pub fn minus(&self, x: &str) -> Result<Poset> {
        let i = self.index_of(x)?;
        Ok(self.induced(self.all() & !bit(i)))
    }

    /// `P ∗ x`: the induced subposet on the elements incomparable to `x`.
    pub fn star(&self, x: &str) -> Result<Poset> {
        let i = self.index_of(x)?;
        Ok(self.induced(self.incomparable_to(i)))
    }

    pub fn incomparable_to(&self, i: usize) -> u64 {
        self.all() & !(bit(i) | self.above[i] | self.below[i])
    }

    pub fn dual(&self) -> Poset {
        Poset {
            labels: self.labels.clone(),
            above: self.below.clone(),
            below: self.above.clone(),
        }
    }

    fn sum_labels(&self, other: &Poset) -> Vec<String> {
        let collide = self.labels.iter().any(|l| other.labels.contains(l));
        if collide {
            self.labels
                .iter()
                .map(|l| format!("L.{l}"))
                .chain(other.labels.iter().map(|l| format!("R.{l}")))
                .collect()
        } else {
            self.labels.iter().chain(&other.labels).cloned().collect()
        }
    }

    fn sum(&self, other: &Poset, stacked: bool) -> Result<Poset> {
        let labels = self.sum_labels(other);
        check_labels(&labels)?;
        let shift = self.len();
        let upper = full(other.len()) << shift;
        let mut above: Vec<u64> = self
            .above
            .iter()
            .map(|&w| if stacked { w | upper } else { w })
            .collect();
        above.extend(other.above.iter().map(|&w| w << shift));
        Ok(Poset::from_above(labels, above))
    }

    /// `P ∪̇ S`. Fails only when the result would exceed [`MAX_ELEMENTS`].
    pub fn disjoint_union(&self, other: &Poset) -> Result<Poset> {
        self.sum(other, false)
    }

    /// `P + S`: every element of `self` below every element of `other`.
    pub fn ordinal_sum(&self, other: &Poset) -> Result<Poset> {
        self.sum(other, true)
    }

    /// Every filter, in canonical order (popcount, then value), capped at [`DEFAULT_FILTER_CAP`].
    pub fn filters(&self) -> Result<Vec<FilterSet>> {
        self.filters_capped(DEFAULT_FILTER_CAP)
    }

    pub fn filters_capped(&self, cap: usize) -> Result<Vec<FilterSet>> {
        let mut out = Vec::new();
        self.collect_filters(0, 0, 0, cap, &mut out)?;
        out.sort_unstable_by_key(|f| canonical_key(f.0));
        Ok(out)
    }

    // Each undecided element branches into "in" (forcing its up-set in) or
    // "out" (forcing its down-set out); the two forced sets never collide, so
    // every leaf is a filter and no branch dies.
    fn collect_filters(
        &self,
        i: usize,
        inside: u64,
        outside: u64,
        cap: usize,
        out: &mut Vec<FilterSet>,
    ) -> Result<()> {
        if i == self.len() {
            if out.len() >= cap {
                return Err(Error::CapacityExceeded { cap });
            }
            out.push(FilterSet(inside));
            return Ok(());
        }
        let b = bit(i);
        if (inside | outside) & b != 0 {
            return self.collect_filters(i + 1, inside, outside, cap, out);
        }
        self.collect_filters(i + 1, inside, outside | b | self.below[i], cap, out)?;
        self.collect_filters(i + 1, inside | b | self.above[i], outside, cap, out)
    }

    /// All antichains of exactly `k` elements, sorted by mask value.
    pub fn antichains_of_size(&self, k: usize) -> Vec<Antichain> {
        let mut out = Vec::new();
        self.collect_antichains(self.all(), 0, k, &mut out);
        out.sort_unstable();
        out
    }

    fn collect_antichains(&self, candidates: u64, chosen: u64, k: usize, out: &mut Vec<Antichain>) {
        if k == 0 {
            out.push(Antichain(chosen));
            return;
        }
        if (candidates.count_ones() as usize) < k {
            return;
        }
        for i in ones(candidates) {
            // only later indices remain candidates, so each set is built once
            let later = candidates & !full(i + 1);
            let rest = later & !(self.above[i] | self.below[i]);
            self.collect_antichains(rest, chosen | bit(i), k - 1, out);
        }
    }

    /// Total number of antichains, the empty one included.
    pub fn antichain_count(&self) -> usize {
        (0..=self.len())
            .map(|k| self.antichains_of_size(k).len())
            .take_while(|&c| c > 0)
            .sum()
    }

    /// Size of a largest antichain.
    pub fn width(&self) -> usize {
        (1..=self.len())
            .take_while(|&k| !self.antichains_of_size(k).is_empty())
            .last()
            .unwrap_or(0)
    }

    pub fn order_relation(&self) -> Relation {
        Relation::from_pairs(self.len(), self.relation_pairs())
    }

    /// An order isomorphism `self → other` as `f[i]`, if one exists.
    pub fn isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        iso::find_isomorphism(&self.order_relation(), &other.order_relation())
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.isomorphism(other).is_some()
    }

    /// Renders a subset over this poset's declaration order.
    pub fn bitstring(&self, mask: u64) -> String {
        bits::bitstring(mask, self.len())
    }
}
