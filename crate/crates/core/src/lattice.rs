//! Filter lattices `F(P)` under anti-inclusion.
//!
//! Index 0 is always the bottom (the full filter `P`) and the last index the
//! top (the empty filter). An element `a` lies below `b` exactly when
//! `filter(a) ⊇ filter(b)`; meet is union and join is intersection.

use std::collections::HashMap;

use crate::bits::{bit, ones};
use crate::error::{Error, Result};
use crate::iso::{self, Relation};
use crate::poset::{FilterSet, Poset, DEFAULT_FILTER_CAP};

/// A convex sublattice `[bottom, top]`, by element index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntervalRef {
    pub bottom: usize,
    pub top: usize,
}

impl IntervalRef {
    pub fn new(bottom: usize, top: usize) -> Self {
        IntervalRef { bottom, top }
    }

    pub fn point(a: usize) -> Self {
        IntervalRef { bottom: a, top: a }
    }
}

#[derive(Clone, Debug)]
pub struct DistLattice {
    base: Poset,
    elems: Vec<FilterSet>,
    index: HashMap<u64, usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    height: Vec<usize>,
}

impl DistLattice {
    pub fn new(base: Poset) -> Result<DistLattice> {
        DistLattice::with_cap(base, DEFAULT_FILTER_CAP)
    }

    pub fn with_cap(base: Poset, cap: usize) -> Result<DistLattice> {
        let mut elems = base.filters_capped(cap)?;
        // largest filter first: index 0 is the bottom element
        elems.sort_unstable_by_key(|f| (std::cmp::Reverse(f.len()), f.0));
        let index: HashMap<u64, usize> =
            elems.iter().enumerate().map(|(i, f)| (f.0, i)).collect();
        let n = base.len();
        let mut up = Vec::with_capacity(elems.len());
        let mut down = Vec::with_capacity(elems.len());
        for f in &elems {
            let mut u: Vec<usize> = ones(base.minimal(f.0))
                .map(|y| index[&(f.0 & !bit(y))])
                .collect();
            let mut d: Vec<usize> = ones(base.maximal(base.all() & !f.0))
                .map(|z| index[&(f.0 | bit(z))])
                .collect();
            u.sort_unstable();
            d.sort_unstable();
            up.push(u);
            down.push(d);
        }
        let height = elems.iter().map(|f| n - f.len()).collect();
        let lattice = DistLattice {
            base,
            elems,
            index,
            up,
            down,
            height,
        };
        debug_assert_eq!(lattice.height, lattice.longest_path_heights());
        Ok(lattice)
    }

    pub fn base(&self) -> &Poset {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// Never true: `F(∅)` already has one element.
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[FilterSet] {
        &self.elems
    }

    pub fn filter(&self, a: usize) -> FilterSet {
        self.elems[a]
    }

    pub fn index_of(&self, f: FilterSet) -> Option<usize> {
        self.index.get(&f.0).copied()
    }

    /// Looks up an element by its filter bitstring over the base declaration order.
    pub fn index_of_bitstring(&self, s: &str) -> Result<usize> {
        crate::bits::parse_bitstring(s, self.base.len())
            .and_then(|w| self.index.get(&w).copied())
            .ok_or_else(|| Error::UnknownFilter(s.to_string()))
    }

    pub fn bitstring(&self, a: usize) -> String {
        self.base.bitstring(self.elems[a].0)
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elems.len() - 1
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.up[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.down[a]
    }

    pub fn height(&self, a: usize) -> usize {
        self.height[a]
    }

    pub fn heights(&self) -> &[usize] {
        &self.height
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        let (fa, fb) = (self.elems[a].0, self.elems[b].0);
        fb & !fa == 0
    }

    fn check_index(&self, a: usize) -> Result<()> {
        if a < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(a))
        }
    }

    pub fn meet(&self, a: usize, b: usize) -> Result<usize> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.index[&(self.elems[a].0 | self.elems[b].0)])
    }

    pub fn join(&self, a: usize, b: usize) -> Result<usize> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.index[&(self.elems[a].0 & self.elems[b].0)])
    }

    /// Every cover `a ≺ b` as `(a, b)`, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.up[a].iter().map(move |&b| (a, b)))
            .collect()
    }

    /// The undirected Hasse diagram: one edge `(min, max)` per cover, sorted.
    pub fn covering_graph(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    /// Heights recomputed as longest up-cover path from the bottom.
    pub fn longest_path_heights(&self) -> Vec<usize> {
        // canonical order lists filters by decreasing size, a linear extension
        let mut h = vec![0usize; self.len()];
        for a in 0..self.len() {
            for &b in &self.up[a] {
                h[b] = h[b].max(h[a] + 1);
            }
        }
        h
    }

    /// Elements with exactly one upper cover, as a poset ordered as in the lattice.
    /// Labels are the elements' filter bitstrings.
    pub fn meet_irreducibles(&self) -> Poset {
        let mi: Vec<usize> = (0..self.len()).filter(|&a| self.up[a].len() == 1).collect();
        let labels = mi.iter().map(|&a| self.bitstring(a)).collect();
        let above = mi
            .iter()
            .map(|&a| {
                mi.iter()
                    .enumerate()
                    .filter(|&(_, &b)| a != b && self.leq(a, b))
                    .fold(0u64, |acc, (j, _)| acc | bit(j))
            })
            .collect();
        Poset::from_above(labels, above)
    }

    fn check_interval(&self, k: IntervalRef) -> Result<()> {
        self.check_index(k.bottom)?;
        self.check_index(k.top)?;
        if self.leq(k.bottom, k.top) {
            Ok(())
        } else {
            Err(Error::InvalidInterval {
                bottom: k.bottom,
                top: k.top,
            })
        }
    }

    pub fn interval_elements(&self, k: IntervalRef) -> Result<Vec<usize>> {
        self.check_interval(k)?;
        Ok((0..self.len())
            .filter(|&x| self.leq(k.bottom, x) && self.leq(x, k.top))
            .collect())
    }

    /// Mask of `S = filter(bottom) ∖ filter(top)`.
    pub fn interval_mask(&self, k: IntervalRef) -> Result<u64> {
        self.check_interval(k)?;
        Ok(self.elems[k.bottom].0 & !self.elems[k.top].0)
    }

    /// The convex subposet `S = filter(bottom) ∖ filter(top)` of the base, with `[bottom, top] ≅ F(S)`.
    pub fn interval_subposet(&self, k: IntervalRef) -> Result<Poset> {
        Ok(self.base.induced(self.interval_mask(k)?))
    }

    /// `F(S)` for the interval's subposet: the interval as a lattice in its own right.
    pub fn interval_lattice(&self, k: IntervalRef) -> Result<DistLattice> {
        DistLattice::new(self.interval_subposet(k)?)
    }

    pub fn is_boolean_interval(&self, k: IntervalRef, rank: usize) -> Result<bool> {
        let s = self.interval_mask(k)?;
        Ok(s.count_ones() as usize == rank && self.base.is_antichain(s))
    }

    /// Isomorphism through the Birkhoff duals; valid because both sides are distributive.
    pub fn is_isomorphic(&self, other: &DistLattice) -> bool {
        self.len() == other.len()
            && self
                .meet_irreducibles()
                .is_isomorphic(&other.meet_irreducibles())
    }

    /// The lattice order itself as a relation on element indices (strict).
    pub fn order_relation(&self) -> Relation {
        let n = self.len();
        let mut r = Relation::new(n);
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) {
                    r.set(a, b);
                }
            }
        }
        r
    }

    /// Order isomorphism of the full lattices, without going through `Mi`.
    pub fn is_order_isomorphic(&self, other: &DistLattice) -> bool {
        iso::find_isomorphism(&self.order_relation(), &other.order_relation()).is_some()
    }
}

/// `F(P)` for `P`.
pub fn filter_lattice(p: &Poset) -> Result<DistLattice> {
    DistLattice::new(p.clone())
}

/// Whether `Mi(F(P)) ≅ P`.
pub fn birkhoff_roundtrip(p: &Poset) -> Result<bool> {
    Ok(filter_lattice(p)?.meet_irreducibles().is_isomorphic(p))
}
