//! Cuttings and the convex expansion `L ⊞ K`.
//!
//! For an interval `K = [0̂_K, 1̂_K]` of `L = F(P)`, the boundary data are
//! `S = 0̂_K ∖ 1̂_K`, `S₀ = Max(P ∖ 0̂_K)` and `S₁ = Min 1̂_K`. When `K` is a
//! cutting, adding one element `x_K` with `S₀ < x_K < S₁` (and `x_K ∥ S`)
//! produces `P_K` with `F(P_K) = L ⊞ K`: a copy of `L` plus a second copy of
//! `K` hanging below the first.

mod cutting;
mod sums;

pub use cutting::{
    is_cutting, maximal_chains, ChainsTest, CuttingRegistry, CuttingTest, OrderTest, StarTest,
    UnionTest,
};
pub use sums::{sum_laws, FiniteOrder, SumLawReport};

use crate::bits::{bit, full, ones};
use crate::error::{Error, Result};
use crate::lattice::{filter_lattice, DistLattice, IntervalRef};
use crate::poset::{Antichain, Poset, MAX_ELEMENTS};

#[derive(Clone, Debug)]
pub struct CuttingBoundary {
    /// `S` as an induced subposet of the host.
    pub inner: Poset,
    pub inner_mask: u64,
    /// `S₀ = Max(P ∖ 0̂_K)`.
    pub below: Antichain,
    pub below_mask: u64,
    /// `S₁ = Min 1̂_K`.
    pub above: Antichain,
    pub above_mask: u64,
}

impl CuttingBoundary {
    /// `P = ↓S₀ ∪̇ S ∪̇ ↑S₁`, and no element of `S₀` exceeds one of `S₁`.
    pub fn partition_holds(&self, host: &Poset) -> bool {
        let down = host.down_closure(self.below_mask);
        let up = host.up_closure(self.above_mask);
        let disjoint = down & up == 0 && down & self.inner_mask == 0 && up & self.inner_mask == 0;
        let covers = down | up | self.inner_mask == host.all();
        let no_inversion = ones(self.below_mask).all(|z| host.below(z) & self.above_mask == 0);
        disjoint && covers && no_inversion
    }
}

pub fn boundary(lattice: &DistLattice, k: IntervalRef) -> Result<CuttingBoundary> {
    let inner_mask = lattice.interval_mask(k)?;
    let host = lattice.base();
    let lower = lattice.filter(k.bottom).bits();
    let upper = lattice.filter(k.top).bits();
    let below_mask = host.maximal(host.all() & !lower);
    let above_mask = host.minimal(upper);
    let b = CuttingBoundary {
        inner: host.induced(inner_mask),
        inner_mask,
        below: Antichain(below_mask),
        below_mask,
        above: Antichain(above_mask),
        above_mask,
    };
    debug_assert!(b.partition_holds(host));
    Ok(b)
}

/// Smallest `x@k` (k ≥ 1) not already a label of `host`.
pub fn fresh_label(host: &Poset) -> String {
    (1..)
        .map(|k| format!("x@{k}"))
        .find(|l| host.index_of(l).is_err())
        .unwrap()
}

#[derive(Clone, Debug)]
pub struct ExpansionResult {
    /// `P_K`: the host with the new element appended last.
    pub poset: Poset,
    pub new_element: String,
    /// `F(P_K)`.
    pub lattice: DistLattice,
    /// `K` itself, located inside `F(P_K)`.
    pub original_interval: IntervalRef,
    /// `K' = {G ∪ {x_K} : G ∈ K}` inside `F(P_K)`.
    pub copy_interval: IntervalRef,
}

impl ExpansionResult {
    pub fn new_index(&self) -> usize {
        self.poset.len() - 1
    }
}

/// `P_K` for a cutting `K` of `lattice`. `label` defaults to [`fresh_label`].
pub fn expand_poset(
    lattice: &DistLattice,
    k: IntervalRef,
    label: Option<&str>,
) -> Result<ExpansionResult> {
    if !UnionTest.is_cutting(lattice, k)? {
        return Err(Error::NotACutting {
            bottom: k.bottom,
            top: k.top,
        });
    }
    let host = lattice.base();
    if host.len() >= MAX_ELEMENTS {
        return Err(Error::TooManyElements {
            got: host.len() + 1,
            max: MAX_ELEMENTS,
        });
    }
    let label = match label {
        Some(l) if host.index_of(l).is_ok() => return Err(Error::DuplicateLabel(l.to_string())),
        Some(l) => l.to_string(),
        None => fresh_label(host),
    };
    let b = boundary(lattice, k)?;
    let above = cutting::closed_extension(host, &b);
    let mut labels = host.labels().to_vec();
    labels.push(label.clone());
    let poset = Poset::from_above(labels, above);
    let x = bit(host.len());
    let lower = lattice.filter(k.bottom);
    let upper = lattice.filter(k.top);
    let expanded = filter_lattice(&poset)?;
    let locate = |mask: u64| {
        expanded
            .index_of(crate::poset::FilterSet(mask))
            .expect("interval endpoints survive the expansion")
    };
    Ok(ExpansionResult {
        original_interval: IntervalRef::new(locate(lower.bits()), locate(upper.bits())),
        copy_interval: IntervalRef::new(locate(lower.bits() | x), locate(upper.bits() | x)),
        poset,
        new_element: label,
        lattice: expanded,
    })
}

/// `L ⊞ K` as a lattice.
pub fn expand_lattice(lattice: &DistLattice, k: IntervalRef) -> Result<DistLattice> {
    Ok(expand_poset(lattice, k, None)?.lattice)
}

/// Drops bit `i` from `mask`, shifting higher bits down one place.
fn squeeze(mask: u64, i: usize) -> u64 {
    let low = mask & full(i);
    let high = if i + 1 >= 64 { 0 } else { mask >> (i + 1) };
    low | (high << i)
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub minus: Poset,
    pub star: Poset,
    pub size: usize,
    pub minus_size: usize,
    pub star_size: usize,
    /// The interval of `F(P − x)` that the expansion doubles.
    pub interval: IntervalRef,
    /// The interval is a cutting (by the order characterization).
    pub is_cutting: bool,
    /// The interval's subposet is isomorphic to `P ∗ x`.
    pub star_matches: bool,
    /// Re-expanding at the interval gives a poset isomorphic to `P` and an isomorphic lattice.
    pub expansion_matches: bool,
    /// When `P − x ≅ P ∗ x`: whether `F(P) ≅ F(P − x) □ 𝟐`.
    pub product_form: Option<bool>,
}

impl Decomposition {
    pub fn counts_hold(&self) -> bool {
        self.size == self.minus_size + self.star_size
    }

    pub fn holds(&self) -> bool {
        self.counts_hold()
            && self.is_cutting
            && self.star_matches
            && self.expansion_matches
            && self.product_form != Some(false)
    }
}

/// `F(P) ≅ F(P − x) ⊞ F(P ∗ x)`, with every part of the claim checked.
pub fn decompose(p: &Poset, x: &str) -> Result<Decomposition> {
    let i = p.index_of(x)?;
    let minus = p.minus(x)?;
    let star = p.star(x)?;
    let whole = filter_lattice(p)?;
    let reduced = filter_lattice(&minus)?;
    let star_size = filter_lattice(&star)?.len();

    let lower = squeeze(p.all() & !(p.below(i) | bit(i)), i);
    let upper = squeeze(p.above(i), i);
    let locate = |mask| {
        reduced
            .index_of(crate::poset::FilterSet(mask))
            .expect("complement of a down-set is a filter")
    };
    let interval = IntervalRef::new(locate(lower), locate(upper));
    let is_cutting = OrderTest.is_cutting(&reduced, interval)?;
    let star_matches = reduced.interval_subposet(interval)?.is_isomorphic(&star);
    let expansion_matches = if is_cutting {
        let e = expand_poset(&reduced, interval, Some(x))?;
        e.poset.is_isomorphic(p) && e.lattice.is_isomorphic(&whole)
    } else {
        false
    };
    let product_form = minus.is_isomorphic(&star).then(|| {
        FiniteOrder::of_lattice(&whole)
            .is_isomorphic(&FiniteOrder::of_lattice(&reduced).product(&FiniteOrder::chain(2)))
    });
    Ok(Decomposition {
        size: whole.len(),
        minus_size: reduced.len(),
        star_size,
        minus,
        star,
        interval,
        is_cutting,
        star_matches,
        expansion_matches,
        product_form,
    })
}

/// One element added during [`expand_chain`]: it lies above `lower` and below `upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Addition {
    pub label: String,
    pub lower: Vec<String>,
    pub upper: Vec<String>,
}

impl Addition {
    pub fn new(label: &str, lower: &[&str], upper: &[&str]) -> Self {
        Addition {
            label: label.to_string(),
            lower: lower.iter().map(|s| s.to_string()).collect(),
            upper: upper.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExpansionStep {
    pub label: String,
    pub size: usize,
    pub previous_size: usize,
    pub star_size: usize,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct ExpansionChain {
    pub poset: Poset,
    pub lattice: DistLattice,
    pub steps: Vec<ExpansionStep>,
}

impl ExpansionChain {
    pub fn holds(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.size).collect()
    }
}

/// Builds `P₀ ∪ {x₁, …, x_m}` one element at a time, checking at every step
/// that the new filter lattice is the expansion of the previous one by
/// `F((P₀ ∪ P_i) ∗ x_i)`. Starting from the empty poset this generates any
/// distributive lattice from `𝟏`.
pub fn expand_chain(p0: &Poset, additions: &[Addition]) -> Result<ExpansionChain> {
    let mut current = p0.clone();
    let mut steps = Vec::with_capacity(additions.len());
    for add in additions {
        let n = current.len();
        let mut labels = current.labels().to_vec();
        labels.push(add.label.clone());
        let mut pairs = current.relation_pairs();
        for l in &add.lower {
            pairs.push((current.index_of(l)?, n));
        }
        for u in &add.upper {
            pairs.push((n, current.index_of(u)?));
        }
        let next = Poset::from_relation(labels, &pairs)?;
        if next.induced(full(n)) != current {
            return Err(Error::OrderChanged(add.label.clone()));
        }
        let d = decompose(&next, &add.label)?;
        steps.push(ExpansionStep {
            label: add.label.clone(),
            size: d.size,
            previous_size: d.minus_size,
            star_size: d.star_size,
            holds: d.holds(),
        });
        current = next;
    }
    let lattice = filter_lattice(&current)?;
    Ok(ExpansionChain {
        poset: current,
        lattice,
        steps,
    })
}

/// The additions that rebuild `p` from the empty poset in declaration order.
pub fn additions_for(p: &Poset) -> Vec<Addition> {
    (0..p.len())
        .map(|j| Addition {
            label: p.label(j).to_string(),
            lower: ones(p.below(j) & full(j)).map(|i| p.label(i).to_string()).collect(),
            upper: ones(p.above(j) & full(j)).map(|i| p.label(i).to_string()).collect(),
        })
        .collect()
}

/// Elements `a ∉ {0̂, 1̂}` such that `[a, a]` is a cutting.
pub fn cut_elements(lattice: &DistLattice) -> Vec<usize> {
    (0..lattice.len())
        .filter(|&a| a != lattice.bottom() && a != lattice.top())
        .filter(|&a| {
            UnionTest
                .is_cutting(lattice, IntervalRef::point(a))
                .expect("point intervals are valid")
        })
        .collect()
}

/// Cut element test on the host poset: with `F` the element's filter, everything
/// outside `F` lies below everything inside it, and neither side is empty.
pub fn splits_as_ordinal_sum(lattice: &DistLattice, a: usize) -> bool {
    let p = lattice.base();
    let inside = lattice.filter(a).bits();
    let outside = p.all() & !inside;
    inside != 0 && outside != 0 && ones(outside).all(|z| inside & !p.above(z) == 0)
}

/// Whether `F(P)` holds cut elements `M₁ = M₂ ∪ {x}`.
pub fn has_cut_pair_through(p: &Poset, x: &str) -> Result<bool> {
    let i = p.index_of(x)?;
    let l = filter_lattice(p)?;
    let cuts = cut_elements(&l);
    Ok(cuts.iter().any(|&m1| {
        let f = l.filter(m1).bits();
        f & bit(i) != 0
            && l.index_of(crate::poset::FilterSet(f & !bit(i)))
                .is_some_and(|m2| cuts.contains(&m2))
    }))
}
