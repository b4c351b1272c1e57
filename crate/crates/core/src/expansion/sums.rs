//! Lattice-level sums, built directly on orders rather than through posets.

use crate::error::Result;
use crate::iso::{self, Relation};
use crate::lattice::{filter_lattice, DistLattice};
use crate::poset::Poset;

/// A finite order given by its strict relation on `0..n`.
#[derive(Clone, Debug)]
pub struct FiniteOrder {
    lt: Relation,
}

impl FiniteOrder {
    pub fn of_lattice(l: &DistLattice) -> FiniteOrder {
        FiniteOrder {
            lt: l.order_relation(),
        }
    }

    pub fn chain(n: usize) -> FiniteOrder {
        let mut lt = Relation::new(n);
        for i in 0..n {
            for j in i + 1..n {
                lt.set(i, j);
            }
        }
        FiniteOrder { lt }
    }

    pub fn len(&self) -> usize {
        self.lt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lt.is_empty()
    }

    fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.lt.get(i, j)
    }

    fn unique_extreme(&self, top: bool) -> Option<usize> {
        let n = self.len();
        let mut found = (0..n).filter(|&i| {
            (0..n).all(|j| if top { self.le(j, i) } else { self.le(i, j) })
        });
        found.next()
    }

    /// Componentwise order on pairs; element `(i, j)` is `i * |other| + j`.
    pub fn product(&self, other: &FiniteOrder) -> FiniteOrder {
        let (n, m) = (self.len(), other.len());
        let mut lt = Relation::new(n * m);
        for i in 0..n {
            for j in 0..m {
                for i2 in 0..n {
                    for j2 in 0..m {
                        if (i, j) != (i2, j2) && self.le(i, i2) && other.le(j, j2) {
                            lt.set(i * m + j, i2 * m + j2);
                        }
                    }
                }
            }
        }
        FiniteOrder { lt }
    }

    /// `self` entirely below `other`.
    pub fn ordinal_sum(&self, other: &FiniteOrder) -> FiniteOrder {
        let (n, m) = (self.len(), other.len());
        let mut lt = Relation::new(n + m);
        for i in 0..n {
            for j in self.lt.successors(i) {
                lt.set(i, j);
            }
            for j in 0..m {
                lt.set(i, n + j);
            }
        }
        for i in 0..m {
            for j in other.lt.successors(i) {
                lt.set(n + i, n + j);
            }
        }
        FiniteOrder { lt }
    }

    /// `self ∔ other`: the top of `self` identified with the bottom of `other`.
    /// `None` when `self` has no top or `other` no bottom.
    pub fn vertical_sum(&self, other: &FiniteOrder) -> Option<FiniteOrder> {
        let top = self.unique_extreme(true)?;
        let bottom = other.unique_extreme(false)?;
        let n = self.len();
        // other's elements except its bottom go to n.., bottom maps to `top`
        let place = |j: usize| -> usize {
            if j == bottom {
                top
            } else if j < bottom {
                n + j
            } else {
                n + j - 1
            }
        };
        let mut lt = Relation::new(n + other.len() - 1);
        for i in 0..n {
            for j in self.lt.successors(i) {
                lt.set(i, j);
            }
            for j in 0..other.len() {
                if j != bottom {
                    lt.set(i, place(j));
                }
            }
        }
        for i in 0..other.len() {
            for j in other.lt.successors(i) {
                lt.set(place(i), place(j));
            }
        }
        Some(FiniteOrder { lt })
    }

    pub fn is_isomorphic(&self, other: &FiniteOrder) -> bool {
        iso::find_isomorphism(&self.lt, &other.lt).is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumLawReport {
    /// `F(P ∪̇ S) ≅ F(P) □ F(S)`.
    pub product: bool,
    pub product_size: (usize, usize),
    /// `F(P + S) ≅ F(P) ∔ F(S)`.
    pub vertical: bool,
    pub vertical_size: (usize, usize),
    /// `F(P + 𝟏) ≅ F(P) + 𝟏`.
    pub top_one: bool,
    /// `F(𝟏 + P) ≅ 𝟏 + F(P)`.
    pub bottom_one: bool,
}

impl SumLawReport {
    pub fn all_hold(&self) -> bool {
        self.product
            && self.vertical
            && self.top_one
            && self.bottom_one
            && self.product_size.0 == self.product_size.1
            && self.vertical_size.0 == self.vertical_size.1
    }
}

pub fn sum_laws(p: &Poset, s: &Poset) -> Result<SumLawReport> {
    let fp = FiniteOrder::of_lattice(&filter_lattice(p)?);
    let fs = FiniteOrder::of_lattice(&filter_lattice(s)?);

    let union = FiniteOrder::of_lattice(&filter_lattice(&p.disjoint_union(s)?)?);
    let product = fp.product(&fs);

    let stacked = FiniteOrder::of_lattice(&filter_lattice(&p.ordinal_sum(s)?)?);
    let glued = fp
        .vertical_sum(&fs)
        .expect("filter lattices are bounded");

    let one = Poset::from_relation(vec!["⊤".to_string()], &[])?;
    let with_top = FiniteOrder::of_lattice(&filter_lattice(&p.ordinal_sum(&one)?)?);
    let with_bottom = FiniteOrder::of_lattice(&filter_lattice(&one.ordinal_sum(p)?)?);
    let single = FiniteOrder::chain(1);

    Ok(SumLawReport {
        product: union.is_isomorphic(&product),
        product_size: (union.len(), fp.len() * fs.len()),
        vertical: stacked.is_isomorphic(&glued),
        vertical_size: (stacked.len(), fp.len() + fs.len() - 1),
        top_one: with_top.is_isomorphic(&fp.ordinal_sum(&single)),
        bottom_one: with_bottom.is_isomorphic(&single.ordinal_sum(&fp)),
    })
}
