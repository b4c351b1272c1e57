//! Interchangeable tests for "is this interval a cutting".
//!
//! Four characterizations are registered under the names `chains`, `union`,
//! `order` and `star`. They are equivalent on every distributive lattice, so
//! running all of them against the same interval doubles as a consistency check.

use std::collections::HashSet;

use crate::bits::{bit, full, ones};
use crate::error::{Error, Result};
use crate::lattice::{DistLattice, IntervalRef};
use crate::poset::Poset;

use super::{boundary, CuttingBoundary};

pub trait CuttingTest: Send + Sync {
    fn name(&self) -> &'static str;

    fn describe(&self) -> &'static str;

    fn is_cutting(&self, lattice: &DistLattice, k: IntervalRef) -> Result<bool>;
}

/// Every maximal chain of the lattice meets the interval.
///
/// A depth-first walk over upper covers from the bottom. A branch stops as
/// soon as it enters the interval (every completion then meets it); vertices
/// already shown to admit no avoiding completion are not revisited.
pub struct ChainsTest;

impl CuttingTest for ChainsTest {
    fn name(&self) -> &'static str {
        "chains"
    }

    fn describe(&self) -> &'static str {
        "every maximal chain meets the interval"
    }

    fn is_cutting(&self, lattice: &DistLattice, k: IntervalRef) -> Result<bool> {
        let members: HashSet<usize> = lattice.interval_elements(k)?.into_iter().collect();
        let mut dead = vec![false; lattice.len()];
        Ok(!avoiding_chain_from(lattice, lattice.bottom(), &members, &mut dead))
    }
}

fn avoiding_chain_from(
    lattice: &DistLattice,
    at: usize,
    members: &HashSet<usize>,
    dead: &mut [bool],
) -> bool {
    if members.contains(&at) || dead[at] {
        return false;
    }
    if at == lattice.top() {
        return true;
    }
    for &next in lattice.upper_covers(at) {
        if avoiding_chain_from(lattice, next, members, dead) {
            return true;
        }
    }
    dead[at] = true;
    false
}

/// All maximal chains of `lattice`, each listed bottom to top. Exponential; for small lattices.
pub fn maximal_chains(lattice: &DistLattice) -> Vec<Vec<usize>> {
    fn walk(l: &DistLattice, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let at = *path.last().unwrap();
        if at == l.top() {
            out.push(path.clone());
            return;
        }
        for &next in l.upper_covers(at) {
            path.push(next);
            walk(l, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    walk(lattice, &mut vec![lattice.bottom()], &mut out);
    out
}

/// `L = ↑0̂_K ∪ ↓1̂_K`.
pub struct UnionTest;

impl CuttingTest for UnionTest {
    fn name(&self) -> &'static str {
        "union"
    }

    fn describe(&self) -> &'static str {
        "every element lies above the bottom or below the top of the interval"
    }

    fn is_cutting(&self, lattice: &DistLattice, k: IntervalRef) -> Result<bool> {
        lattice.interval_mask(k)?;
        Ok((0..lattice.len()).all(|x| lattice.leq(k.bottom, x) || lattice.leq(x, k.top)))
    }
}

/// `z < y` for every `z ∈ S₀` and `y ∈ S₁`.
pub struct OrderTest;

impl CuttingTest for OrderTest {
    fn name(&self) -> &'static str {
        "order"
    }

    fn describe(&self) -> &'static str {
        "every element of S0 lies below every element of S1"
    }

    fn is_cutting(&self, lattice: &DistLattice, k: IntervalRef) -> Result<bool> {
        let b = boundary(lattice, k)?;
        let p = lattice.base();
        Ok(ones(b.below_mask).all(|z| b.above_mask & !p.above(z) == 0))
    }
}

/// Inserting `x_K` above `S₀` and below `S₁` leaves the order on `P` intact,
/// and the elements incomparable to `x_K` form exactly `S`.
pub struct StarTest;

impl CuttingTest for StarTest {
    fn name(&self) -> &'static str {
        "star"
    }

    fn describe(&self) -> &'static str {
        "S is the star of a new element placed between S0 and S1"
    }

    fn is_cutting(&self, lattice: &DistLattice, k: IntervalRef) -> Result<bool> {
        let b = boundary(lattice, k)?;
        let host = lattice.base();
        let n = host.len();
        if n >= crate::poset::MAX_ELEMENTS {
            return Err(Error::TooManyElements {
                got: n + 1,
                max: crate::poset::MAX_ELEMENTS,
            });
        }
        let candidate = closed_extension(host, &b);
        if (0..=n).any(|i| candidate[i] & bit(i) != 0) {
            return Ok(false);
        }
        if (0..n).any(|i| candidate[i] & full(n) != host.above(i)) {
            return Ok(false);
        }
        let mut labels = host.labels().to_vec();
        labels.push(super::fresh_label(host));
        let extended = Poset::from_above(labels, candidate);
        Ok(extended.induced(extended.incomparable_to(n)).is_isomorphic(&b.inner))
    }
}

/// The transitive closure of `P` plus `S₀ < x_K < S₁`, with `x_K` at index `|P|`.
pub(crate) fn closed_extension(host: &Poset, b: &CuttingBoundary) -> Vec<u64> {
    let n = host.len();
    let x = n;
    let mut above: Vec<u64> = (0..n).map(|i| host.above(i)).collect();
    for z in ones(b.below_mask) {
        above[z] |= bit(x);
    }
    above.push(b.above_mask);
    for k in 0..=n {
        for i in 0..=n {
            if above[i] & bit(k) != 0 {
                above[i] |= above[k];
            }
        }
    }
    above
}

/// Cutting tests selectable by name.
pub struct CuttingRegistry {
    tests: Vec<Box<dyn CuttingTest>>,
}

impl Default for CuttingRegistry {
    fn default() -> Self {
        let mut r = CuttingRegistry { tests: Vec::new() };
        r.register(Box::new(ChainsTest));
        r.register(Box::new(UnionTest));
        r.register(Box::new(OrderTest));
        r.register(Box::new(StarTest));
        r
    }
}

impl CuttingRegistry {
    pub fn empty() -> Self {
        CuttingRegistry { tests: Vec::new() }
    }

    /// Replaces any test registered under the same name.
    pub fn register(&mut self, test: Box<dyn CuttingTest>) {
        self.tests.retain(|t| t.name() != test.name());
        self.tests.push(test);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.tests.iter().map(|t| t.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn CuttingTest> {
        self.tests
            .iter()
            .find(|t| t.name() == name)
            .map(|t| t.as_ref())
            .ok_or_else(|| Error::UnknownMethod(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn CuttingTest> {
        self.tests.iter().map(|t| t.as_ref())
    }

    /// Runs every registered test, in registration order.
    pub fn evaluate(&self, lattice: &DistLattice, k: IntervalRef) -> Result<Vec<(&'static str, bool)>> {
        self.tests
            .iter()
            .map(|t| Ok((t.name(), t.is_cutting(lattice, k)?)))
            .collect()
    }
}

/// Cutting test by method name, using the standard registry.
pub fn is_cutting(lattice: &DistLattice, k: IntervalRef, method: &str) -> Result<bool> {
    CuttingRegistry::default().get(method)?.is_cutting(lattice, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::filter_lattice;

    fn z3() -> Poset {
        Poset::from_covers(&["a", "b", "c"], &[("b", "a"), ("b", "c")]).unwrap()
    }

    fn all_agree(l: &DistLattice, k: IntervalRef) -> bool {
        let results = CuttingRegistry::default().evaluate(l, k).unwrap();
        let first = results[0].1;
        assert!(results.iter().all(|r| r.1 == first), "{results:?}");
        first
    }

    #[test]
    fn registry_lookup() {
        let r = CuttingRegistry::default();
        assert_eq!(r.names(), ["chains", "union", "order", "star"]);
        assert!(r.get("order").is_ok());
        assert!(matches!(r.get("nope"), Err(Error::UnknownMethod(_))));
        let mut r = CuttingRegistry::empty();
        r.register(Box::new(UnionTest));
        r.register(Box::new(UnionTest));
        assert_eq!(r.names(), ["union"]);
    }

    #[test]
    fn z3_square_is_a_cutting() {
        let l = filter_lattice(&z3()).unwrap();
        let k = IntervalRef::new(l.index_of_bitstring("101").unwrap(), l.top());
        assert!(all_agree(&l, k));
        for chain in maximal_chains(&l) {
            assert!(chain.contains(&1));
        }
        assert_eq!(maximal_chains(&l).len(), 2);
    }

    #[test]
    fn atom_of_b2_is_not_a_cutting() {
        let p = Poset::from_relation(vec!["p".into(), "q".into()], &[]).unwrap();
        let l = filter_lattice(&p).unwrap();
        assert!(!all_agree(&l, IntervalRef::point(1)));
        assert!(!all_agree(&l, IntervalRef::point(2)));
        assert!(all_agree(&l, IntervalRef::new(l.bottom(), l.top())));
        assert!(all_agree(&l, IntervalRef::point(l.bottom())));
    }

    #[test]
    fn invalid_interval_is_reported_by_every_method() {
        let l = filter_lattice(&z3()).unwrap();
        let bad = IntervalRef::new(4, 0);
        for t in CuttingRegistry::default().iter() {
            assert!(matches!(t.is_cutting(&l, bad), Err(Error::InvalidInterval { .. })));
        }
    }

    #[test]
    fn chains_oracle_matches_enumeration() {
        let p = Poset::from_covers(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("b", "c"), ("b", "d")],
        )
        .unwrap();
        let l = filter_lattice(&p).unwrap();
        let chains = maximal_chains(&l);
        for a in 0..l.len() {
            for b in 0..l.len() {
                if !l.leq(a, b) {
                    continue;
                }
                let k = IntervalRef::new(a, b);
                let members = l.interval_elements(k).unwrap();
                let brute = chains.iter().all(|c| c.iter().any(|x| members.contains(x)));
                assert_eq!(ChainsTest.is_cutting(&l, k).unwrap(), brute);
            }
        }
    }
}
