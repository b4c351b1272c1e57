//! Fences, crowns and the cube graphs their filter lattices realize.

use crate::error::{Error, Result};
use crate::expansion::decompose;
use crate::invariants::{q_by_intervals, IntPolynomial};
use crate::iso::{self, Relation};
use crate::lattice::{filter_lattice, DistLattice};
use crate::poset::Poset;

/// Largest graph accepted by [`graph_isomorphic`].
pub const MAX_GRAPH_VERTICES: usize = 400;

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// The zigzag on `1..=n`: every even element lies below its neighbours.
pub fn fence(n: usize) -> Poset {
    let mut pairs = Vec::new();
    for i in (2..=n).step_by(2) {
        pairs.push((i - 1, i - 2));
        if i < n {
            pairs.push((i - 1, i));
        }
    }
    Poset::from_relation(numbered(n), &pairs).expect("a fence is acyclic")
}

/// Fence with a signed index; every negative index is the empty poset.
pub fn fence_signed(n: i64) -> Poset {
    fence(usize::try_from(n).unwrap_or(0))
}

/// The cyclic zigzag on `1..=two_n`, with `two_n` also below `1`.
pub fn crown(two_n: usize) -> Result<Poset> {
    if two_n % 2 == 1 {
        return Err(Error::OddSize(two_n));
    }
    if two_n < 4 {
        return Err(Error::TooSmall {
            size: two_n,
            min: 4,
        });
    }
    let mut pairs = Vec::new();
    for i in (2..=two_n).step_by(2) {
        pairs.push((i - 1, i - 2));
        pairs.push((i - 1, i % two_n));
    }
    Poset::from_relation(numbered(two_n), &pairs)
}

pub fn chain(n: usize) -> Poset {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Poset::from_relation(numbered(n), &pairs).expect("a chain is acyclic")
}

pub fn antichain(n: usize) -> Poset {
    Poset::from_relation(numbered(n), &[]).expect("no relations")
}

/// `F_0 = 0`, `F_1 = F_2 = 1`.
pub fn fib(n: usize) -> u128 {
    let (mut a, mut b) = (0u128, 1u128);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

/// `L_0 = 2`, `L_1 = 1`, `L_2 = 3`.
pub fn lucas(n: usize) -> u128 {
    let (mut a, mut b) = (2u128, 1u128);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

/// An undirected graph on binary strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeGraph {
    pub vertices: Vec<String>,
    /// Index pairs `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
}

fn hamming_one(a: &str, b: &str) -> bool {
    a.len() == b.len() && a.bytes().zip(b.bytes()).filter(|(x, y)| x != y).count() == 1
}

impl CubeGraph {
    /// Vertices in lexicographic order; edges join strings at Hamming distance 1.
    pub fn from_strings(mut vertices: Vec<String>) -> CubeGraph {
        vertices.sort();
        let mut edges = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if hamming_one(&vertices[i], &vertices[j]) {
                    edges.push((i, j));
                }
            }
        }
        CubeGraph { vertices, edges }
    }

    /// The undirected Hasse diagram of `l`, vertices named by filter bitstrings.
    pub fn covering_graph(l: &DistLattice) -> CubeGraph {
        CubeGraph {
            vertices: (0..l.len()).map(|a| l.bitstring(a)).collect(),
            edges: l.covering_graph(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// One `u v` line per edge, by vertex name, sorted.
    pub fn to_edge_list(&self) -> String {
        let mut lines: Vec<String> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (&self.vertices[u], &self.vertices[v]);
                if a <= b {
                    format!("{a} {b}")
                } else {
                    format!("{b} {a}")
                }
            })
            .collect();
        lines.sort();
        lines.into_iter().map(|l| l + "\n").collect()
    }

    fn relation(&self) -> Relation {
        Relation::symmetric(self.vertices.len(), self.edges.iter().copied())
    }
}

fn binary_strings(n: usize, keep: impl Fn(&[u8]) -> bool) -> Vec<String> {
    let mut out = Vec::new();
    let mut buf = vec![b'0'; n];
    fn walk(i: usize, buf: &mut Vec<u8>, keep: &dyn Fn(&[u8]) -> bool, out: &mut Vec<String>) {
        if i == buf.len() {
            if keep(buf) {
                out.push(String::from_utf8(buf.clone()).expect("ascii"));
            }
            return;
        }
        for &c in b"01" {
            if c == b'1' && i > 0 && buf[i - 1] == b'1' {
                continue;
            }
            buf[i] = c;
            walk(i + 1, buf, keep, out);
        }
        buf[i] = b'0';
    }
    walk(0, &mut buf, &keep, &mut out);
    out
}

/// `Γ_n`: length-`n` strings without two adjacent ones.
pub fn fibonacci_cube(n: usize) -> CubeGraph {
    CubeGraph::from_strings(binary_strings(n, |_| true))
}

/// `Λ_n`: Fibonacci-cube strings that also do not start and end with a one.
pub fn lucas_cube(n: usize) -> Result<CubeGraph> {
    if n % 2 == 1 {
        return Err(Error::OddSize(n));
    }
    Ok(CubeGraph::from_strings(binary_strings(n, |s| {
        s.len() < 2 || !(s[0] == b'1' && s[s.len() - 1] == b'1')
    })))
}

pub fn graph_isomorphic(g: &CubeGraph, h: &CubeGraph) -> Result<bool> {
    for x in [g, h] {
        if x.vertex_count() > MAX_GRAPH_VERTICES {
            return Err(Error::CapacityExceeded {
                cap: MAX_GRAPH_VERTICES,
            });
        }
    }
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    Ok(iso::find_isomorphism(&g.relation(), &h.relation()).is_some())
}

/// Whether `p` is `a ∪̇ b` with each part taken up to duality.
fn is_union_up_to_duals(p: &Poset, a: &Poset, b: &Poset) -> Result<bool> {
    for x in [a.clone(), a.dual()] {
        for y in [b.clone(), b.dual()] {
            if p.is_isomorphic(&x.disjoint_union(&y)?) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Debug)]
pub struct FibonacciReport {
    pub m: usize,
    pub n: usize,
    /// `|F(Z_{m+n−2})|`.
    pub size: usize,
    /// `|F(Z_{m+n−2})| = F_{m+n}`.
    pub size_ok: bool,
    /// `F_{m+n} = F_m F_{n+1} + F_{m−1} F_n`.
    pub identity_ok: bool,
    /// `P − n ≅ Z_{n−1} ∪̇ Z_{m−2}` and `P ∗ n ≅ Z_{n−2} ∪̇ Z_{m−3}`, parts up to duality.
    pub shapes_ok: bool,
    pub decomposition_ok: bool,
    pub q: IntPolynomial,
    pub q_minus: IntPolynomial,
    pub q_star: IntPolynomial,
}

impl FibonacciReport {
    /// `q_k(Γ) = q_k(A) + q_k(B) + q_{k−1}(B)`.
    pub fn recurrence_ok(&self) -> bool {
        self.q == &(&self.q_minus + &self.q_star) + &self.q_star.shift(1)
    }

    pub fn holds(&self) -> bool {
        self.size_ok && self.identity_ok && self.shapes_ok && self.decomposition_ok && self.recurrence_ok()
    }
}

/// Splits `Z_{m+n−2}` at its element `n`.
pub fn verify_fibonacci_decomposition(m: usize, n: usize) -> Result<FibonacciReport> {
    assert!(m >= 2 && n >= 2, "m, n ≥ 2");
    let (mi, ni) = (m as i64, n as i64);
    let p = fence(m + n - 2);
    let whole = filter_lattice(&p)?;
    let d = decompose(&p, &n.to_string())?;

    let minus_model = fence_signed(ni - 1).disjoint_union(&fence_signed(mi - 2))?;
    let star_model = fence_signed(ni - 2).disjoint_union(&fence_signed(mi - 3))?;
    let shapes_ok = is_union_up_to_duals(&d.minus, &fence_signed(ni - 1), &fence_signed(mi - 2))?
        && is_union_up_to_duals(&d.star, &fence_signed(ni - 2), &fence_signed(mi - 3))?;

    Ok(FibonacciReport {
        m,
        n,
        size: whole.len(),
        size_ok: whole.len() as u128 == fib(m + n),
        identity_ok: fib(m + n) == fib(m) * fib(n + 1) + fib(m - 1) * fib(n),
        shapes_ok,
        decomposition_ok: d.holds(),
        q: q_by_intervals(&whole),
        q_minus: q_by_intervals(&filter_lattice(&minus_model)?),
        q_star: q_by_intervals(&filter_lattice(&star_model)?),
    })
}

#[derive(Clone, Debug)]
pub struct LucasReport {
    pub n: usize,
    /// `|F(⋈_{2n})|`.
    pub size: usize,
    /// `|F(⋈_{2n})| = L_{2n} = F_{2n+1} + F_{2n−1}`.
    pub size_ok: bool,
    /// `⋈_{2n} − 2 ≅ Z_{2n−1}` and `⋈_{2n} ∗ 2 ≅ Z_{2n−3}` dualized.
    pub shapes_ok: bool,
    pub decomposition_ok: bool,
    /// `q(F(Z^*)) = q(F(Z))` for the starred fence.
    pub dual_q_ok: bool,
    /// Hasse diagram of `F(⋈_{2n})` against the string-model Lucas cube.
    pub cube_ok: bool,
    pub q: IntPolynomial,
    pub q_minus: IntPolynomial,
    pub q_star: IntPolynomial,
}

impl LucasReport {
    pub fn recurrence_ok(&self) -> bool {
        self.q == &(&self.q_minus + &self.q_star) + &self.q_star.shift(1)
    }

    pub fn holds(&self) -> bool {
        self.size_ok
            && self.shapes_ok
            && self.decomposition_ok
            && self.dual_q_ok
            && self.cube_ok
            && self.recurrence_ok()
    }
}

/// Splits `⋈_{2n}` at its element `2`.
pub fn verify_lucas_decomposition(n: usize) -> Result<LucasReport> {
    let two_n = 2 * n;
    let p = crown(two_n)?;
    let whole = filter_lattice(&p)?;
    let d = decompose(&p, "2")?;
    let long = fence(two_n - 1);
    let short = fence(two_n - 3);
    let short_dual = short.dual();

    let q_short = q_by_intervals(&filter_lattice(&short)?);
    let q_short_dual = q_by_intervals(&filter_lattice(&short_dual)?);
    let expected = lucas(two_n);
    Ok(LucasReport {
        n,
        size: whole.len(),
        size_ok: whole.len() as u128 == expected && expected == fib(two_n + 1) + fib(two_n - 1),
        shapes_ok: d.minus.is_isomorphic(&long) && d.star.is_isomorphic(&short_dual),
        decomposition_ok: d.holds(),
        dual_q_ok: q_short == q_short_dual,
        cube_ok: graph_isomorphic(&CubeGraph::covering_graph(&whole), &lucas_cube(two_n)?)?,
        q: q_by_intervals(&whole),
        q_minus: q_by_intervals(&filter_lattice(&long)?),
        q_star: q_short,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i128]) -> IntPolynomial {
        IntPolynomial::new(c.to_vec())
    }

    #[test]
    fn fence_shapes() {
        let z3 = Poset::from_covers(&["a", "b", "c"], &[("b", "a"), ("b", "c")]).unwrap();
        assert!(fence(3).is_isomorphic(&z3));
        assert!(fence(0).is_empty());
        assert!(fence_signed(-1).is_empty());
        let f4 = fence(4);
        let covers: Vec<_> = f4
            .covers()
            .into_iter()
            .map(|(a, b)| (f4.label(a).to_string(), f4.label(b).to_string()))
            .collect();
        assert_eq!(covers.len(), 3);
        assert!(f4.lt(f4.index_of("4").unwrap(), f4.index_of("3").unwrap()));
        assert!(f4.lt(f4.index_of("2").unwrap(), f4.index_of("1").unwrap()));
    }

    #[test]
    fn fence_filter_counts() {
        for n in 0..=16 {
            assert_eq!(fence(n).filters().unwrap().len() as u128, fib(n + 2), "n = {n}");
        }
    }

    #[test]
    fn crowns() {
        let c4 = crown(4).unwrap();
        let idx = |s: &str| c4.index_of(s).unwrap();
        for (lo, hi) in [("2", "1"), ("2", "3"), ("4", "3"), ("4", "1")] {
            assert!(c4.lt(idx(lo), idx(hi)));
        }
        assert_eq!(c4.covers().len(), 4);
        assert_eq!(c4.filters().unwrap().len(), 7);
        assert_eq!(crown(6).unwrap().filters().unwrap().len(), 18);
        assert!(matches!(crown(5), Err(Error::OddSize(5))));
        assert!(matches!(crown(2), Err(Error::TooSmall { .. })));
    }

    #[test]
    fn number_sequences() {
        assert_eq!((fib(0), fib(1), fib(2), fib(7)), (0, 1, 1, 13));
        assert_eq!(fib(7), fib(4) * fib(4) + fib(3) * fib(3));
        assert_eq!((lucas(1), lucas(2), lucas(4), lucas(6), lucas(10)), (1, 3, 7, 18, 123));
        assert_eq!(lucas(6), fib(7) + fib(5));
        for n in 1..40 {
            assert_eq!(lucas(n), fib(n + 1) + fib(n - 1));
        }
    }

    #[test]
    fn cube_models() {
        let g3 = fibonacci_cube(3);
        assert_eq!(g3.vertices, ["000", "001", "010", "100", "101"]);
        assert_eq!(g3.edge_count(), 5);
        let l4 = lucas_cube(4).unwrap();
        assert_eq!((l4.vertex_count(), l4.edge_count()), (7, 8));
        let g0 = fibonacci_cube(0);
        assert_eq!((g0.vertex_count(), g0.edge_count()), (1, 0));
        assert_eq!(g0.to_edge_list(), "");
        assert_eq!(fibonacci_cube(2).to_edge_list(), "00 01\n00 10\n");
        assert!(matches!(lucas_cube(3), Err(Error::OddSize(3))));
        for n in 0..12 {
            assert_eq!(fibonacci_cube(n).vertex_count() as u128, fib(n + 2));
        }
    }

    #[test]
    fn graph_isomorphism() {
        let fence3 = CubeGraph::covering_graph(&filter_lattice(&fence(3)).unwrap());
        assert!(graph_isomorphic(&fence3, &fibonacci_cube(3)).unwrap());
        let path = fibonacci_cube(2);
        let triangle = CubeGraph {
            vertices: vec!["a".into(), "b".into(), "c".into()],
            edges: vec![(0, 1), (0, 2), (1, 2)],
        };
        assert!(!graph_isomorphic(&path, &triangle).unwrap());
        assert!(graph_isomorphic(&triangle, &triangle).unwrap());
        let c4 = CubeGraph::covering_graph(&filter_lattice(&crown(4).unwrap()).unwrap());
        assert!(graph_isomorphic(&c4, &lucas_cube(4).unwrap()).unwrap());
        let huge = fibonacci_cube(13);
        assert!(matches!(graph_isomorphic(&huge, &huge), Err(Error::CapacityExceeded { .. })));
    }

    #[test]
    fn fibonacci_worked_cases() {
        let r = verify_fibonacci_decomposition(4, 3).unwrap();
        assert_eq!(r.size, 13);
        assert!(r.holds(), "{r:?}");
        for n in 2..8 {
            let r = verify_fibonacci_decomposition(2, n).unwrap();
            assert!(r.holds(), "m = 2, n = {n}: {r:?}");
        }
        let r = verify_fibonacci_decomposition(3, 3).unwrap();
        let direct = q_by_intervals(&filter_lattice(&fence(4)).unwrap());
        assert_eq!(r.q, direct);
        assert_eq!(r.q.coeff(1), r.q_minus.coeff(1) + r.q_star.coeff(1) + r.q_star.coeff(0));
    }

    #[test]
    fn lucas_worked_cases() {
        let r = verify_lucas_decomposition(2).unwrap();
        assert_eq!(r.q, p(&[7, 8, 2]));
        assert_eq!(r.q_minus, p(&[5, 5, 1]));
        assert_eq!(r.q_star, p(&[2, 1]));
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.q.eval(-1), 1);
        let r = verify_lucas_decomposition(3).unwrap();
        assert_eq!(r.size, 18);
        assert!(r.holds());
    }

    proptest! {
        #[test]
        fn fibonacci_addition_law(m in 1usize..60, n in 1usize..60) {
            prop_assert_eq!(fib(m + n), fib(m) * fib(n + 1) + fib(m - 1) * fib(n));
        }

        #[test]
        fn string_cubes_are_induced_cube_subgraphs(n in 0usize..10) {
            let g = fibonacci_cube(n);
            for &(u, v) in &g.edges {
                prop_assert!(hamming_one(&g.vertices[u], &g.vertices[v]));
            }
            prop_assert!(g.vertices.iter().all(|s| !s.contains("11")));
        }
    }
}
