//! Isomorphism of finite binary relations.
//!
//! Posets (via their strict order), lattices viewed as orders, and undirected
//! graphs (via a symmetric adjacency relation) all reduce to the same problem:
//! find a bijection `f` with `a(i, j) == b(f(i), f(j))` for every pair. The
//! search refines an initial degree colouring to a stable partition on both
//! structures at once, rejects on mismatched colour histograms, and then
//! backtracks over colour-compatible candidates, extending the mapping along
//! already-mapped neighbours first.

use std::collections::{BTreeMap, BTreeSet};

/// A dense binary relation on `0..n`, stored as row and column bitsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    cols: Vec<u64>,
}

impl Relation {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Relation {
            n,
            words,
            rows: vec![0; n * words],
            cols: vec![0; n * words],
        }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Relation::new(n);
        for (i, j) in pairs {
            r.set(i, j);
        }
        r
    }

    /// Builds a symmetric relation from undirected edges.
    pub fn symmetric(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Relation::new(n);
        for (i, j) in edges {
            r.set(i, j);
            r.set(j, i);
        }
        r
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
        self.cols[j * self.words + i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] & (1 << (j % 64)) != 0
    }

    fn iter_bits(slice: &[u64]) -> impl Iterator<Item = usize> + '_ {
        slice.iter().enumerate().flat_map(|(w, &word)| {
            crate::bits::ones(word).map(move |b| w * 64 + b)
        })
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        Self::iter_bits(&self.rows[i * self.words..(i + 1) * self.words])
    }

    pub fn predecessors(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        Self::iter_bits(&self.cols[j * self.words..(j + 1) * self.words])
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// A vertex's colour with the sorted colours of its successors and predecessors.
type Signature = (u32, Vec<u32>, Vec<u32>);

/// Stable colouring of both relations under joint refinement.
fn refine(a: &Relation, b: &Relation) -> (Vec<u32>, Vec<u32>) {
    let relations = [a, b];
    let mut colours: Vec<Vec<u32>> = relations.iter().map(|r| vec![0; r.n]).collect();
    let mut classes = 1usize;
    loop {
        let signatures: Vec<Vec<Signature>> = relations
            .iter()
            .zip(&colours)
            .map(|(r, col)| {
                (0..r.n)
                    .map(|v| {
                        let mut out: Vec<u32> = r.successors(v).map(|u| col[u]).collect();
                        let mut inc: Vec<u32> = r.predecessors(v).map(|u| col[u]).collect();
                        out.sort_unstable();
                        inc.sort_unstable();
                        (col[v], out, inc)
                    })
                    .collect()
            })
            .collect();
        // Sorted signatures make colour ids independent of vertex numbering.
        let distinct: BTreeSet<&(u32, Vec<u32>, Vec<u32>)> = signatures.iter().flatten().collect();
        let ids: BTreeMap<&(u32, Vec<u32>, Vec<u32>), u32> = distinct
            .into_iter()
            .enumerate()
            .map(|(i, k)| (k, i as u32))
            .collect();
        for (col, sigs) in colours.iter_mut().zip(&signatures) {
            for (c, s) in col.iter_mut().zip(sigs) {
                *c = ids[&s];
            }
        }
        if ids.len() == classes {
            break;
        }
        classes = ids.len();
    }
    let b_col = colours.pop().unwrap();
    let a_col = colours.pop().unwrap();
    (a_col, b_col)
}

fn histogram(colours: &[u32]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &c in colours {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

struct Search<'a> {
    a: &'a Relation,
    b: &'a Relation,
    a_col: Vec<u32>,
    b_col: Vec<u32>,
    order: Vec<usize>,
    // For each position in `order`, an earlier-ordered neighbour and whether it is a successor.
    anchor: Vec<Option<(usize, bool)>>,
    by_colour: BTreeMap<u32, Vec<usize>>,
    map: Vec<usize>,
    used: Vec<bool>,
}

const UNMAPPED: usize = usize::MAX;

impl Search<'_> {
    fn consistent(&self, depth: usize, v: usize, c: usize) -> bool {
        self.order[..depth].iter().all(|&w| {
            let fw = self.map[w];
            self.a.get(v, w) == self.b.get(c, fw) && self.a.get(w, v) == self.b.get(fw, c)
        }) && self.a.get(v, v) == self.b.get(c, c)
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let candidates: Vec<usize> = match self.anchor[depth] {
            Some((u, true)) => self.b.predecessors(self.map[u]).collect(),
            Some((u, false)) => self.b.successors(self.map[u]).collect(),
            None => self.by_colour.get(&self.a_col[v]).cloned().unwrap_or_default(),
        };
        for c in candidates {
            if self.used[c] || self.b_col[c] != self.a_col[v] || !self.consistent(depth, v, c) {
                continue;
            }
            self.map[v] = c;
            self.used[c] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.map[v] = UNMAPPED;
            self.used[c] = false;
        }
        false
    }
}

/// Returns a bijection `f` (as `f[i]`) with `a(i,j) == b(f[i],f[j])` for all pairs, if one exists.
pub fn find_isomorphism(a: &Relation, b: &Relation) -> Option<Vec<usize>> {
    if a.n != b.n || a.pair_count() != b.pair_count() {
        return None;
    }
    let n = a.n;
    if n == 0 {
        return Some(Vec::new());
    }
    let (a_col, b_col) = refine(a, b);
    let a_hist = histogram(&a_col);
    if a_hist != histogram(&b_col) {
        return None;
    }

    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    let mut anchor = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (std::cmp::Reverse(links[v]), a_hist[&a_col[v]], v))
            .unwrap();
        let anc = order.iter().rev().find_map(|&u: &usize| {
            if a.get(v, u) {
                // v -> u, so the image of v is a predecessor of the image of u.
                Some((u, true))
            } else if a.get(u, v) {
                Some((u, false))
            } else {
                None
            }
        });
        placed[v] = true;
        order.push(v);
        anchor.push(anc);
        for u in a.successors(v).chain(a.predecessors(v)) {
            links[u] += 1;
        }
    }

    let mut by_colour: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (c, &col) in b_col.iter().enumerate() {
        by_colour.entry(col).or_default().push(c);
    }
    let mut search = Search {
        a,
        b,
        a_col,
        b_col,
        order,
        anchor,
        by_colour,
        map: vec![UNMAPPED; n],
        used: vec![false; n],
    };
    search.extend(0).then_some(search.map)
}
