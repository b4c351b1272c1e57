//! Enumerative invariants of filter lattices and the identities relating them
//! across a convex expansion.
//!
//! Every count here is exact. `q_k` (convex Boolean sublattices of rank `k`)
//! has two routes: a scan over all intervals and a per-element binomial sum;
//! the degree vectors come from a census of the Hasse diagram. The
//! recurrence checks build `L ⊞ K` explicitly and compare against a
//! fresh census of the result.

mod polynomial;

pub use polynomial::IntPolynomial;

use serde::Serialize;

use crate::error::Result;
use crate::expansion::{self, ExpansionResult};
use crate::lattice::{DistLattice, IntervalRef};

pub fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// `R(L, x) = Σ x^{h(e)}`.
pub fn rank_gen(l: &DistLattice) -> IntPolynomial {
    IntPolynomial::census(l.heights().iter().copied())
}

/// `R_L(E, x)`: heights measured in `L`, summed over `elems`.
pub fn rank_gen_subset(l: &DistLattice, elems: &[usize]) -> IntPolynomial {
    IntPolynomial::census(elems.iter().map(|&e| l.height(e)))
}

/// Size of a largest antichain of `Mi(L)`.
pub fn width_m(l: &DistLattice) -> usize {
    l.meet_irreducibles().width()
}

/// `q_k` by scanning every interval `[a, b]` and testing whether it is Boolean of rank `k`.
pub fn q_by_intervals(l: &DistLattice) -> IntPolynomial {
    let mut q = Vec::new();
    for a in 0..l.len() {
        // canonical order is a linear extension, so anything above a comes later
        for b in a..l.len() {
            if !l.leq(a, b) {
                continue;
            }
            let s = l.filter(a).bits() & !l.filter(b).bits();
            let k = s.count_ones() as usize;
            if l.is_boolean_interval(IntervalRef::new(a, b), k).expect("a ≤ b") {
                if q.len() <= k {
                    q.resize(k + 1, 0);
                }
                q[k] += 1;
            }
        }
    }
    IntPolynomial::new(q)
}

/// `q_k = Σ_F C(|Min F|, k)`: each Boolean interval is fixed by its bottom and
/// a set of minimal elements to remove.
pub fn q_by_min_counts(l: &DistLattice) -> IntPolynomial {
    let p = l.base();
    let mut q = IntPolynomial::zero();
    for f in l.elements() {
        let m = p.minimal(f.bits()).count_ones() as usize;
        let row = IntPolynomial::new((0..=m).map(|k| binomial(m, k)).collect());
        q = &q + &row;
    }
    q
}

/// The q-vector through the interval oracle, padded to `width_m + 1` entries.
pub fn q_vector(l: &DistLattice) -> Vec<i128> {
    padded(&q_by_intervals(l), width_m(l) + 1)
}

fn padded(p: &IntPolynomial, len: usize) -> Vec<i128> {
    let n = len.max(p.coeffs().len());
    (0..n).map(|k| p.coeff(k)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeVectors {
    /// `d_k⁻`: elements with `k` upper covers.
    pub minus: IntPolynomial,
    /// `d_k⁺`: elements with `k` lower covers.
    pub plus: IntPolynomial,
    /// `d_k`: elements with `k` neighbours in the Hasse diagram.
    pub total: IntPolynomial,
}

pub fn d_vectors(l: &DistLattice) -> DegreeVectors {
    let n = l.len();
    DegreeVectors {
        minus: IntPolynomial::census((0..n).map(|a| l.upper_covers(a).len())),
        plus: IntPolynomial::census((0..n).map(|a| l.lower_covers(a).len())),
        total: IntPolynomial::census(
            (0..n).map(|a| l.upper_covers(a).len() + l.lower_covers(a).len()),
        ),
    }
}

/// Number of `k`-antichains of `Mi(L)`, for every `k`.
pub fn mi_antichain_census(l: &DistLattice) -> IntPolynomial {
    let mi = l.meet_irreducibles();
    let counts: Vec<i128> = (0..=mi.len())
        .map(|k| mi.antichains_of_size(k).len() as i128)
        .take_while(|&c| c > 0)
        .collect();
    IntPolynomial::new(counts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialReport {
    pub q: IntPolynomial,
    pub d_minus: IntPolynomial,
    /// `q_k = Σ_j C(j,k) d_j⁻`.
    pub forward: bool,
    /// `d_k⁻ = Σ_j (−1)^{j−k} C(j,k) q_j`.
    pub inverse: bool,
    /// `Q_L(x) = D_L⁻(1 + x)`.
    pub generating: bool,
}

impl BinomialReport {
    pub fn holds(&self) -> bool {
        self.forward && self.inverse && self.generating
    }
}

pub fn binomial_relations(l: &DistLattice) -> BinomialReport {
    let q = q_by_intervals(l);
    let d = d_vectors(l).minus;
    let m = width_m(l);
    let forward = (0..=m + 1).all(|k| {
        q.coeff(k) == (k..=m).map(|j| binomial(j, k) * d.coeff(j)).sum::<i128>()
    });
    let inverse = (0..=m + 1).all(|k| {
        let alt: i128 = (k..=m)
            .map(|j| {
                let sign = if (j - k) % 2 == 0 { 1 } else { -1 };
                sign * binomial(j, k) * q.coeff(j)
            })
            .sum();
        d.coeff(k) == alt
    });
    let generating = q == d.translate(1);
    BinomialReport {
        q,
        d_minus: d,
        forward,
        inverse,
        generating,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    /// `Q_L(−1)`.
    pub value: i128,
    /// `Q'_L(−1)`.
    pub derivative: i128,
    pub mi_count: usize,
}

impl EulerReport {
    pub fn value_ok(&self) -> bool {
        self.value == 1
    }

    pub fn derivative_ok(&self) -> bool {
        self.derivative == self.mi_count as i128
    }

    pub fn holds(&self) -> bool {
        self.value_ok() && self.derivative_ok()
    }
}

pub fn euler_checks(l: &DistLattice) -> EulerReport {
    let q = q_by_intervals(l);
    EulerReport {
        value: q.eval(-1),
        derivative: q.derivative().eval(-1),
        mi_count: l.meet_irreducibles().len(),
    }
}

/// The invariants of one lattice, serialised as the `stats` report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub n: usize,
    pub size: usize,
    pub q: Vec<i128>,
    pub d_minus: Vec<i128>,
    pub d_plus: Vec<i128>,
    pub d_total: Vec<i128>,
    pub rank_poly: IntPolynomial,
    pub width_m: usize,
    pub mi_count: usize,
    pub euler_ok: bool,
    pub euler_derivative_ok: bool,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    n: usize,
    size: usize,
    q: Vec<i64>,
    d_minus: Vec<i64>,
    d_plus: Vec<i64>,
    d_total: Vec<i64>,
    rank_poly: Vec<i64>,
    mi_count: usize,
    euler_ok: bool,
    euler_derivative_ok: bool,
    #[serde(skip)]
    _marker: std::marker::PhantomData<&'a ()>,
}

fn narrow(v: &[i128]) -> Vec<i64> {
    v.iter()
        .map(|&c| i64::try_from(c).expect("counts fit in 64 bits"))
        .collect()
}

impl InvariantReport {
    pub fn compute(l: &DistLattice) -> InvariantReport {
        let width = width_m(l);
        let q = q_by_intervals(l);
        let d = d_vectors(l);
        let euler = euler_checks(l);
        InvariantReport {
            n: l.base().len(),
            size: l.len(),
            q: padded(&q, width + 1),
            d_minus: padded(&d.minus, width + 1),
            d_plus: padded(&d.plus, width + 1),
            d_total: d.total.coeffs().to_vec(),
            rank_poly: rank_gen(l),
            width_m: width,
            mi_count: euler.mi_count,
            euler_ok: euler.value_ok(),
            euler_derivative_ok: euler.derivative_ok(),
        }
    }

    /// Compact JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        let body = ReportJson {
            n: self.n,
            size: self.size,
            q: narrow(&self.q),
            d_minus: narrow(&self.d_minus),
            d_plus: narrow(&self.d_plus),
            d_total: narrow(&self.d_total),
            rank_poly: narrow(self.rank_poly.coeffs()),
            mi_count: self.mi_count,
            euler_ok: self.euler_ok,
            euler_derivative_ok: self.euler_derivative_ok,
            _marker: std::marker::PhantomData,
        };
        // serde_json's map is ordered by key, so routing through Value sorts the fields
        let value = serde_json::to_value(body).expect("plain data serialises");
        serde_json::to_string(&value).expect("plain data serialises")
    }
}

/// Which special case of the rank recurrence applies to an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankCase {
    /// `1̂_K = 1̂_L`: `R(L⊞K) = R(L) + x^{h(0̂_K)+1} R(K)`.
    TopAligned,
    /// `0̂_K = 0̂_L`: `R(L⊞K) = R(K) + x R(L)`.
    BottomAligned,
}

#[derive(Clone, Debug)]
pub struct RankRecurrence {
    /// Census of heights in `F(P_K)`.
    pub expanded: IntPolynomial,
    /// `R_L(↓1̂_K, x) + x R_L(↑0̂_K, x)`.
    pub relative: IntPolynomial,
    /// `R(↓1̂_K, x) + x^{h(0̂_K)+1} R(↑0̂_K, x)`, each part ranked in its own right.
    pub absolute: IntPolynomial,
    /// Each applicable special case with its right-hand side.
    pub special: Vec<(RankCase, IntPolynomial)>,
}

impl RankRecurrence {
    pub fn holds(&self) -> bool {
        self.expanded == self.relative
            && self.expanded == self.absolute
            && self.special.iter().all(|(_, p)| *p == self.expanded)
    }
}

pub fn check_rank_recurrence(l: &DistLattice, k: IntervalRef) -> Result<RankRecurrence> {
    let e = expansion::expand_poset(l, k, None)?;
    let expanded = rank_gen(&e.lattice);

    let down: Vec<usize> = (0..l.len()).filter(|&x| l.leq(x, k.top)).collect();
    let up: Vec<usize> = (0..l.len()).filter(|&x| l.leq(k.bottom, x)).collect();
    let relative = &rank_gen_subset(l, &down) + &rank_gen_subset(l, &up).shift(1);

    let p = l.base();
    let below_top = crate::filter_lattice(&p.dual().induced(p.all() & !l.filter(k.top).bits()))?;
    let above_bottom = crate::filter_lattice(&p.induced(l.filter(k.bottom).bits()))?;
    // ↓1̂_K is F(P ∖ 1̂_K) turned upside down; rank it from the bottom of L
    let down_poly = dual_rank(&below_top);
    let absolute = &down_poly + &rank_gen(&above_bottom).shift(l.height(k.bottom) + 1);

    let interval = l.interval_lattice(k)?;
    let mut special = Vec::new();
    if k.top == l.top() {
        special.push((
            RankCase::TopAligned,
            &rank_gen(l) + &rank_gen(&interval).shift(l.height(k.bottom) + 1),
        ));
    }
    if k.bottom == l.bottom() {
        special.push((
            RankCase::BottomAligned,
            &rank_gen(&interval) + &rank_gen(l).shift(1),
        ));
    }
    Ok(RankRecurrence {
        expanded,
        relative,
        absolute,
        special,
    })
}

// `↓1̂_K` consists of the filters containing 1̂_K, i.e. 1̂_K plus a filter of
// the ideal P ∖ 1̂_K. Those correspond to ideals of P ∖ 1̂_K, which are the
// filters of its dual; an ideal I gives height |I| in L.
fn dual_rank(ideals: &DistLattice) -> IntPolynomial {
    IntPolynomial::census(ideals.elements().iter().map(|f| f.len()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorRecurrence {
    pub lhs: IntPolynomial,
    pub rhs: IntPolynomial,
}

impl VectorRecurrence {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `q_k(L⊞K) = q_k(L) + q_k(K) + q_{k−1}(K)`, all by the interval oracle.
pub fn check_q_recurrence(l: &DistLattice, k: IntervalRef) -> Result<VectorRecurrence> {
    let e = expansion::expand_poset(l, k, None)?;
    let qk = q_by_intervals(&l.interval_lattice(k)?);
    Ok(VectorRecurrence {
        lhs: q_by_intervals(&e.lattice),
        rhs: &(&q_by_intervals(l) + &qk) + &qk.shift(1),
    })
}

#[derive(Clone, Debug)]
pub struct DegreeRecurrences {
    /// `d_k⁻(L⊞K) = d_k⁻(L) + d_{k−1}⁻(K)`.
    pub up_degree: VectorRecurrence,
    /// `d_k((L⊞K)⊞K') = d_k(L⊞K) + d_{k−2}(K)`, with `K'` the copy made by the first expansion.
    pub total_degree: VectorRecurrence,
}

impl DegreeRecurrences {
    pub fn holds(&self) -> bool {
        self.up_degree.holds() && self.total_degree.holds()
    }
}

pub fn check_d_recurrences(l: &DistLattice, k: IntervalRef) -> Result<DegreeRecurrences> {
    let first: ExpansionResult = expansion::expand_poset(l, k, None)?;
    let second = expansion::expand_poset(&first.lattice, first.copy_interval, None)?;
    let dl = d_vectors(l);
    let dk = d_vectors(&l.interval_lattice(k)?);
    let d1 = d_vectors(&first.lattice);
    let d2 = d_vectors(&second.lattice);
    Ok(DegreeRecurrences {
        up_degree: VectorRecurrence {
            lhs: d1.minus.clone(),
            rhs: &dl.minus + &dk.minus.shift(1),
        },
        total_degree: VectorRecurrence {
            lhs: d2.total,
            rhs: &d1.total + &dk.total.shift(2),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter_lattice;
    use crate::poset::Poset;

    fn z3() -> Poset {
        Poset::from_covers(&["a", "b", "c"], &[("b", "a"), ("b", "c")]).unwrap()
    }

    fn antichain(n: usize) -> Poset {
        Poset::from_relation((0..n).map(|i| format!("p{i}")).collect(), &[]).unwrap()
    }

    fn chain(n: usize) -> Poset {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_relation((0..n).map(|i| format!("c{i}")).collect(), &pairs).unwrap()
    }

    fn p(c: &[i128]) -> IntPolynomial {
        IntPolynomial::new(c.to_vec())
    }

    fn z3_square(l: &DistLattice) -> IntervalRef {
        IntervalRef::new(l.index_of_bitstring("101").unwrap(), l.top())
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(30, 15), 155_117_520);
    }

    #[test]
    fn rank_generating_functions() {
        let l = filter_lattice(&z3()).unwrap();
        assert_eq!(rank_gen(&l), p(&[1, 1, 2, 1]));
        assert_eq!(rank_gen(&l).eval(1), 5);
        assert_eq!(rank_gen(&filter_lattice(&Poset::empty()).unwrap()), p(&[1]));
        assert_eq!(rank_gen_subset(&l, &[1, 2]), p(&[0, 1, 1]));
        let b4 = rank_gen(&filter_lattice(&antichain(4)).unwrap());
        let mut rev = b4.coeffs().to_vec();
        rev.reverse();
        assert_eq!(rev, b4.coeffs());
    }

    #[test]
    fn q_vectors() {
        let l = filter_lattice(&z3()).unwrap();
        assert_eq!(q_vector(&l), vec![5, 5, 1]);
        assert_eq!(q_by_min_counts(&l), q_by_intervals(&l));
        assert_eq!(q_vector(&filter_lattice(&Poset::empty()).unwrap()), vec![1]);
    }

    #[test]
    fn boolean_lattice_q_by_brute_force() {
        // q_k(B_n) = C(n,k) 2^{n-k}: choose the k free coordinates and fix the rest
        for n in 0..=4 {
            let l = filter_lattice(&antichain(n)).unwrap();
            let expected: Vec<i128> = (0..=n)
                .map(|k| binomial(n, k) * (1i128 << (n - k)))
                .collect();
            assert_eq!(q_vector(&l), expected, "n = {n}");
        }
    }

    #[test]
    fn degree_vectors() {
        let l = filter_lattice(&z3()).unwrap();
        let d = d_vectors(&l);
        assert_eq!(d.minus, p(&[1, 3, 1]));
        assert_eq!(d.plus, p(&[1, 3, 1]));
        assert_eq!(d.total, p(&[0, 1, 3, 1]));
        assert_eq!(d_vectors(&filter_lattice(&Poset::empty()).unwrap()).minus, p(&[1]));
        for n in 1..6 {
            assert_eq!(d_vectors(&filter_lattice(&chain(n)).unwrap()).minus, p(&[1, n as i128]));
        }
        assert_eq!(mi_antichain_census(&l), d.minus);
    }

    #[test]
    fn binomial_transform_on_z3() {
        let r = binomial_relations(&filter_lattice(&z3()).unwrap());
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.q.eval(0), 5);
        assert_eq!(r.d_minus.eval(1), 5);
    }

    #[test]
    fn euler_on_small_lattices() {
        let e = euler_checks(&filter_lattice(&z3()).unwrap());
        assert_eq!((e.value, e.derivative, e.mi_count), (1, 3, 3));
        let e = euler_checks(&filter_lattice(&Poset::empty()).unwrap());
        assert_eq!((e.value, e.derivative, e.mi_count), (1, 0, 0));
        assert!(e.holds());
    }

    #[test]
    fn rank_recurrence_on_z3_square() {
        let l = filter_lattice(&z3()).unwrap();
        let r = check_rank_recurrence(&l, z3_square(&l)).unwrap();
        assert_eq!(r.expanded, p(&[1, 1, 3, 3, 1]));
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.special.len(), 1);
        assert_eq!(r.special[0].0, RankCase::TopAligned);
        assert_eq!(r.expanded.eval(1), 9);
    }

    #[test]
    fn rank_recurrence_whole_lattice() {
        let l = filter_lattice(&z3()).unwrap();
        let r = check_rank_recurrence(&l, IntervalRef::new(l.bottom(), l.top())).unwrap();
        assert!(r.holds());
        assert_eq!(r.expanded, &rank_gen(&l) * &p(&[1, 1]));
        assert_eq!(r.special.len(), 2);
    }

    #[test]
    fn q_and_d_recurrences_on_z3_square() {
        let l = filter_lattice(&z3()).unwrap();
        let k = z3_square(&l);
        let q = check_q_recurrence(&l, k).unwrap();
        assert_eq!(q.lhs, p(&[9, 13, 6, 1]));
        assert!(q.holds());
        assert_eq!(q.lhs.eval(-1), 1);
        let d = check_d_recurrences(&l, k).unwrap();
        assert_eq!(d.up_degree.lhs, p(&[1, 4, 3, 1]));
        assert!(d.holds(), "{d:?}");
    }

    #[test]
    fn report_json_is_sorted() {
        let r = InvariantReport::compute(&filter_lattice(&z3()).unwrap());
        assert_eq!(
            r.to_json(),
            r#"{"d_minus":[1,3,1],"d_plus":[1,3,1],"d_total":[0,1,3,1],"euler_derivative_ok":true,"euler_ok":true,"mi_count":3,"n":3,"q":[5,5,1],"rank_poly":[1,1,2,1],"size":5}"#
        );
    }
}
