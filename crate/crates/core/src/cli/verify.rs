//! Named verification suites over exhaustive and seeded-random corpora.

use std::fmt;

use crate::error::Result;
use crate::expansion::{CuttingRegistry, CuttingTest, UnionTest};
use crate::expansion::{decompose, expand_poset, ExpansionResult};
use crate::families::{
    fence, fibonacci_cube, graph_isomorphic, verify_fibonacci_decomposition,
    verify_lucas_decomposition, CubeGraph,
};
use crate::generate::{labeled_posets, random_poset, unlabeled_posets};
use crate::invariants::{
    binomial_relations, check_d_recurrences, check_q_recurrence, check_rank_recurrence,
    d_vectors, euler_checks, mi_antichain_census,
};
use crate::io::write_poset;
use crate::lattice::{filter_lattice, DistLattice, IntervalRef};
use crate::poset::Poset;

/// Knobs shared by all suites; `None` picks the suite's own default.
#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: Option<usize>,
    pub max_size: Option<usize>,
    pub max: Option<usize>,
}

/// A poset under test and where it came from.
#[derive(Clone, Debug)]
pub struct Instance {
    pub origin: String,
    pub poset: Poset,
    pub lattice: DistLattice,
}

/// Exhaustive posets up to some size followed by seeded random ones.
/// Random instance `i` uses seed `seed + i`, so any failure can be replayed alone.
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub instances: Vec<Instance>,
}

impl Corpus {
    pub fn new() -> Corpus {
        Corpus::default()
    }

    fn push(&mut self, origin: String, poset: Poset) -> Result<()> {
        let lattice = filter_lattice(&poset)?;
        self.instances.push(Instance {
            origin,
            poset,
            lattice,
        });
        Ok(())
    }

    /// Every labeled poset on at most `n` points.
    pub fn with_labeled(mut self, n: usize) -> Result<Corpus> {
        for k in 0..=n {
            for (i, p) in labeled_posets(k).into_iter().enumerate() {
                self.push(format!("labeled n={k} #{i}"), p)?;
            }
        }
        Ok(self)
    }

    /// One poset per isomorphism class on at most `n` points.
    pub fn with_unlabeled(mut self, n: usize) -> Result<Corpus> {
        for k in 0..=n {
            for (i, p) in unlabeled_posets(k).into_iter().enumerate() {
                self.push(format!("class n={k} #{i}"), p)?;
            }
        }
        Ok(self)
    }

    pub fn with_random(mut self, seed: u64, trials: usize, max_size: usize) -> Result<Corpus> {
        for i in 0..trials as u64 {
            let s = seed.wrapping_add(i);
            self.push(format!("random seed={s} max-size={max_size}"), random_poset(s, max_size))?;
        }
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    /// Every cutting of every lattice, found with the union characterization.
    pub fn cuttings(&self) -> impl Iterator<Item = (&Instance, IntervalRef)> {
        self.instances.iter().flat_map(|inst| {
            let l = &inst.lattice;
            (0..l.len())
                .flat_map(move |a| (a..l.len()).map(move |b| IntervalRef::new(a, b)))
                .filter(move |&k| {
                    l.leq(k.bottom, k.top) && UnionTest.is_cutting(l, k).expect("valid interval")
                })
                .map(move |k| (inst, k))
        })
    }
}

/// The smallest failing instance of a suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub size: usize,
    pub origin: String,
    pub detail: String,
    pub poset: String,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub checked: usize,
    pub failures: usize,
    pub lines: Vec<String>,
    pub smallest: Option<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn check(&mut self, ok: bool, inst: &Instance, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if ok {
            return;
        }
        self.failures += 1;
        let size = inst.poset.len();
        if self.smallest.as_ref().is_some_and(|f| f.size <= size) {
            return;
        }
        self.smallest = Some(Failure {
            size,
            origin: inst.origin.clone(),
            detail: detail(),
            poset: write_poset(&inst.poset),
        });
    }

    fn merge(&mut self, other: SuiteReport) {
        self.checked += other.checked;
        self.failures += other.failures;
        self.lines.extend(other.lines);
        if let Some(f) = other.smallest {
            if self.smallest.as_ref().is_none_or(|g| f.size < g.size) {
                self.smallest = Some(f);
            }
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        if let Some(fail) = &self.smallest {
            writeln!(f, "smallest failure ({}): {}", fail.origin, fail.detail)?;
            for line in fail.poset.lines() {
                writeln!(f, "  {line}")?;
            }
        }
        if self.passed() {
            writeln!(f, "ok: {} checks", self.checked)
        } else {
            writeln!(f, "FAILED: {} of {} checks", self.failures, self.checked)
        }
    }
}

fn expansion_checks(inst: &Instance, k: IntervalRef) -> Result<ExpansionResult> {
    expand_poset(&inst.lattice, k, None)
}

pub fn check_birkhoff(corpus: &Corpus) -> SuiteReport {
    let mut r = SuiteReport::default();
    for inst in &corpus.instances {
        let mi = inst.lattice.meet_irreducibles();
        r.check(mi.is_isomorphic(&inst.poset), inst, || "Mi(F(P)) is not isomorphic to P".into());
        r.check(
            inst.lattice.len() == inst.poset.antichain_count(),
            inst,
            || format!("|F(P)| = {} but P has {} antichains", inst.lattice.len(), inst.poset.antichain_count()),
        );
    }
    r.lines.push(format!("posets: {}", corpus.len()));
    r
}

pub fn check_cutting_equivalence(corpus: &Corpus) -> SuiteReport {
    let registry = CuttingRegistry::default();
    let mut r = SuiteReport::default();
    let (mut intervals, mut cuttings) = (0usize, 0usize);
    for inst in &corpus.instances {
        let l = &inst.lattice;
        for a in 0..l.len() {
            for b in a..l.len() {
                if !l.leq(a, b) {
                    continue;
                }
                let k = IntervalRef::new(a, b);
                let verdicts = registry.evaluate(l, k).expect("valid interval");
                let agree = verdicts.iter().all(|v| v.1 == verdicts[0].1);
                intervals += 1;
                cuttings += usize::from(agree && verdicts[0].1);
                r.check(agree, inst, || {
                    format!("methods disagree on [{}, {}]: {verdicts:?}", l.bitstring(a), l.bitstring(b))
                });
            }
        }
    }
    r.lines.push(format!(
        "posets: {}, intervals: {intervals}, cuttings: {cuttings}",
        corpus.len()
    ));
    r
}

pub fn check_expansion_counts(corpus: &Corpus) -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    let mut cuttings = 0;
    for (inst, k) in corpus.cuttings() {
        cuttings += 1;
        let l = &inst.lattice;
        let e = expansion_checks(inst, k)?;
        let ksize = l.interval_elements(k)?.len();
        let name = || format!("[{}, {}]", l.bitstring(k.bottom), l.bitstring(k.top));
        r.check(e.lattice.len() == l.len() + ksize, inst, || {
            format!("{}: |L⊞K| = {} but |L| + |K| = {}", name(), e.lattice.len(), l.len() + ksize)
        });
        let d = decompose(&e.poset, &e.new_element)?;
        let s = l.interval_subposet(k)?;
        r.check(
            d.minus.is_isomorphic(&inst.poset) && d.star.is_isomorphic(&s) && d.holds(),
            inst,
            || format!("{}: decomposing at the new element does not recover (P, S)", name()),
        );
    }
    r.lines.push(format!("cuttings: {cuttings}"));
    Ok(r)
}

pub fn check_rank_recurrences(corpus: &Corpus) -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    for (inst, k) in corpus.cuttings() {
        let rec = check_rank_recurrence(&inst.lattice, k)?;
        r.check(rec.holds(), inst, || {
            format!(
                "[{}, {}]: R(L⊞K) = {} vs {} / {}",
                inst.lattice.bitstring(k.bottom),
                inst.lattice.bitstring(k.top),
                rec.expanded,
                rec.relative,
                rec.absolute
            )
        });
    }
    Ok(r)
}

pub fn check_qd_recurrences(corpus: &Corpus) -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    for (inst, k) in corpus.cuttings() {
        let at = || format!("[{}, {}]", inst.lattice.bitstring(k.bottom), inst.lattice.bitstring(k.top));
        let q = check_q_recurrence(&inst.lattice, k)?;
        r.check(q.holds(), inst, || format!("{}: q {} vs {}", at(), q.lhs, q.rhs));
        let d = check_d_recurrences(&inst.lattice, k)?;
        r.check(d.up_degree.holds(), inst, || {
            format!("{}: d⁻ {} vs {}", at(), d.up_degree.lhs, d.up_degree.rhs)
        });
        r.check(d.total_degree.holds(), inst, || {
            format!("{}: d {} vs {}", at(), d.total_degree.lhs, d.total_degree.rhs)
        });
    }
    Ok(r)
}

/// Runs `check` on every corpus lattice and on every expansion of one.
fn on_generated_lattices(
    corpus: &Corpus,
    mut check: impl FnMut(&DistLattice) -> std::result::Result<(), String>,
) -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    let mut expanded = 0;
    for inst in &corpus.instances {
        let res = check(&inst.lattice);
        r.check(res.is_ok(), inst, || res.clone().unwrap_err());
    }
    for (inst, k) in corpus.cuttings() {
        let e = expansion_checks(inst, k)?;
        expanded += 1;
        let res = check(&e.lattice);
        r.check(res.is_ok(), inst, || {
            format!(
                "after expanding [{}, {}]: {}",
                inst.lattice.bitstring(k.bottom),
                inst.lattice.bitstring(k.top),
                res.clone().unwrap_err()
            )
        });
    }
    r.lines.push(format!("lattices: {}, expansions: {expanded}", corpus.len()));
    Ok(r)
}

pub fn check_binomial(corpus: &Corpus) -> Result<SuiteReport> {
    on_generated_lattices(corpus, |l| {
        let b = binomial_relations(l);
        if b.holds() {
            Ok(())
        } else {
            Err(format!("q = {}, d⁻ = {}", b.q, b.d_minus))
        }
    })
}

pub fn check_euler(corpus: &Corpus) -> Result<SuiteReport> {
    on_generated_lattices(corpus, |l| {
        let e = euler_checks(l);
        if e.holds() {
            Ok(())
        } else {
            Err(format!("Q(-1) = {}, Q'(-1) = {}, |Mi| = {}", e.value, e.derivative, e.mi_count))
        }
    })
}

pub fn check_degree_symmetry(corpus: &Corpus) -> Result<SuiteReport> {
    on_generated_lattices(corpus, |l| {
        let d = d_vectors(l);
        let census = mi_antichain_census(l);
        if d.minus == d.plus && d.minus == census {
            Ok(())
        } else {
            Err(format!("d⁻ = {}, d⁺ = {}, antichains of Mi = {}", d.minus, d.plus, census))
        }
    })
}

fn family_instance(origin: String, poset: Poset) -> Result<Instance> {
    Ok(Instance {
        origin,
        lattice: filter_lattice(&poset)?,
        poset,
    })
}

/// Every split `m, n ≥ 2` with `m + n − 2 ≤ max`.
pub fn check_fibonacci(max: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    for total in 2..=max + 2 {
        for m in 2..=total - 2 {
            let n = total - m;
            let rep = verify_fibonacci_decomposition(m, n)?;
            let inst = || family_instance(format!("fence {}", m + n - 2), fence(m + n - 2));
            let ok = rep.holds();
            if ok {
                r.checked += 1;
            } else {
                r.check(false, &inst()?, || format!("m={m},n={n}: {rep:?}"));
            }
            r.lines.push(format!("m={m},n={n},{}", if ok { "ok" } else { "FAILED" }));
        }
    }
    Ok(r)
}

/// Every crown `⋈_{2n}` with `4 ≤ 2n ≤ max`.
pub fn check_lucas(max: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    for n in 2..=max / 2 {
        let rep = verify_lucas_decomposition(n)?;
        let ok = rep.holds();
        if ok {
            r.checked += 1;
        } else {
            let inst = family_instance(format!("crown {}", 2 * n), crate::families::crown(2 * n)?)?;
            r.check(false, &inst, || format!("n={n}: {rep:?}"));
        }
        r.lines.push(format!("n={n},{}", if ok { "ok" } else { "FAILED" }));
    }
    Ok(r)
}

/// Hasse diagram of `F(Z_n)` against the string-model Fibonacci cube, `0 ≤ n ≤ max`.
pub fn check_fibonacci_cubes(max: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    for n in 0..=max {
        let inst = family_instance(format!("fence {n}"), fence(n))?;
        let ok = graph_isomorphic(&CubeGraph::covering_graph(&inst.lattice), &fibonacci_cube(n))?;
        r.check(ok, &inst, || format!("covering graph of F(Z_{n}) is not Γ_{n}"));
        r.lines.push(format!("cube n={n},{}", if ok { "ok" } else { "FAILED" }));
    }
    Ok(r)
}

pub trait VerifySuite: Send + Sync {
    fn name(&self) -> &'static str;

    fn describe(&self) -> &'static str;

    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport>;
}

type CorpusCheck = fn(&Corpus) -> Result<SuiteReport>;

/// A suite over the exhaustive classes up to `exhaustive` points plus random posets.
struct CorpusSuite {
    name: &'static str,
    describe: &'static str,
    labeled: bool,
    exhaustive: usize,
    trials: usize,
    max_size: usize,
    check: CorpusCheck,
}

impl VerifySuite for CorpusSuite {
    fn name(&self) -> &'static str {
        self.name
    }

    fn describe(&self) -> &'static str {
        self.describe
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport> {
        let base = if self.labeled {
            Corpus::new().with_labeled(self.exhaustive)?
        } else {
            Corpus::new().with_unlabeled(self.exhaustive)?
        };
        let corpus = base.with_random(
            cfg.seed,
            cfg.trials.unwrap_or(self.trials),
            cfg.max_size.unwrap_or(self.max_size),
        )?;
        (self.check)(&corpus)
    }
}

struct FibonacciSuite;

impl VerifySuite for FibonacciSuite {
    fn name(&self) -> &'static str {
        "fibonacci"
    }

    fn describe(&self) -> &'static str {
        "fence decompositions, Fibonacci identities and cube graphs"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport> {
        let max = cfg.max.unwrap_or(16);
        let mut r = check_fibonacci(max)?;
        r.merge(check_fibonacci_cubes(max.min(9))?);
        Ok(r)
    }
}

struct LucasSuite;

impl VerifySuite for LucasSuite {
    fn name(&self) -> &'static str {
        "lucas"
    }

    fn describe(&self) -> &'static str {
        "crown decompositions, Lucas identities and cube graphs"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport> {
        check_lucas(cfg.max.unwrap_or(10))
    }
}

/// Every corpus check on seeded random posets only.
struct RandomSuite;

impl VerifySuite for RandomSuite {
    fn name(&self) -> &'static str {
        "random"
    }

    fn describe(&self) -> &'static str {
        "all structural and enumerative checks on seeded random posets"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport> {
        let corpus = Corpus::new().with_random(
            cfg.seed,
            cfg.trials.unwrap_or(100),
            cfg.max_size.unwrap_or(6),
        )?;
        let mut r = check_birkhoff(&corpus);
        r.merge(check_cutting_equivalence(&corpus));
        for check in [
            check_expansion_counts as CorpusCheck,
            check_rank_recurrences,
            check_qd_recurrences,
            check_binomial,
            check_euler,
            check_degree_symmetry,
        ] {
            r.merge(check(&corpus)?);
        }
        r.lines.retain(|l| !l.starts_with("lattices") && !l.starts_with("cuttings"));
        Ok(r)
    }
}

pub struct SuiteRegistry {
    suites: Vec<Box<dyn VerifySuite>>,
}

impl Default for SuiteRegistry {
    fn default() -> Self {
        let mut r = SuiteRegistry { suites: Vec::new() };
        let corpus = |name, describe, check: CorpusCheck| CorpusSuite {
            name,
            describe,
            labeled: false,
            exhaustive: 5,
            trials: 200,
            max_size: 7,
            check,
        };
        r.register(Box::new(CorpusSuite {
            labeled: true,
            exhaustive: 4,
            trials: 1000,
            max_size: 8,
            ..corpus("birkhoff", "Mi(F(P)) is P and |F(P)| counts antichains", |c| Ok(check_birkhoff(c)))
        }));
        r.register(Box::new(corpus(
            "cutting-equivalence",
            "the four cutting tests agree on every interval",
            |c| Ok(check_cutting_equivalence(c)),
        )));
        r.register(Box::new(corpus(
            "expansion-counts",
            "|L⊞K| = |L| + |K| and the new element splits back into (P, S)",
            check_expansion_counts,
        )));
        r.register(Box::new(corpus(
            "rank-recurrence",
            "rank generating function of L⊞K from L and K",
            check_rank_recurrences,
        )));
        r.register(Box::new(corpus(
            "q-d-recurrences",
            "cube and degree counts of L⊞K from L and K",
            check_qd_recurrences,
        )));
        r.register(Box::new(corpus(
            "binomial",
            "q is the binomial transform of d⁻",
            check_binomial,
        )));
        r.register(Box::new(corpus(
            "euler",
            "Q(-1) = 1 and Q'(-1) = |Mi|",
            check_euler,
        )));
        r.register(Box::new(corpus(
            "degrees",
            "d⁻ = d⁺ = antichain census of Mi",
            check_degree_symmetry,
        )));
        r.register(Box::new(FibonacciSuite));
        r.register(Box::new(LucasSuite));
        r.register(Box::new(RandomSuite));
        r
    }
}

impl SuiteRegistry {
    pub fn register(&mut self, suite: Box<dyn VerifySuite>) {
        self.suites.retain(|s| s.name() != suite.name());
        self.suites.push(suite);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn VerifySuite> {
        self.suites.iter().find(|s| s.name() == name).map(|s| s.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn VerifySuite> {
        self.suites.iter().map(|s| s.as_ref())
    }
}
