//! Oracle-equivalence sweeps: every closed form checked against exhaustive
//! enumeration over a fixed parameter grid.
//!
//! The sweeps live in a static [`manifest`]; each entry names the identity
//! it checks, the suite it belongs to, and a runner that records one outcome
//! per grid cell in a [`Tally`]. Resource refusals are recorded as skips,
//! not failures.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{is_prime, jordan_totient, NamedFn};
use crate::congruence::{self, CongruenceProblem};
use crate::enumerate::{self, Budget};
use crate::error::Result;
use crate::symfield::{self, quad_form_count, QuadraticForm, SymSystem};
use crate::totient::{self, TotientSpec};
use crate::ZeroCount;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Symfield,
    Totient,
    Menon,
    Congruence,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Symfield, Suite::Totient, Suite::Menon, Suite::Congruence];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Symfield => "symfield",
            Suite::Totient => "totient",
            Suite::Menon => "menon",
            Suite::Congruence => "congruence",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One entry of the manifest.
pub struct Sweep {
    /// Position in the manifest, starting at 1.
    pub id: u8,
    pub name: &'static str,
    pub suite: Suite,
    pub summary: &'static str,
    run: fn(&mut Tally, Budget),
}

impl fmt::Debug for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sweep").field("id", &self.id).field("name", &self.name).field("suite", &self.suite).finish()
    }
}

const MAX_NOTES: usize = 20;

/// Outcome counts for one sweep. `notes` keeps the first few failure and
/// skip reasons.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    pub notes: Vec<String>,
}

impl Tally {
    pub fn total(&self) -> u64 {
        self.passed + self.failed + self.skipped
    }

    /// No comparison disagreed.
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    /// No comparison disagreed and none was skipped.
    pub fn ok_strict(&self) -> bool {
        self.failed == 0 && self.skipped == 0
    }

    fn note(&mut self, s: String) {
        if self.notes.len() < MAX_NOTES {
            self.notes.push(s);
        }
    }

    /// Records one cell. Budget errors count as skips, other errors as failures.
    pub fn check(&mut self, label: impl fmt::Display, outcome: Result<bool>) {
        match outcome {
            Ok(true) => self.passed += 1,
            Ok(false) => {
                self.failed += 1;
                self.note(format!("FAIL {label}"));
            }
            Err(e) if e.is_budget() => {
                self.skipped += 1;
                self.note(format!("SKIP {label}: {e}"));
            }
            Err(e) => {
                self.failed += 1;
                self.note(format!("FAIL {label}: {e}"));
            }
        }
    }

    /// Records whether two fallible counts are both available and equal.
    pub fn same<A, B>(&mut self, label: impl fmt::Display, a: Result<A>, b: Result<B>)
    where
        A: PartialEq<B> + fmt::Debug,
        B: fmt::Debug,
    {
        match (a, b) {
            (Ok(a), Ok(b)) if a == b => self.passed += 1,
            (Ok(a), Ok(b)) => {
                self.failed += 1;
                self.note(format!("FAIL {label}: {a:?} != {b:?}"));
            }
            (Err(e), _) | (_, Err(e)) => self.check(label, Err(e)),
        }
    }
}

impl fmt::Display for Tally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} ok", self.passed, self.total())?;
        if self.failed > 0 {
            write!(f, ", {} failed", self.failed)?;
        }
        if self.skipped > 0 {
            write!(f, ", {} skipped", self.skipped)?;
        }
        Ok(())
    }
}

#[derive(Debug)]
pub struct Report {
    pub sweep: &'static Sweep,
    pub tally: Tally,
    pub elapsed: Duration,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.sweep.name, self.tally)
    }
}

static MANIFEST: [Sweep; 14] = [
    Sweep {
        id: 1,
        name: "e2",
        suite: Suite::Symfield,
        summary: "N_k(e2,p) closed form vs enumeration, odd p <= 31, 2 <= k <= 6, p^k <= 2e7",
        run: sweep_e2,
    },
    Sweep {
        id: 2,
        name: "e1e2",
        suite: Suite::Symfield,
        summary: "N_k(e1,e2,p) closed form vs enumeration on the e2 grid",
        run: sweep_e1e2,
    },
    Sweep {
        id: 3,
        name: "mod2",
        suite: Suite::Symfield,
        summary: "p = 2 sieved binomial sums for e2, e1e2 and e_l (l <= 4) vs enumeration, k <= 20",
        run: sweep_mod2,
    },
    Sweep {
        id: 4,
        name: "extend-ek",
        suite: Suite::Symfield,
        summary: "adding e_k by inclusion-exclusion vs enumeration and the stated e_k sums",
        run: sweep_extend,
    },
    Sweep {
        id: 5,
        name: "quadratic-forms",
        suite: Suite::Symfield,
        summary: "quadratic form solution counts vs enumeration, 50 random forms per (k,p)",
        run: sweep_quadratic_forms,
    },
    Sweep {
        id: 6,
        name: "product-forms",
        suite: Suite::Totient,
        summary: "joint and individual totients vs enumeration of Z_n^k, n <= 50, k <= 3",
        run: sweep_product_forms,
    },
    Sweep {
        id: 7,
        name: "inclusion-exclusion",
        suite: Suite::Totient,
        summary: "joint/individual inclusion-exclusion bridge on enumerated subset values",
        run: sweep_inclusion_exclusion,
    },
    Sweep {
        id: 8,
        name: "jordan",
        suite: Suite::Totient,
        summary: "joint totient of e_1..e_k equals the Jordan totient, n <= 1e4, k <= 5",
        run: sweep_jordan,
    },
    Sweep {
        id: 9,
        name: "phi12",
        suite: Suite::Totient,
        summary: "individual totient for {e1,e2} vs the {e1,e_k} product and enumeration",
        run: sweep_phi12,
    },
    Sweep {
        id: 10,
        name: "phi123",
        suite: Suite::Totient,
        summary: "individual totient for {e1,e2,e3} vs enumeration, n <= 40",
        run: sweep_phi123,
    },
    Sweep {
        id: 11,
        name: "menon",
        suite: Suite::Menon,
        summary: "Menon-type identity, n <= 40, f in {id, 1, tau}",
        run: sweep_menon,
    },
    Sweep {
        id: 12,
        name: "rhs-invariance",
        suite: Suite::Congruence,
        summary: "restricted congruence counts depend on b only through gcd(b,n), n <= 30, k <= 3",
        run: sweep_rhs_invariance,
    },
    Sweep {
        id: 13,
        name: "g3-g4",
        suite: Suite::Congruence,
        summary: "three- and four-variable restricted congruences vs enumeration",
        run: sweep_g3_g4,
    },
    Sweep {
        id: 14,
        name: "ramanujan",
        suite: Suite::Congruence,
        summary: "generalized Ramanujan sum vs its exponential-sum definition, n <= 20",
        run: sweep_ramanujan,
    },
];

pub fn manifest() -> &'static [Sweep] {
    &MANIFEST
}

pub fn find(id: u8) -> Option<&'static Sweep> {
    MANIFEST.iter().find(|s| s.id == id)
}

/// Sweeps in manifest order, optionally restricted to one suite.
pub fn select(suite: Option<Suite>) -> impl Iterator<Item = &'static Sweep> {
    MANIFEST.iter().filter(move |s| suite.is_none_or(|x| s.suite == x))
}

pub fn run(sweep: &'static Sweep, budget: Budget) -> Report {
    let start = Instant::now();
    let mut tally = Tally::default();
    (sweep.run)(&mut tally, budget);
    Report { sweep, tally, elapsed: start.elapsed() }
}

fn primes_in(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo..=hi).filter(|&p| is_prime(p))
}

fn subsets(k: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..1 << k).map(move |mask| (1..=k).filter(|i| mask >> (i - 1) & 1 == 1).collect())
}

/// Odd primes p ≤ 31 and 2 ≤ k ≤ 6 with p^k ≤ 2·10⁷.
pub fn odd_prime_grid() -> Vec<(usize, u64)> {
    let mut grid = Vec::new();
    for p in primes_in(3, 31) {
        for k in 2..=6usize {
            if (p as u128).pow(k as u32) <= 20_000_000 {
                grid.push((k, p));
            }
        }
    }
    grid
}

fn brute_zeros(k: usize, indices: &[usize], p: u64, budget: Budget) -> Result<ZeroCount> {
    symfield::count_zeros_bruteforce(&SymSystem::joint(k, indices.iter().copied())?, p, budget)
}

fn sweep_e2(t: &mut Tally, budget: Budget) {
    let grid = odd_prime_grid();
    for &(k, p) in &grid {
        t.same(format!("N_e2 k={k} p={p}"), symfield::closed_n_e2(k, p), brute_zeros(k, &[2], p, budget));
    }
    let degenerate = grid.iter().filter(|(k, p)| (*k as u64 - 1).is_multiple_of(*p)).count();
    t.check("grid has at least two degenerate cells", Ok(degenerate >= 2));
}

fn sweep_e1e2(t: &mut Tally, budget: Budget) {
    let grid = odd_prime_grid();
    for &(k, p) in &grid {
        t.same(format!("N_e1e2 k={k} p={p}"), symfield::closed_n_e1e2(k, p), brute_zeros(k, &[1, 2], p, budget));
    }
    let degenerate = grid.iter().filter(|(k, p)| (*k as u64).is_multiple_of(*p)).count();
    t.check("grid has at least two degenerate cells", Ok(degenerate >= 2));
}

fn sweep_mod2(t: &mut Tally, budget: Budget) {
    for k in 1..=20usize {
        if k >= 2 {
            t.same(format!("N_e2 k={k} p=2"), symfield::closed_n_e2(k, 2), brute_zeros(k, &[2], 2, budget));
            t.same(format!("N_e1e2 k={k} p=2"), symfield::closed_n_e1e2(k, 2), brute_zeros(k, &[1, 2], 2, budget));
        }
        for l in 1..=k.min(4) {
            t.same(format!("N_e{l} k={k} p=2"), symfield::closed_n_el_mod2(l, k), brute_zeros(k, &[l], 2, budget));
        }
    }
    t.same("N_3(e2,2) = 4", symfield::closed_n_e2(3, 2), Ok(ZeroCount::from(4u64)));
    t.same("N_3(e3,2) = 7", symfield::closed_n_el_mod2(3, 3), Ok(ZeroCount::from(7u64)));
}

fn sweep_extend(t: &mut Tally, budget: Budget) {
    for p in [2u64, 3, 5, 7] {
        for k in 3..=5usize {
            for j in [vec![1usize], vec![2], vec![1, 2]] {
                let mut base = |m: usize, sub: &[usize]| {
                    symfield::count_zeros(&SymSystem::joint(m, sub.iter().copied())?, p, budget)
                };
                let extended = symfield::extend_with_ek(&j, k, p, &mut base);
                let mut full = j.clone();
                full.push(k);
                t.same(format!("extend J={j:?} k={k} p={p}"), extended, brute_zeros(k, &full, p, budget));
            }
        }
    }
    // The stated e_k sums, whose last terms are (−1)^k(kp − 1) and (−1)^k(k − 1).
    for p in [2u64, 3, 5, 7, 11, 13] {
        for k in 3..=10usize {
            let mut base =
                |m: usize, sub: &[usize]| symfield::count_zeros_closed(&SymSystem::joint(m, sub.iter().copied())?, p);
            t.same(
                format!("N_k(e2,ek) stated sum k={k} p={p}"),
                symfield::closed_n_e2_ek(k, p),
                symfield::extend_with_ek(&[2], k, p, &mut base),
            );
            t.same(
                format!("N_k(e1,e2,ek) stated sum k={k} p={p}"),
                symfield::closed_n_e1e2_ek(k, p),
                symfield::extend_with_ek(&[1, 2], k, p, &mut base),
            );
        }
    }
}

/// A random symmetric matrix over F_p. Samples with `shape` 0 are the zero
/// matrix and samples with `shape` 1 repeat a coordinate (so are singular);
/// the rest are uniform.
fn random_form(rng: &mut ChaCha8Rng, k: usize, p: u64, shape: usize) -> Result<QuadraticForm> {
    let size = if shape == 1 && k >= 2 { k - 1 } else { k };
    let mut m = vec![vec![0u64; size]; size];
    if shape != 0 {
        for i in 0..size {
            for j in 0..=i {
                let v = rng.gen_range(0..p);
                m[i][j] = v;
                m[j][i] = v;
            }
        }
    }
    // Coordinate i of the k-dimensional form reads coordinate min(i, size − 1).
    let src = |i: usize| i.min(size - 1);
    let matrix = (0..k).map(|i| (0..k).map(|j| m[src(i)][src(j)]).collect()).collect();
    QuadraticForm::new(p, matrix)
}

fn quad_histogram(form: &QuadraticForm, budget: Budget) -> Result<Vec<u64>> {
    let p = form.p();
    enumerate::par_fold(
        p,
        form.dim(),
        budget,
        || vec![0u64; p as usize],
        |mut h, x| {
            h[form.eval(x) as usize] += 1;
            h
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )
}

fn sweep_quadratic_forms(t: &mut Tally, budget: Budget) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f0e5);
    for k in 1..=4usize {
        for p in [3u64, 5, 7, 13] {
            for sample in 0..50usize {
                let shape = sample % 5;
                let label = format!("form k={k} p={p} sample={sample}");
                let form = match random_form(&mut rng, k, p, shape) {
                    Ok(f) => f,
                    Err(e) => {
                        t.check(label, Err(e));
                        continue;
                    }
                };
                if shape <= 1 && k >= 2 {
                    t.check(format!("{label} is degenerate"), Ok(form.is_degenerate()));
                }
                let closed: Vec<ZeroCount> = (0..p as i64).map(|b| quad_form_count(&form, b)).collect();
                let total: BigInt = closed.iter().map(|c| c.to_bigint()).sum();
                t.check(format!("{label} sums to p^k"), Ok(total == BigInt::from(p).pow(k as u32)));
                let brute =
                    quad_histogram(&form, budget).map(|h| h.into_iter().map(ZeroCount::from).collect::<Vec<_>>());
                t.same(label, Ok(closed), brute);
            }
        }
    }
}

fn sweep_product_forms(t: &mut Tally, budget: Budget) {
    for n in 1..=50u64 {
        for k in 1..=3usize {
            for j in subsets(k) {
                for individual in [false, true] {
                    let label = format!("{} J={j:?} k={k} n={n}", if individual { "phi" } else { "varphi" });
                    let spec = if individual {
                        SymSystem::individual(k, j.iter().copied())
                    } else {
                        SymSystem::joint(k, j.iter().copied())
                    }
                    .and_then(|sys| TotientSpec::new(sys, n));
                    match spec {
                        Ok(spec) => {
                            t.same(label, totient::totient_closed(&spec), totient::totient_bruteforce(&spec, budget))
                        }
                        Err(e) => t.check(label, Err(e)),
                    }
                }
            }
        }
    }
}

fn sweep_inclusion_exclusion(t: &mut Tally, budget: Budget) {
    let k = 3usize;
    for p in [3u64, 5] {
        for a in 1..=2u32 {
            let n = p.pow(a);
            let values = |individual: bool| -> Result<Vec<(Vec<usize>, BigInt)>> {
                subsets(k)
                    .map(|j| {
                        let v = if individual {
                            totient::phi_bruteforce(&SymSystem::individual(k, j.iter().copied())?, n, budget)?
                        } else {
                            totient::varphi_bruteforce(&SymSystem::joint(k, j.iter().copied())?, n, budget)?
                        };
                        Ok((j, v.to_bigint()))
                    })
                    .collect()
            };
            let (joint, indiv) = match (values(false), values(true)) {
                (Ok(x), Ok(y)) => (x, y),
                (Err(e), _) | (_, Err(e)) => {
                    t.check(format!("subset values n={n}"), Err(e));
                    continue;
                }
            };
            let lookup = |table: &[(Vec<usize>, BigInt)], s: &[usize]| -> Result<BigInt> {
                Ok(table.iter().find(|(j, _)| j == s).expect("every subset tabulated").1.clone())
            };
            for (j, value) in &joint {
                let from_indiv = totient::alternating_subset_sum(j, |s| lookup(&indiv, s));
                t.same(format!("varphi from phi J={j:?} n={n}"), from_indiv, Ok(value.clone()));
            }
            for (j, value) in &indiv {
                let from_joint = totient::alternating_subset_sum(j, |s| lookup(&joint, s));
                t.same(format!("phi from varphi J={j:?} n={n}"), from_joint, Ok(value.clone()));
            }
        }
    }
}

fn sweep_jordan(t: &mut Tally, _budget: Budget) {
    for k in 1..=5usize {
        for n in 1..=10_000u64 {
            let closed = SymSystem::joint(k, 1..=k)
                .and_then(|sys| TotientSpec::new(sys, n))
                .and_then(|spec| totient::totient_closed(&spec));
            t.same(format!("jordan k={k} n={n}"), closed, jordan_totient(k as u32, n));
        }
    }
}

fn sweep_phi12(t: &mut Tally, budget: Budget) {
    for n in 1..=500u64 {
        t.same(format!("phi12 vs toth k=2 n={n}"), totient::closed_phi_12(2, n), totient::toth_phi_1k(2, n));
    }
    for k in 2..=3usize {
        for n in 1..=40u64 {
            let brute = SymSystem::individual(k, [1, 2]).and_then(|sys| totient::phi_bruteforce(&sys, n, budget));
            t.same(format!("phi12 k={k} n={n}"), totient::closed_phi_12(k, n), brute);
        }
    }
    t.same("phi12(2, 9) = 18", totient::closed_phi_12(2, 9), Ok(ZeroCount::from(18u64)));
}

fn sweep_phi123(t: &mut Tally, budget: Budget) {
    for n in 1..=40u64 {
        let brute = SymSystem::individual(3, [1, 2, 3]).and_then(|sys| totient::phi_bruteforce(&sys, n, budget));
        t.same(format!("phi123 n={n}"), totient::closed_phi_123(n), brute);
    }
    t.same("phi123(5) = 40", totient::closed_phi_123(5), Ok(ZeroCount::from(40u64)));
    t.same("phi123(2) = 1", totient::closed_phi_123(2), Ok(ZeroCount::from(1u64)));
}

fn sweep_menon(t: &mut Tally, budget: Budget) {
    let systems = [(1usize, vec![1usize]), (2, vec![1, 2]), (3, vec![1, 2, 3])];
    let fns = [("id", NamedFn::Identity), ("one", NamedFn::One), ("tau", NamedFn::Tau)];
    for n in 1..=40u64 {
        for (k, j) in &systems {
            let sys = match SymSystem::individual(*k, j.iter().copied()) {
                Ok(s) => s,
                Err(e) => {
                    t.check(format!("menon k={k} n={n}"), Err(e));
                    continue;
                }
            };
            for (name, f) in &fns {
                t.same(
                    format!("menon k={k} J={j:?} f={name} n={n}"),
                    totient::menon_lhs(&sys, n, f, budget),
                    totient::menon_rhs(&sys, n, f, budget),
                );
            }
        }
    }
    let classical =
        SymSystem::individual(1, [1]).and_then(|sys| totient::menon_lhs(&sys, 6, &NamedFn::Identity, budget));
    t.same("sum of gcd(a-1, 6) over units = 8", classical, Ok(BigInt::from(8)));
}

fn sweep_rhs_invariance(t: &mut Tally, budget: Budget) {
    let constraint_sets = [vec![1usize], vec![2], vec![1, 2], vec![2, 3], vec![1, 2, 3]];
    for n in 1..=30u64 {
        for k in 1..=3usize {
            for j in constraint_sets.iter().filter(|j| j.iter().all(|&i| i <= k)) {
                let label = format!("J={j:?} k={k} n={n}");
                let prob = match CongruenceProblem::symmetric(k, 0, n, j.iter().copied()) {
                    Ok(p) => p,
                    Err(e) => {
                        t.check(label, Err(e));
                        continue;
                    }
                };
                let hist = match congruence::rhs_histogram(&prob, budget) {
                    Ok(h) => h,
                    Err(e) => {
                        t.check(label, Err(e));
                        continue;
                    }
                };
                let class_invariant = (0..n).all(|b| hist[b as usize] == hist[(b.gcd(&n) % n) as usize]);
                t.check(format!("gcd-class invariance {label}"), Ok(class_invariant));
                let unit_counts: Vec<u64> = (0..n).filter(|b| b.gcd(&n) == 1).map(|b| hist[b as usize]).collect();
                t.check(format!("fiber uniformity {label}"), Ok(unit_counts.windows(2).all(|w| w[0] == w[1])));
                for b in (0..n).filter(|b| b.gcd(&n) == 1) {
                    t.same(
                        format!("unit rhs b={b} {label}"),
                        congruence::count_unit_rhs(&prob.with_rhs(b as i64), budget),
                        Ok(ZeroCount::from(hist[b as usize])),
                    );
                }
            }
        }
    }
}

fn sweep_g3_g4(t: &mut Tally, budget: Budget) {
    let histogram = |k: usize, j: [usize; 2], n: u64| {
        CongruenceProblem::symmetric(k, 0, n, j).and_then(|prob| congruence::rhs_histogram(&prob, budget))
    };
    let units = |n: u64| (0..n).filter(move |m| m.gcd(&n) == 1);
    for n in 1..=50u64 {
        match histogram(3, [2, 3], n) {
            Ok(hist) => {
                for m in units(n) {
                    t.same(
                        format!("g3 m={m} n={n}"),
                        congruence::g3_closed(m as i64, n),
                        Ok(ZeroCount::from(hist[m as usize])),
                    );
                }
            }
            Err(e) => t.check(format!("g3 n={n}"), Err(e)),
        }
    }
    for n in (1..=27u64).step_by(2) {
        match histogram(4, [3, 4], n) {
            Ok(hist) => {
                for m in units(n) {
                    t.same(
                        format!("g4 m={m} n={n}"),
                        congruence::g4_closed(m as i64, n),
                        Ok(ZeroCount::from(hist[m as usize])),
                    );
                }
            }
            Err(e) => t.check(format!("g4 n={n}"), Err(e)),
        }
    }
    for n in (2..=50u64).step_by(2) {
        for m in units(n) {
            t.same(format!("g4 m={m} n={n} is zero"), congruence::g4_closed(m as i64, n), Ok(ZeroCount::default()));
        }
    }
    for n in [2u64, 4, 6] {
        match histogram(4, [3, 4], n) {
            Ok(hist) => {
                let all_zero = units(n).all(|m| hist[m as usize] == 0);
                t.check(format!("g4 enumeration n={n} is zero"), Ok(all_zero));
            }
            Err(e) => t.check(format!("g4 enumeration n={n}"), Err(e)),
        }
    }
    t.same("g3(1, 5) = 10", congruence::g3_closed(1, 5), Ok(ZeroCount::from(10u64)));
    t.same("g4(1, 3) = 5", congruence::g4_closed(1, 3), Ok(ZeroCount::from(5u64)));
}

/// Pre-rounding tolerance for the floating exponential sum.
pub const EXP_SUM_TOLERANCE: f64 = 1e-6;

fn sweep_ramanujan(t: &mut Tally, budget: Budget) {
    for n in 1..=20u64 {
        for k in 2..=3usize {
            for j in [vec![2usize], vec![1, 2]] {
                for m in 0..n as i64 {
                    let label = format!("m={m} n={n} k={k} J={j:?}");
                    let outcome = congruence::generalized_ramanujan(m, n, k, &j, budget).and_then(|exact| {
                        let direct = congruence::generalized_ramanujan_direct(m, n, k, &j, budget)?;
                        Ok(BigInt::from(direct.rounded()) == exact && direct.discrepancy() < EXP_SUM_TOLERANCE)
                    });
                    t.check(label, outcome);
                }
            }
        }
    }
}
