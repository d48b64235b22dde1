//! Generalized totients over elementary symmetric systems.
//!
//! For J ⊆ {1..k}:
//!
//! * the joint totient counts x ∈ Z_n^k with gcd(e_j(x) for j ∈ J, n) = 1;
//! * the individual totient counts x with gcd(e_j(x), n) = 1 for every j ∈ J.
//!
//! Both are multiplicative. The joint local factor at p^a is
//! p^{k(a−1)}(p^k − N_J(p)); the individual one follows by inclusion–exclusion
//! over the non-empty subsets of J. Everything here is integer arithmetic,
//! with the empty system valued 0 and n = 1 valued 1.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{dirichlet_convolve_mu, euler_phi_u64, factorize, ArithmeticFn, Factorization};
use crate::enumerate::{self, Budget};
use crate::error::{Error, Result};
use crate::symfield::{self, Mode, SymSystem};
use crate::ZeroCount;

/// A totient to evaluate: the constraint system (which carries the mode) and n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TotientSpec {
    system: SymSystem,
    n: u64,
}

impl TotientSpec {
    pub fn new(system: SymSystem, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModulus(0));
        }
        Ok(TotientSpec { system, n })
    }

    pub fn system(&self) -> &SymSystem {
        &self.system
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.system.k()
    }

    pub fn mode(&self) -> Mode {
        self.system.mode()
    }
}

/// Evaluates the totient in `spec`'s mode, enumerating F_p^k where no closed
/// zero count exists.
pub fn totient(spec: &TotientSpec, budget: Budget) -> Result<ZeroCount> {
    match spec.mode() {
        Mode::Joint => varphi(&spec.system, spec.n, budget),
        Mode::Individual => phi(&spec.system, spec.n, budget),
    }
}

/// Closed-form-only evaluation; fails with [`Error::NoClosedForm`] rather
/// than enumerating.
pub fn totient_closed(spec: &TotientSpec) -> Result<ZeroCount> {
    match spec.mode() {
        Mode::Joint => product_over_primes(&spec.system, spec.n, None, local_varphi),
        Mode::Individual => product_over_primes(&spec.system, spec.n, None, local_phi),
    }
}

pub fn totient_bruteforce(spec: &TotientSpec, budget: Budget) -> Result<ZeroCount> {
    match spec.mode() {
        Mode::Joint => varphi_bruteforce(&spec.system, spec.n, budget),
        Mode::Individual => phi_bruteforce(&spec.system, spec.n, budget),
    }
}

/// Joint totient via the product form.
pub fn varphi(sys: &SymSystem, n: u64, budget: Budget) -> Result<ZeroCount> {
    product_over_primes(sys, n, Some(budget), local_varphi)
}

/// Individual totient via inclusion–exclusion over joint local factors.
pub fn phi(sys: &SymSystem, n: u64, budget: Budget) -> Result<ZeroCount> {
    product_over_primes(sys, n, Some(budget), local_phi)
}

/// Joint totient rebuilt from individual local factors, the inverse
/// inclusion–exclusion: φ_J(p^a) = Σ_{∅≠S⊆J} (−1)^{|S|+1} φ̂_S(p^a).
pub fn varphi_via_phi(sys: &SymSystem, n: u64, budget: Budget) -> Result<ZeroCount> {
    product_over_primes(sys, n, Some(budget), |sys, p, a, fallback| {
        alternating_subset_sum(sys.indices(), |sub| {
            let sub = SymSystem::joint(sys.k(), sub.iter().copied())?;
            local_phi(&sub, p, a, fallback)
        })
    })
}

fn product_over_primes<F>(sys: &SymSystem, n: u64, fallback: Option<Budget>, local: F) -> Result<ZeroCount>
where
    F: Fn(&SymSystem, u64, u32, Option<Budget>) -> Result<BigInt>,
{
    if n == 0 {
        return Err(Error::InvalidModulus(0));
    }
    if sys.is_empty() {
        return Ok(ZeroCount::default());
    }
    let mut acc = BigInt::one();
    for &(p, a) in factorize(n)?.pairs() {
        acc *= local(sys, p, a, fallback)?;
        if acc.is_zero() {
            break;
        }
    }
    ZeroCount::from_signed(acc)
}

fn zero_count(sys: &SymSystem, p: u64, fallback: Option<Budget>) -> Result<BigInt> {
    let n = match fallback {
        Some(budget) => symfield::count_zeros(sys, p, budget)?,
        None => symfield::count_zeros_closed(sys, p)?,
    };
    Ok(n.to_bigint())
}

fn lift(p: u64, a: u32, k: usize) -> BigInt {
    BigInt::from(p).pow(k as u32 * (a - 1))
}

/// p^{k(a−1)} (p^k − N_J(p)).
fn local_varphi(sys: &SymSystem, p: u64, a: u32, fallback: Option<Budget>) -> Result<BigInt> {
    let k = sys.k();
    let full = BigInt::from(p).pow(k as u32);
    Ok(lift(p, a, k) * (full - zero_count(sys, p, fallback)?))
}

fn local_phi(sys: &SymSystem, p: u64, a: u32, fallback: Option<Budget>) -> Result<BigInt> {
    alternating_subset_sum(sys.indices(), |sub| {
        let sub = SymSystem::joint(sys.k(), sub.iter().copied())?;
        local_varphi(&sub, p, a, fallback)
    })
}

/// Σ over non-empty S ⊆ `indices` of (−1)^{|S|+1} f(S).
pub fn alternating_subset_sum<F>(indices: &[usize], mut f: F) -> Result<BigInt>
where
    F: FnMut(&[usize]) -> Result<BigInt>,
{
    let m = indices.len();
    if m >= usize::BITS as usize {
        return Err(Error::InvalidInput(format!("{m} constraints is too many subsets")));
    }
    let mut acc = BigInt::zero();
    let mut sub = Vec::with_capacity(m);
    for mask in 1usize..(1 << m) {
        sub.clear();
        sub.extend((0..m).filter(|i| mask >> i & 1 == 1).map(|i| indices[i]));
        let v = f(&sub)?;
        if sub.len() % 2 == 1 {
            acc += v;
        } else {
            acc -= v;
        }
    }
    Ok(acc)
}

/// Local factor of the joint totient at p^a, closed forms with enumeration fallback.
pub fn varphi_prime_power(sys: &SymSystem, p: u64, a: u32, budget: Budget) -> Result<ZeroCount> {
    check_prime_power(p, a)?;
    if sys.is_empty() {
        return Ok(ZeroCount::default());
    }
    ZeroCount::from_signed(local_varphi(sys, p, a, Some(budget))?)
}

/// Local factor of the individual totient at p^a.
pub fn phi_prime_power(sys: &SymSystem, p: u64, a: u32, budget: Budget) -> Result<ZeroCount> {
    check_prime_power(p, a)?;
    if sys.is_empty() {
        return Ok(ZeroCount::default());
    }
    ZeroCount::from_signed(local_phi(sys, p, a, Some(budget))?)
}

fn check_prime_power(p: u64, a: u32) -> Result<()> {
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if a == 0 {
        return Err(Error::InvalidInput("prime power exponent must be at least 1".into()));
    }
    Ok(())
}

/// Unit table for Z_n.
fn units(n: u64) -> Vec<bool> {
    (0..n).map(|v| v.gcd(&n) == 1).collect()
}

fn count_tuples_mod_n<P>(sys: &SymSystem, n: u64, budget: Budget, accept: P) -> Result<ZeroCount>
where
    P: Fn(&[u64]) -> bool + Sync + Send,
{
    if n == 0 {
        return Err(Error::InvalidModulus(0));
    }
    if sys.is_empty() {
        return Ok(ZeroCount::default());
    }
    let top = sys.max_index();
    let count =
        enumerate::par_fold_elem_sym(n, sys.k(), top, budget, || 0u64, |c, _, e| c + accept(e) as u64, |a, b| a + b)?;
    Ok(ZeroCount::from(count))
}

/// Joint totient by enumerating Z_n^k.
pub fn varphi_bruteforce(sys: &SymSystem, n: u64, budget: Budget) -> Result<ZeroCount> {
    let indices = sys.indices().to_vec();
    count_tuples_mod_n(sys, n, budget, move |e| indices.iter().fold(n, |g, &j| g.gcd(&e[j])) == 1)
}

/// Individual totient by enumerating Z_n^k.
pub fn phi_bruteforce(sys: &SymSystem, n: u64, budget: Budget) -> Result<ZeroCount> {
    let indices = sys.indices().to_vec();
    let unit = units(n);
    count_tuples_mod_n(sys, n, budget, move |e| indices.iter().all(|&j| unit[e[j] as usize]))
}

fn check_arity(k: usize, min: usize) -> Result<()> {
    if k < min {
        return Err(Error::ArityTooSmall { got: k, min });
    }
    Ok(())
}

fn product_of_locals(n: u64, mut local: impl FnMut(u64, u32) -> Result<BigInt>) -> Result<ZeroCount> {
    let mut acc = BigInt::one();
    for &(p, a) in factorize(n)?.pairs() {
        acc *= local(p, a)?;
    }
    ZeroCount::from_signed(acc)
}

/// Individual totient for J = {1, 2}. Local factor at p^a:
/// p^{k(a−1)} (p^k − p^{k−1} + N_k(e₁,e₂,p) − N_k(e₂,p)).
pub fn closed_phi_12(k: usize, n: u64) -> Result<ZeroCount> {
    check_arity(k, 2)?;
    product_of_locals(n, |p, a| {
        let pk = BigInt::from(p).pow(k as u32);
        let pk1 = BigInt::from(p).pow(k as u32 - 1);
        let n12 = symfield::closed_n_e1e2(k, p)?.to_bigint();
        let n2 = symfield::closed_n_e2(k, p)?.to_bigint();
        Ok(lift(p, a, k) * (pk - pk1 + n12 - n2))
    })
}

/// h(p) of the three-variable product forms: 3 at p = 3, p − 1 when
/// p ≡ 1 (mod 3), p + 1 when p ≡ 2 (mod 3).
pub fn cubic_h(p: u64) -> BigInt {
    match p % 3 {
        0 => BigInt::from(3),
        1 => BigInt::from(p) - 1,
        _ => BigInt::from(p) + 1,
    }
}

/// Individual totient for k = 3, J = {1, 2, 3}. Local factor at p^a:
/// p^{3(a−1)} (p − 1)(p² − 3p + 6 − h(p)).
pub fn closed_phi_123(n: u64) -> Result<ZeroCount> {
    product_of_locals(n, |p, a| {
        let pb = BigInt::from(p);
        let quad = &pb * &pb - 3 * &pb + 6 - cubic_h(p);
        Ok(lift(p, a, 3) * (&pb - 1) * quad)
    })
}

/// Individual totient for J = {1, k} (and, by symmetry, {k−1, k}).
/// Local factor at p^a: p^{k(a−1)} (p − 1)((p − 1)^k − (−1)^k) / p.
pub fn toth_phi_1k(k: usize, n: u64) -> Result<ZeroCount> {
    check_arity(k, 2)?;
    product_of_locals(n, |p, a| {
        let pb = BigInt::from(p);
        let sign = if k.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
        let pm1: BigInt = &pb - 1;
        let numer = &pm1 * (pm1.pow(k as u32) - sign);
        let (q, r) = numer.div_rem(&pb);
        if !r.is_zero() {
            return Err(Error::InvariantViolation(format!("local factor for J={{1,{k}}} at p={p} is not integral")));
        }
        Ok(lift(p, a, k) * q)
    })
}

fn require_linear_constraint(sys: &SymSystem) -> Result<()> {
    if !sys.contains(1) {
        return Err(Error::InvalidInput("the Menon identity needs e_1 in the constraint set".into()));
    }
    Ok(())
}

/// Σ over x ∈ Z_n^k with every e_j(x), j ∈ J, a unit of f(gcd(x₁+⋯+x_k − 1, n)),
/// by enumeration.
pub fn menon_lhs(sys: &SymSystem, n: u64, f: &dyn ArithmeticFn, budget: Budget) -> Result<BigInt> {
    require_linear_constraint(sys)?;
    if n == 0 {
        return Err(Error::InvalidModulus(0));
    }
    let histogram = constrained_sum_histogram(sys, n, budget)?;
    // f is evaluated once per divisor of n.
    let mut cache = std::collections::HashMap::new();
    let mut acc = BigInt::zero();
    for (s, &count) in histogram.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let g = ((s as u64 + n - 1) % n).gcd(&n);
        let fv = *cache.entry(g).or_insert_with(|| f.eval(g));
        acc += BigInt::from(fv) * BigInt::from(count);
    }
    Ok(acc)
}

/// Histogram over s ∈ Z_n of constrained tuples (every e_j, j ∈ J, a unit)
/// with x₁+⋯+x_k ≡ s.
pub(crate) fn constrained_sum_histogram(sys: &SymSystem, n: u64, budget: Budget) -> Result<Vec<u64>> {
    let indices = sys.indices().to_vec();
    let unit = units(n);
    let top = sys.max_index().max(1);
    enumerate::par_fold_elem_sym(
        n,
        sys.k(),
        top,
        budget,
        || vec![0u64; n as usize],
        |mut hist, _, e| {
            if indices.iter().all(|&j| unit[e[j] as usize]) {
                hist[e[1] as usize] += 1;
            }
            hist
        },
        crate::congruence::add_histograms,
    )
}

/// φ̂_J(n) · Σ_{d | n} (μ * f)(d) / φ(d), with the sum in exact rationals.
pub fn menon_rhs(sys: &SymSystem, n: u64, f: &dyn ArithmeticFn, budget: Budget) -> Result<BigInt> {
    require_linear_constraint(sys)?;
    let fac: Factorization = factorize(n)?;
    let mut sum = BigRational::zero();
    for d in fac.divisors() {
        let conv = dirichlet_convolve_mu(f, d)?;
        let phi_d = euler_phi_u64(&factorize(d)?);
        sum += BigRational::new(conv, BigInt::from(phi_d));
    }
    let total = sum * BigRational::from_integer(phi(sys, n, budget)?.to_bigint());
    if !total.is_integer() {
        return Err(Error::InvariantViolation(format!("Menon right-hand side {total} is not an integer (n = {n})")));
    }
    Ok(total.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{euler_phi, jordan_totient, NamedFn};

    fn sys(k: usize, j: &[usize], mode: Mode) -> SymSystem {
        SymSystem::new(k, j.iter().copied(), mode).unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn varphi_examples() {
        let s = sys(2, &[2], Mode::Joint);
        assert_eq!(varphi(&s, 3, b()).unwrap(), 4u64);
        assert_eq!(varphi_bruteforce(&s, 3, b()).unwrap(), 4u64);
        let s = sys(2, &[1], Mode::Joint);
        assert_eq!(varphi(&s, 9, b()).unwrap(), 54u64);
        assert_eq!(varphi_bruteforce(&s, 9, b()).unwrap(), 54u64);
        for k in 1..=5 {
            let all = sys(k, &(1..=k).collect::<Vec<_>>(), Mode::Joint);
            for n in [1u64, 6, 12, 97, 360] {
                assert_eq!(varphi(&all, n, b()).unwrap(), jordan_totient(k as u32, n).unwrap());
            }
        }
    }

    #[test]
    fn phi_examples() {
        let s = sys(2, &[1, 2], Mode::Individual);
        assert_eq!(phi(&s, 9, b()).unwrap(), 18u64);
        assert_eq!(phi_bruteforce(&s, 9, b()).unwrap(), 18u64);
        assert_eq!(phi(&s, 2, b()).unwrap(), 0u64);
        let s3 = sys(3, &[1, 2, 3], Mode::Individual);
        assert_eq!(phi(&s3, 2, b()).unwrap(), 1u64);
        assert_eq!(phi_bruteforce(&s3, 2, b()).unwrap(), 1u64);
        // 54 + 36 − 72 from the joint values of {1}, {2}, {1,2} at 9.
        let v1 = varphi(&sys(2, &[1], Mode::Joint), 9, b()).unwrap();
        let v2 = varphi(&sys(2, &[2], Mode::Joint), 9, b()).unwrap();
        let v12 = varphi(&sys(2, &[1, 2], Mode::Joint), 9, b()).unwrap();
        assert_eq!((v1.to_u64(), v2.to_u64(), v12.to_u64()), (Some(54), Some(36), Some(72)));
    }

    #[test]
    fn conventions() {
        let one = sys(1, &[1], Mode::Joint);
        assert_eq!(varphi_bruteforce(&one, 12, b()).unwrap(), 4u64);
        assert_eq!(phi_bruteforce(&one.with_mode(Mode::Individual), 12, b()).unwrap(), 4u64);
        let e2 = sys(2, &[2], Mode::Joint);
        assert_eq!(varphi(&e2, 1, b()).unwrap(), 1u64);
        assert_eq!(varphi_bruteforce(&e2, 1, b()).unwrap(), 1u64);
        let empty = sys(2, &[], Mode::Joint);
        assert_eq!(varphi(&empty, 5, b()).unwrap(), 0u64);
        assert_eq!(phi(&empty, 5, b()).unwrap(), 0u64);
        assert_eq!(varphi_bruteforce(&empty, 5, b()).unwrap(), 0u64);
        assert_eq!(phi_bruteforce(&empty, 1, b()).unwrap(), 0u64);
        assert!(TotientSpec::new(e2, 0).is_err());
    }

    #[test]
    fn budget_error_names_the_prime() {
        // J = {3} at k = 4 has no closed form at odd p.
        let s = sys(4, &[3], Mode::Joint);
        let err = varphi(&s, 2 * 101, Budget::new(1_000)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { prime: Some(101), .. }), "{err:?}");
        assert_eq!(totient_closed(&TotientSpec::new(s, 202).unwrap()), Err(Error::NoClosedForm));
    }

    #[test]
    fn closed_phi_12_examples() {
        assert_eq!(closed_phi_12(2, 9).unwrap(), 18u64);
        assert_eq!(closed_phi_12(2, 2).unwrap(), 0u64);
        let at5 = closed_phi_12(2, 5).unwrap().to_u64().unwrap();
        assert_eq!(closed_phi_12(2, 45).unwrap(), 18 * at5);
        let s = sys(2, &[1, 2], Mode::Individual);
        assert_eq!(phi_bruteforce(&s, 45, b()).unwrap(), 18 * at5);
        assert!(closed_phi_12(1, 5).is_err());
    }

    /// The 2-power branch 2^{lk}(1/4 − sin(kπ/4) / (2·√2^k)), in floating point.
    #[test]
    fn closed_phi_12_two_power_branch() {
        for k in 2..=20usize {
            for l in 1..=3u32 {
                let trig = 2f64.powi((l as usize * k) as i32)
                    * (0.25 - (k as f64 * std::f64::consts::FRAC_PI_4).sin() / (2.0 * 2f64.sqrt().powi(k as i32)));
                let exact = closed_phi_12(k, 2u64.pow(l)).unwrap().to_u64().unwrap() as f64;
                assert!((trig - exact).abs() < 1e-6 * exact.max(1.0), "k={k} l={l}: {trig} vs {exact}");
            }
        }
    }

    /// h_k(p) read with the exponent (k−1)/2 and gcd against p matches the
    /// proof-derived local factor.
    #[test]
    fn h_k_reading_matches_proof_route() {
        use crate::arith::quadratic_character;
        for p in [3u64, 5, 7, 11, 13] {
            for k in 2..=12usize {
                let pb = BigInt::from(p);
                let eta = |a: i64| quadratic_character(a, p).unwrap().value();
                let sgn = |e: usize| if e.is_multiple_of(2) { 1i64 } else { -1 };
                let h = if k % 2 == 1 {
                    pb.pow((k as u32 - 3) / 2) * eta(sgn((k - 1) / 2) * k as i64)
                        - pb.pow((k as u32 - 1) / 2) * eta(sgn((k - 1) / 2) * (1 - (k as u64 - 1).gcd(&p) as i64))
                } else {
                    pb.pow((k as u32 - 2) / 2) * eta(sgn(k / 2) * (1 - (k as u64).gcd(&p) as i64))
                        - pb.pow((k as u32 - 2) / 2) * eta(sgn(k / 2 + 1) * (k as i64 - 1))
                };
                let stated = pb.pow(k as u32) - pb.pow(k as u32 - 1) - (&pb - 1) * pb.pow(k as u32 - 2) + (&pb - 1) * h;
                assert_eq!(closed_phi_12(k, p).unwrap().to_bigint(), stated, "k={k} p={p}");
            }
        }
    }

    #[test]
    fn phi_123_examples() {
        assert_eq!(closed_phi_123(5).unwrap(), 40u64);
        assert_eq!(closed_phi_123(2).unwrap(), 1u64);
        assert_eq!(closed_phi_123(1).unwrap(), 1u64);
        let s = sys(3, &[1, 2, 3], Mode::Individual);
        assert_eq!(phi_bruteforce(&s, 5, b()).unwrap(), 40u64);
    }

    #[test]
    fn toth_examples() {
        assert_eq!(toth_phi_1k(2, 9).unwrap(), closed_phi_12(2, 9).unwrap());
        assert_eq!(toth_phi_1k(2, 1).unwrap(), 1u64);
        // 125 · (4/5) · ((4/5)³ + 1/125) = 52.
        assert_eq!(toth_phi_1k(3, 5).unwrap(), 52u64);
        let s = sys(3, &[1, 3], Mode::Individual);
        assert_eq!(phi_bruteforce(&s, 5, b()).unwrap(), 52u64);
        let s = sys(3, &[2, 3], Mode::Individual);
        assert_eq!(phi_bruteforce(&s, 5, b()).unwrap(), 52u64);
    }

    #[test]
    fn inverse_bridge() {
        for n in [1u64, 4, 9, 12, 25, 30] {
            for j in [&[1usize, 2][..], &[2, 3], &[1, 2, 3]] {
                let s = sys(3, j, Mode::Joint);
                assert_eq!(varphi_via_phi(&s, n, b()).unwrap(), varphi(&s, n, b()).unwrap());
            }
        }
    }

    #[test]
    fn divisible_by_euler_phi_when_linear_constraint_present() {
        for n in 1..=60u64 {
            let phi_n = euler_phi(n).unwrap().to_u64().unwrap();
            for j in [&[1usize][..], &[1, 2], &[1, 3], &[1, 2, 3]] {
                let s = sys(3, j, Mode::Individual);
                let v = phi(&s, n, b()).unwrap().to_u64().unwrap();
                assert_eq!(v % phi_n, 0, "n={n} J={j:?}");
            }
        }
    }

    #[test]
    fn menon_examples() {
        let s1 = sys(1, &[1], Mode::Individual);
        assert_eq!(menon_lhs(&s1, 6, &NamedFn::Identity, b()).unwrap(), BigInt::from(8));
        assert_eq!(menon_rhs(&s1, 6, &NamedFn::Identity, b()).unwrap(), BigInt::from(8));
        let s2 = sys(2, &[1, 2], Mode::Individual);
        assert_eq!(menon_lhs(&s2, 9, &NamedFn::Identity, b()).unwrap(), BigInt::from(54));
        assert_eq!(menon_rhs(&s2, 9, &NamedFn::Identity, b()).unwrap(), BigInt::from(54));
        for n in [1u64, 7, 12, 30] {
            let expected = phi(&s2, n, b()).unwrap().to_bigint();
            assert_eq!(menon_lhs(&s2, n, &NamedFn::One, b()).unwrap(), expected);
            assert_eq!(menon_rhs(&s2, n, &NamedFn::One, b()).unwrap(), expected);
        }
        let no_linear = sys(2, &[2], Mode::Individual);
        assert!(menon_lhs(&no_linear, 5, &NamedFn::One, b()).is_err());
    }
}
