//! Exact integer arithmetic: factorization, quadratic character, classical
//! multiplicative functions, Lucas parity of binomials and Ramanujan sums.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ZeroCount;

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Miller-Rabin bases; deterministic for every n < 3.3 * 10^24.
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let ext = (a as i128 % m as i128).extended_gcd(&(m as i128));
    if ext.gcd != 1 {
        return None;
    }
    Some(ext.x.rem_euclid(m as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of a positive integer: strictly increasing primes,
/// each with exponent at least one. The factorization of 1 is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    pub fn is_one(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Reconstructs n as an arbitrary-precision integer.
    pub fn value(&self) -> BigUint {
        self.pairs.iter().fold(BigUint::one(), |acc, &(p, a)| acc * BigUint::from(p).pow(a))
    }

    /// All positive divisors in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, a) in &self.pairs {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..a {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::InvalidModulus(0));
    }
    let mut pairs = Vec::new();
    let mut rest = n;
    let mut push = |p: u64, rest: &mut u64| {
        let mut a = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            a += 1;
        }
        if a > 0 {
            pairs.push((p, a));
        }
    };
    push(2, &mut rest);
    let mut d = 3u64;
    while d <= TRIAL_DIVISION_LIMIT && d * d <= rest {
        push(d, &mut rest);
        d += 2;
    }
    if rest > 1 {
        let mut large = Vec::new();
        split_large(rest, &mut large);
        large.sort_unstable();
        for p in large {
            match pairs.last_mut() {
                Some((q, a)) if *q == p => *a += 1,
                _ => pairs.push((p, 1)),
            }
        }
    }
    Ok(Factorization { pairs })
}

/// Splits a cofactor with no prime factor below the trial-division limit.
fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// Returns a nontrivial factor of the odd composite `n`.
fn pollard_brent(n: u64) -> u64 {
    let sqrt = (n as f64).sqrt() as u64;
    for s in [sqrt.saturating_sub(1), sqrt, sqrt + 1] {
        if s.checked_mul(s) == Some(n) {
            return s;
        }
    }
    let step = |x: u64, c: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
    for c in 1..n {
        let mut y = 2u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y, c);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = step(y, c);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = step(ys, c);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("pollard rho exhausted all increments for {n}")
}

/// Value of the quadratic character on F_p, with the convention η(0) = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadChar {
    Zero,
    Residue,
    NonResidue,
}

impl QuadChar {
    pub fn value(self) -> i64 {
        match self {
            QuadChar::Zero => 0,
            QuadChar::Residue => 1,
            QuadChar::NonResidue => -1,
        }
    }
}

pub(crate) fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// η(a) on F_p for an odd prime p, via Euler's criterion.
pub fn quadratic_character(a: i64, p: u64) -> Result<QuadChar> {
    check_odd_prime(p)?;
    Ok(legendre((a as i128).rem_euclid(p as i128) as u64, p))
}

/// Euler's criterion; caller guarantees p is an odd prime and a < p.
pub(crate) fn legendre(a: u64, p: u64) -> QuadChar {
    if a.is_multiple_of(p) {
        return QuadChar::Zero;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        QuadChar::Residue
    } else {
        QuadChar::NonResidue
    }
}

/// ν(b): p − 1 at b ≡ 0, −1 on units.
pub fn nu(b: i64, p: u64) -> Result<i64> {
    check_prime(p)?;
    if (b as i128).rem_euclid(p as i128) == 0 {
        Ok(p as i64 - 1)
    } else {
        Ok(-1)
    }
}

/// C(j, l) mod 2. By Lucas, odd exactly when l is a submask of j.
pub fn binom_mod2(j: u64, l: u64) -> u8 {
    (j & l == l) as u8
}

pub fn moebius(n: u64) -> Result<i64> {
    let f = factorize(n)?;
    Ok(moebius_of(&f))
}

pub(crate) fn moebius_of(f: &Factorization) -> i64 {
    if f.pairs.iter().any(|&(_, a)| a > 1) {
        0
    } else if f.pairs.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> Result<ZeroCount> {
    jordan_totient(1, n)
}

/// Euler's totient as a machine integer; always fits since φ(n) ≤ n.
pub(crate) fn euler_phi_u64(f: &Factorization) -> u64 {
    f.pairs.iter().map(|&(p, a)| p.pow(a - 1) * (p - 1)).product()
}

/// J_k(n) = n^k ∏ (1 − p^−k), evaluated per prime power as p^{k(a−1)}(p^k − 1).
pub fn jordan_totient(k: u32, n: u64) -> Result<ZeroCount> {
    if k == 0 {
        return Err(Error::ArityTooSmall { got: 0, min: 1 });
    }
    let f = factorize(n)?;
    let value = f.pairs.iter().fold(BigUint::one(), |acc, &(p, a)| {
        let p = BigUint::from(p);
        acc * p.pow(k * (a - 1)) * (p.pow(k) - 1u32)
    });
    Ok(ZeroCount::from(value))
}

/// Number of positive divisors.
pub fn divisor_count(n: u64) -> Result<u64> {
    Ok(factorize(n)?.pairs.iter().map(|&(_, a)| a as u64 + 1).product())
}

/// An arithmetic function: a deterministic map from positive integers to integers.
pub trait ArithmeticFn: Sync {
    fn eval(&self, n: u64) -> i64;
}

impl<F> ArithmeticFn for F
where
    F: Fn(u64) -> i64 + Sync,
{
    fn eval(&self, n: u64) -> i64 {
        self(n)
    }
}

/// The arithmetic functions exposed by name on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedFn {
    Identity,
    One,
    /// Divisor count d(n).
    Tau,
}

impl ArithmeticFn for NamedFn {
    fn eval(&self, n: u64) -> i64 {
        match self {
            NamedFn::Identity => n as i64,
            NamedFn::One => 1,
            NamedFn::Tau => divisor_count(n).expect("arithmetic functions take n >= 1") as i64,
        }
    }
}

/// (μ * f)(d) = Σ_{e | d} μ(d/e) f(e).
pub fn dirichlet_convolve_mu(f: &dyn ArithmeticFn, d: u64) -> Result<BigInt> {
    let fac = factorize(d)?;
    let mut acc = BigInt::zero();
    for e in fac.divisors() {
        let mu = moebius(d / e)?;
        if mu != 0 {
            acc += BigInt::from(mu) * BigInt::from(f.eval(e));
        }
    }
    Ok(acc)
}

/// c(m, n) = Σ_{d | gcd(m, n)} d μ(n/d).
pub fn ramanujan_sum(m: i64, n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::InvalidModulus(0));
    }
    let g = m.unsigned_abs().gcd(&n);
    let mut acc = 0i64;
    for d in factorize(g)?.divisors() {
        acc += d as i64 * moebius(n / d)?;
    }
    Ok(acc)
}
