//! Restricted linear congruences a₁x₁ + ⋯ + a_kx_k ≡ b (mod n) where each
//! constrained elementary symmetric polynomial of the unknowns must be a unit
//! mod n.
//!
//! For a unit right-hand side the count equals φ̂_{F′}(n)/φ(n), where F′ adds
//! the linear form to the constraint set, and a homogeneous constraint set
//! makes the count depend on b only through gcd(b, n).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{check_prime, euler_phi_u64, factorize, mul_mod, ramanujan_sum};
use crate::enumerate::{self, Budget};
use crate::error::{Error, Result};
use crate::symfield::{Mode, SymSystem};
use crate::totient::{self, cubic_h};
use crate::ZeroCount;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CongruenceProblem {
    coeffs: Vec<u64>,
    b: u64,
    n: u64,
    constraint: SymSystem,
}

impl CongruenceProblem {
    /// Coefficients and right-hand side are reduced mod n; the constraint is
    /// always read with one gcd per polynomial.
    pub fn new(coeffs: Vec<i64>, b: i64, n: u64, constraint: SymSystem) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModulus(0));
        }
        if coeffs.is_empty() {
            return Err(Error::ArityTooSmall { got: 0, min: 1 });
        }
        if constraint.k() != coeffs.len() {
            return Err(Error::InvalidInput(format!(
                "constraint arity {} does not match {} coefficients",
                constraint.k(),
                coeffs.len()
            )));
        }
        let reduce = |v: i64| (v as i128).rem_euclid(n as i128) as u64;
        Ok(CongruenceProblem {
            coeffs: coeffs.into_iter().map(reduce).collect(),
            b: reduce(b),
            n,
            constraint: constraint.with_mode(Mode::Individual),
        })
    }

    /// x₁ + ⋯ + x_k ≡ b (mod n) with e_j(x) a unit for j ∈ J.
    pub fn symmetric(k: usize, b: i64, n: u64, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(vec![1; k], b, n, SymSystem::individual(k, indices)?)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    pub fn constraint(&self) -> &SymSystem {
        &self.constraint
    }

    pub fn with_rhs(&self, b: i64) -> Self {
        CongruenceProblem { b: (b as i128).rem_euclid(self.n as i128) as u64, ..self.clone() }
    }

    fn has_unit_coefficients(&self) -> bool {
        self.coeffs.iter().all(|&a| a == 1 % self.n)
    }
}

/// Number of restricted solutions for every right-hand side b ∈ Z_n, by
/// enumerating Z_n^k once.
pub fn rhs_histogram(prob: &CongruenceProblem, budget: Budget) -> Result<Vec<u64>> {
    let n = prob.n;
    let indices = prob.constraint.indices().to_vec();
    let top = prob.constraint.max_index();
    let unit: Vec<bool> = (0..n).map(|v| v.gcd(&n) == 1).collect();
    let coeffs = &prob.coeffs;
    enumerate::par_fold_elem_sym(
        n,
        prob.k(),
        top,
        budget,
        || vec![0u64; n as usize],
        |mut hist, t, e| {
            if indices.iter().all(|&j| unit[e[j] as usize]) {
                let lhs = t.iter().zip(coeffs).fold(0u64, |acc, (&x, &a)| (acc + mul_mod(a, x, n)) % n);
                hist[lhs as usize] += 1;
            }
            hist
        },
        add_histograms,
    )
}

pub(crate) fn add_histograms(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    a
}

/// Counts solutions by enumerating Z_n^k.
pub fn count_bruteforce(prob: &CongruenceProblem, budget: Budget) -> Result<ZeroCount> {
    Ok(ZeroCount::from(rhs_histogram(prob, budget)?[prob.b as usize]))
}

/// Replaces b by gcd(b, n); the count is unchanged because the constraint
/// polynomials are homogeneous and some unit multiple of b equals gcd(b, n).
pub fn reduce_rhs(prob: &CongruenceProblem) -> CongruenceProblem {
    let g = prob.b.gcd(&prob.n) % prob.n;
    CongruenceProblem { b: g, ..prob.clone() }
}

/// Count for a unit right-hand side: φ̂_{F′}(n)/φ(n), F′ = F ∪ {a·x}.
///
/// With all coefficients 1 the augmented system is the symmetric J ∪ {1} and
/// the totient module's closed forms apply. Otherwise each local factor is
/// p^{k(a−1)} times the number of points of F_p^k where no member of F′
/// vanishes, found by enumeration.
pub fn count_unit_rhs(prob: &CongruenceProblem, budget: Budget) -> Result<ZeroCount> {
    let n = prob.n;
    if prob.b.gcd(&n) != 1 {
        return Err(Error::InvalidInput(format!("right-hand side {} is not a unit mod {n}", prob.b)));
    }
    let fac = factorize(n)?;
    let augmented = if prob.has_unit_coefficients() {
        let mut indices = prob.constraint.indices().to_vec();
        indices.push(1);
        totient::phi(&SymSystem::individual(prob.k(), indices)?, n, budget)?.to_bigint()
    } else {
        let k = prob.k();
        let mut acc = BigInt::one();
        for &(p, a) in fac.pairs() {
            let nonvanishing = local_nonvanishing(prob, p, budget).map_err(|e| e.at_prime(p))?;
            acc *= BigInt::from(p).pow(k as u32 * (a - 1)) * nonvanishing;
        }
        acc
    };
    let phi_n = BigInt::from(euler_phi_u64(&fac));
    let (q, r) = augmented.div_rem(&phi_n);
    if !r.is_zero() {
        return Err(Error::InvariantViolation(format!(
            "augmented totient {augmented} is not divisible by phi({n}) = {phi_n}"
        )));
    }
    ZeroCount::from_signed(q)
}

/// Points of F_p^k where the linear form and every constrained e_j are nonzero.
fn local_nonvanishing(prob: &CongruenceProblem, p: u64, budget: Budget) -> Result<u64> {
    let coeffs: Vec<u64> = prob.coeffs.iter().map(|a| a % p).collect();
    let indices = prob.constraint.indices().to_vec();
    let top = prob.constraint.max_index();
    enumerate::par_fold_elem_sym(
        p,
        prob.k(),
        top,
        budget,
        || 0u64,
        |c, t, e| {
            let lin = t.iter().zip(&coeffs).fold(0u64, |acc, (&x, &a)| (acc + mul_mod(a, x, p)) % p);
            c + (lin != 0 && indices.iter().all(|&j| e[j] != 0)) as u64
        },
        |a, b| a + b,
    )
}

/// Count for any right-hand side: the totient route when gcd(b, n) = 1,
/// enumeration of the gcd-reduced problem otherwise.
pub fn count(prob: &CongruenceProblem, budget: Budget) -> Result<ZeroCount> {
    if prob.b.gcd(&prob.n) == 1 {
        count_unit_rhs(prob, budget)
    } else {
        count_bruteforce(&reduce_rhs(prob), budget)
    }
}

/// Triples (a, b, c) mod p^a, all units, with a + b + c ≡ ab + bc + ca ≡ 0 (mod p).
pub fn psi(p: u64, a: u32) -> Result<ZeroCount> {
    check_prime(p)?;
    if a == 0 {
        return Err(Error::InvalidInput("exponent must be at least 1".into()));
    }
    let lift = BigInt::from(p).pow(3 * (a - 1));
    let local = match p % 3 {
        _ if p == 3 => BigInt::from(p - 1),
        1 => BigInt::from(2 * (p - 1)),
        _ => BigInt::zero(),
    };
    ZeroCount::from_signed(lift * local)
}

fn require_unit_rhs(m: i64, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidModulus(0));
    }
    if m.unsigned_abs().gcd(&n) != 1 {
        return Err(Error::InvalidInput(format!("gcd({m}, {n}) must be 1")));
    }
    Ok(())
}

/// Solutions of x₁ + x₂ + x₃ ≡ m (mod n) with e₂ and e₃ units, gcd(m, n) = 1:
/// ∏ p^{2(a−1)} (p² − 3p + 6 − h(p)).
pub fn g3_closed(m: i64, n: u64) -> Result<ZeroCount> {
    require_unit_rhs(m, n)?;
    let mut acc = BigInt::one();
    for &(p, a) in factorize(n)?.pairs() {
        let pb = BigInt::from(p);
        acc *= pb.pow(2 * (a - 1)) * (&pb * &pb - 3 * &pb + 6 - cubic_h(p));
    }
    ZeroCount::from_signed(acc)
}

/// Solutions of x₁ + ⋯ + x₄ ≡ m (mod n) with e₃ and e₄ units, gcd(m, n) = 1.
/// Zero for even n (four odd unknowns have an even sum); otherwise
/// ∏ p^{3(a−1)} (p³ − 5p² + 12p − 13).
pub fn g4_closed(m: i64, n: u64) -> Result<ZeroCount> {
    require_unit_rhs(m, n)?;
    if n.is_multiple_of(2) {
        return Ok(ZeroCount::default());
    }
    let mut acc = BigInt::one();
    for &(p, a) in factorize(n)?.pairs() {
        let pb = BigInt::from(p);
        acc *= pb.pow(3 * (a - 1)) * (pb.pow(3) - 5 * pb.pow(2) + 12 * &pb - 13);
    }
    ZeroCount::from_signed(acc)
}

/// C̃_k(m, n) = g_k(1, n) · c(m, n), where g_k(1, n) counts x₁ + ⋯ + x_k ≡ 1
/// under the unit constraints on e_j, j ∈ J.
pub fn generalized_ramanujan(m: i64, n: u64, k: usize, indices: &[usize], budget: Budget) -> Result<BigInt> {
    let prob = CongruenceProblem::symmetric(k, 1, n, indices.iter().copied())?;
    let g = count_unit_rhs(&prob, budget)?;
    Ok(g.to_bigint() * ramanujan_sum(m, n)?)
}

/// The defining exponential sum of [`generalized_ramanujan`], evaluated in
/// floating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialSum {
    pub re: f64,
    pub im: f64,
}

impl ExponentialSum {
    pub fn rounded(&self) -> i64 {
        self.re.round() as i64
    }

    /// Distance from the nearest integer, counting the imaginary part.
    pub fn discrepancy(&self) -> f64 {
        (self.re - self.re.round()).abs().max(self.im.abs())
    }
}

/// Σ exp(2πi·m·(x₁+⋯+x_k)/n) over x ∈ Z_n^k with x₁+⋯+x_k and every e_j,
/// j ∈ J, units mod n.
pub fn generalized_ramanujan_direct(
    m: i64,
    n: u64,
    k: usize,
    indices: &[usize],
    budget: Budget,
) -> Result<ExponentialSum> {
    let sys = SymSystem::individual(k, indices.iter().copied())?;
    if n == 0 {
        return Err(Error::InvalidModulus(0));
    }
    let hist = totient::constrained_sum_histogram(&sys, n, budget)?;
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for (s, &c) in hist.iter().enumerate() {
        if c == 0 || (s as u64).gcd(&n) != 1 {
            continue;
        }
        let r = ((m as i128 * s as i128).rem_euclid(n as i128)) as f64;
        let theta = std::f64::consts::TAU * r / n as f64;
        re += c as f64 * theta.cos();
        im += c as f64 * theta.sin();
    }
    Ok(ExponentialSum { re, im })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn bruteforce_examples() {
        let p = CongruenceProblem::symmetric(4, 1, 3, [3, 4]).unwrap();
        assert_eq!(count_bruteforce(&p, b()).unwrap(), 5u64);
        for n in [2u64, 7, 12] {
            for rhs in (0..n as i64).filter(|v| v.unsigned_abs().gcd(&n) == 1) {
                let p = CongruenceProblem::symmetric(1, rhs, n, [1]).unwrap();
                assert_eq!(count_bruteforce(&p, b()).unwrap(), 1u64);
                assert_eq!(count_unit_rhs(&p, b()).unwrap(), 1u64);
            }
        }
        let p = CongruenceProblem::symmetric(2, 0, 2, [1, 2]).unwrap();
        assert_eq!(count_bruteforce(&p, b()).unwrap(), 0u64);
    }

    #[test]
    fn reduce_rhs_examples() {
        let p = CongruenceProblem::symmetric(2, 10, 15, [2]).unwrap();
        assert_eq!(reduce_rhs(&p).b(), 5);
        assert_eq!(reduce_rhs(&p.with_rhs(7)).b(), 1);
        assert_eq!(reduce_rhs(&p.with_rhs(0)).b(), 0);
        let p = CongruenceProblem::symmetric(2, 8, 12, [2]).unwrap();
        assert_eq!(count_bruteforce(&p, b()).unwrap(), count_bruteforce(&reduce_rhs(&p), b()).unwrap());
    }

    #[test]
    fn unit_rhs_examples() {
        let p = CongruenceProblem::symmetric(2, 1, 9, [2]).unwrap();
        assert_eq!(count_unit_rhs(&p, b()).unwrap(), 3u64);
        assert_eq!(count_bruteforce(&p, b()).unwrap(), 3u64);
        for k in 2..=4usize {
            for n in [5u64, 9, 15, 16] {
                let phi_n = crate::arith::euler_phi(n).unwrap().to_bigint();
                let expected = totient::closed_phi_12(k, n).unwrap().to_bigint() / phi_n;
                for m in [1i64, 2, 7] {
                    if m.unsigned_abs().gcd(&n) != 1 {
                        continue;
                    }
                    let p = CongruenceProblem::symmetric(k, m, n, [2]).unwrap();
                    assert_eq!(count_unit_rhs(&p, b()).unwrap().to_bigint(), expected);
                }
            }
        }
        let p = CongruenceProblem::symmetric(2, 3, 9, [2]).unwrap();
        assert!(count_unit_rhs(&p, b()).is_err());
    }

    #[test]
    fn general_coefficients_use_local_enumeration() {
        for n in [5u64, 7, 9, 12, 25] {
            for coeffs in [vec![1i64, 2], vec![3, 5], vec![2, 2]] {
                for j in [vec![1usize], vec![2], vec![1, 2]] {
                    let sys = SymSystem::individual(2, j.clone()).unwrap();
                    let p = CongruenceProblem::new(coeffs.clone(), 1, n, sys).unwrap();
                    assert_eq!(
                        count_unit_rhs(&p, b()).unwrap(),
                        count_bruteforce(&p, b()).unwrap(),
                        "n={n} coeffs={coeffs:?} J={j:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(3, 1).unwrap(), 2u64);
        assert_eq!(psi(7, 1).unwrap(), 12u64);
        assert_eq!(psi(5, 2).unwrap(), 0u64);
        assert_eq!(psi(2, 1).unwrap(), 0u64);
    }

    #[test]
    fn psi_matches_enumeration() {
        for (p, a) in [(2u64, 1u32), (3, 1), (3, 2), (5, 1), (7, 1), (7, 2), (13, 1)] {
            let q = p.pow(a);
            let count = enumerate::count(q, 3, b(), |t| {
                let units = t.iter().all(|x| x % p != 0);
                let e1 = (t[0] + t[1] + t[2]) % p;
                let e2 = (t[0] * t[1] + t[1] * t[2] + t[0] * t[2]) % p;
                units && e1 == 0 && e2 == 0
            })
            .unwrap();
            assert_eq!(psi(p, a).unwrap(), count, "p={p} a={a}");
        }
    }

    #[test]
    fn g3_g4_examples() {
        assert_eq!(g3_closed(1, 5).unwrap(), 10u64);
        assert_eq!(g3_closed(1, 1).unwrap(), 1u64);
        assert_eq!(g3_closed(2, 7).unwrap(), 28u64);
        assert_eq!(count_bruteforce(&CongruenceProblem::symmetric(3, 2, 7, [2, 3]).unwrap(), b()).unwrap(), 28u64);
        assert_eq!(g4_closed(1, 3).unwrap(), 5u64);
        assert_eq!(g4_closed(1, 2).unwrap(), 0u64);
        assert_eq!(g4_closed(1, 1).unwrap(), 1u64);
        assert!(g3_closed(3, 9).is_err());
        assert!(g4_closed(2, 4).is_err());
    }

    #[test]
    fn ramanujan_examples() {
        for n in [1u64, 6, 10] {
            for m in 0..n as i64 {
                let v = generalized_ramanujan(m, n, 1, &[1], b()).unwrap();
                assert_eq!(v, BigInt::from(ramanujan_sum(m, n).unwrap()));
            }
        }
        assert_eq!(generalized_ramanujan(1, 9, 2, &[2], b()).unwrap(), BigInt::zero());
        let direct = generalized_ramanujan_direct(1, 9, 2, &[2], b()).unwrap();
        assert_eq!(direct.rounded(), 0);
        assert!(direct.discrepancy() < 1e-6);
        // m = 0 gives g_k(1, n) φ(n).
        let v = generalized_ramanujan(0, 9, 2, &[2], b()).unwrap();
        assert_eq!(v, BigInt::from(3 * 6));
    }
}
