//! Zeros of elementary symmetric systems over F_p^k.
//!
//! Each count has two routes: exhaustive enumeration of F_p^k
//! ([`count_zeros_bruteforce`]) and the closed forms below, which go through
//! the quadratic-form solution count for e₂ and e₁,e₂ at odd p, sieved
//! binomial sums at p = 2, and inclusion–exclusion over vanishing
//! coordinates whenever e_k is constrained.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::{check_odd_prime, check_prime, inv_mod, legendre, mul_mod};
use crate::enumerate::{self, Budget};
use crate::error::{Error, Result};
use crate::ZeroCount;

/// How several constraint polynomials combine in a totient: one gcd over all
/// values (`Joint`) or one gcd per value (`Individual`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Joint,
    Individual,
}

/// Arity k plus the set J ⊆ {1..k} of constrained elementary symmetric
/// polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymSystem {
    k: usize,
    indices: Vec<usize>,
    mode: Mode,
}

impl SymSystem {
    pub fn new(k: usize, indices: impl IntoIterator<Item = usize>, mode: Mode) -> Result<Self> {
        if k == 0 {
            return Err(Error::ArityTooSmall { got: 0, min: 1 });
        }
        let mut indices: Vec<usize> = indices.into_iter().collect();
        if let Some(&index) = indices.iter().find(|&&j| j == 0 || j > k) {
            return Err(Error::IndexOutOfRange { index, arity: k });
        }
        indices.sort_unstable();
        indices.dedup();
        Ok(SymSystem { k, indices, mode })
    }

    pub fn joint(k: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(k, indices, Mode::Joint)
    }

    pub fn individual(k: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(k, indices, Mode::Individual)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.indices.binary_search(&j).is_ok()
    }

    pub fn max_index(&self) -> usize {
        self.indices.last().copied().unwrap_or(0)
    }

    pub fn with_mode(&self, mode: Mode) -> Self {
        SymSystem { mode, ..self.clone() }
    }
}

/// Writes e_0..=e_top of `tuple` mod m into `out` via the truncated product
/// ∏(1 + x_i t).
#[inline]
pub(crate) fn elem_sym_upto(tuple: &[u64], top: usize, m: u64, out: &mut [u64]) {
    out[0] = 1 % m;
    out[1..=top].fill(0);
    for (i, &x) in tuple.iter().enumerate() {
        for t in (1..=top.min(i + 1)).rev() {
            out[t] = (out[t] + mul_mod(out[t - 1], x, m)) % m;
        }
    }
}

/// e_j(tuple) mod m.
pub fn eval_elem_sym(j: usize, tuple: &[u64], m: u64) -> Result<u64> {
    if j == 0 || j > tuple.len() {
        return Err(Error::IndexOutOfRange { index: j, arity: tuple.len() });
    }
    if m == 0 {
        return Err(Error::InvalidModulus(0));
    }
    let reduced: Vec<u64> = tuple.iter().map(|x| x % m).collect();
    let mut out = vec![0u64; j + 1];
    elem_sym_upto(&reduced, j, m, &mut out);
    Ok(out[j])
}

/// Counts tuples of F_p^k where every e_j, j ∈ J, vanishes (the mode is ignored).
pub fn count_zeros_bruteforce(sys: &SymSystem, p: u64, budget: Budget) -> Result<ZeroCount> {
    check_prime(p)?;
    count_zeros_enumerated(sys.k, &sys.indices, p, budget).map(ZeroCount::from)
}

fn count_zeros_enumerated(k: usize, indices: &[usize], p: u64, budget: Budget) -> Result<u64> {
    let top = indices.last().copied().unwrap_or(0);
    enumerate::par_fold_elem_sym(
        p,
        k,
        top,
        budget,
        || 0u64,
        |n, _, e| n + indices.iter().all(|&j| e[j] == 0) as u64,
        |a, b| a + b,
    )
    .map_err(|e| e.at_prime(p))
}

/// A quadratic form x ↦ xᵀAx over F_p, p odd, given by its symmetric matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    p: u64,
    matrix: Vec<Vec<u64>>,
}

impl QuadraticForm {
    pub fn new(p: u64, matrix: Vec<Vec<u64>>) -> Result<Self> {
        check_odd_prime(p)?;
        let k = matrix.len();
        if matrix.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidInput("matrix must be square".into()));
        }
        let matrix: Vec<Vec<u64>> = matrix.into_iter().map(|row| row.into_iter().map(|a| a % p).collect()).collect();
        for i in 0..k {
            for j in 0..i {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::InvalidInput(format!("matrix not symmetric mod {p} at ({i},{j})")));
                }
            }
        }
        Ok(QuadraticForm { p, matrix })
    }

    /// The form e₂(x₁..x_k): zero diagonal, 2⁻¹ off the diagonal.
    pub fn elementary_e2(k: usize, p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        let half = inv_mod(2, p).expect("2 is a unit mod an odd prime");
        let matrix = (0..k).map(|i| (0..k).map(|j| if i == j { 0 } else { half }).collect()).collect();
        Self::new(p, matrix)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn eval(&self, x: &[u64]) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for (i, row) in self.matrix.iter().enumerate() {
            let mut row_dot = 0u64;
            for (j, &a) in row.iter().enumerate() {
                row_dot = (row_dot + mul_mod(a, x[j] % p, p)) % p;
            }
            acc = (acc + mul_mod(x[i] % p, row_dot, p)) % p;
        }
        acc
    }

    /// Diagonal of a congruent diagonal form PᵀAP. Zero entries span the radical.
    pub fn diagonalize(&self) -> Vec<u64> {
        let p = self.p;
        let n = self.dim();
        let mut a = self.matrix.clone();
        let mut diag = Vec::with_capacity(n);
        for i in 0..n {
            if a[i][i] == 0 {
                if let Some(j) = (i + 1..n).find(|&j| a[j][j] != 0) {
                    a.swap(i, j);
                    for row in a.iter_mut() {
                        row.swap(i, j);
                    }
                } else if let Some(j) = (i + 1..n).find(|&j| a[i][j] != 0) {
                    // x_i += x_j turns the diagonal entry into 2·a_ij ≠ 0.
                    for l in 0..n {
                        a[i][l] = (a[i][l] + a[j][l]) % p;
                    }
                    for row in a.iter_mut() {
                        row[i] = (row[i] + row[j]) % p;
                    }
                } else {
                    diag.push(0);
                    continue;
                }
            }
            let pivot_inv = inv_mod(a[i][i], p).expect("nonzero pivot mod prime");
            for j in i + 1..n {
                if a[j][i] == 0 {
                    continue;
                }
                let f = mul_mod(a[j][i], pivot_inv, p);
                for l in 0..n {
                    a[j][l] = (a[j][l] + p - mul_mod(f, a[i][l], p)) % p;
                }
                for row in a.iter_mut() {
                    row[j] = (row[j] + p - mul_mod(f, row[i], p)) % p;
                }
            }
            diag.push(a[i][i]);
        }
        diag
    }

    pub fn rank(&self) -> usize {
        self.diagonalize().iter().filter(|&&d| d != 0).count()
    }

    pub fn determinant(&self) -> u64 {
        self.diagonalize().iter().fold(1 % self.p, |acc, &d| mul_mod(acc, d, self.p))
    }

    pub fn is_degenerate(&self) -> bool {
        self.rank() < self.dim()
    }
}

/// Number of x ∈ F_p^k with f(x) = b.
///
/// A degenerate form splits as radical ⊕ non-degenerate part, so the count is
/// p^(k−r) times the non-degenerate count on the rank-r quotient.
pub fn quad_form_count(form: &QuadraticForm, b: i64) -> ZeroCount {
    let p = form.p;
    let k = form.dim();
    let b = (b as i128).rem_euclid(p as i128) as u64;
    let nonzero: Vec<u64> = form.diagonalize().into_iter().filter(|&d| d != 0).collect();
    let r = nonzero.len();
    let delta = nonzero.iter().fold(1 % p, |acc, &d| mul_mod(acc, d, p));
    let radical = BigInt::from(p).pow((k - r) as u32);
    let quotient = if r == 0 { BigInt::from((b == 0) as u8) } else { nondegenerate_count(p, r, b, delta) };
    ZeroCount::from_signed(radical * quotient).expect("solution counts are non-negative")
}

/// Solution count of f = b for a non-degenerate form in r ≥ 1 variables with
/// determinant `delta`.
fn nondegenerate_count(p: u64, r: usize, b: u64, delta: u64) -> BigInt {
    let pb = BigInt::from(p);
    let minus_one_pow = |e: usize| if e.is_multiple_of(2) { 1 } else { p - 1 };
    if r % 2 == 1 {
        let half = (r - 1) / 2;
        let arg = mul_mod(mul_mod(minus_one_pow(half), b, p), delta, p);
        pb.pow((r - 1) as u32) + pb.pow(half as u32) * legendre(arg, p).value()
    } else {
        let half = r / 2;
        let nu = if b == 0 { p as i64 - 1 } else { -1 };
        let arg = mul_mod(minus_one_pow(half), delta, p);
        pb.pow((r - 1) as u32) + BigInt::from(nu) * pb.pow((half - 1) as u32) * legendre(arg, p).value()
    }
}

fn pow_big(p: u64, e: usize) -> BigInt {
    BigInt::from(p).pow(e as u32)
}

/// η((−1)^sign_exp · a) for an odd prime p, with a given as a signed integer.
fn eta_signed(sign_exp: usize, a: i128, p: u64) -> i64 {
    let a = a.rem_euclid(p as i128) as u64;
    let a = if sign_exp % 2 == 1 { (p - a) % p } else { a };
    legendre(a, p).value()
}

/// N_k(e₂, p).
pub fn closed_n_e2(k: usize, p: u64) -> Result<ZeroCount> {
    if k < 2 {
        return Err(Error::ArityTooSmall { got: k, min: 2 });
    }
    check_prime(p)?;
    if p == 2 {
        return Ok(sieved_binomial_sum(k, |j| j % 4 <= 1));
    }
    let degenerate = (k as u64 - 1).is_multiple_of(p);
    let base = pow_big(p, k - 1);
    let pm1 = BigInt::from(p - 1);
    let value = match (k % 2 == 1, degenerate) {
        (true, false) => base,
        (true, true) => base + pm1 * pow_big(p, (k - 1) / 2) * eta_signed((k - 1) / 2, 1, p),
        (false, false) => base + pm1 * pow_big(p, (k - 2) / 2) * eta_signed(k / 2 + 1, k as i128 - 1, p),
        (false, true) => base,
    };
    ZeroCount::from_signed(value)
}

/// N_k(e₁, e₂, p).
pub fn closed_n_e1e2(k: usize, p: u64) -> Result<ZeroCount> {
    if k < 2 {
        return Err(Error::ArityTooSmall { got: k, min: 2 });
    }
    check_prime(p)?;
    if p == 2 {
        return Ok(sieved_binomial_sum(k, |j| j % 4 == 0));
    }
    let degenerate = (k as u64).is_multiple_of(p);
    let base = pow_big(p, k - 2);
    let pm1 = BigInt::from(p - 1);
    let value = match (k % 2 == 1, degenerate) {
        (true, false) => base + pm1 * pow_big(p, (k - 3) / 2) * eta_signed((k - 1) / 2, k as i128, p),
        (true, true) => base,
        (false, false) => base,
        (false, true) => base + pm1 * pow_big(p, (k - 2) / 2) * eta_signed(k / 2, 1, p),
    };
    ZeroCount::from_signed(value)
}

/// N_k(e_l, 2) = Σ C(k, j) over j ∈ [0, k] with l not a submask of j.
pub fn closed_n_el_mod2(l: usize, k: usize) -> Result<ZeroCount> {
    if l == 0 || l > k {
        return Err(Error::IndexOutOfRange { index: l, arity: k });
    }
    Ok(sieved_binomial_sum(k, |j| j & l != l))
}

/// Zeros over F_2^k of every e_l, l ∈ J. A tuple with j ones has
/// e_l = C(j, l) mod 2, so only the weight matters.
pub fn count_zeros_mod2(sys: &SymSystem) -> ZeroCount {
    sieved_binomial_sum(sys.k, |j| sys.indices.iter().all(|&l| j & l != l))
}

/// Σ_{j ≤ k, keep(j)} C(k, j).
pub fn sieved_binomial_sum(k: usize, keep: impl Fn(usize) -> bool) -> ZeroCount {
    let mut binom = BigUint::one();
    let mut acc = BigUint::zero();
    for j in 0..=k {
        if keep(j) {
            acc += &binom;
        }
        binom = binom * (k - j) / (j + 1);
    }
    ZeroCount::from(acc)
}

/// N_k(J ∪ {k}, p) by inclusion–exclusion over the coordinates forced to zero:
///
/// Σ_{j=1..k} (−1)^{j+1} C(k, j) · N_{k−j}(J ∩ [1, k−j], p)
///
/// Zeroing j coordinates leaves e_i of the remaining k − j, and e_i vanishes
/// identically once i > k − j, hence the truncated index set. `base(m, J')`
/// must return N_m(J', p) for m ≥ 1; N_0(∅, p) = 1 is supplied here.
pub fn extend_with_ek(
    indices: &[usize],
    k: usize,
    p: u64,
    base: &mut dyn FnMut(usize, &[usize]) -> Result<ZeroCount>,
) -> Result<ZeroCount> {
    check_prime(p)?;
    if k == 0 {
        return Err(Error::ArityTooSmall { got: 0, min: 1 });
    }
    if let Some(&index) = indices.iter().find(|&&j| j == 0 || j >= k) {
        return Err(if index == k {
            Error::InvalidInput(format!("e_{k} is already in the constraint set"))
        } else {
            Error::IndexOutOfRange { index, arity: k - 1 }
        });
    }
    let mut acc = BigInt::zero();
    let mut binom = BigInt::one();
    for j in 1..=k {
        binom = binom * (k - j + 1) / j;
        let rest = k - j;
        let sub: Vec<usize> = indices.iter().copied().filter(|&i| i <= rest).collect();
        let inner = if rest == 0 { BigInt::one() } else { base(rest, &sub)?.to_bigint() };
        let term = &binom * inner;
        if j % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    ZeroCount::from_signed(acc)
}

/// N_k(e₂, e_k, p) for k ≥ 3.
///
/// Odd p: Σ_{j=1..k−2} (−1)^{j+1} C(k, j) N_{k−j}(e₂, p) + (−1)^k (kp − 1),
/// the last term collecting the j = k − 1 and j = k summands of
/// [`extend_with_ek`]. For p = 2, e_k vanishes everywhere except the all-ones
/// tuple, so the count is N_k(e₂, 2) less one exactly when that tuple is a
/// zero of e₂, i.e. when k ≡ 0, 1 (mod 4).
pub fn closed_n_e2_ek(k: usize, p: u64) -> Result<ZeroCount> {
    if k < 3 {
        return Err(Error::ArityTooSmall { got: k, min: 3 });
    }
    check_prime(p)?;
    if p == 2 {
        let all_ones_is_zero = k % 4 <= 1;
        return ZeroCount::from_signed(closed_n_e2(k, 2)?.to_bigint() - all_ones_is_zero as u8);
    }
    let boundary = BigInt::from(k as u64) * p - 1;
    stated_ek_sum(k, |m| closed_n_e2(m, p), boundary)
}

/// N_k(e₁, e₂, e_k, p) for k ≥ 3.
///
/// Odd p: Σ_{j=1..k−2} (−1)^{j+1} C(k, j) N_{k−j}(e₁, e₂, p) + (−1)^k (k − 1).
/// For p = 2 the all-ones tuple is a common zero of e₁ and e₂ iff k ≡ 0 (mod 4).
pub fn closed_n_e1e2_ek(k: usize, p: u64) -> Result<ZeroCount> {
    if k < 3 {
        return Err(Error::ArityTooSmall { got: k, min: 3 });
    }
    check_prime(p)?;
    if p == 2 {
        let all_ones_is_zero = k.is_multiple_of(4);
        return ZeroCount::from_signed(closed_n_e1e2(k, 2)?.to_bigint() - all_ones_is_zero as u8);
    }
    stated_ek_sum(k, |m| closed_n_e1e2(m, p), BigInt::from(k as u64 - 1))
}

fn stated_ek_sum(k: usize, inner: impl Fn(usize) -> Result<ZeroCount>, boundary: BigInt) -> Result<ZeroCount> {
    let mut acc = BigInt::zero();
    let mut binom = BigInt::one();
    for j in 1..=k - 2 {
        binom = binom * (k - j + 1) / j;
        let term = &binom * inner(k - j)?.to_bigint();
        if j % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    if k.is_multiple_of(2) {
        acc += boundary;
    } else {
        acc -= boundary;
    }
    ZeroCount::from_signed(acc)
}

/// N_k(J, p) using closed forms wherever one applies and enumeration of
/// F_p^k otherwise.
pub fn count_zeros(sys: &SymSystem, p: u64, budget: Budget) -> Result<ZeroCount> {
    check_prime(p)?;
    dispatch(sys.k, &sys.indices, p, Some(budget))
}

/// Like [`count_zeros`] but fails with [`Error::NoClosedForm`] instead of
/// enumerating.
pub fn count_zeros_closed(sys: &SymSystem, p: u64) -> Result<ZeroCount> {
    check_prime(p)?;
    dispatch(sys.k, &sys.indices, p, None)
}

/// Whether [`count_zeros_closed`] succeeds for this system at p.
pub fn has_closed_form(sys: &SymSystem, p: u64) -> bool {
    !matches!(count_zeros_closed(sys, p), Err(Error::NoClosedForm))
}

fn dispatch(k: usize, indices: &[usize], p: u64, fallback: Option<Budget>) -> Result<ZeroCount> {
    let is_prefix = indices.iter().copied().eq(1..=k);
    if indices.is_empty() {
        Ok(ZeroCount::from_signed(pow_big(p, k))?)
    } else if p == 2 {
        Ok(sieved_binomial_sum(k, |j| indices.iter().all(|&l| j & l != l)))
    } else if is_prefix {
        Ok(ZeroCount::from(1))
    } else if indices == [1] {
        ZeroCount::from_signed(pow_big(p, k - 1))
    } else if indices == [2] {
        closed_n_e2(k, p)
    } else if indices == [1, 2] {
        closed_n_e1e2(k, p)
    } else if indices.last() == Some(&k) {
        let rest = &indices[..indices.len() - 1];
        extend_with_ek(rest, k, p, &mut |m, sub| dispatch(m, sub, p, fallback))
    } else {
        match fallback {
            Some(budget) => count_zeros_enumerated(k, indices, p, budget).map(ZeroCount::from),
            None => Err(Error::NoClosedForm),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

    fn brute(k: usize, j: &[usize], p: u64) -> u64 {
        count_zeros_bruteforce(&SymSystem::joint(k, j.iter().copied()).unwrap(), p, Budget::default())
            .unwrap()
            .to_u64()
            .unwrap()
    }

    /// Sum over all j-subsets, the definition of e_j.
    fn naive_elem_sym(j: usize, tuple: &[u64], m: u64) -> u64 {
        let k = tuple.len();
        let mut acc = 0u64;
        for mask in 0u32..(1 << k) {
            if mask.count_ones() as usize == j {
                let prod = (0..k).filter(|i| mask >> i & 1 == 1).fold(1u64, |acc, i| acc * tuple[i] % m);
                acc = (acc + prod) % m;
            }
        }
        acc
    }

    #[test]
    fn elem_sym_examples() {
        assert_eq!(eval_elem_sym(2, &[1, 1, 1], 5).unwrap(), 3);
        assert_eq!(eval_elem_sym(2, &[1, 2, 3], 7).unwrap(), 4);
        assert_eq!(eval_elem_sym(3, &[2, 2, 2, 1], 3).unwrap(), 2);
        assert!(eval_elem_sym(0, &[1, 2], 5).is_err());
        assert!(eval_elem_sym(3, &[1, 2], 5).is_err());
    }

    proptest! {
        #[test]
        fn elem_sym_matches_subset_expansion(
            m in 1u64..=97,
            tuple in proptest::collection::vec(0u64..1000, 1..=6),
            j_seed in 0usize..6,
        ) {
            let j = j_seed % tuple.len() + 1;
            let reduced: Vec<u64> = tuple.iter().map(|x| x % m).collect();
            prop_assert_eq!(eval_elem_sym(j, &tuple, m).unwrap(), naive_elem_sym(j, &reduced, m));
        }
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(brute(2, &[2], 3), 5);
        for p in PRIMES {
            assert_eq!(brute(1, &[1], p), 1);
        }
        assert_eq!(brute(3, &[1, 2, 3], 5), 1);
        let err = count_zeros_bruteforce(&SymSystem::joint(4, [2]).unwrap(), 13, Budget::new(1000));
        assert_eq!(err.unwrap_err(), Error::BudgetExceeded { size: Some(28_561), budget: 1000, prime: Some(13) });
        assert_eq!(
            count_zeros_bruteforce(&SymSystem::joint(2, [2]).unwrap(), 4, Budget::default()),
            Err(Error::NotPrime(4))
        );
    }

    #[test]
    fn quad_form_examples() {
        let square = QuadraticForm::new(3, vec![vec![1]]).unwrap();
        assert_eq!(quad_form_count(&square, 1), 2u64);
        assert_eq!(quad_form_count(&square, 2), 0u64);
        for p in [3u64, 5, 7, 11] {
            let half = inv_mod(2, p).unwrap();
            let xy = QuadraticForm::new(p, vec![vec![0, half], vec![half, 0]]).unwrap();
            assert_eq!(quad_form_count(&xy, 0), 2 * p - 1);
        }
        let zero = QuadraticForm::new(5, vec![vec![0; 3]; 3]).unwrap();
        assert_eq!(quad_form_count(&zero, 0), 125u64);
        assert_eq!(quad_form_count(&zero, 2), 0u64);
        assert!(QuadraticForm::new(2, vec![vec![1]]).is_err());
        assert!(QuadraticForm::new(5, vec![vec![1, 2], vec![3, 1]]).is_err());
    }

    #[test]
    fn quad_form_counts_partition_the_space() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for p in [3u64, 5, 7, 11, 13] {
            for k in 1..=4usize {
                for _ in 0..10 {
                    let mut m = vec![vec![0u64; k]; k];
                    for i in 0..k {
                        for j in i..k {
                            let v = rng.gen_range(0..p);
                            m[i][j] = v;
                            m[j][i] = v;
                        }
                    }
                    let form = QuadraticForm::new(p, m).unwrap();
                    let total: BigUint = (0..p as i64).map(|b| quad_form_count(&form, b).into_inner()).sum();
                    assert_eq!(total, BigUint::from(p).pow(k as u32));
                }
            }
        }
    }

    #[test]
    fn diagonalization_preserves_determinant() {
        // det of [[1,2],[2,1]] = -3.
        let f = QuadraticForm::new(7, vec![vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(f.determinant(), 4);
        // Needs the off-diagonal pivot trick.
        let g = QuadraticForm::new(5, vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]]).unwrap();
        assert_eq!(g.rank(), 2);
        assert!(g.is_degenerate());
    }

    #[test]
    fn e2_examples() {
        assert_eq!(closed_n_e2(2, 3).unwrap(), 5u64);
        assert_eq!(closed_n_e2(3, 5).unwrap(), 25u64);
        assert_eq!(closed_n_e2(3, 2).unwrap(), 4u64);
        assert_eq!(closed_n_e2(4, 3).unwrap(), 27u64);
        assert_eq!(brute(4, &[2], 3), 27);
        assert_eq!(closed_n_e2(1, 3), Err(Error::ArityTooSmall { got: 1, min: 2 }));
    }

    #[test]
    fn e1e2_examples() {
        assert_eq!(closed_n_e1e2(2, 3).unwrap(), 1u64);
        assert_eq!(closed_n_e1e2(3, 5).unwrap(), 1u64);
        assert_eq!(closed_n_e1e2(2, 2).unwrap(), 1u64);
        assert_eq!(closed_n_e1e2(3, 3).unwrap(), 3u64);
    }

    #[test]
    fn el_mod2_examples() {
        assert_eq!(closed_n_el_mod2(1, 3).unwrap(), 4u64);
        assert_eq!(closed_n_el_mod2(3, 3).unwrap(), 7u64);
        for k in 1..=12 {
            assert_eq!(closed_n_el_mod2(k, k).unwrap(), (1u64 << k) - 1);
        }
        assert!(closed_n_el_mod2(0, 3).is_err());
        assert!(closed_n_el_mod2(4, 3).is_err());
    }

    #[test]
    fn closed_forms_match_enumeration_small() {
        for p in PRIMES {
            for k in 2..=5usize {
                if (p as u128).pow(k as u32) > 400_000 {
                    continue;
                }
                assert_eq!(closed_n_e2(k, p).unwrap(), brute(k, &[2], p), "e2 k={k} p={p}");
                assert_eq!(closed_n_e1e2(k, p).unwrap(), brute(k, &[1, 2], p), "e1e2 k={k} p={p}");
            }
        }
    }

    /// The single-expression statement with η(0) = 0 folds both proof cases
    /// together because 1 − p ≡ 1 (mod p).
    #[test]
    fn merged_e2_statement_agrees_with_case_split() {
        for p in [3u64, 5, 7, 11, 13, 17, 19] {
            for k in 2..=40usize {
                let pm1 = BigInt::from(p - 1);
                let merged = if k % 2 == 1 {
                    let g = (k as u64 - 1).gcd(&p) as i128;
                    pow_big(p, k - 1) + pm1 * pow_big(p, (k - 1) / 2) * eta_signed((k - 1) / 2, 1 - g, p)
                } else {
                    pow_big(p, k - 1) + pm1 * pow_big(p, (k - 2) / 2) * eta_signed(k / 2 + 1, k as i128 - 1, p)
                };
                assert_eq!(closed_n_e2(k, p).unwrap().to_bigint(), merged, "k={k} p={p}");

                let pm1 = BigInt::from(p - 1);
                let merged12 = if k % 2 == 1 {
                    pow_big(p, k - 2) + pm1 * pow_big(p, (k - 3) / 2) * eta_signed((k - 1) / 2, k as i128, p)
                } else {
                    let g = (k as u64).gcd(&p) as i128;
                    pow_big(p, k - 2) + pm1 * pow_big(p, (k - 2) / 2) * eta_signed(k / 2, 1 - g, p)
                };
                assert_eq!(closed_n_e1e2(k, p).unwrap().to_bigint(), merged12, "k={k} p={p}");
            }
        }
    }

    #[test]
    fn degenerate_e2_matches_matrix_route() {
        for p in [3u64, 5, 7] {
            for k in 2..=30usize {
                let form = QuadraticForm::elementary_e2(k, p).unwrap();
                assert_eq!(form.is_degenerate(), (k as u64 - 1).is_multiple_of(p));
                assert_eq!(quad_form_count(&form, 0), closed_n_e2(k, p).unwrap(), "k={k} p={p}");
            }
        }
    }

    #[test]
    fn extend_examples() {
        let mut base = |m: usize, sub: &[usize]| dispatch(m, sub, 3, Some(Budget::default()));
        assert_eq!(extend_with_ek(&[2], 3, 3, &mut base).unwrap(), 7u64);
        assert_eq!(brute(3, &[2, 3], 3), 7);
        for p in [2u64, 3, 5, 7] {
            for k in 2..=6usize {
                let prefix: Vec<usize> = (1..k).collect();
                let mut base = |m: usize, sub: &[usize]| dispatch(m, sub, p, None);
                assert_eq!(extend_with_ek(&prefix, k, p, &mut base).unwrap(), 1u64);
            }
        }
        // At p = 2 the all-ones tuple of weight 3 already fails e₂, so nothing
        // is removed: the count is 4, not N₃(e₂,2) − 1.
        let mut base2 = |m: usize, sub: &[usize]| dispatch(m, sub, 2, None);
        assert_eq!(extend_with_ek(&[2], 3, 2, &mut base2).unwrap(), 4u64);
        assert_eq!(brute(3, &[2, 3], 2), 4);
        assert!(extend_with_ek(&[3], 3, 5, &mut base).is_err());
    }

    #[test]
    fn ek_closed_forms_agree_with_recurrence_and_enumeration() {
        for p in [2u64, 3, 5, 7] {
            for k in 3..=7usize {
                let mut base = |m: usize, sub: &[usize]| dispatch(m, sub, p, None);
                let e2 = extend_with_ek(&[2], k, p, &mut base).unwrap();
                let e12 = extend_with_ek(&[1, 2], k, p, &mut base).unwrap();
                assert_eq!(closed_n_e2_ek(k, p).unwrap(), e2, "k={k} p={p}");
                assert_eq!(closed_n_e1e2_ek(k, p).unwrap(), e12, "k={k} p={p}");
                if (p as f64).powi(k as i32) <= 2e5 {
                    assert_eq!(e2, brute(k, &[2, k], p));
                    assert_eq!(e12, brute(k, &[1, 2, k], p));
                }
            }
        }
    }

    /// N_k(e₂, 2) − 1 is right only when the all-ones tuple is a zero of e₂.
    #[test]
    fn p2_minus_one_holds_only_when_all_ones_is_a_zero() {
        for k in 3..=20usize {
            let naive_e2 = closed_n_e2(k, 2).unwrap().to_bigint() - 1;
            let naive_e12 = closed_n_e1e2(k, 2).unwrap().to_bigint() - 1;
            assert_eq!(closed_n_e2_ek(k, 2).unwrap().to_bigint() == naive_e2, k % 4 <= 1);
            assert_eq!(closed_n_e1e2_ek(k, 2).unwrap().to_bigint() == naive_e12, k % 4 == 0);
        }
    }

    #[test]
    fn dispatcher_covers_closed_cases() {
        for p in [2u64, 3, 5, 7] {
            for k in 1..=4usize {
                for mask in 1u32..(1 << k) {
                    let j: Vec<usize> = (1..=k).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                    let sys = SymSystem::joint(k, j.clone()).unwrap();
                    let expected = brute(k, &j, p);
                    assert_eq!(count_zeros(&sys, p, Budget::default()).unwrap(), expected, "J={j:?} k={k} p={p}");
                    if let Ok(closed) = count_zeros_closed(&sys, p) {
                        assert_eq!(closed, expected);
                    }
                }
            }
        }
        let no_closed = SymSystem::joint(4, [3]).unwrap();
        assert_eq!(count_zeros_closed(&no_closed, 5), Err(Error::NoClosedForm));
        assert!(!has_closed_form(&no_closed, 5));
        assert!(has_closed_form(&no_closed, 2));
    }

    #[test]
    fn large_prime_closed_forms_need_no_enumeration() {
        let p = 1_000_000_007u64;
        let sys = SymSystem::joint(6, [1, 2, 6]).unwrap();
        let v = count_zeros(&sys, p, Budget::new(0)).unwrap();
        assert!(v.value() <= &BigUint::from(p).pow(6));
    }
}
