//! Exhaustive enumeration of Z_m^k.
//!
//! Tuples are visited in odometer order (last coordinate fastest) and the
//! space is partitioned by the leading coordinate for parallel execution.
//! Partial results are merged with a caller-supplied reduction; every
//! reduction used in this crate is integer addition, so the result never
//! depends on scheduling.

use rayon::prelude::*;

use crate::arith::mul_mod;
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 20_000_000;
pub const BUDGET_ENV: &str = "SYMTOTIENT_BUDGET";

/// Upper bound on the number of tuples a brute-force count may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Budget(u64);

impl Budget {
    pub const fn new(max_tuples: u64) -> Self {
        Budget(max_tuples)
    }

    pub const fn get(self) -> u64 {
        self.0
    }

    pub const fn unlimited() -> Self {
        Budget(u64::MAX)
    }

    /// Reads `SYMTOTIENT_BUDGET`, falling back to the default cap.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map(Budget)
                .map_err(|_| Error::InvalidInput(format!("{BUDGET_ENV}={s:?} is not a tuple count"))),
            Err(_) => Ok(Budget::default()),
        }
    }

    /// Size of Z_m^k, or a budget error if it does not fit.
    pub fn admit(self, m: u64, k: usize) -> Result<u64> {
        let size = (m as u128).checked_pow(k as u32);
        match size {
            Some(s) if s <= self.0 as u128 => Ok(s as u64),
            _ => Err(Error::BudgetExceeded { size, budget: self.0, prime: None }),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

/// Folds over every tuple of Z_m^k.
pub fn par_fold<T, I, F, R>(m: u64, k: usize, budget: Budget, identity: I, fold: F, reduce: R) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(T, &[u64]) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    budget.admit(m, k)?;
    if k == 0 {
        return Ok(fold(identity(), &[]));
    }
    if m == 0 {
        return Ok(identity());
    }
    let result = (0..m)
        .into_par_iter()
        .map_init(
            || vec![0u64; k],
            |tuple, lead| {
                tuple.fill(0);
                tuple[0] = lead;
                let mut acc = identity();
                loop {
                    acc = fold(acc, tuple);
                    if !advance(&mut tuple[1..], m) {
                        break acc;
                    }
                }
            },
        )
        .reduce(&identity, &reduce);
    Ok(result)
}

/// Like [`par_fold`], but also hands `fold` the values e_0..=e_top of the
/// tuple mod m. The values of each prefix are cached, so an odometer step
/// that changes coordinates i.. only redoes the products from i on.
pub fn par_fold_elem_sym<T, I, F, R>(
    m: u64,
    k: usize,
    top: usize,
    budget: Budget,
    identity: I,
    fold: F,
    reduce: R,
) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(T, &[u64], &[u64]) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    budget.admit(m, k)?;
    if top > k {
        return Err(Error::IndexOutOfRange { index: top, arity: k });
    }
    if m == 0 {
        return Ok(identity());
    }
    let width = top + 1;
    if k == 0 {
        let mut e = vec![0u64; width];
        e[0] = 1 % m;
        return Ok(fold(identity(), &[], &e));
    }
    let result = (0..m)
        .into_par_iter()
        .map_init(
            || (vec![0u64; k], vec![0u64; (k + 1) * width]),
            |(tuple, rows), lead| {
                tuple.fill(0);
                tuple[0] = lead;
                rows[0] = 1 % m;
                extend_rows(rows, tuple, 0, width, m);
                let mut acc = identity();
                loop {
                    acc = fold(acc, tuple, &rows[k * width..]);
                    match advance_at(&mut tuple[1..], m) {
                        Some(i) => extend_rows(rows, tuple, i + 1, width, m),
                        None => break acc,
                    }
                }
            },
        )
        .reduce(&identity, &reduce);
    Ok(result)
}

/// Row i + 1 of `rows` holds e_0..e_top of tuple[..=i]; rebuilds rows from + 1..=k.
#[inline]
fn extend_rows(rows: &mut [u64], tuple: &[u64], from: usize, width: usize, m: u64) {
    for (i, &x) in tuple.iter().enumerate().skip(from) {
        let (prev, next) = rows.split_at_mut((i + 1) * width);
        let prev = &prev[i * width..];
        let next = &mut next[..width];
        next[0] = prev[0];
        for t in 1..width {
            next[t] = (prev[t] + mul_mod(prev[t - 1], x, m)) % m;
        }
    }
}

/// Number of tuples in Z_m^k satisfying `pred`.
pub fn count<P>(m: u64, k: usize, budget: Budget, pred: P) -> Result<u64>
where
    P: Fn(&[u64]) -> bool + Sync + Send,
{
    par_fold(m, k, budget, || 0u64, |acc, t| acc + pred(t) as u64, |a, b| a + b)
}

/// Odometer step; returns false after the last tuple.
#[inline]
fn advance(digits: &mut [u64], m: u64) -> bool {
    advance_at(digits, m).is_some()
}

/// Odometer step returning the leftmost changed position, or None after the
/// last tuple.
#[inline]
fn advance_at(digits: &mut [u64], m: u64) -> Option<usize> {
    for (i, d) in digits.iter_mut().enumerate().rev() {
        *d += 1;
        if *d < m {
            return Some(i);
        }
        *d = 0;
    }
    None
}
