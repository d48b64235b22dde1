//! Named quantities for `table`, each with a closed-form route and a
//! brute-force route.

use clap::ValueEnum;
use num_bigint::BigInt;
use symtotient::arith::{euler_phi, jordan_totient, ramanujan_sum};
use symtotient::congruence::{self, CongruenceProblem};
use symtotient::symfield::{self, SymSystem};
use symtotient::totient;
use symtotient::verify::EXP_SUM_TOLERANCE;
use symtotient::{Budget, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    /// N_k(e2, p)
    #[value(name = "N_e2")]
    NE2,
    /// N_k(e1, e2, p)
    #[value(name = "N_e1e2")]
    NE1E2,
    /// N_k(e2, e_k, p)
    #[value(name = "N_e2_ek")]
    NE2Ek,
    /// N_k(e1, e2, e_k, p)
    #[value(name = "N_e1e2_ek")]
    NE1E2Ek,
    /// N_k(J, p) for the --J system
    #[value(name = "zeros")]
    Zeros,
    /// joint totient of the --J system
    #[value(name = "varphi")]
    Varphi,
    /// individual totient of the --J system
    #[value(name = "phi")]
    Phi,
    /// individual totient for {e1, e2}
    #[value(name = "phi_12")]
    Phi12,
    /// individual totient for {e1, e2, e3}, k = 3
    #[value(name = "phi_123")]
    Phi123,
    /// individual totient for {e1, e_k}
    #[value(name = "toth_1k")]
    Toth1k,
    /// Jordan totient J_k(n)
    #[value(name = "jordan")]
    Jordan,
    /// Euler phi(n)
    #[value(name = "euler_phi")]
    EulerPhi,
    /// solutions of x1+x2+x3 = m (mod n) with e2, e3 units
    #[value(name = "g3")]
    G3,
    /// solutions of x1+..+x4 = m (mod n) with e3, e4 units
    #[value(name = "g4")]
    G4,
    /// Ramanujan sum c(m, n)
    #[value(name = "ramanujan_sum")]
    RamanujanSum,
}

/// Which parameters a quantity ranges over, in output order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Axes {
    pub j: bool,
    pub k: bool,
    pub m: bool,
    pub n: bool,
    pub p: bool,
}

/// One parameter point. Unused fields are ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub j: Vec<usize>,
    pub k: usize,
    pub m: i64,
    pub n: u64,
    pub p: u64,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        use Quantity::*;
        match self {
            NE2 => "N_e2",
            NE1E2 => "N_e1e2",
            NE2Ek => "N_e2_ek",
            NE1E2Ek => "N_e1e2_ek",
            Zeros => "zeros",
            Varphi => "varphi",
            Phi => "phi",
            Phi12 => "phi_12",
            Phi123 => "phi_123",
            Toth1k => "toth_1k",
            Jordan => "jordan",
            EulerPhi => "euler_phi",
            G3 => "g3",
            G4 => "g4",
            RamanujanSum => "ramanujan_sum",
        }
    }

    pub fn axes(self) -> Axes {
        use Quantity::*;
        let none = Axes { j: false, k: false, m: false, n: false, p: false };
        match self {
            NE2 | NE1E2 | NE2Ek | NE1E2Ek => Axes { k: true, p: true, ..none },
            Zeros => Axes { j: true, k: true, p: true, ..none },
            Varphi | Phi => Axes { j: true, k: true, n: true, ..none },
            Phi12 | Toth1k | Jordan => Axes { k: true, n: true, ..none },
            Phi123 | EulerPhi => Axes { n: true, ..none },
            G3 | G4 | RamanujanSum => Axes { m: true, n: true, ..none },
        }
    }

    /// Points outside a quantity's domain that a table silently omits.
    pub fn skips(self, pt: &Point) -> bool {
        matches!(self, Quantity::G3 | Quantity::G4) && num_integer::gcd(pt.m.unsigned_abs(), pt.n) != 1
    }

    pub fn closed(self, pt: &Point, budget: Budget) -> Result<BigInt> {
        use Quantity::*;
        let (k, p, n) = (pt.k, pt.p, pt.n);
        let v = match self {
            NE2 => symfield::closed_n_e2(k, p)?,
            NE1E2 => symfield::closed_n_e1e2(k, p)?,
            NE2Ek => symfield::closed_n_e2_ek(k, p)?,
            NE1E2Ek => symfield::closed_n_e1e2_ek(k, p)?,
            Zeros => symfield::count_zeros_closed(&SymSystem::joint(k, pt.j.iter().copied())?, p)?,
            Varphi => totient::varphi(&SymSystem::joint(k, pt.j.iter().copied())?, n, budget)?,
            Phi => totient::phi(&SymSystem::individual(k, pt.j.iter().copied())?, n, budget)?,
            Phi12 => totient::closed_phi_12(k, n)?,
            Phi123 => totient::closed_phi_123(n)?,
            Toth1k => totient::toth_phi_1k(k, n)?,
            Jordan => jordan_totient(k as u32, n)?,
            EulerPhi => euler_phi(n)?,
            G3 => congruence::g3_closed(pt.m, n)?,
            G4 => congruence::g4_closed(pt.m, n)?,
            RamanujanSum => return Ok(BigInt::from(ramanujan_sum(pt.m, n)?)),
        };
        Ok(v.to_bigint())
    }

    pub fn brute(self, pt: &Point, budget: Budget) -> Result<BigInt> {
        use Quantity::*;
        let (k, p, n) = (pt.k, pt.p, pt.n);
        let zeros = |j: Vec<usize>| symfield::count_zeros_bruteforce(&SymSystem::joint(k, j)?, p, budget);
        let joint = |k: usize, j: Vec<usize>| totient::varphi_bruteforce(&SymSystem::joint(k, j)?, n, budget);
        let indiv = |k: usize, j: Vec<usize>| totient::phi_bruteforce(&SymSystem::individual(k, j)?, n, budget);
        let restricted = |k: usize, j: Vec<usize>| {
            congruence::count_bruteforce(&CongruenceProblem::symmetric(k, pt.m, n, j)?, budget)
        };
        let v = match self {
            NE2 => zeros(vec![2])?,
            NE1E2 => zeros(vec![1, 2])?,
            NE2Ek => zeros(vec![2, k])?,
            NE1E2Ek => zeros(vec![1, 2, k])?,
            Zeros => zeros(pt.j.clone())?,
            Varphi => joint(k, pt.j.clone())?,
            Phi => indiv(k, pt.j.clone())?,
            Phi12 => indiv(k, vec![1, 2])?,
            Phi123 => indiv(3, vec![1, 2, 3])?,
            Toth1k => indiv(k, vec![1, k])?,
            Jordan => joint(k, (1..=k).collect())?,
            EulerPhi => joint(1, vec![1])?,
            G3 => {
                require_unit(pt.m, n)?;
                restricted(3, vec![2, 3])?
            }
            G4 => {
                require_unit(pt.m, n)?;
                restricted(4, vec![3, 4])?
            }
            RamanujanSum => {
                let s = congruence::generalized_ramanujan_direct(pt.m, n, 1, &[1], budget)?;
                return rounded(s);
            }
        };
        Ok(v.to_bigint())
    }
}

fn require_unit(m: i64, n: u64) -> Result<()> {
    if num_integer::gcd(m.unsigned_abs(), n) != 1 {
        return Err(Error::InvalidInput(format!("gcd({m}, {n}) must be 1")));
    }
    Ok(())
}

/// The nearest integer to a floating exponential sum, refusing sums that are
/// not within tolerance of one.
pub fn rounded(s: congruence::ExponentialSum) -> Result<BigInt> {
    if s.discrepancy() >= EXP_SUM_TOLERANCE {
        return Err(Error::InvariantViolation(format!(
            "exponential sum {} + {}i is not within {EXP_SUM_TOLERANCE} of an integer",
            s.re, s.im
        )));
    }
    Ok(BigInt::from(s.rounded()))
}
