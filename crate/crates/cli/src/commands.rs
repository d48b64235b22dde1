use std::fmt;
use std::io::{self, Write};

use num_bigint::BigInt;
use symtotient::arith::{is_prime, NamedFn};
use symtotient::verify::{self, Suite};
use symtotient::{congruence, symfield, totient};
use symtotient::{Budget, CongruenceProblem, Error, SymSystem, TotientSpec};

use crate::output::{Emitter, Format, Method, Record};
use crate::quantity::{self, Point};
use crate::spec::{parse_int_list, RangeSpec};
use crate::{
    Cli, Command, CongruenceArgs, FnArg, MenonArgs, MethodArg, ModeArg, RamanujanArgs, SuiteArg, TableArgs,
    TotientArgs, VerifyArgs, ZerosArgs,
};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_DISAGREE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(Error),
    Io(io::Error),
}

impl Failure {
    pub fn is_broken_pipe(&self) -> bool {
        matches!(self, Failure::Io(e) if e.kind() == io::ErrorKind::BrokenPipe)
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Compute(e) if e.is_budget() => EXIT_RESOURCE,
            Failure::Compute(Error::InvariantViolation(_)) => EXIT_DISAGREE,
            Failure::Compute(_) => EXIT_USAGE,
            Failure::Io(e) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
            Failure::Io(_) => EXIT_USAGE,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(s) => f.write_str(s),
            Failure::Compute(Error::NoClosedForm) => write!(f, "{} (try --method brute)", Error::NoClosedForm),
            Failure::Compute(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<u8, Failure>;

pub fn run(cli: Cli) -> Outcome {
    let budget = cli.budget.map(Budget::new).unwrap_or_default();
    let format = cli.format;
    match cli.command {
        Command::Totient(a) => cmd_totient(a, format.unwrap_or(Format::Text), budget),
        Command::Zeros(a) => cmd_zeros(a, format.unwrap_or(Format::Text), budget),
        Command::Congruence(a) => cmd_congruence(a, format.unwrap_or(Format::Text), budget),
        Command::Menon(a) => cmd_menon(a, format.unwrap_or(Format::Text), budget),
        Command::Ramanujan(a) => cmd_ramanujan(a, format.unwrap_or(Format::Text), budget),
        Command::Table(a) => cmd_table(a, format.unwrap_or(Format::Csv), budget),
        Command::Verify(a) => cmd_verify(a, budget),
    }
}

fn join(indices: &[usize]) -> String {
    indices.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn params(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn names(pairs: &[(String, String)]) -> Vec<&str> {
    pairs.iter().map(|(k, _)| k.as_str()).collect()
}

/// Evaluates one point by the requested route(s) and emits its records.
/// Returns false when `both` found a disagreement; both values are then printed.
fn emit_point<C, B>(
    em: &mut Emitter,
    quantity: &str,
    params: Vec<(String, String)>,
    method: MethodArg,
    closed: C,
    brute: B,
) -> Result<bool, Failure>
where
    C: FnOnce() -> symtotient::Result<BigInt>,
    B: FnOnce() -> symtotient::Result<BigInt>,
{
    let record = |value: BigInt, method: Method| Record {
        quantity: quantity.to_string(),
        params: params.clone(),
        value,
        method,
    };
    match method {
        MethodArg::Closed => em.emit(&record(closed()?, Method::Closed))?,
        MethodArg::Brute => em.emit(&record(brute()?, Method::Brute))?,
        MethodArg::Both => {
            let c = closed()?;
            let b = brute()?;
            if c == b {
                em.emit(&record(c, Method::Both))?;
            } else {
                em.emit(&record(c, Method::Closed))?;
                em.emit(&record(b, Method::Brute))?;
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn status(agreed: bool) -> u8 {
    if agreed {
        EXIT_OK
    } else {
        EXIT_DISAGREE
    }
}

fn cmd_totient(a: TotientArgs, format: Format, budget: Budget) -> Outcome {
    let j = a.j.resolve(a.k);
    let (sys, quantity) = match a.mode {
        ModeArg::Joint => (SymSystem::joint(a.k, j.iter().copied())?, "varphi"),
        ModeArg::Individual => (SymSystem::individual(a.k, j.iter().copied())?, "phi"),
    };
    let spec = TotientSpec::new(sys, a.n)?;
    let ps = params(&[("J", join(&j)), ("k", a.k.to_string()), ("n", a.n.to_string())]);
    let mut em = Emitter::new(format, &names(&ps))?;
    let agreed = emit_point(
        &mut em,
        quantity,
        ps,
        a.method.method,
        || totient::totient(&spec, budget).map(|v| v.to_bigint()),
        || totient::totient_bruteforce(&spec, budget).map(|v| v.to_bigint()),
    )?;
    Ok(status(agreed))
}

fn cmd_zeros(a: ZerosArgs, format: Format, budget: Budget) -> Outcome {
    let j = a.j.resolve(a.k);
    let sys = SymSystem::joint(a.k, j.iter().copied())?;
    let ps = params(&[("J", join(&j)), ("k", a.k.to_string()), ("p", a.p.to_string())]);
    let mut em = Emitter::new(format, &names(&ps))?;
    let agreed = emit_point(
        &mut em,
        "zeros",
        ps,
        a.method.method,
        || symfield::count_zeros_closed(&sys, a.p).map(|v| v.to_bigint()),
        || symfield::count_zeros_bruteforce(&sys, a.p, budget).map(|v| v.to_bigint()),
    )?;
    Ok(status(agreed))
}

fn cmd_congruence(a: CongruenceArgs, format: Format, budget: Budget) -> Outcome {
    let coeffs = parse_int_list(&a.coeffs).map_err(Failure::Usage)?;
    let k = coeffs.len();
    let j = a.j.resolve(k);
    let shown = coeffs.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
    let prob = CongruenceProblem::new(coeffs, a.b, a.n, SymSystem::individual(k, j.iter().copied())?)?;
    let ps = params(&[("J", join(&j)), ("b", a.b.to_string()), ("coeffs", shown), ("n", a.n.to_string())]);
    let mut em = Emitter::new(format, &names(&ps))?;
    let agreed = emit_point(
        &mut em,
        "congruence",
        ps,
        a.method.method,
        || congruence::count(&prob, budget).map(|v| v.to_bigint()),
        || congruence::count_bruteforce(&prob, budget).map(|v| v.to_bigint()),
    )?;
    Ok(status(agreed))
}

fn cmd_menon(a: MenonArgs, format: Format, budget: Budget) -> Outcome {
    let j = a.j.resolve(a.k);
    let sys = SymSystem::individual(a.k, j.iter().copied())?;
    let (f, fname) = match a.f {
        FnArg::Id => (NamedFn::Identity, "id"),
        FnArg::One => (NamedFn::One, "one"),
        FnArg::Tau => (NamedFn::Tau, "tau"),
    };
    let lhs = totient::menon_lhs(&sys, a.n, &f, budget)?;
    let rhs = totient::menon_rhs(&sys, a.n, &f, budget)?;
    let ps = params(&[("J", join(&j)), ("f", fname.to_string()), ("k", a.k.to_string()), ("n", a.n.to_string())]);
    let mut em = Emitter::new(format, &names(&ps))?;
    let agreed = lhs == rhs;
    em.emit(&Record { quantity: "menon_lhs".into(), params: ps.clone(), value: lhs, method: Method::Brute })?;
    em.emit(&Record { quantity: "menon_rhs".into(), params: ps, value: rhs, method: Method::Closed })?;
    Ok(status(agreed))
}

fn cmd_ramanujan(a: RamanujanArgs, format: Format, budget: Budget) -> Outcome {
    let j = a.j.resolve(a.k);
    let ps = params(&[("J", join(&j)), ("k", a.k.to_string()), ("m", a.m.to_string()), ("n", a.n.to_string())]);
    let mut em = Emitter::new(format, &names(&ps))?;
    let agreed = emit_point(
        &mut em,
        "ramanujan",
        ps,
        a.method.method,
        || congruence::generalized_ramanujan(a.m, a.n, a.k, &j, budget),
        || congruence::generalized_ramanujan_direct(a.m, a.n, a.k, &j, budget).and_then(quantity::rounded),
    )?;
    Ok(status(agreed))
}

fn required(range: Option<RangeSpec>, flag: &str, q: &str) -> Result<RangeSpec, Failure> {
    range.ok_or_else(|| Failure::Usage(format!("{flag} is required for {q}")))
}

fn cmd_table(a: TableArgs, format: Format, budget: Budget) -> Outcome {
    let q = a.quantity;
    let name = q.name();
    let axes = q.axes();
    let unused = |set: bool, used: bool, flag: &str| {
        if set && !used {
            Err(Failure::Usage(format!("{flag} does not apply to {name}")))
        } else {
            Ok(())
        }
    };
    unused(a.j.is_some(), axes.j, "--J")?;
    unused(a.k_range.is_some(), axes.k, "--k-range")?;
    unused(a.m_range.is_some(), axes.m, "--m-range")?;
    unused(a.n_range.is_some(), axes.n, "--n-range")?;
    unused(a.p_range.is_some(), axes.p, "--p-range")?;

    let placeholder = RangeSpec::single(0);
    let ks = if axes.k { required(a.k_range, "--k-range", name)? } else { placeholder };
    let ms = if axes.m { a.m_range.unwrap_or(RangeSpec::single(1)) } else { placeholder };
    let ns = if axes.n { required(a.n_range, "--n-range", name)? } else { placeholder };
    let ps = if axes.p { required(a.p_range, "--p-range", name)? } else { placeholder };
    let j_spec =
        if axes.j { Some(a.j.ok_or_else(|| Failure::Usage(format!("--J is required for {name}")))?) } else { None };

    let mut header = Vec::new();
    for (used, col) in [(axes.j, "J"), (axes.k, "k"), (axes.m, "m"), (axes.n, "n"), (axes.p, "p")] {
        if used {
            header.push(col);
        }
    }
    let mut em = Emitter::new(format, &header)?;
    let mut agreed = true;
    for k in ks.iter() {
        let j = j_spec.as_ref().map(|s| s.resolve(k as usize)).unwrap_or_default();
        for m in ms.iter() {
            for n in ns.iter() {
                for p in ps.iter().filter(|&p| !axes.p || is_prime(p)) {
                    let pt = Point { j: j.clone(), k: k as usize, m: m as i64, n, p };
                    if q.skips(&pt) {
                        continue;
                    }
                    let mut row = Vec::new();
                    for (used, col, v) in [
                        (axes.j, "J", join(&pt.j)),
                        (axes.k, "k", k.to_string()),
                        (axes.m, "m", m.to_string()),
                        (axes.n, "n", n.to_string()),
                        (axes.p, "p", p.to_string()),
                    ] {
                        if used {
                            row.push((col.to_string(), v));
                        }
                    }
                    agreed &= emit_point(
                        &mut em,
                        name,
                        row,
                        a.method.method,
                        || q.closed(&pt, budget),
                        || q.brute(&pt, budget),
                    )?;
                }
            }
        }
    }
    Ok(status(agreed))
}

fn cmd_verify(a: VerifyArgs, budget: Budget) -> Outcome {
    let suite = match a.suite {
        SuiteArg::All => None,
        SuiteArg::Symfield => Some(Suite::Symfield),
        SuiteArg::Totient => Some(Suite::Totient),
        SuiteArg::Congruence => Some(Suite::Congruence),
        SuiteArg::Menon => Some(Suite::Menon),
    };
    let mut out = io::stdout().lock();
    let (mut passed, mut failed, mut skipped) = (0u64, 0u64, 0u64);
    for sweep in verify::select(suite) {
        let report = verify::run(sweep, budget);
        writeln!(out, "{report}")?;
        for note in &report.tally.notes {
            writeln!(out, "  {note}")?;
        }
        out.flush()?;
        eprintln!("{}: {:.2}s", sweep.name, report.elapsed.as_secs_f64());
        passed += report.tally.passed;
        failed += report.tally.failed;
        skipped += report.tally.skipped;
    }
    let total = passed + failed + skipped;
    write!(out, "total: {passed}/{total} ok")?;
    if failed > 0 {
        write!(out, ", {failed} failed")?;
    }
    if skipped > 0 {
        write!(out, ", {skipped} skipped")?;
    }
    writeln!(out)?;
    Ok(if failed > 0 {
        EXIT_DISAGREE
    } else if a.strict && skipped > 0 {
        EXIT_RESOURCE
    } else {
        EXIT_OK
    })
}
