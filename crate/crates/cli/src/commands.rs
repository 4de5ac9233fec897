//! Subcommands that compute and print a single table.

use std::path::Path;

use chebprime::census::{self, ChebyshevPrimeRecord};
use chebprime::chebyshev::{self, ChebyshevLookup};
use chebprime::counting::{self, RiemannMode};
use chebprime::explicit::{self, ZeroTable};
use chebprime::jumps::{self, JumpKind, JumpRecord};
use chebprime::{golden, logint, Tables};

use crate::output::{emit, OutputSpec, Table};
use crate::{CliError, Method};

pub fn tables(limit: u64) -> Result<Tables, CliError> {
    Ok(Tables::new(limit.max(2))?)
}

pub fn primes(limit: u64, spec: &OutputSpec) -> Result<(), CliError> {
    let t = chebprime::sieve::sieve_range(limit)?;
    let mut out = Table::new(&["n", "p"]).sequence("p");
    for (i, &p) in t.primes().iter().enumerate() {
        out.push(vec![(i + 1).into(), p.into()]);
    }
    emit(&out, spec)
}

pub fn chebfn(from: u64, to: u64, spec: &OutputSpec) -> Result<(), CliError> {
    if from == 0 || to < from {
        return Err(CliError::Usage(format!("need 1 <= x <= to, got x = {from}, to = {to}")));
    }
    let t = tables(to)?;
    let mut out = Table::new(&["x", "theta", "psi", "psi0", "mangoldt"]);
    for x in from..=to {
        out.push(vec![
            x.into(),
            t.cheb.theta(x)?.into(),
            t.cheb.psi(x)?.into(),
            t.cheb.psi0(x)?.into(),
            chebyshev::mangoldt(x)?.value.into(),
        ]);
    }
    emit(&out, spec)
}

pub fn li(x: f64, to: Option<f64>, spec: &OutputSpec) -> Result<(), CliError> {
    match to {
        None => {
            let v = logint::li(x)?;
            let mut out = Table::new(&["x", "li", "est_abs_error"]);
            out.push(vec![x.into(), v.value.into(), v.est_abs_error.into()]);
            emit(&out, spec)
        }
        Some(b) => {
            let mut out = Table::new(&["a", "b", "integral"]);
            out.push(vec![x.into(), b.into(), logint::li_diff(x, b)?.into()]);
            emit(&out, spec)
        }
    }
}

fn jump_table(records: &[JumpRecord]) -> Table {
    let mut out = Table::new(&["p", "l", "exact", "approx", "margin"]).sequence("p");
    for r in records {
        out.push(vec![r.p.into(), r.l.into(), r.exact.into(), r.approx.into(), r.margin.into()]);
    }
    out
}

pub fn jumps(kind: JumpKind, limit: u64, index: u32, spec: &OutputSpec) -> Result<(), CliError> {
    let records = match (kind, index) {
        (JumpKind::Theta, 1) => {
            let t = tables(limit)?;
            jumps::theta_jumps(limit, &t.primes, &t.cheb)?
        }
        (JumpKind::Theta, _) => return Err(CliError::Usage("θ-jumps are defined for index 1 only".into())),
        (JumpKind::Psi, 1) => {
            let t = tables(limit)?;
            jumps::psi_jumps(limit, 1, &t.primes, &t.cheb)?
        }
        (JumpKind::Psi, l) => {
            let (primes, samples) = census::power_samples(limit, l)?;
            jumps::psi_jumps(limit, l, &primes, &samples)?
        }
    };
    emit(&jump_table(&records), spec)
}

/// Index-`l` census up to `limit`, choosing a full table or point samples.
pub fn chebyshev_records(limit: u64, l: u32) -> Result<(Vec<ChebyshevPrimeRecord>, chebprime::sieve::PrimeTable), CliError> {
    if l == 1 {
        let t = tables(limit)?;
        let r = census::chebyshev_primes(limit, 1, &t.primes, &t.cheb)?;
        Ok((r, t.primes))
    } else {
        let (primes, samples) = census::power_samples(limit, l)?;
        let r = census::chebyshev_primes(limit, l, &primes, &samples)?;
        Ok((r, primes))
    }
}

pub fn census_chebyshev(limit: u64, l: u32, spec: &OutputSpec) -> Result<(), CliError> {
    let (records, primes) = chebyshev_records(limit, l)?;
    let mut out = Table::new(&["rank", "p", "margin", "ambiguous", "density"]).sequence("p");
    for r in &records {
        let density = r.rank as f64 / primes.pi(r.p) as f64;
        out.push(vec![r.rank.into(), r.p.into(), r.margin.into(), r.ambiguous.into(), density.into()]);
    }
    emit(&out, spec)
}

pub fn riemann_records(kind: JumpKind, l: u32, limit: u64) -> Result<Vec<census::ChampionRecord>, CliError> {
    if l == 1 {
        let t = tables(limit)?;
        Ok(census::riemann_primes(kind, 1, limit, &t.primes, &t.cheb)?)
    } else {
        let (primes, samples) = census::power_samples(limit, l)?;
        Ok(census::riemann_primes(kind, l, limit, &primes, &samples)?)
    }
}

pub fn census_riemann(kind: JumpKind, l: u32, limit: u64, spec: &OutputSpec) -> Result<(), CliError> {
    let records = riemann_records(kind, l, limit)?;
    let mut out = Table::new(&["p", "l", "kind", "deviation", "abs_deviation", "ratio"]).sequence("p");
    for c in &records {
        out.push(vec![
            c.p.into(),
            c.l.into(),
            c.kind.name().into(),
            c.deviation.into(),
            c.abs_deviation.into(),
            c.ratio.into(),
        ]);
    }
    emit(&out, spec)
}

pub fn census_zeros(ranks: usize, spec: &OutputSpec) -> Result<(), CliError> {
    let (t, records) = census::census_for_ranks(ranks)?;
    let mut out = Table::new(&["rank", "p"]).sequence("rank");
    for (n, p) in census::offset_zeros(ranks, &records, &t.primes)? {
        out.push(vec![n.into(), p.into()]);
    }
    emit(&out, spec)
}

pub fn census_gaps(limit: u64, spec: &OutputSpec) -> Result<(), CliError> {
    let t = tables(limit)?;
    let mut out = Table::new(&["gap", "start"]).sequence("gap");
    for g in census::record_gaps(limit, &t.primes, &t.cheb)? {
        out.push(vec![g.gap.into(), g.start.into()]);
    }
    emit(&out, spec)
}

pub fn offsets_table(ranks: usize) -> Result<Table, CliError> {
    let (t, records) = census::census_for_ranks(ranks)?;
    let mut out = Table::new(&["n", "offset"]).sequence("offset");
    for (n, d) in census::offsets(&records[..ranks], &t.primes) {
        out.push(vec![n.into(), d.into()]);
    }
    Ok(out)
}

pub fn census_offsets(ranks: usize, spec: &OutputSpec) -> Result<(), CliError> {
    emit(&offsets_table(ranks)?, spec)
}

pub fn census_decades(k_max: u32, l: u32, spec: &OutputSpec) -> Result<(), CliError> {
    let top = 10u64
        .checked_pow(k_max)
        .and_then(|d| d.checked_pow(l))
        .ok_or_else(|| CliError::Usage("decade range overflows".into()))?;
    let (records, primes) = chebyshev_records(top, l)?;
    let counts = census::decade_counts_of(&records, k_max);
    let mut out = Table::new(&["k", "count", "pi", "ratio"]).sequence("count");
    for (k, &c) in (1..=k_max).zip(&counts) {
        let pi = primes.pi(10u64.pow(k));
        out.push(vec![k.into(), c.into(), pi.into(), (c as f64 / pi as f64).into()]);
    }
    emit(&out, spec)
}

pub fn count_at(x: u64, method: Method, terms: usize, spec: &OutputSpec) -> Result<(), CliError> {
    let t = tables(x)?;
    let row = counting::counting_row(x, terms, &t.primes, &t.cheb)?;
    let mut out;
    match method {
        Method::All => {
            out = Table::new(&["x", "n", "eta_n", "riemann_err", "gauss_err"]);
            out.push(vec![x.into(), terms.into(), row.eta_n.into(), row.riemann_err.into(), row.gauss_err.into()]);
        }
        Method::Eta => {
            out = Table::new(&["x", "n", "eta_n"]);
            out.push(vec![x.into(), terms.into(), row.eta_n.into()]);
        }
        Method::Riemann => {
            out = Table::new(&["x", "r", "riemann_err"]);
            let r = counting::riemann_r(x as f64, RiemannMode::Gram)?;
            out.push(vec![x.into(), r.into(), row.riemann_err.into()]);
        }
        Method::Gauss => {
            out = Table::new(&["x", "li", "gauss_err"]);
            out.push(vec![x.into(), logint::li(x as f64)?.value.into(), row.gauss_err.into()]);
        }
    }
    emit(&out, spec)
}

pub fn table1_rows(limit: u64) -> Result<Table, CliError> {
    let ns: Vec<usize> = golden::table1().iter().filter(|r| r.limit == limit).map(|r| r.n).collect();
    let ns = if ns.is_empty() { vec![3, 4, 5, 6, 7, 10, 50] } else { ns };
    let t = tables(limit)?;
    let mut out = Table::new(&["n", "x_max", "x_max_last", "eta_max", "x_max_riemann", "riemann_max"]);
    for n in ns {
        let e = counting::max_error_scan(limit, n, &t.primes, &t.cheb)?;
        let (_, last) = counting::constant_run(e.x, limit);
        let r = counting::max_riemann_error_scan(limit, n, &t.primes)?;
        out.push(vec![n.into(), e.x.into(), last.into(), e.value.into(), r.x.into(), r.value.into()]);
    }
    Ok(out)
}

pub fn table1(limit: u64, spec: &OutputSpec) -> Result<(), CliError> {
    emit(&table1_rows(limit)?, spec)
}

pub fn table2_rows() -> Result<Table, CliError> {
    let t = tables(10_000_000)?;
    let mut out = Table::new(&["x", "eta3", "riemann", "gauss"]);
    for k in 1..=10u64 {
        let row = counting::counting_row(k * 1_000_000, 3, &t.primes, &t.cheb)?;
        out.push(vec![row.x.into(), row.eta_n.into(), row.riemann_err.into(), row.gauss_err.into()]);
    }
    Ok(out)
}

pub fn table2(spec: &OutputSpec) -> Result<(), CliError> {
    emit(&table2_rows()?, spec)
}

pub fn figure2_rows(limit: u64, terms: usize) -> Result<Table, CliError> {
    let t = tables(limit)?;
    let mut out = Table::new(&["x", "eta"]);
    for (x, e) in counting::eta_series(limit, terms, &t.primes, &t.cheb)? {
        out.push(vec![x.into(), e.into()]);
    }
    Ok(out)
}

pub fn figure2(limit: u64, terms: usize, spec: &OutputSpec) -> Result<(), CliError> {
    emit(&figure2_rows(limit, terms)?, spec)
}

/// Direct evaluation is skipped above this argument.
const DIRECT_PSI0_MAX: f64 = 1e8;

pub fn explicit(x: f64, zeros: Option<&Path>, terms: Option<usize>, spec: &OutputSpec) -> Result<(), CliError> {
    let table = match zeros {
        Some(path) => explicit::load_zeros(path)?,
        None => ZeroTable::bundled(),
    };
    let k = terms.unwrap_or(table.len());
    let value = explicit::psi0_explicit(x, &table, k)?;
    let direct = if (2.0..=DIRECT_PSI0_MAX).contains(&x) {
        let n = x.floor() as u64;
        let t = tables(n)?;
        Some(if x == n as f64 { t.cheb.psi0(n)? } else { t.cheb.psi(n)? })
    } else {
        None
    };
    let mut out = Table::new(&["x", "terms", "psi0_explicit", "psi0_direct", "source"]);
    out.push(vec![x.into(), k.into(), value.into(), direct.into(), table.source().into()]);
    emit(&out, spec)
}
