//! Finite-range scans for conjectured properties. Reports findings only.

use clap::ValueEnum;

use chebprime::census;
use chebprime::chebyshev::ChebyshevLookup;
use chebprime::counting::{self, EpsilonKind};
use chebprime::jumps::{self, JumpRecord};
use chebprime::sieve::PrimeTable;

use crate::commands::tables;
use crate::output::{emit, OutputSpec, Table};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Conjecture {
    /// sign(K̃ − 1/l) = sign(K − 1/l) at every odd prime.
    NewdefSign,
    /// K < 1/l exactly when ψ₀(p^l) > p^l.
    DefmanEquivalence,
    /// J_n > 1 for every n.
    JnAboveOne,
    /// η_N steps down at primes and up at higher prime powers.
    EtaJumpSigns,
    /// li(θ(x)) > π(x) and li(ψ(x)) > π(x).
    EpsilonPositivity,
}

impl Conjecture {
    fn name(self) -> &'static str {
        match self {
            Conjecture::NewdefSign => "newdef-sign",
            Conjecture::DefmanEquivalence => "defman-equivalence",
            Conjecture::JnAboveOne => "jn-above-one",
            Conjecture::EtaJumpSigns => "eta-jump-signs",
            Conjecture::EpsilonPositivity => "epsilon-positivity",
        }
    }
}

/// Robin's criterion is stated from here on; smaller x are listed in the note.
pub const EPSILON_START: u64 = 11;

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub conjecture: Conjecture,
    pub range_start: u64,
    pub range_end: u64,
    pub scanned: usize,
    pub counterexamples: Vec<String>,
    pub note: String,
}

type Psi0 = Box<dyn Fn(u64) -> chebprime::Result<f64>>;

fn psi_records(limit: u64, l: u32) -> Result<(Vec<JumpRecord>, PrimeTable, Psi0), CliError> {
    if l == 1 {
        let t = tables(limit)?;
        let records = jumps::psi_jumps(limit, 1, &t.primes, &t.cheb)?;
        let cheb = t.cheb;
        Ok((records, t.primes, Box::new(move |x| cheb.psi0(x))))
    } else {
        let (primes, samples) = census::power_samples(limit, l)?;
        let records = jumps::psi_jumps(limit, l, &primes, &samples)?;
        Ok((records, primes, Box::new(move |x| samples.psi0(x))))
    }
}

fn ambiguous_note(records: &[JumpRecord]) -> String {
    let n = records.iter().filter(|r| r.ambiguous).count();
    format!("{n} records within the ambiguity band {:e}", jumps::AMBIGUITY_BAND)
}

pub fn scan(conjecture: Conjecture, limit: u64, l: u32, terms: usize) -> Result<Report, CliError> {
    let report = |range_start, scanned, counterexamples, note| Report {
        conjecture,
        range_start,
        range_end: limit,
        scanned,
        counterexamples,
        note,
    };
    Ok(match conjecture {
        Conjecture::NewdefSign => {
            let (records, _, _) = psi_records(limit, l)?;
            let bad = records
                .iter()
                .filter(|r| r.approx_margin().map(f64::is_sign_negative) != Some(r.margin.is_sign_negative()))
                .map(|r| r.p.to_string())
                .collect();
            report(3, records.len(), bad, ambiguous_note(&records))
        }
        Conjecture::DefmanEquivalence => {
            let (records, _, psi0) = psi_records(limit, l)?;
            let mut bad = Vec::new();
            for r in &records {
                let q = r.p.pow(l);
                if r.below_threshold != (psi0(q)? > q as f64) {
                    bad.push(r.p.to_string());
                }
            }
            report(3, records.len(), bad, ambiguous_note(&records))
        }
        Conjecture::JnAboveOne => {
            let t = tables(limit)?;
            let records = jumps::theta_jumps(limit, &t.primes, &t.cheb)?;
            let bad = records.iter().filter(|r| !(r.exact > 1.0)).map(|r| r.p.to_string()).collect();
            report(3, records.len(), bad, "J_n is recorded at p_{n+1}".into())
        }
        Conjecture::EtaJumpSigns => {
            let t = tables(limit)?;
            let steps = counting::eta_jump_report(limit, terms, &t.primes, &t.cheb)?;
            let bad = steps.iter().filter(|j| j.sign_counterexample).map(|j| j.x.to_string()).collect();
            let powers = steps.iter().filter(|j| j.l > 1).count();
            let bound = steps.iter().filter(|j| j.bound_counterexample).count();
            let note = format!("N = {terms}; jump - 1/l <= 0 at {bound} of {powers} higher prime powers");
            report(3, steps.len(), bad, note)
        }
        Conjecture::EpsilonPositivity => {
            let t = tables(limit)?;
            let mut bad = Vec::new();
            let mut below = Vec::new();
            for (kind, name) in [(EpsilonKind::Theta, "theta"), (EpsilonKind::Psi, "psi")] {
                let v = counting::epsilon_violations(kind, limit, &t.primes, &t.cheb)?;
                let (small, large): (Vec<u64>, Vec<u64>) = v.into_iter().partition(|&x| x < EPSILON_START);
                bad.extend(large.iter().map(|x| format!("{name}:{x}")));
                if let (Some(a), Some(b)) = (small.first(), small.last()) {
                    below.push(format!("{name} <= 0 on [{a}, {b}]"));
                }
            }
            let scanned = limit.saturating_sub(EPSILON_START - 1) as usize;
            let note = format!("x < {EPSILON_START} not scanned: {}", below.join(", "));
            report(EPSILON_START, scanned, bad, note)
        }
    })
}

pub fn run(conjecture: Conjecture, limit: u64, l: u32, terms: usize, spec: &OutputSpec) -> Result<(), CliError> {
    let r = scan(conjecture, limit, l, terms)?;
    let mut out = Table::new(&["conjecture", "range_start", "range_end", "scanned", "counterexample_count", "counterexamples", "note"]);
    out.push(vec![
        r.conjecture.name().into(),
        r.range_start.into(),
        r.range_end.into(),
        r.scanned.into(),
        r.counterexamples.len().into(),
        r.counterexamples.join(" ").into(),
        r.note.into(),
    ]);
    emit(&out, spec)
}
