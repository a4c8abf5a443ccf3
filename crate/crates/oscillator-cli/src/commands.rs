//! Implementations of the CLI verbs. Each builds a [`RunReport`], prints it
//! (text or JSON), and returns an error class that `main` maps to the exit
//! code contract: 0 success, 1 invariant failure, 2 unsupported mode, 64
//! usage.

use std::path::Path;
use std::time::Instant;

use oscillator::arith::{is_prime, Prime};
use oscillator::spectral::{
    character_space, dft_eigenbasis, multiplicities_dft_closed_form, spectral_support,
    DEFAULT_ORACLE_BUDGET,
};
use oscillator::tori::{diagonal_torus, nonsplit_torus, weyl_centralizer, Torus};
use oscillator::transform::{dft, dot_direct, mellin, FotPlan, MultSignal};

use crate::bench::{bench_prime, fit_exponent};
use crate::format::{torus_label, BasisFile, BasisVector, CoeffLine, CoeffsFile, SignalFile};
use crate::report::{CheckResult, RunReport};
use crate::verify::{
    full_suite, suite_multiplicities, SAMPLES_REPRESENTATION, SIGNALS_FAST,
};
use crate::{CliError, CliResult, Mode, TorusArg};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Dot => "dot",
        Mode::Fot => "fot",
        Mode::Dft => "dft",
        Mode::Mellin => "mellin",
    }
}

fn build_torus(arg: TorusArg, p: Prime) -> Torus {
    match arg {
        TorusArg::Tw => weyl_centralizer(p),
        TorusArg::A => diagonal_torus(p),
        TorusArg::Ns => nonsplit_torus(p),
    }
}

fn gen_entries(t: &Torus) -> [u64; 4] {
    let g = t.generator();
    [g.a().value(), g.b().value(), g.c().value(), g.d().value()]
}

fn finish(report: &RunReport, json: bool, what: &str) -> CliResult<()> {
    report.print(json);
    if report.all_passed() {
        Ok(())
    } else {
        let (_, failed) = report.counts();
        Err(CliError::Failure(format!("{failed} {what} check(s) failed")))
    }
}

/// `eigenbasis`: construct the canonical Fourier eigenbasis at `p` and write
/// it as a basis file.
pub fn cmd_eigenbasis(prime: u64, out: &Path, json: bool) -> CliResult<()> {
    let started = Instant::now();
    let p = Prime::new(prime)?;
    let basis = dft_eigenbasis(p);
    let t = weyl_centralizer(p);
    let file = BasisFile {
        p,
        torus: torus_label(t.kind()).to_string(),
        gen: gen_entries(&t),
        vectors: basis
            .entries()
            .iter()
            .map(|e| BasisVector {
                chi: e.character.index(),
                slot: e.slot as u64,
                lambda: Some(e.eigenvalue),
                vector: e.vector.clone(),
            })
            .collect(),
    };
    file.write(out)?;

    let mut report = RunReport::new("eigenbasis");
    report.param("p", prime);
    report.param("out", out.display());
    let histogram = basis.multiplicities();
    let expected = multiplicities_dft_closed_form(p);
    report.push(
        CheckResult::exact("eigenvalue histogram matches closed form", histogram == expected)
            .with_detail(format!("histogram {histogram} over (1, -1, i, -i)")),
    );
    report.push(
        CheckResult::exact("basis is complete", basis.len() == p.as_usize())
            .with_detail(format!("{} vectors", basis.len())),
    );
    report.time("total", started.elapsed().as_secs_f64());
    finish(&report, json, "eigenbasis")
}

/// `transform`: apply the selected transform to a signal file.
pub fn cmd_transform(
    input: &Path,
    mode: Mode,
    torus: TorusArg,
    out: &Path,
    json: bool,
) -> CliResult<()> {
    let started = Instant::now();
    let signal = SignalFile::read(input)?;
    let p = signal.p;
    let f = &signal.values;

    let mut report = RunReport::new("transform");
    report.param("p", p.get());
    report.param("mode", mode_name(mode));
    report.param("input", input.display());
    report.param("out", out.display());

    match mode {
        Mode::Dft => {
            let g = dft(p, f);
            let norm_drift = (g.norm() - f.norm()).abs() / f.norm().max(1.0);
            SignalFile::new(p, g)?.write(out)?;
            report.push(CheckResult::numeric("fourier norm preservation", norm_drift, 1e-9));
        }
        Mode::Mellin => {
            let t = diagonal_torus(p);
            let values = mellin(&MultSignal::from_full(p, f));
            let count = values.len();
            let file = CoeffsFile {
                p,
                torus: torus_label(t.kind()).to_string(),
                gen: gen_entries(&t),
                entries: values
                    .into_iter()
                    .enumerate()
                    .map(|(k, value)| CoeffLine { chi: k as u64, slot: None, lambda: None, value })
                    .collect(),
            };
            file.write(out)?;
            report.push(
                CheckResult::exact("one coefficient per character", count == p.as_usize() - 1)
                    .with_detail(format!("{count} characters")),
            );
        }
        Mode::Dot => {
            let t = build_torus(torus, p);
            report.param("torus", torus_label(t.kind()));
            let entries = if matches!(torus, TorusArg::Tw) {
                // The canonical eigenbasis carries Fourier eigenvalue labels.
                let basis = dft_eigenbasis(p);
                let coeffs = dot_direct(&basis, f);
                basis
                    .entries()
                    .iter()
                    .zip(coeffs.entries())
                    .map(|(b, c)| CoeffLine {
                        chi: b.character.index(),
                        slot: Some(b.slot as u64),
                        lambda: Some(b.eigenvalue),
                        value: c.value,
                    })
                    .collect::<Vec<_>>()
            } else {
                // Other tori still split the space into character lines and
                // one quadratic plane; expand against that orthonormal frame.
                let mut lines = Vec::new();
                for chi in spectral_support(&t) {
                    let space = character_space(&t, &chi)?;
                    for (slot, vector) in space.basis.iter().enumerate() {
                        lines.push(CoeffLine {
                            chi: chi.index(),
                            slot: Some(slot as u64),
                            lambda: None,
                            value: f.inner(vector),
                        });
                    }
                }
                lines
            };
            let total: f64 = entries.iter().map(|e| e.value.norm_sqr()).sum();
            let parseval = (total - f.norm_sq()).abs() / f.norm_sq().max(1.0);
            let count = entries.len();
            let file = CoeffsFile {
                p,
                torus: torus_label(t.kind()).to_string(),
                gen: gen_entries(&t),
                entries,
            };
            file.write(out)?;
            report.push(
                CheckResult::exact("one coefficient per basis vector", count == p.as_usize())
                    .with_detail(format!("{count} coefficients")),
            );
            report.push(CheckResult::numeric("parseval identity", parseval, 1e-9));
        }
        Mode::Fot => {
            if !matches!(torus, TorusArg::Tw) {
                return Err(usage(
                    "the fast transform is defined on the Weyl-centralizer torus; use --torus Tw",
                ));
            }
            let plan = FotPlan::new(p)?;
            let t = plan.torus();
            report.param("torus", torus_label(t.kind()));
            let theta = plan.apply(f);
            let count = theta.len();
            let file = CoeffsFile {
                p,
                torus: torus_label(t.kind()).to_string(),
                gen: gen_entries(t),
                entries: theta
                    .into_iter()
                    .map(|(chi, value)| CoeffLine {
                        chi: chi.index(),
                        slot: None,
                        lambda: None,
                        value,
                    })
                    .collect(),
            };
            file.write(out)?;
            report.push(
                CheckResult::exact("one pairing per character", count == p.as_usize() - 1)
                    .with_detail(format!("{count} characters")),
            );
        }
    }

    report.time("total", started.elapsed().as_secs_f64());
    finish(&report, json, "transform")
}

/// Expands a range argument (`lo..hi` inclusive, composites skipped) or a
/// single prime into the list of moduli to visit.
pub fn parse_prime_selection(
    range: Option<&str>,
    prime: Option<u64>,
) -> CliResult<Vec<u64>> {
    match (range, prime) {
        (Some(_), Some(_)) => Err(usage("pass a range argument or --prime, not both")),
        (None, None) => Err(usage("pass a prime range like `5..61`, or `--prime <p>`")),
        (None, Some(q)) => Ok(vec![q]),
        (Some(r), None) => {
            if let Some((lo, hi)) = r.split_once("..") {
                let lo: u64 =
                    lo.parse().map_err(|_| usage(format!("bad range bound `{lo}`")))?;
                let hi: u64 =
                    hi.parse().map_err(|_| usage(format!("bad range bound `{hi}`")))?;
                Ok((lo..=hi).filter(|n| *n >= 5 && is_prime(*n)).collect())
            } else {
                let q: u64 = r.parse().map_err(|_| usage(format!("bad prime `{r}`")))?;
                Ok(vec![q])
            }
        }
    }
}

/// `verify`: the full invariant suite for every prime in the selection.
pub fn cmd_verify(
    range: Option<&str>,
    prime: Option<u64>,
    oracle_budget: Option<u64>,
    json: bool,
) -> CliResult<()> {
    let primes = parse_prime_selection(range, prime)?;
    let budget = oracle_budget.unwrap_or(DEFAULT_ORACLE_BUDGET);
    let mut report = RunReport::new("verify");
    report.param("primes", primes.len());
    report.param("oracle_budget", budget);
    if primes.is_empty() {
        report.note("empty range: nothing to verify");
    }
    for &q in &primes {
        let p = Prime::new(q)?;
        let started = Instant::now();
        report.extend(full_suite(p, budget, SAMPLES_REPRESENTATION, SIGNALS_FAST)?);
        report.time(format!("p={q}"), started.elapsed().as_secs_f64());
    }
    finish(&report, json, "invariant")
}

/// `bench`: wall-clock table fast vs. naive, plus the fitted growth exponent
/// of the fast path.
pub fn cmd_bench(primes: &str, json: bool) -> CliResult<()> {
    let mut list = Vec::new();
    for token in primes.split(',') {
        let token = token.trim();
        let q: u64 = token.parse().map_err(|_| usage(format!("bad prime `{token}`")))?;
        list.push(q);
    }

    let mut report = RunReport::new("bench");
    report.param("primes", primes);
    let mut fast_points = Vec::new();
    for q in list {
        let p = Prime::new(q)?;
        if q % 4 == 3 {
            report.note(format!("p={q}: p = 3 (mod 4) has no fast path; skipped"));
            continue;
        }
        let row = bench_prime(p)?;
        report.time(format!("fast p={q}"), row.fast_seconds);
        report.time(format!("naive p={q}"), row.naive_seconds);
        report.note(format!("p={q}: speedup {:.1}x", row.speedup));
        fast_points.push((q, row.fast_seconds));
    }
    if let Some(exponent) = fit_exponent(&fast_points) {
        report.param("fitted_exponent", format!("{exponent:.4}"));
        report.note(format!("fitted growth exponent of the fast path: {exponent:.4}"));
    }
    report.print(json);
    Ok(())
}

/// `multiplicities`: three-route eigenvalue multiplicity tables per prime.
pub fn cmd_multiplicities(
    range: Option<&str>,
    prime: Option<u64>,
    oracle_budget: Option<u64>,
    json: bool,
) -> CliResult<()> {
    let primes = parse_prime_selection(range, prime)?;
    let budget = oracle_budget.unwrap_or(DEFAULT_ORACLE_BUDGET);
    let mut report = RunReport::new("multiplicities");
    report.param("primes", primes.len());
    report.param("oracle_budget", budget);
    if primes.is_empty() {
        report.note("empty range: nothing to tabulate");
    }
    let started = Instant::now();
    for &q in &primes {
        let p = Prime::new(q)?;
        report.extend(suite_multiplicities(p, budget)?);
    }
    report.time("total", started.elapsed().as_secs_f64());
    finish(&report, json, "multiplicity")
}
