use std::io::Write;

use hlvertex::moments::QuadratureOptions;
use hlvertex::verify::{self, ComparisonReport, Level};
use hlvertex::SignString;

use super::Ctx;
use crate::args::{Format, LevelArg, Output, VerifyCmd, VerifyLawArgs};
use crate::config;
use crate::error::{CliError, Result};

pub fn run(cmd: VerifyCmd, ctx: &Ctx) -> Result<()> {
    let (reports, out) = match cmd {
        VerifyCmd::All(a) => {
            let a = config::apply(a, ctx.config)?;
            let level = match a.level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Desk => Level::Desk,
            };
            (verify::verify_all(level, a.sampling.seed)?, a.out)
        }
        VerifyCmd::Support(a) => law(a, ctx, false)?,
        VerifyCmd::Height(a) => law(a, ctx, true)?,
        VerifyCmd::Moments(a) => {
            let a = config::apply(a, ctx.config)?;
            let rep = match &a.m {
                Some(ms) => {
                    let mut ms = ms.clone();
                    ms.sort_unstable_by(|x, y| y.cmp(x));
                    let (m, n) = a.model.dims(ms[0], 1)?;
                    let (p, _) = a.model.params(m, n)?;
                    verify::check_moment_match(&ms, &p, &QuadratureOptions::default())?
                }
                None => verify::check_moment_sweep(a.draws, a.sampling.seed)?,
            };
            (vec![rep], a.out)
        }
        VerifyCmd::Rsk(a) => {
            let a = config::apply(a, ctx.config)?;
            let rep = verify::check_rsk_field(&a.rates, a.t, &a.times, &a.ys, a.samples, a.sampling.seed)?;
            (vec![rep], a.out)
        }
        VerifyCmd::Plancherel(a) => {
            let a = config::apply(a, ctx.config)?;
            let rep =
                verify::check_plancherel_marginal(&a.c, a.t, a.tau, a.level, a.k, a.samples, a.sampling.seed)?;
            (vec![rep], a.out)
        }
    };
    report(&reports, &out)?;
    match reports.iter().filter(|r| !r.pass).count() {
        0 => Ok(()),
        n => Err(CliError::ChecksFailed(n)),
    }
}

fn law(a: VerifyLawArgs, ctx: &Ctx, height: bool) -> Result<(Vec<ComparisonReport>, Output)> {
    let a = config::apply(a, ctx.config)?;
    let rep = if a.model.t.is_some() || a.model.q.is_some() {
        let (m, n) = a.model.dims(1, 1)?;
        let (p, _) = a.model.params(m, n)?;
        let s = match &a.model.s {
            Some(s) => s.parse()?,
            None => SignString::ascending(m, n),
        };
        if height {
            verify::check_height_match(m, n, &s, &p)?
        } else {
            verify::check_support_match(m, n, &s, &p)?
        }
    } else if height {
        verify::check_height_sweep(a.max, a.draws, a.sampling.seed)?
    } else {
        verify::check_support_sweep(a.max, a.draws, a.sampling.seed)?
    };
    Ok((vec![rep], a.out))
}

/// JSON lines (or CSV rows) to the output, summary table to stderr.
fn report(reports: &[ComparisonReport], out: &Output) -> Result<()> {
    match out.format {
        Format::Json => {
            let mut w = crate::output::open(out.output.as_deref())?;
            for r in reports {
                serde_json::to_writer(&mut w, r)?;
                writeln!(w)?;
            }
            w.flush()?;
        }
        Format::Csv => {
            let mut w = crate::output::csv_writer(out.output.as_deref())?;
            w.write_record(["check", "mode", "statistic", "threshold", "pass", "samples", "runtime_secs"])?;
            for r in reports {
                w.write_record([
                    r.check.clone(),
                    serde_json::to_value(r.mode)?.as_str().unwrap_or_default().to_string(),
                    format!("{:e}", r.statistic),
                    format!("{:e}", r.threshold),
                    r.pass.to_string(),
                    r.samples.map(|s| s.to_string()).unwrap_or_default(),
                    format!("{:.3}", r.runtime_secs),
                ])?;
            }
            w.flush()?;
        }
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    let mut e = std::io::stderr().lock();
    for r in reports {
        writeln!(e, "{}", r.summary_line())?;
    }
    writeln!(e, "{passed}/{} checks passed", reports.len())?;
    Ok(())
}
