use hlvertex::rsk;
use serde_json::json;

use super::{emit_json, Ctx};
use crate::args::{need, Format, RskCmd};
use crate::config;
use crate::error::Result;
use crate::output::csv_writer;

pub fn run(cmd: RskCmd, ctx: &Ctx) -> Result<()> {
    match cmd {
        RskCmd::Run(a) => {
            let a = config::apply(a, ctx.config)?;
            let rates = a.rates()?;
            let (t, tmax) = (need(&a.t, "t")?, need(&a.tmax, "tmax")?);
            let snaps = a.snapshots.clone().unwrap_or_default();
            let tr = rsk::run_rsk(&rates, t, tmax, a.sampling.seed, &snaps)?;
            ctx.note(format!("{} events", tr.events.len()));
            match a.out.format {
                Format::Csv => {
                    let mut w = csv_writer(a.out.output.as_deref())?;
                    w.write_record(["event", "time", "signal_level", "level", "row", "value"])?;
                    for (i, ev) in tr.events.iter().enumerate() {
                        for c in &ev.changes {
                            w.write_record([
                                i.to_string(),
                                ev.time.to_string(),
                                ev.level.to_string(),
                                c.level.to_string(),
                                c.row.to_string(),
                                c.value.to_string(),
                            ])?;
                        }
                    }
                    w.flush()?;
                    Ok(())
                }
                Format::Json => emit_json(
                    &a.out,
                    &json!({
                        "rates": rates,
                        "t": t,
                        "tmax": tmax,
                        "seed": a.sampling.seed,
                        "events": tr.events.len(),
                        "snapshots": tr.snapshots,
                        "final_state": tr.final_state,
                    }),
                ),
            }
        }
        RskCmd::Pushtasep(a) => {
            let a = config::apply(a, ctx.config)?;
            let rates = a.rates()?;
            let (t, tmax) = (need(&a.t, "t")?, need(&a.tmax, "tmax")?);
            let tr = rsk::run_pushtasep(&rates, t, tmax, a.sampling.seed)?;
            let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
            match a.out.format {
                Format::Csv => {
                    let mut w = csv_writer(a.out.output.as_deref())?;
                    w.write_record(["event", "time", "site", "vacated", "filled"])?;
                    for (i, (time, ev)) in tr.events.iter().enumerate() {
                        w.write_record([i.to_string(), time.to_string(), ev.site.to_string(), opt(ev.vacated), opt(ev.filled)])?;
                    }
                    w.flush()?;
                    Ok(())
                }
                Format::Json => emit_json(
                    &a.out,
                    &json!({
                        "rates": rates,
                        "t": t,
                        "tmax": tmax,
                        "seed": a.sampling.seed,
                        "events": tr.events.len(),
                        "final_state": tr.final_state,
                    }),
                ),
            }
        }
    }
}
