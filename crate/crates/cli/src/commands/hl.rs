use std::collections::BTreeMap;

use hlvertex::hl_process::{self, HlLattice};
use hlvertex::DiscreteDistribution;
use serde_json::json;

use super::{batched, emit_distribution, emit_json, Ctx};
use crate::args::{Format, HlCmd, HlObservable};
use crate::config;
use crate::error::{CliError, Result};
use crate::output::{csv_writer, join};

pub fn run(cmd: HlCmd, ctx: &Ctx) -> Result<()> {
    match cmd {
        HlCmd::Exact(a) => {
            let a = config::apply(a, ctx.config)?;
            let spec = a.model.hl_spec()?;
            let cap = match a.row_cap {
                Some(c) => c,
                None => hl_process::choose_row_cap(&spec)?,
            };
            let lat = HlLattice::new(&spec, cap)?;
            ctx.note(format!("row cap {cap}, mass deficit {:e}", lat.mass_deficit()));
            let meta = json!({ "spec": spec, "row_cap": cap, "observable": a.observable });
            match a.observable {
                HlObservable::Support => emit_distribution(&a.out, meta, &lat.support_distribution()?, |k| k.to_string()),
                HlObservable::FirstColumns => {
                    emit_distribution(&a.out, meta, &lat.first_column_distribution()?, |k| join(k))
                }
                HlObservable::Level => {
                    let i = a.level.ok_or(CliError::Missing("level"))?;
                    let mut meta = meta;
                    meta["level"] = json!(i);
                    emit_distribution(&a.out, meta, &lat.level_marginal(i)?, |k| k.to_string())
                }
                HlObservable::Sequence => {
                    emit_distribution(&a.out, meta, &lat.sequence_distribution()?, |k| k.to_string())
                }
            }
        }
        HlCmd::Sample(a) => {
            let a = config::apply(a, ctx.config)?;
            let spec = a.model.hl_spec()?;
            let cap = match a.row_cap {
                Some(c) => c,
                None => hl_process::choose_row_cap(&spec)?,
            };
            let lat = HlLattice::new(&spec, cap)?;
            ctx.note(format!("row cap {cap}, mass deficit {:e}", lat.mass_deficit()));
            let seqs = batched(a.samples, a.sampling.seed, a.sampling.workers, |r| Ok(lat.sampler().sample(r)))?;
            match a.out.format {
                Format::Csv => {
                    let mut w = csv_writer(a.out.output.as_deref())?;
                    w.write_record(["sample", "support", "signs", "first_columns"])?;
                    for (i, q) in seqs.iter().enumerate() {
                        w.write_record([
                            i.to_string(),
                            hl_process::support_of_sequence(q, &spec.s)?.to_string(),
                            hl_process::support_string(q, &spec.s)?.to_string(),
                            join(&hl_process::first_columns(q)),
                        ])?;
                    }
                    w.flush()?;
                    Ok(())
                }
                Format::Json => {
                    let mut counts = BTreeMap::new();
                    for q in &seqs {
                        *counts.entry(hl_process::support_of_sequence(q, &spec.s)?).or_insert(0u64) += 1;
                    }
                    let dist = DiscreteDistribution::from_counts(&counts)?;
                    let meta = json!({
                        "spec": spec,
                        "row_cap": cap,
                        "samples": a.samples,
                        "seed": a.sampling.seed,
                        "observable": "support",
                    });
                    emit_distribution(&a.out, meta, &dist, |k| k.to_string())
                }
            }
        }
        HlCmd::Normalization(a) => {
            let a = config::apply(a, ctx.config)?;
            let spec = a.model.hl_spec()?;
            emit_json(&a.out, &json!({ "spec": spec, "pi": hl_process::normalization_pi(&spec) }))
        }
    }
}
