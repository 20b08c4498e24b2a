use std::collections::BTreeMap;

use hlvertex::six_vertex::{self, LatticeState};
use hlvertex::DiscreteDistribution;
use serde_json::json;

use super::{batched, emit_distribution, emit_json, Ctx};
use crate::args::{need, Format, SixvCmd, SixvObservable};
use crate::config;
use crate::error::{CliError, Result};
use crate::output::{csv_writer, fnv1a, join};

/// `h(x_i + 1, y_i)` along the cut path, `i = 1..M+N-1`.
fn cut_heights(st: &LatticeState) -> hlvertex::Result<Vec<u32>> {
    let d = st.domain();
    (1..d.m() + d.n())
        .map(|i| {
            let (x, y) = d.cut_point(i);
            st.height(x + 1, y)
        })
        .collect()
}

pub fn run(cmd: SixvCmd, ctx: &Ctx) -> Result<()> {
    match cmd {
        SixvCmd::Exact(a) => {
            let a = config::apply(a, ctx.config)?;
            let (m, n) = a.model.dims(1, 1)?;
            let (params, form) = a.model.params(m, n)?;
            let domain = a.model.domain(m, n)?;
            let meta = json!({
                "M": m,
                "N": n,
                "S": domain.signs(),
                "input_form": form,
                "params": params,
                "native": params.to_native(),
                "observable": a.observable,
            });
            match a.observable {
                SixvObservable::Outgoing => {
                    let d = six_vertex::exact_outgoing_distribution(&params, &domain)?;
                    emit_distribution(&a.out, meta, &d, |k| k.to_string())
                }
                SixvObservable::CutHeights => {
                    let d = six_vertex::exact_cut_height_distribution(&params, &domain)?;
                    emit_distribution(&a.out, meta, &d, |k| join(k))
                }
                SixvObservable::Heights => {
                    if a.points.is_empty() {
                        return Err(CliError::Missing("point"));
                    }
                    let pts: Vec<(usize, usize)> = a.points.iter().map(|p| (p.0, p.1)).collect();
                    let d = six_vertex::joint_height_distribution_on(&params, &domain, &pts)?;
                    let mut meta = meta;
                    meta["points"] = json!(pts);
                    emit_distribution(&a.out, meta, &d, |k| join(k))
                }
            }
        }
        SixvCmd::Sample(a) => {
            let a = config::apply(a, ctx.config)?;
            let (m, n) = a.model.dims(1, 1)?;
            let (params, form) = a.model.params(m, n)?;
            let domain = a.model.domain(m, n)?;
            let states = batched(a.samples, a.sampling.seed, a.sampling.workers, |r| {
                six_vertex::sample_state(&params, &domain, r)
            })?;
            match a.out.format {
                Format::Csv => {
                    let mut w = csv_writer(a.out.output.as_deref())?;
                    w.write_record(["sample", "state_hash", "nu", "cut_heights"])?;
                    for (i, st) in states.iter().enumerate() {
                        w.write_record([
                            i.to_string(),
                            format!("{:016x}", fnv1a(st.to_string().as_bytes())),
                            six_vertex::outgoing_skew(st)?.to_string(),
                            join(&cut_heights(st)?),
                        ])?;
                    }
                    w.flush()?;
                    Ok(())
                }
                Format::Json => {
                    let mut counts = BTreeMap::new();
                    for st in &states {
                        *counts.entry(six_vertex::outgoing_skew(st)?).or_insert(0u64) += 1;
                    }
                    let meta = json!({
                        "M": m,
                        "N": n,
                        "S": domain.signs(),
                        "input_form": form,
                        "params": params,
                        "native": params.to_native(),
                        "samples": a.samples,
                        "seed": a.sampling.seed,
                        "observable": "outgoing",
                    });
                    emit_distribution(&a.out, meta, &DiscreteDistribution::from_counts(&counts)?, |k| k.to_string())
                }
            }
        }
        SixvCmd::Halfcont(a) => {
            let a = config::apply(a, ctx.config)?;
            let t = need(&a.t, "t")?;
            let rates = need(&a.rates, "rates")?;
            let query = match (&a.query, a.tmax) {
                (Some(q), Some(h)) if q.iter().any(|&x| x > h) => {
                    return Err(CliError::Usage(format!("query times must not exceed --tmax {h}")))
                }
                (Some(q), _) => q.clone(),
                (None, Some(h)) => vec![h],
                (None, None) => return Err(CliError::Missing("tmax")),
            };
            let runs = batched(a.samples, a.sampling.seed, a.sampling.workers, |r| {
                six_vertex::sample_half_continuous(t, &rates, &query, r)
            })?;
            match a.out.format {
                Format::Csv => {
                    let mut w = csv_writer(a.out.output.as_deref())?;
                    w.write_record(["sample", "time", "heights"])?;
                    for (i, s) in runs.iter().enumerate() {
                        for (tau, h) in s.times.iter().zip(&s.heights) {
                            w.write_record([i.to_string(), tau.to_string(), join(h)])?;
                        }
                    }
                    w.flush()?;
                    Ok(())
                }
                Format::Json => emit_json(
                    &a.out,
                    &json!({ "t": t, "rates": rates, "query": query, "seed": a.sampling.seed, "runs": runs }),
                ),
            }
        }
    }
}
