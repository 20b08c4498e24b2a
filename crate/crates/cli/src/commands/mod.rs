mod hl;
mod moments;
mod partition;
mod rsk;
mod sixv;
mod tboson;
mod verify;

use std::fmt::Display;
use std::path::Path;

use hlvertex::rng::{self, Rng};
use hlvertex::DiscreteDistribution;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Command, Format, Output};
use crate::error::{CliError, Result};

pub struct Ctx<'a> {
    pub config: Option<&'a Path>,
    pub verbose: u8,
}

impl Ctx<'_> {
    pub fn note(&self, msg: impl Display) {
        if self.verbose > 0 {
            eprintln!("{msg}");
        }
    }
}

pub fn dispatch(cmd: Command, ctx: &Ctx) -> Result<()> {
    match cmd {
        Command::Partition(c) => partition::run(c, ctx),
        Command::Hl(c) => hl::run(c, ctx),
        Command::Sixv(c) => sixv::run(c, ctx),
        Command::Tboson(c) => tboson::run(c, ctx),
        Command::Moments(c) => moments::run(c, ctx),
        Command::Rsk(c) => rsk::run(c, ctx),
        Command::Verify(c) => verify::run(c, ctx),
    }
}

/// Samples per batch. Batch `j` draws from stream `j` of the master seed,
/// so output does not depend on the worker count.
pub const BATCH: u64 = 1024;

pub fn batched<T, F>(samples: u64, seed: u64, workers: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut Rng) -> hlvertex::Result<T> + Sync,
{
    if workers == 0 {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let batches = samples.div_ceil(BATCH);
    let out: hlvertex::Result<Vec<Vec<T>>> = pool.install(|| {
        (0..batches)
            .into_par_iter()
            .map(|j| {
                let mut r = rng::stream(seed, j);
                let n = BATCH.min(samples - j * BATCH);
                (0..n).map(|_| f(&mut r)).collect()
            })
            .collect()
    });
    Ok(out?.into_iter().flatten().collect())
}

/// Writes `meta` with the distribution under `"distribution"` as JSON, or
/// one `key,prob` row per outcome as CSV.
pub fn emit_distribution<K: Ord + Clone + Serialize>(
    out: &Output,
    mut meta: Value,
    dist: &DiscreteDistribution<K>,
    label: impl Fn(&K) -> String,
) -> Result<()> {
    match out.format {
        Format::Json => {
            meta["distribution"] = json!(dist);
            crate::output::json(out.output.as_deref(), &meta)
        }
        Format::Csv => {
            let mut w = crate::output::csv_writer(out.output.as_deref())?;
            w.write_record(["key", "prob"])?;
            for (k, p) in dist.iter() {
                w.write_record([label(k), format!("{p:e}")])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

pub fn emit_json<T: Serialize>(out: &Output, value: &T) -> Result<()> {
    if out.format == Format::Csv {
        return Err(CliError::Usage("this command only writes JSON".into()));
    }
    crate::output::json(out.output.as_deref(), value)
}
