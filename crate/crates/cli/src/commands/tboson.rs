use hlvertex::tboson::{self, Exchange};
use hlvertex::verify;
use serde_json::json;

use super::{emit_json, Ctx};
use crate::args::TbosonCmd;
use crate::config;
use crate::error::{CliError, Result};

/// Largest exchange residual accepted.
const EXCHANGE_TOL: f64 = 1e-11;

pub fn run(cmd: TbosonCmd, ctx: &Ctx) -> Result<()> {
    match cmd {
        TbosonCmd::Yb(a) => {
            let a = config::apply(a, ctx.config)?;
            let rep = verify::check_yang_baxter(a.trials, a.sampling.seed)?;
            emit_json(&a.out, &rep)?;
            if rep.pass {
                Ok(())
            } else {
                Err(CliError::ChecksFailed(1))
            }
        }
        TbosonCmd::Exchange(a) => {
            let a = config::apply(a, ctx.config)?;
            let which: Vec<Exchange> = match &a.which {
                Some(w) => vec![w.parse()?],
                None => vec![Exchange::CA, Exchange::CB, Exchange::DA, Exchange::DB],
            };
            let mut residuals = serde_json::Map::new();
            let mut worst: f64 = 0.0;
            for w in which {
                let r = tboson::verify_exchange_relation(w, a.sites, a.cap, a.a, a.b, a.t)?;
                worst = worst.max(r);
                residuals.insert(format!("{w:?}"), json!(r));
            }
            let pass = worst < EXCHANGE_TOL;
            emit_json(
                &a.out,
                &json!({
                    "L": a.sites,
                    "cap": a.cap,
                    "a": a.a,
                    "b": a.b,
                    "t": a.t,
                    "residuals": residuals,
                    "max_residual": worst,
                    "threshold": EXCHANGE_TOL,
                    "pass": pass,
                }),
            )?;
            if pass {
                Ok(())
            } else {
                Err(CliError::ChecksFailed(1))
            }
        }
    }
}
