use hlvertex::moments::{self, QuadratureOptions, Side};
use serde_json::json;

use super::{emit_json, Ctx};
use crate::args::{need, MomentArgs, MomentsCmd};
use crate::config;
use crate::error::{CliError, Result};

/// Relative gap accepted between the two sides of the identity.
const MATCH_TOL: f64 = 1e-7;

fn columns(a: &MomentArgs) -> Result<Vec<usize>> {
    let mut ms = need(&a.m, "m")?;
    match (a.k, ms.len()) {
        (Some(k), 1) => ms = vec![ms[0]; k],
        (Some(k), l) if k != l => return Err(CliError::Usage(format!("--k {k} but {l} values of --m"))),
        _ => {}
    }
    if ms.contains(&0) {
        return Err(CliError::Usage("every m_i must be at least 1".into()));
    }
    // the moment is symmetric in the m_i
    ms.sort_unstable_by(|x, y| y.cmp(x));
    Ok(ms)
}

pub fn run(cmd: MomentsCmd, ctx: &Ctx) -> Result<()> {
    let (side, a) = match cmd {
        MomentsCmd::Hl(a) => (Some(Side::Hl), a),
        MomentsCmd::Sixv(a) => (Some(Side::SixVertex), a),
        MomentsCmd::Match(a) => (None, a),
    };
    let a = config::apply(a, ctx.config)?;
    let ms = columns(&a)?;
    let (m, n) = a.model.dims(ms[0], 1)?;
    if m < ms[0] {
        return Err(CliError::Usage(format!("m_1 = {} exceeds M = {m}", ms[0])));
    }
    let (params, form) = a.model.params(m, n)?;
    let opts = QuadratureOptions {
        tol: a.tol,
        max_nodes: a.max_nodes,
        ..QuadratureOptions::default()
    };
    let mut out = json!({
        "m": ms,
        "M": m,
        "N": n,
        "input_form": form,
        "params": params,
        "native": params.to_native(),
        "options": opts,
    });
    match side {
        Some(Side::Hl) => {
            out["contours"] = json!(moments::select_contours(Side::Hl, &ms, &params)?);
            out["value"] = json!(moments::hl_moment(&ms, params.t, &params.a, &params.b, &opts)?);
            emit_json(&a.out, &out)
        }
        Some(Side::SixVertex) => {
            out["contours"] = json!(moments::select_contours(Side::SixVertex, &ms, &params)?);
            out["value"] = json!(moments::sixv_moment(&ms, &params.to_native(), &opts)?);
            emit_json(&a.out, &out)
        }
        None => {
            let mm = moments::moment_match_check(&ms, &params, &opts)?;
            let pass = mm.diff <= MATCH_TOL * mm.rhs.abs().max(1.0);
            out["match"] = json!(mm);
            out["threshold"] = json!(MATCH_TOL);
            out["pass"] = json!(pass);
            emit_json(&a.out, &out)?;
            if pass {
                Ok(())
            } else {
                Err(CliError::ChecksFailed(1))
            }
        }
    }
}
