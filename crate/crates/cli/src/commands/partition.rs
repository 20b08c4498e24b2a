use hlvertex::partitions::{self, partition_from_string, string_from_partition};
use hlvertex::SignString;
use serde_json::json;

use super::{emit_json, Ctx};
use crate::args::{need, PartitionCmd, SkewKind};
use crate::config;
use crate::error::Result;

pub fn run(cmd: PartitionCmd, ctx: &Ctx) -> Result<()> {
    match cmd {
        PartitionCmd::Conjugate(a) => {
            let a = config::apply(a, ctx.config)?;
            let l = need(&a.parts, "parts")?.partition()?;
            emit_json(&a.out, &json!({ "partition": l, "conjugate": l.conjugate() }))
        }
        PartitionCmd::String(a) => {
            let a = config::apply(a, ctx.config)?;
            let l = need(&a.parts, "parts")?.partition()?;
            let rows = a.rows.unwrap_or(l.len());
            let cols = a.cols.unwrap_or(l.first() as usize);
            let s = string_from_partition(&l, rows, cols)?;
            emit_json(&a.out, &json!({ "partition": l, "rows": rows, "cols": cols, "signs": s }))
        }
        PartitionCmd::FromString(a) => {
            let a = config::apply(a, ctx.config)?;
            let s: SignString = need(&a.signs, "signs")?.parse()?;
            let l = partition_from_string(&s, s.plus_count(), s.minus_count())?;
            emit_json(&a.out, &json!({ "signs": s, "partition": l }))
        }
        PartitionCmd::Skew(a) => {
            let a = config::apply(a, ctx.config)?;
            let lambda = need(&a.lambda, "lambda")?.partition()?;
            let mu = need(&a.mu, "mu")?.partition()?;
            let (x, t) = (need(&a.x, "x")?, need(&a.t, "t")?);
            let value = match a.kind {
                SkewKind::P => partitions::skew_p_one(&lambda, &mu, x, t),
                SkewKind::Q => partitions::skew_q_one(&lambda, &mu, x, t),
            };
            emit_json(
                &a.out,
                &json!({
                    "lambda": lambda,
                    "mu": mu,
                    "kind": a.kind,
                    "x": x,
                    "t": t,
                    "interlaces": partitions::interlaces(&lambda, &mu),
                    "value": value,
                }),
            )
        }
    }
}
