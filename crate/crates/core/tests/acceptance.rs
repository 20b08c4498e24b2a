//! Acceptance suite: one line per criterion with its statistic, threshold,
//! runtime and budget. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use hlvertex::verify::{self, ComparisonReport};

const SEED: u64 = 20_241_015;

struct Criterion {
    id: u32,
    name: &'static str,
    budget_secs: f64,
    run: fn() -> hlvertex::Result<Vec<ComparisonReport>>,
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            name: "Yang-Baxter residual, 1000 draws",
            budget_secs: 1.0,
            run: || Ok(vec![verify::check_yang_baxter(1000, SEED)?]),
        },
        Criterion {
            id: 2,
            name: "row operators vs skew P/Q, 4x4 box",
            budget_secs: 5.0,
            run: || Ok(vec![verify::check_skew_elements(10, SEED)?]),
        },
        Criterion {
            id: 3,
            name: "exchange relations, L<=3, cap 3",
            budget_secs: 30.0,
            run: || Ok(vec![verify::check_exchange(100, 3, 3, SEED)?]),
        },
        Criterion {
            id: 4,
            name: "support laws, all S, M,N<=3",
            budget_secs: 300.0,
            run: || Ok(vec![verify::check_support_sweep(3, 5, SEED)?]),
        },
        Criterion {
            id: 5,
            name: "first columns vs cut heights",
            budget_secs: 300.0,
            run: || Ok(vec![verify::check_height_sweep(3, 5, SEED)?]),
        },
        Criterion {
            id: 6,
            name: "moment formulas, 50 draws + 4/7",
            budget_secs: 120.0,
            run: || Ok(vec![verify::check_moment_sweep(50, SEED)?]),
        },
        Criterion {
            id: 7,
            name: "contour deformation invariance",
            budget_secs: 120.0,
            run: || Ok(vec![verify::check_contour_invariance(10, SEED)?]),
        },
        Criterion {
            id: 8,
            name: "array/set coupling, 1e4 events",
            budget_secs: 10.0,
            run: || {
                Ok(vec![verify::check_coupling(
                    &[1.0, 0.9, 1.1, 0.7, 1.3, 0.8],
                    0.45,
                    10_000,
                    SEED,
                )?])
            },
        },
        Criterion {
            id: 9,
            name: "RSK field vs half-continuous",
            budget_secs: 600.0,
            run: || {
                Ok(vec![
                    verify::check_rsk_field(&[1.0, 0.6, 1.4], 0.4, &[0.5, 1.0, 2.0], &[1, 2, 3], 100_000, SEED)?,
                    verify::check_rsk_worked_example(0.35)?,
                ])
            },
        },
        Criterion {
            id: 10,
            name: "Plancherel marginal, K=64/128",
            budget_secs: 600.0,
            run: || Ok(vec![verify::check_plancherel_marginal(&[1.0, 0.8], 0.3, 0.8, 2, 64, 100_000, SEED)?]),
        },
        Criterion {
            id: 11,
            name: "structural invariants",
            budget_secs: 120.0,
            run: || Ok(vec![verify::check_invariants(500, SEED)?]),
        },
    ]
}

fn main() -> ExitCode {
    let mut failed = 0;
    for c in criteria() {
        let started = Instant::now();
        let outcome = (c.run)();
        let secs = started.elapsed().as_secs_f64();
        let in_budget = secs < c.budget_secs;
        match outcome {
            Ok(reports) => {
                let pass = in_budget && reports.iter().all(|r| r.pass);
                failed += !pass as u32;
                let stats: Vec<String> = reports
                    .iter()
                    .map(|r| {
                        let cmp = if r.mode == verify::Mode::ChiSquare { ">" } else { "<" };
                        format!("{}={:.3e} ({cmp} {:.0e})", r.check, r.statistic, r.threshold)
                    })
                    .collect();
                println!(
                    "criterion {:>2} {} | {:<36} | {} | {:.2}s (budget {}s)",
                    c.id,
                    if pass { "PASS" } else { "FAIL" },
                    c.name,
                    stats.join(", "),
                    secs,
                    c.budget_secs
                );
                if !pass {
                    for r in &reports {
                        println!("    {}", serde_json::to_string(r).unwrap());
                    }
                }
            }
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL | {:<36} | error: {e} | {secs:.2}s", c.id, c.name);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criterion/criteria failed");
        ExitCode::FAILURE
    }
}
