//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Correctness comes from `enumera_core::verify`; this target adds the
//! wall-clock bounds. Run with `cargo test -p enumera-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use enumera_core::verify::{self, Check};
use enumera_core::{tetra, Exec};

struct Outcome {
    check: Check,
    /// measured part and its bound, when the criterion has one
    timing: Option<(&'static str, Duration, Duration)>,
}

fn ms(n: u64) -> Duration {
    Duration::from_millis(n)
}

fn bounded(check: Check, bound: Duration) -> Outcome {
    let elapsed = check.elapsed;
    Outcome { check, timing: Some(("check", elapsed, bound)) }
}

fn unbounded(check: Check) -> Outcome {
    Outcome { check, timing: None }
}

/// The timed part of criterion 2: one full genericity audit plus the
/// three ledger scans on seed 0.
fn tetra_scan_time(exec: Exec) -> Duration {
    let start = Instant::now();
    let c = tetra::build_config(0).expect("seed 0 builds");
    let report = tetra::verify_genericity_with(&c, exec);
    assert_eq!(report.quadruples_checked, 20475);
    for delta in 1..=3 {
        tetra::enumerate_ledger(&c, delta, exec).expect("scan");
    }
    start.elapsed()
}

fn main() -> ExitCode {
    let exec = Exec::default();
    let seeds: Vec<u64> = (0..8).collect();

    let tetra_check = verify::tetrahedron_ledgers(&seeds, exec);
    let scan = tetra_scan_time(exec);
    let outcomes = vec![
        bounded(verify::severi_degrees(), ms(1)),
        Outcome { check: tetra_check, timing: Some(("seed-0 audit + scans", scan, ms(10_000))) },
        bounded(verify::triangle_ledgers(), ms(10)),
        bounded(verify::kummer_ledgers(), ms(100)),
        bounded(verify::dejonquieres_instances(), ms(10)),
        unbounded(verify::plucker_instances()),
        unbounded(verify::pencil_budgets()),
        bounded(verify::incidence_models(), ms(100)),
        bounded(verify::group_suite(exec), ms(60_000)),
        bounded(verify::fibre_checker(), ms(1_000)),
        unbounded(verify::cross_module(0, exec)),
    ];

    let mut failed = 0;
    for o in &outcomes {
        let in_time = o.timing.is_none_or(|(_, t, bound)| t < bound);
        let pass = o.check.pass && in_time;
        if !pass {
            failed += 1;
        }
        let timing = match o.timing {
            Some((what, t, bound)) => format!("{what} {:.3} ms < {} ms", t.as_secs_f64() * 1e3, bound.as_millis()),
            None => format!("{:.3} ms, no bound", o.check.elapsed.as_secs_f64() * 1e3),
        };
        println!(
            "{} criterion {:>2}: {} ({timing})",
            if pass { "PASS" } else { "FAIL" },
            o.check.id,
            o.check.name
        );
        for v in &o.check.violations {
            println!("        {v}");
        }
        if !in_time {
            println!("        time bound exceeded");
        }
    }
    println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
