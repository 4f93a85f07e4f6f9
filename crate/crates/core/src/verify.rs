//! The full verification suite, one check per acceptance criterion.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Result;
use crate::formulas::{self, PencilBudget};
use crate::par::Exec;
use crate::{fibre, kummer, tetra, triangle};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub violations: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seeds: Vec<u64>,
    pub exec: Exec,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seeds: (0..8).collect(), exec: Exec::default() }
    }
}

/// Collects mismatches; errors from the library count as violations.
#[derive(Default)]
struct Collector(Vec<String>);

impl Collector {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: impl std::fmt::Display, got: T, want: T) {
        if got != want {
            self.0.push(format!("{what}: got {got:?}, expected {want:?}"));
        }
    }

    fn truth(&mut self, what: impl std::fmt::Display, ok: bool) {
        if !ok {
            self.0.push(format!("{what}: failed"));
        }
    }

    fn ok<T>(&mut self, what: impl std::fmt::Display, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.0.push(format!("{what}: {e}"));
                None
            }
        }
    }
}

fn timed(id: u32, name: &'static str, body: impl FnOnce(&mut Collector)) -> Check {
    let start = Instant::now();
    let mut c = Collector::default();
    body(&mut c);
    Check { id, name, pass: c.0.is_empty(), violations: c.0, elapsed: start.elapsed() }
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn severi_degrees() -> Check {
    timed(1, "severi degrees of quartics", |c| {
        for (delta, want) in [(1, 36), (2, 480), (3, 3200)] {
            if let Some(v) = c.ok(format!("severi_degree(4,{delta})"), formulas::severi_degree(4, delta)) {
                c.eq(format!("severi_degree(4,{delta})"), v, big(want));
            }
        }
    })
}

pub const TETRA_SHAPES: [&[(u64, u64)]; 3] = [
    &[(24, 1), (4, 3)],
    &[(240, 1), (48, 3), (6, 16)],
    &[(1024, 1), (192, 3), (24, 16), (4, 304)],
];

pub fn tetrahedron_ledgers(seeds: &[u64], exec: Exec) -> Check {
    timed(2, "tetrahedron ledgers", |c| {
        let mut first: Option<Vec<crate::ComponentLedger>> = None;
        let opts = tetra::BuildOptions { exec, ..Default::default() };
        for &seed in seeds {
            let Some(cfg) = c.ok(format!("build_config({seed})"), tetra::build_config_with(seed, &opts)) else {
                continue;
            };
            let report = tetra::verify_genericity_with(&cfg, exec);
            c.truth(format!("seed {seed}: genericity"), report.is_pass());
            let mut ledgers = Vec::new();
            for delta in 1..=3 {
                if let Some(l) = c.ok(format!("seed {seed} delta {delta}"), tetra::enumerate_ledger(&cfg, delta, exec)) {
                    c.eq(format!("seed {seed} delta {delta} shape"), l.shape().as_slice(), TETRA_SHAPES[delta as usize - 1]);
                    ledgers.push(l);
                }
            }
            match &first {
                None => first = Some(ledgers),
                Some(f) => c.truth(format!("seed {seed}: ledgers identical to first seed"), *f == ledgers),
            }
        }
    })
}

pub fn triangle_ledgers() -> Check {
    timed(3, "triangle ledgers", |c| {
        for (delta, want) in (1..=3).zip(triangle::TOTALS) {
            if let Some(l) = c.ok(format!("triangle ledger {delta}"), triangle::ledger(delta)) {
                c.eq(format!("triangle delta {delta} total"), l.total(), want);
            }
            for e in triangle::entries(delta).unwrap_or_default() {
                if let Some(v) = c.ok(format!("derivation of {}", e.label), e.derivation.eval()) {
                    c.eq(format!("derivation of {}", e.label), v, e.p_degree);
                }
            }
        }
    })
}

pub fn kummer_ledgers() -> Check {
    timed(4, "kummer ledgers", |c| {
        let shapes: [&[(u64, u64)]; 3] = [&[(4, 1), (16, 2)], &[(120, 4)], &[(240, 8), (16, 80)]];
        for (delta, want) in (1..=3).zip(shapes) {
            if let Some(l) = c.ok(format!("kummer ledger {delta}"), kummer::kummer_ledger(delta)) {
                c.eq(format!("kummer delta {delta} shape"), l.shape().as_slice(), want);
            }
        }
        c.ok("dual_surface_degree(4,16,0)", formulas::dual_surface_degree(4, 16, 0))
            .map(|v| c.eq("dual_surface_degree(4,16,0)", v, big(4)));
        c.eq("count_offtrope_triples(theta)", kummer::build_theta_model().count_offtrope_triples(), 240);
        c.ok("dejonquieres(8,0,3)", formulas::dejonquieres(8, 0, 3)).map(|v| c.eq("dejonquieres(8,0,3)", v, big(80)));
    })
}

pub fn dejonquieres_instances() -> Check {
    timed(5, "de Jonquieres instances", |c| {
        for (d, g, tau, want) in [(8, 0, 1, 14), (8, 0, 2, 60), (8, 0, 3, 80), (6, 4, 1, 18), (3, 0, 1, 4)] {
            let what = format!("dejonquieres({d},{g},{tau})");
            if let Some(v) = c.ok(&what, formulas::dejonquieres(d, g, tau)) {
                c.eq(&what, v, big(want));
            }
        }
        for d in 1..=12 {
            for g in 0..=d {
                let what = format!("dejonquieres({d},{g},0)");
                if let Some(v) = c.ok(&what, formulas::dejonquieres(d, g, 0)) {
                    c.eq(&what, v, big(1));
                }
            }
        }
    })
}

pub fn plucker_instances() -> Check {
    timed(6, "Plucker instances", |c| {
        let pairs: [(&str, Result<BigInt>, i64); 3] = [
            ("plucker_dual_degree(4,1,0)", formulas::plucker_dual_degree(4, 1, 0), 10),
            ("plucker_bitangents(4,1,0)", formulas::plucker_bitangents(4, 1, 0), 16),
            ("plucker_flexes(3,1,0)", formulas::plucker_flexes(3, 1, 0), 3),
        ];
        for (what, r, want) in pairs {
            if let Some(v) = c.ok(what, r) {
                c.eq(what, v, big(want));
            }
        }
        for d in 1..=6u32 {
            let max = (d - 1) * d.saturating_sub(2) / 2;
            for delta in 0..=max {
                for kappa in 0..=max - delta {
                    let Ok(g) = formulas::PluckerInput::new(d, delta, kappa).map(|p| p.genus()) else { continue };
                    if let Ok(dual) = formulas::plucker_dual_genus(d, delta, kappa) {
                        c.eq(format!("dual genus ({d},{delta},{kappa})"), dual, g);
                    }
                }
            }
        }
    })
}

pub fn pencil_budgets() -> Check {
    timed(7, "pencil budgets", |c| {
        for (specials, want) in [(vec![3, 2], 7), (vec![3, 3], 6)] {
            let b = PencilBudget { chi_surface: 12, chi_generic_fibre: 0, chi_base: 2, special_fibres: specials.clone() };
            c.eq(format!("pencil_nodal_count(12,0,2,{specials:?})"), formulas::pencil_nodal_count(&b), big(want));
        }
    })
}

pub fn incidence_models() -> Check {
    timed(8, "16_6 incidence models", |c| {
        for inc in [kummer::build_theta_model(), kummer::build_grid_model()] {
            for v in inc.verify_16_6() {
                c.0.push(format!("{}: {v}", inc.name));
            }
        }
    })
}

pub fn group_suite(exec: Exec) -> Check {
    timed(9, "automorphism group suite", |c| {
        let theta = kummer::build_theta_model();
        let Some(g) = c.ok("automorphism_group(theta)", kummer::automorphism_group(&theta)) else { return };
        c.eq("theta group order", g.order_u64(), Some(11520));
        c.truth("2-transitive on nodes", kummer::check_transitivity(&g, 2));
        if let Some(all) = c.ok("trope stabilizers", kummer::all_trope_stabilizers(&theta, &g, exec)) {
            for s in all {
                c.eq(format!("trope {} image order", theta.tropes[s.trope]), s.incident_image_order, 720);
                c.truth(format!("trope {} transitive on the other ten", theta.tropes[s.trope]), s.transitive_on_nonincident);
            }
        }
        if let Some((on, _)) = c.ok("triple orbits", kummer::triple_orbit_reports(&theta, &g)) {
            c.eq("on-trope triple orbits", on.orbit_sizes.len(), 1);
        }
        if let Some(n) = c.ok("grid off-trope orbits", kummer::grid_offtrope_orbit_count(true)) {
            c.truth(format!("grid off-trope orbit count {n} <= 2"), n <= 2);
            c.eq("grid off-trope orbit count", n, 2);
        }
    })
}

pub fn fibre_checker() -> Check {
    timed(10, "kummer fibre triple point formula", |c| {
        let Some(g) = c.ok("bundled fibre", fibre::bundled_kummer_fibre()) else { return };
        c.eq("components", g.components.len(), 33);
        c.eq("double curves", g.double_curves.len(), 128);
        if let Some(r) = c.ok("check", fibre::check_triple_point_formula(&g)) {
            for f in r.failures() {
                c.0.push(format!("curve {}: residue {}", f.curve, f.lhs));
            }
        }
        // dropping a triple point must be caught
        let mut broken = g.clone();
        broken.double_curves[0].triple_points.pop();
        if let Some(r) = c.ok("mutated check", fibre::check_triple_point_formula(&broken)) {
            let residues: Vec<i64> = r.failures().map(|f| f.lhs).collect();
            c.eq("mutated residues", residues, vec![-1]);
        }
    })
}

pub fn cross_module(seed: u64, exec: Exec) -> Check {
    timed(11, "cross-module identities", |c| {
        let opts = tetra::BuildOptions { exec, ..Default::default() };
        let Some(cfg) = c.ok("build_config", tetra::build_config_with(seed, &opts)) else { return };
        for face in 1..=4 {
            if let Some(l) = c.ok(format!("monoid face {face}"), tetra::monoid_crude_limit(&cfg, face)) {
                c.eq(format!("monoid face {face} shape"), l.shape(), vec![(21, 1), (1, 3), (12, 1)]);
                c.eq(format!("monoid face {face} total"), l.total(), 36);
            }
            if let Some(a) = c.ok(format!("two-node audit face {face}"), tetra::two_node_audit(&cfg, face)) {
                let parts: Vec<u64> = a.parts.iter().map(|p| p.1).collect();
                c.eq(format!("two-node audit face {face}"), parts, vec![192, 108, 48, 132]);
                c.eq(format!("two-node audit face {face} total"), a.total, 480);
            }
        }
    })
}

pub fn run_all(opts: &VerifyOptions) -> Vec<Check> {
    vec![
        severi_degrees(),
        tetrahedron_ledgers(&opts.seeds, opts.exec),
        triangle_ledgers(),
        kummer_ledgers(),
        dejonquieres_instances(),
        plucker_instances(),
        pencil_budgets(),
        incidence_models(),
        group_suite(opts.exec),
        fibre_checker(),
        cross_module(opts.seeds.first().copied().unwrap_or(0), opts.exec),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_checks_pass() {
        for check in [severi_degrees(), triangle_ledgers(), kummer_ledgers(), dejonquieres_instances(), plucker_instances(), pencil_budgets(), incidence_models(), fibre_checker()] {
            assert!(check.pass, "{}: {:?}", check.name, check.violations);
        }
    }

    #[test]
    fn collector_records_mismatch() {
        let mut c = Collector::default();
        c.eq("x", 1, 2);
        c.truth("y", true);
        assert_eq!(c.0, vec!["x: got 1, expected 2".to_string()]);
    }
}
