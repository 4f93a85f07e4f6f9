use enumera_core::fibre::{self, FibreGraph};
use enumera_core::formulas;
use enumera_core::verify::{self, VerifyOptions};
use enumera_core::{kummer, tetra, triangle, Error, Exec};
use serde_json::json;

use crate::report::{big_value, Report};
use crate::{Builtin, Cli, Command, FibreCmd, FormulasCmd, GroupCheck, KummerCmd, Model, TetraCmd, TriangleCmd, VerifyCmd};

pub enum Failure {
    Usage(String),
}

type Body<'a> = Box<dyn FnOnce(&mut Report) -> enumera_core::Result<()> + 'a>;

/// Errors that mean the caller asked for something outside the domain.
/// Everything else is reported as a failed check.
fn is_usage(e: &Error) -> bool {
    matches!(e, Error::Contract(_) | Error::UnsupportedDelta(_) | Error::OutOfRange(_) | Error::Schema(_))
}

pub fn run(cli: &Cli, exec: Exec) -> Result<Report, Failure> {
    let seed = cli.seed;
    let (name, body): (String, Body) = match &cli.command {
        Command::Formulas(FormulasCmd::Table { k_min, k_max }) => (
            format!("formulas table --k-min {k_min} --k-max {k_max}"),
            Box::new(move |r| formulas_table(r, *k_min, *k_max)),
        ),
        Command::Dejonquieres { d, g, tau } => (
            format!("dejonquieres --d {d} --g {g} --tau {tau}"),
            Box::new(move |r| dejonquieres(r, *d, *g, *tau)),
        ),
        Command::Plucker { d, delta, kappa } => (
            format!("plucker --d {d} --delta {delta} --kappa {kappa}"),
            Box::new(move |r| plucker(r, *d, *delta, *kappa)),
        ),
        Command::Tetra(TetraCmd::Ledger(a)) => (
            format!("tetra ledger --delta {} --seed {seed}", a.delta),
            Box::new(move |r| tetra_ledger(r, seed, a.delta, exec)),
        ),
        Command::Tetra(TetraCmd::Monoid { face }) => (
            format!("tetra monoid --face {face} --seed {seed}"),
            Box::new(move |r| tetra_monoid(r, seed, *face as usize, exec)),
        ),
        Command::Triangle(TriangleCmd::Ledger(a)) => (
            format!("triangle ledger --delta {}", a.delta),
            Box::new(move |r| triangle_ledger(r, a.delta)),
        ),
        Command::Kummer(KummerCmd::Ledger(a)) => (
            format!("kummer ledger --delta {}", a.delta),
            Box::new(move |r| kummer_ledger(r, a.delta)),
        ),
        Command::Kummer(KummerCmd::Incidence { model, verify }) => (
            format!("kummer incidence --model {}{}", model_name(*model), if *verify { " --verify" } else { "" }),
            Box::new(move |r| kummer_incidence(r, *model, *verify)),
        ),
        Command::Kummer(KummerCmd::Group { model, check }) => (
            format!("kummer group --model {} --check {}", model_name(*model), check_name(*check)),
            Box::new(move |r| kummer_group(r, *model, *check, exec)),
        ),
        Command::Fibre(FibreCmd::Check { file, builtin, curves, dump }) => {
            let mut name = match (file, builtin) {
                (Some(p), _) => format!("fibre check --file {}", p.display()),
                (None, _) => "fibre check --builtin kummer".to_string(),
            };
            if *curves {
                name.push_str(" --curves");
            }
            let graph = load_fibre(file.as_deref(), *builtin)?;
            if let Some(path) = dump {
                std::fs::write(path, graph.to_json())
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            (name, Box::new(move |r| fibre_check(r, &graph, *curves)))
        }
        Command::Verify(VerifyCmd::All) => (
            format!("verify all --seed {seed}"),
            Box::new(move |r| verify_all(r, seed, exec, cli.timing)),
        ),
    };
    let mut report = Report::new(name, seed);
    match body(&mut report) {
        Ok(()) => {}
        Err(e) if is_usage(&e) => return Err(Failure::Usage(e.to_string())),
        Err(e) => report.violations.push(e.to_string()),
    }
    Ok(report.finish())
}

fn model_name(m: Model) -> &'static str {
    match m {
        Model::Theta => "theta",
        Model::Grid => "grid",
    }
}

fn check_name(c: GroupCheck) -> &'static str {
    match c {
        GroupCheck::Order => "order",
        GroupCheck::TwoTransitive => "2transitive",
        GroupCheck::TropeS6 => "trope-s6",
        GroupCheck::OfftropeOrbits => "offtrope-orbits",
        GroupCheck::All => "all",
    }
}

fn severi_u64(delta: u32) -> enumera_core::Result<u64> {
    u64::try_from(formulas::severi_degree(4, delta)?).map_err(|_| Error::Internal("degree out of range".into()))
}

fn formulas_table(r: &mut Report, k_min: u32, k_max: u32) -> enumera_core::Result<()> {
    if k_min > k_max {
        return Err(Error::Contract(format!("--k-min {k_min} exceeds --k-max {k_max}")));
    }
    let mut rows = Vec::new();
    for k in k_min..=k_max {
        let d = |delta| formulas::severi_degree(k, delta).map(|v| big_value(&v));
        rows.push(json!({ "k": k, "d1": d(1)?, "d2": d(2)?, "d3": d(3)? }));
    }
    r.set("rows", rows);
    Ok(())
}

fn dejonquieres(r: &mut Report, d: u32, g: u32, tau: u32) -> enumera_core::Result<()> {
    r.set_big("count", &formulas::dejonquieres(d, g, tau)?);
    Ok(())
}

fn plucker(r: &mut Report, d: u32, delta: u32, kappa: u32) -> enumera_core::Result<()> {
    let input = formulas::PluckerInput::new(d, delta, kappa)?;
    let genus = input.genus();
    let dual_genus = formulas::plucker_dual_genus(d, delta, kappa)?;
    r.set_big("genus", &genus);
    r.set_big("dual_degree", &formulas::plucker_dual_degree(d, delta, kappa)?);
    r.set_big("bitangents", &formulas::plucker_bitangents(d, delta, kappa)?);
    r.set_big("flexes", &formulas::plucker_flexes(d, delta, kappa)?);
    r.set_big("dual_genus", &dual_genus);
    r.expect_eq("genus of the dual curve", dual_genus, genus);
    Ok(())
}

fn build(seed: u64, exec: Exec) -> enumera_core::Result<tetra::TetraConfig> {
    tetra::build_config_with(seed, &tetra::BuildOptions { exec, ..Default::default() })
}

fn tetra_ledger(r: &mut Report, seed: u64, delta: u32, exec: Exec) -> enumera_core::Result<()> {
    let c = build(seed, exec)?;
    r.set("effective_seed", c.effective_seed());
    let ledger = tetra::enumerate_ledger(&c, delta, exec)?;
    r.expect_eq("ledger total", ledger.total(), severi_u64(delta)?);
    r.expect_eq("ledger shape", ledger.shape().as_slice(), verify::TETRA_SHAPES[delta as usize - 1]);
    r.tables.push(ledger);
    Ok(())
}

fn tetra_monoid(r: &mut Report, seed: u64, face: usize, exec: Exec) -> enumera_core::Result<()> {
    let c = build(seed, exec)?;
    r.set("effective_seed", c.effective_seed());
    let limit = tetra::monoid_crude_limit(&c, face)?;
    r.expect_eq("monoid crude limit", limit.shape(), vec![(21, 1), (1, 3), (12, 1)]);
    r.tables.push(limit);
    let (same, other) = tetra::one_node_audit(&c, face)?;
    let two = tetra::two_node_audit(&c, face)?;
    r.expect_eq("one-node audit, node on this face", same.total, 36);
    r.expect_eq("one-node audit, node off this face", other.total, 36);
    r.expect_eq("two-node audit", two.total, 480);
    r.set("one_node_same_face", same);
    r.set("one_node_other_face", other);
    r.set("two_node", two);
    Ok(())
}

fn triangle_ledger(r: &mut Report, delta: u32) -> enumera_core::Result<()> {
    let entries = triangle::entries(delta)?;
    for e in &entries {
        r.expect_eq(&format!("derivation of {:?}", e.label), e.derivation.eval()?, e.p_degree);
    }
    r.set("entries", &entries);
    let ledger = triangle::ledger(delta)?;
    r.expect_eq("ledger total", ledger.total(), triangle::TOTALS[delta as usize - 1]);
    r.tables.push(ledger);
    Ok(())
}

fn kummer_ledger(r: &mut Report, delta: u32) -> enumera_core::Result<()> {
    let ledger = kummer::kummer_ledger(delta)?;
    r.expect_eq("ledger total", ledger.total(), severi_u64(delta)?);
    r.tables.push(ledger);
    Ok(())
}

fn model(m: Model) -> kummer::Incidence {
    match m {
        Model::Theta => kummer::build_theta_model(),
        Model::Grid => kummer::build_grid_model(),
    }
}

fn kummer_incidence(r: &mut Report, m: Model, check: bool) -> enumera_core::Result<()> {
    let inc = model(m);
    r.set("name", &inc.name);
    r.set("nodes", &inc.nodes);
    r.set("tropes", &inc.tropes);
    r.set("matrix", inc.to_bitmap().lines().collect::<Vec<_>>());
    r.set("offtrope_triples", inc.count_offtrope_triples());
    if check {
        r.violations.extend(inc.verify_16_6());
        r.set("verified", true);
    }
    Ok(())
}

fn kummer_group(r: &mut Report, m: Model, check: GroupCheck, exec: Exec) -> enumera_core::Result<()> {
    let inc = model(m);
    let g = kummer::automorphism_group(&inc)?;
    let wants = |c: GroupCheck| check == c || check == GroupCheck::All;
    r.set("model", &inc.name);
    if wants(GroupCheck::Order) {
        r.set("order", g.order_u64());
        r.expect_eq("group order", g.order_u64(), Some(11520));
    }
    if wants(GroupCheck::TwoTransitive) {
        let two = kummer::check_transitivity(&g, 2);
        r.set("two_transitive", two);
        r.set("three_transitive", kummer::check_transitivity(&g, 3));
        r.expect("not 2-transitive on nodes", two);
    }
    if wants(GroupCheck::TropeS6) {
        let all = kummer::all_trope_stabilizers(&inc, &g, exec)?;
        for s in &all {
            let t = &inc.tropes[s.trope];
            r.expect_eq(&format!("trope {t}: image on its nodes"), s.incident_image_order, 720);
            r.expect(format!("trope {t}: not transitive on the other ten nodes"), s.transitive_on_nonincident);
        }
        r.set("trope_stabilizers", all);
    }
    if wants(GroupCheck::OfftropeOrbits) {
        let (on, off) = kummer::triple_orbit_reports(&inc, &g)?;
        r.expect_eq("orbits on off-trope triples", off.orbit_sizes.clone(), vec![240]);
        r.expect_eq("orbits on on-trope triples", on.orbit_sizes.clone(), vec![320]);
        r.set("offtrope_orbits", off);
        r.set("ontrope_orbits", on);
        let grid = kummer::grid_offtrope_orbits(true)?;
        r.expect(
            format!("grid symmetries leave {} off-trope orbits", grid.orbit_sizes.len()),
            grid.orbit_sizes.len() <= 2,
        );
        r.set("grid_symmetry_offtrope_orbits", grid);
    }
    Ok(())
}

fn load_fibre(file: Option<&std::path::Path>, builtin: Option<Builtin>) -> Result<FibreGraph, Failure> {
    let usage = |e: Error| Failure::Usage(e.to_string());
    match (file, builtin) {
        (Some(p), _) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?;
            FibreGraph::from_json(&text).map_err(usage)
        }
        (None, Some(Builtin::Kummer) | None) => fibre::bundled_kummer_fibre().map_err(usage),
    }
}

fn fibre_check(r: &mut Report, g: &FibreGraph, curves: bool) -> enumera_core::Result<()> {
    let report = fibre::check_triple_point_formula(g)?;
    r.set("fibre", &g.name);
    r.set("components", g.components.len());
    r.set("double_curves", g.double_curves.len());
    for f in report.failures() {
        r.violations.push(format!("curve {}: residue {}", f.curve, f.lhs));
    }
    if curves {
        r.set("curves", &report.curves);
    }
    Ok(())
}

fn verify_all(r: &mut Report, seed: u64, exec: Exec, timing: bool) -> enumera_core::Result<()> {
    let seeds = (0..8).map(|i| seed.wrapping_add(i)).collect();
    let checks = verify::run_all(&VerifyOptions { seeds, exec });
    let mut rows = Vec::new();
    for c in &checks {
        let mut row = json!({ "id": c.id, "name": c.name, "pass": c.pass });
        if timing {
            row["elapsed_ms"] = json!((c.elapsed.as_secs_f64() * 1e6).round() / 1e3);
        }
        rows.push(row);
        r.violations.extend(c.violations.iter().map(|v| format!("criterion {}: {v}", c.id)));
    }
    r.set("checks", rows);
    Ok(())
}
