//! The sixteen nodes and sixteen tropes of a Kummer quartic as a pure
//! incidence structure, with its symmetry group and component ledgers.

pub mod group;
mod incidence;

pub use group::{act_on_set, closure_by_search, orbits_on, Perm, PermGroup};
pub use incidence::{build_grid_model, build_theta_model, Incidence, SIZE};

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas;
use crate::ledger::{ComponentLedger, LedgerEntry};
use crate::par::{combinations, Exec};

/// Default cap on backtracking nodes visited by [`automorphism_group`].
pub const SEARCH_BUDGET: u64 = 5_000_000;

/// Node permutations carrying trope sets onto trope sets, found by
/// backtracking over node images.
///
/// A partial map must send on-trope triples to on-trope triples and
/// off-trope triples to off-trope triples; leaves are checked against the
/// full trope list.
pub fn automorphisms(inc: &Incidence, budget: u64) -> Result<Vec<Perm>> {
    let tri = inc.triple_masks();
    let tropes: Vec<u64> = (0..SIZE).map(|t| u64::from(inc.trope_nodes(t))).collect();
    let mut trope_set = tropes.clone();
    trope_set.sort_unstable();

    let mut search = Search { tri: &tri, tropes: &tropes, trope_set: &trope_set, budget, visited: 0, found: Vec::new() };
    search.extend(&mut [0; SIZE], 0, 0)?;
    Ok(search.found)
}

struct Search<'a> {
    tri: &'a [Vec<u16>],
    tropes: &'a [u64],
    trope_set: &'a [u64],
    budget: u64,
    visited: u64,
    found: Vec<Perm>,
}

impl Search<'_> {
    fn candidates(&self, image: &[usize; SIZE], level: usize, used: u16) -> u16 {
        let mut cand = !used;
        for i in 0..level {
            for j in i + 1..level {
                let m = self.tri[image[i]][image[j]];
                cand &= if self.tri[i][j] >> level & 1 == 1 { m } else { !m };
            }
        }
        cand
    }

    fn extend(&mut self, image: &mut [usize; SIZE], level: usize, used: u16) -> Result<()> {
        if level == SIZE {
            let p = Perm::from_images(image.to_vec()).expect("bijection");
            let mut mapped: Vec<u64> = self.tropes.iter().map(|&t| p.apply_mask(t)).collect();
            mapped.sort_unstable();
            if mapped == self.trope_set {
                self.found.push(p);
            }
            return Ok(());
        }
        let mut cand = self.candidates(image, level, used);
        while cand != 0 {
            let c = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.visited += 1;
            if self.visited > self.budget {
                return Err(Error::Resource(format!("automorphism search exceeded {} nodes", self.budget)));
            }
            image[level] = c;
            self.extend(image, level + 1, used | 1 << c)?;
        }
        Ok(())
    }
}

/// The automorphism group of `inc`, acting on nodes.
pub fn automorphism_group(inc: &Incidence) -> Result<PermGroup> {
    let all = automorphisms(inc, SEARCH_BUDGET)?;
    // keep only elements that enlarge the group found so far
    let mut gens: Vec<Perm> = Vec::new();
    let mut g = PermGroup::trivial(SIZE);
    for p in all.iter() {
        if !g.contains(p) {
            gens.push(p.clone());
            g = PermGroup::new(SIZE, gens.clone())?;
        }
    }
    if g.order_u64() != Some(all.len() as u64) {
        return Err(Error::Internal(format!(
            "{} automorphisms found but they generate a group of order {}",
            all.len(),
            g.order()
        )));
    }
    Ok(g)
}

pub fn check_transitivity(g: &PermGroup, k: usize) -> bool {
    g.is_k_transitive(k)
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilizerAction {
    pub trope: usize,
    pub stabilizer_order: u64,
    /// order of the group induced on the six nodes of the trope
    pub incident_image_order: u64,
    pub transitive_on_nonincident: bool,
}

/// Set-stabilizer of a trope's nodes: its image on those nodes and whether
/// it is transitive on the remaining ten.
pub fn trope_stabilizer_actions(inc: &Incidence, g: &PermGroup, trope: usize) -> Result<StabilizerAction> {
    if trope >= SIZE {
        return Err(crate::error::contract(format!("trope index {trope} out of range")));
    }
    let nodes = u64::from(inc.trope_nodes(trope));
    let on: Vec<usize> = (0..SIZE).filter(|&n| nodes >> n & 1 == 1).collect();
    let off: Vec<usize> = (0..SIZE).filter(|&n| nodes >> n & 1 == 0).collect();
    let stab: Vec<&Perm> = g.elements_or_err()?.iter().filter(|p| p.apply_mask(nodes) == nodes).collect();

    let restricted: Vec<Perm> = stab
        .iter()
        .map(|p| {
            let images = on.iter().map(|&n| on.iter().position(|&m| m == p.apply(n)).expect("stabilized")).collect();
            Perm::from_images(images)
        })
        .collect::<Result<_>>()?;
    let image = PermGroup::new(on.len(), restricted)?;

    let orbit: std::collections::BTreeSet<usize> = stab.iter().map(|p| p.apply(off[0])).collect();
    Ok(StabilizerAction {
        trope,
        stabilizer_order: stab.len() as u64,
        incident_image_order: image.order_u64().unwrap_or(u64::MAX),
        transitive_on_nonincident: orbit.len() == off.len(),
    })
}

/// Row permutations, column permutations and optionally the transpose of
/// the 4 x 4 grid, as permutations of its sixteen cells.
pub fn grid_symmetry_group(include_swap: bool) -> Result<PermGroup> {
    let cell = |a: usize, b: usize| 4 * a + b;
    let from = |f: &dyn Fn(usize, usize) -> usize| {
        Perm::from_images((0..SIZE).map(|i| f(i / 4, i % 4)).collect())
    };
    let mut gens = vec![
        from(&|a, b| cell((a + 1) % 4, b))?,
        from(&|a, b| cell([1, 0, 2, 3][a], b))?,
        from(&|a, b| cell(a, (b + 1) % 4))?,
        from(&|a, b| cell(a, [1, 0, 2, 3][b]))?,
    ];
    if include_swap {
        gens.push(from(&|a, b| cell(b, a))?);
    }
    PermGroup::new(SIZE, gens)
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub group_order: u64,
    pub orbit_sizes: Vec<usize>,
    pub representatives: Vec<[usize; 3]>,
}

fn triple_orbits(g: &PermGroup, triples: &[[usize; 3]]) -> Result<OrbitReport> {
    let orbits = orbits_on(g.generators(), triples, act_on_set)?;
    Ok(OrbitReport {
        group_order: g.order_u64().unwrap_or(u64::MAX),
        orbit_sizes: orbits.iter().map(Vec::len).collect(),
        representatives: orbits.iter().map(|o| o[0]).collect(),
    })
}

/// Orbits of the grid symmetries on node triples lying on no trope.
pub fn grid_offtrope_orbits(include_swap: bool) -> Result<OrbitReport> {
    let inc = build_grid_model();
    triple_orbits(&grid_symmetry_group(include_swap)?, &inc.offtrope_triples())
}

pub fn grid_ontrope_orbits(include_swap: bool) -> Result<OrbitReport> {
    let inc = build_grid_model();
    triple_orbits(&grid_symmetry_group(include_swap)?, &inc.ontrope_triples())
}

pub fn grid_offtrope_orbit_count(include_swap: bool) -> Result<usize> {
    Ok(grid_offtrope_orbits(include_swap)?.orbit_sizes.len())
}

/// Orbits of an automorphism group on the on-trope and off-trope triples.
pub fn triple_orbit_reports(inc: &Incidence, g: &PermGroup) -> Result<(OrbitReport, OrbitReport)> {
    Ok((triple_orbits(g, &inc.ontrope_triples())?, triple_orbits(g, &inc.offtrope_triples())?))
}

/// Stabilizer actions for all sixteen tropes.
pub fn all_trope_stabilizers(inc: &Incidence, g: &PermGroup, exec: Exec) -> Result<Vec<StabilizerAction>> {
    let tropes: Vec<usize> = (0..SIZE).collect();
    exec.try_map(&tropes, |&t| trope_stabilizer_actions(inc, g, t))
}

fn big_u64(b: num_bigint::BigInt) -> Result<u64> {
    b.to_u64().ok_or_else(|| Error::Internal("value out of range".into()))
}

/// Multiplicity of a node web, of a node-pair pencil and of an off-trope
/// triple plane.
pub const NODE_WEB_MULTIPLICITY: u64 = 2;
pub const NODE_PAIR_MULTIPLICITY: u64 = 4;
pub const TRIPLE_PLANE_MULTIPLICITY: u64 = 8;

pub fn kummer_ledger(delta: u32) -> Result<ComponentLedger> {
    let theta = build_theta_model();
    let entries = match delta {
        1 => vec![
            LedgerEntry::new(
                "dual Kummer surface",
                big_u64(formulas::dual_surface_degree(4, 16, 0)?)?,
                1,
                "degree: dual_surface_degree(4,16,0)",
            ),
            LedgerEntry::new(
                "planes through a node",
                SIZE as u64,
                NODE_WEB_MULTIPLICITY,
                format!("count: nodes; multiplicity {NODE_WEB_MULTIPLICITY} (tabulated)"),
            ),
        ],
        2 => vec![LedgerEntry::new(
            "pencils through two nodes",
            combinations(SIZE, 2).len() as u64,
            NODE_PAIR_MULTIPLICITY,
            format!("count: C(16,2); multiplicity {NODE_PAIR_MULTIPLICITY}, degree of the 4:1 projection onto the pencil"),
        )],
        3 => vec![
            LedgerEntry::new(
                "planes through three nodes on no common trope",
                theta.count_offtrope_triples(),
                TRIPLE_PLANE_MULTIPLICITY,
                format!("count: count_offtrope_triples(theta); multiplicity {TRIPLE_PLANE_MULTIPLICITY}, points in an intersection of three quadrics"),
            ),
            LedgerEntry::new(
                "tropes",
                SIZE as u64,
                big_u64(formulas::dejonquieres(8, 0, 3)?)?,
                "count: tropes; multiplicity: dejonquieres(8,0,3)",
            ),
        ],
        d => return Err(Error::UnsupportedDelta(d)),
    };
    ComponentLedger::new(format!("kummer delta={delta}"), big_u64(formulas::severi_degree(4, delta)?)?, entries)
}
