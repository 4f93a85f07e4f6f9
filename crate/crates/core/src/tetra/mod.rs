//! Exact model of four coordinate planes with four marked points on each
//! of the six edges, and brute-force ledgers over it.

mod geometry;
mod scan;

pub use geometry::{collinear, coplanar, span_rank, ProjPlane, ProjPoint};
pub use scan::{
    enumerate_ledger, monoid_crude_limit, one_node_audit, two_node_audit, ThroughPointAudit,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{contract, Error, Result};
use crate::kernel::Rational;
use crate::par::{combinations, Exec};

pub const POINTS_PER_EDGE: usize = 4;

/// An edge `x_i = x_j = 0`; it joins the two coordinate points not indexed
/// by its faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub faces: [usize; 2],
    pub vertices: [usize; 2],
}

impl Edge {
    fn from_faces(i: usize, j: usize) -> Edge {
        let mut rest = (0..4).filter(|&k| k != i && k != j);
        let vertices = [rest.next().unwrap(), rest.next().unwrap()];
        Edge { faces: [i, j], vertices }
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.faces[0] + 1, self.faces[1] + 1)
    }

    pub fn in_face(&self, f: usize) -> bool {
        self.faces.contains(&f)
    }

    pub fn through_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    fn face_mask(&self) -> u8 {
        (1 << self.faces[0]) | (1 << self.faces[1])
    }
}

/// A marked point on an edge. Along edge `{i, j}` with vertices `k < l`
/// it is `e_k + t e_l` for a nonzero rational `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgePoint {
    pub label: String,
    pub edge: usize,
    pub parameter: Rational,
    pub point: ProjPoint,
}

/// Tuning for [`build_config_with`].
#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    /// Bound on numerator and denominator of the edge parameters.
    pub height: u32,
    /// Number of seeds tried before giving up.
    pub retries: u32,
    pub exec: Exec,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { height: 1000, retries: 32, exec: Exec::default() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TetraConfig {
    faces: [ProjPlane; 4],
    vertices: [ProjPoint; 4],
    edges: [Edge; 6],
    edge_points: Vec<EdgePoint>,
    seed: u64,
    effective_seed: u64,
}

pub(crate) fn all_edges() -> [Edge; 6] {
    let mut out = [Edge::from_faces(0, 1); 6];
    for (slot, c) in out.iter_mut().zip(combinations(4, 2)) {
        *slot = Edge::from_faces(c[0], c[1]);
    }
    out
}

fn point_labels(e: &Edge) -> [String; 4] {
    let (i, j) = (e.faces[0] + 1, e.faces[1] + 1);
    [
        format!("E+_{i}{j}"),
        format!("E-_{i}{j}"),
        format!("E+_{j}{i}"),
        format!("E-_{j}{i}"),
    ]
}

impl TetraConfig {
    /// Builds a configuration from explicit edge parameters, one row per
    /// edge in [`TetraConfig::edges`] order. No genericity check is made;
    /// use [`verify_genericity`] on the result.
    pub fn from_edge_parameters(seed: u64, params: &[[Rational; POINTS_PER_EDGE]; 6]) -> Result<Self> {
        let edges = all_edges();
        let mut edge_points = Vec::with_capacity(24);
        for (e, (edge, row)) in edges.iter().zip(params).enumerate() {
            for (label, t) in point_labels(edge).into_iter().zip(row) {
                if t.is_zero() {
                    return Err(contract(format!("zero parameter on edge {}", edge.label())));
                }
                let mut c = [0i64; 4].map(Rational::from);
                c[edge.vertices[0]] = Rational::one();
                c[edge.vertices[1]] = t.clone();
                edge_points.push(EdgePoint { label, edge: e, parameter: t.clone(), point: ProjPoint::new(c)? });
            }
        }
        Ok(TetraConfig {
            faces: std::array::from_fn(ProjPlane::coordinate),
            vertices: std::array::from_fn(ProjPoint::coordinate),
            edges,
            edge_points,
            seed,
            effective_seed: seed,
        })
    }

    pub fn faces(&self) -> &[ProjPlane; 4] {
        &self.faces
    }

    pub fn vertices(&self) -> &[ProjPoint; 4] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge; 6] {
        &self.edges
    }

    pub fn edge_points(&self) -> &[EdgePoint] {
        &self.edge_points
    }

    /// Points lying on edge `e`.
    pub fn points_on_edge(&self, e: usize) -> impl Iterator<Item = &EdgePoint> {
        self.edge_points.iter().filter(move |p| p.edge == e)
    }

    /// The seed requested by the caller.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The seed that produced the parameters (differs after retries).
    pub fn effective_seed(&self) -> u64 {
        self.effective_seed
    }

    /// The unique edge sharing no face with `e`.
    pub fn opposite_edge(&self, e: usize) -> usize {
        let faces = self.edges[e].face_mask();
        self.edges
            .iter()
            .position(|o| o.face_mask() & faces == 0)
            .expect("every edge of a tetrahedron has an opposite")
    }

    /// Edge points together with the vertices, as audited sites.
    fn sites(&self) -> Vec<Site<'_>> {
        let mut out: Vec<Site<'_>> = self
            .edge_points
            .iter()
            .map(|p| Site {
                label: p.label.clone(),
                point: &p.point,
                edges: 1 << p.edge,
                faces: self.edges[p.edge].face_mask(),
            })
            .collect();
        for (v, point) in self.vertices.iter().enumerate() {
            let edges = self
                .edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.through_vertex(v))
                .fold(0u8, |m, (i, _)| m | (1 << i));
            out.push(Site { label: format!("v{}", v + 1), point, edges, faces: 0b1111 & !(1 << v) });
        }
        out
    }
}

fn perturbed(seed: u64, attempt: u32) -> u64 {
    seed ^ u64::from(attempt).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn random_parameter(rng: &mut ChaCha8Rng, height: u32) -> Rational {
    let n = i64::from(rng.gen_range(1..=height));
    let d = i64::from(rng.gen_range(1..=height));
    let n = if rng.gen_bool(0.5) { -n } else { n };
    Rational::new(n, d).expect("positive denominator")
}

fn draw_parameters(seed: u64, height: u32) -> [[Rational; POINTS_PER_EDGE]; 6] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::array::from_fn(|_| std::array::from_fn(|_| random_parameter(&mut rng, height)))
}

pub fn build_config(seed: u64) -> Result<TetraConfig> {
    build_config_with(seed, &BuildOptions::default())
}

/// Draws edge parameters from `seed`, retrying with perturbed seeds until
/// the configuration passes [`verify_genericity`].
pub fn build_config_with(seed: u64, opts: &BuildOptions) -> Result<TetraConfig> {
    if opts.height == 0 || opts.retries == 0 {
        return Err(contract("height and retry budget must be positive"));
    }
    for attempt in 0..opts.retries {
        let effective = perturbed(seed, attempt);
        let mut c = TetraConfig::from_edge_parameters(seed, &draw_parameters(effective, opts.height))?;
        c.effective_seed = effective;
        if verify_genericity_with(&c, opts.exec).is_pass() {
            return Ok(c);
        }
    }
    Err(Error::Genericity { seed, attempts: opts.retries })
}

struct Site<'a> {
    label: String,
    point: &'a ProjPoint,
    edges: u8,
    faces: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// A point does not lie on exactly the faces it was placed on.
    Misplaced,
    Coincident,
    Collinear,
    Coplanar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub points: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericityReport {
    pub sites: usize,
    pub triples_checked: usize,
    pub quadruples_checked: usize,
    pub violations: Vec<Violation>,
}

impl GenericityReport {
    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_genericity(c: &TetraConfig) -> GenericityReport {
    verify_genericity_with(c, Exec::default())
}

/// Audits the 28 sites (24 edge points and 4 vertices).
///
/// Three sites may be collinear only if they share an edge. Four sites may
/// be coplanar only if they share a face or three of them share an edge.
/// Every other collinearity or coplanarity is reported.
pub fn verify_genericity_with(c: &TetraConfig, exec: Exec) -> GenericityReport {
    let sites = c.sites();
    let mut violations = Vec::new();
    let names = |idx: &[usize]| idx.iter().map(|&i| sites[i].label.clone()).collect::<Vec<_>>();

    for (i, s) in sites.iter().enumerate() {
        let on = c.faces.iter().enumerate().filter(|(_, f)| f.contains(s.point)).fold(0u8, |m, (f, _)| m | (1 << f));
        if on != s.faces {
            violations.push(Violation { kind: ViolationKind::Misplaced, points: names(&[i]) });
        }
    }
    for pair in combinations(sites.len(), 2) {
        if sites[pair[0]].point == sites[pair[1]].point {
            violations.push(Violation { kind: ViolationKind::Coincident, points: names(&pair) });
        }
    }

    let forced_line = |t: &[usize]| t.iter().fold(0xff, |m, &i| m & sites[i].edges) != 0;
    let triples = combinations(sites.len(), 3);
    let bad_lines = exec.map(&triples, |t| {
        !forced_line(t) && collinear(sites[t[0]].point, sites[t[1]].point, sites[t[2]].point)
    });
    for (t, bad) in triples.iter().zip(bad_lines) {
        if bad {
            violations.push(Violation { kind: ViolationKind::Collinear, points: names(t) });
        }
    }

    let quads = combinations(sites.len(), 4);
    let bad_planes = exec.map(&quads, |q| {
        let common_face = q.iter().fold(0xff, |m, &i| m & sites[i].faces) != 0;
        let forced = common_face || combinations(4, 3).iter().any(|s| forced_line(&[q[s[0]], q[s[1]], q[s[2]]]));
        !forced && coplanar(sites[q[0]].point, sites[q[1]].point, sites[q[2]].point, sites[q[3]].point)
    });
    for (q, bad) in quads.iter().zip(bad_planes) {
        if bad {
            violations.push(Violation { kind: ViolationKind::Coplanar, points: names(q) });
        }
    }

    GenericityReport {
        sites: sites.len(),
        triples_checked: triples.len(),
        quadruples_checked: quads.len(),
        violations,
    }
}
