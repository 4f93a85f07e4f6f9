//! Ledger scans over a tetrahedron configuration.

use serde::Serialize;

use super::geometry::{span_rank, ProjPlane, ProjPoint};
use super::TetraConfig;
use crate::error::{contract, Error, Result};
use crate::ledger::{ComponentLedger, LedgerEntry};
use crate::par::{combinations, Exec};
use crate::{formulas, triangle};

/// Multiplicity of a vertex plane, of an edge and of a face in the limit.
pub const VERTEX_MULTIPLICITY: u64 = 3;
pub const EDGE_MULTIPLICITY: u64 = 16;
pub const FACE_MULTIPLICITY: u64 = 304;

fn target(delta: u32) -> Result<u64> {
    let d = formulas::severi_degree(4, delta)?;
    u64::try_from(d).map_err(|_| Error::Internal("severi degree does not fit u64".into()))
}

fn abort(what: &str, labels: &[&str]) -> Error {
    Error::ScanAborted(format!("{what}: {}", labels.join(", ")))
}

struct Scan<'a> {
    c: &'a TetraConfig,
    /// all 28 points: edge points first, then vertices
    points: Vec<&'a ProjPoint>,
    labels: Vec<String>,
}

impl<'a> Scan<'a> {
    fn new(c: &'a TetraConfig) -> Self {
        let mut points: Vec<&ProjPoint> = c.edge_points().iter().map(|p| &p.point).collect();
        points.extend(c.vertices().iter());
        let mut labels: Vec<String> = c.edge_points().iter().map(|p| p.label.clone()).collect();
        labels.extend((1..=4).map(|v| format!("v{v}")));
        Scan { c, points, labels }
    }

    fn vertex(&self, v: usize) -> usize {
        24 + v
    }

    fn edge_of(&self, p: usize) -> usize {
        self.c.edge_points()[p].edge
    }

    /// Indices of all sites on the line through sites `a` and `b`.
    fn on_line(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| i == a || i == b || span_rank(&[self.points[a], self.points[b], self.points[i]]) < 3)
            .collect()
    }

    fn on_plane(&self, h: &ProjPlane) -> Vec<usize> {
        (0..self.points.len()).filter(|&i| h.contains(self.points[i])).collect()
    }

    fn names(&self, idx: &[usize]) -> Vec<&str> {
        idx.iter().map(|&i| self.labels[i].as_str()).collect()
    }

    fn plane(&self, t: [usize; 3]) -> Result<ProjPlane> {
        ProjPlane::through(self.points[t[0]], self.points[t[1]], self.points[t[2]])
            .ok_or_else(|| abort("unexpected collinear triple", &self.names(&t)))
    }

    /// Requires the plane through three sites to contain none of the others.
    fn isolated_plane(&self, t: [usize; 3]) -> Result<()> {
        let h = self.plane(t)?;
        let on = self.on_plane(&h);
        if on.len() != 3 {
            return Err(abort("plane through more than three sites", &self.names(&on)));
        }
        Ok(())
    }

    fn isolated_line(&self, a: usize, b: usize) -> Result<()> {
        let on = self.on_line(a, b);
        if on.len() != 2 {
            return Err(abort("line through more than two sites", &self.names(&on)));
        }
        Ok(())
    }

    fn check_sites(&self) -> Result<()> {
        for pair in combinations(self.points.len(), 2) {
            if self.points[pair[0]] == self.points[pair[1]] {
                return Err(abort("coincident sites", &self.names(&pair)));
            }
        }
        Ok(())
    }

    fn check_edges(&self) -> Result<()> {
        for (e, edge) in self.c.edges().iter().enumerate() {
            let [v, w] = edge.vertices.map(|v| self.vertex(v));
            let on = self.on_line(v, w);
            let expected: Vec<usize> = (0..24).filter(|&p| self.edge_of(p) == e).chain([v.min(w), v.max(w)]).collect();
            if on != expected {
                return Err(abort("edge line with unexpected sites", &self.names(&on)));
            }
        }
        Ok(())
    }
}

fn vertex_provenance() -> String {
    format!("count: one per vertex; multiplicity {VERTEX_MULTIPLICITY} (tabulated)")
}

fn ledger_one(s: &Scan<'_>) -> Result<Vec<LedgerEntry>> {
    s.check_sites()?;
    Ok(vec![
        LedgerEntry::new("planes through a double point", 24, 1, "count: distinct edge points (exact equality scan)"),
        LedgerEntry::new("planes through a vertex", 4, VERTEX_MULTIPLICITY, vertex_provenance()),
    ])
}

fn ledger_two(s: &Scan<'_>, exec: Exec) -> Result<Vec<LedgerEntry>> {
    s.check_sites()?;
    s.check_edges()?;
    let pairs = combinations(24, 2);
    let hits = exec.try_map(&pairs, |p| {
        if s.edge_of(p[0]) == s.edge_of(p[1]) {
            return Ok(false);
        }
        s.isolated_line(p[0], p[1]).map(|_| true)
    })?;
    let pencils = hits.iter().filter(|&&h| h).count() as u64;

    let vp: Vec<(usize, usize)> = (0..4).flat_map(|v| (0..24).map(move |p| (v, p))).collect();
    let hits = exec.try_map(&vp, |&(v, p)| {
        if s.c.edges()[s.edge_of(p)].through_vertex(v) {
            return Ok(false);
        }
        s.isolated_line(s.vertex(v), p).map(|_| true)
    })?;
    let vertex_pencils = hits.iter().filter(|&&h| h).count() as u64;

    Ok(vec![
        LedgerEntry::new(
            "pencils through two double points on no common edge",
            pencils,
            1,
            "count: exact pair scan over C(24,2) pairs, lines checked for extra sites",
        ),
        LedgerEntry::new(
            "pencils through a vertex and a double point on no common edge",
            vertex_pencils,
            VERTEX_MULTIPLICITY,
            format!("count: exact scan over 4 x 24 pairs; multiplicity {VERTEX_MULTIPLICITY} (tabulated)"),
        ),
        LedgerEntry::new(
            "edges",
            6,
            EDGE_MULTIPLICITY,
            format!("count: edge lines; multiplicity {EDGE_MULTIPLICITY} (tabulated)"),
        ),
    ])
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum TripleClass {
    /// two points share an edge, so the plane contains it
    ContainsEdge,
    /// the three edges bound one face
    Face,
    Generic,
}

fn ledger_three(s: &Scan<'_>, exec: Exec) -> Result<Vec<LedgerEntry>> {
    s.check_sites()?;
    s.check_edges()?;
    let edges = s.c.edges();

    let triples = combinations(24, 3);
    let classes = exec.try_map(&triples, |t| {
        let es = [t[0], t[1], t[2]].map(|p| s.edge_of(p));
        if es[0] == es[1] || es[0] == es[2] || es[1] == es[2] {
            return Ok(TripleClass::ContainsEdge);
        }
        let face = (0..4).find(|&f| es.iter().all(|&e| edges[e].in_face(f)));
        let h = s.plane([t[0], t[1], t[2]])?;
        match face {
            Some(f) => {
                if &h != &s.c.faces()[f] {
                    return Err(Error::Internal("face triple spans another plane".into()));
                }
                Ok(TripleClass::Face)
            }
            None => {
                let on = s.on_plane(&h);
                if on.len() != 3 || h.zero_coefficients() == 3 {
                    return Err(abort("generic plane through extra sites", &s.names(&on)));
                }
                Ok(TripleClass::Generic)
            }
        }
    })?;
    let generic = classes.iter().filter(|&&c| c == TripleClass::Generic).count() as u64;
    let face_triples = classes.iter().filter(|&&c| c == TripleClass::Face).count() as u64;
    if face_triples != 4 * 64 {
        return Err(Error::Internal(format!("{face_triples} face triples, expected 256")));
    }

    let vertex_triples: Vec<(usize, usize, usize)> = (0..4)
        .flat_map(|v| combinations(24, 2).into_iter().map(move |p| (v, p[0], p[1])))
        .collect();
    let hits = exec.try_map(&vertex_triples, |&(v, a, b)| {
        let (ea, eb) = (s.edge_of(a), s.edge_of(b));
        if ea == eb || edges[ea].through_vertex(v) || edges[eb].through_vertex(v) {
            return Ok(false);
        }
        s.isolated_plane([s.vertex(v), a, b]).map(|_| true)
    })?;
    let vertex_planes = hits.iter().filter(|&&h| h).count() as u64;

    // planes spanned by an edge and one more double point that are not faces
    let mut edge_planes = 0u64;
    for (e, edge) in edges.iter().enumerate() {
        let [v, w] = edge.vertices.map(|v| s.vertex(v));
        for p in (0..24).filter(|&p| s.edge_of(p) != e) {
            let h = s.plane([v, w, p])?;
            if h.zero_coefficients() == 3 {
                continue;
            }
            if s.edge_of(p) != s.c.opposite_edge(e) {
                return Err(Error::Internal(format!("edge plane off the opposite edge at {}", s.labels[p])));
            }
            let on = s.on_plane(&h);
            if on.len() != 7 {
                return Err(abort("edge plane through extra sites", &s.names(&on)));
            }
            edge_planes += 1;
        }
    }

    Ok(vec![
        LedgerEntry::new(
            "planes through three double points containing no edge",
            generic,
            1,
            "count: exact scan over C(24,3) triples, minus shared-edge and face triples",
        ),
        LedgerEntry::new(
            "planes through a vertex and two double points spanning no edge",
            vertex_planes,
            VERTEX_MULTIPLICITY,
            format!("count: exact scan over 4 x C(24,2) vertex triples; multiplicity {VERTEX_MULTIPLICITY} (tabulated)"),
        ),
        LedgerEntry::new(
            "planes through an edge and a double point on the opposite edge",
            edge_planes,
            EDGE_MULTIPLICITY,
            format!("count: non-face planes through an edge and one more point; multiplicity {EDGE_MULTIPLICITY} (tabulated)"),
        ),
        LedgerEntry::new(
            "faces",
            4,
            FACE_MULTIPLICITY,
            format!("count: coordinate planes; multiplicity {FACE_MULTIPLICITY} (tabulated, closes the total)"),
        ),
    ])
}

/// Limit components of the `delta`-nodal dual locus for the configuration.
///
/// Incidences are decided exactly; an unexpected collinearity or
/// coplanarity stops the scan with [`Error::ScanAborted`].
pub fn enumerate_ledger(c: &TetraConfig, delta: u32, exec: Exec) -> Result<ComponentLedger> {
    let s = Scan::new(c);
    let entries = match delta {
        1 => ledger_one(&s)?,
        2 => ledger_two(&s, exec)?,
        3 => ledger_three(&s, exec)?,
        d => return Err(Error::UnsupportedDelta(d)),
    };
    ComponentLedger::new(format!("tetrahedron delta={delta}"), target(delta)?, entries)
}

fn face_index(face: usize) -> Result<usize> {
    if !(1..=4).contains(&face) {
        return Err(contract(format!("face index {face} outside 1..=4")));
    }
    Ok(face - 1)
}

/// Labels `E+_ij`/`E-_ij` carry an ordered face pair; keep those with
/// `face` among the pair.
fn labels_touching(c: &TetraConfig, face: usize) -> Vec<&str> {
    let digit = char::from_digit(face as u32 + 1, 10).expect("digit");
    c.edge_points()
        .iter()
        .map(|p| p.label.as_str())
        .filter(|l| l[3..].contains(digit))
        .collect()
}

/// One-node crude limit for a degeneration to a monoid whose triple point
/// has tangent cone the three faces other than `face`.
pub fn monoid_crude_limit(c: &TetraConfig, face: usize) -> Result<ComponentLedger> {
    let f = face_index(face)?;
    let by_label = labels_touching(c, f).len() as u64;
    let by_geometry = c.edge_points().iter().filter(|p| c.faces()[f].contains(&p.point)).count() as u64;
    if by_label != by_geometry {
        return Err(Error::Internal(format!("{by_label} labels but {by_geometry} points on face {face}")));
    }
    let dual = triangle::ledger(1)?.total();
    ComponentLedger::new(
        format!("monoid delta=1 face={face}"),
        target(1)?,
        vec![
            LedgerEntry::new("dual of the monoid", dual, 1, "degree: one-node total over the face triangle"),
            LedgerEntry::new(
                "plane dual to the triple point, from the vertex cubic",
                1,
                VERTEX_MULTIPLICITY,
                format!("multiplicity {VERTEX_MULTIPLICITY} (tabulated)"),
            ),
            LedgerEntry::new(
                "plane dual to the triple point, from exceptional curves meeting the face",
                by_geometry,
                1,
                "count: edge-point labels with the face among their indices, checked against exact incidence",
            ),
        ],
    )
}

/// A decomposition of a degree as counted through a general point of one
/// face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThroughPointAudit {
    pub face: usize,
    pub parts: Vec<(String, u64)>,
    pub total: u64,
}

impl ThroughPointAudit {
    fn new(face: usize, parts: Vec<(String, u64)>) -> Self {
        let total = parts.iter().map(|(_, n)| n).sum();
        ThroughPointAudit { face, parts, total }
    }

    pub fn part(&self, name: &str) -> Option<u64> {
        self.parts.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

/// Two-node count through a general point of `face`, split into the part
/// seen from the face triangle and the contributions of the limit
/// components not contained in the face's dual pencil of points.
pub fn two_node_audit(c: &TetraConfig, face: usize) -> Result<ThroughPointAudit> {
    let f = face_index(face)?;
    let on_face = |p: usize| c.faces()[f].contains(&c.edge_points()[p].point);
    let pairs = combinations(24, 2)
        .into_iter()
        .filter(|p| c.edge_points()[p[0]].edge != c.edge_points()[p[1]].edge && !(on_face(p[0]) && on_face(p[1])))
        .count() as u64;
    let vertex_pairs = (0..4)
        .flat_map(|v| (0..24).map(move |p| (v, p)))
        .filter(|&(v, p)| {
            let e = &c.edges()[c.edge_points()[p].edge];
            // pencils in the face's star are those with the vertex and
            // point both on the face
            !e.through_vertex(v) && !(v != f && on_face(p))
        })
        .count() as u64;
    let off_edges = c.edges().iter().filter(|e| !e.in_face(f)).count() as u64;
    Ok(ThroughPointAudit::new(
        face,
        vec![
            ("double-point pencils".into(), pairs),
            ("vertex pencils".into(), VERTEX_MULTIPLICITY * vertex_pairs),
            ("edges".into(), EDGE_MULTIPLICITY * off_edges),
            ("face triangle".into(), triangle::ledger(2)?.total()),
        ],
    ))
}

/// One-node count through a general point of `face` for a plane dual to
/// a point on the same face, and for one on a different face.
pub fn one_node_audit(c: &TetraConfig, face: usize) -> Result<(ThroughPointAudit, ThroughPointAudit)> {
    let f = face_index(face)?;
    let on_face = c.edge_points().iter().filter(|p| c.faces()[f].contains(&p.point)).count() as u64;
    let off_face = c.edge_points().len() as u64 - on_face;
    let same = ThroughPointAudit::new(
        face,
        vec![
            ("double points on the face".into(), on_face),
            ("opposite vertex".into(), VERTEX_MULTIPLICITY),
            ("face triangle".into(), triangle::ledger(1)?.total()),
        ],
    );
    let other = ThroughPointAudit::new(
        face,
        vec![
            ("all double points".into(), on_face + off_face),
            ("all vertices".into(), VERTEX_MULTIPLICITY * 4),
        ],
    );
    Ok((same, other))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tetra::build_config;

    #[test]
    fn ledgers_for_seed_zero() {
        let c = build_config(0).unwrap();
        let shapes: Vec<Vec<(u64, u64)>> = (1..=3).map(|d| enumerate_ledger(&c, d, Exec::default()).unwrap().shape()).collect();
        assert_eq!(shapes[0], vec![(24, 1), (4, 3)]);
        assert_eq!(shapes[1], vec![(240, 1), (48, 3), (6, 16)]);
        assert_eq!(shapes[2], vec![(1024, 1), (192, 3), (24, 16), (4, 304)]);
    }

    #[test]
    fn modes_agree() {
        let c = build_config(3).unwrap();
        assert_eq!(
            enumerate_ledger(&c, 3, Exec::Sequential).unwrap(),
            enumerate_ledger(&c, 3, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn bad_delta_rejected() {
        let c = build_config(0).unwrap();
        assert_eq!(enumerate_ledger(&c, 4, Exec::Sequential).unwrap_err(), Error::UnsupportedDelta(4));
    }

    #[test]
    fn counting_identities() {
        let binom = |n: u64, k: u64| (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
        assert_eq!(binom(24, 2) - 6 * binom(4, 2), 240);
        assert_eq!(binom(6, 3) * 64 - 4 * 64, 1024);
        assert_eq!(binom(3, 2) * 16, 48);
    }

    #[test]
    fn monoid_ledger() {
        let c = build_config(0).unwrap();
        for face in 1..=4 {
            let l = monoid_crude_limit(&c, face).unwrap();
            assert_eq!(l.shape(), vec![(21, 1), (1, 3), (12, 1)]);
            assert_eq!(l.total(), 36);
            assert_eq!(labels_touching(&c, face - 1).len(), 12);
        }
        assert!(matches!(monoid_crude_limit(&c, 0), Err(Error::Contract(_))));
    }

    #[test]
    fn two_node_audit_parts() {
        let c = build_config(0).unwrap();
        for face in 1..=4 {
            let a = two_node_audit(&c, face).unwrap();
            assert_eq!(a.part("double-point pencils"), Some(192));
            assert_eq!(a.part("vertex pencils"), Some(108));
            assert_eq!(a.part("edges"), Some(48));
            assert_eq!(a.part("face triangle"), Some(132));
            assert_eq!(a.total, 480);
        }
    }

    #[test]
    fn one_node_audit_parts() {
        let c = build_config(0).unwrap();
        let (same, other) = one_node_audit(&c, 2).unwrap();
        assert_eq!(same.parts.iter().map(|p| p.1).collect::<Vec<_>>(), vec![12, 3, 21]);
        assert_eq!((same.total, other.total), (36, 36));
    }
}
