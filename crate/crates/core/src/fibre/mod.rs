//! Central fibres of semistable degenerations as labeled dual complexes,
//! checked with the Triple Point Formula.
//!
//! The JSON form of a [`FibreGraph`]:
//!
//! ```text
//! { "name": ..., "metadata": [..],
//!   "components": [{ "name", "multiplicity",
//!                    "presentation": { "base", "curves": {name: class}, "blowups": [{ "name", "through": [{ "curve", "multiplicity" }] }] } }],
//!   "double_curves": [{ "name", "side_a": { "component", "curve" | "class" }, "side_b": {..},
//!                       "triple_points": [{ "component", "multiplicity" }] }] }
//! ```
//!
//! `base` is `"projective-plane"`, `"smooth-quadric"`, `{"hirzebruch": n}`
//! or `{"explicit": {"basis": [..], "gram": [[..]]}}`.

mod graph;
mod presentation;

pub use graph::{check_triple_point_formula, Component, CurveCheck, DoubleCurve, FibreGraph, Side, TpfReport, TriplePoint};
pub use presentation::{curve_self_intersection, self_intersection, Base, Blowup, Lattice, SurfacePresentation, Through};

use crate::error::Result;
use crate::kummer::{build_theta_model, SIZE};

const BUNDLED_KUMMER: &str = include_str!("../../data/kummer_fibre.json");

/// Self-intersection of a smooth rational curve on a K3 surface.
pub const K3_RATIONAL_CURVE: i64 = -2;

/// The fibre bundled with the crate, parsed and validated.
pub fn bundled_kummer_fibre() -> Result<FibreGraph> {
    FibreGraph::from_json(BUNDLED_KUMMER)
}

/// Central fibre of the good model of a degeneration to a Kummer quartic.
///
/// Components: the resolved Kummer `S0` (its 32 rational curves given as
/// an explicit lattice), one quadric `Q_i` per node blown up at the six
/// points where its conic meets the `W_j` of the tropes through the node,
/// and one `F_4` surface `W_j` per trope. Double curves: `E_i = S0.Q_i`,
/// `D_j = S0.W_j` and `G_i_j = Q_i.W_j` for each incident pair.
pub fn build_kummer_fibre() -> FibreGraph {
    let inc = build_theta_model();
    let e = |i: usize| format!("E{}", i + 1);
    let d = |j: usize| format!("D{}", j + 1);
    let q = |i: usize| format!("Q{}", i + 1);
    let w = |j: usize| format!("W{}", j + 1);
    let gname = |i: usize, j: usize| format!("G{}_{}", i + 1, j + 1);
    let inc = &inc;
    let tropes_of = |i: usize| (0..SIZE).filter(move |&j| inc.incident(i, j));
    let nodes_of = |j: usize| (0..SIZE).filter(move |&i| inc.incident(i, j));

    let basis: Vec<String> = (0..SIZE).map(e).chain((0..SIZE).map(d)).collect();
    let gram: Vec<Vec<i64>> = (0..2 * SIZE)
        .map(|r| {
            (0..2 * SIZE)
                .map(|c| match (r, c) {
                    _ if r == c => K3_RATIONAL_CURVE,
                    (r, c) if r < SIZE && c >= SIZE => i64::from(inc.incident(r, c - SIZE)),
                    (r, c) if r >= SIZE && c < SIZE => i64::from(inc.incident(c, r - SIZE)),
                    _ => 0,
                })
                .collect()
        })
        .collect();

    let mut components = vec![Component {
        name: "S0".into(),
        multiplicity: 1,
        presentation: SurfacePresentation::new(Base::Explicit { basis, gram }),
    }];
    for i in 0..SIZE {
        let mut p = SurfacePresentation::new(Base::SmoothQuadric).with_curve("E", vec![1, 1]);
        for j in tropes_of(i) {
            p = p.blow_up(gname(i, j), &[("E", 1)]);
        }
        components.push(Component { name: q(i), multiplicity: 1, presentation: p });
    }
    for j in 0..SIZE {
        let p = SurfacePresentation::new(Base::Hirzebruch(4)).with_curve("D", vec![0, 1]);
        components.push(Component { name: w(j), multiplicity: 1, presentation: p });
    }

    let tp = |name: String| TriplePoint { component: name, multiplicity: 1 };
    let mut double_curves = Vec::new();
    for i in 0..SIZE {
        double_curves.push(DoubleCurve {
            name: e(i),
            side_a: Side::curve("S0", e(i)),
            side_b: Side::curve(q(i), "E"),
            triple_points: tropes_of(i).map(|j| tp(w(j))).collect(),
        });
    }
    for j in 0..SIZE {
        double_curves.push(DoubleCurve {
            name: d(j),
            side_a: Side::curve("S0", d(j)),
            side_b: Side::curve(w(j), "D"),
            triple_points: nodes_of(j).map(|i| tp(q(i))).collect(),
        });
    }
    for i in 0..SIZE {
        for j in tropes_of(i) {
            double_curves.push(DoubleCurve {
                name: gname(i, j),
                side_a: Side::curve(q(i), gname(i, j)),
                side_b: Side::curve(w(j), "F"),
                triple_points: vec![tp("S0".into())],
            });
        }
    }

    FibreGraph {
        name: "kummer".into(),
        metadata: vec![
            "S0: minimal resolution of the Kummer quartic; node curves E_i and trope conics D_j are (-2)-curves".into(),
            "Q_i: quadric over node i; its conic E_i is blown up where it meets the six W_j".into(),
            "W_j: F_4 over trope j; D_j is the negative section, G_i_j are fibres".into(),
            "node and trope indices follow the theta model".into(),
        ],
        components,
        double_curves,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let g = build_kummer_fibre();
        assert_eq!(g.components.len(), 33);
        assert_eq!(g.double_curves.len(), 128);
        let g_curves = |comp: &str| {
            g.double_curves
                .iter()
                .filter(|d| d.name.starts_with('G') && (d.side_a.component == comp || d.side_b.component == comp))
                .count()
        };
        for k in 1..=16 {
            assert_eq!(g_curves(&format!("Q{k}")), 6);
            assert_eq!(g_curves(&format!("W{k}")), 6);
        }
    }

    #[test]
    fn normal_degrees() {
        let g = build_kummer_fibre();
        for c in g.components.iter().filter(|c| c.name.starts_with('W')) {
            assert_eq!(curve_self_intersection(&c.presentation, "E").unwrap(), -4);
        }
        let r = check_triple_point_formula(&g).unwrap();
        let by_kind = |p: char| r.curves.iter().filter(|c| c.curve.starts_with(p)).map(|c| (c.normal_a, c.normal_b, c.triple_points)).collect::<std::collections::BTreeSet<_>>();
        assert_eq!(by_kind('E').into_iter().collect::<Vec<_>>(), vec![(-2, -4, 6)]);
        assert_eq!(by_kind('D').into_iter().collect::<Vec<_>>(), vec![(-2, -4, 6)]);
        assert_eq!(by_kind('G').into_iter().collect::<Vec<_>>(), vec![(-1, 0, 1)]);
        assert!(r.pass());
    }

    #[test]
    fn bundled_dataset_matches_construction() {
        assert_eq!(bundled_kummer_fibre().unwrap(), build_kummer_fibre());
    }

    #[test]
    fn removing_any_triple_point_fails() {
        let base = build_kummer_fibre();
        for (k, d) in base.double_curves.iter().enumerate() {
            for t in 0..d.triple_points.len() {
                let mut g = base.clone();
                g.double_curves[k].triple_points.remove(t);
                let r = check_triple_point_formula(&g).unwrap();
                let bad: Vec<&CurveCheck> = r.failures().collect();
                assert_eq!(bad.len(), 1);
                assert_eq!((bad[0].curve.as_str(), bad[0].lhs), (d.name.as_str(), -1));
            }
        }
    }
}
