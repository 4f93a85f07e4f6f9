use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::presentation::{Lattice, SurfacePresentation};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub name: String,
    pub multiplicity: u32,
    pub presentation: SurfacePresentation,
}

/// One side of a double curve: a named curve or an explicit class on a
/// component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Side {
    pub component: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<Vec<i64>>,
}

impl Side {
    pub fn curve(component: impl Into<String>, curve: impl Into<String>) -> Side {
        Side { component: component.into(), curve: Some(curve.into()), class: None }
    }

    pub fn class(component: impl Into<String>, class: Vec<i64>) -> Side {
        Side { component: component.into(), curve: None, class: Some(class) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriplePoint {
    pub component: String,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCurve {
    pub name: String,
    pub side_a: Side,
    pub side_b: Side,
    #[serde(default)]
    pub triple_points: Vec<TriplePoint>,
}

/// Dual complex of a normal-crossing central fibre, with enough lattice
/// data to get the normal degree of every double curve on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibreGraph {
    pub name: String,
    #[serde(default)]
    pub metadata: Vec<String>,
    pub components: Vec<Component>,
    pub double_curves: Vec<DoubleCurve>,
}

fn schema(msg: String) -> Error {
    Error::Schema(msg)
}

impl FibreGraph {
    /// Parses and validates a JSON document.
    pub fn from_json(text: &str) -> Result<FibreGraph> {
        let g: FibreGraph = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fibre graph serializes")
    }

    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.name == name)
    }

    fn lattices(&self) -> Result<BTreeMap<&str, Lattice>> {
        self.components
            .iter()
            .map(|c| {
                c.presentation
                    .lattice()
                    .map(|l| (c.name.as_str(), l))
                    .map_err(|e| schema(format!("component {}: {e}", c.name)))
            })
            .collect()
    }

    fn side_class(lattices: &BTreeMap<&str, Lattice>, curve: &str, s: &Side) -> Result<Vec<i64>> {
        let l = lattices
            .get(s.component.as_str())
            .ok_or_else(|| schema(format!("curve {curve}: unknown component {}", s.component)))?;
        match (&s.curve, &s.class) {
            (Some(name), None) => l
                .class(name)
                .ok_or_else(|| schema(format!("curve {curve}: no class {name} on {}", s.component))),
            (None, Some(v)) if v.len() == l.rank() => Ok(v.clone()),
            (None, Some(v)) => Err(schema(format!(
                "curve {curve}: class of length {} on {} of rank {}",
                v.len(),
                s.component,
                l.rank()
            ))),
            _ => Err(schema(format!("curve {curve}: a side needs exactly one of curve or class"))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut names = BTreeSet::new();
        for c in &self.components {
            if !names.insert(c.name.as_str()) {
                return Err(schema(format!("duplicate component {}", c.name)));
            }
            if c.multiplicity == 0 {
                return Err(schema(format!("component {} has multiplicity 0", c.name)));
            }
        }
        let lattices = self.lattices()?;
        let mut curves = BTreeSet::new();
        for d in &self.double_curves {
            if !curves.insert(d.name.as_str()) {
                return Err(schema(format!("duplicate double curve {}", d.name)));
            }
            if d.side_a.component == d.side_b.component {
                return Err(schema(format!("curve {} has both sides on {}", d.name, d.side_a.component)));
            }
            Self::side_class(&lattices, &d.name, &d.side_a)?;
            Self::side_class(&lattices, &d.name, &d.side_b)?;
            for t in &d.triple_points {
                let c = self
                    .component(&t.component)
                    .ok_or_else(|| schema(format!("curve {}: unknown triple-point component {}", d.name, t.component)))?;
                if t.component == d.side_a.component || t.component == d.side_b.component {
                    return Err(schema(format!("curve {}: triple point on one of its own sides", d.name)));
                }
                if c.multiplicity != t.multiplicity {
                    return Err(schema(format!(
                        "curve {}: triple point with {} of multiplicity {}, component has {}",
                        d.name, t.component, t.multiplicity, c.multiplicity
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveCheck {
    pub curve: String,
    pub normal_a: i64,
    pub normal_b: i64,
    pub multiplicity_a: u32,
    pub multiplicity_b: u32,
    pub triple_points: i64,
    pub lhs: i64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TpfReport {
    pub fibre: String,
    pub curves: Vec<CurveCheck>,
}

impl TpfReport {
    pub fn pass(&self) -> bool {
        self.curves.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CurveCheck> {
        self.curves.iter().filter(|c| !c.pass)
    }
}

/// For each double curve `R = Q . Q'` with multiplicities `m`, `m'`:
/// `m' N_{R|Q} + m N_{R|Q'} + sum of multiplicities at triple points`,
/// which must vanish.
pub fn check_triple_point_formula(g: &FibreGraph) -> Result<TpfReport> {
    g.validate()?;
    let lattices = g.lattices()?;
    let mult = |name: &str| g.component(name).map(|c| c.multiplicity).expect("validated");
    let curves = g
        .double_curves
        .iter()
        .map(|d| {
            let normal = |s: &Side| -> Result<i64> {
                let v = FibreGraph::side_class(&lattices, &d.name, s)?;
                lattices[s.component.as_str()].dot(&v, &v)
            };
            let (na, nb) = (normal(&d.side_a)?, normal(&d.side_b)?);
            let (ma, mb) = (mult(&d.side_a.component), mult(&d.side_b.component));
            let triple: i64 = d.triple_points.iter().map(|t| i64::from(t.multiplicity)).sum();
            let lhs = i64::from(mb) * na + i64::from(ma) * nb + triple;
            Ok(CurveCheck {
                curve: d.name.clone(),
                normal_a: na,
                normal_b: nb,
                multiplicity_a: ma,
                multiplicity_b: mb,
                triple_points: triple,
                lhs,
                pass: lhs == 0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TpfReport { fibre: g.name.clone(), curves })
}
