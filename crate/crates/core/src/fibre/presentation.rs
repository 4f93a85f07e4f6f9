use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{contract, Error, Result};

/// The surface a presentation starts from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Base {
    /// basis `H`, `H^2 = 1`
    ProjectivePlane,
    /// basis `L1, L2`, `L1^2 = L2^2 = 0`, `L1.L2 = 1`
    SmoothQuadric,
    /// basis `F, E`, `F^2 = 0`, `E^2 = -n`, `F.E = 1`
    Hirzebruch(u32),
    /// A lattice given outright, for surfaces without a rational model.
    Explicit { basis: Vec<String>, gram: Vec<Vec<i64>> },
}

impl Base {
    fn lattice(&self) -> Result<(Vec<String>, Vec<Vec<i64>>)> {
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        Ok(match self {
            Base::ProjectivePlane => (names(&["H"]), vec![vec![1]]),
            Base::SmoothQuadric => (names(&["L1", "L2"]), vec![vec![0, 1], vec![1, 0]]),
            Base::Hirzebruch(n) => (names(&["F", "E"]), vec![vec![0, 1], vec![1, -i64::from(*n)]]),
            Base::Explicit { basis, gram } => {
                let k = basis.len();
                if k == 0 || gram.len() != k || gram.iter().any(|r| r.len() != k) {
                    return Err(Error::Schema(format!("explicit lattice with {k} classes needs a {k}x{k} gram matrix")));
                }
                for i in 0..k {
                    for j in 0..i {
                        if gram[i][j] != gram[j][i] {
                            return Err(Error::Schema(format!("gram matrix not symmetric at ({i},{j})")));
                        }
                    }
                }
                (basis.clone(), gram.clone())
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Through {
    pub curve: String,
    pub multiplicity: u32,
}

/// Blow-up of a point lying on the listed curves with the given
/// multiplicities; `name` becomes the exceptional class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Blowup {
    pub name: String,
    #[serde(default)]
    pub through: Vec<Through>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfacePresentation {
    pub base: Base,
    /// Named curves, as class vectors in the base lattice.
    #[serde(default)]
    pub curves: BTreeMap<String, Vec<i64>>,
    #[serde(default)]
    pub blowups: Vec<Blowup>,
}

/// Intersection lattice after all blow-ups, with the proper transforms of
/// the named curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    pub basis: Vec<String>,
    pub gram: Vec<Vec<i64>>,
    pub curves: BTreeMap<String, Vec<i64>>,
}

impl Lattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dot(&self, a: &[i64], b: &[i64]) -> Result<i64> {
        let n = self.rank();
        if a.len() != n || b.len() != n {
            return Err(contract(format!("class vectors of length {} and {} in rank {n}", a.len(), b.len())));
        }
        Ok((0..n).map(|i| (0..n).map(|j| a[i] * self.gram[i][j] * b[j]).sum::<i64>()).sum())
    }

    /// Class of a named curve or of a basis element.
    pub fn class(&self, name: &str) -> Option<Vec<i64>> {
        if let Some(c) = self.curves.get(name) {
            return Some(c.clone());
        }
        let i = self.basis.iter().position(|b| b == name)?;
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        Some(v)
    }
}

impl SurfacePresentation {
    pub fn new(base: Base) -> Self {
        SurfacePresentation { base, curves: BTreeMap::new(), blowups: Vec::new() }
    }

    pub fn with_curve(mut self, name: impl Into<String>, class: Vec<i64>) -> Self {
        self.curves.insert(name.into(), class);
        self
    }

    pub fn blow_up(mut self, name: impl Into<String>, through: &[(&str, u32)]) -> Self {
        self.blowups.push(Blowup {
            name: name.into(),
            through: through.iter().map(|(c, m)| Through { curve: c.to_string(), multiplicity: *m }).collect(),
        });
        self
    }

    pub fn lattice(&self) -> Result<Lattice> {
        let (mut basis, mut gram) = self.base.lattice()?;
        let mut curves = self.curves.clone();
        for (name, v) in &curves {
            if v.len() != basis.len() {
                return Err(Error::Schema(format!("curve {name} has {} coordinates for rank {}", v.len(), basis.len())));
            }
        }
        for b in &self.blowups {
            if basis.contains(&b.name) || curves.contains_key(&b.name) {
                return Err(Error::Schema(format!("blow-up name {} already in use", b.name)));
            }
            for row in gram.iter_mut() {
                row.push(0);
            }
            basis.push(b.name.clone());
            let mut row = vec![0; basis.len()];
            row[basis.len() - 1] = -1;
            gram.push(row);
            for v in curves.values_mut() {
                v.push(0);
            }
            for t in &b.through {
                let v = curves
                    .get_mut(&t.curve)
                    .ok_or_else(|| Error::Schema(format!("blow-up {} through unknown curve {}", b.name, t.curve)))?;
                *v.last_mut().expect("just pushed") -= i64::from(t.multiplicity);
            }
        }
        Ok(Lattice { basis, gram, curves })
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.lattice()?.rank())
    }
}

/// `v^T G v` in the blown-up lattice of `p`.
pub fn self_intersection(p: &SurfacePresentation, v: &[i64]) -> Result<i64> {
    let l = p.lattice()?;
    l.dot(v, v)
}

/// Self-intersection of a named curve (or exceptional class).
pub fn curve_self_intersection(p: &SurfacePresentation, name: &str) -> Result<i64> {
    let l = p.lattice()?;
    let v = l.class(name).ok_or_else(|| Error::Schema(format!("unknown curve {name}")))?;
    l.dot(&v, &v)
}
