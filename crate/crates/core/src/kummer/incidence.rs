use serde::Serialize;

use crate::par::combinations;

pub const SIZE: usize = 16;

/// A 16 x 16 node/trope incidence, stored as one trope bitmask per node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Incidence {
    pub name: String,
    pub nodes: Vec<String>,
    pub tropes: Vec<String>,
    rows: Vec<u16>,
}

fn bit(i: usize) -> u16 {
    1 << i
}

impl Incidence {
    pub fn from_predicate(
        name: impl Into<String>,
        nodes: Vec<String>,
        tropes: Vec<String>,
        incident: impl Fn(usize, usize) -> bool,
    ) -> Self {
        let rows = (0..SIZE)
            .map(|n| (0..SIZE).filter(|&t| incident(n, t)).fold(0u16, |m, t| m | bit(t)))
            .collect();
        Incidence { name: name.into(), nodes, tropes, rows }
    }

    pub fn incident(&self, node: usize, trope: usize) -> bool {
        self.rows[node] & bit(trope) != 0
    }

    /// Tropes through `node`, as a bitmask.
    pub fn node_row(&self, node: usize) -> u16 {
        self.rows[node]
    }

    /// Nodes on `trope`, as a bitmask.
    pub fn trope_nodes(&self, trope: usize) -> u16 {
        (0..SIZE).filter(|&n| self.incident(n, trope)).fold(0, |m, n| m | bit(n))
    }

    pub fn transpose(&self) -> Incidence {
        Incidence {
            name: format!("{} (transposed)", self.name),
            nodes: self.tropes.clone(),
            tropes: self.nodes.clone(),
            rows: (0..SIZE).map(|t| self.trope_nodes(t)).collect(),
        }
    }

    /// Sixteen lines, one per node, `#` marking incidence.
    pub fn to_bitmap(&self) -> String {
        (0..SIZE)
            .map(|n| (0..SIZE).map(|t| if self.incident(n, t) { '#' } else { '.' }).collect::<String>() + "\n")
            .collect()
    }

    pub fn matrix(&self) -> Vec<Vec<u8>> {
        (0..SIZE).map(|n| (0..SIZE).map(|t| u8::from(self.incident(n, t))).collect()).collect()
    }

    /// Lists every violated 16_6 axiom; empty when the structure is valid.
    pub fn verify_16_6(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for n in 0..SIZE {
            let d = self.rows[n].count_ones();
            if d != 6 {
                bad.push(format!("node {} on {d} tropes", self.nodes[n]));
            }
        }
        for t in 0..SIZE {
            let d = self.trope_nodes(t).count_ones();
            if d != 6 {
                bad.push(format!("trope {} through {d} nodes", self.tropes[t]));
            }
        }
        for p in combinations(SIZE, 2) {
            let common = (self.rows[p[0]] & self.rows[p[1]]).count_ones();
            if common != 2 {
                bad.push(format!("nodes {} and {} share {common} tropes", self.nodes[p[0]], self.nodes[p[1]]));
            }
            let common = (self.trope_nodes(p[0]) & self.trope_nodes(p[1])).count_ones();
            if common != 2 {
                bad.push(format!(
                    "tropes {} and {} share {common} nodes",
                    self.tropes[p[0]], self.tropes[p[1]]
                ));
            }
        }
        bad
    }

    /// Number of tropes containing all three nodes.
    pub fn common_tropes(&self, a: usize, b: usize, c: usize) -> u32 {
        (self.rows[a] & self.rows[b] & self.rows[c]).count_ones()
    }

    /// Node triples lying on no common trope.
    pub fn offtrope_triples(&self) -> Vec<[usize; 3]> {
        combinations(SIZE, 3)
            .into_iter()
            .filter(|t| self.common_tropes(t[0], t[1], t[2]) == 0)
            .map(|t| [t[0], t[1], t[2]])
            .collect()
    }

    pub fn ontrope_triples(&self) -> Vec<[usize; 3]> {
        combinations(SIZE, 3)
            .into_iter()
            .filter(|t| self.common_tropes(t[0], t[1], t[2]) > 0)
            .map(|t| [t[0], t[1], t[2]])
            .collect()
    }

    pub fn count_offtrope_triples(&self) -> u64 {
        self.offtrope_triples().len() as u64
    }

    /// `tri[a][b]`: nodes `c` with `{a, b, c}` on a common trope.
    pub(crate) fn triple_masks(&self) -> Vec<Vec<u16>> {
        (0..SIZE)
            .map(|a| {
                (0..SIZE)
                    .map(|b| {
                        let shared = self.rows[a] & self.rows[b];
                        let mut m = (0..SIZE)
                            .filter(|&t| shared & bit(t) != 0)
                            .fold(0u16, |m, t| m | self.trope_nodes(t));
                        m &= !(bit(a) | bit(b));
                        if a == b {
                            0
                        } else {
                            m
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

fn subset_label(s: &[usize]) -> String {
    s.iter().map(|i| (i + 1).to_string()).collect()
}

/// Nodes `{}` and the 2-subsets of `{1..6}`; tropes the six singletons and
/// the ten splits of `{1..6}` into two triples.
pub fn build_theta_model() -> Incidence {
    let pairs = combinations(6, 2);
    let mut nodes = vec!["0".to_string()];
    nodes.extend(pairs.iter().map(|p| subset_label(p)));
    let splits: Vec<Vec<usize>> = combinations(6, 3).into_iter().filter(|s| s[0] == 0).collect();
    let complement = |s: &[usize]| (0..6).filter(|i| !s.contains(i)).collect::<Vec<_>>();
    let mut tropes: Vec<String> = (1..=6).map(|i| format!("{{{i}}}")).collect();
    tropes.extend(splits.iter().map(|s| format!("{}|{}", subset_label(s), subset_label(&complement(s)))));

    Incidence::from_predicate("theta", nodes, tropes, |n, t| {
        match (n, t) {
            (0, t) => t < 6,
            (n, t) if t < 6 => pairs[n - 1].contains(&t),
            (n, t) => {
                let p = &pairs[n - 1];
                let s = &splits[t - 6];
                let inside = |s: &[usize]| p.iter().all(|i| s.contains(i));
                inside(s) || inside(&complement(s))
            }
        }
    })
}

/// Nodes and tropes both indexed by a 4 x 4 grid; trope `(x, y)` holds the
/// nodes of row `x` and of column `y` other than `(x, y)` itself.
pub fn build_grid_model() -> Incidence {
    let labels: Vec<String> = (0..SIZE).map(|i| format!("({},{})", i / 4 + 1, i % 4 + 1)).collect();
    Incidence::from_predicate("grid", labels.clone(), labels, |n, t| {
        let (a, b, x, y) = (n / 4, n % 4, t / 4, t % 4);
        (a == x && b != y) || (b == y && a != x)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(inc: &Incidence, labels: &[String], l: &str) -> usize {
        let _ = inc;
        labels.iter().position(|x| x == l).unwrap()
    }

    #[test]
    fn theta_small_facts() {
        let th = build_theta_model();
        let empty = idx(&th, &th.nodes, "0");
        assert_eq!(th.node_row(empty), 0b11_1111);
        let n12 = idx(&th, &th.nodes, "12");
        let shared: Vec<&str> = (0..SIZE)
            .filter(|&t| th.incident(empty, t) && th.incident(n12, t))
            .map(|t| th.tropes[t].as_str())
            .collect();
        assert_eq!(shared, vec!["{1}", "{2}"]);
    }

    #[test]
    fn grid_small_facts() {
        let g = build_grid_model();
        let a = idx(&g, &g.nodes, "(1,1)");
        let b = idx(&g, &g.nodes, "(2,2)");
        let shared: Vec<&str> = (0..SIZE).filter(|&t| g.incident(a, t) && g.incident(b, t)).map(|t| g.tropes[t].as_str()).collect();
        assert_eq!(shared, vec!["(1,2)", "(2,1)"]);
    }

    #[test]
    fn both_models_are_16_6() {
        for inc in [build_theta_model(), build_grid_model()] {
            assert!(inc.verify_16_6().is_empty(), "{}: {:?}", inc.name, inc.verify_16_6());
            assert!(inc.transpose().verify_16_6().is_empty());
        }
    }

    #[test]
    fn broken_structure_reported() {
        let th = build_theta_model();
        let mut m = th.clone();
        m.rows[3] ^= 1 << 7;
        assert!(!m.verify_16_6().is_empty());
    }

    #[test]
    fn triple_counts() {
        for inc in [build_theta_model(), build_grid_model()] {
            assert_eq!(inc.count_offtrope_triples(), 240);
            let on = inc.ontrope_triples();
            assert_eq!(on.len(), 16 * 20);
            assert!(on.iter().all(|t| inc.common_tropes(t[0], t[1], t[2]) == 1));
        }
    }

    #[test]
    fn bitmap_shape() {
        let bm = build_grid_model().to_bitmap();
        let lines: Vec<&str> = bm.lines().collect();
        assert_eq!(lines.len(), 16);
        assert!(lines.iter().all(|l| l.len() == 16 && l.matches('#').count() == 6));
    }

    #[test]
    fn triple_masks_agree_with_common_tropes() {
        let th = build_theta_model();
        let tri = th.triple_masks();
        for t in combinations(SIZE, 3) {
            let on = th.common_tropes(t[0], t[1], t[2]) > 0;
            assert_eq!(tri[t[0]][t[1]] & (1 << t[2]) != 0, on);
        }
    }
}
