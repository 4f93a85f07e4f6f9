//! Component ledgers for quartics through twelve points on a triangle of
//! lines, each degree carried as an expression over the formula module.

use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::formulas::{self, PencilBudget};
use crate::ledger::{ComponentLedger, LedgerEntry};
use crate::par::combinations;

/// How a P-degree is obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivation {
    /// A value stated without a reproducible formula.
    Const { value: u64, name: &'static str },
    DualSurfaceDegree { k: u32, nu: u32, kappa: u32 },
    PluckerDualDegree { d: u32, delta: u32, kappa: u32 },
    PluckerFlexes { d: u32, delta: u32, kappa: u32 },
    PencilNodalCount(PencilBudget),
    /// `base - 2 * correction`
    PolarTangency { base: Box<Derivation>, correction: Box<Derivation> },
    RiemannHurwitz { n: u32 },
    Binomial { n: u32, k: u32 },
    /// Bijections between two sets of `n` points, by enumeration.
    PerfectMatchings { n: u32 },
    /// Ordered splits of `n` points into parts of size `k` and `n - k`,
    /// by enumeration.
    OrderedSplits { n: u32, k: u32 },
    Product(Vec<Derivation>),
}

/// Simple branch points of a degree-`n` cover of the line by the line.
pub fn riemann_hurwitz_branch_count(n: u32) -> Result<u64> {
    if n == 0 {
        return Err(crate::error::contract("cover degree must be positive"));
    }
    Ok(2 * u64::from(n) - 2)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn to_u64(b: BigInt) -> Result<u64> {
    u64::try_from(b).map_err(|_| Error::Internal("derivation value out of range".into()))
}

impl Derivation {
    pub fn eval(&self) -> Result<u64> {
        use Derivation::*;
        match self {
            Const { value, .. } => Ok(*value),
            DualSurfaceDegree { k, nu, kappa } => to_u64(formulas::dual_surface_degree(*k, *nu, *kappa)?),
            PluckerDualDegree { d, delta, kappa } => to_u64(formulas::plucker_dual_degree(*d, *delta, *kappa)?),
            PluckerFlexes { d, delta, kappa } => to_u64(formulas::plucker_flexes(*d, *delta, *kappa)?),
            PencilNodalCount(b) => to_u64(formulas::pencil_nodal_count(b)),
            PolarTangency { base, correction } => to_u64(formulas::polar_tangency_correction(
                &BigInt::from(base.eval()?),
                &BigInt::from(correction.eval()?),
            )?),
            RiemannHurwitz { n } => riemann_hurwitz_branch_count(*n),
            Binomial { n, k } => Ok(combinations(*n as usize, *k as usize).len() as u64),
            PerfectMatchings { n } => Ok(permutations(*n as usize).len() as u64),
            OrderedSplits { n, k } => Ok(combinations(*n as usize, *k as usize).len() as u64),
            Product(fs) => fs.iter().try_fold(1u64, |acc, f| Ok(acc * f.eval()?)),
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Derivation::*;
        match self {
            Const { value, name } => write!(f, "{value} [{name}]"),
            DualSurfaceDegree { k, nu, kappa } => write!(f, "dual_surface_degree({k},{nu},{kappa})"),
            PluckerDualDegree { d, delta, kappa } => write!(f, "plucker_dual_degree({d},{delta},{kappa})"),
            PluckerFlexes { d, delta, kappa } => write!(f, "plucker_flexes({d},{delta},{kappa})"),
            PencilNodalCount(b) => write!(
                f,
                "pencil_nodal_count({},{},{},{:?})",
                b.chi_surface, b.chi_generic_fibre, b.chi_base, b.special_fibres
            ),
            PolarTangency { base, correction } => write!(f, "polar_tangency_correction({base}, {correction})"),
            RiemannHurwitz { n } => write!(f, "riemann_hurwitz_branch_count({n})"),
            Binomial { n, k } => write!(f, "C({n},{k})"),
            PerfectMatchings { n } => write!(f, "perfect_matchings({n})"),
            OrderedSplits { n, k } => write!(f, "ordered_splits({n},{k})"),
            Product(fs) => {
                let parts: Vec<String> = fs.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join(" * "))
            }
        }
    }
}

impl Serialize for Derivation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleEntry {
    pub label: &'static str,
    pub p_degree: u64,
    pub multiplicity: u64,
    pub derivation: Derivation,
}

const FOUR_RULINGS: Derivation = Derivation::Const {
    value: 4,
    name: "rulings through the four points on the conic side",
};
const TANGENTS_IN_G12: Derivation = Derivation::Const {
    value: 2,
    name: "tangent members of a pencil cutting a g^1_2",
};
const POLAR_EXCESS: Derivation = Derivation::Const {
    value: 4,
    name: "tangency component of the dual intersection",
};
const LINES_OFF_NODE: Derivation = Derivation::Const {
    value: 9,
    name: "lines on the cubic surface avoiding its double point",
};

fn cubic_dual() -> Derivation {
    Derivation::DualSurfaceDegree { k: 3, nu: 0, kappa: 1 }
}

fn elliptic_pencil(specials: [i64; 2]) -> Derivation {
    Derivation::PencilNodalCount(PencilBudget {
        chi_surface: 12,
        chi_generic_fibre: 0,
        chi_base: 2,
        special_fibres: specials.to_vec(),
    })
}

fn entry(label: &'static str, multiplicity: u64, derivation: Derivation) -> Result<TriangleEntry> {
    let p_degree = derivation.eval()?;
    Ok(TriangleEntry { label, p_degree, multiplicity, derivation })
}

fn zero_entry(label: &'static str) -> TriangleEntry {
    TriangleEntry {
        label,
        p_degree: 0,
        multiplicity: 1,
        derivation: Derivation::Const { value: 0, name: "linear system trivial on the plane side" },
    }
}

/// All components for `delta` nodes, including those of P-degree zero.
pub fn entries(delta: u32) -> Result<Vec<TriangleEntry>> {
    use Derivation::*;
    let prod = |v: Vec<Derivation>| Product(v);
    let out = match delta {
        1 => vec![
            entry("V(delta_P=1)", 1, cubic_dual())?,
            entry("V(delta_W=1)", 1, FOUR_RULINGS)?,
            entry("V(tau_E2=1)", 2, RiemannHurwitz { n: 3 })?,
            zero_entry("V(W+W_a+W_b, delta_W=1)"),
        ],
        2 => vec![
            entry("V(delta_P=2)", 1, LINES_OFF_NODE)?,
            entry("V(delta_W=2)", 1, Binomial { n: 4, k: 2 })?,
            entry("V(delta_P=delta_W=1)", 1, prod(vec![FOUR_RULINGS, cubic_dual()]))?,
            entry(
                "V(delta_P=tau_E2=1)",
                2,
                PolarTangency {
                    base: Box::new(prod(vec![cubic_dual(), PluckerDualDegree { d: 3, delta: 1, kappa: 0 }])),
                    correction: Box::new(POLAR_EXCESS),
                },
            )?,
            entry("V(delta_W=tau_E2=1)", 2, prod(vec![FOUR_RULINGS, TANGENTS_IN_G12]))?,
            entry("V(tau_E3=1)", 3, PluckerFlexes { d: 3, delta: 1, kappa: 0 })?,
            zero_entry("V(W+W_a+W_b, delta_W=2)"),
        ],
        3 => vec![
            entry("V(delta_P=3)", 1, PerfectMatchings { n: 3 })?,
            entry(
                "V(delta_P=2, delta_W=1)",
                1,
                prod(vec![LINES_OFF_NODE, FOUR_RULINGS]),
            )?,
            entry(
                "V(delta_P=1, delta_W=2)",
                1,
                prod(vec![Binomial { n: 4, k: 2 }, cubic_dual()]),
            )?,
            entry("V(delta_P=2, tau_E2=1)", 2, prod(vec![LINES_OFF_NODE, TANGENTS_IN_G12]))?,
            entry(
                "V(delta_P=delta_W=tau_E2=1)",
                2,
                prod(vec![FOUR_RULINGS, TANGENTS_IN_G12, elliptic_pencil([3, 2])]),
            )?,
            entry(
                "V(delta_P=tau_E3=1)",
                3,
                prod(vec![PluckerFlexes { d: 3, delta: 1, kappa: 0 }, elliptic_pencil([3, 3])]),
            )?,
            entry("V(W+W_a+W_b, delta_W=3)", 1, OrderedSplits { n: 4, k: 2 })?,
        ],
        d => return Err(Error::UnsupportedDelta(d)),
    };
    Ok(out)
}

/// Target totals of the three ledgers.
pub const TOTALS: [u64; 3] = [21, 132, 304];

/// Components of P-degree zero, which a [`ComponentLedger`] cannot hold.
pub fn zero_degree_components(delta: u32) -> Result<Vec<TriangleEntry>> {
    Ok(entries(delta)?.into_iter().filter(|e| e.p_degree == 0).collect())
}

pub fn ledger(delta: u32) -> Result<ComponentLedger> {
    let list = entries(delta)?;
    let target = TOTALS[delta as usize - 1];
    ComponentLedger::new(
        format!("triangle delta={delta}"),
        target,
        list.into_iter()
            .filter(|e| e.p_degree > 0)
            .map(|e| LedgerEntry::new(e.label, e.p_degree, e.multiplicity, e.derivation.to_string()))
            .collect(),
    )
}
