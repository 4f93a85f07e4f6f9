//! Classical enumerative formulas: Severi degrees of surfaces in 3-space,
//! dual-surface degrees with A1/A2 points, de Jonquières counts, Plücker
//! formulas for nodal-cuspidal plane curves and the Euler-characteristic
//! budget of a pencil.
//!
//! Everything is evaluated over arbitrary-precision integers. Divisions
//! assert exact divisibility and report an error otherwise.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{contract, Error, Result};
use crate::kernel::SparsePoly;

fn big(n: impl Into<BigInt>) -> BigInt {
    n.into()
}

fn exact_div(num: BigInt, den: i64, what: &str) -> Result<BigInt> {
    let (q, r) = num.div_rem(&BigInt::from(den));
    if !r.is_zero() {
        return Err(Error::Internal(format!("{what}: {num} not divisible by {den}")));
    }
    Ok(q)
}

/// Surface degree and node count for [`severi_degree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeveriDegreeInput {
    pub k: u32,
    pub delta: u32,
}

/// Degree `d_{δ,k}` of the variety of δ-tangent planes to a general
/// surface of degree `k` in P^3, for δ = 1, 2, 3.
pub fn severi_degree(k: u32, delta: u32) -> Result<BigInt> {
    if k < 2 {
        return Err(contract(format!("surface degree k = {k} must be at least 2")));
    }
    let k = big(k);
    let one = big(1);
    let two = big(2);
    let k_1 = &k - &one;
    let k_2 = &k - &two;
    match delta {
        1 => Ok(&k * &k_1 * &k_1),
        2 => {
            let k2 = &k * &k;
            let k3 = &k2 * &k;
            let tail = &k3 - &k2 + &k - big(12);
            exact_div(&k * &k_1 * &k_2 * tail, 2, "d_2")
        }
        3 => {
            // Horner for k^7 - 4k^6 + 7k^5 - 45k^4 + 114k^3 - 111k^2 + 548k - 960
            let coeffs = [1i64, -4, 7, -45, 114, -111, 548, -960];
            let tail = coeffs
                .iter()
                .fold(BigInt::zero(), |acc, &c| acc * &k + big(c));
            exact_div(&k * &k_2 * tail, 6, "d_3")
        }
        other => Err(Error::UnsupportedDelta(other)),
    }
}

/// Degree of the dual of a degree-`k` surface whose only singularities
/// are `nu` A1 points and `kappa` A2 points: `k(k-1)^2 - 2ν - 3κ`.
pub fn dual_surface_degree(k: u32, nu: u32, kappa: u32) -> Result<BigInt> {
    if k < 2 {
        return Err(contract(format!("surface degree k = {k} must be at least 2")));
    }
    let k = big(k);
    let smooth = &k * (&k - 1) * (&k - 1);
    let value: BigInt = smooth - big(2) * nu - big(3) * kappa;
    if value.is_negative() {
        return Err(Error::OutOfRange(format!(
            "dual degree would be negative ({value}) for nu = {nu}, kappa = {kappa}"
        )));
    }
    Ok(value)
}

const UV: [&str; 2] = ["u", "v"];

/// The bivariate generating function `(1+4u+v)^g (1+2u+v)^(d-τ-g)`.
pub fn dejonquieres_series(d: u32, g: u32, tau: u32) -> Result<SparsePoly> {
    check_dejonquieres(d, g, tau)?;
    let lin = |cu: i64| {
        SparsePoly::from_terms(&UV, [(vec![0, 0], 1i64), (vec![1, 0], cu), (vec![0, 1], 1)])
    };
    let genus_part = lin(4)?.pow(g);
    let rational_part = lin(2)?.pow(d - tau - g);
    genus_part.mul(&rational_part)
}

fn check_dejonquieres(d: u32, g: u32, tau: u32) -> Result<()> {
    if 2 * tau >= d {
        return Err(contract(format!("need 2*tau < d, got d = {d}, tau = {tau}")));
    }
    if tau + g > d {
        return Err(contract(format!("need d - tau - g >= 0, got d = {d}, g = {g}, tau = {tau}")));
    }
    Ok(())
}

/// Number of hyperplanes tangent at `tau` distinct points to a curve of
/// degree `d` and genus `g` with unramified normalization: the
/// coefficient of `u^τ v^(d-2τ)` in [`dejonquieres_series`].
pub fn dejonquieres(d: u32, g: u32, tau: u32) -> Result<BigInt> {
    check_dejonquieres(d, g, tau)?;
    // only terms with u-degree <= tau can reach the wanted monomial
    let target = [tau, d - 2 * tau];
    let lin = |cu: i64| {
        SparsePoly::from_terms(&UV, [(vec![0, 0], 1i64), (vec![1, 0], cu), (vec![0, 1], 1)])
    };
    let genus_part = lin(4)?.pow_truncated(g, &target)?;
    let rational_part = lin(2)?.pow_truncated(d - tau - g, &target)?;
    genus_part.mul_truncated(&rational_part, &target)?.coefficient(&target)
}

/// Plane curve of degree `d` with `delta` nodes and `kappa` cusps and no
/// other singularities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PluckerInput {
    pub d: u32,
    pub delta: u32,
    pub kappa: u32,
}

impl PluckerInput {
    pub fn new(d: u32, delta: u32, kappa: u32) -> Result<Self> {
        let input = PluckerInput { d, delta, kappa };
        if d < 1 {
            return Err(contract("plane curve degree must be at least 1"));
        }
        if input.genus().is_negative() {
            return Err(Error::OutOfRange(format!(
                "geometric genus of (d={d}, delta={delta}, kappa={kappa}) is negative"
            )));
        }
        Ok(input)
    }

    /// Geometric genus `(d-1)(d-2)/2 - δ - κ`.
    pub fn genus(&self) -> BigInt {
        let d = big(self.d);
        (&d - 1) * (&d - 2) / 2 - big(self.delta) - big(self.kappa)
    }
}

fn nonneg(value: BigInt, what: &str, input: &PluckerInput) -> Result<BigInt> {
    if value.is_negative() {
        return Err(Error::OutOfRange(format!("{what} = {value} is negative for {input:?}")));
    }
    Ok(value)
}

/// Class of the curve: `d(d-1) - 2δ - 3κ`.
pub fn plucker_dual_degree(d: u32, delta: u32, kappa: u32) -> Result<BigInt> {
    let input = PluckerInput::new(d, delta, kappa)?;
    let dd = big(d);
    let value = &dd * (&dd - 1) - big(2) * delta - big(3) * kappa;
    nonneg(value, "dual degree", &input)
}

/// Number of flexes: `3d(d-2) - 6δ - 8κ`.
pub fn plucker_flexes(d: u32, delta: u32, kappa: u32) -> Result<BigInt> {
    let input = PluckerInput::new(d, delta, kappa)?;
    let dd = big(d);
    let value = big(3) * &dd * (&dd - 2) - big(6) * delta - big(8) * kappa;
    nonneg(value, "flex count", &input)
}

/// Number of bitangents, i.e. the nodes of the dual curve, solved from
/// `d = d*(d*-1) - 2δ* - 3ι` where `d*` is the class and `ι` the flex
/// count (the flexes become the cusps of the dual).
pub fn plucker_bitangents(d: u32, delta: u32, kappa: u32) -> Result<BigInt> {
    let input = PluckerInput::new(d, delta, kappa)?;
    let class = plucker_dual_degree(d, delta, kappa)?;
    let flexes = plucker_flexes(d, delta, kappa)?;
    let twice: BigInt = &class * (&class - 1) - big(3) * &flexes - big(d);
    let (half, rem) = twice.div_rem(&big(2));
    if !rem.is_zero() {
        return Err(Error::Inconsistent(format!(
            "bitangent count {twice}/2 is not an integer for {input:?}"
        )));
    }
    if half.is_negative() {
        return Err(Error::Inconsistent(format!(
            "bitangent count {half} is negative for {input:?}"
        )));
    }
    Ok(half)
}

/// Geometric genus of the dual curve, from its degree, bitangents (its
/// nodes) and flexes (its cusps). Agrees with [`PluckerInput::genus`]
/// whenever the inputs are admissible.
pub fn plucker_dual_genus(d: u32, delta: u32, kappa: u32) -> Result<BigInt> {
    let class = plucker_dual_degree(d, delta, kappa)?;
    let nodes = plucker_bitangents(d, delta, kappa)?;
    let cusps = plucker_flexes(d, delta, kappa)?;
    Ok((&class - 1) * (&class - 2) / 2 - nodes - cusps)
}

/// Euler-characteristic data of a fibration `S -> B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilBudget {
    pub chi_surface: i64,
    pub chi_generic_fibre: i64,
    pub chi_base: i64,
    /// Euler characteristics of the singular fibres that are not simple
    /// nodal curves.
    pub special_fibres: Vec<i64>,
}

/// Budget left for 1-nodal fibres once the listed special fibres are
/// accounted for:
/// `χ(S) - χ(F)χ(B) - Σ (χ(F_b) - χ(F))`.
///
/// Each remaining fibre with a single node contributes exactly +1 when the
/// generic fibre is elliptic, so for such pencils the value is the number
/// of irreducible 1-nodal members.
pub fn pencil_nodal_count(b: &PencilBudget) -> BigInt {
    let specials: BigInt = b
        .special_fibres
        .iter()
        .map(|&chi| big(chi) - big(b.chi_generic_fibre))
        .sum();
    big(b.chi_surface) - big(b.chi_generic_fibre) * big(b.chi_base) - specials
}

/// Removes a tangency component counted with multiplicity two:
/// `base - 2 * correction`.
pub fn polar_tangency_correction(base: &BigInt, correction: &BigInt) -> Result<BigInt> {
    let value = base - big(2) * correction;
    if value.is_negative() || correction.is_negative() {
        return Err(contract(format!(
            "tangency correction {correction} too large for base {base}"
        )));
    }
    Ok(value)
}
