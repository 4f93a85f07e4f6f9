use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{contract, Result};

/// A sparse polynomial with integer coefficients in named variables.
///
/// Terms are keyed by exponent vectors (one entry per variable); zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl SparsePoly {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        SparsePoly {
            vars: vars.iter().map(|v| v.as_ref().to_owned()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        let exps = vec![0; p.vars.len()];
        p.insert(exps, c.into());
        p
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::constant(vars, 1)
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> Result<Self> {
        let mut p = Self::zero(vars);
        let idx = p
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| contract(format!("unknown variable {name}")))?;
        let mut exps = vec![0; p.vars.len()];
        exps[idx] = 1;
        p.insert(exps, BigInt::one());
        Ok(p)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// exponent vectors are summed.
    pub fn from_terms<S, I, C>(vars: &[S], terms: I) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(vars);
        for (exps, c) in terms {
            if exps.len() != p.vars.len() {
                return Err(contract(format!(
                    "exponent vector of length {} for {} variables",
                    exps.len(),
                    p.vars.len()
                )));
            }
            p.insert(exps, c.into());
        }
        Ok(p)
    }

    fn insert(&mut self, exps: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_vars(&self, other: &SparsePoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(contract(format!(
                "mismatched variable lists {:?} and {:?}",
                self.vars, other.vars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.insert(k.clone(), v.clone());
        }
        Ok(out)
    }

    /// Product of two polynomials over the same variable list.
    pub fn mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_vars(other)?;
        let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(SparsePoly {
            vars: self.vars.clone(),
            terms: acc,
        })
    }

    /// Product keeping only the terms whose exponents are componentwise at
    /// most `bound`.
    pub fn mul_truncated(&self, other: &SparsePoly, bound: &[u32]) -> Result<SparsePoly> {
        self.check_vars(other)?;
        if bound.len() != self.vars.len() {
            return Err(contract("truncation bound has the wrong length"));
        }
        let fits = |e: &[u32]| e.iter().zip(bound).all(|(x, b)| x <= b);
        let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (ea, ca) in self.terms.iter().filter(|(e, _)| fits(e)) {
            for (eb, cb) in other.terms.iter().filter(|(e, _)| fits(e)) {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if fits(&e) {
                    *acc.entry(e).or_insert_with(BigInt::zero) += ca * cb;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(SparsePoly { vars: self.vars.clone(), terms: acc })
    }

    /// `self^e` truncated like [`SparsePoly::mul_truncated`].
    pub fn pow_truncated(&self, e: u32, bound: &[u32]) -> Result<SparsePoly> {
        (0..e).try_fold(SparsePoly::one(&self.vars), |acc, _| acc.mul_truncated(self, bound))
    }

    /// `self^e` by binary exponentiation; `p^0 = 1`.
    pub fn pow(&self, mut e: u32) -> SparsePoly {
        let mut result = SparsePoly::one(&self.vars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same variables");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same variables");
            }
        }
        result
    }

    /// Coefficient of the monomial with the given exponents (0 if absent).
    pub fn coefficient(&self, exps: &[u32]) -> Result<BigInt> {
        if exps.len() != self.vars.len() {
            return Err(contract(format!(
                "exponent vector of length {} for {} variables",
                exps.len(),
                self.vars.len()
            )));
        }
        Ok(self.terms.get(exps).cloned().unwrap_or_default())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exps, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = exps
                .iter()
                .zip(&self.vars)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{c}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly[{}]({})", self.vars.join(","), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const UV: [&str; 2] = ["u", "v"];

    fn lin(c0: i64, cu: i64, cv: i64) -> SparsePoly {
        SparsePoly::from_terms(&UV, [(vec![0, 0], c0), (vec![1, 0], cu), (vec![0, 1], cv)]).unwrap()
    }

    fn coeff(p: &SparsePoly, e: [u32; 2]) -> BigInt {
        p.coefficient(&e).unwrap()
    }

    #[test]
    fn binomial_square() {
        let p = lin(1, 0, 1);
        let sq = p.mul(&p).unwrap();
        let expect = SparsePoly::from_terms(&UV, [(vec![0, 0], 1), (vec![0, 1], 2), (vec![0, 2], 1)]).unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn multiplying_by_one_is_identity() {
        let p = lin(1, 4, 1);
        assert_eq!(p.mul(&SparsePoly::one(&UV)).unwrap(), p);
    }

    #[test]
    fn square_of_one_plus_2u_plus_v() {
        // (1+2u+v)^2 = 1 + 4u + 2v + 4u^2 + 4uv + v^2
        let p = lin(1, 2, 1);
        let sq = p.mul(&p).unwrap();
        let expect = SparsePoly::from_terms(
            &UV,
            [
                (vec![0, 0], 1),
                (vec![1, 0], 4),
                (vec![0, 1], 2),
                (vec![2, 0], 4),
                (vec![1, 1], 4),
                (vec![0, 2], 1),
            ],
        )
        .unwrap();
        assert_eq!(sq, expect);
        assert_eq!(coeff(&sq, [1, 1]), BigInt::from(4));
    }

    #[test]
    fn powers() {
        let p = lin(1, 0, 1);
        assert_eq!(p.pow(0), SparsePoly::one(&UV));
        let cube = p.pow(3);
        for (k, c) in [(0, 1), (1, 3), (2, 3), (3, 1)] {
            assert_eq!(coeff(&cube, [0, k]), BigInt::from(c));
        }
        assert_eq!(cube.num_terms(), 4);
    }

    #[test]
    fn fifth_power_coefficient_by_repeated_multiplication() {
        let p = lin(1, 2, 1);
        let mut acc = SparsePoly::one(&UV);
        for _ in 0..5 {
            acc = acc.mul(&p).unwrap();
        }
        assert_eq!(coeff(&acc, [3, 2]), BigInt::from(80));
        assert_eq!(p.pow(5), acc);
    }

    #[test]
    fn coefficient_lookup() {
        let sq = lin(1, 0, 1).pow(2);
        assert_eq!(coeff(&sq, [0, 1]), BigInt::from(2));
        assert_eq!(coeff(&sq, [3, 0]), BigInt::from(0));
        assert!(sq.coefficient(&[1]).is_err());
    }

    #[test]
    fn mismatched_variables_rejected() {
        let a = lin(1, 1, 1);
        let b = SparsePoly::one(&["x", "y"]);
        assert!(matches!(a.mul(&b), Err(crate::Error::Contract(_))));
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn cancellation_prunes_terms() {
        let a = lin(1, 1, 0);
        let b = lin(-1, 0, 0);
        let s = a.add(&b).unwrap();
        assert_eq!(s.num_terms(), 1);
        let z = lin(1, 1, 0).mul(&lin(1, -1, 0)).unwrap();
        // 1 - u^2
        assert_eq!(z.num_terms(), 2);
        assert_eq!(coeff(&z, [1, 0]), BigInt::from(0));
    }

    fn sparse() -> impl Strategy<Value = SparsePoly> {
        prop::collection::vec(((0u32..3, 0u32..3), -4i64..5), 0..5).prop_map(|ts| {
            SparsePoly::from_terms(&UV, ts.into_iter().map(|((a, b), c)| (vec![a, b], c))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn pow_matches_folded_mul(p in sparse(), e in 0u32..=6) {
            let folded = (0..e).fold(SparsePoly::one(&UV), |acc, _| acc.mul(&p).unwrap());
            prop_assert_eq!(p.pow(e), folded);
        }

        #[test]
        fn no_zero_coefficients_stored(a in sparse(), b in sparse()) {
            let prod = a.mul(&b).unwrap();
            prop_assert!(prod.terms().all(|(_, c)| !c.is_zero()));
            let sum = a.add(&b).unwrap();
            prop_assert!(sum.terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn truncation_keeps_low_terms(p in sparse(), e in 0u32..=4, bu in 0u32..5, bv in 0u32..5) {
            let full = p.pow(e);
            let cut = p.pow_truncated(e, &[bu, bv]).unwrap();
            for (exps, c) in full.terms() {
                if exps[0] <= bu && exps[1] <= bv {
                    prop_assert_eq!(cut.coefficient(exps).unwrap(), c.clone());
                }
            }
            prop_assert!(cut.terms().all(|(x, _)| x[0] <= bu && x[1] <= bv));
        }
    }
}
