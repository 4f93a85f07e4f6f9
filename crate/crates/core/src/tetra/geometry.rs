//! Homogeneous points and planes of P^3 over the rationals.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{contract, Result};
use crate::kernel::{RatMatrix, Rational};

fn normalize(mut v: [Rational; 4]) -> Option<[Rational; 4]> {
    let lead = v.iter().find(|x| !x.is_zero())?.clone();
    if !lead.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &lead;
        }
    }
    Some(v)
}

fn to_strings(v: &[Rational; 4]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// A point of P^3, scaled so that its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: [Rational; 4],
}

impl ProjPoint {
    pub fn new(coords: [Rational; 4]) -> Result<Self> {
        normalize(coords)
            .map(|coords| ProjPoint { coords })
            .ok_or_else(|| contract("projective point with all coordinates zero"))
    }

    pub fn from_i64(c: [i64; 4]) -> Result<Self> {
        Self::new(c.map(Rational::from))
    }

    /// The `i`-th coordinate point.
    pub fn coordinate(i: usize) -> Self {
        let mut c = [0i64; 4];
        c[i] = 1;
        Self::from_i64(c).expect("nonzero")
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.coords
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", to_strings(&self.coords).join(":"))
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        to_strings(&self.coords).serialize(s)
    }
}

/// A plane `a0 x0 + a1 x1 + a2 x2 + a3 x3 = 0`, normalized like
/// [`ProjPoint`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPlane {
    coeffs: [Rational; 4],
}

impl ProjPlane {
    pub fn new(coeffs: [Rational; 4]) -> Result<Self> {
        normalize(coeffs)
            .map(|coeffs| ProjPlane { coeffs })
            .ok_or_else(|| contract("plane with all coefficients zero"))
    }

    /// The coordinate plane `x_i = 0`.
    pub fn coordinate(i: usize) -> Self {
        let mut c = [0i64; 4].map(Rational::from);
        c[i] = Rational::one();
        ProjPlane::new(c).expect("nonzero")
    }

    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.coeffs
    }

    pub fn eval(&self, p: &ProjPoint) -> Rational {
        self.coeffs
            .iter()
            .zip(p.coords())
            .fold(Rational::zero(), |acc, (a, x)| &acc + &(a * x))
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.eval(p).is_zero()
    }

    /// The plane spanned by three points, or `None` when they are collinear.
    ///
    /// The coefficients are the signed 3x3 minors of the 3x4 coordinate
    /// matrix.
    pub fn through(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> Option<ProjPlane> {
        let rows = [p.coords(), q.coords(), r.coords()];
        let coeffs: [Rational; 4] = std::array::from_fn(|skip| {
            let minor: Vec<Rational> = rows
                .iter()
                .flat_map(|row| row.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, x)| x.clone()))
                .collect();
            let d = RatMatrix::new(3, 3, minor).expect("3x3").det().expect("square");
            if skip % 2 == 0 {
                d
            } else {
                -d
            }
        });
        ProjPlane::new(coeffs).ok()
    }

    /// Number of vanishing coefficients; 3 exactly for coordinate planes.
    pub fn zero_coefficients(&self) -> usize {
        self.coeffs.iter().filter(|c| c.is_zero()).count()
    }
}

impl fmt::Debug for ProjPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", to_strings(&self.coeffs).join(":"))
    }
}

impl Serialize for ProjPlane {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        to_strings(&self.coeffs).serialize(s)
    }
}

fn matrix(points: &[&ProjPoint]) -> RatMatrix {
    let entries: Vec<Rational> = points.iter().flat_map(|p| p.coords().iter().cloned()).collect();
    RatMatrix::new(points.len(), 4, entries).expect("rows of length 4")
}

/// Exact rank of the span of the given points (as vectors in Q^4).
pub fn span_rank(points: &[&ProjPoint]) -> usize {
    matrix(points).rank()
}

pub fn collinear(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> bool {
    span_rank(&[p, q, r]) < 3
}

pub fn coplanar(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, d: &ProjPoint) -> bool {
    matrix(&[a, b, c, d]).det().expect("square").is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: [i64; 4]) -> ProjPoint {
        ProjPoint::from_i64(c).unwrap()
    }

    #[test]
    fn normalization_is_canonical() {
        assert_eq!(pt([0, 2, 4, -6]), pt([0, -1, -2, 3]));
        assert_eq!(pt([0, 2, 4, -6]).coords()[1], Rational::one());
        assert!(ProjPoint::from_i64([0, 0, 0, 0]).is_err());
    }

    #[test]
    fn plane_through_coordinate_points() {
        let face = ProjPlane::through(&pt([0, 1, 0, 0]), &pt([0, 0, 1, 0]), &pt([0, 0, 0, 1])).unwrap();
        assert_eq!(face, ProjPlane::coordinate(0));
        assert_eq!(face.zero_coefficients(), 3);
    }

    #[test]
    fn plane_contains_its_defining_points() {
        let (p, q, r) = (pt([1, 2, 3, 4]), pt([0, 1, -1, 5]), pt([2, 0, 7, 1]));
        let h = ProjPlane::through(&p, &q, &r).unwrap();
        assert!(h.contains(&p) && h.contains(&q) && h.contains(&r));
        assert!(!h.contains(&pt([1, 0, 0, 0])) || h.coeffs()[0].is_zero());
    }

    #[test]
    fn collinear_points_span_no_plane() {
        let (p, q) = (pt([1, 0, 0, 0]), pt([0, 1, 0, 0]));
        let r = pt([1, 1, 0, 0]);
        assert!(collinear(&p, &q, &r));
        assert!(ProjPlane::through(&p, &q, &r).is_none());
        let s = pt([0, 0, 1, 0]);
        assert!(coplanar(&p, &q, &r, &s));
        assert!(!coplanar(&p, &q, &s, &pt([0, 0, 0, 1])));
    }
}
