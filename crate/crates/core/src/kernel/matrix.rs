use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{contract, Result};

/// A dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(contract("matrix dimensions must be positive"));
        }
        if entries.len() != rows * cols {
            return Err(contract(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RatMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(contract("ragged rows"));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rational::one();
        }
        RatMatrix { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Integer matrix obtained by scaling each row by the lcm of its
    /// denominators, together with the product of those scale factors.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let rows = (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                scale *= &l;
                row.iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect::<Vec<_>>()
            })
            .collect();
        (rows, scale)
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let (mut m, _) = self.integer_rows();
        bareiss(&mut m, self.cols).rank
    }

    /// Exact determinant of a square matrix.
    pub fn det(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(contract(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let (mut m, scale) = self.integer_rows();
        let out = bareiss(&mut m, n);
        if out.rank < n {
            return Ok(Rational::zero());
        }
        let mut d = m[n - 1][n - 1].clone();
        if out.negate {
            d = -d;
        }
        Rational::new(d, scale)
    }
}

struct Elimination {
    rank: usize,
    negate: bool,
}

/// In-place Bareiss elimination. Every intermediate entry is a minor of
/// the input, so the divisions are exact.
fn bareiss(m: &mut [Vec<BigInt>], cols: usize) -> Elimination {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut negate = false;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            negate = !negate;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &m[i][j] * &m[r][c] - &m[i][c] * &m[r][j];
                debug_assert!((&v % &prev).is_zero());
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    Elimination { rank: r, negate }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    /// Cofactor expansion, used as an independent oracle.
    fn det_cofactor(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = Rational::zero();
        for c in 0..n {
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][c] * &det_cofactor(&minor);
            acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn identity_determinant() {
        assert_eq!(RatMatrix::identity(4).det().unwrap(), Rational::one());
        assert_eq!(RatMatrix::identity(4).rank(), 4);
    }

    #[test]
    fn dependent_rows_give_zero_determinant() {
        let m = RatMatrix::from_i64_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 1, 0]]).unwrap();
        assert_eq!(m.det().unwrap(), Rational::zero());
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn equal_rows_drop_rank() {
        let m = RatMatrix::from_i64_rows(&[&[1, 2, 3, 4], &[5, 6, 7, 8], &[1, 2, 3, 4]]).unwrap();
        assert!(m.rank() <= 2);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn non_square_determinant_rejected() {
        let m = RatMatrix::from_i64_rows(&[&[1, 2, 3]]).unwrap();
        assert!(matches!(m.det(), Err(crate::Error::Contract(_))));
    }

    #[test]
    fn rational_entries_and_swaps() {
        let m = RatMatrix::from_rows(&[
            vec![q(0, 1), q(1, 2), q(2, 1)],
            vec![q(3, 4), q(0, 1), q(-1, 3)],
            vec![q(1, 1), q(1, 5), q(0, 1)],
        ])
        .unwrap();
        let rows: Vec<Vec<Rational>> = (0..3).map(|r| m.row(r).to_vec()).collect();
        assert_eq!(m.det().unwrap(), det_cofactor(&rows));
        assert!(!m.det().unwrap().is_zero());
    }

    #[test]
    fn rank_skips_empty_columns() {
        let m = RatMatrix::from_i64_rows(&[&[0, 1, 2], &[0, 2, 4], &[0, 0, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    fn entry() -> impl Strategy<Value = Rational> {
        (-6i64..7, 1i64..5).prop_map(|(n, d)| q(n, d))
    }

    fn square(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
        prop::collection::vec(prop::collection::vec(entry(), n), n)
    }

    proptest! {
        #[test]
        fn det_matches_cofactor_oracle(rows in square(4)) {
            let m = RatMatrix::from_rows(&rows).unwrap();
            prop_assert_eq!(m.det().unwrap(), det_cofactor(&rows));
        }

        #[test]
        fn rank_invariant_under_row_permutation_and_scaling(
            rows in prop::collection::vec(prop::collection::vec(entry(), 4), 3),
            perm_seed in 0usize..6,
            scales in prop::collection::vec((1i64..9, 1i64..9, prop::bool::ANY), 3),
        ) {
            let m = RatMatrix::from_rows(&rows).unwrap();
            let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            let p = perms[perm_seed];
            let moved: Vec<Vec<Rational>> = (0..3)
                .map(|i| {
                    let (n, d, neg) = scales[i];
                    let s = q(if neg { -n } else { n }, d);
                    rows[p[i]].iter().map(|x| x * &s).collect()
                })
                .collect();
            prop_assert_eq!(RatMatrix::from_rows(&moved).unwrap().rank(), m.rank());
        }

        #[test]
        fn proportional_rows_vanish(rows in square(4), num in 1i64..7, den in 1i64..7) {
            let mut rows = rows;
            let s = q(num, den);
            rows[3] = rows[1].iter().map(|x| x * &s).collect();
            prop_assert!(RatMatrix::from_rows(&rows).unwrap().det().unwrap().is_zero());
        }
    }
}
