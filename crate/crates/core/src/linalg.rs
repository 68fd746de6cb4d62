//! Small exact linear algebra: dense matrices over the active coefficient
//! ring and Gaussian elimination over F_2 and over the rationals.

use num_rational::Rational64;
use serde::ser::SerializeSeq;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::LocalRational;

/// Field scalar for the elimination routines.
pub trait FieldScalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
}

impl FieldScalar for bool {
    fn zero() -> Self {
        false
    }
    fn one() -> Self {
        true
    }
    fn is_zero(&self) -> bool {
        !*self
    }
    fn add(&self, other: &Self) -> Self {
        self ^ other
    }
    fn mul(&self, other: &Self) -> Self {
        *self && *other
    }
    fn neg(&self) -> Self {
        *self
    }
    fn inv(&self) -> Self {
        assert!(*self, "inverse of zero");
        true
    }
}

impl FieldScalar for Rational64 {
    fn zero() -> Self {
        Rational64::new(0, 1)
    }
    fn one() -> Self {
        Rational64::new(1, 1)
    }
    fn is_zero(&self) -> bool {
        *self.numer() == 0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        Rational64::new(*self.denom(), *self.numer())
    }
}

/// Rank of a dense row-major matrix, by in-place elimination.
pub fn rank<S: FieldScalar>(mut rows: Vec<Vec<S>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv();
        for r in 0..nrows {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].mul(&inv).neg();
                for c in col..ncols {
                    let delta = factor.mul(&rows[rank][c]);
                    rows[r][c] = rows[r][c].add(&delta);
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Solve B * C = E for C, where `basis` holds the columns of B and `targets`
/// the columns of E (all of length m).  Returns the coordinate columns of C,
/// or an error if the basis columns are dependent or a target lies outside
/// their span.
pub fn solve_in_basis<S: FieldScalar>(
    basis: &[Vec<S>],
    targets: &[Vec<S>],
) -> Result<Vec<Vec<S>>> {
    let r = basis.len();
    let m = basis.first().map_or(0, Vec::len);
    let t = targets.len();
    // augmented row-major matrix [B | E]
    let mut rows: Vec<Vec<S>> = (0..m)
        .map(|i| {
            basis
                .iter()
                .map(|col| col[i].clone())
                .chain(targets.iter().map(|col| col[i].clone()))
                .collect()
        })
        .collect();

    let mut pivot_rows = Vec::with_capacity(r);
    let mut next = 0;
    for col in 0..r {
        let Some(pivot) = (next..m).find(|&row| !rows[row][col].is_zero()) else {
            return Err(Error::DependentBasis(r));
        };
        rows.swap(next, pivot);
        let inv = rows[next][col].inv();
        for c in col..r + t {
            rows[next][c] = rows[next][c].mul(&inv);
        }
        for row in 0..m {
            if row != next && !rows[row][col].is_zero() {
                let factor = rows[row][col].clone().neg();
                for c in col..r + t {
                    let delta = factor.mul(&rows[next][c]);
                    rows[row][c] = rows[row][c].add(&delta);
                }
            }
        }
        pivot_rows.push(next);
        next += 1;
    }
    // rows below the pivots must have vanished on the target side
    for row in rows.iter().skip(r) {
        if row[r..].iter().any(|x| !x.is_zero()) {
            return Err(Error::DependentBasis(r));
        }
    }
    Ok((0..t)
        .map(|j| (0..r).map(|i| rows[i][r + j].clone()).collect())
        .collect())
}

/// A dense matrix over the active coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<LocalRational>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![LocalRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LocalRational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> LocalRational) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> LocalRational {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LocalRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(self.cols, other.rows));
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.set(i, j, out.get(i, j) + a * other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    /// Entry-wise reduction mod 2.
    pub fn reduce_mod2(&self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| {
                    if x.mod2() {
                        LocalRational::one()
                    } else {
                        LocalRational::zero()
                    }
                })
                .collect(),
        }
    }
}

impl Serialize for Mat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_over_f2() {
        let rows = vec![
            vec![true, false, true],
            vec![false, true, true],
            vec![true, true, false],
        ];
        assert_eq!(rank(rows), 2);
    }

    #[test]
    fn rank_over_q() {
        let q = |n: i64, d: i64| Rational64::new(n, d);
        let rows = vec![vec![q(1, 2), q(1, 3)], vec![q(3, 2), q(1, 1)]];
        assert_eq!(rank(rows), 1);
    }

    #[test]
    fn solve_simple_basis() {
        // basis {(1,1,0),(0,1,1)}, target (1,0,-1) = b1 - b2
        let q = |n: i64| Rational64::new(n, 1);
        let basis = vec![vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]];
        let target = vec![vec![q(1), q(0), q(-1)]];
        let coords = solve_in_basis(&basis, &target).unwrap();
        assert_eq!(coords, vec![vec![q(1), q(-1)]]);
    }

    #[test]
    fn solve_rejects_outside_span() {
        let q = |n: i64| Rational64::new(n, 1);
        let basis = vec![vec![q(1), q(0)]];
        let target = vec![vec![q(0), q(1)]];
        assert!(solve_in_basis(&basis, &target).is_err());
    }

    #[test]
    fn mat_identity_mul() {
        let m = Mat::from_fn(2, 2, |i, j| LocalRational::integer((i * 2 + j) as i64));
        assert_eq!(m.mul(&Mat::identity(2)).unwrap(), m);
    }
}
