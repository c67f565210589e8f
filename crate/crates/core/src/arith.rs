//! Exact rational scalars and dense rational matrices.
//!
//! Everything downstream (constraint ranks, vertex coordinates, interpolation
//! systems) runs on [`Rational`], which is always stored in lowest terms with a
//! positive denominator, so structural equality is value equality.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, canonically reduced after every operation.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integral [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a rational as `p/q`, or `p` when it is an integer.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of the reduced denominators; `1` for an empty list.
pub fn denominator_lcm<'a, I>(values: I) -> BigUint
where
    I: IntoIterator<Item = &'a Rational>,
{
    values.into_iter().fold(BigUint::one(), |acc, v| {
        let den = v.denom().magnitude();
        acc.lcm(den)
    })
}

/// Outcome of [`solve_affine`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineSolution {
    Unique(Vec<Rational>),
    Underdetermined,
    Inconsistent,
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(
                "rows of unequal length".to_string(),
            ));
        }
        let n_rows = rows.len();
        Ok(RationalMatrix {
            rows: n_rows,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        assert!(r < self.rows, "row {r} out of bounds");
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Appends `column` as a new rightmost column.
    pub fn augment(&self, column: &[Rational]) -> Result<Self> {
        if column.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "column of length {} against {} rows",
                column.len(),
                self.rows
            )));
        }
        let mut out = Self::zeros(self.rows, self.cols + 1);
        for (r, extra) in column.iter().enumerate() {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            out.set(r, self.cols, extra.clone());
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(fmt_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form and the pivot columns in increasing order.
///
/// Pivots are the first nonzero entry in column order; no numerical pivoting
/// is needed because arithmetic is exact.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..a.cols {
        if pivot_row == a.rows {
            break;
        }
        let Some(src) = (pivot_row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        a.swap_rows(pivot_row, src);
        let inv = a.get(pivot_row, col).recip();
        for c in col..a.cols {
            let v = a.get(pivot_row, c) * &inv;
            a.set(pivot_row, c, v);
        }
        for r in 0..a.rows {
            if r == pivot_row {
                continue;
            }
            let factor = a.get(r, col).clone();
            if factor.is_zero() {
                continue;
            }
            for c in col..a.cols {
                let p = a.get(pivot_row, c);
                if p.is_zero() {
                    continue;
                }
                let v = a.get(r, c) - &factor * p;
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    (a, pivots)
}

pub fn rank(m: &RationalMatrix) -> usize {
    rref(m).1.len()
}

/// Classifies `a·x = b` and returns the solution when it is unique.
pub fn solve_affine(a: &RationalMatrix, b: &[Rational]) -> Result<AffineSolution> {
    let aug = a.augment(b)?;
    let (reduced, pivots) = rref(&aug);
    if pivots.last() == Some(&a.cols()) {
        return Ok(AffineSolution::Inconsistent);
    }
    if pivots.len() < a.cols() {
        return Ok(AffineSolution::Underdetermined);
    }
    let x = (0..a.cols())
        .map(|i| reduced.get(i, a.cols()).clone())
        .collect();
    Ok(AffineSolution::Unique(x))
}

/// Basis of the right kernel `{x : m·x = 0}`, one vector per free column.
pub fn nullspace(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols()];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -reduced.get(row, f).clone();
            }
            v
        })
        .collect()
}

/// `true` when every entry is `>= 0`.
pub fn is_nonnegative(v: &[Rational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}
