//! Free-variable parametrization of `{x : A·x = t·1}`.
//!
//! After reducing `[A | 1]`, each pivot variable is an affine function of the
//! free (non-pivot) variables and of `t`. Vertex enumeration and lattice
//! counting both work in these coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{denominator_lcm, rref, Rational};
use crate::classes::ConstraintSystem;
use crate::error::{Error, Result};

/// `x_k = offset_k·t + Σ_j slope_kj·f_j` for every variable `k`.
#[derive(Debug, Clone)]
pub struct Parametrization {
    pub pivots: Vec<usize>,
    /// Free columns in ascending order; `f_j` is the variable `free[j]`.
    pub free: Vec<usize>,
    pub offset: Vec<Rational>,
    pub slope: Vec<Vec<Rational>>,
    /// `false` when the system only admits `t = 0`.
    pub consistent: bool,
}

impl Parametrization {
    pub fn new(cs: &ConstraintSystem) -> Self {
        let vars = cs.num_vars();
        let ones = vec![Rational::one(); cs.matrix.rows()];
        let aug = cs.matrix.augment(&ones).expect("one rhs entry per row");
        let (reduced, mut pivots) = rref(&aug);
        let consistent = pivots.last() != Some(&vars);
        if !consistent {
            pivots.pop();
        }
        let free: Vec<usize> = (0..vars).filter(|c| !pivots.contains(c)).collect();
        let mut offset = vec![Rational::zero(); vars];
        let mut slope = vec![vec![Rational::zero(); free.len()]; vars];
        for (j, &f) in free.iter().enumerate() {
            slope[f][j] = Rational::one();
        }
        for (row, &p) in pivots.iter().enumerate() {
            offset[p] = reduced.get(row, vars).clone();
            for (j, &f) in free.iter().enumerate() {
                slope[p][j] = -reduced.get(row, f).clone();
            }
        }
        Parametrization {
            pivots,
            free,
            offset,
            slope,
            consistent,
        }
    }

    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    pub fn num_vars(&self) -> usize {
        self.offset.len()
    }

    /// Point of the dilate `t·P` for free-variable values `f`.
    pub fn point(&self, t: &Rational, f: &[Rational]) -> Vec<Rational> {
        (0..self.num_vars())
            .map(|k| {
                self.slope[k]
                    .iter()
                    .zip(f)
                    .filter(|(s, _)| !s.is_zero())
                    .fold(&self.offset[k] * t, |acc, (s, v)| acc + s * v)
            })
            .collect()
    }

    /// Integer-scaled form of the pivot rows.
    pub fn integer_rows(&self) -> Result<Vec<IntRow>> {
        self.pivots
            .iter()
            .map(|&p| IntRow::from_affine(&self.offset[p], &self.slope[p]))
            .collect()
    }
}

/// `scale·x = offset·t + Σ_j slope_j·f_j` with integer coefficients and
/// `scale >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntRow {
    pub scale: i64,
    pub offset: i64,
    pub slope: Vec<i64>,
}

impl IntRow {
    pub(crate) fn from_affine(offset: &Rational, slope: &[Rational]) -> Result<Self> {
        let lcm = denominator_lcm(std::iter::once(offset).chain(slope));
        let scale = BigInt::from(lcm);
        let to_i64 = |r: &Rational| -> Result<i64> {
            let v = r * Rational::from_integer(scale.clone());
            debug_assert!(v.is_integer());
            v.to_integer().to_i64().ok_or(Error::Overflow)
        };
        Ok(IntRow {
            scale: scale.to_i64().ok_or(Error::Overflow)?,
            offset: to_i64(offset)?,
            slope: slope.iter().map(to_i64).collect::<Result<_>>()?,
        })
    }
}

/// `gcd`-normalized copy of an integer vector with a positive leading entry.
pub(crate) fn normalize(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
    if let Some(first) = v.iter().find(|x| **x != 0) {
        if first.is_negative() {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}
