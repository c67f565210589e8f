//! Vertices of `P = {x >= 0, A·x = 1}`.
//!
//! A vertex is a basic feasible solution: a point of the affine hull at which
//! `dim` linearly independent nonnegativity constraints are tight. We search
//! the tight sets in free-variable coordinates, where every constraint
//! `x_k >= 0` is an affine inequality in `dim` unknowns. Subsets are grown in
//! increasing index order and a branch is dropped as soon as the chosen
//! constraints become linearly dependent. All elimination is fraction-free
//! over `i128`; overflow is reported, never wrapped.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{denominator_lcm, Rational};
use crate::classes::{ConstraintSystem, SquareClass};
use crate::error::{Error, Result};
use crate::param::{normalize, IntRow, Parametrization};

/// Deduplicated vertices in sorted order, plus the lcm of their denominators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    pub class: SquareClass,
    pub vertices: Vec<Vec<Rational>>,
    pub period_bound: BigUint,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `{class, n, d, vertices: [[[num, den], ...], ...], period_bound}` with
    /// every integer written as a decimal string.
    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .map(|v| Value::Array(v.iter().map(rational_json).collect()))
            .collect();
        json!({
            "class": self.class.kind().name(),
            "n": self.class.n(),
            "d": self.class.d(),
            "vertices": vertices,
            "period_bound": self.period_bound.to_string(),
        })
    }

    /// Centroid of the vertex set.
    pub fn centroid(&self) -> Vec<Rational> {
        let count = Rational::from_integer(BigInt::from(self.vertices.len()));
        let dim = self.vertices.first().map_or(0, Vec::len);
        (0..dim)
            .map(|k| {
                self.vertices
                    .iter()
                    .fold(Rational::zero(), |acc, v| acc + &v[k])
                    / &count
            })
            .collect()
    }
}

pub(crate) fn rational_json(r: &Rational) -> Value {
    json!([r.numer().to_string(), r.denom().to_string()])
}

/// Vertex enumeration settings.
#[derive(Debug, Clone, Copy, Default)]
pub struct VertexOptions {
    /// Admit orders `n >= 5` and systems with more than 27 variables.
    pub allow_large: bool,
}

/// Whether enumeration of `class` needs [`VertexOptions::allow_large`].
pub fn is_large(class: &SquareClass) -> bool {
    class.n() >= 5 || class.num_vars() > 27
}

/// `true` iff `A·x = 1` and `x >= 0` (`x > 0` when `strict`).
pub fn contains_point(cs: &ConstraintSystem, x: &[Rational], strict: bool) -> Result<bool> {
    let lhs = cs.matrix.mul_vec(x)?;
    let on_hull = lhs.iter().all(One::is_one);
    let signs_ok = if strict {
        x.iter().all(Signed::is_positive)
    } else {
        x.iter().all(|v| !v.is_negative())
    };
    Ok(on_hull && signs_ok)
}

/// All vertices of the class polytope.
pub fn enumerate_vertices(cs: &ConstraintSystem, opts: VertexOptions) -> Result<VertexSet> {
    if is_large(&cs.class) && !opts.allow_large {
        return Err(Error::LargeInstance(cs.class.to_string()));
    }
    let param = Parametrization::new(cs);
    if !param.consistent {
        return Err(Error::InfeasiblePolytope(cs.class.to_string()));
    }
    let ineqs: Vec<IntRow> = (0..param.num_vars())
        .map(|k| IntRow::from_affine(&param.offset[k], &param.slope[k]))
        .collect::<Result<_>>()?;
    let dim = param.dimension();
    let search = Search { ineqs: &ineqs, dim };

    let found: BTreeSet<Vec<Rational>> = if dim == 0 {
        let mut set = BTreeSet::new();
        if let Some(v) = search.vertex_at(&[])? {
            set.insert(v);
        }
        set
    } else {
        let last_first = ineqs.len().saturating_sub(dim);
        (0..=last_first)
            .into_par_iter()
            .map(|first| {
                let mut local = BTreeSet::new();
                if let Some(basis) = Basis::default().with(&ineqs[first], dim)? {
                    search.descend(first + 1, &basis, &mut local)?;
                }
                Ok::<_, Error>(local)
            })
            .try_reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                Ok(a)
            })?
    };

    if found.is_empty() {
        return Err(Error::InfeasiblePolytope(cs.class.to_string()));
    }
    let vertices: Vec<Vec<Rational>> = found.into_iter().collect();
    let period_bound = denominator_lcm(vertices.iter().flatten());
    Ok(VertexSet {
        class: cs.class,
        vertices,
        period_bound,
    })
}

struct Search<'a> {
    ineqs: &'a [IntRow],
    dim: usize,
}

impl Search<'_> {
    fn descend(&self, next: usize, basis: &Basis, out: &mut BTreeSet<Vec<Rational>>) -> Result<()> {
        if basis.rows.len() == self.dim {
            if let Some(v) = self.vertex_at(&basis.solution())? {
                out.insert(v);
            }
            return Ok(());
        }
        let needed = self.dim - basis.rows.len();
        for k in next..=self.ineqs.len() - needed {
            if let Some(b) = basis.with(&self.ineqs[k], self.dim)? {
                self.descend(k + 1, &b, out)?;
            }
        }
        Ok(())
    }

    /// The point with free coordinates `f_j = num_j / den` (as returned by
    /// [`Basis::solution`]), if it is feasible.
    fn vertex_at(&self, solution: &[(i128, i128)]) -> Result<Option<Vec<Rational>>> {
        let common = solution.iter().fold(1i128, |l, &(_, den)| l.lcm(&den));
        let scaled: Vec<i128> = solution
            .iter()
            .map(|&(num, den)| num.checked_mul(common / den).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        let mut values = Vec::with_capacity(self.ineqs.len());
        for row in self.ineqs {
            // row.scale · x_k · common
            let mut acc = i128::from(row.offset)
                .checked_mul(common)
                .ok_or(Error::Overflow)?;
            for (&s, &f) in row.slope.iter().zip(&scaled) {
                if s != 0 {
                    acc = i128::from(s)
                        .checked_mul(f)
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(Error::Overflow)?;
                }
            }
            if acc < 0 {
                return Ok(None);
            }
            let den = i128::from(row.scale)
                .checked_mul(common)
                .ok_or(Error::Overflow)?;
            values.push(Rational::new(BigInt::from(acc), BigInt::from(den)));
        }
        Ok(Some(values))
    }
}

/// Tight constraints chosen so far, kept in reduced echelon form over the
/// integers. Each row is `[c_0, ..., c_{dim-1}, rhs]` meaning `c·f = rhs`.
#[derive(Debug, Clone, Default)]
struct Basis {
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

fn combine(a: &[i128], ca: i128, b: &[i128], cb: i128) -> Result<Vec<i128>> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            x.checked_mul(ca)
                .zip(y.checked_mul(cb))
                .and_then(|(p, q)| p.checked_sub(q))
                .ok_or(Error::Overflow)
        })
        .collect()
}

impl Basis {
    /// Adds `x_k = 0`, or returns `None` if it is dependent on the basis.
    fn with(&self, ineq: &IntRow, dim: usize) -> Result<Option<Basis>> {
        // x_k = 0  <=>  Σ slope_j f_j = -offset
        let mut row: Vec<i128> = ineq.slope.iter().map(|&s| i128::from(s)).collect();
        row.push(-i128::from(ineq.offset));
        for (existing, &pc) in self.rows.iter().zip(&self.pivots) {
            if row[pc] != 0 {
                row = combine(&row, existing[pc], existing, row[pc])?;
                normalize(&mut row);
            }
        }
        let Some(pc) = row[..dim].iter().position(|&c| c != 0) else {
            return Ok(None);
        };
        let mut rows = Vec::with_capacity(self.rows.len() + 1);
        for existing in &self.rows {
            if existing[pc] != 0 {
                let mut e = combine(existing, row[pc], &row, existing[pc])?;
                normalize(&mut e);
                rows.push(e);
            } else {
                rows.push(existing.clone());
            }
        }
        rows.push(row);
        let mut pivots = self.pivots.clone();
        pivots.push(pc);
        Ok(Some(Basis { rows, pivots }))
    }

    /// Free-variable values as `(num, den)` with `den > 0`, indexed by column.
    fn solution(&self) -> Vec<(i128, i128)> {
        let dim = self.rows.len();
        let mut out = vec![(0, 1); dim];
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let (mut num, mut den) = (row[dim], row[pc]);
            if den < 0 {
                num = -num;
                den = -den;
            }
            let g = num.gcd(&den);
            out[pc] = (num / g, den / g);
        }
        out
    }
}
