//! Exact lattice-point counts of the dilates `t·P` and their interiors.
//!
//! The search runs over the free variables of the reduced system, in
//! ascending column order. Every pivot variable is an affine function
//! `(offset·t + Σ slope_j·f_j) / scale` of them. At each depth the range of
//! the next free variable is cut down to the values for which every pivot can
//! still land in `[lo, t]` given the box `[lo, t]` on the remaining free
//! variables (`lo` is 1 for interior counts, 0 otherwise). The last free
//! variable is not enumerated: integrality of the pivots depends only on its
//! residue modulo the lcm of the scales, so the leaves are counted per
//! residue class.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;

use crate::classes::{build_constraints, SquareClass};
use crate::error::{Error, Result};
use crate::param::{IntRow, Parametrization};

/// Default DFS node budget.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Nodes are charged to the shared budget in batches of this size.
const BUDGET_BATCH: u64 = 1 << 12;

/// One exact count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSample {
    pub class: SquareClass,
    pub t: u64,
    pub strict: bool,
    pub count: BigUint,
}

/// Lattice-point counter for one class, reusable across line sums.
#[derive(Debug, Clone)]
pub struct LatticeCounter {
    class: SquareClass,
    consistent: bool,
    rows: Vec<IntRow>,
    dim: usize,
    /// lcm of the pivot scales.
    modulus: i64,
    budget: u64,
}

impl LatticeCounter {
    pub fn new(class: &SquareClass) -> Result<Self> {
        let param = Parametrization::new(&build_constraints(class));
        let rows = param.integer_rows()?;
        let modulus = rows.iter().fold(1i64, |m, r| m.lcm(&r.scale));
        Ok(LatticeCounter {
            class: *class,
            consistent: param.consistent,
            dim: param.dimension(),
            rows,
            modulus,
            budget: DEFAULT_BUDGET,
        })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn class(&self) -> &SquareClass {
        &self.class
    }

    /// Number of integer arrays of the class with line sum `t` and entries
    /// `>= 0`, or `>= 1` when `strict`.
    pub fn count(&self, t: u64, strict: bool) -> Result<BigUint> {
        if !self.consistent {
            return Ok(BigUint::from(u8::from(t == 0 && !strict)));
        }
        let lo = i64::from(strict);
        let ti = i64::try_from(t).map_err(|_| Error::Overflow)?;
        if ti < lo {
            // interior count below the first dilate, or the empty box
            return Ok(BigUint::from(0u8));
        }
        let kernel = Kernel::new(self, ti, lo)?;
        kernel.run().map(BigUint::from)
    }

    pub fn sample(&self, t: u64, strict: bool) -> Result<CountSample> {
        Ok(CountSample {
            class: self.class,
            t,
            strict,
            count: self.count(t, strict)?,
        })
    }
}

/// Convenience wrapper: count with the default budget.
pub fn count(class: &SquareClass, t: u64, strict: bool) -> Result<BigUint> {
    LatticeCounter::new(class)?.count(t, strict)
}

/// Checks `strict_count(t) = count(t - n)`, valid because every line holds
/// exactly `n` cells.
pub fn shift_identity_check(counter: &LatticeCounter, t: u64) -> Result<bool> {
    let n = counter.class().n() as u64;
    if t < n {
        return Err(Error::InvalidClass(format!(
            "shift identity needs t >= n = {n}"
        )));
    }
    Ok(counter.count(t, true)? == counter.count(t - n, false)?)
}

struct Kernel<'a> {
    owner: &'a LatticeCounter,
    t: i64,
    lo: i64,
    /// Per pivot: offset·t.
    base: Vec<i64>,
    /// `rest_min[k][i]`: minimum of Σ_{j>k} slope_ij·f_j over the box.
    rest_min: Vec<Vec<i64>>,
    rest_max: Vec<Vec<i64>>,
    nodes: AtomicU64,
    exhausted: AtomicBool,
}

impl<'a> Kernel<'a> {
    fn new(owner: &'a LatticeCounter, t: i64, lo: i64) -> Result<Self> {
        let dim = owner.dim;
        // every intermediate value is bounded by scale·t + Σ|slope|·t
        let mut worst: i128 = 0;
        for r in &owner.rows {
            let mag: i128 = i128::from(r.offset).abs()
                + i128::from(r.scale)
                + r.slope.iter().map(|&s| i128::from(s).abs()).sum::<i128>();
            worst = worst.max(mag * i128::from(t.max(1)));
        }
        if worst > i128::from(i64::MAX / 4) {
            return Err(Error::Overflow);
        }
        let base = owner.rows.iter().map(|r| r.offset * t).collect();
        let mut rest_min = vec![vec![0i64; owner.rows.len()]; dim];
        let mut rest_max = vec![vec![0i64; owner.rows.len()]; dim];
        for k in (0..dim.saturating_sub(1)).rev() {
            for (i, r) in owner.rows.iter().enumerate() {
                let s = r.slope[k + 1];
                let (a, b) = (s * lo, s * t);
                rest_min[k][i] = rest_min[k + 1][i] + a.min(b);
                rest_max[k][i] = rest_max[k + 1][i] + a.max(b);
            }
        }
        Ok(Kernel {
            owner,
            t,
            lo,
            base,
            rest_min,
            rest_max,
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        })
    }

    fn run(&self) -> Result<u128> {
        let rows = &self.owner.rows;
        let total = if self.owner.dim == 0 {
            u128::from(
                rows.iter()
                    .zip(&self.base)
                    .all(|(r, &v)| self.pivot_ok(r, v)),
            )
        } else if self.owner.dim == 1 {
            let mut local = 0;
            self.leaf(&self.base, &mut local)
        } else {
            match self.range(0, &self.base) {
                None => 0,
                Some((a, b)) => (a..=b)
                    .into_par_iter()
                    .map(|f| {
                        let mut partial = self.base.clone();
                        self.assign(0, f, &mut partial);
                        let mut scratch = vec![vec![0i64; rows.len()]; self.owner.dim];
                        let mut local = 0u64;
                        let c = self.descend(1, &partial, &mut scratch, &mut local);
                        self.charge(local);
                        c
                    })
                    .sum(),
            }
        };
        if self.exhausted.load(Ordering::Relaxed) {
            return Err(Error::BudgetExceeded {
                class: self.owner.class.to_string(),
                t: self.t as u64,
                budget: self.owner.budget,
            });
        }
        Ok(total)
    }

    fn charge(&self, local: u64) {
        let used = self.nodes.fetch_add(local, Ordering::Relaxed) + local;
        if used > self.owner.budget {
            self.exhausted.store(true, Ordering::Relaxed);
        }
    }

    fn pivot_ok(&self, r: &IntRow, v: i64) -> bool {
        v >= r.scale * self.lo && v <= r.scale * self.t && v % r.scale == 0
    }

    fn assign(&self, k: usize, f: i64, partial: &mut [i64]) {
        for (p, r) in partial.iter_mut().zip(&self.owner.rows) {
            *p += r.slope[k] * f;
        }
    }

    /// Feasible values of free variable `k` given the partial sums of the
    /// variables before it.
    fn range(&self, k: usize, partial: &[i64]) -> Option<(i64, i64)> {
        let (mut a, mut b) = (self.lo, self.t);
        for (i, r) in self.owner.rows.iter().enumerate() {
            let c = r.slope[k];
            // need scale·lo <= partial + c·f + rest <= scale·t
            let need_lo = r.scale * self.lo - partial[i] - self.rest_max[k][i];
            let need_hi = r.scale * self.t - partial[i] - self.rest_min[k][i];
            match c.signum() {
                0 if need_lo > 0 || need_hi < 0 => return None,
                0 => {}
                1 => {
                    a = a.max(need_lo.div_ceil_signed(c));
                    b = b.min(Integer::div_floor(&need_hi, &c));
                }
                _ => {
                    a = a.max(need_hi.div_ceil_signed(c));
                    b = b.min(Integer::div_floor(&need_lo, &c));
                }
            }
            if a > b {
                return None;
            }
        }
        Some((a, b))
    }

    fn descend(
        &self,
        k: usize,
        partial: &[i64],
        scratch: &mut [Vec<i64>],
        local: &mut u64,
    ) -> u128 {
        if k + 1 == self.owner.dim {
            return self.leaf(partial, local);
        }
        if self.exhausted.load(Ordering::Relaxed) {
            return 0;
        }
        *local += 1;
        if *local >= BUDGET_BATCH {
            self.charge(std::mem::take(local));
        }
        let Some((a, b)) = self.range(k, partial) else {
            return 0;
        };
        let (here, below) = scratch.split_at_mut(1);
        let next = &mut here[0];
        let mut total = 0;
        for f in a..=b {
            next.copy_from_slice(partial);
            self.assign(k, f, next);
            total += self.descend(k + 1, next, below, local);
        }
        total
    }

    /// Counts values of the last free variable that make every pivot an
    /// integer in range.
    fn leaf(&self, partial: &[i64], local: &mut u64) -> u128 {
        *local += 1;
        let k = self.owner.dim - 1;
        let Some((a, b)) = self.range(k, partial) else {
            return 0;
        };
        let m = self.owner.modulus;
        if m == 1 {
            return (b - a + 1) as u128;
        }
        let rows = &self.owner.rows;
        let mut total = 0u128;
        for res in 0..m {
            let integral = rows
                .iter()
                .zip(partial)
                .all(|(r, &p)| (p + r.slope[k] * res).rem_euclid(r.scale) == 0);
            if integral {
                total += count_congruent(a, b, res, m);
            }
        }
        total
    }
}

/// Integers `f` in `[a, b]` with `f ≡ res (mod m)`.
fn count_congruent(a: i64, b: i64, res: i64, m: i64) -> u128 {
    let first = a + (res - a).rem_euclid(m);
    if first > b {
        0
    } else {
        ((b - first) / m + 1) as u128
    }
}

trait DivCeil {
    fn div_ceil_signed(self, d: i64) -> i64;
}

impl DivCeil for i64 {
    fn div_ceil_signed(self, d: i64) -> i64 {
        -Integer::div_floor(&(-self), &d)
    }
}
