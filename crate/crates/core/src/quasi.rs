//! Quasi-polynomials: reconstruction from exact counts, evaluation,
//! reciprocity checks and rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::arith::{fmt_rational, solve_affine, AffineSolution, Rational, RationalMatrix};
use crate::cache::Sampler;
use crate::classes::{class_profile, SquareClass};
use crate::count::CountSample;
use crate::error::{Error, Result};
use crate::geometry::rational_json;

/// Samples beyond `degree + 1` required per residue class, used only to
/// validate the interpolant.
pub const VALIDATION_SAMPLES: usize = 2;

/// `Q(t) = c_d(t)·t^d + ... + c_0(t)` with coefficients periodic in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    degree: usize,
    /// `coeffs[r][k]` is the coefficient of `t^k` when `t ≡ r (mod period)`.
    coeffs: Vec<Vec<Rational>>,
}

impl QuasiPolynomial {
    /// Builds from per-residue coefficient vectors (ascending powers, all of
    /// length `degree + 1`).
    pub fn new(coeffs: Vec<Vec<Rational>>) -> Result<Self> {
        let degree = coeffs
            .first()
            .map(|c| c.len().saturating_sub(1))
            .ok_or_else(|| Error::DimensionMismatch("quasi-polynomial needs a residue".into()))?;
        if coeffs.iter().any(|c| c.len() != degree + 1) {
            return Err(Error::DimensionMismatch(
                "ragged coefficient vectors".into(),
            ));
        }
        Ok(QuasiPolynomial { degree, coeffs })
    }

    /// An honest polynomial.
    pub fn polynomial(coeffs: Vec<Rational>) -> Self {
        Self::new(vec![coeffs]).expect("one residue")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn period(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self, residue: usize) -> &[Rational] {
        &self.coeffs[residue]
    }

    /// Value at any integer, by Horner's scheme on the residue of `t`.
    pub fn evaluate(&self, t: i64) -> Rational {
        let r = t.rem_euclid(self.period() as i64) as usize;
        horner(&self.coeffs[r], &Rational::from_integer(BigInt::from(t)))
    }

    /// Residues on which the function is identically zero.
    pub fn zero_residues(&self) -> Vec<usize> {
        (0..self.period())
            .filter(|&r| self.coeffs[r].iter().all(Zero::is_zero))
            .collect()
    }

    /// `true` if the top coefficient is positive on every residue that is
    /// not identically zero.
    pub fn leading_coefficients_positive(&self) -> bool {
        self.coeffs
            .iter()
            .filter(|c| c.iter().any(|v| !v.is_zero()))
            .all(|c| c[self.degree].is_positive())
    }

    /// Reduces to the smallest period `q | period` whose residues give the
    /// same coefficient vectors.
    pub fn minimize_period(self) -> Self {
        let p = self.period();
        let q = (1..=p)
            .filter(|q| p.is_multiple_of(*q))
            .find(|&q| (0..p).all(|r| self.coeffs[r] == self.coeffs[r % q]))
            .unwrap_or(p);
        QuasiPolynomial {
            degree: self.degree,
            coeffs: self.coeffs.into_iter().take(q).collect(),
        }
    }

    pub fn to_json(&self, class: &SquareClass) -> Value {
        let residues: Vec<Value> = self
            .coeffs
            .iter()
            .enumerate()
            .map(
                |(r, c)| json!({"r": r, "coeffs": c.iter().map(rational_json).collect::<Vec<_>>()}),
            )
            .collect();
        json!({
            "class": class.kind().name(),
            "n": class.n(),
            "d": class.d(),
            "degree": self.degree,
            "period": self.period(),
            "residues": residues,
        })
    }

    /// `residue,power,coefficient` rows, coefficients as `p/q`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("residue,power,coefficient\n");
        for (r, c) in self.coeffs.iter().enumerate() {
            for (k, v) in c.iter().enumerate() {
                let _ = writeln!(out, "{r},{k},{}", fmt_rational(v));
            }
        }
        out
    }

    /// Case expression such as `(2/3)t + 1 if 3|t; 0 otherwise`.
    pub fn to_human(&self) -> String {
        let p = self.period();
        if p == 1 {
            return render_polynomial(&self.coeffs[0]);
        }
        let zeros = self.zero_residues();
        let nonzero: Vec<usize> = (0..p).filter(|r| !zeros.contains(r)).collect();
        let mut cases = Vec::new();
        if zeros.len() >= 2 && nonzero == [0] {
            cases.push(format!("{} if {p}|t", render_polynomial(&self.coeffs[0])));
        } else {
            for &r in &nonzero {
                cases.push(format!(
                    "{} if t ≡ {r} (mod {p})",
                    render_polynomial(&self.coeffs[r])
                ));
            }
        }
        match zeros.as_slice() {
            [] => {}
            [r] => cases.push(format!("0 if t ≡ {r} (mod {p})")),
            _ => cases.push("0 otherwise".to_string()),
        }
        cases.join("; ")
    }
}

fn horner(coeffs: &[Rational], t: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * t + c)
}

/// Renders ascending coefficients in descending powers of `t`.
pub fn render_polynomial(coeffs: &[Rational]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let magnitude = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let power = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        if k == 0 {
            out.push_str(&fmt_rational(&magnitude));
        } else if magnitude.is_one() {
            out.push_str(&power);
        } else if magnitude.is_integer() {
            let _ = write!(out, "{}{power}", magnitude.numer());
        } else {
            let _ = write!(out, "({}){power}", fmt_rational(&magnitude));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `t = r, r + p, r + 2p, ...`: enough line sums to fit and validate a
/// quasi-polynomial of the given degree and period bound, in increasing order.
pub fn sample_plan(period_bound: u64, degree: usize) -> Vec<u64> {
    let per_residue = (degree + 1 + VALIDATION_SAMPLES) as u64;
    (0..period_bound * per_residue).collect()
}

/// Fits one polynomial of the class's expected degree per residue modulo
/// `period_bound`, checks it on the remaining samples, then shrinks the
/// period.
pub fn interpolate(
    class: &SquareClass,
    samples: &[CountSample],
    period_bound: u64,
) -> Result<QuasiPolynomial> {
    let degree = class_profile(class).expected_degree;
    let p = usize::try_from(period_bound)
        .ok()
        .filter(|&p| p >= 1)
        .ok_or_else(|| {
            Error::InsufficientSamples(format!("invalid period bound {period_bound}"))
        })?;
    let mut by_residue: Vec<BTreeMap<u64, Rational>> = vec![BTreeMap::new(); p];
    for s in samples.iter().filter(|s| s.class == *class && !s.strict) {
        let value = Rational::from_integer(BigInt::from(s.count.clone()));
        by_residue[(s.t % period_bound) as usize].insert(s.t, value);
    }

    let mut coeffs = Vec::with_capacity(p);
    for (r, points) in by_residue.iter().enumerate() {
        if points.len() < degree + 1 + VALIDATION_SAMPLES {
            return Err(Error::InsufficientSamples(format!(
                "{class}: residue {r} mod {p} has {} samples, need {}",
                points.len(),
                degree + 1 + VALIDATION_SAMPLES
            )));
        }
        let (fit, check): (Vec<_>, Vec<_>) =
            points.iter().enumerate().partition(|(i, _)| *i <= degree);
        let c = fit_polynomial(fit.iter().map(|(_, p)| *p), degree)?;
        for (_, (&t, value)) in check {
            let predicted = horner(&c, &Rational::from_integer(BigInt::from(t)));
            if &predicted != value {
                return Err(Error::ValidationMismatch {
                    class: class.to_string(),
                    t,
                    predicted: fmt_rational(&predicted),
                    counted: fmt_rational(value),
                });
            }
        }
        coeffs.push(c);
    }
    let q = QuasiPolynomial::new(coeffs)?.minimize_period();
    if q.coeffs.iter().all(|c| c[degree].is_zero()) {
        return Err(Error::DegreeMismatch {
            class: class.to_string(),
            computed: degree.saturating_sub(1),
            expected: degree,
        });
    }
    Ok(q)
}

fn fit_polynomial<'a, I>(points: I, degree: usize) -> Result<Vec<Rational>>
where
    I: Iterator<Item = (&'a u64, &'a Rational)>,
{
    let (rows, rhs): (Vec<Vec<Rational>>, Vec<Rational>) = points
        .map(|(&t, v)| {
            let t = Rational::from_integer(BigInt::from(t));
            let mut row = Vec::with_capacity(degree + 1);
            let mut power = Rational::one();
            for _ in 0..=degree {
                row.push(power.clone());
                power *= &t;
            }
            (row, v.clone())
        })
        .unzip();
    match solve_affine(&RationalMatrix::from_rows(rows)?, &rhs)? {
        AffineSolution::Unique(c) => Ok(c),
        _ => Err(Error::InsufficientSamples(
            "interpolation nodes are not distinct".into(),
        )),
    }
}

/// Result of [`verify_reciprocity`]; each entry is `(argument, holds)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReciprocityReport {
    pub class: SquareClass,
    pub sign: i8,
    /// `Q(-n-t) = sign·Q(t)` for `t = 0..=t_max`.
    pub symmetry: Vec<(u64, bool)>,
    /// `Q(-k) = 0` for `k = 1..n-1`.
    pub zero_checks: Vec<(i64, bool)>,
    /// `Q(-t) = (-1)^degree · interior_count(t)`.
    pub interior_checks: Vec<(u64, bool)>,
    pub pass: bool,
}

impl ReciprocityReport {
    pub fn symmetry_pass(&self) -> bool {
        self.symmetry.iter().all(|c| c.1)
    }

    pub fn zeros_pass(&self) -> bool {
        self.zero_checks.iter().all(|c| c.1)
    }

    pub fn interior_pass(&self) -> bool {
        self.interior_checks.iter().all(|c| c.1)
    }
}

/// Checks the reciprocity identities of `q` exactly. Interior counts for
/// `t = 1..=interior_max` come from `sampler`.
pub fn verify_reciprocity(
    q: &QuasiPolynomial,
    class: &SquareClass,
    t_max: u64,
    interior_max: u64,
    sampler: &Sampler,
) -> Result<ReciprocityReport> {
    let profile = class_profile(class);
    let n = class.n() as i64;
    let sign = Rational::from_integer(BigInt::from(profile.reciprocity_sign));
    let symmetry = (0..=t_max)
        .map(|t| {
            let t_i = t as i64;
            (t, q.evaluate(-n - t_i) == &sign * q.evaluate(t_i))
        })
        .collect();
    let zero_checks = profile
        .forced_zeros
        .iter()
        .map(|&z| (z, q.evaluate(z).is_zero()))
        .collect();
    let em_sign = if q.degree().is_multiple_of(2) { 1 } else { -1 };
    let interior_checks = (1..=interior_max)
        .map(|t| {
            let strict = Rational::from_integer(BigInt::from(sampler.count(class, t, true)?));
            let rhs = strict * Rational::from_integer(BigInt::from(em_sign));
            Ok((t, q.evaluate(-(t as i64)) == rhs))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = ReciprocityReport {
        class: *class,
        sign: profile.reciprocity_sign,
        symmetry,
        zero_checks,
        interior_checks,
        pass: false,
    };
    report.pass = report.symmetry_pass() && report.zeros_pass() && report.interior_pass();
    Ok(report)
}
