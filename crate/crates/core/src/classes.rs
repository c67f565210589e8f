//! The counted object classes and their line-sum constraint systems.
//!
//! Every class is encoded as `A·x = t·1` with `x >= 0`. Variables are the cells
//! of the square in row-major order (upper-triangle cells for symmetric
//! squares, lexicographic coordinates for hypercubes).

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::arith::{rank, Rational, RationalMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKind {
    SemiMagic,
    Magic,
    SymmetricMagic,
    Pandiagonal,
    Hypercube,
}

impl ClassKind {
    /// Name used in class specifiers and in the JSON schemas.
    pub fn name(self) -> &'static str {
        match self {
            ClassKind::SemiMagic => "semimagic",
            ClassKind::Magic => "magic",
            ClassKind::SymmetricMagic => "symmetric",
            ClassKind::Pandiagonal => "pandiagonal",
            ClassKind::Hypercube => "hypercube",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "semimagic" => ClassKind::SemiMagic,
            "magic" => ClassKind::Magic,
            "symmetric" => ClassKind::SymmetricMagic,
            "pandiagonal" => ClassKind::Pandiagonal,
            "hypercube" => ClassKind::Hypercube,
            _ => return None,
        })
    }

    /// Conventional letter of the counting function (`H`, `M`, `S`, `P`).
    pub fn symbol(self) -> &'static str {
        match self {
            ClassKind::SemiMagic | ClassKind::Hypercube => "H",
            ClassKind::Magic => "M",
            ClassKind::SymmetricMagic => "S",
            ClassKind::Pandiagonal => "P",
        }
    }
}

/// One counted class at one size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    kind: ClassKind,
    n: usize,
    d: usize,
}

impl SquareClass {
    /// A two-dimensional class. Use [`SquareClass::hypercube`] for cubes.
    pub fn new(kind: ClassKind, n: usize) -> Result<Self> {
        Self::with_dimension(kind, n, 2)
    }

    pub fn hypercube(n: usize, d: usize) -> Result<Self> {
        Self::with_dimension(ClassKind::Hypercube, n, d)
    }

    pub fn with_dimension(kind: ClassKind, n: usize, d: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidClass("order n must be at least 1".into()));
        }
        match kind {
            ClassKind::Hypercube if d < 2 => {
                return Err(Error::InvalidClass(
                    "hypercube dimension must be at least 2".into(),
                ))
            }
            ClassKind::Hypercube => {
                if (n as u128)
                    .checked_pow(d as u32)
                    .is_none_or(|v| v > 1 << 20)
                {
                    return Err(Error::InvalidClass(format!(
                        "hypercube {n}^{d} is too large"
                    )));
                }
            }
            _ if d != 2 => {
                return Err(Error::InvalidClass(format!(
                    "{} squares are two-dimensional",
                    kind.name()
                )))
            }
            _ => {}
        }
        Ok(SquareClass { kind, n, d })
    }

    pub fn semi_magic(n: usize) -> Self {
        Self::new(ClassKind::SemiMagic, n).expect("n >= 1")
    }

    pub fn magic(n: usize) -> Self {
        Self::new(ClassKind::Magic, n).expect("n >= 1")
    }

    pub fn symmetric(n: usize) -> Self {
        Self::new(ClassKind::SymmetricMagic, n).expect("n >= 1")
    }

    pub fn pandiagonal(n: usize) -> Self {
        Self::new(ClassKind::Pandiagonal, n).expect("n >= 1")
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn num_vars(&self) -> usize {
        match self.kind {
            ClassKind::SymmetricMagic => self.n * (self.n + 1) / 2,
            ClassKind::Hypercube => self.n.pow(self.d as u32),
            _ => self.n * self.n,
        }
    }

    /// Short label such as `M_4` or `H_3^3`.
    pub fn label(&self) -> String {
        match self.kind {
            ClassKind::Hypercube => format!("H_{}^{}", self.n, self.d),
            k => format!("{}_{}", k.symbol(), self.n),
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ClassKind::Hypercube => write!(f, "hypercube:{}:{}", self.n, self.d),
            k => write!(f, "{}:{}", k.name(), self.n),
        }
    }
}

impl FromStr for SquareClass {
    type Err = Error;

    /// Parses `semimagic:n`, `magic:n`, `symmetric:n`, `pandiagonal:n` or
    /// `hypercube:n:d`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidClass(format!("cannot parse class specifier {s:?}"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let kind = parts
            .first()
            .and_then(|p| ClassKind::from_name(p))
            .ok_or_else(bad)?;
        let num = |p: &str| p.parse::<usize>().map_err(|_| bad());
        match (kind, parts.len()) {
            (ClassKind::Hypercube, 3) => Self::hypercube(num(parts[1])?, num(parts[2])?),
            (ClassKind::Hypercube, _) => Err(bad()),
            (k, 2) => Self::new(k, num(parts[1])?),
            _ => Err(bad()),
        }
    }
}

/// Degree, reciprocity sign and forced zeros of a class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassProfile {
    pub expected_degree: usize,
    /// `s` in `Q(-n-t) = s·Q(t)`.
    pub reciprocity_sign: i8,
    /// The arguments `-1, ..., -(n-1)` at which the counting function vanishes.
    pub forced_zeros: Vec<i64>,
}

fn parity_sign(e: usize) -> i8 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Closed-form degree and reciprocity data.
///
/// The magic and symmetric degree formulas go negative for `n <= 2`, where
/// the polytope is a single point; those orders get degree 0 and sign `+1`.
pub fn class_profile(class: &SquareClass) -> ClassProfile {
    let n = class.n;
    let (expected_degree, reciprocity_sign) = match class.kind {
        ClassKind::SemiMagic => ((n - 1) * (n - 1), parity_sign(n - 1)),
        ClassKind::Magic if n >= 3 => (n * n - 2 * n - 1, parity_sign(n - 1)),
        ClassKind::SymmetricMagic if n >= 3 => (n * (n - 1) / 2 - 2, parity_sign(n * (n - 1) / 2)),
        ClassKind::Magic | ClassKind::SymmetricMagic => (0, 1),
        ClassKind::Pandiagonal => ((n - 1) * (n - 2), 1),
        ClassKind::Hypercube => ((n - 1).pow(class.d as u32), parity_sign(n - 1)),
    };
    ClassProfile {
        expected_degree,
        reciprocity_sign,
        forced_zeros: (1..n as i64).map(|k| -k).collect(),
    }
}

/// `A·x = t·1` for one class, plus the cell behind each column.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub class: SquareClass,
    pub matrix: RationalMatrix,
    /// Cell coordinates of each variable, indexed by column.
    pub cells: Vec<Vec<usize>>,
}

impl ConstraintSystem {
    pub fn num_vars(&self) -> usize {
        self.cells.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.matrix.rows()
    }

    /// Column of the variable holding `cell`. Symmetric squares fold `(i, j)`
    /// onto the upper triangle.
    pub fn var_index(&self, cell: &[usize]) -> Option<usize> {
        let n = self.class.n;
        if cell.len() != self.class.d || cell.iter().any(|&c| c >= n) {
            return None;
        }
        match self.class.kind {
            ClassKind::SymmetricMagic => {
                let (i, j) = (cell[0].min(cell[1]), cell[0].max(cell[1]));
                Some(upper_index(n, i, j))
            }
            _ => Some(cell.iter().fold(0, |acc, &c| acc * n + c)),
        }
    }

    /// Expands a variable vector to the full row-major array of cells.
    pub fn expand(&self, x: &[Rational]) -> Vec<Rational> {
        let n = self.class.n;
        let total = n.pow(self.class.d as u32);
        (0..total)
            .map(|flat| {
                let mut cell = vec![0; self.class.d];
                let mut rest = flat;
                for k in (0..self.class.d).rev() {
                    cell[k] = rest % n;
                    rest /= n;
                }
                x[self.var_index(&cell).expect("cell in range")].clone()
            })
            .collect()
    }
}

fn upper_index(n: usize, i: usize, j: usize) -> usize {
    // rows 0..i of the upper triangle hold n + (n-1) + ... + (n-i+1) cells
    i * n - i * (i.saturating_sub(1)) / 2 + (j - i)
}

/// Builds the constraint matrix.
///
/// Row order:
/// * semi-magic: rows, then columns;
/// * magic: rows, columns, main diagonal, anti-diagonal;
/// * symmetric: lines (row `i` equals column `i`), main diagonal, anti-diagonal;
/// * pandiagonal: columns, wrapped diagonals `j - i ≡ c (mod n)`, rows;
/// * hypercube: lines along axis 0, then axis 1, ..., each in lexicographic
///   order of the remaining coordinates.
///
/// Entries count how often a variable occurs in a line, so they are 0/1
/// except on the symmetric anti-diagonal, where `x_ij` stands for two cells.
pub fn build_constraints(class: &SquareClass) -> ConstraintSystem {
    let n = class.n;
    let mut lines: Vec<Vec<Vec<usize>>> = Vec::new();
    let row = |i: usize| (0..n).map(|j| vec![i, j]).collect::<Vec<_>>();
    let col = |j: usize| (0..n).map(|i| vec![i, j]).collect::<Vec<_>>();
    let diag = || (0..n).map(|i| vec![i, i]).collect::<Vec<_>>();
    let anti = || (0..n).map(|i| vec![i, n - 1 - i]).collect::<Vec<_>>();
    match class.kind {
        ClassKind::SemiMagic => {
            lines.extend((0..n).map(row));
            lines.extend((0..n).map(col));
        }
        ClassKind::Magic => {
            lines.extend((0..n).map(row));
            lines.extend((0..n).map(col));
            lines.push(diag());
            lines.push(anti());
        }
        ClassKind::SymmetricMagic => {
            lines.extend((0..n).map(row));
            lines.push(diag());
            lines.push(anti());
        }
        ClassKind::Pandiagonal => {
            lines.extend((0..n).map(col));
            lines.extend((0..n).map(|c| (0..n).map(|i| vec![i, (i + c) % n]).collect()));
            lines.extend((0..n).map(row));
        }
        ClassKind::Hypercube => {
            let d = class.d;
            let others = n.pow(d as u32 - 1);
            for axis in 0..d {
                for rest in 0..others {
                    // digits of `rest` fill every coordinate except `axis`
                    let mut fixed = vec![0; d - 1];
                    let mut r = rest;
                    for k in (0..d - 1).rev() {
                        fixed[k] = r % n;
                        r /= n;
                    }
                    let line = (0..n)
                        .map(|j| {
                            let mut cell = fixed.clone();
                            cell.insert(axis, j);
                            cell
                        })
                        .collect();
                    lines.push(line);
                }
            }
        }
    }

    let cells: Vec<Vec<usize>> = match class.kind {
        ClassKind::SymmetricMagic => (0..n)
            .flat_map(|i| (i..n).map(move |j| vec![i, j]))
            .collect(),
        _ => {
            let total = class.num_vars();
            (0..total)
                .map(|flat| {
                    let mut cell = vec![0; class.d];
                    let mut rest = flat;
                    for k in (0..class.d).rev() {
                        cell[k] = rest % n;
                        rest /= n;
                    }
                    cell
                })
                .collect()
        }
    };

    let mut cs = ConstraintSystem {
        class: *class,
        matrix: RationalMatrix::zeros(lines.len(), cells.len()),
        cells,
    };
    for (r, line) in lines.iter().enumerate() {
        for cell in line {
            let c = cs.var_index(cell).expect("line cell in range");
            let v = cs.matrix.get(r, c) + Rational::one();
            cs.matrix.set(r, c, v);
        }
    }
    cs
}

/// Rank of the constraint matrix and dimension of the polytope, checked
/// against the closed-form degree.
pub fn rank_and_degree(cs: &ConstraintSystem) -> Result<(usize, usize)> {
    let r = rank(&cs.matrix);
    let dim = cs.num_vars() - r;
    let expected = class_profile(&cs.class).expected_degree;
    if dim != expected {
        return Err(Error::DegreeMismatch {
            class: cs.class.to_string(),
            computed: dim,
            expected,
        });
    }
    Ok((r, dim))
}

/// Sum of each constraint row; `n` for every class (the number of cells in a
/// line).
pub fn row_sums(cs: &ConstraintSystem) -> Vec<Rational> {
    (0..cs.matrix.rows())
        .map(|r| cs.matrix.row(r).iter().fold(Rational::zero(), |a, b| a + b))
        .collect()
}
