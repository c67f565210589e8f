//! Brute-force reference counts.
//!
//! Arrays are filled cell by cell and checked against the line conditions
//! written out from the definitions of each class. Nothing here touches the
//! constraint matrices or any linear algebra.

#![allow(dead_code)]

use magicpoly::{ClassKind, SquareClass};

/// Every line that must sum to `t`, as lists of flat row-major cell indices.
pub fn lines(class: &SquareClass) -> Vec<Vec<usize>> {
    let n = class.n();
    let at = |i: usize, j: usize| i * n + j;
    let rows = (0..n).map(|i| (0..n).map(|j| at(i, j)).collect::<Vec<_>>());
    let cols = (0..n).map(|j| (0..n).map(|i| at(i, j)).collect::<Vec<_>>());
    let diag = (0..n).map(|i| at(i, i)).collect::<Vec<_>>();
    let anti = (0..n).map(|i| at(i, n - 1 - i)).collect::<Vec<_>>();
    match class.kind() {
        ClassKind::SemiMagic => rows.chain(cols).collect(),
        ClassKind::Magic | ClassKind::SymmetricMagic => {
            rows.chain(cols).chain([diag, anti]).collect()
        }
        ClassKind::Pandiagonal => {
            let wrapped = (0..n).map(|c| (0..n).map(|i| at(i, (i + c) % n)).collect::<Vec<_>>());
            rows.chain(cols).chain(wrapped).collect()
        }
        ClassKind::Hypercube => {
            let d = class.d();
            let total = n.pow(d as u32);
            let mut out = Vec::new();
            for axis in 0..d {
                let stride = n.pow((d - 1 - axis) as u32);
                for start in 0..total {
                    // a line starts where the axis coordinate is 0
                    if (start / stride).is_multiple_of(n) {
                        out.push((0..n).map(|j| start + j * stride).collect());
                    }
                }
            }
            out
        }
    }
}

/// Number of arrays of `class` with line sum `t` and entries in `[lo, t]`,
/// `lo = 1` when `strict`.
pub fn brute_force(class: &SquareClass, t: u64, strict: bool) -> u64 {
    let n = class.n();
    let lo = u64::from(strict);
    let lines = lines(class);
    let cells = n.pow(class.d() as u32);
    // free positions: all cells, or the upper triangle for symmetric squares
    let positions: Vec<usize> = if class.kind() == ClassKind::SymmetricMagic {
        (0..n)
            .flat_map(|i| (i..n).map(move |j| i * n + j))
            .collect()
    } else {
        (0..cells).collect()
    };
    let mut grid = vec![0u64; cells];
    let mut count = 0;
    fill(class, t, lo, &positions, 0, &mut grid, &lines, &mut count);
    count
}

#[allow(clippy::too_many_arguments)]
fn fill(
    class: &SquareClass,
    t: u64,
    lo: u64,
    positions: &[usize],
    k: usize,
    grid: &mut [u64],
    lines: &[Vec<usize>],
    count: &mut u64,
) {
    let n = class.n();
    if k == positions.len() {
        if lines
            .iter()
            .all(|l| l.iter().map(|&c| grid[c]).sum::<u64>() == t)
        {
            *count += 1;
        }
        return;
    }
    let cell = positions[k];
    let symmetric = class.kind() == ClassKind::SymmetricMagic;
    for v in lo..=t {
        grid[cell] = v;
        if symmetric {
            let (i, j) = (cell / n, cell % n);
            grid[j * n + i] = v;
        }
        // the first n entries of the current row (or last-axis line) so far
        let row_start = cell - cell % n;
        let partial: u64 = grid[row_start..=cell].iter().sum();
        let row_done = cell % n == n - 1;
        let ok = if symmetric {
            // row i of a symmetric square is complete once (i, n-1) is set
            let row: u64 = grid[row_start..row_start + n].iter().sum();
            if row_done {
                row == t
            } else {
                row <= t
            }
        } else if row_done {
            partial == t
        } else {
            partial <= t
        };
        if ok {
            fill(class, t, lo, positions, k + 1, grid, lines, count);
        }
    }
    grid[cell] = 0;
    if symmetric {
        let (i, j) = (cell / n, cell % n);
        grid[j * n + i] = 0;
    }
}

/// Classes with at most `max_vars` free cells, for oracle sweeps.
pub fn small_classes(max_vars: usize) -> Vec<SquareClass> {
    let mut out = Vec::new();
    for n in 1..=6 {
        for kind in [
            ClassKind::SemiMagic,
            ClassKind::Magic,
            ClassKind::SymmetricMagic,
            ClassKind::Pandiagonal,
        ] {
            let c = SquareClass::new(kind, n).unwrap();
            if c.num_vars() <= max_vars {
                out.push(c);
            }
        }
        for d in 2..=4 {
            let c = SquareClass::hypercube(n, d).unwrap();
            if c.num_vars() <= max_vars {
                out.push(c);
            }
        }
    }
    out
}
