//! End-to-end reconstruction: constraints, rank, vertices, samples,
//! interpolation.

use num_traits::ToPrimitive;

use crate::cache::Sampler;
use crate::classes::{
    build_constraints, class_profile, rank_and_degree, ClassProfile, SquareClass,
};
use crate::count::CountSample;
use crate::error::{Error, Result};
use crate::geometry::{enumerate_vertices, VertexOptions, VertexSet};
use crate::quasi::{
    interpolate, sample_plan, verify_reciprocity, QuasiPolynomial, ReciprocityReport,
};

#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub class: SquareClass,
    pub profile: ClassProfile,
    pub rank: usize,
    pub dimension: usize,
    pub vertices: VertexSet,
    pub samples: Vec<CountSample>,
    pub quasi: QuasiPolynomial,
}

impl Reconstruction {
    /// The default reciprocity range `0..=degree + period + 2`.
    pub fn default_range(&self) -> u64 {
        (self.quasi.degree() + self.quasi.period() + 2) as u64
    }

    /// Default interior range `1..=n + 4`.
    pub fn default_interior_range(&self) -> u64 {
        self.class.n() as u64 + 4
    }

    pub fn verify(
        &self,
        t_max: u64,
        interior_max: u64,
        sampler: &Sampler,
    ) -> Result<ReciprocityReport> {
        verify_reciprocity(&self.quasi, &self.class, t_max, interior_max, sampler)
    }
}

/// Runs the whole pipeline for one class.
pub fn reconstruct(
    class: &SquareClass,
    sampler: &Sampler,
    opts: VertexOptions,
) -> Result<Reconstruction> {
    let cs = build_constraints(class);
    let (rank, dimension) = rank_and_degree(&cs)?;
    let vertices = enumerate_vertices(&cs, opts)?;
    let bound = vertices.period_bound.to_u64().ok_or(Error::Overflow)?;
    let samples = sampler.count_batch(class, &sample_plan(bound, dimension), false)?;
    let quasi = interpolate(class, &samples, bound)?;
    Ok(Reconstruction {
        class: *class,
        profile: class_profile(class),
        rank,
        dimension,
        vertices,
        samples,
        quasi,
    })
}

/// The six polytopes of the vertex table, in display order.
pub fn table_classes() -> [SquareClass; 6] {
    [
        SquareClass::magic(3),
        SquareClass::symmetric(3),
        SquareClass::pandiagonal(3),
        SquareClass::magic(4),
        SquareClass::symmetric(4),
        SquareClass::pandiagonal(4),
    ]
}

/// One row of the vertex table: label, vertex count and denominator lcm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub label: String,
    pub vertices: usize,
    pub lcm: u64,
}

pub fn vertex_table() -> Result<Vec<TableRow>> {
    table_classes()
        .iter()
        .map(|class| {
            let vs = enumerate_vertices(&build_constraints(class), VertexOptions::default())?;
            Ok(TableRow {
                label: class.label(),
                vertices: vs.len(),
                lcm: vs.period_bound.to_u64().ok_or(Error::Overflow)?,
            })
        })
        .collect()
}
