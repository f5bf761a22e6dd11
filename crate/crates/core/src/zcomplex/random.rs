//! Seeded random complexes and matrices for property suites.

use num_bigint::BigInt;
use rand::Rng;

use super::complex::GradedComplex;
use super::lattice::{kernel_matrix, reduce_basis};
use super::matrix::IntMatrix;

#[derive(Debug, Clone, Copy)]
pub struct ComplexParams {
    /// Number of consecutive degrees, at most.
    pub max_degrees: usize,
    pub max_rank: usize,
    /// Bound on the absolute value of differential entries.
    pub entry_bound: i64,
    pub min_degree: i64,
}

impl Default for ComplexParams {
    fn default() -> Self {
        ComplexParams {
            max_degrees: 4,
            max_rank: 3,
            entry_bound: 3,
            min_degree: 0,
        }
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols)
        .map(|_| BigInt::from(rng.random_range(-bound..=bound)))
        .collect();
    IntMatrix::from_vec(rows, cols, data).expect("sized data")
}

/// A random bounded free complex. The lowest differential has uniform
/// entries; every higher one has columns drawn from small combinations of
/// a kernel basis of the differential below, so `d∘d = 0` by construction.
/// Columns whose entries would exceed the bound are replaced by zero.
pub fn random_complex<R: Rng>(rng: &mut R, params: &ComplexParams) -> GradedComplex {
    let len = rng.random_range(1..=params.max_degrees.max(1));
    let ranks: Vec<usize> = (0..len).map(|_| rng.random_range(0..=params.max_rank)).collect();
    let mut diffs: Vec<IntMatrix> = Vec::new();
    for i in 0..len.saturating_sub(1) {
        let (rows, cols) = (ranks[i], ranks[i + 1]);
        let d = match diffs.last() {
            None => random_matrix(rng, rows, cols, params.entry_bound),
            Some(below) => {
                let mut kernel = kernel_matrix(below).columns();
                reduce_basis(&mut kernel);
                let bound = BigInt::from(params.entry_bound);
                let columns: Vec<Vec<BigInt>> = (0..cols)
                    .map(|_| {
                        let mut v = vec![BigInt::from(0); rows];
                        for k in &kernel {
                            let c = rng.random_range(-2i64..=2);
                            for (x, y) in v.iter_mut().zip(k) {
                                *x += y * c;
                            }
                        }
                        if v.iter().any(|x| x > &bound || -x > bound) {
                            vec![BigInt::from(0); rows]
                        } else {
                            v
                        }
                    })
                    .collect();
                IntMatrix::from_columns(rows, &columns)
            }
        };
        diffs.push(d);
    }
    GradedComplex::new(params.min_degree, ranks, diffs).expect("d∘d = 0 by construction")
}
