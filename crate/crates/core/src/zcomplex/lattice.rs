//! Integer linear systems, sublattices of `Z^n` and their quotients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::abelian::FgAbelianGroup;
use super::matrix::IntMatrix;
use super::smith::{smith_normal_form, SmithDecomposition};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct DiophantineSolution {
    /// Some `x` with `A x = b`, if one exists.
    pub particular: Option<Vec<BigInt>>,
    /// A basis of `{x : A x = 0}` over the integers.
    pub kernel: Vec<Vec<BigInt>>,
}

/// Solves `A x = b` over the integers.
pub fn solve_diophantine(a: &IntMatrix, b: &[BigInt]) -> Result<DiophantineSolution> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} equations",
            b.len(),
            a.rows()
        )));
    }
    let snf = smith_normal_form(a);
    Ok(DiophantineSolution {
        particular: particular_solution(&snf, b),
        kernel: kernel_from_smith(&snf),
    })
}

/// `A = U S V`, so `A x = b` iff `S y = U^{-1} b` with `y = V x`.
fn particular_solution(snf: &SmithDecomposition, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = snf.u_inv.mul_vec(b).ok()?;
    let mut y = vec![BigInt::zero(); snf.v.rows()];
    for (i, ci) in c.iter().enumerate() {
        if i < snf.rank {
            let (q, r) = ci.div_rem(&snf.s[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    snf.v_inv.mul_vec(&y).ok()
}

fn kernel_from_smith(snf: &SmithDecomposition) -> Vec<Vec<BigInt>> {
    (snf.rank..snf.v_inv.cols())
        .map(|j| snf.v_inv.column(j))
        .collect()
}

/// Kernel basis of `A` as the columns of a matrix.
pub fn kernel_matrix(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    IntMatrix::from_columns(a.cols(), &kernel_from_smith(&snf))
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pairwise size reduction: repeatedly subtracts the nearest-integer
/// projection of one basis vector from another. Preserves the lattice and
/// keeps the vectors short enough for sampling.
pub fn reduce_basis(basis: &mut [Vec<BigInt>]) {
    let n = basis.len();
    for _ in 0..32 {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let nj = dot(&basis[j], &basis[j]);
                if nj.is_zero() {
                    continue;
                }
                let num = dot(&basis[i], &basis[j]);
                // round(num / nj)
                let q = (BigInt::from(2) * &num + &nj).div_floor(&(BigInt::from(2) * &nj));
                if q.is_zero() {
                    continue;
                }
                let (bi, bj) = if i < j {
                    let (lo, hi) = basis.split_at_mut(j);
                    (&mut lo[i], &hi[0])
                } else {
                    let (lo, hi) = basis.split_at_mut(i);
                    (&mut hi[0], &lo[j])
                };
                let before = dot(bi, bi);
                let cand: Vec<BigInt> = bi.iter().zip(bj).map(|(x, y)| x - &q * y).collect();
                if dot(&cand, &cand) < before {
                    *bi = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// A sublattice of `Z^ambient`, given by generators, with a basis and
/// exact coordinates for its members.
#[derive(Debug, Clone)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
    u_inv: IntMatrix,
    diag: Vec<BigInt>,
}

impl Lattice {
    /// The lattice spanned by the columns of `gens`.
    pub fn from_generators(gens: &IntMatrix) -> Self {
        let snf = smith_normal_form(gens);
        // gens = U S V and V is unimodular, so the span is U S Z^m.
        let diag = snf.invariant_factors();
        let mut basis = IntMatrix::zeros(gens.rows(), diag.len());
        for (j, d) in diag.iter().enumerate() {
            for i in 0..gens.rows() {
                basis[(i, j)] = &snf.u[(i, j)] * d;
            }
        }
        Lattice {
            ambient: gens.rows(),
            basis,
            u_inv: snf.u_inv,
            diag,
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_generators(&IntMatrix::identity(ambient))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Basis vectors as columns.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// The unique `y` with `basis * y = x`, or `None` if `x` is not in the lattice.
    pub fn coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        if x.len() != self.ambient {
            return None;
        }
        let c = self.u_inv.mul_vec(x).ok()?;
        let mut y = Vec::with_capacity(self.diag.len());
        for (i, ci) in c.into_iter().enumerate() {
            if i < self.diag.len() {
                let (q, r) = ci.div_rem(&self.diag[i]);
                if !r.is_zero() {
                    return None;
                }
                y.push(q);
            } else if !ci.is_zero() {
                return None;
            }
        }
        Some(y)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.coords(x).is_some()
    }

    /// Whether the quotient `Z^ambient / L` is free (L is a direct summand).
    pub fn is_saturated(&self) -> bool {
        self.diag.iter().all(One::is_one)
    }
}

/// The subquotient `N / D` of two sublattices `D ⊆ N ⊆ Z^ambient`, in Smith
/// coordinates: generators of each cyclic summand and a coordinate map.
///
/// Generators are ordered free summands first, then torsion summands with
/// increasing order, matching [`FgAbelianGroup`].
#[derive(Debug, Clone)]
pub struct Subquotient {
    numerator: Lattice,
    /// `U'^{-1}` from the Smith form of the denominator in numerator coordinates.
    change: IntMatrix,
    /// Indices into the Smith basis of `N`, one per summand of the group.
    summands: Vec<usize>,
    /// Order of each summand; zero for free summands.
    orders: Vec<BigInt>,
    generators: IntMatrix,
    group: FgAbelianGroup,
}

impl Subquotient {
    /// `span(numerator) / span(denominator)`; both given by generator columns.
    pub fn new(numerator: &IntMatrix, denominator: &IntMatrix) -> Result<Self> {
        if numerator.rows() != denominator.rows() {
            return Err(Error::DimensionMismatch(format!(
                "numerator in Z^{} but denominator in Z^{}",
                numerator.rows(),
                denominator.rows()
            )));
        }
        let numerator = Lattice::from_generators(numerator);
        let rank = numerator.rank();
        let mut rel = IntMatrix::zeros(rank, denominator.cols());
        for j in 0..denominator.cols() {
            let y = numerator.coords(&denominator.column(j)).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "denominator generator {j} does not lie in the numerator"
                ))
            })?;
            for (i, v) in y.into_iter().enumerate() {
                rel[(i, j)] = v;
            }
        }
        let snf = smith_normal_form(&rel);
        let factors = snf.invariant_factors();
        let free: Vec<usize> = (factors.len()..rank).collect();
        let torsion: Vec<usize> = (0..factors.len()).filter(|&i| !factors[i].is_one()).collect();
        let mut summands = free.clone();
        summands.extend(&torsion);
        let mut orders = vec![BigInt::zero(); free.len()];
        orders.extend(torsion.iter().map(|&i| factors[i].clone()));

        let lifted = numerator.basis().mul(&snf.u)?;
        let generators = lifted.select_columns(&summands);
        let group = FgAbelianGroup::new(free.len(), orders[free.len()..].to_vec())?;
        Ok(Subquotient {
            numerator,
            change: snf.u_inv,
            summands,
            orders,
            generators,
            group,
        })
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    /// Representatives in `Z^ambient` of the summand generators, as columns.
    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn numerator(&self) -> &Lattice {
        &self.numerator
    }

    pub fn ambient(&self) -> usize {
        self.numerator.ambient()
    }

    /// Class of `x` in the group, torsion coordinates reduced into `0..order`.
    /// `None` when `x` is not in the numerator.
    pub fn class_of(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.numerator.coords(x)?;
        let c = self.change.mul_vec(&y).ok()?;
        Some(
            self.summands
                .iter()
                .zip(&self.orders)
                .map(|(&i, ord)| {
                    if ord.is_zero() {
                        c[i].clone()
                    } else {
                        c[i].mod_floor(ord)
                    }
                })
                .collect(),
        )
    }

    /// Reduces a vector of group coordinates into canonical form.
    pub fn normalize(&self, coords: &[BigInt]) -> Vec<BigInt> {
        coords
            .iter()
            .zip(&self.orders)
            .map(|(c, ord)| if ord.is_zero() { c.clone() } else { c.mod_floor(ord) })
            .collect()
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn is_trivial(&self) -> bool {
        self.summands.is_empty()
    }
}

/// `max |x_i|` over a vector.
pub fn max_abs(v: &[BigInt]) -> BigInt {
    v.iter().map(Signed::abs).max().unwrap_or_else(BigInt::zero)
}
