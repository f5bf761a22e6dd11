//! Smith normal form over the integers by gcd-pivot elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `A = U * S * V` with `U`, `V` unimodular and `S` diagonal,
/// `d_1 | d_2 | ... | d_r` followed by zeros.
///
/// The inverses of `U` and `V` are tracked alongside so callers can change
/// coordinates in both directions without inverting anything.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// Non-zero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Diagonal of `S`, including trailing zeros, of length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

fn inverse_2x2(t: &[[BigInt; 2]; 2]) -> [[BigInt; 2]; 2] {
    let det = &t[0][0] * &t[1][1] - &t[0][1] * &t[1][0];
    debug_assert!(det.abs().is_one());
    [
        [&det * &t[1][1], -(&det * &t[0][1])],
        [-(&det * &t[1][0]), &det * &t[0][0]],
    ]
}

fn transpose_2x2(t: &[[BigInt; 2]; 2]) -> [[BigInt; 2]; 2] {
    [
        [t[0][0].clone(), t[1][0].clone()],
        [t[0][1].clone(), t[1][1].clone()],
    ]
}

fn swap_op() -> [[BigInt; 2]; 2] {
    [
        [BigInt::zero(), BigInt::one()],
        [BigInt::one(), BigInt::zero()],
    ]
}

/// Unimodular `T` with `T * (a, b)^T = (g, 0)^T`, `g = gcd(a, b)`.
///
/// When `a | b` this is plain elimination; extended gcd alone may pick the
/// Bezout pair that swaps the two entries and cycles.
fn gcd_op(a: &BigInt, b: &BigInt) -> [[BigInt; 2]; 2] {
    if b.is_multiple_of(a) {
        return [[BigInt::one(), BigInt::zero()], [-(b / a), BigInt::one()]];
    }
    let eg = a.extended_gcd(b);
    let g = eg.gcd;
    [[eg.x, eg.y], [-(b / &g), a / &g]]
}

impl Work {
    /// Left-multiplies `a` by `T` acting on rows `i`, `j`.
    fn row_op(&mut self, i: usize, j: usize, t: &[[BigInt; 2]; 2]) {
        self.a.combine_rows(i, j, t);
        self.u_inv.combine_rows(i, j, t);
        // U <- U T^{-1}
        self.u.combine_cols(i, j, &transpose_2x2(&inverse_2x2(t)));
    }

    /// Right-multiplies `a` by `T^T` acting on columns `i`, `j`.
    fn col_op(&mut self, i: usize, j: usize, t: &[[BigInt; 2]; 2]) {
        self.a.combine_cols(i, j, t);
        self.v_inv.combine_cols(i, j, t);
        // V <- (T^T)^{-1} V
        self.v.combine_rows(i, j, &transpose_2x2(&inverse_2x2(t)));
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u_inv.negate_row(i);
        self.u.negate_col(i);
    }

    /// Smallest non-zero entry (by absolute value) of the trailing block.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = self.a[(i, j)].abs();
                if v.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, _, b)| v < *b) {
                    best = Some((i, j, v));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn clear_cross(&mut self, t: usize) {
        loop {
            let mut dirty = false;
            for i in t + 1..self.a.rows() {
                if !self.a[(i, t)].is_zero() {
                    let op = gcd_op(&self.a[(t, t)], &self.a[(i, t)]);
                    self.row_op(t, i, &op);
                }
            }
            for j in t + 1..self.a.cols() {
                if !self.a[(t, j)].is_zero() {
                    let op = gcd_op(&self.a[(t, t)], &self.a[(t, j)]);
                    self.col_op(t, j, &op);
                    dirty = true;
                }
            }
            if !dirty || (t + 1..self.a.rows()).all(|i| self.a[(i, t)].is_zero()) {
                break;
            }
        }
    }

    fn non_divisible(&self, t: usize) -> Option<usize> {
        let p = &self.a[(t, t)];
        for i in t + 1..self.a.rows() {
            for j in t + 1..self.a.cols() {
                if !self.a[(i, j)].is_multiple_of(p) {
                    return Some(i);
                }
            }
        }
        None
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = a.shape();
    let mut w = Work {
        a: a.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = w.min_pivot(t) else {
            break;
        };
        if pi != t {
            w.row_op(t, pi, &swap_op());
        }
        if pj != t {
            w.col_op(t, pj, &swap_op());
        }
        loop {
            w.clear_cross(t);
            match w.non_divisible(t) {
                // Adding row i into row t brings a non-multiple into the pivot
                // row; the next clearing pass shrinks the pivot to a gcd.
                Some(i) => {
                    let op = [
                        [BigInt::one(), BigInt::one()],
                        [BigInt::zero(), BigInt::one()],
                    ];
                    w.row_op(t, i, &op);
                }
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
        rank = t + 1;
    }
    SmithDecomposition {
        u: w.u,
        s: w.a,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
        rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithDecomposition {
        let d = smith_normal_form(a);
        let usv = d.u.mul(&d.s).unwrap().mul(&d.v).unwrap();
        assert_eq!(&usv, a);
        assert_eq!(d.u.mul(&d.u_inv).unwrap(), IntMatrix::identity(a.rows()));
        assert_eq!(d.v.mul(&d.v_inv).unwrap(), IntMatrix::identity(a.cols()));
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                if i != j {
                    assert!(d.s[(i, j)].is_zero());
                }
            }
        }
        let f = d.invariant_factors();
        assert!(f.iter().all(|x| x.is_positive()));
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        for x in &d.diagonal()[d.rank..] {
            assert!(x.is_zero());
        }
        d
    }

    #[test]
    fn identity() {
        let d = check(&IntMatrix::identity(2));
        assert_eq!(d.s, IntMatrix::identity(2));
    }

    #[test]
    fn two_four_six_eight() {
        let d = check(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]]));
        assert_eq!(d.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_and_empty() {
        let d = check(&IntMatrix::zeros(3, 2));
        assert!(d.s.is_zero());
        assert_eq!(d.rank, 0);
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(2, 0));
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) has Smith form diag(1, 6)
        let d = check(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(d.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn rectangular() {
        let d = check(&IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(
            d.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        check(&IntMatrix::from_i64(&[&[1, 2, 3, 4], &[5, 6, 7, 8]]));
        check(&IntMatrix::from_i64(&[&[3], &[5], &[7]]));
    }

    #[test]
    fn equal_entries_do_not_cycle() {
        let d = check(&IntMatrix::from_i64(&[&[-3, 2, 3], &[-3, 0, -3], &[-3, 2, -3]]));
        assert_eq!(d.invariant_factors().len(), 3);
        check(&IntMatrix::from_i64(&[&[6, 0], &[-6, 6]]));
    }
}
