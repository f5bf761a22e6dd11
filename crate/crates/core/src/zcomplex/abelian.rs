use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// `Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k` with `2 <= t_1 | t_2 | ... | t_k`.
///
/// Generators are ordered free summands first, then torsion summands.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    pub rank: usize,
    #[serde(with = "crate::zcomplex::io::bigint_vec")]
    pub torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for t in &torsion {
            if *t < BigInt::from(2) {
                return Err(Error::InvalidArgument(format!(
                    "torsion coefficient {t} is less than 2"
                )));
            }
        }
        for w in torsion.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(Error::InvalidArgument(format!(
                    "torsion coefficients {} and {} break the divisibility chain",
                    w[0], w[1]
                )));
            }
        }
        Ok(FgAbelianGroup { rank, torsion })
    }

    pub fn trivial() -> Self {
        FgAbelianGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: i64) -> Self {
        match order {
            0 => Self::free(1),
            1 | -1 => Self::trivial(),
            n => FgAbelianGroup {
                rank: 0,
                torsion: vec![BigInt::from(n.abs())],
            },
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn generator_count(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Order of each generator; zero for free generators.
    pub fn orders(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.rank];
        v.extend(self.torsion.iter().cloned());
        v
    }

    /// Relation matrix on the generators: column `j` is `t_j e_{rank + j}`.
    pub fn relations(&self) -> IntMatrix {
        let g = self.generator_count();
        let mut r = IntMatrix::zeros(g, self.torsion.len());
        for (j, t) in self.torsion.iter().enumerate() {
            r[(self.rank + j, j)] = t.clone();
        }
        r
    }

    /// Largest elementary divisor (prime-power factor) of any torsion coefficient; 1 if none.
    pub fn largest_elementary_divisor(&self) -> BigInt {
        self.torsion
            .iter()
            .flat_map(prime_power_factors)
            .max()
            .unwrap_or_else(BigInt::one)
    }
}

/// Prime-power factors of `|n|`, by trial division.
pub fn prime_power_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            let mut q = BigInt::one();
            while n.is_multiple_of(&p) {
                n /= &p;
                q *= &p;
            }
            out.push(q);
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Projective dimension of a finitely generated abelian group: 0 if free, else 1.
pub fn pdim_fg_abelian(g: &FgAbelianGroup) -> u32 {
    u32::from(!g.is_free())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zcomplex::matrix::bigvec;

    #[test]
    fn validation() {
        assert!(FgAbelianGroup::new(0, bigvec(&[2, 4])).is_ok());
        assert!(FgAbelianGroup::new(0, bigvec(&[2, 3])).is_err());
        assert!(FgAbelianGroup::new(0, bigvec(&[1])).is_err());
    }

    #[test]
    fn pdim() {
        assert_eq!(pdim_fg_abelian(&FgAbelianGroup::free(3)), 0);
        assert_eq!(pdim_fg_abelian(&FgAbelianGroup::cyclic(6)), 1);
        assert_eq!(pdim_fg_abelian(&FgAbelianGroup::new(1, bigvec(&[2])).unwrap()), 1);
    }

    #[test]
    fn display() {
        assert_eq!(FgAbelianGroup::trivial().to_string(), "0");
        assert_eq!(FgAbelianGroup::new(2, bigvec(&[2, 4])).unwrap().to_string(), "Z^2 + Z/2 + Z/4");
    }

    #[test]
    fn elementary_divisors() {
        assert_eq!(prime_power_factors(&BigInt::from(360)), bigvec(&[8, 9, 5]));
        let g = FgAbelianGroup::new(0, bigvec(&[6, 12])).unwrap();
        assert_eq!(g.largest_elementary_divisor(), BigInt::from(4));
        assert_eq!(FgAbelianGroup::free(2).largest_elementary_divisor(), BigInt::one());
    }
}
