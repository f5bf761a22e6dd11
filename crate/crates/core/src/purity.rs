//! Pure exactness of short exact sequences of finitely generated abelian
//! groups, by tensoring with a finite family of cyclic groups, and the
//! split criterion as an independent check.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zcomplex::abelian::prime_power_factors;
use crate::zcomplex::io::{matrix_doc, matrix_from_doc, parse_json, JsonInt, MatrixDoc};
use crate::zcomplex::lattice::{kernel_matrix, solve_diophantine, Lattice, Subquotient};
use crate::zcomplex::{FgAbelianGroup, IntMatrix};

/// Largest elementary divisor for which the tensor family is enumerated.
pub const MAX_ELEMENTARY_DIVISOR: u64 = 1 << 24;

/// `0 -> A --i--> B --p--> C -> 0` with maps written on the Smith generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortExactSeq {
    a: FgAbelianGroup,
    b: FgAbelianGroup,
    c: FgAbelianGroup,
    i: IntMatrix,
    p: IntMatrix,
}

fn within(gens: &IntMatrix, lattice: &IntMatrix) -> bool {
    let l = Lattice::from_generators(lattice);
    gens.columns().iter().all(|v| l.contains(v))
}

/// `{x : m x ∈ span(rel)}`, as generator columns.
fn preimage(m: &IntMatrix, rel: &IntMatrix) -> IntMatrix {
    let k = kernel_matrix(&m.hstack(rel).expect("same rows"));
    k.block(0, 0, m.cols(), k.cols())
}

fn trivial_quotient(num: &IntMatrix, den: &IntMatrix) -> bool {
    Subquotient::new(num, den).is_ok_and(|q| q.is_trivial())
}

/// Exactness of `0 -> A -> B -> C -> 0` where each group is the cokernel of
/// its relation matrix. Returns the first failing position.
fn exactness_defect(i: &IntMatrix, p: &IntMatrix, ra: &IntMatrix, rb: &IntMatrix, rc: &IntMatrix) -> Option<&'static str> {
    if !trivial_quotient(&preimage(i, rb), ra) {
        return Some("i is not injective");
    }
    let im_i = i.hstack(rb).expect("same rows");
    if !trivial_quotient(&preimage(p, rc), &im_i) {
        return Some("ker p differs from im i");
    }
    let onto = p.hstack(rc).expect("same rows");
    if !trivial_quotient(&IntMatrix::identity(rc.rows()), &onto) {
        return Some("p is not surjective");
    }
    None
}

/// Relations of `G ⊗ Z/d`.
fn tensor_relations(rel: &IntMatrix, d: u64) -> IntMatrix {
    if d == 0 {
        return rel.clone();
    }
    rel.hstack(&IntMatrix::scalar(rel.rows(), BigInt::from(d)))
        .expect("same rows")
}

impl ShortExactSeq {
    pub fn new(a: FgAbelianGroup, b: FgAbelianGroup, c: FgAbelianGroup, i: IntMatrix, p: IntMatrix) -> Result<Self> {
        let (na, nb, nc) = (a.generator_count(), b.generator_count(), c.generator_count());
        if i.shape() != (nb, na) || p.shape() != (nc, nb) {
            return Err(Error::DimensionMismatch(format!(
                "i is {}x{} and p is {}x{}, expected {nb}x{na} and {nc}x{nb}",
                i.rows(),
                i.cols(),
                p.rows(),
                p.cols()
            )));
        }
        let (ra, rb, rc) = (a.relations(), b.relations(), c.relations());
        if !within(&i.mul(&ra)?, &rb) {
            return Err(Error::Precondition("i does not respect the relations of A".into()));
        }
        if !within(&p.mul(&rb)?, &rc) {
            return Err(Error::Precondition("p does not respect the relations of B".into()));
        }
        if !within(&p.mul(&i)?, &rc) {
            return Err(Error::Precondition("p∘i is not zero".into()));
        }
        if let Some(why) = exactness_defect(&i, &p, &ra, &rb, &rc) {
            return Err(Error::Precondition(format!("sequence is not short exact: {why}")));
        }
        Ok(ShortExactSeq { a, b, c, i, p })
    }

    /// `0 -> A -> A ⊕ C -> C -> 0`.
    pub fn split(a: FgAbelianGroup, c: FgAbelianGroup) -> Result<Self> {
        let b = direct_sum(&a, &c);
        let (i, p) = sum_inclusions(&a, &c);
        Self::new(a, b, c, i, p)
    }

    pub fn a(&self) -> &FgAbelianGroup {
        &self.a
    }

    pub fn b(&self) -> &FgAbelianGroup {
        &self.b
    }

    pub fn c(&self) -> &FgAbelianGroup {
        &self.c
    }

    pub fn i(&self) -> &IntMatrix {
        &self.i
    }

    pub fn p(&self) -> &IntMatrix {
        &self.p
    }

    /// Whether the sequence stays exact after tensoring with `Z/d` (`Z` for `d = 0`).
    pub fn exact_after_tensor(&self, d: u64) -> bool {
        let ra = tensor_relations(&self.a.relations(), d);
        let rb = tensor_relations(&self.b.relations(), d);
        let rc = tensor_relations(&self.c.relations(), d);
        exactness_defect(&self.i, &self.p, &ra, &rb, &rc).is_none()
    }

    /// `0` followed by every prime power up to the largest elementary divisor
    /// of `A`, `B` and `C`.
    pub fn test_family(&self) -> Result<Vec<u64>> {
        let e = [&self.a, &self.b, &self.c]
            .iter()
            .map(|g| g.largest_elementary_divisor())
            .max()
            .unwrap_or_else(|| BigInt::from(1));
        let e = e
            .to_u64()
            .filter(|&e| e <= MAX_ELEMENTARY_DIVISOR)
            .ok_or_else(|| Error::InvalidArgument(format!("elementary divisor {e} is too large to test")))?;
        let mut family = vec![0];
        family.extend((2..=e).filter(|&q| prime_power_factors(&BigInt::from(q)).len() == 1));
        Ok(family)
    }

    pub fn is_pure_exact(&self) -> Result<bool> {
        Ok(self.test_family()?.into_iter().all(|d| self.exact_after_tensor(d)))
    }

    /// A retraction `r: B -> A` with `r∘i = id`, as a matrix on generators.
    pub fn retraction(&self) -> Option<IntMatrix> {
        // Unknowns: r (a x b), S (|R_A| x |R_B|), T (|R_A| x a) with
        // r R_B = R_A S and r i - R_A T = I.
        let (ra, rb) = (self.a.relations(), self.b.relations());
        let (na, nb) = (self.a.generator_count(), self.b.generator_count());
        let (ka, kb) = (ra.cols(), rb.cols());
        let r_var = |row: usize, col: usize| row * nb + col;
        let s_var = |row: usize, col: usize| na * nb + row * kb + col;
        let t_var = |row: usize, col: usize| na * nb + ka * kb + row * na + col;
        let vars = na * nb + ka * kb + ka * na;
        let mut eqs: Vec<Vec<(usize, BigInt)>> = Vec::new();
        let mut rhs = Vec::new();
        for x in 0..na {
            for y in 0..kb {
                let mut row: Vec<(usize, BigInt)> = (0..nb).map(|l| (r_var(x, l), rb[(l, y)].clone())).collect();
                row.extend((0..ka).map(|l| (s_var(l, y), -ra[(x, l)].clone())));
                eqs.push(row);
                rhs.push(BigInt::zero());
            }
            for y in 0..na {
                let mut row: Vec<(usize, BigInt)> = (0..nb).map(|l| (r_var(x, l), self.i[(l, y)].clone())).collect();
                row.extend((0..ka).map(|l| (t_var(l, y), -ra[(x, l)].clone())));
                eqs.push(row);
                rhs.push(BigInt::from(i64::from(x == y)));
            }
        }
        let mut m = IntMatrix::zeros(eqs.len(), vars);
        for (r, row) in eqs.iter().enumerate() {
            for (c, v) in row {
                m[(r, *c)] += v;
            }
        }
        let x = solve_diophantine(&m, &rhs).ok()?.particular?;
        IntMatrix::from_vec(na, nb, x[..na * nb].to_vec()).ok()
    }

    pub fn is_split(&self) -> bool {
        self.retraction().is_some()
    }
}

/// `A ⊕ C` in invariant-factor form.
pub fn direct_sum(a: &FgAbelianGroup, c: &FgAbelianGroup) -> FgAbelianGroup {
    Subquotient::new(
        &IntMatrix::identity(a.generator_count() + c.generator_count()),
        &block_diag(&a.relations(), &c.relations()),
    )
    .expect("relations lie in the ambient lattice")
    .group()
    .clone()
}

fn block_diag(x: &IntMatrix, y: &IntMatrix) -> IntMatrix {
    let mut m = IntMatrix::zeros(x.rows() + y.rows(), x.cols() + y.cols());
    m.set_block(0, 0, x);
    m.set_block(x.rows(), x.cols(), y);
    m
}

/// Inclusion of `A` and projection onto `C` through the Smith generators of `b = A ⊕ C`.
fn sum_inclusions(a: &FgAbelianGroup, c: &FgAbelianGroup) -> (IntMatrix, IntMatrix) {
    let (na, nc) = (a.generator_count(), c.generator_count());
    let q = Subquotient::new(
        &IntMatrix::identity(na + nc),
        &block_diag(&a.relations(), &c.relations()),
    )
    .expect("relations lie in the ambient lattice");
    let mut i = IntMatrix::zeros(q.group().generator_count(), na);
    for j in 0..na {
        let mut e = vec![BigInt::zero(); na + nc];
        e[j] = BigInt::from(1);
        for (r, v) in q.class_of(&e).expect("ambient").into_iter().enumerate() {
            i[(r, j)] = v;
        }
    }
    // p sends a Smith generator of the sum to the C-part of its representative.
    let gens = q.generators();
    let mut p = IntMatrix::zeros(nc, gens.cols());
    for j in 0..gens.cols() {
        for r in 0..nc {
            p[(r, j)] = gens[(na + r, j)].clone();
        }
    }
    (i, p)
}

/// A random short exact sequence: a random `B`, the subgroup `A` spanned by
/// one or two random elements, and `C = B / A`.
pub fn random_short_exact<R: Rng>(rng: &mut R) -> ShortExactSeq {
    let b = random_group(rng);
    let nb = b.generator_count();
    let count = rng.random_range(1..=2);
    let cols: Vec<Vec<BigInt>> = (0..count)
        .map(|_| {
            let scale: i64 = [1, 1, 2, 3][rng.random_range(0..4)];
            (0..nb).map(|_| BigInt::from(scale * rng.random_range(-2i64..=2))).collect()
        })
        .collect();
    let gens = IntMatrix::from_columns(nb, &cols);
    let rb = b.relations();
    let sub = Subquotient::new(&gens.hstack(&rb).expect("same rows"), &rb).expect("R_B inside");
    let quot = Subquotient::new(&IntMatrix::identity(nb), &gens.hstack(&rb).expect("same rows"))
        .expect("inside the ambient lattice");
    let a = sub.group().clone();
    let c = quot.group().clone();
    let i = sub.generators().clone();
    let mut p = IntMatrix::zeros(c.generator_count(), nb);
    for j in 0..nb {
        let mut e = vec![BigInt::zero(); nb];
        e[j] = BigInt::from(1);
        for (r, v) in quot.class_of(&e).expect("ambient").into_iter().enumerate() {
            p[(r, j)] = v;
        }
    }
    ShortExactSeq::new(a, b, c, i, p).expect("subgroup and quotient form a short exact sequence")
}

fn random_group<R: Rng>(rng: &mut R) -> FgAbelianGroup {
    let rank = rng.random_range(0..=2);
    let mut torsion = Vec::new();
    let mut t = 1i64;
    for _ in 0..rng.random_range(0..=2) {
        t *= [2, 2, 3, 4, 6][rng.random_range(0..5)];
        torsion.push(BigInt::from(t));
    }
    if rank == 0 && torsion.is_empty() {
        return FgAbelianGroup::free(1);
    }
    FgAbelianGroup::new(rank, torsion).expect("divisibility chain by construction")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub rank: usize,
    pub torsion: Vec<JsonInt>,
}

impl GroupDoc {
    fn to_group(&self) -> Result<FgAbelianGroup> {
        FgAbelianGroup::new(self.rank, self.torsion.iter().map(|t| t.0.clone()).collect())
    }

    fn from_group(g: &FgAbelianGroup) -> Self {
        GroupDoc {
            rank: g.rank,
            torsion: g.torsion.iter().cloned().map(JsonInt).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceDoc {
    #[serde(rename = "A")]
    pub a: GroupDoc,
    #[serde(rename = "B")]
    pub b: GroupDoc,
    #[serde(rename = "C")]
    pub c: GroupDoc,
    pub i: MatrixDoc,
    pub p: MatrixDoc,
}

impl SequenceDoc {
    pub fn from_seq(s: &ShortExactSeq) -> Self {
        SequenceDoc {
            a: GroupDoc::from_group(&s.a),
            b: GroupDoc::from_group(&s.b),
            c: GroupDoc::from_group(&s.c),
            i: matrix_doc(&s.i),
            p: matrix_doc(&s.p),
        }
    }

    pub fn to_seq(&self) -> Result<ShortExactSeq> {
        let (a, b, c) = (self.a.to_group()?, self.b.to_group()?, self.c.to_group()?);
        let (na, nb, nc) = (a.generator_count(), b.generator_count(), c.generator_count());
        let i = matrix_from_doc(&self.i, nb, na, "i")?;
        let p = matrix_from_doc(&self.p, nc, nb, "p")?;
        ShortExactSeq::new(a, b, c, i, p)
    }
}

pub fn parse_sequence(text: &str) -> Result<ShortExactSeq> {
    parse_json::<SequenceDoc>(text)?.to_seq()
}
