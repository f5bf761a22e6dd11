//! Bounded chain complexes of finitely generated free abelian groups.
//!
//! Differentials have degree `-1`. A complex stores the ranks of `C_n` for
//! `n` in `min_degree..=max_degree`; every other degree is zero.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::abelian::FgAbelianGroup;
use super::lattice::{kernel_matrix, reduce_basis, solve_diophantine, Subquotient};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedComplex {
    min_degree: i64,
    ranks: Vec<usize>,
    /// `differentials[i]` is `d: C_{min+i+1} -> C_{min+i}`.
    differentials: Vec<IntMatrix>,
}

impl GradedComplex {
    pub fn new(min_degree: i64, ranks: Vec<usize>, differentials: Vec<IntMatrix>) -> Result<Self> {
        let expected = ranks.len().saturating_sub(1);
        if differentials.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "{} differentials for {} degrees",
                differentials.len(),
                ranks.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.shape() != (ranks[i], ranks[i + 1]) {
                return Err(Error::DimensionMismatch(format!(
                    "differential from degree {} is {}x{}, expected {}x{}",
                    min_degree + i as i64 + 1,
                    d.rows(),
                    d.cols(),
                    ranks[i],
                    ranks[i + 1]
                )));
            }
        }
        for i in 1..differentials.len() {
            if !differentials[i - 1].mul(&differentials[i])?.is_zero() {
                return Err(Error::NotAComplex {
                    degree: min_degree + i as i64 + 1,
                });
            }
        }
        Ok(GradedComplex {
            min_degree,
            ranks,
            differentials,
        })
    }

    /// Builds a complex on `lo..=hi` from a rank function and a differential
    /// function `n -> d_n`. The result is validated.
    pub fn from_fn(
        lo: i64,
        hi: i64,
        rank: impl Fn(i64) -> usize,
        differential: impl Fn(i64) -> IntMatrix,
    ) -> Result<Self> {
        if hi < lo {
            return Ok(Self::zero());
        }
        let ranks: Vec<usize> = (lo..=hi).map(&rank).collect();
        let diffs = (lo + 1..=hi).map(differential).collect();
        Self::new(lo, ranks, diffs)
    }

    pub fn zero() -> Self {
        GradedComplex {
            min_degree: 0,
            ranks: Vec::new(),
            differentials: Vec::new(),
        }
    }

    /// `Z^rank` in a single degree.
    pub fn concentrated(degree: i64, rank: usize) -> Self {
        GradedComplex {
            min_degree: degree,
            ranks: vec![rank],
            differentials: Vec::new(),
        }
    }

    /// `Z --d--> Z` in degrees `degree + 1`, `degree`.
    pub fn two_term(degree: i64, d: IntMatrix) -> Result<Self> {
        let ranks = vec![d.rows(), d.cols()];
        Self::new(degree, ranks, vec![d])
    }

    /// The Moore complex `Z --n--> Z` in degrees 1, 0, with `H_0 = Z/n`.
    pub fn moore(n: i64) -> Self {
        Self::two_term(0, IntMatrix::from_i64(&[&[n]])).expect("1x1 two-term complex")
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> RangeInclusive<i64> {
        self.min_degree..=self.max_degree()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differentials(&self) -> &[IntMatrix] {
        &self.differentials
    }

    pub fn rank(&self, n: i64) -> usize {
        if n < self.min_degree || n > self.max_degree() {
            0
        } else {
            self.ranks[(n - self.min_degree) as usize]
        }
    }

    /// `d_n: C_n -> C_{n-1}`, a `rank(n-1) x rank(n)` matrix.
    pub fn differential(&self, n: i64) -> IntMatrix {
        if n > self.min_degree && n <= self.max_degree() {
            self.differentials[(n - 1 - self.min_degree) as usize].clone()
        } else {
            IntMatrix::zeros(self.rank(n - 1), self.rank(n))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `(ΣX)_n = X_{n-1}`, `d_{ΣX} = -d_X`.
    pub fn suspend(&self) -> Self {
        GradedComplex {
            min_degree: self.min_degree + 1,
            ranks: self.ranks.clone(),
            differentials: self.differentials.iter().map(IntMatrix::neg).collect(),
        }
    }

    /// `Z_n / B_n`, with cycle representatives for each summand.
    pub fn homology(&self, n: i64) -> Homology {
        let cycles = kernel_matrix(&self.differential(n));
        let boundaries = self.differential(n + 1);
        let quotient = Subquotient::new(&cycles, &boundaries)
            .expect("boundaries are cycles in a validated complex");
        Homology { degree: n, quotient }
    }

    /// Every degree with non-zero homology.
    pub fn homology_groups(&self) -> Vec<(i64, FgAbelianGroup)> {
        self.degrees()
            .map(|n| (n, self.homology(n).group().clone()))
            .filter(|(_, g)| !g.is_trivial())
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_groups().is_empty()
    }

    /// `B_n = im(d_{n+1})`, always free of rank `rank(d_{n+1})`.
    pub fn boundary_rank(&self, n: i64) -> usize {
        super::lattice::Lattice::from_generators(&self.differential(n + 1)).rank()
    }

    /// `X ⊗ Z/d`; `d = 0` tensors with `Z`.
    pub fn tensor_cyclic(&self, d: u64) -> CyclicComplex {
        let modulus = BigInt::from(d);
        CyclicComplex {
            modulus: modulus.clone(),
            min_degree: self.min_degree,
            ranks: if d == 1 {
                vec![0; self.ranks.len()]
            } else {
                self.ranks.clone()
            },
            source: self.clone(),
            differentials: self
                .differentials
                .iter()
                .map(|m| m.reduce_mod(&modulus))
                .collect(),
        }
    }
}

/// `H_n` of a complex, retaining cycle representatives.
#[derive(Debug, Clone)]
pub struct Homology {
    pub degree: i64,
    quotient: Subquotient,
}

impl Homology {
    pub fn group(&self) -> &FgAbelianGroup {
        self.quotient.group()
    }

    /// Cycles representing the summand generators, as columns.
    pub fn generators(&self) -> &IntMatrix {
        self.quotient.generators()
    }

    /// Coordinates of the class of a cycle; `None` if `x` is not a cycle.
    pub fn class_of(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        self.quotient.class_of(x)
    }

    pub fn orders(&self) -> &[BigInt] {
        self.quotient.orders()
    }
}

/// A complex of `Z/d`-modules obtained by reducing a free complex mod `d`.
#[derive(Debug, Clone)]
pub struct CyclicComplex {
    pub modulus: BigInt,
    pub min_degree: i64,
    /// Number of `Z/d` summands in each degree (all zero when `d = 1`).
    pub ranks: Vec<usize>,
    pub differentials: Vec<IntMatrix>,
    source: GradedComplex,
}

impl CyclicComplex {
    /// Homology as an abelian group: cycles mod `d` over boundaries mod `d`.
    pub fn homology(&self, n: i64) -> FgAbelianGroup {
        let x = &self.source;
        let r = x.rank(n);
        let scalar = IntMatrix::scalar(r, self.modulus.clone());
        // x is a cycle mod d iff d_n x ∈ d Z^{r'}: project the kernel of [d_n | d I].
        let dn = x.differential(n);
        let wide = dn
            .hstack(&IntMatrix::scalar(dn.rows(), self.modulus.clone()))
            .expect("row counts agree");
        let k = kernel_matrix(&wide);
        let cycles = k.block(0, 0, r, k.cols()).hstack(&scalar).expect("same rows");
        let boundaries = x.differential(n + 1).hstack(&scalar).expect("same rows");
        Subquotient::new(&cycles, &boundaries)
            .expect("boundaries are cycles mod d")
            .group()
            .clone()
    }

    pub fn is_exact(&self) -> bool {
        self.source
            .degrees()
            .all(|n| self.homology(n).is_trivial())
    }
}

/// A degree-0 chain map. Components are stored for degrees where both
/// source and target are non-zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: GradedComplex,
    target: GradedComplex,
    components: BTreeMap<i64, IntMatrix>,
}

fn degree_span(a: &GradedComplex, b: &GradedComplex) -> RangeInclusive<i64> {
    a.min_degree().min(b.min_degree())..=a.max_degree().max(b.max_degree())
}

impl ChainMap {
    pub fn new(
        source: GradedComplex,
        target: GradedComplex,
        components: BTreeMap<i64, IntMatrix>,
    ) -> Result<Self> {
        let map = Self::unchecked(source, target, components)?;
        map.check_commutes()?;
        Ok(map)
    }

    fn unchecked(
        source: GradedComplex,
        target: GradedComplex,
        components: BTreeMap<i64, IntMatrix>,
    ) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for (n, m) in components {
            let shape = (target.rank(n), source.rank(n));
            if m.shape() != shape {
                return Err(Error::DimensionMismatch(format!(
                    "component in degree {n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    shape.0,
                    shape.1
                )));
            }
            if shape.0 > 0 && shape.1 > 0 {
                kept.insert(n, m);
            }
        }
        Ok(ChainMap {
            source,
            target,
            components: kept,
        })
    }

    /// Components `f_n` for `n = min_degree, min_degree + 1, ...`.
    pub fn from_components(
        source: GradedComplex,
        target: GradedComplex,
        min_degree: i64,
        components: Vec<IntMatrix>,
    ) -> Result<Self> {
        let map = components
            .into_iter()
            .enumerate()
            .map(|(i, m)| (min_degree + i as i64, m))
            .collect();
        Self::new(source, target, map)
    }

    fn check_commutes(&self) -> Result<()> {
        let span = degree_span(&self.source, &self.target);
        for n in *span.start()..=*span.end() + 1 {
            let lhs = self.component(n - 1).mul(&self.source.differential(n))?;
            let rhs = self.target.differential(n).mul(&self.component(n))?;
            if lhs != rhs {
                return Err(Error::NotAChainMap { degree: n });
            }
        }
        Ok(())
    }

    pub fn zero(source: GradedComplex, target: GradedComplex) -> Self {
        ChainMap {
            source,
            target,
            components: BTreeMap::new(),
        }
    }

    pub fn identity(x: &GradedComplex) -> Self {
        let components = x
            .degrees()
            .filter(|&n| x.rank(n) > 0)
            .map(|n| (n, IntMatrix::identity(x.rank(n))))
            .collect();
        ChainMap {
            source: x.clone(),
            target: x.clone(),
            components,
        }
    }

    pub fn source(&self) -> &GradedComplex {
        &self.source
    }

    pub fn target(&self) -> &GradedComplex {
        &self.target
    }

    /// `f_n`, zero outside the stored degrees.
    pub fn component(&self, n: i64) -> IntMatrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.target.rank(n), self.source.rank(n)))
    }

    pub fn components(&self) -> &BTreeMap<i64, IntMatrix> {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(IntMatrix::is_zero)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ChainMap) -> Result<ChainMap> {
        if self.target != next.source {
            return Err(Error::DimensionMismatch(
                "maps do not compose: target and source differ".into(),
            ));
        }
        let mut components = BTreeMap::new();
        for &n in self.components.keys() {
            components.insert(n, next.component(n).mul(&self.component(n))?);
        }
        Self::unchecked(self.source.clone(), next.target.clone(), components)
    }

    /// `(Σf)_n = f_{n-1}` between the suspensions.
    pub fn suspend(&self) -> ChainMap {
        ChainMap {
            source: self.source.suspend(),
            target: self.target.suspend(),
            components: self
                .components
                .iter()
                .map(|(n, m)| (n + 1, m.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: i64) -> ChainMap {
        let c = BigInt::from(c);
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self
                .components
                .iter()
                .map(|(n, m)| {
                    let scaled = IntMatrix::from_vec(
                        m.rows(),
                        m.cols(),
                        m.entries().iter().map(|x| x * &c).collect(),
                    )
                    .expect("same shape");
                    (*n, scaled)
                })
                .collect(),
        }
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::DimensionMismatch("maps have different endpoints".into()));
        }
        let mut components = BTreeMap::new();
        for n in self.components.keys().chain(other.components.keys()) {
            components.insert(*n, self.component(*n).sub(&other.component(*n))?);
        }
        Self::unchecked(self.source.clone(), self.target.clone(), components)
    }

    /// The map `H_n(source) -> H_n(target)` on Smith generators.
    pub fn induced_homology_map(&self, n: i64) -> InducedMap {
        let hs = self.source.homology(n);
        let ht = self.target.homology(n);
        let f = self.component(n);
        let gens = hs.generators();
        let mut matrix = IntMatrix::zeros(ht.group().generator_count(), gens.cols());
        for j in 0..gens.cols() {
            let image = f.mul_vec(&gens.column(j)).expect("component shape");
            let class = ht.class_of(&image).expect("chain maps send cycles to cycles");
            for (i, v) in class.into_iter().enumerate() {
                matrix[(i, j)] = v;
            }
        }
        InducedMap {
            degree: n,
            source: hs.group().clone(),
            target: ht.group().clone(),
            matrix,
        }
    }

    /// Zero on homology in every degree.
    pub fn is_ghost(&self) -> bool {
        self.source
            .degrees()
            .all(|n| self.source.rank(n) == 0 || self.induced_homology_map(n).is_zero())
    }

    /// Solves `f_n = d_{n+1} h_n + h_{n-1} d_n` for `h_n: S_n -> T_{n+1}`.
    ///
    /// Returns `None` exactly when the linear system has no integer solution.
    pub fn null_homotopy(&self) -> Option<Homotopy> {
        let s = &self.source;
        let t = &self.target;
        let lo = s.min_degree() - 1;
        let hi = s.max_degree() + 1;
        // Unknown blocks h_n for every n with both ends non-zero.
        let mut offsets = BTreeMap::new();
        let mut vars = 0usize;
        for n in lo..=hi {
            let (rows, cols) = (t.rank(n + 1), s.rank(n));
            if rows > 0 && cols > 0 {
                offsets.insert(n, vars);
                vars += rows * cols;
            }
        }
        let var = |n: i64, l: usize, j: usize| -> Option<usize> {
            offsets.get(&n).map(|off| off + l * s.rank(n) + j)
        };

        let mut eq_rows: Vec<Vec<(usize, BigInt)>> = Vec::new();
        let mut rhs: Vec<BigInt> = Vec::new();
        for n in s.degrees() {
            let (tr, sr) = (t.rank(n), s.rank(n));
            if tr == 0 || sr == 0 {
                continue;
            }
            let f = self.component(n);
            let dt = t.differential(n + 1);
            let ds = s.differential(n);
            for i in 0..tr {
                for j in 0..sr {
                    let mut row = Vec::new();
                    for l in 0..t.rank(n + 1) {
                        if let Some(v) = var(n, l, j) {
                            if !dt[(i, l)].is_zero() {
                                row.push((v, dt[(i, l)].clone()));
                            }
                        }
                    }
                    for l in 0..s.rank(n - 1) {
                        if let Some(v) = var(n - 1, i, l) {
                            if !ds[(l, j)].is_zero() {
                                row.push((v, ds[(l, j)].clone()));
                            }
                        }
                    }
                    eq_rows.push(row);
                    rhs.push(f[(i, j)].clone());
                }
            }
        }

        let mut a = IntMatrix::zeros(eq_rows.len(), vars);
        for (r, row) in eq_rows.iter().enumerate() {
            for (c, v) in row {
                a[(r, *c)] += v;
            }
        }
        let x = solve_diophantine(&a, &rhs).ok()?.particular?;
        let mut components = BTreeMap::new();
        for (&n, &off) in &offsets {
            let (rows, cols) = (t.rank(n + 1), s.rank(n));
            let block = IntMatrix::from_vec(rows, cols, x[off..off + rows * cols].to_vec())
                .expect("block size");
            components.insert(n, block);
        }
        Some(Homotopy { components })
    }
}

/// `H_n(f)` written in the Smith generators of source and target homology.
/// Rows belonging to torsion summands are reduced mod their order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMap {
    pub degree: i64,
    pub source: FgAbelianGroup,
    pub target: FgAbelianGroup,
    pub matrix: IntMatrix,
}

impl InducedMap {
    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Surjective onto the target group.
    pub fn is_surjective(&self) -> bool {
        // The image together with the relations must span every generator.
        let rel = self.target.relations();
        let gens = self.matrix.hstack(&rel).expect("same rows");
        super::lattice::Lattice::from_generators(&gens).rank() == self.target.generator_count()
            && super::lattice::Lattice::from_generators(&gens).is_saturated()
    }
}

/// A chain homotopy: `h_n: S_n -> T_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homotopy {
    pub components: BTreeMap<i64, IntMatrix>,
}

impl Homotopy {
    pub fn component(&self, n: i64, source: &GradedComplex, target: &GradedComplex) -> IntMatrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(target.rank(n + 1), source.rank(n)))
    }

    /// Checks `f_n = d_{n+1} h_n + h_{n-1} d_n` in every degree by direct
    /// matrix arithmetic.
    pub fn witnesses(&self, f: &ChainMap) -> bool {
        let (s, t) = (f.source(), f.target());
        let span = degree_span(s, t);
        (*span.start() - 1..=*span.end() + 1).all(|n| {
            let dh = t.differential(n + 1).mul(&self.component(n, s, t));
            let hd = self.component(n - 1, s, t).mul(&s.differential(n));
            match (dh, hd) {
                (Ok(a), Ok(b)) => a.add(&b).is_ok_and(|sum| sum == f.component(n)),
                _ => false,
            }
        })
    }

    pub fn max_abs(&self) -> BigInt {
        self.components
            .values()
            .map(IntMatrix::max_abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

/// The mapping cone of `f: X -> Y` with its structure maps
/// `Y -> cone(f) -> ΣX`.
#[derive(Debug, Clone)]
pub struct Cone {
    pub complex: GradedComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

/// `cone(f)_n = Y_n ⊕ X_{n-1}` with differential `[[d_Y, f], [0, -d_X]]`.
pub fn cone(f: &ChainMap) -> Cone {
    let (x, y) = (f.source(), f.target());
    let rank = |n: i64| y.rank(n) + x.rank(n - 1);
    let lo = y.min_degree().min(x.min_degree() + 1);
    let hi = y.max_degree().max(x.max_degree() + 1);
    let complex = GradedComplex::from_fn(lo, hi, rank, |n| {
        let mut d = IntMatrix::zeros(rank(n - 1), rank(n));
        d.set_block(0, 0, &y.differential(n));
        d.set_block(0, y.rank(n), &f.component(n - 1));
        d.set_block(y.rank(n - 1), y.rank(n), &x.differential(n - 1).neg());
        d
    })
    .expect("the cone of a chain map is a complex");

    let mut inc = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for n in lo..=hi {
        let mut i = IntMatrix::zeros(rank(n), y.rank(n));
        i.set_block(0, 0, &IntMatrix::identity(y.rank(n)));
        inc.insert(n, i);
        let mut p = IntMatrix::zeros(x.rank(n - 1), rank(n));
        p.set_block(0, y.rank(n), &IntMatrix::identity(x.rank(n - 1)));
        proj.insert(n, p);
    }
    let inclusion = ChainMap::new(y.clone(), complex.clone(), inc).expect("inclusion is a chain map");
    let projection =
        ChainMap::new(complex.clone(), x.suspend(), proj).expect("projection is a chain map");
    Cone {
        complex,
        inclusion,
        projection,
    }
}

/// The lattice of all chain maps `X -> Y`, with a size-reduced basis.
#[derive(Debug, Clone)]
pub struct ChainMapLattice {
    source: GradedComplex,
    target: GradedComplex,
    basis: Vec<ChainMap>,
}

impl ChainMapLattice {
    pub fn new(x: &GradedComplex, y: &GradedComplex) -> Self {
        let span = degree_span(x, y);
        let mut offsets = BTreeMap::new();
        let mut vars = 0usize;
        for n in span.clone() {
            let (r, c) = (y.rank(n), x.rank(n));
            if r > 0 && c > 0 {
                offsets.insert(n, vars);
                vars += r * c;
            }
        }
        // f_{n-1} dX_n - dY_n f_n = 0, entrywise.
        let mut rows: Vec<Vec<(usize, BigInt)>> = Vec::new();
        for n in *span.start()..=*span.end() + 1 {
            let dx = x.differential(n);
            let dy = y.differential(n);
            for i in 0..y.rank(n - 1) {
                for j in 0..x.rank(n) {
                    let mut row = Vec::new();
                    if let Some(off) = offsets.get(&(n - 1)) {
                        for l in 0..x.rank(n - 1) {
                            if !dx[(l, j)].is_zero() {
                                row.push((off + i * x.rank(n - 1) + l, dx[(l, j)].clone()));
                            }
                        }
                    }
                    if let Some(off) = offsets.get(&n) {
                        for l in 0..y.rank(n) {
                            if !dy[(i, l)].is_zero() {
                                row.push((off + l * x.rank(n) + j, -dy[(i, l)].clone()));
                            }
                        }
                    }
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
        let mut a = IntMatrix::zeros(rows.len(), vars);
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row {
                a[(r, *c)] += v;
            }
        }
        let mut kernel = kernel_matrix(&a).columns();
        reduce_basis(&mut kernel);
        let basis = kernel
            .into_iter()
            .map(|v| {
                let comps = offsets
                    .iter()
                    .map(|(&n, &off)| {
                        let (r, c) = (y.rank(n), x.rank(n));
                        let m = IntMatrix::from_vec(r, c, v[off..off + r * c].to_vec())
                            .expect("block size");
                        (n, m)
                    })
                    .collect();
                ChainMap::unchecked(x.clone(), y.clone(), comps).expect("block shapes")
            })
            .collect();
        ChainMapLattice {
            source: x.clone(),
            target: y.clone(),
            basis,
        }
    }

    pub fn basis(&self) -> &[ChainMap] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Integer combination of the basis with coefficients uniform in `[-bound, bound]`.
    pub fn sample<R: Rng>(&self, rng: &mut R, bound: i64) -> ChainMap {
        let mut acc: BTreeMap<i64, IntMatrix> = BTreeMap::new();
        for b in &self.basis {
            let c: i64 = rng.random_range(-bound..=bound);
            if c == 0 {
                continue;
            }
            for (n, m) in b.scale(c).components {
                let slot = acc
                    .entry(n)
                    .or_insert_with(|| IntMatrix::zeros(m.rows(), m.cols()));
                *slot = slot.add(&m).expect("same shape");
            }
        }
        ChainMap::unchecked(self.source.clone(), self.target.clone(), acc).expect("block shapes")
    }
}

/// A seeded random chain map `X -> Y`; the zero map when none other exists.
pub fn sample_chain_map(x: &GradedComplex, y: &GradedComplex, seed: u64, bound: i64) -> Result<ChainMap> {
    if bound < 1 {
        return Err(Error::InvalidArgument(format!("bound must be at least 1, got {bound}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(ChainMapLattice::new(x, y).sample(&mut rng, bound))
}

/// The ghost `M -> ΣM` out of the Moore complex `Z --n--> Z`, identity on
/// the degree-1 group. Not null-homotopic for `|n| >= 2`.
pub fn moore_ghost(n: i64) -> ChainMap {
    let m = GradedComplex::moore(n);
    let sm = m.suspend();
    let mut comps = BTreeMap::new();
    comps.insert(1, IntMatrix::identity(1));
    ChainMap::new(m, sm, comps).expect("moore ghost is a chain map")
}
