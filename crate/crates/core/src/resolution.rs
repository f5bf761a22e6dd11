//! The ghost projective class for free complexes over the integers:
//! ghost-projective covers, Adams towers, length certificates and the
//! null-homotopy check for composites of ghosts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::zcomplex::io::{chain_map_to_value, complex_to_value, HomotopyDoc};
use crate::zcomplex::lattice::{kernel_matrix, reduce_basis, solve_diophantine, Lattice};
use crate::zcomplex::random::{random_complex, ComplexParams};
use crate::zcomplex::{
    cone, moore_ghost, pdim_fg_abelian, ChainMap, ChainMapLattice, GradedComplex, Homotopy, IntMatrix,
};

/// Torsion-free homology in every degree. Boundaries of a free complex over
/// the integers are free, so this is the whole condition.
pub fn is_ghost_projective(x: &GradedComplex) -> bool {
    x.degrees().all(|n| x.homology(n).group().is_free())
}

/// `p: P -> X` with `P` ghost projective and `H_*(p)` onto, together with
/// the cofibre `X -> cone(p)`, which is then a ghost.
#[derive(Debug, Clone)]
pub struct GhostCover {
    pub p_complex: GradedComplex,
    pub p: ChainMap,
    pub cofibre: GradedComplex,
    pub cofibre_map: ChainMap,
}

impl GhostCover {
    /// The three defining properties, checked from scratch.
    pub fn verify(&self) -> std::result::Result<(), String> {
        if !is_ghost_projective(&self.p_complex) {
            return Err("cover is not ghost projective".into());
        }
        for n in self.p.target().degrees() {
            if !self.p.induced_homology_map(n).is_surjective() {
                return Err(format!("H_{n}(p) is not surjective"));
            }
        }
        if !self.cofibre_map.is_ghost() {
            return Err("map to the cofibre is not a ghost".into());
        }
        Ok(())
    }
}

/// Preimages under `d` of each column of `targets`.
fn preimages(d: &IntMatrix, targets: &IntMatrix) -> IntMatrix {
    let cols: Vec<_> = targets
        .columns()
        .iter()
        .map(|b| {
            solve_diophantine(d, b)
                .ok()
                .and_then(|s| s.particular)
                .expect("boundary basis lies in the image")
        })
        .collect();
    IntMatrix::from_columns(d.cols(), &cols)
}

/// `P_n = P^{B_n} ⊕ P^{H_n} ⊕ P^{B_{n-1}}`, where the first two summands
/// cover the cycles and the last maps onto chosen preimages of a basis of
/// `B_{n-1}`. The differential is the identity from `P^{B_{n-1}}` in degree
/// `n` onto `P^{B_{n-1}}` in degree `n - 1` and zero elsewhere.
pub fn ghost_cover(x: &GradedComplex) -> GhostCover {
    if x.is_zero() {
        let zero = GradedComplex::zero();
        return GhostCover {
            p_complex: zero.clone(),
            p: ChainMap::zero(zero, x.clone()),
            cofibre: x.clone(),
            cofibre_map: ChainMap::identity(x),
        };
    }
    let (lo, hi) = (x.min_degree(), x.max_degree());
    let boundary_basis: BTreeMap<i64, IntMatrix> = (lo - 1..=hi)
        .map(|n| (n, Lattice::from_generators(&x.differential(n + 1)).basis().clone()))
        .collect();
    let homology_gens: BTreeMap<i64, IntMatrix> = (lo..=hi)
        .map(|n| (n, x.homology(n).generators().clone()))
        .collect();
    let beta = |n: i64| boundary_basis.get(&n).map_or(0, IntMatrix::cols);
    let eta = |n: i64| homology_gens.get(&n).map_or(0, IntMatrix::cols);
    let rank = |n: i64| beta(n) + eta(n) + beta(n - 1);

    let p_complex = GradedComplex::from_fn(lo, hi, rank, |n| {
        let mut d = IntMatrix::zeros(rank(n - 1), rank(n));
        d.set_block(0, beta(n) + eta(n), &IntMatrix::identity(beta(n - 1)));
        d
    })
    .expect("cover differential squares to zero");

    let mut components = BTreeMap::new();
    for n in lo..=hi {
        let mut p = IntMatrix::zeros(x.rank(n), rank(n));
        p.set_block(0, 0, &boundary_basis[&n]);
        p.set_block(0, beta(n), &homology_gens[&n]);
        p.set_block(
            0,
            beta(n) + eta(n),
            &preimages(&x.differential(n), &boundary_basis[&(n - 1)]),
        );
        components.insert(n, p);
    }
    let p = ChainMap::new(p_complex.clone(), x.clone(), components).expect("cover is a chain map");
    let c = cone(&p);
    GhostCover {
        p_complex,
        p,
        cofibre: c.complex,
        cofibre_map: c.inclusion,
    }
}

/// Stages `X^0 = X, X^1, ..., X^k` with `X^{i+1}` the suspension of the
/// degreewise kernel of the cover `P^i -> X^i`.
#[derive(Debug, Clone)]
pub struct AdamsTower {
    pub stages: Vec<GradedComplex>,
    pub covers: Vec<GhostCover>,
}

/// The subcomplex `ker(p_n)` of the source of `p`, on saturated kernel bases.
pub fn degreewise_kernel(p: &ChainMap) -> GradedComplex {
    let s = p.source();
    if s.is_zero() {
        return GradedComplex::zero();
    }
    let bases: BTreeMap<i64, IntMatrix> = s
        .degrees()
        .map(|n| {
            let mut cols = kernel_matrix(&p.component(n)).columns();
            reduce_basis(&mut cols);
            (n, IntMatrix::from_columns(s.rank(n), &cols))
        })
        .collect();
    let (lo, hi) = (s.min_degree(), s.max_degree());
    let rank = |n: i64| bases.get(&n).map_or(0, IntMatrix::cols);
    GradedComplex::from_fn(lo, hi, rank, |n| {
        let image = s.differential(n).mul(&bases[&n]).expect("shapes");
        let cols: Vec<_> = image
            .columns()
            .iter()
            .map(|v| solve_in_basis(&bases[&(n - 1)], v))
            .collect();
        IntMatrix::from_columns(rank(n - 1), &cols)
    })
    .expect("restriction of a differential")
}

/// The unique `y` with `basis * y = v`, for `basis` of full column rank.
fn solve_in_basis(basis: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    solve_diophantine(basis, v)
        .ok()
        .and_then(|s| s.particular)
        .expect("vector lies in the lattice")
}

/// Builds `k` covers and `k + 1` stages.
pub fn adams_tower(x: &GradedComplex, k: usize) -> Result<AdamsTower> {
    if k == 0 {
        return Err(Error::InvalidArgument("tower depth must be at least 1".into()));
    }
    let mut stages = vec![x.clone()];
    let mut covers = Vec::with_capacity(k);
    for _ in 0..k {
        let cover = ghost_cover(stages.last().expect("non-empty"));
        stages.push(degreewise_kernel(&cover.p).suspend());
        covers.push(cover);
    }
    Ok(AdamsTower { stages, covers })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageSummary {
    pub min_degree: i64,
    pub ranks: Vec<usize>,
    pub ghost_projective: bool,
}

/// Evidence that `X` has ghost-length at most `k`.
#[derive(Debug, Clone, Serialize)]
pub struct LengthCertificate {
    pub k: usize,
    pub stages: Vec<StageSummary>,
}

fn check_pdim(x: &GradedComplex, k: usize) -> Result<()> {
    for n in x.degrees() {
        let h = x.homology(n);
        if pdim_fg_abelian(h.group()) as usize >= k {
            return Err(Error::Precondition(format!(
                "degree {n}: H_{n} = {} has projective dimension {}, not less than {k}",
                h.group(),
                pdim_fg_abelian(h.group())
            )));
        }
    }
    Ok(())
}

/// Runs the tower to stage `k - 1` and confirms that stage is ghost projective.
pub fn certify_length(x: &GradedComplex, k: usize) -> Result<LengthCertificate> {
    if k == 0 {
        return Err(Error::InvalidArgument("length must be at least 1".into()));
    }
    check_pdim(x, k)?;
    let stages = if k == 1 {
        vec![x.clone()]
    } else {
        adams_tower(x, k - 1)?.stages
    };
    let summaries: Vec<StageSummary> = stages
        .iter()
        .map(|s| StageSummary {
            min_degree: s.min_degree(),
            ranks: s.ranks().to_vec(),
            ghost_projective: is_ghost_projective(s),
        })
        .collect();
    if !summaries.last().expect("non-empty").ghost_projective {
        return Err(Error::Falsified(format!(
            "stage {} of the Adams tower has torsion in homology",
            k - 1
        )));
    }
    Ok(LengthCertificate { k, stages: summaries })
}

/// Provenance written into counterexample bundles.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct TrialMeta {
    pub seed: Option<u64>,
    pub trial: Option<u64>,
    pub k: usize,
}

/// Complexes and maps of a failed check, in the file format.
pub fn counterexample_bundle(meta: TrialMeta, ghosts: &[ChainMap]) -> Value {
    json!({
        "metadata": meta,
        "source": ghosts.first().map(|g| complex_to_value(g.source())),
        "maps": ghosts.iter().map(chain_map_to_value).collect::<Vec<_>>(),
    })
}

/// A composite of ghosts with a verified null-homotopy.
#[derive(Debug, Clone)]
pub struct KellyWitness {
    pub composite: ChainMap,
    pub homotopy: Homotopy,
}

impl KellyWitness {
    pub fn homotopy_json(&self) -> Value {
        serde_json::to_value(HomotopyDoc::from_homotopy(&self.homotopy)).expect("serializes")
    }
}

pub fn kelly_check(x: &GradedComplex, ghosts: &[ChainMap], k: usize) -> Result<KellyWitness> {
    kelly_check_with(TrialMeta { k, ..TrialMeta::default() }, x, ghosts, k)
}

/// The `k`-fold composite of ghosts out of `x` is null-homotopic when every
/// homology group of `x` has projective dimension below `k`. Failure to find
/// the homotopy is reported as a falsification carrying the bundle.
pub fn kelly_check_with(meta: TrialMeta, x: &GradedComplex, ghosts: &[ChainMap], k: usize) -> Result<KellyWitness> {
    if ghosts.len() != k {
        return Err(Error::Precondition(format!("expected {k} maps, got {}", ghosts.len())));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if ghosts[0].source() != x {
        return Err(Error::Precondition("map 0 does not start at the given complex".into()));
    }
    for (i, g) in ghosts.iter().enumerate() {
        if i > 0 && ghosts[i - 1].target() != g.source() {
            return Err(Error::Precondition(format!("maps {} and {i} do not compose", i - 1)));
        }
        if let Some(n) = g.source().degrees().find(|&n| !g.induced_homology_map(n).is_zero()) {
            return Err(Error::Precondition(format!("map {i} is not a ghost: non-zero on H_{n}")));
        }
    }
    check_pdim(x, k)?;
    let mut composite = ghosts[0].clone();
    for g in &ghosts[1..] {
        composite = composite.then(g)?;
    }
    match composite.null_homotopy() {
        Some(h) if h.witnesses(&composite) => Ok(KellyWitness {
            composite,
            homotopy: h,
        }),
        _ => Err(Error::Falsified(format!(
            "composite of {k} ghosts is not null-homotopic; counterexample: {}",
            counterexample_bundle(meta, ghosts)
        ))),
    }
}

/// Attempts per map when sampling ghosts by rejection.
pub const GHOST_SAMPLE_ATTEMPTS: usize = 64;
/// Coefficient bound on chain-map lattice coordinates while sampling.
pub const GHOST_SAMPLE_BOUND: i64 = 3;

/// A random ghost `x -> y`: the first non-zero ghost among
/// [`GHOST_SAMPLE_ATTEMPTS`] samples, else the zero map.
pub fn sample_ghost(x: &GradedComplex, y: &GradedComplex, rng: &mut ChaCha8Rng) -> ChainMap {
    let lattice = ChainMapLattice::new(x, y);
    if lattice.rank() > 0 {
        for _ in 0..GHOST_SAMPLE_ATTEMPTS {
            let f = lattice.sample(rng, GHOST_SAMPLE_BOUND);
            if !f.is_zero() && f.is_ghost() {
                return f;
            }
        }
    }
    ChainMap::zero(x.clone(), y.clone())
}

#[derive(Debug, Clone, Serialize)]
pub struct KellyTrial {
    pub trial: u64,
    pub ranks: Vec<Vec<usize>>,
    /// Maps in the chain that are non-zero.
    pub nonzero_ghosts: usize,
    /// Maps in the chain that are not null-homotopic on their own.
    pub essential_ghosts: usize,
    pub null_homotopic: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct KellySummary {
    pub seed: u64,
    pub k: usize,
    pub trials: u64,
    pub null_homotopic: u64,
    pub trials_with_nonzero_ghosts: u64,
    pub trials_with_essential_ghosts: u64,
    pub results: Vec<KellyTrial>,
}

/// The chain of `k` suspended Moore ghosts `M -> ΣM -> ... -> Σ^k M`.
pub fn moore_chain(k: usize) -> Vec<ChainMap> {
    let mut g = moore_ghost(2);
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(g.clone());
        g = g.suspend();
    }
    out
}

/// One trial: complexes and `k` composable ghosts drawn from the stream
/// `trial` of a ChaCha generator seeded with `seed`. Trial 0 of every run
/// for `k >= 2` is the Moore chain.
pub fn kelly_trial_maps(seed: u64, trial: u64, k: usize) -> Vec<ChainMap> {
    if trial == 0 && k >= 2 {
        return moore_chain(k);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let params = ComplexParams::default();
    let mut x = random_complex(&mut rng, &params);
    if k == 1 {
        // Only ghost projective sources satisfy the precondition at k = 1.
        while !is_ghost_projective(&x) {
            x = random_complex(&mut rng, &params);
        }
    }
    let mut maps = Vec::with_capacity(k);
    for _ in 0..k {
        let y = random_complex(&mut rng, &params);
        maps.push(sample_ghost(&x, &y, &mut rng));
        x = y;
    }
    maps
}

pub fn kelly_suite(seed: u64, trials: u64, k: usize) -> Result<KellySummary> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let mut results = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let maps = kelly_trial_maps(seed, trial, k);
        let x = maps[0].source().clone();
        let meta = TrialMeta {
            seed: Some(seed),
            trial: Some(trial),
            k,
        };
        kelly_check_with(meta, &x, &maps, k)?;
        let mut ranks = vec![x.ranks().to_vec()];
        ranks.extend(maps.iter().map(|m| m.target().ranks().to_vec()));
        results.push(KellyTrial {
            trial,
            ranks,
            nonzero_ghosts: maps.iter().filter(|m| !m.is_zero()).count(),
            essential_ghosts: maps.iter().filter(|m| m.null_homotopy().is_none()).count(),
            null_homotopic: true,
        });
    }
    Ok(KellySummary {
        seed,
        k,
        trials,
        null_homotopic: results.iter().filter(|r| r.null_homotopic).count() as u64,
        trials_with_nonzero_ghosts: results.iter().filter(|r| r.nonzero_ghosts > 0).count() as u64,
        trials_with_essential_ghosts: results.iter().filter(|r| r.essential_ghosts > 0).count() as u64,
        results,
    })
}
