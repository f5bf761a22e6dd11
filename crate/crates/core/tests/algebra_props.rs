use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ghostlength::zcomplex::lattice::{kernel_matrix, Lattice, Subquotient};
use ghostlength::zcomplex::random::{random_complex, random_matrix, ComplexParams};
use ghostlength::zcomplex::{
    cone, sample_chain_map, smith_normal_form, solve_diophantine, ChainMap, InducedMap, IntMatrix,
};

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (0usize..=6, 0usize..=6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
            IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

/// Exactness of `A --alpha--> G --beta--> B` on presented groups.
fn exact_at(alpha: &InducedMap, beta: &InducedMap) -> bool {
    let rg = alpha.target.relations();
    let rb = beta.target.relations();
    let image = alpha.matrix.hstack(&rg).unwrap();
    let k = kernel_matrix(&beta.matrix.hstack(&rb).unwrap());
    let kernel = k.block(0, 0, beta.matrix.cols(), k.cols());
    let kernel_lattice = Lattice::from_generators(&kernel);
    image.columns().iter().all(|v| kernel_lattice.contains(v))
        && Subquotient::new(&kernel, &image).unwrap().is_trivial()
}

fn random_map(seed: u64) -> ChainMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = ComplexParams::default();
    let x = random_complex(&mut rng, &params);
    let mut y = random_complex(&mut rng, &params);
    if seed.is_multiple_of(3) {
        y = y.suspend();
    }
    sample_chain_map(&x, &y, seed ^ 0x9e37, 3).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn smith_form_is_a_decomposition(a in small_matrix()) {
        let d = smith_normal_form(&a);
        prop_assert_eq!(d.u.mul(&d.s).unwrap().mul(&d.v).unwrap(), a.clone());
        prop_assert!(d.u.determinant().unwrap().abs().is_one());
        prop_assert!(d.v.determinant().unwrap().abs().is_one());
        let f = d.invariant_factors();
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(f.iter().all(|x| x.is_positive()));
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j || i >= d.rank {
                    prop_assert!(d.s[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn diophantine_matches_exhaustive_search(
        rows in 1usize..=3,
        cols in 1usize..=3,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, rows, cols, 4);
        let b: Vec<BigInt> = random_matrix(&mut rng, rows, 1, 4).column(0);
        let sol = solve_diophantine(&a, &b).unwrap();
        if let Some(x) = &sol.particular {
            prop_assert_eq!(a.mul_vec(x).unwrap(), b.clone());
        }
        for k in &sol.kernel {
            prop_assert!(a.mul_vec(k).unwrap().iter().all(Zero::is_zero));
        }
        let rank = Lattice::from_generators(&a).rank();
        prop_assert_eq!(sol.kernel.len(), cols - rank);

        let bound = 4i64;
        let mut found = false;
        let mut x = vec![-bound; cols];
        'search: loop {
            let xv: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
            if a.mul_vec(&xv).unwrap() == b {
                found = true;
                break;
            }
            for slot in x.iter_mut() {
                if *slot < bound {
                    *slot += 1;
                    continue 'search;
                }
                *slot = -bound;
            }
            break;
        }
        if found {
            prop_assert!(sol.particular.is_some());
        }
    }

    #[test]
    fn sampled_maps_commute(seed in any::<u64>()) {
        let f = random_map(seed);
        let (s, t) = (f.source(), f.target());
        let lo = s.min_degree().min(t.min_degree());
        let hi = s.max_degree().max(t.max_degree());
        for n in lo..=hi + 1 {
            let lhs = f.component(n - 1).mul(&s.differential(n)).unwrap();
            let rhs = t.differential(n).mul(&f.component(n)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn null_homotopic_maps_are_ghosts(seed in any::<u64>()) {
        let f = random_map(seed);
        if let Some(h) = f.null_homotopy() {
            prop_assert!(h.witnesses(&f));
            prop_assert!(f.is_ghost());
        }
    }

    #[test]
    fn cone_long_exact_sequence(seed in any::<u64>()) {
        let f = random_map(seed);
        let c = cone(&f);
        let sf = f.suspend();
        let lo = c.complex.min_degree().min(f.source().min_degree()) - 1;
        let hi = c.complex.max_degree().max(f.target().max_degree()) + 1;
        for n in lo..=hi {
            let fy = f.induced_homology_map(n);
            let iy = c.inclusion.induced_homology_map(n);
            let pc = c.projection.induced_homology_map(n);
            let sfx = sf.induced_homology_map(n);
            prop_assert!(exact_at(&fy, &iy), "at H_{}(Y)", n);
            prop_assert!(exact_at(&iy, &pc), "at H_{}(cone)", n);
            prop_assert!(exact_at(&pc, &sfx), "at H_{}(ΣX)", n);
        }
    }

    #[test]
    fn homology_ranks_add_up(seed in any::<u64>()) {
        // Euler characteristic: sum of (-1)^n rank C_n = sum of (-1)^n rank H_n
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_complex(&mut rng, &ComplexParams::default());
        let sign = |n: i64| if n % 2 == 0 { 1i64 } else { -1 };
        let chains: i64 = x.degrees().map(|n| sign(n) * x.rank(n) as i64).sum();
        let homology: i64 = x.degrees().map(|n| sign(n) * x.homology(n).group().rank as i64).sum();
        prop_assert_eq!(chains, homology);
    }
}

#[test]
fn homotopy_system_finds_planted_homotopy() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let params = ComplexParams::default();
    for _ in 0..100 {
        let x = random_complex(&mut rng, &params);
        let y = random_complex(&mut rng, &params);
        // f = d h + h d for a random h is always a null-homotopic chain map
        let lo = x.min_degree().min(y.min_degree()) - 1;
        let hi = x.max_degree().max(y.max_degree()) + 1;
        let h: BTreeMap<i64, IntMatrix> = (lo..=hi)
            .map(|n| (n, random_matrix(&mut rng, y.rank(n + 1), x.rank(n), 2)))
            .collect();
        let get = |n: i64| h.get(&n).cloned().unwrap_or_else(|| IntMatrix::zeros(y.rank(n + 1), x.rank(n)));
        let comps: BTreeMap<i64, IntMatrix> = (lo..=hi)
            .map(|n| {
                let a = y.differential(n + 1).mul(&get(n)).unwrap();
                let b = get(n - 1).mul(&x.differential(n)).unwrap();
                (n, a.add(&b).unwrap())
            })
            .collect();
        let f = ChainMap::new(x, y, comps).unwrap();
        let found = f.null_homotopy().expect("planted homotopy exists");
        assert!(found.witnesses(&f));
        assert!(f.is_ghost());
    }
}
