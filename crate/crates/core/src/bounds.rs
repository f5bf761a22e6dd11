//! Lower and upper bounds on the ghost-length of `RP^n`.
//!
//! The cells `x^1, ..., x^n` of `H^*(RP^n)` form a DAG under the non-zero
//! `Sq^{2^k}` arrows. A chain of `c` arrows forces ghost-length at least
//! `c + 1`; counting `Sq^{16}` and above twice gives the weighted bound.
//! Everything below is a single forward pass over cells in increasing order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::steenrod::{edges_from, filtration_weight, SqEdge};

/// Default limit on the top cell of a [`CellDag`].
pub const DEFAULT_CELL_BUDGET: u64 = 1 << 22;

/// Largest dimension the exhaustive path oracle accepts.
pub const ORACLE_MAX_DIMENSION: i64 = 24;

/// Extra cells beyond `2n` inspected by [`monotone_bound`] when no horizon is given.
pub const DEFAULT_HORIZON_PAD: i64 = 64;

pub fn default_horizon(n: i64) -> i64 {
    (2 * n + DEFAULT_HORIZON_PAD).max(n)
}

/// `Sq^{2^k}` arrows between the cells of `RP^n`, stored in CSR form.
#[derive(Debug, Clone)]
pub struct CellDag {
    n: i64,
    /// `offsets[m]..offsets[m + 1]` indexes the arrows leaving cell `m`.
    offsets: Vec<u32>,
    exponents: Vec<u8>,
}

impl CellDag {
    pub fn build(n: i64) -> Result<Self> {
        Self::build_with_budget(n, DEFAULT_CELL_BUDGET)
    }

    pub fn build_with_budget(n: i64, budget: u64) -> Result<Self> {
        if n < -1 {
            return Err(Error::InvalidArgument(format!(
                "dimension must be at least -1, got {n}"
            )));
        }
        if n > 0 && n as u64 > budget {
            return Err(Error::Capacity { requested: n, budget });
        }
        let cells = (n + 1).max(0) as usize;
        let mut offsets = Vec::with_capacity(cells + 1);
        let mut exponents = Vec::new();
        offsets.push(0u32);
        for m in 0..cells as u64 {
            exponents.extend(edges_from(m, n.max(0) as u64).map(|e| e.k as u8));
            offsets.push(exponents.len() as u32);
        }
        Ok(CellDag {
            n,
            offsets,
            exponents,
        })
    }

    /// Top cell; `-1` for the empty complex.
    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn cell_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.exponents.len()
    }

    pub fn edges_from(&self, m: u64) -> impl Iterator<Item = SqEdge> + '_ {
        let range = match usize::try_from(m) {
            Ok(i) if i < self.cell_count() => {
                self.offsets[i] as usize..self.offsets[i + 1] as usize
            }
            _ => 0..0,
        };
        self.exponents[range].iter().map(move |&k| {
            let k = u32::from(k);
            SqEdge {
                source: m,
                k,
                target: m + (1u64 << k),
                weight: filtration_weight(k),
            }
        })
    }

    pub fn edges(&self) -> impl Iterator<Item = SqEdge> + '_ {
        (0..self.cell_count() as u64).flat_map(move |m| self.edges_from(m))
    }

    /// For each cell, the heaviest path ending there (0 when nothing hits it).
    pub fn longest_paths_ending(&self, weighted: bool) -> Vec<u32> {
        self.relax(weighted).0
    }

    /// Longest path in the whole DAG, in edges or in filtration weight.
    pub fn longest_path(&self, weighted: bool) -> u32 {
        self.longest_paths_ending(weighted)
            .into_iter()
            .max()
            .unwrap_or(0)
    }

    /// Forward DP. The second vector records the exponent of the last arrow of
    /// an optimal path into each cell, preferring the largest exponent on ties.
    fn relax(&self, weighted: bool) -> (Vec<u32>, Vec<Option<u8>>) {
        let cells = self.cell_count();
        let mut best = vec![0u32; cells];
        let mut last = vec![None::<u8>; cells];
        for m in 0..cells {
            let here = best[m];
            for &k in &self.exponents[self.offsets[m] as usize..self.offsets[m + 1] as usize] {
                let t = m + (1usize << k);
                let w = if weighted {
                    filtration_weight(u32::from(k))
                } else {
                    1
                };
                let cand = here + w;
                if cand > best[t] || (cand == best[t] && last[t].is_some_and(|prev| k > prev)) {
                    best[t] = cand;
                    last[t] = Some(k);
                }
            }
        }
        (best, last)
    }
}

fn running_max(values: &[u32]) -> Vec<u64> {
    let mut acc = 0u64;
    values
        .iter()
        .map(|&v| {
            acc = acc.max(u64::from(v));
            acc
        })
        .collect()
}

/// Bound for `RP^m_+` for every `m` in `-1..=n`, index `m + 1`.
fn bound_sequence(dag: &CellDag, weighted: bool) -> Vec<u64> {
    let mut out = Vec::with_capacity(dag.cell_count() + 1);
    out.push(0);
    out.extend(
        running_max(&dag.longest_paths_ending(weighted))
            .into_iter()
            .map(|v| v + 1),
    );
    out
}

/// Steenrod length of `RP^n_+`: one more than the longest chain of non-zero
/// operations, and `0` for the empty complex `n = -1`.
pub fn stl(n: i64) -> Result<u64> {
    let dag = CellDag::build(n)?;
    Ok(*bound_sequence(&dag, false).last().unwrap())
}

/// `stl(m)` for every `m` in `-1..=n_max`.
pub fn stl_sequence(n_max: i64) -> Result<Vec<u64>> {
    Ok(bound_sequence(&CellDag::build(n_max)?, false))
}

/// Lower bound counting `Sq^{2^k}` with `k >= 4` as two ghosts.
pub fn weighted_bound(n: i64) -> Result<u64> {
    let dag = CellDag::build(n)?;
    Ok(*bound_sequence(&dag, true).last().unwrap())
}

/// `RP^m / RP^n` has `m - n` cells, so `length(RP^n) >= length(RP^m) - (m - n)`.
/// Maximises that over `m` in `n..=horizon` using the weighted bound.
pub fn monotone_bound(n: i64, horizon: i64) -> Result<u64> {
    check_horizon(n, horizon)?;
    let dag = CellDag::build(horizon)?;
    Ok(monotone_from_weighted(&bound_sequence(&dag, true), n, horizon))
}

fn check_horizon(n: i64, horizon: i64) -> Result<()> {
    if n < -1 || horizon < n {
        return Err(Error::InvalidArgument(format!(
            "need -1 <= n <= horizon, got n = {n}, horizon = {horizon}"
        )));
    }
    Ok(())
}

fn monotone_from_weighted(weighted: &[u64], n: i64, horizon: i64) -> u64 {
    (n..=horizon)
        .map(|m| weighted[(m + 1) as usize] as i64 - (m - n))
        .max()
        .unwrap_or(0)
        .max(0) as u64
}

/// Upper bound `floor(n/4) + 2` from building `RP^n_+` four cells at a time.
/// `None` for the empty complex.
pub fn upper_bound(n: i64) -> Option<u64> {
    (n >= 0).then(|| (n / 4) as u64 + 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: i64,
    pub steenrod: u64,
    pub weighted: u64,
    pub monotone: u64,
    pub horizon: i64,
    pub upper: Option<u64>,
}

/// All four bounds for `RP^n` from one DAG built up to `horizon`.
pub fn bounds_report(n: i64, horizon: Option<i64>) -> Result<BoundsReport> {
    let horizon = horizon.unwrap_or_else(|| default_horizon(n));
    check_horizon(n, horizon)?;
    let dag = CellDag::build(horizon)?;
    let idx = (n + 1) as usize;
    let unweighted = bound_sequence(&dag, false);
    let weighted = bound_sequence(&dag, true);
    Ok(BoundsReport {
        n,
        steenrod: unweighted[idx],
        weighted: weighted[idx],
        monotone: monotone_from_weighted(&weighted, n, horizon),
        horizon,
        upper: upper_bound(n),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalTerm {
    pub cell: u64,
    /// One more than the longest chain of operations ending at `cell`.
    pub value: u64,
    /// Exponent `k` of the final `Sq^{2^k}` of a longest chain, largest on ties.
    pub last_move: Option<u32>,
}

/// Per-cell chain lengths in `RP^infinity` for cells `1..=n_max`.
///
/// Chains ending at cell `n` only pass through lower cells, so truncating at
/// `n_max` loses nothing.
pub fn fundamental_sequence(n_max: i64) -> Result<Vec<FundamentalTerm>> {
    if n_max < 1 {
        return Err(Error::InvalidArgument(format!(
            "fundamental sequence starts at cell 1, got n_max = {n_max}"
        )));
    }
    let dag = CellDag::build(n_max)?;
    let (best, last) = dag.relax(false);
    Ok((1..=n_max as usize)
        .map(|m| FundamentalTerm {
            cell: m as u64,
            value: u64::from(best[m]) + 1,
            last_move: last[m].map(u32::from),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VakilReport {
    pub n_max: i64,
    /// Run lengths of `stl(-1), stl(0), ..., stl(n_max)` that are known to be complete.
    pub completed: Vec<u64>,
    /// Length of a final run that continues past `n_max`, or 0.
    pub partial: u64,
}

/// Run lengths predicted for the Steenrod-length sequence: `2^k` repeated
/// `k + 1` times for `k = 0, 1, 2, ...`. The `k = 0` run is the single `0`.
pub fn vakil_pattern() -> impl Iterator<Item = u64> {
    (0u32..).flat_map(|k| std::iter::repeat_n(1u64 << k, k as usize + 1))
}

pub fn run_lengths(values: &[u64]) -> Vec<u64> {
    let mut runs: Vec<u64> = Vec::new();
    let mut prev = None;
    for &v in values {
        if prev == Some(v) {
            *runs.last_mut().unwrap() += 1;
        } else {
            runs.push(1);
            prev = Some(v);
        }
    }
    runs
}

/// Checks the run-length pattern of the Steenrod-length sequence.
///
/// A mismatch comes back as [`Error::Falsified`] naming the first bad run.
pub fn vakil_runs(n_max: i64) -> Result<VakilReport> {
    if n_max < 0 {
        return Err(Error::InvalidArgument(format!(
            "n_max must be non-negative, got {n_max}"
        )));
    }
    // One extra cell tells whether the final run ends exactly at n_max.
    let seq = stl_sequence(n_max + 1)?;
    let (within, next) = seq.split_at(seq.len() - 1);
    let mut runs = run_lengths(within);
    let partial = if within.last() == next.first() {
        runs.pop().unwrap_or(0)
    } else {
        0
    };
    let mut expected = vakil_pattern();
    for (i, &found) in runs.iter().enumerate() {
        let want = expected.next().unwrap();
        if found != want {
            return Err(Error::Falsified(format!(
                "run {i} of the Steenrod-length sequence has length {found}, expected {want}"
            )));
        }
    }
    let want = expected.next().unwrap();
    if partial > want {
        return Err(Error::Falsified(format!(
            "run {} of the Steenrod-length sequence has length at least {partial}, expected {want}",
            runs.len()
        )));
    }
    Ok(VakilReport {
        n_max,
        completed: runs,
        partial,
    })
}

/// Exhaustive DFS over every chain in `RP^n`, arrows decided by a Pascal
/// triangle mod 2. Independent of the DP and of the bit rule.
pub fn oracle_longest_path(n: i64, weighted: bool) -> Result<u64> {
    if n > ORACLE_MAX_DIMENSION {
        return Err(Error::Capacity {
            requested: n,
            budget: ORACLE_MAX_DIMENSION as u64,
        });
    }
    if n < 1 {
        return Ok(0);
    }
    let n = n as usize;
    let mut pascal = vec![vec![false; n + 1]; n + 1];
    for m in 0..=n {
        pascal[m][0] = true;
        for i in 1..=m {
            pascal[m][i] = pascal[m - 1][i - 1] ^ (i < m && pascal[m - 1][i]);
        }
    }
    let mut arrows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n + 1];
    for (m, out) in arrows.iter_mut().enumerate().skip(1) {
        let mut step = 1usize;
        let mut k = 0u32;
        while m + step <= n {
            if step <= m && pascal[m][step] {
                let w = if weighted && k >= 4 { 2 } else { 1 };
                out.push((m + step, w));
            }
            step <<= 1;
            k += 1;
        }
    }

    fn dfs(cell: usize, arrows: &[Vec<(usize, u64)>]) -> u64 {
        arrows[cell]
            .iter()
            .map(|&(t, w)| w + dfs(t, arrows))
            .max()
            .unwrap_or(0)
    }
    Ok((1..=n).map(|m| dfs(m, &arrows)).max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steenrod::binomial_mod2;
    use std::collections::BTreeSet;

    #[test]
    fn small_dags() {
        let d2: Vec<_> = CellDag::build(2).unwrap().edges().collect();
        assert_eq!(d2.len(), 1);
        assert_eq!((d2[0].source, d2[0].k, d2[0].target), (1, 0, 2));
        assert_eq!(CellDag::build(1).unwrap().edge_count(), 0);
        assert_eq!(CellDag::build(-1).unwrap().edge_count(), 0);
        assert!(CellDag::build(-2).is_err());
    }

    #[test]
    fn dag_for_8_matches_lucas_enumeration() {
        let got: BTreeSet<(u64, u64)> = CellDag::build(8)
            .unwrap()
            .edges()
            .map(|e| (e.source, e.target))
            .collect();
        let mut want = BTreeSet::new();
        for m in 1..=8u64 {
            for i in 1..=8u64 {
                if i.is_power_of_two() && m + i <= 8 && binomial_mod2(m, i) == 1 {
                    want.insert((m, m + i));
                }
            }
        }
        assert_eq!(got, want);
        // 1->2, 2->4, 3->4, 3->5, 4->8, 5->6, 6->8, 7->8
        assert_eq!(
            got.into_iter().collect::<Vec<_>>(),
            vec![(1, 2), (2, 4), (3, 4), (3, 5), (4, 8), (5, 6), (6, 8), (7, 8)]
        );
    }

    #[test]
    fn out_degree_bound() {
        let n = 300i64;
        let dag = CellDag::build(n).unwrap();
        for m in 1..n as u64 {
            let limit = (n as u64 - m).ilog2() + 1;
            assert!(dag.edges_from(m).count() as u32 <= limit);
        }
    }

    #[test]
    fn capacity_error() {
        match CellDag::build_with_budget(100, 50) {
            Err(Error::Capacity { requested, budget }) => {
                assert_eq!((requested, budget), (100, 50));
            }
            other => panic!("expected capacity error, got {other:?}"),
        }
        assert!(stl((DEFAULT_CELL_BUDGET + 1) as i64).is_err());
    }

    #[test]
    fn stl_examples() {
        assert_eq!(stl(-1).unwrap(), 0);
        assert_eq!(stl(0).unwrap(), 1);
        assert_eq!(stl(6).unwrap(), 3);
    }

    #[test]
    fn stl_monotone_with_unit_steps() {
        let seq = stl_sequence(5000).unwrap();
        for w in seq.windows(2) {
            assert!(w[0] <= w[1] && w[1] <= w[0] + 1);
        }
    }

    #[test]
    fn fundamental_examples() {
        let f = fundamental_sequence(16).unwrap();
        let vals: Vec<u64> = f.iter().map(|t| t.value).collect();
        assert_eq!(&vals[..7], &[1, 2, 1, 3, 2, 3, 1]);
        assert_eq!(f[1].value, 2);
        assert_eq!(f[1].last_move, Some(0));
        assert_eq!(f[0].last_move, None);
        // 16 is reached by 1->2->4->8->16 and by 3->5->6->10->12->16
        // (and nothing longer); see the DFS check below.
        assert_eq!(f[15].value, 6);
    }

    /// Longest chain ending at each cell by enumerating all chains.
    fn brute_force_ending(n: u64) -> Vec<u64> {
        fn walk(cell: u64, len: u64, n: u64, best: &mut [u64]) {
            best[cell as usize] = best[cell as usize].max(len);
            for e in edges_from(cell, n) {
                walk(e.target, len + 1, n, best);
            }
        }
        let mut best = vec![0u64; n as usize + 1];
        for start in 1..=n {
            walk(start, 0, n, &mut best);
        }
        best
    }

    #[test]
    fn fundamental_matches_enumeration() {
        let f = fundamental_sequence(40).unwrap();
        let brute = brute_force_ending(40);
        for t in &f {
            assert_eq!(t.value, brute[t.cell as usize] + 1, "cell {}", t.cell);
        }
    }

    #[test]
    fn last_move_is_an_optimal_predecessor() {
        let f = fundamental_sequence(2000).unwrap();
        for t in &f {
            if let Some(k) = t.last_move {
                let pred = t.cell - (1u64 << k);
                assert!(pred >= 1);
                assert!(crate::steenrod::sq_edge_exists(k, pred, t.cell));
                assert_eq!(f[pred as usize - 1].value + 1, t.value);
                // no optimal predecessor with a larger exponent
                for k2 in (k + 1)..64 {
                    let step = 1u64 << k2;
                    if step >= t.cell {
                        break;
                    }
                    let p = t.cell - step;
                    if crate::steenrod::sq_edge_exists(k2, p, t.cell) {
                        assert!(f[p as usize - 1].value + 1 < t.value);
                    }
                }
            } else {
                assert_eq!(t.value, 1);
            }
        }
    }

    #[test]
    fn stl_is_running_max_of_fundamental() {
        let f = fundamental_sequence(3000).unwrap();
        let seq = stl_sequence(3000).unwrap();
        let mut acc = 1;
        for t in &f {
            acc = acc.max(t.value);
            assert_eq!(seq[t.cell as usize + 1], acc);
        }
    }

    #[test]
    fn vakil_small() {
        let r = vakil_runs(15).unwrap();
        assert_eq!(r.completed, vec![1, 2, 2, 4, 4, 4]);
        assert_eq!(r.partial, 0);
        let r14 = vakil_runs(14).unwrap();
        assert_eq!(r14.completed, vec![1, 2, 2, 4, 4]);
        assert_eq!(r14.partial, 3);
        let r0 = vakil_runs(0).unwrap();
        assert_eq!(r0.completed, vec![1]);
        assert_eq!(r0.partial, 1);
    }

    #[test]
    fn vakil_pattern_prefix() {
        let p: Vec<u64> = vakil_pattern().take(11).collect();
        assert_eq!(p, vec![1, 2, 2, 4, 4, 4, 8, 8, 8, 8, 16]);
    }

    #[test]
    fn vakil_to_4096() {
        let r = vakil_runs(1 << 12).unwrap();
        // Independent generation of the expected prefix.
        let mut want = vec![];
        let mut k = 0;
        while want.len() < r.completed.len() {
            for _ in 0..=k {
                want.push(1 << k);
            }
            k += 1;
        }
        want.truncate(r.completed.len());
        assert_eq!(r.completed, want);
    }

    #[test]
    fn weighted_examples() {
        assert_eq!(weighted_bound(56).unwrap(), 11);
        assert_eq!(weighted_bound(15).unwrap(), 5);
        assert_eq!(weighted_bound(-1).unwrap(), 0);
    }

    #[test]
    fn weighted_equals_unweighted_without_heavy_edges() {
        for n in -1..200i64 {
            let heavy = CellDag::build(n).unwrap().edges().any(|e| e.k >= 4);
            let (s, w) = (stl(n).unwrap(), weighted_bound(n).unwrap());
            assert!(w >= s);
            if !heavy {
                assert_eq!(s, w, "n = {n}");
            }
        }
    }

    #[test]
    fn monotone_examples() {
        assert!(monotone_bound(127, 256).unwrap() >= 18);
        assert_eq!(monotone_bound(128, 128).unwrap(), 19);
        for n in [-1, 0, 5, 56, 100] {
            assert_eq!(monotone_bound(n, n).unwrap(), weighted_bound(n).unwrap());
        }
        assert!(monotone_bound(10, 9).is_err());
    }

    #[test]
    fn monotone_grows_with_horizon() {
        for n in [0i64, 20, 127, 300] {
            let mut prev = 0;
            for h in n..n + 200 {
                let m = monotone_bound(n, h).unwrap();
                assert!(m >= prev && m >= weighted_bound(n).unwrap());
                prev = m;
            }
        }
    }

    #[test]
    fn upper_examples() {
        assert_eq!(upper_bound(20), Some(7));
        assert_eq!(upper_bound(1 << 20), Some((1 << 18) + 2));
        assert_eq!(upper_bound(3), Some(2));
        assert_eq!(upper_bound(-1), None);
    }

    #[test]
    fn report_orderings() {
        for n in 0..1500i64 {
            let r = bounds_report(n, None).unwrap();
            assert!(r.steenrod <= r.weighted && r.weighted <= r.monotone, "{r:?}");
            assert!(r.monotone <= r.upper.unwrap(), "{r:?}");
        }
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_longest_path(8, false).unwrap(), 3);
        assert_eq!(oracle_longest_path(1, false).unwrap(), 0);
        assert_eq!(oracle_longest_path(19, false).unwrap(), 5);
        assert!(oracle_longest_path(25, false).is_err());
    }

    #[test]
    fn dp_matches_oracle() {
        for n in -1..=ORACLE_MAX_DIMENSION {
            let dag = CellDag::build(n).unwrap();
            for weighted in [false, true] {
                assert_eq!(
                    u64::from(dag.longest_path(weighted)),
                    oracle_longest_path(n, weighted).unwrap(),
                    "n = {n}, weighted = {weighted}"
                );
            }
        }
    }
}
