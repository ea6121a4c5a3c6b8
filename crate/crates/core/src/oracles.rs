//! Brute-force references for tiny instances.
//!
//! Everything here is deliberately naive. The only pruning is the cut on a
//! running prefix maximum that already reached the best value found, which
//! cannot discard an optimum because the maximum never decreases.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::blockip::FourBlockInstance;
use crate::colorful::ColoredFamily;
use crate::error::{Error, Result};
use crate::exact::{big, int_mul, Rat, RatVec};
use crate::lp::{enum_integer_points, to_ratvec};
use crate::steinitz::VectorSequence;

pub const MAX_SINGLE: usize = 8;
pub const MAX_COLOR_LEN: usize = 4;
pub const MAX_COLORS: usize = 3;

/// Minimum over all orders of the largest prefix-sum norm.
pub fn brute_rearrange_optimum(seq: &VectorSequence) -> Result<Rat> {
    if seq.len() > MAX_SINGLE {
        return Err(Error::Budget(format!("{} vectors, at most {} supported", seq.len(), MAX_SINGLE)));
    }
    let mut best: Option<Rat> = None;
    let mut used = vec![false; seq.len()];
    single_dfs(seq, &mut used, RatVec::zeros(seq.dim), Rat::zero(), 0, &mut best);
    Ok(best.unwrap_or_else(Rat::zero))
}

fn single_dfs(seq: &VectorSequence, used: &mut [bool], sum: RatVec, run: Rat, depth: usize, best: &mut Option<Rat>) {
    if best.as_ref().is_some_and(|b| &run >= b) {
        return;
    }
    if depth == seq.len() {
        *best = Some(run);
        return;
    }
    for i in 0..seq.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let next = sum.add(&seq.vectors[i]);
        let run2 = run.clone().max(seq.norm.eval(&next));
        single_dfs(seq, used, next, run2, depth + 1, best);
        used[i] = false;
    }
}

/// Minimum over all tuples of per-color orders of the largest prefix norm,
/// where prefix `k` takes the first `k` vectors of every color.
pub fn brute_colorful_optimum(fam: &ColoredFamily) -> Result<Rat> {
    if fam.m > MAX_COLOR_LEN || fam.n > MAX_COLORS {
        return Err(Error::Budget(format!(
            "n = {}, m = {}; at most n = {}, m = {} supported",
            fam.n, fam.m, MAX_COLORS, MAX_COLOR_LEN
        )));
    }
    let mut best: Option<Rat> = None;
    let mut used = vec![vec![false; fam.m]; fam.n];
    colorful_dfs(fam, &mut used, RatVec::zeros(fam.d), Rat::zero(), 0, &mut best);
    Ok(best.unwrap_or_else(Rat::zero))
}

fn colorful_dfs(fam: &ColoredFamily, used: &mut [Vec<bool>], sum: RatVec, run: Rat, depth: usize, best: &mut Option<Rat>) {
    if best.as_ref().is_some_and(|b| &run >= b) {
        return;
    }
    if depth == fam.m {
        *best = Some(run);
        return;
    }
    let free: Vec<Vec<usize>> = used
        .iter()
        .map(|u| (0..fam.m).filter(|&i| !u[i]).collect())
        .collect();
    for pick in free.iter().map(|f| f.iter().copied()).multi_cartesian_product() {
        let mut next = sum.clone();
        for (j, &i) in pick.iter().enumerate() {
            next.add_assign(&fam.vectors[j][i]);
            used[j][i] = true;
        }
        let run2 = run.clone().max(fam.norm.eval(&next));
        colorful_dfs(fam, used, next, run2, depth + 1, best);
        for (j, &i) in pick.iter().enumerate() {
            used[j][i] = false;
        }
    }
}

fn binomial(m: usize, k: usize) -> u128 {
    (0..k.min(m - k)).fold(1u128, |acc, i| acc * (m - i) as u128 / (i as u128 + 1))
}

/// Minimum of `‖Σ_j Σ_{i ∈ I_j} u_j^i‖` over all choices of `k`-subsets `I_j`.
pub fn brute_single_sum(fam: &ColoredFamily, k: usize, budget: u64) -> Result<Rat> {
    if k > fam.m {
        return Err(Error::InvalidInput(format!("k = {} exceeds m = {}", k, fam.m)));
    }
    let count = binomial(fam.m, k).checked_pow(fam.n as u32).unwrap_or(u128::MAX);
    if count > budget as u128 {
        return Err(Error::Budget(format!("{} selections, budget {}", count, budget)));
    }
    let per_color: Vec<Vec<RatVec>> = fam
        .vectors
        .iter()
        .map(|vs| {
            (0..fam.m)
                .combinations(k)
                .map(|set| crate::exact::vec_sum(fam.d, set.iter().map(|&i| &vs[i])))
                .collect()
        })
        .collect();
    let mut best: Option<Rat> = None;
    for pick in per_color.iter().map(|c| c.iter()).multi_cartesian_product() {
        let s = crate::exact::vec_sum(fam.d, pick);
        let n = fam.norm.eval(&s);
        if best.as_ref().map_or(true, |b| &n < b) {
            best = Some(n);
        }
    }
    Ok(best.unwrap_or_else(Rat::zero))
}

/// Integer optimum of `max c·z, Hz = b, 0 ≤ z ≤ u` by enumerating the whole
/// box. Unbounded variables use `cap` as their upper bound. Ties keep the
/// lexicographically first solution.
pub fn brute_ilp(inst: &FourBlockInstance, cap: Option<&BigInt>, budget: u64) -> Result<Option<(RatVec, Rat)>> {
    let mut upper = Vec::with_capacity(inst.nvars());
    for u in inst.ux.iter().chain(inst.uy.iter()) {
        match (u, cap) {
            (Some(u), _) => upper.push(u.floor()),
            (None, Some(c)) => upper.push(big(c)),
            (None, None) => return Err(Error::InvalidInput("unbounded box: give a cap".into())),
        }
    }
    let size = upper.iter().try_fold(1u64, |acc, u| {
        let w = (u.to_integer() + 1u32).to_u64()?;
        acc.checked_mul(w.max(1))
    });
    match size {
        Some(sz) if sz <= budget => {}
        _ => return Err(Error::Budget(format!("search box exceeds {} points", budget))),
    }
    let rows = inst
        .matrix()
        .to_int_rows()
        .ok_or_else(|| Error::InvalidInput("matrix must be integral".into()))?;
    let rhs: Vec<BigInt> = inst.b.iter().map(|v| v.to_integer()).collect();
    if inst.b.iter().any(|v| !v.is_integer()) {
        return Ok(None);
    }
    let c: RatVec = inst.cx.iter().chain(inst.cy.iter()).cloned().collect();
    let lower = vec![Rat::zero(); upper.len()];
    let mut best: Option<(RatVec, Rat)> = None;
    for z in enum_integer_points(&lower, &upper, None, |z| int_mul(&rows, z) == rhs) {
        let zr = to_ratvec(&z);
        let v = c.dot(&zr);
        if best.as_ref().map_or(true, |(_, b)| &v > b) {
            best = Some((zr, v));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockip::Block;
    use crate::exact::{int, NormSpec, RatMat};

    #[test]
    fn single_examples() {
        let s = VectorSequence::new(vec![RatVec::from_ints(&[1]), RatVec::from_ints(&[-1])], 1, NormSpec::Linf).unwrap();
        assert_eq!(brute_rearrange_optimum(&s).unwrap(), int(1));
        let axes = vec![
            RatVec::from_ints(&[1, 0]),
            RatVec::from_ints(&[-1, 0]),
            RatVec::from_ints(&[0, 1]),
            RatVec::from_ints(&[0, -1]),
        ];
        let s = VectorSequence::new(axes, 2, NormSpec::Linf).unwrap();
        assert_eq!(brute_rearrange_optimum(&s).unwrap(), int(1));
    }

    #[test]
    fn colorful_pairs() {
        let fam = ColoredFamily::new(
            1,
            vec![
                vec![RatVec::from_ints(&[1]), RatVec::from_ints(&[-1])],
                vec![RatVec::from_ints(&[1]), RatVec::from_ints(&[-1])],
            ],
            NormSpec::Linf,
        )
        .unwrap();
        // (1,−1) against (−1,1) keeps every prefix at 0
        assert_eq!(brute_colorful_optimum(&fam).unwrap(), int(0));
    }

    #[test]
    fn single_sum_edges() {
        let fam = ColoredFamily::new(
            1,
            vec![vec![RatVec::from_ints(&[1]), RatVec::from_ints(&[-1]), RatVec::from_ints(&[0])]],
            NormSpec::Linf,
        )
        .unwrap();
        assert_eq!(brute_single_sum(&fam, 0, 100).unwrap(), int(0));
        assert_eq!(brute_single_sum(&fam, 3, 100).unwrap(), int(0));
        assert_eq!(brute_single_sum(&fam, 1, 100).unwrap(), int(0));
        assert!(matches!(brute_single_sum(&fam, 1, 2), Err(Error::Budget(_))));
    }

    fn knapsack(b: i64) -> FourBlockInstance {
        // 3x + y1 + 2y2 = b, y1 + y2 = 2
        let blocks = vec![Block {
            b: RatMat::from_ints(1, &[&[0]]),
            a: RatMat::from_ints(2, &[&[1, 1]]),
            c: RatMat::from_ints(2, &[&[1, 2]]),
        }];
        FourBlockInstance::new(
            1,
            1,
            RatMat::from_ints(1, &[&[3]]),
            blocks,
            RatVec::from_ints(&[b, 2]),
            RatVec::from_ints(&[4]),
            RatVec::from_ints(&[1, 3]),
            vec![Some(int(2))],
            vec![Some(int(2)), Some(int(2))],
        )
        .unwrap()
    }

    #[test]
    fn ilp_examples() {
        // b = 5: only x = 1, y = (2, 0) fits
        let (z, v) = brute_ilp(&knapsack(5), None, 1000).unwrap().unwrap();
        assert_eq!(z, RatVec::from_ints(&[1, 2, 0]));
        assert_eq!(v, int(6));
        // 3x + y1 + 2y2 = 7: x = 1, y = (0,2) → 4 + 6 = 10
        assert_eq!(brute_ilp(&knapsack(7), None, 1000).unwrap().unwrap().1, int(10));
        assert_eq!(brute_ilp(&knapsack(1), None, 1000).unwrap(), None);
        let mut zero = knapsack(5);
        zero.cx = RatVec::zeros(1);
        zero.cy = RatVec::zeros(2);
        assert_eq!(brute_ilp(&zero, None, 1000).unwrap().unwrap().1, int(0));
        let mut open = knapsack(5);
        open.ux = vec![None];
        assert!(brute_ilp(&open, None, 1000).is_err());
        assert!(brute_ilp(&open, Some(&BigInt::from(3)), 1000).unwrap().is_some());
    }
}
