//! Seeded instance generators. Identical parameters and seed give
//! identical output on every platform (ChaCha8 stream, integer sampling).

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blockip::{Block, FourBlockInstance, KernelPoint};
use crate::colorful::ColoredFamily;
use crate::error::{Error, Result};
use crate::exact::{frac, int, rank, NormSpec, Rat, RatMat, RatVec};
use crate::lp::{lp_solve, BoxLP, LpOutcome};
use crate::steinitz::VectorSequence;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sample_entry(r: &mut ChaCha8Rng, denom: i64) -> Rat {
    frac(r.gen_range(-denom..=denom), denom)
}

/// Recenters to an exact zero sum and shrinks everything into the unit ball.
fn normalize(vectors: &mut [Vec<RatVec>], d: usize, norm: &NormSpec) {
    let count: usize = vectors.iter().map(Vec::len).sum();
    if count == 0 {
        return;
    }
    let mean = crate::exact::vec_sum(d, vectors.iter().flatten()).scale(&frac(1, count as i64));
    for v in vectors.iter_mut().flatten() {
        v.sub_assign(&mean);
    }
    let max = vectors.iter().flatten().map(|v| norm.eval(v)).max().unwrap_or_else(Rat::zero);
    if max > Rat::one() {
        let f = max.recip();
        for v in vectors.iter_mut().flatten() {
            *v = v.scale(&f);
        }
    }
}

/// `n` colors of `m` vectors in `[−1,1]^d` with denominator `denom`, recentered
/// to sum to zero and rescaled into the unit ball of `norm`.
pub fn gen_zero_sum_family(d: usize, n: usize, m: usize, norm: NormSpec, seed: u64, denom: u64) -> Result<ColoredFamily> {
    if n * m == 0 || d == 0 || denom == 0 {
        return Err(Error::InvalidInput("d, n, m and denom must be positive".into()));
    }
    let mut r = rng(seed);
    let den = denom as i64;
    let mut vectors: Vec<Vec<RatVec>> = (0..n)
        .map(|_| (0..m).map(|_| (0..d).map(|_| sample_entry(&mut r, den)).collect()).collect())
        .collect();
    normalize(&mut vectors, d, &norm);
    ColoredFamily::new(d, vectors, norm)
}

/// Like [`gen_zero_sum_family`], with every color sorted in decreasing order
/// so that the identity order lets prefix sums drift as far as possible.
pub fn gen_adversarial_family(d: usize, n: usize, m: usize, norm: NormSpec, seed: u64, denom: u64) -> Result<ColoredFamily> {
    let mut fam = gen_zero_sum_family(d, n, m, norm, seed, denom)?;
    for color in fam.vectors.iter_mut() {
        color.sort_by(|a, b| b.cmp(a));
    }
    Ok(fam)
}

/// Same as a one-color family.
pub fn gen_sequence(d: usize, m: usize, norm: NormSpec, seed: u64, denom: u64) -> Result<VectorSequence> {
    let fam = gen_zero_sum_family(d, 1, m, norm.clone(), seed, denom)?;
    VectorSequence::new(fam.vectors.into_iter().next().unwrap_or_default(), d, norm)
}

/// Zero-sum sequence in `R^d` whose span has dimension at most `rank`.
pub fn gen_rank_deficient(d: usize, rank_v: usize, m: usize, norm: NormSpec, seed: u64, denom: u64) -> Result<VectorSequence> {
    if rank_v == 0 || rank_v > d || m == 0 || denom == 0 {
        return Err(Error::InvalidInput("need 1 ≤ rank ≤ d, m ≥ 1, denom ≥ 1".into()));
    }
    let mut r = rng(seed);
    let basis: Vec<RatVec> = (0..rank_v)
        .map(|_| (0..d).map(|_| int(r.gen_range(-2..=2))).collect())
        .collect();
    let den = denom as i64;
    let mut vectors = vec![(0..m)
        .map(|_| {
            let mut v = RatVec::zeros(d);
            for b in &basis {
                v.add_scaled(&sample_entry(&mut r, den), b);
            }
            v
        })
        .collect::<Vec<RatVec>>()];
    normalize(&mut vectors, d, &norm);
    VectorSequence::new(vectors.pop().unwrap_or_default(), d, norm)
}

/// Family whose colors do not sum to zero, for the affine variant.
pub fn gen_affine_family(d: usize, n: usize, m: usize, norm: NormSpec, seed: u64, denom: u64) -> Result<ColoredFamily> {
    if n * m == 0 || d == 0 || denom == 0 {
        return Err(Error::InvalidInput("d, n, m and denom must be positive".into()));
    }
    let mut r = rng(seed);
    let den = denom as i64;
    let mut vectors: Vec<Vec<RatVec>> = (0..n)
        .map(|_| (0..m).map(|_| (0..d).map(|_| sample_entry(&mut r, den)).collect()).collect())
        .collect();
    let max = vectors.iter().flatten().map(|v| norm.eval(v)).max().unwrap_or_else(Rat::zero);
    if max > Rat::one() {
        let f = max.recip();
        for v in vectors.iter_mut().flatten() {
            *v = v.scale(&f);
        }
    }
    ColoredFamily::new(d, vectors, norm)
}

/// Shape of a generated block program.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FourBlockShape {
    pub s0: usize,
    pub s: usize,
    pub t0: usize,
    pub t: usize,
    pub n: usize,
    pub delta: i64,
}

const RETRIES: usize = 200;

fn int_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize, delta: i64) -> RatMat {
    let data = (0..rows * cols).map(|_| int(r.gen_range(-delta..=delta))).collect();
    RatMat::new(rows, cols, data).expect("shape")
}

/// Random block program with a planted nonnegative kernel point, an
/// objective, bounds `3` on every variable and `b = H z0` for a random
/// integer `z0 ∈ [0, 2]`. Every `A^i` has full row rank when `Δ ≥ 1`.
pub fn gen_four_block(shape: FourBlockShape, seed: u64) -> Result<(FourBlockInstance, KernelPoint)> {
    let FourBlockShape { s0, s, t0, t, n, delta } = shape;
    if s0 == 0 || s == 0 || t0 == 0 || t == 0 || n == 0 || delta < 0 {
        return Err(Error::InvalidInput("all dimensions must be positive and Δ ≥ 0".into()));
    }
    if delta > 0 && s > t {
        return Err(Error::InvalidInput("full row rank needs s ≤ t".into()));
    }
    let mut r = rng(seed);
    for _ in 0..RETRIES {
        let a0 = int_matrix(&mut r, s0, t0, delta);
        let blocks: Vec<Block> = (0..n)
            .map(|_| Block {
                b: int_matrix(&mut r, s, t0, delta),
                a: int_matrix(&mut r, s, t, delta),
                c: int_matrix(&mut r, s0, t, delta),
            })
            .collect();
        if delta > 0 && blocks.iter().any(|b| rank(&b.a) < s) {
            continue;
        }
        let mut inst = FourBlockInstance::new(s0, t0, a0, blocks, RatVec::default(), RatVec::default(), RatVec::default(), vec![], vec![])?;
        let h = inst.matrix();
        let nv = inst.nvars();
        let total = int(r.gen_range(nv as i64..=4 * nv as i64));
        let ones = RatMat::new(1, nv, vec![Rat::one(); nv])?;
        let m = h.vstack(&ones);
        let mut rhs = RatVec::zeros(h.rows());
        rhs.0.push(total);
        let obj: RatVec = (0..nv).map(|_| int(r.gen_range(-5..=5))).collect();
        let lp = BoxLP::nonneg(m, rhs)?.maximize(obj);
        let z = match lp_solve(&lp)? {
            LpOutcome::Optimal { x, .. } => x,
            _ => continue,
        };
        let z0: RatVec = (0..nv).map(|_| int(r.gen_range(0..=2))).collect();
        inst.b = h.mul_vec(&z0);
        inst.cx = (0..t0).map(|_| int(r.gen_range(-3..=3))).collect();
        inst.cy = (0..inst.ny()).map(|_| int(r.gen_range(-3..=3))).collect();
        inst.ux = vec![Some(int(3)); t0];
        inst.uy = vec![Some(int(3)); inst.ny()];
        let pt = KernelPoint { x: RatVec(z.0[..t0].to_vec()), y: RatVec(z.0[t0..].to_vec()) };
        return Ok((inst, pt));
    }
    Err(Error::Budget(format!("no instance with a nonzero kernel point after {} tries; try another seed", RETRIES)))
}

pub fn scale_point(pt: &KernelPoint, f: &Rat) -> KernelPoint {
    KernelPoint { x: pt.x.scale(f), y: pt.y.scale(f) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vector_is_zero() {
        let fam = gen_zero_sum_family(3, 1, 1, NormSpec::Linf, 7, 10).unwrap();
        assert!(fam.vectors[0][0].is_zero());
    }

    #[test]
    fn families_are_zero_sum_unit_and_deterministic() {
        for norm in [NormSpec::L1, NormSpec::Linf] {
            let a = gen_zero_sum_family(2, 3, 5, norm.clone(), 42, 12).unwrap();
            let b = gen_zero_sum_family(2, 3, 5, norm.clone(), 42, 12).unwrap();
            assert_eq!(a, b);
            assert!(a.total().is_zero());
            assert!(a.check_unit_ball().is_ok());
        }
    }

    #[test]
    fn rank_deficient_span() {
        let seq = gen_rank_deficient(4, 2, 12, NormSpec::Linf, 3, 6).unwrap();
        assert!(crate::exact::rank_of(&seq.vectors) <= 2);
        assert!(seq.sum().is_zero());
    }

    #[test]
    fn planted_point_in_kernel() {
        let shape = FourBlockShape { s0: 1, s: 1, t0: 2, t: 2, n: 3, delta: 2 };
        let (inst, pt) = gen_four_block(shape, 5).unwrap();
        assert!(inst.in_kernel(&pt));
        assert!(!pt.concat().is_zero());
        assert_eq!(gen_four_block(shape, 5).unwrap().0, inst);
        let zero = FourBlockShape { delta: 0, ..shape };
        let (z, p) = gen_four_block(zero, 1).unwrap();
        assert!(z.matrix().is_zero() && z.in_kernel(&p));
    }
}
