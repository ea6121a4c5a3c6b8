//! Steinitz rearrangement of zero-sum sequences, the subspace variant, and
//! prefix-sum verification.

use std::collections::HashMap;

use log::warn;
use num_traits::{One, Zero};

use crate::error::{ensure, Error, Result};
use crate::exact::{int, rref_rows, NormSpec, Rat, RatMat, RatVec};
use crate::lp::{lp_feasible_point, purify_to_vertex, BoxLP};

/// A sequence of `m` vectors in dimension `dim` measured in `norm`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorSequence {
    pub vectors: Vec<RatVec>,
    pub dim: usize,
    pub norm: NormSpec,
}

impl VectorSequence {
    pub fn new(vectors: Vec<RatVec>, dim: usize, norm: NormSpec) -> Result<Self> {
        if let Some(i) = vectors.iter().position(|v| v.len() != dim) {
            return Err(Error::Dimension(format!(
                "vector {} has dimension {}, expected {}",
                i + 1,
                vectors[i].len(),
                dim
            )));
        }
        if !norm.compatible(dim) {
            return Err(Error::Dimension(format!(
                "norm {} incompatible with dimension {}",
                norm.name(),
                dim
            )));
        }
        Ok(VectorSequence { vectors, dim, norm })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn sum(&self) -> RatVec {
        crate::exact::vec_sum(self.dim, &self.vectors)
    }

    /// Largest norm of a member.
    pub fn radius(&self) -> Rat {
        self.vectors
            .iter()
            .map(|v| self.norm.eval(v))
            .max()
            .unwrap_or_else(Rat::zero)
    }
}

/// A permutation with its certified and achieved prefix bounds.
///
/// `permutation[k]` is the (0-based) index of the vector placed at position `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct RearrangementCertificate {
    pub permutation: Vec<usize>,
    pub certified_bound: Rat,
    pub achieved_max: Rat,
    pub radius: Rat,
    /// Dimension used in the bound (`d`, or `dim V` for the subspace variant).
    pub dimension: usize,
    pub backtracks: usize,
}

pub fn is_permutation(perm: &[usize], m: usize) -> bool {
    let mut seen = vec![false; m];
    perm.len() == m
        && perm.iter().all(|&i| {
            if i >= m || seen[i] {
                false
            } else {
                seen[i] = true;
                true
            }
        })
}

/// `max_k ‖Σ_{i≤k} u^{perm(i)} − k·drift‖` over `k = 1..m` (0 for an empty sequence).
pub fn max_prefix_norm(seq: &VectorSequence, perm: &[usize], drift: Option<&[Rat]>) -> Result<Rat> {
    if !is_permutation(perm, seq.len()) {
        return Err(Error::InvalidInput("not a permutation".into()));
    }
    if let Some(dr) = drift {
        if dr.len() != seq.dim {
            return Err(Error::Dimension("drift dimension".into()));
        }
    }
    let mut s = RatVec::zeros(seq.dim);
    let mut best = Rat::zero();
    for &i in perm {
        s.add_assign(&seq.vectors[i]);
        if let Some(dr) = drift {
            s.sub_assign(dr);
        }
        let n = seq.norm.eval(&s);
        if n > best {
            best = n;
        }
    }
    Ok(best)
}

/// Classical rearrangement: every prefix sum has norm at most `d·R`.
pub fn steinitz_rearrange(seq: &VectorSequence) -> Result<RearrangementCertificate> {
    if !seq.sum().is_zero() {
        return Err(Error::NotZeroSum);
    }
    let (permutation, backtracks) = steinitz_order(&seq.vectors, seq.dim)?;
    certify(seq, permutation, seq.dim, backtracks)
}

/// Rearrangement inside `V = span(seq)`: prefix sums bounded by `dim(V)·R`.
pub fn subspace_rearrange(seq: &VectorSequence) -> Result<RearrangementCertificate> {
    if !seq.sum().is_zero() {
        return Err(Error::NotZeroSum);
    }
    let (coords, dim_v) = subspace_coordinates(&seq.vectors, seq.dim);
    let (permutation, backtracks) = steinitz_order(&coords, dim_v)?;
    certify(seq, permutation, dim_v, backtracks)
}

/// Coordinates with respect to the reduced row echelon basis of the span.
/// The basis rows carry an identity at their pivot columns, so the coordinate
/// map is just reading off the pivot entries.
pub fn subspace_coordinates(vectors: &[RatVec], dim: usize) -> (Vec<RatVec>, usize) {
    let red = rref_rows(vectors.iter().map(|v| v.0.clone()).collect(), dim);
    let coords = vectors
        .iter()
        .map(|v| red.pivots.iter().map(|&p| v[p].clone()).collect())
        .collect();
    (coords, red.pivots.len())
}

fn certify(
    seq: &VectorSequence,
    permutation: Vec<usize>,
    dimension: usize,
    backtracks: usize,
) -> Result<RearrangementCertificate> {
    let radius = seq.radius();
    let certified_bound = int(dimension as i64) * &radius;
    let mut s = RatVec::zeros(seq.dim);
    let mut achieved_max = Rat::zero();
    for (k, &i) in permutation.iter().enumerate() {
        s.add_assign(&seq.vectors[i]);
        let n = seq.norm.eval(&s);
        if k < dimension {
            ensure(n <= int(k as i64 + 1) * &radius, "short-prefix", || {
                format!("prefix {} exceeds {}·R", k + 1, k + 1)
            })?;
        }
        if n > achieved_max {
            achieved_max = n;
        }
    }
    ensure(achieved_max <= certified_bound, "steinitz-bound", || {
        format!("achieved {} above certified {}", achieved_max, certified_bound)
    })?;
    Ok(RearrangementCertificate {
        permutation,
        certified_bound,
        achieved_max,
        radius,
        dimension,
        backtracks,
    })
}

/// One level of the descending chain.
struct Frame {
    /// Vertex of `{x ∈ [0,a] : Σx = k−d−1, Σ x_v w_v = 0}` over the current types.
    y: Vec<Rat>,
    tried: usize,
}

/// Order for a zero-sum list of vectors in `R^d` whose prefix sums satisfy
/// `Σ_{A_k} u = Σ_{A_k} (1−x_i) u` with `Σ(1−x_i) = d`.
///
/// Identical vectors are grouped into types, and the chain polytopes are
/// written over type multiplicities: `A_k` is a multiset with counts `a_v`
/// and `x_v ∈ [0, a_v]`. This is the same polytope projected onto type sums,
/// which keeps long sequences with few distinct members cheap. Returns the
/// permutation and the number of backtracking events.
pub(crate) fn steinitz_order(vectors: &[RatVec], d: usize) -> Result<(Vec<usize>, usize)> {
    let m = vectors.len();
    if m <= d {
        return Ok(((0..m).collect(), 0));
    }
    let mut index: HashMap<&RatVec, usize> = HashMap::new();
    let mut types: Vec<&RatVec> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut type_of = vec![0; m];
    for (i, v) in vectors.iter().enumerate() {
        let t = *index.entry(v).or_insert_with(|| {
            types.push(v);
            members.push(Vec::new());
            types.len() - 1
        });
        members[t].push(i);
        type_of[i] = t;
    }
    let q = types.len();
    // equality rows: coordinates, then the all-ones row
    let mut rows: Vec<Vec<Rat>> = (0..d)
        .map(|c| types.iter().map(|t| t[c].clone()).collect())
        .collect();
    rows.push(vec![Rat::one(); q]);
    let mat = RatMat::from_rows(q, &rows)?;
    let level_lp = |counts: &[usize], total: i64| -> BoxLP {
        let mut b = RatVec::zeros(d + 1);
        b[d] = int(total);
        BoxLP {
            m: mat.clone(),
            b,
            lower: vec![Some(Rat::zero()); q],
            upper: counts.iter().map(|&c| Some(int(c as i64))).collect(),
            objective: None,
        }
    };

    let mut counts: Vec<usize> = members.iter().map(Vec::len).collect();
    let start = Rat::new(((m - d) as i64).into(), (m as i64).into());
    let mut x: Vec<Rat> = counts.iter().map(|&c| int(c as i64) * &start).collect();
    let mut placed = vec![usize::MAX; m];
    let mut frames: Vec<Frame> = Vec::new();
    let mut backtracks = 0;
    let mut k = m;

    'levels: while k > d {
        let kd = (k - d) as i64;
        let scale = Rat::new((kd - 1).into(), kd.into());
        let scaled: Vec<Rat> = x.iter().map(|v| v * &scale).collect();
        let y = purify_to_vertex(&level_lp(&counts, kd - 1), &scaled)?.0;
        frames.push(Frame { y, tried: 0 });
        loop {
            let frame = frames.last_mut().expect("frame");
            if let Some((t, i, next)) =
                next_candidate(frame, &members, &counts, k, d, &level_lp)?
            {
                let pos = members[t].binary_search(&i).expect("member");
                members[t].remove(pos);
                counts[t] -= 1;
                placed[k - 1] = i;
                x = next;
                k -= 1;
                continue 'levels;
            }
            frames.pop();
            backtracks += 1;
            warn!("steinitz chain backtracks at level {} (m = {}, d = {})", k, m, d);
            if frames.is_empty() {
                return Err(Error::property(
                    "steinitz-chain",
                    "backtracking exhausted every drop choice",
                ));
            }
            k += 1;
            let i = placed[k - 1];
            let t = type_of[i];
            let pos = members[t].binary_search(&i).unwrap_err();
            members[t].insert(pos, i);
            counts[t] += 1;
        }
    }
    let mut rest: Vec<usize> = members.into_iter().flatten().collect();
    rest.sort_unstable();
    placed[..d].copy_from_slice(&rest);
    debug_assert!(is_permutation(&placed, m));
    Ok((placed, backtracks))
}

/// Value carried by each remaining element when the type totals `y_v` are
/// spread over members in index order: ones first, then the fractional
/// remainder, then zeros.
fn element_values(y: &[Rat], members: &[Vec<usize>]) -> Vec<(Rat, usize, usize)> {
    let mut out = Vec::new();
    for (t, mem) in members.iter().enumerate() {
        let full = y[t].floor().to_integer();
        let fracpart = &y[t] - y[t].floor();
        for (p, &i) in mem.iter().enumerate() {
            let p = num_bigint::BigInt::from(p);
            let val = if p < full {
                Rat::one()
            } else if p == full {
                fracpart.clone()
            } else {
                Rat::zero()
            };
            out.push((val, i, t));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    out
}

type Candidate = (usize, usize, Vec<Rat>);

fn next_candidate(
    frame: &mut Frame,
    members: &[Vec<usize>],
    counts: &[usize],
    k: usize,
    d: usize,
    level_lp: &dyn Fn(&[usize], i64) -> BoxLP,
) -> Result<Option<Candidate>> {
    if frame.tried == 0 {
        // fast path: the smallest-index member whose spread value is zero
        let mut best: Option<(usize, usize)> = None;
        for (t, mem) in members.iter().enumerate() {
            let used = frame.y[t].ceil().to_integer();
            let used: usize = used.try_into().unwrap_or(usize::MAX);
            if used < mem.len() && best.map_or(true, |(_, i)| mem[used] < i) {
                best = Some((t, mem[used]));
            }
        }
        if let Some((t, i)) = best {
            frame.tried = 1;
            return Ok(Some((t, i, frame.y.clone())));
        }
    }
    let cands = element_values(&frame.y, members);
    while frame.tried < cands.len() {
        let (val, i, t) = cands[frame.tried].clone();
        frame.tried += 1;
        if val.is_zero() {
            return Ok(Some((t, i, frame.y.clone())));
        }
        let mut c = counts.to_vec();
        c[t] -= 1;
        let lp = level_lp(&c, (k - 1 - d) as i64);
        if let Some(p) = lp_feasible_point(&lp)? {
            return Ok(Some((t, i, p.0)));
        }
    }
    Ok(None)
}

/// True when the sequence sums to zero and all members lie in the unit ball.
pub fn is_unit_zero_sum(seq: &VectorSequence) -> bool {
    seq.sum().is_zero() && seq.vectors.iter().all(|v| seq.norm.eval(v) <= Rat::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rank_of};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn seq(vs: &[&[i64]], norm: NormSpec) -> VectorSequence {
        let d = vs[0].len();
        VectorSequence::new(vs.iter().map(|v| RatVec::from_ints(v)).collect(), d, norm).unwrap()
    }

    /// Zero-sum unit-ball sample with small denominators.
    fn sample(rng: &mut ChaCha8Rng, d: usize, m: usize, norm: NormSpec) -> VectorSequence {
        let mut vs: Vec<RatVec> = (0..m)
            .map(|_| (0..d).map(|_| frac(rng.gen_range(-6..=6), 6)).collect())
            .collect();
        let mean = crate::exact::vec_sum(d, &vs).scale(&frac(1, m as i64));
        for v in vs.iter_mut() {
            v.sub_assign(&mean);
        }
        let r = vs.iter().map(|v| norm.eval(v)).max().unwrap();
        if r > Rat::one() {
            let inv = r.recip();
            for v in vs.iter_mut() {
                *v = v.scale(&inv);
            }
        }
        VectorSequence::new(vs, d, norm).unwrap()
    }

    #[test]
    fn two_scalars() {
        let c = steinitz_rearrange(&seq(&[&[1], &[-1]], NormSpec::Linf)).unwrap();
        assert!(c.achieved_max <= int(1));
        assert_eq!(c.certified_bound, int(1));
    }

    #[test]
    fn axis_vectors_identity_prefix() {
        let s = seq(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], NormSpec::Linf);
        assert_eq!(max_prefix_norm(&s, &[0, 1, 2, 3], None).unwrap(), int(1));
        let c = steinitz_rearrange(&s).unwrap();
        assert!(c.achieved_max <= int(2));
    }

    #[test]
    fn non_zero_sum_rejected() {
        assert!(matches!(
            steinitz_rearrange(&seq(&[&[1], &[1]], NormSpec::L1)),
            Err(Error::NotZeroSum)
        ));
    }

    #[test]
    fn short_sequences_keep_identity() {
        let s = seq(&[&[1, 0, 0], &[-1, 0, 0]], NormSpec::Linf);
        assert_eq!(steinitz_rearrange(&s).unwrap().permutation, vec![0, 1]);
    }

    #[test]
    fn seeded_dimension_three() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let s = sample(&mut rng, 3, 20, NormSpec::Linf);
        let c = steinitz_rearrange(&s).unwrap();
        assert!(c.achieved_max <= int(3));
        assert_eq!(c.backtracks, 0);
        assert_eq!(max_prefix_norm(&s, &c.permutation, None).unwrap(), c.achieved_max);
    }

    #[test]
    fn repeated_vectors_long_sequence() {
        // 600 copies of two vectors and 400 of a third, zero-sum
        let mut vs = Vec::new();
        vs.extend(std::iter::repeat(RatVec(vec![frac(1, 2), frac(-1, 3)])).take(600));
        vs.extend(std::iter::repeat(RatVec(vec![frac(-3, 4), frac(1, 2)])).take(400));
        vs.push(RatVec(vec![int(0), int(0)]));
        let s = VectorSequence::new(vs, 2, NormSpec::Linf).unwrap();
        let c = steinitz_rearrange(&s).unwrap();
        assert!(c.achieved_max <= c.certified_bound);
    }

    #[test]
    fn subspace_examples() {
        let s = seq(&[&[1, 1, 1], &[-2, -2, -2], &[1, 1, 1]], NormSpec::Linf);
        let c = subspace_rearrange(&s).unwrap();
        assert_eq!(c.dimension, 1);
        assert_eq!(c.certified_bound, c.radius);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let basis: Vec<RatVec> = (0..2)
            .map(|_| (0..5).map(|_| int(rng.gen_range(-2..=2))).collect())
            .collect();
        let mut vs: Vec<RatVec> = (0..9)
            .map(|_| {
                let mut v = basis[0].scale(&frac(rng.gen_range(-3..=3), 4));
                v.add_scaled(&frac(rng.gen_range(-3..=3), 4), &basis[1]);
                v
            })
            .collect();
        let tot = crate::exact::vec_sum(5, &vs);
        vs.push(tot.neg());
        let s = VectorSequence::new(vs, 5, NormSpec::L1).unwrap();
        let c = subspace_rearrange(&s).unwrap();
        assert_eq!(c.dimension, rank_of(&s.vectors));
        assert!(c.dimension <= 2);
        assert_eq!(c.certified_bound, int(c.dimension as i64) * &c.radius);
        assert!(c.achieved_max <= c.certified_bound);
    }

    #[test]
    fn drift_telescopes() {
        let s = seq(&[&[2], &[0], &[1]], NormSpec::Linf);
        let mean = vec![int(1)];
        let v = max_prefix_norm(&s, &[1, 0, 2], Some(&mean)).unwrap();
        // prefixes minus k·1: -1, 0, 0
        assert_eq!(v, int(1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn classical_bound_holds(seed in any::<u64>(), d in 1usize..=4, m in 1usize..=16, l1 in any::<bool>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let norm = if l1 { NormSpec::L1 } else { NormSpec::Linf };
            let s = sample(&mut rng, d, m, norm);
            let c = steinitz_rearrange(&s).unwrap();
            prop_assert!(is_permutation(&c.permutation, m));
            prop_assert!(c.achieved_max <= int(d as i64) * &c.radius);
            prop_assert_eq!(c.backtracks, 0);
        }

        #[test]
        fn prefix_norm_matches_reverse_summation(seed in any::<u64>(), m in 1usize..=10) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = sample(&mut rng, 2, m, NormSpec::L1);
            let mut perm: Vec<usize> = (0..m).collect();
            perm.reverse();
            let got = max_prefix_norm(&s, &perm, None).unwrap();
            // prefix k equals minus the suffix after k, summed back to front
            let mut best = Rat::zero();
            for k in 1..=m {
                let mut suffix = RatVec::zeros(2);
                for &i in perm[k..].iter().rev() {
                    suffix.add_assign(&s.vectors[i]);
                }
                best = best.max(NormSpec::L1.eval(&suffix));
            }
            prop_assert_eq!(got, best);
        }
    }
}
