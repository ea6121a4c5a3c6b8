//! Colorful rearrangement of `n` sequences of length `m`, its affine variant,
//! and single partial sums with one subset per color.

use num_traits::{One, Signed, Zero};

use crate::error::{ensure, Error, Result};
use crate::exact::{frac, int, null_space, vec_sum, NormSpec, Rat, RatMat, RatVec};
use crate::lp::{purify_to_vertex, BoxLP};
use crate::steinitz::{is_permutation, steinitz_rearrange, VectorSequence};

/// `n` colors, each a sequence of `m` vectors in dimension `d`.
///
/// `vectors[j][i]` is the `i`-th vector of color `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct ColoredFamily {
    pub d: usize,
    pub n: usize,
    pub m: usize,
    pub vectors: Vec<Vec<RatVec>>,
    pub norm: NormSpec,
}

impl ColoredFamily {
    pub fn new(d: usize, vectors: Vec<Vec<RatVec>>, norm: NormSpec) -> Result<Self> {
        let n = vectors.len();
        let m = vectors.first().map_or(0, Vec::len);
        for (j, color) in vectors.iter().enumerate() {
            if color.len() != m {
                return Err(Error::Dimension(format!(
                    "color {} has {} vectors, expected {}",
                    j + 1,
                    color.len(),
                    m
                )));
            }
            if let Some(i) = color.iter().position(|v| v.len() != d) {
                return Err(Error::Dimension(format!(
                    "vector {} of color {} has dimension {}",
                    i + 1,
                    j + 1,
                    color[i].len()
                )));
            }
        }
        if !norm.compatible(d) {
            return Err(Error::Dimension(format!("norm {} in dimension {}", norm.name(), d)));
        }
        Ok(ColoredFamily { d, n, m, vectors, norm })
    }

    pub fn total(&self) -> RatVec {
        vec_sum(self.d, self.vectors.iter().flatten())
    }

    pub fn check_unit_ball(&self) -> Result<()> {
        for (j, color) in self.vectors.iter().enumerate() {
            for (i, v) in color.iter().enumerate() {
                if self.norm.eval(v) > Rat::one() {
                    return Err(Error::OutsideUnitBall(format!("{} of color {}", i + 1, j + 1)));
                }
            }
        }
        Ok(())
    }

    fn check_zero_sum_unit(&self) -> Result<()> {
        self.check_unit_ball()?;
        if !self.total().is_zero() {
            return Err(Error::NotZeroSum);
        }
        Ok(())
    }

    /// Row sums `Σ_j u_j^{arr[j][i]}` for an arrangement (identity when `None`).
    pub fn row_sums(&self, arr: Option<&[Vec<usize>]>) -> Vec<RatVec> {
        (0..self.m)
            .map(|i| {
                vec_sum(
                    self.d,
                    (0..self.n).map(|j| &self.vectors[j][arr.map_or(i, |a| a[j][i])]),
                )
            })
            .collect()
    }

    /// `max_k ‖Σ_{i≤k} Σ_j u_j^{π_j(i)} − k·drift‖`.
    pub fn max_prefix(&self, perms: &[Vec<usize>], drift: Option<&RatVec>) -> Result<Rat> {
        if perms.len() != self.n || perms.iter().any(|p| !is_permutation(p, self.m)) {
            return Err(Error::InvalidInput("expected one permutation per color".into()));
        }
        let mut s = RatVec::zeros(self.d);
        let mut best = Rat::zero();
        for k in 0..self.m {
            for (j, p) in perms.iter().enumerate() {
                s.add_assign(&self.vectors[j][p[k]]);
            }
            if let Some(dr) = drift {
                s.sub_assign(dr);
            }
            best = best.max(self.norm.eval(&s));
        }
        Ok(best)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    TrivialND,
    Balanced40d5,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::TrivialND => "trivial-nd",
            Route::Balanced40d5 => "balanced-40d5",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ColorfulCertificate {
    /// `permutations[j][k]`: index of the color-`j` vector at position `k`.
    pub permutations: Vec<Vec<usize>>,
    pub certified_bound: Rat,
    pub achieved_max: Rat,
    pub route: Route,
    /// Max row norm after balancing, when the balanced route ran.
    pub phase1_row_bound: Option<Rat>,
    /// Per-step drift subtracted from prefix sums (affine variant only).
    pub drift: Option<RatVec>,
    /// Tighter bound checked but not enforced (affine variant only).
    pub soft_bound: Option<Rat>,
}

impl ColorfulCertificate {
    pub fn soft_bound_met(&self) -> Option<bool> {
        self.soft_bound.as_ref().map(|b| self.achieved_max <= *b)
    }
}

/// `(d+1)²(4d(d+1)+2)`.
pub fn row_threshold(d: usize) -> Rat {
    let d = d as i64;
    int((d + 1) * (d + 1) * (4 * d * (d + 1) + 2))
}

/// `min{n·d, 40·d⁵}`.
pub fn colorful_bound(n: usize, d: usize) -> Rat {
    let d = d as i64;
    int((n as i64 * d).min(40 * d.pow(5)))
}

/// Indices (anchor first) and convex weights `λ` with `Σ λ_i rows_i = 0`,
/// at most `d+1` of them.
pub fn conic_caratheodory_anchor(rows: &[RatVec], anchor: usize) -> Result<(Vec<usize>, Vec<Rat>)> {
    let d = rows.first().map_or(0, |r| r.len());
    if anchor >= rows.len() {
        return Err(Error::InvalidInput("anchor out of range".into()));
    }
    if rows.iter().any(|r| r.len() != d) {
        return Err(Error::Dimension("row sums differ in dimension".into()));
    }
    if !vec_sum(d, rows).is_zero() {
        return Err(Error::NotZeroSum);
    }
    if rows[anchor].is_zero() {
        return Ok((vec![anchor], vec![Rat::one()]));
    }
    // −rows[anchor] = Σ_{i≠anchor} 1·rows[i]; shrink the support while dependent
    let mut support: Vec<usize> = (0..rows.len()).filter(|&i| i != anchor && !rows[i].is_zero()).collect();
    let mut mu: Vec<Rat> = vec![Rat::one(); support.len()];
    while support.len() > d {
        let cols: Vec<Vec<Rat>> = (0..d)
            .map(|c| support.iter().map(|&i| rows[i][c].clone()).collect())
            .collect();
        let mat = RatMat::from_rows(support.len(), &cols)?;
        let mut z = null_space(&mat).into_iter().next().expect("dependent columns");
        if !z.iter().any(|v| v.is_positive()) {
            z = z.neg();
        }
        let step = z
            .iter()
            .zip(&mu)
            .filter(|(zi, _)| zi.is_positive())
            .map(|(zi, mi)| mi / zi)
            .min()
            .expect("positive entry");
        for (mi, zi) in mu.iter_mut().zip(z.iter()) {
            *mi -= &step * zi;
        }
        let keep: Vec<bool> = mu.iter().map(|v| v.is_positive()).collect();
        support = support.iter().zip(&keep).filter(|(_, &k)| k).map(|(&i, _)| i).collect();
        mu.retain(|v| v.is_positive());
    }
    let total = Rat::one() + mu.iter().sum::<Rat>();
    let mut idx = vec![anchor];
    let mut lambda = vec![total.recip()];
    for (i, w) in support.into_iter().zip(mu) {
        idx.push(i);
        lambda.push(w / &total);
    }
    Ok((idx, lambda))
}

/// One improvement step of [`balance_rows`].
#[derive(Clone, Debug, PartialEq)]
pub struct BalanceStep {
    pub old_max: Rat,
    pub old_count: usize,
    pub new_max: Rat,
    pub new_count: usize,
    /// Rows rearranged in this step (anchor first).
    pub rows: Vec<usize>,
    /// Largest row norm among the touched rows after the step.
    pub touched_max: Rat,
    /// `(d+1)(4d(d+1)+2) + d/(d+1)·old_max`.
    pub chain_bound: Rat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Balanced {
    /// `sigma[j][i]`: index of the color-`j` vector placed in row `i`.
    pub sigma: Vec<Vec<usize>>,
    pub row_bound: Rat,
    pub trace: Vec<BalanceStep>,
}

fn max_and_count(norms: &[Rat]) -> (Rat, usize) {
    let max = norms.iter().max().cloned().unwrap_or_else(Rat::zero);
    let count = norms.iter().filter(|v| **v == max).count();
    (max, count)
}

/// Permute within colors until every row sum has norm at most
/// `(d+1)²(4d(d+1)+2)`.
pub fn balance_rows(fam: &ColoredFamily) -> Result<Balanced> {
    fam.check_zero_sum_unit()?;
    let d = fam.d;
    let threshold = row_threshold(d);
    let mut sigma: Vec<Vec<usize>> = vec![(0..fam.m).collect(); fam.n];
    let mut trace = Vec::new();
    let dd = d as i64;
    loop {
        let rows = fam.row_sums(Some(&sigma));
        let norms: Vec<Rat> = rows.iter().map(|r| fam.norm.eval(r)).collect();
        let (old_max, old_count) = max_and_count(&norms);
        if old_max <= threshold {
            return Ok(Balanced { sigma, row_bound: old_max, trace });
        }
        let anchor = norms.iter().position(|v| *v == old_max).expect("max");
        let (chosen, _) = conic_caratheodory_anchor(&rows, anchor)?;
        let p = chosen.len();
        let t = fam.n / p;
        ensure(t >= 1, "balance-window", || format!("n = {} below {} rows", fam.n, p))?;

        // colors ordered so that windows of consecutive colors track 1/p of each row
        let inv_n = frac(1, fam.n as i64);
        let devs: Vec<RatVec> = (0..fam.n)
            .map(|j| {
                let mut v = Vec::with_capacity(d * p);
                for &r in &chosen {
                    let dev = fam.vectors[j][sigma[j][r]].sub(&rows[r].scale(&inv_n));
                    v.extend(dev.0);
                }
                RatVec(v)
            })
            .collect();
        let ext = NormSpec::block_max(fam.norm.clone(), d);
        let tau = steinitz_rearrange(&VectorSequence::new(devs, d * p, ext)?)?.permutation;

        let mut next = sigma.clone();
        for (pos, &j) in tau.iter().enumerate() {
            let shift = pos / t;
            if shift >= p {
                continue;
            }
            for b in 0..p {
                next[j][chosen[b]] = sigma[j][chosen[(b + shift) % p]];
            }
        }

        let new_rows = fam.row_sums(Some(&next));
        let new_norms: Vec<Rat> = new_rows.iter().map(|r| fam.norm.eval(r)).collect();
        let touched_max = chosen.iter().map(|&r| new_norms[r].clone()).max().expect("rows");
        let chain_bound =
            int((dd + 1) * (4 * dd * (dd + 1) + 2)) + frac(dd, dd + 1) * &old_max;
        ensure(touched_max <= chain_bound, "balance-chain", || {
            format!("touched row norm {} above {}", touched_max, chain_bound)
        })?;
        ensure(touched_max < old_max, "balance-touched", || {
            format!("touched row norm {} not below {}", touched_max, old_max)
        })?;
        let (new_max, new_count) = max_and_count(&new_norms);
        ensure(
            new_max < old_max || (new_max == old_max && new_count < old_count),
            "balance-potential",
            || format!("({}, {}) -> ({}, {})", old_max, old_count, new_max, new_count),
        )?;
        trace.push(BalanceStep {
            old_max,
            old_count,
            new_max,
            new_count,
            rows: chosen,
            touched_max,
            chain_bound,
        });
        sigma = next;
    }
}

fn trivial_route(fam: &ColoredFamily) -> Result<ColorfulCertificate> {
    let rows = fam.row_sums(None);
    let cert = steinitz_rearrange(&VectorSequence::new(rows, fam.d, fam.norm.clone())?)?;
    let perms = vec![cert.permutation; fam.n];
    let achieved_max = fam.max_prefix(&perms, None)?;
    Ok(ColorfulCertificate {
        permutations: perms,
        certified_bound: colorful_bound(fam.n, fam.d),
        achieved_max,
        route: Route::TrivialND,
        phase1_row_bound: None,
        drift: None,
        soft_bound: None,
    })
}

fn balanced_route(fam: &ColoredFamily) -> Result<ColorfulCertificate> {
    let bal = balance_rows(fam)?;
    let rows = fam.row_sums(Some(&bal.sigma));
    let rho = steinitz_rearrange(&VectorSequence::new(rows, fam.d, fam.norm.clone())?)?.permutation;
    let perms: Vec<Vec<usize>> = bal
        .sigma
        .iter()
        .map(|s| rho.iter().map(|&r| s[r]).collect())
        .collect();
    let achieved_max = fam.max_prefix(&perms, None)?;
    Ok(ColorfulCertificate {
        permutations: perms,
        certified_bound: colorful_bound(fam.n, fam.d),
        achieved_max,
        route: Route::Balanced40d5,
        phase1_row_bound: Some(bal.row_bound),
        drift: None,
        soft_bound: None,
    })
}

/// Rearrange every color so that all common prefixes are bounded by
/// `min{n·d, 40·d⁵}`.
pub fn colorful_rearrange(fam: &ColoredFamily) -> Result<ColorfulCertificate> {
    fam.check_zero_sum_unit()?;
    let mut best = trivial_route(fam)?;
    let d5 = 40 * (fam.d as i64).pow(5);
    if (fam.n * fam.d) as i64 > d5 {
        let bal = balanced_route(fam)?;
        if bal.achieved_max < best.achieved_max {
            best = ColorfulCertificate {
                phase1_row_bound: bal.phase1_row_bound.clone(),
                ..bal
            };
        } else {
            best.phase1_row_bound = bal.phase1_row_bound;
        }
    }
    ensure(best.achieved_max <= best.certified_bound, "colorful-bound", || {
        format!("achieved {} above {}", best.achieved_max, best.certified_bound)
    })?;
    Ok(best)
}

/// Affine variant for families that need not sum to zero: prefixes are
/// measured against the drift `(k/m)·S` where `S` is the total.
pub fn colorful_affine(fam: &ColoredFamily) -> Result<ColorfulCertificate> {
    fam.check_unit_ball()?;
    if fam.m == 0 || fam.n == 0 {
        return Err(Error::InvalidInput("empty family".into()));
    }
    let total = fam.total();
    let shift = total.scale(&frac(1, (fam.n * fam.m) as i64));
    let half = frac(1, 2);
    let centered: Vec<Vec<RatVec>> = fam
        .vectors
        .iter()
        .map(|c| c.iter().map(|v| v.sub(&shift).scale(&half)).collect())
        .collect();
    let cfam = ColoredFamily::new(fam.d, centered, fam.norm.clone())?;
    let inner = colorful_rearrange(&cfam)?;
    let drift = total.scale(&frac(1, fam.m as i64));
    let achieved_max = fam.max_prefix(&inner.permutations, Some(&drift))?;
    let soft = colorful_bound(fam.n, fam.d);
    let certified_bound = int(2) * &soft;
    ensure(achieved_max <= certified_bound, "affine-bound", || {
        format!("deviation {} above {}", achieved_max, certified_bound)
    })?;
    Ok(ColorfulCertificate {
        permutations: inner.permutations,
        certified_bound,
        achieved_max,
        route: inner.route,
        phase1_row_bound: inner.phase1_row_bound,
        drift: Some(drift),
        soft_bound: Some(soft),
    })
}

/// 0/1 vector with ones at the `k` largest entries of `y` (ties by index).
pub fn round_to_binary(y: &[Rat], k: usize) -> Result<Vec<bool>> {
    if y.iter().any(|v| v.is_negative() || *v > Rat::one()) {
        return Err(Error::InvalidInput("entries must lie in [0,1]".into()));
    }
    if y.iter().sum::<Rat>() != int(k as i64) {
        return Err(Error::InvalidInput(format!("entries do not sum to {}", k)));
    }
    let mut order: Vec<usize> = (0..y.len()).collect();
    order.sort_by(|&a, &b| y[b].cmp(&y[a]).then(a.cmp(&b)));
    let mut z = vec![false; y.len()];
    for &i in &order[..k] {
        z[i] = true;
    }
    Ok(z)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubsetSelection {
    /// `sets[j]`: ascending indices chosen from color `j`.
    pub sets: Vec<Vec<usize>>,
    pub k: usize,
    pub achieved: Rat,
    /// Fractional entries in the vertex before rounding.
    pub fractional: usize,
}

/// Choose `k` vectors from every color so that the total has norm at most `d`.
pub fn single_partial_sum(fam: &ColoredFamily, k: usize) -> Result<SubsetSelection> {
    fam.check_zero_sum_unit()?;
    if k > fam.m {
        return Err(Error::InvalidInput(format!("k = {} exceeds m = {}", k, fam.m)));
    }
    let (n, m, d) = (fam.n, fam.m, fam.d);
    let nv = n * m;
    let mut mat = RatMat::zeros(d + n, nv);
    for j in 0..n {
        for i in 0..m {
            let col = j * m + i;
            for c in 0..d {
                mat.set(c, col, fam.vectors[j][i][c].clone());
            }
            mat.set(d + j, col, Rat::one());
        }
    }
    let mut b = RatVec::zeros(d + n);
    for j in 0..n {
        b[d + j] = int(k as i64);
    }
    let lp = BoxLP {
        m: mat,
        b,
        lower: vec![Some(Rat::zero()); nv],
        upper: vec![Some(Rat::one()); nv],
        objective: None,
    };
    let start = RatVec(vec![frac(k as i64, m.max(1) as i64); nv]);
    let alpha = purify_to_vertex(&lp, &start)?;
    let fractional = alpha.iter().filter(|v| !v.is_integer()).count();
    ensure(fractional <= 2 * d, "fractional-count", || {
        format!("{} fractional entries at the vertex, more than {}", fractional, 2 * d)
    })?;
    let mut sets = Vec::with_capacity(n);
    for j in 0..n {
        let a = &alpha[j * m..(j + 1) * m];
        let mut set: Vec<usize> = (0..m).filter(|&i| a[i].is_one()).collect();
        let frac_idx: Vec<usize> = (0..m).filter(|&i| !a[i].is_integer()).collect();
        if !frac_idx.is_empty() {
            let y: Vec<Rat> = frac_idx.iter().map(|&i| a[i].clone()).collect();
            let want = k - set.len();
            let z = round_to_binary(&y, want)?;
            set.extend(frac_idx.iter().zip(z).filter(|(_, b)| *b).map(|(&i, _)| i));
            set.sort_unstable();
        }
        sets.push(set);
    }
    let achieved = selection_norm(fam, &sets);
    ensure(achieved <= int(d as i64), "single-sum-bound", || {
        format!("selected sum has norm {}", achieved)
    })?;
    Ok(SubsetSelection { sets, k, achieved, fractional })
}

pub fn selection_norm(fam: &ColoredFamily, sets: &[Vec<usize>]) -> Rat {
    let s = vec_sum(
        fam.d,
        sets.iter()
            .enumerate()
            .flat_map(|(j, set)| set.iter().map(move |&i| &fam.vectors[j][i])),
    );
    fam.norm.eval(&s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn family(d: usize, n: usize, m: usize, seed: u64, norm: NormSpec) -> ColoredFamily {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut vs: Vec<Vec<RatVec>> = (0..n)
            .map(|_| {
                (0..m)
                    .map(|_| (0..d).map(|_| frac(rng.gen_range(-4..=4), 4)).collect())
                    .collect()
            })
            .collect();
        let mean = vec_sum(d, vs.iter().flatten()).scale(&frac(1, (n * m) as i64));
        for v in vs.iter_mut().flatten() {
            v.sub_assign(&mean);
        }
        let r = vs.iter().flatten().map(|v| norm.eval(v)).max().unwrap();
        if r > Rat::one() {
            let inv = r.recip();
            for v in vs.iter_mut().flatten() {
                *v = v.scale(&inv);
            }
        }
        ColoredFamily::new(d, vs, norm).unwrap()
    }

    fn rv(xs: &[i64]) -> RatVec {
        RatVec::from_ints(xs)
    }

    #[test]
    fn anchor_examples() {
        let (idx, lam) = conic_caratheodory_anchor(&[rv(&[1]), rv(&[-1])], 0).unwrap();
        assert_eq!(idx, vec![0, 1]);
        assert_eq!(lam, vec![frac(1, 2), frac(1, 2)]);

        let (idx, lam) = conic_caratheodory_anchor(&[rv(&[0, 0]), rv(&[1, 0]), rv(&[-1, 0])], 0).unwrap();
        assert_eq!((idx, lam), (vec![0], vec![int(1)]));

        let rows = [rv(&[1, 0]), rv(&[0, 1]), rv(&[-1, 0]), rv(&[0, -1])];
        let (idx, lam) = conic_caratheodory_anchor(&rows, 0).unwrap();
        assert!(idx.len() <= 3 && idx[0] == 0);
        assert_eq!(lam.iter().sum::<Rat>(), int(1));
        let mut s = RatVec::zeros(2);
        for (i, l) in idx.iter().zip(&lam) {
            s.add_scaled(l, &rows[*i]);
        }
        assert!(s.is_zero());
    }

    #[test]
    fn rounding_examples() {
        let z = round_to_binary(&[int(1), int(1), int(0)], 2).unwrap();
        assert_eq!(z, vec![true, true, false]);
        let z = round_to_binary(&[frac(1, 2), frac(1, 2)], 1).unwrap();
        assert_eq!(z, vec![true, false]);
        let y = [frac(3, 5), frac(1, 2), frac(1, 2), frac(2, 5)];
        let z = round_to_binary(&y, 2).unwrap();
        assert_eq!(z, vec![true, true, false, false]);
        let dist: Rat = y
            .iter()
            .zip(&z)
            .map(|(a, &b)| (a - if b { int(1) } else { int(0) }).abs())
            .sum();
        assert_eq!(dist, frac(9, 5));
        assert!(round_to_binary(&[frac(1, 2)], 1).is_err());
    }

    #[test]
    fn threshold_and_bounds() {
        assert_eq!(row_threshold(1), int(40));
        assert_eq!(colorful_bound(4, 2), int(8));
        assert_eq!(colorful_bound(100, 1), int(40));
    }

    #[test]
    fn single_color_matches_classical() {
        let fam = family(2, 1, 7, 3, NormSpec::Linf);
        let c = colorful_rearrange(&fam).unwrap();
        assert!(c.achieved_max <= int(2));
        assert_eq!(c.route, Route::TrivialND);
    }

    #[test]
    fn figure_shape() {
        let fam = family(2, 4, 4, 11, NormSpec::Linf);
        let c = colorful_rearrange(&fam).unwrap();
        assert_eq!(c.certified_bound, int(8));
        assert!(c.achieved_max <= int(8));
    }

    #[test]
    fn balanced_route_on_skewed_family() {
        // d = 1, 60 colors: every color holds +1 at slot 0 and −1 at slot 1
        let color = vec![rv(&[1]), rv(&[-1]), rv(&[0])];
        let fam = ColoredFamily::new(1, vec![color; 60], NormSpec::Linf).unwrap();
        let bal = balance_rows(&fam).unwrap();
        assert!(bal.row_bound <= int(40));
        assert!(!bal.trace.is_empty());
        for s in &bal.trace {
            assert!(s.new_max < s.old_max || s.new_count < s.old_count);
            assert!(s.touched_max <= s.chain_bound);
        }
        let c = colorful_rearrange(&fam).unwrap();
        assert!(c.phase1_row_bound.is_some());
        assert!(c.achieved_max <= int(40));
    }

    #[test]
    fn balance_is_noop_below_threshold() {
        let fam = family(1, 3, 4, 9, NormSpec::L1);
        let bal = balance_rows(&fam).unwrap();
        assert!(bal.trace.is_empty());
        assert!(bal.sigma.iter().all(|s| s.iter().enumerate().all(|(i, &v)| i == v)));
    }

    #[test]
    fn affine_constant_family_has_no_deviation() {
        let e = rv(&[1, 0]);
        let fam = ColoredFamily::new(2, vec![vec![e.clone(); 3]; 2], NormSpec::Linf).unwrap();
        assert_eq!(colorful_affine(&fam).unwrap().achieved_max, int(0));
    }

    #[test]
    fn affine_nonzero_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let vs: Vec<Vec<RatVec>> = (0..3)
            .map(|_| (0..5).map(|_| (0..2).map(|_| frac(rng.gen_range(-3..=3), 3)).collect()).collect())
            .collect();
        let fam = ColoredFamily::new(2, vs, NormSpec::Linf).unwrap();
        let c = colorful_affine(&fam).unwrap();
        assert_eq!(c.certified_bound, int(12));
        assert!(c.achieved_max <= int(12));
    }

    #[test]
    fn single_sum_edges() {
        let fam = family(2, 3, 4, 5, NormSpec::L1);
        let s0 = single_partial_sum(&fam, 0).unwrap();
        assert!(s0.sets.iter().all(Vec::is_empty));
        let s4 = single_partial_sum(&fam, 4).unwrap();
        assert_eq!(s4.achieved, int(0));
        assert!(single_partial_sum(&fam, 5).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn colorful_bound_holds(seed in any::<u64>(), d in 1usize..=3, n in 1usize..=5, m in 1usize..=6, l1 in any::<bool>()) {
            let norm = if l1 { NormSpec::L1 } else { NormSpec::Linf };
            let fam = family(d, n, m, seed, norm);
            let c = colorful_rearrange(&fam).unwrap();
            prop_assert!(c.achieved_max <= colorful_bound(n, d));
            for p in &c.permutations {
                prop_assert!(is_permutation(p, m));
            }
        }

        #[test]
        fn single_sum_holds(seed in any::<u64>(), d in 1usize..=3, n in 1usize..=4, m in 1usize..=6, kk in 0usize..=6) {
            let fam = family(d, n, m, seed, NormSpec::Linf);
            let k = kk.min(m);
            let s = single_partial_sum(&fam, k).unwrap();
            prop_assert!(s.fractional <= 2 * d);
            prop_assert!(s.sets.iter().all(|x| x.len() == k));
            prop_assert!(s.achieved <= int(d as i64));
        }

        #[test]
        fn rounding_distance(seed in any::<u64>(), m in 1usize..=12) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut y: Vec<Rat> = (0..m).map(|_| frac(rng.gen_range(0..=6), 6)).collect();
            // fix the total to an integer by adjusting entries downward
            let mut excess = y.iter().sum::<Rat>() - y.iter().sum::<Rat>().floor();
            for v in y.iter_mut() {
                let take = excess.clone().min(v.clone());
                *v -= &take;
                excess -= take;
            }
            let k = y.iter().sum::<Rat>().to_integer().try_into().unwrap();
            let z = round_to_binary(&y, k).unwrap();
            let dist: Rat = y.iter().zip(&z).map(|(a, &b)| (a - if b { int(1) } else { int(0) }).abs()).sum();
            prop_assert!(dist * int(2) <= int(m as i64));
        }
    }
}
