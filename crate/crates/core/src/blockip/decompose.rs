//! Splitting a kernel point into bounded integer pieces.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::constants::InstanceConstants;
use super::{FourBlockInstance, KernelPoint};
use crate::colorful::{colorful_affine, ColoredFamily};
use crate::error::{ensure, Error, Result};
use crate::exact::{
    big, int, int_mul, inverse, lcm_abs_dets, NormSpec, Rat, RatMat, RatVec,
};
use crate::lp::{
    enum_integer_points, extreme_rays, lp_feasible_point, lp_solve, purify_to_vertex, to_ratvec,
    BoxLP, LpOutcome,
};
use crate::steinitz::{steinitz_rearrange, VectorSequence};

fn zero_padded(inst: &FourBlockInstance, i: usize, part: &[Rat]) -> RatVec {
    let mut v = RatVec::zeros(inst.ny());
    let o = inst.y_offset(i);
    v[o..o + part.len()].clone_from_slice(part);
    v
}

fn require_lifted(inst: &FourBlockInstance) -> Result<()> {
    if inst.a0.is_zero() {
        Ok(())
    } else {
        Err(Error::InvalidInput("expected an instance with A0 = 0 (call lift first)".into()))
    }
}

/// Largest nonnegative kernel part of `ŷ`, block by block: `(û, v̂)` with
/// `ŷ = û + v̂` and no nonzero nonnegative vector of `ker A^i` below `v̂^i`.
pub fn split_max_kernel(inst: &FourBlockInstance, pt: &KernelPoint) -> Result<(RatVec, RatVec)> {
    require_lifted(inst)?;
    let mut u = RatVec::zeros(inst.ny());
    for (i, bl) in inst.blocks.iter().enumerate() {
        let yi = inst.y_block(&pt.y, i);
        if yi.iter().all(Zero::is_zero) {
            continue;
        }
        let t = bl.t();
        let lp = BoxLP::new(
            bl.a.clone(),
            RatVec::zeros(bl.s()),
            vec![Some(Rat::zero()); t],
            yi.iter().cloned().map(Some).collect(),
        )?
        .maximize(RatVec(vec![Rat::one(); t]));
        match lp_solve(&lp)? {
            LpOutcome::Optimal { x, .. } => {
                let o = inst.y_offset(i);
                u[o..o + t].clone_from_slice(&x);
            }
            _ => return Err(Error::property("maximal-split", "kernel split LP failed")),
        }
    }
    let v = pt.y.sub(&u);
    let ic = super::instance_constants(inst)?;
    let bound = &ic.omega1 * pt.x.linf();
    ensure(v.linf() <= bound, "split-bound", || {
        format!("‖v̂‖∞ = {} above ω1‖x̂‖∞ = {}", v.linf(), bound)
    })?;
    Ok((u, v))
}

/// Lexicographically first nonzero integer `w̄ ∈ ker A` with `0 ≤ w̄ ≤ w`
/// and `‖w̄‖₁ ≤ cap`.
pub fn minimal_kernel_below(a: &RatMat, w: &[Rat], cap: &BigInt) -> Option<RatVec> {
    let rows = a.to_int_rows()?;
    let lower = vec![Rat::zero(); w.len()];
    let mut it = enum_integer_points(&lower, w, Some(cap.clone()), |z| {
        z.iter().any(|v| !v.is_zero()) && int_mul(&rows, z).iter().all(Zero::is_zero)
    });
    it.next().map(|z| to_ratvec(&z))
}

#[derive(Clone, Debug, PartialEq)]
pub struct UDecomposition {
    pub u0: RatVec,
    /// Extracted pieces, zero-padded to the full `y` dimension, in their final order.
    pub seq: Vec<RatVec>,
    /// Largest prefix deviation `‖Σ_{j≤k} Cû_j − (k/α0) q‖∞` after ordering.
    pub order_max: Rat,
}

/// Peels bounded kernel vectors off `û` and orders them so that their
/// images under `C` stay close to the average.
pub fn decompose_u(inst: &FourBlockInstance, u: &RatVec) -> Result<UDecomposition> {
    require_lifted(inst)?;
    let ic = super::instance_constants(inst)?;
    let kb = &ic.kernel_bound;
    let cap = kb.to_integer();
    let mut seq = Vec::new();
    let mut u0 = RatVec::zeros(inst.ny());
    for (i, bl) in inst.blocks.iter().enumerate() {
        let ui = inst.y_block(u, i);
        if !bl.a.mul_vec(ui).is_zero() || ui.iter().any(Signed::is_negative) {
            return Err(Error::InvalidInput(format!("û is not a nonnegative kernel point of block {}", i + 1)));
        }
        let mut res = RatVec(ui.to_vec());
        while &res.l1() > kb {
            let w = minimal_kernel_below(&bl.a, &res, &cap).ok_or_else(|| {
                Error::property("kernel-extraction", format!("no kernel vector below a residual of ℓ1 norm {}", res.l1()))
            })?;
            let fit = w
                .iter()
                .zip(res.iter())
                .filter(|(wk, _)| wk.is_positive())
                .map(|(wk, rk)| (rk / wk).floor())
                .min()
                .expect("nonzero piece");
            let need = ((res.l1() - kb) / w.l1()).ceil();
            let c = fit.min(need);
            debug_assert!(c >= Rat::one());
            res.add_scaled(&-c.clone(), &w);
            let padded = zero_padded(inst, i, &w);
            let copies = c.to_integer().try_into().unwrap_or(usize::MAX);
            seq.extend(std::iter::repeat(padded).take(copies));
        }
        let o = inst.y_offset(i);
        u0[o..o + res.len()].clone_from_slice(&res);
    }

    let alpha0 = seq.len();
    let mut order_max = Rat::zero();
    if alpha0 > 0 {
        let images: Vec<RatVec> = seq.iter().map(|v| inst.c_apply(v)).collect();
        let q = crate::exact::vec_sum(inst.s0, &images);
        let mean = q.scale(&Rat::new(BigInt::one(), BigInt::from(alpha0)));
        let dev: Vec<RatVec> = images.iter().map(|c| c.sub(&mean)).collect();
        let vs = VectorSequence::new(dev, inst.s0, NormSpec::Linf)?;
        let cert = steinitz_rearrange(&vs)?;
        seq = cert.permutation.iter().map(|&k| seq[k].clone()).collect();
        order_max = cert.achieved_max;
    }

    // properties i) to iv)
    let bound_iv = ic.u_order_bound();
    ensure(order_max <= bound_iv, "u-order", || format!("prefix deviation {} above {}", order_max, bound_iv))?;
    for w in &seq {
        ensure(w.is_integral() && &w.l1() <= kb, "u-piece", || format!("piece {} violates ℓ1 ≤ {}", w, kb))?;
        ensure(inst.blocks.iter().enumerate().all(|(i, bl)| bl.a.mul_vec(inst.y_block(w, i)).is_zero()), "u-piece", || {
            "piece is not in ker A".into()
        })?;
    }
    for i in 0..inst.n() {
        let r = RatVec(inst.y_block(&u0, i).to_vec());
        ensure(r.is_nonnegative() && &r.l1() <= kb, "u-remainder", || {
            format!("block {} remainder ℓ1 {} above {}", i + 1, r.l1(), kb)
        })?;
    }
    let lhs = int(alpha0 as i64);
    let rhs = u.linf() / kb - int(1);
    ensure(lhs >= rhs, "u-count", || format!("α0 = {} below {}", alpha0, rhs))?;
    let mut total = u0.clone();
    for w in &seq {
        total.add_assign(w);
    }
    ensure(&total == u, "u-sum", || "pieces do not add up to û".into())?;
    Ok(UDecomposition { u0, seq, order_max })
}

/// An invertible column submatrix `D` of `A^i` with `−D⁻¹B^i x ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Basis {
    pub cols: Vec<usize>,
    pub d: RatMat,
    /// `−D⁻¹B^i`.
    pub map: RatMat,
}

impl Basis {
    /// Basic solution `y` with `y_D = −D⁻¹B x` and zeros elsewhere.
    pub fn point(&self, t: usize, x: &[Rat]) -> RatVec {
        let yd = self.map.mul_vec(x);
        let mut y = RatVec::zeros(t);
        for (k, &c) in self.cols.iter().enumerate() {
            y[c] = yd[k].clone();
        }
        y
    }
}

/// Every invertible `s × s` column submatrix of `a`, lex column order.
pub(crate) fn invertible_bases(a: &RatMat, b: &RatMat) -> Vec<Basis> {
    (0..a.cols())
        .combinations(a.rows())
        .filter_map(|cols| {
            let d = a.select_cols(&cols);
            inverse(&d).map(|inv| Basis { map: inv.mul(b).neg(), cols, d })
        })
        .collect()
}

pub fn feasible_bases(a: &RatMat, b: &RatMat, x: &[Rat]) -> Vec<Basis> {
    invertible_bases(a, b)
        .into_iter()
        .filter(|bs| bs.map.mul_vec(x).is_nonnegative())
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConeRays {
    /// Extreme rays of `K`, each in `γ Z^{t0}`.
    pub rays: Vec<RatVec>,
    pub omega2: Rat,
    pub gamma: BigInt,
    pub inequalities: RatMat,
}

/// Extreme rays of `K = {x ≥ 0} ∩ {−D⁻¹B^i x ≥ 0 : D feasible for x̂}`.
pub fn cone_rays_k(inst: &FourBlockInstance, x: &[Rat]) -> Result<ConeRays> {
    require_lifted(inst)?;
    let t0 = inst.t0;
    let mut rows: Vec<Vec<Rat>> = RatMat::identity(t0).row_vecs();
    let mut gamma = BigInt::one();
    for bl in &inst.blocks {
        gamma = num_integer::Integer::lcm(&gamma, &lcm_abs_dets(std::slice::from_ref(&bl.a), bl.s())?);
        for bs in feasible_bases(&bl.a, &bl.b, x) {
            rows.extend(bs.map.row_vecs());
        }
    }
    rows.sort();
    rows.dedup();
    rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    let inequalities = RatMat::from_rows(t0, &rows)?;
    ensure(inequalities.mul_vec(x).is_nonnegative(), "cone-membership", || "x̂ is not in K".into())?;
    let g = big(&gamma);
    let rays: Vec<RatVec> = extreme_rays(&inequalities)?.into_iter().map(|r| r.scale(&g)).collect();
    let omega2 = rays.iter().map(|r| r.linf()).max().unwrap_or_else(Rat::zero);
    Ok(ConeRays { rays, omega2, gamma, inequalities })
}

/// Conic combination `x̂ = Σ λ_ℓ h^ℓ` with at most `t0` positive terms.
pub fn decompose_x(x: &[Rat], rays: &[RatVec]) -> Result<(Vec<Rat>, Vec<RatVec>)> {
    if x.iter().all(Zero::is_zero) {
        return Ok((Vec::new(), Vec::new()));
    }
    let t0 = x.len();
    let mut m = RatMat::zeros(t0, rays.len());
    for (c, r) in rays.iter().enumerate() {
        for k in 0..t0 {
            m.set(k, c, r[k].clone());
        }
    }
    let lp = BoxLP::nonneg(m, RatVec(x.to_vec()))?;
    let lam = lp_feasible_point(&lp)?
        .ok_or_else(|| Error::property("conic-decomposition", "x̂ is not in the cone of the rays"))?;
    let (lambdas, hs): (Vec<Rat>, Vec<RatVec>) = lam
        .iter()
        .zip(rays)
        .filter(|(l, _)| l.is_positive())
        .map(|(l, h)| (l.clone(), h.clone()))
        .unzip();
    ensure(lambdas.len() <= t0, "conic-support", || format!("{} terms for t0 = {}", lambdas.len(), t0))?;
    let mut sum = RatVec::zeros(t0);
    for (l, h) in lambdas.iter().zip(&hs) {
        sum.add_scaled(l, h);
    }
    ensure(sum.0 == x, "conic-sum", || "Σλh differs from x̂".into())?;
    Ok((lambdas, hs))
}

#[derive(Clone, Debug, PartialEq)]
pub struct VDecomposition {
    /// `v_ℓ` (full `y` dimension) with `Σ_ℓ v_ℓ = v̂`.
    pub parts: Vec<RatVec>,
    pub alphas: Vec<usize>,
    /// `v_{ℓ,0}`.
    pub v0: Vec<RatVec>,
    /// `v_{ℓ,j}` for `j = 1..α_ℓ`, in their final order.
    pub seq: Vec<Vec<RatVec>>,
    /// Prefix deviation after ordering, per `ℓ`.
    pub order_max: Vec<Rat>,
    /// Whether every `A^i v^i_{ℓ,0}` came out integral (not needed downstream).
    pub remainder_image_integral: bool,
    /// Whether every remainder met the tighter `(t−s+1)` piece bound.
    pub remainder_tight: bool,
    /// Whether the orders met the `40 s0⁵` bound.
    pub order_tight: bool,
}

fn convex_weights(points: &[RatVec], target: &[Rat]) -> Result<Option<(BoxLP, RatVec)>> {
    let dim = target.len();
    let mut m = RatMat::zeros(dim + 1, points.len());
    for (c, p) in points.iter().enumerate() {
        for k in 0..dim {
            m.set(k, c, p[k].clone());
        }
        m.set(dim, c, Rat::one());
    }
    let mut b = target.to_vec();
    b.push(Rat::one());
    let lp = BoxLP::nonneg(m, RatVec(b))?;
    Ok(lp_feasible_point(&lp)?.map(|x| (lp, x)))
}

/// Splits `v̂` along the rays of `x̂` and peels integer vertex pieces.
pub fn decompose_v(
    inst: &FourBlockInstance,
    ic: &InstanceConstants,
    x: &[Rat],
    lambdas: &[Rat],
    hs: &[RatVec],
    v: &RatVec,
    omega2: &Rat,
) -> Result<VDecomposition> {
    require_lifted(inst)?;
    let nl = lambdas.len();
    let ny = inst.ny();
    if nl == 0 {
        ensure(v.is_zero(), "maximal-split", || "x̂ = 0 but v̂ ≠ 0".into())?;
        return Ok(VDecomposition {
            parts: vec![],
            alphas: vec![],
            v0: vec![],
            seq: vec![],
            order_max: vec![],
            remainder_image_integral: true,
            remainder_tight: true,
            order_tight: true,
        });
    }
    let tsp1 = int(ic.tsp1() as i64);
    let alphas: Vec<usize> = lambdas
        .iter()
        .map(|l| {
            if *l >= tsp1 {
                (l - &tsp1).floor().to_integer().try_into().unwrap_or(usize::MAX)
            } else {
                0
            }
        })
        .collect();
    let vb = ic.piece_bound(omega2);
    let mut parts = vec![RatVec::zeros(ny); nl];
    let mut v0 = vec![RatVec::zeros(ny); nl];
    let mut seq: Vec<Vec<Vec<Rat>>> = alphas.iter().map(|&a| vec![vec![]; a]).collect();
    let mut remainder_image_integral = true;
    let mut remainder_tight = true;
    let hard_rem = int(ic.tsp1() as i64 + 1) * &vb;
    let tight_rem = &tsp1 * &vb;

    for (i, bl) in inst.blocks.iter().enumerate() {
        let t = bl.t();
        let o = inst.y_offset(i);
        let vi = inst.y_block(v, i);
        let bases = feasible_bases(&bl.a, &bl.b, x);
        let pts: Vec<RatVec> = bases.iter().map(|bs| bs.point(t, x)).collect();
        let (_, mu) = convex_weights(&pts, vi)?.ok_or_else(|| {
            Error::property("vertex-decomposition", format!("v̂ of block {} is not a convex combination of vertices", i + 1))
        })?;
        for l in 0..nl {
            let verts: Vec<RatVec> = bases.iter().map(|bs| bs.point(t, &hs[l])).collect();
            let mut part = RatVec::zeros(t);
            for (mk, p) in mu.iter().zip(&verts) {
                part.add_scaled(mk, p);
            }
            let part = part.scale(&lambdas[l]);
            parts[l][o..o + t].clone_from_slice(&part);
            if verts.is_empty() {
                continue;
            }
            for p in &verts {
                ensure(p.is_integral(), "vertex-integrality", || format!("vertex {} is fractional", p))?;
                ensure(p.l1() <= vb, "v-piece", || format!("vertex ℓ1 {} above {}", p.l1(), vb))?;
            }
            // weights τ with Σ τ_D v^D = part / λ, at most t − s + 1 of them positive
            let mut m = RatMat::zeros(t + 1, verts.len());
            for (c, p) in verts.iter().enumerate() {
                for k in 0..t {
                    m.set(k, c, p[k].clone());
                }
                m.set(t, c, Rat::one());
            }
            let mut rhs = part.scale(&lambdas[l].recip()).0;
            rhs.push(Rat::one());
            let lp = BoxLP::nonneg(m, RatVec(rhs))?;
            let tau = purify_to_vertex(&lp, &mu)?;
            let support = tau.iter().filter(|w| w.is_positive()).count();
            ensure(support <= ic.tsp1(), "vertex-support", || {
                format!("{} vertices for t − s + 1 = {}", support, ic.tsp1())
            })?;
            let mut weight: Vec<Rat> = tau.iter().map(|w| w * &lambdas[l]).collect();
            for j in 0..alphas[l] {
                let (best, w) = weight
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
                    .expect("nonempty");
                ensure(*w >= Rat::one(), "vertex-weight", || format!("largest weight {} below 1", w))?;
                seq[l][j].extend(verts[best].iter().cloned());
                weight[best] -= Rat::one();
            }
            let mut rem = RatVec::zeros(t);
            for (w, p) in weight.iter().zip(&verts) {
                rem.add_scaled(w, p);
            }
            let mut check = rem.clone();
            for j in 0..alphas[l] {
                let piece = &seq[l][j];
                check.add_assign(&piece[piece.len() - t..]);
            }
            ensure(check == part, "v-sum", || "pieces do not add up to v_ℓ".into())?;
            ensure(rem.l1() <= hard_rem, "v-remainder", || format!("remainder ℓ1 {} above {}", rem.l1(), hard_rem))?;
            remainder_tight &= rem.l1() <= tight_rem;
            remainder_image_integral &= bl.a.mul_vec(&rem).is_integral();
            v0[l][o..o + t].clone_from_slice(&rem);
        }
        for l in 0..nl {
            for piece in seq[l].iter_mut() {
                if piece.len() < o + t {
                    // blocks without vertices contribute zeros
                    piece.resize(o + t, Rat::zero());
                }
            }
        }
    }
    let seq: Vec<Vec<RatVec>> = seq
        .into_iter()
        .map(|s| {
            s.into_iter()
                .map(|mut p| {
                    p.resize(ny, Rat::zero());
                    RatVec(p)
                })
                .collect()
        })
        .collect();
    let mut total = RatVec::zeros(ny);
    for p in &parts {
        total.add_assign(p);
    }
    ensure(&total == v, "v-split", || "Σ v_ℓ differs from v̂".into())?;

    // property on the count of pieces
    let x_inf = x.iter().map(|a| a.abs()).max().unwrap_or_else(Rat::zero);
    let sum_alpha = int(alphas.iter().sum::<usize>() as i64);
    if omega2.is_positive() {
        let rhs = x_inf / omega2 - int((ic.t0 * (ic.tsp1() + 1)) as i64);
        ensure(sum_alpha >= rhs, "v-count", || format!("Σα = {} below {}", sum_alpha, rhs))?;
    }

    // order each ℓ jointly over blocks
    let scale = ic.piece_scale(omega2);
    let hard = ic.v_order_bound(omega2);
    let literal = ic.v_order_bound_literal(omega2);
    let mut order_tight = true;
    let mut order_max = Vec::with_capacity(nl);
    let mut seq_out = Vec::with_capacity(nl);
    for (l, pieces) in seq.into_iter().enumerate() {
        let a = alphas[l];
        if a == 0 {
            order_max.push(Rat::zero());
            seq_out.push(pieces);
            continue;
        }
        let per_block: Vec<Vec<RatVec>> = (0..inst.n())
            .map(|i| {
                let bl = &inst.blocks[i];
                pieces
                    .iter()
                    .map(|p| bl.c.mul_vec(inst.y_block(p, i)).scale(&scale.recip()))
                    .collect()
            })
            .collect();
        let fam = ColoredFamily::new(inst.s0, per_block, NormSpec::Linf)?;
        let cert = colorful_affine(&fam).map_err(|e| match e {
            Error::OutsideUnitBall(m) => Error::property("v-image-scale", m),
            other => other,
        })?;
        let reordered: Vec<RatVec> = (0..a)
            .map(|k| {
                let mut p = RatVec::zeros(ny);
                for (i, bl) in inst.blocks.iter().enumerate() {
                    let o = inst.y_offset(i);
                    let src = &pieces[cert.permutations[i][k]];
                    p[o..o + bl.t()].clone_from_slice(&src[o..o + bl.t()]);
                }
                p
            })
            .collect();
        let images: Vec<RatVec> = reordered.iter().map(|p| inst.c_apply(p)).collect();
        let p_l = crate::exact::vec_sum(inst.s0, &images);
        let step = p_l.scale(&Rat::new(BigInt::one(), BigInt::from(a)));
        let mut acc = RatVec::zeros(inst.s0);
        let mut worst = Rat::zero();
        for img in &images {
            acc.add_assign(img);
            acc.sub_assign(&step);
            worst = worst.max(acc.linf());
        }
        ensure(worst <= hard, "v-order", || format!("prefix deviation {} above {}", worst, hard))?;
        order_tight &= worst <= literal;
        order_max.push(worst);
        seq_out.push(reordered);
    }
    Ok(VDecomposition {
        parts,
        alphas,
        v0,
        seq: seq_out,
        order_max,
        remainder_image_integral,
        remainder_tight,
        order_tight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockip::Block;
    use crate::exact::frac;

    fn two_col_instance(n: usize) -> FourBlockInstance {
        let blocks = (0..n)
            .map(|_| Block {
                b: RatMat::from_ints(1, &[&[1]]),
                a: RatMat::from_ints(2, &[&[1, -1]]),
                c: RatMat::from_ints(2, &[&[1, 0]]),
            })
            .collect();
        FourBlockInstance::new(1, 1, RatMat::zeros(1, 1), blocks, RatVec::default(), RatVec::default(), RatVec::default(), vec![], vec![])
            .unwrap()
    }

    #[test]
    fn minimal_kernel_examples() {
        let a = RatMat::from_ints(2, &[&[1, -1]]);
        assert_eq!(minimal_kernel_below(&a, &[int(0), int(0)], &BigInt::from(3)), None);
        assert_eq!(
            minimal_kernel_below(&a, &[int(2), int(2)], &BigInt::from(3)),
            Some(RatVec::from_ints(&[1, 1]))
        );
        let a3 = RatMat::from_ints(3, &[&[1, 1, -2]]);
        let w = minimal_kernel_below(&a3, &[int(3), int(1), int(2)], &BigInt::from(9)).unwrap();
        assert!(a3.mul_vec(&w).is_zero() && w.le(&[int(3), int(1), int(2)]) && w.l1() <= int(9));
    }

    #[test]
    fn u_under_cap_is_not_split() {
        let inst = two_col_instance(1);
        let u = RatVec::from_ints(&[3, 3]);
        let d = decompose_u(&inst, &u).unwrap();
        assert!(d.seq.is_empty());
        assert_eq!(d.u0, u);
    }

    #[test]
    fn u_pieces_and_properties() {
        let inst = two_col_instance(2);
        let u = RatVec::from_ints(&[20, 20, 7, 7]);
        let d = decompose_u(&inst, &u).unwrap();
        assert!(d.seq.len() as i64 >= 20 / 6 - 1);
        assert!(d.seq.iter().all(|w| w.l1() <= int(6)));
    }

    #[test]
    fn split_extracts_kernel_mass() {
        let inst = two_col_instance(1);
        let pt = KernelPoint { x: RatVec::from_ints(&[0]), y: RatVec::from_ints(&[2, 2]) };
        let (u, v) = split_max_kernel(&inst, &pt).unwrap();
        assert_eq!(u, RatVec::from_ints(&[2, 2]));
        assert!(v.is_zero());
    }

    #[test]
    fn bases_examples() {
        let a = RatMat::from_ints(2, &[&[1, 2]]);
        let b = RatMat::from_ints(1, &[&[-2]]);
        assert_eq!(feasible_bases(&a, &b, &[int(1)]).len(), 2);
        let z = RatMat::zeros(1, 2);
        assert!(feasible_bases(&z, &b, &[int(1)]).is_empty());
        let id = RatMat::identity(2);
        let bb = RatMat::from_ints(1, &[&[-1], &[0]]);
        assert_eq!(feasible_bases(&id, &bb, &[int(1)]).len(), 1);
    }

    #[test]
    fn x_decomposition() {
        let (l, h) = decompose_x(&[int(3)], &[RatVec::from_ints(&[1])]).unwrap();
        assert_eq!(l, vec![int(3)]);
        assert_eq!(h, vec![RatVec::from_ints(&[1])]);
        let rays = vec![RatVec::from_ints(&[1, 0]), RatVec::from_ints(&[1, 1]), RatVec::from_ints(&[0, 1])];
        let x = [frac(5, 2), int(1)];
        let (l, h) = decompose_x(&x, &rays).unwrap();
        assert!(l.len() <= 2);
        let mut s = RatVec::zeros(2);
        for (a, v) in l.iter().zip(&h) {
            s.add_scaled(a, v);
        }
        assert_eq!(s.0, x);
    }

    #[test]
    fn v_pipeline_unit_blocks() {
        // s = t = s0 = t0 = 1, three blocks with y^i = x
        let blocks = (0..3)
            .map(|k| Block {
                b: RatMat::from_ints(1, &[&[1]]),
                a: RatMat::from_ints(1, &[&[-1]]),
                c: RatMat::from_ints(1, &[&[if k == 2 { -2 } else { 1 }]]),
            })
            .collect();
        let inst = FourBlockInstance::new(1, 1, RatMat::zeros(1, 1), blocks, RatVec::default(), RatVec::default(), RatVec::default(), vec![], vec![])
            .unwrap();
        let pt = KernelPoint { x: RatVec::from_ints(&[9]), y: RatVec::from_ints(&[9, 9, 9]) };
        assert!(inst.in_kernel(&pt));
        let (u, v) = split_max_kernel(&inst, &pt).unwrap();
        assert!(u.is_zero());
        let cone = cone_rays_k(&inst, &pt.x).unwrap();
        assert_eq!(cone.rays, vec![RatVec::from_ints(&[1])]);
        let (l, h) = decompose_x(&pt.x, &cone.rays).unwrap();
        let ic = crate::blockip::instance_constants(&inst).unwrap();
        let d = decompose_v(&inst, &ic, &pt.x, &l, &h, &v, &cone.omega2).unwrap();
        assert_eq!(d.alphas, vec![8]);
        assert_eq!(d.seq[0].len(), 8);
        assert!(d.seq[0].iter().all(|p| p == &RatVec::from_ints(&[1, 1, 1])));
        assert_eq!(d.v0[0], RatVec::from_ints(&[1, 1, 1]));
        assert!(d.remainder_image_integral && d.remainder_tight && d.order_tight);
    }

    #[test]
    fn trivial_cone() {
        let inst = two_col_instance(1);
        let cone = cone_rays_k(&inst, &[int(0)]).unwrap();
        // both 1×1 bases are feasible at x̂ = 0 and force x ≥ 0 and −x ≥ 0
        assert!(cone.gamma == BigInt::one());
        assert!(cone.rays.is_empty());
        assert_eq!(cone.omega2, int(0));
    }
}
