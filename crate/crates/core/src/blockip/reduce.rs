//! Finding an integer kernel vector below a large kernel point.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::constants::{compute_constants, instance_constants, pqr, ConstantsTable};
use super::decompose::{cone_rays_k, decompose_u, decompose_v, decompose_x, split_max_kernel};
use super::{sign_pattern, FourBlockInstance, KernelPoint};
use crate::error::{ensure, Error, Result};
use crate::exact::{int, NormSpec, Rat, RatVec};
use crate::steinitz::{subspace_rearrange, VectorSequence};

/// Every piece of the decomposition of one kernel point.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionBundle {
    pub u_hat: RatVec,
    pub v_hat: RatVec,
    pub u0: RatVec,
    pub u_seq: Vec<RatVec>,
    pub lambdas: Vec<Rat>,
    pub rays: Vec<RatVec>,
    pub alphas: Vec<usize>,
    pub v0: Vec<RatVec>,
    pub v_seq: Vec<Vec<RatVec>>,
    pub omega2: Rat,
    pub gamma: BigInt,
    pub u_order_max: Rat,
    pub v_order_max: Vec<Rat>,
    pub remainder_image_integral: bool,
    pub remainder_tight: bool,
    pub order_tight: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub bundle: DecompositionBundle,
    pub constants: ConstantsTable,
    /// Nonzero integer kernel vector below the input, when a collision was found.
    pub point: Option<KernelPoint>,
    /// Positions `k < k'` of the colliding offsets.
    pub collision: Option<(usize, usize)>,
    /// Largest prefix of the rearranged sequence.
    pub prefix_max: Rat,
    /// Largest `‖O_k − expected_k‖∞`.
    pub offset_max: Rat,
    pub distinct_offsets: usize,
}

fn check_input(inst: &FourBlockInstance, pt: &KernelPoint) -> Result<()> {
    if !inst.a0.is_zero() {
        return Err(Error::InvalidInput("expected an instance with A0 = 0 (call lift first)".into()));
    }
    if !inst.in_kernel(pt) {
        return Err(Error::InvalidInput("point is not in the kernel".into()));
    }
    if !pt.x.is_nonnegative() || !pt.y.is_nonnegative() {
        return Err(Error::InvalidInput("point must be nonnegative".into()));
    }
    inst.require_full_row_rank()
}

/// Runs every decomposition stage and evaluates the constants.
pub fn decompose_point(inst: &FourBlockInstance, pt: &KernelPoint) -> Result<(DecompositionBundle, ConstantsTable)> {
    check_input(inst, pt)?;
    let ic = instance_constants(inst)?;
    let (u_hat, v_hat) = split_max_kernel(inst, pt)?;
    let ud = decompose_u(inst, &u_hat)?;
    let cone = cone_rays_k(inst, &pt.x)?;
    let (lambdas, rays) = decompose_x(&pt.x, &cone.rays)?;
    let vd = decompose_v(inst, &ic, &pt.x, &lambdas, &rays, &v_hat, &cone.omega2)?;
    let bundle = DecompositionBundle {
        u_hat,
        v_hat,
        u0: ud.u0,
        u_seq: ud.seq,
        lambdas,
        rays,
        alphas: vd.alphas,
        v0: vd.v0,
        v_seq: vd.seq,
        omega2: cone.omega2,
        gamma: cone.gamma,
        u_order_max: ud.order_max,
        v_order_max: vd.order_max,
        remainder_image_integral: vd.remainder_image_integral,
        remainder_tight: vd.remainder_tight,
        order_tight: vd.order_tight,
    };
    let table = compute_constants(inst, &ic, &bundle);
    Ok((bundle, table))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Piece {
    V(usize),
    U,
    R,
}

/// Nonzero integer `(x, y) ≤ pt` in the kernel, by a pigeonhole over
/// partial sums of the decomposition. `pt` must be a nonnegative kernel
/// point of an instance with `A0 = 0`.
pub fn reduce_kernel_point(inst: &FourBlockInstance, pt: &KernelPoint) -> Result<Reduction> {
    let (bundle, constants) = decompose_point(inst, pt)?;
    let s0 = inst.s0;
    let (p, q, r) = pqr(inst, &bundle);
    let mut zero = r.clone();
    zero.add_assign(&q);
    for pl in &p {
        zero.add_assign(pl);
    }
    ensure(zero.is_zero(), "zero-sum", || "Σp + q + r ≠ 0".into())?;

    // the ψ-element sequence, r last
    let alpha0 = bundle.u_seq.len();
    let mut tags = Vec::with_capacity(constants.psi);
    let mut vecs = Vec::with_capacity(constants.psi);
    for (l, &a) in bundle.alphas.iter().enumerate() {
        if a > 0 {
            let step = p[l].scale(&Rat::new(1.into(), a.into()));
            for _ in 0..a {
                tags.push(Piece::V(l));
                vecs.push(step.clone());
            }
        }
    }
    if alpha0 > 0 {
        let step = q.scale(&Rat::new(1.into(), alpha0.into()));
        for _ in 0..alpha0 {
            tags.push(Piece::U);
            vecs.push(step.clone());
        }
    }
    tags.push(Piece::R);
    vecs.push(r.clone());
    let r_index = vecs.len() - 1;
    let seq = VectorSequence::new(vecs, s0, NormSpec::Linf)?;
    let cert = subspace_rearrange(&seq)?;
    let mut order: Vec<usize> = cert.permutation.into_iter().filter(|&k| k != r_index).collect();
    order.push(r_index);

    let mut prefix = RatVec::zeros(s0);
    let mut prefix_max = Rat::zero();
    for &k in &order {
        prefix.add_assign(&seq.vectors[k]);
        prefix_max = prefix_max.max(prefix.linf());
    }
    let prefix_bound = &constants.omega3 * int(constants.dim_v as i64 + 1);
    ensure(prefix_max <= prefix_bound, "psi-prefix", || {
        format!("prefix {} above ω3(dimV+1) = {}", prefix_max, prefix_bound)
    })?;

    // offsets O_k for k = 0..ψ−1
    let v_img: Vec<Vec<RatVec>> = bundle
        .v_seq
        .iter()
        .map(|s| s.iter().map(|v| inst.c_apply(v)).collect())
        .collect();
    let u_img: Vec<RatVec> = bundle.u_seq.iter().map(|u| inst.c_apply(u)).collect();
    let nl = bundle.alphas.len();
    let mut phi = vec![0usize; nl];
    let mut mu = 0usize;
    let mut counters = vec![(phi.clone(), mu)];
    let mut offset = RatVec::zeros(s0);
    let mut seen: HashMap<Vec<BigInt>, usize> = HashMap::new();
    seen.insert(offset.to_ints().expect("integral"), 0);
    let mut collision = None;
    let mut offset_max = Rat::zero();
    for (k, &idx) in order[..order.len() - 1].iter().enumerate() {
        let k = k + 1;
        match tags[idx] {
            Piece::V(l) => {
                offset.add_assign(&v_img[l][phi[l]]);
                phi[l] += 1;
            }
            Piece::U => {
                offset.add_assign(&u_img[mu]);
                mu += 1;
            }
            Piece::R => unreachable!(),
        }
        let mut expected = RatVec::zeros(s0);
        for l in 0..nl {
            if phi[l] > 0 {
                expected.add_scaled(&Rat::new(phi[l].into(), bundle.alphas[l].into()), &p[l]);
            }
        }
        if mu > 0 {
            expected.add_scaled(&Rat::new(mu.into(), alpha0.into()), &q);
        }
        let dev = offset.sub(&expected).linf();
        ensure(dev <= constants.omega4, "offset-bound", || {
            format!("offset {} deviates {} above ω4 = {}", k, dev, constants.omega4)
        })?;
        offset_max = offset_max.max(dev);
        counters.push((phi.clone(), mu));
        let key = offset.to_ints().ok_or_else(|| Error::property("offset-integrality", format!("offset {} is fractional", k)))?;
        if collision.is_none() {
            if let Some(&prev) = seen.get(&key) {
                collision = Some((prev, k));
            }
        }
        seen.entry(key).or_insert(k);
    }
    let distinct_offsets = seen.len();

    let point = match collision {
        Some((k, k2)) => Some(assemble(inst, pt, &bundle, &counters[k], &counters[k2])?),
        None => {
            let norm = pt.linf();
            ensure(norm <= constants.xi, "pigeonhole", || {
                format!("no collision although ‖pt‖∞ = {} exceeds ξ = {}", norm, constants.xi)
            })?;
            None
        }
    };
    Ok(Reduction { bundle, constants, point, collision, prefix_max, offset_max, distinct_offsets })
}

fn assemble(
    inst: &FourBlockInstance,
    pt: &KernelPoint,
    b: &DecompositionBundle,
    lo: &(Vec<usize>, usize),
    hi: &(Vec<usize>, usize),
) -> Result<KernelPoint> {
    let mut x = RatVec::zeros(inst.t0);
    let mut y = RatVec::zeros(inst.ny());
    for l in 0..b.alphas.len() {
        let (a, c) = (lo.0[l], hi.0[l]);
        x.add_scaled(&int((c - a) as i64), &b.rays[l]);
        for v in &b.v_seq[l][a..c] {
            y.add_assign(v);
        }
    }
    for u in &b.u_seq[lo.1..hi.1] {
        y.add_assign(u);
    }
    let g = KernelPoint { x, y };
    ensure(!(g.x.is_zero() && g.y.is_zero()), "result-nonzero", || "assembled vector is zero".into())?;
    ensure(g.x.is_integral() && g.y.is_integral(), "result-integral", || "assembled vector is fractional".into())?;
    ensure(inst.in_kernel(&g), "result-kernel", || "assembled vector is not in ker H".into())?;
    ensure(g.x.is_nonnegative() && g.y.is_nonnegative(), "result-nonnegative", || "assembled vector has a negative entry".into())?;
    ensure(g.x.le(&pt.x) && g.y.le(&pt.y), "result-below", || "assembled vector is not below the input".into())?;
    Ok(g)
}

/// [`reduce_kernel_point`] for any instance and any kernel point: columns
/// are sign-flipped to make the point nonnegative and `A0` is lifted away.
/// The returned vector is conformal to `pt` (`g ⊑ pt`).
pub fn reduce_point(inst: &FourBlockInstance, pt: &KernelPoint) -> Result<Reduction> {
    if !inst.in_kernel(pt) {
        return Err(Error::InvalidInput("point is not in the kernel".into()));
    }
    let flip = sign_pattern(&pt.concat());
    let flipped = inst.flip_columns(&flip);
    let abs = KernelPoint {
        x: pt.x.iter().map(|v| v.abs()).collect(),
        y: pt.y.iter().map(|v| v.abs()).collect(),
    };
    let lifted = flipped.lift();
    let mut red = reduce_kernel_point(&lifted, &flipped.lift_point(&abs))?;
    if let Some(g) = red.point.take() {
        let g = flipped.unlift_point(&g);
        let sign = |v: &Rat, f: bool| if f { -v.clone() } else { v.clone() };
        let t0 = inst.t0;
        let x = g.x.iter().zip(&flip[..t0]).map(|(v, &f)| sign(v, f)).collect();
        let y = g.y.iter().zip(&flip[t0..]).map(|(v, &f)| sign(v, f)).collect();
        red.point = Some(KernelPoint { x, y });
    }
    Ok(red)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockip::Block;
    use crate::exact::RatMat;

    fn pair_instance() -> FourBlockInstance {
        let blocks = vec![
            Block { b: RatMat::from_ints(1, &[&[0]]), a: RatMat::from_ints(2, &[&[1, -1]]), c: RatMat::from_ints(2, &[&[1, 0]]) },
            Block { b: RatMat::from_ints(1, &[&[0]]), a: RatMat::from_ints(2, &[&[1, -1]]), c: RatMat::from_ints(2, &[&[-1, 0]]) },
        ];
        FourBlockInstance::new(1, 1, RatMat::zeros(1, 1), blocks, RatVec::default(), RatVec::default(), RatVec::default(), vec![], vec![])
            .unwrap()
    }

    #[test]
    fn zero_point_has_nothing() {
        let inst = pair_instance();
        let pt = KernelPoint { x: RatVec::zeros(1), y: RatVec::zeros(4) };
        let red = reduce_kernel_point(&inst, &pt).unwrap();
        assert!(red.point.is_none());
        assert_eq!(red.constants.psi, 1);
        assert_eq!(red.constants.dim_v, 0);
    }

    #[test]
    fn large_point_collides() {
        let inst = pair_instance();
        let pt = KernelPoint { x: RatVec::zeros(1), y: RatVec::from_ints(&[20, 20, 20, 20]) };
        let red = reduce_kernel_point(&inst, &pt).unwrap();
        let g = red.point.expect("collision");
        assert!(inst.in_kernel(&g));
        assert!(g.y.le(&pt.y));
    }

    #[test]
    fn negative_entries_are_handled() {
        let inst = pair_instance();
        let pt = KernelPoint { x: RatVec::zeros(1), y: RatVec::from_ints(&[-20, -20, -20, -20]) };
        let red = reduce_point(&inst, &pt).unwrap();
        let g = red.point.expect("collision");
        assert!(inst.in_kernel(&g));
        assert!(g.y.iter().all(|v| v.is_negative() || v.is_zero()));
    }
}
