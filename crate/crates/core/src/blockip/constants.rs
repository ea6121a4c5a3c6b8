//! Explicit constants of the kernel reduction.
//!
//! Shapes may differ between blocks (the lifted first block is `t0 × t0`);
//! every constant uses the largest `s`, `t` and `t − s` over blocks, which
//! only enlarges the bounds.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::FourBlockInstance;
use crate::error::Result;
use crate::exact::{
    big, ceil_sqrt, frac, int, inverse, lcm_abs_dets, null_space_rows, primitive_integer,
    rank_of, rat_pow, Rat, RatVec,
};

/// Constants that depend only on the (lifted) instance.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceConstants {
    pub s0: usize,
    pub t0: usize,
    pub s: usize,
    pub t: usize,
    /// Number of blocks.
    pub n: usize,
    /// `max_i (t_i − s_i)`.
    pub t_minus_s: usize,
    pub delta: Rat,
    /// `t(2sΔ+1)^s`.
    pub kernel_bound: Rat,
    /// `t0 Δ^s ⌈√(s^{s+1})⌉`.
    pub omega1: Rat,
    pub gamma: BigInt,
}

/// Every constant of one run of the reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantsTable {
    pub gamma: Rat,
    pub omega1: Rat,
    pub omega2: Rat,
    pub omega3: Rat,
    pub omega4: Rat,
    pub omega5: Rat,
    pub xi: Rat,
    pub psi: usize,
    pub dim_v: usize,
    pub kernel_bound: Rat,
}

impl ConstantsTable {
    pub fn rows(&self) -> Vec<(&'static str, String)> {
        vec![
            ("gamma", self.gamma.to_string()),
            ("omega1", self.omega1.to_string()),
            ("omega2", self.omega2.to_string()),
            ("omega3", self.omega3.to_string()),
            ("omega4", self.omega4.to_string()),
            ("omega5", self.omega5.to_string()),
            ("xi", self.xi.to_string()),
            ("psi", self.psi.to_string()),
            ("dimV", self.dim_v.to_string()),
            ("kernel_bound", self.kernel_bound.to_string()),
        ]
    }
}

pub fn instance_constants(inst: &FourBlockInstance) -> Result<InstanceConstants> {
    let (s, t) = (inst.s(), inst.t());
    let delta = inst.delta_rat();
    let kernel_bound =
        int(t as i64) * rat_pow(&(int(2 * s as i64) * &delta + int(1)), s);
    let s_pow = BigInt::from(s).pow((s + 1) as u32);
    let omega1 = int(inst.t0 as i64) * rat_pow(&delta, s) * big(&ceil_sqrt(&s_pow));
    let mut gamma = BigInt::one();
    for bl in &inst.blocks {
        gamma = gamma.lcm(&lcm_abs_dets(std::slice::from_ref(&bl.a), bl.s())?);
    }
    let t_minus_s = inst
        .blocks
        .iter()
        .map(|b| b.t().saturating_sub(b.s()))
        .max()
        .unwrap_or(0);
    Ok(InstanceConstants {
        s0: inst.s0,
        t0: inst.t0,
        s,
        t,
        n: inst.n(),
        t_minus_s,
        delta,
        kernel_bound,
        omega1,
        gamma,
    })
}

impl InstanceConstants {
    /// `t − s + 1`.
    pub fn tsp1(&self) -> usize {
        self.t_minus_s + 1
    }

    fn s_pow_s(&self) -> Rat {
        rat_pow(&int(self.s as i64), self.s)
    }

    /// `Δ^{s+1} s^s t0 ω2`: ℓ₁ bound of one extracted piece per block.
    pub fn piece_bound(&self, omega2: &Rat) -> Rat {
        rat_pow(&self.delta, self.s + 1) * self.s_pow_s() * int(self.t0 as i64) * omega2
    }

    /// `Δ^{s+2} s^s t0 ω2`: ℓ∞ bound of `C^i` applied to one piece.
    pub fn piece_scale(&self, omega2: &Rat) -> Rat {
        &self.delta * self.piece_bound(omega2)
    }

    /// `s0 · 2Δ · t(2sΔ+1)^s`.
    pub fn u_order_bound(&self) -> Rat {
        int(2 * self.s0 as i64) * &self.delta * &self.kernel_bound
    }

    fn forty_s0_5(&self) -> Rat {
        int(40 * (self.s0 as i64).pow(5))
    }

    /// Bound enforced on the reordered pieces: `2·min{n s0, 40 s0⁵}` times the scale.
    pub fn v_order_bound(&self, omega2: &Rat) -> Rat {
        let m = int((self.n * self.s0) as i64).min(self.forty_s0_5());
        int(2) * m * self.piece_scale(omega2)
    }

    /// `40 s0⁵ Δ^{s+2} s^s t0 ω2`.
    pub fn v_order_bound_literal(&self, omega2: &Rat) -> Rat {
        self.forty_s0_5() * self.piece_scale(omega2)
    }

    pub fn omega4(&self, omega2: &Rat) -> Rat {
        let v = self.v_order_bound(omega2).max(self.v_order_bound_literal(omega2));
        self.u_order_bound() + int(self.t0 as i64) * v
    }

    /// Count bound for the integer offsets, with `√s0` replaced by `⌈√s0⌉`.
    pub fn omega5(&self, omega3: &Rat, omega4: &Rat, dim_v: usize) -> Rat {
        let root = big(&ceil_sqrt(&BigInt::from(self.s0)));
        let half = frac(1, 2);
        let inner = &root * (omega3 * int(dim_v as i64 + 1) + omega4 + &half);
        let outer = &root * (omega4 + &half);
        int(36) * rat_pow(&inner, dim_v) * rat_pow(&outer, self.s0.saturating_sub(dim_v))
    }

    /// `(ω5 + t0(t−s+2) + 1)·ω2·ω1·t(2sΔ+1)^s` with `ω1, ω2` floored at 1.
    pub fn xi(&self, omega5: &Rat, omega2: &Rat) -> Rat {
        let one = Rat::one();
        let w1 = self.omega1.clone().max(one.clone());
        let w2 = omega2.clone().max(one);
        (omega5 + int((self.t0 * (self.tsp1() + 1)) as i64) + int(1)) * w2 * w1 * &self.kernel_bound
    }

    /// `ω2` bound valid for every kernel point: `γ` times the largest
    /// primitive direction cut out by `t0 − 1` of the candidate inequalities.
    pub fn omega2_bound(&self, inst: &FourBlockInstance) -> Rat {
        let t0 = self.t0;
        let mut rows: Vec<Vec<Rat>> = (0..t0)
            .map(|k| (0..t0).map(|c| if c == k { int(1) } else { int(0) }).collect())
            .collect();
        for bl in &inst.blocks {
            for cols in (0..bl.t()).combinations(bl.s()) {
                if let Some(inv) = inverse(&bl.a.select_cols(&cols)) {
                    let m = inv.mul(&bl.b).neg();
                    rows.extend(m.row_vecs());
                }
            }
        }
        rows.sort();
        rows.dedup();
        let mut best = BigInt::one();
        if t0 >= 2 {
            for sub in rows.iter().combinations(t0 - 1) {
                let sub: Vec<Vec<Rat>> = sub.into_iter().cloned().collect();
                let ns = null_space_rows(sub, t0);
                if ns.len() == 1 {
                    let g = primitive_integer(&ns[0]);
                    if let Some(m) = g.iter().map(|x| x.magnitude().clone()).max() {
                        best = best.max(BigInt::from(m));
                    }
                }
            }
        }
        big(&(best * &self.gamma))
    }

    /// Constants valid for every nonnegative kernel point of `inst`.
    pub fn a_priori(&self, inst: &FourBlockInstance) -> ConstantsTable {
        let omega2 = self.omega2_bound(inst);
        let vb = self.piece_bound(&omega2);
        let nd = int(self.n as i64) * &self.delta;
        let p_bound = &nd * &vb;
        let q_bound = &self.delta * &self.kernel_bound;
        let r_bound = int((self.t0 * (self.tsp1() + 1)) as i64) * &nd * &vb + &nd * &self.kernel_bound;
        let omega3 = p_bound.max(q_bound).max(r_bound);
        let dim_v = self.s0.min(self.t0 + 2);
        let omega4 = self.omega4(&omega2);
        let omega5 = self.omega5(&omega3, &omega4, dim_v);
        let xi = self.xi(&omega5, &omega2);
        ConstantsTable {
            gamma: big(&self.gamma),
            omega1: self.omega1.clone(),
            omega2,
            omega3,
            omega4,
            omega5,
            xi,
            psi: 0,
            dim_v,
            kernel_bound: self.kernel_bound.clone(),
        }
    }
}

/// `p^ℓ = C Σ_j v_{ℓ,j}`, `q = Σ_j C û_j`, `r = Σ_ℓ C v_{ℓ,0} + C û_0`.
pub(crate) fn pqr(inst: &FourBlockInstance, b: &super::DecompositionBundle) -> (Vec<RatVec>, RatVec, RatVec) {
    let s0 = inst.s0;
    let p: Vec<RatVec> = b
        .v_seq
        .iter()
        .map(|seq| {
            let mut acc = RatVec::zeros(s0);
            for v in seq {
                acc.add_assign(&inst.c_apply(v));
            }
            acc
        })
        .collect();
    let mut q = RatVec::zeros(s0);
    for u in &b.u_seq {
        q.add_assign(&inst.c_apply(u));
    }
    let mut r = inst.c_apply(&b.u0);
    for v in &b.v0 {
        r.add_assign(&inst.c_apply(v));
    }
    (p, q, r)
}

/// Constants of one decomposition.
pub fn compute_constants(
    inst: &FourBlockInstance,
    ic: &InstanceConstants,
    bundle: &super::DecompositionBundle,
) -> ConstantsTable {
    let (p, q, r) = pqr(inst, bundle);
    let alpha0 = bundle.u_seq.len();
    let mut omega3 = r.linf();
    for (pl, &al) in p.iter().zip(&bundle.alphas) {
        if al > 0 {
            omega3 = omega3.max(pl.linf() / int(al as i64));
        }
    }
    if alpha0 > 0 {
        omega3 = omega3.max(q.linf() / int(alpha0 as i64));
    }
    let mut span = vec![r, q];
    span.extend(p);
    let dim_v = rank_of(&span);
    let omega2 = bundle.omega2.clone();
    let omega4 = ic.omega4(&omega2);
    let omega5 = ic.omega5(&omega3, &omega4, dim_v);
    let xi = ic.xi(&omega5, &omega2);
    ConstantsTable {
        gamma: big(&ic.gamma),
        omega1: ic.omega1.clone(),
        omega2,
        omega3,
        omega4,
        omega5,
        xi,
        psi: 1 + alpha0 + bundle.alphas.iter().sum::<usize>(),
        dim_v,
        kernel_bound: ic.kernel_bound.clone(),
    }
}

/// `ξ` of the lifted form of `inst`, valid for every kernel point.
pub fn xi_for(inst: &FourBlockInstance) -> Result<Rat> {
    let lifted = inst.lift();
    Ok(instance_constants(&lifted)?.a_priori(&lifted).xi)
}
