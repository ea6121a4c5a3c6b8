//! Graver elements, the proximity-based solver and its proximity report.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::constants::xi_for;
use super::FourBlockInstance;
use crate::error::{ensure, Error, Result};
use crate::exact::{big, int, int_mul, Rat, RatMat, RatVec};
use crate::lp::{enum_integer_points, lp_solve, to_ratvec, BoxLP, LpOutcome};

/// `h ⊑ g`: same sign pattern where `h` is nonzero and `|h_k| ≤ |g_k|`.
pub fn is_conformal(h: &[Rat], g: &[Rat]) -> bool {
    h.iter().zip(g).all(|(a, b)| {
        a.is_zero() || (a.signum() == b.signum() && a.abs() <= b.abs())
    })
}

/// ⊑-minimal nonzero integer kernel vectors of `h` inside `[−box, box]^n`.
pub fn graver_of_matrix(h: &RatMat, bound: &BigInt) -> Result<Vec<RatVec>> {
    let rows = h
        .to_int_rows()
        .ok_or_else(|| Error::InvalidInput("matrix must be integral".into()))?;
    let n = h.cols();
    let hi = vec![big(bound); n];
    let lo = vec![Rat::zero(); n];
    let mut found: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for signs in (0..n).map(|_| [false, true]).multi_cartesian_product() {
        // points of the orthant with every flipped coordinate nonzero are
        // found here; the rest show up in the orthant with fewer flips
        let pts = enum_integer_points(&lo, &hi, None, |z| {
            if z.iter().all(Zero::is_zero) || z.iter().zip(&signs).any(|(v, &f)| f && v.is_zero()) {
                return false;
            }
            let signed: Vec<BigInt> = z.iter().zip(&signs).map(|(v, &f)| if f { -v } else { v.clone() }).collect();
            int_mul(&rows, &signed).iter().all(Zero::is_zero)
        });
        for z in pts {
            found.insert(z.iter().zip(&signs).map(|(v, &f)| if f { -v } else { v.clone() }).collect());
        }
    }
    let all: Vec<RatVec> = found.iter().map(|z| to_ratvec(z)).collect();
    Ok(all
        .iter()
        .filter(|g| !all.iter().any(|h| h != *g && is_conformal(h, g)))
        .cloned()
        .collect())
}

pub fn graver_enumerate(inst: &FourBlockInstance, bound: &BigInt) -> Result<Vec<RatVec>> {
    if bound < &BigInt::from(1) {
        return Err(Error::InvalidInput("box must be at least 1".into()));
    }
    graver_of_matrix(&inst.matrix(), bound)
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome {
    Optimal { x: RatVec, y: RatVec, value: Rat },
    Infeasible,
    LpUnbounded,
    /// The LP is feasible but no integer point lies within the radius.
    NoIntegerInRadius,
}

fn relaxation(inst: &FourBlockInstance) -> Result<BoxLP> {
    let n = inst.nvars();
    let upper: Vec<Option<Rat>> = inst.ux.iter().chain(inst.uy.iter()).cloned().collect();
    let c: RatVec = inst.cx.iter().chain(inst.cy.iter()).cloned().collect();
    Ok(BoxLP::new(inst.matrix(), inst.b.clone(), vec![Some(Rat::zero()); n], upper)?.maximize(c))
}

/// Finite upper bounds for every variable: the given one, or the LP maximum.
fn implied_upper(inst: &FourBlockInstance) -> Result<Vec<Rat>> {
    let base = relaxation(inst)?;
    let mut out = Vec::with_capacity(inst.nvars());
    for (j, u) in base.upper.iter().enumerate() {
        if let Some(u) = u {
            out.push(u.clone());
            continue;
        }
        let mut e = RatVec::zeros(inst.nvars());
        e[j] = int(1);
        let lp = BoxLP { objective: Some(e), ..base.clone() };
        match lp_solve(&lp)? {
            LpOutcome::Optimal { value, .. } => out.push(value.floor()),
            LpOutcome::Infeasible => out.push(Rat::zero()),
            LpOutcome::Unbounded => {
                return Err(Error::InvalidInput(format!("variable {} is unbounded; give an explicit bound", j + 1)))
            }
        }
    }
    Ok(out)
}

/// Best `(x, y)` with integer `x` in `[x_lo, x_hi]`: per block, every
/// feasible `y^i` is listed, then blocks are combined by a table over the
/// partial sums `Σ C^i y^i`. Fails with `Budget` when more than `budget`
/// candidate points would be visited.
pub fn brute_search_box(
    inst: &FourBlockInstance,
    x_lo: &[Rat],
    x_hi: &[Rat],
    budget: u64,
) -> Result<Option<(RatVec, RatVec, Rat)>> {
    let upper = implied_upper(inst)?;
    let y_hi = &upper[inst.t0..];
    let mut spent = 0u64;
    let mut charge = |k: u64| -> Result<()> {
        spent = spent.saturating_add(k);
        if spent > budget {
            Err(Error::Budget(format!("more than {} candidate points", budget)))
        } else {
            Ok(())
        }
    };
    let block_rows: Vec<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, RatMat)> = inst
        .blocks
        .iter()
        .map(|bl| (bl.a.to_int_rows().expect("integral"), bl.b.to_int_rows().expect("integral"), bl.c.clone()))
        .collect();
    let b_top: Vec<Rat> = inst.b.0[..inst.s0].to_vec();
    let mut best: Option<(RatVec, RatVec, Rat)> = None;
    for xb in enum_integer_points(x_lo, x_hi, None, |_| true) {
        charge(1)?;
        let xr = to_ratvec(&xb);
        // table: partial C-sum → (value, chosen y blocks)
        let mut table: HashMap<RatVec, (Rat, Vec<Vec<BigInt>>)> = HashMap::new();
        table.insert(RatVec::zeros(inst.s0), (inst.cx.dot(&xr), vec![]));
        for (i, (a, bm, c)) in block_rows.iter().enumerate() {
            let o = inst.y_offset(i);
            let t = inst.blocks[i].t();
            let bx = int_mul(bm, &xb);
            let rhs: Vec<BigInt> = (0..a.len())
                .map(|r| inst.b[inst.row_offset(i) + r].to_integer() - &bx[r])
                .collect();
            let lo = vec![Rat::zero(); t];
            let cy_i = &inst.cy[o..o + t];
            let mut options: Vec<(RatVec, Rat, Vec<BigInt>)> = Vec::new();
            for yi in enum_integer_points(&lo, &y_hi[o..o + t], None, |z| int_mul(a, z) == rhs) {
                let yr = to_ratvec(&yi);
                options.push((c.mul_vec(&yr), yr.dot(cy_i), yi));
            }
            charge((options.len() as u64).saturating_mul(table.len() as u64))?;
            let mut next: HashMap<RatVec, (Rat, Vec<Vec<BigInt>>)> = HashMap::new();
            for (key, (val, chosen)) in &table {
                for (img, v, yi) in &options {
                    let k2 = key.add(img);
                    let nv = val + v;
                    let better = next.get(&k2).map_or(true, |(cur, _)| &nv > cur);
                    if better {
                        let mut ch = chosen.clone();
                        ch.push(yi.clone());
                        next.insert(k2, (nv, ch));
                    }
                }
            }
            table = next;
        }
        // linking rows: A0 x + Σ C^i y^i = b_top
        let need = RatVec(b_top.clone()).sub(&inst.a0.mul_vec(&xr));
        if let Some((val, chosen)) = table.remove(&need) {
            if best.as_ref().map_or(true, |(_, _, bv)| &val > bv) {
                let y: RatVec = chosen.iter().flat_map(|yi| yi.iter().map(big)).collect();
                best = Some((xr, y, val));
            }
        }
    }
    Ok(best)
}

/// Solves the LP relaxation, then searches integer `x̄` with
/// `‖x̄ − x̂‖∞ ≤ radius` and the best `y` for each.
pub fn solve_four_block(inst: &FourBlockInstance, radius: &Rat, budget: u64) -> Result<SolveOutcome> {
    let lp = relaxation(inst)?;
    let xhat = match lp_solve(&lp)? {
        LpOutcome::Infeasible => return Ok(SolveOutcome::Infeasible),
        LpOutcome::Unbounded => return Ok(SolveOutcome::LpUnbounded),
        LpOutcome::Optimal { x, .. } => RatVec(x.0[..inst.t0].to_vec()),
    };
    let upper = implied_upper(inst)?;
    let lo: Vec<Rat> = xhat.iter().map(|v| (v - radius).max(Rat::zero())).collect();
    let hi: Vec<Rat> = xhat.iter().zip(&upper).map(|(v, u)| (v + radius).min(u.clone())).collect();
    Ok(match brute_search_box(inst, &lo, &hi, budget)? {
        Some((x, y, value)) => SolveOutcome::Optimal { x, y, value },
        None => SolveOutcome::NoIntegerInRadius,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProximityReport {
    pub lp_vertex: RatVec,
    pub lp_value: Rat,
    /// Every optimal integer solution, as `(x, y)` concatenated.
    pub optimal: Vec<RatVec>,
    pub ip_value: Option<Rat>,
    /// `min ‖z − lp_vertex‖∞` over optimal integer `z`; `None` if infeasible.
    pub distance: Option<Rat>,
    pub xi: Rat,
}

/// Distance from the LP optimum to the nearest optimal integer solution,
/// found by full enumeration of the bounded box.
pub fn proximity_report(inst: &FourBlockInstance, budget: u64) -> Result<ProximityReport> {
    let lp = relaxation(inst)?;
    let (lp_vertex, lp_value) = match lp_solve(&lp)? {
        LpOutcome::Optimal { x, value } => (x, value),
        LpOutcome::Infeasible => return Err(Error::Infeasible("LP relaxation is infeasible".into())),
        LpOutcome::Unbounded => return Err(Error::InvalidInput("LP relaxation is unbounded".into())),
    };
    let xi = xi_for(inst)?;
    let upper = implied_upper(inst)?;
    let lower = vec![Rat::zero(); upper.len()];
    let rows = inst.matrix().to_int_rows().expect("integral");
    let rhs: Vec<BigInt> = inst.b.iter().map(|v| v.to_integer()).collect();
    let c: RatVec = inst.cx.iter().chain(inst.cy.iter()).cloned().collect();
    let mut spent = 0u64;
    let mut optimal: Vec<RatVec> = Vec::new();
    let mut ip_value: Option<Rat> = None;
    for z in enum_integer_points(&lower, &upper, None, |z| {
        spent += 1;
        spent <= budget && int_mul(&rows, z) == rhs
    }) {
        let zr = to_ratvec(&z);
        let v = c.dot(&zr);
        match &ip_value {
            Some(best) if &v < best => {}
            Some(best) if &v == best => optimal.push(zr),
            _ => {
                ip_value = Some(v);
                optimal = vec![zr];
            }
        }
    }
    if spent > budget {
        return Err(Error::Budget(format!("more than {} candidate points", budget)));
    }
    let distance = optimal.iter().map(|z| z.sub(&lp_vertex).linf()).min();
    if let Some(d) = &distance {
        ensure(d <= &xi, "proximity", || format!("distance {} above ξ = {}", d, xi))?;
    }
    Ok(ProximityReport { lp_vertex, lp_value, optimal, ip_value, distance, xi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockip::Block;

    #[test]
    fn graver_of_single_rows() {
        let h = RatMat::from_ints(2, &[&[1, -1]]);
        assert_eq!(graver_of_matrix(&h, &BigInt::from(3)).unwrap(), vec![RatVec::from_ints(&[-1, -1]), RatVec::from_ints(&[1, 1])]);
        let h = RatMat::from_ints(2, &[&[1, 1]]);
        assert_eq!(graver_of_matrix(&h, &BigInt::from(3)).unwrap(), vec![RatVec::from_ints(&[-1, 1]), RatVec::from_ints(&[1, -1])]);
        let h = RatMat::from_ints(3, &[&[1, 1, -2]]);
        let g = graver_of_matrix(&h, &BigInt::from(3)).unwrap();
        assert!(g.contains(&RatVec::from_ints(&[2, 0, 1])));
        assert!(g.contains(&RatVec::from_ints(&[1, -1, 0])));
        assert!(!g.contains(&RatVec::from_ints(&[2, 2, 2])));
    }

    fn small() -> FourBlockInstance {
        let blocks = (0..2)
            .map(|_| Block {
                b: RatMat::from_ints(1, &[&[1]]),
                a: RatMat::from_ints(2, &[&[1, 1]]),
                c: RatMat::from_ints(2, &[&[1, -1]]),
            })
            .collect();
        FourBlockInstance::new(
            1,
            1,
            RatMat::from_ints(1, &[&[1]]),
            blocks,
            RatVec::from_ints(&[1, 3, 3]),
            RatVec::from_ints(&[1]),
            RatVec::from_ints(&[2, 0, 1, 1]),
            vec![Some(int(3))],
            vec![Some(int(3)); 4],
        )
        .unwrap()
    }

    #[test]
    fn solver_matches_full_enumeration() {
        let inst = small();
        let out = solve_four_block(&inst, &int(10), 1_000_000).unwrap();
        let rep = proximity_report(&inst, 1_000_000).unwrap();
        match out {
            SolveOutcome::Optimal { value, .. } => assert_eq!(Some(value), rep.ip_value),
            other => panic!("{:?}", other),
        }
        assert!(rep.distance.unwrap() <= rep.xi);
    }

    #[test]
    fn infeasible_program() {
        let mut inst = small();
        inst.b = RatVec::from_ints(&[1, -1, 3]);
        assert_eq!(solve_four_block(&inst, &int(3), 1000).unwrap(), SolveOutcome::Infeasible);
    }
}
