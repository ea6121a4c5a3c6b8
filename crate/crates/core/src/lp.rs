//! Exact LP over equality systems with box bounds, vertex purification,
//! extreme rays of pointed cones and integer point enumeration.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{big, dot, inverse, null_space, primitive_integer, rank, RatMat, RatVec, Rat};

/// `{x : Mx = b, lower ≤ x ≤ upper}` with an optional objective to maximize.
/// A `None` bound is −∞ (lower) or +∞ (upper).
#[derive(Clone, Debug)]
pub struct BoxLP {
    pub m: RatMat,
    pub b: RatVec,
    pub lower: Vec<Option<Rat>>,
    pub upper: Vec<Option<Rat>>,
    pub objective: Option<RatVec>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: RatVec, value: Rat },
    Infeasible,
    Unbounded,
}

impl BoxLP {
    pub fn new(
        m: RatMat,
        b: RatVec,
        lower: Vec<Option<Rat>>,
        upper: Vec<Option<Rat>>,
    ) -> Result<Self> {
        let lp = BoxLP {
            m,
            b,
            lower,
            upper,
            objective: None,
        };
        lp.validate()?;
        Ok(lp)
    }

    /// All variables in `[0, ∞)`.
    pub fn nonneg(m: RatMat, b: RatVec) -> Result<Self> {
        let n = m.cols();
        Self::new(m, b, vec![Some(Rat::zero()); n], vec![None; n])
    }

    pub fn maximize(mut self, c: RatVec) -> Self {
        self.objective = Some(c);
        self
    }

    pub fn nvars(&self) -> usize {
        self.m.cols()
    }

    fn validate(&self) -> Result<()> {
        let n = self.m.cols();
        if self.b.len() != self.m.rows() || self.lower.len() != n || self.upper.len() != n {
            return Err(Error::Dimension("inconsistent LP dimensions".into()));
        }
        if let Some(c) = &self.objective {
            if c.len() != n {
                return Err(Error::Dimension("objective length".into()));
            }
        }
        for (l, u) in self.lower.iter().zip(&self.upper) {
            if let (Some(l), Some(u)) = (l, u) {
                if l > u {
                    return Err(Error::InvalidInput("lower bound exceeds upper bound".into()));
                }
            }
        }
        Ok(())
    }

    pub fn within_bounds(&self, j: usize, x: &Rat) -> bool {
        self.lower[j].as_ref().map_or(true, |l| x >= l)
            && self.upper[j].as_ref().map_or(true, |u| x <= u)
    }

    pub fn is_feasible(&self, x: &[Rat]) -> bool {
        x.len() == self.nvars()
            && (0..x.len()).all(|j| self.within_bounds(j, &x[j]))
            && self.m.mul_vec(x).0 == self.b.0
    }

    fn strictly_inside(&self, j: usize, x: &Rat) -> bool {
        self.lower[j].as_ref().map_or(true, |l| x > l)
            && self.upper[j].as_ref().map_or(true, |u| x < u)
    }
}

/// Moves a feasible point to a vertex of the feasible region.
///
/// Each round takes a kernel direction of `M` supported on coordinates strictly
/// inside their bounds and walks until one more bound becomes tight, so at most
/// `nvars` rounds are needed.
pub fn purify_to_vertex(lp: &BoxLP, x0: &[Rat]) -> Result<RatVec> {
    lp.validate()?;
    if !lp.is_feasible(x0) {
        return Err(Error::Infeasible("starting point is not feasible".into()));
    }
    let rows = lp.m.rows();
    let mut x = RatVec(x0.to_vec());
    loop {
        let free: Vec<usize> = (0..x.len())
            .filter(|&j| lp.strictly_inside(j, &x[j]))
            .collect();
        if free.is_empty() {
            break;
        }
        // rows+1 columns are always dependent, so a small window suffices
        let sub = if free.len() > rows {
            &free[..rows + 1]
        } else {
            &free[..]
        };
        let Some(z) = null_space(&lp.m.select_cols(sub)).into_iter().next() else {
            break;
        };
        let (dir, theta) = match (max_step(lp, &x, sub, &z, true), max_step(lp, &x, sub, &z, false))
        {
            (Some(t), _) => (Rat::one(), t),
            (None, Some(t)) => (-Rat::one(), t),
            (None, None) => {
                return Err(Error::InvalidInput(
                    "feasible region contains a line; no vertex exists".into(),
                ))
            }
        };
        let step = dir * theta;
        for (k, &j) in sub.iter().enumerate() {
            if !z[k].is_zero() {
                x[j] += &step * &z[k];
            }
        }
    }
    Ok(x)
}

/// Largest step along `±z` (on coordinates `sub`) that keeps `x` in the box.
fn max_step(lp: &BoxLP, x: &[Rat], sub: &[usize], z: &[Rat], forward: bool) -> Option<Rat> {
    let mut best: Option<Rat> = None;
    for (k, &j) in sub.iter().enumerate() {
        let dz = if forward { z[k].clone() } else { -z[k].clone() };
        if dz.is_zero() {
            continue;
        }
        let lim = if dz.is_positive() {
            lp.upper[j].as_ref().map(|u| (u - &x[j]) / &dz)
        } else {
            lp.lower[j].as_ref().map(|l| (l - &x[j]) / &dz)
        };
        if let Some(l) = lim {
            if best.as_ref().map_or(true, |b| &l < b) {
                best = Some(l);
            }
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum St {
    Basic,
    Lower,
    Upper,
}

/// Internal column: how an internal variable `z ≥ 0` maps to an original one.
#[derive(Clone, Debug)]
enum ColMap {
    Shift(usize, Rat), // x = l + z
    Flip(usize, Rat),  // x = u − z
    Plus(usize),       // x = z⁺ − z⁻
    Minus(usize),
}

/// Dense bounded-variable simplex tableau; every variable has lower bound 0.
struct Tableau {
    t: Vec<Vec<Rat>>,
    beta: Vec<Rat>,
    basis: Vec<usize>,
    state: Vec<St>,
    ub: Vec<Option<Rat>>,
    d: Vec<Rat>,
}

const PIVOT_GUARD: usize = 1_000_000;

impl Tableau {
    fn set_cost(&mut self, cost: &[Rat]) {
        let nv = self.ub.len();
        self.d = (0..nv)
            .map(|j| {
                let mut v = cost[j].clone();
                for (i, row) in self.t.iter().enumerate() {
                    let cb = &cost[self.basis[i]];
                    if !cb.is_zero() && !row[j].is_zero() {
                        v -= cb * &row[j];
                    }
                }
                v
            })
            .collect();
    }

    fn value_of(&self, j: usize) -> Rat {
        match self.state[j] {
            St::Lower => Rat::zero(),
            St::Upper => self.ub[j].clone().expect("upper state needs a finite bound"),
            St::Basic => {
                let r = self.basis.iter().position(|&b| b == j).expect("basic var");
                self.beta[r].clone()
            }
        }
    }

    /// Minimizes the current cost with Bland's rule. Returns false if unbounded.
    fn run(&mut self) -> Result<bool> {
        let nv = self.ub.len();
        for _ in 0..PIVOT_GUARD {
            let entering = (0..nv).find_map(|j| match self.state[j] {
                St::Lower if self.d[j].is_negative() && self.ub[j] != Some(Rat::zero()) => {
                    Some((j, true))
                }
                St::Upper if self.d[j].is_positive() => Some((j, false)),
                _ => None,
            });
            let Some((q, up)) = entering else {
                return Ok(true);
            };
            // change of each basic variable per unit step of the entering one
            let rate = |i: usize, t: &Vec<Vec<Rat>>| -> Rat {
                if up {
                    -t[i][q].clone()
                } else {
                    t[i][q].clone()
                }
            };
            let mut best: Option<(Rat, usize)> = None;
            for i in 0..self.t.len() {
                let r = rate(i, &self.t);
                if r.is_zero() {
                    continue;
                }
                let lim = if r.is_negative() {
                    Some(&self.beta[i] / -&r)
                } else {
                    self.ub[self.basis[i]].as_ref().map(|u| (u - &self.beta[i]) / &r)
                };
                if let Some(l) = lim {
                    let better = match &best {
                        None => true,
                        Some((bl, bi)) => l < *bl || (l == *bl && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((l, i));
                    }
                }
            }
            let flip = match (&best, &self.ub[q]) {
                (None, None) => return Ok(false),
                (Some((l, _)), Some(u)) => u <= l,
                (None, Some(_)) => true,
                (Some(_), None) => false,
            };
            if flip {
                let theta = self.ub[q].clone().unwrap();
                for i in 0..self.t.len() {
                    let r = rate(i, &self.t);
                    if !r.is_zero() {
                        self.beta[i] += r * &theta;
                    }
                }
                self.state[q] = if up { St::Upper } else { St::Lower };
                continue;
            }
            let (theta, r) = best.unwrap();
            let leaving = self.basis[r];
            let leaves_low = rate(r, &self.t).is_negative();
            for i in 0..self.t.len() {
                let ri = rate(i, &self.t);
                if !ri.is_zero() {
                    self.beta[i] += ri * &theta;
                }
            }
            let start = if up {
                Rat::zero()
            } else {
                self.ub[q].clone().unwrap()
            };
            let xq = if up { start + &theta } else { start - &theta };
            self.pivot(r, q);
            self.beta[r] = xq;
            self.basis[r] = q;
            self.state[q] = St::Basic;
            self.state[leaving] = if leaves_low { St::Lower } else { St::Upper };
        }
        Err(Error::property("simplex-termination", "pivot guard exceeded"))
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let inv = self.t[r][q].recip();
        for x in self.t[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[q].is_zero() {
                continue;
            }
            let f = row[q].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        if !self.d[q].is_zero() {
            let f = self.d[q].clone();
            for (x, y) in self.d.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
}

enum Phase1 {
    Infeasible,
    Ready(Tableau, Vec<ColMap>),
}

fn phase_one(lp: &BoxLP) -> Result<Phase1> {
    lp.validate()?;
    let rows = lp.m.rows();
    let mut cols: Vec<RatVec> = Vec::new();
    let mut maps = Vec::new();
    let mut ub = Vec::new();
    let mut rhs = lp.b.clone();
    for j in 0..lp.nvars() {
        let a = lp.m.col(j);
        match (&lp.lower[j], &lp.upper[j]) {
            (Some(l), u) => {
                rhs.add_scaled(&-l.clone(), &a);
                ub.push(u.as_ref().map(|u| u - l));
                maps.push(ColMap::Shift(j, l.clone()));
                cols.push(a);
            }
            (None, Some(u)) => {
                rhs.add_scaled(&-u.clone(), &a);
                ub.push(None);
                maps.push(ColMap::Flip(j, u.clone()));
                cols.push(a.neg());
            }
            (None, None) => {
                ub.push(None);
                ub.push(None);
                maps.push(ColMap::Plus(j));
                maps.push(ColMap::Minus(j));
                cols.push(a.clone());
                cols.push(a.neg());
            }
        }
    }
    let ns = cols.len();
    let nv = ns + rows;
    let mut t = vec![vec![Rat::zero(); nv]; rows];
    let mut beta = Vec::with_capacity(rows);
    for i in 0..rows {
        let sign = if rhs[i].is_negative() { -Rat::one() } else { Rat::one() };
        for (j, c) in cols.iter().enumerate() {
            if !c[i].is_zero() {
                t[i][j] = &sign * &c[i];
            }
        }
        t[i][ns + i] = Rat::one();
        beta.push(&sign * &rhs[i]);
    }
    ub.extend(std::iter::repeat(None).take(rows));
    let mut state = vec![St::Lower; nv];
    for s in state.iter_mut().skip(ns) {
        *s = St::Basic;
    }
    let mut tab = Tableau {
        t,
        beta,
        basis: (ns..nv).collect(),
        state,
        ub,
        d: Vec::new(),
    };
    let cost: Vec<Rat> = (0..nv)
        .map(|j| if j < ns { Rat::zero() } else { Rat::one() })
        .collect();
    tab.set_cost(&cost);
    tab.run()?;
    let infeas: Rat = (ns..nv).map(|j| tab.value_of(j)).sum();
    if infeas.is_positive() {
        return Ok(Phase1::Infeasible);
    }
    // artificials are pinned to zero from here on
    for j in ns..nv {
        tab.ub[j] = Some(Rat::zero());
    }
    Ok(Phase1::Ready(tab, maps))
}

fn recover(lp: &BoxLP, tab: &Tableau, maps: &[ColMap]) -> RatVec {
    let mut x = RatVec::zeros(lp.nvars());
    for (k, m) in maps.iter().enumerate() {
        let z = tab.value_of(k);
        match m {
            ColMap::Shift(j, l) => x[*j] = l + z,
            ColMap::Flip(j, u) => x[*j] = u - z,
            ColMap::Plus(j) => x[*j] += z,
            ColMap::Minus(j) => x[*j] -= z,
        }
    }
    x
}

/// A feasible point (a vertex when the region is pointed), or `None`.
pub fn lp_feasible_point(lp: &BoxLP) -> Result<Option<RatVec>> {
    match phase_one(lp)? {
        Phase1::Infeasible => Ok(None),
        Phase1::Ready(tab, maps) => {
            let x = recover(lp, &tab, &maps);
            Ok(Some(purify_to_vertex(lp, &x).unwrap_or(x)))
        }
    }
}

/// Maximizes the objective exactly with a two-phase bounded simplex.
pub fn lp_solve(lp: &BoxLP) -> Result<LpOutcome> {
    let c = lp
        .objective
        .clone()
        .ok_or_else(|| Error::InvalidInput("lp_solve needs an objective".into()))?;
    let (mut tab, maps) = match phase_one(lp)? {
        Phase1::Infeasible => return Ok(LpOutcome::Infeasible),
        Phase1::Ready(tab, maps) => (tab, maps),
    };
    let nv = tab.ub.len();
    let mut cost = vec![Rat::zero(); nv];
    for (k, m) in maps.iter().enumerate() {
        cost[k] = match m {
            ColMap::Shift(j, _) | ColMap::Plus(j) => -c[*j].clone(),
            ColMap::Flip(j, _) | ColMap::Minus(j) => c[*j].clone(),
        };
    }
    tab.set_cost(&cost);
    if !tab.run()? {
        return Ok(LpOutcome::Unbounded);
    }
    let x = recover(lp, &tab, &maps);
    // directions usable in both senses at an optimum have zero objective slope
    let x = purify_to_vertex(lp, &x).unwrap_or(x);
    let value = dot(&c, &x);
    Ok(LpOutcome::Optimal { x, value })
}

/// Extreme rays of the pointed cone `{x : A x ≥ 0}` by double description,
/// each as a primitive integer vector, sorted.
pub fn extreme_rays(ineqs: &RatMat) -> Result<Vec<RatVec>> {
    let d = ineqs.cols();
    if d == 0 {
        return Ok(Vec::new());
    }
    if rank(ineqs) < d {
        return Err(Error::InvalidInput("cone is not pointed".into()));
    }
    let mut init: Vec<usize> = Vec::new();
    for i in 0..ineqs.rows() {
        let mut cand = init.clone();
        cand.push(i);
        if rank(&ineqs.select_rows(&cand)) == cand.len() {
            init = cand;
            if init.len() == d {
                break;
            }
        }
    }
    let inv = inverse(&ineqs.select_rows(&init)).expect("independent rows");
    let mut rays: Vec<RatVec> = (0..d).map(|k| normalize(&inv.col(k))).collect();
    let mut processed = init.clone();
    for i in 0..ineqs.rows() {
        if init.contains(&i) {
            continue;
        }
        let a = ineqs.row(i);
        let vals: Vec<Rat> = rays.iter().map(|r| dot(a, r)).collect();
        let mut next: Vec<RatVec> = rays
            .iter()
            .zip(&vals)
            .filter(|(_, v)| !v.is_negative())
            .map(|(r, _)| r.clone())
            .collect();
        for (p, vp) in rays.iter().zip(&vals) {
            if !vp.is_positive() {
                continue;
            }
            for (n, vn) in rays.iter().zip(&vals) {
                if !vn.is_negative() || !adjacent(ineqs, &processed, p, n, d) {
                    continue;
                }
                let mut w = n.scale(vp);
                w.add_scaled(&-vn.clone(), p);
                next.push(normalize(&w));
            }
        }
        rays = next;
        processed.push(i);
    }
    rays.sort();
    rays.dedup();
    Ok(rays)
}

fn adjacent(a: &RatMat, processed: &[usize], p: &RatVec, n: &RatVec, d: usize) -> bool {
    if d < 2 {
        return false;
    }
    let common: Vec<usize> = processed
        .iter()
        .copied()
        .filter(|&k| dot(a.row(k), p).is_zero() && dot(a.row(k), n).is_zero())
        .collect();
    if common.len() < d - 2 {
        return false;
    }
    rank(&a.select_rows(&common)) == d - 2
}

fn normalize(v: &[Rat]) -> RatVec {
    RatVec::from_bigints(&primitive_integer(v))
}

/// Lazily enumerates integer points of a box in lexicographic order,
/// optionally within an ℓ₁ ball, filtered by a predicate.
pub struct IntPoints<F> {
    lo: Vec<BigInt>,
    hi: Vec<BigInt>,
    cap: Option<BigInt>,
    suffix: Vec<BigInt>,
    cur: Vec<BigInt>,
    end: Vec<BigInt>,
    spent: Vec<BigInt>,
    started: bool,
    done: bool,
    pred: F,
}

pub fn enum_integer_points<F>(
    lower: &[Rat],
    upper: &[Rat],
    cap: Option<BigInt>,
    pred: F,
) -> IntPoints<F>
where
    F: FnMut(&[BigInt]) -> bool,
{
    let lo: Vec<BigInt> = lower.iter().map(|x| x.ceil().to_integer()).collect();
    let hi: Vec<BigInt> = upper.iter().map(|x| x.floor().to_integer()).collect();
    let n = lo.len();
    let mut suffix = vec![BigInt::zero(); n + 1];
    for k in (0..n).rev() {
        let m = if lo[k].is_positive() {
            lo[k].clone()
        } else if hi[k].is_negative() {
            -hi[k].clone()
        } else {
            BigInt::zero()
        };
        suffix[k] = &suffix[k + 1] + m;
    }
    let empty = lo.iter().zip(&hi).any(|(a, b)| a > b)
        || cap.as_ref().is_some_and(|c| &suffix[0] > c);
    IntPoints {
        cur: vec![BigInt::zero(); n],
        end: vec![BigInt::zero(); n],
        spent: vec![BigInt::zero(); n + 1],
        lo,
        hi,
        cap,
        suffix,
        started: false,
        done: empty,
        pred,
    }
}

impl<F> IntPoints<F> {
    fn range(&self, k: usize) -> (BigInt, BigInt) {
        match &self.cap {
            None => (self.lo[k].clone(), self.hi[k].clone()),
            Some(c) => {
                let rem = c - &self.spent[k] - &self.suffix[k + 1];
                let a = std::cmp::max(self.lo[k].clone(), -rem.clone());
                let b = std::cmp::min(self.hi[k].clone(), rem);
                (a, b)
            }
        }
    }

    fn descend(&mut self, from: usize) {
        for k in from..self.cur.len() {
            let (a, b) = self.range(k);
            self.spent[k + 1] = &self.spent[k] + a.abs();
            self.cur[k] = a;
            self.end[k] = b;
        }
    }

    fn step(&mut self) -> bool {
        let mut k = self.cur.len();
        while k > 0 {
            k -= 1;
            if self.cur[k] < self.end[k] {
                self.cur[k] += 1;
                self.spent[k + 1] = &self.spent[k] + self.cur[k].abs();
                self.descend(k + 1);
                return true;
            }
        }
        false
    }
}

impl<F: FnMut(&[BigInt]) -> bool> Iterator for IntPoints<F> {
    type Item = Vec<BigInt>;

    fn next(&mut self) -> Option<Vec<BigInt>> {
        if self.done {
            return None;
        }
        let mut have = if self.started {
            self.step()
        } else {
            self.started = true;
            self.descend(0);
            true
        };
        while have {
            if (self.pred)(&self.cur) {
                if self.cur.is_empty() {
                    self.done = true;
                }
                return Some(self.cur.clone());
            }
            have = self.step();
        }
        self.done = true;
        None
    }
}

/// Convenience: the integer point as a rational vector.
pub fn to_ratvec(z: &[BigInt]) -> RatVec {
    z.iter().map(big).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};
    use itertools::Itertools;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(x: &[i64]) -> RatVec {
        RatVec::from_ints(x)
    }

    fn unit_box(m: RatMat, b: RatVec) -> BoxLP {
        let n = m.cols();
        BoxLP::new(m, b, vec![Some(int(0)); n], vec![Some(int(1)); n]).unwrap()
    }

    /// Coordinates strictly between bounds support no kernel direction.
    fn is_vertex(lp: &BoxLP, x: &[Rat]) -> bool {
        let free: Vec<usize> = (0..x.len()).filter(|&j| lp.strictly_inside(j, &x[j])).collect();
        free.is_empty() || null_space(&lp.m.select_cols(&free)).is_empty()
    }

    #[test]
    fn purify_examples() {
        let lp = unit_box(RatMat::from_ints(2, &[&[1, 1]]), v(&[1]));
        let x = purify_to_vertex(&lp, &[frac(1, 2), frac(1, 2)]).unwrap();
        assert!(x == v(&[1, 0]) || x == v(&[0, 1]));
        let fixed = unit_box(RatMat::identity(2), vec![frac(1, 3), frac(2, 3)].into());
        let p = vec![frac(1, 3), frac(2, 3)];
        assert_eq!(purify_to_vertex(&fixed, &p).unwrap().0, p);
        assert!(purify_to_vertex(&lp, &[int(1), int(1)]).is_err());
    }

    /// Vertices by basis enumeration: fix n − rank coordinates at bounds, solve the rest.
    fn vertices_by_bases(lp: &BoxLP) -> Vec<RatVec> {
        let n = lp.nvars();
        let mut out = Vec::new();
        for choice in (0..n).map(|_| 0..3).multi_cartesian_product() {
            // 0: at lower, 1: at upper, 2: free
            let free: Vec<usize> = (0..n).filter(|&j| choice[j] == 2).collect();
            let mut rhs = lp.b.clone();
            let mut x = RatVec::zeros(n);
            for j in 0..n {
                if choice[j] < 2 {
                    let val = if choice[j] == 0 { &lp.lower[j] } else { &lp.upper[j] };
                    x[j] = val.clone().unwrap();
                    rhs.add_scaled(&-x[j].clone(), &lp.m.col(j));
                }
            }
            let sub = lp.m.select_cols(&free);
            if !null_space(&sub).is_empty() {
                continue;
            }
            if let Some(y) = crate::exact::solve_linear(&sub, &rhs).unwrap() {
                for (k, &j) in free.iter().enumerate() {
                    x[j] = y[k].clone();
                }
                if lp.is_feasible(&x) {
                    out.push(x);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn purify_seeded_reaches_enumerated_vertex() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = RatMat::new(2, 4, (0..8).map(|_| int(rng.gen_range(-3..=3))).collect()).unwrap();
            let x0: RatVec = (0..4).map(|_| frac(rng.gen_range(1..=9), 10)).collect();
            let lp = unit_box(m.clone(), m.mul_vec(&x0));
            let x = purify_to_vertex(&lp, &x0).unwrap();
            assert!(lp.is_feasible(&x));
            assert!(is_vertex(&lp, &x));
            let tight = (0..4).filter(|&j| !lp.strictly_inside(j, &x[j])).count();
            assert!(tight >= 4 - rank(&m));
            assert!(vertices_by_bases(&lp).contains(&x));
        }
    }

    #[test]
    fn solve_examples() {
        let lp = BoxLP::new(RatMat::zeros(0, 1), v(&[]), vec![Some(int(0))], vec![Some(int(1))])
            .unwrap()
            .maximize(v(&[1]));
        assert_eq!(
            lp_solve(&lp).unwrap(),
            LpOutcome::Optimal { x: v(&[1]), value: int(1) }
        );
        let lp = BoxLP::nonneg(RatMat::zeros(0, 1), v(&[])).unwrap().maximize(v(&[1]));
        assert_eq!(lp_solve(&lp).unwrap(), LpOutcome::Unbounded);
        let lp = BoxLP::new(RatMat::zeros(1, 1), v(&[1]), vec![None], vec![None])
            .unwrap()
            .maximize(v(&[0]));
        assert_eq!(lp_solve(&lp).unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn solve_with_free_and_flipped_variables() {
        // max x1 + x2 s.t. x1 - x2 = 1, x1 ≤ 3 (free below), x2 free → x = (3, 2)
        let lp = BoxLP::new(
            RatMat::from_ints(2, &[&[1, -1]]),
            v(&[1]),
            vec![None, None],
            vec![Some(int(3)), None],
        )
        .unwrap()
        .maximize(v(&[1, 1]));
        assert_eq!(lp_solve(&lp).unwrap(), LpOutcome::Optimal { x: v(&[3, 2]), value: int(5) });
    }

    #[test]
    fn solve_matches_vertex_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let m = RatMat::new(2, 4, (0..8).map(|_| int(rng.gen_range(-3..=3))).collect()).unwrap();
            let x0: RatVec = (0..4).map(|_| frac(rng.gen_range(0..=4), 4)).collect();
            let c: RatVec = (0..4).map(|_| int(rng.gen_range(-5..=5))).collect();
            let lp = unit_box(m.clone(), m.mul_vec(&x0)).maximize(c.clone());
            let best = vertices_by_bases(&lp).iter().map(|x| dot(&c, x)).max().unwrap();
            match lp_solve(&lp).unwrap() {
                LpOutcome::Optimal { x, value } => {
                    assert_eq!(value, best);
                    assert!(dot(&c, &x0) <= value);
                    assert_eq!(purify_to_vertex(&lp, &x).unwrap(), x);
                }
                other => panic!("unexpected {:?}", other),
            }
        }
    }

    #[test]
    fn rays_examples() {
        let orth = RatMat::identity(2);
        assert_eq!(extreme_rays(&orth).unwrap(), vec![v(&[0, 1]), v(&[1, 0])]);
        let c = RatMat::from_ints(2, &[&[1, 0], &[0, 1], &[1, -1]]);
        assert_eq!(extreme_rays(&c).unwrap(), vec![v(&[1, 0]), v(&[1, 1])]);
        let line = RatMat::from_ints(2, &[&[1, 0]]);
        assert!(extreme_rays(&line).is_err());
        let trivial = RatMat::from_ints(1, &[&[1], &[-1]]);
        assert!(extreme_rays(&trivial).unwrap().is_empty());
    }

    /// Oracle: each extreme ray is the null line of d−1 independent rows.
    fn rays_by_row_subsets(a: &RatMat) -> Vec<RatVec> {
        let d = a.cols();
        let mut out = Vec::new();
        for rows in (0..a.rows()).combinations(d - 1) {
            let sub = a.select_rows(&rows);
            if rank(&sub) != d - 1 {
                continue;
            }
            let z = null_space(&sub).remove(0);
            for cand in [z.clone(), z.neg()] {
                if a.mul_vec(&cand).iter().all(|x| !x.is_negative()) {
                    out.push(normalize(&cand));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn rays_cross_check_and_generate() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let mut rows: Vec<Vec<Rat>> = (0..3)
                .map(|k| (0..3).map(|j| int((j == k) as i64)).collect())
                .collect();
            for _ in 0..2 {
                rows.push((0..3).map(|_| int(rng.gen_range(-3..=3))).collect());
            }
            let a = RatMat::from_rows(3, &rows).unwrap();
            let rays = extreme_rays(&a).unwrap();
            assert_eq!(rays, rays_by_row_subsets(&a));
            // membership: a random point of the cone is a conic combination of the rays
            let p: RatVec = (0..3).map(|_| int(rng.gen_range(0..=5))).collect();
            if a.mul_vec(&p).iter().all(|x| !x.is_negative()) {
                let hm = RatMat::from_rows(rays.len(), &(0..3).map(|i| rays.iter().map(|r| r[i].clone()).collect()).collect::<Vec<_>>()).unwrap();
                let lp = BoxLP::nonneg(hm, p).unwrap();
                assert!(lp_feasible_point(&lp).unwrap().is_some());
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let all: Vec<_> = enum_integer_points(&v(&[0, 0]), &v(&[1, 1]), None, |_| true).collect();
        let expect: Vec<Vec<BigInt>> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|p| p.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(all, expect);
        let capped: Vec<_> =
            enum_integer_points(&v(&[0]), &v(&[2]), Some(BigInt::from(1)), |_| true).collect();
        assert_eq!(capped, vec![vec![BigInt::from(0)], vec![BigInt::from(1)]]);
        let three = BigInt::from(3);
        let n = enum_integer_points(&v(&[0, 0, 0]), &v(&[3, 3, 3]), None, |z| {
            z.iter().sum::<BigInt>() == three
        })
        .count();
        // compositions of 3 into 3 nonnegative parts: C(5,2)
        assert_eq!(n, 10);
        assert_eq!(enum_integer_points(&v(&[]), &v(&[]), None, |_| true).count(), 1);
        assert_eq!(enum_integer_points(&v(&[1]), &v(&[0]), None, |_| true).count(), 0);
    }

    proptest! {
        #[test]
        fn enumeration_matches_nested_loops(
            lo in proptest::collection::vec(-2i64..=1, 3),
            w in proptest::collection::vec(0i64..=3, 3),
            cap in proptest::option::of(0i64..=5),
        ) {
            let hi: Vec<i64> = lo.iter().zip(&w).map(|(a, b)| a + b).collect();
            let got: Vec<Vec<BigInt>> = enum_integer_points(
                &RatVec::from_ints(&lo), &RatVec::from_ints(&hi), cap.map(BigInt::from), |_| true,
            ).collect();
            let mut want = Vec::new();
            for a in lo[0]..=hi[0] {
                for b in lo[1]..=hi[1] {
                    for c in lo[2]..=hi[2] {
                        if cap.map_or(true, |k| a.abs() + b.abs() + c.abs() <= k) {
                            want.push(vec![BigInt::from(a), BigInt::from(b), BigInt::from(c)]);
                        }
                    }
                }
            }
            prop_assert_eq!(got, want);
        }

        #[test]
        fn purify_output_is_vertex(seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (r, n) = (rng.gen_range(1..=3), rng.gen_range(2..=6));
            let m = RatMat::new(r, n, (0..r * n).map(|_| int(rng.gen_range(-2..=2))).collect()).unwrap();
            let x0: RatVec = (0..n).map(|_| frac(rng.gen_range(0..=6), 6)).collect();
            let lp = unit_box(m.clone(), m.mul_vec(&x0));
            let x = purify_to_vertex(&lp, &x0).unwrap();
            prop_assert!(lp.is_feasible(&x));
            prop_assert!(is_vertex(&lp, &x));
        }
    }
}
