//! Block-structured integer programs
//!
//! ```text
//!     [ A0  C1 ... Cn ]
//! H = [ B1  A1        ]
//!     [ ..     ..     ]
//!     [ Bn         An ]
//! ```
//!
//! with linking variables `x` (the first `t0` columns) and per-block
//! variables `y^i`. Blocks may differ in shape; instances read from files
//! are uniform, the lifted form used by the kernel reduction is not.

mod constants;
mod decompose;
mod reduce;
mod solve;

pub use constants::{
    compute_constants, instance_constants, xi_for, ConstantsTable, InstanceConstants,
};
pub use decompose::{
    cone_rays_k, decompose_u, decompose_v, decompose_x, feasible_bases, minimal_kernel_below,
    split_max_kernel, Basis, ConeRays, UDecomposition, VDecomposition,
};
pub use reduce::{
    decompose_point, reduce_kernel_point, reduce_point, DecompositionBundle, Reduction,
};
pub use solve::{
    brute_search_box, graver_enumerate, graver_of_matrix, is_conformal, proximity_report,
    solve_four_block, ProximityReport, SolveOutcome,
};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{big, Rat, RatMat, RatVec};

/// One diagonal block `i`: `B^i` (s_i × t0), `A^i` (s_i × t_i), `C^i` (s0 × t_i).
#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub b: RatMat,
    pub a: RatMat,
    pub c: RatMat,
}

impl Block {
    pub fn s(&self) -> usize {
        self.a.rows()
    }

    pub fn t(&self) -> usize {
        self.a.cols()
    }
}

/// Matrix, right-hand side, objective and upper bounds of a 4-block program
/// `max cx·x + cy·y  s.t.  H(x,y) = b,  0 ≤ x ≤ ux,  0 ≤ y ≤ uy`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourBlockInstance {
    pub s0: usize,
    pub t0: usize,
    pub a0: RatMat,
    pub blocks: Vec<Block>,
    pub b: RatVec,
    pub cx: RatVec,
    pub cy: RatVec,
    pub ux: Vec<Option<Rat>>,
    pub uy: Vec<Option<Rat>>,
    /// Largest absolute entry of `H`.
    pub delta: BigInt,
}

/// A nonnegative point `(x̂, ŷ)` in the kernel of `H`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelPoint {
    pub x: RatVec,
    pub y: RatVec,
}

impl KernelPoint {
    pub fn concat(&self) -> RatVec {
        RatVec(self.x.iter().chain(self.y.iter()).cloned().collect())
    }

    pub fn linf(&self) -> Rat {
        self.x.linf().max(self.y.linf())
    }
}

impl FourBlockInstance {
    /// Builds an instance and computes `Δ`. Objective and bounds default to
    /// zero and `+∞`, and `b` to zero, when empty vectors are passed.
    pub fn new(
        s0: usize,
        t0: usize,
        a0: RatMat,
        blocks: Vec<Block>,
        b: RatVec,
        cx: RatVec,
        cy: RatVec,
        ux: Vec<Option<Rat>>,
        uy: Vec<Option<Rat>>,
    ) -> Result<Self> {
        if a0.rows() != s0 || a0.cols() != t0 {
            return Err(Error::Dimension("A0 must be s0 × t0".into()));
        }
        for (i, bl) in blocks.iter().enumerate() {
            if bl.b.rows() != bl.s() || bl.b.cols() != t0 {
                return Err(Error::Dimension(format!("B{} must be s × t0", i + 1)));
            }
            if bl.c.rows() != s0 || bl.c.cols() != bl.t() {
                return Err(Error::Dimension(format!("C{} must be s0 × t", i + 1)));
            }
        }
        let rows = s0 + blocks.iter().map(Block::s).sum::<usize>();
        let ny: usize = blocks.iter().map(Block::t).sum();
        let or_default = |v: RatVec, n: usize| if v.is_empty() { RatVec::zeros(n) } else { v };
        let b = or_default(b, rows);
        let cx = or_default(cx, t0);
        let cy = or_default(cy, ny);
        let ux = if ux.is_empty() { vec![None; t0] } else { ux };
        let uy = if uy.is_empty() { vec![None; ny] } else { uy };
        if b.len() != rows || cx.len() != t0 || cy.len() != ny || ux.len() != t0 || uy.len() != ny {
            return Err(Error::Dimension("b, objective or bounds have the wrong length".into()));
        }
        let mut inst = FourBlockInstance {
            s0,
            t0,
            a0,
            blocks,
            b,
            cx,
            cy,
            ux,
            uy,
            delta: BigInt::zero(),
        };
        if !inst.matrix().is_integral() {
            return Err(Error::InvalidInput("constraint matrix must be integral".into()));
        }
        inst.delta = inst.matrix().max_abs_entry().to_integer();
        Ok(inst)
    }

    pub fn n(&self) -> usize {
        self.blocks.len()
    }

    /// Largest block row count.
    pub fn s(&self) -> usize {
        self.blocks.iter().map(Block::s).max().unwrap_or(0)
    }

    /// Largest block column count.
    pub fn t(&self) -> usize {
        self.blocks.iter().map(Block::t).max().unwrap_or(0)
    }

    pub fn is_uniform(&self) -> bool {
        let (s, t) = (self.s(), self.t());
        self.blocks.iter().all(|b| b.s() == s && b.t() == t)
    }

    pub fn ny(&self) -> usize {
        self.blocks.iter().map(Block::t).sum()
    }

    pub fn nvars(&self) -> usize {
        self.t0 + self.ny()
    }

    /// Offset of `y^i` inside `y`.
    pub fn y_offset(&self, i: usize) -> usize {
        self.blocks[..i].iter().map(Block::t).sum()
    }

    /// Offset of block `i`'s rows in `H` (after the `s0` linking rows).
    pub fn row_offset(&self, i: usize) -> usize {
        self.s0 + self.blocks[..i].iter().map(Block::s).sum::<usize>()
    }

    pub fn y_block<'a>(&self, y: &'a [Rat], i: usize) -> &'a [Rat] {
        let o = self.y_offset(i);
        &y[o..o + self.blocks[i].t()]
    }

    pub fn matrix(&self) -> RatMat {
        let rows = self.s0 + self.blocks.iter().map(Block::s).sum::<usize>();
        let mut h = RatMat::zeros(rows, self.nvars());
        for r in 0..self.s0 {
            for c in 0..self.t0 {
                h.set(r, c, self.a0.get(r, c).clone());
            }
        }
        for (i, bl) in self.blocks.iter().enumerate() {
            let (ro, co) = (self.row_offset(i), self.t0 + self.y_offset(i));
            for r in 0..self.s0 {
                for c in 0..bl.t() {
                    h.set(r, co + c, bl.c.get(r, c).clone());
                }
            }
            for r in 0..bl.s() {
                for c in 0..self.t0 {
                    h.set(ro + r, c, bl.b.get(r, c).clone());
                }
                for c in 0..bl.t() {
                    h.set(ro + r, co + c, bl.a.get(r, c).clone());
                }
            }
        }
        h
    }

    /// `H·(x, y)`.
    pub fn apply(&self, x: &[Rat], y: &[Rat]) -> RatVec {
        let z: Vec<Rat> = x.iter().chain(y.iter()).cloned().collect();
        self.matrix().mul_vec(&z)
    }

    /// `Σ_i C^i y^i`.
    pub fn c_apply(&self, y: &[Rat]) -> RatVec {
        let mut out = RatVec::zeros(self.s0);
        for (i, bl) in self.blocks.iter().enumerate() {
            out.add_assign(&bl.c.mul_vec(self.y_block(y, i)));
        }
        out
    }

    pub fn delta_rat(&self) -> Rat {
        big(&self.delta)
    }

    pub fn in_kernel(&self, pt: &KernelPoint) -> bool {
        pt.x.len() == self.t0 && pt.y.len() == self.ny() && self.apply(&pt.x, &pt.y).is_zero()
    }

    /// Every `A^i` must have full row rank so that vertices of the block
    /// polyhedra are basic solutions.
    pub fn require_full_row_rank(&self) -> Result<()> {
        for (i, bl) in self.blocks.iter().enumerate() {
            if crate::exact::rank(&bl.a) < bl.s() {
                return Err(Error::InvalidInput(format!(
                    "A{} does not have full row rank",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Kernel-equivalent instance with `A0 = 0`: a new first block
    /// `B = I, A = −I, C = A0` copies `x`, so `(x, y)` corresponds to
    /// `(x, x, y)`. Returned unchanged when `A0` is already zero.
    /// Objective, bounds and `b` are extended with zeros / copies.
    pub fn lift(&self) -> FourBlockInstance {
        if self.a0.is_zero() {
            return self.clone();
        }
        let t0 = self.t0;
        let mut blocks = Vec::with_capacity(self.n() + 1);
        blocks.push(Block {
            b: RatMat::identity(t0),
            a: RatMat::identity(t0).neg(),
            c: self.a0.clone(),
        });
        blocks.extend(self.blocks.iter().cloned());
        let mut b = self.b.0[..self.s0].to_vec();
        b.extend(std::iter::repeat(Rat::zero()).take(t0));
        b.extend(self.b.0[self.s0..].iter().cloned());
        let mut cy = vec![Rat::zero(); t0];
        cy.extend(self.cy.iter().cloned());
        let mut uy = self.ux.clone();
        uy.extend(self.uy.iter().cloned());
        FourBlockInstance::new(
            self.s0,
            t0,
            RatMat::zeros(self.s0, t0),
            blocks,
            RatVec(b),
            self.cx.clone(),
            RatVec(cy),
            self.ux.clone(),
            uy,
        )
        .expect("lifted shapes are consistent")
    }

    /// Kernel point of the lifted instance for a kernel point of `self`.
    pub fn lift_point(&self, pt: &KernelPoint) -> KernelPoint {
        if self.a0.is_zero() {
            return pt.clone();
        }
        let y = pt.x.iter().chain(pt.y.iter()).cloned().collect();
        KernelPoint { x: pt.x.clone(), y: RatVec(y) }
    }

    /// Inverse of [`lift_point`](Self::lift_point) (drops the copy of `x`).
    pub fn unlift_point(&self, pt: &KernelPoint) -> KernelPoint {
        if self.a0.is_zero() {
            return pt.clone();
        }
        KernelPoint { x: pt.x.clone(), y: RatVec(pt.y.0[self.t0..].to_vec()) }
    }

    /// Instance with the columns flagged in `flip` (over `(x, y)`) negated.
    pub fn flip_columns(&self, flip: &[bool]) -> FourBlockInstance {
        let mut out = self.clone();
        let neg_col = |m: &mut RatMat, c: usize| {
            for r in 0..m.rows() {
                let v = -m.get(r, c).clone();
                m.set(r, c, v);
            }
        };
        for c in 0..self.t0 {
            if flip[c] {
                neg_col(&mut out.a0, c);
                for bl in out.blocks.iter_mut() {
                    neg_col(&mut bl.b, c);
                }
            }
        }
        for i in 0..self.n() {
            let o = self.t0 + self.y_offset(i);
            for c in 0..self.blocks[i].t() {
                if flip[o + c] {
                    neg_col(&mut out.blocks[i].a, c);
                    neg_col(&mut out.blocks[i].c, c);
                }
            }
        }
        out
    }
}

pub(crate) fn sign_pattern(v: &[Rat]) -> Vec<bool> {
    v.iter().map(|x| x.is_negative()).collect()
}
