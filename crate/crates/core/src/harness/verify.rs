//! Batch verification and plot data.

use rayon::prelude::*;

use super::format::{read_any, AnyInstance};
use super::gen::{
    gen_affine_family, gen_four_block, gen_rank_deficient, gen_sequence, gen_zero_sum_family, scale_point,
    FourBlockShape,
};
use crate::blockip::{reduce_point, solve_four_block, SolveOutcome};
use crate::colorful::{colorful_affine, colorful_bound, colorful_rearrange, single_partial_sum, ColoredFamily};
use crate::error::{Error, Result};
use crate::exact::{fmt_rat, int, NormSpec, Rat, RatVec};
use crate::oracles::brute_ilp;
use crate::steinitz::{steinitz_rearrange, subspace_rearrange, VectorSequence};

pub const DEFAULT_BUDGET: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseKind {
    Rearrange,
    Subspace,
    Colorful,
    Affine,
    SingleSum,
    Reduce,
    Solve,
}

impl CaseKind {
    const ALL: [CaseKind; 7] = [
        CaseKind::Rearrange,
        CaseKind::Subspace,
        CaseKind::Colorful,
        CaseKind::Affine,
        CaseKind::SingleSum,
        CaseKind::Reduce,
        CaseKind::Solve,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseKind::Rearrange => "rearrange",
            CaseKind::Subspace => "subspace",
            CaseKind::Colorful => "colorful",
            CaseKind::Affine => "affine",
            CaseKind::SingleSum => "singlesum",
            CaseKind::Reduce => "reduce",
            CaseKind::Solve => "solve",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Case {
    pub index: usize,
    pub kind: CaseKind,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub line: String,
    pub ok: bool,
}

/// `count` cases cycling through every kind, seeds derived from `seed`.
pub fn builtin_suite(seed: u64, count: usize) -> Vec<Case> {
    (0..count)
        .map(|index| Case {
            index,
            kind: CaseKind::ALL[index % CaseKind::ALL.len()],
            seed: seed.wrapping_mul(1_000_003).wrapping_add(index as u64),
        })
        .collect()
}

fn norm_for(i: usize) -> NormSpec {
    if i % 2 == 0 {
        NormSpec::Linf
    } else {
        NormSpec::L1
    }
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::property("verify", what()))
    }
}

fn run_inner(case: &Case) -> Result<String> {
    let i = case.index / CaseKind::ALL.len();
    let seed = case.seed;
    match case.kind {
        CaseKind::Rearrange => {
            let (d, m) = (1 + i % 4, 4 + (i * 7) % 20);
            let seq = gen_sequence(d, m, norm_for(i), seed, 12)?;
            let c = steinitz_rearrange(&seq)?;
            check(c.achieved_max <= int(d as i64), || format!("achieved {} above {}", c.achieved_max, d))?;
            Ok(format!("d={} m={} norm={} achieved={} bound={}", d, m, seq.norm.name(), fmt_rat(&c.achieved_max), d))
        }
        CaseKind::Subspace => {
            let (d, r, m) = (4, 1 + i % 3, 6 + i % 10);
            let seq = gen_rank_deficient(d, r, m, norm_for(i), seed, 6)?;
            let c = subspace_rearrange(&seq)?;
            Ok(format!("d={} dimV={} m={} achieved={} bound={}", d, c.dimension, m, fmt_rat(&c.achieved_max), fmt_rat(&c.certified_bound)))
        }
        CaseKind::Colorful => {
            let (d, n, m) = (1 + i % 2, 2 + i % 4, 3 + i % 5);
            let fam = gen_zero_sum_family(d, n, m, norm_for(i), seed, 10)?;
            let c = colorful_rearrange(&fam)?;
            let bound = colorful_bound(n, d);
            check(c.achieved_max <= bound, || format!("achieved {} above {}", c.achieved_max, bound))?;
            Ok(format!("d={} n={} m={} route={} achieved={} bound={}", d, n, m, c.route.name(), fmt_rat(&c.achieved_max), fmt_rat(&bound)))
        }
        CaseKind::Affine => {
            let (d, n, m) = (1 + i % 2, 2 + i % 3, 3 + i % 4);
            let fam = gen_affine_family(d, n, m, norm_for(i), seed, 10)?;
            let c = colorful_affine(&fam)?;
            Ok(format!(
                "d={} n={} m={} achieved={} bound={} soft_met={}",
                d,
                n,
                m,
                fmt_rat(&c.achieved_max),
                fmt_rat(&c.certified_bound),
                c.soft_bound_met().unwrap_or(false)
            ))
        }
        CaseKind::SingleSum => {
            let (d, n, m) = (1 + i % 3, 1 + i % 3, 2 + i % 5);
            let k = i % (m + 1);
            let fam = gen_zero_sum_family(d, n, m, norm_for(i), seed, 8)?;
            let s = single_partial_sum(&fam, k)?;
            Ok(format!("d={} n={} m={} k={} achieved={} fractional={}", d, n, m, k, fmt_rat(&s.achieved), s.fractional))
        }
        CaseKind::Reduce => {
            let shape = FourBlockShape { s0: 1, s: 1, t0: 1, t: 2, n: 2, delta: 1 };
            let (inst, pt) = gen_four_block(shape, seed)?;
            let pt = scale_point(&pt, &int(4));
            let red = reduce_point(&inst, &pt)?;
            let result = match &red.point {
                Some(g) => {
                    check(inst.in_kernel(g), || "result not in the kernel".into())?;
                    g.concat().to_string()
                }
                None => "none".into(),
            };
            Ok(format!("psi={} dimV={} result={}", red.constants.psi, red.constants.dim_v, result))
        }
        CaseKind::Solve => {
            let shape = FourBlockShape { s0: 1, s: 1, t0: 1, t: 2, n: 2, delta: 1 };
            let (inst, _) = gen_four_block(shape, seed)?;
            let radius = crate::blockip::xi_for(&inst)?;
            let out = solve_four_block(&inst, &radius, DEFAULT_BUDGET)?;
            let brute = brute_ilp(&inst, None, DEFAULT_BUDGET)?;
            let (mine, theirs) = match (&out, &brute) {
                (SolveOutcome::Optimal { value, .. }, Some((_, v))) => (fmt_rat(value), fmt_rat(v)),
                (SolveOutcome::Infeasible | SolveOutcome::NoIntegerInRadius, None) => ("none".into(), "none".into()),
                _ => (format!("{:?}", out), format!("{:?}", brute.map(|b| b.1))),
            };
            check(mine == theirs, || format!("solver {} against brute force {}", mine, theirs))?;
            Ok(format!("value={} brute={}", mine, theirs))
        }
    }
}

pub fn run_case(case: &Case) -> CaseResult {
    let head = format!("{:04} {} seed={}", case.index, case.kind.name(), case.seed);
    match run_inner(case) {
        Ok(detail) => CaseResult { line: format!("{} {} PASS", head, detail), ok: true },
        Err(e) => CaseResult { line: format!("{} FAIL {}", head, e), ok: false },
    }
}

/// Runs cases in parallel; results keep the input order.
pub fn verify_cases(cases: &[Case]) -> Vec<CaseResult> {
    cases.par_iter().map(run_case).collect()
}

/// Checks one instance file: rearrangements for families, the kernel
/// reduction for block programs that carry a kernel point.
pub fn verify_source(name: &str, src: &str) -> CaseResult {
    let run = || -> Result<String> {
        match read_any(src)? {
            AnyInstance::Family(fam) => {
                let seq = flatten(&fam)?;
                let s = steinitz_rearrange(&seq)?;
                let c = colorful_rearrange(&fam)?;
                Ok(format!(
                    "family steinitz={} colorful={} route={}",
                    fmt_rat(&s.achieved_max),
                    fmt_rat(&c.achieved_max),
                    c.route.name()
                ))
            }
            AnyInstance::FourBlock(file) => match &file.kernel {
                Some(pt) => {
                    let red = reduce_point(&file.instance, pt)?;
                    let res = red.point.map_or("none".to_string(), |g| g.concat().to_string());
                    Ok(format!("fourblock psi={} result={}", red.constants.psi, res))
                }
                None => Ok(format!("fourblock delta={} (no kernel point)", file.instance.delta)),
            },
        }
    };
    match run() {
        Ok(d) => CaseResult { line: format!("{} {} PASS", name, d), ok: true },
        Err(e) => CaseResult { line: format!("{} FAIL {}", name, e), ok: false },
    }
}

pub fn verify_sources(items: &[(String, String)]) -> Vec<CaseResult> {
    items.par_iter().map(|(n, s)| verify_source(n, s)).collect()
}

/// All colors of a family as one sequence.
pub fn flatten(fam: &ColoredFamily) -> Result<VectorSequence> {
    VectorSequence::new(fam.vectors.iter().flatten().cloned().collect(), fam.d, fam.norm.clone())
}

/// Prefix-sum paths of the given order and of the identity, one row per
/// step: `k`, the coordinates, the norm. Series are separated by a blank line.
pub fn plotdata(seq: &VectorSequence, perm: &[usize]) -> String {
    let identity: Vec<usize> = (0..seq.len()).collect();
    let mut out = String::new();
    for (name, order) in [("identity", &identity[..]), ("rearranged", perm)] {
        out.push_str(&format!("# series {}\n# k {} norm\n", name, (1..=seq.dim).map(|c| format!("x{}", c)).collect::<Vec<_>>().join(" ")));
        let mut s = RatVec::zeros(seq.dim);
        out.push_str(&format!("0 {} 0\n", s));
        for (k, &i) in order.iter().enumerate() {
            s.add_assign(&seq.vectors[i]);
            out.push_str(&format!("{} {} {}\n", k + 1, s, fmt_rat(&seq.norm.eval(&s))));
        }
        out.push('\n');
    }
    out
}

/// Largest norm along a plotted order (handy for checks on plot data).
pub fn path_max(seq: &VectorSequence, perm: &[usize]) -> Rat {
    crate::steinitz::max_prefix_norm(seq, perm, None).unwrap_or_default()
}
