use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use steinitz_core::blockip::{graver_enumerate, proximity_report, reduce_point, solve_four_block, xi_for, KernelPoint};
use steinitz_core::colorful::{colorful_affine, colorful_rearrange, single_partial_sum};
use steinitz_core::exact::{parse_rat, NormSpec, Rat, RatVec};
use steinitz_core::harness::format::{parse_norm, FourBlockFile};
use steinitz_core::harness::verify::{flatten, DEFAULT_BUDGET};
use steinitz_core::harness::{self, report, Report};
use steinitz_core::oracles::{brute_colorful_optimum, brute_ilp, brute_rearrange_optimum, brute_single_sum};
use steinitz_core::steinitz::{steinitz_rearrange, subspace_rearrange};
use steinitz_core::{Error, Result};

#[derive(Parser)]
#[command(name = "steinitz", version, about = "Exact vector rearrangements and block integer programs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Instance file
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Write the result here instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// One JSON object per line instead of `key: value` lines
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, ValueEnum)]
enum GenKind {
    Family,
    Adversarial,
    Affine,
    Rankdef,
    Fourblock,
}

#[derive(Copy, Clone, ValueEnum)]
enum OracleKind {
    Rearrange,
    Colorful,
    Singlesum,
    Ilp,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a seeded instance
    Gen {
        kind: GenKind,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        m: usize,
        #[arg(long, default_value = "linf")]
        norm: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        denom: u64,
        /// Span dimension for `rankdef`
        #[arg(long, default_value_t = 1)]
        rank: usize,
        #[arg(long, default_value_t = 1)]
        s0: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 1)]
        t0: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, default_value_t = 1)]
        delta: i64,
        /// Multiply the planted kernel point by this factor
        #[arg(long, default_value = "1")]
        scale: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Reorder all vectors of a family as one sequence
    Rearrange {
        #[command(flatten)]
        common: Common,
        /// Bound by the dimension of the span instead of d
        #[arg(long)]
        subspace: bool,
        #[arg(long)]
        norm: Option<String>,
    },
    /// Reorder every color of a family
    Colorful {
        #[command(flatten)]
        common: Common,
        /// Measure against the average drift (no zero-sum requirement)
        #[arg(long)]
        affine: bool,
    },
    /// Pick k vectors of every color with a small total
    Singlesum {
        #[command(flatten)]
        common: Common,
        #[arg(long, short)]
        k: usize,
    },
    /// Integer kernel vector below the kernel point of a block program
    Reduce {
        #[command(flatten)]
        common: Common,
        /// Kernel point as space-separated rationals (defaults to the file's `kernel` section)
        #[arg(long)]
        point: Option<String>,
    },
    /// Graver elements inside a box
    Graver {
        #[command(flatten)]
        common: Common,
        #[arg(long = "box", default_value_t = 2)]
        bound: u64,
    },
    /// Solve a block program from its LP relaxation
    Solve {
        #[command(flatten)]
        common: Common,
        /// Search radius around the LP optimum (default: the proximity bound)
        #[arg(long)]
        radius: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Distance from the LP optimum to the nearest optimal integer point
    Proximity {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Brute-force reference values
    Oracle {
        kind: OracleKind,
        #[command(flatten)]
        common: Common,
        #[arg(long, short, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Upper bound for variables without one
        #[arg(long = "box")]
        bound: Option<u64>,
    },
    /// Check instance files, or run the seeded suite when none are given
    Verify {
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 70)]
        count: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Prefix-sum paths of the identity and the rearranged order
    Plotdata {
        #[command(flatten)]
        common: Common,
    },
}

fn read_input(common: &Common) -> Result<String> {
    let path = common
        .input
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("--input is required".into()))?;
    Ok(fs::read_to_string(path)?)
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text)?,
        None => print!("{}", text),
    }
    Ok(())
}

fn emit_report(common: &Common, r: &Report) -> Result<()> {
    emit(common.output.as_ref(), &r.render(common.json))
}

fn norm_arg(s: &str) -> Result<NormSpec> {
    parse_norm(s).ok_or_else(|| Error::InvalidInput(format!("unknown norm `{}` (use l1 or linf)", s)))
}

fn rat_arg(s: &str, what: &str) -> Result<Rat> {
    parse_rat(s).ok_or_else(|| Error::InvalidInput(format!("{} must be a rational number", what)))
}

fn run(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Gen { kind, d, n, m, norm, seed, denom, rank, s0, s, t0, t, delta, scale, output } => {
            let nm = norm_arg(&norm)?;
            let text = match kind {
                GenKind::Family => harness::write_family(&harness::gen_zero_sum_family(d, n, m, nm, seed, denom)?),
                GenKind::Adversarial => harness::write_family(&harness::gen_adversarial_family(d, n, m, nm, seed, denom)?),
                GenKind::Affine => harness::write_family(&harness::gen_affine_family(d, n, m, nm, seed, denom)?),
                GenKind::Rankdef => {
                    let seq = harness::gen_rank_deficient(d, rank, m, nm.clone(), seed, denom)?;
                    let fam = steinitz_core::colorful::ColoredFamily::new(d, vec![seq.vectors], nm)?;
                    harness::write_family(&fam)
                }
                GenKind::Fourblock => {
                    let shape = harness::FourBlockShape { s0, s, t0, t, n, delta };
                    let (instance, pt) = harness::gen_four_block(shape, seed)?;
                    let pt = harness::scale_point(&pt, &rat_arg(&scale, "--scale")?);
                    harness::write_four_block(&FourBlockFile { instance, kernel: Some(pt) })?
                }
            };
            emit(output.as_ref(), &text)
        }
        Cmd::Rearrange { common, subspace, norm } => {
            let mut seq = flatten(&harness::read_family(&read_input(&common)?)?)?;
            if let Some(nm) = norm {
                seq.norm = norm_arg(&nm)?;
                seq.vectors.iter().try_for_each(|v| {
                    if seq.norm.eval(v) > Rat::from_integer(1.into()) {
                        Err(Error::OutsideUnitBall(v.to_string()))
                    } else {
                        Ok(())
                    }
                })?;
            }
            let cert = if subspace { subspace_rearrange(&seq)? } else { steinitz_rearrange(&seq)? };
            emit_report(&common, &report::rearrangement(&cert))
        }
        Cmd::Colorful { common, affine } => {
            let fam = harness::read_family(&read_input(&common)?)?;
            let cert = if affine { colorful_affine(&fam)? } else { colorful_rearrange(&fam)? };
            emit_report(&common, &report::colorful(&cert))
        }
        Cmd::Singlesum { common, k } => {
            let fam = harness::read_family(&read_input(&common)?)?;
            emit_report(&common, &report::selection(&single_partial_sum(&fam, k)?))
        }
        Cmd::Reduce { common, point } => {
            let file = harness::read_four_block(&read_input(&common)?)?;
            let inst = &file.instance;
            let pt = match point {
                Some(p) => {
                    let z: Vec<Rat> = p
                        .split_whitespace()
                        .map(|t| rat_arg(t, "--point entries"))
                        .collect::<Result<_>>()?;
                    if z.len() != inst.nvars() {
                        return Err(Error::Dimension(format!("--point needs {} entries", inst.nvars())));
                    }
                    KernelPoint { x: RatVec(z[..inst.t0].to_vec()), y: RatVec(z[inst.t0..].to_vec()) }
                }
                None => file
                    .kernel
                    .clone()
                    .ok_or_else(|| Error::InvalidInput("no `kernel` section and no --point".into()))?,
            };
            emit_report(&common, &report::reduction(&reduce_point(inst, &pt)?))
        }
        Cmd::Graver { common, bound } => {
            let file = harness::read_four_block(&read_input(&common)?)?;
            let g = graver_enumerate(&file.instance, &BigInt::from(bound))?;
            emit_report(&common, &report::graver(&g))
        }
        Cmd::Solve { common, radius, budget } => {
            let file = harness::read_four_block(&read_input(&common)?)?;
            let r = match radius {
                Some(r) => rat_arg(&r, "--radius")?,
                None => xi_for(&file.instance)?,
            };
            let out = solve_four_block(&file.instance, &r, budget)?;
            emit_report(&common, &report::solve(&out, &r))
        }
        Cmd::Proximity { common, budget } => {
            let file = harness::read_four_block(&read_input(&common)?)?;
            emit_report(&common, &report::proximity(&proximity_report(&file.instance, budget)?))
        }
        Cmd::Oracle { kind, common, k, budget, bound } => {
            let src = read_input(&common)?;
            let r = match kind {
                OracleKind::Rearrange => {
                    let seq = flatten(&harness::read_family(&src)?)?;
                    Report::new("oracle-rearrange").rat("optimum", &brute_rearrange_optimum(&seq)?)
                }
                OracleKind::Colorful => {
                    let fam = harness::read_family(&src)?;
                    Report::new("oracle-colorful").rat("optimum", &brute_colorful_optimum(&fam)?)
                }
                OracleKind::Singlesum => {
                    let fam = harness::read_family(&src)?;
                    Report::new("oracle-singlesum").field("k", k).rat("optimum", &brute_single_sum(&fam, k, budget)?)
                }
                OracleKind::Ilp => {
                    let file = harness::read_four_block(&src)?;
                    let cap = bound.map(BigInt::from);
                    match brute_ilp(&file.instance, cap.as_ref(), budget)? {
                        Some((z, v)) => Report::new("oracle-ilp").field("solution", z).rat("value", &v),
                        None => Report::new("oracle-ilp").field("solution", "infeasible"),
                    }
                }
            };
            emit_report(&common, &r)
        }
        Cmd::Verify { files, seed, count, output } => {
            let results = if files.is_empty() {
                harness::verify_cases(&harness::builtin_suite(seed, count))
            } else {
                let items = files
                    .iter()
                    .map(|p| Ok((p.display().to_string(), fs::read_to_string(p)?)))
                    .collect::<Result<Vec<_>>>()?;
                harness::verify_sources(&items)
            };
            let mut text: String = results.iter().map(|r| format!("{}\n", r.line)).collect();
            let failed = results.iter().filter(|r| !r.ok).count();
            text.push_str(&format!("summary: {} passed, {} failed\n", results.len() - failed, failed));
            emit(output.as_ref(), &text)?;
            if failed > 0 {
                return Err(Error::property("verify", format!("{} case(s) failed", failed)));
            }
            Ok(())
        }
        Cmd::Plotdata { common } => {
            let seq = flatten(&harness::read_family(&read_input(&common)?)?)?;
            let cert = steinitz_rearrange(&seq)?;
            emit(common.output.as_ref(), &harness::plotdata(&seq, &cert.permutation))
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            if e.is_usage() || matches!(e, Error::Budget(_)) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
