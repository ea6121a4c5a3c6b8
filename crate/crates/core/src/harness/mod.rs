//! Instance generation, file formats, certificates and batch runs.

pub mod format;
pub mod gen;
pub mod report;
pub mod verify;

pub use format::{read_any, read_family, read_four_block, write_family, write_four_block, AnyInstance, FourBlockFile};
pub use gen::{
    gen_adversarial_family, gen_affine_family, gen_four_block, gen_rank_deficient, gen_sequence, gen_zero_sum_family,
    scale_point, FourBlockShape,
};
pub use report::Report;
pub use verify::{builtin_suite, plotdata, verify_cases, verify_sources, Case, CaseResult};
