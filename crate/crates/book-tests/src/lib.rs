//! Guide listings compiled as doctests, one module per chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/corpus.md")]
pub mod corpus {}
#[doc = include_str!("../../../book/src/sine.md")]
pub mod sine {}
#[doc = include_str!("../../../book/src/objective.md")]
pub mod objective {}
#[doc = include_str!("../../../book/src/gaussian_processes.md")]
pub mod gaussian_processes {}
#[doc = include_str!("../../../book/src/gp_ucb.md")]
pub mod gp_ucb {}
#[doc = include_str!("../../../book/src/baselines.md")]
pub mod baselines {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
