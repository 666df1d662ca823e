//! One-sided Lévy stable densities in closed form.
//!
//! The density `f_α` with Laplace transform `e^{−s^α}` is evaluated for
//! `α = (p/q)^{l2/l1}` as a finite sum of Fox–Wright (or generalized
//! hypergeometric) series, with an extended-precision retry and an
//! independent quadrature oracle behind it. The [`smashed`] module builds the
//! Lévy-smashed gamma family on top.

pub mod dd;
pub mod error;
pub mod levy;
pub mod oracle;
pub mod quad;
pub mod scalar;
pub mod smashed;
pub mod special;
pub mod wright;

pub use dd::Dd;
pub use error::{Error, Result};
pub use levy::{
    build_generic_representation, build_representation, density, enumerate_representations,
    resolve_index, Block, BlockSeries, BranchTag, DensityConfig, LValue, LevyDensity, LevyIndex,
    Representation,
};
pub use oracle::{
    cdf_oracle, density_oracle, moment_closed_form, moment_oracle, tail_mass, OracleConfig,
    OracleMethod,
};
pub use smashed::{
    attraction_check, levy_smirnov_cdf, levy_smirnov_pdf, process_cdf, smashed_density,
    smashed_laplace, LevySmirnovParams, SmashedGammaParams,
};
pub use special::{gamma, gauss_legendre_check, levy_jump, log_gamma, negated_gamma_ratio, pochhammer};
pub use wright::{
    convergence_margin, eval_hyp, eval_wright, EvalReport, HypSpec, Precision, PrecisionPath,
    SeriesConfig, WrightParam, WrightSpec,
};
