//! Checkers for the finite certificates of non-coherence, and the exact
//! ideal computations behind weak coherence of FLAd(X).

mod config;
mod context;
pub mod flad;
pub mod instances;
pub(crate) mod report;

pub use config::{
    check_bgr_config, check_forbidden_config, check_ghe_quotient_conditions, check_lemma_m_n, check_triangle,
    lambda_related, odd_triangular_numbers, y_sequence_search, CongGenSet, YStep,
};
pub use context::EhresmannContext;
pub use report::{ConfigReport, Failure, Verdict};

/// Which side multipliers act on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}
