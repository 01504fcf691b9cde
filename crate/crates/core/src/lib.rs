//! Index of Future Readiness (IFR) engine.
//!
//! Raw country indicator panels go in; six element scores (GR, GA, BR, BA, CR,
//! CA), three actor-readiness sub-indexes, the resilience (NRI) and
//! adaptive-capacity (NAI) sub-indexes, and the overall NFRI come out, along
//! with rankings and robustness diagnostics.
//!
//! ```
//! use ifr::prelude::*;
//!
//! let spec = build_default_ifr_hierarchy();
//! assert!(validate_hierarchy(&spec).is_empty());
//! assert_eq!(spec.sub_elements.len(), 29);
//! ```

pub mod aggregate;
pub mod cli;
pub mod ingest;
pub mod normalize;
pub mod report;
pub mod sensitivity;
pub mod synthetic;
pub mod taxonomy;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Taxonomy(#[from] taxonomy::TaxonomyError),
    #[error(transparent)]
    Ingest(#[from] ingest::IngestError),
    #[error(transparent)]
    Normalize(#[from] normalize::NormalizeError),
    #[error(transparent)]
    Sensitivity(#[from] sensitivity::SensitivityError),
    #[error(transparent)]
    Report(#[from] report::ReportError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub mod prelude {
    pub use crate::aggregate::{
        actor_readiness, build_scorecards, nfri, rank, score_element, score_sub_element,
        thematic_indexes, MissingDataPolicy, RankTable, ScoreCard, ScoreKind,
    };
    pub use crate::ingest::{
        load_observations, validate_dataset, CoverageReport, Dataset, Observation,
    };
    pub use crate::normalize::{
        compute_bounds, normalize_dataset, normalize_value, BoundsMode, BoundsPolicy,
    };
    pub use crate::sensitivity::{
        normalization_switch_analysis, perturb_weights, run_sensitivity, spearman_rho,
        RobustnessReport, SensitivityConfig,
    };
    pub use crate::taxonomy::{
        build_default_ifr_hierarchy, parse_hierarchy, serialize_hierarchy, validate_hierarchy,
        Actor, ElementId, HierarchySpec, Orientation, Theme,
    };
}
