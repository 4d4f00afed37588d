//! Toric resolution machinery: adic expansions, the re-embedding ideal,
//! weighted initial-form certificates, chart-by-chart verification and the
//! space-curve mode.

pub mod adic;
pub mod chart;
pub mod ideal;
pub mod initial;
pub mod space;

pub use adic::{adic_expansion, valuation_from_expansion, AdicExpansion};
pub use chart::{chart_check_plane, BranchChartData, ChartReport};
pub use ideal::{build_embedding_ideal, simple_embedding_ideal, EmbeddingIdeal, GenShape};
pub use initial::{initial_form_certificate, leaf_initial_certificate, InitialCertificate};
pub use space::{space_curve_resolve, SpaceCurveInput, SpaceReport};
