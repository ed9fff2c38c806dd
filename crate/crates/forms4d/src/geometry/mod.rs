//! Metric fields over a chart box, the Levi-Civita connection, curvature,
//! and the catalog of built-in test metrics.

mod catalog;
mod chart;
mod curvature;
mod grid;
mod metric_field;

pub use catalog::{
    catalog_entries, conformally_flat, flrw, metric_catalog, minkowski, polynomial_perturbed,
    FlrwOracle,
};
pub use chart::{Chart, ChartBox};
pub use curvature::{
    c2_from_lower, christoffel_from_dg, curvature_from_parts, metric_compat_residual, Christoffel,
    Curvature,
};
pub use grid::{grid_metric, load_grid_metric, GridMetricData};
pub use metric_field::{polynomial_metric, MetricField, Poly};
