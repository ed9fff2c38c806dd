//! The sampling domain: a single coordinate box with a finite-difference
//! step, and the pairing of a box with a metric field.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::metric_field::MetricField;
use crate::algebra::Metric;
use crate::error::{Error, Result};
use crate::util::shifted;

/// An axis-aligned box of chart coordinates with per-axis sample counts and
/// the finite-difference step used by derivative operators on it.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ChartBox {
    pub lo: [f64; 4],
    pub hi: [f64; 4],
    pub n: [usize; 4],
    pub h: f64,
}

impl ChartBox {
    pub fn new(lo: [f64; 4], hi: [f64; 4], n: [usize; 4], h: f64) -> Result<Self> {
        for mu in 0..4 {
            if !(lo[mu] < hi[mu]) {
                return Err(Error::BadChartBox(format!(
                    "lo[{mu}] = {} must be < hi[{mu}] = {}",
                    lo[mu], hi[mu]
                )));
            }
            if n[mu] < 2 {
                return Err(Error::BadChartBox(format!("n[{mu}] must be >= 2")));
            }
            if !(h > 0.0 && h < 0.1 * (hi[mu] - lo[mu])) {
                return Err(Error::BadChartBox(format!(
                    "h = {h} must be positive and small against the extent of axis {mu}"
                )));
            }
        }
        Ok(ChartBox { lo, hi, n, h })
    }

    /// Default sampling box used by the catalog metrics.
    pub fn default_box() -> Self {
        ChartBox::new([-1.0; 4], [1.0; 4], [4; 4], 1e-3).expect("static box is valid")
    }

    pub fn center(&self) -> [f64; 4] {
        let mut c = [0.0; 4];
        for mu in 0..4 {
            c[mu] = 0.5 * (self.lo[mu] + self.hi[mu]);
        }
        c
    }

    /// All grid nodes, row-major with the last axis fastest.
    pub fn nodes(&self) -> Vec<[f64; 4]> {
        let mut out = Vec::with_capacity(self.n.iter().product());
        let coord = |mu: usize, i: usize| {
            self.lo[mu] + (self.hi[mu] - self.lo[mu]) * i as f64 / (self.n[mu] - 1) as f64
        };
        for i0 in 0..self.n[0] {
            for i1 in 0..self.n[1] {
                for i2 in 0..self.n[2] {
                    for i3 in 0..self.n[3] {
                        out.push([coord(0, i0), coord(1, i1), coord(2, i2), coord(3, i3)]);
                    }
                }
            }
        }
        out
    }

    pub fn contains_with_margin(&self, x: &[f64; 4], margin: f64) -> bool {
        (0..4).all(|mu| x[mu] >= self.lo[mu] + margin && x[mu] <= self.hi[mu] - margin)
    }

    /// Uniform draw from the box shrunk by `margin` on every side.
    pub fn random_interior<R: Rng>(&self, rng: &mut R, margin: f64) -> [f64; 4] {
        let mut x = [0.0; 4];
        for mu in 0..4 {
            x[mu] = rng.random_range(self.lo[mu] + margin..self.hi[mu] - margin);
        }
        x
    }
}

/// A metric field together with the box it is sampled over. All derivative
/// operators take their finite-difference step from `bounds.h`.
#[derive(Clone)]
pub struct Chart {
    pub metric: MetricField,
    pub bounds: ChartBox,
}

impl Chart {
    pub fn new(metric: MetricField, bounds: ChartBox) -> Self {
        Chart { metric, bounds }
    }

    pub fn h(&self) -> f64 {
        self.bounds.h
    }

    pub fn metric_at(&self, x: &[f64; 4]) -> Result<Metric> {
        Metric::new(self.metric.g_at(x))
    }

    pub fn sqrt_neg_det_at(&self, x: &[f64; 4]) -> Result<f64> {
        Ok(self.metric_at(x)?.sqrt_neg_det())
    }

    /// Errors when a finite-difference stencil of reach `reach` would leave
    /// the box. Analytic paths pass `reach = 0`.
    pub fn require_interior(&self, x: &[f64; 4], reach: f64) -> Result<()> {
        if reach > 0.0 && !self.bounds.contains_with_margin(x, reach) {
            return Err(Error::OutsideChart {
                point: *x,
                margin: reach,
            });
        }
        if !self.bounds.contains_with_margin(x, 0.0) {
            return Err(Error::OutsideChart {
                point: *x,
                margin: 0.0,
            });
        }
        Ok(())
    }

    /// First partials of the covariant metric: analytic when the field
    /// carries them, second-order central differences otherwise.
    pub fn dg_at(&self, x: &[f64; 4]) -> Result<[[[f64; 4]; 4]; 4]> {
        if let Some(dg) = self.metric.dg_at(x) {
            return Ok(dg);
        }
        let h = self.h();
        self.require_interior(x, h)?;
        let mut dg = [[[0.0; 4]; 4]; 4];
        for (kappa, entry) in dg.iter_mut().enumerate() {
            let gp = self.metric.g_at(&shifted(x, kappa, h));
            let gm = self.metric.g_at(&shifted(x, kappa, -h));
            for m in 0..4 {
                for n in 0..4 {
                    entry[m][n] = (gp[m][n] - gm[m][n]) / (2.0 * h);
                }
            }
        }
        Ok(dg)
    }
}
