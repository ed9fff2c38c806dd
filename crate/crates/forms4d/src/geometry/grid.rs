//! User-supplied metrics sampled on a grid, loaded from JSON and evaluated
//! by multilinear interpolation. Interpolated fields carry no analytic
//! derivatives and are flagged as lower-accuracy in reports.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::metric_field::MetricField;
use crate::error::{Error, Result};

/// Wire format: a box spec plus row-major (last axis fastest) nodes, each a
/// row-major 16-number covariant metric.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridMetricData {
    pub lo: [f64; 4],
    pub hi: [f64; 4],
    pub n: [usize; 4],
    pub g: Vec<[f64; 16]>,
}

impl GridMetricData {
    pub fn validate(&self) -> Result<()> {
        let count: usize = self.n.iter().product();
        for mu in 0..4 {
            if self.n[mu] < 2 {
                return Err(Error::BadParams(format!("grid n[{mu}] must be >= 2")));
            }
            if !(self.lo[mu] < self.hi[mu]) {
                return Err(Error::BadParams("grid lo must be < hi".into()));
            }
        }
        if self.g.len() != count {
            return Err(Error::BadParams(format!(
                "grid has {} nodes but {} samples",
                count,
                self.g.len()
            )));
        }
        Ok(())
    }

    /// Samples an analytic metric field onto a grid; used for round-trip
    /// testing of the loader.
    pub fn sample(mf: &MetricField, lo: [f64; 4], hi: [f64; 4], n: [usize; 4]) -> Self {
        let coord = |mu: usize, i: usize| lo[mu] + (hi[mu] - lo[mu]) * i as f64 / (n[mu] - 1) as f64;
        let mut g = Vec::with_capacity(n.iter().product());
        for i0 in 0..n[0] {
            for i1 in 0..n[1] {
                for i2 in 0..n[2] {
                    for i3 in 0..n[3] {
                        let x = [coord(0, i0), coord(1, i1), coord(2, i2), coord(3, i3)];
                        let gm = mf.g_at(&x);
                        let mut flat = [0.0; 16];
                        for a in 0..4 {
                            for b in 0..4 {
                                flat[4 * a + b] = gm[a][b];
                            }
                        }
                        g.push(flat);
                    }
                }
            }
        }
        GridMetricData { lo, hi, n, g }
    }
}

/// Builds an interpolating metric field from grid data.
pub fn grid_metric(data: GridMetricData, label: impl Into<String>) -> Result<MetricField> {
    data.validate()?;
    let data = Arc::new(data);
    let d = data.clone();
    let g = Arc::new(move |x: &[f64; 4]| interpolate(&d, x));
    Ok(MetricField::new(label, g).grid_backed(true))
}

/// Loads grid data from a JSON file.
pub fn load_grid_metric(path: &std::path::Path) -> Result<MetricField> {
    let text = std::fs::read_to_string(path)?;
    let data: GridMetricData = serde_json::from_str(&text)?;
    grid_metric(data, format!("grid({})", path.display()))
}

fn interpolate(d: &GridMetricData, x: &[f64; 4]) -> [[f64; 4]; 4] {
    // Cell index and local fraction per axis, clamped to the box.
    let mut i0 = [0usize; 4];
    let mut frac = [0.0; 4];
    for mu in 0..4 {
        let t = (x[mu] - d.lo[mu]) / (d.hi[mu] - d.lo[mu]) * (d.n[mu] - 1) as f64;
        let t = t.clamp(0.0, (d.n[mu] - 1) as f64);
        let cell = (t.floor() as usize).min(d.n[mu] - 2);
        i0[mu] = cell;
        frac[mu] = t - cell as f64;
    }
    let stride3 = 1;
    let stride2 = d.n[3];
    let stride1 = d.n[2] * d.n[3];
    let stride0 = d.n[1] * d.n[2] * d.n[3];
    let mut flat = [0.0; 16];
    for corner in 0..16usize {
        let mut w = 1.0;
        let mut idx = 0usize;
        let bits = [corner & 1, (corner >> 1) & 1, (corner >> 2) & 1, (corner >> 3) & 1];
        for mu in 0..4 {
            let b = bits[mu];
            w *= if b == 1 { frac[mu] } else { 1.0 - frac[mu] };
            idx += (i0[mu] + b)
                * match mu {
                    0 => stride0,
                    1 => stride1,
                    2 => stride2,
                    _ => stride3,
                };
        }
        if w == 0.0 {
            continue;
        }
        let node = &d.g[idx];
        for k in 0..16 {
            flat[k] += w * node[k];
        }
    }
    let mut out = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            out[a][b] = flat[4 * a + b];
        }
    }
    // Interpolation of symmetric data stays symmetric up to roundoff;
    // symmetrize so the pointwise validator does not trip on 1 ulp noise.
    for a in 0..4 {
        for b in (a + 1)..4 {
            let s = 0.5 * (out[a][b] + out[b][a]);
            out[a][b] = s;
            out[b][a] = s;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::catalog::flrw;
    use super::*;

    #[test]
    fn grid_metric_interpolates_smooth_field() {
        let mf = flrw(1.0, 0.1);
        let data = GridMetricData::sample(&mf, [-1.0; 4], [1.0; 4], [9, 3, 3, 3]);
        let gm = grid_metric(data, "grid-test").unwrap();
        assert!(gm.is_grid_backed());
        let x = [0.13, 0.2, -0.5, 0.77];
        let exact = mf.g_at(&x);
        let interp = gm.g_at(&x);
        for a in 0..4 {
            for b in 0..4 {
                // quadratic-in-t entries on a coarse grid: percent-level
                assert!((exact[a][b] - interp[a][b]).abs() < 5e-3, "{a}{b}");
            }
        }
        // exact at a grid node
        let node = [-1.0, -1.0, -1.0, -1.0];
        let e = mf.g_at(&node);
        let i = gm.g_at(&node);
        for a in 0..4 {
            assert!((e[a][a] - i[a][a]).abs() < 1e-14);
        }
    }

    #[test]
    fn bad_grid_shapes_are_rejected() {
        let mut data = GridMetricData::sample(&flrw(1.0, 0.1), [-1.0; 4], [1.0; 4], [3, 3, 3, 3]);
        data.g.pop();
        assert!(grid_metric(data, "broken").is_err());
    }
}
