//! Built-in metric fields with analytic derivatives, plus the closed-form
//! oracle for the expanding-spatial-slice family used by the test suites.

use std::sync::Arc;

use super::curvature::Christoffel;
use super::metric_field::{polynomial_metric, MetricField, Poly};
use crate::error::{Error, Result};

/// `diag(1, -1, -1, -1)` everywhere.
pub fn minkowski() -> MetricField {
    let mut e: [[Poly; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| Poly::zero()));
    e[0][0] = Poly::constant(1.0);
    for i in 1..4 {
        e[i][i] = Poly::constant(-1.0);
    }
    polynomial_metric("minkowski", e, true)
}

/// `diag(1, -a(t)^2, -a(t)^2, -a(t)^2)` with `a(t) = a0 + k t`.
pub fn flrw(a0: f64, k: f64) -> MetricField {
    let a = Poly::constant(a0).add(&Poly::var(0).scale(k));
    let neg_a2 = a.mul(&a).scale(-1.0);
    let mut e: [[Poly; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| Poly::zero()));
    e[0][0] = Poly::constant(1.0);
    for i in 1..4 {
        e[i][i] = neg_a2.clone();
    }
    polynomial_metric(format!("flrw(a0={a0},k={k})"), e, true)
}

/// Flat metric plus a small symmetric quadratic perturbation, `eps`-scaled.
/// The default box keeps the perturbation well inside the signature-safe
/// regime; the suites verify the axioms at every grid node anyway.
pub fn polynomial_perturbed(eps: f64) -> MetricField {
    let q = |i: usize, j: usize, s: f64| Poly::var(i).mul(&Poly::var(j)).scale(s * eps);
    let mut e: [[Poly; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| Poly::zero()));
    e[0][0] = Poly::constant(1.0).add(&q(1, 1, 0.5)).add(&q(2, 3, 0.3));
    e[1][1] = Poly::constant(-1.0).add(&q(0, 2, 0.4)).add(&q(3, 3, -0.2));
    e[2][2] = Poly::constant(-1.0).add(&q(0, 1, 0.3)).add(&q(0, 3, 0.1));
    e[3][3] = Poly::constant(-1.0).add(&q(1, 2, 0.25));
    let off = [
        (0, 1, q(2, 2, 0.3)),
        (0, 2, q(1, 3, 0.2)),
        (0, 3, q(0, 1, 0.1)),
        (1, 2, q(0, 0, 0.25)),
        (1, 3, q(0, 2, 0.15)),
        (2, 3, q(1, 1, 0.2)),
    ];
    for (i, j, p) in off {
        e[i][j] = p.clone();
        e[j][i] = p;
    }
    polynomial_metric(format!("polynomial-perturbed(eps={eps})"), e, false)
}

/// Conformal factor profile for [`conformally_flat`]: smooth, bounded, with
/// closed-form first and second partials. Non-polynomial on purpose, so the
/// finite-difference convergence checks see genuine truncation error.
fn conformal_profile(x: &[f64; 4]) -> (f64, [f64; 4], [[f64; 4]; 4]) {
    let w = [0.9, 0.7, 0.6, 0.5];
    let c = [0.3, 0.2, 0.15, 0.1];
    let mut q = 0.0;
    let mut dq = [0.0; 4];
    let mut d2q = [[0.0; 4]; 4];
    for mu in 0..4 {
        q += c[mu] * (w[mu] * x[mu]).sin();
        dq[mu] = c[mu] * w[mu] * (w[mu] * x[mu]).cos();
        d2q[mu][mu] = -c[mu] * w[mu] * w[mu] * (w[mu] * x[mu]).sin();
    }
    (q, dq, d2q)
}

/// `g_{mn}(x) = Omega(x)^2 diag(1,-1,-1,-1)` with `Omega = 1 + w q(x)`.
/// `w = 0` reduces exactly to the flat metric.
pub fn conformally_flat(w: f64) -> MetricField {
    let eta = [1.0, -1.0, -1.0, -1.0];
    let g = Arc::new(move |x: &[f64; 4]| {
        let (q, _, _) = conformal_profile(x);
        let omega = 1.0 + w * q;
        let mut out = [[0.0; 4]; 4];
        for i in 0..4 {
            out[i][i] = omega * omega * eta[i];
        }
        out
    });
    let dg = Arc::new(move |x: &[f64; 4]| {
        let (q, dq, _) = conformal_profile(x);
        let omega = 1.0 + w * q;
        let mut out = [[[0.0; 4]; 4]; 4];
        for (k, slice) in out.iter_mut().enumerate() {
            for i in 0..4 {
                slice[i][i] = 2.0 * omega * w * dq[k] * eta[i];
            }
        }
        out
    });
    let d2g = Arc::new(move |x: &[f64; 4]| {
        let (q, dq, d2q) = conformal_profile(x);
        let omega = 1.0 + w * q;
        let mut out = [[[[0.0; 4]; 4]; 4]; 4];
        for (k, sk) in out.iter_mut().enumerate() {
            for (l, sl) in sk.iter_mut().enumerate() {
                for i in 0..4 {
                    sl[i][i] =
                        (2.0 * w * w * dq[k] * dq[l] + 2.0 * omega * w * d2q[k][l]) * eta[i];
                }
            }
        }
        out
    });
    MetricField::new(format!("conformally-flat(w={w})"), g)
        .with_dg(dg)
        .with_d2g(d2g)
        .diagonal(true)
}

/// Looks up a catalog metric by name. Parameters beyond those consumed are
/// rejected; omitted parameters take the documented defaults.
pub fn metric_catalog(name: &str, params: &[f64]) -> Result<MetricField> {
    let take = |k: usize, defaults: &[f64]| -> Result<Vec<f64>> {
        if params.len() > k {
            return Err(Error::BadParams(format!(
                "`{name}` takes at most {k} parameter(s), got {}",
                params.len()
            )));
        }
        let mut v = params.to_vec();
        v.extend_from_slice(&defaults[params.len()..]);
        Ok(v)
    };
    match name {
        "minkowski" => {
            take(0, &[])?;
            Ok(minkowski())
        }
        "flrw" => {
            let p = take(2, &[1.0, 0.1])?;
            if p[0] <= 0.0 {
                return Err(Error::BadParams("flrw needs a0 > 0".into()));
            }
            Ok(flrw(p[0], p[1]))
        }
        "polynomial-perturbed" => {
            let p = take(1, &[0.05])?;
            Ok(polynomial_perturbed(p[0]))
        }
        "conformally-flat" => {
            let p = take(1, &[0.1])?;
            Ok(conformally_flat(p[0]))
        }
        other => Err(Error::UnknownMetric(other.to_string())),
    }
}

/// Names and parameter documentation for the CLI listing.
pub fn catalog_entries() -> Vec<(&'static str, &'static str)> {
    vec![
        ("minkowski", "diag(1,-1,-1,-1); no parameters"),
        (
            "flrw",
            "diag(1,-a^2,-a^2,-a^2), a(t) = a0 + k*t; params [a0 = 1, k = 0.1]",
        ),
        (
            "polynomial-perturbed",
            "flat plus symmetric quadratic perturbation; params [eps = 0.05]",
        ),
        (
            "conformally-flat",
            "Omega(x)^2 * flat with trigonometric Omega = 1 + w*q(x); params [w = 0.1]; w = 0 is exactly flat",
        ),
    ]
}

/// Closed-form connection and curvature for `diag(1,-a^2,-a^2,-a^2)`,
/// derived independently of the finite-difference machinery:
///
/// ```text
/// Gamma^0_{ij} = a a' d_ij      Gamma^i_{0j} = (a'/a) d^i_j
/// R^i_{0j0} = -(a''/a) d^i_j    R^0_{i0j} = a a'' d_ij
/// R^i_{jkl} = a'^2 (d^i_k d_jl - d^i_l d_jk)
/// ```
pub struct FlrwOracle {
    a0: f64,
    k: f64,
}

impl FlrwOracle {
    pub fn new(a0: f64, k: f64) -> Self {
        FlrwOracle { a0, k }
    }

    fn a(&self, t: f64) -> f64 {
        self.a0 + self.k * t
    }

    pub fn christoffel(&self, x: &[f64; 4]) -> Christoffel {
        let a = self.a(x[0]);
        let ap = self.k;
        let mut g = [[[0.0; 4]; 4]; 4];
        for i in 1..4 {
            g[0][i][i] = a * ap;
            g[i][0][i] = ap / a;
            g[i][i][0] = ap / a;
        }
        Christoffel(g)
    }

    pub fn riemann_mixed(&self, x: &[f64; 4]) -> [[[[f64; 4]; 4]; 4]; 4] {
        let a = self.a(x[0]);
        let ap = self.k;
        let app = 0.0; // linear scale factor
        let mut r = [[[[0.0; 4]; 4]; 4]; 4];
        let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
        for i in 1..4 {
            for j in 1..4 {
                r[i][0][j][0] = -(app / a) * delta(i, j);
                r[i][0][0][j] = (app / a) * delta(i, j);
                r[0][i][0][j] = a * app * delta(i, j);
                r[0][i][j][0] = -a * app * delta(i, j);
                for k_ in 1..4 {
                    for l in 1..4 {
                        r[i][j][k_][l] = ap * ap * (delta(i, k_) * delta(j, l) - delta(i, l) * delta(j, k_));
                    }
                }
            }
        }
        r
    }
}
