//! Metric tensor fields over a chart: closure-backed evaluation with
//! optional analytic first and second partials.

use std::sync::Arc;

/// `g_{mn}(x)` as a function over the chart, with optional analytic
/// derivative closures. When the derivative closures are absent, consumers
/// fall back to central finite differences.
///
/// Index conventions: `dg[k][m][n] = d_k g_{mn}`,
/// `d2g[k][l][m][n] = d_k d_l g_{mn}`.
#[derive(Clone)]
pub struct MetricField {
    label: String,
    g: Arc<dyn Fn(&[f64; 4]) -> [[f64; 4]; 4] + Send + Sync>,
    dg: Option<Arc<dyn Fn(&[f64; 4]) -> [[[f64; 4]; 4]; 4] + Send + Sync>>,
    d2g: Option<Arc<dyn Fn(&[f64; 4]) -> [[[[f64; 4]; 4]; 4]; 4] + Send + Sync>>,
    diagonal: bool,
    grid_backed: bool,
}

impl MetricField {
    pub fn new(
        label: impl Into<String>,
        g: Arc<dyn Fn(&[f64; 4]) -> [[f64; 4]; 4] + Send + Sync>,
    ) -> Self {
        MetricField {
            label: label.into(),
            g,
            dg: None,
            d2g: None,
            diagonal: false,
            grid_backed: false,
        }
    }

    pub fn with_dg(
        mut self,
        dg: Arc<dyn Fn(&[f64; 4]) -> [[[f64; 4]; 4]; 4] + Send + Sync>,
    ) -> Self {
        self.dg = Some(dg);
        self
    }

    pub fn with_d2g(
        mut self,
        d2g: Arc<dyn Fn(&[f64; 4]) -> [[[[f64; 4]; 4]; 4]; 4] + Send + Sync>,
    ) -> Self {
        self.d2g = Some(d2g);
        self
    }

    pub fn diagonal(mut self, yes: bool) -> Self {
        self.diagonal = yes;
        self
    }

    pub fn grid_backed(mut self, yes: bool) -> Self {
        self.grid_backed = yes;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal
    }

    pub fn is_grid_backed(&self) -> bool {
        self.grid_backed
    }

    pub fn has_analytic_dg(&self) -> bool {
        self.dg.is_some()
    }

    pub fn has_analytic_d2g(&self) -> bool {
        self.d2g.is_some()
    }

    pub fn g_at(&self, x: &[f64; 4]) -> [[f64; 4]; 4] {
        (self.g)(x)
    }

    pub fn dg_at(&self, x: &[f64; 4]) -> Option<[[[f64; 4]; 4]; 4]> {
        self.dg.as_ref().map(|f| f(x))
    }

    pub fn d2g_at(&self, x: &[f64; 4]) -> Option<[[[[f64; 4]; 4]; 4]; 4]> {
        self.d2g.as_ref().map(|f| f(x))
    }

    /// Drops the analytic derivative closures; used to force the
    /// finite-difference paths in convergence tests.
    pub fn without_analytic_derivatives(mut self) -> Self {
        self.dg = None;
        self.d2g = None;
        self
    }
}

/// A polynomial in the four chart coordinates, kept as a monomial list.
/// Exact differentiation of catalog metrics runs through this.
#[derive(Clone, Debug, Default)]
pub struct Poly {
    terms: Vec<(f64, [u32; 4])>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        if c == 0.0 {
            Self::zero()
        } else {
            Poly {
                terms: vec![(c, [0; 4])],
            }
        }
    }

    pub fn var(mu: usize) -> Self {
        let mut p = [0u32; 4];
        p[mu] = 1;
        Poly {
            terms: vec![(1.0, p)],
        }
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.terms.extend(rhs.terms.iter().cloned());
        out.normalize();
        out
    }

    pub fn scale(&self, s: f64) -> Poly {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.0 *= s;
        }
        out.normalize();
        out
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ca, pa) in &self.terms {
            for (cb, pb) in &rhs.terms {
                let mut p = *pa;
                for mu in 0..4 {
                    p[mu] += pb[mu];
                }
                out.terms.push((ca * cb, p));
            }
        }
        out.normalize();
        out
    }

    pub fn deriv(&self, mu: usize) -> Poly {
        let mut out = Poly::zero();
        for (c, p) in &self.terms {
            if p[mu] > 0 {
                let mut q = *p;
                q[mu] -= 1;
                out.terms.push((c * p[mu] as f64, q));
            }
        }
        out.normalize();
        out
    }

    pub fn eval(&self, x: &[f64; 4]) -> f64 {
        self.terms
            .iter()
            .map(|(c, p)| {
                let mut v = *c;
                for mu in 0..4 {
                    for _ in 0..p[mu] {
                        v *= x[mu];
                    }
                }
                v
            })
            .sum()
    }

    fn normalize(&mut self) {
        self.terms.sort_by(|a, b| a.1.cmp(&b.1));
        let mut merged: Vec<(f64, [u32; 4])> = Vec::with_capacity(self.terms.len());
        for &(c, p) in &self.terms {
            if let Some(last) = merged.last_mut() {
                if last.1 == p {
                    last.0 += c;
                    continue;
                }
            }
            merged.push((c, p));
        }
        merged.retain(|t| t.0 != 0.0);
        self.terms = merged;
    }
}

/// Builds a metric field from a symmetric matrix of polynomials, with the
/// first and second partials differentiated exactly.
pub fn polynomial_metric(label: impl Into<String>, entries: [[Poly; 4]; 4], diagonal: bool) -> MetricField {
    let entries = Arc::new(entries);
    let d1: Arc<Vec<[[Poly; 4]; 4]>> = Arc::new(
        (0..4)
            .map(|k| std::array::from_fn(|m| std::array::from_fn(|n| entries[m][n].deriv(k))))
            .collect(),
    );
    let d2: Arc<Vec<Vec<[[Poly; 4]; 4]>>> = Arc::new(
        (0..4)
            .map(|k| {
                (0..4)
                    .map(|l| {
                        std::array::from_fn(|m| {
                            std::array::from_fn(|n| entries[m][n].deriv(k).deriv(l))
                        })
                    })
                    .collect()
            })
            .collect(),
    );

    let e = entries.clone();
    let g = Arc::new(move |x: &[f64; 4]| {
        let mut out = [[0.0; 4]; 4];
        for m in 0..4 {
            for n in 0..4 {
                out[m][n] = e[m][n].eval(x);
            }
        }
        out
    });
    let dg = Arc::new(move |x: &[f64; 4]| {
        let mut out = [[[0.0; 4]; 4]; 4];
        for (k, slice) in out.iter_mut().enumerate() {
            for m in 0..4 {
                for n in 0..4 {
                    slice[m][n] = d1[k][m][n].eval(x);
                }
            }
        }
        out
    });
    let d2g = Arc::new(move |x: &[f64; 4]| {
        let mut out = [[[[0.0; 4]; 4]; 4]; 4];
        for (k, sk) in out.iter_mut().enumerate() {
            for (l, sl) in sk.iter_mut().enumerate() {
                for m in 0..4 {
                    for n in 0..4 {
                        sl[m][n] = d2[k][l][m][n].eval(x);
                    }
                }
            }
        }
        out
    });

    MetricField::new(label, g)
        .with_dg(dg)
        .with_d2g(d2g)
        .diagonal(diagonal)
}
