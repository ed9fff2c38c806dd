//! Christoffel symbols and the Riemann curvature tensor of the Levi-Civita
//! connection, plus the curvature 2-form that feeds the field operators.

use crate::algebra::{bivector_index, Multivector};
use crate::error::Result;
use crate::util::{nested_step, shifted};

use super::chart::Chart;

/// `Gamma^l_{mn}`, symmetric in the lower pair by construction.
#[derive(Clone, Debug)]
pub struct Christoffel(pub [[[f64; 4]; 4]; 4]);

impl Christoffel {
    pub fn get(&self, l: usize, m: usize, n: usize) -> f64 {
        self.0[l][m][n]
    }
}

/// All three curvature representations used downstream.
#[derive(Clone, Debug)]
pub struct Curvature {
    /// `R^k_{l m n}`.
    pub mixed: [[[[f64; 4]; 4]; 4]; 4],
    /// `R_{a b m n} = g_{ka} R^k_{b m n}`.
    pub lower: [[[[f64; 4]; 4]; 4]; 4],
    /// `C_{mn} = 1/2 R_{ab mn} dx^a ^ dx^b`, antisymmetric in `(m,n)`.
    pub c2: [[Multivector; 4]; 4],
}

/// Levi-Civita symbols from the metric:
/// `Gamma^l_{mn} = 1/2 g^{lk} (d_m g_{nk} + d_n g_{mk} - d_k g_{mn})`.
pub fn christoffel_from_dg(ginv: &[[f64; 4]; 4], dg: &[[[f64; 4]; 4]; 4]) -> Christoffel {
    let mut gamma = [[[0.0; 4]; 4]; 4];
    for l in 0..4 {
        for m in 0..4 {
            for n in 0..4 {
                let mut s = 0.0;
                for k in 0..4 {
                    s += ginv[l][k] * (dg[m][n][k] + dg[n][m][k] - dg[k][m][n]);
                }
                gamma[l][m][n] = 0.5 * s;
            }
        }
    }
    Christoffel(gamma)
}

impl Chart {
    /// Christoffel symbols at `x`; analytic metric derivatives when the
    /// field carries them, central finite differences otherwise.
    pub fn christoffel_at(&self, x: &[f64; 4]) -> Result<Christoffel> {
        let reach = if self.metric.has_analytic_dg() { 0.0 } else { self.h() };
        self.require_interior(x, reach)?;
        let m = self.metric_at(x)?;
        let dg = self.dg_at(x)?;
        Ok(christoffel_from_dg(m.ginv(), &dg))
    }

    /// Christoffel symbols with the metric derivatives forced onto the
    /// finite-difference path at step `h`; used by convergence tests.
    pub fn christoffel_fd_at(&self, x: &[f64; 4], h: f64) -> Result<Christoffel> {
        self.require_interior(x, h)?;
        let m = self.metric_at(x)?;
        let mut dg = [[[0.0; 4]; 4]; 4];
        for (kappa, entry) in dg.iter_mut().enumerate() {
            let gp = self.metric.g_at(&shifted(x, kappa, h));
            let gm = self.metric.g_at(&shifted(x, kappa, -h));
            for a in 0..4 {
                for b in 0..4 {
                    entry[a][b] = (gp[a][b] - gm[a][b]) / (2.0 * h);
                }
            }
        }
        Ok(christoffel_from_dg(m.ginv(), &dg))
    }

    /// `d_s Gamma^l_{mn}`: exact when second metric partials are available,
    /// otherwise nested central differences of the Christoffel symbols with
    /// the widened outer step.
    pub fn dgamma_at(&self, x: &[f64; 4]) -> Result<[[[[f64; 4]; 4]; 4]; 4]> {
        if self.metric.has_analytic_dg() && self.metric.has_analytic_d2g() {
            let m = self.metric_at(x)?;
            let gi = m.ginv();
            let dg = self.metric.dg_at(x).expect("checked");
            let d2g = self.metric.d2g_at(x).expect("checked");
            // d_s g^{lk} = -g^{la} (d_s g_{ab}) g^{bk}
            let mut dginv = [[[0.0; 4]; 4]; 4];
            for (s, slice) in dginv.iter_mut().enumerate() {
                for l in 0..4 {
                    for k in 0..4 {
                        let mut v = 0.0;
                        for a in 0..4 {
                            for b in 0..4 {
                                v -= gi[l][a] * dg[s][a][b] * gi[b][k];
                            }
                        }
                        slice[l][k] = v;
                    }
                }
            }
            let mut out = [[[[0.0; 4]; 4]; 4]; 4];
            for (s, slice) in out.iter_mut().enumerate() {
                for l in 0..4 {
                    for m_ in 0..4 {
                        for n in 0..4 {
                            let mut v = 0.0;
                            for k in 0..4 {
                                v += dginv[s][l][k] * (dg[m_][n][k] + dg[n][m_][k] - dg[k][m_][n]);
                                v += gi[l][k]
                                    * (d2g[s][m_][n][k] + d2g[s][n][m_][k] - d2g[s][k][m_][n]);
                            }
                            slice[l][m_][n] = 0.5 * v;
                        }
                    }
                }
            }
            return Ok(out);
        }
        let h2 = nested_step(self.h());
        let inner_reach = if self.metric.has_analytic_dg() { 0.0 } else { self.h() };
        self.require_interior(x, h2 + inner_reach)?;
        let mut out = [[[[0.0; 4]; 4]; 4]; 4];
        for (s, slice) in out.iter_mut().enumerate() {
            let gp = self.christoffel_at(&shifted(x, s, h2))?;
            let gm = self.christoffel_at(&shifted(x, s, -h2))?;
            for l in 0..4 {
                for m_ in 0..4 {
                    for n in 0..4 {
                        slice[l][m_][n] = (gp.0[l][m_][n] - gm.0[l][m_][n]) / (2.0 * h2);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Riemann tensor
    /// `R^k_{lmn} = d_m Gamma^k_{nl} - d_n Gamma^k_{ml}
    ///              + Gamma^k_{me} Gamma^e_{nl} - Gamma^k_{ne} Gamma^e_{ml}`
    /// together with its lowered form and the curvature 2-form.
    pub fn riemann_at(&self, x: &[f64; 4]) -> Result<Curvature> {
        let gamma = self.christoffel_at(x)?;
        let dgamma = self.dgamma_at(x)?;
        let m = self.metric_at(x)?;
        Ok(curvature_from_parts(&gamma, &dgamma, m.g()))
    }
}

/// Assembles all curvature representations from connection coefficients and
/// their first partials. Shared by the Levi-Civita path and the affine
/// (contorsion-shifted) path.
pub fn curvature_from_parts(
    gamma: &Christoffel,
    dgamma: &[[[[f64; 4]; 4]; 4]; 4],
    g: &[[f64; 4]; 4],
) -> Curvature {
    let gm = &gamma.0;
    let mut mixed = [[[[0.0; 4]; 4]; 4]; 4];
    for k in 0..4 {
        for l in 0..4 {
            for mu in 0..4 {
                for nu in 0..4 {
                    let mut v = dgamma[mu][k][nu][l] - dgamma[nu][k][mu][l];
                    for e in 0..4 {
                        v += gm[k][mu][e] * gm[e][nu][l] - gm[k][nu][e] * gm[e][mu][l];
                    }
                    mixed[k][l][mu][nu] = v;
                }
            }
        }
    }
    let mut lower = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for mu in 0..4 {
                for nu in 0..4 {
                    let mut v = 0.0;
                    for k in 0..4 {
                        v += g[k][a] * mixed[k][b][mu][nu];
                    }
                    lower[a][b][mu][nu] = v;
                }
            }
        }
    }
    let c2 = c2_from_lower(&lower);
    Curvature { mixed, lower, c2 }
}

/// `C_{mn}` from lowered curvature components: the coefficient of the blade
/// `dx^a^dx^b` (a < b) is `(R_{ab mn} - R_{ba mn})/2`, which is the literal
/// sum `1/2 R_{ab mn} dx^a ^ dx^b` over all index pairs.
pub fn c2_from_lower(lower: &[[[[f64; 4]; 4]; 4]; 4]) -> [[Multivector; 4]; 4] {
    let mut c2 = [[Multivector::ZERO; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let mut f = Multivector::ZERO;
            for a in 0..4 {
                for b in (a + 1)..4 {
                    f[bivector_index(a, b)] = 0.5 * (lower[a][b][mu][nu] - lower[b][a][mu][nu]);
                }
            }
            c2[mu][nu] = f;
        }
    }
    c2
}

/// Max-norm residual of metric compatibility at a point:
/// `nabla_k g_{mn}`, `nabla_k g^{mn}`, and `nabla_k delta^m_n`.
pub fn metric_compat_residual(chart: &Chart, x: &[f64; 4]) -> Result<f64> {
    let m = chart.metric_at(x)?;
    let gamma = chart.christoffel_at(x)?;
    let dg = chart.dg_at(x)?;
    let g = m.g();
    let gi = m.ginv();
    // d_k g^{mn} = -g^{ma} (d_k g_{ab}) g^{bn}
    let mut worst = 0.0_f64;
    for k in 0..4 {
        for mu in 0..4 {
            for nu in 0..4 {
                let mut cov = dg[k][mu][nu];
                for l in 0..4 {
                    cov -= gamma.get(l, k, mu) * g[l][nu] + gamma.get(l, k, nu) * g[mu][l];
                }
                worst = worst.max(cov.abs());

                let mut dginv = 0.0;
                for a in 0..4 {
                    for b in 0..4 {
                        dginv -= gi[mu][a] * dg[k][a][b] * gi[b][nu];
                    }
                }
                let mut con = dginv;
                for l in 0..4 {
                    con += gamma.get(mu, k, l) * gi[l][nu] + gamma.get(nu, k, l) * gi[mu][l];
                }
                worst = worst.max(con.abs());

                // mixed delta: d is zero, the two connection terms cancel
                let mut kr = 0.0;
                for l in 0..4 {
                    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
                    kr += gamma.get(mu, k, l) * delta(l, nu) - gamma.get(l, k, nu) * delta(mu, l);
                }
                worst = worst.max(kr.abs());
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::super::catalog::{flrw, minkowski, FlrwOracle};
    use super::super::chart::{Chart, ChartBox};
    use super::*;

    fn flrw_chart() -> Chart {
        Chart::new(flrw(1.0, 0.1), ChartBox::default_box())
    }

    #[test]
    fn minkowski_is_flat() {
        let chart = Chart::new(minkowski(), ChartBox::default_box());
        let x = [0.2, -0.3, 0.1, 0.4];
        let gamma = chart.christoffel_at(&x).unwrap();
        let curv = chart.riemann_at(&x).unwrap();
        for l in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    assert_eq!(gamma.get(l, m, n), 0.0);
                    for k in 0..4 {
                        assert_eq!(curv.mixed[l][m][n][k], 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn flrw_christoffels_match_closed_form() {
        let chart = flrw_chart();
        let oracle = FlrwOracle::new(1.0, 0.1);
        let x = [0.37, 0.1, -0.4, 0.2];
        let gamma = chart.christoffel_at(&x).unwrap();
        let expect = oracle.christoffel(&x);
        for l in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    assert!(
                        (gamma.get(l, m, n) - expect.get(l, m, n)).abs() < 1e-12,
                        "{l}{m}{n}"
                    );
                    assert_eq!(gamma.get(l, m, n), gamma.get(l, n, m), "symmetry");
                }
            }
        }
        // spot values: Gamma^0_{11} = a a', Gamma^1_{01} = a'/a
        let a = 1.0 + 0.1 * x[0];
        assert!((gamma.get(0, 1, 1) - a * 0.1).abs() < 1e-12);
        assert!((gamma.get(1, 0, 1) - 0.1 / a).abs() < 1e-12);
    }

    #[test]
    fn flrw_riemann_matches_closed_form() {
        let chart = flrw_chart();
        let oracle = FlrwOracle::new(1.0, 0.1);
        let x = [0.0, 0.05, -0.2, 0.3];
        let curv = chart.riemann_at(&x).unwrap();
        let expect = oracle.riemann_mixed(&x);
        for k in 0..4 {
            for l in 0..4 {
                for m in 0..4 {
                    for n in 0..4 {
                        assert!(
                            (curv.mixed[k][l][m][n] - expect[k][l][m][n]).abs() < 1e-10,
                            "{k}{l}{m}{n}: {} vs {}",
                            curv.mixed[k][l][m][n],
                            expect[k][l][m][n]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn lowered_antisymmetries_and_first_bianchi() {
        let chart = flrw_chart();
        let x = [0.21, -0.33, 0.15, 0.02];
        let curv = chart.riemann_at(&x).unwrap();
        let mut worst = 0.0_f64;
        for a in 0..4 {
            for b in 0..4 {
                for m in 0..4 {
                    for n in 0..4 {
                        worst = worst.max((curv.lower[a][b][m][n] + curv.lower[b][a][m][n]).abs());
                        worst = worst.max((curv.lower[a][b][m][n] + curv.lower[a][b][n][m]).abs());
                        let bianchi = curv.mixed[a][b][m][n]
                            + curv.mixed[a][m][n][b]
                            + curv.mixed[a][n][b][m];
                        worst = worst.max(bianchi.abs());
                    }
                }
            }
        }
        assert!(worst < 1e-10, "worst {worst}");
    }

    #[test]
    fn metric_compatibility_holds() {
        let chart = flrw_chart();
        let x = [0.4, 0.1, 0.1, -0.6];
        let r = metric_compat_residual(&chart, &x).unwrap();
        assert!(r < 1e-12, "residual {r}");
    }

    #[test]
    fn boundary_is_enforced_for_fd_paths() {
        let mf = flrw(1.0, 0.1).without_analytic_derivatives();
        let chart = Chart::new(mf, ChartBox::default_box());
        let on_edge = [1.0, 0.0, 0.0, 0.0];
        assert!(chart.christoffel_at(&on_edge).is_err());
        assert!(chart.christoffel_at(&[0.0; 4]).is_ok());
    }
}
