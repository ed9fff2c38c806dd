//! A pseudo-Riemannian metric at a single chart point.

use nalgebra::Matrix4;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::blade::{
    for_each_permutation, mask_indices, tuple_to_blade, BLADE_COUNT, BLADE_GRADES, BLADE_MASKS,
    FACTORIAL, PERMUTATIONS4,
};
use super::multivector::Multivector;
use crate::error::{Error, Result};

/// Symmetry tolerance accepted when validating a metric matrix.
const SYMMETRY_TOL: f64 = 1e-12;

/// Covariant metric components at a point, together with the derived data
/// every algebra operation needs: the inverse, the determinant, `sqrt(-g)`,
/// and the Hodge star of each basis blade.
///
/// Construction enforces the axioms: symmetry, `det g < 0`, signature -2
/// (one positive and three negative eigenvalues).
#[derive(Clone, Debug)]
pub struct Metric {
    g: [[f64; 4]; 4],
    ginv: [[f64; 4]; 4],
    det: f64,
    sqrt_neg_det: f64,
    star_table: [Multivector; BLADE_COUNT],
}

impl Metric {
    pub fn new(g: [[f64; 4]; 4]) -> Result<Self> {
        for i in 0..4 {
            for j in 0..4 {
                if (g[i][j] - g[j][i]).abs() > SYMMETRY_TOL {
                    return Err(Error::InvalidMetric(format!(
                        "not symmetric at ({i},{j}): {} vs {}",
                        g[i][j], g[j][i]
                    )));
                }
            }
        }
        let gm = Matrix4::from_fn(|i, j| g[i][j]);
        let det = gm.determinant();
        if !(det < 0.0) {
            return Err(Error::InvalidMetric(format!("det = {det:.6e}, expected < 0")));
        }
        let eig = gm.symmetric_eigenvalues();
        let pos = eig.iter().filter(|&&l| l > 0.0).count();
        let neg = eig.iter().filter(|&&l| l < 0.0).count();
        if pos != 1 || neg != 3 {
            return Err(Error::InvalidMetric(format!(
                "signature is not -2: eigenvalues {:?}",
                eig.as_slice()
            )));
        }
        let inv = gm
            .try_inverse()
            .ok_or_else(|| Error::InvalidMetric("matrix is not invertible".into()))?;
        let mut ginv = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                // The inverse of a symmetric matrix is symmetric; enforce it
                // exactly so downstream contractions stay symmetric.
                ginv[i][j] = 0.5 * (inv[(i, j)] + inv[(j, i)]);
            }
        }
        let sqrt_neg_det = (-det).sqrt();
        let mut star_table = [Multivector::ZERO; BLADE_COUNT];
        for (b, entry) in star_table.iter_mut().enumerate() {
            *entry = star_basis_blade(b, &ginv, sqrt_neg_det);
        }
        Ok(Metric {
            g,
            ginv,
            det,
            sqrt_neg_det,
            star_table,
        })
    }

    pub fn minkowski() -> Self {
        let mut g = [[0.0; 4]; 4];
        g[0][0] = 1.0;
        g[1][1] = -1.0;
        g[2][2] = -1.0;
        g[3][3] = -1.0;
        Self::new(g).expect("Minkowski metric satisfies the axioms")
    }

    pub fn g(&self) -> &[[f64; 4]; 4] {
        &self.g
    }

    pub fn ginv(&self) -> &[[f64; 4]; 4] {
        &self.ginv
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn sqrt_neg_det(&self) -> f64 {
        self.sqrt_neg_det
    }

    pub(crate) fn star_basis(&self, blade: usize) -> &Multivector {
        &self.star_table[blade]
    }
}

/// Hodge star of a canonical basis blade, straight from the component
/// formula: contract the raised components with the Levi-Civita symbol
/// (`eps_{0123} = +1`) and scale by `sqrt(-g) / (k! (4-k)!)`.
fn star_basis_blade(blade: usize, ginv: &[[f64; 4]; 4], sqrt_neg_det: f64) -> Multivector {
    let mask = BLADE_MASKS[blade];
    let k = BLADE_GRADES[blade];
    let idx: Vec<usize> = mask_indices(mask).collect();
    let mut out = Multivector::ZERO;
    for perm in &PERMUTATIONS4 {
        // Raised component u^{perm[0..k]} of the unit blade: sum over the
        // antisymmetrized lower components, which are the signed
        // permutations of the blade's own index set.
        let mut raised = 0.0;
        for_each_permutation(&idx, |beta, sign| {
            let mut prod = sign;
            for i in 0..k {
                prod *= ginv[perm[i]][beta[i]];
            }
            raised += prod;
        });
        if raised == 0.0 {
            continue;
        }
        let eps = super::blade::perm_sign(perm);
        if let Some((target, wsign)) = tuple_to_blade(&perm[k..]) {
            out[target] += eps * raised * wsign;
        }
    }
    out * (sqrt_neg_det / (FACTORIAL[k] * FACTORIAL[4 - k]))
}

/// Serializes as the 16 row-major covariant components; all derived fields
/// are recomputed on load.
impl Serialize for Metric {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut flat = [0.0; 16];
        for i in 0..4 {
            for j in 0..4 {
                flat[4 * i + j] = self.g[i][j];
            }
        }
        flat.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Metric {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let flat = <[f64; 16]>::deserialize(d)?;
        let mut g = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                g[i][j] = flat[4 * i + j];
            }
        }
        Metric::new(g).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minkowski_star_values() {
        let m = Metric::minkowski();
        // star(1) = volume, star(dx0) = dx1^dx2^dx3: both worked out by
        // direct evaluation of the component formula.
        assert_eq!(*m.star_basis(0), Multivector::volume());
        let dx123 = Multivector::covector(1)
            .wedge(&Multivector::covector(2))
            .wedge(&Multivector::covector(3));
        assert_eq!(*m.star_basis(1), dx123);
        // star(volume) = -1 for signature -2.
        assert_eq!(*m.star_basis(15), Multivector::scalar(-1.0));
    }

    #[test]
    fn rejects_bad_metrics() {
        let mut g = [[0.0; 4]; 4];
        g[0][0] = 1.0;
        g[1][1] = 1.0; // wrong signature
        g[2][2] = -1.0;
        g[3][3] = -1.0;
        assert!(Metric::new(g).is_err());

        let mut g2 = [[0.0; 4]; 4];
        g2[0][0] = 1.0;
        g2[1][1] = -1.0;
        g2[2][2] = -1.0;
        g2[3][3] = -1.0;
        g2[0][1] = 0.5; // asymmetric
        assert!(Metric::new(g2).is_err());
    }

    #[test]
    fn metric_roundtrips_through_json() {
        let m = Metric::minkowski();
        let s = serde_json::to_string(&m).unwrap();
        let back: Metric = serde_json::from_str(&s).unwrap();
        assert_eq!(back.g(), m.g());
        assert_eq!(back.det(), m.det());
    }
}
