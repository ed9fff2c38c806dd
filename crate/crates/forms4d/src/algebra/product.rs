//! The metric-dependent operations of the pointwise algebra: Hodge star,
//! the grade-2 commutator kernel `Com`, the Clifford product assembled from
//! the grade-pair table, conjugation, bivector exponentials, inversion, and
//! the spin-group membership test.

use nalgebra::{SMatrix, SVector};

use super::blade::{blades_of_grade, mask_indices, BLADE_COUNT, BLADE_GRADES, BLADE_MASKS};
use super::metric::Metric;
use super::multivector::Multivector;
use crate::error::{Error, Result};

/// Reciprocal-condition cutoff for the 16x16 inversion solve.
pub const INVERSE_RCOND_MIN: f64 = 1e-10;

/// Residual accepted by [`exp_bivector`] when checking `I*I = -1`.
pub const UNIT_BIVECTOR_TOL: f64 = 1e-9;

impl Multivector {
    /// Hodge star, grade `k` to grade `4-k`, with `eps_{0123} = +1` and
    /// indices raised by the inverse metric.
    pub fn star(&self, m: &Metric) -> Multivector {
        let mut out = Multivector::ZERO;
        for i in 0..BLADE_COUNT {
            let c = self[i];
            if c != 0.0 {
                out += *m.star_basis(i) * c;
            }
        }
        out
    }
}

/// Full antisymmetric grade-2 components `a[m][n]` of a multivector
/// (only the grade-2 part is read).
fn grade2_components(u: &Multivector) -> [[f64; 4]; 4] {
    let mut a = [[0.0; 4]; 4];
    for b in blades_of_grade(2) {
        let c = u[b];
        if c == 0.0 {
            continue;
        }
        let mut it = mask_indices(BLADE_MASKS[b]);
        let (i, j) = (it.next().unwrap(), it.next().unwrap());
        a[i][j] = c;
        a[j][i] = -c;
    }
    a
}

fn add_wedge_pair(out: &mut Multivector, c: f64, i: usize, j: usize) {
    if i == j || c == 0.0 {
        return;
    }
    if i < j {
        out[super::blade::bivector_index(i, j)] += c;
    } else {
        out[super::blade::bivector_index(j, i)] -= c;
    }
}

/// The four-term contraction kernel on a pair of 2-forms, expanded over the
/// full antisymmetric components:
///
/// ```text
/// Com(U,V) = 1/2 a_{m1 m2} b_{n1 n2} ( -g^{m1 n1} dx^{m2}^dx^{n2}
///                                      -g^{m2 n2} dx^{m1}^dx^{n1}
///                                      +g^{m1 n2} dx^{m2}^dx^{n1}
///                                      +g^{m2 n1} dx^{m1}^dx^{n2} )
/// ```
///
/// Bilinear and antisymmetric; equals `UV - VU` on 2-forms.
pub fn com(u: &Multivector, v: &Multivector, m: &Metric) -> Result<Multivector> {
    if u.off_grade_norm(2) != 0.0 || v.off_grade_norm(2) != 0.0 {
        return Err(Error::GradeMismatch { op: "com", expected: 2 });
    }
    Ok(com_unchecked(u, v, m))
}

pub(crate) fn com_unchecked(u: &Multivector, v: &Multivector, m: &Metric) -> Multivector {
    let a = grade2_components(u);
    let b = grade2_components(v);
    let gi = m.ginv();
    let mut out = Multivector::ZERO;
    for m1 in 0..4 {
        for m2 in 0..4 {
            let am = a[m1][m2];
            if am == 0.0 {
                continue;
            }
            for n1 in 0..4 {
                for n2 in 0..4 {
                    let w = 0.5 * am * b[n1][n2];
                    if w == 0.0 {
                        continue;
                    }
                    add_wedge_pair(&mut out, -w * gi[m1][n1], m2, n2);
                    add_wedge_pair(&mut out, -w * gi[m2][n2], m1, n1);
                    add_wedge_pair(&mut out, w * gi[m1][n2], m2, n1);
                    add_wedge_pair(&mut out, w * gi[m2][n1], m1, n2);
                }
            }
        }
    }
    out
}

/// Clifford product of nonhomogeneous forms, assembled as the bilinear
/// extension of the grade-pair kernels. Grade-0 factors act by scalar
/// multiplication; the mixed kernels combine the exterior product and the
/// Hodge star. Satisfies `dx^m dx^n + dx^n dx^m = 2 g^{mn}` and is
/// associative (both properties are enforced by tests against an
/// independently built product).
pub fn clifford_mul(u: &Multivector, v: &Multivector, m: &Metric) -> Multivector {
    let mut out = Multivector::ZERO;
    for r in 0..=4 {
        let ur = u.grade(r);
        if ur.is_zero() {
            continue;
        }
        for s in 0..=4 {
            let vs = v.grade(s);
            if vs.is_zero() {
                continue;
            }
            out += grade_pair_product(&ur, r, &vs, s, m);
        }
    }
    out
}

fn grade_pair_product(u: &Multivector, r: usize, v: &Multivector, s: usize, m: &Metric) -> Multivector {
    match (r, s) {
        // Grade-0 factors multiply as scalars from either side.
        (0, _) => *v * u.trace(),
        (_, 0) => *u * v.trace(),
        // A covector on the left: wedge minus the dual contraction. The
        // k = 1 instance covers the covector-covector pair.
        (1, _) => u.wedge(v) - u.wedge(&v.star(m)).star(m),
        // A covector on the right: wedge plus the dual contraction taken on
        // the left factor. (Taking the star on the right factor would leave
        // a 5-form wedge for k >= 2, which vanishes identically, so the
        // contraction must come from the dual of the left factor.)
        (_, 1) => u.wedge(v) + u.star(m).wedge(v).star(m),
        (2, 2) => {
            u.wedge(v) + u.wedge(&v.star(m)).star(m) + com_unchecked(u, v, m) * 0.5
        }
        (2, 3) => u.star(m).wedge(&v.star(m)) - u.wedge(&v.star(m)).star(m),
        (2, 4) => u.star(m).wedge(&v.star(m)),
        (3, 2) => -(u.star(m).wedge(&v.star(m))) - u.star(m).wedge(v).star(m),
        (3, 3) => u.star(m).wedge(&v.star(m)) + u.wedge(&v.star(m)).star(m),
        (3, 4) => u.star(m).wedge(&v.star(m)),
        (4, 2) => u.star(m).wedge(&v.star(m)),
        (4, 3) => -(u.star(m).wedge(&v.star(m))),
        (4, 4) => -(u.star(m).wedge(&v.star(m))),
        _ => unreachable!("grades are 0..=4"),
    }
}

/// `[U, V] = UV - VU`.
pub fn commutator(u: &Multivector, v: &Multivector, m: &Metric) -> Multivector {
    clifford_mul(u, v, m) - clifford_mul(v, u, m)
}

/// Conjugation by the structural 1-form: `HU*`. `h` must be pure grade 1.
pub fn conjugate(u: &Multivector, h: &Multivector, m: &Metric) -> Result<Multivector> {
    if h.off_grade_norm(1) != 0.0 {
        return Err(Error::GradeMismatch { op: "conjugate", expected: 1 });
    }
    Ok(clifford_mul(h, &u.reversion(), m))
}

/// `exp(lambda I) = cos(lambda) + I sin(lambda)` for a grade-2 `I` with
/// `I*I = -1`. The square condition is what collapses the exponential
/// series to this closed form, so it is checked.
pub fn exp_bivector(lambda: f64, i: &Multivector, m: &Metric) -> Result<Multivector> {
    if i.off_grade_norm(2) != 0.0 {
        return Err(Error::GradeMismatch { op: "exp_bivector", expected: 2 });
    }
    let sq = clifford_mul(i, i, m);
    let residual = (sq + Multivector::one()).inf_norm();
    if residual > UNIT_BIVECTOR_TOL * (1.0 + i.inf_norm() * i.inf_norm()) {
        return Err(Error::NotUnitBivector { residual });
    }
    Ok(Multivector::scalar(lambda.cos()) + *i * lambda.sin())
}

/// Inverse with respect to the Clifford product, computed by solving the
/// 16x16 linear system for `U X = 1` on the coefficient space. Errors when
/// the reciprocal condition number falls below [`INVERSE_RCOND_MIN`].
pub fn inverse(u: &Multivector, m: &Metric) -> Result<Multivector> {
    let mut mat = SMatrix::<f64, 16, 16>::zeros();
    for j in 0..BLADE_COUNT {
        let col = clifford_mul(u, &Multivector::basis(j), m);
        for i in 0..BLADE_COUNT {
            mat[(i, j)] = col[i];
        }
    }
    let svd = mat.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let rcond = if smax > 0.0 { smin / smax } else { 0.0 };
    if !(rcond >= INVERSE_RCOND_MIN) {
        return Err(Error::SingularMultivector { rcond });
    }
    let mut rhs = SVector::<f64, 16>::zeros();
    rhs[0] = 1.0;
    let sol = svd
        .solve(&rhs, 0.0)
        .map_err(|_| Error::SingularMultivector { rcond })?;
    let mut out = Multivector::ZERO;
    for i in 0..BLADE_COUNT {
        out[i] = sol[i];
    }
    Ok(out)
}

/// Spin-group membership: even grade and `S* S = 1` within `tol`.
pub fn is_spin(s: &Multivector, m: &Metric, tol: f64) -> bool {
    if s.odd_norm() > tol {
        return false;
    }
    let prod = clifford_mul(&s.reversion(), s, m);
    (prod - Multivector::one()).inf_norm() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mink() -> Metric {
        Metric::minkowski()
    }

    #[test]
    fn covector_squares_to_metric() {
        let m = mink();
        let dx0 = Multivector::covector(0);
        assert_eq!(clifford_mul(&dx0, &dx0, &m), Multivector::one());
        // dx^m dx^n = dx^m ^ dx^n + g^{mn} on every covector pair
        for mu in 0..4 {
            for nu in 0..4 {
                let a = Multivector::covector(mu);
                let b = Multivector::covector(nu);
                let prod = clifford_mul(&a, &b, &m);
                let expect = a.wedge(&b) + Multivector::scalar(m.ginv()[mu][nu]);
                assert!(prod.max_abs_diff(&expect) < 1e-15, "{mu} {nu}");
            }
        }
    }

    #[test]
    fn unit_acts_as_identity() {
        let m = mink();
        let one = Multivector::one();
        for i in 0..16 {
            let b = Multivector::basis(i);
            assert_eq!(clifford_mul(&one, &b, &m), b);
            assert_eq!(clifford_mul(&b, &one, &m), b);
        }
    }

    #[test]
    fn spatial_bivector_squares_to_minus_one() {
        // (dx1^dx2)(dx1^dx2) = -g^{11} g^{22} = -1: single-covector
        // absorption done by hand.
        let m = mink();
        let i12 = Multivector::bivector(1, 2);
        assert!(
            clifford_mul(&i12, &i12, &m).max_abs_diff(&Multivector::scalar(-1.0)) < 1e-15
        );
    }

    #[test]
    fn com_matches_product_commutator() {
        let m = mink();
        // Hand/oracle expansion of the four-term kernel on
        // (dx0^dx1, dx1^dx2): every nonzero term lands on dx0^dx2 with
        // weight g^{11}/2, four times, giving 2 g^{11} dx0^dx2.
        let u = Multivector::bivector(0, 1);
        let v = Multivector::bivector(1, 2);
        let c = com(&u, &v, &m).unwrap();
        let expect = Multivector::bivector(0, 2) * (2.0 * m.ginv()[1][1]);
        assert!(c.max_abs_diff(&expect) < 1e-15, "got {c}");
        let uv_vu = clifford_mul(&u, &v, &m) - clifford_mul(&v, &u, &m);
        assert!(c.max_abs_diff(&uv_vu) < 1e-15);
        assert!(com(&u, &u, &m).unwrap().is_zero());
        // antisymmetry
        let cvu = com(&v, &u, &m).unwrap();
        assert!((c + cvu).inf_norm() < 1e-15);
        // non-2-form inputs are rejected
        assert!(com(&Multivector::covector(0), &v, &m).is_err());
    }

    #[test]
    fn trace_examples() {
        let m = mink();
        assert_eq!(Multivector::one().trace(), 1.0);
        assert_eq!(Multivector::bivector(0, 1).trace(), 0.0);
        let u = Multivector::covector(0) + Multivector::bivector(1, 2) * 0.5;
        let v = Multivector::one() + Multivector::covector(3) * 2.0;
        let c = commutator(&u, &v, &m);
        assert!(c.trace().abs() < 1e-15);
    }

    #[test]
    fn conjugate_examples() {
        let m = mink();
        let h = Multivector::covector(0);
        assert_eq!(conjugate(&Multivector::one(), &h, &m).unwrap(), h);
        assert_eq!(conjugate(&h, &h, &m).unwrap(), Multivector::one());
        assert!(conjugate(&h, &Multivector::one(), &m).is_err());
    }

    #[test]
    fn double_conjugation_is_sandwich_by_h() {
        // conj(conj(U)) = H U H when H*H = 1; equality with U itself holds
        // exactly on the commutant of H (checked with a spatial rotation).
        let m = mink();
        let h = Multivector::covector(0);
        let u = Multivector::bivector(0, 1) + Multivector::scalar(0.25);
        let twice = conjugate(&conjugate(&u, &h, &m).unwrap(), &h, &m).unwrap();
        let sandwich = clifford_mul(&h, &clifford_mul(&u, &h, &m), &m);
        assert!(twice.max_abs_diff(&sandwich) < 1e-14);
        let rot = exp_bivector(0.7, &Multivector::bivector(1, 2), &m).unwrap();
        let twice_rot = conjugate(&conjugate(&rot, &h, &m).unwrap(), &h, &m).unwrap();
        assert!(twice_rot.max_abs_diff(&rot) < 1e-14);
    }

    #[test]
    fn exp_bivector_examples() {
        let m = mink();
        let i = Multivector::bivector(1, 2);
        assert_eq!(exp_bivector(0.0, &i, &m).unwrap(), Multivector::one());
        let quarter = exp_bivector(std::f64::consts::FRAC_PI_2, &i, &m).unwrap();
        assert!(quarter.max_abs_diff(&i) < 1e-15);
        // dx0^dx1 squares to +1, not -1: rejected
        assert!(exp_bivector(1.0, &Multivector::bivector(0, 1), &m).is_err());
        let s = exp_bivector(0.37, &i, &m).unwrap();
        let sinv = exp_bivector(-0.37, &i, &m).unwrap();
        assert!(clifford_mul(&s, &sinv, &m).max_abs_diff(&Multivector::one()) < 1e-15);
        assert!(is_spin(&s, &m, 1e-12));
    }

    #[test]
    fn inverse_examples() {
        let m = mink();
        assert_eq!(inverse(&Multivector::one(), &m).unwrap(), Multivector::one());
        let dx0 = Multivector::covector(0);
        assert!(inverse(&dx0, &m).unwrap().max_abs_diff(&dx0) < 1e-14);
        let s = exp_bivector(0.8, &Multivector::bivector(1, 2), &m).unwrap();
        let si = inverse(&s, &m).unwrap();
        let expect = exp_bivector(-0.8, &Multivector::bivector(1, 2), &m).unwrap();
        assert!(si.max_abs_diff(&expect) < 1e-13);
        // (1 + dx0)(1 - dx0) = 1 - g^{00} = 0: a genuine zero divisor
        let z = Multivector::one() + dx0;
        match inverse(&z, &m) {
            Err(Error::SingularMultivector { .. }) => {}
            other => panic!("expected singularity, got {other:?}"),
        }
    }

    #[test]
    fn spin_membership() {
        let m = mink();
        assert!(is_spin(&Multivector::one(), &m, 1e-12));
        assert!(!is_spin(&Multivector::covector(0), &m, 1e-12));
        // Boost-like element: cosh + dx0^dx1 sinh is even with S*S = 1.
        let k = Multivector::bivector(0, 1);
        let s = Multivector::scalar(0.9_f64.cosh()) + k * 0.9_f64.sinh();
        assert!(is_spin(&s, &m, 1e-12));
    }
}
