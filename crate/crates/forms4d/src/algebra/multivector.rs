//! Nonhomogeneous differential forms at a point: 16 real coefficients over
//! the canonical blade basis.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use super::blade::{
    blade_label, blades_of_grade, wedge_blades, BLADE_COUNT, BLADE_GRADES,
};

/// An element of the 16-dimensional space of nonhomogeneous forms at a point.
///
/// The coefficient of the blade `dx^{m1}^...^dx^{mk}` with strictly
/// increasing indices is stored directly; no redundant index orderings are
/// kept. Serializes as a flat JSON array of 16 numbers in canonical order.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multivector(pub [f64; BLADE_COUNT]);

impl Multivector {
    pub const ZERO: Multivector = Multivector([0.0; BLADE_COUNT]);

    pub fn scalar(v: f64) -> Self {
        let mut m = Self::ZERO;
        m.0[0] = v;
        m
    }

    pub fn one() -> Self {
        Self::scalar(1.0)
    }

    /// Unit basis blade by canonical index.
    pub fn basis(i: usize) -> Self {
        let mut m = Self::ZERO;
        m.0[i] = 1.0;
        m
    }

    /// The covector `dx^mu`.
    pub fn covector(mu: usize) -> Self {
        assert!(mu < 4, "covector index out of range");
        Self::basis(1 + mu)
    }

    /// `dx^i ^ dx^j`, `i != j` (sign handled).
    pub fn bivector(i: usize, j: usize) -> Self {
        assert!(i != j && i < 4 && j < 4);
        if i < j {
            Self::basis(super::blade::bivector_index(i, j))
        } else {
            -Self::basis(super::blade::bivector_index(j, i))
        }
    }

    /// `dx0^dx1^dx2^dx3`.
    pub fn volume() -> Self {
        Self::basis(BLADE_COUNT - 1)
    }

    pub fn coeffs(&self) -> &[f64; BLADE_COUNT] {
        &self.0
    }

    /// Projection onto grade `k`; all other coefficients are exactly zero.
    pub fn grade(&self, k: usize) -> Multivector {
        assert!(k <= 4, "grade out of range");
        let mut out = Self::ZERO;
        for i in blades_of_grade(k) {
            out.0[i] = self.0[i];
        }
        out
    }

    /// The grade-0 coefficient.
    pub fn trace(&self) -> f64 {
        self.0[0]
    }

    /// Grade involution `U* = (-1)^{k(k-1)/2} U` per grade.
    pub fn reversion(&self) -> Multivector {
        let mut out = *self;
        for i in 0..BLADE_COUNT {
            let k = BLADE_GRADES[i];
            if (k * k.saturating_sub(1) / 2) % 2 == 1 {
                out.0[i] = -out.0[i];
            }
        }
        out
    }

    /// Exterior product; metric independent.
    pub fn wedge(&self, rhs: &Multivector) -> Multivector {
        let mut out = Self::ZERO;
        for a in 0..BLADE_COUNT {
            let ca = self.0[a];
            if ca == 0.0 {
                continue;
            }
            for b in 0..BLADE_COUNT {
                let cb = rhs.0[b];
                if cb == 0.0 {
                    continue;
                }
                if let Some((t, s)) = wedge_blades(a, b) {
                    out.0[t] += s * ca * cb;
                }
            }
        }
        out
    }

    pub fn inf_norm(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn max_abs_diff(&self, rhs: &Multivector) -> f64 {
        (*self - *rhs).inf_norm()
    }

    /// Largest coefficient magnitude outside grade `k`.
    pub fn off_grade_norm(&self, k: usize) -> f64 {
        (0..BLADE_COUNT)
            .filter(|&i| BLADE_GRADES[i] != k)
            .fold(0.0, |m, i| m.max(self.0[i].abs()))
    }

    /// Largest odd-grade coefficient magnitude.
    pub fn odd_norm(&self) -> f64 {
        (0..BLADE_COUNT)
            .filter(|&i| BLADE_GRADES[i] % 2 == 1)
            .fold(0.0_f64, |m, i| m.max(self.0[i].abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    /// Grades with a nonzero coefficient.
    pub fn grades_present(&self) -> Vec<usize> {
        (0..=4)
            .filter(|&k| blades_of_grade(k).any(|i| self.0[i] != 0.0))
            .collect()
    }
}

impl Index<usize> for Multivector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Multivector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(mut self, rhs: Multivector) -> Multivector {
        for i in 0..BLADE_COUNT {
            self.0[i] += rhs.0[i];
        }
        self
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Multivector) {
        for i in 0..BLADE_COUNT {
            self.0[i] += rhs.0[i];
        }
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(mut self, rhs: Multivector) -> Multivector {
        for i in 0..BLADE_COUNT {
            self.0[i] -= rhs.0[i];
        }
        self
    }
}

impl SubAssign for Multivector {
    fn sub_assign(&mut self, rhs: Multivector) {
        for i in 0..BLADE_COUNT {
            self.0[i] -= rhs.0[i];
        }
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(mut self) -> Multivector {
        for c in &mut self.0 {
            *c = -*c;
        }
        self
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(mut self, s: f64) -> Multivector {
        for c in &mut self.0 {
            *c *= s;
        }
        self
    }
}

fn fmt_blades(m: &Multivector, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for i in 0..BLADE_COUNT {
        if m.0[i] != 0.0 {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", m.0[i], blade_label(i))?;
            first = false;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_blades(self, f)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_blades(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grade_projection_decomposes() {
        let mut u = Multivector::ZERO;
        for i in 0..16 {
            u[i] = (i as f64) - 7.5;
        }
        let mut sum = Multivector::ZERO;
        for k in 0..=4 {
            let p = u.grade(k);
            assert_eq!(p.off_grade_norm(k), 0.0);
            assert_eq!(p.grade(k), p, "idempotent");
            sum += p;
        }
        assert_eq!(sum, u);
        assert_eq!((Multivector::one() + Multivector::covector(0)).grade(0), Multivector::one());
    }

    #[test]
    fn wedge_basis_and_antisymmetry() {
        let dx0 = Multivector::covector(0);
        let dx1 = Multivector::covector(1);
        assert_eq!(dx0.wedge(&dx1), Multivector::basis(5));
        assert!(dx0.wedge(&dx0).is_zero());
        // (dx0^dx1)^(dx2^dx3) = +volume; parity oracle in blade tests.
        let a = Multivector::basis(5);
        let b = Multivector::basis(10);
        assert_eq!(a.wedge(&b), Multivector::volume());
    }

    #[test]
    fn wedge_graded_anticommutativity() {
        // U^V = (-1)^{rs} V^U on homogeneous inputs.
        for a in 0..16 {
            for b in 0..16 {
                let (u, v) = (Multivector::basis(a), Multivector::basis(b));
                let r = BLADE_GRADES[a];
                let s = BLADE_GRADES[b];
                let sign = if (r * s) % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(u.wedge(&v), v.wedge(&u) * sign);
            }
        }
    }

    #[test]
    fn reversion_signs_per_grade() {
        for i in 0..16 {
            let u = Multivector::basis(i);
            let expected = match BLADE_GRADES[i] {
                0 | 1 | 4 => 1.0,
                2 | 3 => -1.0,
                _ => unreachable!(),
            };
            assert_eq!(u.reversion(), u * expected);
            assert_eq!(u.reversion().reversion(), u);
        }
    }

    #[test]
    fn serializes_as_plain_array() {
        let u = Multivector::covector(2);
        let s = serde_json::to_string(&u).unwrap();
        assert_eq!(
            s,
            "[0.0,0.0,0.0,1.0,0.0,0.0,0.0,0.0,0.0,0.0,0.0,0.0,0.0,0.0,0.0,0.0]"
        );
        let back: Multivector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, u);
    }
}
