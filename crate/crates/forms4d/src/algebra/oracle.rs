//! An independently built Clifford product used to cross-check the
//! grade-table implementation.
//!
//! The only inputs are the relation `dx^m dx^n = dx^m ^ dx^n + g^{mn}`,
//! associativity, and bilinearity. The right factor is expanded blade by
//! blade and absorbed one covector at a time:
//!
//! ```text
//! dx^{n1} ^ R = dx^{n1} . R - contract(n1, R)
//! U . (dx^{n1} ^ R) = (U . dx^{n1}) . R - U . contract(n1, R)
//! ```
//!
//! where `contract` is the metric contraction on the leading slot and
//! `U . dx^n` is a wedge plus a trailing-slot contraction. No Hodge star,
//! no grade table, no `Com` kernel appears anywhere in this path.

use super::blade::{mask_indices, tuple_to_blade, BLADE_COUNT, BLADE_MASKS};
use super::metric::Metric;
use super::multivector::Multivector;

/// Right multiplication of a multivector by a single covector:
/// `U dx^n = U ^ dx^n + U |_ dx^n`, where the trailing contraction on a
/// blade `dx^{a1}^...^dx^{ak}` is
/// `sum_j (-1)^{k-j} g^{a_j n} dx^{a1}^...(drop j)...^dx^{ak}`.
fn right_mul_covector(u: &Multivector, nu: usize, m: &Metric) -> Multivector {
    let mut out = u.wedge(&Multivector::covector(nu));
    let gi = m.ginv();
    for b in 0..BLADE_COUNT {
        let c = u[b];
        if c == 0.0 {
            continue;
        }
        let idx: Vec<usize> = mask_indices(BLADE_MASKS[b]).collect();
        let k = idx.len();
        for j in 0..k {
            let gval = gi[idx[j]][nu];
            if gval == 0.0 {
                continue;
            }
            let sign = if (k - 1 - j) % 2 == 0 { 1.0 } else { -1.0 };
            let mut rest = idx.clone();
            rest.remove(j);
            let (target, _) = tuple_to_blade(&rest).expect("distinct indices");
            out[target] += c * gval * sign;
        }
    }
    out
}

/// Leading-slot contraction of a blade given by ascending `idx`:
/// `contract(n, dx^{a1}^...^dx^{ak}) =
///  sum_j (-1)^{j-1} g^{n a_j} dx^{a1}^...(drop j)...^dx^{ak}`,
/// returned as (coefficient, remaining indices) terms.
fn leading_contraction(nu: usize, idx: &[usize], m: &Metric) -> Vec<(f64, Vec<usize>)> {
    let gi = m.ginv();
    let mut terms = Vec::new();
    for j in 0..idx.len() {
        let gval = gi[nu][idx[j]];
        if gval == 0.0 {
            continue;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let mut rest = idx.to_vec();
        rest.remove(j);
        terms.push((sign * gval, rest));
    }
    terms
}

/// `U . blade(idx)` by recursion on the blade length.
fn mul_blade(u: &Multivector, idx: &[usize], m: &Metric) -> Multivector {
    if idx.is_empty() {
        return *u;
    }
    let head = idx[0];
    let rest = &idx[1..];
    let mut out = mul_blade(&right_mul_covector(u, head, m), rest, m);
    for (c, sub) in leading_contraction(head, rest, m) {
        out -= mul_blade(u, &sub, m) * c;
    }
    out
}

/// Clifford product computed by repeated single-covector absorption.
/// Structurally independent of the grade-table implementation.
pub fn clifford_mul_oracle(u: &Multivector, v: &Multivector, m: &Metric) -> Multivector {
    let mut out = Multivector::ZERO;
    for b in 0..BLADE_COUNT {
        let c = v[b];
        if c == 0.0 {
            continue;
        }
        let idx: Vec<usize> = mask_indices(BLADE_MASKS[b]).collect();
        out += mul_blade(u, &idx, m) * c;
    }
    out
}
