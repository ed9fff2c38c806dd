//! Small shared numeric helpers.

/// `x` shifted by `d` along coordinate `mu`.
pub fn shifted(x: &[f64; 4], mu: usize, d: f64) -> [f64; 4] {
    let mut y = *x;
    y[mu] += d;
    y
}

/// Second-order central difference of a scalar function.
pub fn central_scalar<F: Fn(&[f64; 4]) -> f64>(f: F, x: &[f64; 4], mu: usize, h: f64) -> f64 {
    (f(&shifted(x, mu, h)) - f(&shifted(x, mu, -h))) / (2.0 * h)
}

/// Outer step used when differentiating a quantity that is itself produced
/// by finite differences: `h^(2/3)` balances the two truncation scales.
pub fn nested_step(h: f64) -> f64 {
    h.powf(2.0 / 3.0)
}

pub fn array4<T, F: Fn(usize) -> T>(f: F) -> [T; 4] {
    [f(0), f(1), f(2), f(3)]
}
