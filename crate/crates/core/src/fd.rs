//! Central finite-difference stencils.

use crate::error::Result;

/// Step sizes for the three derivative orders. Steps are relative: callers
/// scale them by |φ|/|direction| so a step moves φ by a fixed fraction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdConfig {
    pub first: f64,
    pub second: f64,
    pub third: f64,
    /// Richardson-extrapolate the third-order stencil (h and h/2).
    pub richardson: bool,
}

impl Default for FdConfig {
    fn default() -> Self {
        FdConfig {
            first: 1e-4,
            second: 1e-3,
            third: 1e-2,
            richardson: true,
        }
    }
}

/// Below this relative step, cancellation dominates truncation for f64.
pub const STEP_FLOOR: f64 = 1e-7;

pub fn first(f: impl Fn(f64) -> Result<f64>, h: f64) -> Result<f64> {
    Ok((f(h)? - f(-h)?) / (2.0 * h))
}

pub fn second(f: impl Fn(f64) -> Result<f64>, h: f64) -> Result<f64> {
    Ok((f(h)? - 2.0 * f(0.0)? + f(-h)?) / (h * h))
}

pub fn second_mixed(f: impl Fn(f64, f64) -> Result<f64>, h1: f64, h2: f64) -> Result<f64> {
    Ok((f(h1, h2)? - f(h1, -h2)? - f(-h1, h2)? + f(-h1, -h2)?) / (4.0 * h1 * h2))
}

/// ∂³f/∂s∂t∂u at 0 from the eight (±h, ±h, ±h) corners; O(h²) error.
fn third_once(f: &impl Fn(f64, f64, f64) -> Result<f64>, h: [f64; 3]) -> Result<f64> {
    let mut acc = 0.0;
    for corner in 0..8u8 {
        let s = |bit: u8| if corner & (1 << bit) != 0 { -1.0 } else { 1.0 };
        let sign = s(0) * s(1) * s(2);
        acc += sign * f(s(0) * h[0], s(1) * h[1], s(2) * h[2])?;
    }
    Ok(acc / (8.0 * h[0] * h[1] * h[2]))
}

pub fn third_mixed(
    f: impl Fn(f64, f64, f64) -> Result<f64>,
    h: [f64; 3],
    richardson: bool,
) -> Result<f64> {
    let coarse = third_once(&f, h)?;
    if !richardson {
        return Ok(coarse);
    }
    let fine = third_once(&f, h.map(|x| x / 2.0))?;
    Ok((4.0 * fine - coarse) / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencils_on_polynomials() {
        let d1 = first(|x| Ok(x.powi(3) + 2.0 * x), 1e-3).unwrap();
        assert!((d1 - 2.0).abs() < 1e-5);
        let d2 = second(|x| Ok(x.exp()), 1e-3).unwrap();
        assert!((d2 - 1.0).abs() < 1e-6);
        let m = second_mixed(|s, t| Ok((s + 2.0 * t).powi(2)), 1e-2, 1e-2).unwrap();
        assert!((m - 4.0).abs() < 1e-9);
        let t = third_mixed(|a, b, c| Ok((a + b + c).exp()), [1e-2; 3], true).unwrap();
        assert!((t - 1.0).abs() < 1e-7, "{t}");
    }
}
