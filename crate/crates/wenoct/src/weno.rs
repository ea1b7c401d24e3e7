//! Scalar 5th-order WENO reconstruction.
//!
//! `weno5` approximates a function value at the right edge x_{i+1/2} of the
//! center cell from five consecutive cell averages (h_{i-2} .. h_{i+2}), as a
//! convex combination of three 3rd-order sub-stencil candidates weighted by
//! Jiang-Shu smoothness indicators. The same operator serves both the
//! flux-split conservation-law solver and the Hamilton-Jacobi derivative
//! solver; "minus"-biased reconstructions are obtained by reversing the
//! argument order at the call site.

/// Five consecutive stencil values in upwind order.
pub type Stencil5 = [f64; 5];

#[derive(Clone, Copy, Debug)]
pub struct WenoParams {
    /// Absolute regularization in the nonlinear weights.
    pub epsilon: f64,
}

impl Default for WenoParams {
    fn default() -> Self {
        WenoParams { epsilon: 1e-6 }
    }
}

/// Jiang-Shu smoothness indicators of the three sub-stencils.
#[inline]
pub fn smoothness_betas(s: &Stencil5) -> [f64; 3] {
    let [v0, v1, v2, v3, v4] = *s;
    let b0 = 13.0 / 12.0 * (v0 - 2.0 * v1 + v2).powi(2) + 0.25 * (v0 - 4.0 * v1 + 3.0 * v2).powi(2);
    let b1 = 13.0 / 12.0 * (v1 - 2.0 * v2 + v3).powi(2) + 0.25 * (v1 - v3).powi(2);
    let b2 = 13.0 / 12.0 * (v2 - 2.0 * v3 + v4).powi(2) + 0.25 * (3.0 * v2 - 4.0 * v3 + v4).powi(2);
    [b0, b1, b2]
}

/// Normalized nonlinear weights; linear coefficients (1, 6, 3).
#[inline]
pub fn weno5_weights(s: &Stencil5, p: &WenoParams) -> [f64; 3] {
    let [b0, b1, b2] = smoothness_betas(s);
    let w0 = 1.0 / (p.epsilon + b0).powi(2);
    let w1 = 6.0 / (p.epsilon + b1).powi(2);
    let w2 = 3.0 / (p.epsilon + b2).powi(2);
    let sum = w0 + w1 + w2;
    [w0 / sum, w1 / sum, w2 / sum]
}

/// 5th-order WENO reconstruction at the right cell edge.
#[inline]
pub fn weno5(s: &Stencil5, p: &WenoParams) -> f64 {
    let [v0, v1, v2, v3, v4] = *s;
    let h0 = (2.0 * v0 - 7.0 * v1 + 11.0 * v2) / 6.0;
    let h1 = (-v1 + 5.0 * v2 + 2.0 * v3) / 6.0;
    let h2 = (2.0 * v2 + 5.0 * v3 - v4) / 6.0;
    let [w0, w1, w2] = weno5_weights(s, p);
    w0 * h0 + w1 * h1 + w2 * h2
}
