/// Recover `|U_ts| = sin θ` from `p = sin²((2n+1)θ)` on the branch
/// `θ ∈ [0, π / (2(2n+1))]`.
///
/// Returns the amplitude and whether `p` had to be clamped into `[0, 1]`.
pub fn invert_amplification(amplified_probability: f64, iterations: u64) -> (f64, bool) {
    let p = amplified_probability;
    let clamped = !(0.0..=1.0).contains(&p) || p.is_nan();
    let p = if p.is_nan() { 0.0 } else { p.clamp(0.0, 1.0) };
    let theta = p.sqrt().asin() / (2 * iterations + 1) as f64;
    (theta.sin(), clamped)
}
