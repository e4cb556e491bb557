//! Composite trapezoid rule on uniform grids.

/// Trapezoid rule for samples `values` spaced `dx` apart.
pub fn trapezoid(values: &[f64], dx: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => {
            let interior: f64 = values[1..n - 1].iter().sum();
            dx * (interior + 0.5 * (values[0] + values[n - 1]))
        }
    }
}

/// Trapezoid rule applied to the pointwise product of two sampled functions.
pub fn trapezoid_product(a: &[f64], b: &[f64], dx: f64) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let prod: Vec<f64> = a.iter().zip(b).map(|(x, y)| x * y).collect();
    trapezoid(&prod, dx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_linear() {
        let dx = 0.25;
        let v: Vec<f64> = (0..9).map(|i| 2.0 * i as f64 * dx + 1.0).collect();
        // ∫_0^2 (2x+1) dx = 6
        assert!((trapezoid(&v, dx) - 6.0).abs() < 1e-14);
    }

    #[test]
    fn degenerate_lengths() {
        assert_eq!(trapezoid(&[], 0.1), 0.0);
        assert_eq!(trapezoid(&[3.0], 0.1), 0.0);
    }
}
