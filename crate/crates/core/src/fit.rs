//! Least-squares slope fitting for convergence studies.

/// Ordinary least-squares fit `y = a + b x`; returns `(a, b, se_b)` where
/// `se_b` is the standard error of the slope (zero when only two points).
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    assert!(x.len() >= 2, "need at least two points");
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|xi| (xi - mx) * (xi - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(xi, yi)| (xi - mx) * (yi - my)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let se_b = if x.len() > 2 {
        let ss_res: f64 = x
            .iter()
            .zip(y)
            .map(|(xi, yi)| {
                let r = yi - (a + b * xi);
                r * r
            })
            .sum();
        (ss_res / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    (a, b, se_b)
}

/// Slope of `log(err)` against `log(scale)`; points with zero error are dropped.
pub fn log_log_slope(scale: &[f64], err: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = scale
        .iter()
        .zip(err)
        .filter(|(_, &e)| e > 0.0)
        .map(|(&s, &e)| (s.ln(), e.ln()))
        .collect();
    assert!(pts.len() >= 2, "need at least two nonzero errors");
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    linear_fit(&xs, &ys).1
}

/// Slope with its standard error.
pub fn log_log_slope_with_se(scale: &[f64], err: &[f64]) -> (f64, f64) {
    let pts: Vec<(f64, f64)> = scale
        .iter()
        .zip(err)
        .filter(|(_, &e)| e > 0.0)
        .map(|(&s, &e)| (s.ln(), e.ln()))
        .collect();
    assert!(pts.len() >= 2, "need at least two nonzero errors");
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let (_, b, se) = linear_fit(&xs, &ys);
    (b, se)
}
