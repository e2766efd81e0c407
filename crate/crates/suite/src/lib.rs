//! Reference values for the acceptance suite, computed without `rstc-core`.

/// Binary entropy in bits.
pub fn h2(p: f64) -> f64 {
    let t = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.log2() };
    t(p) + t(1.0 - p)
}

/// `1 - H2(eps)` for `eps = 0.05, 0.10, ..., 0.45`, evaluated at 30 digits and rounded.
pub const BSC_CAPACITY: [(f64, f64); 9] = [
    (0.05, 0.713603),
    (0.10, 0.531004),
    (0.15, 0.390160),
    (0.20, 0.278072),
    (0.25, 0.188722),
    (0.30, 0.118709),
    (0.35, 0.065932),
    (0.40, 0.029049),
    (0.45, 0.007226),
];

/// Mutual information of a 2x2 joint with mutual-cooperation mass `a`, by definition.
pub fn mutual_information_2x2(mu: f64, nu: f64, a: f64) -> f64 {
    let cells = [[a, mu - a], [nu - a, 1.0 - mu - nu + a]];
    let px = [mu, 1.0 - mu];
    let py = [nu, 1.0 - nu];
    let mut total = 0.0;
    for (x, row) in cells.iter().enumerate() {
        for (y, &p) in row.iter().enumerate() {
            if p > 0.0 {
                total += p * (p / (px[x] * py[y])).log2();
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracles_agree_with_each_other() {
        for (eps, c) in BSC_CAPACITY {
            assert!((1.0 - h2(eps) - c).abs() < 5e-7);
        }
        // A BSC(0.1) driven by a uniform input is the joint (0.45, 0.05, 0.05, 0.45).
        assert!((mutual_information_2x2(0.5, 0.5, 0.45) - 0.531004).abs() < 1e-6);
        assert!(mutual_information_2x2(0.3, 0.6, 0.18).abs() < 1e-15);
    }
}
