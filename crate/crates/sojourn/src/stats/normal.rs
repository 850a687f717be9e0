//! Standard normal distribution function, self-contained and accurate to a
//! few ulps (absolute error well under 1e-14 across the real line).
//!
//! `Phi(a) = erfc(-a / sqrt(2)) / 2`, with `erfc` computed from its Maclaurin
//! series below the crossover and from the classical continued fraction above
//! it. The negative axis is folded through `erfc(-x) = 2 - erfc(x)`, which
//! also makes the symmetry `Phi(a) + Phi(-a) = 1` hold to full precision.

use std::f64::consts::{FRAC_2_SQRT_PI, PI, SQRT_2};

/// Series/continued-fraction crossover for `erfc`. Both expansions carry
/// comfortably more than 1e-14 accuracy at this point.
const CROSSOVER: f64 = 2.0;

/// Distribution function of the standard normal law.
pub fn std_normal_cdf(a: f64) -> f64 {
    0.5 * erfc(-a / SQRT_2)
}

/// Density of the standard normal law.
pub fn std_normal_pdf(a: f64) -> f64 {
    (-0.5 * a * a).exp() / (2.0 * PI).sqrt()
}

/// Complementary error function on the whole real line.
fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x < CROSSOVER {
        1.0 - erf_series(x)
    } else {
        erfc_continued_fraction(x)
    }
}

/// Maclaurin series `erf(x) = 2/sqrt(pi) * sum (-1)^k x^(2k+1) / (k! (2k+1))`.
/// At `x < 2` the largest term is below `x^9/216 < 2.4`, so cancellation
/// costs at most a few ulps of that — fine for the target accuracy.
fn erf_series(x: f64) -> f64 {
    let mut term = x; // (-1)^k x^(2k+1) / k!
    let mut sum = x;
    let mut k = 1.0f64;
    loop {
        term *= -(x * x) / k;
        let contribution = term / (2.0 * k + 1.0);
        sum += contribution;
        if contribution.abs() <= sum.abs() * 1e-17 {
            break;
        }
        k += 1.0;
        debug_assert!(k < 200.0, "erf series failed to converge at x = {x}");
    }
    FRAC_2_SQRT_PI * sum
}

/// Legendre's continued fraction
/// `erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))`,
/// evaluated by the modified Lentz algorithm. Converges quickly for `x >= 2`.
fn erfc_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0f64;
    for n in 1..=300 {
        let a = n as f64 / 2.0;
        d = x + a * d;
        if d == 0.0 {
            d = TINY;
        }
        c = x + a / c;
        if c == 0.0 {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / PI.sqrt() / f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_at_zero_exactly() {
        assert_eq!(std_normal_cdf(0.0), 0.5);
    }

    #[test]
    fn matches_high_precision_reference() {
        // 20-digit reference values for Phi, spanning both erfc regimes.
        let reference = [
            (0.1, 0.53982783727702898147),
            (0.5, 0.69146246127401310364),
            (1.0, 0.84134474606854294859),
            (1.5, 0.93319279873114193396),
            (2.0, 0.97724986805182079280),
            (3.0, 0.99865010196836990547),
            (-0.75, 0.22662735237686819933),
            (-1.0, 0.15865525393145705141),
            (-2.0, 0.02275013194817920720),
            (-3.0, 0.00134989803163009453),
        ];
        for (a, phi) in reference {
            assert!(
                (std_normal_cdf(a) - phi).abs() < 1e-14,
                "Phi({a}) = {} vs reference {phi}",
                std_normal_cdf(a)
            );
        }
        // Deep tail, checked relatively.
        let tail = std_normal_cdf(-6.0);
        let reference_tail = 9.865876450376981407e-10;
        assert!((tail / reference_tail - 1.0).abs() < 1e-12, "Phi(-6) = {tail}");
    }

    #[test]
    fn symmetry_to_full_precision() {
        let mut a = -8.0;
        while a <= 8.0 {
            let total = std_normal_cdf(a) + std_normal_cdf(-a);
            assert!((total - 1.0).abs() < 1e-15, "symmetry defect at a = {a}: {total}");
            a += 0.037;
        }
    }

    #[test]
    fn strictly_increasing_in_the_bulk() {
        let mut prev = std_normal_cdf(-6.0);
        let mut i = 1;
        while i <= 1200 {
            let a = -6.0 + i as f64 * 0.01;
            let here = std_normal_cdf(a);
            assert!(here > prev, "not increasing at a = {a}");
            prev = here;
            i += 1;
        }
    }

    #[test]
    fn stays_inside_the_open_unit_interval() {
        let mut a = -37.0;
        while a <= 8.0 {
            let phi = std_normal_cdf(a);
            assert!(phi > 0.0 && phi < 1.0, "Phi({a}) = {phi} left (0, 1)");
            a += 0.5;
        }
    }

    #[test]
    fn density_peak() {
        assert!((std_normal_pdf(0.0) - 0.3989422804014327).abs() < 1e-15);
        assert!((std_normal_pdf(1.0) - 0.24197072451914337).abs() < 1e-15);
    }
}
