//! Small numerical toolbox: moments, log-gamma, the regularized incomplete
//! beta function, and the two-sided Student-t tail probability built on it.
//! Hand-rolled to keep the dependency surface flat; accuracy is pinned by the
//! quadrature oracle in the test suites.

use crate::error::{Error, Result};

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Unbiased sample variance (n-1 divisor). Panics on fewer than 2 values.
pub fn sample_variance(values: &[f64]) -> f64 {
    assert!(values.len() >= 2, "variance needs at least 2 values");
    let m = mean(values);
    values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (values.len() - 1) as f64
}

pub fn median(sorted: &mut [f64]) -> f64 {
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// ln Γ(z) for z > 0, Lanczos approximation (Numerical Recipes coefficients).
pub fn ln_gamma(z: f64) -> f64 {
    debug_assert!(z > 0.0);
    const C: [f64; 6] = [
        76.18009172947146,
        -86.50532032941677,
        24.01409824083091,
        -1.231739572450155,
        0.1208650973866179e-2,
        -0.5395239384953e-5,
    ];
    let mut sum = 1.000000000190015;
    for (i, c) in C.iter().enumerate() {
        sum += c / (z + i as f64 + 1.0);
    }
    let tmp = z + 5.5;
    (z + 0.5) * tmp.ln() - tmp + (2.5066282746310005 * sum / z).ln()
}

/// Regularized incomplete beta function I_x(a, b), a, b > 0, x in [0, 1].
///
/// Continued fraction evaluated with the modified Lentz method, using the
/// symmetry I_x(a,b) = 1 - I_{1-x}(b,a) to stay in the fast-converging
/// region.
pub fn regularized_incomplete_beta(x: f64, a: f64, b: f64) -> f64 {
    debug_assert!(a > 0.0 && b > 0.0);
    debug_assert!((0.0..=1.0).contains(&x));
    if x == 0.0 {
        return 0.0;
    }
    if x == 1.0 {
        return 1.0;
    }
    if x > (a + 1.0) / (a + b + 2.0) {
        return 1.0 - regularized_incomplete_beta(1.0 - x, b, a);
    }

    let front =
        (a * x.ln() + b * (1.0 - x).ln() - ln_gamma(a) - ln_gamma(b) + ln_gamma(a + b)).exp();

    const EPS: f64 = 1e-15;
    const TINY: f64 = 1e-300;
    let mut c = 1.0f64;
    let mut d = 1.0 - (a + b) * x / (a + 1.0);
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;

    for m in 1..=200 {
        let m = m as f64;
        let m2 = 2.0 * m;

        let num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
        d = 1.0 + num * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + num / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;

        let num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
        d = 1.0 + num * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + num / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;

        if (delta - 1.0).abs() < EPS {
            break;
        }
    }

    front * h / a
}

/// Two-sided tail probability 2 P(T_df >= |t|) of the Student t
/// distribution, via I_x(df/2, 1/2) with x = df / (df + t^2).
///
/// Monotonically decreasing in |t|; 1 at t = 0, 0 in the infinite-|t| limit.
pub fn student_t_two_sided_p(t: f64, df: f64) -> f64 {
    assert!(df > 0.0, "degrees of freedom must be positive");
    if t == 0.0 {
        return 1.0;
    }
    if t.is_infinite() {
        return 0.0;
    }
    let x = df / (df + t * t);
    regularized_incomplete_beta(x, df / 2.0, 0.5)
}

/// Welch-Satterthwaite degrees of freedom for the unequal-variance t test.
///
/// With a = var_tumor/n_tumor and b = var_normal/n_normal:
/// df = (a+b)^2 / (a^2/(n_tumor-1) + b^2/(n_normal-1)).
pub fn welch_df(var_tumor: f64, n_tumor: usize, var_normal: f64, n_normal: usize) -> Result<f64> {
    if var_tumor < 0.0 || var_normal < 0.0 {
        return Err(Error::Domain("variances must be non-negative".into()));
    }
    if n_tumor < 2 || n_normal < 2 {
        return Err(Error::Domain(format!(
            "group sizes must be at least 2, got {n_tumor} and {n_normal}"
        )));
    }
    if var_tumor == 0.0 && var_normal == 0.0 {
        return Err(Error::Domain(
            "degrees of freedom undefined when both variances are zero".into(),
        ));
    }
    let a = var_tumor / n_tumor as f64;
    let b = var_normal / n_normal as f64;
    let denom = a * a / (n_tumor - 1) as f64 + b * b / (n_normal - 1) as f64;
    Ok((a + b) * (a + b) / denom)
}
