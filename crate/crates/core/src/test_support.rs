//! Reference oracles for the test suites. Deliberately implemented along
//! different numerical routes than the library code they check: the t-tail
//! oracle integrates the density by adaptive quadrature (no gamma or beta
//! functions), and the mutual-information oracle sums the
//! joint-vs-product-of-marginals form directly.
//!
//! Compiled for unit tests and, behind the `test-support` feature, for
//! downstream integration suites. Not part of the stable API.

use std::collections::HashMap;

/// Adaptive Simpson quadrature on [a, b].
pub fn adaptive_simpson<F: Fn(f64) -> f64 + Copy>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
                + recurse(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let (m, fm, whole) = simpson(&f, a, fa, b, fb);
    recurse(&f, a, fa, b, fb, m, fm, whole, tol, 48)
}

/// Two-sided Student-t tail probability by quadrature of the density.
///
/// Substituting u = tan(theta) maps both the normalizing integral and the
/// tail onto finite theta intervals where the integrand
/// cos(theta)^(df-1) * (cos^2 + sin^2/df)^(-(df+1)/2) is bounded. Valid for
/// df >= 1.
pub fn student_t_two_sided_p_quadrature(t: f64, df: f64) -> f64 {
    assert!(df >= 1.0, "quadrature oracle assumes df >= 1");
    let half = std::f64::consts::FRAC_PI_2;
    let kernel = move |theta: f64| {
        let (s, c) = theta.sin_cos();
        c.powf(df - 1.0) * (c * c + s * s / df).powf(-(df + 1.0) / 2.0)
    };
    let norm = 2.0 * adaptive_simpson(kernel, 0.0, half, 1e-13);
    let tail = adaptive_simpson(kernel, t.abs().atan(), half, 1e-13);
    (2.0 * tail / norm).clamp(0.0, 1.0)
}

/// Mutual information in bits, straight from the definition:
/// sum over the joint support of p(x,y) * log2(p(x,y) / (p(x) p(y))).
pub fn mi_kl_oracle(x: &[u16], y: &[u16]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mut joint: HashMap<(u16, u16), u32> = HashMap::new();
    let mut px: HashMap<u16, u32> = HashMap::new();
    let mut py: HashMap<u16, u32> = HashMap::new();
    for (&a, &b) in x.iter().zip(y) {
        *joint.entry((a, b)).or_insert(0) += 1;
        *px.entry(a).or_insert(0) += 1;
        *py.entry(b).or_insert(0) += 1;
    }
    let mut mi = 0.0;
    for (&(a, b), &c) in &joint {
        let p_ab = c as f64 / n;
        let p_a = px[&a] as f64 / n;
        let p_b = py[&b] as f64 / n;
        mi += p_ab * (p_ab / (p_a * p_b)).log2();
    }
    mi
}
