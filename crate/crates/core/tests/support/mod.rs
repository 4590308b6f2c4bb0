//! Independent oracles for the integration tests: numeric quadrature and a
//! binomial identity for the incomplete beta, golden-section minimization,
//! and a sphere-route sampler for the scaled-Beta error law. None of these
//! reuse the library's evaluation paths for the quantity they check.

// Each test target pulls in this module but uses only a subset of it.
#![allow(dead_code)]

use optiproj_core::randsrc::uniform_sphere;
use optiproj_core::RngState;

/// Golden-section minimizer of a unimodal function on `[lo, hi]`, finished
/// with a parabolic refinement.
///
/// Interval shrinking alone cannot localize a smooth minimum past about
/// `sqrt(machine eps)` because nearby function values compare equal in
/// floating point; fitting a parabola through the final bracket recovers the
/// vertex to near machine precision (exactly, for a quadratic objective).
pub fn golden_section_min<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let coarse = tol.max(1e-3) * (hi - lo).max(1.0);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > coarse {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    // Parabola through the bracket ends and midpoint.
    let mid = 0.5 * (lo + hi);
    let (f1, f2, f3) = (f(lo), f(mid), f(hi));
    let num = (mid - lo) * (mid - lo) * (f2 - f3) - (mid - hi) * (mid - hi) * (f2 - f1);
    let den = (mid - lo) * (f2 - f3) - (mid - hi) * (f2 - f1);
    if den.abs() < 1e-300 {
        return mid;
    }
    mid - 0.5 * num / den
}

/// Adaptive Simpson quadrature with Richardson correction. The tolerance is
/// relative: a coarse composite pass estimates the magnitude first, so tiny
/// integrands (beta integrals have values down to 1e-12 here) keep full
/// relative accuracy.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let panels = 128;
    let h = (b - a) / panels as f64;
    let mut coarse = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        coarse += w * f(a + i as f64 * h);
    }
    coarse *= h / 3.0;
    let tol = coarse.abs().max(1e-300) * rel_tol;

    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    adapt(&f, a, b, fa, fm, fb, whole, tol, 48)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adapt(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + adapt(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
}

/// Complete beta function by quadrature. Both endpoint singularities are
/// removed with the substitution `t = s^2`, valid for `a, b >= 1/2`.
pub fn beta_fn_quadrature(a: f64, b: f64) -> f64 {
    let half = 0.5f64.sqrt();
    let left = integrate(
        |s| 2.0 * s.powf(2.0 * a - 1.0) * (1.0 - s * s).powf(b - 1.0),
        0.0,
        half,
        1e-14,
    );
    let right = integrate(
        |s| 2.0 * s.powf(2.0 * b - 1.0) * (1.0 - s * s).powf(a - 1.0),
        0.0,
        half,
        1e-14,
    );
    left + right
}

/// Regularized incomplete beta by quadrature, for `a, b >= 1/2`.
pub fn betainc_quadrature(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    if x > 0.5 {
        return 1.0 - betainc_quadrature(b, a, 1.0 - x);
    }
    let numer = integrate(
        |s| 2.0 * s.powf(2.0 * a - 1.0) * (1.0 - s * s).powf(b - 1.0),
        0.0,
        x.sqrt(),
        1e-14,
    );
    numer / beta_fn_quadrature(a, b)
}

/// Exact incomplete beta for integer parameters through the binomial tail:
/// `I_x(a, b) = P(Bin(a + b - 1, x) >= a)`.
pub fn betainc_binomial(a: usize, b: usize, x: f64) -> f64 {
    let n = a + b - 1;
    let mut total = 0.0f64;
    let mut binom = 1.0f64; // C(n, 0)
    for k in 0..=n {
        if k >= a {
            total += binom * x.powi(k as i32) * (1.0 - x).powi((n - k) as i32);
        }
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    total
}

/// Samples `scale * sum_{k < n} X_k^2 + shift` for a uniform sphere point
/// `X` in dimension `m`: the geometric route to the scaled-Beta law, not the
/// special-function route.
pub fn sample_scaled_beta_via_sphere(
    m: usize,
    n: usize,
    scale: f64,
    shift: f64,
    count: usize,
    rng: RngState,
) -> Vec<f64> {
    (0..count)
        .map(|i| {
            let x = uniform_sphere(m, rng.substream(i as u64)).unwrap();
            let partial: f64 = x[..n].iter().map(|v| v * v).sum();
            scale * partial + shift
        })
        .collect()
}
