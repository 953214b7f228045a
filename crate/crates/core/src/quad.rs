//! Globally adaptive Gauss–Kronrod (7/15) quadrature with maps for
//! semi-infinite and doubly infinite ranges, plus fixed Gauss–Legendre rules.

use alloc::vec::Vec;
use core::f64::consts::PI;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let pair = f(c - h * x) + f(c + h * x);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * h, libm::fabs((kronrod - gauss) * h))
}

/// Adaptive integration of `f` over the finite interval `[a, b]`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Quadrature {
    if a == b {
        return Quadrature { value: 0.0, abs_error: 0.0, evaluations: 0 };
    }
    let (v, e) = gk15(&mut f, a, b);
    let mut parts: Vec<(f64, f64, f64, f64)> = alloc::vec![(a, b, v, e)];
    let mut evaluations = 15;
    loop {
        let value: f64 = parts.iter().map(|p| p.2).sum();
        let error: f64 = parts.iter().map(|p| p.3).sum();
        let done = error <= tol.abs.max(tol.rel * libm::fabs(value));
        if done || parts.len() >= MAX_INTERVALS || !error.is_finite() {
            return Quadrature { value, abs_error: error, evaluations };
        }
        let worst = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap();
        let (lo, hi, _, _) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // interval cannot be split further in floating point
            return Quadrature { value, abs_error: error, evaluations };
        }
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        evaluations += 30;
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
}

/// `∫_a^∞ f(x) dx` via `x = a + t / (1 − t)`.
pub fn integrate_to_infinity<F: FnMut(f64) -> f64>(mut f: F, a: f64, tol: Tolerance) -> Quadrature {
    integrate(
        |t| {
            let s = 1.0 - t;
            f(a + t / s) / (s * s)
        },
        0.0,
        1.0,
        tol,
    )
}

/// `∫_ℝ f(x) dx` via `x = center + scale · t / (1 − t²)`.
pub fn integrate_real_line<F: FnMut(f64) -> f64>(mut f: F, center: f64, scale: f64, tol: Tolerance) -> Quadrature {
    integrate(
        |t| {
            let s = 1.0 - t * t;
            let x = center + scale * t / s;
            let jac = scale * (1.0 + t * t) / (s * s);
            let v = f(x);
            if v == 0.0 {
                0.0
            } else {
                v * jac
            }
        },
        -1.0,
        1.0,
        tol,
    )
}

/// `∫_0^∞ g(y) dy` computed as `∫_ℝ g(e^x) e^x dx`.
pub fn integrate_positive_log<F: FnMut(f64) -> f64>(mut g: F, log_center: f64, tol: Tolerance) -> Quadrature {
    integrate_real_line(
        |x| {
            let y = libm::exp(x);
            if y == 0.0 || !y.is_finite() {
                0.0
            } else {
                g(y) * y
            }
        },
        log_center,
        4.0,
        tol,
    )
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if libm::fabs(dx) < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite Gauss–Legendre rule on `[a, b]`: `panels` equal panels of `order` points.
pub fn composite_rule(a: f64, b: f64, panels: usize, order: usize) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let c = a + (p as f64 + 0.5) * h;
        for (xi, wi) in x.iter().zip(&w) {
            out.push((c + 0.5 * h * xi, 0.5 * h * wi));
        }
    }
    out
}
