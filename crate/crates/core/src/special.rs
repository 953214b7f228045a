//! Gamma-function helpers and the exponential integral.

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402;

pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `Γ(a) / Γ(b)`.
pub fn gamma_ratio(a: f64, b: f64) -> f64 {
    libm::exp(ln_gamma(a) - ln_gamma(b))
}

/// `e^x · E1(x)` for `x > 0`, where `E1` is the exponential integral.
///
/// Equals `E[ln(1 + Y / x)]` for `Y ~ Exp(1)`.
pub fn scaled_e1(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..200 {
            term *= -x / k as f64;
            let add = term / k as f64;
            sum += add;
            if libm::fabs(add) < 1e-17 * libm::fabs(sum) {
                break;
            }
        }
        libm::exp(x) * (-EULER_GAMMA - libm::log(x) - sum)
    } else {
        // modified Lentz evaluation of the continued fraction
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if libm::fabs(del - 1.0) < 1e-16 {
                break;
            }
        }
        h
    }
}

/// `E[ln(1 + a / (b·Y + 1))]` for `Y ~ Exp(1)`, `a, b >= 0`.
pub fn mean_log_exp_interference(a: f64, b: f64) -> f64 {
    if a <= 0.0 {
        return 0.0;
    }
    if b <= 0.0 {
        return libm::log1p(a);
    }
    libm::log1p(a) + scaled_e1((1.0 + a) / b) - scaled_e1(1.0 / b)
}
