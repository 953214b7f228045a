//! Sum-rate-optimal transmit/receive pair for the single-best association.
//!
//! For a fixed transmit vector the best receiver is [`mmse_receive`], and
//! the UL SINR collapses to `a2 (‖g‖² − q(w_t))` where
//! `q(w) = a3 |g† H w|² / (1 + a3 ‖H w‖²)` is the residual interference.
//! Fixing `q(w_t) = alpha` leaves the problem
//! `f(alpha) = max |h† w|²  s.t. ‖w‖ = 1, q(w) = alpha`,
//! after which only a scalar search over `alpha` remains.
//!
//! `f(alpha)` is a quadratic program with two quadratic equality
//! constraints; over complex vectors its Lagrangian dual is tight:
//! `f(alpha) = min_ν λ_max(h h† − ν C)` with `C = a3 u u† − alpha B`,
//! `u = H† g`, `B = I + a3 H† H`. The dual is a convex scalar problem. For a
//! given ν the top eigenpair of `h h† − ν C` follows from the secular
//! equation in the eigenbasis of `C`, and at the minimizing ν the top
//! eigenvector satisfies the constraint, which recovers `w_t`.

use alloc::vec::Vec;

use super::{mmse_receive, mrc, mrt, pair_sum_rate, BeamformerPair};
use crate::error::{Error, Result};
use crate::linalg::{gain, hermitian_eigen, inner, norm_sqr, project_out, unit, CMat, CVec, C64};

pub const ALPHA_GRID_POINTS: usize = 64;
const GOLDEN_REL_TOL: f64 = 1e-9;
const REFINED_BRACKETS: usize = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimalSolveReport {
    /// Residual interference level `q(w_t)` of the returned transmit vector.
    pub alpha_star: f64,
    /// Sum rate (nats) of `pair`, evaluated directly from the beamformers.
    pub sum_rate: f64,
    /// Number of `f(alpha)` evaluations.
    pub iterations: usize,
    pub pair: BeamformerPair,
}

/// The map `w ↦ q(w)` for one `(g, H_ud, a3)` instance and the DL channel `h`.
#[derive(Debug, Clone)]
pub struct InterferenceConstraint {
    h: CVec,
    u: CVec,
    b: CMat,
    a3: f64,
    alpha_max: f64,
    w_max: Option<CVec>,
    mrt: CVec,
    alpha_mrt: f64,
}

impl InterferenceConstraint {
    pub fn new(h: &CVec, g: &CVec, h_ud: &CMat, a3: f64) -> Result<Self> {
        if !(a3 >= 0.0) {
            return Err(Error::InvalidConfig { field: "a3", reason: "must be >= 0" });
        }
        let m = h.len();
        let u = h_ud.adjoint() * g;
        let b = CMat::identity(m, m) + h_ud.adjoint() * h_ud * C64::new(a3, 0.0);
        let mrt = mrt(h)?;
        let (alpha_max, w_max) = if a3 == 0.0 || norm_sqr(&u) == 0.0 {
            (0.0, None)
        } else {
            let x = b
                .clone()
                .cholesky()
                .ok_or(Error::DegenerateChannel("I + a3 H†H is not positive definite"))?
                .solve(&u);
            (a3 * inner(&u, &x).re, Some(unit(&x)?))
        };
        let mut c = Self {
            h: h.clone(),
            u,
            b,
            a3,
            alpha_max,
            w_max,
            mrt: mrt.clone(),
            alpha_mrt: 0.0,
        };
        c.alpha_mrt = c.q(&mrt);
        Ok(c)
    }

    /// `a3 |u† w|² / (w† B w)`; equals the residual interference for unit `w`.
    pub fn q(&self, w: &CVec) -> f64 {
        if self.a3 == 0.0 {
            return 0.0;
        }
        self.a3 * gain(&self.u, w) / inner(w, &(&self.b * w)).re
    }

    /// Largest attainable `q` over unit vectors (generalized Rayleigh quotient bound).
    pub fn alpha_max(&self) -> f64 {
        self.alpha_max
    }

    /// `q` at the MRT direction; `f` peaks there at `‖h‖²`.
    pub fn alpha_mrt(&self) -> f64 {
        self.alpha_mrt
    }

    /// `f(alpha)` and a unit transmit vector attaining it.
    pub fn f(&self, alpha: f64) -> Result<(f64, CVec)> {
        let tol = 1e-12 * self.alpha_max;
        if !(alpha >= 0.0) || alpha > self.alpha_max + tol.max(1e-300) {
            return Err(Error::InfeasibleAlpha { alpha, alpha_max: self.alpha_max });
        }
        let w = if self.alpha_max == 0.0 || (alpha - self.alpha_mrt).abs() <= tol {
            self.mrt.clone()
        } else if alpha >= self.alpha_max - tol {
            self.w_max.clone().expect("alpha_max > 0")
        } else if alpha <= tol {
            self.orthogonal_to_u()?
        } else {
            self.dual_recovery(alpha)?
        };
        Ok((gain(&self.h, &w), w))
    }

    /// Best unit vector with `u† w = 0`.
    fn orthogonal_to_u(&self) -> Result<CVec> {
        let p = project_out(&self.h, &self.u);
        if norm_sqr(&p) > 1e-28 * norm_sqr(&self.h) {
            return unit(&p);
        }
        // h ∥ u: every vector orthogonal to u gives zero, pick a basis residual
        let m = self.h.len();
        (0..m)
            .map(|k| {
                let mut e = CVec::zeros(m);
                e[k] = C64::new(1.0, 0.0);
                project_out(&e, &self.u)
            })
            .max_by(|a, b| norm_sqr(a).total_cmp(&norm_sqr(b)))
            .ok_or(Error::Infeasible("no vector orthogonal to the interference direction"))
            .and_then(|v| unit(&v))
    }

    fn dual_recovery(&self, alpha: f64) -> Result<CVec> {
        let m = self.h.len();
        let c = &self.u * self.u.adjoint() * C64::new(self.a3, 0.0) - &self.b * C64::new(alpha, 0.0);
        let (cvals, cvecs) = hermitian_eigen(&c);
        let ht = cvecs.adjoint() * &self.h;
        let z: Vec<f64> = ht.iter().map(|x| x.norm_sqr()).collect();
        let cv: Vec<f64> = cvals.iter().copied().collect();

        // sign of w† C w at the top eigenvector of h h† − ν C
        let slope = |nu: f64| -> (f64, f64) {
            let d: Vec<f64> = cv.iter().map(|ck| -nu * ck).collect();
            let lambda = secular_top_root(&d, &z);
            let (mut num, mut den) = (0.0, 0.0);
            for k in 0..m {
                let r = z[k] / ((lambda - d[k]) * (lambda - d[k]));
                num += cv[k] * r;
                den += r;
            }
            (num / den, lambda)
        };

        // feasible side: the sign of w†Cw at ν = 0 (w = MRT) is that of alpha_mrt − alpha
        let dir = if alpha < self.alpha_mrt { 1.0 } else { -1.0 };
        let scale = cv.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        let mut lo = 0.0;
        let mut hi = dir * norm_sqr(&self.h) / scale;
        let mut expansions = 0;
        while dir * slope(hi).0 > 0.0 {
            lo = hi;
            hi *= 4.0;
            expansions += 1;
            if expansions > 400 || !hi.is_finite() {
                return Err(Error::Infeasible("dual bracket expansion failed"));
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi || (hi - lo).abs() <= 1e-15 * hi.abs() {
                break;
            }
            if dir * slope(mid).0 > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let nu = 0.5 * (lo + hi);
        let lambda = slope(nu).1;
        let mut wt = CVec::zeros(m);
        for k in 0..m {
            let gap = lambda - (-nu * cv[k]);
            if gap > 0.0 {
                wt[k] = ht[k] / gap;
            }
        }
        unit(&(cvecs * wt))
    }
}

/// Largest root of `Σ z_k / (λ − d_k) = 1`, i.e. the top eigenvalue of
/// `diag(d) + h h†` with `|h_k|² = z_k`.
fn secular_top_root(d: &[f64], z: &[f64]) -> f64 {
    let dmax = d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ztot: f64 = z.iter().sum();
    let mut lo = dmax;
    let mut hi = dmax + ztot;
    let mut lambda = hi;
    for _ in 0..200 {
        let (mut s, mut ds) = (0.0, 0.0);
        for (dk, zk) in d.iter().zip(z) {
            let r = 1.0 / (lambda - dk);
            s += zk * r;
            ds -= zk * r * r;
        }
        let f = s - 1.0;
        if f > 0.0 {
            lo = lambda;
        } else {
            hi = lambda;
        }
        let mut next = lambda - f / ds;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - lambda).abs() <= 4.0 * f64::EPSILON * lambda.abs().max(ztot) || hi - lo <= f64::EPSILON * hi.abs() {
            return next;
        }
        lambda = next;
    }
    lambda
}

/// `f(alpha)`: largest DL gain `|h† w|²` over unit `w` whose residual
/// interference `q(w)` equals `alpha`, with the attaining `w`.
pub fn solve_f_alpha(alpha: f64, h: &CVec, g: &CVec, h_ud: &CMat, a3: f64) -> Result<(f64, CVec)> {
    InterferenceConstraint::new(h, g, h_ud, a3)?.f(alpha)
}

/// Maximizes `ln(1 + a1 f(alpha)) + ln(1 + a2 (‖g‖² − alpha))` over alpha and
/// returns the resulting pair with `w_r` from [`mmse_receive`].
///
/// `f` increases up to the MRT point `alpha_mrt` and the UL term decreases in
/// alpha, so the search interval is `[0, min(alpha_mrt, ‖g‖²)]`. A uniform grid
/// of [`ALPHA_GRID_POINTS`] points is refined by golden-section search around
/// the best local maxima; MRT is always kept as a candidate.
pub fn solve_optimal_pair(h: &CVec, g: &CVec, h_ud: &CMat, a1: f64, a2: f64, a3: f64) -> Result<OptimalSolveReport> {
    if !(a1 >= 0.0 && a2 >= 0.0 && a3 >= 0.0) {
        return Err(Error::InvalidConfig { field: "a1/a2/a3", reason: "must be >= 0" });
    }
    let constraint = InterferenceConstraint::new(h, g, h_ud, a3)?;
    let g2 = norm_sqr(g);
    let finish = |w_t: CVec, iterations: usize| -> Result<OptimalSolveReport> {
        let w_r = mmse_receive(g, h_ud, &w_t, a3)?;
        let pair = BeamformerPair { w_t, w_r };
        Ok(OptimalSolveReport {
            alpha_star: constraint.q(&pair.w_t),
            sum_rate: pair_sum_rate(&pair, h, g, h_ud, a1, a2, a3),
            iterations,
            pair,
        })
    };

    let upper = constraint.alpha_mrt().min(g2);
    if constraint.alpha_max() == 0.0 || upper <= 0.0 {
        let mut report = finish(mrt(h)?, 0)?;
        if a3 == 0.0 {
            report.pair.w_r = mrc(g)?;
        }
        return Ok(report);
    }

    let mut evaluations = 0usize;
    let mut objective = |alpha: f64| -> Result<(f64, CVec)> {
        evaluations += 1;
        let (f, w) = constraint.f(alpha)?;
        Ok((libm::log1p(a1 * f) + libm::log1p(a2 * (g2 - alpha).max(0.0)), w))
    };

    let n = ALPHA_GRID_POINTS;
    let grid: Vec<f64> = (0..n).map(|i| upper * i as f64 / (n - 1) as f64).collect();
    let mut values = Vec::with_capacity(n);
    let mut best: (f64, CVec) = (f64::NEG_INFINITY, constraint.mrt.clone());
    for &alpha in &grid {
        let (v, w) = objective(alpha)?;
        if v > best.0 {
            best = (v, w);
        }
        values.push(v);
    }

    let mut peaks: Vec<usize> = (0..n)
        .filter(|&i| (i == 0 || values[i] >= values[i - 1]) && (i + 1 == n || values[i] >= values[i + 1]))
        .collect();
    peaks.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    for &i in peaks.iter().take(REFINED_BRACKETS) {
        let lo = grid[i.saturating_sub(1)];
        let hi = grid[(i + 1).min(n - 1)];
        let (v, w) = golden_max(&mut objective, lo, hi, GOLDEN_REL_TOL * upper)?;
        if v > best.0 {
            best = (v, w);
        }
    }

    let candidate = finish(best.1, evaluations)?;
    let with_mrt = finish(constraint.mrt.clone(), evaluations)?;
    Ok(if with_mrt.sum_rate > candidate.sum_rate { with_mrt } else { candidate })
}

fn golden_max<F>(f: &mut F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, CVec)>
where
    F: FnMut(f64) -> Result<(f64, CVec)>,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > tol {
        if f1.0 >= f2.0 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1.0 >= f2.0 { f1 } else { f2 })
}
