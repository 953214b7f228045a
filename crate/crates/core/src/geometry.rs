//! Poisson point process of RRHs on a disc, UL/DL thinning and the
//! sectorized interference region.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::config::NormalizedConfig;
use crate::error::{Error, Result};

/// Distances below this are clamped before evaluating path loss (m).
pub const MIN_DISTANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        Self::new(r * libm::cos(theta), r * libm::sin(theta))
    }

    pub fn norm(self) -> f64 {
        libm::hypot(self.x, self.y)
    }

    pub fn angle(self) -> f64 {
        libm::atan2(self.y, self.x)
    }

    pub fn distance(self, other: Point) -> f64 {
        libm::hypot(self.x - other.x, self.y - other.y)
    }

    pub fn scaled(self, c: f64) -> Self {
        Self::new(self.x * c, self.y * c)
    }
}

/// One draw of the RRH layout. The user sits at the origin.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NetworkRealization {
    pub dl_points: Vec<Point>,
    pub ul_points: Vec<Point>,
}

impl NetworkRealization {
    pub fn user(&self) -> Point {
        Point::ORIGIN
    }
}

/// Poisson count, uniform placement on the disc, Bernoulli(p_d) roles.
pub fn sample_realization<R: Rng + ?Sized>(cfg: &NormalizedConfig, rng: &mut R) -> NetworkRealization {
    let mean = cfg.lambda * PI * cfg.radius * cfg.radius;
    let count = if mean > 0.0 {
        Poisson::new(mean).expect("finite positive mean").sample(rng) as usize
    } else {
        0
    };
    let mut real = NetworkRealization::default();
    for _ in 0..count {
        let r = cfg.radius * libm::sqrt(rng.random::<f64>());
        let theta = 2.0 * PI * rng.random::<f64>();
        let p = Point::from_polar(r, theta);
        if rng.random::<f64>() < cfg.p_d {
            real.dl_points.push(p);
        } else {
            real.ul_points.push(p);
        }
    }
    real
}

/// Absolute angular separation in [0, π].
pub fn angular_separation(a: f64, b: f64) -> f64 {
    let d = libm::fabs(a - b) % (2.0 * PI);
    if d > PI {
        2.0 * PI - d
    } else {
        d
    }
}

/// Indices of the DL points that lie outside the ±`phi` sector around the
/// user-to-`anchor` axis (the selection region).
pub fn selection_region(dl_points: &[Point], anchor: Point, phi: f64) -> Result<Vec<usize>> {
    if !(0.0..=PI).contains(&phi) {
        return Err(Error::InvalidConfig {
            field: "phi",
            reason: "must lie in [0, pi]",
        });
    }
    if anchor == Point::ORIGIN {
        return Err(Error::DegenerateChannel("interference-region anchor at the user"));
    }
    if phi == 0.0 {
        return Ok((0..dl_points.len()).collect());
    }
    let axis = anchor.angle();
    Ok(dl_points
        .iter()
        .enumerate()
        .filter(|(_, p)| angular_separation(p.angle(), axis) > phi)
        .map(|(i, _)| i)
        .collect())
}

pub fn apply_interference_region(dl_points: &[Point], anchor: Point, phi: f64) -> Result<Vec<Point>> {
    Ok(selection_region(dl_points, anchor, phi)?
        .into_iter()
        .map(|i| dl_points[i])
        .collect())
}

/// `‖x − y‖^(−mu)` with the distance floored at [`MIN_DISTANCE`].
pub fn path_loss(x: Point, y: Point, mu: f64) -> f64 {
    libm::pow(x.distance(y).max(MIN_DISTANCE), -mu)
}

/// Density of the distance between two independent uniform points on a disc of radius `radius`.
pub fn disc_pair_distance_pdf(r: f64, radius: f64) -> f64 {
    if !(r > 0.0 && r < 2.0 * radius) {
        return 0.0;
    }
    let u = r / (2.0 * radius);
    2.0 * r / (radius * radius)
        * ((2.0 / PI) * libm::acos(u) - (r / (PI * radius)) * libm::sqrt(1.0 - u * u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SystemConfig;
    use crate::quad::{integrate, Tolerance};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg(lambda: f64, p_d: f64) -> NormalizedConfig {
        SystemConfig {
            lambda,
            p_d,
            ..SystemConfig::default()
        }
        .normalize()
        .unwrap()
    }

    #[test]
    fn empty_and_single_role_realizations() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = sample_realization(&cfg(0.0, 0.5), &mut rng);
        assert!(r.dl_points.is_empty() && r.ul_points.is_empty());
        for _ in 0..50 {
            assert!(sample_realization(&cfg(1e-3, 1.0), &mut rng).ul_points.is_empty());
            assert!(sample_realization(&cfg(1e-3, 0.0), &mut rng).dl_points.is_empty());
        }
    }

    #[test]
    fn counts_follow_poisson_means_and_points_stay_inside() {
        let c = cfg(1e-3, 0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let n = 100_000;
        let (mut total, mut dl) = (0.0, 0.0);
        let mut sectors = [0usize; 8];
        for _ in 0..n {
            let r = sample_realization(&c, &mut rng);
            total += (r.dl_points.len() + r.ul_points.len()) as f64;
            dl += r.dl_points.len() as f64;
            for p in r.dl_points.iter().chain(&r.ul_points) {
                assert!(p.norm() < c.radius);
                let a = (p.angle() + PI) / (2.0 * PI);
                sectors[((a * 8.0) as usize).min(7)] += 1;
            }
        }
        let mean = PI * 150.0 * 150.0 * 1e-3;
        assert!((mean - 70.685_834_705_770_35).abs() < 1e-9);
        let se = libm::sqrt(mean / n as f64);
        assert!((total / n as f64 - mean).abs() < 3.0 * se);
        let se_dl = libm::sqrt(0.5 * mean / n as f64);
        assert!((dl / n as f64 - 0.5 * mean).abs() < 3.0 * se_dl);
        // angular uniformity, chi-square with 7 dof, 0.999 quantile 24.32
        let all: usize = sectors.iter().sum();
        let e = all as f64 / 8.0;
        let chi2: f64 = sectors.iter().map(|&o| (o as f64 - e).powi(2) / e).sum();
        assert!(chi2 < 24.32, "chi2 = {chi2}");
    }

    #[test]
    fn interference_region_examples() {
        let pts = [Point::from_polar(10.0, PI / 4.0), Point::from_polar(10.0, 3.0 * PI / 4.0)];
        let anchor = Point::new(5.0, 0.0);
        assert_eq!(apply_interference_region(&pts, anchor, 0.0).unwrap(), pts.to_vec());
        assert!(apply_interference_region(&pts, anchor, PI).unwrap().is_empty());
        assert_eq!(apply_interference_region(&pts, anchor, PI / 2.0).unwrap(), alloc::vec![pts[1]]);
        assert!(selection_region(&pts, anchor, -0.1).is_err());
        assert!(selection_region(&pts, anchor, 3.5).is_err());
        assert!(selection_region(&pts, Point::ORIGIN, 1.0).is_err());
    }

    #[test]
    fn removed_fraction_tends_to_phi_over_pi() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts: Vec<Point> = (0..200_000)
            .map(|_| Point::from_polar(1.0 + rng.random::<f64>(), 2.0 * PI * rng.random::<f64>()))
            .collect();
        for (anchor, phi) in [(Point::new(1.0, 2.0), 0.7), (Point::new(-3.0, -0.1), 2.0)] {
            let kept = selection_region(&pts, anchor, phi).unwrap().len() as f64;
            let removed = 1.0 - kept / pts.len() as f64;
            assert!((removed - phi / PI).abs() < 0.005, "{removed}");
        }
    }

    #[test]
    fn path_loss_examples() {
        let o = Point::ORIGIN;
        assert!((path_loss(o, Point::new(10.0, 0.0), 3.0) - 1e-3).abs() < 1e-18);
        assert_eq!(path_loss(o, Point::new(0.0, 1.0), 3.7), 1.0);
        assert!((path_loss(o, Point::new(150.0, 0.0), 3.0) / 2.962_962_962_962_963e-7 - 1.0).abs() < 1e-12);
        assert_eq!(path_loss(o, o, 3.0), libm::pow(MIN_DISTANCE, -3.0));
    }

    #[test]
    fn pair_distance_pdf_normalizes_and_matches_sampling() {
        let radius = 150.0;
        assert_eq!(disc_pair_distance_pdf(0.0, radius), 0.0);
        let q = integrate(|r| disc_pair_distance_pdf(r, radius), 0.0, 2.0 * radius, Tolerance::new(1e-12, 1e-12));
        assert!((q.value - 1.0).abs() < 1e-9);

        // KS against 10^6 sampled pairs
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let sample = |rng: &mut ChaCha8Rng| Point::from_polar(radius * libm::sqrt(rng.random::<f64>()), 2.0 * PI * rng.random::<f64>());
        let mut d: Vec<f64> = (0..1_000_000).map(|_| sample(&mut rng).distance(sample(&mut rng))).collect();
        d.sort_by(f64::total_cmp);
        let n = d.len() as f64;
        // cdf on a fine grid by cumulative trapezoid, then interpolate
        let grid = 20_000;
        let h = 2.0 * radius / grid as f64;
        let mut cdf = alloc::vec![0.0; grid + 1];
        for k in 1..=grid {
            let (a, b) = ((k - 1) as f64 * h, k as f64 * h);
            cdf[k] = cdf[k - 1] + 0.5 * h * (disc_pair_distance_pdf(a, radius) + disc_pair_distance_pdf(b, radius));
        }
        let mut ks: f64 = 0.0;
        for (i, &x) in d.iter().enumerate() {
            let pos = x / h;
            let k = (pos as usize).min(grid - 1);
            let f = cdf[k] + (pos - k as f64) * (cdf[k + 1] - cdf[k]);
            ks = ks.max((f - i as f64 / n).abs()).max((f - (i + 1) as f64 / n).abs());
        }
        assert!(ks < 0.01, "ks = {ks}");
    }
}
