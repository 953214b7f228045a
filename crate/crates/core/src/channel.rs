//! Small-scale fading for one realization.

use alloc::vec::Vec;
use core::cell::RefCell;

use alloc::collections::BTreeMap;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::config::NormalizedConfig;
use crate::geometry::NetworkRealization;
use crate::linalg::{CMat, CVec, C64};
use crate::rng::{pair_stream, TrialStreams};

/// One CN(0, 1) sample: real and imaginary parts each N(0, 1/2).
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

pub fn complex_gaussian_vector<R: Rng + ?Sized>(m: usize, rng: &mut R) -> CVec {
    CVec::from_fn(m, |_, _| complex_gaussian(rng))
}

pub fn complex_gaussian_matrix<R: Rng + ?Sized>(m: usize, rng: &mut R) -> CMat {
    CMat::from_fn(m, m, |_, _| complex_gaussian(rng))
}

/// Fading state of a trial. Inter-RRH matrices are generated on first use
/// from a stream keyed by the `(ul, dl)` pair, so their values do not depend
/// on the order in which pairs are requested.
#[derive(Debug, Clone)]
pub struct ChannelDraw {
    antennas: usize,
    streams: TrialStreams,
    /// DL channel of each DL RRH, indexed like `NetworkRealization::dl_points`.
    pub h: Vec<CVec>,
    /// UL channel of each UL RRH, indexed like `NetworkRealization::ul_points`.
    pub g: Vec<CVec>,
    /// Residual loopback-interference coefficient, `E|h_li|² = sigma_li`.
    pub h_li: C64,
    inter: RefCell<BTreeMap<(usize, usize), CMat>>,
}

impl ChannelDraw {
    pub fn antennas(&self) -> usize {
        self.antennas
    }

    /// `H_ud` between UL RRH `ul` and DL RRH `dl`.
    pub fn inter_rrh(&self, ul: usize, dl: usize) -> CMat {
        self.inter
            .borrow_mut()
            .entry((ul, dl))
            .or_insert_with(|| {
                let mut rng = self.streams.stream(pair_stream(ul, dl));
                complex_gaussian_matrix(self.antennas, &mut rng)
            })
            .clone()
    }

    pub fn li_gain(&self) -> f64 {
        self.h_li.norm_sqr()
    }
}

/// Draws `h`, `g` and `h_li` from `rng`; inter-RRH matrices come from `streams`.
pub fn draw_channels<R: Rng + ?Sized>(
    realization: &NetworkRealization,
    cfg: &NormalizedConfig,
    streams: &TrialStreams,
    rng: &mut R,
) -> ChannelDraw {
    let m = cfg.antennas;
    let h = realization.dl_points.iter().map(|_| complex_gaussian_vector(m, rng)).collect();
    let g = realization.ul_points.iter().map(|_| complex_gaussian_vector(m, rng)).collect();
    let h_li = complex_gaussian(rng) * libm::sqrt(cfg.sigma_li);
    ChannelDraw {
        antennas: m,
        streams: *streams,
        h,
        g,
        h_li,
        inter: RefCell::new(BTreeMap::new()),
    }
}
