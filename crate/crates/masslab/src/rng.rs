//! Deterministic pseudo-random numbers for seeded initial fields and oracle
//! test directions.
//!
//! Reproducibility is part of the output contract (the same seed must give
//! byte-identical reports), so the generator is a fixed in-crate SplitMix64
//! rather than an external source whose stream could change between
//! versions.

/// SplitMix64 generator (Steele, Lea and Flood, 2014).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Sum of even Gaussian bumps sampled on `nodes`.
///
/// Each bump is reflected through the origin so the sampled function is the
/// restriction of a smooth even function, which is what the radial
/// derivative stencils assume. Centers stay within `r_scale` of the origin
/// so the field has decayed well before the outer boundary.
pub fn smooth_samples(rng: &mut SplitMix64, nodes: &[f64], r_scale: f64, bumps: usize) -> Vec<f64> {
    let mut amp = Vec::with_capacity(bumps);
    let mut center = Vec::with_capacity(bumps);
    let mut width = Vec::with_capacity(bumps);
    for _ in 0..bumps {
        amp.push(rng.range(-1.0, 1.0));
        center.push(rng.range(0.0, r_scale));
        width.push(rng.range(0.6, 1.8));
    }
    nodes
        .iter()
        .map(|&r| {
            let mut v = 0.0;
            for j in 0..bumps {
                let dm = (r - center[j]) / width[j];
                let dp = (r + center[j]) / width[j];
                v += amp[j] * ((-dm * dm).exp() + (-dp * dp).exp());
            }
            v
        })
        .collect()
}
