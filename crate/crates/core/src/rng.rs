//! Seeded, platform-independent pseudorandom numbers.
//!
//! All sampling in this crate goes through splitmix64 so that a generator
//! spec reproduces bit-for-bit on any platform. Per-component streams are
//! derived from a single seed by hashing a fixed label, so adding a new
//! component never perturbs the streams of existing ones.

/// splitmix64 generator (Steele, Lea, Flood 2014).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Stream derived from `seed` and a fixed component label.
    pub fn stream(seed: u64, label: &str) -> Self {
        // FNV-1a over the label, mixed into the seed.
        let mut h: u64 = 0xcbf29ce484222325;
        for b in label.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        SplitMix64::new(seed ^ h)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in 0..n.
    pub fn next_below(&mut self, n: u64) -> u64 {
        // Rejection-free modulo is fine here: n is tiny relative to 2^64
        // for every use in this crate, so the bias is negligible and the
        // output stays deterministic.
        self.next_u64() % n
    }
}
