//! Seeded random streams for problem generation.
//!
//! SplitMix64 (Steele, Lea, Flood 2014). The constants below are the whole
//! algorithm; any port that copies them and the derived-variate rules
//! reproduces every benchmark instance bit for bit:
//!
//! * `uniform`: top 53 bits of the next output, times 2⁻⁵³, in `[0, 1)`;
//! * `normal`: Box–Muller, cosine branch only, `u1 = 1 − uniform()` then
//!   `u2 = uniform()`; every normal consumes exactly two outputs;
//! * `bernoulli(p)`: `uniform() < p`;
//! * `split`: a fresh generator seeded with the next output.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const MIX_1: u64 = 0xBF58_476D_1CE4_E5B9;
const MIX_2: u64 = 0x94D0_49BB_1331_11EB;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rng {
    state: u64,
}

impl Default for Rng {
    fn default() -> Self {
        Self::new(DEFAULT_SEED)
    }
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(MIX_1);
        z = (z ^ (z >> 27)).wrapping_mul(MIX_2);
        z ^ (z >> 31)
    }

    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// `+1` or `−1` with equal probability.
    pub fn sign(&mut self) -> f64 {
        if self.bernoulli(0.5) {
            1.0
        } else {
            -1.0
        }
    }

    pub fn split(&mut self) -> Rng {
        Rng::new(self.next_u64())
    }

    pub fn normal_vec(&mut self, len: usize) -> Vec<f64> {
        (0..len).map(|_| self.normal()).collect()
    }

    pub fn uniform_vec(&mut self, len: usize) -> Vec<f64> {
        (0..len).map(|_| self.uniform()).collect()
    }
}
