//! SplitMix64, the deterministic generator behind every seeded operation.
//!
//! State advance and output mixing:
//!
//! ```text
//! state = state + 0x9E3779B97F4A7C15          (wrapping)
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9   (wrapping)
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB   (wrapping)
//! output z ^ (z >> 31)
//! ```
//!
//! A residue below `m` is drawn by rejecting outputs `>= 2^64 - (2^64 mod m)`
//! and reducing the accepted output mod `m`.

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in `0..m`; `m` must be nonzero.
    pub fn below(&mut self, m: u64) -> u64 {
        assert!(m > 0);
        // 2^64 mod m, computed without overflow
        let excess = (u64::MAX % m + 1) % m;
        let limit = u64::MAX - excess;
        loop {
            let x = self.next_u64();
            if excess == 0 || x <= limit {
                return x % m;
            }
        }
    }
}
