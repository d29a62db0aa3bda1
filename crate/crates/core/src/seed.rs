//! Reproducible random streams.
//!
//! Every stochastic operation takes an explicit [`Seed`]. Independent work
//! items (frames, drops, links) derive their own seed from a parent seed and
//! an index, so results do not depend on how work is scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Seed(pub u64);

impl Seed {
    pub const fn new(value: u64) -> Self {
        Seed(value)
    }

    pub const fn value(self) -> u64 {
        self.0
    }

    /// Child seed for work item `index` within the stream labelled `tag`.
    pub fn derive(self, tag: u64, index: u64) -> Seed {
        let a = splitmix64(self.0 ^ splitmix64(tag.wrapping_add(0x5851_F42D_4C95_7F2D)));
        Seed(splitmix64(a ^ splitmix64(index.wrapping_mul(0x2545_F491_4F6C_DD1D))))
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

impl From<u64> for Seed {
    fn from(value: u64) -> Self {
        Seed(value)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stream tags. Keeping them in one place avoids two subsystems sharing a stream.
pub(crate) mod tag {
    pub const FRAME: u64 = 1;
    pub const FRAME_SYMBOLS: u64 = 2;
    pub const THERMAL: u64 = 3;
    pub const STAGE_NOISE: u64 = 4;
    pub const DROP: u64 = 10;
    pub const GNB: u64 = 11;
    pub const UE: u64 = 12;
    pub const LINK: u64 = 13;
}
