//! Fixtures and reference implementations used to check `maxlev` end to end.
//!
//! * [`planted`]: reservoirs with a known small cover hidden among distractors.
//! * [`oracle`]: a deliberately naive chrF, sharing no code with the library.
//! * [`syllables`]: synthetic languages built from disjoint syllable inventories.

pub mod oracle;
pub mod planted;
pub mod syllables;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The RNG every fixture is drawn from.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
