//! Seeding and tie-breaking shared by the randomized solvers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SolverRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SolverRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent sub-seed for stream `stream` of a master seed.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    splitmix64(master ^ splitmix64(stream))
}

/// How a solver resolves candidates that tie on every scoring criterion.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// Uniform choice among the tied candidates.
    #[default]
    Random,
    /// The lowest identifier wins. Used for regression tests.
    LowestIndex,
}

/// Single-pass uniform choice among tied candidates (reservoir of size one).
///
/// Candidates must be offered in ascending identifier order for
/// [`TieBreak::LowestIndex`] to mean what it says.
#[derive(Debug)]
pub(crate) struct TiePicker {
    mode: TieBreak,
    seen: u64,
}

impl TiePicker {
    pub(crate) fn new(mode: TieBreak) -> Self {
        Self { mode, seen: 0 }
    }

    /// Starts a fresh tie class whose first member is the current pick.
    pub(crate) fn reset(&mut self) {
        self.seen = 1;
    }

    /// Offers another member of the current tie class. Returns true when it
    /// should replace the current pick.
    pub(crate) fn offer(&mut self, rng: &mut SolverRng) -> bool {
        self.seen += 1;
        match self.mode {
            TieBreak::LowestIndex => false,
            TieBreak::Random => rng.gen_range(0..self.seen) == 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_seeds_differ_per_stream() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| derive_seed(7, i)).collect();
        assert_eq!(seeds.len(), 1000);
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
        assert_ne!(derive_seed(7, 3), derive_seed(8, 3));
    }

    #[test]
    fn reservoir_is_roughly_uniform() {
        let mut rng = seeded(1);
        let mut counts = [0usize; 4];
        for _ in 0..40_000 {
            let mut picker = TiePicker::new(TieBreak::Random);
            picker.reset();
            let mut pick = 0;
            for candidate in 1..4 {
                if picker.offer(&mut rng) {
                    pick = candidate;
                }
            }
            counts[pick] += 1;
        }
        for c in counts {
            assert!((9_000..11_000).contains(&c), "{counts:?}");
        }
    }

    #[test]
    fn lowest_index_keeps_first() {
        let mut rng = seeded(1);
        let mut picker = TiePicker::new(TieBreak::LowestIndex);
        picker.reset();
        assert!((0..10).all(|_| !picker.offer(&mut rng)));
    }
}
