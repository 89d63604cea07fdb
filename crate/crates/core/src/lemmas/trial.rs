//! Deletion sets for "even with k edges deleted" claims.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Edge;

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const MIXED_SEED: u64 = 0xf5e7;
pub const DEFAULT_SAMPLES: u64 = 10_000;
/// Largest number of subsets enumerated in full.
pub const EXHAUSTIVE_LIMIT: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrialPolicy {
    /// Exhaustive up to the limit, sampled with the default seed above it.
    Auto,
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrialMode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionTrial {
    pub mode: TrialMode,
    /// Edges per deleted set.
    pub size: usize,
    /// Number of edges sets are drawn from.
    pub universe: usize,
    /// Sets tried.
    pub tried: u64,
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

impl DeletionTrial {
    pub fn plan(universe: usize, size: usize, policy: TrialPolicy) -> Result<DeletionTrial> {
        let total = binomial(universe, size);
        let mode = match policy {
            TrialPolicy::Auto if total <= EXHAUSTIVE_LIMIT => TrialMode::Exhaustive,
            TrialPolicy::Auto => TrialMode::Sampled { count: DEFAULT_SAMPLES, seed: DEFAULT_SEED },
            TrialPolicy::Exhaustive if total <= EXHAUSTIVE_LIMIT * 100 => TrialMode::Exhaustive,
            TrialPolicy::Exhaustive => {
                return Err(Error::InvalidParameter(format!(
                    "{total} deletion sets of size {size} are too many to enumerate"
                )))
            }
            TrialPolicy::Sampled { count, seed } => TrialMode::Sampled { count, seed },
        };
        let tried = match mode {
            TrialMode::Exhaustive => total as u64,
            TrialMode::Sampled { count, .. } => if size > universe { 0 } else { count },
        };
        Ok(DeletionTrial { mode, size, universe, tried })
    }

    pub fn is_exhaustive(&self) -> bool {
        self.mode == TrialMode::Exhaustive
    }

    /// Index sets into the universe, in a fixed order.
    pub fn index_sets(&self) -> Box<dyn Iterator<Item = Vec<usize>> + Send> {
        match self.mode {
            TrialMode::Exhaustive => Box::new(Combinations::new(self.universe, self.size)),
            TrialMode::Sampled { count, seed } => {
                let (n, k) = (self.universe, self.size);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let count = if k > n { 0 } else { count };
                Box::new((0..count).map(move |_| {
                    let mut s = sample(&mut rng, n, k).into_vec();
                    s.sort_unstable();
                    s
                }))
            }
        }
    }

    pub fn sets<'a>(&self, universe: &'a [Edge]) -> impl Iterator<Item = Vec<Edge>> + 'a {
        assert_eq!(universe.len(), self.universe);
        self.index_sets().map(move |ix| ix.into_iter().map(|i| universe[i]).collect())
    }
}

/// k-subsets of 0..n in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Combinations {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
