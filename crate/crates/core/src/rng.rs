//! Seeded random streams.
//!
//! A run owns one root seed. Each consumer (initialisation, parent
//! selection, crossover, mutation) draws from its own ChaCha stream, so
//! changing how many numbers one consumer draws does not shift the others.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used everywhere in the crate.
pub type Stream = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamId {
    Init = 1,
    Selection = 2,
    Crossover = 3,
    Mutation = 4,
}

pub fn stream(seed: u64, id: StreamId) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id as u64);
    rng
}

/// The four streams of one run.
#[derive(Debug, Clone)]
pub struct RunStreams {
    pub init: Stream,
    pub selection: Stream,
    pub crossover: Stream,
    pub mutation: Stream,
}

impl RunStreams {
    pub fn new(seed: u64) -> Self {
        Self {
            init: stream(seed, StreamId::Init),
            selection: stream(seed, StreamId::Selection),
            crossover: stream(seed, StreamId::Crossover),
            mutation: stream(seed, StreamId::Mutation),
        }
    }
}
