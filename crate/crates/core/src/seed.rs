use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Identifies one independent random stream: a master seed plus a trial ordinal.
///
/// Streams are ChaCha8 keyed by `master` with the ChaCha stream id set to
/// `stream_index`, so distinct trials never share keystream regardless of
/// the order in which they are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    pub master: u64,
    pub stream_index: u64,
}

impl Seed {
    pub fn new(master: u64, stream_index: u64) -> Self {
        Self {
            master,
            stream_index,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = master_rng(self.master);
        rng.set_stream(self.stream_index);
        rng
    }
}

/// The keyed generator shared by every stream of `master`, positioned on stream 0.
/// Cloning it and calling `set_stream(t)` gives exactly `Seed::new(master, t).rng()`.
pub fn master_rng(master: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(master)
}
