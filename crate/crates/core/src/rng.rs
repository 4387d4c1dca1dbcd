//! Counter-based random streams.
//!
//! Every stream is a ChaCha12 keystream keyed by the master seed and selected
//! by a 64-bit stream id, so the numbers a path sees depend only on
//! `(master_seed, stream)` and never on which thread produced them.

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Exp1, StandardNormal};

/// Stream ids at or above this offset are reserved for auxiliary consumers
/// (bootstrap resampling, probe directions) so they never collide with path
/// indices.
pub const AUX_STREAM_BASE: u64 = 1 << 63;

pub type StreamRng = ChaCha12Rng;

/// Returns the generator for stream `stream` under `master_seed`.
pub fn stream(master_seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha12Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng.set_word_pos(0);
    rng
}

/// Auxiliary stream `id`, disjoint from every path stream.
pub fn aux_stream(master_seed: u64, id: u64) -> StreamRng {
    stream(master_seed, AUX_STREAM_BASE | id)
}

/// Uniform on the open interval (0, 1).
#[inline]
pub fn open01<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(Open01)
}

#[inline]
pub fn exp1<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(Exp1)
}

#[inline]
pub fn std_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}
