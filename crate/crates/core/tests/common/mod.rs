#![allow(dead_code)]

use heis::HeisPoint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the box `[-half, half]³`.
pub fn point_in_box<R: Rng>(rng: &mut R, half: f64) -> HeisPoint {
    HeisPoint::new(
        rng.gen_range(-half..=half),
        rng.gen_range(-half..=half),
        rng.gen_range(-half..=half),
    )
}

/// Uniform point of the Euclidean ball of radius `r` about the origin.
pub fn point_in_ball<R: Rng>(rng: &mut R, r: f64) -> HeisPoint {
    loop {
        let p = point_in_box(rng, r);
        if p.x * p.x + p.y * p.y + p.z * p.z <= r * r {
            return p;
        }
    }
}
