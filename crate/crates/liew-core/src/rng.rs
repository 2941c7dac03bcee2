//! Seeded generators for random test data.
//!
//! Every generator draws from a ChaCha8 stream seeded by a base seed and a
//! cell key, so a given (seed, key) pair produces the same data on every
//! platform and run.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::jet::Jet;
use crate::multilinear::DenseMultilinear;
use crate::poly::HomogeneousPoly;
use crate::scalar::{rat, ratq, Rational};
use crate::space::{multiindex_enumerate, Space, Vector};

fn fnv1a(key: &str) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for byte in key.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// Stream for one named cell: stable in the seed and the key only.
pub fn cell_rng(seed: u64, key: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv1a(key))
}

/// A rational with small numerator and denominator, zero included.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(-6..=6i64);
    let den = rng.gen_range(1..=4i64);
    ratq(num, den)
}

fn small_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let c = small_rational(rng);
        if c != rat(0) {
            return c;
        }
    }
}

/// A vector with small rational coordinates.
pub fn vector(rng: &mut ChaCha8Rng, space: &Space) -> Vector {
    let coords = (0..space.dim()).map(|_| small_rational(rng)).collect();
    Vector::new(space.clone(), coords).expect("generated coordinates fit the space")
}

/// A sparse homogeneous polynomial: each coefficient is present with
/// probability 1/2.
pub fn poly(
    rng: &mut ChaCha8Rng,
    source: &Space,
    target: &Space,
    degree: u32,
) -> HomogeneousPoly {
    let mut p = HomogeneousPoly::zero(source, target, degree);
    for mono in multiindex_enumerate(source.dim(), degree) {
        for coord in 0..target.dim() {
            if rng.gen_bool(0.5) {
                p.add_term(mono.clone(), coord, &small_nonzero(rng))
                    .expect("enumerated monomial is well formed");
            }
        }
    }
    p
}

/// A polynomial jet: random components through `max_deg`, zero above, all
/// degrees through `order` trusted.
pub fn jet_poly(
    rng: &mut ChaCha8Rng,
    source: &Space,
    target: &Space,
    order: i64,
    max_deg: u32,
) -> Jet {
    let mut out = Jet::zero(source, target, order);
    for deg in 0..=max_deg.min(order.max(0) as u32) {
        *out.component_mut(deg as usize) = poly(rng, source, target, deg);
    }
    out
}

/// A polynomial vector field on a space.
pub fn field(rng: &mut ChaCha8Rng, space: &Space, order: i64, max_deg: u32) -> Jet {
    jet_poly(rng, space, space, order, max_deg)
}

/// A dense multilinear map with small random entries.
pub fn multilinear(
    rng: &mut ChaCha8Rng,
    source: &Space,
    target: &Space,
    arity: u32,
) -> DenseMultilinear {
    let mut u = DenseMultilinear::zero(source, target, arity);
    let dim = source.dim();
    let mut idx = vec![0usize; arity as usize];
    loop {
        for coord in 0..target.dim() {
            if rng.gen_bool(0.5) {
                u.add_entry(&idx, coord, &small_nonzero(rng));
            }
        }
        let mut pos = arity as usize;
        loop {
            if pos == 0 {
                return u;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < dim {
                break;
            }
            idx[pos] = 0;
        }
    }
}
