//! Seeded random elements for sampling and fuzzing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{canonical_dpl, CircleElement, DyadicInterval, IntervalMap};
use crate::dyadic::Dyadic;

/// Largest pseudo-rotation order drawn by [`random_factor`].
pub const MAX_RANDOM_ROTATION_ORDER: u32 = 8;

const MAX_SPLITS: usize = 4;

/// One factor of a random product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    /// `γ_q^power`.
    PseudoRotation { q: u32, power: u32 },
    /// The element of `F` sending the i-th piece of `src` affinely onto the
    /// i-th piece of `dst`. Both are cut points of dyadic partitions of
    /// `[0, 1]`, with equal piece counts and power-of-two piece lengths.
    Partition { src: Vec<Dyadic>, dst: Vec<Dyadic> },
}

impl Factor {
    pub fn to_element(&self) -> CircleElement {
        match self {
            Factor::PseudoRotation { q, power } => CircleElement::pseudo_rotation(*q as i64)
                .expect("q is positive")
                .power(*power as i64),
            Factor::Partition { src, dst } => {
                let pieces: Vec<IntervalMap> = src
                    .windows(2)
                    .zip(dst.windows(2))
                    .map(|(a, b)| {
                        canonical_dpl(
                            &DyadicInterval::new(a[0].clone(), a[1].clone())
                                .expect("nondegenerate"),
                            &DyadicInterval::new(b[0].clone(), b[1].clone())
                                .expect("nondegenerate"),
                        )
                    })
                    .collect();
                CircleElement::glue(&pieces).expect("partitions tile [0, 1]")
            }
        }
    }
}

/// Cut points of a random standard dyadic partition of `[0, 1]` obtained by
/// `splits` successive halvings.
fn random_partition(rng: &mut impl Rng, splits: usize) -> Vec<Dyadic> {
    let mut cuts = vec![Dyadic::zero(), Dyadic::one()];
    for _ in 0..splits {
        let i = rng.gen_range(0..cuts.len() - 1);
        let mid = (&cuts[i] + &cuts[i + 1]).half();
        cuts.insert(i + 1, mid);
    }
    cuts
}

pub fn random_factor(rng: &mut impl Rng) -> Factor {
    if rng.gen_bool(0.5) {
        let q = rng.gen_range(2..=MAX_RANDOM_ROTATION_ORDER);
        let power = rng.gen_range(1..q);
        Factor::PseudoRotation { q, power }
    } else {
        let splits = rng.gen_range(1..=MAX_SPLITS);
        Factor::Partition {
            src: random_partition(rng, splits),
            dst: random_partition(rng, splits),
        }
    }
}

/// A product of `complexity` random factors, determined by `seed`.
pub fn random_element(seed: u64, complexity: u32) -> CircleElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..complexity.max(1)).fold(CircleElement::identity(), |acc, _| {
        acc.compose(&random_factor(&mut rng).to_element())
    })
}
