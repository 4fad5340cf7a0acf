//! Seeded instance generation.
//!
//! [`generate`] is a pure function of its [`GenSpec`]: the same spec (seed
//! included) yields the same instance on every platform, byte for byte
//! through serialization. Trees are emitted first so that component 0 is
//! always the designated tree.

use num::bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::space::{Component, Graft, Instance, PointRef};

/// Shape parameters for [`generate`]. All ranges are inclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub seed: u64,
    /// Number of tree components; at least 1 (the designated tree).
    pub trees: usize,
    pub tree_size: (usize, usize),
    pub chains: usize,
    /// Probability that a chain is two-sided, as (numerator, denominator).
    pub two_sided_odds: (u32, u32),
    pub grafts_per_chain: (usize, usize),
    pub graft_size: (usize, usize),
    /// Anchors are drawn from `-R..=R` on two-sided chains, `0..=R` on
    /// one-sided ones.
    pub anchor_range: u64,
    pub alpha: Rational,
}

impl GenSpec {
    pub fn new(seed: u64) -> Self {
        GenSpec {
            seed,
            trees: 1,
            tree_size: (1, 8),
            chains: 1,
            two_sided_odds: (1, 2),
            grafts_per_chain: (0, 2),
            graft_size: (1, 4),
            anchor_range: 8,
            alpha: Rational::new(1, 2).expect("2 is nonzero"),
        }
    }
}

fn check_range(name: &str, (lo, hi): (usize, usize), min_lo: usize) -> Result<()> {
    if lo < min_lo || lo > hi {
        return Err(Error::InvalidArgument(format!(
            "{name} range {lo}..={hi} is empty or below {min_lo}"
        )));
    }
    Ok(())
}

/// A parent array whose node 0 is the root; later nodes attach to an
/// earlier one, biased a quarter of the time toward the previous node to
/// produce deeper paths.
fn random_parent_array(rng: &mut ChaCha8Rng, size: usize) -> Vec<usize> {
    let mut parent = vec![0usize; size];
    for (i, slot) in parent.iter_mut().enumerate().skip(1) {
        *slot = if i > 1 && rng.gen_ratio(1, 4) {
            i - 1
        } else {
            rng.gen_range(0..i)
        };
    }
    parent
}

/// Generates a valid multi-fixed-point instance from `spec`; with
/// `spec.trees == 1` the result is valid in single-fixed-point mode too.
pub fn generate(spec: &GenSpec) -> Result<Instance> {
    if spec.trees == 0 {
        return Err(Error::InvalidArgument(
            "an instance needs at least one tree (the designated fixed point)".into(),
        ));
    }
    check_range("tree size", spec.tree_size, 1)?;
    check_range("grafts per chain", spec.grafts_per_chain, 0)?;
    check_range("graft size", spec.graft_size, 1)?;
    let (odds_num, odds_den) = spec.two_sided_odds;
    if odds_den == 0 || odds_num > odds_den {
        return Err(Error::InvalidArgument(format!(
            "two-sided odds {odds_num}/{odds_den} are not a probability"
        )));
    }
    if !spec.alpha.is_positive() || spec.alpha >= Rational::one() {
        return Err(Error::InvalidArgument(format!(
            "contraction factor {} is not strictly between 0 and 1",
            spec.alpha
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut components = Vec::with_capacity(spec.trees + spec.chains);
    for _ in 0..spec.trees {
        let size = rng.gen_range(spec.tree_size.0..=spec.tree_size.1);
        components.push(Component::Tree { parent: random_parent_array(&mut rng, size) });
    }
    for _ in 0..spec.chains {
        let two_sided = odds_num > 0 && rng.gen_ratio(odds_num, odds_den);
        let count = rng.gen_range(spec.grafts_per_chain.0..=spec.grafts_per_chain.1);
        let range = spec.anchor_range as i64;
        let grafts = (0..count)
            .map(|_| {
                let anchor = if two_sided {
                    rng.gen_range(-range..=range)
                } else {
                    rng.gen_range(0..=range)
                };
                let size = rng.gen_range(spec.graft_size.0..=spec.graft_size.1);
                Graft {
                    anchor: BigInt::from(anchor),
                    parent: random_parent_array(&mut rng, size),
                }
            })
            .collect();
        components.push(Component::Chain { two_sided, grafts });
    }
    Ok(Instance::new(
        spec.alpha.clone(),
        components,
        PointRef { component: 0, node: 0 },
    ))
}
