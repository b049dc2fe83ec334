//! Seeded random Θ-specs and random complexes built from library shapes by
//! Steiner-preserving operations.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::complex::BasedComplex;
use crate::error::Result;
use crate::ops::duality::{dual, Duality};
use crate::ops::join::{antijoin, join};
use crate::ops::suspension::{antisuspension, suspension};
use crate::ops::tensor::gray_tensor;
use crate::shapes::{cube, disk, interval, oriental, unit, ThetaSpec};

pub use rand::SeedableRng;
pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A target-to-source pasting of 1 to 4 disks with every glue dimension
/// strictly below both neighbours and total dimension at most `max_total`.
pub fn random_theta_spec(rng: &mut Rng64, max_total: usize) -> ThetaSpec {
    loop {
        let len = rng.gen_range(1..=4);
        let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_total.min(3))).collect();
        let mut glue = Vec::new();
        let mut ok = true;
        for w in dims.windows(2) {
            let top = w[0].min(w[1]);
            if top == 0 {
                ok = false;
                break;
            }
            glue.push(rng.gen_range(0..top));
        }
        let spec = ThetaSpec::pasting(dims, glue);
        if ok && spec.total_dimension() <= max_total {
            return spec;
        }
    }
}

fn small_shape(rng: &mut Rng64) -> Result<Arc<BasedComplex>> {
    Ok(match rng.gen_range(0..5) {
        0 => unit(),
        1 => interval(),
        2 => disk(rng.gen_range(0..=2))?,
        3 => cube(rng.gen_range(1..=2))?,
        _ => oriental(rng.gen_range(1..=2))?,
    })
}

/// A library shape put through up to `steps` random operations among
/// tensor, join, antijoin, suspension, antisuspension and the three duals,
/// keeping at most `max_generators` generators.
pub fn random_steiner_complex(rng: &mut Rng64, steps: usize, max_generators: usize) -> Result<Arc<BasedComplex>> {
    let mut c = small_shape(rng)?;
    for _ in 0..steps {
        let other = small_shape(rng)?;
        let next = match rng.gen_range(0..7) {
            0 if rng.gen_bool(0.5) => gray_tensor(&c, &other)?,
            0 => gray_tensor(&other, &c)?,
            1 => join(&c, &other)?,
            2 => antijoin(&other, &c)?,
            3 => suspension(&c)?,
            4 => antisuspension(&c)?,
            _ => dual(&c, *[Duality::Op, Duality::Co, Duality::Coop].choose(rng).expect("non-empty")),
        };
        if next.total_generators() <= max_generators {
            c = next;
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::theta;
    use crate::steiner::is_steiner;

    #[test]
    fn generation_is_seeded() {
        let a: Vec<_> = (0..5).map(|_| random_theta_spec(&mut rng(7), 4)).collect();
        let b: Vec<_> = (0..5).map(|_| random_theta_spec(&mut rng(7), 4)).collect();
        assert_eq!(a, b);
        let x = random_steiner_complex(&mut rng(3), 4, 150).unwrap();
        let y = random_steiner_complex(&mut rng(3), 4, 150).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn random_complexes_are_steiner() {
        let mut r = rng(11);
        for _ in 0..10 {
            let c = random_steiner_complex(&mut r, 3, 150).unwrap();
            assert!(c.total_generators() <= 150);
            let rep = is_steiner(&c);
            assert!(rep.passed, "{rep}");
            let spec = random_theta_spec(&mut r, 4);
            assert!(spec.total_dimension() <= 4);
            assert!(is_steiner(&theta(&spec).unwrap()).passed, "{spec:?}");
        }
    }
}
