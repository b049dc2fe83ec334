//! The op, co and coop involutions and their coherence isomorphisms.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::chain::{scaled, Terms};
use crate::complex::BasedComplex;
use crate::error::Result;
use crate::map::{compose_all, ComplexMap, Iso};
use crate::name::GeneratorName;
use crate::ops::tensor::{gray_tensor, gray_tensor_map_between};
use crate::shapes::{cube, interval, word_letters, word_name};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Duality {
    /// Reverses odd-dimensional cells: `d' = (-1)^n d` in degree n.
    Op,
    /// Reverses even-dimensional cells: `d' = (-1)^(n+1) d` in degree n.
    Co,
    /// Reverses all cells: `d' = -d`.
    Coop,
}

impl Duality {
    fn negates(self, degree: usize) -> bool {
        match self {
            Duality::Op => degree % 2 == 1,
            Duality::Co => degree % 2 == 0,
            Duality::Coop => true,
        }
    }
}

pub fn dual(a: &BasedComplex, which: Duality) -> Arc<BasedComplex> {
    let minus = -BigInt::one();
    let boundary: Vec<Vec<Terms>> = (0..a.num_degrees())
        .map(|q| {
            (0..a.rank(q))
                .map(|i| {
                    let t = a.boundary_terms(q, i);
                    if which.negates(q) { scaled(t, &minus) } else { t.clone() }
                })
                .collect()
        })
        .collect();
    let basis = (0..a.num_degrees()).map(|q| a.generators(q).to_vec()).collect();
    let aug = (0..a.rank(0)).map(|i| a.augmentation_of(i).clone()).collect();
    Arc::new(BasedComplex::from_parts(basis, boundary, aug).expect("same basis"))
}

pub fn dual_op(a: &BasedComplex) -> Arc<BasedComplex> {
    dual(a, Duality::Op)
}

pub fn dual_co(a: &BasedComplex) -> Arc<BasedComplex> {
    dual(a, Duality::Co)
}

pub fn dual_coop(a: &BasedComplex) -> Arc<BasedComplex> {
    dual(a, Duality::Coop)
}

/// A map `A → B` read as the same matrix `A^dual → B^dual`.
pub fn dual_map(f: &ComplexMap, which: Duality) -> Result<ComplexMap> {
    f.reinterpret(&dual(f.source(), which), &dual(f.target(), which))
}

fn swap_iso(a: &BasedComplex, b: &BasedComplex, which: Duality) -> Result<Iso> {
    let source = gray_tensor(&dual(a, which), &dual(b, which))?;
    let target = dual(&*gray_tensor(b, a)?, which);
    let swap = |n: &GeneratorName| {
        let (x, y) = n.as_pair().expect("pair");
        GeneratorName::pair(y.clone(), x.clone())
    };
    let forward = ComplexMap::renaming(&source, &target, swap)?;
    let inverse = ComplexMap::renaming(&target, &source, swap)?;
    Ok(Iso { forward, inverse })
}

/// `A^op ⊗ B^op → (B ⊗ A)^op`, `(x.y) ↦ (y.x)`.
pub fn swap_iso_op(a: &BasedComplex, b: &BasedComplex) -> Result<Iso> {
    swap_iso(a, b, Duality::Op)
}

/// `A^co ⊗ B^co → (B ⊗ A)^co`, `(x.y) ↦ (y.x)`.
pub fn swap_iso_co(a: &BasedComplex, b: &BasedComplex) -> Result<Iso> {
    swap_iso(a, b, Duality::Co)
}

/// `interval^op → interval` swapping the vertices; `interval^co = interval`.
pub fn interval_duality(which: Duality) -> Result<Iso> {
    let i = interval();
    let di = dual(&i, which);
    let flip = matches!(which, Duality::Op | Duality::Coop);
    let rule = move |n: &GeneratorName| match n.as_int() {
        Some(v) if flip => GeneratorName::int(1 - v),
        _ => n.clone(),
    };
    Ok(Iso { forward: ComplexMap::renaming(&di, &i, rule)?, inverse: ComplexMap::renaming(&i, &di, rule)? })
}

/// `(□ⁿ)^op ≅ □ⁿ` or `(□ⁿ)^co ≅ □ⁿ`, assembled from swap isos and the interval
/// duality through `□ⁿ = □ⁿ⁻¹ ⊗ I`.
pub fn cube_selfduality(n: usize, which: Duality) -> Result<Iso> {
    assert!(which != Duality::Coop, "coop self-duality is the composite of op and co");
    let c = cube(n)?;
    let dc = dual(&c, which);
    if n == 0 {
        return Ok(Iso {
            forward: ComplexMap::by_name(&dc, &c)?,
            inverse: ComplexMap::by_name(&c, &dc)?,
        });
    }
    let prev = cube(n - 1)?;
    let i = interval();
    // (□ⁿ)^dual → (□ⁿ⁻¹ ⊗ I)^dual by splitting off the last letter.
    let split = gray_tensor(&prev, &i)?;
    let split_dual = dual(&split, which);
    let unsplit_last = |w: &GeneratorName| {
        let mut letters = word_letters(w);
        let last = letters.pop().expect("non-empty word");
        GeneratorName::pair(word_name(letters), last)
    };
    let step1 = ComplexMap::renaming(&dc, &split_dual, unsplit_last)?;
    let swap = swap_iso(&i, &prev, which)?;
    let inner = cube_selfduality(n - 1, which)?;
    let idual = interval_duality(which)?;
    let front = gray_tensor(&i, &prev)?;
    let step3 = gray_tensor_map_between(&idual.forward, &inner.forward, swap.forward.source(), &front)?;
    let join_first = |n: &GeneratorName| {
        let (l, w) = n.as_pair().expect("pair");
        let mut letters = vec![l.clone()];
        letters.extend(word_letters(w));
        word_name(letters)
    };
    let step4 = ComplexMap::renaming(&front, &c, join_first)?;
    let forward = compose_all(&[&step1, &swap.inverse, &step3, &step4])?;

    // Inverse through the same chain of isos.
    let back1 = ComplexMap::renaming(&c, &front, |w| {
        let letters = word_letters(w);
        GeneratorName::pair(letters[0].clone(), word_name(letters[1..].to_vec()))
    })?;
    let back2 = gray_tensor_map_between(&idual.inverse, &inner.inverse, &front, swap.forward.source())?;
    let back4 = ComplexMap::renaming(&split_dual, &dc, |n| {
        let (w, l) = n.as_pair().expect("pair");
        let mut letters = word_letters(w);
        letters.push(l.clone());
        word_name(letters)
    })?;
    let inverse = compose_all(&[&back1, &back2, &swap.forward, &back4])?;
    Ok(Iso { forward, inverse })
}

/// Closed form of the cube self-duality on words: reverse the word, and for
/// `op` also exchange the letters 0 and 1.
pub fn cube_selfduality_word(w: &GeneratorName, which: Duality) -> GeneratorName {
    let mut letters = word_letters(w);
    letters.reverse();
    if which == Duality::Op {
        for l in &mut letters {
            if let Some(v) = l.as_int() {
                *l = GeneratorName::int(1 - v);
            }
        }
    }
    word_name(letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::validate_complex;
    use crate::map::validate_map;
    use crate::shapes::{disk, oriental};

    #[test]
    fn duals_are_involutions_that_commute() {
        for a in [disk(3).unwrap(), oriental(3).unwrap(), cube(2).unwrap()] {
            assert_eq!(*dual_op(&dual_op(&a)), *a);
            assert_eq!(*dual_co(&dual_co(&a)), *a);
            assert_eq!(*dual_op(&dual_co(&a)), *dual_co(&dual_op(&a)));
            assert_eq!(*dual_coop(&a), *dual_op(&dual_co(&a)));
            assert!(validate_complex(&dual_op(&a)).passed);
        }
    }

    #[test]
    fn op_negates_odd_degrees() {
        let d2 = disk(2).unwrap();
        let op = dual_op(&d2);
        assert_eq!(op.boundary_terms(2, 0), d2.boundary_terms(2, 0));
        assert_eq!(*op.boundary_terms(1, 0), scaled(d2.boundary_terms(1, 0), &-BigInt::one()));
        assert_eq!(*dual_co(&interval()), *interval());
    }

    #[test]
    fn interval_duality_swaps_vertices() {
        let iso = cube_selfduality(1, Duality::Op).unwrap();
        assert!(iso.verify().unwrap().passed);
        let w0 = word_name(vec![GeneratorName::int(0)]);
        assert_eq!(iso.forward.image_named(&w0), vec![(word_name(vec![GeneratorName::int(1)]), BigInt::one())]);
    }

    #[test]
    fn cube_selfduality_matches_word_reversal() {
        for which in [Duality::Op, Duality::Co] {
            for n in 0..=4 {
                let iso = cube_selfduality(n, which).unwrap();
                assert!(iso.verify().unwrap().passed, "n={n} {which:?}");
                let c = cube(n).unwrap();
                for (_, _, w) in c.iter() {
                    assert_eq!(iso.forward.image_named(w), vec![(cube_selfduality_word(w, which), BigInt::one())]);
                }
            }
        }
    }

    #[test]
    fn swap_isos_on_small_pairs() {
        let a = oriental(1).unwrap();
        let b = oriental(2).unwrap();
        for iso in [swap_iso_op(&a, &b).unwrap(), swap_iso_co(&a, &b).unwrap()] {
            assert!(validate_map(&iso.forward).passed);
            assert!(iso.verify().unwrap().passed);
        }
    }
}
