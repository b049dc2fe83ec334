//! Suspension and antisuspension.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::colimit::pushout;
use crate::complex::{BasedComplex, ComplexBuilder};
use crate::error::{AdcError, Result};
use crate::map::{ComplexMap, Iso};
use crate::name::GeneratorName;
use crate::ops::duality::{dual_co, dual_coop};
use crate::ops::tensor::gray_tensor;
use crate::shapes::{interval, interval_boundary};

pub fn bottom(v: u64) -> GeneratorName {
    GeneratorName::sym(if v == 0 { "b0" } else { "b1" })
}

pub fn susp_name(x: &GeneratorName) -> GeneratorName {
    GeneratorName::tagged("S", x.clone())
}

/// `S(A)`: generators `b0`, `b1` in degree 0 and `S(x)` in degree `|x| + 1`,
/// with `d(S x) = S(dx)` for `|x| ≥ 1`, `d(S x) = ε(x)(b1 - b0)` for vertices,
/// and `ε(b0) = ε(b1) = 1`.
pub fn suspension(a: &BasedComplex) -> Result<Arc<BasedComplex>> {
    let mut b = ComplexBuilder::new();
    for v in 0..2 {
        b.add_generator(0, bottom(v));
        b.set_augmentation(bottom(v), BigInt::one());
    }
    for (q, i, x) in a.iter() {
        b.add_generator(q + 1, susp_name(x));
        let terms = if q == 0 {
            let e = a.augmentation_of(i).clone();
            vec![(bottom(1), e.clone()), (bottom(0), -e)]
        } else {
            a.boundary_terms(q, i)
                .iter()
                .map(|(&j, k)| (susp_name(a.name(q - 1, j)), k.clone()))
                .collect()
        };
        b.set_boundary(susp_name(x), terms);
    }
    b.build().map(Arc::new)
}

/// `S(A)` computed as the pushout `A ⊗ I ⊔_{A ⊗ ∂I} ∂I` and renamed to the
/// closed-form names.
pub fn suspension_via_pushout(a: &Arc<BasedComplex>) -> Result<Arc<BasedComplex>> {
    let i = interval();
    let di = interval_boundary();
    let cyl = gray_tensor(a, &i)?;
    let ends = gray_tensor(a, &di)?;
    let include = ComplexMap::by_name(&ends, &cyl)?;
    let collapse = ComplexMap::from_fn(&ends, &di, |q, n| {
        let (x, v) = n.as_pair().expect("pair");
        if q == 0 {
            let (_, k) = a.locate(x).expect("generator of A");
            vec![(v.clone(), a.augmentation_of(k).clone())]
        } else {
            Vec::new()
        }
    })?;
    let p = pushout(&include, &collapse)?;
    let c = p.complex()?;
    let renamed = c.rename(|n| {
        if let Some(inner) = n.untag("L") {
            let (x, _) = inner.as_pair().expect("surviving cylinder cells are x⊗ι");
            susp_name(x)
        } else {
            let v = n.untag("R").and_then(GeneratorName::as_int).expect("endpoint");
            bottom(v)
        }
    })?;
    if renamed.graded_counts() != suspension(a)?.graded_counts() {
        return Err(AdcError::NonBasedPushout("suspension pushout has unexpected survivors".into()));
    }
    Ok(Arc::new(renamed))
}

/// `S(f)`: `S x ↦ S(f x)`, `b_v ↦ b_v`.
pub fn suspension_map(f: &ComplexMap) -> Result<ComplexMap> {
    let source = suspension(f.source())?;
    let target = suspension(f.target())?;
    suspension_map_between(f, &source, &target)
}

pub(crate) fn suspension_map_between(
    f: &ComplexMap,
    source: &Arc<BasedComplex>,
    target: &Arc<BasedComplex>,
) -> Result<ComplexMap> {
    ComplexMap::from_fn(source, target, |_, n| match n.untag("S") {
        Some(x) => f.image_named(x).into_iter().map(|(y, k)| (susp_name(&y), k)).collect(),
        None => vec![(n.clone(), BigInt::one())],
    })
}

/// `S̄(A) = S(A^co)^co`.
pub fn antisuspension(a: &BasedComplex) -> Result<Arc<BasedComplex>> {
    Ok(dual_co(&*suspension(&dual_co(a))?))
}

/// The identity on names, `S(A) → S̄(A^coop)`, with its inverse.
pub fn susp_coop_iso(a: &BasedComplex) -> Result<Iso> {
    let s = suspension(a)?;
    let t = antisuspension(&dual_coop(a))?;
    Ok(Iso { forward: ComplexMap::by_name(&s, &t)?, inverse: ComplexMap::by_name(&t, &s)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::equal_presentation;
    use crate::shapes::{boundary_disk, disk, oriental, unit, zero};

    #[test]
    fn suspension_of_point_is_interval_shaped() {
        let s = suspension(&unit()).unwrap();
        assert_eq!(*s, *disk(1).unwrap());
        assert!(equal_presentation(&s, &interval()));
        assert_eq!(*suspension(&boundary_disk(1).unwrap()).unwrap(), *boundary_disk(2).unwrap());
        assert!(suspension(&zero()).unwrap().graded_counts() == [(0, 2)].into());
    }

    #[test]
    fn pushout_form_agrees_with_closed_form() {
        for a in [unit(), oriental(2).unwrap(), disk(2).unwrap(), crate::shapes::cube(2).unwrap()] {
            assert_eq!(*suspension_via_pushout(&a).unwrap(), *suspension(&a).unwrap());
        }
    }

    #[test]
    fn antisuspension_negates_higher_differentials() {
        let a = oriental(1).unwrap();
        let s = suspension(&a).unwrap();
        let sb = antisuspension(&a).unwrap();
        assert_eq!(s.graded_counts(), sb.graded_counts());
        assert_eq!(s.boundary_terms(1, 0), sb.boundary_terms(1, 0));
        assert_eq!(*sb.boundary_terms(2, 0), crate::chain::scaled(s.boundary_terms(2, 0), &-BigInt::one()));
        assert_eq!(*antisuspension(&unit()).unwrap(), *disk(1).unwrap());
    }

    #[test]
    fn coop_iso_is_identity_on_names() {
        let iso = susp_coop_iso(&oriental(3).unwrap()).unwrap();
        assert!(iso.verify().unwrap().passed);
    }
}
