//! Join and antijoin.
//!
//! `A ⋆ B` is the pushout of `A ⊗ I ⊗ B ← A ⊗ ∂I ⊗ B → A ⊕ B`, where the
//! right map collapses `a⊗0⊗b` to `ε(b)·a` and `a⊗1⊗b` to `ε(a)·b`. The
//! result has generators `L(a)`, `J(a.b)` in degree `|a| + |b| + 1`, and `R(b)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::colimit::pushout;
use crate::complex::{direct_sum, BasedComplex, ComplexBuilder};
use crate::error::{AdcError, Result};
use crate::map::{compose, ComplexMap, Iso};
use crate::name::GeneratorName;
use crate::ops::duality::{dual_co, dual_op};
use crate::ops::tensor::gray_tensor;
use crate::shapes::{interval_boundary, interval_oriented};

/// Orientation of the interval used in the defining pushout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `d(i) = 1 - 0`, the library convention.
    Standard,
    /// `d(i) = 0 - 1`.
    Reversed,
}

pub fn left_name(x: &GeneratorName) -> GeneratorName {
    GeneratorName::tagged("L", x.clone())
}

pub fn right_name(y: &GeneratorName) -> GeneratorName {
    GeneratorName::tagged("R", y.clone())
}

pub fn join_name(x: &GeneratorName, y: &GeneratorName) -> GeneratorName {
    GeneratorName::node("J", vec![x.clone(), y.clone()])
}

/// The join with the legs of its defining pushout.
#[derive(Clone, Debug)]
pub struct JoinPushout {
    pub complex: Arc<BasedComplex>,
    /// `A ⊗ I ⊗ B → A ⋆ B`, on generators `((a.v).b)`.
    pub tensor_leg: ComplexMap,
    /// `A ⊕ B → A ⋆ B`.
    pub sum_leg: ComplexMap,
}

pub fn join(a: &BasedComplex, b: &BasedComplex) -> Result<Arc<BasedComplex>> {
    Ok(join_pushout(a, b, Orientation::Standard)?.complex)
}

pub fn join_pushout(a: &BasedComplex, b: &BasedComplex, orientation: Orientation) -> Result<JoinPushout> {
    let i = interval_oriented(orientation);
    let di = interval_boundary();
    let cyl = gray_tensor(&*gray_tensor(a, &i)?, b)?;
    let ends = gray_tensor(&*gray_tensor(a, &di)?, b)?;
    let include = ComplexMap::by_name(&ends, &cyl)?;
    let sum = direct_sum(a, b)?;
    let collapse = ComplexMap::from_fn(&ends, &sum, |_, n| {
        let (xv, y) = n.as_pair().expect("pair");
        let (x, v) = xv.as_pair().expect("pair");
        let (qx, ix) = a.locate(x).expect("generator of A");
        let (qy, iy) = b.locate(y).expect("generator of B");
        match v.as_int() {
            Some(0) if qy == 0 => vec![(left_name(x), b.augmentation_of(iy).clone())],
            Some(1) if qx == 0 => vec![(right_name(y), a.augmentation_of(ix).clone())],
            _ => Vec::new(),
        }
    })?;
    let p = pushout(&include, &collapse)?;
    let raw = p.complex()?;
    let rename = |n: &GeneratorName| -> Option<GeneratorName> {
        if let Some(cell) = n.untag("L") {
            let (xv, y) = cell.as_pair()?;
            let (x, v) = xv.as_pair()?;
            (v.as_int().is_none()).then(|| join_name(x, y))
        } else {
            let inner = n.untag("R")?;
            inner.untag("L").map(left_name).or_else(|| inner.untag("R").map(right_name))
        }
    };
    if let Some((_, _, bad)) = raw.iter().find(|(_, _, n)| rename(n).is_none()) {
        return Err(AdcError::NonBasedPushout(format!("unexpected join survivor {bad}")));
    }
    let complex = Arc::new(raw.rename(|n| rename(n).expect("checked"))?);
    let to_named = ComplexMap::renaming(raw, &complex, |n| rename(n).expect("checked"))?;
    Ok(JoinPushout {
        tensor_leg: compose(p.leg_a()?, &to_named)?,
        sum_leg: compose(p.leg_b()?, &to_named)?,
        complex,
    })
}

/// The three-part presentation written out directly:
/// `d J(a.b) = J(da.b) + σ(-1)^|a| ([|a|=0]ε(a) R(b) - [|b|=0]ε(b) L(a)) - (-1)^|a| J(a.db)`
/// with `σ = 1` for the standard orientation and `σ = -1` for the reversed one.
pub fn join_closed_form(a: &BasedComplex, b: &BasedComplex, orientation: Orientation) -> Result<Arc<BasedComplex>> {
    let sigma = match orientation {
        Orientation::Standard => BigInt::one(),
        Orientation::Reversed => -BigInt::one(),
    };
    let sign = |p: usize| if p % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let mut out = ComplexBuilder::new();
    for (side, c) in [(0, a), (1, b)] {
        let wrap = |n: &GeneratorName| if side == 0 { left_name(n) } else { right_name(n) };
        for (q, i, x) in c.iter() {
            out.add_generator(q, wrap(x));
            if q == 0 {
                out.set_augmentation(wrap(x), c.augmentation_of(i).clone());
            } else {
                let t = c.boundary_terms(q, i).iter().map(|(&j, k)| (wrap(c.name(q - 1, j)), k.clone())).collect();
                out.set_boundary(wrap(x), t);
            }
        }
    }
    for (p, ia, x) in a.iter() {
        for (q, ib, y) in b.iter() {
            let mut terms = Vec::new();
            if p > 0 {
                for (&j, k) in a.boundary_terms(p, ia) {
                    terms.push((join_name(a.name(p - 1, j), y), k.clone()));
                }
            }
            if q > 0 {
                for (&j, k) in b.boundary_terms(q, ib) {
                    terms.push((join_name(x, b.name(q - 1, j)), -(k * sign(p))));
                }
            }
            let cross = &sigma * sign(p);
            if p == 0 {
                terms.push((right_name(y), &cross * a.augmentation_of(ia)));
            }
            if q == 0 {
                terms.push((left_name(x), -(&cross * b.augmentation_of(ib))));
            }
            terms.retain(|(_, k)| !k.is_zero());
            out.add_generator(p + q + 1, join_name(x, y));
            out.set_boundary(join_name(x, y), terms);
        }
    }
    out.build().map(Arc::new)
}

/// `f ⋆ g`: `L(x) ↦ L(f x)`, `R(y) ↦ R(g y)`, `J(x.y) ↦ J(f x . g y)`.
pub fn join_map(f: &ComplexMap, g: &ComplexMap) -> Result<ComplexMap> {
    let source = join(f.source(), g.source())?;
    let target = join(f.target(), g.target())?;
    join_map_between(f, g, &source, &target)
}

pub(crate) fn join_map_between(
    f: &ComplexMap,
    g: &ComplexMap,
    source: &Arc<BasedComplex>,
    target: &Arc<BasedComplex>,
) -> Result<ComplexMap> {
    ComplexMap::from_fn(source, target, |_, n| {
        if let Some(x) = n.untag("L") {
            return f.image_named(x).into_iter().map(|(u, k)| (left_name(&u), k)).collect();
        }
        if let Some(y) = n.untag("R") {
            return g.image_named(y).into_iter().map(|(u, k)| (right_name(&u), k)).collect();
        }
        let (x, y) = (&n.children()[0], &n.children()[1]);
        let fx = f.image_named(x);
        let gy = g.image_named(y);
        let mut out = Vec::new();
        for (u, a) in &fx {
            for (v, b) in &gy {
                out.push((join_name(u, v), a * b));
            }
        }
        out
    })
}

/// `A^op ⋆ B^op → (B ⋆ A)^op`: `L(a) ↦ R(a)`, `R(b) ↦ L(b)`, `J(a.b) ↦ J(b.a)`.
pub fn join_op_iso(a: &BasedComplex, b: &BasedComplex) -> Result<Iso> {
    let source = join(&dual_op(a), &dual_op(b))?;
    let target = dual_op(&*join(b, a)?);
    let swap = |n: &GeneratorName| {
        if let Some(x) = n.untag("L") {
            right_name(x)
        } else if let Some(y) = n.untag("R") {
            left_name(y)
        } else {
            join_name(&n.children()[1], &n.children()[0])
        }
    };
    Ok(Iso { forward: ComplexMap::renaming(&source, &target, swap)?, inverse: ComplexMap::renaming(&target, &source, swap)? })
}

/// `(A^co ⋆ B^co)^co`.
pub fn antijoin(a: &BasedComplex, b: &BasedComplex) -> Result<Arc<BasedComplex>> {
    Ok(dual_co(&*join(&dual_co(a), &dual_co(b))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{equal_presentation, validate_complex};
    use crate::map::validate_map;
    use crate::shapes::{cube, disk, oriental, unit, zero};

    #[test]
    fn pushout_matches_three_part_formula() {
        let shapes = [unit(), disk(1).unwrap(), disk(2).unwrap(), oriental(2).unwrap(), cube(2).unwrap()];
        for a in &shapes {
            for b in &shapes {
                for o in [Orientation::Standard, Orientation::Reversed] {
                    let via = join_pushout(a, b, o).unwrap();
                    assert_eq!(*via.complex, *join_closed_form(a, b, o).unwrap());
                    assert!(validate_complex(&via.complex).passed);
                    assert!(validate_map(&via.tensor_leg).passed);
                    assert!(validate_map(&via.sum_leg).passed);
                }
            }
        }
    }

    #[test]
    fn point_join_point_is_an_edge() {
        let j = join(&unit(), &unit()).unwrap();
        assert!(equal_presentation(&j, &oriental(1).unwrap()));
        let aj = antijoin(&unit(), &unit()).unwrap();
        assert_eq!(aj.graded_counts(), j.graded_counts());
    }

    #[test]
    fn empty_complex_is_join_unit() {
        let a = oriental(2).unwrap();
        let j = join(&a, &zero()).unwrap();
        assert_eq!(j.rename(|n| n.untag("L").unwrap().clone()).unwrap(), *a);
        let j = join(&zero(), &a).unwrap();
        assert_eq!(j.rename(|n| n.untag("R").unwrap().clone()).unwrap(), *a);
    }

    #[test]
    fn op_iso_is_verified() {
        let iso = join_op_iso(&oriental(1).unwrap(), &disk(2).unwrap()).unwrap();
        assert!(iso.verify().unwrap().passed);
    }
}
