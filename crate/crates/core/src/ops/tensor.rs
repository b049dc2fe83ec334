//! Gray tensor product.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::chain::{add_term, Terms};
use crate::complex::{check_size, BasedComplex};
use crate::error::Result;
use crate::map::{ComplexMap, Iso};
use crate::name::GeneratorName;

/// `A ⊗ B` on basis pairs `(x.y)` with `d(x⊗y) = dx⊗y + (-1)^|x| x⊗dy`
/// and `ε(x⊗y) = ε(x)ε(y)`.
pub fn gray_tensor(a: &BasedComplex, b: &BasedComplex) -> Result<Arc<BasedComplex>> {
    check_size(a.total_generators().saturating_mul(b.total_generators()))?;
    let top = match (a.top_degree(), b.top_degree()) {
        (Some(p), Some(q)) => p + q + 1,
        _ => 0,
    };
    // Sorted pair names per degree, and the position of (p, i, j) in its degree.
    let mut basis: Vec<Vec<GeneratorName>> = Vec::with_capacity(top);
    let mut position: Vec<HashMap<(usize, usize, usize), usize>> = Vec::with_capacity(top);
    let mut members: Vec<Vec<(usize, usize, usize)>> = Vec::with_capacity(top);
    for n in 0..top {
        let mut entries = Vec::new();
        for p in 0..=n {
            let q = n - p;
            for (i, x) in a.generators(p).iter().enumerate() {
                for (j, y) in b.generators(q).iter().enumerate() {
                    entries.push((GeneratorName::pair(x.clone(), y.clone()), (p, i, j)));
                }
            }
        }
        entries.sort_by(|l, r| l.0.cmp(&r.0));
        position.push(entries.iter().enumerate().map(|(k, e)| (e.1, k)).collect());
        members.push(entries.iter().map(|e| e.1).collect());
        basis.push(entries.into_iter().map(|e| e.0).collect());
    }
    let mut boundary = Vec::with_capacity(top);
    for n in 0..top {
        let mut row = Vec::with_capacity(members[n].len());
        for &(p, i, j) in &members[n] {
            let mut t = Terms::new();
            if n > 0 {
                let q = n - p;
                if p > 0 {
                    for (&k, c) in a.boundary_terms(p, i) {
                        add_term(&mut t, position[n - 1][&(p - 1, k, j)], c.clone());
                    }
                }
                if q > 0 {
                    let sign = if p % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    for (&k, c) in b.boundary_terms(q, j) {
                        add_term(&mut t, position[n - 1][&(p, i, k)], c * &sign);
                    }
                }
            }
            row.push(t);
        }
        boundary.push(row);
    }
    let augmentation = members
        .first()
        .map(|m| m.iter().map(|&(_, i, j)| a.augmentation_of(i) * b.augmentation_of(j)).collect())
        .unwrap_or_default();
    BasedComplex::from_parts(basis, boundary, augmentation).map(Arc::new)
}

/// `f ⊗ g` between freshly built tensor complexes.
pub fn gray_tensor_map(f: &ComplexMap, g: &ComplexMap) -> Result<ComplexMap> {
    let source = gray_tensor(f.source(), g.source())?;
    let target = gray_tensor(f.target(), g.target())?;
    gray_tensor_map_between(f, g, &source, &target)
}

/// `f ⊗ g` with given endpoint complexes (which must be the tensor products).
pub fn gray_tensor_map_between(
    f: &ComplexMap,
    g: &ComplexMap,
    source: &Arc<BasedComplex>,
    target: &Arc<BasedComplex>,
) -> Result<ComplexMap> {
    ComplexMap::from_fn(source, target, |_, n| {
        let (x, y) = n.as_pair().expect("tensor generators are pairs");
        let fx = f.image_named(x);
        let gy = g.image_named(y);
        let mut out = Vec::with_capacity(fx.len() * gy.len());
        for (u, a) in &fx {
            for (v, b) in &gy {
                out.push((GeneratorName::pair(u.clone(), v.clone()), a * b));
            }
        }
        out
    })
}

/// `unit ⊗ A ≅ A`, sending `(pt.x)` to `x`.
pub fn left_unitor(a: &Arc<BasedComplex>) -> Result<Iso> {
    let unit = crate::shapes::unit();
    let t = gray_tensor(&unit, a)?;
    let forward = ComplexMap::renaming(&t, a, |n| n.as_pair().unwrap().1.clone())?;
    let inverse = ComplexMap::renaming(a, &t, |x| GeneratorName::pair(crate::shapes::point_name(), x.clone()))?;
    Ok(Iso { forward, inverse })
}

/// `A ⊗ unit ≅ A`, sending `(x.pt)` to `x`.
pub fn right_unitor(a: &Arc<BasedComplex>) -> Result<Iso> {
    let unit = crate::shapes::unit();
    let t = gray_tensor(a, &unit)?;
    let forward = ComplexMap::renaming(&t, a, |n| n.as_pair().unwrap().0.clone())?;
    let inverse = ComplexMap::renaming(a, &t, |x| GeneratorName::pair(x.clone(), crate::shapes::point_name()))?;
    Ok(Iso { forward, inverse })
}

/// `((x.y).z) ↦ (x.(y.z))`.
pub fn reassociate(n: &GeneratorName) -> GeneratorName {
    let (xy, z) = n.as_pair().expect("pair");
    let (x, y) = xy.as_pair().expect("nested pair");
    GeneratorName::pair(x.clone(), GeneratorName::pair(y.clone(), z.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{equal_presentation, validate_complex};
    use crate::map::{identity_map, validate_map};
    use crate::shapes::{interval, oriental, unit};

    fn name(s: &str) -> GeneratorName {
        GeneratorName::parse(s).unwrap()
    }

    /// Square cell differential by hand: d(ι⊗ι) = 1⊗ι − 0⊗ι − ι⊗1 + ι⊗0.
    #[test]
    fn square_top_cell_follows_koszul_rule() {
        let sq = gray_tensor(&interval(), &interval()).unwrap();
        assert_eq!(sq.graded_counts(), [(0, 4), (1, 4), (2, 1)].into());
        let top = sq.generator(&name("(i.i)")).unwrap();
        let d = sq.named_terms(&sq.d(&top).unwrap());
        let expect: Vec<(GeneratorName, BigInt)> = vec![
            (name("(0.i)"), BigInt::from(-1)),
            (name("(1.i)"), BigInt::from(1)),
            (name("(i.0)"), BigInt::from(1)),
            (name("(i.1)"), BigInt::from(-1)),
        ];
        assert_eq!(d, expect);
        assert!(validate_complex(&sq).passed);
    }

    #[test]
    fn unit_laws() {
        let a = oriental(2).unwrap();
        let l = left_unitor(&a).unwrap();
        let r = right_unitor(&a).unwrap();
        assert!(l.verify().unwrap().passed);
        assert!(r.verify().unwrap().passed);
        assert!(equal_presentation(&gray_tensor(&unit(), &a).unwrap().rename(|n| n.as_pair().unwrap().1.clone()).unwrap(), &a));
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let i = interval();
        let id = identity_map(&i);
        let t = gray_tensor_map(&id, &id).unwrap();
        assert!(t.is_identity());
        assert!(validate_map(&t).passed);
    }

    #[test]
    fn zero_annihilates() {
        let z = Arc::new(BasedComplex::zero());
        assert!(gray_tensor(&z, &interval()).unwrap().is_empty());
    }
}
