//! Maps of based complexes.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::chain::{add_scaled, add_term, is_nonneg, single, Chain, Terms};
use crate::complex::{format_terms, BasedComplex};
use crate::error::{AdcError, Result};
use crate::name::GeneratorName;
use crate::report::CheckReport;

/// Degreewise integer matrix between two based complexes, stored sparsely as
/// the image of each source generator.
#[derive(Clone, Debug)]
pub struct ComplexMap {
    source: Arc<BasedComplex>,
    target: Arc<BasedComplex>,
    images: Vec<Vec<Terms>>,
}

impl PartialEq for ComplexMap {
    fn eq(&self, other: &Self) -> bool {
        same_complex(&self.source, &other.source)
            && same_complex(&self.target, &other.target)
            && self.images == other.images
    }
}

impl Eq for ComplexMap {}

pub(crate) fn same_complex(a: &Arc<BasedComplex>, b: &Arc<BasedComplex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl ComplexMap {
    pub(crate) fn from_images(
        source: Arc<BasedComplex>,
        target: Arc<BasedComplex>,
        images: Vec<Vec<Terms>>,
    ) -> ComplexMap {
        debug_assert_eq!(images.len(), source.num_degrees());
        ComplexMap { source, target, images }
    }

    /// Builds a map from a rule on names. Each image term must name a target
    /// generator of the same degree.
    pub fn from_fn<F>(source: &Arc<BasedComplex>, target: &Arc<BasedComplex>, mut rule: F) -> Result<ComplexMap>
    where
        F: FnMut(usize, &GeneratorName) -> Vec<(GeneratorName, BigInt)>,
    {
        let mut images = Vec::with_capacity(source.num_degrees());
        for q in 0..source.num_degrees() {
            let mut row = Vec::with_capacity(source.rank(q));
            for name in source.generators(q) {
                let mut t = Terms::new();
                for (n, k) in rule(q, name) {
                    match target.locate(&n) {
                        Some((p, j)) if p == q => add_term(&mut t, j, k),
                        Some((p, _)) => {
                            return Err(AdcError::DegreeMismatch(format!(
                                "image of {name} contains {n} of degree {p}, expected {q}"
                            )))
                        }
                        None => {
                            return Err(AdcError::Malformed(format!(
                                "image of {name} references missing generator {n}"
                            )))
                        }
                    }
                }
                row.push(t);
            }
            images.push(row);
        }
        Ok(ComplexMap { source: source.clone(), target: target.clone(), images })
    }

    /// Sends every generator to the generator of the same name.
    pub fn by_name(source: &Arc<BasedComplex>, target: &Arc<BasedComplex>) -> Result<ComplexMap> {
        Self::from_fn(source, target, |_, n| vec![(n.clone(), BigInt::one())])
    }

    /// Sends every generator `x` to `rename(x)` with coefficient 1.
    pub fn renaming(
        source: &Arc<BasedComplex>,
        target: &Arc<BasedComplex>,
        rename: impl Fn(&GeneratorName) -> GeneratorName,
    ) -> Result<ComplexMap> {
        Self::from_fn(source, target, |_, n| vec![(rename(n), BigInt::one())])
    }

    /// Map given by an explicit list of images; unlisted generators go to 0.
    pub fn from_assignment(
        source: &Arc<BasedComplex>,
        target: &Arc<BasedComplex>,
        assignment: &[(GeneratorName, Vec<(GeneratorName, BigInt)>)],
    ) -> Result<ComplexMap> {
        let mut table = std::collections::HashMap::new();
        for (n, terms) in assignment {
            if !source.contains(n) {
                return Err(AdcError::Malformed(format!("assignment for unknown generator {n}")));
            }
            if table.insert(n.clone(), terms.clone()).is_some() {
                return Err(AdcError::Malformed(format!("generator {n} assigned twice")));
            }
        }
        Self::from_fn(source, target, |_, n| table.get(n).cloned().unwrap_or_default())
    }

    pub fn source(&self) -> &Arc<BasedComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BasedComplex> {
        &self.target
    }

    pub fn image_terms(&self, degree: usize, index: usize) -> &Terms {
        &self.images[degree][index]
    }

    pub fn image(&self, name: &GeneratorName) -> Option<Chain> {
        self.source
            .locate(name)
            .map(|(q, i)| Chain::from_terms(q, self.images[q][i].clone()))
    }

    /// Image of a name as named terms; panics if the name is not a source generator.
    pub fn image_named(&self, name: &GeneratorName) -> Vec<(GeneratorName, BigInt)> {
        let c = self.image(name).unwrap_or_else(|| panic!("{name} is not a source generator"));
        self.target.named_terms(&c)
    }

    pub fn apply(&self, chain: &Chain) -> Chain {
        Chain::from_terms(chain.degree, self.apply_terms(chain.degree, &chain.terms))
    }

    pub(crate) fn apply_terms(&self, degree: usize, terms: &Terms) -> Terms {
        let mut out = Terms::new();
        if degree < self.images.len() {
            for (&i, k) in terms {
                add_scaled(&mut out, &self.images[degree][i], k);
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        same_complex(&self.source, &self.target)
            && self
                .images
                .iter()
                .all(|row| row.iter().enumerate().all(|(i, t)| *t == single(i)))
    }

    /// Same matrix, reinterpreted between complexes with the same graded counts.
    pub fn reinterpret(&self, source: &Arc<BasedComplex>, target: &Arc<BasedComplex>) -> Result<ComplexMap> {
        let same_shape = |a: &BasedComplex, b: &BasedComplex| {
            a.num_degrees() == b.num_degrees() && (0..a.num_degrees()).all(|q| a.rank(q) == b.rank(q))
        };
        if !same_shape(source, &self.source) || !same_shape(target, &self.target) {
            return Err(AdcError::DegreeMismatch("reinterpreted endpoints differ in shape".into()));
        }
        Ok(ComplexMap { source: source.clone(), target: target.clone(), images: self.images.clone() })
    }

    pub fn describe(&self, name: &GeneratorName) -> String {
        match self.source.locate(name) {
            Some((q, i)) => format_terms(&self.target, q, &self.images[q][i]),
            None => "?".into(),
        }
    }
}

pub fn identity_map(c: &Arc<BasedComplex>) -> ComplexMap {
    let images = (0..c.num_degrees()).map(|q| (0..c.rank(q)).map(single).collect()).collect();
    ComplexMap { source: c.clone(), target: c.clone(), images }
}

/// `g ∘ f`: apply `f` first.
pub fn compose(f: &ComplexMap, g: &ComplexMap) -> Result<ComplexMap> {
    if !same_complex(&f.target, &g.source) {
        return Err(AdcError::SourceTargetMismatch);
    }
    let images = f
        .images
        .iter()
        .enumerate()
        .map(|(q, row)| row.iter().map(|t| g.apply_terms(q, t)).collect())
        .collect();
    Ok(ComplexMap { source: f.source.clone(), target: g.target.clone(), images })
}

/// Composes a non-empty sequence left to right.
pub fn compose_all(maps: &[&ComplexMap]) -> Result<ComplexMap> {
    let (first, rest) = maps.split_first().expect("at least one map");
    rest.iter().try_fold((*first).clone(), |acc, g| compose(&acc, g))
}

/// Checks the chain rule, preservation of ε, and non-negativity of images.
pub fn validate_map(f: &ComplexMap) -> CheckReport {
    let (s, t) = (&*f.source, &*f.target);
    let mut r = CheckReport::new();
    let mut chain_rule = None;
    'outer: for q in 1..s.num_degrees() {
        for i in 0..s.rank(q) {
            let lhs = f.apply_terms(q - 1, s.boundary_terms(q, i));
            let rhs = if q < t.num_degrees() { t.d_terms(q, &f.images[q][i]) } else { Terms::new() };
            if lhs != rhs {
                chain_rule = Some(format!(
                    "{}: f(d) = {}, d(f) = {}",
                    s.name(q, i),
                    format_terms(t, q - 1, &lhs),
                    format_terms(t, q - 1, &rhs)
                ));
                break 'outer;
            }
        }
    }
    r.push("CHAIN_RULE", chain_rule);
    let aug = (0..s.rank(0)).find_map(|i| {
        let e = t.augment_terms(&f.images[0][i]);
        (e != *s.augmentation_of(i)).then(|| format!("{}: ε(f) = {e}, ε = {}", s.name(0, i), s.augmentation_of(i)))
    });
    r.push("AUG_PRESERVED", aug);
    let pos = s.iter().find_map(|(q, i, n)| {
        (!is_nonneg(&f.images[q][i])).then(|| format!("{n} ↦ {}", format_terms(t, q, &f.images[q][i])))
    });
    r.push("POSITIVITY", pos);
    r
}

/// Checks that `g∘f` and `f∘g` are both identities.
pub fn verify_mutually_inverse(f: &ComplexMap, g: &ComplexMap) -> Result<CheckReport> {
    if !same_complex(&f.source, &g.target) || !same_complex(&f.target, &g.source) {
        return Err(AdcError::SourceTargetMismatch);
    }
    let mut r = CheckReport::new();
    for (label, m) in [("LEFT_INVERSE", compose(f, g)?), ("RIGHT_INVERSE", compose(g, f)?)] {
        let witness = first_non_identity(&m);
        r.push(label, witness);
    }
    Ok(r)
}

/// Name of the first generator not fixed by an endomap, with its image.
pub fn first_non_identity(m: &ComplexMap) -> Option<String> {
    m.source.iter().find_map(|(q, i, n)| {
        (m.images[q][i] != single(i)).then(|| format!("{n} ↦ {}", format_terms(&m.target, q, &m.images[q][i])))
    })
}

/// Name of the first generator on which two parallel maps differ.
pub fn first_difference(f: &ComplexMap, g: &ComplexMap) -> Option<String> {
    if !same_complex(&f.source, &g.source) || !same_complex(&f.target, &g.target) {
        return Some("maps are not parallel".into());
    }
    f.source.iter().find_map(|(q, i, n)| {
        (f.images[q][i] != g.images[q][i]).then(|| {
            format!(
                "{n}: {} vs {}",
                format_terms(&f.target, q, &f.images[q][i]),
                format_terms(&g.target, q, &g.images[q][i])
            )
        })
    })
}

/// An isomorphism with its inverse.
#[derive(Clone, Debug)]
pub struct Iso {
    pub forward: ComplexMap,
    pub inverse: ComplexMap,
}

impl Iso {
    pub fn verify(&self) -> Result<CheckReport> {
        let mut r = CheckReport::new();
        r.merge("forward", validate_map(&self.forward));
        r.merge("inverse", validate_map(&self.inverse));
        r.merge("", verify_mutually_inverse(&self.forward, &self.inverse)?);
        Ok(r)
    }

    pub fn flip(&self) -> Iso {
        Iso { forward: self.inverse.clone(), inverse: self.forward.clone() }
    }
}

/// Renames a complex and returns the renamed copy with the renaming iso.
pub fn rename_iso(
    c: &Arc<BasedComplex>,
    rename: impl Fn(&GeneratorName) -> GeneratorName,
) -> Result<(Arc<BasedComplex>, Iso)> {
    let renamed = Arc::new(c.rename(&rename)?);
    let forward = ComplexMap::renaming(c, &renamed, &rename)?;
    let mut back = std::collections::HashMap::new();
    for (_, _, n) in c.iter() {
        back.insert(rename(n), n.clone());
    }
    let inverse = ComplexMap::renaming(&renamed, c, |n| back[n].clone())?;
    Ok((renamed, Iso { forward, inverse }))
}

/// Positional iso between two complexes with equal presentations.
pub fn positional_iso(a: &Arc<BasedComplex>, b: &Arc<BasedComplex>) -> Result<Iso> {
    if !crate::complex::equal_presentation(a, b) {
        return Err(AdcError::Malformed("presentations differ".into()));
    }
    let forward = identity_map(a).reinterpret(a, b)?;
    let inverse = identity_map(b).reinterpret(b, a)?;
    Ok(Iso { forward, inverse })
}

/// `f - g` on one generator, used as a colimit relation.
pub(crate) fn difference_terms(f: &ComplexMap, g: &ComplexMap, q: usize, i: usize) -> Terms {
    let mut t = f.images[q][i].clone();
    add_scaled(&mut t, &g.images[q][i], &-BigInt::one());
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ComplexBuilder;

    fn interval() -> Arc<BasedComplex> {
        let mut b = ComplexBuilder::new();
        let (v0, v1, e) = (GeneratorName::int(0), GeneratorName::int(1), GeneratorName::sym("i"));
        b.add_generator(0, v0.clone()).set_augmentation(v0.clone(), BigInt::one());
        b.add_generator(0, v1.clone()).set_augmentation(v1.clone(), BigInt::one());
        b.add_generator(1, e.clone()).set_boundary(e, vec![(v1, BigInt::one()), (v0, -BigInt::one())]);
        Arc::new(b.build().unwrap())
    }

    #[test]
    fn identity_is_valid_and_unital() {
        let c = interval();
        let id = identity_map(&c);
        assert!(validate_map(&id).passed);
        assert!(id.is_identity());
        assert_eq!(compose(&id, &id).unwrap(), id);
        assert!(verify_mutually_inverse(&id, &id).unwrap().passed);
    }

    #[test]
    fn negative_vertex_image_fails_positivity() {
        let c = interval();
        let f = ComplexMap::from_fn(&c, &c, |_, n| vec![(n.clone(), BigInt::from(if n.as_int() == Some(0) { -1 } else { 1 }))])
            .unwrap();
        let r = validate_map(&f);
        assert!(r.find("POSITIVITY").unwrap().witness.is_some());
        assert!(!r.passed);
    }

    #[test]
    fn wrong_degree_image_is_rejected() {
        let c = interval();
        let err = ComplexMap::from_fn(&c, &c, |_, _| vec![(GeneratorName::sym("i"), BigInt::one())]).unwrap_err();
        assert_eq!(err.code(), "DEGREE_MISMATCH");
    }

    #[test]
    fn constant_map_breaks_chain_rule() {
        let c = interval();
        let f = ComplexMap::from_fn(&c, &c, |q, n| if q == 0 { vec![(GeneratorName::int(0), BigInt::one())] } else { vec![(n.clone(), BigInt::one())] })
            .unwrap();
        assert!(validate_map(&f).find("CHAIN_RULE").unwrap().witness.is_some());
    }

    #[test]
    fn compose_checks_endpoints() {
        let c = interval();
        let other = Arc::new(BasedComplex::zero());
        let f = identity_map(&c);
        let g = identity_map(&other);
        assert_eq!(compose(&f, &g).unwrap_err().code(), "SOURCE_TARGET_MISMATCH");
    }

    #[test]
    fn rename_iso_round_trips() {
        let c = interval();
        let (r, iso) = rename_iso(&c, |n| GeneratorName::tagged("X", n.clone())).unwrap();
        assert!(r.contains(&GeneratorName::parse("X(i)").unwrap()));
        assert!(iso.verify().unwrap().passed);
    }
}
