//! Based augmented directed complexes.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::chain::{add_scaled, add_term, single, Chain, Terms};
use crate::error::{AdcError, Result};
use crate::name::GeneratorName;
use crate::report::CheckReport;

/// Generator cap, read once from `STEINERLAB_MAX_GENERATORS` (default 100000).
pub fn max_generators() -> usize {
    static LIMIT: OnceLock<usize> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var("STEINERLAB_MAX_GENERATORS")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(100_000)
    })
}

pub(crate) fn check_size(count: usize) -> Result<()> {
    let limit = max_generators();
    if count > limit {
        return Err(AdcError::TooLarge { count, limit });
    }
    Ok(())
}

/// A finitely based complex: per degree a sorted list of generator names,
/// a sparse integer differential and an augmentation on degree 0.
///
/// The positive cone is the ℕ-span of the basis. Names are unique across
/// the whole complex.
#[derive(Clone, Debug)]
pub struct BasedComplex {
    basis: Vec<Vec<GeneratorName>>,
    lookup: HashMap<GeneratorName, (usize, usize)>,
    boundary: Vec<Vec<Terms>>,
    augmentation: Vec<BigInt>,
}

impl PartialEq for BasedComplex {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
            && self.boundary == other.boundary
            && self.augmentation == other.augmentation
    }
}

impl Eq for BasedComplex {}

impl BasedComplex {
    pub fn zero() -> Self {
        BasedComplex {
            basis: Vec::new(),
            lookup: HashMap::new(),
            boundary: Vec::new(),
            augmentation: Vec::new(),
        }
    }

    /// Number of stored degrees; the top degree is `num_degrees() - 1`.
    pub fn num_degrees(&self) -> usize {
        self.basis.len()
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.basis.len().checked_sub(1)
    }

    pub fn generators(&self, degree: usize) -> &[GeneratorName] {
        self.basis.get(degree).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn rank(&self, degree: usize) -> usize {
        self.generators(degree).len()
    }

    pub fn total_generators(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Iterates `(degree, index, name)` in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &GeneratorName)> {
        self.basis
            .iter()
            .enumerate()
            .flat_map(|(q, v)| v.iter().enumerate().map(move |(i, n)| (q, i, n)))
    }

    pub fn locate(&self, name: &GeneratorName) -> Option<(usize, usize)> {
        self.lookup.get(name).copied()
    }

    pub fn contains(&self, name: &GeneratorName) -> bool {
        self.lookup.contains_key(name)
    }

    pub fn name(&self, degree: usize, index: usize) -> &GeneratorName {
        &self.basis[degree][index]
    }

    pub fn degree_of(&self, name: &GeneratorName) -> Option<usize> {
        self.locate(name).map(|(q, _)| q)
    }

    /// Differential of generator `index` in `degree` (empty for degree 0).
    pub fn boundary_terms(&self, degree: usize, index: usize) -> &Terms {
        &self.boundary[degree][index]
    }

    pub fn augmentation_of(&self, index: usize) -> &BigInt {
        &self.augmentation[index]
    }

    pub fn generator(&self, name: &GeneratorName) -> Option<Chain> {
        self.locate(name).map(|(q, i)| Chain::from_terms(q, single(i)))
    }

    pub fn basis_chain(&self, degree: usize, index: usize) -> Chain {
        Chain::from_terms(degree, single(index))
    }

    /// Builds a chain from named terms; every name must live in `degree`.
    pub fn chain<'a, I>(&self, degree: usize, terms: I) -> Result<Chain>
    where
        I: IntoIterator<Item = (&'a GeneratorName, BigInt)>,
    {
        let mut t = Terms::new();
        for (name, k) in terms {
            match self.locate(name) {
                Some((q, i)) if q == degree => add_term(&mut t, i, k),
                Some((q, _)) => {
                    return Err(AdcError::DegreeMismatch(format!(
                        "{name} has degree {q}, expected {degree}"
                    )))
                }
                None => return Err(AdcError::Malformed(format!("unknown generator {name}"))),
            }
        }
        Ok(Chain::from_terms(degree, t))
    }

    /// Parses a chain written as `name:coeff` pairs, e.g. `[("(01)", 1)]`.
    pub fn chain_from_strs(&self, degree: usize, terms: &[(&str, i64)]) -> Result<Chain> {
        let parsed = terms
            .iter()
            .map(|(n, k)| Ok((GeneratorName::parse(n)?, BigInt::from(*k))))
            .collect::<Result<Vec<_>>>()?;
        self.chain(degree, parsed.iter().map(|(n, k)| (n, k.clone())))
    }

    pub fn named_terms(&self, chain: &Chain) -> Vec<(GeneratorName, BigInt)> {
        chain
            .terms
            .iter()
            .map(|(&i, k)| (self.basis[chain.degree][i].clone(), k.clone()))
            .collect()
    }

    pub fn format_chain(&self, chain: &Chain) -> String {
        format_terms(self, chain.degree, &chain.terms)
    }

    pub fn d(&self, chain: &Chain) -> Result<Chain> {
        if chain.degree == 0 {
            return Err(AdcError::DegreeZero);
        }
        Ok(Chain::from_terms(chain.degree - 1, self.d_terms(chain.degree, &chain.terms)))
    }

    pub(crate) fn d_terms(&self, degree: usize, terms: &Terms) -> Terms {
        let mut out = Terms::new();
        for (&i, k) in terms {
            add_scaled(&mut out, &self.boundary[degree][i], k);
        }
        out
    }

    /// Augmentation of a chain; zero for chains of positive degree.
    pub fn augment(&self, chain: &Chain) -> BigInt {
        if chain.degree != 0 {
            return BigInt::zero();
        }
        self.augment_terms(&chain.terms)
    }

    pub(crate) fn augment_terms(&self, terms: &Terms) -> BigInt {
        terms.iter().map(|(&i, k)| k * &self.augmentation[i]).sum()
    }

    pub fn graded_counts(&self) -> BTreeMap<usize, usize> {
        self.basis.iter().enumerate().filter(|(_, v)| !v.is_empty()).map(|(q, v)| (q, v.len())).collect()
    }

    /// Same complex with every generator renamed. The renaming must be injective.
    pub fn rename(&self, f: impl Fn(&GeneratorName) -> GeneratorName) -> Result<BasedComplex> {
        let mut b = ComplexBuilder::new();
        for (q, i, n) in self.iter() {
            let new = f(n);
            b.add_generator(q, new.clone());
            if q == 0 {
                b.set_augmentation(new, self.augmentation[i].clone());
            } else {
                let terms = self.boundary[q][i]
                    .iter()
                    .map(|(&j, k)| (f(&self.basis[q - 1][j]), k.clone()))
                    .collect();
                b.set_boundary(new, terms);
            }
        }
        b.build()
    }

    /// Complex on the generators accepted by `keep`; must be closed under the differential.
    pub fn restrict(&self, keep: impl Fn(&GeneratorName) -> bool) -> Result<BasedComplex> {
        let mut b = ComplexBuilder::new();
        for (q, i, n) in self.iter() {
            if !keep(n) {
                continue;
            }
            b.add_generator(q, n.clone());
            if q == 0 {
                b.set_augmentation(n.clone(), self.augmentation[i].clone());
            } else {
                let terms = self.boundary[q][i]
                    .iter()
                    .map(|(&j, k)| (self.basis[q - 1][j].clone(), k.clone()))
                    .collect();
                b.set_boundary(n.clone(), terms);
            }
        }
        b.build()
    }

    /// Assembles a complex from index-level data. Basis lists must be sorted and
    /// globally distinct; trailing empty degrees are trimmed.
    pub(crate) fn from_parts(
        mut basis: Vec<Vec<GeneratorName>>,
        mut boundary: Vec<Vec<Terms>>,
        mut augmentation: Vec<BigInt>,
    ) -> Result<BasedComplex> {
        while basis.last().is_some_and(|v| v.is_empty()) {
            basis.pop();
            boundary.pop();
        }
        if basis.is_empty() {
            augmentation.clear();
        }
        check_size(basis.iter().map(Vec::len).sum())?;
        let mut lookup = HashMap::new();
        for (q, v) in basis.iter().enumerate() {
            for (i, n) in v.iter().enumerate() {
                if lookup.insert(n.clone(), (q, i)).is_some() {
                    return Err(AdcError::Malformed(format!("duplicate generator {n}")));
                }
            }
        }
        Ok(BasedComplex { basis, lookup, boundary, augmentation })
    }
}

pub(crate) fn format_terms(c: &BasedComplex, degree: usize, terms: &Terms) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (k, (&i, coeff)) in terms.iter().enumerate() {
        let name = &c.generators(degree)[i];
        let neg = coeff.is_negative();
        let mag = coeff.abs();
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mag != BigInt::from(1) {
            s.push_str(&format!("{mag}*"));
        }
        s.push_str(&name.to_string());
    }
    s
}

/// Name-level builder. Differentials and augmentations may be given in any order.
#[derive(Default)]
pub struct ComplexBuilder {
    generators: Vec<(usize, GeneratorName)>,
    boundary: Vec<(GeneratorName, Vec<(GeneratorName, BigInt)>)>,
    augmentation: Vec<(GeneratorName, BigInt)>,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_generator(&mut self, degree: usize, name: GeneratorName) -> &mut Self {
        self.generators.push((degree, name));
        self
    }

    pub fn set_boundary(&mut self, name: GeneratorName, terms: Vec<(GeneratorName, BigInt)>) -> &mut Self {
        self.boundary.push((name, terms));
        self
    }

    pub fn set_augmentation(&mut self, name: GeneratorName, value: BigInt) -> &mut Self {
        self.augmentation.push((name, value));
        self
    }

    /// Resolves names, checking that every differential term lives one degree
    /// down. Vertices without an explicit augmentation get 0.
    pub fn build(self) -> Result<BasedComplex> {
        check_size(self.generators.len())?;
        let top = self.generators.iter().map(|(q, _)| q + 1).max().unwrap_or(0);
        let mut basis: Vec<Vec<GeneratorName>> = vec![Vec::new(); top];
        for (q, n) in self.generators {
            basis[q].push(n);
        }
        for v in &mut basis {
            v.sort();
        }
        let mut index: HashMap<&GeneratorName, (usize, usize)> = HashMap::new();
        for (q, v) in basis.iter().enumerate() {
            for (i, n) in v.iter().enumerate() {
                if index.insert(n, (q, i)).is_some() {
                    return Err(AdcError::Malformed(format!("duplicate generator {n}")));
                }
            }
        }
        let mut boundary: Vec<Vec<Option<Terms>>> = basis.iter().map(|v| vec![None; v.len()]).collect();
        for (name, terms) in self.boundary {
            let Some(&(q, i)) = index.get(&name) else {
                return Err(AdcError::Malformed(format!("differential of unknown generator {name}")));
            };
            if q == 0 {
                return Err(AdcError::Malformed(format!("differential given for vertex {name}")));
            }
            if boundary[q][i].is_some() {
                return Err(AdcError::Malformed(format!("differential of {name} given twice")));
            }
            let mut t = Terms::new();
            for (n, k) in terms {
                match index.get(&n) {
                    Some(&(p, j)) if p + 1 == q => add_term(&mut t, j, k),
                    Some(&(p, _)) => {
                        return Err(AdcError::Malformed(format!(
                            "d({name}) references {n} of degree {p}, expected {}",
                            q - 1
                        )))
                    }
                    None => {
                        return Err(AdcError::Malformed(format!(
                            "d({name}) references missing generator {n}"
                        )))
                    }
                }
            }
            boundary[q][i] = Some(t);
        }
        let mut aug = vec![BigInt::zero(); basis.first().map_or(0, Vec::len)];
        let mut seen = vec![false; aug.len()];
        for (name, value) in self.augmentation {
            match index.get(&name) {
                Some(&(0, i)) => {
                    if seen[i] {
                        return Err(AdcError::Malformed(format!("augmentation of {name} given twice")));
                    }
                    seen[i] = true;
                    aug[i] = value;
                }
                Some(_) => {
                    return Err(AdcError::Malformed(format!("augmentation given for non-vertex {name}")))
                }
                None => return Err(AdcError::Malformed(format!("augmentation of unknown generator {name}"))),
            }
        }
        let boundary = boundary
            .into_iter()
            .map(|v| v.into_iter().map(Option::unwrap_or_default).collect())
            .collect();
        BasedComplex::from_parts(basis, boundary, aug)
    }
}

/// Checks `d∘d = 0`, `ε∘d₁ = 0` and `ε ≥ 0`, each with the first failing generator.
pub fn validate_complex(c: &BasedComplex) -> CheckReport {
    let mut r = CheckReport::new();
    let mut d2 = None;
    'outer: for q in 2..c.num_degrees() {
        for i in 0..c.rank(q) {
            let dd = c.d_terms(q - 1, c.boundary_terms(q, i));
            if !dd.is_empty() {
                d2 = Some(format!("{} (d² = {})", c.name(q, i), format_terms(c, q - 2, &dd)));
                break 'outer;
            }
        }
    }
    r.push("D2_ZERO", d2);
    let mut aug_d1 = None;
    for i in 0..c.rank(1) {
        let e = c.augment_terms(c.boundary_terms(1, i));
        if !e.is_zero() {
            aug_d1 = Some(format!("{} (ε∘d = {e})", c.name(1, i)));
            break;
        }
    }
    r.push("AUG_KILLS_D1", aug_d1);
    let neg = (0..c.rank(0))
        .find(|&i| c.augmentation_of(i).is_negative())
        .map(|i| format!("{} (ε = {})", c.name(0, i), c.augmentation_of(i)));
    r.push("AUG_NONNEGATIVE", neg);
    r
}

pub fn graded_counts(c: &BasedComplex) -> BTreeMap<usize, usize> {
    c.graded_counts()
}

/// Positional comparison: same counts, and identical differentials and
/// augmentations once each degree is matched up by position.
pub fn equal_presentation(a: &BasedComplex, b: &BasedComplex) -> bool {
    a.num_degrees() == b.num_degrees()
        && (0..a.num_degrees()).all(|q| a.rank(q) == b.rank(q))
        && a.boundary == b.boundary
        && a.augmentation == b.augmentation
}

/// Disjoint union of tagged summands; generator `x` of the summand tagged `t`
/// becomes `t(x)`.
pub fn tagged_sum(parts: &[(&str, &BasedComplex)]) -> Result<Arc<BasedComplex>> {
    let mut b = ComplexBuilder::new();
    for (tag, c) in parts {
        let wrap = |n: &GeneratorName| GeneratorName::tagged(tag, n.clone());
        for (q, i, n) in c.iter() {
            b.add_generator(q, wrap(n));
            if q == 0 {
                b.set_augmentation(wrap(n), c.augmentation_of(i).clone());
            } else {
                let terms = c
                    .boundary_terms(q, i)
                    .iter()
                    .map(|(&j, k)| (wrap(c.name(q - 1, j)), k.clone()))
                    .collect();
                b.set_boundary(wrap(n), terms);
            }
        }
    }
    b.build().map(Arc::new)
}

/// `A ⊕ B` with summand tags `L` and `R`.
pub fn direct_sum(a: &BasedComplex, b: &BasedComplex) -> Result<Arc<BasedComplex>> {
    tagged_sum(&[("L", a), ("R", b)])
}

/// Drops the top-degree generators.
pub fn truncate_top(c: &BasedComplex) -> Result<Arc<BasedComplex>> {
    let top = c.top_degree().ok_or(AdcError::Empty)?;
    let mut basis = c.basis.clone();
    let mut boundary = c.boundary.clone();
    basis.pop();
    boundary.pop();
    let aug = if top == 0 { Vec::new() } else { c.augmentation.clone() };
    BasedComplex::from_parts(basis, boundary, aug).map(Arc::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> GeneratorName {
        GeneratorName::parse(s).unwrap()
    }

    fn edge_complex(d_e: Vec<(&str, i64)>, augs: &[(&str, i64)]) -> BasedComplex {
        let mut b = ComplexBuilder::new();
        for (v, e) in augs {
            b.add_generator(0, n(v));
            b.set_augmentation(n(v), BigInt::from(*e));
        }
        b.add_generator(1, n("e"));
        b.set_boundary(n("e"), d_e.into_iter().map(|(x, k)| (n(x), BigInt::from(k))).collect());
        b.build().unwrap()
    }

    #[test]
    fn builder_rejects_dangling_references() {
        let mut b = ComplexBuilder::new();
        b.add_generator(1, n("e"));
        b.set_boundary(n("e"), vec![(n("x"), BigInt::from(1))]);
        assert_eq!(b.build().unwrap_err().code(), "MALFORMED");
    }

    #[test]
    fn builder_rejects_wrong_degree_reference() {
        let mut b = ComplexBuilder::new();
        b.add_generator(0, n("x"));
        b.add_generator(1, n("e"));
        b.add_generator(2, n("c"));
        b.set_boundary(n("c"), vec![(n("x"), BigInt::from(1))]);
        assert_eq!(b.build().unwrap_err().code(), "MALFORMED");
    }

    #[test]
    fn builder_rejects_duplicate_names_across_degrees() {
        let mut b = ComplexBuilder::new();
        b.add_generator(0, n("x"));
        b.add_generator(1, n("x"));
        assert!(b.build().is_err());
    }

    #[test]
    fn augmentation_failure_is_reported() {
        let c = edge_complex(vec![("x", 1), ("y", 1)], &[("x", 1), ("y", 1)]);
        let r = validate_complex(&c);
        assert!(!r.passed);
        assert!(r.find("AUG_KILLS_D1").unwrap().witness.as_ref().unwrap().starts_with('e'));
        assert_eq!(r.find("D2_ZERO").unwrap().status, crate::report::Status::Pass);
    }

    #[test]
    fn square_of_differential_is_checked() {
        let mut b = ComplexBuilder::new();
        b.add_generator(0, n("v")).set_augmentation(n("v"), BigInt::from(1));
        b.add_generator(1, n("e")).set_boundary(n("e"), vec![(n("v"), BigInt::from(1))]);
        b.add_generator(2, n("c")).set_boundary(n("c"), vec![(n("e"), BigInt::from(1))]);
        let r = validate_complex(&b.build().unwrap());
        assert!(r.find("D2_ZERO").unwrap().witness.as_ref().unwrap().starts_with('c'));
    }

    #[test]
    fn zero_complex_is_valid() {
        let z = BasedComplex::zero();
        assert!(validate_complex(&z).passed);
        assert!(z.graded_counts().is_empty());
        assert_eq!(truncate_top(&z).unwrap_err().code(), "EMPTY");
    }

    #[test]
    fn trailing_degrees_are_trimmed() {
        let c = edge_complex(vec![("y", 1), ("x", -1)], &[("x", 1), ("y", 1)]);
        let t = truncate_top(&c).unwrap();
        assert_eq!(t.top_degree(), Some(0));
        assert_eq!(t.graded_counts(), BTreeMap::from([(0, 2)]));
    }

    #[test]
    fn direct_sum_counts_add() {
        let c = edge_complex(vec![("y", 1), ("x", -1)], &[("x", 1), ("y", 1)]);
        let s = direct_sum(&c, &c).unwrap();
        assert_eq!(s.graded_counts(), BTreeMap::from([(0, 4), (1, 2)]));
        assert!(s.contains(&n("L(e)")) && s.contains(&n("R(x)")));
        assert!(direct_sum(&BasedComplex::zero(), &c).unwrap().rename(|x| x.untag("R").unwrap().clone()).unwrap() == c);
    }

    #[test]
    fn chain_helpers() {
        let c = edge_complex(vec![("y", 1), ("x", -1)], &[("x", 1), ("y", 1)]);
        let e = c.generator(&n("e")).unwrap();
        let de = c.d(&e).unwrap();
        assert_eq!(c.format_chain(&de), "-x + y");
        assert_eq!(c.augment(&de), BigInt::zero());
        assert_eq!(c.d(&c.generator(&n("x")).unwrap()).unwrap_err().code(), "DEGREE_ZERO");
    }
}
