//! Pushouts and coequalizers of based complexes by exact integer elimination.
//!
//! Each degree of the target is divided by the relations `f(c) - g(c)`. A
//! relation is solved for a generator with coefficient ±1, preferring a
//! solution that is an ℕ-combination and then the smallest name. Relations
//! with no unit coefficient go to a Smith normal form pass that reports torsion.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::chain::{add_scaled, add_term, is_nonneg, Terms};
use crate::complex::{direct_sum, format_terms, BasedComplex};
use crate::error::{AdcError, Result};
use crate::map::{compose, difference_terms, same_complex, ComplexMap};
use crate::name::GeneratorName;

/// Result of a pushout or coequalizer.
///
/// When `based` is false there is no complex; `torsion_witness` holds the
/// degree and an elementary divisor greater than one if the quotient has
/// torsion, and `diagnostic` explains the failure otherwise.
#[derive(Clone, Debug)]
pub struct PushoutResult {
    pub complex: Option<Arc<BasedComplex>>,
    pub leg_a: Option<ComplexMap>,
    pub leg_b: Option<ComplexMap>,
    pub based: bool,
    pub torsion_witness: Option<(usize, BigInt)>,
    pub diagnostic: Option<String>,
}

impl PushoutResult {
    /// The colimit complex, or `NON_BASED_PUSHOUT` with the diagnostic.
    pub fn complex(&self) -> Result<&Arc<BasedComplex>> {
        self.complex.as_ref().ok_or_else(|| AdcError::NonBasedPushout(self.describe_failure()))
    }

    pub fn leg_a(&self) -> Result<&ComplexMap> {
        self.leg_a.as_ref().ok_or_else(|| AdcError::NonBasedPushout(self.describe_failure()))
    }

    pub fn leg_b(&self) -> Result<&ComplexMap> {
        self.leg_b.as_ref().ok_or_else(|| AdcError::NonBasedPushout(self.describe_failure()))
    }

    fn describe_failure(&self) -> String {
        match (&self.torsion_witness, &self.diagnostic) {
            (Some((q, d)), _) => format!("torsion of order {d} in degree {q}"),
            (None, Some(msg)) => msg.clone(),
            (None, None) => "not based".into(),
        }
    }
}

/// Pushout of `A <- C -> B`. The colimit keeps the names `L(a)`, `R(b)` of
/// surviving generators of `A ⊕ B`.
pub fn pushout(f: &ComplexMap, g: &ComplexMap) -> Result<PushoutResult> {
    if !same_complex(f.source(), g.source()) {
        return Err(AdcError::SourceMismatch);
    }
    let sum = direct_sum(f.target(), g.target())?;
    let in_l = ComplexMap::renaming(f.target(), &sum, |n| GeneratorName::tagged("L", n.clone()))?;
    let in_r = ComplexMap::renaming(g.target(), &sum, |n| GeneratorName::tagged("R", n.clone()))?;
    let mut result = coequalizer_unchecked(&compose(f, &in_l)?, &compose(g, &in_r)?);
    if let Some(q) = result.leg_a.take() {
        result.leg_b = Some(compose(&in_r, &q)?);
        result.leg_a = Some(compose(&in_l, &q)?);
    }
    Ok(result)
}

/// Coequalizer of a parallel pair; `leg_a` is the quotient map and `leg_b` is unset.
pub fn coequalizer(f: &ComplexMap, g: &ComplexMap) -> Result<PushoutResult> {
    if !same_complex(f.source(), g.source()) || !same_complex(f.target(), g.target()) {
        return Err(AdcError::SourceTargetMismatch);
    }
    Ok(coequalizer_unchecked(f, g))
}

fn coequalizer_unchecked(f: &ComplexMap, g: &ComplexMap) -> PushoutResult {
    let src = f.source();
    let relations: Vec<Vec<Terms>> = (0..f.target().num_degrees())
        .map(|q| {
            (0..src.rank(q))
                .map(|i| difference_terms(f, g, q, i))
                .filter(|t| !t.is_empty())
                .collect()
        })
        .collect();
    quotient(f.target(), relations)
}

/// Divides `target` by relations given per degree. The relations must span a
/// subcomplex on which ε vanishes.
pub(crate) fn quotient(target: &Arc<BasedComplex>, relations: Vec<Vec<Terms>>) -> PushoutResult {
    let mut elims = Vec::with_capacity(target.num_degrees());
    for (q, rels) in relations.into_iter().enumerate() {
        let mut e = Eliminator::new(target, q);
        for r in rels {
            e.add(r);
        }
        e.finish_pending();
        elims.push(e);
    }
    let failed = |torsion, diagnostic| PushoutResult {
        complex: None,
        leg_a: None,
        leg_b: None,
        based: false,
        torsion_witness: torsion,
        diagnostic: Some(diagnostic),
    };
    for (q, e) in elims.iter().enumerate() {
        if !e.pending.is_empty() {
            let divisors = residual_divisors(&e.pending);
            let msg = format!(
                "degree {q}: relation {} has no unit coefficient",
                format_terms(target, q, &e.pending[0])
            );
            return match divisors.into_iter().find(|d| *d > BigInt::one()) {
                Some(d) => failed(Some((q, d.clone())), format!("{msg}; torsion of order {d}")),
                None => failed(None, msg),
            };
        }
        if let Some((v, expr)) = e.subst.iter().filter(|(_, x)| !is_nonneg(x)).min_by_key(|(v, _)| **v) {
            return failed(
                None,
                format!(
                    "degree {q}: {} is identified with {}, not an ℕ-combination of survivors",
                    target.name(q, *v),
                    format_terms(target, q, expr)
                ),
            );
        }
    }

    // Survivor positions per degree, in the target's canonical order.
    let new_index: Vec<HashMap<usize, usize>> = elims
        .iter()
        .enumerate()
        .map(|(q, e)| {
            (0..target.rank(q))
                .filter(|i| !e.subst.contains_key(i))
                .enumerate()
                .map(|(k, i)| (i, k))
                .collect()
        })
        .collect();
    let project = |q: usize, terms: &Terms| -> Terms {
        let mut out = Terms::new();
        for (i, k) in elims[q].reduce(terms) {
            add_term(&mut out, new_index[q][&i], k);
        }
        out
    };

    let mut basis = Vec::new();
    let mut boundary = Vec::new();
    for q in 0..target.num_degrees() {
        let mut names = Vec::new();
        let mut diffs = Vec::new();
        for i in 0..target.rank(q) {
            if elims[q].subst.contains_key(&i) {
                continue;
            }
            names.push(target.name(q, i).clone());
            diffs.push(if q == 0 { Terms::new() } else { project(q - 1, target.boundary_terms(q, i)) });
        }
        basis.push(names);
        boundary.push(diffs);
    }
    let augmentation = (0..target.rank(0))
        .filter(|i| !elims[0].subst.contains_key(i))
        .map(|i| target.augmentation_of(i).clone())
        .collect();
    let complex = match BasedComplex::from_parts(basis, boundary, augmentation) {
        Ok(c) => Arc::new(c),
        Err(e) => return failed(None, e.to_string()),
    };
    let images = (0..target.num_degrees())
        .map(|q| (0..target.rank(q)).map(|i| project(q, &crate::chain::single(i))).collect())
        .collect();
    let leg = ComplexMap::from_images(target.clone(), complex.clone(), images);
    PushoutResult {
        complex: Some(complex),
        leg_a: Some(leg),
        leg_b: None,
        based: true,
        torsion_witness: None,
        diagnostic: None,
    }
}

/// Online elimination for one degree. `subst` maps eliminated generators to
/// expressions in survivors; expressions never mention eliminated generators.
struct Eliminator<'a> {
    target: &'a BasedComplex,
    degree: usize,
    subst: HashMap<usize, Terms>,
    occurs: HashMap<usize, HashSet<usize>>,
    pending: Vec<Terms>,
}

impl<'a> Eliminator<'a> {
    fn new(target: &'a BasedComplex, degree: usize) -> Self {
        Eliminator { target, degree, subst: HashMap::new(), occurs: HashMap::new(), pending: Vec::new() }
    }

    fn reduce(&self, terms: &Terms) -> Terms {
        let mut out = Terms::new();
        for (&i, k) in terms {
            match self.subst.get(&i) {
                Some(e) => add_scaled(&mut out, e, k),
                None => add_term(&mut out, i, k.clone()),
            }
        }
        out
    }

    fn add(&mut self, relation: Terms) {
        let r = self.reduce(&relation);
        if r.is_empty() {
            return;
        }
        match self.choose_pivot(&r) {
            Some(v) => self.eliminate(v, &r),
            None => self.pending.push(r),
        }
    }

    /// Unit-coefficient generator to solve for: an ℕ-valued solution first,
    /// then the smallest name.
    fn choose_pivot(&self, r: &Terms) -> Option<usize> {
        let positives = r.values().filter(|k| k.is_positive()).count();
        let negatives = r.len() - positives;
        let names = self.target.generators(self.degree);
        r.iter()
            .filter(|(_, k)| k.abs().is_one())
            .map(|(&v, k)| {
                // v = -k * (r - k v) is an ℕ-combination iff every other term has the opposite sign.
                let natural = if k.is_positive() { positives == 1 } else { negatives == 1 };
                (!natural, &names[v], v)
            })
            .min()
            .map(|(_, _, v)| v)
    }

    fn eliminate(&mut self, v: usize, r: &Terms) {
        let k = r[&v].clone();
        let mut expr = Terms::new();
        for (&i, c) in r {
            if i != v {
                add_term(&mut expr, i, -(c * &k));
            }
        }
        if let Some(users) = self.occurs.remove(&v) {
            for w in users {
                let e = self.subst.get_mut(&w).expect("occurrence index is consistent");
                if let Some(c) = e.remove(&v) {
                    add_scaled(e, &expr, &c);
                    for &i in e.keys() {
                        self.occurs.entry(i).or_default().insert(w);
                    }
                }
            }
        }
        for &i in expr.keys() {
            self.occurs.entry(i).or_default().insert(v);
        }
        self.subst.insert(v, expr);
    }

    fn finish_pending(&mut self) {
        loop {
            let pending = std::mem::take(&mut self.pending);
            let before = pending.len();
            for r in pending {
                self.add(r);
            }
            if self.pending.is_empty() || self.pending.len() == before {
                return;
            }
        }
    }
}

/// Elementary divisors of the relation matrix formed by `rows`.
fn residual_divisors(rows: &[Terms]) -> Vec<BigInt> {
    let mut cols: Vec<usize> = rows.iter().flat_map(|r| r.keys().copied()).collect();
    cols.sort_unstable();
    cols.dedup();
    let pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut m = vec![vec![BigInt::zero(); cols.len()]; rows.len()];
    for (r, row) in rows.iter().enumerate() {
        for (c, k) in row {
            m[r][pos[c]] = k.clone();
        }
    }
    smith_diagonal(m)
}

/// Smith normal form diagonal (non-zero entries, positive, each dividing the next).
pub(crate) fn smith_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let Some((pr, pc)) = (t..rows)
                .flat_map(|r| (t..cols).map(move |c| (r, c)))
                .filter(|&(r, c)| !m[r][c].is_zero())
                .min_by(|&(r1, c1), &(r2, c2)| m[r1][c1].abs().cmp(&m[r2][c2].abs()))
            else {
                return finish_divisors(diag);
            };
            m.swap(t, pr);
            for row in m.iter_mut() {
                row.swap(t, pc);
            }
            let p = m[t][t].clone();
            let mut clean = true;
            for r in t + 1..rows {
                let q = m[r][t].div_floor(&p);
                if !q.is_zero() {
                    for c in t..cols {
                        let v = &m[t][c] * &q;
                        m[r][c] -= v;
                    }
                }
                clean &= m[r][t].is_zero();
            }
            for c in t + 1..cols {
                let q = m[t][c].div_floor(&p);
                if !q.is_zero() {
                    for r in t..rows {
                        let v = &m[r][t] * &q;
                        m[r][c] -= v;
                    }
                }
                clean &= m[t][c].is_zero();
            }
            if clean {
                diag.push(p.abs());
                break;
            }
        }
    }
    finish_divisors(diag)
}

fn finish_divisors(mut diag: Vec<BigInt>) -> Vec<BigInt> {
    // Replace pairs by (gcd, lcm) until each entry divides the next.
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{identity_map, validate_map};
    use crate::shapes::{disk_inclusion, interval, unit, DiskSide};

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn smith_form_small_cases() {
        assert_eq!(smith_diagonal(vec![vec![big(2), big(4)], vec![big(6), big(8)]]), vec![big(2), big(4)]);
        assert_eq!(smith_diagonal(vec![vec![big(2), big(0)], vec![big(0), big(3)]]), vec![big(1), big(6)]);
        assert_eq!(smith_diagonal(vec![vec![big(0)]]), Vec::<BigInt>::new());
    }

    #[test]
    fn gluing_endpoint_to_start() {
        let f = disk_inclusion(0, 1, DiskSide::Target).unwrap();
        let g = disk_inclusion(0, 1, DiskSide::Source).unwrap();
        let p = pushout(&f, &g).unwrap();
        assert!(p.based);
        let c = p.complex().unwrap();
        assert_eq!(c.graded_counts(), [(0, 3), (1, 2)].into());
        assert!(validate_map(p.leg_a().unwrap()).passed);
        assert!(validate_map(p.leg_b().unwrap()).passed);
        assert_eq!(compose(&f, p.leg_a().unwrap()).unwrap(), compose(&g, p.leg_b().unwrap()).unwrap());
    }

    #[test]
    fn trivial_pushout_of_identities() {
        let u = unit();
        let id = identity_map(&u);
        let p = pushout(&id, &id).unwrap();
        let c = p.complex().unwrap();
        assert_eq!(c.graded_counts(), [(0, 1)].into());
        assert!(validate_map(p.leg_a().unwrap()).passed);
    }

    #[test]
    fn coequalizer_of_equal_maps_is_target() {
        let i = interval();
        let id = identity_map(&i);
        let p = coequalizer(&id, &id).unwrap();
        assert!(p.leg_a().unwrap().is_identity());
    }

    #[test]
    fn torsion_is_diagnosed() {
        // Identify 2·x with 2·y inside a complex with two vertices of augmentation 1.
        let t = crate::complex::tagged_sum(&[("L", &unit()), ("R", &unit())]).unwrap();
        let mut rel = Terms::new();
        rel.insert(0, big(2));
        rel.insert(1, big(-2));
        let p = quotient(&t, vec![vec![rel]]);
        assert!(!p.based);
        assert_eq!(p.torsion_witness, Some((0, big(2))));
        assert_eq!(p.complex().unwrap_err().code(), "NON_BASED_PUSHOUT");
    }

    #[test]
    fn non_positive_identification_is_not_based() {
        // x = y + z - w style identification: forced negative coefficient.
        let parts: Vec<_> = ["a", "b", "c"].iter().map(|s| (*s, unit())).collect();
        let refs: Vec<(&str, &BasedComplex)> = parts.iter().map(|(s, c)| (*s, &**c)).collect();
        let t = crate::complex::tagged_sum(&refs).unwrap();
        let mut rel = Terms::new();
        rel.insert(0, big(1));
        rel.insert(1, big(1));
        rel.insert(2, big(-2));
        let p = quotient(&t, vec![vec![rel]]);
        assert!(!p.based);
        assert!(p.torsion_witness.is_none());
    }

    #[test]
    fn mismatched_sources_are_rejected() {
        let f = identity_map(&unit());
        let g = identity_map(&interval());
        assert_eq!(pushout(&f, &g).unwrap_err().code(), "SOURCE_MISMATCH");
        assert_eq!(coequalizer(&f, &g).unwrap_err().code(), "SOURCE_TARGET_MISMATCH");
    }
}
