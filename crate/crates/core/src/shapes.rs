//! Generator families: point, interval, disks, cubes, orientals, Θ-objects.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::colimit::pushout;
use crate::complex::{BasedComplex, ComplexBuilder};
use crate::error::{AdcError, Result};
use crate::map::{compose, identity_map, ComplexMap};
use crate::name::GeneratorName;
use crate::ops::duality::dual_co;
use crate::ops::join::{join, Orientation};
use crate::ops::suspension::{bottom, susp_name, suspension};
use crate::ops::tensor::gray_tensor;

/// Process-wide memo table keyed by construction parameters.
pub(crate) struct Memo<K, V> {
    cell: OnceLock<Mutex<HashMap<K, V>>>,
}

impl<K: Eq + Hash, V: Clone> Memo<K, V> {
    pub(crate) const fn new() -> Self {
        Memo { cell: OnceLock::new() }
    }

    pub(crate) fn get_or_try(&self, key: K, build: impl FnOnce() -> Result<V>) -> Result<V> {
        let table = self.cell.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(v) = table.lock().expect("memo lock").get(&key) {
            return Ok(v.clone());
        }
        // Built outside the lock so recursive constructions can re-enter.
        let v = build()?;
        table.lock().expect("memo lock").entry(key).or_insert(v.clone());
        Ok(v)
    }
}

pub fn point_name() -> GeneratorName {
    GeneratorName::sym("pt")
}

/// The final complex `ℤ`: one vertex `pt` with `ε = 1`.
pub fn unit() -> Arc<BasedComplex> {
    static UNIT: OnceLock<Arc<BasedComplex>> = OnceLock::new();
    UNIT.get_or_init(|| {
        let mut b = ComplexBuilder::new();
        b.add_generator(0, point_name()).set_augmentation(point_name(), BigInt::one());
        Arc::new(b.build().expect("unit"))
    })
    .clone()
}

pub fn zero() -> Arc<BasedComplex> {
    Arc::new(BasedComplex::zero())
}

pub fn edge_name() -> GeneratorName {
    GeneratorName::sym("i")
}

/// Vertices `0`, `1` and the edge `i` with `d(i) = 1 - 0`.
pub fn interval() -> Arc<BasedComplex> {
    static I: OnceLock<Arc<BasedComplex>> = OnceLock::new();
    I.get_or_init(|| interval_oriented(Orientation::Standard)).clone()
}

pub fn interval_oriented(orientation: Orientation) -> Arc<BasedComplex> {
    let (head, tail) = match orientation {
        Orientation::Standard => (1, 0),
        Orientation::Reversed => (0, 1),
    };
    let mut b = ComplexBuilder::new();
    for v in 0..2 {
        b.add_generator(0, GeneratorName::int(v)).set_augmentation(GeneratorName::int(v), BigInt::one());
    }
    b.add_generator(1, edge_name()).set_boundary(
        edge_name(),
        vec![(GeneratorName::int(head), BigInt::one()), (GeneratorName::int(tail), -BigInt::one())],
    );
    Arc::new(b.build().expect("interval"))
}

/// The two endpoints of the interval, as a complex.
pub fn interval_boundary() -> Arc<BasedComplex> {
    let i = interval();
    Arc::new(i.restrict(|n| n.as_int().is_some()).expect("vertices form a subcomplex"))
}

/// `Dⁿ = Sⁿ(pt)`. Degree-k generators below the top are `Sᵏ(b0)` (source)
/// and `Sᵏ(b1)` (target); the top is `Sⁿ(pt)`.
pub fn disk(n: usize) -> Result<Arc<BasedComplex>> {
    static MEMO: Memo<usize, Arc<BasedComplex>> = Memo::new();
    MEMO.get_or_try(n, || if n == 0 { Ok(unit()) } else { suspension(&*disk(n - 1)?) })
}

/// `∂Dⁿ = Sⁿ(∅)`.
pub fn boundary_disk(n: usize) -> Result<Arc<BasedComplex>> {
    if n == 0 {
        return Ok(zero());
    }
    suspension(&*boundary_disk(n - 1)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiskSide {
    Source,
    Target,
}

/// Name of a disk generator: `Sᵏ(b0)`/`Sᵏ(b1)` for a side, `Sᵏ(pt)` for the top.
pub fn disk_cell(k: usize, side: Option<DiskSide>) -> GeneratorName {
    let mut n = match side {
        None => point_name(),
        Some(DiskSide::Source) => bottom(0),
        Some(DiskSide::Target) => bottom(1),
    };
    for _ in 0..k {
        n = susp_name(&n);
    }
    n
}

/// `Dʲ ↪ Dⁱ` sending the top of `Dʲ` to the `side` generator of degree j.
pub fn disk_inclusion(j: usize, i: usize, side: DiskSide) -> Result<ComplexMap> {
    if j > i {
        return Err(AdcError::BadDims(format!("cannot include D{j} into D{i}")));
    }
    let (s, t) = (disk(j)?, disk(i)?);
    let top = disk_cell(j, None);
    ComplexMap::renaming(&s, &t, |n| if *n == top && j < i { disk_cell(j, Some(side)) } else { n.clone() })
}

/// Cube words: `pt` for the empty word, otherwise `(l1.l2...)` over `0`, `1`, `i`.
pub fn word_name(letters: Vec<GeneratorName>) -> GeneratorName {
    if letters.is_empty() {
        point_name()
    } else {
        GeneratorName::node("", letters)
    }
}

pub fn word_letters(w: &GeneratorName) -> Vec<GeneratorName> {
    if *w == point_name() {
        Vec::new()
    } else {
        w.children().to_vec()
    }
}

/// Parses a cube word such as `"0i1"`.
pub fn word(s: &str) -> GeneratorName {
    word_name(
        s.chars()
            .map(|c| match c {
                '0' => GeneratorName::int(0),
                '1' => GeneratorName::int(1),
                'i' => edge_name(),
                _ => panic!("bad cube letter {c:?}"),
            })
            .collect(),
    )
}

/// `□ⁿ = □ⁿ⁻¹ ⊗ I`, with the pair `(w.l)` renamed to the word `w l`.
pub fn cube(n: usize) -> Result<Arc<BasedComplex>> {
    static MEMO: Memo<usize, Arc<BasedComplex>> = Memo::new();
    MEMO.get_or_try(n, || {
        if n == 0 {
            return Ok(unit());
        }
        let t = gray_tensor(&*cube(n - 1)?, &interval())?;
        let flat = t.rename(|p| {
            let (w, l) = p.as_pair().expect("pair");
            let mut letters = word_letters(w);
            letters.push(l.clone());
            word_name(letters)
        })?;
        Ok(Arc::new(flat))
    })
}

/// Oriental generators: the vertex subset `(s0.s1...)`.
pub fn subset_name(elems: &[u64]) -> GeneratorName {
    GeneratorName::node("", elems.iter().map(|&v| GeneratorName::int(v)).collect())
}

pub fn subset_elems(n: &GeneratorName) -> Vec<u64> {
    n.children().iter().map(|c| c.as_int().expect("vertex index")).collect()
}

/// Parses a subset written as digits, e.g. `"012"`.
pub fn subset(s: &str) -> GeneratorName {
    subset_name(&s.chars().map(|c| c.to_digit(10).expect("digit") as u64).collect::<Vec<_>>())
}

/// `Δⁿ` built directly: degree-k generators are the (k+1)-subsets of
/// `{0..n}`, `d` is the alternating face sum, and `ε = 1` on vertices.
pub fn oriental(n: usize) -> Result<Arc<BasedComplex>> {
    static MEMO: Memo<usize, Arc<BasedComplex>> = Memo::new();
    MEMO.get_or_try(n, || {
        if n >= 30 {
            return Err(AdcError::TooLarge { count: usize::MAX, limit: crate::complex::max_generators() });
        }
        crate::complex::check_size((1usize << (n + 1)) - 1)?;
        let mut b = ComplexBuilder::new();
        for mask in 1u64..(1 << (n + 1)) {
            let elems: Vec<u64> = (0..=n as u64).filter(|v| mask >> v & 1 == 1).collect();
            let name = subset_name(&elems);
            b.add_generator(elems.len() - 1, name.clone());
            if elems.len() == 1 {
                b.set_augmentation(name, BigInt::one());
            } else {
                let faces = (0..elems.len())
                    .map(|k| {
                        let mut f = elems.clone();
                        f.remove(k);
                        (subset_name(&f), if k % 2 == 0 { BigInt::one() } else { -BigInt::one() })
                    })
                    .collect();
                b.set_boundary(name, faces);
            }
        }
        Ok(Arc::new(b.build()?))
    })
}

/// `Δⁿ` as the iterated join `Δⁿ⁻¹ ⋆ pt`, renamed to vertex subsets.
pub fn oriental_via_join(n: usize) -> Result<Arc<BasedComplex>> {
    if n == 0 {
        return Ok(Arc::new(unit().rename(|_| subset_name(&[0]))?));
    }
    let j = join(&*oriental_via_join(n - 1)?, &unit())?;
    Ok(Arc::new(j.rename(|x| cone_to_subset(x, n as u64))?))
}

/// `L(S) ↦ S`, `R(pt) ↦ {n}`, `J(S.pt) ↦ S ∪ {n}` for `Δⁿ⁻¹ ⋆ pt ≅ Δⁿ`.
pub fn cone_to_subset(x: &GeneratorName, n: u64) -> GeneratorName {
    if let Some(s) = x.untag("L") {
        s.clone()
    } else if x.untag("R").is_some() {
        subset_name(&[n])
    } else {
        let mut e = subset_elems(&x.children()[0]);
        e.push(n);
        subset_name(&e)
    }
}

/// Inverse of [`cone_to_subset`].
pub fn subset_to_cone(s: &GeneratorName, n: u64) -> GeneratorName {
    let mut e = subset_elems(s);
    if e.last() != Some(&n) {
        return GeneratorName::tagged("L", s.clone());
    }
    e.pop();
    if e.is_empty() {
        GeneratorName::tagged("R", point_name())
    } else {
        GeneratorName::node("J", vec![subset_name(&e), point_name()])
    }
}

/// `(Δⁿ)^co`.
pub fn antioriental(n: usize) -> Result<Arc<BasedComplex>> {
    Ok(dual_co(&*oriental(n)?))
}

/// A Θ-object `D^{i0} ⊔_{D^{j1}} D^{i1} ⊔ … ⊔_{D^{jn}} D^{in}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThetaSpec {
    pub dims: Vec<usize>,
    pub glue: Vec<usize>,
    /// Per gluing, the sides of `D^{jℓ} ↪ D^{iℓ-1}` and `D^{jℓ} ↪ D^{iℓ}`.
    pub sides: Vec<(DiskSide, DiskSide)>,
}

impl ThetaSpec {
    /// Gluing each disk's target to the next disk's source.
    pub fn pasting(dims: Vec<usize>, glue: Vec<usize>) -> ThetaSpec {
        let sides = vec![(DiskSide::Target, DiskSide::Source); glue.len()];
        ThetaSpec { dims, glue, sides }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() || self.glue.len() + 1 != self.dims.len() || self.sides.len() != self.glue.len() {
            return Err(AdcError::BadDims("theta spec lengths are inconsistent".into()));
        }
        for (l, &j) in self.glue.iter().enumerate() {
            if j > self.dims[l] || j > self.dims[l + 1] {
                return Err(AdcError::BadDims(format!(
                    "glue dimension {j} exceeds a neighbouring disk ({}, {})",
                    self.dims[l],
                    self.dims[l + 1]
                )));
            }
        }
        Ok(())
    }

    /// `i0 + … + in - (j1 + … + jn)`.
    pub fn total_dimension(&self) -> usize {
        self.dims.iter().sum::<usize>() - self.glue.iter().sum::<usize>()
    }
}

/// Θ-object with the leg `D^{iℓ} → Θ` of every disk.
pub fn theta_with_legs(spec: &ThetaSpec) -> Result<(Arc<BasedComplex>, Vec<ComplexMap>)> {
    spec.validate()?;
    let first = disk(spec.dims[0])?;
    let mut legs = vec![identity_map(&first)];
    let mut current = first;
    for (l, &j) in spec.glue.iter().enumerate() {
        let (left_side, right_side) = spec.sides[l];
        let into_prev = compose(&disk_inclusion(j, spec.dims[l], left_side)?, &legs[l])?;
        let into_next = disk_inclusion(j, spec.dims[l + 1], right_side)?;
        let p = pushout(&into_prev, &into_next)?;
        let leg_a = p.leg_a()?.clone();
        legs = legs.iter().map(|g| compose(g, &leg_a)).collect::<Result<_>>()?;
        legs.push(p.leg_b()?.clone());
        current = p.complex()?.clone();
    }
    Ok((current, legs))
}

pub fn theta(spec: &ThetaSpec) -> Result<Arc<BasedComplex>> {
    Ok(theta_with_legs(spec)?.0)
}

/// The pushout identifying vertex `va` of `a` with vertex `vb` of `b`, with its legs.
pub fn wedge_with_legs(
    a: &Arc<BasedComplex>,
    va: &GeneratorName,
    b: &Arc<BasedComplex>,
    vb: &GeneratorName,
) -> Result<crate::colimit::PushoutResult> {
    for (c, v) in [(a, va), (b, vb)] {
        match c.locate(v) {
            Some((0, i)) if c.augmentation_of(i).is_one() => {}
            _ => return Err(AdcError::BadBasepoint(format!("{v} is not a vertex with ε = 1"))),
        }
    }
    let u = unit();
    let fa = ComplexMap::renaming(&u, a, |_| va.clone())?;
    let fb = ComplexMap::renaming(&u, b, |_| vb.clone())?;
    pushout(&fa, &fb)
}

pub fn wedge(
    a: &Arc<BasedComplex>,
    va: &GeneratorName,
    b: &Arc<BasedComplex>,
    vb: &GeneratorName,
) -> Result<Arc<BasedComplex>> {
    Ok(wedge_with_legs(a, va, b, vb)?.complex()?.clone())
}

pub use crate::complex::truncate_top;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{equal_presentation, validate_complex};
    use crate::map::validate_map;

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn cube_counts_by_letter_count() {
        for n in 0..=5usize {
            let c = cube(n).unwrap();
            for k in 0..=n {
                assert_eq!(c.rank(k) as u64, binomial(n as u64, k as u64) * (1 << (n - k)));
            }
            assert_eq!(c.total_generators(), 3usize.pow(n as u32));
        }
    }

    /// Cube differential written from words: each `i` at position k contributes
    /// `(-1)^{#i before k} (w[k:=1] - w[k:=0])`.
    #[test]
    fn cube_matches_word_formula() {
        let c = cube(4).unwrap();
        for (q, i, w) in c.iter() {
            if q == 0 {
                continue;
            }
            let letters = word_letters(w);
            let mut expect = Vec::new();
            let mut seen = 0;
            for (k, l) in letters.iter().enumerate() {
                if *l == edge_name() {
                    let sign = if seen % 2 == 0 { 1 } else { -1 };
                    for (v, s) in [(1, sign), (0, -sign)] {
                        let mut m = letters.clone();
                        m[k] = GeneratorName::int(v);
                        expect.push((word_name(m), BigInt::from(s)));
                    }
                    seen += 1;
                }
            }
            expect.sort();
            let got = c.named_terms(&c.basis_chain(q, i));
            let mut d = c.named_terms(&c.d(&c.basis_chain(q, i)).unwrap());
            d.sort();
            assert_eq!(d, expect, "{got:?}");
        }
    }

    #[test]
    fn oriental_two_simplex() {
        let o = oriental(2).unwrap();
        let top = o.generator(&subset("012")).unwrap();
        assert_eq!(o.format_chain(&o.d(&top).unwrap()), "(0.1) - (0.2) + (1.2)");
        assert_eq!(o.graded_counts(), [(0, 3), (1, 3), (2, 1)].into());
    }

    #[test]
    fn orientals_agree_with_iterated_join() {
        for n in 0..=5 {
            assert_eq!(*oriental_via_join(n).unwrap(), *oriental(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn antioriental_signs() {
        assert_eq!(*antioriental(1).unwrap(), *oriental(1).unwrap());
        let a = antioriental(2).unwrap();
        let top = a.generator(&subset("012")).unwrap();
        assert_eq!(a.format_chain(&a.d(&top).unwrap()), "-(0.1) + (0.2) - (1.2)");
    }

    #[test]
    fn disks_and_boundaries() {
        assert_eq!(disk(4).unwrap().graded_counts(), [(0, 2), (1, 2), (2, 2), (3, 2), (4, 1)].into());
        for n in 0..=5 {
            let b = boundary_disk(n).unwrap();
            assert_eq!(*b, *truncate_top(&disk(n).unwrap()).unwrap());
            assert!(validate_complex(&disk(n).unwrap()).passed);
        }
        let d1 = disk(1).unwrap();
        assert!(equal_presentation(&d1, &interval()));
    }

    #[test]
    fn disk_inclusions_compose() {
        for side in [DiskSide::Source, DiskSide::Target] {
            let a = disk_inclusion(1, 2, side).unwrap();
            let b = disk_inclusion(2, 4, side).unwrap();
            assert_eq!(compose(&a, &b).unwrap(), disk_inclusion(1, 4, side).unwrap());
            assert!(validate_map(&b).passed);
        }
        assert!(disk_inclusion(3, 3, DiskSide::Source).unwrap().is_identity());
        assert_eq!(disk_inclusion(3, 2, DiskSide::Source).unwrap_err().code(), "BAD_DIMS");
    }

    #[test]
    fn theta_examples() {
        let t = theta(&ThetaSpec::pasting(vec![1, 1], vec![0])).unwrap();
        assert_eq!(t.graded_counts(), [(0, 3), (1, 2)].into());
        let t = theta(&ThetaSpec::pasting(vec![2, 1], vec![1])).unwrap();
        assert_eq!(t.graded_counts(), [(0, 2), (1, 2), (2, 1)].into());
        let t = theta(&ThetaSpec::pasting(vec![2, 2], vec![1])).unwrap();
        assert_eq!(t.graded_counts(), [(0, 2), (1, 3), (2, 2)].into());
        assert_eq!(*theta(&ThetaSpec::pasting(vec![3], vec![])).unwrap(), *disk(3).unwrap());
        assert!(validate_complex(&t).passed);
    }

    #[test]
    fn wedges() {
        let i = interval();
        let w = wedge(&i, &GeneratorName::int(1), &i, &GeneratorName::int(0)).unwrap();
        assert_eq!(w.graded_counts(), [(0, 3), (1, 2)].into());
        let w = wedge(&oriental(2).unwrap(), &subset("2"), &oriental(1).unwrap(), &subset("0")).unwrap();
        assert_eq!(w.graded_counts(), [(0, 4), (1, 4), (2, 1)].into());
        let u = unit();
        assert_eq!(wedge(&u, &point_name(), &u, &point_name()).unwrap().graded_counts(), [(0, 1)].into());
        assert_eq!(wedge(&i, &edge_name(), &i, &GeneratorName::int(0)).unwrap_err().code(), "BAD_BASEPOINT");
    }
}
