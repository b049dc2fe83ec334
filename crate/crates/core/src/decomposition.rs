//! Boundary and top-cell decompositions of cubes and orientals, computed as
//! colimits and compared with the direct constructions.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::chain::Terms;
use crate::colimit::{coequalizer, pushout, PushoutResult};
use crate::complex::{tagged_sum, truncate_top, BasedComplex};
use crate::error::{AdcError, Result};
use crate::map::{validate_map, ComplexMap};
use crate::name::GeneratorName;
use crate::report::CheckReport;
use crate::shapes::{
    boundary_disk, cube, disk, disk_cell, oriental, subset_elems, subset_name, word_letters, word_name, DiskSide,
};
use crate::steiner::atom_table;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Cube,
    Oriental,
}

impl Family {
    pub fn shape(self, n: usize) -> Result<Arc<BasedComplex>> {
        match self {
            Family::Cube => cube(n),
            Family::Oriental => oriental(n),
        }
    }
}

type Rename = Box<dyn Fn(&GeneratorName) -> GeneratorName>;

/// `∐ faces ⇇ ∐ double faces`, with each face's embedding into the shape.
struct FaceDiagram {
    faces: Vec<(String, Arc<BasedComplex>, Rename)>,
    /// Each double face with its two inclusions `(face index, rename)`.
    doubles: Vec<(String, Arc<BasedComplex>, [(usize, Rename); 2])>,
}

fn insert_letter(w: &GeneratorName, at: usize, letter: u64) -> GeneratorName {
    let mut l = word_letters(w);
    l.insert(at, GeneratorName::int(letter));
    word_name(l)
}

/// The coface `[m] → [m+1]` skipping `k`, applied to a subset.
fn skip_vertex(s: &GeneratorName, k: u64) -> GeneratorName {
    subset_name(&subset_elems(s).into_iter().map(|v| if v < k { v } else { v + 1 }).collect::<Vec<_>>())
}

/// Face `i = a` of `□ⁿ` as a map `□ⁿ⁻¹ → □ⁿ`.
pub fn cube_face_map(n: usize, i: usize, a: u64) -> Result<ComplexMap> {
    ComplexMap::renaming(&cube(n - 1)?, &cube(n)?, |w| insert_letter(w, i, a))
}

/// The face of `Δⁿ` missing vertex `k`, as a map `Δⁿ⁻¹ → Δⁿ`.
pub fn oriental_face_map(n: usize, k: u64) -> Result<ComplexMap> {
    ComplexMap::renaming(&oriental(n - 1)?, &oriental(n)?, |s| skip_vertex(s, k))
}

fn cube_diagram(n: usize) -> Result<FaceDiagram> {
    let face = cube(n - 1)?;
    let double = cube(n - 2)?;
    let mut faces = Vec::new();
    let mut index = HashMap::new();
    for i in 0..n {
        for a in 0..2u64 {
            index.insert((i, a), faces.len());
            let embed: Rename = Box::new(move |w| insert_letter(w, i, a));
            faces.push((format!("F{i}_{a}"), face.clone(), embed));
        }
    }
    let mut doubles = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for a in 0..2u64 {
                for b in 0..2u64 {
                    let into_i: Rename = Box::new(move |w| insert_letter(w, j - 1, b));
                    let into_j: Rename = Box::new(move |w| insert_letter(w, i, a));
                    doubles.push((
                        format!("G{i}_{j}_{a}{b}"),
                        double.clone(),
                        [(index[&(i, a)], into_i), (index[&(j, b)], into_j)],
                    ));
                }
            }
        }
    }
    Ok(FaceDiagram { faces, doubles })
}

fn oriental_diagram(n: usize) -> Result<FaceDiagram> {
    let face = oriental(n - 1)?;
    let double = oriental(n - 2)?;
    let faces = (0..=n as u64)
        .map(|k| {
            let embed: Rename = Box::new(move |s| skip_vertex(s, k));
            (format!("F{k}"), face.clone(), embed)
        })
        .collect();
    let mut doubles = Vec::new();
    for k in 0..=n as u64 {
        for l in k + 1..=n as u64 {
            let into_k: Rename = Box::new(move |s| skip_vertex(s, l - 1));
            let into_l: Rename = Box::new(move |s| skip_vertex(s, k));
            doubles.push((format!("G{k}_{l}"), double.clone(), [(k as usize, into_k), (l as usize, into_l)]));
        }
    }
    Ok(FaceDiagram { faces, doubles })
}

fn record_freeness(r: &mut CheckReport, p: &PushoutResult) {
    r.check("FREE", p.based && p.torsion_witness.is_none(), || match (&p.torsion_witness, &p.diagnostic) {
        (Some((q, d)), _) => format!("torsion of order {d} in degree {q}"),
        (None, Some(m)) => m.clone(),
        (None, None) => "not based".into(),
    });
}

/// The coequalizer of the double-face inclusions into the faces, renamed
/// through the face embeddings, equals the boundary of the n-shape.
pub fn boundary_decomposition_check(family: Family, n: usize) -> Result<CheckReport> {
    if n < 2 {
        return Err(AdcError::BadDims(format!("boundary decomposition needs n ≥ 2, got {n}")));
    }
    let diagram = match family {
        Family::Cube => cube_diagram(n)?,
        Family::Oriental => oriental_diagram(n)?,
    };
    let face_parts: Vec<(&str, &BasedComplex)> = diagram.faces.iter().map(|(t, c, _)| (t.as_str(), &**c)).collect();
    let double_parts: Vec<(&str, &BasedComplex)> =
        diagram.doubles.iter().map(|(t, c, _)| (t.as_str(), &**c)).collect();
    let faces = tagged_sum(&face_parts)?;
    let doubles = tagged_sum(&double_parts)?;
    let double_index: HashMap<&str, usize> =
        diagram.doubles.iter().enumerate().map(|(k, (t, _, _))| (t.as_str(), k)).collect();
    let leg = |which: usize| {
        ComplexMap::renaming(&doubles, &faces, |x| {
            let tag = x.tag().expect("tagged");
            let (_, _, legs) = &diagram.doubles[double_index[tag]];
            let (face, rename) = &legs[which];
            GeneratorName::tagged(&diagram.faces[*face].0, rename(x.untag(tag).expect("tagged")))
        })
    };
    let p = coequalizer(&leg(0)?, &leg(1)?)?;
    let mut r = CheckReport::new();
    record_freeness(&mut r, &p);
    let Some(q) = &p.complex else {
        return Ok(r);
    };
    let face_index: HashMap<&str, usize> =
        diagram.faces.iter().enumerate().map(|(k, (t, _, _))| (t.as_str(), k)).collect();
    let embed = |x: &GeneratorName| {
        let tag = x.tag().expect("tagged");
        (diagram.faces[face_index[tag]].2)(x.untag(tag).expect("tagged"))
    };
    let expected = truncate_top(&*family.shape(n)?)?;
    match q.rename(embed) {
        Ok(named) => r.check("EQUAL_PRESENTATION", named == *expected, || {
            format!("colimit counts {:?}, boundary counts {:?}", named.graded_counts(), expected.graded_counts())
        }),
        Err(e) => r.fail("EQUAL_PRESENTATION", format!("face embeddings are not injective on the colimit: {e}")),
    }
    Ok(r)
}

/// `Dⁿ ⊔_{∂Dⁿ} ∂O ≅ O` for the n-shape `O`, with `∂Dⁿ` attached along the
/// atom of the top cell: `Sᵏ(b0) ↦ x⁻ₖ`, `Sᵏ(b1) ↦ x⁺ₖ`.
pub fn top_cell_decomposition_check(family: Family, n: usize) -> Result<CheckReport> {
    if n < 1 {
        return Err(AdcError::BadDims("top-cell decomposition needs n ≥ 1".into()));
    }
    let shape = family.shape(n)?;
    let top = shape.name(n, 0).clone();
    let atom = atom_table(&shape, &top)?;
    let boundary = truncate_top(&shape)?;
    let sphere = boundary_disk(n)?;
    let ball = disk(n)?;
    let attach = ComplexMap::from_fn(&sphere, &boundary, |k, x| {
        let entry = if *x == disk_cell(k, Some(DiskSide::Source)) { atom.minus(k) } else { atom.plus(k) };
        shape.named_terms(entry)
    })?;
    let include = ComplexMap::by_name(&sphere, &ball)?;
    let p = pushout(&attach, &include)?;
    let mut r = CheckReport::new();
    r.merge("attach", validate_map(&attach));
    record_freeness(&mut r, &p);
    let (Some(glued), Some(la), Some(lb)) = (&p.complex, &p.leg_a, &p.leg_b) else {
        return Ok(r);
    };
    let to_glued = ComplexMap::from_fn(&shape, glued, |_, x| {
        if *x == top {
            lb.image_named(&disk_cell(n, None))
        } else {
            la.image_named(x)
        }
    })?;
    let mut hit = BTreeSet::new();
    let mut bijective = None;
    for (q, i, x) in shape.iter() {
        let img: &Terms = to_glued.image_terms(q, i);
        match img.iter().next() {
            Some((&j, k)) if img.len() == 1 && k.is_one() && hit.insert((q, j)) => {}
            _ => {
                bijective.get_or_insert_with(|| format!("{x} ↦ {}", to_glued.describe(x)));
            }
        }
    }
    if bijective.is_none() && hit.len() != glued.total_generators() {
        bijective = Some(format!("{} of {} colimit generators hit", hit.len(), glued.total_generators()));
    }
    let is_bijection = bijective.is_none();
    r.push("BASIS_BIJECTION", bijective);
    r.merge("comparison", validate_map(&to_glued));
    if is_bijection {
        let back: HashMap<GeneratorName, GeneratorName> = shape
            .iter()
            .map(|(q, i, x)| {
                let (&j, _) = to_glued.image_terms(q, i).iter().next().expect("bijection");
                (glued.name(q, j).clone(), x.clone())
            })
            .collect();
        let named = glued.rename(|y| back[y].clone())?;
        r.check("EQUAL_PRESENTATION", named == *shape, || "renamed colimit differs from the shape".into());
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::validate_complex;

    #[test]
    fn face_maps_are_chain_maps() {
        assert!(validate_map(&cube_face_map(3, 1, 0).unwrap()).passed);
        assert!(validate_map(&oriental_face_map(3, 2).unwrap()).passed);
    }

    #[test]
    fn boundaries_are_colimits_of_faces() {
        for n in 2..=4 {
            for f in [Family::Cube, Family::Oriental] {
                let r = boundary_decomposition_check(f, n).unwrap();
                assert!(r.passed, "{f:?} {n}: {r}");
            }
        }
        let c3 = truncate_top(&cube(3).unwrap()).unwrap();
        assert_eq!(c3.graded_counts(), [(0, 8), (1, 12), (2, 6)].into());
        assert!(matches!(boundary_decomposition_check(Family::Cube, 1), Err(AdcError::BadDims(_))));
    }

    #[test]
    fn shapes_are_one_cell_on_their_boundary() {
        for n in 1..=4 {
            for f in [Family::Cube, Family::Oriental] {
                let r = top_cell_decomposition_check(f, n).unwrap();
                assert!(r.passed, "{f:?} {n}: {r}");
                assert!(validate_complex(&f.shape(n).unwrap()).passed);
            }
        }
    }
}
