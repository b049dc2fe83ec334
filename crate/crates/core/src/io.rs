//! JSON documents for complexes and maps.
//!
//! Output is pretty-printed in canonical order (degrees ascending, generators
//! in basis order) with coefficients as decimal strings, so emitting is
//! deterministic and `emit ∘ parse ∘ emit = emit` byte for byte.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::complex::{validate_complex, BasedComplex, ComplexBuilder};
use crate::error::{AdcError, Result};
use crate::map::{validate_map, ComplexMap};
use crate::name::GeneratorName;
use crate::shapes;

pub const FORMAT_VERSION: &str = "steinerlab/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub generator: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeDoc {
    pub degree: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryDoc {
    pub generator: String,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AugmentationDoc {
    pub generator: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub format_version: String,
    pub degrees: Vec<DegreeDoc>,
    pub differential: Vec<BoundaryDoc>,
    pub augmentation: Vec<AugmentationDoc>,
}

/// A complex given inline or by a library reference such as `"cube 3"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexRef {
    Named(String),
    Inline(ComplexDocument),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub format_version: String,
    pub source: ComplexRef,
    pub target: ComplexRef,
    pub assignment: Vec<BoundaryDoc>,
}

fn terms_doc(terms: Vec<(GeneratorName, BigInt)>) -> Vec<TermDoc> {
    terms.into_iter().map(|(g, k)| TermDoc { generator: g.to_string(), coeff: k.to_string() }).collect()
}

pub fn complex_document(c: &BasedComplex) -> ComplexDocument {
    let degrees = (0..c.num_degrees())
        .map(|q| DegreeDoc { degree: q, generators: c.generators(q).iter().map(|n| n.to_string()).collect() })
        .collect();
    let mut differential = Vec::new();
    let mut augmentation = Vec::new();
    for (q, i, n) in c.iter() {
        if q == 0 {
            augmentation.push(AugmentationDoc { generator: n.to_string(), value: c.augmentation_of(i).to_string() });
        } else {
            let d = c.boundary_terms(q, i);
            let terms = d.iter().map(|(&j, k)| (c.name(q - 1, j).clone(), k.clone())).collect();
            differential.push(BoundaryDoc { generator: n.to_string(), terms: terms_doc(terms) });
        }
    }
    ComplexDocument { format_version: FORMAT_VERSION.into(), degrees, differential, augmentation }
}

pub fn map_document(f: &ComplexMap) -> MapDocument {
    let assignment = f
        .source()
        .iter()
        .map(|(_, _, n)| BoundaryDoc { generator: n.to_string(), terms: terms_doc(f.image_named(n)) })
        .collect();
    MapDocument {
        format_version: FORMAT_VERSION.into(),
        source: ComplexRef::Inline(complex_document(f.source())),
        target: ComplexRef::Inline(complex_document(f.target())),
        assignment,
    }
}

fn pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn emit_complex(c: &BasedComplex) -> String {
    pretty(&complex_document(c))
}

pub fn emit_map(f: &ComplexMap) -> String {
    pretty(&map_document(f))
}

/// Line and column (1-based) of the first occurrence of `needle` in `text`.
fn locate(text: &str, needle: &str) -> (usize, usize) {
    let Some(at) = text.find(needle) else { return (0, 0) };
    let before = &text[..at];
    let line = before.matches('\n').count() + 1;
    let column = at - before.rfind('\n').map_or(0, |p| p + 1) + 1;
    (line, column)
}

fn parse_error(text: &str, token: &str, message: String) -> AdcError {
    let (line, column) = locate(text, &format!("\"{token}\""));
    AdcError::Parse { line, column, message }
}

fn json_error(e: serde_json::Error) -> AdcError {
    AdcError::Parse { line: e.line(), column: e.column(), message: e.to_string() }
}

fn name_at(text: &str, s: &str) -> Result<GeneratorName> {
    GeneratorName::parse(s).map_err(|e| parse_error(text, s, format!("bad generator name {s:?}: {e}")))
}

fn int_at(text: &str, s: &str) -> Result<BigInt> {
    BigInt::from_str(s).map_err(|_| parse_error(text, s, format!("bad integer {s:?}")))
}

fn check_version(text: &str, v: &str) -> Result<()> {
    if v != FORMAT_VERSION {
        return Err(parse_error(text, v, format!("unsupported format_version {v:?}, expected {FORMAT_VERSION:?}")));
    }
    Ok(())
}

fn terms_at(text: &str, terms: &[TermDoc]) -> Result<Vec<(GeneratorName, BigInt)>> {
    terms.iter().map(|t| Ok((name_at(text, &t.generator)?, int_at(text, &t.coeff)?))).collect()
}

/// Builds without validating; `text` is only used to locate errors.
fn build_complex(text: &str, doc: &ComplexDocument) -> Result<BasedComplex> {
    check_version(text, &doc.format_version)?;
    let mut b = ComplexBuilder::new();
    for d in &doc.degrees {
        for g in &d.generators {
            b.add_generator(d.degree, name_at(text, g)?);
        }
    }
    for e in &doc.differential {
        b.set_boundary(name_at(text, &e.generator)?, terms_at(text, &e.terms)?);
    }
    for a in &doc.augmentation {
        b.set_augmentation(name_at(text, &a.generator)?, int_at(text, &a.value)?);
    }
    b.build().map_err(|e| match e {
        AdcError::Malformed(m) => AdcError::Parse { line: 0, column: 0, message: m },
        other => other,
    })
}

fn validated(c: BasedComplex) -> Result<Arc<BasedComplex>> {
    let r = validate_complex(&c);
    if !r.passed {
        return Err(AdcError::Validation(r));
    }
    Ok(Arc::new(c))
}

pub fn parse_complex(text: &str) -> Result<Arc<BasedComplex>> {
    let doc: ComplexDocument = serde_json::from_str(text).map_err(json_error)?;
    validated(build_complex(text, &doc)?)
}

fn resolve(text: &str, r: &ComplexRef) -> Result<Arc<BasedComplex>> {
    match r {
        ComplexRef::Inline(doc) => validated(build_complex(text, doc)?),
        ComplexRef::Named(s) => named_shape(s).map_err(|e| parse_error(text, s, e.to_string())),
    }
}

pub fn parse_map(text: &str) -> Result<ComplexMap> {
    let doc: MapDocument = serde_json::from_str(text).map_err(json_error)?;
    check_version(text, &doc.format_version)?;
    let source = resolve(text, &doc.source)?;
    let target = resolve(text, &doc.target)?;
    let mut rows = Vec::new();
    for a in &doc.assignment {
        rows.push((name_at(text, &a.generator)?, terms_at(text, &a.terms)?));
    }
    let f = ComplexMap::from_assignment(&source, &target, &rows).map_err(|e| match e {
        AdcError::Malformed(m) | AdcError::DegreeMismatch(m) => AdcError::Parse { line: 0, column: 0, message: m },
        other => other,
    })?;
    let r = validate_map(&f);
    if !r.passed {
        return Err(AdcError::Validation(r));
    }
    Ok(f)
}

fn usize_arg(word: &str, s: &str) -> Result<usize> {
    s.parse().map_err(|_| AdcError::BadDims(format!("{word}: expected a non-negative integer, got {s:?}")))
}

/// Library shapes by reference: `unit`, `zero`, `interval`, `disk N`,
/// `boundary-disk N`, `cube N`, `oriental N`, `antioriental N`.
pub fn named_shape(reference: &str) -> Result<Arc<BasedComplex>> {
    let words: Vec<&str> = reference.split_whitespace().collect();
    match words.as_slice() {
        ["unit"] => Ok(shapes::unit()),
        ["zero"] => Ok(shapes::zero()),
        ["interval"] => Ok(shapes::interval()),
        [kind, n] => {
            let n = usize_arg(kind, n)?;
            match *kind {
                "disk" => shapes::disk(n),
                "boundary-disk" => shapes::boundary_disk(n),
                "cube" => shapes::cube(n),
                "oriental" => shapes::oriental(n),
                "antioriental" => shapes::antioriental(n),
                _ => Err(AdcError::UnsupportedSpec(format!("unknown shape {kind:?}"))),
            }
        }
        _ => Err(AdcError::UnsupportedSpec(format!("unknown shape reference {reference:?}"))),
    }
}
