//! Chain-level retractions: cubes and Θ-objects as retracts of orientals.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::colimit::PushoutResult;
use crate::complex::BasedComplex;
use crate::error::{AdcError, Result};
use crate::map::{
    compose, compose_all, first_difference, first_non_identity, identity_map, validate_map, ComplexMap, Iso,
};
use crate::name::GeneratorName;
use crate::ops::duality::{cube_selfduality, dual_map, dual_op, interval_duality, swap_iso_op, Duality};
use crate::ops::join::{join, join_map, join_op_iso, join_pushout, left_name, right_name, Orientation};
use crate::ops::suspension::{bottom, susp_name, suspension, suspension_map};
use crate::ops::tensor::{gray_tensor, gray_tensor_map};
use crate::report::CheckReport;
use crate::shapes::{
    cone_to_subset, cube, edge_name, interval, oriental, point_name, subset, subset_elems,
    subset_name, subset_to_cone, theta_with_legs, unit, wedge_with_legs, word, word_letters, word_name, zero,
    DiskSide, Memo, ThetaSpec,
};

/// `embed: A → B` and `retract: B → A` with `retract ∘ embed = id`.
#[derive(Clone, Debug)]
pub struct RetractionPair {
    pub embed: ComplexMap,
    pub retract: ComplexMap,
}

impl RetractionPair {
    pub fn small(&self) -> &Arc<BasedComplex> {
        self.embed.source()
    }

    pub fn large(&self) -> &Arc<BasedComplex> {
        self.embed.target()
    }

    pub fn verify(&self) -> Result<CheckReport> {
        let mut r = CheckReport::new();
        r.merge("embed", validate_map(&self.embed));
        r.merge("retract", validate_map(&self.retract));
        r.push("COMPOSITE_IDENTITY", first_non_identity(&compose(&self.embed, &self.retract)?));
        let e = compose(&self.retract, &self.embed)?;
        r.push("IDEMPOTENT", first_difference(&compose(&e, &e)?, &e));
        Ok(r)
    }
}

fn one() -> BigInt {
    BigInt::one()
}

/// Images of `terms` under `f`, by name.
fn push_named(f: &ComplexMap, terms: Vec<(GeneratorName, BigInt)>) -> Vec<(GeneratorName, BigInt)> {
    let mut out = Vec::new();
    for (y, c) in terms {
        out.extend(f.image_named(&y).into_iter().map(|(z, d)| (z, &c * d)));
    }
    out
}

fn split_first(w: &GeneratorName) -> GeneratorName {
    let l = word_letters(w);
    GeneratorName::pair(l[0].clone(), word_name(l[1..].to_vec()))
}

fn split_last(w: &GeneratorName) -> GeneratorName {
    let mut l = word_letters(w);
    let last = l.pop().expect("non-empty word");
    GeneratorName::pair(word_name(l), last)
}

fn join_first(p: &GeneratorName) -> GeneratorName {
    let (u, w) = p.as_pair().expect("pair");
    let mut l = vec![u.clone()];
    l.extend(word_letters(w));
    word_name(l)
}

fn join_last(p: &GeneratorName) -> GeneratorName {
    let (w, u) = p.as_pair().expect("pair");
    let mut l = word_letters(w);
    l.push(u.clone());
    word_name(l)
}

/// `□ⁿ⁺¹ → □ⁿ ⊗ I`, splitting off the last letter.
fn cube_split_last(n: usize) -> Result<ComplexMap> {
    ComplexMap::renaming(&cube(n + 1)?, &gray_tensor(&*cube(n)?, &interval())?, split_last)
}

fn table_map(
    source: &Arc<BasedComplex>,
    target: &Arc<BasedComplex>,
    rows: &[(GeneratorName, Vec<(GeneratorName, i64)>)],
) -> Result<ComplexMap> {
    let rows: Vec<_> = rows
        .iter()
        .map(|(x, img)| (x.clone(), img.iter().map(|(y, k)| (y.clone(), BigInt::from(*k))).collect()))
        .collect();
    ComplexMap::from_assignment(source, target, &rows)
}

/// `q: □² → Δ²`, collapsing the edge `i1` onto the vertex 2.
pub fn q2() -> Result<ComplexMap> {
    let rows = [
        ("00", vec![("0", 1)]),
        ("10", vec![("1", 1)]),
        ("01", vec![("2", 1)]),
        ("11", vec![("2", 1)]),
        ("i0", vec![("01", 1)]),
        ("0i", vec![("02", 1)]),
        ("1i", vec![("12", 1)]),
        ("i1", vec![]),
        ("ii", vec![("012", 1)]),
    ];
    let rows: Vec<_> =
        rows.into_iter().map(|(w, img)| (word(w), img.into_iter().map(|(s, k)| (subset(s), k)).collect())).collect();
    table_map(&cube(2)?, &oriental(2)?, &rows)
}

/// `s: Δ² → □²`, sending the long edge to the path through `01`.
pub fn s2() -> Result<ComplexMap> {
    let rows = [
        ("0", vec![("00", 1)]),
        ("1", vec![("10", 1)]),
        ("2", vec![("11", 1)]),
        ("01", vec![("i0", 1)]),
        ("12", vec![("1i", 1)]),
        ("02", vec![("0i", 1), ("i1", 1)]),
        ("012", vec![("ii", 1)]),
    ];
    let rows: Vec<_> =
        rows.into_iter().map(|(s, img)| (subset(s), img.into_iter().map(|(w, k)| (word(w), k)).collect())).collect();
    table_map(&oriental(2)?, &cube(2)?, &rows)
}

/// `h_X = (s ∘ q) ⊗ id_X` on `□² ⊗ X`.
pub fn h_map(x: &Arc<BasedComplex>) -> Result<ComplexMap> {
    gray_tensor_map(&compose(&q2()?, &s2()?)?, &identity_map(x))
}

/// `ϱ_A: I ⊗ S(A) → S(I ⊗ A)`: `v⊗b ↦ b`, `i⊗b ↦ 0`, `u⊗S(x) ↦ S(u⊗x)`.
pub fn rho_map(a: &Arc<BasedComplex>) -> Result<ComplexMap> {
    let i = interval();
    let source = gray_tensor(&i, &*suspension(a)?)?;
    let target = suspension(&*gray_tensor(&i, a)?)?;
    ComplexMap::from_fn(&source, &target, |_, n| {
        let (u, y) = n.as_pair().expect("pair");
        match y.untag("S") {
            Some(x) => vec![(susp_name(&GeneratorName::pair(u.clone(), x.clone())), one())],
            None if u.as_int().is_some() => vec![(y.clone(), one())],
            None => Vec::new(),
        }
    })
}

/// Section of `ϱ_A`: `b0 ↦ 0⊗b0`, `b1 ↦ 1⊗b1`, `S(u⊗x) ↦ u⊗S(x)`, plus
/// `ε(x)·i⊗b1` for `u = 0` and `ε(x)·i⊗b0` for `u = 1` when x is a vertex.
pub fn phi_map(a: &Arc<BasedComplex>) -> Result<ComplexMap> {
    let i = interval();
    let source = suspension(&*gray_tensor(&i, a)?)?;
    let target = gray_tensor(&i, &*suspension(a)?)?;
    let pair = GeneratorName::pair;
    ComplexMap::from_fn(&source, &target, |_, n| {
        let Some(ux) = n.untag("S") else {
            let v = if *n == bottom(0) { 0 } else { 1 };
            return vec![(pair(GeneratorName::int(v), n.clone()), one())];
        };
        let (u, x) = ux.as_pair().expect("pair");
        let mut out = vec![(pair(u.clone(), susp_name(x)), one())];
        if let (Some(v), Some((0, k))) = (u.as_int(), a.locate(x)) {
            out.push((pair(edge_name(), bottom(1 - v)), a.augmentation_of(k).clone()));
        }
        out
    })
}

/// `p_A: A ⊗ I → A ⋆ pt`, the leg of the join pushout.
pub fn p_map(a: &Arc<BasedComplex>) -> Result<ComplexMap> {
    let jp = join_pushout(a, &unit(), Orientation::Standard)?;
    let source = gray_tensor(a, &interval())?;
    let lift = ComplexMap::renaming(&source, jp.tensor_leg.source(), |n| GeneratorName::pair(n.clone(), point_name()))?;
    compose(&lift, &jp.tensor_leg)
}

/// `A ⋆ pt → S(A)`: `L(x) ↦ [|x|=0]ε(x)·b0`, `J(x.pt) ↦ S(x)`, `R(pt) ↦ b1`.
pub fn ell_map(a: &Arc<BasedComplex>) -> Result<ComplexMap> {
    let source = join(a, &unit())?;
    let target = suspension(a)?;
    ComplexMap::from_fn(&source, &target, |_, n| {
        if let Some(x) = n.untag("L") {
            match a.locate(x) {
                Some((0, k)) => vec![(bottom(0), a.augmentation_of(k).clone())],
                _ => Vec::new(),
            }
        } else if n.untag("R").is_some() {
            vec![(bottom(1), one())]
        } else {
            vec![(susp_name(&n.children()[0]), one())]
        }
    })
}

/// `A ⊗ I → S(A)`, collapsing both ends: `ell ∘ p`.
pub fn q_susp(a: &Arc<BasedComplex>) -> Result<ComplexMap> {
    compose(&p_map(a)?, &ell_map(a)?)
}

/// `q_{□ⁿ}: □ⁿ⁺¹ → S(□ⁿ)`.
pub fn q_cube(n: usize) -> Result<ComplexMap> {
    compose(&cube_split_last(n)?, &q_susp(&cube(n)?)?)
}

/// Section of [`q_cube`], by `σ₀ = id` and `σₙ₊₁ = (I ⊗ σₙ) ∘ φ_{□ⁿ}`.
pub fn section_q_cube(n: usize) -> Result<RetractionPair> {
    static MEMO: Memo<usize, RetractionPair> = Memo::new();
    MEMO.get_or_try(n, || {
        let retract = q_cube(n)?;
        let embed = if n == 0 {
            let c1 = cube(1)?;
            ComplexMap::renaming(retract.target(), &c1, |x| {
                if let Some(v) = [bottom(0), bottom(1)].iter().position(|b| b == x) {
                    word_name(vec![GeneratorName::int(v as u64)])
                } else {
                    word_name(vec![edge_name()])
                }
            })?
        } else {
            let prev = section_q_cube(n - 1)?;
            let inner = cube(n - 1)?;
            let split = ComplexMap::renaming(&cube(n)?, &gray_tensor(&interval(), &inner)?, split_first)?;
            let step = gray_tensor_map(&identity_map(&interval()), &prev.embed)?;
            let merge = ComplexMap::renaming(step.target(), &cube(n + 1)?, join_first)?;
            compose_all(&[&suspension_map(&split)?, &phi_map(&inner)?, &step, &merge])?
        };
        Ok(RetractionPair { embed, retract })
    })
}

/// `ξₙ: □ⁿ → Δⁿ` with `ξₙ₊₁ = p_{Δⁿ} ∘ (ξₙ ⊗ I)`.
pub fn xi(n: usize) -> Result<ComplexMap> {
    static MEMO: Memo<usize, ComplexMap> = Memo::new();
    MEMO.get_or_try(n, || {
        if n == 0 {
            return ComplexMap::renaming(&unit(), &oriental(0)?, |_| subset_name(&[0]));
        }
        let o = oriental(n - 1)?;
        let step = gray_tensor_map(&xi(n - 1)?, &identity_map(&interval()))?;
        let p = p_map(&o)?;
        let name = ComplexMap::renaming(p.target(), &oriental(n)?, |x| cone_to_subset(x, n as u64))?;
        compose_all(&[&cube_split_last(n - 1)?, &step, &p, &name])
    })
}

/// `S ↦ n - S`, the isomorphism `(Δⁿ)^op → Δⁿ`.
pub fn oriental_reversal(n: usize) -> Result<ComplexMap> {
    let o = oriental(n)?;
    let rev = |s: &GeneratorName| {
        let mut e: Vec<u64> = subset_elems(s).into_iter().map(|v| n as u64 - v).collect();
        e.reverse();
        subset_name(&e)
    };
    ComplexMap::renaming(&dual_op(&o), &o, rev)
}

/// `Δⁿ → pt ⋆ Δⁿ⁻¹`, coning from the vertex 0.
fn left_cone_name(s: &GeneratorName) -> GeneratorName {
    let e = subset_elems(s);
    let shifted = |v: &[u64]| subset_name(&v.iter().map(|x| x - 1).collect::<Vec<_>>());
    if e[0] != 0 {
        right_name(&shifted(&e))
    } else if e.len() == 1 {
        left_name(&point_name())
    } else {
        GeneratorName::node("J", vec![point_name(), shifted(&e[1..])])
    }
}

fn left_cone_model(n: usize) -> Result<Arc<BasedComplex>> {
    if n == 0 {
        join(&unit(), &zero())
    } else {
        join(&unit(), &*oriental(n - 1)?)
    }
}

/// `r: I ⊗ B → pt ⋆ B`, collapsing the 0-end: `0⊗b ↦ [|b|=0]ε(b)·L(pt)`,
/// `1⊗b ↦ R(b)`, `i⊗b ↦ J(pt.b)`.
pub fn cone_quotient(b: &Arc<BasedComplex>) -> Result<ComplexMap> {
    let jp = join_pushout(&unit(), b, Orientation::Standard)?;
    let source = gray_tensor(&interval(), b)?;
    let lift = ComplexMap::renaming(&source, jp.tensor_leg.source(), |n| {
        let (v, y) = n.as_pair().expect("pair");
        GeneratorName::pair(GeneratorName::pair(point_name(), v.clone()), y.clone())
    })?;
    compose(&lift, &jp.tensor_leg)
}

/// `(κ, s)` for `B = pt ⋆ A`: `s: pt ⋆ B → I ⊗ B` is a section of
/// [`cone_quotient`] and `κ = s ∘ r` is the induced idempotent on `I ⊗ B`.
pub fn e_s_kappa(a: &Arc<BasedComplex>) -> Result<(ComplexMap, ComplexMap)> {
    let b = join(&unit(), a)?;
    let r = cone_quotient(&b)?;
    let pair = GeneratorName::pair;
    let (zero_end, one_end) = (GeneratorName::int(0), GeneratorName::int(1));
    let s = ComplexMap::from_fn(r.target(), r.source(), |_, n| {
        if n.untag("L").is_some() {
            return vec![(pair(zero_end.clone(), left_name(&point_name())), one())];
        }
        if let Some(y) = n.untag("R") {
            return vec![(pair(one_end.clone(), y.clone()), one())];
        }
        let y = &n.children()[1];
        let mut out = vec![(pair(edge_name(), y.clone()), one())];
        if let Some(x) = y.untag("R") {
            out.push((pair(zero_end.clone(), GeneratorName::node("J", vec![point_name(), x.clone()])), one()));
        }
        out
    })?;
    Ok((compose(&r, &s)?, s))
}

/// The identities relating `r`, `s` and `κ`.
pub fn e_s_kappa_report(a: &Arc<BasedComplex>) -> Result<CheckReport> {
    let (kappa, s) = e_s_kappa(a)?;
    let r = cone_quotient(&join(&unit(), a)?)?;
    let mut rep = CheckReport::new();
    rep.merge("r", validate_map(&r));
    rep.merge("s", validate_map(&s));
    rep.merge("kappa", validate_map(&kappa));
    rep.push("SECTION", first_non_identity(&compose(&s, &r)?));
    rep.push("KAPPA_IDEMPOTENT", first_difference(&compose(&kappa, &kappa)?, &kappa));
    rep.push("KAPPA_OVER_R", first_difference(&compose(&kappa, &r)?, &r));
    Ok(rep)
}

/// For `A = pt`, `κ` on `I ⊗ (pt ⋆ pt) ≅ □²` is `h` conjugated by the
/// self-duality `(□²)^op ≅ □²`.
pub fn kappa_square_check() -> Result<CheckReport> {
    let (kappa, _) = e_s_kappa(&unit())?;
    let c2 = cube(2)?;
    let letter = |y: &GeneratorName| {
        if y.untag("L").is_some() {
            GeneratorName::int(0)
        } else if y.untag("R").is_some() {
            GeneratorName::int(1)
        } else {
            edge_name()
        }
    };
    let to_words = |n: &GeneratorName| {
        let (u, y) = n.as_pair().expect("pair");
        word_name(vec![u.clone(), letter(y)])
    };
    let name = ComplexMap::renaming(kappa.source(), &c2, to_words)?;
    let back = ComplexMap::renaming(&c2, kappa.source(), |w| {
        let l = word_letters(w);
        let y = match l[1].as_int() {
            Some(0) => left_name(&point_name()),
            Some(_) => right_name(&point_name()),
            None => GeneratorName::node("J", vec![point_name(), point_name()]),
        };
        GeneratorName::pair(l[0].clone(), y)
    })?;
    let transported = compose_all(&[&back, &kappa, &name])?;
    let dual = cube_selfduality(2, Duality::Op)?;
    let h_op = dual_map(&h_map(&unit())?, Duality::Op)?;
    // h ⊗ pt read on □² through the right unitor.
    let unitor = ComplexMap::renaming(&dual_op(&c2), h_op.source(), |w| GeneratorName::pair(w.clone(), point_name()))?;
    let counit = ComplexMap::renaming(h_op.target(), &dual_op(&c2), |p| p.as_pair().expect("pair").0.clone())?;
    let conjugated = compose_all(&[&dual.inverse, &unitor, &h_op, &counit, &dual.forward])?;
    let mut r = CheckReport::new();
    r.push("KAPPA_IS_CONJUGATED_H", first_difference(&transported, &conjugated));
    Ok(r)
}

/// Section of `p_{Δⁿ}` (read on `Δⁿ⁺¹ ≅ Δⁿ ⋆ pt`), transported from the
/// section `s` of the left-cone quotient through op-duality:
/// `(Δⁿ ⋆ pt)^op ≅ pt ⋆ Δⁿ` and `(Δⁿ ⊗ I)^op ≅ I ⊗ Δⁿ`.
pub fn p_section(n: usize) -> Result<ComplexMap> {
    static MEMO: Memo<usize, ComplexMap> = Memo::new();
    MEMO.get_or_try(n, || {
        let o = oriental(n)?;
        let a = if n == 0 { zero() } else { oriental(n - 1)? };
        let b = left_cone_model(n)?;
        let (_, s) = e_s_kappa(&a)?;
        let rev = oriental_reversal(n)?;
        let to_cone = ComplexMap::renaming(&o, &b, left_cone_name)?;
        let rev_cone = compose(&rev, &to_cone)?;
        let from_cone = ComplexMap::renaming(&b, &o, |y| {
            o.iter().map(|(_, _, x)| x).find(|x| left_cone_name(x) == *y).expect("bijection").clone()
        })?;
        let cone_rev = compose(&from_cone, &oriental_reversal_inverse(n)?)?;

        let w1 = join_op_iso(&unit(), &o)?.inverse;
        let w2 = join_map(&identity_map(&dual_op(&unit())), &rev_cone)?;
        let swap = swap_iso_op(&interval(), &o)?;
        let flip = interval_duality(Duality::Op)?;
        let u_inv = gray_tensor_map(&flip.inverse, &cone_rev)?;
        let w2 = w2.reinterpret(w1.target(), s.source())?;
        let u_inv = u_inv.reinterpret(s.target(), swap.forward.source())?;
        let on_op = compose_all(&[&w1, &w2, &s, &u_inv, &swap.forward])?;
        let plain = on_op.reinterpret(&join(&o, &unit())?, &gray_tensor(&o, &interval())?)?;
        let name = ComplexMap::renaming(&oriental(n + 1)?, plain.source(), |x| subset_to_cone(x, n as u64 + 1))?;
        compose(&name, &plain)
    })
}

fn oriental_reversal_inverse(n: usize) -> Result<ComplexMap> {
    let f = oriental_reversal(n)?;
    ComplexMap::renaming(f.target(), f.source(), |s| {
        let mut e: Vec<u64> = subset_elems(s).into_iter().map(|v| n as u64 - v).collect();
        e.reverse();
        subset_name(&e)
    })
}

/// Section of `ξₙ`: `σₙ₊₁ = (σₙ ⊗ I) ∘ t` with `t` from [`p_section`].
pub fn section_xi(n: usize) -> Result<RetractionPair> {
    static MEMO: Memo<usize, RetractionPair> = Memo::new();
    MEMO.get_or_try(n, || {
        let retract = xi(n)?;
        let embed = if n == 0 {
            ComplexMap::renaming(&oriental(0)?, &unit(), |_| point_name())?
        } else {
            let prev = section_xi(n - 1)?;
            let step = gray_tensor_map(&prev.embed, &identity_map(&interval()))?;
            let merge = ComplexMap::renaming(step.target(), &cube(n)?, join_last)?;
            compose_all(&[&p_section(n - 1)?, &step, &merge])?
        };
        Ok(RetractionPair { embed, retract })
    })
}

/// `ℓ: Δⁿ⁺¹ ≅ Δⁿ ⋆ pt → S(Δⁿ)`.
pub fn ell_oriental(n: usize) -> Result<ComplexMap> {
    let o = oriental(n)?;
    let ell = ell_map(&o)?;
    let name = ComplexMap::renaming(&oriental(n + 1)?, ell.source(), |x| subset_to_cone(x, n as u64 + 1))?;
    compose(&name, &ell)
}

/// Section of `ℓ`: `ξₙ₊₁ ∘ σ_q ∘ S(σ_ξ)`.
pub fn section_ell(n: usize) -> Result<RetractionPair> {
    static MEMO: Memo<usize, RetractionPair> = Memo::new();
    MEMO.get_or_try(n, || {
        let sx = suspension_map(&section_xi(n)?.embed)?;
        let embed = compose_all(&[&sx, &section_q_cube(n)?.embed, &xi(n + 1)?])?;
        Ok(RetractionPair { embed, retract: ell_oriental(n)? })
    })
}

/// `ℓ ∘ ξₙ₊₁ = S(ξₙ) ∘ q_{□ⁿ}`.
pub fn ell_square_check(n: usize) -> Result<CheckReport> {
    let lhs = compose(&xi(n + 1)?, &ell_oriental(n)?)?;
    let rhs = compose(&q_cube(n)?, &suspension_map(&xi(n)?)?)?;
    let mut r = CheckReport::new();
    r.push("ELL_XI_SQUARE", first_difference(&lhs, &rhs));
    Ok(r)
}

type SubsetChain = BTreeMap<Vec<u64>, BigInt>;

fn add_subset(acc: &mut SubsetChain, s: Vec<u64>, k: BigInt) {
    let e = acc.entry(s).or_insert_with(BigInt::zero);
    *e += k;
    if e.is_zero() {
        let key = acc.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| k.clone()).expect("present");
        acc.remove(&key);
    }
}

fn all_subsets(n: usize) -> Vec<Vec<u64>> {
    (1u64..1 << (n + 1)).map(|mask| (0..=n as u64).filter(|v| mask >> v & 1 == 1).collect()).collect()
}

/// `θ_{n,m}: Δⁿ⁺ᵐ → Δⁿ ∨ Δᵐ` on subsets, the wedge read as the subsets of
/// `[0,n]` or `[n,n+m]`. Built by induction: `θ_{n,1} = τ ∘ (pt ⋆ θ_{n-1,1})`
/// and `θ_{n,m+1} = ρ ∘ (θ_{n,m} ⋆ pt)`.
fn theta_subsets(n: usize, m: usize) -> Result<Arc<HashMap<Vec<u64>, SubsetChain>>> {
    static MEMO: Memo<(usize, usize), Arc<HashMap<Vec<u64>, SubsetChain>>> = Memo::new();
    MEMO.get_or_try((n, m), || {
        crate::complex::check_size((1usize << (n + m + 1).min(62)) - 1)?;
        let total = n + m;
        let mut table = HashMap::new();
        if m == 0 || (m == 1 && n == 0) {
            for s in all_subsets(total) {
                table.insert(s.clone(), SubsetChain::from([(s, one())]));
            }
            return Ok(Arc::new(table));
        }
        if m == 1 {
            let prev = theta_subsets(n - 1, 1)?;
            let (b, c) = (n as u64, n as u64 + 1);
            for s in all_subsets(total) {
                let mut coned = SubsetChain::new();
                if s[0] == 0 && s.len() == 1 {
                    add_subset(&mut coned, s.clone(), one());
                } else {
                    let t: Vec<u64> = s.iter().filter(|&&v| v != 0).map(|v| v - 1).collect();
                    for (u, k) in &prev[&t] {
                        let mut img: Vec<u64> = u.iter().map(|v| v + 1).collect();
                        if s[0] == 0 {
                            img.insert(0, 0);
                        }
                        add_subset(&mut coned, img, k.clone());
                    }
                }
                // τ: κ on the triangle {0, n, n+1}, identity elsewhere.
                let mut out = SubsetChain::new();
                for (v, k) in coned {
                    if v == [0, c] {
                        add_subset(&mut out, vec![0, b], k.clone());
                        add_subset(&mut out, vec![b, c], k);
                    } else if v != [0, b, c] {
                        add_subset(&mut out, v, k);
                    }
                }
                table.insert(s, out);
            }
            return Ok(Arc::new(table));
        }
        let prev = theta_subsets(n, m - 1)?;
        let kappa = theta_subsets(n, 1)?;
        let apex = total as u64;
        let base = n as u64;
        for s in all_subsets(total) {
            let mut coned = SubsetChain::new();
            if s.last() != Some(&apex) {
                coned = prev[&s].clone();
            } else if s.len() == 1 {
                add_subset(&mut coned, s.clone(), one());
            } else {
                for (u, k) in &prev[&s[..s.len() - 1]] {
                    let mut img = u.clone();
                    img.push(apex);
                    add_subset(&mut coned, img, k.clone());
                }
            }
            // ρ: identity on [n, apex], θ_{n,1} on [0,n] ∪ {apex}.
            let mut out = SubsetChain::new();
            for (v, k) in coned {
                if v.iter().all(|&x| x >= base) {
                    add_subset(&mut out, v, k);
                    continue;
                }
                let local: Vec<u64> = v.iter().map(|&x| if x == apex { base + 1 } else { x }).collect();
                for (w, j) in &kappa[&local] {
                    let back = w.iter().map(|&x| if x == base + 1 { apex } else { x }).collect();
                    add_subset(&mut out, back, &k * j);
                }
            }
            table.insert(s, out);
        }
        Ok(Arc::new(table))
    })
}

/// `Δⁿ ∨ Δᵐ` as the pushout identifying `(n)` with `(0)`, and as the
/// subcomplex of `Δⁿ⁺ᵐ` on subsets of `[0,n]` or `[n,n+m]`.
pub struct WedgeModel {
    pub wedge: PushoutResult,
    pub subcomplex: Arc<BasedComplex>,
    pub iso: Iso,
}

pub fn wedge_model(n: usize, m: usize) -> Result<WedgeModel> {
    let (a, b) = (oriental(n)?, oriental(m)?);
    let wedge = wedge_with_legs(&a, &subset_name(&[n as u64]), &b, &subset_name(&[0]))?;
    let w = wedge.complex()?.clone();
    let nn = n as u64;
    let sub = Arc::new(oriental(n + m)?.restrict(|s| {
        let e = subset_elems(s);
        e.iter().all(|&v| v <= nn) || e.iter().all(|&v| v >= nn)
    })?);
    let forward = ComplexMap::renaming(&w, &sub, |x| {
        if let Some(s) = x.untag("L") {
            s.clone()
        } else {
            let t = x.untag("R").expect("wedge summand");
            subset_name(&subset_elems(t).into_iter().map(|v| v + nn).collect::<Vec<_>>())
        }
    })?;
    let inverse = ComplexMap::renaming(&sub, &w, |s| {
        let l = left_name(s);
        if w.contains(&l) {
            return l;
        }
        right_name(&subset_name(&subset_elems(s).into_iter().map(|v| v - nn).collect::<Vec<_>>()))
    })?;
    Ok(WedgeModel { wedge, subcomplex: sub, iso: Iso { forward, inverse } })
}

/// `ζ_{n,m} = α + β: Δⁿ ∨ Δᵐ → Δⁿ⁺ᵐ`.
pub fn zeta(n: usize, m: usize) -> Result<ComplexMap> {
    let model = wedge_model(n, m)?;
    compose(&model.iso.forward, &ComplexMap::by_name(&model.subcomplex, &oriental(n + m)?)?)
}

/// Left inverse of [`zeta`].
pub fn theta_left_inverse(n: usize, m: usize) -> Result<ComplexMap> {
    let model = wedge_model(n, m)?;
    let table = theta_subsets(n, m)?;
    let on_subsets = ComplexMap::from_fn(&oriental(n + m)?, &model.subcomplex, |_, s| {
        table[&subset_elems(s)].iter().map(|(v, k)| (subset_name(v), k.clone())).collect()
    })?;
    compose(&on_subsets, &model.iso.inverse)
}

pub fn zeta_theta_pair(n: usize, m: usize) -> Result<RetractionPair> {
    Ok(RetractionPair { embed: zeta(n, m)?, retract: theta_left_inverse(n, m)? })
}

/// How a Θ-object is generated from the point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaTree {
    Point,
    Susp(Box<ThetaTree>),
    /// Target vertex of the first glued to the source vertex of the second.
    Wedge(Box<ThetaTree>, Box<ThetaTree>),
}

impl ThetaTree {
    /// Dimension of the simplex the tree retracts from.
    pub fn simplex_dim(&self) -> usize {
        match self {
            ThetaTree::Point => 0,
            ThetaTree::Susp(t) => t.simplex_dim() + 1,
            ThetaTree::Wedge(a, b) => a.simplex_dim() + b.simplex_dim(),
        }
    }
}

/// Reads a spec as iterated suspensions and wedges; only target-to-source
/// pastings have such a reading.
pub fn theta_tree(spec: &ThetaSpec) -> Result<ThetaTree> {
    spec.validate()?;
    for (l, &(a, b)) in spec.sides.iter().enumerate() {
        let j = spec.glue[l];
        let left_ok = a == DiskSide::Target || j == spec.dims[l];
        let right_ok = b == DiskSide::Source || j == spec.dims[l + 1];
        if !left_ok || !right_ok {
            return Err(AdcError::UnsupportedSpec(format!(
                "gluing {l} uses sides ({a:?}, {b:?}); only target-to-source pastings are generated by wedges"
            )));
        }
    }
    Ok(tree_of(&spec.dims, &spec.glue))
}

fn tree_of(dims: &[usize], glue: &[usize]) -> ThetaTree {
    if let Some(cut) = glue.iter().position(|&j| j == 0) {
        let left = tree_of(&dims[..=cut], &glue[..cut]);
        let right = tree_of(&dims[cut + 1..], &glue[cut + 1..]);
        return ThetaTree::Wedge(Box::new(left), Box::new(right));
    }
    if dims == [0] {
        return ThetaTree::Point;
    }
    let lower: Vec<usize> = dims.iter().map(|d| d - 1).collect();
    let glue: Vec<usize> = glue.iter().map(|j| j - 1).collect();
    ThetaTree::Susp(Box::new(tree_of(&lower, &glue)))
}

struct TreeModel {
    complex: Arc<BasedComplex>,
    start: GeneratorName,
    end: GeneratorName,
    legs: Vec<ComplexMap>,
    pair: RetractionPair,
}

fn only_name(terms: Vec<(GeneratorName, BigInt)>) -> GeneratorName {
    terms.into_iter().next().expect("basepoint image").0
}

fn build_tree(t: &ThetaTree) -> Result<TreeModel> {
    match t {
        ThetaTree::Point => {
            let u = unit();
            let o = oriental(0)?;
            Ok(TreeModel {
                complex: u.clone(),
                start: point_name(),
                end: point_name(),
                legs: vec![identity_map(&u)],
                pair: RetractionPair {
                    embed: ComplexMap::renaming(&u, &o, |_| subset_name(&[0]))?,
                    retract: ComplexMap::renaming(&o, &u, |_| point_name())?,
                },
            })
        }
        ThetaTree::Susp(inner) => {
            let m = build_tree(inner)?;
            let ell = section_ell(inner.simplex_dim())?;
            let embed = compose(&suspension_map(&m.pair.embed)?, &ell.embed)?;
            let retract = compose(&ell.retract, &suspension_map(&m.pair.retract)?)?;
            let legs = m.legs.iter().map(suspension_map).collect::<Result<_>>()?;
            Ok(TreeModel {
                complex: suspension(&m.complex)?,
                start: bottom(0),
                end: bottom(1),
                legs,
                pair: RetractionPair { embed, retract },
            })
        }
        ThetaTree::Wedge(a, b) => {
            let ma = build_tree(a)?;
            let mb = build_tree(b)?;
            let (na, nb) = (a.simplex_dim(), b.simplex_dim());
            let w = wedge_with_legs(&ma.complex, &ma.end, &mb.complex, &mb.start)?;
            let (xw, xa, xb) = (w.complex()?.clone(), w.leg_a()?.clone(), w.leg_b()?.clone());
            let dm = wedge_model(na, nb)?;
            let (dw, da, db) = (dm.wedge.complex()?.clone(), dm.wedge.leg_a()?, dm.wedge.leg_b()?);
            let embed_w = ComplexMap::from_fn(&xw, &dw, |_, g| match (g.untag("L"), g.untag("R")) {
                (Some(x), _) => push_named(da, ma.pair.embed.image_named(x)),
                (_, Some(y)) => push_named(db, mb.pair.embed.image_named(y)),
                _ => unreachable!("wedge generators are tagged"),
            })?;
            let retract_w = ComplexMap::from_fn(&dw, &xw, |_, g| match (g.untag("L"), g.untag("R")) {
                (Some(x), _) => push_named(&xa, ma.pair.retract.image_named(x)),
                (_, Some(y)) => push_named(&xb, mb.pair.retract.image_named(y)),
                _ => unreachable!("wedge generators are tagged"),
            })?;
            let embed = compose(&embed_w, &zeta(na, nb)?)?;
            let retract = compose(&theta_left_inverse(na, nb)?, &retract_w)?;
            let mut legs: Vec<ComplexMap> = ma.legs.iter().map(|l| compose(l, &xa)).collect::<Result<_>>()?;
            for l in &mb.legs {
                legs.push(compose(l, &xb)?);
            }
            Ok(TreeModel {
                start: only_name(xa.image_named(&ma.start)),
                end: only_name(xb.image_named(&mb.end)),
                complex: xw,
                legs,
                pair: RetractionPair { embed, retract },
            })
        }
    }
}

/// Iso between two complexes covered by parallel families of disk legs,
/// matching the images of the same disk generator.
fn iso_from_legs(a: &Arc<BasedComplex>, la: &[ComplexMap], b: &Arc<BasedComplex>, lb: &[ComplexMap]) -> Result<Iso> {
    let one_way = |s: &Arc<BasedComplex>, ls: &[ComplexMap], t: &Arc<BasedComplex>, lt: &[ComplexMap]| {
        let mut origin = HashMap::new();
        for (k, leg) in ls.iter().enumerate() {
            for (_, _, y) in leg.source().iter() {
                if let [(g, c)] = leg.image_named(y).as_slice() {
                    if c.is_one() {
                        origin.entry(g.clone()).or_insert((k, y.clone()));
                    }
                }
            }
        }
        ComplexMap::from_fn(s, t, |_, g| match origin.get(g) {
            Some((k, y)) => lt[*k].image_named(y),
            None => Vec::new(),
        })
    };
    Ok(Iso { forward: one_way(a, la, b, lb)?, inverse: one_way(b, lb, a, la)? })
}

/// A Θ-object as a retract of `Δᴺ`.
#[derive(Clone, Debug)]
pub struct ThetaRetraction {
    pub tree: ThetaTree,
    pub simplex_dim: usize,
    pub pair: RetractionPair,
    /// Between the iterated pushout of disks and the suspension/wedge model.
    pub model_iso: Iso,
}

impl ThetaRetraction {
    pub fn verify(&self) -> Result<CheckReport> {
        let mut r = self.pair.verify()?;
        r.merge("model", self.model_iso.verify()?);
        Ok(r)
    }
}

pub fn theta_retract_into_oriental(spec: &ThetaSpec) -> Result<ThetaRetraction> {
    let tree = theta_tree(spec)?;
    let model = build_tree(&tree)?;
    let (theta, legs) = theta_with_legs(spec)?;
    let model_iso = iso_from_legs(&theta, &legs, &model.complex, &model.legs)?;
    let pair = RetractionPair {
        embed: compose(&model_iso.forward, &model.pair.embed)?,
        retract: compose(&model.pair.retract, &model_iso.inverse)?,
    };
    Ok(ThetaRetraction { simplex_dim: tree.simplex_dim(), tree, pair, model_iso })
}
