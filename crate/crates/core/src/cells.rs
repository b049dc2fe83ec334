//! Cells of ν(A) as tables of ℕ-chains, with sources, targets, identities
//! and composition.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::chain::Chain;
use crate::complex::BasedComplex;
use crate::error::{AdcError, Result};
use crate::map::same_complex;
use crate::report::CheckReport;

/// A double sequence `x⁻₀ … x⁻ₙ`, `x⁺₀ … x⁺ₙ` of chains of one complex.
#[derive(Clone, Debug)]
pub struct CellTable {
    ambient: Arc<BasedComplex>,
    minus: Vec<Chain>,
    plus: Vec<Chain>,
}

impl PartialEq for CellTable {
    fn eq(&self, other: &Self) -> bool {
        same_complex(&self.ambient, &other.ambient) && self.minus == other.minus && self.plus == other.plus
    }
}

impl Eq for CellTable {}

impl CellTable {
    /// Checks only the shape: equal lengths, at least one level, entry k of degree k.
    pub fn new(ambient: &Arc<BasedComplex>, minus: Vec<Chain>, plus: Vec<Chain>) -> Result<Self> {
        if minus.is_empty() || minus.len() != plus.len() {
            return Err(AdcError::Malformed("cell table needs equally many minus and plus entries".into()));
        }
        for (k, (m, p)) in minus.iter().zip(&plus).enumerate() {
            if m.degree() != k || p.degree() != k {
                return Err(AdcError::Malformed(format!("cell table entry at level {k} has the wrong degree")));
            }
            let in_range = |c: &Chain| c.support().all(|i| i < ambient.rank(k));
            if !in_range(m) || !in_range(p) {
                return Err(AdcError::Malformed(format!("cell table entry at level {k} is not a chain of the ambient")));
            }
        }
        Ok(CellTable { ambient: ambient.clone(), minus, plus })
    }

    pub fn ambient(&self) -> &Arc<BasedComplex> {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.minus.len() - 1
    }

    pub fn minus(&self, k: usize) -> &Chain {
        &self.minus[k]
    }

    pub fn plus(&self, k: usize) -> &Chain {
        &self.plus[k]
    }

    pub fn top(&self) -> &Chain {
        &self.minus[self.dim()]
    }

    /// An identity cell: top chain zero over a repeated boundary.
    pub fn is_degenerate(&self) -> bool {
        let n = self.dim();
        n > 0 && self.top().is_zero() && self.plus[n].is_zero() && self.minus[n - 1] == self.plus[n - 1]
    }
}

impl fmt::Display for CellTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in (0..=self.dim()).rev() {
            writeln!(
                f,
                "{k}: - {} | + {}",
                self.ambient.format_chain(&self.minus[k]),
                self.ambient.format_chain(&self.plus[k])
            )?;
        }
        Ok(())
    }
}

pub fn validate_table(t: &CellTable) -> CheckReport {
    let c = &t.ambient;
    let n = t.dim();
    let mut r = CheckReport::new();
    r.check("TOP_MATCH", t.minus[n] == t.plus[n], || {
        format!("{} vs {}", c.format_chain(&t.minus[n]), c.format_chain(&t.plus[n]))
    });
    let negative = (0..=n).find_map(|k| {
        [("-", &t.minus[k]), ("+", &t.plus[k])]
            .into_iter()
            .find(|(_, x)| !x.is_natural())
            .map(|(s, x)| format!("x{s}{k} = {}", c.format_chain(x)))
    });
    r.push("NATURAL", negative);
    let mismatch = (1..=n).find_map(|k| {
        let expected = t.plus[k - 1].sub(&t.minus[k - 1]);
        [("-", &t.minus[k]), ("+", &t.plus[k])].into_iter().find_map(|(s, x)| {
            let dx = c.d(x).expect("degree ≥ 1");
            (dx != expected).then(|| {
                format!("d(x{s}{k}) = {}, expected {}", c.format_chain(&dx), c.format_chain(&expected))
            })
        })
    });
    r.push("BOUNDARY", mismatch);
    let (em, ep) = (c.augment(&t.minus[0]), c.augment(&t.plus[0]));
    r.check("UNIT_AUGMENTATION", em.is_one() && ep.is_one(), || format!("ε(x-0) = {em}, ε(x+0) = {ep}"));
    r
}

fn truncate(t: &CellTable, k: usize, top_from_plus: bool) -> Result<CellTable> {
    if k > t.dim() {
        return Err(AdcError::BadLevel { level: k, dim: t.dim() });
    }
    let mut minus = t.minus[..=k].to_vec();
    let mut plus = t.plus[..=k].to_vec();
    let top = if top_from_plus { t.plus[k].clone() } else { t.minus[k].clone() };
    minus[k] = top.clone();
    plus[k] = top;
    Ok(CellTable { ambient: t.ambient.clone(), minus, plus })
}

/// The k-dimensional source of `t`.
pub fn source(t: &CellTable, k: usize) -> Result<CellTable> {
    truncate(t, k, false)
}

/// The k-dimensional target of `t`.
pub fn target(t: &CellTable, k: usize) -> Result<CellTable> {
    truncate(t, k, true)
}

/// The identity on `t`, one dimension up, with zero top chain.
pub fn identity_table(t: &CellTable) -> CellTable {
    let mut out = t.clone();
    let n = t.dim() + 1;
    out.minus.push(Chain::zero(n));
    out.plus.push(Chain::zero(n));
    out
}

/// Iterated identity raising `t` to dimension `n`.
pub fn lift_to(t: &CellTable, n: usize) -> CellTable {
    let mut out = t.clone();
    while out.dim() < n {
        out = identity_table(&out);
    }
    out
}

/// `u ∘ₚ t`, defined when `target(t, p) = source(u, p)`. Above `p` the chains
/// add; at `p` the source comes from `t` and the target from `u`; below `p`
/// the two cells agree.
pub fn compose_tables(u: &CellTable, t: &CellTable, p: usize) -> Result<CellTable> {
    if !same_complex(&u.ambient, &t.ambient) {
        return Err(AdcError::NotComposable("cells live in different complexes".into()));
    }
    let n = t.dim();
    if u.dim() != n || p >= n {
        return Err(AdcError::NotComposable(format!(
            "dimensions {} and {} cannot be composed along level {p}",
            t.dim(),
            u.dim()
        )));
    }
    if target(t, p)? != source(u, p)? {
        return Err(AdcError::NotComposable(format!("target({p}) of the first cell is not source({p}) of the second")));
    }
    let mut minus = Vec::with_capacity(n + 1);
    let mut plus = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k < p {
            minus.push(t.minus[k].clone());
            plus.push(t.plus[k].clone());
        } else if k == p {
            minus.push(t.minus[k].clone());
            plus.push(u.plus[k].clone());
        } else {
            minus.push(t.minus[k].add(&u.minus[k]));
            plus.push(t.plus[k].add(&u.plus[k]));
        }
    }
    let out = CellTable { ambient: t.ambient.clone(), minus, plus };
    let report = validate_table(&out);
    if !report.passed {
        return Err(AdcError::InvalidResult(report.summary()));
    }
    Ok(out)
}

/// Cells of dimension exactly `n`: every atom of dimension ≤ n raised by
/// identities, followed by binary composites, at most `bound` in total.
pub fn enumerate_cells(c: &Arc<BasedComplex>, n: usize, bound: usize) -> Result<Vec<CellTable>> {
    let mut pool = Vec::new();
    for (q, _, name) in c.iter() {
        if q <= n && pool.len() < bound {
            pool.push(lift_to(&crate::steiner::atom_table(c, name)?, n));
        }
    }
    let atoms = pool.len();
    'outer: for p in 0..n {
        for i in 0..atoms {
            for j in 0..atoms {
                if pool.len() >= bound {
                    break 'outer;
                }
                if let Ok(x) = compose_tables(&pool[j], &pool[i], p) {
                    if !pool.contains(&x) {
                        pool.push(x);
                    }
                }
            }
        }
    }
    Ok(pool)
}

fn composable(u: &CellTable, t: &CellTable, p: usize) -> bool {
    matches!((target(t, p), source(u, p)), (Ok(a), Ok(b)) if a == b)
}

/// Globularity, units, associativity and interchange over the cells of
/// [`enumerate_cells`] in every dimension up to the top degree of `c`.
pub fn composition_laws(c: &Arc<BasedComplex>, bound: usize) -> Result<CheckReport> {
    let mut glob = None;
    let mut unit = None;
    let mut assoc = None;
    let mut interchange = None;
    let mut counted = 0usize;
    let top = c.top_degree().unwrap_or(0);
    for n in 1..=top.max(1) {
        let cells = enumerate_cells(c, n, bound)?;
        for t in &cells {
            for k in 0..=n {
                for j in 0..k {
                    let s = |x: &CellTable, l| source(x, l).expect("level in range");
                    let g = |x: &CellTable, l| target(x, l).expect("level in range");
                    let ok = s(&s(t, k), j) == s(t, j)
                        && s(&g(t, k), j) == s(t, j)
                        && g(&s(t, k), j) == g(t, j)
                        && g(&g(t, k), j) == g(t, j);
                    if !ok && glob.is_none() {
                        glob = Some(format!("levels {j} < {k} on\n{t}"));
                    }
                }
            }
            for p in 0..n {
                let left = lift_to(&source(t, p)?, n);
                let right = lift_to(&target(t, p)?, n);
                if compose_tables(t, &left, p)? != *t || compose_tables(&right, t, p)? != *t {
                    unit.get_or_insert_with(|| format!("level {p} on\n{t}"));
                }
            }
        }
        for p in 0..n {
            for a in &cells {
                for b in cells.iter().filter(|b| composable(b, a, p)) {
                    let ba = compose_tables(b, a, p)?;
                    for cc in cells.iter().filter(|cc| composable(cc, b, p)) {
                        counted += 1;
                        let lhs = compose_tables(cc, &ba, p)?;
                        let rhs = compose_tables(&compose_tables(cc, b, p)?, a, p)?;
                        if lhs != rhs && assoc.is_none() {
                            assoc = Some(format!("level {p}:\n{lhs}vs\n{rhs}"));
                        }
                    }
                }
            }
            for q in p + 1..n {
                // (d ∘q c) ∘p (b ∘q a) = (d ∘p b) ∘q (c ∘p a)
                for a in &cells {
                    for b in cells.iter().filter(|b| composable(b, a, q)) {
                        let ba = compose_tables(b, a, q)?;
                        for cc in cells.iter().filter(|cc| composable(cc, a, p)) {
                            for d in cells.iter().filter(|d| composable(d, cc, q) && composable(d, b, p)) {
                                let dc = compose_tables(d, cc, q)?;
                                let lhs = compose_tables(&dc, &ba, p)?;
                                let rhs = compose_tables(&compose_tables(d, b, p)?, &compose_tables(cc, a, p)?, q)?;
                                if lhs != rhs && interchange.is_none() {
                                    interchange = Some(format!("levels {p} < {q}:\n{lhs}vs\n{rhs}"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut r = CheckReport::new();
    r.push("GLOBULARITY", glob);
    r.push("UNITS", unit);
    r.check("ASSOCIATIVITY", assoc.is_none() && counted > 0, || {
        assoc.unwrap_or_else(|| "no composable triples".into())
    });
    r.push("INTERCHANGE", interchange);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{cube, oriental, subset};
    use crate::steiner::atom_table;

    #[test]
    fn edges_of_the_triangle_compose_to_the_long_side() {
        let d2 = oriental(2).unwrap();
        let a = atom_table(&d2, &subset("01")).unwrap();
        let b = atom_table(&d2, &subset("12")).unwrap();
        let ab = compose_tables(&b, &a, 0).unwrap();
        let top = atom_table(&d2, &subset("012")).unwrap();
        assert_eq!(ab.top(), top.plus(1));
        assert_eq!(target(&top, 1).unwrap(), ab);
        assert!(matches!(compose_tables(&a, &b, 0), Err(AdcError::NotComposable(_))));
    }

    #[test]
    fn source_target_and_identity() {
        let d2 = oriental(2).unwrap();
        let t = atom_table(&d2, &subset("012")).unwrap();
        assert_eq!(source(&t, 1).unwrap().top(), &d2.chain_from_strs(1, &[("(0.2)", 1)]).unwrap());
        assert_eq!(target(&t, 2).unwrap(), t);
        assert!(matches!(source(&t, 3), Err(AdcError::BadLevel { level: 3, dim: 2 })));
        let id = identity_table(&t);
        assert!(validate_table(&id).passed);
        assert!(id.is_degenerate() && !t.is_degenerate());
        assert_eq!(source(&id, 2).unwrap(), t);
        let v = atom_table(&oriental(1).unwrap(), &subset("0")).unwrap();
        let idv = identity_table(&v);
        assert_eq!(idv.dim(), 1);
        assert!(idv.top().is_zero() && validate_table(&idv).passed);
    }

    #[test]
    fn augmentation_two_fails_validation() {
        let d1 = oriental(1).unwrap();
        let v = atom_table(&d1, &subset("0")).unwrap();
        let bad = CellTable::new(&d1, vec![v.minus(0).clone()], vec![v.minus(0).scale(&2.into())]).unwrap();
        let r = validate_table(&bad);
        assert!(!r.passed);
        assert!(r.find("UNIT_AUGMENTATION").unwrap().witness.is_some());
    }

    #[test]
    fn laws_hold_on_small_shapes() {
        for c in [oriental(3).unwrap(), cube(3).unwrap()] {
            let r = composition_laws(&c, 60).unwrap();
            assert!(r.passed, "{r}");
        }
    }
}
