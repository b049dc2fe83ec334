//! Basis analysis: positive and negative parts, atoms, unitality, the ≤_ℕ
//! preorder and strong loop-freeness.

use std::collections::VecDeque;
use std::sync::Arc;

use num_traits::One;
use petgraph::algo::{tarjan_scc, toposort};
use petgraph::graph::{DiGraph, NodeIndex};

use crate::cells::CellTable;
use crate::chain::{is_nonneg, single, Chain, Terms};
use crate::complex::{validate_complex, BasedComplex};
use crate::error::{AdcError, Result};
use crate::name::GeneratorName;
use crate::report::CheckReport;

/// `d(x) = ∂⁺x − ∂⁻x` with both parts ℕ-chains of disjoint support.
pub fn pos_neg_parts(c: &BasedComplex, x: &Chain) -> Result<(Chain, Chain)> {
    Ok(c.d(x)?.split_signs())
}

fn split(c: &BasedComplex, degree: usize, terms: &Terms) -> (Terms, Terms) {
    let (p, m) = Chain::from_terms(degree - 1, c.d_terms(degree, terms)).split_signs();
    (p.terms, m.terms)
}

/// Atom entries of generator `(q, i)`, index k holding level k. The descent
/// splits the whole chain at each level, so terms cancel before splitting.
fn atom_levels(c: &BasedComplex, q: usize, i: usize) -> (Vec<Terms>, Vec<Terms>) {
    let mut minus = vec![Terms::new(); q + 1];
    let mut plus = vec![Terms::new(); q + 1];
    minus[q] = single(i);
    plus[q] = single(i);
    for k in (0..q).rev() {
        minus[k] = split(c, k + 1, &minus[k + 1]).1;
        plus[k] = split(c, k + 1, &plus[k + 1]).0;
    }
    (minus, plus)
}

pub fn atom_table(c: &Arc<BasedComplex>, b: &GeneratorName) -> Result<CellTable> {
    let (q, i) = c.locate(b).ok_or_else(|| AdcError::Malformed(format!("unknown generator {b}")))?;
    let (minus, plus) = atom_levels(c, q, i);
    if !minus.iter().chain(&plus).all(is_nonneg) {
        return Err(AdcError::NegativeEntry(b.to_string()));
    }
    let wrap = |v: Vec<Terms>| v.into_iter().enumerate().map(|(k, t)| Chain::from_terms(k, t)).collect();
    CellTable::new(c, wrap(minus), wrap(plus))
}

/// Every atom has `ε(x⁻₀) = ε(x⁺₀) = 1`.
pub fn unitality_check(c: &BasedComplex) -> CheckReport {
    let failure = c.iter().find_map(|(q, i, name)| {
        let (minus, plus) = atom_levels(c, q, i);
        let em = c.augment_terms(&minus[0]);
        let ep = c.augment_terms(&plus[0]);
        (!em.is_one() || !ep.is_one()).then(|| format!("{name}: ε(x-0) = {em}, ε(x+0) = {ep}"))
    });
    let mut r = CheckReport::new();
    r.push("UNITAL", failure);
    r
}

/// Generating edges of `≤_ℕ`; `(a, b)` means `a ≤ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreorderRelation {
    pub elements: Vec<GeneratorName>,
    pub edges: Vec<(GeneratorName, GeneratorName)>,
}

impl PreorderRelation {
    pub fn contains(&self, a: &GeneratorName, b: &GeneratorName) -> bool {
        self.edges.iter().any(|(x, y)| x == a && y == b)
    }
}

/// `(x, g)` for x in ∂⁻g and `(g, y)` for y in ∂⁺g.
fn edge_positions(c: &BasedComplex) -> Vec<((usize, usize), (usize, usize))> {
    let mut edges = Vec::new();
    for (q, i, _) in c.iter().filter(|(q, _, _)| *q > 0) {
        let (plus, minus) = split(c, q, &single(i));
        edges.extend(minus.keys().map(|&x| ((q - 1, x), (q, i))));
        edges.extend(plus.keys().map(|&y| ((q, i), (q - 1, y))));
    }
    edges
}

pub fn preorder(c: &BasedComplex) -> PreorderRelation {
    let name = |(q, i): (usize, usize)| c.name(q, i).clone();
    PreorderRelation {
        elements: c.iter().map(|(_, _, n)| n.clone()).collect(),
        edges: edge_positions(c).into_iter().map(|(a, b)| (name(a), name(b))).collect(),
    }
}

/// Either a cycle of the preorder or a linear extension of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopAnalysis {
    /// Closed walk `x₀ ≤ x₁ ≤ … ≤ x₀`, first element repeated at the end.
    pub cycle: Option<Vec<GeneratorName>>,
    pub linear_extension: Option<Vec<GeneratorName>>,
}

impl LoopAnalysis {
    pub fn format_cycle(&self) -> Option<String> {
        self.cycle.as_ref().map(|c| c.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ≤ "))
    }
}

pub fn loop_analysis(c: &BasedComplex) -> LoopAnalysis {
    let nodes: Vec<(usize, usize)> = c.iter().map(|(q, i, _)| (q, i)).collect();
    let mut offsets = vec![0; c.num_degrees() + 1];
    for q in 0..c.num_degrees() {
        offsets[q + 1] = offsets[q] + c.rank(q);
    }
    let index = |(q, i): (usize, usize)| NodeIndex::new(offsets[q] + i);
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(nodes.len(), 0);
    for _ in &nodes {
        g.add_node(());
    }
    for (a, b) in edge_positions(c) {
        g.add_edge(index(a), index(b), ());
    }
    let name = |n: NodeIndex| c.name(nodes[n.index()].0, nodes[n.index()].1).clone();
    if let Some(scc) = tarjan_scc(&g).into_iter().filter(|s| s.len() > 1).min_by_key(|s| s.iter().min().copied()) {
        let start = *scc.iter().min().expect("non-empty");
        let inside = |n: NodeIndex| scc.contains(&n);
        // Shortest closed walk from `start` inside its component.
        let mut parent = vec![None; nodes.len()];
        let mut queue = VecDeque::from([start]);
        let mut closing = None;
        'bfs: while let Some(v) = queue.pop_front() {
            let mut next: Vec<NodeIndex> = g.neighbors(v).filter(|&w| inside(w)).collect();
            next.sort();
            for w in next {
                if w == start {
                    closing = Some(v);
                    break 'bfs;
                }
                if parent[w.index()].is_none() {
                    parent[w.index()] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        let mut walk = vec![start];
        let mut v = closing.expect("a strongly connected component contains a cycle");
        while v != start {
            walk.push(v);
            v = parent[v.index()].expect("reached by the search");
        }
        walk.push(start);
        walk.reverse();
        return LoopAnalysis { cycle: Some(walk.into_iter().map(name).collect()), linear_extension: None };
    }
    let order = toposort(&g, None).expect("acyclic");
    LoopAnalysis { cycle: None, linear_extension: Some(order.into_iter().map(name).collect()) }
}

/// `≤_ℕ` is antisymmetric; the witness is a cycle.
pub fn is_strongly_loopfree(c: &BasedComplex) -> CheckReport {
    let mut r = CheckReport::new();
    r.push("STRONGLY_LOOP_FREE", loop_analysis(c).format_cycle());
    r
}

/// The complex is valid and its basis is unital and strongly loop-free, with
/// ℕ-valued atoms.
pub fn is_steiner(c: &BasedComplex) -> CheckReport {
    let mut r = validate_complex(c);
    r.merge("", unitality_check(c));
    r.merge("", is_strongly_loopfree(c));
    let negative = c.iter().find_map(|(q, i, name)| {
        let (minus, plus) = atom_levels(c, q, i);
        (!minus.iter().chain(&plus).all(is_nonneg)).then(|| name.to_string())
    });
    r.push("ATOMS_NATURAL", negative);
    r
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::complex::ComplexBuilder;
    use crate::shapes::{cube, disk, disk_cell, oriental, subset, unit, word, zero, DiskSide};

    fn chain(c: &BasedComplex, q: usize, names: &[GeneratorName]) -> Chain {
        c.chain(q, names.iter().map(|n| (n, BigInt::one()))).unwrap()
    }

    fn loop_fixture() -> BasedComplex {
        let mut b = ComplexBuilder::new();
        let n = GeneratorName::sym;
        b.add_generator(0, n("x")).add_generator(0, n("y")).add_generator(1, n("e")).add_generator(1, n("f"));
        b.set_augmentation(n("x"), BigInt::one()).set_augmentation(n("y"), BigInt::one());
        b.set_boundary(n("e"), vec![(n("y"), BigInt::one()), (n("x"), -BigInt::one())]);
        b.set_boundary(n("f"), vec![(n("x"), BigInt::one()), (n("y"), -BigInt::one())]);
        b.build().unwrap()
    }

    #[test]
    fn triangle_parts_and_atom() {
        let d2 = oriental(2).unwrap();
        let top = d2.generator(&subset("012")).unwrap();
        let (p, m) = pos_neg_parts(&d2, &top).unwrap();
        assert_eq!(p, chain(&d2, 1, &[subset("01"), subset("12")]));
        assert_eq!(m, chain(&d2, 1, &[subset("02")]));
        let twice = top.add(&top);
        let (p2, m2) = pos_neg_parts(&d2, &twice).unwrap();
        assert_eq!((p2, m2), (p.scale(&2.into()), m.scale(&2.into())));
        assert!(matches!(pos_neg_parts(&d2, &d2.generator(&subset("0")).unwrap()), Err(AdcError::DegreeZero)));

        let t = atom_table(&d2, &subset("012")).unwrap();
        assert_eq!(*t.minus(1), chain(&d2, 1, &[subset("02")]));
        assert_eq!(*t.plus(1), chain(&d2, 1, &[subset("01"), subset("12")]));
        assert_eq!(*t.minus(0), chain(&d2, 0, &[subset("0")]));
        assert_eq!(*t.plus(0), chain(&d2, 0, &[subset("2")]));
    }

    #[test]
    fn square_atom_follows_the_koszul_sign() {
        let c2 = cube(2).unwrap();
        let t = atom_table(&c2, &word("ii")).unwrap();
        assert_eq!(*t.minus(1), chain(&c2, 1, &[word("0i"), word("i1")]));
        assert_eq!(*t.plus(1), chain(&c2, 1, &[word("i0"), word("1i")]));
        assert_eq!(*t.minus(0), chain(&c2, 0, &[word("00")]));
        assert_eq!(*t.plus(0), chain(&c2, 0, &[word("11")]));
    }

    #[test]
    fn disk_atoms_are_globes() {
        let d3 = disk(3).unwrap();
        let t = atom_table(&d3, &disk_cell(3, None)).unwrap();
        for k in 0..3 {
            assert_eq!(*t.minus(k), chain(&d3, k, &[disk_cell(k, Some(DiskSide::Source))]));
            assert_eq!(*t.plus(k), chain(&d3, k, &[disk_cell(k, Some(DiskSide::Target))]));
        }
    }

    #[test]
    fn unitality() {
        assert!(unitality_check(&oriental(4).unwrap()).passed);
        assert!(unitality_check(&unit()).passed);
        let n = GeneratorName::sym;
        let mut b = ComplexBuilder::new();
        for v in ["x", "y", "z"] {
            b.add_generator(0, n(v)).set_augmentation(n(v), BigInt::one());
        }
        b.add_generator(1, n("e")).set_boundary(
            n("e"),
            vec![(n("y"), BigInt::one()), (n("z"), BigInt::one()), (n("x"), BigInt::from(-2))],
        );
        let r = unitality_check(&b.build().unwrap());
        assert!(!r.passed);
        assert!(r.checks[0].witness.as_deref().unwrap().starts_with("e:"));
    }

    #[test]
    fn preorder_edges() {
        let d2 = oriental(2).unwrap();
        let p = preorder(&d2);
        assert!(p.contains(&subset("02"), &subset("012")));
        assert!(p.contains(&subset("012"), &subset("01")));
        assert!(preorder(&unit()).edges.is_empty());
        let d = disk(2).unwrap();
        let p = preorder(&d);
        assert!(p.contains(&disk_cell(1, Some(DiskSide::Source)), &disk_cell(2, None)));
        assert!(p.contains(&disk_cell(2, None), &disk_cell(1, Some(DiskSide::Target))));
    }

    #[test]
    fn loop_fixture_reports_its_cycle() {
        let c = loop_fixture();
        let r = is_strongly_loopfree(&c);
        assert!(!r.passed);
        assert_eq!(r.checks[0].witness.as_deref(), Some("x ≤ e ≤ y ≤ f ≤ x"));
        assert!(!is_steiner(&c).passed);
        assert!(is_strongly_loopfree(&cube(4).unwrap()).passed);
        assert!(is_strongly_loopfree(&zero()).passed);
    }

    #[test]
    fn linear_extension_respects_edges() {
        let c = cube(3).unwrap();
        let ext = loop_analysis(&c).linear_extension.unwrap();
        let pos = |n: &GeneratorName| ext.iter().position(|m| m == n).unwrap();
        for (a, b) in preorder(&c).edges {
            assert!(pos(&a) < pos(&b));
        }
    }

    #[test]
    fn library_shapes_are_steiner() {
        for c in [oriental(5).unwrap(), cube(4).unwrap(), disk(4).unwrap(), unit(), zero()] {
            let r = is_steiner(&c);
            assert!(r.passed, "{r}");
        }
    }
}
