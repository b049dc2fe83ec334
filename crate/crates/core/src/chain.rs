//! Sparse integer vectors and chains.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Sparse vector over the basis of one degree, keyed by basis position.
/// Zero coefficients are never stored.
pub type Terms = BTreeMap<usize, BigInt>;

pub(crate) fn add_term(acc: &mut Terms, index: usize, coeff: BigInt) {
    if coeff.is_zero() {
        return;
    }
    match acc.entry(index) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub(crate) fn add_scaled(acc: &mut Terms, v: &Terms, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    let unit = k.is_one();
    for (&i, c) in v {
        add_term(acc, i, if unit { c.clone() } else { c * k });
    }
}

pub(crate) fn scaled(v: &Terms, k: &BigInt) -> Terms {
    let mut out = Terms::new();
    add_scaled(&mut out, v, k);
    out
}

pub(crate) fn is_nonneg(v: &Terms) -> bool {
    v.values().all(|c| !c.is_negative())
}

pub(crate) fn single(index: usize) -> Terms {
    let mut t = Terms::new();
    t.insert(index, BigInt::one());
    t
}

/// A homogeneous chain of an ambient complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    pub(crate) degree: usize,
    pub(crate) terms: Terms,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain { degree, terms: Terms::new() }
    }

    pub(crate) fn from_terms(degree: usize, terms: Terms) -> Self {
        Chain { degree, terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every coefficient is non-negative.
    pub fn is_natural(&self) -> bool {
        is_nonneg(&self.terms)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, index: usize) -> BigInt {
        self.terms.get(&index).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!(self.degree, other.degree, "adding chains of different degree");
        let mut t = self.terms.clone();
        add_scaled(&mut t, &other.terms, &BigInt::one());
        Chain { degree: self.degree, terms: t }
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn scale(&self, k: &BigInt) -> Chain {
        Chain { degree: self.degree, terms: scaled(&self.terms, k) }
    }

    /// Splits into positive and negated negative parts: `self = pos - neg`.
    pub fn split_signs(&self) -> (Chain, Chain) {
        let mut pos = Terms::new();
        let mut neg = Terms::new();
        for (&i, c) in &self.terms {
            if c.is_positive() {
                pos.insert(i, c.clone());
            } else {
                neg.insert(i, -c);
            }
        }
        (Chain::from_terms(self.degree, pos), Chain::from_terms(self.degree, neg))
    }
}
