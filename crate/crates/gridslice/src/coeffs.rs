//! Exact arithmetic over the ground ring `F2[U1,...,UN]` and free modules
//! with distinguished bases.
//!
//! Coefficients are always `F2`, so an element of a free module is just the
//! set of its nonzero terms and addition is symmetric difference of term
//! sets. A term is a pair (monomial, basis tag); the tag type is any ordered
//! identifier for a basis element, which lets the same container carry
//! complex generators, strand-algebra elements, or pairs thereof.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("monomial arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
}

/// A monomial in `U1,...,UN`, stored as a dense exponent vector of length N.
///
/// Variables are indexed 1..=N to match the marker numbering of grid
/// diagrams.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// The unit monomial of arity `n`.
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The variable `U_l` (1-indexed) as a monomial of arity `n`.
    pub fn var(n: usize, l: usize) -> Self {
        assert!((1..=n).contains(&l), "variable index {l} out of 1..={n}");
        let mut exps = vec![0; n];
        exps[l - 1] = 1;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    /// Exponent of `U_l` (1-indexed).
    pub fn exp(&self, l: usize) -> u32 {
        self.exps[l - 1]
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Componentwise sum of exponents; errors on arity mismatch.
    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, CoeffError> {
        if self.arity() != other.arity() {
            return Err(CoeffError::ArityMismatch(self.arity(), other.arity()));
        }
        Ok(self.mul(other))
    }

    /// Componentwise sum of exponents. Panics on arity mismatch.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.arity(), other.arity(), "monomial arity mismatch");
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial { exps }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "·")?;
            }
            first = false;
            write!(f, "U{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An `F2[U1..UN]`-linear combination of basis elements tagged by `T`.
///
/// Zero is the empty term set. There are no coefficients to store: a term is
/// present exactly when its `F2` coefficient is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FreeElement<T: Ord> {
    terms: BTreeSet<(Monomial, T)>,
}

impl<T: Ord> Default for FreeElement<T> {
    fn default() -> Self {
        FreeElement {
            terms: BTreeSet::new(),
        }
    }
}

impl<T: Ord + Clone> FreeElement<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis element `tag` with unit coefficient of arity `n`.
    pub fn generator(n: usize, tag: T) -> Self {
        Self::term(Monomial::one(n), tag)
    }

    pub fn term(m: Monomial, tag: T) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert((m, tag));
        FreeElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Monomial, T)> {
        self.terms.iter()
    }

    /// Adds a single term mod 2: inserts it, or cancels an existing copy.
    pub fn toggle(&mut self, m: Monomial, tag: T) {
        let key = (m, tag);
        if !self.terms.remove(&key) {
            self.terms.insert(key);
        }
    }

    /// Sum over `F2`: symmetric difference of the term sets.
    pub fn add(&self, other: &Self) -> Self {
        let terms = self
            .terms
            .symmetric_difference(&other.terms)
            .cloned()
            .collect();
        FreeElement { terms }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for t in &other.terms {
            if !self.terms.remove(t) {
                self.terms.insert(t.clone());
            }
        }
    }

    /// Multiplies every term by `m` and relabels tags; colliding results
    /// cancel in pairs.
    pub fn scale<U, F>(&self, m: &Monomial, relabel: F) -> FreeElement<U>
    where
        U: Ord + Clone,
        F: Fn(&T) -> U,
    {
        let mut out = FreeElement::zero();
        for (m0, t) in &self.terms {
            out.toggle(m.mul(m0), relabel(t));
        }
        out
    }

    /// Like [`scale`](Self::scale) but the relabeling may drop terms.
    pub fn scale_filter<U, F>(&self, m: &Monomial, relabel: F) -> FreeElement<U>
    where
        U: Ord + Clone,
        F: Fn(&T) -> Option<U>,
    {
        let mut out = FreeElement::zero();
        for (m0, t) in &self.terms {
            if let Some(u) = relabel(t) {
                out.toggle(m.mul(m0), u);
            }
        }
        out
    }
}

impl<T: Ord + Clone> FromIterator<(Monomial, T)> for FreeElement<T> {
    fn from_iter<I: IntoIterator<Item = (Monomial, T)>>(iter: I) -> Self {
        let mut out = FreeElement::zero();
        for (m, t) in iter {
            out.toggle(m, t);
        }
        out
    }
}

impl<T: Ord + fmt::Display> fmt::Display for FreeElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, t) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{t}")?;
            } else {
                write!(f, "{m}·{t}")?;
            }
        }
        Ok(())
    }
}

impl<T: Ord + fmt::Display> fmt::Debug for FreeElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
