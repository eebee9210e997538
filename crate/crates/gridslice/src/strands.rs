//! The differential graded algebra of upward-veering strand diagrams on `k`
//! strands among `N+1` positions.
//!
//! A basis element is a partial bijection `f: S -> T` between `k`-element
//! subsets of `{0..N}` with `f(i) >= i`. The product concatenates diagrams
//! and vanishes unless crossing numbers add; the differential smooths one
//! crossing at a time, keeping only smoothings that drop the crossing number
//! by exactly one.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::coeffs::FreeElement;
use crate::complexes::Bigrading;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrandError {
    #[error("rho requires i < j, i in S and j not in S; got S={s:?}, i={i}, j={j}")]
    BadChord { s: Vec<usize>, i: usize, j: usize },
    #[error("not an upward-veering partial bijection on 0..={n}: {pairs:?}")]
    BadStrands { n: usize, pairs: Vec<(usize, usize)> },
}

/// An upward-veering strand diagram: strands `(source, target)` with
/// `target >= source`, sources and targets each pairwise distinct, sorted by
/// source.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct StrandBasisElement {
    n: usize,
    strands: Vec<(usize, usize)>,
}

impl StrandBasisElement {
    pub fn new(n: usize, mut strands: Vec<(usize, usize)>) -> Result<Self, StrandError> {
        strands.sort_unstable();
        let sources: BTreeSet<usize> = strands.iter().map(|&(s, _)| s).collect();
        let targets: BTreeSet<usize> = strands.iter().map(|&(_, t)| t).collect();
        let ok = sources.len() == strands.len()
            && targets.len() == strands.len()
            && strands.iter().all(|&(s, t)| s <= t && t <= n);
        if !ok {
            return Err(StrandError::BadStrands { n, pairs: strands });
        }
        Ok(StrandBasisElement { n, strands })
    }

    /// The idempotent on the position set `s`.
    pub fn idempotent(n: usize, s: &BTreeSet<usize>) -> Self {
        StrandBasisElement {
            n,
            strands: s.iter().map(|&i| (i, i)).collect(),
        }
    }

    /// The generator moving strand `i` up to `j` within the idempotent `s`.
    pub fn rho(n: usize, s: &BTreeSet<usize>, i: usize, j: usize) -> Result<Self, StrandError> {
        if !(i < j && j <= n && s.contains(&i) && !s.contains(&j)) {
            return Err(StrandError::BadChord {
                s: s.iter().copied().collect(),
                i,
                j,
            });
        }
        let strands = s
            .iter()
            .map(|&p| if p == i { (i, j) } else { (p, p) })
            .collect();
        Ok(StrandBasisElement { n, strands })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.strands.len()
    }

    pub fn strands(&self) -> &[(usize, usize)] {
        &self.strands
    }

    pub fn left_idem(&self) -> BTreeSet<usize> {
        self.strands.iter().map(|&(s, _)| s).collect()
    }

    pub fn right_idem(&self) -> BTreeSet<usize> {
        self.strands.iter().map(|&(_, t)| t).collect()
    }

    pub fn is_idempotent(&self) -> bool {
        self.strands.iter().all(|&(s, t)| s == t)
    }

    /// If exactly one strand moves, its `(source, target)` chord.
    pub fn as_chord(&self) -> Option<(usize, usize)> {
        let mut moving = self.strands.iter().filter(|&&(s, t)| s != t);
        match (moving.next(), moving.next()) {
            (Some(&c), None) => Some(c),
            _ => None,
        }
    }

    /// Minimal crossing number: inversions of the partial bijection.
    pub fn cross(&self) -> usize {
        let k = self.strands.len();
        let mut count = 0;
        for a in 0..k {
            for b in a + 1..k {
                if self.strands[a].1 > self.strands[b].1 {
                    count += 1;
                }
            }
        }
        count
    }

    /// Rotation by a half-turn: positions relabel `r -> n - r` and the
    /// diagram is read backwards, staying upward-veering. An involutive
    /// anti-automorphism.
    pub fn reverse(&self) -> StrandBasisElement {
        let n = self.n;
        let mut strands: Vec<(usize, usize)> =
            self.strands.iter().map(|&(s, t)| (n - t, n - s)).collect();
        strands.sort_unstable();
        StrandBasisElement { n, strands }
    }
}

impl fmt::Display for StrandBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_idempotent() {
            let inner = self.strands.iter().map(|(s, _)| s.to_string()).join(",");
            return write!(f, "I{{{inner}}}");
        }
        let inner = self
            .strands
            .iter()
            .map(|(s, t)| format!("{s}→{t}"))
            .join(",");
        write!(f, "{{{inner}}}")
    }
}

/// All upward-veering partial bijections between `k`-subsets of `{0..n}`,
/// in sorted order.
pub fn basis(n: usize, k: usize) -> Vec<StrandBasisElement> {
    assert!(k <= n + 1, "k={k} exceeds the {n}+1 available positions");
    let mut out = Vec::new();
    for sources in (0..=n).combinations(k) {
        let mut used = vec![false; n + 1];
        let mut strands: Vec<(usize, usize)> = Vec::with_capacity(k);
        enumerate_targets(n, &sources, 0, &mut used, &mut strands, &mut out);
    }
    out.sort_unstable();
    out
}

fn enumerate_targets(
    n: usize,
    sources: &[usize],
    idx: usize,
    used: &mut Vec<bool>,
    strands: &mut Vec<(usize, usize)>,
    out: &mut Vec<StrandBasisElement>,
) {
    if idx == sources.len() {
        out.push(StrandBasisElement {
            n,
            strands: strands.clone(),
        });
        return;
    }
    let s = sources[idx];
    for t in s..=n {
        if used[t] {
            continue;
        }
        used[t] = true;
        strands.push((s, t));
        enumerate_targets(n, sources, idx + 1, used, strands, out);
        strands.pop();
        used[t] = false;
    }
}

/// Concatenation `f` then `g`: defined when the interface idempotents match
/// and crossing numbers add, zero otherwise.
pub fn mul_basis(f: &StrandBasisElement, g: &StrandBasisElement) -> Option<StrandBasisElement> {
    debug_assert_eq!(f.n, g.n);
    if f.right_idem() != g.left_idem() {
        return None;
    }
    let image = |x: usize, e: &StrandBasisElement| -> usize {
        e.strands
            .iter()
            .find(|&&(s, _)| s == x)
            .map(|&(_, t)| t)
            .expect("interface idempotents match")
    };
    let strands: Vec<(usize, usize)> = f
        .strands
        .iter()
        .map(|&(s, t)| (s, image(t, g)))
        .collect();
    let h = StrandBasisElement {
        n: f.n,
        strands,
    };
    (h.cross() == f.cross() + g.cross()).then_some(h)
}

/// All smoothings of one crossing that drop the crossing number by exactly
/// one.
pub fn diff_basis(f: &StrandBasisElement) -> Vec<StrandBasisElement> {
    let k = f.strands.len();
    let mut out = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            if f.strands[a].1 <= f.strands[b].1 {
                continue;
            }
            let mut strands = f.strands.clone();
            strands[a].1 = f.strands[b].1;
            strands[b].1 = f.strands[a].1;
            let g = StrandBasisElement { n: f.n, strands };
            if g.cross() == f.cross() - 1 {
                out.push(g);
            }
        }
    }
    out
}

/// Elements of the algebra: linear combinations of strand diagrams over
/// `F2[U1..UN]`.
pub type AlgebraElement = FreeElement<StrandBasisElement>;

/// Bilinear extension of the basis product; `U`-monomials pass through.
pub fn algebra_mul(e1: &AlgebraElement, e2: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (m1, f) in e1.iter() {
        for (m2, g) in e2.iter() {
            if let Some(h) = mul_basis(f, g) {
                out.toggle(m1.mul(m2), h);
            }
        }
    }
    out
}

/// Linear extension of the smoothing differential; `dU_l = 0`.
pub fn algebra_diff(e: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (m, f) in e.iter() {
        for g in diff_basis(f) {
            out.toggle(m.clone(), g);
        }
    }
    out
}

/// Marker rows left of the interface, fixing the gradings of the algebra.
/// A row `r` stands for the horizontal line at height `r - 1/2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InterfaceGradingData {
    pub x_rows: BTreeSet<usize>,
    pub o_rows: BTreeSet<usize>,
}

impl InterfaceGradingData {
    pub fn new(x_rows: BTreeSet<usize>, o_rows: BTreeSet<usize>) -> Self {
        InterfaceGradingData { x_rows, o_rows }
    }
}

fn line_crossings(f: &StrandBasisElement, rows: &BTreeSet<usize>) -> i64 {
    f.strands
        .iter()
        .map(|&(s, t)| rows.iter().filter(|&&r| s < r && r <= t).count() as i64)
        .sum()
}

/// Alexander and Maslov gradings of a basis element for the given interface
/// data. A coefficient `U_l` contributes a further `(-1, -2)` per degree.
pub fn gradings_alg(f: &StrandBasisElement, gd: &InterfaceGradingData) -> Bigrading {
    let lx = line_crossings(f, &gd.x_rows);
    let lo = line_crossings(f, &gd.o_rows);
    Bigrading::new(lx - lo, f.cross() as i64 - 2 * lo)
}

/// Writes `f` as a product of single-chord generators by moving the
/// non-fixed strands in strictly decreasing order of destination. The
/// factors re-multiply to `f` with additive crossings; this is asserted.
pub fn factorize(f: &StrandBasisElement) -> Vec<StrandBasisElement> {
    let mut cur = f.left_idem();
    let mut moving: Vec<(usize, usize)> = f
        .strands
        .iter()
        .copied()
        .filter(|&(s, t)| s != t)
        .collect();
    moving.sort_unstable_by(|a, b| b.1.cmp(&a.1));
    let mut factors = Vec::with_capacity(moving.len());
    for (s, t) in moving {
        let r = StrandBasisElement::rho(f.n, &cur, s, t)
            .expect("decreasing-destination factor is a valid chord");
        cur.remove(&s);
        cur.insert(t);
        factors.push(r);
    }
    let mut acc = StrandBasisElement::idempotent(f.n, &f.left_idem());
    let mut total = 0usize;
    for r in &factors {
        total += r.cross();
        acc = mul_basis(&acc, r).expect("factorization must compose without vanishing");
    }
    assert!(
        acc == *f && total == f.cross(),
        "factorization postcondition failed for {f}"
    );
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::Monomial;

    fn set(vals: &[usize]) -> BTreeSet<usize> {
        vals.iter().copied().collect()
    }

    fn elt(n: usize, pairs: &[(usize, usize)]) -> StrandBasisElement {
        StrandBasisElement::new(n, pairs.to_vec()).unwrap()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(basis(3, 0).len(), 1);
        let b11 = basis(1, 1);
        assert_eq!(
            b11,
            vec![elt(1, &[(0, 0)]), elt(1, &[(0, 1)]), elt(1, &[(1, 1)])]
        );
        // independent oracle: enumerate all (S, T, bijection) triples
        let mut count = 0;
        for s in (0..=2usize).combinations(2) {
            for t in (0..=2usize).combinations(2) {
                for p in t.iter().permutations(2) {
                    if s.iter().zip(&p).all(|(i, j)| **j >= *i) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 7);
        assert_eq!(basis(2, 2).len(), count);
    }

    #[test]
    fn cross_examples() {
        assert_eq!(StrandBasisElement::idempotent(4, &set(&[1, 3])).cross(), 0);
        assert_eq!(elt(2, &[(0, 2), (1, 1)]).cross(), 1);
        assert_eq!(elt(4, &[(0, 4), (1, 3), (2, 2)]).cross(), 3);
    }

    #[test]
    fn rho_and_idempotent_examples() {
        let r = StrandBasisElement::rho(1, &set(&[0]), 0, 1).unwrap();
        assert_eq!(r, elt(1, &[(0, 1)]));
        let r = StrandBasisElement::rho(4, &set(&[0, 1, 2]), 0, 4).unwrap();
        assert_eq!(r.cross(), 2);
        let i = StrandBasisElement::idempotent(4, &set(&[1, 3]));
        assert_eq!(i.left_idem(), set(&[1, 3]));
        assert_eq!(i.right_idem(), set(&[1, 3]));
        assert!(StrandBasisElement::rho(4, &set(&[1]), 1, 1).is_err());
        assert!(StrandBasisElement::rho(4, &set(&[1, 2]), 1, 2).is_err());
    }

    #[test]
    fn mul_examples() {
        let f = StrandBasisElement::rho(2, &set(&[0]), 0, 1).unwrap();
        let g = StrandBasisElement::rho(2, &set(&[1]), 1, 2).unwrap();
        assert_eq!(
            mul_basis(&f, &g),
            Some(StrandBasisElement::rho(2, &set(&[0]), 0, 2).unwrap())
        );
        // interleaved chords vanish
        let f = StrandBasisElement::rho(3, &set(&[0, 1]), 0, 2).unwrap();
        let g = StrandBasisElement::rho(3, &set(&[1, 2]), 1, 3).unwrap();
        assert_eq!(mul_basis(&f, &g), None);
        // idempotents
        let i = StrandBasisElement::idempotent(3, &set(&[0, 2]));
        let j = StrandBasisElement::idempotent(3, &set(&[0, 1]));
        assert_eq!(mul_basis(&i, &i), Some(i.clone()));
        assert_eq!(mul_basis(&i, &j), None);
    }

    #[test]
    fn diff_examples() {
        let i = StrandBasisElement::idempotent(3, &set(&[0, 2]));
        assert!(diff_basis(&i).is_empty());
        let f = elt(2, &[(0, 2), (1, 1)]);
        assert_eq!(diff_basis(&f), vec![elt(2, &[(0, 1), (1, 2)])]);
        // a smoothing that drops the crossing count by three is excluded
        let f = elt(5, &[(0, 4), (1, 3), (2, 2)]);
        let d = diff_basis(&f);
        assert_eq!(d.len(), 2);
        assert!(!d.contains(&elt(5, &[(0, 2), (1, 3), (2, 4)])));
    }

    #[test]
    fn relation_form_differential() {
        // d(rho_{S,i,l}) = sum over l' in S with i < l' < l of
        // rho_{l',l} * rho_{i,l'}
        let s = set(&[0, 2]);
        let r = StrandBasisElement::rho(3, &s, 0, 3).unwrap();
        let mut expected = AlgebraElement::zero();
        for &lp in &s {
            if !(0 < lp && lp < 3) {
                continue;
            }
            let first = StrandBasisElement::rho(3, &s, lp, 3).unwrap();
            let second = StrandBasisElement::rho(3, &first.right_idem(), 0, lp).unwrap();
            if let Some(p) = mul_basis(&first, &second) {
                expected.toggle(Monomial::one(3), p);
            }
        }
        let got: AlgebraElement = diff_basis(&r)
            .into_iter()
            .map(|g| (Monomial::one(3), g))
            .collect();
        assert_eq!(got, expected);
        assert_eq!(expected.len(), 1);
        let (_, term) = expected.iter().next().unwrap();
        assert_eq!(term, &elt(3, &[(0, 2), (2, 3)]));
    }

    #[test]
    fn algebra_d_squared_small() {
        for n in 0..=3usize {
            for k in 0..=n + 1 {
                for f in basis(n, k) {
                    let e = AlgebraElement::generator(n, f);
                    assert!(algebra_diff(&algebra_diff(&e)).is_zero());
                }
            }
        }
    }

    #[test]
    fn leibniz_small() {
        let n = 2;
        for k in 0..=n + 1 {
            let b = basis(n, k);
            for f in &b {
                for g in &b {
                    let ef = AlgebraElement::generator(n, f.clone());
                    let eg = AlgebraElement::generator(n, g.clone());
                    let lhs = algebra_diff(&algebra_mul(&ef, &eg));
                    let rhs = algebra_mul(&algebra_diff(&ef), &eg)
                        .add(&algebra_mul(&ef, &algebra_diff(&eg)));
                    assert_eq!(lhs, rhs, "Leibniz fails for {f} * {g}");
                }
            }
        }
    }

    #[test]
    fn gradings_examples() {
        let gd = InterfaceGradingData::new(set(&[1]), set(&[]));
        let i = StrandBasisElement::idempotent(1, &set(&[0]));
        // an idempotent has bidegree (0,0) for any interface data
        assert_eq!(gradings_alg(&i, &gd).alexander, 0);
        assert_eq!(gradings_alg(&i, &gd).maslov, 0);
        let f = elt(1, &[(0, 1)]);
        let g = gradings_alg(&f, &gd);
        assert_eq!((g.alexander, g.maslov), (1, 0));
        // U_1 * I_S shifts by (-1, -2)
        let shift = Bigrading::monomial_shift(Monomial::var(1, 1).degree());
        assert_eq!((shift.alexander, shift.maslov), (-1, -2));
    }

    #[test]
    fn reverse_examples() {
        let n = 3;
        let i = StrandBasisElement::idempotent(n, &set(&[0, 2]));
        assert_eq!(i.reverse(), StrandBasisElement::idempotent(n, &set(&[1, 3])));
        let r = StrandBasisElement::rho(n, &set(&[1]), 1, 2).unwrap();
        assert_eq!(r.reverse(), elt(n, &[(1, 2)]));
        for k in 0..=n + 1 {
            for f in basis(n, k) {
                assert_eq!(f.reverse().reverse(), f);
                assert_eq!(f.reverse().cross(), f.cross());
                let df: BTreeSet<_> = diff_basis(&f).into_iter().map(|g| g.reverse()).collect();
                let dr: BTreeSet<_> = diff_basis(&f.reverse()).into_iter().collect();
                assert_eq!(df, dr);
            }
        }
        // anti-multiplicativity over all composable pairs
        for k in 0..=n + 1 {
            let b = basis(n, k);
            for f in &b {
                for g in &b {
                    let fg = mul_basis(f, g).map(|h| h.reverse());
                    let rev = mul_basis(&g.reverse(), &f.reverse());
                    assert_eq!(fg, rev, "reverse anti-hom fails for {f} * {g}");
                }
            }
        }
    }

    #[test]
    fn factorize_examples() {
        let i = StrandBasisElement::idempotent(3, &set(&[0, 2]));
        assert!(factorize(&i).is_empty());

        let f = elt(3, &[(0, 2), (1, 3)]);
        let factors = factorize(&f);
        assert_eq!(factors.len(), 2);
        assert_eq!(factors[0], StrandBasisElement::rho(3, &set(&[0, 1]), 1, 3).unwrap());
        assert_eq!(factors[1], StrandBasisElement::rho(3, &set(&[0, 3]), 0, 2).unwrap());
        assert_eq!(factors.iter().map(|r| r.cross()).sum::<usize>(), f.cross());

        let f = elt(3, &[(0, 3), (1, 2)]);
        let factors = factorize(&f);
        assert_eq!(factors[0], StrandBasisElement::rho(3, &set(&[0, 1]), 0, 3).unwrap());
        assert_eq!(factors.iter().map(|r| r.cross()).sum::<usize>(), 1);
    }
}
