//! Grid-diagram geometry: planar and toroidal diagrams, generators,
//! rectangles, half-strips, strips, slicing and gluing.
//!
//! Conventions: beta-lines and generator points use 0-indexed integer
//! columns/rows; markers are 1-indexed, marker `i` of a full diagram sitting
//! at `(i - 1/2, row - 1/2)`. Interfaces sit at `x = c - 1/4` and are stored
//! symbolically as the integer `c`. All containment tests are exact integer
//! comparisons on doubled coordinates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::coeffs::Monomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("{which} map is not a permutation of 1..={n}: offending indices {offenders:?}")]
    NotPermutation {
        which: char,
        n: usize,
        offenders: Vec<usize>,
    },
    #[error("cut columns must be strictly ascending and within 1..={max}: got {cuts:?}")]
    BadCuts { max: usize, cuts: Vec<usize> },
    #[error("grid sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("cannot glue: left part ends at column {left_hi}, right part starts at column {right_lo}")]
    GlueColumns { left_hi: usize, right_lo: usize },
    #[error("cannot glue slab kinds {left:?} and {right:?}")]
    GlueKinds { left: SlabKind, right: SlabKind },
    #[error("cannot glue: {which} markers collide in rows {rows:?}")]
    GlueMarkerRows { which: char, rows: Vec<usize> },
}

/// A point with integer or half-integer coordinates, stored doubled so that
/// every comparison is exact.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Pt {
    pub x2: i64,
    pub y2: i64,
}

impl Pt {
    /// A lattice point `(col, row)`.
    pub fn lattice(col: usize, row: usize) -> Pt {
        Pt {
            x2: 2 * col as i64,
            y2: 2 * row as i64,
        }
    }

    /// The marker point `(col - 1/2, row - 1/2)` for 1-indexed `col`, `row`.
    pub fn marker(col: usize, row: usize) -> Pt {
        Pt {
            x2: 2 * col as i64 - 1,
            y2: 2 * row as i64 - 1,
        }
    }

    pub fn lower_left_of(&self, other: &Pt) -> bool {
        self.x2 < other.x2 && self.y2 < other.y2
    }
}

/// Number of pairs `(e, f)` with `e` strictly to the lower left of `f`.
pub fn lower_left_count(e: &[Pt], f: &[Pt]) -> usize {
    e.iter()
        .map(|p| f.iter().filter(|q| p.lower_left_of(q)).count())
        .sum()
}

/// A planar grid diagram: `n` markers of each kind, marker `i` of kind X at
/// `(i - 1/2, sigma_x(i) - 1/2)` and likewise for O. The X and O marker of a
/// column may share a cell.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlanarGridDiagram {
    n: usize,
    sigma_x: Vec<usize>,
    sigma_o: Vec<usize>,
}

/// The same data read on the quotient torus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ToroidalGridDiagram {
    n: usize,
    sigma_x: Vec<usize>,
    sigma_o: Vec<usize>,
}

fn check_permutation(which: char, n: usize, sigma: &[usize]) -> Result<(), GridError> {
    let mut offenders: Vec<usize> = Vec::new();
    if sigma.len() != n {
        return Err(GridError::NotPermutation {
            which,
            n,
            offenders: (1..=sigma.len().max(n)).collect(),
        });
    }
    let mut seen = vec![false; n + 1];
    for (i, &r) in sigma.iter().enumerate() {
        if r == 0 || r > n || seen[r] {
            offenders.push(i + 1);
        } else {
            seen[r] = true;
        }
    }
    if offenders.is_empty() {
        Ok(())
    } else {
        Err(GridError::NotPermutation { which, n, offenders })
    }
}

/// Validates the marker permutations and builds a planar diagram.
pub fn validate_planar(
    n: usize,
    sigma_x: Vec<usize>,
    sigma_o: Vec<usize>,
) -> Result<PlanarGridDiagram, GridError> {
    check_permutation('x', n, &sigma_x)?;
    check_permutation('o', n, &sigma_o)?;
    Ok(PlanarGridDiagram { n, sigma_x, sigma_o })
}

impl PlanarGridDiagram {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Row (1-indexed) of the X marker in column `i` (1-indexed).
    pub fn x_row(&self, i: usize) -> usize {
        self.sigma_x[i - 1]
    }

    pub fn o_row(&self, i: usize) -> usize {
        self.sigma_o[i - 1]
    }

    pub fn sigma_x(&self) -> &[usize] {
        &self.sigma_x
    }

    pub fn sigma_o(&self) -> &[usize] {
        &self.sigma_o
    }

    pub fn x_points(&self) -> Vec<Pt> {
        (1..=self.n).map(|i| Pt::marker(i, self.x_row(i))).collect()
    }

    pub fn o_points(&self) -> Vec<Pt> {
        (1..=self.n).map(|i| Pt::marker(i, self.o_row(i))).collect()
    }

    pub fn to_toroidal(&self) -> ToroidalGridDiagram {
        ToroidalGridDiagram {
            n: self.n,
            sigma_x: self.sigma_x.clone(),
            sigma_o: self.sigma_o.clone(),
        }
    }

    /// All `(n+1)!` planar generators, in lexicographic order of their rows.
    pub fn generators(&self) -> Vec<Generator> {
        (0..=self.n)
            .permutations(self.n + 1)
            .map(|rows| Generator::new(0, rows))
            .collect()
    }
}

impl ToroidalGridDiagram {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_row(&self, i: usize) -> usize {
        self.sigma_x[i - 1]
    }

    pub fn o_row(&self, i: usize) -> usize {
        self.sigma_o[i - 1]
    }

    /// All `n!` toroidal generators (points on columns/rows `0..n`), in
    /// lexicographic order.
    pub fn generators(&self) -> Vec<Generator> {
        (0..self.n)
            .permutations(self.n)
            .map(|rows| Generator::new(0, rows))
            .collect()
    }
}

/// Interface sides of a partial diagram.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SlabKind {
    /// Interface on the right; holds beta-columns `0..width`.
    TypeA,
    /// Interface on the left; extends to the right edge of the diagram.
    TypeD,
    /// Interfaces on both sides.
    Middle,
}

/// A vertical slab of a planar grid diagram: beta-lines `col_lo..col_hi` and
/// the markers whose columns fall inside the slab.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialDiagram {
    n: usize,
    col_lo: usize,
    col_hi: usize,
    kind: SlabKind,
    x: BTreeMap<usize, usize>,
    o: BTreeMap<usize, usize>,
}

impl PartialDiagram {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> SlabKind {
        self.kind
    }

    /// First beta-column of the slab.
    pub fn col_lo(&self) -> usize {
        self.col_lo
    }

    /// One past the last beta-column of the slab.
    pub fn col_hi(&self) -> usize {
        self.col_hi
    }

    /// Number of beta-lines in the slab.
    pub fn width(&self) -> usize {
        self.col_hi - self.col_lo
    }

    /// Marker columns held by the slab: `col_lo+1 ..= min(col_hi, n)`.
    pub fn marker_cols(&self) -> impl Iterator<Item = usize> {
        self.col_lo + 1..=self.col_hi.min(self.n)
    }

    pub fn x_row(&self, col: usize) -> Option<usize> {
        self.x.get(&col).copied()
    }

    pub fn o_row(&self, col: usize) -> Option<usize> {
        self.o.get(&col).copied()
    }

    pub fn x_rows(&self) -> BTreeSet<usize> {
        self.x.values().copied().collect()
    }

    pub fn o_rows(&self) -> BTreeSet<usize> {
        self.o.values().copied().collect()
    }

    /// Interface column on the left (the line `x = col_lo - 1/4`), if any.
    pub fn left_interface(&self) -> Option<usize> {
        match self.kind {
            SlabKind::TypeD | SlabKind::Middle => Some(self.col_lo),
            SlabKind::TypeA => None,
        }
    }

    /// Interface column on the right (the line `x = col_hi - 1/4`), if any.
    pub fn right_interface(&self) -> Option<usize> {
        match self.kind {
            SlabKind::TypeA | SlabKind::Middle => Some(self.col_hi),
            SlabKind::TypeD => None,
        }
    }

    /// All generators of the slab: injections from its beta-columns to rows
    /// `0..=n`, in lexicographic order of their row tuples.
    pub fn generators(&self) -> Vec<Generator> {
        let width = self.width();
        if width == 0 {
            return vec![Generator::new(self.col_lo, Vec::new())];
        }
        (0..=self.n)
            .permutations(width)
            .map(|rows| Generator::new(self.col_lo, rows))
            .sorted_by(|a, b| a.rows().cmp(b.rows()))
            .collect()
    }

    /// Builds a middle slab over beta-columns `[k, l)` of `d` directly
    /// (zero-width `k = l` is allowed).
    pub fn middle(d: &PlanarGridDiagram, k: usize, l: usize) -> Result<Self, GridError> {
        if !(1 <= k && k <= l && l <= d.n) {
            return Err(GridError::BadCuts {
                max: d.n,
                cuts: vec![k, l],
            });
        }
        Ok(restrict(d, k, l, SlabKind::Middle))
    }
}

fn restrict(d: &PlanarGridDiagram, col_lo: usize, col_hi: usize, kind: SlabKind) -> PartialDiagram {
    let mut x = BTreeMap::new();
    let mut o = BTreeMap::new();
    for a in col_lo + 1..=col_hi.min(d.n) {
        x.insert(a, d.x_row(a));
        o.insert(a, d.o_row(a));
    }
    PartialDiagram {
        n: d.n,
        col_lo,
        col_hi,
        kind,
        x,
        o,
    }
}

/// Cuts a diagram along the lines `x = k - 1/4` for the given columns.
/// `cuts` must be strictly ascending, each within `1..=n`. With no cuts the
/// whole diagram is returned as a single slab of type A (its "interface" lies
/// beyond the last column).
pub fn slice(d: &PlanarGridDiagram, cuts: &[usize]) -> Result<Vec<PartialDiagram>, GridError> {
    let ok = cuts.iter().all(|&k| (1..=d.n).contains(&k))
        && cuts.windows(2).all(|w| w[0] < w[1]);
    if !ok {
        return Err(GridError::BadCuts {
            max: d.n,
            cuts: cuts.to_vec(),
        });
    }
    if cuts.is_empty() {
        return Ok(vec![restrict(d, 0, d.n + 1, SlabKind::TypeA)]);
    }
    let mut parts = Vec::with_capacity(cuts.len() + 1);
    parts.push(restrict(d, 0, cuts[0], SlabKind::TypeA));
    for w in cuts.windows(2) {
        parts.push(restrict(d, w[0], w[1], SlabKind::Middle));
    }
    parts.push(restrict(d, cuts[cuts.len() - 1], d.n + 1, SlabKind::TypeD));
    Ok(parts)
}

/// Result of gluing slabs: either a smaller slab or a complete diagram.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Glued {
    Partial(PartialDiagram),
    Full(PlanarGridDiagram),
}

/// Concatenates two adjacent slabs. The left slab must carry a right
/// interface and the right slab a left interface, the column ranges must
/// abut, and marker rows must stay disjoint per kind.
pub fn glue(a: &PartialDiagram, b: &PartialDiagram) -> Result<Glued, GridError> {
    if a.n != b.n {
        return Err(GridError::SizeMismatch(a.n, b.n));
    }
    if a.col_hi != b.col_lo {
        return Err(GridError::GlueColumns {
            left_hi: a.col_hi,
            right_lo: b.col_lo,
        });
    }
    let kind = match (a.kind, b.kind) {
        (SlabKind::TypeA, SlabKind::Middle) => SlabKind::TypeA,
        (SlabKind::Middle, SlabKind::Middle) => SlabKind::Middle,
        (SlabKind::Middle, SlabKind::TypeD) => SlabKind::TypeD,
        (SlabKind::TypeA, SlabKind::TypeD) => SlabKind::TypeA, // full span below
        (left, right) => return Err(GridError::GlueKinds { left, right }),
    };
    for (which, ma, mb) in [('x', &a.x, &b.x), ('o', &a.o, &b.o)] {
        let rows_a: BTreeSet<usize> = ma.values().copied().collect();
        let clash: Vec<usize> = mb
            .values()
            .copied()
            .filter(|r| rows_a.contains(r))
            .collect();
        if !clash.is_empty() {
            return Err(GridError::GlueMarkerRows { which, rows: clash });
        }
    }
    let mut x = a.x.clone();
    x.extend(b.x.iter().map(|(&c, &r)| (c, r)));
    let mut o = a.o.clone();
    o.extend(b.o.iter().map(|(&c, &r)| (c, r)));
    let part = PartialDiagram {
        n: a.n,
        col_lo: a.col_lo,
        col_hi: b.col_hi,
        kind,
        x,
        o,
    };
    Ok(finish_glue(part))
}

fn finish_glue(part: PartialDiagram) -> Glued {
    if part.col_lo == 0 && part.col_hi == part.n + 1 {
        let sigma_x = (1..=part.n).map(|a| part.x[&a]).collect();
        let sigma_o = (1..=part.n).map(|a| part.o[&a]).collect();
        Glued::Full(PlanarGridDiagram {
            n: part.n,
            sigma_x,
            sigma_o,
        })
    } else {
        Glued::Partial(part)
    }
}

/// Glues a whole list of adjacent slabs left to right.
pub fn glue_all(parts: &[PartialDiagram]) -> Result<Glued, GridError> {
    assert!(!parts.is_empty(), "glue_all needs at least one slab");
    let mut acc = parts[0].clone();
    for b in &parts[1..] {
        match glue(&acc, b)? {
            Glued::Partial(p) => acc = p,
            Glued::Full(d) => return Ok(Glued::Full(d)),
        }
    }
    Ok(finish_glue(acc))
}

/// A tuple of intersection points, one per beta-line of the ambient
/// (partial) diagram, with pairwise distinct rows.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Generator {
    col_lo: usize,
    rows: Vec<usize>,
}

impl Generator {
    pub fn new(col_lo: usize, rows: Vec<usize>) -> Generator {
        debug_assert!(
            rows.iter().collect::<BTreeSet<_>>().len() == rows.len(),
            "generator rows must be pairwise distinct: {rows:?}"
        );
        Generator { col_lo, rows }
    }

    pub fn col_lo(&self) -> usize {
        self.col_lo
    }

    pub fn width(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> impl Iterator<Item = usize> {
        self.col_lo..self.col_lo + self.rows.len()
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn row(&self, col: usize) -> usize {
        self.rows[col - self.col_lo]
    }

    pub fn has_row(&self, row: usize) -> bool {
        self.rows.contains(&row)
    }

    pub fn col_of_row(&self, row: usize) -> Option<usize> {
        self.rows.iter().position(|&r| r == row).map(|i| i + self.col_lo)
    }

    pub fn rows_set(&self) -> BTreeSet<usize> {
        self.rows.iter().copied().collect()
    }

    /// Copy with the point of `col` moved to `row`.
    pub fn with_row(&self, col: usize, row: usize) -> Generator {
        let mut rows = self.rows.clone();
        rows[col - self.col_lo] = row;
        Generator::new(self.col_lo, rows)
    }

    /// Copy with the rows of two columns exchanged.
    pub fn swapped(&self, c1: usize, c2: usize) -> Generator {
        let mut rows = self.rows.clone();
        rows.swap(c1 - self.col_lo, c2 - self.col_lo);
        Generator::new(self.col_lo, rows)
    }

    pub fn points(&self) -> Vec<Pt> {
        self.cols()
            .zip(&self.rows)
            .map(|(c, &r)| Pt::lattice(c, r))
            .collect()
    }

    /// Concatenation with an adjacent generator to the right.
    pub fn glue(&self, other: &Generator) -> Generator {
        debug_assert_eq!(self.col_lo + self.rows.len(), other.col_lo);
        let mut rows = self.rows.clone();
        rows.extend_from_slice(&other.rows);
        Generator::new(self.col_lo, rows)
    }

    /// One-line bracket notation for full-diagram generators: entry `p` is
    /// `row(p-1) + 1`.
    pub fn one_line(&self) -> String {
        let inner = self.rows.iter().map(|r| (r + 1).to_string()).join(",");
        format!("[{inner}]")
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.col_lo == 0 {
            write!(f, "{}", self.one_line())
        } else {
            let inner = self
                .cols()
                .zip(&self.rows)
                .map(|(c, &r)| format!("({c},{r})"))
                .join(",");
            write!(f, "{{{inner}}}")
        }
    }
}

/// Read access to marker rows by column, shared by full and partial
/// diagrams.
pub trait MarkerView {
    fn size(&self) -> usize;
    fn x_row_at(&self, col: usize) -> Option<usize>;
    fn o_row_at(&self, col: usize) -> Option<usize>;
}

impl MarkerView for PlanarGridDiagram {
    fn size(&self) -> usize {
        self.n
    }
    fn x_row_at(&self, col: usize) -> Option<usize> {
        (1..=self.n).contains(&col).then(|| self.x_row(col))
    }
    fn o_row_at(&self, col: usize) -> Option<usize> {
        (1..=self.n).contains(&col).then(|| self.o_row(col))
    }
}

impl MarkerView for PartialDiagram {
    fn size(&self) -> usize {
        self.n
    }
    fn x_row_at(&self, col: usize) -> Option<usize> {
        self.x_row(col)
    }
    fn o_row_at(&self, col: usize) -> Option<usize> {
        self.o_row(col)
    }
}

/// Geometry of a region, with symbolic `-1/4` offsets for interface edges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RegionKind {
    /// Planar rectangle with corners on the given columns/rows.
    Rect { col_lo: usize, col_hi: usize },
    /// Embedded rectangle on the torus, spans measured rightward/upward.
    TorusRect {
        col_start: usize,
        col_span: usize,
        row_start: usize,
        row_span: usize,
    },
    /// Half-strip with left edge on the interface `x = iface - 1/4`.
    HalfStripLeft { iface: usize, col_hi: usize },
    /// Half-strip with right edge on the interface `x = iface - 1/4`.
    HalfStripRight { col_lo: usize, iface: usize },
    /// Full horizontal strip between two interfaces.
    Strip { iface_lo: usize, iface_hi: usize },
}

/// A rectangle-like region together with its marker counts and an emptiness
/// flag for generator points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Region {
    pub kind: RegionKind,
    pub row_lo: usize,
    pub row_hi: usize,
    pub x_count: Vec<u32>,
    pub o_count: Vec<u32>,
    pub interior_empty: bool,
}

impl Region {
    /// The chord `(row_lo, row_hi)` cut on an interface.
    pub fn chord(&self) -> (usize, usize) {
        (self.row_lo, self.row_hi)
    }

    pub fn x_total(&self) -> u32 {
        self.x_count.iter().sum()
    }

    pub fn x_free(&self) -> bool {
        self.x_total() == 0
    }

    /// The monomial `prod U_i^{O_i(R)}`.
    pub fn u_monomial(&self) -> Monomial {
        Monomial::from_exps(self.o_count.clone())
    }

    /// Counts toward the differential: empty interior and no X markers.
    pub fn admissible(&self) -> bool {
        self.interior_empty && self.x_free()
    }
}

/// Marker containment for a planar region spanning marker columns
/// `mcol_lo..=mcol_hi` and rows `(row_lo, row_hi)` strictly.
fn planar_counts<V: MarkerView>(
    d: &V,
    mcol_lo: usize,
    mcol_hi: usize,
    row_lo: usize,
    row_hi: usize,
) -> (Vec<u32>, Vec<u32>) {
    let n = d.size();
    let mut x_count = vec![0u32; n];
    let mut o_count = vec![0u32; n];
    for a in mcol_lo..=mcol_hi.min(n) {
        if let Some(w) = d.x_row_at(a) {
            if row_lo + 1 <= w && w <= row_hi {
                x_count[a - 1] = 1;
            }
        }
        if let Some(w) = d.o_row_at(a) {
            if row_lo + 1 <= w && w <= row_hi {
                o_count[a - 1] = 1;
            }
        }
    }
    (x_count, o_count)
}

/// The planar rectangle from `x` to `y`, if the two generators differ at
/// exactly two columns with `x` at the lower-left/upper-right corners.
pub fn planar_rect<V: MarkerView>(d: &V, x: &Generator, y: &Generator) -> Option<Region> {
    debug_assert_eq!(x.col_lo(), y.col_lo());
    debug_assert_eq!(x.width(), y.width());
    let mut moved = x
        .cols()
        .filter(|&c| x.row(c) != y.row(c));
    let c1 = moved.next()?;
    let c2 = moved.next()?;
    if moved.next().is_some() {
        return None;
    }
    let (r1, r2) = (x.row(c1), x.row(c2));
    // x must sit at the lower-left and upper-right corners.
    if r1 >= r2 || y.row(c1) != r2 || y.row(c2) != r1 {
        return None;
    }
    let interior_empty = x
        .cols()
        .all(|c| !(c1 < c && c < c2 && r1 < x.row(c) && x.row(c) < r2));
    let (x_count, o_count) = planar_counts(d, c1 + 1, c2, r1, r2);
    Some(Region {
        kind: RegionKind::Rect {
            col_lo: c1,
            col_hi: c2,
        },
        row_lo: r1,
        row_hi: r2,
        x_count,
        o_count,
        interior_empty,
    })
}

/// The zero or two embedded rectangles on the torus connecting `x` to `y`.
pub fn toroidal_rects(d: &ToroidalGridDiagram, x: &Generator, y: &Generator) -> Vec<Region> {
    let n = d.n;
    let mut moved = x.cols().filter(|&c| x.row(c) != y.row(c));
    let (c1, c2) = match (moved.next(), moved.next(), moved.next()) {
        (Some(a), Some(b), None) => (a, b),
        _ => return Vec::new(),
    };
    let (a, b) = (x.row(c1), x.row(c2));
    if y.row(c1) != b || y.row(c2) != a {
        return Vec::new();
    }
    // One rectangle starts at each of the two x-corners and runs rightward
    // and upward (wrapping as needed) to the other.
    let mk = |col_start: usize, col_span: usize, row_start: usize, row_span: usize| {
        let period = 2 * n as i64;
        let inside = |off: i64, span: i64| -> bool { off > 0 && off < span };
        let col_off = |c2: i64| (c2 - 2 * col_start as i64).rem_euclid(period);
        let row_off = |r2: i64| (r2 - 2 * row_start as i64).rem_euclid(period);
        let mut x_count = vec![0u32; n];
        let mut o_count = vec![0u32; n];
        for mc in 1..=n {
            let c_in = inside(col_off(2 * mc as i64 - 1), 2 * col_span as i64);
            if c_in {
                let wx = d.x_row(mc);
                if inside(row_off(2 * wx as i64 - 1), 2 * row_span as i64) {
                    x_count[mc - 1] = 1;
                }
                let wo = d.o_row(mc);
                if inside(row_off(2 * wo as i64 - 1), 2 * row_span as i64) {
                    o_count[mc - 1] = 1;
                }
            }
        }
        let interior_empty = x.cols().all(|c| {
            !(inside(col_off(2 * c as i64), 2 * col_span as i64)
                && inside(row_off(2 * x.row(c) as i64), 2 * row_span as i64))
        });
        Region {
            kind: RegionKind::TorusRect {
                col_start,
                col_span,
                row_start,
                row_span,
            },
            row_lo: row_start,
            row_hi: row_start + row_span,
            x_count,
            o_count,
            interior_empty,
        }
    };
    let span_c = c2 - c1;
    let up = |from: usize, to: usize| (to + n - from) % n;
    vec![
        mk(c1, span_c, a, up(a, b)),
        mk(c2, n - span_c, b, up(b, a)),
    ]
}

/// The half-strip with left edge on the slab's left interface moving the one
/// differing point of `x` down onto `y`. Returns the chord `(i, j)` cut on
/// the interface together with the region.
pub fn half_strip_left_edge(
    part: &PartialDiagram,
    x: &Generator,
    y: &Generator,
) -> Option<((usize, usize), Region)> {
    let iface = part.left_interface()?;
    let mut moved = x.cols().filter(|&c| x.row(c) != y.row(c));
    let m = moved.next()?;
    if moved.next().is_some() {
        return None;
    }
    let j = x.row(m);
    let i = y.row(m);
    if j <= i {
        return None;
    }
    // Interior: columns (iface - 1/4, m) so slab points with col in
    // [iface, m), rows strictly between.
    let interior_empty = x
        .cols()
        .all(|c| !(c < m && i < x.row(c) && x.row(c) < j));
    let (x_count, o_count) = planar_counts(part, iface + 1, m, i, j);
    Some((
        (i, j),
        Region {
            kind: RegionKind::HalfStripLeft { iface, col_hi: m },
            row_lo: i,
            row_hi: j,
            x_count,
            o_count,
            interior_empty,
        },
    ))
}

/// The half-strip with right edge on the slab's right interface moving the
/// one differing point of `x` up onto `y`.
pub fn half_strip_right_edge(
    part: &PartialDiagram,
    x: &Generator,
    y: &Generator,
) -> Option<((usize, usize), Region)> {
    let iface = part.right_interface()?;
    let mut moved = x.cols().filter(|&c| x.row(c) != y.row(c));
    let m = moved.next()?;
    if moved.next().is_some() {
        return None;
    }
    let i = x.row(m);
    let j = y.row(m);
    if j <= i {
        return None;
    }
    // Interior: columns (m, iface - 1/4) so slab points with col in
    // (m, iface), rows strictly between.
    let interior_empty = x
        .cols()
        .all(|c| !(c > m && i < x.row(c) && x.row(c) < j));
    let (x_count, o_count) = planar_counts(part, m + 1, iface, i, j);
    Some((
        (i, j),
        Region {
            kind: RegionKind::HalfStripRight { col_lo: m, iface },
            row_lo: i,
            row_hi: j,
            x_count,
            o_count,
            interior_empty,
        },
    ))
}

/// The full strip across a middle slab for the chord `(i, j)`. Present only
/// when no point of `x` lies in the strip, even along its boundary rows.
pub fn strip(part: &PartialDiagram, chord: (usize, usize), x: &Generator) -> Option<Region> {
    let iface_lo = part.left_interface()?;
    let iface_hi = part.right_interface()?;
    let (i, j) = chord;
    debug_assert!(i < j);
    if x.rows().iter().any(|&r| i <= r && r <= j) {
        return None;
    }
    let (x_count, o_count) = planar_counts(part, iface_lo + 1, iface_hi, i, j);
    Some(Region {
        kind: RegionKind::Strip { iface_lo, iface_hi },
        row_lo: i,
        row_hi: j,
        x_count,
        o_count,
        interior_empty: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diagram(n: usize, x: &[usize], o: &[usize]) -> PlanarGridDiagram {
        validate_planar(n, x.to_vec(), o.to_vec()).unwrap()
    }

    /// The one-line permutation `[...]` (1-indexed) as a generator.
    fn perm(rows: &[usize]) -> Generator {
        Generator::new(0, rows.iter().map(|r| r - 1).collect())
    }

    #[test]
    fn validate_planar_examples() {
        assert!(validate_planar(1, vec![1], vec![1]).is_ok());
        assert!(validate_planar(2, vec![1, 2], vec![2, 1]).is_ok());
        let err = validate_planar(2, vec![1, 1], vec![2, 1]).unwrap_err();
        assert_eq!(
            err,
            GridError::NotPermutation {
                which: 'x',
                n: 2,
                offenders: vec![2]
            }
        );
    }

    #[test]
    fn lower_left_examples() {
        assert_eq!(lower_left_count(&[], &[Pt::lattice(1, 1)]), 0);
        assert_eq!(
            lower_left_count(&[Pt::marker(1, 1)], &[Pt::lattice(1, 1)]),
            1
        );
        let anti = [Pt::lattice(0, 2), Pt::lattice(1, 1), Pt::lattice(2, 0)];
        // brute force over the pairs of the antidiagonal: no SW pair
        let mut brute = 0;
        for e in &anti {
            for f in &anti {
                if e.x2 < f.x2 && e.y2 < f.y2 {
                    brute += 1;
                }
            }
        }
        assert_eq!(brute, 0);
        assert_eq!(lower_left_count(&anti, &anti), brute);
    }

    #[test]
    fn planar_rect_paper_example() {
        // on the 2x2 unknot diagram, the move [2,3,1] -> [3,2,1] covers O1
        let d = diagram(2, &[1, 2], &[2, 1]);
        let x = perm(&[2, 3, 1]);
        let y = perm(&[3, 2, 1]);
        let r = planar_rect(&d, &x, &y).unwrap();
        assert!(r.interior_empty);
        assert_eq!(r.o_count, vec![1, 0]);
        assert_eq!(r.x_count, vec![0, 0]);
        assert_eq!(r.u_monomial(), Monomial::var(2, 1));
    }

    #[test]
    fn planar_rect_contains_x() {
        let d = diagram(2, &[1, 2], &[2, 1]);
        let x = perm(&[1, 2, 3]);
        let y = perm(&[2, 1, 3]);
        let r = planar_rect(&d, &x, &y).unwrap();
        assert_eq!(r.x_count, vec![1, 0]);
        assert!(!r.x_free());
    }

    #[test]
    fn planar_rect_orientation() {
        let d = diagram(2, &[1, 2], &[2, 1]);
        let x = perm(&[3, 2, 1]);
        let y = perm(&[2, 3, 1]);
        assert!(planar_rect(&d, &x, &y).is_none());
    }

    #[test]
    fn planar_rect_never_both_directions() {
        let d = diagram(3, &[2, 3, 1], &[3, 1, 2]);
        let gens = d.generators();
        for x in &gens {
            for y in &gens {
                if x == y {
                    continue;
                }
                let fwd = planar_rect(&d, x, y).is_some();
                let bwd = planar_rect(&d, y, x).is_some();
                assert!(!(fwd && bwd), "both directions for {x} {y}");
            }
        }
    }

    #[test]
    fn toroidal_rects_examples() {
        let d = diagram(2, &[1, 2], &[2, 1]).to_toroidal();
        let x = Generator::new(0, vec![0, 1]);
        assert!(toroidal_rects(&d, &x, &x).is_empty());
        let y = Generator::new(0, vec![1, 0]);
        let rects = toroidal_rects(&d, &x, &y);
        assert_eq!(rects.len(), 2);
        // the two rectangles' column spans (and row spans) partition the torus
        let spans: Vec<usize> = rects
            .iter()
            .map(|r| match r.kind {
                RegionKind::TorusRect { col_span, .. } => col_span,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(spans.iter().sum::<usize>(), 2);

        let d3 = diagram(3, &[1, 2, 3], &[2, 3, 1]).to_toroidal();
        let x = Generator::new(0, vec![0, 1, 2]);
        let y = Generator::new(0, vec![1, 2, 0]);
        assert!(toroidal_rects(&d3, &x, &y).is_empty());
    }

    #[test]
    fn half_strip_left_edge_examples() {
        let d = diagram(2, &[1, 2], &[2, 1]);
        let parts = slice(&d, &[1]).unwrap();
        let td = &parts[1];
        let x = Generator::new(1, vec![2, 0]);
        let y = Generator::new(1, vec![1, 0]);
        let ((i, j), r) = half_strip_left_edge(td, &x, &y).unwrap();
        assert_eq!((i, j), (1, 2));
        assert!(r.interior_empty);
        assert_eq!(r.x_total(), 0);
        assert!(r.u_monomial().is_one());
        assert!(half_strip_left_edge(td, &x, &x).is_none());
    }

    #[test]
    fn half_strip_right_edge_examples() {
        let d = diagram(2, &[1, 2], &[2, 1]);
        let parts = slice(&d, &[1]).unwrap();
        let ta = &parts[0];
        let x = Generator::new(0, vec![0]);
        let y = Generator::new(0, vec![1]);
        let ((i, j), r) = half_strip_right_edge(ta, &x, &y).unwrap();
        assert_eq!((i, j), (0, 1));
        assert_eq!(r.x_count, vec![1, 0]);
        let x = Generator::new(0, vec![1]);
        let y = Generator::new(0, vec![2]);
        let ((i, j), r) = half_strip_right_edge(ta, &x, &y).unwrap();
        assert_eq!((i, j), (1, 2));
        assert_eq!(r.o_count, vec![1, 0]);
        assert_eq!(r.x_count, vec![0, 0]);
        assert!(half_strip_right_edge(ta, &x, &x).is_none());
    }

    #[test]
    fn strip_examples() {
        let d = diagram(3, &[2, 3, 1], &[3, 1, 2]);
        let part = PartialDiagram::middle(&d, 1, 2).unwrap();
        let x = Generator::new(1, vec![3]);
        assert!(strip(&part, (0, 2), &x).is_some());
        // a point exactly on the boundary row blocks the strip
        let x_at_boundary = Generator::new(1, vec![2]);
        assert!(strip(&part, (0, 2), &x_at_boundary).is_none());
        assert!(strip(&part, (2, 3), &x).is_none());
        // containment and admissibility are separate: X inside is allowed here
        let x_clear = Generator::new(1, vec![0]);
        let r = strip(&part, (2, 3), &x_clear).unwrap();
        assert_eq!(r.x_count, vec![0, 1, 0]);
    }

    #[test]
    fn slice_examples() {
        let d = diagram(2, &[1, 2], &[2, 1]);
        let parts = slice(&d, &[1]).unwrap();
        assert_eq!(parts.len(), 2);
        let ta = &parts[0];
        assert_eq!(ta.kind(), SlabKind::TypeA);
        assert_eq!(ta.x_row(1), Some(1));
        assert_eq!(ta.o_row(1), Some(2));
        let td = &parts[1];
        assert_eq!(td.kind(), SlabKind::TypeD);
        assert_eq!(td.x_row(2), Some(2));
        assert_eq!(td.o_row(2), Some(1));

        let whole = slice(&d, &[]).unwrap();
        assert_eq!(whole.len(), 1);
        assert_eq!(whole[0].width(), 3);

        let d7 = diagram(
            7,
            &[1, 2, 3, 4, 5, 6, 7],
            &[2, 3, 4, 5, 6, 7, 1],
        );
        let parts = slice(&d7, &[3]).unwrap();
        assert_eq!(parts[0].width(), 3);
        assert_eq!(parts[1].width(), 5);
        assert_eq!(parts[0].n() + 1, 8);

        assert!(slice(&d, &[0]).is_err());
        assert!(slice(&d, &[1, 1]).is_err());
        assert!(slice(&d, &[3]).is_err());
    }

    #[test]
    fn glue_examples() {
        let d = diagram(2, &[1, 2], &[2, 1]);
        let parts = slice(&d, &[1]).unwrap();
        assert_eq!(glue(&parts[0], &parts[1]).unwrap(), Glued::Full(d.clone()));
        assert!(glue(&parts[1], &parts[0]).is_err());
    }

    #[test]
    fn rect_marker_counts_add_under_decomposition() {
        // cutting a rectangle into two pieces along an internal grid line
        // splits its marker counts
        let d = diagram(4, &[2, 4, 1, 3], &[4, 1, 3, 2]);
        let x = Generator::new(0, vec![0, 4, 2, 3, 1]);
        let gens = d.generators();
        for y in &gens {
            let Some(r) = planar_rect(&d, &x, y) else {
                continue;
            };
            let RegionKind::Rect { col_lo, col_hi } = r.kind else {
                unreachable!()
            };
            for mid in r.row_lo + 1..r.row_hi {
                let (x1, o1) = planar_counts(&d, col_lo + 1, col_hi, r.row_lo, mid);
                let (x2, o2) = planar_counts(&d, col_lo + 1, col_hi, mid, r.row_hi);
                let xs: Vec<u32> = x1.iter().zip(&x2).map(|(a, b)| a + b).collect();
                let os: Vec<u32> = o1.iter().zip(&o2).map(|(a, b)| a + b).collect();
                assert_eq!(xs, r.x_count);
                assert_eq!(os, r.o_count);
            }
            for mid in col_lo + 1..col_hi {
                let (x1, o1) = planar_counts(&d, col_lo + 1, mid, r.row_lo, r.row_hi);
                let (x2, o2) = planar_counts(&d, mid + 1, col_hi, r.row_lo, r.row_hi);
                let xs: Vec<u32> = x1.iter().zip(&x2).map(|(a, b)| a + b).collect();
                let os: Vec<u32> = o1.iter().zip(&o2).map(|(a, b)| a + b).collect();
                assert_eq!(xs, r.x_count);
                assert_eq!(os, r.o_count);
            }
        }
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
        Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
    }

    proptest! {
        #[test]
        fn slice_glue_round_trip(
            (x, o) in (1usize..=5).prop_flat_map(|n| (arb_perm(n), arb_perm(n))),
            cut_bits in proptest::collection::vec(any::<bool>(), 5),
        ) {
            let n = x.len();
            let d = validate_planar(n, x, o).unwrap();
            let cuts: Vec<usize> = (1..=n).filter(|&k| cut_bits[k - 1]).collect();
            let parts = slice(&d, &cuts).unwrap();
            prop_assert_eq!(glue_all(&parts).unwrap(), Glued::Full(d));
        }

        #[test]
        fn toroidal_rects_zero_or_two(
            (x, o) in (2usize..=4).prop_flat_map(|n| (arb_perm(n), arb_perm(n))),
        ) {
            let n = x.len();
            let d = validate_planar(n, x, o).unwrap().to_toroidal();
            let gens = d.generators();
            for a in &gens {
                for b in &gens {
                    let r = toroidal_rects(&d, a, b);
                    prop_assert!(r.len() == 0 || r.len() == 2);
                    if r.len() == 2 {
                        let spans: Vec<(usize, usize)> = r.iter().map(|reg| match reg.kind {
                            RegionKind::TorusRect { col_span, row_span, .. } => (col_span, row_span),
                            _ => unreachable!(),
                        }).collect();
                        prop_assert_eq!(spans[0].0 + spans[1].0, n);
                        prop_assert_eq!(spans[0].1 + spans[1].1, n);
                    }
                }
            }
        }
    }
}
