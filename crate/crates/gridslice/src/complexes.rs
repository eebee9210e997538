//! The bigraded chain complexes of full grid diagrams, and the Alexander and
//! Maslov gradings of slab generators.
//!
//! The planar complex counts empty, X-free rectangles in the plane; the
//! toroidal complex counts them on the quotient torus. Gradings follow the
//! lower-left pair counts, normalized so that no additive constants appear;
//! `U_l` carries bidegree `(-1, -2)`.

use std::collections::BTreeSet;
use std::ops::Add;

use serde::Serialize;
use thiserror::Error;

use crate::coeffs::FreeElement;
use crate::grid::{
    lower_left_count, planar_rect, toroidal_rects, Generator, PartialDiagram,
    PlanarGridDiagram, Pt, SlabKind, ToroidalGridDiagram,
};

/// The (Alexander, Maslov) bigrading of a basis element.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Bigrading {
    pub alexander: i64,
    pub maslov: i64,
}

impl Bigrading {
    pub fn new(alexander: i64, maslov: i64) -> Self {
        Bigrading { alexander, maslov }
    }

    /// The bidegree shift of a coefficient monomial of total degree `d`.
    pub fn monomial_shift(d: u32) -> Self {
        Bigrading::new(-(d as i64), -2 * d as i64)
    }
}

impl Add for Bigrading {
    type Output = Bigrading;
    fn add(self, rhs: Bigrading) -> Bigrading {
        Bigrading::new(
            self.alexander + rhs.alexander,
            self.maslov + rhs.maslov,
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradingError {
    #[error("a middle slab grading needs the compatible left idempotent")]
    IdemRequired,
    #[error("idempotent {idem:?} is incompatible with the generator (size {want} disjoint from occupied rows expected)")]
    IncompatibleIdem { idem: Vec<usize>, want: usize },
}

/// A finitely generated bigraded complex over `F2[U1..UN]` with a
/// distinguished generator basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedComplex {
    pub n: usize,
    pub basis: Vec<Generator>,
    pub diff: Vec<FreeElement<usize>>,
    pub grading: Vec<Bigrading>,
}

impl GradedComplex {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Index of a generator in the (sorted) basis.
    pub fn index_of(&self, g: &Generator) -> Option<usize> {
        self.basis.binary_search_by(|b| b.rows().cmp(g.rows())).ok()
    }

    /// Extends the differential linearly over monomial coefficients.
    pub fn d_of(&self, e: &FreeElement<usize>) -> FreeElement<usize> {
        let mut out = FreeElement::zero();
        for (m, t) in e.iter() {
            out.add_assign(&self.diff[*t].scale(m, |u| *u));
        }
        out
    }

    /// Checks `d^2 = 0`; on failure returns the first offending generator.
    pub fn d_squared_witness(&self) -> Option<usize> {
        (0..self.basis.len()).find(|&i| !self.d_of(&self.diff[i]).is_zero())
    }

    /// Checks that every differential term preserves the Alexander grading
    /// and drops the Maslov grading by one, with `U_l` of bidegree (-1,-2).
    pub fn degree_witness(&self) -> Option<(usize, usize)> {
        for (i, dx) in self.diff.iter().enumerate() {
            let g = self.grading[i];
            for (m, t) in dx.iter() {
                let h = self.grading[*t] + Bigrading::monomial_shift(m.degree());
                if h.alexander != g.alexander || h.maslov != g.maslov - 1 {
                    return Some((i, *t));
                }
            }
        }
        None
    }
}

fn gradings_from_points(
    xs: &[Pt],
    os: &[Pt],
    all_points: &[Pt],
    graded_points: &[Pt],
) -> Bigrading {
    let ix = lower_left_count(xs, graded_points) as i64;
    let io = lower_left_count(os, graded_points) as i64;
    let ii = lower_left_count(all_points, graded_points) as i64;
    Bigrading::new(ix - io, ii - 2 * io)
}

/// The planar complex of a diagram: free on all `(n+1)!` generators, with
/// the differential counting empty X-free rectangles weighted by their O
/// markers.
pub fn planar_complex(d: &PlanarGridDiagram) -> GradedComplex {
    let n = d.n();
    let basis = d.generators();
    let xs = d.x_points();
    let os = d.o_points();
    let index = index_map(&basis);
    let mut diff = Vec::with_capacity(basis.len());
    let mut grading = Vec::with_capacity(basis.len());
    for x in &basis {
        let mut dx = FreeElement::zero();
        for c1 in 0..=n {
            for c2 in c1 + 1..=n {
                if x.row(c1) >= x.row(c2) {
                    continue;
                }
                let y = x.swapped(c1, c2);
                if let Some(r) = planar_rect(d, x, &y) {
                    if r.admissible() {
                        dx.toggle(r.u_monomial(), index[y.rows()]);
                    }
                }
            }
        }
        diff.push(dx);
        let pts = x.points();
        grading.push(gradings_from_points(&xs, &os, &pts, &pts));
    }
    GradedComplex {
        n,
        basis,
        diff,
        grading,
    }
}

/// The toroidal complex: free on all `n!` generators, counting empty X-free
/// rectangles on the torus. Gradings are computed on the standard unwrapping
/// with both additive constants zero.
pub fn toroidal_complex(d: &ToroidalGridDiagram) -> GradedComplex {
    let n = d.n();
    let basis = d.generators();
    let xs: Vec<Pt> = (1..=n).map(|i| Pt::marker(i, d.x_row(i))).collect();
    let os: Vec<Pt> = (1..=n).map(|i| Pt::marker(i, d.o_row(i))).collect();
    let index = index_map(&basis);
    let mut diff = Vec::with_capacity(basis.len());
    let mut grading = Vec::with_capacity(basis.len());
    for x in &basis {
        let mut dx = FreeElement::zero();
        for c1 in 0..n {
            for c2 in c1 + 1..n {
                let y = x.swapped(c1, c2);
                for r in toroidal_rects(d, x, &y) {
                    if r.admissible() {
                        dx.toggle(r.u_monomial(), index[y.rows()]);
                    }
                }
            }
        }
        diff.push(dx);
        let pts = x.points();
        grading.push(gradings_from_points(&xs, &os, &pts, &pts));
    }
    GradedComplex {
        n,
        basis,
        diff,
        grading,
    }
}

fn index_map(basis: &[Generator]) -> std::collections::HashMap<Vec<usize>, usize> {
    basis
        .iter()
        .enumerate()
        .map(|(i, g)| (g.rows().to_vec(), i))
        .collect()
}

/// The canonical completion of a slab configuration: slab markers stay put,
/// the rows unused by the slab's markers fill the outside columns left part
/// first in ascending order, and the completing generator points place the
/// idempotent rows on the left block and the leftover rows on the right
/// block, both ascending.
pub struct CompletedSlab {
    pub xs: Vec<Pt>,
    pub os: Vec<Pt>,
    pub all_points: Vec<Pt>,
    /// Marker rows (1-indexed) lying strictly left of a given column's
    /// interface, per kind, for interface grading data.
    pub left_x_rows: Vec<usize>,
    pub left_o_rows: Vec<usize>,
}

/// Builds the canonical completion of `(part, x)` (with the left idempotent
/// `idem` for middle slabs).
pub fn complete_slab(
    part: &PartialDiagram,
    x: &Generator,
    idem: Option<&BTreeSet<usize>>,
) -> Result<CompletedSlab, GradingError> {
    let n = part.n();
    let occupied = x.rows_set();

    let left_rows: Vec<usize> = match part.kind() {
        SlabKind::TypeA => {
            if let Some(s) = idem {
                if *s != occupied {
                    return Err(GradingError::IncompatibleIdem {
                        idem: s.iter().copied().collect(),
                        want: x.width(),
                    });
                }
            }
            Vec::new()
        }
        SlabKind::TypeD => {
            let comp: BTreeSet<usize> = (0..=n).filter(|r| !occupied.contains(r)).collect();
            if let Some(s) = idem {
                if *s != comp {
                    return Err(GradingError::IncompatibleIdem {
                        idem: s.iter().copied().collect(),
                        want: comp.len(),
                    });
                }
            }
            comp.into_iter().collect()
        }
        SlabKind::Middle => {
            let s = idem.ok_or(GradingError::IdemRequired)?;
            let ok = s.len() == part.col_lo() && s.iter().all(|r| !occupied.contains(r));
            if !ok {
                return Err(GradingError::IncompatibleIdem {
                    idem: s.iter().copied().collect(),
                    want: part.col_lo(),
                });
            }
            s.iter().copied().collect()
        }
    };

    // markers: slab columns as stored, remaining rows split left-first
    let fill = |slab_rows: &BTreeSet<usize>, row_of: &dyn Fn(usize) -> Option<usize>| {
        let mut xs: Vec<Pt> = Vec::with_capacity(n);
        let mut unused = (1..=n).filter(|r| !slab_rows.contains(r));
        let mut left_rows = Vec::new();
        for col in 1..=part.col_lo() {
            let row = unused.next().expect("slab leaves enough unused rows");
            left_rows.push(row);
            xs.push(Pt::marker(col, row));
        }
        for col in part.marker_cols() {
            xs.push(Pt::marker(col, row_of(col).expect("slab marker")));
        }
        for col in part.col_hi().min(n) + 1..=n {
            let row = unused.next().expect("slab leaves enough unused rows");
            xs.push(Pt::marker(col, row));
        }
        (xs, left_rows)
    };
    let (xs, left_x_rows) = fill(&part.x_rows(), &|c| part.x_row(c));
    let (os, left_o_rows) = fill(&part.o_rows(), &|c| part.o_row(c));

    // generator points: left block, slab, right block
    let mut all_points: Vec<Pt> = Vec::with_capacity(n + 1);
    for (i, &r) in left_rows.iter().enumerate() {
        all_points.push(Pt::lattice(i, r));
    }
    all_points.extend(x.points());
    let used: BTreeSet<usize> = left_rows.iter().copied().chain(occupied).collect();
    let mut rest = (0..=n).filter(|r| !used.contains(r));
    for col in part.col_hi()..=n {
        let row = rest.next().expect("completion rows exhausted");
        all_points.push(Pt::lattice(col, row));
    }
    Ok(CompletedSlab {
        xs,
        os,
        all_points,
        left_x_rows,
        left_o_rows,
    })
}

/// Alexander and Maslov gradings of a slab generator, via the canonical
/// completion. `idem` is required (and meaningful) only for middle slabs.
pub fn partial_gradings(
    part: &PartialDiagram,
    x: &Generator,
    idem: Option<&BTreeSet<usize>>,
) -> Result<Bigrading, GradingError> {
    let c = complete_slab(part, x, idem)?;
    Ok(gradings_from_points(&c.xs, &c.os, &c.all_points, &x.points()))
}
