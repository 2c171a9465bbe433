//! Trivial fibrations and double biequivalences.

use std::fmt;

use rustc_hash::FxHashMap;

use super::{validate_double_functor, DoubleFunctor, FinDoubleCategory, Square};
use crate::error::{Error, Result};
use crate::twocat::{local_biequivalence_failure, BiequivalenceFailure, LocalTwoCategory};

/// Why a double functor `F: D -> E` is not a trivial fibration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrivialFibrationFailure {
    /// An object of `E` outside the image.
    NotSurjective { object: usize },
    /// A horizontal of `E` between images of `x` and `y` with no lift.
    HorizontalNotFull { x: usize, y: usize, horizontal: usize },
    /// A vertical of `E` between images of `x` and `y` with no lift.
    VerticalNotFull { x: usize, y: usize, vertical: usize },
    /// A square of `E` over the image of a boundary of `D` with no lift, or
    /// with more than one.
    SquareNotBijective { boundary: Square, square: usize, lifts: usize },
}

impl fmt::Display for TrivialFibrationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrivialFibrationFailure::NotSurjective { object } => {
                write!(f, "object {object} is not in the image")
            }
            TrivialFibrationFailure::HorizontalNotFull { x, y, horizontal } => {
                write!(f, "horizontal {horizontal} has no lift from {x} to {y}")
            }
            TrivialFibrationFailure::VerticalNotFull { x, y, vertical } => {
                write!(f, "vertical {vertical} has no lift from {x} to {y}")
            }
            TrivialFibrationFailure::SquareNotBijective {
                boundary,
                square,
                lifts,
            } => write!(
                f,
                "square {square} has {lifts} lifts with boundary ({}, {}, {}, {})",
                boundary.top, boundary.bottom, boundary.left, boundary.right
            ),
        }
    }
}

fn check_valid(f: &DoubleFunctor) -> Result<()> {
    let report = validate_double_functor(f);
    if report.is_empty() {
        Ok(())
    } else {
        Err(Error::invalid("double functor", report.to_string()))
    }
}

/// `None` when `F` is surjective on objects, full on horizontals and
/// verticals, and fully faithful on squares.
pub fn trivial_fibration_failure(f: &DoubleFunctor) -> Result<Option<TrivialFibrationFailure>> {
    check_valid(f)?;
    let (d, e) = (&*f.dom, &*f.cod);
    let mut hit = vec![false; e.object_count()];
    for &x in &f.ob_map {
        hit[x] = true;
    }
    if let Some(object) = hit.iter().position(|&b| !b) {
        return Ok(Some(TrivialFibrationFailure::NotSurjective { object }));
    }
    for x in 0..d.object_count() {
        for y in 0..d.object_count() {
            let (fx, fy) = (f.ob_map[x], f.ob_map[y]);
            for &g in e.horizontals(fx, fy) {
                if !d.horizontals(x, y).iter().any(|&h| f.h_map[h] == g) {
                    return Ok(Some(TrivialFibrationFailure::HorizontalNotFull {
                        x,
                        y,
                        horizontal: g,
                    }));
                }
            }
            for &g in e.verticals(fx, fy) {
                if !d.verticals(x, y).iter().any(|&h| f.v_map[h] == g) {
                    return Ok(Some(TrivialFibrationFailure::VerticalNotFull {
                        x,
                        y,
                        vertical: g,
                    }));
                }
            }
        }
    }
    for u in 0..d.vertical_count() {
        let au = d.v(u);
        for v in 0..d.vertical_count() {
            let av = d.v(v);
            for &top in d.horizontals(au.src, av.src) {
                for &bottom in d.horizontals(au.tgt, av.tgt) {
                    let b = Square::new(top, bottom, u, v);
                    let mut lifts: FxHashMap<usize, usize> = FxHashMap::default();
                    for &s in d.squares_with(b) {
                        *lifts.entry(f.sq_map[s]).or_default() += 1;
                    }
                    let image = Square::new(f.h_map[top], f.h_map[bottom], f.v_map[u], f.v_map[v]);
                    for &t in e.squares_with(image) {
                        let n = lifts.get(&t).copied().unwrap_or(0);
                        if n != 1 {
                            return Ok(Some(TrivialFibrationFailure::SquareNotBijective {
                                boundary: b,
                                square: t,
                                lifts: n,
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn is_trivial_fibration(f: &DoubleFunctor) -> Result<bool> {
    Ok(trivial_fibration_failure(f)?.is_none())
}

/// Why a double functor is not a double biequivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DoubleBiequivalenceFailure {
    /// The underlying horizontal 2-functor is not a biequivalence.
    Horizontal(BiequivalenceFailure),
    /// The induced 2-functor on the arrow homs `⟦V[1], -⟧` is not a
    /// biequivalence.
    ArrowHom(BiequivalenceFailure),
}

impl fmt::Display for DoubleBiequivalenceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DoubleBiequivalenceFailure::Horizontal(x) => write!(f, "horizontal part: {x}"),
            DoubleBiequivalenceFailure::ArrowHom(x) => write!(f, "vertical arrow part: {x}"),
        }
    }
}

/// `bold_h(D)` read straight from the tables of `D`: 2-cells are globular
/// squares.
struct HorizontalView<'a>(&'a FinDoubleCategory);

fn globular(d: &FinDoubleCategory, f: usize, g: usize) -> &[usize] {
    let a = d.h(f);
    d.squares_with(Square::new(f, g, d.v_id(a.src), d.v_id(a.tgt)))
}

impl LocalTwoCategory for HorizontalView<'_> {
    fn object_count(&self) -> usize {
        self.0.object_count()
    }

    fn one_cells(&self, a: usize, b: usize) -> Vec<usize> {
        self.0.horizontals(a, b).to_vec()
    }

    fn id1(&self, a: usize) -> usize {
        self.0.h_id(a)
    }

    fn comp1(&self, g: usize, f: usize) -> usize {
        self.0.h_comp(g, f).expect("composable horizontals")
    }

    fn two_cells(&self, f: usize, g: usize) -> Vec<(usize, usize)> {
        globular(self.0, f, g).iter().map(|&s| (s, 0)).collect()
    }

    fn isomorphic(&self, f: usize, g: usize) -> bool {
        globular(self.0, f, g)
            .iter()
            .any(|&s| self.0.v_inverse(s).is_some())
    }
}

/// `bold_h(⟦V[1], D⟧)` read straight from the tables of `D`. Objects are
/// verticals, 1-cells squares composed horizontally, and a 2-cell `A => B`
/// is a pair `(S, T)` of globular squares with `T·A = B·S`.
struct ArrowView<'a>(&'a FinDoubleCategory);

impl ArrowView<'_> {
    fn cells(&self, a: usize, b: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let d = self.0;
        let (ba, bb) = (d.square(a), d.square(b));
        let tops = globular(d, ba.top, bb.top);
        let bottoms = globular(d, ba.bottom, bb.bottom);
        tops.iter()
            .flat_map(move |&s| bottoms.iter().map(move |&t| (s, t)))
            .filter(move |&(s, t)| d.vcomp(t, a) == d.vcomp(b, s))
    }
}

impl LocalTwoCategory for ArrowView<'_> {
    fn object_count(&self) -> usize {
        self.0.vertical_count()
    }

    fn one_cells(&self, a: usize, b: usize) -> Vec<usize> {
        self.0.square_h_category().hom(a, b).to_vec()
    }

    fn id1(&self, a: usize) -> usize {
        self.0.sq_h_id(a)
    }

    fn comp1(&self, g: usize, f: usize) -> usize {
        self.0.hcomp(g, f).expect("composable squares")
    }

    fn two_cells(&self, f: usize, g: usize) -> Vec<(usize, usize)> {
        self.cells(f, g).collect()
    }

    fn isomorphic(&self, f: usize, g: usize) -> bool {
        let d = self.0;
        self.cells(f, g)
            .any(|(s, t)| d.v_inverse(s).is_some() && d.v_inverse(t).is_some())
    }
}

/// `None` when both `bold_h(F)` and `bold_h(⟦V[1], F⟧)` are
/// biequivalences. Both are checked hom by hom on the tables of `F`'s
/// domain and codomain, so neither 2-category is built.
pub fn double_biequivalence_failure(
    f: &DoubleFunctor,
) -> Result<Option<DoubleBiequivalenceFailure>> {
    check_valid(f)?;
    let (d, e) = (&*f.dom, &*f.cod);
    let m = &f.sq_map;
    if let Some(x) = local_biequivalence_failure(
        &HorizontalView(d),
        &HorizontalView(e),
        &f.ob_map,
        &f.h_map,
        |(s, _)| (m[s], 0),
    ) {
        return Ok(Some(DoubleBiequivalenceFailure::Horizontal(x)));
    }
    if let Some(x) = local_biequivalence_failure(
        &ArrowView(d),
        &ArrowView(e),
        &f.v_map,
        &f.sq_map,
        |(s, t)| (m[s], m[t]),
    ) {
        return Ok(Some(DoubleBiequivalenceFailure::ArrowHom(x)));
    }
    Ok(None)
}

pub fn is_double_biequivalence(f: &DoubleFunctor) -> Result<bool> {
    Ok(double_biequivalence_failure(f)?.is_none())
}
