//! Finite strict double categories.
//!
//! Vertical morphisms point down, horizontal ones point right. A square has
//! a top and a bottom horizontal and a left and a right vertical. All cell
//! data lives in four ordinary categories sharing ids:
//!
//! * `hor`: objects and horizontal morphisms,
//! * `ver`: objects and vertical morphisms,
//! * `sq_h`: verticals as objects, squares as morphisms `left -> right`,
//!   composed side by side,
//! * `sq_v`: horizontals as objects, squares as morphisms `top -> bottom`,
//!   composed one above the other.
//!
//! Composition tables are keyed `(β, α)` where `α` is the left square for
//! horizontal composition and the upper square for vertical composition.

mod companion;
mod embed;
mod enumerate;
mod equivalence;
mod iso;
mod pasting;
mod pseudo;
mod search;
mod shape;

use std::sync::Arc;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::fincat::{self, Arrow, FinCategory};
use crate::lazy::Cache;
use crate::report::ValidationReport;

pub use companion::{canonical_square, find_companion, is_companion, is_whi, whi_failure, CompanionPair};
pub use embed::{
    bold_h, bold_h_functor, embed_h, embed_h_functor, embed_htilde, embed_htilde_functor, embed_v,
    globular_squares, htilde_inclusion, Htilde, HtildeVertical,
};
pub use enumerate::{double_functors, double_functors_restricted, FunctorData};
pub use equivalence::{
    double_biequivalence_failure, is_double_biequivalence, is_trivial_fibration,
    trivial_fibration_failure, DoubleBiequivalenceFailure, TrivialFibrationFailure,
};
pub use iso::{iso_search, iso_search_labeled, CellLabels};
pub use pasting::{Grid, Pasting};
pub use pseudo::{
    horizontal_transformations, identity_horizontal, identity_vertical, modifications, pseudo_hom, pseudo_hom_restricted, pseudo_hom_sub,
    vertical_transformations, HTrans, Modification, PseudoHom, Restriction, Transformation, VTrans,
};
pub use shape::{
    grid, horizontal_ordinal, strict_hom_shape, strict_hom_shape_bold_h,
    strict_hom_shape_functor_bold_h, vertical_ordinal,
};

/// Boundary of a square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square {
    pub top: usize,
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
}

impl Square {
    pub fn new(top: usize, bottom: usize, left: usize, right: usize) -> Self {
        Square {
            top,
            bottom,
            left,
            right,
        }
    }
}

#[derive(Debug, Clone)]
struct Index {
    by_boundary: FxHashMap<Square, Vec<usize>>,
    v_inverse: Vec<Option<usize>>,
    h_inverse: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinDoubleCategory {
    hor: FinCategory,
    ver: FinCategory,
    sq_h: FinCategory,
    sq_v: FinCategory,
    index: Cache<Index>,
}

impl FinDoubleCategory {
    /// Builds a double category from raw tables; only id ranges and table
    /// shapes are checked here.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        hor: FinCategory,
        ver: FinCategory,
        squares: Vec<Square>,
        sq_h_identity: Vec<usize>,
        sq_v_identity: Vec<usize>,
        sq_h_comp: impl IntoIterator<Item = (usize, usize, usize)>,
        sq_v_comp: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        if hor.object_count() != ver.object_count() {
            return Err(Error::invalid(
                "double category",
                "horizontal and vertical categories disagree on objects",
            ));
        }
        for (k, s) in squares.iter().enumerate() {
            if s.top >= hor.morphism_count()
                || s.bottom >= hor.morphism_count()
                || s.left >= ver.morphism_count()
                || s.right >= ver.morphism_count()
            {
                return Err(Error::invalid(
                    "double category",
                    format!("square {k} has a boundary id out of range"),
                ));
            }
        }
        let sq_h = FinCategory::new(
            ver.morphism_count(),
            squares.iter().map(|s| Arrow::new(s.left, s.right)).collect(),
            sq_h_identity,
            sq_h_comp,
        )?;
        let sq_v = FinCategory::new(
            hor.morphism_count(),
            squares.iter().map(|s| Arrow::new(s.top, s.bottom)).collect(),
            sq_v_identity,
            sq_v_comp,
        )?;
        Ok(FinDoubleCategory {
            hor,
            ver,
            sq_h,
            sq_v,
            index: Cache::new(),
        })
    }

    /// Builds a double category whose square compositions are computed by
    /// closures on every composable pair.
    #[allow(clippy::too_many_arguments)]
    pub fn from_fn(
        hor: FinCategory,
        ver: FinCategory,
        squares: Vec<Square>,
        sq_h_identity: Vec<usize>,
        sq_v_identity: Vec<usize>,
        mut hcomp: impl FnMut(usize, usize) -> usize,
        mut vcomp: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        let mut by_left: FxHashMap<usize, Vec<usize>> = FxHashMap::default();
        let mut by_top: FxHashMap<usize, Vec<usize>> = FxHashMap::default();
        for (k, s) in squares.iter().enumerate() {
            by_left.entry(s.left).or_default().push(k);
            by_top.entry(s.top).or_default().push(k);
        }
        let mut hc = Vec::new();
        let mut vc = Vec::new();
        for (a, s) in squares.iter().enumerate() {
            for &b in by_left.get(&s.right).map(Vec::as_slice).unwrap_or(&[]) {
                hc.push((b, a, hcomp(b, a)));
            }
            for &b in by_top.get(&s.bottom).map(Vec::as_slice).unwrap_or(&[]) {
                vc.push((b, a, vcomp(b, a)));
            }
        }
        FinDoubleCategory::new(hor, ver, squares, sq_h_identity, sq_v_identity, hc, vc)
    }

    pub fn terminal() -> Self {
        embed_h(&crate::corpus::terminal())
    }

    pub fn empty() -> Self {
        embed_h(&crate::corpus::empty())
    }

    pub fn object_count(&self) -> usize {
        self.hor.object_count()
    }

    pub fn horizontal_count(&self) -> usize {
        self.hor.morphism_count()
    }

    pub fn vertical_count(&self) -> usize {
        self.ver.morphism_count()
    }

    pub fn square_count(&self) -> usize {
        self.sq_h.morphism_count()
    }

    /// Objects and horizontal morphisms.
    pub fn horizontal_category(&self) -> &FinCategory {
        &self.hor
    }

    /// Objects and vertical morphisms.
    pub fn vertical_category(&self) -> &FinCategory {
        &self.ver
    }

    /// Verticals and squares under horizontal composition.
    pub fn square_h_category(&self) -> &FinCategory {
        &self.sq_h
    }

    /// Horizontals and squares under vertical composition.
    pub fn square_v_category(&self) -> &FinCategory {
        &self.sq_v
    }

    pub fn h(&self, f: usize) -> Arrow {
        self.hor.arrow(f)
    }

    pub fn v(&self, u: usize) -> Arrow {
        self.ver.arrow(u)
    }

    pub fn square(&self, s: usize) -> Square {
        let a = self.sq_v.arrow(s);
        let b = self.sq_h.arrow(s);
        Square::new(a.src, a.tgt, b.src, b.tgt)
    }

    pub fn squares(&self) -> Vec<Square> {
        (0..self.square_count()).map(|s| self.square(s)).collect()
    }

    /// Identity horizontal on an object.
    pub fn h_id(&self, x: usize) -> usize {
        self.hor.identity(x)
    }

    /// Identity vertical on an object.
    pub fn v_id(&self, x: usize) -> usize {
        self.ver.identity(x)
    }

    /// `g∘f` on horizontals.
    pub fn h_comp(&self, g: usize, f: usize) -> Option<usize> {
        self.hor.compose(g, f)
    }

    /// `v∘u` on verticals.
    pub fn v_comp(&self, v: usize, u: usize) -> Option<usize> {
        self.ver.compose(v, u)
    }

    /// The identity square on a vertical, neutral for side-by-side pasting.
    pub fn sq_h_id(&self, u: usize) -> usize {
        self.sq_h.identity(u)
    }

    /// The identity square on a horizontal, neutral for stacking.
    pub fn sq_v_id(&self, f: usize) -> usize {
        self.sq_v.identity(f)
    }

    /// `α` on the left, `β` on the right.
    pub fn hcomp(&self, b: usize, a: usize) -> Option<usize> {
        self.sq_h.compose(b, a)
    }

    /// `α` on top, `β` below.
    pub fn vcomp(&self, b: usize, a: usize) -> Option<usize> {
        self.sq_v.compose(b, a)
    }

    pub fn horizontals(&self, x: usize, y: usize) -> &[usize] {
        self.hor.hom(x, y)
    }

    pub fn verticals(&self, x: usize, y: usize) -> &[usize] {
        self.ver.hom(x, y)
    }

    fn index(&self) -> &Index {
        self.index.get_or_init(|| {
            let mut by_boundary: FxHashMap<Square, Vec<usize>> = FxHashMap::default();
            for s in 0..self.square_count() {
                by_boundary.entry(self.square(s)).or_default().push(s);
            }
            let v_inverse = (0..self.square_count())
                .map(|s| fincat::is_isomorphism(&self.sq_v, s).ok().flatten())
                .collect();
            let h_inverse = (0..self.square_count())
                .map(|s| fincat::is_isomorphism(&self.sq_h, s).ok().flatten())
                .collect();
            Index {
                by_boundary,
                v_inverse,
                h_inverse,
            }
        })
    }

    /// Squares with the given boundary, ascending.
    pub fn squares_with(&self, b: Square) -> &[usize] {
        self.index()
            .by_boundary
            .get(&b)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Inverse under vertical composition.
    pub fn v_inverse(&self, s: usize) -> Option<usize> {
        self.index().v_inverse[s]
    }

    /// Inverse under horizontal composition.
    pub fn h_inverse(&self, s: usize) -> Option<usize> {
        self.index().h_inverse[s]
    }

    /// Whether the square has identity left and right verticals.
    pub fn is_globular(&self, s: usize) -> bool {
        let b = self.square(s);
        self.ver.is_identity(b.left) && self.ver.is_identity(b.right)
    }

    /// Swaps the horizontal and vertical directions.
    pub fn transpose(&self) -> FinDoubleCategory {
        FinDoubleCategory {
            hor: self.ver.clone(),
            ver: self.hor.clone(),
            sq_h: self.sq_v.clone(),
            sq_v: self.sq_h.clone(),
            index: Cache::new(),
        }
    }

    pub(crate) fn check_object(&self, x: usize) -> Result<()> {
        if x < self.object_count() {
            Ok(())
        } else {
            Err(Error::UnknownCell {
                kind: "object",
                id: x,
            })
        }
    }

    pub(crate) fn check_horizontal(&self, f: usize) -> Result<()> {
        if f < self.horizontal_count() {
            Ok(())
        } else {
            Err(Error::UnknownCell {
                kind: "horizontal",
                id: f,
            })
        }
    }

    pub(crate) fn check_vertical(&self, u: usize) -> Result<()> {
        if u < self.vertical_count() {
            Ok(())
        } else {
            Err(Error::UnknownCell {
                kind: "vertical",
                id: u,
            })
        }
    }

    pub(crate) fn check_square(&self, s: usize) -> Result<()> {
        if s < self.square_count() {
            Ok(())
        } else {
            Err(Error::UnknownCell {
                kind: "square",
                id: s,
            })
        }
    }
}

/// Exhaustive scan of the double category axioms.
///
/// Each entry of the two square composition tables is blamed at most once,
/// with priority unit, then boundary, then associativity. Interchange is
/// evaluated on every 2×2 grid whose entries were not blamed.
pub fn validate_double_category(d: &FinDoubleCategory) -> ValidationReport {
    let mut report = ValidationReport::default();
    report.extend_prefixed("horizontals", fincat::validate_category(&d.hor));
    report.extend_prefixed("verticals", fincat::validate_category(&d.ver));
    if !report.is_empty() {
        return report;
    }
    for s in 0..d.square_count() {
        let b = d.square(s);
        let (t, m, l, r) = (d.h(b.top), d.h(b.bottom), d.v(b.left), d.v(b.right));
        if t.src != l.src || t.tgt != r.src || m.src != l.tgt || m.tgt != r.tgt {
            report.push(
                "square_boundary",
                vec![s],
                format!("square {s} has mismatched corners"),
            );
        }
    }
    for u in 0..d.vertical_count() {
        let s = d.sq_h_id(u);
        let b = d.square(s);
        let a = d.v(u);
        if b.left != u || b.right != u || b.top != d.h_id(a.src) || b.bottom != d.h_id(a.tgt) {
            report.push(
                "identity_square_boundary",
                vec![u, s],
                format!("identity square {s} on vertical {u}"),
            );
        }
    }
    for f in 0..d.horizontal_count() {
        let s = d.sq_v_id(f);
        let b = d.square(s);
        let a = d.h(f);
        if b.top != f || b.bottom != f || b.left != d.v_id(a.src) || b.right != d.v_id(a.tgt) {
            report.push(
                "identity_square_boundary",
                vec![f, s],
                format!("identity square {s} on horizontal {f}"),
            );
        }
    }
    for x in 0..d.object_count() {
        if d.sq_h_id(d.v_id(x)) != d.sq_v_id(d.h_id(x)) {
            report.push(
                "identity_square_coherence",
                vec![x],
                format!("the two identity squares at object {x} differ"),
            );
        }
    }
    if !report.is_empty() {
        return report;
    }
    let hb = scan_table(d, Direction::Horizontal, &mut report);
    let vb = scan_table(d, Direction::Vertical, &mut report);

    let hok = |b: usize, a: usize| if hb.contains(&(b, a)) { None } else { d.hcomp(b, a) };
    let vok = |b: usize, a: usize| if vb.contains(&(b, a)) { None } else { d.vcomp(b, a) };
    let mut by_left: FxHashMap<usize, Vec<usize>> = FxHashMap::default();
    let mut by_top: FxHashMap<usize, Vec<usize>> = FxHashMap::default();
    for s in 0..d.square_count() {
        let b = d.square(s);
        by_left.entry(b.left).or_default().push(s);
        by_top.entry(b.top).or_default().push(s);
    }
    let empty = Vec::new();
    // Grid [[a, b], [c, e]]: a top left, b top right, c below a, e below b.
    for a in 0..d.square_count() {
        let sa = d.square(a);
        for &b in by_left.get(&sa.right).unwrap_or(&empty) {
            let Some(ab) = hok(b, a) else { continue };
            let sb = d.square(b);
            for &c in by_top.get(&sa.bottom).unwrap_or(&empty) {
                let Some(ac) = vok(c, a) else { continue };
                let sc = d.square(c);
                for &e in by_top.get(&sb.bottom).unwrap_or(&empty) {
                    if d.square(e).left != sc.right {
                        continue;
                    }
                    let (Some(ce), Some(be)) = (hok(e, c), vok(e, b)) else {
                        continue;
                    };
                    let rows = vok(ce, ab);
                    let cols = hok(be, ac);
                    if let (Some(x), Some(y)) = (rows, cols) {
                        if x != y {
                            report.push(
                                "interchange",
                                vec![a, b, c, e],
                                format!("rows first gives {x}, columns first gives {y}"),
                            );
                        }
                    }
                }
            }
        }
    }
    report
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    Horizontal,
    Vertical,
}

/// Checks one square composition table and returns the blamed entries.
fn scan_table(
    d: &FinDoubleCategory,
    dir: Direction,
    report: &mut ValidationReport,
) -> FxHashSet<(usize, usize)> {
    let (cat, along, across, name) = match dir {
        Direction::Horizontal => (&d.sq_h, &d.hor, &d.sq_v, "horizontal"),
        Direction::Vertical => (&d.sq_v, &d.ver, &d.sq_h, "vertical"),
    };
    // Boundary data of a square in the direction of composition (`ends`) and
    // across it (`sides`).
    let ends = |s: usize| cat.arrow(s);
    let sides = |s: usize| across.arrow(s);
    let axiom = |suffix: &'static str| -> &'static str {
        match (dir, suffix) {
            (Direction::Horizontal, "domain") => "hcomp_domain",
            (Direction::Horizontal, "total") => "hcomp_total",
            (Direction::Horizontal, "unit") => "horizontal_unit",
            (Direction::Horizontal, "boundary") => "hcomp_boundary",
            (Direction::Horizontal, "identity") => "hcomp_identity",
            (Direction::Horizontal, _) => "hcomp_associativity",
            (Direction::Vertical, "domain") => "vcomp_domain",
            (Direction::Vertical, "total") => "vcomp_total",
            (Direction::Vertical, "unit") => "vertical_unit",
            (Direction::Vertical, "boundary") => "vcomp_boundary",
            (Direction::Vertical, "identity") => "vcomp_identity",
            (Direction::Vertical, _) => "vcomp_associativity",
        }
    };
    let n = cat.morphism_count();
    let mut blamed = FxHashSet::default();
    let mut keys: Vec<(usize, usize)> = cat
        .composition_triples()
        .into_iter()
        .map(|(b, a, _)| (b, a))
        .collect();
    keys.sort_unstable();
    for &(b, a) in &keys {
        if ends(a).tgt != ends(b).src {
            report.push(axiom("domain"), vec![b, a], format!("{name} entry ({b}, {a}) is not composable"));
            blamed.insert((b, a));
        }
    }
    let mut by_src: FxHashMap<usize, Vec<usize>> = FxHashMap::default();
    for s in 0..n {
        by_src.entry(ends(s).src).or_default().push(s);
    }
    for a in 0..n {
        for &b in by_src.get(&ends(a).tgt).map(Vec::as_slice).unwrap_or(&[]) {
            if cat.compose(b, a).is_none() {
                report.push(axiom("total"), vec![b, a], format!("missing {name} composite ({b}, {a})"));
                blamed.insert((b, a));
            }
        }
    }
    for s in 0..n {
        let e = ends(s);
        let l = cat.identity(e.src);
        if let Some(v) = cat.compose(s, l) {
            if v != s && blamed.insert((s, l)) {
                report.push(axiom("unit"), vec![s, l], format!("{name} composite of {s} with an identity is {v}"));
            }
        }
        let r = cat.identity(e.tgt);
        if let Some(v) = cat.compose(r, s) {
            if v != s && blamed.insert((r, s)) {
                report.push(axiom("unit"), vec![r, s], format!("{name} composite of an identity with {s} is {v}"));
            }
        }
    }
    for &(b, a) in &keys {
        if blamed.contains(&(b, a)) {
            continue;
        }
        let v = cat.compose(b, a).unwrap();
        let (sa, sb, sv) = (sides(a), sides(b), sides(v));
        let ok = ends(v).src == ends(a).src
            && ends(v).tgt == ends(b).tgt
            && along.compose(sb.src, sa.src) == Some(sv.src)
            && along.compose(sb.tgt, sa.tgt) == Some(sv.tgt);
        if !ok {
            report.push(axiom("boundary"), vec![b, a, v], format!("{name} composite of ({b}, {a}) has the wrong boundary"));
            blamed.insert((b, a));
        }
    }
    // Identity squares along composable cells compose to identity squares.
    let across_id = |x: usize| across.identity(x);
    for f in 0..along.morphism_count() {
        let af = along.arrow(f);
        for y in 0..along.object_count() {
            for &g in along.hom(af.tgt, y) {
                let (i, j) = (across_id(g), across_id(f));
                if blamed.contains(&(i, j)) {
                    continue;
                }
                let (Some(v), Some(gf)) = (cat.compose(i, j), along.compose(g, f)) else {
                    continue;
                };
                if v != across_id(gf) {
                    report.push(axiom("identity"), vec![g, f], format!("{name} composite of identity squares on {g}, {f}"));
                }
            }
        }
    }
    let ok = |b: usize, a: usize| if blamed.contains(&(b, a)) { None } else { cat.compose(b, a) };
    for a in 0..n {
        for &b in by_src.get(&ends(a).tgt).map(Vec::as_slice).unwrap_or(&[]) {
            let Some(ba) = ok(b, a) else { continue };
            for &c in by_src.get(&ends(b).tgt).map(Vec::as_slice).unwrap_or(&[]) {
                let (Some(cb), Some(c_ba)) = (ok(c, b), ok(c, ba)) else { continue };
                let Some(cb_a) = ok(cb, a) else { continue };
                if c_ba != cb_a {
                    report.push(axiom("assoc"), vec![c, b, a], format!("{name} associativity at ({c}, {b}, {a})"));
                }
            }
        }
    }
    blamed
}

/// A strict double functor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleFunctor {
    pub dom: Arc<FinDoubleCategory>,
    pub cod: Arc<FinDoubleCategory>,
    pub ob_map: Vec<usize>,
    pub h_map: Vec<usize>,
    pub v_map: Vec<usize>,
    pub sq_map: Vec<usize>,
}

impl DoubleFunctor {
    pub fn identity(d: Arc<FinDoubleCategory>) -> Self {
        DoubleFunctor {
            ob_map: (0..d.object_count()).collect(),
            h_map: (0..d.horizontal_count()).collect(),
            v_map: (0..d.vertical_count()).collect(),
            sq_map: (0..d.square_count()).collect(),
            dom: d.clone(),
            cod: d,
        }
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &DoubleFunctor) -> Result<DoubleFunctor> {
        if self.cod != after.dom {
            return Err(Error::BoundaryMismatch(
                "double functor codomain differs from next domain".into(),
            ));
        }
        Ok(DoubleFunctor {
            dom: self.dom.clone(),
            cod: after.cod.clone(),
            ob_map: self.ob_map.iter().map(|&x| after.ob_map[x]).collect(),
            h_map: self.h_map.iter().map(|&x| after.h_map[x]).collect(),
            v_map: self.v_map.iter().map(|&x| after.v_map[x]).collect(),
            sq_map: self.sq_map.iter().map(|&x| after.sq_map[x]).collect(),
        })
    }

    pub fn transpose(&self) -> DoubleFunctor {
        DoubleFunctor {
            dom: Arc::new(self.dom.transpose()),
            cod: Arc::new(self.cod.transpose()),
            ob_map: self.ob_map.clone(),
            h_map: self.v_map.clone(),
            v_map: self.h_map.clone(),
            sq_map: self.sq_map.clone(),
        }
    }
}

pub fn validate_double_functor(f: &DoubleFunctor) -> ValidationReport {
    let mut report = ValidationReport::default();
    let (d, e) = (&*f.dom, &*f.cod);
    if f.ob_map.len() != d.object_count()
        || f.h_map.len() != d.horizontal_count()
        || f.v_map.len() != d.vertical_count()
        || f.sq_map.len() != d.square_count()
    {
        report.push("functor_shape", vec![], "map sizes do not match the domain".into());
        return report;
    }
    if f.ob_map.iter().any(|&x| x >= e.object_count())
        || f.h_map.iter().any(|&x| x >= e.horizontal_count())
        || f.v_map.iter().any(|&x| x >= e.vertical_count())
        || f.sq_map.iter().any(|&x| x >= e.square_count())
    {
        report.push("functor_range", vec![], "image id out of range".into());
        return report;
    }
    let parts = [
        ("horizontals", &d.hor, &e.hor, &f.ob_map, &f.h_map),
        ("verticals", &d.ver, &e.ver, &f.ob_map, &f.v_map),
        ("horizontal squares", &d.sq_h, &e.sq_h, &f.v_map, &f.sq_map),
        ("vertical squares", &d.sq_v, &e.sq_v, &f.h_map, &f.sq_map),
    ];
    for (name, dc, ec, obs, mors) in parts {
        let g = fincat::Functor {
            dom: Arc::new(dc.clone()),
            cod: Arc::new(ec.clone()),
            ob_map: obs.clone(),
            mor_map: mors.clone(),
        };
        report.extend_prefixed(name, fincat::validate_functor(&g));
    }
    report
}

/// Componentwise product. Cells of each kind are numbered lexicographically
/// by the pair of factor ids.
pub fn product_dbl(d: &FinDoubleCategory, e: &FinDoubleCategory) -> FinDoubleCategory {
    let hor = fincat::product_cat(&d.hor, &e.hor);
    let ver = fincat::product_cat(&d.ver, &e.ver);
    let (eh, ev, es) = (e.horizontal_count(), e.vertical_count(), e.square_count());
    let mut squares = Vec::new();
    for s in 0..d.square_count() {
        for t in 0..es {
            let (a, b) = (d.square(s), e.square(t));
            squares.push(Square::new(
                a.top * eh + b.top,
                a.bottom * eh + b.bottom,
                a.left * ev + b.left,
                a.right * ev + b.right,
            ));
        }
    }
    let sq_h_identity = (0..d.vertical_count() * ev)
        .map(|u| d.sq_h_id(u / ev) * es + e.sq_h_id(u % ev))
        .collect();
    let sq_v_identity = (0..d.horizontal_count() * eh)
        .map(|f| d.sq_v_id(f / eh) * es + e.sq_v_id(f % eh))
        .collect();
    FinDoubleCategory::from_fn(
        hor,
        ver,
        squares,
        sq_h_identity,
        sq_v_identity,
        |b, a| d.hcomp(b / es, a / es).unwrap() * es + e.hcomp(b % es, a % es).unwrap(),
        |b, a| d.vcomp(b / es, a / es).unwrap() * es + e.vcomp(b % es, a % es).unwrap(),
    )
    .expect("product")
}

/// Labels for every cell of a double category, used to match cells in
/// pullbacks and isomorphism searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellKeys {
    pub objects: Vec<usize>,
    pub horizontals: Vec<usize>,
    pub verticals: Vec<usize>,
    pub squares: Vec<usize>,
}

impl CellKeys {
    pub fn of_functor(f: &DoubleFunctor) -> Self {
        CellKeys {
            objects: f.ob_map.clone(),
            horizontals: f.h_map.clone(),
            verticals: f.v_map.clone(),
            squares: f.sq_map.clone(),
        }
    }
}

/// Result of a pullback: the double category and its two projections as raw
/// cell maps into the two factors.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub apex: Arc<FinDoubleCategory>,
    pub left: CellKeys,
    pub right: CellKeys,
}

/// The strict pullback of two cell labellings: cells are pairs with equal
/// keys. The labellings must come from double functors into a common
/// codomain for the result to be a double category.
pub fn pullback_by_keys(
    a: &FinDoubleCategory,
    ka: &CellKeys,
    b: &FinDoubleCategory,
    kb: &CellKeys,
) -> Result<Pullback> {
    fn pairs(ka: &[usize], kb: &[usize]) -> (Vec<(usize, usize)>, FxHashMap<(usize, usize), usize>) {
        let mut by_key: FxHashMap<usize, Vec<usize>> = FxHashMap::default();
        for (j, &k) in kb.iter().enumerate() {
            by_key.entry(k).or_default().push(j);
        }
        let mut out = Vec::new();
        let mut index = FxHashMap::default();
        for (i, k) in ka.iter().enumerate() {
            for &j in by_key.get(k).map(Vec::as_slice).unwrap_or(&[]) {
                index.insert((i, j), out.len());
                out.push((i, j));
            }
        }
        (out, index)
    }
    let (obs, ob_ix) = pairs(&ka.objects, &kb.objects);
    let (hs, h_ix) = pairs(&ka.horizontals, &kb.horizontals);
    let (vs, v_ix) = pairs(&ka.verticals, &kb.verticals);
    let (ss, s_ix) = pairs(&ka.squares, &kb.squares);
    let look = |ix: &FxHashMap<(usize, usize), usize>, p: (usize, usize)| -> Result<usize> {
        ix.get(&p).copied().ok_or_else(|| {
            Error::BoundaryMismatch("pullback labels are not compatible with the structure".into())
        })
    };
    let mut harrows = Vec::new();
    for &(i, j) in &hs {
        let (x, y) = (a.h(i), b.h(j));
        harrows.push(Arrow::new(look(&ob_ix, (x.src, y.src))?, look(&ob_ix, (x.tgt, y.tgt))?));
    }
    let mut varrows = Vec::new();
    for &(i, j) in &vs {
        let (x, y) = (a.v(i), b.v(j));
        varrows.push(Arrow::new(look(&ob_ix, (x.src, y.src))?, look(&ob_ix, (x.tgt, y.tgt))?));
    }
    let mut squares = Vec::new();
    for &(i, j) in &ss {
        let (x, y) = (a.square(i), b.square(j));
        squares.push(Square::new(
            look(&h_ix, (x.top, y.top))?,
            look(&h_ix, (x.bottom, y.bottom))?,
            look(&v_ix, (x.left, y.left))?,
            look(&v_ix, (x.right, y.right))?,
        ));
    }
    let h_ids = obs
        .iter()
        .map(|&(x, y)| look(&h_ix, (a.h_id(x), b.h_id(y))))
        .collect::<Result<Vec<_>>>()?;
    let v_ids = obs
        .iter()
        .map(|&(x, y)| look(&v_ix, (a.v_id(x), b.v_id(y))))
        .collect::<Result<Vec<_>>>()?;
    let sqh_ids = vs
        .iter()
        .map(|&(x, y)| look(&s_ix, (a.sq_h_id(x), b.sq_h_id(y))))
        .collect::<Result<Vec<_>>>()?;
    let sqv_ids = hs
        .iter()
        .map(|&(x, y)| look(&s_ix, (a.sq_v_id(x), b.sq_v_id(y))))
        .collect::<Result<Vec<_>>>()?;
    let mut failed = false;
    let hor = FinCategory::from_fn(obs.len(), harrows, h_ids, |g, f| {
        let (g1, g2) = hs[g];
        let (f1, f2) = hs[f];
        match (a.h_comp(g1, f1), b.h_comp(g2, f2)) {
            (Some(x), Some(y)) => h_ix.get(&(x, y)).copied().unwrap_or_else(|| {
                failed = true;
                0
            }),
            _ => {
                failed = true;
                0
            }
        }
    })?;
    let ver = FinCategory::from_fn(obs.len(), varrows, v_ids, |g, f| {
        let (g1, g2) = vs[g];
        let (f1, f2) = vs[f];
        match (a.v_comp(g1, f1), b.v_comp(g2, f2)) {
            (Some(x), Some(y)) => v_ix.get(&(x, y)).copied().unwrap_or_else(|| {
                failed = true;
                0
            }),
            _ => {
                failed = true;
                0
            }
        }
    })?;
    let mut failed2 = false;
    let mut failed3 = false;
    let apex = FinDoubleCategory::from_fn(
        hor,
        ver,
        squares,
        sqh_ids,
        sqv_ids,
        |q, p| {
            let (q1, q2) = ss[q];
            let (p1, p2) = ss[p];
            match (a.hcomp(q1, p1), b.hcomp(q2, p2)) {
                (Some(x), Some(y)) => s_ix.get(&(x, y)).copied().unwrap_or_else(|| {
                    failed2 = true;
                    0
                }),
                _ => {
                    failed2 = true;
                    0
                }
            }
        },
        |q, p| {
            let (q1, q2) = ss[q];
            let (p1, p2) = ss[p];
            match (a.vcomp(q1, p1), b.vcomp(q2, p2)) {
                (Some(x), Some(y)) => s_ix.get(&(x, y)).copied().unwrap_or_else(|| {
                    failed3 = true;
                    0
                }),
                _ => {
                    failed3 = true;
                    0
                }
            }
        },
    )?;
    if failed || failed2 || failed3 {
        return Err(Error::BoundaryMismatch(
            "pullback labels are not compatible with composition".into(),
        ));
    }
    let proj = |cells: &[(usize, usize)], first: bool| -> Vec<usize> {
        cells.iter().map(|&(i, j)| if first { i } else { j }).collect()
    };
    Ok(Pullback {
        apex: Arc::new(apex),
        left: CellKeys {
            objects: proj(&obs, true),
            horizontals: proj(&hs, true),
            verticals: proj(&vs, true),
            squares: proj(&ss, true),
        },
        right: CellKeys {
            objects: proj(&obs, false),
            horizontals: proj(&hs, false),
            verticals: proj(&vs, false),
            squares: proj(&ss, false),
        },
    })
}

/// Strict pullback of `F: A -> D <- B: G` with its two projections.
pub fn pullback_dbl(
    f: &DoubleFunctor,
    g: &DoubleFunctor,
) -> Result<(Arc<FinDoubleCategory>, DoubleFunctor, DoubleFunctor)> {
    if f.cod != g.cod {
        return Err(Error::BoundaryMismatch(
            "pullback legs have different codomains".into(),
        ));
    }
    let p = pullback_by_keys(&f.dom, &CellKeys::of_functor(f), &g.dom, &CellKeys::of_functor(g))?;
    let mk = |keys: CellKeys, cod: Arc<FinDoubleCategory>| DoubleFunctor {
        dom: p.apex.clone(),
        cod,
        ob_map: keys.objects,
        h_map: keys.horizontals,
        v_map: keys.verticals,
        sq_map: keys.squares,
    };
    let p1 = mk(p.left.clone(), f.dom.clone());
    let p2 = mk(p.right.clone(), g.dom.clone());
    Ok((p.apex.clone(), p1, p2))
}


#[cfg(test)]
mod tests;
