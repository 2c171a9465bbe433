//! Ordinal double categories and the strict hom out of the vertical arrow.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::{embed_h, product_dbl, DoubleFunctor, FinDoubleCategory, Square};
use crate::error::Result;
use crate::fincat::{Arrow, FinCategory};
use crate::intern::Interner;
use crate::twocat::{FinTwoCategory, TwoFunctor};

/// `H[m]`: the poset `0 < 1 < ... < m` as horizontals.
pub fn horizontal_ordinal(m: usize) -> FinDoubleCategory {
    embed_h(&FinTwoCategory::locally_discrete(&FinCategory::ordinal(m)))
}

/// `V[t]`, the transpose of `H[t]`.
pub fn vertical_ordinal(t: usize) -> FinDoubleCategory {
    horizontal_ordinal(t).transpose()
}

/// `[m, t] = H[m] × V[t]`. Object `(i, j)` has id `i * (t + 1) + j`.
pub fn grid(m: usize, t: usize) -> FinDoubleCategory {
    product_dbl(&horizontal_ordinal(m), &vertical_ordinal(t))
}

/// A vertical of `⟦V[1], D⟧`: a commuting square of verticals
/// `b∘u = u'∘a` between the verticals `u` and `u'`.
type HomVertical = (usize, usize, usize, usize);

/// `⟦V[1], D⟧`, the double category of double functors `V[1] -> D`.
///
/// Objects are the verticals of `D` (same ids), horizontals are the squares
/// of `D` (same ids), verticals are tuples `(u, u', a, b)` with
/// `b∘u = u'∘a`, and squares are tuples `(A, B, S, T)` of squares of `D`
/// with `T·A = B·S`, where `S` joins the tops and `T` the bottoms.
pub fn strict_hom_shape(d: &FinDoubleCategory) -> Result<FinDoubleCategory> {
    let nv = d.vertical_count();
    let mut verts: Interner<HomVertical> = Interner::new();
    for u in 0..nv {
        let a = d.v(u);
        verts.intern((u, u, d.v_id(a.src), d.v_id(a.tgt)));
    }
    for u in 0..nv {
        let au = d.v(u);
        for u2 in 0..nv {
            let au2 = d.v(u2);
            for &a in d.verticals(au.src, au2.src) {
                for &b in d.verticals(au.tgt, au2.tgt) {
                    if d.v_comp(b, u) == d.v_comp(u2, a) {
                        verts.intern((u, u2, a, b));
                    }
                }
            }
        }
    }
    let vlist = verts.items().to_vec();
    let ver = FinCategory::from_fn(
        nv,
        vlist.iter().map(|&(u, u2, _, _)| Arrow::new(u, u2)).collect(),
        (0..nv).collect(),
        |j, i| {
            let (u, _, a, b) = vlist[i];
            let (_, u3, a2, b2) = vlist[j];
            verts
                .get(&(u, u3, d.v_comp(a2, a).unwrap(), d.v_comp(b2, b).unwrap()))
                .expect("closed under composition")
        },
    )?;

    let mut sq: Interner<(usize, usize, usize, usize)> = Interner::new();
    let mut boundaries = Vec::new();
    let mut push = |key: (usize, usize, usize, usize), b: Square, sq: &mut Interner<_>| {
        let before = sq.len();
        let id = sq.intern(key);
        if id == before {
            boundaries.push(b);
        }
        id
    };
    let mut by_sides: FxHashMap<(usize, usize), Vec<usize>> = FxHashMap::default();
    for s in 0..d.square_count() {
        let b = d.square(s);
        by_sides.entry((b.left, b.right)).or_default().push(s);
    }
    let empty = Vec::new();
    for (l, &(u, u2, a, b)) in vlist.iter().enumerate() {
        for (r, &(v, v2, c, e)) in vlist.iter().enumerate() {
            for &sa in by_sides.get(&(u, v)).unwrap_or(&empty) {
                let ba = d.square(sa);
                for &sb in by_sides.get(&(u2, v2)).unwrap_or(&empty) {
                    let bb = d.square(sb);
                    for &s in d.squares_with(Square::new(ba.top, bb.top, a, c)) {
                        for &t in d.squares_with(Square::new(ba.bottom, bb.bottom, b, e)) {
                            if d.vcomp(t, sa) == d.vcomp(sb, s) {
                                push((sa, sb, s, t), Square::new(sa, sb, l, r), &mut sq);
                            }
                        }
                    }
                }
            }
        }
    }
    let slist = sq.items().to_vec();
    let sq_h_identity = (0..vlist.len())
        .map(|i| {
            let (u, u2, a, b) = vlist[i];
            let key = (d.sq_h_id(u), d.sq_h_id(u2), d.sq_h_id(a), d.sq_h_id(b));
            sq.get(&key).expect("identity square")
        })
        .collect();
    let sq_v_identity = (0..d.square_count())
        .map(|s| {
            let b = d.square(s);
            sq.get(&(s, s, d.sq_v_id(b.top), d.sq_v_id(b.bottom)))
                .expect("identity square")
        })
        .collect();
    let hcomp = |q: usize, p: usize| {
        let (a1, b1, s1, t1) = slist[p];
        let (a2, b2, s2, t2) = slist[q];
        let key = (
            d.hcomp(a2, a1).unwrap(),
            d.hcomp(b2, b1).unwrap(),
            d.hcomp(s2, s1).unwrap(),
            d.hcomp(t2, t1).unwrap(),
        );
        sq.get(&key).expect("closed under composition")
    };
    let vcomp = |q: usize, p: usize| {
        let (a1, _, s1, t1) = slist[p];
        let (_, b2, s2, t2) = slist[q];
        let key = (a1, b2, d.vcomp(s2, s1).unwrap(), d.vcomp(t2, t1).unwrap());
        sq.get(&key).expect("closed under composition")
    };
    FinDoubleCategory::from_fn(
        d.square_h_category().clone(),
        ver,
        boundaries,
        sq_h_identity,
        sq_v_identity,
        hcomp,
        vcomp,
    )
}

/// The 2-cells `(A, B, S, T)` of `bold_h(⟦V[1], D⟧)` in construction order.
fn hom_globular_cells(d: &FinDoubleCategory) -> Vec<(usize, usize, usize, usize)> {
    let mut globular: FxHashMap<usize, Vec<usize>> = FxHashMap::default();
    for s in 0..d.square_count() {
        if d.is_globular(s) {
            globular.entry(d.square(s).top).or_default().push(s);
        }
    }
    let mut by_sides: FxHashMap<(usize, usize), Vec<usize>> = FxHashMap::default();
    for s in 0..d.square_count() {
        let b = d.square(s);
        by_sides.entry((b.left, b.right)).or_default().push(s);
    }
    let empty = Vec::new();
    let mut out = Vec::new();
    for sa in 0..d.square_count() {
        let ba = d.square(sa);
        for &sb in &by_sides[&(ba.left, ba.right)] {
            let bb = d.square(sb);
            for &s in globular.get(&ba.top).unwrap_or(&empty) {
                if d.square(s).bottom != bb.top {
                    continue;
                }
                for &t in globular.get(&ba.bottom).unwrap_or(&empty) {
                    if d.square(t).bottom != bb.bottom {
                        continue;
                    }
                    if d.vcomp(t, sa) == d.vcomp(sb, s) {
                        out.push((sa, sb, s, t));
                    }
                }
            }
        }
    }
    out
}

/// `bold_h(⟦V[1], D⟧)`, built directly: objects are verticals, 1-cells
/// squares, 2-cells `(A, B, S, T)` with `S`, `T` globular.
pub fn strict_hom_shape_bold_h(d: &FinDoubleCategory) -> FinTwoCategory {
    let cells = hom_globular_cells(d);
    let index: FxHashMap<(usize, usize, usize, usize), usize> =
        cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let sqh = d.square_h_category();
    let id2 = (0..d.square_count())
        .map(|s| {
            let b = d.square(s);
            index[&(s, s, d.sq_v_id(b.top), d.sq_v_id(b.bottom))]
        })
        .collect();
    let cells2 = cells.clone();
    FinTwoCategory::from_fn(
        sqh.object_count(),
        sqh.morphisms().to_vec(),
        sqh.identities().to_vec(),
        |g, f| sqh.compose(g, f).expect("composable"),
        cells.iter().map(|&(a, b, _, _)| Arrow::new(a, b)).collect(),
        id2,
        |q, p| {
            let (a, _, s1, t1) = cells[p];
            let (_, b, s2, t2) = cells[q];
            index[&(a, b, d.vcomp(s2, s1).unwrap(), d.vcomp(t2, t1).unwrap())]
        },
        |q, p| {
            let (a1, b1, s1, t1) = cells2[p];
            let (a2, b2, s2, t2) = cells2[q];
            index[&(
                d.hcomp(a2, a1).unwrap(),
                d.hcomp(b2, b1).unwrap(),
                d.hcomp(s2, s1).unwrap(),
                d.hcomp(t2, t1).unwrap(),
            )]
        },
    )
    .expect("underlying 2-category of the arrow hom")
}

/// `bold_h(⟦V[1], F⟧)` for a double functor `F`.
pub fn strict_hom_shape_functor_bold_h(f: &DoubleFunctor) -> TwoFunctor {
    let (d, e) = (&*f.dom, &*f.cod);
    let ecells: FxHashMap<(usize, usize, usize, usize), usize> = hom_globular_cells(e)
        .into_iter()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let m = &f.sq_map;
    let two_map = hom_globular_cells(d)
        .into_iter()
        .map(|(a, b, s, t)| ecells[&(m[a], m[b], m[s], m[t])])
        .collect();
    TwoFunctor {
        dom: Arc::new(strict_hom_shape_bold_h(d)),
        cod: Arc::new(strict_hom_shape_bold_h(e)),
        ob_map: f.v_map.clone(),
        one_map: f.sq_map.clone(),
        two_map,
    }
}
