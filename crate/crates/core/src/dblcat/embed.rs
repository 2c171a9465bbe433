//! Passing between 2-categories and double categories.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::{DoubleFunctor, FinDoubleCategory, Square};
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCategory};
use crate::intern::Interner;
use crate::twocat::{adjoint_equivalences, AdjointEquivalence, FinTwoCategory, TwoFunctor};

fn discrete(n: usize) -> FinCategory {
    FinCategory::new(
        n,
        (0..n).map(|x| Arrow::new(x, x)).collect(),
        (0..n).collect(),
        (0..n).map(|x| (x, x, x)),
    )
    .expect("discrete category")
}

/// The horizontal embedding `H C`: only identity verticals, and square `k`
/// is the 2-cell `k`.
pub fn embed_h(c: &FinTwoCategory) -> FinDoubleCategory {
    let n = c.object_count();
    let squares = (0..c.two_cell_count())
        .map(|k| {
            let a = c.two(k);
            let e = c.one(a.src);
            Square::new(a.src, a.tgt, e.src, e.tgt)
        })
        .collect();
    FinDoubleCategory::new(
        c.one_category().clone(),
        discrete(n),
        squares,
        (0..n).map(|x| c.id2(c.id1(x))).collect(),
        (0..c.one_cell_count()).map(|f| c.id2(f)).collect(),
        c.hcomp_triples(),
        c.vertical_category().composition_triples(),
    )
    .expect("horizontal embedding")
}

/// The vertical embedding `V A` of a category: only identity horizontals
/// and squares.
pub fn embed_v(a: &FinCategory) -> FinDoubleCategory {
    embed_h(&FinTwoCategory::locally_discrete(a)).transpose()
}

pub fn embed_h_functor(f: &TwoFunctor) -> DoubleFunctor {
    DoubleFunctor {
        dom: Arc::new(embed_h(&f.dom)),
        cod: Arc::new(embed_h(&f.cod)),
        ob_map: f.ob_map.clone(),
        h_map: f.one_map.clone(),
        v_map: f.ob_map.clone(),
        sq_map: f.two_map.clone(),
    }
}

/// The squares of `D` with identity verticals on both sides, ascending.
/// These are the 2-cells of [`bold_h`] in order.
pub fn globular_squares(d: &FinDoubleCategory) -> Vec<usize> {
    (0..d.square_count()).filter(|&s| d.is_globular(s)).collect()
}

/// The underlying horizontal 2-category: 2-cells are the squares with
/// identity verticals on both sides.
pub fn bold_h(d: &FinDoubleCategory) -> FinTwoCategory {
    let cells = globular_squares(d);
    let local: FxHashMap<usize, usize> = cells.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let two_cells = cells
        .iter()
        .map(|&s| {
            let b = d.square(s);
            Arrow::new(b.top, b.bottom)
        })
        .collect();
    let id2 = (0..d.horizontal_count()).map(|f| local[&d.sq_v_id(f)]).collect();
    let mut vc = Vec::new();
    let mut hc = Vec::new();
    for (i, &a) in cells.iter().enumerate() {
        for (j, &b) in cells.iter().enumerate() {
            if let Some(v) = d.vcomp(b, a) {
                vc.push((j, i, local[&v]));
            }
            if let Some(h) = d.hcomp(b, a) {
                hc.push((j, i, local[&h]));
            }
        }
    }
    let hor = d.horizontal_category();
    FinTwoCategory::new(
        hor.object_count(),
        hor.morphisms().to_vec(),
        hor.identities().to_vec(),
        hor.composition_triples(),
        two_cells,
        id2,
        vc,
        hc,
    )
    .expect("underlying horizontal 2-category")
}

pub fn bold_h_functor(f: &DoubleFunctor) -> TwoFunctor {
    let cod_cells: FxHashMap<usize, usize> = globular_squares(&f.cod)
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    TwoFunctor {
        dom: Arc::new(bold_h(&f.dom)),
        cod: Arc::new(bold_h(&f.cod)),
        ob_map: f.ob_map.clone(),
        one_map: f.h_map.clone(),
        two_map: globular_squares(&f.dom)
            .into_iter()
            .map(|s| cod_cells[&f.sq_map[s]])
            .collect(),
    }
}

/// A vertical morphism of `H̃ C`: an adjoint equivalence `(f, g, η, ε)`.
pub type HtildeVertical = AdjointEquivalence;

/// `H̃ C` together with the data behind its cells.
#[derive(Debug, Clone)]
pub struct Htilde {
    pub double: FinDoubleCategory,
    /// Vertical id to adjoint equivalence.
    pub verticals: Vec<HtildeVertical>,
    /// Square id to its filling 2-cell.
    pub cells: Vec<usize>,
}

/// Square data of `H̃ C`: top, bottom, left, right and a 2-cell
/// `right.f ∘ top => bottom ∘ left.f`.
type HtSquare = (usize, usize, usize, usize, usize);

/// `H̃ C`: verticals are adjoint equivalences, squares are 2-cells filling
/// the boundary. Identity adjoint equivalences come first (vertical `x` is
/// the identity on object `x`), and squares with identity sides come first
/// in 2-cell order, so that `bold_h(embed_htilde(C))` is literally `C`.
pub fn embed_htilde(c: &FinTwoCategory) -> Result<Htilde> {
    let n = c.object_count();
    let mut verts: Interner<AdjointEquivalence> = Interner::new();
    for x in 0..n {
        let i = c.id1(x);
        verts.intern(AdjointEquivalence {
            f: i,
            g: i,
            unit: c.id2(i),
            counit: c.id2(i),
        });
    }
    for a in 0..n {
        for b in 0..n {
            for e in adjoint_equivalences(c, a, b)? {
                verts.intern(e);
            }
        }
    }
    let vlist: Vec<AdjointEquivalence> = verts.items().to_vec();
    let varrows: Vec<Arrow> = vlist.iter().map(|e| c.one(e.f)).collect();
    let vcomp1 = |e2: &AdjointEquivalence, e1: &AdjointEquivalence| -> Option<AdjointEquivalence> {
        let f = c.comp1(e2.f, e1.f)?;
        let g = c.comp1(e1.g, e2.g)?;
        let inner = c.hcomp(e2.unit, c.id2(e1.f))?;
        let whisk = c.hcomp(c.id2(e1.g), inner)?;
        let unit = c.vcomp(whisk, e1.unit)?;
        let inner = c.hcomp(e1.counit, c.id2(e2.g))?;
        let whisk = c.hcomp(c.id2(e2.f), inner)?;
        let counit = c.vcomp(e2.counit, whisk)?;
        Some(AdjointEquivalence { f, g, unit, counit })
    };
    let mut missing = None;
    let ver = FinCategory::from_fn(n, varrows.clone(), (0..n).collect(), |j, i| {
        let r = vcomp1(&vlist[j], &vlist[i]).and_then(|e| verts.get(&e));
        r.unwrap_or_else(|| {
            missing = Some((j, i));
            0
        })
    })?;
    if let Some((j, i)) = missing {
        return Err(Error::invalid(
            "2-category",
            format!("composite of adjoint equivalences {j}, {i} is not an adjoint equivalence"),
        ));
    }

    let mut sq: Interner<HtSquare> = Interner::new();
    for k in 0..c.two_cell_count() {
        let a = c.two(k);
        let e = c.one(a.src);
        sq.intern((a.src, a.tgt, e.src, e.tgt, k));
    }
    for (u, au) in varrows.iter().enumerate() {
        for (v, av) in varrows.iter().enumerate() {
            for &f in c.one_cells(au.src, av.src) {
                for &f2 in c.one_cells(au.tgt, av.tgt) {
                    let (Some(x), Some(y)) = (c.comp1(vlist[v].f, f), c.comp1(f2, vlist[u].f)) else {
                        continue;
                    };
                    for &k in c.two_cells(x, y) {
                        sq.intern((f, f2, u, v, k));
                    }
                }
            }
        }
    }
    let sqs: Vec<HtSquare> = sq.items().to_vec();
    let squares = sqs.iter().map(|&(t, b, l, r, _)| Square::new(t, b, l, r)).collect();
    let sq_h_identity = (0..vlist.len())
        .map(|u| {
            let a = varrows[u];
            let uf = vlist[u].f;
            sq.get(&(c.id1(a.src), c.id1(a.tgt), u, u, c.id2(uf)))
                .expect("identity square")
        })
        .collect();
    let sq_v_identity = (0..c.one_cell_count())
        .map(|f| {
            let a = c.one(f);
            sq.get(&(f, f, a.src, a.tgt, c.id2(f))).expect("identity square")
        })
        .collect();
    let vcat = &ver;
    let mut bad = false;
    let hcomp = |b: usize, a: usize| -> usize {
        let (f, f2, u, _, x) = sqs[a];
        let (g, g2, _, w, y) = sqs[b];
        let r = (|| {
            let top = c.comp1(g, f)?;
            let bottom = c.comp1(g2, f2)?;
            let s1 = c.hcomp(y, c.id2(f))?;
            let s2 = c.hcomp(c.id2(g2), x)?;
            sq.get(&(top, bottom, u, w, c.vcomp(s2, s1)?))
        })();
        r.unwrap_or_else(|| {
            bad = true;
            0
        })
    };
    let mut bad2 = false;
    let vcomp = |b: usize, a: usize| -> usize {
        let (f, _, u, v, x) = sqs[a];
        let (_, f3, u2, v2, y) = sqs[b];
        let r = (|| {
            let l = vcat.compose(u2, u)?;
            let r = vcat.compose(v2, v)?;
            let s1 = c.hcomp(c.id2(vlist[v2].f), x)?;
            let s2 = c.hcomp(y, c.id2(vlist[u].f))?;
            sq.get(&(f, f3, l, r, c.vcomp(s2, s1)?))
        })();
        r.unwrap_or_else(|| {
            bad2 = true;
            0
        })
    };
    let d = FinDoubleCategory::from_fn(
        c.one_category().clone(),
        ver.clone(),
        squares,
        sq_h_identity,
        sq_v_identity,
        hcomp,
        vcomp,
    )?;
    if bad || bad2 {
        return Err(Error::invalid("2-category", "square composite out of range"));
    }
    Ok(Htilde {
        double: d,
        verticals: vlist,
        cells: sqs.iter().map(|q| q.4).collect(),
    })
}

/// `H̃ F` for a 2-functor `F`.
pub fn embed_htilde_functor(f: &TwoFunctor) -> Result<DoubleFunctor> {
    let Htilde { double: d, verticals: dv, cells: d_cells } = embed_htilde(&f.dom)?;
    let Htilde { double: e, verticals: ev, cells: e_cells } = embed_htilde(&f.cod)?;
    let vix: FxHashMap<AdjointEquivalence, usize> =
        ev.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let v_map = dv
        .iter()
        .map(|x| {
            let y = AdjointEquivalence {
                f: f.one_map[x.f],
                g: f.one_map[x.g],
                unit: f.two_map[x.unit],
                counit: f.two_map[x.counit],
            };
            vix.get(&y).copied().ok_or_else(|| {
                Error::invalid("2-functor", "image of an adjoint equivalence is missing")
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut sq_ix: FxHashMap<(Square, usize), usize> = FxHashMap::default();
    for (s, &k) in e_cells.iter().enumerate() {
        sq_ix.insert((e.square(s), k), s);
    }
    let sq_map = (0..d.square_count())
        .map(|s| {
            let b = d.square(s);
            let img = Square::new(f.one_map[b.top], f.one_map[b.bottom], v_map[b.left], v_map[b.right]);
            sq_ix
                .get(&(img, f.two_map[d_cells[s]]))
                .copied()
                .ok_or_else(|| Error::invalid("2-functor", "image square is missing"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DoubleFunctor {
        ob_map: f.ob_map.clone(),
        h_map: f.one_map.clone(),
        v_map,
        sq_map,
        dom: Arc::new(d),
        cod: Arc::new(e),
    })
}

/// The inclusion `I_C: H C -> H̃ C`. Every cell map is the identity on ids
/// of the source.
pub fn htilde_inclusion(c: &FinTwoCategory) -> Result<DoubleFunctor> {
    let h = embed_h(c);
    let t = embed_htilde(c)?.double;
    Ok(DoubleFunctor {
        ob_map: (0..h.object_count()).collect(),
        h_map: (0..h.horizontal_count()).collect(),
        v_map: (0..h.vertical_count()).collect(),
        sq_map: (0..h.square_count()).collect(),
        dom: Arc::new(h),
        cod: Arc::new(t),
    })
}
