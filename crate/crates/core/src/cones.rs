//! Double categories of pseudo-cones and slices, and the two homotopy
//! 2-limit criteria built on them.
//!
//! The general construction is the strict pullback of
//! `(ev0, ev1): ⟦H[1], ⟦J, D⟧^ps⟧^ps -> ⟦J, D⟧^ps × ⟦J, D⟧^ps` along
//! `Δ × K`. Only the part of `⟦J, D⟧^ps` the pullback can reach is built:
//! the constant functors, `K`, the transformations between them and the
//! modifications between those.

use std::hash::Hash;
use std::sync::Arc;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::budget::Budget;
use crate::dblcat::{
    double_biequivalence_failure, embed_h_functor, embed_htilde, embed_htilde_functor,
    horizontal_ordinal, horizontal_transformations, htilde_inclusion, identity_horizontal,
    identity_vertical, pseudo_hom_restricted, pseudo_hom_sub, pullback_by_keys,
    validate_double_category, validate_double_functor, CellKeys, DoubleBiequivalenceFailure,
    DoubleFunctor, FinDoubleCategory, FunctorData, HTrans, Restriction, Square, Transformation,
};
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCategory};
use crate::intern::Interner;
use crate::twocat::{
    self, is_equivalence_1cell, pseudo_nat_set, validate_pseudo_cone, validate_two_functor,
    PseudoCone, TwoFunctor,
};

/// An object of a cone double category: a summit `c` and a horizontal
/// transformation `κ: Δc => K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConeObject {
    pub summit: usize,
    pub kappa: HTrans,
}

/// A double category of cones together with the data behind its cells.
///
/// A horizontal `(f, φ)` is recorded by the components of `φ`, one square
/// of the target per object of the shape; likewise a vertical `(u, μ)`.
/// The cells `f`, `u` and the square of a square are read off the
/// projection.
#[derive(Debug, Clone)]
pub struct ConeDouble {
    pub double: Arc<FinDoubleCategory>,
    /// `(c, κ) ↦ c` and so on, into the target of the diagram.
    pub projection: DoubleFunctor,
    pub objects: Vec<ConeObject>,
    pub horizontals: Vec<Vec<usize>>,
    pub verticals: Vec<Vec<usize>>,
}

impl ConeDouble {
    pub fn find_object(&self, o: &ConeObject) -> Option<usize> {
        self.objects.iter().position(|x| x == o)
    }
}

fn functor_data(k: &DoubleFunctor) -> FunctorData {
    FunctorData {
        ob: k.ob_map.clone(),
        h: k.h_map.clone(),
        v: k.v_map.clone(),
        sq: k.sq_map.clone(),
    }
}

fn check_functor(k: &DoubleFunctor) -> Result<()> {
    let report = validate_double_functor(k);
    if report.is_empty() {
        Ok(())
    } else {
        Err(Error::invalid("diagram", report.to_string()))
    }
}

fn internal(what: &str) -> Error {
    Error::invalid("cone construction", format!("{what} is missing"))
}

/// The double category of pseudo-cones over a double functor `K: J -> D`.
pub fn cone_general(k: &DoubleFunctor, budget: &Budget) -> Result<ConeDouble> {
    check_functor(k)?;
    let (j, d) = (&*k.dom, &*k.cod);
    let (no, nv, nh) = (j.object_count(), j.vertical_count(), j.horizontal_count());
    let kd = functor_data(k);

    let mut obs: Interner<FunctorData> = Interner::new();
    let delta_ob: Vec<usize> = (0..d.object_count())
        .map(|c| obs.intern(FunctorData::constant(j, d, c)))
        .collect();
    let n_delta = obs.len();
    let kx = obs.intern(kd.clone());
    let k_constant = kx < n_delta;
    let functors = obs.items().to_vec();

    let delta_h = |f: usize| Transformation {
        obj: vec![f; no],
        ver: vec![d.sq_v_id(f); nv],
        hor: vec![d.sq_v_id(f); nh],
    };
    let delta_v = |u: usize| Transformation {
        obj: vec![u; no],
        ver: vec![d.sq_h_id(u); nv],
        hor: vec![d.sq_h_id(u); nh],
    };
    let mut hs = Vec::new();
    if k_constant {
        // Composites `Δg ∘ κ` leave the constant part, so every transformation
        // between constant functors is needed for closure.
        for a in 0..n_delta {
            for b in 0..n_delta {
                for t in horizontal_transformations(j, d, &functors[a], &functors[b], budget)? {
                    hs.push((a, b, t));
                }
            }
        }
    } else {
        for f in 0..d.horizontal_count() {
            let a = d.h(f);
            hs.push((delta_ob[a.src], delta_ob[a.tgt], delta_h(f)));
        }
        for (a, fa) in functors.iter().enumerate().take(n_delta) {
            for t in horizontal_transformations(j, d, fa, &kd, budget)? {
                hs.push((a, kx, t));
            }
        }
        hs.push((kx, kx, identity_horizontal(j, d, &kd)));
    }
    let mut vs = Vec::new();
    for u in 0..d.vertical_count() {
        let a = d.v(u);
        vs.push((delta_ob[a.src], delta_ob[a.tgt], delta_v(u)));
    }
    if !k_constant {
        vs.push((kx, kx, identity_vertical(j, d, &kd)));
    }
    let x = pseudo_hom_sub(j, d, functors, hs, vs, budget)?;
    let xd = &*x.double;

    let h_index: FxHashMap<(usize, usize, &HTrans), usize> = x
        .horizontals
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let a = xd.h(i);
            ((a.src, a.tgt, t), i)
        })
        .collect();
    let v_index: FxHashMap<(usize, usize, &HTrans), usize> = x
        .verticals
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let a = xd.v(i);
            ((a.src, a.tgt, t), i)
        })
        .collect();
    let dh = (0..d.horizontal_count())
        .map(|f| {
            let a = d.h(f);
            h_index
                .get(&(delta_ob[a.src], delta_ob[a.tgt], &delta_h(f)))
                .copied()
                .ok_or_else(|| internal("constant horizontal transformation"))
        })
        .collect::<Result<Vec<_>>>()?;
    let dv = (0..d.vertical_count())
        .map(|u| {
            let a = d.v(u);
            v_index
                .get(&(delta_ob[a.src], delta_ob[a.tgt], &delta_v(u)))
                .copied()
                .ok_or_else(|| internal("constant vertical transformation"))
        })
        .collect::<Result<Vec<_>>>()?;
    let ds = (0..d.square_count())
        .map(|s| {
            let b = d.square(s);
            let boundary = Square::new(dh[b.top], dh[b.bottom], dv[b.left], dv[b.right]);
            let comps = vec![s; no];
            xd.squares_with(boundary)
                .iter()
                .copied()
                .find(|&m| x.squares[m] == comps)
                .ok_or_else(|| internal("constant modification"))
        })
        .collect::<Result<Vec<_>>>()?;
    let d_keys = CellKeys {
        objects: delta_ob.clone(),
        horizontals: dh.clone(),
        verticals: dv.clone(),
        squares: ds.clone(),
    };

    let set = |v: &[usize]| v.iter().copied().collect::<FxHashSet<usize>>();
    let mut delta_objects = set(&delta_ob).into_iter().collect::<Vec<_>>();
    delta_objects.sort_unstable();
    let k_h = xd.h_id(kx);
    let k_v = xd.v_id(kx);
    let restriction = Restriction {
        objects: Some(vec![delta_objects, vec![kx]]),
        horizontals: Some(vec![set(&dh), set(&[k_h])]),
        verticals: Some(vec![set(&dv), set(&[k_v])]),
        squares: Some(vec![set(&ds), set(&[xd.sq_v_id(k_h)])]),
    };
    let h1 = horizontal_ordinal(1);
    let q = pseudo_hom_restricted(&h1, xd, &restriction, budget)?;
    let q_keys = CellKeys {
        objects: q.functors.iter().map(|f| f.ob[0]).collect(),
        horizontals: q.horizontals.iter().map(|t| t.obj[0]).collect(),
        verticals: q.verticals.iter().map(|t| t.obj[0]).collect(),
        squares: q.squares.iter().map(|c| c[0]).collect(),
    };
    let pb = pullback_by_keys(d, &d_keys, &q.double, &q_keys)?;
    let arrow = h1.horizontals(0, 1)[0];

    let objects = pb
        .left
        .objects
        .iter()
        .zip(&pb.right.objects)
        .map(|(&c, &r)| ConeObject {
            summit: c,
            kappa: x.horizontals[q.functors[r].h[arrow]].clone(),
        })
        .collect();
    let horizontals = pb
        .right
        .horizontals
        .iter()
        .map(|&r| x.squares[q.horizontals[r].hor[arrow]].clone())
        .collect();
    let verticals = pb
        .right
        .verticals
        .iter()
        .map(|&r| x.squares[q.verticals[r].hor[arrow]].clone())
        .collect();
    let projection = DoubleFunctor {
        dom: pb.apex.clone(),
        cod: k.cod.clone(),
        ob_map: pb.left.objects,
        h_map: pb.left.horizontals,
        v_map: pb.left.verticals,
        sq_map: pb.left.squares,
    };
    Ok(ConeDouble {
        double: pb.apex,
        projection,
        objects,
        horizontals,
        verticals,
    })
}

/// Pseudo-cones over `H̃ K: H̃ J -> H̃ C`.
pub fn cone_htilde(k: &TwoFunctor, budget: &Budget) -> Result<ConeDouble> {
    check_two_functor(k)?;
    cone_general(&embed_htilde_functor(k)?, budget)
}

/// Pseudo-cones over `H K: H J -> H C`.
pub fn cone_h(k: &TwoFunctor, budget: &Budget) -> Result<ConeDouble> {
    check_two_functor(k)?;
    cone_general(&embed_h_functor(k), budget)
}

fn check_two_functor(k: &TwoFunctor) -> Result<()> {
    let report = validate_two_functor(k);
    if report.is_empty() {
        Ok(())
    } else {
        Err(Error::invalid("diagram", report.to_string()))
    }
}

/// An object of a slice: `κ: source -> d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SliceObject {
    pub source: usize,
    pub kappa: usize,
}

/// A slice double category `D ⫽ d` with the data behind its cells.
///
/// Horizontal `(f, φ)` records the square `φ`, vertical `(u, μ)` the
/// square `μ`.
#[derive(Debug, Clone)]
pub struct Slice {
    pub double: Arc<FinDoubleCategory>,
    pub projection: DoubleFunctor,
    pub objects: Vec<SliceObject>,
    pub horizontals: Vec<usize>,
    pub verticals: Vec<usize>,
}

/// `d` as a diagram `H[0] -> D`.
pub fn point_diagram(d: &Arc<FinDoubleCategory>, x: usize) -> Result<DoubleFunctor> {
    d.check_object(x)?;
    let v = d.v_id(x);
    Ok(DoubleFunctor {
        dom: Arc::new(horizontal_ordinal(0)),
        cod: d.clone(),
        ob_map: vec![x],
        h_map: vec![d.h_id(x)],
        v_map: vec![v],
        sq_map: vec![d.sq_h_id(v)],
    })
}

/// `D ⫽ d` through the pullback construction, as the cone double category
/// over the point `d`.
pub fn slice_general(d: &Arc<FinDoubleCategory>, x: usize, budget: &Budget) -> Result<Slice> {
    let c = cone_general(&point_diagram(d, x)?, budget)?;
    Ok(Slice {
        objects: c
            .objects
            .iter()
            .map(|o| SliceObject {
                source: o.summit,
                kappa: o.kappa.obj[0],
            })
            .collect(),
        horizontals: c.horizontals.iter().map(|v| v[0]).collect(),
        verticals: c.verticals.iter().map(|v| v[0]).collect(),
        double: c.double,
        projection: c.projection,
    })
}

/// The projection `D ⫽ d -> D`.
pub fn slice_projection(d: &Arc<FinDoubleCategory>, x: usize, budget: &Budget) -> Result<DoubleFunctor> {
    Ok(slice_general(d, x, budget)?.projection)
}

/// Horizontal or vertical cell of an explicit construction: source and
/// target object ids, the underlying cell of the base, and extra data.
type Cell<T> = (usize, usize, usize, T);

/// Everything needed to assemble a double category whose cells sit over
/// cells of a base double category.
struct Explicit<'a, T> {
    base: &'a FinDoubleCategory,
    summits: Vec<usize>,
    horizontals: Vec<Cell<T>>,
    verticals: Vec<Cell<T>>,
    h_identity: Vec<T>,
    v_identity: Vec<T>,
}

struct Assembled<T> {
    double: FinDoubleCategory,
    projection: (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>),
    horizontals: Vec<T>,
    verticals: Vec<T>,
}

fn assemble_explicit<T: Clone + Eq + Hash>(
    parts: Explicit<'_, T>,
    h_compose: impl Fn(&Cell<T>, &Cell<T>) -> Option<T>,
    v_compose: impl Fn(&Cell<T>, &Cell<T>) -> Option<T>,
    mut square_ok: impl FnMut(&Cell<T>, &Cell<T>, &Cell<T>, &Cell<T>, usize) -> bool,
    budget: &Budget,
) -> Result<Assembled<T>> {
    let base = parts.base;
    let n = parts.summits.len();
    let mut hix: Interner<Cell<T>> = Interner::new();
    for h in parts.horizontals {
        hix.intern(h);
    }
    let mut vix: Interner<Cell<T>> = Interner::new();
    for v in parts.verticals {
        vix.intern(v);
    }
    let missing = || internal("identity cell");
    let h_ids = (0..n)
        .map(|i| {
            hix.get(&(i, i, base.h_id(parts.summits[i]), parts.h_identity[i].clone()))
                .ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    let v_ids = (0..n)
        .map(|i| {
            vix.get(&(i, i, base.v_id(parts.summits[i]), parts.v_identity[i].clone()))
                .ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    let hl = hix.items().to_vec();
    let vl = vix.items().to_vec();
    let mut bad = false;
    let hor = FinCategory::from_fn(
        n,
        hl.iter().map(|h| Arrow::new(h.0, h.1)).collect(),
        h_ids,
        |g, f| {
            let (a, b) = (&hl[f], &hl[g]);
            base.h_comp(b.2, a.2)
                .zip(h_compose(b, a))
                .and_then(|(c, t)| hix.get(&(a.0, b.1, c, t)))
                .unwrap_or_else(|| {
                    bad = true;
                    0
                })
        },
    )?;
    let ver = FinCategory::from_fn(
        n,
        vl.iter().map(|v| Arrow::new(v.0, v.1)).collect(),
        v_ids,
        |g, f| {
            let (a, b) = (&vl[f], &vl[g]);
            base.v_comp(b.2, a.2)
                .zip(v_compose(b, a))
                .and_then(|(c, t)| vix.get(&(a.0, b.1, c, t)))
                .unwrap_or_else(|| {
                    bad = true;
                    0
                })
        },
    )?;
    if bad {
        return Err(Error::invalid("cone construction", "cells are not closed under composition"));
    }

    let mut h_by_ends: FxHashMap<(usize, usize), Vec<usize>> = FxHashMap::default();
    for (i, h) in hl.iter().enumerate() {
        h_by_ends.entry((h.0, h.1)).or_default().push(i);
    }
    let empty = Vec::new();
    let mut sq: Interner<(Square, usize)> = Interner::new();
    for (li, l) in vl.iter().enumerate() {
        for (ri, r) in vl.iter().enumerate() {
            for &t in h_by_ends.get(&(l.0, r.0)).unwrap_or(&empty) {
                for &b in h_by_ends.get(&(l.1, r.1)).unwrap_or(&empty) {
                    let boundary = Square::new(hl[t].2, hl[b].2, l.2, r.2);
                    for &s in base.squares_with(boundary) {
                        budget.tick()?;
                        if square_ok(&hl[t], &hl[b], l, r, s) {
                            sq.intern((Square::new(t, b, li, ri), s));
                        }
                    }
                }
            }
        }
    }
    let sl = sq.items().to_vec();
    let sq_h_identity = (0..vl.len())
        .map(|v| {
            let a = ver.arrow(v);
            sq.get(&(
                Square::new(hor.identity(a.src), hor.identity(a.tgt), v, v),
                base.sq_h_id(vl[v].2),
            ))
            .ok_or_else(|| internal("identity square"))
        })
        .collect::<Result<Vec<_>>>()?;
    let sq_v_identity = (0..hl.len())
        .map(|h| {
            let a = hor.arrow(h);
            sq.get(&(
                Square::new(h, h, ver.identity(a.src), ver.identity(a.tgt)),
                base.sq_v_id(hl[h].2),
            ))
            .ok_or_else(|| internal("identity square"))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut bad_h = false;
    let hcomp = |y: usize, x: usize| {
        let ((bx, sx), (by, sy)) = (sl[x], sl[y]);
        (|| {
            let top = hor.compose(by.top, bx.top)?;
            let bottom = hor.compose(by.bottom, bx.bottom)?;
            sq.get(&(Square::new(top, bottom, bx.left, by.right), base.hcomp(sy, sx)?))
        })()
        .unwrap_or_else(|| {
            bad_h = true;
            0
        })
    };
    let mut bad_v = false;
    let vcomp = |y: usize, x: usize| {
        let ((bx, sx), (by, sy)) = (sl[x], sl[y]);
        (|| {
            let left = ver.compose(by.left, bx.left)?;
            let right = ver.compose(by.right, bx.right)?;
            sq.get(&(Square::new(bx.top, by.bottom, left, right), base.vcomp(sy, sx)?))
        })()
        .unwrap_or_else(|| {
            bad_v = true;
            0
        })
    };
    let double = FinDoubleCategory::from_fn(
        hor.clone(),
        ver.clone(),
        sl.iter().map(|x| x.0).collect(),
        sq_h_identity,
        sq_v_identity,
        hcomp,
        vcomp,
    )?;
    if bad_h || bad_v {
        return Err(Error::invalid("cone construction", "squares are not closed under composition"));
    }
    Ok(Assembled {
        double,
        projection: (
            parts.summits,
            hl.iter().map(|h| h.2).collect(),
            vl.iter().map(|v| v.2).collect(),
            sl.iter().map(|x| x.1).collect(),
        ),
        horizontals: hl.into_iter().map(|h| h.3).collect(),
        verticals: vl.into_iter().map(|v| v.3).collect(),
    })
}

fn projection_of(
    dom: &Arc<FinDoubleCategory>,
    cod: &Arc<FinDoubleCategory>,
    maps: (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>),
) -> DoubleFunctor {
    DoubleFunctor {
        dom: dom.clone(),
        cod: cod.clone(),
        ob_map: maps.0,
        h_map: maps.1,
        v_map: maps.2,
        sq_map: maps.3,
    }
}

/// `D ⫽ d` cell by cell: objects `κ: c -> d`, horizontals `(f, φ)` with
/// `φ: κ => λ∘f` vertically invertible, verticals `(u, μ)` with `μ` a square
/// from `κ` to `κ'` over `u` and `e_d`, and squares `α` with
/// `μ` then `φ'` equal to `φ` then `α | ν`.
pub fn slice_explicit(d: &Arc<FinDoubleCategory>, x: usize, budget: &Budget) -> Result<Slice> {
    let report = validate_double_category(d);
    if !report.is_empty() {
        return Err(Error::invalid("double category", report.to_string()));
    }
    d.check_object(x)?;
    let ex = d.v_id(x);
    let objects: Vec<SliceObject> = (0..d.object_count())
        .flat_map(|c| {
            d.horizontals(c, x)
                .iter()
                .map(move |&kappa| SliceObject { source: c, kappa })
        })
        .collect();
    let mut horizontals = Vec::new();
    let mut verticals = Vec::new();
    for (i, a) in objects.iter().enumerate() {
        for (j, b) in objects.iter().enumerate() {
            for &f in d.horizontals(a.source, b.source) {
                let Some(bottom) = d.h_comp(b.kappa, f) else { continue };
                for &phi in d.squares_with(Square::new(a.kappa, bottom, d.v_id(a.source), ex)) {
                    budget.tick()?;
                    if d.v_inverse(phi).is_some() {
                        horizontals.push((i, j, f, phi));
                    }
                }
            }
            for &u in d.verticals(a.source, b.source) {
                for &mu in d.squares_with(Square::new(a.kappa, b.kappa, u, ex)) {
                    budget.tick()?;
                    verticals.push((i, j, u, mu));
                }
            }
        }
    }
    let identity: Vec<usize> = objects.iter().map(|o| d.sq_v_id(o.kappa)).collect();
    let parts = Explicit {
        base: d,
        summits: objects.iter().map(|o| o.source).collect(),
        horizontals,
        verticals,
        h_identity: identity.clone(),
        v_identity: identity,
    };
    let a = assemble_explicit(
        parts,
        |g, f| d.hcomp(g.3, d.sq_v_id(f.2)).and_then(|y| d.vcomp(y, f.3)),
        |v, u| d.vcomp(v.3, u.3),
        |top, bottom, left, right, s| {
            let lhs = d.vcomp(bottom.3, left.3);
            let rhs = d.hcomp(right.3, s).and_then(|y| d.vcomp(y, top.3));
            lhs.is_some() && lhs == rhs
        },
        budget,
    )?;
    let double = Arc::new(a.double);
    Ok(Slice {
        projection: projection_of(&double, d, a.projection),
        double,
        objects,
        horizontals: a.horizontals,
        verticals: a.verticals,
    })
}

/// Pseudo-cones over `H̃ K` built directly from pseudo-cones, modifications
/// and 2-cells of `C`: objects `(c, κ)`, horizontals `(f, φ)` with `φ` an
/// invertible modification `κ => λ∘Δf`, verticals `(u, μ)` with `u` an
/// adjoint equivalence and `μ: κ => κ'∘Δu`, and squares `α: vf => f'u`
/// compatible with the modifications. Refuses shapes with a nonidentity
/// equivalence 1-cell.
#[derive(Debug, Clone)]
pub struct ExplicitCone {
    pub double: Arc<FinDoubleCategory>,
    /// Into `H̃ C`.
    pub projection: DoubleFunctor,
    pub objects: Vec<PseudoCone>,
    /// Components of `φ`, one 2-cell of `C` per object of the shape.
    pub horizontals: Vec<Vec<usize>>,
    pub verticals: Vec<Vec<usize>>,
}

pub fn cone_explicit(k: &TwoFunctor, budget: &Budget) -> Result<ExplicitCone> {
    check_two_functor(k)?;
    let (j, c) = (&*k.dom, &*k.cod);
    for m in 0..j.one_cell_count() {
        let a = j.one(m);
        if j.id1(a.src) != m && is_equivalence_1cell(j, m)?.is_some() {
            return Err(Error::Precondition(format!(
                "shape 1-cell {m} is a nonidentity equivalence"
            )));
        }
    }
    let ht = embed_htilde(c)?;
    let hd = Arc::new(ht.double);
    let no = j.object_count();

    let mut objects = Vec::new();
    let mut deltas = Vec::new();
    for x in 0..c.object_count() {
        let delta = TwoFunctor::constant(k.dom.clone(), k.cod.clone(), x);
        for t in pseudo_nat_set(&delta, k, budget)? {
            objects.push(PseudoCone {
                summit: x,
                transformation: t,
            });
        }
        deltas.push(delta);
    }
    let whisker = |cone: &PseudoCone, e: usize| cone.precompose(c, e);
    let mut horizontals = Vec::new();
    let mut verticals = Vec::new();
    for (i, a) in objects.iter().enumerate() {
        let delta = &deltas[a.summit];
        for (jx, b) in objects.iter().enumerate() {
            for &f in c.one_cells(a.summit, b.summit) {
                let target = whisker(b, f)?;
                for comps in twocat::modifications(delta, k, &a.transformation, &target.transformation, budget)? {
                    if comps.iter().all(|&x| c.is_invertible2(x)) {
                        horizontals.push((i, jx, f, comps));
                    }
                }
            }
            for &u in hd.verticals(a.summit, b.summit) {
                let target = whisker(b, ht.verticals[u].f)?;
                for comps in twocat::modifications(delta, k, &a.transformation, &target.transformation, budget)? {
                    verticals.push((i, jx, u, comps));
                }
            }
        }
    }
    let identity: Vec<Vec<usize>> = objects
        .iter()
        .map(|o| o.transformation.ones.iter().map(|&l| c.id2(l)).collect())
        .collect();
    let vf = |u: usize| ht.verticals[u].f;
    let cells = &ht.cells;
    let obs = &objects;
    let parts = Explicit {
        base: &hd,
        summits: objects.iter().map(|o| o.summit).collect(),
        horizontals,
        verticals,
        h_identity: identity.clone(),
        v_identity: identity,
    };
    let a = assemble_explicit(
        parts,
        |g, f| {
            (0..no)
                .map(|x| c.hcomp(g.3[x], c.id2(f.2)).and_then(|y| c.vcomp(y, f.3[x])))
                .collect()
        },
        |v, u| {
            (0..no)
                .map(|x| c.hcomp(v.3[x], c.id2(vf(u.2))).and_then(|y| c.vcomp(y, u.3[x])))
                .collect()
        },
        |top, bottom, left, right, s| {
            let alpha = cells[s];
            let lam2 = &obs[bottom.1].transformation;
            (0..no).all(|x| {
                let lhs = c
                    .hcomp(bottom.3[x], c.id2(vf(left.2)))
                    .and_then(|y| c.vcomp(y, left.3[x]));
                let rhs = c
                    .hcomp(right.3[x], c.id2(top.2))
                    .and_then(|y| c.vcomp(y, top.3[x]))
                    .zip(c.hcomp(c.id2(lam2.ones[x]), alpha))
                    .and_then(|(y, z)| c.vcomp(z, y));
                lhs.is_some() && lhs == rhs
            })
        },
        budget,
    )?;
    let double = Arc::new(a.double);
    Ok(ExplicitCone {
        projection: projection_of(&double, &hd, a.projection),
        double,
        objects,
        horizontals: a.horizontals,
        verticals: a.verticals,
    })
}

fn check_cone(k: &TwoFunctor, cone: &PseudoCone) -> Result<()> {
    check_two_functor(k)?;
    let report = validate_pseudo_cone(k, cone);
    if report.is_empty() {
        Ok(())
    } else {
        Err(Error::invalid("pseudo-cone", report.to_string()))
    }
}

/// The object of `cone_h(K)` corresponding to the pseudo-cone `(ℓ, λ)`.
/// Its square over a 1-cell `m` of the shape is `λ_m⁻¹`.
pub fn cone_object_h(k: &TwoFunctor, cone: &PseudoCone) -> Result<ConeObject> {
    check_cone(k, cone)?;
    let c = &*k.cod;
    let lam = &cone.transformation;
    Ok(ConeObject {
        summit: cone.summit,
        kappa: Transformation {
            obj: lam.ones.clone(),
            ver: lam.ones.iter().map(|&l| c.id2(l)).collect(),
            hor: inverses(c, &lam.twos)?,
        },
    })
}

fn inverses(c: &twocat::FinTwoCategory, cells: &[usize]) -> Result<Vec<usize>> {
    cells
        .iter()
        .map(|&x| {
            c.inverse2(x)
                .ok_or_else(|| Error::invalid("pseudo-cone", format!("2-cell {x} is not invertible")))
        })
        .collect()
}

/// The object of `cone_htilde(K)` corresponding to `(ℓ, λ)`. Over an adjoint
/// equivalence `(e, g, η, ε)` of the shape its square is filled by `λ_e`.
pub fn cone_object_htilde(k: &TwoFunctor, cone: &PseudoCone) -> Result<ConeObject> {
    check_cone(k, cone)?;
    let c = &*k.cod;
    let lam = &cone.transformation;
    let hj = embed_htilde(&k.dom)?;
    let hc = embed_htilde(c)?;
    let kt = embed_htilde_functor(k)?;
    let l = cone.summit;
    let ver = hj
        .verticals
        .iter()
        .enumerate()
        .map(|(u, e)| {
            let a = hj.double.v(u);
            let boundary = Square::new(lam.ones[a.src], lam.ones[a.tgt], hc.double.v_id(l), kt.v_map[u]);
            let cell = lam.twos[e.f];
            hc.double
                .squares_with(boundary)
                .iter()
                .copied()
                .find(|&s| hc.cells[s] == cell)
                .ok_or_else(|| internal("cone square over an equivalence"))
        })
        .collect::<Result<Vec<_>>>()?;
    // Squares with identity sides are numbered like the 2-cells.
    Ok(ConeObject {
        summit: l,
        kappa: Transformation {
            obj: lam.ones.clone(),
            ver,
            hor: inverses(c, &lam.twos)?,
        },
    })
}

/// Decides whether the slice projection `Cone ⫽ o -> Cone` is a double
/// biequivalence, returning the failure if not.
pub fn slice_failure(
    cones: &ConeDouble,
    o: usize,
    budget: &Budget,
) -> Result<Option<DoubleBiequivalenceFailure>> {
    let p = slice_projection(&cones.double, o, budget)?;
    double_biequivalence_failure(&p)
}

fn locate(cones: &ConeDouble, o: &ConeObject) -> Result<usize> {
    cones
        .find_object(o)
        .ok_or_else(|| Error::NotFound("the pseudo-cone among the objects of the cone double category".into()))
}

/// Why `(ℓ, λ)` fails the criterion over `H̃`, or `None` when it is a
/// homotopy 2-limit.
pub fn limit_failure_htilde(
    k: &TwoFunctor,
    cone: &PseudoCone,
    budget: &Budget,
) -> Result<Option<DoubleBiequivalenceFailure>> {
    let o = cone_object_htilde(k, cone)?;
    let cones = cone_htilde(k, budget)?;
    slice_failure(&cones, locate(&cones, &o)?, budget)
}

/// Why `(ℓ, λ)` fails the criterion over `H`, or `None`.
pub fn limit_failure_h(
    k: &TwoFunctor,
    cone: &PseudoCone,
    budget: &Budget,
) -> Result<Option<DoubleBiequivalenceFailure>> {
    let o = cone_object_h(k, cone)?;
    let cones = cone_h(k, budget)?;
    slice_failure(&cones, locate(&cones, &o)?, budget)
}

pub fn check_limit_htilde(k: &TwoFunctor, cone: &PseudoCone, budget: &Budget) -> Result<bool> {
    Ok(limit_failure_htilde(k, cone, budget)?.is_none())
}

pub fn check_limit_h(k: &TwoFunctor, cone: &PseudoCone, budget: &Budget) -> Result<bool> {
    Ok(limit_failure_h(k, cone, budget)?.is_none())
}

/// The double functor between cone double categories that keeps every
/// cell's data, after `obj_map` is applied to the objects. Both must sit
/// over the same cell ids of their targets.
fn compare(
    src: &ConeDouble,
    tgt: &ConeDouble,
    obj_map: impl Fn(&ConeObject) -> ConeObject,
) -> Result<DoubleFunctor> {
    let (sd, td) = (&*src.double, &*tgt.double);
    let missing = |what: &str| Error::NotFound(format!("image of a {what} in the comparison"));
    let ob_ix: FxHashMap<&ConeObject, usize> =
        tgt.objects.iter().enumerate().map(|(i, o)| (o, i)).collect();
    let ob_map = src
        .objects
        .iter()
        .map(|o| ob_ix.get(&obj_map(o)).copied().ok_or_else(|| missing("object")))
        .collect::<Result<Vec<_>>>()?;
    let key = |a: Arrow, base: usize, data: &Vec<usize>| (a.src, a.tgt, base, data.clone());
    let h_ix: FxHashMap<_, usize> = (0..td.horizontal_count())
        .map(|i| (key(td.h(i), tgt.projection.h_map[i], &tgt.horizontals[i]), i))
        .collect();
    let v_ix: FxHashMap<_, usize> = (0..td.vertical_count())
        .map(|i| (key(td.v(i), tgt.projection.v_map[i], &tgt.verticals[i]), i))
        .collect();
    let image = |a: Arrow| Arrow::new(ob_map[a.src], ob_map[a.tgt]);
    let h_map = (0..sd.horizontal_count())
        .map(|i| {
            h_ix.get(&key(image(sd.h(i)), src.projection.h_map[i], &src.horizontals[i]))
                .copied()
                .ok_or_else(|| missing("horizontal"))
        })
        .collect::<Result<Vec<_>>>()?;
    let v_map = (0..sd.vertical_count())
        .map(|i| {
            v_ix.get(&key(image(sd.v(i)), src.projection.v_map[i], &src.verticals[i]))
                .copied()
                .ok_or_else(|| missing("vertical"))
        })
        .collect::<Result<Vec<_>>>()?;
    let sq_map = (0..sd.square_count())
        .map(|s| {
            let b = sd.square(s);
            let img = Square::new(h_map[b.top], h_map[b.bottom], v_map[b.left], v_map[b.right]);
            td.squares_with(img)
                .iter()
                .copied()
                .find(|&t| tgt.projection.sq_map[t] == src.projection.sq_map[s])
                .ok_or_else(|| missing("square"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DoubleFunctor {
        dom: src.double.clone(),
        cod: tgt.double.clone(),
        ob_map,
        h_map,
        v_map,
        sq_map,
    })
}

/// The diagram `H̃ K ∘ I_J = I_C ∘ H K: H J -> H̃ C` between the two cone
/// constructions.
pub fn middle_diagram(k: &TwoFunctor) -> Result<DoubleFunctor> {
    htilde_inclusion(&k.dom)?.then(&embed_htilde_functor(k)?)
}

/// Restriction along `I_J`: `cone_htilde(K) -> Cone(H̃ K ∘ I_J)`, with the
/// middle cone double category.
pub fn comparison_from_htilde(k: &TwoFunctor, budget: &Budget) -> Result<(DoubleFunctor, ConeDouble)> {
    let src = cone_htilde(k, budget)?;
    let mid = cone_general(&middle_diagram(k)?, budget)?;
    let keep = k.dom.object_count();
    // `I_J` is the identity on ids and the first verticals of `H̃ J` are the
    // identities, so restricting a transformation truncates its verticals.
    let f = compare(&src, &mid, |o| ConeObject {
        summit: o.summit,
        kappa: Transformation {
            obj: o.kappa.obj.clone(),
            ver: o.kappa.ver[..keep].to_vec(),
            hor: o.kappa.hor.clone(),
        },
    })?;
    Ok((f, mid))
}

/// Extension along `I_C`: `cone_h(K) -> Cone(I_C ∘ H K)`, with the middle
/// cone double category.
pub fn comparison_from_h(k: &TwoFunctor, budget: &Budget) -> Result<(DoubleFunctor, ConeDouble)> {
    let src = cone_h(k, budget)?;
    let diagram = embed_h_functor(k).then(&htilde_inclusion(&k.cod)?)?;
    let mid = cone_general(&diagram, budget)?;
    let f = compare(&src, &mid, Clone::clone)?;
    Ok((f, mid))
}

#[cfg(test)]
mod tests;
