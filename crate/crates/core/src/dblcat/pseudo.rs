//! The double category `⟦J, D⟧^ps` of strict double functors, horizontal
//! and vertical pseudo-transformations, and modifications.
//!
//! A horizontal transformation `φ: F => G` has a horizontal `φ_j` per
//! object, a square `φ_u` per vertical (top `φ_j`, bottom `φ_j'`, left `Fu`,
//! right `Gu`) and a vertically invertible square `φ_f` per horizontal
//! `f: j -> k` (top `φ_k∘Ff`, bottom `Gf∘φ_j`, identity sides). Vertical
//! transformations are horizontal ones between the transposes.

use std::sync::Arc;

use rustc_hash::{FxHashMap, FxHashSet};

use super::enumerate::{double_functors_restricted, FunctorData};
use super::search::backtrack;
use super::{FinDoubleCategory, Square};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinCategory};
use crate::intern::Interner;

/// Components of a horizontal or vertical transformation, indexed by the
/// cells of `J`: `obj[j]`, `ver[u]` for verticals and `hor[f]` for
/// horizontals of `J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    pub obj: Vec<usize>,
    pub ver: Vec<usize>,
    pub hor: Vec<usize>,
}

impl Transformation {
    pub fn transpose(&self) -> Transformation {
        Transformation {
            obj: self.obj.clone(),
            ver: self.hor.clone(),
            hor: self.ver.clone(),
        }
    }
}

/// A horizontal transformation.
pub type HTrans = Transformation;
/// A vertical transformation.
pub type VTrans = Transformation;

/// A modification: a square of `⟦J, D⟧^ps`, with one component per object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modification {
    pub boundary: Square,
    pub components: Vec<usize>,
}

/// Per-object limits on which cells of `D` may appear over each object of
/// `J`. `None` leaves a kind unrestricted.
#[derive(Debug, Clone, Default)]
pub struct Restriction {
    pub objects: Option<Vec<Vec<usize>>>,
    pub horizontals: Option<Vec<FxHashSet<usize>>>,
    pub verticals: Option<Vec<FxHashSet<usize>>>,
    pub squares: Option<Vec<FxHashSet<usize>>>,
}

impl Restriction {
    fn transpose(&self) -> Restriction {
        Restriction {
            objects: self.objects.clone(),
            horizontals: self.verticals.clone(),
            verticals: self.horizontals.clone(),
            squares: self.squares.clone(),
        }
    }
}

fn allowed(r: &Option<Vec<FxHashSet<usize>>>, j: usize, x: usize) -> bool {
    r.as_ref().is_none_or(|v| v[j].contains(&x))
}

/// All horizontal transformations `F => G`.
pub fn horizontal_transformations(
    j: &FinDoubleCategory,
    d: &FinDoubleCategory,
    f: &FunctorData,
    g: &FunctorData,
    budget: &Budget,
) -> Result<Vec<HTrans>> {
    h_trans(j, d, f, g, &Restriction::default(), budget)
}

/// All vertical transformations `F => G`.
pub fn vertical_transformations(
    j: &FinDoubleCategory,
    d: &FinDoubleCategory,
    f: &FunctorData,
    g: &FunctorData,
    budget: &Budget,
) -> Result<Vec<VTrans>> {
    let (jt, dt) = (j.transpose(), d.transpose());
    Ok(h_trans(&jt, &dt, &f.transpose(), &g.transpose(), &Restriction::default(), budget)?
        .into_iter()
        .map(|t| t.transpose())
        .collect())
}

fn h_trans(
    j: &FinDoubleCategory,
    d: &FinDoubleCategory,
    f: &FunctorData,
    g: &FunctorData,
    r: &Restriction,
    budget: &Budget,
) -> Result<Vec<HTrans>> {
    let (no, nv, nh) = (j.object_count(), j.vertical_count(), j.horizontal_count());
    let (ov, oh) = (no, no + nv);
    let n = oh + nh;
    // Variable of each J-cell and the constraints attached to each variable.
    let var_v = |u: usize| ov + u;
    let var_h = |x: usize| oh + x;
    #[derive(Clone, Copy)]
    enum Check {
        VComp(usize, usize, usize),
        HComp(usize, usize, usize),
        Natural(usize),
    }
    let mut checks: Vec<Vec<Check>> = vec![Vec::new(); n];
    for (b, a, c) in j.vertical_category().composition_triples() {
        let last = var_v(b).max(var_v(a)).max(var_v(c));
        checks[last].push(Check::VComp(b, a, c));
    }
    for (b, a, c) in j.horizontal_category().composition_triples() {
        let last = var_h(b).max(var_h(a)).max(var_h(c));
        checks[last].push(Check::HComp(b, a, c));
    }
    for s in 0..j.square_count() {
        let b = j.square(s);
        let last = var_h(b.top)
            .max(var_h(b.bottom))
            .max(var_v(b.left))
            .max(var_v(b.right));
        checks[last].push(Check::Natural(s));
    }
    let candidates = |i: usize, p: &[usize]| -> Vec<usize> {
        if i < ov {
            d.horizontals(f.ob[i], g.ob[i])
                .iter()
                .copied()
                .filter(|&x| allowed(&r.horizontals, i, x))
                .collect()
        } else if i < oh {
            let u = i - ov;
            let a = j.v(u);
            if j.vertical_category().is_identity(u) {
                return vec![d.sq_v_id(p[a.src])];
            }
            d.squares_with(Square::new(p[a.src], p[a.tgt], f.v[u], g.v[u]))
                .to_vec()
        } else {
            let x = i - oh;
            let a = j.h(x);
            if j.horizontal_category().is_identity(x) {
                return vec![d.sq_v_id(p[a.src])];
            }
            let (Some(top), Some(bottom)) = (
                d.h_comp(p[a.tgt], f.h[x]),
                d.h_comp(g.h[x], p[a.src]),
            ) else {
                return vec![];
            };
            let sides = (d.v_id(f.ob[a.src]), d.v_id(g.ob[a.tgt]));
            d.squares_with(Square::new(top, bottom, sides.0, sides.1))
                .iter()
                .copied()
                .filter(|&s| d.v_inverse(s).is_some())
                .collect()
        }
    };
    let accept = |i: usize, p: &[usize]| -> bool {
        checks[i].iter().all(|&c| match c {
            Check::VComp(b, a, c) => d.vcomp(p[var_v(b)], p[var_v(a)]) == Some(p[var_v(c)]),
            Check::HComp(y, x, c) => {
                let lhs = d
                    .hcomp(d.sq_v_id(g.h[y]), p[var_h(x)])
                    .zip(d.hcomp(p[var_h(y)], d.sq_v_id(f.h[x])))
                    .and_then(|(lower, upper)| d.vcomp(lower, upper));
                lhs == Some(p[var_h(c)])
            }
            Check::Natural(s) => {
                let b = j.square(s);
                let lhs = d
                    .hcomp(g.sq[s], p[var_v(b.left)])
                    .and_then(|x| d.vcomp(x, p[var_h(b.top)]));
                let rhs = d
                    .hcomp(p[var_v(b.right)], f.sq[s])
                    .and_then(|x| d.vcomp(p[var_h(b.bottom)], x));
                lhs.is_some() && lhs == rhs
            }
        })
    };
    let mut out = Vec::new();
    backtrack(n, candidates, accept, budget, |p| {
        out.push(Transformation {
            obj: p[..ov].to_vec(),
            ver: p[ov..oh].to_vec(),
            hor: p[oh..].to_vec(),
        });
        true
    })?;
    Ok(out)
}

/// All modifications with the given boundary: top `φ`, bottom `φ'`, left
/// `μ` and right `ν`.
pub fn modifications(
    j: &FinDoubleCategory,
    d: &FinDoubleCategory,
    phi: &HTrans,
    phi2: &HTrans,
    mu: &VTrans,
    nu: &VTrans,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>> {
    mods(j, d, phi, phi2, mu, nu, &None, budget)
}

#[allow(clippy::too_many_arguments)]
fn mods(
    j: &FinDoubleCategory,
    d: &FinDoubleCategory,
    phi: &HTrans,
    phi2: &HTrans,
    mu: &VTrans,
    nu: &VTrans,
    r: &Option<Vec<FxHashSet<usize>>>,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>> {
    let no = j.object_count();
    let mut checks_h: Vec<Vec<usize>> = vec![Vec::new(); no];
    for x in 0..j.horizontal_count() {
        let a = j.h(x);
        checks_h[a.src.max(a.tgt)].push(x);
    }
    let mut checks_v: Vec<Vec<usize>> = vec![Vec::new(); no];
    for u in 0..j.vertical_count() {
        let a = j.v(u);
        checks_v[a.src.max(a.tgt)].push(u);
    }
    let candidates = |i: usize, _: &[usize]| -> Vec<usize> {
        d.squares_with(Square::new(phi.obj[i], phi2.obj[i], mu.obj[i], nu.obj[i]))
            .iter()
            .copied()
            .filter(|&s| allowed(r, i, s))
            .collect()
    };
    let accept = |i: usize, p: &[usize]| -> bool {
        checks_h[i].iter().all(|&x| {
            let a = j.h(x);
            let lhs = d
                .hcomp(nu.hor[x], p[a.src])
                .and_then(|y| d.vcomp(y, phi.hor[x]));
            let rhs = d
                .hcomp(p[a.tgt], mu.hor[x])
                .and_then(|y| d.vcomp(phi2.hor[x], y));
            lhs.is_some() && lhs == rhs
        }) && checks_v[i].iter().all(|&u| {
            let a = j.v(u);
            let lhs = d
                .vcomp(phi2.ver[u], p[a.src])
                .and_then(|y| d.hcomp(y, mu.ver[u]));
            let rhs = d
                .vcomp(p[a.tgt], phi.ver[u])
                .and_then(|y| d.hcomp(nu.ver[u], y));
            lhs.is_some() && lhs == rhs
        })
    };
    let mut out = Vec::new();
    backtrack(no, candidates, accept, budget, |p| {
        out.push(p.to_vec());
        true
    })?;
    Ok(out)
}

/// Horizontal composite `ψ∘φ` of `φ: F => G` and `ψ: G => H`.
fn h_compose(
    j: &FinDoubleCategory,
    d: &FinDoubleCategory,
    psi: &HTrans,
    phi: &HTrans,
) -> Option<HTrans> {
    let obj = (0..j.object_count())
        .map(|x| d.h_comp(psi.obj[x], phi.obj[x]))
        .collect::<Option<Vec<_>>>()?;
    let ver = (0..j.vertical_count())
        .map(|u| d.hcomp(psi.ver[u], phi.ver[u]))
        .collect::<Option<Vec<_>>>()?;
    let hor = (0..j.horizontal_count())
        .map(|x| {
            let a = j.h(x);
            let lower = d.hcomp(psi.hor[x], d.sq_v_id(phi.obj[a.src]))?;
            let upper = d.hcomp(d.sq_v_id(psi.obj[a.tgt]), phi.hor[x])?;
            d.vcomp(lower, upper)
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Transformation { obj, ver, hor })
}

/// The identity horizontal transformation on `F`.
pub fn identity_horizontal(j: &FinDoubleCategory, d: &FinDoubleCategory, f: &FunctorData) -> HTrans {
    h_identity(j, d, f)
}

/// The identity vertical transformation on `F`.
pub fn identity_vertical(j: &FinDoubleCategory, d: &FinDoubleCategory, f: &FunctorData) -> VTrans {
    h_identity(&j.transpose(), &d.transpose(), &f.transpose()).transpose()
}

fn h_identity(j: &FinDoubleCategory, d: &FinDoubleCategory, f: &FunctorData) -> HTrans {
    Transformation {
        obj: f.ob.iter().map(|&x| d.h_id(x)).collect(),
        ver: (0..j.vertical_count()).map(|u| d.sq_h_id(f.v[u])).collect(),
        hor: (0..j.horizontal_count()).map(|x| d.sq_v_id(f.h[x])).collect(),
    }
}

/// A pseudo-hom double category with the data behind its cells.
#[derive(Debug, Clone)]
pub struct PseudoHom {
    pub double: Arc<FinDoubleCategory>,
    /// Object id to double functor.
    pub functors: Vec<FunctorData>,
    /// Horizontal id to transformation.
    pub horizontals: Vec<HTrans>,
    /// Vertical id to transformation.
    pub verticals: Vec<VTrans>,
    /// Square id to components.
    pub squares: Vec<Vec<usize>>,
}

impl PseudoHom {
    pub fn find_functor(&self, f: &FunctorData) -> Option<usize> {
        self.functors.iter().position(|x| x == f)
    }

    pub fn find_horizontal(&self, src: usize, tgt: usize, t: &HTrans) -> Option<usize> {
        (0..self.horizontals.len()).find(|&i| {
            let a = self.double.h(i);
            a.src == src && a.tgt == tgt && &self.horizontals[i] == t
        })
    }

    pub fn find_vertical(&self, src: usize, tgt: usize, t: &VTrans) -> Option<usize> {
        (0..self.verticals.len()).find(|&i| {
            let a = self.double.v(i);
            a.src == src && a.tgt == tgt && &self.verticals[i] == t
        })
    }
}

/// The full `⟦J, D⟧^ps`.
pub fn pseudo_hom(j: &FinDoubleCategory, d: &FinDoubleCategory, budget: &Budget) -> Result<PseudoHom> {
    pseudo_hom_restricted(j, d, &Restriction::default(), budget)
}

/// The sub double category of `⟦J, D⟧^ps` on every functor, horizontal and
/// vertical transformation allowed by the restriction, with all
/// modifications between them whose components are allowed.
pub fn pseudo_hom_restricted(
    j: &FinDoubleCategory,
    d: &FinDoubleCategory,
    r: &Restriction,
    budget: &Budget,
) -> Result<PseudoHom> {
    let functors = double_functors_restricted(j, d, r.objects.as_deref(), budget)?;
    let (jt, dt) = (j.transpose(), d.transpose());
    let rt = r.transpose();
    let mut hs = Vec::new();
    let mut vs = Vec::new();
    for (a, fa) in functors.iter().enumerate() {
        for (b, fb) in functors.iter().enumerate() {
            for t in h_trans(j, d, fa, fb, r, budget)? {
                hs.push((a, b, t));
            }
            for t in h_trans(&jt, &dt, &fa.transpose(), &fb.transpose(), &rt, budget)? {
                vs.push((a, b, t.transpose()));
            }
        }
    }
    assemble(j, d, &dt, functors, hs, vs, &r.squares, budget)
}

/// The sub double category of `⟦J, D⟧^ps` on the listed functors and
/// transformations, with all modifications between them. The lists must be
/// closed under identities and composition.
pub fn pseudo_hom_sub(
    j: &FinDoubleCategory,
    d: &FinDoubleCategory,
    functors: Vec<FunctorData>,
    horizontals: Vec<(usize, usize, HTrans)>,
    verticals: Vec<(usize, usize, VTrans)>,
    budget: &Budget,
) -> Result<PseudoHom> {
    let dt = d.transpose();
    assemble(j, d, &dt, functors, horizontals, verticals, &None, budget)
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    j: &FinDoubleCategory,
    d: &FinDoubleCategory,
    dt: &FinDoubleCategory,
    functors: Vec<FunctorData>,
    horizontals: Vec<(usize, usize, HTrans)>,
    verticals: Vec<(usize, usize, VTrans)>,
    sq_allowed: &Option<Vec<FxHashSet<usize>>>,
    budget: &Budget,
) -> Result<PseudoHom> {
    let jt = j.transpose();
    let nf = functors.len();
    let not_closed = |what: &str| Error::invalid("pseudo-hom", format!("{what} is not closed"));
    let mut hix: Interner<(usize, usize, HTrans)> = Interner::new();
    for h in horizontals {
        hix.intern(h);
    }
    let mut vix: Interner<(usize, usize, VTrans)> = Interner::new();
    for v in verticals {
        vix.intern(v);
    }
    let hl = hix.items().to_vec();
    let vl = vix.items().to_vec();
    let h_ids = functors
        .iter()
        .enumerate()
        .map(|(a, f)| hix.get(&(a, a, h_identity(j, d, f))))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| not_closed("horizontal identity"))?;
    let v_ids = functors
        .iter()
        .enumerate()
        .map(|(a, f)| {
            vix.get(&(a, a, h_identity(&jt, dt, &f.transpose()).transpose()))
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| not_closed("vertical identity"))?;
    let mut missing = false;
    let hor = FinCategory::from_fn(
        nf,
        hl.iter().map(|(a, b, _)| Arrow::new(*a, *b)).collect(),
        h_ids,
        |y, x| {
            let (a, _, ref t1) = hl[x];
            let (_, c, ref t2) = hl[y];
            h_compose(j, d, t2, t1)
                .and_then(|t| hix.get(&(a, c, t)))
                .unwrap_or_else(|| {
                    missing = true;
                    0
                })
        },
    )?;
    let ver = FinCategory::from_fn(
        nf,
        vl.iter().map(|(a, b, _)| Arrow::new(*a, *b)).collect(),
        v_ids,
        |y, x| {
            let (a, _, ref t1) = vl[x];
            let (_, c, ref t2) = vl[y];
            h_compose(&jt, dt, &t2.transpose(), &t1.transpose())
                .and_then(|t| vix.get(&(a, c, t.transpose())))
                .unwrap_or_else(|| {
                    missing = true;
                    0
                })
        },
    )?;
    if missing {
        return Err(not_closed("transformation composition"));
    }

    let mut h_by_ends: FxHashMap<(usize, usize), Vec<usize>> = FxHashMap::default();
    for (i, (a, b, _)) in hl.iter().enumerate() {
        h_by_ends.entry((*a, *b)).or_default().push(i);
    }
    let empty = Vec::new();
    let mut sq: Interner<Modification> = Interner::new();
    for (mi, (fa, fa2, mu)) in vl.iter().enumerate() {
        for (ni, (ga, ga2, nu)) in vl.iter().enumerate() {
            for &p in h_by_ends.get(&(*fa, *ga)).unwrap_or(&empty) {
                for &p2 in h_by_ends.get(&(*fa2, *ga2)).unwrap_or(&empty) {
                    for comps in mods(j, d, &hl[p].2, &hl[p2].2, mu, nu, sq_allowed, budget)? {
                        sq.intern(Modification {
                            boundary: Square::new(p, p2, mi, ni),
                            components: comps,
                        });
                    }
                }
            }
        }
    }
    let sl = sq.items().to_vec();
    let sq_h_identity = (0..vl.len())
        .map(|v| {
            let a = ver.arrow(v);
            sq.get(&Modification {
                boundary: Square::new(hor.identity(a.src), hor.identity(a.tgt), v, v),
                components: vl[v].2.obj.iter().map(|&m| d.sq_h_id(m)).collect(),
            })
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| not_closed("identity square"))?;
    let sq_v_identity = (0..hl.len())
        .map(|h| {
            let a = hor.arrow(h);
            sq.get(&Modification {
                boundary: Square::new(h, h, ver.identity(a.src), ver.identity(a.tgt)),
                components: hl[h].2.obj.iter().map(|&m| d.sq_v_id(m)).collect(),
            })
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| not_closed("identity square"))?;
    let mut bad = false;
    let hcomp = |y: usize, x: usize| {
        let (mx, my) = (&sl[x], &sl[y]);
        let r = (|| {
            let top = hor.compose(my.boundary.top, mx.boundary.top)?;
            let bottom = hor.compose(my.boundary.bottom, mx.boundary.bottom)?;
            let comps = mx
                .components
                .iter()
                .zip(&my.components)
                .map(|(&a, &b)| d.hcomp(b, a))
                .collect::<Option<Vec<_>>>()?;
            sq.get(&Modification {
                boundary: Square::new(top, bottom, mx.boundary.left, my.boundary.right),
                components: comps,
            })
        })();
        r.unwrap_or_else(|| {
            bad = true;
            0
        })
    };
    let mut bad2 = false;
    let vcomp = |y: usize, x: usize| {
        let (mx, my) = (&sl[x], &sl[y]);
        let r = (|| {
            let left = ver.compose(my.boundary.left, mx.boundary.left)?;
            let right = ver.compose(my.boundary.right, mx.boundary.right)?;
            let comps = mx
                .components
                .iter()
                .zip(&my.components)
                .map(|(&a, &b)| d.vcomp(b, a))
                .collect::<Option<Vec<_>>>()?;
            sq.get(&Modification {
                boundary: Square::new(mx.boundary.top, my.boundary.bottom, left, right),
                components: comps,
            })
        })();
        r.unwrap_or_else(|| {
            bad2 = true;
            0
        })
    };
    let double = FinDoubleCategory::from_fn(
        hor.clone(),
        ver.clone(),
        sl.iter().map(|m| m.boundary).collect(),
        sq_h_identity,
        sq_v_identity,
        hcomp,
        vcomp,
    )?;
    if bad || bad2 {
        return Err(not_closed("modification composition"));
    }
    Ok(PseudoHom {
        double: Arc::new(double),
        functors,
        horizontals: hl.into_iter().map(|(_, _, t)| t).collect(),
        verticals: vl.into_iter().map(|(_, _, t)| t).collect(),
        squares: sl.into_iter().map(|m| m.components).collect(),
    })
}
