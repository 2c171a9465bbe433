//! Enumeration of strict double functors.

use super::search::backtrack;
use super::{FinDoubleCategory, Square};
use crate::budget::Budget;
use crate::error::Result;

/// The four cell maps of a double functor without its endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctorData {
    pub ob: Vec<usize>,
    pub h: Vec<usize>,
    pub v: Vec<usize>,
    pub sq: Vec<usize>,
}

impl FunctorData {
    pub fn transpose(&self) -> FunctorData {
        FunctorData {
            ob: self.ob.clone(),
            h: self.v.clone(),
            v: self.h.clone(),
            sq: self.sq.clone(),
        }
    }

    /// The functor constant at object `x`.
    pub fn constant(j: &FinDoubleCategory, d: &FinDoubleCategory, x: usize) -> FunctorData {
        let (h, v) = (d.h_id(x), d.v_id(x));
        FunctorData {
            ob: vec![x; j.object_count()],
            h: vec![h; j.horizontal_count()],
            v: vec![v; j.vertical_count()],
            sq: vec![d.sq_h_id(v); j.square_count()],
        }
    }
}

/// All double functors `J -> D`.
pub fn double_functors(
    j: &FinDoubleCategory,
    d: &FinDoubleCategory,
    budget: &Budget,
) -> Result<Vec<FunctorData>> {
    double_functors_restricted(j, d, None, budget)
}

/// All double functors `J -> D` sending each object `x` of `J` into
/// `objects[x]` when a restriction is given.
pub fn double_functors_restricted(
    j: &FinDoubleCategory,
    d: &FinDoubleCategory,
    objects: Option<&[Vec<usize>]>,
    budget: &Budget,
) -> Result<Vec<FunctorData>> {
    let (no, nh, nv, ns) = (
        j.object_count(),
        j.horizontal_count(),
        j.vertical_count(),
        j.square_count(),
    );
    let (oh, ov, os) = (no, no + nh, no + nh + nv);
    let n = os + ns;
    // Constraints keyed by their last variable: (g, f, g∘f) in one of the
    // four composition tables.
    #[derive(Clone, Copy)]
    enum Table {
        H,
        V,
        SqH,
        SqV,
    }
    // Variables are cells of J by global id; they are assigned in an order
    // that places every cell right after its boundary, so empty hom-sets
    // prune early.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for x in 0..no {
        order.push(x);
        placed[x] = true;
        for f in 0..nh {
            let a = j.h(f);
            if !placed[oh + f] && placed[a.src] && placed[a.tgt] {
                order.push(oh + f);
                placed[oh + f] = true;
            }
        }
        for u in 0..nv {
            let a = j.v(u);
            if !placed[ov + u] && placed[a.src] && placed[a.tgt] {
                order.push(ov + u);
                placed[ov + u] = true;
            }
        }
        for s in 0..ns {
            let b = j.square(s);
            let sides = [oh + b.top, oh + b.bottom, ov + b.left, ov + b.right];
            if !placed[os + s] && sides.iter().all(|&c| placed[c]) {
                order.push(os + s);
                placed[os + s] = true;
            }
        }
    }
    let mut pos_of = vec![0; n];
    for (k, &var) in order.iter().enumerate() {
        pos_of[var] = k;
    }
    // Constraints keyed by the position of their last variable: (g, f, g∘f)
    // in one of the four composition tables.
    let mut checks: Vec<Vec<(Table, usize, usize, usize)>> = vec![Vec::new(); n];
    let tables = [
        (Table::H, j.horizontal_category().composition_triples(), oh),
        (Table::V, j.vertical_category().composition_triples(), ov),
        (Table::SqH, j.square_h_category().composition_triples(), os),
        (Table::SqV, j.square_v_category().composition_triples(), os),
    ];
    for (t, triples, off) in tables {
        for (g, f, h) in triples {
            let (g, f, h) = (pos_of[g + off], pos_of[f + off], pos_of[h + off]);
            checks[g.max(f).max(h)].push((t, g, f, h));
        }
    }
    let h_ids: Vec<bool> = (0..nh).map(|f| j.horizontal_category().is_identity(f)).collect();
    let v_ids: Vec<bool> = (0..nv).map(|u| j.vertical_category().is_identity(u)).collect();
    let candidates = |i: usize, p: &[usize]| -> Vec<usize> {
        let var = order[i];
        let val = |w: usize| p[pos_of[w]];
        if var < oh {
            match objects {
                Some(r) => r[var].clone(),
                None => (0..d.object_count()).collect(),
            }
        } else if var < ov {
            let f = var - oh;
            let a = j.h(f);
            if h_ids[f] {
                vec![d.h_id(val(a.src))]
            } else {
                d.horizontals(val(a.src), val(a.tgt)).to_vec()
            }
        } else if var < os {
            let u = var - ov;
            let a = j.v(u);
            if v_ids[u] {
                vec![d.v_id(val(a.src))]
            } else {
                d.verticals(val(a.src), val(a.tgt)).to_vec()
            }
        } else {
            let b = j.square(var - os);
            d.squares_with(Square::new(
                val(oh + b.top),
                val(oh + b.bottom),
                val(ov + b.left),
                val(ov + b.right),
            ))
            .to_vec()
        }
    };
    let accept = |i: usize, p: &[usize]| -> bool {
        let var = order[i];
        checks[i].iter().all(|&(t, g, f, h)| {
            let r = match t {
                Table::H => d.h_comp(p[g], p[f]),
                Table::V => d.v_comp(p[g], p[f]),
                Table::SqH => d.hcomp(p[g], p[f]),
                Table::SqV => d.vcomp(p[g], p[f]),
            };
            r == Some(p[h])
        }) && (var < os || {
            // Identity squares go to identity squares.
            let s = var - os;
            let ok_h = (0..nv).all(|u| j.sq_h_id(u) != s || d.sq_h_id(p[pos_of[ov + u]]) == p[i]);
            let ok_v = (0..nh).all(|f| j.sq_v_id(f) != s || d.sq_v_id(p[pos_of[oh + f]]) == p[i]);
            ok_h && ok_v
        })
    };
    let mut out = Vec::new();
    backtrack(n, candidates, accept, budget, |p| {
        let cells: Vec<usize> = (0..n).map(|var| p[pos_of[var]]).collect();
        out.push(FunctorData {
            ob: cells[..oh].to_vec(),
            h: cells[oh..ov].to_vec(),
            v: cells[ov..os].to_vec(),
            sq: cells[os..].to_vec(),
        });
        true
    })?;
    Ok(out)
}
