//! Isomorphism search between finite double categories.

use rustc_hash::FxHashMap;

use super::enumerate::FunctorData;
use super::search::backtrack;
use super::{CellKeys, FinDoubleCategory, Square};
use crate::budget::Budget;
use crate::error::Result;

/// Labels that an isomorphism must preserve, one per cell.
pub type CellLabels = CellKeys;

fn unlabeled(d: &FinDoubleCategory) -> CellLabels {
    CellKeys {
        objects: vec![0; d.object_count()],
        horizontals: vec![0; d.horizontal_count()],
        verticals: vec![0; d.vertical_count()],
        squares: vec![0; d.square_count()],
    }
}

/// An isomorphism `D -> E`, if any.
pub fn iso_search(
    d: &FinDoubleCategory,
    e: &FinDoubleCategory,
    budget: &Budget,
) -> Result<Option<FunctorData>> {
    iso_search_labeled(d, &unlabeled(d), e, &unlabeled(e), budget)
}

type Signature = (usize, usize, usize, usize, usize, usize, usize);

fn signature(d: &FinDoubleCategory, labels: &CellLabels, x: usize) -> Signature {
    let n = d.object_count();
    let (mut ho, mut hi, mut vo, mut vi) = (0, 0, 0, 0);
    for y in 0..n {
        ho += d.horizontals(x, y).len();
        hi += d.horizontals(y, x).len();
        vo += d.verticals(x, y).len();
        vi += d.verticals(y, x).len();
    }
    (
        labels.objects[x],
        ho,
        hi,
        vo,
        vi,
        d.horizontals(x, x).len(),
        d.verticals(x, x).len(),
    )
}

/// An isomorphism `D -> E` sending every cell to a cell with the same
/// label, if any.
pub fn iso_search_labeled(
    d: &FinDoubleCategory,
    ld: &CellLabels,
    e: &FinDoubleCategory,
    le: &CellLabels,
    budget: &Budget,
) -> Result<Option<FunctorData>> {
    if d.object_count() != e.object_count()
        || d.horizontal_count() != e.horizontal_count()
        || d.vertical_count() != e.vertical_count()
        || d.square_count() != e.square_count()
    {
        return Ok(None);
    }
    let (no, nh, nv, ns) = (
        d.object_count(),
        d.horizontal_count(),
        d.vertical_count(),
        d.square_count(),
    );
    let (oh, ov, os) = (no, no + nh, no + nh + nv);
    let n = os + ns;
    let sig_e: Vec<Signature> = (0..no).map(|x| signature(e, le, x)).collect();
    let sig_d: Vec<Signature> = (0..no).map(|x| signature(d, ld, x)).collect();

    // Earlier cells in the same hom or boundary class, for injectivity.
    let mut earlier: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut classes: FxHashMap<(u8, usize, usize, usize, usize), Vec<usize>> = FxHashMap::default();
    for f in 0..nh {
        let a = d.h(f);
        let c = classes.entry((0, a.src, a.tgt, 0, 0)).or_default();
        earlier[oh + f] = c.clone();
        c.push(oh + f);
    }
    for u in 0..nv {
        let a = d.v(u);
        let c = classes.entry((1, a.src, a.tgt, 0, 0)).or_default();
        earlier[ov + u] = c.clone();
        c.push(ov + u);
    }
    for s in 0..ns {
        let b = d.square(s);
        let c = classes.entry((2, b.top, b.bottom, b.left, b.right)).or_default();
        earlier[os + s] = c.clone();
        c.push(os + s);
    }
    #[derive(Clone, Copy)]
    enum Table {
        H,
        V,
        SqH,
        SqV,
    }
    let mut checks: Vec<Vec<(Table, usize, usize, usize)>> = vec![Vec::new(); n];
    let tables = [
        (Table::H, d.horizontal_category().composition_triples(), oh),
        (Table::V, d.vertical_category().composition_triples(), ov),
        (Table::SqH, d.square_h_category().composition_triples(), os),
        (Table::SqV, d.square_v_category().composition_triples(), os),
    ];
    for (t, triples, off) in tables {
        for (g, f, h) in triples {
            let last = (g + off).max(f + off).max(h + off);
            checks[last].push((t, g + off, f + off, h + off));
        }
    }
    let candidates = |i: usize, p: &[usize]| -> Vec<usize> {
        if i < oh {
            (0..no).filter(|&y| sig_e[y] == sig_d[i]).collect()
        } else if i < ov {
            let f = i - oh;
            let a = d.h(f);
            if d.horizontal_category().is_identity(f) {
                return vec![e.h_id(p[a.src])];
            }
            e.horizontals(p[a.src], p[a.tgt])
                .iter()
                .copied()
                .filter(|&g| le.horizontals[g] == ld.horizontals[f] && !e.horizontal_category().is_identity(g))
                .collect()
        } else if i < os {
            let u = i - ov;
            let a = d.v(u);
            if d.vertical_category().is_identity(u) {
                return vec![e.v_id(p[a.src])];
            }
            e.verticals(p[a.src], p[a.tgt])
                .iter()
                .copied()
                .filter(|&g| le.verticals[g] == ld.verticals[u] && !e.vertical_category().is_identity(g))
                .collect()
        } else {
            let s = i - os;
            let b = d.square(s);
            let img = Square::new(p[oh + b.top], p[oh + b.bottom], p[ov + b.left], p[ov + b.right]);
            let cands = e.squares_with(img);
            if cands.len() != d.squares_with(b).len() {
                return vec![];
            }
            cands
                .iter()
                .copied()
                .filter(|&t| le.squares[t] == ld.squares[s])
                .collect()
        }
    };
    let accept = |i: usize, p: &[usize]| -> bool {
        if i < oh {
            // Injective, and hom sizes agree with every earlier object.
            for k in 0..i {
                if p[k] == p[i] {
                    return false;
                }
                for (x, y) in [(i, k), (k, i)] {
                    if d.horizontals(x, y).len() != e.horizontals(p[x], p[y]).len()
                        || d.verticals(x, y).len() != e.verticals(p[x], p[y]).len()
                    {
                        return false;
                    }
                }
            }
            return true;
        }
        if earlier[i].iter().any(|&k| p[k] == p[i]) {
            return false;
        }
        checks[i].iter().all(|&(t, g, f, h)| {
            let r = match t {
                Table::H => e.h_comp(p[g], p[f]),
                Table::V => e.v_comp(p[g], p[f]),
                Table::SqH => e.hcomp(p[g], p[f]),
                Table::SqV => e.vcomp(p[g], p[f]),
            };
            r == Some(p[h])
        })
    };
    let mut found = None;
    backtrack(n, candidates, accept, budget, |p| {
        found = Some(FunctorData {
            ob: p[..oh].to_vec(),
            h: p[oh..ov].to_vec(),
            v: p[ov..os].to_vec(),
            sq: p[os..].to_vec(),
        });
        false
    })?;
    Ok(found)
}
