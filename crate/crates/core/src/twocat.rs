//! Finite strict 2-categories, 2-functors, pseudo-natural transformations and
//! modifications, and the direct homotopy 2-limit test.
//!
//! A 2-category is stored as two ordinary categories sharing ids: the
//! 1-category of objects and 1-cells, and the vertical category whose objects
//! are the 1-cells and whose morphisms are the 2-cells. Horizontal
//! composition of 2-cells is a separate table keyed `(β, α) -> β*α`, where
//! `α` is the 2-cell applied first (the one on the right in `β*α`).

use std::sync::Arc;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::{self, Arrow, FinCategory, Functor};
use crate::lazy::Cache;
use crate::report::ValidationReport;

/// A hom-category `Hom(a, b)` with the global ids of its cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomCategory {
    pub cat: Arc<FinCategory>,
    /// Local object index to global 1-cell id.
    pub one_cells: Vec<usize>,
    /// Local morphism index to global 2-cell id.
    pub two_cells: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Index {
    homs: FxHashMap<(usize, usize), HomCategory>,
    empty: HomCategory,
    local_one: Vec<usize>,
    local_two: Vec<usize>,
    inverse: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinTwoCategory {
    ones: FinCategory,
    vert: FinCategory,
    hcomp: FxHashMap<(usize, usize), usize>,
    index: Cache<Index>,
}

impl FinTwoCategory {
    /// Builds a 2-category from raw tables.
    ///
    /// `two_cells[k]` holds the source and target 1-cell of 2-cell `k`, and
    /// `id2[f]` is the identity 2-cell on 1-cell `f`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        objects: usize,
        one_cells: Vec<Arrow>,
        id1: Vec<usize>,
        comp1: impl IntoIterator<Item = (usize, usize, usize)>,
        two_cells: Vec<Arrow>,
        id2: Vec<usize>,
        vcomp: impl IntoIterator<Item = (usize, usize, usize)>,
        hcomp: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let n1 = one_cells.len();
        let ones = FinCategory::new(objects, one_cells, id1, comp1)?;
        let vert = FinCategory::new(n1, two_cells, id2, vcomp)?;
        let mut table = FxHashMap::default();
        for (b, a, c) in hcomp {
            for id in [b, a, c] {
                if id >= vert.morphism_count() {
                    return Err(Error::UnknownCell {
                        kind: "2-cell",
                        id,
                    });
                }
            }
            if table.insert((b, a), c).is_some() {
                return Err(Error::invalid(
                    "2-category",
                    format!("duplicate horizontal composition entry ({b}, {a})"),
                ));
            }
        }
        Ok(FinTwoCategory {
            ones,
            vert,
            hcomp: table,
            index: Cache::new(),
        })
    }

    /// Builds a 2-category whose composition tables are computed by closures
    /// on every composable pair.
    #[allow(clippy::too_many_arguments)]
    pub fn from_fn(
        objects: usize,
        one_cells: Vec<Arrow>,
        id1: Vec<usize>,
        comp1: impl FnMut(usize, usize) -> usize,
        two_cells: Vec<Arrow>,
        id2: Vec<usize>,
        vcomp: impl FnMut(usize, usize) -> usize,
        mut hcomp: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        let ones = FinCategory::from_fn(objects, one_cells.clone(), id1.clone(), comp1)?;
        let vert = FinCategory::from_fn(one_cells.len(), two_cells.clone(), id2.clone(), vcomp)?;
        let mut triples = Vec::new();
        for (a, ta) in two_cells.iter().enumerate() {
            for (b, tb) in two_cells.iter().enumerate() {
                if one_cells[ta.src].tgt == one_cells[tb.src].src {
                    triples.push((b, a, hcomp(b, a)));
                }
            }
        }
        FinTwoCategory::new(
            objects,
            one_cells,
            id1,
            ones.composition_triples(),
            two_cells,
            id2,
            vert.composition_triples(),
            triples,
        )
    }

    /// The locally discrete 2-category on a category: only identity 2-cells.
    /// 2-cell `k` is the identity on 1-cell `k`.
    pub fn locally_discrete(c: &FinCategory) -> Self {
        let n = c.morphism_count();
        let cc = c.clone();
        FinTwoCategory::from_fn(
            c.object_count(),
            c.morphisms().to_vec(),
            c.identities().to_vec(),
            |g, f| cc.compose(g, f).expect("composable"),
            (0..n).map(|k| Arrow::new(k, k)).collect(),
            (0..n).collect(),
            |b, _| b,
            |b, a| c.compose(b, a).expect("composable"),
        )
        .expect("locally discrete")
    }

    pub fn object_count(&self) -> usize {
        self.ones.object_count()
    }

    pub fn one_cell_count(&self) -> usize {
        self.ones.morphism_count()
    }

    pub fn two_cell_count(&self) -> usize {
        self.vert.morphism_count()
    }

    /// The underlying 1-category.
    pub fn one_category(&self) -> &FinCategory {
        &self.ones
    }

    /// The category of 1-cells and 2-cells under vertical composition.
    pub fn vertical_category(&self) -> &FinCategory {
        &self.vert
    }

    pub fn one(&self, f: usize) -> Arrow {
        self.ones.arrow(f)
    }

    /// Source and target 1-cells of a 2-cell.
    pub fn two(&self, a: usize) -> Arrow {
        self.vert.arrow(a)
    }

    /// Source and target objects of a 2-cell.
    pub fn two_ends(&self, a: usize) -> Arrow {
        self.ones.arrow(self.vert.src(a))
    }

    pub fn id1(&self, x: usize) -> usize {
        self.ones.identity(x)
    }

    pub fn id2(&self, f: usize) -> usize {
        self.vert.identity(f)
    }

    /// `g∘f` on 1-cells.
    pub fn comp1(&self, g: usize, f: usize) -> Option<usize> {
        self.ones.compose(g, f)
    }

    /// `β·α` on 2-cells, `α` first.
    pub fn vcomp(&self, b: usize, a: usize) -> Option<usize> {
        self.vert.compose(b, a)
    }

    /// `β*α` on 2-cells, `α` on the right.
    pub fn hcomp(&self, b: usize, a: usize) -> Option<usize> {
        self.hcomp.get(&(b, a)).copied()
    }

    /// Horizontal composition triples `(β, α, β*α)` sorted by key.
    pub fn hcomp_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut v: Vec<_> = self.hcomp.iter().map(|(&(b, a), &c)| (b, a, c)).collect();
        v.sort_unstable();
        v
    }

    /// 1-cells `a -> b`.
    pub fn one_cells(&self, a: usize, b: usize) -> &[usize] {
        self.ones.hom(a, b)
    }

    /// 2-cells `f => g`.
    pub fn two_cells(&self, f: usize, g: usize) -> &[usize] {
        self.vert.hom(f, g)
    }

    fn index(&self) -> &Index {
        self.index.get_or_init(|| {
            let n = self.object_count();
            let mut local_one = vec![0; self.one_cell_count()];
            let mut local_two = vec![0; self.two_cell_count()];
            let mut homs = FxHashMap::default();
            for a in 0..n {
                for b in 0..n {
                    let h = self.build_hom(a, b, &mut local_one, &mut local_two);
                    homs.insert((a, b), h);
                }
            }
            let inverse = (0..self.two_cell_count())
                .map(|k| fincat::is_isomorphism(&self.vert, k).ok().flatten())
                .collect();
            Index {
                homs,
                empty: HomCategory {
                    cat: Arc::new(FinCategory::empty()),
                    one_cells: vec![],
                    two_cells: vec![],
                },
                local_one,
                local_two,
                inverse,
            }
        })
    }

    fn build_hom(
        &self,
        a: usize,
        b: usize,
        local_one: &mut [usize],
        local_two: &mut [usize],
    ) -> HomCategory {
        let one_cells: Vec<usize> = self.ones.hom(a, b).to_vec();
        let mut pos = FxHashMap::default();
        for (i, &f) in one_cells.iter().enumerate() {
            pos.insert(f, i);
            local_one[f] = i;
        }
        let mut two_cells = Vec::new();
        let mut arrows = Vec::new();
        let mut tpos = FxHashMap::default();
        for (k, t) in self.vert.morphisms().iter().enumerate() {
            if let (Some(&s), Some(&d)) = (pos.get(&t.src), pos.get(&t.tgt)) {
                tpos.insert(k, two_cells.len());
                local_two[k] = two_cells.len();
                two_cells.push(k);
                arrows.push(Arrow::new(s, d));
            }
        }
        let identities = one_cells
            .iter()
            .map(|&f| tpos.get(&self.id2(f)).copied().unwrap_or(0))
            .collect();
        let mut triples = Vec::new();
        for (g, f, h) in self.vert.composition_triples() {
            if let (Some(&g), Some(&f), Some(&h)) = (tpos.get(&g), tpos.get(&f), tpos.get(&h)) {
                triples.push((g, f, h));
            }
        }
        let cat = if two_cells.is_empty() && !one_cells.is_empty() {
            // Only reachable on malformed input: keep the shape consistent.
            FinCategory::new(0, vec![], vec![], []).expect("empty")
        } else {
            FinCategory::new(one_cells.len(), arrows, identities, triples)
                .unwrap_or_else(|_| FinCategory::empty())
        };
        HomCategory {
            cat: Arc::new(cat),
            one_cells,
            two_cells,
        }
    }

    /// The hom-category `Hom(a, b)`.
    pub fn hom(&self, a: usize, b: usize) -> &HomCategory {
        let idx = self.index();
        idx.homs.get(&(a, b)).unwrap_or(&idx.empty)
    }

    /// Position of a 1-cell inside its hom-category.
    pub fn local_one(&self, f: usize) -> usize {
        self.index().local_one[f]
    }

    /// Position of a 2-cell inside its hom-category.
    pub fn local_two(&self, a: usize) -> usize {
        self.index().local_two[a]
    }

    /// Vertical inverse of a 2-cell, if it is invertible.
    pub fn inverse2(&self, a: usize) -> Option<usize> {
        self.index().inverse[a]
    }

    pub fn is_invertible2(&self, a: usize) -> bool {
        self.inverse2(a).is_some()
    }

    /// Invertible 2-cells `f => g`.
    pub fn invertible_two_cells(&self, f: usize, g: usize) -> Vec<usize> {
        self.two_cells(f, g)
            .iter()
            .copied()
            .filter(|&k| self.is_invertible2(k))
            .collect()
    }

    fn check_one(&self, f: usize) -> Result<()> {
        if f < self.one_cell_count() {
            Ok(())
        } else {
            Err(Error::UnknownCell {
                kind: "1-cell",
                id: f,
            })
        }
    }

    fn check_object(&self, x: usize) -> Result<()> {
        if x < self.object_count() {
            Ok(())
        } else {
            Err(Error::UnknownCell {
                kind: "object",
                id: x,
            })
        }
    }
}

/// Exhaustive scan of the 2-category axioms.
///
/// Entries of the horizontal 2-cell table are blamed at most once. An entry
/// is first compared against its two whiskering decompositions
/// `(β*1)·(1*α)` and `(1*α)·(β*1)`; a mismatch is an `interchange`
/// violation. Unit, boundary and associativity checks then run on the
/// remaining entries, followed by the full interchange law on every
/// composable 2×2 grid.
pub fn validate_two_category(c: &FinTwoCategory) -> ValidationReport {
    let mut report = ValidationReport::default();
    report.extend_prefixed("1-cells", fincat::validate_category(&c.ones));
    for (k, t) in c.vert.morphisms().iter().enumerate() {
        if c.one(t.src) != c.one(t.tgt) {
            report.push(
                "two_cell_boundary",
                vec![k],
                format!("2-cell {k} joins non-parallel 1-cells {} and {}", t.src, t.tgt),
            );
        }
    }
    report.extend_prefixed("2-cells", fincat::validate_category(&c.vert));
    if !report.is_empty() {
        return report;
    }

    let n2 = c.two_cell_count();
    let composable = |b: usize, a: usize| c.two_ends(a).tgt == c.two_ends(b).src;
    let mut blamed: FxHashSet<(usize, usize)> = FxHashSet::default();
    let mut keys: Vec<(usize, usize)> = c.hcomp.keys().copied().collect();
    keys.sort_unstable();
    for &(b, a) in &keys {
        if !composable(b, a) {
            report.push(
                "hcomp_domain",
                vec![b, a],
                format!("entry ({b}, {a}) for a non-composable pair"),
            );
            blamed.insert((b, a));
        }
    }
    for a in 0..n2 {
        for b in 0..n2 {
            if composable(b, a) && !c.hcomp.contains_key(&(b, a)) {
                report.push(
                    "hcomp_total",
                    vec![b, a],
                    format!("missing horizontal composite of ({b}, {a})"),
                );
                blamed.insert((b, a));
            }
        }
    }

    for &(b, a) in &keys {
        if blamed.contains(&(b, a)) {
            continue;
        }
        let val = c.hcomp[&(b, a)];
        let (ta, tb) = (c.two(a), c.two(b));
        let w1 = c
            .hcomp(b, c.id2(ta.tgt))
            .zip(c.hcomp(c.id2(tb.src), a))
            .and_then(|(x, y)| c.vcomp(x, y));
        let w2 = c
            .hcomp(c.id2(tb.tgt), a)
            .zip(c.hcomp(b, c.id2(ta.src)))
            .and_then(|(x, y)| c.vcomp(x, y));
        if w1 != Some(val) || w2 != Some(val) {
            report.push(
                "interchange",
                vec![b, a],
                format!("{b}*{a} = {val} disagrees with its whiskering decompositions"),
            );
            blamed.insert((b, a));
        }
    }

    let ok = |b: usize, a: usize| -> Option<usize> {
        if blamed.contains(&(b, a)) {
            None
        } else {
            c.hcomp(b, a)
        }
    };
    let mut bad_unit = Vec::new();
    for k in 0..n2 {
        let e = c.two_ends(k);
        let r = c.id2(c.id1(e.src));
        if let Some(v) = ok(k, r) {
            if v != k {
                report.push("horizontal_unit", vec![k, r], format!("{k}*1 = {v}"));
                bad_unit.push((k, r));
            }
        }
        let l = c.id2(c.id1(e.tgt));
        if let Some(v) = ok(l, k) {
            if v != k {
                report.push("horizontal_unit", vec![l, k], format!("1*{k} = {v}"));
                bad_unit.push((l, k));
            }
        }
    }
    blamed.extend(bad_unit);
    let ok = |b: usize, a: usize| -> Option<usize> {
        if blamed.contains(&(b, a)) {
            None
        } else {
            c.hcomp(b, a)
        }
    };
    let mut bad_boundary = Vec::new();
    for &(b, a) in &keys {
        let Some(v) = ok(b, a) else { continue };
        let (ta, tb, tv) = (c.two(a), c.two(b), c.two(v));
        if c.comp1(tb.src, ta.src) != Some(tv.src) || c.comp1(tb.tgt, ta.tgt) != Some(tv.tgt) {
            report.push(
                "hcomp_boundary",
                vec![b, a, v],
                format!("{b}*{a} = {v} has the wrong boundary"),
            );
            bad_boundary.push((b, a));
        }
    }
    blamed.extend(bad_boundary);
    let ok = |b: usize, a: usize| -> Option<usize> {
        if blamed.contains(&(b, a)) {
            None
        } else {
            c.hcomp(b, a)
        }
    };
    for (f, af) in c.ones.morphisms().iter().enumerate() {
        for y in 0..c.object_count() {
            for &g in c.ones.hom(af.tgt, y) {
                if let (Some(v), Some(gf)) = (ok(c.id2(g), c.id2(f)), c.comp1(g, f)) {
                    if v != c.id2(gf) {
                        report.push(
                            "hcomp_identity",
                            vec![g, f],
                            format!("1_{g}*1_{f} = {v}, expected 1_{gf}"),
                        );
                    }
                }
            }
        }
    }

    // Group 2-cells by endpoints for the associativity and grid scans.
    let nobj = c.object_count();
    let mut by_ends: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); nobj]; nobj];
    for k in 0..n2 {
        let e = c.two_ends(k);
        by_ends[e.src][e.tgt].push(k);
    }
    for x in 0..nobj {
        for y in 0..nobj {
            for z in 0..nobj {
                for w in 0..nobj {
                    for &a in &by_ends[x][y] {
                        for &b in &by_ends[y][z] {
                            let Some(ba) = ok(b, a) else { continue };
                            for &d in &by_ends[z][w] {
                                let (Some(db), Some(d_ba)) = (ok(d, b), ok(d, ba)) else {
                                    continue;
                                };
                                let Some(db_a) = ok(db, a) else { continue };
                                if d_ba != db_a {
                                    report.push(
                                        "hcomp_associativity",
                                        vec![d, b, a],
                                        format!("({d}*{b})*{a} = {db_a} but {d}*({b}*{a}) = {d_ba}"),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // Full interchange on vertically composable pairs in adjacent homs.
    let vpairs = |x: usize, y: usize| -> Vec<(usize, usize, usize)> {
        let mut v = Vec::new();
        for &a in &by_ends[x][y] {
            for &a2 in &by_ends[x][y] {
                if c.two(a2).src == c.two(a).tgt {
                    if let Some(m) = c.vcomp(a2, a) {
                        v.push((a, a2, m));
                    }
                }
            }
        }
        v
    };
    for x in 0..nobj {
        for y in 0..nobj {
            let lower = vpairs(x, y);
            if lower.is_empty() {
                continue;
            }
            for z in 0..nobj {
                for &(b, b2, bm) in &vpairs(y, z) {
                    for &(a, a2, am) in &lower {
                        let lhs = ok(bm, am);
                        let rhs = ok(b2, a2)
                            .zip(ok(b, a))
                            .and_then(|(u, v)| c.vcomp(u, v));
                        if let (Some(l), Some(r)) = (lhs, rhs) {
                            if l != r {
                                report.push(
                                    "interchange",
                                    vec![b2, b, a2, a],
                                    format!("({b2}·{b})*({a2}·{a}) = {l} but ({b2}*{a2})·({b}*{a}) = {r}"),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFunctor {
    pub dom: Arc<FinTwoCategory>,
    pub cod: Arc<FinTwoCategory>,
    pub ob_map: Vec<usize>,
    pub one_map: Vec<usize>,
    pub two_map: Vec<usize>,
}

impl TwoFunctor {
    pub fn identity(c: Arc<FinTwoCategory>) -> Self {
        TwoFunctor {
            ob_map: (0..c.object_count()).collect(),
            one_map: (0..c.one_cell_count()).collect(),
            two_map: (0..c.two_cell_count()).collect(),
            dom: c.clone(),
            cod: c,
        }
    }

    /// The constant 2-functor `Δx: J -> C`.
    pub fn constant(j: Arc<FinTwoCategory>, c: Arc<FinTwoCategory>, x: usize) -> Self {
        let i1 = c.id1(x);
        let i2 = c.id2(i1);
        TwoFunctor {
            ob_map: vec![x; j.object_count()],
            one_map: vec![i1; j.one_cell_count()],
            two_map: vec![i2; j.two_cell_count()],
            dom: j,
            cod: c,
        }
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &TwoFunctor) -> Result<TwoFunctor> {
        if self.cod != after.dom {
            return Err(Error::BoundaryMismatch(
                "2-functor codomain differs from next domain".into(),
            ));
        }
        Ok(TwoFunctor {
            dom: self.dom.clone(),
            cod: after.cod.clone(),
            ob_map: self.ob_map.iter().map(|&x| after.ob_map[x]).collect(),
            one_map: self.one_map.iter().map(|&x| after.one_map[x]).collect(),
            two_map: self.two_map.iter().map(|&x| after.two_map[x]).collect(),
        })
    }

    /// The functor `Hom(a, b) -> Hom(Fa, Fb)`.
    pub fn hom_functor(&self, a: usize, b: usize) -> Functor {
        let src = self.dom.hom(a, b);
        let tgt = self.cod.hom(self.ob_map[a], self.ob_map[b]);
        Functor {
            dom: src.cat.clone(),
            cod: tgt.cat.clone(),
            ob_map: src
                .one_cells
                .iter()
                .map(|&f| self.cod.local_one(self.one_map[f]))
                .collect(),
            mor_map: src
                .two_cells
                .iter()
                .map(|&k| self.cod.local_two(self.two_map[k]))
                .collect(),
        }
    }
}

pub fn validate_two_functor(f: &TwoFunctor) -> ValidationReport {
    let mut report = ValidationReport::default();
    let (d, c) = (&*f.dom, &*f.cod);
    if f.ob_map.len() != d.object_count()
        || f.one_map.len() != d.one_cell_count()
        || f.two_map.len() != d.two_cell_count()
    {
        report.push("functor_shape", vec![], "map sizes do not match the domain".into());
        return report;
    }
    if f.ob_map.iter().any(|&x| x >= c.object_count())
        || f.one_map.iter().any(|&x| x >= c.one_cell_count())
        || f.two_map.iter().any(|&x| x >= c.two_cell_count())
    {
        report.push("functor_range", vec![], "image id out of range".into());
        return report;
    }
    let one = Functor {
        dom: Arc::new(d.ones.clone()),
        cod: Arc::new(c.ones.clone()),
        ob_map: f.ob_map.clone(),
        mor_map: f.one_map.clone(),
    };
    report.extend_prefixed("1-cells", fincat::validate_functor(&one));
    let two = Functor {
        dom: Arc::new(d.vert.clone()),
        cod: Arc::new(c.vert.clone()),
        ob_map: f.one_map.clone(),
        mor_map: f.two_map.clone(),
    };
    report.extend_prefixed("2-cells", fincat::validate_functor(&two));
    for (b, a, v) in d.hcomp_triples() {
        if c.hcomp(f.two_map[b], f.two_map[a]) != Some(f.two_map[v]) {
            report.push(
                "functor_hcomp",
                vec![b, a],
                format!("horizontal composite {b}*{a} not preserved"),
            );
        }
    }
    report
}

/// A pseudo-natural transformation `α: F => G`.
///
/// `ones[a]` is the component `α_a: Fa -> Ga`; `twos[f]` is the invertible
/// 2-cell `α_f: Gf∘α_a => α_b∘Ff` for a 1-cell `f: a -> b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PseudoNatTransformation {
    pub ones: Vec<usize>,
    pub twos: Vec<usize>,
}

/// A modification between two transformations of a [`PsHom`], given by
/// index, with components `Ξ_a: α_a => β_a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modification {
    pub source: usize,
    pub target: usize,
    pub components: Vec<usize>,
}

/// A pseudo-cone `λ: Δℓ => K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PseudoCone {
    pub summit: usize,
    pub transformation: PseudoNatTransformation,
}

impl PseudoCone {
    /// The pasted cone `λ ∘ Δe` with summit the source of `e: ℓ' -> ℓ`.
    pub fn precompose(&self, c: &FinTwoCategory, e: usize) -> Result<PseudoCone> {
        c.check_one(e)?;
        let ea = c.one(e);
        if ea.tgt != self.summit {
            return Err(Error::BoundaryMismatch("1-cell does not end at the summit".into()));
        }
        let t = &self.transformation;
        let ones = t
            .ones
            .iter()
            .map(|&l| c.comp1(l, e).ok_or_else(|| Error::BoundaryMismatch("component".into())))
            .collect::<Result<_>>()?;
        let twos = t
            .twos
            .iter()
            .map(|&l| {
                c.hcomp(l, c.id2(e))
                    .ok_or_else(|| Error::BoundaryMismatch("2-cell component".into()))
            })
            .collect::<Result<_>>()?;
        Ok(PseudoCone {
            summit: ea.src,
            transformation: PseudoNatTransformation { ones, twos },
        })
    }
}

fn parallel(f: &TwoFunctor, g: &TwoFunctor) -> Result<()> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(Error::BoundaryMismatch("2-functors are not parallel".into()));
    }
    Ok(())
}

/// Checks the invariants of a pseudo-natural transformation `F => G`.
pub fn validate_pseudo_nat(
    f: &TwoFunctor,
    g: &TwoFunctor,
    t: &PseudoNatTransformation,
) -> ValidationReport {
    let mut report = ValidationReport::default();
    let (j, c) = (&*f.dom, &*f.cod);
    if f.dom != g.dom || f.cod != g.cod {
        report.push("parallel", vec![], "2-functors are not parallel".into());
        return report;
    }
    if t.ones.len() != j.object_count() || t.twos.len() != j.one_cell_count() {
        report.push("shape", vec![], "component counts do not match the domain".into());
        return report;
    }
    for (a, &x) in t.ones.iter().enumerate() {
        if x >= c.one_cell_count() || c.one(x) != Arrow::new(f.ob_map[a], g.ob_map[a]) {
            report.push("component_boundary", vec![a], format!("component at object {a}"));
        }
    }
    if !report.is_empty() {
        return report;
    }
    for (m, &k) in t.twos.iter().enumerate() {
        let e = j.one(m);
        let want = (
            c.comp1(g.one_map[m], t.ones[e.src]),
            c.comp1(t.ones[e.tgt], f.one_map[m]),
        );
        if k >= c.two_cell_count() || (Some(c.two(k).src), Some(c.two(k).tgt)) != want {
            report.push("component_boundary", vec![m], format!("2-cell component at 1-cell {m}"));
        } else if !c.is_invertible2(k) {
            report.push("invertibility", vec![m], format!("2-cell component at {m} is not invertible"));
        }
    }
    if !report.is_empty() {
        return report;
    }
    for x in 0..j.object_count() {
        let i = j.id1(x);
        if t.twos[i] != c.id2(t.ones[x]) {
            report.push("normalization", vec![i], format!("component at identity of {x}"));
        }
    }
    for (fm, gm, h) in j.one_category().composition_triples().into_iter().map(|(g, f, h)| (f, g, h)) {
        if !composition_coherent(f, g, t, fm, gm, h) {
            report.push("composition", vec![gm, fm], format!("coherence at {gm}∘{fm}"));
        }
    }
    for k in 0..j.two_cell_count() {
        if !two_cell_natural(f, g, t, k) {
            report.push("naturality", vec![k], format!("naturality at 2-cell {k}"));
        }
    }
    report
}

fn composition_coherent(
    ff: &TwoFunctor,
    gg: &TwoFunctor,
    t: &PseudoNatTransformation,
    f: usize,
    g: usize,
    gf: usize,
) -> bool {
    let c = &*ff.cod;
    let outer = c.hcomp(c.id2(gg.one_map[g]), t.twos[f]);
    let inner = c.hcomp(t.twos[g], c.id2(ff.one_map[f]));
    outer.zip(inner).and_then(|(o, i)| c.vcomp(i, o)) == Some(t.twos[gf])
}

fn two_cell_natural(ff: &TwoFunctor, gg: &TwoFunctor, t: &PseudoNatTransformation, k: usize) -> bool {
    let (j, c) = (&*ff.dom, &*ff.cod);
    let b = j.two(k);
    let e = j.one(b.src);
    let lhs = c
        .hcomp(gg.two_map[k], c.id2(t.ones[e.src]))
        .and_then(|x| c.vcomp(t.twos[b.tgt], x));
    let rhs = c
        .hcomp(c.id2(t.ones[e.tgt]), ff.two_map[k])
        .and_then(|x| c.vcomp(x, t.twos[b.src]));
    lhs.is_some() && lhs == rhs
}

fn modification_ok(
    ff: &TwoFunctor,
    gg: &TwoFunctor,
    alpha: &PseudoNatTransformation,
    beta: &PseudoNatTransformation,
    xi: &[usize],
    m: usize,
) -> bool {
    let (j, c) = (&*ff.dom, &*ff.cod);
    let e = j.one(m);
    let lhs = c
        .hcomp(c.id2(gg.one_map[m]), xi[e.src])
        .and_then(|x| c.vcomp(beta.twos[m], x));
    let rhs = c
        .hcomp(xi[e.tgt], c.id2(ff.one_map[m]))
        .and_then(|x| c.vcomp(x, alpha.twos[m]));
    lhs.is_some() && lhs == rhs
}

/// Checks a modification `Ξ: α => β` between transformations `F => G`.
pub fn validate_modification(
    f: &TwoFunctor,
    g: &TwoFunctor,
    alpha: &PseudoNatTransformation,
    beta: &PseudoNatTransformation,
    components: &[usize],
) -> ValidationReport {
    let mut report = ValidationReport::default();
    let (j, c) = (&*f.dom, &*f.cod);
    if components.len() != j.object_count() {
        report.push("shape", vec![], "component count does not match the domain".into());
        return report;
    }
    for (a, &x) in components.iter().enumerate() {
        if x >= c.two_cell_count() || c.two(x) != Arrow::new(alpha.ones[a], beta.ones[a]) {
            report.push("component_boundary", vec![a], format!("component at {a}"));
        }
    }
    if !report.is_empty() {
        return report;
    }
    for m in 0..j.one_cell_count() {
        if !modification_ok(f, g, alpha, beta, components, m) {
            report.push("modification", vec![m], format!("modification axiom at 1-cell {m}"));
        }
    }
    report
}

/// All pseudo-natural transformations `F => G`, in lexicographic order of
/// their component ids (objects first, then 1-cells).
pub fn pseudo_nat_set(
    f: &TwoFunctor,
    g: &TwoFunctor,
    budget: &Budget,
) -> Result<Vec<PseudoNatTransformation>> {
    parallel(f, g)?;
    let (j, c) = (&*f.dom, &*f.cod);
    let n0 = j.object_count();
    let n1 = j.one_cell_count();
    // Constraints are checked as soon as the largest 1-cell they involve is
    // assigned.
    let mut comp_at: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n1];
    for (gm, fm, h) in j.one_category().composition_triples() {
        comp_at[fm.max(gm).max(h)].push((fm, gm, h));
    }
    let mut nat_at: Vec<Vec<usize>> = vec![Vec::new(); n1];
    for k in 0..j.two_cell_count() {
        let b = j.two(k);
        nat_at[b.src.max(b.tgt)].push(k);
    }
    let ob_candidates: Vec<Vec<usize>> = (0..n0)
        .map(|a| c.one_cells(f.ob_map[a], g.ob_map[a]).to_vec())
        .collect();
    let mut out = Vec::new();
    let mut t = PseudoNatTransformation {
        ones: vec![0; n0],
        twos: vec![0; n1],
    };
    fn objects(
        a: usize,
        ctx: &Ctx<'_>,
        t: &mut PseudoNatTransformation,
        out: &mut Vec<PseudoNatTransformation>,
    ) -> Result<()> {
        if a == ctx.ob_candidates.len() {
            return cells(0, ctx, t, out);
        }
        for &x in &ctx.ob_candidates[a] {
            ctx.budget.tick()?;
            t.ones[a] = x;
            objects(a + 1, ctx, t, out)?;
        }
        Ok(())
    }
    fn cells(
        m: usize,
        ctx: &Ctx<'_>,
        t: &mut PseudoNatTransformation,
        out: &mut Vec<PseudoNatTransformation>,
    ) -> Result<()> {
        let (j, c, f, g) = (&*ctx.f.dom, &*ctx.f.cod, ctx.f, ctx.g);
        if m == j.one_cell_count() {
            out.push(t.clone());
            return Ok(());
        }
        let e = j.one(m);
        let candidates = if j.id1(e.src) == m {
            vec![c.id2(t.ones[e.src])]
        } else {
            match (
                c.comp1(g.one_map[m], t.ones[e.src]),
                c.comp1(t.ones[e.tgt], f.one_map[m]),
            ) {
                (Some(s), Some(d)) => c.invertible_two_cells(s, d),
                _ => vec![],
            }
        };
        'next: for k in candidates {
            ctx.budget.tick()?;
            t.twos[m] = k;
            for &(fm, gm, h) in &ctx.comp_at[m] {
                if !composition_coherent(f, g, t, fm, gm, h) {
                    continue 'next;
                }
            }
            for &q in &ctx.nat_at[m] {
                if !two_cell_natural(f, g, t, q) {
                    continue 'next;
                }
            }
            cells(m + 1, ctx, t, out)?;
        }
        Ok(())
    }
    struct Ctx<'a> {
        f: &'a TwoFunctor,
        g: &'a TwoFunctor,
        ob_candidates: Vec<Vec<usize>>,
        comp_at: Vec<Vec<(usize, usize, usize)>>,
        nat_at: Vec<Vec<usize>>,
        budget: &'a Budget,
    }
    let ctx = Ctx {
        f,
        g,
        ob_candidates,
        comp_at,
        nat_at,
        budget,
    };
    let _ = c;
    objects(0, &ctx, &mut t, &mut out)?;
    Ok(out)
}

/// All modifications `α => β`.
pub fn modifications(
    f: &TwoFunctor,
    g: &TwoFunctor,
    alpha: &PseudoNatTransformation,
    beta: &PseudoNatTransformation,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>> {
    parallel(f, g)?;
    let j = &*f.dom;
    let c = &*f.cod;
    let n0 = j.object_count();
    let mut check_at: Vec<Vec<usize>> = vec![Vec::new(); n0];
    for m in 0..j.one_cell_count() {
        let e = j.one(m);
        check_at[e.src.max(e.tgt)].push(m);
    }
    let candidates: Vec<&[usize]> = (0..n0)
        .map(|a| c.two_cells(alpha.ones[a], beta.ones[a]))
        .collect();
    let mut out = Vec::new();
    let mut xi = vec![0; n0];
    #[allow(clippy::too_many_arguments)]
    fn go(
        a: usize,
        f: &TwoFunctor,
        g: &TwoFunctor,
        alpha: &PseudoNatTransformation,
        beta: &PseudoNatTransformation,
        candidates: &[&[usize]],
        check_at: &[Vec<usize>],
        xi: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: &Budget,
    ) -> Result<()> {
        if a == candidates.len() {
            out.push(xi.clone());
            return Ok(());
        }
        'next: for &k in candidates[a] {
            budget.tick()?;
            xi[a] = k;
            for &m in &check_at[a] {
                if !modification_ok(f, g, alpha, beta, xi, m) {
                    continue 'next;
                }
            }
            go(a + 1, f, g, alpha, beta, candidates, check_at, xi, out, budget)?;
        }
        Ok(())
    }
    go(0, f, g, alpha, beta, &candidates, &check_at, &mut xi, &mut out, budget)?;
    Ok(out)
}

/// The hom-category `[J, C]^ps(F, G)` together with the cells it indexes.
#[derive(Debug, Clone)]
pub struct PsHom {
    pub category: Arc<FinCategory>,
    pub transformations: Vec<PseudoNatTransformation>,
    pub modifications: Vec<Modification>,
}

impl PsHom {
    pub fn find_transformation(&self, t: &PseudoNatTransformation) -> Option<usize> {
        self.transformations.iter().position(|x| x == t)
    }

    pub fn find_modification(&self, source: usize, target: usize, comps: &[usize]) -> Option<usize> {
        self.modifications
            .iter()
            .position(|m| m.source == source && m.target == target && m.components == comps)
    }
}

pub fn hom_category_ps(f: &TwoFunctor, g: &TwoFunctor, budget: &Budget) -> Result<PsHom> {
    let c = &*f.cod;
    let transformations = pseudo_nat_set(f, g, budget)?;
    let mut modifications = Vec::new();
    let mut index: FxHashMap<(usize, usize, Vec<usize>), usize> = FxHashMap::default();
    let mut identities = vec![usize::MAX; transformations.len()];
    for (s, alpha) in transformations.iter().enumerate() {
        for (t, beta) in transformations.iter().enumerate() {
            for comps in modifications_between(f, g, alpha, beta, budget)? {
                if s == t && comps.iter().zip(&alpha.ones).all(|(&k, &x)| k == c.id2(x)) {
                    identities[s] = modifications.len();
                }
                index.insert((s, t, comps.clone()), modifications.len());
                modifications.push(Modification {
                    source: s,
                    target: t,
                    components: comps,
                });
            }
        }
    }
    let arrows = modifications
        .iter()
        .map(|m| Arrow::new(m.source, m.target))
        .collect();
    let mods = modifications.clone();
    let category = FinCategory::from_fn(transformations.len(), arrows, identities, |q, p| {
        let (mp, mq) = (&mods[p], &mods[q]);
        let comps: Vec<usize> = mq
            .components
            .iter()
            .zip(&mp.components)
            .map(|(&y, &x)| c.vcomp(y, x).expect("composable components"))
            .collect();
        index[&(mp.source, mq.target, comps)]
    })?;
    Ok(PsHom {
        category: Arc::new(category),
        transformations,
        modifications,
    })
}

fn modifications_between(
    f: &TwoFunctor,
    g: &TwoFunctor,
    alpha: &PseudoNatTransformation,
    beta: &PseudoNatTransformation,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>> {
    modifications(f, g, alpha, beta, budget)
}

/// Witness that a 1-cell `f: a -> b` is an equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EquivalenceWitness {
    pub inverse: usize,
    /// Invertible `id_a => g∘f`.
    pub unit: usize,
    /// Invertible `f∘g => id_b`.
    pub counit: usize,
}

pub fn is_equivalence_1cell(c: &FinTwoCategory, f: usize) -> Result<Option<EquivalenceWitness>> {
    c.check_one(f)?;
    let e = c.one(f);
    for &g in c.one_cells(e.tgt, e.src) {
        let (gf, fg) = (c.comp1(g, f), c.comp1(f, g));
        let (Some(gf), Some(fg)) = (gf, fg) else { continue };
        let units = c.invertible_two_cells(c.id1(e.src), gf);
        let counits = c.invertible_two_cells(fg, c.id1(e.tgt));
        if let (Some(&unit), Some(&counit)) = (units.first(), counits.first()) {
            return Ok(Some(EquivalenceWitness {
                inverse: g,
                unit,
                counit,
            }));
        }
    }
    Ok(None)
}

/// Adjoint equivalence data `(f, g, η, ε)` with `η: id => g∘f` and
/// `ε: f∘g => id`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdjointEquivalence {
    pub f: usize,
    pub g: usize,
    pub unit: usize,
    pub counit: usize,
}

/// Whether `(f, g, η, ε)` satisfies both triangle identities, with `η, ε`
/// invertible.
pub fn is_adjoint_equivalence(c: &FinTwoCategory, e: &AdjointEquivalence) -> bool {
    let (fa, ga) = (c.one(e.f), c.one(e.g));
    if fa.src != ga.tgt || fa.tgt != ga.src {
        return false;
    }
    let (Some(gf), Some(fg)) = (c.comp1(e.g, e.f), c.comp1(e.f, e.g)) else {
        return false;
    };
    if c.two(e.unit) != Arrow::new(c.id1(fa.src), gf) || c.two(e.counit) != Arrow::new(fg, c.id1(fa.tgt)) {
        return false;
    }
    if !c.is_invertible2(e.unit) || !c.is_invertible2(e.counit) {
        return false;
    }
    let (i_f, i_g) = (c.id2(e.f), c.id2(e.g));
    let t1 = c
        .hcomp(i_f, e.unit)
        .zip(c.hcomp(e.counit, i_f))
        .and_then(|(x, y)| c.vcomp(y, x));
    let t2 = c
        .hcomp(e.unit, i_g)
        .zip(c.hcomp(i_g, e.counit))
        .and_then(|(x, y)| c.vcomp(y, x));
    t1 == Some(i_f) && t2 == Some(i_g)
}

/// All adjoint equivalences `a -> b`, ordered by `(f, g, η, ε)`.
pub fn adjoint_equivalences(c: &FinTwoCategory, a: usize, b: usize) -> Result<Vec<AdjointEquivalence>> {
    c.check_object(a)?;
    c.check_object(b)?;
    let mut out = Vec::new();
    for &f in c.one_cells(a, b) {
        for &g in c.one_cells(b, a) {
            let (Some(gf), Some(fg)) = (c.comp1(g, f), c.comp1(f, g)) else {
                continue;
            };
            for &unit in c.two_cells(c.id1(a), gf) {
                for &counit in c.two_cells(fg, c.id1(b)) {
                    let e = AdjointEquivalence { f, g, unit, counit };
                    if is_adjoint_equivalence(c, &e) {
                        out.push(e);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Why a 2-functor fails to be a biequivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BiequivalenceFailure {
    /// No object of the domain is sent to something equivalent to this one.
    NotEssentiallySurjective { object: usize },
    /// `Hom(a, b) -> Hom(Fa, Fb)` is not an equivalence of categories.
    HomNotEquivalence { a: usize, b: usize },
}

impl std::fmt::Display for BiequivalenceFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BiequivalenceFailure::NotEssentiallySurjective { object } => {
                write!(f, "object {object} is not equivalent to any image object")
            }
            BiequivalenceFailure::HomNotEquivalence { a, b } => {
                write!(f, "hom functor at ({a}, {b}) is not an equivalence")
            }
        }
    }
}

/// What a biequivalence test needs to read from a 2-category. 2-cells are
/// named by pairs of ids so that views over double categories can name a
/// 2-cell by two squares.
pub(crate) trait LocalTwoCategory {
    fn object_count(&self) -> usize;
    fn one_cells(&self, a: usize, b: usize) -> Vec<usize>;
    fn id1(&self, a: usize) -> usize;
    fn comp1(&self, g: usize, f: usize) -> usize;
    /// The 2-cells `f => g`.
    fn two_cells(&self, f: usize, g: usize) -> Vec<(usize, usize)>;
    /// Whether some invertible 2-cell `f => g` exists.
    fn isomorphic(&self, f: usize, g: usize) -> bool;
}

impl LocalTwoCategory for FinTwoCategory {
    fn object_count(&self) -> usize {
        FinTwoCategory::object_count(self)
    }

    fn one_cells(&self, a: usize, b: usize) -> Vec<usize> {
        FinTwoCategory::one_cells(self, a, b).to_vec()
    }

    fn id1(&self, a: usize) -> usize {
        FinTwoCategory::id1(self, a)
    }

    fn comp1(&self, g: usize, f: usize) -> usize {
        FinTwoCategory::comp1(self, g, f).expect("composable 1-cells")
    }

    fn two_cells(&self, f: usize, g: usize) -> Vec<(usize, usize)> {
        FinTwoCategory::two_cells(self, f, g).iter().map(|&k| (k, 0)).collect()
    }

    fn isomorphic(&self, f: usize, g: usize) -> bool {
        FinTwoCategory::two_cells(self, f, g)
            .iter()
            .any(|&k| self.is_invertible2(k))
    }
}

fn local_is_equivalence<C: LocalTwoCategory>(c: &C, z: usize, w: usize, e: usize) -> bool {
    c.one_cells(w, z).into_iter().any(|g| {
        c.isomorphic(c.id1(z), c.comp1(g, e)) && c.isomorphic(c.comp1(e, g), c.id1(w))
    })
}

/// Biequivalence test over views: essentially surjective on objects up to
/// equivalence, and every hom functor fully faithful and essentially
/// surjective up to invertible 2-cells. The maps must describe a valid
/// 2-functor.
pub(crate) fn local_biequivalence_failure<D, C>(
    d: &D,
    c: &C,
    ob_map: &[usize],
    one_map: &[usize],
    two_map: impl Fn((usize, usize)) -> (usize, usize),
) -> Option<BiequivalenceFailure>
where
    D: LocalTwoCategory,
    C: LocalTwoCategory,
{
    let mut images = ob_map.to_vec();
    images.sort_unstable();
    images.dedup();
    for z in 0..c.object_count() {
        let found = images.binary_search(&z).is_ok()
            || images.iter().any(|&w| {
                c.one_cells(z, w)
                    .into_iter()
                    .any(|e| local_is_equivalence(c, z, w, e))
            });
        if !found {
            return Some(BiequivalenceFailure::NotEssentiallySurjective { object: z });
        }
    }
    for a in 0..d.object_count() {
        for b in 0..d.object_count() {
            let fail = Some(BiequivalenceFailure::HomNotEquivalence { a, b });
            let src = d.one_cells(a, b);
            for &p in &src {
                for &q in &src {
                    let cells = d.two_cells(p, q);
                    if cells.len() != c.two_cells(one_map[p], one_map[q]).len() {
                        return fail;
                    }
                    let mut seen = FxHashSet::default();
                    if !cells.into_iter().all(|k| seen.insert(two_map(k))) {
                        return fail;
                    }
                }
            }
            for m in c.one_cells(ob_map[a], ob_map[b]) {
                if !src.iter().any(|&p| c.isomorphic(one_map[p], m)) {
                    return fail;
                }
            }
        }
    }
    None
}

/// `None` when `F` is a biequivalence, otherwise the first failure found.
pub fn biequivalence_failure(f: &TwoFunctor) -> Result<Option<BiequivalenceFailure>> {
    let report = validate_two_functor(f);
    if !report.is_empty() {
        return Err(Error::invalid("2-functor", report.to_string()));
    }
    Ok(local_biequivalence_failure(
        &*f.dom,
        &*f.cod,
        &f.ob_map,
        &f.one_map,
        |(k, _)| (f.two_map[k], 0),
    ))
}

pub fn is_biequivalence(f: &TwoFunctor) -> Result<bool> {
    Ok(biequivalence_failure(f)?.is_none())
}

/// Checks that `cone` is a pseudo-cone over `K`.
pub fn validate_pseudo_cone(k: &TwoFunctor, cone: &PseudoCone) -> ValidationReport {
    if cone.summit >= k.cod.object_count() {
        let mut r = ValidationReport::default();
        r.push("summit", vec![cone.summit], "summit out of range".into());
        return r;
    }
    let delta = TwoFunctor::constant(k.dom.clone(), k.cod.clone(), cone.summit);
    validate_pseudo_nat(&delta, k, &cone.transformation)
}

/// The direct test: the first object `c` at which post-whiskering
/// `Hom(c, ℓ) -> [J, C]^ps(Δc, K)` fails to be an equivalence, or `None`
/// when the cone is a homotopy 2-limit.
pub fn oracle_counterexample(
    k: &TwoFunctor,
    cone: &PseudoCone,
    budget: &Budget,
) -> Result<Option<usize>> {
    let report = validate_two_functor(k);
    if !report.is_empty() {
        return Err(Error::invalid("diagram", report.to_string()));
    }
    let report = validate_pseudo_cone(k, cone);
    if !report.is_empty() {
        return Err(Error::invalid("pseudo-cone", report.to_string()));
    }
    let c = &*k.cod;
    let lam = &cone.transformation;
    for x in 0..c.object_count() {
        let delta = TwoFunctor::constant(k.dom.clone(), k.cod.clone(), x);
        let ps = hom_category_ps(&delta, k, budget)?;
        let hom = c.hom(x, cone.summit);
        let mut ob_map = Vec::with_capacity(hom.one_cells.len());
        for &h in &hom.one_cells {
            let t = whisker(c, lam, h)?;
            let i = ps
                .find_transformation(&t)
                .ok_or_else(|| Error::NotFound("whiskered cone among pseudo-cones".into()))?;
            ob_map.push(i);
        }
        let mut mor_map = Vec::with_capacity(hom.two_cells.len());
        for &s in &hom.two_cells {
            let b = c.two(s);
            let comps = lam
                .ones
                .iter()
                .map(|&l| c.hcomp(c.id2(l), s).ok_or_else(|| Error::BoundaryMismatch("whisker".into())))
                .collect::<Result<Vec<_>>>()?;
            let src = ob_map[c.local_one(b.src)];
            let tgt = ob_map[c.local_one(b.tgt)];
            let i = ps
                .find_modification(src, tgt, &comps)
                .ok_or_else(|| Error::NotFound("whiskered 2-cell among modifications".into()))?;
            mor_map.push(i);
        }
        if !fincat::equivalence_unchecked(&hom.cat, &ps.category, &ob_map, &mor_map) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

fn whisker(c: &FinTwoCategory, lam: &PseudoNatTransformation, h: usize) -> Result<PseudoNatTransformation> {
    let miss = || Error::BoundaryMismatch("whiskering".into());
    Ok(PseudoNatTransformation {
        ones: lam.ones.iter().map(|&l| c.comp1(l, h).ok_or_else(miss)).collect::<Result<_>>()?,
        twos: lam
            .twos
            .iter()
            .map(|&l| c.hcomp(l, c.id2(h)).ok_or_else(miss))
            .collect::<Result<_>>()?,
    })
}

pub fn is_homotopy_2limit_oracle(k: &TwoFunctor, cone: &PseudoCone, budget: &Budget) -> Result<bool> {
    Ok(oracle_counterexample(k, cone, budget)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn arc(c: FinTwoCategory) -> Arc<FinTwoCategory> {
        Arc::new(c)
    }

    /// Brute force over every assignment of 1-cells to objects and 2-cells to
    /// 1-cells, filtered by the invariant checker.
    fn brute_force_pseudo_nats(f: &TwoFunctor, g: &TwoFunctor) -> usize {
        let (j, c) = (&*f.dom, &*f.cod);
        let mut count = 0;
        let n0 = j.object_count();
        let n1 = j.one_cell_count();
        let radix1 = c.one_cell_count();
        let radix2 = c.two_cell_count();
        let total = radix1.pow(n0 as u32) * radix2.pow(n1 as u32);
        for code in 0..total {
            let mut r = code;
            let mut t = PseudoNatTransformation {
                ones: vec![0; n0],
                twos: vec![0; n1],
            };
            for x in t.ones.iter_mut() {
                *x = r % radix1;
                r /= radix1;
            }
            for x in t.twos.iter_mut() {
                *x = r % radix2;
                r /= radix2;
            }
            if validate_pseudo_nat(f, g, &t).is_empty() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn corpus_validates() {
        for (name, c) in corpus::two_categories() {
            let r = validate_two_category(&c);
            assert!(r.is_empty(), "{name}: {r}");
            assert!(validate_two_functor(&TwoFunctor::identity(arc(c))).is_empty());
        }
    }

    #[test]
    fn corrupted_entry_is_one_interchange_violation() {
        let broken = corpus::broken_interchange().unwrap();
        let r = validate_two_category(&broken);
        assert_eq!(r.len(), 1, "{r}");
        assert_eq!(r.violations[0].axiom, "interchange");
        assert_eq!(r.violations[0].witness, vec![1, 4]);
    }

    #[test]
    fn equivalence_1cells() {
        let c = corpus::walking_2cell();
        let w = is_equivalence_1cell(&c, 0).unwrap().unwrap();
        assert_eq!(w, EquivalenceWitness { inverse: 0, unit: 0, counit: 0 });
        assert!(is_equivalence_1cell(&corpus::arrow(), 1).unwrap().is_none());
        let adj = corpus::adjoint_equivalence();
        let w = is_equivalence_1cell(&adj, 4).unwrap().unwrap();
        assert_eq!(w.inverse, 5);
        assert!(is_equivalence_1cell(&adj, 1).unwrap().is_some());
        assert!(is_equivalence_1cell(&adj, 99).is_err());
        // The idempotent 2-cell is not invertible, but the identity still is.
        assert!(is_equivalence_1cell(&corpus::idempotent_2cell(), 0).unwrap().is_some());
    }

    #[test]
    fn adjoint_equivalence_counts() {
        assert_eq!(adjoint_equivalences(&corpus::terminal(), 0, 0).unwrap().len(), 1);
        assert!(adjoint_equivalences(&corpus::arrow(), 0, 1).unwrap().is_empty());
        assert_eq!(adjoint_equivalences(&corpus::walking_iso(), 0, 1).unwrap().len(), 1);
        // η = ε⁻¹ forced by the triangle identity, two choices of ε.
        assert_eq!(adjoint_equivalences(&corpus::involution_2cell(), 0, 0).unwrap().len(), 2);
        // f and g are unique, the 2-cells are unique between parallel 1-cells.
        let adj = corpus::adjoint_equivalence();
        assert_eq!(adjoint_equivalences(&adj, 0, 1).unwrap().len(), 1);
        // (id0, id0), (id0, e0), (e0, id0), (e0, e0).
        assert_eq!(adjoint_equivalences(&adj, 0, 0).unwrap().len(), 4);
    }

    #[test]
    fn biequivalence_examples() {
        for (name, c) in corpus::two_categories() {
            assert!(is_biequivalence(&TwoFunctor::identity(arc(c))).unwrap(), "{name}");
        }
        let w = arc(corpus::walking_2cell());
        let t = arc(corpus::terminal());
        let collapse = TwoFunctor {
            ob_map: vec![0; 2],
            one_map: vec![0; 4],
            two_map: vec![0; 5],
            dom: w,
            cod: t.clone(),
        };
        assert!(!is_biequivalence(&collapse).unwrap());
        let adj = arc(corpus::adjoint_equivalence());
        let incl = TwoFunctor {
            dom: t,
            cod: adj,
            ob_map: vec![0],
            one_map: vec![0],
            two_map: vec![0],
        };
        assert!(is_biequivalence(&incl).unwrap());
    }

    #[test]
    fn pseudo_nat_counts_match_brute_force() {
        let budget = Budget::default();
        let adj = arc(corpus::adjoint_equivalence());
        let id = TwoFunctor::identity(adj.clone());
        let found = pseudo_nat_set(&id, &id, &budget).unwrap();
        assert_eq!(found.len(), 4);
        assert_eq!(found.len(), brute_force_pseudo_nats(&id, &id));

        for case in corpus::diagrams() {
            let k = &case.diagram;
            for x in 0..k.cod.object_count() {
                let delta = TwoFunctor::constant(k.dom.clone(), k.cod.clone(), x);
                let n = pseudo_nat_set(&delta, k, &budget).unwrap().len();
                if k.cod.one_cell_count().pow(k.dom.object_count() as u32)
                    * k.cod.two_cell_count().pow(k.dom.one_cell_count() as u32)
                    < 200_000
                {
                    assert_eq!(n, brute_force_pseudo_nats(&delta, k), "{} at {x}", case.name);
                }
            }
        }
    }

    #[test]
    fn constant_over_walking_arrow() {
        let j = arc(corpus::arrow());
        let c = arc(corpus::arrow());
        let d = TwoFunctor::constant(j, c, 0);
        assert_eq!(pseudo_nat_set(&d, &d, &Budget::default()).unwrap().len(), 1);
    }

    #[test]
    fn ps_hom_unwinding() {
        let budget = Budget::default();
        let point = arc(corpus::shape("point").unwrap());
        for (name, c) in corpus::two_categories() {
            let c = arc(c);
            for x in 0..c.object_count() {
                for y in 0..c.object_count() {
                    let dx = TwoFunctor::constant(point.clone(), c.clone(), x);
                    let ky = TwoFunctor::constant(point.clone(), c.clone(), y);
                    let ps = hom_category_ps(&dx, &ky, &budget).unwrap();
                    assert!(fincat::validate_category(&ps.category).is_empty());
                    let hom = c.hom(x, y);
                    assert_eq!(ps.category.object_count(), hom.cat.object_count(), "{name}");
                    assert_eq!(ps.category.morphism_count(), hom.cat.morphism_count(), "{name}");
                }
            }
        }
        let empty = arc(corpus::shape("empty").unwrap());
        let c = arc(corpus::walking_2cell());
        let e = TwoFunctor::constant(empty, c.clone(), 0);
        let ps = hom_category_ps(&e, &e, &budget).unwrap();
        assert_eq!(*ps.category, FinCategory::terminal());

        // Discrete pair into a category with trivial 2-cells: product of homs.
        let pair = arc(corpus::shape("discrete_pair").unwrap());
        let w = arc(corpus::walking_iso());
        let k = corpus::diagram(pair.clone(), w.clone(), vec![0, 1], &[]);
        for x in 0..2 {
            let d = TwoFunctor::constant(pair.clone(), w.clone(), x);
            let ps = hom_category_ps(&d, &k, &budget).unwrap();
            let expected = fincat::product_cat(&w.hom(x, 0).cat, &w.hom(x, 1).cat);
            assert_eq!(ps.category.object_count(), expected.object_count());
            assert_eq!(ps.category.morphism_count(), expected.morphism_count());
        }
    }

    #[test]
    fn oracle_examples() {
        let budget = Budget::default();
        let point = arc(corpus::shape("point").unwrap());
        let c = arc(corpus::walking_2cell());
        let k = corpus::diagram(point, c.clone(), vec![1], &[]);
        let cone = PseudoCone {
            summit: 1,
            transformation: PseudoNatTransformation {
                ones: vec![c.id1(1)],
                twos: vec![c.id2(c.id1(1))],
            },
        };
        assert!(is_homotopy_2limit_oracle(&k, &cone, &budget).unwrap());

        let (case, source_cone) = corpus::non_limit_cone();
        assert!(!is_homotopy_2limit_oracle(&case.diagram, &source_cone, &budget).unwrap());
        assert_eq!(oracle_counterexample(&case.diagram, &source_cone, &budget).unwrap(), Some(1));
        let target_cone = PseudoCone {
            summit: 1,
            ..source_cone
        };
        assert!(is_homotopy_2limit_oracle(&case.diagram, &target_cone, &budget).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let adj = arc(corpus::adjoint_equivalence());
        let id = TwoFunctor::identity(adj);
        let tiny = Budget::new(3);
        assert!(matches!(
            pseudo_nat_set(&id, &id, &tiny),
            Err(Error::BudgetExceeded { limit: 3 })
        ));
    }
}
