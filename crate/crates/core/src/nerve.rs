//! Truncated double nerves and the Segal condition.
//!
//! The `(m, t)` level of the nerve of `D` is the set of double functors
//! `[m, t] -> D`. A grid is free on its unit cells, so an element is stored
//! packed as the images of those generators, and levels are kept sorted.
//! Faces and degeneracies are precomposition with the grid maps induced by
//! the coface and codegeneracy maps of the simplex category, applied in one
//! direction with the identity in the other.
//!
//! A [`BisimplicialTruncation`] only needs the level sizes and the operator
//! tables, so hand-built truncations can be checked as well.

use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::budget::Budget;
use crate::dblcat::{grid, validate_double_category, DoubleFunctor, FinDoubleCategory, FunctorData, Square};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// Which of the two simplicial directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Along `m`, the horizontal index.
    Horizontal,
    /// Along `t`, the vertical index.
    Vertical,
}

impl Direction {
    fn index(self) -> usize {
        match self {
            Direction::Horizontal => 0,
            Direction::Vertical => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::Horizontal => "horizontal",
            Direction::Vertical => "vertical",
        }
    }
}

/// Operator tables indexed `[m][t][i]`, each a map between level ids.
type Tables = Vec<Vec<Vec<Vec<usize>>>>;

/// Levels `X_{m,t}` for `m <= M`, `t <= T` with every face and degeneracy
/// that stays inside the bound.
///
/// `faces[d][m][t][i]` is `d_i: X_{m,t} -> X_{m-1,t}` in direction `d`
/// (lowering `t` instead for the vertical direction), `degeneracies` is
/// `s_i` raising the index. Entries whose target falls outside the bound
/// are empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisimplicialTruncation {
    pub bound: (usize, usize),
    pub sizes: Vec<Vec<usize>>,
    faces: [Tables; 2],
    degeneracies: [Tables; 2],
    /// The elements themselves, for nerves of double categories.
    nerve: Option<Arc<NerveLevels>>,
}

fn level_index(dir: Direction, m: usize, t: usize) -> usize {
    match dir {
        Direction::Horizontal => m,
        Direction::Vertical => t,
    }
}

impl BisimplicialTruncation {
    /// Assembles a truncation from raw tables. Shapes are checked, the
    /// simplicial identities are not; see [`validate_truncation`].
    pub fn from_parts(
        bound: (usize, usize),
        sizes: Vec<Vec<usize>>,
        faces: [Tables; 2],
        degeneracies: [Tables; 2],
    ) -> Result<Self> {
        let (bm, bt) = bound;
        let bad = |what: String| Error::invalid("bisimplicial truncation", what);
        if sizes.len() != bm + 1 || sizes.iter().any(|r| r.len() != bt + 1) {
            return Err(bad("level sizes do not match the bound".into()));
        }
        let x = BisimplicialTruncation {
            bound,
            sizes,
            faces,
            degeneracies,
            nerve: None,
        };
        for dir in [Direction::Horizontal, Direction::Vertical] {
            let d = dir.index();
            let top = if d == 0 { bm } else { bt };
            for m in 0..=bm {
                for t in 0..=bt {
                    let n = level_index(dir, m, t);
                    let get = |tables: &Tables| tables.get(m).and_then(|r| r.get(t)).map(Vec::len);
                    let want_faces = if n >= 1 { n + 1 } else { 0 };
                    let want_degens = if n < top { n + 1 } else { 0 };
                    if get(&x.faces[d]).unwrap_or(0) != want_faces
                        || get(&x.degeneracies[d]).unwrap_or(0) != want_degens
                    {
                        return Err(bad(format!("{} operators at ({m}, {t}) have the wrong count", dir.name())));
                    }
                    let size = x.sizes[m][t];
                    for i in 0..want_faces {
                        let (m2, t2) = step(dir, m, t, false);
                        let map = &x.faces[d][m][t][i];
                        if map.len() != size || map.iter().any(|&y| y >= x.sizes[m2][t2]) {
                            return Err(bad(format!("{} face {i} at ({m}, {t}) is malformed", dir.name())));
                        }
                    }
                    for i in 0..want_degens {
                        let (m2, t2) = step(dir, m, t, true);
                        let map = &x.degeneracies[d][m][t][i];
                        if map.len() != size || map.iter().any(|&y| y >= x.sizes[m2][t2]) {
                            return Err(bad(format!("{} degeneracy {i} at ({m}, {t}) is malformed", dir.name())));
                        }
                    }
                }
            }
        }
        Ok(x)
    }

    pub fn size(&self, m: usize, t: usize) -> usize {
        self.sizes[m][t]
    }

    /// `d_i` in direction `dir` applied to element `x` of `X_{m,t}`.
    pub fn face(&self, dir: Direction, m: usize, t: usize, i: usize, x: usize) -> usize {
        self.faces[dir.index()][m][t][i][x]
    }

    /// `s_i` in direction `dir` applied to element `x` of `X_{m,t}`.
    pub fn degeneracy(&self, dir: Direction, m: usize, t: usize, i: usize, x: usize) -> usize {
        self.degeneracies[dir.index()][m][t][i][x]
    }

    /// Whether this truncation is the nerve of a double category.
    pub fn is_nerve(&self) -> bool {
        self.nerve.is_some()
    }

    /// Element `e` of `X_{m,t}` as a double functor `[m, t] -> D`, with the
    /// cell ids of [`grid`]`(m, t)`. `None` unless this is a nerve.
    pub fn element(&self, m: usize, t: usize, e: usize) -> Option<FunctorData> {
        let nerve = self.nerve.as_ref()?;
        let level = nerve.levels.get(m)?.get(t)?;
        if e >= level.len() {
            return None;
        }
        let p = Packed { d: &nerve.d, lay: &level.layout, row: level.row(e) };
        p.unpack(&grid(m, t)).ok()
    }

    /// Adds one element to `X_{m,t}` whose faces copy those of `like`. Only
    /// allowed at the top of the bound in both directions, where no operator
    /// leaves the level, so the result is still a truncation.
    pub fn with_phantom(&self, m: usize, t: usize, like: usize) -> Result<Self> {
        if (m, t) != self.bound {
            return Err(Error::Precondition("a phantom element must sit at the top level".into()));
        }
        if like >= self.sizes[m][t] {
            return Err(Error::UnknownCell { kind: "nerve element", id: like });
        }
        let mut x = self.clone();
        x.nerve = None;
        x.sizes[m][t] += 1;
        for d in 0..2 {
            for map in &mut x.faces[d][m][t] {
                map.push(map[like]);
            }
        }
        Ok(x)
    }
}

/// The level reached by one face (`up = false`) or degeneracy.
fn step(dir: Direction, m: usize, t: usize, up: bool) -> (usize, usize) {
    let f = |n: usize| if up { n + 1 } else { n - 1 };
    match dir {
        Direction::Horizontal => (f(m), t),
        Direction::Vertical => (m, f(t)),
    }
}

/// One generating cell of `[m, t]`: `H(i, j)` runs from `(i, j)` to
/// `(i+1, j)`, `V(i, j)` from `(i, j)` to `(i, j+1)`, and `Sq(i, j)` is the
/// unit square with top-left corner `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Gen {
    Ob(usize, usize),
    H(usize, usize),
    V(usize, usize),
    Sq(usize, usize),
}

/// Where each generator of `[m, t]` sits in a packed element. The order is
/// the search order: every cell comes right after its boundary, and each
/// object right after the cell that reaches it.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Layout {
    t: usize,
    order: Vec<Gen>,
    ob: Vec<usize>,
    h: Vec<usize>,
    v: Vec<usize>,
    sq: Vec<usize>,
}

impl Layout {
    fn new(m: usize, t: usize) -> Self {
        let mut order = Vec::new();
        for i in 0..=m {
            for j in 0..=t {
                match (i, j) {
                    (0, 0) => {}
                    (0, _) => order.push(Gen::V(0, j - 1)),
                    _ => order.push(Gen::H(i - 1, j)),
                }
                order.push(Gen::Ob(i, j));
                if i > 0 && j > 0 {
                    order.push(Gen::V(i, j - 1));
                    order.push(Gen::Sq(i - 1, j - 1));
                }
            }
        }
        let mut lay = Layout {
            t,
            order: Vec::new(),
            ob: vec![0; (m + 1) * (t + 1)],
            h: vec![0; m * (t + 1)],
            v: vec![0; (m + 1) * t],
            sq: vec![0; m * t],
        };
        for (p, g) in order.iter().enumerate() {
            match *g {
                Gen::Ob(i, j) => lay.ob[i * (t + 1) + j] = p,
                Gen::H(i, j) => lay.h[i * (t + 1) + j] = p,
                Gen::V(i, j) => lay.v[i * t + j] = p,
                Gen::Sq(i, j) => lay.sq[i * t + j] = p,
            }
        }
        lay.order = order;
        lay
    }

    fn width(&self) -> usize {
        self.order.len()
    }
}

/// A level of a nerve: its elements packed row by row, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Level {
    layout: Layout,
    rows: Vec<u32>,
}

impl Level {
    fn len(&self) -> usize {
        self.rows.len() / self.layout.width()
    }

    fn row(&self, e: usize) -> &[u32] {
        let w = self.layout.width();
        &self.rows[e * w..(e + 1) * w]
    }

    fn find(&self, key: &[u32]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.row(mid).cmp(key) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// The levels of `N(D)` together with `D`, so elements can be unpacked.
#[derive(Debug, Clone, PartialEq, Eq)]
struct NerveLevels {
    d: FinDoubleCategory,
    levels: Vec<Vec<Level>>,
}

fn undefined() -> Error {
    Error::invalid("nerve", "a composite of matching cells is undefined")
}

/// A packed element read as a double functor `[m, t] -> D`. Cells that are
/// not generators are composed in `D`.
struct Packed<'a> {
    d: &'a FinDoubleCategory,
    lay: &'a Layout,
    row: &'a [u32],
}

impl Packed<'_> {
    fn ob(&self, i: usize, j: usize) -> usize {
        self.row[self.lay.ob[i * (self.lay.t + 1) + j]] as usize
    }

    fn unit_h(&self, i: usize, j: usize) -> usize {
        self.row[self.lay.h[i * (self.lay.t + 1) + j]] as usize
    }

    fn unit_v(&self, i: usize, j: usize) -> usize {
        self.row[self.lay.v[i * self.lay.t + j]] as usize
    }

    fn unit_sq(&self, i: usize, j: usize) -> usize {
        self.row[self.lay.sq[i * self.lay.t + j]] as usize
    }

    /// The horizontal from `(i0, j)` to `(i1, j)`.
    fn h(&self, i0: usize, i1: usize, j: usize) -> Result<usize> {
        if i0 == i1 {
            return Ok(self.d.h_id(self.ob(i0, j)));
        }
        (i0 + 1..i1).try_fold(self.unit_h(i0, j), |acc, i| self.d.h_comp(self.unit_h(i, j), acc).ok_or_else(undefined))
    }

    /// The vertical from `(i, j0)` to `(i, j1)`.
    fn v(&self, i: usize, j0: usize, j1: usize) -> Result<usize> {
        if j0 == j1 {
            return Ok(self.d.v_id(self.ob(i, j0)));
        }
        (j0 + 1..j1).try_fold(self.unit_v(i, j0), |acc, j| self.d.v_comp(self.unit_v(i, j), acc).ok_or_else(undefined))
    }

    /// The square spanning columns `i0..i1` and rows `j0..j1`.
    fn sq(&self, i0: usize, i1: usize, j0: usize, j1: usize) -> Result<usize> {
        if i0 == i1 {
            return Ok(self.d.sq_h_id(self.v(i0, j0, j1)?));
        }
        if j0 == j1 {
            return Ok(self.d.sq_v_id(self.h(i0, i1, j0)?));
        }
        let strip = |j: usize| {
            (i0 + 1..i1).try_fold(self.unit_sq(i0, j), |acc, i| self.d.hcomp(self.unit_sq(i, j), acc).ok_or_else(undefined))
        };
        (j0 + 1..j1).try_fold(strip(j0)?, |acc, j| self.d.vcomp(strip(j)?, acc).ok_or_else(undefined))
    }

    /// The packed element `[m2, t2] -> [m, t] -> D` for the grid map induced
    /// by the monotone maps `a` and `b`.
    fn restrict(&self, small: &Layout, a: &[usize], b: &[usize], out: &mut Vec<u32>) -> Result<()> {
        out.clear();
        for g in &small.order {
            let x = match *g {
                Gen::Ob(k, l) => self.ob(a[k], b[l]),
                Gen::H(k, l) => self.h(a[k], a[k + 1], b[l])?,
                Gen::V(k, l) => self.v(a[k], b[l], b[l + 1])?,
                Gen::Sq(k, l) => self.sq(a[k], a[k + 1], b[l], b[l + 1])?,
            };
            out.push(x as u32);
        }
        Ok(())
    }

    /// The full cell maps, with the ids of `grid(m, t)`.
    fn unpack(&self, g: &FinDoubleCategory) -> Result<FunctorData> {
        let t = self.lay.t;
        let at = |x: usize| (x / (t + 1), x % (t + 1));
        let ob = (0..g.object_count()).map(|x| self.ob(at(x).0, at(x).1)).collect();
        let h = (0..g.horizontal_count())
            .map(|f| {
                let e = g.h(f);
                let ((i0, j), (i1, _)) = (at(e.src), at(e.tgt));
                self.h(i0, i1, j)
            })
            .collect::<Result<_>>()?;
        let v = (0..g.vertical_count())
            .map(|u| {
                let e = g.v(u);
                let ((i, j0), (_, j1)) = (at(e.src), at(e.tgt));
                self.v(i, j0, j1)
            })
            .collect::<Result<_>>()?;
        let sq = (0..g.square_count())
            .map(|s| {
                let q = g.square(s);
                let (top, bottom) = (g.h(q.top), g.h(q.bottom));
                let ((i0, j0), (i1, _), (_, j1)) = (at(top.src), at(top.tgt), at(bottom.src));
                self.sq(i0, i1, j0, j1)
            })
            .collect::<Result<_>>()?;
        Ok(FunctorData { ob, h, v, sq })
    }
}

/// Outgoing horizontals and verticals per object.
struct Adjacency {
    h_out: Vec<Vec<usize>>,
    v_out: Vec<Vec<usize>>,
    objects: Vec<usize>,
}

impl Adjacency {
    fn new(d: &FinDoubleCategory) -> Self {
        let n = d.object_count();
        let mut h_out = vec![Vec::new(); n];
        let mut v_out = vec![Vec::new(); n];
        for f in 0..d.horizontal_count() {
            h_out[d.h(f).src].push(f);
        }
        for u in 0..d.vertical_count() {
            v_out[d.v(u).src].push(u);
        }
        Adjacency {
            h_out,
            v_out,
            objects: (0..n).collect(),
        }
    }
}

/// All double functors `[m, t] -> D`, packed. A grid is free on its unit
/// cells, so choosing generators with matching boundaries is exactly
/// choosing a double functor. Candidates are tried in increasing order, so
/// the rows come out sorted.
fn enumerate_level(d: &FinDoubleCategory, adj: &Adjacency, m: usize, t: usize, budget: &Budget) -> Result<Level> {
    #[allow(clippy::too_many_arguments)]
    fn fill(
        d: &FinDoubleCategory,
        adj: &Adjacency,
        lay: &Layout,
        pos: usize,
        row: &mut [u32],
        rows: &mut Vec<u32>,
        budget: &Budget,
    ) -> Result<()> {
        if pos == lay.width() {
            rows.extend_from_slice(row);
            return Ok(());
        }
        let t = lay.t;
        let ob = |row: &[u32], i: usize, j: usize| row[lay.ob[i * (t + 1) + j]] as usize;
        let cands: &[usize] = match lay.order[pos] {
            Gen::Ob(0, 0) => &adj.objects,
            Gen::Ob(..) => {
                // Reached by the cell just placed.
                let prev = row[pos - 1] as usize;
                row[pos] = match lay.order[pos - 1] {
                    Gen::H(..) => d.h(prev).tgt,
                    _ => d.v(prev).tgt,
                } as u32;
                return fill(d, adj, lay, pos + 1, row, rows, budget);
            }
            Gen::H(i, j) => &adj.h_out[ob(row, i, j)],
            Gen::V(0, j) => &adj.v_out[ob(row, 0, j)],
            Gen::V(i, j) => d.verticals(ob(row, i, j), ob(row, i, j + 1)),
            Gen::Sq(i, j) => {
                let cell = |p: &[usize], k: usize| row[p[k]] as usize;
                d.squares_with(Square::new(
                    cell(&lay.h, i * (t + 1) + j),
                    cell(&lay.h, i * (t + 1) + j + 1),
                    cell(&lay.v, i * t + j),
                    cell(&lay.v, (i + 1) * t + j),
                ))
            }
        };
        for &c in cands {
            budget.tick()?;
            row[pos] = c as u32;
            fill(d, adj, lay, pos + 1, row, rows, budget)?;
        }
        Ok(())
    }
    let layout = Layout::new(m, t);
    let mut rows = Vec::new();
    let mut row = vec![0; layout.width()];
    fill(d, adj, &layout, 0, &mut row, &mut rows, budget)?;
    let mut level = Level { layout, rows };
    if (1..level.len()).any(|e| level.row(e - 1) >= level.row(e)) {
        let mut ids: Vec<usize> = (0..level.len()).collect();
        ids.sort_by(|&x, &y| level.row(x).cmp(level.row(y)));
        level.rows = ids.iter().flat_map(|&e| level.row(e).to_vec()).collect();
    }
    Ok(level)
}

/// Coface `δ_i: [n-1] -> [n]`, skipping `i`.
fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|k| if k < i { k } else { k + 1 }).collect()
}

/// Codegeneracy `σ_i: [n+1] -> [n]`, hitting `i` twice.
fn codegeneracy(n: usize, i: usize) -> Vec<usize> {
    (0..n + 2).map(|k| if k <= i { k } else { k - 1 }).collect()
}

fn missing_face() -> Error {
    Error::invalid("nerve", "a face of a nerve element is missing from its level")
}

/// `N(D)` truncated at `(M, T)`.
pub fn truncated_nerve(d: &FinDoubleCategory, bm: usize, bt: usize, budget: &Budget) -> Result<BisimplicialTruncation> {
    let report = validate_double_category(d);
    if !report.is_empty() {
        return Err(Error::invalid("double category", report.to_string()));
    }
    let largest = d.object_count().max(d.horizontal_count()).max(d.vertical_count()).max(d.square_count());
    if u32::try_from(largest).is_err() {
        return Err(Error::invalid("double category", "too many cells for a nerve"));
    }
    let adj = Adjacency::new(d);
    let levels = (0..=bm)
        .map(|m| (0..=bt).map(|t| enumerate_level(d, &adj, m, t, budget)).collect())
        .collect::<Result<Vec<Vec<Level>>>>()?;
    let mut faces: [Tables; 2] = [Vec::new(), Vec::new()];
    let mut degeneracies: [Tables; 2] = [Vec::new(), Vec::new()];
    let mut key = Vec::new();
    for dir in [Direction::Horizontal, Direction::Vertical] {
        let di = dir.index();
        let top = if di == 0 { bm } else { bt };
        for m in 0..=bm {
            let mut frow = Vec::new();
            let mut drow = Vec::new();
            for t in 0..=bt {
                let n = level_index(dir, m, t);
                let ident = |k: usize| (0..=k).collect::<Vec<_>>();
                let mut maps = |up: bool, i: usize| -> Result<Vec<usize>> {
                    let (m2, t2) = step(dir, m, t, up);
                    let (a, b) = match (dir, up) {
                        (Direction::Horizontal, false) => (coface(m, i), ident(t)),
                        (Direction::Horizontal, true) => (codegeneracy(m, i), ident(t)),
                        (Direction::Vertical, false) => (ident(m), coface(t, i)),
                        (Direction::Vertical, true) => (ident(m), codegeneracy(t, i)),
                    };
                    let (big, small) = (&levels[m][t], &levels[m2][t2]);
                    (0..big.len())
                        .map(|e| {
                            let p = Packed { d, lay: &big.layout, row: big.row(e) };
                            p.restrict(&small.layout, &a, &b, &mut key)?;
                            small.find(&key).ok_or_else(missing_face)
                        })
                        .collect()
                };
                let fs = if n >= 1 { (0..=n).map(|i| maps(false, i)).collect::<Result<Vec<_>>>()? } else { Vec::new() };
                let ds = if n < top { (0..=n).map(|i| maps(true, i)).collect::<Result<Vec<_>>>()? } else { Vec::new() };
                frow.push(fs);
                drow.push(ds);
            }
            faces[di].push(frow);
            degeneracies[di].push(drow);
        }
    }
    let sizes = levels.iter().map(|r| r.iter().map(Level::len).collect()).collect();
    let mut x = BisimplicialTruncation::from_parts((bm, bt), sizes, faces, degeneracies)?;
    x.nerve = Some(Arc::new(NerveLevels { d: d.clone(), levels }));
    Ok(x)
}

/// Every simplicial identity in each direction, and commutation of the
/// operators of the two directions, wherever all maps involved lie inside
/// the bound.
pub fn validate_truncation(x: &BisimplicialTruncation) -> ValidationReport {
    let mut report = ValidationReport::default();
    let (bm, bt) = x.bound;
    let dirs = [Direction::Horizontal, Direction::Vertical];
    for dir in dirs {
        let top = if dir == Direction::Horizontal { bm } else { bt };
        for m in 0..=bm {
            for t in 0..=bt {
                let n = level_index(dir, m, t);
                let face = |m: usize, t: usize, i: usize, e: usize| x.face(dir, m, t, i, e);
                let degen = |m: usize, t: usize, i: usize, e: usize| x.degeneracy(dir, m, t, i, e);
                for e in 0..x.size(m, t) {
                    let mut bad = |axiom: &'static str, detail: String| {
                        report.push(axiom, vec![m, t, e], format!("{} {detail} at ({m}, {t}) element {e}", dir.name()));
                    };
                    // d_i d_j = d_{j-1} d_i for i < j.
                    if n >= 2 {
                        let (m1, t1) = step(dir, m, t, false);
                        for j in 0..=n {
                            for i in 0..j {
                                let l = face(m1, t1, i, face(m, t, j, e));
                                let r = face(m1, t1, j - 1, face(m, t, i, e));
                                if l != r {
                                    bad("face_face", format!("d_{i} d_{j}"));
                                }
                            }
                        }
                    }
                    if n < top {
                        let (m1, t1) = step(dir, m, t, true);
                        // s_i s_j = s_{j+1} s_i for i <= j.
                        if n + 1 < top {
                            for j in 0..=n {
                                for i in 0..=j {
                                    let l = degen(m1, t1, i, degen(m, t, j, e));
                                    let r = degen(m1, t1, j + 1, degen(m, t, i, e));
                                    if l != r {
                                        bad("degeneracy_degeneracy", format!("s_{i} s_{j}"));
                                    }
                                }
                            }
                        }
                        // Mixed identities for d_i s_j.
                        for j in 0..=n {
                            let s = degen(m, t, j, e);
                            for i in 0..=n + 1 {
                                let l = face(m1, t1, i, s);
                                // Off the diagonal n >= 1, so the face below exists.
                                let r = if i == j || i == j + 1 {
                                    e
                                } else if i < j {
                                    let (m0, t0) = step(dir, m, t, false);
                                    degen(m0, t0, j - 1, face(m, t, i, e))
                                } else {
                                    let (m0, t0) = step(dir, m, t, false);
                                    degen(m0, t0, j, face(m, t, i - 1, e))
                                };
                                if r != l {
                                    bad("face_degeneracy", format!("d_{i} s_{j}"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    // Operators of the two directions commute.
    let (h, v) = (Direction::Horizontal, Direction::Vertical);
    for m in 0..=bm {
        for t in 0..=bt {
            for e in 0..x.size(m, t) {
                let mut check = |ok: bool, what: String| {
                    if !ok {
                        report.push("directions_commute", vec![m, t, e], format!("{what} at ({m}, {t}) element {e}"));
                    }
                };
                if m >= 1 && t >= 1 {
                    for i in 0..=m {
                        for j in 0..=t {
                            let l = x.face(v, m - 1, t, j, x.face(h, m, t, i, e));
                            let r = x.face(h, m, t - 1, i, x.face(v, m, t, j, e));
                            check(l == r, format!("horizontal d_{i} and vertical d_{j}"));
                        }
                    }
                }
                if m < bm && t < bt {
                    for i in 0..=m {
                        for j in 0..=t {
                            let l = x.degeneracy(v, m + 1, t, j, x.degeneracy(h, m, t, i, e));
                            let r = x.degeneracy(h, m, t + 1, i, x.degeneracy(v, m, t, j, e));
                            check(l == r, format!("horizontal s_{i} and vertical s_{j}"));
                        }
                    }
                }
                if m >= 1 && t < bt {
                    for i in 0..=m {
                        for j in 0..=t {
                            let l = x.degeneracy(v, m - 1, t, j, x.face(h, m, t, i, e));
                            let r = x.face(h, m, t + 1, i, x.degeneracy(v, m, t, j, e));
                            check(l == r, format!("horizontal d_{i} and vertical s_{j}"));
                        }
                    }
                }
                if t >= 1 && m < bm {
                    for i in 0..=m {
                        for j in 0..=t {
                            let l = x.degeneracy(h, m, t - 1, i, x.face(v, m, t, j, e));
                            let r = x.face(v, m + 1, t, j, x.degeneracy(h, m, t, i, e));
                            check(l == r, format!("vertical d_{j} and horizontal s_{i}"));
                        }
                    }
                }
            }
        }
    }
    report
}

/// Why a Segal map is not a bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegalFailure {
    /// Two elements of `X_{m,t}` share their spine.
    NotInjective {
        direction: Direction,
        m: usize,
        t: usize,
        first: usize,
        second: usize,
    },
    /// A composable chain of 1-simplices with no filler.
    NotSurjective {
        direction: Direction,
        m: usize,
        t: usize,
        spine: Vec<usize>,
    },
    /// The spine of an element is not a composable chain.
    NotAChain {
        direction: Direction,
        m: usize,
        t: usize,
        element: usize,
    },
}

impl fmt::Display for SegalFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SegalFailure::NotInjective { direction, m, t, first, second } => write!(
                f,
                "{} Segal map at ({m}, {t}) sends elements {first} and {second} to the same chain",
                direction.name()
            ),
            SegalFailure::NotSurjective { direction, m, t, spine } => write!(
                f,
                "{} Segal map at ({m}, {t}) misses the chain {spine:?}",
                direction.name()
            ),
            SegalFailure::NotAChain { direction, m, t, element } => write!(
                f,
                "{} spine of element {element} at ({m}, {t}) is not composable",
                direction.name()
            ),
        }
    }
}

/// The level `(m, t)` with the index of `dir` replaced by `n`.
fn at(dir: Direction, m: usize, t: usize, n: usize) -> (usize, usize) {
    match dir {
        Direction::Horizontal => (n, t),
        Direction::Vertical => (m, n),
    }
}

/// The spine of `e ∈ X_{m,t}` in direction `dir`: its restrictions to the
/// consecutive pairs `{k-1, k}`, as elements of the 1-level.
fn spine(x: &BisimplicialTruncation, dir: Direction, m: usize, t: usize, e: usize) -> Vec<usize> {
    let n = level_index(dir, m, t);
    (1..=n)
        .map(|k| {
            let mut y = e;
            // Drop the vertices above k, then the ones below k-1.
            for top in (k + 1..=n).rev() {
                let (a, b) = at(dir, m, t, top);
                y = x.face(dir, a, b, top, y);
            }
            for below in 0..k - 1 {
                let (a, b) = at(dir, m, t, k - below);
                y = x.face(dir, a, b, 0, y);
            }
            y
        })
        .collect()
}

/// Checks that every Segal map in direction `dir` is a bijection, returning
/// the first counterexample.
pub fn segal_failure(x: &BisimplicialTruncation, dir: Direction) -> Result<Option<SegalFailure>> {
    let (bm, bt) = x.bound;
    let top = level_index(dir, bm, bt);
    if top < 2 {
        return Err(Error::Precondition(format!(
            "the {} bound must be at least 2 for a Segal check",
            dir.name()
        )));
    }
    let across = match dir {
        Direction::Horizontal => bt,
        Direction::Vertical => bm,
    };
    for n in 2..=top {
        for other in 0..=across {
            let (m, t) = match dir {
                Direction::Horizontal => (n, other),
                Direction::Vertical => (other, n),
            };
            let (m1, t1) = at(dir, m, t, 1);
            let (m0, t0) = at(dir, m, t, 0);
            // Source and target of a 1-simplex.
            let src = |e: usize| x.face(dir, m1, t1, 1, e);
            let tgt = |e: usize| x.face(dir, m1, t1, 0, e);
            let mut seen: FxHashMap<Vec<usize>, usize> = FxHashMap::default();
            for e in 0..x.size(m, t) {
                let s = spine(x, dir, m, t, e);
                if s.windows(2).any(|w| tgt(w[0]) != src(w[1])) {
                    return Ok(Some(SegalFailure::NotAChain { direction: dir, m, t, element: e }));
                }
                if let Some(&first) = seen.get(&s) {
                    return Ok(Some(SegalFailure::NotInjective { direction: dir, m, t, first, second: e }));
                }
                seen.insert(s, e);
            }
            // Count chains of length n; equal counts and injectivity give a
            // bijection.
            let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); x.size(m0, t0)];
            for e in 0..x.size(m1, t1) {
                by_src[src(e)].push(e);
            }
            let mut ways: Vec<u128> = vec![1; x.size(m0, t0)];
            for _ in 0..n {
                ways = (0..x.size(m0, t0))
                    .map(|o| by_src[o].iter().map(|&e| ways[tgt(e)]).sum())
                    .collect();
            }
            let chains: u128 = ways.iter().sum();
            if chains != seen.len() as u128 {
                let spine = missing_chain(&by_src, &tgt, n, &seen).ok_or_else(|| {
                    Error::invalid("segal check", "chain count disagrees with enumeration")
                })?;
                return Ok(Some(SegalFailure::NotSurjective { direction: dir, m, t, spine }));
            }
        }
    }
    Ok(None)
}

fn missing_chain(
    by_src: &[Vec<usize>],
    tgt: &dyn Fn(usize) -> usize,
    n: usize,
    seen: &FxHashMap<Vec<usize>, usize>,
) -> Option<Vec<usize>> {
    fn go(
        by_src: &[Vec<usize>],
        tgt: &dyn Fn(usize) -> usize,
        n: usize,
        seen: &FxHashMap<Vec<usize>, usize>,
        chain: &mut Vec<usize>,
        at: usize,
    ) -> Option<Vec<usize>> {
        if chain.len() == n {
            return (!seen.contains_key(chain)).then(|| chain.clone());
        }
        for &e in &by_src[at] {
            chain.push(e);
            if let Some(c) = go(by_src, tgt, n, seen, chain, tgt(e)) {
                return Some(c);
            }
            chain.pop();
        }
        None
    }
    (0..by_src.len()).find_map(|o| go(by_src, tgt, n, seen, &mut Vec::new(), o))
}

pub fn segal_check(x: &BisimplicialTruncation, dir: Direction) -> Result<bool> {
    Ok(segal_failure(x, dir)?.is_none())
}

/// The levelwise map `N(F): N(D) -> N(E)` between truncations with the same
/// bound, given by postcomposition.
pub fn nerve_map(f: &DoubleFunctor, x: &BisimplicialTruncation, y: &BisimplicialTruncation) -> Result<Vec<Vec<Vec<usize>>>> {
    let (Some(xs), Some(ys)) = (&x.nerve, &y.nerve) else {
        return Err(Error::Precondition("both truncations must be nerves".into()));
    };
    if x.bound != y.bound {
        return Err(Error::BoundaryMismatch("truncations have different bounds".into()));
    }
    if xs.d != *f.dom || ys.d != *f.cod {
        return Err(Error::BoundaryMismatch("the functor does not run between the two nerves".into()));
    }
    let mut key = Vec::new();
    xs.levels
        .iter()
        .zip(&ys.levels)
        .map(|(xr, yr)| {
            xr.iter()
                .zip(yr)
                .map(|(xl, yl)| {
                    (0..xl.len())
                        .map(|e| {
                            key.clear();
                            for (g, &c) in xl.layout.order.iter().zip(xl.row(e)) {
                                let c = c as usize;
                                key.push(match g {
                                    Gen::Ob(..) => f.ob_map[c],
                                    Gen::H(..) => f.h_map[c],
                                    Gen::V(..) => f.v_map[c],
                                    Gen::Sq(..) => f.sq_map[c],
                                } as u32);
                            }
                            yl.find(&key)
                                .ok_or_else(|| Error::invalid("nerve map", "an image is missing from the target level"))
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Whether a levelwise map commutes with every face and degeneracy.
pub fn is_simplicial_map(x: &BisimplicialTruncation, y: &BisimplicialTruncation, map: &[Vec<Vec<usize>>]) -> bool {
    let (bm, bt) = x.bound;
    for dir in [Direction::Horizontal, Direction::Vertical] {
        let top = level_index(dir, bm, bt);
        for m in 0..=bm {
            for t in 0..=bt {
                let n = level_index(dir, m, t);
                for e in 0..x.size(m, t) {
                    if n >= 1 {
                        let (a, b) = step(dir, m, t, false);
                        for i in 0..=n {
                            if map[a][b][x.face(dir, m, t, i, e)] != y.face(dir, m, t, i, map[m][t][e]) {
                                return false;
                            }
                        }
                    }
                    if n < top {
                        let (a, b) = step(dir, m, t, true);
                        for i in 0..=n {
                            if map[a][b][x.degeneracy(dir, m, t, i, e)] != y.degeneracy(dir, m, t, i, map[m][t][e]) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}
