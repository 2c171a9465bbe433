//! Finite categories given by fully materialized composition tables.
//!
//! Objects and morphisms are dense ids starting at 0. Every search in this
//! module runs in ascending id order, so results are reproducible.

use std::sync::Arc;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::lazy::Cache;
use crate::report::ValidationReport;

/// Source and target of a morphism (or of any 1-dimensional cell).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
}

impl Arrow {
    pub fn new(src: usize, tgt: usize) -> Self {
        Arrow { src, tgt }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: usize,
    morphisms: Vec<Arrow>,
    identities: Vec<usize>,
    /// `(g, f) -> g∘f`, defined exactly when `src(g) = tgt(f)`.
    comp: FxHashMap<(usize, usize), usize>,
    homs: Cache<FxHashMap<(usize, usize), Vec<usize>>>,
}

impl FinCategory {
    /// Builds a category from raw tables. Only id ranges are checked here;
    /// the axioms are checked by [`validate_category`].
    pub fn new(
        objects: usize,
        morphisms: Vec<Arrow>,
        identities: Vec<usize>,
        comp: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        if identities.len() != objects {
            return Err(Error::invalid(
                "category",
                format!("{} identities for {} objects", identities.len(), objects),
            ));
        }
        for (m, a) in morphisms.iter().enumerate() {
            if a.src >= objects || a.tgt >= objects {
                return Err(Error::invalid(
                    "category",
                    format!("morphism {m} has endpoint out of range"),
                ));
            }
        }
        for &i in &identities {
            if i >= morphisms.len() {
                return Err(Error::UnknownCell {
                    kind: "morphism",
                    id: i,
                });
            }
        }
        let mut table = FxHashMap::default();
        for (g, f, h) in comp {
            for id in [g, f, h] {
                if id >= morphisms.len() {
                    return Err(Error::UnknownCell {
                        kind: "morphism",
                        id,
                    });
                }
            }
            if table.insert((g, f), h).is_some() {
                return Err(Error::invalid(
                    "category",
                    format!("duplicate composition entry ({g}, {f})"),
                ));
            }
        }
        Ok(FinCategory {
            objects,
            morphisms,
            identities,
            comp: table,
            homs: Cache::new(),
        })
    }

    /// Builds a category whose composition is computed by `compose` on every
    /// composable pair.
    pub fn from_fn(
        objects: usize,
        morphisms: Vec<Arrow>,
        identities: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        let mut triples = Vec::new();
        for (f, af) in morphisms.iter().enumerate() {
            for (g, ag) in morphisms.iter().enumerate() {
                if ag.src == af.tgt {
                    triples.push((g, f, compose(g, f)));
                }
            }
        }
        FinCategory::new(objects, morphisms, identities, triples)
    }

    pub fn terminal() -> Self {
        FinCategory::new(1, vec![Arrow::new(0, 0)], vec![0], [(0, 0, 0)]).expect("terminal")
    }

    pub fn empty() -> Self {
        FinCategory::new(0, vec![], vec![], []).expect("empty")
    }

    /// The poset `[n] = {0 < 1 < ... < n}`; morphism ids are ordered by
    /// `(src, tgt)` lexicographically.
    pub fn ordinal(n: usize) -> Self {
        let mut morphisms = Vec::new();
        let mut index = FxHashMap::default();
        for i in 0..=n {
            for j in i..=n {
                index.insert((i, j), morphisms.len());
                morphisms.push(Arrow::new(i, j));
            }
        }
        let identities = (0..=n).map(|i| index[&(i, i)]).collect();
        let arrows = morphisms.clone();
        FinCategory::from_fn(n + 1, morphisms, identities, |g, f| {
            index[&(arrows[f].src, arrows[g].tgt)]
        })
        .expect("ordinal")
    }

    /// Two objects and a single isomorphism between them.
    pub fn walking_isomorphism() -> Self {
        // 0: id0, 1: id1, 2: f: 0 -> 1, 3: g: 1 -> 0
        let morphisms = vec![
            Arrow::new(0, 0),
            Arrow::new(1, 1),
            Arrow::new(0, 1),
            Arrow::new(1, 0),
        ];
        let arrows = morphisms.clone();
        FinCategory::from_fn(2, morphisms, vec![0, 1], |g, f| {
            let (s, t) = (arrows[f].src, arrows[g].tgt);
            match (s, t) {
                (0, 0) => 0,
                (1, 1) => 1,
                (0, 1) => 2,
                _ => 3,
            }
        })
        .expect("walking isomorphism")
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphisms(&self) -> &[Arrow] {
        &self.morphisms
    }

    pub fn arrow(&self, m: usize) -> Arrow {
        self.morphisms[m]
    }

    pub fn src(&self, m: usize) -> usize {
        self.morphisms[m].src
    }

    pub fn tgt(&self, m: usize) -> usize {
        self.morphisms[m].tgt
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, m: usize) -> bool {
        let a = self.morphisms[m];
        a.src == a.tgt && self.identities[a.src] == m
    }

    /// `g∘f`, or `None` when the pair is not composable or missing.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp.get(&(g, f)).copied()
    }

    /// Composition triples `(g, f, g∘f)` sorted by `(g, f)`.
    pub fn composition_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut v: Vec<_> = self.comp.iter().map(|(&(g, f), &h)| (g, f, h)).collect();
        v.sort_unstable();
        v
    }

    /// Morphisms `x -> y` in ascending id order.
    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        let homs = self.homs.get_or_init(|| {
            let mut m: FxHashMap<(usize, usize), Vec<usize>> = FxHashMap::default();
            for (i, a) in self.morphisms.iter().enumerate() {
                m.entry((a.src, a.tgt)).or_default().push(i);
            }
            m
        });
        homs.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    }

    fn check_morphism(&self, m: usize) -> Result<()> {
        if m < self.morphisms.len() {
            Ok(())
        } else {
            Err(Error::UnknownCell {
                kind: "morphism",
                id: m,
            })
        }
    }

    /// Whether there is an isomorphism `x -> y`.
    pub fn isomorphic(&self, x: usize, y: usize) -> bool {
        self.hom(x, y)
            .iter()
            .any(|&m| matches!(is_isomorphism(self, m), Ok(Some(_))))
    }
}

/// Exhaustive axiom scan.
///
/// Each composition entry is blamed at most once: a bad entry involving an
/// identity is reported as a unit violation, any other bad entry as a
/// boundary violation, and associativity is only evaluated on triples whose
/// entries passed the earlier checks.
pub fn validate_category(c: &FinCategory) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (x, &i) in c.identities.iter().enumerate() {
        let a = c.morphisms[i];
        if a.src != x || a.tgt != x {
            report.push(
                "identity_boundary",
                vec![x, i],
                format!("identity {i} of object {x} is {} -> {}", a.src, a.tgt),
            );
        }
    }
    let mut blamed: FxHashSet<(usize, usize)> = FxHashSet::default();
    for &(g, f) in sorted_keys(&c.comp).iter() {
        if c.morphisms[g].src != c.morphisms[f].tgt {
            report.push(
                "composition_domain",
                vec![g, f],
                format!("entry ({g}, {f}) for a non-composable pair"),
            );
            blamed.insert((g, f));
        }
    }
    for (f, a) in c.morphisms.iter().enumerate() {
        for (g, b) in c.morphisms.iter().enumerate() {
            if b.src == a.tgt && !c.comp.contains_key(&(g, f)) {
                report.push(
                    "composition_total",
                    vec![g, f],
                    format!("missing composite of ({g}, {f})"),
                );
                blamed.insert((g, f));
            }
        }
    }
    for (f, a) in c.morphisms.iter().enumerate() {
        let left = c.identities[a.tgt];
        if let Some(h) = c.compose(left, f) {
            if h != f && blamed.insert((left, f)) {
                report.push(
                    "left_unit",
                    vec![left, f],
                    format!("id∘{f} = {h}, expected {f}"),
                );
            }
        }
        let right = c.identities[a.src];
        if let Some(h) = c.compose(f, right) {
            if h != f && blamed.insert((f, right)) {
                report.push(
                    "right_unit",
                    vec![f, right],
                    format!("{f}∘id = {h}, expected {f}"),
                );
            }
        }
    }
    for &(g, f) in sorted_keys(&c.comp).iter() {
        if blamed.contains(&(g, f)) {
            continue;
        }
        let h = c.comp[&(g, f)];
        let (af, ag, ah) = (c.morphisms[f], c.morphisms[g], c.morphisms[h]);
        if ah.src != af.src || ah.tgt != ag.tgt {
            report.push(
                "composition_boundary",
                vec![g, f, h],
                format!("{g}∘{f} = {h} has the wrong endpoints"),
            );
            blamed.insert((g, f));
        }
    }
    let ok = |g: usize, f: usize| -> Option<usize> {
        if blamed.contains(&(g, f)) {
            None
        } else {
            c.compose(g, f)
        }
    };
    for (f, a) in c.morphisms.iter().enumerate() {
        for y in 0..c.objects {
            for &g in c.hom(a.tgt, y) {
                let Some(gf) = ok(g, f) else { continue };
                for z in 0..c.objects {
                    for &h in c.hom(y, z) {
                        let (Some(hg), Some(h_gf)) = (ok(h, g), ok(h, gf)) else {
                            continue;
                        };
                        let Some(hg_f) = ok(hg, f) else { continue };
                        if h_gf != hg_f {
                            report.push(
                                "associativity",
                                vec![h, g, f],
                                format!("({h}∘{g})∘{f} = {hg_f} but {h}∘({g}∘{f}) = {h_gf}"),
                            );
                        }
                    }
                }
            }
        }
    }
    report
}

fn sorted_keys<V>(m: &FxHashMap<(usize, usize), V>) -> Vec<(usize, usize)> {
    let mut v: Vec<_> = m.keys().copied().collect();
    v.sort_unstable();
    v
}

/// Returns the inverse of `m` when it is an isomorphism. The smallest-id
/// inverse is returned (inverses are unique in a valid category anyway).
pub fn is_isomorphism(c: &FinCategory, m: usize) -> Result<Option<usize>> {
    c.check_morphism(m)?;
    let a = c.morphisms[m];
    for &n in c.hom(a.tgt, a.src) {
        if c.compose(n, m) == Some(c.identities[a.src])
            && c.compose(m, n) == Some(c.identities[a.tgt])
        {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    pub dom: Arc<FinCategory>,
    pub cod: Arc<FinCategory>,
    pub ob_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl Functor {
    pub fn identity(c: Arc<FinCategory>) -> Self {
        Functor {
            ob_map: (0..c.object_count()).collect(),
            mor_map: (0..c.morphism_count()).collect(),
            dom: c.clone(),
            cod: c,
        }
    }

    pub fn compose(&self, after: &Functor) -> Result<Functor> {
        if self.cod != after.dom {
            return Err(Error::BoundaryMismatch(
                "functor codomain differs from next domain".into(),
            ));
        }
        Ok(Functor {
            dom: self.dom.clone(),
            cod: after.cod.clone(),
            ob_map: self.ob_map.iter().map(|&x| after.ob_map[x]).collect(),
            mor_map: self.mor_map.iter().map(|&m| after.mor_map[m]).collect(),
        })
    }
}

pub fn validate_functor(f: &Functor) -> ValidationReport {
    let mut report = ValidationReport::default();
    let (d, c) = (&*f.dom, &*f.cod);
    if f.ob_map.len() != d.object_count() || f.mor_map.len() != d.morphism_count() {
        report.push("functor_shape", vec![], "map sizes do not match the domain".into());
        return report;
    }
    if f.ob_map.iter().any(|&x| x >= c.object_count())
        || f.mor_map.iter().any(|&m| m >= c.morphism_count())
    {
        report.push("functor_range", vec![], "image id out of range".into());
        return report;
    }
    for (m, a) in d.morphisms().iter().enumerate() {
        let b = c.arrow(f.mor_map[m]);
        if b.src != f.ob_map[a.src] || b.tgt != f.ob_map[a.tgt] {
            report.push("functor_boundary", vec![m], format!("image of {m} has wrong endpoints"));
        }
    }
    for x in 0..d.object_count() {
        if f.mor_map[d.identity(x)] != c.identity(f.ob_map[x]) {
            report.push("functor_identity", vec![x], format!("identity of {x} not preserved"));
        }
    }
    for (g, fm, h) in d.composition_triples() {
        if c.compose(f.mor_map[g], f.mor_map[fm]) != Some(f.mor_map[h]) {
            report.push(
                "functor_composition",
                vec![g, fm],
                format!("composite {g}∘{fm} not preserved"),
            );
        }
    }
    report
}

/// Fully faithful and essentially surjective.
pub fn is_equivalence_functor(f: &Functor) -> Result<bool> {
    let report = validate_functor(f);
    if !report.is_empty() {
        return Err(Error::invalid("functor", report.to_string()));
    }
    Ok(equivalence_unchecked(&f.dom, &f.cod, &f.ob_map, &f.mor_map))
}

/// Equivalence test on raw maps; assumes a valid functor.
pub(crate) fn equivalence_unchecked(
    d: &FinCategory,
    c: &FinCategory,
    ob_map: &[usize],
    mor_map: &[usize],
) -> bool {
    for x in 0..d.object_count() {
        for y in 0..d.object_count() {
            let src = d.hom(x, y);
            let tgt = c.hom(ob_map[x], ob_map[y]);
            if src.len() != tgt.len() {
                return false;
            }
            let mut seen = FxHashSet::default();
            for &m in src {
                if !seen.insert(mor_map[m]) {
                    return false;
                }
            }
        }
    }
    let images: FxHashSet<usize> = ob_map.iter().copied().collect();
    (0..c.object_count()).all(|z| images.contains(&z) || images.iter().any(|&w| c.isomorphic(w, z)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTransformation {
    pub dom: Functor,
    pub cod: Functor,
    pub components: Vec<usize>,
}

pub fn validate_nat_transformation(t: &NatTransformation) -> ValidationReport {
    let mut report = ValidationReport::default();
    let (f, g) = (&t.dom, &t.cod);
    if f.dom != g.dom || f.cod != g.cod {
        report.push("parallel", vec![], "functors are not parallel".into());
        return report;
    }
    let c = &*f.cod;
    for x in 0..f.dom.object_count() {
        let a = c.arrow(t.components[x]);
        if a.src != f.ob_map[x] || a.tgt != g.ob_map[x] {
            report.push("component_boundary", vec![x], format!("component at {x}"));
        }
    }
    if !report.is_empty() {
        return report;
    }
    for (m, a) in f.dom.morphisms().iter().enumerate() {
        let lhs = c.compose(g.mor_map[m], t.components[a.src]);
        let rhs = c.compose(t.components[a.tgt], f.mor_map[m]);
        if lhs.is_none() || lhs != rhs {
            report.push("naturality", vec![m], format!("naturality square at {m}"));
        }
    }
    report
}

/// Strict pullback of `F: A -> C <- B: G` with its two projections.
pub fn pullback_cat(f: &Functor, g: &Functor) -> Result<(Arc<FinCategory>, Functor, Functor)> {
    if f.cod != g.cod {
        return Err(Error::BoundaryMismatch("pullback legs have different codomains".into()));
    }
    let (a, b) = (&*f.dom, &*g.dom);
    let mut objects = Vec::new();
    let mut ob_index = FxHashMap::default();
    for x in 0..a.object_count() {
        for y in 0..b.object_count() {
            if f.ob_map[x] == g.ob_map[y] {
                ob_index.insert((x, y), objects.len());
                objects.push((x, y));
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut pairs = Vec::new();
    let mut mor_index = FxHashMap::default();
    for (m, am) in a.morphisms().iter().enumerate() {
        for (n, bn) in b.morphisms().iter().enumerate() {
            if f.mor_map[m] == g.mor_map[n] {
                let (Some(&s), Some(&t)) = (
                    ob_index.get(&(am.src, bn.src)),
                    ob_index.get(&(am.tgt, bn.tgt)),
                ) else {
                    continue;
                };
                mor_index.insert((m, n), morphisms.len());
                morphisms.push(Arrow::new(s, t));
                pairs.push((m, n));
            }
        }
    }
    let identities = objects
        .iter()
        .map(|&(x, y)| mor_index[&(a.identity(x), b.identity(y))])
        .collect();
    let p = pairs.clone();
    let cat = FinCategory::from_fn(objects.len(), morphisms, identities, |h, k| {
        let (g1, g2) = p[h];
        let (f1, f2) = p[k];
        mor_index[&(a.compose(g1, f1).unwrap(), b.compose(g2, f2).unwrap())]
    })?;
    let cat = Arc::new(cat);
    let p1 = Functor {
        dom: cat.clone(),
        cod: f.dom.clone(),
        ob_map: objects.iter().map(|o| o.0).collect(),
        mor_map: pairs.iter().map(|p| p.0).collect(),
    };
    let p2 = Functor {
        dom: cat.clone(),
        cod: g.dom.clone(),
        ob_map: objects.iter().map(|o| o.1).collect(),
        mor_map: pairs.iter().map(|p| p.1).collect(),
    };
    Ok((cat, p1, p2))
}

/// Product of two categories, objects and morphisms ordered lexicographically.
pub fn product_cat(a: &FinCategory, b: &FinCategory) -> FinCategory {
    let nb_o = b.object_count();
    let nb_m = b.morphism_count();
    let mut morphisms = Vec::new();
    for am in a.morphisms() {
        for bm in b.morphisms() {
            morphisms.push(Arrow::new(am.src * nb_o + bm.src, am.tgt * nb_o + bm.tgt));
        }
    }
    let identities = (0..a.object_count() * nb_o)
        .map(|o| a.identity(o / nb_o) * nb_m + b.identity(o % nb_o))
        .collect();
    FinCategory::from_fn(a.object_count() * nb_o, morphisms, identities, |g, f| {
        let ga = g / nb_m;
        let gb = g % nb_m;
        let fa = f / nb_m;
        let fb = f % nb_m;
        a.compose(ga, fa).unwrap() * nb_m + b.compose(gb, fb).unwrap()
    })
    .expect("product")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow_cat() -> FinCategory {
        FinCategory::ordinal(1)
    }

    #[test]
    fn terminal_and_arrow_validate() {
        assert!(validate_category(&FinCategory::terminal()).is_empty());
        let c = arrow_cat();
        assert_eq!(c.object_count(), 2);
        assert_eq!(c.morphism_count(), 3);
        assert!(validate_category(&c).is_empty());
        assert!(validate_category(&FinCategory::walking_isomorphism()).is_empty());
        assert!(validate_category(&FinCategory::ordinal(3)).is_empty());
    }

    #[test]
    fn redirected_unit_entry_gives_one_unit_violation() {
        // [1]: 0 = id0, 1 = arrow 0->1, 2 = id1. Send arrow∘id0 to id0.
        let c = arrow_cat();
        let mut triples = c.composition_triples();
        for t in triples.iter_mut() {
            if (t.0, t.1) == (1, 0) {
                t.2 = 0;
            }
        }
        let broken = FinCategory::new(2, c.morphisms().to_vec(), c.identities().to_vec(), triples)
            .unwrap();
        let report = validate_category(&broken);
        assert_eq!(report.len(), 1, "{report}");
        assert_eq!(report.violations[0].axiom, "right_unit");
    }

    #[test]
    fn isomorphism_detection() {
        let c = arrow_cat();
        assert_eq!(is_isomorphism(&c, 0).unwrap(), Some(0));
        assert_eq!(is_isomorphism(&c, 1).unwrap(), None);
        let w = FinCategory::walking_isomorphism();
        assert_eq!(is_isomorphism(&w, 2).unwrap(), Some(3));
        assert_eq!(is_isomorphism(&w, 3).unwrap(), Some(2));
        assert!(is_isomorphism(&w, 7).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let a = Arc::new(arrow_cat());
        assert!(is_equivalence_functor(&Functor::identity(a.clone())).unwrap());
        let t = Arc::new(FinCategory::terminal());
        let collapse = Functor {
            dom: a.clone(),
            cod: t.clone(),
            ob_map: vec![0, 0],
            mor_map: vec![0, 0, 0],
        };
        assert!(!is_equivalence_functor(&collapse).unwrap());
        let w = Arc::new(FinCategory::walking_isomorphism());
        let incl = Functor {
            dom: t.clone(),
            cod: w,
            ob_map: vec![0],
            mor_map: vec![0],
        };
        assert!(is_equivalence_functor(&incl).unwrap());
        let bad = Functor {
            dom: a,
            cod: t,
            ob_map: vec![0, 0],
            mor_map: vec![0, 0],
        };
        assert!(is_equivalence_functor(&bad).is_err());
    }

    #[test]
    fn pullbacks() {
        let a = Arc::new(arrow_cat());
        let id = Functor::identity(a.clone());
        let (p, _, _) = pullback_cat(&id, &id).unwrap();
        assert_eq!((p.object_count(), p.morphism_count()), (2, 3));
        assert!(validate_category(&p).is_empty());

        let t = Arc::new(FinCategory::terminal());
        let to_t = |c: Arc<FinCategory>| Functor {
            ob_map: vec![0; c.object_count()],
            mor_map: vec![0; c.morphism_count()],
            dom: c,
            cod: t.clone(),
        };
        let w = Arc::new(FinCategory::walking_isomorphism());
        let (prod, _, _) = pullback_cat(&to_t(a.clone()), &to_t(w.clone())).unwrap();
        assert_eq!(prod.object_count(), 4);
        assert_eq!(prod.morphism_count(), 12);
        assert_eq!(*prod, product_cat(&a, &w));

        let point = |x: usize| Functor {
            dom: t.clone(),
            cod: a.clone(),
            ob_map: vec![x],
            mor_map: vec![a.identity(x)],
        };
        let (empty, _, _) = pullback_cat(&point(0), &point(1)).unwrap();
        assert_eq!(empty.object_count(), 0);
        assert_eq!(empty.morphism_count(), 0);
        assert!(pullback_cat(&id, &to_t(a.clone())).is_err());
    }

    #[test]
    fn naturality_check() {
        let a = Arc::new(arrow_cat());
        let id = Functor::identity(a.clone());
        let t = NatTransformation {
            dom: id.clone(),
            cod: id,
            components: vec![0, 2],
        };
        assert!(validate_nat_transformation(&t).is_empty());
    }
}
