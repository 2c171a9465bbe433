use super::*;
use crate::corpus::{self, all_cones, DiagramCase};
use crate::dblcat::{
    bold_h, embed_h, embed_h_functor, embed_htilde, htilde_inclusion, iso_search, iso_search_labeled,
    CellKeys,
};
use crate::fincat::Arrow;
use crate::twocat::{self, is_homotopy_2limit_oracle, FinTwoCategory};
use rustc_hash::FxHashMap;

fn budget() -> Budget {
    Budget::unlimited()
}

/// Diagrams whose cone double categories stay small. The large ones, into
/// the adjoint equivalence, run in the acceptance suite.
fn small_cases() -> Vec<DiagramCase> {
    corpus::diagrams()
        .into_iter()
        .filter(|c| c.target != "adjoint_equivalence")
        .collect()
}

fn case(name: &str) -> DiagramCase {
    corpus::diagrams()
        .into_iter()
        .find(|c| c.name == name)
        .expect("corpus diagram")
}

/// The pseudo-cone 2-category over `k`, assembled from pseudo-cones,
/// invertible modifications `λ => λ'∘Δf` and 2-cells `α: f => g` with
/// `(λ'α)·φ = ψ`. Independent of the double-categorical machinery.
fn pseudo_cone_2cat(k: &TwoFunctor) -> FinTwoCategory {
    let c = &*k.cod;
    let cones = all_cones(k, &budget()).unwrap();
    let mut ones: Vec<(usize, usize, usize, Vec<usize>)> = Vec::new();
    for (a, la) in cones.iter().enumerate() {
        let delta = TwoFunctor::constant(k.dom.clone(), k.cod.clone(), la.summit);
        for (b, lb) in cones.iter().enumerate() {
            for &f in c.one_cells(la.summit, lb.summit) {
                let w = lb.precompose(c, f).unwrap();
                let mods =
                    twocat::modifications(&delta, k, &la.transformation, &w.transformation, &budget())
                        .unwrap();
                for m in mods {
                    if m.iter().all(|&x| c.is_invertible2(x)) {
                        ones.push((a, b, f, m));
                    }
                }
            }
        }
    }
    let one_ix: FxHashMap<(usize, usize, usize, Vec<usize>), usize> =
        ones.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
    let id1 = cones
        .iter()
        .enumerate()
        .map(|(a, l)| {
            let comps = l.transformation.ones.iter().map(|&x| c.id2(x)).collect();
            one_ix[&(a, a, c.id1(l.summit), comps)]
        })
        .collect();
    let mut twos: Vec<(usize, usize, usize)> = Vec::new();
    for (p, (a, b, f, phi)) in ones.iter().enumerate() {
        for (q, (a2, b2, g, psi)) in ones.iter().enumerate() {
            if (a, b) != (a2, b2) {
                continue;
            }
            let lam = &cones[*b].transformation.ones;
            for &alpha in c.two_cells(*f, *g) {
                let ok = (0..lam.len()).all(|j| {
                    let w = c.hcomp(c.id2(lam[j]), alpha).unwrap();
                    c.vcomp(w, phi[j]) == Some(psi[j])
                });
                if ok {
                    twos.push((p, q, alpha));
                }
            }
        }
    }
    let two_ix: FxHashMap<(usize, usize, usize), usize> =
        twos.iter().copied().enumerate().map(|(i, t)| (t, i)).collect();
    let id2 = ones
        .iter()
        .enumerate()
        .map(|(p, o)| two_ix[&(p, p, c.id2(o.2))])
        .collect();
    let comp1 = |g: usize, f: usize| {
        let (a, _, f1, phi) = &ones[f];
        let (_, b, g1, psi) = &ones[g];
        let comps = phi
            .iter()
            .zip(psi)
            .map(|(&x, &y)| c.vcomp(c.hcomp(y, c.id2(*f1)).unwrap(), x).unwrap())
            .collect();
        one_ix[&(*a, *b, c.comp1(*g1, *f1).unwrap(), comps)]
    };
    let vcomp = |y: usize, x: usize| {
        let (p, _, s) = twos[x];
        let (_, r, t) = twos[y];
        two_ix[&(p, r, c.vcomp(t, s).unwrap())]
    };
    let hcomp = |y: usize, x: usize| {
        let (p1, q1, s) = twos[x];
        let (p2, q2, t) = twos[y];
        two_ix[&(comp1(p2, p1), comp1(q2, q1), c.hcomp(t, s).unwrap())]
    };
    FinTwoCategory::from_fn(
        cones.len(),
        ones.iter().map(|o| Arrow::new(o.0, o.1)).collect(),
        id1,
        comp1,
        twos.iter().map(|t| Arrow::new(t.0, t.1)).collect(),
        id2,
        vcomp,
        hcomp,
    )
    .unwrap()
}

/// `d` as a diagram out of the terminal 2-category.
fn point_of(c: &Arc<FinTwoCategory>, d: usize) -> TwoFunctor {
    corpus::diagram(Arc::new(corpus::terminal()), c.clone(), vec![d], &[])
}

fn isomorphic(d: &FinDoubleCategory, e: &FinDoubleCategory) -> bool {
    iso_search(d, e, &budget()).unwrap().is_some()
}

fn isomorphic_over(d: &FinDoubleCategory, p: &DoubleFunctor, e: &FinDoubleCategory, q: &DoubleFunctor) -> bool {
    iso_search_labeled(d, &CellKeys::of_functor(p), e, &CellKeys::of_functor(q), &budget())
        .unwrap()
        .is_some()
}

fn two_cat_isomorphic(c: &FinTwoCategory, d: &FinTwoCategory) -> bool {
    isomorphic(&embed_h(c), &embed_h(d))
}

#[test]
fn triple_agreement_on_small_diagrams() {
    for case in small_cases() {
        let k = &case.diagram;
        for cone in all_cones(k, &budget()).unwrap() {
            let oracle = is_homotopy_2limit_oracle(k, &cone, &budget()).unwrap();
            assert_eq!(check_limit_h(k, &cone, &budget()).unwrap(), oracle, "{}", case.name);
            assert_eq!(check_limit_htilde(k, &cone, &budget()).unwrap(), oracle, "{}", case.name);
        }
    }
}

#[test]
fn biterminal_target_is_a_limit_of_the_empty_diagram() {
    let k = case("empty_in_arrow").diagram;
    let empty = |summit| twocat::PseudoCone {
        summit,
        transformation: twocat::PseudoNatTransformation { ones: vec![], twos: vec![] },
    };
    assert!(check_limit_htilde(&k, &empty(1), &budget()).unwrap());
    assert!(check_limit_h(&k, &empty(1), &budget()).unwrap());
    assert!(!check_limit_htilde(&k, &empty(0), &budget()).unwrap());
    assert!(matches!(
        limit_failure_h(&k, &empty(0), &budget()).unwrap(),
        Some(DoubleBiequivalenceFailure::Horizontal(_))
    ));
}

#[test]
fn identity_cone_over_a_point_is_a_limit() {
    for case in corpus::diagrams().into_iter().filter(|c| c.shape == "point") {
        let k = &case.diagram;
        let x = k.ob_map[0];
        let c = &*k.cod;
        let cone = twocat::PseudoCone {
            summit: x,
            transformation: twocat::PseudoNatTransformation {
                ones: vec![c.id1(x)],
                twos: vec![c.id2(c.id1(x))],
            },
        };
        assert!(check_limit_h(k, &cone, &budget()).unwrap(), "{}", case.name);
        if case.target != "adjoint_equivalence" {
            assert!(check_limit_htilde(k, &cone, &budget()).unwrap(), "{}", case.name);
        }
    }
}

#[test]
fn cone_double_categories_validate() {
    for case in small_cases() {
        let k = &case.diagram;
        for cones in [cone_h(k, &budget()).unwrap(), cone_htilde(k, &budget()).unwrap()] {
            assert!(validate_double_category(&cones.double).is_empty(), "{}", case.name);
            assert!(crate::dblcat::validate_double_functor(&cones.projection).is_empty());
            assert_eq!(cones.objects.len(), cones.double.object_count());
        }
    }
}

#[test]
fn explicit_cones_match_the_pullback() {
    for case in small_cases() {
        let k = &case.diagram;
        let e = cone_explicit(k, &budget()).unwrap();
        let g = cone_htilde(k, &budget()).unwrap();
        assert!(validate_double_category(&e.double).is_empty(), "{}", case.name);
        assert!(
            isomorphic_over(&e.double, &e.projection, &g.double, &g.projection),
            "{}",
            case.name
        );
    }
}

#[test]
fn explicit_cone_objects_over_a_point_are_arrows_into_it() {
    for case in small_cases().into_iter().filter(|c| c.shape == "point") {
        let k = &case.diagram;
        let c = &*k.cod;
        let e = cone_explicit(k, &budget()).unwrap();
        let expected: usize = (0..c.object_count()).map(|x| c.one_cells(x, k.ob_map[0]).len()).sum();
        assert_eq!(e.objects.len(), expected, "{}", case.name);
        for o in &e.objects {
            assert_eq!(c.one(o.transformation.ones[0]).src, o.summit);
        }
    }
}

#[test]
fn explicit_cones_refuse_shapes_with_equivalences() {
    let c = Arc::new(corpus::walking_iso());
    let k = TwoFunctor::identity(c);
    assert!(matches!(cone_explicit(&k, &budget()), Err(Error::Precondition(_))));
    // The pullback route still applies.
    assert!(cone_htilde(&k, &budget()).is_ok());
}

#[test]
fn cone_h_has_only_identity_verticals_over_c() {
    for case in corpus::diagrams() {
        let cones = cone_h(&case.diagram, &budget()).unwrap();
        let hc = &cones.projection.cod;
        for &u in &cones.projection.v_map {
            assert!(hc.vertical_category().is_identity(u), "{}", case.name);
        }
    }
}

#[test]
fn horizontal_part_of_cone_h_is_the_pseudo_cone_2category() {
    for case in small_cases() {
        let k = &case.diagram;
        let cones = cone_h(k, &budget()).unwrap();
        let oracle = pseudo_cone_2cat(k);
        assert!(two_cat_isomorphic(&bold_h(&cones.double), &oracle), "{}", case.name);
    }
}

#[test]
fn horizontal_part_of_a_slice_is_the_pseudo_slice() {
    for (name, c) in corpus::two_categories() {
        if name == "adjoint_equivalence" {
            continue;
        }
        let c = Arc::new(c);
        let ht = Arc::new(embed_htilde(&c).unwrap().double);
        for x in 0..c.object_count() {
            let oracle = pseudo_cone_2cat(&point_of(&c, x));
            let s = slice_general(&ht, x, &budget()).unwrap();
            assert!(two_cat_isomorphic(&bold_h(&s.double), &oracle), "{name} at {x}");
        }
    }
}

#[test]
fn explicit_slices_match_the_pullback() {
    for (name, d) in corpus::double_categories() {
        if name.contains("adjoint_equivalence") {
            continue;
        }
        let d = Arc::new(d);
        for x in 0..d.object_count() {
            let e = slice_explicit(&d, x, &budget()).unwrap();
            let g = slice_general(&d, x, &budget()).unwrap();
            assert!(validate_double_category(&g.double).is_empty(), "{name} at {x}");
            assert!(
                isomorphic_over(&e.double, &e.projection, &g.double, &g.projection),
                "{name} at {x}"
            );
        }
    }
}

#[test]
fn slice_objects_are_horizontals_into_the_base_point() {
    let d = Arc::new(embed_h(&corpus::composition_rich()));
    for x in 0..d.object_count() {
        let s = slice_general(&d, x, &budget()).unwrap();
        let expected: usize = (0..d.object_count()).map(|c| d.horizontals(c, x).len()).sum();
        assert_eq!(s.objects.len(), expected);
        for o in &s.objects {
            assert_eq!(d.h(o.kappa), Arrow::new(o.source, x));
        }
    }
}

#[test]
fn slice_of_terminal_is_terminal() {
    let d = Arc::new(FinDoubleCategory::terminal());
    assert!(isomorphic(&slice_general(&d, 0, &budget()).unwrap().double, &d));
    assert!(isomorphic(&slice_explicit(&d, 0, &budget()).unwrap().double, &d));
}

#[test]
fn slices_of_htilde_walking_iso_project_biequivalently() {
    let d = Arc::new(embed_htilde(&corpus::walking_iso()).unwrap().double);
    for x in 0..2 {
        let p = slice_projection(&d, x, &budget()).unwrap();
        assert!(crate::dblcat::is_double_biequivalence(&p).unwrap());
    }
}

#[test]
fn slice_projection_over_a_non_terminal_object_fails() {
    let d = Arc::new(embed_h(&corpus::arrow()));
    let p = slice_projection(&d, 0, &budget()).unwrap();
    assert!(!crate::dblcat::is_double_biequivalence(&p).unwrap());
    let p = slice_projection(&d, 1, &budget()).unwrap();
    assert!(crate::dblcat::is_double_biequivalence(&p).unwrap());
}

#[test]
fn cones_over_a_point_are_slices() {
    for case in small_cases().into_iter().filter(|c| c.shape == "point") {
        let k = &case.diagram;
        let x = k.ob_map[0];
        let hc = Arc::new(embed_h(&k.cod));
        let a = cone_h(k, &budget()).unwrap();
        let s = slice_general(&hc, x, &budget()).unwrap();
        assert!(isomorphic_over(&a.double, &a.projection, &s.double, &s.projection), "{}", case.name);
        let htc = Arc::new(embed_htilde(&k.cod).unwrap().double);
        let b = cone_htilde(k, &budget()).unwrap();
        let s = slice_general(&htc, x, &budget()).unwrap();
        assert!(isomorphic_over(&b.double, &b.projection, &s.double, &s.projection), "{}", case.name);
    }
}

#[test]
fn cones_over_the_empty_diagram_are_the_base() {
    for case in corpus::diagrams().into_iter().filter(|c| c.shape == "empty") {
        let k = &case.diagram;
        assert!(isomorphic(&cone_h(k, &budget()).unwrap().double, &embed_h(&k.cod)));
        let ht = embed_htilde(&k.cod).unwrap().double;
        assert!(isomorphic(&cone_htilde(k, &budget()).unwrap().double, &ht));
    }
}

#[test]
fn constant_diagram_on_an_arrow_counts() {
    // K = Δℓ on H[1] in H([1]). Every globular square of H([1]) is an
    // identity, so a cone is an arrow κ: c -> ℓ, a horizontal from (c, κ)
    // to (c', κ') an arrow f with κ'f = κ, verticals and squares are
    // identities.
    let a = corpus::arrow();
    let d = Arc::new(embed_h(&a));
    let j = Arc::new(horizontal_ordinal(1));
    for l in 0..2 {
        let k = DoubleFunctor {
            dom: j.clone(),
            cod: d.clone(),
            ob_map: vec![l; j.object_count()],
            h_map: vec![d.h_id(l); j.horizontal_count()],
            v_map: vec![d.v_id(l); j.vertical_count()],
            sq_map: vec![d.sq_h_id(d.v_id(l)); j.square_count()],
        };
        let cones = cone_general(&k, &budget()).unwrap();
        let objects: Vec<(usize, usize)> = (0..2)
            .flat_map(|c| a.one_cells(c, l).iter().map(move |&x| (c, x)))
            .collect();
        let mut horizontals = 0;
        for &(c, x) in &objects {
            for &(c2, y) in &objects {
                horizontals += a
                    .one_cells(c, c2)
                    .iter()
                    .filter(|&&f| a.comp1(y, f) == Some(x))
                    .count();
            }
        }
        let e = &cones.double;
        assert_eq!(e.object_count(), objects.len(), "ℓ = {l}");
        assert_eq!(e.horizontal_count(), horizontals, "ℓ = {l}");
        assert_eq!(e.vertical_count(), objects.len(), "ℓ = {l}");
        assert_eq!(e.square_count(), horizontals, "ℓ = {l}");
    }
}

#[test]
fn middle_diagram_commutes() {
    for case in corpus::diagrams() {
        let k = &case.diagram;
        let other = embed_h_functor(k).then(&htilde_inclusion(&k.cod).unwrap()).unwrap();
        assert_eq!(middle_diagram(k).unwrap(), other, "{}", case.name);
    }
}

#[test]
fn comparison_functors_are_double_biequivalences() {
    for case in small_cases() {
        let k = &case.diagram;
        let (f, _) = comparison_from_htilde(k, &budget()).unwrap();
        assert!(crate::dblcat::is_double_biequivalence(&f).unwrap(), "{}", case.name);
        let (g, _) = comparison_from_h(k, &budget()).unwrap();
        assert!(crate::dblcat::is_double_biequivalence(&g).unwrap(), "{}", case.name);
    }
}

#[test]
fn located_cones_are_objects() {
    for case in small_cases() {
        let k = &case.diagram;
        let h = cone_h(k, &budget()).unwrap();
        let ht = cone_htilde(k, &budget()).unwrap();
        for cone in all_cones(k, &budget()).unwrap() {
            let o = h.find_object(&cone_object_h(k, &cone).unwrap()).unwrap();
            assert_eq!(h.objects[o].summit, cone.summit);
            let o = ht.find_object(&cone_object_htilde(k, &cone).unwrap()).unwrap();
            assert_eq!(ht.objects[o].summit, cone.summit);
        }
    }
}

#[test]
fn budget_is_enforced() {
    let k = case("pair_in_composition_rich").diagram;
    assert!(matches!(
        cone_htilde(&k, &Budget::new(10)),
        Err(Error::BudgetExceeded { .. })
    ));
}
