use std::sync::Arc;

use super::*;
use crate::budget::Budget;
use crate::corpus;
use crate::twocat::{self, FinTwoCategory, PseudoNatTransformation, TwoFunctor};

fn valid(d: &FinDoubleCategory) -> bool {
    let r = validate_double_category(d);
    if !r.is_empty() {
        eprintln!("{r}");
    }
    r.is_empty()
}

fn functor_count(j: &FinDoubleCategory, d: &FinDoubleCategory) -> usize {
    double_functors(j, d, &Budget::unlimited()).unwrap().len()
}

#[test]
fn corpus_embeddings_validate() {
    for (name, c) in corpus::two_categories() {
        assert!(valid(&embed_h(&c)), "H {name}");
        assert!(valid(&embed_v(c.one_category())), "V {name}");
        let t = embed_htilde(&c).unwrap();
        assert!(valid(&t.double), "H~ {name}");
    }
}

#[test]
fn grid_counts_and_validity() {
    let g = grid(1, 1);
    assert!(valid(&g));
    // Intervals i <= i' in [1] times intervals j <= j' in [1].
    assert_eq!(
        (g.object_count(), g.horizontal_count(), g.vertical_count(), g.square_count()),
        (4, 6, 6, 9)
    );
    let g = grid(2, 1);
    assert!(valid(&g));
    assert_eq!(g.square_count(), 6 * 3);
}

#[test]
fn broken_grid_has_one_unit_violation() {
    let d = corpus::broken_grid().unwrap();
    let r = validate_double_category(&d);
    assert_eq!(r.len(), 1, "{r}");
    assert_eq!(r.count("horizontal_unit"), 1);
}

#[test]
fn bold_h_recovers_the_two_category() {
    for (name, c) in corpus::two_categories() {
        assert_eq!(bold_h(&embed_h(&c)), c, "{name}");
        assert_eq!(bold_h(&embed_htilde(&c).unwrap().double), c, "{name}");
        assert_eq!(
            embed_v(c.one_category()).transpose(),
            embed_h(&FinTwoCategory::locally_discrete(c.one_category())),
            "{name}"
        );
    }
}

#[test]
fn htilde_verticals_are_adjoint_equivalences() {
    let c = corpus::adjoint_equivalence();
    let t = embed_htilde(&c).unwrap();
    let mut expected = c.object_count();
    for a in 0..c.object_count() {
        for b in 0..c.object_count() {
            let all = twocat::adjoint_equivalences(&c, a, b).unwrap();
            expected += all.len() - usize::from(a == b);
        }
    }
    assert_eq!(t.double.vertical_count(), expected);
    for (u, e) in t.verticals.iter().enumerate() {
        assert!(twocat::is_adjoint_equivalence(&c, e));
        assert_eq!(t.double.v(u), c.one(e.f));
    }
}

#[test]
fn functor_counts_match_cell_counts() {
    for (name, c) in corpus::two_categories() {
        let h = embed_h(&c);
        assert_eq!(functor_count(&horizontal_ordinal(0), &h), c.object_count(), "{name}");
        assert_eq!(functor_count(&horizontal_ordinal(1), &h), c.one_cell_count(), "{name}");
        // Verticals of [1,1] must go to identities; the interior square is a
        // 2-cell between the images of its top and bottom.
        assert_eq!(functor_count(&grid(1, 1), &h), c.two_cell_count(), "{name}");
        assert_eq!(functor_count(&vertical_ordinal(1), &embed_v(c.one_category())), c.one_cell_count(), "{name}");
    }
}

#[test]
fn strict_hom_cells_are_functors_out_of_shapes() {
    let v1 = vertical_ordinal(1);
    let squares_shape = product_dbl(&grid(1, 1), &v1);
    let vsquare = product_dbl(&v1, &v1);
    let mut targets = vec![grid(1, 1), v1.clone(), horizontal_ordinal(1)];
    targets.push(embed_htilde(&corpus::walking_iso()).unwrap().double);
    targets.push(embed_htilde(&corpus::walking_2cell()).unwrap().double);
    for d in &targets {
        let s = strict_hom_shape(d).unwrap();
        assert!(valid(&s));
        assert_eq!(s.object_count(), functor_count(&v1, d));
        assert_eq!(s.horizontal_count(), functor_count(&grid(1, 1), d));
        assert_eq!(s.vertical_count(), functor_count(&vsquare, d));
        assert_eq!(s.square_count(), functor_count(&squares_shape, d));
        let direct = embed_h(&strict_hom_shape_bold_h(d));
        let b = Budget::unlimited();
        assert!(iso_search(&embed_h(&bold_h(&s)), &direct, &b).unwrap().is_some());
    }
    assert_eq!(strict_hom_shape(&v1).unwrap().object_count(), 3);
    assert_eq!(strict_hom_shape(&grid(1, 1)).unwrap().object_count(), 6);
}

#[test]
fn pseudo_hom_from_the_point_is_the_target() {
    let b = Budget::unlimited();
    for (name, c) in corpus::two_categories() {
        if c.two_cell_count() > 20 {
            continue;
        }
        let d = embed_htilde(&c).unwrap().double;
        let p = pseudo_hom(&horizontal_ordinal(0), &d, &b).unwrap();
        assert!(valid(&p.double), "{name}");
        assert!(iso_search(&p.double, &d, &b).unwrap().is_some(), "{name}");
    }
}

/// Converts a horizontal transformation of `⟦H J, H C⟧` into the
/// corresponding pseudo-natural transformation by inverting its squares.
fn as_pseudo_nat(c: &FinTwoCategory, t: &Transformation) -> PseudoNatTransformation {
    PseudoNatTransformation {
        ones: t.obj.clone(),
        twos: t.hor.iter().map(|&s| c.inverse2(s).unwrap()).collect(),
    }
}

#[test]
fn horizontal_transformations_match_pseudo_naturals() {
    let b = Budget::unlimited();
    for case in corpus::diagrams() {
        let k = &case.diagram;
        let (jj, cc) = (embed_h(&k.dom), embed_h(&k.cod));
        let kd = embed_h_functor(k);
        let kf = FunctorData {
            ob: kd.ob_map.clone(),
            h: kd.h_map.clone(),
            v: kd.v_map.clone(),
            sq: kd.sq_map.clone(),
        };
        for x in 0..k.cod.object_count() {
            let delta = TwoFunctor::constant(k.dom.clone(), k.cod.clone(), x);
            let df = FunctorData::constant(&jj, &cc, x);
            let ours = horizontal_transformations(&jj, &cc, &df, &kf, &b).unwrap();
            let theirs = twocat::pseudo_nat_set(&delta, k, &b).unwrap();
            assert_eq!(ours.len(), theirs.len(), "{} at {x}", case.name);
            for t in &ours {
                assert!(theirs.contains(&as_pseudo_nat(&k.cod, t)), "{}", case.name);
            }
            // Globular modifications agree with 2-categorical ones.
            let ids = vertical_transformations(&jj, &cc, &df, &df, &b).unwrap();
            let idk = vertical_transformations(&jj, &cc, &kf, &kf, &b).unwrap();
            let (mu, nu) = (&ids[0], &idk[0]);
            assert!(mu.obj.iter().all(|&v| cc.vertical_category().is_identity(v)));
            for p in ours.iter().take(4) {
                for q in ours.iter().take(4) {
                    let ms = modifications(&jj, &cc, p, q, mu, nu, &b).unwrap();
                    let tm = twocat::modifications(
                        &delta,
                        k,
                        &as_pseudo_nat(&k.cod, p),
                        &as_pseudo_nat(&k.cod, q),
                        &b,
                    )
                    .unwrap();
                    assert_eq!(ms, tm, "{}", case.name);
                }
            }
        }
    }
}

#[test]
fn htilde_is_whi_and_h_usually_is_not() {
    for (name, c) in corpus::two_categories() {
        let t = embed_htilde(&c).unwrap();
        assert!(is_whi(&t.double).unwrap(), "{name}");
    }
    assert!(is_whi(&embed_h(&corpus::arrow())).unwrap());
    assert!(!is_whi(&embed_h(&corpus::walking_iso())).unwrap());
    assert!(!is_whi(&embed_h(&corpus::adjoint_equivalence())).unwrap());
}

#[test]
fn canonical_squares_between_companions_are_inverse() {
    let c = corpus::adjoint_equivalence();
    let d = embed_htilde(&c).unwrap().double;
    let mut checked = 0;
    for f in 0..d.horizontal_count() {
        let a = d.h(f);
        let mut pairs = Vec::new();
        for &u in d.verticals(a.src, a.tgt) {
            for &phi in d.squares_with(Square::new(f, d.h_id(a.tgt), u, d.v_id(a.tgt))) {
                for &psi in d.squares_with(Square::new(d.h_id(a.src), f, d.v_id(a.src), u)) {
                    let p = CompanionPair { horizontal: f, vertical: u, phi, psi };
                    if is_companion(&d, &p).unwrap() {
                        pairs.push(p);
                    }
                }
            }
        }
        for p in &pairs {
            for q in &pairs {
                let there = canonical_square(&d, p, q).unwrap();
                let back = canonical_square(&d, q, p).unwrap();
                assert_eq!(d.hcomp(back, there), Some(d.sq_h_id(p.vertical)));
                checked += 1;
            }
        }
    }
    assert!(checked > 4);
}

#[test]
fn triangle_identities_by_pasting() {
    let c = corpus::adjoint_equivalence();
    let d = embed_h(&c);
    for a in 0..c.object_count() {
        for b in 0..c.object_count() {
            for e in twocat::adjoint_equivalences(&c, a, b).unwrap() {
                let (vf, vg) = (d.sq_v_id(e.f), d.sq_v_id(e.g));
                let first = Pasting::above(
                    Pasting::beside(Pasting::cell(e.unit), Pasting::cell(vf)),
                    Pasting::beside(Pasting::cell(vf), Pasting::cell(e.counit)),
                );
                assert_eq!(first.eval(&d).unwrap(), vf);
                let second = Pasting::above(
                    Pasting::beside(Pasting::cell(vg), Pasting::cell(e.unit)),
                    Pasting::beside(Pasting::cell(e.counit), Pasting::cell(vg)),
                );
                assert_eq!(second.eval(&d).unwrap(), vg);
            }
        }
    }
}

#[test]
fn grid_pastings_agree() {
    let d = embed_htilde(&corpus::walking_iso()).unwrap().double;
    // Every 2×2 grid of identity squares around one square.
    let mut n = 0;
    for s in 0..d.square_count() {
        let b = d.square(s);
        let g = Grid {
            rows: vec![
                vec![s, d.sq_h_id(b.right)],
                vec![d.sq_v_id(b.bottom), d.sq_v_id(d.h_id(d.h(b.bottom).tgt))],
            ],
        };
        if let (Ok(x), Ok(y)) = (g.eval_rows_first(&d), g.eval_columns_first(&d)) {
            assert_eq!(x, y);
            assert_eq!(x, s);
            n += 1;
        }
    }
    assert_eq!(n, d.square_count());
}

#[test]
fn inclusion_into_htilde_is_a_double_biequivalence() {
    for (name, c) in corpus::two_categories() {
        let i = htilde_inclusion(&c).unwrap();
        assert!(validate_double_functor(&i).is_empty(), "{name}");
        assert!(is_double_biequivalence(&i).unwrap(), "{name}");
    }
}

/// The double biequivalence test reads `bold_h` and the arrow hom off the
/// tables directly; the materialized 2-categories must give the same verdict.
#[test]
fn lazy_biequivalence_matches_materialized() {
    let materialized = |f: &DoubleFunctor| {
        twocat::biequivalence_failure(&bold_h_functor(f)).unwrap().is_none()
            && twocat::biequivalence_failure(&strict_hom_shape_functor_bold_h(f))
                .unwrap()
                .is_none()
    };
    let b = Budget::unlimited();
    let mut functors = Vec::new();
    for (name, c) in corpus::two_categories() {
        if name == "adjoint_equivalence" || name == "composition_rich" {
            continue;
        }
        functors.push(htilde_inclusion(&c).unwrap());
        let d = Arc::new(embed_htilde(&c).unwrap().double);
        for x in 0..d.object_count() {
            functors.push(crate::cones::slice_projection(&d, x, &b).unwrap());
        }
        let d = Arc::new(embed_h(&c));
        for x in 0..d.object_count() {
            functors.push(crate::cones::slice_projection(&d, x, &b).unwrap());
        }
    }
    let (mut yes, mut no) = (0, 0);
    for f in &functors {
        let lazy = is_double_biequivalence(f).unwrap();
        assert_eq!(lazy, materialized(f));
        if lazy {
            yes += 1;
        } else {
            no += 1;
        }
    }
    assert!(yes > 0 && no > 0);
}

#[test]
fn trivial_fibrations() {
    let h1 = Arc::new(horizontal_ordinal(1));
    let h0 = Arc::new(horizontal_ordinal(0));
    assert!(is_trivial_fibration(&DoubleFunctor::identity(h1.clone())).unwrap());
    let fs = double_functors(&h1, &h0, &Budget::unlimited()).unwrap();
    assert_eq!(fs.len(), 1);
    let f = &fs[0];
    let to_point = DoubleFunctor {
        dom: h1.clone(),
        cod: h0.clone(),
        ob_map: f.ob.clone(),
        h_map: f.h.clone(),
        v_map: f.v.clone(),
        sq_map: f.sq.clone(),
    };
    // Nothing lifts the identity vertical from 0 to 1, nor the identity
    // horizontal from 1 to 0.
    assert_eq!(
        trivial_fibration_failure(&to_point).unwrap(),
        Some(TrivialFibrationFailure::VerticalNotFull { x: 0, y: 1, vertical: 0 })
    );
    // H~ of the walking isomorphism has exactly one cell over every
    // boundary, so its projection to the point is one.
    let wi = Arc::new(embed_htilde(&corpus::walking_iso()).unwrap().double);
    let g = &double_functors(&wi, &h0, &Budget::unlimited()).unwrap()[0];
    let f = DoubleFunctor {
        dom: wi,
        cod: h0,
        ob_map: g.ob.clone(),
        h_map: g.h.clone(),
        v_map: g.v.clone(),
        sq_map: g.sq.clone(),
    };
    assert!(is_trivial_fibration(&f).unwrap());
}

#[test]
fn products_pullbacks_and_isos() {
    let b = Budget::unlimited();
    let g = grid(1, 1);
    let swapped = product_dbl(&vertical_ordinal(1), &horizontal_ordinal(1));
    assert!(iso_search(&swapped, &g, &b).unwrap().is_some());
    assert!(iso_search(&g.transpose(), &g, &b).unwrap().is_some());
    assert!(iso_search(&horizontal_ordinal(1), &vertical_ordinal(1), &b).unwrap().is_none());
    let id = DoubleFunctor::identity(Arc::new(g.clone()));
    let (apex, p1, _) = pullback_dbl(&id, &id).unwrap();
    assert!(valid(&apex));
    assert!(validate_double_functor(&p1).is_empty());
    assert!(iso_search(&apex, &g, &b).unwrap().is_some());
}

#[test]
fn search_respects_budget() {
    let d = embed_htilde(&corpus::adjoint_equivalence()).unwrap().double;
    let r = double_functors(&grid(1, 1), &d, &Budget::new(10));
    assert!(matches!(r, Err(crate::Error::BudgetExceeded { .. })));
}
