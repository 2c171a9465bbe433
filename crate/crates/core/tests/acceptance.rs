//! Acceptance suite. Prints one `PASS` or `FAIL` line per criterion and
//! fails if any criterion fails.
//!
//! Run with `cargo test -p conelab --test acceptance -- --nocapture` to see
//! the lines.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use conelab::cones::{
    cone_explicit, cone_htilde, comparison_from_h, comparison_from_htilde, limit_failure_h, limit_failure_htilde,
    slice_explicit, slice_general, slice_projection,
};
use conelab::corpus;
use conelab::dblcat::{
    bold_h, double_functors, embed_h, embed_htilde, find_companion, grid, horizontal_ordinal, htilde_inclusion,
    is_companion, is_double_biequivalence, is_trivial_fibration, is_whi, iso_search_labeled, pseudo_hom,
    validate_double_category, validate_double_functor, vertical_ordinal, CellKeys, CompanionPair, DoubleFunctor,
    FinDoubleCategory, FunctorData, Grid, Pasting,
};
use conelab::nerve::{segal_failure, truncated_nerve, validate_truncation, Direction, SegalFailure};
use conelab::twocat::{is_equivalence_1cell, oracle_counterexample, validate_two_category};
use conelab::{Budget, Error};

/// Wall-clock limit for one (diagram, cone) instance of the limit checks.
const LIMIT_INSTANCE_SECONDS: u64 = 120;
/// Wall-clock limit for the nerve of one corpus double category.
const NERVE_ITEM_SECONDS: u64 = 60;
const NERVE_BOUND: (usize, usize) = (3, 3);
/// Fewest `(D_J, C)` pairs whose pseudo-hom must be checked.
const MIN_PSEUDO_HOM_PAIRS: usize = 5;

type Outcome = Result<String, String>;

fn run(n: usize, title: &str, check: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let secs = start.elapsed().as_secs_f64();
    let (word, detail) = match &outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("criterion {n}: {word} [{title}] ({secs:.1} s) {detail}");
    outcome.is_ok()
}

/// Collects failures instead of stopping at the first.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, noun: &str) -> Outcome {
        if self.failures.is_empty() {
            Ok(format!("{} {noun} checked", self.checked))
        } else {
            Err(format!("{} of {} {noun} failed: {}", self.failures.len(), self.checked, self.failures.join("; ")))
        }
    }
}

fn as_functor(dom: &Arc<FinDoubleCategory>, cod: &Arc<FinDoubleCategory>, f: FunctorData) -> DoubleFunctor {
    DoubleFunctor {
        dom: dom.clone(),
        cod: cod.clone(),
        ob_map: f.ob,
        h_map: f.h,
        v_map: f.v,
        sq_map: f.sq,
    }
}

/// Whether `iso` is an isomorphism `d -> e` of double categories with
/// `q ∘ iso = p` on every cell.
fn commuting_iso(
    d: &Arc<FinDoubleCategory>,
    p: &DoubleFunctor,
    e: &Arc<FinDoubleCategory>,
    q: &DoubleFunctor,
    iso: FunctorData,
) -> bool {
    let over = |m: &[usize], pm: &[usize], qm: &[usize]| {
        let mut seen = vec![false; m.len()];
        m.iter().enumerate().all(|(x, &y)| {
            let fresh = !std::mem::replace(&mut seen[y], true);
            fresh && qm[y] == pm[x]
        })
    };
    let f = as_functor(d, e, iso);
    validate_double_functor(&f).is_empty()
        && over(&f.ob_map, &p.ob_map, &q.ob_map)
        && over(&f.h_map, &p.h_map, &q.h_map)
        && over(&f.v_map, &p.v_map, &q.v_map)
        && over(&f.sq_map, &p.sq_map, &q.sq_map)
}

fn criterion_1() -> Outcome {
    let budget = Budget::default();
    let limit = Duration::from_secs(LIMIT_INSTANCE_SECONDS);
    let mut tally = Tally::default();
    let mut slowest = (Duration::ZERO, String::new());
    let (mut limits, mut non_limits) = (0, 0);
    for case in corpus::diagrams() {
        let k = &case.diagram;
        let cones = corpus::all_cones(k, &budget).map_err(|e| format!("{}: {e}", case.name))?;
        for (i, cone) in cones.iter().enumerate() {
            let start = Instant::now();
            let verdicts = (|| -> conelab::Result<(bool, bool, bool)> {
                Ok((
                    oracle_counterexample(k, cone, &budget)?.is_none(),
                    limit_failure_h(k, cone, &budget)?.is_none(),
                    limit_failure_htilde(k, cone, &budget)?.is_none(),
                ))
            })();
            let took = start.elapsed();
            let label = format!("{} cone {i}", case.name);
            if took > slowest.0 {
                slowest = (took, label.clone());
            }
            match verdicts {
                Ok((oracle, h, htilde)) => {
                    if oracle {
                        limits += 1;
                    } else {
                        non_limits += 1;
                    }
                    tally.check(oracle == h && h == htilde && took < limit, || {
                        format!("{label}: oracle {oracle}, h {h}, htilde {htilde}, {:.1} s", took.as_secs_f64())
                    });
                }
                Err(e) => tally.check(false, || format!("{label}: {e}")),
            }
        }
    }
    let slowest = format!("slowest {} at {:.1} s", slowest.1, slowest.0.as_secs_f64());
    tally
        .finish("instances")
        .map(|d| format!("{d} ({limits} limits, {non_limits} not); {slowest}"))
        .map_err(|d| format!("{d}; {slowest}"))
}

fn criterion_2() -> Outcome {
    let mut tally = Tally::default();
    for (name, c) in corpus::two_categories() {
        let ht = embed_htilde(&c).map_err(|e| format!("{name}: {e}"))?.double;
        tally.check(is_whi(&ht).unwrap(), || format!("Htilde({name}) is not whi"));
        let i = htilde_inclusion(&c).unwrap();
        tally.check(is_double_biequivalence(&i).unwrap(), || format!("I_{name} is not a double biequivalence"));
    }
    tally.finish("checks")
}

fn criterion_3() -> Outcome {
    let budget = Budget::default();
    let mut tally = Tally::default();
    for case in corpus::diagrams() {
        let k = &case.diagram;
        let e = cone_explicit(k, &budget).map_err(|err| format!("{}: {err}", case.name))?;
        let g = cone_htilde(k, &budget).map_err(|err| format!("{}: {err}", case.name))?;
        let iso = iso_search_labeled(
            &e.double,
            &CellKeys::of_functor(&e.projection),
            &g.double,
            &CellKeys::of_functor(&g.projection),
            &budget,
        )
        .map_err(|err| format!("{}: {err}", case.name))?;
        let ok = iso.is_some_and(|f| commuting_iso(&e.double, &e.projection, &g.double, &g.projection, f));
        tally.check(ok, || format!("cones over {}", case.name));
    }
    for (name, d) in corpus::double_categories() {
        let d = Arc::new(d);
        for x in 0..d.object_count() {
            let e = slice_explicit(&d, x, &budget).map_err(|err| format!("{name} at {x}: {err}"))?;
            let g = slice_general(&d, x, &budget).map_err(|err| format!("{name} at {x}: {err}"))?;
            let iso = iso_search_labeled(
                &e.double,
                &CellKeys::of_functor(&e.projection),
                &g.double,
                &CellKeys::of_functor(&g.projection),
                &budget,
            )
            .map_err(|err| format!("{name} at {x}: {err}"))?;
            let ok = iso.is_some_and(|f| commuting_iso(&e.double, &e.projection, &g.double, &g.projection, f));
            tally.check(ok, || format!("slice of {name} at {x}"));
        }
    }
    tally.finish("isomorphisms")
}

/// Desk-scale `(D_J, C)` pairs. The larger products, such as `[1,1]`
/// into `H̃` of the walking isomorphism at 65536 squares, are left out.
const PSEUDO_HOM_PAIRS: [(&str, &str); 22] = [
    ("H[0]", "arrow"),
    ("H[0]", "walking_iso"),
    ("H[0]", "involution_2cell"),
    ("H[1]", "terminal"),
    ("H[1]", "arrow"),
    ("H[1]", "walking_iso"),
    ("H[1]", "walking_2cell"),
    ("H[1]", "involution_2cell"),
    ("V[1]", "arrow"),
    ("V[1]", "walking_iso"),
    ("V[1]", "walking_2cell"),
    ("[1,1]", "terminal"),
    ("[1,1]", "arrow"),
    ("[1,1]", "walking_2cell"),
    ("H(discrete_pair)", "arrow"),
    ("H(discrete_pair)", "walking_iso"),
    ("H(discrete_pair)", "walking_2cell"),
    ("H(discrete_pair)", "involution_2cell"),
    ("H[2]", "terminal"),
    ("H[2]", "arrow"),
    ("H[2]", "walking_iso"),
    ("H[2]", "walking_2cell"),
];

fn criterion_4() -> Outcome {
    let budget = Budget::default();
    let shape = |name: &str| match name {
        "H[0]" => horizontal_ordinal(0),
        "H[1]" => horizontal_ordinal(1),
        "H[2]" => horizontal_ordinal(2),
        "V[1]" => vertical_ordinal(1),
        "[1,1]" => grid(1, 1),
        "H(discrete_pair)" => embed_h(&corpus::discrete_pair()),
        _ => unreachable!(),
    };
    let mut tally = Tally::default();
    let mut nontrivial = 0;
    for (jn, cn) in PSEUDO_HOM_PAIRS {
        let j = shape(jn);
        let c = corpus::two_category(cn).unwrap();
        let d = embed_htilde(&c).unwrap().double;
        let p = match pseudo_hom(&j, &d, &budget) {
            Ok(p) => p,
            Err(e) => {
                tally.check(false, || format!("[{jn}, Htilde({cn})]: {e}"));
                continue;
            }
        };
        let valid = validate_double_category(&p.double).is_empty();
        let whi = is_whi(&p.double).unwrap();
        let h = bold_h(&p.double);
        if (0..p.double.horizontal_count()).any(|f| {
            let a = p.double.h(f);
            a.src != a.tgt && is_equivalence_1cell(&h, f).unwrap().is_some()
        }) {
            nontrivial += 1;
        }
        tally.check(valid && whi, || format!("[{jn}, Htilde({cn})]: valid {valid}, whi {whi}"));
    }
    if tally.checked < MIN_PSEUDO_HOM_PAIRS {
        return Err(format!("only {} pairs", tally.checked));
    }
    tally
        .finish("pseudo-homs")
        .map(|d| format!("{d} ({nontrivial} with equivalences between distinct objects)"))
}

fn criterion_5() -> Outcome {
    let mut tally = Tally::default();
    for (name, d) in corpus::double_categories() {
        for x in 0..d.object_count() {
            let id = d.sq_h_id(d.v_id(x));
            let p = CompanionPair { horizontal: d.h_id(x), vertical: d.v_id(x), phi: id, psi: id };
            tally.check(is_companion(&d, &p).unwrap(), || format!("identity companion at {x} in {name}"));
        }
    }
    for (name, c) in corpus::two_categories() {
        let d = embed_htilde(&c).unwrap().double;
        let h = bold_h(&d);
        for f in 0..d.horizontal_count() {
            if is_equivalence_1cell(&h, f).unwrap().is_none() {
                continue;
            }
            let Some(p) = find_companion(&d, f).unwrap() else {
                tally.check(false, || format!("equivalence {f} of Htilde({name}) has no companion"));
                continue;
            };
            // The two binding equations, evaluated as pastings.
            let side = Pasting::beside(Pasting::cell(p.psi), Pasting::cell(p.phi)).eval(&d);
            let stack = Pasting::above(Pasting::cell(p.psi), Pasting::cell(p.phi)).eval(&d);
            tally.check(side == Ok(d.sq_v_id(f)), || format!("psi|phi for {f} in Htilde({name})"));
            tally.check(stack == Ok(d.sq_h_id(p.vertical)), || format!("psi/phi for {f} in Htilde({name})"));
            // The binding squares over V(f) and the identity square at the
            // target paste to V(f) whether rows or columns go first.
            let e = d.h(f).tgt;
            let g = Grid { rows: vec![vec![p.psi, p.phi], vec![d.sq_v_id(f), d.sq_v_id(d.h_id(e))]] };
            let (rows, columns) = (g.eval_rows_first(&d), g.eval_columns_first(&d));
            tally.check(rows == Ok(d.sq_v_id(f)) && columns == rows, || {
                format!("grid pasting for {f} in Htilde({name}): {rows:?} and {columns:?}")
            });
        }
    }
    tally.finish("pasting checks")
}

fn criterion_6() -> Outcome {
    let budget = Budget::default();
    let point = Arc::new(FinDoubleCategory::terminal());
    let mut functors: Vec<(String, DoubleFunctor)> = Vec::new();
    for (name, d) in corpus::double_categories() {
        let d = Arc::new(d);
        functors.push((format!("identity on {name}"), DoubleFunctor::identity(d.clone())));
        for f in double_functors(&d, &point, &budget).map_err(|e| e.to_string())? {
            functors.push((format!("{name} to the point"), as_functor(&d, &point, f)));
        }
        for x in 0..d.object_count() {
            let p = slice_projection(&d, x, &budget).map_err(|e| e.to_string())?;
            functors.push((format!("slice projection of {name} at {x}"), p));
        }
    }
    for (name, c) in corpus::two_categories() {
        functors.push((format!("I_{name}"), htilde_inclusion(&c).unwrap()));
    }
    for case in corpus::diagrams() {
        let (f, _) = comparison_from_htilde(&case.diagram, &budget).map_err(|e| e.to_string())?;
        functors.push((format!("comparison from Htilde over {}", case.name), f));
        let (g, _) = comparison_from_h(&case.diagram, &budget).map_err(|e| e.to_string())?;
        functors.push((format!("comparison from H over {}", case.name), g));
    }
    let mut tally = Tally::default();
    let mut nonidentity = 0;
    for (label, f) in &functors {
        if !is_trivial_fibration(f).unwrap() {
            continue;
        }
        if !label.starts_with("identity") {
            nonidentity += 1;
        }
        tally.check(is_double_biequivalence(f).unwrap(), || label.clone());
    }
    if nonidentity == 0 {
        return Err("no non-identity trivial fibration in the corpus".into());
    }
    tally
        .finish("trivial fibrations")
        .map(|d| format!("{d} ({nonidentity} non-identity, of {} functors)", functors.len()))
}

fn monotone_maps(m: usize, k: usize) -> usize {
    // Multisets of size m + 1 from k + 1 values.
    fn go(len: usize, lo: usize, k: usize) -> usize {
        if len == 0 {
            return 1;
        }
        (lo..=k).map(|x| go(len - 1, x, k)).sum()
    }
    go(m + 1, 0, k)
}

fn criterion_7() -> Outcome {
    let budget_limit = Duration::from_secs(NERVE_ITEM_SECONDS);
    let (bm, bt) = NERVE_BOUND;
    let mut tally = Tally::default();
    for (name, d) in corpus::double_categories() {
        let start = Instant::now();
        let x = match truncated_nerve(&d, bm, bt, &Budget::default()) {
            Ok(x) => x,
            Err(e) => {
                tally.check(false, || format!("{name}: {e} after {:.1} s", start.elapsed().as_secs_f64()));
                continue;
            }
        };
        let counts = x.size(0, 0) == d.object_count()
            && x.size(1, 0) == d.horizontal_count()
            && x.size(0, 1) == d.vertical_count()
            && x.size(1, 1) == d.square_count();
        let simplicial = validate_truncation(&x).is_empty();
        let h = segal_failure(&x, Direction::Horizontal).map(|f| f.is_none());
        let v = segal_failure(&x, Direction::Vertical).map(|f| f.is_none());
        let took = start.elapsed();
        tally.check(counts && simplicial && h == Ok(true) && v == Ok(true) && took < budget_limit, || {
            format!(
                "{name}: counts {counts}, simplicial {simplicial}, horizontal {h:?}, vertical {v:?}, {:.1} s",
                took.as_secs_f64()
            )
        });
    }
    let x = truncated_nerve(&horizontal_ordinal(1), bm, bt, &Budget::default()).map_err(|e| e.to_string())?;
    for m in 0..=bm {
        for t in 0..=bt {
            tally.check(x.size(m, t) == m + 2 && x.size(m, t) == monotone_maps(m, 1), || {
                format!("N(H[1]) at ({m}, {t}) has {} elements", x.size(m, t))
            });
        }
    }
    tally.finish("checks")
}

fn criterion_8() -> Outcome {
    let budget = Budget::default();
    let mut tally = Tally::default();

    let c = corpus::broken_interchange().map_err(|e| e.to_string())?;
    let report = validate_two_category(&c);
    tally.check(report.len() == 1 && report.count("interchange") == 1, || {
        format!("broken interchange reported {report}")
    });

    let d = corpus::broken_grid().map_err(|e| e.to_string())?;
    let report = validate_double_category(&d);
    tally.check(report.len() == 1 && report.count("horizontal_unit") == 1, || {
        format!("broken grid reported {report}")
    });

    let (case, cone) = corpus::non_limit_cone();
    let k = &case.diagram;
    let oracle = oracle_counterexample(k, &cone, &budget).unwrap();
    tally.check(oracle == Some(1), || format!("oracle witness {oracle:?}"));
    for (which, failure) in [
        ("h", limit_failure_h(k, &cone, &budget).unwrap()),
        ("htilde", limit_failure_htilde(k, &cone, &budget).unwrap()),
    ] {
        tally.check(failure.is_some(), || format!("{which} accepted the non-limit cone"));
    }

    let x = truncated_nerve(&horizontal_ordinal(1), 2, 0, &budget).unwrap();
    let like = x.size(2, 0) - 1;
    let broken = x.with_phantom(2, 0, like).unwrap();
    let failure = segal_failure(&broken, Direction::Horizontal).unwrap();
    tally.check(matches!(failure, Some(SegalFailure::NotInjective { m: 2, t: 0, .. })), || {
        format!("phantom element gave {failure:?}")
    });

    for (path, class) in [
        ("broken/broken_interchange.catj", "semantic"),
        ("broken/broken_grid.catj", "semantic"),
        ("broken/out_of_range.catj", "semantic"),
        ("broken/unknown_key.catj", "semantic"),
        ("broken/syntax_error.catj", "syntax"),
    ] {
        let bytes = std::fs::read(format!("{}/corpus/{path}", env!("CARGO_MANIFEST_DIR"))).unwrap();
        let got = conelab::io::load(&bytes, conelab::io::Mode::Strict).err().map(|e: Error| e.class());
        tally.check(got == Some(class), || format!("{path} gave {got:?}"));
    }
    tally.finish("controls")
}

#[test]
fn acceptance() {
    let results = [
        run(1, "triple agreement of limit checks", criterion_1),
        run(2, "Htilde is whi and I_C is a double biequivalence", criterion_2),
        run(3, "explicit and general cones and slices are isomorphic", criterion_3),
        run(4, "pseudo-homs into Htilde are whi", criterion_4),
        run(5, "companion calculus", criterion_5),
        run(6, "trivial fibrations are double biequivalences", criterion_6),
        run(7, "nerve levels and Segal conditions", criterion_7),
        run(8, "negative controls", criterion_8),
    ];
    let failed: Vec<usize> = (1..=8).filter(|&i| !results[i - 1]).collect();
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
