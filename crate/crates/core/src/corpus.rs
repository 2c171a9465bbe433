//! Named example structures: small 2-categories, diagram shapes, diagrams
//! with all their candidate cones, and deliberately broken fixtures.
//!
//! Cell ids are documented per builder so tests and the shipped `.catj`
//! files can refer to them.

use std::sync::Arc;

use crate::budget::Budget;
use crate::dblcat::{self, FinDoubleCategory};
use crate::error::Result;
use crate::fincat::{Arrow, FinCategory};
use crate::intern::Interner;
use crate::twocat::{self, FinTwoCategory, PseudoCone, TwoFunctor};

/// One object, only identities.
pub fn terminal() -> FinTwoCategory {
    FinTwoCategory::locally_discrete(&FinCategory::terminal())
}

/// No objects.
pub fn empty() -> FinTwoCategory {
    FinTwoCategory::locally_discrete(&FinCategory::empty())
}

/// Two objects, only identities.
pub fn discrete_pair() -> FinTwoCategory {
    FinTwoCategory::locally_discrete(&shape_discrete_pair())
}

/// `[1]`: 1-cells `0 = id0`, `1 = a: 0 -> 1`, `2 = id1`; trivial 2-cells.
pub fn arrow() -> FinTwoCategory {
    FinTwoCategory::locally_discrete(&FinCategory::ordinal(1))
}

/// `[2]` with trivial 2-cells.
pub fn ordinal2() -> FinTwoCategory {
    FinTwoCategory::locally_discrete(&FinCategory::ordinal(2))
}

/// Two parallel 1-cells `2 = a, 3 = b: 0 -> 1`, trivial 2-cells.
pub fn parallel_pair() -> FinTwoCategory {
    FinTwoCategory::locally_discrete(&shape_parallel_pair())
}

/// Cospan `0 -> 2 <- 1` with trivial 2-cells.
pub fn cospan() -> FinTwoCategory {
    FinTwoCategory::locally_discrete(&shape_cospan())
}

/// The walking isomorphism: 1-cells `0 = id0, 1 = id1, 2 = f: 0 -> 1,
/// 3 = g: 1 -> 0`, trivial 2-cells.
pub fn walking_iso() -> FinTwoCategory {
    FinTwoCategory::locally_discrete(&FinCategory::walking_isomorphism())
}

/// The walking 2-cell: 1-cells `0 = id0, 1 = id1, 2 = f, 3 = g: 0 -> 1`;
/// 2-cells `0..=3` identities on the 1-cells and `4 = α: f => g`.
pub fn walking_2cell() -> FinTwoCategory {
    let c = shape_parallel_pair();
    let twos = vec![
        Arrow::new(0, 0),
        Arrow::new(1, 1),
        Arrow::new(2, 2),
        Arrow::new(3, 3),
        Arrow::new(2, 3),
    ];
    FinTwoCategory::from_fn(
        2,
        c.morphisms().to_vec(),
        c.identities().to_vec(),
        |g, f| c.compose(g, f).expect("composable"),
        twos,
        vec![0, 1, 2, 3],
        |b, a| if b == 4 || a == 4 { 4 } else { a },
        |b, a| match (b, a) {
            (1, x) | (x, 0) => x,
            _ => unreachable!(),
        },
    )
    .expect("walking 2-cell")
}

/// The walking invertible 2-cell: as [`walking_2cell`] plus `5 = α⁻¹`.
pub fn walking_invertible_2cell() -> FinTwoCategory {
    let c = shape_parallel_pair();
    chaotic(&c)
}

/// Chaotic 2-category on `c`: exactly one 2-cell between any two parallel
/// 1-cells. 2-cells `0..n` are the identities in 1-cell order; the rest
/// follow in `(source, target)` order.
pub fn chaotic(c: &FinCategory) -> FinTwoCategory {
    let n = c.morphism_count();
    let mut cells: Interner<(usize, usize)> = Interner::new();
    for f in 0..n {
        cells.intern((f, f));
    }
    for f in 0..n {
        for g in 0..n {
            if c.arrow(f) == c.arrow(g) {
                cells.intern((f, g));
            }
        }
    }
    let items = cells.items().to_vec();
    let twos = items.iter().map(|&(f, g)| Arrow::new(f, g)).collect();
    let look = |p: (usize, usize)| cells.get(&p).expect("cell");
    FinTwoCategory::from_fn(
        c.object_count(),
        c.morphisms().to_vec(),
        c.identities().to_vec(),
        |g, f| c.compose(g, f).expect("composable"),
        twos,
        (0..n).collect(),
        |b, a| look((items[a].0, items[b].1)),
        |b, a| {
            let (bs, bt) = items[b];
            let (as_, at) = items[a];
            look((
                c.compose(bs, as_).expect("composable"),
                c.compose(bt, at).expect("composable"),
            ))
        },
    )
    .expect("chaotic")
}

/// The strictified walking adjoint equivalence: objects 0, 1; 1-cells
/// `0 = id0, 1 = e0 = gf, 2 = id1, 3 = e1 = fg, 4 = f: 0 -> 1, 5 = g: 1 -> 0`
/// with `fgf = f` and `gfg = g`; one 2-cell between any parallel pair.
pub fn adjoint_equivalence() -> FinTwoCategory {
    chaotic(&adjoint_equivalence_base())
}

fn adjoint_equivalence_base() -> FinCategory {
    let morphisms = vec![
        Arrow::new(0, 0),
        Arrow::new(0, 0),
        Arrow::new(1, 1),
        Arrow::new(1, 1),
        Arrow::new(0, 1),
        Arrow::new(1, 0),
    ];
    FinCategory::from_fn(2, morphisms, vec![0, 2], |g, f| match (g, f) {
        (0, x) | (2, x) | (x, 0) | (x, 2) => x,
        (1, 1) | (5, 4) => 1,
        (3, 3) | (4, 5) => 3,
        (4, 1) | (3, 4) => 4,
        (5, 3) | (1, 5) => 5,
        _ => unreachable!("{g} {f}"),
    })
    .expect("adjoint equivalence")
}

/// One object whose identity carries an idempotent 2-cell `1 = p`, `p·p = p`.
pub fn idempotent_2cell() -> FinTwoCategory {
    one_object_monoid(|b, a| b.max(a))
}

/// One object whose identity carries an involutive 2-cell `1 = s`, `s·s = 1`.
pub fn involution_2cell() -> FinTwoCategory {
    one_object_monoid(|b, a| b ^ a)
}

fn one_object_monoid(op: fn(usize, usize) -> usize) -> FinTwoCategory {
    FinTwoCategory::from_fn(
        1,
        vec![Arrow::new(0, 0)],
        vec![0],
        |_, _| 0,
        vec![Arrow::new(0, 0), Arrow::new(0, 0)],
        vec![0],
        op,
        op,
    )
    .expect("monoid")
}

/// A 3-object example with nontrivial composites: `f0, f1: 0 -> 1` with a
/// non-invertible `α: f0 => f1`, `g0, g1: 1 -> 2` with an isomorphism
/// `g0 ≅ g1`, and all four composites `gj∘fi: 0 -> 2` whose 2-cells are
/// pairs of 2-cells from the two factors.
///
/// 1-cells: `0..3` identities, `3 = f0, 4 = f1, 5 = g0, 6 = g1`,
/// `7 + 2j + i = gj∘fi`.
pub fn composition_rich() -> FinTwoCategory {
    #[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
    enum One {
        Id(usize),
        F(usize),
        G(usize),
        Gf(usize, usize),
    }
    #[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
    enum Two {
        Id(usize),
        A(usize, usize),
        B(usize, usize),
        Ba((usize, usize), (usize, usize)),
    }
    let mut ones: Interner<One> = Interner::new();
    for x in 0..3 {
        ones.intern(One::Id(x));
    }
    for i in 0..2 {
        ones.intern(One::F(i));
    }
    for j in 0..2 {
        ones.intern(One::G(j));
    }
    for j in 0..2 {
        for i in 0..2 {
            ones.intern(One::Gf(j, i));
        }
    }
    let ends = |o: One| match o {
        One::Id(x) => Arrow::new(x, x),
        One::F(_) => Arrow::new(0, 1),
        One::G(_) => Arrow::new(1, 2),
        One::Gf(..) => Arrow::new(0, 2),
    };
    let comp1 = |g: One, f: One| match (g, f) {
        (One::Id(_), x) | (x, One::Id(_)) => x,
        (One::G(j), One::F(i)) => One::Gf(j, i),
        _ => unreachable!(),
    };
    let a_cells = [(0, 0), (1, 1), (0, 1)];
    let b_cells = [(0, 0), (1, 1), (0, 1), (1, 0)];
    let mut twos: Interner<Two> = Interner::new();
    for o in ones.items().to_vec() {
        twos.intern(match o {
            One::Id(x) => Two::Id(x),
            One::F(i) => Two::A(i, i),
            One::G(j) => Two::B(j, j),
            One::Gf(j, i) => Two::Ba((j, j), (i, i)),
        });
    }
    for a in a_cells {
        twos.intern(Two::A(a.0, a.1));
    }
    for b in b_cells {
        twos.intern(Two::B(b.0, b.1));
    }
    for b in b_cells {
        for a in a_cells {
            twos.intern(Two::Ba(b, a));
        }
    }
    let boundary = |t: Two| match t {
        Two::Id(x) => (One::Id(x), One::Id(x)),
        Two::A(i, k) => (One::F(i), One::F(k)),
        Two::B(j, k) => (One::G(j), One::G(k)),
        Two::Ba((j, l), (i, k)) => (One::Gf(j, i), One::Gf(l, k)),
    };
    let vc = |b: Two, a: Two| match (b, a) {
        (Two::Id(x), _) => Two::Id(x),
        (Two::A(_, k), Two::A(i, _)) => Two::A(i, k),
        (Two::B(_, k), Two::B(j, _)) => Two::B(j, k),
        (Two::Ba((_, l), (_, k)), Two::Ba((j, _), (i, _))) => Two::Ba((j, l), (i, k)),
        _ => unreachable!(),
    };
    let hc = |b: Two, a: Two| match (b, a) {
        (Two::Id(_), x) | (x, Two::Id(_)) => x,
        (Two::B(j, l), Two::A(i, k)) => Two::Ba((j, l), (i, k)),
        _ => unreachable!(),
    };
    let one_items = ones.items().to_vec();
    let two_items = twos.items().to_vec();
    let one_arrows = one_items.iter().map(|&o| ends(o)).collect();
    let two_arrows = two_items
        .iter()
        .map(|&t| {
            let (s, d) = boundary(t);
            Arrow::new(ones.get(&s).unwrap(), ones.get(&d).unwrap())
        })
        .collect();
    FinTwoCategory::from_fn(
        3,
        one_arrows,
        vec![0, 1, 2],
        |g, f| ones.get(&comp1(one_items[g], one_items[f])).unwrap(),
        two_arrows,
        (0..one_items.len()).collect(),
        |b, a| twos.get(&vc(two_items[b], two_items[a])).unwrap(),
        |b, a| twos.get(&hc(two_items[b], two_items[a])).unwrap(),
    )
    .expect("composition rich")
}

/// The walking 2-cell with the horizontal entry `1_{id1} * α` redirected to
/// `1_f`. Fails validation with exactly one `interchange` violation.
pub fn broken_interchange() -> Result<FinTwoCategory> {
    let c = walking_2cell();
    let hcomp = c
        .hcomp_triples()
        .into_iter()
        .map(|(b, a, v)| if (b, a) == (1, 4) { (b, a, 2) } else { (b, a, v) });
    FinTwoCategory::new(
        c.object_count(),
        c.one_category().morphisms().to_vec(),
        c.one_category().identities().to_vec(),
        c.one_category().composition_triples(),
        c.vertical_category().morphisms().to_vec(),
        c.vertical_category().identities().to_vec(),
        c.vertical_category().composition_triples(),
        hcomp,
    )
}

/// The grid `[1,1]` with the side-by-side composite of the interior square
/// and the identity square on its left side redirected to that identity
/// square. Every such entry is an instance of a unit law, so validation
/// reports exactly one `horizontal_unit` violation.
pub fn broken_grid() -> Result<FinDoubleCategory> {
    let d = dblcat::grid(1, 1);
    let interior = (0..d.square_count())
        .find(|&s| {
            let b = d.square(s);
            !d.horizontal_category().is_identity(b.top) && !d.vertical_category().is_identity(b.left)
        })
        .expect("interior square");
    let unit = d.sq_h_id(d.square(interior).left);
    let hc = d
        .square_h_category()
        .composition_triples()
        .into_iter()
        .map(|(b, a, v)| if (b, a) == (interior, unit) { (b, a, unit) } else { (b, a, v) });
    FinDoubleCategory::new(
        d.horizontal_category().clone(),
        d.vertical_category().clone(),
        d.squares(),
        d.square_h_category().identities().to_vec(),
        d.square_v_category().identities().to_vec(),
        hc,
        d.square_v_category().composition_triples(),
    )
}

/// All valid corpus 2-categories, by name.
pub fn two_categories() -> Vec<(&'static str, FinTwoCategory)> {
    vec![
        ("terminal", terminal()),
        ("empty", empty()),
        ("discrete_pair", discrete_pair()),
        ("arrow", arrow()),
        ("ordinal2", ordinal2()),
        ("parallel_pair", parallel_pair()),
        ("cospan", cospan()),
        ("walking_iso", walking_iso()),
        ("walking_2cell", walking_2cell()),
        ("walking_invertible_2cell", walking_invertible_2cell()),
        ("adjoint_equivalence", adjoint_equivalence()),
        ("idempotent_2cell", idempotent_2cell()),
        ("involution_2cell", involution_2cell()),
        ("composition_rich", composition_rich()),
    ]
}

pub fn two_category(name: &str) -> Option<FinTwoCategory> {
    two_categories()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, c)| c)
}

/// Corpus double categories by name: `H C` and `H̃ C` for every corpus
/// 2-category, then the grids `[1,0]`, `[0,1]` and `[1,1]`.
pub fn double_categories() -> Vec<(String, FinDoubleCategory)> {
    let mut out = Vec::new();
    for (name, c) in two_categories() {
        out.push((format!("H({name})"), dblcat::embed_h(&c)));
        let ht = dblcat::embed_htilde(&c).expect("corpus 2-categories are valid");
        out.push((format!("Htilde({name})"), ht.double));
    }
    out.push(("grid_1_0".into(), dblcat::grid(1, 0)));
    out.push(("grid_0_1".into(), dblcat::grid(0, 1)));
    out.push(("grid_1_1".into(), dblcat::grid(1, 1)));
    out
}

/// Objects 0, 1 and identities only.
pub fn shape_discrete_pair() -> FinCategory {
    FinCategory::new(
        2,
        vec![Arrow::new(0, 0), Arrow::new(1, 1)],
        vec![0, 1],
        [(0, 0, 0), (1, 1, 1)],
    )
    .expect("discrete pair")
}

/// `0 = id0, 1 = id1, 2 = a, 3 = b: 0 -> 1`.
pub fn shape_parallel_pair() -> FinCategory {
    let morphisms = vec![
        Arrow::new(0, 0),
        Arrow::new(1, 1),
        Arrow::new(0, 1),
        Arrow::new(0, 1),
    ];
    FinCategory::from_fn(2, morphisms, vec![0, 1], |g, f| match (g, f) {
        (1, x) | (x, 0) => x,
        _ => unreachable!(),
    })
    .expect("parallel pair")
}

/// `0 = id0, 1 = id1, 2 = id2, 3 = p: 0 -> 2, 4 = q: 1 -> 2`.
pub fn shape_cospan() -> FinCategory {
    let morphisms = vec![
        Arrow::new(0, 0),
        Arrow::new(1, 1),
        Arrow::new(2, 2),
        Arrow::new(0, 2),
        Arrow::new(1, 2),
    ];
    FinCategory::from_fn(3, morphisms, vec![0, 1, 2], |g, f| match (g, f) {
        (2, x) | (x, 0) | (x, 1) => x,
        _ => unreachable!(),
    })
    .expect("cospan")
}

/// Diagram shapes by name, as locally discrete 2-categories.
pub fn shape(name: &str) -> Option<FinTwoCategory> {
    let c = match name {
        "empty" => FinCategory::empty(),
        "point" => FinCategory::terminal(),
        "discrete_pair" => shape_discrete_pair(),
        "arrow" => FinCategory::ordinal(1),
        "parallel_pair" => shape_parallel_pair(),
        "cospan" => shape_cospan(),
        _ => return None,
    };
    Some(FinTwoCategory::locally_discrete(&c))
}

/// A diagram `K: J -> C` out of a locally discrete shape, given by its
/// object map and its images of the non-identity 1-cells.
pub fn diagram(
    j: Arc<FinTwoCategory>,
    c: Arc<FinTwoCategory>,
    ob_map: Vec<usize>,
    arrows: &[(usize, usize)],
) -> TwoFunctor {
    let mut one_map: Vec<usize> = (0..j.one_cell_count())
        .map(|m| {
            let e = j.one(m);
            c.id1(ob_map[e.src])
        })
        .collect();
    for &(m, f) in arrows {
        one_map[m] = f;
    }
    // Locally discrete: 2-cell k is the identity on 1-cell k.
    let two_map = (0..j.two_cell_count())
        .map(|k| c.id2(one_map[j.two(k).src]))
        .collect();
    TwoFunctor {
        dom: j,
        cod: c,
        ob_map,
        one_map,
        two_map,
    }
}

/// A named diagram instance.
#[derive(Debug, Clone)]
pub struct DiagramCase {
    pub name: &'static str,
    pub shape: &'static str,
    pub target: &'static str,
    pub diagram: TwoFunctor,
}

fn case(
    name: &'static str,
    shape_name: &'static str,
    target: &'static str,
    ob_map: Vec<usize>,
    arrows: &[(usize, usize)],
) -> DiagramCase {
    let j = Arc::new(shape(shape_name).expect("shape"));
    let c = Arc::new(two_category(target).expect("target"));
    DiagramCase {
        name,
        shape: shape_name,
        target,
        diagram: diagram(j, c, ob_map, arrows),
    }
}

/// The corpus diagrams. Shapes range over the empty category, a point, a
/// discrete pair, an arrow, a parallel pair and a cospan.
pub fn diagrams() -> Vec<DiagramCase> {
    vec![
        case("empty_in_arrow", "empty", "arrow", vec![], &[]),
        case("empty_in_walking_iso", "empty", "walking_iso", vec![], &[]),
        case("empty_in_terminal", "empty", "terminal", vec![], &[]),
        case("empty_in_involution", "empty", "involution_2cell", vec![], &[]),
        case("empty_in_idempotent", "empty", "idempotent_2cell", vec![], &[]),
        case("point_source_of_arrow", "point", "arrow", vec![0], &[]),
        case("point_target_of_arrow", "point", "arrow", vec![1], &[]),
        case("point_in_walking_2cell", "point", "walking_2cell", vec![0], &[]),
        case("point_in_adjoint_equivalence", "point", "adjoint_equivalence", vec![0], &[]),
        case("point_in_involution", "point", "involution_2cell", vec![0], &[]),
        case("pair_in_terminal", "discrete_pair", "terminal", vec![0, 0], &[]),
        case("pair_in_arrow", "discrete_pair", "arrow", vec![0, 1], &[]),
        case("pair_in_composition_rich", "discrete_pair", "composition_rich", vec![1, 2], &[]),
        case("arrow_identity", "arrow", "arrow", vec![0, 1], &[(1, 1)]),
        case("arrow_in_walking_2cell", "arrow", "walking_2cell", vec![0, 1], &[(1, 2)]),
        case("arrow_in_adjoint_equivalence", "arrow", "adjoint_equivalence", vec![0, 1], &[(1, 4)]),
        case("arrow_in_composition_rich", "arrow", "composition_rich", vec![0, 1], &[(1, 3)]),
        case("parallel_equal_in_walking_2cell", "parallel_pair", "walking_2cell", vec![0, 1], &[(2, 2), (3, 2)]),
        case("parallel_in_invertible_2cell", "parallel_pair", "walking_invertible_2cell", vec![0, 1], &[(2, 2), (3, 3)]),
        case("cospan_in_arrow", "cospan", "arrow", vec![0, 0, 1], &[(3, 1), (4, 1)]),
        case("cospan_in_terminal", "cospan", "terminal", vec![0, 0, 0], &[]),
        case("cospan_in_walking_iso", "cospan", "walking_iso", vec![0, 1, 1], &[(3, 2)]),
    ]
}

/// Every pseudo-cone over `k`, summit by summit.
pub fn all_cones(k: &TwoFunctor, budget: &Budget) -> Result<Vec<PseudoCone>> {
    let mut out = Vec::new();
    for x in 0..k.cod.object_count() {
        let delta = TwoFunctor::constant(k.dom.clone(), k.cod.clone(), x);
        for t in twocat::pseudo_nat_set(&delta, k, budget)? {
            out.push(PseudoCone {
                summit: x,
                transformation: t,
            });
        }
    }
    Ok(out)
}

/// The empty cone in `[1]` with summit the source object: a valid pseudo-cone
/// that is not a homotopy 2-limit, since `Hom(1, 0)` is empty.
pub fn non_limit_cone() -> (DiagramCase, PseudoCone) {
    let case = case("empty_in_arrow", "empty", "arrow", vec![], &[]);
    let cone = PseudoCone {
        summit: 0,
        transformation: twocat::PseudoNatTransformation {
            ones: vec![],
            twos: vec![],
        },
    };
    (case, cone)
}

/// The shipped `.catj` files, as `(relative path, contents)` pairs.
///
/// Diagram files hold the shape `J`, the target `C` and the diagram `K`;
/// cone files refer to `K` and are meant to be loaded after their diagram.
/// Files under `broken/` are intentionally invalid.
pub fn files() -> Vec<(String, Vec<u8>)> {
    use crate::io::{serialize, Document};
    let mut out = Vec::new();
    let mut put = |path: String, docs: Vec<Document>| out.push((path, serialize(&docs)));
    for (name, c) in two_categories() {
        put(format!("two_categories/{name}.catj"), vec![Document::two_category(name, &c)]);
        put(
            format!("double_categories/h_of_{name}.catj"),
            vec![Document::double_category(&format!("H({name})"), &dblcat::embed_h(&c))],
        );
        let inclusion = dblcat::htilde_inclusion(&c).expect("corpus 2-categories are valid");
        put(
            format!("double_categories/htilde_of_{name}.catj"),
            vec![Document::double_category(&format!("Htilde({name})"), &inclusion.cod)],
        );
        put(
            format!("double_functors/htilde_inclusion_of_{name}.catj"),
            vec![
                Document::double_category("H", &inclusion.dom),
                Document::double_category("Htilde", &inclusion.cod),
                Document::double_functor("I", "H", "Htilde", &inclusion),
            ],
        );
    }
    let budget = Budget::unlimited();
    for case in diagrams() {
        let k = &case.diagram;
        put(
            format!("diagrams/{}.catj", case.name),
            vec![
                Document::two_category("J", &k.dom),
                Document::two_category("C", &k.cod),
                Document::two_functor("K", "J", "C", k),
            ],
        );
        let cones = all_cones(k, &budget).expect("corpus cones enumerate");
        let docs = cones
            .iter()
            .enumerate()
            .map(|(i, cone)| Document::pseudo_cone(&format!("cone{i}"), "K", cone))
            .collect();
        put(format!("cones/{}.catj", case.name), docs);
    }
    let (case, cone) = non_limit_cone();
    put(
        format!("cones/{}.non_limit.catj", case.name),
        vec![Document::pseudo_cone("non_limit", "K", &cone)],
    );
    let bi = broken_interchange().expect("tables are well formed");
    put("broken/broken_interchange.catj".into(), vec![Document::two_category("broken_interchange", &bi)]);
    let bg = broken_grid().expect("tables are well formed");
    put("broken/broken_grid.catj".into(), vec![Document::double_category("broken_grid", &bg)]);
    out.push((
        "broken/out_of_range.catj".into(),
        br#"{"kind":"category","format_version":"1","name":"out_of_range","objects":2,"morphisms":[[0,0],[1,1],[0,1]],"identities":[0,1],"composition":[[0,0,0],[1,1,1],[2,0,2],[1,2,7]]}
"#
        .to_vec(),
    ));
    out.push((
        "broken/syntax_error.catj".into(),
        br#"{"kind":"category","format_version":"1","name":"point","objects":1,"morphisms":[[0,0]],"identities":[0],"composition":[[0,0,0]]}
{"kind":"category","format_version":"1","name":"unterminated","objects":1,
"#
        .to_vec(),
    ));
    out.push((
        "broken/unknown_key.catj".into(),
        br#"{"kind":"category","format_version":"1","name":"point","objects":1,"morphisms":[[0,0]],"identities":[0],"composition":[[0,0,0]],"comment":"extra"}
"#
        .to_vec(),
    ));
    out
}
