//! The `.catj` presentation format.
//!
//! A file is a sequence of JSON objects, one per line. Every object carries
//! `kind`, `format_version` and `name`; ids are dense from 0 and composition
//! tables are lists of `[g, f, g∘f]` triples. See `docs/FORMAT.md`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dblcat::{validate_double_category, validate_double_functor, DoubleFunctor, FinDoubleCategory, Square};
use crate::error::{Error, Result};
use crate::fincat::{validate_category, Arrow, FinCategory};
use crate::report::ValidationReport;
use crate::twocat::{
    validate_pseudo_cone, validate_two_category, validate_two_functor, FinTwoCategory, PseudoCone,
    PseudoNatTransformation, TwoFunctor,
};

pub const FORMAT_VERSION: &str = "1";

/// Whether unknown keys are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Strict,
    Lax,
}

type Triple = [usize; 3];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDoc {
    pub format_version: String,
    pub name: String,
    pub objects: usize,
    /// `[src, tgt]` per morphism.
    pub morphisms: Vec<[usize; 2]>,
    pub identities: Vec<usize>,
    pub composition: Vec<Triple>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCategoryDoc {
    pub format_version: String,
    pub name: String,
    pub objects: usize,
    pub one_cells: Vec<[usize; 2]>,
    pub one_identities: Vec<usize>,
    pub one_composition: Vec<Triple>,
    /// `[source 1-cell, target 1-cell]` per 2-cell.
    pub two_cells: Vec<[usize; 2]>,
    pub two_identities: Vec<usize>,
    pub vertical_composition: Vec<Triple>,
    pub horizontal_composition: Vec<Triple>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCategoryDoc {
    pub format_version: String,
    pub name: String,
    pub objects: usize,
    pub horizontals: Vec<[usize; 2]>,
    pub horizontal_identities: Vec<usize>,
    pub horizontal_composition: Vec<Triple>,
    pub verticals: Vec<[usize; 2]>,
    pub vertical_identities: Vec<usize>,
    pub vertical_composition: Vec<Triple>,
    /// `[top, bottom, left, right]` per square.
    pub squares: Vec<[usize; 4]>,
    /// Identity square on each vertical.
    pub square_horizontal_identities: Vec<usize>,
    /// Identity square on each horizontal.
    pub square_vertical_identities: Vec<usize>,
    /// `[b, a, result]` with `a` on the left.
    pub square_horizontal_composition: Vec<Triple>,
    /// `[b, a, result]` with `a` on top.
    pub square_vertical_composition: Vec<Triple>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFunctorDoc {
    pub format_version: String,
    pub name: String,
    pub dom: String,
    pub cod: String,
    pub ob_map: Vec<usize>,
    pub one_map: Vec<usize>,
    pub two_map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleFunctorDoc {
    pub format_version: String,
    pub name: String,
    pub dom: String,
    pub cod: String,
    pub ob_map: Vec<usize>,
    pub h_map: Vec<usize>,
    pub v_map: Vec<usize>,
    pub sq_map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoConeDoc {
    pub format_version: String,
    pub name: String,
    /// Name of a `twofunctor` document.
    pub diagram: String,
    pub summit: usize,
    /// One 1-cell per object of the shape.
    pub components: Vec<usize>,
    /// One invertible 2-cell per 1-cell of the shape.
    pub naturality: Vec<usize>,
}

/// One line of a `.catj` file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Document {
    Category(CategoryDoc),
    TwoCategory(TwoCategoryDoc),
    DoubleCategory(DoubleCategoryDoc),
    TwoFunctor(TwoFunctorDoc),
    DoubleFunctor(DoubleFunctorDoc),
    PseudoCone(PseudoConeDoc),
}

const COMMON_KEYS: [&str; 3] = ["kind", "format_version", "name"];

fn kind_keys(kind: &str) -> Option<&'static [&'static str]> {
    Some(match kind {
        "category" => &["objects", "morphisms", "identities", "composition"],
        "twocategory" => &[
            "objects",
            "one_cells",
            "one_identities",
            "one_composition",
            "two_cells",
            "two_identities",
            "vertical_composition",
            "horizontal_composition",
        ],
        "doublecategory" => &[
            "objects",
            "horizontals",
            "horizontal_identities",
            "horizontal_composition",
            "verticals",
            "vertical_identities",
            "vertical_composition",
            "squares",
            "square_horizontal_identities",
            "square_vertical_identities",
            "square_horizontal_composition",
            "square_vertical_composition",
        ],
        "twofunctor" => &["dom", "cod", "ob_map", "one_map", "two_map"],
        "doublefunctor" => &["dom", "cod", "ob_map", "h_map", "v_map", "sq_map"],
        "pseudocone" => &["diagram", "summit", "components", "naturality"],
        _ => return None,
    })
}

fn sorted(mut t: Vec<Triple>) -> Vec<Triple> {
    t.sort_unstable();
    t
}

fn triples(t: Vec<(usize, usize, usize)>) -> Vec<Triple> {
    sorted(t.into_iter().map(|(a, b, c)| [a, b, c]).collect())
}

fn arrows(a: &[Arrow]) -> Vec<[usize; 2]> {
    a.iter().map(|e| [e.src, e.tgt]).collect()
}

fn unarrows(a: &[[usize; 2]]) -> Vec<Arrow> {
    a.iter().map(|&[s, t]| Arrow::new(s, t)).collect()
}

fn untriples(t: &[Triple]) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
    t.iter().map(|&[a, b, c]| (a, b, c))
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category(_) => "category",
            Document::TwoCategory(_) => "twocategory",
            Document::DoubleCategory(_) => "doublecategory",
            Document::TwoFunctor(_) => "twofunctor",
            Document::DoubleFunctor(_) => "doublefunctor",
            Document::PseudoCone(_) => "pseudocone",
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Document::Category(d) => &d.name,
            Document::TwoCategory(d) => &d.name,
            Document::DoubleCategory(d) => &d.name,
            Document::TwoFunctor(d) => &d.name,
            Document::DoubleFunctor(d) => &d.name,
            Document::PseudoCone(d) => &d.name,
        }
    }

    fn format_version(&self) -> &str {
        match self {
            Document::Category(d) => &d.format_version,
            Document::TwoCategory(d) => &d.format_version,
            Document::DoubleCategory(d) => &d.format_version,
            Document::TwoFunctor(d) => &d.format_version,
            Document::DoubleFunctor(d) => &d.format_version,
            Document::PseudoCone(d) => &d.format_version,
        }
    }

    /// The same document with every composition table sorted.
    pub fn canonical(&self) -> Document {
        let mut d = self.clone();
        match &mut d {
            Document::Category(c) => c.composition = sorted(std::mem::take(&mut c.composition)),
            Document::TwoCategory(c) => {
                c.one_composition = sorted(std::mem::take(&mut c.one_composition));
                c.vertical_composition = sorted(std::mem::take(&mut c.vertical_composition));
                c.horizontal_composition = sorted(std::mem::take(&mut c.horizontal_composition));
            }
            Document::DoubleCategory(c) => {
                c.horizontal_composition = sorted(std::mem::take(&mut c.horizontal_composition));
                c.vertical_composition = sorted(std::mem::take(&mut c.vertical_composition));
                c.square_horizontal_composition = sorted(std::mem::take(&mut c.square_horizontal_composition));
                c.square_vertical_composition = sorted(std::mem::take(&mut c.square_vertical_composition));
            }
            _ => {}
        }
        d
    }

    pub fn category(name: &str, c: &FinCategory) -> Document {
        Document::Category(CategoryDoc {
            format_version: FORMAT_VERSION.into(),
            name: name.into(),
            objects: c.object_count(),
            morphisms: arrows(c.morphisms()),
            identities: c.identities().to_vec(),
            composition: triples(c.composition_triples()),
        })
    }

    pub fn two_category(name: &str, c: &FinTwoCategory) -> Document {
        let (ones, vert) = (c.one_category(), c.vertical_category());
        Document::TwoCategory(TwoCategoryDoc {
            format_version: FORMAT_VERSION.into(),
            name: name.into(),
            objects: c.object_count(),
            one_cells: arrows(ones.morphisms()),
            one_identities: ones.identities().to_vec(),
            one_composition: triples(ones.composition_triples()),
            two_cells: arrows(vert.morphisms()),
            two_identities: vert.identities().to_vec(),
            vertical_composition: triples(vert.composition_triples()),
            horizontal_composition: triples(c.hcomp_triples()),
        })
    }

    pub fn double_category(name: &str, d: &FinDoubleCategory) -> Document {
        let (hor, ver) = (d.horizontal_category(), d.vertical_category());
        Document::DoubleCategory(DoubleCategoryDoc {
            format_version: FORMAT_VERSION.into(),
            name: name.into(),
            objects: d.object_count(),
            horizontals: arrows(hor.morphisms()),
            horizontal_identities: hor.identities().to_vec(),
            horizontal_composition: triples(hor.composition_triples()),
            verticals: arrows(ver.morphisms()),
            vertical_identities: ver.identities().to_vec(),
            vertical_composition: triples(ver.composition_triples()),
            squares: d.squares().iter().map(|s| [s.top, s.bottom, s.left, s.right]).collect(),
            square_horizontal_identities: d.square_h_category().identities().to_vec(),
            square_vertical_identities: d.square_v_category().identities().to_vec(),
            square_horizontal_composition: triples(d.square_h_category().composition_triples()),
            square_vertical_composition: triples(d.square_v_category().composition_triples()),
        })
    }

    pub fn two_functor(name: &str, dom: &str, cod: &str, f: &TwoFunctor) -> Document {
        Document::TwoFunctor(TwoFunctorDoc {
            format_version: FORMAT_VERSION.into(),
            name: name.into(),
            dom: dom.into(),
            cod: cod.into(),
            ob_map: f.ob_map.clone(),
            one_map: f.one_map.clone(),
            two_map: f.two_map.clone(),
        })
    }

    pub fn double_functor(name: &str, dom: &str, cod: &str, f: &DoubleFunctor) -> Document {
        Document::DoubleFunctor(DoubleFunctorDoc {
            format_version: FORMAT_VERSION.into(),
            name: name.into(),
            dom: dom.into(),
            cod: cod.into(),
            ob_map: f.ob_map.clone(),
            h_map: f.h_map.clone(),
            v_map: f.v_map.clone(),
            sq_map: f.sq_map.clone(),
        })
    }

    pub fn pseudo_cone(name: &str, diagram: &str, cone: &PseudoCone) -> Document {
        Document::PseudoCone(PseudoConeDoc {
            format_version: FORMAT_VERSION.into(),
            name: name.into(),
            diagram: diagram.into(),
            summit: cone.summit,
            components: cone.transformation.ones.clone(),
            naturality: cone.transformation.twos.clone(),
        })
    }
}

/// Line and column (both from 1) of byte offset `at`.
fn position(bytes: &[u8], at: usize) -> (usize, usize) {
    let before = &bytes[..at];
    let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
    let start = before.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1);
    (line, at - start + 1)
}

/// Parses a `.catj` file in strict mode.
pub fn parse(bytes: &[u8]) -> Result<Vec<Document>> {
    parse_with(bytes, Mode::Strict)
}

pub fn parse_with(bytes: &[u8], mode: Mode) -> Result<Vec<Document>> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let (line, column) = position(bytes, e.valid_up_to());
        Error::Syntax { line, column, message: "invalid UTF-8".into() }
    })?;
    let mut docs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(raw).map_err(|e| {
            // serde_json appends its own position, which is relative to the line.
            let text = e.to_string();
            let message = text.rfind(" at line ").map_or(text.as_str(), |i| &text[..i]).to_string();
            Error::Syntax { line, column: e.column(), message }
        })?;
        docs.push(document_from_value(value, line, mode)?);
    }
    Ok(docs)
}

fn document_from_value(value: Value, line: usize, mode: Mode) -> Result<Document> {
    let label = match value.get("name").and_then(Value::as_str) {
        Some(n) => format!("{n} (line {line})"),
        None => format!("line {line}"),
    };
    let semantic = |message: String| Error::Semantic { document: label.clone(), message };
    let Value::Object(map) = &value else {
        return Err(semantic("a document must be a JSON object".into()));
    };
    let kind = map
        .get("kind")
        .ok_or_else(|| semantic("missing key `kind`".into()))?
        .as_str()
        .ok_or_else(|| semantic("`kind` must be a string".into()))?;
    let keys = kind_keys(kind).ok_or_else(|| semantic(format!("unknown kind `{kind}`")))?;
    if mode == Mode::Strict {
        if let Some(k) = map.keys().find(|k| !COMMON_KEYS.contains(&k.as_str()) && !keys.contains(&k.as_str())) {
            return Err(semantic(format!("unknown key `{k}` (use lax mode to allow it)")));
        }
    }
    let doc: Document = serde_json::from_value(value.clone()).map_err(|e| semantic(e.to_string()))?;
    if doc.format_version() != FORMAT_VERSION {
        return Err(semantic(format!(
            "unsupported format_version `{}`, expected `{FORMAT_VERSION}`",
            doc.format_version()
        )));
    }
    Ok(doc)
}

/// Canonical bytes: one compact JSON object per line, tables sorted.
pub fn serialize(docs: &[Document]) -> Vec<u8> {
    let mut out = String::new();
    for d in docs {
        out.push_str(&serde_json::to_string(&d.canonical()).expect("documents serialize"));
        out.push('\n');
    }
    out.into_bytes()
}

/// A loaded pseudo-cone and the name of its diagram.
#[derive(Debug, Clone)]
pub struct NamedCone {
    pub diagram: String,
    pub cone: PseudoCone,
}

/// Validated values by name. Documents may refer to anything loaded before
/// them, in the same file or an earlier one.
#[derive(Debug, Clone, Default)]
pub struct Library {
    pub categories: BTreeMap<String, Arc<FinCategory>>,
    pub two_categories: BTreeMap<String, Arc<FinTwoCategory>>,
    pub double_categories: BTreeMap<String, Arc<FinDoubleCategory>>,
    pub two_functors: BTreeMap<String, TwoFunctor>,
    pub double_functors: BTreeMap<String, DoubleFunctor>,
    pub cones: BTreeMap<String, NamedCone>,
    /// Names in load order, with their kinds.
    pub order: Vec<(&'static str, String)>,
}

fn check_len(what: &str, got: usize, want: usize) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("`{what}` has {got} entries, expected {want}"))
    }
}

fn check_ids(what: &str, ids: &[usize], bound: usize, kind: &str) -> std::result::Result<(), String> {
    match ids.iter().enumerate().find(|&(_, &x)| x >= bound) {
        Some((i, &x)) => Err(format!("`{what}[{i}]` = {x} is not a {kind} id (there are {bound})")),
        None => Ok(()),
    }
}

fn construction(e: Error) -> String {
    match e {
        Error::UnknownCell { kind, id } => format!("{kind} id {id} is out of range"),
        Error::Invalid { detail, .. } => detail,
        other => other.to_string(),
    }
}

fn validated(what: &str, report: ValidationReport) -> std::result::Result<(), String> {
    if report.is_empty() {
        Ok(())
    } else {
        Err(format!("not a valid {what}: {report}"))
    }
}

impl Library {
    pub fn load(docs: &[Document]) -> Result<Library> {
        let mut lib = Library::default();
        lib.add(docs)?;
        Ok(lib)
    }

    /// Loads `docs` in order, validating each one.
    pub fn add(&mut self, docs: &[Document]) -> Result<()> {
        for doc in docs {
            let name = doc.name().to_string();
            if self.order.iter().any(|(_, n)| *n == name) {
                return Err(Error::Semantic { document: name, message: "duplicate document name".into() });
            }
            self.add_one(doc).map_err(|message| Error::Semantic { document: name.clone(), message })?;
            self.order.push((doc.kind(), name));
        }
        Ok(())
    }

    fn add_one(&mut self, doc: &Document) -> std::result::Result<(), String> {
        match doc {
            Document::Category(d) => {
                let c = FinCategory::new(d.objects, unarrows(&d.morphisms), d.identities.clone(), untriples(&d.composition))
                    .map_err(construction)?;
                validated("category", validate_category(&c))?;
                self.categories.insert(d.name.clone(), Arc::new(c));
            }
            Document::TwoCategory(d) => {
                let c = FinTwoCategory::new(
                    d.objects,
                    unarrows(&d.one_cells),
                    d.one_identities.clone(),
                    untriples(&d.one_composition),
                    unarrows(&d.two_cells),
                    d.two_identities.clone(),
                    untriples(&d.vertical_composition),
                    untriples(&d.horizontal_composition),
                )
                .map_err(construction)?;
                validated("2-category", validate_two_category(&c))?;
                self.two_categories.insert(d.name.clone(), Arc::new(c));
            }
            Document::DoubleCategory(d) => {
                let hor = FinCategory::new(
                    d.objects,
                    unarrows(&d.horizontals),
                    d.horizontal_identities.clone(),
                    untriples(&d.horizontal_composition),
                )
                .map_err(construction)?;
                let ver = FinCategory::new(
                    d.objects,
                    unarrows(&d.verticals),
                    d.vertical_identities.clone(),
                    untriples(&d.vertical_composition),
                )
                .map_err(construction)?;
                let c = FinDoubleCategory::new(
                    hor,
                    ver,
                    d.squares.iter().map(|&[t, b, l, r]| Square::new(t, b, l, r)).collect(),
                    d.square_horizontal_identities.clone(),
                    d.square_vertical_identities.clone(),
                    untriples(&d.square_horizontal_composition),
                    untriples(&d.square_vertical_composition),
                )
                .map_err(construction)?;
                validated("double category", validate_double_category(&c))?;
                self.double_categories.insert(d.name.clone(), Arc::new(c));
            }
            Document::TwoFunctor(d) => {
                let dom = self.two_category(&d.dom).map_err(|e| e.to_string())?;
                let cod = self.two_category(&d.cod).map_err(|e| e.to_string())?;
                check_len("ob_map", d.ob_map.len(), dom.object_count())?;
                check_len("one_map", d.one_map.len(), dom.one_cell_count())?;
                check_len("two_map", d.two_map.len(), dom.two_cell_count())?;
                check_ids("ob_map", &d.ob_map, cod.object_count(), "object")?;
                check_ids("one_map", &d.one_map, cod.one_cell_count(), "1-cell")?;
                check_ids("two_map", &d.two_map, cod.two_cell_count(), "2-cell")?;
                let f = TwoFunctor {
                    dom,
                    cod,
                    ob_map: d.ob_map.clone(),
                    one_map: d.one_map.clone(),
                    two_map: d.two_map.clone(),
                };
                validated("2-functor", validate_two_functor(&f))?;
                self.two_functors.insert(d.name.clone(), f);
            }
            Document::DoubleFunctor(d) => {
                let dom = self.double_category(&d.dom).map_err(|e| e.to_string())?;
                let cod = self.double_category(&d.cod).map_err(|e| e.to_string())?;
                check_len("ob_map", d.ob_map.len(), dom.object_count())?;
                check_len("h_map", d.h_map.len(), dom.horizontal_count())?;
                check_len("v_map", d.v_map.len(), dom.vertical_count())?;
                check_len("sq_map", d.sq_map.len(), dom.square_count())?;
                check_ids("ob_map", &d.ob_map, cod.object_count(), "object")?;
                check_ids("h_map", &d.h_map, cod.horizontal_count(), "horizontal")?;
                check_ids("v_map", &d.v_map, cod.vertical_count(), "vertical")?;
                check_ids("sq_map", &d.sq_map, cod.square_count(), "square")?;
                let f = DoubleFunctor {
                    dom,
                    cod,
                    ob_map: d.ob_map.clone(),
                    h_map: d.h_map.clone(),
                    v_map: d.v_map.clone(),
                    sq_map: d.sq_map.clone(),
                };
                validated("double functor", validate_double_functor(&f))?;
                self.double_functors.insert(d.name.clone(), f);
            }
            Document::PseudoCone(d) => {
                let k = self.two_functor(&d.diagram).map_err(|e| e.to_string())?;
                check_len("components", d.components.len(), k.dom.object_count())?;
                check_len("naturality", d.naturality.len(), k.dom.one_cell_count())?;
                check_ids("summit", &[d.summit], k.cod.object_count(), "object")?;
                check_ids("components", &d.components, k.cod.one_cell_count(), "1-cell")?;
                check_ids("naturality", &d.naturality, k.cod.two_cell_count(), "2-cell")?;
                let cone = PseudoCone {
                    summit: d.summit,
                    transformation: PseudoNatTransformation {
                        ones: d.components.clone(),
                        twos: d.naturality.clone(),
                    },
                };
                validated("pseudo-cone", validate_pseudo_cone(k, &cone))?;
                self.cones.insert(d.name.clone(), NamedCone { diagram: d.diagram.clone(), cone });
            }
        }
        Ok(())
    }

    fn missing(kind: &str, name: &str) -> Error {
        Error::NotFound(format!("no {kind} named `{name}`"))
    }

    pub fn category(&self, name: &str) -> Result<Arc<FinCategory>> {
        self.categories.get(name).cloned().ok_or_else(|| Self::missing("category", name))
    }

    pub fn two_category(&self, name: &str) -> Result<Arc<FinTwoCategory>> {
        self.two_categories.get(name).cloned().ok_or_else(|| Self::missing("twocategory", name))
    }

    pub fn double_category(&self, name: &str) -> Result<Arc<FinDoubleCategory>> {
        self.double_categories.get(name).cloned().ok_or_else(|| Self::missing("doublecategory", name))
    }

    pub fn two_functor(&self, name: &str) -> Result<&TwoFunctor> {
        self.two_functors.get(name).ok_or_else(|| Self::missing("twofunctor", name))
    }

    pub fn double_functor(&self, name: &str) -> Result<&DoubleFunctor> {
        self.double_functors.get(name).ok_or_else(|| Self::missing("doublefunctor", name))
    }

    pub fn cone(&self, name: &str) -> Result<&NamedCone> {
        self.cones.get(name).ok_or_else(|| Self::missing("pseudocone", name))
    }

    /// The name of the last loaded document of `kind`, if any.
    pub fn last_of(&self, kind: &str) -> Option<&str> {
        self.order.iter().rev().find(|(k, _)| *k == kind).map(|(_, n)| n.as_str())
    }
}

/// Parses and loads one file's contents.
pub fn load(bytes: &[u8], mode: Mode) -> Result<Library> {
    Library::load(&parse_with(bytes, mode)?)
}
