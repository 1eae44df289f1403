//! The `.hax` document format: a line-oriented list of named objects, each
//! a set of references and sparse structure-constant blocks.
//!
//! ```text
//! hax 1
//! field rational
//!
//! hopf kZ2 {
//!   basis 1 g
//!   unit {
//!     -> 1 : 1
//!   }
//!   mul {
//!     1 1 -> 1 : 1
//!     ...
//!   }
//! }
//!
//! cotwist chi {
//!   hopf = kZ2
//!   chi {
//!     g g : -1
//!     ...
//!   }
//! }
//! ```
//!
//! Entries are `ins -> outs : scalar`; functionals drop the arrow and
//! vectors drop the inputs. Basis elements are written as labels, quoted
//! labels or `#index`. A reference may point into another file with
//! `key = name from "path"`. `%` starts a comment.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::algebroid::{check_antipode, check_bialgebroid, check_left_hopf, Bialgebroid, LeftHopfAlgebroid};
use crate::cocycle::{validate_cocycle, CocyclePair};
use crate::comod::{ComoduleAlgebra, Measuring};
use crate::error::Error as ModuleError;
use crate::exactla::{flatten, unflatten, CoeffTensor, Field, LinMap, Scalar, ScalarParseError, SparseVec};
use crate::hopf::{default_labels, CoquasiStructure, FinAlgebra, FinCoalgebra, HopfAlgebra, HopfCotwist};
use crate::report::Report;
use crate::twist::{validate_algebroid_cocycle, AlgebroidCocycle};

pub const FORMAT_VERSION: u32 = 1;
const MAX_INCLUDE_DEPTH: usize = 16;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown field `{field}` in {kind}")]
    UnknownField { line: usize, col: usize, kind: String, field: String },
    #[error("{line}:{col}: dimension mismatch: {msg}")]
    DimensionMismatch { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: bad scalar `{text}`: {source}")]
    BadScalar { line: usize, col: usize, text: String, source: ScalarParseError },
    #[error("{line}:{col}: unknown basis label `{label}`")]
    UnknownLabel { line: usize, col: usize, label: String },
    #[error("{line}:{col}: unresolved reference `{name}`{}", expected.as_ref().map(|e| format!(" (expected {e})")).unwrap_or_default())]
    UnresolvedReference { line: usize, col: usize, name: String, expected: Option<String> },
    #[error("{line}:{col}: cannot build {kind}: {source}")]
    Construction { line: usize, col: usize, kind: String, source: ModuleError },
    #[error("{}: {source}", path.display())]
    Included { path: PathBuf, source: Box<DocError> },
    #[error("{}: {msg}", path.display())]
    Io { path: PathBuf, msg: String },
}

impl DocError {
    /// (line, column) of the offending token, when there is one.
    pub fn position(&self) -> Option<(usize, usize)> {
        match self {
            DocError::Syntax { line, col, .. }
            | DocError::UnknownField { line, col, .. }
            | DocError::DimensionMismatch { line, col, .. }
            | DocError::BadScalar { line, col, .. }
            | DocError::UnknownLabel { line, col, .. }
            | DocError::UnresolvedReference { line, col, .. }
            | DocError::Construction { line, col, .. } => Some((*line, *col)),
            DocError::Included { .. } | DocError::Io { .. } => None,
        }
    }
}

type DocResult<T> = std::result::Result<T, DocError>;

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> DocError {
    DocError::Syntax { line, col, msg: msg.into() }
}

fn mismatch(line: usize, col: usize, msg: impl Into<String>) -> DocError {
    DocError::DimensionMismatch { line, col, msg: msg.into() }
}

#[derive(Clone, Debug)]
pub enum Object {
    Algebra(FinAlgebra),
    Coalgebra { labels: Vec<String>, coalgebra: FinCoalgebra },
    Hopf(HopfAlgebra),
    Comodule(ComoduleAlgebra),
    Measuring(Measuring),
    CocyclePair(CocyclePair),
    Cotwist(HopfCotwist),
    Coquasi(CoquasiStructure),
    Bialgebroid(Bialgebroid),
    HopfAlgebroid(LeftHopfAlgebroid),
    AlgebroidCocycle(AlgebroidCocycle),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Algebra(_) => "algebra",
            Object::Coalgebra { .. } => "coalgebra",
            Object::Hopf(_) => "hopf",
            Object::Comodule(_) => "comodule",
            Object::Measuring(_) => "measuring",
            Object::CocyclePair(_) => "cocycle-pair",
            Object::Cotwist(_) => "cotwist",
            Object::Coquasi(_) => "coquasi",
            Object::Bialgebroid(_) => "bialgebroid",
            Object::HopfAlgebroid(_) => "hopf-algebroid",
            Object::AlgebroidCocycle(_) => "algebroid-cocycle",
        }
    }

    /// The owning module's validator.
    pub fn validate(&self) -> Report {
        match self {
            Object::Algebra(a) => a.validate(),
            Object::Coalgebra { coalgebra, .. } => coalgebra.validate(),
            Object::Hopf(h) => h.validate(),
            Object::Comodule(p) => p.validate(),
            Object::Measuring(m) => m.validate(),
            Object::CocyclePair(p) => validate_cocycle(p),
            Object::Cotwist(c) => c.validate(),
            Object::Coquasi(c) => c.validate(),
            Object::Bialgebroid(b) => check_bialgebroid(b),
            Object::HopfAlgebroid(h) => validate_hopf_algebroid(h),
            Object::AlgebroidCocycle(c) => validate_algebroid_cocycle(c),
        }
    }

    fn as_algebra(&self) -> Option<&FinAlgebra> {
        match self {
            Object::Algebra(a) => Some(a),
            Object::Hopf(h) => Some(&h.algebra),
            _ => None,
        }
    }

    fn as_hopf(&self) -> Option<&HopfAlgebra> {
        match self {
            Object::Hopf(h) => Some(h),
            _ => None,
        }
    }

    fn as_bialgebroid(&self) -> Option<&Bialgebroid> {
        match self {
            Object::Bialgebroid(b) => Some(b),
            Object::HopfAlgebroid(h) => Some(&h.base),
            _ => None,
        }
    }
}

/// Bialgebroid axioms, invertibility of λ with the stored λ⁻¹, and the
/// antipode clauses when an antipode is stored.
pub fn validate_hopf_algebroid(h: &LeftHopfAlgebroid) -> Report {
    let mut r = Report::new("left Hopf algebroid");
    r.absorb("", check_bialgebroid(&h.base));
    match check_left_hopf(h) {
        Ok(lh) => r.absorb("", lh),
        Err(e) => {
            r.check_bool("lambda.invertible", "λ: L⊗_{B^op} L → L⊗_B L bijective", false);
            r.note_last(e.to_string());
        }
    }
    if let Some((s, s_inv)) = &h.antipode {
        r.absorb("", check_antipode(h, s, s_inv));
    }
    r
}

fn bialgebroid_eq(a: &Bialgebroid, b: &Bialgebroid) -> bool {
    a.l == b.l && a.b == b.b && a.s == b.s && a.t == b.t && a.comul == b.comul && a.counit == b.counit
}

impl PartialEq for Object {
    fn eq(&self, other: &Object) -> bool {
        use Object::*;
        match (self, other) {
            (Algebra(a), Algebra(b)) => a == b,
            (Coalgebra { coalgebra: a, .. }, Coalgebra { coalgebra: b, .. }) => a == b,
            (Hopf(a), Hopf(b)) => a == b,
            (Comodule(a), Comodule(b)) => a == b,
            (Measuring(a), Measuring(b)) => a == b,
            (CocyclePair(a), CocyclePair(b)) => a == b,
            (Cotwist(a), Cotwist(b)) => a == b,
            (Coquasi(a), Coquasi(b)) => a == b,
            (Bialgebroid(a), Bialgebroid(b)) => bialgebroid_eq(a, b),
            (HopfAlgebroid(a), HopfAlgebroid(b)) => {
                bialgebroid_eq(&a.base, &b.base) && a.lambda_inv == b.lambda_inv && a.antipode == b.antipode
            }
            (AlgebroidCocycle(a), AlgebroidCocycle(b)) => {
                bialgebroid_eq(&a.host, &b.host) && a.varsigma == b.varsigma && a.varsigma_inv == b.varsigma_inv
            }
            _ => false,
        }
    }
}

/// A parsed or to-be-emitted document: a field and named objects in order.
#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub field: Field,
    pub objects: Vec<(String, Object)>,
}

impl Document {
    pub fn new(field: Field) -> Document {
        Document { field, objects: Vec::new() }
    }

    /// Appends `obj`; a repeated name gets a numeric suffix. Returns the name used.
    pub fn push(&mut self, name: &str, obj: Object) -> String {
        let taken: HashSet<&str> = self.objects.iter().map(|(n, _)| n.as_str()).collect();
        let name = fresh_name(name, |n| taken.contains(n));
        self.objects.push((name.clone(), obj));
        name
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }

    /// The last object of `kind` (dependencies come first), or the one
    /// called `name` when given.
    pub fn select(&self, kind: &str, name: Option<&str>) -> Option<(&str, &Object)> {
        self.objects
            .iter()
            .rev()
            .find(|(n, o)| o.kind() == kind && name.is_none_or(|w| w == n))
            .map(|(n, o)| (n.as_str(), o))
    }

    pub fn parse(text: &str) -> DocResult<Document> {
        Parser::new(None, 0, None).document(text)
    }

    /// Parses with `from "path"` references resolved relative to `base`.
    /// A given `field` is used when the document declares none, and must
    /// agree with the declaration otherwise.
    pub fn parse_opts(text: &str, base: Option<&Path>, field: Option<Field>) -> DocResult<Document> {
        Parser::new(base.map(Path::to_path_buf), 0, field).document(text)
    }

    pub fn load(path: &Path) -> DocResult<Document> {
        load_at_depth(path, 0, None)
    }

    pub fn load_opts(path: &Path, field: Option<Field>) -> DocResult<Document> {
        load_at_depth(path, 0, field)
    }

    /// Canonical text: dependencies are written before their users, and
    /// identical dependencies are written once.
    pub fn emit(&self) -> String {
        let mut e = Emitter::new(self.field);
        for (name, obj) in &self.objects {
            e.place(name, obj, true);
        }
        e.out
    }
}

fn load_at_depth(path: &Path, depth: usize, field: Option<Field>) -> DocResult<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| DocError::Io { path: path.to_path_buf(), msg: e.to_string() })?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Parser::new(Some(base), depth, field).document(&text)
}

fn fresh_name(name: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(name) {
        return name.to_string();
    }
    (2..).map(|k| format!("{name}-{k}")).find(|n| !taken(n)).unwrap()
}

// ---------------------------------------------------------------- lexing

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Quoted(String),
    Open,
    Close,
    Equals,
    Arrow,
    /// `: text` up to the end of the line
    Value(String),
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    col: usize,
}

fn lex_line(line: &str, lno: usize) -> DocResult<Vec<Spanned>> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            c if c.is_whitespace() => i += 1,
            '%' => break,
            '{' => {
                out.push(Spanned { tok: Tok::Open, col });
                i += 1;
            }
            '}' => {
                out.push(Spanned { tok: Tok::Close, col });
                i += 1;
            }
            '=' => {
                out.push(Spanned { tok: Tok::Equals, col });
                i += 1;
            }
            ':' => {
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_whitespace() {
                    j += 1;
                }
                let rest: String = chars[j..].iter().collect();
                let rest = rest.split('%').next().unwrap_or("").trim().to_string();
                out.push(Spanned { tok: Tok::Value(rest), col: j + 1 });
                break;
            }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err(syntax(lno, col, "unterminated string")),
                        Some('"') => break,
                        Some('\\') => {
                            match chars.get(i + 1) {
                                Some(e @ ('"' | '\\')) => s.push(*e),
                                _ => return Err(syntax(lno, i + 1, "bad escape")),
                            }
                            i += 2;
                        }
                        Some(ch) => {
                            s.push(*ch);
                            i += 1;
                        }
                    }
                }
                i += 1;
                out.push(Spanned { tok: Tok::Quoted(s), col });
            }
            _ => {
                let start = i;
                while i < chars.len() && !chars[i].is_whitespace() && !"{}=:\"%".contains(chars[i]) {
                    i += 1;
                }
                let w: String = chars[start..i].iter().collect();
                let tok = if w == "->" { Tok::Arrow } else { Tok::Word(w) };
                out.push(Spanned { tok, col });
            }
        }
    }
    Ok(out)
}

fn needs_quotes(label: &str) -> bool {
    label.is_empty()
        || label == "->"
        || label.starts_with('#')
        || label.chars().any(|c| c.is_whitespace() || "{}=:\"%\\".contains(c))
}

fn quote_label(label: &str) -> String {
    if needs_quotes(label) {
        format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
    } else {
        label.to_string()
    }
}

// ---------------------------------------------------------------- parsing

#[derive(Clone, Debug)]
struct Label {
    text: String,
    quoted: bool,
    line: usize,
    col: usize,
}

#[derive(Debug)]
struct Entry {
    ins: Vec<Label>,
    outs: Option<Vec<Label>>,
    value: String,
    line: usize,
    col: usize,
}

#[derive(Debug)]
struct Block {
    key: String,
    line: usize,
    col: usize,
    entries: Vec<Entry>,
}

#[derive(Debug)]
struct RefItem {
    key: String,
    name: String,
    path: Option<String>,
    line: usize,
    col: usize,
}

#[derive(Debug)]
struct Body {
    kind: String,
    line: usize,
    col: usize,
    basis: Option<(Vec<String>, usize, usize)>,
    refs: Vec<RefItem>,
    blocks: Vec<Block>,
}

struct Schema {
    basis: bool,
    refs: &'static [&'static str],
    blocks: &'static [&'static str],
}

fn schema(kind: &str) -> Option<Schema> {
    let s = |basis, refs, blocks| Some(Schema { basis, refs, blocks });
    match kind {
        "algebra" => s(true, &[], &["unit", "mul"]),
        "coalgebra" => s(true, &[], &["comul", "counit"]),
        "hopf" => s(true, &[], &["unit", "mul", "comul", "counit", "antipode"]),
        "comodule" => s(false, &["algebra", "hopf"], &["coaction"]),
        "measuring" => s(false, &["hopf", "algebra"], &["action"]),
        "cocycle-pair" => s(false, &["hopf", "algebra"], &["action", "sigma"]),
        "cotwist" => s(false, &["hopf"], &["chi"]),
        "coquasi" => s(false, &["hopf"], &["r"]),
        "bialgebroid" => s(false, &["algebra", "base"], &["source", "target", "comul", "counit"]),
        "hopf-algebroid" => s(false, &["bialgebroid"], &["lambda-inverse", "antipode", "antipode-inverse"]),
        "algebroid-cocycle" => s(false, &["bialgebroid"], &["cocycle", "inverse"]),
        _ => None,
    }
}

struct Parser {
    base: Option<PathBuf>,
    depth: usize,
    field: Field,
    required_field: Option<Field>,
    objects: Vec<(String, Object)>,
    includes: HashMap<PathBuf, Document>,
}

impl Parser {
    fn new(base: Option<PathBuf>, depth: usize, required_field: Option<Field>) -> Parser {
        let field = required_field.unwrap_or(Field::Rational);
        Parser { base, depth, field, required_field, objects: Vec::new(), includes: HashMap::new() }
    }

    fn document(mut self, text: &str) -> DocResult<Document> {
        let lines: Vec<Vec<Spanned>> =
            text.lines().enumerate().map(|(k, l)| lex_line(l, k + 1)).collect::<DocResult<_>>()?;
        let mut rows = lines.into_iter().enumerate().map(|(k, t)| (k + 1, t)).filter(|(_, t)| !t.is_empty());
        let last_line = text.lines().count().max(1);

        match rows.next() {
            Some((ln, toks)) => match toks.as_slice() {
                [Spanned { tok: Tok::Word(h), .. }, Spanned { tok: Tok::Word(v), col }] if h == "hax" => {
                    if v.parse::<u32>().ok() != Some(FORMAT_VERSION) {
                        return Err(syntax(ln, *col, format!("unsupported format version `{v}`")));
                    }
                }
                _ => return Err(syntax(ln, toks[0].col, format!("expected `hax {FORMAT_VERSION}` header"))),
            },
            None => return Err(syntax(1, 1, format!("expected `hax {FORMAT_VERSION}` header"))),
        }

        let mut seen_field = false;
        while let Some((ln, toks)) = rows.next() {
            match toks.as_slice() {
                [Spanned { tok: Tok::Word(w), col }, rest @ ..] if w == "field" => {
                    if seen_field || !self.objects.is_empty() {
                        return Err(syntax(ln, *col, "field must be declared once, before any object"));
                    }
                    let spec = match rest {
                        [Spanned { tok: Tok::Word(s), .. }] => s.clone(),
                        // `cyclotomic:4` lexes as a word and a value
                        [Spanned { tok: Tok::Word(s), .. }, Spanned { tok: Tok::Value(v), .. }] => format!("{s}:{v}"),
                        _ => return Err(syntax(ln, *col, "expected `field rational` or `field cyclotomic:<n>`")),
                    };
                    self.field = Field::parse(&spec).ok_or_else(|| syntax(ln, *col, format!("unknown field `{spec}`")))?;
                    if let Some(f) = self.required_field.filter(|f| *f != self.field) {
                        return Err(mismatch(ln, *col, format!("document is over {} but {f} was requested", self.field)));
                    }
                    seen_field = true;
                }
                [Spanned { tok: Tok::Word(kind), col }, Spanned { tok: Tok::Word(name), col: ncol }, Spanned { tok: Tok::Open, .. }] => {
                    let schema = schema(kind).ok_or_else(|| syntax(ln, *col, format!("unknown object kind `{kind}`")))?;
                    if self.objects.iter().any(|(n, _)| n == name) {
                        return Err(syntax(ln, *ncol, format!("duplicate object name `{name}`")));
                    }
                    let body = self.body(kind, ln, *col, &schema, &mut rows, last_line)?;
                    let obj = self.build(&body)?;
                    self.objects.push((name.clone(), obj));
                }
                _ => return Err(syntax(ln, toks[0].col, "expected `field ...` or `<kind> <name> {`")),
            }
        }
        Ok(Document { field: self.field, objects: self.objects })
    }

    fn body(
        &self,
        kind: &str,
        line: usize,
        col: usize,
        schema: &Schema,
        rows: &mut impl Iterator<Item = (usize, Vec<Spanned>)>,
        last_line: usize,
    ) -> DocResult<Body> {
        let mut body = Body { kind: kind.to_string(), line, col, basis: None, refs: Vec::new(), blocks: Vec::new() };
        let mut keys: HashSet<String> = HashSet::new();
        let unknown = |ln, c, f: &str| DocError::UnknownField { line: ln, col: c, kind: kind.to_string(), field: f.to_string() };
        loop {
            let Some((ln, toks)) = rows.next() else {
                return Err(syntax(last_line, 1, format!("unclosed {kind} block opened on line {line}")));
            };
            let first = &toks[0];
            match toks.as_slice() {
                [Spanned { tok: Tok::Close, .. }] => return Ok(body),
                [Spanned { tok: Tok::Word(w), col: c }, rest @ ..] if w == "basis" || w == "dim" => {
                    if !schema.basis {
                        return Err(unknown(ln, *c, w));
                    }
                    if body.basis.is_some() {
                        return Err(syntax(ln, *c, "basis declared twice"));
                    }
                    let labels = if w == "dim" {
                        match rest {
                            [Spanned { tok: Tok::Word(n), col }] => {
                                let n: usize = n.parse().map_err(|_| syntax(ln, *col, "expected a dimension"))?;
                                default_labels(n)
                            }
                            _ => return Err(syntax(ln, *c, "expected `dim <n>`")),
                        }
                    } else {
                        let mut labels = Vec::new();
                        for t in rest {
                            match &t.tok {
                                Tok::Word(s) if !s.starts_with('#') => labels.push(s.clone()),
                                Tok::Quoted(s) => labels.push(s.clone()),
                                _ => return Err(syntax(ln, t.col, "expected a basis label")),
                            }
                        }
                        labels
                    };
                    if labels.is_empty() {
                        return Err(mismatch(ln, *c, "empty basis"));
                    }
                    let mut seen = HashSet::new();
                    if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
                        return Err(syntax(ln, *c, format!("duplicate basis label `{dup}`")));
                    }
                    body.basis = Some((labels, ln, *c));
                }
                [Spanned { tok: Tok::Word(key), col: c }, Spanned { tok: Tok::Equals, .. }, rest @ ..] => {
                    if !schema.refs.contains(&key.as_str()) {
                        return Err(unknown(ln, *c, key));
                    }
                    if !keys.insert(key.clone()) {
                        return Err(syntax(ln, *c, format!("`{key}` given twice")));
                    }
                    let (name, path) = match rest {
                        [Spanned { tok: Tok::Word(n), .. }] => (n.clone(), None),
                        [Spanned { tok: Tok::Word(n), .. }, Spanned { tok: Tok::Word(f), .. }, Spanned { tok: Tok::Quoted(p), .. }]
                            if f == "from" =>
                        {
                            (n.clone(), Some(p.clone()))
                        }
                        _ => return Err(syntax(ln, *c, format!("expected `{key} = <name>` or `{key} = <name> from \"<path>\"`"))),
                    };
                    body.refs.push(RefItem { key: key.clone(), name, path, line: ln, col: *c });
                }
                [Spanned { tok: Tok::Word(key), col: c }, Spanned { tok: Tok::Open, .. }] => {
                    if !schema.blocks.contains(&key.as_str()) {
                        return Err(unknown(ln, *c, key));
                    }
                    if !keys.insert(key.clone()) {
                        return Err(syntax(ln, *c, format!("`{key}` given twice")));
                    }
                    let entries = block_entries(rows, key, ln, last_line)?;
                    body.blocks.push(Block { key: key.clone(), line: ln, col: *c, entries });
                }
                [Spanned { tok: Tok::Word(key), col: c }, ..] if !schema.blocks.contains(&key.as_str())
                    && !schema.refs.contains(&key.as_str()) =>
                {
                    return Err(unknown(ln, *c, key));
                }
                _ => return Err(syntax(ln, first.col, "expected `basis`, `<key> = <name>`, `<key> {` or `}`")),
            }
        }
    }

    fn resolve(&mut self, r: &RefItem) -> DocResult<Object> {
        let missing = |expected: Option<String>| DocError::UnresolvedReference {
            line: r.line,
            col: r.col,
            name: r.name.clone(),
            expected,
        };
        let Some(rel) = &r.path else {
            return self.objects.iter().find(|(n, _)| *n == r.name).map(|(_, o)| o.clone()).ok_or_else(|| missing(None));
        };
        if self.depth >= MAX_INCLUDE_DEPTH {
            return Err(syntax(r.line, r.col, "file references nested too deeply"));
        }
        let path = self.base.clone().unwrap_or_default().join(rel);
        if !self.includes.contains_key(&path) {
            let doc = load_at_depth(&path, self.depth + 1, Some(self.field))
                .map_err(|e| DocError::Included { path: path.clone(), source: Box::new(e) })?;
            self.includes.insert(path.clone(), doc);
        }
        self.includes[&path].get(&r.name).cloned().ok_or_else(|| missing(None))
    }

    fn reference<T>(&mut self, body: &Body, key: &str, expected: &str, pick: impl Fn(&Object) -> Option<T>) -> DocResult<T> {
        let Some(r) = body.refs.iter().find(|r| r.key == key) else {
            return Err(syntax(body.line, body.col, format!("{} needs `{key} = <name>`", body.kind)));
        };
        let obj = self.resolve(r)?;
        pick(&obj).ok_or_else(|| DocError::UnresolvedReference {
            line: r.line,
            col: r.col,
            name: r.name.clone(),
            expected: Some(format!("{expected}, found {}", obj.kind())),
        })
    }

    fn table(&self, body: &Body, key: &str, ins: &[&[String]], outs: &[&[String]]) -> DocResult<Option<LinMap>> {
        body.blocks.iter().find(|b| b.key == key).map(|b| read_table(b, ins, outs, self.field)).transpose()
    }

    fn required(&self, body: &Body, key: &str, ins: &[&[String]], outs: &[&[String]]) -> DocResult<LinMap> {
        self.table(body, key, ins, outs)?
            .ok_or_else(|| syntax(body.line, body.col, format!("{} needs a `{key}` block", body.kind)))
    }

    fn build(&mut self, body: &Body) -> DocResult<Object> {
        let construction = |e: ModuleError| DocError::Construction { line: body.line, col: body.col, kind: body.kind.clone(), source: e };
        let labels = || -> DocResult<Vec<String>> {
            body.basis
                .as_ref()
                .map(|(l, _, _)| l.clone())
                .ok_or_else(|| syntax(body.line, body.col, format!("{} needs `basis` or `dim`", body.kind)))
        };
        let tensor = |dims: Vec<usize>, map: LinMap| CoeffTensor::from_map(dims, map);
        Ok(match body.kind.as_str() {
            "algebra" | "hopf" => {
                let labels = labels()?;
                let n = labels.len();
                let l: &[String] = &labels;
                let unit = self.required(body, "unit", &[], &[l])?.cols.remove(0);
                let mul = tensor(vec![n, n], self.required(body, "mul", &[l, l], &[l])?);
                let alg = FinAlgebra::new(labels.clone(), mul, unit);
                if body.kind == "algebra" {
                    Object::Algebra(alg)
                } else {
                    let comul = tensor(vec![n], self.required(body, "comul", &[l], &[l, l])?);
                    let counit = self.required(body, "counit", &[l], &[])?.transpose().cols.remove(0);
                    let coalg = FinCoalgebra::new(comul, counit);
                    match self.table(body, "antipode", &[l], &[l])? {
                        Some(s) => Object::Hopf(HopfAlgebra::new(alg, coalg, s)),
                        None => Object::Hopf(HopfAlgebra::with_computed_antipode(alg, coalg).map_err(construction)?),
                    }
                }
            }
            "coalgebra" => {
                let labels = labels()?;
                let l: &[String] = &labels;
                let comul = tensor(vec![l.len()], self.required(body, "comul", &[l], &[l, l])?);
                let counit = self.required(body, "counit", &[l], &[])?.transpose().cols.remove(0);
                Object::Coalgebra { labels: labels.clone(), coalgebra: FinCoalgebra::new(comul, counit) }
            }
            "comodule" => {
                let p = self.reference(body, "algebra", "an algebra", |o| o.as_algebra().cloned())?;
                let h = self.reference(body, "hopf", "a hopf algebra", |o| o.as_hopf().cloned())?;
                let map = self.required(body, "coaction", &[&p.labels], &[&p.labels, &h.algebra.labels])?;
                Object::Comodule(ComoduleAlgebra::new(p.clone(), h, tensor(vec![p.dim()], map)))
            }
            "measuring" | "cocycle-pair" => {
                let h = self.reference(body, "hopf", "a hopf algebra", |o| o.as_hopf().cloned())?;
                let b = self.reference(body, "algebra", "an algebra", |o| o.as_algebra().cloned())?;
                let (hl, bl): (&[String], &[String]) = (&h.algebra.labels, &b.labels);
                let act = self.table(body, "action", &[hl, bl], &[bl])?;
                let act = match act {
                    Some(m) => Measuring::new(&h, &b, tensor(vec![h.dim(), b.dim()], m)),
                    None if body.kind == "cocycle-pair" => Measuring::trivial(&h, &b),
                    None => return Err(syntax(body.line, body.col, "measuring needs an `action` block")),
                };
                if body.kind == "measuring" {
                    Object::Measuring(act)
                } else {
                    let sigma = tensor(vec![h.dim(), h.dim()], self.required(body, "sigma", &[hl, hl], &[bl])?);
                    Object::CocyclePair(CocyclePair::new(act, sigma).map_err(construction)?)
                }
            }
            "cotwist" | "coquasi" => {
                let h = self.reference(body, "hopf", "a hopf algebra", |o| o.as_hopf().cloned())?;
                let hl: &[String] = &h.algebra.labels;
                let key = if body.kind == "cotwist" { "chi" } else { "r" };
                let form = tensor(vec![h.dim(), h.dim()], self.required(body, key, &[hl, hl], &[])?);
                if body.kind == "cotwist" {
                    Object::Cotwist(HopfCotwist::new(&h, form).map_err(construction)?)
                } else {
                    Object::Coquasi(CoquasiStructure::new(&h, form).map_err(construction)?)
                }
            }
            "bialgebroid" => {
                let l = self.reference(body, "algebra", "an algebra", |o| o.as_algebra().cloned())?;
                let b = self.reference(body, "base", "an algebra", |o| o.as_algebra().cloned())?;
                let (ll, bl): (&[String], &[String]) = (&l.labels, &b.labels);
                let s = self.required(body, "source", &[bl], &[ll])?;
                let t = self.required(body, "target", &[bl], &[ll])?;
                let comul = self.required(body, "comul", &[ll], &[ll, ll])?;
                let counit = self.required(body, "counit", &[ll], &[bl])?;
                Object::Bialgebroid(Bialgebroid::from_ambient(l.clone(), b.clone(), s, t, &comul, counit))
            }
            "hopf-algebroid" => {
                let bd = self.reference(body, "bialgebroid", "a bialgebroid", |o| o.as_bialgebroid().cloned())?;
                let ll: &[String] = &bd.l.labels;
                let block = body.blocks.iter().find(|b| b.key == "lambda-inverse");
                let amb = self.required(body, "lambda-inverse", &[ll, ll], &[ll, ll])?;
                let n = bd.dim();
                let section: HashSet<usize> = (0..bd.tensor_b.dim()).map(|k| bd.tensor_b.section_basis(k)).collect();
                if let Some(j) = (0..n * n).find(|j| !amb.col(*j).is_zero() && !section.contains(j)) {
                    let b = block.unwrap();
                    let e = b.entries.iter().find(|e| index_of(&e.ins, &[ll, ll]).ok() == Some(j));
                    let (line, col) = e.map_or((b.line, b.col), |e| (e.line, e.col));
                    return Err(mismatch(
                        line,
                        col,
                        format!("lambda-inverse is read on the section of L⊗_B L; `{} {}` is not a section pair", ll[j / n], ll[j % n]),
                    ));
                }
                let s = self.table(body, "antipode", &[ll], &[ll])?;
                let s_inv = self.table(body, "antipode-inverse", &[ll], &[ll])?;
                let mut h = LeftHopfAlgebroid::from_ambient_inverse(bd, &amb);
                match (s, s_inv) {
                    (Some(s), Some(si)) => h = h.with_antipode(s, si),
                    (None, None) => {}
                    (Some(s), None) => {
                        let si = crate::exactla::inverse(&s)
                            .ok_or_else(|| construction(ModuleError::NotInvertible("antipode".into())))?;
                        h = h.with_antipode(s, si);
                    }
                    (None, Some(_)) => return Err(syntax(body.line, body.col, "antipode-inverse given without antipode")),
                }
                Object::HopfAlgebroid(h)
            }
            "algebroid-cocycle" => {
                let bd = self.reference(body, "bialgebroid", "a bialgebroid", |o| o.as_bialgebroid().cloned())?;
                let (ll, bl): (&[String], &[String]) = (&bd.l.labels, &bd.b.labels);
                let n = bd.dim();
                let vs = tensor(vec![n, n], self.required(body, "cocycle", &[ll, ll], &[bl])?);
                let vs_inv = tensor(vec![n, n], self.required(body, "inverse", &[ll, ll], &[bl])?);
                Object::AlgebroidCocycle(AlgebroidCocycle::new(bd.clone(), vs, vs_inv))
            }
            other => unreachable!("schema admitted `{other}`"),
        })
    }
}

fn block_entries(
    rows: &mut impl Iterator<Item = (usize, Vec<Spanned>)>,
    key: &str,
    open_line: usize,
    last_line: usize,
) -> DocResult<Vec<Entry>> {
    let mut entries = Vec::new();
    loop {
        let Some((ln, toks)) = rows.next() else {
            return Err(syntax(last_line, 1, format!("unclosed `{key}` block opened on line {open_line}")));
        };
        if let [Spanned { tok: Tok::Close, .. }] = toks.as_slice() {
            return Ok(entries);
        }
        let mut ins = Vec::new();
        let mut outs: Option<Vec<Label>> = None;
        let mut value = None;
        for t in &toks {
            let target = match &mut outs {
                Some(o) => o,
                None => &mut ins,
            };
            match &t.tok {
                Tok::Word(w) => target.push(Label { text: w.clone(), quoted: false, line: ln, col: t.col }),
                Tok::Quoted(w) => target.push(Label { text: w.clone(), quoted: true, line: ln, col: t.col }),
                Tok::Arrow if outs.is_none() => outs = Some(Vec::new()),
                Tok::Value(v) => {
                    if v.is_empty() {
                        return Err(syntax(ln, t.col, "missing scalar after `:`"));
                    }
                    value = Some((v.clone(), t.col));
                }
                _ => return Err(syntax(ln, t.col, "expected `<in...> -> <out...> : <scalar>`")),
            }
        }
        let Some((value, col)) = value else {
            return Err(syntax(ln, toks[0].col, "entry needs `: <scalar>`"));
        };
        entries.push(Entry { ins, outs, value, line: ln, col });
    }
}

fn label_index(l: &Label, labels: &[String]) -> DocResult<usize> {
    if !l.quoted {
        if let Some(num) = l.text.strip_prefix('#') {
            let i: usize = num.parse().map_err(|_| syntax(l.line, l.col, format!("bad index `{}`", l.text)))?;
            if i >= labels.len() {
                return Err(mismatch(l.line, l.col, format!("index {i} out of range for dimension {}", labels.len())));
            }
            return Ok(i);
        }
    }
    labels
        .iter()
        .position(|x| *x == l.text)
        .ok_or_else(|| DocError::UnknownLabel { line: l.line, col: l.col, label: l.text.clone() })
}

fn index_of(ls: &[Label], bases: &[&[String]]) -> DocResult<usize> {
    let idx: Vec<usize> = ls.iter().zip(bases).map(|(l, b)| label_index(l, b)).collect::<DocResult<_>>()?;
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    Ok(flatten(&dims, &idx))
}

/// A block as the matrix from ⊗ins to ⊗outs.
fn read_table(block: &Block, ins: &[&[String]], outs: &[&[String]], field: Field) -> DocResult<LinMap> {
    let dom: usize = ins.iter().map(|b| b.len()).product();
    let cod: usize = outs.iter().map(|b| b.len()).product();
    let mut cols: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
    for e in &block.entries {
        let arity = |n: usize, want: usize, what: &str| {
            if n == want {
                Ok(())
            } else {
                Err(mismatch(e.line, 1, format!("`{}` entries take {want} {what} indices, found {n}", block.key)))
            }
        };
        arity(e.ins.len(), ins.len(), "input")?;
        let out_labels: &[Label] = match (&e.outs, outs.is_empty()) {
            (None, true) => &[],
            (Some(o), false) => o,
            (None, false) => return Err(syntax(e.line, 1, format!("`{}` entries need `->`", block.key))),
            (Some(_), true) => return Err(syntax(e.line, 1, format!("`{}` entries are scalar-valued; drop `->`", block.key))),
        };
        arity(out_labels.len(), outs.len(), "output")?;
        let i = index_of(&e.ins, ins)?;
        let o = index_of(out_labels, outs)?;
        let c = Scalar::parse(&e.value, field)
            .map_err(|source| DocError::BadScalar { line: e.line, col: e.col, text: e.value.clone(), source })?;
        if cols.entry(i).or_default().insert(o, c).is_some() {
            return Err(syntax(e.line, 1, "duplicate entry"));
        }
    }
    Ok(LinMap::from_fn(dom, cod, |j| {
        cols.get(&j).map(|m| SparseVec::from_pairs(m.iter().map(|(k, c)| (*k, c.clone())))).unwrap_or_default()
    }))
}

// ---------------------------------------------------------------- emitting

struct Emitter {
    out: String,
    names: HashSet<String>,
    bodies: HashMap<(String, String), String>,
}

fn labels_or_default(labels: &[String]) -> Vec<String> {
    let mut seen = HashSet::new();
    if labels.iter().all(|l| seen.insert(l.as_str())) {
        labels.to_vec()
    } else {
        default_labels(labels.len())
    }
}

fn basis_line(labels: &[String]) -> String {
    if labels == default_labels(labels.len()) {
        format!("  dim {}\n", labels.len())
    } else {
        let ls: Vec<String> = labels.iter().map(|l| quote_label(l)).collect();
        format!("  basis {}\n", ls.join(" "))
    }
}

/// `m` as a block from ⊗ins to ⊗outs.
fn write_table(s: &mut String, key: &str, m: &LinMap, ins: &[&[String]], outs: &[&[String]]) {
    let in_dims: Vec<usize> = ins.iter().map(|b| b.len()).collect();
    let out_dims: Vec<usize> = outs.iter().map(|b| b.len()).collect();
    let _ = writeln!(s, "  {key} {{");
    for j in 0..m.dom {
        let lhs: Vec<String> =
            unflatten(&in_dims, j).iter().zip(ins).map(|(i, b)| quote_label(&b[*i])).collect();
        for (o, c) in m.col(j).iter() {
            let rhs: Vec<String> =
                unflatten(&out_dims, o).iter().zip(outs).map(|(i, b)| quote_label(&b[*i])).collect();
            let mut line = String::from("    ");
            line.push_str(&lhs.join(" "));
            if !outs.is_empty() {
                if !lhs.is_empty() {
                    line.push(' ');
                }
                line.push_str("-> ");
                line.push_str(&rhs.join(" "));
            }
            let _ = writeln!(s, "{line} : {c}");
        }
    }
    s.push_str("  }\n");
}

fn vector_map(v: &SparseVec, dim: usize) -> LinMap {
    LinMap::from_cols(dim, vec![v.clone()])
}

fn functional_map(v: &SparseVec, dim: usize) -> LinMap {
    LinMap::from_fn(dim, 1, |i| SparseVec::single(0, v.get(i)))
}

impl Emitter {
    fn new(field: Field) -> Emitter {
        let mut out = format!("hax {FORMAT_VERSION}\n");
        let _ = writeln!(out, "field {field}");
        Emitter { out, names: HashSet::new(), bodies: HashMap::new() }
    }

    /// Writes `obj` (after its dependencies) unless an identical dependency
    /// is already present; returns the name it is known by.
    fn place(&mut self, name: &str, obj: &Object, top: bool) -> String {
        let body = self.body(name, obj);
        let key = (obj.kind().to_string(), body.clone());
        if !top {
            if let Some(n) = self.bodies.get(&key) {
                return n.clone();
            }
        }
        let name = fresh_name(name, |n| self.names.contains(n));
        let _ = write!(self.out, "\n{} {} {{\n{}}}\n", obj.kind(), name, body);
        self.names.insert(name.clone());
        self.bodies.entry(key).or_insert_with(|| name.clone());
        name
    }

    fn algebra_body(s: &mut String, a: &FinAlgebra, labels: &[String]) {
        let n = a.dim();
        s.push_str(&basis_line(labels));
        write_table(s, "unit", &vector_map(&a.unit, n), &[], &[labels]);
        write_table(s, "mul", &a.mul.map, &[labels, labels], &[labels]);
    }

    fn coalgebra_body(s: &mut String, c: &FinCoalgebra, labels: &[String]) {
        write_table(s, "comul", &c.comul.map, &[labels], &[labels, labels]);
        write_table(s, "counit", &functional_map(&c.counit, labels.len()), &[labels], &[]);
    }

    fn body(&mut self, name: &str, obj: &Object) -> String {
        let mut s = String::new();
        match obj {
            Object::Algebra(a) => {
                let l = labels_or_default(&a.labels);
                Self::algebra_body(&mut s, a, &l);
            }
            Object::Coalgebra { labels, coalgebra } => {
                let l = labels_or_default(labels);
                s.push_str(&basis_line(&l));
                Self::coalgebra_body(&mut s, coalgebra, &l);
            }
            Object::Hopf(h) => {
                let l = labels_or_default(&h.algebra.labels);
                Self::algebra_body(&mut s, &h.algebra, &l);
                Self::coalgebra_body(&mut s, &h.coalgebra, &l);
                write_table(&mut s, "antipode", &h.antipode, &[&l], &[&l]);
            }
            Object::Comodule(p) => {
                let a = self.place(&format!("{name}.algebra"), &Object::Algebra(p.p.clone()), false);
                let h = self.place(&format!("{name}.hopf"), &Object::Hopf(p.h.clone()), false);
                let (pl, hl) = (labels_or_default(&p.p.labels), labels_or_default(&p.h.algebra.labels));
                let _ = writeln!(s, "  algebra = {a}\n  hopf = {h}");
                write_table(&mut s, "coaction", &p.coaction.map, &[&pl], &[&pl, &hl]);
            }
            Object::Measuring(m) => {
                self.measuring_refs(&mut s, name, m);
                let (hl, bl) = (labels_or_default(&m.h.algebra.labels), labels_or_default(&m.b.labels));
                write_table(&mut s, "action", &m.act.map, &[&hl, &bl], &[&bl]);
            }
            Object::CocyclePair(p) => {
                let m = &p.act;
                self.measuring_refs(&mut s, name, m);
                let (hl, bl) = (labels_or_default(&m.h.algebra.labels), labels_or_default(&m.b.labels));
                if *m != Measuring::trivial(&m.h, &m.b) {
                    write_table(&mut s, "action", &m.act.map, &[&hl, &bl], &[&bl]);
                }
                write_table(&mut s, "sigma", &p.sigma.map, &[&hl, &hl], &[&bl]);
            }
            Object::Cotwist(c) => self.form_body(&mut s, name, &c.host, "chi", &c.chi),
            Object::Coquasi(c) => self.form_body(&mut s, name, &c.host, "r", &c.r),
            Object::Bialgebroid(bd) => {
                let a = self.place(&format!("{name}.algebra"), &Object::Algebra(bd.l.clone()), false);
                let b = self.place(&format!("{name}.base"), &Object::Algebra(bd.b.clone()), false);
                let (ll, bl) = (labels_or_default(&bd.l.labels), labels_or_default(&bd.b.labels));
                let _ = writeln!(s, "  algebra = {a}\n  base = {b}");
                write_table(&mut s, "source", &bd.s, &[&bl], &[&ll]);
                write_table(&mut s, "target", &bd.t, &[&bl], &[&ll]);
                let n = bd.dim();
                let comul = LinMap::from_fn(n, n * n, |x| bd.comul_lift(&SparseVec::unit(x)));
                write_table(&mut s, "comul", &comul, &[&ll], &[&ll, &ll]);
                write_table(&mut s, "counit", &bd.counit, &[&ll], &[&bl]);
            }
            Object::HopfAlgebroid(h) => {
                let bd = &h.base;
                let b = self.place(&format!("{name}.bialgebroid"), &Object::Bialgebroid(bd.clone()), false);
                let ll = labels_or_default(&bd.l.labels);
                let _ = writeln!(s, "  bialgebroid = {b}");
                let n = bd.dim();
                let mut cols = vec![SparseVec::new(); n * n];
                for k in 0..bd.tensor_b.dim() {
                    cols[bd.tensor_b.section_basis(k)] = h.tensor_bop.lift(h.lambda_inv.col(k));
                }
                write_table(&mut s, "lambda-inverse", &LinMap::from_cols(n * n, cols), &[&ll, &ll], &[&ll, &ll]);
                if let Some((sa, sa_inv)) = &h.antipode {
                    write_table(&mut s, "antipode", sa, &[&ll], &[&ll]);
                    write_table(&mut s, "antipode-inverse", sa_inv, &[&ll], &[&ll]);
                }
            }
            Object::AlgebroidCocycle(c) => {
                let b = self.place(&format!("{name}.bialgebroid"), &Object::Bialgebroid(c.host.clone()), false);
                let (ll, bl) = (labels_or_default(&c.host.l.labels), labels_or_default(&c.host.b.labels));
                let _ = writeln!(s, "  bialgebroid = {b}");
                write_table(&mut s, "cocycle", &c.varsigma.map, &[&ll, &ll], &[&bl]);
                write_table(&mut s, "inverse", &c.varsigma_inv.map, &[&ll, &ll], &[&bl]);
            }
        }
        s
    }

    fn measuring_refs(&mut self, s: &mut String, name: &str, m: &Measuring) {
        let h = self.place(&format!("{name}.hopf"), &Object::Hopf(m.h.clone()), false);
        let b = self.place(&format!("{name}.algebra"), &Object::Algebra(m.b.clone()), false);
        let _ = writeln!(s, "  hopf = {h}\n  algebra = {b}");
    }

    fn form_body(&mut self, s: &mut String, name: &str, h: &HopfAlgebra, key: &str, form: &CoeffTensor) {
        let hn = self.place(&format!("{name}.hopf"), &Object::Hopf(h.clone()), false);
        let hl = labels_or_default(&h.algebra.labels);
        let _ = writeln!(s, "  hopf = {hn}");
        write_table(s, key, &form.map, &[&hl, &hl], &[]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::hopf_algebras::{cyclic_group, sweedler_cotwist, sweedler_h4};
    use crate::catalog::pairs::{h4_dual_numbers, inner_m2_kz2};

    const KZ2: &str = "hax 1
field rational
% the group algebra of Z/2
hopf kZ2 {
  basis 1 g
  unit {
    -> 1 : 1
  }
  mul {
    1 1 -> 1 : 1
    1 g -> g : 1
    g 1 -> g : 1
    g g -> 1 : 1
  }
  comul {
    1 -> 1 1 : 1
    g -> g g : 1
  }
  counit {
    1 : 1
    g : 1
  }
  antipode {
    1 -> 1 : 1
    g -> g : 1
  }
}
";

    #[test]
    fn kz2_document_is_the_group_algebra() {
        let doc = Document::parse(KZ2).unwrap();
        let Some(Object::Hopf(h)) = doc.get("kZ2") else { panic!("no hopf object") };
        assert_eq!(*h, cyclic_group(2));
        assert!(h.validate().passed());
    }

    #[test]
    fn missing_antipode_is_computed() {
        let text = KZ2.replace("  antipode {\n    1 -> 1 : 1\n    g -> g : 1\n  }\n", "");
        let doc = Document::parse(&text).unwrap();
        assert_eq!(doc.get("kZ2"), Some(&Object::Hopf(cyclic_group(2))));
    }

    #[test]
    fn zero_denominator_is_a_bad_scalar() {
        let text = KZ2.replace("g g -> 1 : 1", "g g -> 1 : 1/0");
        match Document::parse(&text) {
            Err(e @ DocError::BadScalar { .. }) => assert_eq!(e.position(), Some((13, 16))),
            other => panic!("expected BadScalar, got {other:?}"),
        }
    }

    #[test]
    fn z_over_the_rationals_is_a_bad_scalar() {
        let text = KZ2.replace("g g -> 1 : 1", "g g -> 1 : z");
        assert!(matches!(Document::parse(&text), Err(DocError::BadScalar { .. })));
        let text = text.replace("field rational", "field cyclotomic:4");
        assert!(Document::parse(&text).is_ok());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = KZ2.replace("  counit {", "  colour = red\n  counit {");
        match Document::parse(&text) {
            Err(DocError::UnknownField { field, line, .. }) => {
                assert_eq!(field, "colour");
                assert_eq!(line, text.lines().position(|l| l.contains("colour")).unwrap() + 1);
            }
            other => panic!("expected UnknownField, got {other:?}"),
        }
        let text = KZ2.replace("  counit {", "  sigma {\n  }\n  counit {");
        assert!(matches!(Document::parse(&text), Err(DocError::UnknownField { .. })));
    }

    #[test]
    fn arity_and_range_errors() {
        let text = KZ2.replace("g g -> 1 : 1", "g g g -> 1 : 1");
        assert!(matches!(Document::parse(&text), Err(DocError::DimensionMismatch { .. })));
        let text = KZ2.replace("g g -> 1 : 1", "g #7 -> 1 : 1");
        assert!(matches!(Document::parse(&text), Err(DocError::DimensionMismatch { .. })));
        let text = KZ2.replace("g g -> 1 : 1", "g h -> 1 : 1");
        assert!(matches!(Document::parse(&text), Err(DocError::UnknownLabel { .. })));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = Document::parse("hax 2\n").unwrap_err();
        assert_eq!(e.position(), Some((1, 5)));
        let e = Document::parse("hax 1\nhopf h {\n  basis a\n").unwrap_err();
        assert!(matches!(e, DocError::Syntax { .. }));
        let e = Document::parse("hax 1\nwidget w {\n}\n").unwrap_err();
        assert!(matches!(e, DocError::Syntax { line: 2, col: 1, .. }));
    }

    #[test]
    fn references_must_resolve() {
        let text = format!("{KZ2}\ncotwist chi {{\n  hopf = kZ3\n  chi {{\n  }}\n}}\n");
        assert!(matches!(Document::parse(&text), Err(DocError::UnresolvedReference { .. })));
    }

    #[test]
    fn indices_and_quoted_labels() {
        let text = KZ2.replace("g g -> 1 : 1", "#1 \"g\" -> #0 : 1");
        assert_eq!(Document::parse(&text).unwrap(), Document::parse(KZ2).unwrap());
    }

    #[test]
    fn emit_round_trips() {
        let h = sweedler_h4();
        let mut doc = Document::new(Field::Rational);
        doc.push("H4", Object::Hopf(h.clone()));
        doc.push("chi", Object::Cotwist(sweedler_cotwist(&h, Scalar::frac(1, 2))));
        doc.push("pair", Object::CocyclePair(h4_dual_numbers()));
        doc.push("inner", Object::CocyclePair(inner_m2_kz2()));
        let text = doc.emit();
        let back = Document::parse(&text).unwrap();
        assert_eq!(back.emit(), text);
        for (name, obj) in &doc.objects {
            assert_eq!(back.get(name), Some(obj), "{name}");
        }
        // the shared H4 is written once
        assert_eq!(text.matches("\nhopf ").count(), 2);
    }

    #[test]
    fn awkward_labels_are_quoted() {
        let mut h = cyclic_group(2);
        h.algebra.labels = vec!["a b".into(), "#1".into()];
        let mut doc = Document::new(Field::Rational);
        doc.push("h", Object::Hopf(h.clone()));
        let back = Document::parse(&doc.emit()).unwrap();
        let Some(Object::Hopf(g)) = back.get("h") else { panic!() };
        assert_eq!(g.algebra.labels, h.algebra.labels);
    }

    #[test]
    fn file_references_resolve_relative_to_the_document() {
        let dir = std::env::temp_dir().join(format!("hax-doc-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("kz2.hax"), KZ2).unwrap();
        let text = "hax 1\ncotwist chi {\n  hopf = kZ2 from \"kz2.hax\"\n  chi {\n    1 1 : 1\n    1 g : 1\n    g 1 : 1\n    g g : -1\n  }\n}\n";
        std::fs::write(dir.join("chi.hax"), text).unwrap();
        let doc = Document::load(&dir.join("chi.hax")).unwrap();
        let Some(Object::Cotwist(c)) = doc.get("chi") else { panic!() };
        assert_eq!(c.host, cyclic_group(2));
        assert!(matches!(Document::parse(text), Err(DocError::Included { .. })));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
