//! Command-line front end. `run` returns the process exit code: 0 when every
//! check passes, 1 on failed checks or a module error, 2 on usage or parse
//! errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebroid::{build_cocycle_algebroid, check_antipode, cocycle_algebroid_antipode, plus_minus_suite, LeftHopfAlgebroid};
use crate::catalog;
use crate::cocycle::{is_associative_type, sigma_identities, CocyclePair};
use crate::comod::ComoduleAlgebra;
use crate::crossprod::build_cross_product;
use crate::doc::{validate_hopf_algebroid, DocError, Document, Object};
use crate::error::Error as ModuleError;
use crate::exactla::Field;
use crate::galois::{build_es_algebroid, check_es_algebroid, check_hopf_galois, check_hopf_galois_with_base, translation_identities};
use crate::report::{set_parallelism, Report};
use crate::twist::{check_phi_isomorphism, SmashCotwist};

#[derive(Parser, Debug)]
#[command(name = "hax", version, about = "Exact checks and constructions for Hopf algebras, cross products and Hopf algebroids")]
struct Cli {
    /// Report rendering.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for exhaustive checks.
    #[arg(long, default_value_t = 1, global = true)]
    parallel: usize,
    /// Ground field for documents without a `field` line: rational or cyclotomic:<n>.
    #[arg(long, value_parser = parse_field, global = true)]
    field: Option<Field>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn parse_field(s: &str) -> Result<Field, String> {
    Field::parse(s).ok_or_else(|| format!("expected `rational` or `cyclotomic:<n>`, got `{s}`"))
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every object's validator.
    Validate(Input),
    /// Construct a new object from an input document.
    #[command(subcommand)]
    Build(Build),
    /// Run one family of checks.
    #[command(subcommand)]
    Check(Check),
    /// Built-in instances.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Brute-force searches.
    #[command(subcommand)]
    Search(Search),
}

#[derive(Args, Debug)]
struct Input {
    /// A `.hax` file or `catalog:<name>`.
    input: String,
    /// Object to use; defaults to the last one of a suitable kind.
    #[arg(long)]
    object: Option<String>,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[command(flatten)]
    input: Input,
    /// Write the document here instead of stdout.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Build {
    /// B#_σH with its coaction, from a cocycle pair.
    CrossProduct(BuildArgs),
    /// The left Hopf algebroid B^e#_σH, from a cocycle pair.
    Algebroid(BuildArgs),
    /// The Ehresmann–Schauenburg algebroid of a Hopf–Galois extension.
    Es(BuildArgs),
    /// (B^e#H)^σ̃ and σ̃, from a cocycle pair.
    Twist(BuildArgs),
}

#[derive(Subcommand, Debug)]
enum Check {
    /// Bialgebroid axioms, λ invertibility and the stored antipode.
    HopfAlgebroid(Input),
    /// Antipode axioms of a Hopf algebra or Hopf algebroid.
    Antipode(Input),
    /// Identities satisfied by σ and σ⁻¹ of a cocycle pair.
    SigmaIdentities(Input),
    /// Identities of X₊⊗X₋ on a left Hopf algebroid.
    PlusMinus(Input),
    /// Galois property and translation map identities.
    Translation(Input),
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    /// Names, fields and descriptions.
    List,
    /// Print a shipped document.
    Emit {
        name: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Search {
    /// Normalized 2-cocycles H⊗H → k over the ansatz grid.
    GaloisObjects {
        #[command(flatten)]
        input: Input,
        /// Unknowns fixed by branching before elimination must finish.
        #[arg(long, default_value_t = 2)]
        max_params: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Parse(DocError),
    Module { module: &'static str, error: ModuleError },
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Parse(_) => 2,
            Failure::Module { .. } | Failure::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage: {m}"),
            Failure::Parse(e) => write!(f, "parse error: {e}"),
            Failure::Module { module, error } => write!(f, "{module}: {error}"),
            Failure::Io(m) => write!(f, "io: {m}"),
        }
    }
}

fn module(module: &'static str) -> impl Fn(ModuleError) -> Failure {
    move |error| Failure::Module { module, error }
}

type CliResult<T> = Result<T, Failure>;

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    set_parallelism(cli.parallel);
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.code()
        }
    }
}

fn load(cli: &Cli, input: &str) -> CliResult<Document> {
    if let Some(name) = input.strip_prefix("catalog:") {
        let e = catalog::entry(name).map_err(|e| Failure::Usage(e.to_string()))?;
        return Document::parse_opts(e.shipped(), None, cli.field).map_err(Failure::Parse);
    }
    Document::load_opts(Path::new(input), cli.field).map_err(|e| match e {
        DocError::Io { .. } => Failure::Usage(e.to_string()),
        e => Failure::Parse(e),
    })
}

fn pick<'a>(doc: &'a Document, input: &Input, kinds: &[&str]) -> CliResult<(&'a str, &'a Object)> {
    let found = match &input.object {
        Some(n) => doc.objects.iter().find(|(name, _)| name == n),
        None => doc.objects.iter().rev().find(|(_, o)| kinds.contains(&o.kind())),
    };
    match found {
        Some((n, o)) if kinds.contains(&o.kind()) => Ok((n.as_str(), o)),
        Some((n, o)) => Err(Failure::Usage(format!("`{n}` is a {}, expected one of: {}", o.kind(), kinds.join(", ")))),
        None => Err(Failure::Usage(match &input.object {
            Some(n) => format!("no object named `{n}` in {}", input.input),
            None => format!("{} has no object of kind {}", input.input, kinds.join(" or ")),
        })),
    }
}

fn emit_report(cli: &Cli, r: Report, out: &mut dyn Write) -> CliResult<i32> {
    let r = r.sorted();
    let text = match cli.format {
        Format::Json => r.to_json(),
        Format::Text => r.to_string(),
    };
    writeln!(out, "{text}").map_err(|e| Failure::Io(e.to_string()))?;
    Ok(if r.passed() { 0 } else { 1 })
}

fn write_doc(doc: &Document, path: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
    let text = doc.emit();
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string())),
    }
}

/// Documents go to stdout unless `-o` is given, in which case the report does.
fn finish_build(cli: &Cli, doc: &Document, r: Report, output: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    write_doc(doc, output, out)?;
    if output.is_some() {
        emit_report(cli, r, out)
    } else {
        emit_report(cli, r, err)
    }
}

fn pair_of<'a>(doc: &'a Document, input: &Input) -> CliResult<(&'a str, &'a CocyclePair)> {
    match pick(doc, input, &["cocycle-pair"])? {
        (n, Object::CocyclePair(p)) => Ok((n, p)),
        _ => unreachable!(),
    }
}

fn algebroid_of(doc: &Document, input: &Input) -> CliResult<LeftHopfAlgebroid> {
    Ok(match pick(doc, input, &["hopf-algebroid", "hopf"])?.1 {
        Object::HopfAlgebroid(h) => h.clone(),
        Object::Hopf(h) => LeftHopfAlgebroid::from_hopf(h),
        _ => unreachable!(),
    })
}

/// The comodule algebra of a document object, with the coinvariant basis
/// known for cross products.
fn galois_input(doc: &Document, input: &Input) -> CliResult<(ComoduleAlgebra, Option<crate::exactla::LinMap>)> {
    Ok(match pick(doc, input, &["comodule", "cocycle-pair"])?.1 {
        Object::Comodule(p) => (p.clone(), None),
        Object::CocyclePair(pair) => {
            let x = build_cross_product(pair).map_err(module("crossprod"))?;
            let inc = x.b_inclusion();
            (x.p, Some(inc))
        }
        _ => unreachable!(),
    })
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    match &cli.command {
        Command::Validate(input) => {
            let doc = load(cli, &input.input)?;
            let mut r = match &input.object {
                Some(want) => {
                    let obj = doc.get(want).ok_or_else(|| Failure::Usage(format!("no object named `{want}` in {}", input.input)))?;
                    let mut r = Report::new(want.as_str());
                    r.absorb(want, obj.validate());
                    r
                }
                None => catalog::validate_document(&doc),
            };
            r.subject = format!("validate {}", input.input);
            emit_report(cli, r, out)
        }
        Command::Build(b) => build(cli, b, out, err),
        Command::Check(c) => check(cli, c, out),
        Command::Catalog(CatalogCmd::List) => {
            for e in catalog::list() {
                writeln!(out, "{:<20} {:<14} {}", e.name, e.field.to_string(), e.description).map_err(|e| Failure::Io(e.to_string()))?;
            }
            Ok(0)
        }
        Command::Catalog(CatalogCmd::Emit { name, output }) => {
            let e = catalog::entry(name).map_err(|e| Failure::Usage(e.to_string()))?;
            match output {
                Some(p) => std::fs::write(p, e.shipped()).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
                None => out.write_all(e.shipped().as_bytes()).map_err(|e| Failure::Io(e.to_string()))?,
            }
            Ok(0)
        }
        Command::Search(Search::GaloisObjects { input, max_params, output }) => {
            let doc = load(cli, &input.input)?;
            let (name, h) = match pick(&doc, input, &["hopf"])? {
                (n, Object::Hopf(h)) => (n, h),
                _ => unreachable!(),
            };
            let found = catalog::search::search_galois_object_cocycles(h, *max_params).map_err(module("catalog"))?;
            let mut res = Document::new(doc.field);
            let mut r = Report::new(format!("galois objects over {name}, {} found", found.len()));
            for (k, pair) in found.iter().enumerate() {
                let n = res.push(&format!("sigma-{}", k + 1), Object::CocyclePair(pair.clone()));
                r.absorb(&n, crate::cocycle::validate_cocycle(pair));
            }
            finish_build(cli, &res, r, output.as_deref(), out, err)
        }
    }
}

fn build(cli: &Cli, b: &Build, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let args = match b {
        Build::CrossProduct(a) | Build::Algebroid(a) | Build::Es(a) | Build::Twist(a) => a,
    };
    let doc = load(cli, &args.input.input)?;
    let mut res = Document::new(doc.field);
    let report = match b {
        Build::CrossProduct(_) => {
            let (name, pair) = pair_of(&doc, &args.input)?;
            let x = build_cross_product(pair).map_err(module("crossprod"))?;
            res.push(&format!("{name}.cross-product"), Object::Comodule(x.p.clone()));
            x.validate()
        }
        Build::Algebroid(_) => {
            let (name, pair) = pair_of(&doc, &args.input)?;
            let mut h = build_cocycle_algebroid(pair).map_err(module("algebroid"))?;
            if is_associative_type(pair).map_err(module("cocycle"))? {
                let (s, s_inv) = cocycle_algebroid_antipode(pair).map_err(module("algebroid"))?;
                h = h.with_antipode(s, s_inv);
            }
            let r = validate_hopf_algebroid(&h);
            res.push(&format!("{name}.algebroid"), Object::HopfAlgebroid(h));
            r
        }
        Build::Es(_) => {
            let (p, inclusion) = galois_input(&doc, &args.input)?;
            let ext = match inclusion {
                Some(inc) => check_hopf_galois_with_base(&p, inc),
                None => check_hopf_galois(&p),
            }
            .map_err(module("galois"))?;
            let es = build_es_algebroid(&ext).map_err(module("galois"))?;
            let r = check_es_algebroid(&es).map_err(module("galois"))?;
            let name = pick(&doc, &args.input, &["comodule", "cocycle-pair"])?.0;
            res.push(&format!("{name}.es"), Object::HopfAlgebroid(es.structure));
            r
        }
        Build::Twist(_) => {
            let (name, pair) = pair_of(&doc, &args.input)?;
            let sc = SmashCotwist::build(pair).map_err(module("twist"))?;
            let r = check_phi_isomorphism(&sc);
            res.push(&format!("{name}.sigma-tilde"), Object::AlgebroidCocycle(sc.cocycle.clone()));
            res.push(&format!("{name}.twisted"), Object::HopfAlgebroid(sc.twisted));
            r
        }
    };
    finish_build(cli, &res, report, args.output.as_deref(), out, err)
}

fn check(cli: &Cli, c: &Check, out: &mut dyn Write) -> CliResult<i32> {
    let input = match c {
        Check::HopfAlgebroid(i) | Check::Antipode(i) | Check::SigmaIdentities(i) | Check::PlusMinus(i) | Check::Translation(i) => i,
    };
    let doc = load(cli, &input.input)?;
    let report = match c {
        Check::HopfAlgebroid(_) => validate_hopf_algebroid(&algebroid_of(&doc, input)?),
        Check::Antipode(_) => match pick(&doc, input, &["hopf-algebroid", "hopf"])?.1 {
            Object::Hopf(h) => {
                let mut r = Report::new("hopf antipode");
                r.checks = h.validate().checks.into_iter().filter(|c| c.id.contains("antipode")).collect();
                r
            }
            Object::HopfAlgebroid(h) => {
                let (s, s_inv) = h
                    .antipode
                    .as_ref()
                    .ok_or_else(|| Failure::Usage("the hopf-algebroid stores no antipode".into()))?;
                check_antipode(h, s, s_inv)
            }
            _ => unreachable!(),
        },
        Check::SigmaIdentities(_) => sigma_identities(pair_of(&doc, input)?.1),
        Check::PlusMinus(_) => plus_minus_suite(&algebroid_of(&doc, input)?).map_err(module("algebroid"))?,
        Check::Translation(_) => {
            let (p, inclusion) = galois_input(&doc, input)?;
            let ext = match inclusion {
                Some(inc) => check_hopf_galois_with_base(&p, inc),
                None => check_hopf_galois(&p),
            }
            .map_err(module("galois"))?;
            translation_identities(&ext)
        }
    };
    emit_report(cli, report, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("hax").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn validate_catalog_entry_passes() {
        let (code, out, _) = run_capture(&["validate", "catalog:sweedler-H4"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("0 failed"));
    }

    #[test]
    fn json_reports_parse() {
        let (code, out, _) = run_capture(&["--format", "json", "check", "sigma-identities", "catalog:galois-kZ2"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["checks"].as_array().is_some_and(|c| !c.is_empty()));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        assert_eq!(run_capture(&["validate", "catalog:nope"]).0, 2);
        assert_eq!(run_capture(&["validate", "/nonexistent/x.hax"]).0, 2);
        assert_eq!(run_capture(&["--field", "reals", "catalog", "list"]).0, 2);
        assert_eq!(run_capture(&["--field", "cyclotomic:4", "validate", "catalog:group-kZ2"]).0, 2);
        assert_eq!(run_capture(&["check", "sigma-identities", "catalog:group-kZ2"]).0, 2);
    }

    #[test]
    fn corrupted_antipode_fails_with_witness() {
        let text = catalog::shipped_text("group-kZ2").unwrap().replace("g -> g : 1\n  }\n}", "g -> 1 : 1\n  }\n}");
        let dir = std::env::temp_dir().join(format!("hax-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.hax");
        std::fs::write(&path, text).unwrap();
        let (code, out, _) = run_capture(&["check", "antipode", path.to_str().unwrap()]);
        assert_eq!(code, 1, "{out}");
        assert!(out.contains("FAIL") && out.contains("witness [1]"), "{out}");
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn build_algebroid_then_check() {
        let dir = std::env::temp_dir().join(format!("hax-cli-b-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("alg.hax");
        let p = path.to_str().unwrap();
        let (code, out, err) = run_capture(&["build", "algebroid", "catalog:galois-kZ2", "-o", p]);
        assert_eq!(code, 0, "{out}{err}");
        assert_eq!(run_capture(&["check", "hopf-algebroid", p]).0, 0);
        assert_eq!(run_capture(&["check", "plus-minus", p]).0, 0);
        assert_eq!(run_capture(&["check", "antipode", p]).0, 0);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn catalog_emit_matches_shipped() {
        let (code, out, _) = run_capture(&["catalog", "emit", "group-kZ4"]);
        assert_eq!(code, 0);
        assert_eq!(out, catalog::shipped_text("group-kZ4").unwrap());
        let (_, list, _) = run_capture(&["catalog", "list"]);
        assert_eq!(list.lines().count(), catalog::list().len());
    }

    #[test]
    fn search_kz2() {
        let (code, out, err) = run_capture(&["search", "galois-objects", "catalog:group-kZ2", "--max-params", "1"]);
        assert_eq!(code, 0, "{err}");
        assert_eq!(Document::parse(&out).unwrap().objects.iter().filter(|(_, o)| o.kind() == "cocycle-pair").count(), 6);
    }
}
