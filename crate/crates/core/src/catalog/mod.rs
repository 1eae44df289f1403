//! Built-in instances, shipped both as constructors and as `.hax` files.

pub mod hopf_algebras;
pub mod pairs;
pub mod search;
pub mod weyl;

use std::fmt;

use crate::doc::{DocError, Document, Object};
use crate::error::{Error, Result};
use crate::exactla::{Field, Scalar};
use crate::report::Report;
use hopf_algebras::{cyclic_bicharacter, cyclic_group, sweedler_coquasi, sweedler_cotwist, sweedler_h4, symmetric_group3};
use pairs::{
    adjoint_smash, coboundary_s3, coquasi_kz2, galois_h4, galois_kz2, h4_dual_numbers, inner_m2_kz2, inner_m2_kz2_gauged,
    m2_non_associative,
};

/// Where a shipped value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Holds by construction.
    Trivial,
    /// Written down explicitly in the source literature.
    Stated,
    /// Computed here and confirmed by the named check.
    Derived { oracle: &'static str },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Trivial => write!(f, "trivial"),
            Provenance::Stated => write!(f, "stated"),
            Provenance::Derived { oracle } => write!(f, "derived (oracle: {oracle})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub field: Field,
    /// (object name, origin of its values)
    pub provenance: Vec<(&'static str, Provenance)>,
    build: fn() -> Document,
}

impl CatalogEntry {
    /// Objects built from their constructors, not validated.
    pub fn build(&self) -> Document {
        (self.build)()
    }

    /// The shipped `.hax` text.
    pub fn shipped(&self) -> &'static str {
        shipped_text(self.name).expect("every entry ships a file")
    }
}

fn doc(field: Field, objects: Vec<(&str, Object)>) -> Document {
    let mut d = Document::new(field);
    for (n, o) in objects {
        d.push(n, o);
    }
    d
}

const VALIDATE_HOPF: Provenance = Provenance::Derived { oracle: "HopfAlgebra::validate" };
const VALIDATE_PAIR: Provenance = Provenance::Derived { oracle: "validate_cocycle" };

pub fn list() -> Vec<CatalogEntry> {
    use Object::*;
    use Provenance::*;
    let q = Field::Rational;
    vec![
        CatalogEntry {
            name: "group-kZ2",
            description: "group algebra of Z/2, S = inverse",
            field: q,
            provenance: vec![("kZ2", Trivial)],
            build: || doc(Field::Rational, vec![("kZ2", Hopf(cyclic_group(2)))]),
        },
        CatalogEntry {
            name: "group-kZ4",
            description: "group algebra of Z/4, S = inverse",
            field: q,
            provenance: vec![("kZ4", Trivial)],
            build: || doc(Field::Rational, vec![("kZ4", Hopf(cyclic_group(4)))]),
        },
        CatalogEntry {
            name: "group-kS3",
            description: "group algebra of S3, S = inverse",
            field: q,
            provenance: vec![("kS3", Trivial)],
            build: || doc(Field::Rational, vec![("kS3", Hopf(symmetric_group3()))]),
        },
        CatalogEntry {
            name: "sweedler-H4",
            description: "Sweedler's H4 with cotwists chi_0, chi_1 and coquasitriangular forms R_0, R_1",
            field: q,
            provenance: vec![("H4", Stated), ("chi-0", VALIDATE_HOPF), ("chi-1", VALIDATE_HOPF), ("r-0", VALIDATE_HOPF), ("r-1", VALIDATE_HOPF)],
            build: || {
                let h = sweedler_h4();
                doc(
                    Field::Rational,
                    vec![
                        ("H4", Hopf(h.clone())),
                        ("chi-0", Cotwist(sweedler_cotwist(&h, Scalar::zero()))),
                        ("chi-1", Cotwist(sweedler_cotwist(&h, Scalar::one()))),
                        ("r-0", Coquasi(sweedler_coquasi(&h, Scalar::zero()))),
                        ("r-1", Coquasi(sweedler_coquasi(&h, Scalar::one()))),
                    ],
                )
            },
        },
        CatalogEntry {
            name: "inner-M2-kZ2",
            description: "M2 with kZ2 acting by conjugation by u = [[0,1],[2,0]], and its gauge transform with trivial action",
            field: q,
            provenance: vec![("inner", Stated), ("inner-gauged", VALIDATE_PAIR)],
            build: || doc(Field::Rational, vec![("inner", CocyclePair(inner_m2_kz2())), ("inner-gauged", CocyclePair(inner_m2_kz2_gauged()))]),
        },
        CatalogEntry {
            name: "m2-non-associative",
            description: "gauge of the trivial kZ2 pair on M2 by [[1,1],[0,1]]: a measuring that is not an action",
            field: q,
            provenance: vec![("pair", VALIDATE_PAIR)],
            build: || doc(Field::Rational, vec![("pair", CocyclePair(m2_non_associative()))]),
        },
        CatalogEntry {
            name: "galois-h4",
            description: "Galois object over H4: B = k, sigma = chi_1",
            field: q,
            provenance: vec![("pair", Derived { oracle: "search_galois_object_cocycles" })],
            build: || doc(Field::Rational, vec![("pair", CocyclePair(galois_h4(Scalar::one())))]),
        },
        CatalogEntry {
            name: "galois-kZ2",
            description: "Galois object over kZ2: B = k, sigma(g,g) = -1",
            field: q,
            provenance: vec![("pair", Derived { oracle: "search_galois_object_cocycles" })],
            build: || doc(Field::Rational, vec![("pair", CocyclePair(galois_kz2(Scalar::int(-1))))]),
        },
        CatalogEntry {
            name: "coquasi-kz2",
            description: "kZ2 with the sign bicharacter R(g,g) = -1, as a coquasitriangular form and as a B = k cocycle",
            field: q,
            provenance: vec![("r", Trivial), ("pair", Trivial)],
            build: || {
                let h = cyclic_group(2);
                let r = crate::hopf::CoquasiStructure::new(&h, cyclic_bicharacter(&h, &Scalar::int(-1))).expect("bicharacter");
                doc(Field::Rational, vec![("kZ2", Hopf(h)), ("r", Coquasi(r)), ("pair", CocyclePair(coquasi_kz2()))])
            },
        },
        CatalogEntry {
            name: "h4-dual-numbers",
            description: "H4 acting on k[y]/(y^2) by g.y = -y, x.y = 1, trivial sigma",
            field: q,
            provenance: vec![("pair", VALIDATE_PAIR)],
            build: || doc(Field::Rational, vec![("pair", CocyclePair(h4_dual_numbers()))]),
        },
        CatalogEntry {
            name: "coboundary-S3",
            description: "coboundary of u: kS3 -> k with values 1, 2, 3, 5, 7, 11",
            field: q,
            provenance: vec![("pair", VALIDATE_PAIR)],
            build: || doc(Field::Rational, vec![("pair", CocyclePair(coboundary_s3()))]),
        },
        CatalogEntry {
            name: "adjoint-H4",
            description: "H4 acting on itself by the left adjoint action, trivial sigma",
            field: q,
            provenance: vec![("pair", Trivial)],
            build: || doc(Field::Rational, vec![("pair", CocyclePair(adjoint_smash(&sweedler_h4())))]),
        },
        CatalogEntry {
            name: "weyl-crossproduct",
            description: "quantum Weyl pair: B = kZ4, psi the Z/4 R-matrix, w.b = T(b) with T the inversion, sigma(w,w) = x^-1",
            field: Field::Cyclotomic(4),
            provenance: vec![("weyl", Derived { oracle: "check_weyl_axioms" })],
            build: || doc(Field::Cyclotomic(4), vec![("weyl", CocyclePair(weyl::weyl_pair()))]),
        },
    ]
}

pub fn entry(name: &str) -> Result<CatalogEntry> {
    list().into_iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

/// Every object's validator, run on the shipped document.
pub fn validate_document(doc: &Document) -> Report {
    let mut r = Report::new("document");
    for (name, obj) in &doc.objects {
        r.absorb(name, obj.validate());
    }
    r
}

/// Parses the shipped file and re-validates every object.
pub fn instantiate(name: &str) -> Result<Document> {
    let e = entry(name)?;
    let doc = parse_shipped(&e).map_err(|err| Error::InternalDisagreement(format!("shipped `{name}`: {err}")))?;
    let r = validate_document(&doc);
    if !r.passed() {
        return Err(Error::AxiomFailed(format!("{name}: {}", r.failure_ids())));
    }
    Ok(doc)
}

pub fn parse_shipped(e: &CatalogEntry) -> std::result::Result<Document, DocError> {
    Document::parse(e.shipped())
}

macro_rules! shipped {
    ($($name:literal),* $(,)?) => {
        /// The `.hax` text shipped for `name`.
        pub fn shipped_text(name: &str) -> Option<&'static str> {
            match name {
                $($name => Some(include_str!(concat!("../../catalog/", $name, ".hax"))),)*
                _ => None,
            }
        }
    };
}

shipped!(
    "group-kZ2",
    "group-kZ4",
    "group-kS3",
    "sweedler-H4",
    "inner-M2-kZ2",
    "m2-non-associative",
    "galois-h4",
    "galois-kZ2",
    "coquasi-kz2",
    "h4-dual-numbers",
    "coboundary-S3",
    "adjoint-H4",
    "weyl-crossproduct",
);

#[cfg(test)]
mod tests {
    use super::*;

    /// `HAX_BLESS=1 cargo test -p hax --lib catalog::tests` rewrites the shipped files.
    #[test]
    fn shipped_files_are_the_emitted_constructors() {
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog");
        let bless = std::env::var_os("HAX_BLESS").is_some();
        for e in list() {
            let text = e.build().emit();
            if bless {
                std::fs::write(dir.join(format!("{}.hax", e.name)), &text).unwrap();
            } else {
                assert_eq!(text, e.shipped(), "{} is stale; rerun with HAX_BLESS=1", e.name);
            }
        }
    }

    #[test]
    fn shipped_files_parse_to_the_constructors() {
        for e in list() {
            let parsed = parse_shipped(&e).unwrap();
            let built = e.build();
            assert_eq!(parsed.field, e.field, "{}", e.name);
            for (name, obj) in &built.objects {
                assert_eq!(parsed.get(name), Some(obj), "{} / {name}", e.name);
            }
            let names: Vec<&str> = e.provenance.iter().map(|(n, _)| *n).collect();
            for n in names {
                assert!(built.get(n).is_some(), "{}: provenance names `{n}`", e.name);
            }
        }
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<&str> = list().iter().map(|e| e.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), list().len());
    }

    #[test]
    fn unknown_entry() {
        assert_eq!(instantiate("group-kZ7").unwrap_err(), Error::UnknownEntry("group-kZ7".into()));
    }

    #[test]
    fn sweedler_entry_validates() {
        let d = instantiate("sweedler-H4").unwrap();
        assert_eq!(d.objects.len(), 5);
    }
}
