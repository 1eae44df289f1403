//! Acceptance suite: one line per criterion, exact arithmetic, wall-clock limits.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hax::algebroid::{build_cocycle_algebroid, check_antipode, check_bialgebroid, check_left_hopf, cocycle_algebroid_antipode, plus_minus_suite};
use hax::catalog::hopf_algebras::{cyclic_bicharacter, cyclic_group, sweedler_coquasi, sweedler_cotwist, sweedler_h4, symmetric_group3};
use hax::catalog::pairs::{coquasi_kz2, dual_numbers, galois_h4, galois_kz2, h4_dual_numbers, inner_m2_kz2};
use hax::catalog::search::{default_grid, search_galois_object_cocycles};
use hax::catalog;
use hax::cocycle::{cotwist_cocycle, gauge_transform, is_associative_type, sigma_identities, validate_cocycle, CocyclePair, GaugeMap};
use hax::crossprod::{build_cross_product, canonical_inverse_cleft, cross_product_algebra};
use hax::doc::{Document, Object};
use hax::exactla::{inverse, kernel, rank, solve, CoeffTensor, LinMap, Scalar, SparseVec};
use hax::galois::{
    check_cleft_coquasi_antipode, check_coquasi_antipode, check_es_algebroid, check_hopf_galois_with_base, check_theta,
    cleft_coquasi_antipode, coquasi_antipode, cotwist_galois, theta_isomorphism, translation_identities,
};
use hax::hopf::{CoquasiStructure, HopfAlgebra};
use hax::report::Report;
use hax::twist::{check_ground_field_reduction, check_phi_isomorphism, check_twisted_antipode, right_mu_check, validate_algebroid_cocycle, SmashCotwist};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// (name, limit in seconds, check)
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn passes(name: &str, r: &Report) -> Result<(), String> {
    ensure(r.passed(), || format!("{name}: {}", r.failure_ids()))
}

fn must<T, E: std::fmt::Display>(name: &str, r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{name}: {e}"))
}

/// Every cocycle pair shipped in the catalog, named `entry/object`.
fn catalog_pairs() -> Vec<(String, CocyclePair)> {
    let mut out = Vec::new();
    for e in catalog::list() {
        for (name, obj) in e.build().objects {
            if let Object::CocyclePair(p) = obj {
                out.push((format!("{}/{name}", e.name), p));
            }
        }
    }
    out
}

fn hopf_core() -> Outcome {
    let hs: Vec<(&str, HopfAlgebra)> =
        vec![("kZ2", cyclic_group(2)), ("kZ4", cyclic_group(4)), ("kS3", symmetric_group3()), ("H4", sweedler_h4())];
    for (name, h) in &hs {
        passes(name, &h.validate())?;
        let recomputed = must(name, HopfAlgebra::with_computed_antipode(h.algebra.clone(), h.coalgebra.clone()))?;
        ensure(recomputed.antipode == h.antipode, || format!("{name}: solved antipode differs from the stored one"))?;
    }
    Ok(format!("{} Hopf algebras, antipodes re-solved", hs.len()))
}

fn cocycle_suite() -> Outcome {
    let pairs = catalog_pairs();
    for (name, p) in &pairs {
        passes(name, &validate_cocycle(p))?;
        passes(name, &sigma_identities(p))?;
    }
    // σ(1,g) = 2 breaks normalization
    let kz2 = cyclic_group(2);
    let bad = CoeffTensor::functional(vec![2, 2], |t| if t == [0, 1] { Scalar::int(2) } else { Scalar::one() });
    let bad = must("kZ2 corrupt", CocyclePair::scalar(&kz2, bad))?;
    ensure(!validate_cocycle(&bad).passed(), || "non-normalized σ accepted".into())?;
    // σ(g,g) = 2 on Z/4 is normalized but not a cocycle
    let kz4 = cyclic_group(4);
    let bad = CoeffTensor::functional(vec![4, 4], |t| if t == [1, 1] { Scalar::int(2) } else { Scalar::one() });
    let bad = must("kZ4 corrupt", CocyclePair::scalar(&kz4, bad))?;
    let r = validate_cocycle(&bad);
    ensure(!r.passed(), || "kZ4 non-cocycle accepted".into())?;
    let assoc = cross_product_algebra(&bad).validate();
    ensure(
        assoc.failures().any(|c| c.id.contains("associativity")),
        || format!("cross product of a non-cocycle stays associative: {assoc}"),
    )?;
    // corrupting a shipped H4 cotwist
    let mut chi = sweedler_cotwist(&sweedler_h4(), Scalar::one()).chi;
    let v = chi.at(&[2, 2]).add(&SparseVec::unit(0));
    chi.set(&[2, 2], v);
    let bad = must("H4 corrupt", CocyclePair::scalar(&sweedler_h4(), chi))?;
    ensure(!validate_cocycle(&bad).passed(), || "corrupted H4 cotwist accepted".into())?;
    Ok(format!("{} catalog pairs, 3 corruptions rejected", pairs.len()))
}

fn cross_product() -> Outcome {
    let pairs = catalog_pairs();
    for (name, p) in &pairs {
        let x = must(name, build_cross_product(p))?;
        passes(name, &x.validate())?;
        must(name, canonical_inverse_cleft(&x))?;
        let ext = must(name, check_hopf_galois_with_base(&x.p, x.b_inclusion()))?;
        passes(name, &translation_identities(&ext))?;
    }
    Ok(format!("{} cross products, cleft and Galois", pairs.len()))
}

fn cocycle_algebroid() -> Outcome {
    let pairs = catalog_pairs();
    let mut with_antipode = 0;
    for (name, p) in &pairs {
        let lh = must(name, build_cocycle_algebroid(p))?;
        passes(name, &check_bialgebroid(&lh.base))?;
        passes(name, &must(name, check_left_hopf(&lh))?)?;
        passes(name, &must(name, plus_minus_suite(&lh))?)?;
        if must(name, is_associative_type(p))? {
            let (s, s_inv) = must(name, cocycle_algebroid_antipode(p))?;
            let r = check_antipode(&lh, &s, &s_inv);
            ensure(r.get("antipode.lambda-formula").is_some(), || format!("{name}: λ⁻¹ formula not compared"))?;
            passes(name, &r)?;
            with_antipode += 1;
        }
    }
    Ok(format!("{} algebroids, {with_antipode} with antipode", pairs.len()))
}

fn twisting() -> Outcome {
    let pairs = catalog_pairs();
    let mut twisted = 0;
    for (name, p) in &pairs {
        // the smash product needs a genuine module algebra
        if !must(name, is_associative_type(p))? {
            let rejected = matches!(SmashCotwist::build(p), Err(hax::error::Error::NotAssociativeType));
            ensure(rejected, || format!("{name}: twist built over a measuring that is not an action"))?;
            continue;
        }
        twisted += 1;
        let sc = must(name, SmashCotwist::build(p))?;
        passes(name, &validate_algebroid_cocycle(&sc.cocycle))?;
        passes(name, &right_mu_check(&sc.cocycle))?;
        passes(name, &must(name, check_left_hopf(&sc.twisted))?)?;
        passes(name, &check_phi_isomorphism(&sc))?;
        passes(name, &must(name, check_twisted_antipode(&sc))?)?;
        if p.b().dim() == 1 {
            passes(name, &must(name, check_ground_field_reduction(&sc))?)?;
        }
    }
    Ok(format!("{twisted} smash twists, {} rejected as non-actions", pairs.len() - twisted))
}

fn ehresmann_schauenburg() -> Outcome {
    let pairs = catalog_pairs();
    let mut largest = 0;
    for (name, p) in &pairs {
        let th = must(name, theta_isomorphism(p))?;
        let (db, dh) = (p.b().dim(), p.h().dim());
        ensure(th.es.dim() == db * db * dh, || format!("{name}: dim {} ≠ {}", th.es.dim(), db * db * dh))?;
        passes(name, &must(name, check_es_algebroid(&th.es))?)?;
        passes(name, &check_theta(&th))?;
        largest = largest.max(db * dh);
    }
    Ok(format!("{} cleft extensions, dim P up to {largest}", pairs.len()))
}

fn coquasi_antipode_suite() -> Outcome {
    let kz2 = cyclic_group(2);
    let c = must("R", CoquasiStructure::new(&kz2, cyclic_bicharacter(&kz2, &Scalar::int(-1))))?;
    // B = k: both antipodes coincide
    let over_k = coquasi_kz2();
    let th = must("kZ2", theta_isomorphism(&over_k))?;
    passes("kZ2 ES", &must("kZ2", check_coquasi_antipode(&th.es, &c))?)?;
    passes("kZ2 cleft", &must("kZ2", check_cleft_coquasi_antipode(&th, &c))?)?;
    let (es_s, es_s_inv) = must("kZ2", coquasi_antipode(&th.es, &c))?;
    let (cs, cs_inv) = must("kZ2", cleft_coquasi_antipode(&over_k, &c))?;
    let (s, s_inv) = must("kZ2", cocycle_algebroid_antipode(&over_k))?;
    ensure(th.theta_inv.compose(&es_s).compose(&th.theta) == s, || "kZ2: braided antipode ≠ associative-type antipode".into())?;
    ensure(th.theta_inv.compose(&es_s_inv).compose(&th.theta) == s_inv, || "kZ2: inverse antipodes differ".into())?;
    ensure(cs == s && cs_inv == s_inv, || "kZ2: closed form differs".into())?;
    // B = M2: the braided antipode is a different one
    let over_m2 = inner_m2_kz2();
    let th = must("M2", theta_isomorphism(&over_m2))?;
    passes("M2 cleft", &must("M2", check_cleft_coquasi_antipode(&th, &c))?)?;
    let (cs, _) = must("M2", cleft_coquasi_antipode(&over_m2, &c))?;
    ensure(must("M2", cocycle_algebroid_antipode(&over_m2))?.0 != cs, || "M2: antipodes unexpectedly agree".into())?;
    // H4 with a nontrivial coquasitriangular form
    let h4 = sweedler_h4();
    let r = sweedler_coquasi(&h4, Scalar::one());
    let th = must("H4", theta_isomorphism(&galois_h4(Scalar::frac(1, 3))))?;
    passes("H4 ES", &must("H4", check_coquasi_antipode(&th.es, &r))?)?;
    passes("H4 cleft", &must("H4", check_cleft_coquasi_antipode(&th, &r))?)?;
    Ok("kZ2 over k and M2, H4 over k".into())
}

fn cotwist_coherence() -> Outcome {
    let h = sweedler_h4();
    let chi = sweedler_cotwist(&h, Scalar::frac(2, 5));
    for (name, pair) in [("galois-h4", galois_h4(Scalar::one())), ("h4-dual-numbers", h4_dual_numbers())] {
        let x = must(name, build_cross_product(&pair))?;
        let ext = must(name, check_hopf_galois_with_base(&x.p, x.b_inclusion()))?;
        let twisted = must(name, cotwist_galois(&ext, &chi))?;
        let via_pair = must(name, build_cross_product(&must(name, cotwist_cocycle(&pair, &chi))?))?;
        ensure(twisted.p == via_pair.p, || format!("{name}: cotwisted comodule algebras differ"))?;
    }
    // gauging and cotwisting commute
    let pair = h4_dual_numbers();
    let b = dual_numbers();
    let y = |c: i64| SparseVec::single(1, Scalar::int(c));
    let u = LinMap::from_cols(2, vec![SparseVec::unit(0), SparseVec::unit(0).add(&y(1)), y(1), y(2)]);
    let chi_pair = must("cotwist", cotwist_cocycle(&pair, &chi))?;
    let u_h = must("gauge on H", GaugeMap::new(&h, &b, u.clone()))?;
    let u_chi = must("gauge on H^χ", GaugeMap::new(chi_pair.h(), &b, u))?;
    let gauged_then_twisted = must("σ^u", gauge_transform(&pair, &u_h).and_then(|p| cotwist_cocycle(&p, &chi)))?;
    let twisted_then_gauged = must("σ_χ", gauge_transform(&chi_pair, &u_chi))?;
    ensure(gauged_then_twisted == twisted_then_gauged, || "(σ^u)_χ ≠ (σ_χ)^u".into())?;
    Ok("2 extensions, gauge commutes with cotwist".into())
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Reduced row echelon form by textbook Gauss–Jordan; returns the pivot columns.
fn gauss_jordan(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    for col in 0..ncols {
        let r0 = pivots.len();
        let Some(p) = (r0..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(r0, p);
        let lead = m[r0][col].clone();
        for c in 0..ncols {
            m[r0][c] = &m[r0][c] / &lead;
        }
        for r in 0..m.len() {
            if r != r0 && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..ncols {
                    let d = &f * &m[r0][c];
                    m[r][c] -= d;
                }
            }
        }
        pivots.push(col);
    }
    pivots
}

fn to_dense(v: &SparseVec, n: usize) -> Vec<BigRational> {
    (0..n).map(|i| v.get(i).as_rational().expect("rational").clone()).collect()
}

fn random_system(rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = (0..5).map(|_| (0..5).map(|_| rng.gen_range(-4..=4)).collect()).collect();
    // force dependencies in about half of the systems
    for _ in 0..rng.gen_range(0..3) {
        let (a, b, t) = (rng.gen_range(0..5), rng.gen_range(0..5), rng.gen_range(0..5));
        let (ca, cb) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        rows[t] = (0..5).map(|c| ca * rows[a][c] + cb * rows[b][c]).collect();
    }
    rows
}

fn linear_algebra_case(rows: &[Vec<i64>], rhs: &[i64]) -> Result<(), String> {
    let m = LinMap::from_rows(&rows.iter().map(|r| r.iter().map(|&c| Scalar::int(c)).collect()).collect::<Vec<_>>());
    let dense: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&c| q(c)).collect()).collect();
    let mut red = dense.clone();
    let pivots = gauss_jordan(&mut red);
    ensure(rank(&m) == pivots.len(), || format!("rank {} vs oracle {} on {rows:?}", rank(&m), pivots.len()))?;

    // kernel: one vector per free column, free entry 1
    let free: Vec<usize> = (0..5).filter(|c| !pivots.contains(c)).collect();
    let expected: Vec<Vec<BigRational>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![q(0); 5];
            v[f] = q(1);
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -red[r][f].clone();
            }
            v
        })
        .collect();
    let got: Vec<Vec<BigRational>> = kernel(&m).iter().map(|v| to_dense(v, 5)).collect();
    ensure(got == expected, || format!("kernel mismatch on {rows:?}"))?;

    // solve: consistency from the augmented rank, solution checked by substitution
    let mut aug: Vec<Vec<BigRational>> = dense.iter().zip(rhs).map(|(r, &b)| r.iter().cloned().chain([q(b)]).collect()).collect();
    let consistent = !gauss_jordan(&mut aug).contains(&5);
    let b = SparseVec::from_pairs(rhs.iter().enumerate().map(|(i, &c)| (i, Scalar::int(c))));
    match solve(&m, &b) {
        Some(x) => {
            ensure(consistent, || format!("solve found a solution of an inconsistent system {rows:?}"))?;
            let x = to_dense(&x, 5);
            for (r, &bi) in dense.iter().zip(rhs) {
                let lhs = r.iter().zip(&x).fold(q(0), |acc, (a, b)| acc + a * b);
                ensure(lhs == q(bi), || format!("solve returned a wrong solution on {rows:?}"))?;
            }
        }
        None => ensure(!consistent, || format!("solve missed a solution on {rows:?}"))?,
    }

    // inverse: Gauss–Jordan on [A | I]
    let mut ai: Vec<Vec<BigRational>> = dense
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().cloned().chain((0..5).map(|j| if i == j { BigRational::one() } else { q(0) })).collect())
        .collect();
    let piv = gauss_jordan(&mut ai);
    match inverse(&m) {
        Some(inv) => {
            ensure(pivots.len() == 5, || format!("inverse of a singular matrix {rows:?}"))?;
            ensure(piv.iter().all(|&p| p < 5), || "oracle disagrees on invertibility".into())?;
            for (j, col) in inv.cols.iter().enumerate() {
                let got = to_dense(col, 5);
                let want: Vec<BigRational> = (0..5).map(|i| ai[i][5 + j].clone()).collect();
                ensure(got == want, || format!("inverse mismatch on {rows:?}"))?;
            }
        }
        None => ensure(pivots.len() < 5, || format!("no inverse for invertible {rows:?}"))?,
    }
    Ok(())
}

fn oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut singular = 0;
    for _ in 0..100 {
        let rows = random_system(&mut rng);
        let rhs: Vec<i64> = (0..5).map(|_| rng.gen_range(-4..=4)).collect();
        linear_algebra_case(&rows, &rhs)?;
        if rank(&LinMap::from_rows(&rows.iter().map(|r| r.iter().map(|&c| Scalar::int(c)).collect()).collect::<Vec<_>>())) < 5 {
            singular += 1;
        }
    }
    let found = must("search", search_galois_object_cocycles(&cyclic_group(2), 1))?;
    let expected: Vec<CocyclePair> = default_grid().into_iter().filter(|a| !a.is_zero()).map(galois_kz2).collect();
    ensure(found == expected, || format!("kZ2 search found {} cocycles, expected {}", found.len(), expected.len()))?;
    Ok(format!("100 systems ({singular} singular), kZ2 family of {}", found.len()))
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<String> = std::iter::once("hax").chain(args.iter().copied()).map(String::from).collect();
    let code = hax::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned() + &String::from_utf8_lossy(&err))
}

fn cli() -> Outcome {
    let entries = catalog::list();
    for e in &entries {
        let doc = must(e.name, Document::parse(e.shipped()))?;
        ensure(doc.emit() == e.shipped(), || format!("{}: emit∘parse is not the identity", e.name))?;
    }
    let (code, text) = run_cli(&["validate", "catalog:sweedler-H4"]);
    ensure(code == 0, || format!("validate sweedler-H4 exited {code}: {text}"))?;
    let corrupted = catalog::shipped_text("group-kZ2")
        .expect("shipped")
        .replace("  antipode {\n    1 -> 1 : 1\n    g -> g : 1", "  antipode {\n    1 -> 1 : 1\n    g -> 1 : 1");
    let dir = must("tempdir", tempfile::tempdir())?;
    let path = dir.path().join("bad.hax");
    must("write", std::fs::write(&path, corrupted))?;
    let (code, text) = run_cli(&["check", "antipode", path.to_str().expect("utf-8 path")]);
    ensure(code == 1, || format!("check antipode on a corrupted file exited {code}: {text}"))?;
    Ok(format!("{} documents round-trip, exit codes 0 and 1", entries.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("hopf core", 5, hopf_core),
        ("cocycle suite", 30, cocycle_suite),
        ("cross product", 60, cross_product),
        ("cocycle algebroid", 120, cocycle_algebroid),
        ("twisting", 120, twisting),
        ("ehresmann-schauenburg", 300, ehresmann_schauenburg),
        ("braided antipode", 60, coquasi_antipode_suite),
        ("cotwist coherence", 60, cotwist_coherence),
        ("oracles", 30, oracles),
        ("cli", 10, cli),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > Duration::from_secs(*limit) => Err(format!("{msg}, but over the time limit")),
            o => o,
        };
        let (tag, msg) = match &outcome {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        println!("criterion {:>2} {tag} {name:<22} {:>8.2}s / {limit}s  {msg}", i + 1, elapsed.as_secs_f64());
        failed += outcome.is_err() as usize;
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
