//! Acceptance run. Prints one PASS/FAIL line per criterion.
//!
//! Two criteria are known to be unattainable as literally stated and are
//! expected to stay red (see `KNOWN_RED`). The process fails when any
//! criterion deviates from its expected outcome, in either direction.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use recop::cli::{parse_input, run_args, EXIT_ERROR, EXIT_FAIL};
use recop::exterior::{form_matrix, matrix_form, pfaffian, KForm};
use recop::lie::{nijenhuis, Subspace};
use recop::matrix::{Endo, Matrix, SkewMatrix};
use recop::moser::{convergence_study, sample_points};
use recop::recursion::{classify_pair, eta_symmetry_check, recursion_operator, square_class, PairClassification, SquareClass};
use recop::scalar::{frac, int, Rational};
use recop::triples::{
    builtin_example, catalog_names, metric_hyperholomorphic, metric_hypersymplectic, verify_example,
    ExampleVerification,
};
use recop::Error;
use serde_json::Value;

const EXACT_LIMIT: Duration = Duration::from_secs(1);
const FLOW_LIMIT: Duration = Duration::from_secs(10);
const FLOW_TOLERANCE: f64 = 1e-6;
const MIN_REDUCTION: f64 = 12.0;
const RANDOM_CASES: usize = 1000;

/// Criteria whose literal statement cannot hold, with the reason.
const KNOWN_RED: [(u32, &str); 2] = [
    (
        2,
        "the required chain ends in −ω₃(·,A₃·); A₁ = A₂A₃ forces +ω₃(·,A₃·), so the literal chain holds only for g = 0",
    ),
    (
        4,
        "ω₁−ω₂ = 2η₃ has rank 2; kernels of ωᵢ±ωⱼ are complementary in dimension 6, so ranks are {2,4}, never {4,4}",
    ),
];

type Criterion = (u32, &'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn report(args: &[&str]) -> (Value, i32) {
    let out = run_args(std::iter::once("recop").chain(args.iter().copied()));
    (out.report, out.exit_code)
}

fn check(r: &Value, name: &str) -> bool {
    r["checks"]
        .as_array()
        .into_iter()
        .flatten()
        .any(|c| c["name"] == name && c["pass"] == true)
}

fn timed(limit: Duration, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let mut v = f();
    let took = start.elapsed();
    if took >= limit {
        v.pass = false;
        v.detail = format!("{}; runtime {took:.2?} over {limit:?}", v.detail);
    } else {
        v.detail = format!("{} ({took:.2?})", v.detail);
    }
    v
}

fn signature_is(r: &Value, p: u64, q: u64) -> bool {
    let s = &r["result"]["metric"]["signature"];
    s["positive"] == p && s["negative"] == q && s["zero"] == 0
}

fn dotti_fino() -> Verdict {
    timed(EXACT_LIMIT, || {
        let (r, code) = report(&["--mode", "exact", "verify-example", "dotti-fino-8"]);
        let names = [
            "forms_closed",
            "forms_nondegenerate",
            "squares_minus_identity",
            "anticommute",
            "independent_of_i",
        ];
        let missing: Vec<&str> = names.iter().copied().filter(|n| !check(&r, n)).collect();
        let sig = signature_is(&r, 4, 4);
        verdict(
            code == 0 && missing.is_empty() && sig,
            format!("exit {code}, failing {missing:?}, signature (4,4): {sig}"),
        )
    })
}

fn nil_hypersymplectic() -> Verdict {
    timed(EXACT_LIMIT, || {
        let (r, code) = report(&["--mode", "exact", "verify-example", "nil3xR"]);
        let tag = r["result"]["tag"] == "Hypersymplectic";
        let derived = check(&r, "chain_omega2") && check(&r, "chain_omega3");
        let literal = check(&r, "chain_omega3_negated");
        let sig = signature_is(&r, 2, 2);
        verdict(
            code == 0 && tag && literal && sig,
            format!("tag ok: {tag}, derived chain: {derived}, negated ω₃ chain: {literal}, signature (2,2): {sig}"),
        )
    })
}

fn holomorphic_symplectic_pair() -> Verdict {
    timed(EXACT_LIMIT, || {
        let (r, code) = report(&["verify-example", "hsp-8"]);
        let leaves = &r["result"]["leaves"];
        let dims = leaves["plus_dim"] == 4 && leaves["minus_dim"] == 4;
        let commute = check(&r, "commute");
        let holo = check(&r, "leaves_holomorphic")
            && leaves["restricted_tags"]
                .as_array()
                .is_some_and(|t| t.iter().all(|s| s == "HolomorphicSymplectic"));
        verdict(
            code == 0 && dims && commute && holo,
            format!("commute: {commute}, eigenspaces 4+4: {dims}, leaves holomorphic symplectic: {holo}"),
        )
    })
}

fn symplectic_triple() -> Verdict {
    timed(EXACT_LIMIT, || {
        let (r, code) = report(&["verify-example", "triple-6"]);
        let tag = r["result"]["tag"] == "SymplecticTriple";
        let pairs = r["result"]["pairs"].as_array().cloned().unwrap_or_default();
        let all_pairs = pairs.len() == 3 && pairs.iter().all(|p| p["tag"] == "SymplecticPair");
        let ranks: Vec<String> = pairs.iter().map(|p| p["ranks"].to_string()).collect();
        let all_four = !pairs.is_empty()
            && pairs
                .iter()
                .all(|p| p["ranks"].as_array().is_some_and(|rs| rs.iter().all(|x| x == 4)));
        verdict(
            code == 0 && tag && all_pairs && all_four,
            format!("tag ok: {tag}, all pairs symplectic: {all_pairs}, ranks of ωᵢ+ωⱼ, ωᵢ−ωⱼ: {}", ranks.join(" ")),
        )
    })
}

fn random_entry(rng: &mut ChaCha8Rng) -> Rational {
    frac(rng.gen_range(-3..=3), rng.gen_range(1..=2))
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| random_entry(rng));
        if m.det() != int(0) {
            return m;
        }
    }
}

/// Non-degenerate skew matrix of size `k` placed at offset `at` in `n × n`.
fn random_block(rng: &mut ChaCha8Rng, n: usize, at: usize, k: usize) -> Matrix {
    loop {
        let mut m = Matrix::zeros(n, n);
        for i in 0..k {
            for j in i + 1..k {
                let v = random_entry(rng);
                m[(at + i, at + j)] = v.clone();
                m[(at + j, at + i)] = -v;
            }
        }
        let block = Matrix::from_fn(k, k, |i, j| m[(at + i, at + j)].clone());
        if pfaffian(&SkewMatrix::new(block).unwrap()).unwrap() != int(0) {
            return m;
        }
    }
}

fn random_form(rng: &mut ChaCha8Rng, n: usize) -> KForm {
    loop {
        let m = random_block(rng, n, 0, n);
        let p = random_invertible(rng, n);
        let f = matrix_form(&SkewMatrix::new(m.congruence(&p)).unwrap()).unwrap();
        if form_matrix(&f).unwrap().det() != int(0) {
            return f;
        }
    }
}

fn dims(rng: &mut ChaCha8Rng) -> usize {
    [4, 6, 8][rng.gen_range(0..3)]
}

fn kernel_lemma() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut failures = Vec::new();
    for case in 0..RANDOM_CASES {
        let n = dims(&mut rng);
        let a = 2 * rng.gen_range(1..n / 2);
        let b = n - a;
        // Ω⁺ = Pᵀ(S ⊕ 0)P, Ω⁻ = Pᵀ(0 ⊕ T)P, so ker Ω⁻ = P⁻¹⟨e₁..e_a⟩.
        let p = random_invertible(&mut rng, n);
        let plus = random_block(&mut rng, n, 0, a).congruence(&p);
        let minus = random_block(&mut rng, n, a, b).congruence(&p);
        let half = frac(1, 2);
        let omega = matrix_form(&SkewMatrix::new((&plus + &minus).scale(&half)).unwrap()).unwrap();
        let eta = matrix_form(&SkewMatrix::new((&plus - &minus).scale(&half)).unwrap()).unwrap();
        let p_inv = p.inverse().unwrap();
        let expected_plus = Subspace::new(n, (0..a).map(|j| p_inv.col(j)).collect()).unwrap();
        let expected_minus = Subspace::new(n, (a..n).map(|j| p_inv.col(j)).collect()).unwrap();
        let ok = match classify_pair(&omega, &eta) {
            Ok(PairClassification::SymplecticPair(d)) => {
                let ker_minus = Subspace::new(n, form_matrix(&(&omega - &eta)).unwrap().nullspace()).unwrap();
                let ker_plus = Subspace::new(n, form_matrix(&(&omega + &eta)).unwrap().nullspace()).unwrap();
                ker_minus.same_span(&expected_plus)
                    && ker_plus.same_span(&expected_minus)
                    && d.plus_eigenspace.same_span(&expected_plus)
                    && d.minus_eigenspace.same_span(&expected_minus)
                    && (0..a).all(|j| d.operator.apply(&p_inv.col(j)) == p_inv.col(j))
            }
            _ => false,
        };
        if !ok {
            failures.push((case, n, a));
        }
    }
    verdict(
        failures.is_empty(),
        format!("{RANDOM_CASES} cases, failures {failures:?}"),
    )
}

fn operator_algebra() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut failures = Vec::new();
    for case in 0..RANDOM_CASES {
        let n = dims(&mut rng);
        let omega = random_form(&mut rng, n);
        let eta = random_form(&mut rng, n);
        let a = recursion_operator(&omega, &eta).unwrap();
        let back = recursion_operator(&eta, &omega).unwrap();
        let m_eta = form_matrix(&eta).unwrap();
        let lhs = &a.transpose() * &m_eta;
        let rhs = &*m_eta * &*a;
        let ok = a.compose(&back).is_identity()
            && back.compose(&a).is_identity()
            && lhs == rhs
            && eta_symmetry_check(&eta, &a).unwrap();
        if !ok {
            failures.push((case, n));
        }
    }
    verdict(
        failures.is_empty(),
        format!("{RANDOM_CASES} cases, failures {failures:?}"),
    )
}

fn all_examples() -> Vec<String> {
    let mut names: Vec<String> = catalog_names().iter().map(|s| s.to_string()).collect();
    names.extend(recop::cli::COMPOSITE_EXAMPLES.iter().map(|s| s.to_string()));
    names
}

fn nijenhuis_catalog() -> Verdict {
    let mut checked = 0;
    let mut failures = Vec::new();
    for name in all_examples() {
        let e = builtin_example(&name).unwrap();
        let v: ExampleVerification = verify_example(&e).unwrap();
        for (slot, a) in v.classification.operators.iter().enumerate() {
            if square_class(a) == SquareClass::Other {
                continue;
            }
            checked += 1;
            if !nijenhuis(&e.algebra, a).unwrap().is_zero() {
                failures.push(format!("{name}/A{}", slot + 1));
            }
        }
    }
    verdict(
        checked > 0 && failures.is_empty(),
        format!("{checked} operators, failures {failures:?}"),
    )
}

fn moser_family(file: &str) -> Verdict {
    timed(FLOW_LIMIT, || {
        let doc = parse_input(&data(file)).unwrap();
        let (spec, flow) = doc.flow.as_ref().unwrap();
        let samples = sample_points(doc.dimension, 64, spec.seed);
        match convergence_study(flow, &samples, 200, 1) {
            Ok(rows) => {
                let err = rows[0].error;
                let q = rows[1].reduction.unwrap();
                verdict(
                    err < FLOW_TOLERANCE && q >= MIN_REDUCTION,
                    format!("{file}: error at 200 steps {err:.2e}, reduction to 400 steps {q:.2}"),
                )
            }
            Err(e) => verdict(false, format!("{file}: {e}")),
        }
    })
}

fn moser_flow() -> Verdict {
    let a = moser_family("t2-family.json");
    let b = moser_family("t4-pair-family.json");
    verdict(a.pass && b.pass, format!("{}; {}", a.detail, b.detail))
}

fn signature_combinators() -> Verdict {
    timed(EXACT_LIMIT, || {
        let mut parts = Vec::new();
        let mut ok = true;
        for (name, p, q) in [
            ("product(dotti-fino-8,flat-hk-4)", 8, 4),
            ("product(dotti-fino-8,neg(flat-hk-4))", 4, 8),
        ] {
            let (r, code) = report(&["verify-example", name]);
            let tag = r["result"]["tag"] == "HyperholomorphicSymplectic";
            let sig = signature_is(&r, p, q);
            ok &= code == 0 && tag && sig;
            parts.push(format!("{name}: ({p},{q}) {sig}"));
        }
        verdict(ok, parts.join(", "))
    })
}

fn negative_controls() -> Verdict {
    let mut notes = Vec::new();

    let scaled = data("flat-hk-scaled.json");
    let (r, code) = report(&["classify-triple", scaled.to_str().unwrap()]);
    let scaled_ok = code == EXIT_FAIL && r["result"]["tag"] == "Generic";
    notes.push(format!("scaled form: {} exit {code}", r["result"]["tag"]));

    let e = builtin_example("dotti-fino-8").unwrap();
    let c = verify_example(&e).unwrap().classification;
    let mut flipped = c.operators.clone();
    flipped[2] = Endo::new(-&*flipped[2]).unwrap();
    let hh = metric_hyperholomorphic(&c.forms, &flipped);
    let cyc = recop::triples::cyclic_identity_holds(&flipped);

    let n = builtin_example("nil3xR").unwrap();
    let nc = verify_example(&n).unwrap().classification;
    let mut nflip = nc.operators.clone();
    nflip[1] = Endo::new(-&*nflip[1]).unwrap();
    let hs = metric_hypersymplectic(&nc.forms, &nflip);
    let flip_ok = matches!(hh, Err(Error::Consistency(_))) && matches!(hs, Err(Error::Consistency(_))) && !cyc;
    notes.push(format!(
        "flipped A₃ (hyperholomorphic): {}, flipped A₂ (hypersymplectic): {}, cyclic identity after flip: {cyc}",
        hh.err().map_or("accepted".into(), |e| e.to_string()),
        hs.err().map_or("accepted".into(), |e| e.to_string()),
    ));

    let bad = data("non-jacobi.json");
    let (r, code) = report(&["classify-triple", bad.to_str().unwrap()]);
    let jacobi_ok = code == EXIT_ERROR && r["error"].as_str().is_some_and(|m| m.contains("Jacobi"));
    notes.push(format!("non-Jacobi algebra: exit {code}"));

    verdict(scaled_ok && flip_ok && jacobi_ok, notes.join("; "))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "Dotti-Fino catalog reproduction", dotti_fino),
        (2, "Nil3xR hypersymplectic reproduction", nil_hypersymplectic),
        (3, "holomorphic symplectic pair reproduction", holomorphic_symplectic_pair),
        (4, "symplectic triple reproduction", symplectic_triple),
        (5, "kernel lemma property suite", kernel_lemma),
        (6, "operator algebra property suite", operator_algebra),
        (7, "Nijenhuis checks on catalog operators", nijenhuis_catalog),
        (8, "Moser flow on T2 and T4 families", moser_flow),
        (9, "signature combinators", signature_combinators),
        (10, "negative controls", negative_controls),
    ];
    let mut unexpected = Vec::new();
    for (id, title, f) in criteria {
        let v = f();
        let known = KNOWN_RED.iter().find(|(k, _)| *k == id).map(|(_, why)| *why);
        let status = if v.pass { "PASS" } else { "FAIL" };
        println!("{status} {id:>2} {title}: {}", v.detail);
        if let Some(why) = known {
            println!("        expected red: {why}");
        }
        if v.pass == known.is_some() {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria with unexpected outcome: {unexpected:?}");
        std::process::exit(1);
    }
}
