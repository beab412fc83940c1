//! Acceptance suite. Every criterion prints one PASS/FAIL line; run with
//! `cargo test -p freegroup-cli --test acceptance -- --nocapture` to see them.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use freegroup::verifier::verify_power_product;
use freegroup::{
    abelian_det_filter, complete_to_basis, enumerate_all, is_basis, random_chain, Certificate,
    CyclicWord, Letter, Rank, Whitehead, Word, WordTuple,
};

const THM23_BUDGET: Duration = Duration::from_secs(10);
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const RANDOM_CHAINS: u64 = 500;
const MAX_CHAIN_DEPTH: usize = 10;
const RANDOM_TUPLES: u64 = 1000;
const MAX_TUPLE_WORD_LEN: usize = 6;
const ORACLE_MAX_LEN: usize = 8;

fn rank(n: u32) -> Rank {
    Rank::new(n).unwrap()
}

fn report(id: &str, what: &str, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("[{status}] {id}: {what}");
    for f in failures.iter().take(10) {
        println!("        {f}");
    }
    assert!(
        failures.is_empty(),
        "{id} failed with {} failures",
        failures.len()
    );
}

fn bin(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_freegroup"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn random_word(rng: &mut ChaCha8Rng, n: u32, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<Letter> = (0..len)
        .map(|_| Letter::new(rng.gen_range(1..=n), rng.gen_bool(0.5)))
        .collect();
    Word::new(letters, rank(n)).unwrap()
}

/// Every freely reduced word of exactly `len` letters in rank `n`.
fn reduced_words(n: u32, len: usize) -> Vec<Vec<Letter>> {
    let alphabet: Vec<Letter> = (1..=n)
        .flat_map(|i| [Letter::new(i, false), Letter::new(i, true)])
        .collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * alphabet.len());
        for prefix in &out {
            for &a in &alphabet {
                if prefix.last().is_none_or(|l: &Letter| !l.cancels(a)) {
                    let mut p = prefix.clone();
                    p.push(a);
                    next.push(p);
                }
            }
        }
        out = next;
    }
    out
}

#[test]
fn ac1_witness_family_ranks_two_to_six() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for n in 2..=6u32 {
        let (code, out) = bin(&[
            "verify",
            "thm2.3",
            "--rank",
            &n.to_string(),
            "--format",
            "json",
        ]);
        if code != 0 {
            failures.push(format!("rank {n}: exit code {code}"));
            continue;
        }
        let doc: Value = serde_json::from_str(&out).unwrap();
        let claims = doc["result"]["claims"].as_array().unwrap();
        let ids: BTreeSet<String> = claims
            .iter()
            .map(|c| c["id"].as_str().unwrap().to_string())
            .collect();
        let mut expected: BTreeSet<String> =
            ["C0", "C1", "C2"].iter().map(|s| s.to_string()).collect();
        expected.extend((1..=n).map(|i| format!("C3.{i}")));
        if ids != expected {
            failures.push(format!("rank {n}: claims {ids:?}"));
        }
        for c in claims {
            if c["passed"] != true {
                failures.push(format!("rank {n}: {} failed: {}", c["id"], c["computed"]));
            }
        }
    }
    let elapsed = started.elapsed();
    if elapsed > THM23_BUDGET {
        failures.push(format!("took {elapsed:?}, budget {THM23_BUDGET:?}"));
    }
    report(
        "AC1",
        &format!("witness family verified for ranks 2..6 in {elapsed:?}"),
        &failures,
    );
}

#[test]
fn ac2_power_product_sweep() {
    let mut failures = Vec::new();
    let mut words = 0;
    for n in 1..=4u32 {
        for m in 1..=n as usize {
            for code in 0..(1u32 << m) {
                let exponents: Vec<i64> = (0..m)
                    .map(|t| if code >> t & 1 == 1 { 3 } else { 2 })
                    .collect();
                words += 1;
                let report = verify_power_product(rank(n), &exponents).unwrap();
                if !report.passed {
                    failures.push(format!(
                        "rank {n}, exponents {exponents:?}: {:?}",
                        report.failed_ids()
                    ));
                }
                // exhaustive single-move inspection, independent of the report
                let word = Word::new(
                    exponents.iter().enumerate().flat_map(|(t, &k)| {
                        std::iter::repeat_n(Letter::gen(t as u32 + 1), k as usize)
                    }),
                    rank(n),
                )
                .unwrap();
                let cw = CyclicWord::of_word(&word);
                for aut in enumerate_all(rank(n)) {
                    if aut.apply_to_cyclic(&cw).unwrap().len() < cw.len() {
                        failures.push(format!("{aut} shortens {word}"));
                    }
                }
            }
        }
    }
    report(
        "AC2",
        &format!("{words} power products non-primitive, no Whitehead move shortens any"),
        &failures,
    );
}

#[test]
fn ac3_descent_agrees_with_orbit_enumeration() {
    let started = Instant::now();
    let r2 = rank(2);
    let wh = Whitehead::new(r2);
    let primitives = wh.enumerate_primitives(ORACLE_MAX_LEN).unwrap();
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for len in 0..=ORACLE_MAX_LEN {
        for letters in reduced_words(2, len) {
            let word = Word::new(letters, r2).unwrap();
            if !word.is_cyclically_reduced() {
                continue;
            }
            checked += 1;
            let greedy = wh.is_primitive(&word).unwrap().primitive;
            let listed = primitives.contains(&CyclicWord::of_word(&word));
            if greedy != listed {
                failures.push(format!(
                    "{word}: descent says {greedy}, enumeration says {listed}"
                ));
            }
        }
    }
    let elapsed = started.elapsed();
    if elapsed > ORACLE_BUDGET {
        failures.push(format!("took {elapsed:?}, budget {ORACLE_BUDGET:?}"));
    }
    report(
        "AC3",
        &format!(
            "{checked} cyclically reduced rank-2 words of length <= {ORACLE_MAX_LEN}, {} primitive classes, 0 disagreements required, {elapsed:?}",
            primitives.len()
        ),
        &failures,
    );
}

#[test]
fn ac4_automorphism_soundness() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let whs: Vec<Whitehead> = (2..=4).map(|n| Whitehead::new(rank(n))).collect();
    for i in 0..RANDOM_CHAINS {
        let n = 2 + (i % 3) as u32;
        let wh = &whs[(n - 2) as usize];
        let depth = (i as usize) % (MAX_CHAIN_DEPTH + 1);
        let chain = random_chain(rank(n), depth, 10_000 + i);

        let images = WordTuple::new(chain.basis_images(), rank(n)).unwrap();
        if !is_basis(&images) {
            failures.push(format!("chain {i}: basis images {images} not a basis"));
        }

        let w = random_word(&mut rng, n, 5);
        let before = wh.is_primitive(&w).unwrap().primitive;
        let after = wh
            .is_primitive(&chain.apply_to_word(&w).unwrap())
            .unwrap()
            .primitive;
        if before != after {
            failures.push(format!("chain {i}: primitivity of {w} changed"));
        }

        let u = random_word(&mut rng, n, 4);
        let v = if i % 2 == 0 {
            random_chain(rank(n), 3, 20_000 + i)
                .apply_to_word(&u)
                .unwrap()
        } else {
            random_word(&mut rng, n, 4)
        };
        let base = wh.orbit_equivalent(&u, &v).unwrap().equivalent;
        let moved = wh
            .orbit_equivalent(
                &chain.apply_to_word(&u).unwrap(),
                &chain.apply_to_word(&v).unwrap(),
            )
            .unwrap()
            .equivalent;
        if base != moved {
            failures.push(format!(
                "chain {i}: orbit equivalence of ({u}, {v}) changed"
            ));
        }
        if i % 2 == 0 && !base {
            failures.push(format!(
                "chain {i}: {u} and its image {v} reported inequivalent"
            ));
        }
    }
    report(
        "AC4",
        &format!("{RANDOM_CHAINS} random chains (depth <= {MAX_CHAIN_DEPTH}, ranks 2..4)"),
        &failures,
    );
}

fn nielsen_images(ws: &[Word]) -> Vec<Vec<Word>> {
    let n = ws.len();
    let mut out = Vec::new();
    for i in 0..n {
        let mut inv = ws.to_vec();
        inv[i] = inv[i].inverse();
        out.push(inv);
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut swapped = ws.to_vec();
            swapped.swap(i, j);
            out.push(swapped);
            for other in [ws[j].clone(), ws[j].inverse()] {
                let mut t = ws.to_vec();
                t[i] = ws[i].multiply(&other).unwrap();
                out.push(t);
            }
        }
    }
    out
}

#[test]
fn ac5_basis_detector_cross_check() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut bases = 0;
    for i in 0..RANDOM_TUPLES {
        let n = 2 + (i % 2) as u32;
        let words: Vec<Word> = (0..n)
            .map(|_| random_word(&mut rng, n, MAX_TUPLE_WORD_LEN))
            .collect();
        let t = WordTuple::new(words.clone(), rank(n)).unwrap();
        let basis = is_basis(&t);
        bases += usize::from(basis);
        if !abelian_det_filter(&t).unwrap() && basis {
            failures.push(format!("{t}: filter rejects a basis"));
        }
        for image in nielsen_images(&words) {
            let image = WordTuple::new(image, rank(n)).unwrap();
            if is_basis(&image) != basis {
                failures.push(format!("{t} -> {image}: basis status changed"));
            }
        }
    }
    // Nielsen invariance on genuine bases as well
    for i in 0..200u64 {
        let n = 2 + (i % 2) as u32;
        let words = random_chain(rank(n), 6, 30_000 + i).basis_images();
        for image in nielsen_images(&words) {
            if !is_basis(&WordTuple::new(image.clone(), rank(n)).unwrap()) {
                failures.push(format!(
                    "Nielsen image of a basis is not a basis: {image:?}"
                ));
            }
        }
    }
    report(
        "AC5",
        &format!("{RANDOM_TUPLES} random tuples ({bases} bases) plus 200 random bases"),
        &failures,
    );
}

#[test]
fn ac6_certificates_recheck() {
    let mut failures = Vec::new();
    let mut certs: Vec<Certificate> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..300u64 {
        let n = 2 + (i % 3) as u32;
        let wh = Whitehead::new(rank(n));
        let w = random_word(&mut rng, n, 10);
        let res = wh.minimize(&CyclicWord::of_word(&w)).unwrap();
        certs.push(Certificate::minimization(&w, &res));

        let p = random_chain(rank(n), (i % 7) as usize, 40_000 + i)
            .apply_to_word(&Word::generator(1 + (i as u32 % n), rank(n)).unwrap())
            .unwrap()
            .conjugate_by(&random_word(&mut rng, n, 3))
            .unwrap();
        match complete_to_basis(&p) {
            Ok(basis) => certs.push(Certificate::basis(&p, &basis)),
            Err(e) => failures.push(format!("complete_to_basis({p}): {e}")),
        }
    }
    // every certificate through the library checker
    for c in &certs {
        if let Err(e) = c.check() {
            failures.push(format!("{e}: {}", c.to_json()));
        }
    }
    // and a spread of them through the check-certificate entry point
    let dir = tempfile::tempdir().unwrap();
    for (k, c) in certs.iter().enumerate().step_by(6) {
        let path = dir.path().join(format!("cert{k}.json"));
        std::fs::write(&path, c.to_json()).unwrap();
        let (code, out) = bin(&["check-certificate", path.to_str().unwrap()]);
        if code != 0 {
            failures.push(format!("check-certificate rejected #{k}: {out}"));
        }
    }
    // command output documents are accepted directly
    for args in [
        ["minimize", "a1^2 a2 a3^-1 a2", "--format", "json"],
        ["complete", "a1 a2^3 a3^3", "--format", "json"],
    ] {
        let (_, out) = bin(&args);
        let path = dir.path().join("doc.json");
        std::fs::write(&path, out).unwrap();
        let (code, msg) = bin(&["check-certificate", path.to_str().unwrap()]);
        if code != 0 {
            failures.push(format!("{args:?}: {msg}"));
        }
    }
    report(
        "AC6",
        &format!(
            "{} minimization and basis certificates re-verified",
            certs.len()
        ),
        &failures,
    );
}
