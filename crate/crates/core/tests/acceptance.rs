//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spets::arith::{nu_ell_factor, RootOfUnity, ZetaSpec};
use spets::cat::{
    bux_check, chain_orbit_poset, orbit_complex, poset_isomorphism, subdivision_class_poset, transporter_category,
    DirectedGGraph, GPoset,
};
use spets::chars::character_degrees;
use spets::cli::named_group;
use spets::dade::verify::star_orbits;
use spets::dade::{
    cancellation_involution, ingest_dataset, parse_dataset, relative_weyl_group, verify_dade, PairUniverse,
};
use spets::levi::LeviPoset;
use spets::refl::FiniteGroup;

use common::oracle::{direct_factor_valuation, enumerated, levi_oracle};
use common::{levi_poset, TEST_COSETS};

/// Wall-clock limit for the identity check on one coset.
const RUNTIME_LIMIT: Duration = Duration::from_secs(60);
/// Random valuation samples and the seed that draws them.
const NU_SAMPLES: usize = 200;
const NU_SEED: u64 = 0x5eed_0007;
/// Worker counts compared for byte-identical output.
const WORKER_COUNTS: [&str; 3] = ["1", "2", "4"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, ok: String) -> Outcome {
    if failures.is_empty() {
        Outcome { pass: true, detail: ok }
    } else {
        Outcome { pass: false, detail: failures.join("; ") }
    }
}

fn dataset_universe(poset: &LeviPoset, t: &str, file: &str) -> PairUniverse {
    let text = std::fs::read_to_string(common::fixture(file)).unwrap();
    ingest_dataset(poset, &parse_dataset(&text).unwrap(), Some(t)).unwrap()
}

fn identity_holds() -> Outcome {
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for (t, ell, q) in TEST_COSETS {
        let start = Instant::now();
        let poset = levi_poset(t, ell, q);
        let r = verify_dade(&poset, &PairUniverse::principal(&poset).unwrap(), None).unwrap();
        let took = start.elapsed();
        slowest = slowest.max(took);
        if !r.pass {
            failures.push(format!("{t} principal"));
        }
        if took > RUNTIME_LIMIT {
            failures.push(format!("{t} took {took:?}"));
        }
    }
    for (t, ell, q, file, row) in [("A1", 3, 2, "a1_dataset.json", (2, 2)), ("A2", 7, 2, "a2_dataset.json", (3, 3))] {
        let poset = levi_poset(t, ell, q);
        let r = verify_dade(&poset, &dataset_universe(&poset, t, file), None).unwrap();
        let d1 = r.rows.get(1).map(|x| (x.lhs, x.rhs));
        if !r.pass || d1 != Some(row) {
            failures.push(format!("{t} dataset: d=1 row {d1:?}"));
        }
    }
    outcome(
        failures,
        format!("5 cosets principal, A1 2 = 2 and A2 3 = 3 with datasets, slowest {:.2}s", slowest.as_secs_f64()),
    )
}

fn contractibility_shadow() -> Outcome {
    let mut failures = Vec::new();
    for (t, ell, q) in TEST_COSETS {
        let gp = GPoset::from_levi(&levi_poset(t, ell, q));
        let bux = bux_check(&DirectedGGraph::from_poset(&gp));
        if !bux.transitive_on_minimal || !bux.links_pass {
            failures.push(format!("{t} morse hypotheses"));
        }
        if !orbit_complex(&gp).reduced_homology().vanishes {
            failures.push(format!("{t} homology"));
        }
    }
    outcome(failures, "both hypotheses hold and reduced homology vanishes for 5 cosets".into())
}

fn minimal_levis_conjugate() -> Outcome {
    let mut failures = Vec::new();
    for (t, ell, q) in TEST_COSETS {
        let poset = levi_poset(t, ell, q);
        if !poset.minimal_report().transitive {
            failures.push(format!("{t} not transitive"));
        }
        let n = poset.len();
        let preserved = (0..poset.coset().order())
            .all(|u| (0..n).all(|i| (0..n).all(|j| poset.leq(i, j) == poset.leq(poset.act(u, i), poset.act(u, j)))));
        if !preserved {
            failures.push(format!("{t} order not preserved"));
        }
    }
    outcome(failures, "W transitive on minimal Levis and order-preserving for 5 cosets".into())
}

fn subdivision_isomorphism() -> Outcome {
    let mut failures = Vec::new();
    let mut sizes = Vec::new();
    for (t, ell, q) in [("A1", 3, 2), ("A2", 7, 2)] {
        let poset = levi_poset(t, ell, q);
        let sub = subdivision_class_poset(&transporter_category(&poset).unwrap()).unwrap();
        let orbits = chain_orbit_poset(&GPoset::from_levi(&poset));
        match poset_isomorphism(&sub.leq, &orbits.leq) {
            Some(iso) => {
                let k = sub.leq.len();
                let ok = (0..k).all(|i| (0..k).all(|j| sub.leq[i][j] == orbits.leq[iso[i]][iso[j]]));
                if !ok {
                    failures.push(format!("{t} map is not an isomorphism"));
                }
                sizes.push(format!("{t}: {k} classes"));
            }
            None => failures.push(format!("{t} no isomorphism")),
        }
    }
    outcome(failures, format!("explicit isomorphisms found ({})", sizes.join(", ")))
}

fn involution_cancels() -> Outcome {
    let mut failures = Vec::new();
    let (mut triples, mut paired) = (0, 0);
    let mut universes: Vec<(&str, LeviPoset, PairUniverse)> = TEST_COSETS
        .into_iter()
        .map(|(t, ell, q)| {
            let p = levi_poset(t, ell, q);
            let u = PairUniverse::principal(&p).unwrap();
            (t, p, u)
        })
        .collect();
    for (t, ell, q) in [("A2", 3, 4), ("B2", 3, 2), ("A3", 5, 2), ("A3", 3, 4), ("G2", 13, 3)] {
        let p = levi_poset(t, ell, q);
        let u = PairUniverse::principal(&p).unwrap();
        universes.push((t, p, u));
    }
    for (t, ell, q, file) in
        [("A1", 3, 2, "a1_dataset.json"), ("A2", 7, 2, "a2_dataset.json"), ("B2", 5, 2, "b2_dataset.json")]
    {
        let p = levi_poset(t, ell, q);
        let u = dataset_universe(&p, t, file);
        universes.push((t, p, u));
    }
    for (t, poset, uni) in &universes {
        let r = cancellation_involution(poset, uni).unwrap();
        triples += r.triples;
        paired += r.paired;
        if !r.pass {
            failures.push(format!("{t}: {}", r.violations.join(", ")));
        }
    }
    outcome(failures, format!("{triples} triples ({paired} paired) checked exhaustively over {} runs", universes.len()))
}

fn enumeration_complete() -> Outcome {
    let mut failures = Vec::new();
    for (t, ell, q) in [("A1", 3, 2), ("A2", 7, 2), ("B2", 5, 2)] {
        if enumerated(t, ell, q) != levi_oracle(t, ell, q) {
            failures.push(t.to_string());
        }
    }
    outcome(failures, "A1, A2, B2 match the brute-force oracle".into())
}

fn degree_constraints(h: &FiniteGroup) -> bool {
    let d = character_degrees(h).unwrap();
    d.degrees.iter().map(|&x| u64::from(x).pow(2)).sum::<u64>() == h.order() as u64
        && d.class_count() == h.conjugacy_classes().len()
}

fn arithmetic_and_characters() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(NU_SEED);
    let primes = [2u64, 3, 5, 7, 11, 13, 17, 31];
    let qs = [2u64, 3, 4, 5, 7, 8, 9, 11, 16, 25];
    let mut drawn = 0;
    while drawn < NU_SAMPLES {
        let ell = primes[rng.gen_range(0..primes.len())];
        let q = qs[rng.gen_range(0..qs.len())];
        if q.is_multiple_of(ell) {
            continue;
        }
        let ctx = ZetaSpec::new(q, ell).unwrap();
        let orders: Vec<u64> =
            if ell == 2 { vec![1, 2] } else { (1..ell).filter(|m| (ell - 1).is_multiple_of(*m)).collect() };
        let m = orders[rng.gen_range(0..orders.len())];
        let eps = RootOfUnity::new(rng.gen_range(0..m) as i64, m as u32);
        let d = rng.gen_range(1..13);
        if nu_ell_factor(d, eps, &ctx).unwrap() != direct_factor_valuation(d, eps, &ctx) {
            failures.push(format!("nu mismatch d={d} eps={eps} q={q} ell={ell}"));
        }
        drawn += 1;
    }
    let mut groups = 0;
    for (t, ell, q) in TEST_COSETS {
        let poset = levi_poset(t, ell, q);
        let uni = PairUniverse::principal(&poset).unwrap();
        let mut encountered = Vec::new();
        for p in uni.all_pairs(&poset) {
            encountered.push(relative_weyl_group(&poset, &uni, p, None).unwrap());
        }
        for sigma in star_orbits(&poset) {
            for p in uni.cuspidal_pairs_of(&poset, sigma.rep[0]) {
                encountered.push(relative_weyl_group(&poset, &uni, p, Some(&sigma.rep)).unwrap());
            }
        }
        for h in encountered {
            groups += 1;
            if !degree_constraints(&h) {
                failures.push(format!("{t}: relative Weyl group of order {}", h.order()));
            }
        }
    }
    for (name, expected) in [("S3", vec![1, 1, 2]), ("D8", vec![1, 1, 1, 1, 2])] {
        if character_degrees(&named_group(name).unwrap()).unwrap().degrees != expected {
            failures.push(format!("{name} fixture"));
        }
    }
    outcome(failures, format!("{NU_SAMPLES} valuation samples, {groups} relative Weyl groups, S3 and D8 fixtures"))
}

fn spets(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_spets")).args(args).output().unwrap();
    let mut bytes = out.status.code().unwrap_or(-1).to_le_bytes().to_vec();
    bytes.extend(out.stdout);
    bytes
}

fn deterministic_output() -> Outcome {
    let mut failures = Vec::new();
    let mut runs = 0;
    for (t, ell, q) in TEST_COSETS {
        let (ell, q) = (ell.to_string(), q.to_string());
        for cmd in ["levis", "orbit-homology", "check-bux", "verify-dade"] {
            let args = vec![cmd, "--type", t, "--ell", &ell, "--q", &q, "--json"];
            let first = spets(&args);
            let mut same = first == spets(&args);
            for w in WORKER_COUNTS {
                let mut with = args.clone();
                with.extend(["--workers", w]);
                same &= first == spets(&with);
                runs += 1;
            }
            runs += 2;
            if !same {
                failures.push(format!("{cmd} {t}"));
            }
        }
    }
    outcome(failures, format!("{runs} runs byte-identical across repeats and worker counts"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("alternating-sum identity", identity_holds),
        ("morse hypotheses and orbit homology", contractibility_shadow),
        ("minimal Levis conjugate", minimal_levis_conjugate),
        ("subdivision isomorphic to chain orbits", subdivision_isomorphism),
        ("cancellation involution", involution_cancels),
        ("enumeration completeness", enumeration_complete),
        ("arithmetic and character suites", arithmetic_and_characters),
        ("determinism", deterministic_output),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let r = check();
        all &= r.pass;
        println!("[{}] {} {}: {}", if r.pass { "PASS" } else { "FAIL" }, i + 1, name, r.detail);
    }
    if all {
        println!("acceptance: all 8 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: some criteria failed");
        ExitCode::FAILURE
    }
}
