//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (run with `cargo test --test acceptance -- --nocapture`
//! to see them; the per-test ok/FAILED lines carry the same information).

use hopfpres::axioms::{axiom_suite, check_axioms, defining_axioms};
use hopfpres::model::builtin_groups;
use hopfpres::text::parse_presentation;
use hopfpres::{
    compose_p, elementary, eval_term, hom_count, hom_oracle, identity_p, omega, omega_bar,
    search_equiv, verify_certificate, AcMove, GenSym, Generator, HopfTerm, Letter,
    OmegaBarChoices, RelPresentation, SearchBounds, SearchOutcome, Sign, SigmaStrategy, Word,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

/// The frozen round-trip corpus: arities <= 2, <= 2 internals, relator
/// length <= 4.
const CORPUS: [&str; 20] = [
    "< a ; b ; | a b^-1 >",
    "< a1, a2 ; b1, b2 ; | a1 b1^-1, a2 b2^-1 >",
    "< a ; b, c ; | a b^-1, a c^-1 >",
    "< a, b ; c ; | a b c^-1 >",
    "< a ; ; | >",
    "< ; a ; | a >",
    "< ; a ; | >",
    "< a ; ; | a >",
    "< a ; b ; | a b >",
    "< a1, a2 ; b1, b2 ; | a1 b2^-1, a2 b1^-1 >",
    "< ; ; | 1 >",
    "< ; ; x | x^2 >",
    "< ; ; x | x^3 >",
    "< ; ; x, y | x y x^-1 y^-1 >",
    "< ; ; x | x >",
    "< ; ; x | >",
    "< a ; b ; c | a c^-1, c b^-1 >",
    "< a ; b ; | a^2 b^-1 >",
    "< a ; ; c | a c^2 >",
    "< a1, a2 ; b1 ; c1 | a1 c1^-1, c1 a2 b1^-1 >",
];

fn corpus() -> Vec<RelPresentation> {
    CORPUS.iter().map(|t| parse_presentation(t).expect("corpus parses")).collect()
}

fn report(criterion: &str, ok: bool) {
    println!("criterion {criterion}: {}", if ok { "PASS" } else { "FAIL" });
}

#[test]
fn criterion_1_axiom_suite_exact_in_all_groups() {
    let start = Instant::now();
    let groups = builtin_groups();
    let suite = axiom_suite();
    let report_data = check_axioms(&suite, &groups);
    let elapsed = start.elapsed();
    let ok = report_data.all_passed() && elapsed < Duration::from_secs(60);
    report("1 (axiom suite, exact, all groups, <60s)", ok);
    for f in report_data.failures() {
        eprintln!("  FAIL {} @ {} witness {:?}", f.axiom, f.group, f.witness);
    }
    assert!(report_data.all_passed(), "axiom failures");
    assert!(elapsed < Duration::from_secs(60), "axiom suite took {elapsed:?}");
}

#[test]
fn criterion_2_hpres_rederivation_by_search() {
    let bounds = SearchBounds {
        max_relator_len: 8,
        max_relators: 8,
        max_internal: 4,
        max_ac1_len: 4,
        depth: 12,
        nodes: 1_000_000,
    };
    let mut ok = true;
    for axiom in defining_axioms() {
        let lhs = omega(&axiom.lhs);
        let rhs = omega(&axiom.rhs);
        let start = Instant::now();
        match search_equiv(&lhs, &rhs, &bounds).expect("search runs") {
            SearchOutcome::Found(cert) => {
                assert!(
                    verify_certificate(&lhs, &cert, &rhs).is_valid(),
                    "{}: certificate does not replay",
                    axiom.name
                );
            }
            other => {
                eprintln!("  {}: expected Found, got {other:?}", axiom.name);
                ok = false;
            }
        }
        let elapsed = start.elapsed();
        if elapsed >= Duration::from_secs(30) {
            eprintln!("  {}: took {elapsed:?}", axiom.name);
            ok = false;
        }
    }
    report("2 (Hpres axioms re-derived by certified search, depth <=12, <30s each)", ok);
    assert!(ok);
}

#[test]
fn criterion_3_omega_bar_after_omega_is_identity_on_generators() {
    let groups = builtin_groups();
    let mut ok = true;
    for sym in GenSym::ALL {
        let term = HopfTerm::generator(sym);
        let round = omega_bar(&omega(&term), &OmegaBarChoices::default()).expect("translates");
        for g in &groups {
            let lhs = eval_term(&round, g).expect("evaluates");
            let rhs = eval_term(&term, g).expect("evaluates");
            if lhs != rhs {
                eprintln!("  {sym:?} on {}: round trip differs", g.name);
                ok = false;
            }
        }
    }
    report("3 (round trip omega_bar . omega = id on generators, exact)", ok);
    assert!(ok);
}

#[test]
fn criterion_4_omega_after_omega_bar_certified_on_corpus() {
    let bounds = SearchBounds {
        max_relator_len: 8,
        max_relators: 8,
        max_internal: 4,
        max_ac1_len: 4,
        depth: 14,
        nodes: 1_000_000,
    };
    let mut ok = true;
    for (text, p) in CORPUS.iter().zip(corpus()) {
        let term = omega_bar(&p, &OmegaBarChoices::default()).expect("translates");
        let round = omega(&term);
        let start = Instant::now();
        match search_equiv(&round, &p, &bounds).expect("search runs") {
            SearchOutcome::Found(cert) => {
                assert!(
                    verify_certificate(&round, &cert, &p).is_valid(),
                    "{text}: certificate does not replay"
                );
            }
            other => {
                eprintln!("  {text}: expected Found, got {other:?}");
                ok = false;
            }
        }
        let elapsed = start.elapsed();
        if elapsed >= Duration::from_secs(300) {
            eprintln!("  {text}: took {elapsed:?}");
            ok = false;
        }
    }
    report("4 (round trip omega . omega_bar certified on the 20-item corpus, depth <=14)", ok);
    assert!(ok);
}

fn random_presentation(rng: &mut ChaCha8Rng) -> RelPresentation {
    let n = rng.gen_range(0..=2usize);
    let m = rng.gen_range(0..=2usize);
    let mut k = rng.gen_range(0..=2u32);
    if k as usize + m > 3 {
        k = (3 - m) as u32;
    }
    let mut gens: Vec<Generator> = Vec::new();
    gens.extend((1..=n as u32).map(Generator::Source));
    gens.extend((1..=m as u32).map(Generator::Target));
    gens.extend((1..=k).map(Generator::Internal));
    let s = rng.gen_range(0..=2usize);
    let relators = (0..s)
        .map(|_| {
            let len = if gens.is_empty() { 0 } else { rng.gen_range(0..=3usize) };
            Word(
                (0..len)
                    .map(|_| {
                        let gen = gens[rng.gen_range(0..gens.len())];
                        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
                        Letter::new(gen, sign)
                    })
                    .collect(),
            )
        })
        .collect();
    RelPresentation::new(
        (1..=n).map(|i| format!("a{i}")).collect(),
        (1..=m).map(|i| format!("b{i}")).collect(),
        k,
        relators,
    )
    .expect("random presentation is well-formed")
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<u32> {
    let mut v: Vec<u32> = (1..=n as u32).collect();
    v.shuffle(rng);
    v
}

#[test]
fn criterion_5_choice_independence() {
    let groups = builtin_groups();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut mismatches = 0usize;
    for _ in 0..50 {
        let p = random_presentation(&mut rng);
        let mut evals: Vec<Vec<hopfpres::LinearMap>> = Vec::new();
        for _ in 0..5 {
            let strategy = match rng.gen_range(0..3) {
                0 => SigmaStrategy::FirstOccurrence,
                1 => SigmaStrategy::LastOccurrence,
                _ => SigmaStrategy::Seeded(rng.gen()),
            };
            let choices = OmegaBarChoices {
                internal_order: Some(random_permutation(&mut rng, p.internals as usize)),
                relator_order: Some({
                    let mut v: Vec<usize> = (0..p.relators.len()).collect();
                    v.shuffle(&mut rng);
                    v
                }),
                sigma_strategy: strategy,
            };
            let term = omega_bar(&p, &choices).expect("translates");
            evals.push(groups.iter().map(|g| eval_term(&term, g).expect("evaluates")).collect());
        }
        for other in &evals[1..] {
            if *other != evals[0] {
                mismatches += 1;
            }
        }
    }
    report("5 (choice independence: 50 presentations x 5 choice tuples, 0 mismatches)", mismatches == 0);
    assert_eq!(mismatches, 0);
}

fn random_applicable_move(p: &RelPresentation, rng: &mut ChaCha8Rng) -> Option<AcMove> {
    let mut gens: Vec<Generator> = Vec::new();
    gens.extend((1..=p.arity_in() as u32).map(Generator::Source));
    gens.extend((1..=p.arity_out() as u32).map(Generator::Target));
    gens.extend((1..=p.internals).map(Generator::Internal));
    let mut candidates: Vec<AcMove> = Vec::new();
    for r in 0..p.relators.len() {
        let len = p.relators[r].len();
        if len > 1 {
            candidates.push(AcMove::Ac4Rotate { relator: r, offset: rng.gen_range(1..len) });
        }
        candidates.push(AcMove::Ac5Invert { relator: r });
        if !gens.is_empty() {
            let gen = gens[rng.gen_range(0..gens.len())];
            let order = if rng.gen_bool(0.5) {
                hopfpres::pres::InsertOrder::GFirst
            } else {
                hopfpres::pres::InsertOrder::InverseFirst
            };
            candidates.push(AcMove::Ac2Insert { relator: r, pos: rng.gen_range(0..=len), gen, order });
        }
        for pos in 0..len.saturating_sub(1) {
            let (a, b) = (p.relators[r].0[pos], p.relators[r].0[pos + 1]);
            if a.gen == b.gen && a.sign != b.sign {
                candidates.push(AcMove::Ac2Cancel { relator: r, pos });
                break;
            }
        }
        for src in 0..p.relators.len() {
            if src != r {
                candidates.push(AcMove::Ac3LeftMultiply { dst: r, src });
            }
        }
    }
    for b in 1..=p.internals {
        candidates.push(AcMove::Ac6FlipInternal { internal: b });
        for r in 0..p.relators.len() {
            if p.relators[r].count(Generator::Internal(b)) == 1 {
                candidates.push(AcMove::Ac7Eliminate { internal: b, relator: r });
            }
        }
    }
    if p.internals < 3 {
        let len = rng.gen_range(0..=2usize);
        let word = Word(
            (0..len)
                .filter_map(|_| {
                    if gens.is_empty() {
                        None
                    } else {
                        let gen = gens[rng.gen_range(0..gens.len())];
                        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
                        Some(Letter::new(gen, sign))
                    }
                })
                .collect(),
        );
        candidates.push(AcMove::Ac1Add { word });
    }
    if candidates.is_empty() {
        return None;
    }
    Some(candidates[rng.gen_range(0..candidates.len())].clone())
}

#[test]
fn criterion_6_ac_invariance_of_evaluation() {
    let groups = builtin_groups();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut mismatches = 0usize;
    let mut checked = 0usize;
    while checked < 200 {
        let p = random_presentation(&mut rng);
        let Some(m) = random_applicable_move(&p, &mut rng) else { continue };
        let Ok(q) = p.apply_move(&m) else { continue };
        checked += 1;
        let tp = omega_bar(&p, &OmegaBarChoices::default()).expect("translates");
        let tq = omega_bar(&q, &OmegaBarChoices::default()).expect("translates");
        for g in &groups {
            let a = eval_term(&tp, g).expect("evaluates");
            let b = eval_term(&tq, g).expect("evaluates");
            if a != b {
                eprintln!("  move {m:?} changed evaluation on {}", g.name);
                mismatches += 1;
            }
        }
    }
    report("6 (AC invariance: 200 random applicable moves, 0 mismatches)", mismatches == 0);
    assert_eq!(mismatches, 0);
}

#[test]
fn criterion_7_oracle_factorization_and_fixtures() {
    let groups = builtin_groups();
    let mut ok = true;
    for (text, p) in CORPUS.iter().zip(corpus()) {
        let term = omega_bar(&p, &OmegaBarChoices::default()).expect("translates");
        for g in &groups {
            let lhs = eval_term(&term, g).expect("evaluates");
            let rhs = hom_oracle(&p, g).expect("oracle runs");
            if lhs != rhs {
                eprintln!("  {text} on {}: functor evaluation != hom oracle", g.name);
                ok = false;
            }
        }
    }

    // the two fixtures, re-derived by direct brute force over the table
    let s3 = builtin_groups().into_iter().find(|g| g.name == "s3").unwrap();
    let mut involutions = 0u32;
    for x in 0..s3.order {
        if s3.mul(x, x) == s3.identity() {
            involutions += 1;
        }
    }
    assert_eq!(involutions, 4, "brute force involution count");
    let mut sq_eq_cube = 0u32;
    for x in 0..s3.order {
        for y in 0..s3.order {
            let x2 = s3.mul(x, x);
            let y3 = s3.mul(s3.mul(y, y), y);
            if x2 == y3 {
                sq_eq_cube += 1;
            }
        }
    }
    assert_eq!(sq_eq_cube, 12, "brute force x^2 = y^3 count");

    let xx = parse_presentation("< ; ; x | x^2 >").unwrap();
    let xxyyy = parse_presentation("< ; ; x, y | x^2 y^-3 >").unwrap();
    ok &= hom_count(&xx, &s3).unwrap() == involutions.into();
    ok &= hom_count(&xxyyy, &s3).unwrap() == sq_eq_cube.into();

    report("7 (oracle factorization on the corpus + brute-force fixtures 4 and 12)", ok);
    assert!(ok);
}

#[test]
fn criterion_8_identity_laws_certified() {
    let mut ok = true;
    for (text, p) in CORPUS.iter().zip(corpus()) {
        let n = p.arity_in();
        let m = p.arity_out();
        let bounds = SearchBounds {
            max_relator_len: 8,
            max_relators: 10,
            max_internal: 6,
            max_ac1_len: 2,
            depth: 2 * (n + m) + 4,
            nodes: 500_000,
        };
        for (label, composite) in [
            ("id ; P", compose_p(&identity_p(n), &p).expect("arities match")),
            ("P ; id", compose_p(&p, &identity_p(m)).expect("arities match")),
        ] {
            match search_equiv(&composite, &p, &bounds).expect("search runs") {
                SearchOutcome::Found(cert) => {
                    assert!(
                        verify_certificate(&composite, &cert, &p).is_valid(),
                        "{text} ({label}): certificate does not replay"
                    );
                }
                other => {
                    eprintln!("  {text} ({label}): expected Found, got {other:?}");
                    ok = false;
                }
            }
        }
    }
    report("8 (identity laws certified for every corpus item, depth <= 2(n+m)+4)", ok);
    assert!(ok);
}

#[test]
fn criterion_9_negative_control_distinguished_fast() {
    let start = Instant::now();
    let outcome = search_equiv(
        &identity_p(1),
        &elementary(GenSym::Ant),
        &SearchBounds::default(),
    )
    .expect("search runs");
    let elapsed = start.elapsed();
    let ok = matches!(&outcome, SearchOutcome::Distinguished { group, .. } if group == "z3")
        && elapsed < Duration::from_secs(1);
    report("9 (identity vs antipode distinguished by z3 in < 1s)", ok);
    match outcome {
        SearchOutcome::Distinguished { group, row, col, lhs, rhs } => {
            assert_eq!(group, "z3");
            assert_ne!(lhs, rhs, "witness entry at ({row},{col}) must differ");
        }
        other => panic!("expected Distinguished, got {other:?}"),
    }
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
}
