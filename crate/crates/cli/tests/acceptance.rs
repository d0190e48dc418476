//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status if
//! any criterion fails.
//!
//! All checks are exact (rational arithmetic, set equality); the only pinned
//! tolerances are the wall-clock budgets below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ultrauniform::{run_with, Context, Document, EXIT_FALSE, EXIT_OK};
use ultrauniform_core::oracle::{
    chain_bound_violation, equivalence_bases, sample, topologies, uniformities, DEFAULT_SEED,
};
use ultrauniform_core::{
    metrize, metrize_chain, Chain, DiagonalBasis, FiniteTopology, Partition, PointSet,
    Pseudometric, PseudometricSystem, Relation, Witness,
};

/// Seed every random stream below is derived from.
const SEED: u64 = DEFAULT_SEED;

const ROUNDTRIP_RANDOM: usize = 1_000;
const NA_RANDOM: usize = 1_000;
const SUP_PAIRS: usize = 10_000;
const MAX_RANDOM_POINTS: usize = 8;
const MAX_GENERATORS: usize = 3;

const BUDGET_ROUNDTRIP: Duration = Duration::from_secs(5);
const BUDGET_NA: Duration = Duration::from_secs(30);
const BUDGET_SUP: Duration = Duration::from_secs(10);
const BUDGET_SEPARATION: Duration = Duration::from_secs(60);
const BUDGET_METRIZATION: Duration = Duration::from_secs(30);
const BUDGET_COUNTEREXAMPLES: Duration = Duration::from_secs(1);
const BUDGET_GENERATORS: Duration = Duration::from_secs(5);

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Tally,
}

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn random_n(r: &mut ChaCha8Rng) -> usize {
    r.gen_range(1..=MAX_RANDOM_POINTS)
}

fn bell(n: usize) -> usize {
    let mut b = vec![1usize];
    for m in 0..n {
        let mut binom = 1;
        let mut next = 0;
        for (k, bk) in b.iter().enumerate() {
            next += binom * bk;
            binom = binom * (m - k) / (k + 1);
        }
        b.push(next);
    }
    b[n]
}

fn strong_triangle(d: &Pseudometric) -> bool {
    let n = d.n();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| d.get(x, y) <= d.get(x, z).max(d.get(z, y)))))
}

fn direct_equivalence(r: &Relation) -> bool {
    let n = r.n();
    (0..n).all(|x| r.contains(x, x))
        && (0..n).all(|x| (0..n).all(|y| r.contains(x, y) == r.contains(y, x)))
        && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !(r.contains(x, y) && r.contains(y, z)) || r.contains(x, z))))
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut stdin: &[u8] = &[];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut ctx = Context {
        stdin: &mut stdin,
        stdout: &mut out,
        stderr: &mut err,
        env_seed: None,
    };
    let code = run_with(std::iter::once("ultrauniform").chain(args.iter().copied()), &mut ctx);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

/// Diagonal → cover → diagonal and cover → diagonal → cover.
fn roundtrip() -> Tally {
    let mut t = Tally::default();
    let exhaustive = uniformities(4).expect("n = 4");
    t.check(exhaustive.len() == 15, || format!("{} uniformities on 4 points", exhaustive.len()));
    for b in &exhaustive {
        let cb = b.cover_basis().expect("valid");
        t.check(b.roundtrip_holds().unwrap_or(false), || format!("diagonal-first {b:?}"));
        t.check(cb.roundtrip_holds().unwrap_or(false), || format!("cover-first {cb:?}"));
    }
    let mut r = rng(1);
    for _ in 0..ROUNDTRIP_RANDOM {
        let n = random_n(&mut r);
        let b = sample::random_valid_basis(&mut r, n);
        t.check(b.roundtrip_holds().unwrap_or(false), || format!("diagonal-first {b:?}"));
        let cover = b.cover_basis().and_then(|cb| cb.roundtrip_holds());
        t.check(cover.unwrap_or(false), || format!("cover of {b:?}"));

        let cb = sample::random_valid_cover_basis(&mut r, n);
        t.check(cb.roundtrip_holds().unwrap_or(false), || format!("cover-first {cb:?}"));
        let diagonal = cb.diagonal_basis().and_then(|b| b.roundtrip_holds());
        t.check(diagonal.unwrap_or(false), || format!("diagonal of {cb:?}"));
    }
    t
}

/// Equivalence bases used by the non-Archimedean and metrization criteria.
fn equivalence_instances() -> Vec<DiagonalBasis> {
    let mut all = Vec::new();
    for n in 1..=4 {
        all.extend(equivalence_bases(n, MAX_GENERATORS).expect("n ≤ 4"));
    }
    let mut r = rng(2);
    for _ in 0..NA_RANDOM {
        let n = random_n(&mut r);
        all.push(sample::random_equivalence_basis(&mut r, n, MAX_GENERATORS));
    }
    all
}

/// Equivalence basis ⇒ ultrametric system ⇒ partition cover basis, and
/// ultrametric systems ⇒ equivalence basis.
fn non_archimedean() -> Tally {
    let mut t = Tally::default();
    let instances = equivalence_instances();
    t.check(instances.len() == 1 + 3 + 25 + 575 + NA_RANDOM, || format!("{} instances", instances.len()));
    let mut r = rng(3);
    for b in &instances {
        let system = PseudometricSystem::from_na_basis(b);
        let a_to_b = system
            .as_ref()
            .map(|s| s.is_non_archimedean() && s.basis().uniformity_equal(b).unwrap_or(false))
            .unwrap_or(false);
        t.check(a_to_b, || format!("A→B {b:?}"));

        let a_to_c = b.cover_basis().and_then(|cb| cb.has_partition_basis());
        t.check(a_to_c.unwrap_or(false), || format!("A→C {b:?}"));

        if let Ok(s) = &system {
            t.check(s.basis().is_non_archimedean().unwrap_or(false), || format!("B→A derived {b:?}"));
        }
        let n = b.n();
        let generated = PseudometricSystem::new(
            n,
            [sample::random_na_pseudometric(&mut r, n), sample::random_na_pseudometric(&mut r, n)],
        )
        .expect("shared carrier");
        let induced = generated.basis();
        let b_to_a = induced.is_non_archimedean().unwrap_or(false)
            && induced
                .non_archimedean_witness()
                .ok()
                .flatten()
                .is_some_and(|w| w.entourages().iter().all(direct_equivalence) && w.uniformity_equal(&induced).unwrap_or(false));
        t.check(b_to_a, || format!("B→A random {generated:?}"));
    }
    t
}

/// Sup of ultrametrics is an ultrametric; ultrametric balls are equivalences.
fn sup_and_balls() -> Tally {
    let mut t = Tally::default();
    let mut r = rng(4);
    for _ in 0..SUP_PAIRS {
        let n = random_n(&mut r);
        let d = sample::random_na_pseudometric(&mut r, n);
        let e = sample::random_na_pseudometric(&mut r, n);
        t.check(strong_triangle(&d) && strong_triangle(&e), || format!("generator {d:?} {e:?}"));
        let s = Pseudometric::sup(&[d.clone(), e.clone()]).expect("shared carrier");
        t.check(s.is_non_archimedean() && strong_triangle(&s), || format!("sup of {d:?} and {e:?}"));
        for m in [&d, &e, &s] {
            for ball in m.ball_relations() {
                t.check(ball.is_equivalence() && direct_equivalence(&ball), || format!("ball {ball:?} of {m:?}"));
            }
        }
    }
    t
}

/// T_A, zero-dimensionality and NA-uniformizability agree on every labeled
/// topology up to 4 points, and hold exactly on the partition topologies.
fn separation() -> Tally {
    let mut t = Tally::default();
    for (n, count) in [(1, 1), (2, 4), (3, 29), (4, 355)] {
        let all = topologies(n).expect("n ≤ 4");
        t.check(all.len() == count, || format!("{} topologies on {n} points", all.len()));
        let mut satisfying = 0;
        for top in &all {
            let verdicts = (
                top.satisfies_ta().unwrap_or(false),
                top.is_zero_dimensional().unwrap_or(false),
                top.is_uniformizable_na().unwrap_or(false),
            );
            let agree = verdicts.0 == verdicts.1 && verdicts.1 == verdicts.2;
            t.check(agree, || format!("{verdicts:?} on {:?}", top.opens()));
            if verdicts.0 && agree {
                satisfying += 1;
                let classes = Partition::from_blocks(n, minimal_opens(top)).map(|p| FiniteTopology::from_partition(&p));
                t.check(matches!(classes, Ok(Ok(ref p)) if p == top), || format!("{:?} is not a partition topology", top.opens()));
            }
        }
        t.check(satisfying == bell(n), || format!("{satisfying} satisfying on {n} points, Bell = {}", bell(n)));
    }
    t
}

/// Minimal nonempty open sets.
fn minimal_opens(t: &FiniteTopology) -> Vec<PointSet> {
    let nonempty: Vec<PointSet> = t.opens().iter().copied().filter(|o| !o.is_empty()).collect();
    nonempty
        .iter()
        .copied()
        .filter(|o| !nonempty.iter().any(|p| p != o && p.is_subset(*o)))
        .collect()
}

/// One ultrametric per equivalence basis, inducing the same uniformity, and
/// the pointwise chain bounds.
fn metrization() -> Tally {
    let mut t = Tally::default();
    for b in equivalence_instances() {
        let Ok(d) = metrize(b.entourages()) else {
            t.check(false, || format!("metrize failed on {b:?}"));
            continue;
        };
        t.check(d.is_non_archimedean() && strong_triangle(&d), || format!("metrize {b:?} is not an ultrametric"));
        let induced = PseudometricSystem::single(d).basis();
        t.check(induced.uniformity_equal(&b).unwrap_or(false), || format!("metrize {b:?} changes the uniformity"));

        let mut chains: Vec<Chain> = b
            .entourages()
            .iter()
            .map(|e| Chain::constant(e.clone()).expect("equivalence"))
            .collect();
        chains.push(metrize_chain(b.entourages()).expect("equivalences"));
        let violation = chain_bound_violation(&chains);
        t.check(violation.is_none(), || format!("{violation:?} on {b:?}"));
    }
    t
}

const SIERPINSKI: &str = r#"{"n":2,"opens":[[],[1],[0,1]]}"#;
const CHAIN3: &str = r#"{"n":3,"opens":[[],[0],[0,1],[0,1,2]]}"#;
const PATH3: &str = r#"{"n":3,"entourages":[{"n":3,"pairs":[[0,0],[0,1],[1,0],[1,1],[1,2],[2,1],[2,2]]}]}"#;
const ALL_FALSE: &str = "{\"T_A\":false,\"zero_dim\":false,\"uniformizable\":false}\n";
const PATH3_REPORT: &str = "{\"valid\":false,\"violations\":[{\"axiom\":\"half-composition\",\"witness\":{\"entourage\":0,\"relation\":{\"n\":3,\"pairs\":[[0,0],[0,1],[1,0],[1,1],[1,2],[2,1],[2,2]]}}}]}\n";

fn topology(text: &str) -> FiniteTopology {
    match Document::from_json(text) {
        Ok(Document::Topology(t)) => t,
        other => panic!("fixture is not a topology: {other:?}"),
    }
}

/// Non-partition topologies fail all three conditions; the path relation is
/// rejected with a half-composition witness.
fn counterexamples() -> Tally {
    let mut t = Tally::default();
    let set = |points: &[usize]| points.iter().copied().collect::<PointSet>();
    for (text, closed, point) in [(SIERPINSKI, set(&[0]), 1), (CHAIN3, set(&[1, 2]), 0)] {
        let top = topology(text);
        let cx = top.ta_counterexample().ok().flatten();
        t.check(cx.is_some_and(|c| c.closed == closed && c.point == point), || format!("T_A counterexample {cx:?}"));
        t.check(top.clopen_sets().ok() == Some(vec![PointSet::EMPTY, PointSet::full(top.n())]), || "clopens".into());
        t.check(top.is_zero_dimensional().ok() == Some(false), || "zero-dimensional".into());
        t.check(top.na_uniformization().ok() == Some(None), || "uniformizable".into());
        let output = cli(&["topo-check", "--in", text]);
        t.check(output == (EXIT_FALSE, ALL_FALSE.to_string()), || format!("topo-check {output:?}"));
    }

    let Ok(Document::Diagonal(b)) = Document::from_json(PATH3) else {
        t.check(false, || "path fixture".into());
        return t;
    };
    let report = b.validate();
    let expected = Witness::Entourage { index: 0, relation: b.entourages()[0].clone() };
    t.check(
        report.violations.len() == 1
            && report.violations[0].axiom == "half-composition"
            && report.violations[0].witness == expected,
        || format!("{report:?}"),
    );
    let output = cli(&["validate", "--in", PATH3]);
    t.check(output == (EXIT_FALSE, PATH3_REPORT.to_string()), || format!("validate {output:?}"));
    t
}

/// Ball relations of p-adic distance on {0..s-1}: congruences mod p^k
/// restricted to the carrier, k = 0 up to the first power ≥ s.
fn padic_ball_oracle(p: usize, size: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    let mut m = 1;
    loop {
        out.push(Relation::from_fn(size, |x, y| x.abs_diff(y) % m == 0));
        if m >= size {
            break;
        }
        m *= p;
    }
    out.dedup();
    out
}

/// Exponents `k` with `d(x,y) = p^-k`, provided every entry is the p-adic
/// distance of `|x - y|` and the exponents satisfy `k(x,y) ≥ min(k(x,z), k(z,y))`.
fn padic_exponents(d: &Pseudometric, p: usize) -> Option<Vec<u32>> {
    let n = d.n();
    let valuation = |mut m: usize| {
        let mut k = 0;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        k
    };
    let mut k = vec![u32::MAX; n * n];
    for x in 0..n {
        for y in 0..n {
            let v = d.get(x, y);
            if x == y {
                if *v.numer() != 0 {
                    return None;
                }
                continue;
            }
            let e = valuation(x.abs_diff(y));
            if *v.numer() != 1 || *v.denom() != (p as i64).pow(e) {
                return None;
            }
            k[x * n + y] = e;
        }
    }
    let ok = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| k[x * n + y] >= k[x * n + z].min(k[z * n + y]))));
    ok.then_some(k)
}

fn sorted(mut v: Vec<Relation>) -> Vec<Relation> {
    v.sort_by_key(|r| std::cmp::Reverse(r.len()));
    v
}

/// `gen padic` is an ultrametric whose basis matches `gen ideal-chain`.
fn generators() -> Tally {
    let mut t = Tally::default();
    for p in [2usize, 3, 5] {
        for size in 1..=64usize {
            let (code, text) = cli(&["gen", "padic", "--p", &p.to_string(), "--size", &size.to_string()]);
            let Ok(Document::Metric(d)) = Document::from_json(&text) else {
                t.check(false, || format!("gen padic p={p} size={size} exited {code}"));
                continue;
            };
            t.check(code == EXIT_OK && padic_exponents(&d, p).is_some(), || format!("p={p} size={size} is not the p-adic metric"));
            let (code, check) = cli(&["check-na", "--in", &text]);
            t.check(code == EXIT_OK && check.starts_with("{\"non_archimedean\":true"), || format!("check-na p={p} size={size}"));

            let basis = PseudometricSystem::single(d).basis();
            t.check(
                sorted(basis.entourages().to_vec()) == sorted(padic_ball_oracle(p, size)),
                || format!("ball basis p={p} size={size}"),
            );

            let depth = (0..).find(|&j| p.pow(j) >= size).expect("finite");
            if p.pow(depth) == size {
                let args = ["gen", "ideal-chain", "--modulus", &size.to_string(), "--ideal", &p.to_string(), "--depth", &depth.to_string()];
                let (code, text) = cli(&args);
                let matches = match Document::from_json(&text) {
                    Ok(Document::Diagonal(chain)) => {
                        code == EXIT_OK
                            && chain.uniformity_equal(&basis).unwrap_or(false)
                            && sorted(chain.entourages().to_vec()) == sorted(basis.entourages().to_vec())
                    }
                    _ => false,
                };
                t.check(matches, || format!("ideal chain p={p} size={size} depth={depth}"));
            }
        }
    }
    t
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, title: "diagonal/cover round trip", budget: BUDGET_ROUNDTRIP, run: roundtrip },
        Criterion { id: 2, title: "equivalence basis <=> ultrametric system <=> partition basis", budget: BUDGET_NA, run: non_archimedean },
        Criterion { id: 3, title: "sup of ultrametrics, ultrametric balls", budget: BUDGET_SUP, run: sup_and_balls },
        Criterion { id: 4, title: "T_A <=> zero-dimensional <=> NA-uniformizable", budget: BUDGET_SEPARATION, run: separation },
        Criterion { id: 5, title: "single-ultrametric metrization and chain bounds", budget: BUDGET_METRIZATION, run: metrization },
        Criterion { id: 6, title: "counterexample suite", budget: BUDGET_COUNTEREXAMPLES, run: counterexamples },
        Criterion { id: 7, title: "p-adic and ideal-chain generators", budget: BUDGET_GENERATORS, run: generators },
    ];
    let mut passed = 0;
    for c in &criteria {
        let start = Instant::now();
        let tally = (c.run)();
        let elapsed = start.elapsed();
        let ok = tally.failures.is_empty() && elapsed <= c.budget;
        passed += ok as usize;
        println!(
            "[{}] criterion {}: {} | checks={} failures={} | {:.3}s / {}s",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            tally.checked,
            tally.failures.len(),
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
        );
        for f in tally.failures.iter().take(3) {
            println!("    {f}");
        }
    }
    println!("{passed}/{} criteria passed", criteria.len());
    if passed == criteria.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
