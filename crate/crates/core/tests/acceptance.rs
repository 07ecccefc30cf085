//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Run with `cargo test -p ulp-core --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ulp_core::encoding::compare_runs_and_models;
use ulp_core::grounder::naive_size_bounds;
use ulp_core::{
    build_edb, check_domain_restricted, enumerate_stable_models, enumerate_supported_models,
    enumerate_supported_models_bruteforce, enumerate_valid_runs, ground_program, is_antichain, is_stable, is_supported,
    naive_ground_live, p_trg, parse_machine, parse_program, relational_ground, Direction, EdbSplit, EncodingInstance,
    GroundAtom, GroundProgram, GroundProgramBuilder, Interpretation, Machine, ModelSet, Run, RuntimePolynomial,
    SolveLimits, SymbolId,
};

/// Seed for the random machines and programs.
const SEED: u64 = 0x5EED_2024;
/// Random machines in the bijection suite.
const RANDOM_MACHINES: usize = 15;
/// Probability that a random instruction enters the final state.
const FINAL_BIAS: f64 = 0.3;
/// Wall-clock budget for the bijection suite.
const BIJECTION_BUDGET: Duration = Duration::from_secs(120);
/// Random ground programs compared against brute force.
const RANDOM_PROGRAMS: usize = 200;
const MAX_ATOMS: usize = 14;
const MAX_CLAUSES: usize = 25;
/// Decision budget for the targeted supported-model search.
const SUPPORTED_DECISIONS: u64 = 100_000;
/// Pinned constant of the quadratic edb size bound.
const EDB_BOUND_C: f64 = 2.0;
const EDB_GRID: [u64; 4] = [2, 4, 8, 16];

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(id: usize, name: &str, o: &Outcome) {
    let tag = if o.pass { "PASS" } else { "FAIL" };
    println!("{tag} criterion {id}: {name}: {}", o.detail);
}

/// A machine instance of the bijection suite with everything computed for it.
struct Instance {
    name: String,
    inst: EncodingInstance,
    runs: Vec<Run>,
    pg: GroundProgram,
    models: ModelSet,
}

const HAND_WRITTEN: [(&str, &str); 6] = [
    ("deterministic", "states: s0 f\nstart: s0\nfinal: f\nalphabet: 1\ndelta: s0 B -> f B lambda\npoly: 2\n"),
    (
        "bit flipper",
        "states: s0 f\nstart: s0\nfinal: f\nalphabet: 0 1\n\
         delta: s0 0 -> s0 1 r\ndelta: s0 1 -> s0 0 r\ndelta: s0 B -> f B lambda\n\
         poly: 1 1\ninput: 0 1 1\n",
    ),
    (
        "two binary choices",
        "states: s0 q f\nstart: s0\nfinal: f\nalphabet: 0 1\n\
         delta: s0 B -> q 0 r\ndelta: s0 B -> q 1 r\ndelta: q B -> f 0 lambda\ndelta: q B -> f 1 lambda\n\
         poly: 3\n",
    ),
    (
        "rejecting",
        "states: s0 q f\nstart: s0\nfinal: f\nalphabet: 1\n\
         delta: s0 B -> q 1 r\ndelta: q B -> q B l\ndelta: q 1 -> s0 B r\npoly: 4\n",
    ),
    (
        "boundary hugging",
        "states: s0 back f\nstart: s0\nfinal: f\nalphabet: 1\n\
         delta: s0 1 -> s0 1 r\ndelta: s0 1 -> f 1 l\ndelta: s0 B -> s0 B r\ndelta: s0 B -> back B l\n\
         delta: back 1 -> f 1 lambda\ndelta: back B -> f B l\n\
         poly: 3\ninput: 1 1\n",
    ),
    (
        "guess and return",
        "states: s0 w back f\nstart: s0\nfinal: f\nalphabet: 1\n\
         delta: s0 B -> w 1 r\ndelta: s0 B -> w B r\ndelta: w B -> back 1 l\ndelta: w B -> back B l\n\
         delta: back 1 -> f 1 lambda\ndelta: back B -> f 1 lambda\n\
         poly: 4\n",
    ),
];

fn random_machine(rng: &mut ChaCha8Rng) -> (Machine, RuntimePolynomial, Vec<SymbolId>) {
    let nq = rng.gen_range(2..=4);
    let mut states = vec!["s0".to_string()];
    states.extend((1..nq - 1).map(|i| format!("q{i}")));
    states.push("f".to_string());
    let sigma: Vec<String> = ["0", "1"][..rng.gen_range(1..=2)].iter().map(|s| s.to_string()).collect();
    let mut m = Machine::new(states, sigma, "B", "s0", "f").unwrap();
    let gamma: Vec<SymbolId> = m.tape_alphabet().collect();
    let all_states: Vec<_> = m.states().collect();
    for &q in &all_states {
        if q == m.final_state() {
            continue;
        }
        for &a in &gamma {
            for _ in 0..rng.gen_range(1..=2) {
                let next = if rng.gen_bool(FINAL_BIAS) {
                    m.final_state()
                } else {
                    all_states[rng.gen_range(0..all_states.len())]
                };
                let i = ulp_core::Instruction {
                    state: q,
                    read: a,
                    next,
                    write: gamma[rng.gen_range(0..gamma.len())],
                    dir: Direction::ALL[rng.gen_range(0..3)],
                };
                m.add_instruction(i).unwrap();
            }
        }
    }
    let n = rng.gen_range(0..=3usize);
    let input: Vec<SymbolId> =
        (0..n).map(|_| m.input_alphabet().nth(rng.gen_range(0..gamma.len() - 1)).unwrap()).collect();
    let lo = n.max(1) as u64;
    let poly = if rng.gen_bool(0.5) {
        RuntimePolynomial::constant(rng.gen_range(lo..=6))
    } else {
        // p(n) = c + n, kept within [max(n,1), 6].
        let c = rng.gen_range(lo.saturating_sub(n as u64)..=6 - n as u64);
        RuntimePolynomial::new(vec![c, 1]).unwrap()
    };
    (m, poly, input)
}

fn build_instance(name: String, m: &Machine, poly: &RuntimePolynomial, input: &[SymbolId]) -> Instance {
    let inst = build_edb(m, poly, input).expect("instance builds");
    let runs = enumerate_valid_runs(inst.machine(), poly, input, 12).expect("oracle runs");
    let pg = inst.ground().expect("grounds");
    let models = enumerate_stable_models(&pg, SolveLimits::unlimited());
    Instance { name, inst, runs, pg, models }
}

fn criterion_1(instances: &[Instance], elapsed: Duration) -> Outcome {
    let mut failures = Vec::new();
    for i in instances {
        let r = compare_runs_and_models(&i.inst, &i.runs, &i.pg, &i.models);
        if !r.bijection {
            failures.push(format!("{}: {}", i.name, r.counterexample.unwrap_or_default()));
        }
    }
    let hand = instances.iter().filter(|i| !i.name.starts_with("random")).count();
    let total_runs: usize = instances.iter().map(|i| i.runs.len()).sum();
    let pass = failures.is_empty() && hand >= 5 && instances.len() >= 20 && elapsed < BIJECTION_BUDGET;
    let mut detail = format!(
        "{} machines ({} hand-written), {} runs in total, {:.1}s of {}s budget",
        instances.len(),
        hand,
        total_runs,
        elapsed.as_secs_f64(),
        BIJECTION_BUDGET.as_secs()
    );
    for f in failures {
        detail.push_str(&format!("\n    {f}"));
    }
    Outcome { pass, detail }
}

fn criterion_2(instances: &[Instance]) -> Outcome {
    let find = |n: &str| instances.iter().find(|i| i.name == n).unwrap();
    let rejecting = find("rejecting");
    let deterministic = find("deterministic");
    let pass = rejecting.runs.is_empty()
        && rejecting.models.is_empty()
        && rejecting.models.complete
        && deterministic.runs.len() == 1
        && deterministic.models.len() == 1
        && deterministic.models.complete;
    Outcome {
        pass,
        detail: format!(
            "rejecting machine: {} models; deterministic machine: {} model(s)",
            rejecting.models.len(),
            deterministic.models.len()
        ),
    }
}

fn random_program(rng: &mut ChaCha8Rng) -> GroundProgram {
    let n = rng.gen_range(1..=MAX_ATOMS);
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut b = GroundProgramBuilder::new();
    for name in &names {
        b.intern(GroundAtom::new(name, []));
    }
    let pick = |rng: &mut ChaCha8Rng| GroundAtom::new(&names[rng.gen_range(0..n)], []);
    for _ in 0..rng.gen_range(0..=MAX_CLAUSES) {
        let head = pick(rng);
        let pos: Vec<_> = (0..rng.gen_range(0..=2)).map(|_| pick(rng)).collect();
        let neg: Vec<_> = (0..rng.gen_range(0..=2)).map(|_| pick(rng)).collect();
        b.add(head, pos, neg);
    }
    b.build()
}

fn brute_force_stable(pg: &GroundProgram) -> BTreeSet<Interpretation> {
    let n = pg.atom_count();
    (0u32..1 << n)
        .map(|mask| Interpretation::from_ids((0..n as u32).filter(|i| mask >> i & 1 == 1).map(ulp_core::AtomId)))
        .filter(|m| is_stable(pg, m))
        .collect()
}

fn criterion_3(rng: &mut ChaCha8Rng, complete_sets: &mut Vec<ModelSet>) -> Outcome {
    let mut mismatches = 0;
    let mut with_models = 0;
    for _ in 0..RANDOM_PROGRAMS {
        let pg = random_program(rng);
        let found = enumerate_stable_models(&pg, SolveLimits::unlimited());
        let got: BTreeSet<Interpretation> = found.models.iter().cloned().collect();
        if !found.complete || got.len() != found.len() || got != brute_force_stable(&pg) {
            mismatches += 1;
        }
        with_models += usize::from(!got.is_empty());
        complete_sets.push(found);
    }
    Outcome {
        pass: mismatches == 0,
        detail: format!("{RANDOM_PROGRAMS} programs ({with_models} with models), {mismatches} mismatches"),
    }
}

fn criterion_4(complete_sets: &mut Vec<ModelSet>) -> Outcome {
    let solve = |text: &str| {
        let pg = relational_ground_text(text);
        let stable = enumerate_stable_models(&pg, SolveLimits::unlimited());
        let supported = enumerate_supported_models_bruteforce(&pg).unwrap();
        let show = |ms: &ModelSet| -> BTreeSet<Vec<String>> {
            ms.models.iter().map(|m| pg.to_symbolic(m).iter().map(|a| a.to_string()).collect()).collect()
        };
        (show(&stable), show(&supported), stable)
    };
    let set = |v: &[&[&str]]| -> BTreeSet<Vec<String>> {
        v.iter().map(|m| m.iter().map(|s| s.to_string()).collect()).collect()
    };
    let (even, _, s1) = solve("a :- not b.\nb :- not a.\n");
    let (odd, _, s2) = solve("a :- not a.\n");
    let (loop_stable, loop_supported, s3) = solve("a :- a.\n");
    let pass = even == set(&[&["a"], &["b"]])
        && odd.is_empty()
        && loop_stable == set(&[&[]])
        && loop_supported == set(&[&[], &["a"]])
        && s1.complete
        && s2.complete
        && s3.complete;
    complete_sets.extend([s1, s2, s3]);
    Outcome {
        pass,
        detail: format!(
            "even loop {:?}, odd loop {:?}, positive loop stable {:?} supported {:?}",
            even, odd, loop_stable, loop_supported
        ),
    }
}

fn relational_ground_text(text: &str) -> GroundProgram {
    let p = parse_program(text).unwrap();
    relational_ground(&p, &EdbSplit::auto(&p)).unwrap()
}

fn criterion_5(instances: &[Instance]) -> Outcome {
    let checked: usize = instances.iter().map(|i| i.models.len()).sum();
    let unsupported: usize =
        instances.iter().map(|i| i.models.models.iter().filter(|m| !is_supported(&i.pg, m)).count()).sum();
    let mut searched = Vec::new();
    let mut ok = unsupported == 0;
    for name in ["deterministic", "two binary choices", "rejecting"] {
        let i = instances.iter().find(|i| i.name == name).unwrap();
        let supported =
            enumerate_supported_models(&i.pg, SolveLimits::unlimited().with_max_decisions(SUPPORTED_DECISIONS));
        let all_stable = supported.models.iter().all(|m| is_stable(&i.pg, m));
        let same = supported.sorted() == i.models.sorted();
        ok &= supported.complete && all_stable && same;
        searched.push(format!(
            "{name}: {} supported / {} stable{}",
            supported.len(),
            i.models.len(),
            if supported.complete { "" } else { " (incomplete)" }
        ));
    }
    Outcome {
        pass: ok,
        detail: format!(
            "{checked} stable models checked, {unsupported} unsupported; targeted search: {}",
            searched.join(", ")
        ),
    }
}

fn criterion_6(instances: &[Instance], others: &[ModelSet]) -> Outcome {
    let sets: Vec<&ModelSet> = instances.iter().map(|i| &i.models).chain(others).collect();
    let bad = sets.iter().filter(|s| !s.complete || !is_antichain(s)).count();
    Outcome { pass: bad == 0, detail: format!("{} complete model sets, {bad} violations", sets.len()) }
}

fn criterion_7() -> Outcome {
    let spec = parse_machine(HAND_WRITTEN[2].1).unwrap();
    let m = spec.machine.normalize();
    let input = &spec.input;
    let mut worst: f64 = 0.0;
    let mut rows = Vec::new();
    for p in EDB_GRID {
        let inst = build_edb(&m, &RuntimePolynomial::constant(p), input).unwrap();
        let count = inst.edb().len() as f64;
        let size = (m.size() + input.len() + p as usize + 3) as f64;
        let ratio = count / (size * size);
        worst = worst.max(ratio);
        rows.push(format!("p={p}: {count} facts, ratio {ratio:.3}"));
    }
    Outcome {
        pass: worst <= EDB_BOUND_C,
        detail: format!("c = {EDB_BOUND_C} (max observed {worst:.3}); {}", rows.join("; ")),
    }
}

fn criterion_8(instances: &[Instance]) -> Outcome {
    let reference = p_trg().text();
    let mut identical = true;
    let mut restricted = true;
    for i in instances {
        let program = i.inst.program();
        let edb: BTreeSet<&GroundAtom> = i.inst.edb().iter().collect();
        let rules: String = program
            .clauses()
            .filter(|c| !(c.is_fact() && c.head.to_ground().is_some_and(|g| edb.contains(&g))))
            .map(|c| format!("{c}\n"))
            .collect();
        identical &= rules == reference;
        restricted &= check_domain_restricted(&program, &EdbSplit::auto(&program));
    }
    Outcome {
        pass: identical && restricted,
        detail: format!(
            "{} instances, transition program {} and {}",
            instances.len(),
            if identical { "byte-identical" } else { "differs" },
            if restricted { "domain-restricted" } else { "not domain-restricted" }
        ),
    }
}

fn symbolic(pg: &GroundProgram, ms: &ModelSet) -> BTreeSet<BTreeSet<GroundAtom>> {
    ms.models.iter().map(|m| pg.to_symbolic(m)).collect()
}

fn criterion_9(instances: &[Instance]) -> Outcome {
    let mut problems = Vec::new();
    // Small programs where the full naive grounding is feasible: all three
    // groundings must agree.
    let small = [
        "e(a,b). e(b,c). e(c,a).\nr(X,Y) :- e(X,Y), not s(X,Y).\ns(X,Y) :- e(X,Y), not r(X,Y).\n",
        "d(1). d(2). d(3).\nin(X) :- d(X), not out(X).\nout(X) :- d(X), not in(X).\nbad :- d(X), d(Y), in(X), in(Y), e(X,Y), not bad.\ne(1,2). e(2,3).\n",
        "n(0). n(1). succ(0,1).\np(X) :- n(X), not q(X).\nq(Y) :- n(X), n(Y), succ(X,Y), p(X).\n",
    ];
    for text in small {
        let p = parse_program(text).unwrap();
        let naive = ground_program(&p);
        let live = naive_ground_live(&p);
        let rel = relational_ground(&p, &EdbSplit::auto(&p)).unwrap();
        let solve = |g: &GroundProgram| symbolic(g, &enumerate_stable_models(g, SolveLimits::unlimited()));
        if solve(&naive) != solve(&rel) || solve(&live) != solve(&rel) || rel.len() > naive.len() {
            problems.push(format!("small program disagrees:\n{text}"));
        }
    }
    let mut largest_ratio: f64 = 0.0;
    for i in instances {
        let program = i.inst.program();
        let live = naive_ground_live(&program);
        let live_models = enumerate_stable_models(&live, SolveLimits::unlimited());
        if !live_models.complete || symbolic(&live, &live_models) != symbolic(&i.pg, &i.models) {
            problems.push(format!("{}: stable models differ", i.name));
        }
        let (naive_lower, _) = naive_size_bounds(&program);
        if i.pg.len() > live.len() || i.pg.len() as u128 > naive_lower {
            problems.push(format!("{}: relational grounding is larger", i.name));
        }
        largest_ratio = largest_ratio.max(i.pg.len() as f64 / naive_lower as f64);
    }
    Outcome {
        pass: problems.is_empty(),
        detail: format!(
            "{} small programs and {} instances; relational/naive size at most {:.2e}{}",
            small.len(),
            instances.len(),
            largest_ratio,
            problems.iter().map(|p| format!("\n    {p}")).collect::<String>()
        ),
    }
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    let started = Instant::now();
    let mut instances = Vec::new();
    for (name, text) in HAND_WRITTEN {
        let spec = parse_machine(text).unwrap();
        instances.push(build_instance(name.to_string(), &spec.machine, &spec.poly, &spec.input));
    }
    for k in 0..RANDOM_MACHINES {
        let (m, poly, input) = random_machine(&mut rng);
        instances.push(build_instance(format!("random {}", k + 1), &m, &poly, &input));
    }
    let c1 = criterion_1(&instances, started.elapsed());

    let mut others = Vec::new();
    let outcomes = [
        ("bijection between valid runs and stable models", c1),
        ("rejecting and deterministic machines", criterion_2(&instances)),
        ("solver against brute force", criterion_3(&mut rng, &mut others)),
        ("classic programs", criterion_4(&mut others)),
        ("stable models of encodings are supported", criterion_5(&instances)),
        ("antichain", criterion_6(&instances, &others)),
        ("edb size bound", criterion_7()),
        ("uniform transition program", criterion_8(&instances)),
        ("grounding equivalence", criterion_9(&instances)),
    ];
    let mut failed = 0;
    for (k, (name, o)) in outcomes.iter().enumerate() {
        report(k + 1, name, o);
        failed += usize::from(!o.pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
