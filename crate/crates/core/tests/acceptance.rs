//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use autoperm::automaton::{
    equivalent, minimize, parse_automaton, serialize_automaton, ComparisonAutomaton,
};
use autoperm::compiler::{compile, compile_with, state_bound, CompileOptions};
use autoperm::fixtures::{self, KNotA};
use autoperm::kernel::{kernel_exact, kernel_window};
use autoperm::perm::{FnOracle, Increasing};
use autoperm::validity::{check_antisymmetry, is_permutation};
use autoperm::words::{
    parse_morphism, relabel_prefix, serialize_morphism, suffix_compare, valid_permutation_oracle,
    word_automaton_from_morphism, Coding, PrefixWord, RelationSequence, Squares, ThresholdWord,
    UltimatelyPeriodic, UniformMorphism,
};
use autoperm::{rank_window, Error, OracleMode, PermutationOracle, Radix, Relation};
use common::{pd_letter, tm_letter, tm_relation, window_verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Pinned sizes and tolerances. Every comparison below is exact.
const TM_RANKS_N4: [usize; 4] = [2, 4, 3, 1];
const EXHAUSTIVE_WINDOW: u64 = 128;
const AGREEMENT_BOUND: u64 = 512;
const SUFFIX_DEPTH: usize = 1024;
const WORD_PREFIX: usize = 4096;
const TM_FACTOR_COUNT: usize = 4;
const TM_KERNEL_CLASSES: usize = 2;
const PATTERN_SIZE: usize = 16;
const PATTERN_LEVELS: u32 = 6;
const K_NOT_A_PATTERNS: usize = 2;
const RELATION_BOUND: u64 = 1024;
const MONOTONE_WINDOW: usize = 64;
const COBHAM_BOUND: u64 = 4096;
const RELABEL_WINDOW: usize = 64;
const MUTATIONS: usize = 100;
const MUTATION_WINDOW: u64 = 64;
const MUTATION_SEED: u64 = 0x5eed_0001;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
type MorphismCase = (
    &'static str,
    fn() -> (UniformMorphism, Coding),
    fn(u64) -> u32,
);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c1_thue_morse_order() -> Outcome {
    let tm = fixtures::thue_morse_automaton();
    let ranks = rank_window(&tm.as_oracle(OracleMode::Checked).map_err(err)?, 4).map_err(err)?;
    ensure!(ranks.ranks() == TM_RANKS_N4, "ranks {ranks}");
    use Relation::{Gt, Lt};
    let expected = [
        ((0, 1), Lt),
        ((0, 2), Lt),
        ((0, 3), Gt),
        ((1, 2), Gt),
        ((1, 3), Gt),
        ((2, 3), Gt),
    ];
    for ((i, j), r) in expected {
        ensure!(tm.compare(i, j) == r, "γ_{i}{j} = {}", tm.compare(i, j));
    }
    Ok(format!("ranks {ranks}"))
}

fn c2_validity_procedure() -> Outcome {
    let tm = fixtures::thue_morse_automaton();
    let good = is_permutation(&tm).is_permutation();
    ensure!(good, "fixture rejected");
    let q = tm.state_named("0<1").ok_or("no state 0<1")?;
    let flipped = tm.with_output(q, tm.output(q).flip());
    let cex = check_antisymmetry(&flipped)
        .err()
        .ok_or("flip not detected")?;
    ensure!(cex.indices() == Some((0, 1)), "counterexample {cex}");
    let bad = is_permutation(&flipped).is_permutation();
    ensure!(!bad, "flipped machine accepted");
    let window_good = window_verdict(&tm, EXHAUSTIVE_WINDOW);
    let window_bad = window_verdict(&flipped, EXHAUSTIVE_WINDOW);
    ensure!(window_good == good, "exhaustive check disagrees on fixture");
    ensure!(
        window_bad == bad,
        "exhaustive check disagrees on flipped machine"
    );
    Ok(format!("flipped: {cex}"))
}

fn c3_compiler_agreement() -> Outcome {
    let (m, c) = fixtures::thue_morse_morphism();
    let comp = compile_with(&m, &c, CompileOptions::default()).map_err(err)?;
    let tm = fixtures::thue_morse_automaton();
    for i in 0..AGREEMENT_BOUND {
        for j in 0..AGREEMENT_BOUND {
            let (got, want) = (comp.machine.compare(i, j), tm.compare(i, j));
            ensure!(got == want, "({i},{j}): compiled {got}, fixture {want}");
            ensure!(
                want == tm_relation(i, j),
                "({i},{j}): fixture disagrees with digit sums"
            );
        }
    }
    ensure!(
        equivalent(&minimize(&comp.machine), &minimize(&tm))
            .map_err(err)?
            .holds(),
        "minimized machines differ"
    );
    ensure!(
        comp.factors.len() == TM_FACTOR_COUNT,
        "p = {}",
        comp.factors.len()
    );
    let bound = state_bound(TM_FACTOR_COUNT).ok_or("bound overflow")?;
    let states = comp.states.len() as u128;
    ensure!(states <= bound, "{states} states exceed {bound}");
    Ok(format!(
        "{states} reachable states, bound (p²+1)! = {bound}, minimized {}",
        minimize(&comp.machine).state_count()
    ))
}

fn c4_suffix_soundness() -> Outcome {
    let mut report = Vec::new();
    let cases: [MorphismCase; 2] = [
        ("thue-morse", fixtures::thue_morse_morphism, tm_letter),
        (
            "period-doubling",
            fixtures::period_doubling_morphism,
            pd_letter,
        ),
    ];
    for (name, build, closed_form) in cases {
        let (m, c) = build();
        let prefix: Vec<u32> = m
            .fixed_point_prefix(WORD_PREFIX)
            .into_iter()
            .map(|x| c.apply(x))
            .collect();
        for (n, &x) in prefix.iter().enumerate() {
            ensure!(x == closed_form(n as u64), "{name}: letter {n} is {x}");
        }
        let oracle = valid_permutation_oracle(PrefixWord(prefix), c.alphabet_size(), SUFFIX_DEPTH)
            .map_err(err)?;
        let machine = compile(&m, &c).map_err(err)?;
        for i in 0..AGREEMENT_BOUND {
            for j in 0..AGREEMENT_BOUND {
                let want = oracle.compare(i, j).map_err(err)?;
                let got = machine.compare(i, j);
                ensure!(
                    got == want,
                    "{name} ({i},{j}): compiled {got}, suffixes {want}"
                );
            }
        }
        report.push(format!("{name} {} states", machine.state_count()));
    }
    Ok(report.join(", "))
}

fn c5_exact_kernel() -> Outcome {
    let tm = fixtures::thue_morse_automaton();
    let fixture = kernel_exact(&tm).map_err(err)?;
    let (m, c) = fixtures::thue_morse_morphism();
    let compiled = kernel_exact(&compile(&m, &c).map_err(err)?).map_err(err)?;
    ensure!(
        fixture.class_count() == TM_KERNEL_CLASSES,
        "fixture: {}",
        fixture.class_count()
    );
    ensure!(
        compiled.class_count() == TM_KERNEL_CLASSES,
        "compiled: {}",
        compiled.class_count()
    );
    Ok(format!(
        "classes {} and {}",
        fixture.class_count(),
        compiled.class_count()
    ))
}

fn c6_k_not_a_witness() -> Outcome {
    let alpha = KNotA::new(Squares);
    for j in 0..RELATION_BOUND {
        ensure!(
            alpha.compare(j, j + 2).map_err(err)? == Relation::Lt,
            "γ(j,j+2) at {j}"
        );
        ensure!(
            alpha.compare(2 * j + 1, 2 * j + 2).map_err(err)? == Relation::Lt,
            "γ(2j+1,2j+2) at {j}"
        );
        ensure!(
            alpha.compare(2 * j, 2 * j + 1).map_err(err)? == Squares.relation_at(j),
            "γ(2j,2j+1) at {j}"
        );
    }
    let patterns =
        kernel_window(&alpha, Radix::BINARY, PATTERN_SIZE, PATTERN_LEVELS).map_err(err)?;
    ensure!(
        patterns.len() == K_NOT_A_PATTERNS,
        "{} patterns",
        patterns.len()
    );
    let own = kernel_window(&alpha, Radix::BINARY, PATTERN_SIZE, 0).map_err(err)?;
    let increasing = kernel_window(&Increasing, Radix::BINARY, PATTERN_SIZE, 0).map_err(err)?;
    ensure!(own.is_subset(&patterns), "α's own pattern missing");
    ensure!(
        increasing.is_subset(&patterns),
        "increasing pattern missing"
    );
    ensure!(own != increasing, "α looks increasing");
    Ok(format!("{} patterns", patterns.len()))
}

fn c7_monotone() -> Outcome {
    let m = fixtures::monotone(Radix::BINARY);
    ensure!(is_permutation(&m).is_permutation(), "monotone rejected");
    let report = kernel_exact(&m).map_err(err)?;
    ensure!(
        report.class_count() == 1,
        "{} classes",
        report.class_count()
    );
    let ranks = rank_window(
        &m.as_oracle(OracleMode::Checked).map_err(err)?,
        MONOTONE_WINDOW,
    )
    .map_err(err)?;
    let identity: Vec<usize> = (1..=MONOTONE_WINDOW).collect();
    ensure!(ranks.ranks() == identity, "ranks {ranks}");
    Ok("1 class, identity ranks".into())
}

fn c8_cobham() -> Outcome {
    let (m, c) = fixtures::thue_morse_morphism();
    let w = word_automaton_from_morphism(&m, &c).map_err(err)?;
    let prefix = m.fixed_point_prefix(COBHAM_BOUND as usize);
    for n in 0..COBHAM_BOUND {
        let x = w.eval(n);
        ensure!(
            x == c.apply(prefix[n as usize]),
            "letter {n}: automaton {x}"
        );
        ensure!(x == tm_letter(n), "letter {n}: digit sum disagrees");
    }
    let head: String = (0..8).map(|n| w.eval(n).to_string()).collect();
    ensure!(head == "01101001", "w_0..w_7 = {head}");
    Ok(format!("{} states, head {head}", w.state_count()))
}

fn c9_threshold_relabel() -> Outcome {
    let (m, c) = fixtures::thue_morse_morphism();
    let w = word_automaton_from_morphism(&m, &c).map_err(err)?;
    let constant = ThresholdWord(UltimatelyPeriodic::periodic(vec![1, 0]).map_err(err)?);
    let len = RELABEL_WINDOW + SUFFIX_DEPTH;
    let relabeled = relabel_prefix(&w, &constant, len, SUFFIX_DEPTH).map_err(err)?;
    let oracle = valid_permutation_oracle(relabeled, 3, SUFFIX_DEPTH).map_err(err)?;
    let got = rank_window(&oracle, RELABEL_WINDOW).map_err(err)?;
    let want = rank_window(&FnOracle::new(tm_relation), RELABEL_WINDOW).map_err(err)?;
    ensure!(got == want, "relabeled ranks {got}");
    Ok(format!("{RELABEL_WINDOW} ranks agree"))
}

fn c10_ultimately_periodic() -> Outcome {
    let zero = UniformMorphism::from_rules(2, &[("0", &["0", "0"])], "0").map_err(err)?;
    let coding = Coding::identity(&zero).map_err(err)?;
    let compiled = compile(&zero, &coding);
    ensure!(
        matches!(compiled, Err(Error::UltimatelyPeriodic { .. })),
        "compile gave {compiled:?}"
    );
    let alternating = UltimatelyPeriodic::periodic(vec![0, 1]).map_err(err)?;
    let r = suffix_compare(&alternating, 2, 0, 2, SUFFIX_DEPTH);
    ensure!(
        matches!(r, Err(Error::DepthExceeded { .. })),
        "suffix_compare gave {r:?}"
    );
    Ok("both rejected".into())
}

fn mutate(rng: &mut ChaCha8Rng, m: &ComparisonAutomaton) -> ComparisonAutomaton {
    let k = m.radix().get();
    let q = rng.gen_range(0..m.state_count());
    if rng.gen_bool(0.5) {
        let current = m.output(q);
        let others: Vec<Relation> = Relation::ALL
            .into_iter()
            .filter(|&r| r != current)
            .collect();
        m.with_output(q, others[rng.gen_range(0..others.len())])
    } else {
        let (a, b) = (rng.gen_range(0..k), rng.gen_range(0..k));
        let to = rng.gen_range(0..m.state_count());
        m.with_transition(q, a, b, to).expect("in range")
    }
}

fn c11_property_suite() -> Outcome {
    let (tm_m, tm_c) = fixtures::thue_morse_morphism();
    let (pd_m, pd_c) = fixtures::period_doubling_morphism();
    let catalog = vec![
        fixtures::thue_morse_automaton(),
        fixtures::monotone(Radix::BINARY),
        fixtures::monotone(Radix::new(3).map_err(err)?),
        fixtures::example1_automaton(),
        minimize(&compile(&tm_m, &tm_c).map_err(err)?),
        minimize(&compile(&pd_m, &pd_c).map_err(err)?),
    ];
    let bases = &catalog[..4];

    let mut rng = ChaCha8Rng::seed_from_u64(MUTATION_SEED);
    let (mut valid, mut invalid) = (0, 0);
    for round in 0..MUTATIONS {
        let base = &bases[rng.gen_range(0..bases.len())];
        let mut m = mutate(&mut rng, base);
        if rng.gen_bool(0.3) {
            m = mutate(&mut rng, &m);
        }
        let symbolic = is_permutation(&m).is_permutation();
        let window = window_verdict(&m, MUTATION_WINDOW);
        ensure!(
            symbolic == window,
            "mutation {round}: symbolic {symbolic}, window {window}\n{}",
            serialize_automaton(&m)
        );
        if symbolic {
            valid += 1;
        } else {
            invalid += 1;
        }
        let back = parse_automaton(&serialize_automaton(&m)).map_err(err)?;
        ensure!(back == m, "mutation {round} does not round-trip");
    }

    for m in &catalog {
        ensure!(
            parse_automaton(&serialize_automaton(m)).map_err(err)? == *m,
            "catalog round-trip"
        );
        ensure!(
            equivalent(m, m).map_err(err)?.holds(),
            "equivalence not reflexive"
        );
        for other in &catalog {
            if other.radix() != m.radix() {
                continue;
            }
            let ab = equivalent(m, other).map_err(err)?.holds();
            let ba = equivalent(other, m).map_err(err)?.holds();
            ensure!(ab == ba, "equivalence not symmetric");
        }
    }
    for (m, c) in [(&tm_m, &tm_c), (&pd_m, &pd_c)] {
        let (m2, c2) = parse_morphism(&serialize_morphism(m, c)).map_err(err)?;
        ensure!((&m2, &c2) == (m, c), "morphism round-trip");
    }
    Ok(format!("{valid} valid and {invalid} invalid mutants agree"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("thue-morse ordering", c1_thue_morse_order),
        ("validity procedure", c2_validity_procedure),
        ("compiler agreement", c3_compiler_agreement),
        ("suffix soundness", c4_suffix_soundness),
        ("exact kernel", c5_exact_kernel),
        ("kernel witness outside A", c6_k_not_a_witness),
        ("monotone witness", c7_monotone),
        ("cobham construction", c8_cobham),
        ("threshold relabeling", c9_threshold_relabel),
        ("ultimately periodic rejection", c10_ultimately_periodic),
        ("property suite", c11_property_suite),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| Err(format!("panicked: {:?}", p.downcast_ref::<String>())));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} {name}: PASS ({detail}; {secs:.2}s)",
                idx + 1
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why}; {secs:.2}s)", idx + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
