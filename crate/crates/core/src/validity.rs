//! Decides whether a comparison automaton defines a linear order on ℕ.
//!
//! Three product-machine reachability checks:
//!
//! * antisymmetry: the square machine reading `(a,b)` on one copy and
//!   `(b,a)` on the other, with a flag recording whether an unequal letter
//!   has been read. Flag clear must give `(=,=)`, flag set `(<,>)` or `(>,<)`.
//! * transitivity: the cube machine reading `(a,b)`, `(b,c)`, `(c,a)`; no
//!   reachable state may output `(<,<,<)` or `(>,>,>)`.
//! * padding invariance: the machine from `q0` and from `δ(q0,(0,0))` must be
//!   observationally equivalent, so verdicts do not depend on the encoding
//!   width.
//!
//! All searches are breadth-first with letters in lexicographic order, so
//! counterexamples are shortest and then lexicographically least.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::automaton::{
    distinguishing_word, minimize, ComparisonAutomaton, Failure, MachineCounterexample,
};
use crate::perm::{PairWord, Radix, Relation};

/// Result of a product search: the verdict and how many product states were
/// visited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exploration<T> {
    pub outcome: Result<(), T>,
    pub visited: usize,
}

/// Three digit tracks `(a, b, c)` whose comparisons form a cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleCounterexample {
    pub radix: Radix,
    pub input: Vec<(u32, u32, u32)>,
    pub relation: Relation,
}

impl TripleCounterexample {
    /// The three indices `(i, j, l)`; `γ_ij = γ_jl = γ_li = relation`.
    pub fn indices(&self) -> Option<(u64, u64, u64)> {
        let k = u64::from(self.radix.get());
        let mut acc = (0u64, 0u64, 0u64);
        for &(a, b, c) in &self.input {
            acc = (
                acc.0.checked_mul(k)?.checked_add(a.into())?,
                acc.1.checked_mul(k)?.checked_add(b.into())?,
                acc.2.checked_mul(k)?.checked_add(c.into())?,
            );
        }
        Some(acc)
    }
}

impl fmt::Display for TripleCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.indices() {
            Some((i, j, l)) => {
                let r = self.relation;
                write!(f, "α_{i} {r} α_{j} {r} α_{l} {r} α_{i}")
            }
            None => write!(f, "cycle on an input of length {}", self.input.len()),
        }
    }
}

/// Breadth-first search from `start`, stopping at the first state `bad`
/// accepts. Returns the letter path to it and the number of states seen.
fn search<S, L>(
    start: S,
    letters: &[L],
    step: impl Fn(&S, &L) -> S,
    bad: impl Fn(&S) -> bool,
) -> (Option<Vec<L>>, usize)
where
    S: Clone + Eq + Hash,
    L: Clone,
{
    let mut index: HashMap<S, usize> = HashMap::new();
    let mut nodes: Vec<(S, usize, Option<L>)> = vec![(start.clone(), usize::MAX, None)];
    index.insert(start, 0);
    let mut head = 0;
    while head < nodes.len() {
        let state = nodes[head].0.clone();
        if bad(&state) {
            let mut path = Vec::new();
            let mut cur = head;
            while let Some(letter) = nodes[cur].2.clone() {
                path.push(letter);
                cur = nodes[cur].1;
            }
            path.reverse();
            return (Some(path), nodes.len());
        }
        for l in letters {
            let next = step(&state, l);
            if !index.contains_key(&next) {
                index.insert(next.clone(), nodes.len());
                nodes.push((next, head, Some(l.clone())));
            }
        }
        head += 1;
    }
    (None, nodes.len())
}

/// The square-machine antisymmetry search.
pub fn explore_square(m: &ComparisonAutomaton) -> Exploration<MachineCounterexample> {
    let letters: Vec<(u32, u32)> = m.letters().collect();
    let q0 = m.initial();
    let (path, visited) = search(
        (q0, q0, false),
        &letters,
        |&(p, q, unequal), &(a, b)| (m.step(p, a, b), m.step(q, b, a), unequal || a != b),
        |&(p, q, unequal)| {
            let pair = (m.output(p), m.output(q));
            if unequal {
                !matches!(
                    pair,
                    (Relation::Lt, Relation::Gt) | (Relation::Gt, Relation::Lt)
                )
            } else {
                pair != (Relation::Eq, Relation::Eq)
            }
        },
    );
    let outcome = match path {
        None => Ok(()),
        Some(path) => {
            let (p, q) = path.iter().fold((q0, q0), |(p, q), &(a, b)| {
                (m.step(p, a, b), m.step(q, b, a))
            });
            Err(MachineCounterexample {
                input: PairWord::new(m.radix(), path).expect("letters below radix"),
                failure: Failure::Antisymmetry {
                    forward: m.output(p),
                    backward: m.output(q),
                },
            })
        }
    };
    Exploration { outcome, visited }
}

/// The cube-machine transitivity search.
pub fn explore_cube(m: &ComparisonAutomaton) -> Exploration<TripleCounterexample> {
    let k = m.radix().get();
    let letters: Vec<(u32, u32, u32)> = (0..k)
        .flat_map(|a| (0..k).flat_map(move |b| (0..k).map(move |c| (a, b, c))))
        .collect();
    let q0 = m.initial();
    let cyclic = |&(x, y, z): &(usize, usize, usize)| {
        let r = m.output(x);
        r != Relation::Eq && m.output(y) == r && m.output(z) == r
    };
    let (path, visited) = search(
        (q0, q0, q0),
        &letters,
        |&(x, y, z), &(a, b, c)| (m.step(x, a, b), m.step(y, b, c), m.step(z, c, a)),
        cyclic,
    );
    let outcome = match path {
        None => Ok(()),
        Some(input) => {
            let x = input.iter().fold(q0, |x, &(a, b, _)| m.step(x, a, b));
            Err(TripleCounterexample {
                radix: m.radix(),
                input,
                relation: m.output(x),
            })
        }
    };
    Exploration { outcome, visited }
}

pub fn check_antisymmetry(m: &ComparisonAutomaton) -> Result<(), MachineCounterexample> {
    explore_square(m).outcome
}

pub fn check_transitivity(m: &ComparisonAutomaton) -> Result<(), TripleCounterexample> {
    explore_cube(m).outcome
}

/// Verdicts must not depend on how many synchronized leading zeros precede
/// the encoding. On failure the witness is a suffix `w` such that `w` and
/// `(0,0)w` produce different outputs.
pub fn check_padding_invariance(m: &ComparisonAutomaton) -> Result<(), MachineCounterexample> {
    let q0 = m.initial();
    match distinguishing_word(m, q0, m, m.step(q0, 0, 0)) {
        None => Ok(()),
        Some(c) => Err(c),
    }
}

/// A shortest input containing an unequal letter `(a,b)`, `a ≠ b`, that
/// reaches a state with output `=`.
pub fn off_diagonal_eq(m: &ComparisonAutomaton) -> Option<PairWord> {
    let letters: Vec<(u32, u32)> = m.letters().collect();
    let (path, _) = search(
        (m.initial(), false),
        &letters,
        |&(q, unequal), &(a, b)| (m.step(q, a, b), unequal || a != b),
        |&(q, unequal)| unequal && m.output(q) == Relation::Eq,
    );
    path.map(|p| PairWord::new(m.radix(), p).expect("letters below radix"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub antisymmetry: Result<(), MachineCounterexample>,
    pub transitivity: Result<(), TripleCounterexample>,
    pub padding: Result<(), MachineCounterexample>,
}

impl ValidityReport {
    pub fn is_permutation(&self) -> bool {
        self.antisymmetry.is_ok() && self.transitivity.is_ok() && self.padding.is_ok()
    }

    /// One line naming the first failing check.
    pub fn summary(&self) -> String {
        if let Err(c) = &self.antisymmetry {
            return format!("antisymmetry fails on {c}");
        }
        if let Err(c) = &self.padding {
            return format!("padding invariance fails on {c}");
        }
        if let Err(c) = &self.transitivity {
            return format!("transitivity fails: {c}");
        }
        "permutation".into()
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn line<T: fmt::Display>(r: &Result<(), T>) -> String {
            match r {
                Ok(()) => "pass".into(),
                Err(c) => format!("fail: {c}"),
            }
        }
        writeln!(f, "antisymmetry: {}", line(&self.antisymmetry))?;
        writeln!(f, "transitivity: {}", line(&self.transitivity))?;
        writeln!(f, "padding: {}", line(&self.padding))?;
        write!(
            f,
            "verdict: {}",
            if self.is_permutation() {
                "permutation"
            } else {
                "not a permutation"
            }
        )
    }
}

/// Runs all three checks. They are performed on the minimized machine; the
/// verdicts and counterexample inputs are the same as for `m` itself.
pub fn is_permutation(m: &ComparisonAutomaton) -> ValidityReport {
    let m = minimize(m);
    ValidityReport {
        antisymmetry: check_antisymmetry(&m),
        transitivity: check_transitivity(&m),
        padding: check_padding_invariance(&m),
    }
}
