use std::collections::HashMap;

use super::{ComparisonAutomaton, Failure, MachineCounterexample};
use crate::error::{Error, Result};
use crate::perm::PairWord;

/// Moore-style partition refinement over the reachable part of `m`.
///
/// States of the result are numbered in breadth-first discovery order from
/// the initial state, so two observationally equivalent machines minimize to
/// identical tables.
pub fn minimize(m: &ComparisonAutomaton) -> ComparisonAutomaton {
    let reachable = m.reachable();
    let letters: Vec<(u32, u32)> = m.letters().collect();

    let mut class = vec![usize::MAX; m.state_count()];
    for &q in &reachable {
        class[q] = m.output(q) as usize;
    }
    let mut count = distinct(&reachable, &class);

    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next = vec![usize::MAX; m.state_count()];
        for &q in &reachable {
            let mut sig = Vec::with_capacity(letters.len() + 1);
            sig.push(class[q]);
            sig.extend(letters.iter().map(|&(a, b)| class[m.step(q, a, b)]));
            let fresh = ids.len();
            next[q] = *ids.entry(sig).or_insert(fresh);
        }
        let refined = ids.len();
        class = next;
        if refined == count {
            break;
        }
        count = refined;
    }

    // canonical renumbering by BFS over classes
    let mut number = vec![usize::MAX; count];
    let mut repr = Vec::with_capacity(count);
    number[class[m.initial()]] = 0;
    repr.push(m.initial());
    let mut head = 0;
    while head < repr.len() {
        let q = repr[head];
        head += 1;
        for &(a, b) in &letters {
            let t = m.step(q, a, b);
            if number[class[t]] == usize::MAX {
                number[class[t]] = repr.len();
                repr.push(t);
            }
        }
    }

    let outputs = repr.iter().map(|&q| m.output(q)).collect();
    let transitions = repr
        .iter()
        .flat_map(|&q| letters.iter().map(move |&(a, b)| (q, a, b)))
        .map(|(q, a, b)| number[class[m.step(q, a, b)]])
        .collect();
    ComparisonAutomaton::new(m.radix(), 0, outputs, transitions)
        .expect("quotient of a complete machine is complete")
}

fn distinct(states: &[usize], class: &[usize]) -> usize {
    let mut seen: Vec<usize> = states.iter().map(|&q| class[q]).collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    Distinguished(MachineCounterexample),
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        matches!(self, Equivalence::Equivalent)
    }
}

/// Decides whether two machines agree on every pair word, returning a
/// shortest (then lexicographically least) distinguishing input otherwise.
pub fn equivalent(left: &ComparisonAutomaton, right: &ComparisonAutomaton) -> Result<Equivalence> {
    if left.radix() != right.radix() {
        return Err(Error::RadixMismatch(
            left.radix().get(),
            right.radix().get(),
        ));
    }
    Ok(
        match distinguishing_word(left, left.initial(), right, right.initial()) {
            None => Equivalence::Equivalent,
            Some(c) => Equivalence::Distinguished(c),
        },
    )
}

/// Breadth-first search of the product of `left` started at `p` and `right`
/// started at `q` for an input on which the outputs differ.
///
/// Both machines must share a radix.
pub fn distinguishing_word(
    left: &ComparisonAutomaton,
    p: usize,
    right: &ComparisonAutomaton,
    q: usize,
) -> Option<MachineCounterexample> {
    assert_eq!(left.radix(), right.radix(), "radix mismatch");
    let letters: Vec<(u32, u32)> = left.letters().collect();
    let width = right.state_count();
    let key = |a: usize, b: usize| a * width + b;

    let mut parent: HashMap<usize, (usize, (u32, u32))> = HashMap::new();
    let mut queue = vec![(p, q)];
    parent.insert(key(p, q), (usize::MAX, (0, 0)));
    let mut head = 0;
    while head < queue.len() {
        let (a, b) = queue[head];
        head += 1;
        if left.output(a) != right.output(b) {
            let mut word = Vec::new();
            let mut cur = key(a, b);
            while let Some(&(prev, letter)) = parent.get(&cur) {
                if prev == usize::MAX {
                    break;
                }
                word.push(letter);
                cur = prev;
            }
            word.reverse();
            return Some(MachineCounterexample {
                input: PairWord::new(left.radix(), word).expect("letters below radix"),
                failure: Failure::Mismatch {
                    left: left.output(a),
                    right: right.output(b),
                },
            });
        }
        for &(x, y) in &letters {
            let next = (left.step(a, x, y), right.step(b, x, y));
            let nk = key(next.0, next.1);
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(nk) {
                e.insert((key(a, b), (x, y)));
                queue.push(next);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::perm::{Radix, Relation};

    #[test]
    fn minimized_fixture_agrees_pointwise() {
        let tm = fixtures::thue_morse_automaton();
        let min = minimize(&tm);
        for i in 0..512 {
            for j in 0..512 {
                assert_eq!(min.compare(i, j), tm.compare(i, j), "({i},{j})");
            }
        }
        assert!(equivalent(&tm, &min).unwrap().holds());
    }

    #[test]
    fn monotone_is_already_minimal() {
        let mono = fixtures::monotone(Radix::BINARY);
        let min = minimize(&mono);
        assert_eq!(min.state_count(), 3);
        assert_eq!(min, mono);
    }

    #[test]
    fn unreachable_states_are_dropped() {
        let tm = fixtures::thue_morse_automaton();
        let n = tm.state_count();
        let mut outputs = tm.outputs().to_vec();
        outputs.push(Relation::Gt);
        let mut transitions = Vec::new();
        for q in 0..=n {
            for (a, b) in tm.letters() {
                transitions.push(if q == n { 0 } else { tm.step(q, a, b) });
            }
        }
        let bigger = ComparisonAutomaton::new(tm.radix(), 0, outputs, transitions).unwrap();
        assert_eq!(minimize(&bigger), minimize(&tm));
    }

    #[test]
    fn flipped_output_is_detected_quickly() {
        let tm = fixtures::thue_morse_automaton();
        let q = tm.state_named("0<1").unwrap();
        let bad = tm.with_output(q, Relation::Gt);
        let Equivalence::Distinguished(c) = equivalent(&tm, &bad).unwrap() else {
            panic!("flip went unnoticed");
        };
        assert!(c.input.len() <= 2);
        assert_eq!(c.input.letters(), &[(0, 1)]);
        assert_eq!(
            c.failure,
            Failure::Mismatch {
                left: Relation::Lt,
                right: Relation::Gt
            }
        );
    }

    #[test]
    fn radix_mismatch_is_an_error() {
        let a = fixtures::monotone(Radix::BINARY);
        let b = fixtures::monotone(Radix::new(3).unwrap());
        assert_eq!(equivalent(&a, &b), Err(Error::RadixMismatch(2, 3)));
    }
}
