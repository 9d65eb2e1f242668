//! Comparison automata: complete deterministic Moore machines over pairs of
//! base-k digits whose output on the synchronized encoding of `(i, j)` is
//! the relation between `α_i` and `α_j`.

mod minimize;
mod text;

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{pair_encode, PairWord, PermutationOracle, Radix, Relation};
use crate::validity;

pub use minimize::{distinguishing_word, equivalent, minimize, Equivalence};
pub use text::{parse_automaton, serialize_automaton, to_dot};

/// A complete comparison automaton with dense state indices `0..n`.
///
/// Human-readable state names (such as `0<1`) are kept in an optional side
/// table; they never affect the semantics and are ignored by `==`.
#[derive(Debug, Clone)]
pub struct ComparisonAutomaton {
    radix: Radix,
    initial: usize,
    outputs: Vec<Relation>,
    // indexed by (state * k + a) * k + b
    transitions: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl PartialEq for ComparisonAutomaton {
    fn eq(&self, other: &Self) -> bool {
        self.radix == other.radix
            && self.initial == other.initial
            && self.outputs == other.outputs
            && self.transitions == other.transitions
    }
}

impl Eq for ComparisonAutomaton {}

impl ComparisonAutomaton {
    pub fn new(
        radix: Radix,
        initial: usize,
        outputs: Vec<Relation>,
        transitions: Vec<usize>,
    ) -> Result<Self> {
        let n = outputs.len();
        if n == 0 {
            return Err(Error::InvalidMachine("no states".into()));
        }
        if initial >= n {
            return Err(Error::InvalidMachine(format!(
                "initial state {initial} out of range for {n} states"
            )));
        }
        if transitions.len() != n * radix.pair_letters() {
            return Err(Error::InvalidMachine(format!(
                "expected {} transitions, found {}",
                n * radix.pair_letters(),
                transitions.len()
            )));
        }
        if let Some(&t) = transitions.iter().find(|&&t| t >= n) {
            return Err(Error::InvalidMachine(format!(
                "transition target {t} out of range for {n} states"
            )));
        }
        Ok(ComparisonAutomaton {
            radix,
            initial,
            outputs,
            transitions,
            labels: None,
        })
    }

    /// Builds a machine from an output function and a transition function.
    pub fn from_fn(
        radix: Radix,
        states: usize,
        initial: usize,
        output: impl Fn(usize) -> Relation,
        step: impl Fn(usize, u32, u32) -> usize,
    ) -> Result<Self> {
        let k = radix.get();
        let outputs = (0..states).map(output).collect();
        let mut transitions = Vec::with_capacity(states * radix.pair_letters());
        for q in 0..states {
            for a in 0..k {
                for b in 0..k {
                    transitions.push(step(q, a, b));
                }
            }
        }
        Self::new(radix, initial, outputs, transitions)
    }

    /// Attaches state names. There must be one per state.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.state_count() {
            return Err(Error::InvalidMachine(format!(
                "{} labels for {} states",
                labels.len(),
                self.state_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn radix(&self) -> Radix {
        self.radix
    }

    pub fn state_count(&self) -> usize {
        self.outputs.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn output(&self, q: usize) -> Relation {
        self.outputs[q]
    }

    pub fn outputs(&self) -> &[Relation] {
        &self.outputs
    }

    pub fn label(&self, q: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[q].as_str())
    }

    /// State index carrying `name` in the label table.
    pub fn state_named(&self, name: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == name)
    }

    #[inline]
    pub fn step(&self, q: usize, a: u32, b: u32) -> usize {
        let k = self.radix.get() as usize;
        self.transitions[(q * k + a as usize) * k + b as usize]
    }

    /// Pair letters in lexicographic order `(0,0), (0,1), …`.
    pub fn letters(&self) -> impl Iterator<Item = (u32, u32)> + Clone {
        let k = self.radix.get();
        (0..k).flat_map(move |a| (0..k).map(move |b| (a, b)))
    }

    pub fn run_from(&self, q: usize, letters: &[(u32, u32)]) -> usize {
        letters.iter().fold(q, |q, &(a, b)| self.step(q, a, b))
    }

    pub fn run(&self, word: &PairWord) -> usize {
        self.run_from(self.initial, word.letters())
    }

    /// `γ_ij`: the output after reading the synchronized encoding of `(i, j)`.
    pub fn compare(&self, i: u64, j: u64) -> Relation {
        self.output(self.run(&pair_encode(i, j, self.radix)))
    }

    /// Copy with the output of `q` replaced.
    pub fn with_output(&self, q: usize, out: Relation) -> Self {
        let mut m = self.clone();
        m.outputs[q] = out;
        m
    }

    /// Copy with one transition redirected.
    pub fn with_transition(&self, q: usize, a: u32, b: u32, to: usize) -> Result<Self> {
        if to >= self.state_count() {
            return Err(Error::InvalidMachine(format!("no state {to}")));
        }
        let k = self.radix.get() as usize;
        let mut m = self.clone();
        m.transitions[(q * k + a as usize) * k + b as usize] = to;
        Ok(m)
    }

    /// Same states and transitions with a different initial state.
    pub fn restarted_at(&self, q: usize) -> Self {
        let mut m = self.clone();
        m.initial = q;
        m
    }

    /// Same states and transitions with outputs replaced by `output`.
    pub fn with_outputs(&self, output: impl Fn(usize) -> Relation) -> Self {
        let mut m = self.clone();
        m.outputs = (0..self.state_count()).map(output).collect();
        m
    }

    /// States reachable from the initial state, in breadth-first discovery
    /// order with letters taken lexicographically.
    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.state_count()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for (a, b) in self.letters() {
                let t = self.step(q, a, b);
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }

    /// A permutation oracle backed by this machine.
    pub fn as_oracle(&self, mode: OracleMode) -> Result<AutomatonOracle<'_>> {
        if mode == OracleMode::Checked {
            let report = validity::is_permutation(self);
            if !report.is_permutation() {
                return Err(Error::NotAPermutation(report.summary()));
            }
        }
        Ok(AutomatonOracle { machine: self })
    }
}

/// Whether [`ComparisonAutomaton::as_oracle`] runs the validity decision
/// procedure before handing out an oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    Checked,
    Trusted,
}

#[derive(Debug, Clone, Copy)]
pub struct AutomatonOracle<'a> {
    machine: &'a ComparisonAutomaton,
}

impl AutomatonOracle<'_> {
    pub fn machine(&self) -> &ComparisonAutomaton {
        self.machine
    }
}

impl PermutationOracle for AutomatonOracle<'_> {
    fn compare(&self, i: u64, j: u64) -> Result<Relation> {
        Ok(self.machine.compare(i, j))
    }

    fn radix(&self) -> Option<Radix> {
        Some(self.machine.radix)
    }
}

/// What went wrong on a machine input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Two machines (or two starting states) disagree on the input.
    Mismatch { left: Relation, right: Relation },
    /// `γ_ij` and `γ_ji` are not mutually inverse, or `=` off the diagonal,
    /// or not `=` on the diagonal.
    Antisymmetry {
        forward: Relation,
        backward: Relation,
    },
}

/// A replayable input on which a machine contract fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineCounterexample {
    pub input: PairWord,
    pub failure: Failure,
}

impl MachineCounterexample {
    /// The input decoded to a pair of indices.
    pub fn indices(&self) -> Option<(u64, u64)> {
        self.input.decode()
    }
}

impl fmt::Display for MachineCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "input {}", self.input)?;
        if let Some((i, j)) = self.indices() {
            write!(f, " (i={i} j={j})")?;
        }
        match self.failure {
            Failure::Mismatch { left, right } => write!(f, ": {left} vs {right}"),
            Failure::Antisymmetry { forward, backward } => {
                write!(f, ": γ_ij={forward} γ_ji={backward}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn compare_on_thue_morse_fixture() {
        let tm = fixtures::thue_morse_automaton();
        assert_eq!(tm.state_count(), 8);
        assert_eq!(tm.compare(0, 1), Relation::Lt);
        assert_eq!(tm.compare(7, 7), Relation::Eq);
        assert_eq!(tm.compare(4, 5), Relation::Gt);
    }

    #[test]
    fn fixture_structure() {
        let tm = fixtures::thue_morse_automaton();
        for q in 0..8 {
            assert_eq!(tm.step(q, 0, 0), q);
        }
        assert_eq!(tm.output(tm.state_named("0=0").unwrap()), Relation::Eq);
        assert_eq!(tm.output(tm.state_named("1=1").unwrap()), Relation::Eq);
        assert_eq!(tm.label(tm.initial()), Some("0=0"));
    }

    #[test]
    fn as_oracle_checks_validity() {
        let tm = fixtures::thue_morse_automaton();
        let o = tm.as_oracle(OracleMode::Checked).unwrap();
        assert_eq!(
            crate::perm::rank_window(&o, 4).unwrap().ranks(),
            &[2, 4, 3, 1]
        );

        let mono = fixtures::monotone(Radix::BINARY);
        let o = mono.as_oracle(OracleMode::Checked).unwrap();
        assert_eq!(o.compare(5, 9), Ok(Relation::Lt));

        let q = tm.state_named("0<1").unwrap();
        let bad = tm.with_output(q, Relation::Gt);
        assert!(matches!(
            bad.as_oracle(OracleMode::Checked),
            Err(Error::NotAPermutation(_))
        ));
        assert!(bad.as_oracle(OracleMode::Trusted).is_ok());
    }

    #[test]
    fn constructor_rejects_bad_tables() {
        let r = Radix::BINARY;
        assert!(ComparisonAutomaton::new(r, 0, vec![], vec![]).is_err());
        assert!(ComparisonAutomaton::new(r, 1, vec![Relation::Eq], vec![0; 4]).is_err());
        assert!(ComparisonAutomaton::new(r, 0, vec![Relation::Eq], vec![0; 3]).is_err());
        assert!(ComparisonAutomaton::new(r, 0, vec![Relation::Eq], vec![0, 0, 1, 0]).is_err());
        assert!(ComparisonAutomaton::new(r, 0, vec![Relation::Eq], vec![0; 4]).is_ok());
    }

    #[test]
    fn reachable_skips_orphans() {
        let mono = fixtures::monotone(Radix::BINARY);
        let mut outputs = mono.outputs().to_vec();
        outputs.push(Relation::Lt);
        let mut transitions: Vec<usize> = (0..3)
            .flat_map(|q| mono.letters().map(move |l| (q, l)))
            .map(|(q, (a, b))| mono.step(q, a, b))
            .collect();
        transitions.extend([3; 4]);
        let m = ComparisonAutomaton::new(Radix::BINARY, 0, outputs, transitions).unwrap();
        assert_eq!(m.reachable(), vec![0, 1, 2]);
    }
}
