//! Compiles a k-uniform morphism with a coding into a comparison automaton
//! for the permutation generated by the coded fixed point.
//!
//! A state after reading `a × b` is the list of two-letter factor pairs of
//! `T^[a]w × T^[b]w` in order of first appearance. Reading `(i, j)` expands
//! each listed pair through `φ` at offsets `i` and `j` and keeps first
//! occurrences. The output is decided by the first pair of coded letters
//! that differ. The tail of unseen pairs after the ◇ marker carries no
//! information and is never stored.

use std::collections::HashMap;
use std::fmt;

use crate::automaton::ComparisonAutomaton;
use crate::error::{Error, Result};
use crate::perm::Relation;
use crate::validity;
use crate::words::{Coding, UniformMorphism};

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// A pair of two-letter factors `st × pr`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairFactor {
    pub left: [usize; 2],
    pub right: [usize; 2],
}

impl PairFactor {
    pub fn new(left: [usize; 2], right: [usize; 2]) -> Self {
        PairFactor { left, right }
    }

    pub fn diagonal(f: [usize; 2]) -> Self {
        PairFactor { left: f, right: f }
    }

    pub fn display<'a>(&'a self, m: &'a UniformMorphism) -> impl fmt::Display + 'a {
        struct D<'a>(&'a PairFactor, &'a UniformMorphism);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let n = |x| self.1.letter_name(x);
                let (l, r) = (self.0.left, self.0.right);
                write!(f, "{}{}×{}{}", n(l[0]), n(l[1]), n(r[0]), n(r[1]))
            }
        }
        D(self, m)
    }
}

/// The part of a compiler state before the ◇ marker.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompilerState {
    pub pre_diamond: Vec<PairFactor>,
}

impl CompilerState {
    pub fn len(&self) -> usize {
        self.pre_diamond.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pre_diamond.is_empty()
    }

    /// The full state: listed pairs, then ◇ (`None`), then every other pair
    /// of `factors × factors` in lexicographic order.
    pub fn full(&self, factors: &[[usize; 2]]) -> Vec<Option<PairFactor>> {
        let mut sorted = factors.to_vec();
        sorted.sort_unstable();
        let mut out: Vec<Option<PairFactor>> = self.pre_diamond.iter().copied().map(Some).collect();
        out.push(None);
        for &l in &sorted {
            for &r in &sorted {
                let pf = PairFactor::new(l, r);
                if !self.pre_diamond.contains(&pf) {
                    out.push(Some(pf));
                }
            }
        }
        out
    }
}

/// `f_ij(st × pr)`: with `φ(st) = g_0⋯g_{2k-1}` and `φ(pr) = h_0⋯h_{2k-1}`,
/// the `k` pairs `g_{i+m}g_{i+m+1} × h_{j+m}h_{j+m+1}`.
pub fn expand_pair(pf: PairFactor, m: &UniformMorphism, i: u32, j: u32) -> Vec<PairFactor> {
    let g = m.image2(pf.left);
    let h = m.image2(pf.right);
    let (i, j) = (i as usize, j as usize);
    (0..m.radix().get() as usize)
        .map(|s| PairFactor::new([g[i + s], g[i + s + 1]], [h[j + s], h[j + s + 1]]))
        .collect()
}

/// The state for input `0 × 0`: `a_1×a_1, …, a_p×a_p`.
pub fn initial_state(m: &UniformMorphism) -> CompilerState {
    CompilerState {
        pre_diamond: m
            .factor2_appearance_order()
            .into_iter()
            .map(PairFactor::diagonal)
            .collect(),
    }
}

pub fn transition(s: &CompilerState, i: u32, j: u32, m: &UniformMorphism) -> CompilerState {
    let mut out: Vec<PairFactor> = Vec::with_capacity(s.len());
    for &pf in &s.pre_diamond {
        for e in expand_pair(pf, m, i, j) {
            if !out.contains(&e) {
                out.push(e);
            }
        }
    }
    CompilerState { pre_diamond: out }
}

/// Scans `c(s_1)×c(p_1), c(t_1)×c(r_1), c(s_2)×c(p_2), …` and orders by the
/// first unequal pair; `Eq` when there is none.
pub fn output_symbol(s: &CompilerState, c: &Coding) -> Relation {
    s.pre_diamond
        .iter()
        .flat_map(|pf| [(pf.left[0], pf.right[0]), (pf.left[1], pf.right[1])])
        .map(|(x, y)| c.apply(x).cmp(&c.apply(y)))
        .find(|o| o.is_ne())
        .map_or(Relation::Eq, Relation::from)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompileOptions {
    pub state_cap: usize,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions {
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

/// A compiled machine together with the compiler state behind each of its
/// states (in the machine's numbering).
#[derive(Debug, Clone)]
pub struct Compilation {
    pub machine: ComparisonAutomaton,
    pub states: Vec<CompilerState>,
    /// The two-letter factors `a_1, …, a_p` in appearance order.
    pub factors: Vec<[usize; 2]>,
}

impl Compilation {
    /// `(p² + 1)!`, the number of orderings of `P × P ∪ {◇}`; `None` when it
    /// does not fit in 128 bits.
    pub fn state_bound(&self) -> Option<u128> {
        state_bound(self.factors.len())
    }
}

pub fn state_bound(p: usize) -> Option<u128> {
    let n = (p as u128).checked_mul(p as u128)?.checked_add(1)?;
    (1..=n).try_fold(1u128, |acc, x| acc.checked_mul(x))
}

pub fn compile(m: &UniformMorphism, c: &Coding) -> Result<ComparisonAutomaton> {
    compile_with(m, c, CompileOptions::default()).map(|comp| comp.machine)
}

/// Breadth-first closure from the initial state over all `k²` digit pairs,
/// states numbered in discovery order.
pub fn compile_with(m: &UniformMorphism, c: &Coding, opts: CompileOptions) -> Result<Compilation> {
    if c.len() != m.letter_count() {
        return Err(Error::InvalidMorphism(format!(
            "coding covers {} letters, alphabet has {}",
            c.len(),
            m.letter_count()
        )));
    }
    let k = m.radix().get();
    let letters: Vec<(u32, u32)> = (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).collect();
    let factors = m.factor2_appearance_order();

    let start = initial_state(m);
    let mut ids: HashMap<CompilerState, usize> = HashMap::from([(start.clone(), 0)]);
    let mut states = vec![start];
    let mut transitions: Vec<usize> = Vec::new();
    let mut head = 0;
    while head < states.len() {
        for &(i, j) in &letters {
            let next = transition(&states[head], i, j, m);
            let fresh = states.len();
            let id = *ids.entry(next.clone()).or_insert(fresh);
            if id == fresh {
                if fresh >= opts.state_cap {
                    return Err(Error::StateExplosion {
                        cap: opts.state_cap,
                    });
                }
                states.push(next);
            }
            transitions.push(id);
        }
        head += 1;
    }

    let outputs = states.iter().map(|s| output_symbol(s, c)).collect();
    let machine = ComparisonAutomaton::new(m.radix(), 0, outputs, transitions)?;
    if let Some(w) = validity::off_diagonal_eq(&machine) {
        return Err(Error::UltimatelyPeriodic {
            witness: w.to_string(),
        });
    }
    Ok(Compilation {
        machine,
        states,
        factors,
    })
}
