//! k-kernels of permutations.
//!
//! The kernel element `(n, i)` is the subsequence `α_i α_{k^n+i} α_{2k^n+i} ⋯`.
//! On a comparison automaton, comparing entries `s` and `t` of that element
//! means reading the encoding of `(s, t)` followed by `n` diagonal letters
//! spelling `i`. So every element is the machine with its output composed
//! with a state map `q ↦ δ(q, rep_n(i) × rep_n(i))`, and there are finitely
//! many such maps.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::automaton::{equivalent, minimize, ComparisonAutomaton};
use crate::error::{Error, Result};
use crate::perm::{digits, pair_encode, PermutationOracle, Radix, Relation};
use crate::validity;

/// The kernel element `α_i α_{k^n+i} α_{2k^n+i} ⋯`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KernelElement {
    pub n: u32,
    pub i: u64,
}

impl KernelElement {
    pub fn new(n: u32, i: u64, radix: Radix) -> Result<Self> {
        match radix.checked_pow(n) {
            Some(kn) if i < kn => Ok(KernelElement { n, i }),
            _ => Err(Error::KernelElementOutOfRange {
                n,
                i,
                radix: radix.get(),
            }),
        }
    }

    pub fn identity() -> Self {
        KernelElement { n: 0, i: 0 }
    }

    /// Index in `α` of entry `s` of this element, `i + s·k^n`.
    pub fn index(&self, s: u64, radix: Radix) -> Result<u64> {
        radix
            .checked_pow(self.n)
            .and_then(|kn| kn.checked_mul(s))
            .and_then(|x| x.checked_add(self.i))
            .ok_or(Error::Overflow)
    }
}

impl fmt::Display for KernelElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} i={}", self.n, self.i)
    }
}

/// A total map on the states of one machine.
pub type StateMap = Vec<usize>;

/// A member of the diagonal closure with the first kernel element found to
/// realize it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureEntry {
    pub element: KernelElement,
    pub map: StateMap,
}

/// All maps `q ↦ δ(q, rep_n(i) × rep_n(i))`, closing `{identity}` under
/// `g ↦ g ∘ step_d` where `step_d(q) = δ(q, (d,d))`.
///
/// The digits of `i` are the least significant ones, read last; a map for
/// level `n+1` and residue `d·k^n + i` applies `step_d` first and then the
/// level-`n` map for `i`.
pub fn diagonal_closure(m: &ComparisonAutomaton) -> Result<Vec<ClosureEntry>> {
    let radix = m.radix();
    let identity: StateMap = (0..m.state_count()).collect();
    let mut seen: HashMap<StateMap, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut entries = vec![ClosureEntry {
        element: KernelElement::identity(),
        map: identity,
    }];
    let mut head = 0;
    while head < entries.len() {
        let ClosureEntry { element, map } = entries[head].clone();
        let kn = radix.checked_pow(element.n).ok_or(Error::Overflow)?;
        for d in 0..radix.get() {
            let next: StateMap = (0..m.state_count()).map(|q| map[m.step(q, d, d)]).collect();
            if !seen.contains_key(&next) {
                let i = u64::from(d)
                    .checked_mul(kn)
                    .and_then(|x| x.checked_add(element.i))
                    .ok_or(Error::Overflow)?;
                seen.insert(next.clone(), entries.len());
                entries.push(ClosureEntry {
                    element: KernelElement {
                        n: element.n + 1,
                        i,
                    },
                    map: next,
                });
            }
        }
        head += 1;
    }
    Ok(entries)
}

/// The kernel element `e` of the permutation defined by `m`, evaluated by
/// running `m` on the encoding of `(s, t)` and then on `rep_n(i)` twice.
#[derive(Debug, Clone)]
pub struct KernelOracle<'a> {
    machine: &'a ComparisonAutomaton,
    suffix: Vec<(u32, u32)>,
}

impl PermutationOracle for KernelOracle<'_> {
    fn compare(&self, s: u64, t: u64) -> Result<Relation> {
        let m = self.machine;
        let q = m.run(&pair_encode(s, t, m.radix()));
        Ok(m.output(m.run_from(q, &self.suffix)))
    }

    fn radix(&self) -> Option<Radix> {
        Some(self.machine.radix())
    }
}

pub fn kernel_element_oracle(
    m: &ComparisonAutomaton,
    e: KernelElement,
) -> Result<KernelOracle<'_>> {
    let e = KernelElement::new(e.n, e.i, m.radix())?;
    let rep = digits(e.i, m.radix(), Some(e.n as usize))?;
    Ok(KernelOracle {
        machine: m,
        suffix: rep.digits().iter().map(|&d| (d, d)).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    pub radix: Radix,
    /// One representative element per class, the permutation itself first.
    pub classes: Vec<KernelElement>,
    /// Class of `(n=0, i=0)`.
    pub identity_class: usize,
    /// Number of distinct diagonal state maps on the minimized machine.
    pub closure_size: usize,
}

impl KernelReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

impl fmt::Display for KernelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "kernel k={} classes={}", self.radix, self.classes.len())?;
        for (idx, e) in self.classes.iter().enumerate() {
            write!(f, "\nclass {idx} rep {e}")?;
        }
        Ok(())
    }
}

/// Exact k-kernel of the permutation defined by `m`.
///
/// Each diagonal state map yields a machine with the same transitions and
/// output `τ ∘ g`; kernel elements are equal exactly when those machines
/// are observationally equivalent. Requires `m` to define a permutation.
pub fn kernel_exact(m: &ComparisonAutomaton) -> Result<KernelReport> {
    let report = validity::is_permutation(m);
    if !report.is_permutation() {
        return Err(Error::NotAPermutation(report.summary()));
    }
    let m = minimize(m);
    let closure = diagonal_closure(&m)?;

    let mut reps: Vec<(KernelElement, ComparisonAutomaton)> = Vec::new();
    for entry in &closure {
        let derived = m.with_outputs(|q| m.output(entry.map[q]));
        let mut known = false;
        for (_, rep) in &reps {
            if equivalent(rep, &derived)?.holds() {
                known = true;
                break;
            }
        }
        if !known {
            reps.push((entry.element, derived));
        }
    }
    Ok(KernelReport {
        radix: m.radix(),
        classes: reps.into_iter().map(|(e, _)| e).collect(),
        identity_class: 0,
        closure_size: closure.len(),
    })
}

/// The `L × L` comparison table of one kernel element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternMatrix {
    size: usize,
    cells: Vec<Relation>,
}

impl PatternMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, s: usize, t: usize) -> Relation {
        self.cells[s * self.size + t]
    }

    /// Antisymmetric with `=` exactly on the diagonal.
    pub fn is_well_formed(&self) -> bool {
        (0..self.size).all(|s| {
            (0..self.size).all(|t| {
                let r = self.get(s, t);
                (r == Relation::Eq) == (s == t) && r == self.get(t, s).flip()
            })
        })
    }
}

impl fmt::Display for PatternMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (row, chunk) in self.cells.chunks(self.size).enumerate() {
            if row > 0 {
                writeln!(f)?;
            }
            for r in chunk {
                write!(f, "{}", r.symbol())?;
            }
        }
        Ok(())
    }
}

/// Distinct `L × L` windows over all kernel elements with `n ≤ n_max`.
/// The count is a lower bound on the kernel size.
pub fn kernel_window<O: PermutationOracle + ?Sized>(
    o: &O,
    radix: Radix,
    size: usize,
    n_max: u32,
) -> Result<BTreeSet<PatternMatrix>> {
    if size < 2 {
        return Err(Error::BadParam("window must be at least 2".into()));
    }
    let mut out = BTreeSet::new();
    for n in 0..=n_max {
        let kn = radix.checked_pow(n).ok_or(Error::Overflow)?;
        for i in 0..kn {
            let e = KernelElement { n, i };
            let idx = (0..size as u64)
                .map(|s| e.index(s, radix))
                .collect::<Result<Vec<_>>>()?;
            let mut cells = Vec::with_capacity(size * size);
            for &a in &idx {
                for &b in &idx {
                    cells.push(o.compare(a, b)?);
                }
            }
            out.insert(PatternMatrix { size, cells });
        }
    }
    Ok(out)
}
