#![allow(dead_code)]

use autoperm::automaton::ComparisonAutomaton;
use autoperm::perm::pair_encode;
use autoperm::Relation;

/// Thue-Morse letter from the binary digit sum.
pub fn tm_letter(n: u64) -> u32 {
    n.count_ones() % 2
}

/// Thue-Morse suffix order by direct scan of the digit-sum word.
pub fn tm_relation(i: u64, j: u64) -> Relation {
    if i == j {
        return Relation::Eq;
    }
    for m in 0..4096 {
        let (a, b) = (tm_letter(i + m), tm_letter(j + m));
        if a != b {
            return a.cmp(&b).into();
        }
    }
    panic!("suffixes at {i} and {j} agree on 4096 letters");
}

/// Period-doubling letter: 1 exactly when the 2-adic valuation of `n + 1`
/// is odd.
pub fn pd_letter(n: u64) -> u32 {
    (n + 1).trailing_zeros() % 2
}

/// Checks every pair and triple below `n` by running the machine,
/// including encodings with up to two extra leading `(0,0)` letters.
pub fn window_verdict(m: &ComparisonAutomaton, n: u64) -> bool {
    let k = m.radix();
    let size = n as usize;
    let mut table = vec![Relation::Eq; size * size];
    for i in 0..n {
        for j in 0..n {
            let canon = pair_encode(i, j, k);
            let r = m.output(m.run(&canon));
            for pad in 1..3 {
                if m.output(m.run(&canon.padded(pad))) != r {
                    return false;
                }
            }
            if (i == j) != (r == Relation::Eq) {
                return false;
            }
            table[i as usize * size + j as usize] = r;
        }
    }
    let at = |i: usize, j: usize| table[i * size + j];
    for i in 0..size {
        for j in 0..size {
            if at(i, j) != at(j, i).flip() {
                return false;
            }
            if at(i, j) != Relation::Lt {
                continue;
            }
            for l in 0..size {
                if at(j, l) == Relation::Lt && at(l, i) == Relation::Lt {
                    return false;
                }
            }
        }
    }
    true
}
