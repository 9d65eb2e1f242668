//! Shared vocabulary: comparison symbols, base-k digit encodings, the
//! permutation-oracle contract and finite ranking windows.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The relation `γ_ij` between two entries of a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Lt,
    Eq,
    Gt,
}

impl Relation {
    pub const ALL: [Relation; 3] = [Relation::Lt, Relation::Eq, Relation::Gt];

    /// The relation seen from the other side: `γ_ji` given `γ_ij`.
    pub fn flip(self) -> Relation {
        match self {
            Relation::Lt => Relation::Gt,
            Relation::Gt => Relation::Lt,
            Relation::Eq => Relation::Eq,
        }
    }

    /// `<`, `>` or `=`.
    pub fn symbol(self) -> char {
        match self {
            Relation::Lt => '<',
            Relation::Gt => '>',
            Relation::Eq => '=',
        }
    }

    /// `LT`, `GT` or `EQ`, as used by the automaton text format.
    pub fn token(self) -> &'static str {
        match self {
            Relation::Lt => "LT",
            Relation::Gt => "GT",
            Relation::Eq => "EQ",
        }
    }

    pub fn from_symbol(c: char) -> Option<Relation> {
        match c {
            '<' => Some(Relation::Lt),
            '>' => Some(Relation::Gt),
            '=' => Some(Relation::Eq),
            _ => None,
        }
    }
}

impl From<Ordering> for Relation {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Relation::Lt,
            Ordering::Equal => Relation::Eq,
            Ordering::Greater => Relation::Gt,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "LT" => Ok(Relation::Lt),
            "GT" => Ok(Relation::Gt),
            "EQ" => Ok(Relation::Eq),
            _ => Err(format!("expected LT, GT or EQ, found '{s}'")),
        }
    }
}

/// A numeration base `k >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Radix(u32);

impl Radix {
    pub const BINARY: Radix = Radix(2);

    pub fn new(k: u32) -> Result<Radix> {
        if k < 2 {
            return Err(Error::InvalidRadix(k));
        }
        Ok(Radix(k))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of letters `(a, b)` of the pair alphabet, `k²`.
    pub fn pair_letters(self) -> usize {
        (self.0 * self.0) as usize
    }

    /// `k^n`, or `None` on overflow.
    pub fn checked_pow(self, n: u32) -> Option<u64> {
        u64::from(self.0).checked_pow(n)
    }

    /// Number of digits of `n` in canonical form (at least one).
    pub fn digit_count(self, mut n: u64) -> usize {
        let k = u64::from(self.0);
        let mut len = 1;
        while n >= k {
            n /= k;
            len += 1;
        }
        len
    }
}

impl fmt::Display for Radix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Base-k digits, most significant first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitString {
    radix: Radix,
    digits: Vec<u32>,
}

impl DigitString {
    pub fn radix(&self) -> Radix {
        self.radix
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// The integer these digits denote, `None` on overflow.
    pub fn value(&self) -> Option<u64> {
        decode_digits(self.radix, self.digits.iter().copied())
    }
}

fn decode_digits(radix: Radix, mut digits: impl Iterator<Item = u32>) -> Option<u64> {
    let k = u64::from(radix.get());
    digits.try_fold(0u64, |acc, d| acc.checked_mul(k)?.checked_add(u64::from(d)))
}

/// The base-k representation of `n`, left-padded with zeros to `width` when given.
///
/// Without a width, zero is the single digit `0`.
pub fn digits(n: u64, radix: Radix, width: Option<usize>) -> Result<DigitString> {
    let natural = radix.digit_count(n);
    let width = match width {
        Some(w) if w < natural && !(n == 0 && w == 0) => {
            return Err(Error::WidthTooSmall {
                n,
                radix: radix.get(),
                width: w,
            })
        }
        Some(w) => w,
        None => natural,
    };
    Ok(DigitString {
        radix,
        digits: fill_digits(n, radix, width),
    })
}

fn fill_digits(mut n: u64, radix: Radix, width: usize) -> Vec<u32> {
    let k = u64::from(radix.get());
    let mut out = vec![0u32; width];
    for slot in out.iter_mut().rev() {
        *slot = (n % k) as u32;
        n /= k;
    }
    out
}

/// A word over the pair alphabet `Σ_k × Σ_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairWord {
    radix: Radix,
    letters: Vec<(u32, u32)>,
}

impl PairWord {
    pub fn new(radix: Radix, letters: Vec<(u32, u32)>) -> Result<PairWord> {
        let k = radix.get();
        if let Some(&(a, b)) = letters.iter().find(|&&(a, b)| a >= k || b >= k) {
            return Err(Error::InvalidMachine(format!(
                "letter ({a},{b}) is not below radix {k}"
            )));
        }
        Ok(PairWord { radix, letters })
    }

    pub fn radix(&self) -> Radix {
        self.radix
    }

    pub fn letters(&self) -> &[(u32, u32)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The pair of integers read off the two tracks.
    pub fn decode(&self) -> Option<(u64, u64)> {
        let i = decode_digits(self.radix, self.letters.iter().map(|l| l.0))?;
        let j = decode_digits(self.radix, self.letters.iter().map(|l| l.1))?;
        Some((i, j))
    }

    /// The same pair with `extra` synchronized leading zeros.
    pub fn padded(&self, extra: usize) -> PairWord {
        let mut letters = vec![(0, 0); extra];
        letters.extend_from_slice(&self.letters);
        PairWord {
            radix: self.radix,
            letters,
        }
    }
}

impl fmt::Display for PairWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "ε");
        }
        for (a, b) in &self.letters {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

/// Synchronized encoding of `(i, j)`: both numbers at the common width
/// `max(|(i)_k|, |(j)_k|)`, zipped digit by digit.
pub fn pair_encode(i: u64, j: u64, radix: Radix) -> PairWord {
    let width = radix.digit_count(i).max(radix.digit_count(j));
    let left = fill_digits(i, radix, width);
    let right = fill_digits(j, radix, width);
    PairWord {
        radix,
        letters: left.into_iter().zip(right).collect(),
    }
}

/// A linear order on ℕ, queried one pair at a time.
///
/// Implementations must return `Eq` exactly on the diagonal, be antisymmetric
/// and transitive. Sources that can fail (finite prefixes, depth limits)
/// report errors instead of guessing.
pub trait PermutationOracle {
    fn compare(&self, i: u64, j: u64) -> Result<Relation>;

    fn radix(&self) -> Option<Radix> {
        None
    }
}

impl<T: PermutationOracle + ?Sized> PermutationOracle for &T {
    fn compare(&self, i: u64, j: u64) -> Result<Relation> {
        (**self).compare(i, j)
    }

    fn radix(&self) -> Option<Radix> {
        (**self).radix()
    }
}

impl<T: PermutationOracle + ?Sized> PermutationOracle for Box<T> {
    fn compare(&self, i: u64, j: u64) -> Result<Relation> {
        (**self).compare(i, j)
    }

    fn radix(&self) -> Option<Radix> {
        (**self).radix()
    }
}

/// Adapts a closure into an oracle.
pub struct FnOracle<F> {
    f: F,
    radix: Option<Radix>,
}

impl<F> FnOracle<F>
where
    F: Fn(u64, u64) -> Relation,
{
    pub fn new(f: F) -> Self {
        FnOracle { f, radix: None }
    }

    pub fn with_radix(mut self, radix: Radix) -> Self {
        self.radix = Some(radix);
        self
    }
}

impl<F> PermutationOracle for FnOracle<F>
where
    F: Fn(u64, u64) -> Relation,
{
    fn compare(&self, i: u64, j: u64) -> Result<Relation> {
        Ok((self.f)(i, j))
    }

    fn radix(&self) -> Option<Radix> {
        self.radix
    }
}

/// The increasing permutation `α_0 < α_1 < ⋯`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Increasing;

impl PermutationOracle for Increasing {
    fn compare(&self, i: u64, j: u64) -> Result<Relation> {
        Ok(i.cmp(&j).into())
    }
}

/// The finite permutation induced on the first `N` entries, as 1-based ranks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankingWindow {
    ranks: Vec<usize>,
}

impl RankingWindow {
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Indices listed from the smallest entry to the largest.
    pub fn ascending(&self) -> Vec<usize> {
        let mut order = vec![0; self.ranks.len()];
        for (i, &r) in self.ranks.iter().enumerate() {
            order[r - 1] = i;
        }
        order
    }
}

impl fmt::Display for RankingWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ranks.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Ranks the first `n` entries of the oracle, verifying the order contract
/// on every pair and triple of the window.
pub fn rank_window<O: PermutationOracle + ?Sized>(oracle: &O, n: usize) -> Result<RankingWindow> {
    if n == 0 {
        return Err(Error::EmptyWindow);
    }
    let idx = |x: usize| x as u64;
    // rel[i * n + j] = compare(i, j)
    let mut rel = vec![Relation::Eq; n * n];
    for i in 0..n {
        if oracle.compare(idx(i), idx(i))? != Relation::Eq {
            return Err(Error::InconsistentOrder {
                i: idx(i),
                j: idx(i),
            });
        }
        for j in (i + 1)..n {
            let forward = oracle.compare(idx(i), idx(j))?;
            let backward = oracle.compare(idx(j), idx(i))?;
            if forward == Relation::Eq || backward != forward.flip() {
                return Err(Error::InconsistentOrder {
                    i: idx(i),
                    j: idx(j),
                });
            }
            rel[i * n + j] = forward;
            rel[j * n + i] = backward;
        }
    }

    let ranks: Vec<usize> = (0..n)
        .map(|i| 1 + (0..n).filter(|&j| rel[j * n + i] == Relation::Lt).count())
        .collect();

    // A tournament is transitive iff its scores are pairwise distinct.
    let mut seen = vec![false; n + 1];
    if ranks
        .iter()
        .all(|&r| !std::mem::replace(&mut seen[r], true))
    {
        return Ok(RankingWindow { ranks });
    }
    for i in 0..n {
        for j in 0..n {
            if j == i {
                continue;
            }
            for l in 0..n {
                if l == i || l == j {
                    continue;
                }
                let r = rel[i * n + j];
                if rel[j * n + l] == r && rel[l * n + i] == r {
                    return Err(Error::InconsistentTriple {
                        i: idx(i),
                        j: idx(j),
                        l: idx(l),
                    });
                }
            }
        }
    }
    unreachable!("non-transitive tournament without a 3-cycle")
}
