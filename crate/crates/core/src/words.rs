//! Infinite words: uniform morphisms and their fixed points, codings, word
//! automata, and the permutation a word induces by ordering its suffixes.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::perm::{digits, PermutationOracle, Radix, Relation};

pub const DEFAULT_DEPTH: usize = 1024;

/// A k-uniform morphism `φ: Δ → Δ^k` with a seed letter `a` such that
/// `φ(a)` starts with `a`. Letters are indices into the alphabet table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformMorphism {
    radix: Radix,
    alphabet: Vec<String>,
    images: Vec<Vec<usize>>,
    seed: usize,
}

impl UniformMorphism {
    pub fn new(
        radix: Radix,
        alphabet: Vec<String>,
        images: Vec<Vec<usize>>,
        seed: usize,
    ) -> Result<Self> {
        let d = alphabet.len();
        let k = radix.get() as usize;
        let bad = |msg: String| Err(Error::InvalidMorphism(msg));
        if d == 0 {
            return bad("empty alphabet".into());
        }
        let distinct: BTreeSet<&String> = alphabet.iter().collect();
        if distinct.len() != d {
            return bad("alphabet has repeated letters".into());
        }
        if images.len() != d {
            return bad(format!("{} images for {d} letters", images.len()));
        }
        for (x, img) in images.iter().enumerate() {
            if img.len() != k {
                return bad(format!(
                    "image of '{}' has length {}, expected {k}",
                    alphabet[x],
                    img.len()
                ));
            }
            if img.iter().any(|&y| y >= d) {
                return bad(format!("image of '{}' leaves the alphabet", alphabet[x]));
            }
        }
        if seed >= d {
            return bad("seed outside the alphabet".into());
        }
        if images[seed][0] != seed {
            return bad(format!(
                "image of seed '{}' does not start with it",
                alphabet[seed]
            ));
        }
        Ok(UniformMorphism {
            radix,
            alphabet,
            images,
            seed,
        })
    }

    /// Builds a morphism from rules written with letter names.
    pub fn from_rules(k: u32, rules: &[(&str, &[&str])], seed: &str) -> Result<Self> {
        let alphabet: Vec<String> = rules.iter().map(|(a, _)| a.to_string()).collect();
        let find = |tok: &str| {
            alphabet
                .iter()
                .position(|a| a == tok)
                .ok_or_else(|| Error::InvalidMorphism(format!("unknown letter '{tok}'")))
        };
        let images = rules
            .iter()
            .map(|(_, img)| img.iter().map(|t| find(t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let seed = find(seed)?;
        Self::new(Radix::new(k)?, alphabet, images, seed)
    }

    pub fn radix(&self) -> Radix {
        self.radix
    }

    pub fn letter_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn letter_name(&self, x: usize) -> &str {
        &self.alphabet[x]
    }

    pub fn seed(&self) -> usize {
        self.seed
    }

    pub fn image(&self, x: usize) -> &[usize] {
        &self.images[x]
    }

    /// `φ(st)`: the concatenated images of a two-letter word.
    pub fn image2(&self, [s, t]: [usize; 2]) -> Vec<usize> {
        let mut out = self.images[s].clone();
        out.extend_from_slice(&self.images[t]);
        out
    }

    /// The first `len` letters of the fixed point starting with the seed.
    pub fn fixed_point_prefix(&self, len: usize) -> Vec<usize> {
        let mut w = vec![self.seed];
        let mut next = 0;
        while w.len() < len {
            let img = &self.images[w[next]];
            // φ(w[0]) = w[0] ⋯, so its first letter is already in place
            let tail = if next == 0 { &img[1..] } else { &img[..] };
            w.extend_from_slice(tail);
            next += 1;
        }
        w.truncate(len);
        w
    }

    /// The set `P` of two-letter factors of the fixed point.
    pub fn factor_closure(&self) -> BTreeSet<[usize; 2]> {
        // factors of φ^{m+1}(seed) are the internal factors of images of
        // letters of φ^m(seed) plus boundary factors of images of its factors
        let mut letters: BTreeSet<usize> = BTreeSet::from([self.seed]);
        let mut factors: BTreeSet<[usize; 2]> = BTreeSet::new();
        loop {
            let mut next_letters = letters.clone();
            let mut next_factors = factors.clone();
            for &x in &letters {
                let img = &self.images[x];
                next_letters.extend(img.iter().copied());
                next_factors.extend(img.windows(2).map(|p| [p[0], p[1]]));
            }
            let last = self.radix.get() as usize - 1;
            for &[s, t] in &factors {
                next_factors.insert([self.images[s][last], self.images[t][0]]);
            }
            if next_letters == letters && next_factors == factors {
                return factors;
            }
            letters = next_letters;
            factors = next_factors;
        }
    }

    /// Two-letter factors of the fixed point in order of first appearance,
    /// overlapping occurrences included.
    pub fn factor2_appearance_order(&self) -> Vec<[usize; 2]> {
        let closure = self.factor_closure();
        let mut order: Vec<[usize; 2]> = Vec::with_capacity(closure.len());
        let mut len = 64;
        loop {
            let w = self.fixed_point_prefix(len);
            order.clear();
            for p in w.windows(2) {
                let f = [p[0], p[1]];
                if !order.contains(&f) {
                    order.push(f);
                }
            }
            if order.len() == closure.len() {
                return order;
            }
            len *= 2;
        }
    }

    /// Position just past the first occurrence of the last new factor, i.e.
    /// the shortest prefix length containing every factor of `P`.
    pub fn factor_cover_length(&self) -> usize {
        let order = self.factor2_appearance_order();
        let last = *order.last().expect("fixed point has length-2 factors");
        let mut len = 64;
        loop {
            let w = self.fixed_point_prefix(len);
            if let Some(pos) = w.windows(2).position(|p| [p[0], p[1]] == last) {
                return pos + 2;
            }
            len *= 2;
        }
    }
}

/// A letter-to-letter map `c: Δ → Σ_q`, output letters being base-q digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coding {
    map: Vec<u32>,
}

impl Coding {
    pub fn new(map: Vec<u32>) -> Self {
        Coding { map }
    }

    /// Reads each letter name as its own digit value.
    pub fn identity(m: &UniformMorphism) -> Result<Self> {
        let map = m
            .alphabet()
            .iter()
            .map(|a| {
                a.parse::<u32>().map_err(|_| {
                    Error::InvalidMorphism(format!(
                        "letter '{a}' is not a digit; an explicit coding is required"
                    ))
                })
            })
            .collect::<Result<_>>()?;
        Ok(Coding { map })
    }

    pub fn apply(&self, x: usize) -> u32 {
        self.map[x]
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `q`: one more than the largest output digit, and at least 2.
    pub fn alphabet_size(&self) -> u32 {
        self.map.iter().copied().max().map_or(2, |m| (m + 1).max(2))
    }

    fn check(&self, m: &UniformMorphism) -> Result<()> {
        if self.map.len() != m.letter_count() {
            return Err(Error::InvalidMorphism(format!(
                "coding covers {} letters, alphabet has {}",
                self.map.len(),
                m.letter_count()
            )));
        }
        Ok(())
    }
}

pub const MORPHISM_HEADER: &str = "perm-morphism v1";

/// Parses the `perm-morphism v1` format.
///
/// ```text
/// perm-morphism v1
/// k 2
/// alphabet 0 1
/// seed 0
/// rule 0 -> 0 1
/// rule 1 -> 1 0
/// coding 0 -> 0
/// coding 1 -> 1
/// ```
pub fn parse_morphism(text: &str) -> Result<(UniformMorphism, Coding)> {
    let syntax = |line: usize, message: String| Error::Syntax { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, l)) if l.split_whitespace().eq(MORPHISM_HEADER.split_whitespace()) => {}
        Some((n, l)) => {
            return Err(syntax(
                n,
                format!("expected '{MORPHISM_HEADER}', found '{l}'"),
            ))
        }
        None => return Err(syntax(1, format!("missing '{MORPHISM_HEADER}' header"))),
    }

    let mut k: Option<u32> = None;
    let mut alphabet: Option<Vec<String>> = None;
    let mut seed: Option<(String, usize)> = None;
    let mut rules: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut codings: Vec<(usize, String, String)> = Vec::new();

    for (n, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["k", v] if k.is_none() => {
                k = Some(
                    v.parse()
                        .map_err(|_| syntax(n, format!("bad radix '{v}'")))?,
                );
            }
            ["alphabet", letters @ ..] if alphabet.is_none() && !letters.is_empty() => {
                alphabet = Some(letters.iter().map(|s| s.to_string()).collect());
            }
            ["seed", s] if seed.is_none() => seed = Some((s.to_string(), n)),
            ["rule", x, "->", img @ ..] => rules.push((
                n,
                x.to_string(),
                img.iter().map(|s| s.to_string()).collect(),
            )),
            ["coding", x, "->", y] => codings.push((n, x.to_string(), y.to_string())),
            ["k" | "alphabet" | "seed", ..] => {
                return Err(syntax(n, format!("duplicate or malformed '{}'", toks[0])))
            }
            _ => return Err(syntax(n, format!("unrecognized line '{line}'"))),
        }
    }

    let radix = Radix::new(k.ok_or_else(|| syntax(0, "missing 'k'".into()))?)?;
    let alphabet = alphabet.ok_or_else(|| syntax(0, "missing 'alphabet'".into()))?;
    let (seed_tok, seed_line) = seed.ok_or_else(|| syntax(0, "missing 'seed'".into()))?;
    let find = |tok: &str, n: usize| {
        alphabet
            .iter()
            .position(|a| a == tok)
            .ok_or_else(|| syntax(n, format!("unknown letter '{tok}'")))
    };

    let mut images: Vec<Option<Vec<usize>>> = vec![None; alphabet.len()];
    for (n, x, img) in &rules {
        let xi = find(x, *n)?;
        if img.len() != radix.get() as usize {
            return Err(syntax(
                *n,
                format!("image has {} letters, expected {radix}", img.len()),
            ));
        }
        let img = img
            .iter()
            .map(|t| find(t, *n))
            .collect::<Result<Vec<_>>>()?;
        if images[xi].replace(img).is_some() {
            return Err(syntax(*n, format!("duplicate rule for '{x}'")));
        }
    }
    let mut coding: Vec<Option<u32>> = vec![None; alphabet.len()];
    for (n, x, y) in &codings {
        let xi = find(x, *n)?;
        let v: u32 = y
            .parse()
            .map_err(|_| syntax(*n, format!("coding target '{y}' is not a digit")))?;
        if coding[xi].replace(v).is_some() {
            return Err(syntax(*n, format!("duplicate coding for '{x}'")));
        }
    }
    if let Some(x) = images.iter().position(Option::is_none) {
        return Err(Error::InvalidMorphism(format!(
            "no rule for '{}'",
            alphabet[x]
        )));
    }
    if let Some(x) = coding.iter().position(Option::is_none) {
        return Err(Error::InvalidMorphism(format!(
            "no coding for '{}'",
            alphabet[x]
        )));
    }
    let seed = find(&seed_tok, seed_line)?;
    let morphism = UniformMorphism::new(
        radix,
        alphabet,
        images.into_iter().flatten().collect(),
        seed,
    )?;
    let coding = Coding::new(coding.into_iter().flatten().collect());
    Ok((morphism, coding))
}

pub fn serialize_morphism(m: &UniformMorphism, c: &Coding) -> String {
    let mut out = String::new();
    writeln!(out, "{MORPHISM_HEADER}").unwrap();
    writeln!(out, "k {}", m.radix()).unwrap();
    writeln!(out, "alphabet {}", m.alphabet().join(" ")).unwrap();
    writeln!(out, "seed {}", m.letter_name(m.seed())).unwrap();
    for x in 0..m.letter_count() {
        let img: Vec<&str> = m.image(x).iter().map(|&y| m.letter_name(y)).collect();
        writeln!(out, "rule {} -> {}", m.letter_name(x), img.join(" ")).unwrap();
    }
    for x in 0..m.letter_count() {
        writeln!(out, "coding {} -> {}", m.letter_name(x), c.apply(x)).unwrap();
    }
    out
}

/// A letter-valued infinite (or finitely known) word.
pub trait WordSource {
    fn letter_at(&self, n: u64) -> u32;

    /// Number of letters available, `None` for an infinite word.
    fn known_len(&self) -> Option<u64> {
        None
    }
}

impl<T: WordSource + ?Sized> WordSource for &T {
    fn letter_at(&self, n: u64) -> u32 {
        (**self).letter_at(n)
    }

    fn known_len(&self) -> Option<u64> {
        (**self).known_len()
    }
}

/// A finite prefix of a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixWord(pub Vec<u32>);

impl WordSource for PrefixWord {
    fn letter_at(&self, n: u64) -> u32 {
        self.0[n as usize]
    }

    fn known_len(&self) -> Option<u64> {
        Some(self.0.len() as u64)
    }
}

/// `u v v v ⋯`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UltimatelyPeriodic {
    prefix: Vec<u32>,
    period: Vec<u32>,
}

impl UltimatelyPeriodic {
    pub fn new(prefix: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::BadParam("period must be non-empty".into()));
        }
        Ok(UltimatelyPeriodic { prefix, period })
    }

    pub fn periodic(period: Vec<u32>) -> Result<Self> {
        Self::new(Vec::new(), period)
    }

    /// Parses digit notation such as `0.(10)`, `.1(0)` or `(01)`: digits
    /// before the parentheses are the prefix, the parenthesized block
    /// repeats. Without parentheses the digits are followed by zeros.
    pub fn parse(text: &str) -> Result<Self> {
        let t: String = text.split_whitespace().collect();
        let t = t
            .strip_prefix("0.")
            .or_else(|| t.strip_prefix('.'))
            .unwrap_or(&t);
        let bad = || Error::BadParam(format!("cannot read digit expansion '{text}'"));
        let to_digits = |s: &str| {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(bad))
                .collect::<Result<Vec<u32>>>()
        };
        match t.split_once('(') {
            Some((pre, rest)) => {
                let body = rest.strip_suffix(')').ok_or_else(bad)?;
                Self::new(to_digits(pre)?, to_digits(body)?)
            }
            None => Self::new(to_digits(t)?, vec![0]),
        }
    }
}

impl WordSource for UltimatelyPeriodic {
    fn letter_at(&self, n: u64) -> u32 {
        let n = n as usize;
        if n < self.prefix.len() {
            self.prefix[n]
        } else {
            self.period[(n - self.prefix.len()) % self.period.len()]
        }
    }
}

/// Adapts a closure into a word.
pub struct FnWord<F>(pub F);

impl<F: Fn(u64) -> u32> WordSource for FnWord<F> {
    fn letter_at(&self, n: u64) -> u32 {
        (self.0)(n)
    }
}

/// A k-automatic word generator: `w_n = τ(δ(q0, (n)_k))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordAutomaton {
    radix: Radix,
    initial: usize,
    // indexed by state * k + digit
    transitions: Vec<usize>,
    outputs: Vec<u32>,
}

impl WordAutomaton {
    pub fn new(
        radix: Radix,
        initial: usize,
        transitions: Vec<usize>,
        outputs: Vec<u32>,
    ) -> Result<Self> {
        let n = outputs.len();
        let k = radix.get() as usize;
        if n == 0
            || initial >= n
            || transitions.len() != n * k
            || transitions.iter().any(|&t| t >= n)
        {
            return Err(Error::InvalidMachine("incomplete word automaton".into()));
        }
        if transitions[initial * k] != initial {
            return Err(Error::InvalidMachine(
                "initial state must loop on digit 0".into(),
            ));
        }
        Ok(WordAutomaton {
            radix,
            initial,
            transitions,
            outputs,
        })
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

    pub fn step(&self, q: usize, d: u32) -> usize {
        self.transitions[q * self.radix.get() as usize + d as usize]
    }

    pub fn output(&self, q: usize) -> u32 {
        self.outputs[q]
    }

    /// `w_n`.
    pub fn eval(&self, n: u64) -> u32 {
        let ds = digits(n, self.radix, None).expect("no width constraint");
        let q = ds
            .digits()
            .iter()
            .fold(self.initial, |q, &d| self.step(q, d));
        self.outputs[q]
    }
}

impl WordSource for WordAutomaton {
    fn letter_at(&self, n: u64) -> u32 {
        self.eval(n)
    }
}

/// The Cobham construction: states are the letters, reading digit `d` in
/// state `x` moves to `φ(x)_d`, and the output is the coding.
pub fn word_automaton_from_morphism(m: &UniformMorphism, c: &Coding) -> Result<WordAutomaton> {
    c.check(m)?;
    let transitions = (0..m.letter_count())
        .flat_map(|x| m.image(x).iter().copied())
        .collect();
    let outputs = (0..m.letter_count()).map(|x| c.apply(x)).collect();
    WordAutomaton::new(m.radix(), m.seed(), transitions, outputs)
}

/// `w_n` for a word automaton.
pub fn word_eval(w: &WordAutomaton, n: u64) -> u32 {
    w.eval(n)
}

/// The coded fixed point `c(w)` as a finite prefix.
pub fn coded_prefix(m: &UniformMorphism, c: &Coding, len: usize) -> Result<PrefixWord> {
    c.check(m)?;
    Ok(PrefixWord(
        m.fixed_point_prefix(len)
            .into_iter()
            .map(|x| c.apply(x))
            .collect(),
    ))
}

fn letter<S: WordSource + ?Sized>(src: &S, n: u64, q: u32) -> Result<u32> {
    if let Some(len) = src.known_len() {
        if n >= len {
            return Err(Error::PrefixTooShort {
                needed: n,
                available: len,
            });
        }
    }
    let x = src.letter_at(n);
    if x >= q {
        return Err(Error::LetterOutOfRange {
            index: n,
            letter: x,
            q,
        });
    }
    Ok(x)
}

/// Orders the suffixes at `i` and `j` lexicographically, which is the order
/// of the base-q values `.w_i w_{i+1} ⋯` and `.w_j w_{j+1} ⋯`.
///
/// Only `i == j` yields `Eq`; agreement over `depth` letters is an error.
pub fn suffix_compare<S: WordSource + ?Sized>(
    src: &S,
    q: u32,
    i: u64,
    j: u64,
    depth: usize,
) -> Result<Relation> {
    if depth == 0 {
        return Err(Error::InvalidDepth);
    }
    if i == j {
        return Ok(Relation::Eq);
    }
    for m in 0..depth as u64 {
        let a = letter(src, i.checked_add(m).ok_or(Error::Overflow)?, q)?;
        let b = letter(src, j.checked_add(m).ok_or(Error::Overflow)?, q)?;
        if a != b {
            return Ok(a.cmp(&b).into());
        }
    }
    Err(Error::DepthExceeded { i, j, depth })
}

/// The valid permutation generated by a word: `α_i < α_j` iff the suffix at
/// `i` is lexicographically smaller.
#[derive(Debug, Clone)]
pub struct SuffixOracle<S> {
    src: S,
    q: u32,
    depth: usize,
}

impl<S: WordSource> SuffixOracle<S> {
    pub fn new(src: S, q: u32, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidDepth);
        }
        Ok(SuffixOracle { src, q, depth })
    }

    pub fn source(&self) -> &S {
        &self.src
    }
}

impl<S: WordSource> PermutationOracle for SuffixOracle<S> {
    fn compare(&self, i: u64, j: u64) -> Result<Relation> {
        suffix_compare(&self.src, self.q, i, j, self.depth)
    }
}

pub fn valid_permutation_oracle<S: WordSource>(
    src: S,
    q: u32,
    depth: usize,
) -> Result<SuffixOracle<S>> {
    SuffixOracle::new(src, q, depth)
}

/// A constant `C` in `[0, 1]` given by its digit expansion.
pub struct ThresholdWord<S>(pub S);

/// Letter `n` of the relabeled word: `2` where `w_n = 1` and the suffix at
/// `n` exceeds `C`, otherwise `w_n`.
pub fn threshold_relabel<S, T>(src: &S, c: &ThresholdWord<T>, n: u64, depth: usize) -> Result<u32>
where
    S: WordSource + ?Sized,
    T: WordSource,
{
    if depth == 0 {
        return Err(Error::InvalidDepth);
    }
    let x = letter(src, n, u32::MAX)?;
    if x > 1 {
        return Err(Error::NotBinary {
            index: n,
            letter: x,
        });
    }
    if x == 0 {
        return Ok(0);
    }
    for m in 0..depth as u64 {
        let a = letter(src, n.checked_add(m).ok_or(Error::Overflow)?, 2)?;
        let b = letter(&c.0, m, 2)?;
        if a != b {
            return Ok(if a > b { 2 } else { 1 });
        }
    }
    Err(Error::DepthExceeded { i: n, j: n, depth })
}

/// The first `len` letters of the relabeled word.
pub fn relabel_prefix<S, T>(
    src: &S,
    c: &ThresholdWord<T>,
    len: usize,
    depth: usize,
) -> Result<PrefixWord>
where
    S: WordSource + ?Sized,
    T: WordSource,
{
    (0..len as u64)
        .map(|n| threshold_relabel(src, c, n, depth))
        .collect::<Result<Vec<_>>>()
        .map(PrefixWord)
}

/// A word over `{<, >}`.
pub trait RelationSequence {
    fn relation_at(&self, j: u64) -> Relation;
}

impl<F: Fn(u64) -> Relation> RelationSequence for F {
    fn relation_at(&self, j: u64) -> Relation {
        self(j)
    }
}

/// `u_j = <` exactly when `j` is a perfect square.
#[derive(Debug, Clone, Copy, Default)]
pub struct Squares;

impl RelationSequence for Squares {
    fn relation_at(&self, j: u64) -> Relation {
        let r = j.isqrt();
        if r * r == j {
            Relation::Lt
        } else {
            Relation::Gt
        }
    }
}
