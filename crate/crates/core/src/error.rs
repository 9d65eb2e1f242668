use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("radix must be at least 2, got {0}")]
    InvalidRadix(u32),

    #[error("{n} needs more than {width} base-{radix} digits")]
    WidthTooSmall { n: u64, radix: u32, width: usize },

    #[error("window size must be at least 1")]
    EmptyWindow,

    #[error("oracle is not antisymmetric or not irreflexive at ({i}, {j})")]
    InconsistentOrder { i: u64, j: u64 },

    #[error("oracle is not transitive on ({i}, {j}, {l})")]
    InconsistentTriple { i: u64, j: u64, l: u64 },

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("incomplete automaton: {}", describe_missing(.outputs, .transitions))]
    Incomplete {
        outputs: Vec<usize>,
        transitions: Vec<(usize, u32, u32)>,
    },

    #[error("invalid machine: {0}")]
    InvalidMachine(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("radix mismatch: {0} vs {1}")]
    RadixMismatch(u32, u32),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("suffixes at {i} and {j} agree on the first {depth} letters")]
    DepthExceeded { i: u64, j: u64, depth: usize },

    #[error("depth must be at least 1")]
    InvalidDepth,

    #[error("letter {letter} at index {index} is not below alphabet size {q}")]
    LetterOutOfRange { index: u64, letter: u32, q: u32 },

    #[error("word prefix of length {available} is too short, index {needed} requested")]
    PrefixTooShort { needed: u64, available: u64 },

    #[error("relabeling needs a binary source word, found letter {letter} at {index}")]
    NotBinary { index: u64, letter: u32 },

    #[error("coded fixed point is ultimately periodic: input {witness} reaches an off-diagonal '=' state")]
    UltimatelyPeriodic { witness: String },

    #[error("compilation exceeded {cap} states")]
    StateExplosion { cap: usize },

    #[error("kernel element n={n} i={i} is out of range for radix {radix}")]
    KernelElementOutOfRange { n: u32, i: u64, radix: u32 },

    #[error("index arithmetic overflowed 64 bits")]
    Overflow,

    #[error("unknown builtin '{0}'")]
    UnknownBuiltin(String),

    #[error("bad parameter: {0}")]
    BadParam(String),
}

fn describe_missing(outputs: &[usize], transitions: &[(usize, u32, u32)]) -> String {
    let mut parts = Vec::new();
    if !outputs.is_empty() {
        let list: Vec<String> = outputs.iter().map(|q| q.to_string()).collect();
        parts.push(format!("missing output for states {}", list.join(", ")));
    }
    if !transitions.is_empty() {
        let list: Vec<String> = transitions
            .iter()
            .map(|(q, a, b)| format!("({q},{a},{b})"))
            .collect();
        parts.push(format!("missing transitions {}", list.join(" ")));
    }
    parts.join("; ")
}
