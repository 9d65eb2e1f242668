//! Built-in machines, morphisms and oracles.

use std::fmt;

use crate::automaton::{minimize, ComparisonAutomaton};
use crate::error::{Error, Result};
use crate::perm::{PermutationOracle, Radix, Relation};
use crate::words::{Coding, RelationSequence, Squares, UniformMorphism};

const TM_LABELS: [&str; 8] = ["0=0", "1=1", "0<1", "1>0", "0>0", "1>1", "0<0", "1<1"];

/// The 8-state Thue-Morse permutation automaton. State names record the
/// letters `w_i`, `w_j` and the relation between the suffixes.
pub fn thue_morse_automaton() -> ComparisonAutomaton {
    use Relation::*;
    let outputs = [Eq, Eq, Lt, Gt, Gt, Gt, Lt, Lt];
    // (0,1) and (1,0) targets per state
    let cross: [(usize, usize); 8] = [
        (2, 3), // 0=0
        (3, 2), // 1=1
        (4, 5), // 0<1
        (6, 7), // 1>0
        (2, 3), // 0>0
        (3, 2), // 1>1
        (3, 2), // 0<0
        (2, 3), // 1<1
    ];
    ComparisonAutomaton::from_fn(
        Radix::BINARY,
        8,
        0,
        |q| outputs[q],
        |q, a, b| match (a, b) {
            (0, 0) => q,
            (1, 1) => q ^ 1,
            (0, 1) => cross[q].0,
            _ => cross[q].1,
        },
    )
    .and_then(|m| m.with_labels(TM_LABELS.iter().map(|s| s.to_string()).collect()))
    .expect("static table")
}

pub fn thue_morse_morphism() -> (UniformMorphism, Coding) {
    let m = UniformMorphism::from_rules(2, &[("0", &["0", "1"]), ("1", &["1", "0"])], "0")
        .expect("static rules");
    let c = Coding::identity(&m).expect("digit letters");
    (m, c)
}

/// `0 → 01, 1 → 00`.
pub fn period_doubling_morphism() -> (UniformMorphism, Coding) {
    let m = UniformMorphism::from_rules(2, &[("0", &["0", "1"]), ("1", &["0", "0"])], "0")
        .expect("static rules");
    let c = Coding::identity(&m).expect("digit letters");
    (m, c)
}

/// Numeric order: the first unequal digit pair decides, then absorbs.
/// States are `=` (initial), `<`, `>`.
pub fn monotone(radix: Radix) -> ComparisonAutomaton {
    ComparisonAutomaton::from_fn(
        radix,
        3,
        0,
        |q| [Relation::Eq, Relation::Lt, Relation::Gt][q],
        |q, a, b| match q {
            0 => match a.cmp(&b) {
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Less => 1,
                std::cmp::Ordering::Greater => 2,
            },
            q => q,
        },
    )
    .and_then(|m| m.with_labels(vec!["=".into(), "<".into(), ">".into()]))
    .expect("static table")
}

/// `α_n` realized by `(-1/2)^n`: evens decreasing, odds increasing, every
/// even above every odd.
#[derive(Debug, Clone, Copy, Default)]
pub struct Example1;

impl Example1 {
    pub fn relation(i: u64, j: u64) -> Relation {
        match (i % 2, j % 2) {
            (0, 0) => j.cmp(&i).into(),
            (1, 1) => i.cmp(&j).into(),
            (0, _) => Relation::Gt,
            _ => Relation::Lt,
        }
    }
}

impl PermutationOracle for Example1 {
    fn compare(&self, i: u64, j: u64) -> Result<Relation> {
        Ok(Self::relation(i, j))
    }

    fn radix(&self) -> Option<Radix> {
        Some(Radix::BINARY)
    }
}

/// Binary machine for [`Example1`]: numeric order tracking paired with the
/// last digit pair (the parities), minimized.
pub fn example1_automaton() -> ComparisonAutomaton {
    // state = order * 4 + 2a + b with order 0 '=', 1 '<', 2 '>'
    let raw = ComparisonAutomaton::from_fn(
        Radix::BINARY,
        12,
        0,
        |q| {
            let order = [Relation::Eq, Relation::Lt, Relation::Gt][q / 4];
            match q % 4 {
                0 => order.flip(),
                3 => order,
                1 => Relation::Gt,
                _ => Relation::Lt,
            }
        },
        |q, a, b| {
            let order = match q / 4 {
                0 => match a.cmp(&b) {
                    std::cmp::Ordering::Equal => 0,
                    std::cmp::Ordering::Less => 1,
                    std::cmp::Ordering::Greater => 2,
                },
                o => o,
            };
            order * 4 + (2 * a + b) as usize
        },
    )
    .expect("static table");
    minimize(&raw)
}

/// A permutation whose 2-kernel is `{α, increasing}` while the relation
/// between `α_{2j}` and `α_{2j+1}` follows an arbitrary sequence `u`.
///
/// Realized by `b_{2j+1} = j` and `b_{2j} = j ∓ 1/4` (minus when `u_j` is
/// `<`), so `α_j < α_{j+2}` and `α_{2j+1} < α_{2j+2}` for all `j`.
pub struct KNotA<U> {
    u: U,
}

impl<U: RelationSequence> KNotA<U> {
    pub fn new(u: U) -> Self {
        KNotA { u }
    }

    /// Four times the realizing value.
    fn scaled(&self, n: u64) -> i128 {
        let j = i128::from(n / 2);
        if n % 2 == 1 {
            4 * j
        } else if self.u.relation_at(n / 2) == Relation::Lt {
            4 * j - 1
        } else {
            4 * j + 1
        }
    }
}

impl<U: RelationSequence> PermutationOracle for KNotA<U> {
    fn compare(&self, i: u64, j: u64) -> Result<Relation> {
        Ok(self.scaled(i).cmp(&self.scaled(j)).into())
    }

    fn radix(&self) -> Option<Radix> {
        Some(Radix::BINARY)
    }
}

/// Whatever a builtin name resolves to.
pub enum Artifact {
    Machine(ComparisonAutomaton),
    Morphism(UniformMorphism, Coding),
    Oracle {
        oracle: Box<dyn PermutationOracle + Send + Sync>,
        machine: Option<ComparisonAutomaton>,
        radix: Radix,
    },
}

impl fmt::Debug for Artifact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Artifact::Machine(m) => f.debug_tuple("Machine").field(m).finish(),
            Artifact::Morphism(m, c) => f.debug_tuple("Morphism").field(m).field(c).finish(),
            Artifact::Oracle { machine, radix, .. } => f
                .debug_struct("Oracle")
                .field("machine", machine)
                .field("radix", radix)
                .finish_non_exhaustive(),
        }
    }
}

pub const CATALOG: &[(&str, &str)] = &[
    (
        "thue-morse-automaton",
        "8-state Thue-Morse permutation automaton",
    ),
    (
        "thue-morse-morphism",
        "0 -> 01, 1 -> 10 with the identity coding",
    ),
    (
        "period-doubling-morphism",
        "0 -> 01, 1 -> 00 with the identity coding",
    ),
    (
        "monotone",
        "increasing permutation, 3-state machine (param k, default 2)",
    ),
    (
        "example1",
        "evens decreasing above increasing odds: oracle and machine",
    ),
    (
        "k-not-a",
        "2-kernel {α, increasing} with γ(2j,2j+1) = u_j (param u=squares|lt|gt)",
    ),
];

fn param<'a>(params: &'a [(String, String)], key: &str) -> Option<&'a str> {
    params
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
}

fn only(params: &[(String, String)], allowed: &[&str]) -> Result<()> {
    match params.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
        Some((k, _)) => Err(Error::BadParam(format!("unexpected parameter '{k}'"))),
        None => Ok(()),
    }
}

pub fn builtin(name: &str, params: &[(String, String)]) -> Result<Artifact> {
    match name {
        "thue-morse-automaton" => {
            only(params, &[])?;
            Ok(Artifact::Machine(thue_morse_automaton()))
        }
        "thue-morse-morphism" => {
            only(params, &[])?;
            let (m, c) = thue_morse_morphism();
            Ok(Artifact::Morphism(m, c))
        }
        "period-doubling-morphism" => {
            only(params, &[])?;
            let (m, c) = period_doubling_morphism();
            Ok(Artifact::Morphism(m, c))
        }
        "monotone" => {
            only(params, &["k"])?;
            let k = match param(params, "k") {
                Some(v) => v
                    .parse()
                    .map_err(|_| Error::BadParam(format!("k must be an integer, got '{v}'")))?,
                None => 2,
            };
            let radix = Radix::new(k).map_err(|e| Error::BadParam(e.to_string()))?;
            Ok(Artifact::Machine(monotone(radix)))
        }
        "example1" => {
            only(params, &[])?;
            Ok(Artifact::Oracle {
                oracle: Box::new(Example1),
                machine: Some(example1_automaton()),
                radix: Radix::BINARY,
            })
        }
        "k-not-a" => {
            only(params, &["u"])?;
            let oracle: Box<dyn PermutationOracle + Send + Sync> = match param(params, "u") {
                None | Some("squares") => Box::new(KNotA::new(Squares)),
                Some("lt") => Box::new(KNotA::new(|_| Relation::Lt)),
                Some("gt") => Box::new(KNotA::new(|_| Relation::Gt)),
                Some(v) => return Err(Error::BadParam(format!("unknown sequence u={v}"))),
            };
            Ok(Artifact::Oracle {
                oracle,
                machine: None,
                radix: Radix::BINARY,
            })
        }
        _ => Err(Error::UnknownBuiltin(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{parse_automaton, serialize_automaton};
    use crate::perm::rank_window;
    use crate::validity::is_permutation;

    #[test]
    fn catalog_entries_resolve() {
        for (name, _) in CATALOG {
            builtin(name, &[]).unwrap();
        }
        assert!(matches!(
            builtin("nope", &[]),
            Err(Error::UnknownBuiltin(_))
        ));
        let bad = [("x".to_string(), "1".to_string())];
        assert!(matches!(builtin("monotone", &bad), Err(Error::BadParam(_))));
    }

    #[test]
    fn builtin_examples() {
        let Artifact::Machine(tm) = builtin("thue-morse-automaton", &[]).unwrap() else {
            panic!()
        };
        assert_eq!(tm.state_count(), 8);
        assert_eq!(tm.compare(0, 3), Relation::Gt);

        let Artifact::Machine(mono) = builtin("monotone", &[]).unwrap() else {
            panic!()
        };
        let o = mono
            .as_oracle(crate::automaton::OracleMode::Checked)
            .unwrap();
        assert_eq!(rank_window(&o, 5).unwrap().ranks(), &[1, 2, 3, 4, 5]);

        let Artifact::Oracle { oracle, .. } =
            builtin("k-not-a", &[("u".into(), "squares".into())]).unwrap()
        else {
            panic!()
        };
        assert_eq!(oracle.compare(0, 1), Ok(Relation::Lt));
    }

    #[test]
    fn example1_ranks() {
        assert_eq!(
            rank_window(&Example1, 6).unwrap().ranks(),
            &[6, 1, 5, 2, 4, 3]
        );
    }

    #[test]
    fn example1_machine_matches_closed_form() {
        let m = example1_automaton();
        assert!(m.state_count() <= 13);
        assert!(is_permutation(&m).is_permutation());
        for i in 0..512 {
            for j in 0..512 {
                assert_eq!(m.compare(i, j), Example1::relation(i, j), "({i},{j})");
            }
        }
    }

    #[test]
    fn k_not_a_generating_relations() {
        let o = KNotA::new(Squares);
        for j in 0..1024u64 {
            assert_eq!(o.compare(j, j + 2), Ok(Relation::Lt));
            assert_eq!(o.compare(2 * j + 1, 2 * j + 2), Ok(Relation::Lt));
            assert_eq!(o.compare(2 * j, 2 * j + 1), Ok(Squares.relation_at(j)));
        }
    }

    #[test]
    fn catalog_machines_round_trip() {
        let machines = [
            thue_morse_automaton(),
            monotone(Radix::BINARY),
            monotone(Radix::new(5).unwrap()),
            example1_automaton(),
        ];
        for m in machines {
            assert_eq!(parse_automaton(&serialize_automaton(&m)).unwrap(), m);
        }
    }
}
