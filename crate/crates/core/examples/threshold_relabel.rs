//! Relabels the Thue-Morse word against 2/3 = .101010… and checks that the
//! ternary word orders its suffixes the same way.

use autoperm::fixtures;
use autoperm::words::{
    relabel_prefix, valid_permutation_oracle, word_automaton_from_morphism, ThresholdWord,
    UltimatelyPeriodic, DEFAULT_DEPTH,
};
use autoperm::{rank_window, OracleMode};

fn main() -> autoperm::Result<()> {
    let (m, c) = fixtures::thue_morse_morphism();
    let w = word_automaton_from_morphism(&m, &c)?;
    let two_thirds = ThresholdWord(UltimatelyPeriodic::parse("0.(10)")?);

    let relabeled = relabel_prefix(&w, &two_thirds, 32 + DEFAULT_DEPTH, DEFAULT_DEPTH)?;
    let head: String = relabeled.0[..32].iter().map(u32::to_string).collect();
    println!("relabeled: {head}");

    let ternary = rank_window(&valid_permutation_oracle(relabeled, 3, DEFAULT_DEPTH)?, 32)?;
    let binary = rank_window(
        &fixtures::thue_morse_automaton().as_oracle(OracleMode::Trusted)?,
        32,
    )?;
    println!("ternary: {ternary}");
    println!("binary:  {binary}");
    println!("same order: {}", ternary == binary);
    Ok(())
}
