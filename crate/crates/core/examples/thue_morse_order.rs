//! The order of Thue-Morse suffixes, from the 8-state comparison automaton.
//!
//! Run with `cargo run --example thue_morse_order -- 16`.

use autoperm::{fixtures, rank_window, OracleMode};

fn main() -> autoperm::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(16);
    let tm = fixtures::thue_morse_automaton();
    let oracle = tm.as_oracle(OracleMode::Checked)?;

    println!(
        "ranks of the first {n} entries: {}",
        rank_window(&oracle, n)?
    );
    for i in 0..4 {
        let row: String = (0..4).map(|j| tm.compare(i, j).symbol()).collect();
        println!("γ_{i}· = {row}");
    }
    Ok(())
}
