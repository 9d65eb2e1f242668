//! Reads letters of a morphic word straight from an automaton fed the
//! digits of the index.

use autoperm::fixtures;
use autoperm::words::word_automaton_from_morphism;

fn main() -> autoperm::Result<()> {
    for (name, (m, c)) in [
        ("thue-morse", fixtures::thue_morse_morphism()),
        ("period-doubling", fixtures::period_doubling_morphism()),
    ] {
        let w = word_automaton_from_morphism(&m, &c)?;
        let head: String = (0..32).map(|n| w.eval(n).to_string()).collect();
        println!("{name} ({} states): {head}…", w.state_count());
        for n in [1_000_000u64, 1 << 40, u64::MAX] {
            println!("  w[{n}] = {}", w.eval(n));
        }
    }
    Ok(())
}
