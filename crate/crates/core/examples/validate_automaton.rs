//! Decides whether a machine defines a permutation, and shows the
//! counterexample once one output is flipped.

use autoperm::automaton::parse_automaton;
use autoperm::fixtures;
use autoperm::validity::is_permutation;

fn main() -> autoperm::Result<()> {
    let tm = fixtures::thue_morse_automaton();
    println!("{}\n", is_permutation(&tm));

    let q = tm.state_named("0<1").expect("fixture state");
    let broken = tm.with_output(q, tm.output(q).flip());
    println!("{}\n", is_permutation(&broken));

    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/thue_morse.automaton"
    ))
    .expect("data file");
    let from_file = parse_automaton(&text)?;
    println!(
        "data/thue_morse.automaton: {}",
        is_permutation(&from_file).summary()
    );
    Ok(())
}
