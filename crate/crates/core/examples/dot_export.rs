//! Writes Graphviz for a builtin machine: `cargo run --example dot_export
//! -- example1 | dot -Tsvg > example1.svg`.

use autoperm::automaton::to_dot;
use autoperm::fixtures::{builtin, Artifact};

fn main() -> autoperm::Result<()> {
    let name = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "thue-morse-automaton".into());
    let m = match builtin(&name, &[])? {
        Artifact::Machine(m) => m,
        Artifact::Oracle {
            machine: Some(m), ..
        } => m,
        _ => {
            eprintln!("{name} has no machine");
            std::process::exit(2);
        }
    };
    print!("{}", to_dot(&m));
    Ok(())
}
