//! Compiles a uniform morphism with a coding into a comparison automaton.
//!
//! `cargo run --example compile_morphism -- data/rudin_shapiro.morphism`

use autoperm::automaton::{minimize, serialize_automaton};
use autoperm::compiler::{compile_with, CompileOptions};
use autoperm::validity::is_permutation;
use autoperm::words::parse_morphism;

fn main() -> autoperm::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/data/period_doubling.morphism").into()
    });
    let text = std::fs::read_to_string(&path).expect("readable morphism file");
    let (m, c) = parse_morphism(&text)?;

    let comp = compile_with(&m, &c, CompileOptions::default())?;
    let min = minimize(&comp.machine);
    println!("factors in appearance order: {}", comp.factors.len());
    println!("reachable states: {}", comp.states.len());
    match comp.state_bound() {
        Some(b) => println!("state bound: {b}"),
        None => println!("state bound: beyond 128 bits"),
    }
    println!("minimal states: {}", min.state_count());
    println!("{}", is_permutation(&min).summary());
    print!("{}", serialize_automaton(&min));
    Ok(())
}
