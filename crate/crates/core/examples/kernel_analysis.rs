//! Exact k-kernels of machine-defined permutations, next to windowed
//! estimates.

use autoperm::automaton::minimize;
use autoperm::compiler::compile;
use autoperm::fixtures;
use autoperm::kernel::{diagonal_closure, kernel_exact, kernel_window};
use autoperm::{OracleMode, Radix};

fn main() -> autoperm::Result<()> {
    let (pd, pd_coding) = fixtures::period_doubling_morphism();
    let machines = [
        ("thue-morse", fixtures::thue_morse_automaton()),
        ("monotone", fixtures::monotone(Radix::BINARY)),
        ("example1", fixtures::example1_automaton()),
        ("period-doubling", minimize(&compile(&pd, &pd_coding)?)),
    ];
    for (name, m) in &machines {
        let report = kernel_exact(m)?;
        let window = kernel_window(&m.as_oracle(OracleMode::Trusted)?, m.radix(), 16, 6)?;
        println!(
            "{name}: {} diagonal maps, {} classes, {} distinct 16x16 windows",
            diagonal_closure(m)?.len(),
            report.class_count(),
            window.len()
        );
        println!("{report}");
    }
    Ok(())
}
