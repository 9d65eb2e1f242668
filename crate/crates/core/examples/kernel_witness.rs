//! A permutation with a 2-kernel of size two that no automaton defines when
//! `u` is not automatic: even and odd entries both increase, and
//! `α_{2j}` sits below `α_{2j+1}` exactly when `j` is a square.

use autoperm::fixtures::KNotA;
use autoperm::kernel::kernel_window;
use autoperm::perm::Increasing;
use autoperm::words::Squares;
use autoperm::{rank_window, Radix, Relation};

fn main() -> autoperm::Result<()> {
    let alpha = KNotA::new(Squares);
    println!("ranks: {}", rank_window(&alpha, 20)?);

    let patterns = kernel_window(&alpha, Radix::BINARY, 16, 6)?;
    let increasing = kernel_window(&Increasing, Radix::BINARY, 16, 0)?;
    println!("distinct kernel windows: {}", patterns.len());
    for p in &patterns {
        let tag = if increasing.contains(p) {
            "increasing"
        } else {
            "α"
        };
        let ranks: Vec<String> = (0..p.size())
            .map(|s| {
                (1 + (0..p.size())
                    .filter(|&t| p.get(s, t) == Relation::Gt)
                    .count())
                .to_string()
            })
            .collect();
        println!("{tag:>10}: {}", ranks.join(" "));
    }
    Ok(())
}
