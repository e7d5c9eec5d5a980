//! Labeled graphs: determinization, minimal right-resolving presentations
//! and synchronizing words.

use symdyn::{LabeledGraph, Word};

fn main() -> symdyn::Result<()> {
    // the even shift: blocks of 0's between 1's have even length
    let even = LabeledGraph::from_edges(&["V1", "V2"], &[("V1", "V1", "1"), ("V1", "V2", "0"), ("V2", "V1", "0")])?;
    println!("even shift\n{even}");
    println!("right-resolving: {}", even.is_right_resolving());
    println!("B_4: {:?}", even.words(4).iter().map(ToString::to_string).collect::<Vec<_>>());

    // a non-deterministic presentation of the same shift
    let messy = LabeledGraph::from_edges(
        &["A", "B", "C"],
        &[("A", "A", "1"), ("A", "B", "0"), ("B", "A", "0"), ("A", "C", "1"), ("C", "B", "0")],
    )?;
    let minimal = messy.minimal_right_resolving()?;
    println!("\nminimal right-resolving presentation of the messy graph\n{minimal}");
    println!("same shift as the even shift: {}", minimal.same_shift(&even));

    let w = Word::parse("0");
    let sync = minimal.extend_to_synchronizing(&w)?;
    println!("\n`{w}` extends to the synchronizing word `{sync}`, ending at {:?}", minimal.focus_set(&sync)?);
    Ok(())
}
