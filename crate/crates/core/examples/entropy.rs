//! Entropy by word counts and Perron roots, and constructions that move it
//! around inside a flow-equivalence class.

use symdyn::entropy::{boost_entropy_construction, entropy_word_count_sft, perron_entropy, scale_entropy_construction, sft_entropy};
use symdyn::{Alphabet, DirectedGraph, IntMatrix, Sft, Symbol};

fn main() -> symdyn::Result<()> {
    let golden = Sft::from_chars("01", &["11"])?;
    for n in [4, 8, 16, 24] {
        println!("word count n = {n:>2}: {:.6}", entropy_word_count_sft(&golden, n)?.value);
    }
    println!("Perron value:       {:.6}", sft_entropy(&golden)?.value);

    let full2 = DirectedGraph::from_adjacency(&IntMatrix::from_rows(&[vec![2]]))?;
    for n in 1..=4 {
        let g = scale_entropy_construction(&full2, n)?;
        println!("full 2-shift scaled by {n}: {} vertices, h = {:.6}", g.vertex_count(), perron_entropy(&g.adjacency())?.value);
    }

    let x = Sft::full_shift(Alphabet::from_chars("ab"));
    let p = boost_entropy_construction(&x, &Symbol::new("a"), &Symbol::new("b"), 2)?;
    println!("\nboosting the full 2-shift with {} word contractions", p.moves().len());
    for m in p.moves() {
        println!("  {m}");
    }
    println!("h = {:.6} ≥ 2", sft_entropy(p.target())?.value);
    Ok(())
}
