//! Pipelines of flow-equivalence moves acting on words and periodic orbits.

use symdyn::moves::symbol_expand;
use symdyn::{MovePipeline, PeriodicOrbit, Sft, Symbol, Word};

fn main() -> symdyn::Result<()> {
    let golden = Sft::from_chars("01", &["11"])?;
    let (expanded, fresh) = symbol_expand(&golden, &Symbol::new("1"))?;
    println!("expanding 1 in the golden mean shift adds {fresh}");
    println!("forbidden: {:?}", expanded.forbidden().iter().map(ToString::to_string).collect::<Vec<_>>());

    let mut p = MovePipeline::new(Sft::from_chars("ab", &["bb"])?);
    p.expand(&Symbol::new("b"))?;
    let w = p.contract_word(&Word::parse("ab"))?;
    println!("\npipeline: {}", p.moves().iter().map(ToString::to_string).collect::<Vec<_>>().join("; "));
    println!("`ab` became {w}; {} primitive steps", p.stages().len());
    println!("deciding length: {}", p.deciding_length_bound());

    let u = Word::parse("aab");
    let long = u.pow(8);
    println!("\nT({u}^8) = {:?}", p.apply_word(&long)?.word().map(ToString::to_string));
    let orbit = p.apply_periodic(&PeriodicOrbit::new(&u)?)?;
    println!("the orbit of {u} maps to the orbit of {orbit}");
    Ok(())
}
