//! Languages of shifts of finite type and their higher-block edge shifts.

use symdyn::{PeriodicOrbit, Sft, Word};

fn main() -> symdyn::Result<()> {
    let golden = Sft::from_chars("01", &["11"])?;
    for n in 0..=5 {
        println!("|B_{n}| = {}", golden.enumerate_language(n).len());
    }

    // nothing may follow `b`, so `ab` is locally admissible yet sits in no point
    let x = Sft::from_chars("abc", &["ba", "bb", "bc"])?;
    let w = Word::parse("ab");
    println!("\n`{w}` locally admissible: {}", x.is_locally_admissible(&w));
    println!("`{w}` in the language: {}", x.contains_word(&w)?);
    println!("B_3 = {:?}", x.enumerate_language(3).iter().map(ToString::to_string).collect::<Vec<_>>());

    let y = Sft::from_chars("01", &["11", "000"])?;
    let es = y.edge_shift();
    println!("\n{}-step edge shift: vertices {:?}", es.step, es.vertex_words.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("adjacency:\n{}", es.graph.adjacency());

    let orbit = PeriodicOrbit::new(&Word::parse("0100"))?;
    println!("\norbit of 0100 has canonical cycle {} and period {}", orbit.cycle(), orbit.period());
    println!("it lies in the golden mean shift: {}", golden.contains_orbit(&orbit)?);
    Ok(())
}
