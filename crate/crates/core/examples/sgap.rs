//! S-gap shifts: classification and flow-equivalence decisions.

use symdyn::sgap::{self, SGapSet};

fn main() -> symdyn::Result<()> {
    let finite = SGapSet::finite([0, 2])?;
    let evens = SGapSet::eventually_periodic([], [0], 2)?;
    let odds = SGapSet::eventually_periodic([], [1], 2)?;
    let thirds = SGapSet::eventually_periodic([], [0], 3)?;

    for (name, s) in [("{0,2}", &finite), ("evens", &evens), ("3ℕ", &thirds)] {
        println!("{name:>6}: {}, invariant {:?}", sgap::classify_type(s), sgap::fe_invariant(s)?);
    }
    println!("forbidden words of X({{0,2}}) up to length 4: {:?}",
        sgap::forbidden_words(&finite, 4)?.iter().map(ToString::to_string).collect::<Vec<_>>());

    println!("\nevens vs odds: {:?}", sgap::fe_equal(&evens, &odds, 50)?);
    println!("evens vs 3ℕ:   {:?}", sgap::fe_equal(&evens, &thirds, 50)?);

    // samples are only known up to their bound
    let primes: Vec<u64> = (2..=200u64).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect();
    let shifted: Vec<u64> = primes.iter().map(|p| p + 5).filter(|&p| p <= 200).collect();
    let squares: Vec<u64> = (0..=14).map(|x| x * x).collect();
    let sp = SGapSet::sampled(&primes, 200)?;
    println!("\nprimes: {}", sgap::classify_type(&sp));
    println!("primes vs primes + 5: {:?}", sgap::fe_equal(&sp, &SGapSet::sampled(&shifted, 200)?, 200)?);
    println!("primes vs squares:    {:?}", sgap::fe_equal(&sp, &SGapSet::sampled(&squares, 200)?, 200)?);
    Ok(())
}
