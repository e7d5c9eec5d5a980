//! The signed Bowen-Franks group via Smith normal form, and Franks' decision.

use symdyn::invariants::expansion_move;
use symdyn::smith::smith_normal_form;
use symdyn::{bowen_franks, franks_decide, IntMatrix};

fn main() -> symdyn::Result<()> {
    let golden = IntMatrix::from_rows(&[vec![1, 1], vec![1, 0]]);
    let full2 = IntMatrix::from_rows(&[vec![2]]);
    let full3 = IntMatrix::from_rows(&[vec![3]]);

    for (name, a) in [("golden mean", &golden), ("full 2-shift", &full2), ("full 3-shift", &full3)] {
        println!("{name:>12}: {}", bowen_franks(a)?);
    }
    println!("golden mean ~ full 2-shift: {}", franks_decide(&golden, &full2)?);
    println!("full 2-shift ~ full 3-shift: {}", franks_decide(&full2, &full3)?);

    let i_minus_a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&i_minus_a);
    println!("\nSmith form of\n{i_minus_a}\nis\n{}", snf.d);
    assert_eq!(&(&snf.u * &i_minus_a) * &snf.v, snf.d);

    // splitting an edge into a path of two changes the matrix, not the invariant
    let expanded = expansion_move(&golden, 0, 1)?;
    println!("\nafter expanding the edge 1 → 2:\n{expanded}");
    println!("invariant: {}", bowen_franks(&expanded)?);
    Ok(())
}
