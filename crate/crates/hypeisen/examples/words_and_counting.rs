//! The word engine underneath every series: reduced-word shells and their
//! exact counts 2k(2k−1)^(n−1), coset representatives for a cyclic
//! stabilizer, a freeness spot-check, orbital counting with the exponent
//! window, and the geometric counting-bound partial sums.
//!
//! Run with `cargo run --release --example words_and_counting`.

use hypeisen::group::FuchsianGroup;
use hypeisen::{Result, C};

fn main() -> Result<()> {
    let torus = FuchsianGroup::schottky_torus(4.0, 4.0)?;

    // --- Reduced-word shells. ---
    println!("reduced words of length n in the free group of rank 2:");
    for n in 1..=8u32 {
        let mut count = 0u64;
        torus.for_each_word_of_len(n, Default::default(), &mut |_, _| count += 1);
        let expected = 4 * 3u64.pow(n - 1);
        println!("   n = {n}: {count:>5} words (2k(2k−1)^(n−1) = {expected})");
        assert_eq!(count, expected);
    }
    println!();

    // --- Coset representatives mod ⟨generator 0⟩. ---
    let reps = torus.coset_representatives(0, 4)?;
    println!("right-coset representatives mod ⟨A⟩ with word length ≤ 4: {}", reps.len());
    let canon = torus.canonical_coset_form(&[1, 2, 1, 1], 0);
    println!("   canonical form of the word [1,2,1,1] mod ⟨A⟩: rep {:?}, A-power {}",
        canon.0, canon.1);
    println!();

    // --- Freeness spot-check on a cusped group. ---
    let pp = FuchsianGroup::parabolic_pair(3.0)?;
    let distinct = pp.freeness_spot_check(8, 1e-9)?;
    println!("parabolic_pair(3): all {distinct} reduced words of length ≤ 8 give");
    println!("   pairwise distinct matrices — the ping-pong certificate in action.");
    println!();

    // --- Orbital counting and the exponent of convergence. ---
    let base = C::new(0.0, 1.0);
    println!("orbital counting N(R) = #{{γ : d(i, γi) ≤ R}} and fitted exponents:");
    for (label, group, radii) in [
        ("cyclic_hyperbolic(1)  (δ = 0)", FuchsianGroup::cyclic_hyperbolic(1.0)?,
            vec![2.0, 4.0, 6.0, 8.0, 10.0, 12.0]),
        ("cyclic_parabolic      (δ = 1/2)", FuchsianGroup::cyclic_parabolic()?,
            vec![4.0, 6.0, 8.0, 10.0, 12.0]),
        ("parabolic_pair(3)     (δ ∈ (1/2, 1))", FuchsianGroup::parabolic_pair(3.0)?,
            vec![2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]),
    ] {
        let est = group.estimate_delta(base, &radii)?;
        let last = est.counts.last().expect("non-empty grid");
        println!("   {label}: N({:.0}) = {:>6}, δ̂ = {:.4}", last.0, last.1, est.delta);
    }
    println!();

    // --- Counting-bound partial sums Σ e^(−q·d(z,γz)). ---
    println!("counting-bound partial sums (q = 2, z = 0.25+i) by word-length cap:");
    let z = C::new(0.25, 1.0);
    let partials = torus.counting_bound_partials(2.0, z, 12)?;
    for cap in [2usize, 6, 12] {
        println!("   schottky_torus cap {cap:>2}: {:.9}", partials[cap]);
    }
    let partials = pp.counting_bound_partials(2.0, z, 12)?;
    for cap in [2usize, 6, 12] {
        println!("   parabolic_pair cap {cap:>2}: {:.9}", partials[cap]);
    }
    println!("   (the Schottky sum is Cauchy to machine precision by cap 12; the");
    println!("   cusped sum converges polynomially — increments ~ (λn)^(−2q).)");
    Ok(())
}
