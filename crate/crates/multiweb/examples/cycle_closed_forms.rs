//! Closed forms for odd cycles: critical density, circulant spectrum, the
//! explicit inverse Laplacian, and reciprocal mode sums.

use multiweb::cycle::CycleParams;
use multiweb::numbers::ratio_to_f64;

fn main() {
    let l = 5usize;
    let params = CycleParams::new(l).unwrap();

    println!("cycle C_{l}");
    println!("tiles |T| = Y_{l} = {}", params.tile_count());
    println!(
        "critical density α̂ = 1 - F_{l}/Y_{l} = {} = {:.6}",
        params.alpha_hat(),
        ratio_to_f64(&params.alpha_hat())
    );
    println!("tiles by size: {:?}", params.size_class_counts());

    // The unweighted tile Laplacian D Dᵀ restricted to the cycle vertices is
    // a circulant; its entries and spectrum have Fibonacci closed forms.
    let spectrum = params.circulant_spectrum();
    println!();
    println!("circulant entries c_k: {:?}", spectrum.entries);
    println!("eigenvalues (DFT):     {:?}", spectrum.eigenvalues);
    for k in 1..l {
        let formula = params.eigenvalue_formula(k);
        println!(
            "  mode {k}: formula {formula:.12}, DFT {:.12}",
            spectrum.eigenvalues[k]
        );
    }
    println!(
        "  mode 0: formula {} vs true row sum {} (the closed form breaks at \
         the zero mode; `multiweb verify` reports this)",
        params.eigenvalue_formula(0),
        spectrum.eigenvalues[0]
    );

    // Explicit inverse of the full (L+1) x (L+1) Laplacian.
    let closed = params.laplacian_closed_form();
    println!();
    println!("inverse Laplacian entries (exact):");
    println!("  (Δ⁻¹)_00  = {}", closed.entry(0, 0));
    println!("  (Δ⁻¹)_0v  = {}", closed.entry(0, 1));
    println!("  (Δ⁻¹)_vv  = {}", closed.entry(1, 1));
    println!("  (Δ⁻¹)_v,v+1 = {}", closed.entry(1, 2));

    println!();
    println!("reciprocal mode sums g(l) = Σ_k ω^(kl)/λ_k over nonzero modes:");
    for shift in 0..l {
        println!(
            "  g({shift}) = {} = {:.9}",
            params.reciprocal_mode_sum(shift as i64),
            ratio_to_f64(&params.reciprocal_mode_sum(shift as i64))
        );
    }
}
