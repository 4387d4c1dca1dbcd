//! Dyadic blocks of a two-tone signal, a Besov norm, and the Bernstein /
//! dissipativity suite on a few random band-limited functions.
//!
//! cargo run --release --example littlewood_paley

use levy_em::spectral::{besov_terms, decompose, frac_laplacian, inequality_suite, PeriodicFunction, SuiteConfig};

fn main() -> levy_em::Result<()> {
    let f = PeriodicFunction::from_fn(1 << 12, 4.0, |x| (4.0 * x).cos() + 0.3 * (40.0 * x).sin())?;
    for b in decompose(&f) {
        let norm = b.block.lp_norm(2.0);
        if norm > 1e-8 {
            println!("block {:>2}: L2 norm {norm:.5}", b.j);
        }
    }
    let (terms, norm) = besov_terms(&f, 0.5, 2.0)?;
    println!("B^0.5_(2,2) norm {norm:.4} over {} blocks", terms.len());
    let lap = frac_laplacian(&f, 1.0)?;
    println!("max |(-Δ)^(1/2) f| = {:.4} (at most 4 + 0.3·40 = 16)", lap.max_abs());

    let config = SuiteConfig {
        functions: 4,
        ..SuiteConfig::default()
    };
    let report = inequality_suite(&config, 1)?;
    println!(
        "suite: {} cases, min Bernstein ratio {:.3e}, max spread {:.2}, max integral {:.2e}, passed {}",
        report.cases.len(),
        report.min_bernstein_ratio,
        report.max_ratio_spread,
        report.max_dissipativity_integral,
        report.passed
    );
    Ok(())
}
