//! Characteristic exponents by quadrature against closed forms, and
//! nondegeneracy certificates for three Lévy measures in the plane.
//!
//! cargo run --release --example nondegeneracy

use levy_em::noise::{check_nondegeneracy, MeasureSpec, ProbeConfig};
use levy_em::quadrature::Quadrature;

fn main() -> levy_em::Result<()> {
    let measures = [
        r#"{"kind":"isotropic","alpha":1.5,"dim":2}"#,
        r#"{"kind":"cylindrical","alpha":1.5,"dim":2,"normalization":"density"}"#,
        r#"{"kind":"axis","alpha":1.5,"dim":2}"#,
    ];
    let xi = [1.2, -0.5];
    for text in measures {
        let spec = MeasureSpec::from_json(text)?;
        let closed = spec.char_exponent(&xi)?.re;
        let quad = spec.char_exponent_quadrature(&xi, &Quadrature::default())?.re;
        let cert = check_nondegeneracy(&spec, 1.5, &ProbeConfig::default())?;
        println!("{text}");
        println!("  psi(xi): closed {closed:.10}, quadrature {quad:.10}");
        println!(
            "  c = {:.4} (rho0 {}), c0 = {:.4} (M {}), valid: {}",
            cert.c_estimate, cert.rho0, cert.c0_estimate, cert.m_estimate, cert.valid
        );
    }
    Ok(())
}
