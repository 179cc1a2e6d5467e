//! Compares the quadrature average with seeded Monte Carlo estimates.

use ghz_teleport::{average_fidelity, AverageMethod, NoiseKind, NoiseSpec, Result, Scheme, SchemeConfig};

fn main() -> Result<()> {
    let cfg = SchemeConfig::new(Scheme::Epr3, 0.6, 0.7)?;
    let noise = NoiseSpec::uniform(NoiseKind::Depolarizing, 0.1)?;
    let exact = average_fidelity(&cfg, &noise, AverageMethod::default())?;
    println!("quadrature   {:.8}  (closed {:.8})", exact.avg_fidelity_sim, exact.avg_fidelity_closed.unwrap_or(f64::NAN));
    for samples in [100, 1_000, 10_000] {
        let r = average_fidelity(&cfg, &noise, AverageMethod::MonteCarlo { samples, seed: 2024 })?;
        let se = r.std_error.unwrap_or(f64::NAN);
        println!(
            "mc {samples:>6}    {:.8} ± {se:.1e}  ({:.1} standard errors off)",
            r.avg_fidelity_sim,
            (r.avg_fidelity_sim - exact.avg_fidelity_sim).abs() / se
        );
    }
    Ok(())
}
