//! Linear response of the average fidelity to weak noise at maximal
//! entanglement, with the qubit-by-qubit breakdown under uniform placement.

use ghz_teleport::verify::{linear_fit, table1_slope, TABLE1_PS};
use ghz_teleport::{average_fidelity, AverageMethod, NoiseKind, NoiseSpec, Result, Scheme, SchemeConfig};

fn main() -> Result<()> {
    for scheme in Scheme::ALL {
        let cfg = SchemeConfig::ideal(scheme);
        for kind in NoiseKind::NOISY {
            let mut ys = Vec::new();
            for &p in TABLE1_PS.iter() {
                ys.push(average_fidelity(&cfg, &NoiseSpec::uniform(kind, p)?, AverageMethod::default())?.avg_fidelity_sim);
            }
            let (slope, intercept) = linear_fit(&TABLE1_PS, &ys);
            println!(
                "{scheme} {:<12} F = {intercept:.4} {slope:+.6} p   (expected slope {:+.6})",
                kind.name(),
                table1_slope(scheme, kind)
            );
        }
        let r = average_fidelity(&cfg, &NoiseSpec::uniform(NoiseKind::BitFlip, 0.1)?, AverageMethod::default())?;
        let per: Vec<String> = r
            .per_placement
            .unwrap_or_default()
            .iter()
            .map(|(q, f)| format!("q{q}={f:.4}"))
            .collect();
        println!("{scheme} bit flip p=0.1 per qubit: {}\n", per.join(" "));
    }
    Ok(())
}
