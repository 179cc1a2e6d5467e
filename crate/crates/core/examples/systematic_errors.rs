//! Average fidelity when channel and measurement angles miss pi/4 by a few
//! degrees.

use ghz_teleport::{average_fidelity, closed_form, AverageMethod, NoiseKind, NoiseSpec, Result, Scheme, SchemeConfig};

fn main() -> Result<()> {
    println!("offset  scheme  simulated  closed");
    for deg in [0.0, 1.0, 2.0, 5.0, 10.0] {
        let angle = (45.0f64 - deg).to_radians();
        for scheme in Scheme::ALL {
            let cfg = SchemeConfig::new(scheme, angle, angle)?;
            let r = average_fidelity(&cfg, &NoiseSpec::none(), AverageMethod::default())?;
            let closed = closed_form(scheme, NoiseKind::None, angle, angle, 0.0)?;
            println!("{deg:>5}°  {scheme:<6}  {:.6}   {closed:.6}", r.avg_fidelity_sim);
        }
    }
    Ok(())
}
