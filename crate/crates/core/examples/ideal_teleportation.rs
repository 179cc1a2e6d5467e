//! Teleports a random input through both maximally entangled channels and lists
//! the measurement outcomes that can occur.

use ghz_teleport::{teleport, InputState, NoiseSpec, Result, Scheme, SchemeConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let input = InputState::random(&mut ChaCha8Rng::seed_from_u64(7));
    let [c0, c1] = input.amplitudes();
    println!("input c0 = {c0:.4}, c1 = {c1:.4}");
    for scheme in Scheme::ALL {
        let run = teleport(&input, &SchemeConfig::ideal(scheme), &NoiseSpec::none())?;
        println!("\n{scheme}: {} outcomes possible", run.possible_outcomes().count());
        for o in run.possible_outcomes().take(4) {
            println!(
                "  {}  p = {:.4}  F = {:.6}",
                o.outcome.bit_string(),
                o.probability,
                o.conditional_fidelity.unwrap_or(f64::NAN)
            );
        }
        println!("  ...\n  total fidelity {:.12}", run.total_fidelity);
    }
    Ok(())
}
