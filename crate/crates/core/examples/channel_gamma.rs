//! Inspects the channel coefficients of each wired part before and after a
//! single-qubit error.

use ghz_teleport::{build_channel, gamma, noisy_channel, noisy_gamma_check, NoiseKind, NoiseSpec, Result, Scheme, SchemeConfig};

fn main() -> Result<()> {
    let theta = 0.6;
    let cfg = SchemeConfig::new(Scheme::Ghz2, theta, 0.7)?;
    let clean = build_channel(&cfg);
    let noisy = noisy_channel(&clean, &NoiseSpec::at(NoiseKind::BitFlip, 0.2, 8)?)?;
    for part in Scheme::Ghz2.channel_parts() {
        println!("part {part:?}");
        for idx in [[0, 0, 0, 0, 0, 0], [0, 0, 0, 1, 1, 1], [1, 1, 1, 1, 1, 1], [0, 0, 1, 0, 0, 1]] {
            println!(
                "  gamma{idx:?}: clean {:.5}  bit flip on q8 {:.5}",
                gamma(&clean, part, &idx)?.re,
                gamma(&noisy, part, &idx)?.re
            );
        }
    }
    for kind in [NoiseKind::BitFlip, NoiseKind::PhaseFlip] {
        let dev = noisy_gamma_check(Scheme::Epr3, kind, 2, theta, 0.2)?;
        println!("epr3 {kind} on q2: closed-form deviation {dev:.1e}");
    }
    Ok(())
}
