//! Maps the gap between the 2-GHZ and 3-EPR average fidelities over the
//! angle plane and locates its maximum, with and without bit-flip noise.

use ghz_teleport::fidelity::{bitflip_optimal_product, delta_f_optimum, open_angle_grid};
use ghz_teleport::{delta_f, NoiseKind, Result};

fn main() -> Result<()> {
    let grid = open_angle_grid(9);
    println!("noiseless gap, rows theta, columns phi");
    for &t in &grid {
        let row: Vec<String> = grid.iter().map(|&f| delta_f(t, f, NoiseKind::None, 0.0).map(|d| format!("{d:.3}"))).collect::<Result<_>>()?;
        println!("{}", row.join(" "));
    }
    let best = delta_f_optimum(NoiseKind::None, 0.0)?;
    println!("\nnoiseless maximum {:.6} at product {:.6} (4/81 = {:.6})", best.delta_f, best.product, 4.0 / 81.0);
    for p in [0.05, 0.1, 0.2] {
        let best = delta_f_optimum(NoiseKind::BitFlip, p)?;
        println!(
            "bit flip p = {p}: maximum {:.6} at product {:.6}, predicted {:.6}",
            best.delta_f,
            best.product,
            bitflip_optimal_product(p)
        );
    }
    Ok(())
}
