//! Prints the two- and three-qubit measurement bases at a few angles and checks
//! their Gram matrices.

use ghz_teleport::bases::ket_string;
use ghz_teleport::{full_basis, Result};

fn main() -> Result<()> {
    for phi in [std::f64::consts::FRAC_PI_4, 0.5, 0.2] {
        for n in [2, 3] {
            let basis = full_basis(n, phi)?;
            println!("N = {n}, phi = {phi:.4}");
            for b in &basis {
                println!("  {}", ket_string(b));
            }
            let mut worst = 0.0f64;
            for (i, x) in basis.iter().enumerate() {
                for (j, y) in basis.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((x.inner(y)?.norm() - want).abs());
                }
            }
            println!("  orthonormality error {worst:.1e}");
        }
    }
    Ok(())
}
