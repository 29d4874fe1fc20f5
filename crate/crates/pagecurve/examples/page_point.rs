//! One point of the Page curve, exactly and by sampling.

use pagecurve::moments::{renyi_tilde, RenyiOrder, SystemDims};
use pagecurve::montecarlo::mc_average_von_neumann;

fn main() -> Result<(), pagecurve::Error> {
    let dims = SystemDims::new(16, 64)?;
    let point = renyi_tilde(dims, RenyiOrder::finite(2.0)?);
    println!("S̃₂ = {}, I₂ = {}", point.entropy, point.info);

    let mc = mc_average_von_neumann(16, 64, 10_000, 42)?;
    println!("⟨S⟩ = {} ± {}", mc.mean, mc.std_error);
    Ok(())
}
