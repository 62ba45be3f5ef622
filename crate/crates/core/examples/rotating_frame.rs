//! Lab-frame integration of a rotating chain against the static effective
//! Hamiltonian with field `lambda - hbar*Omega/(2J)`.

use tfim_gyro::oracle::{frame_convergence_study, frame_equivalence_check, Units};

fn main() -> Result<(), tfim_gyro::Error> {
    let units = Units::default();
    for n in 1..=3 {
        let study = frame_convergence_study(n, 2.0, 2.0, 10.0, 250, 4, units)?;
        println!("N = {n}");
        for c in &study {
            println!("  {:>5} steps: infidelity {:.3e}, norm drift {:.1e}", c.steps, c.max_infidelity, c.max_norm_drift);
        }
    }
    let control = frame_equivalence_check(3, 2.0, 0.0, 10.0, 250, units)?;
    println!("Omega = 0: infidelity {:.3e}", control.max_infidelity);
    Ok(())
}
