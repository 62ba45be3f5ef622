use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

pub const MAX_SITES: usize = 12;

/// Energy and time scales for the dense oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    pub coupling: f64,
    pub hbar: f64,
}

impl Default for Units {
    fn default() -> Self {
        Self {
            coupling: 1.0,
            hbar: 1.0,
        }
    }
}

/// Real-symmetric Ising Hamiltonian in the `σᶻ` product basis.
///
/// Bit `i` of a basis index is the state of site `i`; a clear bit is spin
/// up (`σᶻ = +1`). The chain is periodic, so `N = 2` counts its single bond
/// twice.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseHamiltonian {
    pub n_sites: usize,
    pub matrix: DMatrix<f64>,
}

impl DenseHamiltonian {
    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    /// `max |H − H†|`.
    pub fn hermiticity_error(&self) -> f64 {
        (&self.matrix - self.matrix.transpose()).amax()
    }

    /// Eigenpairs sorted by ascending energy.
    pub fn eigen(&self) -> (Vec<f64>, DMatrix<f64>) {
        let eig = SymmetricEigen::new(self.matrix.clone());
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| {
            eig.eigenvectors[(r, order[c])]
        });
        (values, vectors)
    }
}

fn check_sites(n: usize) -> Result<()> {
    if !(2..=MAX_SITES).contains(&n) {
        return Err(Error::OracleSizeCap(n));
    }
    Ok(())
}

fn spin(index: usize, site: usize) -> f64 {
    if index >> site & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `−J Σ_i [σᶻ_i σᶻ_{i+1} + field · σˣ_i]` with periodic boundary.
pub fn ising_matrix(n: usize, field: f64, coupling: f64) -> DMatrix<f64> {
    let dim = 1usize << n;
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for index in 0..dim {
        let bonds: f64 = (0..n).map(|i| spin(index, i) * spin(index, (i + 1) % n)).sum();
        h[(index, index)] = -coupling * bonds;
        for site in 0..n {
            h[(index ^ (1 << site), index)] -= coupling * field;
        }
    }
    h
}

/// Chain Hamiltonian with the probe either in its ground (`excited = false`)
/// or excited branch, where the transverse field is shifted by `δ`.
pub fn build_hamiltonian(
    n: usize,
    lambda_eff: f64,
    delta: f64,
    excited: bool,
    units: Units,
) -> Result<DenseHamiltonian> {
    check_sites(n)?;
    let field = if excited { lambda_eff + delta } else { lambda_eff };
    Ok(DenseHamiltonian {
        n_sites: n,
        matrix: ising_matrix(n, field, units.coupling),
    })
}

/// Normalised many-spin state.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinState {
    amplitudes: DVector<C64>,
}

impl SpinState {
    pub fn new(amplitudes: DVector<C64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidParameter("state has zero norm".into()));
        }
        Ok(Self {
            amplitudes: amplitudes / C64::new(norm, 0.0),
        })
    }

    /// `|↑↑…↑⟩`.
    pub fn all_up(n: usize) -> Self {
        let mut amplitudes = DVector::zeros(1 << n);
        amplitudes[0] = C64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn overlap(&self, other: &SpinState) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundState {
    pub energy: f64,
    pub gap: f64,
    /// Gap below `10⁻⁸ J`; the state was fixed by the tie-break.
    pub degenerate: bool,
    pub state: SpinState,
}

/// Ground state with a deterministic choice inside a (near-)degenerate
/// lowest level: the projection of the uniform positive vector onto that
/// level, phased so its largest amplitude is real and positive.
pub fn ground_state(h: &DenseHamiltonian, units: Units) -> GroundState {
    let (values, vectors) = h.eigen();
    let tol = 1e-8 * units.coupling;
    let gap = values.get(1).map_or(f64::INFINITY, |e1| e1 - values[0]);
    let level: Vec<usize> = (0..values.len()).take_while(|&i| values[i] - values[0] < tol).collect();

    let dim = h.dimension();
    let mut g = DVector::<f64>::zeros(dim);
    if level.len() > 1 {
        let uniform = DVector::from_element(dim, 1.0 / (dim as f64).sqrt());
        for &i in &level {
            let v = vectors.column(i);
            g += v * v.dot(&uniform);
        }
    }
    if g.norm() < 1e-12 {
        g = vectors.column(0).into_owned();
    }
    let peak = g.iamax();
    if g[peak] < 0.0 {
        g = -g;
    }
    let state = SpinState::new(g.map(|a| C64::new(a, 0.0))).expect("non-zero ground state");
    GroundState {
        energy: values[0],
        gap,
        degenerate: gap < tol,
        state,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_site_ising_spectrum() {
        let h = build_hamiltonian(2, 0.0, 0.0, false, Units::default()).unwrap();
        let (e, _) = h.eigen();
        assert_eq!(e, vec![-2.0, -2.0, 2.0, 2.0]);
    }

    #[test]
    fn paramagnetic_limit() {
        let lambda = 50.0;
        let h = build_hamiltonian(2, lambda, 0.0, false, Units::default()).unwrap();
        let e0 = h.eigen().0[0];
        // second-order perturbation: −2Jλ − 1/λ
        assert!((e0 - (-2.0 * lambda - 1.0 / lambda)).abs() < 1e-5, "{e0}");
    }

    #[test]
    fn eight_site_ground_energies() {
        // numpy eigvalsh of the same periodic chain
        let g = build_hamiltonian(8, 1.0, 0.1, false, Units::default()).unwrap();
        assert!((g.eigen().0[0] - -10.251661790966036).abs() < 1e-10);
        let e = build_hamiltonian(8, 1.0, 0.1, true, Units::default()).unwrap();
        assert!((e.eigen().0[0] - -10.79526767237471).abs() < 1e-10);
    }

    #[test]
    fn hamiltonians_are_hermitian() {
        for n in 2..=6 {
            let h = build_hamiltonian(n, 0.7, 0.2, true, Units::default()).unwrap();
            assert_eq!(h.dimension(), 1 << n);
            assert!(h.hermiticity_error() < 1e-12);
        }
    }

    #[test]
    fn size_cap() {
        assert_eq!(
            build_hamiltonian(13, 1.0, 0.0, false, Units::default()),
            Err(Error::OracleSizeCap(13))
        );
        assert!(build_hamiltonian(1, 1.0, 0.0, false, Units::default()).is_err());
    }

    #[test]
    fn ordered_phase_tie_break_is_symmetric() {
        let h = build_hamiltonian(6, 0.05, 0.0, false, Units::default()).unwrap();
        let gs = ground_state(&h, Units::default());
        assert!(gs.degenerate);
        let a = gs.state.amplitudes();
        // projection of the uniform vector is Z2-symmetric
        assert!((a[0] - a[(1 << 6) - 1]).norm() < 1e-8);
        assert!(a[0].re > 0.0);
        assert!((gs.state.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn paramagnetic_ground_state_is_unique() {
        let h = build_hamiltonian(6, 1.5, 0.0, false, Units::default()).unwrap();
        let gs = ground_state(&h, Units::default());
        assert!(!gs.degenerate);
        assert!(gs.gap > 0.5);
    }
}
